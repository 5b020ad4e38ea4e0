//! Free-group words over a finite alphabet.
//!
//! A [`Word`] is a plain sequence of signed generator letters. Nothing is
//! reduced implicitly except where a method says so; most constructors in the
//! rest of the crate call [`Word::free_reduce`] before storing a word.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

/// Index of a generator inside its [`Alphabet`].
pub type GenId = usize;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator map has no image for generator {0}")]
    MissingImage(GenId),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(gen: GenId) -> Self {
        Letter { gen, inverse: false }
    }

    pub const fn neg(gen: GenId) -> Self {
        Letter { gen, inverse: true }
    }

    /// Builds a letter from a sign; any negative sign gives the inverse.
    pub fn signed(gen: GenId, sign: i32) -> Self {
        Letter {
            gen,
            inverse: sign < 0,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Column index used by coset tables and dense encodings: `2·gen` for the
    /// generator, `2·gen + 1` for its inverse.
    pub fn code(self) -> usize {
        2 * self.gen + self.inverse as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter {
            gen: code / 2,
            inverse: code % 2 == 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    /// Wraps a letter sequence as-is, without reduction.
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(gen: GenId) -> Self {
        Word(vec![Letter::pos(gen)])
    }

    /// `gen^exp` as a reduced word.
    pub fn power_of(gen: GenId, exp: i64) -> Self {
        let letter = Letter::signed(gen, exp.signum() as i32);
        Word(vec![letter; exp.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) if self.0.len() > 1 => f != l.inv(),
                _ => true,
            }
    }

    /// Splits the freely reduced form of `self` as `conjugator · core ·
    /// conjugator⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let reduced = self.free_reduce().0;
        let (mut i, mut j) = (0, reduced.len());
        while j - i >= 2 && reduced[i] == reduced[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        (Word(reduced[i..j].to_vec()), Word(reduced[..i].to_vec()))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Freely reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.free_reduce().0;
        for &l in &other.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Letter concatenation without reduction.
    pub fn append(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Freely reduced `self^exp`.
    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let (core, conj) = base.cyclic_reduce();
        let mut out = conj.clone();
        for _ in 0..exp.unsigned_abs() {
            out.append(&core);
        }
        out.append(&conj.inverse());
        out.free_reduce()
    }

    /// Conjugate `c · self · c⁻¹`, freely reduced.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.concat(self).concat(&c.inverse())
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Image under a generator map, freely reduced.
    pub fn substitute(&self, map: &GeneratorMap) -> Result<Word, WordError> {
        let mut out = Word::empty();
        for &l in &self.0 {
            let image = map.image(l.gen).ok_or(WordError::MissingImage(l.gen))?;
            if l.inverse {
                out = out.concat(&image.inverse());
            } else {
                out = out.concat(image);
            }
        }
        Ok(out)
    }

    pub fn exponent_sum(&self, gen: GenId) -> i64 {
        self.0
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.sign())
            .sum()
    }

    /// Number of letters equal to `gen` or its inverse.
    pub fn occurrences(&self, gen: GenId) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    pub fn contains_gen(&self, gen: GenId) -> bool {
        self.0.iter().any(|l| l.gen == gen)
    }

    /// Run-length syllables `(gen, exponent)` of the letter sequence.
    pub fn syllables(&self) -> Vec<(GenId, i64)> {
        let mut out: Vec<(GenId, i64)> = Vec::new();
        for &l in &self.0 {
            match out.last_mut() {
                Some((g, e)) if *g == l.gen && (*e > 0) == !l.inverse => *e += l.sign(),
                _ => out.push((l.gen, l.sign())),
            }
        }
        out
    }

    /// Largest generator id used, if any.
    pub fn max_gen(&self) -> Option<GenId> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Renumbers generators; `None` in `table` means the generator must not
    /// occur (panics otherwise).
    pub fn renumber(&self, table: &[Option<GenId>]) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter {
                    gen: table[l.gen].expect("renumbering a removed generator"),
                    inverse: l.inverse,
                })
                .collect(),
        )
    }

    /// Representative of the cyclic word class of `self` up to rotation and
    /// inversion: the lexicographically least rotation of `self` or `self⁻¹`.
    /// Expects a cyclically reduced word.
    pub fn cyclic_canonical(&self) -> Word {
        let inv = self.inverse();
        let n = self.0.len();
        let mut best = self.clone();
        for k in 0..n {
            for cand in [self.rotate(k), inv.rotate(k)] {
                if cand < best {
                    best = cand;
                }
            }
        }
        if n > 0 && inv < best {
            best = inv;
        }
        best
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// The commutator `[u, v] = u⁻¹ v⁻¹ u v`, freely reduced.
pub fn commutator(u: &Word, v: &Word) -> Word {
    u.inverse().concat(&v.inverse()).concat(u).concat(v)
}

/// Uniformly random freely reduced word of exactly `len` letters.
pub fn random_reduced_word<R: Rng + ?Sized>(rng: &mut R, num_gens: usize, len: usize) -> Word {
    assert!(num_gens > 0 || len == 0);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::from_code(rng.gen_range(0..2 * num_gens));
        if letters.last() != Some(&l.inv()) {
            letters.push(l);
        }
    }
    Word(letters)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
}

/// An ordered list of named generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    gens: Vec<Generator>,
    by_name: HashMap<String, GenId>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, WordError> {
        let mut alphabet = Alphabet::default();
        for n in names {
            alphabet.push(n.as_ref())?;
        }
        Ok(alphabet)
    }

    pub fn push(&mut self, name: &str) -> Result<GenId, WordError> {
        if !valid_name(name) {
            return Err(WordError::InvalidName(name.to_string()));
        }
        if self.by_name.contains_key(name) {
            return Err(WordError::DuplicateGenerator(name.to_string()));
        }
        let id = self.gens.len();
        self.gens.push(Generator {
            id,
            name: name.to_string(),
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id].name
    }

    pub fn id_of(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.gens.iter().map(|g| g.name.as_str())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// Generator by name; panics if absent. For alphabets built in code.
    pub fn expect(&self, name: &str) -> GenId {
        self.id_of(name)
            .unwrap_or_else(|| panic!("generator {name:?} not in alphabet"))
    }

    /// Parses the text word syntax: generator names with optional integer
    /// exponents (`a^-1 b a b`), parenthesised subwords `(x y)^3`,
    /// commutators `[u, v]`, and `1` for the empty word. Whitespace, `*` and
    /// `.` separate factors. An identifier that is not a generator name but
    /// spells a run of single-letter generators (`aba`) is split; an exponent
    /// then applies to its last letter.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut parser = Parser {
            alphabet: self,
            src: text.as_bytes(),
            pos: 0,
        };
        let w = parser.sequence()?;
        parser.skip_separators();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected character"));
        }
        Ok(w)
    }

    pub fn display<'a>(&'a self, word: &'a Word) -> WordDisplay<'a> {
        WordDisplay {
            alphabet: self,
            word,
        }
    }

    pub fn format(&self, word: &Word) -> String {
        self.display(word).to_string()
    }
}

/// Formats a word as syllables `a^2 b^-1`, or `1` when empty.
pub struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.word.syllables().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alphabet.name(g))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    alphabet: &'a Alphabet,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> WordError {
        WordError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_separators(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() || c == b'*' || c == b'.' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn sequence(&mut self) -> Result<Word, WordError> {
        let mut w = Word::empty();
        loop {
            self.skip_separators();
            match self.peek() {
                None | Some(b')') | Some(b']') | Some(b',') => return Ok(w),
                _ => {
                    let f = self.factor()?;
                    w.append(&f);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word, WordError> {
        let (mut prefix, atom) = self.atom()?;
        let exp = self.exponent()?;
        prefix.append(&atom.pow(exp));
        Ok(prefix)
    }

    /// Returns `(unexponentiated prefix, exponentiable atom)`.
    fn atom(&mut self) -> Result<(Word, Word), WordError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.sequence()?;
                self.expect(b')')?;
                Ok((Word::empty(), w))
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.sequence()?;
                self.expect(b',')?;
                let v = self.sequence()?;
                self.expect(b']')?;
                Ok((Word::empty(), commutator(&u, &v)))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok((Word::empty(), Word::empty()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(id) = self.alphabet.id_of(ident) {
                    return Ok((Word::empty(), Word::gen(id)));
                }
                let split: Option<Vec<GenId>> = ident
                    .chars()
                    .map(|c| self.alphabet.id_of(c.encode_utf8(&mut [0; 4])))
                    .collect();
                match split {
                    Some(ids) => {
                        let (last, rest) = ids.split_last().unwrap();
                        Ok((rest.iter().map(|&g| Letter::pos(g)).collect(), Word::gen(*last)))
                    }
                    None => Err(WordError::UnknownGenerator(ident.to_string())),
                }
            }
            _ => Err(self.error("expected generator, '(', '[' or '1'")),
        }
    }

    fn exponent(&mut self) -> Result<i64, WordError> {
        let save = self.pos;
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
        if self.peek() != Some(b'^') {
            self.pos = save;
            return Ok(1);
        }
        self.pos += 1;
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.error("expected integer exponent"))
    }

    fn expect(&mut self, c: u8) -> Result<(), WordError> {
        self.skip_separators();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }
}

/// Images of every source generator as words in some target alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    images: Vec<Option<Word>>,
}

impl GeneratorMap {
    /// A map on `source_len` generators with no images assigned yet.
    pub fn new(source_len: usize) -> Self {
        GeneratorMap {
            images: vec![None; source_len],
        }
    }

    pub fn from_images(images: Vec<Word>) -> Self {
        GeneratorMap {
            images: images.into_iter().map(Some).collect(),
        }
    }

    pub fn identity(len: usize) -> Self {
        Self::from_images((0..len).map(Word::gen).collect())
    }

    /// Builds a map from `(source name, target word text)` pairs.
    pub fn parse(
        source: &Alphabet,
        target: &Alphabet,
        pairs: &[(&str, &str)],
    ) -> Result<Self, WordError> {
        let mut map = GeneratorMap::new(source.len());
        for (name, image) in pairs {
            let id = source
                .id_of(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            map.set(id, target.parse_word(image)?);
        }
        Ok(map)
    }

    pub fn set(&mut self, gen: GenId, image: Word) {
        if gen >= self.images.len() {
            self.images.resize(gen + 1, None);
        }
        self.images[gen] = Some(image.free_reduce());
    }

    pub fn image(&self, gen: GenId) -> Option<&Word> {
        self.images.get(gen).and_then(|w| w.as_ref())
    }

    pub fn source_len(&self) -> usize {
        self.images.len()
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &GeneratorMap) -> Result<GeneratorMap, WordError> {
        let mut out = GeneratorMap::new(self.images.len());
        for (g, image) in self.images.iter().enumerate() {
            if let Some(w) = image {
                out.set(g, w.substitute(other)?);
            }
        }
        Ok(out)
    }
}
