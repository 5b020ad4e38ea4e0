//! Todd–Coxeter coset enumeration and Reidemeister–Schreier rewriting.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::hnn::HnnGroup;
use crate::presentations::{
    character_check, make_klein_form, make_snowflake_g, tietze_simplify, CharacterMap, Presentation,
    PresentationError,
};
use crate::report::Report;
use crate::words::{Alphabet, GenId, GeneratorMap, Letter, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("coset limit of {limit} exceeded; the index may be infinite or large")]
    LimitExceeded { limit: usize },
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

const UNDEF: usize = usize::MAX;

/// Generator words of a subgroup, freely reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupDatum {
    words: Vec<Word>,
}

impl SubgroupDatum {
    pub fn new(words: Vec<Word>) -> Self {
        SubgroupDatum {
            words: words.iter().map(Word::free_reduce).collect(),
        }
    }

    pub fn trivial() -> Self {
        SubgroupDatum { words: Vec::new() }
    }

    /// The subgroup generated by all generators of `p`.
    pub fn whole(p: &Presentation) -> Self {
        SubgroupDatum::new((0..p.num_generators()).map(Word::gen).collect())
    }

    pub fn parse(p: &Presentation, words: &[&str]) -> Result<Self, CosetError> {
        let words = words
            .iter()
            .map(|w| p.parse_word(w).map_err(PresentationError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SubgroupDatum::new(words))
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }
}

/// A complete coset table. Coset 0 is the subgroup; column `2g` is the
/// action of generator `g` and column `2g + 1` that of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    alphabet: Alphabet,
    action: Vec<Vec<usize>>,
    transversal: Vec<Word>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.action.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.action[coset][letter.code()]
    }

    pub fn act_word(&self, coset: usize, w: &Word) -> usize {
        w.iter().fold(coset, |c, &l| self.act(c, l))
    }

    pub fn row(&self, coset: usize) -> &[usize] {
        &self.action[coset]
    }

    /// Shortlex-least representative of each coset in column order; prefix
    /// closed.
    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    /// Whether every relator of `p` closes at every coset.
    pub fn relators_close(&self, p: &Presentation) -> bool {
        (0..self.index()).all(|c| p.relators().iter().all(|r| self.act_word(c, r) == c))
    }

    /// Whether each generator column is a permutation inverse to its
    /// partner column.
    pub fn is_permutation(&self) -> bool {
        let n = self.index();
        self.action.iter().enumerate().all(|(c, row)| {
            row.iter()
                .enumerate()
                .all(|(col, &d)| d < n && self.action[d][col ^ 1] == c)
        })
    }

    /// One line per coset: `coset: image under a, image under a⁻¹, …`.
    pub fn to_text(&self) -> String {
        let mut out = String::from("coset");
        for g in self.alphabet.names() {
            let _ = write!(out, " {g} {g}^-1");
        }
        out.push('\n');
        for (c, row) in self.action.iter().enumerate() {
            let _ = write!(out, "{c}:");
            for d in row {
                let _ = write!(out, " {d}");
            }
            out.push('\n');
        }
        out
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    limit: usize,
    live: usize,
    queue: VecDeque<usize>,
}

impl Enumerator {
    fn new(cols: usize, limit: usize) -> Self {
        Enumerator {
            cols,
            table: vec![vec![UNDEF; cols]],
            parent: vec![0],
            limit,
            live: 1,
            queue: VecDeque::new(),
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), CosetError> {
        if self.live >= self.limit {
            return Err(CosetError::LimitExceeded { limit: self.limit });
        }
        let n = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(n);
        self.live += 1;
        self.table[c][x] = n;
        self.table[n][x ^ 1] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.live -= 1;
            self.queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.cols {
                let d = self.table[g][x];
                if d == UNDEF {
                    continue;
                }
                self.table[d][x ^ 1] = UNDEF;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != UNDEF {
                    let e = self.table[mu][x];
                    self.merge(nu, e);
                } else if self.table[nu][x ^ 1] != UNDEF {
                    let e = self.table[nu][x ^ 1];
                    self.merge(mu, e);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x ^ 1] = mu;
                }
            }
        }
    }

    /// Traces `w` from `c` at both ends, defining cosets until the loop
    /// closes.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), CosetError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != UNDEF {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][w[j as usize] ^ 1] != UNDEF {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Whether every relator closes at every live coset and every entry of
    /// a live row is defined and live.
    fn consistent(&self, rels: &[Vec<usize>]) -> bool {
        (0..self.table.len()).filter(|&c| self.is_live(c)).all(|c| {
            self.table[c].iter().all(|&d| d != UNDEF && self.is_live(d))
                && rels.iter().all(|r| {
                    let mut e = c;
                    for &x in r {
                        e = self.table[e][x];
                    }
                    e == c
                })
        })
    }
}

fn codes(w: &Word) -> Vec<usize> {
    w.iter().map(|l| l.code()).collect()
}

/// HLT enumeration of the cosets of `h` in the group of `p`, with at most
/// `limit` live cosets at any time.
pub fn todd_coxeter(p: &Presentation, h: &SubgroupDatum, limit: usize) -> Result<CosetTable, CosetError> {
    if limit == 0 {
        return Err(CosetError::Params("coset limit must be at least 1".into()));
    }
    let cols = 2 * p.num_generators();
    let rels: Vec<Vec<usize>> = p.relators().iter().map(codes).collect();
    let mut en = Enumerator::new(cols, limit);
    // Passes repeat only if coincidences left a scanned coset unfinished.
    loop {
        for w in h.words() {
            en.scan_and_fill(0, &codes(w))?;
        }
        let mut c = 0;
        while c < en.table.len() {
            for r in &rels {
                if !en.is_live(c) {
                    break;
                }
                en.scan_and_fill(c, r)?;
            }
            for x in 0..cols {
                if !en.is_live(c) {
                    break;
                }
                if en.table[c][x] == UNDEF {
                    en.define(c, x)?;
                }
            }
            c += 1;
        }
        if en.consistent(&rels) {
            break;
        }
    }
    Ok(standardize(p.alphabet().clone(), &en))
}

/// Renumbers live cosets by breadth-first discovery from coset 0 in column
/// order and records the tree paths as the transversal.
fn standardize(alphabet: Alphabet, en: &Enumerator) -> CosetTable {
    let mut number: HashMap<usize, usize> = HashMap::new();
    let mut order = vec![0usize];
    let mut transversal = vec![Word::empty()];
    number.insert(0, 0);
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        for x in 0..en.cols {
            let d = en.table[c][x];
            if let std::collections::hash_map::Entry::Vacant(e) = number.entry(d) {
                e.insert(order.len());
                order.push(d);
                let mut w = transversal[k].clone();
                w.push(Letter::from_code(x));
                transversal.push(w);
            }
        }
        k += 1;
    }
    let action = order
        .iter()
        .map(|&c| en.table[c].iter().map(|d| number[d]).collect())
        .collect();
    CosetTable {
        alphabet,
        action,
        transversal,
    }
}

/// Schreier generators of the kernel of `c`, generator-major: for each
/// generator `g` and each residue representative `r`, the word
/// `r g (rep of r + c(g))⁻¹`, dropping trivial ones.
pub fn kernel_subgroup(p: &Presentation, c: &CharacterMap) -> Result<SubgroupDatum, CosetError> {
    if c.residues().len() != p.num_generators() {
        return Err(CosetError::Params(format!(
            "character has {} residues for {} generators",
            c.residues().len(),
            p.num_generators()
        )));
    }
    if !c.is_surjective() {
        return Err(CosetError::Params("character is not surjective".into()));
    }
    if !character_check(p, c)? {
        return Err(CosetError::Params("character does not kill every relator".into()));
    }
    let m = c.modulus();
    // Shortlex-least representative of each residue by breadth-first search.
    let mut reps: Vec<Option<Word>> = vec![None; m as usize];
    reps[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0u64]);
    while let Some(r) = queue.pop_front() {
        for code in 0..2 * p.num_generators() {
            let l = Letter::from_code(code);
            let step = if l.inverse { m - c.residue(l.gen) } else { c.residue(l.gen) };
            let s = (r + step) % m;
            if reps[s as usize].is_none() {
                let mut w = reps[r as usize].clone().unwrap();
                w.push(l);
                reps[s as usize] = Some(w);
                queue.push_back(s);
            }
        }
    }
    let reps: Vec<Word> = reps.into_iter().map(Option::unwrap).collect();
    let mut words = Vec::new();
    for g in 0..p.num_generators() {
        for (r, rep) in reps.iter().enumerate() {
            let s = (r as u64 + c.residue(g)) % m;
            let w = rep.concat(&Word::gen(g)).concat(&reps[s as usize].inverse());
            if !w.is_empty() {
                words.push(w);
            }
        }
    }
    Ok(SubgroupDatum::new(words))
}

/// A subgroup presentation together with each generator's word in the
/// ambient alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierPresentation {
    pub presentation: Presentation,
    pub ambient: Vec<Word>,
}

/// Name for a Schreier generator: its ambient word spelled out, lowercase
/// for positive letters and uppercase for inverses.
fn spelled_name(alphabet: &Alphabet, w: &Word) -> Option<String> {
    let mut s = String::new();
    for l in w {
        let n = alphabet.name(l.gen);
        if n.len() != 1 || !n.chars().all(|c| c.is_ascii_lowercase()) {
            return None;
        }
        s.push_str(&if l.inverse { n.to_ascii_uppercase() } else { n.to_string() });
    }
    Some(s)
}

/// Presentation of the subgroup with coset table `t` on its nontrivial
/// Schreier generators `rep(c) g rep(c g)⁻¹` (generator-major), with the
/// rewrites of `rep(c) R rep(c)⁻¹` for every relator `R` and coset `c` as
/// relators (relator-major).
pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable) -> SchreierPresentation {
    let n = p.num_generators();
    let mut id: Vec<Vec<Option<GenId>>> = vec![vec![None; n]; t.index()];
    let mut ambient = Vec::new();
    for g in 0..n {
        for c in 0..t.index() {
            let d = t.act(c, Letter::pos(g));
            let w = t.transversal()[c]
                .concat(&Word::gen(g))
                .concat(&t.transversal()[d].inverse());
            if !w.is_empty() {
                id[c][g] = Some(ambient.len());
                ambient.push(w);
            }
        }
    }
    let spelled: Option<Vec<String>> = ambient.iter().map(|w| spelled_name(p.alphabet(), w)).collect();
    let names: Vec<String> = match spelled {
        Some(names) if Alphabet::new(&names).is_ok() => names,
        _ => (0..ambient.len()).map(|i| format!("g{i}")).collect(),
    };
    let alphabet = Alphabet::new(&names).expect("names are distinct identifiers");

    let mut relators = Vec::new();
    for r in p.relators() {
        for c in 0..t.index() {
            let mut cur = c;
            let mut w = Word::empty();
            for &l in r {
                if l.inverse {
                    let prev = t.act(cur, l);
                    if let Some(s) = id[prev][l.gen] {
                        w.push(Letter::neg(s));
                    }
                    cur = prev;
                } else {
                    if let Some(s) = id[cur][l.gen] {
                        w.push(Letter::pos(s));
                    }
                    cur = t.act(cur, l);
                }
            }
            relators.push(w.free_reduce());
        }
    }
    SchreierPresentation {
        presentation: Presentation::new(alphabet, relators).expect("ids in range"),
        ambient,
    }
}

/// Coset limit used by [`verify_cover_iso`].
pub const COVER_LIMIT: usize = 1000;

/// Enumerates the index-2 cover of the Klein form of `R_{p,q}` given by
/// `a ↦ 1 mod 2`, simplifies its Reidemeister–Schreier presentation, and
/// checks it against `G_{p,q}` in both directions.
pub fn verify_cover_iso(p: u32, q: u32) -> Report {
    verify_cover_iso_with(p, q, COVER_LIMIT)
}

/// [`verify_cover_iso`] with an explicit coset limit.
pub fn verify_cover_iso_with(p: u32, q: u32, limit: usize) -> Report {
    let mut report = Report::new();
    let (klein, g) = match (make_klein_form(p, q), make_snowflake_g(p, q)) {
        (Ok(k), Ok(g)) => (k, g),
        (Err(e), _) | (_, Err(e)) => {
            report.push("parameters", false, e.to_string());
            return report;
        }
    };
    let chi = CharacterMap::new(2, &[1, 0, 0]).expect("modulus 2");
    let ok = character_check(&klein, &chi).unwrap_or(false);
    report.push("character", ok, "a -> 1, b -> 0, t -> 0 mod 2 kills both relators");
    if !ok {
        return report;
    }
    let h = match kernel_subgroup(&klein, &chi) {
        Ok(h) => h,
        Err(e) => {
            report.push("kernel subgroup", false, e.to_string());
            return report;
        }
    };
    let table = match todd_coxeter(&klein, &h, limit) {
        Ok(t) => t,
        Err(e) => {
            report.push("coset enumeration", false, e.to_string());
            return report;
        }
    };
    let transversal: Vec<String> = table.transversal().iter().map(|w| klein.format_word(w)).collect();
    report.push(
        "index",
        table.index() == 2,
        format!("index {} with transversal {{{}}}", table.index(), transversal.join(", ")),
    );
    if table.index() != 2 {
        return report;
    }
    report.push(
        "table",
        table.is_permutation() && table.relators_close(&klein),
        "every relator closes at every coset",
    );

    let rs = reidemeister_schreier(&klein, &table);
    let ngens = rs.presentation.num_generators();
    report.push(
        "schreier generators",
        ngens == 5 && ngens == table.index() * (klein.num_generators() - 1) + 1,
        rs.presentation.alphabet().names().collect::<Vec<_>>().join(", "),
    );
    report.push(
        "rewritten relators",
        rs.presentation.num_relators() == 4,
        format!("{} relators", rs.presentation.num_relators()),
    );
    let simple = tietze_simplify(&rs.presentation, 1000);
    let sp = &simple.presentation;
    report.push(
        "simplified shape",
        sp.num_generators() == 4 && sp.num_relators() == 3 && !simple.exhausted,
        sp.to_string(),
    );

    // (i) simplified relators are trivial in G_{p,q}.
    let hg = HnnGroup::snowflake(p, q).expect("validated above");
    let naming = [
        ("a^2", "a"),
        ("b", "b"),
        ("t", "s"),
        ("a t a^-1", "t"),
        ("a b a^-1", "b^-1"),
    ];
    let mut map = GeneratorMap::new(sp.num_generators());
    let mut named = true;
    for (new, &old) in simple.kept.iter().enumerate() {
        let amb = klein.format_word(&rs.ambient[old]);
        match naming.iter().find(|(src, _)| *src == amb) {
            Some((_, tgt)) => map.set(new, hg.parse_word(tgt).expect("static word")),
            None => named = false,
        }
    }
    let forward_ok = named
        && sp
            .relators()
            .iter()
            .all(|r| r.substitute(&map).is_ok_and(|w| hg.is_trivial(&w)));
    report.push(
        "cover relators hold in G",
        forward_ok,
        "a^2 -> a, b -> b, t -> s, a t a^-1 -> t, a b a^-1 -> b^-1",
    );

    // (ii) G_{p,q} relators are trivial in the Klein form.
    let hk = HnnGroup::klein(p, q).expect("validated above");
    let back = GeneratorMap::parse(
        g.alphabet(),
        klein.alphabet(),
        &[("a", "a^2"), ("b", "b"), ("s", "t"), ("t", "a t a^-1")],
    )
    .expect("static map");
    let backward_ok = g
        .relators()
        .iter()
        .all(|r| r.substitute(&back).is_ok_and(|w| hk.is_trivial(&w)));
    report.push(
        "G relators hold in the cover",
        backward_ok,
        "a -> a^2, b -> b, s -> t, t -> a t a^-1",
    );
    report
}
