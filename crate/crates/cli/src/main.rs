//! `snowflake`: command-line front end for snowflake-core.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use snowflake_core::coset::{
    kernel_subgroup, reidemeister_schreier, todd_coxeter, verify_cover_iso_with, CosetError,
};
use snowflake_core::dehn::{
    alpha_exponent, area_profile, find_pq_for_exponent, min_area, AreaLimits, AreaResult, DehnError,
};
use snowflake_core::equitable::{decide_equitable, exhaustive_search, lattice_index, star_condition, Certificate};
use snowflake_core::hnn::{confluence_trial, snowflake_witness, solver_for, HnnGroup, PinchStrategy, RpqSolver};
use snowflake_core::presentations::{
    make_klein_form, tietze_simplify, CharacterMap, Family, OneRelatorParams, Presentation,
};
use snowflake_core::words::Word;

const SCHEMA_VERSION: u32 = 1;

/// Exit statuses.
const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const EXHAUSTED: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "snowflake", version, about = "Snowflake groups, their covers, word problems and Dehn area probes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Text)]
    output: Mode,
    /// Seed for commands that sample random words.
    #[arg(long, global = true, default_value_t = 0, env = "SNOWFLAKE_SEED")]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1_000_000, env = "SNOWFLAKE_MAX_COSETS",
          value_parser = clap::value_parser!(u64).range(1..))]
    max_cosets: u64,
    /// Search states stored by area computations.
    #[arg(long, global = true, default_value_t = 10_000_000, env = "SNOWFLAKE_MAX_STATES",
          value_parser = clap::value_parser!(u64).range(1..))]
    max_states: u64,
    /// Relator applications explored by area computations.
    #[arg(long, global = true, default_value_t = 64, env = "SNOWFLAKE_MAX_DEPTH",
          value_parser = clap::value_parser!(u32).range(1..))]
    max_depth: u32,
    /// Longest intermediate word kept by area computations.
    #[arg(long, global = true, default_value_t = 64, env = "SNOWFLAKE_MAX_WORD_LEN",
          value_parser = clap::value_parser!(u64).range(1..))]
    max_word_len: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Text,
    Machine,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyName {
    /// R(m, n, k, l) over x, y, t; needs --params.
    #[value(name = "R")]
    R,
    /// R_{p,q} over x, y, t.
    #[value(name = "R_pq")]
    Rpq,
    /// G_{p,q} over a, b, s, t.
    #[value(name = "G")]
    G,
    /// R_{p,q} over a, b, t.
    #[value(name = "klein")]
    Klein,
    /// <a, b | [a, b]>.
    #[value(name = "Z2")]
    Z2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GroupName {
    /// R_{p,q} over x, y, t.
    #[value(name = "R")]
    R,
    #[value(name = "G")]
    G,
    #[value(name = "klein")]
    Klein,
    #[value(name = "Z2")]
    Z2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Emit {
    Report,
    Table,
    Presentation,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Strategy {
    LeftToRight,
    RightToLeft,
    Random,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(short, long, default_value_t = 1)]
    p: u32,
    #[arg(short, long, default_value_t = 1)]
    q: u32,
    /// `m,n,k,l` for the general family R.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Option<Vec<i64>>,
}

#[derive(Args, Debug, Clone)]
struct Pq {
    #[arg(short, long)]
    p: u32,
    #[arg(short, long)]
    q: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a presentation.
    Present(FamilyArgs),
    /// Enumerate and check the index-2 cover of R_{p,q}.
    Cover {
        #[command(flatten)]
        pq: Pq,
        #[arg(long, value_enum, default_value_t = Emit::Report)]
        emit: Emit,
    },
    /// Decide whether a word is trivial.
    Wp {
        #[arg(long, value_enum)]
        group: GroupName,
        #[arg(short, long, default_value_t = 1)]
        p: u32,
        #[arg(short, long, default_value_t = 1)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value_t = Strategy::LeftToRight)]
        strategy: Strategy,
    },
    /// Build the level-k witness word of G_{p,q}.
    Witness {
        #[command(flatten)]
        pq: Pq,
        #[arg(short, long)]
        k: u32,
        /// Print the word itself in text mode.
        #[arg(long)]
        show_word: bool,
    },
    /// Decide whether an equitable set exists.
    Equitable {
        #[command(flatten)]
        pq: Pq,
        /// Run the exhaustive search as well.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Minimal area of a trivial word.
    Area {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Largest area of trivial words by length.
    Profile {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        maxlen: usize,
    },
    /// Exponent bookkeeping and witness slopes.
    Alpha(Pq),
    /// Find (p, q) whose Dehn exponent is close to rho.
    Density {
        #[arg(long, allow_hyphen_values = true)]
        rho: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1000)]
        q_max: u64,
    },
    /// Compare pinch-removal strategies on random words.
    Confluence {
        #[arg(long, value_enum)]
        group: GroupName,
        #[arg(short, long, default_value_t = 1)]
        p: u32,
        #[arg(short, long, default_value_t = 1)]
        q: u32,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 40)]
        max_len: usize,
    },
}

#[derive(Error, Debug)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Exhausted(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => USAGE,
            CliError::Exhausted(_) => EXHAUSTED,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

/// What a command produced: a status, a text rendering, a structured
/// document, and optionally comma-separated rows.
struct Outcome {
    code: u8,
    text: String,
    data: Value,
    csv: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let (code, out) = run(&cli);
    print!("{out}");
    ExitCode::from(code)
}

fn run(cli: &Cli) -> (u8, String) {
    let g = &cli.global;
    match dispatch(&cli.command, g) {
        Ok(o) => (o.code, render(g, &cli.command, o)),
        Err(e) => {
            let code = e.code();
            let text = match g.output {
                Mode::Machine => document(g, &cli.command, code, json!({ "error": e.to_string() })),
                _ => {
                    eprintln!("error: {e}");
                    String::new()
                }
            };
            (code, text)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Present(_) => "present",
        Command::Cover { .. } => "cover",
        Command::Wp { .. } => "wp",
        Command::Witness { .. } => "witness",
        Command::Equitable { .. } => "equitable",
        Command::Area { .. } => "area",
        Command::Profile { .. } => "profile",
        Command::Alpha(_) => "alpha",
        Command::Density { .. } => "density",
        Command::Confluence { .. } => "confluence",
    }
}

fn document(g: &Global, c: &Command, code: u8, result: Value) -> String {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command_name(c),
        "seed": g.seed,
        "limits": {
            "max_cosets": g.max_cosets,
            "max_states": g.max_states,
            "max_depth": g.max_depth,
            "max_word_len": g.max_word_len,
        },
        "exit_code": code,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

fn render(g: &Global, c: &Command, o: Outcome) -> String {
    match g.output {
        Mode::Text => o.text,
        Mode::Machine => document(g, c, o.code, o.data),
        Mode::Csv => o.csv.unwrap_or_else(|| key_value_rows(&o.data)),
    }
}

/// `key,value` rows for the scalar fields of a document.
fn key_value_rows(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, x) in map {
            match x {
                Value::String(s) => writeln!(out, "{k},{}", csv_field(s)).unwrap(),
                Value::Array(_) | Value::Object(_) => {}
                other => writeln!(out, "{k},{other}").unwrap(),
            }
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn family_of(a: &FamilyArgs) -> Result<Family, CliError> {
    let (p, q) = (a.p, a.q);
    Ok(match a.family {
        FamilyName::R => {
            let v = match a.params.as_deref() {
                Some(v @ [_, _, _, _]) => v,
                _ => return Err(usage("family R needs --params m,n,k,l")),
            };
            Family::R(OneRelatorParams::new(v[0], v[1], v[2], v[3]).map_err(usage)?)
        }
        FamilyName::Rpq => Family::Rpq { p, q },
        FamilyName::G => Family::Snowflake { p, q },
        FamilyName::Klein => Family::Klein { p, q },
        FamilyName::Z2 => Family::FreeAbelian,
    })
}

fn area_limits(g: &Global) -> AreaLimits {
    AreaLimits {
        max_depth: g.max_depth,
        max_len: usize::try_from(g.max_word_len).unwrap_or(usize::MAX),
        max_states: usize::try_from(g.max_states).unwrap_or(usize::MAX),
    }
}

fn dispatch(c: &Command, g: &Global) -> Result<Outcome, CliError> {
    match c {
        Command::Present(a) => present(a),
        Command::Cover { pq, emit } => cover(pq, *emit, g),
        Command::Wp { group, p, q, word, strategy } => wp(*group, *p, *q, word, *strategy, g.seed),
        Command::Witness { pq, k, show_word } => witness(pq, *k, *show_word),
        Command::Equitable { pq, search, bound, max_size } => equitable(pq, *search, *bound, *max_size),
        Command::Area { family, word } => area(family, word, g),
        Command::Profile { family, maxlen } => profile(family, *maxlen, g),
        Command::Alpha(pq) => alpha(pq),
        Command::Density { rho, eps, q_max } => density(*rho, *eps, *q_max),
        Command::Confluence { group, p, q, count, max_len } => confluence(*group, *p, *q, *count, *max_len, g.seed),
    }
}

fn present(a: &FamilyArgs) -> Result<Outcome, CliError> {
    let family = family_of(a)?;
    let pres = family.presentation().map_err(usage)?;
    Ok(Outcome {
        code: OK,
        text: pres.to_text(),
        data: json!({
            "family": family.to_string(),
            "generators": pres.alphabet().names().collect::<Vec<_>>(),
            "relators": pres.relator_strings(),
        }),
        csv: None,
    })
}

fn cover(pq: &Pq, emit: Emit, g: &Global) -> Result<Outcome, CliError> {
    let limit = usize::try_from(g.max_cosets).unwrap_or(usize::MAX);
    match emit {
        Emit::Report => {
            let report = verify_cover_iso_with(pq.p, pq.q, limit);
            let exhausted = report
                .failures()
                .any(|c| c.name == "coset enumeration" && c.detail.contains("limit"));
            let code = if report.all_passed() {
                OK
            } else if exhausted {
                EXHAUSTED
            } else {
                NEGATIVE
            };
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect();
            let mut csv = String::from("check,passed,detail\n");
            for c in &report.checks {
                writeln!(csv, "{},{},{}", csv_field(&c.name), c.passed, csv_field(&c.detail)).unwrap();
            }
            Ok(Outcome {
                code,
                text: report.to_string(),
                data: json!({ "p": pq.p, "q": pq.q, "passed": report.all_passed(), "checks": checks }),
                csv: Some(csv),
            })
        }
        Emit::Table | Emit::Presentation => {
            let klein = make_klein_form(pq.p, pq.q).map_err(usage)?;
            let chi = CharacterMap::new(2, &[1, 0, 0]).expect("modulus 2");
            let h = kernel_subgroup(&klein, &chi).map_err(coset_error)?;
            let table = todd_coxeter(&klein, &h, limit).map_err(coset_error)?;
            if emit == Emit::Table {
                let rows: Vec<Vec<usize>> = (0..table.index()).map(|c| table.row(c).to_vec()).collect();
                let transversal: Vec<String> = table.transversal().iter().map(|w| klein.format_word(w)).collect();
                let text = table.to_text();
                let csv = text.lines().map(|l| l.replace(": ", " ").replace(' ', ",") + "\n").collect();
                return Ok(Outcome {
                    code: OK,
                    text,
                    data: json!({ "index": table.index(), "columns": columns(&klein), "rows": rows, "transversal": transversal }),
                    csv: Some(csv),
                });
            }
            let rs = reidemeister_schreier(&klein, &table);
            let simple = tietze_simplify(&rs.presentation, 1000);
            let sp = &simple.presentation;
            let ambient: Vec<String> = simple.kept.iter().map(|&i| klein.format_word(&rs.ambient[i])).collect();
            let mut text = sp.to_text();
            for (name, amb) in sp.alphabet().names().zip(&ambient) {
                writeln!(text, "# {name} = {amb}").unwrap();
            }
            Ok(Outcome {
                code: if simple.exhausted { EXHAUSTED } else { OK },
                text,
                data: json!({
                    "index": table.index(),
                    "generators": sp.alphabet().names().collect::<Vec<_>>(),
                    "relators": sp.relator_strings(),
                    "ambient": ambient,
                    "unsimplified_generators": rs.presentation.num_generators(),
                    "unsimplified_relators": rs.presentation.num_relators(),
                }),
                csv: None,
            })
        }
    }
}

fn columns(p: &Presentation) -> Vec<String> {
    p.alphabet().names().flat_map(|n| [n.to_string(), format!("{n}^-1")]).collect()
}

fn coset_error(e: CosetError) -> CliError {
    match e {
        CosetError::LimitExceeded { .. } => CliError::Exhausted(e.to_string()),
        other => usage(other),
    }
}

fn pinch(strategy: Strategy, seed: u64) -> PinchStrategy {
    match strategy {
        Strategy::LeftToRight => PinchStrategy::LeftToRight,
        Strategy::RightToLeft => PinchStrategy::RightToLeft,
        Strategy::Random => PinchStrategy::Random(seed),
    }
}

fn hnn_group(group: GroupName, p: u32, q: u32) -> Result<HnnGroup, CliError> {
    match group {
        GroupName::R => Ok(RpqSolver::new(p, q).map_err(usage)?.klein().clone()),
        GroupName::G => HnnGroup::snowflake(p, q).map_err(usage),
        GroupName::Klein => HnnGroup::klein(p, q).map_err(usage),
        GroupName::Z2 => Ok(HnnGroup::free_abelian()),
    }
}

fn wp(group: GroupName, p: u32, q: u32, text: &str, strategy: Strategy, seed: u64) -> Result<Outcome, CliError> {
    let (h, w) = if group == GroupName::R {
        let solver = RpqSolver::new(p, q).map_err(usage)?;
        let w = r_pq_word(p, q, text)?;
        (solver.klein().clone(), solver.to_klein(&w))
    } else {
        let h = hnn_group(group, p, q)?;
        let w = h.parse_word(text).map_err(usage)?;
        (h, w)
    };
    let form = h.britton_reduce_with(&w, pinch(strategy, seed));
    let trivial = form.is_trivial();
    let verdict = if trivial { "trivial" } else { "nontrivial" };
    let normal = form.display(&h).to_string();
    Ok(Outcome {
        code: if trivial { OK } else { NEGATIVE },
        text: format!("{verdict}\nstable letters: {}\nnormal form: {normal}\n", form.stable_count()),
        data: json!({
            "trivial": trivial,
            "verdict": verdict,
            "syllables": form.stable_count(),
            "normal_form": normal,
        }),
        csv: None,
    })
}

fn r_pq_word(p: u32, q: u32, text: &str) -> Result<Word, CliError> {
    let pres = Family::Rpq { p, q }.presentation().map_err(usage)?;
    pres.parse_word(text).map_err(usage)
}

fn witness(pq: &Pq, k: u32, show_word: bool) -> Result<Outcome, CliError> {
    let len = snowflake_core::hnn::witness_length(pq.q, k);
    if len > 10_000_000u32.into() {
        return Err(CliError::Exhausted(format!("witness has {len} letters")));
    }
    let w = snowflake_witness(pq.p, pq.q, k).map_err(usage)?;
    let g = HnnGroup::snowflake(pq.p, pq.q).map_err(usage)?;
    let verified = w.verify(&g);
    let word = g.alphabet().format(&w.word);
    let mut text = format!("N = {}\nlen = {}\nverified: {verified}\n", w.exponent, w.len);
    if show_word {
        writeln!(text, "word: {word}").unwrap();
    }
    Ok(Outcome {
        code: if verified { OK } else { NEGATIVE },
        text,
        data: json!({
            "p": pq.p, "q": pq.q, "k": k,
            "exponent": w.exponent.to_string(),
            "len": w.len,
            "verified": verified,
            "word": word,
        }),
        csv: None,
    })
}

fn equitable(pq: &Pq, search: bool, bound: u32, max_size: usize) -> Result<Outcome, CliError> {
    if pq.p == 0 || pq.q == 0 {
        return Err(usage("p and q must be positive"));
    }
    let cert = decide_equitable(pq.p, pq.q);
    let valid = cert.validate(pq.p, pq.q);
    let (mut text, mut data) = match &cert {
        Certificate::Feasible { candidate, sums, index } => (
            format!(
                "Feasible\nset: {candidate}\nsums: {} = {} = {}\nlattice index: {index}\n",
                sums.sum_q, sums.sum_minus, sums.sum_plus
            ),
            json!({
                "verdict": "Feasible",
                "set": candidate.vectors().iter().map(|v| [v.u, v.v]).collect::<Vec<_>>(),
                "sums": [sums.sum_q, sums.sum_minus, sums.sum_plus],
                "index": index,
            }),
        ),
        Certificate::Infeasible(trace) => {
            let mut t = String::from("Infeasible\n");
            for s in &trace.steps {
                writeln!(t, "  {s}").unwrap();
            }
            (t, json!({ "verdict": "Infeasible", "trace": trace.steps }))
        }
    };
    data["valid"] = json!(valid);
    let mut found_by_search = None;
    if search {
        let found = exhaustive_search(pq.p, pq.q, bound, max_size);
        match &found {
            Some(c) => {
                let sums = star_condition(pq.p, pq.q, c.vectors());
                writeln!(text, "search: {c} with sums {}, index {}", sums.sum_q, lattice_index(c.vectors())).unwrap();
            }
            None => writeln!(text, "search: none with coordinates <= {bound}, size <= {max_size}").unwrap(),
        }
        data["search"] = match &found {
            Some(c) => json!(c.vectors().iter().map(|v| [v.u, v.v]).collect::<Vec<_>>()),
            None => Value::Null,
        };
        found_by_search = Some(found.is_some());
    }
    let feasible = cert.is_feasible() && found_by_search.unwrap_or(true);
    Ok(Outcome {
        code: if feasible && valid { OK } else { NEGATIVE },
        text,
        data,
        csv: None,
    })
}

fn area(a: &FamilyArgs, text: &str, g: &Global) -> Result<Outcome, CliError> {
    let family = family_of(a)?;
    let pres = family.presentation().map_err(usage)?;
    let w = pres.parse_word(text).map_err(usage)?.free_reduce();
    if let Some(oracle) = solver_for(&family) {
        if !oracle.is_trivial(&w) {
            return Ok(Outcome {
                code: NEGATIVE,
                text: "nontrivial word; no filling\n".into(),
                data: json!({ "trivial": false, "area": Value::Null, "exact": false }),
                csv: None,
            });
        }
    }
    let r = min_area(&pres, &w, &area_limits(g));
    let (code, text, exact) = match r {
        AreaResult::Exact(n) => (OK, format!("area = {n}\n"), true),
        AreaResult::UpperBound(n) => (EXHAUSTED, format!("area <= {n} (limits reached)\n"), false),
        AreaResult::Unknown => (EXHAUSTED, "area unknown (limits reached)\n".into(), false),
    };
    Ok(Outcome {
        code,
        text,
        data: json!({ "trivial": true, "area": r.upper(), "exact": exact }),
        csv: None,
    })
}

fn profile(a: &FamilyArgs, maxlen: usize, g: &Global) -> Result<Outcome, CliError> {
    let family = family_of(a)?;
    let pres = family.presentation().map_err(usage)?;
    let oracle = solver_for(&family).ok_or_else(|| usage(format!("no word problem solver for {family}")))?;
    let prof = area_profile(&pres, oracle.as_ref(), maxlen, &area_limits(g));
    let mut csv = String::from("n,max_area,words_examined\n");
    for n in 1..=maxlen {
        writeln!(csv, "{n},{},{}", prof.max_area[n], prof.examined[n]).unwrap();
    }
    let mut text = csv.clone();
    if prof.inexact + prof.unknown > 0 {
        writeln!(text, "# {} upper bounds only, {} unknown", prof.inexact, prof.unknown).unwrap();
    }
    Ok(Outcome {
        code: if prof.inexact + prof.unknown == 0 { OK } else { EXHAUSTED },
        text,
        data: json!({
            "family": family.to_string(),
            "max_area": prof.max_area,
            "examined": prof.examined,
            "trivial": prof.trivial,
            "inexact": prof.inexact,
            "unknown": prof.unknown,
        }),
        csv: Some(csv),
    })
}

fn alpha(pq: &Pq) -> Result<Outcome, CliError> {
    let r = alpha_exponent(pq.p, pq.q).map_err(usage)?;
    let mut text = format!(
        "2p/q = {}/{}\nalpha = {:.6}\ndehn exponent = {:.6}\nslope limit = {:.6}\n",
        r.ratio.0, r.ratio.1, r.alpha, r.dehn_exponent, r.slope_limit
    );
    let mut csv = String::from("k,slope\n");
    for (k, s) in r.slopes.iter().enumerate() {
        writeln!(text, "s_{k} = {s:.6}").unwrap();
        writeln!(csv, "{k},{s}").unwrap();
    }
    Ok(Outcome {
        code: OK,
        text,
        data: json!({
            "p": r.p, "q": r.q,
            "ratio": [r.ratio.0, r.ratio.1],
            "alpha": r.alpha,
            "dehn_exponent": r.dehn_exponent,
            "slopes": r.slopes,
            "slope_limit": r.slope_limit,
        }),
        csv: Some(csv),
    })
}

fn density(rho: f64, eps: f64, q_max: u64) -> Result<Outcome, CliError> {
    match find_pq_for_exponent(rho, eps, q_max) {
        Ok((p, q)) => {
            let e = snowflake_core::dehn::dehn_exponent_of(p, q);
            Ok(Outcome {
                code: OK,
                text: format!("p = {p}, q = {q}, 2 log2(2p/q) = {e:.6}\n"),
                data: json!({ "found": true, "p": p, "q": q, "exponent": e }),
                csv: Some(format!("p,q,exponent\n{p},{q},{e}\n")),
            })
        }
        Err(DehnError::NotFound { best, error }) => {
            let best_text = best.map_or("none".to_string(), |(p, q)| format!("({p}, {q})"));
            Ok(Outcome {
                code: NEGATIVE,
                text: format!("not found with q <= {q_max}; closest {best_text} misses by {error:.6}\n"),
                data: json!({ "found": false, "best": best.map(|(p, q)| [p, q]), "error": error }),
                csv: None,
            })
        }
        Err(e) => Err(usage(e)),
    }
}

fn confluence(group: GroupName, p: u32, q: u32, count: usize, max_len: usize, seed: u64) -> Result<Outcome, CliError> {
    let h = hnn_group(group, p, q)?;
    let family = match group {
        GroupName::R | GroupName::Klein => Family::Klein { p, q },
        GroupName::G => Family::Snowflake { p, q },
        GroupName::Z2 => Family::FreeAbelian,
    };
    let pres = family.presentation().map_err(usage)?;
    let s = confluence_trial(&h, pres.relators(), count, max_len, seed);
    let bad: Vec<String> = s.disagreements.iter().map(|w| h.alphabet().format(w)).collect();
    let mut text = format!("words: {}\ntrivial: {}\ndisagreements: {}\n", s.words, s.trivial, bad.len());
    for w in &bad {
        writeln!(text, "  {w}").unwrap();
    }
    Ok(Outcome {
        code: if bad.is_empty() { OK } else { NEGATIVE },
        text,
        data: json!({ "words": s.words, "trivial": s.trivial, "disagreements": bad }),
        csv: None,
    })
}
