//! The `weave` command line. [`run`] parses arguments, executes one
//! subcommand and returns what to print together with the exit code:
//! 0 pass, 1 property violation, 2 input error, 3 crossing budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::canonical::{canonical_form, is_minimal_size, q_functional, CanonicalForm, WindingSet};
use crate::corpus::{self, CorpusEntry};
use crate::diagram::format::{parse_diagram, write_diagram};
use crate::diagram::{primitive_direction, SurfaceDiagram};
use crate::invariants::{
    adequacy, bracket_with, degree_stats, jones_from_f, kauffman_f_with, linking_matrix, writhe, BracketOptions,
    InvariantError,
};
use crate::moves::{fuzz, replay, MoveError, MoveTrace};
use crate::tessellation::{
    assign_weaving_map, build_tiling, classify, parse_vertex_symbol, transform, Classification, Method,
    TessellationError, TransformSpec, WeavingMap,
};
use crate::verify::{check_walk, run_suite, Suite, SuiteConfig, VerifyError};

#[derive(Parser, Debug)]
#[command(name = "weave", version, about = "Periodic weaving diagrams on closed surfaces")]
struct Cli {
    /// Worker threads for state sums and suites.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    parallel: u64,
    /// Largest crossing count for state sums.
    #[arg(
        long,
        global = true,
        env = "WEAVE_CROSSING_BUDGET",
        default_value_t = 24,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    crossing_budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonReport,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a diagram from a tiling, a transform and crossing sequences.
    Build {
        #[arg(long)]
        tiling: String,
        /// Cr, nCr or nBr; the n may be written as the valency, as in 4Br.
        #[arg(long)]
        method: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        scale: usize,
        /// `alt`, or `i,j:p,q` entries separated by `;` with sets numbered from 1.
        #[arg(long, default_value = "alt")]
        seq: String,
        /// Write the diagram here instead of standard output.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Report the invariants of a diagram file.
    Analyze { file: PathBuf },
    /// Run a property suite over a corpus.
    Verify {
        #[arg(long)]
        suite: String,
        /// Directory of diagram files; the built-in corpus when absent.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
    /// Random Reidemeister walk, checking invariance at every step.
    Fuzz {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        cap: usize,
        /// Write the move trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Replay this trace instead of walking, and print the result.
        #[arg(long, conflicts_with_all = ["trace"])]
        replay: Option<PathBuf>,
    },
    /// Canonical winding form of a diagram or of a `windings` line.
    Canonicalize {
        file: PathBuf,
        /// Confirm the minimum against every matrix with entries in [-N, N].
        #[arg(long)]
        certify_ball: Option<i64>,
    },
    /// Write the built-in corpus as diagram files.
    Corpus { dir: PathBuf },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

fn input(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        let code = if matches!(e, InvariantError::TooManyCrossings { .. }) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<MoveError> for Failure {
    fn from(e: MoveError) -> Self {
        input(e)
    }
}

impl From<TessellationError> for Failure {
    fn from(e: TessellationError) -> Self {
        input(e)
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Invariant(e) => e.into(),
            other => input(other),
        }
    }
}

/// Ordered key/value report, rendered as `key: value` lines or as JSON.
#[derive(Default)]
struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.fields.push((key.to_string(), v.into()));
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::JsonReport => {
                let map: serde_json::Map<String, Value> = self.fields.iter().cloned().collect();
                let mut s = serde_json::to_string_pretty(&Value::Object(map)).unwrap();
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for (k, v) in &self.fields {
                    match v {
                        Value::String(t) if t.contains('\n') => {
                            s.push_str(&format!("{k}:\n"));
                            for line in t.lines() {
                                s.push_str(&format!("  {line}\n"));
                            }
                        }
                        Value::String(t) => s.push_str(&format!("{k}: {t}\n")),
                        other => s.push_str(&format!("{k}: {other}\n")),
                    }
                }
                s
            }
        }
    }
}

/// Parses and runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn options(cli: &Cli) -> BracketOptions {
    BracketOptions {
        budget: cli.crossing_budget as usize,
        threads: cli.parallel as usize,
    }
}

fn execute(cli: &Cli) -> Result<(i32, String), Failure> {
    match &cli.command {
        Command::Build {
            tiling,
            method,
            m,
            scale,
            seq,
            out,
        } => cmd_build(cli, tiling, method, *m, *scale, seq, out.as_deref()),
        Command::Analyze { file } => cmd_analyze(cli, file),
        Command::Verify {
            suite,
            corpus,
            steps,
            seed,
            cap,
        } => cmd_verify(cli, suite, corpus.as_deref(), *steps, *seed, *cap),
        Command::Fuzz {
            file,
            steps,
            seed,
            cap,
            trace,
            replay,
        } => match replay {
            Some(t) => cmd_replay(cli, file, t),
            None => cmd_fuzz(cli, file, *steps, *seed, *cap, trace.as_deref()),
        },
        Command::Canonicalize { file, certify_ball } => cmd_canonicalize(cli, file, *certify_ball),
        Command::Corpus { dir } => cmd_corpus(dir),
    }
}

/// `Cr`, `nCr`, `nBr`, or the same with a number in place of `n`. Returns
/// the method and the stated valency, if any.
pub fn parse_method(s: &str) -> Result<(Method, Option<usize>), String> {
    let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
    let rest = &s[digits.len()..];
    let (method, named_n) = match rest {
        "Cr" if digits.is_empty() => return Ok((Method::Cr, None)),
        "nCr" if digits.is_empty() => (Method::NCr, false),
        "nBr" if digits.is_empty() => (Method::NBr, false),
        "Cr" => (Method::NCr, true),
        "Br" => (Method::NBr, true),
        _ => return Err(format!("unknown method '{s}' (Cr, nCr, nBr, or e.g. 4Br)")),
    };
    let n = if named_n {
        Some(digits.parse::<usize>().map_err(|_| format!("bad valency in '{s}'"))?)
    } else {
        None
    };
    Ok((method, n))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SurfaceDiagram, Failure> {
    let d = parse_diagram(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let r = d.validate();
    if !r.is_well_formed() {
        let v: Vec<String> = r.violations.iter().map(|x| x.to_string()).collect();
        return Err(input(format!("{}: {}", path.display(), v.join("; "))));
    }
    Ok(d)
}

fn census(d: &SurfaceDiagram) -> Vec<String> {
    let Ok(threads) = d.threads() else {
        return Vec::new();
    };
    let Ok(sets) = d.thread_sets() else {
        return vec!["none: some component does not wrap".to_string()];
    };
    sets.iter()
        .enumerate()
        .map(|(i, s)| {
            let dir = primitive_direction(&threads[s[0]].homology).unwrap_or_default();
            let dir: Vec<String> = dir.iter().map(|x| x.to_string()).collect();
            format!("set {}: {} threads, direction ({})", i + 1, s.len(), dir.join(","))
        })
        .collect()
}

fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::Weave => "Weave",
        Classification::Polycatenane => "Polycatenane",
        Classification::Mixed => "Mixed",
    }
}

fn cmd_build(
    cli: &Cli,
    tiling: &str,
    method: &str,
    m: usize,
    scale: usize,
    seq: &str,
    out: Option<&Path>,
) -> Result<(i32, String), Failure> {
    let sym = parse_vertex_symbol(tiling)?;
    let (method, n) = parse_method(method).map_err(input)?;
    if let Some(n) = n {
        if n != sym.valency() {
            return Err(input(format!("method valency {n} does not match {sym}")));
        }
    }
    let map: WeavingMap = seq.parse()?;
    let t = build_tiling(&sym, scale)?;
    let spec = TransformSpec::new(method, m)?;
    let mut d = transform(&t, spec)?;
    let class = classify(&d)?;
    if class == Classification::Weave {
        d = assign_weaving_map(&d, &map)?;
    }
    let text = write_diagram(&d);
    let mut r = Report::default();
    r.put("tiling", sym.to_string());
    r.put("classification", classification_name(class));
    r.put("crossings", d.crossings.len());
    r.put("components", d.component_count());
    r.put("threads", d.threads().map_err(input)?.len());
    r.put("alternating", d.is_alternating());
    r.put("thread_sets", census(&d).join("\n"));
    if class != Classification::Weave {
        r.put("weaving_map", "not applied");
    }
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| input(format!("{}: {e}", path.display())))?;
        r.put("written", path.display().to_string());
        return Ok((0, r.render(cli.format)));
    }
    if cli.format == Format::JsonReport {
        r.put("diagram", text);
        return Ok((0, r.render(cli.format)));
    }
    let mut s = String::new();
    for line in r.render(Format::Text).lines() {
        s.push_str(&format!("# {line}\n"));
    }
    s.push_str(&text);
    Ok((0, s))
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    m.iter()
        .map(|row| row.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_analyze(cli: &Cli, file: &Path) -> Result<(i32, String), Failure> {
    let mut d = load(file)?;
    let opts = options(cli);
    let c = d.crossings.len();
    if c > opts.budget {
        return Err(InvariantError::TooManyCrossings {
            crossings: c,
            budget: opts.budget,
        }
        .into());
    }
    let mut r = Report::default();
    if !d.is_coherently_oriented() {
        d = d.orient_threads().map_err(input)?;
        r.put("note", "threads were reoriented coherently");
    }
    let faces = d.faces().map_err(input)?;
    let b = bracket_with(&d, opts)?;
    let f = kauffman_f_with(&d, opts)?;
    let ad = adequacy(&d)?;
    r.put("crossings", c);
    r.put("genus", d.genus);
    r.put("faces", faces.len());
    r.put("components", d.component_count());
    r.put("threads", d.threads().map_err(input)?.len());
    r.put("thread_sets", census(&d).join("\n"));
    r.put("alternating", d.is_alternating());
    r.put("proper", d.is_proper().0);
    r.put("reduced", d.is_reduced().0);
    r.put("plus_adequate", ad.plus);
    r.put("minus_adequate", ad.minus);
    r.put("minimal_size", is_minimal_size(&d));
    r.put("writhe", writhe(&d)?);
    r.put("linking_matrix", matrix_text(&linking_matrix(&d)?));
    r.put("bracket", b.to_string());
    r.put("kauffman_f", f.to_string());
    r.put("jones", jones_from_f(&f).to_string());
    match degree_stats(&d, &b) {
        Ok(s) => {
            r.put("maxdeg", s.maxdeg);
            r.put("mindeg", s.mindeg);
            r.put("span", s.span);
            r.put("white", s.white);
            r.put("black", s.black);
        }
        Err(e) => r.put("degree", format!("unavailable: {e}")),
    }
    r.put("windings", windings_line(d.genus, &WindingSet::from_bracket(&b)));
    Ok((0, r.render(cli.format)))
}

fn windings_line(genus: usize, w: &WindingSet) -> String {
    format!("genus={genus} {w}")
}

/// Parses `windings: genus=G {(x,y,...) ...}`, the line `analyze` prints.
pub fn parse_windings(line: &str) -> Result<(usize, WindingSet), String> {
    let bad = || format!("bad windings line '{line}'");
    let rest = line.trim().strip_prefix("windings").ok_or_else(bad)?;
    let rest = rest.strip_prefix(':').unwrap_or(rest).trim();
    let (g, rest) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let genus: usize = g.strip_prefix("genus=").and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    let body = rest.trim().strip_prefix('{').and_then(|x| x.strip_suffix('}')).ok_or_else(bad)?;
    let mut vs = Vec::new();
    for part in body.split(')') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let inner = part.strip_prefix('(').ok_or_else(bad)?;
        let v: Result<Vec<i64>, _> = inner.split(',').map(|x| x.trim().parse::<i64>()).collect();
        let v = v.map_err(|_| bad())?;
        if v.len() != 2 * genus {
            return Err(format!("vector ({inner}) needs {} entries", 2 * genus));
        }
        vs.push(v);
    }
    Ok((genus, WindingSet::new(vs)))
}

fn load_suite_corpus(dir: Option<&Path>) -> Result<Vec<CorpusEntry>, Failure> {
    let Some(dir) = dir else {
        return Ok(corpus::standard());
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "diagram"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            Ok(CorpusEntry {
                name: p.file_stem().unwrap_or_default().to_string_lossy().into_owned(),
                diagram: load(p)?,
            })
        })
        .collect()
}

fn cmd_verify(
    cli: &Cli,
    suite: &str,
    dir: Option<&Path>,
    steps: usize,
    seed: u64,
    cap: usize,
) -> Result<(i32, String), Failure> {
    let suite: Suite = suite.parse().map_err(input)?;
    let corpus = load_suite_corpus(dir)?;
    let cfg = SuiteConfig {
        steps,
        seed,
        cap,
        budget: cli.crossing_budget as usize,
        workers: cli.parallel as usize,
    };
    let results = run_suite(suite, &corpus, &cfg)?;
    let passed = results.iter().filter(|r| r.passed == Some(true)).count();
    let failed = results.iter().filter(|r| r.passed == Some(false)).count();
    let skipped = results.len() - passed - failed;
    let code = if failed > 0 { 1 } else { 0 };
    let out = match cli.format {
        Format::JsonReport => {
            let mut s = serde_json::to_string_pretty(&json!({
                "suite": suite,
                "passed": passed,
                "failed": failed,
                "skipped": skipped,
                "results": results,
            }))
            .unwrap();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                let tag = match r.passed {
                    Some(true) => "PASS",
                    Some(false) => "FAIL",
                    None => "SKIP",
                };
                s.push_str(&format!("{tag} {} {}\n", r.name, r.detail));
                if let Some(dump) = &r.counterexample {
                    s.push_str("# counterexample\n");
                    s.push_str(dump);
                }
            }
            s.push_str(&format!("suite {suite}: {passed} passed, {failed} failed, {skipped} skipped\n"));
            s
        }
    };
    Ok((code, out))
}

fn write_or_fail(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn cmd_fuzz(cli: &Cli, file: &Path, steps: usize, seed: u64, cap: usize, trace_out: Option<&Path>) -> Result<(i32, String), Failure> {
    let d = load(file)?;
    let opts = options(cli);
    let c = d.crossings.len();
    if c.max(cap) > opts.budget {
        return Err(InvariantError::TooManyCrossings {
            crossings: c.max(cap),
            budget: opts.budget,
        }
        .into());
    }
    let (trace, walk) = fuzz(&d, steps, seed, cap)?;
    let checks = check_walk(&d, &walk, opts, &|x| x.clone())?;
    let first_bad = checks.iter().position(|k| !(k.bracket_ok && k.f_ok && k.linking_ok));
    let last = walk.last().map_or(&d, |s| &s.after);
    let mut r = Report::default();
    r.put("seed", seed);
    r.put("steps", trace.moves.len());
    r.put("start_crossings", c);
    r.put("end_crossings", last.crossings.len());
    r.put("min_crossings", walk.iter().map(|s| s.after.crossings.len()).chain([c]).min().unwrap_or(c));
    for kind in ["R1_add", "R1_remove", "R2_add", "R2_remove", "R3"] {
        r.put(&format!("moves_{kind}"), trace.moves.iter().filter(|m| m.kind() == kind).count());
    }
    r.put("invariance", if first_bad.is_none() { "pass" } else { "fail" });
    if let Some(i) = first_bad {
        r.put("violation", format!("step {} ({}): {:?}", i + 1, trace.moves[i], checks[i]));
    }
    match trace_out {
        Some(p) => {
            write_or_fail(p, &trace.to_text())?;
            r.put("trace_file", p.display().to_string());
        }
        None => r.put("trace", trace.to_text()),
    }
    r.put("final_diagram", write_diagram(last));
    Ok((if first_bad.is_some() { 1 } else { 0 }, r.render(cli.format)))
}

fn cmd_replay(cli: &Cli, file: &Path, trace_path: &Path) -> Result<(i32, String), Failure> {
    let d = load(file)?;
    let trace = MoveTrace::parse(&read(trace_path)?)?;
    let end = replay(&d, &trace)?;
    if cli.format == Format::JsonReport {
        let mut r = Report::default();
        r.put("steps", trace.moves.len());
        r.put("final_diagram", write_diagram(&end));
        return Ok((0, r.render(cli.format)));
    }
    Ok((0, write_diagram(&end)))
}

/// Least `Q` over all symplectic 2x2 integer matrices with entries in
/// `[-n, n]`.
pub fn ball_minimum(v: &WindingSet, n: i64) -> i64 {
    let mut best = q_functional(v);
    for a in -n..=n {
        for b in -n..=n {
            for c in -n..=n {
                for d in -n..=n {
                    if a * d - b * c != 1 {
                        continue;
                    }
                    let q: i64 = v
                        .vectors()
                        .iter()
                        .map(|x| {
                            let y = [x[0] * a + x[1] * c, x[0] * b + x[1] * d];
                            y[0] * y[0] + y[1] * y[1]
                        })
                        .sum();
                    best = best.min(q);
                }
            }
        }
    }
    best
}

fn cmd_canonicalize(cli: &Cli, file: &Path, ball: Option<i64>) -> Result<(i32, String), Failure> {
    let text = read(file)?;
    let given = text
        .lines()
        .map(str::trim)
        .find(|l| l.starts_with("windings"));
    let (genus, set) = match given {
        Some(l) => parse_windings(l).map_err(input)?,
        None => {
            let d = load(file)?;
            let opts = options(cli);
            (d.genus, WindingSet::from_bracket(&bracket_with(&d, opts)?))
        }
    };
    let CanonicalForm {
        set: canon,
        matrix,
        q_before,
        q_after,
        certified,
    } = canonical_form(&set, genus);
    let mut r = Report::default();
    r.put("genus", genus);
    r.put("before", windings_line(genus, &set));
    r.put("q_before", q_before);
    r.put("matrix", matrix.to_string());
    r.put("after", windings_line(genus, &canon));
    r.put("q_after", q_after);
    r.put("certified", certified);
    let mut code = 0;
    if let Some(n) = ball {
        if n < 0 {
            return Err(input("--certify-ball needs N >= 0"));
        }
        if genus == 1 {
            let m = ball_minimum(&set, n);
            r.put("ball", n);
            r.put("ball_minimum", m);
            if m < q_after {
                r.put("ball_check", "fail");
                code = 1;
            } else {
                r.put("ball_check", "pass");
            }
        } else {
            r.put("ball_check", "unavailable for genus above 1");
        }
    }
    Ok((code, r.render(cli.format)))
}

fn cmd_corpus(dir: &Path) -> Result<(i32, String), Failure> {
    fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
    let mut s = String::new();
    for e in corpus::standard() {
        let p = dir.join(format!("{}.diagram", e.name));
        write_or_fail(&p, &write_diagram(&e.diagram))?;
        s.push_str(&format!(
            "{} C={} g={}\n",
            e.name,
            e.diagram.crossings.len(),
            e.diagram.genus
        ));
    }
    Ok((0, s))
}
