//! `nanoword` command-line tool.
//!
//! Exit status: 0 ok, 1 property violation, 2 input error.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nanoword::algebra::{parse_rational, ParamExpr, ParamValues, RingValues, RingVar};
use nanoword::certify::{fuzz, Check, FuzzConfig};
use nanoword::genus::genus_report;
use nanoword::invariants::{
    arnold, arnold_degree3, counts, ArnoldKind, Degree3, Degree3Form, Preset, PRESET_NAMES,
};
use nanoword::moves::{apply_move, enumerate_sites, Direction, MoveKind, MoveSite};
use nanoword::pairing::{cyclic_class, Flavor, Pattern};
use nanoword::word::{base_curve, parse_word, CurveClass, EtaleWord, Family, WordError};

#[derive(Parser)]
#[command(
    name = "nanoword",
    version,
    about = "Nanoword invariants of plane curves and fronts"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Seed for random walks; NANOWORD_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Parameter values, e.g. `s=-1/2,t=1`.
    #[arg(long, global = true)]
    params: Option<String>,
    /// Ring values, e.g. `a+=1,a-=-1`.
    #[arg(long, global = true)]
    ring: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Plain,
    Marked,
    Front,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Corrected,
    Printed,
}

impl From<FormArg> for Degree3Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Corrected => Degree3Form::Corrected,
            FormArg::Printed => Degree3Form::AsPrinted,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluates a preset (CI2, ..., FI2~, J+, J-, St, J+3, St3) on word files.
    Compute {
        preset: String,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Substitution used by J+3 and St3.
        #[arg(long, value_enum, default_value_t = FormArg::Corrected)]
        form: FormArg,
    },
    /// Prints (J+, J-, St).
    Arnold {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Genus of the surface carried by a closed word or front.
    Genus {
        file: PathBuf,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
    },
    /// Prints a base curve K_i, L_i or K_{i,k}.
    Base {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
        #[arg(long)]
        cusps: Option<u32>,
    },
    /// Expands a pattern into its cyclic class.
    ExpandClass {
        pattern: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Plain)]
        flavor: FlavorArg,
    },
    /// Lists or applies elementary moves.
    Moves {
        #[command(subcommand)]
        action: MovesAction,
    },
    /// Random walks from a base curve, checking an invariance law.
    Fuzz {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
        #[arg(long)]
        cusps: Option<u32>,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value = "deltas")]
        check: String,
        #[arg(long, value_enum, default_value_t = FormArg::Corrected)]
        form: FormArg,
    },
    /// Arnold values of a range of base curves.
    Table {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long)]
        cusps: Option<u32>,
    },
}

#[derive(Subcommand)]
enum MovesAction {
    /// Numbered list of move sites.
    List {
        file: PathBuf,
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        dir: Option<String>,
    },
    /// Applies site number `--site` of the given kind and direction.
    Apply {
        file: PathBuf,
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(long)]
        site: usize,
    },
}

/// A failed command: exit status and message.
struct Failure(u8, String);

fn input(e: impl Display) -> Failure {
    Failure(2, e.to_string())
}

type Outcome = Result<String, Failure>;

fn read_word(path: &Path) -> Result<EtaleWord, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_word(&text).map_err(|e| match e {
        WordError::Syntax {
            line,
            column,
            message,
        } => input(format!("{}:{line}:{column}: {message}", path.display())),
        other => input(format!("{}: {other}", path.display())),
    })
}

fn assignments(text: &str) -> Result<Vec<(String, String)>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            item.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| input(format!("expected name=value, got `{item}`")))
        })
        .collect()
}

fn parse_params(text: Option<&str>) -> Result<ParamValues, Failure> {
    let mut out = ParamValues::new();
    for (k, v) in assignments(text.unwrap_or(""))? {
        out.insert(k, parse_rational(&v).map_err(input)?);
    }
    Ok(out)
}

fn parse_ring(text: Option<&str>) -> Result<RingValues, Failure> {
    let mut out = RingValues::new();
    for (k, v) in assignments(text.unwrap_or(""))? {
        let var = RingVar::from_name(&k)
            .ok_or_else(|| input(format!("unknown ring variable `{k}` (a+, a-)")))?;
        out.insert(var, parse_rational(&v).map_err(input)?);
    }
    Ok(out)
}

fn seed(global: &Global) -> Result<u64, Failure> {
    match std::env::var("NANOWORD_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| input(format!("NANOWORD_SEED is not an integer: `{s}`"))),
        Err(_) => Ok(global.seed),
    }
}

/// Rational if fully specialized, expression otherwise.
fn value_text(v: &ParamExpr) -> String {
    match v.as_rational() {
        Some(r) => r.to_string(),
        None => v.to_string(),
    }
}

fn value_json(v: &ParamExpr) -> Value {
    match v.as_rational() {
        Some(r) => Value::String(r.to_string()),
        None => v.to_json(),
    }
}

fn rows(format: Format, files: &[PathBuf], values: Vec<ParamExpr>) -> String {
    match format {
        Format::Tsv if files.len() == 1 => value_text(&values[0]),
        Format::Tsv => files
            .iter()
            .zip(&values)
            .map(|(f, v)| format!("{}\t{}", f.display(), value_text(v)))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json if files.len() == 1 => value_json(&values[0]).to_string(),
        Format::Json => Value::Array(
            files
                .iter()
                .zip(&values)
                .map(|(f, v)| json!({"file": f.display().to_string(), "value": value_json(v)}))
                .collect(),
        )
        .to_string(),
    }
}

fn compute(g: &Global, name: &str, files: &[PathBuf], form: Degree3Form) -> Outcome {
    let params = parse_params(g.params.as_deref())?;
    let ring = parse_ring(g.ring.as_deref())?;
    let words = files
        .iter()
        .map(|f| read_word(f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut values = Vec::new();
    if let Some(kind) = ArnoldKind::from_name(name) {
        if !params.is_empty() || !ring.is_empty() {
            return Err(input(format!("{name} takes no parameters")));
        }
        for w in &words {
            values.push(ParamExpr::rational(
                arnold(w).map_err(input)?.get(kind).clone(),
            ));
        }
    } else if let Some(which) = match name {
        "J+3" => Some(Degree3::JPlus3),
        "St3" => Some(Degree3::St3),
        _ => None,
    } {
        let known = which.params();
        if let Some(bad) = params.keys().find(|k| !known.contains(k)) {
            return Err(input(format!(
                "`{bad}` is not a parameter of {name} (parameters: {})",
                known.join(",")
            )));
        }
        for w in &words {
            let v = arnold_degree3(w, which, form).map_err(input)?;
            values.push(v.specialize_partial(&params, &ring));
        }
    } else {
        let preset = Preset::by_name(name)
            .map_err(|e| input(format!("{e}; known: {}", PRESET_NAMES.join(", "))))?;
        preset
            .check_params(params.keys().map(String::as_str))
            .map_err(input)?;
        for w in &words {
            values.push(preset.evaluate_with(w, &params, &ring).map_err(input)?);
        }
    }
    Ok(rows(g.format, files, values))
}

fn arnold_cmd(g: &Global, files: &[PathBuf]) -> Outcome {
    let mut out = Vec::new();
    let mut list = Vec::new();
    for f in files {
        let a = arnold(&read_word(f)?).map_err(input)?;
        let prefix = if files.len() > 1 {
            format!("{}\t", f.display())
        } else {
            String::new()
        };
        out.push(format!("{prefix}{}\t{}\t{}", a.j_plus, a.j_minus, a.st));
        list.push(json!({
            "file": f.display().to_string(),
            "J+": a.j_plus.to_string(),
            "J-": a.j_minus.to_string(),
            "St": a.st.to_string(),
        }));
    }
    Ok(match g.format {
        Format::Tsv => out.join("\n"),
        Format::Json if list.len() == 1 => list.remove(0).to_string(),
        Format::Json => Value::Array(list).to_string(),
    })
}

fn genus_cmd(g: &Global, file: &Path, as_json: bool) -> Outcome {
    let r = genus_report(&read_word(file)?).map_err(input)?;
    Ok(if as_json || g.format == Format::Json {
        json!({"genus": r.genus, "planar": r.genus == 0, "faces": r.faces}).to_string()
    } else {
        r.genus.to_string()
    })
}

fn family(s: &str) -> Result<Family, Failure> {
    s.parse().map_err(input)
}

fn expand(g: &Global, text: &str, flavor: FlavorArg) -> Outcome {
    let v: Pattern = text.parse().map_err(input)?;
    let flavor = match flavor {
        FlavorArg::Plain => Flavor::Plain,
        FlavorArg::Marked => Flavor::Marked,
        FlavorArg::Front => Flavor::Front,
    };
    let c = cyclic_class(&v, flavor).map_err(input)?;
    Ok(match g.format {
        Format::Tsv => c
            .terms
            .iter()
            .map(|(s, p)| format!("{s}\t{p}"))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => Value::Array(
            c.terms
                .iter()
                .map(|(s, p)| json!({"sign": s, "pattern": p.to_string()}))
                .collect(),
        )
        .to_string(),
    })
}

fn kinds_for(w: &EtaleWord, kind: Option<&str>) -> Result<Vec<MoveKind>, Failure> {
    match kind {
        Some(k) => Ok(vec![k.parse().map_err(input)?]),
        None => Ok(MoveKind::for_class(w.class()).to_vec()),
    }
}

fn directions(dir: Option<&str>) -> Result<Vec<Direction>, Failure> {
    match dir {
        Some(d) => Ok(vec![d.parse().map_err(input)?]),
        None => Ok(vec![Direction::Positive, Direction::Negative]),
    }
}

fn moves_list(g: &Global, file: &Path, kind: Option<&str>, dir: Option<&str>) -> Outcome {
    let w = read_word(file)?;
    let mut sites: Vec<MoveSite> = Vec::new();
    for k in kinds_for(&w, kind)? {
        for d in directions(dir)? {
            sites.extend(enumerate_sites(&w, k, d).map_err(input)?);
        }
    }
    Ok(match g.format {
        Format::Tsv => sites
            .iter()
            .enumerate()
            .map(|(n, s)| format!("{n}\t{s}"))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => Value::Array(
            sites
                .iter()
                .enumerate()
                .map(|(n, s)| {
                    json!({
                        "n": n,
                        "kind": s.kind.name(),
                        "dir": s.direction.to_string(),
                        "site": s.to_string(),
                    })
                })
                .collect(),
        )
        .to_string(),
    })
}

fn moves_apply(file: &Path, kind: &str, dir: &str, n: usize) -> Outcome {
    let w = read_word(file)?;
    let kind: MoveKind = kind.parse().map_err(input)?;
    let dir: Direction = dir.parse().map_err(input)?;
    let sites = enumerate_sites(&w, kind, dir).map_err(input)?;
    let site = sites.get(n).ok_or_else(|| {
        input(format!(
            "site {n} out of range: {} {kind}{dir} sites",
            sites.len()
        ))
    })?;
    let out = apply_move(&w, site).map_err(input)?;
    Ok(out.serialize().trim_end().to_string())
}

#[allow(clippy::too_many_arguments)]
fn fuzz_cmd(
    g: &Global,
    fam: &str,
    index: i64,
    cusps: Option<u32>,
    steps: usize,
    trials: usize,
    check: &str,
    form: Degree3Form,
) -> Outcome {
    let mut cfg = FuzzConfig::new(family(fam)?, index, check.parse::<Check>().map_err(input)?);
    cfg.cusps = cusps;
    cfg.steps = steps;
    cfg.trials = trials;
    cfg.seed = seed(g)?;
    cfg.form = form;
    let report = fuzz(&cfg).map_err(input)?;
    let text = report.to_string().trim_end().to_string();
    if report.ok() {
        Ok(text)
    } else {
        Err(Failure(1, text))
    }
}

fn table(g: &Global, fam: &str, from: i64, to: i64, cusps: Option<u32>) -> Outcome {
    let fam = family(fam)?;
    let class = fam.class();
    let (name, preset) = match class {
        CurveClass::Closed => ("CI3", Preset::ci3()),
        CurveClass::Long => ("LI3", Preset::li3()),
        CurveClass::Front => ("FI3", Preset::fi3()),
    };
    let header = ["curve", "i", "mu", "n", "J+", "J-", "St", name];
    let mut tsv = vec![header.join("\t")];
    let mut list = Vec::new();
    for i in from..=to {
        let w = base_curve(fam, i, cusps).map_err(input)?;
        let a = arnold(&w).map_err(input)?;
        let c = counts(&w);
        let v = preset.evaluate(&w).map_err(input)?;
        let curve = match (fam, cusps) {
            (Family::KF, k) => format!("K{i},{}", k.unwrap_or(0)),
            (Family::K, _) => format!("K{i}"),
            (Family::L, _) => format!("L{i}"),
        };
        tsv.push(format!(
            "{curve}\t{}\t{}\t{}\t{}\t{}\t{}\t{v}",
            c.i, c.mu, c.n, a.j_plus, a.j_minus, a.st
        ));
        list.push(json!({
            "curve": curve, "i": c.i, "mu": c.mu, "n": c.n,
            "J+": a.j_plus.to_string(), "J-": a.j_minus.to_string(), "St": a.st.to_string(),
            name: v.to_json(),
        }));
    }
    Ok(match g.format {
        Format::Tsv => tsv.join("\n"),
        Format::Json => Value::Array(list).to_string(),
    })
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Compute {
            preset,
            files,
            form,
        } => compute(g, preset, files, (*form).into()),
        Command::Arnold { files } => arnold_cmd(g, files),
        Command::Genus { file, json } => genus_cmd(g, file, *json),
        Command::Base {
            family: f,
            index,
            cusps,
        } => {
            let w = base_curve(family(f)?, *index, *cusps).map_err(input)?;
            Ok(w.serialize().trim_end().to_string())
        }
        Command::ExpandClass { pattern, flavor } => expand(g, pattern, *flavor),
        Command::Moves { action } => match action {
            MovesAction::List { file, kind, dir } => {
                moves_list(g, file, kind.as_deref(), dir.as_deref())
            }
            MovesAction::Apply {
                file,
                kind,
                dir,
                site,
            } => moves_apply(file, kind, dir, *site),
        },
        Command::Fuzz {
            family: f,
            index,
            cusps,
            steps,
            trials,
            check,
            form,
        } => fuzz_cmd(g, f, *index, *cusps, *steps, *trials, check, (*form).into()),
        Command::Table {
            family: f,
            from,
            to,
            cusps,
        } => table(g, f, *from, *to, *cusps),
    }
}

/// Prints to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(text) => {
            if !text.is_empty() {
                emit(&text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure(1, text)) => {
            emit(&text);
            ExitCode::from(1)
        }
        Err(Failure(code, text)) => {
            eprintln!("error: {text}");
            ExitCode::from(code)
        }
    }
}
