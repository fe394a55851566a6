//! The `consta` command-line front end.
//!
//! Every subcommand produces a list of JSON records; `--format` chooses
//! between JSON Lines, CSV and an aligned text table built from the same
//! records. Exit codes: 0 success, 1 domain error or oracle disagreement,
//! 2 usage error.

use std::collections::{BTreeMap, HashSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::codes::{all_coset_functions, build_code, f_q, ConstaCode, DEFAULT_ENUM_CAP};
use crate::cosets::{
    derive_base_params, derive_params, q_cosets, s_orbits, BaseParams, CodeParams, CosetFunction,
};
use crate::duality::{galois_dual, phi_iso_witness, phi_selfdual, selfdual_certificate};
use crate::existence::{
    euclidean_selfdual_exists, galois_selfdual_exists, hermitian_selfdual_exists,
    iso_selfdual_exists, ExistenceVerdict,
};
use crate::gf::{make_field, Field, FieldElement};
use crate::oracle::{
    brute_dual, brute_dual_basis, brute_equal_codes, exhaustive_galois_selfdual,
    exhaustive_iso_selfdual, naive_cosets, row_space,
};
use crate::{arith, Error};

/// Environment variable holding the default enumeration cap.
pub const CAP_ENV: &str = "CONSTA_ENUM_CAP";

/// Column order of code census rows.
pub const CENSUS_COLUMNS: [&str; 13] = [
    "p",
    "e",
    "n",
    "lambda",
    "r",
    "nprime",
    "nu",
    "h",
    "phi",
    "dim",
    "d_min",
    "selfdual",
    "iso_witness",
];

#[derive(Parser, Debug)]
#[command(
    name = "consta",
    version,
    about = "Constacyclic codes over GF(p^e) and their Galois duals"
)]
pub struct Cli {
    /// Flat key=value file supplying any flag not given on the command line.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Enumeration cap for codewords and coset functions.
    #[arg(long, global = true, env = CAP_ENV, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Instance {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree of the alphabet GF(p^e).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    e: u32,
    /// Code length.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// 1, -1, g^K or [c0,...,c_{e-1}].
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    #[command(flatten)]
    inst: Instance,
    /// Coset function as rep:value pairs, e.g. 1:1,5:2.
    #[arg(long)]
    phi: String,
    /// Galois exponent of the inner product.
    #[arg(long, default_value_t = 0)]
    h: u32,
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    /// Alphabets as p^e, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2^1,2^2,3^1,3^2,5^1,5^2")]
    fields: Vec<String>,
    #[arg(long, default_value_t = 1)]
    n_min: u64,
    #[arg(long, default_value_t = 20)]
    n_max: u64,
    /// Skip instances with more q-cosets than this.
    #[arg(long, default_value_t = 6)]
    max_cosets: usize,
    /// Skip instances with p^ν above this.
    #[arg(long, default_value_t = 9)]
    max_top: u32,
    /// Restrict to one h; all of [0, e] otherwise.
    #[arg(long)]
    h: Option<u32>,
    /// Emit one census row per coset function instead of existence verdicts.
    #[arg(long)]
    codes: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derived parameters: r, n', ν, the splitting degree d and θ.
    Params(Instance),
    /// q-cosets of s + rZ_{n'r} and the orbits of Q ↦ tQ.
    Cosets {
        #[command(flatten)]
        inst: Instance,
        /// Class representative s.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        s: i64,
        /// Multipliers t whose orbits to list; defaults to -p^k for 0 ≤ k < e.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        orbit: Vec<i64>,
    },
    /// Irreducible factors f_Q of X^n - λ with their multiplicity.
    Factor(Instance),
    /// The code C_φ with generator, check polynomial and minimum weight.
    Code(CodeArgs),
    /// The p^h-dual of C_φ.
    Dual(CodeArgs),
    /// Self-duality certificate of C_φ at h.
    Check(CodeArgs),
    /// The four existence criteria.
    Exist {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, default_value_t = 0)]
        h: u32,
    },
    /// Existence verdicts or a code census over a parameter grid.
    Search(GridArgs),
    /// Cross-check closed forms against the brute-force oracle.
    Verify {
        #[command(flatten)]
        inst: Instance,
        /// A single coset function; all of them otherwise.
        #[arg(long)]
        phi: Option<String>,
        /// A single h; all of [0, e) otherwise.
        #[arg(long)]
        h: Option<u32>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    Disagreement(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Records for JSON output, plus the rows and columns used for CSV and text.
struct Report {
    records: Vec<Value>,
    rows: Vec<Value>,
    columns: Vec<&'static str>,
}

impl Report {
    fn same(records: Vec<Value>, columns: &[&'static str]) -> Report {
        Report {
            rows: records.clone(),
            records,
            columns: columns.to_vec(),
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and writes its
/// output. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv = match merge_config(argv) {
        Ok(a) => a,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let result = dispatch(&cli).and_then(|report| {
        let failed = report
            .records
            .iter()
            .filter(|r| r.get("agree") == Some(&Value::Bool(false)))
            .count();
        match emit(&report, cli.format, out) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(()),
            other => other.map_err(|e| Failure::Domain(e.to_string()))?,
        }
        if failed > 0 {
            return Err(Failure::Disagreement(failed));
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Disagreement(k)) => {
            let _ = writeln!(err, "error: {k} check(s) disagree with the oracle");
            1
        }
    }
}

/// Appends `--key=value` for each config entry the chosen subcommand accepts
/// and the command line does not already set.
fn merge_config(mut argv: Vec<OsString>) -> std::result::Result<Vec<OsString>, String> {
    let strs: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut path = None;
    for (i, a) in strs.iter().enumerate() {
        if a == "--config" {
            path = strs.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    let entries = read_config(Path::new(&path))?;
    let cmd = Cli::command();
    let sub_names: Vec<String> = cmd
        .get_subcommands()
        .map(|s| s.get_name().to_string())
        .collect();
    let mut sub = strs.iter().skip(1).find(|a| sub_names.contains(a)).cloned();
    if sub.is_none() {
        if let Some(name) = entries.get("command").or(entries.get("subcommand")) {
            if !sub_names.contains(name) {
                return Err(format!("config: unknown subcommand '{name}'"));
            }
            argv.push(name.into());
            sub = Some(name.clone());
        }
    }
    let longs = |c: &clap::Command| -> Vec<(String, bool)> {
        c.get_arguments()
            .filter_map(|a| {
                let flag = matches!(a.get_action(), clap::ArgAction::SetTrue);
                a.get_long().map(|l| (l.to_string(), flag))
            })
            .collect()
    };
    let mut all: HashSet<String> = longs(&cmd).into_iter().map(|(l, _)| l).collect();
    for s in cmd.get_subcommands() {
        all.extend(longs(s).into_iter().map(|(l, _)| l));
    }
    let accepted: BTreeMap<String, bool> = match &sub {
        Some(name) => {
            let s = cmd.find_subcommand(name).expect("known subcommand");
            longs(&cmd).into_iter().chain(longs(s)).collect()
        }
        None => longs(&cmd).into_iter().collect(),
    };
    for (key, value) in &entries {
        if key == "command" || key == "subcommand" || key == "config" {
            continue;
        }
        if !all.contains(key) {
            return Err(format!("config: unknown key '{key}'"));
        }
        let Some(&flag) = accepted.get(key) else {
            continue;
        };
        let given = strs
            .iter()
            .any(|a| a == &format!("--{key}") || a.starts_with(&format!("--{key}=")));
        if given {
            continue;
        }
        if flag {
            match value.as_str() {
                "true" | "1" | "yes" => argv.push(format!("--{key}").into()),
                "false" | "0" | "no" => {}
                _ => {
                    return Err(format!(
                        "config: '{key}' expects true or false, got '{value}'"
                    ))
                }
            }
        } else {
            argv.push(format!("--{key}={value}").into());
        }
    }
    Ok(argv)
}

fn read_config(path: &Path) -> std::result::Result<BTreeMap<String, String>, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value, got '{line}'", i + 1))?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Outcome<Report> {
    let cap = cli.cap;
    match &cli.command {
        Command::Params(inst) => cmd_params(inst),
        Command::Cosets { inst, s, orbit } => cmd_cosets(inst, *s, orbit),
        Command::Factor(inst) => cmd_factor(inst),
        Command::Code(args) => cmd_code(args, cap),
        Command::Dual(args) => cmd_dual(args, cap),
        Command::Check(args) => cmd_check(args, cap),
        Command::Exist { inst, h } => cmd_exist(inst, *h),
        Command::Search(grid) => cmd_search(grid, cap),
        Command::Verify { inst, phi, h } => cmd_verify(inst, phi.as_deref(), *h, cap),
    }
}

fn parse_lambda(field: &Field, text: &str) -> Outcome<FieldElement> {
    let lambda = field.parse_element(text).map_err(|e| {
        Failure::Usage(format!(
            "--lambda '{text}': {e}; expected 1, -1, g^K or [c0,...,c{}]",
            field.degree() - 1
        ))
    })?;
    if lambda.is_zero() {
        return Err(Failure::Usage("--lambda must be nonzero".into()));
    }
    Ok(lambda)
}

fn base_params(inst: &Instance) -> Outcome<BaseParams> {
    let f = make_field(inst.p, inst.e)?;
    let lambda = parse_lambda(&f, &inst.lambda)?;
    Ok(derive_base_params(inst.p, inst.e, inst.n, &lambda)?)
}

fn code_params(inst: &Instance) -> Outcome<Arc<CodeParams>> {
    let f = make_field(inst.p, inst.e)?;
    let lambda = parse_lambda(&f, &inst.lambda)?;
    Ok(derive_params(inst.p, inst.e, inst.n, &lambda)?)
}

fn parse_phi(pr: &CodeParams, text: &str) -> Outcome<CosetFunction> {
    let usage = |part: &str| {
        Failure::Usage(format!(
            "--phi: bad pair '{part}'; expected rep:value pairs such as 1:1,5:2"
        ))
    };
    let pairs = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|part| {
            let (k, v) = part.split_once(':').ok_or_else(|| usage(part))?;
            let k = k.trim().parse::<u64>().map_err(|_| usage(part))?;
            let v = v.trim().parse::<u32>().map_err(|_| usage(part))?;
            Ok((k, v))
        })
        .collect::<Outcome<Vec<_>>>()?;
    Ok(CosetFunction::new(pr.space(), 1, pairs)?)
}

fn phi_text(phi: &CosetFunction) -> String {
    phi.values()
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn lambda_text(pr: &BaseParams) -> String {
    pr.base_field().format_log(pr.lambda_raw())
}

fn instance_fields(pr: &BaseParams) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("p".into(), json!(pr.p()));
    m.insert("e".into(), json!(pr.e()));
    m.insert("n".into(), json!(pr.n()));
    m.insert("lambda".into(), json!(lambda_text(pr)));
    m
}

fn with(mut base: Map<String, Value>, extra: Value) -> Value {
    if let Value::Object(m) = extra {
        base.extend(m);
    }
    Value::Object(base)
}

fn cmd_params(inst: &Instance) -> Outcome<Report> {
    let base = base_params(inst)?;
    let full = code_params(inst);
    let cosets = q_cosets(base.space(), 1)?.len();
    let (big, theta) = match &full {
        Ok(pr) => (
            Some(pr.big_field().to_string()),
            Some(format!("g^{}", pr.theta_log())),
        ),
        Err(_) => (None, None),
    };
    let rec = with(
        instance_fields(&base),
        json!({
            "q": base.q(),
            "r": base.r(),
            "nprime": base.n_prime(),
            "nu": base.nu(),
            "top": base.top(),
            "modulus": base.modulus(),
            "lambda_prime": base.base_field().format_log(base.lambda_prime().value()),
            "d": base.d(),
            "splitting_field": big,
            "theta": theta,
            "cosets": cosets,
        }),
    );
    Ok(Report::same(
        vec![rec],
        &[
            "p",
            "e",
            "n",
            "lambda",
            "q",
            "r",
            "nprime",
            "nu",
            "top",
            "lambda_prime",
            "d",
            "splitting_field",
            "theta",
            "cosets",
        ],
    ))
}

fn cmd_cosets(inst: &Instance, s: i64, orbit: &[i64]) -> Outcome<Report> {
    let pr = base_params(inst)?;
    let sp = pr.space();
    let cosets = q_cosets(sp, s)?;
    let class = sp.class_of(s);
    let mut records: Vec<Value> = cosets
        .iter()
        .map(|c| {
            json!({
                "kind": "coset",
                "class": sp.class_label(class),
                "rep": c.rep,
                "size": c.members.len(),
                "members": c.members,
            })
        })
        .collect();
    if class == 1 % pr.r() {
        let explicit = !orbit.is_empty();
        let ts: Vec<i64> = if explicit {
            orbit.to_vec()
        } else {
            (0..pr.e()).map(|k| -(pr.p().pow(k) as i64)).collect()
        };
        for t in ts {
            match s_orbits(sp, t, &cosets) {
                Ok(orbits) => {
                    let reps: Vec<Vec<u64>> = orbits
                        .iter()
                        .map(|o| o.iter().map(|c| c.rep).collect())
                        .collect();
                    records.push(json!({ "kind": "orbits", "t": t, "orbits": reps }));
                }
                Err(e) if explicit => return Err(e.into()),
                Err(_) => {}
            }
        }
    }
    Ok(Report::same(
        records,
        &["kind", "class", "rep", "size", "members", "t", "orbits"],
    ))
}

fn cmd_factor(inst: &Instance) -> Outcome<Report> {
    let pr = code_params(inst)?;
    let records = q_cosets(pr.space(), 1)?
        .iter()
        .map(|c| {
            let poly = f_q(&pr, c)?;
            Ok(json!({
                "rep": c.rep,
                "members": c.members,
                "degree": poly.degree(),
                "multiplicity": pr.top(),
                "f_q": poly.to_strings(),
                "poly": poly.to_string(),
            }))
        })
        .collect::<Outcome<Vec<_>>>()?;
    Ok(Report::same(
        records,
        &["rep", "members", "degree", "multiplicity", "poly"],
    ))
}

fn min_weight(code: &ConstaCode, cap: u128) -> Outcome<Option<usize>> {
    match code.min_weight(cap) {
        Ok(w) => Ok(w),
        Err(Error::EnumerationTooLarge { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn census_row(code: &ConstaCode, h: u32, d_min: Option<usize>) -> Value {
    let pr = code.params();
    let f = pr.base_field();
    json!({
        "p": pr.p(),
        "e": pr.e(),
        "n": pr.n(),
        "lambda": f.format_log(code.ring().lambda()),
        "r": pr.r(),
        "nprime": pr.n_prime(),
        "nu": pr.nu(),
        "h": h,
        "phi": phi_text(code.phi()),
        "dim": code.dim(),
        "d_min": d_min,
        "selfdual": phi_selfdual(code.phi(), h).is_ok(),
        "iso_witness": phi_iso_witness(code.phi()),
    })
}

fn cmd_code(args: &CodeArgs, cap: u128) -> Outcome<Report> {
    let pr = code_params(&args.inst)?;
    let code = build_code(&pr, &parse_phi(&pr, &args.phi)?)?;
    let w = min_weight(&code, cap)?;
    let desc = serde_json::to_value(code.descriptor(w)).expect("descriptor serializes");
    Ok(Report {
        records: vec![desc],
        rows: vec![census_row(&code, args.h % pr.e(), w)],
        columns: CENSUS_COLUMNS.to_vec(),
    })
}

fn cmd_dual(args: &CodeArgs, cap: u128) -> Outcome<Report> {
    let pr = code_params(&args.inst)?;
    let h = args.h % pr.e();
    let code = build_code(&pr, &parse_phi(&pr, &args.phi)?)?;
    let dual = galois_dual(&code, h)?;
    let w = min_weight(&dual, cap)?;
    let desc = serde_json::to_value(dual.descriptor(w)).expect("descriptor serializes");
    Ok(Report {
        records: vec![desc],
        rows: vec![census_row(&dual, h, w)],
        columns: CENSUS_COLUMNS.to_vec(),
    })
}

fn cmd_check(args: &CodeArgs, cap: u128) -> Outcome<Report> {
    let pr = code_params(&args.inst)?;
    let h = args.h % pr.e();
    let code = build_code(&pr, &parse_phi(&pr, &args.phi)?)?;
    let cert =
        serde_json::to_value(selfdual_certificate(&code, h)).expect("certificate serializes");
    let mut rec = instance_fields(&pr);
    rec.insert("phi".into(), json!(code.phi()));
    let rec = with(rec, cert);
    let w = min_weight(&code, cap)?;
    Ok(Report {
        records: vec![rec],
        rows: vec![census_row(&code, h, w)],
        columns: CENSUS_COLUMNS.to_vec(),
    })
}

fn verdict_record(pr: &BaseParams, predicate: &str, h: Option<u32>, v: &ExistenceVerdict) -> Value {
    let mut m = instance_fields(pr);
    m.insert("predicate".into(), json!(predicate));
    m.insert("h".into(), json!(h));
    with(m, serde_json::to_value(v).expect("verdict serializes"))
}

fn cmd_exist(inst: &Instance, h: u32) -> Outcome<Report> {
    let pr = base_params(inst)?;
    let h = h % pr.e();
    let records = vec![
        verdict_record(&pr, "galois", Some(h), &galois_selfdual_exists(&pr, h)),
        verdict_record(&pr, "iso_galois", Some(h), &iso_selfdual_exists(&pr, h)),
        verdict_record(&pr, "euclidean", Some(0), &euclidean_selfdual_exists(&pr)),
        verdict_record(
            &pr,
            "hermitian",
            (pr.e() % 2 == 0).then_some(pr.e() / 2),
            &hermitian_selfdual_exists(&pr),
        ),
    ];
    Ok(Report::same(
        records,
        &[
            "p",
            "e",
            "n",
            "lambda",
            "predicate",
            "h",
            "exists",
            "matched_condition",
            "bridge_condition",
            "witness_phi",
        ],
    ))
}

fn parse_field_spec(text: &str) -> Outcome<(u64, u32)> {
    let usage = || {
        Failure::Usage(format!(
            "--fields: bad entry '{text}'; expected p^e such as 3^2"
        ))
    };
    let (p, e) = text.trim().split_once('^').unwrap_or((text.trim(), "1"));
    let p = p.trim().parse::<u64>().map_err(|_| usage())?;
    let e = e.trim().parse::<u32>().map_err(|_| usage())?;
    if e == 0 {
        return Err(usage());
    }
    Ok((p, e))
}

/// Instances of the grid with one λ = g^{(q-1)/r} per order r | q-1.
fn grid_points(grid: &GridArgs) -> Outcome<Vec<BaseParams>> {
    let mut out = Vec::new();
    for spec in &grid.fields {
        let (p, e) = parse_field_spec(spec)?;
        let f = make_field(p, e)?;
        let q = f.size();
        for n in grid.n_min.max(1)..=grid.n_max {
            for r in arith::divisors(q - 1) {
                let lambda = f.element(f.gen_pow(((q - 1) / r) as i64));
                let pr = derive_base_params(p, e, n, &lambda)?;
                if q_cosets(pr.space(), 1)?.len() <= grid.max_cosets && pr.top() <= grid.max_top {
                    out.push(pr);
                }
            }
        }
    }
    Ok(out)
}

type SortKey = (u64, u32, usize, u64, u32, usize);

fn cmd_search(grid: &GridArgs, cap: u128) -> Outcome<Report> {
    let points = grid_points(grid)?;
    let per_point = |pr: &BaseParams| -> Outcome<Vec<(SortKey, Value)>> {
        let lam = pr.base_field().log(pr.lambda_raw())?;
        let hs: Vec<u32> = match grid.h {
            Some(h) => vec![h % pr.e()],
            None => (0..=pr.e()).collect(),
        };
        let key = |h: u32, i: usize| (pr.p(), pr.e(), pr.n(), lam, h, i);
        if !grid.codes {
            return Ok(hs
                .iter()
                .map(|&h| {
                    let g = galois_selfdual_exists(pr, h);
                    let iso = iso_selfdual_exists(pr, h);
                    let mut m = instance_fields(pr);
                    m.insert("r".into(), json!(pr.r()));
                    m.insert("nprime".into(), json!(pr.n_prime()));
                    m.insert("nu".into(), json!(pr.nu()));
                    m.insert("h".into(), json!(h));
                    m.insert("galois".into(), json!(g.exists));
                    m.insert("galois_condition".into(), json!(g.matched_condition));
                    m.insert("bridge_condition".into(), json!(g.bridge_condition));
                    m.insert("iso".into(), json!(iso.exists));
                    m.insert("iso_condition".into(), json!(iso.matched_condition));
                    (key(h, 0), Value::Object(m))
                })
                .collect());
        }
        let full = derive_params(pr.p(), pr.e(), pr.n() as u64, &pr.lambda())?;
        let mut rows = Vec::new();
        for (i, phi) in all_coset_functions(&full, 1)?.iter().enumerate() {
            let code = build_code(&full, phi)?;
            let w = min_weight(&code, cap)?;
            for &h in &hs {
                rows.push((key(h, i), census_row(&code, h % pr.e(), w)));
            }
        }
        Ok(rows)
    };
    let mut keyed: Vec<(SortKey, Value)> = points
        .par_iter()
        .map(per_point)
        .collect::<Outcome<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    keyed.sort_by_key(|a| a.0);
    let records: Vec<Value> = keyed.into_iter().map(|(_, v)| v).collect();
    let columns: &[&str] = if grid.codes {
        &CENSUS_COLUMNS
    } else {
        &[
            "p",
            "e",
            "n",
            "lambda",
            "r",
            "nprime",
            "nu",
            "h",
            "galois",
            "galois_condition",
            "bridge_condition",
            "iso",
            "iso_condition",
        ]
    };
    Ok(Report::same(records, columns))
}

fn check_record(
    check: &str,
    h: Option<u32>,
    phi: Option<&CosetFunction>,
    closed: Value,
    oracle: Value,
) -> Value {
    let agree = closed == oracle;
    json!({
        "check": check,
        "h": h,
        "phi": phi.map(phi_text),
        "closed_form": closed,
        "oracle": oracle,
        "agree": agree,
    })
}

fn cmd_verify(inst: &Instance, phi: Option<&str>, h: Option<u32>, cap: u128) -> Outcome<Report> {
    let pr = code_params(inst)?;
    let f = pr.base_field();
    let e = pr.e();
    let hs: Vec<u32> = match h {
        Some(h) => vec![h % e],
        None => (0..e).collect(),
    };
    let mut records = Vec::new();

    let mut ours: Vec<Vec<u64>> = q_cosets(pr.space(), 1)?
        .into_iter()
        .map(|c| c.members)
        .collect();
    ours.sort();
    let mut naive = naive_cosets(&pr, 1)?;
    naive.sort();
    records.push(check_record(
        "cosets",
        None,
        None,
        json!(ours),
        json!(naive),
    ));

    let phis = match phi {
        Some(text) => vec![parse_phi(&pr, text)?],
        None => {
            let total = (pr.top() as u128 + 1).checked_pow(q_cosets(pr.space(), 1)?.len() as u32);
            if total.is_none_or(|t| t > cap) {
                return Err(Failure::Domain(
                    "too many coset functions to scan; pass --phi or raise --cap".into(),
                ));
            }
            all_coset_functions(&pr, 1)?
        }
    };
    for phi in &phis {
        let code = build_code(&pr, phi)?;
        let own = row_space(f, pr.n(), &code.generator_matrix())?;
        for &h in &hs {
            let dual = galois_dual(&code, h)?;
            let brute = brute_dual_basis(&code, h)?;
            let closed = row_space(f, pr.n(), &dual.generator_matrix())?;
            records.push(check_record(
                "dual_row_space",
                Some(h),
                Some(phi),
                json!(closed.to_rows()),
                json!(brute.to_rows()),
            ));
            if dual.size() <= cap {
                let set = brute_dual(&code, h, cap)?;
                records.push(check_record(
                    "dual_codewords",
                    Some(h),
                    Some(phi),
                    json!(true),
                    json!(brute_equal_codes(&set, &dual, cap)?),
                ));
            }
            records.push(check_record(
                "selfdual",
                Some(h),
                Some(phi),
                json!(phi_selfdual(phi, h).is_ok()),
                json!(own == brute),
            ));
        }
    }

    if phi.is_none() {
        let iso_truth = exhaustive_iso_selfdual(&pr).map(|w| w.is_some());
        let exist_hs: Vec<u32> = if h.is_some() {
            hs.clone()
        } else {
            (0..=e).collect()
        };
        for h in exist_hs {
            if let Ok(truth) = exhaustive_galois_selfdual(&pr, h) {
                let verdict = galois_selfdual_exists(&pr, h).exists;
                records.push(check_record(
                    "galois_exists",
                    Some(h),
                    None,
                    json!(verdict),
                    json!(truth.is_some()),
                ));
            }
            if let Ok(truth) = &iso_truth {
                let verdict = iso_selfdual_exists(&pr, h).exists;
                records.push(check_record(
                    "iso_exists",
                    Some(h),
                    None,
                    json!(verdict),
                    json!(truth),
                ));
            }
        }
    }
    Ok(Report::same(
        records,
        &["check", "h", "phi", "closed_form", "oracle", "agree"],
    ))
}

/// Flattens a JSON value into one table cell.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(items) => items
            .iter()
            .map(|x| match x {
                Value::Array(_) => format!("({})", cell(x)),
                _ => cell(x),
            })
            .collect::<Vec<_>>()
            .join(" "),
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| format!("{k}:{}", cell(x)))
            .collect::<Vec<_>>()
            .join(","),
    }
}

fn emit(report: &Report, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in &report.records {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(r).expect("records serialize")
                )?;
            }
        }
        Format::Csv => {
            if report.rows.is_empty() {
                return Ok(());
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.columns)?;
            for r in &report.rows {
                w.write_record(
                    report
                        .columns
                        .iter()
                        .map(|c| r.get(*c).map(cell).unwrap_or_default()),
                )?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            out.write_all(&bytes)?;
        }
        Format::Text => {
            if report.rows.is_empty() {
                return Ok(());
            }
            let cells: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    report
                        .columns
                        .iter()
                        .map(|c| r.get(*c).map(cell).unwrap_or_default())
                        .collect()
                })
                .collect();
            let widths: Vec<usize> = (0..report.columns.len())
                .map(|j| {
                    cells
                        .iter()
                        .map(|row| row[j].chars().count())
                        .chain([report.columns[j].len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let line = |row: Vec<&str>| {
                row.iter()
                    .zip(&widths)
                    .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(report.columns.clone()))?;
            for row in &cells {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}
