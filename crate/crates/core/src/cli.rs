//! Command line front end.
//!
//! Exit codes: 0 on success, 1 when an audited inequality or identity
//! fails, 2 on usage or input format errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::comparison::{tree_csv, tree_dot, ComparisonTree};
use crate::embedding::{
    descendant_count_check, multiplicity_audit, path_length_audit, tree_size_for,
    wang_lower_neighbour_check,
};
use crate::enumerations::{
    brute_force_profile, enumeration_audit, prefix_profile, spiral_edge_gap_check, z2_profile,
    Enumeration, KindName,
};
use crate::lattice::io::{any_to_json, parse_function, AnyFunction};
use crate::lattice::Exponent;
use crate::rearrangement::{ps_ratio, ps_ratio_exact, rearrange};
use crate::search::{
    constant_sweep, counterexample_search, dimension_check, emit_plot_data, rayleigh_oracle_p2,
    SearchConfig, SweepConfig, ORACLE_MAX_SUPPORT,
};
use crate::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const THREADS_ENV: &str = "REARRANGE_LAB_THREADS";

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "rearrange-lab",
    version,
    about = "Rearrangements of functions on integer lattices"
)]
pub struct Cli {
    /// Worker threads; falls back to $REARRANGE_LAB_THREADS, then 1.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// List the first labels of an enumeration.
    Enumerate(EnumerateArgs),
    /// Prefix boundary sizes of an enumeration.
    Profile(ProfileArgs),
    /// Edge list of the comparison tree.
    Ctree(CtreeArgs),
    /// Rearrange a function file.
    Rearrange(RearrangeArgs),
    /// Gradient norm ratio of a rearranged function.
    Ratio(RatioArgs),
    /// Run one of the combinatorial audits.
    Audit(AuditArgs),
    /// Search for functions with a large ratio.
    Search(SearchArgs),
    /// Best found ratios against proven bounds over a grid of exponents.
    Sweep(SweepArgs),
    /// Random l1-respecting enumerations against their audited bounds.
    Dimcheck(DimcheckArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(long, default_value = "spiral")]
    pub kind: KindName,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ProfileArgs {
    #[arg(long, default_value = "wang")]
    pub kind: KindName,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Exhaustive minimum over sets inside the l1 ball of this radius instead.
    #[arg(long)]
    pub brute_radius: Option<u64>,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Graph {
    Z2,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TreeFormat {
    Csv,
    Dot,
}

#[derive(Args, Debug, Serialize)]
pub struct CtreeArgs {
    #[arg(long, value_enum, default_value = "z2")]
    pub graph: Graph,
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TreeFormat,
}

#[derive(Args, Debug, Serialize)]
pub struct RearrangeArgs {
    #[arg(long = "enum", default_value = "spiral")]
    pub kind: KindName,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Defaults to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Float,
    Rational,
}

#[derive(Args, Debug, Serialize)]
pub struct RatioArgs {
    #[arg(long = "enum", default_value = "spiral")]
    pub kind: KindName,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Exponent, a decimal >= 1 or `inf`.
    #[arg(long)]
    pub p: Exponent,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Overrides the mode stored in the file.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    PsiLength,
    PsiMult,
    /// Largest `(n - m) / sqrt(m)` over spiral edges.
    #[value(alias = "spiral-gap")]
    Lemma41,
    Boundary,
    Spheres,
    Nested,
    Descendants,
    Corners,
}

#[derive(Args, Debug, Serialize)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    /// Enumeration for `psi-mult` and `nested`.
    #[arg(long = "enum", default_value = "spiral")]
    pub kind: KindName,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct SearchArgs {
    #[arg(long = "enum", default_value = "spiral")]
    pub kind: KindName,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub p: Exponent,
    #[arg(long, default_value_t = 5)]
    pub support: usize,
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub window: i64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,1.5,2,3,inf")]
    pub ps: Vec<Exponent>,
    #[arg(long, value_delimiter = ',', default_value = "spiral,wang")]
    pub enums: Vec<KindName>,
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub support: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct DimcheckArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Number of seeded enumerations, seeds 1..=count.
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    #[arg(long, default_value_t = 20_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 5)]
    pub support: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Audit(_) | Error::NonMonotoneProfile(_) => 1,
        Error::TreeTooSmall { .. }
        | Error::ProfileTooShort { .. }
        | Error::EnumerationTooShort { .. }
        | Error::BudgetExceeded { .. }
        | Error::NotAnEdge(..) => 1,
        _ => 2,
    }
}

/// Parses `args` (program name first) and runs, writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let threads = match resolve_threads(cli.threads) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut buffer = String::new();
    let result = pool.install(|| execute(&cli, threads, &mut buffer));
    if let Err(e) = out.write_all(buffer.as_bytes()) {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    match result {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    run_with(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

fn resolve_threads(flag: Option<usize>) -> Result<usize> {
    if let Some(t) = flag {
        return Ok(t.max(1));
    }
    match std::env::var(THREADS_ENV) {
        Ok(s) => s.trim().parse::<usize>().map(|t| t.max(1)).map_err(|_| {
            Error::Format(format!(
                "{THREADS_ENV}: expected a positive integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(1),
    }
}

enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

/// `# rearrange-lab <version> config=<json>` header for CSV output.
fn meta_line(cli: &Cli, threads: usize) -> String {
    format!(
        "# rearrange-lab {VERSION} threads={threads} config={}\n",
        serde_json::to_string(&cli.command).unwrap()
    )
}

fn meta_json(cli: &Cli) -> serde_json::Value {
    json!({ "tool": "rearrange-lab", "version": VERSION, "config": cli.command })
}

fn emit(out: &mut String, path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.push_str(text),
    }
    Ok(())
}

fn read_function(path: &PathBuf) -> Result<AnyFunction> {
    let text = std::fs::read_to_string(path)?;
    parse_function(&text).map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn coordinate_names(d: usize) -> Vec<String> {
    match d {
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=d).map(|i| format!("x{i}")).collect(),
    }
}

fn execute(cli: &Cli, threads: usize, out: &mut String) -> Result<Outcome> {
    let meta = meta_line(cli, threads);
    match &cli.command {
        Command::Enumerate(a) => {
            let e = Enumeration::build(a.kind, a.d, a.seed, a.n)?;
            let mut text = meta;
            text.push_str(&format!("label,{}\n", coordinate_names(a.d).join(",")));
            for (i, p) in e.points().iter().enumerate() {
                let coords: Vec<String> = p.coords().iter().map(i64::to_string).collect();
                text.push_str(&format!("{},{}\n", i + 1, coords.join(",")));
            }
            emit(out, None, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Profile(a) => {
            let values = match a.brute_radius {
                Some(r) => brute_force_profile(a.d, a.n as usize, r)?.values()[1..].to_vec(),
                None => prefix_profile(&Enumeration::build(a.kind, a.d, a.seed, a.n)?, a.n)?,
            };
            let mut text = meta;
            text.push_str("n,boundary\n");
            for (i, v) in values.iter().enumerate() {
                text.push_str(&format!("{},{v}\n", i + 1));
            }
            emit(out, None, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Ctree(a) => {
            let t = match a.graph {
                Graph::Z2 => ComparisonTree::z2(a.n)?,
            };
            let text = match a.format {
                TreeFormat::Csv => meta + &tree_csv(&t),
                TreeFormat::Dot => format!("// rearrange-lab {VERSION}\n{}", tree_dot(&t)),
            };
            emit(out, None, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Rearrange(a) => {
            let f = read_function(&a.input)?;
            let mut e = Enumeration::build(a.kind, f.dim(), a.seed, 0)?;
            let g = match &f {
                AnyFunction::Float(f) => AnyFunction::Float(rearrange(f, &mut e)?),
                AnyFunction::Rational(f) => AnyFunction::Rational(rearrange(f, &mut e)?),
            };
            let text = serde_json::to_string_pretty(&any_to_json(&g, Some(meta_json(cli))))
                .unwrap()
                + "\n";
            emit(out, a.out.as_ref(), &text)?;
            Ok(Outcome::Pass)
        }
        Command::Ratio(a) => {
            let f = match (read_function(&a.input)?, a.mode) {
                (f, Some(Mode::Float)) => AnyFunction::Float(f.to_f64()),
                (AnyFunction::Float(_), Some(Mode::Rational)) => {
                    return Err(Error::Format(
                        "rational mode needs a rational function file".into(),
                    ))
                }
                (f, _) => f,
            };
            let mut e = Enumeration::build(a.kind, f.dim(), a.seed, 0)?;
            let r = match &f {
                AnyFunction::Float(g) => ps_ratio(g, &mut e, a.p)?,
                AnyFunction::Rational(g) => ps_ratio(g, &mut e, a.p)?,
            };
            let mut text = format!("{:?}\n", r.norm_ratio);
            if let Some(pow) = r.power_ratio {
                text.push_str(&format!("power_ratio={pow:?}\n"));
            }
            if let (AnyFunction::Rational(g), Some(k)) = (&f, a.p.as_integer()) {
                let (num, den) = ps_ratio_exact(g, &mut e, k)?;
                text.push_str(&format!("exact_power_ratio={}\n", num / den));
            }
            emit(out, None, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Audit(a) => audit(a, meta, out),
        Command::Search(a) => {
            let mut e = Enumeration::build(a.kind, a.d, a.seed, 0)?;
            let cfg = SearchConfig::new(a.p, a.support, a.budget, a.seed)
                .threads(threads)
                .window(a.window);
            let report = counterexample_search(&mut e, &cfg)?;
            report.verify(&mut e)?;
            let mut summary = format!("norm_ratio={:?}\n", report.norm_ratio);
            if let Some(pow) = report.power_ratio {
                summary.push_str(&format!("power_ratio={pow:?}\n"));
            }
            let mut oracle = None;
            if a.p == Exponent::Finite(2.0) && a.support <= ORACLE_MAX_SUPPORT {
                let support: Vec<_> = report.best_function()?.support().cloned().collect();
                let q = rayleigh_oracle_p2(&mut e, &support)?.quotient;
                summary.push_str(&format!("oracle_power_ratio={q:?}\n"));
                oracle = Some(q);
            }
            let mut doc = serde_json::to_value(&report).unwrap();
            doc["meta"] = meta_json(cli);
            if let Some(q) = oracle {
                doc["oracle_power_ratio"] = json!(q);
            }
            if let Some(path) = &a.out {
                emit(
                    out,
                    Some(path),
                    &(serde_json::to_string_pretty(&doc).unwrap() + "\n"),
                )?;
            }
            emit(out, None, &summary)?;
            Ok(Outcome::Pass)
        }
        Command::Sweep(a) => {
            let cfg = SweepConfig {
                budget: a.budget,
                seed: a.seed,
                support_size: a.support,
                threads,
                ..SweepConfig::default()
            };
            let rows = constant_sweep(&a.enums, &a.ps, &cfg)?;
            let ok = rows
                .iter()
                .all(|r| r.theorem_upper.is_none_or(|u| r.lower_bound <= u + 1e-9));
            emit(out, a.out.as_ref(), &(meta + &emit_plot_data(&rows)))?;
            Ok(ok.into())
        }
        Command::Dimcheck(a) => {
            let cfg = SweepConfig {
                budget: a.budget,
                support_size: a.support,
                threads,
                ..SweepConfig::default()
            };
            let seeds: Vec<u64> = (1..=a.seeds).collect();
            let rows = dimension_check(a.d, &seeds, a.p, &cfg)?;
            let mut text = meta + "dim,enum,c_min,bound,searched,profile_verified,ok\n";
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.dim, r.kind, r.c_min, r.bound, r.searched, r.profile_verified, r.ok
                ));
            }
            emit(out, a.out.as_ref(), &text)?;
            Ok(rows.iter().all(|r| r.ok).into())
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn audit(a: &AuditArgs, meta: String, out: &mut String) -> Result<Outcome> {
    let n = a.n;
    let (line, csv, ok) = match a.check {
        Check::PsiLength => {
            let t = ComparisonTree::z2(tree_size_for(n))?;
            let r = path_length_audit(&t, n)?;
            let ok = r.max_len <= 4;
            (
                format!("max_len={}  {} (<=4)", r.max_len, verdict(ok)),
                format!(
                    "label_max,edges,max_len,argmax_i,argmax_j\n{},{},{},{},{}\n",
                    n, r.edges, r.max_len, r.argmax.0, r.argmax.1
                ),
                ok,
            )
        }
        Check::PsiMult => {
            let t = ComparisonTree::z2(tree_size_for(n))?;
            let r = multiplicity_audit(a.kind, &t, n)?;
            let limit = if a.kind == KindName::Wang { 2 } else { 16 };
            let ok = r.max_mult <= limit;
            (
                format!("max_mult={}  {} (<={limit})", r.max_mult, verdict(ok)),
                format!(
                    "enum,label_max,edges,max_mult,tree_parent,tree_child\n{},{},{},{},{},{}\n",
                    r.kind, n, r.edges, r.max_mult, r.argmax.0, r.argmax.1
                ),
                ok,
            )
        }
        Check::Lemma41 => {
            let r = spiral_edge_gap_check(n)?;
            let ok = r.max_ratio <= 7.0;
            (
                format!("max_ratio={}  {} (<=7)", r.max_ratio, verdict(ok)),
                format!(
                    "m_max,max_ratio,argmax_m,argmax_n\n{},{},{},{}\n",
                    n, r.max_ratio, r.argmax.0, r.argmax.1
                ),
                ok,
            )
        }
        Check::Boundary => {
            let profile = z2_profile(2 * n as usize + 16);
            let t = ComparisonTree::build(&profile, n + profile.get(n as usize).unwrap())?;
            let failures: Vec<u64> = (1..=n)
                .map(|k| t.boundary_check(k).map(|ok| (k, ok)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(k, _)| k)
                .collect();
            let ok = failures.is_empty();
            (
                format!(
                    "failures={}  {} (boundary of 1..k is k+1..k+P(k))",
                    failures.len(),
                    verdict(ok)
                ),
                format!(
                    "n_max,failures,first_failure\n{},{},{}\n",
                    n,
                    failures.len(),
                    failures.first().map(u64::to_string).unwrap_or_default()
                ),
                ok,
            )
        }
        Check::Spheres => {
            let size = 1 + 2 * (n + 1) * (n + 2);
            let t = ComparisonTree::z2(size)?;
            let mut csv = String::from("r,sphere,ball\n");
            let mut ok = true;
            for r in 0..=n {
                let (s, b) = t.sphere_ball_sizes(r as u32)?;
                let expected = if r == 0 {
                    (1, 1)
                } else {
                    (4 * r, 1 + 2 * r * (r + 1))
                };
                ok &= (s, b) == expected;
                csv.push_str(&format!("{r},{s},{b}\n"));
            }
            (
                format!("radius={n}  {} (sphere=4r, ball=1+2r(r+1))", verdict(ok)),
                csv,
                ok,
            )
        }
        Check::Nested => {
            let mut e = Enumeration::build(a.kind, 2, a.seed, 0)?;
            let r = enumeration_audit(&mut e, &z2_profile(n as usize), n)?;
            let ok = a.kind != KindName::Wang || (r.nested_ok && r.c_min == 1.0);
            (
                format!(
                    "c_min={} nested_ok={}  {}",
                    r.c_min,
                    r.nested_ok,
                    verdict(ok)
                ),
                format!(
                    "enum,n_max,nested_ok,first_failure,c_min,c_argmax\n{},{},{},{},{},{}\n",
                    a.kind,
                    n,
                    r.nested_ok,
                    r.first_nested_failure
                        .map(|v| v.to_string())
                        .unwrap_or_default(),
                    r.c_min,
                    r.c_argmax
                ),
                ok,
            )
        }
        Check::Descendants => {
            let t = ComparisonTree::z2(4 * n + 64)?;
            let r = descendant_count_check(&t, n)?;
            let ok = r.min_ratio > 7.0;
            (
                format!("min_ratio={}  {} (>7)", r.min_ratio, verdict(ok)),
                format!(
                    "m_max,min_ratio,argmin\n{},{},{}\n",
                    n, r.min_ratio, r.argmin
                ),
                ok,
            )
        }
        Check::Corners => {
            let (corners, others) = wang_lower_neighbour_check(n)?;
            let ok = corners && others;
            (
                format!("corners_ok={corners} others_ok={others}  {}", verdict(ok)),
                format!("r_max,corners_ok,others_ok\n{n},{corners},{others}\n"),
                ok,
            )
        }
    };
    emit(out, None, &format!("{line}\n{meta}{csv}"))?;
    Ok(ok.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("rearrange-lab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn profile_rows() {
        let (code, out, _) = run(&["profile", "--kind", "wang", "--n", "6"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .collect();
        assert_eq!(rows, ["1,4", "2,6", "3,7", "4,8", "5,8", "6,9"]);
        assert!(out.starts_with("# rearrange-lab "));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["profile"]).0, 2);
        assert_eq!(run(&["ratio", "--p", "0.5", "--in", "x.json"]).0, 2);
        assert_eq!(
            run(&["ratio", "--p", "2", "--in", "/nonexistent.json"]).0,
            2
        );
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn audit_line() {
        let (code, out, _) = run(&["audit", "--check", "psi-length", "--n", "300"]);
        assert_eq!(code, 0);
        assert!(out.lines().next().unwrap().ends_with("PASS (<=4)"));
    }

    #[test]
    fn threads_env_fallback() {
        assert_eq!(resolve_threads(Some(3)).unwrap(), 3);
        assert_eq!(resolve_threads(Some(0)).unwrap(), 1);
    }
}
