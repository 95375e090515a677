use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{json, Value};

use cyclowenzl::combinat::{all_shapes, count_updown, default_u, double_factorial_odd, Multipartition};
use cyclowenzl::hecke::{gamma_product, gram_matrix, is_semisimple, HeckeAlgebra, MurphyBasis};
use cyclowenzl::params::{check_admissible, default_trunc, omega_from_u, ParamConfig, ParamSet, DEFAULT_PRECISION};
use cyclowenzl::rat::{fmt_q, parse_q};
use cyclowenzl::seminormal::{build_all, check_identities, check_regime, verify_relations, IdentityReport};
use cyclowenzl::wcell::cellular_rank_report;
use cyclowenzl::{Error, Q};

#[derive(Parser, Debug)]
#[command(name = "cyclowenzl", version, about = "Checks for cyclotomic Nazarov-Wenzl algebras")]
struct Cli {
    /// Number of cyclotomic parameters.
    #[arg(long, global = true)]
    r: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Comma separated rationals, e.g. `7/2,-4`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    u: Option<String>,
    /// Float precision in bits.
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Truncation order of the Ω series.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Write JSON lines here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON parameter file; its keys override the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sum of squared updown counts against r^n (2n-1)!!.
    Counts,
    /// Relation and identity suite on the seminormal modules.
    Verify,
    /// Gram determinant of a Hecke cell module.
    Gram {
        /// `[[2,1],[1]]` or `2,1|1`.
        #[arg(long)]
        lambda: String,
    },
    /// Rank of the cellular basis of W.
    Cellrank,
    /// ω_0, …, ω_A derived from u.
    Omega {
        #[arg(long = "a", short = 'a')]
        a: usize,
    },
}

struct Resolved {
    r: usize,
    n: usize,
    u: Option<Vec<Q>>,
    trunc: Option<usize>,
    precision: usize,
}

impl Resolved {
    fn params(&self, n: usize) -> ParamSet {
        let u = self.u.clone().unwrap_or_else(|| default_u(self.r, n));
        ParamSet::from_u(u, self.trunc.unwrap_or_else(|| default_trunc(self.r, n)), self.precision)
    }
}

fn parse_u(parts: &[String]) -> Result<Vec<Q>, String> {
    parts.iter().map(|s| parse_q(s).map_err(|e| e.to_string())).collect()
}

fn resolve(cli: &Cli) -> Result<Resolved, String> {
    let mut u = match &cli.u {
        Some(s) => Some(parse_u(&s.split(',').map(str::to_string).collect::<Vec<_>>())?),
        None => None,
    };
    let mut r = cli.r;
    let mut n = cli.n;
    let mut trunc = cli.trunc;
    let mut precision = cli.precision;
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let cfg: ParamConfig = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        r = cfg.r.or(r);
        n = cfg.n.or(n);
        trunc = cfg.trunc.or(trunc);
        precision = cfg.precision_bits.or(precision);
        if let Some(v) = &cfg.u {
            u = Some(parse_u(v)?);
        }
    }
    let r = match (&u, r) {
        (Some(v), Some(r)) if v.len() != r => return Err(format!("--r {r} but {} parameters given", v.len())),
        (Some(v), _) => v.len(),
        (None, Some(r)) => r,
        (None, None) => 2,
    };
    if r == 0 {
        return Err("r must be at least 1".into());
    }
    let precision = precision.unwrap_or(DEFAULT_PRECISION);
    if precision < 64 {
        return Err(format!("precision {precision} is below 64 bits"));
    }
    Ok(Resolved { r, n: n.unwrap_or(3), u, trunc, precision })
}

fn parse_lambda(s: &str, r: usize) -> Result<Multipartition, String> {
    let s = s.trim();
    let comps: Vec<Vec<usize>> = if s.starts_with('[') {
        serde_json::from_str(s).map_err(|e| format!("bad multipartition {s:?}: {e}"))?
    } else {
        s.split('|')
            .map(|c| {
                let c = c.trim();
                if c.is_empty() || c == "-" {
                    Ok(Vec::new())
                } else {
                    c.split(',').map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad part {p:?}: {e}"))).collect()
                }
            })
            .collect::<Result<_, _>>()?
    };
    if comps.len() != r {
        return Err(format!("{s:?} has {} components, expected {r}", comps.len()));
    }
    Multipartition::new(comps).map_err(|e| e.to_string())
}

struct Report {
    records: Vec<Value>,
    pass: bool,
}

fn params_json(ps: &ParamSet) -> Value {
    serde_json::to_value(ps).expect("params serialize")
}

fn summary(command: &str, ps: &ParamSet, n: usize, pass: bool, extra: Value) -> Value {
    let mut v = json!({"record": "summary", "command": command, "n": n, "pass": pass, "params": params_json(ps)});
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn cmd_counts(res: &Resolved) -> Result<Report, Error> {
    let (r, n) = (res.r, res.n);
    let ps = res.params(n);
    let mut records = Vec::new();
    let mut total = BigUint::zero();
    for lambda in all_shapes(r, n) {
        let c = count_updown(r, n, &lambda)?;
        total += &c * &c;
        records.push(json!({"record": "shape", "lambda": lambda, "f": (n - lambda.size()) / 2, "count": c.to_string()}));
    }
    let target = BigUint::from(r).pow(n as u32) * double_factorial_odd(n);
    let equal = total == target;
    records.push(summary(
        "counts",
        &ps,
        n,
        equal,
        json!({"total": total.to_string(), "target": target.to_string(), "equal": equal}),
    ));
    Ok(Report { records, pass: equal })
}

fn cmd_verify(res: &Resolved) -> Result<Report, Error> {
    let n = res.n;
    let ps = res.params(n);
    check_regime(&ps, n)?;
    let reps = build_all(res.r, n, &ps, res.precision)?;
    let rel = verify_relations(&reps, &ps)?;
    let mut records = Vec::new();
    for (family, fr) in &rel.families {
        records.push(json!({"record": "relation", "family": family, "residual": fr}));
    }
    let mut ids = IdentityReport::default();
    for lambda in all_shapes(res.r, n) {
        ids.merge(&check_identities(&lambda, n, &ps)?);
    }
    for (name, count) in &ids.checked {
        records.push(json!({"record": "identity", "name": name, "checked": count}));
    }
    for f in &ids.failures {
        records.push(json!({"record": "identity_failure", "detail": f}));
    }
    let pass = rel.passes(res.precision) && ids.ok();
    records.push(summary(
        "verify",
        &ps,
        n,
        pass,
        json!({"relations_pass": rel.passes(res.precision), "identities_pass": ids.ok(), "modules": reps.len()}),
    ));
    Ok(Report { records, pass })
}

fn cmd_gram(res: &Resolved, lambda: &Multipartition) -> Result<Report, Error> {
    let n = lambda.size();
    let ps = res.params(n);
    let h = HeckeAlgebra::new(n, &ps.u)?;
    let basis = MurphyBasis::new(&h)?;
    let g = gram_matrix(&h, &basis, lambda)?;
    let det = cyclowenzl::hecke::det(g.entries.clone());
    let semisimple = is_semisimple(ps.r, n, &ps.u);
    let (gammas, equal) = if semisimple {
        let p = gamma_product(lambda, &ps.u)?;
        (Some(fmt_q(&p)), p == det)
    } else {
        (None, true)
    };
    let pass = equal && g.consistent;
    let records = vec![
        json!({"record": "gram", "lambda": lambda, "matrix": g, "det": fmt_q(&det)}),
        summary(
            "gram",
            &ps,
            n,
            pass,
            json!({"lambda": lambda, "det": fmt_q(&det), "gamma_product": gammas, "equal": equal, "semisimple": semisimple}),
        ),
    ];
    Ok(Report { records, pass })
}

fn cmd_cellrank(res: &Resolved) -> Result<Report, Error> {
    let n = res.n;
    let ps = res.params(n);
    let rep = cellular_rank_report(n, &ps, res.precision)?;
    let pass = rep.ok;
    let records = vec![summary(
        "cellrank",
        &ps,
        n,
        pass,
        json!({"count": rep.count, "expected": rep.expected, "rank": rep.rank}),
    )];
    Ok(Report { records, pass })
}

fn cmd_omega(res: &Resolved, a: usize) -> Result<Report, Error> {
    let n = res.n;
    let mut ps = res.params(n);
    if ps.trunc < a {
        ps = ParamSet::from_u(ps.u.clone(), a, ps.precision_bits);
    }
    let values: Vec<Q> = (0..=a).map(|k| omega_from_u(&ps, k)).collect::<Result<_, _>>()?;
    let adm = check_admissible(&values);
    let pass = adm.admissible;
    let records = vec![summary(
        "omega",
        &ps,
        n,
        pass,
        json!({"a": a, "omega": values.iter().map(fmt_q).collect::<Vec<_>>(), "admissibility": adm}),
    )];
    Ok(Report { records, pass })
}

fn emit(out: &Option<PathBuf>, records: &[Value]) -> io::Result<()> {
    let mut buf = String::new();
    for r in records {
        buf.push_str(&serde_json::to_string(r).expect("json"));
        buf.push('\n');
    }
    match out {
        Some(p) => fs::write(p, buf),
        None => io::stdout().lock().write_all(buf.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match resolve(&cli) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let (name, outcome) = match &cli.command {
        Command::Counts => ("counts", cmd_counts(&res)),
        Command::Verify => ("verify", cmd_verify(&res)),
        Command::Gram { lambda } => match parse_lambda(lambda, res.r) {
            Ok(l) => ("gram", cmd_gram(&res, &l)),
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        },
        Command::Cellrank => ("cellrank", cmd_cellrank(&res)),
        Command::Omega { a } => ("omega", cmd_omega(&res, *a)),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            let ps = res.params(res.n);
            let kind = match e {
                Error::Regime(_) | Error::NotGeneric(_) => "regime",
                _ => "error",
            };
            let rec = summary(name, &ps, res.n, false, json!({"error": kind, "detail": e.to_string()}));
            Report { records: vec![rec], pass: false }
        }
    };
    if let Err(e) = emit(&cli.out, &report.records) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
