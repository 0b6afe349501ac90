//! qdescent: descent, root numbers and L-values for y^2 = x^5 + A.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use qdescent::cyclotomic::{factor_rational_prime, CyclotomicNumber};
use qdescent::localization::{class_at, class_at_5};
use qdescent::lseries::{self, BsdOptions, EulerCache, LOptions, LSeriesParams, NumericMode, Smoothing};
use qdescent::rootnumber::{root_number_general, root_number_m2, RootNumberInput};
use qdescent::selmer::{build_context_with, rank_report, selmer_compute, DescentConfig};
use qdescent::{arith, Error};

use report::{evidence, Report};

#[derive(Parser, Debug)]
#[command(name = "qdescent", version, about = "Descent and L-values for Jacobians of y^2 = x^5 + A")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel parts (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Working precision 5^k at the prime above 5 (4..=18).
    #[arg(long, global = true, default_value_t = 16)]
    precision: u32,
    /// Digits of the x-enumeration at the prime above 5 (1..=10).
    #[arg(long, global = true, default_value_t = 7)]
    enum_digits: u32,
    /// Number of Dirichlet coefficients (default: recommended for N).
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Split point of the theta integral.
    #[arg(long, global = true, default_value_t = 1.0)]
    t0: f64,
    /// Gauss-Legendre nodes per quadrature panel.
    #[arg(long, global = true, default_value_t = 16)]
    nodes: usize,
    /// Euler-factor cache directory (overrides QDESCENT_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Selmer group of the (1 - z)-isogeny for A = m^2.
    Selmer {
        m: i64,
        /// Assume the parity conjecture in the rank statement.
        #[arg(long)]
        parity: bool,
    },
    /// Root number of J_A.
    Rootnumber {
        /// A = m^2 with m odd and square-free.
        #[arg(long, conflicts_with = "a", required_unless_present = "a")]
        m: Option<i64>,
        #[arg(long = "A", id = "a")]
        a: Option<i64>,
    },
    /// L(s, J_A) for A = m^2.
    Lvalue {
        #[arg(long = "A", id = "a")]
        a: i64,
        /// Complex point, e.g. 1, 1.5 or 1+0.3i.
        #[arg(long, default_value = "1")]
        s: String,
        /// Largest acceptable error estimate.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        /// Also estimate the sign from the functional equation.
        #[arg(long)]
        sign: bool,
    },
    /// Rank part of BSD for J_{m^2}.
    Bsd {
        m: i64,
        #[arg(long, value_enum, default_value_t = Numeric::Auto)]
        numeric: Numeric,
        #[arg(long)]
        parity: bool,
    },
    /// Fifth-power class of a0 + a1 z + a2 z^2 + a3 z^3 at a prime.
    Localclass {
        /// Comma-separated coordinates, rationals allowed (e.g. 1,-1,0,0).
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Rational prime below the place.
        #[arg(long, default_value_t = 5)]
        at: u64,
        /// Which prime above `at` (0-based).
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Factor an integer into primes of Z[z].
    Factor { n: u64 },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Numeric {
    Auto,
    Always,
    Never,
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(Report, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global();
    }
    match run(&cli) {
        Ok((report, ok)) => {
            if cli.global.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Selmer { m, parity } => cmd_selmer(g, *m, *parity),
        Command::Rootnumber { m, a } => cmd_rootnumber(*m, *a),
        Command::Lvalue { a, s, tolerance, sign } => cmd_lvalue(g, *a, s, *tolerance, *sign),
        Command::Bsd { m, numeric, parity } => cmd_bsd(g, *m, *numeric, *parity),
        Command::Localclass { coeffs, at, index } => cmd_localclass(coeffs, *at, *index),
        Command::Factor { n } => cmd_factor(*n),
    }
}

fn descent_config(g: &Global) -> Result<DescentConfig, Failure> {
    if !(4..=18).contains(&g.precision) {
        return Err(Failure::Usage(format!("--precision {} outside 4..=18", g.precision)));
    }
    if !(1..=10).contains(&g.enum_digits) {
        return Err(Failure::Usage(format!("--enum-digits {} outside 1..=10", g.enum_digits)));
    }
    Ok(DescentConfig {
        precision: g.precision,
        enumeration_digits: g.enum_digits,
        ..Default::default()
    })
}

fn l_options(g: &Global) -> Result<LOptions, Failure> {
    if !(g.t0 > 0.0) {
        return Err(Failure::Usage("--t0 must be positive".into()));
    }
    if g.nodes < 2 {
        return Err(Failure::Usage("--nodes must be at least 2".into()));
    }
    let cache = match &g.cache_dir {
        Some(d) => Some(EulerCache::new(d)),
        None => EulerCache::from_env(),
    };
    Ok(LOptions {
        cutoff: g.cutoff,
        smoothing: Smoothing {
            t0: g.t0,
            nodes: g.nodes,
            ..Default::default()
        },
        cache,
    })
}

fn family_help(m: i64) -> String {
    format!("m = {m} is outside the descent family: m must be positive, odd, square-free and prime to 5")
}

fn cmd_selmer(g: &Global, m: i64, parity: bool) -> Outcome {
    let cfg = descent_config(g)?;
    let ctx = build_context_with(m, cfg).map_err(|e| match e {
        Error::Domain(msg) => Failure::Usage(format!("{}; {msg}", family_help(m))),
        e => e.into(),
    })?;
    let sel = selmer_compute(&ctx)?;
    let w = root_number_m2(m)?;
    let statement = rank_report(&sel, w, parity);
    let mut r = Report::new("selmer", json!({ "m": m, "parity": parity, "precision": cfg.precision, "enum_digits": cfg.enumeration_digits }));
    r.results = json!({
        "dimension": sel.dimension,
        "exact": true,
        "basis": sel.rendered,
        "coordinates": sel.basis,
        "labels": sel.labels,
        "rank_upper_bound": sel.rank_upper,
        "root_number": w,
        "rank_statement": statement,
        "local": sel.local,
    });
    r.evidence.push(evidence(
        format!("dim Sel = {} (exact)", sel.dimension),
        "selmer",
        "intersection of local pullbacks at 2, 1-z and the primes over m",
    ));
    r.evidence.push(evidence(format!("root number {w:+} (exact)"), "rootnumber", "root number of J_{m^2} by m mod 25"));
    if sel.dimension == 1 {
        r.evidence.push(evidence(
            "J(Q) torsion Z/5Z and Selmer dimension 1 give rank 0".into(),
            "selmer",
            "torsion class 2m spans the Selmer group",
        ));
    }
    Ok((r, true))
}

fn cmd_rootnumber(m: Option<i64>, a: Option<i64>) -> Outcome {
    let (a, w, via) = match (m, a) {
        (Some(m), _) => {
            let w = root_number_m2(m).map_err(|e| Failure::Usage(format!("{}; {e}", family_help(m))))?;
            (m * m, w, "m^2 specialization")
        }
        (None, Some(a)) => (a, root_number_general(a)?, "general formula"),
        (None, None) => return Err(Failure::Usage("give --m or --A".into())),
    };
    let inp = RootNumberInput::new(a)?;
    let mut r = Report::new("rootnumber", json!({ "m": m, "A": a }));
    r.results = json!({
        "root_number": w,
        "exact": true,
        "decomposition": inp,
        "via": via,
    });
    r.evidence.push(evidence(format!("w(J_{a}) = {w:+} (exact)"), "rootnumber", via));
    Ok((r, true))
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Failure::Usage(format!("cannot read '{s}' as a complex number"));
    if let Some(body) = t.strip_suffix('i') {
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
            .map(|(i, _)| i)
            .last();
        let (re, im) = match cut {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?))
    } else {
        Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0))
    }
}

fn cmd_lvalue(g: &Global, a: i64, s: &str, tolerance: f64, sign: bool) -> Outcome {
    let s = parse_complex(s)?;
    let opts = l_options(g)?;
    let params = lseries::params(a, &opts)?;
    let mut r = Report::new(
        "lvalue",
        json!({ "A": a, "s": [s.re, s.im], "cutoff": params.cutoff, "t0": g.t0, "nodes": g.nodes, "tolerance": tolerance }),
    );
    let coeffs = lseries::coefficients_for(&params, &opts)?;
    let v = lseries::l_from_params(&params, &coeffs, s)?;
    let minimum = LSeriesParams::minimum_cutoff(params.conductor);
    if params.cutoff < minimum {
        r.warnings.push(format!("cutoff {} is below the minimum {minimum} for N = {}", params.cutoff, params.conductor));
    }
    let ok = v.error <= tolerance;
    if !ok {
        r.warnings.push(format!("error estimate {:.3e} exceeds tolerance {tolerance:.1e}; raise --cutoff", v.error));
    }
    r.results = json!({
        "value": v.value,
        "error": v.error,
        "conductor": v.conductor,
        "root_number": v.root_number,
        "cutoff": v.cutoff,
    });
    r.evidence.push(evidence(
        format!("L({}) = {:.12} {:+.12}i ± {:.1e} (numerical)", fmt_s(s), v.value[0], v.value[1], v.error),
        "lseries",
        "smoothed functional-equation evaluation with Gamma(s)^2",
    ));
    r.evidence.push(evidence(
        format!("conductor N = {} (model), root number {:+} (exact)", v.conductor, v.root_number),
        "lseries",
        "conductor exponent at 1-z from q5(A)",
    ));
    if sign {
        let est = lseries::fe_sign_estimate(a, &opts)?;
        if est.sign != v.root_number {
            r.warnings.push(format!("functional equation prefers sign {:+}", est.sign));
        }
        r.evidence.push(evidence(
            format!("numerical sign {:+} (residuals {:.1e} / {:.1e})", est.sign, est.residual_plus, est.residual_minus),
            "lseries",
            "symmetry Lambda(s) = w Lambda(2 - s) off the centre",
        ));
        r.results["sign_estimate"] = json!(est);
    }
    Ok((r, ok))
}

fn fmt_s(s: Complex64) -> String {
    if s.im == 0.0 {
        format!("{}", s.re)
    } else {
        format!("{}{:+}i", s.re, s.im)
    }
}

fn cmd_bsd(g: &Global, m: i64, numeric: Numeric, parity: bool) -> Outcome {
    descent_config(g)?;
    let opts = BsdOptions {
        numeric: match numeric {
            Numeric::Auto => NumericMode::Auto,
            Numeric::Always => NumericMode::Always,
            Numeric::Never => NumericMode::Never,
        },
        parity_assumed: parity,
        l: l_options(g)?,
    };
    let v = lseries::bsd_rank_check(m, &opts).map_err(|e| match e {
        Error::Domain(msg) => Failure::Usage(format!("{}; {msg}", family_help(m))),
        e => e.into(),
    })?;
    let mut r = Report::new("bsd", json!({ "m": m, "numeric": format!("{numeric:?}").to_lowercase(), "parity": parity }));
    r.results = json!({
        "status": v.status,
        "selmer_dimension": v.selmer_dimension,
        "algebraic_rank_zero": v.algebraic_rank_zero,
        "root_number": v.root_number,
        "criterion": v.criterion,
        "l_value": v.l_value,
        "rank_statement": v.statement,
    });
    r.evidence = v.evidence;
    r.warnings = v.warnings;
    Ok((r, true))
}

fn parse_coeffs(s: &str) -> Result<CyclotomicNumber, Failure> {
    use num_rational::BigRational;
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Failure::Usage(format!("need four coordinates, got {}", parts.len())));
    }
    let mut c: Vec<BigRational> = Vec::with_capacity(4);
    for p in parts {
        let q: BigRational = p.parse().map_err(|_| Failure::Usage(format!("bad coordinate '{p}'")))?;
        c.push(q);
    }
    let c: [BigRational; 4] = c.try_into().expect("four parts");
    Ok(CyclotomicNumber::new(c))
}

fn cmd_localclass(coeffs: &str, at: u64, index: usize) -> Outcome {
    let x = parse_coeffs(coeffs)?;
    let primes = factor_rational_prime(at)?;
    let prime = primes
        .get(index)
        .ok_or_else(|| Failure::Usage(format!("there are {} primes above {at}", primes.len())))?;
    let class = if at == 5 { class_at_5(&x)? } else { class_at(&x, prime)? };
    let mut r = Report::new("localclass", json!({ "x": x.to_string(), "at": at, "index": index }));
    r.results = json!({
        "prime": prime.label(),
        "generator": prime.generator.to_string(),
        "class": class.to_string(),
        "exponents": class.exponents,
        "symbols": class.basis.symbols(),
        "exact": true,
    });
    r.evidence.push(evidence(
        format!("class of {x} at {} is {class} (exact)", prime.label()),
        "localization",
        if at == 5 { "pi-adic expansion at 1-z" } else { "residue-field reduction" },
    ));
    Ok((r, true))
}

fn cmd_factor(n: u64) -> Outcome {
    if n < 2 {
        return Err(Failure::Usage(format!("{n} has no prime factors")));
    }
    let mut rows = Vec::new();
    for (p, e) in arith::factorize(n) {
        for pr in factor_rational_prime(p)? {
            let exp = if pr.split_type == qdescent::cyclotomic::SplitType::Ramified { 4 * e } else { e };
            rows.push(json!({
                "p": p,
                "label": pr.label(),
                "split_type": pr.split_type,
                "generator": pr.generator.to_string(),
                "residue_degree": pr.residue_degree,
                "norm": pr.norm.to_string(),
                "exponent": exp,
            }));
        }
    }
    let mut r = Report::new("factor", json!({ "n": n }));
    r.results = json!({ "primes": rows, "exact": true });
    Ok((r, true))
}
