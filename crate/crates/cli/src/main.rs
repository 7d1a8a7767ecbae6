//! One batch-oriented binary exposing the sieve laboratory: admissibility
//! and narrow-tuple search, irreducible enumeration, the sieve demo with
//! empirical-versus-predicted sums, summation and equidistribution checks,
//! variational lower bounds, gap censuses, and quadratic-ring prime pairs.
//!
//! Exit codes: 0 success, 2 precondition or usage error, 3 budget
//! exhaustion, 1 internal error. Reports are single JSON documents with a
//! byte-stable layout (fixed key order, floats at 17 significant digits),
//! independent of the worker thread count.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sievelab_core::error::Error;
use sievelab_core::ffpoly::{self, Poly, PrimeField};
use sievelab_core::quadratic::{self, QuadField};
use sievelab_core::ring::{Element, RingDescriptor};
use sievelab_core::sieve::{
    brute_force_sums, ggpy_sum_check, measure_level_of_distribution, predicted_main_terms,
    GFunction, SieveParams, TestFunctionF, WeightSystem,
};
use sievelab_core::tuples::{find_narrow_tuple, is_admissible, Tuple};
use sievelab_core::variational::{mk_lower_bound, r_k};
use sievelab_core::{engelsma, gaps};

mod report;
use report::*;

const DEFAULT_BUDGET: u64 = 10_000_000;
const DEFAULT_TABLE_CAP: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "sievelab",
    version,
    about = "Sieve laboratory over Z, F_q[t], and real quadratic rings",
    propagate_version = true
)]
struct Cli {
    /// Worker threads (results are independent of this).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Enumeration budget in elements.
    #[arg(long, global = true, env = "SIEVELAB_BUDGET")]
    budget: Option<u64>,

    /// Seed for randomized harnesses (recorded, not yet consumed here).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format; censuses also support csv.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible-tuple operations.
    Tuples {
        #[command(subcommand)]
        cmd: TuplesCmd,
    },
    /// Monic irreducible polynomials over F_q.
    Irr {
        #[command(subcommand)]
        cmd: IrrCmd,
    },
    /// Builds the weight system, evaluates the weighted sums by brute
    /// force, and compares them with the asymptotic main terms.
    SieveDemo(SieveDemoArgs),
    /// Direct enumeration of the squarefree multiplicative sum against its
    /// predicted main term (the kappa = 1 case).
    GgpyCheck(GgpyArgs),
    /// Measures worst-class prime-count errors over F_q[t] moduli and
    /// normalizes them by the pointwise square-root bound.
    LodMeasure(LodArgs),
    /// Lower-bounds the variational constant M_k on a symmetric polynomial
    /// basis and reports the guaranteed prime counts ceil(theta M_k / 2).
    Mk(MkArgs),
    /// Gap censuses between monic irreducibles, the unit twist, the
    /// degree-constrained tuple assertion, and the proportion bound.
    FfGaps {
        #[command(subcommand)]
        cmd: FfGapsCmd,
    },
    /// Prime elements and bounded-gap prime pairs in real quadratic rings.
    Nf {
        #[command(subcommand)]
        cmd: NfCmd,
    },
}

#[derive(Subcommand)]
enum TuplesCmd {
    /// Checks admissibility, reporting the witness prime on failure.
    Check {
        /// Inline "0,2,6" (integers), "c0,c1;c0,c1" (polynomials,
        /// ascending coefficients), or @file.json.
        tuple: String,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Greedy search for an admissible k-tuple of small diameter.
    Find {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Lifts an integer-admissible tuple into a quadratic ring and re-runs
    /// the check at the prime-ideal level.
    Lift {
        tuple: String,
        /// Field selector, e.g. sqrt:2.
        #[arg(long)]
        field: String,
    },
    /// Verifies the shipped record 105-tuple data file.
    VerifyEngelsma {
        #[arg(long, default_value = "data/engelsma_105.json")]
        path: String,
    },
}

#[derive(Subcommand)]
enum IrrCmd {
    /// Exact count of monic irreducibles of degree n.
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
    },
    /// Lists monic polynomials of degree n in enumeration order;
    /// irreducibles only unless --all is given.
    List {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        /// List every monic polynomial, not only the irreducible ones.
        #[arg(long)]
        all: bool,
    },
    /// Tests one polynomial for irreducibility.
    Test {
        /// Ascending coefficients, e.g. "1,0,1" for t^2 + 1.
        poly: String,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args)]
struct SieveDemoArgs {
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Admissible tuple, same syntax as `tuples check`.
    #[arg(long, default_value = "0,2")]
    tuple: String,
    /// Box size: interval length over Z, q^n over F_q[t].
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 5)]
    d0: u64,
    /// Direct override for the support bound R (otherwise derived from
    /// theta and delta).
    #[arg(long)]
    r_bound: Option<f64>,
    /// Exponent of the power test function (1 - x_1 - ... - x_k)^a.
    #[arg(long, default_value_t = 1)]
    f_power: u32,
    /// Weight-table entry cap.
    #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
    table_cap: u64,
}

#[derive(Args)]
struct GgpyArgs {
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long)]
    z: u64,
    /// Weight function: one, x, or one-minus-x.
    #[arg(long, default_value = "one")]
    g: String,
}

#[derive(Args)]
struct LodArgs {
    #[arg(long)]
    q: u64,
    /// Degree of the primes counted.
    #[arg(long)]
    n: u32,
    /// Moduli of degree 1..=max-degree are measured.
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
}

#[derive(Args)]
struct MkArgs {
    #[arg(long)]
    k: usize,
    /// Basis degree bound; defaults to 7 for k <= 20 and 11 above.
    #[arg(long)]
    degree: Option<u32>,
}

#[derive(Subcommand)]
enum FfGapsCmd {
    /// Ordered-pair census of degree-d differences between monic
    /// irreducibles of degree n.
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// The census restricted to monomial gaps, with twist applicability.
    Monomials {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Converts one monomial gap into another by the unit substitution
    /// f(t) -> f(wt)/w^n.
    Twist {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long, default_value_t = 1)]
        target_a: u64,
    },
    /// Brute-force check of the degree-constrained two-irreducibles
    /// assertion for all admissible tuples, modulo translation.
    Zcheck {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    /// The guaranteed proportion 1/(k0-1) - 1/(q-1) of degree-d gaps.
    Bound {
        #[arg(long, default_value_t = 105)]
        k0: u64,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand)]
enum NfCmd {
    /// All bounded-embedding-gap pairs of prime elements in a box, up to a
    /// cap, grouped by the later element.
    Pairs {
        /// Field selector, e.g. sqrt:2.
        #[arg(long)]
        field: String,
        /// Embedding bound for the difference.
        #[arg(long, default_value_t = 600)]
        bound: i64,
        /// Box bound: elements with both embeddings in (0, box].
        #[arg(long = "box", default_value_t = 1000)]
        box_size: i64,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Tests whether an element generates a prime ideal.
    PrimeTest {
        /// Coordinates "x,y" over the integral basis.
        element: String,
        #[arg(long)]
        field: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1);
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match run(cli.command, cli.format, threads, budget) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Precondition(_)
                | Error::Parse(_)
                | Error::FieldMismatch { .. }
                | Error::ZeroModulus
                | Error::Unsupported(_)
                | Error::SingularBasis(_) => 2,
                Error::BudgetExceeded(_) => 3,
                Error::Io(_) => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command, format: Format, threads: usize, budget: u64) -> Result<(), Error> {
    match command {
        Command::Tuples { cmd } => run_tuples(cmd, threads, budget),
        Command::Irr { cmd } => run_irr(cmd, budget),
        Command::SieveDemo(args) => run_sieve_demo(args, threads, budget),
        Command::GgpyCheck(args) => run_ggpy(args, budget),
        Command::LodMeasure(args) => run_lod(args, threads, budget),
        Command::Mk(args) => run_mk(args),
        Command::FfGaps { cmd } => run_ffgaps(cmd, format, threads, budget),
        Command::Nf { cmd } => run_nf(cmd, budget),
    }
}

fn parse_ring(s: &str) -> Result<RingDescriptor, Error> {
    RingDescriptor::parse(s)
}

fn parse_field(s: &str) -> Result<QuadField, Error> {
    let d = s
        .strip_prefix("sqrt:")
        .and_then(|rest| rest.parse::<u32>().ok())
        .ok_or_else(|| Error::Parse(format!("bad field selector {s:?}; expected sqrt:<d>")))?;
    QuadField::new(d)
}

fn parse_tuple(ring: RingDescriptor, text: &str) -> Result<Tuple, Error> {
    let inline = if let Some(path) = text.strip_prefix('@') {
        let body = std::fs::read_to_string(path)?;
        return parse_tuple_json(ring, &body);
    } else {
        text
    };
    match ring {
        RingDescriptor::Integers => {
            let values = inline
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad integer {p:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Tuple::from_integers(values)
        }
        RingDescriptor::PolyRing(field) => {
            let polys = inline
                .split(';')
                .map(|part| Poly::parse(field, part))
                .collect::<Result<Vec<_>, _>>()?;
            Tuple::from_polys(polys)
        }
        RingDescriptor::RealQuadratic(_) => Err(Error::Unsupported(
            "tuple input over a quadratic ring; use an integer tuple and `tuples lift`".into(),
        )),
    }
}

fn parse_tuple_json(ring: RingDescriptor, body: &str) -> Result<Tuple, Error> {
    match ring {
        RingDescriptor::Integers => {
            let values: Vec<i64> = serde_json::from_str(body)
                .map_err(|e| Error::Parse(format!("tuple file: {e}")))?;
            Tuple::from_integers(values)
        }
        RingDescriptor::PolyRing(field) => {
            let arrays: Vec<Vec<u64>> = serde_json::from_str(body)
                .map_err(|e| Error::Parse(format!("tuple file: {e}")))?;
            Tuple::from_polys(arrays.into_iter().map(|c| Poly::new(field, c)).collect())
        }
        RingDescriptor::RealQuadratic(_) => Err(Error::Unsupported(
            "tuple files over a quadratic ring".into(),
        )),
    }
}

fn element_strings(tuple: &Tuple) -> Vec<String> {
    tuple.elements().iter().map(|e| e.to_string()).collect()
}

fn run_tuples(cmd: TuplesCmd, threads: usize, budget: u64) -> Result<(), Error> {
    match cmd {
        TuplesCmd::Check { tuple, ring } => {
            let ring = parse_ring(&ring)?;
            let tuple = parse_tuple(ring, &tuple)?;
            let report = is_admissible(&tuple)?;
            emit_json(&CheckReport {
                command: "tuples-check",
                ring: ring.to_string(),
                k: tuple.k(),
                elements: element_strings(&tuple),
                admissible: report.admissible,
                witness: report.witness.map(|w| WitnessJson {
                    prime: w.prime.to_string(),
                    covered: w.covered,
                }),
                primes_checked: report
                    .primes_checked
                    .iter()
                    .map(|p| p.to_string())
                    .collect(),
            })?;
        }
        TuplesCmd::Find { k, ring } => {
            let ring = parse_ring(&ring)?;
            let tuple = find_narrow_tuple(ring, k, budget, threads)?;
            let (diameter, max_degree) = match ring {
                RingDescriptor::Integers => (Some(tuple.diameter()?), None),
                _ => {
                    let max_deg = tuple
                        .elements()
                        .iter()
                        .map(|e| match e {
                            Element::Poly(p) => p.degree().map_or(0, |d| d as u64),
                            _ => 0,
                        })
                        .max();
                    (None, max_deg)
                }
            };
            emit_json(&FindReport {
                command: "tuples-find",
                ring: ring.to_string(),
                k,
                elements: element_strings(&tuple),
                diameter,
                max_degree,
            })?;
        }
        TuplesCmd::Lift { tuple, field } => {
            let quad = parse_field(&field)?;
            let base = parse_tuple(RingDescriptor::Integers, &tuple)?;
            let report = sievelab_core::tuples::lift_admissible_check(&base, quad)?;
            emit_json(&CheckReport {
                command: "tuples-lift",
                ring: RingDescriptor::RealQuadratic(quad).to_string(),
                k: base.k(),
                elements: element_strings(&base),
                admissible: report.admissible,
                witness: report.witness.map(|w| WitnessJson {
                    prime: w.prime.to_string(),
                    covered: w.covered,
                }),
                primes_checked: report
                    .primes_checked
                    .iter()
                    .map(|p| p.to_string())
                    .collect(),
            })?;
        }
        TuplesCmd::VerifyEngelsma { path } => {
            let p = std::path::Path::new(&path);
            if !p.exists() {
                emit_json(&EngelsmaReport {
                    command: "tuples-verify-engelsma",
                    path,
                    status: "data-missing".into(),
                    k: None,
                    diameter: None,
                })?;
                return Ok(());
            }
            let record = engelsma::load_and_verify(p)?;
            emit_json(&EngelsmaReport {
                command: "tuples-verify-engelsma",
                path,
                status: "verified".into(),
                k: Some(record.elements.len()),
                diameter: Some(record.diameter),
            })?;
        }
    }
    Ok(())
}

fn run_irr(cmd: IrrCmd, budget: u64) -> Result<(), Error> {
    match cmd {
        IrrCmd::Count { q, n } => {
            PrimeField::new(q)?;
            let count = ffpoly::count_irreducibles(q, n)?;
            emit_json(&IrrCountReport { command: "irr-count", q, n, count })?;
        }
        IrrCmd::List { q, n, all } => {
            let polys: Vec<String> = if all {
                ffpoly::enumerate_monic(q, n, budget)?
                    .map(|p| p.to_string())
                    .collect()
            } else {
                ffpoly::enumerate_irreducibles(q, n, budget)?
                    .iter()
                    .map(|p| p.to_string())
                    .collect()
            };
            emit_json(&IrrListReport {
                command: "irr-list",
                q,
                n,
                irreducible_only: !all,
                count: polys.len() as u64,
                polys,
            })?;
        }
        IrrCmd::Test { poly, q } => {
            let field = PrimeField::new(q)?;
            let p = Poly::parse(field, &poly)?;
            let irreducible = ffpoly::is_irreducible(&p)?;
            emit_json(&IrrTestReport {
                command: "irr-test",
                q,
                poly: p.to_string(),
                irreducible,
            })?;
        }
    }
    Ok(())
}

fn run_sieve_demo(args: SieveDemoArgs, threads: usize, budget: u64) -> Result<(), Error> {
    let ring = parse_ring(&args.ring)?;
    let tuple = parse_tuple(ring, &args.tuple)?;
    let k = tuple.k();
    let params = SieveParams::new(
        ring,
        tuple,
        args.n,
        args.theta,
        args.delta,
        args.d0,
        args.r_bound,
    )?;
    let f = TestFunctionF::power(k, args.f_power)?;
    let ws = WeightSystem::from_test_function(params.clone(), &f, args.table_cap)?;
    let (s1, s2) = brute_force_sums(&ws, budget, threads)?;
    let (p1, p2) = predicted_main_terms(&params, &f)?;
    emit_json(&SieveDemoReport {
        command: "sieve-demo",
        ring: ring.to_string(),
        k,
        tuple: element_strings(&params.tuple),
        n: args.n,
        theta: args.theta,
        delta: args.delta,
        d0: args.d0,
        r: params.r_bound,
        w: params.w.to_string(),
        v0: params.v0.to_string(),
        f_power: args.f_power,
        table_entries: ws.support.len(),
        s1_emp: s1,
        s1_pred: p1,
        s2_emp: s2,
        s2_pred: p2,
        ratio_s1: s1 / p1,
        ratio_s2: s2 / p2,
        y_max: ws.y_max,
        lambda_max: ws.lambda_max,
        roundtrip_max_rel_err: ws.roundtrip_error(),
    })?;
    Ok(())
}

fn run_ggpy(args: GgpyArgs, budget: u64) -> Result<(), Error> {
    let ring = parse_ring(&args.ring)?;
    let g = GFunction::parse(&args.g)?;
    let summary = ggpy_sum_check(ring, g, args.z, budget)?;
    emit_json(&GgpyReport {
        command: "ggpy-check",
        ring: ring.to_string(),
        z: args.z,
        g: g.name().to_string(),
        lhs: summary.lhs,
        rhs: summary.rhs,
        ratio: summary.ratio,
        singular_series: summary.singular_series,
    })?;
    Ok(())
}

fn run_lod(args: LodArgs, threads: usize, budget: u64) -> Result<(), Error> {
    let report = measure_level_of_distribution(args.q, args.n, args.max_degree, budget, threads)?;
    emit_json(&LodMeasureReport {
        command: "lod-measure",
        q: args.q,
        n: args.n,
        max_degree: args.max_degree,
        prime_count: report.prime_count,
        max_normalized: report.max_normalized,
        worst_modulus: report.worst_modulus.clone(),
        rows: report
            .rows
            .iter()
            .map(|r| LodRowJson {
                modulus: r.modulus.clone(),
                norm: r.norm,
                phi: r.phi,
                max_abs_error: r.max_abs_error,
                normalized: r.normalized,
            })
            .collect(),
    })?;
    Ok(())
}

fn run_mk(args: MkArgs) -> Result<(), Error> {
    let degree = args.degree.unwrap_or(if args.k <= 20 { 7 } else { 11 });
    let result = mk_lower_bound(args.k, degree)?;
    // level-of-distribution presets: 1/2 for the totally real and
    // polynomial settings, 1/(r2 + 5/2) with r2 complex pairs otherwise
    let mut rk = BTreeMap::new();
    rk.insert("theta=1/2".to_string(), r_k(0.5, result.lower_bound)?);
    for r2 in 0u32..=3 {
        let theta = 1.0 / (r2 as f64 + 2.5);
        rk.insert(
            format!("theta=1/(r2+5/2),r2={r2}"),
            r_k(theta, result.lower_bound)?,
        );
    }
    emit_json(&MkReport {
        command: "mk",
        k: result.k,
        degree_bound: result.degree_bound,
        basis_size: result.basis_size,
        lower_bound: result.lower_bound,
        residual: result.residual,
        rk,
    })?;
    Ok(())
}

fn run_ffgaps(cmd: FfGapsCmd, format: Format, threads: usize, budget: u64) -> Result<(), Error> {
    match cmd {
        FfGapsCmd::Census { q, n, d } => {
            let census = gaps::gap_census(q, n, d, budget, threads)?;
            let mut entries: Vec<(Poly, u64)> = census.occurrences.clone().into_iter().collect();
            entries.sort();
            if format == Format::Csv {
                emit_census_csv(&entries)?;
                return Ok(());
            }
            emit_json(&CensusReport {
                command: "ff-gaps-census",
                q,
                n,
                d,
                total_of_degree: census.total_of_degree,
                occurring: census.occurring,
                proportion: format!("{}/{}", census.occurring, census.total_of_degree),
                gaps: entries
                    .into_iter()
                    .map(|(gap, count)| GapEntry { gap: gap.to_string(), count })
                    .collect(),
            })?;
        }
        FfGapsCmd::Monomials { q, n, d } => {
            let mc = gaps::monomial_census(q, n, d, budget, threads)?;
            let mut entries: Vec<(u64, u64)> = mc
                .census
                .occurrences
                .iter()
                .map(|(g, &c)| (g.leading(), c))
                .collect();
            entries.sort();
            emit_json(&MonomialReport {
                command: "ff-gaps-monomials",
                q,
                n,
                d,
                gcd_coprime: mc.gcd_coprime,
                all_occur: mc.all_occur,
                occurring: mc.census.occurring,
                monomials: entries
                    .into_iter()
                    .map(|(leading, count)| MonomialEntry { leading, count })
                    .collect(),
            })?;
        }
        FfGapsCmd::Twist { q, f1, f2, target_a } => {
            let field = PrimeField::new(q)?;
            let p1 = Poly::parse(field, &f1)?;
            let p2 = Poly::parse(field, &f2)?;
            let (g1, g2, omega) = gaps::twist_gap(&p1, &p2, target_a)?;
            let gap = g1.sub(&g2)?;
            emit_json(&TwistReport {
                command: "ff-gaps-twist",
                q,
                f1: p1.to_string(),
                f2: p2.to_string(),
                target_leading: target_a,
                omega,
                g1: g1.to_string(),
                g2: g2.to_string(),
                gap: gap.to_string(),
            })?;
        }
        FfGapsCmd::Zcheck { q, k, d, n } => {
            let result = gaps::check_z(q, k, d, n, budget, threads)?;
            emit_json(&ZcheckReport {
                command: "ff-gaps-zcheck",
                q,
                k,
                d,
                n,
                holds: result.holds,
                tuples_examined: result.tuples_examined,
                counterexample: result
                    .counterexample
                    .map(|ce| ce.iter().map(|p| p.to_string()).collect()),
            })?;
        }
        FfGapsCmd::Bound { k0, q } => {
            let bound = gaps::proportion_bound(k0, q)?;
            emit_json(&BoundReport {
                command: "ff-gaps-bound",
                k0,
                q,
                numerator: *bound.numer(),
                denominator: *bound.denom(),
                value: *bound.numer() as f64 / *bound.denom() as f64,
            })?;
        }
    }
    Ok(())
}

fn emit_census_csv(entries: &[(Poly, u64)]) -> Result<(), Error> {
    let mut writer = csv::Writer::from_writer(std::io::stdout());
    writer
        .write_record(["gap_poly", "count"])
        .map_err(|e| Error::Parse(e.to_string()))?;
    for (gap, count) in entries {
        writer
            .write_record([gap.to_string(), count.to_string()])
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    writer.flush()?;
    Ok(())
}

fn run_nf(cmd: NfCmd, budget: u64) -> Result<(), Error> {
    match cmd {
        NfCmd::Pairs { field, bound, box_size, cap } => {
            let quad = parse_field(&field)?;
            let (pairs, truncated) =
                quadratic::prime_pair_search(quad, bound, box_size, cap, budget)?;
            emit_json(&NfPairsReport {
                command: "nf-pairs",
                field: field.clone(),
                bound,
                box_size,
                cap,
                count: pairs.len(),
                truncated,
                pairs: pairs
                    .iter()
                    .map(|p| PairJson {
                        first: [p.first.x, p.first.y],
                        second: [p.second.x, p.second.y],
                        norm_first: p.first.norm(),
                        norm_second: p.second.norm(),
                    })
                    .collect(),
            })?;
        }
        NfCmd::PrimeTest { element, field } => {
            let quad = parse_field(&field)?;
            let coords: Vec<i64> = element
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coordinate {p:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if coords.len() != 2 {
                return Err(Error::Parse("element needs two coordinates x,y".into()));
            }
            let a = quad.element(coords[0], coords[1]);
            let prime = quadratic::is_prime_element(&a)?;
            emit_json(&NfPrimeTestReport {
                command: "nf-prime-test",
                field,
                element: [a.x, a.y],
                norm: a.norm(),
                prime,
            })?;
        }
    }
    Ok(())
}
