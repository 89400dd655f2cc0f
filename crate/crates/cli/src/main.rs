use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use suzuki_core::arith::{newton_count_sequence, rational_to_string};
use suzuki_core::covers::{cover_table, oesterle_note, DEFAULT_PRIME_CAP};
use suzuki_core::cyclotomic::{gauss_sum, minimal_poly_mp, scaled_mp, verify_mp_factorization, CycloElement};
use suzuki_core::field::legendre_i64;
use suzuki_core::suzuki::{
    aut_group_audit, brute_force_count, decomposition_count, jacobian_note, jacobian_order, l_polynomial,
    l_polynomial_ext, l_ratio_identity, mcguire_extend, period, point_count, serre_divisibility, verify_substitutions,
    AuditReport, CountReport,
};
use suzuki_core::{CurveParams, Error, IntPoly, DEFAULT_ORACLE_LIMIT};

#[derive(Parser)]
#[command(name = "gsuzuki", version, about = "Exact arithmetic on the curve Y^q - Y = X^q0 (X^q - X)")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Number of points over F_{q^n}
    Count(Common),
    /// L-polynomial over F_{q^n}, ascending coefficients
    Lpoly(Common),
    /// Order of the Jacobian over F_{q^n}
    Jacobian(Common),
    /// Maximality flag for n = 1..=n-max (or a single --n)
    Maximality(Common),
    /// Period of the normalized Weil numbers
    Period(Common),
    /// Unramified covers from the ratio L_{q^n}(1) / L_q(1)
    Covers(Common),
    /// Cross-check every counting route for n = 1..=n-max
    Verify(Common),
    /// Audit of the automorphism group and its action
    AutCheck(Common),
    /// Quadratic Gauss sum in Q(zeta_p)
    Gauss(Common),
    /// Minimal polynomial M_p
    Mp(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, default_value_t = 16)]
    max_degree: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_limit: u128,
    #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
    method: MethodArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Formula,
    Oracle,
    Mcguire,
    Decomposition,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_) | Error::Resource(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Verification(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Verification(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Verification(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit<T: Serialize>(format: Format, rows: &[T], single: bool) -> Outcome {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json if single && rows.len() == 1 => writeln!(out, "{}", serde_json::to_string(&rows[0])?)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(rows)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn strings(poly: &IntPoly) -> Vec<String> {
    poly.to_decimal_strings()
}

fn count_by(c: &CurveParams, n: usize, a: &Common) -> Result<CountReport, Error> {
    match a.method {
        MethodArg::Formula => point_count(c, n),
        MethodArg::Oracle => brute_force_count(c, n, a.oracle_limit),
        MethodArg::Decomposition => decomposition_count(c, n, a.oracle_limit),
        MethodArg::Mcguire => {
            let n1 = num_integer::gcd(n, period(c)?);
            let base = brute_force_count(c, n1, a.oracle_limit)?;
            mcguire_extend(c, &base, n)
        }
    }
}

fn require_n(a: &Common) -> Result<usize, Failure> {
    a.n.ok_or_else(|| Failure::Usage("--n is required for this verb".into()))
}

fn n_range(a: &Common, default_max: usize) -> Vec<usize> {
    match (a.n, a.n_max) {
        (Some(n), None) => vec![n],
        (_, Some(max)) => (1..=max).collect(),
        (None, None) => (1..=default_max).collect(),
    }
}

#[derive(Serialize)]
struct LpolyOut {
    p: u64,
    t: u32,
    n: usize,
    coefficients: Vec<String>,
}

#[derive(Serialize)]
struct LpolyRow {
    degree: usize,
    coefficient: String,
}

#[derive(Serialize)]
struct JacobianOut {
    p: u64,
    t: u32,
    n: usize,
    order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

#[derive(Serialize)]
struct PeriodOut {
    p: u64,
    t: u32,
    period: usize,
}

#[derive(Serialize)]
struct VerifyRow {
    n: usize,
    formula: String,
    oracle: Option<String>,
    decomposition: Option<String>,
    mcguire: Option<String>,
    newton: String,
    ok: bool,
}

#[derive(Serialize)]
struct GaussOut {
    p: u64,
    gauss_sum: CycloElement,
    square: String,
    ok: bool,
}

#[derive(Serialize)]
struct MpOut {
    p: u64,
    minimal_polynomial: Vec<String>,
    scaled: Vec<String>,
    factorization_ok: bool,
}

fn run(verb: &Verb) -> Outcome {
    let a = match verb {
        Verb::Count(a)
        | Verb::Lpoly(a)
        | Verb::Jacobian(a)
        | Verb::Maximality(a)
        | Verb::Period(a)
        | Verb::Covers(a)
        | Verb::Verify(a)
        | Verb::AutCheck(a)
        | Verb::Gauss(a)
        | Verb::Mp(a) => a,
    };
    let c = CurveParams::new(a.p, a.t)?;
    if a.n == Some(0) || a.n_max == Some(0) {
        return Err(Failure::Usage("extension degrees start at 1".into()));
    }
    match verb {
        Verb::Count(_) => emit(a.format, &[count_by(&c, require_n(a)?, a)?], true),
        Verb::Lpoly(_) => {
            let n = a.n.unwrap_or(1);
            let l = if n == 1 { l_polynomial(&c)? } else { l_polynomial_ext(&c, n)? };
            match a.format {
                Format::Json => emit(a.format, &[LpolyOut { p: c.p(), t: c.t(), n, coefficients: strings(&l) }], true),
                Format::Csv => {
                    let rows: Vec<LpolyRow> = strings(&l)
                        .into_iter()
                        .enumerate()
                        .map(|(degree, coefficient)| LpolyRow { degree, coefficient })
                        .collect();
                    emit(a.format, &rows, false)
                }
            }
        }
        Verb::Jacobian(_) => {
            let n = a.n.unwrap_or(1);
            let out = JacobianOut {
                p: c.p(),
                t: c.t(),
                n,
                order: jacobian_order(&c, n)?.to_string(),
                note: jacobian_note(&c, n),
            };
            if let Some(note) = out.note {
                eprintln!("note: {note}");
            }
            emit(a.format, &[out], true)
        }
        Verb::Maximality(_) => {
            let rows = n_range(a, 2 * period(&c)?)
                .into_iter()
                .map(|n| count_by(&c, n, a))
                .collect::<Result<Vec<_>, _>>()?;
            emit(a.format, &rows, a.n.is_some() && a.n_max.is_none())
        }
        Verb::Period(_) => emit(a.format, &[PeriodOut { p: c.p(), t: c.t(), period: period(&c)? }], true),
        Verb::Covers(_) => {
            let rows = cover_table(&c, a.n.unwrap_or(2), a.max_degree, DEFAULT_PRIME_CAP)?;
            for r in &rows {
                let known = r.genus.to_u64().zip(c.q().to_u64()).and_then(|(g, q)| oesterle_note(g, q));
                if let Some(cap) = known {
                    eprintln!(
                        "note: genus {} over F_{}: Oesterle bound {cap}, lower bound here {}",
                        r.genus,
                        c.q(),
                        r.point_bound
                    );
                }
            }
            emit(a.format, &rows, false)
        }
        Verb::Verify(_) => verify(&c, a),
        Verb::AutCheck(_) => {
            let report: AuditReport = aut_group_audit(&c, a.seed)?;
            emit(a.format, &[report], true)
        }
        Verb::Gauss(_) => {
            let g = gauss_sum(c.p())?;
            let sq = g.pow(2).to_rational();
            let want = BigInt::from(legendre_i64(-1, c.p()) as i64 * c.p() as i64);
            let ok = sq.as_ref().is_some_and(|r| r.is_integer() && *r.numer() == want);
            let out = GaussOut {
                p: c.p(),
                gauss_sum: g,
                square: sq.map_or_else(|| "irrational".into(), |r| rational_to_string(&r)),
                ok,
            };
            emit(a.format, &[out], true)?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Verification("G^2 differs from eta(-1) p".into()))
            }
        }
        Verb::Mp(_) => {
            let mp = minimal_poly_mp(c.p())?;
            let factorization_ok = verify_mp_factorization(c.p());
            let out = MpOut {
                p: c.p(),
                minimal_polynomial: mp.coeffs().iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect(),
                scaled: strings(&scaled_mp(c.p())?),
                factorization_ok,
            };
            emit(a.format, &[out], true)?;
            if factorization_ok {
                Ok(())
            } else {
                Err(Failure::Verification("M_p(T) M_p(-T) factorization failed".into()))
            }
        }
    }
}

fn verify(c: &CurveParams, a: &Common) -> Outcome {
    let n_max = a.n_max.or(a.n).unwrap_or(2 * c.p() as usize);
    let g = c.genus_usize()?;
    let l = l_polynomial(c)?;
    let newton = newton_count_sequence(&l, &c.q(), g, n_max)?;
    let s = period(c)?;
    let within = |n: usize| c.qn(n) <= BigInt::from(a.oracle_limit);
    let mut oracle: Vec<Option<CountReport>> = Vec::new();
    let mut rows = Vec::new();
    let mut all_ok = true;
    for n in 1..=n_max {
        let formula = point_count(c, n)?;
        let (brute, decomp) = if within(n) {
            (
                Some(brute_force_count(c, n, a.oracle_limit)?),
                Some(decomposition_count(c, n, a.oracle_limit)?),
            )
        } else {
            (None, None)
        };
        oracle.push(brute.clone());
        let n1 = num_integer::gcd(n, s);
        let mcguire = match &oracle[n1 - 1] {
            Some(base) => Some(mcguire_extend(c, base, n)?),
            None => None,
        };
        let agree = |r: &Option<CountReport>| r.as_ref().map_or(true, |r| r.count == formula.count);
        let ok = agree(&brute) && agree(&decomp) && agree(&mcguire) && newton[n - 1] == formula.count;
        all_ok &= ok;
        rows.push(VerifyRow {
            n,
            formula: formula.count.to_string(),
            oracle: brute.map(|r| r.count.to_string()),
            decomposition: decomp.map(|r| r.count.to_string()),
            mcguire: mcguire.map(|r| r.count.to_string()),
            newton: newton[n - 1].to_string(),
            ok,
        });
    }
    let extras = [
        ("substitutions", verify_substitutions(c, 16, a.seed)?),
        ("serre_divisibility", serre_divisibility(c)?),
        ("l_ratio", l_ratio_identity(c)?),
    ];
    emit(a.format, &rows, false)?;
    for (name, ok) in extras {
        eprintln!("{name}: {}", if ok { "ok" } else { "FAILED" });
        all_ok &= ok;
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Verification("cross-check mismatch".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.verb) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
