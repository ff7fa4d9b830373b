//! Command-line front end: JSON payloads in, canonical JSON out.
//!
//! Exit codes: `0` on success, `1` for domain errors (reported as
//! `{"error":{"kind":…,"detail":…}}` on stdout), `2` for usage errors and malformed input.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dynamical::{spectral_euler, ToralMap};
use crate::endo::{delta, phi_mu, EndoObject};
use crate::equivariant::identity_checks;
use crate::error::Error;
use crate::json::*;
use crate::qz::PrimeSet;
use crate::torified::bb_assemble;
use crate::zeta::{
    assembled_quotient_symbolic, f1_ghost_generating, f1_zeta, hw_quotient_check, hw_zeta, q_to_1_limit,
    HwValue, QParam,
};

pub const DEFAULT_TRUNC: usize = 12;
pub const TRUNC_ENV: &str = "BCWITT_TRUNC";

#[derive(Parser, Debug)]
#[command(name = "bcwitt", version, about = "Exact Bost–Connes, Witt vector and zeta function arithmetic")]
struct Cli {
    /// Read missing payloads from this JSON file
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Truncation for series output (default 12, or $BCWITT_TRUNC)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..100_000))]
    trunc: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The group ring Z[Q/Z]
    Qz {
        #[command(subcommand)]
        op: QzCmd,
    },
    /// Big Witt vectors
    Witt {
        #[command(subcommand)]
        op: WittCmd,
    },
    /// Torified classes
    Class {
        #[command(subcommand)]
        op: ClassCmd,
    },
    /// F₁, Hasse–Weil and dynamical zeta functions
    Zeta {
        #[command(subcommand)]
        op: ZetaCmd,
    },
    /// Endomorphism category
    Endo {
        #[command(subcommand)]
        op: EndoCmd,
    },
    /// Finite sets with cyclic actions
    Equivariant {
        #[command(subcommand)]
        op: EquivCmd,
    },
    /// Euler characteristics
    Euler {
        #[command(subcommand)]
        op: EulerCmd,
    },
}

#[derive(Args, Debug)]
struct NArg {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..1_000_000))]
    n: u64,
}

#[derive(Subcommand, Debug)]
enum QzCmd {
    /// e(r) ↦ e(nr)
    Sigma {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        elem: Option<String>,
    },
    /// e(r) ↦ Σ e((r+j)/n)
    Rho {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        elem: Option<String>,
    },
    /// Convolution product
    Mul {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Decompose along a finite set of primes
    Split {
        /// Comma-separated primes
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        elem: Option<String>,
    },
    /// Inverse of split
    Unsplit {
        #[arg(long)]
        split: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum WittCmd {
    Add {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    Mul {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    Frobenius {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        w: Option<String>,
    },
    Verschiebung {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        w: Option<String>,
    },
    /// Ghost components
    Ghost {
        #[arg(long)]
        w: Option<String>,
    },
    /// Witt vector with the given ghost components
    Unghost {
        #[arg(long)]
        ghost: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Basis {
    T,
    L,
}

#[derive(Subcommand, Debug)]
enum ClassCmd {
    /// Change between the T = L - 1 and L bases
    Convert {
        #[arg(long)]
        class: Option<String>,
        /// Target basis; defaults to the other one
        #[arg(long, value_enum, ignore_case = true)]
        to: Option<Basis>,
    },
    /// Number of F₁ᵐ-points
    Points {
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Euler characteristic
    Euler {
        #[arg(long)]
        class: Option<String>,
    },
    /// Assemble from cells: [{"class":…,"dim":d},…]
    Bb {
        #[arg(long)]
        parts: Option<String>,
    },
    /// Virtual motive L^{-n/2}·[X]
    Virtual {
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        n: u64,
    },
    /// σ_n on a leveled class
    Sigma {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        leveled: Option<String>,
    },
    /// ρ̃_n on a leveled class
    Rho {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        leveled: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ZetaCmd {
    /// F₁-zeta function
    F1 {
        #[arg(long)]
        class: Option<String>,
    },
    /// Hasse–Weil zeta function over F_q, or symbolically in q
    Hw {
        #[arg(long)]
        class: Option<String>,
        /// An integer q ≥ 2 or "sym"
        #[arg(long)]
        q: String,
    },
    /// Lefschetz zeta function of a toral map
    Lefschetz {
        #[arg(long)]
        matrix: Option<String>,
        /// Cyclotomic closed form (default)
        #[arg(long, conflicts_with = "series")]
        closed: bool,
        /// Truncated series
        #[arg(long)]
        series: bool,
    },
    /// Artin–Mazur zeta function of a toral map
    ArtinMazur {
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Witt quotient of the torus zeta function by Z_0, checked against Z_1
    QuotientCheck {
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        q: u64,
    },
    /// q → 1 limit of the assembled Witt quotients
    QLimit {
        #[arg(long)]
        class: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum EndoCmd {
    /// det(1 - tM)⁻¹
    Lmap {
        #[arg(long)]
        matrix: Option<String>,
    },
    Frobenius {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        matrix: Option<String>,
    },
    Verschiebung {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Class of a graded pair {"plus":…,"minus":…}
    Delta {
        #[arg(long)]
        graded: Option<String>,
    },
    /// Graded pair realising a split rational Witt vector
    Phimu {
        #[arg(long)]
        witt: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum EquivCmd {
    /// Precompose with σ_n (action or relative object)
    Sigma {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        action: Option<String>,
    },
    /// Geometric Verschiebung Φ_n (action or relative object)
    Rho {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        action: Option<String>,
    },
    /// Points fixed by g^k
    Periodic {
        #[arg(long)]
        action: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Z[Q/Z]-valued Euler characteristic
    Euler {
        #[arg(long)]
        action: Option<String>,
    },
    /// Cycle type, or relative orbit type
    OrbitType {
        #[arg(long)]
        action: Option<String>,
    },
    /// Periodic-point and intertwining identities for all n ≤ N, k ≤ K
    Check {
        #[arg(long)]
        action: Option<String>,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
}

#[derive(Subcommand, Debug)]
enum EulerCmd {
    /// Spectral Euler characteristic of a quasi-unipotent integer matrix
    Spectral {
        #[arg(long)]
        matrix: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Fail {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Domain(e)
    }
}

type CmdResult = std::result::Result<Value, Fail>;

struct Ctx {
    input: Option<Value>,
    trunc: usize,
}

impl Ctx {
    /// The inline flag value, else the `--input` document (or its `key` field when `multi`).
    fn payload(&self, flag: &Option<String>, key: &str, multi: bool) -> std::result::Result<Value, Fail> {
        if let Some(text) = flag {
            return Ok(parse(text)?);
        }
        match &self.input {
            Some(doc) if multi => {
                doc.get(key).cloned().ok_or_else(|| Fail::Usage(format!("--input has no {key:?} field")))
            }
            Some(doc) => Ok(doc.clone()),
            None => Err(Fail::Usage(format!("missing --{key} (or --input)"))),
        }
    }

    fn one(&self, flag: &Option<String>, key: &str) -> std::result::Result<Value, Fail> {
        self.payload(flag, key, false)
    }

    fn two(&self, a: &Option<String>, b: &Option<String>) -> std::result::Result<(Value, Value), Fail> {
        Ok((self.payload(a, "a", true)?, self.payload(b, "b", true)?))
    }
}

/// Parses `argv` (including the program name), runs the command and renders its output.
pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli) {
        Ok(v) => Output { code: 0, stdout: render(&v), stderr: String::new() },
        Err(Fail::Usage(msg)) => Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Fail::Domain(e)) => {
            let code = if matches!(e, Error::InvalidInput(_)) { 2 } else { 1 };
            Output { code, stdout: render(&error_to_json(&e)), stderr: String::new() }
        }
    }
}

fn default_trunc() -> std::result::Result<usize, Fail> {
    match std::env::var(TRUNC_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|t| (1..100_000).contains(t))
            .ok_or_else(|| Fail::Usage(format!("{TRUNC_ENV} must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_TRUNC),
    }
}

fn dispatch(cli: Cli) -> CmdResult {
    let trunc = match cli.trunc {
        Some(t) => t as usize,
        None => default_trunc()?,
    };
    let input = match &cli.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))?;
            Some(parse(&text)?)
        }
        None => None,
    };
    let ctx = Ctx { input, trunc };
    match cli.cmd {
        Cmd::Qz { op } => qz(&ctx, op),
        Cmd::Witt { op } => witt(&ctx, op),
        Cmd::Class { op } => class(&ctx, op),
        Cmd::Zeta { op } => zeta(&ctx, op),
        Cmd::Endo { op } => endo(&ctx, op),
        Cmd::Equivariant { op } => equivariant(&ctx, op),
        Cmd::Euler { op } => euler(&ctx, op),
    }
}

fn qz(ctx: &Ctx, op: QzCmd) -> CmdResult {
    Ok(match op {
        QzCmd::Sigma { n, elem } => qz_to_json(&qz_from_json(&ctx.one(&elem, "elem")?)?.sigma(n.n)),
        QzCmd::Rho { n, elem } => qz_to_json(&qz_from_json(&ctx.one(&elem, "elem")?)?.rho(n.n)),
        QzCmd::Mul { a, b } => {
            let (a, b) = ctx.two(&a, &b)?;
            qz_to_json(&qz_from_json(&a)?.mul(&qz_from_json(&b)?))
        }
        QzCmd::Split { primes, elem } => {
            let primes = PrimeSet::new(primes)?;
            let x = qz_from_json(&ctx.one(&elem, "elem")?)?;
            split_to_json(&primes, &x.split(&primes))
        }
        QzCmd::Unsplit { split } => qz_to_json(&split_from_json(&ctx.one(&split, "split")?)?.1.unsplit()),
    })
}

fn witt(ctx: &Ctx, op: WittCmd) -> CmdResult {
    let t = ctx.trunc;
    Ok(match op {
        WittCmd::Add { a, b } => {
            let (a, b) = ctx.two(&a, &b)?;
            match (witt_from_json(&a)?, witt_from_json(&b)?) {
                (WittValue::Rational(x), WittValue::Rational(y)) => rational_witt_to_json(&x.add(&y)),
                (x, y) => witt_to_json(&x.to_series(t).add(&y.to_series(t))),
            }
        }
        WittCmd::Mul { a, b } => {
            let (a, b) = ctx.two(&a, &b)?;
            witt_to_json(&witt_from_json(&a)?.to_series(t).mul(&witt_from_json(&b)?.to_series(t)))
        }
        WittCmd::Frobenius { n, w } => {
            let w = witt_from_json(&ctx.one(&w, "w")?)?.to_series(t);
            witt_to_json(&w.frobenius(n.n as usize)?)
        }
        WittCmd::Verschiebung { n, w } => match witt_from_json(&ctx.one(&w, "w")?)? {
            WittValue::Rational(r) => rational_witt_to_json(&r.verschiebung(n.n as usize)),
            WittValue::Series(s) => witt_to_json(&s.verschiebung(n.n as usize)),
        },
        WittCmd::Ghost { w } => ghost_to_json(&witt_from_json(&ctx.one(&w, "w")?)?.to_series(t).ghost()),
        WittCmd::Unghost { ghost } => witt_to_json(&ghost_from_json(&ctx.one(&ghost, "ghost")?)?.unghost()),
    })
}

fn class(ctx: &Ctx, op: ClassCmd) -> CmdResult {
    Ok(match op {
        ClassCmd::Convert { class, to } => {
            let c = class_from_json(&ctx.one(&class, "class")?)?;
            let to = to.unwrap_or(match c {
                ClassValue::T(_) => Basis::L,
                ClassValue::L(_) => Basis::T,
            });
            match to {
                Basis::T => t_class_to_json(&c.to_t()?),
                Basis::L => l_class_to_json(&c.to_l()),
            }
        }
        ClassCmd::Points { class, m } => {
            count_to_json(&class_from_json(&ctx.one(&class, "class")?)?.to_t()?.f1m_points(m))
        }
        ClassCmd::Euler { class } => {
            let chi = class_from_json(&ctx.one(&class, "class")?)?.to_t()?.euler_characteristic();
            json!({ "euler": chi.to_string() })
        }
        ClassCmd::Bb { parts } => {
            let parts = ctx.one(&parts, "parts")?;
            let list = parts.as_array().ok_or_else(|| Error::invalid("parts must be an array"))?;
            let pieces = list
                .iter()
                .map(|p| {
                    let c = class_from_json(p.get("class").ok_or_else(|| Error::invalid("part needs \"class\""))?)?
                        .to_t()?;
                    let d = p
                        .get("dim")
                        .and_then(Value::as_u64)
                        .and_then(|d| u32::try_from(d).ok())
                        .ok_or_else(|| Error::invalid("part needs a nonnegative \"dim\""))?;
                    Ok((c, d))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            t_class_to_json(&bb_assemble(&pieces))
        }
        ClassCmd::Virtual { class, n } => {
            l_class_to_json(&class_from_json(&ctx.one(&class, "class")?)?.to_l().virtual_motive(n)?)
        }
        ClassCmd::Sigma { n, leveled } => leveled_to_json(&leveled_from_json(&ctx.one(&leveled, "leveled")?)?.bc_sigma(n.n)),
        ClassCmd::Rho { n, leveled } => leveled_to_json(&leveled_from_json(&ctx.one(&leveled, "leveled")?)?.bc_rho(n.n)),
    })
}

fn toral(v: &Value) -> crate::Result<ToralMap> {
    ToralMap::new(matrix_from_json(v)?)
}

fn zeta(ctx: &Ctx, op: ZetaCmd) -> CmdResult {
    let t = ctx.trunc;
    Ok(match op {
        ZetaCmd::F1 { class } => {
            let c = class_from_json(&ctx.one(&class, "class")?)?.to_t()?;
            let z = f1_zeta(&c, t);
            let g = f1_ghost_generating(&c);
            json!({
                "ghost": ghost_to_json(&z.ghost)["ghost"],
                "series": witt_to_json(&z.witt)["coeffs"],
                "rational": {
                    "num": g.num.coeffs().iter().map(int_value).collect::<Vec<_>>(),
                    "den": g.den.coeffs().iter().map(int_value).collect::<Vec<_>>(),
                },
                "trunc": t,
            })
        }
        ZetaCmd::Hw { class, q } => {
            let c = class_from_json(&ctx.one(&class, "class")?)?.to_t()?;
            let q = match q.trim() {
                "sym" | "q" => QParam::Symbolic,
                s => QParam::Int(s.parse().map_err(|_| Fail::Usage(format!("--q must be an integer or \"sym\", got {s:?}")))?),
            };
            match hw_zeta(&c, &q, t)?.value {
                HwValue::Rational(r) => json!({
                    "ghost": ghost_to_json(&r.ghost(t))["ghost"],
                    "series": witt_to_json(&r.expand(t))["coeffs"],
                    "rational": rational_witt_to_json(&r),
                    "trunc": t,
                }),
                HwValue::Symbolic(g) => symbolic_ghost_to_json(&g),
            }
        }
        ZetaCmd::Lefschetz { matrix, series, .. } => {
            let f = toral(&ctx.one(&matrix, "matrix")?)?;
            if series {
                witt_to_json(&f.lefschetz_zeta_series(t))
            } else {
                lefschetz_to_json(&f.lefschetz_zeta_closed()?)
            }
        }
        ZetaCmd::ArtinMazur { matrix } => witt_to_json(&toral(&ctx.one(&matrix, "matrix")?)?.artin_mazur_series(t)?),
        ZetaCmd::QuotientCheck { k, q } => ghost_to_json(&hw_quotient_check(k, q, t)?),
        ZetaCmd::QLimit { class } => {
            let c = class_from_json(&ctx.one(&class, "class")?)?.to_t()?;
            ghost_to_json(&q_to_1_limit(&assembled_quotient_symbolic(&c, t)?))
        }
    })
}

fn endo(ctx: &Ctx, op: EndoCmd) -> CmdResult {
    let obj = |flag: &Option<String>| -> std::result::Result<EndoObject, Fail> {
        Ok(EndoObject::new(matrix_from_json(&ctx.one(flag, "matrix")?)?))
    };
    Ok(match op {
        EndoCmd::Lmap { matrix } => rational_witt_to_json(&obj(&matrix)?.l_map()),
        EndoCmd::Frobenius { n, matrix } => matrix_to_json(obj(&matrix)?.frobenius(n.n as usize).matrix()),
        EndoCmd::Verschiebung { n, matrix } => matrix_to_json(obj(&matrix)?.verschiebung(n.n as usize).matrix()),
        EndoCmd::Delta { graded } => rational_witt_to_json(&delta(&graded_from_json(&ctx.one(&graded, "graded")?)?)),
        EndoCmd::Phimu { witt } => {
            let z = match witt_from_json(&ctx.one(&witt, "witt")?)? {
                WittValue::Rational(r) => r,
                WittValue::Series(_) => return Err(Error::invalid("phimu needs the rational form {\"num\",\"den\"}").into()),
            };
            graded_to_json(&phi_mu(&z)?)
        }
    })
}

fn equivariant(ctx: &Ctx, op: EquivCmd) -> CmdResult {
    let is_relative = |v: &Value| v.get("total").is_some();
    Ok(match op {
        EquivCmd::Sigma { n, action } => {
            let v = ctx.one(&action, "action")?;
            if is_relative(&v) {
                relative_to_json(&relative_from_json(&v)?.bc_sigma(n.n))
            } else {
                action_to_json(&action_from_json(&v)?.sigma_action(n.n))
            }
        }
        EquivCmd::Rho { n, action } => {
            let v = ctx.one(&action, "action")?;
            if is_relative(&v) {
                relative_to_json(&relative_from_json(&v)?.bc_rho(n.n))
            } else {
                action_to_json(&action_from_json(&v)?.verschiebung_action(n.n))
            }
        }
        EquivCmd::Periodic { action, k } => {
            json!({ "points": action_from_json(&ctx.one(&action, "action")?)?.periodic_points(k) })
        }
        EquivCmd::Euler { action } => qz_to_json(&action_from_json(&ctx.one(&action, "action")?)?.euler_char()),
        EquivCmd::OrbitType { action } => {
            let v = ctx.one(&action, "action")?;
            if is_relative(&v) {
                json!({ "orbit_type": orbit_type_to_json(&relative_from_json(&v)?.orbit_type()) })
            } else {
                json!({ "cycle_type": cycle_type_to_json(&action_from_json(&v)?.cycle_type()) })
            }
        }
        EquivCmd::Check { action, n, k } => {
            let a = action_from_json(&ctx.one(&action, "action")?)?;
            let mut flags = [true; 4];
            for ni in 1..=n {
                for ki in 1..=k {
                    let r = identity_checks(&a, ni, ki);
                    for (f, ok) in flags.iter_mut().zip([
                        r.periodic_sigma,
                        r.periodic_verschiebung,
                        r.euler_sigma,
                        r.euler_rho,
                    ]) {
                        *f &= ok;
                    }
                }
            }
            json!({
                "periodic_sigma": flags[0],
                "periodic_verschiebung": flags[1],
                "euler_sigma": flags[2],
                "euler_rho": flags[3],
                "all": flags.iter().all(|&f| f),
                "pairs": n * k,
            })
        }
    })
}

fn euler(ctx: &Ctx, op: EulerCmd) -> CmdResult {
    match op {
        EulerCmd::Spectral { matrix } => {
            Ok(qz_to_json(&spectral_euler(&matrix_from_json(&ctx.one(&matrix, "matrix")?)?)?))
        }
    }
}
