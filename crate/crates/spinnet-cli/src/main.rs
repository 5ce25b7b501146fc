//! Command-line surface for the spinnet library: network evaluations,
//! recoupling matrices, braid compilation, and the verification sweeps.
//!
//! Documents go to standard output as JSON (default) or CSV; diagnostics go
//! to standard error. Exit codes: 0 success, 1 invalid input, 2 a check
//! suite found violations beyond tolerance.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use spinnet::braid::{compile_braid, BraidWord};
use spinnet::coherence::{
    check_braid_relations, hexagon_check, inverse_law_check, oracle_check, orthogonality_check,
    pentagon_check, Report,
};
use spinnet::fusion::enumerate_basis;
use spinnet::network::DiagramOracle;
use spinnet::recoupling::{
    fmatrix, rmatrix, rmatrix_generic, sixj, sixj_at, tet_at, tet_closed, theta_at, theta_closed,
};
use spinnet::root::{RootParams, DEFAULT_TOL};
use spinnet::{Complex64, LaurentPoly};

#[derive(Parser)]
#[command(
    name = "spinnet",
    about = "Temperley-Lieb recoupling: spin network evaluation and braid compilation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Evaluation regime: exactly one of `--r` (numeric, at A = e^{i pi/2r}) or
/// `--generic` (exact polynomial output).
#[derive(Args, Clone)]
struct Regime {
    /// Evaluate numerically at the root of unity of this level (r >= 3)
    #[arg(long, conflicts_with = "generic")]
    r: Option<usize>,
    /// Evaluate exactly over polynomials in the bracket variable
    #[arg(long)]
    generic: bool,
    /// Numeric comparison tolerance
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

impl Regime {
    fn params(&self) -> anyhow::Result<Option<RootParams>> {
        match (self.r, self.generic) {
            (Some(r), false) => Ok(Some(RootParams::new(r, self.tol)?)),
            (None, true) => Ok(None),
            _ => anyhow::bail!("pass exactly one of --r <level> or --generic"),
        }
    }

    fn require_params(&self) -> anyhow::Result<RootParams> {
        self.params()?
            .ok_or_else(|| anyhow::anyhow!("this command needs a root of unity: pass --r <level>"))
    }
}

#[derive(Args, Clone)]
struct Format {
    /// Emit JSON (default)
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV where the document is tabular
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum integer [n]
    Qint {
        n: usize,
        #[command(flatten)]
        regime: Regime,
    },
    /// Loop value of the closed n-strand projector, delta_n
    Delta {
        n: usize,
        #[command(flatten)]
        regime: Regime,
    },
    /// Theta network value
    Theta {
        a: usize,
        b: usize,
        c: usize,
        #[command(flatten)]
        regime: Regime,
    },
    /// Tetrahedron network value (vertices (a,b,i),(c,d,i),(a,d,j),(b,c,j))
    Tet {
        a: usize,
        b: usize,
        i: usize,
        c: usize,
        d: usize,
        j: usize,
        #[command(flatten)]
        regime: Regime,
    },
    /// Quantum 6j symbol {a b i; c d k}
    Sixj {
        a: usize,
        b: usize,
        i: usize,
        c: usize,
        d: usize,
        k: usize,
        #[command(flatten)]
        regime: Regime,
    },
    /// Orthogonal recoupling matrix M[a,b,c,d]
    Fmatrix {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        #[command(flatten)]
        regime: Regime,
        #[command(flatten)]
        format: Format,
    },
    /// Braiding phases lambda_c^{ab} over admissible channels c
    Rphase {
        a: usize,
        b: usize,
        #[command(flatten)]
        regime: Regime,
    },
    /// Fusion-tree basis of n strands of label ell with total charge t
    Basis {
        n: usize,
        ell: usize,
        t: usize,
        #[command(flatten)]
        regime: Regime,
    },
    /// Compile a braid word to a unitary on the fusion basis
    Compile {
        n: usize,
        ell: usize,
        t: usize,
        /// Comma-separated signed generator indices, e.g. "1,-2,1"
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        regime: Regime,
    },
    /// Kauffman bracket of a braid closure
    Bracket {
        /// Comma-separated signed generator indices, e.g. "1,-2,1"
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Strand count override (required for the empty word)
        #[arg(long)]
        strands: Option<usize>,
        #[command(flatten)]
        regime: Regime,
    },
    /// Verification sweeps; exits 2 if any deviation exceeds tolerance
    Check {
        #[command(subcommand)]
        which: CheckKind,
    },
}

#[derive(Subcommand)]
enum CheckKind {
    /// M M^T = I, entry reality, and the inverse/transpose laws
    Orthogonality {
        #[command(flatten)]
        regime: Regime,
        /// Largest outer label (default r-2)
        #[arg(long)]
        max_label: Option<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// Braid relations and far commutation on fusion bases
    Braid {
        #[command(flatten)]
        regime: Regime,
        /// Largest strand count (default 5)
        #[arg(long, default_value_t = 5)]
        max_strands: usize,
        /// Largest leaf label (default 2)
        #[arg(long, default_value_t = 2)]
        max_label: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Pentagon route comparison
    Pentagon {
        #[command(flatten)]
        regime: Regime,
        #[arg(long)]
        max_label: Option<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// Hexagon route comparison (both orientations)
    Hexagon {
        #[command(flatten)]
        regime: Regime,
        #[arg(long)]
        max_label: Option<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// Exact closed-form versus diagram-oracle equivalence (generic only)
    Oracle {
        #[command(flatten)]
        regime: Regime,
        /// Largest tetrahedron edge label (default 3)
        #[arg(long, default_value_t = 3)]
        max_label: usize,
        /// Largest theta label sum (default 8)
        #[arg(long, default_value_t = 8)]
        max_strands: usize,
        #[command(flatten)]
        format: Format,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn complex_json(v: Complex64) -> Value {
    json!([v.re, v.im])
}

fn print_json(v: &impl serde::Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(v)?);
    Ok(())
}

fn emit_poly(value: &LaurentPoly, params: Option<&RootParams>) -> anyhow::Result<()> {
    match params {
        None => print_json(value),
        Some(p) => print_json(&json!({ "value": complex_json(value.eval_at_root(p)) })),
    }
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Qint { n, regime } => {
            let params = regime.params()?;
            emit_poly(&spinnet::qint::quantum_int(n), params.as_ref())?;
        }
        Command::Delta { n, regime } => {
            let params = regime.params()?;
            emit_poly(&spinnet::qint::delta(n), params.as_ref())?;
        }
        Command::Theta { a, b, c, regime } => match regime.params()? {
            None => print_json(&theta_closed(a, b, c)?)?,
            Some(p) => print_json(&json!({ "value": [theta_at(a, b, c, &p)?, 0.0] }))?,
        },
        Command::Tet { a, b, i, c, d, j, regime } => match regime.params()? {
            None => print_json(&tet_closed(a, b, i, c, d, j)?)?,
            Some(p) => print_json(&json!({ "value": [tet_at(a, b, i, c, d, j, &p)?, 0.0] }))?,
        },
        Command::Sixj { a, b, i, c, d, k, regime } => match regime.params()? {
            None => print_json(&sixj(a, b, i, c, d, k)?)?,
            Some(p) => print_json(&json!({ "value": [sixj_at(a, b, i, c, d, k, &p)?, 0.0] }))?,
        },
        Command::Fmatrix { a, b, c, d, regime, format } => {
            let p = regime.require_params()?;
            let m = fmatrix(a, b, c, d, &p)?;
            if format.csv {
                let cols: Vec<String> = m.col_labels().iter().map(|l| l.to_string()).collect();
                println!("{}", cols.join(","));
                for i in 0..m.dim() {
                    let row: Vec<String> =
                        (0..m.dim()).map(|j| format!("{:.17e}", m.entry(i, j))).collect();
                    println!("{}", row.join(","));
                }
            } else {
                print_json(&m)?;
            }
        }
        Command::Rphase { a, b, regime } => match regime.params()? {
            None => {
                let rows: Vec<Value> = rmatrix_generic(a, b)
                    .into_iter()
                    .map(|(c, poly)| json!({ "c": c, "phase": poly }))
                    .collect();
                print_json(&rows)?;
            }
            Some(p) => {
                let rows: Vec<Value> = rmatrix(a, b, &p)?
                    .into_iter()
                    .map(|(c, v)| json!({ "c": c, "phase": complex_json(v) }))
                    .collect();
                print_json(&rows)?;
            }
        },
        Command::Basis { n, ell, t, regime } => {
            let p = regime.require_params()?;
            let basis = enumerate_basis(n, ell, t, &p)?;
            let paths: Vec<&[usize]> = basis.paths().iter().map(|q| q.internals()).collect();
            print_json(&json!({
                "n": n, "ell": ell, "t": t, "r": p.r(),
                "dim": basis.dim(), "paths": paths,
            }))?;
        }
        Command::Compile { n, ell, t, word, regime } => {
            let p = regime.require_params()?;
            let word = BraidWord::parse(&word, Some(n))?;
            let basis = enumerate_basis(n, ell, t, &p)?;
            let u = compile_braid(&basis, &word)?;
            let paths: Vec<&[usize]> = basis.paths().iter().map(|q| q.internals()).collect();
            print_json(&json!({
                "n": n, "ell": ell, "t": t, "r": p.r(),
                "basis": paths, "matrix": u,
            }))?;
        }
        Command::Bracket { word, strands, regime } => {
            let word = BraidWord::parse(&word, strands)?;
            let oracle = DiagramOracle::new();
            let value = oracle.bracket_closure(&word)?;
            match regime.params()? {
                None => print_json(&json!({
                    "strands": word.strand_count(),
                    "raw": value.raw,
                    "normalized": value.normalized,
                }))?,
                Some(p) => print_json(&json!({
                    "strands": word.strand_count(),
                    "raw": complex_json(value.raw.eval_at_root(&p)?),
                    "normalized": complex_json(value.normalized.eval_at_root(&p)?),
                }))?,
            }
        }
        Command::Check { which } => return run_check(which),
    }
    Ok(ExitCode::SUCCESS)
}

/// Default violation threshold for check sweeps.
const CHECK_TOL: f64 = 1e-9;

fn run_check(which: CheckKind) -> anyhow::Result<ExitCode> {
    let (report, tol, format): (Report, f64, Format) = match which {
        CheckKind::Orthogonality { regime, max_label, format } => {
            let p = regime.require_params()?;
            let max = max_label.unwrap_or(p.max_label());
            let mut rep = orthogonality_check(&p, max)?;
            rep.merge(inverse_law_check(&p, max)?);
            (rep, check_tol(&regime), format)
        }
        CheckKind::Braid { regime, max_strands, max_label, format } => {
            let p = regime.require_params()?;
            let mut rep = Report::default();
            for n in 2..=max_strands {
                for leaf in 1..=max_label.min(p.max_label()) {
                    for t in 0..=p.max_label() {
                        rep.merge(check_braid_relations(n, leaf, t, &p)?);
                    }
                }
            }
            (rep, check_tol(&regime), format)
        }
        CheckKind::Pentagon { regime, max_label, format } => {
            let p = regime.require_params()?;
            let max = max_label.unwrap_or(p.max_label());
            (pentagon_check(&p, max)?, check_tol(&regime), format)
        }
        CheckKind::Hexagon { regime, max_label, format } => {
            let p = regime.require_params()?;
            let max = max_label.unwrap_or(p.max_label());
            (hexagon_check(&p, max)?, check_tol(&regime), format)
        }
        CheckKind::Oracle { regime, max_label, max_strands, format } => {
            if regime.params()?.is_some() {
                anyhow::bail!("the oracle check is exact: pass --generic");
            }
            (oracle_check(max_strands, max_label, 6)?, 0.0, format)
        }
    };

    if format.csv {
        println!("check,labels,deviation");
        for e in &report.entries {
            let labels: Vec<String> = e.labels.iter().map(|l| l.to_string()).collect();
            println!("{},{},{:.17e}", e.check, labels.join(" "), e.deviation);
        }
    } else {
        print_json(&report.entries)?;
    }

    let violations = report.violations(tol);
    eprintln!(
        "{} configurations checked, max deviation {:.3e}, {} violation(s) beyond {tol:.1e}",
        report.len(),
        report.max_deviation(),
        violations.len()
    );
    if violations.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for v in violations.iter().take(10) {
            eprintln!("violation: {} at {:?}: {:.3e}", v.check, v.labels, v.deviation);
        }
        Ok(ExitCode::from(2))
    }
}

fn check_tol(regime: &Regime) -> f64 {
    if (regime.tol - DEFAULT_TOL).abs() > f64::EPSILON {
        regime.tol
    } else {
        CHECK_TOL
    }
}
