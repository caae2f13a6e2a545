//! Command-line front end. Every subcommand builds one report and writes it
//! at the end; library errors become a JSON error object and an exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::exterior::Multivector;
use crate::extraspecial::ExtraspecialGroup;
use crate::linalg::{Prime, Subspace};
use crate::report::{big_value, render_text};
use crate::symplectic::{premet_suprunenko, SymplecticSpace};
use crate::verify::{verify_all, Grid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupOp {
    Center,
    Order,
    CommutatorForm,
    Type,
}

#[derive(Debug, Parser)]
#[command(name = "infker", version, about = "Inflation kernels of extraspecial p-groups over F_p")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Field characteristic.
    #[arg(short = 'p', long = "prime", global = true, value_parser = parse_prime)]
    prime: Option<Prime>,
    /// Half the dimension of V.
    #[arg(short = 'm', long = "rank", global = true)]
    rank: Option<usize>,
    /// Exterior degree.
    #[arg(short = 'r', long = "degree", global = true, allow_negative_numbers = true)]
    degree: Option<i64>,
    /// A class such as `x1^y1 + 2*x2^y2`.
    #[arg(long = "class", global = true, value_name = "EXPR")]
    class: Option<String>,
    /// JSON array of row vectors spanning a subspace.
    #[arg(long = "subspace", global = true, value_name = "FILE")]
    subspace: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    grid: Option<Grid>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the sl2 bracket relations on every graded piece.
    Sl2Check,
    /// Split a class as primitive part plus an element of the ideal.
    Decompose,
    /// Basis of the degree-r part of the ideal generated by ω.
    IdealBasis,
    /// Standard monomials spanning the quotient by the ideal in degree r.
    QuotientBasis,
    /// Classes restricting to zero on every Lagrangian.
    VanishingSpace,
    /// Kernel bounds in every degree.
    Theorem1,
    /// Lowest degree where the bounds differ, with a representative.
    Counterexample,
    /// Local membership certificate for a class at every nonzero g.
    Certificate,
    /// Enumerate isotropic subspaces of one dimension.
    Isotropic {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        count_only: bool,
    },
    /// Queries on the extraspecial group.
    Group {
        #[arg(long, value_enum)]
        op: GroupOp,
    },
    /// Irreducibility predicate for the primitive module E_r.
    PremetSuprunenko,
    /// Divided-power string through a primitive class.
    Ladder,
    /// Pull a class back to a subspace.
    Restrict,
    /// Run the property suites.
    VerifyAll,
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let n: u64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
    Prime::new(n).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Report text plus whether every assertion it carries held.
struct Output {
    body: String,
    ok: bool,
}

impl Cli {
    fn space(&self) -> Outcome<SymplecticSpace> {
        let p = self.prime.ok_or_else(|| Failure::Usage("missing -p/--prime".into()))?;
        let m = self.rank.ok_or_else(|| Failure::Usage("missing -m/--rank".into()))?;
        let s = SymplecticSpace::new(p, m)?;
        if let Some(r) = self.degree {
            if r < 0 || r > 2 * m as i64 {
                return Err(Error::DegreeOutOfRange {
                    degree: r,
                    min: 0,
                    max: 2 * m as i64,
                }
                .into());
            }
        }
        Ok(s)
    }

    fn degree(&self) -> Outcome<i64> {
        self.degree.ok_or_else(|| Failure::Usage("missing -r/--degree".into()))
    }

    fn class(&self, s: &SymplecticSpace) -> Outcome<Multivector> {
        let text = self.class.as_deref().ok_or_else(|| Failure::Usage("missing --class".into()))?;
        Ok(s.parse(text)?)
    }

    fn subspace(&self, s: &SymplecticSpace) -> Outcome<Subspace> {
        let path = self.subspace.as_ref().ok_or_else(|| Failure::Usage("missing --subspace".into()))?;
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let rows: Vec<Vec<i64>> =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(Subspace::from_vectors(s.p(), s.n(), &rows)?)
    }

    fn render(&self, value: &Value) -> String {
        match self.format {
            Format::Json => format!("{value}\n"),
            Format::Text => render_text(value),
        }
    }

    fn report<T: Serialize>(&self, value: &T, ok: bool) -> Output {
        let value = serde_json::to_value(value).expect("reports serialize");
        Output { body: self.render(&value), ok }
    }

    fn execute(&self) -> Outcome<Output> {
        if let Command::VerifyAll = self.command {
            let grid = self.grid.unwrap_or(Grid::Small);
            let rep = verify_all(grid, self.seed.unwrap_or(0));
            return Ok(self.report(&rep, rep.ok));
        }
        let s = self.space()?;
        let p = s.p().get();
        let m = s.m();
        let exprs = |sub: &Subspace, r: usize| -> Outcome<Vec<String>> {
            sub.basis_vectors()
                .iter()
                .map(|v| Ok(Multivector::from_coords(s.p(), s.n(), r, v)?.to_expr()))
                .collect()
        };
        let out = match &self.command {
            Command::Sl2Check => {
                let rep = s.sl2_check();
                self.report(&rep, rep.ok)
            }
            Command::Decompose => {
                let alpha = self.class(&s)?;
                let degree = self.degree.map(|r| r as usize);
                let d = s.decompose(&alpha, degree)?;
                let verified = s.x_plus(&d.primitive)?.is_zero() && &d.primitive + &s.x_minus(&d.beta)? == alpha;
                let v = json!({
                    "p": p, "m": m, "r": d.r,
                    "alpha": alpha.to_expr(),
                    "primitive": d.primitive.to_expr(),
                    "beta": d.beta.to_expr(),
                    "verified": verified,
                });
                Output { body: self.render(&v), ok: verified }
            }
            Command::IdealBasis | Command::VanishingSpace => {
                let r = self.degree()?;
                let sub = if let Command::IdealBasis = self.command {
                    s.ideal_component(r)?
                } else {
                    s.vanishing_space(r)?
                };
                let v = json!({
                    "p": p, "m": m, "r": r,
                    "dim": sub.dim(),
                    "ambient_dim": sub.ambient_dim(),
                    "basis": exprs(&sub, r as usize)?,
                });
                Output { body: self.render(&v), ok: true }
            }
            Command::QuotientBasis => {
                let basis: Vec<String> = s.quotient_basis(self.degree()?)?.into_iter().map(|mono| s.monomial_expr(mono)).collect();
                let v = json!({ "dim": basis.len(), "basis": basis });
                Output { body: self.render(&v), ok: true }
            }
            Command::Theorem1 => {
                let rep = s.theorem1_verify()?;
                self.report(&rep, rep.ok)
            }
            Command::Counterexample => {
                let v = match s.counterexample()? {
                    Some(c) => json!({
                        "p": p, "m": m, "found": true,
                        "degree": c.r,
                        "representative": c.representative.to_expr(),
                        "in_vanishing_space": c.in_vanishing_space,
                        "in_ideal": c.in_ideal,
                    }),
                    None => json!({
                        "p": p, "m": m, "found": false,
                        "degree": null, "representative": null,
                        "in_vanishing_space": null, "in_ideal": null,
                    }),
                };
                Output { body: self.render(&v), ok: true }
            }
            Command::Certificate => {
                let rep = s.certificate(&self.class(&s)?)?;
                self.report(&rep, rep.overall)
            }
            Command::Isotropic { dim, count_only } => {
                let r = dim
                    .or(self.degree.map(|r| r as usize))
                    .ok_or_else(|| Failure::Usage("missing --dim".into()))?;
                let mut lines = Vec::new();
                let mut count = 0u64;
                s.for_each_isotropic(r, |rows| {
                    count += 1;
                    if !count_only {
                        lines.push(json!({ "rows": rows }));
                    }
                })?;
                lines.push(json!({ "count": count, "complete": true }));
                let body = lines.iter().map(|l| self.render(l)).collect();
                Output { body, ok: true }
            }
            Command::Group { op } => {
                let g = ExtraspecialGroup::new(s.clone());
                let v = match op {
                    GroupOp::Center => json!({ "p": p, "m": m, "center": g.center() }),
                    GroupOp::Order => json!({ "p": p, "m": m, "order": big_value(&g.order()) }),
                    GroupOp::CommutatorForm => json!({ "p": p, "m": m, "matrix": g.commutator_form().row_vecs() }),
                    GroupOp::Type => serde_json::to_value(g.group_type()).expect("reports serialize"),
                };
                Output { body: self.render(&v), ok: true }
            }
            Command::PremetSuprunenko => {
                let rep = premet_suprunenko(s.p(), m, self.degree()? as usize)?;
                self.report(&rep, true)
            }
            Command::Ladder => {
                let rep = s.ladder(&self.class(&s)?)?;
                self.report(&rep, rep.relations_hold)
            }
            Command::Restrict => {
                let class = self.class(&s)?;
                let sub = self.subspace(&s)?;
                let restricted = s.restrict(&class, &sub)?;
                let split = s.radical_split(&sub)?;
                let v = json!({
                    "p": p, "m": m,
                    "class": class.to_expr(),
                    "subspace": sub.basis_vectors(),
                    "dim": sub.dim(),
                    "isotropic": s.is_isotropic(sub.basis()),
                    "radical_dim": split.rad.dim(),
                    "restriction": restricted.to_plain_expr(),
                    "zero": restricted.is_zero(),
                });
                Output { body: self.render(&v), ok: true }
            }
            Command::VerifyAll => unreachable!("handled above"),
        };
        Ok(out)
    }
}

/// Parses `args` (including the program name), runs one subcommand and
/// returns the exit code: 0 success, 1 failed assertion, 2 usage or input
/// error, 3 refused enumeration.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (body, code) = match cli.execute() {
        Ok(o) => (o.body, if o.ok { 0 } else { 1 }),
        Err(f) => {
            let (kind, message, code) = match f {
                Failure::Usage(msg) => ("usage", msg, 2),
                Failure::Lib(e) => (e.kind(), e.to_string(), e.exit_code()),
            };
            let _ = writeln!(err, "infker: {message}");
            let v = json!({ "error": kind, "message": message });
            (cli.render(&v), code)
        }
    };
    if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
        return 2;
    }
    code
}

/// Process entry point: honors `INFKER_THREADS` and `RUST_LOG`.
pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Ok(v) = std::env::var("INFKER_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    log::warn!("could not size the thread pool: {e}");
                }
            }
            _ => {
                eprintln!("infker: INFKER_THREADS must be a positive integer, got `{v}`");
                return 2;
            }
        }
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
