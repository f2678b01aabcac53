//! The `opclosure` command line.
//!
//! [`run`] parses arguments and renders a report without touching the
//! process: it returns the exit code and both output streams, so the binary
//! is a thin wrapper and tests call it directly.
//!
//! Exit codes: 0 computed (the verdict is in stdout), 1 a verification suite
//! failed, 2 input error (bad arguments, unreadable or malformed files),
//! 3 precondition violation (well-formed inputs outside an operation's
//! domain).

use std::cmp::Ordering;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cardinal::{default_universe, Cardinal, SignedIndex};
use crate::descriptor::OperatorDescriptor;
use crate::error::{Error, Result};
use crate::fredholm::{self, IdealHandle, IndexRegionQuery};
use crate::matrix::{self, ComplexMatrix, Group, Tolerances};
use crate::orbit::{self, Condition, LambdaTriple};
use crate::verify::{self, Suite};

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "opclosure",
    version,
    about = "Decide orbit closures, index regions and ideals of bounded operators from index descriptors, with a matrix oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the indices of a descriptor.
    Idx {
        /// Descriptor JSON file.
        file: PathBuf,
    },
    /// Orbit closure queries.
    #[command(subcommand)]
    Orbit(OrbitCommand),
    /// Triples (dim(H ⊖ V), dim V, dim(K ⊖ A(V))) attainable by A.
    #[command(subcommand)]
    Lambda(LambdaCommand),
    /// Is A in the norm closure of the invertible operators?
    InvertibleClosure {
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
    },
    /// Extended Fredholm index regions Ind_gamma on the space of A.
    Fredholm {
        #[arg(value_enum)]
        query: FredholmQuery,
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        /// Signed cardinal such as "-1" or "aleph_0".
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Cut parameter (at least 1) for `cut`.
        #[arg(long)]
        m: Option<String>,
    },
    /// Closed two-sided ideals J_alpha.
    #[command(subcommand)]
    Ideal(IdealCommand),
    /// Finite-dimensional matrix oracle.
    #[command(subcommand)]
    Matrix(MatrixCommand),
    /// Run the acceptance suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

#[derive(Debug, Subcommand)]
enum OrbitCommand {
    /// Is B in the closure of the orbit of A under the chosen group?
    Contains {
        #[arg(long, value_parser = parse_group)]
        group: Group,
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "B", value_name = "FILE")]
        b: PathBuf,
        /// Read A and B as matrices instead of descriptors.
        #[arg(long)]
        matrix: bool,
        /// For matrix `gg` members, also build U, G with ‖B − U A G⁻¹‖ ≤ eps.
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Do A and B have the same two-sided orbit closure?
    Equal {
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "B", value_name = "FILE")]
        b: PathBuf,
        #[arg(long)]
        matrix: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
}

#[derive(Debug, Subcommand)]
enum LambdaCommand {
    Member {
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        /// Three comma-separated cardinals.
        #[arg(long)]
        triple: String,
    },
    Enum {
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        /// Comma-separated cardinals; defaults to the verification universe.
        #[arg(long)]
        universe: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FredholmQuery {
    Member,
    Closure,
    Boundary,
    Cut,
}

#[derive(Debug, Subcommand)]
enum IdealCommand {
    Member {
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long)]
        alpha: String,
        /// Defaults to dim H of A.
        #[arg(long)]
        ambient: Option<String>,
    },
    Compare {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Defaults to the larger of alpha, beta and aleph_1.
        #[arg(long)]
        ambient: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum MatrixCommand {
    /// Descriptor of a matrix, read off its singular values.
    Indices {
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Closed-form distance from B to the orbit closure of A (gg or uu).
    Distance {
        #[arg(long, value_parser = parse_group)]
        group: Group,
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "B", value_name = "FILE")]
        b: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Build U unitary and G invertible with ‖B − U A G⁻¹‖ ≤ eps.
    Approx {
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "B", value_name = "FILE")]
        b: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Smallest ‖g A h − B‖ over seeded random group elements.
    Sample {
        #[arg(long, value_parser = parse_group)]
        group: Group,
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "B", value_name = "FILE")]
        b: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct TolArgs {
    #[arg(long, default_value_t = 1e-9)]
    rank_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    recon_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    match_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances> {
        Tolerances::new(self.rank_tol, self.recon_tol, self.match_tol)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Symbolic,
    Numeric,
}

fn parse_group(s: &str) -> std::result::Result<Group, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs one invocation. `argv` includes the program name.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = String::new();
    match execute(cli.command, &mut out) {
        Ok(code) => CliOutput {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => CliOutput {
            code: if e.is_input_error() { 2 } else { 3 },
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn descriptor(path: &Path) -> Result<OperatorDescriptor> {
    OperatorDescriptor::from_json(&read(path)?)
}

fn matrix_file(path: &Path) -> Result<ComplexMatrix> {
    ComplexMatrix::parse(&read(path)?)
}

fn cardinal(field: &str, text: &str) -> Result<Cardinal> {
    text.trim().parse().map_err(|e: Error| Error::Validation {
        field: field.into(),
        message: e.to_string(),
    })
}

fn cardinal_list(field: &str, text: &str) -> Result<Vec<Cardinal>> {
    text.split(',').map(|s| cardinal(field, s)).collect()
}

fn verdict(member: bool) -> &'static str {
    if member {
        "member"
    } else {
        "not a member"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(command: Command, out: &mut String) -> Result<i32> {
    match command {
        Command::Idx { file } => idx(&descriptor(&file)?, out),
        Command::Orbit(OrbitCommand::Contains {
            group,
            a,
            b,
            matrix,
            eps,
            tol,
        }) => {
            if matrix {
                matrix_contains(
                    group,
                    &matrix_file(&a)?,
                    &matrix_file(&b)?,
                    eps,
                    &tol.tolerances()?,
                    out,
                )
            } else if group != Group::GG {
                Err(Error::validation(
                    "group",
                    format!("descriptors decide only gg closures; pass --matrix for {group}"),
                ))
            } else if eps.is_some() {
                Err(Error::validation("eps", "approximations need --matrix"))
            } else {
                gg_contains(&descriptor(&a)?, &descriptor(&b)?, out)
            }
        }
        Command::Orbit(OrbitCommand::Equal { a, b, matrix, tol }) => {
            let (a, b) = if matrix {
                let tol = tol.tolerances()?;
                let (a, b) = (matrix_file(&a)?, matrix_file(&b)?);
                (matrix::svd_indices(&a, &tol), matrix::svd_indices(&b, &tol))
            } else {
                (descriptor(&a)?, descriptor(&b)?)
            };
            let equal = orbit::closure_gg_equal(&a, &b)?;
            writeln!(
                out,
                "{}; Corollary the_same",
                if equal { "equal" } else { "not equal" }
            )
            .unwrap();
            writeln!(out, "A: {}", a.indices()).unwrap();
            writeln!(out, "B: {}", b.indices()).unwrap();
            Ok(0)
        }
        Command::Lambda(LambdaCommand::Member { a, triple }) => {
            let a = descriptor(&a)?;
            let parts = cardinal_list("triple", triple.trim_matches(|c| c == '(' || c == ')'))?;
            let [left, mid, right]: [Cardinal; 3] = parts.try_into().map_err(|_| {
                Error::validation("triple", "expected three comma-separated cardinals")
            })?;
            let t = LambdaTriple::new(left, mid, right);
            writeln!(
                out,
                "{} {t}; Lemma lambda",
                verdict(orbit::lambda_member(&a, &t))
            )
            .unwrap();
            Ok(0)
        }
        Command::Lambda(LambdaCommand::Enum { a, universe }) => {
            let a = descriptor(&a)?;
            let universe = match universe {
                Some(text) => cardinal_list("universe", &text)?,
                None => default_universe(),
            };
            let triples = orbit::lambda_enumerate(&a, &universe);
            for t in &triples {
                writeln!(out, "{t}").unwrap();
            }
            writeln!(out, "{} triples; Corollary lambda", triples.len()).unwrap();
            Ok(0)
        }
        Command::InvertibleClosure { a } => {
            let a = descriptor(&a)?;
            let member = orbit::invertible_closure_member(&a)?;
            let idx = a.indices();
            writeln!(
                out,
                "{}; Corollary invert (iota_i = {}, iota_f = {})",
                verdict(member),
                idx.iota_i,
                idx.iota_f
            )
            .unwrap();
            Ok(0)
        }
        Command::Fredholm { query, a, gamma, m } => {
            let a = descriptor(&a)?;
            let gamma: SignedIndex = gamma.trim().parse()?;
            if !gamma.is_defined() {
                return Err(Error::validation(
                    "gamma",
                    "must be a defined index, not undefined",
                ));
            }
            let q = IndexRegionQuery::new(gamma, a.dim_h())?;
            let (member, label) = match query {
                FredholmQuery::Member => (
                    fredholm::ind_region_member(&a, &q)?,
                    "definition of Ind_gamma",
                ),
                FredholmQuery::Closure => (fredholm::ind_closure_member(&a, &q)?, "Theorem int-bd"),
                FredholmQuery::Boundary => {
                    (fredholm::ind_boundary_member(&a, &q)?, "Theorem int-bd")
                }
                FredholmQuery::Cut => {
                    let m = m.ok_or_else(|| Error::validation("m", "cut needs --m"))?;
                    (
                        fredholm::ind_cut_member(&a, &q, &cardinal("m", &m)?)?,
                        "Proposition cut",
                    )
                }
            };
            writeln!(out, "{}; {label}", verdict(member)).unwrap();
            writeln!(out, "ind = {}, iota_m = {}", a.ind(), a.iota_m()).unwrap();
            Ok(0)
        }
        Command::Ideal(IdealCommand::Member { a, alpha, ambient }) => {
            let a = descriptor(&a)?;
            let alpha = cardinal("alpha", &alpha)?;
            let ambient = match ambient {
                Some(text) => cardinal("ambient", &text)?,
                None => a.dim_h(),
            };
            let j = if alpha == Cardinal::aleph_0() && ambient <= Cardinal::aleph_0() {
                IdealHandle::compact(ambient)?
            } else {
                IdealHandle::new(alpha, ambient)?
            };
            let member = fredholm::ideal_member(&a, &j)?;
            let idx = a.indices();
            writeln!(
                out,
                "{} of J_{}; Theorem ideals",
                verdict(member),
                j.alpha()
            )
            .unwrap();
            writeln!(out, "iota_r = {}, iota_b = {}", idx.iota_r, idx.iota_b).unwrap();
            Ok(0)
        }
        Command::Ideal(IdealCommand::Compare {
            alpha,
            beta,
            ambient,
        }) => {
            let alpha = cardinal("alpha", &alpha)?;
            let beta = cardinal("beta", &beta)?;
            let ambient = match ambient {
                Some(text) => cardinal("ambient", &text)?,
                None => [&alpha, &beta, &Cardinal::aleph(1)]
                    .into_iter()
                    .max()
                    .unwrap()
                    .clone(),
            };
            let (ja, jb) = (
                IdealHandle::new(alpha, ambient.clone())?,
                IdealHandle::new(beta, ambient)?,
            );
            let relation = match fredholm::ideal_compare(&ja, &jb)? {
                Ordering::Less => "is properly contained in",
                Ordering::Equal => "equals",
                Ordering::Greater => "properly contains",
            };
            writeln!(
                out,
                "J_{} {relation} J_{}; Theorem ideals",
                ja.alpha(),
                jb.alpha()
            )
            .unwrap();
            Ok(0)
        }
        Command::Matrix(cmd) => matrix_command(cmd, out),
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Symbolic => Suite::Symbolic,
                SuiteArg::Numeric => Suite::Numeric,
            };
            let reports = verify::run(suite);
            for r in &reports {
                writeln!(out, "{r}").unwrap();
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            writeln!(out, "{passed} of {} criteria passed", reports.len()).unwrap();
            Ok(if passed == reports.len() { 0 } else { 1 })
        }
    }
}

fn idx(a: &OperatorDescriptor, out: &mut String) -> Result<i32> {
    let idx = a.indices();
    let rows = [
        ("dim H", a.dim_h().to_string()),
        ("dim K", a.dim_k().to_string()),
        ("iota_r", idx.iota_r.to_string()),
        ("iota_i", idx.iota_i.to_string()),
        ("iota_f", idx.iota_f.to_string()),
        ("iota_b", idx.iota_b.to_string()),
        ("iota_R", idx.iota_big_r().to_string()),
        ("iota_m", idx.iota_m().to_string()),
        ("compact", yes_no(a.is_compact()).to_string()),
    ];
    for (k, v) in rows {
        writeln!(out, "{k} = {v}").unwrap();
    }
    if let Ok(class) = orbit::classify_separable(a) {
        writeln!(out, "separable class = {class}; Corollary separable").unwrap();
    }
    writeln!(out, "ind = {}", idx.ind()).unwrap();
    Ok(0)
}

fn gg_contains(a: &OperatorDescriptor, c: &OperatorDescriptor, out: &mut String) -> Result<i32> {
    let v = orbit::closure_gg_contains(a, c)?;
    let (ia, ic) = (a.indices(), c.indices());
    match (v.member, v.failed) {
        (true, _) => {
            let alpha = v.alpha.expect("members carry a witness");
            writeln!(
                out,
                "member (alpha = {alpha}); Theorem orbit (a), (b), (c) hold"
            )
            .unwrap();
        }
        (false, Some(cond)) => {
            writeln!(out, "not a member; {} fails", cond.label()).unwrap();
            let why = match cond {
                Condition::RangeIndex => {
                    format!(
                        "iota_r(B) = {} exceeds iota_r(A) = {}",
                        ic.iota_r, ia.iota_r
                    )
                }
                Condition::BinaryIndex => format!(
                    "iota_b(A) = 0 and iota_b(B) = 1 with iota_r(A) = iota_r(B) = {}",
                    ia.iota_r
                ),
                Condition::InitialFinal => format!(
                    "no alpha with {} = {} + alpha and {} = {} + alpha",
                    ic.iota_i, ia.iota_i, ic.iota_f, ia.iota_f
                ),
            };
            writeln!(out, "witness: {why}").unwrap();
        }
        (false, None) => unreachable!("non-members name a failed condition"),
    }
    writeln!(out, "A: {ia}").unwrap();
    writeln!(out, "B: {ic}").unwrap();
    Ok(0)
}

fn matrix_contains(
    group: Group,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    eps: Option<f64>,
    tol: &Tolerances,
    out: &mut String,
) -> Result<i32> {
    if eps.is_some() && group != Group::GG {
        return Err(Error::validation(
            "eps",
            "approximations are built for gg only",
        ));
    }
    match group {
        Group::GG => {
            let d = matrix::closure_gg_contains_matrix(a, b, tol)?;
            let ra = matrix::rank_reading(a.as_mat(), tol).rank;
            let rb = matrix::rank_reading(b.as_mat(), tol).rank;
            writeln!(
                out,
                "{}; Corollary separable (I) (rank B = {rb}, rank A = {ra})",
                verdict(d.holds)
            )
            .unwrap();
            writeln!(out, "marginal = {}", yes_no(d.marginal)).unwrap();
            writeln!(out, "distance = {:.12}", matrix::gg_distance(a, b, tol)?).unwrap();
            if let (Some(eps), true) = (eps, d.holds) {
                let r = matrix::gg_approximate(a, b, eps, tol)?;
                writeln!(out, "approximation error = {:.3e}", r.achieved_error).unwrap();
                writeln!(out, "condition number of G = {:.3e}", r.condition_number).unwrap();
            }
        }
        Group::URight | Group::ULeft => {
            let (w, label) = if group == Group::URight {
                (
                    matrix::closure_u_right_contains(a, b, tol)?,
                    "Theorem U (a)",
                )
            } else {
                (matrix::closure_u_left_contains(a, b, tol)?, "Theorem U (b)")
            };
            writeln!(out, "{}; {label}", verdict(w.holds)).unwrap();
            if let Some(res) = w.residual {
                writeln!(out, "witness residual = {res:.3e}").unwrap();
            }
        }
        Group::GRight => {
            let holds = matrix::closure_g_right_contains(a, b, tol)?;
            writeln!(out, "{}; Theorem G (a)", verdict(holds)).unwrap();
        }
        Group::UU => {
            let holds = matrix::closure_uu_contains(a, b, tol)?;
            writeln!(out, "{}; Proposition UU (a)", verdict(holds)).unwrap();
            writeln!(out, "distance = {:.12}", matrix::uu_distance(a, b)?).unwrap();
        }
    }
    Ok(0)
}

fn matrix_command(cmd: MatrixCommand, out: &mut String) -> Result<i32> {
    match cmd {
        MatrixCommand::Indices { a, tol } => {
            let tol = tol.tolerances()?;
            let a = matrix_file(&a)?;
            let reading = matrix::rank_reading(a.as_mat(), &tol);
            writeln!(out, "{}", matrix::svd_indices(&a, &tol).to_json()).unwrap();
            writeln!(out, "rank = {}", reading.rank).unwrap();
            writeln!(out, "marginal = {}", yes_no(reading.marginal)).unwrap();
        }
        MatrixCommand::Distance { group, a, b, tol } => {
            let tol = tol.tolerances()?;
            let (a, b) = (matrix_file(&a)?, matrix_file(&b)?);
            let d = match group {
                Group::GG => matrix::gg_distance(&a, &b, &tol)?,
                Group::UU => matrix::uu_distance(&a, &b)?,
                _ => {
                    return Err(Error::validation(
                        "group",
                        format!("no closed-form distance for {group}; use `matrix sample`"),
                    ))
                }
            };
            writeln!(out, "{d:.12}").unwrap();
        }
        MatrixCommand::Approx { a, b, eps, tol } => {
            let tol = tol.tolerances()?;
            let (a, b) = (matrix_file(&a)?, matrix_file(&b)?);
            let r = matrix::gg_approximate(&a, &b, eps, &tol)?;
            writeln!(out, "approximation error = {:.3e}", r.achieved_error).unwrap();
            writeln!(out, "condition number of G = {:.3e}", r.condition_number).unwrap();
            writeln!(out, "U = {}", ComplexMatrix::from(r.u).to_json()).unwrap();
            writeln!(out, "G = {}", ComplexMatrix::from(r.g).to_json()).unwrap();
        }
        MatrixCommand::Sample {
            group,
            a,
            b,
            samples,
            seed,
        } => {
            let (a, b) = (matrix_file(&a)?, matrix_file(&b)?);
            let d = matrix::sample_orbit_distance(&a, &b, group, samples, seed)?;
            writeln!(out, "{d:.12}").unwrap();
        }
    }
    Ok(0)
}
