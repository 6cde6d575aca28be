//! `expfun`: batch front end to the expfun-core library.
//!
//! Exit status 0 means success (or a true answer), 1 a failed mathematical
//! check, 2 bad input or a refused size.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use expfun_core::charclass::{delta_indecomposable, det_twist_coeffs, generator_label};
use expfun_core::expfunctor::{self, build_model, check_associativity, check_kappa_iso, fw_table, recover_r, FunctorSpec};
use expfun_core::format::{matrix_to_json, parse_rmatrix, rmatrix_to_json, RMatrixFileError};
use expfun_core::rmatrix::{box_sum, box_tensor, equivalent, normal_form, RMatrixError};
use expfun_core::scalar::{format_rational, parse_rational, Rational};
use expfun_core::symgroup::Permutation;
use expfun_core::thoma::{self, character_cycle, eval_character, extract, ThomaError};
use expfun_core::{Caps, RMatrix, ThomaParams};

#[derive(Parser)]
#[command(name = "expfun", version, about = "Exact computations with involutive R-matrices and exponential functors")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest ambient dimension for dense matrices.
    #[arg(long, global = true, default_value_t = 4096)]
    cap_dense: usize,
    /// Largest n for which S_n is enumerated.
    #[arg(long, global = true, default_value_t = 8)]
    cap_enum: usize,
    /// Write the report to this file instead of standard output.
    #[arg(short = 'o', global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Rescaled α parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    a: Vec<String>,
    /// Rescaled β parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    b: Vec<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// Check involutivity, unitarity and the Yang–Baxter equation.
    Validate { file: PathBuf },
    /// The normal-form R-matrix with the given parameters.
    NormalForm {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// R ⊞ S.
    BoxSum { r: PathBuf, s: PathBuf },
    /// R ⊠ S.
    BoxTensor { r: PathBuf, s: PathBuf },
    /// Character values on cycles, from an R-matrix file or from parameters.
    Character {
        file: Option<PathBuf>,
        #[command(flatten)]
        params: ParamArgs,
        /// Tabulate χ(c_m) for 2 ≤ m ≤ n.
        #[arg(long)]
        n: Option<usize>,
        /// A single cycle length.
        #[arg(long)]
        cycle: Option<usize>,
        /// Normalised trace at a permutation in 1-based one-line notation.
        #[arg(long, value_delimiter = ',')]
        perm: Vec<usize>,
    },
    /// Extract Thoma parameters.
    Thoma {
        file: PathBuf,
        /// Assume every α parameter vanishes.
        #[arg(long)]
        alpha_zero: bool,
    },
    /// Homogeneous dimensions of F^{W_1} ⊗ … ⊗ F^{W_m} on C^k.
    Dims {
        #[arg(long, value_delimiter = ',')]
        b: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        v_dim: usize,
    },
    /// Invariant bases of F^R on C^k.
    BuildFunctor {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        v_dim: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Check that κ^n: ⊕ F_i(V1) ⊗ F_j(V2) → F_n(V1 ⊕ V2) is a scaled isometric bijection.
    CheckKappa {
        file: PathBuf,
        /// dim V1, dim V2.
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1, 1])]
        v_dim: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Check associativity of the monoidal structure.
    CheckAssoc {
        file: PathBuf,
        /// dim V1, dim V2, dim V3.
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1, 1, 1])]
        v_dim: Vec<usize>,
        /// Degrees i, j, k.
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1, 1, 1])]
        degrees: Vec<usize>,
    },
    /// Rebuild R from F^R(C²).
    Recover { file: PathBuf },
    /// Indecomposable characteristic-class coefficients.
    CharClasses {
        #[arg(long, value_delimiter = ',')]
        b: Vec<u64>,
        #[arg(long)]
        n: usize,
        /// The determinant twist instead of a parameter list.
        #[arg(long)]
        det: bool,
    },
    /// Decide unitary equivalence through cycle characters.
    Equiv {
        r: PathBuf,
        s: PathBuf,
        #[arg(long)]
        cutoff: Option<usize>,
    },
}

enum Failure {
    /// A mathematical check came out false.
    Check(String),
    /// Malformed input, invalid arguments or a refused size.
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// A finished report: the text to print and the exit status it implies.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, ok: true }
    }

    fn with_status(text: String, ok: bool) -> Self {
        Report { text, ok }
    }
}

fn load(path: &Path) -> Result<RMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_rmatrix(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn parse_params(args: &ParamArgs) -> Result<ThomaParams, Failure> {
    let conv = |v: &[String]| -> Result<Vec<Rational>, Failure> {
        v.iter().filter(|s| !s.is_empty()).map(|s| parse_rational(s.trim()).map_err(input)).collect()
    };
    ThomaParams::from_rationals(&conv(&args.a)?, &conv(&args.b)?).map_err(input)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialise")
}

fn ascending(v: &[u64]) -> Vec<u64> {
    v.iter().rev().copied().collect()
}

fn params_json(p: &ThomaParams) -> Value {
    json!({ "a": ascending(p.a()), "b": ascending(p.b()), "d": p.d() })
}

fn thoma_failure(e: ThomaError) -> Failure {
    match e {
        ThomaError::SizeCap(_) | ThomaError::SymGroup(_) | ThomaError::RMatrix(RMatrixError::SizeCap(_)) => input(e),
        ThomaError::NonIntegerParameter(_) | ThomaError::EmptyParameters => input(e),
        other => Failure::Check(other.to_string()),
    }
}

fn functor_failure(e: expfunctor::ExpFunctorError) -> Failure {
    use expfunctor::ExpFunctorError as E;
    match e {
        E::Thoma(t) => thoma_failure(t),
        E::SizeCap(_) | E::SymGroup(_) | E::RMatrix(_) | E::ZeroBlock | E::AlphaParametersPresent(_) => input(e),
        E::RecoveryPrecondition { .. } => input(e),
        other => Failure::Check(other.to_string()),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let g = &cli.global;
    let caps = Caps { dense: g.cap_dense, enumerate: g.cap_enum, ..Caps::default() };
    match &cli.verb {
        Verb::Validate { file } => {
            let text = fs::read_to_string(file).map_err(|e| input(format!("{}: {e}", file.display())))?;
            let (marks, ok, witness) = match parse_rmatrix(&text) {
                Ok(_) => (["✓", "✓", "✓"], true, None),
                Err(RMatrixFileError::Format(e)) => return Err(input(format!("{}: {e}", file.display()))),
                Err(RMatrixFileError::Invalid(e)) => match &e {
                    RMatrixError::NotInvolutive(w) => (["✗", "-", "-"], false, Some(w.to_string())),
                    RMatrixError::NotUnitary(w) => (["✓", "✗", "-"], false, Some(w.to_string())),
                    RMatrixError::YangBaxterFails(w) => (["✓", "✓", "✗"], false, Some(w.to_string())),
                    _ => return Err(input(e)),
                },
            };
            if g.json {
                let v = json!({
                    "involutive": marks[0] == "✓",
                    "unitary": marks[1] == "✓",
                    "ybe": marks[2] == "✓",
                    "witness": witness,
                });
                return Ok(Report::with_status(pretty(&v), ok));
            }
            let mut text = format!("involutive {} unitary {} YBE {}", marks[0], marks[1], marks[2]);
            if let Some(w) = witness {
                text.push_str(&format!("\nwitness: {w}"));
            }
            Ok(Report::with_status(text, ok))
        }
        Verb::NormalForm { params } => {
            let r = normal_form(&parse_params(params)?).map_err(input)?;
            Ok(Report::ok(pretty(&rmatrix_to_json(&r))))
        }
        Verb::BoxSum { r, s } => Ok(Report::ok(pretty(&rmatrix_to_json(&box_sum(&load(r)?, &load(s)?))))),
        Verb::BoxTensor { r, s } => Ok(Report::ok(pretty(&rmatrix_to_json(&box_tensor(&load(r)?, &load(s)?))))),
        Verb::Character { file, params, n, cycle, perm } => {
            let r = file.as_deref().map(load).transpose()?;
            if !perm.is_empty() {
                let r = r.ok_or_else(|| input("--perm needs an R-matrix file"))?;
                let sigma = Permutation::from_one_line(perm).map_err(input)?;
                let chi = thoma::character(&r, &sigma, &caps).map_err(thoma_failure)?;
                let text = if g.json {
                    pretty(&json!({ "perm": perm, "chi": format_rational(&chi) }))
                } else {
                    format!("χ({sigma}) = {chi}")
                };
                return Ok(Report::ok(text));
            }
            let lengths: Vec<usize> = match (n, cycle) {
                (_, Some(c)) => vec![*c],
                (Some(n), None) => (2..=*n).collect(),
                (None, None) => return Err(input("one of --n, --cycle or --perm is required")),
            };
            let values: Vec<(usize, Rational)> = match &r {
                Some(r) => lengths
                    .iter()
                    .map(|&m| character_cycle(r, m).map(|x| (m, x)))
                    .collect::<Result<_, _>>()
                    .map_err(thoma_failure)?,
                None => {
                    let p = parse_params(params)?;
                    lengths.iter().map(|&m| (m, eval_character(&p, m))).collect()
                }
            };
            if g.json {
                let rows: Vec<Value> = values.iter().map(|(m, x)| json!({ "n": m, "chi": format_rational(x) })).collect();
                return Ok(Report::ok(pretty(&Value::Array(rows))));
            }
            let width = values.iter().map(|(m, _)| m.to_string().len()).max().unwrap_or(1).max(1);
            let lines: Vec<String> = values.iter().map(|(m, x)| format!("{m:>width$}  {x}")).collect();
            Ok(Report::ok(format!("{:>width$}  χ(c_n)\n{}", "n", lines.join("\n"))))
        }
        Verb::Thoma { file, alpha_zero } => {
            let p = extract(&load(file)?, *alpha_zero).map_err(thoma_failure)?;
            if g.json {
                return Ok(Report::ok(pretty(&params_json(&p))));
            }
            Ok(Report::ok(p.to_string()))
        }
        Verb::Dims { b, v_dim } => {
            let table = fw_table(&FunctorSpec::new(b.clone()).map_err(input)?, *v_dim);
            Ok(Report::ok(dims_report(g.json, &table)))
        }
        Verb::BuildFunctor { file, v_dim, max_n } => {
            let model = build_model(&load(file)?, *v_dim, *max_n, &caps).map_err(functor_failure)?;
            let dims: Vec<u128> = model.dims().iter().map(|&x| x as u128).collect();
            if g.json {
                let bases: Vec<Value> = (0..=model.max_n())
                    .map(|n| model.basis_matrix(n, &caps).map(|m| matrix_to_json(&m)))
                    .collect::<Result<_, _>>()
                    .map_err(functor_failure)?;
                let v = json!({ "b": ascending(model.params().b()), "v_dim": v_dim, "dims": model.dims(), "bases": bases });
                return Ok(Report::ok(pretty(&v)));
            }
            Ok(Report::ok(dims_report(false, &dims)))
        }
        Verb::CheckKappa { file, v_dim, n } => {
            let [v1, v2] = v_dim[..] else {
                return Err(input("--v-dim takes two dimensions for check-kappa"));
            };
            let rep = check_kappa_iso(&load(file)?, v1, v2, *n, &caps).map_err(functor_failure)?;
            if g.json {
                let blocks: Vec<Value> = rep
                    .blocks
                    .iter()
                    .map(|b| {
                        json!({
                            "i": b.i, "j": b.j, "domain_dim": b.domain_dim,
                            "isometry_constant": b.isometry_constant.as_ref().map(format_rational),
                        })
                    })
                    .collect();
                let v = json!({
                    "n": rep.n, "fixed_dim": rep.fixed_dim, "image_rank": rep.image_rank,
                    "blocks": blocks, "failures": rep.failures, "passed": rep.passed(),
                });
                return Ok(Report::with_status(pretty(&v), rep.passed()));
            }
            let mut lines: Vec<String> = rep
                .blocks
                .iter()
                .map(|b| {
                    let c = b.isometry_constant.as_ref().map_or("-".to_string(), format_rational);
                    format!("Φ_{{{},{}}}: domain {} isometry constant {}", b.i, b.j, b.domain_dim, c)
                })
                .collect();
            lines.push(format!("dim F_{}(V1⊕V2) = {}, image rank {}", rep.n, rep.fixed_dim, rep.image_rank));
            lines.extend(rep.failures.iter().map(|f| format!("FAIL {f}")));
            lines.push(if rep.passed() { "κ ✓".into() } else { "κ ✗".into() });
            Ok(Report::with_status(lines.join("\n"), rep.passed()))
        }
        Verb::CheckAssoc { file, v_dim, degrees } => {
            let (&[v1, v2, v3], &[i, j, k]) = (v_dim.as_slice(), degrees.as_slice()) else {
                return Err(input("--v-dim and --degrees take three values each for check-assoc"));
            };
            let rep = check_associativity(&load(file)?, (v1, v2, v3), (i, j, k), &caps).map_err(functor_failure)?;
            if g.json {
                let v = json!({ "checked": rep.checked, "holds": rep.holds(), "mismatch": rep.mismatch });
                return Ok(Report::with_status(pretty(&v), rep.holds()));
            }
            let text = match rep.mismatch {
                None => format!("associativity ✓ ({} basis triples)", rep.checked),
                Some((a, b, c)) => format!("associativity ✗ at basis triple ({a}, {b}, {c})"),
            };
            Ok(Report::with_status(text, rep.holds()))
        }
        Verb::Recover { file } => {
            let r = load(file)?;
            let model = build_model(&r, 2, 2, &caps).map_err(functor_failure)?;
            let m = recover_r(&model, &caps).map_err(functor_failure)?;
            if g.json {
                return Ok(Report::ok(pretty(&json!({ "recovered": matrix_to_json(&m), "matches": true }))));
            }
            Ok(Report::ok(format!("recovered R matches input ✓\n{}", m.to_string().trim_end())))
        }
        Verb::CharClasses { b, n, det } => {
            if *n < 2 {
                return Err(input("--n must be at least 2"));
            }
            if b.contains(&0) {
                return Err(input("--b entries must be positive"));
            }
            let coeffs = if *det { det_twist_coeffs(*n) } else { delta_indecomposable(b, *n) };
            if g.json {
                let v: Vec<Value> = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| json!({ "generator": generator_label(i + 1), "coefficient": format_rational(c) }))
                    .collect();
                return Ok(Report::ok(pretty(&Value::Array(v))));
            }
            let parts: Vec<String> =
                coeffs.iter().enumerate().map(|(i, c)| format!("{}: {}", generator_label(i + 1), c)).collect();
            Ok(Report::ok(parts.join(", ")))
        }
        Verb::Equiv { r, s, cutoff } => {
            let (r, s) = (load(r)?, load(s)?);
            let cutoff = cutoff.unwrap_or(2 * r.d().max(s.d()));
            let eq = equivalent(&r, &s, cutoff).map_err(input)?;
            if g.json {
                return Ok(Report::with_status(pretty(&json!({ "equivalent": eq, "cutoff": cutoff })), eq));
            }
            Ok(Report::with_status(format!("equivalent: {eq} (cutoff {cutoff})"), eq))
        }
    }
}

fn dims_report(json: bool, dims: &[u128]) -> String {
    if json {
        return pretty(&json!(dims.iter().map(|&x| x as u64).collect::<Vec<_>>()));
    }
    let dims: Vec<String> = dims.iter().map(u128::to_string).collect();
    let width = dims.iter().map(String::len).max().unwrap_or(1).max(dims.len().saturating_sub(1).to_string().len());
    let lines: Vec<String> = dims.iter().enumerate().map(|(n, x)| format!("{n:>width$}  {x:>width$}")).collect();
    format!("{:>width$}  {:>width$}\n{}", "n", "dim", lines.join("\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let (text, code) = match outcome {
        Ok(rep) => (rep.text, if rep.ok { 0 } else { 1 }),
        Err(f) => {
            let code = f.code();
            let (Failure::Check(m) | Failure::Input(m)) = f;
            eprintln!("error: {m}");
            return ExitCode::from(code);
        }
    };
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = fs::write(path, format!("{text}\n")) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(code)
}
