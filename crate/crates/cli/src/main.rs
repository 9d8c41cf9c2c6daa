use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dra::algebra::{is_anticentral, is_central, theta, AlgebraElement};
use dra::distinguished::{element_by_name, f_n_closed, f_n_oracle, f_n_recursive, FnFamily};
use dra::harish_chandra::{functional_equation_check, hc_project};
use dra::json::{decomposition_to_json, element_to_json, irrep_to_json, scalar_to_json};
use dra::linalg::Matrix;
use dra::osp::{decompose, TensorVector};
use dra::suite::{run_suite, Suite};
use dra::text::{parse_expression, parse_rational, parse_scalar};
use dra::verma::{build_irrep, gram_matrix, HighestWeight, IrrepData};

#[derive(Parser)]
#[command(name = "dra", version, about = "Exact computations in the diagonal reduction superalgebra of osp(1|2)")]
struct Cli {
    /// Print generators as x₋₂α, x₋α, h, xα, x₂α
    #[arg(long, global = true)]
    unicode: bool,
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its normal form
    Normalize { expr: String },
    /// Normal form of the product of two expressions
    Multiply { left: String, right: String },
    /// Apply the anti-automorphism Theta
    Theta { expr: String },
    /// Harish-Chandra projection of a weight-zero element
    Hc { expr: String },
    /// Check the functional equation of a ghost-central element
    GhostCheck {
        expr: String,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        eps: i64,
    },
    /// Print a named element: C1, C2, Q2, hhat, Xm2hat, ...
    Element { name: String },
    /// The polynomial F_n
    Fn {
        n: u32,
        #[arg(long, group = "method")]
        oracle: bool,
        #[arg(long, group = "method")]
        recursive: bool,
        #[arg(long, group = "method")]
        closed: bool,
    },
    /// Gram matrix of Xm1^k v, k < size
    Shapovalov {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        size: usize,
    },
    /// Matrices of the finite-dimensional irrep L(lambda, mu)
    Irrep {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Singular vectors of C[x] ⊗ V(-ell)
    TensorDecompose {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Run a verification suite
    Suite {
        #[arg(value_parser = suite_name)]
        name: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Latex,
}

fn suite_name(s: &str) -> Result<Suite, String> {
    Suite::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// A computation or check did not succeed: exit code 1.
    Failed(String),
}

type Outcome = Result<bool, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> Failure {
    Failure::Failed(e.to_string())
}

struct Printer {
    unicode: bool,
    json: bool,
}

impl Printer {
    fn element(&self, a: &AlgebraElement) {
        if self.json {
            println!("{}", element_to_json(a));
        } else {
            println!("{}", a.render(self.unicode));
        }
    }

    fn value(&self, v: Value) {
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    }
}

/// An expression, or the name of a distinguished element such as `C1`.
fn parse(text: &str) -> Result<AlgebraElement, Failure> {
    element_by_name(text.trim())
        .map_or_else(|| parse_expression(text), Ok)
        .map_err(usage)
}

fn run(cli: Cli) -> Outcome {
    let out = Printer {
        unicode: cli.unicode,
        json: cli.json,
    };
    match cli.command {
        Command::Normalize { expr } => out.element(&parse(&expr)?),
        Command::Multiply { left, right } => {
            out.element(&dra::algebra::diamond(&parse(&left)?, &parse(&right)?))
        }
        Command::Theta { expr } => out.element(&theta(&parse(&expr)?)),
        Command::Hc { expr } => {
            let image = hc_project(&parse(&expr)?).map_err(failed)?;
            if out.json {
                out.value(json!({
                    "h": image.value.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
                    "hhat": image.in_hhat().coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
                }));
            } else {
                println!("phi = {}", image.value);
                println!("    = {}", image.in_hhat());
                if let Ok(g) = image.to_ghost() {
                    println!("ghost: {g}");
                }
            }
        }
        Command::GhostCheck { expr, n, eps } => {
            if eps != 1 && eps != -1 {
                return Err(usage("--eps must be +1 or -1"));
            }
            let z = parse(&expr)?;
            let parity = if is_central(&z).map_err(failed)? {
                0
            } else if is_anticentral(&z).map_err(failed)? {
                1
            } else {
                return Err(failed("element is neither central nor anti-central"));
            };
            let ok = functional_equation_check(&z, parity, n, eps).map_err(|e| match e {
                dra::harish_chandra::HcError::EvenShift => usage(e),
                e => failed(e),
            })?;
            let kind = if parity == 0 { "central" } else { "anti-central" };
            if out.json {
                out.value(json!({"kind": kind, "n": n, "eps": eps, "holds": ok}));
            } else {
                println!("{kind}; functional equation at n = {n}, eps = {eps:+}: {}", if ok { "holds" } else { "fails" });
            }
            return Ok(ok);
        }
        Command::Element { name } => {
            let a = element_by_name(&name).ok_or_else(|| usage(format!("unknown element `{name}`")))?;
            out.element(&a);
        }
        Command::Fn { n, oracle, recursive, .. } => {
            let family: FnFamily = if oracle {
                f_n_oracle(n).map_err(failed)?
            } else if recursive {
                f_n_recursive(n).map_err(failed)?
            } else {
                f_n_closed(n)
            };
            if out.json {
                out.value(json!({
                    "n": n,
                    "hhat": family.value.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
                }));
            } else {
                println!("F_{n} = {}", family.value);
            }
        }
        Command::Shapovalov { lambda, size } => {
            let weight = HighestWeight::new(parse_scalar(&lambda).map_err(usage)?);
            let gram = gram_matrix(&weight, size);
            if out.json {
                out.value(Value::Array(
                    gram.iter()
                        .map(|row| Value::Array(row.iter().map(scalar_to_json).collect()))
                        .collect(),
                ));
            } else {
                for (k, row) in gram.iter().enumerate() {
                    println!("<Xm1^{k} v, Xm1^{k} v> = {}", row[k]);
                }
            }
        }
        Command::Irrep { lambda, mu, emit } => {
            let lambda = parse_rational(&lambda).map_err(usage)?;
            let mu = parse_rational(&mu).map_err(usage)?;
            let data = build_irrep(&lambda, &mu).map_err(failed)?;
            match emit {
                Some(Emit::Json) => out.value(irrep_to_json(&data)),
                Some(Emit::Latex) => print!("{}", irrep_latex(&data)),
                None if out.json => out.value(irrep_to_json(&data)),
                None => print!("{}", irrep_text(&data)),
            }
        }
        Command::TensorDecompose { ell, max_degree, emit } => {
            let report = decompose(ell, max_degree).map_err(usage)?;
            if out.json || matches!(emit, Some(Emit::Json)) {
                out.value(decomposition_to_json(&report));
            } else if matches!(emit, Some(Emit::Latex)) {
                return Err(usage("tensor-decompose emits text or json"));
            } else {
                println!(
                    "C[x] ⊗ V(-{ell}) up to degree {max_degree}: lambda = {}, mu = {}",
                    report.lambda, report.mu
                );
                for (j, v) in report.singular_vectors.iter().enumerate() {
                    println!("S^{j}(1 ⊗ v) = {}", tensor_text(v));
                }
                println!(
                    "singular: {}, oracle count: {}, graded dimensions match: {}",
                    report.all_singular,
                    report.oracle_count,
                    report.graded_dimensions_match()
                );
            }
            return Ok(report.passed());
        }
        Command::Suite { name } => {
            let report = run_suite(name);
            if out.json {
                out.value(report.to_json());
            } else {
                println!("{report}");
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn tensor_text(v: &TensorVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, ((k, j), c)) in v.coeffs.iter().enumerate() {
        if i > 0 {
            s.push_str(" + ");
        }
        let _ = write!(s, "({c}) x^{k} ⊗ e_{j}");
    }
    s
}

fn irrep_text(data: &IrrepData) -> String {
    let mut s = format!("L({}, {}), dimension {}\n", data.lambda, data.mu, data.n);
    let mut block = |name: &str, m: &Matrix| {
        let _ = writeln!(s, "{name}:");
        for row in m {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "  [{}]", cells.join(", "));
        }
    };
    for g in dra::algebra::Generator::ALL {
        block(g.ascii(), data.generator_matrix(g));
    }
    block("H", &data.h_matrix);
    s
}

fn latex_rational(c: &dra::scalar::Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else if c < &dra::scalar::int(0) {
        format!("-\\frac{{{}}}{{{}}}", -c.numer(), c.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn irrep_latex(data: &IrrepData) -> String {
    let names = ["x_{-2\\alpha}", "x_{-\\alpha}", "h", "x_{\\alpha}", "x_{2\\alpha}"];
    let mut s = String::new();
    let mut block = |name: &str, m: &Matrix| {
        let rows: Vec<String> = m
            .iter()
            .map(|row| row.iter().map(latex_rational).collect::<Vec<_>>().join(" & "))
            .collect();
        let _ = writeln!(s, "{name} = \\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "));
    };
    for (g, name) in dra::algebra::Generator::ALL.into_iter().zip(names) {
        block(name, data.generator_matrix(g));
    }
    block("H", &data.h_matrix);
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
