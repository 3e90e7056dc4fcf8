use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qfejer_core::algebra::DEFAULT_PROBE_WINDOW;
use qfejer_core::expr;
use qfejer_core::fejer::{cesaro_mean, commutant_probe, convergence_report, fejer_sum};
use qfejer_core::folner::DEFAULT_KERNEL_BUDGET;
use qfejer_core::gauge::{degree_support, fourier_coeff, reconstruct, GradedDecomposition};
use qfejer_core::json::element_to_json;
use qfejer_core::psd::{psd_certificate, PsdOutcome};
use qfejer_core::{thompson, Element, Error, FolnerSequence, HElem, Rational, SystemDescriptor};
use serde_json::{json, Value};

/// Exact calculus in boundary quotient algebras over ℤ: evaluation, equality,
/// Fourier coefficients and Fejér summation.
#[derive(Parser)]
#[command(name = "qfejer", version)]
struct Cli {
    /// q2, qp:<base> or qn
    #[arg(long, global = true, default_value = "q2")]
    system: SystemDescriptor,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Width of the basis-vector window used by norm probes
    #[arg(long, global = true, env = "QFEJER_PROBE_WINDOW", default_value_t = DEFAULT_PROBE_WINDOW)]
    probe_window: i64,
    /// Largest set enumeration allowed for kernels and supports
    #[arg(long, global = true, env = "QFEJER_KERNEL_BUDGET", default_value_t = DEFAULT_KERNEL_BUDGET)]
    kernel_budget: u128,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression to canonical form (`-` reads standard input)
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide equality of two expressions
    Eq {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Fourier coefficient F_(p,q)
    Fourier {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Degree support and graded components
    Decompose { expr: String },
    /// Rebuild from Fourier coefficients and check the result
    Reconstruct { expr: String },
    /// Fejér sum S_n
    Fejer {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        n: usize,
    },
    /// Cesàro mean of S_0 … S_{N-1}
    Cesaro {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long = "N", short = 'N')]
        count: usize,
    },
    /// Convergence report for n = 0 … nmax
    Report {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        csv: bool,
    },
    /// φ_n(h) for the system's default Følner sequence
    Phi {
        #[arg(long)]
        n: usize,
        /// `i` or `i1,i2,...`
        #[arg(long, allow_hyphen_values = true)]
        h: HElem,
    },
    /// Coefficients of the Fejér kernel K_n
    Kernel {
        #[arg(long)]
        n: usize,
    },
    /// Certify that the φ_n Gram matrix of a sample is positive semidefinite
    Psd {
        #[arg(long)]
        n: usize,
        /// H-elements separated by `;`, e.g. `0;1;-2` or `1,0;0,1`
        #[arg(long, value_delimiter = ';', allow_hyphen_values = true, required = true)]
        sample: Vec<HElem>,
    },
    /// Image of the basis vector δ_k
    Apply {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Relative-commutant probe against the listed generators
    Commutes {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<i64>,
    },
    /// Print a built-in Thompson generator
    Thompson { which: Generator },
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    X0,
    X1,
}

/// Plain text and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
}

fn rat(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn element_out(e: &Element) -> Value {
    json!({ "text": e.to_string(), "element": element_to_json(e) })
}

fn read_expr(src: &str, sys: SystemDescriptor) -> Result<Element, Error> {
    if src == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidElement(e.to_string()))?;
        expr::evaluate(&buf, sys)
    } else {
        expr::evaluate(src, sys)
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let sys = cli.system;
    let fs = FolnerSequence::for_system(sys);
    let single = |e: Element| Output {
        text: e.to_string(),
        json: element_out(&e),
    };
    Ok(match &cli.cmd {
        Cmd::Eval { expr } => single(read_expr(expr, sys)?),
        Cmd::Thompson { which } => single(match which {
            Generator::X0 => thompson::x0(),
            Generator::X1 => thompson::x1(),
        }),
        Cmd::Eq { left, right } => {
            let equal = read_expr(left, sys)?.equals(&read_expr(right, sys)?)?;
            Output {
                text: if equal { "equal" } else { "not equal" }.into(),
                json: json!({ "equal": equal }),
            }
        }
        Cmd::Fourier { expr, p, q } => single(fourier_coeff(&read_expr(expr, sys)?, *p, *q)?),
        Cmd::Decompose { expr } => {
            let a = read_expr(expr, sys)?;
            let support: Vec<String> = degree_support(&a).iter().map(|d| d.to_string()).collect();
            let dec = GradedDecomposition::of(&a);
            let mut text = format!("support: {}\n", support.join(" "));
            let mut comps = Vec::new();
            for (d, c) in dec.components() {
                text.push_str(&format!("{d}: {c}\n"));
                comps.push(json!({ "degree": d.to_string(), "text": c.to_string(), "element": element_to_json(c) }));
            }
            Output {
                text: text.trim_end().into(),
                json: json!({ "support": support, "components": comps }),
            }
        }
        Cmd::Reconstruct { expr } => {
            let a = read_expr(expr, sys)?;
            let r = reconstruct(&a)?;
            let verified = r.equals(&a)?;
            Output {
                text: format!("{r}\nverified: {verified}"),
                json: json!({ "result": element_out(&r), "verified": verified }),
            }
        }
        Cmd::Fejer { expr, n } => single(fejer_sum(&read_expr(expr, sys)?, &fs, *n)?),
        Cmd::Cesaro { expr, count } => single(cesaro_mean(&read_expr(expr, sys)?, &fs, *count)?),
        Cmd::Report { expr, nmax, csv } => {
            let r = convergence_report(&read_expr(expr, sys)?, &fs, *nmax, cli.probe_window)?;
            let text = if *csv {
                r.to_csv().trim_end().to_string()
            } else {
                let mut t = format!("{:>5}  {:>24}  {:>24}  exact", "n", "B_n", "lower_sq");
                for row in &r.rows {
                    t.push_str(&format!(
                        "\n{:>5}  {:>24}  {:>24}  {}",
                        row.n,
                        rat(&row.bound),
                        rat(&row.lower_sq),
                        row.exact_equal
                    ));
                }
                t
            };
            Output {
                text,
                json: serde_json::to_value(&r).expect("serialisable"),
            }
        }
        Cmd::Phi { n, h } => {
            let v = fs.phi(*n, h)?;
            Output {
                text: v.to_string(),
                json: json!({ "n": n, "h": h.to_string(), "value": rat(&v) }),
            }
        }
        Cmd::Kernel { n } => {
            let k = fs.kernel(*n, cli.kernel_budget)?;
            let terms: Vec<Value> = k
                .to_json()
                .into_iter()
                .map(|(h, c)| json!({ "h": h, "coeff": c }))
                .collect();
            Output {
                text: k.to_string().trim_end().into(),
                json: json!({ "n": n, "terms": terms }),
            }
        }
        Cmd::Psd { n, sample } => {
            let names: Vec<String> = sample.iter().map(HElem::to_string).collect();
            match psd_certificate(&fs, *n, sample)? {
                PsdOutcome::Psd(ldl) => {
                    let diag: Vec<String> = ldl.diag.iter().map(rat).collect();
                    Output {
                        text: format!("psd (rank {}, pivots {})", ldl.rank(), diag.join(" ")),
                        json: json!({ "n": n, "sample": names, "psd": true, "rank": ldl.rank(), "pivots": diag }),
                    }
                }
                PsdOutcome::NotPsd { witness, value } => {
                    let w: Vec<String> = witness.iter().map(rat).collect();
                    Output {
                        text: format!("not psd: witness ({}) gives {}", w.join(", "), rat(&value)),
                        json: json!({ "n": n, "sample": names, "psd": false, "witness": w, "value": rat(&value) }),
                    }
                }
            }
        }
        Cmd::Apply { expr, k } => {
            let v = read_expr(expr, sys)?.apply(&qfejer_core::SparseVec::delta(*k));
            let image: Vec<Value> = v
                .entries()
                .map(|(i, c)| json!({ "index": i, "coeff": c.to_string() }))
                .collect();
            Output {
                text: v.to_string(),
                json: json!({ "k": k, "image": image }),
            }
        }
        Cmd::Commutes { expr, gens } => {
            let r = commutant_probe(&read_expr(expr, sys)?, gens)?;
            let degrees: Vec<String> = r.offending_degrees.iter().map(|d| d.to_string()).collect();
            Output {
                text: format!(
                    "commutes: {}\noffending degrees: {}\nscalar part: {}",
                    r.commutes,
                    if degrees.is_empty() { "none".into() } else { degrees.join(" ") },
                    r.scalar_part
                ),
                json: json!({
                    "commutes": r.commutes,
                    "offending_degrees": degrees,
                    "scalar_part": r.scalar_part.to_string(),
                }),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                eprintln!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::FAILURE
        }
    }
}
