//! Command-line front end: expression normalization, pairing evaluation,
//! actions, Hopf-structure maps, module decomposition and verification
//! suites over exact scalars.

mod eval;
mod expr;
mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eval::{eval, render_value, AlgebraCtx, Context, Value};
use qboson_core::category_o::{module_from_json, Decomposition};
use qboson_core::lattice::CartanData;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "qboson", about = "exact computation in q-Boson and quantized Weyl algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Cartan preset: A1, A2 or B2.
    #[arg(long = "type", default_value = "A1")]
    cartan_type: String,
    /// Algebra tag: uq+, uq-, uq, bq, wq, bq--, bq++, dphi or hphi.
    #[arg(long, default_value = "wq")]
    algebra: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its normal form.
    Normalize {
        #[command(flatten)]
        ctx: AlgebraArgs,
        expr: String,
    },
    /// Evaluate the Hopf pairing of two brick elements.
    Pair {
        #[command(flatten)]
        ctx: AlgebraArgs,
        left: String,
        right: String,
    },
    /// Act by a quantum-group element on a target expression.
    Act {
        #[command(flatten)]
        ctx: AlgebraArgs,
        actor: String,
        target: String,
    },
    /// Coproduct of a brick element (braided with --braided).
    Delta {
        #[command(flatten)]
        ctx: AlgebraArgs,
        #[arg(long)]
        braided: bool,
        expr: String,
    },
    /// Antipode of a brick element (braided with --braided).
    Antipode {
        #[command(flatten)]
        ctx: AlgebraArgs,
        #[arg(long)]
        braided: bool,
        expr: String,
    },
    /// Extremal projector applied to a module vector.
    Project {
        /// Module file (JSON).
        #[arg(long)]
        module: PathBuf,
        expr: String,
    },
    /// Comodule expansion of a module vector.
    Rho {
        #[arg(long)]
        module: PathBuf,
        expr: String,
    },
    /// Decompose a module file into simple blocks.
    Decompose { file: PathBuf },
    /// Run a named verification suite.
    Verify {
        /// hopf-axioms, pairing, yd, braiding, module-algebra or projector.
        #[arg(long)]
        suite: String,
        #[arg(long = "type", default_value = "A1")]
        cartan_type: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn degree_cap() -> Option<usize> {
    std::env::var("QBOSON_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
}

/// A preset name, or a path to a JSON file with `cartan` and `symmetrizers`.
fn load_cartan(type_arg: &str) -> Result<Arc<CartanData>, String> {
    match CartanData::preset(type_arg) {
        Ok(c) => Ok(Arc::new(c)),
        Err(preset_err) => {
            let Ok(text) = std::fs::read_to_string(type_arg) else {
                return Err(preset_err.to_string());
            };
            #[derive(serde::Deserialize)]
            struct CartanFile {
                cartan: Vec<Vec<i64>>,
                symmetrizers: Vec<i64>,
            }
            let file: CartanFile =
                serde_json::from_str(&text).map_err(|e| format!("{type_arg}: {e}"))?;
            CartanData::new(file.cartan, file.symmetrizers)
                .map(Arc::new)
                .map_err(|e| e.to_string())
        }
    }
}

fn make_context(args: &AlgebraArgs) -> Result<Context, String> {
    let cartan = load_cartan(&args.cartan_type)?;
    let algebra = AlgebraCtx::parse_name(&args.algebra)
        .ok_or_else(|| format!("unknown algebra '{}'", args.algebra))?;
    Ok(Context::new(cartan, algebra))
}

fn module_context(path: &PathBuf) -> Result<Context, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let (module, cartan) = module_from_json(&text).map_err(|e| e.to_string())?;
    let mut ctx = Context::new(cartan, AlgebraCtx::Element(qboson_core::algebra::AlgebraTag::Wq));
    ctx.module = Some(module);
    Ok(ctx)
}

fn eval_in(ctx: &Context, text: &str) -> Result<Value, String> {
    let ast = expr::parse_expr(text).map_err(|e| e.to_string())?;
    eval(ctx, &ast).map_err(|e| e.to_string())
}

fn print_value(format: Format, value: &Value) {
    match format {
        Format::Text => println!("{}", render_value(value)),
        Format::Json => {
            let body = serde_json::json!({
                "type": value.type_name(),
                "value": render_value(value),
            });
            println!("{body}");
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Normalize { ctx, expr } => {
            let context = make_context(&ctx)?;
            let value = eval_in(&context, &expr)?;
            print_value(cli.format, &value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Pair { ctx, left, right } => {
            let context = make_context(&ctx)?;
            let value = eval_in(&context, &format!("pair(({left}), ({right}))"))?;
            print_value(cli.format, &value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Act { ctx, actor, target } => {
            let context = make_context(&ctx)?;
            let value = eval_in(&context, &format!("act(({actor}); ({target}))"))?;
            print_value(cli.format, &value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Delta { ctx, braided, expr } => {
            let mut context = make_context(&ctx)?;
            context.braided = braided;
            let value = eval_in(&context, &format!("delta(({expr}))"))?;
            print_value(cli.format, &value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Antipode { ctx, braided, expr } => {
            let mut context = make_context(&ctx)?;
            context.braided = braided;
            let value = eval_in(&context, &format!("S(({expr}))"))?;
            print_value(cli.format, &value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Project { module, expr } => {
            let context = module_context(&module)?;
            let value = eval_in(&context, &format!("P(({expr}))"))?;
            print_value(cli.format, &value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Rho { module, expr } => {
            let context = module_context(&module)?;
            let value = eval_in(&context, &format!("rho(({expr}))"))?;
            print_value(cli.format, &value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { file } => {
            let context = module_context(&file)?;
            let module = context.module.as_ref().unwrap();
            match module.decompose(&context.session) {
                Ok(d) => {
                    print_decomposition(cli.format, &d);
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    // a module that fails its structural checks is a
                    // verification failure, not an input error
                    match cli.format {
                        Format::Text => println!("decomposition failed: {e}"),
                        Format::Json => {
                            println!("{}", serde_json::json!({ "error": e.to_string() }))
                        }
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Verify {
            suite,
            cartan_type,
            max_degree,
        } => {
            let capped = degree_cap()
                .map(|cap| max_degree.min(cap))
                .unwrap_or(max_degree);
            let cartan = load_cartan(&cartan_type)?;
            let checks = suites::run_suite(&suite, &cartan, capped)?;
            let passed = checks.iter().filter(|c| c.pass).count();
            match cli.format {
                Format::Text => {
                    for c in &checks {
                        println!("{} {}", if c.pass { "ok  " } else { "FAIL" }, c.name);
                    }
                    println!("passed {passed} of {}", checks.len());
                }
                Format::Json => {
                    let body = serde_json::json!({
                        "suite": suite,
                        "type": cartan_type,
                        "max_degree": capped,
                        "checks": checks
                            .iter()
                            .map(|c| serde_json::json!({ "name": c.name, "pass": c.pass }))
                            .collect::<Vec<_>>(),
                        "passed": passed,
                        "total": checks.len(),
                    });
                    println!("{body}");
                }
            }
            if passed == checks.len() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn print_decomposition(format: Format, d: &Decomposition) {
    let mults: BTreeMap<String, usize> = d
        .multiplicities
        .iter()
        .map(|(w, m)| (w.to_string(), *m))
        .collect();
    match format {
        Format::Text => {
            println!("multiplicities:");
            for (w, m) in &mults {
                println!("  {w}: {m}");
            }
            println!("maximal vectors:");
            for basis in d.kernel_basis.values() {
                for v in basis {
                    println!("  {}", eval::render_vector(v));
                }
            }
            println!(
                "isomorphism verified on {} vectors ({} skipped at the boundary)",
                d.verified_vectors, d.skipped_vectors
            );
        }
        Format::Json => {
            let kernel: BTreeMap<String, Vec<String>> = d
                .kernel_basis
                .iter()
                .map(|(c, basis)| {
                    (
                        c.to_string(),
                        basis.iter().map(eval::render_vector).collect(),
                    )
                })
                .collect();
            let body = serde_json::json!({
                "multiplicities": mults,
                "kernel_basis": kernel,
                "verified_vectors": d.verified_vectors,
                "skipped_vectors": d.skipped_vectors,
            });
            println!("{body}");
        }
    }
}
