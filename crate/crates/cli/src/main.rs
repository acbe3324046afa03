use std::io::Write;
use std::process::ExitCode;

use atl_core::expr::parse_element;
use atl_core::homs::{apply_e, apply_f, apply_psi, check_commuting_diagram, conjugation_report, incl};
use atl_core::markov::reduce_trace_to_markov;
use atl_core::trace::{check_jones_markov, check_markov_axioms, check_psi_invariance, check_trace_property, jones_tau, rho};
use atl_core::{enumerate_fc, suites, Basis, Element, Error, Report, Result, System};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const SCHEMA: &str = "atl/1";

#[derive(Parser)]
#[command(name = "atl", version, about = "Exact computations in finite and affine Temperley-Lieb algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Algebra index: TL_n, or TL-hat_n with --affine
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,

    #[arg(long, global = true)]
    affine: bool,

    /// Output basis for elements
    #[arg(long, global = true, default_value = "g", value_parser = parse_basis)]
    basis: Basis,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[arg(long, global = true)]
    max_len: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression
    Nf { expr: String },
    /// Product of the expressions, left to right
    Mul {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Inverse of a scalar multiple of a monomial
    Inv { expr: String },
    /// tau on TL_n or rho on TL-hat_n
    Trace {
        #[arg(long = "type", value_enum)]
        kind: TraceKind,
        expr: String,
    },
    /// Apply F (TL-hat_n -> TL-hat_{n+1}), E (TL-hat_{n+1} -> TL_n), incl (TL_n -> TL-hat_{n+1})
    /// or psi (on TL-hat_n)
    Map {
        #[arg(long, value_enum)]
        apply: MapArg,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
        expr: String,
    },
    /// Rewrite an element of TL-hat_3 into Markov elements, valid under every trace
    ReduceMarkov { expr: String },
    /// Run a verification suite; exits 1 on any failed check
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// List fully commutative heaps
    Enumerate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceKind {
    Tau,
    Rho,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    #[value(name = "F")]
    F,
    #[value(name = "E")]
    E,
    Psi,
    Incl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Relations,
    Basis,
    Oracle,
    Jones,
    MarkovAxioms,
    Homs,
    Markov,
    Solver,
}

fn parse_basis(s: &str) -> std::result::Result<Basis, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Output {
    json: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), failed: false }
    }
}

fn affine_of(n: usize) -> Result<System> {
    if n < 2 {
        return Err(Error::Usage("affine algebras need --n >= 2".into()));
    }
    Ok(System::affine(n - 1))
}

fn selected_system(cli: &Cli) -> Result<System> {
    let n = cli.n as usize;
    if cli.affine {
        affine_of(n)
    } else {
        Ok(System::finite(n))
    }
}

fn element_output(x: &Element, basis: Basis) -> Result<Output> {
    let x = x.to_basis(basis)?;
    Ok(Output::ok(json!({ "element": x.to_json_value(), "text": x.to_text() }), x.to_text()))
}

fn verify(cli: &Cli, suite: Suite, samples: usize) -> Result<Output> {
    let n = cli.n as usize;
    let len = |default| cli.max_len.unwrap_or(default);
    let mut reports: Vec<Report> = Vec::new();
    match suite {
        Suite::Relations => {
            reports.push(suites::check_relations(System::finite(n))?);
            if n >= 2 {
                reports.push(suites::check_relations(System::affine(n - 1))?);
            }
        }
        Suite::Basis => reports.push(suites::check_basis(n)?),
        Suite::Oracle => reports.push(suites::check_oracle(n)?),
        Suite::Jones => {
            reports.push(suites::check_jones(n)?);
            reports.push(check_jones_markov(n)?);
        }
        Suite::MarkovAxioms => {
            reports.push(check_markov_axioms(n, samples, cli.seed, len(6))?);
            reports.push(check_psi_invariance(n, len(6))?);
            reports.push(check_trace_property(n, samples, cli.seed, len(6))?);
        }
        Suite::Homs => {
            reports.push(check_commuting_diagram(n, samples, cli.seed, len(4))?);
            reports.push(conjugation_report(n, samples, cli.seed, len(4))?);
        }
        Suite::Markov => {
            affine_of(n)?;
            reports.push(suites::check_lemmas(4)?);
            reports.push(suites::check_corollary(4)?);
            reports.push(suites::check_normal_forms(n, len(6))?);
            if n == 3 {
                reports.push(suites::check_reduction(len(6), 4)?);
            }
        }
        Suite::Solver => reports.push(suites::check_solver(n, len(if n == 3 { 6 } else { 3 }))?),
    }
    let failed = reports.iter().any(|r| !r.passed());
    let mut text = Vec::new();
    for r in &reports {
        text.push(r.summary());
        for c in r.failures() {
            text.push(format!("  FAIL {}: {}", c.name, c.detail));
        }
    }
    text.push(if failed { "FAILED" } else { "ok" }.to_string());
    let json = json!({ "passed": !failed, "reports": reports });
    Ok(Output { json, text: text.join("\n"), failed })
}

fn run(cli: &Cli) -> Result<Output> {
    let n = cli.n as usize;
    match &cli.command {
        Command::Nf { expr } => element_output(&parse_element(expr, selected_system(cli)?)?, cli.basis),
        Command::Mul { exprs } => {
            let sys = selected_system(cli)?;
            let mut acc = Element::one(sys);
            for e in exprs {
                acc = acc.mul(&parse_element(e, sys)?)?;
            }
            element_output(&acc, cli.basis)
        }
        Command::Inv { expr } => {
            let sys = selected_system(cli)?;
            let x = parse_element(expr, sys)?;
            let inv = match x.as_scalar() {
                Some(c) => Element::scalar(sys, c.inv()?),
                None => x.monomial_inverse()?,
            };
            element_output(&inv, cli.basis)
        }
        Command::Trace { kind, expr } => {
            let value = match kind {
                TraceKind::Tau => jones_tau(&parse_element(expr, System::finite(n))?)?,
                TraceKind::Rho => rho(n, &parse_element(expr, affine_of(n)?)?)?,
            };
            Ok(Output::ok(json!({ "value": value.to_text() }), value.to_text()))
        }
        Command::Map { apply, power, expr } => {
            let x = match apply {
                MapArg::F => apply_f(n, &parse_element(expr, affine_of(n)?)?)?,
                MapArg::E => apply_e(n, &parse_element(expr, System::affine(n))?)?,
                MapArg::Incl => incl(n, &parse_element(expr, System::finite(n))?)?,
                MapArg::Psi => apply_psi(&parse_element(expr, affine_of(n)?)?, *power)?,
            };
            element_output(&x, cli.basis)
        }
        Command::ReduceMarkov { expr } => {
            let x = parse_element(expr, affine_of(n)?)?;
            let comb = reduce_trace_to_markov(&x)?;
            let (lhs, rhs) = (comb.evaluate_rho()?, rho(n, &x)?);
            let consistent = lhs == rhs;
            let mut json = comb.to_json();
            json["rho_consistent"] = json!(consistent);
            let mut text: Vec<String> = comb
                .terms
                .iter()
                .map(|(c, m)| {
                    let g = if m.epsilon { " g[s2]" } else { "" };
                    format!("({})  F({}){g} F({})", c.to_text(), m.a.to_text(), m.b.to_text())
                })
                .collect();
            text.push(format!("ρ_3 check: {}", if consistent { "ok" } else { "FAILED" }));
            Ok(Output { json, text: text.join("\n"), failed: !consistent })
        }
        Command::Verify { suite, samples } => verify(cli, *suite, *samples),
        Command::Enumerate => {
            let sys = selected_system(cli)?;
            if sys.affine && cli.max_len.is_none() {
                return Err(Error::Usage("enumerating an affine system needs --max-len".into()));
            }
            let heaps: Vec<String> = enumerate_fc(&sys, cli.max_len)?.iter().map(|h| h.display(&sys)).collect();
            let text = format!("{} heaps\n{}", heaps.len(), heaps.join("\n"));
            Ok(Output::ok(json!({ "count": heaps.len(), "heaps": heaps }), text))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Nf { .. } => "nf",
        Command::Mul { .. } => "mul",
        Command::Inv { .. } => "inv",
        Command::Trace { .. } => "trace",
        Command::Map { .. } => "map",
        Command::ReduceMarkov { .. } => "reduce-markov",
        Command::Verify { .. } => "verify",
        Command::Enumerate => "enumerate",
    }
}

// a closed pipe (e.g. `| head`) is not an error worth a panic
fn print(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if matches!(std::env::var("ATL_PRODUCT_CACHE").as_deref(), Ok("0" | "off")) {
        atl_core::algebra::set_product_cache(false);
    }
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let mut v = json!({ "schema": SCHEMA, "command": name });
                    if let (Value::Object(dst), Value::Object(src)) = (&mut v, out.json) {
                        dst.extend(src);
                    }
                    print(&serde_json::to_string_pretty(&v).expect("json"));
                }
                Format::Text => print(&out.text),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let code = if matches!(e, Error::Falsification(_)) { 1 } else { 2 };
            match cli.format {
                Format::Json => print(
                    &serde_json::to_string_pretty(&json!({ "schema": SCHEMA, "command": name, "error": e.to_string() }))
                        .expect("json"),
                ),
                Format::Text => eprintln!("atl {name}: {e}"),
            }
            ExitCode::from(code)
        }
    }
}
