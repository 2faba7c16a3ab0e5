use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use cuntzlab::bivariant::{
    adjunction_check, bivariant, compose, hom_monoid_finite, parse_expr, resolve_space, show_expr, solid_status,
    Engine, Space,
};
use cuntzlab::catalog::{facts, Carrier};
use cuntzlab::finite::{tau_finite, FiniteCu, FiniteQ};
use cuntzlab::order::{check_o5, check_o6};
use cuntzlab::paths::{
    classify, format_path, parse_path, path_compare, path_eval, validate, PathCarrier, RationalIndex, RealAux,
};
use cuntzlab::repro::{cases, run_all, run_repro, ReproResult};
use cuntzlab::structure_file::StructureFile;
use cuntzlab::tensor::tensor_catalog;
use cuntzlab::{bound_from_env, Error};

/// Exact computations with abstract Cuntz semigroups.
#[derive(Parser)]
#[command(name = "cuntzlab", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the laws of a structure file.
    Validate { file: String },
    /// τ of a structure file: its self-related part.
    Tau { file: String },
    /// Check the O5/O6 axioms of a structure file.
    Axioms {
        file: String,
        /// Comma-separated list from o5, o6.
        #[arg(long, default_value = "o5,o6")]
        check: String,
    },
    /// Hom Q-semigroup of two finite carriers, as a structure file.
    Hom {
        source: String,
        target: String,
        /// Apply τ, giving the bivariant Cu-semigroup.
        #[arg(long)]
        bivariant: bool,
    },
    /// The bivariant Cu-semigroup ⟦S,T⟧.
    Bivariant {
        /// Resolve names in the catalog only.
        #[arg(long)]
        catalog: bool,
        source: String,
        target: String,
    },
    /// Composition OUTER∘INNER of elements written S->T:ELEM.
    Compose { outer: String, inner: String },
    /// Evaluate S->T:ELEM at an element of S.
    Evaluate { expr: String, elt: String },
    /// Tensor product of two catalog carriers.
    Tensor { left: String, right: String },
    /// Check Cu(S,⟦T,P⟧) ≅ CuBimor(S×T,P) for finite carriers.
    Adjunction { s: String, t: String, p: String },
    /// Solidity statuses of a catalog semiring.
    Solid { name: String },
    /// Catalog carriers.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Rerun reproduction cases.
    Repro {
        id: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Evaluate, classify or compare paths given in textual syntax.
    Path {
        /// Structure file, `Pbar` (relation <) or `Pbar-inf` (relation < except inf ≺ inf).
        carrier: String,
        expr: String,
        /// Index in (0,1) at which to evaluate.
        #[arg(long)]
        at: Option<String>,
        /// Second path to compare against.
        #[arg(long)]
        compare: Option<String>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

enum Failure {
    Input(Error),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, human: impl FnOnce() -> String, machine: impl FnOnce() -> Json) {
        let text = if self.json { serde_json::to_string_pretty(&machine()).expect("json") } else { human() };
        // A closed pipe is not an error worth reporting.
        let _ = writeln!(std::io::stdout(), "{text}");
    }
}

fn load_q(file: &str) -> Result<(StructureFile, FiniteQ), Error> {
    let f = StructureFile::load(file)?;
    let q = f.to_q()?;
    Ok((f, q))
}

fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

fn cmd_validate(out: &Out, file: &str) -> Outcome {
    let f = StructureFile::load(file)?;
    let report = f.report()?;
    out.emit(
        || {
            if report.is_empty() {
                "valid".to_string()
            } else {
                report
                    .violations
                    .iter()
                    .map(|v| format!("{}: ({})", v.law, v.witness.join(",")))
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        },
        || json!({"name": f.name, "valid": report.is_empty(), "violations": report.violations}),
    );
    if report.is_empty() {
        Ok(())
    } else {
        Err(Failure::Input(Error::Invalid(report)))
    }
}

fn cmd_tau(out: &Out, file: &str) -> Outcome {
    let (f, q) = load_q(file)?;
    let t = tau_finite(&q);
    let endpoint: Vec<&str> = t.endpoint.iter().map(|&i| q.pom.label(i)).collect();
    out.emit(
        || braces(&t.cu.pom.elements),
        || {
            json!({
                "source": f.name,
                "elements": t.cu.pom.elements,
                "endpoint": endpoint,
                "structure": serde_json::from_str::<Json>(&StructureFile::from_q(format!("tau({})", f.name), &t.cu.as_q()).to_json()).expect("json"),
            })
        },
    );
    Ok(())
}

fn cmd_axioms(out: &Out, file: &str, checks: &str) -> Outcome {
    let (f, q) = load_q(file)?;
    let mut lines = Vec::new();
    let mut report = serde_json::Map::new();
    let mut violated = false;
    for check in checks.split(',').map(str::trim).filter(|c| !c.is_empty()) {
        let witnesses: Vec<Vec<String>> = match check.to_ascii_lowercase().as_str() {
            "o5" => check_o5(&q.pom)?.into_iter().map(|w| w.to_vec()).collect(),
            "o6" => check_o6(&q.pom)?.into_iter().map(|w| w.to_vec()).collect(),
            other => return Err(Error::Unknown(format!("unknown axiom {other:?}; use o5 or o6")).into()),
        };
        let name = check.to_ascii_lowercase();
        match witnesses.first() {
            None => lines.push(format!("{name}: holds")),
            Some(w) => {
                violated = true;
                lines.push(format!("{name}: fails, witness ({}) [{} total]", w.join(","), witnesses.len()));
            }
        }
        report.insert(name, json!({"holds": witnesses.is_empty(), "witnesses": witnesses}));
    }
    out.emit(|| lines.join("\n"), || json!({"name": f.name, "checks": report}));
    if violated {
        Err(Failure::Violation)
    } else {
        Ok(())
    }
}

/// Structure files are JSON in both output modes.
fn print_structure(f: &StructureFile) {
    let _ = write!(std::io::stdout(), "{}", f.to_json());
}

fn cmd_hom(out: &Out, source: &str, target: &str, bivariant_only: bool, bound: usize) -> Outcome {
    let (s, t) = (resolve_space(source)?, resolve_space(target)?);
    let name = format!("[{s},{t}]");
    match (s.finite_cu(), t.finite_cu()) {
        (Some(sc), Some(tc)) => {
            let hom = hom_monoid_finite(sc, tc, bound)?;
            if bivariant_only {
                let tau = tau_finite(&hom.q);
                print_structure(&StructureFile::from_q(name, &tau.cu.as_q()));
            } else {
                print_structure(&StructureFile::from_q(format!("hom({s},{t})"), &hom.q));
            }
            Ok(())
        }
        _ if bivariant_only => cmd_bivariant(out, source, target, false, bound),
        _ => Err(Error::Unsupported(format!("the hom Q-semigroup of {s} and {t} is infinite; use --bivariant")).into()),
    }
}

fn cmd_bivariant(out: &Out, source: &str, target: &str, catalog_only: bool, bound: usize) -> Outcome {
    let (s, t) = if catalog_only {
        (Space::named(source)?, Space::named(target)?)
    } else {
        (resolve_space(source)?, resolve_space(target)?)
    };
    let b = bivariant(&s, &t, bound)?;
    out.emit(
        || b.describe(),
        || {
            let mut j = json!({"source": s.name(), "target": t.name(), "carrier": b.carrier.name()});
            match &b.engine {
                Engine::Finite { .. } => {
                    let cu = b.carrier.finite_cu().expect("finite");
                    j["elements"] = json!(cu.pom.elements);
                    j["structure"] =
                        serde_json::from_str(&StructureFile::from_q(b.carrier.name(), &cu.as_q()).to_json())
                            .expect("json");
                }
                Engine::Closed(form) => j["closed_form"] = json!(form),
            }
            j
        },
    );
    Ok(())
}

fn cmd_compose(out: &Out, outer: &str, inner: &str, bound: usize) -> Outcome {
    let (bo, y) = parse_expr(outer, bound)?;
    let (bi, x) = parse_expr(inner, bound)?;
    let (r, v) = compose(&bo, &y, &bi, &x, bound)?;
    out.emit(
        || show_expr(&r, &v),
        || json!({"result": show_expr(&r, &v), "carrier": r.carrier.name(), "element": r.carrier.format(&v)}),
    );
    Ok(())
}

fn cmd_evaluate(out: &Out, expr: &str, elt: &str, bound: usize) -> Outcome {
    let (b, x) = parse_expr(expr, bound)?;
    let s = b.source.parse(elt)?;
    let v = b.evaluate(&x, &s)?;
    let text = b.target.format(&v);
    out.emit(|| text.clone(), || json!({"expr": show_expr(&b, &x), "at": b.source.format(&s), "value": text}));
    Ok(())
}

fn cmd_tensor(out: &Out, left: &str, right: &str) -> Outcome {
    let r = tensor_catalog(&Carrier::parse(left)?, &Carrier::parse(right)?)?;
    out.emit(|| r.to_string(), || json!({"left": left, "right": right, "tensor": r.to_string()}));
    Ok(())
}

fn cmd_adjunction(out: &Out, s: &str, t: &str, p: &str, bound: usize) -> Outcome {
    let finite = |a: &str| -> Result<FiniteCu, Error> {
        resolve_space(a)?
            .finite_cu()
            .cloned()
            .ok_or_else(|| Error::Unsupported(format!("adjunction checks need finite carriers, got {a}")))
    };
    let r = adjunction_check(&finite(s)?, &finite(t)?, &finite(p)?, bound)?;
    out.emit(
        || {
            let mut lines =
                vec![format!("Cu(S,[T,P]): {}", r.cu_into_hom), format!("bimorphisms S x T -> P: {}", r.bimorphisms)];
            if let Some(n) = r.tensor_leg {
                lines.push(format!("Cu(S(x)T,P): {n}"));
            }
            lines.push(match &r.failure {
                None => "holds".to_string(),
                Some(f) => format!("fails: {f}"),
            });
            lines.join("\n")
        },
        || json!(r),
    );
    if r.holds {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn cmd_solid(out: &Out, name: &str, bound: usize) -> Outcome {
    let f = facts(name)?;
    let r = solid_status(name, bound)?;
    out.emit(
        || {
            let mut lines = vec![format!("{}: solid={} unit compact={}", f.name, f.solid.value, f.unit_compact.value)];
            for (i, fact) in f.char_solid.iter().enumerate() {
                lines.push(format!("({}) {}: {}", i + 1, fact.value, fact.reason));
            }
            if let Some(ok) = r.eps_pi_identity {
                lines.push(format!("epsilon o pi = id on samples: {ok}"));
            }
            if let Some(soft) = r.pi_image_soft {
                lines.push(format!("pi lands in soft elements: {soft}"));
            }
            lines.join("\n")
        },
        || json!({"facts": f, "report": r}),
    );
    Ok(())
}

fn cmd_catalog(out: &Out, action: &CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            let items = Carrier::listing();
            out.emit(
                || items.iter().map(|(n, d)| format!("{n:<10} {d}")).collect::<Vec<_>>().join("\n"),
                || json!(items.iter().map(|(n, d)| json!({"name": n, "description": d})).collect::<Vec<_>>()),
            );
        }
        CatalogAction::Show { name } => {
            let c = Carrier::parse(name)?;
            let f = facts(name).ok();
            let samples: Vec<String> = c.sample(8, 1).iter().map(|e| e.to_string()).collect();
            out.emit(
                || {
                    let mut lines = vec![format!("{c}"), format!("samples: {}", samples.join(", "))];
                    if let Some(f) = &f {
                        lines.push(format!("unit: {}", f.unit));
                        for (k, fact) in
                            [("unit compact", &f.unit_compact), ("solid", &f.solid), ("O5", &f.o5), ("O6", &f.o6)]
                        {
                            lines.push(format!("{k}: {} ({})", fact.value, fact.reason));
                        }
                    }
                    lines.join("\n")
                },
                || json!({"name": c.to_string(), "samples": samples, "facts": f}),
            );
        }
    }
    Ok(())
}

fn cmd_repro(out: &Out, id: Option<&str>, all: bool, bound: usize) -> Outcome {
    let results: Vec<ReproResult> = match (id, all) {
        (Some(id), false) => vec![run_repro(id, bound)?],
        (None, true) => run_all(bound),
        (None, false) => {
            out.emit(
                || cases().iter().map(|c| format!("{:<16} {}", c.id, c.description)).collect::<Vec<_>>().join("\n"),
                || json!(cases()),
            );
            return Ok(());
        }
        (Some(_), true) => return Err(Error::Parse("give a case id or --all, not both".into()).into()),
    };
    out.emit(
        || {
            results
                .iter()
                .map(|r| {
                    let status = if r.pass { "PASS" } else { "FAIL" };
                    let mut s = format!("{status} {}: {}\n     basis: {}", r.id, r.actual, r.basis);
                    if !r.pass {
                        s += &format!("\n     expected: {}", r.expected);
                    }
                    s
                })
                .collect::<Vec<_>>()
                .join("\n")
        },
        || json!(results),
    );
    if results.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn run_path<C: PathCarrier>(out: &Out, c: &C, expr: &str, at: Option<&str>, other: Option<&str>) -> Outcome {
    let p = parse_path(c, expr)?;
    validate(c, &p)?;
    let class = classify(c, &p);
    let mut human = vec![format!("path: {}", format_path(c, &p))];
    let mut j = json!({"path": format_path(c, &p)});
    if let Some(cl) = &class {
        human.push(format!(
            "class: endpoint {} ({})",
            c.format(&cl.endpoint),
            if cl.attained { "attained" } else { "not attained" }
        ));
        j["endpoint"] = json!(c.format(&cl.endpoint));
        j["attained"] = json!(cl.attained);
    }
    if let Some(at) = at {
        let v = path_eval(c, &p, &RationalIndex::parse(at)?)?;
        human.push(format!("value at {at}: {}", c.format(&v)));
        j["value"] = json!(c.format(&v));
    }
    if let Some(q) = other {
        let q = parse_path(c, q)?;
        validate(c, &q)?;
        let cmp = path_compare(c, &p, &q);
        human.push(format!("below: {cmp:?}"));
        j["below"] = json!(cmp);
    }
    out.emit(|| human.join("\n"), || j);
    Ok(())
}

fn cmd_path(out: &Out, carrier: &str, expr: &str, at: Option<&str>, other: Option<&str>) -> Outcome {
    match carrier {
        "Pbar" => run_path(out, &RealAux::One, expr, at, other),
        "Pbar-inf" => run_path(out, &RealAux::Infinity, expr, at, other),
        file => {
            let (_, q) = load_q(file)?;
            run_path(out, &q, expr, at, other)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let out = Out { json: cli.json };
    let bound = bound_from_env();
    match &cli.command {
        Command::Validate { file } => cmd_validate(&out, file),
        Command::Tau { file } => cmd_tau(&out, file),
        Command::Axioms { file, check } => cmd_axioms(&out, file, check),
        Command::Hom { source, target, bivariant } => cmd_hom(&out, source, target, *bivariant, bound),
        Command::Bivariant { catalog, source, target } => cmd_bivariant(&out, source, target, *catalog, bound),
        Command::Compose { outer, inner } => cmd_compose(&out, outer, inner, bound),
        Command::Evaluate { expr, elt } => cmd_evaluate(&out, expr, elt, bound),
        Command::Tensor { left, right } => cmd_tensor(&out, left, right),
        Command::Adjunction { s, t, p } => cmd_adjunction(&out, s, t, p, bound),
        Command::Solid { name } => cmd_solid(&out, name, bound),
        Command::Catalog { action } => cmd_catalog(&out, action),
        Command::Repro { id, all } => cmd_repro(&out, id.as_deref(), *all, bound),
        Command::Path { carrier, expr, at, compare } => {
            cmd_path(&out, carrier, expr, at.as_deref(), compare.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(2),
        Err(Failure::Input(e)) => {
            if json {
                let report = match &e {
                    Error::Invalid(r) => json!({"error": e.to_string(), "violations": r.violations}),
                    _ => json!({"error": e.to_string()}),
                };
                eprintln!("{}", serde_json::to_string_pretty(&report).expect("json"));
            } else if !matches!(e, Error::Invalid(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
