//! `cumulant`: batch jobs over algebra, map, retract and moment documents.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cumulant_core::io::{self, checklist_value, law_value, selement_docs, taylor_family_doc, to_value};
use cumulant_core::{
    certify, cumulants_from_moments, derivation_defects, homomorphism_defects, solve_transfer,
    validate_retract, validate_transfer_input, CumulantContext, Error as CoreError, QAlgebra, QMap,
    SMorphism, TaylorFamily, TransferInput, DEFAULT_WEIGHT_CAP, MAX_WEIGHT_CAP,
};

#[derive(Parser, Debug)]
#[command(
    name = "cumulant",
    version,
    about = "Cumulant bijections of graded commutative algebras"
)]
struct Cli {
    /// Largest weight kept in SA; every identity holds modulo higher weights.
    #[arg(long, global = true, default_value_t = DEFAULT_WEIGHT_CAP)]
    weight_cap: usize,

    /// Role-tagged input document: algebra=, map=, retract=, transfer=, moments=.
    /// A second algebra= is the target of a map.
    #[arg(long = "input", global = true, value_name = "ROLE=PATH")]
    inputs: Vec<String>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Progress notes on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hom,
    Der,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an algebra, a retract, or a transfer input.
    Validate,
    /// Tabulate τ̃ on every canonical monomial up to the weight cap.
    Lift,
    /// Tabulate τ̃⁻¹ on every canonical monomial up to the weight cap.
    Invert,
    /// Conjugated Taylor coefficients of a map: gⁿ (hom) or hⁿ (der).
    Defects {
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Induced cumulant bijection of a retract, with certification.
    Transfer {
        /// Construct ∂∞ and ι by exact linear algebra even if supplied.
        #[arg(long)]
        solve: bool,
    },
    /// Classical cumulants from a moment sequence.
    Cumulants {
        /// Number of cumulants; defaults to the number of moments.
        #[arg(long)]
        order: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Invalid(Value),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Invalid(json!({ "status": "error", "error": e.to_string() }))
    }
}

type Outcome = Result<Value, Failure>;

struct Inputs {
    entries: Vec<(String, PathBuf)>,
}

impl Inputs {
    fn parse(raw: &[String]) -> Result<Self, Failure> {
        let mut entries = Vec::new();
        for item in raw {
            let (role, path) = item
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("--input {item:?} is not ROLE=PATH")))?;
            if !["algebra", "map", "retract", "transfer", "moments"].contains(&role) {
                return Err(Failure::Usage(format!("unknown input role {role:?}")));
            }
            entries.push((role.to_string(), PathBuf::from(path)));
        }
        Ok(Self { entries })
    }

    fn all(&self, role: &str) -> Vec<&Path> {
        self.entries
            .iter()
            .filter(|(r, _)| r == role)
            .map(|(_, p)| p.as_path())
            .collect()
    }

    fn one(&self, role: &str) -> Result<Option<String>, Failure> {
        match self.all(role).as_slice() {
            [] => Ok(None),
            [p] => read(p).map(Some),
            _ => Err(Failure::Usage(format!("--input {role}= given more than once"))),
        }
    }

    fn required(&self, role: &str) -> Result<String, Failure> {
        self.one(role)?
            .ok_or_else(|| Failure::Usage(format!("missing --input {role}=<path>")))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn algebras(inputs: &Inputs) -> Result<(Arc<QAlgebra>, Option<Arc<QAlgebra>>), Failure> {
    let paths = inputs.all("algebra");
    let parse = |p: &Path| -> Result<Arc<QAlgebra>, Failure> { Ok(Arc::new(io::parse_algebra(&read(p)?)?)) };
    match paths.as_slice() {
        [] => Err(Failure::Usage("missing --input algebra=<path>".into())),
        [a] => Ok((parse(a)?, None)),
        [a, b] => Ok((parse(a)?, Some(parse(b)?))),
        _ => Err(Failure::Usage("at most two algebra= inputs".into())),
    }
}

fn map_table(map: &QMap) -> Value {
    let rows: Vec<Value> = map
        .images()
        .map(|(w, image)| {
            json!({
                "monomial": w.names(map.source()),
                "image": to_value(&selement_docs(image)),
            })
        })
        .collect();
    Value::Array(rows)
}

fn validate(inputs: &Inputs, cap: usize) -> Outcome {
    if let Some(text) = inputs.one("transfer")? {
        let doc = io::parse_retract_or_transfer(&text)?;
        let retract = validate_retract(&doc.retract);
        let (Some(d_inf), Some(iota)) = (doc.d_infinity, doc.iota) else {
            return Err(Failure::Usage(
                "transfer document lacks d_infinity or iota".into(),
            ));
        };
        let input = TransferInput::new(doc.retract, d_inf, iota)?;
        let report = validate_transfer_input(&input, cap)?;
        let status = if report.passed() { "ok" } else { "failed" };
        let value = json!({
            "status": status,
            "object": "transfer",
            "weight_cap": cap,
            "overflow": false,
            "retract": checklist_value(&retract),
            "hypotheses": checklist_value(&report.input),
        });
        return if report.passed() {
            Ok(value)
        } else {
            Err(Failure::Invalid(value))
        };
    }
    if let Some(text) = inputs.one("retract")? {
        let doc = io::parse_retract_or_transfer(&text)?;
        let report = validate_retract(&doc.retract);
        let status = if report.passed() { "ok" } else { "failed" };
        let value = json!({
            "status": status,
            "object": "retract",
            "checks": checklist_value(&report),
        });
        return if report.passed() {
            Ok(value)
        } else {
            Err(Failure::Invalid(value))
        };
    }
    let (a, b) = algebras(inputs)?;
    let mut value = json!({
        "status": "ok",
        "object": "algebra",
        "dimension": a.dim(),
    });
    if let Some(text) = inputs.one("map")? {
        let target = b.as_ref().unwrap_or(&a);
        let f = io::parse_linear_map(&text, a.basis(), target.basis())?;
        value["map_degree"] = json!(f.degree());
    }
    Ok(value)
}

fn lift(inputs: &Inputs, cap: usize, inverse: bool) -> Outcome {
    let (a, _) = algebras(inputs)?;
    let ctx = CumulantContext::new(&a, cap);
    let table = if inverse { ctx.inverse() } else { ctx.forward() };
    Ok(json!({
        "status": "ok",
        "map": if inverse { "tau_tilde_inverse" } else { "tau_tilde" },
        "weight_cap": cap,
        "overflow": table.overflow(),
        "table": map_table(table),
    }))
}

fn defects(inputs: &Inputs, cap: usize, kind: Kind) -> Outcome {
    let (a, b) = algebras(inputs)?;
    let text = inputs.required("map")?;
    let family: TaylorFamily<_> = match kind {
        Kind::Hom => {
            let b = b.unwrap_or_else(|| a.clone());
            let f = io::parse_linear_map(&text, a.basis(), b.basis())?;
            let ctx = CumulantContext::new(&b, cap);
            homomorphism_defects(&f, &a, &ctx)?
        }
        Kind::Der => {
            if b.is_some() {
                return Err(Failure::Usage("defects --kind der takes a single algebra".into()));
            }
            let d = io::parse_linear_map(&text, a.basis(), a.basis())?;
            let ctx = CumulantContext::new(&a, cap);
            derivation_defects(&d, &ctx)?
        }
    };
    Ok(json!({
        "status": "ok",
        "kind": match kind { Kind::Hom => "hom", Kind::Der => "der" },
        "weight_cap": cap,
        "overflow": false,
        "defects": to_value(&taylor_family_doc(&family)),
        "vanishes_above_1": family.vanishes_from(2),
    }))
}

fn transfer(inputs: &Inputs, cap: usize, solve: bool, verbose: bool) -> Outcome {
    let text = match inputs.one("transfer")? {
        Some(t) => t,
        None => inputs.required("retract")?,
    };
    let doc = io::parse_retract_or_transfer(&text)?;
    let retract_report = validate_retract(&doc.retract);
    if !retract_report.passed() {
        return Err(Failure::Invalid(json!({
            "status": "failed",
            "stage": "retract",
            "weight_cap": cap,
            "overflow": false,
            "retract": checklist_value(&retract_report),
        })));
    }
    let input = match (doc.d_infinity, doc.iota) {
        (Some(d_inf), Some(iota)) if !solve => TransferInput::new(doc.retract, d_inf, iota)?,
        _ => {
            if verbose {
                eprintln!("solving for ∂∞ and ι up to weight {cap}");
            }
            solve_transfer(&doc.retract, cap)?
        }
    };
    let report = validate_transfer_input(&input, cap)?;
    let mut value = json!({
        "weight_cap": cap,
        "overflow": false,
        "retract": checklist_value(&report.retract),
        "hypotheses": checklist_value(&report.input),
        "d_infinity": to_value(&taylor_family_doc(input.d_infinity())),
        "iota": to_value(&taylor_family_doc(input.iota())),
    });
    if !report.passed() {
        value["status"] = json!("failed");
        value["stage"] = json!("hypotheses");
        return Err(Failure::Invalid(value));
    }
    let cert = certify(&input, cap)?;
    value["certification"] = checklist_value(&cert.checks);
    value["overflow"] = json!(cert.map.overflow());
    value["tau_c"] = to_value(&taylor_family_doc(&cumulant_core::taylor_family(&cert.map)));
    let laws: Vec<Value> = cert.checks.failures().map(law_value).collect();
    if laws.is_empty() {
        value["status"] = json!("ok");
        Ok(value)
    } else {
        value["status"] = json!("failed");
        value["stage"] = json!("certification");
        Err(Failure::Invalid(value))
    }
}

fn cumulants(inputs: &Inputs, cap: usize, order: Option<usize>) -> Outcome {
    let moments = io::parse_moments(&inputs.required("moments")?)?;
    let n = order.unwrap_or(moments.len());
    if n == 0 || n > moments.len() {
        return Err(Failure::Usage(format!(
            "order {n} must lie in 1..={} (the number of moments)",
            moments.len()
        )));
    }
    if n > cap {
        return Err(Failure::Usage(format!("order {n} exceeds the weight cap {cap}")));
    }
    let truncated = cumulant_core::MomentSequence::new(moments.moments()[..n].to_vec());
    let kappa = cumulants_from_moments(&truncated, n)?;
    Ok(json!({
        "status": "ok",
        "weight_cap": cap,
        "overflow": false,
        "moments": moments.moments().iter().map(cumulant_core::format_rational).collect::<Vec<_>>(),
        "cumulants": kappa.iter().map(cumulant_core::format_rational).collect::<Vec<_>>(),
    }))
}

fn run(cli: &Cli) -> Outcome {
    if cli.weight_cap == 0 || cli.weight_cap > MAX_WEIGHT_CAP {
        return Err(Failure::Usage(format!(
            "--weight-cap must lie in 1..={MAX_WEIGHT_CAP}"
        )));
    }
    if cli.weight_cap > DEFAULT_WEIGHT_CAP {
        eprintln!(
            "warning: weight cap {} enumerates up to Bell({}) set partitions per monomial",
            cli.weight_cap, cli.weight_cap
        );
    }
    let inputs = Inputs::parse(&cli.inputs)?;
    let cap = cli.weight_cap;
    if cli.verbose {
        eprintln!("{:?} at weight cap {cap}", cli.command);
    }
    let mut value = match &cli.command {
        Command::Validate => validate(&inputs, cap),
        Command::Lift => lift(&inputs, cap, false),
        Command::Invert => lift(&inputs, cap, true),
        Command::Defects { kind } => defects(&inputs, cap, *kind),
        Command::Transfer { solve } => transfer(&inputs, cap, *solve, cli.verbose),
        Command::Cumulants { order } => cumulants(&inputs, cap, *order),
    };
    let name = match &cli.command {
        Command::Validate => "validate",
        Command::Lift => "lift",
        Command::Invert => "invert",
        Command::Defects { .. } => "defects",
        Command::Transfer { .. } => "transfer",
        Command::Cumulants { .. } => "cumulants",
    };
    match &mut value {
        Ok(v) | Err(Failure::Invalid(v)) => v["command"] = json!(name),
        Err(Failure::Usage(_)) => {}
    }
    value
}

fn emit(cli: &Cli, value: &Value) -> std::io::Result<()> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => render::text(value),
    };
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (value, code) = match run(&cli) {
        Ok(v) => (v, 0),
        Err(Failure::Invalid(v)) => (v, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
