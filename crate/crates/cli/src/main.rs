//! `cardcomp`: decide cardinality comparison problems from the command line.
//!
//! Exit codes: `sat` and `model` return 0 for SAT and 1 for UNSAT, `entail`
//! 0 when the goal follows and 1 when it does not, `verify` 0 for a valid
//! artifact and 1 otherwise, `oracle` 0 when a bounded model is found and 1
//! when none is. Input errors return 2 and exhausted resource limits 3.

mod problem;
mod report;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cardcomp::decide::{
    atomized_branches, check_outcome, verify_certificate, Decider, Entailment,
    Logic, Options, SatOutcome,
};
use cardcomp::lp::{Engine, SolveOptions};
use cardcomp::semantics::{brute_force_sat, eval_formula, symbolic_zf_witness, OracleBounds};
use cardcomp::syntax::schema::{random_cgfc_instance, random_fc_instance, random_gfc_instance};
use cardcomp::syntax::{cgfc_schema, fc_schema, gfc_schema, parse_term, TreeShape};
use cardcomp::{AtomSpace, CancellationCertificate, Formula, Labels, MeasuresModel, SetTerm};

use problem::Problem;
use report::{annotation_text, certificate_text, merge, model_text, space_json};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl From<cardcomp::Error> for CliError {
    fn from(e: cardcomp::Error) -> Self {
        if e.is_resource_limit() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemaKind {
    Fc,
    Gfc,
    Cgfc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Against {
    Assumptions,
    Refutation,
}

#[derive(Debug, Args)]
struct Global {
    /// fin, ded or card; overrides the file's `logic:` header (default card)
    #[arg(long, global = true)]
    logic: Option<Logic>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized schema instances; recorded in reports
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Pivot budget per linear program, or enumeration budget for `oracle`
    #[arg(long, global = true)]
    step_budget: Option<u64>,
    #[arg(long, global = true, default_value_t = cardcomp::algebra::MAX_LABELS)]
    max_labels: usize,
    /// Re-solve small linear programs by Fourier-Motzkin elimination
    #[arg(long, global = true)]
    cross_check: bool,
    /// Include wall-clock time in reports
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide satisfiability of the assumptions
    Sat { file: PathBuf },
    /// Decide whether the assumptions entail the goal
    Entail { file: PathBuf },
    /// Print a model of the assumptions
    Model {
        file: PathBuf,
        /// Also print the symbolic permutation-model description
        #[arg(long)]
        zf: bool,
    },
    /// Check a certificate, model or JSON report against a problem file
    Verify {
        artifact: PathBuf,
        problem: PathBuf,
        /// Formula a bare artifact is checked against (default: the
        /// refutation when the file has a goal)
        #[arg(long, value_enum)]
        against: Option<Against>,
    },
    /// Print an instance of a cancellation schema
    Schema {
        #[arg(value_enum)]
        kind: SchemaKind,
        /// Number of premises for fc
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Number of premises for gfc and cgfc
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Copies of the conclusion for gfc and cgfc
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Covering tree for cgfc: `*` is a leaf, `(L R)` an inner node
        #[arg(long, default_value = "*")]
        tree: String,
        /// Premise left sides (repeatable)
        #[arg(long = "s")]
        s: Vec<String>,
        #[arg(long = "e")]
        e: Option<String>,
        /// Premise right sides (repeatable)
        #[arg(long = "t")]
        t: Vec<String>,
        #[arg(long = "f")]
        f: Option<String>,
        /// Covering terms in preorder of the tree (repeatable)
        #[arg(long = "u")]
        u: Vec<String>,
        /// Draw a random balanced instance over --labels using --seed
        #[arg(long)]
        random: bool,
        #[arg(long, value_delimiter = ',', default_value = "a,b")]
        labels: Vec<String>,
    },
    /// Search exhaustively for a small model of the assumptions
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_measures: usize,
        #[arg(long, default_value_t = 4)]
        max_value: u64,
    },
}

#[derive(Debug, Parser)]
#[command(name = "cardcomp", version, about = "Decide comparisons of cardinalities of Boolean set terms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

struct Output {
    code: u8,
    text: String,
    json: Value,
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn load_problem(path: &Path) -> Result<Problem, CliError> {
    Problem::parse(&read_input(path)?).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

impl Global {
    fn logic_for(&self, p: &Problem) -> Logic {
        self.logic.or(p.logic).unwrap_or(Logic::Card)
    }

    fn solve_options(&self) -> SolveOptions {
        let mut o = SolveOptions::default();
        if let Some(b) = self.step_budget {
            o.pivot_budget = b;
        }
        if self.cross_check {
            o.engine = Engine::CrossCheck;
        }
        o
    }

    fn decider(&self) -> Decider {
        Decider::new(Options {
            max_labels: self.max_labels,
            solve: self.solve_options(),
            ..Options::default()
        })
    }

    fn engine_json(&self) -> Value {
        let o = self.solve_options();
        json!({
            "mode": match o.engine { Engine::Simplex => "simplex", Engine::CrossCheck => "cross_check" },
            "pivot_budget": o.pivot_budget,
            "seed": self.seed,
        })
    }
}

fn certificates_text(space: &AtomSpace, formula: &Formula, certs: &[CancellationCertificate]) -> Result<String, CliError> {
    let (_, atomized) = atomized_branches(space, formula, usize::MAX)?;
    Ok(certs
        .iter()
        .enumerate()
        .map(|(i, c)| certificate_text(space, &atomized, i + 1, c))
        .collect())
}

fn witness_text(
    space: &AtomSpace,
    formula: &Formula,
    branch: Option<usize>,
    w: &cardcomp::WitnessBundle,
) -> Result<String, CliError> {
    let mut out = model_text(space, &w.model);
    let (_, atomized) = atomized_branches(space, formula, usize::MAX)?;
    let branch = branch.or_else(|| {
        atomized
            .iter()
            .position(|b| b.iter().all(|l| w.model.holds_atom_literal(l)))
    });
    if let Some(b) = branch.and_then(|b| atomized.get(b)) {
        for a in &w.annotations {
            out.push_str(&annotation_text(space, b, a));
        }
    }
    Ok(out)
}

fn cmd_sat(g: &Global, file: &Path, command: &str, zf: bool) -> Result<Output, CliError> {
    let p = load_problem(file)?;
    let logic = g.logic_for(&p);
    let space = p.space(g.max_labels)?;
    let formula = p.assumption_formula();
    let report = g.decider().sat_in(&space, &formula, logic)?;
    let base = merge(
        json!({
            "command": command,
            "logic": logic,
            "branches": report.branches.len(),
            "engine": g.engine_json(),
        }),
        space_json(&space),
    );
    Ok(match &report.outcome {
        SatOutcome::Sat { branch, witness } => {
            let mut text = format!("SAT ({logic}, branch {branch} of {})\n", report.branches.len());
            text.push_str(&witness_text(&space, &formula, Some(*branch), witness)?);
            let mut extra = json!({
                "verdict": "sat",
                "branch": branch,
                "model": witness.model,
                "annotations": witness.annotations,
            });
            if zf {
                let z = symbolic_zf_witness(&witness.model);
                text.push_str(&z.text);
                if !z.text.ends_with('\n') {
                    text.push('\n');
                }
                extra = merge(extra, json!({ "zf": z }));
            }
            Output {
                code: 0,
                text,
                json: merge(base, extra),
            }
        }
        SatOutcome::Unsat(certs) => {
            let mut text = format!("UNSAT ({logic}, {} branch(es) refuted)\n", report.branches.len());
            if command == "sat" {
                text.push_str(&certificates_text(&space, &formula, certs)?);
            }
            Output {
                code: 1,
                text,
                json: merge(base, json!({ "verdict": "unsat", "certificates": certs })),
            }
        }
    })
}

fn cmd_entail(g: &Global, file: &Path) -> Result<Output, CliError> {
    let p = load_problem(file)?;
    let logic = g.logic_for(&p);
    let goal = p
        .goal
        .as_ref()
        .ok_or_else(|| CliError::Input(format!("{}: no `goal:` line", file.display())))?;
    let space = p.space(g.max_labels)?;
    let report = g.decider().entails_in(&space, &p.assumptions, goal, logic)?;
    let base = merge(
        json!({
            "command": "entail",
            "logic": logic,
            "goal": goal.to_string(),
            "branches": report.branches.len(),
            "engine": g.engine_json(),
        }),
        space_json(&space),
    );
    Ok(match &report.outcome {
        Entailment::Entailed(certs) => {
            let mut text = format!("ENTAILED ({logic}): {goal}\n");
            text.push_str(&certificates_text(&space, &report.refuted, certs)?);
            Output {
                code: 0,
                text,
                json: merge(base, json!({ "verdict": "entailed", "certificates": certs })),
            }
        }
        Entailment::NotEntailed(w) => {
            let mut text = format!("NOT ENTAILED ({logic}): {goal}\ncounter-model:\n");
            text.push_str(&witness_text(&space, &report.refuted, None, w)?);
            Output {
                code: 1,
                text,
                json: merge(
                    base,
                    json!({ "verdict": "not_entailed", "model": w.model, "annotations": w.annotations }),
                ),
            }
        }
    })
}

enum Artifact {
    Certificates { certs: Vec<CancellationCertificate>, complete: bool },
    Model(MeasuresModel),
}

fn parse_artifact(v: Value) -> Result<(Artifact, Option<String>, Option<Logic>), CliError> {
    let bad = |e: serde_json::Error| CliError::Input(format!("artifact: {e}"));
    if let Value::Array(_) = v {
        let certs = serde_json::from_value(v).map_err(bad)?;
        return Ok((Artifact::Certificates { certs, complete: false }, None, None));
    }
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::Input("artifact: expected a JSON object or array".into()))?;
    if obj.contains_key("verdict") {
        let command = obj.get("command").and_then(Value::as_str).map(str::to_string);
        let logic = obj
            .get("logic")
            .cloned()
            .map(serde_json::from_value)
            .transpose()
            .map_err(bad)?;
        let artifact = if let Some(c) = obj.get("certificates") {
            Artifact::Certificates {
                certs: serde_json::from_value(c.clone()).map_err(bad)?,
                complete: true,
            }
        } else if let Some(m) = obj.get("model") {
            Artifact::Model(serde_json::from_value(m.clone()).map_err(bad)?)
        } else {
            return Err(CliError::Input("artifact: report carries neither certificates nor a model".into()));
        };
        return Ok((artifact, command, logic));
    }
    if obj.contains_key("conclusion") {
        let c: CancellationCertificate = serde_json::from_value(v).map_err(bad)?;
        return Ok((Artifact::Certificates { certs: vec![c], complete: false }, None, None));
    }
    if obj.contains_key("measures") {
        return Ok((Artifact::Model(serde_json::from_value(v).map_err(bad)?), None, None));
    }
    Err(CliError::Input("artifact: not a certificate, model or report".into()))
}

fn cmd_verify(g: &Global, artifact: &Path, problem: &Path, against: Option<Against>) -> Result<Output, CliError> {
    let p = load_problem(problem)?;
    let value: Value = serde_json::from_str(&read_input(artifact)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", artifact.display())))?;
    let (art, command, report_logic) = parse_artifact(value)?;
    let against = match (against, command.as_deref()) {
        (Some(a), _) => a,
        (None, Some("entail")) => Against::Refutation,
        (None, Some(_)) => Against::Assumptions,
        (None, None) if p.goal.is_some() => Against::Refutation,
        (None, None) => Against::Assumptions,
    };
    let formula = match against {
        Against::Assumptions => p.assumption_formula(),
        Against::Refutation => p
            .refuted_formula()
            .ok_or_else(|| CliError::Input("problem has no goal to refute".into()))?,
    };
    let space = p.space(g.max_labels)?;
    let logic = report_logic.or(g.logic).or(p.logic);

    let (valid, what) = match art {
        Artifact::Certificates { certs, complete } => {
            let (branches, atomized) = atomized_branches(&space, &formula, usize::MAX)?;
            let logic_ok = certs.iter().all(|c| logic.is_none_or(|l| c.logic == l));
            let ok = if complete {
                check_outcome(&space, &branches, &SatOutcome::Unsat(certs.clone()))?
            } else {
                !certs.is_empty()
                    && certs.iter().all(|c| {
                        atomized
                            .get(c.branch)
                            .is_some_and(|b| verify_certificate(c, b))
                    })
            };
            (ok && logic_ok, format!("{} certificate(s)", certs.len()))
        }
        Artifact::Model(m) => {
            let kind_ok = logic.is_none_or(|l| {
                m.kind() == l.model_kind() && (l != Logic::Fin || m.measures().len() == 1)
            });
            let holds = eval_formula(&m, &formula).unwrap_or(false);
            (kind_ok && holds, format!("{} model", m.kind()))
        }
    };
    let verdict = if valid { "valid" } else { "invalid" };
    Ok(Output {
        code: if valid { 0 } else { 1 },
        text: format!("{} {what}\n", verdict.to_uppercase()),
        json: json!({ "command": "verify", "verdict": verdict, "checked": what }),
    })
}

fn term(text: &str) -> Result<SetTerm, CliError> {
    Ok(parse_term(text)?)
}

fn terms_or(given: &[String], prefix: &str, n: usize) -> Result<Vec<SetTerm>, CliError> {
    if given.is_empty() {
        Ok((1..=n).map(|i| SetTerm::label(&format!("{prefix}{i}"))).collect())
    } else {
        given.iter().map(|t| term(t)).collect()
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_schema(
    g: &Global,
    kind: SchemaKind,
    n: usize,
    k: usize,
    l: usize,
    tree: &str,
    s: &[String],
    e: Option<&str>,
    t: &[String],
    f: Option<&str>,
    u: &[String],
    random: bool,
    labels: &[String],
) -> Result<Output, CliError> {
    let formula = if random {
        let labels = Labels::new(labels.iter().map(String::as_str))?;
        match kind {
            SchemaKind::Fc => random_fc_instance(&labels, n, g.seed),
            SchemaKind::Gfc => random_gfc_instance(&labels, k, l, g.seed),
            SchemaKind::Cgfc => random_cgfc_instance(&labels, k, l, g.seed),
        }
    } else {
        let count = if kind == SchemaKind::Fc { n } else { k };
        let s = terms_or(s, "s", count)?;
        let t = terms_or(t, "t", count)?;
        let e = e.map(term).transpose()?.unwrap_or_else(|| SetTerm::label("e"));
        let f = f.map(term).transpose()?.unwrap_or_else(|| SetTerm::label("f"));
        match kind {
            SchemaKind::Fc => fc_schema(&s, &e, &t, &f)?,
            SchemaKind::Gfc => gfc_schema(l, &s, &e, &t, &f)?,
            SchemaKind::Cgfc => {
                let shape = TreeShape::parse(tree)?;
                let u = if u.is_empty() {
                    shape
                        .addresses()
                        .iter()
                        .map(|a| SetTerm::label(&format!("u{a}")))
                        .collect()
                } else {
                    u.iter().map(|x| term(x)).collect::<Result<Vec<_>, _>>()?
                };
                cgfc_schema(l, &shape, &s, &e, &t, &f, &u)?
            }
        }
    };
    let text = formula.to_string();
    Ok(Output {
        code: 0,
        json: json!({ "command": "schema", "formula": text }),
        text: format!("{text}\n"),
    })
}

fn cmd_oracle(g: &Global, file: &Path, max_measures: usize, max_value: u64) -> Result<Output, CliError> {
    let p = load_problem(file)?;
    let logic = g.logic_for(&p);
    let space = p.space(g.max_labels)?;
    let mut bounds = OracleBounds {
        max_measures,
        max_value,
        ..OracleBounds::default()
    };
    if let Some(b) = g.step_budget {
        bounds.step_budget = b.into();
    }
    let kind = logic.model_kind();
    let (_, atomized) = atomized_branches(&space, &p.assumption_formula(), usize::MAX)?;
    let mut found = None;
    for (i, b) in atomized.iter().enumerate() {
        let bounds = if logic == Logic::Fin {
            OracleBounds { max_measures: 1, ..bounds }
        } else {
            bounds
        };
        if let Some(m) = brute_force_sat(&space, b, kind, &bounds)? {
            found = Some((i, m));
            break;
        }
    }
    let base = merge(
        json!({ "command": "oracle", "logic": logic, "max_measures": max_measures, "max_value": max_value }),
        space_json(&space),
    );
    Ok(match found {
        Some((branch, m)) => {
            let big: MeasuresModel = m.convert(|v| (*v).into());
            Output {
                code: 0,
                text: format!("FOUND ({logic}, branch {branch})\n{}", model_text(&space, &big)),
                json: merge(base, json!({ "verdict": "found", "branch": branch, "model": m })),
            }
        }
        None => Output {
            code: 1,
            text: format!("NOT FOUND ({logic}) within {max_measures} measure(s) and values <= {max_value}\n"),
            json: merge(base, json!({ "verdict": "not_found" })),
        },
    })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Sat { file } => cmd_sat(g, file, "sat", false),
        Command::Model { file, zf } => cmd_sat(g, file, "model", *zf),
        Command::Entail { file } => cmd_entail(g, file),
        Command::Verify {
            artifact,
            problem,
            against,
        } => cmd_verify(g, artifact, problem, *against),
        Command::Schema {
            kind,
            n,
            k,
            l,
            tree,
            s,
            e,
            t,
            f,
            u,
            random,
            labels,
        } => cmd_schema(g, *kind, *n, *k, *l, tree, s, e.as_deref(), t, f.as_deref(), u, *random, labels),
        Command::Oracle {
            file,
            max_measures,
            max_value,
        } => cmd_oracle(g, file, *max_measures, *max_value),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(out) => {
            let elapsed = start.elapsed().as_secs_f64() * 1000.0;
            match cli.global.format {
                Format::Text => {
                    print!("{}", out.text);
                    if cli.global.timing {
                        println!("time: {elapsed:.3} ms");
                    }
                }
                Format::Json => {
                    let json = if cli.global.timing {
                        merge(out.json, json!({ "timing_ms": elapsed }))
                    } else {
                        out.json
                    };
                    println!("{}", serde_json::to_string_pretty(&json).expect("serializable report"));
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
