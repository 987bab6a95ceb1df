//! Command-line front end: the category file format, the command surface and
//! report rendering.
//!
//! Every command produces an [`Outcome`]: text for the terminal, a JSON value
//! for `--json`, and whether any check failed. Exit codes are 0 when nothing
//! failed, 1 when some verdict is FAIL, 2 on malformed input.

pub mod catfile;
pub mod error;

use std::fmt::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use quasifact::closure::{
    continuity_pullback_variant, derived_classes, has_qcd, is_quasi_idempotent, is_quasi_weakly_hereditary,
    validate_closure,
};
use quasifact::factor::{is_qlf_structure, is_qrf_structure, quasi_left_part, quasi_right_part};
use quasifact::fincat::{basic_classes, validate_category, FinCategory, MorId};
use quasifact::lifting::{is_qfs, is_wfs};
use quasifact::sieves::{quasi_epis, quasi_monos, strong_quasi_monos};
use quasifact::theorems::{default_bindings, run_selected, summary, TheoremId};
use quasifact::{CheckReport, ClosureOperator, Instance, MorClass, QwhMode};

pub use catfile::{emit, load, parse};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "quasifact",
    version,
    about = "Quasi factorization checks on finite categories"
)]
pub struct Cli {
    /// Print reports as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the category axioms and every closure's axioms.
    Validate { file: String },
    /// List the file's classes, optionally with computed ones.
    Classes {
        file: String,
        #[arg(long, value_delimiter = ',')]
        compute: Vec<Computed>,
    },
    /// Quasi right factorizations for a class, or the part of one morphism.
    Qrf {
        file: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Quasi left factorizations for a class, or the part of one morphism.
    Qlf {
        file: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Quasi factorization structure check for a pair of classes.
    Qfs {
        file: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Also run the weak factorization structure check.
        #[arg(long)]
        compare_weak: bool,
    },
    /// Properties of a closure operator.
    Closure {
        file: String,
        #[arg(long)]
        operator: String,
        /// axioms | c-prime | qi | qwh[=existential|witness] | qcd
        #[arg(long, value_parser = parse_closure_check)]
        check: ClosureCheck,
    },
    /// The quasi closed and quasi dense classes of a closure operator.
    Derived {
        file: String,
        #[arg(long)]
        operator: String,
        #[arg(long, value_delimiter = ',', default_value = "mqc,eqc")]
        emit: Vec<DerivedKind>,
    },
    /// Run the result registry on the file's bindings.
    Theorems {
        file: String,
        #[arg(long)]
        operator: Option<String>,
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Write a bundled instance as a category file.
    Instance {
        preset: String,
        #[arg(short, long)]
        output: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Computed {
    Iso,
    Sec,
    Ret,
    Mon,
    Epi,
    Qm,
    Qe,
    Sqm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerivedKind {
    Mqc,
    Eqc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureCheck {
    Axioms,
    CPrime,
    Qi,
    Qwh(QwhMode),
    Qcd,
}

fn parse_closure_check(s: &str) -> Result<ClosureCheck, String> {
    Ok(match s {
        "axioms" => ClosureCheck::Axioms,
        "c-prime" => ClosureCheck::CPrime,
        "qi" => ClosureCheck::Qi,
        "qwh" | "qwh=existential" => ClosureCheck::Qwh(QwhMode::Existential),
        "qwh=witness" => ClosureCheck::Qwh(QwhMode::ChosenWitness),
        "qcd" => ClosureCheck::Qcd,
        other => {
            return Err(format!(
                "unknown check `{other}` (axioms, c-prime, qi, qwh[=existential|witness], qcd)"
            ))
        }
    })
}

/// Result of one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub failed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed)
    }
}

/// JSON form of a report: witnesses by label.
#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub check: String,
    pub verdict: String,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<JsonReport>,
}

impl JsonReport {
    pub fn new(cat: &FinCategory, r: &CheckReport) -> Self {
        JsonReport {
            check: r.check.clone(),
            verdict: r.verdict.to_string(),
            witnesses: labels(cat, &r.witnesses),
            detail: r.detail.clone(),
            children: r.children.iter().map(|c| JsonReport::new(cat, c)).collect(),
        }
    }
}

fn labels(cat: &FinCategory, ms: &[MorId]) -> Vec<String> {
    ms.iter().map(|&m| cat.label(m).to_string()).collect()
}

fn reports_outcome(command: &str, cat: &FinCategory, reports: &[CheckReport]) -> Outcome {
    let text = reports.iter().map(|r| r.render(cat)).collect();
    let json = json!({
        "command": command,
        "reports": reports.iter().map(|r| JsonReport::new(cat, r)).collect::<Vec<_>>(),
    });
    Outcome {
        text,
        json,
        failed: reports.iter().any(CheckReport::is_fail),
    }
}

fn classes_outcome(command: &str, cat: &FinCategory, classes: &[MorClass]) -> Outcome {
    let mut text = String::new();
    let mut entries = Vec::new();
    for c in classes {
        let members: Vec<&str> = c.iter().map(|m| cat.label(m)).collect();
        let _ = writeln!(text, "{} ({}) = {{ {} }}", c.name(), c.len(), members.join(", "));
        entries.push(json!({ "name": c.name(), "members": members }));
    }
    Outcome {
        text,
        json: json!({ "command": command, "classes": entries }),
        failed: false,
    }
}

/// A class defined by the instance, or one of `All`, `Iso`, `Sec`, `Ret`,
/// `Mon`, `Epi`, `QM`, `QE`, `SQM` when the instance has none by that name.
pub fn resolve_class(inst: &Instance, name: &str) -> Result<MorClass, CliError> {
    if let Some(c) = inst.class(name) {
        return Ok(c.clone());
    }
    let cat = &inst.cat;
    let basic = || basic_classes(cat);
    Ok(match name {
        "All" => MorClass::all("All", cat),
        "Iso" => basic().iso,
        "Sec" => basic().sec,
        "Ret" => basic().ret,
        "Mon" => basic().mon,
        "Epi" => basic().epi,
        "QM" => quasi_monos(cat),
        "QE" => quasi_epis(cat),
        "SQM" => strong_quasi_monos(cat),
        _ => return Err(CliError::Usage(format!("unknown class `{name}`"))),
    })
}

fn resolve_closure<'a>(inst: &'a Instance, name: &str) -> Result<&'a ClosureOperator, CliError> {
    inst.closure(name)
        .ok_or_else(|| CliError::Usage(format!("unknown closure operator `{name}`")))
}

fn resolve_morphism(cat: &FinCategory, label: &str) -> Result<MorId, CliError> {
    cat.mor_by_label(label)
        .ok_or_else(|| CliError::Usage(format!("unknown morphism `{label}`")))
}

/// Loads an instance, refusing files whose category axioms fail (use
/// `validate` to see why).
fn load_valid(file: &str) -> Result<Instance, CliError> {
    let inst = load(file)?;
    if !file.starts_with("preset:") {
        let report = validate_category(&inst.cat);
        if !report.is_pass() {
            return Err(CliError::Usage(format!(
                "{file}: category axioms fail ({}); run `validate` for details",
                report.detail
            )));
        }
    }
    Ok(inst)
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Classes { file, compute } => classes(file, compute),
        Command::Qrf { file, class, morphism } => part_command(file, class, morphism.as_deref(), Side::Right),
        Command::Qlf { file, class, morphism } => part_command(file, class, morphism.as_deref(), Side::Left),
        Command::Qfs {
            file,
            left,
            right,
            compare_weak,
        } => {
            let inst = load_valid(file)?;
            let (e, m) = (resolve_class(&inst, left)?, resolve_class(&inst, right)?);
            let mut reports = vec![is_qfs(&inst.cat, &e, &m)];
            if *compare_weak {
                reports.push(is_wfs(&inst.cat, &e, &m));
            }
            Ok(reports_outcome("qfs", &inst.cat, &reports))
        }
        Command::Closure { file, operator, check } => {
            let inst = load_valid(file)?;
            let cat = &inst.cat;
            let op = resolve_closure(&inst, operator)?;
            let report = match check {
                ClosureCheck::Axioms => validate_closure(cat, op),
                ClosureCheck::CPrime => continuity_pullback_variant(cat, op),
                ClosureCheck::Qi => is_quasi_idempotent(cat, op),
                ClosureCheck::Qwh(mode) => is_quasi_weakly_hereditary(cat, op, *mode)
                    .map_err(|e| CliError::Usage(catfile::describe(cat, &e)))?,
                ClosureCheck::Qcd => has_qcd(cat, op),
            };
            Ok(reports_outcome("closure", cat, &[report]))
        }
        Command::Derived { file, operator, emit } => {
            let inst = load_valid(file)?;
            let op = resolve_closure(&inst, operator)?;
            let d = derived_classes(&inst.cat, op);
            let classes: Vec<MorClass> = emit
                .iter()
                .map(|k| match k {
                    DerivedKind::Mqc => d.mqc.clone(),
                    DerivedKind::Eqc => d.eqc.clone(),
                })
                .collect();
            Ok(classes_outcome("derived", &inst.cat, &classes))
        }
        Command::Theorems { file, operator, only } => theorems(file, operator.as_deref(), only),
        Command::Instance { preset, output } => {
            let inst = quasifact::preset(preset)?;
            std::fs::write(output, emit(&inst)).map_err(|e| CliError::Io {
                path: output.clone(),
                message: e.to_string(),
            })?;
            let text = format!(
                "wrote {} ({} objects, {} morphisms)\n",
                output,
                inst.cat.num_objects(),
                inst.cat.num_morphisms()
            );
            Ok(Outcome {
                text,
                json: json!({ "command": "instance", "preset": preset, "output": output }),
                failed: false,
            })
        }
    }
}

fn validate(file: &str) -> Result<Outcome, CliError> {
    let inst = load(file)?;
    let cat = &inst.cat;
    let category = validate_category(cat);
    let mut reports = Vec::new();
    for op in &inst.closures {
        let mut r = if category.is_pass() {
            validate_closure(cat, op)
        } else {
            CheckReport::not_applicable("closure-axioms", "category axioms fail")
        };
        r.check = format!("closure-axioms {}", op.name());
        reports.push(r);
    }
    reports.insert(0, category);
    Ok(reports_outcome("validate", cat, &reports))
}

fn classes(file: &str, compute: &[Computed]) -> Result<Outcome, CliError> {
    let inst = load_valid(file)?;
    let mut all = inst.classes.clone();
    for c in compute {
        let name = match c {
            Computed::Iso => "Iso",
            Computed::Sec => "Sec",
            Computed::Ret => "Ret",
            Computed::Mon => "Mon",
            Computed::Epi => "Epi",
            Computed::Qm => "QM",
            Computed::Qe => "QE",
            Computed::Sqm => "SQM",
        };
        let class = resolve_class(
            &Instance {
                classes: Vec::new(),
                ..inst.clone()
            },
            name,
        )?;
        all.push(class);
    }
    Ok(classes_outcome("classes", &inst.cat, &all))
}

#[derive(Clone, Copy)]
enum Side {
    Right,
    Left,
}

fn part_command(file: &str, class: &str, morphism: Option<&str>, side: Side) -> Result<Outcome, CliError> {
    let inst = load_valid(file)?;
    let cat = &inst.cat;
    let class = resolve_class(&inst, class)?;
    let command = match side {
        Side::Right => "qrf",
        Side::Left => "qlf",
    };
    let Some(label) = morphism else {
        let report = match side {
            Side::Right => is_qrf_structure(cat, &class),
            Side::Left => is_qlf_structure(cat, &class),
        };
        return Ok(reports_outcome(command, cat, &[report]));
    };
    let f = resolve_morphism(cat, label)?;
    let found = match side {
        Side::Right => quasi_right_part(cat, &class, f).map(|p| (p.canonical, p.equivalence_class, p.mediating)),
        Side::Left => quasi_left_part(cat, &class, f).map(|p| (p.canonical, p.equivalence_class, p.mediating)),
    };
    let (check, which) = match side {
        Side::Right => ("quasi-right-part", "right"),
        Side::Left => ("quasi-left-part", "left"),
    };
    let Some((canonical, equivalent, mediating)) = found else {
        let report = CheckReport::fail(check, vec![f], format!("no quasi {which} part in {}", class.name()));
        return Ok(reports_outcome(command, cat, &[report]));
    };
    let mut report = CheckReport::pass(check);
    report.witnesses = vec![canonical];
    let mut text = format!(
        "quasi {which} part of {} in {}: {}\n  equivalent: {}\n",
        label,
        class.name(),
        cat.label(canonical),
        labels(cat, &equivalent).join(", ")
    );
    for &(p, g) in &mediating {
        let line = match side {
            Side::Right => format!("  {} = {} . {}\n", label, cat.label(p), cat.label(g)),
            Side::Left => format!("  {} = {} . {}\n", label, cat.label(g), cat.label(p)),
        };
        text.push_str(&line);
    }
    let json = json!({
        "command": command,
        "reports": [JsonReport::new(cat, &report)],
        "part": {
            "morphism": label,
            "canonical": cat.label(canonical),
            "equivalent": labels(cat, &equivalent),
            "mediating": mediating.iter().map(|&(p, g)| [cat.label(p), cat.label(g)]).collect::<Vec<_>>(),
        },
    });
    Ok(Outcome {
        text,
        json,
        failed: false,
    })
}

fn theorems(file: &str, operator: Option<&str>, only: &[String]) -> Result<Outcome, CliError> {
    let inst = load_valid(file)?;
    let cat = &inst.cat;
    let ids: Vec<TheoremId> = if only.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        only.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let mut bindings = default_bindings(&inst);
    if let Some(name) = operator {
        resolve_closure(&inst, name)?;
        bindings.retain(|b| b.closure.is_some_and(|c| c.name() == name));
    }
    let reports = run_selected(cat, &bindings, &ids);
    let (holds, vacuous, fail) = summary(&reports);
    let mut out = reports_outcome("theorems", cat, &reports);
    out.text.clear();
    for r in &reports {
        let _ = writeln!(out.text, "{} {} {}", r.check, r.verdict, r.detail);
        if r.is_fail() {
            for line in r.render(cat).lines().skip(1) {
                let _ = writeln!(out.text, "{line}");
            }
        }
    }
    let _ = writeln!(out.text, "{holds} HOLDS, {vacuous} VACUOUS, {fail} FAIL");
    out.json["summary"] = json!({ "holds": holds, "vacuous": vacuous, "fail": fail });
    Ok(out)
}
