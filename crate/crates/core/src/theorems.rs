//! Registry of results, each encoded as hypothesis and conclusion checks
//! evaluated on a bound instance.
//!
//! A result reports HOLDS when its hypotheses hold and so does its
//! conclusion, VACUOUS when some hypothesis fails, and FAIL with witnesses
//! when the conclusion fails under its hypotheses. Results with several parts
//! evaluate each part separately: FAIL if any part fails, HOLDS if some part
//! is non-vacuous and none fails, VACUOUS otherwise.
//!
//! Closure results additionally assume that the identities are in `M`, that
//! `M` has quasi right factorizations and that the operator passes
//! [`validate_closure`]; without these they are VACUOUS.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use crate::class::MorClass;
use crate::closure::{
    derived_classes, has_qcd, is_quasi_idempotent, is_quasi_weakly_hereditary, validate_closure, ClosureOperator,
    DerivedClasses, QwhMode,
};
use crate::error::{Error, Result};
use crate::factor::{is_qlf_structure, is_qrf_structure, RightParts};
use crate::fincat::{basic_classes, class_has_pullbacks, class_has_pushouts, BasicClasses, FinCategory, MorId};
use crate::instances::Instance;
use crate::lifting::{is_qfs, left_class, right_class, ult_class};
use crate::report::{CheckReport, Verdict};
use crate::sieves::{is_codomain_class, is_tilde_closed, quasi_epis, quasi_monos, sim_identity, strong_quasi_monos};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    LQrp,
    PIsoQrp,
    R15,
    PIsoEq,
    PEqcIso,
    TClosedRight,
    PLeftDense,
    PDenseIso,
    TWhLeft,
    PAntitone,
    PLt,
    PRt,
    PQlqd,
    TQfs,
    CQuasi,
    TPreserve,
    TConverse,
    RInt,
}

impl TheoremId {
    pub const ALL: [TheoremId; 18] = [
        TheoremId::LQrp,
        TheoremId::PIsoQrp,
        TheoremId::R15,
        TheoremId::PIsoEq,
        TheoremId::PEqcIso,
        TheoremId::TClosedRight,
        TheoremId::PLeftDense,
        TheoremId::PDenseIso,
        TheoremId::TWhLeft,
        TheoremId::PAntitone,
        TheoremId::PLt,
        TheoremId::PRt,
        TheoremId::PQlqd,
        TheoremId::TQfs,
        TheoremId::CQuasi,
        TheoremId::TPreserve,
        TheoremId::TConverse,
        TheoremId::RInt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::LQrp => "L-QRP",
            TheoremId::PIsoQrp => "P-ISO-QRP",
            TheoremId::R15 => "R-15",
            TheoremId::PIsoEq => "P-ISO-EQ",
            TheoremId::PEqcIso => "P-EQC-ISO",
            TheoremId::TClosedRight => "T-CLOSED-RIGHT",
            TheoremId::PLeftDense => "P-LEFT-DENSE",
            TheoremId::PDenseIso => "P-DENSE-ISO",
            TheoremId::TWhLeft => "T-WH-LEFT",
            TheoremId::PAntitone => "P-ANTITONE",
            TheoremId::PLt => "P-LT",
            TheoremId::PRt => "P-RT",
            TheoremId::PQlqd => "P-QLQD",
            TheoremId::TQfs => "T-QFS",
            TheoremId::CQuasi => "C-QUASI",
            TheoremId::TPreserve => "T-PRESERVE",
            TheoremId::TConverse => "T-CONVERSE",
            TheoremId::RInt => "R-INT",
        }
    }

    /// One-line statement of the result.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::LQrp => "quasi right parts: members are their own parts; parts are exactly the members with the same sieve; equal sieves share parts",
            TheoremId::PIsoQrp => "M closed under isos: α.m_f is a quasi right part of α.f",
            TheoremId::R15 => "⟨m(1)⟩ = ⟨m⟩ for m in M; ⟨f⟩ ⊆ ⟨g⟩ implies ⟨h(f)⟩ ⊆ ⟨h(g)⟩",
            TheoremId::PIsoEq => "M closed under isos: ⟨α(f)⟩ = ⟨α(f(1))⟩",
            TheoremId::PEqcIso => "E^QC is closed under isos (M closed under isos) and upward closed under ≤",
            TheoremId::TClosedRight => "C quasi idempotent: M^QC has quasi right factorizations",
            TheoremId::PLeftDense => "M ⊆ QM closed under composition: e-parts of quasi right factorizations are in E^QC",
            TheoremId::PDenseIso => "M ⊆ QM: c(e(1)) is an isomorphism for quasi dense e",
            TheoremId::TWhLeft => "QWH, QCD, E^QC ⊆ QE, E^QC ⊆ ult: E^QC has quasi left factorizations",
            TheoremId::PAntitone => "H1 ⊆ H2 implies ⧩H2 ⊆ ⧩H1 and H2^⧯ ⊆ H1^⧯",
            TheoremId::PLt => "M ⊆ QM closed under composition, C quasi idempotent: E^QC ⊆ ⧩(M^QC)",
            TheoremId::PRt => "M ⊆ QM, QWH, QCD, E^QC ⊆ QE, E^QC ⊆ ult: M^QC ⊆ (E^QC)^⧯",
            TheoremId::PQlqd => "⧩M ⊆ E^QC",
            TheoremId::TQfs => "(E, M) quasi factorization structure: quasi right M-factorizations given pullbacks; quasi left E-factorizations given M ⊆ Mon and pushouts",
            TheoremId::CQuasi => "M ⊆ QM closed under composition and ~, QWH, QI, QCD, E^QC ⊆ QE, E^QC ⊆ ult: (E^QC, M^QC) is a quasi factorization structure",
            TheoremId::TPreserve => "M ⊆ QM closed under composition, QWH, QI, QCD, (E, M) quasi factorization structure: so is (E^QC, M^QC)",
            TheoremId::TConverse => "M ⊆ SQM a codomain, (E^QC, M^QC) quasi factorization structure: C is QWH and QI",
            TheoremId::RInt => "M^QC ∩ E^QC = {f in M : f ~ 1}, which is Iso ∩ M when M ⊆ QM",
        }
    }

    fn needs(self) -> Needs {
        match self {
            TheoremId::LQrp | TheoremId::PIsoQrp | TheoremId::R15 | TheoremId::PIsoEq | TheoremId::PAntitone => {
                Needs::M
            }
            TheoremId::TQfs => Needs::EM,
            TheoremId::TPreserve => Needs::ClosureE,
            _ => Needs::Closure,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Needs {
    M,
    EM,
    Closure,
    ClosureE,
}

/// Classes and operator bound for a run. Closure results take `M` from the
/// operator's base class.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bindings<'a> {
    pub m: Option<&'a MorClass>,
    pub e: Option<&'a MorClass>,
    pub closure: Option<&'a ClosureOperator>,
}

impl<'a> Bindings<'a> {
    fn m(&self) -> Option<&'a MorClass> {
        self.closure.map(ClosureOperator::base).or(self.m)
    }

    fn satisfies(&self, needs: Needs) -> std::result::Result<(), &'static str> {
        match needs {
            Needs::M if self.m().is_none() => Err("M"),
            Needs::EM if self.m().is_none() => Err("M"),
            Needs::EM | Needs::ClosureE if self.e.is_none() => Err("E"),
            Needs::Closure | Needs::ClosureE if self.closure.is_none() => Err("closure"),
            _ => Ok(()),
        }
    }

    fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(m) = self.m() {
            parts.push(format!("M={}", m.name()));
        }
        if let Some(e) = self.e {
            parts.push(format!("E={}", e.name()));
        }
        if let Some(c) = self.closure {
            parts.push(format!("C={}", c.name()));
        }
        parts.join(", ")
    }
}

/// A result together with the instance it is evaluated on.
#[derive(Debug, Clone, Copy)]
pub struct TheoremBinding<'a> {
    pub theorem: TheoremId,
    pub cat: &'a FinCategory,
    pub bindings: Bindings<'a>,
}

/// Evaluates one result. Errors with `IncompleteBinding` when a class or
/// operator the result mentions is not bound.
pub fn run_theorem(binding: &TheoremBinding<'_>) -> Result<CheckReport> {
    let id = binding.theorem;
    binding
        .bindings
        .satisfies(id.needs())
        .map_err(|missing| Error::IncompleteBinding {
            theorem: id.as_str(),
            missing,
        })?;
    let ctx = Ctx::new(binding.cat, binding.bindings);
    Ok(ctx.run(id))
}

/// Runs every registry entry on every binding that supplies what it needs.
pub fn run_all(cat: &FinCategory, bindings: &[Bindings<'_>]) -> Vec<CheckReport> {
    run_selected(cat, bindings, &TheoremId::ALL)
}

/// Like [`run_all`], restricted to the given results.
pub fn run_selected(cat: &FinCategory, bindings: &[Bindings<'_>], only: &[TheoremId]) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for b in bindings {
        let ctx = Ctx::new(cat, *b);
        for &id in only {
            if b.satisfies(id.needs()).is_ok() {
                out.push(ctx.run(id));
            }
        }
    }
    out
}

/// HOLDS / VACUOUS / FAIL counts.
pub fn summary(reports: &[CheckReport]) -> (usize, usize, usize) {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    (count(Verdict::Holds), count(Verdict::Vacuous), count(Verdict::Fail))
}

/// The bindings an instance ships with: each closure (with the designated `E`
/// when its base is the designated `M`), the designated pair, and every other
/// class as a bare `M`.
pub fn default_bindings(inst: &Instance) -> Vec<Bindings<'_>> {
    let designated = inst
        .factorization
        .as_ref()
        .and_then(|(e, m)| Some((inst.class(e)?, inst.class(m)?)));
    let mut out: Vec<Bindings<'_>> = Vec::new();
    for op in &inst.closures {
        let e = designated.filter(|(_, m)| m.same_members(op.base())).map(|(e, _)| e);
        out.push(Bindings {
            m: None,
            e,
            closure: Some(op),
        });
    }
    if let Some((e, m)) = designated {
        if !out.iter().any(|b| b.e.is_some()) {
            out.push(Bindings {
                m: Some(m),
                e: Some(e),
                closure: None,
            });
        }
    }
    for class in &inst.classes {
        if !out.iter().any(|b| b.m().is_some_and(|m| m.same_members(class))) {
            out.push(Bindings {
                m: Some(class),
                e: None,
                closure: None,
            });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// evaluation

struct Part {
    name: &'static str,
    hypotheses: Vec<CheckReport>,
    conclusion: Option<CheckReport>,
}

fn part(name: &'static str, hypotheses: Vec<CheckReport>, conclusion: impl FnOnce() -> CheckReport) -> Part {
    let holds = hypotheses.iter().all(CheckReport::is_pass);
    Part {
        name,
        conclusion: holds.then(conclusion),
        hypotheses,
    }
}

fn part_report(p: Part) -> CheckReport {
    let mut report = match &p.conclusion {
        None => {
            let bad = p.hypotheses.iter().find(|h| !h.is_pass()).expect("a hypothesis failed");
            CheckReport::vacuous(p.name, format!("hypothesis {} does not hold", bad.check))
        }
        Some(c) if c.is_fail() => CheckReport::fail(p.name, c.witnesses.clone(), format!("{}: {}", c.check, c.detail)),
        Some(_) => CheckReport::new(p.name, Verdict::Holds),
    };
    report.children = p.hypotheses;
    report.children.extend(p.conclusion);
    report
}

fn combine(id: TheoremId, context: &str, parts: Vec<Part>) -> CheckReport {
    let children: Vec<CheckReport> = parts.into_iter().map(part_report).collect();
    let single = children.len() == 1;
    let verdict = if children.iter().any(CheckReport::is_fail) {
        Verdict::Fail
    } else if children.iter().any(|c| c.verdict == Verdict::Holds) {
        Verdict::Holds
    } else {
        Verdict::Vacuous
    };
    let (witnesses, detail) = match children.iter().find(|c| c.is_fail()) {
        Some(bad) => (
            bad.witnesses.clone(),
            format!("[{context}] {}: {}", bad.check, bad.detail),
        ),
        None => {
            let notes: Vec<String> = children
                .iter()
                .filter(|c| c.verdict == Verdict::Vacuous)
                .map(|c| {
                    if single {
                        c.detail.clone()
                    } else {
                        format!("{}: {}", c.check, c.detail)
                    }
                })
                .collect();
            (
                Vec::new(),
                format!("[{context}] {}", notes.join("; ")).trim_end().to_string(),
            )
        }
    };
    let mut report = CheckReport::fail(id.as_str(), witnesses, detail);
    report.verdict = verdict;
    if single {
        report.children = children.into_iter().next().unwrap().children;
    } else {
        report.children = children;
    }
    report
}

fn inclusion(check: impl Into<String>, sub: &MorClass, sup: &MorClass) -> CheckReport {
    let missing = sub.difference(sup);
    if missing.is_empty() {
        CheckReport::pass(check)
    } else {
        let detail = format!("{} members of {} outside {}", missing.len(), sub.name(), sup.name());
        CheckReport::fail(check, missing, detail)
    }
}

fn closed_under_composition(cat: &FinCategory, class: &MorClass) -> CheckReport {
    const CHECK: &str = "closed-under-composition";
    for m in class.iter() {
        for &n in cat.outgoing(cat.cod(m)) {
            if class.contains(n) && !class.contains(cat.then(m, n)) {
                return CheckReport::fail(CHECK, vec![m, n], "composite n . m is outside the class");
            }
        }
    }
    CheckReport::pass(CHECK)
}

fn closed_under_isos(cat: &FinCategory, class: &MorClass, iso: &MorClass) -> CheckReport {
    const CHECK: &str = "closed-under-isos";
    for m in class.iter() {
        for &a in cat.outgoing(cat.cod(m)) {
            if iso.contains(a) && !class.contains(cat.then(m, a)) {
                return CheckReport::fail(CHECK, vec![m, a], "α . m is outside the class");
            }
        }
    }
    CheckReport::pass(CHECK)
}

/// `F[m][f]`: some `g` has `m . g = f`, computed by composing every `g` into
/// `dom m` (no sieve index involved).
struct FactorMatrix {
    rows: Vec<Option<Vec<bool>>>,
}

impl FactorMatrix {
    fn new(cat: &FinCategory, class: &MorClass) -> Self {
        let mut rows = vec![None; cat.num_morphisms()];
        for m in class.iter() {
            let mut row = vec![false; cat.num_morphisms()];
            for &g in cat.incoming(cat.dom(m)) {
                row[cat.then(g, m).index()] = true;
            }
            rows[m.index()] = Some(row);
        }
        FactorMatrix { rows }
    }

    fn factors(&self, m: MorId, f: MorId) -> bool {
        self.rows[m.index()].as_ref().is_some_and(|r| r[f.index()])
    }

    /// The quasi right parts of `f`, straight from the definition.
    fn parts(&self, cat: &FinCategory, class: &MorClass, f: MorId) -> Vec<MorId> {
        let over: Vec<MorId> = cat
            .incoming(cat.cod(f))
            .iter()
            .copied()
            .filter(|&m| class.contains(m))
            .collect();
        over.iter()
            .copied()
            .filter(|&m| self.factors(m, f) && over.iter().all(|&o| !self.factors(o, f) || self.factors(o, m)))
            .collect()
    }

    fn is_part(&self, cat: &FinCategory, class: &MorClass, f: MorId, m: MorId) -> bool {
        class.contains(m)
            && cat.cod(m) == cat.cod(f)
            && self.factors(m, f)
            && cat
                .incoming(cat.cod(f))
                .iter()
                .all(|&o| !class.contains(o) || !self.factors(o, f) || self.factors(o, m))
    }
}

/// Lazily computed facts about one binding.
struct Ctx<'a> {
    cat: &'a FinCategory,
    b: Bindings<'a>,
    basic: OnceCell<BasicClasses>,
    qm: OnceCell<MorClass>,
    qe: OnceCell<MorClass>,
    parts: OnceCell<Option<RightParts>>,
    qrf: OnceCell<CheckReport>,
    standing: OnceCell<Vec<CheckReport>>,
    derived: OnceCell<DerivedClasses>,
    qi: OnceCell<CheckReport>,
    qwh: OnceCell<CheckReport>,
    qcd: OnceCell<CheckReport>,
    composition: OnceCell<CheckReport>,
    ult_hyp: OnceCell<CheckReport>,
    eqc_in_qe: OnceCell<CheckReport>,
}

impl<'a> Ctx<'a> {
    fn new(cat: &'a FinCategory, b: Bindings<'a>) -> Self {
        Ctx {
            cat,
            b,
            basic: OnceCell::new(),
            qm: OnceCell::new(),
            qe: OnceCell::new(),
            parts: OnceCell::new(),
            qrf: OnceCell::new(),
            standing: OnceCell::new(),
            derived: OnceCell::new(),
            qi: OnceCell::new(),
            qwh: OnceCell::new(),
            qcd: OnceCell::new(),
            composition: OnceCell::new(),
            ult_hyp: OnceCell::new(),
            eqc_in_qe: OnceCell::new(),
        }
    }

    fn m(&self) -> &'a MorClass {
        self.b.m().expect("binding checked")
    }

    fn e(&self) -> &'a MorClass {
        self.b.e.expect("binding checked")
    }

    fn op(&self) -> &'a ClosureOperator {
        self.b.closure.expect("binding checked")
    }

    fn basic(&self) -> &BasicClasses {
        self.basic.get_or_init(|| basic_classes(self.cat))
    }

    fn qm(&self) -> &MorClass {
        self.qm.get_or_init(|| quasi_monos(self.cat))
    }

    fn qe(&self) -> &MorClass {
        self.qe.get_or_init(|| quasi_epis(self.cat))
    }

    fn qrf(&self) -> CheckReport {
        self.qrf.get_or_init(|| is_qrf_structure(self.cat, self.m())).clone()
    }

    fn parts(&self) -> Option<&RightParts> {
        self.parts
            .get_or_init(|| {
                let parts = RightParts::new(self.cat, self.m());
                parts.is_total().then_some(parts)
            })
            .as_ref()
    }

    fn m_in_qm(&self) -> CheckReport {
        inclusion("M ⊆ QM", self.m(), self.qm())
    }

    fn composition(&self) -> CheckReport {
        self.composition
            .get_or_init(|| closed_under_composition(self.cat, self.m()))
            .clone()
    }

    fn iso_closed(&self) -> CheckReport {
        closed_under_isos(self.cat, self.m(), &self.basic().iso)
    }

    fn standing(&self) -> Vec<CheckReport> {
        self.standing
            .get_or_init(|| {
                let v = validate_closure(self.cat, self.op());
                if v.is_pass() {
                    vec![v]
                } else {
                    let mut failed = v.clone();
                    failed.check = "closure-valid".into();
                    vec![failed]
                }
            })
            .clone()
    }

    fn with_standing(&self, extra: Vec<CheckReport>) -> Vec<CheckReport> {
        let mut h = self.standing();
        if h.iter().all(CheckReport::is_pass) {
            h.extend(extra);
        }
        h
    }

    fn derived(&self) -> &DerivedClasses {
        self.derived.get_or_init(|| derived_classes(self.cat, self.op()))
    }

    fn qi(&self) -> CheckReport {
        self.qi.get_or_init(|| is_quasi_idempotent(self.cat, self.op())).clone()
    }

    fn qwh(&self) -> CheckReport {
        self.qwh
            .get_or_init(|| {
                is_quasi_weakly_hereditary(self.cat, self.op(), QwhMode::Existential)
                    .expect("existential mode needs no stored witnesses")
            })
            .clone()
    }

    fn qcd(&self) -> CheckReport {
        self.qcd.get_or_init(|| has_qcd(self.cat, self.op())).clone()
    }

    fn eqc_in_qe(&self) -> CheckReport {
        self.eqc_in_qe
            .get_or_init(|| inclusion("E^QC ⊆ QE", &self.derived().eqc, self.qe()))
            .clone()
    }

    fn eqc_in_ult(&self) -> CheckReport {
        self.ult_hyp
            .get_or_init(|| {
                let eqc = &self.derived().eqc;
                inclusion("E^QC ⊆ ult(E^QC, M)", eqc, &ult_class(self.cat, eqc, self.m()))
            })
            .clone()
    }

    fn run(&self, id: TheoremId) -> CheckReport {
        let parts = match id {
            TheoremId::LQrp => vec![self.l_qrp()],
            TheoremId::PIsoQrp => vec![self.p_iso_qrp()],
            TheoremId::R15 => vec![self.r15()],
            TheoremId::PIsoEq => vec![self.p_iso_eq()],
            TheoremId::PEqcIso => self.p_eqc_iso(),
            TheoremId::TClosedRight => vec![self.t_closed_right()],
            TheoremId::PLeftDense => vec![self.p_left_dense()],
            TheoremId::PDenseIso => vec![self.p_dense_iso()],
            TheoremId::TWhLeft => vec![self.t_wh_left()],
            TheoremId::PAntitone => vec![self.p_antitone()],
            TheoremId::PLt => vec![self.p_lt()],
            TheoremId::PRt => vec![self.p_rt()],
            TheoremId::PQlqd => vec![self.p_qlqd()],
            TheoremId::TQfs => self.t_qfs(),
            TheoremId::CQuasi => vec![self.c_quasi()],
            TheoremId::TPreserve => vec![self.t_preserve()],
            TheoremId::TConverse => vec![self.t_converse()],
            TheoremId::RInt => self.r_int(),
        };
        combine(id, &self.b.describe(), parts)
    }

    // -- factorization results ------------------------------------------------

    fn l_qrp(&self) -> Part {
        part("statement", vec![self.qrf()], || {
            let cat = self.cat;
            let m_class = self.m();
            let parts = self.parts().expect("qrf holds");
            let idx = cat.sieves();
            let fm = FactorMatrix::new(cat, m_class);
            let literal: Vec<Vec<MorId>> = cat.morphisms().map(|f| fm.parts(cat, m_class, f)).collect();
            for f in cat.morphisms() {
                let mf = parts.part(f).expect("total");
                if m_class.contains(f) && !idx.same_sieve(mf, f) {
                    return CheckReport::fail("(a)", vec![f, mf], "⟨m_f⟩ differs from ⟨f⟩ for f in M");
                }
                let by_sieve: Vec<MorId> = cat
                    .incoming(cat.cod(f))
                    .iter()
                    .copied()
                    .filter(|&m| m_class.contains(m) && idx.same_sieve(m, mf))
                    .collect();
                if by_sieve != literal[f.index()] {
                    let odd = by_sieve
                        .iter()
                        .chain(&literal[f.index()])
                        .copied()
                        .find(|m| by_sieve.contains(m) != literal[f.index()].contains(m))
                        .expect("lists differ");
                    return CheckReport::fail(
                        "(b)",
                        vec![f, odd],
                        "quasi right parts are not the members with ⟨m⟩ = ⟨m_f⟩",
                    );
                }
            }
            for f in cat.morphisms() {
                let mf = parts.part(f).expect("total");
                for &g in cat.incoming(cat.cod(f)) {
                    if idx.same_sieve(f, g) && !literal[g.index()].contains(&mf) {
                        return CheckReport::fail(
                            "(c)",
                            vec![f, g],
                            "m_f is not a quasi right part of g with ⟨g⟩ = ⟨f⟩",
                        );
                    }
                }
            }
            CheckReport::pass("quasi-right-part-lemma")
        })
    }

    fn p_iso_qrp(&self) -> Part {
        part("statement", vec![self.qrf(), self.iso_closed()], || {
            let cat = self.cat;
            let parts = self.parts().expect("qrf holds");
            let fm = FactorMatrix::new(cat, self.m());
            for f in cat.morphisms() {
                let mf = parts.part(f).expect("total");
                for &a in cat.outgoing(cat.cod(f)) {
                    if self.basic().iso.contains(a) && !fm.is_part(cat, self.m(), cat.then(f, a), cat.then(mf, a)) {
                        return CheckReport::fail(
                            "iso-composite-part",
                            vec![f, a],
                            "α . m_f is not a quasi right part of α . f",
                        );
                    }
                }
            }
            CheckReport::pass("iso-composite-part")
        })
    }

    fn r15(&self) -> Part {
        part("statement", vec![self.qrf()], || {
            let cat = self.cat;
            let parts = self.parts().expect("qrf holds");
            let idx = cat.sieves();
            for m in self.m().iter() {
                if !idx.same_sieve(parts.part(m).expect("total"), m) {
                    return CheckReport::fail("(a)", vec![m], "⟨m(1)⟩ differs from ⟨m⟩");
                }
            }
            // ⟨h . f⟩ depends on ⟨f⟩ only, so one representative per sieve suffices
            for y in cat.objects() {
                let mut reps: Vec<MorId> = Vec::new();
                for &f in cat.incoming(y) {
                    if !reps.iter().any(|&r| idx.same_sieve(r, f)) {
                        reps.push(f);
                    }
                }
                for &f in &reps {
                    for &g in &reps {
                        if !idx.in_sieve(f, g) {
                            continue;
                        }
                        for &h in cat.outgoing(y) {
                            let hf = parts.part(cat.then(f, h)).expect("total");
                            let hg = parts.part(cat.then(g, h)).expect("total");
                            if !idx.sieve_subset(hf, hg) {
                                return CheckReport::fail("(b)", vec![f, g, h], "⟨h(f)⟩ is not contained in ⟨h(g)⟩");
                            }
                        }
                    }
                }
            }
            CheckReport::pass("image-part-remark")
        })
    }

    fn p_iso_eq(&self) -> Part {
        part("statement", vec![self.qrf(), self.iso_closed()], || {
            let cat = self.cat;
            let parts = self.parts().expect("qrf holds");
            let idx = cat.sieves();
            for f in cat.morphisms() {
                let f1 = parts.part(f).expect("total");
                for &a in cat.outgoing(cat.cod(f)) {
                    if !self.basic().iso.contains(a) {
                        continue;
                    }
                    let af = parts.part(cat.then(f, a)).expect("total");
                    let af1 = parts.part(cat.then(f1, a)).expect("total");
                    if !idx.same_sieve(af, af1) {
                        return CheckReport::fail("iso-image", vec![f, a], "⟨α(f)⟩ differs from ⟨α(f(1))⟩");
                    }
                }
            }
            CheckReport::pass("iso-image")
        })
    }

    // -- closure results ------------------------------------------------------

    fn p_eqc_iso(&self) -> Vec<Part> {
        let a = part("(a)", self.with_standing(vec![self.iso_closed()]), || {
            let cat = self.cat;
            let eqc = &self.derived().eqc;
            for f in eqc.iter() {
                for &a in cat.outgoing(cat.cod(f)) {
                    if self.basic().iso.contains(a) && !eqc.contains(cat.then(f, a)) {
                        return CheckReport::fail("iso-composite-dense", vec![f, a], "α . f is not quasi dense");
                    }
                }
            }
            CheckReport::pass("iso-composite-dense")
        });
        let b = part("(b)", self.with_standing(vec![]), || {
            let cat = self.cat;
            let eqc = &self.derived().eqc;
            let idx = cat.sieves();
            for f in eqc.iter() {
                for &g in cat.incoming(cat.cod(f)) {
                    if idx.in_sieve(f, g) && !eqc.contains(g) {
                        return CheckReport::fail("upward-closed", vec![f, g], "f ≤ g, f quasi dense, g not");
                    }
                }
            }
            CheckReport::pass("upward-closed")
        });
        vec![a, b]
    }

    fn t_closed_right(&self) -> Part {
        part("statement", self.with_standing(vec![self.qi()]), || {
            is_qrf_structure(self.cat, &self.derived().mqc)
        })
    }

    fn p_left_dense(&self) -> Part {
        part(
            "statement",
            self.with_standing(vec![self.m_in_qm(), self.composition()]),
            || {
                let cat = self.cat;
                let parts = self.parts().expect("qrf holds");
                let eqc = &self.derived().eqc;
                for f in cat.morphisms() {
                    for &m in parts.equivalence_class(f).expect("total") {
                        for &e in cat.hom(cat.dom(f), cat.dom(m)) {
                            if cat.comp(m, e) == Some(f) && !eqc.contains(e) {
                                return CheckReport::fail("left-part-dense", vec![f, m, e], "e-part not quasi dense");
                            }
                        }
                    }
                }
                CheckReport::pass("left-part-dense")
            },
        )
    }

    fn p_dense_iso(&self) -> Part {
        part("statement", self.with_standing(vec![self.m_in_qm()]), || {
            let parts = self.parts().expect("qrf holds");
            for e in self.derived().eqc.iter() {
                let c = self.op().get(parts.part(e).expect("total")).expect("in M");
                if !self.basic().iso.contains(c) {
                    return CheckReport::fail("closure-is-iso", vec![e, c], "c(e(1)) is not an isomorphism");
                }
            }
            CheckReport::pass("closure-is-iso")
        })
    }

    fn wh_hypotheses(&self) -> Vec<CheckReport> {
        vec![self.qwh(), self.qcd(), self.eqc_in_qe(), self.eqc_in_ult()]
    }

    fn t_wh_left(&self) -> Part {
        part("statement", self.with_standing(self.wh_hypotheses()), || {
            is_qlf_structure(self.cat, &self.derived().eqc)
        })
    }

    fn p_antitone(&self) -> Part {
        part("statement", vec![], || {
            let cat = self.cat;
            let mut classes: Vec<MorClass> = vec![MorClass::empty("∅", cat), MorClass::all("All", cat)];
            classes.extend(self.basic().iter().cloned());
            classes.push(self.m().clone());
            if let Some(e) = self.b.e {
                classes.push(e.clone());
            }
            let lefts: Vec<MorClass> = classes.iter().map(|h| left_class(cat, h)).collect();
            let rights: Vec<MorClass> = classes.iter().map(|h| right_class(cat, h)).collect();
            for (i, h1) in classes.iter().enumerate() {
                for (j, h2) in classes.iter().enumerate() {
                    if !h1.is_subset(h2) {
                        continue;
                    }
                    let l = inclusion(format!("⧩{} ⊆ ⧩{}", h2.name(), h1.name()), &lefts[j], &lefts[i]);
                    if l.is_fail() {
                        return l;
                    }
                    let r = inclusion(format!("{}^⧯ ⊆ {}^⧯", h2.name(), h1.name()), &rights[j], &rights[i]);
                    if r.is_fail() {
                        return r;
                    }
                }
            }
            CheckReport::pass("antitone")
        })
    }

    fn p_lt(&self) -> Part {
        part(
            "statement",
            self.with_standing(vec![self.m_in_qm(), self.composition(), self.qi()]),
            || {
                let d = self.derived();
                inclusion("E^QC ⊆ ⧩(M^QC)", &d.eqc, &left_class(self.cat, &d.mqc))
            },
        )
    }

    fn p_rt(&self) -> Part {
        let mut hyp = vec![self.m_in_qm()];
        hyp.extend(self.wh_hypotheses());
        part("statement", self.with_standing(hyp), || {
            let d = self.derived();
            inclusion("M^QC ⊆ (E^QC)^⧯", &d.mqc, &right_class(self.cat, &d.eqc))
        })
    }

    fn p_qlqd(&self) -> Part {
        part("statement", self.with_standing(vec![]), || {
            inclusion("⧩M ⊆ E^QC", &left_class(self.cat, self.m()), &self.derived().eqc)
        })
    }

    fn t_qfs(&self) -> Vec<Part> {
        let qfs = is_qfs(self.cat, self.e(), self.m());
        let a = part(
            "(a)",
            vec![qfs.clone(), class_has_pullbacks(self.cat, self.m())],
            || self.qrf(),
        );
        let b = part(
            "(b)",
            vec![
                qfs,
                inclusion("M ⊆ Mon", self.m(), &self.basic().mon),
                class_has_pushouts(self.cat, self.e()),
            ],
            || is_qlf_structure(self.cat, self.e()),
        );
        vec![a, b]
    }

    fn derived_qfs(&self) -> CheckReport {
        let d = self.derived();
        is_qfs(self.cat, &d.eqc, &d.mqc)
    }

    fn c_quasi(&self) -> Part {
        let mut hyp = vec![
            self.m_in_qm(),
            self.composition(),
            is_tilde_closed(self.cat, self.m()),
            self.qi(),
        ];
        hyp.extend(self.wh_hypotheses());
        part("statement", self.with_standing(hyp), || self.derived_qfs())
    }

    fn t_preserve(&self) -> Part {
        let hyp = vec![
            self.m_in_qm(),
            self.composition(),
            self.qwh(),
            self.qi(),
            self.qcd(),
            is_qfs(self.cat, self.e(), self.m()),
        ];
        part("statement", self.with_standing(hyp), || self.derived_qfs())
    }

    fn t_converse(&self) -> Part {
        let hyp = vec![
            inclusion("M ⊆ SQM", self.m(), &strong_quasi_monos(self.cat)),
            is_codomain_class(self.cat, self.m()),
            self.derived_qfs(),
        ];
        part("statement", self.with_standing(hyp), || {
            CheckReport::all("qwh-and-qi", vec![self.qwh(), self.qi()])
        })
    }

    fn r_int(&self) -> Vec<Part> {
        let cat = self.cat;
        let meet = || {
            let d = self.derived();
            d.mqc.intersection(&d.eqc, "M^QC ∩ E^QC")
        };
        let equal = |check: &'static str, lhs: MorClass, rhs: MorClass| {
            let mut odd = lhs.difference(&rhs);
            odd.extend(rhs.difference(&lhs));
            if odd.is_empty() {
                CheckReport::pass(check)
            } else {
                CheckReport::fail(check, odd, format!("{} differs from {}", lhs.name(), rhs.name()))
            }
        };
        let split = part("(a)", self.with_standing(vec![]), || {
            let rhs = MorClass::filter("{f in M : f ~ 1}", cat, |f| {
                self.m().contains(f) && sim_identity(cat, f)
            });
            equal("intersection-split", meet(), rhs)
        });
        let iso = part("(b)", self.with_standing(vec![self.m_in_qm()]), || {
            equal(
                "intersection-iso",
                meet(),
                self.basic().iso.intersection(self.m(), "Iso ∩ M"),
            )
        });
        vec![split, iso]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::small::{arrow2, split};

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert_eq!("X-1".parse::<TheoremId>(), Err(Error::UnknownTheorem("X-1".into())));
    }

    #[test]
    fn incomplete_binding() {
        let inst = arrow2();
        let b = TheoremBinding {
            theorem: TheoremId::TClosedRight,
            cat: &inst.cat,
            bindings: Bindings::default(),
        };
        assert_eq!(
            run_theorem(&b),
            Err(Error::IncompleteBinding {
                theorem: "T-CLOSED-RIGHT",
                missing: "closure"
            })
        );
    }

    #[test]
    fn empty_binding_set_gives_no_reports() {
        let inst = split();
        assert!(run_all(&inst.cat, &[]).is_empty());
    }

    #[test]
    fn antitone_holds_with_empty_class() {
        let inst = split();
        let m = MorClass::empty("∅", &inst.cat);
        let b = TheoremBinding {
            theorem: TheoremId::PAntitone,
            cat: &inst.cat,
            bindings: Bindings {
                m: Some(&m),
                ..Bindings::default()
            },
        };
        assert_eq!(run_theorem(&b).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn small_presets_have_no_failures() {
        for inst in [arrow2(), split()] {
            let reports = run_all(&inst.cat, &default_bindings(&inst));
            for r in &reports {
                assert_ne!(r.verdict, Verdict::Fail, "{}", r.render(&inst.cat));
            }
            let (holds, vacuous, _) = summary(&reports);
            assert!(holds > 0);
            assert!(holds + vacuous == reports.len());
        }
    }

    #[test]
    fn arrow2_identity_closure_holds_throughout() {
        let inst = arrow2();
        let op = inst.closure("identity-M").unwrap();
        let b = Bindings {
            closure: Some(op),
            ..Bindings::default()
        };
        let reports = run_all(&inst.cat, &[b]);
        assert!(reports.iter().all(|r| r.verdict == Verdict::Holds));
    }

    #[test]
    fn class_without_parts_is_vacuous() {
        let inst = arrow2();
        let cat = &inst.cat;
        let a = cat.obj_by_label("A").unwrap();
        let m = MorClass::from_members("M", cat, [cat.id(a)]).unwrap();
        let b = TheoremBinding {
            theorem: TheoremId::LQrp,
            cat,
            bindings: Bindings {
                m: Some(&m),
                ..Bindings::default()
            },
        };
        let report = run_theorem(&b).unwrap();
        assert_eq!(report.verdict, Verdict::Vacuous);
        assert!(report
            .find("quasi-right-factorization")
            .is_some_and(CheckReport::is_fail));
    }
}
