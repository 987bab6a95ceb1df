//! Closure operators with respect to a morphism class `M`, and the classes
//! and properties derived from them.

use crate::class::MorClass;
use crate::error::{Error, Result};
use crate::factor::{inverse_image_part, is_qrf_structure, RightParts};
use crate::fincat::{class_has_pullbacks, FinCategory, MorId};
use crate::report::{CheckReport, Verdict};
use crate::sieves::{sim, sim_identity};

/// A table `m ↦ c(m)` on the members of a base class, with optional chosen
/// factorization witnesses `m = c(m) . j_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureOperator {
    name: String,
    base: MorClass,
    table: Vec<Option<MorId>>,
    witness: Option<Vec<Option<MorId>>>,
}

impl ClosureOperator {
    /// Builds an operator from `(m, c(m))` pairs; every member of `base` needs
    /// exactly one entry.
    pub fn new(
        name: impl Into<String>,
        cat: &FinCategory,
        base: MorClass,
        entries: impl IntoIterator<Item = (MorId, MorId)>,
    ) -> Result<Self> {
        let mut table = vec![None; cat.num_morphisms()];
        for (m, c) in entries {
            for id in [m, c] {
                if id.index() >= cat.num_morphisms() {
                    return Err(Error::InvalidMorphism(id.0));
                }
            }
            if !base.contains(m) {
                return Err(Error::NotInClass(m));
            }
            if cat.cod(c) != cat.cod(m) {
                return Err(Error::CodomainViolation { m, c });
            }
            if !base.contains(c) {
                return Err(Error::ImageOutsideClass { m, c });
            }
            table[m.index()] = Some(c);
        }
        if let Some(m) = base.iter().find(|m| table[m.index()].is_none()) {
            return Err(Error::TableIncomplete(m));
        }
        Ok(ClosureOperator {
            name: name.into(),
            base,
            table,
            witness: None,
        })
    }

    /// `c(m) = m`.
    pub fn identity(cat: &FinCategory, base: MorClass) -> Result<Self> {
        let entries: Vec<_> = base.iter().map(|m| (m, m)).collect();
        let op = Self::new("identity", cat, base, entries)?;
        let witnesses: Vec<_> = op.base.iter().map(|m| (m, cat.id(cat.dom(m)))).collect();
        op.with_witnesses(cat, witnesses)
    }

    /// `c(m) = 1_{cod m}`; needs the identities in the base class.
    pub fn top(cat: &FinCategory, base: MorClass) -> Result<Self> {
        let entries: Vec<_> = base.iter().map(|m| (m, cat.id(cat.cod(m)))).collect();
        let op = Self::new("top", cat, base, entries)?;
        let witnesses: Vec<_> = op.base.iter().map(|m| (m, m)).collect();
        op.with_witnesses(cat, witnesses)
    }

    /// Attaches chosen witnesses `j_m` with `m = c(m) . j_m`.
    pub fn with_witnesses(
        mut self,
        cat: &FinCategory,
        pairs: impl IntoIterator<Item = (MorId, MorId)>,
    ) -> Result<Self> {
        let mut witness = vec![None; cat.num_morphisms()];
        for (m, j) in pairs {
            if j.index() >= cat.num_morphisms() {
                return Err(Error::InvalidMorphism(j.0));
            }
            let c = self.get(m).ok_or(Error::NotInClass(m))?;
            if cat.comp(c, j) != Some(m) {
                return Err(Error::InvalidWitness { m, j });
            }
            witness[m.index()] = Some(j);
        }
        self.witness = Some(witness);
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &MorClass {
        &self.base
    }

    /// `c(m)`, or `None` when `m` is not in the base class.
    pub fn get(&self, m: MorId) -> Option<MorId> {
        self.table.get(m.index()).copied().flatten()
    }

    fn at(&self, m: MorId) -> MorId {
        self.table[m.index()].expect("member of the base class")
    }

    /// The stored witness `j_m`, if witnesses were supplied.
    pub fn witness(&self, m: MorId) -> Option<MorId> {
        self.witness.as_ref().and_then(|w| w[m.index()])
    }

    pub fn has_witnesses(&self) -> bool {
        self.witness.is_some()
    }

    /// `(m, c(m))` in id order of `m`.
    pub fn entries(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        self.base.iter().map(|m| (m, self.at(m)))
    }
}

fn preconditions(cat: &FinCategory, base: &MorClass) -> Vec<CheckReport> {
    let ids = match cat.objects().map(|x| cat.id(x)).find(|&i| !base.contains(i)) {
        None => CheckReport::pass("identities-in-class"),
        Some(i) => CheckReport::fail("identities-in-class", vec![i], "identity missing from the base class"),
    };
    vec![ids, is_qrf_structure(cat, base)]
}

/// Turns failed preconditions into a NOT-APPLICABLE report.
fn gate(check: &str, pre: Vec<CheckReport>) -> std::result::Result<(), CheckReport> {
    match pre.iter().find(|p| !p.is_pass()) {
        None => Ok(()),
        Some(bad) => {
            let mut report = CheckReport::not_applicable(check, format!("precondition {} does not hold", bad.check));
            report.children = pre;
            Err(report)
        }
    }
}

/// Extension, monotonicity and continuity, as children `extension`,
/// `monotonicity` (witnesses `[m, m']`) and `continuity` (witnesses `[f, m]`).
/// NOT-APPLICABLE unless the identities are in `M` and `M` has quasi right
/// factorizations.
pub fn validate_closure(cat: &FinCategory, op: &ClosureOperator) -> CheckReport {
    const CHECK: &str = "closure-axioms";
    if let Err(report) = gate(CHECK, preconditions(cat, op.base())) {
        return report;
    }
    let idx = cat.sieves();
    let base = op.base();

    let extension = base.iter().find(|&m| !idx.sieve_subset(m, op.at(m))).map_or_else(
        || CheckReport::pass("extension"),
        |m| CheckReport::fail("extension", vec![m], "m is not below c(m)"),
    );

    let monotonicity = base
        .iter()
        .find_map(|m| {
            cat.incoming(cat.cod(m))
                .iter()
                .copied()
                .filter(|&n| base.contains(n) && idx.sieve_subset(m, n))
                .find(|&n| !idx.sieve_subset(op.at(m), op.at(n)))
                .map(|n| (m, n))
        })
        .map_or_else(
            || CheckReport::pass("monotonicity"),
            |(m, n)| CheckReport::fail("monotonicity", vec![m, n], "m <= m' but c(m) is not below c(m')"),
        );

    let parts = RightParts::new(cat, base);
    let continuity = base
        .iter()
        .find_map(|m| {
            cat.outgoing(cat.cod(m)).iter().copied().find_map(|f| {
                let lhs = parts.image(cat, f, op.at(m)).ok()?;
                let rhs = op.at(parts.image(cat, f, m).ok()?);
                (!idx.sieve_subset(lhs, rhs)).then_some((f, m))
            })
        })
        .map_or_else(
            || CheckReport::pass("continuity"),
            |(f, m)| CheckReport::fail("continuity", vec![f, m], "f(c(m)) is not below c(f(m))"),
        );

    CheckReport::all(CHECK, vec![extension, monotonicity, continuity])
}

/// Continuity in pullback form, `c(f⁻¹(m)) ≤ f⁻¹(c(m))`; witnesses `[f, m]`.
/// NOT-APPLICABLE unless `M` has pullbacks along every morphism.
pub fn continuity_pullback_variant(cat: &FinCategory, op: &ClosureOperator) -> CheckReport {
    const CHECK: &str = "continuity-pullback";
    let base = op.base();
    let mut pre = preconditions(cat, base);
    pre.push(class_has_pullbacks(cat, base));
    if let Err(report) = gate(CHECK, pre) {
        return report;
    }
    let idx = cat.sieves();
    for m in base.iter() {
        for &f in cat.incoming(cat.cod(m)) {
            let (Ok(pulled), Ok(pulled_closure)) = (
                inverse_image_part(cat, base, f, m),
                inverse_image_part(cat, base, f, op.at(m)),
            ) else {
                continue;
            };
            if !idx.sieve_subset(op.at(pulled), pulled_closure) {
                return CheckReport::fail(CHECK, vec![f, m], "c(f⁻¹(m)) is not below f⁻¹(c(m))");
            }
        }
    }
    CheckReport::pass(CHECK)
}

/// `c(m) ~ m`.
pub fn quasi_closed(cat: &FinCategory, op: &ClosureOperator, m: MorId) -> Result<bool> {
    let c = op.get(m).ok_or(Error::NotInClass(m))?;
    Ok(sim(cat, c, m))
}

/// `c(m) ~ 1_{cod m}`.
pub fn quasi_dense_in(cat: &FinCategory, op: &ClosureOperator, m: MorId) -> Result<bool> {
    let c = op.get(m).ok_or(Error::NotInClass(m))?;
    Ok(sim_identity(cat, c))
}

fn dense_with(cat: &FinCategory, op: &ClosureOperator, parts: &RightParts, f: MorId) -> bool {
    parts.part(f).is_some_and(|p| sim_identity(cat, op.at(p)))
}

/// `E^QC`: morphisms `f` whose `M`-part `f(1)` is quasi dense in `cod f`.
pub fn dense_morphisms(cat: &FinCategory, op: &ClosureOperator) -> MorClass {
    let parts = RightParts::new(cat, op.base());
    MorClass::filter("E^QC", cat, |f| dense_with(cat, op, &parts, f))
}

/// `M^QC`: the quasi closed members of `M`.
pub fn closed_class(cat: &FinCategory, op: &ClosureOperator) -> MorClass {
    MorClass::filter("M^QC", cat, |m| op.get(m).is_some_and(|c| sim(cat, c, m)))
}

/// `M^QC` together with `E^QC`.
#[derive(Debug, Clone)]
pub struct DerivedClasses {
    pub mqc: MorClass,
    pub eqc: MorClass,
}

pub fn derived_classes(cat: &FinCategory, op: &ClosureOperator) -> DerivedClasses {
    DerivedClasses {
        mqc: closed_class(cat, op),
        eqc: dense_morphisms(cat, op),
    }
}

/// `c(c(m)) ~ c(m)` for every member; FAIL witness `[m]`.
pub fn is_quasi_idempotent(cat: &FinCategory, op: &ClosureOperator) -> CheckReport {
    const CHECK: &str = "quasi-idempotent";
    match op.base().iter().find(|&m| !sim(cat, op.at(op.at(m)), op.at(m))) {
        None => CheckReport::pass(CHECK),
        Some(m) => CheckReport::fail(CHECK, vec![m], "c(c(m)) is not equivalent to c(m)"),
    }
}

/// How the factorization witness `j_m` is chosen for weak heredity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QwhMode {
    /// Some `j` with `m = c(m) . j` satisfies the condition.
    #[default]
    Existential,
    /// The stored witness satisfies it.
    ChosenWitness,
}

/// All `j` with `m = c(m) . j`, in id order.
pub fn witness_j(cat: &FinCategory, op: &ClosureOperator, m: MorId) -> Result<Vec<MorId>> {
    let c = op.get(m).ok_or(Error::NotInClass(m))?;
    Ok(cat
        .hom(cat.dom(m), cat.dom(c))
        .iter()
        .copied()
        .filter(|&j| cat.comp(c, j) == Some(m))
        .collect())
}

/// `c(j_m(1)) ~ 1` for each member `m`. FAIL witnesses are `m` followed by
/// the witnesses tried.
pub fn is_quasi_weakly_hereditary(cat: &FinCategory, op: &ClosureOperator, mode: QwhMode) -> Result<CheckReport> {
    const CHECK: &str = "quasi-weakly-hereditary";
    let parts = RightParts::new(cat, op.base());
    let good = |j: MorId| dense_with(cat, op, &parts, j);
    for m in op.base().iter() {
        let tried = match mode {
            QwhMode::Existential => witness_j(cat, op, m)?,
            QwhMode::ChosenWitness => vec![op.witness(m).ok_or(Error::MissingWitness(m))?],
        };
        if !tried.iter().any(|&j| good(j)) {
            let mut witnesses = vec![m];
            witnesses.extend(&tried);
            return Ok(CheckReport::fail(
                CHECK,
                witnesses,
                "no witness j with c(j(1)) equivalent to 1",
            ));
        }
    }
    Ok(CheckReport::pass(CHECK))
}

/// Composites of quasi dense members are quasi dense morphisms; FAIL
/// witnesses `[m, n]` for the composite `n . m`.
pub fn has_qcd(cat: &FinCategory, op: &ClosureOperator) -> CheckReport {
    const CHECK: &str = "qcd";
    let parts = RightParts::new(cat, op.base());
    let dense: Vec<MorId> = op.base().iter().filter(|&m| sim_identity(cat, op.at(m))).collect();
    for &m in &dense {
        for &n in &dense {
            if let Some(nm) = cat.comp(n, m) {
                if !dense_with(cat, op, &parts, nm) {
                    return CheckReport::fail(CHECK, vec![m, n], "composite of quasi dense members is not quasi dense");
                }
            }
        }
    }
    CheckReport::pass(CHECK)
}

/// Whether `validate_closure` passes; the standing assumption of every
/// closure-based result.
pub fn is_valid(cat: &FinCategory, op: &ClosureOperator) -> bool {
    validate_closure(cat, op).verdict == Verdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::small::{arrow2, split};

    fn split_m(cat: &FinCategory) -> MorClass {
        let r = cat.mor_by_label("r").unwrap();
        let mut m = MorClass::identities("M", cat);
        m.insert(r);
        m
    }

    #[test]
    fn identity_and_top_closures_are_valid() {
        for inst in [split(), arrow2()] {
            let cat = &inst.cat;
            let all = MorClass::all("All", cat);
            for op in [
                ClosureOperator::identity(cat, all.clone()).unwrap(),
                ClosureOperator::top(cat, all.clone()).unwrap(),
            ] {
                assert!(validate_closure(cat, &op).is_pass(), "{}", op.name());
                assert!(is_quasi_idempotent(cat, &op).is_pass());
                assert!(has_qcd(cat, &op).is_pass());
                for mode in [QwhMode::Existential, QwhMode::ChosenWitness] {
                    assert!(is_quasi_weakly_hereditary(cat, &op, mode).unwrap().is_pass());
                }
            }
        }
    }

    #[test]
    fn identity_closure_everything_closed() {
        let inst = split();
        let cat = &inst.cat;
        let m = split_m(cat);
        let op = ClosureOperator::identity(cat, m.clone()).unwrap();
        assert!(closed_class(cat, &op).same_members(&m));
        for x in cat.objects() {
            assert!(quasi_closed(cat, &op, cat.id(x)).unwrap());
            assert!(quasi_dense_in(cat, &op, cat.id(x)).unwrap());
        }
    }

    #[test]
    fn top_closure_dense_everything() {
        let inst = split();
        let cat = &inst.cat;
        let op = ClosureOperator::top(cat, split_m(cat)).unwrap();
        assert_eq!(dense_morphisms(cat, &op).len(), cat.num_morphisms());
        let idx = cat.sieves();
        let expected = MorClass::filter("e", cat, |f| {
            op.base().contains(f) && idx.same_sieve(f, cat.id(cat.cod(f)))
        });
        assert!(closed_class(cat, &op).same_members(&expected));
    }

    #[test]
    fn table_errors() {
        let inst = split();
        let cat = &inst.cat;
        let m = split_m(cat);
        let r = cat.mor_by_label("r").unwrap();
        let s = cat.mor_by_label("s").unwrap();
        let id_a = cat.id(cat.cod(r));
        let id_b = cat.id(cat.dom(r));
        assert_eq!(
            ClosureOperator::new("c", cat, m.clone(), [(r, r)]).unwrap_err(),
            Error::TableIncomplete(id_a)
        );
        assert_eq!(
            ClosureOperator::new("c", cat, m.clone(), [(r, id_b)]).unwrap_err(),
            Error::CodomainViolation { m: r, c: id_b }
        );
        assert_eq!(
            ClosureOperator::new("c", cat, m.clone(), [(s, s)]).unwrap_err(),
            Error::NotInClass(s)
        );
        let op = ClosureOperator::identity(cat, m).unwrap();
        assert_eq!(
            op.clone().with_witnesses(cat, [(r, s)]).unwrap_err(),
            Error::InvalidWitness { m: r, j: s }
        );
        let e = cat.mor_by_label("e").unwrap();
        assert_eq!(witness_j(cat, &op, r).unwrap(), vec![id_b, e]);
        assert_eq!(quasi_closed(cat, &op, s), Err(Error::NotInClass(s)));
    }

    #[test]
    fn missing_chosen_witness_is_an_error() {
        let inst = arrow2();
        let cat = &inst.cat;
        let all = MorClass::all("All", cat);
        let entries: Vec<_> = all.iter().map(|m| (m, m)).collect();
        let op = ClosureOperator::new("bare", cat, all, entries).unwrap();
        let id_a = cat.id(cat.obj_by_label("A").unwrap());
        assert_eq!(
            is_quasi_weakly_hereditary(cat, &op, QwhMode::ChosenWitness),
            Err(Error::MissingWitness(id_a))
        );
    }

    #[test]
    fn precondition_failure_is_not_applicable() {
        let inst = arrow2();
        let cat = &inst.cat;
        let f = cat.mor_by_label("f").unwrap();
        let m = MorClass::from_members("M", cat, [f]).unwrap();
        let op = ClosureOperator::identity(cat, m).unwrap();
        assert_eq!(validate_closure(cat, &op).verdict, Verdict::NotApplicable);
    }
}
