//! Triangle liftings `⧩` / `⧯`, the `ult` relation, quasi factorization
//! structures, and classical square liftings for comparison.

use std::collections::{HashMap, HashSet};

use crate::class::MorClass;
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId};
use crate::report::CheckReport;
use crate::sieves::sim_identity;

/// `e ⧩ m`: whenever `m . u = e` for some `u`, there is `w: X -> dom m` with
/// `m . w ~ 1_X`.
pub fn apl_down(cat: &FinCategory, e: MorId, m: MorId) -> Result<bool> {
    if cat.cod(e) != cat.cod(m) {
        return Err(Error::CodomainMismatch { f: e, g: m });
    }
    let premise = cat
        .hom(cat.dom(e), cat.dom(m))
        .iter()
        .any(|&u| cat.comp(m, u) == Some(e));
    if !premise {
        return Ok(true);
    }
    let x = cat.cod(m);
    Ok(cat
        .hom(x, cat.dom(m))
        .iter()
        .any(|&w| sim_identity(cat, cat.then(w, m))))
}

/// `e ⧯ m`: for every `v` with `v . e = m` there is `w: cod e -> dom m` with
/// `⟨m . w⟩ = ⟨v⟩`.
pub fn apl_up(cat: &FinCategory, e: MorId, m: MorId) -> Result<bool> {
    if cat.dom(e) != cat.dom(m) {
        return Err(Error::DomainMismatch { f: e, g: m });
    }
    Ok(apl_up_unchecked(cat, e, m))
}

fn apl_up_unchecked(cat: &FinCategory, e: MorId, m: MorId) -> bool {
    let idx = cat.sieves();
    let mut reachable: Option<HashSet<u32>> = None;
    for &v in cat.hom(cat.cod(e), cat.cod(m)) {
        if cat.comp(v, e) != Some(m) {
            continue;
        }
        let reachable = reachable.get_or_insert_with(|| {
            cat.hom(cat.cod(e), cat.dom(m))
                .iter()
                .map(|&w| idx.sieve_class(cat.then(w, m)))
                .collect()
        });
        if !reachable.contains(&idx.sieve_class(v)) {
            return false;
        }
    }
    true
}

/// `⧩M`: morphisms `e` with `e ⧩ m` for every `m ∈ M` sharing its codomain.
pub fn left_class(cat: &FinCategory, class: &MorClass) -> MorClass {
    let idx = cat.sieves();
    // e ⧩ m fails exactly when e factors through m and m is not split epi
    let blockers: Vec<MorId> = class.iter().filter(|&m| !sim_identity(cat, m)).collect();
    MorClass::filter(format!("⧩{}", class.name()), cat, |e| {
        !blockers.iter().any(|&m| cat.cod(m) == cat.cod(e) && idx.in_sieve(e, m))
    })
}

/// `E^⧯`: morphisms `m` with `e ⧯ m` for every `e ∈ E` sharing its domain.
pub fn right_class(cat: &FinCategory, class: &MorClass) -> MorClass {
    MorClass::filter(format!("{}^⧯", class.name()), cat, |m| {
        cat.outgoing(cat.dom(m))
            .iter()
            .all(|&e| !class.contains(e) || apl_up_unchecked(cat, e, m))
    })
}

/// `ult(e', e, m)` in cosieve form: `⟩m.e⟨ ⊆ ⟩e'⟨ ⇒ ⟩e⟨ ⊆ ⟩e'⟨`.
pub fn ult(cat: &FinCategory, e_prime: MorId, e: MorId, m: MorId) -> Result<bool> {
    if cat.dom(e_prime) != cat.dom(e) {
        return Err(Error::DomainMismatch { f: e_prime, g: e });
    }
    let me = cat.comp(m, e).ok_or(Error::NotComposable { g: m, f: e })?;
    Ok(ult_unchecked(cat, e_prime, e, me))
}

fn ult_unchecked(cat: &FinCategory, e_prime: MorId, e: MorId, me: MorId) -> bool {
    let idx = cat.sieves();
    !idx.in_cosieve(me, e_prime) || idx.in_cosieve(e, e_prime)
}

/// Members `e'` of `E` with `ult(e', e, m)` for all admissible `e ∈ E`, `m ∈ M`.
pub fn ult_class(cat: &FinCategory, e_class: &MorClass, m_class: &MorClass) -> MorClass {
    let idx = cat.sieves();
    MorClass::filter(format!("ult({},{})", e_class.name(), m_class.name()), cat, |ep| {
        e_class.contains(ep)
            && cat.outgoing(cat.dom(ep)).iter().all(|&e| {
                !e_class.contains(e)
                    || idx.in_cosieve(e, ep)
                    || cat
                        .outgoing(cat.cod(e))
                        .iter()
                        .all(|&m| !m_class.contains(m) || !idx.in_cosieve(cat.then(e, m), ep))
            })
    })
}

/// First `(e, m)` with `f = m . e`, `e ∈ E`, `m ∈ M`.
pub fn factorize(cat: &FinCategory, e_class: &MorClass, m_class: &MorClass, f: MorId) -> Option<(MorId, MorId)> {
    cat.outgoing(cat.dom(f))
        .iter()
        .copied()
        .filter(|&e| e_class.contains(e))
        .find_map(|e| {
            cat.hom(cat.cod(e), cat.cod(f))
                .iter()
                .copied()
                .find(|&m| m_class.contains(m) && cat.comp(m, e) == Some(f))
                .map(|m| (e, m))
        })
}

fn factorization_check(cat: &FinCategory, e_class: &MorClass, m_class: &MorClass) -> CheckReport {
    for f in cat.morphisms() {
        if factorize(cat, e_class, m_class, f).is_none() {
            return CheckReport::fail(
                "factorization",
                vec![f],
                format!(
                    "no factorization m . e with e in {}, m in {}",
                    e_class.name(),
                    m_class.name()
                ),
            );
        }
    }
    CheckReport::pass("factorization")
}

fn inclusion_check(check: String, sub: &MorClass, sup: &MorClass) -> CheckReport {
    let missing = sub.difference(sup);
    if missing.is_empty() {
        CheckReport::pass(check)
    } else {
        let detail = format!("{} morphisms of {} outside {}", missing.len(), sub.name(), sup.name());
        CheckReport::fail(check, missing, detail)
    }
}

/// Quasi factorization structure check. Children, in order: `factorization`,
/// then the four inclusions making up `E = ⧩M` and `M = E^⧯`. FAIL witnesses
/// are the unfactorable morphism or the class-difference morphisms.
pub fn is_qfs(cat: &FinCategory, e_class: &MorClass, m_class: &MorClass) -> CheckReport {
    let left = left_class(cat, m_class);
    let right = right_class(cat, e_class);
    let (e, m) = (e_class.name(), m_class.name());
    CheckReport::all(
        "quasi-factorization-structure",
        vec![
            factorization_check(cat, e_class, m_class),
            inclusion_check(format!("{e} ⊆ ⧩{m}"), e_class, &left),
            inclusion_check(format!("⧩{m} ⊆ {e}"), &left, e_class),
            inclusion_check(format!("{m} ⊆ {e}^⧯"), m_class, &right),
            inclusion_check(format!("{e}^⧯ ⊆ {m}"), &right, m_class),
        ],
    )
}

/// A commutative square `right . top = bottom . left`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftingSquare {
    pub top: MorId,
    pub left: MorId,
    pub right: MorId,
    pub bottom: MorId,
}

impl LiftingSquare {
    pub fn commutes(&self, cat: &FinCategory) -> bool {
        matches!(
            (cat.comp(self.right, self.top), cat.comp(self.bottom, self.left)),
            (Some(a), Some(b)) if a == b
        )
    }

    /// Witness order used in reports: top, left, right, bottom.
    pub fn witnesses(&self) -> Vec<MorId> {
        vec![self.top, self.left, self.right, self.bottom]
    }
}

/// Least `d` with `d . left = top` and `right . d = bottom`.
pub fn square_diagonal(cat: &FinCategory, sq: &LiftingSquare) -> Option<MorId> {
    if !sq.commutes(cat) {
        return None;
    }
    cat.hom(cat.cod(sq.left), cat.dom(sq.right))
        .iter()
        .copied()
        .find(|&d| cat.comp(d, sq.left) == Some(sq.top) && cat.comp(sq.right, d) == Some(sq.bottom))
}

/// First square with left side `e` and right side `m` that has no diagonal,
/// enumerating tops then bottoms in id order.
pub fn first_unfilled_square(cat: &FinCategory, e: MorId, m: MorId) -> Option<LiftingSquare> {
    let (a, b) = (cat.dom(e), cat.cod(e));
    let (c, d) = (cat.dom(m), cat.cod(m));
    let filled: HashSet<(MorId, MorId)> = cat
        .hom(b, c)
        .iter()
        .map(|&diag| (cat.then(e, diag), cat.then(diag, m)))
        .collect();
    let mut bottoms_by_corner: HashMap<MorId, Vec<MorId>> = HashMap::new();
    for &v in cat.hom(b, d) {
        bottoms_by_corner.entry(cat.then(e, v)).or_default().push(v);
    }
    cat.hom(a, c).iter().find_map(|&u| {
        let corner = cat.then(u, m);
        bottoms_by_corner.get(&corner).and_then(|vs| {
            vs.iter().find(|&&v| !filled.contains(&(u, v))).map(|&v| LiftingSquare {
                top: u,
                left: e,
                right: m,
                bottom: v,
            })
        })
    })
}

/// `□M`: morphisms with the square-diagonal property against every `m ∈ M`.
pub fn square_left_class(cat: &FinCategory, class: &MorClass) -> MorClass {
    MorClass::filter(format!("□{}", class.name()), cat, |e| {
        class.iter().all(|m| first_unfilled_square(cat, e, m).is_none())
    })
}

/// `E□`: morphisms with the square-diagonal property against every `e ∈ E`.
pub fn square_right_class(cat: &FinCategory, class: &MorClass) -> MorClass {
    MorClass::filter(format!("{}□", class.name()), cat, |m| {
        class.iter().all(|e| first_unfilled_square(cat, e, m).is_none())
    })
}

/// Weak factorization structure: factorization, every `E`-`M` square has a
/// diagonal, `□M ⊆ E`, and `E□ ⊆ M`. The lifting child reports the first
/// square without a diagonal as `[top, left, right, bottom]`.
pub fn is_wfs(cat: &FinCategory, e_class: &MorClass, m_class: &MorClass) -> CheckReport {
    let (e, m) = (e_class.name(), m_class.name());
    let lifting = e_class
        .iter()
        .find_map(|ee| m_class.iter().find_map(|mm| first_unfilled_square(cat, ee, mm)))
        .map_or_else(
            || CheckReport::pass("lifting"),
            |sq| CheckReport::fail("lifting", sq.witnesses(), "no diagonal"),
        );
    let boxed_left = square_left_class(cat, m_class);
    let boxed_right = square_right_class(cat, e_class);
    CheckReport::all(
        "weak-factorization-structure",
        vec![
            factorization_check(cat, e_class, m_class),
            lifting,
            inclusion_check(format!("□{m} ⊆ {e}"), &boxed_left, e_class),
            inclusion_check(format!("{e}□ ⊆ {m}"), &boxed_right, m_class),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::basic_classes;
    use crate::instances::small::{arrow2, split};

    fn oracle_left(cat: &FinCategory, class: &MorClass) -> MorClass {
        MorClass::filter("oracle", cat, |e| {
            class
                .iter()
                .filter(|&m| cat.cod(m) == cat.cod(e))
                .all(|m| apl_down(cat, e, m).unwrap())
        })
    }

    #[test]
    fn arrow_f_does_not_lift_against_itself() {
        let inst = arrow2();
        let cat = &inst.cat;
        let f = cat.mor_by_label("f").unwrap();
        assert!(!apl_down(cat, f, f).unwrap());
        assert!(apl_down(cat, cat.id(cat.cod(f)), cat.id(cat.cod(f))).unwrap());
        assert_eq!(
            apl_down(cat, f, cat.id(cat.dom(f))),
            Err(Error::CodomainMismatch {
                f,
                g: cat.id(cat.dom(f))
            })
        );
    }

    #[test]
    fn left_class_matches_pointwise_sweep() {
        for inst in [split(), arrow2()] {
            let cat = &inst.cat;
            let mut classes: Vec<MorClass> = basic_classes(cat).iter().cloned().collect();
            classes.push(MorClass::all("All", cat));
            classes.push(MorClass::empty("None", cat));
            for class in &classes {
                assert!(left_class(cat, class).same_members(&oracle_left(cat, class)));
            }
        }
    }

    #[test]
    fn empty_class_lifts_everything() {
        let inst = split();
        let cat = &inst.cat;
        let none = MorClass::empty("None", cat);
        assert_eq!(left_class(cat, &none).len(), cat.num_morphisms());
        assert_eq!(right_class(cat, &none).len(), cat.num_morphisms());
    }

    #[test]
    fn identities_and_isos_lift_up() {
        let inst = split();
        let cat = &inst.cat;
        for m in cat.morphisms() {
            assert!(apl_up(cat, cat.id(cat.dom(m)), m).unwrap());
        }
    }

    #[test]
    fn ult_is_reflexive() {
        let inst = split();
        let cat = &inst.cat;
        for e in cat.morphisms() {
            for &m in cat.outgoing(cat.cod(e)) {
                assert!(ult(cat, e, e, m).unwrap());
            }
        }
    }

    #[test]
    fn square_with_identity_left_lifts_by_top() {
        let inst = split();
        let cat = &inst.cat;
        for m in cat.morphisms() {
            for &u in cat.incoming(cat.dom(m)) {
                let x = cat.dom(u);
                let sq = LiftingSquare {
                    top: u,
                    left: cat.id(x),
                    right: m,
                    bottom: cat.then(u, m),
                };
                assert_eq!(square_diagonal(cat, &sq), Some(u));
            }
        }
    }

    #[test]
    fn split_iso_all_is_weak_but_not_quasi() {
        let inst = split();
        let cat = &inst.cat;
        let iso = basic_classes(cat).iso;
        let all = MorClass::all("All", cat);
        assert!(is_wfs(cat, &iso, &all).is_pass());
        let qfs = is_qfs(cat, &iso, &all);
        assert!(qfs.is_fail());
        let r = cat.mor_by_label("r").unwrap();
        assert_eq!(qfs.witnesses, vec![r]);
    }

    #[test]
    fn all_all_in_split_fails_class_equality() {
        let inst = split();
        let cat = &inst.cat;
        let all = MorClass::all("All", cat);
        let report = is_qfs(cat, &all, &all);
        assert!(report.is_fail());
        assert!(report.children[0].is_pass());
    }
}
