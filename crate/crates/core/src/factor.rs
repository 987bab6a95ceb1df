//! Quasi right and quasi left factorizations.
//!
//! A quasi right part of `f: Y -> X` with respect to `M` is an `m ∈ M/X`
//! whose sieve contains `⟨f⟩` and is contained in the sieve of every other
//! such `m`. It is unique up to `~`; the canonical representative is the least
//! id in its `~`-class, and every operator below uses that one choice.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::class::MorClass;
use crate::error::{Error, Result};
use crate::fincat::{pullback, FinCategory, MorId};
use crate::report::CheckReport;

/// A quasi right part `m_f` of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrpResult {
    /// Least id among the `~`-minimum candidates.
    pub canonical: MorId,
    /// Every member of `M` that is a quasi right part of `f`, in id order.
    pub equivalence_class: Vec<MorId>,
    /// For each member `m` of the class, a `g` with `f = m . g`.
    pub mediating: Vec<(MorId, MorId)>,
}

/// A quasi left part `e_f` of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QlpResult {
    pub canonical: MorId,
    pub equivalence_class: Vec<MorId>,
    /// For each member `e` of the class, a `g` with `f = g . e`.
    pub mediating: Vec<(MorId, MorId)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Right,
    Left,
}

/// Candidates through which `f` factors, on the given side.
fn candidates(cat: &FinCategory, class: &MorClass, f: MorId, dir: Direction) -> Vec<MorId> {
    let idx = cat.sieves();
    match dir {
        Direction::Right => cat
            .incoming(cat.cod(f))
            .iter()
            .copied()
            .filter(|&m| class.contains(m) && idx.in_sieve(f, m))
            .collect(),
        Direction::Left => cat
            .outgoing(cat.dom(f))
            .iter()
            .copied()
            .filter(|&e| class.contains(e) && idx.in_cosieve(f, e))
            .collect(),
    }
}

/// The candidates lying below every other candidate (in id order); empty when
/// the candidate set has no minimum.
fn minimum(cat: &FinCategory, cands: &[MorId], dir: Direction) -> Vec<MorId> {
    let idx = cat.sieves();
    let bits = |m: MorId| match dir {
        Direction::Right => idx.sieve_bits(m),
        Direction::Left => idx.cosieve_bits(m),
    };
    let Some((&first, rest)) = cands.split_first() else {
        return Vec::new();
    };
    let mut meet: FixedBitSet = bits(first).clone();
    for &m in rest {
        meet.intersect_with(bits(m));
    }
    cands.iter().copied().filter(|m| meet.contains(m.index())).collect()
}

/// The `≤`-minimal candidates, one per `~`-class: what a failing structure
/// check reports as the incomparable candidate set.
fn minimal_representatives(cat: &FinCategory, cands: &[MorId], dir: Direction) -> Vec<MorId> {
    let idx = cat.sieves();
    let below = |a: MorId, b: MorId| match dir {
        Direction::Right => idx.sieve_subset(a, b),
        Direction::Left => idx.cosieve_subset(a, b),
    };
    let mut reps: Vec<MorId> = Vec::new();
    for &m in cands {
        let strictly_above_other = cands.iter().any(|&o| below(o, m) && !below(m, o));
        let dup = reps.iter().any(|&r| below(r, m) && below(m, r));
        if !strictly_above_other && !dup {
            reps.push(m);
        }
    }
    reps
}

pub fn quasi_right_part(cat: &FinCategory, class: &MorClass, f: MorId) -> Option<QrpResult> {
    let mins = minimum(cat, &candidates(cat, class, f, Direction::Right), Direction::Right);
    let &canonical = mins.first()?;
    let mediating = mins
        .iter()
        .map(|&m| (m, cat.factor_through(m, f).expect("candidate factors f")))
        .collect();
    Some(QrpResult {
        canonical,
        equivalence_class: mins,
        mediating,
    })
}

pub fn quasi_left_part(cat: &FinCategory, class: &MorClass, f: MorId) -> Option<QlpResult> {
    let mins = minimum(cat, &candidates(cat, class, f, Direction::Left), Direction::Left);
    let &canonical = mins.first()?;
    let mediating = mins
        .iter()
        .map(|&e| (e, cat.extend_along(e, f).expect("candidate factors f")))
        .collect();
    Some(QlpResult {
        canonical,
        equivalence_class: mins,
        mediating,
    })
}

/// PASS iff every morphism has a quasi right part. FAIL witnesses are the
/// morphism followed by its `≤`-minimal candidates (none when no member of
/// the class factors it).
pub fn is_qrf_structure(cat: &FinCategory, class: &MorClass) -> CheckReport {
    structure_check(cat, class, Direction::Right)
}

/// Dual of [`is_qrf_structure`] for quasi left parts.
pub fn is_qlf_structure(cat: &FinCategory, class: &MorClass) -> CheckReport {
    structure_check(cat, class, Direction::Left)
}

fn structure_check(cat: &FinCategory, class: &MorClass, dir: Direction) -> CheckReport {
    let check = match dir {
        Direction::Right => "quasi-right-factorization",
        Direction::Left => "quasi-left-factorization",
    };
    let table = PartTable::build(cat, class, dir);
    for f in cat.morphisms() {
        if table.part(f).is_none() {
            let cands = candidates(cat, class, f, dir);
            let mut witnesses = vec![f];
            let detail = if cands.is_empty() {
                "no member of the class factors the morphism".to_string()
            } else {
                let reps = minimal_representatives(cat, &cands, dir);
                witnesses.extend(&reps);
                format!("{} incomparable minimal candidates", reps.len())
            };
            return CheckReport::fail(check, witnesses, detail);
        }
    }
    CheckReport::pass(check)
}

/// Canonical parts of every morphism for one class, memoized per sieve (or
/// cosieve) class: the part depends only on `⟨f⟩` (dually `⟩f⟨`).
#[derive(Debug, Clone)]
struct PartTable {
    parts: Vec<Option<MorId>>,
    classes: Vec<Option<Vec<MorId>>>,
}

impl PartTable {
    fn build(cat: &FinCategory, class: &MorClass, dir: Direction) -> Self {
        let idx = cat.sieves();
        let mut memo: HashMap<u32, Option<Vec<MorId>>> = HashMap::new();
        let mut parts = Vec::with_capacity(cat.num_morphisms());
        let mut classes = Vec::with_capacity(cat.num_morphisms());
        for f in cat.morphisms() {
            let key = match dir {
                Direction::Right => idx.sieve_class(f),
                Direction::Left => idx.cosieve_class(f),
            };
            let mins = memo
                .entry(key)
                .or_insert_with(|| {
                    let m = minimum(cat, &candidates(cat, class, f, dir), dir);
                    (!m.is_empty()).then_some(m)
                })
                .clone();
            parts.push(mins.as_ref().map(|m| m[0]));
            classes.push(mins);
        }
        PartTable { parts, classes }
    }

    fn part(&self, f: MorId) -> Option<MorId> {
        self.parts[f.index()]
    }
}

/// Canonical quasi right parts of every morphism with respect to one class.
#[derive(Debug, Clone)]
pub struct RightParts {
    table: PartTable,
}

impl RightParts {
    pub fn new(cat: &FinCategory, class: &MorClass) -> Self {
        RightParts {
            table: PartTable::build(cat, class, Direction::Right),
        }
    }

    /// Canonical `m_f`, if `f` has a quasi right part.
    pub fn part(&self, f: MorId) -> Option<MorId> {
        self.table.part(f)
    }

    /// All quasi right parts of `f`, in id order.
    pub fn equivalence_class(&self, f: MorId) -> Option<&[MorId]> {
        self.table.classes[f.index()].as_deref()
    }

    /// `f(m)`: the canonical quasi right part of `f . m`.
    pub fn image(&self, cat: &FinCategory, f: MorId, m: MorId) -> Result<MorId> {
        let fm = cat.comp(f, m).ok_or(Error::NotComposable { g: f, f: m })?;
        self.part(fm).ok_or(Error::NoQuasiRightPart(fm))
    }

    pub fn is_total(&self) -> bool {
        self.table.parts.iter().all(Option::is_some)
    }
}

/// Canonical quasi left parts of every morphism with respect to one class.
#[derive(Debug, Clone)]
pub struct LeftParts {
    table: PartTable,
}

impl LeftParts {
    pub fn new(cat: &FinCategory, class: &MorClass) -> Self {
        LeftParts {
            table: PartTable::build(cat, class, Direction::Left),
        }
    }

    pub fn part(&self, f: MorId) -> Option<MorId> {
        self.table.part(f)
    }

    pub fn equivalence_class(&self, f: MorId) -> Option<&[MorId]> {
        self.table.classes[f.index()].as_deref()
    }

    pub fn is_total(&self) -> bool {
        self.table.parts.iter().all(Option::is_some)
    }
}

/// `f(m)`: the canonical quasi right part of `f . m`; `f(1_X)` is the case
/// `m = 1_X`.
pub fn image_part(cat: &FinCategory, class: &MorClass, f: MorId, m: MorId) -> Result<MorId> {
    let fm = cat.comp(f, m).ok_or(Error::NotComposable { g: f, f: m })?;
    quasi_right_part(cat, class, fm)
        .map(|r| r.canonical)
        .ok_or(Error::NoQuasiRightPart(fm))
}

/// `f⁻¹(m)`: the leg of the canonical pullback of `m` along `f` that is
/// parallel to `m`. It must belong to the class.
pub fn inverse_image_part(cat: &FinCategory, class: &MorClass, f: MorId, m: MorId) -> Result<MorId> {
    let pb = pullback(cat, f, m)?.ok_or(Error::NoPullback { f, m })?;
    let leg = pb.legs.0;
    if !class.contains(leg) {
        return Err(Error::LegNotInClass { f, m, leg });
    }
    Ok(leg)
}

/// Whether `m` is a quasi right part of `f`, decided from the factorization
/// conditions themselves (explicit witnesses `g`, `h`) rather than sieves.
pub fn is_quasi_right_part(cat: &FinCategory, class: &MorClass, f: MorId, m: MorId) -> bool {
    if !class.contains(m) || cat.cod(m) != cat.cod(f) || cat.factor_through(m, f).is_none() {
        return false;
    }
    cat.incoming(cat.cod(f)).iter().all(|&other| {
        !class.contains(other) || cat.factor_through(other, f).is_none() || cat.factor_through(other, m).is_some()
    })
}

/// Whether `e` is a quasi left part of `f`, from explicit witnesses.
pub fn is_quasi_left_part(cat: &FinCategory, class: &MorClass, f: MorId, e: MorId) -> bool {
    if !class.contains(e) || cat.dom(e) != cat.dom(f) || cat.extend_along(e, f).is_none() {
        return false;
    }
    cat.outgoing(cat.dom(f)).iter().all(|&other| {
        !class.contains(other) || cat.extend_along(other, f).is_none() || cat.extend_along(other, e).is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::basic_classes;
    use crate::instances::small::{arrow2, split};

    #[test]
    fn identities_give_identity_parts() {
        for inst in [split(), arrow2()] {
            let cat = &inst.cat;
            let ids = MorClass::identities("Id", cat);
            assert!(is_qrf_structure(cat, &ids).is_pass());
            assert!(is_qlf_structure(cat, &ids).is_pass());
            for f in cat.morphisms() {
                assert_eq!(quasi_right_part(cat, &ids, f).unwrap().canonical, cat.id(cat.cod(f)));
                assert_eq!(quasi_left_part(cat, &ids, f).unwrap().canonical, cat.id(cat.dom(f)));
            }
        }
    }

    #[test]
    fn split_ret_part_of_s_is_id_b() {
        let inst = split();
        let cat = &inst.cat;
        let ret = basic_classes(cat).ret;
        let s = cat.mor_by_label("s").unwrap();
        let part = quasi_right_part(cat, &ret, s).unwrap();
        let id_b = cat.id(cat.cod(s));
        assert_eq!(part.canonical, id_b);
        assert_eq!(part.equivalence_class, vec![id_b]);
        assert_eq!(part.mediating, vec![(id_b, s)]);
    }

    #[test]
    fn members_are_their_own_parts_up_to_sim() {
        let inst = split();
        let cat = &inst.cat;
        let all = MorClass::all("All", cat);
        let idx = cat.sieves();
        for f in cat.morphisms() {
            let part = quasi_right_part(cat, &all, f).unwrap();
            assert!(idx.same_sieve(part.canonical, f));
            let left = quasi_left_part(cat, &all, f).unwrap();
            assert!(idx.same_cosieve(left.canonical, f));
        }
    }

    #[test]
    fn missing_part_is_reported_with_candidates() {
        // two incomparable members over B: f and g out of distinct objects
        let mut b = crate::fincat::CategoryBuilder::new("vee");
        let a = b.object("A").unwrap();
        let c = b.object("C").unwrap();
        let x = b.object("X").unwrap();
        let f = b.morphism("f", a, x).unwrap();
        let g = b.morphism("g", c, x).unwrap();
        let cat = b.build().unwrap();
        let class = MorClass::from_members("M", &cat, [f, g]).unwrap();
        let report = is_qrf_structure(&cat, &class);
        // id_A has no candidate at all (nothing in M has codomain A)
        assert!(report.is_fail());
        assert_eq!(report.witnesses, vec![cat.id(a)]);
        // the identity of X factors through neither f nor g
        let with_id = MorClass::from_members("M", &cat, [f, g, cat.id(a), cat.id(c)]).unwrap();
        let report = is_qrf_structure(&cat, &with_id);
        assert_eq!(report.witnesses, vec![cat.id(x)]);
        assert_eq!(
            image_part(&cat, &with_id, cat.id(x), cat.id(x)),
            Err(Error::NoQuasiRightPart(cat.id(x)))
        );
        let _ = c;
    }

    #[test]
    fn image_part_requires_composable_pair() {
        let inst = arrow2();
        let cat = &inst.cat;
        let f = cat.mor_by_label("f").unwrap();
        let all = MorClass::all("All", cat);
        assert_eq!(image_part(cat, &all, f, f), Err(Error::NotComposable { g: f, f }));
        assert_eq!(image_part(cat, &all, f, cat.id(cat.dom(f))), Ok(f));
    }

    #[test]
    fn inverse_image_of_identity_is_identity() {
        let inst = split();
        let cat = &inst.cat;
        let all = MorClass::all("All", cat);
        let idx = cat.sieves();
        for f in cat.morphisms() {
            let pulled = inverse_image_part(cat, &all, f, cat.id(cat.cod(f))).unwrap();
            assert!(idx.same_sieve(pulled, cat.id(cat.dom(f))));
        }
    }
}
