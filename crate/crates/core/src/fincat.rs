//! Explicit finite categories.
//!
//! Objects and morphisms are dense indices. Composition is a total table over
//! composable pairs, stored densely; hom-sets are indexed by `(dom, cod)` so
//! every quantifier sweep walks hom-sets rather than the full morphism list.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::class::MorClass;
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::sieves::SieveIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub u32);

impl ObjId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "object#{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "morphism#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub dom: ObjId,
    pub cod: ObjId,
    pub label: String,
}

const NONE: u32 = u32::MAX;

/// A finite category. Immutable once built; the sieve index is computed on
/// first use and shared.
#[derive(Clone)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    /// `comp[g * n + f]` is `g . f`, or `NONE`.
    comp: Vec<u32>,
    hom: Vec<Vec<MorId>>,
    into: Vec<Vec<MorId>>,
    out_of: Vec<Vec<MorId>>,
    labels: HashMap<String, MorId>,
    sieves: OnceLock<SieveIndex>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("name", &self.name)
            .field("objects", &self.objects.len())
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

impl FinCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + Clone {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + Clone {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f.index()]
    }

    #[inline]
    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].dom
    }

    #[inline]
    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].cod
    }

    pub fn label(&self, f: MorId) -> &str {
        &self.morphisms[f.index()].label
    }

    pub fn object_label(&self, x: ObjId) -> &str {
        &self.objects[x.index()]
    }

    pub fn mor_by_label(&self, label: &str) -> Option<MorId> {
        self.labels.get(label).copied()
    }

    pub fn obj_by_label(&self, label: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == label).map(|i| ObjId(i as u32))
    }

    #[inline]
    pub fn id(&self, x: ObjId) -> MorId {
        self.identity[x.index()]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.dom(f).index()] == f
    }

    /// `g . f`, if `cod f = dom g` and the table has an entry.
    #[inline]
    pub fn comp(&self, g: MorId, f: MorId) -> Option<MorId> {
        let h = self.comp[g.index() * self.morphisms.len() + f.index()];
        (h != NONE).then_some(MorId(h))
    }

    /// `g . f` for a pair known to be composable in a validated category.
    #[inline]
    pub fn then(&self, f: MorId, g: MorId) -> MorId {
        match self.comp(g, f) {
            Some(h) => h,
            None => panic!("{} . {} is undefined", self.label(g), self.label(f)),
        }
    }

    /// Morphisms `x -> y`, in id order.
    #[inline]
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.hom[x.index() * self.objects.len() + y.index()]
    }

    /// Morphisms with codomain `x`, in id order.
    #[inline]
    pub fn incoming(&self, x: ObjId) -> &[MorId] {
        &self.into[x.index()]
    }

    /// Morphisms with domain `x`, in id order.
    #[inline]
    pub fn outgoing(&self, x: ObjId) -> &[MorId] {
        &self.out_of[x.index()]
    }

    pub fn sieves(&self) -> &SieveIndex {
        self.sieves.get_or_init(|| SieveIndex::build(self))
    }

    /// Finds `h` with `g . h = f`, scanning `hom(dom f, dom g)` in id order.
    pub fn factor_through(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.cod(g) != self.cod(f) {
            return None;
        }
        self.hom(self.dom(f), self.dom(g))
            .iter()
            .copied()
            .find(|&h| self.comp(g, h) == Some(f))
    }

    /// Finds `h` with `h . e = f`, scanning `hom(cod e, cod f)` in id order.
    pub fn extend_along(&self, e: MorId, f: MorId) -> Option<MorId> {
        if self.dom(e) != self.dom(f) {
            return None;
        }
        self.hom(self.cod(e), self.cod(f))
            .iter()
            .copied()
            .find(|&h| self.comp(h, e) == Some(f))
    }
}

/// Incremental construction of a [`FinCategory`]. Adding an object adds its
/// identity `id_<label>`; composites with identities are filled in by
/// [`CategoryBuilder::build`] unless set explicitly.
#[derive(Debug, Clone, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    labels: HashMap<String, MorId>,
    comps: Vec<(MorId, MorId, MorId)>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn object(&mut self, label: impl Into<String>) -> Result<ObjId> {
        let label = label.into();
        if self.objects.contains(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        let x = ObjId(self.objects.len() as u32);
        let id_label = format!("id_{label}");
        self.objects.push(label);
        let id = self.push_morphism(id_label, x, x)?;
        self.identity.push(id);
        Ok(x)
    }

    pub fn morphism(&mut self, label: impl Into<String>, dom: ObjId, cod: ObjId) -> Result<MorId> {
        for x in [dom, cod] {
            if x.index() >= self.objects.len() {
                return Err(Error::InvalidObject(x.0));
            }
        }
        self.push_morphism(label.into(), dom, cod)
    }

    fn push_morphism(&mut self, label: String, dom: ObjId, cod: ObjId) -> Result<MorId> {
        if self.labels.contains_key(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        let f = MorId(self.morphisms.len() as u32);
        self.labels.insert(label.clone(), f);
        self.morphisms.push(Morphism { dom, cod, label });
        Ok(f)
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identity[x.index()]
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn mor_by_label(&self, label: &str) -> Option<MorId> {
        self.labels.get(label).copied()
    }

    pub fn obj_by_label(&self, label: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == label).map(|i| ObjId(i as u32))
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].cod
    }

    /// Records `g . f = h`. The result's typing is not checked here; a
    /// mistyped result is reported by [`validate_category`].
    pub fn compose(&mut self, g: MorId, f: MorId, h: MorId) -> Result<()> {
        let n = self.morphisms.len() as u32;
        for m in [g, f, h] {
            if m.0 >= n {
                return Err(Error::InvalidMorphism(m.0));
            }
        }
        if self.cod(f) != self.dom(g) {
            return Err(Error::NotComposable { g, f });
        }
        self.comps.push((g, f, h));
        Ok(())
    }

    pub fn build(self) -> Result<FinCategory> {
        let n = self.morphisms.len();
        let nobj = self.objects.len();
        let mut comp = vec![NONE; n * n];
        for &(g, f, h) in &self.comps {
            let slot = &mut comp[g.index() * n + f.index()];
            if *slot != NONE {
                return Err(Error::DuplicateComposite { g, f });
            }
            *slot = h.0;
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            let id_cod = self.identity[m.cod.index()].index();
            let id_dom = self.identity[m.dom.index()].index();
            if comp[id_cod * n + i] == NONE {
                comp[id_cod * n + i] = i as u32;
            }
            if comp[i * n + id_dom] == NONE {
                comp[i * n + id_dom] = i as u32;
            }
        }
        let mut hom = vec![Vec::new(); nobj * nobj];
        let mut into = vec![Vec::new(); nobj];
        let mut out_of = vec![Vec::new(); nobj];
        for (i, m) in self.morphisms.iter().enumerate() {
            let f = MorId(i as u32);
            hom[m.dom.index() * nobj + m.cod.index()].push(f);
            into[m.cod.index()].push(f);
            out_of[m.dom.index()].push(f);
        }
        Ok(FinCategory {
            name: self.name,
            objects: self.objects,
            morphisms: self.morphisms,
            identity: self.identity,
            comp,
            hom,
            into,
            out_of,
            labels: self.labels,
            sieves: OnceLock::new(),
        })
    }
}

/// Checks the category axioms: typing and totality of composition on
/// composable pairs, the identity laws, and associativity.
///
/// Witness layout: typing `[g, f, h]`; totality `[g, f]`; identity law `[f]`;
/// associativity `[h, g, f]`.
pub fn validate_category(cat: &FinCategory) -> CheckReport {
    let mut children = Vec::new();

    let mut typing = CheckReport::pass("composition-typing");
    let mut totality = CheckReport::pass("composition-totality");
    'outer: for f in cat.morphisms() {
        for &g in cat.outgoing(cat.cod(f)) {
            match cat.comp(g, f) {
                None => {
                    if totality.is_pass() {
                        totality =
                            CheckReport::fail("composition-totality", vec![g, f], "composable pair has no composite");
                    }
                }
                Some(h) => {
                    if (cat.dom(h), cat.cod(h)) != (cat.dom(f), cat.cod(g)) && typing.is_pass() {
                        typing = CheckReport::fail(
                            "composition-typing",
                            vec![g, f, h],
                            "composite has the wrong domain or codomain",
                        );
                    }
                }
            }
            if !typing.is_pass() && !totality.is_pass() {
                break 'outer;
            }
        }
    }
    let composition_ok = typing.is_pass() && totality.is_pass();
    children.push(typing);
    children.push(totality);

    let mut identity = CheckReport::pass("identity-laws");
    for f in cat.morphisms() {
        if cat.comp(cat.id(cat.cod(f)), f) != Some(f) || cat.comp(f, cat.id(cat.dom(f))) != Some(f) {
            identity = CheckReport::fail("identity-laws", vec![f], "identity law violated");
            break;
        }
    }
    children.push(identity);

    let assoc = if composition_ok {
        associativity(cat)
    } else {
        CheckReport::not_applicable("associativity", "composition is not total and well-typed")
    };
    children.push(assoc);

    CheckReport::all("category-axioms", children)
}

fn associativity(cat: &FinCategory) -> CheckReport {
    for f in cat.morphisms() {
        for &g in cat.outgoing(cat.cod(f)) {
            let gf = cat.then(f, g);
            for &h in cat.outgoing(cat.cod(g)) {
                let hg = cat.then(g, h);
                if cat.comp(h, gf) != cat.comp(hg, f) {
                    return CheckReport::fail("associativity", vec![h, g, f], "h.(g.f) != (h.g).f");
                }
            }
        }
    }
    CheckReport::pass("associativity")
}

pub fn hom(cat: &FinCategory, x: ObjId, y: ObjId) -> Vec<MorId> {
    cat.hom(x, y).to_vec()
}

/// Isomorphisms, sections, retractions, monomorphisms and epimorphisms.
#[derive(Debug, Clone)]
pub struct BasicClasses {
    pub iso: MorClass,
    pub sec: MorClass,
    pub ret: MorClass,
    pub mon: MorClass,
    pub epi: MorClass,
}

impl BasicClasses {
    pub fn iter(&self) -> impl Iterator<Item = &MorClass> {
        [&self.iso, &self.sec, &self.ret, &self.mon, &self.epi].into_iter()
    }
}

pub fn basic_classes(cat: &FinCategory) -> BasicClasses {
    let is_sec = |f: MorId| {
        let id = cat.id(cat.dom(f));
        cat.hom(cat.cod(f), cat.dom(f))
            .iter()
            .any(|&g| cat.comp(g, f) == Some(id))
    };
    let is_ret = |f: MorId| {
        let id = cat.id(cat.cod(f));
        cat.hom(cat.cod(f), cat.dom(f))
            .iter()
            .any(|&g| cat.comp(f, g) == Some(id))
    };
    let is_iso = |f: MorId| {
        let (x, y) = (cat.dom(f), cat.cod(f));
        cat.hom(y, x)
            .iter()
            .any(|&g| cat.comp(g, f) == Some(cat.id(x)) && cat.comp(f, g) == Some(cat.id(y)))
    };
    let is_mono = |f: MorId| {
        cat.objects().all(|w| {
            let mut seen = HashSet::new();
            cat.hom(w, cat.dom(f)).iter().all(|&a| seen.insert(cat.then(a, f)))
        })
    };
    let is_epi = |f: MorId| {
        cat.objects().all(|w| {
            let mut seen = HashSet::new();
            cat.hom(cat.cod(f), w).iter().all(|&a| seen.insert(cat.then(f, a)))
        })
    };
    BasicClasses {
        iso: MorClass::filter("Iso", cat, is_iso),
        sec: MorClass::filter("Sec", cat, is_sec),
        ret: MorClass::filter("Ret", cat, is_ret),
        mon: MorClass::filter("Mon", cat, is_mono),
        epi: MorClass::filter("Epi", cat, is_epi),
    }
}

/// A mediating morphism for one competing (co)cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mediator {
    pub cone: (MorId, MorId),
    pub via: MorId,
}

/// A universal (co)cone over a pair of objects: apex, the two legs, and for
/// every competing (co)cone its unique mediating morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCone {
    pub apex: ObjId,
    pub legs: (MorId, MorId),
    pub certificate: Vec<Mediator>,
}

pub type SpanResult = UniversalCone;
pub type CospanResult = UniversalCone;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    /// Cones `Q -> A`, `Q -> B`; mediators `Q -> P`.
    Limit,
    /// Cocones `A -> Q`, `B -> Q`; mediators `P -> Q`.
    Colimit,
}

/// Exhaustive search for a universal (co)cone over objects `a`, `b`. A pair of
/// legs is a (co)cone when `key_a(leg_a) == key_b(leg_b)`. Candidates are
/// tried by increasing apex id, then legs in lexicographic id order.
fn universal_search(
    cat: &FinCategory,
    side: Side,
    a: ObjId,
    b: ObjId,
    key_a: impl Fn(MorId) -> u32,
    key_b: impl Fn(MorId) -> u32,
) -> Option<UniversalCone> {
    let legs_at = |q: ObjId| -> (&[MorId], &[MorId]) {
        match side {
            Side::Limit => (cat.hom(q, a), cat.hom(q, b)),
            Side::Colimit => (cat.hom(a, q), cat.hom(b, q)),
        }
    };
    let mediators = |p: ObjId, q: ObjId| -> &[MorId] {
        match side {
            Side::Limit => cat.hom(q, p),
            Side::Colimit => cat.hom(p, q),
        }
    };
    // leg . t for limits, t . leg for colimits
    let transport = |leg: MorId, t: MorId| -> MorId {
        match side {
            Side::Limit => cat.then(t, leg),
            Side::Colimit => cat.then(leg, t),
        }
    };

    let cones_at = |q: ObjId| -> Vec<(MorId, MorId)> {
        let (la, lb) = legs_at(q);
        let mut by_key: HashMap<u32, Vec<MorId>> = HashMap::new();
        for &y in lb {
            by_key.entry(key_b(y)).or_default().push(y);
        }
        let mut out = Vec::new();
        for &x in la {
            if let Some(ys) = by_key.get(&key_a(x)) {
                out.extend(ys.iter().map(|&y| (x, y)));
            }
        }
        out
    };
    let cone_count: Vec<usize> = cat
        .objects()
        .map(|q| {
            let (la, lb) = legs_at(q);
            let mut by_key: HashMap<u32, usize> = HashMap::new();
            for &y in lb {
                *by_key.entry(key_b(y)).or_default() += 1;
            }
            la.iter().map(|&x| by_key.get(&key_a(x)).copied().unwrap_or(0)).sum()
        })
        .collect();

    for p in cat.objects() {
        // Mediators into P must biject with cones at every Q.
        if cat.objects().any(|q| mediators(p, q).len() != cone_count[q.index()]) {
            continue;
        }
        'candidate: for (la, lb) in cones_at(p) {
            let mut certificate = Vec::new();
            for q in cat.objects() {
                let mut seen = HashSet::new();
                for &t in mediators(p, q) {
                    let cone = (transport(la, t), transport(lb, t));
                    if !seen.insert(cone) {
                        continue 'candidate;
                    }
                    certificate.push(Mediator { cone, via: t });
                }
            }
            return Some(UniversalCone {
                apex: p,
                legs: (la, lb),
                certificate,
            });
        }
    }
    None
}

/// Pullback of the cospan `f: A -> X <- B: m`. Legs are `(P -> A, P -> B)`;
/// the first leg is the pullback `f⁻¹(m)` of `m` along `f`.
pub fn pullback(cat: &FinCategory, f: MorId, m: MorId) -> Result<Option<SpanResult>> {
    if cat.cod(f) != cat.cod(m) {
        return Err(Error::CodomainMismatch { f, g: m });
    }
    Ok(universal_search(
        cat,
        Side::Limit,
        cat.dom(f),
        cat.dom(m),
        |x| cat.then(x, f).0,
        |y| cat.then(y, m).0,
    ))
}

/// Pushout of the span `A <- X -> B` given by `e` and `g`. Legs are
/// `(A -> P, B -> P)`; the second leg is the pushout of `e` along `g`.
pub fn pushout(cat: &FinCategory, e: MorId, g: MorId) -> Result<Option<CospanResult>> {
    if cat.dom(e) != cat.dom(g) {
        return Err(Error::DomainMismatch { f: e, g });
    }
    Ok(universal_search(
        cat,
        Side::Colimit,
        cat.cod(e),
        cat.cod(g),
        |x| cat.then(e, x).0,
        |y| cat.then(g, y).0,
    ))
}

pub fn product(cat: &FinCategory, x: ObjId, y: ObjId) -> Option<SpanResult> {
    universal_search(cat, Side::Limit, x, y, |_| 0, |_| 0)
}

pub fn coproduct(cat: &FinCategory, x: ObjId, y: ObjId) -> Option<CospanResult> {
    universal_search(cat, Side::Colimit, x, y, |_| 0, |_| 0)
}

/// PASS iff every `m ∈ class` has a pullback along every `f` into its
/// codomain whose leg `f⁻¹(m)` is again in the class. FAIL witnesses `[f, m]`.
pub fn class_has_pullbacks(cat: &FinCategory, class: &MorClass) -> CheckReport {
    const CHECK: &str = "class-has-pullbacks";
    for m in class.iter() {
        for &f in cat.incoming(cat.cod(m)) {
            match pullback(cat, f, m).expect("codomains agree") {
                None => return CheckReport::fail(CHECK, vec![f, m], "no pullback of m along f"),
                Some(pb) if !class.contains(pb.legs.0) => {
                    return CheckReport::fail(CHECK, vec![f, m], "pullback leg f⁻¹(m) is outside the class")
                }
                Some(_) => {}
            }
        }
    }
    CheckReport::pass(CHECK)
}

/// PASS iff every `e ∈ class` has a pushout along every `g` out of its domain
/// whose leg opposite `e` is again in the class. FAIL witnesses `[e, g]`.
pub fn class_has_pushouts(cat: &FinCategory, class: &MorClass) -> CheckReport {
    const CHECK: &str = "class-has-pushouts";
    for e in class.iter() {
        for &g in cat.outgoing(cat.dom(e)) {
            match pushout(cat, e, g).expect("domains agree") {
                None => return CheckReport::fail(CHECK, vec![e, g], "no pushout of e along g"),
                Some(po) if !class.contains(po.legs.1) => {
                    return CheckReport::fail(CHECK, vec![e, g], "pushout leg is outside the class")
                }
                Some(_) => {}
            }
        }
    }
    CheckReport::pass(CHECK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> (FinCategory, ObjId, ObjId, MorId) {
        let mut b = CategoryBuilder::new("arrow");
        let a = b.object("A").unwrap();
        let bb = b.object("B").unwrap();
        let f = b.morphism("f", a, bb).unwrap();
        (b.build().unwrap(), a, bb, f)
    }

    #[test]
    fn one_arrow_category_is_valid() {
        let (cat, a, bb, f) = arrow();
        assert!(validate_category(&cat).is_pass());
        assert_eq!(cat.hom(a, bb), &[f]);
        assert!(cat.hom(bb, a).is_empty());
    }

    #[test]
    fn broken_identity_law_is_a_fail_with_witness() {
        let mut b = CategoryBuilder::new("bad");
        let a = b.object("A").unwrap();
        let bb = b.object("B").unwrap();
        let f = b.morphism("f", a, bb).unwrap();
        let id_a = b.identity(a);
        let id_b = b.identity(bb);
        b.compose(f, id_a, id_b).unwrap();
        let cat = b.build().unwrap();
        let report = validate_category(&cat);
        assert!(report.is_fail());
        let law = report.find("identity-laws").unwrap();
        assert!(law.is_fail());
        assert_eq!(law.witnesses, vec![f]);
    }

    #[test]
    fn malformed_ids_are_input_errors() {
        let mut b = CategoryBuilder::new("bad");
        let a = b.object("A").unwrap();
        assert_eq!(b.morphism("f", a, ObjId(7)), Err(Error::InvalidObject(7)));
        assert_eq!(b.compose(MorId(0), MorId(3), MorId(0)), Err(Error::InvalidMorphism(3)));
        assert!(matches!(b.object("A"), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn missing_composite_fails_totality() {
        let mut b = CategoryBuilder::new("gap");
        let a = b.object("A").unwrap();
        let bb = b.object("B").unwrap();
        let c = b.object("C").unwrap();
        let f = b.morphism("f", a, bb).unwrap();
        let g = b.morphism("g", bb, c).unwrap();
        let cat = b.build().unwrap();
        let report = validate_category(&cat);
        let tot = report.find("composition-totality").unwrap();
        assert!(tot.is_fail());
        assert_eq!(tot.witnesses, vec![g, f]);
        assert_eq!(
            report.find("associativity").unwrap().verdict,
            crate::Verdict::NotApplicable
        );
    }

    #[test]
    fn identity_cospan_pulls_back_to_itself() {
        let (cat, a, _, _) = arrow();
        let id = cat.id(a);
        let pb = pullback(&cat, id, id).unwrap().unwrap();
        assert_eq!(pb.apex, a);
        assert_eq!(pb.legs, (id, id));
    }

    #[test]
    fn arrow_classes() {
        let (cat, _, _, f) = arrow();
        let basic = basic_classes(&cat);
        assert_eq!(
            basic.iso.iter().collect::<Vec<_>>(),
            vec![cat.id(ObjId(0)), cat.id(ObjId(1))]
        );
        assert!(basic.mon.contains(f) && basic.epi.contains(f));
        assert!(!basic.sec.contains(f) && !basic.ret.contains(f));
    }

    #[test]
    fn arrow_has_no_pullback_of_f_along_f_in_class() {
        let (cat, _, _, f) = arrow();
        // the kernel pair of f exists (apex A) but its leg is id_A, outside {f}
        let only_f = MorClass::from_members("F", &cat, [f]).unwrap();
        let report = class_has_pullbacks(&cat, &only_f);
        assert!(report.is_fail());
        assert_eq!(report.witnesses, vec![f, f]);
    }

    #[test]
    fn identities_have_pullbacks_everywhere() {
        let (cat, _, _, _) = arrow();
        let ids = MorClass::identities("Id", &cat);
        assert!(class_has_pullbacks(&cat, &ids).is_pass());
        assert!(class_has_pushouts(&cat, &ids).is_pass());
    }
}
