//! Finite topological spaces and the full subcategory of continuous maps
//! between a list of them.

use std::collections::HashMap;

use crate::class::MorClass;
use crate::error::{Error, Result};
use crate::fincat::{coproduct, CategoryBuilder, FinCategory, MorId, ObjId};

use super::small::with_basic_and_closures;
use super::Instance;

/// Largest supported number of points.
pub const MAX_POINTS: usize = 16;

/// Points `0..n`; opens as bitmasks, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinTopSpace {
    name: String,
    points: usize,
    opens: Vec<u32>,
}

impl FinTopSpace {
    pub fn new(name: impl Into<String>, points: usize, opens: impl IntoIterator<Item = u32>) -> Result<Self> {
        let name = name.into();
        if points > MAX_POINTS {
            return Err(Error::InvalidTopology(format!("{name}: more than {MAX_POINTS} points")));
        }
        let full = full_mask(points);
        let mut opens: Vec<u32> = opens.into_iter().collect();
        opens.sort_unstable();
        opens.dedup();
        if let Some(bad) = opens.iter().find(|&&u| u & !full != 0) {
            return Err(Error::InvalidTopology(format!(
                "{name}: open {bad:#b} has points out of range"
            )));
        }
        if opens.binary_search(&0).is_err() || opens.binary_search(&full).is_err() {
            return Err(Error::InvalidTopology(format!(
                "{name}: must contain the empty and full sets"
            )));
        }
        for &u in &opens {
            for &v in &opens {
                if opens.binary_search(&(u | v)).is_err() || opens.binary_search(&(u & v)).is_err() {
                    return Err(Error::InvalidTopology(format!(
                        "{name}: not closed under union and intersection"
                    )));
                }
            }
        }
        Ok(FinTopSpace { name, points, opens })
    }

    pub fn point() -> Self {
        Self::new("P1", 1, [0, 1]).unwrap()
    }

    /// Points `{0, 1}` with `{1}` open.
    pub fn sierpinski() -> Self {
        Self::new("S", 2, [0b00, 0b10, 0b11]).unwrap()
    }

    pub fn indiscrete(name: impl Into<String>, points: usize) -> Result<Self> {
        Self::new(name, points, [0, full_mask(points)])
    }

    pub fn discrete(name: impl Into<String>, points: usize) -> Result<Self> {
        Self::new(name, points, 0..=full_mask(points))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    fn is_open(&self, set: u32) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    /// Whether the point map `f` (indexed by points of `self`) into `target`
    /// pulls every open back to an open.
    pub fn is_continuous(&self, target: &FinTopSpace, f: &[usize]) -> bool {
        target.opens.iter().all(|&v| {
            let pre = (0..self.points)
                .filter(|&x| v >> f[x] & 1 == 1)
                .fold(0, |acc, x| acc | 1 << x);
            self.is_open(pre)
        })
    }

    /// All continuous maps into `target`, in lexicographic order of the value
    /// vectors.
    pub fn continuous_maps(&self, target: &FinTopSpace) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if target.points == 0 && self.points > 0 {
            return out;
        }
        let mut f = vec![0usize; self.points];
        loop {
            if self.is_continuous(target, &f) {
                out.push(f.clone());
            }
            // odometer, last coordinate fastest
            let mut i = self.points;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                f[i] += 1;
                if f[i] < target.points {
                    break;
                }
                f[i] = 0;
            }
        }
    }

    /// Product topology on pairs `(x, y)` numbered `x * |Y| + y`.
    pub fn product(&self, other: &FinTopSpace) -> Result<FinTopSpace> {
        let n = self.points * other.points;
        if n > MAX_POINTS {
            return Err(Error::BudgetExceeded {
                needed: n,
                budget: MAX_POINTS,
            });
        }
        let boxes: Vec<u32> = self
            .opens
            .iter()
            .flat_map(|&u| {
                other.opens.iter().map(move |&v| {
                    let mut mask = 0;
                    for x in 0..self.points {
                        for y in 0..other.points {
                            if u >> x & 1 == 1 && v >> y & 1 == 1 {
                                mask |= 1 << (x * other.points + y);
                            }
                        }
                    }
                    mask
                })
            })
            .collect();
        let mut opens: Vec<u32> = vec![0];
        for b in boxes {
            let extra: Vec<u32> = opens.iter().map(|&o| o | b).collect();
            opens.extend(extra);
            opens.sort_unstable();
            opens.dedup();
        }
        FinTopSpace::new(format!("{}x{}", self.name, other.name), n, opens)
    }

    /// Disjoint union: points of `self` first.
    pub fn coproduct(&self, other: &FinTopSpace) -> Result<FinTopSpace> {
        let n = self.points + other.points;
        if n > MAX_POINTS {
            return Err(Error::BudgetExceeded {
                needed: n,
                budget: MAX_POINTS,
            });
        }
        let opens = self
            .opens
            .iter()
            .flat_map(|&u| other.opens.iter().map(move |&v| u | v << self.points));
        FinTopSpace::new(format!("{}+{}", self.name, other.name), n, opens)
    }

    /// Whether some bijection of points carries the opens onto each other.
    pub fn homeomorphic(&self, other: &FinTopSpace) -> bool {
        if self.points != other.points || self.opens.len() != other.opens.len() {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.points).collect();
        permutations(&mut perm, 0, &mut |p| {
            let image = |u: u32| {
                (0..self.points)
                    .filter(|&x| u >> x & 1 == 1)
                    .fold(0u32, |acc, x| acc | 1 << p[x])
            };
            self.opens.iter().all(|&u| other.is_open(image(u)))
        })
    }
}

fn full_mask(points: usize) -> u32 {
    if points >= 32 {
        u32::MAX
    } else {
        (1u32 << points) - 1
    }
}

/// Heap-free permutation search; stops at the first permutation accepted.
fn permutations(p: &mut Vec<usize>, k: usize, accept: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return accept(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, accept) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}

/// Which constructions to add, one round over pairs of the input spaces.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CloseUnder {
    pub products: bool,
    pub coproducts: bool,
}

/// A named morphism to be given a fixed label instead of the generated one.
#[derive(Debug, Clone)]
pub struct NamedMap {
    pub label: String,
    pub dom: String,
    pub cod: String,
    pub values: Vec<usize>,
}

/// The full subcategory on the given spaces (plus one round of pairwise
/// products / coproducts, deduplicated up to homeomorphism) with every
/// continuous map. Generated labels are `{X}_{Y}_{values}`.
pub fn gen_fintop(spaces: &[FinTopSpace], close: CloseUnder, budget: usize) -> Result<Instance> {
    gen_fintop_named(spaces, close, budget, &[])
}

fn gen_fintop_named(spaces: &[FinTopSpace], close: CloseUnder, budget: usize, named: &[NamedMap]) -> Result<Instance> {
    let mut objects: Vec<FinTopSpace> = Vec::new();
    let push = |space: FinTopSpace, objects: &mut Vec<FinTopSpace>| -> Result<()> {
        if space.points > budget {
            return Err(Error::BudgetExceeded {
                needed: space.points,
                budget,
            });
        }
        if !objects.iter().any(|o| o.homeomorphic(&space)) {
            objects.push(space);
        }
        Ok(())
    };
    for s in spaces {
        if s.points > budget {
            return Err(Error::BudgetExceeded {
                needed: s.points,
                budget,
            });
        }
        objects.push(s.clone());
    }
    for (i, x) in spaces.iter().enumerate() {
        for y in &spaces[i..] {
            if close.products {
                push(x.product(y)?, &mut objects)?;
            }
            if close.coproducts {
                push(x.coproduct(y)?, &mut objects)?;
            }
        }
    }

    let mut b = CategoryBuilder::new("fintop");
    let obj_ids: Vec<ObjId> = objects
        .iter()
        .map(|s| b.object(s.name.clone()))
        .collect::<Result<_>>()?;
    let index_of = |name: &str| -> Result<usize> {
        objects
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| Error::InvalidGenerator(format!("unknown space `{name}`")))
    };

    let mut by_values: HashMap<(usize, usize, Vec<usize>), MorId> = HashMap::new();
    for (x, space) in objects.iter().enumerate() {
        by_values.insert((x, x, (0..space.points).collect()), b.identity(obj_ids[x]));
    }
    for nm in named {
        let (x, y) = (index_of(&nm.dom)?, index_of(&nm.cod)?);
        if nm.values.len() != objects[x].points
            || nm.values.iter().any(|&v| v >= objects[y].points)
            || !objects[x].is_continuous(&objects[y], &nm.values)
        {
            return Err(Error::InvalidGenerator(format!(
                "`{}` is not a continuous map",
                nm.label
            )));
        }
        let key = (x, y, nm.values.clone());
        if by_values.contains_key(&key) {
            return Err(Error::InvalidGenerator(format!(
                "`{}` duplicates another morphism",
                nm.label
            )));
        }
        let id = b.morphism(nm.label.clone(), obj_ids[x], obj_ids[y])?;
        by_values.insert(key, id);
    }
    let mut maps: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (x, sx) in objects.iter().enumerate() {
        for (y, sy) in objects.iter().enumerate() {
            for f in sx.continuous_maps(sy) {
                let key = (x, y, f);
                if !by_values.contains_key(&key) {
                    let digits: String = key.2.iter().map(|v| v.to_string()).collect();
                    let id = b.morphism(format!("{}_{}_{}", sx.name, sy.name, digits), obj_ids[x], obj_ids[y])?;
                    by_values.insert(key.clone(), id);
                }
                maps.push(key);
            }
        }
    }
    for (x, y, f) in &maps {
        for (y2, z, g) in &maps {
            if y != y2 {
                continue;
            }
            let (fid, gid) = (by_values[&(*x, *y, f.clone())], by_values[&(*y, *z, g.clone())]);
            if b.identity(obj_ids[*x]) == fid || b.identity(obj_ids[*y]) == gid {
                continue;
            }
            let gf: Vec<usize> = f.iter().map(|&p| g[p]).collect();
            b.compose(gid, fid, by_values[&(*x, *z, gf)])?;
        }
    }
    let cat = b.build()?;
    let mut bases = vec![MorClass::all("All", &cat)];
    let ret = crate::fincat::basic_classes(&cat).ret;
    bases.push(ret);
    let mut inst = with_basic_and_closures(cat, bases, Some(("Sec".into(), "Ret".into())));
    if close.coproducts {
        let codiagonals = codiagonal_class(&inst.cat);
        inst.classes.push(codiagonals);
    }
    Ok(inst)
}

/// The class of copairings `[h, h]: X + X -> Y` for every `h: X -> Y` whose
/// domain has a coproduct with itself in the category.
pub fn codiagonal_class(cat: &FinCategory) -> MorClass {
    let mut class = MorClass::empty("h⊕h", cat);
    for x in cat.objects() {
        let Some(sum) = coproduct(cat, x, x) else { continue };
        let (n1, n2) = sum.legs;
        for &h in cat.outgoing(x) {
            if let Some(&k) = cat
                .hom(sum.apex, cat.cod(h))
                .iter()
                .find(|&&k| cat.comp(k, n1) == Some(h) && cat.comp(k, n2) == Some(h))
            {
                class.insert(k);
            }
        }
    }
    class
}

/// `P1` and the Sierpinski space.
pub fn sierpinski() -> Instance {
    let mut inst = gen_fintop(
        &[FinTopSpace::point(), FinTopSpace::sierpinski()],
        CloseUnder::default(),
        4,
    )
    .expect("bundled spaces are valid");
    inst.cat.rename("sierpinski");
    inst
}

/// The four spaces of the no-diagonal square: `P1`, Sierpinski `S`, the
/// indiscrete `I2`, and `T3` on `{0, 1, 2}` whose only proper open is `{1}`;
/// with the named maps `s: P1 -> S` (0 to 0), `r: T3 -> I2` (0 to 0, 1 and 2
/// to 1), `u: P1 -> T3` (0 to 1) and the twist `tau: S -> I2`.
pub fn ex419() -> Instance {
    let spaces = [
        FinTopSpace::point(),
        FinTopSpace::sierpinski(),
        FinTopSpace::indiscrete("I2", 2).unwrap(),
        FinTopSpace::new("T3", 3, [0b000, 0b010, 0b111]).unwrap(),
    ];
    let named = |label: &str, dom: &str, cod: &str, values: &[usize]| NamedMap {
        label: label.into(),
        dom: dom.into(),
        cod: cod.into(),
        values: values.to_vec(),
    };
    let named = [
        named("s", "P1", "S", &[0]),
        named("r", "T3", "I2", &[0, 1, 1]),
        named("u", "P1", "T3", &[1]),
        named("tau", "S", "I2", &[1, 0]),
    ];
    let mut inst = gen_fintop_named(&spaces, CloseUnder::default(), 4, &named).expect("bundled spaces are valid");
    inst.cat.rename("ex419");
    inst
}
