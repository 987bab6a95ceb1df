//! The Kleisli category of the powerset monad, truncated to the finite sets
//! `N0 = ∅, N1 = {0}, ..., NN = {0, .., N-1}`.
//!
//! A morphism `[m] -> [n]` sends each point to a subset of `[n]`; it is stored
//! as one bitmask per point and labelled `k{m}x{n}_{masks}` with the masks as
//! decimal digits (`k3x1_111` sends all three points to `{0}`). Composition
//! is union of images.

use crate::class::MorClass;
use crate::closure::ClosureOperator;
use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FinCategory, MorId, ObjId};

use super::Instance;

/// Largest supported truncation.
pub const MAX_SIZE: usize = 3;

/// Subsets of `[n]` in canonical order: by size, then lexicographically.
pub fn canonical_subsets(n: usize) -> Vec<u32> {
    let mut subsets: Vec<u32> = (0..1u32 << n).collect();
    subsets.sort_by_key(|&s| (s.count_ones(), elements(s)));
    subsets
}

fn elements(s: u32) -> Vec<u32> {
    (0..32).filter(|i| s >> i & 1 == 1).collect()
}

/// Position of each mask of `[n]` in the canonical order.
fn canonical_rank(n: usize) -> Vec<usize> {
    let mut rank = vec![0; 1 << n];
    for (i, s) in canonical_subsets(n).into_iter().enumerate() {
        rank[s as usize] = i;
    }
    rank
}

/// Point images of every morphism, and the reverse lookup.
#[derive(Debug, Clone)]
pub struct Kleisli {
    size: usize,
    masks: Vec<Vec<u32>>,
    cods: Vec<usize>,
    /// `ids[offset(m, n) + code]` is the morphism with that mask vector.
    ids: Vec<MorId>,
    offsets: Vec<usize>,
}

impl Kleisli {
    pub fn size(&self) -> usize {
        self.size
    }

    /// The morphism `[masks.len()] -> [n]` with the given point images.
    pub fn lookup(&self, n: usize, masks: &[u32]) -> MorId {
        let m = masks.len();
        let code = masks.iter().fold(0usize, |acc, &s| (acc << n) | s as usize);
        self.ids[self.offsets[m * (self.size + 1) + n] + code]
    }

    pub fn masks(&self, f: MorId) -> &[u32] {
        &self.masks[f.index()]
    }

    pub fn cod_size(&self, f: MorId) -> usize {
        self.cods[f.index()]
    }
}

fn label(n: usize, masks: &[u32]) -> String {
    let digits: String = masks.iter().map(|s| s.to_string()).collect();
    format!("k{}x{n}_{digits}", masks.len())
}

fn decode(code: usize, m: usize, n: usize) -> Vec<u32> {
    (0..m)
        .map(|i| ((code >> (n * (m - 1 - i))) & ((1 << n) - 1)) as u32)
        .collect()
}

/// The truncated category on `N0..=NN`. Morphisms are numbered hom-set by
/// hom-set in `(m, n)` order, each hom-set in base-`2^n` order of its masks;
/// identities keep the ids they get when their object is added.
pub fn kleisli_category(size: usize) -> Result<(FinCategory, Kleisli)> {
    if size > MAX_SIZE {
        return Err(Error::SizeExceeded(size));
    }
    let mut b = CategoryBuilder::new(format!("kleisli{size}"));
    let objs: Vec<ObjId> = (0..=size).map(|k| b.object(format!("N{k}"))).collect::<Result<_>>()?;
    let mut offsets = vec![0; (size + 1) * (size + 1)];
    let mut ids = Vec::new();
    let mut dense_masks: Vec<Vec<u32>> = Vec::new();
    for m in 0..=size {
        for n in 0..=size {
            offsets[m * (size + 1) + n] = ids.len();
            for code in 0..1usize << (m * n) {
                let v = decode(code, m, n);
                let is_identity = m == n && v.iter().enumerate().all(|(i, &s)| s == 1 << i);
                let id = if is_identity {
                    b.identity(objs[m])
                } else {
                    b.morphism(label(n, &v), objs[m], objs[n])?
                };
                ids.push(id);
                dense_masks.push(v);
            }
        }
    }
    let total = b.num_morphisms();
    let mut masks = vec![Vec::new(); total];
    let mut cods = vec![0; total];
    for (dense, v) in dense_masks.into_iter().enumerate() {
        let id = ids[dense];
        cods[id.index()] = b.cod(id).index();
        masks[id.index()] = v;
    }
    let data = Kleisli {
        size,
        masks,
        cods,
        ids,
        offsets,
    };
    let is_id = |f: MorId| b.identity(b.dom(f)) == f;
    let mut comps = Vec::new();
    for m in 0..=size {
        for n in 0..=size {
            for k in 0..=size {
                let fs = data.offsets[m * (size + 1) + n]..data.offsets[m * (size + 1) + n] + (1 << (m * n));
                for fd in fs {
                    let f = data.ids[fd];
                    if is_id(f) {
                        continue;
                    }
                    let gs = data.offsets[n * (size + 1) + k]..data.offsets[n * (size + 1) + k] + (1 << (n * k));
                    for gd in gs {
                        let g = data.ids[gd];
                        if is_id(g) {
                            continue;
                        }
                        let gf: Vec<u32> = data.masks[f.index()]
                            .iter()
                            .map(|&s| {
                                elements(s)
                                    .iter()
                                    .fold(0, |acc, &y| acc | data.masks[g.index()][y as usize])
                            })
                            .collect();
                        comps.push((g, f, data.lookup(k, &gf)));
                    }
                }
            }
        }
    }
    for (g, f, h) in comps {
        b.compose(g, f, h)?;
    }
    Ok((b.build()?, data))
}

/// `E`: morphisms `η . s` for surjections `s` onto some `[k]`, i.e. every
/// point goes to a singleton and every singleton is hit.
pub fn e_class(cat: &FinCategory, k: &Kleisli) -> MorClass {
    MorClass::filter("E", cat, |f| {
        let v = k.masks(f);
        let hit = v.iter().fold(0u32, |acc, &s| acc | s);
        v.iter().all(|s| s.count_ones() == 1) && hit == (1u32 << k.cod_size(f)) - 1
    })
}

/// `M`: injective listings of subsets in canonical order, i.e. the image
/// inclusions `I_f -> P([n])` with `I_f` relabelled canonically.
pub fn m_class(cat: &FinCategory, k: &Kleisli) -> MorClass {
    let ranks: Vec<Vec<usize>> = (0..=k.size).map(canonical_rank).collect();
    MorClass::filter("M", cat, |f| {
        let rank = &ranks[k.cod_size(f)];
        k.masks(f).windows(2).all(|w| rank[w[0] as usize] < rank[w[1] as usize])
    })
}

/// Nonempty members of the union-closure of `family` that are not unions of
/// strictly smaller members, in canonical order.
pub fn join_irreducibles(family: &[u32], n: usize) -> Vec<u32> {
    let mut closure: Vec<u32> = vec![0];
    for &s in family {
        let extra: Vec<u32> = closure.iter().map(|&c| c | s).collect();
        closure.extend(extra);
        closure.sort_unstable();
        closure.dedup();
    }
    let irreducible = |s: u32| {
        let below = closure
            .iter()
            .filter(|&&c| c != s && c & !s == 0)
            .fold(0, |acc, &c| acc | c);
        s != 0 && below != s
    };
    canonical_subsets(n)
        .into_iter()
        .filter(|&s| closure.contains(&s) && irreducible(s))
        .collect()
}

/// The closure `m ↦ μ . P(m)` up to `~`: it is represented inside the
/// truncation by the listing of the join-irreducibles of the union-closure of
/// the image of `m` (same sieve). Stored witnesses send a point `x` to `{i}`
/// when `m(x)` is the `i`-th listed set, else to all listed sets below `m(x)`.
pub fn powerset_closure(cat: &FinCategory, k: &Kleisli, base: MorClass) -> Result<ClosureOperator> {
    let mut entries = Vec::new();
    let mut witnesses = Vec::new();
    for m in base.iter() {
        let n = k.cod_size(m);
        let listing = join_irreducibles(k.masks(m), n);
        let c = k.lookup(n, &listing);
        let j: Vec<u32> = k
            .masks(m)
            .iter()
            .map(|&s| match listing.iter().position(|&t| t == s) {
                Some(i) => 1 << i,
                None => (0..listing.len())
                    .filter(|&i| listing[i] & !s == 0)
                    .fold(0, |acc, i| acc | 1 << i),
            })
            .collect();
        entries.push((m, c));
        witnesses.push((m, k.lookup(listing.len(), &j)));
    }
    ClosureOperator::new("powerset", cat, base, entries)?.with_witnesses(cat, witnesses)
}

/// The truncation at `size` with its classes `E`, `M` and, when requested,
/// the powerset closure on `M`.
pub fn gen_kleisli(size: usize, with_closure: bool) -> Result<Instance> {
    let (cat, k) = kleisli_category(size)?;
    let e = e_class(&cat, &k);
    let m = m_class(&cat, &k);
    let closures = if with_closure {
        vec![powerset_closure(&cat, &k, m.clone())?]
    } else {
        Vec::new()
    };
    let mut classes: Vec<MorClass> = crate::fincat::basic_classes(&cat).iter().cloned().collect();
    classes.push(e);
    classes.push(m);
    Ok(Instance {
        cat,
        classes,
        closures,
        factorization: Some(("E".into(), "M".into())),
    })
}
