#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use quasifact::{CategoryBuilder, FinCategory, MorClass, MorId, ObjId};

/// The subcategory of finite sets generated by the given maps. Objects are
/// sets of the given sizes; a generator `(i, j, values)` is the map from
/// object `i` to object `j` with `x ↦ values[x] mod size_j`.
pub fn concrete_category(sizes: &[usize], gens: &[(usize, usize, Vec<usize>)]) -> FinCategory {
    type Map = (usize, usize, Vec<usize>);
    let mut maps: Vec<Map> = (0..sizes.len()).map(|i| (i, i, (0..sizes[i]).collect())).collect();
    let mut index: HashMap<Map, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    for (i, j, values) in gens {
        let map = (
            *i,
            *j,
            (0..sizes[*i]).map(|x| values[x % values.len()] % sizes[*j]).collect(),
        );
        if !index.contains_key(&map) {
            index.insert(map.clone(), maps.len());
            maps.push(map);
        }
    }
    let mut comps = HashMap::new();
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..maps.len() {
            for b in 0..maps.len() {
                if maps[a].1 != maps[b].0 || comps.contains_key(&(b, a)) {
                    continue;
                }
                let values: Vec<usize> = maps[a].2.iter().map(|&x| maps[b].2[x]).collect();
                let map = (maps[a].0, maps[b].1, values);
                let h = match index.get(&map) {
                    Some(&h) => h,
                    None => {
                        index.insert(map.clone(), maps.len());
                        maps.push(map);
                        changed = true;
                        maps.len() - 1
                    }
                };
                comps.insert((b, a), h);
            }
        }
    }
    let mut builder = CategoryBuilder::new("concrete");
    let objs: Vec<ObjId> = (0..sizes.len())
        .map(|i| builder.object(format!("X{i}")).unwrap())
        .collect();
    let mut ids = Vec::new();
    for (k, (i, j, values)) in maps.iter().enumerate() {
        if k < sizes.len() {
            ids.push(builder.identity(objs[k]));
        } else {
            let digits: String = values.iter().map(|v| v.to_string()).collect();
            ids.push(
                builder
                    .morphism(format!("f{i}{j}_{digits}"), objs[*i], objs[*j])
                    .unwrap(),
            );
        }
    }
    for (&(b, a), &h) in &comps {
        if a >= sizes.len() && b >= sizes.len() {
            builder.compose(ids[b], ids[a], ids[h]).unwrap();
        }
    }
    builder.build().unwrap()
}

pub fn arb_category() -> impl Strategy<Value = FinCategory> {
    prop::collection::vec(1usize..=3, 1..=3)
        .prop_flat_map(|sizes| {
            let n = sizes.len();
            let gen = (0..n, 0..n, prop::collection::vec(0usize..3, 3));
            (Just(sizes), prop::collection::vec(gen, 2..=6))
        })
        .prop_map(|(sizes, gens)| concrete_category(&sizes, &gens))
}

/// A category together with a random class; `with_ids` forces the identities in.
pub fn arb_category_with_class(with_ids: bool) -> impl Strategy<Value = (FinCategory, MorClass)> {
    (arb_category(), prop::collection::vec(any::<bool>(), 256)).prop_map(move |(cat, bits)| {
        let class = MorClass::filter("M", &cat, |m| bits[m.index() % 256] || (with_ids && cat.is_identity(m)));
        (cat, class)
    })
}

pub fn brute_sieve(cat: &FinCategory, f: MorId) -> BTreeSet<MorId> {
    cat.incoming(cat.dom(f)).iter().map(|&g| cat.then(g, f)).collect()
}

pub fn brute_cosieve(cat: &FinCategory, f: MorId) -> BTreeSet<MorId> {
    cat.outgoing(cat.cod(f)).iter().map(|&g| cat.then(f, g)).collect()
}

pub fn brute_sim(cat: &FinCategory, f: MorId, g: MorId) -> bool {
    cat.cod(f) == cat.cod(g) && brute_sieve(cat, f) == brute_sieve(cat, g)
}

pub fn brute_split_epi(cat: &FinCategory, f: MorId) -> bool {
    let y = cat.cod(f);
    cat.hom(y, cat.dom(f)).iter().any(|&g| cat.then(g, f) == cat.id(y))
}
