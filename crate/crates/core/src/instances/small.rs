//! Hand-built small categories and the thin / one-object generators.

use crate::class::MorClass;
use crate::closure::ClosureOperator;
use crate::error::{Error, Result};
use crate::fincat::{basic_classes, CategoryBuilder, FinCategory, MorId};

use super::Instance;

/// Objects `A`, `B`; `s: A -> B`, `r: B -> A` with `r.s = id_A` and the
/// idempotent `e = s.r`. Bundled class `M = {id_A, id_B, r}` with identity and
/// top closures on it.
pub fn split() -> Instance {
    let mut b = CategoryBuilder::new("split");
    let a = b.object("A").unwrap();
    let bb = b.object("B").unwrap();
    let s = b.morphism("s", a, bb).unwrap();
    let r = b.morphism("r", bb, a).unwrap();
    let e = b.morphism("e", bb, bb).unwrap();
    let id_a = b.identity(a);
    for (g, f, h) in [(r, s, id_a), (s, r, e), (e, e, e), (e, s, s), (r, e, r)] {
        b.compose(g, f, h).unwrap();
    }
    let cat = b.build().unwrap();
    let mut m = MorClass::identities("M", &cat);
    m.insert(r);
    with_basic_and_closures(cat, vec![m], None)
}

/// Objects `A`, `B` and a single arrow `f: A -> B`. Bundled class
/// `M = {id_A, id_B, f}` with identity and top closures on it.
pub fn arrow2() -> Instance {
    let mut b = CategoryBuilder::new("arrow2");
    let a = b.object("A").unwrap();
    let bb = b.object("B").unwrap();
    b.morphism("f", a, bb).unwrap();
    let cat = b.build().unwrap();
    let m = MorClass::all("M", &cat);
    with_basic_and_closures(cat, vec![m], None)
}

/// Adds the basic classes and, for each given class that contains the
/// identities, its identity and top closures (named `identity-M`, `top-M`).
pub(crate) fn with_basic_and_closures(
    cat: FinCategory,
    bases: Vec<MorClass>,
    factorization: Option<(String, String)>,
) -> Instance {
    let basic = basic_classes(&cat);
    let mut classes: Vec<MorClass> = basic.iter().cloned().collect();
    let mut closures = Vec::new();
    for base in bases {
        let name = base.name().to_string();
        if let Ok(op) = ClosureOperator::identity(&cat, base.clone()) {
            closures.push(op.renamed(format!("identity-{name}")));
        }
        if let Ok(op) = ClosureOperator::top(&cat, base.clone()) {
            closures.push(op.renamed(format!("top-{name}")));
        }
        classes.retain(|c| c.name() != name);
        classes.push(base);
    }
    Instance {
        cat,
        classes,
        closures,
        factorization,
    }
}

/// The thin category of a reflexive, transitive relation: objects `p0..`,
/// one morphism `p{i}_p{j}` for each related pair `i != j`.
pub fn gen_preorder(relation: &[Vec<bool>]) -> Result<FinCategory> {
    let n = relation.len();
    if relation.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidGenerator("relation matrix is not square".into()));
    }
    for i in 0..n {
        if !relation[i][i] {
            return Err(Error::InvalidGenerator(format!("relation is not reflexive at {i}")));
        }
        for j in 0..n {
            for k in 0..n {
                if relation[i][j] && relation[j][k] && !relation[i][k] {
                    return Err(Error::InvalidGenerator(format!(
                        "relation is not transitive at {i}, {j}, {k}"
                    )));
                }
            }
        }
    }
    let mut b = CategoryBuilder::new("preorder");
    let objs: Vec<_> = (0..n).map(|i| b.object(format!("p{i}"))).collect::<Result<_>>()?;
    let mut arrow = vec![vec![None; n]; n];
    for i in 0..n {
        arrow[i][i] = Some(b.identity(objs[i]));
        for j in 0..n {
            if i != j && relation[i][j] {
                arrow[i][j] = Some(b.morphism(format!("p{i}_p{j}"), objs[i], objs[j])?);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k {
                    continue;
                }
                if let (Some(f), Some(g)) = (arrow[i][j], arrow[j][k]) {
                    b.compose(g, f, arrow[i][k].expect("transitive"))?;
                }
            }
        }
    }
    b.build()
}

/// The one-object category of a monoid given by its multiplication table,
/// `table[g][f] = g . f`. The unit becomes `id_*`, other elements `m{i}`.
pub fn gen_monoid(table: &[Vec<usize>]) -> Result<FinCategory> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(Error::InvalidGenerator(
            "table is not a square table over its elements".into(),
        ));
    }
    let unit = (0..n)
        .find(|&u| (0..n).all(|x| table[u][x] == x && table[x][u] == x))
        .ok_or_else(|| Error::InvalidGenerator("table has no unit".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::InvalidGenerator(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
    }
    let mut b = CategoryBuilder::new("monoid");
    let star = b.object("*")?;
    let mut ids: Vec<MorId> = Vec::with_capacity(n);
    for i in 0..n {
        ids.push(if i == unit {
            b.identity(star)
        } else {
            b.morphism(format!("m{i}"), star, star)?
        });
    }
    for g in 0..n {
        for f in 0..n {
            if g != unit && f != unit {
                b.compose(ids[g], ids[f], ids[table[g][f]])?;
            }
        }
    }
    b.build()
}
