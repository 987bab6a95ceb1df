//! Computed values checked against independent brute-force enumerations.

mod common;

use std::collections::{BTreeSet, HashMap};

use common::*;
use quasifact::closure::{derived_classes, has_qcd, ClosureOperator};
use quasifact::factor::{is_qlf_structure, is_qrf_structure, is_quasi_right_part, quasi_right_part};
use quasifact::fincat::{basic_classes, class_has_pullbacks, product, pullback, validate_category};
use quasifact::instances::fintop::{gen_fintop, CloseUnder, FinTopSpace};
use quasifact::instances::small::gen_monoid;
use quasifact::lifting::{
    apl_down, is_qfs, is_wfs, left_class, right_class, square_diagonal, square_left_class, square_right_class, ult,
    ult_class, LiftingSquare,
};
use quasifact::sieves::{leq, quasi_epis, quasi_monos, sieve};
use quasifact::{preset, CategoryBuilder, FinCategory, MorClass, MorId};

/// Sieve classes from explicit composite sets.
struct BruteSieves {
    sieve: Vec<usize>,
    cosieve: Vec<usize>,
}

impl BruteSieves {
    fn new(cat: &FinCategory) -> Self {
        let mut ids: HashMap<(bool, BTreeSet<MorId>), usize> = HashMap::new();
        let mut intern = |key| {
            let n = ids.len();
            *ids.entry(key).or_insert(n)
        };
        let sieve = cat.morphisms().map(|f| intern((true, brute_sieve(cat, f)))).collect();
        let cosieve = cat
            .morphisms()
            .map(|f| intern((false, brute_cosieve(cat, f))))
            .collect();
        BruteSieves { sieve, cosieve }
    }

    fn same_sieve(&self, f: MorId, g: MorId) -> bool {
        self.sieve[f.index()] == self.sieve[g.index()]
    }
}

fn mor(cat: &FinCategory, label: &str) -> MorId {
    cat.mor_by_label(label).unwrap_or_else(|| panic!("no morphism {label}"))
}

fn brute_diagonals(cat: &FinCategory, sq: &LiftingSquare) -> Vec<MorId> {
    cat.hom(cat.cod(sq.left), cat.dom(sq.right))
        .iter()
        .copied()
        .filter(|&d| cat.comp(d, sq.left) == Some(sq.top) && cat.comp(sq.right, d) == Some(sq.bottom))
        .collect()
}

#[test]
fn split_tables() {
    let inst = preset("split").unwrap();
    let cat = &inst.cat;
    assert!(validate_category(cat).is_pass());
    let a = cat.obj_by_label("A").unwrap();
    assert_eq!(cat.hom(a, a), &[cat.id(a)]);
    let basic = basic_classes(cat);
    let names = |c: &MorClass| c.iter().map(|m| cat.label(m).to_string()).collect::<Vec<_>>();
    assert_eq!(names(&basic.sec), ["id_A", "id_B", "s"]);
    assert_eq!(names(&basic.ret), ["id_A", "id_B", "r"]);
    let (s, e) = (mor(cat, "s"), mor(cat, "e"));
    // s . r = e also lies in the sieve of s
    assert_eq!(sieve(cat, s).iter().collect::<BTreeSet<_>>(), BTreeSet::from([s, e]));
    let id_b = cat.id(cat.cod(s));
    assert!(leq(cat, s, id_b).unwrap());
    assert!(!leq(cat, id_b, s).unwrap());
    let ret = basic.ret.clone();
    assert_eq!(quasi_right_part(cat, &ret, s).unwrap().canonical, id_b);
}

#[test]
fn split_all_all_fails_class_equality() {
    let inst = preset("split").unwrap();
    let all = MorClass::all("All", &inst.cat);
    let report = is_qfs(&inst.cat, &all, &all);
    assert!(report.is_fail());
    assert!(report.find("factorization").unwrap().is_pass());
    assert!(report.find("⧩All ⊆ All").unwrap().is_pass());
    assert!(report.find("All ⊆ ⧩All").unwrap().is_fail());
}

#[test]
fn split_identity_closure_qcd() {
    let inst = preset("split").unwrap();
    let cat = &inst.cat;
    let op = inst.closure("identity-M").unwrap();
    let eqc = derived_classes(cat, op).eqc;
    let closed = eqc.iter().all(|f| {
        cat.outgoing(cat.cod(f))
            .iter()
            .all(|&g| !eqc.contains(g) || eqc.contains(cat.then(f, g)))
    });
    assert_eq!(has_qcd(cat, op).is_pass(), closed);
}

#[test]
fn arrow_lifting_and_pullbacks() {
    let inst = preset("arrow2").unwrap();
    let cat = &inst.cat;
    let f = mor(cat, "f");
    assert!(!apl_down(cat, f, f).unwrap());
    // (f, f) has the pullback (A, id_A, id_A)
    let pb = pullback(cat, f, f).unwrap().unwrap();
    assert_eq!(pb.legs, (cat.id(cat.dom(f)), cat.id(cat.dom(f))));
    // the leg id_A is not in {f}
    let m = MorClass::from_members("M", cat, [f]).unwrap();
    let report = class_has_pullbacks(cat, &m);
    assert!(report.is_fail());
    assert_eq!(report.witnesses, vec![f, f]);
    assert!(class_has_pullbacks(cat, &MorClass::all("All", cat)).is_pass());
}

#[test]
fn cospan_without_pullback() {
    // A -> C <- B with nothing over both A and B
    let mut b = CategoryBuilder::new("vee");
    let (a, bb, c) = (b.object("A").unwrap(), b.object("B").unwrap(), b.object("C").unwrap());
    let f = b.morphism("f", a, c).unwrap();
    let g = b.morphism("g", bb, c).unwrap();
    let cat = b.build().unwrap();
    assert_eq!(pullback(&cat, f, g).unwrap(), None);
    let m = MorClass::from_members("M", &cat, [g]).unwrap();
    let report = class_has_pullbacks(&cat, &m);
    assert!(report.is_fail());
}

#[test]
fn sierpinski_endomaps() {
    let s = FinTopSpace::sierpinski();
    let all: Vec<Vec<usize>> = (0..4).map(|k| vec![k & 1, k >> 1]).collect();
    let continuous: Vec<_> = all.into_iter().filter(|f| s.is_continuous(&s, f)).collect();
    assert_eq!(continuous.len(), 3);
    assert!(!continuous.contains(&vec![1, 0]));
    assert_eq!(s.continuous_maps(&s), continuous);
}

#[test]
fn point_times_sierpinski_is_sierpinski() {
    let inst = preset("sierpinski").unwrap();
    let cat = &inst.cat;
    let (p, s) = (cat.obj_by_label("P1").unwrap(), cat.obj_by_label("S").unwrap());
    let cone = product(cat, p, s).unwrap();
    let iso = basic_classes(cat).iso;
    assert!(cat.hom(cone.apex, s).iter().any(|&h| iso.contains(h)));
}

#[test]
fn products_preset_qfs_by_sweep() {
    let inst = gen_fintop(
        &[FinTopSpace::point(), FinTopSpace::sierpinski()],
        CloseUnder {
            products: true,
            coproducts: false,
        },
        4,
    )
    .unwrap();
    let cat = &inst.cat;
    let (sec, ret) = (inst.class("Sec").unwrap(), inst.class("Ret").unwrap());
    let report = is_qfs(cat, sec, ret);
    // the class equalities are decided by the sweeps below
    let left = left_class(cat, ret);
    let right = right_class(cat, sec);
    assert_eq!(report.find("⧩Ret ⊆ Sec").unwrap().is_pass(), left.is_subset(sec));
    assert_eq!(report.find("Sec^⧯ ⊆ Ret").unwrap().is_pass(), right.is_subset(ret));
}

#[test]
fn cyclic_group_of_order_two() {
    let cat = gen_monoid(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(cat.num_morphisms(), 2);
    assert!(basic_classes(&cat).iso.same_members(&MorClass::all("All", &cat)));
}

#[test]
fn kleisli_counts() {
    let count = |n: u32| -> usize { (0..=n).flat_map(|a| (0..=n).map(move |b| 1usize << (a * b))).sum() };
    for (name, n) in [("kleisli1", 1), ("kleisli2", 2), ("kleisli3", 3)] {
        let inst = preset(name).unwrap();
        assert_eq!(inst.cat.num_morphisms(), count(n), "{name}");
    }
    let k1 = preset("kleisli1").unwrap();
    let one = k1.cat.obj_by_label("N1").unwrap();
    assert_eq!(k1.cat.hom(one, one).len(), 2);
}

#[test]
fn kleisli3_qm_qe_by_pair_sweep() {
    let inst = preset("kleisli3").unwrap();
    let cat = &inst.cat;
    let brute = BruteSieves::new(cat);
    let cancels = |f: MorId, left: bool| {
        let mut groups: HashMap<MorId, MorId> = HashMap::new();
        let pool = if left {
            cat.incoming(cat.dom(f))
        } else {
            cat.outgoing(cat.cod(f))
        };
        pool.iter().all(|&a| {
            let key = if left { cat.then(a, f) } else { cat.then(f, a) };
            match groups.get(&key) {
                Some(&b) if cat.dom(b) == cat.dom(a) && cat.cod(b) == cat.cod(a) => brute.same_sieve(a, b),
                Some(_) => true,
                None => {
                    groups.insert(key, a);
                    true
                }
            }
        })
    };
    let qm = MorClass::filter("QM", cat, |f| cancels(f, true));
    let qe = MorClass::filter("QE", cat, |f| cancels(f, false));
    assert!(quasi_monos(cat).same_members(&qm));
    assert!(quasi_epis(cat).same_members(&qe));
}

#[test]
fn kleisli3_left_class_of_m_by_definition() {
    let inst = preset("kleisli3").unwrap();
    let cat = &inst.cat;
    let m = inst.class("M").unwrap();
    let brute = MorClass::filter("⧩M", cat, |e| {
        cat.incoming(cat.cod(e))
            .iter()
            .all(|&n| !m.contains(n) || apl_down(cat, e, n).unwrap())
    });
    let left = left_class(cat, m);
    assert!(left.same_members(&brute));
    // strictly larger than E: maps with an empty image land in ⧩M but not in E
    let e = inst.class("E").unwrap();
    assert!(e.is_subset(&left));
    let extra = left.difference(e);
    assert!(!extra.is_empty());
    assert!(extra.contains(&mor(cat, "k1x0_0")));
}

#[test]
fn kleisli3_right_class_of_e_by_definition() {
    let inst = preset("kleisli3").unwrap();
    let cat = &inst.cat;
    let e = inst.class("E").unwrap();
    let brute = BruteSieves::new(cat);
    let up = |ee: MorId, m: MorId| {
        cat.hom(cat.cod(ee), cat.cod(m)).iter().all(|&v| {
            cat.comp(v, ee) != Some(m)
                || cat
                    .hom(cat.cod(ee), cat.dom(m))
                    .iter()
                    .any(|&w| brute.same_sieve(cat.then(w, m), v))
        })
    };
    let expected = MorClass::filter("E^⧯", cat, |m| {
        cat.outgoing(cat.dom(m)).iter().all(|&ee| !e.contains(ee) || up(ee, m))
    });
    assert!(right_class(cat, e).same_members(&expected));
}

#[test]
fn kleisli3_ult_class_by_definition() {
    let inst = preset("kleisli3").unwrap();
    let cat = &inst.cat;
    let (e, m) = (inst.class("E").unwrap(), inst.class("M").unwrap());
    let brute = MorClass::filter("ult", cat, |ep| {
        e.contains(ep)
            && cat.outgoing(cat.dom(ep)).iter().all(|&ee| {
                !e.contains(ee)
                    || cat
                        .outgoing(cat.cod(ee))
                        .iter()
                        .all(|&mm| !m.contains(mm) || ult(cat, ep, ee, mm).unwrap())
            })
    });
    assert!(ult_class(cat, e, m).same_members(&brute));
}

#[test]
fn kleisli3_parts_and_structures() {
    let inst = preset("kleisli3").unwrap();
    let cat = &inst.cat;
    let (e, m) = (inst.class("E").unwrap(), inst.class("M").unwrap());
    assert!(is_qrf_structure(cat, m).is_pass());
    assert!(is_qlf_structure(cat, e).is_pass());
    // spot-check the literal definition on every morphism into N2
    let n2 = cat.obj_by_label("N2").unwrap();
    for &f in cat.incoming(n2) {
        let p = quasi_right_part(cat, m, f).unwrap();
        assert!(is_quasi_right_part(cat, m, f, p.canonical));
    }
    let eqc = derived_classes(cat, inst.closure("powerset").unwrap()).eqc;
    assert!(e.is_subset(&eqc));
}

#[test]
fn kleisli3_pinned_square() {
    let inst = preset("kleisli3").unwrap();
    let cat = &inst.cat;
    let sq = LiftingSquare {
        top: mor(cat, "k3x2_232"),
        left: mor(cat, "k3x1_111"),
        right: mor(cat, "k2x3_01"),
        bottom: mor(cat, "k1x3_1"),
    };
    assert!(sq.commutes(cat));
    assert!(inst.class("E").unwrap().contains(sq.left));
    assert!(inst.class("M").unwrap().contains(sq.right));
    assert!(brute_diagonals(cat, &sq).is_empty());
    assert_eq!(square_diagonal(cat, &sq), None);
    assert!(is_wfs(cat, inst.class("E").unwrap(), inst.class("M").unwrap()).is_fail());
}

#[test]
fn ex419_pinned_square() {
    let inst = preset("ex419").unwrap();
    let cat = &inst.cat;
    let sq = LiftingSquare {
        top: mor(cat, "u"),
        left: mor(cat, "s"),
        right: mor(cat, "r"),
        bottom: mor(cat, "tau"),
    };
    assert!(sq.commutes(cat));
    assert!(inst.class("Sec").unwrap().contains(sq.left));
    assert!(inst.class("Ret").unwrap().contains(sq.right));
    assert!(brute_diagonals(cat, &sq).is_empty());
    assert_eq!(square_diagonal(cat, &sq), None);
    let wfs = is_wfs(cat, inst.class("Sec").unwrap(), inst.class("Ret").unwrap());
    let lifting = wfs.find("lifting").unwrap();
    assert_eq!(lifting.witness_labels(cat), ["u", "s", "r", "tau"]);
    assert_eq!(lifting.detail, "no diagonal");
}

#[test]
fn ex419_derived_classes_by_definition() {
    let inst = preset("ex419").unwrap();
    let cat = &inst.cat;
    let brute = BruteSieves::new(cat);
    for op in &inst.closures {
        let m = op.base();
        let d = derived_classes(cat, op);
        let mqc = MorClass::filter("M^QC", cat, |f| {
            m.contains(f) && brute.same_sieve(op.get(f).unwrap(), f)
        });
        assert!(d.mqc.same_members(&mqc), "{}", op.name());
        let eqc = MorClass::filter("E^QC", cat, |f| {
            let part = cat
                .incoming(cat.cod(f))
                .iter()
                .copied()
                .find(|&p| is_quasi_right_part(cat, m, f, p));
            part.is_some_and(|p| brute.same_sieve(op.get(p).unwrap(), cat.id(cat.cod(f))))
        });
        assert!(d.eqc.same_members(&eqc), "{}", op.name());
    }
}

#[test]
fn identity_closure_on_arbitrary_class() {
    let inst = preset("kleisli2").unwrap();
    let cat = &inst.cat;
    let m = MorClass::filter("M", cat, |f| cat.is_identity(f) || cat.cod(f) != cat.dom(f));
    let op = ClosureOperator::identity(cat, m.clone()).unwrap();
    let d = derived_classes(cat, &op);
    assert!(d.mqc.same_members(&m));
}

#[test]
fn brute_sieves_agree_with_index_on_presets() {
    for name in ["arrow2", "split", "sierpinski", "ex419", "kleisli1", "kleisli2"] {
        let inst = preset(name).unwrap();
        let cat = &inst.cat;
        let brute = BruteSieves::new(cat);
        let idx = cat.sieves();
        for f in cat.morphisms() {
            for &g in cat.incoming(cat.cod(f)) {
                assert_eq!(idx.same_sieve(f, g), brute.same_sieve(f, g), "{name}");
            }
            for &g in cat.outgoing(cat.dom(f)) {
                let same = brute.cosieve[f.index()] == brute.cosieve[g.index()];
                assert_eq!(idx.same_cosieve(f, g), same, "{name}");
            }
        }
    }
}

#[test]
fn weak_factorization_structure_that_is_not_quasi() {
    // a point X0, a two-point set X1, the collapse X1 -> X0 and the inclusion of 0
    let cat = concrete_category(&[1, 2], &[(1, 0, vec![0, 0]), (0, 1, vec![0])]);
    assert_eq!(cat.num_morphisms(), 5);
    let ids = MorClass::identities("Id", &cat);
    let m = square_right_class(&cat, &square_left_class(&cat, &ids));
    let e = square_left_class(&cat, &m);
    assert!(is_wfs(&cat, &e, &m).is_pass());
    let qfs = is_qfs(&cat, &e, &m);
    let failed: Vec<_> = qfs.children.iter().filter(|c| c.is_fail()).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].witness_labels(&cat), ["f10_00"]);
    // the extra member lifts in the quasi sense against all of E
    let extra = mor(&cat, "f10_00");
    assert!(right_class(&cat, &e).contains(extra) && !m.contains(extra));
}
