use proptest::prelude::*;

use super::*;
use crate::poly::{parse_poly, VariableNames};

fn names() -> VariableNames {
    VariableNames::new(["x", "y", "z", "t"]).unwrap()
}

fn p(s: &str) -> Poly {
    parse_poly(s, &names()).unwrap()
}

fn ideal(gens: &[&str]) -> Ideal {
    Ideal::new(4, gens.iter().map(|s| p(s)).collect()).unwrap()
}

fn ps(gens: &[&str]) -> Vec<Poly> {
    gens.iter().map(|s| p(s)).collect()
}

#[test]
fn monomial_ideal_is_its_own_basis() {
    assert_eq!(ideal(&["x*y", "z*t"]).groebner_basis(), ps(&["x*y", "z*t"]).as_slice());
}

#[test]
fn duplicate_generators_collapse() {
    assert_eq!(ideal(&["x", "x"]).groebner_basis(), ps(&["x"]).as_slice());
}

#[test]
fn lex_basis_of_linear_system() {
    let i = ideal(&["x + y", "x - y"]);
    assert_eq!(groebner_basis(&i, MonomialOrder::Lex), ps(&["x", "y"]));
}

#[test]
fn normal_form_examples() {
    let i = ideal(&["x*y", "z*t"]);
    assert!(normal_form(&p("x*y*z"), &i).unwrap().is_zero());
    assert_eq!(normal_form(&p("x"), &i).unwrap(), p("x"));
    assert_eq!(normal_form(&p("x*t + z*t"), &i).unwrap(), p("x*t"));
    let other = Poly::var(3, 0);
    assert!(normal_form(&other, &i).is_err());
}

#[test]
fn intersection_examples() {
    let i = ideal(&["x", "z"]);
    let j = ideal(&["y", "t"]);
    let k = ideal_intersect(&i, &j).unwrap();
    assert!(k.same_as(&ideal(&["x*y", "x*t", "y*z", "z*t"])));
    assert!(ideal_intersect(&i, &i).unwrap().same_as(&i));
    let two = |s: &str| Ideal::new(2, vec![parse_poly(s, &VariableNames::new(["x", "y"]).unwrap()).unwrap()]).unwrap();
    assert!(ideal_intersect(&two("x"), &two("y")).unwrap().same_as(&two("x*y")));
}

#[test]
fn intersection_of_non_monomial_ideals() {
    let i = ideal(&["x + y", "z"]);
    let j = ideal(&["x - y", "t"]);
    let k = ideal_intersect(&i, &j).unwrap();
    for g in k.generators() {
        assert!(i.contains(g).unwrap() && j.contains(g).unwrap());
    }
    // products of generators lie in the intersection
    for a in i.generators() {
        for b in j.generators() {
            assert!(k.contains(&(a * b)).unwrap());
        }
    }
    assert!(is_groebner_basis(k.groebner_basis(), MonomialOrder::DegRevLex));
}

#[test]
fn bases_satisfy_buchberger() {
    for gens in [
        vec!["x^2 - y*z", "y^2 - x*t", "z^3 - x*y*t"],
        vec!["x + y + z + t", "x*y + y*z + z*t + t*x", "x*y*z + y*z*t + z*t*x + t*x*y"],
        vec!["x*y - z*t", "x^2*z - y*t^2"],
    ] {
        let i = ideal(&gens);
        assert!(is_groebner_basis(i.groebner_basis(), MonomialOrder::DegRevLex), "{gens:?}");
        assert!(is_groebner_basis(&groebner_basis(&i, MonomialOrder::Lex), MonomialOrder::Lex));
        for g in i.generators() {
            assert!(i.contains(g).unwrap());
        }
    }
}

#[test]
fn cyclic_four_basis_size() {
    let i = ideal(&[
        "x + y + z + t",
        "x*y + y*z + z*t + t*x",
        "x*y*z + y*z*t + z*t*x + t*x*y",
        "x*y*z*t - 1",
    ]);
    let gb = i.groebner_basis();
    assert!(is_groebner_basis(gb, MonomialOrder::DegRevLex));
    assert_eq!(gb.len(), 7);
}

fn elem(m: &FreeModule, comps: &[&str]) -> FreeModuleElement {
    m.element(comps.iter().map(|s| p(s)).collect()).unwrap()
}

#[test]
fn koszul_syzygy_of_regular_sequence() {
    let f = FreeModule::new(4, vec![0]);
    let m = Submodule::new(f.clone(), vec![elem(&f, &["x*y"]), elem(&f, &["z*t"])]).unwrap();
    let syz = syzygies(&m).unwrap();
    assert_eq!(syz.ambient().shifts, vec![2, 2]);
    let gb = syz.groebner_basis();
    assert_eq!(gb.len(), 1);
    let s = &gb[0];
    assert_eq!(s.degree(), Some(4));
    let expected = syz.ambient().element(ps(&["z*t", "-x*y"])).unwrap();
    assert!(s == &expected || s == &expected.scale(&Poly::constant(4, Rational::from_int(-1))));
}

#[test]
fn syzygy_small_cases() {
    let f = FreeModule::new(4, vec![0]);
    let single = Submodule::new(f.clone(), vec![elem(&f, &["x"])]).unwrap();
    assert!(syzygies(&single).unwrap().groebner_basis().is_empty());
    let two = Submodule::new(f.clone(), vec![elem(&f, &["x"]), elem(&f, &["y"])]).unwrap();
    let syz = syzygies(&two).unwrap();
    assert_eq!(syz.groebner_basis().len(), 1);
    let s = &syz.groebner_basis()[0];
    assert!(apply_map(two.generators(), s, &f).is_zero());
}

#[test]
fn syzygies_compose_to_zero() {
    let f = FreeModule::new(4, vec![0, 1]);
    let gens = vec![
        elem(&f, &["x^2", "y"]),
        elem(&f, &["x*y", "z"]),
        elem(&f, &["z*t", "0"]),
        elem(&f, &["y^2", "t"]),
    ];
    let m = Submodule::new(f.clone(), gens).unwrap();
    let syz = syzygies(&m).unwrap();
    assert!(!syz.groebner_basis().is_empty());
    for s in syz.groebner_basis() {
        assert!(s.is_homogeneous());
        assert!(apply_map(m.generators(), s, &f).is_zero());
    }
    assert!(satisfies_buchberger(syz.ambient(), syz.groebner_basis()));
}

#[test]
fn kernel_without_constraints_is_everything() {
    let f = FreeModule::new(4, vec![0, 0, 0]);
    let k = preimage_kernel(&f, &[]).unwrap();
    assert!(k.same_as(&Submodule::full(f)));
}

#[test]
fn kernel_rejects_inhomogeneous_constraint() {
    let src = FreeModule::new(4, vec![0]);
    let tgt = FreeModule::new(4, vec![0]);
    let bad = KernelConstraint {
        images: vec![elem(&tgt, &["x + 1"])],
        quotient: Submodule::new(tgt.clone(), vec![]).unwrap(),
    };
    assert!(matches!(preimage_kernel(&src, &[bad]), Err(Error::Input(_))));
}

#[test]
fn colon_ideal_as_kernel() {
    // {a : x*a ∈ <x*y, z*t>} = <y, z*t>
    let src = FreeModule::new(4, vec![0]);
    let tgt = FreeModule::new(4, vec![-1]);
    let ic = ideal(&["x*y", "z*t"]);
    let c = KernelConstraint::multiplier(&src, &p("x"), Submodule::ideal_times_free(&ic, tgt)).unwrap();
    let k = preimage_kernel(&src, &[c]).unwrap();
    let expected = Submodule::new(src.clone(), vec![elem(&src, &["y"]), elem(&src, &["z*t"])]).unwrap();
    assert!(k.same_as(&expected));
}

#[test]
fn kernel_is_independent_of_generator_order() {
    let src = FreeModule::new(4, vec![0, 0]);
    let tgt = FreeModule::new(4, vec![-2]);
    let make = |rev: bool| {
        let mut imgs = vec![elem(&tgt, &["x*z"]), elem(&tgt, &["y*t"])];
        let mut q = vec![elem(&tgt, &["x*y*z*t"]), elem(&tgt, &["x^2*y"]), elem(&tgt, &["z*t^2"])];
        if rev {
            q.reverse();
            imgs.swap(0, 1);
        }
        (src.clone(), imgs, q)
    };
    let (s1, i1, q1) = make(false);
    let (s2, i2, q2) = make(true);
    let k1 = preimage_kernel(&s1, &[KernelConstraint { images: i1, quotient: Submodule::new(tgt.clone(), q1).unwrap() }]).unwrap();
    let k2 = preimage_kernel(&s2, &[KernelConstraint { images: i2, quotient: Submodule::new(tgt.clone(), q2).unwrap() }]).unwrap();
    // swapping images corresponds to swapping coordinates
    let swapped: Vec<FreeModuleElement> = k2
        .groebner_basis()
        .iter()
        .map(|g| s1.element(vec![g.components()[1].clone(), g.components()[0].clone()]).unwrap())
        .collect();
    assert!(k1.same_as(&Submodule::new(s1.clone(), swapped).unwrap()));
}

fn small_linear(n: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-2i64..=2, n).prop_map(move |cs| {
        Poly::linear_form(&cs.into_iter().map(Rational::from_int).collect::<Vec<_>>())
    })
}

fn small_ideal() -> impl Strategy<Value = Ideal> {
    prop::collection::vec((small_linear(4), small_linear(4)), 1..=2).prop_map(|pairs| {
        Ideal::new(4, pairs.into_iter().map(|(a, b)| &a * &b).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn intersection_matches_membership(i in small_ideal(), j in small_ideal(), f in small_linear(4), g in small_linear(4)) {
        let k = ideal_intersect(&i, &j).unwrap();
        prop_assert!(is_groebner_basis(k.groebner_basis(), MonomialOrder::DegRevLex));
        let mut samples = vec![&f * &g];
        for a in i.generators() {
            for b in j.generators() {
                samples.push(a * b);
                samples.push(&(a * b) * &f);
            }
            samples.push(a * &f);
        }
        for s in samples {
            let both = i.contains(&s).unwrap() && j.contains(&s).unwrap();
            prop_assert_eq!(k.contains(&s).unwrap(), both);
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_congruent(i in small_ideal(), f in small_linear(4), g in small_linear(4)) {
        let h = &(&f * &g) * &f;
        let r = i.normal_form(&h).unwrap();
        prop_assert_eq!(i.normal_form(&r).unwrap(), r.clone());
        prop_assert!(i.contains(&(&h - &r)).unwrap());
        let leads = i.leading_monomials();
        for (m, _) in r.terms() {
            prop_assert!(!leads.iter().any(|l| l.divides(m)));
        }
    }

    #[test]
    fn basis_is_canonical(i in small_ideal()) {
        let mut rev = i.generators().to_vec();
        rev.reverse();
        let j = Ideal::new(4, rev).unwrap();
        prop_assert_eq!(i.groebner_basis(), j.groebner_basis());
    }
}
