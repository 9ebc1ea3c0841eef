use proptest::prelude::*;

use super::*;
use crate::groebner::{groebner_basis, FreeModule};
use crate::poly::{parse_poly, MonomialOrder, Poly, VariableNames};

fn names() -> VariableNames {
    VariableNames::new(["x", "y", "z", "t"]).unwrap()
}

fn p(s: &str) -> Poly {
    parse_poly(s, &names()).unwrap()
}

fn ideal(gens: &[&str]) -> Ideal {
    Ideal::new(4, gens.iter().map(|s| p(s)).collect()).unwrap()
}

fn elem(m: &FreeModule, comps: &[&str]) -> FreeModuleElement {
    m.element(comps.iter().map(|s| p(s)).collect()).unwrap()
}

fn module_of_ideal(i: &Ideal) -> Submodule {
    Submodule::ideal_times_free(i, FreeModule::new(i.nvars(), vec![0]))
}

/// All monomials of degree `d` in `n` variables.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    if n == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut stack = vec![(Vec::<u32>::new(), d)];
    while let Some((prefix, left)) = stack.pop() {
        if prefix.len() == n - 1 {
            let mut e = prefix.clone();
            e.push(left);
            out.push(Monomial::from_exponents(&e).unwrap());
            continue;
        }
        for k in 0..=left {
            let mut e = prefix.clone();
            e.push(k);
            stack.push((e, left - k));
        }
    }
    out
}

/// Rank of a list of sparse rows by plain Gaussian elimination.
fn rank(mut rows: Vec<BTreeMap<(usize, Vec<u16>), Rational>>) -> usize {
    let mut r = 0;
    while let Some(pos) = rows.iter().position(|row| !row.is_empty()) {
        let pivot_row = rows.swap_remove(pos);
        let (pk, pv) = pivot_row.iter().next().map(|(k, v)| (k.clone(), v.clone())).unwrap();
        for row in rows.iter_mut() {
            if let Some(c) = row.get(&pk).cloned() {
                let f = &c / &pv;
                for (k, x) in &pivot_row {
                    let e = row.entry(k.clone()).or_insert_with(Rational::zero);
                    *e = &*e - &(&f * x);
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the degree-`p` piece of the submodule, by linear algebra on
/// the products of generators with monomials.
fn brute_force_dimension(m: &Submodule, p: i32) -> usize {
    let mut rows = Vec::new();
    for g in m.generators() {
        let dg = g.degree().unwrap();
        if dg > p {
            continue;
        }
        for mon in monomials_of_degree(m.nvars(), (p - dg) as u32) {
            let mut row = BTreeMap::new();
            for (i, c) in g.components().iter().enumerate() {
                for (u, k) in c.terms() {
                    row.insert((i, u.mul(&mon).exponents().to_vec()), k.clone());
                }
            }
            rows.push(row);
        }
    }
    rank(rows)
}

fn assert_matches_oracle(m: &Submodule) {
    let hs = hilbert_series_of_submodule(m, 0).unwrap();
    for deg in 0..=6 {
        assert_eq!(hs.coefficient(deg as i64), brute_force_dimension(m, deg) as i64, "degree {deg} of {m:?}");
    }
}

#[test]
fn series_of_free_module() {
    let f = FreeModule::new(4, vec![0]);
    let hs = hilbert_series_of_submodule(&Submodule::full(f), 0).unwrap();
    assert_eq!(hs, HilbertSeries::free(4));
}

#[test]
fn series_of_koszul_ideal_with_offset() {
    let hs = hilbert_series_of_submodule(&module_of_ideal(&ideal(&["x*y", "z*t"])), -4).unwrap();
    // x^-4 (2x^2 - x^4) / (1 - x)^4
    let expected = HilbertSeries::new(LaurentPoly::from_coeffs(-2, &[2, 0, -1]), 4);
    assert_eq!(hs, expected);
    let closed = &HilbertSeries::free(4)
        - &HilbertSeries::new(&LaurentPoly::from_coeffs(0, &[1, 0, -1]) * &LaurentPoly::from_coeffs(0, &[1, 0, -1]), 4);
    assert_eq!(hs, closed.shift(-4));
}

#[test]
fn zero_module_has_zero_series() {
    let f = FreeModule::new(4, vec![0, 0]);
    let m = Submodule::new(f, vec![]).unwrap();
    assert!(hilbert_series_of_submodule(&m, 0).unwrap().is_zero());
}

#[test]
fn series_match_brute_force_oracle() {
    assert_matches_oracle(&module_of_ideal(&ideal(&["x*y", "x*t", "y*z", "z*t"])));
    assert_matches_oracle(&module_of_ideal(&ideal(&["x^2 - y*z", "y^2 - x*t"])));
    assert_matches_oracle(&module_of_ideal(&ideal(&["x + y - z", "x*t - y^2"])));
    let f = FreeModule::new(4, vec![0, 1]);
    let m = Submodule::new(
        f.clone(),
        vec![elem(&f, &["x^2", "y"]), elem(&f, &["x*y", "z"]), elem(&f, &["z*t", "0"])],
    )
    .unwrap();
    assert_matches_oracle(&m);
}

#[test]
fn series_independent_of_order() {
    for gens in [vec!["x^2 - y*z", "y^2 - x*t", "z^2 - x*y"], vec!["x*y - z*t", "x*z + y*t"]] {
        let i = ideal(&gens);
        let lex_leads: Vec<Monomial> = groebner_basis(&i, MonomialOrder::Lex)
            .iter()
            .map(|g| {
                g.terms()
                    .iter()
                    .map(|(m, _)| *m)
                    .max_by(|a, b| MonomialOrder::Lex.compare(a, b))
                    .unwrap()
            })
            .collect();
        let lex = HilbertSeries::new(quotient_numerator(&lex_leads), 4);
        assert_eq!(lex, hilbert_series_of_quotient_ring(&i));
    }
}

#[test]
fn koszul_resolution() {
    let m = module_of_ideal(&ideal(&["x*y", "z*t"]));
    let r = minimal_free_resolution(&m).unwrap();
    assert_eq!(r.betti_table(4), BettiTable::from_display(&[&[(2, 2)], &[(0, 1)]]));
    assert_eq!(r.betti_table(4).to_string(), "S(2)^2 <- S(0)");
    assert!(maps_compose_to_zero(&r));
    let expected = HilbertSeries::new(LaurentPoly::from_coeffs(2, &[2, 0, -1]), 4);
    assert_eq!(series_from_resolution(&r, 4, 0), expected);
}

#[test]
fn resolution_of_free_module() {
    let f = FreeModule::new(4, vec![0]);
    let r = minimal_free_resolution(&Submodule::full(f)).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(series_from_resolution(&r, 4, 0), HilbertSeries::free(4));
}

#[test]
fn twisted_cubic_betti_numbers() {
    let i = ideal(&["y^2 - x*z", "y*z - x*t", "z^2 - y*t"]);
    let m = module_of_ideal(&i);
    let r = minimal_free_resolution_of_quotient(&m).unwrap();
    let betti = r.betti();
    assert_eq!(betti.len(), 3);
    assert_eq!(betti[0], [(0, 1)].into_iter().collect());
    assert_eq!(betti[1], [(2, 3)].into_iter().collect());
    assert_eq!(betti[2], [(3, 2)].into_iter().collect());
    assert_eq!(series_from_resolution(&r, 4, 0), hilbert_series_of_quotient(&m, 0).unwrap());
}

#[test]
fn non_minimal_generators_are_pruned() {
    let m = module_of_ideal(&ideal(&["x", "x*y", "y", "x + y", "z^2", "x*z + z^2"]));
    let mins = minimal_generators(&m).unwrap();
    assert_eq!(mins.len(), 3);
}

fn arb_monomial_ideal() -> impl Strategy<Value = Ideal> {
    prop::collection::vec(prop::collection::vec(0u32..3, 4), 1..5).prop_map(|es| {
        let gens = es
            .into_iter()
            .map(|e| Poly::monomial(Monomial::from_exponents(&e).unwrap(), Rational::one()))
            .collect();
        Ideal::new(4, gens).unwrap()
    })
}

fn arb_binomial_ideal() -> impl Strategy<Value = Ideal> {
    let mon = || prop::collection::vec(0u32..3, 4);
    prop::collection::vec((mon(), -2i64..=2), 1..4).prop_map(|gs| {
        let gens = gs
            .into_iter()
            .map(|(e, c)| {
                let m = Monomial::from_exponents(&e).unwrap();
                // homogeneous binomial: m - c * (m with its exponents rotated)
                let mut rot = e.clone();
                rot.rotate_left(1);
                let r = Monomial::from_exponents(&rot).unwrap();
                &Poly::monomial(m, Rational::one()) - &Poly::monomial(r, Rational::from_int(c))
            })
            .collect();
        Ideal::new(4, gens).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn monomial_series_match_oracle(i in arb_monomial_ideal()) {
        assert_matches_oracle(&module_of_ideal(&i));
    }

    #[test]
    fn resolutions_reproduce_series(i in arb_binomial_ideal()) {
        let m = module_of_ideal(&i);
        let r = minimal_free_resolution(&m).unwrap();
        prop_assert!(r.len() <= 4);
        prop_assert!(maps_compose_to_zero(&r));
        prop_assert_eq!(series_from_resolution(&r, 4, 0), hilbert_series_of_submodule(&m, 0).unwrap());
        let q = minimal_free_resolution_of_quotient(&m).unwrap();
        prop_assert!(q.len() <= 5);
        prop_assert_eq!(series_from_resolution(&q, 4, 0), hilbert_series_of_quotient(&m, 0).unwrap());
    }
}
