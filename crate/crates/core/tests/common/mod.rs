#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multilog_core::arrangement::{Arrangement, LinearSubspace};
use multilog_core::ci::CIData;
use multilog_core::groebner::Submodule;
use multilog_core::poly::{Monomial, Rational, VariableNames};

pub fn names(vars: &[&str]) -> VariableNames {
    VariableNames::new(vars.iter().copied()).unwrap()
}

pub fn arr(names: &VariableNames, comps: &[&[&str]]) -> Arrangement {
    let comps = comps.iter().map(|c| LinearSubspace::parse(c, names).unwrap()).collect();
    Arrangement::new(names.len(), comps).unwrap()
}

/// The two planes `{x = z = 0}` and `{y = t = 0}` inside `⟨xy, zt⟩`.
pub fn two_planes() -> (Arrangement, CIData) {
    let n = names(&["x", "y", "z", "t"]);
    let a = arr(&n, &[&["x", "z"], &["y", "t"]]);
    let c = CIData::parse(&["x*y", "z*t"], &n, None).unwrap();
    (a, c)
}

pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur).unwrap());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    go(0, deg, &mut vec![0; nvars], &mut out);
    out
}

type SparseRow = BTreeMap<(usize, Vec<u16>), Rational>;

fn sparse_rank(rows: Vec<SparseRow>) -> usize {
    let mut pivots: BTreeMap<(usize, Vec<u16>), SparseRow> = BTreeMap::new();
    for mut row in rows {
        while let Some((key, lead)) = row.iter().next().map(|(k, v)| (k.clone(), v.clone())) {
            let Some(p) = pivots.get(&key) else {
                pivots.insert(key, row);
                break;
            };
            let f = &lead / &p[&key];
            for (k, x) in p {
                let e = row.entry(k.clone()).or_insert_with(Rational::zero);
                *e = &*e - &(&f * x);
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
    }
    pivots.len()
}

/// Dimension of the degree-`p` piece of `m`, from the span of all products
/// of generators with monomials.
pub fn brute_force_dimension(m: &Submodule, p: i32) -> usize {
    let mut rows = Vec::new();
    for g in m.generators() {
        let Some(dg) = g.degree() else { continue };
        if dg > p {
            continue;
        }
        for mon in monomials_of_degree(m.nvars(), (p - dg) as u32) {
            let mut row = SparseRow::new();
            for (i, c) in g.components().iter().enumerate() {
                for (u, k) in c.terms() {
                    row.insert((i, u.mul(&mon).exponents().to_vec()), k.clone());
                }
            }
            rows.push(row);
        }
    }
    sparse_rank(rows)
}

/// A random central arrangement of `s` distinct subspaces of codimension
/// `k` in `ℓ` variables, each cut out by small integer forms.
pub fn random_arrangement(rng: &mut ChaCha8Rng, ell: usize, k: usize, s: usize) -> Arrangement {
    loop {
        let comps: Vec<LinearSubspace> = (0..s)
            .map(|_| loop {
                let rows: Vec<Vec<Rational>> =
                    (0..k).map(|_| (0..ell).map(|_| Rational::from(rng.gen_range(-2i64..=2))).collect()).collect();
                if let Ok(sub) = LinearSubspace::from_forms(ell, &rows) {
                    if sub.codim() == k {
                        break sub;
                    }
                }
            })
            .collect();
        if let Ok(a) = Arrangement::new(ell, comps) {
            if a.len() == s {
                return a;
            }
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
