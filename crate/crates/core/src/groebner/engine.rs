//! Buchberger's algorithm for submodules of shifted free modules.
//!
//! Ideals are the rank-one case. Every term carries a precomputed sort key;
//! the key of `m * u` is the key of `u` plus the key of `m`, so reduction
//! never re-evaluates the term order.

use std::collections::{BTreeMap, HashMap};

use crate::poly::{Key, Monomial, MonomialOrder, Rational, KEY_LEN};

/// Term order on a free module `S^r`: position breaks ties last, after the
/// shifted degree and the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModuleOrder {
    pub term: MonomialOrder,
    /// Generator degree of each basis vector.
    pub shifts: Vec<i32>,
    /// Basis vectors `0..elim` form a block that dominates all others.
    pub elim: usize,
}

impl ModuleOrder {
    pub fn new(term: MonomialOrder, shifts: Vec<i32>) -> Self {
        ModuleOrder { term, shifts, elim: 0 }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    fn header(&self) -> usize {
        if self.term.is_graded() {
            2
        } else {
            1
        }
    }

    pub fn key(&self, m: &Monomial, comp: usize) -> Key {
        let mut k = [0; KEY_LEN];
        k[0] = i32::from(comp < self.elim);
        if self.term.is_graded() {
            k[1] = m.degree() as i32 + self.shifts[comp];
        }
        let pos = self.term.write_key(m, &mut k, self.header());
        k[pos] = -(comp as i32);
        k
    }

    /// Additive contribution of multiplying a term by `m`.
    fn mono_key(&self, m: &Monomial) -> Key {
        let mut k = [0; KEY_LEN];
        if self.term.is_graded() {
            k[1] = m.degree() as i32;
        }
        self.term.write_key(m, &mut k, self.header());
        k
    }

    /// Degree used for pair selection.
    fn weight(&self, m: &Monomial, comp: usize) -> i64 {
        let shift = if self.term.is_graded() { self.shifts[comp] as i64 } else { 0 };
        m.degree() as i64 + shift
    }
}

fn add_keys(a: &Key, b: &Key) -> Key {
    let mut out = *a;
    for (o, x) in out.iter_mut().zip(b.iter()) {
        *o += *x;
    }
    out
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: Key,
    pub mon: Monomial,
    pub comp: u32,
    pub coeff: Rational,
}

/// Sparse vector: terms strictly descending by key, no zero coefficients.
pub(crate) type Vector = Vec<Term>;

pub(crate) fn make_vector(
    order: &ModuleOrder,
    terms: impl IntoIterator<Item = (usize, Monomial, Rational)>,
) -> Vector {
    let mut v: Vector = terms
        .into_iter()
        .filter(|(_, _, c)| !c.is_zero())
        .map(|(comp, mon, coeff)| Term { key: order.key(&mon, comp), mon, comp: comp as u32, coeff })
        .collect();
    v.sort_by_key(|t| std::cmp::Reverse(t.key));
    let mut out: Vector = Vec::with_capacity(v.len());
    for t in v {
        match out.last_mut() {
            Some(last) if last.key == t.key => last.coeff = &last.coeff + &t.coeff,
            _ => out.push(t),
        }
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

pub(crate) fn make_monic(v: &mut Vector) {
    if let Some(first) = v.first() {
        if !first.coeff.is_one() {
            let inv = first.coeff.inv();
            for t in v.iter_mut() {
                t.coeff = &t.coeff * &inv;
            }
        }
    }
}

/// `a - c * m * b`, with `mk` the key contribution of `m`.
fn sub_mul(a: &[Term], c: &Rational, m: &Monomial, mk: &Key, b: &[Term]) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    for bt in b {
        let key = add_keys(&bt.key, mk);
        while i < a.len() && a[i].key > key {
            out.push(a[i].clone());
            i += 1;
        }
        let prod = c * &bt.coeff;
        if i < a.len() && a[i].key == key {
            let s = &a[i].coeff - &prod;
            if !s.is_zero() {
                out.push(Term { coeff: s, ..a[i].clone() });
            }
            i += 1;
        } else {
            out.push(Term { key, mon: bt.mon.mul(m), comp: bt.comp, coeff: -&prod });
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

#[derive(Clone, Debug)]
struct Lead {
    mon: Monomial,
    comp: u32,
    mask: u32,
}

/// Queue position: weight, then key, then indices.
type TaskKey = (i64, Key, u8, usize, usize);

#[derive(Clone, Debug)]
enum Task {
    Input(usize),
    Pair(usize, usize, Monomial),
}

/// Incrementally built Gröbner basis.
pub(crate) struct Buchberger<'o> {
    order: &'o ModuleOrder,
    polys: Vec<Vector>,
    leads: Vec<Lead>,
    sugar: Vec<i64>,
    /// false once a later leading term divides this one
    useful: Vec<bool>,
    by_comp: HashMap<u32, Vec<usize>>,
    product_criterion: bool,
}

impl<'o> Buchberger<'o> {
    pub fn new(order: &'o ModuleOrder) -> Self {
        Buchberger {
            order,
            polys: Vec::new(),
            leads: Vec::new(),
            sugar: Vec::new(),
            useful: Vec::new(),
            by_comp: HashMap::new(),
            product_criterion: order.rank() == 1,
        }
    }

    /// Wraps a known Gröbner basis for reduction.
    pub fn from_basis(order: &'o ModuleOrder, basis: Vec<Vector>) -> Self {
        let mut b = Buchberger::new(order);
        for v in basis.into_iter().filter(|v| !v.is_empty()) {
            b.push(v, 0);
        }
        b
    }

    fn push(&mut self, mut v: Vector, sugar: i64) -> usize {
        make_monic(&mut v);
        let k = self.polys.len();
        let lead = Lead { mon: v[0].mon, comp: v[0].comp, mask: v[0].mon.support_mask() };
        self.by_comp.entry(lead.comp).or_default().push(k);
        self.polys.push(v);
        self.leads.push(lead);
        self.sugar.push(sugar);
        self.useful.push(true);
        k
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        let mask = t.mon.support_mask();
        let cands = self.by_comp.get(&t.comp)?;
        cands.iter().copied().find(|&g| {
            let l = &self.leads[g];
            l.mask & !mask == 0 && l.mon.divides(&t.mon)
        })
    }

    /// Full reduction against the current basis, without normalization.
    pub fn reduce(&self, mut p: Vector) -> Vector {
        let mut done: Vector = Vec::new();
        let mut i = 0;
        while i < p.len() {
            match self.find_reducer(&p[i]) {
                Some(g) => {
                    let q = self.leads[g].mon.quotient_of(&p[i].mon).expect("divides");
                    let mk = self.order.mono_key(&q);
                    let c = p[i].coeff.clone();
                    // leading terms cancel exactly since g is monic
                    p = sub_mul(&p[i + 1..], &c, &q, &mk, &self.polys[g][1..]);
                    i = 0;
                }
                None => {
                    done.push(p[i].clone());
                    i += 1;
                }
            }
        }
        done
    }

    fn s_vector(&self, i: usize, j: usize, lcm: &Monomial) -> Vector {
        let qi = self.leads[i].mon.quotient_of(lcm).unwrap();
        let qj = self.leads[j].mon.quotient_of(lcm).unwrap();
        let ki = self.order.mono_key(&qi);
        let kj = self.order.mono_key(&qj);
        let pi: Vector = self.polys[i][1..]
            .iter()
            .map(|t| Term {
                key: add_keys(&t.key, &ki),
                mon: t.mon.mul(&qi),
                comp: t.comp,
                coeff: t.coeff.clone(),
            })
            .collect();
        sub_mul(&pi, &Rational::one(), &qj, &kj, &self.polys[j][1..])
    }

    /// Buchberger's criterion for the current elements.
    pub fn all_s_vectors_reduce_to_zero(&self) -> bool {
        for j in 0..self.polys.len() {
            for i in 0..j {
                if self.leads[i].comp != self.leads[j].comp {
                    continue;
                }
                let l = self.leads[i].mon.lcm(&self.leads[j].mon);
                if !self.reduce(self.s_vector(i, j, &l)).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    fn sugar_of(&self, v: &Vector) -> i64 {
        v.iter().map(|t| self.order.weight(&t.mon, t.comp as usize)).max().unwrap_or(0)
    }

    /// Adds a reduced nonzero vector and updates the pair queue with the
    /// Gebauer-Moeller criteria.
    fn insert(&mut self, v: Vector, sugar: i64, queue: &mut BTreeMap<TaskKey, Task>) {
        let lead_mon = v[0].mon;
        let comp = v[0].comp;
        let same: Vec<usize> = self
            .by_comp
            .get(&comp)
            .map(|c| c.iter().copied().filter(|&i| self.useful[i]).collect())
            .unwrap_or_default();

        queue.retain(|_, task| match task {
            Task::Pair(i, j, l) => {
                if self.leads[*i].comp != comp || !lead_mon.divides(l) {
                    return true;
                }
                let li = self.leads[*i].mon.lcm(&lead_mon);
                let lj = self.leads[*j].mon.lcm(&lead_mon);
                li == *l || lj == *l
            }
            Task::Input(_) => true,
        });

        let cands: Vec<(usize, Monomial)> =
            same.iter().map(|&i| (i, self.leads[i].mon.lcm(&lead_mon))).collect();
        // drop pairs whose lcm is properly divisible by another new lcm
        let mut survivors: Vec<(usize, Monomial)> = cands
            .iter()
            .filter(|(_, l)| !cands.iter().any(|(_, m)| m != l && m.divides(l)))
            .cloned()
            .collect();
        survivors.sort_by(|a, b| {
            self.order.key(&a.1, 0).cmp(&self.order.key(&b.1, 0)).then(a.0.cmp(&b.0))
        });

        let k = self.polys.len();
        let mut idx = 0;
        while idx < survivors.len() {
            let l = survivors[idx].1;
            let mut end = idx;
            while end < survivors.len() && survivors[end].1 == l {
                end += 1;
            }
            let group = &survivors[idx..end];
            let coprime = self.product_criterion
                && group.iter().any(|(i, _)| self.leads[*i].mon.is_coprime(&lead_mon));
            if !coprime {
                let i = group[0].0;
                let qi = self.leads[i].mon.quotient_of(&l).unwrap();
                let qk = lead_mon.quotient_of(&l).unwrap();
                let w = (self.sugar[i] + qi.degree() as i64).max(sugar + qk.degree() as i64);
                let key = self.order.key(&l, comp as usize);
                queue.insert((w, key, 1, k, i), Task::Pair(i, k, l));
            }
            idx = end;
        }

        for &i in &same {
            if lead_mon.divides(&self.leads[i].mon) {
                self.useful[i] = false;
            }
        }
        self.push(v, sugar);
    }

    /// Runs Buchberger's algorithm on `inputs`; returns the reduced basis,
    /// sorted by descending leading term.
    pub fn run(mut self, inputs: Vec<Vector>) -> Vec<Vector> {
        let inputs: Vec<Vector> = inputs.into_iter().filter(|v| !v.is_empty()).collect();
        let mut queue: BTreeMap<TaskKey, Task> = BTreeMap::new();
        for (i, v) in inputs.iter().enumerate() {
            queue.insert((self.sugar_of(v), v[0].key, 0, i, 0), Task::Input(i));
        }
        while let Some(((weight, ..), task)) = queue.pop_first() {
            let v = match task {
                Task::Input(i) => inputs[i].clone(),
                Task::Pair(i, j, l) => self.s_vector(i, j, &l),
            };
            let r = self.reduce(v);
            if !r.is_empty() {
                self.insert(r, weight, &mut queue);
            }
        }
        self.finish()
    }

    fn finish(self) -> Vec<Vector> {
        let mut keep: Vec<usize> = (0..self.polys.len()).filter(|&i| self.useful[i]).collect();
        keep.sort_by(|&a, &b| self.polys[a][0].key.cmp(&self.polys[b][0].key));
        let mut minimal: Vec<usize> = Vec::new();
        for &i in &keep {
            let li = &self.leads[i];
            let redundant = minimal.iter().any(|&j| {
                let lj = &self.leads[j];
                lj.comp == li.comp && lj.mon.divides(&li.mon)
            });
            if !redundant {
                minimal.push(i);
            }
        }
        let red = Buchberger::from_basis(
            self.order,
            minimal.iter().map(|&i| self.polys[i].clone()).collect(),
        );
        let mut out: Vec<Vector> = red
            .polys
            .iter()
            .map(|p| {
                let mut v = vec![p[0].clone()];
                v.extend(red.reduce(p[1..].to_vec()));
                v
            })
            .collect();
        out.sort_by(|a, b| b[0].key.cmp(&a[0].key));
        out
    }
}
