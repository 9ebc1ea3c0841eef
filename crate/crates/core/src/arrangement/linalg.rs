//! Exact linear algebra over ℚ on dense row vectors.

use crate::poly::Rational;

pub type Row = Vec<Rational>;

/// Reduced row echelon form with zero rows removed.
pub fn rref(rows: &[Row]) -> Vec<Row> {
    let mut m: Vec<Row> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

pub fn rank(rows: &[Row]) -> usize {
    rref(rows).len()
}

/// Basis of `{v : rows · v = 0}`.
pub fn nullspace(rows: &[Row], ncols: usize) -> Vec<Row> {
    let r = rref(rows);
    let pivots: Vec<usize> =
        r.iter().map(|row| row.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Row {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn rref_of_dependent_rows() {
        let r = rref(&[row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])]);
        assert_eq!(r, vec![row(&[1, 0, 1]), row(&[0, 1, 1])]);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let m = [row(&[1, 2, 3, 4]), row(&[0, 1, -1, 2])];
        let ns = nullspace(&m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &m {
                let dot = r.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| &acc + &(a * b));
                assert!(dot.is_zero());
            }
        }
    }
}
