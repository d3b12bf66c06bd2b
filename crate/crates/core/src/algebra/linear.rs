//! Gaussian elimination over rational functions for rectangular systems.

use super::ratfunc::RatFunc;

/// Reduced row-echelon view of `A x = b`.
#[derive(Clone, Debug)]
pub struct EchelonForm {
    pub rank: usize,
    /// Pivot column of each of the first `rank` reduced rows.
    pub pivots: Vec<usize>,
    /// Columns without a pivot.
    pub free: Vec<usize>,
    /// Reduced rows `[coeffs | rhs]`; rows past `rank` have zero coefficients.
    pub rows: Vec<Vec<RatFunc>>,
    /// Original index of each reduced row.
    pub origin: Vec<usize>,
}

impl EchelonForm {
    /// Right-hand sides of the zero rows, tagged with the original row index.
    /// The system is consistent exactly when all of them vanish.
    pub fn residuals(&self) -> Vec<(usize, RatFunc)> {
        let n = self.rows.first().map_or(0, |r| r.len() - 1);
        self.rows[self.rank..]
            .iter()
            .zip(&self.origin[self.rank..])
            .map(|(r, &o)| (o, r[n].clone()))
            .collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.residuals().iter().all(|(_, r)| r.is_zero())
    }

    /// The solution when it is unique and the system is consistent.
    pub fn unique_solution(&self) -> Option<Vec<RatFunc>> {
        if !self.free.is_empty() || !self.is_consistent() {
            return None;
        }
        let n = self.pivots.len();
        let mut x = vec![RatFunc::zero(); n];
        for (r, &p) in self.pivots.iter().enumerate() {
            x[p] = self.rows[r][n].clone();
        }
        Some(x)
    }
}

/// Row reduces `[A | b]`, scanning rows in the given order so that earlier
/// rows become pivots first.
pub fn row_reduce(a: &[Vec<RatFunc>], b: &[RatFunc]) -> EchelonForm {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<RatFunc>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            assert_eq!(r.len(), n, "ragged system");
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let mut origin: Vec<usize> = (0..rows.len()).collect();
    let mut pivots = Vec::new();
    let mut free = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            free.push(col);
            continue;
        };
        rows.swap(r, p);
        origin.swap(r, p);
        let inv = rows[r][col].recip();
        for j in col..=n {
            rows[r][j] = &rows[r][j] * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..=n {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    EchelonForm {
        rank: r,
        pivots,
        free,
        rows,
        origin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn unique_and_residual() {
        let c = RatFunc::var("C");
        let d = RatFunc::var("d");
        // x + y = d, x - y = C, 2x = d + C + (d - 1)
        let a = vec![vec![k(1), k(1)], vec![k(1), k(-1)], vec![k(2), k(0)]];
        let b = vec![d.clone(), c.clone(), &(&d + &c) + &(&d - &k(1))];
        let e = row_reduce(&a, &b);
        assert_eq!(e.rank, 2);
        let res = e.residuals();
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].0, 2);
        assert_eq!(res[0].1, &d - &k(1));
        assert!(e.unique_solution().is_none());
        let e2 = row_reduce(&a[..2], &b[..2]);
        let x = e2.unique_solution().unwrap();
        assert_eq!(x[0], (&d + &c).scale(&crate::algebra::rational::rat(1, 2)));
    }

    #[test]
    fn free_columns_detected() {
        let a = vec![vec![k(1), k(2)], vec![k(2), k(4)]];
        let e = row_reduce(&a, &[k(1), k(2)]);
        assert_eq!(e.rank, 1);
        assert_eq!(e.free, vec![1]);
        assert!(e.is_consistent());
    }
}
