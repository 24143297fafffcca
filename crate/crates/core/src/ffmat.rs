//! Dense matrices over GF(p^k): row reduction, kernels, characteristic
//! polynomials.  Modules act on row vectors from the right.

use crate::ff::{Ff, FfElt, FfRef};
use crate::ffpoly::FfPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FfElt>,
}

impl Mat {
    pub fn zero(f: &Ff, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity(f: &Ff, n: usize) -> Mat {
        let mut m = Mat::zero(f, n, n);
        for i in 0..n {
            m[(i, i)] = f.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FfElt>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[FfElt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, f: &Ff, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = f.add(out[(i, j)], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Ff, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = f.add(*x, *y);
        }
        out
    }

    pub fn scale(&self, f: &Ff, a: FfElt) -> Mat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = f.mul(*x, a);
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat {
            rows: self.cols,
            cols: self.rows,
            data: vec![self.data[0]; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn trace(&self, f: &Ff) -> FfElt {
        let mut t = f.zero();
        for i in 0..self.rows.min(self.cols) {
            t = f.add(t, self[(i, i)]);
        }
        t
    }

    /// Row-reduce in place; returns pivot column per pivot row.
    pub fn rref(&mut self, f: &Ff) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self[(r, c)]);
            for j in c..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)];
                    for j in c..self.cols {
                        let t = f.mul(self[(r, j)], factor);
                        self[(i, j)] = f.sub(self[(i, j)], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &Ff) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of { v : v · self = 0 }, as rows in reduced form.
    pub fn left_kernel(&self, f: &Ff) -> Mat {
        // v * M = 0  <=>  M^T v^T = 0: row-reduce M^T and read free columns
        let mut mt = self.transpose();
        let pivots = mt.rref(f);
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zero(f, free.len(), n);
        for (k, &fc) in free.iter().enumerate() {
            out[(k, fc)] = f.one();
            for (pr, &pc) in pivots.iter().enumerate() {
                out[(k, pc)] = f.neg(mt[(pr, fc)]);
            }
        }
        out
    }

    pub fn inverse(&self, f: &Ff) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = f.one();
        }
        let pivots = aug.rref(f);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Mat::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)];
            }
        }
        Some(out)
    }

    /// Is this a scalar multiple of the identity?  Returns the scalar.
    pub fn as_scalar(&self, f: &Ff) -> Option<FfElt> {
        assert_eq!(self.rows, self.cols);
        let s = self[(0, 0)];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { s } else { f.zero() };
                if self[(i, j)] != want {
                    return None;
                }
            }
        }
        Some(s)
    }

    /// Characteristic polynomial via Hessenberg reduction.
    pub fn charpoly(&self, f: &Ff) -> FfPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return FfPoly::constant(f, f.one());
        }
        let mut h = self.clone();
        // reduce to upper Hessenberg by similarity transforms
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = (c + 1..n).find(|&r| !h[(r, c)].is_zero()) else {
                continue;
            };
            if pr != c + 1 {
                h.swap_rows(c + 1, pr);
                h.swap_cols(c + 1, pr);
            }
            let inv = f.inv(h[(c + 1, c)]);
            for r in c + 2..n {
                let factor = f.mul(h[(r, c)], inv);
                if factor.is_zero() {
                    continue;
                }
                // row_r -= factor * row_{c+1};  col_{c+1} += factor * col_r
                for j in 0..n {
                    let t = f.mul(h[(c + 1, j)], factor);
                    h[(r, j)] = f.sub(h[(r, j)], t);
                }
                for i in 0..n {
                    let t = f.mul(h[(i, r)], factor);
                    h[(i, c + 1)] = f.add(h[(i, c + 1)], t);
                }
            }
        }
        // charpoly of Hessenberg matrix by the leading-minor recurrence
        let mut ps: Vec<FfPoly> = vec![FfPoly::constant(f, f.one())];
        let x = FfPoly::x(f);
        for m in 1..=n {
            // p_m(x) = (x - h[m-1][m-1]) p_{m-1}(x)
            //          - sum_{i=1}^{m-1} h[m-1-i][m-1] * (prod subdiag) * p_{m-1-i}(x)
            let xm = x.sub(f, &FfPoly::constant(f, h[(m - 1, m - 1)]));
            let mut p = xm.mul(f, &ps[m - 1]);
            let mut beta = f.one();
            for i in 1..m {
                beta = f.mul(beta, h[(m - i, m - i - 1)]);
                if beta.is_zero() {
                    break;
                }
                let coef = f.mul(h[(m - 1 - i, m - 1)], beta);
                if coef.is_zero() {
                    continue;
                }
                let t = ps[m - 1 - i].scale(f, coef);
                p = p.sub(f, &t);
            }
            ps.push(p);
        }
        ps.pop().unwrap()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Evaluates a polynomial at this matrix.
    pub fn poly_eval(&self, f: &Ff, p: &FfPoly) -> Mat {
        let n = self.rows;
        let mut acc = Mat::zero(f, n, n);
        for &c in p.c.iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                acc[(i, i)] = f.add(acc[(i, i)], c);
            }
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = FfElt;
    fn index(&self, (i, j): (usize, usize)) -> &FfElt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FfElt {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)
    }
}

/// Spans the smallest subspace containing `seed` and stable under the action
/// of `gens` (acting on row vectors from the right).  Returns an
/// echelonized basis.
pub fn spin(f: &FfRef, seed: &[FfElt], gens: &[Mat]) -> Mat {
    let n = seed.len();
    let mut basis: Vec<Vec<FfElt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut queue: Vec<Vec<FfElt>> = vec![seed.to_vec()];
    while let Some(mut v) = queue.pop() {
        // reduce against current basis
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let c = v[p];
                for j in 0..n {
                    let t = f.mul(b[j], c);
                    v[j] = f.sub(v[j], t);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // images under generators enter the queue
        for g in gens {
            let mut w = vec![f.zero(); n];
            for (i, &vi) in v.iter().enumerate() {
                if vi.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(vi, g[(i, j)]);
                    w[j] = f.add(w[j], t);
                }
            }
            queue.push(w);
        }
        basis.push(v);
        pivots.push(p);
        if basis.len() == n {
            break;
        }
    }
    // echelonize fully for a canonical basis
    if basis.is_empty() {
        return Mat::zero(f, 0, n);
    }
    let mut m = Mat::from_rows(basis);
    m.rref(f);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Ff;

    #[test]
    fn inverse_and_kernel() {
        let f = Ff::new(5, 1).unwrap();
        let m = Mat::from_rows(vec![
            vec![f.from_u64(1), f.from_u64(2)],
            vec![f.from_u64(3), f.from_u64(4)],
        ]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Mat::identity(&f, 2));
        let sing = Mat::from_rows(vec![
            vec![f.from_u64(1), f.from_u64(2)],
            vec![f.from_u64(2), f.from_u64(4)],
        ]);
        assert!(sing.inverse(&f).is_none());
        let k = sing.left_kernel(&f);
        assert_eq!(k.rows, 1);
        let prod = k.mul(&f, &sing);
        assert!(prod.data.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn charpoly_companion() {
        let f = Ff::new(7, 1).unwrap();
        // companion matrix of x^3 + 2x + 5
        let m = Mat::from_rows(vec![
            vec![f.zero(), f.one(), f.zero()],
            vec![f.zero(), f.zero(), f.one()],
            vec![f.neg(f.from_u64(5)), f.neg(f.from_u64(2)), f.zero()],
        ]);
        let cp = m.charpoly(&f);
        assert_eq!(cp.c.len(), 4);
        assert_eq!(cp.c[0], f.from_u64(5));
        assert_eq!(cp.c[1], f.from_u64(2));
        assert_eq!(cp.c[2], f.zero());
        assert_eq!(cp.c[3], f.one());
    }

    #[test]
    fn charpoly_diagonal() {
        let f = Ff::new(3, 2).unwrap();
        let x = f.x();
        let mut m = Mat::zero(&f, 2, 2);
        m[(0, 0)] = x;
        m[(1, 1)] = f.inv(x);
        let cp = m.charpoly(&f);
        assert_eq!(cp.root_multiplicity(&f, x), 1);
        assert_eq!(cp.root_multiplicity(&f, f.inv(x)), 1);
    }
}
