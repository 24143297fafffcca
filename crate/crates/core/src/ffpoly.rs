//! Dense univariate polynomials over GF(p^k), with factorization into
//! irreducibles (squarefree / distinct-degree / Cantor-Zassenhaus).

use crate::ff::{Ff, FfElt, FfRef};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Coefficients constant-term first; no trailing zeros except the zero
/// polynomial, which is the empty vector.
#[derive(Clone, PartialEq, Eq)]
pub struct FfPoly {
    pub c: Vec<FfElt>,
}

impl FfPoly {
    pub fn zero() -> Self {
        FfPoly { c: Vec::new() }
    }

    pub fn constant(f: &Ff, a: FfElt) -> Self {
        if a.is_zero() {
            Self::zero()
        } else {
            let _ = f;
            FfPoly { c: vec![a] }
        }
    }

    pub fn x(f: &Ff) -> Self {
        FfPoly {
            c: vec![f.zero(), f.one()],
        }
    }

    pub fn from_coeffs(mut c: Vec<FfElt>) -> Self {
        while c.last().map(|e| e.is_zero()).unwrap_or(false) {
            c.pop();
        }
        FfPoly { c }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self, f: &Ff) -> bool {
        self.c.len() == 1 && self.c[0] == f.one()
    }

    pub fn lead(&self) -> FfElt {
        *self.c.last().expect("nonzero polynomial")
    }

    pub fn add(&self, f: &Ff, other: &FfPoly) -> FfPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(f.zero());
            let b = other.c.get(i).copied().unwrap_or(f.zero());
            out.push(f.add(a, b));
        }
        FfPoly::from_coeffs(out)
    }

    pub fn sub(&self, f: &Ff, other: &FfPoly) -> FfPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(f.zero());
            let b = other.c.get(i).copied().unwrap_or(f.zero());
            out.push(f.sub(a, b));
        }
        FfPoly::from_coeffs(out)
    }

    pub fn mul(&self, f: &Ff, other: &FfPoly) -> FfPoly {
        if self.is_zero() || other.is_zero() {
            return FfPoly::zero();
        }
        let mut out = vec![f.zero(); self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FfPoly::from_coeffs(out)
    }

    pub fn scale(&self, f: &Ff, a: FfElt) -> FfPoly {
        FfPoly::from_coeffs(self.c.iter().map(|&c| f.mul(c, a)).collect())
    }

    pub fn monic(&self, f: &Ff) -> FfPoly {
        if self.is_zero() {
            return FfPoly::zero();
        }
        self.scale(f, f.inv(self.lead()))
    }

    pub fn divrem(&self, f: &Ff, d: &FfPoly) -> (FfPoly, FfPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.degree() < d.degree() {
            return (FfPoly::zero(), self.clone());
        }
        let dlead_inv = f.inv(d.lead());
        let mut rem = self.c.clone();
        let dd = d.c.len() - 1;
        let mut quo = vec![f.zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = f.mul(rem[i + dd], dlead_inv);
            if c.is_zero() {
                continue;
            }
            quo[i] = c;
            for j in 0..=dd {
                let t = f.mul(d.c[j], c);
                rem[i + j] = f.sub(rem[i + j], t);
            }
        }
        (FfPoly::from_coeffs(quo), FfPoly::from_coeffs(rem))
    }

    pub fn rem(&self, f: &Ff, d: &FfPoly) -> FfPoly {
        self.divrem(f, d).1
    }

    pub fn gcd(&self, f: &Ff, other: &FfPoly) -> FfPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(f)
        }
    }

    pub fn derivative(&self, f: &Ff) -> FfPoly {
        let mut out = Vec::new();
        for i in 1..self.c.len() {
            let mut k = f.zero();
            for _ in 0..i % f.p() as usize {
                k = f.add(k, f.one());
            }
            out.push(f.mul(self.c[i], k));
        }
        FfPoly::from_coeffs(out)
    }

    /// self^e modulo m.
    pub fn powmod(&self, f: &Ff, mut e: u64, m: &FfPoly) -> FfPoly {
        let mut base = self.rem(f, m);
        let mut acc = FfPoly::constant(f, f.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, f: &Ff, x: FfElt) -> FfElt {
        let mut acc = f.zero();
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Multiplicity of `root` as a zero of self.
    pub fn root_multiplicity(&self, f: &Ff, root: FfElt) -> usize {
        let lin = FfPoly::from_coeffs(vec![f.neg(root), f.one()]);
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(f, &lin);
            if !r.is_zero() {
                return m;
            }
            m += 1;
            cur = q;
            if cur.degree().is_none() {
                return m;
            }
        }
    }
}

/// Monic irreducible factors with multiplicities, deterministically sorted
/// by (degree, coefficient tuple).
pub fn factor(f: &FfRef, poly: &FfPoly, rng: &mut ChaCha8Rng) -> Vec<(FfPoly, usize)> {
    assert!(!poly.is_zero());
    let mut out: Vec<(FfPoly, usize)> = Vec::new();
    let mut stack = vec![(poly.monic(f), 1usize)];
    while let Some((g, mult)) = stack.pop() {
        if g.degree() == Some(0) {
            continue;
        }
        // squarefree split
        let d = g.derivative(f);
        if d.is_zero() {
            // g = h(x^p); take p-th root
            let p = f.p() as usize;
            let mut hc = Vec::new();
            for i in (0..g.c.len()).step_by(p) {
                // coefficient p-th root: c^(q/p)
                hc.push(f.pow(g.c[i], f.order() / f.p()));
            }
            stack.push((FfPoly::from_coeffs(hc), mult * p));
            continue;
        }
        let s = g.gcd(f, &d);
        if s.degree() != Some(0) {
            let (q, r) = g.divrem(f, &s);
            debug_assert!(r.is_zero());
            stack.push((q, mult));
            stack.push((s, mult));
            continue;
        }
        // distinct-degree
        let n = g.degree().unwrap();
        let mut h = FfPoly::x(f);
        let mut rest = g.clone();
        let mut d_deg = 1;
        while 2 * d_deg <= rest.degree().unwrap_or(0) {
            h = h.powmod(f, f.order(), &rest);
            let diff = h.sub(f, &FfPoly::x(f));
            let gd = rest.gcd(f, &diff);
            if gd.degree().map(|d| d > 0).unwrap_or(false) {
                for irr in equal_degree(f, &gd, d_deg, rng) {
                    push_factor(&mut out, irr, mult);
                }
                rest = rest.divrem(f, &gd).0;
                h = h.rem(f, &rest);
            }
            d_deg += 1;
        }
        if rest.degree().map(|d| d > 0).unwrap_or(false) {
            push_factor(&mut out, rest.monic(f), mult);
        }
        let _ = n;
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    out
}

fn push_factor(out: &mut Vec<(FfPoly, usize)>, p: FfPoly, mult: usize) {
    if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
        e.1 += mult;
    } else {
        out.push((p, mult));
    }
}

fn cmp_poly(a: &FfPoly, b: &FfPoly) -> std::cmp::Ordering {
    a.c.len().cmp(&b.c.len()).then_with(|| {
        for (x, y) in a.c.iter().rev().zip(b.c.iter().rev()) {
            let o = x.coeffs(crate::ff::MAX_GF_DEGREE).cmp(y.coeffs(crate::ff::MAX_GF_DEGREE));
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Cantor-Zassenhaus split of a product of degree-d irreducibles.
fn equal_degree(f: &FfRef, poly: &FfPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FfPoly> {
    let n = poly.degree().unwrap();
    if n == d {
        return vec![poly.monic(f)];
    }
    loop {
        // random polynomial of degree < n
        let mut rc = Vec::with_capacity(n);
        for _ in 0..n {
            let mut coeffs = [0u64; crate::ff::MAX_GF_DEGREE];
            for c in coeffs.iter_mut().take(f.degree()) {
                *c = rng.gen_range(0..f.p());
            }
            rc.push(f.from_coeffs(&coeffs[..f.degree()]));
        }
        let r = FfPoly::from_coeffs(rc);
        if r.degree().is_none() {
            continue;
        }
        let g = if f.p() == 2 {
            // trace map over GF(2^(k d))
            let mut t = r.rem(f, poly);
            let mut sq = r.rem(f, poly);
            for _ in 1..(f.degree() * d) {
                sq = sq.mul(f, &sq).rem(f, poly);
                t = t.add(f, &sq);
            }
            poly.gcd(f, &t)
        } else {
            let e = (pow_u128(f.order(), d) - 1) / 2;
            let t = r.powmod_u128(f, e, poly);
            let t1 = t.sub(f, &FfPoly::constant(f, f.one()));
            poly.gcd(f, &t1)
        };
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let mut out = equal_degree(f, &g, d, rng);
                out.extend(equal_degree(f, &poly.divrem(f, &g).0, d, rng));
                return out;
            }
        }
    }
}

fn pow_u128(p: u64, k: usize) -> u128 {
    (p as u128).pow(k as u32)
}

impl FfPoly {
    fn powmod_u128(&self, f: &Ff, mut e: u128, m: &FfPoly) -> FfPoly {
        let mut base = self.rem(f, m);
        let mut acc = FfPoly::constant(f, f.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::rng_for;

    #[test]
    fn factor_squares_and_products() {
        let f = Ff::new(3, 1).unwrap();
        let mut rng = rng_for(1, "ffpoly");
        // (x^2+1)(x+1)^2 over GF(3); x^2+1 is irreducible mod 3
        let a = FfPoly::from_coeffs(vec![f.one(), f.zero(), f.one()]);
        let b = FfPoly::from_coeffs(vec![f.one(), f.one()]);
        let poly = a.mul(&f, &b).mul(&f, &b);
        let fac = factor(&f, &poly, &mut rng);
        assert_eq!(fac.len(), 2);
        let total: usize = fac.iter().map(|(p, m)| p.degree().unwrap() * m).sum();
        assert_eq!(total, 4);
        assert!(fac.iter().any(|(p, m)| *m == 2 && p.degree() == Some(1)));
    }

    #[test]
    fn factor_char2_extension() {
        let f = Ff::new(2, 4).unwrap();
        let mut rng = rng_for(1, "ffpoly2");
        // x^15 - 1 splits into linear factors over GF(16)
        let mut c = vec![f.zero(); 16];
        c[0] = f.neg(f.one());
        c[15] = f.one();
        let poly = FfPoly::from_coeffs(c);
        let fac = factor(&f, &poly, &mut rng);
        assert_eq!(fac.len(), 15);
        assert!(fac.iter().all(|(p, m)| p.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn root_multiplicity() {
        let f = Ff::new(5, 1).unwrap();
        let two = f.from_u64(2);
        let lin = FfPoly::from_coeffs(vec![f.neg(two), f.one()]);
        let sq = lin.mul(&f, &lin);
        assert_eq!(sq.root_multiplicity(&f, two), 2);
        assert_eq!(sq.root_multiplicity(&f, f.one()), 0);
    }
}
