//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Values are stored at a conductor n as integer coefficient vectors over the
//! power basis 1, ζ_n, ..., ζ_n^(φ(n)-1) modulo the n-th cyclotomic
//! polynomial, together with a common positive denominator.  This normal
//! form is unique for a fixed conductor; equality across conductors lifts
//! both sides to the least common multiple.  Conductor reduction is lazy.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

fn phi(n: u64) -> u64 {
    crate::util::factor_u64(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by the cyclotomic polynomials of the proper divisors
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d);
            num = poly_div_exact(&num, &q);
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

/// Exact division of integer polynomials (the divisor is monic).
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let da = rem.len() - 1;
    let mut quo = vec![BigInt::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        quo[i] = c.clone();
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[i + j] -= t;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quo
}

/// Remainder of an integer polynomial modulo the monic divisor, in place.
fn poly_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    while a.len() > db {
        let c = a.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let i = a.len() - db;
        for j in 0..db {
            let t = &b[j] * &c;
            a[i + j] -= t;
        }
    }
    a.resize(db, BigInt::zero());
    a
}

/// An exact cyclotomic number.
#[derive(Clone, Serialize, Deserialize)]
pub struct Cyclotomic {
    n: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            n: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Cyclotomic::from_integer(1.into())
    }

    pub fn from_integer(k: BigInt) -> Self {
        Cyclotomic {
            n: 1,
            num: vec![k],
            den: BigInt::one(),
        }
    }

    pub fn from_i64(k: i64) -> Self {
        Cyclotomic::from_integer(k.into())
    }

    pub fn from_ratio(num: BigInt, den: BigInt) -> Self {
        let mut c = Cyclotomic {
            n: 1,
            num: vec![num],
            den,
        };
        c.normalize();
        c
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut vec = vec![BigInt::zero(); (n as usize).max(k + 1)];
        vec[k] = BigInt::one();
        let num = poly_rem(vec, &cyclotomic_poly(n));
        let mut c = Cyclotomic {
            n,
            num,
            den: BigInt::one(),
        };
        c.normalize();
        c
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Numerator coefficients over the power basis at the stored conductor.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() && !g.is_zero() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// Rewrites at conductor m (n must divide m).
    pub fn lifted(&self, m: u64) -> Cyclotomic {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "can only lift to a multiple conductor");
        let s = (m / self.n) as usize;
        let mut vec = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            vec[i * s] = c.clone();
        }
        let num = poly_rem(vec, &cyclotomic_poly(m));
        let mut out = Cyclotomic {
            n: m,
            num,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    fn matched(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = num_integer::lcm(self.n, other.n);
        (self.lifted(m), other.lifted(m))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.matched(other);
        // a/da + b/db = (a*db + b*da) / (da*db)
        let da = a.den.clone();
        for (x, y) in a.num.iter_mut().zip(&b.num) {
            *x = &*x * &b.den + y * &da;
        }
        a.den = &a.den * &b.den;
        a.normalize();
        a
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        let mut out = self.clone();
        for c in &mut out.num {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.matched(other);
        let mut prod = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        let num = poly_rem(prod, &cyclotomic_poly(a.n));
        let mut out = Cyclotomic {
            n: a.n,
            num,
            den: &a.den * &b.den,
        };
        out.normalize();
        out
    }

    pub fn scale(&self, k: &BigRational) -> Cyclotomic {
        let mut out = self.clone();
        for c in &mut out.num {
            *c = &*c * k.numer();
        }
        out.den = &out.den * k.denom();
        out.normalize();
        out
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm in Q[x]
    /// modulo the cyclotomic polynomial.
    pub fn inverse(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::Propagated("division by zero cyclotomic".into()));
        }
        let phi_n = cyclotomic_poly(self.n);
        let modulus: Vec<BigRational> = phi_n
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        let inv = rat_poly_modinv(&a, &modulus)
            .ok_or_else(|| Error::Propagated("cyclotomic inverse does not exist".into()))?;
        // common denominator
        let mut den = BigInt::one();
        for c in &inv {
            den = den.lcm(c.denom());
        }
        let num: Vec<BigInt> = inv.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut out = Cyclotomic {
            n: self.n,
            num,
            den,
        };
        out.num.resize(phi_n.len() - 1, BigInt::zero());
        out.normalize();
        Ok(out)
    }

    pub fn div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        let (a, b) = self.matched(other);
        Ok(a.mul(&b.inverse()?))
    }

    /// Galois action ζ_n -> ζ_n^a for a coprime to n.
    pub fn galois(&self, a: u64) -> Cyclotomic {
        let a = a % self.n;
        assert!(num_integer::gcd(a, self.n) == 1, "galois exponent not coprime");
        if self.n == 1 || a == 1 {
            return self.clone();
        }
        let mut vec = vec![BigInt::zero(); self.n as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let e = (i as u64 * a % self.n) as usize;
                vec[e] += c;
            }
        }
        let num = poly_rem(vec, &cyclotomic_poly(self.n));
        let mut out = Cyclotomic {
            n: self.n,
            num,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyclotomic {
        if self.n == 1 {
            return self.clone();
        }
        self.galois(self.n - 1)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_rational() && self.den.is_one() {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    /// Algebraic integers of Q(ζ_n) are exactly Z[ζ_n]: integrality is
    /// denominator 1 in normal form.
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Rewrites at the smallest possible conductor.
    pub fn canonical(&self) -> Cyclotomic {
        let mut cur = self.clone();
        'outer: loop {
            if cur.n == 1 {
                return cur;
            }
            for (p, _) in crate::util::factor_u64(cur.n) {
                let m = cur.n / p;
                if let Some(desc) = cur.descend_to(m) {
                    cur = desc;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Attempts to rewrite over Q(ζ_m) for m dividing n.
    fn descend_to(&self, m: u64) -> Option<Cyclotomic> {
        let s = self.n / m;
        let phi_m = phi(m) as usize;
        let phi_n = self.num.len();
        // basis images of ζ_m^j = ζ_n^(j*s) reduced mod Φ_n, as columns
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(phi_m);
        for j in 0..phi_m {
            let mut vec = vec![BigInt::zero(); j * s as usize + 1];
            vec[j * s as usize] = BigInt::one();
            cols.push(poly_rem(vec, &cyclotomic_poly(self.n)));
        }
        // solve cols * x = num over Q
        let mut mat: Vec<Vec<BigRational>> = (0..phi_n)
            .map(|r| {
                let mut row: Vec<BigRational> = cols
                    .iter()
                    .map(|c| BigRational::from_integer(c[r].clone()))
                    .collect();
                row.push(BigRational::new(self.num[r].clone(), self.den.clone()));
                row
            })
            .collect();
        let cols_n = phi_m + 1;
        let mut pivot_rows = Vec::new();
        let mut rank = 0;
        for col in 0..phi_m {
            let pr = (rank..phi_n).find(|&r| !mat[r][col].is_zero())?;
            mat.swap(rank, pr);
            let inv = mat[rank][col].clone();
            for c in col..cols_n {
                mat[rank][c] = &mat[rank][c] / &inv;
            }
            for r in 0..phi_n {
                if r != rank && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for c in col..cols_n {
                        let t = &mat[rank][c] * &f;
                        mat[r][c] -= t;
                    }
                }
            }
            pivot_rows.push(rank);
            rank += 1;
        }
        // consistency
        for r in rank..phi_n {
            if !mat[r][phi_m].is_zero() {
                return None;
            }
        }
        let mut den = BigInt::one();
        for &r in pivot_rows.iter() {
            den = den.lcm(mat[r][phi_m].denom());
        }
        let mut num = vec![BigInt::zero(); phi_m.max(1)];
        for (j, &r) in pivot_rows.iter().enumerate() {
            num[j] = mat[r][phi_m].numer() * (&den / mat[r][phi_m].denom());
        }
        let mut out = Cyclotomic { n: m, num, den };
        out.normalize();
        Some(out)
    }

    /// Stable key for hashing and deterministic ordering.
    pub fn key(&self) -> CycKey {
        let c = self.canonical();
        CycKey {
            n: c.n,
            num: c.num,
            den: c.den,
        }
    }
}

/// Canonical (minimal-conductor) form of a cyclotomic, usable as a map key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycKey {
    pub n: u64,
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.matched(other);
        a.num == b.num && a.den == b.den
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.is_rational() {
            let r = c.as_rational().unwrap();
            return write!(f, "{r}");
        }
        let mut terms = Vec::new();
        for (i, co) in c.num.iter().enumerate() {
            if co.is_zero() {
                continue;
            }
            if i == 0 {
                terms.push(format!("{co}"));
            } else if co.is_one() {
                terms.push(format!("z{}^{}", c.n, i));
            } else {
                terms.push(format!("{co}*z{}^{}", c.n, i));
            }
        }
        let body = terms.join("+").replace("+-", "-");
        if c.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", c.den)
        }
    }
}

/// Inverse of a modulo m over Q[x]; None when not coprime.
fn rat_poly_modinv(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let trim = |v: &mut Vec<BigRational>| {
        while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    };
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut t0: Vec<BigRational> = vec![BigRational::zero()];
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = rat_poly_divrem(&r0, &r1);
        let t = rat_poly_sub(&t0, &rat_poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        trim(&mut r1);
        t0 = t1;
        t1 = t;
    }
    if r0.len() != 1 || r0[0].is_zero() {
        return None;
    }
    let c = r0[0].clone();
    Some(t0.iter().map(|x| x / &c).collect())
}

fn rat_poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quo.len()).rev() {
        let c = &rem[i + db] / &b[db];
        if c.is_zero() {
            continue;
        }
        quo[i] = c.clone();
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[i + j] -= t;
        }
    }
    while rem.len() > 1 && rem.last().unwrap().is_zero() {
        rem.pop();
    }
    (quo, rem)
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), BigRational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polys() {
        let p6 = cyclotomic_poly(6);
        assert_eq!(p6, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
        let p12 = cyclotomic_poly(12);
        assert_eq!(p12.len(), 5); // degree 4
    }

    #[test]
    fn roots_of_unity_sum() {
        // 1 + ζ_3 + ζ_3^2 = 0
        let s = zeta(3, 0).add(&zeta(3, 1)).add(&zeta(3, 2));
        assert!(s.is_zero());
        // ζ_6 = -ζ_3^2
        assert_eq!(zeta(6, 1), zeta(3, 2).neg());
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        let a = zeta(4, 1); // i
        let b = zeta(3, 1);
        let p = a.mul(&b);
        assert_eq!(p, zeta(12, 7));
        assert_eq!(p.mul(&p.conj()), Cyclotomic::one());
        assert_eq!(a.mul(&a), Cyclotomic::from_i64(-1));
    }

    #[test]
    fn inverse_and_division() {
        let a = zeta(5, 1).add(&Cyclotomic::from_i64(2));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Cyclotomic::one());
    }

    #[test]
    fn canonical_descends() {
        // ζ_6^2 has conductor 3
        let x = zeta(6, 2);
        assert_eq!(x.canonical().conductor(), 3);
        // ζ_4 + ζ_4^3 = 0
        assert!(zeta(4, 1).add(&zeta(4, 3)).is_zero());
        // rational disguised at conductor 8
        let r = zeta(8, 1).mul(&zeta(8, 7)); // = 1
        assert_eq!(r.canonical().conductor(), 1);
        assert_eq!(r.as_integer().unwrap(), BigInt::one());
    }

    #[test]
    fn golden_ratio_value() {
        // ζ_5 + ζ_5^4 satisfies x^2 + x - 1 = 0
        let x = zeta(5, 1).add(&zeta(5, 4));
        let check = x.mul(&x).add(&x).sub(&Cyclotomic::one());
        assert!(check.is_zero());
        assert!(x.is_algebraic_integer());
    }
}
