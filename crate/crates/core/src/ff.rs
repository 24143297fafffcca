//! Finite fields GF(p^k) as polynomial residues modulo a primitive
//! polynomial.
//!
//! The defining polynomial is the first primitive monic polynomial in the
//! lexicographic order of its coefficient tuple (c_{k-1}, ..., c_0), so the
//! construction carries no external tables and is reproducible.  The residue
//! of x is then always a generator of the multiplicative group.

use crate::error::{Error, Result};
use crate::util::{factor_u64, pow_mod};
use std::fmt;
use std::sync::Arc;

pub const MAX_GF_DEGREE: usize = 16;

/// An element of GF(p^k): coefficients of 1, x, ..., x^(k-1).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FfElt {
    c: [u32; MAX_GF_DEGREE],
}

impl FfElt {
    fn zero() -> Self {
        FfElt {
            c: [0; MAX_GF_DEGREE],
        }
    }

    pub fn coeffs(&self, k: usize) -> &[u32] {
        &self.c[..k]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for FfElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.c.iter().rposition(|&x| x != 0).map_or(0, |i| i);
        write!(f, "[{}]", self.c[..=last].iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// A finite field context; elements are passed by value to its methods.
pub struct Ff {
    p: u64,
    k: usize,
    /// Monic modulus, constant term first, length k+1.
    modulus: Vec<u64>,
}

pub type FfRef = Arc<Ff>;

impl fmt::Debug for Ff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

impl Ff {
    pub fn new(p: u64, k: usize) -> Result<FfRef> {
        if k == 0 || k > MAX_GF_DEGREE {
            return Err(Error::TooLarge(format!("field degree {k} out of range")));
        }
        if p < 2 || !crate::util::is_prime(p) {
            return Err(Error::TooLarge(format!("field characteristic {p} is not prime")));
        }
        let size = (p as u128).checked_pow(k as u32);
        if size.is_none() || size.unwrap() > 1 << 52 {
            return Err(Error::TooLarge(format!("field GF({p}^{k}) too large")));
        }
        let order_factors = factor_u64((pow128(p, k) - 1) as u64);
        // scan monic candidates by (c_{k-1}, ..., c_0) ascending
        let mut coeffs = vec![0u64; k];
        loop {
            let mut modulus = coeffs.clone();
            modulus.push(1);
            if modulus[0] != 0 {
                let f = Ff {
                    p,
                    k,
                    modulus: modulus.clone(),
                };
                if f.x_is_primitive(&order_factors) {
                    return Ok(Arc::new(f));
                }
            }
            // increment the tuple, least-significant side = c_0? The order is
            // lexicographic on (c_{k-1},...,c_0), so c_0 varies fastest.
            let mut i = 0;
            loop {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
                assert!(i < k, "no primitive polynomial found");
            }
        }
    }

    fn x_is_primitive(&self, order_factors: &[(u64, u32)]) -> bool {
        let x = self.x();
        let n = self.order() - 1;
        if self.pow(x, n) != self.one() {
            return false;
        }
        for &(q, _) in order_factors {
            if self.pow(x, n / q) == self.one() {
                return false;
            }
        }
        true
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        pow128(self.p, self.k) as u64
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FfElt {
        FfElt::zero()
    }

    pub fn one(&self) -> FfElt {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FfElt {
        let mut e = FfElt::zero();
        e.c[0] = (v % self.p) as u32;
        e
    }

    pub fn from_i64(&self, v: i64) -> FfElt {
        self.from_u64(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_coeffs(&self, cs: &[u64]) -> FfElt {
        assert!(cs.len() <= self.k);
        let mut e = FfElt::zero();
        for (i, &c) in cs.iter().enumerate() {
            e.c[i] = (c % self.p) as u32;
        }
        e
    }

    /// The residue of x, a primitive element.
    pub fn x(&self) -> FfElt {
        if self.k == 1 {
            // x ≡ -c_0
            self.from_u64(self.p - self.modulus[0] % self.p)
        } else {
            let mut e = FfElt::zero();
            e.c[1] = 1;
            e
        }
    }

    pub fn add(&self, a: FfElt, b: FfElt) -> FfElt {
        let mut out = FfElt::zero();
        for i in 0..self.k {
            out.c[i] = ((a.c[i] as u64 + b.c[i] as u64) % self.p) as u32;
        }
        out
    }

    pub fn neg(&self, a: FfElt) -> FfElt {
        let mut out = FfElt::zero();
        for i in 0..self.k {
            out.c[i] = ((self.p - a.c[i] as u64) % self.p) as u32;
        }
        out
    }

    pub fn sub(&self, a: FfElt, b: FfElt) -> FfElt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FfElt, b: FfElt) -> FfElt {
        let k = self.k;
        let p = self.p;
        let mut prod = [0u64; 2 * MAX_GF_DEGREE];
        for i in 0..k {
            if a.c[i] == 0 {
                continue;
            }
            let ai = a.c[i] as u64;
            for j in 0..k {
                if b.c[j] != 0 {
                    prod[i + j] = (prod[i + j] + ai * b.c[j] as u64) % p;
                }
            }
        }
        // reduce by the monic modulus
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let t = c * self.modulus[j] % p;
                prod[i - k + j] = (prod[i - k + j] + p - t) % p;
            }
        }
        let mut out = FfElt::zero();
        for i in 0..k {
            out.c[i] = prod[i] as u32;
        }
        out
    }

    pub fn pow(&self, mut b: FfElt, mut e: u64) -> FfElt {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FfElt) -> FfElt {
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, self.order() - 2)
    }

    pub fn div(&self, a: FfElt, b: FfElt) -> FfElt {
        self.mul(a, self.inv(b))
    }

    /// A fixed primitive m-th root of unity (m must divide p^k - 1):
    /// x^((p^k-1)/m).
    pub fn root_of_unity(&self, m: u64) -> Result<FfElt> {
        let n = self.order() - 1;
        if m == 0 || n % m != 0 {
            return Err(Error::TooLarge(format!(
                "no {m}-th roots of unity in GF({}^{})",
                self.p, self.k
            )));
        }
        Ok(self.pow(self.x(), n / m))
    }

    /// Multiplicative order of a nonzero element.
    pub fn elt_order(&self, a: FfElt) -> u64 {
        assert!(!a.is_zero());
        let mut n = self.order() - 1;
        for (q, e) in factor_u64(n) {
            for _ in 0..e {
                if self.pow(a, n / q) == self.one() {
                    n /= q;
                } else {
                    break;
                }
            }
        }
        n
    }

    /// Lifts an element of the prime subfield back to its least nonnegative
    /// residue; None if the element is not in the prime subfield.
    pub fn to_prime_field(&self, a: FfElt) -> Option<u64> {
        if a.c[1..self.k].iter().all(|&c| c == 0) {
            Some(a.c[0] as u64)
        } else {
            None
        }
    }

    /// Scalar as string, for reports: coefficient tuple, low degree first.
    pub fn render(&self, a: FfElt) -> String {
        a.coeffs(self.k)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn pow128(p: u64, k: usize) -> u128 {
    (p as u128).pow(k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4() {
        let f = Ff::new(2, 2).unwrap();
        // x^2 + x + 1 is the only primitive polynomial of degree 2 over GF(2)
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.x();
        assert_eq!(f.elt_order(x), 3);
        assert_eq!(f.pow(x, 3), f.one());
        assert_eq!(f.add(x, x), f.zero());
    }

    #[test]
    fn prime_field_convention() {
        let f = Ff::new(7, 1).unwrap();
        let x = f.x();
        assert_eq!(f.elt_order(x), 6);
        // field axioms on everything
        for a in 0..7 {
            let ea = f.from_u64(a);
            if a != 0 {
                assert_eq!(f.mul(ea, f.inv(ea)), f.one());
            }
        }
    }

    #[test]
    fn gf_3_4_roots() {
        let f = Ff::new(3, 4).unwrap();
        assert_eq!(f.order(), 81);
        let z = f.root_of_unity(16).unwrap();
        assert_eq!(f.elt_order(z), 16);
        let z5 = f.root_of_unity(5).unwrap();
        assert_eq!(f.elt_order(z5), 5);
        // consistency: z_80^16 == z_5
        let z80 = f.root_of_unity(80).unwrap();
        assert_eq!(f.pow(z80, 16), z5);
    }

    #[test]
    fn big_degree() {
        // the block field for Sz(8) at p = 5 is GF(5^12)
        let f = Ff::new(5, 12).unwrap();
        let z = f.root_of_unity(364).unwrap();
        assert_eq!(f.elt_order(z), 364);
        let a = f.from_coeffs(&[1, 2, 3, 4, 0, 1]);
        assert_eq!(f.mul(a, f.inv(a)), f.one());
    }
}
