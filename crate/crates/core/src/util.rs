//! Small number-theoretic helpers and deterministic RNG construction.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Deterministic RNG derived from a global seed and a local tag.
pub fn rng_for(seed: u64, tag: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let d = (n - 1) >> (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut r = d;
        while r != n - 1 {
            x = mul_mod(x, x, n);
            r <<= 1;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of a u64, as sorted (prime, exponent) pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut stack = vec![];
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let mut d = m;
        // trial division first; rho for the hard leftovers
        let mut i = 37u64;
        let mut found = false;
        while i * i <= d && i < 1 << 20 {
            if d % i == 0 {
                found = true;
                break;
            }
            i += 2;
        }
        d = if found { i } else { pollard_rho(m) };
        stack.push(d);
        stack.push(m / d);
    }
    out.sort();
    out
}

/// p-part of n: the largest power of p dividing n.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        out *= p;
        n /= p;
    }
    out
}

/// p-adic valuation of n.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        v += 1;
        n /= p;
    }
    v
}

/// Smallest prime l with l ≡ 1 (mod m) and l > bound.
pub fn prime_one_mod(m: u64, bound: u64) -> u64 {
    let mut l = (bound / m) * m + 1;
    while l <= bound || !is_prime(l) {
        l += m;
    }
    l
}

/// Smallest primitive root modulo the prime l.
pub fn primitive_root(l: u64) -> u64 {
    let fac = factor_u64(l - 1);
    'cand: for w in 2.. {
        for &(p, _) in &fac {
            if pow_mod(w, (l - 1) / p, l) == 1 {
                continue 'cand;
            }
        }
        return w;
    }
    unreachable!()
}

/// Square root modulo an odd prime (Tonelli-Shanks); None if n is a non-residue.
pub fn sqrt_mod(n: u64, l: u64) -> Option<u64> {
    let n = n % l;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (l - 1) / 2, l) != 1 {
        return None;
    }
    if l % 4 == 3 {
        return Some(pow_mod(n, (l + 1) / 4, l));
    }
    let s = (l - 1).trailing_zeros();
    let q = (l - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (l - 1) / 2, l) == 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, l);
    let mut t = pow_mod(n, q, l);
    let mut r = pow_mod(n, (q + 1) / 2, l);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, l);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), l);
        m = i;
        c = mul_mod(b, b, l);
        t = mul_mod(t, c, l);
        r = mul_mod(r, b, l);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factoring() {
        assert_eq!(factor_u64(29120), vec![(2, 6), (5, 1), (7, 1), (13, 1)]);
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(7u64.pow(12) - 1).iter().map(|(p, e)| p.pow(*e)).product::<u64>(), 7u64.pow(12) - 1);
    }

    #[test]
    fn dixon_prime_choices() {
        assert_eq!(prime_one_mod(12, 9), 13);
        assert_eq!(prime_one_mod(30, 15), 31);
        assert!(is_prime(prime_one_mod(1820, 341)));
    }

    #[test]
    fn sqrt_mod_works() {
        for l in [13u64, 14561, 4093] {
            for x in 1..40 {
                let s = sqrt_mod(mul_mod(x, x, l), l).unwrap();
                assert!(s == x % l || s == l - x % l);
            }
        }
    }
}
