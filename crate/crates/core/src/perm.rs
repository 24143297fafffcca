//! Permutations of {0..degree-1} stored as image arrays.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation given by its image array: `i` maps to `images[i]`.
///
/// Products compose left to right: `(a * b)` applies `a` first, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from an image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(Error::MalformedPermutation(format!(
                    "images {:?} are not a bijection on 0..{}",
                    images, n
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// self followed by other.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// Conjugate `h^-1 * self * h`.
    pub fn conj(&self, h: &Perm) -> Perm {
        let mut out = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            out[h.images[i] as usize] = h.images[self.images[i] as usize];
        }
        Perm {
            images: out.into_boxed_slice(),
        }
    }

    /// Commutator `self^-1 * other^-1 * self * other`.
    pub fn comm(&self, other: &Perm) -> Perm {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start as u32;
            loop {
                seen[p as usize] = true;
                len += 1;
                p = self.images[p as usize];
                if p as usize == start {
                    break;
                }
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() as u32 {
            if seen[start as usize] || self.images[start as usize] == start {
                seen[start as usize] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cyc.push(p);
                p = self.images[p as usize];
            }
            out.push(cyc);
        }
        out
    }

    /// Parses 1-based disjoint-or-not cycle notation like "(1,2,3)(4,5)"; "()" is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
        let s = s.trim();
        let mut perm = Perm::identity(degree);
        if s.is_empty() || s == "()" {
            return Ok(perm);
        }
        let bad = |msg: &str| Error::MalformedPermutation(format!("{msg}: {s:?}"));
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| bad("expected '('"))?;
            if rest[..open].trim() != "" {
                return Err(bad("unexpected text between cycles"));
            }
            let close = rest.find(')').ok_or_else(|| bad("expected ')'"))?;
            let body = &rest[open + 1..close];
            rest = &rest[close + 1..];
            let body = body.trim();
            if body.is_empty() {
                continue;
            }
            let pts: Vec<u32> = body
                .split(|c| c == ',' || c == ' ')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<u32>().map_err(|_| bad("bad point")))
                .collect::<Result<_>>()?;
            let mut cycle_map = Perm::identity(degree);
            let imgs = cycle_map.images.as_mut();
            for w in 0..pts.len() {
                let from = pts[w];
                let to = pts[(w + 1) % pts.len()];
                if from == 0 || from as usize > degree || to == 0 {
                    return Err(bad("point out of range (1-based)"));
                }
                imgs[(from - 1) as usize] = to - 1;
            }
            // non-disjoint input would silently drop images; re-validate
            let cycle_map = Perm::from_images(imgs.to_vec())?;
            perm = perm.then(&cycle_map);
        }
        Ok(perm)
    }

    /// 1-based cycle string, "()" for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cyc in cycles {
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|p| (p + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push(')');
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles("(1,2,3)(4,5)", 6).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3, 5]);
        assert_eq!(p.cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(p.order(), 6);
        assert!(Perm::parse_cycles("(1,7)", 3).is_err());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn group_laws() {
        let a = Perm::parse_cycles("(1,2)", 4).unwrap();
        let b = Perm::parse_cycles("(1,2,3,4)", 4).unwrap();
        assert_eq!(a.then(&a.inverse()), Perm::identity(4));
        assert_eq!(a.then(&b).then(&b.inverse()), a);
        // conjugation convention: x^h = h^-1 x h
        assert_eq!(b.conj(&a), a.inverse().then(&b).then(&a));
    }
}
