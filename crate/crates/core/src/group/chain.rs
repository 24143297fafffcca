//! Randomized Schreier-Sims stabilizer chains with a deterministic
//! verification pass.
//!
//! The product of the transversal sizes along a (possibly incomplete) chain
//! is always at most the order of the generated group, with equality exactly
//! when the chain is complete.  A caller that knows the order in advance can
//! therefore certify the chain without the Schreier-generator sweep.

use crate::perm::Perm;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

struct Level {
    point: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    /// Schreier vector: `sv[p] = (gen, parent)` with `parent^gen = p`.
    sv: Vec<Option<(u32, u32)>>,
    in_orbit: Vec<bool>,
    /// Explicit transversal elements, cached only at small degree.
    cache: Option<Vec<Perm>>,
}

const CACHE_DEGREE_LIMIT: usize = 2048;

impl Level {
    fn new(degree: usize, point: u32) -> Self {
        Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            sv: vec![None; degree],
            in_orbit: vec![false; degree],
            cache: None,
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.sv = vec![None; degree];
        self.in_orbit = vec![false; degree];
        self.orbit.push(self.point);
        self.in_orbit[self.point as usize] = true;
        let mut head = 0;
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for (gi, g) in self.gens.iter().enumerate() {
                let c = g.apply(b);
                if !self.in_orbit[c as usize] {
                    self.in_orbit[c as usize] = true;
                    self.sv[c as usize] = Some((gi as u32, b));
                    self.orbit.push(c);
                }
            }
        }
        self.cache = None;
        if degree <= CACHE_DEGREE_LIMIT {
            let mut cache = vec![Perm::identity(degree); degree];
            for &p in &self.orbit {
                if p == self.point {
                    continue;
                }
                let (gi, parent) = self.sv[p as usize].unwrap();
                cache[p as usize] = cache[parent as usize].then(&self.gens[gi as usize]);
            }
            self.cache = Some(cache);
        }
    }

    /// Transversal element u with point^u = p; p must lie in the orbit.
    fn transversal(&self, degree: usize, p: u32) -> Perm {
        if let Some(cache) = &self.cache {
            return cache[p as usize].clone();
        }
        let mut word = Vec::new();
        let mut q = p;
        while q != self.point {
            let (gi, parent) = self.sv[q as usize].unwrap();
            word.push(gi);
            q = parent;
        }
        let mut u = Perm::identity(degree);
        for gi in word.into_iter().rev() {
            u = u.then(&self.gens[gi as usize]);
        }
        u
    }
}

pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Sifts p; returns the level reached and the residue.  The residue is
    /// the identity exactly when p lies in the chain's group.
    pub fn sift(&self, p: &Perm) -> (usize, Perm) {
        let mut h = p.clone();
        for (i, level) in self.levels.iter().enumerate() {
            let b = h.apply(level.point);
            if b == level.point {
                continue;
            }
            if !level.in_orbit[b as usize] {
                return (i, h);
            }
            let u = level.transversal(self.degree, b);
            h = h.then(&u.inverse());
        }
        (self.levels.len(), h)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        self.sift(p).1.is_identity()
    }

    /// Coset representative decomposition: p == u_k * ... * u_1 reading the
    /// returned list right to left, one factor per level.
    pub fn factor(&self, p: &Perm) -> Option<Vec<Perm>> {
        let mut h = p.clone();
        let mut us = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let b = h.apply(level.point);
            if !level.in_orbit[b as usize] {
                return None;
            }
            let u = level.transversal(self.degree, b);
            h = h.then(&u.inverse());
            us.push(u);
        }
        if h.is_identity() {
            Some(us)
        } else {
            None
        }
    }

    /// Base point for a new level handling `residue`: the moved point on the
    /// longest cycle, ties broken by smallest point.
    fn choose_base(residue: &Perm) -> u32 {
        let mut best = (0u64, u32::MAX);
        for cyc in residue.cycles() {
            let len = cyc.len() as u64;
            let min = *cyc.iter().min().unwrap();
            if len > best.0 || (len == best.0 && min < best.1) {
                best = (len, min);
            }
        }
        best.1
    }

    fn add_generator_at(&mut self, level: usize, g: Perm) {
        if level == self.levels.len() {
            let point = Self::choose_base(&g);
            self.levels.push(Level::new(self.degree, point));
        }
        self.levels[level].gens.push(g);
        let degree = self.degree;
        self.levels[level].recompute_orbit(degree);
    }

    /// Sift-and-insert; returns true if the chain changed.
    fn strengthen(&mut self, p: &Perm) -> bool {
        let (lvl, residue) = self.sift(p);
        if residue.is_identity() {
            return false;
        }
        self.add_generator_at(lvl, residue);
        true
    }

    /// Deterministic Schreier-generator sweep; on return the chain is
    /// provably complete.
    fn complete(&mut self) {
        'restart: loop {
            for i in 0..self.levels.len() {
                let level = &self.levels[i];
                let orbit = level.orbit.clone();
                for &b in &orbit {
                    let u_b = self.levels[i].transversal(self.degree, b);
                    for gi in 0..self.levels[i].gens.len() {
                        let g = self.levels[i].gens[gi].clone();
                        let c = g.apply(b);
                        let u_c = self.levels[i].transversal(self.degree, c);
                        let schreier = u_b.then(&g).then(&u_c.inverse());
                        if schreier.is_identity() {
                            continue;
                        }
                        // must sift through the deeper levels only
                        let (mut lvl, residue) = self.sift_from(i + 1, &schreier);
                        if !residue.is_identity() {
                            if lvl < i + 1 {
                                lvl = i + 1;
                            }
                            self.add_generator_at(lvl, residue);
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }

    fn sift_from(&self, start: usize, p: &Perm) -> (usize, Perm) {
        let mut h = p.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.apply(level.point);
            if b == level.point {
                continue;
            }
            if !level.in_orbit[b as usize] {
                return (i, h);
            }
            let u = level.transversal(self.degree, b);
            h = h.then(&u.inverse());
        }
        (self.levels.len(), h)
    }

    pub fn build(
        degree: usize,
        gens: &[Perm],
        known_order: Option<u128>,
        rng: &mut ChaCha8Rng,
    ) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            chain.strengthen(g);
        }
        if gens.is_empty() {
            return chain;
        }
        if known_order == Some(chain.order()) {
            return chain;
        }

        // random strengthening via product replacement
        let mut slots: Vec<Perm> = Vec::new();
        while slots.len() < 6 {
            slots.extend(gens.iter().cloned());
        }
        let mut acc = Perm::identity(degree);
        let mut passes = 0u32;
        let mut iters = 0u32;
        let max_iters = 4096;
        while iters < max_iters {
            iters += 1;
            let i = rng.gen_range(0..slots.len());
            let mut j = rng.gen_range(0..slots.len() - 1);
            if j >= i {
                j += 1;
            }
            let m = if rng.gen_bool(0.5) {
                slots[j].clone()
            } else {
                slots[j].inverse()
            };
            slots[i] = slots[i].then(&m);
            acc = acc.then(&slots[i]);
            if chain.strengthen(&acc) {
                passes = 0;
            } else {
                passes += 1;
            }
            match known_order {
                Some(k) => {
                    if chain.order() == k {
                        return chain;
                    }
                }
                None => {
                    if passes >= 24 {
                        break;
                    }
                }
            }
        }
        chain.complete();
        if let Some(k) = known_order {
            assert_eq!(
                chain.order(),
                k,
                "verified chain order disagrees with the declared order"
            );
        }
        chain
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::rng_for;

    fn chain_of(strs: &[&str], degree: usize) -> StabChain {
        let gens: Vec<Perm> = strs
            .iter()
            .map(|s| Perm::parse_cycles(s, degree).unwrap())
            .collect();
        StabChain::build(degree, &gens, None, &mut rng_for(0, "test"))
    }

    #[test]
    fn orders() {
        assert_eq!(chain_of(&["(1,2,3)"], 3).order(), 3);
        assert_eq!(chain_of(&["(1,2)", "(1,2,3,4)"], 4).order(), 24);
        assert_eq!(chain_of(&["(1,2)", "(1,2,3,4,5)"], 5).order(), 120);
        assert_eq!(chain_of(&["(1,2,3)", "(3,4,5)"], 5).order(), 60);
        assert_eq!(chain_of(&[], 4).order(), 1);
    }

    #[test]
    fn membership_and_factor() {
        let c = chain_of(&["(1,2,3)", "(3,4,5)"], 5); // A5
        let even = Perm::parse_cycles("(1,2)(3,4)", 5).unwrap();
        let odd = Perm::parse_cycles("(1,2)", 5).unwrap();
        assert!(c.contains(&even));
        assert!(!c.contains(&odd));
        let us = c.factor(&even).unwrap();
        let mut prod = Perm::identity(5);
        for u in us.iter().rev() {
            prod = prod.then(u);
        }
        assert_eq!(prod, even);
    }

    #[test]
    fn known_order_certifies() {
        let gens = vec![
            Perm::parse_cycles("(1,2)", 4).unwrap(),
            Perm::parse_cycles("(1,2,3,4)", 4).unwrap(),
        ];
        let c = StabChain::build(4, &gens, Some(24), &mut rng_for(0, "t"));
        assert_eq!(c.order(), 24);
    }
}
