//! Conjugacy classes by orbit computation over the full element list.

use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::util::factor_u64;
use std::collections::BTreeMap;

/// The conjugacy classes of a group.  Classes are ordered by their
/// lexicographically smallest element, which is also the representative, so
/// class 0 is always the class of the identity.
pub struct ConjugacyClasses {
    reps: Vec<Perm>,
    rep_indices: Vec<u32>,
    sizes: Vec<u64>,
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
    rep_orders: Vec<u64>,
    inverse_class: Vec<u32>,
    power_maps: BTreeMap<u64, Vec<u32>>,
}

pub(super) fn compute(group: &PermGroup) -> Result<ConjugacyClasses> {
    let elems = group.elements()?;
    let n = elems.len();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut rep_indices = Vec::new();
    let mut members: Vec<Vec<u32>> = Vec::new();
    for start in 0..n as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        let cls = reps.len() as u32;
        let mut orbit = vec![start];
        class_of[start as usize] = cls;
        let mut head = 0;
        while head < orbit.len() {
            let e = elems.get(orbit[head]).clone();
            head += 1;
            for g in group.generators() {
                let c = e.conj(g);
                let ci = elems.index_of(&c).expect("conjugate stays in the group");
                if class_of[ci as usize] == u32::MAX {
                    class_of[ci as usize] = cls;
                    orbit.push(ci);
                }
            }
        }
        orbit.sort_unstable();
        reps.push(elems.get(start).clone());
        rep_indices.push(start);
        members.push(orbit);
    }
    let sizes: Vec<u64> = members.iter().map(|m| m.len() as u64).collect();
    debug_assert_eq!(sizes.iter().sum::<u64>() as u128, group.order());
    let rep_orders: Vec<u64> = reps.iter().map(|r| r.order()).collect();
    let inverse_class: Vec<u32> = reps
        .iter()
        .map(|r| class_of[elems.index_of(&r.inverse()).unwrap() as usize])
        .collect();
    let exponent = rep_orders.iter().fold(1u64, |a, &b| num_integer::lcm(a, b));
    let mut power_maps = BTreeMap::new();
    for (p, _) in factor_u64(exponent) {
        let map: Vec<u32> = reps
            .iter()
            .map(|r| class_of[elems.index_of(&r.pow(p as i64)).unwrap() as usize])
            .collect();
        power_maps.insert(p, map);
    }
    Ok(ConjugacyClasses {
        reps,
        rep_indices,
        sizes,
        class_of,
        members,
        rep_orders,
        inverse_class,
        power_maps,
    })
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, class: usize) -> &Perm {
        &self.reps[class]
    }

    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    pub fn rep_index(&self, class: usize) -> u32 {
        self.rep_indices[class]
    }

    pub fn size(&self, class: usize) -> u64 {
        self.sizes[class]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Class of an element given by its index in the element list.
    pub fn class_of_index(&self, elt: u32) -> usize {
        self.class_of[elt as usize] as usize
    }

    /// Element indices of one class, sorted.
    pub fn members(&self, class: usize) -> &[u32] {
        &self.members[class]
    }

    pub fn rep_orders(&self) -> &[u64] {
        &self.rep_orders
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class] as usize
    }

    /// Class of rep(class)^p for a prime p dividing the exponent.
    pub fn power_map(&self, p: u64) -> Option<&[u32]> {
        self.power_maps.get(&p).map(|v| v.as_slice())
    }
}

impl PermGroup {
    /// Class index of an arbitrary group element.
    pub fn class_of(&self, p: &Perm) -> Result<usize> {
        let elems = self.elements()?;
        let cls = self.conjugacy_classes()?;
        let idx = elems
            .index_of(p)
            .unwrap_or_else(|| panic!("element {p} not in group"));
        Ok(cls.class_of_index(idx))
    }
}
