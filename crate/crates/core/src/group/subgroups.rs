//! Subgroup constructions by explicit scans over the element list.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::util::{p_part, valuation};

pub(super) fn centralizer(group: &PermGroup, g: &Perm) -> Result<PermGroup> {
    let elems = group.elements()?;
    PermGroup::from_members(
        group.degree(),
        elems.iter().filter(|e| e.then(g) == g.then(e)),
    )
}

pub(super) fn centralizer_of_group(group: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let elems = group.elements()?;
    PermGroup::from_members(
        group.degree(),
        elems
            .iter()
            .filter(|e| h.generators().iter().all(|g| e.then(g) == g.then(e))),
    )
}

pub(super) fn center(group: &PermGroup) -> Result<PermGroup> {
    centralizer_of_group(group, group)
}

pub(super) fn normalizer(group: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if !h.is_subgroup_of(group) {
        return Err(Error::NotASubgroup(
            "normalizer target is not a subgroup".into(),
        ));
    }
    let elems = group.elements()?;
    PermGroup::from_members(
        group.degree(),
        elems
            .iter()
            .filter(|e| h.generators().iter().all(|g| h.contains(&g.conj(e)))),
    )
}

/// A Sylow p-subgroup, grown through normalizers; the trivial group when
/// p does not divide the order.
pub(super) fn sylow(group: &PermGroup, p: u64) -> Result<PermGroup> {
    let target = p_part(group.order_u64(), p) as u128;
    if target == 1 {
        return Ok(PermGroup::trivial(group.degree()));
    }
    let elems = group.elements()?;
    let seed = elems
        .iter()
        .find(|e| e.order() % p == 0)
        .expect("Cauchy guarantees a p-element");
    let m = seed.order();
    let a = valuation(m, p);
    let y = seed.pow((m / p.pow(a)) as i64);
    let mut sub = PermGroup::from_generators_with_order(group.degree(), vec![y.clone()], y.order() as u128)?;
    while sub.order() < target {
        let norm = normalizer(group, &sub)?;
        let nelems = norm.elements()?;
        let mut grew = false;
        for e in nelems.iter() {
            let m = e.order();
            if m % p != 0 && m != 1 {
                continue;
            }
            let a = valuation(m, p);
            let y = e.pow((m / p.pow(a)) as i64);
            if y.is_identity() || sub.contains(&y) {
                continue;
            }
            let mut gens = sub.generators().to_vec();
            gens.push(y);
            sub = PermGroup::from_generators(group.degree(), gens)?;
            grew = true;
            break;
        }
        assert!(grew, "p-subgroup below Sylow order has no p-element in its normalizer");
    }
    assert_eq!(sub.order(), target);
    Ok(sub)
}

pub(super) fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let elems = small.elements()?;
    PermGroup::from_members(a.degree(), elems.iter().filter(|e| big.contains(e)))
}

pub(super) fn join(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let mut gens = a.generators().to_vec();
    gens.extend(b.generators().iter().cloned());
    PermGroup::from_generators(a.degree(), gens)
}

pub(super) fn normal_closure(group: &PermGroup, seeds: &[Perm]) -> Result<PermGroup> {
    let mut gens: Vec<Perm> = seeds.iter().filter(|s| !s.is_identity()).cloned().collect();
    let mut sub = PermGroup::from_generators(group.degree(), gens.clone())?;
    loop {
        let mut grew = false;
        for g in group.generators() {
            for n in sub.generators() {
                let c = n.conj(g);
                if !sub.contains(&c) {
                    gens.push(c);
                    grew = true;
                }
            }
            if grew {
                sub = PermGroup::from_generators(group.degree(), gens.clone())?;
            }
        }
        if !grew {
            return Ok(sub);
        }
    }
}

/// All normal subgroups, found as join-closures of class unions.
pub(super) fn normal_subgroups(group: &PermGroup) -> Result<Vec<PermGroup>> {
    let cls = group.conjugacy_classes()?;
    let mut found: Vec<PermGroup> = vec![PermGroup::trivial(group.degree())];
    let mut queue: Vec<PermGroup> = Vec::new();
    for c in 1..cls.count() {
        let n = normal_closure(group, &[cls.rep(c).clone()])?;
        queue.push(n);
    }
    while let Some(n) = queue.pop() {
        if found.iter().any(|m| m.order() == n.order() && m.same_group(&n)) {
            continue;
        }
        for m in &found {
            let j = join(m, &n)?;
            if !found.iter().any(|k| k.order() == j.order() && k.same_group(&j))
                && !queue.iter().any(|k| k.order() == j.order() && k.same_group(&j))
            {
                queue.push(j);
            }
        }
        found.push(n);
    }
    found.sort_by_key(|n| n.order());
    Ok(found)
}

/// ⟨N, y⟩ for y normalizing N, with certified order |N|·ord(yN).
pub(super) fn cyclic_extension(n: &PermGroup, y: &Perm) -> Result<PermGroup> {
    if !n.generators().iter().all(|g| n.contains(&g.conj(y))) {
        return Err(Error::NotNormal("element does not normalize the subgroup".into()));
    }
    let mut t = 1u128;
    let mut pw = y.clone();
    while !n.contains(&pw) {
        pw = pw.then(y);
        t += 1;
    }
    let mut gens = n.generators().to_vec();
    gens.push(y.clone());
    PermGroup::from_generators_with_order(n.degree(), gens, n.order() * t)
}
