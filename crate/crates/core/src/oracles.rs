//! Independent verification oracles.
//!
//! These deliberately avoid the main implementation paths (stabilizer
//! chains, λ*-partitions) so they can serve as cross-checks in the test and
//! acceptance suites.

use crate::chartable::CharacterTable;
use crate::error::Result;
use crate::perm::Perm;
use std::collections::HashSet;

/// All elements generated by `gens`, by plain closure; no chains involved.
pub fn brute_closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let id = Perm::identity(degree);
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let e = queue[head].clone();
        head += 1;
        for g in gens {
            let f = e.then(g);
            if seen.insert(f.clone()) {
                queue.push(f);
            }
        }
    }
    queue
}

/// Conjugacy classes by direct orbit computation over a full element list.
pub fn brute_classes(elements: &[Perm], gens: &[Perm]) -> Vec<Vec<Perm>> {
    let all: HashSet<Perm> = elements.iter().cloned().collect();
    let mut assigned: HashSet<Perm> = HashSet::new();
    let mut classes = Vec::new();
    for e in elements {
        if assigned.contains(e) {
            continue;
        }
        let mut orbit = vec![e.clone()];
        assigned.insert(e.clone());
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head].clone();
            head += 1;
            for g in gens {
                let c = x.conj(g);
                debug_assert!(all.contains(&c));
                if assigned.insert(c.clone()) {
                    orbit.push(c);
                }
            }
        }
        classes.push(orbit);
    }
    classes
}

pub fn brute_centralizer(elements: &[Perm], g: &Perm) -> Vec<Perm> {
    elements
        .iter()
        .filter(|e| e.then(g) == g.then(e))
        .cloned()
        .collect()
}

/// The linkage-graph block partition: χ ~ ψ when the p-regular sum
/// Σ_{x p-regular} χ(x) ψ(x^{-1}) is nonzero, closed transitively.
/// Partition cells are sorted lists of character indices, ordered by their
/// first member.
pub fn linkage_partition(table: &CharacterTable, p: u64) -> Result<Vec<Vec<usize>>> {
    let group = table.group();
    let cls = group.conjugacy_classes()?;
    let n = table.num_chars();
    let regular: Vec<usize> = (0..cls.count())
        .filter(|&k| cls.rep_orders()[k] % p != 0)
        .collect();
    let mut linked = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut sum = crate::cyclo::Cyclotomic::zero();
            for &k in &regular {
                let term = table
                    .value(i, k)
                    .mul(table.value(j, cls.inverse_class(k)))
                    .scale(&num_rational::BigRational::from_integer(cls.size(k).into()));
                sum = sum.add(&term);
            }
            linked[i][j] = !sum.is_zero();
        }
    }
    // transitive closure by union-find
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for i in 0..n {
        for j in 0..n {
            if linked[i][j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut root_cell: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        let cell = *root_cell.entry(r).or_insert_with(|| {
            cells.push(Vec::new());
            cells.len() - 1
        });
        cells[cell].push(i);
    }
    cells.sort_by_key(|c| c[0]);
    Ok(cells)
}

/// A block set rendered as the same kind of partition, for comparison
/// against the linkage oracle.
pub fn blockset_partition(blocks: &crate::blocks::BlockSet) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = (0..blocks.count())
        .map(|b| blocks.block(b).members().to_vec())
        .collect();
    for c in cells.iter_mut() {
        c.sort_unstable();
    }
    cells.sort_by_key(|c| c[0]);
    cells
}
