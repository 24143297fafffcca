//! Automorphism actions of a coprime group A on G, and the induced actions
//! on classes, characters and blocks.

use crate::blocks::BlockSet;
use crate::chartable::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{GroupHom, PermGroup};
use crate::perm::Perm;
use crate::util::gcd;
use serde::Serialize;
use std::sync::OnceLock;

/// An action of a group A on G, given by generator-image maps.  A itself is
/// the closure of the maps under composition, acting on G's element list.
pub struct ActionSpec {
    group: PermGroup,
    /// Element-index tables, one per generating automorphism.
    gen_tables: Vec<Vec<u32>>,
    /// All elements of A as index tables; entry 0 is the identity.
    closure: Vec<Vec<u32>>,
    coprime: bool,
    acting: OnceLock<Result<PermGroup>>,
}

impl ActionSpec {
    /// Builds an action from automorphisms described by images of G's
    /// generators.  Every map is fully verified as an automorphism.
    pub fn new(group: &PermGroup, maps: Vec<Vec<Perm>>) -> Result<Self> {
        let elems = group.elements()?;
        let mut gen_tables = Vec::with_capacity(maps.len());
        for images in maps {
            let hom = GroupHom::new(group.clone(), group.clone(), images)?;
            let mut table = Vec::with_capacity(elems.len());
            for i in 0..elems.len() as u32 {
                let img = hom.apply_indexed(i)?;
                table.push(elems.index_of(&img).ok_or_else(|| {
                    Error::NotAnAutomorphism("image escapes the group".into())
                })?);
            }
            let mut seen = vec![false; elems.len()];
            for &i in &table {
                if seen[i as usize] {
                    return Err(Error::NotAnAutomorphism("generator image map is not bijective".into()));
                }
                seen[i as usize] = true;
            }
            gen_tables.push(table);
        }
        let closure = Self::close(elems.len(), &gen_tables)?;
        let coprime = gcd(closure.len() as u64, group.order_u64()) == 1;
        Ok(ActionSpec {
            group: group.clone(),
            gen_tables,
            closure,
            coprime,
            acting: OnceLock::new(),
        })
    }

    pub fn trivial(group: &PermGroup) -> Result<Self> {
        Self::new(group, Vec::new())
    }

    fn close(n: usize, gens: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
        let id: Vec<u32> = (0..n as u32).collect();
        let mut list = vec![id.clone()];
        let mut seen = std::collections::HashSet::new();
        seen.insert(id);
        let mut head = 0;
        while head < list.len() {
            let cur = list[head].clone();
            head += 1;
            for g in gens {
                let next: Vec<u32> = cur.iter().map(|&i| g[i as usize]).collect();
                if seen.insert(next.clone()) {
                    list.push(next);
                }
            }
            if list.len() > 1_000_000 {
                return Err(Error::TooLarge("acting group exceeds 10^6 elements".into()));
            }
        }
        Ok(list)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn a_order(&self) -> u64 {
        self.closure.len() as u64
    }

    pub fn is_coprime(&self) -> bool {
        self.coprime
    }

    pub fn generator_count(&self) -> usize {
        self.gen_tables.len()
    }

    /// The generating automorphisms as permutations of the element list.
    pub fn generator_perms(&self) -> Vec<Perm> {
        self.gen_tables
            .iter()
            .map(|t| Perm::from_images(t.clone()).unwrap())
            .collect()
    }

    /// All of A likewise.
    pub fn element_perms(&self) -> Vec<Perm> {
        self.closure
            .iter()
            .map(|t| Perm::from_images(t.clone()).unwrap())
            .collect()
    }

    /// A as a permutation group on the points of G's element list.
    pub fn acting_group(&self) -> Result<PermGroup> {
        self.acting
            .get_or_init(|| {
                PermGroup::from_generators_with_order(
                    self.group.elements()?.len(),
                    self.generator_perms(),
                    self.closure.len() as u128,
                )
            })
            .as_ref()
            .cloned()
            .map_err(|e| Error::Propagated(format!("{e}")))
    }

    /// Image of g under the automorphism with index table `table`.
    pub fn apply_table(&self, table: &[u32], g: &Perm) -> Result<Perm> {
        let elems = self.group.elements()?;
        let i = elems
            .index_of(g)
            .ok_or_else(|| Error::NotASubgroup("element outside the acted-on group".into()))?;
        Ok(elems.get(table[i as usize]).clone())
    }

    pub fn gen_table(&self, i: usize) -> &[u32] {
        &self.gen_tables[i]
    }

    pub fn closure_tables(&self) -> &[Vec<u32>] {
        &self.closure
    }

    pub fn invert_table(table: &[u32]) -> Vec<u32> {
        let mut inv = vec![0u32; table.len()];
        for (i, &x) in table.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        inv
    }

    /// Does every generating automorphism map the subgroup onto itself?
    pub fn stabilizes_subgroup(&self, sub: &PermGroup) -> Result<bool> {
        for t in &self.gen_tables {
            for g in sub.generators() {
                if !sub.contains(&self.apply_table(t, g)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Class permutation induced by an index table: class i of G maps to the
    /// class of the image of its representative.
    pub fn class_map(&self, table: &[u32]) -> Result<Vec<usize>> {
        let cls = self.group.conjugacy_classes()?;
        let mut out = Vec::with_capacity(cls.count());
        for c in 0..cls.count() {
            out.push(cls.class_of_index(table[cls.rep_index(c) as usize]));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ActionKind {
    Classes,
    Irr,
    Blocks,
    IBr,
}

/// Orbits and fixed points of an action of A on an indexed family.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitData {
    pub kind: ActionKind,
    pub orbits: Vec<Vec<usize>>,
    pub fixed: Vec<usize>,
}

impl OrbitData {
    fn from_gen_maps(kind: ActionKind, n: usize, maps: &[Vec<usize>]) -> Self {
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for m in maps {
                    let y = m[x];
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        let fixed = orbits
            .iter()
            .filter(|o| o.len() == 1)
            .map(|o| o[0])
            .collect();
        OrbitData {
            kind,
            orbits,
            fixed,
        }
    }

    pub fn orbit_of(&self, x: usize) -> &[usize] {
        self.orbits
            .iter()
            .find(|o| o.contains(&x))
            .map(|o| o.as_slice())
            .expect("point inside some orbit")
    }

    pub fn is_fixed(&self, x: usize) -> bool {
        self.fixed.contains(&x)
    }
}

pub fn check_coprime(spec: &ActionSpec) -> bool {
    spec.is_coprime()
}

pub fn act_on_classes(spec: &ActionSpec) -> Result<OrbitData> {
    let cls = spec.group().conjugacy_classes()?;
    let maps: Vec<Vec<usize>> = spec
        .gen_tables
        .iter()
        .map(|t| spec.class_map(t))
        .collect::<Result<_>>()?;
    Ok(OrbitData::from_gen_maps(ActionKind::Classes, cls.count(), &maps))
}

/// Per generating automorphism, the permutation of Irr(G): entry k maps
/// character index k to the index of its image χ^a, χ^a(g) = χ(g^(a^-1)).
pub fn character_action(spec: &ActionSpec, table: &CharacterTable) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::with_capacity(spec.gen_tables.len());
    for t in &spec.gen_tables {
        let inv = ActionSpec::invert_table(t);
        let cmap = spec.class_map(&inv)?;
        let mut row_map = Vec::with_capacity(table.num_chars());
        for chi in 0..table.num_chars() {
            let values: Vec<_> = (0..table.num_classes())
                .map(|j| table.value(chi, cmap[j]).clone())
                .collect();
            let img = table
                .index_of_values(&values)
                .expect("character image is again irreducible");
            row_map.push(img);
        }
        out.push(row_map);
    }
    Ok(out)
}

pub fn act_on_characters(spec: &ActionSpec, table: &CharacterTable) -> Result<OrbitData> {
    let maps = character_action(spec, table)?;
    Ok(OrbitData::from_gen_maps(ActionKind::Irr, table.num_chars(), &maps))
}

/// The induced action on blocks; members of one block must map into a single
/// image block.
pub fn block_action(spec: &ActionSpec, blocks: &BlockSet) -> Result<Vec<Vec<usize>>> {
    let table = blocks.table();
    let char_maps = character_action(spec, table)?;
    let mut out = Vec::with_capacity(char_maps.len());
    for cm in &char_maps {
        let mut bmap = Vec::with_capacity(blocks.count());
        for b in 0..blocks.count() {
            let images: Vec<usize> = blocks
                .block(b)
                .members()
                .iter()
                .map(|&chi| blocks.block_of(cm[chi]))
                .collect();
            assert!(
                images.windows(2).all(|w| w[0] == w[1]),
                "block members scatter under the action"
            );
            bmap.push(images[0]);
        }
        out.push(bmap);
    }
    Ok(out)
}

pub fn act_on_blocks(spec: &ActionSpec, blocks: &BlockSet) -> Result<OrbitData> {
    let maps = block_action(spec, blocks)?;
    Ok(OrbitData::from_gen_maps(ActionKind::Blocks, blocks.count(), &maps))
}

pub fn invariant_characters(spec: &ActionSpec, table: &CharacterTable) -> Result<Vec<usize>> {
    Ok(act_on_characters(spec, table)?.fixed)
}

pub fn invariant_blocks(spec: &ActionSpec, blocks: &BlockSet) -> Result<Vec<usize>> {
    Ok(act_on_blocks(spec, blocks)?.fixed)
}

/// For a coprime action, |Irr_A(G)| must equal the number of A-fixed classes.
pub fn glauberman_count_check(spec: &ActionSpec) -> Result<bool> {
    if !spec.is_coprime() {
        return Err(Error::NotCoprime(format!(
            "|A| = {}, |G| = {}",
            spec.a_order(),
            spec.group().order()
        )));
    }
    let table = spec.group().character_table()?;
    let fixed_chars = invariant_characters(spec, &table)?.len();
    let fixed_classes = act_on_classes(spec)?.fixed.len();
    Ok(fixed_chars == fixed_classes)
}
