//! Finite permutation groups with stabilizer-chain certificates.

mod chain;
mod classes;
mod construct;
mod hom;
mod subgroups;

pub use classes::ConjugacyClasses;
pub use construct::{central_product, direct_product, quotient, semidirect_product, DirectProduct, SemidirectProduct};
pub use hom::{Embedding, GroupHom};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::util::rng_for;
use chain::StabChain;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

static GLOBAL_SEED: AtomicU64 = AtomicU64::new(0);

/// Sets the seed used by all randomized internal algorithms.
pub fn set_global_seed(seed: u64) {
    GLOBAL_SEED.store(seed, Ordering::SeqCst);
}

pub fn global_seed() -> u64 {
    GLOBAL_SEED.load(Ordering::SeqCst)
}

/// Full element enumerations are refused beyond these bounds.
pub const ELEMENT_LIMIT: u128 = 1 << 20;
const ELEMENT_CELL_LIMIT: u128 = 1 << 25;

/// All elements of a group, sorted by image array, with word data back to
/// the generators.
pub struct Elements {
    list: Vec<Perm>,
    index: HashMap<Perm, u32>,
    /// (parent index, generator index); the identity points at itself.
    word: Vec<(u32, u16)>,
    identity: u32,
}

impl Elements {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: u32) -> &Perm {
        &self.list[i as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Perm> {
        self.list.iter()
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    /// Word in the group's generators multiplying out (left to right) to
    /// element i.
    pub fn word_of(&self, i: u32) -> Vec<u16> {
        let mut out = Vec::new();
        let mut j = i;
        while self.word[j as usize].0 != j {
            let (parent, gi) = self.word[j as usize];
            out.push(gi);
            j = parent;
        }
        out.reverse();
        out
    }
}

struct Inner {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    elements: OnceLock<Result<Arc<Elements>>>,
    classes: OnceLock<Result<Arc<ConjugacyClasses>>>,
    table: OnceLock<Result<Arc<crate::chartable::CharacterTable>>>,
    blocks: Mutex<HashMap<u64, Arc<crate::blocks::BlockSet>>>,
    center: OnceLock<Result<PermGroup>>,
}

/// A finite group of permutations, immutable after construction.
///
/// Cloning is cheap (shared handle); derived data such as the element list,
/// conjugacy classes and the character table are computed once and cached.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {})", self.degree(), self.order())
    }
}

impl PermGroup {
    fn from_chain(degree: usize, gens: Vec<Perm>, chain: StabChain) -> Self {
        PermGroup {
            inner: Arc::new(Inner {
                degree,
                gens,
                chain,
                elements: OnceLock::new(),
                classes: OnceLock::new(),
                table: OnceLock::new(),
                blocks: Mutex::new(HashMap::new()),
                center: OnceLock::new(),
            }),
        }
    }

    /// Builds a group from generators, certifying the order with a
    /// deterministic verification pass.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        Self::check_gens(degree, &gens)?;
        let mut rng = rng_for(global_seed(), &gens_tag(degree, &gens));
        let chain = StabChain::build(degree, &gens, None, &mut rng);
        Ok(Self::from_chain(degree, gens, chain))
    }

    /// Builds a group whose order is known in advance; the chain is complete
    /// as soon as it reaches that order.
    pub fn from_generators_with_order(degree: usize, gens: Vec<Perm>, order: u128) -> Result<Self> {
        Self::check_gens(degree, &gens)?;
        let mut rng = rng_for(global_seed(), &gens_tag(degree, &gens));
        let chain = StabChain::build(degree, &gens, Some(order), &mut rng);
        Ok(Self::from_chain(degree, gens, chain))
    }

    fn check_gens(degree: usize, gens: &[Perm]) -> Result<()> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        Ok(())
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).unwrap()
    }

    /// Builds the subgroup consisting exactly of `members`, using incremental
    /// membership tests to keep the generating set small.
    pub fn from_members<'a>(degree: usize, members: impl Iterator<Item = &'a Perm>) -> Result<Self> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut chain: Option<StabChain> = None;
        let mut count: u128 = 0;
        let mut rng = rng_for(global_seed(), "from-members");
        for m in members {
            count += 1;
            if m.is_identity() {
                continue;
            }
            let inside = chain.as_ref().map(|c| c.contains(m)).unwrap_or(false);
            if !inside {
                gens.push(m.clone());
                chain = Some(StabChain::build(degree, &gens, None, &mut rng));
            }
        }
        let chain = chain.unwrap_or_else(|| StabChain::build(degree, &[], None, &mut rng));
        if chain.order() != count {
            return Err(Error::NotASubgroup(format!(
                "member set of size {} generates a group of order {}",
                count,
                chain.order()
            )));
        }
        Ok(Self::from_chain(degree, gens, chain))
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.gens
    }

    pub fn order(&self) -> u128 {
        self.inner.chain.order()
    }

    pub fn order_u64(&self) -> u64 {
        u64::try_from(self.order()).expect("group order exceeds u64")
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn base(&self) -> Vec<u32> {
        self.inner.chain.base()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.inner.chain.contains(p)
    }

    /// Writes p as a product of stabilizer-chain coset representatives.
    pub fn factor(&self, p: &Perm) -> Option<Vec<Perm>> {
        self.inner.chain.factor(p)
    }

    /// Two handles describe the same subgroup of the same symmetric group.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        self.degree() == other.degree()
            && self.order() == other.order()
            && other.generators().iter().all(|g| self.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.contains(g))
    }

    /// Explicit normality check by generator conjugation.
    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .generators()
                .iter()
                .all(|g| self.generators().iter().all(|n| self.contains(&n.conj(g))))
    }

    pub fn conjugated(&self, h: &Perm) -> Result<PermGroup> {
        let gens: Vec<Perm> = self.generators().iter().map(|g| g.conj(h)).collect();
        PermGroup::from_generators_with_order(self.degree(), gens, self.order())
    }

    /// The sorted list of all elements; fails beyond the enumeration bounds.
    pub fn elements(&self) -> Result<Arc<Elements>> {
        self.inner
            .elements
            .get_or_init(|| self.enumerate())
            .as_ref()
            .map(Arc::clone)
            .map_err(clone_err)
    }

    fn enumerate(&self) -> Result<Arc<Elements>> {
        let order = self.order();
        if order > ELEMENT_LIMIT || order * self.degree() as u128 > ELEMENT_CELL_LIMIT {
            return Err(Error::TooLarge(format!(
                "element enumeration refused for order {} at degree {}",
                order,
                self.degree()
            )));
        }
        let id = self.identity();
        let mut list = vec![id.clone()];
        let mut index: HashMap<Perm, u32> = HashMap::new();
        index.insert(id, 0);
        let mut word: Vec<(u32, u16)> = vec![(0, 0)];
        let mut head = 0usize;
        while head < list.len() {
            let e = list[head].clone();
            for (gi, g) in self.generators().iter().enumerate() {
                let f = e.then(g);
                if !index.contains_key(&f) {
                    index.insert(f.clone(), list.len() as u32);
                    word.push((head as u32, gi as u16));
                    list.push(f);
                }
            }
            head += 1;
        }
        assert_eq!(list.len() as u128, order, "closure disagrees with chain order");
        // sort for determinism, remapping the word structure
        let mut perm_order: Vec<u32> = (0..list.len() as u32).collect();
        perm_order.sort_by(|&a, &b| list[a as usize].cmp(&list[b as usize]));
        let mut new_pos = vec![0u32; list.len()];
        for (new, &old) in perm_order.iter().enumerate() {
            new_pos[old as usize] = new as u32;
        }
        let mut new_list = Vec::with_capacity(list.len());
        let mut new_word = vec![(0u32, 0u16); list.len()];
        for &old in &perm_order {
            new_list.push(list[old as usize].clone());
        }
        for old in 0..list.len() {
            let (p, gi) = word[old];
            new_word[new_pos[old] as usize] = (new_pos[p as usize], gi);
        }
        let mut new_index = HashMap::with_capacity(list.len());
        for (i, p) in new_list.iter().enumerate() {
            new_index.insert(p.clone(), i as u32);
        }
        let identity = new_pos[0];
        Ok(Arc::new(Elements {
            list: new_list,
            index: new_index,
            word: new_word,
            identity,
        }))
    }

    pub fn conjugacy_classes(&self) -> Result<Arc<ConjugacyClasses>> {
        self.inner
            .classes
            .get_or_init(|| classes::compute(self).map(Arc::new))
            .as_ref()
            .map(Arc::clone)
            .map_err(clone_err)
    }

    /// Group exponent, from class representative orders.
    pub fn exponent(&self) -> Result<u64> {
        let cls = self.conjugacy_classes()?;
        Ok(cls
            .rep_orders()
            .iter()
            .fold(1u64, |a, &b| num_integer::lcm(a, b)))
    }

    pub fn character_table(&self) -> Result<Arc<crate::chartable::CharacterTable>> {
        self.inner
            .table
            .get_or_init(|| crate::chartable::character_table(self).map(Arc::new))
            .as_ref()
            .map(Arc::clone)
            .map_err(clone_err)
    }

    pub fn block_partition(&self, p: u64) -> Result<Arc<crate::blocks::BlockSet>> {
        {
            let cache = self.inner.blocks.lock().unwrap();
            if let Some(b) = cache.get(&p) {
                return Ok(Arc::clone(b));
            }
        }
        let bs = Arc::new(crate::blocks::block_partition(self, p)?);
        let mut cache = self.inner.blocks.lock().unwrap();
        Ok(Arc::clone(cache.entry(p).or_insert(bs)))
    }

    pub fn center(&self) -> Result<PermGroup> {
        self.inner
            .center
            .get_or_init(|| subgroups::center(self))
            .as_ref()
            .cloned()
            .map_err(clone_err)
    }

    pub fn centralizer(&self, g: &Perm) -> Result<PermGroup> {
        subgroups::centralizer(self, g)
    }

    pub fn centralizer_of_group(&self, h: &PermGroup) -> Result<PermGroup> {
        subgroups::centralizer_of_group(self, h)
    }

    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        subgroups::normalizer(self, h)
    }

    pub fn sylow(&self, p: u64) -> Result<PermGroup> {
        subgroups::sylow(self, p)
    }

    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup> {
        subgroups::intersection(self, other)
    }

    /// Subgroup generated by this subgroup together with `other`, inside a
    /// common ambient group whose membership is not consulted.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        subgroups::join(self, other)
    }

    pub fn normal_closure(&self, seeds: &[Perm]) -> Result<PermGroup> {
        subgroups::normal_closure(self, seeds)
    }

    pub fn normal_subgroups(&self) -> Result<Vec<PermGroup>> {
        subgroups::normal_subgroups(self)
    }

    /// Cyclic extension ⟨N, y⟩ for y normalizing N; order certified.
    pub fn extend_by(&self, y: &Perm) -> Result<PermGroup> {
        subgroups::cyclic_extension(self, y)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i..].iter().all(|b| a.then(b) == b.then(a)))
    }

    pub fn is_elementary_abelian(&self, p: u64) -> Result<bool> {
        if !self.is_abelian() {
            return Ok(false);
        }
        Ok(self.order() == 1 || self.exponent()? == p)
    }
}

fn clone_err(e: &Error) -> Error {
    Error::Propagated(format!("{e}"))
}

fn gens_tag(degree: usize, gens: &[Perm]) -> String {
    use std::fmt::Write;
    let mut s = format!("group:{degree}");
    for g in gens {
        for &x in g.images() {
            let _ = write!(s, ",{x}");
        }
        s.push(';');
    }
    s
}
