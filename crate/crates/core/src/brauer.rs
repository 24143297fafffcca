//! Modular modules and Brauer characters: a chop engine over GF(p^k)
//! (Holt-Rees style with the Ivanyos-Lux certificate), irreducible searches,
//! Brauer character lifts through the shared reduction, and decomposition
//! matrices.

use crate::actions::{ActionKind, ActionSpec, OrbitData};
use crate::blocks::{BlockSet, ModularReduction};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::ff::FfRef;
use crate::ffmat::{spin, Mat};
use crate::ffpoly::{factor, FfPoly};
use crate::group::PermGroup;
use crate::perm::Perm;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub const DEFAULT_DIM_BOUND: usize = 256;
pub const DEFAULT_ORDER_BOUND: u64 = 2000;
const CHOP_BUDGET: u32 = 40;

/// A module for a group over a finite field, one matrix per generator,
/// acting on row vectors.
#[derive(Clone)]
pub struct FfModule {
    group: PermGroup,
    field: FfRef,
    gens: Vec<Mat>,
    dim: usize,
}

impl FfModule {
    pub fn new(group: PermGroup, field: FfRef, gens: Vec<Mat>) -> Self {
        let dim = gens.first().map(|m| m.rows).unwrap_or(0);
        FfModule {
            group,
            field,
            gens,
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &FfRef {
        &self.field
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }

    /// The natural permutation module on the group's points.
    pub fn permutation_module(group: &PermGroup, field: &FfRef) -> Self {
        let n = group.degree();
        let gens = group
            .generators()
            .iter()
            .map(|g| {
                let mut m = Mat::zero(field, n, n);
                for i in 0..n {
                    m[(i, g.apply(i as u32) as usize)] = field.one();
                }
                m
            })
            .collect();
        FfModule::new(group.clone(), Arc::clone(field), gens)
    }

    /// The right regular module, of dimension |G|.
    pub fn regular_module(group: &PermGroup, field: &FfRef) -> Result<Self> {
        let elems = group.elements()?;
        let n = elems.len();
        let mut gens = Vec::new();
        for g in group.generators() {
            let mut m = Mat::zero(field, n, n);
            for i in 0..n {
                let img = elems.index_of(&elems.get(i as u32).then(g)).unwrap();
                m[(i, img as usize)] = field.one();
            }
            gens.push(m);
        }
        Ok(FfModule::new(group.clone(), Arc::clone(field), gens))
    }

    pub fn tensor(&self, other: &FfModule) -> FfModule {
        let f = &self.field;
        let (da, db) = (self.dim, other.dim);
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut m = Mat::zero(f, da * db, da * db);
                for i in 0..da {
                    for j in 0..da {
                        if a[(i, j)].is_zero() {
                            continue;
                        }
                        for k in 0..db {
                            for l in 0..db {
                                if !b[(k, l)].is_zero() {
                                    m[(i * db + k, j * db + l)] = f.mul(a[(i, j)], b[(k, l)]);
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        FfModule::new(self.group.clone(), Arc::clone(f), gens)
    }

    pub fn dual(&self) -> FfModule {
        let gens = self
            .gens
            .iter()
            .map(|m| m.inverse(&self.field).expect("group matrices invertible").transpose())
            .collect();
        FfModule::new(self.group.clone(), Arc::clone(&self.field), gens)
    }

    /// Matrix of an arbitrary group element, via its word in the generators.
    pub fn matrix_of(&self, g: &Perm) -> Result<Mat> {
        let elems = self.group.elements()?;
        let idx = elems
            .index_of(g)
            .ok_or_else(|| Error::NotASubgroup("element outside module group".into()))?;
        let mut m = Mat::identity(&self.field, self.dim);
        for gi in elems.word_of(idx) {
            m = m.mul(&self.field, &self.gens[gi as usize]);
        }
        Ok(m)
    }

    /// Random element of the enveloping algebra.
    fn random_algebra_element(&self, rng: &mut ChaCha8Rng) -> Mat {
        let f = &self.field;
        let mut pool: Vec<Mat> = self.gens.clone();
        if pool.is_empty() {
            pool.push(Mat::identity(f, self.dim));
        }
        for _ in 0..3 {
            let i = rng.gen_range(0..pool.len());
            let j = rng.gen_range(0..pool.len());
            let prod = pool[i].mul(f, &pool[j]);
            pool.push(prod);
        }
        let mut z = Mat::zero(f, self.dim, self.dim);
        for m in &pool {
            let c = f.from_u64(rng.gen_range(0..f.p()));
            if !c.is_zero() {
                z = z.add(f, &m.scale(f, c));
            }
        }
        z
    }

    /// Sub- and quotient module along an invariant row space (basis in rref).
    fn split_along(&self, basis: &Mat) -> (FfModule, FfModule) {
        let f = &self.field;
        let s = basis.rows;
        let n = self.dim;
        // extend to a full basis with unit vectors at the non-pivot columns
        let mut pivots = Vec::new();
        for r in 0..s {
            pivots.push((0..n).find(|&c| !basis[(r, c)].is_zero()).unwrap());
        }
        let mut c_rows: Vec<Vec<crate::ff::FfElt>> = Vec::with_capacity(n);
        for r in 0..s {
            c_rows.push(basis.row(r).to_vec());
        }
        for col in 0..n {
            if !pivots.contains(&col) {
                let mut row = vec![f.zero(); n];
                row[col] = f.one();
                c_rows.push(row);
            }
        }
        let c = Mat::from_rows(c_rows);
        let c_inv = c.inverse(f).expect("basis extension invertible");
        let mut sub_gens = Vec::new();
        let mut quot_gens = Vec::new();
        for g in &self.gens {
            let t = c.mul(f, g).mul(f, &c_inv);
            let mut sub = Mat::zero(f, s, s);
            for i in 0..s {
                for j in 0..s {
                    sub[(i, j)] = t[(i, j)];
                }
                for j in s..n {
                    debug_assert!(t[(i, j)].is_zero(), "subspace not invariant");
                }
            }
            let mut quot = Mat::zero(f, n - s, n - s);
            for i in s..n {
                for j in s..n {
                    quot[(i - s, j - s)] = t[(i, j)];
                }
            }
            sub_gens.push(sub);
            quot_gens.push(quot);
        }
        (
            FfModule::new(self.group.clone(), Arc::clone(f), sub_gens),
            FfModule::new(self.group.clone(), Arc::clone(f), quot_gens),
        )
    }
}

/// Composition factors with multiplicities.  Every returned module carries
/// an irreducibility certificate from the Norton test.
pub fn chop(module: &FfModule, rng: &mut ChaCha8Rng) -> Result<Vec<(FfModule, usize)>> {
    let mut constituents: Vec<(FfModule, usize)> = Vec::new();
    let mut stack = vec![module.clone()];
    while let Some(m) = stack.pop() {
        if m.dim == 0 {
            continue;
        }
        if m.dim == 1 || m.gens.is_empty() {
            push_constituent(&mut constituents, m)?;
            continue;
        }
        match chop_step(&m, rng)? {
            ChopOutcome::Irreducible => push_constituent(&mut constituents, m)?,
            ChopOutcome::Split(sub, quot) => {
                stack.push(sub);
                stack.push(quot);
            }
        }
    }
    // deterministic order: by dimension, then by Brauer fingerprint order of
    // discovery (already merged)
    constituents.sort_by_key(|(m, _)| m.dim);
    Ok(constituents)
}

enum ChopOutcome {
    Irreducible,
    Split(FfModule, FfModule),
}

fn chop_step(m: &FfModule, rng: &mut ChaCha8Rng) -> Result<ChopOutcome> {
    let f = &m.field;
    for _ in 0..CHOP_BUDGET {
        let z = m.random_algebra_element(rng);
        let cp = z.charpoly(f);
        let factors = factor(f, &cp, rng);
        for (irr, _) in &factors {
            let w = z.poly_eval(f, irr);
            let kernel = w.left_kernel(f);
            if kernel.rows == 0 {
                continue;
            }
            let seed = kernel.row(0).to_vec();
            let sub = spin(f, &seed, &m.gens);
            if sub.rows < m.dim {
                let (s, q) = m.split_along(&sub);
                return Ok(ChopOutcome::Split(s, q));
            }
            // nullity equals the factor degree: Norton's criterion applies
            if kernel.rows == irr.degree().unwrap() {
                let wt = w.transpose();
                let t_gens: Vec<Mat> = m.gens.iter().map(|g| g.transpose()).collect();
                let t_kernel = wt.left_kernel(f);
                let t_seed = t_kernel.row(0).to_vec();
                let t_span = spin(f, &t_seed, &t_gens);
                if t_span.rows == m.dim {
                    return Ok(ChopOutcome::Irreducible);
                }
                // proper transpose submodule: its annihilator is a proper
                // submodule of the original
                let ann = t_span.transpose().left_kernel(f);
                let sub = spin(f, &ann.row(0).to_vec(), &m.gens);
                assert!(sub.rows < m.dim, "annihilator must be proper");
                let (s, q) = m.split_along(&sub);
                return Ok(ChopOutcome::Split(s, q));
            }
        }
    }
    Err(Error::ChopBudgetExceeded(CHOP_BUDGET))
}

fn push_constituent(list: &mut Vec<(FfModule, usize)>, m: FfModule) -> Result<()> {
    // isomorphism over a splitting field is detected by the trace
    // fingerprint on a generating set of elements
    let fp = trace_fingerprint(&m)?;
    for (other, mult) in list.iter_mut() {
        if other.dim == m.dim && trace_fingerprint(other)? == fp {
            *mult += 1;
            return Ok(());
        }
    }
    list.push((m, 1));
    Ok(())
}

/// Traces of all class representatives: a complete isomorphism invariant
/// for semisimple representations over a splitting field would need Brauer
/// characters; traces at every class representative are exactly that data
/// in field form.
fn trace_fingerprint(m: &FfModule) -> Result<Vec<crate::ff::FfElt>> {
    let cls = m.group.conjugacy_classes()?;
    let mut out = Vec::with_capacity(cls.count());
    for c in 0..cls.count() {
        out.push(m.matrix_of(cls.rep(c))?.trace(&m.field));
    }
    Ok(out)
}

/// A Brauer character: exact cyclotomic values on the p-regular classes.
#[derive(Clone)]
pub struct BrauerCharacter {
    values: Vec<Cyclotomic>,
    dim: usize,
}

impl BrauerCharacter {
    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, regular_class: usize) -> &Cyclotomic {
        &self.values[regular_class]
    }

    pub fn degree(&self) -> u64 {
        self.dim as u64
    }
}

/// Indices of the classes of p'-elements.
pub fn p_regular_classes(group: &PermGroup, p: u64) -> Result<Vec<usize>> {
    let cls = group.conjugacy_classes()?;
    Ok((0..cls.count())
        .filter(|&k| cls.rep_orders()[k] % p != 0)
        .collect())
}

/// Lifts the eigenvalue multiplicities of a module on the p-regular classes
/// through the fixed reduction.
pub fn brauer_character(
    module: &FfModule,
    reduction: &ModularReduction,
    regular: &[usize],
) -> Result<BrauerCharacter> {
    let f = module.field();
    let cls = module.group().conjugacy_classes()?;
    let mut values = Vec::with_capacity(regular.len());
    for &k in regular {
        let rep = cls.rep(k);
        let m = cls.rep_orders()[k];
        let mat = module.matrix_of(rep)?;
        let cp = mat.charpoly(f);
        let mut total = 0usize;
        let mut val = Cyclotomic::zero();
        let root = reduction.root_image(m)?;
        let mut pw = f.one();
        for j in 0..m {
            let mult = cp.root_multiplicity(f, pw);
            if mult > 0 {
                total += mult;
                val = val.add(
                    &Cyclotomic::root_of_unity(m, j as i64)
                        .scale(&BigRational::from_integer((mult as u64).into())),
                );
            }
            pw = f.mul(pw, root);
        }
        if total != module.dim() {
            return Err(Error::LiftFailure(format!(
                "eigenvalues of a p-regular element do not split: {total} of {}",
                module.dim()
            )));
        }
        values.push(val);
    }
    Ok(BrauerCharacter {
        values,
        dim: module.dim(),
    })
}

/// The irreducible p-modular characters with their modules.
pub struct BrauerTable {
    group: PermGroup,
    p: u64,
    regular: Vec<usize>,
    ibr: Vec<BrauerCharacter>,
    modules: Vec<FfModule>,
    reduction: ModularReduction,
}

impl BrauerTable {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn count(&self) -> usize {
        self.ibr.len()
    }

    pub fn character(&self, i: usize) -> &BrauerCharacter {
        &self.ibr[i]
    }

    pub fn characters(&self) -> &[BrauerCharacter] {
        &self.ibr
    }

    pub fn module(&self, i: usize) -> &FfModule {
        &self.modules[i]
    }

    pub fn regular_classes(&self) -> &[usize] {
        &self.regular
    }

    pub fn reduction(&self) -> &ModularReduction {
        &self.reduction
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.ibr.iter().map(|c| c.degree()).collect()
    }

    pub fn index_of_values(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.ibr.iter().position(|c| c.values() == values)
    }
}

/// Finds all irreducible Brauer characters by chopping permutation and
/// regular modules, then tensor products and duals of what was found, until
/// the count matches the number of p-regular classes.
pub fn ibr(group: &PermGroup, p: u64) -> Result<BrauerTable> {
    ibr_with_bounds(group, p, DEFAULT_ORDER_BOUND, DEFAULT_DIM_BOUND)
}

pub fn ibr_with_bounds(
    group: &PermGroup,
    p: u64,
    order_bound: u64,
    dim_bound: usize,
) -> Result<BrauerTable> {
    if group.order_u64() > order_bound {
        return Err(Error::TooLarge(format!(
            "IBr search limited to order {order_bound}, group has {}",
            group.order()
        )));
    }
    let reduction = ModularReduction::new(p, group.exponent()?)?;
    let field = Arc::clone(reduction.field());
    let regular = p_regular_classes(group, p)?;
    let wanted = regular.len();
    let mut rng = crate::util::rng_for(crate::group::global_seed(), "ibr");
    let mut found: Vec<(BrauerCharacter, FfModule)> = Vec::new();
    let mut absorb = |module: &FfModule,
                      found: &mut Vec<(BrauerCharacter, FfModule)>,
                      rng: &mut ChaCha8Rng|
     -> Result<()> {
        for (c, _) in chop(module, rng)? {
            let bc = brauer_character(&c, &reduction, &regular)?;
            if !found.iter().any(|(b, _)| b.values() == bc.values()) {
                found.push((bc, c));
            }
        }
        Ok(())
    };
    // seeds: natural permutation module, then the regular module when small
    let nat = FfModule::permutation_module(group, &field);
    if nat.dim() <= dim_bound {
        absorb(&nat, &mut found, &mut rng)?;
    }
    if found.len() < wanted && group.order_u64() as usize <= dim_bound {
        let reg = FfModule::regular_module(group, &field)?;
        absorb(&reg, &mut found, &mut rng)?;
    }
    // tensor products and duals of found constituents, smallest first
    let mut round = 0;
    while found.len() < wanted && round < 16 {
        round += 1;
        let mut candidates: Vec<FfModule> = Vec::new();
        for (_, m) in &found {
            if m.dim() <= dim_bound {
                candidates.push(m.dual());
            }
        }
        let snapshot: Vec<FfModule> = found.iter().map(|(_, m)| m.clone()).collect();
        let mut pairs: Vec<(usize, usize)> = (0..snapshot.len())
            .flat_map(|i| (i..snapshot.len()).map(move |j| (i, j)))
            .collect();
        pairs.sort_by_key(|&(i, j)| snapshot[i].dim() * snapshot[j].dim());
        for (i, j) in pairs {
            if snapshot[i].dim() * snapshot[j].dim() <= dim_bound {
                candidates.push(snapshot[i].tensor(&snapshot[j]));
            }
        }
        let before = found.len();
        for c in candidates {
            if found.len() >= wanted {
                break;
            }
            absorb(&c, &mut found, &mut rng)?;
        }
        if found.len() == before {
            break;
        }
    }
    if found.len() != wanted {
        return Err(Error::SearchIncomplete {
            found: found.len(),
            wanted,
        });
    }
    // deterministic order: degree, then value keys
    found.sort_by(|a, b| {
        a.0.dim.cmp(&b.0.dim).then_with(|| {
            for (x, y) in a.0.values.iter().zip(&b.0.values) {
                let o = x.key().cmp(&y.key());
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    let (ibr, modules): (Vec<_>, Vec<_>) = found.into_iter().unzip();
    Ok(BrauerTable {
        group: group.clone(),
        p,
        regular,
        ibr,
        modules,
        reduction,
    })
}

/// The decomposition matrix: rows Irr(G), columns IBr(G), with
/// χ|p-regular = Σ d_{χφ} φ solved exactly over the cyclotomics.
pub struct DecompositionMatrix {
    entries: Vec<Vec<u64>>,
}

impl DecompositionMatrix {
    pub fn entry(&self, chi: usize, phi: usize) -> u64 {
        self.entries[chi][phi]
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn row(&self, chi: usize) -> &[u64] {
        &self.entries[chi]
    }
}

pub fn decomposition_matrix(brauer: &BrauerTable) -> Result<DecompositionMatrix> {
    let table = brauer.group().character_table()?;
    let n = brauer.count();
    // solve X * B = R where B rows are Brauer characters on p-regular
    // classes and R rows are restricted ordinary characters; transpose to
    // B^T X^T = R^T and eliminate once
    let mut aug: Vec<Vec<Cyclotomic>> = Vec::with_capacity(n);
    for (col, &k) in brauer.regular_classes().iter().enumerate() {
        let mut row: Vec<Cyclotomic> = (0..n)
            .map(|phi| brauer.character(phi).value(col).clone())
            .collect();
        for chi in 0..table.num_chars() {
            row.push(table.value(chi, k).clone());
        }
        aug.push(row);
    }
    // Gaussian elimination over the cyclotomics
    let rows = aug.len();
    let width = n + table.num_chars();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..rows).find(|&r| !aug[r][col].is_zero()) else {
            return Err(Error::NonIntegralDecomposition(
                "Brauer characters are linearly dependent".into(),
            ));
        };
        aug.swap(rank, pr);
        let inv = aug[rank][col].inverse()?;
        for c in col..width {
            aug[rank][c] = aug[rank][c].mul(&inv);
        }
        for r in 0..rows {
            if r != rank && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..width {
                    let t = aug[rank][c].mul(&f);
                    aug[r][c] = aug[r][c].sub(&t);
                }
            }
        }
        rank += 1;
    }
    // residual rows must vanish
    for r in rank..rows {
        for c in n..width {
            if !aug[r][c].is_zero() {
                return Err(Error::NonIntegralDecomposition(
                    "restricted character outside the Brauer span".into(),
                ));
            }
        }
    }
    let mut entries = vec![vec![0u64; n]; table.num_chars()];
    for chi in 0..table.num_chars() {
        for phi in 0..n {
            let v = &aug[phi][n + chi];
            let int = v.as_integer().ok_or_else(|| {
                Error::NonIntegralDecomposition(format!(
                    "entry d[{chi}][{phi}] = {v} is not an integer"
                ))
            })?;
            let u: u64 = int.try_into().map_err(|_| {
                Error::NonIntegralDecomposition(format!("entry d[{chi}][{phi}] is negative"))
            })?;
            entries[chi][phi] = u;
        }
        // degree bookkeeping
        let total: u64 = (0..n)
            .map(|phi| entries[chi][phi] * brauer.character(phi).degree())
            .sum();
        if total != table.degree(chi) {
            return Err(Error::NonIntegralDecomposition(format!(
                "degrees do not add up for character {chi}"
            )));
        }
    }
    Ok(DecompositionMatrix { entries })
}

/// The block of a Brauer character: the unique block containing every
/// ordinary character with a nonzero decomposition entry.
pub fn block_of_brauer(
    dec: &DecompositionMatrix,
    blocks: &BlockSet,
    phi: usize,
) -> Result<usize> {
    let mut target: Option<usize> = None;
    for chi in 0..dec.rows() {
        if dec.entry(chi, phi) == 0 {
            continue;
        }
        let b = blocks.block_of(chi);
        match target {
            None => target = Some(b),
            Some(t) => {
                if t != b {
                    return Err(Error::BlockInconsistency(format!(
                        "Brauer character {phi} meets blocks {t} and {b}"
                    )));
                }
            }
        }
    }
    target.ok_or_else(|| {
        Error::BlockInconsistency(format!("Brauer character {phi} has an all-zero column"))
    })
}

pub fn ibr_of_block(
    dec: &DecompositionMatrix,
    blocks: &BlockSet,
    b: usize,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for phi in 0..dec.cols() {
        if block_of_brauer(dec, blocks, phi)? == b {
            out.push(phi);
        }
    }
    Ok(out)
}

/// Per generating automorphism, the permutation of IBr induced by the
/// p-regular class action.
pub fn brauer_action(spec: &ActionSpec, brauer: &BrauerTable) -> Result<Vec<Vec<usize>>> {
    let regular = brauer.regular_classes();
    let mut out = Vec::new();
    for gi in 0..spec.generator_count() {
        let inv = ActionSpec::invert_table(spec.gen_table(gi));
        let cmap = spec.class_map(&inv)?;
        // position of each regular class within the regular list
        let pos = |k: usize| regular.iter().position(|&x| x == k).unwrap();
        let mut map = Vec::with_capacity(brauer.count());
        for phi in 0..brauer.count() {
            let values: Vec<Cyclotomic> = regular
                .iter()
                .map(|&k| brauer.character(phi).value(pos(cmap[k])).clone())
                .collect();
            let img = brauer
                .index_of_values(&values)
                .expect("action permutes IBr");
            map.push(img);
        }
        out.push(map);
    }
    Ok(out)
}

pub fn act_on_brauer(spec: &ActionSpec, brauer: &BrauerTable) -> Result<OrbitData> {
    let maps = brauer_action(spec, brauer)?;
    let n = brauer.count();
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
            for m in &maps {
                if !seen[m[x]] {
                    seen[m[x]] = true;
                    orbit.push(m[x]);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let fixed = orbits.iter().filter(|o| o.len() == 1).map(|o| o[0]).collect();
    Ok(OrbitData {
        kind: ActionKind::IBr,
        orbits,
        fixed,
    })
}

pub fn invariant_brauer(spec: &ActionSpec, brauer: &BrauerTable) -> Result<Vec<usize>> {
    Ok(act_on_brauer(spec, brauer)?.fixed)
}
