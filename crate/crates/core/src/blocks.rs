//! p-blocks: central characters, reduction modulo p, block partitions,
//! defect groups, induction, covering, domination and stabilizers.

use crate::chartable::{inner_product, restrict, CharacterTable, ClassFunction};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::ff::{FfElt, FfRef};
use crate::group::{Embedding, GroupHom, PermGroup};
use crate::perm::Perm;
use crate::util::{p_part, valuation};
use std::sync::Arc;

/// The reduction from cyclotomic integers onto GF(p^k): the fixed primitive
/// m-th root of unity goes to x^((p^k-1)/m) for the p'-part m of the group
/// exponent, and p-power-order roots go to 1.
pub struct ModularReduction {
    p: u64,
    field: FfRef,
    exponent: u64,
    m: u64,
    /// inverse of the p-part of the exponent, mod m
    s: u64,
}

impl ModularReduction {
    pub fn new(p: u64, exponent: u64) -> Result<ModularReduction> {
        let m = exponent / p_part(exponent, p);
        // minimal k with m | p^k - 1
        let mut k = 1usize;
        let mut pk = p % m.max(1);
        if m > 1 {
            while pk != 1 {
                pk = pk * p % m;
                k += 1;
                if k > crate::ff::MAX_GF_DEGREE {
                    return Err(Error::TooLarge(format!(
                        "no supported splitting field for p={p}, m={m}"
                    )));
                }
            }
        }
        let field = crate::ff::Ff::new(p, k)?;
        let pa = p_part(exponent, p) % m.max(1);
        let s = if m == 1 {
            0
        } else {
            // pa is invertible mod m
            (1..m).find(|&s| pa * s % m == 1).expect("p-part invertible mod m")
        };
        Ok(ModularReduction {
            p,
            field,
            exponent,
            m,
            s,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> &FfRef {
        &self.field
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn p_prime_part(&self) -> u64 {
        self.m
    }

    /// Image of ζ_n for n dividing the exponent.
    pub fn root_image(&self, n: u64) -> Result<FfElt> {
        if n == 0 || self.exponent % n != 0 {
            return Err(Error::TooLarge(format!(
                "conductor {n} does not divide the exponent {}",
                self.exponent
            )));
        }
        if self.m == 1 {
            return Ok(self.field.one());
        }
        let zm = self.field.root_of_unity(self.m)?;
        let e = (self.s as u128 * (self.exponent / n) as u128 % self.m as u128) as u64;
        Ok(self.field.pow(zm, e))
    }

    /// The star map on cyclotomic values with p'-denominator.
    pub fn reduce(&self, c: &Cyclotomic) -> Result<FfElt> {
        let c = if self.exponent % c.conductor() == 0 {
            c.clone()
        } else {
            let c2 = c.canonical();
            if self.exponent % c2.conductor() != 0 {
                return Err(Error::TooLarge(format!(
                    "value of conductor {} cannot be reduced at exponent {}",
                    c2.conductor(),
                    self.exponent
                )));
            }
            c2
        };
        let zeta = self.root_image(c.conductor())?;
        let p_big = num_bigint::BigInt::from(self.p);
        let to_mod = |x: &num_bigint::BigInt| -> u64 {
            use num_traits::ToPrimitive;
            let r = ((x % &p_big) + &p_big) % &p_big;
            r.to_u64().unwrap()
        };
        let den_mod = to_mod(c.denominator());
        if den_mod == 0 {
            return Err(Error::LiftFailure(
                "denominator divisible by p in modular reduction".into(),
            ));
        }
        let den_inv = self.field.inv(self.field.from_u64(den_mod));
        let mut acc = self.field.zero();
        let mut zpow = self.field.one();
        for coeff in c.numerators() {
            let a = self.field.from_u64(to_mod(coeff));
            if !a.is_zero() {
                acc = self.field.add(acc, self.field.mul(a, zpow));
            }
            zpow = self.field.mul(zpow, zeta);
        }
        Ok(self.field.mul(acc, den_inv))
    }

    /// Lift of z_d^j back to ζ_d^j, for d dividing the p'-part.
    pub fn lift_root(&self, d: u64, j: u64) -> Result<Cyclotomic> {
        if d == 0 || self.m % d != 0 {
            return Err(Error::TooLarge(format!("{d} does not divide the p'-part {}", self.m)));
        }
        Ok(Cyclotomic::root_of_unity(d, j as i64))
    }

    /// Discrete log of xi against the fixed primitive d-th root; d | m.
    pub fn log_root(&self, d: u64, xi: FfElt) -> Result<Option<u64>> {
        let zd = if d == 1 {
            self.field.one()
        } else {
            self.field.root_of_unity(d)?
        };
        let mut pw = self.field.one();
        for j in 0..d {
            if pw == xi {
                return Ok(Some(j));
            }
            pw = self.field.mul(pw, zd);
        }
        Ok(None)
    }
}

/// The central character of an irreducible: λ(K+) = |K| χ(g_K) / χ(1).
pub struct CentralCharacter {
    values: Vec<Cyclotomic>,
}

impl CentralCharacter {
    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }
}

pub fn central_character(table: &CharacterTable, chi: usize) -> Result<CentralCharacter> {
    let cls = table.group().conjugacy_classes()?;
    let deg = table.degree(chi);
    let mut values = Vec::with_capacity(cls.count());
    for k in 0..cls.count() {
        let v = table.value(chi, k).scale(&num_rational::BigRational::new(
            cls.size(k).into(),
            deg.into(),
        ));
        if !v.is_algebraic_integer() {
            return Err(Error::LiftFailure(format!(
                "central character value at class {k} is not an algebraic integer"
            )));
        }
        values.push(v);
    }
    Ok(CentralCharacter { values })
}

/// A p-block: member characters, reduced central character, defect data.
pub struct Block {
    p: u64,
    members: Vec<usize>,
    lambda_star: Vec<FfElt>,
    defect: u32,
    defect_groups: Vec<PermGroup>,
    defect_classes: Vec<usize>,
}

impl Block {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn lambda_star(&self) -> &[FfElt] {
        &self.lambda_star
    }

    pub fn defect(&self) -> u32 {
        self.defect
    }

    pub fn defect_groups(&self) -> &[PermGroup] {
        &self.defect_groups
    }

    pub fn defect_classes(&self) -> &[usize] {
        &self.defect_classes
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// The p-blocks of a group, with the character table they partition.
pub struct BlockSet {
    group: PermGroup,
    p: u64,
    table: Arc<CharacterTable>,
    reduction: ModularReduction,
    blocks: Vec<Block>,
    block_of: Vec<usize>,
}

impl BlockSet {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn reduction(&self) -> &ModularReduction {
        &self.reduction
    }

    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> &Block {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Block index of a character (by table index).
    pub fn block_of(&self, chi: usize) -> usize {
        self.block_of[chi]
    }

    /// The block containing the trivial character.
    pub fn principal_block(&self) -> usize {
        self.block_of(self.table.trivial_index())
    }

    /// Index of the block with the given reduced central character, if any.
    pub fn find_by_lambda_star(&self, lambda: &[FfElt]) -> Option<usize> {
        self.blocks.iter().position(|b| b.lambda_star == lambda)
    }
}

pub fn block_partition(group: &PermGroup, p: u64) -> Result<BlockSet> {
    if !crate::util::is_prime(p) {
        return Err(Error::TooLarge(format!("{p} is not prime")));
    }
    let table = group.character_table()?;
    let cls = group.conjugacy_classes()?;
    let reduction = ModularReduction::new(p, group.exponent()?)?;
    let n_chars = table.num_chars();
    let mut stars: Vec<Vec<FfElt>> = Vec::with_capacity(n_chars);
    for chi in 0..n_chars {
        let lambda = central_character(&table, chi)?;
        let star: Vec<FfElt> = lambda
            .values()
            .iter()
            .map(|v| reduction.reduce(v))
            .collect::<Result<_>>()?;
        stars.push(star);
    }
    let mut block_of = vec![usize::MAX; n_chars];
    let mut reps: Vec<usize> = Vec::new();
    for chi in 0..n_chars {
        if let Some(b) = reps.iter().position(|&r| stars[r] == stars[chi]) {
            block_of[chi] = b;
        } else {
            block_of[chi] = reps.len();
            reps.push(chi);
        }
    }
    let g_order = group.order_u64();
    let a = valuation(g_order, p);
    let mut blocks = Vec::with_capacity(reps.len());
    for (b, &rep) in reps.iter().enumerate() {
        let members: Vec<usize> = (0..n_chars).filter(|&c| block_of[c] == b).collect();
        let min_v = members
            .iter()
            .map(|&c| valuation(table.degree(c), p))
            .min()
            .unwrap();
        let defect = a - min_v;
        let (defect_groups, defect_classes) =
            defect_groups_for(group, &cls, &stars[rep], p, defect)?;
        blocks.push(Block {
            p,
            members,
            lambda_star: stars[rep].clone(),
            defect,
            defect_groups,
            defect_classes,
        });
    }
    Ok(BlockSet {
        group: group.clone(),
        p,
        table,
        reduction,
        blocks,
        block_of,
    })
}

/// Defect-class rule: among classes with nonvanishing reduced central
/// character, take those whose centralizer has minimal p-part; the defect
/// groups are Sylow p-subgroups of those centralizers.  The order must
/// match p^defect exactly.
fn defect_groups_for(
    group: &PermGroup,
    cls: &crate::group::ConjugacyClasses,
    star: &[FfElt],
    p: u64,
    defect: u32,
) -> Result<(Vec<PermGroup>, Vec<usize>)> {
    let g_order = group.order_u64();
    let mut best: Option<u64> = None;
    let mut chosen: Vec<usize> = Vec::new();
    for k in 0..cls.count() {
        if star[k].is_zero() {
            continue;
        }
        let cent_order = g_order / cls.size(k);
        let cp = p_part(cent_order, p);
        match best {
            None => {
                best = Some(cp);
                chosen = vec![k];
            }
            Some(b) if cp < b => {
                best = Some(cp);
                chosen = vec![k];
            }
            Some(b) if cp == b => chosen.push(k),
            _ => {}
        }
    }
    if chosen.is_empty() {
        return Err(Error::DefectClassNotFound(
            "reduced central character vanishes everywhere".into(),
        ));
    }
    let mut groups = Vec::new();
    for &k in &chosen {
        let cent = group.centralizer(cls.rep(k))?;
        let d = cent.sylow(p)?;
        if d.order() != (p as u128).pow(defect) {
            return Err(Error::DefectClassNotFound(format!(
                "Sylow of the defect-class centralizer has order {}, expected p^{defect}",
                d.order()
            )));
        }
        groups.push(d);
    }
    // all listed defect groups must be conjugate
    if groups.len() > 1 {
        let elems = group.elements()?;
        for d in &groups[1..] {
            let conjugate = elems.iter().any(|g| {
                groups[0]
                    .generators()
                    .iter()
                    .all(|x| d.contains(&x.conj(g)))
            });
            if !conjugate {
                return Err(Error::DefectClassNotFound(
                    "defect groups from different defect classes are not conjugate".into(),
                ));
            }
        }
    }
    Ok((groups, chosen))
}

/// Does block B of G cover block b of the normal subgroup?
pub fn covers(
    g_blocks: &BlockSet,
    b_idx: usize,
    n_blocks: &BlockSet,
    b_sub: usize,
    emb: &Embedding,
) -> Result<bool> {
    let g_table = g_blocks.table();
    let n_table = n_blocks.table();
    for &chi in g_blocks.block(b_idx).members() {
        let res = restrict(g_table.character(chi), emb)?;
        for &theta in n_blocks.block(b_sub).members() {
            if !inner_product(&res, n_table.character(theta))?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The blocks of G covering a block of N.
pub fn blocks_covering(
    g_blocks: &BlockSet,
    n_blocks: &BlockSet,
    b_sub: usize,
    emb: &Embedding,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for b in 0..g_blocks.count() {
        if covers(g_blocks, b, n_blocks, b_sub, emb)? {
            out.push(b);
        }
    }
    Ok(out)
}

/// The blocks of the normal subgroup covered by one block of G.
pub fn blocks_covered_by(
    g_blocks: &BlockSet,
    b_idx: usize,
    n_blocks: &BlockSet,
    emb: &Embedding,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for b_sub in 0..n_blocks.count() {
        if covers(g_blocks, b_idx, n_blocks, b_sub, emb)? {
            out.push(b_sub);
        }
    }
    Ok(out)
}

/// Brauer-style block induction from a subgroup: transfers the reduced
/// central character over intersected classes and looks it up among the
/// blocks of G.  None when the transfer is not a block.
pub fn block_induction(
    h_blocks: &BlockSet,
    b_idx: usize,
    g_blocks: &BlockSet,
    emb: &Embedding,
) -> Result<Option<usize>> {
    let g = g_blocks.group();
    let h_table = h_blocks.table();
    let g_cls = g.conjugacy_classes()?;
    let fusion = emb.fusion()?;
    // exact lambda of the first member of b
    let theta = h_blocks.block(b_idx).members()[0];
    let lambda = central_character(h_table, theta)?;
    let reduction = g_blocks.reduction();
    let mut induced = Vec::with_capacity(g_cls.count());
    for k in 0..g_cls.count() {
        let mut acc = Cyclotomic::zero();
        for (c, &fk) in fusion.iter().enumerate() {
            if fk == k {
                acc = acc.add(lambda.value(c));
            }
        }
        induced.push(reduction.reduce(&acc)?);
    }
    Ok(g_blocks.find_by_lambda_star(&induced))
}

/// The block of G/Z dominated by B (Z central, contained in every kernel).
pub fn dominated_block(
    g_blocks: &BlockSet,
    b_idx: usize,
    z: &PermGroup,
    hom: &GroupHom,
    q_blocks: &BlockSet,
) -> Result<usize> {
    let g_table = g_blocks.table();
    let g = g_blocks.group();
    // kernel condition
    for &chi in g_blocks.block(b_idx).members() {
        for zg in z.generators() {
            let k = g.class_of(zg)?;
            if g_table.value(chi, k) != g_table.character(chi).degree() {
                return Err(Error::KernelViolation(format!(
                    "character {chi} does not contain the central subgroup in its kernel"
                )));
            }
        }
    }
    let q_table = q_blocks.table();
    let mut target: Option<usize> = None;
    for &chi in g_blocks.block(b_idx).members() {
        let deflated = crate::chartable::deflate(g_table.character(chi), hom)?;
        let q_idx = q_table
            .index_of(&deflated)
            .expect("deflated irreducible stays irreducible");
        let qb = q_blocks.block_of(q_idx);
        match target {
            None => target = Some(qb),
            Some(t) => assert_eq!(t, qb, "dominated block is not well-defined"),
        }
    }
    Ok(target.unwrap())
}

/// Canonical characters of b: irreducibles η of D·C_N(D) with D in the
/// kernel and bl(η)^N = b.  Returns the group D·C_N(D), all indices, and the
/// deterministic representative.
pub struct CanonicalCharacters {
    pub dc: PermGroup,
    pub all: Vec<usize>,
    pub representative: usize,
}

pub fn canonical_character(
    n_blocks: &BlockSet,
    b_idx: usize,
    d: &PermGroup,
) -> Result<CanonicalCharacters> {
    let n = n_blocks.group();
    let c_nd = n.centralizer_of_group(d)?;
    let dc = d.join(&c_nd)?;
    let dc_table = dc.character_table()?;
    let dc_blocks = dc.block_partition(n_blocks.p())?;
    let emb = Embedding::new(dc.clone(), n.clone())?;
    let mut all = Vec::new();
    for eta in 0..dc_table.num_chars() {
        // D in the kernel
        let mut in_kernel = true;
        for dg in d.generators() {
            let k = dc.class_of(dg)?;
            if dc_table.value(eta, k) != dc_table.character(eta).degree() {
                in_kernel = false;
                break;
            }
        }
        if !in_kernel {
            continue;
        }
        let eta_block = dc_blocks.block_of(eta);
        if block_induction(&dc_blocks, eta_block, n_blocks, &emb)? == Some(b_idx) {
            all.push(eta);
        }
    }
    if all.is_empty() {
        return Err(Error::NoCanonicalCharacter(format!(
            "block {b_idx} admits no canonical character on D·C_N(D)"
        )));
    }
    let representative = all[0];
    Ok(CanonicalCharacters {
        dc,
        all,
        representative,
    })
}

/// Image of a block of N under conjugation by u (normalizing N): the block
/// containing θ^u.
pub fn block_conjugate(n_blocks: &BlockSet, b_idx: usize, u: &Perm) -> Result<usize> {
    let n = n_blocks.group();
    let table = n_blocks.table();
    let cls = n.conjugacy_classes()?;
    let theta = n_blocks.block(b_idx).members()[0];
    let u_inv = u.inverse();
    let mut values = Vec::with_capacity(cls.count());
    for c in 0..cls.count() {
        let moved = cls.rep(c).conj(&u_inv);
        values.push(table.value(theta, n.class_of(&moved)?).clone());
    }
    let image = table
        .index_of_values(&values)
        .expect("conjugate of an irreducible is irreducible");
    Ok(n_blocks.block_of(image))
}

/// Stabilizer of a block of N in G, with the block orbit; orbit-stabilizer
/// certified.
pub fn block_stabilizer(
    g: &PermGroup,
    n_blocks: &BlockSet,
    b_idx: usize,
) -> Result<(PermGroup, Vec<usize>)> {
    let mut orbit: Vec<usize> = vec![b_idx];
    let mut transversal: Vec<Perm> = vec![g.identity()];
    let mut schreier: Vec<Perm> = Vec::new();
    let mut head = 0;
    while head < orbit.len() {
        let b = orbit[head];
        let u = transversal[head].clone();
        head += 1;
        for gen in g.generators() {
            let img = block_conjugate(n_blocks, b, gen)?;
            if let Some(pos) = orbit.iter().position(|&x| x == img) {
                // Schreier generator stabilizes the base block
                let s = u.then(gen).then(&transversal[pos].inverse());
                if !s.is_identity() {
                    schreier.push(s);
                }
            } else {
                orbit.push(img);
                transversal.push(u.then(gen));
            }
        }
    }
    let stab_order = g.order() / orbit.len() as u128;
    let stab = PermGroup::from_generators_with_order(g.degree(), schreier, stab_order)?;
    Ok((stab, orbit))
}
