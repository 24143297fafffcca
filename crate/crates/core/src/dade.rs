//! The Dade-Isaacs pairing ⟨⟨x,y⟩⟩, perpendicular subgroups and the
//! ramification group G[b], computed by its stabilizer description and
//! guarded by choice-independence assertions.

use crate::blocks::{block_stabilizer, blocks_covering, canonical_character, BlockSet};
use crate::chartable::{restrict, ClassFunction};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{Embedding, GroupHom, PermGroup};
use crate::perm::Perm;
use std::collections::HashMap;
use std::sync::Mutex;

/// Evaluation context for the pairing relative to (G, N, θ): tables of the
/// cyclic extensions N⟨y⟩ are cached per coset of N.
pub struct PairingContext {
    g: PermGroup,
    n: PermGroup,
    theta: ClassFunction,
    cache: Mutex<HashMap<Perm, CosetData>>,
}

#[derive(Clone)]
struct CosetData {
    j: PermGroup,
    /// order of yN in G/N
    t: u64,
    /// indices in Irr(J) of the extensions of theta
    extensions: Vec<usize>,
    /// coset power of each class representative: rep in y^s N
    coset_power: Vec<u64>,
}

impl PairingContext {
    pub fn new(g: PermGroup, n: PermGroup, theta: ClassFunction) -> Result<Self> {
        if !n.is_normal_in(&g) {
            return Err(Error::NotNormal("pairing context requires N normal in G".into()));
        }
        if !crate::chartable::is_invariant(&theta, &n, &g)? {
            return Err(Error::NotInvariant(
                "pairing context requires a G-invariant character".into(),
            ));
        }
        Ok(PairingContext {
            g,
            n,
            theta,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.g
    }

    pub fn normal(&self) -> &PermGroup {
        &self.n
    }

    pub fn theta(&self) -> &ClassFunction {
        &self.theta
    }

    fn coset_key(&self, y: &Perm) -> Result<Perm> {
        let elems = self.n.elements()?;
        Ok(elems.iter().map(|x| x.then(y)).min().unwrap())
    }

    fn coset_data(&self, y: &Perm) -> Result<CosetData> {
        let key = self.coset_key(y)?;
        if let Some(d) = self.cache.lock().unwrap().get(&key) {
            return Ok(d.clone());
        }
        let j = self.n.extend_by(y)?;
        let t = (j.order() / self.n.order()) as u64;
        let tj = j.character_table()?;
        let emb = Embedding::new(self.n.clone(), j.clone())?;
        let mut extensions = Vec::new();
        for i in 0..tj.num_chars() {
            if tj.degree(i) != self.theta.degree_u64() {
                continue;
            }
            if restrict(tj.character(i), &emb)?.values() == self.theta.values() {
                extensions.push(i);
            }
        }
        if extensions.is_empty() {
            return Err(Error::NotAnExtension(
                "theta does not extend to the cyclic extension N<y>".into(),
            ));
        }
        // coset power of each class representative of J
        let j_cls = j.conjugacy_classes()?;
        let y_inv = y.inverse();
        let mut coset_power = Vec::with_capacity(j_cls.count());
        for c in 0..j_cls.count() {
            let mut probe = j_cls.rep(c).clone();
            let mut s = 0u64;
            while !self.n.contains(&probe) {
                probe = probe.then(&y_inv);
                s += 1;
                assert!(s <= t, "class representative escapes the coset ladder");
            }
            coset_power.push(s);
        }
        let data = CosetData {
            j,
            t,
            extensions,
            coset_power,
        };
        self.cache.lock().unwrap().insert(key, data.clone());
        Ok(data)
    }

    /// The pairing ⟨⟨x,y⟩⟩: extend theta to ψ on N⟨y⟩, write ψ^x = λψ and
    /// return λ(y), a root of unity.
    pub fn pairing(&self, x: &Perm, y: &Perm) -> Result<Cyclotomic> {
        self.pairing_with_extension(x, y, None)
    }

    /// Same, but forcing one particular cached extension (for the
    /// well-definedness checks).
    pub fn pairing_with_extension(
        &self,
        x: &Perm,
        y: &Perm,
        which: Option<usize>,
    ) -> Result<Cyclotomic> {
        if !self.n.contains(&x.comm(y)) {
            return Err(Error::CommutatorNotInN);
        }
        if self.n.contains(y) {
            return Ok(Cyclotomic::one());
        }
        let data = self.coset_data(y)?;
        let j = &data.j;
        let tj = j.character_table()?;
        let psi_idx = data.extensions[which.unwrap_or(0)];
        let psi = tj.character(psi_idx);
        // ψ^x as a row over the classes of J
        let x_inv = x.inverse();
        let j_cls = j.conjugacy_classes()?;
        let mut psi_x = Vec::with_capacity(j_cls.count());
        for c in 0..j_cls.count() {
            let moved = j_cls.rep(c).conj(&x_inv);
            assert!(j.contains(&moved), "x does not normalize N<y>");
            psi_x.push(psi.value(j.class_of(&moved)?).clone());
        }
        // ψ^x = λ_e ψ for exactly one linear character λ_e of J/N
        let mut found: Option<u64> = None;
        for e in 0..data.t {
            let matches = (0..j_cls.count()).all(|c| {
                let lam = Cyclotomic::root_of_unity(data.t, (e * data.coset_power[c]) as i64);
                psi_x[c] == lam.mul(psi.value(c))
            });
            if matches {
                assert!(found.is_none(), "two distinct twist characters match");
                found = Some(e);
            }
        }
        let e = found.expect("Gallagher twist exists for conjugate extensions");
        Ok(Cyclotomic::root_of_unity(data.t, e as i64))
    }

    /// How many extensions N⟨y⟩ offers (for exhaustive well-definedness
    /// sweeps).
    pub fn extension_count(&self, y: &Perm) -> Result<usize> {
        if self.n.contains(y) {
            return Ok(1);
        }
        Ok(self.coset_data(y)?.extensions.len())
    }
}

/// H^⊥ ∩ K = { k in K : ⟨⟨k,h⟩⟩ = 1 for all h in H }; the result is a
/// subgroup containing N ∩ K, certified by full closure.
pub fn perp(ctx: &PairingContext, h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    for hg in h.generators() {
        for kg in k.generators() {
            if !ctx.n.contains(&hg.comm(kg)) {
                return Err(Error::CommutatorConditionFails);
            }
        }
    }
    // the pairing is constant on N-cosets in both arguments
    let h_elems = h.elements()?;
    let mut h_reps: Vec<Perm> = Vec::new();
    {
        let mut seen = std::collections::HashSet::new();
        for he in h_elems.iter() {
            let key = ctx.coset_key(he)?;
            if seen.insert(key) {
                h_reps.push(he.clone());
            }
        }
    }
    let k_elems = k.elements()?;
    let mut coset_verdict: HashMap<Perm, bool> = HashMap::new();
    let mut members: Vec<Perm> = Vec::new();
    for ke in k_elems.iter() {
        let key = ctx.coset_key(ke)?;
        let ok = match coset_verdict.get(&key) {
            Some(&v) => v,
            None => {
                let mut all_one = true;
                for hr in &h_reps {
                    // ⟨⟨k,h⟩⟩ with x = k, y = h
                    if ctx.pairing(ke, hr)? != Cyclotomic::one() {
                        all_one = false;
                        break;
                    }
                }
                coset_verdict.insert(key, all_one);
                all_one
            }
        };
        if ok {
            members.push(ke.clone());
        }
    }
    let sub = PermGroup::from_members(k.degree(), members.iter())?;
    let nk = ctx.n.intersection(k)?;
    assert!(
        nk.is_subgroup_of(&sub),
        "perpendicular subgroup must contain N ∩ K"
    );
    Ok(sub)
}

/// One evaluated witness for the ramification-group computation.
pub struct RamificationWitness {
    pub defect_class: Option<usize>,
    pub eta_index: usize,
    pub group_order: u128,
}

pub struct RamificationResult {
    pub group: PermGroup,
    pub witnesses: Vec<RamificationWitness>,
}

/// G[b] = N · (H^⊥ ∩ K) for any defect group D of b and canonical character
/// η of b: K the stabilizer of η in D·C_G(D), H the stabilizer in N_N(D).
/// Recomputed over every available (D, η) choice (capped at 8) and asserted
/// identical.
pub fn ramification_group(
    g: &PermGroup,
    n_blocks: &BlockSet,
    b_idx: usize,
) -> Result<RamificationResult> {
    let n = n_blocks.group();
    let (stab, _) = block_stabilizer(g, n_blocks, b_idx)?;
    if stab.order() != g.order() {
        return Err(Error::NotInvariantBlock(format!(
            "block {b_idx} has stabilizer of index {}",
            g.order() / stab.order()
        )));
    }
    // choice witnesses: the defect groups recorded on the block plus one
    // deliberate conjugate
    let mut ds: Vec<(Option<usize>, PermGroup)> = Vec::new();
    for (i, d) in n_blocks.block(b_idx).defect_groups().iter().enumerate() {
        ds.push((Some(n_blocks.block(b_idx).defect_classes()[i]), d.clone()));
    }
    if let Some(t) = g
        .generators()
        .iter()
        .find(|t| {
            let moved = ds[0].1.conjugated(t).unwrap();
            !moved.same_group(&ds[0].1)
        })
        .cloned()
    {
        ds.push((None, ds[0].1.conjugated(&t)?));
    }
    let mut result: Option<PermGroup> = None;
    let mut witnesses = Vec::new();
    for (dc, d) in ds {
        let canon = canonical_character(n_blocks, b_idx, &d)?;
        let dc_n = canon.dc.clone();
        let dc_table = dc_n.character_table()?;
        let c_gd = g.centralizer_of_group(&d)?;
        let dcg = d.join(&c_gd)?;
        let mut etas = canon.all.clone();
        etas.truncate(8);
        for eta in etas {
            if witnesses.len() >= 8 && result.is_some() {
                break;
            }
            let eta_row = dc_table.character(eta).clone();
            let k = stabilizer_of_character(&dcg, &dc_n, &eta_row)?;
            let n_nd = n.normalizer(&d)?;
            let h = stabilizer_of_character(&n_nd, &dc_n, &eta_row)?;
            // pairing relative to (⟨H,K,DC_N(D)⟩, D C_N(D), η)
            let ambient = dc_n.join(&h)?.join(&k)?;
            let ctx = PairingContext::new(ambient, dc_n.clone(), eta_row)?;
            let m = perp(&ctx, &h, &k)?;
            let gb = n.join(&m)?;
            match &result {
                None => result = Some(gb.clone()),
                Some(r) => assert!(
                    r.same_group(&gb),
                    "ramification group depends on the (D, eta) choice"
                ),
            }
            witnesses.push(RamificationWitness {
                defect_class: dc,
                eta_index: eta,
                group_order: gb.order(),
            });
        }
    }
    let group = result.expect("at least one witness evaluated");
    assert!(n.is_subgroup_of(&group));
    assert!(group.is_normal_in(g), "G[b] must be normal in G");
    Ok(RamificationResult { group, witnesses })
}

/// Stabilizer of a character of C inside a supergroup U normalizing C.
fn stabilizer_of_character(
    u: &PermGroup,
    c: &PermGroup,
    chi: &ClassFunction,
) -> Result<PermGroup> {
    let c_cls = c.conjugacy_classes()?;
    let u_elems = u.elements()?;
    let fixes = |x: &Perm| -> Result<bool> {
        let x_inv = x.inverse();
        for k in 0..c_cls.count() {
            let moved = c_cls.rep(k).conj(&x_inv);
            if !c.contains(&moved) {
                return Ok(false);
            }
            if chi.value(c.class_of(&moved)?) != chi.value(k) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut members = Vec::new();
    for x in u_elems.iter() {
        if fixes(x)? {
            members.push(x.clone());
        }
    }
    PermGroup::from_members(u.degree(), members.iter())
}

/// Theorem-level check: every block of G[b] covering b is covered by exactly
/// one block of G.
pub fn unique_covering_check(
    g: &PermGroup,
    n_blocks: &BlockSet,
    b_idx: usize,
) -> Result<bool> {
    let p = n_blocks.p();
    let ram = ramification_group(g, n_blocks, b_idx)?;
    let gb = ram.group;
    let gb_blocks = gb.block_partition(p)?;
    let g_blocks = g.block_partition(p)?;
    let emb_n_gb = Embedding::new(n_blocks.group().clone(), gb.clone())?;
    let emb_gb_g = Embedding::new(gb.clone(), g.clone())?;
    for bp in 0..gb_blocks.count() {
        if !crate::blocks::covers(&gb_blocks, bp, n_blocks, b_idx, &emb_n_gb)? {
            continue;
        }
        let over = blocks_covering(&g_blocks, &gb_blocks, bp, &emb_gb_g)?;
        if over.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compatibility with central-complement quotients: G[b]/Z equals
/// (G/Z)[b̄] for Z normal with N ∩ Z = 1.
pub fn quotient_compat_check(
    g: &PermGroup,
    n_blocks: &BlockSet,
    b_idx: usize,
    z: &PermGroup,
) -> Result<bool> {
    let n = n_blocks.group();
    if n.intersection(z)?.order() != 1 {
        return Err(Error::NotNormal("Z must intersect N trivially".into()));
    }
    let (gq, hom) = crate::group::quotient(g, z)?;
    // image of N in the quotient, isomorphic to N
    let n_bar_gens: Vec<Perm> = n
        .generators()
        .iter()
        .map(|x| hom.apply(x))
        .collect::<Result<_>>()?;
    let n_bar = PermGroup::from_generators_with_order(gq.degree(), n_bar_gens, n.order())?;
    // transport the block: theta corresponds classwise under the isomorphism
    let theta = n_blocks.block(b_idx).members()[0];
    let tn = n_blocks.table();
    let n_cls = n.conjugacy_classes()?;
    let nb_cls = n_bar.conjugacy_classes()?;
    let mut values: Vec<Option<Cyclotomic>> = vec![None; nb_cls.count()];
    for c in 0..n_cls.count() {
        let image = hom.apply(n_cls.rep(c))?;
        let cc = n_bar.class_of(&image)?;
        assert!(values[cc].is_none(), "N -> NZ/Z is an isomorphism on classes");
        values[cc] = Some(tn.value(theta, c).clone());
    }
    let theta_bar = ClassFunction::new(
        n_bar.clone(),
        values.into_iter().map(Option::unwrap).collect(),
    );
    let nb_blocks = n_bar.block_partition(n_blocks.p())?;
    let tb = n_bar.character_table()?;
    let theta_bar_idx = tb
        .index_of(&theta_bar)
        .expect("transported character is irreducible");
    let b_bar = nb_blocks.block_of(theta_bar_idx);
    // both sides
    let ram = ramification_group(g, n_blocks, b_idx)?;
    let image_gens: Vec<Perm> = ram
        .group
        .generators()
        .iter()
        .map(|x| hom.apply(x))
        .collect::<Result<_>>()?;
    let lhs = PermGroup::from_generators(gq.degree(), image_gens)?;
    let ram_q = ramification_group(&gq, &nb_blocks, b_bar)?;
    Ok(lhs.same_group(&ram_q.group))
}

/// Lemma-level check: an extension ρ of θ to K restricts H-invariantly on
/// H^⊥ ∩ K.
pub fn perp_restriction_invariance(
    ctx: &PairingContext,
    h: &PermGroup,
    k: &PermGroup,
) -> Result<Option<bool>> {
    if !ctx.normal().is_subgroup_of(k) {
        return Err(Error::NotASubgroup("the lemma requires N ≤ K".into()));
    }
    let tk = k.character_table()?;
    let emb = Embedding::new(ctx.normal().clone(), k.clone())?;
    let Some(rho) = crate::chartable::find_extension(&tk, &emb, ctx.theta())? else {
        return Ok(None);
    };
    let m = perp(ctx, h, k)?;
    let emb_m = Embedding::new(m.clone(), k.clone())?;
    let res = restrict(tk.character(rho), &emb_m)?;
    Ok(Some(crate::chartable::is_invariant(&res, &m, h)?))
}
