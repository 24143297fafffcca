//! Quotients and product constructions.

use crate::actions::ActionSpec;
use crate::error::{Error, Result};
use crate::group::{GroupHom, PermGroup};
use crate::perm::Perm;
use std::collections::HashMap;

/// Coset-action quotient G/N together with the natural epimorphism.
pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, GroupHom)> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotASubgroup("quotient by a non-subgroup".into()));
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("quotient by a non-normal subgroup".into()));
    }
    if n.is_trivial() {
        return Ok((g.clone(), GroupHom::identity(g)));
    }
    let n_elems = n.elements()?;
    let coset_key = |p: &Perm| -> Perm {
        n_elems
            .iter()
            .map(|x| x.then(p))
            .min()
            .expect("nonempty subgroup")
    };
    let mut reps: Vec<Perm> = vec![coset_key(&g.identity())];
    let mut key_index: HashMap<Perm, u32> = HashMap::new();
    key_index.insert(reps[0].clone(), 0);
    let mut head = 0usize;
    while head < reps.len() {
        let r = reps[head].clone();
        head += 1;
        for gen in g.generators() {
            let key = coset_key(&r.then(gen));
            if !key_index.contains_key(&key) {
                key_index.insert(key.clone(), reps.len() as u32);
                reps.push(key);
            }
        }
    }
    let index = reps.len() as u128;
    assert_eq!(index, g.order() / n.order(), "coset count disagrees with the index");
    let mut q_gens = Vec::with_capacity(g.generators().len());
    for gen in g.generators() {
        let images: Vec<u32> = reps
            .iter()
            .map(|r| key_index[&coset_key(&r.then(gen))])
            .collect();
        q_gens.push(Perm::from_images(images)?);
    }
    let q = PermGroup::from_generators_with_order(reps.len(), q_gens.clone(), index)?;
    let hom = GroupHom::new(g.clone(), q.clone(), q_gens)?;
    Ok((q, hom))
}

pub struct DirectProduct {
    pub group: PermGroup,
    pub left: GroupHom,
    pub right: GroupHom,
}

pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<DirectProduct> {
    let da = a.degree();
    let db = b.degree();
    let lift_left = |p: &Perm| {
        let mut im: Vec<u32> = p.images().to_vec();
        im.extend(da as u32..(da + db) as u32);
        Perm::from_images(im).unwrap()
    };
    let lift_right = |p: &Perm| {
        let mut im: Vec<u32> = (0..da as u32).collect();
        im.extend(p.images().iter().map(|&x| x + da as u32));
        Perm::from_images(im).unwrap()
    };
    let mut gens: Vec<Perm> = a.generators().iter().map(&lift_left).collect();
    gens.extend(b.generators().iter().map(&lift_right));
    let group =
        PermGroup::from_generators_with_order(da + db, gens, a.order() * b.order())?;
    let left = GroupHom::new(
        a.clone(),
        group.clone(),
        a.generators().iter().map(&lift_left).collect(),
    )?;
    let right = GroupHom::new(
        b.clone(),
        group.clone(),
        b.generators().iter().map(&lift_right).collect(),
    )?;
    Ok(DirectProduct { group, left, right })
}

pub struct SemidirectProduct {
    pub group: PermGroup,
    /// The acted-on group, embedded by its right-regular action.
    pub embed_normal: GroupHom,
    /// The acting group on the same points, as automorphism permutations of
    /// the element list.
    pub acting: PermGroup,
    identity_point: u32,
}

impl SemidirectProduct {
    /// Splits u = α(a)·ρ(x): returns the ρ-part x of the normal copy.
    pub fn normal_part(&self, u: &Perm) -> Result<Perm> {
        let elems = self.embed_normal.source().elements()?;
        Ok(elems.get(u.apply(self.identity_point)).clone())
    }
}

/// Semidirect product G ⋊ A acting on the |G| points of G's element list:
/// G by right translation, A by its automorphism action.
pub fn semidirect_product(g: &PermGroup, spec: &ActionSpec) -> Result<SemidirectProduct> {
    if !spec.group().same_group(g) {
        return Err(Error::NotAnAutomorphism(
            "action spec targets a different group".into(),
        ));
    }
    let elems = g.elements()?;
    let n = elems.len();
    let mut rho_gens = Vec::with_capacity(g.generators().len());
    for x in g.generators() {
        let images: Vec<u32> = (0..n as u32)
            .map(|i| elems.index_of(&elems.get(i).then(x)).unwrap())
            .collect();
        rho_gens.push(Perm::from_images(images)?);
    }
    let a_gens = spec.generator_perms();
    let acting = spec.acting_group()?;
    let mut gens = rho_gens.clone();
    gens.extend(a_gens.iter().cloned());
    let order = g.order() * acting.order();
    let group = PermGroup::from_generators_with_order(n, gens, order)?;
    let embed_normal = GroupHom::new(g.clone(), group.clone(), rho_gens)?;
    Ok(SemidirectProduct {
        group,
        embed_normal,
        acting,
        identity_point: elems.identity_index(),
    })
}

pub struct CentralProduct {
    pub group: PermGroup,
    pub direct: DirectProduct,
    pub quotient_hom: GroupHom,
}

/// Central product of a and b over an identified central subgroup: the
/// quotient of a × b by the antidiagonal copy {(z, φ(z)^-1)}.
pub fn central_product(
    a: &PermGroup,
    b: &PermGroup,
    za: &PermGroup,
    iso_images: &[Perm],
) -> Result<CentralProduct> {
    if !za.is_subgroup_of(a) {
        return Err(Error::NotASubgroup("identified subgroup not inside the left factor".into()));
    }
    let central_in = |h: &PermGroup, zg: &[Perm]| {
        zg.iter()
            .all(|zi| h.generators().iter().all(|g| zi.then(g) == g.then(zi)))
    };
    if !central_in(a, za.generators()) {
        return Err(Error::NotCentral("identified subgroup is not central in the left factor".into()));
    }
    let zb = PermGroup::from_generators_with_order(b.degree(), iso_images.to_vec(), za.order())?;
    if !zb.is_subgroup_of(b) || !central_in(b, zb.generators()) {
        return Err(Error::NotCentral("image subgroup is not central in the right factor".into()));
    }
    let iso = GroupHom::new(za.clone(), b.clone(), iso_images.to_vec())?;
    if !iso.is_injective()? {
        return Err(Error::NotCentral("identification map is not an isomorphism".into()));
    }
    let direct = direct_product(a, b)?;
    let mut z_gens = Vec::new();
    for (zi, im) in za.generators().iter().zip(iso_images) {
        z_gens.push(
            direct
                .left
                .apply(zi)?
                .then(&direct.right.apply(&im.inverse())?),
        );
    }
    let z = PermGroup::from_generators_with_order(direct.group.degree(), z_gens, za.order())?;
    let (group, quotient_hom) = quotient(&direct.group, &z)?;
    Ok(CentralProduct {
        group,
        direct,
        quotient_hom,
    })
}
