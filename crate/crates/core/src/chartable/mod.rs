//! Ordinary character theory: exact tables, restriction and induction,
//! extensions and the Gallagher correspondence.

mod dixon;

pub use dixon::character_table;

use crate::cyclo::{CycKey, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{Embedding, GroupHom, PermGroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// An exact class function: one cyclotomic value per conjugacy class.
#[derive(Clone)]
pub struct ClassFunction {
    group: PermGroup,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(group: PermGroup, values: Vec<Cyclotomic>) -> Self {
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn degree_u64(&self) -> u64 {
        let d = self.values[0]
            .as_integer()
            .expect("degree is a positive integer");
        u64::try_from(d).expect("degree fits u64")
    }

    pub fn mul(&self, other: &ClassFunction) -> ClassFunction {
        assert!(self.group.same_group(&other.group), "class function group mismatch");
        ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn keys(&self) -> Vec<CycKey> {
        self.values.iter().map(|v| v.key()).collect()
    }
}

/// The full exact character table of a group; rows ordered by degree, then
/// by value sequence.
pub struct CharacterTable {
    group: PermGroup,
    irr: Vec<ClassFunction>,
    degrees: Vec<u64>,
    row_index: HashMap<Vec<CycKey>, usize>,
}

impl CharacterTable {
    pub(crate) fn assemble(
        group: PermGroup,
        irr: Vec<ClassFunction>,
        degrees: Vec<u64>,
    ) -> Result<CharacterTable> {
        let mut row_index = HashMap::new();
        for (i, chi) in irr.iter().enumerate() {
            row_index.insert(chi.keys(), i);
        }
        if row_index.len() != irr.len() {
            return Err(Error::LiftFailure("duplicate table rows".into()));
        }
        Ok(CharacterTable {
            group,
            irr,
            degrees,
            row_index,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn num_chars(&self) -> usize {
        self.irr.len()
    }

    pub fn num_classes(&self) -> usize {
        self.irr.first().map(|c| c.values().len()).unwrap_or(0)
    }

    pub fn character(&self, i: usize) -> &ClassFunction {
        &self.irr[i]
    }

    pub fn characters(&self) -> &[ClassFunction] {
        &self.irr
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        self.irr[chi].value(class)
    }

    /// Index of the row with exactly these values.
    pub fn index_of_values(&self, values: &[Cyclotomic]) -> Option<usize> {
        let keys: Vec<CycKey> = values.iter().map(|v| v.key()).collect();
        self.row_index.get(&keys).copied()
    }

    pub fn index_of(&self, f: &ClassFunction) -> Option<usize> {
        self.index_of_values(f.values())
    }

    pub fn trivial_index(&self) -> usize {
        let one = Cyclotomic::one();
        (0..self.num_chars())
            .find(|&i| self.irr[i].values().iter().all(|v| *v == one))
            .expect("trivial character present")
    }

    pub(crate) fn verify_row_orthogonality(&self) -> Result<()> {
        for i in 0..self.num_chars() {
            for j in i..self.num_chars() {
                let ip = inner_product(&self.irr[i], &self.irr[j])?;
                let expect = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if ip != expect {
                    return Err(Error::LiftFailure(format!(
                        "row orthogonality fails at ({i},{j}): got {ip}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Column orthogonality: sum over chi of chi(g_i) conj(chi(g_j)) equals
    /// delta_ij |C(g_i)|; checked exactly.
    pub fn verify_column_orthogonality(&self) -> Result<()> {
        let cls = self.group.conjugacy_classes()?;
        let order = self.group.order_u64();
        for i in 0..self.num_classes() {
            for j in i..self.num_classes() {
                let mut parts: Vec<Cyclotomic> = Vec::new();
                for chi in &self.irr {
                    let term = chi.value(i).mul(chi.value(cls.inverse_class(j)));
                    accumulate(&mut parts, term);
                }
                let total = combine(parts);
                let expect = if i == j {
                    Cyclotomic::from_integer(BigInt::from(order / cls.size(i)))
                } else {
                    Cyclotomic::zero()
                };
                if total != expect {
                    return Err(Error::LiftFailure(format!(
                        "column orthogonality fails at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Accumulates a term into per-conductor buckets to keep intermediate
/// conductors small.
fn accumulate(parts: &mut Vec<Cyclotomic>, term: Cyclotomic) {
    if term.is_zero() {
        return;
    }
    for p in parts.iter_mut() {
        if p.conductor() == term.conductor() {
            *p = p.add(&term);
            return;
        }
    }
    parts.push(term);
}

/// Combines per-conductor partial sums, merging smaller conductors first.
fn combine(mut parts: Vec<Cyclotomic>) -> Cyclotomic {
    if parts.is_empty() {
        return Cyclotomic::zero();
    }
    parts.sort_by_key(|p| p.conductor());
    let mut acc = parts.remove(0);
    for p in parts {
        acc = acc.add(&p);
    }
    acc
}

/// Exact inner product (1/|G|) sum |K| f(K) conj(g(K)).
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Cyclotomic> {
    if !f.group().same_group(g.group()) {
        return Err(Error::GroupMismatch);
    }
    let cls = f.group().conjugacy_classes()?;
    let mut parts: Vec<Cyclotomic> = Vec::new();
    for k in 0..cls.count() {
        // conj(g(K)) = g(K^{-1}) termwise at the class conductor
        let term = f
            .value(k)
            .mul(g.value(cls.inverse_class(k)))
            .scale(&BigRational::from_integer(cls.size(k).into()));
        accumulate(&mut parts, term);
    }
    let total = combine(parts);
    Ok(total.scale(&BigRational::new(BigInt::one(), f.group().order_u64().into())))
}

/// Restriction along a subgroup embedding, by class fusion.
pub fn restrict(chi: &ClassFunction, emb: &Embedding) -> Result<ClassFunction> {
    if !chi.group().same_group(emb.amb()) {
        return Err(Error::GroupMismatch);
    }
    let fusion = emb.fusion()?;
    Ok(ClassFunction::new(
        emb.sub().clone(),
        fusion.iter().map(|&k| chi.value(k).clone()).collect(),
    ))
}

/// Induction along a subgroup embedding, by the transfer formula.
pub fn induce(theta: &ClassFunction, emb: &Embedding) -> Result<ClassFunction> {
    if !theta.group().same_group(emb.sub()) {
        return Err(Error::GroupMismatch);
    }
    let fusion = emb.fusion()?;
    let g_cls = emb.amb().conjugacy_classes()?;
    let n_cls = emb.sub().conjugacy_classes()?;
    let g_order = emb.amb().order_u64();
    let n_order = emb.sub().order_u64();
    let mut values = vec![Cyclotomic::zero(); g_cls.count()];
    for k in 0..g_cls.count() {
        // |C_G(g)|/|N| * sum over N-classes c fusing to K of |c| theta(c)
        let mut parts = Vec::new();
        for c in 0..n_cls.count() {
            if fusion[c] != k {
                continue;
            }
            accumulate(
                &mut parts,
                theta
                    .value(c)
                    .scale(&BigRational::from_integer(n_cls.size(c).into())),
            );
        }
        let centralizer = g_order / g_cls.size(k);
        values[k] = combine(parts).scale(&BigRational::new(
            centralizer.into(),
            n_order.into(),
        ));
    }
    Ok(ClassFunction::new(emb.amb().clone(), values))
}

/// Pulls a class function on Q back to G along the epimorphism G -> Q.
pub fn inflate(eta_bar: &ClassFunction, hom: &GroupHom) -> Result<ClassFunction> {
    if !eta_bar.group().same_group(hom.target()) {
        return Err(Error::GroupMismatch);
    }
    let g = hom.source();
    let g_cls = g.conjugacy_classes()?;
    let q = hom.target();
    let mut values = Vec::with_capacity(g_cls.count());
    for k in 0..g_cls.count() {
        let image = hom.apply(g_cls.rep(k))?;
        values.push(eta_bar.value(q.class_of(&image)?).clone());
    }
    Ok(ClassFunction::new(g.clone(), values))
}

/// Pushes a class function of G with N in its kernel down to Q = G/N.
pub fn deflate(chi: &ClassFunction, hom: &GroupHom) -> Result<ClassFunction> {
    if !chi.group().same_group(hom.source()) {
        return Err(Error::GroupMismatch);
    }
    let q = hom.target();
    let q_cls = q.conjugacy_classes()?;
    let g_cls = hom.source().conjugacy_classes()?;
    let mut values: Vec<Option<Cyclotomic>> = vec![None; q_cls.count()];
    for k in 0..g_cls.count() {
        let image = hom.apply(g_cls.rep(k))?;
        let qk = q.class_of(&image)?;
        match &values[qk] {
            None => values[qk] = Some(chi.value(k).clone()),
            Some(v) => {
                if v != chi.value(k) {
                    return Err(Error::KernelViolation(
                        "class function does not factor through the quotient".into(),
                    ));
                }
            }
        }
    }
    Ok(ClassFunction::new(
        q.clone(),
        values.into_iter().map(Option::unwrap).collect(),
    ))
}

/// The irreducible characters of G lying over theta (an irreducible of a
/// normal subgroup), as table indices.
pub fn irr_over(
    table: &CharacterTable,
    emb: &Embedding,
    theta: &ClassFunction,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..table.num_chars() {
        let res = restrict(table.character(i), emb)?;
        if !inner_product(&res, theta)?.is_zero() {
            out.push(i);
        }
    }
    Ok(out)
}

/// Is theta invariant under conjugation by every generator of G?
pub fn is_invariant(theta: &ClassFunction, n: &PermGroup, g: &PermGroup) -> Result<bool> {
    let n_cls = n.conjugacy_classes()?;
    for gen in g.generators() {
        for c in 0..n_cls.count() {
            let conj_rep = n_cls.rep(c).conj(gen);
            let cc = n.class_of(&conj_rep)?;
            if theta.value(cc) != theta.value(c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Finds the canonical extension of a G-invariant irreducible of N to G:
/// the first table row restricting exactly to theta.
pub fn find_extension(
    table: &CharacterTable,
    emb: &Embedding,
    theta: &ClassFunction,
) -> Result<Option<usize>> {
    if !is_invariant(theta, emb.sub(), emb.amb())? {
        return Err(Error::NotInvariant(
            "extension requested for a non-invariant character".into(),
        ));
    }
    let deg = theta.degree().clone();
    for i in 0..table.num_chars() {
        if *table.character(i).degree() != deg {
            continue;
        }
        let res = restrict(table.character(i), emb)?;
        if res.values() == theta.values() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// theta_tilde * eta for the lift eta of a character of G/N.
pub fn gallagher_product(
    theta_tilde: &ClassFunction,
    eta_bar: &ClassFunction,
    hom: &GroupHom,
) -> Result<ClassFunction> {
    let eta = inflate(eta_bar, hom)?;
    Ok(theta_tilde.mul(&eta))
}

/// The Gallagher bijection Irr(G/N) -> Irr(G | theta) induced by an
/// extension theta_tilde; entries are table indices in Irr(G).
pub fn gallagher_bijection(
    table: &CharacterTable,
    quotient_table: &CharacterTable,
    theta_tilde: &ClassFunction,
    hom: &GroupHom,
) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(quotient_table.num_chars());
    for i in 0..quotient_table.num_chars() {
        let prod = gallagher_product(theta_tilde, quotient_table.character(i), hom)?;
        let idx = table.index_of(&prod).ok_or_else(|| {
            Error::NotAnExtension("Gallagher product is not irreducible".into())
        })?;
        out.push(idx);
    }
    let mut dedup = out.clone();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != out.len() {
        return Err(Error::NotAnExtension("Gallagher map is not injective".into()));
    }
    Ok(out)
}

/// For G = K·Z with Z central: the unique irreducible of G lying over both
/// chi0 (on K) and nu (on Z).
pub fn dot_with_central(
    table: &CharacterTable,
    k_emb: &Embedding,
    chi0: &ClassFunction,
    z_emb: &Embedding,
    nu: &ClassFunction,
) -> Result<usize> {
    let g = table.group();
    let k = k_emb.sub();
    let z = z_emb.sub();
    let inter = k.intersection(z)?;
    let kz_order = k.order() * z.order() / inter.order();
    if kz_order != g.order() {
        return Err(Error::IncompatibleCentral(
            "K·Z does not equal the whole group".into(),
        ));
    }
    // chi0 and nu must agree on the intersection: chi0(z) = chi0(1) nu(z)
    let i_cls = inter.conjugacy_classes()?;
    for c in 0..i_cls.count() {
        let rep = i_cls.rep(c);
        let chi_val = chi0.value(k.class_of(rep)?);
        let nu_val = nu.value(z.class_of(rep)?);
        if *chi_val != chi0.degree().mul(nu_val) {
            return Err(Error::IncompatibleCentral(format!(
                "central characters disagree at {rep}"
            )));
        }
    }
    let mut found = Vec::new();
    for i in 0..table.num_chars() {
        let res_k = restrict(table.character(i), k_emb)?;
        if inner_product(&res_k, chi0)?.is_zero() {
            continue;
        }
        let res_z = restrict(table.character(i), z_emb)?;
        if inner_product(&res_z, nu)?.is_zero() {
            continue;
        }
        found.push(i);
    }
    if found.len() != 1 {
        return Err(Error::IncompatibleCentral(format!(
            "expected a unique character over (chi0, nu), found {}",
            found.len()
        )));
    }
    Ok(found[0])
}

/// The regular character, for tests and sanity checks.
pub fn regular_character(group: &PermGroup) -> Result<ClassFunction> {
    let cls = group.conjugacy_classes()?;
    let mut values = vec![Cyclotomic::zero(); cls.count()];
    values[0] = Cyclotomic::from_integer(BigInt::from(group.order_u64()));
    Ok(ClassFunction::new(group.clone(), values))
}

pub fn is_nonneg_integer(c: &Cyclotomic) -> bool {
    c.as_integer().map(|i| !i.is_negative()).unwrap_or(false)
}
