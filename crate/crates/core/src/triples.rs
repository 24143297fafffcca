//! Character-triple machinery: modular realizations of invariant characters,
//! intertwiners, factor sets, the central extension X~ and the bijection
//! sigma onto a triple with central kernel, with block compatibility checks.

use crate::actions::ActionSpec;
use crate::blocks::ModularReduction;
use crate::brauer::{brauer_character, chop, FfModule};
use crate::chartable::{restrict, ClassFunction};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::ff::{Ff, FfElt, FfRef};
use crate::ffmat::Mat;
use crate::group::{quotient, semidirect_product, Embedding, GroupHom, PermGroup};
use crate::perm::Perm;
use crate::util::{lcm, prime_one_mod};
use std::collections::HashMap;
use std::sync::Arc;

pub const MAX_EXTENSION_POINTS: u128 = 100_000;
pub const MAX_PROJECTIVE_DEGREE: u64 = 32;

/// An l-modular matrix representation affording a given ordinary character:
/// the constituent of the regular module whose Brauer lift equals theta.
pub fn modular_rep_affording(
    n: &PermGroup,
    theta: &ClassFunction,
    l: u64,
) -> Result<(FfModule, ModularReduction)> {
    let exponent = n.exponent()?;
    if l % exponent != 1 || n.order_u64() % l == 0 {
        return Err(Error::SplitFailure(format!(
            "{l} is not a splitting prime for the group"
        )));
    }
    let reduction = ModularReduction::new(l, exponent)?;
    assert_eq!(reduction.field().degree(), 1, "splitting prime gives a prime field");
    let field = Arc::clone(reduction.field());
    let regular: Vec<usize> = (0..n.conjugacy_classes()?.count()).collect();
    let mut rng = crate::util::rng_for(crate::group::global_seed(), "modular-rep");
    let module = FfModule::regular_module(n, &field)?;
    for (c, _) in chop(&module, &mut rng)? {
        let bc = brauer_character(&c, &reduction, &regular)?;
        if bc.values() == theta.values() {
            return Ok((c, reduction));
        }
    }
    Err(Error::SplitFailure(
        "no constituent of the regular module affords theta".into(),
    ))
}

/// The intertwining matrix P(x) with R(n^(x^-1)) = P R(n) P^-1, unique up to
/// a scalar, normalized so its first nonzero entry in row-major order is 1.
pub fn intertwiner(rep: &FfModule, x: &Perm) -> Result<Mat> {
    let f = rep.field();
    let d = rep.dim();
    let n = rep.group();
    let x_inv = x.inverse();
    let pairs: Vec<(Mat, Mat)> = n
        .generators()
        .iter()
        .map(|g| {
            let a = rep.matrix_of(g)?;
            let b = rep.matrix_of(&g.conj(&x_inv))?;
            Ok((a, b))
        })
        .collect::<Result<_>>()?;
    // unknowns P_{a,b} as a row vector of length d^2; equations per
    // generator and position (r,s): sum_t P_{r,t} A_{t,s} - B_{r,t} P_{t,s} = 0
    let n_eq = pairs.len() * d * d;
    let mut m = Mat::zero(f, d * d, n_eq);
    for (gi, (a, b)) in pairs.iter().enumerate() {
        for r in 0..d {
            for s in 0..d {
                let eq = gi * d * d + r * d + s;
                for t in 0..d {
                    // coefficient of P_{r,t}
                    let idx = r * d + t;
                    m[(idx, eq)] = f.add(m[(idx, eq)], a[(t, s)]);
                    // coefficient of P_{t,s}
                    let idx2 = t * d + s;
                    m[(idx2, eq)] = f.sub(m[(idx2, eq)], b[(r, t)]);
                }
            }
        }
    }
    let kernel = m.left_kernel(f);
    if kernel.rows == 0 {
        return Err(Error::NoIntertwiner(
            "conjugated representation is not equivalent".into(),
        ));
    }
    assert_eq!(kernel.rows, 1, "Schur: the intertwiner space is a line");
    let v = kernel.row(0);
    let lead = v.iter().find(|c| !c.is_zero()).unwrap();
    let inv = f.inv(*lead);
    let mut p = Mat::zero(f, d, d);
    for r in 0..d {
        for s in 0..d {
            p[(r, s)] = f.mul(v[r * d + s], inv);
        }
    }
    assert!(p.inverse(f).is_some(), "intertwiner must be invertible");
    Ok(p)
}

/// A factor set of X over N with root-of-unity values, constant on
/// N x N-cosets and trivial on NA x NA.
pub struct FactorSet {
    pub x: PermGroup,
    pub n: PermGroup,
    /// coset representatives; index 0 is the identity coset
    pub reps: Vec<Perm>,
    /// coset index of every element of X
    coset_of_elt: Vec<u32>,
    /// exponent of alpha(i,j) with respect to zeta_e
    pub alpha_log: Vec<Vec<u64>>,
    /// |E|: the order of the cyclic group generated by the values
    pub e_order: u64,
    /// indices of the cosets lying inside NA
    pub na_cosets: Vec<usize>,
}

impl FactorSet {
    pub fn coset_of(&self, g: &Perm, x_elems: &crate::group::Elements) -> usize {
        self.coset_of_elt[x_elems.index_of(g).unwrap() as usize] as usize
    }

    pub fn alpha(&self, i: usize, j: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.e_order, self.alpha_log[i][j] as i64)
    }

    /// 2-cocycle identity over all coset representative triples.
    pub fn verify_cocycle(&self, x_elems: &crate::group::Elements) -> Result<()> {
        let k = self.reps.len();
        let coset_mul = |i: usize, j: usize| -> usize {
            self.coset_of(&self.reps[i].then(&self.reps[j]), x_elems)
        };
        for i in 0..k {
            for j in 0..k {
                let ij = coset_mul(i, j);
                for t in 0..k {
                    let jt = coset_mul(j, t);
                    let lhs = (self.alpha_log[i][j] + self.alpha_log[ij][t]) % self.e_order;
                    let rhs = (self.alpha_log[j][t] + self.alpha_log[i][jt]) % self.e_order;
                    if lhs != rhs {
                        return Err(Error::NonScalarDefect(format!(
                            "cocycle identity fails at ({i},{j},{t})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// d-th root in the field by discrete logarithm against the primitive
/// element; None when no root exists.
fn nth_root(f: &FfRef, c: FfElt, d: u64) -> Option<FfElt> {
    if c.is_zero() {
        return None;
    }
    let q1 = f.order() - 1;
    // discrete log by scan; the fields in scope stay small
    let w = f.x();
    let mut pw = f.one();
    let mut log = None;
    for k in 0..q1 {
        if pw == c {
            log = Some(k);
            break;
        }
        pw = f.mul(pw, w);
    }
    let k = log?;
    let g = crate::util::gcd(d, q1);
    if k % g != 0 {
        return None;
    }
    // solve d*m = k (mod q1)
    let (dq, kq, q) = (d / g, k / g, q1 / g);
    let inv = (1..q).find(|&m| dq % q * m % q == 1 % q).unwrap_or(0);
    let m = kq % q * inv % q;
    let root = f.pow(w, m);
    debug_assert_eq!(f.pow(root, d), c);
    Some(root)
}

struct ProjectiveData {
    field: FfRef,
    /// P(t) per coset representative
    p_mats: Vec<Mat>,
    /// matrices of N's generators in the same field
    rep: FfModule,
}

/// Computes the factor set of X over N relative to theta (X-invariant).
/// When theta extends to X the factor set is trivial; otherwise P is built
/// from an extension on NA and deterministic intertwiners, with determinant
/// normalization keeping the value orders bounded.
pub fn factor_set(
    x: &PermGroup,
    n: &PermGroup,
    na: &PermGroup,
    theta: &ClassFunction,
) -> Result<FactorSet> {
    let x_elems = x.elements()?;
    let d = theta.degree_u64();
    if d > MAX_PROJECTIVE_DEGREE {
        return Err(Error::TooLarge(format!("projective degree {d} over limit")));
    }
    // coset decomposition of X over N, BFS from the identity coset
    let n_elems = n.elements()?;
    let coset_key = |p: &Perm| -> Perm { n_elems.iter().map(|e| e.then(p)).min().unwrap() };
    let mut reps: Vec<Perm> = vec![coset_key(&x.identity())];
    let mut key_index: HashMap<Perm, u32> = HashMap::new();
    key_index.insert(reps[0].clone(), 0);
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        head += 1;
        for g in x.generators() {
            let key = coset_key(&r.then(g));
            if !key_index.contains_key(&key) {
                key_index.insert(key.clone(), reps.len() as u32);
                reps.push(key);
            }
        }
    }
    assert_eq!(reps[0], x.identity(), "identity leads its own coset");
    let mut coset_of_elt = vec![0u32; x_elems.len()];
    for i in 0..x_elems.len() as u32 {
        coset_of_elt[i as usize] = key_index[&coset_key(x_elems.get(i))];
    }
    let na_cosets: Vec<usize> = (0..reps.len()).filter(|&i| na.contains(&reps[i])).collect();

    // splitting prime covering every value order that can appear
    let bound = lcm(x.exponent()?, d * na.exponent()?);
    let l = prime_one_mod(bound, (2 * d).max(x.order_u64() % 1) .max(2 * ((na.order_u64() as f64).sqrt() as u64 + 1)));

    let proj = build_projective(x, n, na, theta, &reps, l)?;
    let f = &proj.field;
    // alpha(i,j) = scalar of P(t_i) P(t_j) (R(n) P(t_k))^-1, t_i t_j = n t_k
    let k = reps.len();
    let mut scalars = vec![vec![f.one(); k]; k];
    let mut e_order = 1u64;
    for i in 0..k {
        for j in 0..k {
            let prod = reps[i].then(&reps[j]);
            let kc = key_index[&coset_key(&prod)] as usize;
            let n_part = prod.then(&reps[kc].inverse());
            assert!(n.contains(&n_part));
            let rn = proj.rep.matrix_of(&n_part)?;
            let lhs = proj.p_mats[i].mul(f, &proj.p_mats[j]);
            let rhs = rn.mul(f, &proj.p_mats[kc]);
            let w = lhs.mul(f, &rhs.inverse(f).expect("P invertible"));
            let c = w
                .as_scalar(f)
                .ok_or_else(|| Error::NonScalarDefect(format!("at cosets ({i},{j})")))?;
            let o = f.elt_order(c);
            if bound % o != 0 {
                return Err(Error::NonScalarDefect(format!(
                    "factor-set value order {o} exceeds the bound {bound}"
                )));
            }
            e_order = lcm(e_order, o);
            scalars[i][j] = c;
        }
    }
    // lift multiplicatively against a primitive e-th root
    let ze = if e_order == 1 {
        f.one()
    } else {
        f.root_of_unity(e_order)?
    };
    let mut alpha_log = vec![vec![0u64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let c = scalars[i][j];
            let mut pw = f.one();
            let mut found = None;
            for t in 0..e_order {
                if pw == c {
                    found = Some(t);
                    break;
                }
                pw = f.mul(pw, ze);
            }
            alpha_log[i][j] = found.expect("value lies in the cyclic group E");
        }
    }
    let fs = FactorSet {
        x: x.clone(),
        n: n.clone(),
        reps,
        coset_of_elt,
        alpha_log,
        e_order,
        na_cosets,
    };
    fs.verify_cocycle(&x_elems)?;
    // trivial on NA x NA
    for &i in &fs.na_cosets {
        for &j in &fs.na_cosets {
            assert_eq!(fs.alpha_log[i][j], 0, "factor set must vanish on NA x NA");
        }
    }
    Ok(fs)
}

fn build_projective(
    x: &PermGroup,
    n: &PermGroup,
    na: &PermGroup,
    theta: &ClassFunction,
    reps: &[Perm],
    l: u64,
) -> Result<ProjectiveData> {
    let d = theta.degree_u64();
    // extension of theta to all of X: a genuine representation does it
    let tx = x.character_table()?;
    let emb_nx = Embedding::new(n.clone(), x.clone())?;
    if let Some(ext) = crate::chartable::find_extension(&tx, &emb_nx, theta)? {
        let (rep_x, _) = modular_rep_affording(x, tx.character(ext), l)?;
        let field = Arc::clone(rep_x.field());
        let p_mats: Vec<Mat> = reps
            .iter()
            .map(|t| rep_x.matrix_of(t))
            .collect::<Result<_>>()?;
        let rep_n = FfModule::new(
            n.clone(),
            Arc::clone(&field),
            n.generators()
                .iter()
                .map(|g| rep_x.matrix_of(g))
                .collect::<Result<_>>()?,
        );
        return Ok(ProjectiveData {
            field,
            p_mats,
            rep: rep_n,
        });
    }
    // otherwise: genuine representation on NA, intertwiners outside
    let tna = na.character_table()?;
    let emb_n_na = Embedding::new(n.clone(), na.clone())?;
    let ext = crate::chartable::find_extension(&tna, &emb_n_na, theta)?
        .ok_or_else(|| Error::NotAnExtension("theta does not extend to NA".into()))?;
    let (rep_na, _) = modular_rep_affording(na, tna.character(ext), l)?;
    let field0 = Arc::clone(rep_na.field());
    let rep_n0 = FfModule::new(
        n.clone(),
        Arc::clone(&field0),
        n.generators()
            .iter()
            .map(|g| rep_na.matrix_of(g))
            .collect::<Result<_>>()?,
    );
    let mut p0: Vec<Mat> = Vec::with_capacity(reps.len());
    for t in reps {
        if na.contains(t) {
            p0.push(rep_na.matrix_of(t)?);
        } else {
            p0.push(intertwiner(&rep_n0, t)?);
        }
    }
    if d == 1 {
        return Ok(ProjectiveData {
            field: field0,
            p_mats: p0,
            rep: rep_n0,
        });
    }
    // determinant normalization of the non-NA representatives; d-th roots
    // may need a field extension
    let dets: Vec<FfElt> = p0
        .iter()
        .map(|p| {
            let n0 = p.rows;
            // determinant through the charpoly constant term
            let cp = p.charpoly(&field0);
            let c0 = cp.c[0];
            if n0 % 2 == 1 {
                field0.neg(c0)
            } else {
                c0
            }
        })
        .collect();
    let mut j = 1usize;
    let (field, roots) = loop {
        let fj = if j == 1 {
            Arc::clone(&field0)
        } else {
            Ff::new(l, j)?
        };
        let lift = |c: FfElt| -> FfElt {
            // prime-field scalars embed as constants
            fj.from_u64(field0.to_prime_field(c).expect("scalar in the prime field"))
        };
        let mut ok = true;
        let mut roots = Vec::with_capacity(reps.len());
        for (i, det) in dets.iter().enumerate() {
            if na.contains(&reps[i]) {
                roots.push(fj.one());
                continue;
            }
            match nth_root(&fj, lift(*det), d) {
                Some(r) => roots.push(r),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            break (fj, roots);
        }
        j += 1;
        if j > 8 {
            return Err(Error::TooLarge(
                "no manageable field supports the determinant normalization".into(),
            ));
        }
    };
    // move every matrix into the chosen field and scale
    let lift_mat = |m: &Mat| -> Mat {
        let mut out = Mat::zero(&field, m.rows, m.cols);
        for r in 0..m.rows {
            for c in 0..m.cols {
                out[(r, c)] =
                    field.from_u64(field0.to_prime_field(m[(r, c)]).expect("prime field entry"));
            }
        }
        out
    };
    let p_mats: Vec<Mat> = p0
        .iter()
        .zip(&roots)
        .map(|(p, s)| lift_mat(p).scale(&field, field.inv(*s)))
        .collect();
    let rep_n = FfModule::new(
        n.clone(),
        Arc::clone(&field),
        rep_n0.gens().iter().map(&lift_mat).collect(),
    );
    Ok(ProjectiveData {
        field,
        p_mats,
        rep: rep_n,
    })
}

/// The central extension X~ of X by E = <zeta_e>, realized as a permutation
/// group on |X|·|E| points labeled (x, eps).
pub struct CentralExtension {
    pub fs: FactorSet,
    pub xt: PermGroup,
    pub e_order: u64,
    /// subgroups of X~
    pub n_t: PermGroup,
    pub g_t: PermGroup,
    pub e0: PermGroup,
    pub n0: PermGroup,
    pub a_t: PermGroup,
    x_elems: Arc<crate::group::Elements>,
}

impl CentralExtension {
    /// Reads the (x, eps) label of an element of X~ from its action on the
    /// base point.
    pub fn label(&self, u: &Perm) -> (Perm, u64) {
        let e = self.e_order;
        let base = self.x_elems.identity_index() as u64 * e;
        let img = u.apply(base as u32) as u64;
        let x_idx = img / e;
        let eps = img % e;
        (self.x_elems.get(x_idx as u32).clone(), eps)
    }

    /// The element (x, eps) of X~ as a permutation.
    pub fn element(&self, x: &Perm, eps: u64) -> Perm {
        let e = self.e_order;
        let n = self.x_elems.len() as u64;
        let mut images = vec![0u32; (n * e) as usize];
        let coset_x = self.fs.coset_of(x, &self.x_elems);
        for yi in 0..n {
            let y = self.x_elems.get(yi as u32);
            let prod = y.then(x);
            let pi = self.x_elems.index_of(&prod).unwrap() as u64;
            let a = self.fs.alpha_log[self.fs.coset_of(y, &self.x_elems)][coset_x];
            for delta in 0..e {
                images[(yi * e + delta) as usize] =
                    (pi * e + (delta + eps + a) % e) as u32;
            }
        }
        Perm::from_images(images).unwrap()
    }
}

/// Builds X~ with its distinguished subgroups from a factor set.
pub fn build_central_extension(
    fs: FactorSet,
    g_in_x: &PermGroup,
    a_in_x: &PermGroup,
) -> Result<CentralExtension> {
    let x = fs.x.clone();
    let x_elems = x.elements()?;
    let e = fs.e_order;
    if x.order() * e as u128 > MAX_EXTENSION_POINTS {
        return Err(Error::TooLarge("central extension exceeds the point budget".into()));
    }
    let ce_stub = CentralExtension {
        fs,
        xt: PermGroup::trivial(1),
        e_order: e,
        n_t: PermGroup::trivial(1),
        g_t: PermGroup::trivial(1),
        e0: PermGroup::trivial(1),
        n0: PermGroup::trivial(1),
        a_t: PermGroup::trivial(1),
        x_elems: Arc::clone(&x_elems),
    };
    let degree = (x_elems.len() as u64 * e) as usize;
    let zeta_gen = {
        let mut images = vec![0u32; degree];
        for yi in 0..x_elems.len() as u64 {
            for delta in 0..e {
                images[(yi * e + delta) as usize] = (yi * e + (delta + 1) % e) as u32;
            }
        }
        Perm::from_images(images).unwrap()
    };
    let lift = |g: &Perm| ce_stub.element(g, 0);
    let mut gens: Vec<Perm> = x.generators().iter().map(&lift).collect();
    if e > 1 {
        gens.push(zeta_gen.clone());
    }
    let xt = PermGroup::from_generators_with_order(degree, gens, x.order() * e as u128)?;
    let build_sub = |src: &PermGroup, with_e: bool| -> Result<PermGroup> {
        let mut gens: Vec<Perm> = src.generators().iter().map(&lift).collect();
        if with_e && e > 1 {
            gens.push(zeta_gen.clone());
        }
        let order = src.order() * if with_e { e as u128 } else { 1 };
        PermGroup::from_generators_with_order(degree, gens, order)
    };
    let n_t = build_sub(&ce_stub.fs.n, true)?;
    let g_t = build_sub(g_in_x, true)?;
    let n0 = build_sub(&ce_stub.fs.n, false)?;
    let a_t = build_sub(a_in_x, false)?;
    let e0 = if e > 1 {
        PermGroup::from_generators_with_order(degree, vec![zeta_gen], e as u128)?
    } else {
        PermGroup::trivial(degree)
    };
    Ok(CentralExtension {
        xt,
        n_t,
        g_t,
        e0,
        n0,
        a_t,
        ..ce_stub
    })
}

/// lambda~(n, eps) = eps^{-1}, as a class function on N~.
pub fn lambda_tilde(ce: &CentralExtension) -> Result<ClassFunction> {
    let cls = ce.n_t.conjugacy_classes()?;
    let mut values = Vec::with_capacity(cls.count());
    for c in 0..cls.count() {
        let (_, eps) = ce.label(cls.rep(c));
        values.push(Cyclotomic::root_of_unity(ce.e_order, -(eps as i64)));
    }
    Ok(ClassFunction::new(ce.n_t.clone(), values))
}

/// theta~(n, eps) = theta(n) on N~.
pub fn theta_tilde(ce: &CentralExtension, n: &PermGroup, theta: &ClassFunction) -> Result<ClassFunction> {
    let cls = ce.n_t.conjugacy_classes()?;
    let mut values = Vec::with_capacity(cls.count());
    for c in 0..cls.count() {
        let (x, _) = ce.label(cls.rep(c));
        values.push(theta.value(n.class_of(&x)?).clone());
    }
    Ok(ClassFunction::new(ce.n_t.clone(), values))
}

/// The A-equivariant isomorphism from (G, N, θ) onto a triple with central
/// kernel, with the bijection σ on the characters over θ.
pub struct TripleIsomorphism {
    /// X = GA, with G embedded by its regular action
    pub x: PermGroup,
    pub g_x: PermGroup,
    pub n_x: PermGroup,
    pub theta_x: ClassFunction,
    pub embed_g: GroupHom,
    pub a_gens_in_x: Vec<Perm>,
    pub ce: CentralExtension,
    pub tau_index: usize,
    /// X* = X~/N0 with the quotient map
    pub x_star: PermGroup,
    pub pi: GroupHom,
    pub g_star: PermGroup,
    pub n_star: PermGroup,
    pub theta_star: ClassFunction,
    /// Irr(G_x | θ) as table indices of G_x, and their σ-images in Irr(G*)
    pub over_theta: Vec<usize>,
    pub images: Vec<usize>,
}

impl TripleIsomorphism {
    pub fn e_order(&self) -> u64 {
        self.ce.e_order
    }

    /// σ on a member of Irr(G_x | θ).
    pub fn sigma(&self, chi: usize) -> Option<usize> {
        self.over_theta
            .iter()
            .position(|&c| c == chi)
            .map(|i| self.images[i])
    }
}

/// Builds the triple isomorphism for θ ∈ Irr(N) invariant under G and under
/// the supplied coprime action.
pub fn sigma(
    g: &PermGroup,
    n: &PermGroup,
    theta_idx: usize,
    spec: Option<&ActionSpec>,
) -> Result<TripleIsomorphism> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("triple requires N normal in G".into()));
    }
    let owned_spec;
    let spec = match spec {
        Some(s) => s,
        None => {
            owned_spec = ActionSpec::trivial(g)?;
            &owned_spec
        }
    };
    if !spec.is_coprime() {
        return Err(Error::NotCoprime("triple construction requires a coprime action".into()));
    }
    if !spec.stabilizes_subgroup(n)? {
        return Err(Error::NotInvariant("A must stabilize N".into()));
    }
    // X := G ⋊ A on the points of G
    let sd = semidirect_product(g, spec)?;
    let x = sd.group.clone();
    let embed_g = sd.embed_normal;
    let g_x = embed_g.image()?;
    let n_x_gens: Vec<Perm> = n
        .generators()
        .iter()
        .map(|gen| embed_g.apply(gen))
        .collect::<Result<_>>()?;
    let n_x = PermGroup::from_generators_with_order(x.degree(), n_x_gens, n.order())?;
    let a_gens_in_x: Vec<Perm> = sd.acting.generators().to_vec();
    let na = n_x.join(&sd.acting)?;
    // transport theta
    let tn = n.character_table()?;
    let theta_row = tn.character(theta_idx);
    let n_cls_x = n_x.conjugacy_classes()?;
    let mut values = Vec::with_capacity(n_cls_x.count());
    for c in 0..n_cls_x.count() {
        // labels of the regular points recover the original element
        let rep = n_cls_x.rep(c);
        let orig = sd_normal_part(&embed_g, rep)?;
        values.push(theta_row.value(n.class_of(&orig)?).clone());
    }
    let theta_x = ClassFunction::new(n_x.clone(), values);
    if !crate::chartable::is_invariant(&theta_x, &n_x, &x)? {
        return Err(Error::NotInvariant("theta must be invariant under G and A".into()));
    }

    let fs = factor_set(&x, &n_x, &na, &theta_x)?;
    let ce = build_central_extension(fs, &g_x, &sd.acting)?;
    let lam = lambda_tilde(&ce)?;
    let tht = theta_tilde(&ce, &n_x, &theta_x)?;
    // λ~ must be X~-invariant and τ restricts to λ~^{-1} θ~
    assert!(
        crate::chartable::is_invariant(&lam, &ce.n_t, &ce.xt)?,
        "lambda~ must be X~-invariant"
    );
    let target_res = lam.conj().mul(&tht); // λ~^{-1} = conj for a linear character
    let txt = ce.xt.character_table()?;
    let emb_nt_xt = Embedding::new(ce.n_t.clone(), ce.xt.clone())?;
    let tau_candidates: Vec<usize> = (0..txt.num_chars())
        .filter(|&i| txt.degree(i) == theta_x.degree_u64())
        .filter(|&i| {
            restrict(txt.character(i), &emb_nt_xt)
                .map(|r| r.values() == target_res.values())
                .unwrap_or(false)
        })
        .collect();
    if tau_candidates.is_empty() {
        return Err(Error::NotAnExtension("no lift tau restricting to λ~^{-1}θ~".into()));
    }
    // quotient X* = X~/N0 and the star groups
    let (x_star, pi) = quotient(&ce.xt, &ce.n0)?;
    let map_group = |src: &PermGroup| -> Result<PermGroup> {
        let gens: Vec<Perm> = src
            .generators()
            .iter()
            .map(|u| pi.apply(u))
            .collect::<Result<_>>()?;
        PermGroup::from_generators(x_star.degree(), gens)
    };
    let g_star = map_group(&ce.g_t)?;
    let n_star = map_group(&ce.n_t)?;
    // N* must be central in G*
    for zgen in n_star.generators() {
        for ggen in g_star.generators() {
            if zgen.then(ggen) != ggen.then(zgen) {
                return Err(Error::NotCentral("N* is not central in G*".into()));
            }
        }
    }
    // θ* = λ on N* (deflation of λ~ along π restricted to N~)
    let ns_cls = n_star.conjugacy_classes()?;
    let nt_cls = ce.n_t.conjugacy_classes()?;
    let mut star_vals: Vec<Option<Cyclotomic>> = vec![None; ns_cls.count()];
    for c in 0..nt_cls.count() {
        let img = pi.apply(nt_cls.rep(c))?;
        let sc = n_star.class_of(&img)?;
        match &star_vals[sc] {
            None => star_vals[sc] = Some(lam.value(c).clone()),
            Some(v) => assert_eq!(v, lam.value(c), "λ~ must factor through N0"),
        }
    }
    let theta_star = ClassFunction::new(
        n_star.clone(),
        star_vals.into_iter().map(Option::unwrap).collect(),
    );

    // characters over theta in G_x
    let tg_x = g_x.character_table()?;
    let emb_n_g = Embedding::new(n_x.clone(), g_x.clone())?;
    let over_theta = crate::chartable::irr_over(&tg_x, &emb_n_g, &theta_x)?;

    let tg_t = ce.g_t.character_table()?;
    let emb_nt_gt = Embedding::new(ce.n_t.clone(), ce.g_t.clone())?;
    let emb_gt_xt = Embedding::new(ce.g_t.clone(), ce.xt.clone())?;
    let tg_star = g_star.character_table()?;

    // lift of chi to G~ by the labels
    let gt_cls = ce.g_t.conjugacy_classes()?;
    let lift_chi = |chi: usize| -> Result<ClassFunction> {
        let mut values = Vec::with_capacity(gt_cls.count());
        for c in 0..gt_cls.count() {
            let (xelt, _) = ce.label(gt_cls.rep(c));
            values.push(tg_x.value(chi, g_x.class_of(&xelt)?).clone());
        }
        Ok(ClassFunction::new(ce.g_t.clone(), values))
    };
    // candidate mus: N0 in kernel, lying over λ~
    let mut mu_candidates = Vec::new();
    for mu in 0..tg_t.num_chars() {
        let in_kernel = ce.n0.generators().iter().all(|z| {
            let k = ce.g_t.class_of(z).unwrap();
            tg_t.value(mu, k) == tg_t.character(mu).degree()
        });
        if !in_kernel {
            continue;
        }
        let res = restrict(tg_t.character(mu), &emb_nt_gt)?;
        if !crate::chartable::inner_product(&res, &lam)?.is_zero() {
            mu_candidates.push(mu);
        }
    }
    // try each tau until sigma assembles on every character over theta
    let mut chosen: Option<(usize, Vec<usize>)> = None;
    'tau: for &tau in &tau_candidates {
        let tau_g = restrict(txt.character(tau), &emb_gt_xt)?;
        let mut images = Vec::with_capacity(over_theta.len());
        for &chi in &over_theta {
            let chi_lift = lift_chi(chi)?;
            let mut hit = None;
            for &mu in &mu_candidates {
                let prod = tau_g.mul(tg_t.character(mu));
                if prod.values() == chi_lift.values() {
                    if hit.is_some() {
                        continue 'tau;
                    }
                    hit = Some(mu);
                }
            }
            let Some(mu) = hit else { continue 'tau };
            // deflate mu to G* and locate it
            let deflated = deflate_through(&pi, &ce.g_t, &g_star, tg_t.character(mu))?;
            let Some(idx) = tg_star.index_of(&deflated) else {
                continue 'tau;
            };
            images.push(idx);
        }
        chosen = Some((tau, images));
        break;
    }
    let Some((tau_index, images)) = chosen else {
        return Err(Error::NotAnExtension(
            "no candidate tau factors every character over theta".into(),
        ));
    };
    // bijectivity onto Irr(G* | θ*) and degree ratios
    let emb_ns_gs = Embedding::new(n_star.clone(), g_star.clone())?;
    let mut expected = crate::chartable::irr_over(&tg_star, &emb_ns_gs, &theta_star)?;
    let mut got = images.clone();
    expected.sort_unstable();
    got.sort_unstable();
    if expected != got || images.len() != over_theta.len() {
        return Err(Error::NotAnExtension(
            "sigma is not a bijection onto Irr(G*|θ*)".into(),
        ));
    }
    let theta_deg = theta_x.degree_u64();
    for (pos, &chi) in over_theta.iter().enumerate() {
        assert_eq!(
            tg_x.degree(chi),
            theta_deg * tg_star.degree(images[pos]),
            "degree ratio must be preserved"
        );
    }
    Ok(TripleIsomorphism {
        x,
        g_x,
        n_x,
        theta_x,
        embed_g,
        a_gens_in_x,
        ce,
        tau_index,
        x_star,
        pi,
        g_star,
        n_star,
        theta_star,
        over_theta,
        images,
    })
}

/// Recovers the original G-element from its image under the regular
/// embedding, by reading its action on the identity point.
fn sd_normal_part(embed_g: &GroupHom, u: &Perm) -> Result<Perm> {
    let elems = embed_g.source().elements()?;
    Ok(elems.get(u.apply(elems.identity_index())).clone())
}

/// Deflates a class function along π from a subgroup of X~ onto its image.
fn deflate_through(
    pi: &GroupHom,
    src: &PermGroup,
    dst: &PermGroup,
    f: &ClassFunction,
) -> Result<ClassFunction> {
    let src_cls = src.conjugacy_classes()?;
    let dst_cls = dst.conjugacy_classes()?;
    let mut values: Vec<Option<Cyclotomic>> = vec![None; dst_cls.count()];
    for c in 0..src_cls.count() {
        let img = pi.apply(src_cls.rep(c))?;
        let dc = dst.class_of(&img)?;
        match &values[dc] {
            None => values[dc] = Some(f.value(c).clone()),
            Some(v) => {
                if v != f.value(c) {
                    return Err(Error::KernelViolation(
                        "class function does not factor through the quotient".into(),
                    ));
                }
            }
        }
    }
    Ok(ClassFunction::new(
        dst.clone(),
        values.into_iter().map(Option::unwrap).collect(),
    ))
}

/// σ commutes with the A-actions on both sides.
pub fn check_a_equivariance(iso: &TripleIsomorphism) -> Result<bool> {
    let tg_x = iso.g_x.character_table()?;
    let tg_star = iso.g_star.character_table()?;
    let gx_cls = iso.g_x.conjugacy_classes()?;
    let gs_cls = iso.g_star.conjugacy_classes()?;
    for a in &iso.a_gens_in_x {
        // action on Irr(G_x): χ^a(g) = χ(g^{a^-1})
        let a_inv = a.inverse();
        let act_source = |chi: usize| -> Result<usize> {
            let mut values = Vec::with_capacity(gx_cls.count());
            for c in 0..gx_cls.count() {
                let moved = gx_cls.rep(c).conj(&a_inv);
                values.push(tg_x.value(chi, iso.g_x.class_of(&moved)?).clone());
            }
            Ok(tg_x.index_of_values(&values).expect("action permutes Irr"))
        };
        // the corresponding element of X*: π((a, 0))
        let a_star = iso.pi.apply(&iso.ce.element(a, 0))?;
        let a_star_inv = a_star.inverse();
        let act_target = |chi: usize| -> Result<usize> {
            let mut values = Vec::with_capacity(gs_cls.count());
            for c in 0..gs_cls.count() {
                let moved = gs_cls.rep(c).conj(&a_star_inv);
                values.push(tg_star.value(chi, iso.g_star.class_of(&moved)?).clone());
            }
            Ok(tg_star.index_of_values(&values).expect("action permutes Irr"))
        };
        for (pos, &chi) in iso.over_theta.iter().enumerate() {
            let chi_a = act_source(chi)?;
            let lhs = iso.sigma(chi_a).expect("Irr(G|θ) is A-stable");
            let rhs = act_target(iso.images[pos])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub struct BlockFiberReport {
    /// true when bl(χ1) = bl(χ2) iff bl(σχ1) = bl(σχ2) over all pairs
    pub partitions_match: bool,
    /// when G[b] < G: the criterion compared against covering a common
    /// block of H* instead
    pub via_covering: bool,
}

/// Block-fiber compatibility: under G[b] = G the block partition of
/// Irr(G|θ) corresponds to the partition of the σ-images; otherwise the
/// criterion is covering a common block of H* = image of G[b].
pub fn block_fiber_check(iso: &TripleIsomorphism, p: u64) -> Result<BlockFiberReport> {
    let g_blocks = iso.g_x.block_partition(p)?;
    let n_blocks = iso.n_x.block_partition(p)?;
    let tn = iso.n_x.character_table()?;
    let theta_n_idx = tn
        .index_of(&iso.theta_x)
        .expect("theta is a row of Irr(N)");
    let b = n_blocks.block_of(theta_n_idx);
    let ram = crate::dade::ramification_group(&iso.g_x, &n_blocks, b)?;
    let star_blocks = iso.g_star.block_partition(p)?;
    let full = ram.group.order() == iso.g_x.order();
    if full {
        let mut ok = true;
        for i in 0..iso.over_theta.len() {
            for j in i + 1..iso.over_theta.len() {
                let same_src = g_blocks.block_of(iso.over_theta[i])
                    == g_blocks.block_of(iso.over_theta[j]);
                let same_dst =
                    star_blocks.block_of(iso.images[i]) == star_blocks.block_of(iso.images[j]);
                if same_src != same_dst {
                    ok = false;
                }
            }
        }
        Ok(BlockFiberReport {
            partitions_match: ok,
            via_covering: false,
        })
    } else {
        // H* := π(preimage of G[b]), a normal subgroup of G* containing N*
        let mut h_gens: Vec<Perm> = ram
            .group
            .generators()
            .iter()
            .map(|u| iso.pi.apply(&iso.ce.element(u, 0)))
            .collect::<Result<_>>()?;
        h_gens.extend(iso.n_star.generators().iter().cloned());
        let h_star = PermGroup::from_generators(iso.x_star.degree(), h_gens)?;
        let h_blocks = h_star.block_partition(p)?;
        let emb = Embedding::new(h_star.clone(), iso.g_star.clone())?;
        let covered: Vec<Vec<usize>> = iso
            .images
            .iter()
            .map(|&img| {
                let bs = star_blocks.block_of(img);
                crate::blocks::blocks_covered_by(&star_blocks, bs, &h_blocks, &emb)
            })
            .collect::<Result<_>>()?;
        let mut ok = true;
        for i in 0..iso.over_theta.len() {
            for j in i + 1..iso.over_theta.len() {
                let same_src = g_blocks.block_of(iso.over_theta[i])
                    == g_blocks.block_of(iso.over_theta[j]);
                let same_cover = covered[i] == covered[j];
                if same_src != same_cover {
                    ok = false;
                }
            }
        }
        Ok(BlockFiberReport {
            partitions_match: ok,
            via_covering: true,
        })
    }
}
