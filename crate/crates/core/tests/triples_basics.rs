//! Character-triple construction: factor sets, central extensions, sigma
//! and its invariants on the key instances.

use blocktheory::brauer::FfModule;
use blocktheory::catalog;
use blocktheory::chartable::restrict;
use blocktheory::cyclo::Cyclotomic;
use blocktheory::group::Embedding;
use blocktheory::triples::{
    block_fiber_check, check_a_equivariance, intertwiner, lambda_tilde, modular_rep_affording,
    sigma, theta_tilde,
};

#[test]
fn modular_rep_instances() {
    // Q8, theta of degree 2, l = 17: trace on the class of i is 0
    let q8 = catalog::quaternion8();
    let t = q8.character_table().unwrap();
    let theta = (0..t.num_chars()).find(|&i| t.degree(i) == 2).unwrap();
    let (rep, _red) = modular_rep_affording(&q8, t.character(theta), 17).unwrap();
    assert_eq!(rep.dim(), 2);
    let cls = q8.conjugacy_classes().unwrap();
    let order4 = (0..cls.count()).find(|&k| cls.rep_orders()[k] == 4).unwrap();
    let m = rep.matrix_of(cls.rep(order4)).unwrap();
    assert!(m.trace(rep.field()).is_zero());

    // S3, the 2-dimensional character at l = 7: lifted traces (2, 0, -1)
    let s3 = catalog::symmetric(3);
    let ts = s3.character_table().unwrap();
    let two = (0..3).find(|&i| ts.degree(i) == 2).unwrap();
    let (rep, red) = modular_rep_affording(&s3, ts.character(two), 7).unwrap();
    assert_eq!(rep.dim(), 2);
    let regular: Vec<usize> = (0..3).collect();
    let bc = blocktheory::brauer::brauer_character(&rep, &red, &regular).unwrap();
    assert_eq!(bc.values(), ts.character(two).values());

    // theta linear: 1x1 matrices
    let c3 = catalog::cyclic(3);
    let tc = c3.character_table().unwrap();
    let lin = (0..3).find(|&i| i != tc.trivial_index()).unwrap();
    let (rep, _) = modular_rep_affording(&c3, tc.character(lin), 7).unwrap();
    assert_eq!(rep.dim(), 1);
}

#[test]
fn intertwiner_identity_on_central() {
    // x central in X: the intertwiner is scalar (here: identity after
    // normalization)
    let q8 = catalog::quaternion8();
    let t = q8.character_table().unwrap();
    let theta = (0..t.num_chars()).find(|&i| t.degree(i) == 2).unwrap();
    let (rep, _) = modular_rep_affording(&q8, t.character(theta), 17).unwrap();
    let z = q8.center().unwrap();
    let p = intertwiner(&rep, &z.generators()[0]).unwrap();
    assert!(p.as_scalar(rep.field()).is_some());

    // x in N: P(x) is R(x) up to the normalization scalar: check the
    // conjugation identity directly on all of Q8
    let elems = q8.elements().unwrap();
    let x = q8.generators()[0].clone();
    let p = intertwiner(&rep, &x).unwrap();
    let f = rep.field();
    let p_inv = p.inverse(f).unwrap();
    for n in elems.iter() {
        let lhs = rep.matrix_of(&n.conj(&x.inverse())).unwrap();
        let rhs = p.mul(f, &rep.matrix_of(n).unwrap()).mul(f, &p_inv);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn sigma_sl2_3_over_q8() {
    // theta extends to X = G: trivial factor set, E = 1, X~ ≅ X
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let tn = q8.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 2).unwrap();
    let iso = sigma(&sl23, &q8, theta, None).unwrap();
    assert_eq!(iso.e_order(), 1);
    assert_eq!(iso.over_theta.len(), 3);
    assert_eq!(iso.images.len(), 3);
    // N* central, theta* linear, degree ratios 1
    let ts = iso.g_star.character_table().unwrap();
    for (pos, &chi) in iso.over_theta.iter().enumerate() {
        let tg = iso.g_x.character_table().unwrap();
        assert_eq!(tg.degree(chi), 2 * ts.degree(iso.images[pos]));
    }
    // block fibers with G[b] = G? here D C_G(D) = Q8 < G so G[b] could be
    // smaller; the call dispatches to the right criterion either way
    let fiber = block_fiber_check(&iso, 2).unwrap();
    assert!(fiber.partitions_match);
}

#[test]
fn sigma_q8_center_with_c3_equivariant() {
    // (Q8, Z(Q8), faithful linear theta) with the C3-action: E = C2,
    // |X~| = 48, sigma is C3-equivariant
    let (q8, spec) = catalog::q8_with_c3().unwrap();
    let z = q8.center().unwrap();
    let tz = z.character_table().unwrap();
    let faithful = (0..2)
        .find(|&i| *tz.value(i, 1) != Cyclotomic::one())
        .unwrap();
    let iso = sigma(&q8, &z, faithful, Some(&spec)).unwrap();
    assert_eq!(iso.e_order(), 2, "the faithful character of Z(Q8) has obstruction C2");
    assert_eq!(iso.ce.xt.order(), 48);
    // lambda~ is X~-invariant (asserted inside); tau restricts correctly
    let lam = lambda_tilde(&iso.ce).unwrap();
    let tht = theta_tilde(&iso.ce, &iso.n_x, &iso.theta_x).unwrap();
    let txt = iso.ce.xt.character_table().unwrap();
    let emb = Embedding::new(iso.ce.n_t.clone(), iso.ce.xt.clone()).unwrap();
    let res = restrict(txt.character(iso.tau_index), &emb).unwrap();
    assert_eq!(res.values(), lam.conj().mul(&tht).values());
    // sigma equivariance under the C3-action
    assert!(check_a_equivariance(&iso).unwrap());
    // the unique character of Q8 over theta has degree 2; the ratio to
    // theta(1) = 1 is preserved, so its image also has degree 2
    assert_eq!(iso.over_theta.len(), 1);
    let ts = iso.g_star.character_table().unwrap();
    assert_eq!(ts.degree(iso.images[0]), 2);
    // N* = N~/N0 is central of order |E|
    assert_eq!(iso.n_star.order(), 2);
    assert!(iso.n_star.is_subgroup_of(&iso.g_star.center().unwrap()));
}

#[test]
fn sigma_on_central_theta_is_essentially_identity() {
    // N already central with faithful linear theta: sizes and degrees are
    // preserved
    let c4 = catalog::cyclic(4);
    let z2gen = c4.generators()[0].pow(2);
    let n = blocktheory::group::PermGroup::from_generators(4, vec![z2gen]).unwrap();
    let tn = n.character_table().unwrap();
    let faithful = (0..2)
        .find(|&i| *tn.value(i, 1) != Cyclotomic::one())
        .unwrap();
    let iso = sigma(&c4, &n, faithful, None).unwrap();
    assert_eq!(iso.over_theta.len(), iso.images.len());
    let tg = iso.g_x.character_table().unwrap();
    let ts = iso.g_star.character_table().unwrap();
    for (pos, &chi) in iso.over_theta.iter().enumerate() {
        assert_eq!(tg.degree(chi), ts.degree(iso.images[pos]));
    }
}

#[test]
fn factor_set_cocycle_nontrivial_instance() {
    // Q8 over its center with theta faithful: alpha has values in C2 and
    // the cocycle identity holds (verified during construction); inspect
    // the order here
    let q8 = catalog::quaternion8();
    let z = q8.center().unwrap();
    let tz = z.character_table().unwrap();
    let faithful = (0..2)
        .find(|&i| *tz.value(i, 1) != Cyclotomic::one())
        .unwrap();
    let iso = sigma(&q8, &z, faithful, None).unwrap();
    assert_eq!(iso.e_order(), 2);
    // E0 and N0 have the expected orders inside X~
    assert_eq!(iso.ce.e0.order(), 2);
    assert_eq!(iso.ce.n0.order(), 2);
    assert_eq!(iso.ce.xt.order(), 16);
}

#[test]
fn brauer_module_tensor_smoke() {
    // unrelated small check that tensor squares stay well-formed, used by
    // the triples search indirectly
    let s3 = catalog::symmetric(3);
    let f = blocktheory::ff::Ff::new(7, 1).unwrap();
    let m = FfModule::permutation_module(&s3, &f);
    let t = m.tensor(&m);
    assert_eq!(t.dim(), 9);
    let g = s3.generators()[0].clone();
    let mg = t.matrix_of(&g).unwrap();
    assert_eq!(mg.rows, 9);
}
