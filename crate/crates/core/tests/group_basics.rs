//! Group substrate checks against brute-force oracles.

use blocktheory::catalog;
use blocktheory::group::{
    central_product, direct_product, quotient, semidirect_product, PermGroup,
};
use blocktheory::oracles;
use blocktheory::perm::Perm;

#[test]
fn build_group_orders() {
    // one generator (0 1 2): cyclic of order 3
    let c3 = PermGroup::from_generators(3, vec![Perm::parse_cycles("(1,2,3)", 3).unwrap()]).unwrap();
    assert_eq!(c3.order(), 3);

    // S4 from a transposition and a 4-cycle, against brute-force closure
    let gens = vec![
        Perm::parse_cycles("(1,2)", 4).unwrap(),
        Perm::parse_cycles("(1,2,3,4)", 4).unwrap(),
    ];
    let s4 = PermGroup::from_generators(4, gens.clone()).unwrap();
    assert_eq!(s4.order() as usize, oracles::brute_closure(4, &gens).len());
    assert_eq!(s4.order(), 24);

    // Q8 in its degree-8 regular representation
    let q8 = catalog::quaternion8();
    assert_eq!(
        q8.order() as usize,
        oracles::brute_closure(8, q8.generators()).len()
    );
    assert_eq!(q8.order(), 8);
}

#[test]
fn chain_order_matches_closure_for_small_groups() {
    for g in [
        catalog::symmetric(4),
        catalog::alternating(5),
        catalog::sl2_3(),
        catalog::dihedral(6),
        catalog::extraspecial_27(),
    ] {
        let brute = oracles::brute_closure(g.degree(), g.generators());
        assert_eq!(g.order() as usize, brute.len());
    }
}

#[test]
fn conjugacy_classes_small() {
    let triv = PermGroup::trivial(1);
    assert_eq!(triv.conjugacy_classes().unwrap().count(), 1);

    let s3 = catalog::symmetric(3);
    let cls = s3.conjugacy_classes().unwrap();
    let mut sizes = cls.sizes().to_vec();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 3]);

    // class equation for the corpus
    for g in [catalog::symmetric(4), catalog::alternating(5), catalog::sl2_3()] {
        let cls = g.conjugacy_classes().unwrap();
        assert_eq!(cls.sizes().iter().sum::<u64>(), g.order_u64());
        // classes agree with the brute-force orbit partition
        let elems = g.elements().unwrap();
        let all: Vec<Perm> = elems.iter().cloned().collect();
        let brute = oracles::brute_classes(&all, g.generators());
        assert_eq!(brute.len(), cls.count());
    }
}

#[test]
fn sz8_has_11_classes() {
    let (sz8, _) = catalog::sz8_with_c3().unwrap();
    assert_eq!(sz8.degree(), 65);
    assert_eq!(sz8.order(), 29120);
    let cls = sz8.conjugacy_classes().unwrap();
    assert_eq!(cls.count(), 11);
    assert_eq!(cls.sizes().iter().sum::<u64>(), 29120);
}

#[test]
fn centralizer_center_sylow() {
    let s3 = catalog::symmetric(3);
    let g = Perm::parse_cycles("(1,2,3)", 3).unwrap();
    let cent = s3.centralizer(&g).unwrap();
    assert_eq!(cent.order(), 3);
    let elems = s3.elements().unwrap();
    let all: Vec<Perm> = elems.iter().cloned().collect();
    assert_eq!(
        cent.order() as usize,
        oracles::brute_centralizer(&all, &g).len()
    );

    let q8 = catalog::quaternion8();
    assert_eq!(q8.center().unwrap().order(), 2);

    let s4 = catalog::symmetric(4);
    assert_eq!(s4.sylow(2).unwrap().order(), 8);
    assert_eq!(s4.sylow(3).unwrap().order(), 3);
    assert_eq!(s4.sylow(5).unwrap().order(), 1);
}

#[test]
fn quotients() {
    let s4 = catalog::symmetric(4);
    let (q, hom) = quotient(&s4, &s4).unwrap();
    assert_eq!(q.order(), 1);
    assert!(hom.kernel().unwrap().order() == 24);

    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    assert_eq!(q8.order(), 8);
    let (q, _) = quotient(&sl23, &q8).unwrap();
    assert_eq!(q.order(), 3);

    let q8r = catalog::quaternion8();
    let z = q8r.center().unwrap();
    let (v4, _) = quotient(&q8r, &z).unwrap();
    assert_eq!(v4.order(), 4);
    assert_eq!(v4.exponent().unwrap(), 2);
}

#[test]
fn class_fusion_a3_in_s3() {
    use blocktheory::group::Embedding;
    let s3 = catalog::symmetric(3);
    let a3 = PermGroup::from_generators(3, vec![Perm::parse_cycles("(1,2,3)", 3).unwrap()]).unwrap();
    let emb = Embedding::new(a3.clone(), s3.clone()).unwrap();
    let fusion = emb.fusion().unwrap();
    // identity map on H = G
    let id_emb = Embedding::new(s3.clone(), s3.clone()).unwrap();
    assert_eq!(*id_emb.fusion().unwrap(), vec![0, 1, 2]);
    // the two 3-cycle classes of A3 fuse into one class of S3
    assert_eq!(fusion.len(), 3);
    assert_eq!(fusion[1], fusion[2]);
    // Z(Q8) in Q8: both classes land in singleton classes
    let q8 = catalog::quaternion8();
    let z = q8.center().unwrap();
    let zemb = Embedding::new(z.clone(), q8.clone()).unwrap();
    let zf = zemb.fusion().unwrap();
    let cls = q8.conjugacy_classes().unwrap();
    for &k in zf.iter() {
        assert_eq!(cls.size(k), 1);
    }
}

#[test]
fn products() {
    // trivial acting group: order preserved
    let q8 = catalog::quaternion8();
    let spec = blocktheory::actions::ActionSpec::trivial(&q8).unwrap();
    let sd = semidirect_product(&q8, &spec).unwrap();
    assert_eq!(sd.group.order(), 8);

    // Q8 ⋊ C3
    let (q8, spec) = catalog::q8_with_c3().unwrap();
    let sd = semidirect_product(&q8, &spec).unwrap();
    assert_eq!(sd.group.order(), 24);
    assert!(!sd.group.is_abelian());
    // the embedded copies intersect trivially
    let g_copy = sd.embed_normal.image().unwrap();
    assert_eq!(g_copy.intersection(&sd.acting).unwrap().order(), 1);

    // C7 ⋊ C3 on 7 points
    let (c7, spec) = catalog::c7_with_c3().unwrap();
    let sd = semidirect_product(&c7, &spec).unwrap();
    assert_eq!(sd.group.order(), 21);
    assert_eq!(sd.group.degree(), 7);

    // direct products
    let c2 = catalog::cyclic(2);
    let dp = direct_product(&c2, &c2).unwrap();
    assert_eq!(dp.group.order(), 4);
    assert_eq!(dp.group.exponent().unwrap(), 2);

    let triv = PermGroup::trivial(1);
    let dp = direct_product(&q8, &triv).unwrap();
    assert_eq!(dp.group.order(), 8);
}

#[test]
fn central_product_q8_q8() {
    let q8 = catalog::quaternion8();
    let z = q8.center().unwrap();
    // identify the centers via the identity map
    let cp = central_product(&q8, &q8, &z, z.generators()).unwrap();
    assert_eq!(cp.group.order(), 32);
    // extraspecial of order 32: center of order 2, elementary abelian quotient
    let zc = cp.group.center().unwrap();
    assert_eq!(zc.order(), 2);
    let (quot, _) = quotient(&cp.group, &zc).unwrap();
    assert!(quot.is_elementary_abelian(2).unwrap());
}

#[test]
fn coprime_complement_in_semidirect() {
    for (g, spec) in [
        catalog::q8_with_c3().unwrap(),
        catalog::c7_with_c3().unwrap(),
        catalog::c2_4_with_c5().unwrap(),
    ] {
        assert!(spec.is_coprime());
        let sd = semidirect_product(&g, &spec).unwrap();
        assert_eq!(sd.group.order(), g.order() * spec.a_order() as u128);
        let g_copy = sd.embed_normal.image().unwrap();
        assert_eq!(g_copy.intersection(&sd.acting).unwrap().order(), 1);
        assert!(g_copy.is_normal_in(&sd.group));
    }
}

#[test]
fn normal_subgroups_of_sl2_3() {
    let sl23 = catalog::sl2_3();
    let normals = sl23.normal_subgroups().unwrap();
    let mut orders: Vec<u128> = normals.iter().map(|n| n.order()).collect();
    orders.sort();
    assert_eq!(orders, vec![1, 2, 8, 24]);
}
