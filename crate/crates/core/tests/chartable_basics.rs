//! Character table checks: degrees, orthogonality, restriction/induction,
//! extensions and the Gallagher correspondence.

use blocktheory::catalog;
use blocktheory::chartable::{
    dot_with_central, find_extension, gallagher_bijection, induce, inner_product, irr_over,
    regular_character, restrict,
};
use blocktheory::cyclo::Cyclotomic;
use blocktheory::group::{quotient, Embedding, PermGroup};
use blocktheory::perm::Perm;

#[test]
fn c2_table() {
    let c2 = catalog::cyclic(2);
    let t = c2.character_table().unwrap();
    assert_eq!(t.degrees(), &[1, 1]);
    let minus_one = Cyclotomic::from_i64(-1);
    assert!((0..2).any(|i| *t.value(i, 1) == minus_one));
}

#[test]
fn s3_table() {
    let s3 = catalog::symmetric(3);
    let t = s3.character_table().unwrap();
    let mut degs = t.degrees().to_vec();
    degs.sort();
    assert_eq!(degs, vec![1, 1, 2]);
    // the 2-dimensional character takes values (2, 0, -1) in some class order
    let two = (0..3).find(|&i| t.degree(i) == 2).unwrap();
    let mut vals: Vec<String> = t.character(two).values().iter().map(|v| v.to_string()).collect();
    vals.sort();
    assert_eq!(vals, vec!["-1", "0", "2"]);
}

#[test]
fn a5_table_degrees_and_orthogonality() {
    let a5 = catalog::alternating(5);
    let t = a5.character_table().unwrap();
    let mut degs = t.degrees().to_vec();
    degs.sort();
    assert_eq!(degs, vec![1, 3, 3, 4, 5]);
    assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u64>(), 60);
    t.verify_column_orthogonality().unwrap();
}

#[test]
fn sz8_table() {
    let (sz8, _) = catalog::sz8_with_c3().unwrap();
    let t = sz8.character_table().unwrap();
    assert_eq!(t.num_chars(), 11);
    assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u64>(), 29120);
    t.verify_column_orthogonality().unwrap();
}

#[test]
fn inner_products() {
    let s3 = catalog::symmetric(3);
    let t = s3.character_table().unwrap();
    for i in 0..t.num_chars() {
        let ip = inner_product(t.character(i), t.character(i)).unwrap();
        assert_eq!(ip, Cyclotomic::one());
    }
    // regular character pairs to the degree
    let reg = regular_character(&s3).unwrap();
    for i in 0..t.num_chars() {
        let ip = inner_product(&reg, t.character(i)).unwrap();
        assert_eq!(ip, Cyclotomic::from_i64(t.degree(i) as i64));
    }
}

#[test]
fn restriction_induction_a3_s3() {
    let s3 = catalog::symmetric(3);
    let a3 = PermGroup::from_generators(3, vec![Perm::parse_cycles("(1,2,3)", 3).unwrap()]).unwrap();
    let emb = Embedding::new(a3.clone(), s3.clone()).unwrap();
    let ts = s3.character_table().unwrap();
    let ta = a3.character_table().unwrap();

    // restrict(1_G, N) = 1_N
    let triv = ts.character(ts.trivial_index());
    let res = restrict(triv, &emb).unwrap();
    assert!(res.values().iter().all(|v| *v == Cyclotomic::one()));

    // induce(1_N)(1) = |G:N|
    let ind = induce(ta.character(ta.trivial_index()), &emb).unwrap();
    assert_eq!(*ind.degree(), Cyclotomic::from_i64(2));

    // inducing a nontrivial linear character of A3 gives the 2-dim irreducible
    let omega = (0..3).find(|&i| ta.degree(i) == 1 && i != ta.trivial_index()).unwrap();
    let ind = induce(ta.character(omega), &emb).unwrap();
    let two = (0..3).find(|&i| ts.degree(i) == 2).unwrap();
    assert_eq!(ind.values(), ts.character(two).values());
    assert_eq!(
        inner_product(&ind, ts.character(two)).unwrap(),
        Cyclotomic::one()
    );
}

#[test]
fn frobenius_reciprocity_sampled() {
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let emb = Embedding::new(q8.clone(), sl23.clone()).unwrap();
    let tg = sl23.character_table().unwrap();
    let tn = q8.character_table().unwrap();
    for theta in 0..tn.num_chars() {
        let ind = induce(tn.character(theta), &emb).unwrap();
        for chi in 0..tg.num_chars() {
            let res = restrict(tg.character(chi), &emb).unwrap();
            let lhs = inner_product(&ind, tg.character(chi)).unwrap();
            let rhs = inner_product(tn.character(theta), &res).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn irr_over_and_extension_sl2_3() {
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let emb = Embedding::new(q8.clone(), sl23.clone()).unwrap();
    let tg = sl23.character_table().unwrap();
    let tn = q8.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 2).unwrap();

    // three characters of SL2(3) of degree 2 lie over theta
    let over = irr_over(&tg, &emb, tn.character(theta)).unwrap();
    assert_eq!(over.len(), 3);
    assert!(over.iter().all(|&i| tg.degree(i) == 2));

    // an extension exists
    let ext = find_extension(&tg, &emb, tn.character(theta)).unwrap();
    assert!(ext.is_some());

    // Gallagher: |Irr(G/N)| = |Irr(G|theta)| = 3, all products distinct
    let (q, hom) = quotient(&sl23, &q8).unwrap();
    let tq = q.character_table().unwrap();
    let bij = gallagher_bijection(&tg, &tq, tg.character(ext.unwrap()), &hom).unwrap();
    assert_eq!(bij.len(), 3);
    let mut image = bij.clone();
    image.sort();
    let mut expected = over.clone();
    expected.sort();
    assert_eq!(image, expected);
}

#[test]
fn q8_faithful_character_over_center() {
    let q8 = catalog::quaternion8();
    let z = q8.center().unwrap();
    let emb = Embedding::new(z.clone(), q8.clone()).unwrap();
    let tg = q8.character_table().unwrap();
    let tz = z.character_table().unwrap();
    let faithful = (0..2).find(|&i| {
        tz.degree(i) == 1 && *tz.value(i, 1) != Cyclotomic::one()
    }).unwrap();
    let over = irr_over(&tg, &emb, tz.character(faithful)).unwrap();
    assert_eq!(over.len(), 1);
    assert_eq!(tg.degree(over[0]), 2);
    // no linear extension exists: the faithful character of the center does
    // not extend (the unique character over it has degree 2)
    let ext = find_extension(&tg, &emb, tz.character(faithful)).unwrap();
    assert!(ext.is_none());
}

#[test]
fn theta_trivial_gallagher() {
    // eta trivial: the map returns theta_tilde itself
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let emb = Embedding::new(q8.clone(), sl23.clone()).unwrap();
    let tg = sl23.character_table().unwrap();
    let tn = q8.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 2).unwrap();
    let ext = find_extension(&tg, &emb, tn.character(theta)).unwrap().unwrap();
    let (q, hom) = quotient(&sl23, &q8).unwrap();
    let tq = q.character_table().unwrap();
    let bij = gallagher_bijection(&tg, &tq, tg.character(ext), &hom).unwrap();
    assert_eq!(bij[tq.trivial_index()], ext);
}

#[test]
fn dot_with_central_on_central_product() {
    // G = C4 ∘ Q8 over the common C2
    let c4 = catalog::cyclic(4);
    let q8 = catalog::quaternion8();
    let z4 = PermGroup::from_generators(4, vec![c4.generators()[0].pow(2)]).unwrap();
    let zq = q8.center().unwrap();
    let cp = blocktheory::group::central_product(&c4, &q8, &z4, zq.generators()).unwrap();
    let g = cp.group.clone();
    assert_eq!(g.order(), 16);
    // K = image of Q8, Z = image of C4 (central in G)
    let k_gens: Vec<Perm> = q8
        .generators()
        .iter()
        .map(|x| {
            cp.quotient_hom
                .apply(&cp.direct.right.apply(x).unwrap())
                .unwrap()
        })
        .collect();
    let k = PermGroup::from_generators(g.degree(), k_gens).unwrap();
    let z_gens: Vec<Perm> = c4
        .generators()
        .iter()
        .map(|x| {
            cp.quotient_hom
                .apply(&cp.direct.left.apply(x).unwrap())
                .unwrap()
        })
        .collect();
    let z = PermGroup::from_generators(g.degree(), z_gens).unwrap();
    assert_eq!(k.order(), 8);
    assert_eq!(z.order(), 4);

    let k_emb = Embedding::new(k.clone(), g.clone()).unwrap();
    let z_emb = Embedding::new(z.clone(), g.clone()).unwrap();
    let tk = k.character_table().unwrap();
    let tz = z.character_table().unwrap();
    let tg = g.character_table().unwrap();
    let chi0 = (0..tk.num_chars()).find(|&i| tk.degree(i) == 2).unwrap();
    // the compatible nu: chi0 on K∩Z is chi0(1)·(faithful character of C2 part)
    let mut found_any = false;
    for nu in 0..tz.num_chars() {
        match dot_with_central(&tg, &k_emb, tk.character(chi0), &z_emb, tz.character(nu)) {
            Ok(idx) => {
                found_any = true;
                assert_eq!(tg.degree(idx), 2);
            }
            Err(e) => {
                // incompatible central characters are rejected
                assert!(matches!(e, blocktheory::Error::IncompatibleCentral(_)));
            }
        }
    }
    assert!(found_any);
}
