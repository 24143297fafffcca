//! Block partitions against the linkage oracle; defect groups, induction,
//! covering, domination, canonical characters and stabilizers.

use blocktheory::blocks::{
    block_induction, block_stabilizer, blocks_covering, canonical_character, central_character,
    dominated_block,
};
use blocktheory::catalog;
use blocktheory::cyclo::Cyclotomic;
use blocktheory::group::{quotient, Embedding, PermGroup};
use blocktheory::oracles::{blockset_partition, linkage_partition};
use blocktheory::perm::Perm;

#[test]
fn central_character_values() {
    let s3 = catalog::symmetric(3);
    let t = s3.character_table().unwrap();
    let cls = s3.conjugacy_classes().unwrap();
    // trivial character: lambda(K+) = |K|
    let triv = t.trivial_index();
    let lam = central_character(&t, triv).unwrap();
    for k in 0..cls.count() {
        assert_eq!(*lam.value(k), Cyclotomic::from_i64(cls.size(k) as i64));
    }
    // 2-dim character on the 3-cycle class: 2·(-1)/2 = -1
    let two = (0..3).find(|&i| t.degree(i) == 2).unwrap();
    let lam = central_character(&t, two).unwrap();
    let three_cycle = (0..cls.count())
        .find(|&k| cls.rep_orders()[k] == 3)
        .unwrap();
    assert_eq!(*lam.value(three_cycle), Cyclotomic::from_i64(-1));
}

#[test]
fn s3_blocks() {
    let s3 = catalog::symmetric(3);
    // p = 2: {1, sgn} and {2-dim}
    let b2 = s3.block_partition(2).unwrap();
    assert_eq!(b2.count(), 2);
    assert_eq!(linkage_partition(&s3.character_table().unwrap(), 2).unwrap(),
               blockset_partition(&b2));
    let t = s3.character_table().unwrap();
    let two = (0..3).find(|&i| t.degree(i) == 2).unwrap();
    let b_two = b2.block_of(two);
    assert_eq!(b2.block(b_two).members().len(), 1);
    assert_eq!(b2.block(b_two).defect(), 0);
    assert!(b2.block(b_two).defect_groups()[0].is_trivial());

    // p = 3: a single block
    let b3 = s3.block_partition(3).unwrap();
    assert_eq!(b3.count(), 1);
    assert_eq!(linkage_partition(&t, 3).unwrap(), blockset_partition(&b3));
}

#[test]
fn coprime_prime_gives_singletons() {
    let s3 = catalog::symmetric(3);
    let b5 = s3.block_partition(5).unwrap();
    assert_eq!(b5.count(), 3);
    for b in 0..b5.count() {
        assert_eq!(b5.block(b).defect(), 0);
        assert!(b5.block(b).defect_groups()[0].is_trivial());
    }
}

#[test]
fn a5_blocks_p2() {
    let a5 = catalog::alternating(5);
    let blocks = a5.block_partition(2).unwrap();
    let t = a5.character_table().unwrap();
    assert_eq!(
        linkage_partition(&t, 2).unwrap(),
        blockset_partition(&blocks)
    );
    // principal {1,3,3,5} plus defect-zero {4}
    assert_eq!(blocks.count(), 2);
    let pb = blocks.principal_block();
    let mut pdegs: Vec<u64> = blocks.block(pb).members().iter().map(|&c| t.degree(c)).collect();
    pdegs.sort();
    assert_eq!(pdegs, vec![1, 3, 3, 5]);
    let other = 1 - pb;
    assert_eq!(blocks.block(other).members().len(), 1);
    assert_eq!(t.degree(blocks.block(other).members()[0]), 4);
    // principal block: defect 2, defect group V4 (Sylow 2)
    assert_eq!(blocks.block(pb).defect(), 2);
    let d = &blocks.block(pb).defect_groups()[0];
    assert_eq!(d.order(), 4);
    assert!(d.is_elementary_abelian(2).unwrap());
}

#[test]
fn linkage_oracle_sweep() {
    for g in [
        catalog::symmetric(4),
        catalog::sl2_3(),
        catalog::quaternion8(),
        catalog::alternating(4),
    ] {
        let t = g.character_table().unwrap();
        for (p, _) in blocktheory::util::factor_u64(g.order_u64()) {
            let blocks = g.block_partition(p).unwrap();
            assert_eq!(
                linkage_partition(&t, p).unwrap(),
                blockset_partition(&blocks),
                "oracle mismatch at p={p}"
            );
            // member counts partition Irr
            let total: usize = (0..blocks.count()).map(|b| blocks.block(b).members().len()).sum();
            assert_eq!(total, t.num_chars());
            // principal block contains the trivial character; its defect
            // groups are the Sylow p-subgroups
            let pb = blocks.principal_block();
            let d = &blocks.block(pb).defect_groups()[0];
            assert_eq!(d.order() as u64, blocktheory::util::p_part(g.order_u64(), p));
        }
    }
}

#[test]
fn sz8_blocks_all_primes() {
    let (sz8, _) = catalog::sz8_with_c3().unwrap();
    let t = sz8.character_table().unwrap();
    for p in [2u64, 5, 7, 13] {
        let blocks = sz8.block_partition(p).unwrap();
        assert_eq!(
            linkage_partition(&t, p).unwrap(),
            blockset_partition(&blocks),
            "oracle mismatch at p={p}"
        );
        for b in 0..blocks.count() {
            let blk = blocks.block(b);
            assert_eq!(
                blk.defect_groups()[0].order(),
                (p as u128).pow(blk.defect())
            );
        }
    }
}

#[test]
fn brauer_first_main_instance() {
    // A5, p=2, H = N_G(V4) = A4: blocks with defect group V4 correspond
    let a5 = catalog::alternating(5);
    let blocks_g = a5.block_partition(2).unwrap();
    let v4 = blocks_g.block(blocks_g.principal_block()).defect_groups()[0].clone();
    let h = a5.normalizer(&v4).unwrap();
    assert_eq!(h.order(), 12);
    let blocks_h = h.block_partition(2).unwrap();
    let emb = Embedding::new(h.clone(), a5.clone()).unwrap();
    // induction is defined on every block of H with defect group V4 and
    // lands on the unique block of G with that defect group
    let mut hits = Vec::new();
    for b in 0..blocks_h.count() {
        if blocks_h.block(b).defect() == 2 {
            let ind = block_induction(&blocks_h, b, &blocks_g, &emb).unwrap();
            hits.push(ind.unwrap());
        }
    }
    let full_defect: Vec<usize> = (0..blocks_g.count())
        .filter(|&b| blocks_g.block(b).defect() == 2)
        .collect();
    hits.sort();
    hits.dedup();
    assert_eq!(hits, full_defect);

    // H = G: induction is the identity
    let emb_gg = Embedding::new(a5.clone(), a5.clone()).unwrap();
    for b in 0..blocks_g.count() {
        assert_eq!(
            block_induction(&blocks_g, b, &blocks_g, &emb_gg).unwrap(),
            Some(b)
        );
    }
}

#[test]
fn covering_sl2_3() {
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let emb = Embedding::new(q8.clone(), sl23.clone()).unwrap();
    let bg = sl23.block_partition(2).unwrap();
    let bn = q8.block_partition(2).unwrap();
    assert_eq!(bn.count(), 1);
    // exactly one covering block (in fact SL2(3) has a single 2-block)
    let covering = blocks_covering(&bg, &bn, 0, &emb).unwrap();
    assert_eq!(covering.len(), 1);
    assert_eq!(bg.count(), 1);

    // N = 1: every block covers the unique block of the trivial group
    let triv = PermGroup::trivial(sl23.degree());
    let bt = triv.block_partition(2).unwrap();
    let emb_triv = Embedding::new(triv, sl23.clone()).unwrap();
    let covering = blocks_covering(&bg, &bt, 0, &emb_triv).unwrap();
    assert_eq!(covering.len(), bg.count());
}

#[test]
fn domination_q8_over_center() {
    let q8 = catalog::quaternion8();
    let z = q8.center().unwrap();
    let (quot, hom) = quotient(&q8, &z).unwrap();
    let bg = q8.block_partition(2).unwrap();
    let bq = quot.block_partition(2).unwrap();
    assert_eq!(bg.count(), 1);
    assert_eq!(bq.count(), 1);
    // the unique block of Q8 contains characters with Z in the kernel only
    // after discarding the faithful one; domination is still defined for the
    // kernel-respecting members, so restrict to a subgroup where it holds:
    // V4 = Q8/Z itself has Z trivial. Here we check the error path and the
    // SL2(3) instance below instead.
    let err = dominated_block(&bg, 0, &z, &hom, &bq);
    assert!(err.is_err());

    // SL2(3) over its center at p = 3: all characters in the principal
    // 3-block of SL2(3)/Z correspond by domination
    let sl23 = catalog::sl2_3();
    let zc = sl23.center().unwrap();
    let (a4, hom) = quotient(&sl23, &zc).unwrap();
    let b3 = sl23.block_partition(3).unwrap();
    let bq3 = a4.block_partition(3).unwrap();
    for b in 0..b3.count() {
        let members = b3.block(b).members();
        let t = b3.table();
        let z_in_kernel = members.iter().all(|&chi| {
            zc.generators().iter().all(|zg| {
                let k = sl23.class_of(zg).unwrap();
                t.value(chi, k) == t.character(chi).degree()
            })
        });
        if z_in_kernel {
            let dom = dominated_block(&b3, b, &zc, &hom, &bq3).unwrap();
            assert!(dom < bq3.count());
        }
    }
}

#[test]
fn canonical_characters_exist() {
    // defect zero: eta is theta itself (D = 1)
    let s3 = catalog::symmetric(3);
    let b2 = s3.block_partition(2).unwrap();
    let t = s3.character_table().unwrap();
    let two = (0..3).find(|&i| t.degree(i) == 2).expect("2-dim");
    let b_two = b2.block_of(two);
    let d = b2.block(b_two).defect_groups()[0].clone();
    assert!(d.is_trivial());
    let canon = canonical_character(&b2, b_two, &d).unwrap();
    // D C_N(D) = S3 itself and eta = theta
    assert_eq!(canon.dc.order(), 6);
    assert!(canon.all.contains(&two));

    // principal 2-block of S3: D = C2, eta found with bl(eta)^N principal
    let pb = b2.principal_block();
    let d = b2.block(pb).defect_groups()[0].clone();
    assert_eq!(d.order(), 2);
    let canon = canonical_character(&b2, pb, &d).unwrap();
    assert!(!canon.all.is_empty());
    // D is in the kernel of the representative
    let dc_table = canon.dc.character_table().unwrap();
    for dg in d.generators() {
        let k = canon.dc.class_of(dg).unwrap();
        assert_eq!(
            dc_table.value(canon.representative, k),
            dc_table.character(canon.representative).degree()
        );
    }
}

#[test]
fn stabilizer_of_swapped_blocks() {
    // N = A3 inside S3 at p = 7: the two nontrivial linear characters are
    // defect-zero blocks swapped by S3
    let s3 = catalog::symmetric(3);
    let a3 = PermGroup::from_generators(3, vec![Perm::parse_cycles("(1,2,3)", 3).unwrap()]).unwrap();
    let bn = a3.block_partition(7).unwrap();
    assert_eq!(bn.count(), 3);
    let tn = a3.character_table().unwrap();
    let nontriv = (0..3).find(|&i| {
        tn.degree(i) == 1 && i != tn.trivial_index()
    }).unwrap();
    let b = bn.block_of(nontriv);
    let (stab, orbit) = block_stabilizer(&s3, &bn, b).unwrap();
    assert_eq!(stab.order(), 3);
    assert_eq!(orbit.len(), 2);
    assert!(stab.same_group(&a3));

    // invariant block: stabilizer is everything
    let (stab, orbit) = block_stabilizer(&s3, &bn, bn.block_of(tn.trivial_index())).unwrap();
    assert_eq!(stab.order(), 6);
    assert_eq!(orbit.len(), 1);
}
