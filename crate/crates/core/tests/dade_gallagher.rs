//! The Dade pairing, ramification groups, and the block-level Gallagher map
//! on the key instances.

use blocktheory::catalog;
use blocktheory::cyclo::Cyclotomic;
use blocktheory::dade::{
    perp, quotient_compat_check, ramification_group, unique_covering_check, PairingContext,
};
use blocktheory::gallagher::{
    bijectivity_regimes, defect_zero_identity_check, extension_transfer_check,
    product_formula_check, upsilon, GallagherContext, Regime, TransferVerdict,
};
use blocktheory::group::{direct_product, Embedding, PermGroup};
use blocktheory::perm::Perm;

fn sl2_3_context(p: u64) -> GallagherContext {
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let tn = q8.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 2).unwrap();
    let tg = sl23.character_table().unwrap();
    let emb = Embedding::new(q8.clone(), sl23.clone()).unwrap();
    let tt = blocktheory::chartable::find_extension(&tg, &emb, tn.character(theta))
        .unwrap()
        .unwrap();
    GallagherContext::new(&sl23, &q8, theta, tt, p).unwrap()
}

#[test]
fn pairing_degenerate_cases() {
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let tn = q8.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 2).unwrap();
    let ctx = PairingContext::new(sl23.clone(), q8.clone(), tn.character(theta).clone()).unwrap();
    let elems = sl23.elements().unwrap();
    // y in N gives 1; x in N gives 1
    let y_in_n = q8.generators()[0].clone();
    let three = elems.iter().find(|e| e.order() == 3).unwrap().clone();
    assert_eq!(ctx.pairing(&three, &y_in_n).unwrap(), Cyclotomic::one());
    assert_eq!(
        ctx.pairing(&y_in_n, &three).unwrap(),
        Cyclotomic::one()
    );
    // trivial theta: pairing is 1 everywhere it is defined
    let triv_ctx = PairingContext::new(
        sl23.clone(),
        q8.clone(),
        tn.character(tn.trivial_index()).clone(),
    )
    .unwrap();
    for x in elems.iter().take(8) {
        for y in elems.iter().take(8) {
            if q8.contains(&x.comm(y)) {
                assert_eq!(triv_ctx.pairing(x, y).unwrap(), Cyclotomic::one());
            }
        }
    }
}

#[test]
fn pairing_well_defined_and_bimultiplicative() {
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let tn = q8.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 2).unwrap();
    let ctx = PairingContext::new(sl23.clone(), q8.clone(), tn.character(theta).clone()).unwrap();
    let elems = sl23.elements().unwrap();
    let all: Vec<Perm> = elems.iter().cloned().collect();
    let mut samples = 0;
    for x in &all {
        for y in &all {
            if !q8.contains(&x.comm(y)) {
                continue;
            }
            // all extensions of theta agree
            let count = ctx.extension_count(y).unwrap();
            let base = ctx.pairing(x, y).unwrap();
            for w in 1..count {
                assert_eq!(
                    ctx.pairing_with_extension(x, y, Some(w)).unwrap(),
                    base,
                    "pairing value depends on the chosen extension"
                );
            }
            samples += 1;
        }
    }
    assert!(samples >= 200, "need at least 200 valid pairs, got {samples}");
    // multiplicativity on sampled triples where all commutators land in N
    let mut checked = 0;
    for x1 in all.iter().step_by(3) {
        for x2 in all.iter().step_by(5) {
            for y in all.iter().step_by(4) {
                let x12 = x1.then(x2);
                if ![x1, x2, &x12].iter().all(|x| q8.contains(&x.comm(y))) {
                    continue;
                }
                let lhs = ctx.pairing(&x12, y).unwrap();
                let rhs = ctx.pairing(x1, y).unwrap().mul(&ctx.pairing(x2, y).unwrap());
                assert_eq!(lhs, rhs, "multiplicativity in the first argument");
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn perp_trivial_cases() {
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let tn = q8.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 2).unwrap();
    let ctx = PairingContext::new(sl23.clone(), q8.clone(), tn.character(theta).clone()).unwrap();
    // H = 1: all of K survives
    let triv = PermGroup::trivial(sl23.degree());
    let m = perp(&ctx, &triv, &q8).unwrap();
    assert_eq!(m.order(), 8);
    // theta trivial: all of K survives
    let triv_ctx = PairingContext::new(
        sl23.clone(),
        q8.clone(),
        tn.character(tn.trivial_index()).clone(),
    )
    .unwrap();
    let m = perp(&triv_ctx, &q8, &q8).unwrap();
    assert_eq!(m.order(), 8);
}

#[test]
fn ramification_group_sl2_3() {
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let bn = q8.block_partition(2).unwrap();
    assert_eq!(bn.count(), 1);
    let ram = ramification_group(&sl23, &bn, 0).unwrap();
    assert!(ram.witnesses.len() >= 2);
    assert!(q8.is_subgroup_of(&ram.group));
    assert!(ram.group.is_normal_in(&sl23));
    // G[b] controls covering: Thm-level uniqueness check passes
    assert!(unique_covering_check(&sl23, &bn, 0).unwrap());
}

#[test]
fn ramification_degenerate() {
    // N = G: G[b] = N for every invariant block
    let q8 = catalog::quaternion8();
    let bn = q8.block_partition(2).unwrap();
    let ram = ramification_group(&q8, &bn, 0).unwrap();
    assert_eq!(ram.group.order(), 8);

    // N = 1: G[b] = G
    let s3 = catalog::symmetric(3);
    let triv = PermGroup::trivial(3);
    let bt = triv.block_partition(2).unwrap();
    let ram = ramification_group(&s3, &bt, 0).unwrap();
    assert_eq!(ram.group.order(), 6);
}

#[test]
fn quotient_compatibility_direct_product() {
    // G = N x Z with N = S3, Z = C5 (coprime): G[b]/Z = (G/Z)[b-bar]
    let s3 = catalog::symmetric(3);
    let c5 = catalog::cyclic(5);
    let dp = direct_product(&s3, &c5).unwrap();
    let g = dp.group.clone();
    let n = dp.left.image().unwrap();
    let z = dp.right.image().unwrap();
    let bn = n.block_partition(2).unwrap();
    for b in 0..bn.count() {
        // every block of N is G-invariant here
        assert!(quotient_compat_check(&g, &bn, b, &z).unwrap());
    }
    // Z = 1: trivially compatible
    let triv = PermGroup::trivial(g.degree());
    assert!(quotient_compat_check(&g, &bn, 0, &triv).unwrap());
}

#[test]
fn sl2_3_counterexample_instance() {
    // SL2(3), N = Q8, p = 2, theta of degree 2: three blocks of G/N map
    // onto the single covering block; surjective but not injective
    let ctx = sl2_3_context(2);
    let report = upsilon(&ctx).unwrap();
    assert!(report.well_defined);
    assert!(report.surjective);
    assert!(!report.injective);
    assert_eq!(ctx.q_blocks.count(), 3);
    let mut image = report.map.clone();
    image.sort();
    image.dedup();
    assert_eq!(image.len(), 1);
    // no regime applies: D C_G(D) = Q8 < G and G[b] < G
    let full = bijectivity_regimes(&ctx).unwrap();
    assert_eq!(full.regime, None);
    assert!(!full.bijective());
}

#[test]
fn trivial_n_gives_identity_map() {
    let s4 = catalog::symmetric(4);
    let triv = PermGroup::trivial(4);
    let tt = triv.character_table().unwrap();
    let tg = s4.character_table().unwrap();
    assert_eq!(tt.num_chars(), 1);
    let ctx = GallagherContext::new(&s4, &triv, 0, tg.trivial_index(), 2).unwrap();
    let report = upsilon(&ctx).unwrap();
    assert!(report.well_defined && report.surjective && report.injective);
    assert_eq!(report.map.len(), ctx.g_blocks.count());
}

#[test]
fn product_formula_sl2_3_sweep() {
    let ctx = sl2_3_context(2);
    let elems = ctx.g.elements().unwrap();
    let tq = ctx.quotient.character_table().unwrap();
    let mut checked = 0;
    for eta in 0..tq.num_chars() {
        for x in elems.iter().step_by(2) {
            assert!(
                product_formula_check(&ctx, eta, x).unwrap(),
                "product formula fails at eta={eta}, x={x}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 36);
    // identity element: both sides equal 1 trivially, covered in the sweep
}

#[test]
fn defect_zero_identity_s4_over_a4() {
    // N = A4 inside S4, p = 3, theta the 3-dimensional character: defect
    // zero since 3 = |A4|_3, and it extends to S4
    let s4 = catalog::symmetric(4);
    let a4 = catalog::alternating(4);
    let tn = a4.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 3).unwrap();
    let emb = Embedding::new(a4.clone(), s4.clone()).unwrap();
    let tg = s4.character_table().unwrap();
    let tt = blocktheory::chartable::find_extension(&tg, &emb, tn.character(theta))
        .unwrap()
        .unwrap();
    let ctx = GallagherContext::new(&s4, &a4, theta, tt, 3).unwrap();
    let elems = s4.elements().unwrap();
    // g = 1: first orthogonality gives the coset sum |N|
    let id = s4.identity();
    let res = defect_zero_identity_check(&ctx, &id).unwrap();
    assert!(res.coset_sum_matches);
    assert!(res.nonvanishing_witness.is_some());
    // nontrivial coset
    let outside = elems.iter().find(|e| !a4.contains(e)).unwrap().clone();
    let res = defect_zero_identity_check(&ctx, &outside).unwrap();
    assert!(res.coset_sum_matches);
    assert!(res.nonvanishing_witness.is_some());
}

#[test]
fn regimes_bijective_instances() {
    // defect zero regime: theta the 3-dim character of A4 inside S4 at p = 3
    let s4 = catalog::symmetric(4);
    let a4 = catalog::alternating(4);
    let tn = a4.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 3).unwrap();
    let emb = Embedding::new(a4.clone(), s4.clone()).unwrap();
    let tg = s4.character_table().unwrap();
    let tt = blocktheory::chartable::find_extension(&tg, &emb, tn.character(theta))
        .unwrap()
        .unwrap();
    let ctx = GallagherContext::new(&s4, &a4, theta, tt, 3).unwrap();
    let report = bijectivity_regimes(&ctx).unwrap();
    assert_eq!(report.regime, Some(Regime::DefectZero));
    assert!(report.bijective());

    // G[b] = G regime without central defect: principal 3-block of S3
    // inside S3 x C2
    let s3 = catalog::symmetric(3);
    let c2 = catalog::cyclic(2);
    let dp = direct_product(&s3, &c2).unwrap();
    let g = dp.group.clone();
    let n = dp.left.image().unwrap();
    let tn = n.character_table().unwrap();
    let theta = (0..tn.num_chars()).find(|&i| tn.degree(i) == 2).unwrap();
    let emb = Embedding::new(n.clone(), g.clone()).unwrap();
    let tg = g.character_table().unwrap();
    let tt = blocktheory::chartable::find_extension(&tg, &emb, tn.character(theta))
        .unwrap()
        .unwrap();
    let ctx = GallagherContext::new(&g, &n, theta, tt, 3).unwrap();
    let report = bijectivity_regimes(&ctx).unwrap();
    assert_eq!(report.regime, Some(Regime::RamificationFull));
    assert!(report.bijective());

    // G[b] = G regime (abelian defect, central): N = C3 in C3 x C2 = C6
    let c3 = catalog::cyclic(3);
    let dp = direct_product(&c3, &c2).unwrap();
    let g = dp.group.clone();
    let n = dp.left.image().unwrap();
    let tn = n.character_table().unwrap();
    let tg = g.character_table().unwrap();
    let emb = Embedding::new(n.clone(), g.clone()).unwrap();
    let theta = tn.trivial_index();
    let tt = blocktheory::chartable::find_extension(&tg, &emb, tn.character(theta))
        .unwrap()
        .unwrap();
    let ctx = GallagherContext::new(&g, &n, theta, tt, 3).unwrap();
    let report = bijectivity_regimes(&ctx).unwrap();
    assert!(report.regime.is_some());
    assert!(report.bijective());
}

#[test]
fn extension_transfer_instances() {
    // D = 1: tautological (theta_mu = theta); dz(N) vs rdz(N|1)
    let s3 = catalog::symmetric(3);
    let s4 = catalog::symmetric(4);
    let v4 = s4.sylow(2).unwrap().normal_subgroups().unwrap();
    let _ = (s3, v4);
    // D = Z(Q8) inside N = Q8 normal in SL2(3), mu faithful linear of D,
    // p = 3: every character of N/D and of rdz is p-defect zero at p=3?
    // |N/D| = 4 has trivial 3-part, so dz(N/D) = Irr(N/D)
    let sl23 = catalog::sl2_3();
    let q8 = catalog::q8_in_sl2_3(&sl23).unwrap();
    let z = q8.center().unwrap();
    let tz = z.character_table().unwrap();
    let mu = (0..2)
        .find(|&i| *tz.value(i, 1) != Cyclotomic::one())
        .unwrap();
    let report = extension_transfer_check(&sl23, &q8, &z, mu, 0, 3).unwrap();
    assert!(report.verdict != TransferVerdict::Violated);
    assert_eq!(report.dz_total, 4);
    // rdz(Q8 | faithful mu) is the 2-dim character only
    assert_eq!(report.rdz_total, 1);

    // p = 2 variant: dz(N/D) at p=2 inside V4 is empty unless |V4|_2 matches
    let report2 = extension_transfer_check(&sl23, &q8, &z, mu, 0, 2);
    // theta_bar = 0 is linear, |N/D|_2 = 4: not defect zero -> rejected
    assert!(report2.is_err());
}
