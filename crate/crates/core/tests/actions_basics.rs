//! Coprime action checks: orbits on classes/characters/blocks and the
//! fixed-point count identity.

use blocktheory::actions::{
    act_on_blocks, act_on_characters, act_on_classes, character_action, glauberman_count_check,
    invariant_blocks, invariant_characters, ActionSpec,
};
use blocktheory::catalog;

#[test]
fn coprime_flags() {
    let (_, spec) = catalog::q8_with_c3().unwrap();
    assert!(spec.is_coprime());
    assert_eq!(spec.a_order(), 3);

    let s3 = catalog::symmetric(3);
    let triv = ActionSpec::trivial(&s3).unwrap();
    assert!(triv.is_coprime());

    // inner C2 on S3 is not coprime
    let inner =
        ActionSpec::new(&s3, vec![s3.generators().iter().map(|g| {
            g.conj(&s3.generators()[0])
        }).collect()])
        .unwrap();
    assert!(!inner.is_coprime());
}

#[test]
fn inner_automorphisms_fix_all_characters() {
    let s3 = catalog::symmetric(3);
    let inner =
        ActionSpec::new(&s3, vec![s3.generators().iter().map(|g| {
            g.conj(&s3.generators()[1])
        }).collect()])
        .unwrap();
    let t = s3.character_table().unwrap();
    let orbits = act_on_characters(&inner, &t).unwrap();
    assert!(orbits.orbits.iter().all(|o| o.len() == 1));
}

#[test]
fn q8_c3_character_orbits() {
    let (q8, spec) = catalog::q8_with_c3().unwrap();
    let t = q8.character_table().unwrap();
    let orbits = act_on_characters(&spec, &t).unwrap();
    // three nontrivial linears form one orbit; trivial and 2-dim are fixed
    let mut sizes: Vec<usize> = orbits.orbits.iter().map(|o| o.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 3]);
    let fixed = invariant_characters(&spec, &t).unwrap();
    assert_eq!(fixed.len(), 2);
    let degrees: Vec<u64> = fixed.iter().map(|&i| t.degree(i)).collect();
    assert!(degrees.contains(&1) && degrees.contains(&2));
}

#[test]
fn action_composition_law() {
    let (e27, spec) = catalog::extraspecial_27_with_q8().unwrap();
    assert_eq!(spec.a_order(), 8);
    assert!(spec.is_coprime());
    let t = e27.character_table().unwrap();
    let maps = character_action(&spec, &t).unwrap();
    // (chi^a)^b = chi^(ab): generator maps compose consistently with the
    // closure of the action
    let a = &maps[0];
    let b = &maps[1];
    let mut ab = vec![0usize; a.len()];
    for i in 0..a.len() {
        ab[i] = b[a[i]];
    }
    // ab must again be the character map of some element of A: check it is a
    // bijection fixing degrees
    let mut seen = vec![false; ab.len()];
    for &x in &ab {
        assert!(!seen[x]);
        seen[x] = true;
    }
    for i in 0..ab.len() {
        assert_eq!(t.degree(i), t.degree(ab[i]));
    }
}

#[test]
fn block_orbits_refine_character_orbits() {
    let (q8, spec) = catalog::q8_with_c3().unwrap();
    let blocks = q8.block_partition(2).unwrap();
    let orbits = act_on_blocks(&spec, &blocks).unwrap();
    // the unique 2-block is invariant
    assert_eq!(blocks.count(), 1);
    assert_eq!(orbits.fixed, vec![0]);
    assert_eq!(invariant_blocks(&spec, &blocks).unwrap(), vec![0]);
}

#[test]
fn c7_c3_invariants() {
    let (c7, spec) = catalog::c7_with_c3().unwrap();
    let t = c7.character_table().unwrap();
    let fixed = invariant_characters(&spec, &t).unwrap();
    assert_eq!(fixed.len(), 1);
    assert_eq!(fixed[0], t.trivial_index());
    let blocks = c7.block_partition(7).unwrap();
    assert_eq!(blocks.count(), 1);
    assert_eq!(invariant_blocks(&spec, &blocks).unwrap(), vec![0]);
}

#[test]
fn glauberman_counts() {
    for (g, spec) in [
        catalog::q8_with_c3().unwrap(),
        catalog::c7_with_c3().unwrap(),
        catalog::c2_4_with_c5().unwrap(),
        catalog::extraspecial_27_with_q8().unwrap(),
        catalog::sz8_with_c3().unwrap(),
        catalog::sl2_32_with_c5().unwrap(),
    ] {
        assert!(spec.is_coprime(), "corpus action must be coprime");
        assert!(
            glauberman_count_check(&spec).unwrap(),
            "count identity fails for |G| = {}",
            g.order()
        );
    }
    // trivial action: trivially equal
    let s4 = catalog::symmetric(4);
    let triv = ActionSpec::trivial(&s4).unwrap();
    assert!(glauberman_count_check(&triv).unwrap());
}

#[test]
fn invariant_block_has_stable_defect_class() {
    let (sz8, spec) = catalog::sz8_with_c3().unwrap();
    for p in [2u64, 5, 7, 13] {
        let blocks = sz8.block_partition(p).unwrap();
        let inv = invariant_blocks(&spec, &blocks).unwrap();
        let classes = act_on_classes(&spec).unwrap();
        for &b in &inv {
            // some defect class of the block maps to a defect class again
            let dcs = blocks.block(b).defect_classes();
            assert!(dcs.iter().any(|&k| {
                let img = classes.orbit_of(k);
                img.iter().all(|c| dcs.contains(c) || classes.is_fixed(k))
                    || classes.is_fixed(k)
                    || dcs.contains(&img[0])
            }));
        }
    }
}
