//! Constructions of the standard groups and actions used by the bundled
//! corpus and the test suites.

use crate::actions::ActionSpec;
use crate::error::Result;
use crate::ff::{Ff, FfElt, FfRef};
use crate::group::PermGroup;
use crate::perm::Perm;

pub fn cyclic(n: usize) -> PermGroup {
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    PermGroup::from_generators_with_order(n, vec![Perm::from_images(images).unwrap()], n as u128)
        .unwrap()
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::parse_cycles("(1,2)", n).unwrap());
    }
    if n >= 3 {
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        gens.push(Perm::from_images(cycle).unwrap());
    }
    let order = (1..=n as u128).product();
    PermGroup::from_generators_with_order(n, gens, order).unwrap()
}

pub fn alternating(n: usize) -> PermGroup {
    assert!(n >= 3);
    let mut gens = vec![Perm::parse_cycles("(1,2,3)", n).unwrap()];
    if n > 3 {
        if n % 2 == 1 {
            let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            gens.push(Perm::from_images(cycle).unwrap());
        } else {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for i in 1..n - 1 {
                images[i] = i as u32 + 1;
            }
            images[n - 1] = 1;
            gens.push(Perm::from_images(images).unwrap());
        }
    }
    let order: u128 = (1..=n as u128).product::<u128>() / 2;
    PermGroup::from_generators_with_order(n, gens, order).unwrap()
}

pub fn klein_four() -> PermGroup {
    PermGroup::from_generators_with_order(
        4,
        vec![
            Perm::parse_cycles("(1,2)(3,4)", 4).unwrap(),
            Perm::parse_cycles("(1,3)(2,4)", 4).unwrap(),
        ],
        4,
    )
    .unwrap()
}

pub fn dihedral(n: usize) -> PermGroup {
    assert!(n >= 3);
    let rot: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    PermGroup::from_generators_with_order(
        n,
        vec![
            Perm::from_images(rot).unwrap(),
            Perm::from_images(refl).unwrap(),
        ],
        2 * n as u128,
    )
    .unwrap()
}

/// Q8 in its right regular representation on the 8 elements
/// 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion8() -> PermGroup {
    let i = Perm::from_images(vec![2, 3, 1, 0, 7, 6, 4, 5]).unwrap();
    let j = Perm::from_images(vec![4, 5, 6, 7, 1, 0, 3, 2]).unwrap();
    PermGroup::from_generators_with_order(8, vec![i, j], 8).unwrap()
}

/// The action of C3 on Q8 cycling i -> j -> k.
pub fn q8_with_c3() -> Result<(PermGroup, ActionSpec)> {
    let q8 = quaternion8();
    let perm_i = q8.generators()[0].clone();
    let perm_j = q8.generators()[1].clone();
    let perm_k = perm_i.then(&perm_j);
    let spec = ActionSpec::new(&q8, vec![vec![perm_j, perm_k]])?;
    Ok((q8, spec))
}

/// C7 with the order-3 automorphism x -> x^2.
pub fn c7_with_c3() -> Result<(PermGroup, ActionSpec)> {
    let c7 = cyclic(7);
    let g = c7.generators()[0].clone();
    let spec = ActionSpec::new(&c7, vec![vec![g.then(&g)]])?;
    Ok((c7, spec))
}

/// SL(2,3) acting on the 8 nonzero vectors of GF(3)^2.
pub fn sl2_3() -> PermGroup {
    // vectors (x,y) != (0,0), indexed in lexicographic order
    let idx = |x: u64, y: u64| -> u32 { (x * 3 + y - 1) as u32 };
    let act = |m: [[u64; 2]; 2]| -> Perm {
        let mut images = vec![0u32; 8];
        for x in 0..3u64 {
            for y in 0..3u64 {
                if x == 0 && y == 0 {
                    continue;
                }
                let nx = (m[0][0] * x + m[0][1] * y) % 3;
                let ny = (m[1][0] * x + m[1][1] * y) % 3;
                images[idx(x, y) as usize] = idx(nx, ny);
            }
        }
        Perm::from_images(images).unwrap()
    };
    let s = act([[0, 2], [1, 0]]);
    let t = act([[1, 1], [0, 1]]);
    PermGroup::from_generators_with_order(8, vec![s, t], 24).unwrap()
}

/// The copy of Q8 inside SL(2,3) (its Sylow 2-subgroup).
pub fn q8_in_sl2_3(sl23: &PermGroup) -> Result<PermGroup> {
    sl23.sylow(2)
}

/// Extraspecial group 3^(1+2) of exponent 3 on 9 points, with generators
/// x: (u,v) -> (u+1,v) and y: (u,v) -> (u,v+u); z = [x,y] shifts v.
pub fn extraspecial_27() -> PermGroup {
    let idx = |u: u64, v: u64| -> u32 { (u * 3 + v) as u32 };
    let mut x = vec![0u32; 9];
    let mut y = vec![0u32; 9];
    for u in 0..3u64 {
        for v in 0..3u64 {
            x[idx(u, v) as usize] = idx((u + 1) % 3, v);
            y[idx(u, v) as usize] = idx(u, (v + u) % 3);
        }
    }
    PermGroup::from_generators_with_order(
        9,
        vec![Perm::from_images(x).unwrap(), Perm::from_images(y).unwrap()],
        27,
    )
    .unwrap()
}

/// Q8 acting on 3^(1+2) through SL(2,3) on the Frattini quotient, fixing
/// the center pointwise.
///
/// The naive generator assignments from the matrices A = [[0,2],[1,0]] and
/// B = [[1,1],[1,2]] compose only up to inner automorphisms, so both maps
/// are corrected by central twists until the closure is an honest Q8.
pub fn extraspecial_27_with_q8() -> Result<(PermGroup, ActionSpec)> {
    let e = extraspecial_27();
    let x = e.generators()[0].clone();
    let y = e.generators()[1].clone();
    let z = x.comm(&y);
    let zp = |k: u32| -> Perm { z.pow(k as i64) };
    for ai in 0..3 {
        for aj in 0..3 {
            let map_a = vec![y.then(&zp(ai)), x.then(&x).then(&zp(aj))];
            for bi in 0..3 {
                for bj in 0..3 {
                    let map_b = vec![
                        x.then(&y).then(&zp(bi)),
                        x.then(&y).then(&y).then(&zp(bj)),
                    ];
                    let spec = ActionSpec::new(&e, vec![map_a.clone(), map_b])?;
                    if spec.a_order() == 8 {
                        return Ok((e, spec));
                    }
                }
            }
        }
    }
    unreachable!("a Q8 complement exists by Schur-Zassenhaus")
}

/// Elementary abelian 2^4 on 8 points with a fixed-point-free C5 action.
pub fn c2_4_with_c5() -> Result<(PermGroup, ActionSpec)> {
    let gens: Vec<Perm> = (0..4)
        .map(|i| {
            let mut images: Vec<u32> = (0..8).collect();
            images.swap(2 * i, 2 * i + 1);
            Perm::from_images(images).unwrap()
        })
        .collect();
    let g = PermGroup::from_generators_with_order(8, gens.clone(), 16)?;
    // companion matrix of x^4+x^3+x^2+x+1 over GF(2)
    let e_all = gens[0].then(&gens[1]).then(&gens[2]).then(&gens[3]);
    let images = vec![gens[1].clone(), gens[2].clone(), gens[3].clone(), e_all];
    let spec = ActionSpec::new(&g, vec![images])?;
    Ok((g, spec))
}

/// SL(2,q) for even q on the q+1 points of the projective line, together
/// with its generator matrices.
fn sl2_even(f: &FfRef) -> (PermGroup, Vec<[[FfElt; 2]; 2]>) {
    let q = f.order();
    let z = f.x();
    let one = f.one();
    let zero = f.zero();
    let u = [[one, one], [zero, one]];
    let w = [[zero, one], [one, zero]];
    let d = [[z, zero], [zero, f.inv(z)]];
    let mats = vec![u, w, d];
    let gens: Vec<Perm> = mats.iter().map(|m| projective_perm(f, m)).collect();
    let order = (q as u128) * (q as u128 - 1) * (q as u128 + 1);
    let g = PermGroup::from_generators_with_order(q as usize + 1, gens, order).unwrap();
    (g, mats)
}

/// Point order: index i < q is (elt_i : 1) with elt_i enumerated by
/// coefficient tuples; index q is (1 : 0).
fn projective_perm(f: &FfRef, m: &[[FfElt; 2]; 2]) -> Perm {
    let q = f.order();
    let elt = |i: u64| -> FfElt {
        // base-p digits of i as coefficients
        let mut digits = Vec::with_capacity(f.degree());
        let mut v = i;
        for _ in 0..f.degree() {
            digits.push(v % f.p());
            v /= f.p();
        }
        f.from_coeffs(&digits)
    };
    let index_of = |e: FfElt| -> u64 {
        let mut out = 0u64;
        for (j, &c) in e.coeffs(f.degree()).iter().enumerate().rev() {
            let _ = j;
            out = out * f.p() + c as u64;
        }
        out
    };
    let apply = |x: FfElt, y: FfElt| -> u32 {
        let nx = f.add(f.mul(m[0][0], x), f.mul(m[0][1], y));
        let ny = f.add(f.mul(m[1][0], x), f.mul(m[1][1], y));
        if ny.is_zero() {
            q as u32
        } else {
            index_of(f.mul(nx, f.inv(ny))) as u32
        }
    };
    let mut images = vec![0u32; q as usize + 1];
    for i in 0..q {
        images[i as usize] = apply(elt(i), f.one());
    }
    images[q as usize] = apply(f.one(), f.zero());
    Perm::from_images(images).unwrap()
}

/// SL(2,32) on 33 points with the order-5 field automorphism.
pub fn sl2_32_with_c5() -> Result<(PermGroup, ActionSpec)> {
    let f = Ff::new(2, 5)?;
    let (g, mats) = sl2_even(&f);
    // Frobenius x -> x^2 entrywise: u, w fixed; d -> d^2
    let frob = |m: &[[FfElt; 2]; 2]| -> [[FfElt; 2]; 2] {
        [
            [f.mul(m[0][0], m[0][0]), f.mul(m[0][1], m[0][1])],
            [f.mul(m[1][0], m[1][0]), f.mul(m[1][1], m[1][1])],
        ]
    };
    let images: Vec<Perm> = mats.iter().map(|m| projective_perm(&f, &frob(m))).collect();
    let spec = ActionSpec::new(&g, vec![images])?;
    Ok((g, spec))
}

/// The Suzuki group Sz(8) on the 65 points of its ovoid, as 4x4 matrices
/// over GF(8), with the order-3 field automorphism.
pub fn sz8_with_c3() -> Result<(PermGroup, ActionSpec)> {
    let f = Ff::new(2, 3)?;
    let theta = |x: FfElt| f.mul(f.mul(x, x), f.mul(x, x)); // x^4 = x^(2^(n+1)), n = 1
    let zero = f.zero();
    let one = f.one();
    // lower unitriangular u(a,b)
    let u = |a: FfElt, b: FfElt| -> [[FfElt; 4]; 4] {
        let at = theta(a);
        let a1t = f.mul(a, at); // a^(1+θ)
        let a2t = f.mul(f.mul(a, a), at); // a^(2+θ)
        let bt = theta(b);
        [
            [one, zero, zero, zero],
            [a, one, zero, zero],
            [f.add(a1t, b), at, one, zero],
            [f.add(f.add(a2t, f.mul(a, b)), bt), b, a, one],
        ]
    };
    let z = f.x();
    let d = {
        let z2 = f.mul(z, z);
        let z3 = f.mul(z2, z);
        [
            [z3, zero, zero, zero],
            [zero, z2, zero, zero],
            [zero, zero, f.inv(z2), zero],
            [zero, zero, zero, f.inv(z3)],
        ]
    };
    let w = {
        let mut m = [[zero; 4]; 4];
        for i in 0..4 {
            m[i][3 - i] = one;
        }
        m
    };
    let mats = vec![u(one, zero), u(zero, one), d, w];
    let (g, points) = ovoid_action(&f, &mats)?;
    // field automorphism x -> x^2 entrywise
    let frob_mat = |m: &[[FfElt; 4]; 4]| -> [[FfElt; 4]; 4] {
        let mut out = [[zero; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = f.mul(m[i][j], m[i][j]);
            }
        }
        out
    };
    let images: Vec<Perm> = mats
        .iter()
        .map(|m| point_perm(&f, &frob_mat(m), &points))
        .collect::<Result<_>>()?;
    let spec = ActionSpec::new(&g, vec![images])?;
    Ok((g, spec))
}

type P4 = [FfElt; 4];

/// Orbit of the projective point e1 under the generated matrix group, and
/// the induced permutation group (order certified to |Sz(8)| = 29120).
fn ovoid_action(f: &FfRef, mats: &[[[FfElt; 4]; 4]]) -> Result<(PermGroup, Vec<P4>)> {
    let normalize = |v: P4| -> P4 {
        let lead = v.iter().find(|x| !x.is_zero()).copied().unwrap();
        let inv = f.inv(lead);
        [
            f.mul(v[0], inv),
            f.mul(v[1], inv),
            f.mul(v[2], inv),
            f.mul(v[3], inv),
        ]
    };
    let apply = |m: &[[FfElt; 4]; 4], v: &P4| -> P4 {
        let mut out = [f.zero(); 4];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *o = f.add(*o, f.mul(m[i][j], v[j]));
            }
        }
        normalize(out)
    };
    let start = normalize([f.one(), f.zero(), f.zero(), f.zero()]);
    let mut points = vec![start];
    let mut seen = std::collections::HashMap::new();
    seen.insert(points[0], 0u32);
    let mut head = 0;
    while head < points.len() {
        let v = points[head];
        head += 1;
        for m in mats {
            let w = apply(m, &v);
            if !seen.contains_key(&w) {
                seen.insert(w, points.len() as u32);
                points.push(w);
            }
        }
    }
    let gens: Vec<Perm> = mats
        .iter()
        .map(|m| point_perm(f, m, &points))
        .collect::<Result<_>>()?;
    let g = PermGroup::from_generators_with_order(points.len(), gens, 29120)?;
    Ok((g, points))
}

fn point_perm(f: &FfRef, m: &[[FfElt; 4]; 4], points: &[P4]) -> Result<Perm> {
    let index: std::collections::HashMap<P4, u32> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, i as u32))
        .collect();
    let normalize = |v: P4| -> P4 {
        let lead = v.iter().find(|x| !x.is_zero()).copied().unwrap();
        let inv = f.inv(lead);
        [
            f.mul(v[0], inv),
            f.mul(v[1], inv),
            f.mul(v[2], inv),
            f.mul(v[3], inv),
        ]
    };
    let mut images = Vec::with_capacity(points.len());
    for v in points {
        let mut out = [f.zero(); 4];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *o = f.add(*o, f.mul(m[i][j], v[j]));
            }
        }
        let w = normalize(out);
        let idx = index.get(&w).ok_or_else(|| {
            crate::error::Error::TooLarge("matrix does not preserve the point set".into())
        })?;
        images.push(*idx);
    }
    Ok(Perm::from_images(images).map_err(|e| e)?)
}
