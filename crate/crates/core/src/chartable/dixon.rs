//! Exact character tables by the Dixon-Schneider method: class-matrix
//! eigenvectors over GF(l) for a splitting prime l, followed by the discrete
//! Fourier lift of every value into the cyclotomic field of the element
//! order.

use crate::chartable::{CharacterTable, ClassFunction};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::util::{mul_mod, pow_mod, prime_one_mod, primitive_root, sqrt_mod};

struct ModMat {
    n: usize,
    a: Vec<u64>,
}

impl ModMat {
    fn zero(n: usize) -> Self {
        ModMat {
            n,
            a: vec![0; n * n],
        }
    }
    #[inline]
    fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }
    #[inline]
    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.n + j] = v;
    }
}

/// Row-space basis in reduced echelon form.
struct Subspace {
    /// rows x r matrix, rref
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

pub fn character_table(group: &PermGroup) -> Result<CharacterTable> {
    let cls = group.conjugacy_classes()?;
    let elems = group.elements()?;
    let r = cls.count();
    let order = group.order_u64();
    let exponent = group.exponent()?;
    let isqrt = (order as f64).sqrt() as u64 + 1;
    let l = prime_one_mod(exponent, 2 * isqrt);
    let w = primitive_root(l);

    // transposed class matrices M_i = A_i^T act on row vectors; the central
    // character rows are their simultaneous eigenvectors
    let class_matrix = |i: usize| -> ModMat {
        let mut m = ModMat::zero(r);
        for k in 0..r {
            let zk = cls.rep(k);
            for &xi in cls.members(i) {
                let x = elems.get(xi);
                let y = x.inverse().then(zk);
                let j = cls.class_of_index(elems.index_of(&y).unwrap());
                // A_i[j][k] += 1; transposed: M[k][j]
                let v = m.at(k, j);
                m.set(k, j, v + 1);
            }
        }
        m
    };

    // split order: small classes first (cheapest matrices)
    let mut split_order: Vec<usize> = (1..r).collect();
    split_order.sort_by_key(|&i| (cls.size(i), i));

    let full = Subspace {
        rows: (0..r)
            .map(|i| {
                let mut v = vec![0u64; r];
                v[i] = 1;
                v
            })
            .collect(),
        pivots: (0..r).collect(),
    };
    let mut spaces = vec![full];
    for &i in &split_order {
        if spaces.iter().all(|s| s.rows.len() == 1) {
            break;
        }
        let m = class_matrix(i);
        let mut next = Vec::new();
        for s in spaces {
            if s.rows.len() == 1 {
                next.push(s);
                continue;
            }
            next.extend(split_space(&s, &m, l));
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::LiftFailure(format!(
            "eigenspace splitting stopped at {} of {} spaces",
            spaces.len(),
            r
        )));
    }

    // normalize each eigenvector at the identity class
    let mut omegas: Vec<Vec<u64>> = Vec::with_capacity(r);
    for s in &spaces {
        let v = &s.rows[0];
        if v[0] == 0 {
            return Err(Error::LiftFailure("eigenvector vanishes at the identity class".into()));
        }
        let inv = pow_mod(v[0], l - 2, l);
        omegas.push(v.iter().map(|&x| mul_mod(x, inv, l)).collect());
    }

    // degrees from the orthogonality normalization
    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for omega in &omegas {
        let mut s = 0u64;
        for j in 0..r {
            let t = mul_mod(omega[j], omega[cls.inverse_class(j)], l);
            let inv_kj = pow_mod(cls.size(j) % l, l - 2, l);
            s = (s + mul_mod(t, inv_kj, l)) % l;
        }
        let d_sq = mul_mod(order % l, pow_mod(s, l - 2, l), l);
        let root = sqrt_mod(d_sq, l)
            .ok_or_else(|| Error::LiftFailure("degree square has no square root".into()))?;
        let d = root.min(l - root);
        if d == 0 || d > isqrt {
            return Err(Error::LiftFailure(format!("implausible degree {d}")));
        }
        // chi*(g_j) = omega_j * d / |K_j|
        let chi_star: Vec<u64> = (0..r)
            .map(|j| {
                let inv_kj = pow_mod(cls.size(j) % l, l - 2, l);
                mul_mod(mul_mod(omega[j], d % l, l), inv_kj, l)
            })
            .collect();
        // lift each value by the discrete Fourier transform over powers
        let mut values = Vec::with_capacity(r);
        for j in 0..r {
            let m = cls.rep_orders()[j];
            let zm = pow_mod(w, (l - 1) / m, l);
            let zm_inv = pow_mod(zm, l - 2, l);
            // chi*(rep_j^s) for all s
            let mut star_pow = Vec::with_capacity(m as usize);
            let rep = cls.rep(j);
            let mut pw = group.identity();
            for _ in 0..m {
                let c = cls.class_of_index(elems.index_of(&pw).unwrap());
                star_pow.push(chi_star[c]);
                pw = pw.then(rep);
            }
            let m_inv = pow_mod(m % l, l - 2, l);
            let mut mults = Vec::with_capacity(m as usize);
            let mut total = 0u64;
            for t in 0..m {
                let mut acc = 0u64;
                for (s, &cs) in star_pow.iter().enumerate() {
                    let e = (t as u128 * s as u128 % m as u128) as u64;
                    acc = (acc + mul_mod(cs, pow_mod(zm_inv, e, l), l)) % l;
                }
                let c_t = mul_mod(acc, m_inv, l);
                total += c_t;
                mults.push(c_t);
            }
            if total != d {
                return Err(Error::LiftFailure(format!(
                    "eigenvalue multiplicities sum to {total}, expected degree {d}"
                )));
            }
            let mut val = Cyclotomic::zero();
            for (t, &c_t) in mults.iter().enumerate() {
                if c_t != 0 {
                    val = val.add(
                        &Cyclotomic::root_of_unity(m, t as i64)
                            .scale(&num_rational::BigRational::from_integer(c_t.into())),
                    );
                }
            }
            values.push(val);
        }
        rows.push((d, values));
    }

    // deterministic order: by degree, then by the value sequence
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            for (x, y) in a.1.iter().zip(b.1.iter()) {
                let o = x.key().cmp(&y.key());
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let sum_sq: u128 = rows.iter().map(|(d, _)| (*d as u128) * (*d as u128)).sum();
    if sum_sq != group.order() {
        return Err(Error::LiftFailure(format!(
            "degree squares sum to {sum_sq}, expected {}",
            group.order()
        )));
    }

    let table = CharacterTable::assemble(
        group.clone(),
        rows.iter()
            .map(|(_, v)| ClassFunction::new(group.clone(), v.clone()))
            .collect(),
        rows.iter().map(|(d, _)| *d).collect(),
    )?;
    table.verify_row_orthogonality()?;
    Ok(table)
}

/// Splits a row-stable subspace into the eigenspaces of M restricted to it.
fn split_space(s: &Subspace, m: &ModMat, l: u64) -> Vec<Subspace> {
    let d = s.rows.len();
    let r = s.rows[0].len();
    // images of basis rows
    let image = |v: &[u64]| -> Vec<u64> {
        let mut w = vec![0u64; r];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..r {
                let mij = m.at(i, j);
                if mij != 0 {
                    w[j] = (w[j] + mul_mod(vi, mij, l)) % l;
                }
            }
        }
        w
    };
    // restriction matrix: coordinates of images at the pivot columns
    let mut rest = vec![vec![0u64; d]; d];
    for (bi, b) in s.rows.iter().enumerate() {
        let im = image(b);
        for (t, &p) in s.pivots.iter().enumerate() {
            rest[bi][t] = im[p];
        }
    }
    // characteristic polynomial by Leverrier-free expansion: use Hessenberg
    let cp = charpoly_mod(&rest, l);
    let mut out = Vec::new();
    for lambda in 0..l {
        if eval_poly(&cp, lambda, l) != 0 {
            continue;
        }
        // kernel of (rest - lambda I) acting on row vectors: w * (R - λI) = 0
        let mut mt = vec![vec![0u64; d]; d];
        for i in 0..d {
            for j in 0..d {
                mt[i][j] = rest[j][i] % l; // transpose
            }
            mt[i][i] = (mt[i][i] + l - lambda % l) % l;
        }
        let kernel = nullspace(&mt, l);
        for kv in kernel_basis_to_subspaces(kernel, s, l, r) {
            out.push(kv);
        }
        if out.iter().map(|s| s.rows.len()).sum::<usize>() == d {
            break;
        }
    }
    debug_assert_eq!(out.iter().map(|s| s.rows.len()).sum::<usize>(), d);
    out
}

/// One subspace per eigenvalue: lift kernel coordinates back through the
/// basis and echelonize.
fn kernel_basis_to_subspaces(
    kernel: Vec<Vec<u64>>,
    s: &Subspace,
    l: u64,
    r: usize,
) -> Vec<Subspace> {
    if kernel.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for coord in kernel {
        let mut v = vec![0u64; r];
        for (bi, &c) in coord.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..r {
                v[j] = (v[j] + mul_mod(c, s.rows[bi][j], l)) % l;
            }
        }
        rows.push(v);
    }
    let (rows, pivots) = rref_mod(rows, l);
    vec![Subspace { rows, pivots }]
}

fn rref_mod(mut rows: Vec<Vec<u64>>, l: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = pow_mod(rows[rank][c], l - 2, l);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, l);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let t = mul_mod(rows[rank][j], f, l);
                    rows[i][j] = (rows[i][j] + l - t) % l;
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Nullspace basis of a square matrix acting on column vectors: solves Mx=0.
fn nullspace(m: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let (rows, pivots) = rref_mod(m.to_vec(), l);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &fc in &free {
        let mut v = vec![0u64; n];
        v[fc] = 1;
        for (pr, &pc) in pivots.iter().enumerate() {
            v[pc] = (l - rows[pr][fc] % l) % l;
        }
        out.push(v);
    }
    out
}

fn charpoly_mod(a: &[Vec<u64>], l: u64) -> Vec<u64> {
    // Hessenberg reduction then the leading-minor recurrence
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&x| x % l).collect()).collect();
    for c in 0..n.saturating_sub(2) {
        let Some(pr) = (c + 1..n).find(|&r| h[r][c] != 0) else {
            continue;
        };
        if pr != c + 1 {
            h.swap(c + 1, pr);
            for row in h.iter_mut() {
                row.swap(c + 1, pr);
            }
        }
        let inv = pow_mod(h[c + 1][c], l - 2, l);
        for r in c + 2..n {
            let f = mul_mod(h[r][c], inv, l);
            if f == 0 {
                continue;
            }
            for j in 0..n {
                let t = mul_mod(h[c + 1][j], f, l);
                h[r][j] = (h[r][j] + l - t) % l;
            }
            for i in 0..n {
                let t = mul_mod(h[i][r], f, l);
                h[i][c + 1] = (h[i][c + 1] + t) % l;
            }
        }
    }
    let mut ps: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        // p_m = (x - h[m-1][m-1]) p_{m-1} - sum beta terms
        let prev = ps[m - 1].clone();
        let mut p = vec![0u64; prev.len() + 1];
        for (i, &c) in prev.iter().enumerate() {
            p[i + 1] = (p[i + 1] + c) % l;
            p[i] = (p[i] + l - mul_mod(h[m - 1][m - 1], c, l) % l) % l;
        }
        let mut beta = 1u64;
        for i in 1..m {
            beta = mul_mod(beta, h[m - i][m - i - 1], l);
            if beta == 0 {
                break;
            }
            let coef = mul_mod(h[m - 1 - i][m - 1], beta, l);
            if coef == 0 {
                continue;
            }
            for (t, &c) in ps[m - 1 - i].iter().enumerate() {
                p[t] = (p[t] + l - mul_mod(coef, c, l)) % l;
            }
        }
        ps.push(p);
    }
    ps.pop().unwrap()
}

fn eval_poly(p: &[u64], x: u64, l: u64) -> u64 {
    let mut acc = 0u64;
    for &c in p.iter().rev() {
        acc = (mul_mod(acc, x, l) + c) % l;
    }
    acc
}
