//! Standard quandle constructions.

use super::{FiniteQuandle, QuandleError};
use crate::arith::{is_prime, reduce};
use crate::groups::matrix::{MatFp, Poly};
use crate::groups::{ConcreteGroup, Cosets, GroupAutomorphism};
use crate::permgroup::Perm;

/// Largest quandle produced by the constructors.
pub const MAX_QUANDLE_SIZE: usize = 4096;

pub fn projection(n: usize) -> FiniteQuandle {
    let table = (0..n * n).map(|i| (i % n) as u32).collect();
    FiniteQuandle::from_table(n, table).expect("projection quandle")
}

/// Elements of `Z_{n_1} × … × Z_{n_k}` in mixed radix, first factor fastest.
fn decode_mixed(moduli: &[u64], mut x: usize) -> Vec<u64> {
    moduli
        .iter()
        .map(|&m| {
            let d = (x % m as usize) as u64;
            x /= m as usize;
            d
        })
        .collect()
}

fn encode_mixed(moduli: &[u64], v: &[u64]) -> usize {
    moduli.iter().zip(v).rev().fold(0usize, |acc, (&m, &d)| acc * m as usize + d as usize)
}

/// `Aff(A, f)` with `a * b = f(b) + (1 − f)(a)` over `A = Z_{n_1} × … × Z_{n_k}`.
/// Row `i` of `matrix` gives the `i`-th coordinate of `f`.
pub fn affine(moduli: &[u64], matrix: &[Vec<i64>]) -> Result<FiniteQuandle, QuandleError> {
    let k = moduli.len();
    if k == 0 || matrix.len() != k || matrix.iter().any(|r| r.len() != k) || moduli.contains(&0) {
        return Err(QuandleError::InvalidParameters("matrix shape must match the factor list".into()));
    }
    let n: usize = moduli.iter().map(|&m| m as usize).product();
    if n > MAX_QUANDLE_SIZE {
        return Err(QuandleError::SizeExceeded { size: n, limit: MAX_QUANDLE_SIZE });
    }
    for i in 0..k {
        for j in 0..k {
            if (matrix[i][j] as i128 * moduli[j] as i128).rem_euclid(moduli[i] as i128) != 0 {
                return Err(QuandleError::NotAutomorphism(format!(
                    "entry ({i},{j}) is not a homomorphism Z{} -> Z{}",
                    moduli[j], moduli[i]
                )));
            }
        }
    }
    let f = |v: &[u64]| -> Vec<u64> {
        (0..k)
            .map(|i| {
                let s: i128 = (0..k).map(|j| matrix[i][j] as i128 * v[j] as i128).sum();
                s.rem_euclid(moduli[i] as i128) as u64
            })
            .collect()
    };
    let images: Vec<usize> = (0..n).map(|x| encode_mixed(moduli, &f(&decode_mixed(moduli, x)))).collect();
    let fperm = Perm::from_images(images.iter().map(|&x| x as u32).collect())
        .map_err(|_| QuandleError::NotAutomorphism("f is not bijective".into()))?;
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        let va = decode_mixed(moduli, a);
        let fa = decode_mixed(moduli, fperm.apply(a));
        for b in 0..n {
            let fb = decode_mixed(moduli, fperm.apply(b));
            let c: Vec<u64> = (0..k).map(|i| (fb[i] + va[i] + moduli[i] - fa[i]) % moduli[i]).collect();
            table[a * n + b] = encode_mixed(moduli, &c) as u32;
        }
    }
    FiniteQuandle::from_table(n, table)
}

pub fn affine_cyclic(n: u64, f: i64) -> Result<FiniteQuandle, QuandleError> {
    affine(&[n], &[vec![f]])
}

/// Affine quandle over `Z_p^m` for a matrix over `Z_p`.
pub fn affine_matrix(f: &MatFp) -> Result<FiniteQuandle, QuandleError> {
    let p = f.modulus();
    let rows: Vec<Vec<i64>> = f.to_rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    affine(&vec![p; f.rows()], &rows)
}

/// `Aff(Z_p[t]/(g^power), t)` via the companion matrix of `g^power`.
/// `coeffs` lists the monic polynomial `g` from the constant term upwards.
pub fn affine_from_polynomial(p: u64, coeffs: &[i64], power: u32) -> Result<FiniteQuandle, QuandleError> {
    if !is_prime(p) || !(1..=2).contains(&power) {
        return Err(QuandleError::InvalidParameters("need a prime p and power 1 or 2".into()));
    }
    let g = Poly::new(p, coeffs);
    if !g.is_monic() || g.degree() == 0 || g.degree() > 4 {
        return Err(QuandleError::InvalidParameters("g must be monic of degree 1..=4".into()));
    }
    if !g.is_irreducible() {
        return Err(QuandleError::ReduciblePolynomial);
    }
    if g.coeffs()[0] == 0 {
        return Err(QuandleError::TNotInvertible);
    }
    affine_matrix(&g.pow(power).companion())
}

/// `Aff(Z_{p²}^n, F)` with `F` the companion matrix of `h` lifted to `Z_{p²}`.
pub fn affine_zp2_companion(p: u64, coeffs: &[i64]) -> Result<FiniteQuandle, QuandleError> {
    let h = Poly::new(p, coeffs);
    if !is_prime(p) || !h.is_monic() || h.degree() == 0 {
        return Err(QuandleError::InvalidParameters("need a prime p and a monic polynomial".into()));
    }
    if !h.is_irreducible() {
        return Err(QuandleError::ReduciblePolynomial);
    }
    if h.coeffs()[0] == 0 {
        return Err(QuandleError::TNotInvertible);
    }
    let n = h.degree();
    let m = p * p;
    let mut rows = vec![vec![0i64; n]; n];
    for i in 1..n {
        rows[i][i - 1] = 1;
    }
    for i in 0..n {
        rows[i][n - 1] = reduce(-coeffs[i], m) as i64;
    }
    affine(&vec![m; n], &rows)
}

/// Coset quandle together with the coset decomposition used for labels.
#[derive(Clone, Debug)]
pub struct CosetQuandle {
    pub quandle: FiniteQuandle,
    pub cosets: Cosets,
}

/// `Q(G, H, f)` on left cosets: `aH * bH = a f(a⁻¹ b) H`.
pub fn coset_quandle_labeled(
    g: &ConcreteGroup,
    h: &[usize],
    f: &GroupAutomorphism,
) -> Result<CosetQuandle, QuandleError> {
    if !g.is_subgroup(h) {
        return Err(QuandleError::NotSubgroup);
    }
    if h.iter().any(|&x| f.apply(g, x) != x) {
        return Err(QuandleError::NotFixed);
    }
    let cosets = g.left_cosets(h);
    let n = cosets.count();
    if n > MAX_QUANDLE_SIZE {
        return Err(QuandleError::SizeExceeded { size: n, limit: MAX_QUANDLE_SIZE });
    }
    let mut table = vec![0u32; n * n];
    for (i, &a) in cosets.reps.iter().enumerate() {
        let ai = g.inv(a);
        for (j, &b) in cosets.reps.iter().enumerate() {
            let x = g.mul(a, f.apply(g, g.mul(ai, b)));
            table[i * n + j] = cosets.label[x];
        }
    }
    let quandle = FiniteQuandle::from_table(n, table)?;
    Ok(CosetQuandle { quandle, cosets })
}

pub fn coset_quandle(g: &ConcreteGroup, h: &[usize], f: &GroupAutomorphism) -> Result<FiniteQuandle, QuandleError> {
    coset_quandle_labeled(g, h, f).map(|c| c.quandle)
}

/// `Q(G, Fix(f), f)`
pub fn fix_coset_quandle(g: &ConcreteGroup, f: &GroupAutomorphism) -> Result<FiniteQuandle, QuandleError> {
    coset_quandle(g, &crate::groups::fix_subgroup(g, f), f)
}

/// Principal quandle `Q(G, 1, f)`.
pub fn principal(g: &ConcreteGroup, f: &GroupAutomorphism) -> Result<FiniteQuandle, QuandleError> {
    coset_quandle(g, &[g.identity()], f)
}

/// `Conj` on a conjugation-closed subset: `g * h = g⁻¹ h g`, elements in
/// increasing order of their group index.
pub fn conj_quandle(g: &ConcreteGroup, s: &[usize]) -> Result<FiniteQuandle, QuandleError> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    let mut pos = vec![u32::MAX; g.order()];
    for (i, &x) in s.iter().enumerate() {
        pos[x] = i as u32;
    }
    let n = s.len();
    let mut table = Vec::with_capacity(n * n);
    for &a in &s {
        for &b in &s {
            let c = pos[g.mul(g.mul(g.inv(a), b), a)];
            if c == u32::MAX {
                return Err(QuandleError::NotClosed);
            }
            table.push(c);
        }
    }
    FiniteQuandle::from_table(n, table)
}

/// `Conj` on a list of permutations closed under mutual conjugation.
pub fn conj_quandle_perms(s: &[Perm]) -> Result<FiniteQuandle, QuandleError> {
    let n = s.len();
    let index: std::collections::HashMap<&Perm, usize> = s.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in s {
        let ai = a.inverse();
        for b in s {
            let c = ai.compose(b).compose(a);
            table.push(*index.get(&c).ok_or(QuandleError::NotClosed)? as u32);
        }
    }
    FiniteQuandle::from_table(n, table)
}

/// Conjugacy class of `x` in the symmetric group on `n` points.
pub fn symmetric_class(n: usize, cycle_type: &[usize]) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = (0..n as u32).collect();
    permutations(&mut current, 0, &mut |images| {
        let p = Perm::from_images_unchecked(images.to_vec());
        let mut ct = p.cycle_type();
        ct.retain(|&l| l > 1);
        let mut want = cycle_type.to_vec();
        want.retain(|&l| l > 1);
        want.sort_unstable_by(|a, b| b.cmp(a));
        if ct == want {
            out.push(p);
        }
    });
    out.sort();
    out
}

fn permutations(v: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_gpq, fix_subgroup};

    #[test]
    fn affine_z5_2() {
        let q = affine_cyclic(5, 2).unwrap();
        assert!(q.is_latin() && q.is_connected());
        assert!((0..5).all(|a| q.left_translation(a).order() == 4));
        assert_eq!(q.lmlt().unwrap().order(), 20);
        assert_eq!(q.dis().unwrap().order(), 5);
    }

    #[test]
    fn affine_z4_minus_one_not_latin() {
        let q = affine_cyclic(4, -1).unwrap();
        assert!(!q.is_latin());
        assert!(!q.is_connected());
    }

    #[test]
    fn reducible_polynomial_rejected() {
        assert_eq!(affine_from_polynomial(2, &[1, 0, 1], 1).unwrap_err(), QuandleError::ReduciblePolynomial);
        let q = affine_from_polynomial(2, &[1, 1, 1], 1).unwrap();
        assert_eq!(q.size(), 4);
        assert!(q.is_connected());
    }

    #[test]
    fn coset_trivial_cases() {
        let g = build_gpq(5, 3).unwrap();
        let id = GroupAutomorphism::identity(&g);
        let all: Vec<usize> = (0..g.order()).collect();
        assert_eq!(coset_quandle(&g, &all, &id).unwrap().size(), 1);
        assert_eq!(principal(&g, &id).unwrap().size(), 75);
        let h = fix_subgroup(&g, &id);
        assert_eq!(h.len(), 75);
    }

    #[test]
    fn conjugation_quandles() {
        let g = crate::groups::cyclic(6);
        let q = conj_quandle(&g, &(0..6).collect::<Vec<_>>()).unwrap();
        assert!(q.is_projection());
        assert_eq!(conj_quandle(&g, &[0]).unwrap().size(), 1);
        let transp = symmetric_class(3, &[2]);
        assert_eq!(transp.len(), 3);
        let q = conj_quandle_perms(&transp).unwrap();
        assert!(q.is_latin());
    }
}
