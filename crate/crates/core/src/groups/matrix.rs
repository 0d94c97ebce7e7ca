//! Matrices and polynomials over a prime field Z_p.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{inv_mod, reduce};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("eigen analysis needs a 2x2 matrix")]
    NotTwoByTwo,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatFp {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Eigen-structure of a 2x2 matrix over Z_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Eigen {
    Scalar(u64),
    Diagonalizable(u64, u64),
    /// Repeated eigenvalue with a single eigenline.
    Defective(u64),
    Irreducible,
}

impl MatFp {
    pub fn new(p: u64, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        MatFp { p, rows, cols, data: entries.iter().map(|&x| reduce(x, p)).collect() }
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        MatFp::new(p, r, c, &flat)
    }

    pub fn from_reduced(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        debug_assert!(data.iter().all(|&x| x < p));
        MatFp { p, rows, cols, data }
    }

    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        MatFp { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        Self::scalar(p, n, 1)
    }

    pub fn scalar(p: u64, n: usize, c: i64) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = reduce(c, p);
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = reduce(v, self.p);
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &MatFp) -> MatFp {
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
        let p = self.p;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let o = &mut out[i * other.cols + j];
                    *o = (*o + a * other.get(k, j)) % p;
                }
            }
        }
        MatFp { p, rows: self.rows, cols: other.cols, data: out }
    }

    pub fn add(&self, other: &MatFp) -> MatFp {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % self.p).collect();
        MatFp { data, ..self.clone() }
    }

    pub fn sub(&self, other: &MatFp) -> MatFp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MatFp {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> MatFp {
        let c = reduce(c, self.p);
        let data = self.data.iter().map(|a| a * c % self.p).collect();
        MatFp { data, ..self.clone() }
    }

    pub fn transpose(&self) -> MatFp {
        let mut out = MatFp::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> MatFp {
        let mut acc = MatFp::identity(self.p, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == MatFp::identity(self.p, self.rows)
    }

    pub fn trace(&self) -> u64 {
        (0..self.rows).map(|i| self.get(i, i)).sum::<u64>() % self.p
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum::<u64>() % self.p).collect()
    }

    /// Row echelon form; returns (reduced matrix, pivot columns, determinant factor).
    fn rref(&self) -> (MatFp, Vec<usize>, u64) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut det = 1u64;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                det = 0;
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
                det = (p - det) % p;
            }
            let pv = m.get(r, c);
            det = det * pv % p;
            let inv = inv_mod(pv, p).expect("prime modulus");
            for j in 0..m.cols {
                m.data[r * m.cols + j] = m.data[r * m.cols + j] * inv % p;
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if f != 0 {
                        for j in 0..m.cols {
                            let v = m.data[r * m.cols + j];
                            let t = &mut m.data[i * m.cols + j];
                            *t = (*t + p - f * v % p) % p;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if pivots.len() < m.rows.min(m.cols) || m.rows != m.cols {
            det = 0;
        }
        (m, pivots, det)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> u64 {
        assert!(self.is_square(), "det of non-square matrix");
        if self.rows == 0 {
            return 1;
        }
        self.rref().2
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.det() != 0
    }

    pub fn inverse(&self) -> Result<MatFp, MatError> {
        if !self.is_square() {
            return Err(MatError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = MatFp::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let (r, pivots, _) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatError::Singular);
        }
        let mut out = MatFp::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = r.get(i, n + j);
            }
        }
        Ok(out)
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let (r, pivots, _) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.get(row, f)) % p;
                }
                v
            })
            .collect()
    }

    /// Least k ≥ 1 with M^k = I.
    pub fn order(&self) -> Result<u64, MatError> {
        if !self.is_invertible() {
            return Err(MatError::Singular);
        }
        let bound = crate::arith::gl_order(self.rows as u32, self.p);
        let id = MatFp::identity(self.p, self.rows);
        let mut x = self.clone();
        let mut k = 1u64;
        while x != id {
            x = x.mul(self);
            k += 1;
            assert!((k as u128) <= bound, "matrix order exceeds |GL|");
        }
        Ok(k)
    }

    pub fn eigen_analysis(&self) -> Result<Eigen, MatError> {
        if self.rows != 2 || self.cols != 2 {
            return Err(MatError::NotTwoByTwo);
        }
        if !self.is_invertible() {
            return Err(MatError::Singular);
        }
        let p = self.p;
        if self.get(0, 1) == 0 && self.get(1, 0) == 0 && self.get(0, 0) == self.get(1, 1) {
            return Ok(Eigen::Scalar(self.get(0, 0)));
        }
        let (t, d) = (self.trace(), self.det());
        let roots: Vec<u64> = (0..p).filter(|&x| (x * x + p * p - t * x % p + d).is_multiple_of(p)).collect();
        Ok(match roots.as_slice() {
            [] => Eigen::Irreducible,
            [r] => Eigen::Defective(*r),
            [a, b] => Eigen::Diagonalizable(*a, *b),
            _ => unreachable!("quadratic has at most two roots"),
        })
    }

    /// True when no proper nonzero subspace of Z_p^n is invariant.
    pub fn acts_irreducibly(&self) -> bool {
        let n = self.rows;
        if n <= 1 {
            return true;
        }
        let total = (self.p as usize).pow(n as u32);
        for code in 1..total {
            let v = decode_vec(self.p, n, code);
            let mut span = vec![v.clone()];
            let mut w = v;
            for _ in 1..n {
                w = self.mul_vec(&w);
                span.push(w.clone());
            }
            let m = MatFp::from_reduced(self.p, n, n, span.into_iter().flatten().collect());
            if m.rank() < n {
                return false;
            }
        }
        true
    }

    /// Matrix of the linear map `X ↦ self·X − X·other` on n×n matrices,
    /// acting on row-major flattened X.
    pub fn sylvester_operator(left: &MatFp, right: &MatFp) -> MatFp {
        let n = left.rows;
        let p = left.p;
        let mut op = MatFp::zeros(p, n * n, n * n);
        for idx in 0..n * n {
            let mut e = MatFp::zeros(p, n, n);
            e.data[idx] = 1;
            let img = left.mul(&e).sub(&e.mul(right));
            for (row, &v) in img.data.iter().enumerate() {
                op.data[row * n * n + idx] = v;
            }
        }
        op
    }
}

pub fn encode_vec(p: u64, v: &[u64]) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

pub fn decode_vec(p: u64, dim: usize, mut code: usize) -> Vec<u64> {
    (0..dim)
        .map(|_| {
            let d = (code % p as usize) as u64;
            code /= p as usize;
            d
        })
        .collect()
}

/// All Z_p-linear combinations of `basis`.
pub fn span_all(p: u64, basis: &[Vec<u64>], len: usize) -> Vec<Vec<u64>> {
    let count = (p as usize).pow(basis.len() as u32);
    (0..count)
        .map(|code| {
            let coeffs = decode_vec(p, basis.len(), code);
            let mut v = vec![0u64; len];
            for (c, b) in coeffs.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + c * y) % p;
                }
            }
            v
        })
        .collect()
}

/// Polynomial over Z_p with coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, coeffs: &[i64]) -> Self {
        let mut out = Poly { p, coeffs: coeffs.iter().map(|&c| reduce(c, p)).collect() };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly { p: self.p, coeffs: vec![] };
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        let mut out = Poly { p: self.p, coeffs: c };
        out.trim();
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::new(self.p, &[1]), |acc, _| acc.mul(self))
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, d: &Poly) -> Poly {
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        let lead_inv = inv_mod(*d.coeffs.last().expect("nonzero divisor"), p).unwrap();
        while r.len() >= dl {
            let f = r.last().unwrap() * lead_inv % p;
            let shift = r.len() - dl;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - f * dc % p) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Poly { p, coeffs: r }
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    /// Monic polynomials of exact degree `d`, in lexicographic order.
    pub fn monic_of_degree(p: u64, d: usize) -> impl Iterator<Item = Poly> {
        let count = (p as usize).pow(d as u32);
        (0..count).map(move |code| {
            let mut coeffs = decode_vec(p, d, code);
            coeffs.push(1);
            Poly { p, coeffs }
        })
    }

    pub fn is_irreducible(&self) -> bool {
        let d = self.degree();
        if self.is_zero() || d == 0 {
            return false;
        }
        (1..=d / 2).all(|k| Poly::monic_of_degree(self.p, k).all(|g| !self.rem(&g).is_zero()))
    }

    /// Factorization of a monic polynomial into monic irreducibles (with repetition).
    pub fn factor(&self) -> Vec<Poly> {
        let mut rest = self.clone();
        let mut out = Vec::new();
        let mut k = 1;
        while rest.degree() >= 1 {
            if 2 * k > rest.degree() {
                out.push(rest.clone());
                break;
            }
            let mut progressed = false;
            for g in Poly::monic_of_degree(self.p, k) {
                while rest.rem(&g).is_zero() && rest.degree() >= 1 {
                    rest = rest.div_exact(&g);
                    out.push(g.clone());
                    progressed = true;
                }
            }
            if !progressed {
                k += 1;
            }
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.coeffs.cmp(&b.coeffs)));
        out
    }

    fn div_exact(&self, d: &Poly) -> Poly {
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        let lead_inv = inv_mod(*d.coeffs.last().unwrap(), p).unwrap();
        let mut q = vec![0u64; r.len() + 1 - dl];
        while r.len() >= dl && !r.is_empty() {
            let f = r.last().unwrap() * lead_inv % p;
            let shift = r.len() - dl;
            q[shift] = f;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - f * dc % p) % p;
            }
            r.pop();
        }
        let mut out = Poly { p, coeffs: q };
        out.trim();
        out
    }

    /// Companion matrix with ones on the subdiagonal and `-c_i` in the last column.
    pub fn companion(&self) -> MatFp {
        assert!(self.is_monic(), "companion of a non-monic polynomial");
        let d = self.degree();
        let mut m = MatFp::zeros(self.p, d, d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, -(self.coeffs[i] as i64));
        }
        m
    }
}

/// Block-diagonal matrix from square blocks over the same field.
pub fn block_diagonal(blocks: &[MatFp]) -> MatFp {
    let p = blocks[0].modulus();
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut m = MatFp::zeros(p, n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(off + i, off + j, b.get(i, j) as i64);
            }
        }
        off += b.rows();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_order_scalar() {
        let i = MatFp::identity(5, 2);
        assert_eq!(i.order().unwrap(), 1);
        assert_eq!(i.eigen_analysis().unwrap(), Eigen::Scalar(1));
    }

    #[test]
    fn companion_order_three_irreducible_mod5() {
        let a = MatFp::from_rows(5, &[vec![0, -1], vec![1, -1]]);
        // char poly x^2 + x + 1 has no root mod 5
        assert!((0..5).all(|x| (x * x + x + 1) % 5 != 0));
        assert!(a.pow(3).is_identity());
        assert_eq!(a.order().unwrap(), 3);
        assert_eq!(a.eigen_analysis().unwrap(), Eigen::Irreducible);
    }

    #[test]
    fn diagonal_order_four() {
        let d = MatFp::from_rows(5, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(d.order().unwrap(), 4);
        assert_eq!(d.eigen_analysis().unwrap(), Eigen::Diagonalizable(2, 3));
        let s = MatFp::from_rows(5, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(s.order(), Err(MatError::Singular));
    }

    #[test]
    fn inverse_and_kernel() {
        let a = MatFp::from_rows(7, &[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let s = MatFp::from_rows(7, &[vec![1, 2], vec![2, 4]]);
        let k = s.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(s.mul_vec(&k[0]), vec![0, 0]);
        assert_eq!(s.det(), 0);
    }

    #[test]
    fn polynomial_factoring_gf2() {
        // x^7 - 1 = (x+1)(x^3+x+1)(x^3+x^2+1) over GF(2)
        let mut c = vec![0i64; 8];
        c[0] = -1;
        c[7] = 1;
        let f = Poly::new(2, &c).factor();
        let degs: Vec<usize> = f.iter().map(|g| g.degree()).collect();
        assert_eq!(degs, vec![1, 3, 3]);
        assert!(f.iter().all(|g| g.is_irreducible()));
        assert!(!Poly::new(2, &[1, 0, 1]).is_irreducible());
        assert!(Poly::new(2, &[1, 1, 1]).is_irreducible());
    }

    #[test]
    fn companion_convention() {
        let g = Poly::new(5, &[1, 1, 1]);
        assert_eq!(g.companion(), MatFp::from_rows(5, &[vec![0, -1], vec![1, -1]]));
        assert!(g.companion().acts_irreducibly());
        assert!(!MatFp::from_rows(5, &[vec![2, 0], vec![0, 3]]).acts_irreducibly());
    }

    #[test]
    fn vector_codes_round_trip() {
        for code in 0..125 {
            assert_eq!(encode_vec(5, &decode_vec(5, 3, code)), code);
        }
    }
}
