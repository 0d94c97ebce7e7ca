//! Constructors for the concrete groups used throughout.

use super::matrix::{MatFp, Poly};
use super::{CayleyTable, ConcreteGroup, Factor8, GroupError, GroupFamily, SemidirectVec, MAX_TABLE_ORDER};
use crate::arith::{inv_mod, is_prime, mult_order, pow_mod};

/// Q8 elements are `sign * 4 + tag` with tags `1, i, j, k`.
pub mod q8 {
    pub const ONE: usize = 0;
    pub const I: usize = 1;
    pub const J: usize = 2;
    pub const K: usize = 3;
    pub const MINUS_ONE: usize = 4;

    /// Product of the basis units: (sign, tag) of tag_a * tag_b.
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];

    pub fn mul(a: usize, b: usize) -> usize {
        let (s, t) = UNIT[a % 4][b % 4];
        ((a / 4 + b / 4 + s) % 2) * 4 + t
    }

    pub fn neg(a: usize) -> usize {
        (a + 4) % 8
    }
}

pub fn quaternion_table() -> CayleyTable {
    let table = (0..64).map(|i| q8::mul(i / 8, i % 8) as u32).collect();
    CayleyTable::new(8, table).expect("Q8")
}

/// D8 as `r^a s^b` indexed `b*4 + a`.
pub fn dihedral8_table() -> CayleyTable {
    let mul = |x: usize, y: usize| {
        let (a1, b1) = (x % 4, x / 4);
        let (a2, b2) = (y % 4, y / 4);
        let a = if b1 == 0 { (a1 + a2) % 4 } else { (a1 + 4 - a2) % 4 };
        ((b1 + b2) % 2) * 4 + a
    };
    let table = (0..64).map(|i| mul(i / 8, i % 8) as u32).collect();
    CayleyTable::new(8, table).expect("D8")
}

pub fn quaternion() -> ConcreteGroup {
    ConcreteGroup::from_table(
        quaternion_table(),
        vec![q8::I, q8::J],
        GroupFamily::Extraspecial2 { factors: vec![Factor8::Q8] },
        "Q8",
    )
    .expect("Q8")
}

pub fn dihedral8() -> ConcreteGroup {
    ConcreteGroup::from_table(
        dihedral8_table(),
        vec![1, 4],
        GroupFamily::Extraspecial2 { factors: vec![Factor8::D8] },
        "D8",
    )
    .expect("D8")
}

pub fn cyclic(n: usize) -> ConcreteGroup {
    let gens = if n > 1 { vec![1] } else { vec![] };
    ConcreteGroup::from_table(CayleyTable::cyclic(n), gens, GroupFamily::Other, format!("Z{n}")).expect("cyclic")
}

/// Canonical order-q matrix of determinant 1 in GL_2(p).
pub fn gpq_matrix(p: u64, q: u64) -> MatFp {
    if (p - 1).is_multiple_of(q) {
        let k = (2..p).find(|&k| mult_order(k, p) == q).expect("order-q unit exists");
        let ki = inv_mod(k, p).unwrap();
        MatFp::from_rows(p, &[vec![k as i64, 0], vec![0, ki as i64]])
    } else {
        (0..p)
            .map(|b| MatFp::from_rows(p, &[vec![0, -1], vec![1, -(b as i64)]]))
            .find(|a| a.order().ok() == Some(q))
            .expect("companion matrix of order q exists")
    }
}

/// The unique nontrivial `Z_p² ⋊ Z_q` with a determinant-one action.
pub fn build_gpq(p: u64, q: u64) -> Result<ConcreteGroup, GroupError> {
    if !is_prime(p) || !is_prime(q) || q == 2 || p == q || !(p * p - 1).is_multiple_of(q) {
        return Err(GroupError::UnsupportedParameters(format!(
            "G_(p,q) needs primes p != q, q > 2, q | p^2-1; got ({p}, {q})"
        )));
    }
    let a = gpq_matrix(p, q);
    let sd = SemidirectVec::new(p, 2, CayleyTable::cyclic(q as usize), &[1], &[a])?;
    Ok(ConcreteGroup::from_semidirect(sd, &[1], GroupFamily::Gpq { p, q }, format!("G({p},{q})")))
}

pub fn gk_rho(p: u64, k: u64) -> (MatFp, MatFp) {
    let k = k as i64;
    let k2 = k * k;
    let rx = MatFp::from_rows(p, &[vec![0, -1], vec![1, 0]]);
    let ry = MatFp::from_rows(p, &[vec![k2, k], vec![k, -k2]]);
    (rx, ry)
}

/// `Z_p² ⋊ Q8` with the fixed-point-free action.
pub fn build_gk(p: u64, k: u64) -> Result<ConcreteGroup, GroupError> {
    if !is_prime(p) || p % 3 != 1 {
        return Err(GroupError::UnsupportedParameters(format!("G_k needs a prime p = 1 mod 3; got {p}")));
    }
    if k % p == 1 || pow_mod(k, 3, p) != 1 {
        return Err(GroupError::UnsupportedParameters(format!("{k} has not order 3 mod {p}")));
    }
    let (rx, ry) = gk_rho(p, k);
    let sd = SemidirectVec::new(p, 2, quaternion_table(), &[q8::I, q8::J], &[rx, ry])?;
    let id = MatFp::identity(p, 2);
    for h in 1..8 {
        if id.sub(sd.rho(h)).det() == 0 {
            return Err(GroupError::NotAGroup(format!("action of Q8 element {h} has fixed points")));
        }
    }
    Ok(ConcreteGroup::from_semidirect(sd, &[q8::I, q8::J], GroupFamily::Gk { p, k }, format!("G_k({p},{k})")))
}

/// Smallest element of order 3 modulo `p`.
pub fn smallest_cube_root_of_unity(p: u64) -> Option<u64> {
    (2..p).find(|&k| mult_order(k, p) == 3)
}

/// `Z_2^m ⋊ Z_p` with generator acting by `a` (a matrix over GF(2) of order p).
pub fn build_elem_abelian_cyclic(a: &MatFp, p: u64) -> Result<ConcreteGroup, GroupError> {
    if a.modulus() != 2 || a.order()? != p {
        return Err(GroupError::UnsupportedParameters("action must be an order-p matrix over GF(2)".into()));
    }
    let m = a.rows();
    let sd = SemidirectVec::new(2, m, CayleyTable::cyclic(p as usize), &[1], std::slice::from_ref(a))?;
    Ok(ConcreteGroup::from_semidirect(sd, &[1], GroupFamily::ElemAbelianCyclic { m, p }, format!("Z2^{m}xZ{p}")))
}

/// Representatives of the conjugacy classes of order-p elements of GL_m(2),
/// as block-diagonal companion matrices of the nontrivial irreducible factors
/// of `x^p - 1` (padded with an identity block).
pub fn order_p_classes_gl2(m: usize, p: u64) -> Vec<MatFp> {
    let mut c = vec![0i64; p as usize + 1];
    c[0] = -1;
    c[p as usize] = 1;
    let mut factors: Vec<Poly> = Poly::new(2, &c).factor().into_iter().filter(|f| f.degree() > 1).collect();
    factors.dedup();
    let d = factors.first().map_or(0, |f| f.degree());
    let mut out = Vec::new();
    // multisets of factors with total degree ≤ m (all factors share degree d = ord_p(2))
    fn rec(factors: &[Poly], start: usize, budget: usize, cur: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>, d: usize) {
        if !cur.is_empty() {
            acc.push(cur.clone());
        }
        for i in start..factors.len() {
            if budget >= d {
                cur.push(i);
                rec(factors, i, budget - d, cur, acc, d);
                cur.pop();
            }
        }
    }
    if d == 0 {
        return out;
    }
    let mut choices = Vec::new();
    rec(&factors, 0, m, &mut Vec::new(), &mut choices, d);
    for ch in choices {
        let mut blocks: Vec<MatFp> = ch.iter().map(|&i| factors[i].companion()).collect();
        let used: usize = blocks.iter().map(|b| b.rows()).sum();
        if used < m {
            blocks.push(MatFp::identity(2, m - used));
        }
        out.push(super::matrix::block_diagonal(&blocks));
    }
    out
}

/// Central product of order-8 factors, identifying the centers.
pub fn build_extraspecial2(factors: &[Factor8]) -> Result<ConcreteGroup, GroupError> {
    if factors.is_empty() {
        return Err(GroupError::UnsupportedParameters("need at least one factor".into()));
    }
    let order = 1usize << (2 * factors.len() + 1);
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::SizeExceeded { order, limit: MAX_TABLE_ORDER });
    }
    let base = |f: Factor8| match f {
        Factor8::D8 => dihedral8(),
        Factor8::Q8 => quaternion(),
    };
    let mut g = base(factors[0]);
    for &f in &factors[1..] {
        let h = base(f);
        let prod = ConcreteGroup::direct_product(&g, &h)?;
        let zg = central_involution(&g)?;
        let zh = central_involution(&h)?;
        let z = zg * h.order() + zh;
        let n = prod.subgroup(&[z]);
        let (quot, _) = prod.quotient(&n)?;
        g = quot;
    }
    let name: Vec<&str> = factors.iter().map(|f| if *f == Factor8::D8 { "D8" } else { "Q8" }).collect();
    let g = ConcreteGroup::from_table(
        match g.kind() {
            super::GroupKind::CayleyTable(t) => t.clone(),
            super::GroupKind::SemidirectVec(_) => unreachable!(),
        },
        g.generators().to_vec(),
        GroupFamily::Extraspecial2 { factors: factors.to_vec() },
        name.join("*"),
    )?;
    let z = g.center();
    if z.len() != 2 {
        return Err(GroupError::NotAGroup("center of central product is not of order 2".into()));
    }
    let (quot, _) = g.quotient(&z)?;
    if !quot.is_abelian() || (0..quot.order()).any(|x| quot.element_order(x) > 2) {
        return Err(GroupError::NotAGroup("G/Z is not elementary abelian".into()));
    }
    Ok(g)
}

fn central_involution(g: &ConcreteGroup) -> Result<usize, GroupError> {
    let z = g.center();
    match z.as_slice() {
        [a, b] => Ok(if *a == g.identity() { *b } else { *a }),
        _ => Err(GroupError::NotAGroup("expected a center of order 2".into())),
    }
}

/// Upper unitriangular 3x3 matrices over Z_p, element `(a, b, c)` for
/// `[[1,a,c],[0,1,b],[0,0,1]]`, indexed `a + p*b + p²*c`.
pub fn build_heisenberg(p: u64) -> Result<ConcreteGroup, GroupError> {
    if !is_prime(p) || p == 2 {
        return Err(GroupError::UnsupportedParameters(format!("Heisenberg group needs an odd prime; got {p}")));
    }
    let pu = p as usize;
    let n = pu * pu * pu;
    let dec = |x: usize| (x % pu, (x / pu) % pu, x / (pu * pu));
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (a1, b1, c1) = dec(x);
        for y in 0..n {
            let (a2, b2, c2) = dec(y);
            let a = (a1 + a2) % pu;
            let b = (b1 + b2) % pu;
            let c = (c1 + c2 + a1 * b2) % pu;
            table[x * n + y] = (a + pu * b + pu * pu * c) as u32;
        }
    }
    ConcreteGroup::from_table(
        CayleyTable::new(n, table)?,
        vec![1, pu],
        GroupFamily::Heisenberg { p },
        format!("Heis({p})"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gpq_5_3() {
        let g = build_gpq(5, 3).unwrap();
        assert_eq!(g.order(), 75);
        assert_eq!(g.center().len(), 1);
        assert_eq!(g.derived_subgroup().len(), 25);
    }

    #[test]
    fn gpq_7_3_is_diagonal() {
        let g = build_gpq(7, 3).unwrap();
        assert_eq!(g.order(), 147);
        assert_eq!(gpq_matrix(7, 3), MatFp::from_rows(7, &[vec![2, 0], vec![0, 4]]));
        assert!(build_gpq(3, 4).is_err());
        assert!(build_gpq(5, 2).is_err());
    }

    #[test]
    fn gk_orders() {
        assert_eq!(build_gk(7, 2).unwrap().order(), 392);
        assert_eq!(build_gk(7, 4).unwrap().order(), 392);
        assert!(build_gk(5, 2).is_err());
        assert!(build_gk(7, 3).is_err());
    }

    #[test]
    fn q8_relations() {
        use q8::*;
        assert_eq!(mul(I, I), MINUS_ONE);
        assert_eq!(mul(J, J), MINUS_ONE);
        assert_eq!(mul(I, J), K);
        assert_eq!(mul(J, I), neg(K));
        let g = quaternion();
        assert_eq!(g.center(), vec![ONE, MINUS_ONE]);
    }

    #[test]
    fn extraspecial_orders() {
        let q = build_extraspecial2(&[Factor8::Q8]).unwrap();
        assert_eq!(q.order(), 8);
        let dq = build_extraspecial2(&[Factor8::D8, Factor8::Q8]).unwrap();
        assert_eq!(dq.order(), 32);
        assert_eq!(dq.center().len(), 2);
        let dd = build_extraspecial2(&[Factor8::D8, Factor8::D8]).unwrap();
        assert_eq!(dd.order(), 32);
        // D8*Q8 has more elements of order 4 than D8*D8
        let o4 = |g: &ConcreteGroup| (0..32).filter(|&x| g.element_order(x) == 4).count();
        assert_ne!(o4(&dq), o4(&dd));
    }

    #[test]
    fn heisenberg_exponent_and_center() {
        let h3 = build_heisenberg(3).unwrap();
        assert_eq!(h3.order(), 27);
        let id = h3.identity();
        assert!((0..27).all(|x| h3.pow(x, 3) == id));
        let h5 = build_heisenberg(5).unwrap();
        assert_eq!(h5.center().len(), 5);
        assert!(build_heisenberg(2).is_err());
    }

    #[test]
    fn order_seven_classes_in_gl3_and_gl6() {
        let c3 = order_p_classes_gl2(3, 7);
        assert_eq!(c3.len(), 2);
        assert!(c3.iter().all(|a| a.order().unwrap() == 7));
        assert_eq!(order_p_classes_gl2(6, 7).len(), 5);
        assert!(order_p_classes_gl2(6, 11).is_empty());
        assert_eq!(order_p_classes_gl2(5, 31).len(), 6);
    }
}
