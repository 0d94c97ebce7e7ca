use serde::Serialize;

use super::ExtensionError;
use crate::arith::is_prime;
use crate::congruence::is_subdirectly_irreducible;
use crate::lss::is_lss_oracle;
use crate::quandle::{affine_cyclic, FiniteQuandle};

/// 2-reductive medial quandle on `⋃ A_i` with `a ∗ b = b + c_{j,i}` for
/// `a ∈ A_j`, `b ∈ A_i`.
#[derive(Clone, Debug, Serialize)]
pub struct TwoReductiveSpec {
    /// Cyclic factors of each `A_i`; `[1]` is the trivial group.
    pub components: Vec<Vec<u64>>,
    /// `constants[j][i] ∈ A_i`, one coordinate per cyclic factor.
    pub constants: Vec<Vec<Vec<u64>>>,
}

fn decode(moduli: &[u64], mut x: usize) -> Vec<u64> {
    moduli
        .iter()
        .map(|&m| {
            let d = (x % m as usize) as u64;
            x /= m as usize;
            d
        })
        .collect()
}

fn encode(moduli: &[u64], v: &[u64]) -> usize {
    moduli.iter().zip(v).rev().fold(0usize, |acc, (&m, &d)| acc * m as usize + d as usize)
}

/// Subgroup of `Z_{m_1} × …` generated by `gens`, as element codes.
fn generated(moduli: &[u64], gens: &[Vec<u64>]) -> usize {
    let order: usize = moduli.iter().map(|&m| m as usize).product();
    let mut seen = vec![false; order];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        let v = decode(moduli, x);
        for g in gens {
            let w: Vec<u64> = v.iter().zip(g).zip(moduli).map(|((a, b), m)| (a + b) % m).collect();
            let y = encode(moduli, &w);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().filter(|&&s| s).count()
}

impl TwoReductiveSpec {
    pub fn check(&self) -> Result<(), ExtensionError> {
        let k = self.components.len();
        if k == 0 || self.constants.len() != k || self.constants.iter().any(|r| r.len() != k) {
            return Err(ExtensionError::InvalidSpec("constants must form a square matrix over the components".into()));
        }
        if self.components.iter().flatten().any(|&m| m == 0) {
            return Err(ExtensionError::InvalidSpec("cyclic factors must be positive".into()));
        }
        for j in 0..k {
            for i in 0..k {
                if self.constants[j][i].len() != self.components[i].len() {
                    return Err(ExtensionError::InvalidSpec(format!("c[{j}][{i}] has the wrong length")));
                }
            }
            let own = &self.components[j];
            if self.constants[j][j].iter().zip(own).any(|(c, m)| c % m != 0) {
                return Err(ExtensionError::InvalidSpec(format!("c[{j}][{j}] must be 0")));
            }
        }
        for i in 0..k {
            let moduli = &self.components[i];
            let gens: Vec<Vec<u64>> =
                (0..k).map(|j| self.constants[j][i].iter().zip(moduli).map(|(c, m)| c % m).collect()).collect();
            let order: usize = moduli.iter().map(|&m| m as usize).product();
            if generated(moduli, &gens) != order {
                return Err(ExtensionError::GeneratorCondition(format!("A_{i} is not generated by the c[j][{i}]")));
            }
        }
        Ok(())
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0];
        for c in &self.components {
            off.push(off.last().unwrap() + c.iter().map(|&m| m as usize).product::<usize>());
        }
        off
    }
}

pub fn build_2reductive(spec: &TwoReductiveSpec) -> Result<FiniteQuandle, ExtensionError> {
    spec.check()?;
    let off = spec.offsets();
    let n = *off.last().unwrap();
    let comp_of = |x: usize| off.iter().rposition(|&o| o <= x).unwrap();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        let j = comp_of(a);
        for b in 0..n {
            let i = comp_of(b);
            let moduli = &spec.components[i];
            let v = decode(moduli, b - off[i]);
            let w: Vec<u64> = v.iter().zip(&spec.constants[j][i]).zip(moduli).map(|((x, c), m)| (x + c) % m).collect();
            table[a * n + b] = (off[i] + encode(moduli, &w)) as u32;
        }
    }
    Ok(FiniteQuandle::from_table(n, table)?)
}

/// Result of checking a small non-connected quandle.
#[derive(Clone, Debug, Serialize)]
pub struct UnionCheck {
    pub name: String,
    pub size: usize,
    pub components: usize,
    pub lss: bool,
    pub faithful: bool,
    pub subdirectly_irreducible: bool,
    #[serde(skip)]
    pub quandle: FiniteQuandle,
}

impl UnionCheck {
    fn new(name: &str, q: FiniteQuandle) -> Result<Self, ExtensionError> {
        Ok(UnionCheck {
            name: name.into(),
            size: q.size(),
            components: q.orbit_partition().num_blocks(),
            lss: is_lss_oracle(&q)?,
            faithful: q.is_faithful(),
            subdirectly_irreducible: is_subdirectly_irreducible(&q),
            quandle: q,
        })
    }
}

/// The two medial 2-reductive instances over `Z_1 ∪ Z_2` and `Z_2 ∪ Z_2`
/// with constants `[[0,1],[1,0]]`.
pub fn small_medial_lss() -> Result<Vec<UnionCheck>, ExtensionError> {
    vec![("Z1+Z2", 1), ("Z2+Z2", 2)].into_iter().map(|(name, w)| UnionCheck::new(name, medial_instance(w)?)).collect()
}

/// Disjoint union of two quandles with mutual actions: `x ∗ a = ρ1(x)(a)`
/// and `a ∗ x = ρ2(a)(x)` for `x ∈ Q1`, `a ∈ Q2`.
#[derive(Clone, Debug)]
pub struct UnionSpec {
    pub q1: FiniteQuandle,
    pub q2: FiniteQuandle,
    pub rho1: Vec<Vec<usize>>,
    pub rho2: Vec<Vec<usize>>,
}

fn is_perm(v: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    v.len() == n && v.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn is_aut(q: &FiniteQuandle, f: &[usize]) -> bool {
    let n = q.size();
    (0..n).all(|a| (0..n).all(|b| f[q.op(a, b)] == q.op(f[a], f[b])))
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

fn inverse(f: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; f.len()];
    for (i, &x) in f.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn left(q: &FiniteQuandle, a: usize) -> Vec<usize> {
    (0..q.size()).map(|b| q.op(a, b)).collect()
}

impl UnionSpec {
    /// Checks that the actions are automorphisms, quandle morphisms into the
    /// conjugation quandles, and mutually compatible.
    pub fn check(&self) -> Result<(), ExtensionError> {
        let (n1, n2) = (self.q1.size(), self.q2.size());
        if self.rho1.len() != n1 || self.rho2.len() != n2 {
            return Err(ExtensionError::InvalidSpec("one action per element is required".into()));
        }
        for (x, r) in self.rho1.iter().enumerate() {
            if !is_perm(r, n2) || !is_aut(&self.q2, r) {
                return Err(ExtensionError::CompatibilityViolation { condition: "rho1(x) in Aut(Q2)", x, a: 0 });
            }
        }
        for (a, r) in self.rho2.iter().enumerate() {
            if !is_perm(r, n1) || !is_aut(&self.q1, r) {
                return Err(ExtensionError::CompatibilityViolation { condition: "rho2(a) in Aut(Q1)", x: 0, a });
            }
        }
        let conj = |f: &[usize], g: &[usize]| compose(&compose(f, g), &inverse(f));
        for x in 0..n1 {
            for y in 0..n1 {
                if self.rho1[self.q1.op(x, y)] != conj(&self.rho1[x], &self.rho1[y]) {
                    return Err(ExtensionError::CompatibilityViolation { condition: "rho1 morphism", x, a: y });
                }
            }
        }
        for a in 0..n2 {
            for b in 0..n2 {
                if self.rho2[self.q2.op(a, b)] != conj(&self.rho2[a], &self.rho2[b]) {
                    return Err(ExtensionError::CompatibilityViolation { condition: "rho2 morphism", x: a, a: b });
                }
            }
        }
        for x in 0..n1 {
            for a in 0..n2 {
                let lhs = &self.rho1[self.rho2[a][x]];
                if *lhs != conj(&left(&self.q2, a), &self.rho1[x]) {
                    return Err(ExtensionError::CompatibilityViolation { condition: "rho1(rho2(a)(x))", x, a });
                }
                let lhs = &self.rho2[self.rho1[x][a]];
                if *lhs != conj(&left(&self.q1, x), &self.rho2[a]) {
                    return Err(ExtensionError::CompatibilityViolation { condition: "rho2(rho1(x)(a))", x, a });
                }
            }
        }
        Ok(())
    }
}

/// `Q1` occupies `0..|Q1|`, `Q2` the following indices.
pub fn build_union(spec: &UnionSpec) -> Result<FiniteQuandle, ExtensionError> {
    spec.check()?;
    let (n1, n2) = (spec.q1.size(), spec.q2.size());
    let n = n1 + n2;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let v = match (x < n1, y < n1) {
                (true, true) => spec.q1.op(x, y),
                (true, false) => n1 + spec.rho1[x][y - n1],
                (false, true) => spec.rho2[x - n1][y],
                (false, false) => n1 + spec.q2.op(x - n1, y - n1),
            };
            table[x * n + y] = v as u32;
        }
    }
    Ok(FiniteQuandle::from_table(n, table)?)
}

fn affine_mod(p: u64, f: i64) -> impl Fn(usize, usize) -> usize {
    let f = f.rem_euclid(p as i64) as u64;
    move |x, a| ((1 + p - f) * x as u64 + f * a as u64).rem_euclid(p) as usize
}

fn require_odd_prime(p: u64) -> Result<(), ExtensionError> {
    if !is_prime(p) || p < 3 {
        return Err(ExtensionError::InvalidSpec(format!("need an odd prime, got {p}")));
    }
    Ok(())
}

/// `Aff(Z_p, f) ∪ {x}` with `x` acting trivially.
pub fn union_point(p: u64, f: i64) -> Result<FiniteQuandle, ExtensionError> {
    require_odd_prime(p)?;
    let pu = p as usize;
    let spec = UnionSpec {
        q1: affine_cyclic(p, f)?,
        q2: FiniteQuandle::from_table(1, vec![0])?,
        rho1: vec![vec![0]; pu],
        rho2: vec![(0..pu).collect()],
    };
    build_union(&spec)
}

/// `Aff(Z_p, −1) ∪ {±1}` with `(±1) ∗ a = a ± 1` and `a ∗ (±1) = ∓1`;
/// `+1` and `−1` are the last two elements.
pub fn union_pm_one(p: u64) -> Result<FiniteQuandle, ExtensionError> {
    require_odd_prime(p)?;
    let pu = p as usize;
    let shift = |d: usize| (0..pu).map(|a| (a + d) % pu).collect::<Vec<_>>();
    let spec = UnionSpec {
        q1: affine_cyclic(p, -1)?,
        q2: FiniteQuandle::from_table(2, vec![0, 1, 0, 1])?,
        rho1: vec![vec![1, 0]; pu],
        rho2: vec![shift(1), shift(pu - 1)],
    };
    build_union(&spec)
}

/// Two copies of `Aff(Z_p, −1)` acting on each other by `y ↦ (a ↦ 2y − a)`.
pub fn union_affine_pair(p: u64) -> Result<FiniteQuandle, ExtensionError> {
    require_odd_prime(p)?;
    let pu = p as usize;
    let act = affine_mod(p, -1);
    let rho: Vec<Vec<usize>> = (0..pu).map(|y| (0..pu).map(|a| act(y, a)).collect()).collect();
    let spec = UnionSpec { q1: affine_cyclic(p, -1)?, q2: affine_cyclic(p, -1)?, rho1: rho.clone(), rho2: rho };
    build_union(&spec)
}

/// The three non-connected families over `Z_p`: a strictly simple quandle
/// with a trivially acting point, `{±1} ∪ Aff(Z_p, −1)`, and two copies of
/// `Aff(Z_p, −1)` acting on each other affinely.
pub fn paper_unions(p: u64) -> Result<Vec<UnionCheck>, ExtensionError> {
    require_odd_prime(p)?;
    let f = if p == 3 { -1 } else { 2 };
    Ok(vec![
        UnionCheck::new("point", union_point(p, f)?)?,
        UnionCheck::new("pm-one", union_pm_one(p)?)?,
        UnionCheck::new("affine-pair", union_affine_pair(p)?)?,
    ])
}

/// The medial instances: `1` for `Z_1 ∪ Z_2`, `2` for `Z_2 ∪ Z_2`.
pub fn medial_instance(which: usize) -> Result<FiniteQuandle, ExtensionError> {
    let first = match which {
        1 => vec![1],
        2 => vec![2],
        _ => return Err(ExtensionError::InvalidSpec(format!("medial instance must be 1 or 2, got {which}"))),
    };
    build_2reductive(&TwoReductiveSpec {
        components: vec![first, vec![2]],
        constants: vec![vec![vec![0], vec![1]], vec![vec![1], vec![0]]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn medial_instances() {
        let m = small_medial_lss().unwrap();
        assert_eq!(m.iter().map(|c| c.size).collect::<Vec<_>>(), vec![3, 4]);
        assert!(m.iter().all(|c| c.lss && !c.faithful));
        assert!(m[0].subdirectly_irreducible);
        // {0,1} and {2,3} are both congruences of the Z2+Z2 instance, with trivial meet.
        assert!(!m[1].subdirectly_irreducible);
    }

    #[test]
    fn nonzero_diagonal_constant_rejected() {
        let s = TwoReductiveSpec {
            components: vec![vec![2], vec![2]],
            constants: vec![vec![vec![1], vec![1]], vec![vec![1], vec![0]]],
        };
        assert!(matches!(build_2reductive(&s), Err(ExtensionError::InvalidSpec(_))));
    }

    #[test]
    fn unions_for_five() {
        let u = paper_unions(5).unwrap();
        assert_eq!(u.iter().map(|c| c.size).collect::<Vec<_>>(), vec![6, 7, 10]);
        assert!(u.iter().all(|c| c.lss && c.components == 2));
        assert!(u[1].faithful && u[1].subdirectly_irreducible);
    }
}
