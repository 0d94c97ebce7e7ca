use rayon::prelude::*;
use serde::Serialize;

use super::ExtensionError;
use crate::arith::{inv_mod, is_prime};
use crate::groups::matrix::MatFp;
use crate::partition::Partition;
use crate::quandle::{affine, FiniteQuandle};

/// Largest coefficient prime accepted by the cocycle enumeration.
pub const MAX_COCYCLE_PRIME: u64 = 31;

/// `β = (ψ, φ, θ)` with coefficients in `Z_p`, each stored row-major over `Q × Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianCocycle {
    #[serde(skip)]
    pub base: FiniteQuandle,
    pub p: u64,
    pub psi: Vec<u64>,
    pub phi: Vec<u64>,
    pub theta: Vec<u64>,
}

impl AbelianCocycle {
    /// Validates shapes and all cocycle conditions.
    pub fn new(
        base: FiniteQuandle,
        p: u64,
        psi: Vec<u64>,
        phi: Vec<u64>,
        theta: Vec<u64>,
    ) -> Result<Self, ExtensionError> {
        let c = Self::unchecked(base, p, psi, phi, theta)?;
        c.check()?;
        Ok(c)
    }

    fn unchecked(
        base: FiniteQuandle,
        p: u64,
        psi: Vec<u64>,
        phi: Vec<u64>,
        theta: Vec<u64>,
    ) -> Result<Self, ExtensionError> {
        if !is_prime(p) {
            return Err(ExtensionError::InvalidCocycle(format!("coefficient modulus {p} is not prime")));
        }
        let nn = base.size() * base.size();
        if psi.len() != nn || phi.len() != nn || theta.len() != nn {
            return Err(ExtensionError::InvalidCocycle(format!("maps must have {nn} entries")));
        }
        let reduce = |v: Vec<u64>| v.into_iter().map(|x| x % p).collect::<Vec<_>>();
        let (psi, phi, theta) = (reduce(psi), reduce(phi), reduce(theta));
        if let Some(i) = psi.iter().position(|&x| x == 0) {
            return Err(ExtensionError::InvalidCocycle(format!(
                "psi at {:?} is not invertible",
                (i / base.size(), i % base.size())
            )));
        }
        Ok(AbelianCocycle { base, p, psi, phi, theta })
    }

    /// `ψ ≡ λ`, `φ ≡ 1 − λ`, `θ ≡ 0`.
    pub fn constant(base: FiniteQuandle, p: u64, lambda: u64) -> Result<Self, ExtensionError> {
        let nn = base.size() * base.size();
        let l = lambda % p;
        Self::new(base, p, vec![l; nn], vec![(1 + p - l) % p; nn], vec![0; nn])
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        a * self.base.size() + b
    }

    pub fn psi_at(&self, a: usize, b: usize) -> u64 {
        self.psi[self.idx(a, b)]
    }

    pub fn phi_at(&self, a: usize, b: usize) -> u64 {
        self.phi[self.idx(a, b)]
    }

    pub fn theta_at(&self, a: usize, b: usize) -> u64 {
        self.theta[self.idx(a, b)]
    }

    /// First failing cocycle condition, if any.
    pub fn violation(&self) -> Option<(&'static str, usize, usize, usize)> {
        let (q, p, n) = (&self.base, self.p, self.base.size());
        for a in 0..n {
            if (self.phi_at(a, a) + self.psi_at(a, a)) % p != 1 {
                return Some(("phi_aa + psi_aa = 1", a, a, a));
            }
            if self.theta_at(a, a) != 0 {
                return Some(("theta_aa = 0", a, a, a));
            }
        }
        let m = |x: u64, y: u64| x * y % p;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let bc = q.op(b, c);
                    let (x, y) = (q.op(a, b), q.op(a, c));
                    let lhs = m(self.psi_at(a, bc), self.psi_at(b, c));
                    if lhs != m(self.psi_at(x, y), self.psi_at(a, c)) {
                        return Some(("psi", a, b, c));
                    }
                    let rhs = (m(self.phi_at(x, y), self.phi_at(a, b)) + m(self.psi_at(x, y), self.phi_at(a, c))) % p;
                    if self.phi_at(a, bc) != rhs {
                        return Some(("phi", a, b, c));
                    }
                    if m(self.psi_at(a, bc), self.phi_at(b, c)) != m(self.phi_at(x, y), self.psi_at(a, b)) {
                        return Some(("psi-phi", a, b, c));
                    }
                    let lhs = (m(self.psi_at(a, bc), self.theta_at(b, c)) + self.theta_at(a, bc)) % p;
                    let rhs = (m(self.psi_at(x, y), self.theta_at(a, c))
                        + m(self.phi_at(x, y), self.theta_at(a, b))
                        + self.theta_at(x, y))
                        % p;
                    if lhs != rhs {
                        return Some(("theta", a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn check(&self) -> Result<(), ExtensionError> {
        match self.violation() {
            None => Ok(()),
            Some((condition, a, b, c)) => Err(ExtensionError::CocycleViolation { condition, a, b, c }),
        }
    }

    /// The cohomologous cocycle `γ(a∗b) β(a, b, γ(a)⁻¹ s)(γ(b)⁻¹ t)` for
    /// `γ: Q → Z_p^*`.
    pub fn twist(&self, gamma: &[u64]) -> Result<Self, ExtensionError> {
        let (q, p, n) = (&self.base, self.p, self.base.size());
        if gamma.len() != n || gamma.iter().any(|&g| g % p == 0) {
            return Err(ExtensionError::InvalidCocycle("gamma must be a unit for every element".into()));
        }
        let inv: Vec<u64> = gamma.iter().map(|&g| inv_mod(g % p, p).expect("unit")).collect();
        let mut out = self.clone();
        for a in 0..n {
            for b in 0..n {
                let i = self.idx(a, b);
                let g = gamma[q.op(a, b)] % p;
                out.psi[i] = g * self.psi[i] % p * inv[b] % p;
                out.phi[i] = g * self.phi[i] % p * inv[a] % p;
                out.theta[i] = g * self.theta[i] % p;
            }
        }
        Ok(out)
    }

    /// Rescales `θ` so that its first nonzero entry is 1.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        if let Some(&t) = self.theta.iter().find(|&&t| t != 0) {
            let inv = inv_mod(t, self.p).expect("unit");
            for x in &mut out.theta {
                *x = *x * inv % self.p;
            }
        }
        out
    }

    /// `ψ` is constant.
    pub fn psi_constant(&self) -> bool {
        self.psi.iter().all(|&x| x == self.psi[0])
    }
}

/// Index of `(a, s)` in `Q × Z_p`.
pub fn ext_index(p: u64, a: usize, s: u64) -> usize {
    a * p as usize + s as usize
}

/// `Q ×_β Z_p` with `(a, s) ∗ (b, t) = (a∗b, φ_{a,b} s + ψ_{a,b} t + θ_{a,b})`.
pub fn extend(beta: &AbelianCocycle) -> Result<FiniteQuandle, ExtensionError> {
    beta.check()?;
    let (q, p, n) = (&beta.base, beta.p, beta.base.size());
    let pu = p as usize;
    let size = n * pu;
    let mut table = vec![0u32; size * size];
    for a in 0..n {
        for b in 0..n {
            let (fi, ps, th) = (beta.phi_at(a, b), beta.psi_at(a, b), beta.theta_at(a, b));
            let ab = q.op(a, b);
            for s in 0..p {
                for t in 0..p {
                    let r = (fi * s + ps * t + th) % p;
                    table[ext_index(p, a, s) * size + ext_index(p, b, t)] = ext_index(p, ab, r) as u32;
                }
            }
        }
    }
    let e = FiniteQuandle::from_table(size, table)
        .map_err(|err| ExtensionError::Internal(format!("valid cocycle gave a non-quandle: {err}")))?;
    let proj: Vec<usize> = (0..size).map(|x| x / pu).collect();
    if !e.is_homomorphism(q, &proj) {
        return Err(ExtensionError::Internal("projection is not a morphism".into()));
    }
    Ok(e)
}

/// Kernel of the projection `Q ×_β Z_p → Q`.
pub fn projection_kernel(beta: &AbelianCocycle) -> Partition {
    let pu = beta.p as usize;
    let labels: Vec<usize> = (0..beta.base.size() * pu).map(|x| x / pu).collect();
    Partition::from_labels(&labels)
}

/// `γ(a) = ψ_{a/u,u}⁻¹` for the `u`-normalization.
fn normalizing_gamma(beta: &AbelianCocycle, u: usize) -> Result<Vec<u64>, ExtensionError> {
    let q = &beta.base;
    if !q.is_latin() {
        return Err(ExtensionError::NotLatin);
    }
    (0..q.size())
        .map(|a| {
            let d = q.rdiv(a, u).ok_or(ExtensionError::NotLatin)?;
            Ok(inv_mod(beta.psi_at(d, u), beta.p).expect("unit"))
        })
        .collect()
}

/// The `u`-normalized cocycle `σ(u)`, cohomologous to `β`.
///
/// `φ(u)_{a,b} = ψ_{(a∗b)/u,u}⁻¹ φ_{a,b} ψ_{a/u,u}`,
/// `ψ(u)_{a,b} = ψ_{(a∗b)/u,u}⁻¹ ψ_{a,b} ψ_{b/u,u}`,
/// `θ(u)_{a,b} = ψ_{(a∗b)/u,u}⁻¹ θ_{a,b}`.
pub fn normalize(beta: &AbelianCocycle, u: usize) -> Result<AbelianCocycle, ExtensionError> {
    beta.check()?;
    let gamma = normalizing_gamma(beta, u)?;
    let sigma = beta.twist(&gamma)?;
    sigma.check().map_err(|e| ExtensionError::Internal(format!("normalized cocycle invalid: {e}")))?;
    let n = beta.base.size();
    if (0..n).any(|a| sigma.psi_at(a, u) != sigma.psi_at(u, u)) {
        return Err(ExtensionError::Internal("psi(u)_{a,u} differs from psi(u)_{u,u}".into()));
    }
    let witness = normalization_witness(beta, u)?;
    if !extend(beta)?.is_homomorphism(&extend(&sigma)?, &witness) {
        return Err(ExtensionError::Internal("normalization witness is not a morphism".into()));
    }
    Ok(sigma)
}

/// The bijection `(a, s) ↦ (a, γ(a) s)` from `Q ×_β Z_p` to `Q ×_{σ(u)} Z_p`.
pub fn normalization_witness(beta: &AbelianCocycle, u: usize) -> Result<Vec<usize>, ExtensionError> {
    let gamma = normalizing_gamma(beta, u)?;
    let p = beta.p;
    Ok((0..beta.base.size())
        .flat_map(|a| (0..p).map(move |s| (a, s)))
        .map(|(a, s)| ext_index(p, a, gamma[a] * s % p))
        .collect())
}

/// `Aff(Z_2², f)` with `f` of order 3: the connected quandle of size 4.
pub fn tetrahedral_quandle() -> FiniteQuandle {
    affine(&[2, 2], &[vec![0, 1], vec![1, 1]]).expect("affine quandle of size 4")
}

/// Parameters of a `u`-normalized cocycle on the size-4 connected quandle:
/// `ψ = λ` on row `u`, column `u` and the diagonal, `μ` elsewhere; `φ = 1 − λ`
/// on the diagonal, `φ_0` on row `u`, `φ_1` on column `u`, and off the
/// diagonal of the rest `φ_2` when `b = u∗a`, `φ_3` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormParams {
    pub lambda: u64,
    pub mu: u64,
    pub phi: [u64; 4],
}

fn pattern(q: &FiniteQuandle, p: u64, u: usize, np: &NormParams) -> (Vec<u64>, Vec<u64>) {
    let n = q.size();
    let mut psi = vec![0; n * n];
    let mut phi = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let i = a * n + b;
            psi[i] = if a == u || b == u || a == b { np.lambda } else { np.mu };
            phi[i] = if a == b {
                (1 + p - np.lambda) % p
            } else if a == u {
                np.phi[0]
            } else if b == u {
                np.phi[1]
            } else if b == q.op(u, a) {
                np.phi[2]
            } else {
                np.phi[3]
            };
        }
    }
    (psi, phi)
}

/// The `u`-normalized cocycle with the given parameters and `θ = 0`.
pub fn normalized_cocycle(p: u64, u: usize, np: &NormParams) -> Result<AbelianCocycle, ExtensionError> {
    let q = tetrahedral_quandle();
    if u >= q.size() {
        return Err(ExtensionError::InvalidSpec(format!("base point {u} out of range")));
    }
    let (psi, phi) = pattern(&q, p, u, np);
    AbelianCocycle::new(q, p, psi, phi, vec![0; 16])
}

/// Reads the parameters back from a cocycle, if it has the normalized shape.
pub fn match_norm_pattern(beta: &AbelianCocycle, u: usize) -> Option<NormParams> {
    let q = &beta.base;
    if q.size() != 4 {
        return None;
    }
    let others: Vec<usize> = (0..4).filter(|&a| a != u).collect();
    let (a, b) = (others[0], q.op(u, others[0]));
    let c = others.iter().copied().find(|&c| c != a && c != b)?;
    let np = NormParams {
        lambda: beta.psi_at(u, u),
        mu: beta.psi_at(a, b),
        phi: [beta.phi_at(u, a), beta.phi_at(a, u), beta.phi_at(a, b), beta.phi_at(a, c)],
    };
    let (psi, phi) = pattern(q, beta.p, u, &np);
    (psi == beta.psi && phi == beta.phi).then_some(np)
}

/// `(ψ, φ)` of a normalized solution with the space of compatible `θ`.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizedFamily {
    pub params: NormParams,
    /// Cocycle with `θ = 0`.
    pub cocycle: AbelianCocycle,
    pub theta_basis: Vec<Vec<u64>>,
}

impl NormalizedFamily {
    pub fn with_theta(&self, coeffs: &[u64]) -> AbelianCocycle {
        let p = self.cocycle.p;
        let mut c = self.cocycle.clone();
        for (v, &k) in self.theta_basis.iter().zip(coeffs) {
            for (t, &x) in c.theta.iter_mut().zip(v) {
                *t = (*t + k * x) % p;
            }
        }
        c
    }
}

/// Basis of the `θ` solving the linear cocycle conditions for fixed `(ψ, φ)`.
pub fn theta_solutions(q: &FiniteQuandle, p: u64, psi: &[u64], phi: &[u64]) -> Vec<Vec<u64>> {
    let n = q.size();
    let nn = n * n;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for a in 0..n {
        let mut r = vec![0i64; nn];
        r[a * n + a] = 1;
        rows.push(r);
        for b in 0..n {
            for c in 0..n {
                let (bc, x, y) = (q.op(b, c), q.op(a, b), q.op(a, c));
                let mut r = vec![0i64; nn];
                r[b * n + c] += psi[a * n + bc] as i64;
                r[a * n + bc] += 1;
                r[a * n + c] -= psi[x * n + y] as i64;
                r[a * n + b] -= phi[x * n + y] as i64;
                r[x * n + y] -= 1;
                rows.push(r);
            }
        }
    }
    MatFp::from_rows(p, &rows).kernel()
}

/// All `u`-normalized cocycles of the size-4 connected quandle with `u = 0`,
/// over the normalized parameter space, grouped by `(ψ, φ)`.
pub fn enumerate_normalized_cocycles(p: u64) -> Result<Vec<NormalizedFamily>, ExtensionError> {
    if !is_prime(p) || p == 2 || p > MAX_COCYCLE_PRIME {
        return Err(ExtensionError::InvalidSpec(format!("need an odd prime p <= {MAX_COCYCLE_PRIME}, got {p}")));
    }
    let q = tetrahedral_quandle();
    let u = 0;
    let units: Vec<(u64, u64)> = (1..p).flat_map(|l| (1..p).map(move |m| (l, m))).collect();
    let mut out: Vec<NormalizedFamily> = units
        .par_iter()
        .flat_map_iter(|&(lambda, mu)| {
            let q = &q;
            let probe = NormParams { lambda, mu, phi: [0; 4] };
            let (psi, _) = pattern(q, p, u, &probe);
            let psi_ok = psi_condition_holds(q, p, &psi);
            let grid: Vec<[u64; 4]> = if psi_ok {
                (0..p.pow(4)).map(|x| [x % p, x / p % p, x / (p * p) % p, x / (p * p * p)]).collect()
            } else {
                Vec::new()
            };
            grid.into_iter().filter_map(move |phi4| {
                let np = NormParams { lambda, mu, phi: phi4 };
                let (psi, phi) = pattern(q, p, u, &np);
                let zero = vec![0; 16];
                let c = AbelianCocycle::unchecked(q.clone(), p, psi, phi, zero).ok()?;
                if c.violation().is_some() {
                    return None;
                }
                let theta_basis = theta_solutions(q, p, &c.psi, &c.phi);
                Some(NormalizedFamily { params: np, cocycle: c, theta_basis })
            })
        })
        .collect();
    out.sort_by_key(|f| (f.params.lambda, f.params.mu, f.params.phi));
    Ok(out)
}

fn psi_condition_holds(q: &FiniteQuandle, p: u64, psi: &[u64]) -> bool {
    let n = q.size();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let (bc, x, y) = (q.op(b, c), q.op(a, b), q.op(a, c));
                psi[a * n + bc] * psi[b * n + c] % p == psi[x * n + y] * psi[a * n + c] % p
            })
        })
    })
}

/// The permutations `g, f, h` of `Q × Q` for a latin `Q` and base point `u`.
pub fn orbit_maps(q: &FiniteQuandle, u: usize) -> Result<[Vec<usize>; 3], ExtensionError> {
    if !q.is_latin() {
        return Err(ExtensionError::NotLatin);
    }
    let n = q.size();
    let rd = |a: usize, b: usize| q.rdiv(a, b).expect("latin");
    let mut g = vec![0; n * n];
    let mut f = vec![0; n * n];
    let mut h = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            g[a * n + b] = q.op(u, a) * n + q.op(u, b);
            f[a * n + b] = q.op(a, rd(b, u)) * n + q.op(a, u);
            h[a * n + b] = q.op(rd(b, q.ldiv(u, a)), a) * n + b;
        }
    }
    for m in [&g, &f, &h] {
        let mut seen = vec![false; n * n];
        for &x in m.iter() {
            if std::mem::replace(&mut seen[x], true) {
                return Err(ExtensionError::Internal("orbit map is not a permutation".into()));
            }
        }
    }
    Ok([g, f, h])
}

/// `ψ` is invariant under the group generated by the orbit maps.
pub fn psi_orbit_invariant(beta: &AbelianCocycle, u: usize) -> Result<bool, ExtensionError> {
    let maps = orbit_maps(&beta.base, u)?;
    Ok(maps.iter().all(|m| m.iter().enumerate().all(|(i, &j)| beta.psi[i] == beta.psi[j])))
}

#[derive(Clone, Debug, Serialize)]
pub struct FinalCheck {
    pub p: u64,
    pub families: usize,
    pub lambdas: Vec<u64>,
    pub theta_dimensions: Vec<usize>,
    pub psi_constant: bool,
    pub phi_complement: bool,
    pub psi_orbit_invariant: bool,
    pub extensions_valid: bool,
    pub kernel_central: bool,
}

impl FinalCheck {
    pub fn holds(&self) -> bool {
        self.psi_constant
            && self.phi_complement
            && self.psi_orbit_invariant
            && self.extensions_valid
            && self.kernel_central
            && self.lambdas == (1..self.p).collect::<Vec<_>>()
    }
}

/// Every normalized cocycle of the size-4 connected quandle has `ψ ≡ λ` and
/// `φ ≡ 1 − λ`.
pub fn final_on_ab_ext_report(p: u64) -> Result<FinalCheck, ExtensionError> {
    let fams = enumerate_normalized_cocycles(p)?;
    let mut lambdas: Vec<u64> = fams.iter().map(|f| f.params.lambda).collect();
    lambdas.dedup();
    let psi_constant = fams.iter().all(|f| f.cocycle.psi_constant());
    let phi_complement = fams.iter().all(|f| {
        let l = f.cocycle.psi[0];
        f.cocycle.phi.iter().all(|&x| (x + l) % p == 1)
    });
    let mut orbit_ok = true;
    let mut ext_ok = true;
    let mut central = true;
    for f in &fams {
        orbit_ok &= psi_orbit_invariant(&f.cocycle, 0)?;
        let mut samples = vec![f.cocycle.clone()];
        samples.extend((0..f.theta_basis.len()).map(|i| {
            let mut e = vec![0; f.theta_basis.len()];
            e[i] = 1;
            f.with_theta(&e)
        }));
        for c in samples {
            ext_ok &= c.check().is_ok();
            let e = extend(&c)?;
            let k = projection_kernel(&c);
            central &= if e.is_faithful() {
                crate::congruence::is_central_cong(&e, &k)?
            } else {
                crate::congruence::is_lmlt_centralized(&e, &k)?
            };
        }
    }
    Ok(FinalCheck {
        p,
        families: fams.len(),
        lambdas,
        theta_dimensions: fams.iter().map(|f| f.theta_basis.len()).collect(),
        psi_constant,
        phi_complement,
        psi_orbit_invariant: orbit_ok,
        extensions_valid: ext_ok,
        kernel_central: central,
    })
}

pub fn verify_final_on_ab_ext(p: u64) -> Result<bool, ExtensionError> {
    Ok(final_on_ab_ext_report(p)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_cocycle_extends() {
        let b = AbelianCocycle::constant(tetrahedral_quandle(), 7, 3).unwrap();
        let e = extend(&b).unwrap();
        assert_eq!(e.size(), 28);
        assert!(crate::congruence::is_central_cong(&e, &projection_kernel(&b)).unwrap());
    }

    #[test]
    fn perturbed_theta_reports_witness() {
        let mut b = AbelianCocycle::constant(tetrahedral_quandle(), 7, 3).unwrap();
        b.theta[1] = 1;
        assert!(matches!(b.check(), Err(ExtensionError::CocycleViolation { .. })));
    }

    #[test]
    fn diagonal_condition_rejects_psi_one_with_nonzero_phi() {
        let q = tetrahedral_quandle();
        let r = AbelianCocycle::new(q, 5, vec![1; 16], vec![1; 16], vec![0; 16]);
        assert!(matches!(r, Err(ExtensionError::CocycleViolation { condition: "phi_aa + psi_aa = 1", .. })));
    }

    #[test]
    fn normalizing_a_twist_recovers_the_pattern() {
        let b = AbelianCocycle::constant(tetrahedral_quandle(), 7, 2).unwrap();
        let t = b.twist(&[3, 5, 1, 6]).unwrap();
        assert!(t.check().is_ok());
        assert!(match_norm_pattern(&t, 0).is_none());
        let s = normalize(&t, 0).unwrap();
        assert!(match_norm_pattern(&s, 0).is_some());
        assert!(crate::quandle::are_isomorphic(&extend(&t).unwrap(), &extend(&s).unwrap()));
    }

    #[test]
    fn normalized_is_fixed_after_canonicalization() {
        let fams = enumerate_normalized_cocycles(5).unwrap();
        let f = fams.iter().find(|f| !f.theta_basis.is_empty()).unwrap();
        let c = f.with_theta(&vec![1; f.theta_basis.len()]);
        assert_eq!(normalize(&c, 0).unwrap().canonical(), c.canonical());
    }
}
