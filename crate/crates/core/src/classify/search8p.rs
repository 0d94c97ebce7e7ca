use super::*;
use crate::arith::{gl_order, is_prime};
use crate::congruence::unique_proper_congruence;
use crate::groups::matrix::MatFp;
use crate::groups::{
    build_elem_abelian_cyclic, cyclic_complement_aut, cyclic_complement_aut_data, fix_subgroup, order_p_classes_gl2,
};
use crate::quandle::coset_quandle;

/// `|Fix(f)|` for `f = (F, c ↦ c^u d)` on a cyclic-complement group, by
/// solving `(F − 1) v = −w_j` for each complement power `c^j` that `f` fixes
/// modulo the vector part.
pub fn fix_size_cyclic(g: &ConcreteGroup, u: u64, f: &MatFp, d: usize) -> usize {
    let sd = g.semidirect().expect("semidirect group");
    let (p, m) = (sd.modulus(), sd.dim());
    let q = sd.complement().order() as u64;
    let vc = sd.vector_count();
    let fm = f.sub(&MatFp::identity(p, m));
    let r = fm.rank();
    let ker = (p as usize).pow((m - r) as u32);
    let img = g.mul(u as usize * vc, d);
    let mut total = ker;
    for j in 1..q {
        if (u * j) % q != j {
            continue;
        }
        let (w, c) = g.split(g.pow(img, j)).expect("semidirect element");
        debug_assert_eq!(c as u64, j);
        let mut entries = Vec::with_capacity(m * (m + 1));
        for (i, &wi) in w.iter().enumerate().take(m) {
            for k in 0..m {
                entries.push(fm.get(i, k) as i64);
            }
            entries.push(-(wi as i64));
        }
        if MatFp::new(p, m, m + 1, &entries).rank() == r {
            total += ker;
        }
    }
    total
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchCase {
    pub m: usize,
    pub class_index: usize,
    pub action: String,
    pub automorphisms: usize,
    pub index_matches: usize,
    pub connected: usize,
    pub latin: usize,
    pub subdirectly_irreducible: usize,
    pub latin_si: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedCase {
    pub m: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Search8pReport {
    pub schema_version: u32,
    pub p: u64,
    pub cases: Vec<SearchCase>,
    pub skipped: Vec<SkippedCase>,
    pub found: usize,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    autos: usize,
    index: usize,
    connected: usize,
    latin: usize,
    si: usize,
    latin_si: usize,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            autos: self.autos + o.autos,
            index: self.index + o.index,
            connected: self.connected + o.connected,
            latin: self.latin + o.latin,
            si: self.si + o.si,
            latin_si: self.latin_si + o.latin_si,
        }
    }
}

/// Largest prime accepted by [`search_8p`].
pub const MAX_8P_PRIME: u64 = 31;

/// Searches `Q(G, Fix(f), f)` of size `8p` over `G = Z_2^(3+k) ⋊ Z_p`,
/// `k ≤ 3`, one action per conjugacy class of order-`p` matrices, all `f`.
pub fn search_8p(p: u64) -> Result<Search8pReport, ClassifyError> {
    if !is_prime(p) || p <= 5 {
        return Err(ClassifyError::Unsupported(format!("need a prime p > 5, got {p}")));
    }
    if p > MAX_8P_PRIME {
        return Err(ClassifyError::GuardExceeded(format!("p = {p} > {MAX_8P_PRIME}")));
    }
    let mut cases = Vec::new();
    let mut skipped = Vec::new();
    for k in 0..=3usize {
        let m = 3 + k;
        if !gl_order(m as u32, 2).is_multiple_of(p as u128) {
            skipped.push(SkippedCase { m, reason: format!("{p} does not divide |GL_{m}(2)|") });
            continue;
        }
        for (ci, a) in order_p_classes_gl2(m, p).into_iter().enumerate() {
            let g = build_elem_abelian_cyclic(&a, p)?;
            let vc = 1usize << m;
            let target = 8 * p as usize;
            let data = cyclic_complement_aut_data(&g)?;
            let pairs: Vec<(u64, &MatFp)> = data.iter().flat_map(|(u, fs)| fs.iter().map(move |f| (*u, f))).collect();
            let t = pairs
                .par_iter()
                .map(|&(u, f)| {
                    let mut t = Tally::default();
                    for d in 0..vc {
                        t.autos += 1;
                        if fix_size_cyclic(&g, u, f, d) * target != g.order() {
                            continue;
                        }
                        t.index += 1;
                        let Ok(aut) = cyclic_complement_aut(&g, u, f, d) else { continue };
                        let Ok(qd) = coset_quandle(&g, &fix_subgroup(&g, &aut), &aut) else { continue };
                        if qd.size() != target || !qd.is_connected() {
                            continue;
                        }
                        t.connected += 1;
                        let latin = qd.is_latin();
                        let si = unique_proper_congruence(&qd).is_some();
                        t.latin += latin as usize;
                        t.si += si as usize;
                        t.latin_si += (latin && si) as usize;
                    }
                    t
                })
                .reduce(Tally::default, Tally::add);
            cases.push(SearchCase {
                m,
                class_index: ci,
                action: matrix_string(&a),
                automorphisms: t.autos,
                index_matches: t.index,
                connected: t.connected,
                latin: t.latin,
                subdirectly_irreducible: t.si,
                latin_si: t.latin_si,
            });
        }
    }
    if cases.is_empty() {
        return Err(ClassifyError::Infeasible {
            k: 3,
            p,
            reason: format!("{p} divides no |GL_m(2)| with 3 <= m <= 6"),
        });
    }
    let found = cases.iter().map(|c| c.latin_si).sum();
    Ok(Search8pReport { schema_version: CLASSIFICATION_SCHEMA_VERSION, p, cases, skipped, found })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fix_size_formula_matches_direct_count() {
        for a in order_p_classes_gl2(4, 7) {
            let g = build_elem_abelian_cyclic(&a, 7).unwrap();
            for (u, fs) in cyclic_complement_aut_data(&g).unwrap() {
                for f in fs.iter().take(4) {
                    for d in [0, 5, 7] {
                        let aut = cyclic_complement_aut(&g, u, f, d).unwrap();
                        assert_eq!(fix_size_cyclic(&g, u, f, d), fix_subgroup(&g, &aut).len());
                    }
                    // a translation off the kernel of the norm breaks c^7 = 1
                    assert!(cyclic_complement_aut(&g, u, f, 11).is_err());
                }
            }
        }
    }

    #[test]
    fn eleven_is_infeasible() {
        assert!(matches!(search_8p(11), Err(ClassifyError::Infeasible { .. })));
    }
}
