use super::*;
use crate::permgroup::Perm;

/// Largest size accepted by the brute-force enumeration.
pub const MAX_BRUTE_SIZE: usize = 6;

struct RowSearch {
    n: usize,
    rows: Vec<Option<Perm>>,
    found: Vec<FiniteQuandle>,
}

impl RowSearch {
    /// Fills in `L_{L_a(b)} = L_a L_b L_a⁻¹` until closed; false on a clash.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for a in 0..self.n {
                let Some(la) = self.rows[a].clone() else { continue };
                let lai = la.inverse();
                for b in 0..self.n {
                    let Some(lb) = self.rows[b].clone() else { continue };
                    let target = la.apply(b);
                    let derived = la.compose(&lb).compose(&lai);
                    match &self.rows[target] {
                        Some(existing) if *existing != derived => return false,
                        Some(_) => {}
                        None => {
                            if derived.apply(target) != target {
                                return false;
                            }
                            self.rows[target] = Some(derived);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, candidates: &[Vec<Perm>]) {
        let Some(a) = (0..self.n).find(|&a| self.rows[a].is_none()) else {
            let table: Vec<u32> = self.rows.iter().flat_map(|r| r.as_ref().unwrap().images().to_vec()).collect();
            if let Ok(q) = FiniteQuandle::from_table(self.n, table) {
                if q.is_connected() {
                    self.found.push(q);
                }
            }
            return;
        };
        for p in &candidates[a] {
            let saved = self.rows.clone();
            self.rows[a] = Some(p.clone());
            if self.propagate() {
                self.run(candidates);
            }
            self.rows = saved;
        }
    }
}

fn permutations_fixing(n: usize, a: usize) -> Vec<Perm> {
    fn rec(v: &mut Vec<u32>, k: usize, a: usize, out: &mut Vec<Perm>) {
        if k == v.len() {
            out.push(Perm::from_images(v.clone()).unwrap());
            return;
        }
        if k == a {
            return rec(v, k + 1, a, out);
        }
        for i in k..v.len() {
            if i == a {
                continue;
            }
            v.swap(k, i);
            rec(v, k + 1, a, out);
            v.swap(k, i);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n as u32).collect(), 0, a, &mut out);
    out
}

/// All connected quandles of size `n` up to isomorphism, by a search over
/// rows that are permutations fixing the diagonal, with left distributivity
/// propagated as `L_a L_b L_a⁻¹ = L_{a*b}`.
pub fn brute_enumerate_connected(n: usize) -> Result<Vec<FiniteQuandle>, ClassifyError> {
    if n > MAX_BRUTE_SIZE {
        return Err(ClassifyError::GuardExceeded(format!("brute force needs n <= {MAX_BRUTE_SIZE}, got {n}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let candidates: Vec<Vec<Perm>> = (0..n).map(|a| permutations_fixing(n, a)).collect();
    let mut search = RowSearch { n, rows: vec![None; n], found: Vec::new() };
    search.run(&candidates);
    Ok(dedup_isomorphic(search.found))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| brute_enumerate_connected(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 0, 1, 1, 3]);
    }
}
