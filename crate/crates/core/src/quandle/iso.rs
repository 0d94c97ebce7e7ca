//! Isomorphism search and automorphism groups.

use super::{FiniteQuandle, QuandleError};
use crate::permgroup::{Perm, PermGroup};

/// Per-element isomorphism invariant.
fn fingerprints(q: &FiniteQuandle) -> Vec<Vec<usize>> {
    let n = q.size();
    let orbits = q.orbit_partition();
    let orbit_sizes = orbits.blocks().iter().map(|b| b.len()).collect::<Vec<_>>();
    (0..n)
        .map(|a| {
            let mut fp = q.left_translation(a).cycle_type();
            fp.push(usize::MAX);
            let mut fiber = vec![0usize; n];
            for x in 0..n {
                fiber[q.op(x, a)] += 1;
            }
            let mut fiber: Vec<usize> = fiber.into_iter().filter(|&c| c > 0).collect();
            fiber.sort_unstable();
            fp.extend(fiber);
            fp.push(usize::MAX);
            fp.push(orbit_sizes[orbits.block_of(a)]);
            fp
        })
        .collect()
}

fn sorted_fingerprints(fp: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut v = fp.to_vec();
    v.sort();
    v
}

/// Greedy generating sequence: repeatedly add the least element outside the
/// current subquandle.
pub fn generating_sequence(q: &FiniteQuandle) -> Vec<usize> {
    let n = q.size();
    let mut gens = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    while current.len() < n {
        let mut member = vec![false; n];
        for &x in &current {
            member[x] = true;
        }
        let next = (0..n).find(|&x| !member[x]).unwrap();
        gens.push(next);
        current = q.sg(&gens);
    }
    gens
}

struct Search<'a> {
    q1: &'a FiniteQuandle,
    q2: &'a FiniteQuandle,
    fp1: Vec<usize>,
    fp2: Vec<usize>,
    map: Vec<u32>,
    inv: Vec<u32>,
    dom: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(q1: &'a FiniteQuandle, q2: &'a FiniteQuandle) -> Option<Self> {
        let f1 = fingerprints(q1);
        let f2 = fingerprints(q2);
        if sorted_fingerprints(&f1) != sorted_fingerprints(&f2) {
            return None;
        }
        let mut classes = sorted_fingerprints(&f1);
        classes.dedup();
        let id = |f: &Vec<usize>| classes.binary_search(f).unwrap();
        let n = q1.size();
        Some(Search {
            q1,
            q2,
            fp1: f1.iter().map(id).collect(),
            fp2: f2.iter().map(id).collect(),
            map: vec![u32::MAX; n],
            inv: vec![u32::MAX; n],
            dom: Vec::with_capacity(n),
        })
    }

    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.map[x] != u32::MAX {
            return self.map[x] as usize == y;
        }
        if self.inv[y] != u32::MAX || self.fp1[x] != self.fp2[y] {
            return false;
        }
        self.map[x] = y as u32;
        self.inv[y] = x as u32;
        self.dom.push(x);
        true
    }

    /// Closes the partial map under the operations; false on contradiction.
    fn close(&mut self, mut i: usize) -> bool {
        while i < self.dom.len() {
            let x = self.dom[i];
            for j in 0..=i {
                let d = self.dom[j];
                for (a, b) in [(x, d), (d, x)] {
                    let (ma, mb) = (self.map[a] as usize, self.map[b] as usize);
                    if !self.set(self.q1.op(a, b), self.q2.op(ma, mb)) {
                        return false;
                    }
                    if !self.set(self.q1.ldiv(a, b), self.q2.ldiv(ma, mb)) {
                        return false;
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for &x in &self.dom[mark..] {
            self.inv[self.map[x] as usize] = u32::MAX;
            self.map[x] = u32::MAX;
        }
        self.dom.truncate(mark);
    }

    fn try_assign(&mut self, x: usize, y: usize) -> bool {
        let mark = self.dom.len();
        if self.set(x, y) && self.close(mark) {
            true
        } else {
            self.undo(mark);
            false
        }
    }

    fn run(&mut self, gens: &[usize], depth: usize, first_choices: &[usize], out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if self.dom.len() == self.q1.size() {
            out.push(self.map.iter().map(|&y| y as usize).collect());
            return;
        }
        let mut d = depth;
        while self.map[gens[d]] != u32::MAX {
            d += 1;
        }
        let g = gens[d];
        let candidates: Vec<usize> = if d == 0 {
            first_choices.to_vec()
        } else {
            (0..self.q2.size()).filter(|&y| self.inv[y] == u32::MAX && self.fp2[y] == self.fp1[g]).collect()
        };
        for y in candidates {
            let mark = self.dom.len();
            if self.try_assign(g, y) {
                self.run(gens, d + 1, first_choices, out, limit);
                self.undo(mark);
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
}

fn search(q1: &FiniteQuandle, q2: &FiniteQuandle, limit: usize, pin_first: bool) -> Vec<Vec<usize>> {
    if q1.size() != q2.size() {
        return Vec::new();
    }
    if q1.size() == 0 {
        return vec![Vec::new()];
    }
    let Some(mut s) = Search::new(q1, q2) else {
        return Vec::new();
    };
    let gens = generating_sequence(q1);
    let g0 = gens[0];
    let mut first: Vec<usize> = (0..q2.size()).filter(|&y| s.fp2[y] == s.fp1[g0]).collect();
    if pin_first && q1.is_connected() && q2.is_connected() {
        first.truncate(1);
    }
    let mut out = Vec::new();
    s.run(&gens, 0, &first, &mut out, limit);
    out
}

/// An isomorphism `q1 → q2` as an image array, if one exists.
pub fn find_isomorphism(q1: &FiniteQuandle, q2: &FiniteQuandle) -> Option<Vec<usize>> {
    search(q1, q2, 1, true).into_iter().next()
}

pub fn are_isomorphic(q1: &FiniteQuandle, q2: &FiniteQuandle) -> bool {
    find_isomorphism(q1, q2).is_some()
}

/// All automorphisms, up to `limit`.
pub fn automorphisms(q: &FiniteQuandle, limit: usize) -> Result<Vec<Perm>, QuandleError> {
    let all = search(q, q, limit + 1, false);
    if all.len() > limit {
        return Err(QuandleError::SizeExceeded { size: all.len(), limit });
    }
    let mut out: Vec<Perm> =
        all.into_iter().map(|m| Perm::from_images_unchecked(m.into_iter().map(|x| x as u32).collect())).collect();
    out.sort();
    Ok(out)
}

pub fn aut_group(q: &FiniteQuandle) -> Result<PermGroup, QuandleError> {
    let autos = automorphisms(q, 1_000_000)?;
    Ok(PermGroup::closure(q.size(), &autos)?)
}

/// A cheap invariant telling two quandles apart, if any.
pub fn separating_invariant(q1: &FiniteQuandle, q2: &FiniteQuandle) -> Option<String> {
    separating_invariants(q1, q2).into_iter().next()
}

/// Every invariant in the standard list that differs, cheapest first.
pub fn separating_invariants(q1: &FiniteQuandle, q2: &FiniteQuandle) -> Vec<String> {
    if q1.size() != q2.size() {
        return vec!["size".into()];
    }
    type Invariant = fn(&FiniteQuandle) -> String;
    let checks: [(&str, Invariant); 6] = [
        ("connected", |q| q.is_connected().to_string()),
        ("latin", |q| q.is_latin().to_string()),
        ("faithful", |q| q.is_faithful().to_string()),
        ("orbit sizes", |q| format!("{:?}", q.orbit_partition().block_sizes())),
        ("element fingerprints", |q| format!("{:?}", sorted_fingerprints(&fingerprints(q)))),
        ("displacement group order", |q| format!("{:?}", q.dis().map(|g| g.order()).ok())),
    ];
    let mut out: Vec<String> =
        checks.iter().filter(|(_, f)| f(q1) != f(q2)).map(|(name, _)| name.to_string()).collect();
    if q1.size() <= crate::congruence::MAX_LATTICE_SIZE {
        let c1 = crate::congruence::all_congruences(q1).map(|l| l.len()).ok();
        let c2 = crate::congruence::all_congruences(q2).map(|l| l.len()).ok();
        if c1 != c2 {
            out.push("congruence count".into());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{affine, affine_cyclic, affine_from_polynomial, conj_quandle_perms, symmetric_class};

    #[test]
    fn self_isomorphism() {
        let q = affine_cyclic(7, 3).unwrap();
        let w = find_isomorphism(&q, &q).unwrap();
        assert!(q.is_homomorphism(&q, &w));
    }

    #[test]
    fn transpositions_of_s3_are_dihedral() {
        let q1 = conj_quandle_perms(&symmetric_class(3, &[2])).unwrap();
        let q2 = affine_cyclic(3, -1).unwrap();
        let w = find_isomorphism(&q1, &q2).unwrap();
        assert!(q1.is_homomorphism(&q2, &w));
    }

    #[test]
    fn size_four_polynomial_matches_matrix() {
        let a = affine(&[2, 2], &[vec![0, 1], vec![1, 1]]).unwrap();
        let b = affine_from_polynomial(2, &[1, 1, 1], 1).unwrap();
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn non_isomorphic_affine() {
        let a = affine_cyclic(7, 3).unwrap();
        let b = affine_cyclic(7, 2).unwrap();
        assert!(!are_isomorphic(&a, &b));
        assert!(separating_invariant(&a, &b).is_some());
    }

    #[test]
    fn automorphisms_of_aff_z5_2() {
        // Aut(Aff(Z5, 2)) = AGL(1, 5) of order 20
        let q = affine_cyclic(5, 2).unwrap();
        assert_eq!(automorphisms(&q, 1000).unwrap().len(), 20);
        let g = aut_group(&q).unwrap();
        assert!(q.left_translations().iter().all(|l| g.contains(l)));
    }
}
