//! Group automorphisms and their enumeration for the concrete families.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use super::build::{gk_rho, q8};
use super::matrix::{decode_vec, encode_vec, span_all, MatFp};
use super::{ConcreteGroup, GroupError, GroupFamily, GroupKind};
use crate::permgroup::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum AutRepr {
    /// `f(v, c) = F v · f(c)`; `comp[c]` is the image of the complement element `c`.
    Structured {
        f: MatFp,
        comp: Vec<u32>,
    },
    Table {
        map: Vec<u32>,
    },
}

/// An automorphism of a [`ConcreteGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    repr: AutRepr,
}

impl GroupAutomorphism {
    pub fn identity(g: &ConcreteGroup) -> Self {
        match g.kind() {
            GroupKind::SemidirectVec(sd) => GroupAutomorphism {
                repr: AutRepr::Structured {
                    f: MatFp::identity(sd.modulus(), sd.dim()),
                    comp: (0..sd.complement().order()).map(|c| (c * sd.vector_count()) as u32).collect(),
                },
            },
            GroupKind::CayleyTable(t) => {
                GroupAutomorphism { repr: AutRepr::Table { map: (0..t.order() as u32).collect() } }
            }
        }
    }

    /// For a semidirect group: the automorphism acting by `f` on the vector
    /// part and sending complement generator `i` to `comp_gen_images[i]`.
    pub fn structured(g: &ConcreteGroup, f: &MatFp, comp_gen_images: &[usize]) -> Result<Self, GroupError> {
        let sd = g.semidirect().ok_or(GroupError::WrongFamily("semidirect"))?;
        let comp = sd.complement();
        let comp_gens = sd.complement_generators();
        if comp_gens.len() != comp_gen_images.len() {
            return Err(GroupError::NotAutomorphism("wrong number of complement images".into()));
        }
        if !f.is_invertible() || f.rows() != sd.dim() {
            return Err(GroupError::NotAutomorphism("vector part is not invertible".into()));
        }
        let vc = sd.vector_count();
        let nc = comp.order();
        let mut img: Vec<u32> = vec![u32::MAX; nc];
        img[comp.identity()] = g.identity() as u32;
        let mut queue = VecDeque::from([comp.identity()]);
        while let Some(c) = queue.pop_front() {
            for (&cg, &im) in comp_gens.iter().zip(comp_gen_images) {
                let d = comp.mul(c, cg);
                let val = g.mul(img[c] as usize, im) as u32;
                if img[d] == u32::MAX {
                    img[d] = val;
                    queue.push_back(d);
                } else if img[d] != val {
                    return Err(GroupError::NotAutomorphism("complement relations not preserved".into()));
                }
            }
        }
        let mut tau_seen = vec![false; nc];
        for &x in &img {
            let t = x as usize / vc;
            if tau_seen[t] {
                return Err(GroupError::NotAutomorphism("induced complement map not bijective".into()));
            }
            tau_seen[t] = true;
        }
        for &cg in comp_gens {
            let t = img[cg] as usize / vc;
            if f.mul(sd.rho(cg)) != sd.rho(t).mul(f) {
                return Err(GroupError::NotAutomorphism("F does not intertwine the action".into()));
            }
        }
        Ok(GroupAutomorphism { repr: AutRepr::Structured { f: f.clone(), comp: img } })
    }

    /// Extends generator images to a full map, checking it is an automorphism.
    pub fn from_generator_images(g: &ConcreteGroup, images: &[usize]) -> Result<Self, GroupError> {
        let map = extend_generator_images(g, g, images)
            .ok_or_else(|| GroupError::NotAutomorphism("generator images do not extend".into()))?;
        Ok(GroupAutomorphism { repr: AutRepr::Table { map } })
    }

    pub fn from_map(g: &ConcreteGroup, map: Vec<u32>) -> Result<Self, GroupError> {
        let n = g.order();
        if map.len() != n || Perm::from_images(map.clone()).is_err() {
            return Err(GroupError::NotAutomorphism("map is not a bijection".into()));
        }
        for x in 0..n {
            for &y in g.generators() {
                if map[g.mul(x, y)] as usize != g.mul(map[x] as usize, map[y] as usize) {
                    return Err(GroupError::NotAutomorphism("not a homomorphism".into()));
                }
            }
        }
        Ok(GroupAutomorphism { repr: AutRepr::Table { map } })
    }

    pub fn apply(&self, g: &ConcreteGroup, x: usize) -> usize {
        match &self.repr {
            AutRepr::Structured { f, comp } => {
                let sd = g.semidirect().expect("structured automorphism on semidirect group");
                let vc = sd.vector_count();
                let (c, v) = (x / vc, x % vc);
                let fv = encode_vec(sd.modulus(), &f.mul_vec(&decode_vec(sd.modulus(), sd.dim(), v)));
                g.mul(fv, comp[c] as usize)
            }
            AutRepr::Table { map } => map[x] as usize,
        }
    }

    /// Full image array.
    pub fn to_map(&self, g: &ConcreteGroup) -> Vec<u32> {
        match &self.repr {
            AutRepr::Table { map } => map.clone(),
            AutRepr::Structured { .. } => (0..g.order()).map(|x| self.apply(g, x) as u32).collect(),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, g: &ConcreteGroup, other: &GroupAutomorphism) -> GroupAutomorphism {
        match (&self.repr, &other.repr) {
            (AutRepr::Structured { f: f1, .. }, AutRepr::Structured { f: f2, comp: c2 }) => {
                let comp = c2.iter().map(|&x| self.apply(g, x as usize) as u32).collect();
                GroupAutomorphism { repr: AutRepr::Structured { f: f1.mul(f2), comp } }
            }
            _ => {
                let m2 = other.to_map(g);
                let map = m2.iter().map(|&x| self.apply(g, x as usize) as u32).collect();
                GroupAutomorphism { repr: AutRepr::Table { map } }
            }
        }
    }

    pub fn inverse(&self, g: &ConcreteGroup) -> GroupAutomorphism {
        match &self.repr {
            AutRepr::Structured { f, comp } => {
                let sd = g.semidirect().unwrap();
                let vc = sd.vector_count();
                let p = sd.modulus();
                let finv = f.inverse().expect("invertible");
                let mut inv_comp = vec![0u32; comp.len()];
                for (c, &x) in comp.iter().enumerate() {
                    // f(-F⁻¹ d_c, c) = (0, τ(c))
                    let (tau, d) = (x as usize / vc, x as usize % vc);
                    let dv = decode_vec(p, sd.dim(), d);
                    let w: Vec<u64> = finv.mul_vec(&dv).iter().map(|&a| (p - a) % p).collect();
                    inv_comp[tau] = (c * vc + encode_vec(p, &w)) as u32;
                }
                GroupAutomorphism { repr: AutRepr::Structured { f: finv, comp: inv_comp } }
            }
            AutRepr::Table { map } => {
                let mut inv = vec![0u32; map.len()];
                for (i, &x) in map.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                GroupAutomorphism { repr: AutRepr::Table { map: inv } }
            }
        }
    }

    /// `psi ∘ self ∘ psi⁻¹`
    pub fn conjugate_by(&self, g: &ConcreteGroup, psi: &GroupAutomorphism, psi_inv: &GroupAutomorphism) -> Self {
        psi.compose(g, &self.compose(g, psi_inv))
    }

    pub fn is_identity(&self, g: &ConcreteGroup) -> bool {
        *self == GroupAutomorphism::identity(g)
    }

    pub fn order(&self, g: &ConcreteGroup) -> usize {
        let id = GroupAutomorphism::identity(g);
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = self.compose(g, &x);
            k += 1;
        }
        k
    }

    /// Restriction to the vector part, for structured automorphisms.
    pub fn matrix(&self) -> Option<&MatFp> {
        match &self.repr {
            AutRepr::Structured { f, .. } => Some(f),
            AutRepr::Table { .. } => None,
        }
    }

    /// Image of complement element `c`, for structured automorphisms.
    pub fn complement_image(&self, c: usize) -> Option<usize> {
        match &self.repr {
            AutRepr::Structured { comp, .. } => Some(comp[c] as usize),
            AutRepr::Table { .. } => None,
        }
    }

    /// For a cyclic complement with generator 1: `u` with `f(c) = c^u d`.
    pub fn twist(&self, g: &ConcreteGroup) -> Option<u64> {
        let sd = g.semidirect()?;
        let img = self.complement_image(1)?;
        Some((img / sd.vector_count()) as u64)
    }

    /// For a cyclic complement: `d` with `f(c) = c^u d`.
    pub fn translation(&self, g: &ConcreteGroup) -> Option<Vec<u64>> {
        let sd = g.semidirect()?;
        let img = self.complement_image(1)?;
        let u = img / sd.vector_count();
        let cu = u * sd.vector_count();
        let d = g.mul(g.inv(cu), img);
        Some(decode_vec(sd.modulus(), sd.dim(), d))
    }

    /// Images of the designated generators.
    pub fn generator_images(&self, g: &ConcreteGroup) -> Vec<usize> {
        g.generators().iter().map(|&x| self.apply(g, x)).collect()
    }
}

/// Extends `images` of `src`'s generators to a homomorphism into `dst`;
/// returns `None` unless it is well defined and bijective.
pub fn extend_generator_images(src: &ConcreteGroup, dst: &ConcreteGroup, images: &[usize]) -> Option<Vec<u32>> {
    let gens = src.generators();
    if gens.len() != images.len() || src.order() != dst.order() {
        return None;
    }
    let n = src.order();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    map[src.identity()] = dst.identity() as u32;
    used[dst.identity()] = true;
    let mut queue = VecDeque::from([src.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&gsrc, &gdst) in gens.iter().zip(images) {
            let y = src.mul(x, gsrc);
            let val = dst.mul(map[x] as usize, gdst);
            if map[y] == u32::MAX {
                if used[val] {
                    return None;
                }
                used[val] = true;
                map[y] = val as u32;
                queue.push_back(y);
            } else if map[y] as usize != val {
                return None;
            }
        }
    }
    if map.contains(&u32::MAX) {
        return None;
    }
    Some(map)
}

/// All isomorphisms `src → dst` (or automorphisms when equal), by backtracking
/// on generator images with order matching and partial-extension pruning.
/// Stops after `limit` results when given.
pub fn group_isomorphisms(src: &ConcreteGroup, dst: &ConcreteGroup, limit: Option<usize>) -> Vec<Vec<u32>> {
    if src.order() != dst.order() {
        return Vec::new();
    }
    let gens = src.generators().to_vec();
    let dst_orders: Vec<usize> = (0..dst.order()).map(|x| dst.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = src.element_order(g);
            (0..dst.order()).filter(|&x| dst_orders[x] == o).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    iso_rec(src, dst, &gens, &candidates, &mut chosen, &mut out, limit);
    out
}

fn iso_rec(
    src: &ConcreteGroup,
    dst: &ConcreteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<u32>>,
    limit: Option<usize>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    let depth = chosen.len();
    if depth == gens.len() {
        if let Some(m) = extend_generator_images(src, dst, chosen) {
            out.push(m);
        }
        return;
    }
    for &c in &candidates[depth] {
        chosen.push(c);
        if depth + 1 == gens.len() || partial_consistent(src, dst, &gens[..=depth], chosen) {
            iso_rec(src, dst, gens, candidates, chosen, out, limit);
        }
        chosen.pop();
    }
}

/// Checks the partial assignment extends to an injective homomorphism on the
/// generated subgroup.
fn partial_consistent(src: &ConcreteGroup, dst: &ConcreteGroup, gens: &[usize], images: &[usize]) -> bool {
    let mut map: HashMap<usize, usize> = HashMap::from([(src.identity(), dst.identity())]);
    let mut used: HashSet<usize> = HashSet::from([dst.identity()]);
    let mut queue = VecDeque::from([src.identity()]);
    while let Some(x) = queue.pop_front() {
        let mx = map[&x];
        for (&gs, &gd) in gens.iter().zip(images) {
            let y = src.mul(x, gs);
            let val = dst.mul(mx, gd);
            match map.get(&y) {
                Some(&v) if v != val => return false,
                Some(_) => {}
                None => {
                    if !used.insert(val) {
                        return false;
                    }
                    map.insert(y, val);
                    queue.push_back(y);
                }
            }
        }
    }
    true
}

/// Generic automorphism enumeration for small groups of any kind.
pub fn enumerate_aut_brute(g: &ConcreteGroup) -> Vec<GroupAutomorphism> {
    let mut out: Vec<GroupAutomorphism> = group_isomorphisms(g, g, None)
        .into_iter()
        .map(|map| GroupAutomorphism { repr: AutRepr::Table { map } })
        .collect();
    out.sort();
    out
}

fn solve_intertwiners(left: &MatFp, right: &MatFp) -> Vec<Vec<u64>> {
    // F·right = left·F  ⟺  left·F − F·right = 0
    MatFp::sylvester_operator(left, right).kernel()
}

fn invertible_matrices_in_span(p: u64, n: usize, basis: &[Vec<u64>]) -> Vec<MatFp> {
    span_all(p, basis, n * n)
        .into_iter()
        .map(|v| MatFp::from_reduced(p, n, n, v))
        .filter(|m| m.is_invertible())
        .collect()
}

/// Result of an automorphism enumeration.
#[derive(Clone, Debug)]
pub struct AutEnumeration {
    pub autos: Vec<GroupAutomorphism>,
    /// Twist exponents `u` that admitted solutions (for cyclic complements).
    pub twists: Vec<u64>,
}

/// For a cyclic-complement semidirect group `Z_p^m ⋊ Z_q`: each unit `u`
/// with the invertible `F` solving `F A = A^u F`. A translation `d` completes
/// such a pair to the automorphism `F`, `c ↦ c^u d` exactly when `(c^u d)^q = 1`.
pub fn cyclic_complement_aut_data(g: &ConcreteGroup) -> Result<Vec<(u64, Vec<MatFp>)>, GroupError> {
    let sd = g.semidirect().ok_or(GroupError::WrongFamily("semidirect"))?;
    if sd.complement_generators() != [1] {
        return Err(GroupError::WrongFamily("cyclic complement"));
    }
    let q = sd.complement().order() as u64;
    let (p, m) = (sd.modulus(), sd.dim());
    let a = sd.rho(1).clone();
    Ok((1..q)
        .filter(|&u| crate::arith::gcd(u, q) == 1)
        .map(|u| (u, invertible_matrices_in_span(p, m, &solve_intertwiners(&a.pow(u), &a))))
        .filter(|(_, fs)| !fs.is_empty())
        .collect())
}

/// The automorphism `F`, `c ↦ c^u d` of a cyclic-complement group.
pub fn cyclic_complement_aut(g: &ConcreteGroup, u: u64, f: &MatFp, d: usize) -> Result<GroupAutomorphism, GroupError> {
    let sd = g.semidirect().ok_or(GroupError::WrongFamily("semidirect"))?;
    let img = g.mul(u as usize * sd.vector_count(), d);
    GroupAutomorphism::structured(g, f, &[img])
}

fn enumerate_aut_cyclic_complement(g: &ConcreteGroup) -> Result<AutEnumeration, GroupError> {
    let vc = g.semidirect().ok_or(GroupError::WrongFamily("semidirect"))?.vector_count();
    let mut autos = Vec::new();
    let mut twists = Vec::new();
    for (u, fs) in cyclic_complement_aut_data(g)? {
        let found: Vec<GroupAutomorphism> = fs
            .par_iter()
            .flat_map_iter(|f| (0..vc).filter_map(move |d| cyclic_complement_aut(g, u, f, d).ok()))
            .collect();
        if !found.is_empty() {
            twists.push(u);
        }
        autos.extend(found);
    }
    autos.sort();
    Ok(AutEnumeration { autos, twists })
}

/// Aut(G_{p,q}); the returned twists should be exactly `{1, q−1}`.
pub fn enumerate_aut_gpq(g: &ConcreteGroup) -> Result<AutEnumeration, GroupError> {
    match g.family() {
        GroupFamily::Gpq { .. } => enumerate_aut_cyclic_complement(g),
        _ => Err(GroupError::WrongFamily("G_(p,q)")),
    }
}

/// Aut(Z_2^m ⋊ Z_p) by solving the conjugacy condition per twist.
pub fn enumerate_aut_elemabelian_cyclic(g: &ConcreteGroup) -> Result<AutEnumeration, GroupError> {
    match g.family() {
        GroupFamily::ElemAbelianCyclic { m, .. } => {
            if *m > 6 {
                return Err(GroupError::SizeExceeded { order: g.order(), limit: 64 * 31 });
            }
            enumerate_aut_cyclic_complement(g)
        }
        _ => Err(GroupError::WrongFamily("Z_2^m x Z_p")),
    }
}

/// The 24 automorphisms of Q8 as images `(x ↦ h, y ↦ g)`.
pub fn q8_automorphisms() -> Vec<(usize, usize)> {
    let noncentral = [q8::I, q8::J, q8::K, q8::neg(q8::I), q8::neg(q8::J), q8::neg(q8::K)];
    let mut out = Vec::new();
    for &h in &noncentral {
        for &g in &noncentral {
            if g % 4 != h % 4 {
                out.push((h, g));
            }
        }
    }
    out
}

/// Aut(G_k): Q8 automorphism, intertwining `F`, and a free `w ∈ Z_p²`.
pub fn enumerate_aut_gk(g: &ConcreteGroup) -> Result<Vec<GroupAutomorphism>, GroupError> {
    let GroupFamily::Gk { p, k } = *g.family() else {
        return Err(GroupError::WrongFamily("G_k"));
    };
    let sd = g.semidirect().unwrap();
    let (rx, ry) = gk_rho(p, k);
    let half = crate::arith::inv_mod(2, p).unwrap() as i64;
    let id = MatFp::identity(p, 2);
    let mut out: Vec<GroupAutomorphism> = q8_automorphisms()
        .par_iter()
        .flat_map_iter(|&(h, gg)| {
            let (rh, rg) = (sd.rho(h).clone(), sd.rho(gg).clone());
            // F ρ_x = ρ_h F and F ρ_y = ρ_g F
            let op1 = MatFp::sylvester_operator(&rh, &rx);
            let op2 = MatFp::sylvester_operator(&rg, &ry);
            let mut rows = op1.to_rows();
            rows.extend(op2.to_rows());
            let stacked =
                MatFp::from_rows(p, &rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<_>>());
            let fs = invertible_matrices_in_span(p, 2, &stacked.kernel());
            let a1 = id.add(&rh).scale(half);
            let a2 = id.add(&rg).scale(half);
            fs.into_iter().flat_map(move |f| {
                let (a1, a2) = (a1.clone(), a2.clone());
                (0..sd.vector_count()).filter_map(move |w| {
                    let wv = decode_vec(p, 2, w);
                    let v1 = a1.mul_vec(&wv);
                    let v2 = a2.mul_vec(&wv);
                    let ix = g.mul(g.element(&[0, 0], h), g.element(&v1, q8::ONE));
                    let iy = g.mul(g.element(&[0, 0], gg), g.element(&v2, q8::ONE));
                    GroupAutomorphism::structured(g, &f, &[ix, iy]).ok()
                })
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Elements fixed by `f`.
pub fn fix_subgroup(g: &ConcreteGroup, f: &GroupAutomorphism) -> Vec<usize> {
    (0..g.order()).filter(|&x| f.apply(g, x) == x).collect()
}

/// `[G, f] = ⟨ g f(g)⁻¹ ⟩`
pub fn twisted_subgroup(g: &ConcreteGroup, f: &GroupAutomorphism) -> Vec<usize> {
    let gens: Vec<usize> = (0..g.order()).map(|x| g.mul(x, g.inv(f.apply(g, x)))).collect();
    let mut gens = gens;
    gens.sort_unstable();
    gens.dedup();
    g.subgroup(&gens)
}

/// The automorphism induced on `G/N` for an `f`-invariant normal `N`.
pub fn induced_on_quotient(
    g: &ConcreteGroup,
    f: &GroupAutomorphism,
    normal: &[usize],
) -> Result<(ConcreteGroup, GroupAutomorphism), GroupError> {
    let mut member = vec![false; g.order()];
    for &x in normal {
        member[x] = true;
    }
    if normal.iter().any(|&x| !member[f.apply(g, x)]) {
        return Err(GroupError::NotInvariant);
    }
    let (quot, proj) = g.quotient(normal)?;
    let cos = g.left_cosets(normal);
    let map: Vec<u32> = cos.reps.iter().map(|&r| proj[f.apply(g, r)]).collect();
    let aut = GroupAutomorphism::from_map(&quot, map)?;
    Ok((quot, aut))
}

/// Permutation `gH ↦ f(g)H` of the left cosets of an `f`-invariant subgroup.
pub fn induced_on_cosets(g: &ConcreteGroup, f: &GroupAutomorphism, h: &[usize]) -> Result<Perm, GroupError> {
    let cos = g.left_cosets(h);
    let mut member = vec![false; g.order()];
    for &x in h {
        member[x] = true;
    }
    if h.iter().any(|&x| !member[f.apply(g, x)]) {
        return Err(GroupError::NotInvariant);
    }
    let images = cos.reps.iter().map(|&r| cos.label[f.apply(g, r)]).collect();
    Perm::from_images(images).map_err(|_| GroupError::NotInvariant)
}

/// Index of each automorphism in a list, for orbit computations.
pub fn index_autos(autos: &[GroupAutomorphism]) -> HashMap<&GroupAutomorphism, usize> {
    autos.iter().enumerate().map(|(i, a)| (a, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_gk, build_gpq, build_heisenberg, quaternion};

    #[test]
    fn identity_and_inverse_roundtrip() {
        let g = build_gpq(5, 3).unwrap();
        let all = enumerate_aut_gpq(&g).unwrap();
        let id = GroupAutomorphism::identity(&g);
        assert!(all.autos.contains(&id));
        for f in all.autos.iter().step_by(97) {
            let fi = f.inverse(&g);
            assert!(f.compose(&g, &fi).is_identity(&g));
            assert_eq!(f.to_map(&g).len(), 75);
        }
    }

    #[test]
    fn gpq_counts_and_twists() {
        let g = build_gpq(5, 3).unwrap();
        let e = enumerate_aut_gpq(&g).unwrap();
        assert_eq!(e.autos.len(), 2 * 25 * 4 * 6);
        assert_eq!(e.twists, vec![1, 2]);
    }

    #[test]
    fn q8_automorphism_count() {
        let q = quaternion();
        assert_eq!(enumerate_aut_brute(&q).len(), 24);
        assert_eq!(q8_automorphisms().len(), 24);
    }

    #[test]
    fn gk_automorphisms_close_under_composition() {
        let g = build_gk(7, 2).unwrap();
        let all = enumerate_aut_gk(&g).unwrap();
        assert_eq!(all.len(), 24 * 49 * 6);
        let set: HashSet<&GroupAutomorphism> = all.iter().collect();
        for (a, b) in all.iter().step_by(611).zip(all.iter().step_by(457)) {
            assert!(set.contains(&a.compose(&g, b)));
        }
    }

    #[test]
    fn fix_and_twisted_identity() {
        let g = build_heisenberg(3).unwrap();
        let id = GroupAutomorphism::identity(&g);
        assert_eq!(fix_subgroup(&g, &id).len(), 27);
        assert_eq!(twisted_subgroup(&g, &id), vec![g.identity()]);
    }

    #[test]
    fn inversion_on_abelian_gives_squares() {
        let g = crate::groups::cyclic(12);
        let inv = GroupAutomorphism::from_map(&g, (0..12).map(|x| ((12 - x) % 12) as u32).collect()).unwrap();
        let tw = twisted_subgroup(&g, &inv);
        let squares: Vec<usize> = (0..12).map(|x| g.mul(x, x)).collect::<HashSet<_>>().into_iter().collect();
        let mut squares = squares;
        squares.sort_unstable();
        assert_eq!(tw, squares);
    }
}
