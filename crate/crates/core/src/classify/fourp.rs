use super::*;
use crate::arith::{gl_order, is_prime};
use crate::congruence::{lattice_shape, unique_proper_congruence, LatticeShape};
use crate::groups::matrix::MatFp;
use crate::groups::q8;
use crate::groups::{
    build_elem_abelian_cyclic, build_gk, cyclic_complement_aut, cyclic_complement_aut_data, enumerate_aut_gk,
    fix_subgroup, induced_on_quotient, order_p_classes_gl2, smallest_cube_root_of_unity, GroupFamily,
};
use crate::lss::{lss_label, LssClassLabel, SigmaKind};
use crate::quandle::{affine, affine_cyclic, coset_quandle, fix_coset_quandle};

/// `f(λ)`: `x ↦ y`, `y ↦ xyz`, `z ↦ z`, and on the vector part
/// `[[1+λ, −k(1+λ)], [k²(1+λ), 0]]`.
pub fn f_lambda(g: &ConcreteGroup, lambda: u64) -> Result<GroupAutomorphism, ClassifyError> {
    let GroupFamily::Gk { p, k } = *g.family() else {
        return Err(GroupError::WrongFamily("G_k").into());
    };
    let (p, k, l) = (p as i64, k as i64, lambda as i64);
    let f = MatFp::new(p as u64, 2, 2, &[1 + l, -k * (1 + l), k * k % p * (1 + l), 0]);
    let img_x = g.element(&[0, 0], q8::J);
    let img_y = g.element(&[0, 0], q8::mul(q8::mul(q8::I, q8::J), q8::MINUS_ONE));
    Ok(GroupAutomorphism::structured(g, &f, &[img_x, img_y])?)
}

fn ord3_quandle() -> Result<FiniteQuandle, ClassifyError> {
    Ok(affine(&[2, 2], &[vec![0, 1], vec![1, 1]])?)
}

pub fn classify_4p(p: u64) -> Result<ClassificationResult, ClassifyError> {
    if !is_prime(p) || p <= 5 {
        return Err(ClassifyError::Unsupported(format!("need a prime p > 5, got {p}")));
    }
    if 4 * p > MAX_CLASSIFY_SIZE {
        return Err(ClassifyError::GuardExceeded(format!("4p = {} > {MAX_CLASSIFY_SIZE}", 4 * p)));
    }
    let mut res = ClassificationResult::new("4p", vec![p]);
    let q4 = ord3_quandle()?;
    for g in 2..p {
        let qd = FiniteQuandle::direct_product(&q4, &affine_cyclic(p, g as i64)?);
        let ok = qd.is_connected() && lattice_shape(&qd)? == LatticeShape::ReducibleFan;
        res.check("reducible connected with fan lattice", ok);
        res.reducible.push(ClassifiedQuandle::new(
            format!("4p:{p}:R:g={g}"),
            format!("product:affine:Z2^2:ord3|affine:Z{p}:{g}"),
            "reducible",
            qd,
        ));
    }
    let refs: Vec<&FiniteQuandle> = res.reducible.iter().map(|c| &c.quandle).collect();
    let ok = pairwise_non_isomorphic(&refs);
    res.check("reducible pairwise non-isomorphic", ok);

    let si4 = factor_four(&mut res, p)?;
    let sip = factor_p(&mut res, p)?;
    let refs: Vec<&FiniteQuandle> = res.subdirectly_irreducible.iter().map(|c| &c.quandle).collect();
    let ok = pairwise_non_isomorphic(&refs);
    res.check("SI pairwise non-isomorphic", ok);
    res.counts.insert("reducible".into(), res.reducible.len());
    res.counts.insert("si_factor4".into(), si4);
    res.counts.insert("si_factorp".into(), sip);
    Ok(res)
}

fn is_candidate(g: &ConcreteGroup, derived: &[usize], f: &GroupAutomorphism, p: u64) -> bool {
    if f.compose(g, &f.compose(g, f)) != GroupAutomorphism::identity(g) {
        return false;
    }
    if fix_subgroup(g, f).len() != 2 * p as usize {
        return false;
    }
    match induced_on_quotient(g, f, derived) {
        Ok((quot, fq)) => acts_irreducibly_fpf(&quot, &fq),
        Err(_) => false,
    }
}

/// Latin quandles over `G_k` with factor of size 4.
fn factor_four(res: &mut ClassificationResult, p: u64) -> Result<usize, ClassifyError> {
    if p % 3 != 1 {
        return Ok(0);
    }
    let k = smallest_cube_root_of_unity(p).expect("p = 1 mod 3");
    let g = build_gk(p, k)?;
    let autos = enumerate_aut_gk(&g)?;
    let derived = g.derived_subgroup();
    let candidates: Vec<GroupAutomorphism> =
        autos.par_iter().filter(|f| is_candidate(&g, &derived, f, p)).cloned().collect();
    let k2 = k * k % p;
    let reps = [f_lambda(&g, k)?, f_lambda(&g, k2)?];
    ensure(reps.iter().all(|f| candidates.contains(f)), || "f(k) or f(k²) is not a candidate".into())?;
    let orbits = aut_conjugacy_orbits(&g, &candidates, &autos)?;
    let orbit_of = |f: &GroupAutomorphism| {
        let i = candidates.iter().position(|x| x == f).unwrap();
        orbits.iter().position(|o| o.members.contains(&i)).unwrap()
    };
    let (o1, o2) = (orbit_of(&reps[0]), orbit_of(&reps[1]));
    let oc = OrbitCount::new(g.name(), autos.len(), candidates.len(), &orbits, Some(16 * p as usize));
    res.check("f(k) and f(k²) in distinct orbits covering all candidates", o1 != o2 && orbits.len() == 2);
    res.check("orbit sum matches closed form", oc.orbit_sum == 16 * p as usize);
    res.orbit_counts.push(oc);
    let build = |i: usize| -> Result<FiniteQuandle, ClassifyError> { Ok(fix_coset_quandle(&g, &candidates[i])?) };
    let agree = theorem_matches_table(&orbits, 2, build)?;
    res.check("theorem iso agrees with table iso", agree);

    let expected = LssClassLabel { block_size: p as usize, factor_size: 4, sigma_kind: SigmaKind::Zero };
    for (tag, f, orbit) in [("k", &reps[0], o1), ("k2", &reps[1], o2)] {
        let qd = fix_coset_quandle(&g, f)?;
        let dis = qd.dis()?;
        res.check("factor-4 SI latin", qd.is_latin());
        res.check("factor-4 SI connected of size 4p", qd.is_connected() && qd.size() as u64 == 4 * p);
        res.check("left translations of order 3", qd.left_translations().iter().all(|l| l.order() == 3));
        res.check("Dis has the order of G_k", dis.order() == g.order());
        res.check("factor-4 SI label LSS(p,4,zero)", lss_label(&qd)? == expected);
        let mut cq = ClassifiedQuandle::new(
            format!("4p:{p}:SI4:lambda={tag}"),
            format!("coset:Gk:{p}:{tag}"),
            "subdirectly irreducible, factor 4",
            qd,
        );
        cq.group = Some(g.name().to_string());
        cq.automorphism = Some(f.generator_images(&g));
        cq.centralizer_order = Some(orbits[orbit].centralizer_order);
        res.subdirectly_irreducible.push(cq);
    }
    Ok(2)
}

/// Quandles with factor of size `p` and blocks of size 4, searched over
/// `Z_2^m ⋊ Z_p` for `m ∈ {2, 3, 4}` and all their automorphisms.
fn factor_p(res: &mut ClassificationResult, p: u64) -> Result<usize, ClassifyError> {
    let mut found: Vec<(FiniteQuandle, String)> = Vec::new();
    for m in 2..=4u32 {
        if !gl_order(m, 2).is_multiple_of(p as u128) {
            continue;
        }
        for a in order_p_classes_gl2(m as usize, p) {
            let g = build_elem_abelian_cyclic(&a, p)?;
            let vc = 1usize << m;
            let data = cyclic_complement_aut_data(&g)?;
            let jobs: Vec<(u64, &MatFp, usize)> =
                data.iter().flat_map(|(u, fs)| fs.iter().flat_map(move |f| (0..vc).map(move |d| (*u, f, d)))).collect();
            let hits: Vec<(FiniteQuandle, String)> = jobs
                .par_iter()
                .filter_map(|&(u, f, d)| {
                    if fix_size_cyclic(&g, u, f, d) * 4 * p as usize != g.order() {
                        return None;
                    }
                    let aut = cyclic_complement_aut(&g, u, f, d).ok()?;
                    let qd = coset_quandle(&g, &fix_subgroup(&g, &aut), &aut).ok()?;
                    if !qd.is_connected() {
                        return None;
                    }
                    let gamma = unique_proper_congruence(&qd)?;
                    if gamma.num_blocks() as u64 != p {
                        return None;
                    }
                    let recipe = format!("coset:E:{m}:{p}:{}:{}:{u}:{d}", matrix_string(&a), matrix_string(f));
                    Some((qd, recipe))
                })
                .collect();
            found.extend(hits);
        }
    }
    let mut classes: Vec<(FiniteQuandle, String)> = Vec::new();
    for (qd, recipe) in found {
        if !classes.iter().any(|(r, _)| are_isomorphic(r, &qd)) {
            classes.push((qd, recipe));
        }
    }
    let count = classes.len();
    for (i, (qd, recipe)) in classes.into_iter().enumerate() {
        let dis = qd.dis()?;
        let derived = dis.derived_subgroup();
        let elem_ab = derived.is_abelian() && derived.elements().iter().all(|x| x.pow(2).is_identity());
        res.check("factor-p Dis is Z_2^3 by Z_p", dis.order() == 8 * p as usize && derived.order() == 8 && elem_ab);
        res.check("factor-p SI not latin", !qd.is_latin());
        let gamma = crate::congruence::gamma(&qd)?;
        let block = qd.subquandle(&gamma.block(0))?;
        res.check("factor-p blocks are the connected quandle of size 4", block.is_connected() && block.size() == 4);
        let label = lss_label(&qd)?;
        let expected = LssClassLabel { block_size: 4, factor_size: p as usize, sigma_kind: SigmaKind::Gamma };
        res.check("factor-p label LSS(4,p,gamma)", label == expected);
        res.subdirectly_irreducible.push(ClassifiedQuandle::new(
            format!("4p:{p}:SIp:{i}"),
            recipe,
            "subdirectly irreducible, factor p",
            qd,
        ));
    }
    Ok(count)
}
