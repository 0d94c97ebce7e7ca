use super::*;
use crate::arith::is_prime;
use crate::congruence::{lattice_shape, LatticeShape};
use crate::groups::matrix::{encode_vec, MatFp};
use crate::groups::{build_gpq, cyclic_complement_aut, enumerate_aut_gpq, group_isomorphisms};
use crate::lss::{lss_label, LssClassLabel, SigmaKind};
use crate::quandle::{affine_cyclic, conj_quandle_perms, fix_coset_quandle, symmetric_class};

/// `f_d`: `F = [[0,1],[1,0]]` on the vector part and `c ↦ c⁻¹ d`.
pub fn f_d(g: &ConcreteGroup, d: &[u64]) -> Result<GroupAutomorphism, ClassifyError> {
    let sd = g.semidirect().ok_or(GroupError::WrongFamily("G_(p,q)"))?;
    let p = sd.modulus();
    let q = sd.complement().order() as u64;
    let f = MatFp::from_rows(p, &[vec![0, 1], vec![1, 0]]);
    Ok(cyclic_complement_aut(g, q - 1, &f, encode_vec(p, d))?)
}

pub fn classify_pq(p: u64, q: u64) -> Result<ClassificationResult, ClassifyError> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(ClassifyError::Unsupported(format!("need distinct primes, got ({p}, {q})")));
    }
    if p * q > MAX_CLASSIFY_SIZE {
        return Err(ClassifyError::GuardExceeded(format!("p*q = {} > {MAX_CLASSIFY_SIZE}", p * q)));
    }
    let mut res = ClassificationResult::new("pq", vec![p, q]);
    if p.min(q) == 2 {
        if p.max(q) != 3 {
            return Err(ClassifyError::Unsupported(format!(
                "({p}, {q}): only the pair (2, 3) is handled among pairs containing 2"
            )));
        }
        size_six(&mut res)?;
        return Ok(res);
    }

    for f in 2..p {
        for g in 2..q {
            let qd = FiniteQuandle::direct_product(&affine_cyclic(p, f as i64)?, &affine_cyclic(q, g as i64)?);
            let recipe = format!("product:affine:Z{p}:{f}|affine:Z{q}:{g}");
            let ok = qd.is_connected() && lattice_shape(&qd)? == LatticeShape::ReducibleFan;
            res.check("reducible connected with fan lattice", ok);
            res.reducible.push(ClassifiedQuandle::new(format!("pq:{p}:{q}:R:f={f}:g={g}"), recipe, "reducible", qd));
        }
    }
    let refs: Vec<&FiniteQuandle> = res.reducible.iter().map(|c| &c.quandle).collect();
    let ok = pairwise_non_isomorphic(&refs);
    res.check("reducible pairwise non-isomorphic", ok);

    for (b, c) in [(p, q), (q, p)] {
        if (b * b - 1) % c == 0 {
            si_family(&mut res, p, q, b, c)?;
        }
    }
    let refs: Vec<&FiniteQuandle> = res.subdirectly_irreducible.iter().map(|c| &c.quandle).collect();
    let ok = pairwise_non_isomorphic(&refs);
    res.check("SI pairwise non-isomorphic", ok);
    res.counts.insert("reducible".into(), res.reducible.len());
    res.counts.insert("si".into(), res.subdirectly_irreducible.len());
    Ok(res)
}

/// Blocks of size `b`, factor of size `c`.
fn si_family(res: &mut ClassificationResult, p: u64, q: u64, b: u64, c: u64) -> Result<(), ClassifyError> {
    let g = build_gpq(b, c)?;
    let aut = enumerate_aut_gpq(&g)?;
    let minus_one = b - 1;
    let candidates: Vec<GroupAutomorphism> = aut
        .autos
        .iter()
        .filter(|f| {
            let m = f.matrix().expect("structured");
            f.twist(&g) == Some(c - 1) && m.trace() == 0 && m.det() == minus_one
        })
        .cloned()
        .collect();
    let f1 = f_d(&g, &[0, 0])?;
    let fa = f_d(&g, &[1, 0])?;
    ensure(candidates.contains(&f1) && candidates.contains(&fa), || "f_1 or f_a is not a candidate".into())?;
    let orbits = aut_conjugacy_orbits(&g, &candidates, &aut.autos)?;
    let orbit_index = |f: &GroupAutomorphism| {
        let i = candidates.iter().position(|x| x == f).unwrap();
        orbits.iter().position(|o| o.members.contains(&i)).unwrap()
    };
    let (o1, oa) = (orbit_index(&f1), orbit_index(&fa));
    let closed_form = if (b - 1).is_multiple_of(c) { b * b * (b - 1) } else { b * b * (b + 1) };
    let oc = OrbitCount::new(g.name(), aut.autos.len(), candidates.len(), &orbits, Some(closed_form as usize));
    res.check("f_1 and f_a in distinct orbits covering all candidates", o1 != oa && orbits.len() == 2);
    res.check("orbit sum matches closed form", oc.orbit_sum == closed_form as usize);
    res.orbit_counts.push(oc);

    let build = |i: usize| -> Result<FiniteQuandle, ClassifyError> { Ok(fix_coset_quandle(&g, &candidates[i])?) };
    let agree = theorem_matches_table(&orbits, 3, build)?;
    res.check("theorem iso agrees with table iso", agree);

    let expected = LssClassLabel { block_size: b as usize, factor_size: c as usize, sigma_kind: SigmaKind::Gamma };
    for (tag, sub, f, orbit) in [("1", "d0", &f1, o1), ("a", "d1", &fa, oa)] {
        let qd = fix_coset_quandle(&g, f)?;
        let dis = qd.dis()?;
        let dis_group = ConcreteGroup::from_perm_group(dis, "Dis")?;
        let iso = dis.order() == g.order() && !group_isomorphisms(&dis_group, &g, Some(1)).is_empty();
        res.check("SI latin", qd.is_latin());
        res.check("SI connected of size pq", qd.is_connected() && qd.size() as u64 == b * c);
        res.check("Dis isomorphic to G_(p,q)", iso);
        res.check("SI label LSS(p,q,gamma)", lss_label(&qd)? == expected);
        res.check("SI lattice is a chain", lattice_shape(&qd)? == LatticeShape::SiChain);
        let mut cq = ClassifiedQuandle::new(
            format!("pq:{p}:{q}:SI:d={tag}"),
            format!("coset:Gpq:{b}:{c}:{sub}"),
            "subdirectly irreducible",
            qd,
        );
        cq.group = Some(g.name().to_string());
        cq.automorphism = Some(f.generator_images(&g));
        cq.centralizer_order = Some(orbits[orbit].centralizer_order);
        res.subdirectly_irreducible.push(cq);
    }
    Ok(())
}

/// Size 6: conjugation quandles of transpositions and of 4-cycles in S4.
fn size_six(res: &mut ClassificationResult) -> Result<(), ClassifyError> {
    let expected = LssClassLabel { block_size: 2, factor_size: 3, sigma_kind: SigmaKind::Gamma };
    for (tag, ct) in [("2", 2usize), ("4", 4)] {
        let qd = conj_quandle_perms(&symmetric_class(4, &[ct]))?;
        res.check("size-6 connected and faithful", qd.is_connected() && qd.is_faithful() && qd.size() == 6);
        res.check("size-6 label LSS(2,3,gamma)", lss_label(&qd)? == expected);
        res.check("size-6 lattice is a chain", lattice_shape(&qd)? == LatticeShape::SiChain);
        res.subdirectly_irreducible.push(ClassifiedQuandle::new(
            format!("pq:2:3:SI:S4:{tag}"),
            format!("conj:S4:{ct}"),
            "subdirectly irreducible",
            qd,
        ));
    }
    let refs: Vec<&FiniteQuandle> = res.subdirectly_irreducible.iter().map(|c| &c.quandle).collect();
    let ok = pairwise_non_isomorphic(&refs);
    let brute = brute_enumerate_connected(6)?;
    let matches = brute.len() == 2 && brute.iter().all(|b| refs.iter().any(|r| are_isomorphic(b, r)));
    res.check("SI pairwise non-isomorphic", ok);
    res.check("agrees with brute-force enumeration", matches);
    res.counts.insert("reducible".into(), 0);
    res.counts.insert("si".into(), res.subdirectly_irreducible.len());
    Ok(())
}
