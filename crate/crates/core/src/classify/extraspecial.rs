use super::*;
use crate::congruence::{gamma, zeta};
use crate::groups::{build_extraspecial2, build_heisenberg, enumerate_aut_brute, induced_on_quotient, Factor8};
use crate::lss::{lss_label, LssClassLabel, SigmaKind};
use crate::quandle::principal;

fn factor_name(fs: &[Factor8]) -> String {
    fs.iter().map(|f| if *f == Factor8::D8 { "D8" } else { "Q8" }).collect::<Vec<_>>().join(",")
}

/// Automorphisms whose action on `G/Z(G)` is irreducible and fixed-point-free.
fn irreducible_on_central_quotient(g: &ConcreteGroup, autos: &[GroupAutomorphism]) -> Vec<GroupAutomorphism> {
    let z = g.center();
    autos
        .par_iter()
        .filter(|f| match induced_on_quotient(g, f, &z) {
            Ok((quot, fq)) => acts_irreducibly_fpf(&quot, &fq),
            Err(_) => false,
        })
        .cloned()
        .collect()
}

/// Principal quandles `Q(G, f)` over extraspecial 2-groups of order 8 or 32
/// with `f` irreducible on `G/Z(G)`.
pub fn classify_extraspecial2_principal(order: usize) -> Result<ClassificationResult, ClassifyError> {
    let variants: Vec<Vec<Factor8>> = match order {
        8 => vec![vec![Factor8::D8], vec![Factor8::Q8]],
        32 => vec![vec![Factor8::D8, Factor8::D8], vec![Factor8::D8, Factor8::Q8]],
        _ => return Err(ClassifyError::Unsupported(format!("order must be 8 or 32, got {order}"))),
    };
    let mut res = ClassificationResult::new("extraspecial2", vec![order as u64]);
    let expected = LssClassLabel { block_size: 2, factor_size: order / 2, sigma_kind: SigmaKind::One };
    let mut reps: Vec<ClassifiedQuandle> = Vec::new();
    for fs in variants {
        let g = build_extraspecial2(&fs)?;
        let autos = enumerate_aut_brute(&g);
        let candidates = irreducible_on_central_quotient(&g, &autos);
        let orbits = aut_conjugacy_orbits(&g, &candidates, &autos)?;
        let oc = OrbitCount::new(g.name(), autos.len(), candidates.len(), &orbits, None);
        res.check("orbit sum equals candidate count", oc.identity_holds());
        res.orbit_counts.push(oc);
        if !orbits.is_empty() {
            let build = |i: usize| -> Result<FiniteQuandle, ClassifyError> { Ok(principal(&g, &candidates[i])?) };
            let agree = theorem_matches_table(&orbits, 2, build)?;
            res.check("theorem iso agrees with table iso", agree);
        }
        for (i, orbit) in orbits.iter().enumerate() {
            let f = &candidates[orbit.representative];
            let qd = principal(&g, f)?;
            res.check("connected of size |G|", qd.is_connected() && qd.size() == order);
            res.check("not faithful", !qd.is_faithful());
            res.check("Dis has order |G|", qd.dis()?.order() == order);
            res.check("label LSS(2, |G|/2, one)", lss_label(&qd)? == expected);
            let mut cq = ClassifiedQuandle::new(
                format!("es2:{order}:{}:{i}", factor_name(&fs)),
                format!("principal:E2:{}:{}", factor_name(&fs), join(&f.generator_images(&g))),
                "principal over an extraspecial 2-group",
                qd,
            );
            cq.group = Some(g.name().to_string());
            cq.automorphism = Some(f.generator_images(&g));
            cq.centralizer_order = Some(orbit.centralizer_order);
            reps.push(cq);
        }
    }
    let refs: Vec<&FiniteQuandle> = reps.iter().map(|c| &c.quandle).collect();
    let classes = iso_partition(&refs);
    let mut kept = Vec::new();
    for block in classes.blocks() {
        kept.push(reps[block[0]].clone());
    }
    res.counts.insert("orbits".into(), reps.len());
    res.counts.insert("classes".into(), kept.len());
    res.subdirectly_irreducible = kept;
    Ok(res)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Principal quandles over the Heisenberg group of order `p³` with `f`
/// irreducible on the center and on `G/Z(G)`.
pub fn classify_special_p(p: u64) -> Result<ClassificationResult, ClassifyError> {
    if p != 3 && p != 5 {
        return Err(ClassifyError::Unsupported(format!("p must be 3 or 5, got {p}")));
    }
    let g = build_heisenberg(p)?;
    let autos = enumerate_aut_brute(&g);
    let z = g.center();
    let zgen = z.iter().copied().find(|&x| x != g.identity()).expect("nontrivial center");
    let candidates: Vec<GroupAutomorphism> =
        irreducible_on_central_quotient(&g, &autos).into_iter().filter(|f| f.apply(&g, zgen) != zgen).collect();
    let orbits = aut_conjugacy_orbits(&g, &candidates, &autos)?;
    let mut res = ClassificationResult::new("specialp", vec![p]);
    let expected_count = ((p - 1) * (p - 1) / 2) as usize;
    let oc = OrbitCount::new(g.name(), autos.len(), candidates.len(), &orbits, None);
    res.check("orbit sum equals candidate count", oc.identity_holds());
    res.orbit_counts.push(oc);
    let build = |i: usize| -> Result<FiniteQuandle, ClassifyError> { Ok(principal(&g, &candidates[i])?) };
    let agree = theorem_matches_table(&orbits, 2, build)?;
    res.check("theorem iso agrees with table iso", agree);
    res.check("(p-1)^2/2 orbits", orbits.len() == expected_count);

    let size = (p * p * p) as usize;
    let expected = LssClassLabel { block_size: p as usize, factor_size: (p * p) as usize, sigma_kind: SigmaKind::One };
    for (i, orbit) in orbits.iter().enumerate() {
        let f = &candidates[orbit.representative];
        let qd = principal(&g, f)?;
        let dis = qd.dis()?;
        res.check("latin of size p^3", qd.is_latin() && qd.size() == size);
        res.check("Dis has order p^3", dis.order() == size);
        res.check("Z(Dis) has order p", dis.center().order() == p as usize);
        res.check("zeta equals gamma", zeta(&qd)? == gamma(&qd)?);
        res.check("label LSS(p, p^2, one)", lss_label(&qd)? == expected);
        let mut cq = ClassifiedQuandle::new(
            format!("sp:{p}:{i}"),
            format!("principal:Heis:{p}:{}", join(&f.generator_images(&g))),
            "principal over the Heisenberg group",
            qd,
        );
        cq.group = Some(g.name().to_string());
        cq.automorphism = Some(f.generator_images(&g));
        cq.centralizer_order = Some(orbit.centralizer_order);
        res.subdirectly_irreducible.push(cq);
    }
    let refs: Vec<&FiniteQuandle> = res.subdirectly_irreducible.iter().map(|c| &c.quandle).collect();
    let ok = pairwise_non_isomorphic(&refs);
    res.check("pairwise non-isomorphic", ok);
    res.counts.insert("classes".into(), res.subdirectly_irreducible.len());
    Ok(res)
}
