//! Construction recipes: short strings naming a quandle built by the toolkit.

use thiserror::Error;

use crate::classify::{f_d, f_lambda, ClassifyError};
use crate::extensions::{
    extend, medial_instance, normalized_cocycle, union_affine_pair, union_pm_one, union_point, ExtensionError,
    NormParams,
};
use crate::groups::matrix::MatFp;
use crate::groups::{
    build_elem_abelian_cyclic, build_extraspecial2, build_gk, build_gpq, build_heisenberg, cyclic_complement_aut,
    fix_subgroup, smallest_cube_root_of_unity, Factor8, GroupAutomorphism, GroupError,
};
use crate::quandle::{
    affine, affine_cyclic, affine_from_polynomial, affine_matrix, affine_zp2_companion, conj_quandle_perms,
    coset_quandle, fix_coset_quandle, principal, projection, symmetric_class, FiniteQuandle, QuandleError,
};

pub const RECIPE_VERSION: u32 = 1;

pub const RECIPE_GRAMMAR: &str = "\
projection:<n>
affine:Z<n>:<f>
affine:Z2^2:ord3 | affine:Z<p>^<m>:<rows a,b;c,d>
polynomial:<p>:<c0,c1,..>:<power>
zp2:<p>:<c0,c1,..>
product:<recipe>|<recipe>
coset:Gpq:<p>:<q>:d0|d1
coset:Gk:<p>:k|k2
coset:E:<m>:<p>:<A rows>:<F rows>:<u>:<d>
principal:E2:<D8|Q8,..>:<generator images>
principal:Heis:<p>:<generator images>
conj:S4:2|4
extension:Q4:<p>:<lambda>[:<mu>:<f0,f1,f2,f3>]
union:i:<p>:<f> | union:ii:<p> | union:iii:<p>
medial:1|2";

#[derive(Debug, Error)]
pub enum RecipeError {
    #[error("bad recipe '{recipe}': {message}\nrecipes:\n{RECIPE_GRAMMAR}")]
    Syntax { recipe: String, message: String },
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

fn bad(recipe: &str, message: impl Into<String>) -> RecipeError {
    RecipeError::Syntax { recipe: recipe.into(), message: message.into() }
}

fn num<T: std::str::FromStr>(recipe: &str, s: &str) -> Result<T, RecipeError> {
    s.trim().parse().map_err(|_| bad(recipe, format!("'{s}' is not a number")))
}

fn list<T: std::str::FromStr>(recipe: &str, s: &str) -> Result<Vec<T>, RecipeError> {
    s.split(',').map(|x| num(recipe, x)).collect()
}

fn matrix_rows(recipe: &str, s: &str) -> Result<Vec<Vec<i64>>, RecipeError> {
    let rows: Vec<Vec<i64>> = s.split(';').map(|r| list(recipe, r)).collect::<Result<_, _>>()?;
    let k = rows.len();
    if rows.iter().any(|r| r.len() != k) {
        return Err(bad(recipe, "matrix must be square"));
    }
    Ok(rows)
}

fn expect_len(recipe: &str, parts: &[&str], n: usize) -> Result<(), RecipeError> {
    if parts.len() != n {
        return Err(bad(recipe, format!("expected {n} fields, found {}", parts.len())));
    }
    Ok(())
}

/// `Z<n>` or `Z<p>^<m>`.
fn parse_module(recipe: &str, s: &str) -> Result<(u64, u32), RecipeError> {
    let body = s.strip_prefix('Z').ok_or_else(|| bad(recipe, format!("'{s}' must start with Z")))?;
    match body.split_once('^') {
        Some((p, m)) => Ok((num(recipe, p)?, num(recipe, m)?)),
        None => Ok((num(recipe, body)?, 1)),
    }
}

pub fn build_recipe(recipe: &str) -> Result<FiniteQuandle, RecipeError> {
    let recipe = recipe.trim();
    let (kind, rest) = recipe.split_once(':').ok_or_else(|| bad(recipe, "missing ':'"))?;
    if kind == "product" {
        let (a, b) = rest.split_once('|').ok_or_else(|| bad(recipe, "product needs two recipes separated by '|'"))?;
        return Ok(FiniteQuandle::direct_product(&build_recipe(a)?, &build_recipe(b)?));
    }
    let parts: Vec<&str> = rest.split(':').collect();
    match kind {
        "projection" => {
            expect_len(recipe, &parts, 1)?;
            let n: usize = num(recipe, parts[0])?;
            if n == 0 {
                return Err(bad(recipe, "size must be positive"));
            }
            Ok(projection(n))
        }
        "affine" => {
            expect_len(recipe, &parts, 2)?;
            let (p, m) = parse_module(recipe, parts[0])?;
            if m == 1 && !parts[1].contains(';') {
                return Ok(affine_cyclic(p, num(recipe, parts[1])?)?);
            }
            if parts[1] == "ord3" {
                if (p, m) != (2, 2) {
                    return Err(bad(recipe, "ord3 is defined over Z2^2"));
                }
                return Ok(affine(&[2, 2], &[vec![0, 1], vec![1, 1]])?);
            }
            let rows = matrix_rows(recipe, parts[1])?;
            if rows.len() != m as usize {
                return Err(bad(recipe, format!("matrix must be {m}x{m}")));
            }
            Ok(affine_matrix(&MatFp::from_rows(p, &rows))?)
        }
        "polynomial" => {
            expect_len(recipe, &parts, 3)?;
            Ok(affine_from_polynomial(num(recipe, parts[0])?, &list(recipe, parts[1])?, num(recipe, parts[2])?)?)
        }
        "zp2" => {
            expect_len(recipe, &parts, 2)?;
            Ok(affine_zp2_companion(num(recipe, parts[0])?, &list(recipe, parts[1])?)?)
        }
        "coset" => coset(recipe, &parts),
        "principal" => principal_recipe(recipe, &parts),
        "conj" => {
            expect_len(recipe, &parts, 2)?;
            if parts[0] != "S4" {
                return Err(bad(recipe, "only S4 conjugation classes are available"));
            }
            let ct: usize = num(recipe, parts[1])?;
            if ct != 2 && ct != 4 {
                return Err(bad(recipe, "cycle type must be 2 or 4"));
            }
            Ok(conj_quandle_perms(&symmetric_class(4, &[ct]))?)
        }
        "extension" => {
            if parts.len() != 3 && parts.len() != 5 {
                return Err(bad(recipe, "expected extension:Q4:<p>:<lambda>[:<mu>:<f0,f1,f2,f3>]"));
            }
            if parts[0] != "Q4" {
                return Err(bad(recipe, "only extensions of Q4 are available"));
            }
            let p: u64 = num(recipe, parts[1])?;
            let lambda: u64 = num(recipe, parts[2])?;
            let np = if parts.len() == 3 {
                let c = (1 + p - lambda % p) % p;
                NormParams { lambda, mu: lambda, phi: [c; 4] }
            } else {
                let phi: Vec<u64> = list(recipe, parts[4])?;
                let phi: [u64; 4] = phi.try_into().map_err(|_| bad(recipe, "phi needs four entries"))?;
                NormParams { lambda, mu: num(recipe, parts[3])?, phi }
            };
            Ok(extend(&normalized_cocycle(p, 0, &np)?)?)
        }
        "union" => match parts.as_slice() {
            ["i", p, f] => Ok(union_point(num(recipe, p)?, num(recipe, f)?)?),
            ["ii", p] => Ok(union_pm_one(num(recipe, p)?)?),
            ["iii", p] => Ok(union_affine_pair(num(recipe, p)?)?),
            _ => Err(bad(recipe, "expected union:i:<p>:<f>, union:ii:<p> or union:iii:<p>")),
        },
        "medial" => {
            expect_len(recipe, &parts, 1)?;
            Ok(medial_instance(num(recipe, parts[0])?)?)
        }
        _ => Err(bad(recipe, format!("unknown kind '{kind}'"))),
    }
}

fn coset(recipe: &str, parts: &[&str]) -> Result<FiniteQuandle, RecipeError> {
    match parts.first().copied() {
        Some("Gpq") => {
            expect_len(recipe, parts, 4)?;
            let g = build_gpq(num(recipe, parts[1])?, num(recipe, parts[2])?)?;
            let d = match parts[3] {
                "d0" => [0, 0],
                "d1" => [1, 0],
                _ => return Err(bad(recipe, "translation must be d0 or d1")),
            };
            Ok(fix_coset_quandle(&g, &f_d(&g, &d)?)?)
        }
        Some("Gk") => {
            expect_len(recipe, parts, 3)?;
            let p: u64 = num(recipe, parts[1])?;
            let k = smallest_cube_root_of_unity(p).ok_or_else(|| bad(recipe, "p must be 1 mod 3"))?;
            let lambda = match parts[2] {
                "k" => k,
                "k2" => k * k % p,
                _ => return Err(bad(recipe, "lambda must be k or k2")),
            };
            let g = build_gk(p, k)?;
            Ok(fix_coset_quandle(&g, &f_lambda(&g, lambda)?)?)
        }
        Some("E") => {
            expect_len(recipe, parts, 7)?;
            let m: usize = num(recipe, parts[1])?;
            let p: u64 = num(recipe, parts[2])?;
            let a = MatFp::from_rows(2, &matrix_rows(recipe, parts[3])?);
            let f = MatFp::from_rows(2, &matrix_rows(recipe, parts[4])?);
            if a.rows() != m || f.rows() != m {
                return Err(bad(recipe, format!("matrices must be {m}x{m}")));
            }
            let g = build_elem_abelian_cyclic(&a, p)?;
            let aut = cyclic_complement_aut(&g, num(recipe, parts[5])?, &f, num(recipe, parts[6])?)?;
            Ok(coset_quandle(&g, &fix_subgroup(&g, &aut), &aut)?)
        }
        _ => Err(bad(recipe, "expected coset:Gpq, coset:Gk or coset:E")),
    }
}

fn principal_recipe(recipe: &str, parts: &[&str]) -> Result<FiniteQuandle, RecipeError> {
    let g = match parts.first().copied() {
        Some("E2") => {
            expect_len(recipe, parts, 3)?;
            let factors: Vec<Factor8> = parts[1]
                .split(',')
                .map(|f| match f {
                    "D8" => Ok(Factor8::D8),
                    "Q8" => Ok(Factor8::Q8),
                    _ => Err(bad(recipe, format!("unknown factor '{f}'"))),
                })
                .collect::<Result<_, _>>()?;
            build_extraspecial2(&factors)?
        }
        Some("Heis") => {
            expect_len(recipe, parts, 3)?;
            build_heisenberg(num(recipe, parts[1])?)?
        }
        _ => return Err(bad(recipe, "expected principal:E2 or principal:Heis")),
    };
    let images: Vec<usize> = list(recipe, parts[2])?;
    let f = GroupAutomorphism::from_generator_images(&g, &images)?;
    Ok(principal(&g, &f)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for (r, n) in [
            ("affine:Z5:2", 5),
            ("coset:Gpq:5:3:d0", 15),
            ("product:affine:Z2^2:ord3|affine:Z7:3", 28),
            ("conj:S4:4", 6),
            ("extension:Q4:7:3", 28),
            ("union:ii:5", 7),
            ("medial:1", 3),
            ("coset:Gk:7:k2", 28),
            ("polynomial:3:1,0,1:2", 81),
        ] {
            assert_eq!(build_recipe(r).unwrap().size(), n, "{r}");
        }
    }

    #[test]
    fn errors_carry_the_grammar() {
        let e = build_recipe("affine:Q5:2").unwrap_err();
        assert!(e.to_string().contains("recipes:"));
        assert!(build_recipe("nonsense").is_err());
    }
}
