//! Integral = series: two-column poset integrals against signed KY values.

use num_traits::One;

use super::{all_signs, check, ky, mzv, sum_of, Family, IdentityInstance, Params};
use crate::error::Result;
use crate::expr::{Atom, Expr};
use crate::index::ArgumentedIndex;
use crate::poset::integral_series_poset;
use crate::rational::{int, Rational};

pub fn families() -> Vec<Family> {
    vec![
        Family {
            id: "INT-SERIES",
            about: "two-column poset integral equals a signed KY value",
            generate: int_series,
            grid: int_series_grid,
        },
        Family {
            id: "EQ-5.21-PRINTED",
            about: "depth-3 relation from k = (1,1), l = (1,2)",
            generate: depth3,
            grid: depth3_grid,
        },
    ]
}

fn read_signs(params: &Params, key: &str, len: usize) -> Result<Vec<i64>> {
    let a = match params.get(key) {
        Some(_) => params.ints(key)?,
        None => vec![1; len],
    };
    check(a.len() == len, key, "needs one sign per entry of k")?;
    check(a.iter().all(|v| v.abs() == 1), key, "entries must be 1 or -1")?;
    Ok(a)
}

/// `k` positive, `a` signs (default all 1), `l` positive.
fn int_series(params: &Params) -> Result<IdentityInstance> {
    let k = params.naturals("k", 1)?;
    let l = params.naturals("l", 1)?;
    check(!k.is_empty(), "k", "needs at least one entry")?;
    check(!l.is_empty(), "l", "needs at least one entry")?;
    let a = read_signs(params, "a", k.len())?;
    let alpha: Vec<Rational> = a.iter().map(|&v| int(v)).collect();
    let lhs = Expr::atom(Atom::Poset(integral_series_poset(&k, &alpha, &l)?));
    let signed: Vec<i64> = k.iter().zip(&a).map(|(&e, &s)| i64::from(e) * s).collect();
    // α'_1 ... α'_r = α_1^r α_2^{r-1} ... α_r.
    let r = a.len();
    let denom: i64 = a.iter().enumerate().map(|(j, &s)| s.pow((r - j) as u32)).product();
    let rhs = Expr::scaled(int(denom), ky(&signed, &l, Rational::one())?);
    Ok(IdentityInstance::numeric("INT-SERIES", params, lhs, rhs))
}

fn int_series_grid() -> Vec<Params> {
    let ks: [&[i64]; 5] = [&[1], &[2], &[1, 1], &[2, 1], &[1, 2]];
    let ls: [&[i64]; 4] = [&[1], &[2], &[1, 1], &[1, 2]];
    let mut out = Vec::new();
    for k in ks {
        for a in all_signs(k.len()) {
            for l in ls {
                out.push(Params::new().with("k", k).with("a", &a).with("l", l));
            }
        }
    }
    out
}

fn xi(exps: &[u32], z: &[i64]) -> Result<Expr> {
    let args = z.iter().map(|&v| int(v)).collect();
    Ok(Expr::atom(Atom::LiXi(ArgumentedIndex::new(exps.to_vec(), args)?)))
}

/// Left side in `Li^Ξ` form and right side in signed MZVs, for `a = (α_1, α_2)`.
pub fn depth3_sides(a1: i64, a2: i64) -> Result<(Expr, Expr)> {
    let (p1, p2) = (a1, a1 * a2);
    let one = Rational::one();
    let two = int(2);
    let lhs = sum_of(vec![
        (two.clone(), xi(&[3, 1, 1], &[1, p1, p2])?),
        (two.clone(), xi(&[3, 1, 1], &[p1, 1, p2])?),
        (two, xi(&[3, 1, 1], &[p1, p2, 1])?),
        (one.clone(), xi(&[2, 2, 1], &[p1, 1, p2])?),
        (one.clone(), xi(&[2, 2, 1], &[p1, p2, 1])?),
        (one.clone(), xi(&[2, 1, 2], &[p1, p2, 1])?),
    ]);
    let rhs = sum_of(vec![
        (one.clone(), mzv(&[2 * a1, a2, 2])?),
        (one.clone(), mzv(&[2 * a1, 2, a2])?),
        (one.clone(), mzv(&[2 * a1, 3 * a2])?),
        (one, mzv(&[4 * a1, a2])?),
    ]);
    Ok((lhs, rhs))
}

/// The two relations written out in explicit MZVs, for `a = (1, 1)` and `(-1, 1)`.
pub fn depth3_explicit(a1: i64, a2: i64) -> Option<(Expr, Expr)> {
    let terms = |list: &[(i64, &[i64])]| -> Expr {
        sum_of(list.iter().map(|(c, v)| (int(*c), mzv(v).expect("admissible"))).collect())
    };
    match (a1, a2) {
        (1, 1) => Some((
            terms(&[(6, &[3, 1, 1]), (2, &[2, 2, 1]), (1, &[2, 1, 2])]),
            terms(&[(1, &[2, 2, 1]), (1, &[2, 1, 2]), (1, &[2, 3]), (1, &[4, 1])]),
        )),
        (-1, 1) => Some((
            terms(&[
                (2, &[3, -1, 1]),
                (2, &[-3, -1, -1]),
                (2, &[-3, 1, -1]),
                (1, &[-2, -2, -1]),
                (1, &[-2, 2, -1]),
                (1, &[-2, 1, -2]),
            ]),
            terms(&[(1, &[-2, 1, 2]), (1, &[-2, 2, 1]), (1, &[-2, 3]), (1, &[-4, 1])]),
        )),
        _ => None,
    }
}

fn depth3(params: &Params) -> Result<IdentityInstance> {
    let a = read_signs(params, "a", 2)?;
    let (lhs, rhs) = depth3_sides(a[0], a[1])?;
    Ok(IdentityInstance::numeric("EQ-5.21-PRINTED", params, lhs, rhs))
}

fn depth3_grid() -> Vec<Params> {
    all_signs(2).map(|a| Params::new().with("a", &a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::structurally_equal;
    use crate::identities::generate;
    use crate::identities::tests_support::assert_holds;

    #[test]
    fn both_forms_agree_structurally() {
        for (a1, a2) in [(1, 1), (-1, 1)] {
            let (lhs, rhs) = depth3_sides(a1, a2).unwrap();
            let (el, er) = depth3_explicit(a1, a2).unwrap();
            assert!(structurally_equal(&lhs, &el).unwrap(), "lhs ({a1},{a2})");
            assert!(structurally_equal(&rhs, &er).unwrap(), "rhs ({a1},{a2})");
        }
    }

    #[test]
    fn poset_and_ky_expand_to_the_explicit_relation() {
        for (a1, a2) in [(1, 1), (-1, 1)] {
            let p = Params::parse(&format!("k=1:1,a={a1}:{a2},l=1:2")).unwrap();
            let inst = generate("INT-SERIES", &p).unwrap();
            let (el, er) = depth3_explicit(a1, a2).unwrap();
            assert!(structurally_equal(&inst.lhs, &el).unwrap(), "poset ({a1},{a2})");
            assert!(structurally_equal(&inst.rhs, &er).unwrap(), "ky ({a1},{a2})");
        }
    }

    #[test]
    fn small_instances_hold() {
        for (id, p) in [("INT-SERIES", "k=2:1,a=-1:1,l=1:1"), ("INT-SERIES", "k=1,l=2"), ("EQ-5.21-PRINTED", "a=1:-1")]
        {
            assert_holds(id, p);
        }
    }
}
