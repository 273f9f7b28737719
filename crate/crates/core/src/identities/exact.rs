//! Exact rational checks: harmonic-sum algebra at finite `n`, truncated
//! KY series, the triangular inversion and a specialisation chain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ky::{invert_lemma54, TriangularTable};
use super::{check, generate, sign, Family, IdentityInstance, Params};
use crate::algebra::{circled_star, star_expand, stuffle, KyIndex};
use crate::error::Result;
use crate::expr::Expr;
use crate::finite::{circled_partial_sum, eval_formal_sum, ky_partial_sum, mhs_eval, mhss_eval};
use crate::index::{Sign, SignedIndex};
use crate::rational::{int, rat, Rational};

pub fn families() -> Vec<Family> {
    vec![
        Family { id: "STUFFLE", about: "ζ_n(u)ζ_n(v) = ζ_n(u * v)", generate: stuffle_fam, grid: stuffle_grid },
        Family { id: "STAR-EXPAND", about: "ζ*_n(k) = ζ_n(k⋆)", generate: star_fam, grid: star_grid },
        Family {
            id: "CIRCLED-TRUNCATION",
            about: "partial sums of ζ(k ⊛ l)",
            generate: circled_fam,
            grid: circled_grid,
        },
        Family { id: "KY-TRUNCATION", about: "partial sums of ζ(k ⊛ l⋆)", generate: ky_fam, grid: ky_grid },
        Family {
            id: "LEMMA-5.4",
            about: "chain-sum inverse vs forward solving",
            generate: lemma54_fam,
            grid: lemma54_grid,
        },
        Family { id: "CHAIN-2.2", about: "THM-2.2 at a = -1 is BBB-4.1", generate: chain_fam, grid: chain_grid },
    ]
}

fn index(params: &Params, key: &str) -> Result<SignedIndex> {
    SignedIndex::from_signed(&params.ints(key)?)
}

fn order(params: &Params) -> Result<u64> {
    let n = params.natural("n", 0)?;
    check(n <= 60, "n", "at most 60")?;
    Ok(u64::from(n))
}

fn constants(family: &str, params: &Params, a: Rational, b: Rational) -> IdentityInstance {
    IdentityInstance::exact(family, params, Expr::constant(a), Expr::constant(b))
}

fn stuffle_fam(params: &Params) -> Result<IdentityInstance> {
    let (u, v, n) = (index(params, "u")?, index(params, "v")?, order(params)?);
    let lhs = eval_formal_sum(n, &stuffle(&u, &v));
    Ok(constants("STUFFLE", params, lhs, mhs_eval(n, &u) * mhs_eval(n, &v)))
}

const PAIRS: [(&[i64], &[i64]); 5] =
    [(&[1], &[1]), (&[2], &[-1]), (&[1, 2], &[-3]), (&[-1, 1], &[2, -1]), (&[2, 1, -1], &[1])];

fn stuffle_grid() -> Vec<Params> {
    PAIRS.iter().flat_map(|(u, v)| [7, 30].map(|n| Params::new().with("u", u).with("v", v).with("n", &[n]))).collect()
}

fn star_fam(params: &Params) -> Result<IdentityInstance> {
    let (k, n) = (index(params, "k")?, order(params)?);
    Ok(constants("STAR-EXPAND", params, mhss_eval(n, &k), eval_formal_sum(n, &star_expand(&k))))
}

fn star_grid() -> Vec<Params> {
    let ks: [&[i64]; 5] = [&[1], &[2, 1], &[-1, 2], &[1, 1, 1], &[3, -2, 1]];
    ks.iter().flat_map(|k| [5, 30].map(|n| Params::new().with("k", k).with("n", &[n]))).collect()
}

fn circled_fam(params: &Params) -> Result<IdentityInstance> {
    let (k, l, n) = (index(params, "k")?, index(params, "l")?, order(params)?);
    let fs = circled_star(&k, &l)?;
    let ky = KyIndex::new(k, l)?;
    Ok(constants("CIRCLED-TRUNCATION", params, circled_partial_sum(n, &ky), eval_formal_sum(n, &fs)))
}

fn circled_grid() -> Vec<Params> {
    PAIRS.iter().flat_map(|(k, l)| [6, 30].map(|n| Params::new().with("k", k).with("l", l).with("n", &[n]))).collect()
}

/// `l` may start with 0.
fn ky_fam(params: &Params) -> Result<IdentityInstance> {
    let (k, n) = (index(params, "k")?, order(params)?);
    let l = params.ints("l")?;
    check(!l.is_empty(), "l", "needs at least one entry")?;
    check(!k.is_empty(), "k", "needs at least one entry")?;
    let ky = KyIndex {
        k,
        l_head: l[0].unsigned_abs() as u32,
        l_head_sign: Sign::of(l[0] < 0),
        l_tail: SignedIndex::from_signed(&l[1..])?,
    };
    let fs = ky.expand_terms();
    Ok(constants("KY-TRUNCATION", params, ky_partial_sum(n, &ky), eval_formal_sum(n, &fs)))
}

fn ky_grid() -> Vec<Params> {
    let extra: [(&[i64], &[i64]); 3] = [(&[3, 2], &[0, 2, 2]), (&[1, 1], &[0, 1]), (&[-2], &[0, -1, 2])];
    PAIRS
        .iter()
        .chain(extra.iter())
        .flat_map(|(k, l)| [6, 30].map(|n| Params::new().with("k", k).with("l", l).with("n", &[n])))
        .collect()
}

/// Random table and right-hand side of size `p` drawn from `seed`.
pub fn random_lemma54_input(p: usize, seed: u64) -> (TriangularTable, Vec<Rational>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = TriangularTable::from_fn(p, |_, _| rat(rng.gen_range(-12..=12), rng.gen_range(1..=9)));
    let c = (0..p).map(|_| rat(rng.gen_range(-30..=30), rng.gen_range(1..=9))).collect();
    (a, c)
}

/// Solves `Σ_j (-1)^{j+1} A_{j,p} B_j = C_p` one row at a time.
fn solve_forward(a: &TriangularTable, c: &[Rational]) -> Result<Vec<Rational>> {
    let mut b: Vec<Rational> = Vec::with_capacity(c.len());
    for p in 1..=c.len() {
        let mut rest = c[p - 1].clone();
        for j in 1..p {
            rest -= sign(j as i64 + 1) * a.get(j, p)? * &b[j - 1];
        }
        b.push(sign(p as i64 + 1) * rest);
    }
    Ok(b)
}

/// `p` table size, `seed`; compares `B_p` from both routes.
fn lemma54_fam(params: &Params) -> Result<IdentityInstance> {
    let p = params.natural("p", 1)? as usize;
    check(p <= 12, "p", "at most 12")?;
    let seed = params.natural("seed", 0)?;
    let (a, c) = random_lemma54_input(p, u64::from(seed));
    let closed = invert_lemma54(&a, &c)?;
    let direct = solve_forward(&a, &c)?;
    Ok(constants("LEMMA-5.4", params, closed[p - 1].clone(), direct[p - 1].clone()))
}

fn lemma54_grid() -> Vec<Params> {
    (1..=8).flat_map(|p| [1, 2].map(|s| Params::new().with("p", &[p]).with("seed", &[s]))).collect()
}

/// `m, n ≥ 0`: `(lhs - rhs)` of both instances agree canonically.
fn chain_fam(params: &Params) -> Result<IdentityInstance> {
    let m = params.natural("m", 0)?;
    let n = params.natural("n", 0)?;
    let thm =
        Params::new().with("m", &[i64::from(m) + 1, i64::from(n) + 1]).with("p", &[1]).with_rational("a", &[int(-1)]);
    let bbb = Params::new().with("m", &[i64::from(m)]).with("n", &[i64::from(n)]);
    let a = generate("THM-2.2", &thm)?;
    let b = generate("BBB-4.1", &bbb)?;
    Ok(IdentityInstance::exact("CHAIN-2.2", params, a.lhs.sub(a.rhs), b.lhs.sub(b.rhs)))
}

fn chain_grid() -> Vec<Params> {
    super::tuples(2, 0, 2).into_iter().map(|v| Params::new().with("m", &[v[0]]).with("n", &[v[1]])).collect()
}
