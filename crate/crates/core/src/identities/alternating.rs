//! Alternating MZVs with a leading `1̄`: the reversal relation at `-1`,
//! the finite-star integral lemma and the Kaneko–Yamamoto expansions at ½.

use num_traits::{One, Zero};

use super::polylog::Shape;
use super::{
    check, ef_expansion, log_power, mzv, ones, product, sign, signed_diamond, sum_of, tuples, Family, IdentityInstance,
    Params,
};
use crate::error::Result;
use crate::expr::{Atom, Expr};
use crate::finite::{mhss_eval, parametric_star_eval};
use crate::index::SignedIndex;
use crate::rational::{int, rat, Rational};

pub fn families() -> Vec<Family> {
    vec![
        Family { id: "THM-3.1", about: "reversal relation for ζ(1̄, ...)", generate: thm31, grid: thm31_grid },
        Family { id: "COR-3.2", about: "reversal relation with all m_j = 1", generate: cor32, grid: cor32_grid },
        Family { id: "LEMMA-3.3", about: "iterated integral of ζ*_n(s; t)", generate: lemma33, grid: lemma33_grid },
        Family { id: "THM-3.4", about: "ζ(1̄,{1},p̄+1,...) via KY values at ½", generate: thm34, grid: thm34_grid },
        Family {
            id: "THM-5.1", about: "ζ(1̄, 1̄◇...◇1̄, ...) via KY values at ½", generate: thm51, grid: thm51_grid
        },
    ]
}

pub const K1_P0_NOTE: &str = "k = 1 with p_1 = 0: the displayed right side omits the product \
(-1)^{m_1} ζ(1̄,{1}_{m_1-1}) ζ(1̄,{1}_{m_2-1}); expected to fail";

/// `(head, {1}_{ones}, rest)`.
fn lead(head: i64, ones_n: u32, rest: &[u32]) -> Vec<i64> {
    let mut v = vec![head];
    v.extend(ones(ones_n));
    v.extend(rest.iter().map(|&x| x as i64));
    v
}

fn bar(e: u32) -> i64 {
    -(e as i64)
}

fn l2(i: u32) -> Expr {
    log_power(&int(2), i)
}

fn z2(a: Vec<i64>, b: Vec<i64>) -> Result<Expr> {
    Ok(product(mzv(&a)?, mzv(&b)?))
}

fn thm31(params: &Params) -> Result<IdentityInstance> {
    let s = Shape::read(params, 1)?;
    let k = s.k();
    let (m1, mk1) = (s.mm(1), s.mm(k + 1));
    let sg = sign((s.p_upto(k) + s.m_upto(k + 1)) as i64);
    let one = Rational::one();

    let mut lhs = Vec::new();
    for i in 0..m1 {
        lhs.push((one.clone(), product(l2(i), mzv(&lead(-1, m1 - i - 1, &s.fwd(1)))?)));
    }
    for i in 0..mk1 {
        lhs.push((sg.clone(), product(l2(i), mzv(&lead(-1, mk1 - i - 1, &s.bwd(k)))?)));
    }
    lhs.push((one.clone(), product(l2(m1), mzv(&lead(bar(s.pp(1) + 1), s.mm(2) - 1, &s.fwd(2)))?)));
    lhs.push((sg, product(l2(mk1), mzv(&lead(bar(s.pp(k) + 1), s.mm(k) - 1, &s.bwd(k - 1)))?)));

    let mut rhs = Vec::new();
    if k == 1 {
        let (p1, m2) = (s.pp(1), s.mm(2));
        for i in 1..p1 {
            let t = z2(lead(bar(i + 1), m1 - 1, &[]), lead(bar(p1 - i + 1), m2 - 1, &[]))?;
            rhs.push((sign(m1 as i64 + i as i64 - 1), t));
        }
    } else {
        for j in 2..k {
            let c = (s.p_upto(j - 1) + s.m_upto(j) - 1) as i64;
            for i in 0..=s.pp(j) {
                let a = lead(bar(i + 1), s.mm(j) - 1, &s.bwd(j - 1));
                let b = lead(bar(s.pp(j) - i + 1), s.mm(j + 1) - 1, &s.fwd(j + 1));
                rhs.push((sign(c + i as i64), z2(a, b)?));
            }
        }
        for j in 1..k {
            let c = (s.p_upto(j) + s.m_upto(j)) as i64;
            for i in 1..s.mm(j + 1) {
                let a = lead(-1, i - 1, &s.bwd(j));
                let b = lead(-1, s.mm(j + 1) - i - 1, &s.fwd(j + 1));
                rhs.push((sign(c + i as i64 - 1), z2(a, b)?));
            }
        }
        for i in 1..=s.pp(1) {
            let a = lead(bar(s.pp(1) - i + 1), s.mm(2) - 1, &s.fwd(2));
            let b = lead(bar(i + 1), m1 - 1, &[]);
            rhs.push((sign(m1 as i64 + i as i64 - 1), z2(a, b)?));
        }
        let c = (s.p_upto(k) + s.m_upto(k)) as i64;
        for i in 1..=s.pp(k) {
            let a = lead(bar(s.pp(k) - i + 1), s.mm(k) - 1, &s.bwd(k - 1));
            let b = lead(bar(i + 1), mk1 - 1, &[]);
            rhs.push((sign(c + i as i64 - 1), z2(a, b)?));
        }
    }
    let inst = IdentityInstance::numeric("THM-3.1", params, sum_of(lhs), sum_of(rhs));
    Ok(if k == 1 && s.pp(1) == 0 { inst.note(K1_P0_NOTE) } else { inst })
}

/// The product the k = 1 display leaves out at `p_1 = 0`.
pub fn thm31_k1_p0_gap(m1: u32, m2: u32) -> Result<Expr> {
    Ok(Expr::scaled(sign(m1 as i64), z2(lead(-1, m1 - 1, &[]), lead(-1, m2 - 1, &[]))?))
}

fn thm31_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for m in tuples(2, 1, 2) {
        for p1 in 1..=3 {
            out.push(Params::new().with("m", &m).with("p", &[p1]));
        }
    }
    for m in [[1, 1, 1], [2, 1, 1], [1, 2, 1], [1, 1, 2]] {
        for p in tuples(2, 0, 2) {
            out.push(Params::new().with("m", &m).with("p", &p));
        }
    }
    for p in [[1, 0, 1], [2, 1, 0], [0, 0, 1]] {
        out.push(Params::new().with("m", &[1, 2, 1, 1]).with("p", &p));
    }
    out
}

fn cor32(params: &Params) -> Result<IdentityInstance> {
    let p = params.naturals("p", 0)?;
    check(!p.is_empty(), "p", "needs at least one entry")?;
    let k = p.len();
    let up: Vec<u32> = p.iter().map(|&x| x + 1).collect();
    let rev: Vec<u32> = up.iter().rev().copied().collect();
    let total: i64 = p.iter().map(|&x| x as i64).sum();
    let one = Rational::one();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    if k == 1 {
        let c = one.clone() + sign(total);
        lhs.push((c.clone(), mzv(&lead(-1, 0, &up))?));
        lhs.push((c, product(l2(1), mzv(&lead(bar(up[0]), 0, &[]))?)));
        for i in 1..p[0] {
            rhs.push((sign(i as i64), z2(vec![bar(i + 1)], vec![bar(p[0] - i + 1)])?));
        }
    } else {
        let sg = sign(total + k as i64 - 1);
        lhs.push((one.clone(), mzv(&lead(-1, 0, &up))?));
        lhs.push((sg.clone(), mzv(&lead(-1, 0, &rev))?));
        lhs.push((one.clone(), product(l2(1), mzv(&lead(bar(up[0]), 0, &up[1..]))?)));
        lhs.push((sg, product(l2(1), mzv(&lead(bar(rev[0]), 0, &rev[1..]))?)));
        for j in 2..k {
            let before: i64 = p[..j - 1].iter().map(|&x| x as i64).sum();
            let inner: Vec<u32> = up[..j - 1].iter().rev().copied().collect();
            for i in 0..=p[j - 1] {
                let a = lead(bar(i + 1), 0, &inner);
                let b = lead(bar(p[j - 1] - i + 1), 0, &up[j..]);
                rhs.push((sign(before + j as i64 - 1 + i as i64), z2(a, b)?));
            }
        }
        for i in 1..=p[0] {
            let a = vec![bar(i + 1)];
            let b = lead(bar(p[0] - i + 1), 0, &up[1..]);
            rhs.push((-sign(i as i64 - 1), z2(a, b)?));
        }
        for i in 1..=p[k - 1] {
            let a = vec![bar(i + 1)];
            let b = lead(bar(p[k - 1] - i + 1), 0, &rev[1..]);
            rhs.push((sign(total + k as i64 + i as i64 - 1), z2(a, b)?));
        }
    }
    let inst = IdentityInstance::numeric("COR-3.2", params, sum_of(lhs), sum_of(rhs));
    Ok(if k == 1 && p[0] == 0 { inst.note(K1_P0_NOTE) } else { inst })
}

fn cor32_grid() -> Vec<Params> {
    let mut out: Vec<Params> = (1..=5).map(|p| Params::new().with("p", &[p])).collect();
    for k in 2..=3 {
        let hi = if k == 2 { 3 } else { 2 };
        out.extend(tuples(k, 0, hi).into_iter().map(|p| Params::new().with("p", &p)));
    }
    out
}

/// Coefficients of `ζ*_n(s; x)` as a polynomial in `x`.
pub fn star_poly(n: u32, s: &[u32]) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); n as usize + 1];
    if s.is_empty() {
        c[n as usize] = Rational::one();
        return c;
    }
    let pw = |v: u32, e: u32| Rational::new(One::one(), num_traits::pow(num_bigint::BigInt::from(v), e as usize));
    let mut h: Vec<Rational> = (1..=n).map(|v| pw(v, s[0])).collect();
    for &e in &s[1..] {
        let mut acc = Rational::zero();
        for v in (1..=n).rev() {
            acc += &h[v as usize - 1];
            h[v as usize - 1] = &acc * pw(v, e);
        }
    }
    for v in 1..=n {
        c[v as usize] = h[v as usize - 1].clone();
    }
    c
}

fn lemma33(params: &Params) -> Result<IdentityInstance> {
    let p = params.natural("p", 1)?;
    let n = params.natural("n", 1)?;
    check(n <= 30, "n", "at most 30")?;
    let s = match params.get("s") {
        Some(_) => params.naturals("s", 1)?,
        None => Vec::new(),
    };
    let t = params.rational("t")?;
    check(t > Rational::zero() && t < Rational::one(), "t", "must lie in (0, 1)")?;
    let lhs = Expr::atom(Atom::PolyIntegral { p, poly: star_poly(n, &s), t: t.clone() });
    let w = Rational::one() / (Rational::one() - &t);
    let with_ones = |j: u32| -> Result<SignedIndex> {
        let mut v = s.clone();
        v.extend(vec![1; j as usize]);
        SignedIndex::positive(&v)
    };
    let mut rhs = Vec::new();
    for j in 1..=p {
        let c = sign(j as i64 - 1) * mhss_eval(n as u64, &with_ones(j - 1)?);
        rhs.push((c, log_power(&w, p - j + 1)));
    }
    let tail = parametric_star_eval(n as u64, &with_ones(p)?, &t);
    rhs.push((sign(p as i64) * tail, Expr::one()));
    Ok(IdentityInstance::numeric("LEMMA-3.3", params, lhs, sum_of(rhs)))
}

fn lemma33_grid() -> Vec<Params> {
    let mut out = Vec::new();
    let ss: [&[i64]; 3] = [&[], &[2], &[1, 2]];
    for p in 1..=3 {
        for n in [1, 3, 5] {
            for s in ss {
                for t in [rat(1, 2), rat(1, 3)] {
                    out.push(Params::new().with("p", &[p]).with("n", &[n]).with("s", s).with_rational("t", &[t]));
                }
            }
        }
    }
    out
}

fn thm34(params: &Params) -> Result<IdentityInstance> {
    let s = Shape::read(params, 1)?;
    let mut idx = lead(-1, s.mm(1) - 1, &s.fwd(1));
    idx[s.mm(1) as usize] *= -1;
    let lhs = Expr::scaled(sign(s.mm(1) as i64), mzv(&idx)?);
    let k: Vec<i64> = ones(s.mm(1));
    let rhs = ef_expansion(&s.p, &s.m, &k, &rat(1, 2))?;
    Ok(IdentityInstance::numeric("THM-3.4", params, lhs, rhs))
}

fn thm34_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for m in tuples(2, 1, 2) {
        for p1 in 0..=2 {
            out.push(Params::new().with("m", &m).with("p", &[p1]));
        }
    }
    for m in tuples(3, 1, 2) {
        for p in tuples(2, 0, 2) {
            out.push(Params::new().with("m", &m).with("p", &p));
        }
    }
    out
}

/// `k = (k_1, ..., k_r)`, `m = (m_2, ..., m_{k+1})`, `p = (p_1, ..., p_k)`.
fn thm51(params: &Params) -> Result<IdentityInstance> {
    let kl = params.naturals("k", 0)?;
    let m = params.naturals("m", 1)?;
    let p = params.naturals("p", 0)?;
    check(!kl.is_empty(), "k", "needs at least one entry")?;
    check(!p.is_empty(), "p", "needs at least one entry")?;
    check(m.len() == p.len(), "m", "lists m_2..m_{k+1}, one entry per p")?;
    let r = kl.len();
    let mut idx = vec![-1];
    for &kj in &kl[..r - 1] {
        idx.extend(signed_diamond(-1, kj, -1));
    }
    idx.extend(signed_diamond(-1, kl[r - 1], p[0] as i64 + 1));
    for j in 1..p.len() {
        idx.extend(ones(m[j - 1] - 1));
        idx.push(p[j] as i64 + 1);
    }
    idx.extend(ones(m[p.len() - 1] - 1));
    let lhs = Expr::scaled(sign(r as i64), mzv(&idx)?);
    let full_m: Vec<u32> = std::iter::once(1).chain(m.iter().copied()).collect();
    let kk: Vec<i64> = kl.iter().rev().map(|&v| v as i64 + 1).collect();
    let rhs = ef_expansion(&p, &full_m, &kk, &rat(1, 2))?;
    Ok(IdentityInstance::numeric("THM-5.1", params, lhs, rhs))
}

fn thm51_grid() -> Vec<Params> {
    let mut out = Vec::new();
    let ks: [&[i64]; 6] = [&[0], &[1], &[2], &[1, 0], &[0, 1], &[1, 1]];
    for k in ks {
        for m2 in 1..=2 {
            for p1 in 0..=2 {
                out.push(Params::new().with("k", k).with("m", &[m2]).with("p", &[p1]));
            }
        }
        for p in [[1, 0], [0, 1], [1, 2]] {
            out.push(Params::new().with("k", k).with("m", &[1, 1]).with("p", &p));
        }
    }
    out
}
