//! Kaneko–Yamamoto values at 1: the expansion through `^v` indices, its
//! inversion by chain sums, and closed-form special cases.

use num_traits::{One, Zero};

use super::{
    check, ef_expansion, ky, mzv, mzv_or_one, product, sign, sum_of, tuples, Family, IdentityInstance, Params,
};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::index::BoxChain;
use crate::rational::{rat, Rational};

pub fn families() -> Vec<Family> {
    vec![
        Family { id: "THM-5.2", about: "ζ(k^v, (p⊡m)^v) via KY values", generate: thm52, grid: thm52_grid },
        Family { id: "COR-5.3", about: "ζ(k^v, m^v) via KY values", generate: cor53, grid: cor53_grid },
        Family {
            id: "KY-COLLAPSE",
            about: "equal parameters collapse to ζ({m+1}_{r+k})",
            generate: collapse,
            grid: collapse_grid,
        },
        Family { id: "THM-5.5", about: "KY value as chain sums of MZVs", generate: thm55, grid: thm55_grid },
        Family {
            id: "KY-EXAMPLE",
            about: "ζ((3,2)⊛(0,2,2)⋆) in single zetas",
            generate: ky_example,
            grid: single_grid,
        },
        Family { id: "EQ-5.10-K1", about: "ζ((k2+1,k1+1)⊛(0,m1+1)⋆)", generate: eq510_k1, grid: eq510_k1_grid },
        Family {
            id: "EQ-5.10-K2", about: "ζ((k2+1,k1+1)⊛(0,m1+1,m2+1)⋆)", generate: eq510_k2, grid: eq510_k2_grid
        },
    ]
}

/// Upper-triangular table `A_{i,j}`, `1 ≤ i ≤ j ≤ n`, with unit diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularTable {
    n: usize,
    rows: Vec<Vec<Option<Rational>>>,
}

impl TriangularTable {
    /// Unit diagonal, every other entry missing.
    pub fn new(n: usize) -> Self {
        let rows = (1..=n).map(|i| (i..=n).map(|j| (i == j).then(Rational::one)).collect()).collect();
        TriangularTable { n, rows }
    }

    /// Fills every off-diagonal entry from `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut t = TriangularTable::new(n);
        for i in 1..=n {
            for j in i + 1..=n {
                t.rows[i - 1][j - i] = Some(f(i, j));
            }
        }
        t
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) -> Result<()> {
        if i == 0 || i > j || j > self.n {
            return Err(Error::MissingEntry(i, j));
        }
        if i == j && !v.is_one() {
            return Err(Error::BadDiagonal(i));
        }
        self.rows[i - 1][j - i] = Some(v);
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&Rational> {
        if i == 0 || i > j || j > self.n {
            return Err(Error::MissingEntry(i, j));
        }
        self.rows[i - 1][j - i].as_ref().ok_or(Error::MissingEntry(i, j))
    }
}

/// Chains `j = i_0 < i_1 < ... < i_l = p` with `l ≥ 1`.
pub fn chains(j: usize, p: usize) -> impl Iterator<Item = Vec<usize>> {
    let inner = p.saturating_sub(j + 1);
    let count = if j < p { 1u64 << inner } else { 0 };
    (0..count).map(move |mask| {
        let mut c = vec![j];
        c.extend((0..inner).filter(|b| mask >> b & 1 == 1).map(|b| j + 1 + b));
        c.push(p);
        c
    })
}

/// `Σ_j (-1)^{j+1} A_{j,p} B_j` for `p = 1..=len(b)`.
pub fn lemma54_forward(a: &TriangularTable, b: &[Rational]) -> Result<Vec<Rational>> {
    (1..=b.len())
        .map(|p| (1..=p).try_fold(Rational::zero(), |acc, j| Ok(acc + sign(j as i64 + 1) * a.get(j, p)? * &b[j - 1])))
        .collect()
}

/// Solves the forward relation with the closed chain-sum formula.
pub fn invert_lemma54(a: &TriangularTable, c: &[Rational]) -> Result<Vec<Rational>> {
    for i in 1..=a.size().min(c.len()) {
        if !a.get(i, i)?.is_one() {
            return Err(Error::BadDiagonal(i));
        }
    }
    (1..=c.len())
        .map(|p| {
            let mut total = c[p - 1].clone();
            for j in 1..p {
                let mut w = Rational::zero();
                for ch in chains(j, p) {
                    let mut prod = sign(ch.len() as i64 - 1);
                    for h in ch.windows(2) {
                        prod *= a.get(h[0], h[1])?;
                    }
                    w += prod;
                }
                total += &c[j - 1] * w;
            }
            Ok(sign(p as i64 + 1) * total)
        })
        .collect()
}

/// `k^v = (2 ⊡ {1}_{k_1-1} ⊡ ... ⊡ 2, {1}_{k_r-1})`; also `m^v` for a full list.
fn vee(k: &[u32]) -> Vec<i64> {
    let Some((&last, init)) = k.split_last() else { return Vec::new() };
    let c = init.iter().fold(BoxChain::start(2), |c, &kj| c.join(kj, 2));
    c.ones(last as usize - 1).into_entries().into_iter().map(i64::from).collect()
}

/// `(p ⊡ m)^v = ({p_1+1} ⊡ {1}_{m_1-1} ⊡ ... ⊡ {p_k+1}, {1}_{m_k-1})`.
fn vee_pm(p: &[u32], m: &[u32]) -> Vec<i64> {
    let k = p.len();
    let c = (1..k).fold(BoxChain::start(p[0] + 1), |c, j| c.join(m[j - 1], p[j] + 1));
    c.ones(m[k - 1] as usize - 1).into_entries().into_iter().map(i64::from).collect()
}

/// `(k_r+1, ..., k_1+1)`.
fn reversed_plus_one(k: &[u32]) -> Vec<i64> {
    k.iter().rev().map(|&v| i64::from(v) + 1).collect()
}

/// `(0, m_1+1, ..., m_j+1)`.
fn zero_head(m: &[u32]) -> Vec<u32> {
    std::iter::once(0).chain(m.iter().map(|&v| v + 1)).collect()
}

fn plus_one_rev(m: &[u32]) -> Vec<i64> {
    m.iter().rev().map(|&v| i64::from(v) + 1).collect()
}

/// `k_1..k_{r-1} ≥ 0`, `k_r ≥ 1`.
fn read_k(params: &Params) -> Result<Vec<u32>> {
    let k = params.naturals("k", 0)?;
    check(k.last().is_some_and(|&v| v >= 1), "k", "needs a positive last entry")?;
    Ok(k)
}

/// `m_1..m_{k-1} ≥ 0`, `m_k ≥ 1`.
fn read_m_tail_positive(params: &Params) -> Result<Vec<u32>> {
    let m = params.naturals("m", 0)?;
    check(m.last().is_some_and(|&v| v >= 1), "m", "needs a positive last entry")?;
    Ok(m)
}

fn thm52(params: &Params) -> Result<IdentityInstance> {
    let kl = read_k(params)?;
    let m = read_m_tail_positive(params)?;
    let p = params.naturals("p", 0)?;
    check(p.len() == m.len(), "p", "needs one entry per m")?;
    let mut idx = vee(&kl);
    idx.extend(vee_pm(&p, &m));
    let lhs = mzv(&idx)?;
    let shifted: Vec<u32> = std::iter::once(0).chain(m.iter().copied()).collect();
    let rhs = ef_expansion(&p, &shifted, &reversed_plus_one(&kl), &Rational::one())?;
    Ok(IdentityInstance::numeric("THM-5.2", params, lhs, rhs))
}

const K_LISTS: [&[i64]; 5] = [&[1], &[2], &[0, 1], &[1, 1], &[1, 2]];

fn thm52_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for k in K_LISTS {
        for p in 0..=2 {
            for m in 1..=2 {
                out.push(Params::new().with("k", k).with("p", &[p]).with("m", &[m]));
            }
        }
        for p in [[1, 1], [0, 1], [2, 0], [1, 2]] {
            for m in [[1, 1], [0, 1], [2, 1]] {
                out.push(Params::new().with("k", k).with("p", &p).with("m", &m));
            }
        }
    }
    out
}

fn cor53(params: &Params) -> Result<IdentityInstance> {
    let kl = read_k(params)?;
    let m = read_m_tail_positive(params)?;
    let k = m.len();
    let kk = reversed_plus_one(&kl);
    let mut idx = vee(&kl);
    idx.extend(vee(&m));
    let lhs = mzv(&idx)?;
    let mut terms = Vec::new();
    for i in 1..=k {
        let z = mzv(&plus_one_rev(&m[i - 1..]))?;
        terms.push((sign(i as i64 - 1), product(z, ky(&kk, &zero_head(&m[..i - 1]), Rational::one())?)));
    }
    terms.push((sign(k as i64), ky(&kk, &zero_head(&m), Rational::one())?));
    Ok(IdentityInstance::numeric("COR-5.3", params, lhs, sum_of(terms)))
}

fn cor53_grid() -> Vec<Params> {
    let ms: [&[i64]; 6] = [&[1], &[2], &[0, 1], &[1, 1], &[1, 2], &[2, 1]];
    K_LISTS[..4].iter().flat_map(|k| ms.iter().map(move |m| Params::new().with("k", k).with("m", m))).collect()
}

fn collapse(params: &Params) -> Result<IdentityInstance> {
    let m = params.natural("m", 1)?;
    let r = params.natural("r", 1)?;
    let k = params.natural("k", 1)?;
    let big = vec![i64::from(m) + 1; r as usize];
    let mut terms = Vec::new();
    for i in 1..=k + 1 {
        let z = mzv_or_one(&vec![i64::from(m) + 1; (k + 1 - i) as usize])?;
        let l: Vec<u32> = std::iter::once(0).chain(std::iter::repeat_n(m + 1, i as usize - 1)).collect();
        terms.push((sign(i64::from(i) - 1), product(z, ky(&big, &l, Rational::one())?)));
    }
    let rhs = mzv(&vec![i64::from(m) + 1; (r + k) as usize])?;
    Ok(IdentityInstance::numeric("KY-COLLAPSE", params, sum_of(terms), rhs))
}

fn collapse_grid() -> Vec<Params> {
    tuples(3, 1, 2)
        .into_iter()
        .map(|v| Params::new().with("m", &[v[0]]).with("r", &[v[1]]).with("k", &[v[2]]))
        .collect()
}

/// `k = (k_1..k_r)`, `m = (m_1..m_k)` all positive except `k_1..k_{r-1} ≥ 0`.
fn thm55(params: &Params) -> Result<IdentityInstance> {
    let kl = read_k(params)?;
    let m = params.naturals("m", 1)?;
    check(!m.is_empty(), "m", "needs at least one entry")?;
    let k = m.len();
    let lhs = ky(&reversed_plus_one(&kl), &zero_head(&m), Rational::one())?;
    // A_{a,b} = ζ(m_{b-1}+1, ..., m_a+1).
    let a = |x: usize, y: usize| mzv(&plus_one_rev(&m[x - 1..y - 1]));
    let kv = vee(&kl);
    let mut terms = Vec::new();
    for j in 1..=k + 1 {
        let mut idx = kv.clone();
        idx.extend(vee(&m[..j - 1]));
        let c = mzv(&idx)?;
        if j == k + 1 {
            terms.push((sign(k as i64), c));
            continue;
        }
        for ch in chains(j, k + 1) {
            let mut factors = vec![c.clone()];
            for h in ch.windows(2) {
                factors.push(a(h[0], h[1])?);
            }
            terms.push((sign(k as i64 + ch.len() as i64 - 1), Expr::product(factors)));
        }
    }
    Ok(IdentityInstance::numeric("THM-5.5", params, lhs, sum_of(terms)))
}

fn thm55_grid() -> Vec<Params> {
    let ms: [&[i64]; 6] = [&[1], &[2], &[1, 1], &[1, 2], &[2, 1], &[1, 1, 1]];
    K_LISTS.iter().flat_map(|k| ms.iter().map(move |m| Params::new().with("k", k).with("m", m))).collect()
}

/// `455/16 ζ(9) − 441/16 ζ(2)ζ(7) + 147/16 ζ(3)ζ(6) + 45/8 ζ(4)ζ(5)`.
pub fn ky_example_closed_form() -> Expr {
    use super::zeta;
    Expr::sum(vec![
        (rat(455, 16), zeta(9)),
        (rat(-441, 16), product(zeta(2), zeta(7))),
        (rat(147, 16), product(zeta(3), zeta(6))),
        (rat(45, 8), product(zeta(4), zeta(5))),
    ])
}

fn ky_example(params: &Params) -> Result<IdentityInstance> {
    let lhs = ky(&[3, 2], &[0, 2, 2], Rational::one())?;
    Ok(IdentityInstance::numeric("KY-EXAMPLE", params, lhs, ky_example_closed_form()))
}

fn single_grid() -> Vec<Params> {
    vec![Params::new()]
}

/// `(2 ⊡ {1}_{k_1-1} ⊡ 2, {1}_{k_2-1})`.
fn pair_vee(k1: u32, k2: u32) -> Vec<i64> {
    vee(&[k1, k2])
}

fn read_pair(params: &Params) -> Result<(u32, u32)> {
    let k = read_k(params)?;
    check(k.len() == 2, "k", "expects k1:k2")?;
    Ok((k[0], k[1]))
}

fn eq510_k1(params: &Params) -> Result<IdentityInstance> {
    let (k1, k2) = read_pair(params)?;
    let m1 = params.natural("m", 1)?;
    let kk = reversed_plus_one(&[k1, k2]);
    let lhs = ky(&kk, &[0, m1 + 1], Rational::one())?;
    let mut tail = pair_vee(k1, k2);
    tail.extend(vee(&[m1]));
    let rhs = sum_of(vec![
        (Rational::one(), product(mzv(&[i64::from(m1) + 1])?, mzv(&kk)?)),
        (-Rational::one(), mzv(&tail)?),
    ]);
    Ok(IdentityInstance::numeric("EQ-5.10-K1", params, lhs, rhs))
}

fn eq510_k2(params: &Params) -> Result<IdentityInstance> {
    let (k1, k2) = read_pair(params)?;
    let m = params.naturals("m", 1)?;
    check(m.len() == 2, "m", "expects m1:m2")?;
    let (m1, m2) = (i64::from(m[0]), i64::from(m[1]));
    let kk = reversed_plus_one(&[k1, k2]);
    let lhs = ky(&kk, &[0, m[0] + 1, m[1] + 1], Rational::one())?;
    let mut full = pair_vee(k1, k2);
    full.extend(vee(&m));
    let mut short = pair_vee(k1, k2);
    short.extend(vee(&m[..1]));
    let one = Rational::one();
    let rhs = sum_of(vec![
        (one.clone(), mzv(&full)?),
        (one.clone(), Expr::product(vec![mzv(&[m2 + 1])?, mzv(&[m1 + 1])?, mzv(&kk)?])),
        (-one.clone(), product(mzv(&[m2 + 1, m1 + 1])?, mzv(&kk)?)),
        (-one, product(mzv(&[m2 + 1])?, mzv(&short)?)),
    ]);
    Ok(IdentityInstance::numeric("EQ-5.10-K2", params, lhs, rhs))
}

fn eq510_k1_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for k1 in 0..=2 {
        for k2 in 1..=2 {
            for m1 in 1..=2 {
                out.push(Params::new().with("k", &[k1, k2]).with("m", &[m1]));
            }
        }
    }
    out
}

fn eq510_k2_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for k1 in 0..=1 {
        for k2 in 1..=2 {
            for m in tuples(2, 1, 2) {
                out.push(Params::new().with("k", &[k1, k2]).with("m", &m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{residual, Evaluator};
    use crate::identities::generate;
    use crate::identities::tests_support::assert_holds;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_table(rng: &mut ChaCha8Rng, n: usize) -> TriangularTable {
        TriangularTable::from_fn(n, |_, _| rat(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
    }

    #[test]
    fn chain_counts() {
        assert_eq!(chains(1, 1).count(), 0);
        assert_eq!(chains(1, 2).collect::<Vec<_>>(), vec![vec![1, 2]]);
        assert_eq!(chains(1, 4).count(), 4);
        assert!(chains(2, 5).all(|c| c[0] == 2 && *c.last().unwrap() == 5 && c.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn inversion_small_cases() {
        let mut a = TriangularTable::new(2);
        a.set(1, 2, rat(3, 5)).unwrap();
        let c = vec![rat(2, 1), rat(-1, 3)];
        let b = invert_lemma54(&a, &c).unwrap();
        assert_eq!(b[0], c[0]);
        assert_eq!(b[1], -c[1].clone() + &c[0] * rat(3, 5));
    }

    #[test]
    fn inversion_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        for n in 1..=8 {
            let a = random_table(&mut rng, n);
            let c: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=5))).collect();
            let b = invert_lemma54(&a, &c).unwrap();
            assert_eq!(lemma54_forward(&a, &b).unwrap(), c);
        }
    }

    #[test]
    fn missing_entries_and_bad_diagonal() {
        let a = TriangularTable::new(3);
        assert_eq!(invert_lemma54(&a, &[rat(1, 1), rat(1, 1)]), Err(Error::MissingEntry(1, 2)));
        let mut a = TriangularTable::new(2);
        assert_eq!(a.set(2, 2, rat(2, 1)), Err(Error::BadDiagonal(2)));
        assert!(a.set(2, 1, rat(1, 1)).is_err());
    }

    #[test]
    fn vee_indices() {
        assert_eq!(vee(&[1, 2]), vec![2, 2, 1]);
        assert_eq!(vee(&[0, 1]), vec![3]);
        assert_eq!(vee(&[3]), vec![2, 1, 1]);
        assert_eq!(vee_pm(&[1, 0], &[2, 1]), vec![2, 1, 1]);
        assert_eq!(vee_pm(&[1, 2], &[0, 1]), vec![4]);
    }

    #[test]
    fn thm55_reproduces_the_closed_form() {
        let inst = generate("THM-5.5", &Params::parse("k=1:2,m=1:1").unwrap()).unwrap();
        let ev = Evaluator::with_prec(128);
        let (d, b) = residual(&ev.expr(&inst.rhs).unwrap(), &ev.expr(&ky_example_closed_form()).unwrap());
        assert!(d < 1e-30 && b < 1e-30, "{d} {b}");
    }

    #[test]
    fn collapse_left_side_is_dual() {
        // ζ({2,{1}_{m-1}}_n) = ζ({m+1}_n).
        let ev = Evaluator::with_prec(128);
        for (m, n) in [(1, 3), (2, 2), (3, 1)] {
            let block: Vec<i64> = std::iter::once(2).chain(std::iter::repeat_n(1, m - 1)).collect();
            let a = mzv(&block.repeat(n)).unwrap();
            let b = mzv(&vec![m as i64 + 1; n]).unwrap();
            let (d, _) = residual(&ev.expr(&a).unwrap(), &ev.expr(&b).unwrap());
            assert!(d < 1e-30, "({m},{n}) {d}");
        }
    }

    #[test]
    fn small_instances_hold() {
        for (id, p) in [
            ("THM-5.2", "k=1:1,p=1:2,m=0:1"),
            ("COR-5.3", "k=2,m=1:2"),
            ("KY-COLLAPSE", "m=2,r=2,k=1"),
            ("THM-5.5", "k=0:1,m=2:1"),
            ("KY-EXAMPLE", ""),
            ("EQ-5.10-K1", "k=1:2,m=1"),
            ("EQ-5.10-K2", "k=0:1,m=2:1"),
        ] {
            assert_holds(id, p);
        }
    }
}
