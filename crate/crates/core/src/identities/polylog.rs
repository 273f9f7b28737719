//! Multiple polylogarithm relations: the substitution and reflection
//! formulas, their values at ½, and the reversal relation.

use num_traits::{One, Zero};

use super::{check, li, li_single, log_power, mzv, product, sign, sum_of, tuples, Family, IdentityInstance, Params};
use crate::error::Result;
use crate::expr::{Atom, Expr};
use crate::index::diamond_join;
use crate::rational::{int, rat, Rational};
use crate::word::{Letter, Word};

pub fn families() -> Vec<Family> {
    vec![
        Family { id: "THM-2.2", about: "Li(a) with 2's as unit-exponent Li", generate: thm22, grid: thm22_grid },
        Family { id: "THM-2.3", about: "multi-argument Li under t -> 1-t", generate: thm23, grid: thm23_grid },
        Family { id: "EQ-B4", about: "Li at ½ as unit-exponent alternating MZVs", generate: eqb4, grid: b4_grid },
        Family { id: "THM-2.4", about: "reversal relation for multi-argument Li", generate: thm24, grid: thm24_grid },
        Family { id: "LEMMA-2.6", about: "reversal of iterated integrals", generate: lemma26, grid: lemma26_grid },
    ]
}

pub(crate) struct Shape {
    pub(crate) m: Vec<u32>,
    pub(crate) p: Vec<u32>,
}

impl Shape {
    /// `m_1 ≥ min_m1`, `m_j ≥ 1` for `j ≥ 2`, `p_i ≥ 0`, `k = len(p) ≥ 1`.
    pub(crate) fn read(params: &Params, min_m1: u32) -> Result<Shape> {
        let m = params.naturals("m", 0)?;
        let p = params.naturals("p", 0)?;
        check(!p.is_empty(), "p", "needs at least one entry")?;
        check(m.len() == p.len() + 1, "m", "needs one more entry than p")?;
        check(m[0] >= min_m1, "m", &format!("m_1 must be at least {min_m1}"))?;
        check(m[1..].iter().all(|&x| x >= 1), "m", "m_j must be positive for j ≥ 2")?;
        Ok(Shape { m, p })
    }

    pub(crate) fn k(&self) -> usize {
        self.p.len()
    }

    pub(crate) fn mm(&self, j: usize) -> u32 {
        self.m[j - 1]
    }

    pub(crate) fn pp(&self, j: usize) -> u32 {
        self.p[j - 1]
    }

    pub(crate) fn total_m(&self) -> u32 {
        self.m.iter().sum()
    }

    /// `|p|_j`.
    pub(crate) fn p_upto(&self, j: usize) -> u32 {
        self.p[..j].iter().sum()
    }

    /// `|m|_j`.
    pub(crate) fn m_upto(&self, j: usize) -> u32 {
        self.m[..j].iter().sum()
    }

    /// `({1}_{m_1}, p_1+1, {1}_{m_2-1}, ..., p_k+1, {1}_{m_{k+1}-1})`.
    pub(crate) fn exponents(&self) -> Vec<u32> {
        let mut v = vec![1; self.m[0] as usize];
        for j in 1..=self.k() {
            v.push(self.pp(j) + 1);
            v.extend(vec![1; self.mm(j + 1) as usize - 1]);
        }
        v
    }

    /// `(p_j+1, {1}_{m_{j+1}-1}, ..., p_k+1, {1}_{m_{k+1}-1})`.
    pub(crate) fn fwd(&self, j: usize) -> Vec<u32> {
        let mut v = Vec::new();
        for l in j..=self.k() {
            v.push(self.pp(l) + 1);
            v.extend(vec![1; self.mm(l + 1) as usize - 1]);
        }
        v
    }

    /// `(p_j+1, {1}_{m_j-1}, ..., p_1+1, {1}_{m_1-1})`.
    pub(crate) fn bwd(&self, j: usize) -> Vec<u32> {
        let mut v = Vec::new();
        for l in (1..=j).rev() {
            v.push(self.pp(l) + 1);
            v.extend(vec![1; self.mm(l) as usize - 1]);
        }
        v
    }
}

fn ones_r(n: u32) -> Vec<Rational> {
    vec![Rational::one(); n as usize]
}

fn unit_li(args: Vec<Rational>) -> Result<Expr> {
    li(vec![1; args.len()], args)
}

fn check_arg(a: &Rational, key: &str, hi: Rational, hi_open: bool) -> Result<()> {
    let ok = *a >= int(-1) && !a.is_zero() && if hi_open { *a < hi } else { *a <= hi };
    check(ok, key, &format!("{a} outside the allowed range"))
}

fn thm22(params: &Params) -> Result<IdentityInstance> {
    let s = Shape::read(params, 0)?;
    let a = params.rational("a")?;
    check_arg(&a, "a", int(1), true)?;
    let k = s.k();
    let lhs = li_single(s.exponents(), &a)?;
    let total_p = s.p_upto(k) as usize;
    let mut terms = Vec::new();
    for mask in 0..1u64 << total_p {
        let sigma: Vec<Rational> =
            (0..total_p).map(|j| if mask >> j & 1 == 1 { a.clone() } else { Rational::one() }).collect();
        let count = mask.count_ones() as i64;
        let mut args = vec![a.clone()];
        args.extend(ones_r(s.mm(k + 1) - 1));
        let mut off = 0;
        for i in 1..=k {
            let pi = s.pp(k + 1 - i) as usize;
            if pi == 0 {
                args.push(Rational::one());
            } else {
                let blk = &sigma[off..off + pi];
                args.push(&blk[0] / &a);
                for w in blk.windows(2) {
                    args.push(&w[1] / &w[0]);
                }
                args.push(&a / &blk[pi - 1]);
            }
            off += pi;
            let mi = s.mm(k + 1 - i);
            if mi == 0 {
                args.pop();
            } else {
                args.extend(ones_r(mi - 1));
            }
        }
        if args.is_empty() {
            continue;
        }
        terms.push((sign(count), unit_li(args)?));
    }
    Ok(IdentityInstance::numeric("THM-2.2", params, lhs, sum_of(terms)))
}

fn thm22_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for a in [rat(-1, 1), rat(1, 3)] {
        for t in tuples(3, 0, 2) {
            if t[1] == 0 {
                continue;
            }
            for m1 in 0..=2 {
                if t[2] > 2 || m1 > 1 && t[1] > 1 {
                    continue;
                }
                out.push(
                    Params::new()
                        .with("m", &[m1, t[1]])
                        .with("p", &[t[2]])
                        .with_rational("a", std::slice::from_ref(&a)),
                );
            }
        }
    }
    for (m, p) in [([0, 1, 1], [1, 1]), ([1, 1, 1], [0, 2]), ([1, 2, 1], [2, 0]), ([0, 1, 2], [1, 0])] {
        out.push(Params::new().with("m", &m).with("p", &p).with_rational("a", &[rat(-1, 2)]));
    }
    out.sort();
    out.dedup();
    out
}

fn a_list(params: &Params, len: usize, hi: Rational) -> Result<Vec<Rational>> {
    let a = params.rationals("a")?.to_vec();
    check(a.len() == len, "a", &format!("expected {len} entries"))?;
    for x in &a {
        check_arg(x, "a", hi.clone(), false)?;
    }
    Ok(a)
}

fn thm23(params: &Params) -> Result<IdentityInstance> {
    let s = Shape::read(params, 0)?;
    let k = s.k();
    let a = a_list(params, k + 1, rat(1, 2))?;
    let at = |j: usize| a[j - 1].clone();
    let one = Rational::one();

    let mut largs = diamond_join(at(1), s.mm(1), at(2) / at(1));
    largs.extend(ones_r(s.mm(2) - 1));
    for i in 2..=k {
        largs.push(at(i + 1) / at(i));
        largs.extend(ones_r(s.mm(i + 1) - 1));
    }
    let lhs = li(s.exponents(), largs)?;

    let mut rargs = vec![at(k + 1) / (at(k + 1) - &one)];
    for i in 1..=k {
        rargs.extend(ones_r(s.mm(k + 2 - i) - 1));
        let hi = at(k + 2 - i);
        let lo = at(k + 1 - i);
        rargs.extend(diamond_join((&hi - &one) / &hi, s.pp(k + 1 - i), &lo / (&lo - &one)));
    }
    if s.mm(1) == 0 {
        rargs.pop();
    } else {
        rargs.extend(ones_r(s.mm(1) - 1));
    }
    let rhs = Expr::scaled(sign(s.total_m() as i64), unit_li(rargs)?);
    Ok(IdentityInstance::numeric("THM-2.3", params, lhs, rhs))
}

fn thm23_grid() -> Vec<Params> {
    let mut out = Vec::new();
    let pairs = [[rat(-1, 2), rat(1, 3)], [rat(1, 2), rat(-1, 1)], [rat(1, 4), rat(1, 2)]];
    for a in &pairs {
        for (m, p) in [([0, 1], 0), ([0, 1], 1), ([0, 2], 2), ([1, 1], 0), ([1, 1], 1), ([1, 2], 2), ([2, 1], 1)] {
            out.push(Params::new().with("m", &m).with("p", &[p]).with_rational("a", a));
        }
    }
    for (m, p) in [([0, 1, 1], [1, 1]), ([1, 1, 1], [0, 2]), ([1, 2, 1], [1, 0])] {
        out.push(Params::new().with("m", &m).with("p", &p).with_rational("a", &[rat(1, 3), rat(-1, 2), rat(1, 2)]));
    }
    out
}

fn eqb4(params: &Params) -> Result<IdentityInstance> {
    let s = Shape::read(params, 0)?;
    let k = s.k();
    let lhs = li_single(s.exponents(), &rat(1, 2))?;
    let mut v = vec![-1];
    v.extend(vec![1; s.mm(k + 1) as usize - 1]);
    for i in 1..=k {
        if i > 1 {
            v.extend(vec![1; s.mm(k + 2 - i) as usize - 1]);
        }
        v.extend(diamond_join(-1i64, s.pp(k + 1 - i), -1));
    }
    if s.mm(1) == 0 {
        v.pop();
    } else {
        v.extend(vec![1; s.mm(1) as usize - 1]);
    }
    let rhs = Expr::scaled(sign(s.total_m() as i64), mzv(&v)?);
    Ok(IdentityInstance::numeric("EQ-B4", params, lhs, rhs))
}

fn b4_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for t in tuples(3, 0, 2) {
        if t[1] >= 1 {
            out.push(Params::new().with("m", &t[..2]).with("p", &t[2..]));
        }
    }
    for (m, p) in [([0, 1, 1], [1, 1]), ([1, 1, 2], [0, 1]), ([2, 1, 1], [1, 0])] {
        out.push(Params::new().with("m", &m).with("p", &p));
    }
    out
}

/// Arguments and exponents for the reversal relation.
struct Reversal<'a> {
    s: &'a Shape,
    a: &'a [Rational],
}

impl Reversal<'_> {
    fn a(&self, j: usize) -> Rational {
        self.a[j - 1].clone()
    }

    fn mm(&self, j: usize) -> u32 {
        self.s.mm(j)
    }

    /// `(a_{j-l}/a_{j+1-l}, {1}_{m_{j-l}-1})` for `l = 1..j-1`.
    fn down_tail(&self, j: usize) -> Vec<Rational> {
        let mut v = Vec::new();
        for l in 1..j {
            v.push(self.a(j - l) / self.a(j + 1 - l));
            v.extend(ones_r(self.mm(j - l) - 1));
        }
        v
    }

    /// `(a_{l+2}/a_{l+1}, {1}_{m_{l+2}-1})` for `l = j..k-1`.
    fn up_tail(&self, j: usize) -> Vec<Rational> {
        let mut v = Vec::new();
        for l in j..self.s.k() {
            v.push(self.a(l + 2) / self.a(l + 1));
            v.extend(ones_r(self.mm(l + 2) - 1));
        }
        v
    }

    fn big_a(&self, i: u32) -> Vec<Rational> {
        let mut v = diamond_join(self.a(1), self.mm(1) - i, self.a(2) / self.a(1));
        v.extend(ones_r(self.mm(2) - 1));
        v.extend(self.up_tail(1));
        v
    }

    fn big_b(&self, i: u32) -> Vec<Rational> {
        let k = self.s.k();
        let mut v = diamond_join(self.a(k + 1), self.mm(k + 1) - i, self.a(k) / self.a(k + 1));
        v.extend(ones_r(self.mm(k) - 1));
        v.extend(self.down_tail(k));
        v
    }

    fn c(&self, j: usize) -> Vec<Rational> {
        let mut v = vec![self.a(j)];
        v.extend(ones_r(self.mm(j) - 1));
        v.extend(self.down_tail(j));
        v
    }

    fn d(&self, j: usize) -> Vec<Rational> {
        let mut v = vec![self.a(j + 1)];
        v.extend(ones_r(self.mm(j + 1) - 1));
        v.extend(self.up_tail(j));
        v
    }

    fn c_prime(&self, j: usize, i: u32) -> Vec<Rational> {
        let mut v = vec![self.a(j)];
        v.extend(ones_r(i - 1));
        v.extend(self.down_tail(j));
        v
    }

    fn d_prime(&self, j: usize, i: u32) -> Vec<Rational> {
        let mut v = vec![self.a(j + 1)];
        v.extend(ones_r(self.mm(j + 1) - i - 1));
        v.extend(self.up_tail(j));
        v
    }
}

fn head(first: u32, ones: u32, rest: Vec<u32>) -> Vec<u32> {
    let mut v = vec![first];
    v.extend(vec![1; ones as usize]);
    v.extend(rest);
    v
}

fn unit_then(n: u32, rest: Vec<u32>) -> Vec<u32> {
    let mut v = vec![1; n as usize];
    v.extend(rest);
    v
}

const K1_P0_NOTE: &str = "with k = 1 and p_1 = 0 the displayed right side lacks the boundary product \
(-1)^{m_1} Li_{{1}_{m_1}}(a_1) Li_{{1}_{m_2}}(a_2); this instance is expected to fail by exactly that term";

/// The boundary product missing from the `k = 1`, `p_1 = 0` display.
pub fn thm24_k1_p0_gap(m1: u32, m2: u32, a1: &Rational, a2: &Rational) -> Result<Expr> {
    let x = li_single(vec![1; m1 as usize], a1)?;
    let y = li_single(vec![1; m2 as usize], a2)?;
    Ok(Expr::scaled(sign(m1 as i64), product(x, y)))
}

fn thm24(params: &Params) -> Result<IdentityInstance> {
    let s = Shape::read(params, 1)?;
    let k = s.k();
    let a = a_list(params, k + 1, rat(1, 2))?;
    let r = Reversal { s: &s, a: &a };
    let one = Rational::one();
    let l1 = &one - r.a(1);
    let lk = &one - r.a(k + 1);

    let mut lhs = Vec::new();
    for i in 0..=s.mm(1) {
        lhs.push((int(1), product(log_power(&l1, i), li(unit_then(s.mm(1) - i, s.fwd(1)), r.big_a(i))?)));
    }
    let sb = sign((s.p_upto(k) + s.m_upto(k + 1)) as i64);
    for i in 0..=s.mm(k + 1) {
        lhs.push((sb.clone(), product(log_power(&lk, i), li(unit_then(s.mm(k + 1) - i, s.bwd(k)), r.big_b(i))?)));
    }

    let mut rhs = Vec::new();
    if k == 1 {
        let (p1, m1, m2) = (s.pp(1), s.mm(1), s.mm(2));
        for i in 1..p1 {
            let x = li(head(i + 1, m1 - 1, vec![]), r.c(1))?;
            let y = li(head(p1 - i + 1, m2 - 1, vec![]), r.d(1))?;
            rhs.push((sign(m1 as i64 + i as i64 - 1), product(x, y)));
        }
    } else {
        for j in 2..k {
            let sj = sign((s.p_upto(j - 1) + s.m_upto(j)) as i64 - 1);
            for i in 0..=s.pp(j) {
                let x = li(head(i + 1, s.mm(j) - 1, s.bwd(j - 1)), r.c(j))?;
                let y = li(head(s.pp(j) - i + 1, s.mm(j + 1) - 1, s.fwd(j + 1)), r.d(j))?;
                rhs.push((&sj * sign(i as i64), product(x, y)));
            }
        }
        for j in 1..k {
            let sj = sign((s.p_upto(j) + s.m_upto(j)) as i64);
            for i in 1..s.mm(j + 1) {
                let x = li(unit_then(i, s.bwd(j)), r.c_prime(j + 1, i))?;
                let y = li(unit_then(s.mm(j + 1) - i, s.fwd(j + 1)), r.d_prime(j, i))?;
                rhs.push((&sj * sign(i as i64 - 1), product(x, y)));
            }
        }
        let m1 = s.mm(1);
        for i in 1..=s.pp(1) {
            let x = li(head(i + 1, m1 - 1, vec![]), r.c(1))?;
            let y = li(head(s.pp(1) - i + 1, s.mm(2) - 1, s.fwd(2)), r.d(1))?;
            rhs.push((sign(m1 as i64 + i as i64 - 1), product(x, y)));
        }
        let sk = sign((s.p_upto(k) + s.m_upto(k)) as i64);
        for i in 1..=s.pp(k) {
            let x = li(head(s.pp(k) - i + 1, s.mm(k) - 1, s.bwd(k - 1)), r.c(k))?;
            let y = li(head(i + 1, s.mm(k + 1) - 1, vec![]), r.d(k))?;
            rhs.push((&sk * sign(i as i64 - 1), product(x, y)));
        }
    }
    let inst = IdentityInstance::numeric("THM-2.4", params, sum_of(lhs), sum_of(rhs));
    Ok(if k == 1 && s.pp(1) == 0 { inst.note(K1_P0_NOTE) } else { inst })
}

fn thm24_grid() -> Vec<Params> {
    let mut out = Vec::new();
    let pairs = [[rat(-1, 1), rat(-1, 1)], [rat(-1, 2), rat(1, 3)], [rat(1, 2), rat(1, 2)]];
    for a in &pairs {
        for (m, p) in [([1, 1], 1), ([1, 1], 2), ([1, 2], 2), ([2, 1], 3), ([2, 2], 1)] {
            out.push(Params::new().with("m", &m).with("p", &[p]).with_rational("a", a));
        }
    }
    let triple = [rat(-1, 2), rat(1, 3), rat(-1, 1)];
    for (m, p) in [([1, 1, 1], [1, 1]), ([1, 2, 1], [0, 1]), ([2, 1, 1], [1, 2]), ([1, 1, 2], [2, 0])] {
        out.push(Params::new().with("m", &m).with("p", &p).with_rational("a", &triple));
    }
    let quad = [rat(1, 3), rat(-1, 1), rat(1, 2), rat(-1, 3)];
    out.push(Params::new().with("m", &[1, 1, 1, 1]).with("p", &[1, 1, 1]).with_rational("a", &quad));
    out.push(Params::new().with("m", &[1, 2, 1, 1]).with("p", &[0, 2, 1]).with_rational("a", &quad));
    out
}

fn word_atom(letters: &[Letter]) -> Expr {
    Expr::atom(Atom::Word(Word::new(letters.to_vec())))
}

fn lemma26(params: &Params) -> Result<IdentityInstance> {
    let w = params.rationals("w")?;
    check(w.len() >= 2, "w", "needs at least two letters")?;
    check(!w[0].is_zero() && !w[w.len() - 1].is_zero(), "w", "first and last letters must not be dt/t")?;
    for x in w {
        check(x.is_zero() || (*x >= int(-1) && *x < int(1)), "w", "letters must be 0 or in [-1, 1)")?;
    }
    let f: Vec<Letter> = w.iter().map(|x| if x.is_zero() { Letter::Omega0 } else { Letter::w(x.clone()) }).collect();
    let m = f.len();
    let rev: Vec<Letter> = f.iter().rev().cloned().collect();
    let lhs = sum_of(vec![(int(1), word_atom(&f)), (sign(m as i64), word_atom(&rev))]);
    let mut rhs = Vec::new();
    for i in 1..m {
        let left: Vec<Letter> = f[..i].iter().rev().cloned().collect();
        rhs.push((sign(i as i64 - 1), product(word_atom(&left), word_atom(&f[i..]))));
    }
    Ok(IdentityInstance::numeric("LEMMA-2.6", params, lhs, sum_of(rhs)))
}

fn lemma26_grid() -> Vec<Params> {
    let words: [&[Rational]; 8] = [
        &[rat(-1, 1), rat(1, 2)],
        &[rat(1, 2), rat(0, 1), rat(-1, 1)],
        &[rat(-1, 1), rat(0, 1), rat(0, 1), rat(-1, 1)],
        &[rat(1, 3), rat(-1, 2), rat(1, 2)],
        &[rat(-1, 1), rat(1, 2), rat(0, 1), rat(-1, 3)],
        &[rat(1, 2), rat(0, 1), rat(-1, 1), rat(0, 1), rat(1, 2)],
        &[rat(-1, 1), rat(-1, 1), rat(-1, 1)],
        &[rat(1, 4), rat(0, 1), rat(1, 2), rat(-1, 2), rat(-1, 1)],
    ];
    words.iter().map(|w| Params::new().with_rational("w", w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::structurally_equal;
    use crate::identities::tests_support::assert_holds;

    #[test]
    fn thm22_reproduces_bbb_at_minus_one() {
        for (m, n) in [(0, 0), (1, 0), (0, 2), (2, 1)] {
            let t = thm22(&Params::new().with("m", &[m + 1, n + 1]).with("p", &[1]).with_rational("a", &[int(-1)]))
                .unwrap();
            let b = super::super::generate("BBB-4.1", &Params::new().with("m", &[m]).with("n", &[n])).unwrap();
            assert!(structurally_equal(&t.lhs.clone().sub(t.rhs.clone()), &b.lhs.clone().sub(b.rhs.clone())).unwrap());
        }
    }

    #[test]
    fn thm22_p_zero_has_one_term() {
        let t = thm22(&Params::new().with("m", &[1, 2]).with("p", &[0]).with_rational("a", &[rat(1, 3)])).unwrap();
        assert_eq!(t.rhs.atoms().len(), 1);
    }

    #[test]
    fn b4_matches_thm23_at_half() {
        let p = Params::new().with("m", &[1, 2]).with("p", &[2]);
        let b = eqb4(&p).unwrap();
        let t = thm23(&p.clone().with_rational("a", &[rat(1, 2), rat(1, 2)])).unwrap();
        assert!(structurally_equal(&b.rhs, &t.rhs).unwrap());
    }

    #[test]
    fn k1_display_at_p_zero_misses_one_product() {
        let ev = crate::eval::Evaluator::with_prec(128);
        for (m1, m2) in [(1, 1), (1, 2), (2, 1), (3, 2)] {
            let a = [rat(-1, 2), rat(1, 3)];
            let p = Params::new().with("m", &[m1 as i64, m2 as i64]).with("p", &[0]).with_rational("a", &a);
            let t = thm24(&p).unwrap();
            assert!(!t.notes.is_empty());
            let gap = thm24_k1_p0_gap(m1, m2, &a[0], &a[1]).unwrap();
            let off = ev.expr(&t.lhs.clone().sub(t.rhs.clone())).unwrap();
            let want = ev.expr(&gap).unwrap();
            let (d, b) = crate::eval::residual(&off, &want);
            assert!(d < 1e-30 && b < 1e-30, "{m1},{m2}: {d:e}");
            assert!(want.abs_f64() > 1e-6);
        }
    }

    #[test]
    fn small_instances_hold() {
        for (id, params) in [
            ("THM-2.2", "m=1:1,p=1,a=-1/2"),
            ("THM-2.2", "m=0:2,p=2,a=1/3"),
            ("THM-2.3", "m=1:1,p=1,a=-1/2:1/3"),
            ("THM-2.3", "m=0:2,p=1,a=1/2:-1"),
            ("EQ-B4", "m=0:1,p=2"),
            ("EQ-B4", "m=2:1:1,p=1:0"),
            ("THM-2.4", "m=1:1,p=2,a=-1:-1"),
            ("THM-2.4", "m=1:1:1,p=1:1,a=-1/2:1/3:-1"),
            ("LEMMA-2.6", "w=1/2:0:-1"),
        ] {
            assert_holds(id, params);
        }
    }
}
