use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::KyIndex;
use crate::formal::FormalSum;
use crate::index::{Part, SignedIndex};
use crate::rational::Rational;

fn term(p: Part, m: u64) -> Rational {
    let den = num_traits::pow(BigInt::from(m), p.exponent as usize);
    let num = if p.sign.is_minus() && m % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    Rational::new(num, den)
}

/// Running nested sums `ζ_m(parts[j..])` (or the star version) as `m` grows.
#[derive(Clone, Debug)]
pub struct NestedSums {
    parts: Vec<Part>,
    star: bool,
    m: u64,
    vals: Vec<Rational>,
}

impl NestedSums {
    pub fn new(parts: &[Part], star: bool) -> Self {
        let mut vals = vec![Rational::zero(); parts.len()];
        vals.push(Rational::one());
        NestedSums { parts: parts.to_vec(), star, m: 0, vals }
    }

    pub fn advance(&mut self) {
        self.m += 1;
        let m = self.m;
        let r = self.parts.len();
        if self.star {
            for j in (0..r).rev() {
                let add = term(self.parts[j], m) * &self.vals[j + 1];
                self.vals[j] += add;
            }
        } else {
            for j in 0..r {
                let add = term(self.parts[j], m) * &self.vals[j + 1];
                self.vals[j] += add;
            }
        }
    }

    pub fn value(&self) -> &Rational {
        &self.vals[0]
    }

    pub fn step(&self) -> u64 {
        self.m
    }
}

fn run(n: u64, idx: &SignedIndex, star: bool) -> Rational {
    let mut s = NestedSums::new(idx.parts(), star);
    for _ in 0..n {
        s.advance();
    }
    if idx.is_empty() {
        Rational::one()
    } else {
        s.value().clone()
    }
}

/// `ζ_n(idx) = Σ_{n ≥ n_1 > ... > n_r ≥ 1} Π sgn_j^{n_j} / n_j^{s_j}`.
pub fn mhs_eval(n: u64, idx: &SignedIndex) -> Rational {
    run(n, idx, false)
}

/// Star version with `≥` between consecutive summation variables.
pub fn mhss_eval(n: u64, idx: &SignedIndex) -> Rational {
    if n == 0 && !idx.is_empty() {
        return Rational::zero();
    }
    run(n, idx, true)
}

/// `ζ*_n(idx; x)` with weight `x^{n_r}` on the innermost variable, `ζ*_n(∅; x) = x^n`.
pub fn parametric_star_eval(n: u64, idx: &SignedIndex, x: &Rational) -> Rational {
    let r = idx.depth();
    if r == 0 {
        return num_traits::pow(x.clone(), n as usize);
    }
    let parts = idx.parts();
    let mut vals = vec![Rational::zero(); r];
    let mut xp = Rational::one();
    for m in 1..=n {
        xp *= x;
        let inner = xp.clone();
        for j in (0..r).rev() {
            let below = if j + 1 == r { inner.clone() } else { vals[j + 1].clone() };
            vals[j] += term(parts[j], m) * below;
        }
    }
    vals[0].clone()
}

pub fn eval_formal_sum(n: u64, fs: &FormalSum<SignedIndex>) -> Rational {
    fs.iter().fold(Rational::zero(), |acc, (k, c)| acc + c * mhs_eval(n, k))
}

pub fn eval_formal_sum_star(n: u64, fs: &FormalSum<SignedIndex>) -> Rational {
    fs.iter().fold(Rational::zero(), |acc, (k, c)| acc + c * mhss_eval(n, k))
}

/// Partial sums `Σ_{n ≤ N} ζ_{n-1}(k') ζ*_n(l') (α_1 β_1)^n / n^{k_1 + l_1}`.
pub fn ky_partial_sum(big_n: u64, ky: &KyIndex) -> Rational {
    head_partial_sum(big_n, ky, true)
}

/// Partial sums of `ζ(k ⊛ l)`: `Σ_{n ≤ N} ζ_{n-1}(k') ζ_{n-1}(l') (α_1 β_1)^n / n^{k_1 + l_1}`.
pub fn circled_partial_sum(big_n: u64, ky: &KyIndex) -> Rational {
    head_partial_sum(big_n, ky, false)
}

fn head_partial_sum(big_n: u64, ky: &KyIndex, star: bool) -> Rational {
    let head = ky.head();
    let mut inner_k = NestedSums::new(&ky.k.parts()[1..], false);
    let mut inner_l = NestedSums::new(ky.l_tail.parts(), star);
    let one = |s: &NestedSums, empty: bool| if empty { Rational::one() } else { s.value().clone() };
    let mut total = Rational::zero();
    for n in 1..=big_n {
        if star {
            inner_l.advance();
        }
        let zk = one(&inner_k, ky.k.depth() == 1);
        let zl = one(&inner_l, ky.l_tail.is_empty());
        total += term(head, n) * zk * zl;
        inner_k.advance();
        if !star {
            inner_l.advance();
        }
    }
    total
}
