//! Fixed-point series engines with certified truncation and rounding bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{ulp, BigFloat};
use crate::error::{Error, Result};
use crate::index::Part;
use crate::rational::{rational_to_f64, Rational};
use crate::word::{Letter, Word};

const SLACK: f64 = 1.0 + 1e-9;

fn div_round(x: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(d);
    if (r << 1u32) >= *d {
        q + 1
    } else {
        q
    }
}

fn terms_for(target_bits: f64, rho: f64) -> f64 {
    if rho <= 0.0 {
        return 0.0;
    }
    (target_bits / -rho.log2()).ceil()
}

fn check_terms(n: usize, max_terms: usize, bound: f64) -> Result<()> {
    if n > max_terms {
        Err(Error::TailTooLarge { bound, terms: max_terms })
    } else {
        Ok(())
    }
}

/// Iterated integrals `∫_0^x` built from the inside out. `inner_first[0]` is the
/// innermost form; the integrand starts as the polynomial `init` (default 1).
/// Returns the value after each prefix of `inner_first`, starting with the
/// bare integrand at `x`.
pub fn nested_integrals(
    inner_first: &[Letter],
    x: &Rational,
    init: Option<&[Rational]>,
    bits: u32,
    max_terms: usize,
) -> Result<Vec<BigFloat>> {
    let one = Rational::one();
    let init: Vec<Rational> = init.map(|c| c.to_vec()).unwrap_or_else(|| vec![one.clone()]);
    let xf = rational_to_f64(x);
    let c_norm: f64 = init.iter().map(|c| rational_to_f64(&c.abs())).sum::<f64>().max(1e-300) * SLACK;
    let r_total = inner_first.iter().filter(|l| l.arg().is_some()).count();
    let mut rho =
        inner_first.iter().filter_map(|l| l.arg()).map(|b| rational_to_f64(&b.abs()) * xf).fold(0.0f64, f64::max);
    if init.len() > 1 {
        rho = rho.max(xf);
    }
    let rho = rho * SLACK;
    if rho >= 1.0 {
        return Err(Error::Domain(format!("series ratio {rho} is not below 1")));
    }
    let target = bits as f64 + 2.0 + c_norm.log2().max(0.0) + (1.0 / (1.0 - rho)).log2();
    let n_max = (r_total as f64 + terms_for(target, rho)).max((init.len() + inner_first.len()) as f64) as usize + 1;
    check_terms(n_max, max_terms, f64::INFINITY)?;

    let scale = BigInt::one() << bits;
    let mut a = vec![BigInt::zero(); n_max + 1];
    let mut xp = one.clone();
    let mut e = 0.0f64;
    for (n, c) in init.iter().enumerate() {
        if n <= n_max {
            let q = c * &xp * Rational::from_integer(scale.clone());
            if !q.is_integer() {
                e = 1.0;
            }
            a[n] = div_round(q.numer(), q.denom());
        }
        xp *= x;
    }

    let (xn, xd) = (x.numer().clone(), x.denom().clone());
    let mut out = Vec::with_capacity(inner_first.len() + 1);
    let mut r = 0usize;
    let mut rho_cur = if init.len() > 1 { xf * SLACK } else { 0.0 };
    let value = |a: &[BigInt], e: f64, r: usize, rho_cur: f64| {
        let s: BigInt = a.iter().sum();
        let tail = if rho_cur > 0.0 {
            c_norm * rho_cur.powi((n_max + 1 - r.min(n_max)) as i32) / (1.0 - rho_cur)
        } else {
            0.0
        };
        let err = ((n_max + 1) as f64 * e * ulp(bits) + tail) * SLACK;
        BigFloat::from_raw(s, bits, err)
    };
    out.push(value(&a, e, r, rho_cur));
    for letter in inner_first {
        match letter {
            Letter::Omega0 => {
                if !a[0].is_zero() {
                    return Err(Error::WordNotAdmissible("dt/t applied to a nonvanishing integrand".into()));
                }
                for (n, v) in a.iter_mut().enumerate().skip(1) {
                    *v = div_round(v, &BigInt::from(n));
                }
                e += 1.0;
            }
            Letter::OmegaA(b) => {
                let beta = b * x;
                let (bn, bd) = (beta.numer().clone(), beta.denom().clone());
                let beta_abs = rational_to_f64(&beta.abs());
                let mut next = vec![BigInt::zero(); n_max + 1];
                let mut t = BigInt::zero();
                for n in 0..n_max {
                    t = div_round(&(&t * &bn), &bd) + &a[n];
                    next[n + 1] = div_round(&(&t * &xn), &(&xd * BigInt::from(n + 1)));
                }
                a = next;
                e = (e + 1.0) / (1.0 - beta_abs) + 1.0;
                r += 1;
                rho_cur = rho_cur.max(beta_abs * SLACK);
            }
        }
        out.push(value(&a, e, r, rho_cur));
    }
    Ok(out)
}

/// `∫_0^1` of an admissible word, split at a rational point so that both
/// halves converge geometrically.
pub fn eval_word(w: &Word, bits: u32, max_terms: usize) -> Result<BigFloat> {
    if w.is_empty() {
        return Ok(BigFloat::one(bits));
    }
    w.check_admissible()?;
    let letters = w.letters();
    let b1 = letters.iter().filter_map(|l| l.arg()).map(|b| b.abs()).max().unwrap_or_else(Rational::zero);
    let half = Rational::new(1.into(), 2.into());
    if b1 <= half {
        let inner: Vec<Letter> = letters.iter().rev().cloned().collect();
        let vals = nested_integrals(&inner, &Rational::one(), None, bits, max_terms)?;
        return Ok(vals.last().expect("nonempty").clone());
    }
    let mapped: Vec<(Rational, Letter)> = letters.iter().map(|l| l.reflect()).collect();
    let b2 = mapped.iter().filter_map(|(_, l)| l.arg()).map(|b| b.abs()).max().unwrap_or_else(Rational::zero);
    let c = &b2 / (&b1 + &b2);
    let one_minus_c = Rational::one() - &c;
    let suffix_inner: Vec<Letter> = letters.iter().rev().cloned().collect();
    let s_vals = nested_integrals(&suffix_inner, &c, None, bits, max_terms)?;
    let prefix_inner: Vec<Letter> = mapped.iter().map(|(_, l)| l.clone()).collect();
    let r_vals = nested_integrals(&prefix_inner, &one_minus_c, None, bits, max_terms)?;
    let len = letters.len();
    let mut total = BigFloat::zero(bits);
    let mut factor = Rational::one();
    for i in 0..=len {
        let s = &s_vals[len - i];
        let r = &r_vals[i];
        total = total.add(&r.mul(s).mul_rational(&factor));
        if i < len {
            factor *= &mapped[i].0;
        }
    }
    Ok(total)
}

/// `∫_0^t` over `p` nested forms `dt/(1-t)`, the innermost one weighted by `poly(t)`.
pub fn eval_poly_integral(p: u32, poly: &[Rational], t: &Rational, bits: u32, max_terms: usize) -> Result<BigFloat> {
    let letters = vec![Letter::OmegaA(Rational::one()); p as usize];
    let vals = nested_integrals(&letters, t, Some(poly), bits, max_terms)?;
    Ok(vals.last().expect("nonempty").clone())
}

fn term_rational(p: Part, m: u64) -> Rational {
    let den = num_traits::pow(BigInt::from(m), p.exponent as usize);
    let num = if p.sign.is_minus() && m % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    Rational::new(num, den)
}

/// Truncated nested harmonic sums in fixed point.
struct NestedFloat {
    parts: Vec<Part>,
    star: bool,
    m: u64,
    vals: Vec<BigFloat>,
}

impl NestedFloat {
    fn new(parts: &[Part], star: bool, bits: u32) -> Self {
        let mut vals = vec![BigFloat::zero(bits); parts.len()];
        vals.push(BigFloat::one(bits));
        NestedFloat { parts: parts.to_vec(), star, m: 0, vals }
    }

    fn advance(&mut self) {
        self.m += 1;
        let r = self.parts.len();
        let order: Box<dyn Iterator<Item = usize>> = if self.star { Box::new((0..r).rev()) } else { Box::new(0..r) };
        for j in order {
            let add = self.vals[j + 1].mul_rational(&term_rational(self.parts[j], self.m));
            self.vals[j] = self.vals[j].add(&add);
        }
    }

    fn value(&self) -> &BigFloat {
        &self.vals[0]
    }
}

/// Upper bound for `Σ_{n>N} ρ^n (1 + ln n)^q / n^e`.
pub fn head_series_tail(n: u64, rho: f64, q: u32, e: u32) -> f64 {
    if rho < 1.0 {
        let n1 = (n + 1) as f64;
        let l = 1.0 + n1.ln();
        let first = rho.powf(n1) * l.powi(q as i32) / n1.powi(e as i32);
        let ratio = rho * (q as f64 / (n1 * l)).exp();
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        first / (1.0 - ratio) * SLACK
    } else {
        poly_log_tail(n as f64, q, e)
    }
}

/// `∫_N^∞ (1 + ln x)^q x^{-s} dx`, valid once the integrand decreases.
pub fn poly_log_tail(n: f64, q: u32, s: u32) -> f64 {
    if s < 2 || (1.0 + n.ln()) * (s as f64) < q as f64 {
        return f64::INFINITY;
    }
    let sm1 = (s - 1) as f64;
    let base = n.powf(-sm1) / sm1;
    let l = 1.0 + n.ln();
    let mut j = base;
    for k in 1..=q {
        j = l.powi(k as i32) * base + k as f64 / sm1 * j;
    }
    j * SLACK
}

/// `Σ_{n ≥ 1} (σ x)^n ζ_{n-1}(strict) ζ*_n(star) / n^e` with a certified tail.
pub struct HeadSeries<'a> {
    pub head: Part,
    pub x: &'a Rational,
    pub strict: &'a [Part],
    pub star: &'a [Part],
}

impl HeadSeries<'_> {
    fn rho(&self) -> f64 {
        rational_to_f64(&self.x.abs())
    }

    fn depth(&self) -> u32 {
        (self.strict.len() + self.star.len()) as u32
    }

    /// Fixed-point evaluation; either to precision or to exactly `terms` terms.
    pub fn eval(&self, bits: u32, max_terms: usize, terms: Option<usize>) -> Result<BigFloat> {
        let rho = self.rho();
        let q = self.depth();
        let e = self.head.exponent;
        let n_terms = match terms {
            Some(t) => t,
            None => {
                if rho >= 1.0 {
                    return Err(Error::Divergent("direct series needs |x| < 1 for full precision".into()));
                }
                let target = ulp(bits);
                let mut n = (bits as f64 / -rho.log2()).ceil() as usize + 1;
                while head_series_tail(n as u64, rho, q, e) > target {
                    n += n / 8 + 8;
                    check_terms(n, max_terms, head_series_tail(n as u64, rho, q, e))?;
                }
                n
            }
        };
        check_terms(n_terms, max_terms, head_series_tail(n_terms as u64, rho, q, e))?;
        let mut a = NestedFloat::new(self.strict, false, bits);
        let mut b = NestedFloat::new(self.star, true, bits);
        let mut xp = BigFloat::one(bits);
        let xs = if self.head.sign.is_minus() { -self.x.clone() } else { self.x.clone() };
        let mut total = BigFloat::zero(bits);
        for n in 1..=n_terms as u64 {
            b.advance();
            xp = xp.mul_rational(&xs);
            let den = num_traits::pow(BigInt::from(n), e as usize);
            let coef = xp.mul_rational(&Rational::new(BigInt::one(), den));
            total = total.add(&coef.mul(a.value()).mul(b.value()));
            a.advance();
        }
        let tail = head_series_tail(n_terms as u64, rho, q, e);
        Ok(total.with_extra_error(tail))
    }

    /// Double-precision evaluation for long polynomial-rate checks.
    pub fn eval_f64(&self, terms: usize) -> (f64, f64) {
        let x = rational_to_f64(self.x) * self.head.sign.as_i64() as f64;
        let strict: Vec<(f64, u32)> = self.strict.iter().map(|p| (p.sign.as_i64() as f64, p.exponent)).collect();
        let star: Vec<(f64, u32)> = self.star.iter().map(|p| (p.sign.as_i64() as f64, p.exponent)).collect();
        let mut a = vec![0.0f64; strict.len()];
        a.push(1.0);
        let mut b = vec![0.0f64; star.len()];
        b.push(1.0);
        let mut xp = 1.0f64;
        let mut total = 0.0f64;
        let mut comp = 0.0f64;
        let term = |sign: f64, e: u32, n: u64| {
            let s = if n % 2 == 1 { sign } else { 1.0 };
            s / (n as f64).powi(e as i32)
        };
        for n in 1..=terms as u64 {
            for j in (0..star.len()).rev() {
                b[j] += term(star[j].0, star[j].1, n) * b[j + 1];
            }
            xp *= x;
            let t = xp / (n as f64).powi(self.head.exponent as i32) * a[0] * b[0];
            let y = t - comp;
            let s = total + y;
            comp = (s - total) - y;
            total = s;
            for j in 0..strict.len() {
                a[j] += term(strict[j].0, strict[j].1, n) * a[j + 1];
            }
        }
        let tail = head_series_tail(terms as u64, rational_to_f64(&self.x.abs()), self.depth(), self.head.exponent);
        let rounding = 1e-15 * terms as f64;
        (total, tail + rounding)
    }
}

/// `Li_s(z)` summed directly over `n_1 > ... > n_r` using the partial
/// products `b_j = z_1 ... z_j`; terms are bounded by `ρ^n` with `ρ = max |b_j|`.
pub fn polylog_direct(
    exps: &[u32],
    b: &[Rational],
    bits: u32,
    max_terms: usize,
    terms: Option<usize>,
) -> Result<BigFloat> {
    let r = exps.len();
    let rho = b.iter().map(|x| rational_to_f64(&x.abs())).fold(0.0f64, f64::max);
    let tail_at = |n: usize| -> f64 {
        if rho < 1.0 {
            rho.powf(n as f64 + 1.0) / (1.0 - rho) * SLACK
        } else {
            poly_log_tail(n as f64, (r - 1) as u32, exps[0])
        }
    };
    let n_terms = match terms {
        Some(t) => t,
        None => {
            if rho >= 1.0 {
                return Err(Error::Divergent("direct polylog series needs max |b_j| < 1 for full precision".into()));
            }
            (r as f64 + terms_for(bits as f64 + 2.0 + (1.0 / (1.0 - rho)).log2(), rho)) as usize + 1
        }
    };
    let tail = tail_at(n_terms);
    if !tail.is_finite() {
        return Err(Error::Divergent("no tail bound for this index".into()));
    }
    check_terms(n_terms, max_terms, tail)?;
    let one = BigFloat::one(bits);
    let mut p = one.clone();
    let mut u: Vec<BigFloat> = vec![BigFloat::zero(bits); r];
    let mut g_prev: Vec<BigFloat> = vec![BigFloat::zero(bits); r];
    let mut total = BigFloat::zero(bits);
    for n in 1..=n_terms as u64 {
        let mut g = vec![BigFloat::zero(bits); r];
        p = p.mul_rational(&b[r - 1]);
        let inv = |e: u32| Rational::new(BigInt::one(), num_traits::pow(BigInt::from(n), e as usize));
        g[r - 1] = p.mul_rational(&inv(exps[r - 1]));
        for j in (0..r - 1).rev() {
            u[j] = u[j].add(&g_prev[j + 1]).mul_rational(&b[j]);
            g[j] = u[j].mul_rational(&inv(exps[j]));
        }
        total = total.add(&g[0]);
        g_prev = g;
    }
    Ok(total.with_extra_error(tail))
}

/// `atanh(y) = Σ y^{2k+1}/(2k+1)` for rational `|y| ≤ 1/2`.
pub fn atanh(y: &Rational, bits: u32) -> BigFloat {
    let yf = rational_to_f64(&y.abs());
    assert!(yf <= 0.5, "atanh argument too large");
    if y.is_zero() {
        return BigFloat::zero(bits);
    }
    let y2 = y * y;
    let mut pw = BigFloat::from_rational(y, bits);
    let mut total = BigFloat::zero(bits);
    let mut k = 0u64;
    loop {
        total = total.add(&pw.div_int(2 * k + 1));
        pw = pw.mul_rational(&y2);
        k += 1;
        let tail = yf.powi(2 * k as i32 + 1) / (1.0 - yf * yf);
        if tail < ulp(bits) / 4.0 {
            return total.with_extra_error(tail);
        }
    }
}

/// Natural logarithm of a positive rational.
pub fn log_rational(q: &Rational, bits: u32) -> Result<BigFloat> {
    if !q.is_positive() {
        return Err(Error::Domain("logarithm of a non-positive number".into()));
    }
    let two = Rational::from_integer(2.into());
    let mut f = q.clone();
    let mut e: i64 = 0;
    let lo = Rational::new(2.into(), 3.into());
    let hi = Rational::new(4.into(), 3.into());
    while f > hi {
        f /= &two;
        e += 1;
    }
    while f < lo {
        f *= &two;
        e -= 1;
    }
    let one = Rational::one();
    let y = (&f - &one) / (&f + &one);
    let lf = atanh(&y, bits).mul_rational(&two);
    if e == 0 {
        return Ok(lf);
    }
    let ln2 = atanh(&Rational::new(1.into(), 3.into()), bits).mul_rational(&two);
    Ok(lf.add(&ln2.mul_rational(&Rational::from_integer(e.into()))))
}

/// `π = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(bits: u32) -> BigFloat {
    let atan_inv = |k: i64| {
        let y = Rational::new(1.into(), k.into());
        let y2 = &y * &y;
        let mut pw = BigFloat::from_rational(&y, bits);
        let mut total = BigFloat::zero(bits);
        let mut j = 0u64;
        loop {
            let t = pw.div_int(2 * j + 1);
            total = if j.is_multiple_of(2) { total.add(&t) } else { total.sub(&t) };
            pw = pw.mul_rational(&y2);
            j += 1;
            let tail = (1.0 / k as f64).powi(2 * j as i32 + 1);
            if tail < ulp(bits) / 4.0 {
                return total.with_extra_error(tail);
            }
        }
    };
    atan_inv(5)
        .mul_rational(&Rational::from_integer(16.into()))
        .sub(&atan_inv(239).mul_rational(&Rational::from_integer(4.into())))
}

/// Dirichlet eta `η(s) = Σ (-1)^{n-1}/n^s` by the Borwein acceleration,
/// error at most `3/(3+√8)^n` for integer `s ≥ 1`.
pub fn eta(s: u32, bits: u32) -> BigFloat {
    let n = ((bits as f64 + 4.0) / (3.0 + 8f64.sqrt()).log2()).ceil() as u32 + 1;
    let n_big = BigInt::from(n);
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut acc = Rational::zero();
    let mut c = Rational::new(BigInt::one(), n_big.clone());
    for i in 0..=n {
        if i > 0 {
            let i_big = BigInt::from(i);
            let num = (&n_big + &i_big - 1) * (&n_big - &i_big + 1) * 4;
            let den = (BigInt::from(2 * i) - 1) * BigInt::from(2 * i);
            c *= Rational::new(num, den);
        }
        acc += &c;
        d.push(&acc * Rational::from_integer(n_big.clone()));
    }
    let dn = d[n as usize].clone();
    let mut total = BigFloat::zero(bits);
    for (k, dk) in d[..n as usize].iter().enumerate() {
        let den = num_traits::pow(BigInt::from(k + 1), s as usize);
        let t = (dk - &dn) / Rational::from_integer(den);
        let tf = BigFloat::from_rational(&t, bits);
        total = if k % 2 == 0 { total.add(&tf) } else { total.sub(&tf) };
    }
    let v = total.mul_rational(&(-Rational::one() / dn));
    let bound = 3.0 / (3.0 + 8f64.sqrt()).powi(n as i32);
    v.with_extra_error(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    const BITS: u32 = 192;

    fn close(a: &BigFloat, b: &BigFloat, tol: f64) {
        let d = a.sub(b).abs_f64();
        assert!(d <= a.err() + b.err() + tol, "difference {d:e}, bounds {:e} {:e}", a.err(), b.err());
    }

    fn word(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn log_two_three_ways() {
        let l1 = log_rational(&int(2), BITS).unwrap();
        let l2 = eta(1, BITS);
        let l3 = eval_word(&word("[-1]"), BITS, 100_000).unwrap();
        close(&l1, &l2, 0.0);
        close(&l1, &l3, 0.0);
        assert!(l1.err() < 1e-50);
        assert!((l1.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let p = pi(BITS);
        let z2 = p.mul(&p).div_int(6);
        let w = eval_word(&word("[0,1]"), BITS, 100_000).unwrap();
        close(&z2, &w, 0.0);
        assert!(w.err() < 1e-50);
        let e = eta(2, BITS).mul_rational(&int(2));
        close(&z2, &e, 0.0);
    }

    #[test]
    fn euler_relation() {
        let z21 = eval_word(&word("[0,1,1]"), BITS, 100_000).unwrap();
        let z3 = eval_word(&word("[0,0,1]"), BITS, 100_000).unwrap();
        close(&z21, &z3, 0.0);
    }

    #[test]
    fn half_letter_is_two_log_two() {
        let v = eval_word(&word("[1/2]"), BITS, 100_000).unwrap();
        let l = log_rational(&int(2), BITS).unwrap().mul_rational(&int(2));
        close(&v, &l, 0.0);
    }

    #[test]
    fn direct_and_word_polylog_agree() {
        let b = vec![rat(1, 2), rat(-1, 3)];
        let d = polylog_direct(&[2, 1], &b, BITS, 100_000, None).unwrap();
        let prod = rat(1, 2) * rat(-1, 3);
        let w = eval_word(&word("[0,1/2,-1/3]"), BITS, 100_000).unwrap().mul_rational(&prod);
        close(&d, &w, 0.0);
    }

    #[test]
    fn direct_slow_path_has_polynomial_bound() {
        let d = polylog_direct(&[3], &[int(1)], 128, 2_000_000, Some(1000)).unwrap();
        let w = eval_word(&word("[0,0,1]"), 128, 100_000).unwrap();
        close(&d, &w, 0.0);
        assert!(d.err() < 1e-5);
    }

    #[test]
    fn poly_integral_single_form() {
        let v = eval_poly_integral(1, &[int(1)], &rat(1, 2), BITS, 100_000).unwrap();
        let l = log_rational(&int(2), BITS).unwrap();
        close(&v, &l, 0.0);
    }

    #[test]
    fn head_series_matches_polylog() {
        let x = rat(1, 2);
        let hs = HeadSeries { head: Part::plus(2), x: &x, strict: &[], star: &[] };
        let v = hs.eval(BITS, 100_000, None).unwrap();
        let d = polylog_direct(&[2], &[rat(1, 2)], BITS, 100_000, None).unwrap();
        close(&v, &d, 0.0);
    }
}
