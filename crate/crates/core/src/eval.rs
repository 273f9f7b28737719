use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{star_expand, KyIndex};
use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::expr::{Atom, Expr};
use crate::index::{ArgumentedIndex, Part, Sign, SignedIndex};
use crate::poset::Poset;
use crate::rational::Rational;
use crate::series::{eta, eval_poly_integral, eval_word, log_rational, pi, polylog_direct, HeadSeries};
use crate::word::{argumented_to_word, Word};

pub const DEFAULT_PREC: u32 = 128;
pub const DEFAULT_TOL: f64 = 1e-20;
pub const DEFAULT_MAX_TERMS: usize = 100_000;
pub const GUARD_BITS: u32 = 64;

#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    pub prec: u32,
    pub max_terms: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { prec: DEFAULT_PREC, max_terms: DEFAULT_MAX_TERMS }
    }
}

/// Certified evaluation of atoms and expressions with a shared cache.
pub struct Evaluator {
    cfg: EvalConfig,
    cache: Mutex<HashMap<Atom, BigFloat>>,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Self {
        Evaluator { cfg, cache: Mutex::new(HashMap::new()) }
    }

    pub fn with_prec(prec: u32) -> Self {
        Evaluator::new(EvalConfig { prec, ..EvalConfig::default() })
    }

    pub fn config(&self) -> EvalConfig {
        self.cfg
    }

    pub fn bits(&self) -> u32 {
        self.cfg.prec + GUARD_BITS
    }

    pub fn atom(&self, a: &Atom) -> Result<BigFloat> {
        if let Some(v) = self.cache.lock().expect("cache").get(a) {
            return Ok(v.clone());
        }
        let v = self.compute(a)?;
        self.cache.lock().expect("cache").insert(a.clone(), v.clone());
        Ok(v)
    }

    fn compute(&self, a: &Atom) -> Result<BigFloat> {
        let bits = self.bits();
        match a {
            Atom::Mzv(k) => self.mzv(k),
            Atom::Li(idx) => self.polylog(idx),
            Atom::LiXi(idx) => self.li_xi(idx),
            Atom::LiStar { exps, z } => self.li_star(exps, z),
            Atom::Zeta { s, sign } => self.zeta_single(*s, *sign),
            Atom::Log(q) => log_rational(q, bits),
            Atom::Pi => Ok(pi(bits)),
            Atom::Ky { ky, x } => self.ky(ky, x),
            Atom::Word(w) => eval_word(w, bits, self.cfg.max_terms),
            Atom::Poset(p) => self.poset(p),
            Atom::PolyIntegral { p, poly, t } => eval_poly_integral(*p, poly, t, bits, self.cfg.max_terms),
        }
    }

    /// Evaluates distinct atoms in parallel, then folds the tree in order.
    pub fn expr(&self, e: &Expr) -> Result<BigFloat> {
        let atoms: Vec<Atom> = e.atoms().into_iter().collect();
        atoms.par_iter().map(|a| self.atom(a).map(|_| ())).collect::<Result<Vec<()>>>()?;
        self.fold(e)
    }

    fn fold(&self, e: &Expr) -> Result<BigFloat> {
        let bits = self.bits();
        Ok(match e {
            Expr::Const(q) => BigFloat::from_rational(q, bits),
            Expr::Atom(a) => self.atom(a)?,
            Expr::Sum(ts) => {
                let mut acc = BigFloat::zero(bits);
                for (c, t) in ts {
                    acc = acc.add(&self.fold(t)?.mul_rational(c));
                }
                acc
            }
            Expr::Product(fs) => {
                let mut acc = BigFloat::one(bits);
                for f in fs {
                    acc = acc.mul(&self.fold(f)?);
                }
                acc
            }
        })
    }

    /// Alternating multiple zeta value through its word.
    pub fn mzv(&self, k: &SignedIndex) -> Result<BigFloat> {
        if !k.is_admissible() {
            return Err(Error::NotAdmissible(k.to_string()));
        }
        self.polylog(&signed_to_argumented(k))
    }

    /// `Li_s(z)` as `Π b_j · I(word)`, split for geometric convergence.
    pub fn polylog(&self, idx: &ArgumentedIndex) -> Result<BigFloat> {
        if !idx.is_admissible() {
            return Err(Error::Divergent(idx.to_string()));
        }
        let (w, prod) = argumented_to_word(idx);
        Ok(eval_word(&w, self.bits(), self.cfg.max_terms)?.mul_rational(&prod))
    }

    /// `Li_s(z)` by the nested series; full precision needs `max |b_j| < 1`,
    /// otherwise `terms` fixes the truncation and the tail is polynomial.
    pub fn polylog_direct(&self, idx: &ArgumentedIndex, terms: Option<usize>) -> Result<BigFloat> {
        if !idx.is_admissible() {
            return Err(Error::Divergent(idx.to_string()));
        }
        let max = terms.map_or(self.cfg.max_terms, |t| t.max(self.cfg.max_terms));
        polylog_direct(idx.exponents(), &idx.cumulative(), self.bits(), max, terms)
    }

    pub fn li_xi(&self, idx: &ArgumentedIndex) -> Result<BigFloat> {
        let mut args = Vec::with_capacity(idx.depth());
        let mut prev = Rational::one();
        for z in idx.args() {
            args.push(z / &prev);
            prev = z.clone();
        }
        self.polylog(&ArgumentedIndex::new(idx.exponents().to_vec(), args)?)
    }

    /// Star polylogarithm by its own series, `|z| < 1`.
    pub fn li_star(&self, exps: &[u32], z: &Rational) -> Result<BigFloat> {
        if exps.is_empty() {
            return Err(Error::EmptyOperand);
        }
        if z.abs() >= Rational::one() {
            return Err(Error::Domain(format!("star polylogarithm needs |z| < 1, got {z}")));
        }
        let star: Vec<Part> = exps[1..].iter().map(|&e| Part::plus(e)).collect();
        let hs = HeadSeries { head: Part::plus(exps[0]), x: z, strict: &[], star: &star };
        hs.eval(self.bits(), self.cfg.max_terms, None)
    }

    /// Star polylogarithm as a sum of ordinary ones over its star expansion.
    pub fn li_star_expanded(&self, exps: &[u32], z: &Rational) -> Result<BigFloat> {
        let k = SignedIndex::positive(exps)?;
        let mut acc = BigFloat::zero(self.bits());
        for (kp, c) in star_expand(&k).iter() {
            let mut args = vec![Rational::one(); kp.depth()];
            args[0] = z.clone();
            let v = self.polylog(&ArgumentedIndex::new(kp.exponents(), args)?)?;
            acc = acc.add(&v.mul_rational(c));
        }
        Ok(acc)
    }

    /// `ζ(s)` and `ζ(s̄)` from the accelerated eta series.
    pub fn zeta_single(&self, s: u32, sign: Sign) -> Result<BigFloat> {
        let bits = self.bits();
        match (s, sign) {
            (0, _) => Err(Error::ZeroEntry),
            (1, Sign::Plus) => Err(Error::NotAdmissible("(1)".into())),
            (_, Sign::Minus) => Ok(eta(s, bits).neg()),
            (_, Sign::Plus) => {
                let one = Rational::one();
                let two_pow = Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(2), (s - 1) as usize));
                Ok(eta(s, bits).mul_rational(&(&one / (&one - two_pow))))
            }
        }
    }

    /// Kaneko–Yamamoto value (weighted by `x^n`) through its expansion into
    /// polylogarithms.
    pub fn ky(&self, ky: &KyIndex, x: &Rational) -> Result<BigFloat> {
        ky.validate_at(x)?;
        let mut acc = BigFloat::zero(self.bits());
        for (k, c) in ky.expand_terms().iter() {
            let v = self.polylog(&head_weighted(k, x)?)?;
            acc = acc.add(&v.mul_rational(c));
        }
        Ok(acc)
    }

    /// Kaneko–Yamamoto value by its defining series; `terms` is required when `|x| = 1`.
    pub fn ky_direct(&self, ky: &KyIndex, x: &Rational, terms: Option<usize>) -> Result<BigFloat> {
        ky.validate_at(x)?;
        let strict = &ky.k.parts()[1..];
        let hs = HeadSeries { head: ky.head(), x, strict, star: ky.l_tail.parts() };
        let max = terms.map_or(self.cfg.max_terms, |t| t.max(self.cfg.max_terms));
        hs.eval(self.bits(), max, terms)
    }

    /// Double-precision direct series with `terms` terms, for long slow checks.
    pub fn ky_direct_f64(ky: &KyIndex, x: &Rational, terms: usize) -> Result<(f64, f64)> {
        ky.validate_at(x)?;
        let strict = &ky.k.parts()[1..];
        let hs = HeadSeries { head: ky.head(), x, strict, star: ky.l_tail.parts() };
        Ok(hs.eval_f64(terms))
    }

    /// Sum over linear extensions, each word evaluated once.
    pub fn poset(&self, p: &Poset) -> Result<BigFloat> {
        let ext = p.extensions()?;
        let terms: Vec<(&Word, &Rational)> = ext.iter().collect();
        let vals =
            terms.par_iter().map(|(w, _)| eval_word(w, self.bits(), self.cfg.max_terms)).collect::<Result<Vec<_>>>()?;
        Ok(vals.iter().zip(&terms).fold(BigFloat::zero(self.bits()), |acc, (v, (_, c))| acc.add(&v.mul_rational(c))))
    }

    /// An independent second route for the atom, when one exists.
    pub fn second_route(&self, a: &Atom) -> Option<Result<BigFloat>> {
        let bits = self.bits();
        Some(match a {
            Atom::Mzv(k) if k.depth() == 1 => {
                let p = k.parts()[0];
                self.zeta_single(p.exponent, p.sign)
            }
            Atom::Zeta { s, sign } => self.mzv(&SignedIndex::new(vec![Part::new(*s, *sign)]).ok()?),
            Atom::Li(idx) if idx.cumulative().iter().all(|b| b.abs() < Rational::one()) => {
                self.polylog_direct(idx, None)
            }
            Atom::LiStar { exps, z } => self.li_star_expanded(exps, z),
            Atom::Log(q) if *q >= Rational::new(1.into(), 2.into()) => {
                let z = Rational::one() - q.recip();
                if z.is_zero() {
                    Ok(BigFloat::zero(bits))
                } else {
                    self.polylog(&ArgumentedIndex::new(vec![1], vec![z]).ok()?)
                }
            }
            Atom::Ky { ky, x } if x.abs() < Rational::one() => self.ky_direct(ky, x, None),
            Atom::Poset(p) => p.decompose(crate::poset::SplitOrder::First).and_then(|ws| {
                ws.iter().try_fold(BigFloat::zero(bits), |acc, (w, c)| {
                    Ok(acc.add(&eval_word(w, bits, self.cfg.max_terms)?.mul_rational(c)))
                })
            }),
            _ => return None,
        })
    }
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(EvalConfig::default())
    }
}

pub fn signed_to_argumented(k: &SignedIndex) -> ArgumentedIndex {
    let args = k.parts().iter().map(|p| Rational::from_integer(p.sign.as_i64().into())).collect();
    ArgumentedIndex::new(k.exponents(), args).expect("positive exponents")
}

/// `Li_s(σ_1 x, σ_2, ..., σ_r)` for a signed index.
fn head_weighted(k: &SignedIndex, x: &Rational) -> Result<ArgumentedIndex> {
    let mut args: Vec<Rational> = k.parts().iter().map(|p| Rational::from_integer(p.sign.as_i64().into())).collect();
    args[0] = &args[0] * x;
    ArgumentedIndex::new(k.exponents(), args)
}

/// `|a - b|` together with the combined error bound.
pub fn residual(a: &BigFloat, b: &BigFloat) -> (f64, f64) {
    (a.sub(b).abs_f64(), a.err() + b.err())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::ix;
    use crate::rational::{int, rat};

    fn ev() -> Evaluator {
        Evaluator::with_prec(128)
    }

    fn agree(a: &BigFloat, b: &BigFloat, tol: f64) {
        let (r, bound) = residual(a, b);
        assert!(r <= bound + tol, "residual {r:e} bound {bound:e}");
    }

    #[test]
    fn classical_values() {
        let e = ev();
        let p = pi(e.bits());
        let z2 = e.mzv(&ix(&[2])).unwrap();
        agree(&z2, &p.mul(&p).div_int(6), 1e-30);
        let z2bar = e.mzv(&ix(&[-2])).unwrap();
        agree(&z2bar, &p.mul(&p).div_int(12).neg(), 1e-30);
        agree(&e.mzv(&ix(&[2, 1])).unwrap(), &e.mzv(&ix(&[3])).unwrap(), 1e-30);
        let l2 = log_rational(&int(2), e.bits()).unwrap();
        agree(&e.mzv(&ix(&[-1])).unwrap(), &l2.neg(), 1e-30);
    }

    #[test]
    fn zeta_routes_agree() {
        let e = ev();
        for s in 2..7 {
            for sign in [Sign::Plus, Sign::Minus] {
                let a = e.zeta_single(s, sign).unwrap();
                let b = e.mzv(&SignedIndex::new(vec![Part::new(s, sign)]).unwrap()).unwrap();
                agree(&a, &b, 1e-30);
            }
        }
    }

    #[test]
    fn depth_two_alternating_relation() {
        let e = ev();
        let lhs = e.mzv(&ix(&[-1, -1])).unwrap().sub(&e.mzv(&ix(&[-1, 1])).unwrap());
        agree(&lhs, &e.mzv(&ix(&[-2])).unwrap(), 1e-30);
    }

    #[test]
    fn li_star_routes() {
        let e = ev();
        let a = e.li_star(&[1, 2], &rat(1, 2)).unwrap();
        let b = e.li_star_expanded(&[1, 2], &rat(1, 2)).unwrap();
        agree(&a, &b, 1e-30);
        let l = e.li_star(&[1], &rat(1, 2)).unwrap();
        agree(&l, &log_rational(&int(2), e.bits()).unwrap(), 1e-30);
    }

    #[test]
    fn ky_collapses_to_zeta3() {
        let e = ev();
        let ky = KyIndex::new(ix(&[2]), ix(&[1])).unwrap();
        agree(&e.ky(&ky, &int(1)).unwrap(), &e.mzv(&ix(&[3])).unwrap(), 1e-30);
    }

    #[test]
    fn ky_half_routes() {
        let e = ev();
        let ky = KyIndex::with_zero_head(ix(&[1, 1]), ix(&[2, 1]));
        let a = e.ky(&ky, &rat(1, 2)).unwrap();
        let b = e.ky_direct(&ky, &rat(1, 2), None).unwrap();
        agree(&a, &b, 1e-30);
    }

    #[test]
    fn expression_products() {
        let e = ev();
        let prod = Expr::product(vec![Expr::zeta(2, Sign::Plus), Expr::zeta(3, Sign::Plus)]);
        let v = e.expr(&prod).unwrap();
        let d = e.zeta_single(2, Sign::Plus).unwrap().mul(&e.zeta_single(3, Sign::Plus).unwrap());
        agree(&v, &d, 1e-30);
        let sq = Expr::scaled(rat(1, 2), Expr::log2_power(2));
        let l = log_rational(&int(2), e.bits()).unwrap();
        agree(&e.expr(&sq).unwrap(), &l.mul(&l).div_int(2), 1e-30);
    }

    #[test]
    fn poset_matches_chain_polylog() {
        let e = ev();
        let alpha = [rat(-1, 2), rat(1, 3)];
        let w = crate::poset::xi_chain_word(&[2, 1], &alpha);
        let v = e.poset(&Poset::chain(&w)).unwrap();
        let xi = e.li_xi(&ArgumentedIndex::new(vec![2, 1], alpha.to_vec()).unwrap()).unwrap();
        agree(&v, &xi.mul_rational(&(Rational::one() / (&alpha[0] * &alpha[1]))), 1e-30);
    }
}
