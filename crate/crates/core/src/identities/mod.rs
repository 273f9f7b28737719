//! Generators for the identity families. Each takes integer and rational
//! parameters and returns both sides as expressions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::KyIndex;
use crate::error::{Error, Result};
use crate::eval::DEFAULT_TOL;
use crate::expr::{Atom, Expr};
use crate::index::{ArgumentedIndex, BoxChain, Part, Sign, SignedIndex};
use crate::rational::{factorial, minus_one_pow, parse_rational, Rational};

pub mod alternating;
pub mod bbb;
pub mod exact;
pub mod integral;
pub mod ky;
pub mod polylog;
pub mod sample;
pub mod verify;

pub use ky::{invert_lemma54, lemma54_forward, TriangularTable};

/// How an instance is checked.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Mode {
    /// Canonical forms must agree term by term.
    Exact,
    /// `|lhs - rhs|` plus the error bounds must stay below `tol`.
    Numeric { tol: f64 },
}

impl Mode {
    pub fn numeric() -> Self {
        Mode::Numeric { tol: DEFAULT_TOL }
    }
}

/// Named parameter lists such as `m=1:2:1,p=0:1,a=-1/2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Params(BTreeMap<String, Vec<Rational>>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Params::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, val) =
                item.split_once('=').ok_or_else(|| Error::Param(item.to_string(), "expected key=value".into()))?;
            let vals = if val.trim().is_empty() {
                Vec::new()
            } else {
                val.split(':').map(|v| parse_rational(v.trim())).collect::<Result<Vec<_>>>()?
            };
            out.0.insert(key.trim().to_string(), vals);
        }
        Ok(out)
    }

    pub fn with(mut self, key: &str, vals: &[i64]) -> Self {
        self.0.insert(key.into(), vals.iter().map(|&v| Rational::from_integer(v.into())).collect());
        self
    }

    pub fn with_rational(mut self, key: &str, vals: &[Rational]) -> Self {
        self.0.insert(key.into(), vals.to_vec());
        self
    }

    pub fn rationals(&self, key: &str) -> Result<&[Rational]> {
        self.0.get(key).map(|v| v.as_slice()).ok_or_else(|| Error::Param(key.into(), "missing".into()))
    }

    pub fn rational(&self, key: &str) -> Result<Rational> {
        match self.rationals(key)? {
            [v] => Ok(v.clone()),
            _ => Err(Error::Param(key.into(), "expected a single value".into())),
        }
    }

    pub fn ints(&self, key: &str) -> Result<Vec<i64>> {
        self.rationals(key)?
            .iter()
            .map(|q| {
                if q.is_integer() {
                    q.to_integer().to_i64().ok_or_else(|| Error::Param(key.into(), "too large".into()))
                } else {
                    Err(Error::Param(key.into(), format!("{q} is not an integer")))
                }
            })
            .collect()
    }

    /// Non-negative integers, each at least `min`.
    pub fn naturals(&self, key: &str, min: u32) -> Result<Vec<u32>> {
        self.ints(key)?
            .into_iter()
            .map(|v| {
                if v < min as i64 || v > 64 {
                    Err(Error::Param(key.into(), format!("{v} outside {min}..=64")))
                } else {
                    Ok(v as u32)
                }
            })
            .collect()
    }

    pub fn natural(&self, key: &str, min: u32) -> Result<u32> {
        match self.naturals(key, min)?.as_slice() {
            [v] => Ok(*v),
            _ => Err(Error::Param(key.into(), "expected a single value".into())),
        }
    }

    pub fn get(&self, key: &str) -> Option<&[Rational]> {
        self.0.get(key).map(|v| v.as_slice())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| {
                let vals: Vec<String> = v.iter().map(|q| q.to_string()).collect();
                format!("{k}={}", vals.join(":"))
            })
            .collect();
        f.write_str(&items.join(","))
    }
}

/// One instantiated identity.
#[derive(Clone, Debug)]
pub struct IdentityInstance {
    pub family: String,
    pub params: Params,
    pub lhs: Expr,
    pub rhs: Expr,
    pub mode: Mode,
    pub notes: Vec<String>,
}

impl IdentityInstance {
    pub fn numeric(family: &str, params: &Params, lhs: Expr, rhs: Expr) -> Self {
        IdentityInstance {
            family: family.into(),
            params: params.clone(),
            lhs,
            rhs,
            mode: Mode::numeric(),
            notes: Vec::new(),
        }
    }

    pub fn exact(family: &str, params: &Params, lhs: Expr, rhs: Expr) -> Self {
        IdentityInstance {
            family: family.into(),
            params: params.clone(),
            lhs,
            rhs,
            mode: Mode::Exact,
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, text: &str) -> Self {
        self.notes.push(text.into());
        self
    }

    /// Stable identifier `FAMILY[params]`.
    pub fn id(&self) -> String {
        format!("{}[{}]", self.family, self.params)
    }
}

pub type Generator = fn(&Params) -> Result<IdentityInstance>;

/// A family id, a short description, its generator and the default grid.
pub struct Family {
    pub id: &'static str,
    pub about: &'static str,
    pub generate: Generator,
    pub grid: fn() -> Vec<Params>,
}

pub fn families() -> Vec<Family> {
    let mut out = Vec::new();
    out.extend(bbb::families());
    out.extend(polylog::families());
    out.extend(alternating::families());
    out.extend(ky::families());
    out.extend(integral::families());
    out.extend(exact::families());
    out
}

pub fn find(id: &str) -> Result<Family> {
    families().into_iter().find(|f| f.id.eq_ignore_ascii_case(id)).ok_or_else(|| Error::UnknownFamily(id.into()))
}

pub fn generate(id: &str, params: &Params) -> Result<IdentityInstance> {
    (find(id)?.generate)(params)
}

/// Every parameter tuple with entries in `lo..=hi` and the given length.
pub fn tuples(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (lo..=hi).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

// Building blocks shared by the generators.

pub(crate) fn ones(n: u32) -> Vec<i64> {
    vec![1; n as usize]
}

pub(crate) fn cat(parts: &[&[i64]]) -> Vec<i64> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

pub(crate) fn sign(n: i64) -> Rational {
    minus_one_pow(n)
}

pub(crate) fn mzv(v: &[i64]) -> Result<Expr> {
    let k = SignedIndex::from_signed(v)?;
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(k.to_string()));
    }
    Ok(Expr::mzv(k))
}

/// MZV with an empty index read as 1.
pub(crate) fn mzv_or_one(v: &[i64]) -> Result<Expr> {
    if v.is_empty() {
        Ok(Expr::one())
    } else {
        mzv(v)
    }
}

pub(crate) fn zeta(s: u32) -> Expr {
    Expr::zeta(s, Sign::Plus)
}

pub(crate) fn zeta_bar(s: u32) -> Expr {
    Expr::zeta(s, Sign::Minus)
}

/// `Li_s(z_1, ..., z_r)`.
pub(crate) fn li(exps: Vec<u32>, args: Vec<Rational>) -> Result<Expr> {
    Ok(Expr::li(ArgumentedIndex::new(exps, args)?))
}

/// Single-variable `Li_s(z)`: `z` on the outermost variable only.
pub(crate) fn li_single(exps: Vec<u32>, z: &Rational) -> Result<Expr> {
    let mut args = vec![Rational::one(); exps.len()];
    args[0] = z.clone();
    li(exps, args)
}

/// `log^i(q) / i!`.
pub(crate) fn log_power(q: &Rational, i: u32) -> Expr {
    let c = Rational::new(One::one(), factorial(i));
    Expr::scaled(c, Expr::power(Atom::Log(q.clone()), i))
}

pub(crate) fn product(a: Expr, b: Expr) -> Expr {
    Expr::product(vec![a, b])
}

/// Kaneko–Yamamoto atom `ζ(k ⊛ l⋆)` weighted by `x^n`; `l[0]` may be 0.
pub(crate) fn ky(k: &[i64], l: &[u32], x: Rational) -> Result<Expr> {
    let k = SignedIndex::from_signed(k)?;
    let tail = SignedIndex::positive(&l[1..])?;
    let ky = KyIndex { k, l_head: l[0], l_head_sign: Sign::Plus, l_tail: tail };
    ky.validate_at(&x)?;
    Ok(Expr::atom(Atom::Ky { ky, x }))
}

/// Signed `a ◇ {1}_{q-1} ◇ b`: exponents join like `⊡`, signs multiply.
pub(crate) fn signed_diamond(a: i64, q: u32, b: i64) -> Vec<i64> {
    if q == 0 {
        let pa = Part::from_signed(a).expect("nonzero");
        let pb = Part::from_signed(b).expect("nonzero");
        let e = (pa.exponent + pb.exponent - 1) as i64;
        vec![e * (pa.sign * pb.sign).as_i64()]
    } else {
        let mut v = vec![a];
        v.extend(ones(q - 1));
        v.push(b);
        v
    }
}

/// `E_i` and `F_i` as exponent lists, `m` indexed `m_1..m_{k+1}` and `p` as `p_1..p_k`;
/// `F_i` keeps a leading entry that is 0 unless the first joins collapse into it.
pub fn build_ef(i: usize, p: &[u32], m: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
    let k = p.len();
    if m.len() != k + 1 || i == 0 || i > k + 1 {
        return Err(Error::Param("i".into(), format!("{i} outside 1..={}", k + 1)));
    }
    let e = if i <= k {
        let mut c = BoxChain::start(m[k] + 1);
        for l in (i + 1..=k).rev() {
            c = c.join(p[l - 1], m[l - 1] + 1);
        }
        c.into_entries()
    } else {
        Vec::new()
    };
    let mut f = BoxChain::start(0);
    for l in 1..i {
        f = f.join(p[l - 1], m[l] + 1);
    }
    Ok((e, f.into_entries()))
}

/// `Σ_i (-1)^{|p|_{i-1}} Σ_j (-1)^{j-1} ζ(E_i, {1}_{p_i-j}) KY(k, (F_i, {1}_{j-1}); x)
/// + (-1)^{|p|_k} KY(k, F_{k+1}; x)`.
pub(crate) fn ef_expansion(p: &[u32], m: &[u32], k: &[i64], x: &Rational) -> Result<Expr> {
    let mut terms = Vec::new();
    let mut p_before = 0i64;
    for i in 1..=p.len() {
        let (e, f) = build_ef(i, p, m)?;
        let pi = p[i - 1];
        for j in 1..=pi {
            let z: Vec<i64> = e.iter().map(|&v| v as i64).chain(ones(pi - j)).collect();
            let l: Vec<u32> = f.iter().copied().chain(std::iter::repeat_n(1, j as usize - 1)).collect();
            terms.push((sign(p_before + j as i64 - 1), product(mzv(&z)?, ky(k, &l, x.clone())?)));
        }
        p_before += pi as i64;
    }
    let (_, f) = build_ef(p.len() + 1, p, m)?;
    terms.push((sign(p_before), ky(k, &f, x.clone())?));
    Ok(sum_of(terms))
}

pub(crate) fn all_signs(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..1u64 << n).map(move |mask| (0..n).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect())
}

pub(crate) fn check(cond: bool, key: &str, why: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Param(key.into(), why.into()))
    }
}

pub(crate) fn sum_of(terms: Vec<(Rational, Expr)>) -> Expr {
    Expr::sum(terms.into_iter().filter(|(c, _)| !c.is_zero()).collect())
}

#[cfg(test)]
pub(crate) mod tests_support {
    use crate::eval::Evaluator;

    /// Generates, evaluates at 128 bits and requires a pass.
    pub fn assert_holds(id: &str, params: &str) {
        let p = super::Params::parse(params).unwrap();
        let inst = super::generate(id, &p).unwrap_or_else(|e| panic!("{id} {params}: {e}"));
        let rep = super::verify::verify(&inst, &Evaluator::with_prec(128), None)
            .unwrap_or_else(|e| panic!("{id} {params}: {e}"));
        assert!(rep.pass, "{id} {params}: {rep:?}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_round_trip() {
        let p = Params::parse("m=1:2:1,p=0:1,a=-1/2").unwrap();
        assert_eq!(p.naturals("m", 1).unwrap(), vec![1, 2, 1]);
        assert_eq!(p.rational("a").unwrap(), Rational::new((-1).into(), 2.into()));
        assert_eq!(Params::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn ef_examples() {
        // k = 2, i = 1: E_1 = (m_3 + 1) ⊡ {1}_{p_2 - 1} ⊡ (m_2 + 1), F_1 = (0).
        let (e, f) = build_ef(1, &[1, 2], &[1, 2, 3]).unwrap();
        assert_eq!(e, vec![4, 1, 3]);
        assert_eq!(f, vec![0]);
        let (e, _) = build_ef(2, &[1, 2], &[1, 2, 3]).unwrap();
        assert_eq!(e, vec![4]);
        // All p = 0 collapses E into one summed entry.
        let (e, f) = build_ef(1, &[0, 0], &[1, 2, 3]).unwrap();
        assert_eq!(e, vec![6]);
        assert_eq!(f, vec![0]);
        let (_, f) = build_ef(3, &[0, 2], &[1, 2, 3]).unwrap();
        assert_eq!(f, vec![2, 1, 4]);
        assert!(build_ef(4, &[0, 2], &[1, 2, 3]).is_err());
    }

    #[test]
    fn signed_diamond_rules() {
        assert_eq!(signed_diamond(-1, 0, -1), vec![1]);
        assert_eq!(signed_diamond(-1, 0, 3), vec![-3]);
        assert_eq!(signed_diamond(-1, 2, -1), vec![-1, 1, -1]);
    }

    #[test]
    fn every_family_generates_its_grid() {
        for fam in families() {
            for p in (fam.grid)() {
                (fam.generate)(&p).unwrap_or_else(|e| panic!("{} {}: {e}", fam.id, p));
            }
        }
    }
}
