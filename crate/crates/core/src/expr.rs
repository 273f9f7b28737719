use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{star_expand, KyIndex};
use crate::error::Result;
use crate::formal::{FormalSum, TermKey};
use crate::index::{ArgumentedIndex, Part, Sign, SignedIndex};
use crate::poset::Poset;
use crate::rational::Rational;
use crate::word::{word_to_index, Word};

/// A number the evaluator knows how to compute.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// Alternating multiple zeta value.
    Mzv(SignedIndex),
    /// `Li_s(z)` summed over `n_1 > ... > n_r` with weight `Π z_j^{n_j}`.
    Li(ArgumentedIndex),
    /// `Σ_{n_1 ≥ ... ≥ n_r ≥ 1} z^{n_1} / Π n_j^{s_j}`.
    LiStar {
        exps: Vec<u32>,
        z: Rational,
    },
    /// `Li` evaluated with the arguments read as partial products.
    LiXi(ArgumentedIndex),
    /// `ζ(s)` or `ζ(s̄)`.
    Zeta {
        s: u32,
        sign: Sign,
    },
    /// Natural logarithm of a positive rational.
    Log(Rational),
    Pi,
    /// `Σ_n x^n ζ_{n-1}(k') ζ*_n(l') σ^n / n^{k_1 + l_1}`; `x = 1` is `ζ(k ⊛ l⋆)`.
    Ky {
        ky: KyIndex,
        x: Rational,
    },
    /// Iterated integral of a word over `[0, 1]`.
    Word(Word),
    /// Order-simplex integral of a labelled poset.
    Poset(Poset),
    /// `∫_0^t` over `p` nested forms `dt/(1-t)`, the innermost one weighted by `poly(t)`.
    PolyIntegral {
        p: u32,
        poly: Vec<Rational>,
        t: Rational,
    },
}

impl Atom {
    pub fn mzv(idx: &[i64]) -> Atom {
        Atom::Mzv(crate::index::ix(idx))
    }

    pub fn weight(&self) -> Option<u32> {
        match self {
            Atom::Mzv(k) => Some(k.weight()),
            Atom::Li(a) | Atom::LiXi(a) => Some(a.weight()),
            Atom::LiStar { exps, .. } => Some(exps.iter().sum()),
            Atom::Zeta { s, .. } => Some(*s),
            Atom::Log(_) => Some(1),
            Atom::Pi => Some(1),
            Atom::Ky { ky, .. } => Some(ky.k.weight() + ky.l_head + ky.l_tail.weight()),
            Atom::Word(w) => Some(w.len() as u32),
            Atom::Poset(p) => Some(p.len() as u32),
            Atom::PolyIntegral { .. } => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Mzv(k) => write!(f, "zeta({k})"),
            Atom::Li(a) => write!(f, "Li{a}"),
            Atom::LiStar { exps, z } => {
                let e: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
                write!(f, "Li*({};{})", e.join(","), z)
            }
            Atom::LiXi(a) => write!(f, "LiXi{a}"),
            Atom::Zeta { s, sign } => write!(f, "zeta({})", *s as i64 * sign.as_i64()),
            Atom::Log(q) => write!(f, "log({})", q),
            Atom::Pi => f.write_str("pi"),
            Atom::Ky { ky, x } if x.is_one() => write!(f, "zeta({ky})"),
            Atom::Ky { ky, x } => write!(f, "zeta({ky}; x={})", x),
            Atom::Word(w) => write!(f, "I{w}"),
            Atom::Poset(p) => write!(f, "I(poset, {} nodes)", p.len()),
            Atom::PolyIntegral { p, poly, t } => {
                let c: Vec<String> = poly.iter().map(|c| c.to_string()).collect();
                write!(f, "J({p};[{}];{})", c.join(","), t)
            }
        }
    }
}

/// Product of atoms, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Atom>);

impl Monomial {
    pub fn new(mut atoms: Vec<Atom>) -> Self {
        atoms.sort();
        Monomial(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl TermKey for Monomial {
    fn key_text(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("*")
    }
}

/// Expression tree with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Rational),
    Atom(Atom),
    Sum(Vec<(Rational, Expr)>),
    Product(Vec<Expr>),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Sum(Vec::new())
    }

    pub fn one() -> Expr {
        Expr::Const(Rational::one())
    }

    pub fn constant(q: Rational) -> Expr {
        Expr::Const(q)
    }

    pub fn atom(a: Atom) -> Expr {
        Expr::Atom(a)
    }

    pub fn mzv(k: SignedIndex) -> Expr {
        Expr::Atom(Atom::Mzv(k))
    }

    pub fn zeta(s: u32, sign: Sign) -> Expr {
        Expr::Atom(Atom::Zeta { s, sign })
    }

    pub fn li(a: ArgumentedIndex) -> Expr {
        Expr::Atom(Atom::Li(a))
    }

    pub fn log2_power(i: u32) -> Expr {
        Expr::power(Atom::Log(Rational::from_integer(2.into())), i)
    }

    pub fn power(a: Atom, n: u32) -> Expr {
        if n == 0 {
            return Expr::one();
        }
        Expr::Product(vec![Expr::Atom(a); n as usize])
    }

    pub fn scaled(c: Rational, e: Expr) -> Expr {
        Expr::Sum(vec![(c, e)])
    }

    pub fn sum(terms: Vec<(Rational, Expr)>) -> Expr {
        Expr::Sum(terms)
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        Expr::Product(factors)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Expr) -> Expr {
        Expr::Sum(vec![(Rational::one(), self), (-Rational::one(), other)])
    }

    /// Every atom in the tree, without repetition.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Expr::Const(_) => {}
            Expr::Atom(a) => {
                out.insert(a.clone());
            }
            Expr::Sum(ts) => ts.iter().for_each(|(_, e)| e.collect_atoms(out)),
            Expr::Product(fs) => fs.iter().for_each(|e| e.collect_atoms(out)),
        }
    }

    /// Polynomial in atoms without any rewriting.
    pub fn expand(&self) -> FormalSum<Monomial> {
        match self {
            Expr::Const(q) => FormalSum::from_terms([(q.clone(), Monomial::default())]),
            Expr::Atom(a) => FormalSum::single(Monomial::new(vec![a.clone()])),
            Expr::Sum(ts) => {
                let mut out = FormalSum::new();
                for (c, e) in ts {
                    out.add_sum(&e.expand().scale(c));
                }
                out
            }
            Expr::Product(fs) => {
                fs.iter().fold(FormalSum::from_terms([(Rational::one(), Monomial::default())]), |acc, e| {
                    multiply(&acc, &e.expand())
                })
            }
        }
    }

    /// Polynomial in canonical atoms: words, posets, limits at ±1 and
    /// Kaneko–Yamamoto values at `x = 1` all become multiple zeta values.
    pub fn canonical(&self) -> Result<FormalSum<Monomial>> {
        let mut out = FormalSum::new();
        for (m, c) in self.expand().iter() {
            let mut acc = FormalSum::from_terms([(c.clone(), Monomial::default())]);
            for a in m.atoms() {
                acc = multiply(&acc, &canonical_atom(a)?);
            }
            out.add_sum(&acc);
        }
        Ok(out)
    }
}

fn multiply(a: &FormalSum<Monomial>, b: &FormalSum<Monomial>) -> FormalSum<Monomial> {
    let mut out = FormalSum::new();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_term(cx * cy, x.mul(y));
        }
    }
    out
}

fn single(c: Rational, a: Atom) -> FormalSum<Monomial> {
    FormalSum::from_terms([(c, Monomial::new(vec![a]))])
}

fn li_canonical(idx: &ArgumentedIndex, c: Rational) -> FormalSum<Monomial> {
    let unit = idx.args().iter().all(|z| z.abs().is_one());
    if unit {
        let parts =
            idx.exponents().iter().zip(idx.args()).map(|(&e, z)| Part::new(e, Sign::of(z.is_negative()))).collect();
        let k = SignedIndex::new(parts).expect("nonzero exponents");
        single(c, Atom::Mzv(k))
    } else {
        single(c, Atom::Li(idx.clone()))
    }
}

fn xi_to_li(idx: &ArgumentedIndex) -> Result<ArgumentedIndex> {
    let mut args = Vec::with_capacity(idx.depth());
    let mut prev = Rational::one();
    for z in idx.args() {
        args.push(z / &prev);
        prev = z.clone();
    }
    ArgumentedIndex::new(idx.exponents().to_vec(), args)
}

fn word_canonical(w: &Word, c: Rational) -> Result<FormalSum<Monomial>> {
    if w.is_empty() {
        return Ok(FormalSum::from_terms([(c, Monomial::default())]));
    }
    let (idx, factor) = word_to_index(w)?;
    Ok(li_canonical(&idx, c * factor))
}

pub fn canonical_atom(a: &Atom) -> Result<FormalSum<Monomial>> {
    let one = Rational::one();
    Ok(match a {
        Atom::Li(idx) => li_canonical(idx, one),
        Atom::LiXi(idx) => li_canonical(&xi_to_li(idx)?, one),
        Atom::Zeta { s, sign } => single(one, Atom::Mzv(SignedIndex::new(vec![Part::new(*s, *sign)])?)),
        Atom::LiStar { exps, z } if exps.len() > 1 => {
            let k = SignedIndex::positive(exps)?;
            let mut out = FormalSum::new();
            for (kp, c) in star_expand(&k).iter() {
                let mut args = vec![Rational::one(); kp.depth()];
                args[0] = z.clone();
                out.add_sum(&li_canonical(&ArgumentedIndex::new(kp.exponents(), args)?, c.clone()));
            }
            out
        }
        Atom::LiStar { exps, z } => li_canonical(&ArgumentedIndex::new(exps.clone(), vec![z.clone()])?, one),
        Atom::Ky { ky, x } if x.abs().is_one() => {
            ky.validate_at(x)?;
            let mut out = FormalSum::new();
            for (k, c) in ky.expand_terms().iter() {
                let mut parts = k.parts().to_vec();
                if x.is_negative() {
                    parts[0].sign = parts[0].sign * Sign::Minus;
                }
                out.add_term(c.clone(), Monomial::new(vec![Atom::Mzv(SignedIndex::new(parts)?)]));
            }
            out
        }
        Atom::Word(w) => word_canonical(w, one)?,
        Atom::Poset(p) => {
            let mut out = FormalSum::new();
            for (w, c) in p.extensions()?.iter() {
                out.add_sum(&word_canonical(w, c.clone())?);
            }
            out
        }
        other => single(one, other.clone()),
    })
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(q) => f.write_str(&q.to_string()),
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Sum(ts) if ts.is_empty() => f.write_str("0"),
            Expr::Sum(ts) => {
                for (i, (c, e)) in ts.iter().enumerate() {
                    let neg = c.is_negative();
                    let mag = c.abs();
                    match (i, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    match e {
                        Expr::Sum(inner) if inner.len() > 1 => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            Expr::Product(fs) if fs.is_empty() => f.write_str("1"),
            Expr::Product(fs) => {
                let s: Vec<String> = fs
                    .iter()
                    .map(|e| match e {
                        Expr::Sum(inner) if inner.len() > 1 => format!("({e})"),
                        _ => e.to_string(),
                    })
                    .collect();
                f.write_str(&s.join("*"))
            }
        }
    }
}

/// True when the canonical forms of the two expressions agree.
pub fn structurally_equal(a: &Expr, b: &Expr) -> Result<bool> {
    Ok((a.canonical()? - b.canonical()?).is_empty())
}

/// Coefficients of a canonical polynomial as a map from monomial text.
pub fn canonical_text(p: &FormalSum<Monomial>) -> String {
    if p.iter().all(|(_, c)| c.is_zero()) {
        return "0".into();
    }
    crate::formal::format_sum(p)
}
