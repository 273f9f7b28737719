use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(negative: bool) -> Self {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn pow(self, n: u64) -> Sign {
        Sign::of(self.is_minus() && n % 2 == 1)
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::of(self.is_minus() != rhs.is_minus())
    }
}

/// One entry of a signed index. Exponent zero only occurs transiently inside
/// the algebra (heads of `l` in circled products).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub exponent: u32,
    pub sign: Sign,
}

impl Part {
    pub fn new(exponent: u32, sign: Sign) -> Self {
        Part { exponent, sign }
    }

    pub fn plus(exponent: u32) -> Self {
        Part::new(exponent, Sign::Plus)
    }

    pub fn minus(exponent: u32) -> Self {
        Part::new(exponent, Sign::Minus)
    }

    pub fn from_signed(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::ZeroEntry);
        }
        Ok(Part::new(v.unsigned_abs() as u32, Sign::of(v < 0)))
    }

    pub fn to_signed(self) -> i64 {
        self.sign.as_i64() * self.exponent as i64
    }

    /// Exponents add, signs multiply.
    pub fn merge(self, other: Part) -> Part {
        Part::new(self.exponent + other.exponent, self.sign * other.sign)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SignedIndex(Vec<Part>);

impl SignedIndex {
    pub fn empty() -> Self {
        SignedIndex(Vec::new())
    }

    pub fn new(parts: Vec<Part>) -> Result<Self> {
        if parts.iter().any(|p| p.exponent == 0) {
            return Err(Error::ZeroEntry);
        }
        Ok(SignedIndex(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<Part>) -> Self {
        debug_assert!(parts.iter().all(|p| p.exponent > 0));
        SignedIndex(parts)
    }

    pub fn from_signed(values: &[i64]) -> Result<Self> {
        values.iter().map(|&v| Part::from_signed(v)).collect::<Result<Vec<_>>>().map(SignedIndex)
    }

    pub fn positive(exponents: &[u32]) -> Result<Self> {
        SignedIndex::new(exponents.iter().map(|&e| Part::plus(e)).collect())
    }

    pub fn parts(&self) -> &[Part] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<Part> {
        self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|p| p.exponent).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.0.iter().map(|p| p.exponent).collect()
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|p| p.to_signed()).collect()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|p| p.sign == Sign::Plus)
    }

    pub fn head(&self) -> Option<Part> {
        self.0.first().copied()
    }

    pub fn tail(&self) -> SignedIndex {
        SignedIndex(self.0.iter().skip(1).copied().collect())
    }

    pub fn concat(&self, other: &SignedIndex) -> SignedIndex {
        SignedIndex(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn prepend(&self, part: Part) -> SignedIndex {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(part);
        v.extend_from_slice(&self.0);
        SignedIndex(v)
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(self)
    }
}

impl TryFrom<&[i64]> for SignedIndex {
    type Error = Error;
    fn try_from(values: &[i64]) -> Result<Self> {
        SignedIndex::from_signed(values)
    }
}

/// Literal constructor for generators and tests; panics on a zero entry.
pub fn ix(values: &[i64]) -> SignedIndex {
    SignedIndex::from_signed(values).expect("literal index has a zero entry")
}

impl Ord for SignedIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .depth()
            .cmp(&self.depth())
            .then_with(|| self.0.iter().map(|p| p.exponent).cmp(other.0.iter().map(|p| p.exponent)))
            .then_with(|| self.0.iter().map(|p| p.sign).cmp(other.0.iter().map(|p| p.sign)))
    }
}

impl PartialOrd for SignedIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_index(self))
    }
}

impl FromStr for SignedIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_index(s)
    }
}

pub fn parse_index(text: &str) -> Result<SignedIndex> {
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t).trim();
    if t.is_empty() {
        return Ok(SignedIndex::empty());
    }
    t.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: i64 = tok.parse().map_err(|_| Error::MalformedToken(tok.to_string()))?;
            if v.unsigned_abs() > u32::MAX as u64 {
                return Err(Error::MalformedToken(tok.to_string()));
            }
            Part::from_signed(v)
        })
        .collect::<Result<Vec<_>>>()
        .map(SignedIndex)
}

pub fn format_index(idx: &SignedIndex) -> String {
    idx.0.iter().map(|p| p.to_signed().to_string()).collect::<Vec<_>>().join(",")
}

pub fn is_admissible(idx: &SignedIndex) -> bool {
    idx.head().is_none_or(|p| p != Part::plus(1))
}

pub fn repeat_block<T: Clone>(block: &[T], d: usize) -> Vec<T> {
    block.iter().cloned().cycle().take(block.len() * d).collect()
}

/// `a ⊡ {1}_{p-1} ⊡ b`: `(a, {1}_{p-1}, b)` for `p ≥ 1`, `(a + b - 1)` for `p = 0`.
pub fn box_join(a: i64, p: u32, b: i64) -> Result<Vec<i64>> {
    if a < 1 || b < 1 {
        return Err(Error::BoxJoinDomain { a, b });
    }
    Ok(if p == 0 {
        vec![a + b - 1]
    } else {
        let mut v = vec![a];
        v.extend(std::iter::repeat_n(1, p as usize - 1));
        v.push(b);
        v
    })
}

/// `a ◇ {1}_{p-1} ◇ b`: `(a, {1}_{p-1}, b)` for `p ≥ 1`, the product `(ab)` for `p = 0`.
pub fn diamond_join<T: Clone + One + Mul<Output = T>>(a: T, p: u32, b: T) -> Vec<T> {
    if p == 0 {
        vec![a * b]
    } else {
        let mut v = vec![a];
        v.extend(std::iter::repeat_n(T::one(), p as usize - 1));
        v.push(b);
        v
    }
}

/// Growing positive index built with repeated `⊡`; the head may start at 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoxChain(Vec<u32>);

impl BoxChain {
    pub fn start(head: u32) -> Self {
        BoxChain(vec![head])
    }

    pub fn join(mut self, p: u32, b: u32) -> Self {
        if p == 0 {
            let last = self.0.last_mut().expect("chain is never empty");
            *last = *last + b - 1;
        } else {
            self.0.extend(std::iter::repeat_n(1, p as usize - 1));
            self.0.push(b);
        }
        self
    }

    pub fn ones(mut self, n: usize) -> Self {
        self.0.extend(std::iter::repeat_n(1, n));
        self
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }
}

/// Exponents with rational arguments, `Li_{s_1..s_r}(z_1..z_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArgumentedIndex {
    exponents: Vec<u32>,
    args: Vec<Rational>,
}

impl ArgumentedIndex {
    pub fn new(exponents: Vec<u32>, args: Vec<Rational>) -> Result<Self> {
        if exponents.len() != args.len() {
            return Err(Error::Domain(format!("{} exponents but {} arguments", exponents.len(), args.len())));
        }
        if exponents.contains(&0) {
            return Err(Error::ZeroEntry);
        }
        if args.iter().any(|a| a == &Rational::default()) {
            return Err(Error::Domain("zero argument".into()));
        }
        Ok(ArgumentedIndex { exponents, args })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn args(&self) -> &[Rational] {
        &self.args
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }

    pub fn weight(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Partial products `z_1, z_1 z_2, ...` which drive the series.
    pub fn cumulative(&self) -> Vec<Rational> {
        self.args
            .iter()
            .scan(Rational::one(), |acc, z| {
                *acc = &*acc * z;
                Some(acc.clone())
            })
            .collect()
    }

    pub fn is_admissible(&self) -> bool {
        let b = self.cumulative();
        if b.iter().any(|x| x.abs() > Rational::one()) {
            return false;
        }
        !(self.exponents.first() == Some(&1) && b.first().is_some_and(|x| x.is_one()))
    }
}

impl fmt::Display for ArgumentedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        let a: Vec<String> = self.args.iter().map(|z| z.to_string()).collect();
        write!(f, "({};{})", e.join(","), a.join(","))
    }
}
