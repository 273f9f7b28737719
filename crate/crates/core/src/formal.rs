use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::index::SignedIndex;
use crate::rational::Rational;

/// Rational linear combination kept in canonical form: equal keys merged,
/// zero coefficients dropped, keys in their `Ord` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSum<T: Ord> {
    terms: BTreeMap<T, Rational>,
}

impl<T: Ord> Default for FormalSum<T> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> FormalSum<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: T) -> Self {
        let mut s = Self::new();
        s.add_term(Rational::one(), key);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Rational, T)>>(terms: I) -> Self {
        let mut s = Self::new();
        for (c, k) in terms {
            s.add_term(c, k);
        }
        s
    }

    pub fn add_term(&mut self, coeff: Rational, key: T) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_sum(&mut self, other: &FormalSum<T>) {
        for (k, c) in &other.terms {
            self.add_term(c.clone(), k.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FormalSum::from_terms(self.terms.iter().map(|(k, v)| (v * c, k.clone())))
    }

    pub fn map_keys<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> FormalSum<U> {
        FormalSum::from_terms(self.terms.iter().map(|(k, v)| (v.clone(), f(k))))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &T) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sum of coefficients; the term multiplicity when all are positive integers.
    pub fn total_weight(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }
}

impl<T: Ord + Clone> Add for FormalSum<T> {
    type Output = FormalSum<T>;
    fn add(mut self, rhs: Self) -> Self {
        self.add_sum(&rhs);
        self
    }
}

impl<T: Ord + Clone> Neg for FormalSum<T> {
    type Output = FormalSum<T>;
    fn neg(self) -> Self {
        self.scale(&-Rational::one())
    }
}

impl<T: Ord + Clone> Sub for FormalSum<T> {
    type Output = FormalSum<T>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ord + Clone> FromIterator<(Rational, T)> for FormalSum<T> {
    fn from_iter<I: IntoIterator<Item = (Rational, T)>>(iter: I) -> Self {
        FormalSum::from_terms(iter)
    }
}

/// Text for a key inside a formal sum, e.g. `(1,-2)`.
pub trait TermKey {
    fn key_text(&self) -> String;
}

impl TermKey for SignedIndex {
    fn key_text(&self) -> String {
        format!("({})", self)
    }
}

pub fn format_sum<T: Ord + Clone + TermKey>(s: &FormalSum<T>) -> String {
    if s.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in s.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{}*", mag));
        }
        out.push_str(&k.key_text());
    }
    out
}

impl<T: Ord + Clone + TermKey> fmt::Display for FormalSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sum(self))
    }
}
