use std::collections::HashMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::index::{Part, Sign, SignedIndex};
use crate::rational::Rational;

type Parts = Vec<Part>;

fn stuffle_parts(a: &[Part], b: &[Part], memo: &mut HashMap<(usize, usize), Vec<(Parts, u64)>>) -> Vec<(Parts, u64)> {
    if a.is_empty() {
        return vec![(b.to_vec(), 1)];
    }
    if b.is_empty() {
        return vec![(a.to_vec(), 1)];
    }
    let key = (a.len(), b.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut out = Vec::new();
    let prefix = |head: Part, rest: Vec<(Parts, u64)>, out: &mut Vec<(Parts, u64)>| {
        for (mut p, c) in rest {
            p.insert(0, head);
            out.push((p, c));
        }
    };
    let r1 = stuffle_parts(&a[1..], b, memo);
    prefix(a[0], r1, &mut out);
    let r2 = stuffle_parts(a, &b[1..], memo);
    prefix(b[0], r2, &mut out);
    let r3 = stuffle_parts(&a[1..], &b[1..], memo);
    prefix(a[0].merge(b[0]), r3, &mut out);
    memo.insert(key, out.clone());
    out
}

fn collect(terms: Vec<(Parts, u64)>) -> FormalSum<SignedIndex> {
    terms.into_iter().map(|(p, c)| (Rational::from_integer(c.into()), SignedIndex::from_parts_unchecked(p))).collect()
}

/// Harmonic (stuffle) product; merged entries add exponents and multiply signs.
pub fn stuffle(k: &SignedIndex, l: &SignedIndex) -> FormalSum<SignedIndex> {
    collect(stuffle_parts(k.parts(), l.parts(), &mut HashMap::new()))
}

pub fn stuffle_sums(a: &FormalSum<SignedIndex>, b: &FormalSum<SignedIndex>) -> FormalSum<SignedIndex> {
    let mut out = FormalSum::new();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            out.add_sum(&stuffle(u, v).scale(&(cu * cv)));
        }
    }
    out
}

/// Every way of replacing each gap by `,` or by a merge. Exponent 0 is allowed.
pub(crate) fn star_parts(parts: &[Part]) -> Vec<Parts> {
    if parts.is_empty() {
        return vec![Vec::new()];
    }
    let gaps = parts.len() - 1;
    (0u64..1 << gaps)
        .map(|mask| {
            let mut out = vec![parts[0]];
            for (g, p) in parts[1..].iter().enumerate() {
                if mask >> g & 1 == 1 {
                    let last = out.last_mut().expect("nonempty");
                    *last = last.merge(*p);
                } else {
                    out.push(*p);
                }
            }
            out
        })
        .collect()
}

pub fn star_expand(k: &SignedIndex) -> FormalSum<SignedIndex> {
    star_parts(k.parts()).into_iter().map(|p| (Rational::one(), SignedIndex::from_parts_unchecked(p))).collect()
}

fn circled_parts(k: &[Part], l: &[Part]) -> Vec<(Parts, u64)> {
    let head = k[0].merge(l[0]);
    stuffle_parts(&k[1..], &l[1..], &mut HashMap::new())
        .into_iter()
        .map(|(mut p, c)| {
            p.insert(0, head);
            (p, c)
        })
        .collect()
}

/// `k ⊛ l`: heads merged, tails stuffled.
pub fn circled_star(k: &SignedIndex, l: &SignedIndex) -> Result<FormalSum<SignedIndex>> {
    if k.is_empty() || l.is_empty() {
        return Err(Error::EmptyOperand);
    }
    Ok(collect(circled_parts(k.parts(), l.parts())))
}

/// Data of a value `ζ(k ⊛ l⋆)` where the head of `l` may have exponent 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct KyIndex {
    pub k: SignedIndex,
    pub l_head: u32,
    pub l_head_sign: Sign,
    pub l_tail: SignedIndex,
}

impl KyIndex {
    pub fn new(k: SignedIndex, l: SignedIndex) -> Result<Self> {
        let head = l.head().ok_or(Error::EmptyOperand)?;
        Ok(KyIndex { k, l_head: head.exponent, l_head_sign: head.sign, l_tail: l.tail() })
    }

    pub fn with_zero_head(k: SignedIndex, l_tail: SignedIndex) -> Self {
        KyIndex { k, l_head: 0, l_head_sign: Sign::Plus, l_tail }
    }

    pub fn l_parts(&self) -> Vec<Part> {
        let mut v = vec![Part::new(self.l_head, self.l_head_sign)];
        v.extend_from_slice(self.l_tail.parts());
        v
    }

    pub fn head(&self) -> Part {
        self.k.parts()[0].merge(Part::new(self.l_head, self.l_head_sign))
    }

    pub fn validate(&self) -> Result<()> {
        if self.k.is_empty() {
            return Err(Error::EmptyOperand);
        }
        if self.head() == Part::plus(1) {
            return Err(Error::NotAdmissible(format!("{}", self)));
        }
        Ok(())
    }

    /// Convergence of the series weighted by `x^n`.
    pub fn validate_at(&self, x: &Rational) -> Result<()> {
        if self.k.is_empty() {
            return Err(Error::EmptyOperand);
        }
        let head = self.head();
        let lead = if head.sign.is_minus() { -x.clone() } else { x.clone() };
        if head.exponent == 1 && lead.is_one() {
            return Err(Error::NotAdmissible(format!("{}", self)));
        }
        Ok(())
    }

    /// `ζ(k ⊛ l⋆) = Σ_{l' ∈ l⋆} ζ(k ⊛ l')` as a formal sum of indices.
    pub fn expand(&self) -> Result<FormalSum<SignedIndex>> {
        self.validate()?;
        Ok(self.expand_terms())
    }

    /// The same expansion without the convergence check.
    pub fn expand_terms(&self) -> FormalSum<SignedIndex> {
        let mut out = FormalSum::new();
        for lp in star_parts(&self.l_parts()) {
            out.add_sum(&collect(circled_parts(self.k.parts(), &lp)));
        }
        out
    }
}

impl std::fmt::Display for KyIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let head = self.l_head as i64 * self.l_head_sign.as_i64();
        let mut l = vec![head.to_string()];
        if self.l_head == 0 && self.l_head_sign.is_minus() {
            l[0] = "-0".to_string();
        }
        l.extend(self.l_tail.to_signed().iter().map(|v| v.to_string()));
        write!(f, "({})*({})*", self.k, l.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::ix;
    use crate::rational::int;

    #[test]
    fn stuffle_small() {
        assert_eq!(stuffle(&ix(&[1]), &ix(&[1])).to_string(), "2*(1,1) + (2)");
        let s = stuffle(&ix(&[-1]), &ix(&[-1]));
        assert_eq!(s.coeff(&ix(&[-1, -1])), int(2));
        assert_eq!(s.coeff(&ix(&[2])), int(1));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn stuffle_depth_one_by_two() {
        let s = stuffle(&ix(&[1]), &ix(&[2, 3]));
        let expected = [ix(&[1, 2, 3]), ix(&[2, 1, 3]), ix(&[2, 3, 1]), ix(&[3, 3]), ix(&[2, 4])];
        assert_eq!(s.len(), 5);
        for e in expected {
            assert_eq!(s.coeff(&e), int(1));
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_expand(&ix(&[2, 1])).to_string(), "(2,1) + (3)");
        let s = star_expand(&ix(&[1, 1, 1]));
        assert_eq!(s.len(), 4);
        for e in [ix(&[1, 1, 1]), ix(&[2, 1]), ix(&[1, 2]), ix(&[3])] {
            assert_eq!(s.coeff(&e), int(1));
        }
        assert_eq!(star_expand(&SignedIndex::empty()).to_string(), "()");
    }

    #[test]
    fn circled_examples() {
        assert_eq!(circled_star(&ix(&[2]), &ix(&[1])).unwrap().to_string(), "(3)");
        assert_eq!(circled_star(&ix(&[2, 1]), &ix(&[1, 1])).unwrap().to_string(), "2*(3,1,1) + (3,2)");
        assert_eq!(circled_star(&ix(&[]), &ix(&[1])), Err(Error::EmptyOperand));
    }

    #[test]
    fn ky_zero_head_expands() {
        let ky = KyIndex::with_zero_head(ix(&[3, 2]), ix(&[2, 2]));
        let e = ky.expand().unwrap();
        assert!(e.iter().all(|(k, _)| k.weight() == 9));
    }

    #[test]
    fn ky_single_collapses() {
        let ky = KyIndex::new(ix(&[2]), ix(&[1])).unwrap();
        assert_eq!(ky.expand().unwrap().to_string(), "(3)");
    }
}
