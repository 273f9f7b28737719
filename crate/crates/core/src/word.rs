use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal::TermKey;
use crate::index::ArgumentedIndex;
use crate::rational::{format_rational, parse_rational, Rational};

/// One-form `dt/t` or `dt/(1 - a t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Omega0,
    OmegaA(Rational),
}

impl Letter {
    pub fn w(a: Rational) -> Self {
        assert!(!a.is_zero(), "letter argument must be nonzero");
        Letter::OmegaA(a)
    }

    pub fn arg(&self) -> Option<&Rational> {
        match self {
            Letter::Omega0 => None,
            Letter::OmegaA(a) => Some(a),
        }
    }

    pub fn is_w1(&self) -> bool {
        matches!(self, Letter::OmegaA(a) if a.is_one())
    }

    /// Image under `t ↦ 1 - t` together with the scalar pulled out of the form.
    pub fn reflect(&self) -> (Rational, Letter) {
        match self {
            Letter::Omega0 => (Rational::one(), Letter::OmegaA(Rational::one())),
            Letter::OmegaA(a) if a.is_one() => (Rational::one(), Letter::Omega0),
            Letter::OmegaA(a) => {
                let one = Rational::one();
                ((&one / (&one - a)), Letter::OmegaA(a / (a - &one)))
            }
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Omega0 => f.write_str("0"),
            Letter::OmegaA(a) if a.is_integer() => write!(f, "{}", a.numer()),
            Letter::OmegaA(a) => f.write_str(&format_rational(a)),
        }
    }
}

/// Iterated integral over `0 < t_k < ... < t_1 < 1`; the leftmost letter is
/// the outermost variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Convergent on `[0,1]` with a power series at every point in `[0,1)`.
    pub fn check_admissible(&self) -> Result<()> {
        let Some(last) = self.0.last() else { return Ok(()) };
        if *last == Letter::Omega0 {
            return Err(Error::WordNotAdmissible(format!("{self}: ends with dt/t")));
        }
        if self.0[0].is_w1() {
            return Err(Error::WordNotAdmissible(format!("{self}: starts with dt/(1-t)")));
        }
        for l in &self.0 {
            if let Letter::OmegaA(a) = l {
                if a.abs() > Rational::one() {
                    return Err(Error::LetterOutOfRange(format_rational(a)));
                }
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }

    pub fn parse(text: &str) -> Result<Word> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() {
            return Ok(Word::default());
        }
        t.split(',')
            .map(|tok| {
                let q = parse_rational(tok)?;
                Ok(if q.is_zero() { Letter::Omega0 } else { Letter::OmegaA(q) })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl TermKey for Word {
    fn key_text(&self) -> String {
        self.to_string()
    }
}

/// Word `w_{a_1}^{m_1} Ω^{p_1} w_{a_2}^{m_2} ... Ω^{p_k} w_{a_{k+1}}^{m_{k+1}}`.
pub fn index_to_word(m: &[u32], p: &[u32], a: &[Rational]) -> Result<Word> {
    let k = p.len();
    if m.len() != k + 1 || a.len() != k + 1 {
        return Err(Error::Domain(format!("need {} m and a values for {} p values", k + 1, k)));
    }
    if m[1..].contains(&0) {
        return Err(Error::Domain("m_j must be positive for j >= 2".into()));
    }
    let one = Rational::one();
    for (j, aj) in a.iter().enumerate().filter(|(j, _)| m[*j] > 0) {
        if aj.is_zero() || aj.abs() > one || (j == 0 && aj.is_one()) {
            return Err(Error::Domain(format!("a_{} = {}", j + 1, format_rational(aj))));
        }
    }
    let mut letters = Vec::new();
    for j in 0..=k {
        letters.extend(std::iter::repeat_n(Letter::OmegaA(a[j].clone()), m[j] as usize));
        if j < k {
            letters.extend(std::iter::repeat_n(Letter::Omega0, p[j] as usize));
        }
    }
    Ok(Word(letters))
}

/// `I(w) = factor · Li_s(z)`; returns the index and the factor `1/Π b_j`.
pub fn word_to_index(w: &Word) -> Result<(ArgumentedIndex, Rational)> {
    w.check_admissible()?;
    let mut exps = Vec::new();
    let mut cumulative = Vec::new();
    let mut run = 0u32;
    for l in w.letters() {
        match l {
            Letter::Omega0 => run += 1,
            Letter::OmegaA(b) => {
                exps.push(run + 1);
                cumulative.push(b.clone());
                run = 0;
            }
        }
    }
    let mut args = Vec::with_capacity(cumulative.len());
    let mut prev = Rational::one();
    for b in &cumulative {
        args.push(b / &prev);
        prev = b.clone();
    }
    let prod = cumulative.iter().fold(Rational::one(), |acc, b| acc * b);
    let idx = ArgumentedIndex::new(exps, args)?;
    if !idx.is_admissible() {
        return Err(Error::WordNotAdmissible(w.to_string()));
    }
    Ok((idx, Rational::one() / prod))
}

/// `Li_s(z) = factor · I(word)` with the word's letters at the partial products of `z`.
pub fn argumented_to_word(idx: &ArgumentedIndex) -> (Word, Rational) {
    let mut letters = Vec::new();
    let b = idx.cumulative();
    for (e, bj) in idx.exponents().iter().zip(&b) {
        letters.extend(std::iter::repeat_n(Letter::Omega0, *e as usize - 1));
        letters.push(Letter::OmegaA(bj.clone()));
    }
    let prod = b.iter().fold(Rational::one(), |acc, x| acc * x);
    (Word(letters), prod)
}

/// Image of the word under `t ↦ 1 - t`: `I(w) = factor · I(reflected)`.
pub fn reflect_word(w: &Word) -> (Rational, Word) {
    let mut factor = Rational::one();
    let letters = w
        .letters()
        .iter()
        .rev()
        .map(|l| {
            let (c, nl) = l.reflect();
            factor *= c;
            nl
        })
        .collect();
    (factor, Word(letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn w(a: Rational) -> Letter {
        Letter::OmegaA(a)
    }

    #[test]
    fn zeta2_word() {
        let word = index_to_word(&[0, 1], &[1], &[int(1), int(1)]).unwrap();
        assert_eq!(word, Word::new(vec![Letter::Omega0, w(int(1))]));
        let (idx, f) = word_to_index(&word).unwrap();
        assert_eq!(idx.exponents(), &[2]);
        assert_eq!(idx.args(), &[int(1)]);
        assert_eq!(f, int(1));
    }

    #[test]
    fn alternating_word() {
        let word = index_to_word(&[1, 1], &[1], &[int(-1), int(-1)]).unwrap();
        assert_eq!(word, Word::new(vec![w(int(-1)), Letter::Omega0, w(int(-1))]));
        let (idx, f) = word_to_index(&word).unwrap();
        assert_eq!(idx.exponents(), &[1, 2]);
        assert_eq!(idx.args(), &[int(-1), int(1)]);
        assert_eq!(f, int(1));
    }

    #[test]
    fn half_letter_prefactor() {
        let (idx, f) = word_to_index(&Word::new(vec![w(rat(1, 2))])).unwrap();
        assert_eq!(idx.exponents(), &[1]);
        assert_eq!(f, int(2));
    }

    #[test]
    fn zero_m1_collapses() {
        let word = index_to_word(&[0, 2], &[1], &[rat(1, 3), rat(1, 2)]).unwrap();
        let (idx, _) = word_to_index(&word).unwrap();
        assert_eq!(idx.exponents(), &[2, 1]);
        assert_eq!(idx.args(), &[rat(1, 2), int(1)]);
    }

    #[test]
    fn round_trip_through_index() {
        let word = index_to_word(&[2, 1, 3], &[0, 2], &[rat(-1, 2), rat(1, 3), int(1)]).unwrap();
        let (idx, f) = word_to_index(&word).unwrap();
        let (back, g) = argumented_to_word(&idx);
        assert_eq!(back, word);
        assert_eq!(f * g, int(1));
    }

    #[test]
    fn reflection_is_involution() {
        let word = Word::new(vec![Letter::Omega0, w(rat(-1, 1)), w(rat(1, 3)), w(int(1))]);
        let (c1, r1) = reflect_word(&word);
        let (c2, r2) = reflect_word(&r1);
        assert_eq!(r2, word);
        assert_eq!(c1 * c2, int(1));
        let (c, r) = reflect_word(&Word::new(vec![Letter::Omega0, w(int(1))]));
        assert_eq!(c, int(1));
        assert_eq!(r, Word::new(vec![Letter::Omega0, w(int(1))]));
    }

    #[test]
    fn minus_one_reflects_to_half() {
        let (c, l) = w(int(-1)).reflect();
        assert_eq!(c, rat(1, 2));
        assert_eq!(l, w(rat(1, 2)));
    }

    #[test]
    fn admissibility() {
        assert!(!Word::new(vec![w(int(1))]).is_admissible());
        assert!(!Word::new(vec![w(int(-1)), Letter::Omega0]).is_admissible());
        assert!(Word::new(vec![w(int(-1))]).is_admissible());
        assert!(Word::parse("[0,1]").unwrap().is_admissible());
    }
}
