use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::word::{Letter, Word};

pub const MAX_NODES: usize = 64;
pub const EXTENSION_CAP: u64 = 1_000_000;

/// Finite labelled poset; `above[x]` is the bitmask of all `y` with `x < y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    labels: Vec<Letter>,
    above: Vec<u64>,
}

/// How the next incomparable pair is chosen during pair decomposition.
#[derive(Clone, Copy, Debug)]
pub enum SplitOrder {
    First,
    Last,
    Seeded(u64),
}

impl Poset {
    /// `relations` lists pairs `(lo, hi)` meaning `lo < hi`.
    pub fn new(labels: Vec<Letter>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_NODES {
            return Err(Error::PosetFormat(format!("at most {MAX_NODES} nodes supported")));
        }
        if let Some(Letter::OmegaA(a)) = labels.iter().find(|l| matches!(l, Letter::OmegaA(a) if a.is_zero())) {
            return Err(Error::PosetFormat(format!("label {a} is not a valid argument")));
        }
        let mut above = vec![0u64; n];
        for &(lo, hi) in relations {
            if lo >= n || hi >= n {
                return Err(Error::PosetFormat(format!("relation ({lo}, {hi}) out of range")));
            }
            above[lo] |= 1 << hi;
        }
        for k in 0..n {
            for i in 0..n {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        if (0..n).any(|i| above[i] >> i & 1 == 1) {
            return Err(Error::PosetCycle);
        }
        Ok(Poset { labels, above })
    }

    /// Totally ordered poset whose top element is `word[0]`.
    pub fn chain(word: &Word) -> Self {
        let n = word.len();
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i, i - 1)).collect();
        Poset::new(word.letters().to_vec(), &rel).expect("a chain is acyclic")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Letter] {
        &self.labels
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a] >> b & 1 == 1
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b) || self.less(b, a)
    }

    fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    fn below_mask(&self, x: usize) -> u64 {
        (0..self.len()).filter(|&y| self.less(y, x)).fold(0, |m, y| m | 1 << y)
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.above[x] == 0).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.below_mask(x) == 0).collect()
    }

    pub fn check_admissible(&self) -> Result<()> {
        if let Some(x) = self.maximal().into_iter().find(|&x| self.labels[x].is_w1()) {
            return Err(Error::PosetNotAdmissible(format!("maximal element {x} has label 1")));
        }
        if let Some(x) = self.minimal().into_iter().find(|&x| self.labels[x] == Letter::Omega0) {
            return Err(Error::PosetNotAdmissible(format!("minimal element {x} has label 0")));
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }

    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|a| (a + 1..self.len()).all(|b| self.comparable(a, b)))
    }

    fn available(&self, mask: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| mask >> x & 1 == 1 && self.above[x] & mask == 0)
    }

    /// Number of linear extensions, by memoized counting over down-sets.
    pub fn count_extensions(&self) -> u64 {
        fn go(p: &Poset, mask: u64, memo: &mut HashMap<u64, u64>) -> u64 {
            if mask == 0 {
                return 1;
            }
            if let Some(&c) = memo.get(&mask) {
                return c;
            }
            let xs: Vec<usize> = p.available(mask).collect();
            let c = xs.into_iter().fold(0u64, |acc, x| acc.saturating_add(go(p, mask & !(1 << x), memo)));
            memo.insert(mask, c);
            c
        }
        go(self, self.full_mask(), &mut HashMap::new())
    }

    /// One word per linear extension, read from the top element down.
    pub fn extensions(&self) -> Result<FormalSum<Word>> {
        self.check_admissible()?;
        let count = self.count_extensions();
        if count > EXTENSION_CAP {
            return Err(Error::TooManyExtensions(EXTENSION_CAP));
        }
        fn go(p: &Poset, mask: u64, memo: &mut HashMap<u64, FormalSum<Word>>) -> FormalSum<Word> {
            if mask == 0 {
                return FormalSum::single(Word::default());
            }
            if let Some(s) = memo.get(&mask) {
                return s.clone();
            }
            let mut out = FormalSum::new();
            let xs: Vec<usize> = p.available(mask).collect();
            for x in xs {
                let head = Word::new(vec![p.labels[x].clone()]);
                let rest = go(p, mask & !(1 << x), memo);
                for (w, c) in rest.iter() {
                    out.add_term(c.clone(), head.concat(w));
                }
            }
            memo.insert(mask, out.clone());
            out
        }
        Ok(go(self, self.full_mask(), &mut HashMap::new()))
    }

    /// Adjoin `a < b`.
    pub fn adjoin(&self, a: usize, b: usize) -> Poset {
        let mut above = self.above.clone();
        let up_b = above[b] | 1 << b;
        let low_a = self.below_mask(a) | 1 << a;
        for (x, row) in above.iter_mut().enumerate() {
            if low_a >> x & 1 == 1 {
                *row |= up_b;
            }
        }
        Poset { labels: self.labels.clone(), above }
    }

    fn total_word(&self) -> Word {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&x| std::cmp::Reverse(self.below_mask(x).count_ones()));
        Word::new(idx.into_iter().map(|x| self.labels[x].clone()).collect())
    }

    /// Recursive splitting `I(X) = I(X^b_a) + I(X^a_b)` until every piece is a chain.
    pub fn decompose(&self, order: SplitOrder) -> Result<FormalSum<Word>> {
        self.check_admissible()?;
        if self.count_extensions() > EXTENSION_CAP {
            return Err(Error::TooManyExtensions(EXTENSION_CAP));
        }
        let mut rng = match order {
            SplitOrder::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
            _ => None,
        };
        let mut out = FormalSum::new();
        let mut stack = vec![self.clone()];
        while let Some(p) = stack.pop() {
            let mut pairs: Vec<(usize, usize)> = (0..p.len())
                .flat_map(|a| (a + 1..p.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| !p.comparable(a, b))
                .collect();
            if pairs.is_empty() {
                out.add_term(Rational::one(), p.total_word());
                continue;
            }
            let (a, b) = match order {
                SplitOrder::First => pairs[0],
                SplitOrder::Last => pairs[pairs.len() - 1],
                SplitOrder::Seeded(_) => {
                    pairs.shuffle(rng.as_mut().expect("seeded"));
                    pairs[0]
                }
            };
            stack.push(p.adjoin(a, b));
            stack.push(p.adjoin(b, a));
        }
        Ok(out)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeJson {
    id: String,
    label: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct PosetJson {
    nodes: Vec<NodeJson>,
    cover: Vec<(String, String)>,
    #[serde(default)]
    alphas: BTreeMap<String, String>,
}

/// Parses `{"nodes":[{"id","label"}],"cover":[[a,b]],"alphas":{"a1":"-1"}}`;
/// each cover pair `[a, b]` states `a < b`.
pub fn parse_poset_json(text: &str) -> Result<Poset> {
    let raw: PosetJson = serde_json::from_str(text).map_err(|e| Error::PosetFormat(e.to_string()))?;
    let mut alphas = BTreeMap::new();
    for (k, v) in &raw.alphas {
        alphas.insert(k.clone(), parse_rational(v)?);
    }
    let mut ids = HashMap::new();
    let mut labels = Vec::new();
    for (i, node) in raw.nodes.iter().enumerate() {
        if ids.insert(node.id.clone(), i).is_some() {
            return Err(Error::PosetFormat(format!("duplicate node id `{}`", node.id)));
        }
        let label = match node.label.as_str() {
            "0" => Letter::Omega0,
            "1" => Letter::OmegaA(Rational::one()),
            name => {
                let a = alphas.get(name).ok_or_else(|| Error::PosetFormat(format!("unknown label `{name}`")))?;
                let one = Rational::one();
                if a.is_zero() || *a >= one || *a < -one {
                    return Err(Error::PosetFormat(format!("label {name} = {} outside [-1,1)", format_rational(a))));
                }
                Letter::OmegaA(a.clone())
            }
        };
        labels.push(label);
    }
    let lookup = |id: &String| ids.get(id).copied().ok_or_else(|| Error::PosetFormat(format!("unknown node `{id}`")));
    let rel = raw.cover.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>>>()?;
    Poset::new(labels, &rel)
}

/// Inverse of [`parse_poset_json`] with node ids `x0, x1, ...`.
pub fn poset_to_json(p: &Poset) -> String {
    let mut alphas = BTreeMap::new();
    let mut alpha_names: BTreeMap<Rational, String> = BTreeMap::new();
    let nodes: Vec<NodeJson> = p
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let label = match l {
                Letter::Omega0 => "0".to_string(),
                Letter::OmegaA(a) if a.is_one() => "1".to_string(),
                Letter::OmegaA(a) => {
                    let next = format!("a{}", alpha_names.len() + 1);
                    let name = alpha_names.entry(a.clone()).or_insert(next).clone();
                    alphas.insert(name.clone(), format_rational(a));
                    name
                }
            };
            NodeJson { id: format!("x{i}"), label }
        })
        .collect();
    let mut cover = Vec::new();
    for a in 0..p.len() {
        for b in 0..p.len() {
            let covers = p.less(a, b) && !(0..p.len()).any(|c| p.less(a, c) && p.less(c, b));
            if covers {
                cover.push((format!("x{a}"), format!("x{b}")));
            }
        }
    }
    serde_json::to_string_pretty(&PosetJson { nodes, cover, alphas }).expect("serializable")
}

/// Chain for `Li^Ξ_k(α)/(α_1...α_r)`: top to bottom `Ω^{k_1-1} w_{α_1} ... Ω^{k_r-1} w_{α_r}`.
pub fn xi_chain_word(k: &[u32], alpha: &[Rational]) -> Word {
    let mut letters = Vec::new();
    for (e, a) in k.iter().zip(alpha) {
        letters.extend(std::iter::repeat_n(Letter::Omega0, *e as usize - 1));
        letters.push(Letter::OmegaA(a.clone()));
    }
    Word::new(letters)
}

/// Two-column diagram of the integral-series relation: a main chain carrying
/// `(α', k)` topped by `l_1` zeros, and blocks `• ∘^{l_j - 1}` for `j ≥ 2`
/// whose bottom lies under the top of the previous block.
pub fn integral_series_poset(k: &[u32], alpha: &[Rational], l: &[u32]) -> Result<Poset> {
    if k.is_empty() || l.is_empty() || k.len() != alpha.len() {
        return Err(Error::EmptyOperand);
    }
    let mut cumulative = Vec::with_capacity(alpha.len());
    let mut acc = Rational::one();
    for a in alpha {
        acc *= a;
        cumulative.push(acc.clone());
    }
    let mut top_down = vec![Letter::Omega0; l[0] as usize];
    top_down.extend(xi_chain_word(k, &cumulative).letters().iter().cloned());
    let mut labels: Vec<Letter> = top_down.iter().rev().cloned().collect();
    let mut rel: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
    let mut prev_top = labels.len() - 1;
    for &lj in &l[1..] {
        let bottom = labels.len();
        labels.push(Letter::OmegaA(Rational::one()));
        for _ in 1..lj {
            let i = labels.len();
            labels.push(Letter::Omega0);
            rel.push((i - 1, i));
        }
        rel.push((bottom, prev_top));
        prev_top = labels.len() - 1;
    }
    Poset::new(labels, &rel)
}
