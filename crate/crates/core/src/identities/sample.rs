//! Seeded random parameters for families that accept arbitrary small inputs.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Params;

/// Signed index with depth in `1..=max_depth` and weight at most `max_weight`.
pub fn random_index(rng: &mut ChaCha8Rng, max_depth: usize, max_weight: u32) -> Vec<i64> {
    let depth = rng.gen_range(1..=max_depth.min(max_weight as usize));
    let mut budget = max_weight - depth as u32;
    (0..depth)
        .map(|_| {
            let extra = rng.gen_range(0..=budget);
            budget -= extra;
            let e = i64::from(1 + extra);
            if rng.gen_bool(0.5) {
                -e
            } else {
                e
            }
        })
        .collect()
}

fn list(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// Families with a sampler.
pub const SAMPLED: &[&str] = &["STUFFLE", "STAR-EXPAND", "CIRCLED-TRUNCATION", "KY-TRUNCATION", "LEMMA-5.4", "EQ-B4"];

/// One random parameter set, or `None` when the family has no sampler.
pub fn random_params(family: &str, rng: &mut ChaCha8Rng) -> Option<Params> {
    let p = match family {
        "STUFFLE" => Params::new()
            .with("u", &random_index(rng, 3, 6))
            .with("v", &random_index(rng, 3, 6))
            .with("n", &[rng.gen_range(1..=30)]),
        "STAR-EXPAND" => Params::new().with("k", &random_index(rng, 3, 6)).with("n", &[rng.gen_range(1..=30)]),
        "CIRCLED-TRUNCATION" => {
            Params::new().with("k", &random_index(rng, 3, 6)).with("l", &random_index(rng, 3, 6)).with("n", &[30])
        }
        "KY-TRUNCATION" => {
            let mut l = random_index(rng, 3, 6);
            if rng.gen_bool(0.5) {
                l.insert(0, 0);
            }
            Params::new().with("k", &random_index(rng, 3, 6)).with("l", &l).with("n", &[30])
        }
        "LEMMA-5.4" => Params::new().with("p", &[rng.gen_range(1..=8)]).with("seed", &[rng.gen_range(0..=64)]),
        "EQ-B4" => {
            let k = rng.gen_range(1..=3);
            let mut m = vec![rng.gen_range(0..=2)];
            m.extend(list(rng, k, 1, 2));
            Params::new().with("m", &m).with("p", &list(rng, k, 0, 2))
        }
        _ => return None,
    };
    Some(p)
}
