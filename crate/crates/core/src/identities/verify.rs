//! Checking instances and collecting report records.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sample::random_params;
use super::{families, IdentityInstance, Mode, Params};
use crate::error::{Error, Result};
use crate::eval::{residual, Evaluator};
use crate::expr::{canonical_text, structurally_equal};

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub family: String,
    pub params: String,
    pub lhs_value: String,
    pub rhs_value: String,
    pub residual: Option<f64>,
    pub bound: Option<f64>,
    pub pass: bool,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl Report {
    pub fn id(&self) -> String {
        format!("{}[{}]", self.family, self.params)
    }

    fn failed(family: &str, params: &str, err: &Error) -> Report {
        Report {
            family: family.into(),
            params: params.into(),
            lhs_value: String::new(),
            rhs_value: String::new(),
            residual: None,
            bound: None,
            pass: false,
            notes: vec![format!("error: {err}")],
            millis: None,
        }
    }
}

/// Checks one instance; `tol` overrides the instance tolerance.
pub fn verify(inst: &IdentityInstance, ev: &Evaluator, tol: Option<f64>) -> Result<Report> {
    let mut notes = inst.notes.clone();
    let (lhs_value, rhs_value, res, bound, pass) = match inst.mode {
        Mode::Exact => {
            let l = inst.lhs.canonical()?;
            let r = inst.rhs.canonical()?;
            let ok = structurally_equal(&inst.lhs, &inst.rhs)?;
            (canonical_text(&l), canonical_text(&r), None, None, ok)
        }
        Mode::Numeric { tol: own } => {
            let tol = tol.unwrap_or(own);
            let l = ev.expr(&inst.lhs)?;
            let r = ev.expr(&inst.rhs)?;
            let (d, b) = residual(&l, &r);
            let ok = d < tol && b < tol;
            if !ok && b >= tol {
                notes.push(format!("error bound {b:.3e} exceeds tolerance {tol:.1e}"));
            }
            (l.to_decimal_auto(40), r.to_decimal_auto(40), Some(d), Some(b), ok)
        }
    };
    Ok(Report {
        family: inst.family.clone(),
        params: inst.params.to_string(),
        lhs_value,
        rhs_value,
        residual: res,
        bound,
        pass,
        notes,
        millis: None,
    })
}

/// Generates and checks; generator and evaluation errors become failing records.
pub fn verify_params(family: &str, params: &Params, ev: &Evaluator, tol: Option<f64>) -> Report {
    let start = Instant::now();
    let out = super::generate(family, params).and_then(|inst| verify(&inst, ev, tol));
    let mut rep = out.unwrap_or_else(|e| Report::failed(family, &params.to_string(), &e));
    rep.millis = Some(start.elapsed().as_millis());
    rep
}

/// Named grids.
pub const SUITES: &[(&str, &[&str])] = &[
    ("exact-algebra", &["STUFFLE", "STAR-EXPAND", "CIRCLED-TRUNCATION", "KY-TRUNCATION", "LEMMA-5.4", "CHAIN-2.2"]),
    ("bbb", &["BBB-4.1", "BBB-4.2", "BBB-4.3", "BBB-4.4", "BBB-A1", "BBB-A2"]),
    (
        "half",
        &[
            "EQ-4.5",
            "EQ-4.6",
            "EQ-4.7",
            "EQ-4.8",
            "EQ-4.9",
            "EQ-4.10",
            "EQ-4.14",
            "LISTAR-HALF",
            "EQ-B8",
            "ZETA-2BAR",
            "REL-2BAR",
            "REL-2BAR-2",
        ],
    ),
    ("thm34", &["THM-3.4", "THM-5.1"]),
    ("ky", &["THM-5.2", "COR-5.3", "KY-COLLAPSE", "THM-5.5", "KY-EXAMPLE", "EQ-5.10-K1", "EQ-5.10-K2"]),
    ("poset", &["INT-SERIES", "EQ-5.21-PRINTED"]),
    ("polylog", &["THM-2.2", "THM-2.3", "EQ-B4", "THM-2.4", "LEMMA-2.6"]),
    ("alt", &["THM-3.1", "COR-3.2", "LEMMA-3.3"]),
];

pub fn suite_families(name: &str) -> Result<Vec<&'static str>> {
    if name == "all" {
        return Ok(SUITES.iter().flat_map(|(_, f)| f.iter().copied()).collect());
    }
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, f)| f.to_vec()).ok_or_else(|| Error::UnknownSuite(name.into()))
}

/// Runs every default grid point of the named suite, sorted by instance id.
pub fn run_suite(name: &str, ev: &Evaluator, tol: Option<f64>) -> Result<Vec<Report>> {
    run_suite_seeded(name, ev, tol, None)
}

/// As `run_suite`; with `Some((seed, count))` every sampled family also gets
/// `count` random instances drawn from `seed`.
pub fn run_suite_seeded(
    name: &str,
    ev: &Evaluator,
    tol: Option<f64>,
    random: Option<(u64, usize)>,
) -> Result<Vec<Report>> {
    let wanted = suite_families(name)?;
    let fams = families();
    let mut rng = random.map(|(seed, _)| ChaCha8Rng::seed_from_u64(seed));
    let mut jobs = Vec::new();
    for id in wanted {
        let fam = fams.iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFamily(id.into()))?;
        jobs.extend((fam.grid)().into_iter().map(|p| (fam.id, p)));
        if let (Some(rng), Some((_, count))) = (rng.as_mut(), random) {
            for _ in 0..count {
                match random_params(fam.id, rng) {
                    Some(p) => jobs.push((fam.id, p)),
                    None => break,
                }
            }
        }
    }
    let mut out: Vec<Report> = jobs.par_iter().map(|(id, p)| verify_params(id, p, ev, tol)).collect();
    out.sort_by_key(|r| r.id());
    out.dedup_by_key(|r| r.id());
    Ok(out)
}

/// Diagnostic attached when a family that depends on the `ζ(p̄)` reading fails everywhere.
pub fn convention_diagnostic(reports: &[Report]) -> Option<String> {
    let a2: Vec<&Report> = reports.iter().filter(|r| r.family == "BBB-A2").collect();
    let fails = a2.iter().filter(|r| !r.pass).count();
    (fails > 1 && fails * 2 > a2.len()).then(|| {
        "BBB-A2 fails systematically: the correction terms use ζ(p̄) = Σ (-1)^n/n^p (so ζ(1̄) = -log 2); \
the identity Li_{{1}_j}(1/2) = -ζ(j̄) holds only for the star reading, so the sign convention \
of ζ(p̄) is the first suspect"
            .to_string()
    })
}
