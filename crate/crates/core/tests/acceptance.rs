use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyzeta::algebra::{circled_star, star_expand, stuffle, KyIndex};
use polyzeta::bigfloat::BigFloat;
use polyzeta::eval::{residual, Evaluator};
use polyzeta::expr::{structurally_equal, Atom};
use polyzeta::finite::{circled_partial_sum, eval_formal_sum, ky_partial_sum, mhs_eval, mhss_eval};
use polyzeta::identities::exact::random_lemma54_input;
use polyzeta::identities::integral::{depth3_explicit, depth3_sides};
use polyzeta::identities::ky::ky_example_closed_form;
use polyzeta::identities::sample::{random_index, random_params};
use polyzeta::identities::verify::{convention_diagnostic, verify_params, Report};
use polyzeta::identities::{find, generate, invert_lemma54, lemma54_forward, Params};
use polyzeta::poset::{xi_chain_word, Poset};
use polyzeta::rational::{int, rat};
use polyzeta::word::Letter;
use polyzeta::{ix, ArgumentedIndex, Rational, Sign, SignedIndex};

const SEED: u64 = 20_240_601;
const TOL: f64 = 1e-20;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn index(rng: &mut ChaCha8Rng) -> SignedIndex {
    SignedIndex::from_signed(&random_index(rng, 3, 6)).expect("nonzero entries")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: &BigFloat, b: &BigFloat, tol: f64, what: &str) -> Result<(), String> {
    let (d, bound) = residual(a, b);
    ensure(d < tol && bound < tol, || format!("{what}: residual {d:.3e} bound {bound:.3e}"))
}

fn run_grid(family: &str, ev: &Evaluator, tol: Option<f64>) -> Result<Vec<Report>, String> {
    let fam = find(family).map_err(|e| e.to_string())?;
    Ok((fam.grid)().iter().map(|p| verify_params(fam.id, p, ev, tol)).collect())
}

fn all_pass(reports: &[Report]) -> Result<(), String> {
    match reports.iter().find(|r| !r.pass) {
        Some(r) => Err(format!("{} failed: residual {:?} bound {:?} {:?}", r.id(), r.residual, r.bound, r.notes)),
        None => Ok(()),
    }
}

fn worst(reports: &[Report]) -> f64 {
    reports.iter().filter_map(|r| r.residual).fold(0.0, f64::max)
}

fn stuffle_homomorphism() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(1);
    for _ in 0..200 {
        let (u, v, n) = (index(&mut rng), index(&mut rng), rng.gen_range(1..=30));
        let lhs = eval_formal_sum(n, &stuffle(&u, &v));
        ensure(lhs == mhs_eval(n, &u) * mhs_eval(n, &v), || format!("{u} * {v} at n = {n}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!("200 pairs in {secs:.2} s"))
}

fn star_expansion() -> Outcome {
    let mut rng = rng(2);
    for _ in 0..100 {
        let (k, n) = (index(&mut rng), rng.gen_range(1..=30));
        ensure(mhss_eval(n, &k) == eval_formal_sum(n, &star_expand(&k)), || format!("{k} at n = {n}"))?;
    }
    Ok("100 indices".into())
}

fn truncation() -> Outcome {
    let mut rng = rng(3);
    for _ in 0..50 {
        let (k, l) = (index(&mut rng), index(&mut rng));
        let ky = KyIndex::new(k.clone(), l.clone()).map_err(|e| e.to_string())?;
        let circled = circled_star(&k, &l).map_err(|e| e.to_string())?;
        ensure(circled_partial_sum(30, &ky) == eval_formal_sum(30, &circled), || format!("{k} ⊛ {l}"))?;
        ensure(ky_partial_sum(30, &ky) == eval_formal_sum(30, &ky.expand_terms()), || format!("{k} ⊛ {l}⋆"))?;
    }
    Ok("50 pairs, both products, N = 30".into())
}

fn bbb_grid(ev: &Evaluator) -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for fam in ["BBB-4.1", "BBB-4.2", "BBB-4.3", "BBB-4.4"] {
        let r = run_grid(fam, ev, Some(TOL))?;
        ensure(r.len() == 9, || format!("{fam} grid has {} points", r.len()))?;
        reports.extend(r);
    }
    all_pass(&reports)?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} instances, worst residual {:.1e}, {secs:.1} s", reports.len(), worst(&reports)))
}

fn substring_sign(ev: &Evaluator) -> Outcome {
    let mut reports = run_grid("BBB-A1", ev, Some(TOL))?;
    reports.extend(run_grid("BBB-A2", ev, Some(TOL))?);
    if let Some(diag) = convention_diagnostic(&reports) {
        return Err(format!("diagnostic: {diag}"));
    }
    all_pass(&reports)?;
    Ok(format!("{} instances, worst residual {:.1e}", reports.len(), worst(&reports)))
}

fn ky_closed_form(ev: &Evaluator) -> Outcome {
    let closed = ev.expr(&ky_example_closed_form()).map_err(|e| e.to_string())?;
    let reduced = generate("THM-5.5", &Params::parse("k=1:2,m=1:1").unwrap()).map_err(|e| e.to_string())?;
    let rhs = ev.expr(&reduced.rhs).map_err(|e| e.to_string())?;
    close(&rhs, &closed, TOL, "reduction")?;
    let ky = KyIndex { k: ix(&[3, 2]), l_head: 0, l_head_sign: Sign::Plus, l_tail: ix(&[2, 2]) };
    let one = Rational::from_integer(1.into());
    close(&ev.ky(&ky, &one).map_err(|e| e.to_string())?, &closed, TOL, "series")?;
    let (direct, tail) = Evaluator::ky_direct_f64(&ky, &one, 1_000_000).map_err(|e| e.to_string())?;
    let gap = (direct - closed.to_f64()).abs();
    ensure(gap < 1e-5, || format!("direct sum off by {gap:.3e}"))?;
    Ok(format!(
        "reduction residual {:.1e}, direct sum at 10^6 terms off by {gap:.1e} (tail {tail:.1e})",
        residual(&rhs, &closed).0
    ))
}

fn depth3_relations(ev: &Evaluator) -> Outcome {
    for (a1, a2) in [(1, 1), (-1, 1)] {
        let (lhs, rhs) = depth3_sides(a1, a2).map_err(|e| e.to_string())?;
        let l = ev.expr(&lhs).map_err(|e| e.to_string())?;
        let r = ev.expr(&rhs).map_err(|e| e.to_string())?;
        close(&l, &r, TOL, &format!("({a1},{a2})"))?;
        let (el, er) = depth3_explicit(a1, a2).ok_or("no explicit form")?;
        let inst = generate("INT-SERIES", &Params::parse(&format!("k=1:1,a={a1}:{a2},l=1:2")).unwrap())
            .map_err(|e| e.to_string())?;
        let same = structurally_equal(&lhs, &el).and_then(|a| Ok(a && structurally_equal(&inst.lhs, &el)?));
        ensure(same == Ok(true), || format!("({a1},{a2}) left side differs from the explicit relation"))?;
        let same = structurally_equal(&rhs, &er).and_then(|a| Ok(a && structurally_equal(&inst.rhs, &er)?));
        ensure(same == Ok(true), || format!("({a1},{a2}) right side differs from the explicit relation"))?;
    }
    Ok("(1,1) and (-1,1) numerically and structurally".into())
}

fn half_series_grid(ev: &Evaluator) -> Outcome {
    let reports = run_grid("THM-3.4", ev, Some(1e-15))?;
    all_pass(&reports)?;
    Ok(format!("{} instances, worst residual {:.1e}", reports.len(), worst(&reports)))
}

fn theorem_grids(ev: &Evaluator) -> Outcome {
    let mut counts = Vec::new();
    for fam in ["THM-2.2", "THM-2.3", "THM-2.4", "THM-3.1", "THM-5.1", "THM-5.2"] {
        let r = run_grid(fam, ev, Some(TOL))?;
        ensure(r.len() >= 10, || format!("{fam} grid has {} points", r.len()))?;
        all_pass(&r)?;
        counts.push(format!("{fam} {}", r.len()));
    }
    let mut rng = rng(9);
    let mut b4 = Vec::new();
    for _ in 0..20 {
        let p = random_params("EQ-B4", &mut rng).ok_or("EQ-B4 has no sampler")?;
        b4.push(verify_params("EQ-B4", &p, ev, Some(TOL)));
    }
    all_pass(&b4)?;
    Ok(format!("{}, EQ-B4 20 random", counts.join(", ")))
}

fn pi_squared_over(ev: &Evaluator, d: i64) -> Result<BigFloat, String> {
    let pi = ev.atom(&Atom::Pi).map_err(|e| e.to_string())?;
    Ok(pi.mul(&pi).mul_rational(&rat(1, d)))
}

fn random_atom(rng: &mut ChaCha8Rng) -> Atom {
    let small = [rat(1, 2), rat(-1, 2), rat(1, 3), rat(-2, 3), rat(3, 4)];
    let unit = [int(1), int(-1), rat(1, 2), rat(-1, 2)];
    let exps = |rng: &mut ChaCha8Rng| -> Vec<u32> {
        random_index(rng, 3, 5).iter().map(|e| e.unsigned_abs() as u32).collect()
    };
    match rng.gen_range(0..7) {
        0 => {
            let s = rng.gen_range(1..=6i64);
            let s = if s == 1 || rng.gen_bool(0.5) { -s } else { s };
            Atom::mzv(&[s])
        }
        1 => Atom::Zeta { s: rng.gen_range(2..=7), sign: Sign::of(rng.gen_bool(0.5)) },
        2 => {
            let e = exps(rng);
            let mut args = vec![small.choose(rng).unwrap().clone()];
            args.extend((1..e.len()).map(|_| unit.choose(rng).unwrap().clone()));
            Atom::Li(ArgumentedIndex::new(e, args).unwrap())
        }
        3 => Atom::LiStar { exps: exps(rng), z: small.choose(rng).unwrap().clone() },
        4 => Atom::Log(rat(rng.gen_range(1..=20), rng.gen_range(1..=2))),
        5 => {
            let k = SignedIndex::from_signed(&random_index(rng, 2, 4)).unwrap();
            let l = SignedIndex::from_signed(&random_index(rng, 2, 3)).unwrap();
            Atom::Ky { ky: KyIndex::new(k, l).unwrap(), x: small[..4].choose(rng).unwrap().clone() }
        }
        _ => loop {
            let n = rng.gen_range(2..=5);
            let p = random_poset(rng, n);
            if p.is_admissible() {
                break Atom::Poset(p);
            }
        },
    }
}

fn evaluator_sanity(ev: &Evaluator) -> Outcome {
    let z = |k: &[i64]| ev.mzv(&ix(k)).map_err(|e| e.to_string());
    close(&z(&[2])?, &pi_squared_over(ev, 6)?, 1e-30, "ζ(2)")?;
    close(&z(&[-2])?, &pi_squared_over(ev, 6)?.mul_rational(&rat(-1, 2)), 1e-30, "ζ(2̄)")?;
    close(&z(&[2, 1])?, &z(&[3])?, 1e-30, "ζ(2,1)")?;
    let mut rng = rng(10);
    let mut checked = 0;
    while checked < 100 {
        let a = random_atom(&mut rng);
        let Some(second) = ev.second_route(&a) else { continue };
        let first = ev.atom(&a).map_err(|e| format!("{a}: {e}"))?;
        close(&first, &second.map_err(|e| format!("{a}: {e}"))?, TOL, &a.to_string())?;
        checked += 1;
    }
    Ok("constants to 1e-30, 100 random atoms by two routes".into())
}

const LABELS: [i64; 3] = [0, 1, -1];

fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Poset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let density = rng.gen_range(0.1..0.7);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((order[i], order[j]));
            }
        }
    }
    let labels = (0..n)
        .map(|_| match *LABELS.choose(rng).unwrap() {
            0 => Letter::Omega0,
            a => Letter::OmegaA(int(a)),
        })
        .collect();
    Poset::new(labels, &rel).expect("acyclic by construction")
}

fn brute_force_extensions(p: &Poset) -> u64 {
    fn go(p: &Poset, placed: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        if placed.len() == used.len() {
            return 1;
        }
        let mut total = 0;
        for x in 0..used.len() {
            let blocked = (0..used.len()).any(|y| !used[y] && y != x && p.less(y, x));
            if used[x] || blocked {
                continue;
            }
            used[x] = true;
            placed.push(x);
            total += go(p, placed, used);
            placed.pop();
            used[x] = false;
        }
        total
    }
    go(p, &mut Vec::new(), &mut vec![false; p.len()])
}

fn poset_engine(ev: &Evaluator) -> Outcome {
    let mut rng = rng(11);
    let mut admissible = 0;
    for i in 0..250 {
        let p = random_poset(&mut rng, 1 + i % 7);
        let want = brute_force_extensions(&p);
        ensure(p.count_extensions() == want, || format!("poset {i}: {} vs {want}", p.count_extensions()))?;
        if p.is_admissible() {
            let words = p.extensions().map_err(|e| e.to_string())?;
            let total: Rational = words.iter().map(|(_, c)| c.clone()).sum();
            ensure(total == int(want as i64), || format!("poset {i}: extension multiset has weight {total}"))?;
            admissible += 1;
        }
    }
    let alphas = [int(1), int(-1), rat(1, 2), rat(-1, 2), rat(1, 3)];
    let mut chains = 0;
    while chains < 30 {
        let k: Vec<u32> = random_index(&mut rng, 3, 5).iter().map(|e| e.unsigned_abs() as u32).collect();
        let alpha: Vec<Rational> = k.iter().map(|_| alphas.choose(&mut rng).unwrap().clone()).collect();
        if k[0] == 1 && alpha[0] == int(1) {
            continue;
        }
        let chain = ev.poset(&Poset::chain(&xi_chain_word(&k, &alpha))).map_err(|e| e.to_string())?;
        let norm = alpha.iter().fold(int(1), |acc, a| acc * a).recip();
        let xi = ev.li_xi(&ArgumentedIndex::new(k.clone(), alpha.clone()).unwrap()).map_err(|e| e.to_string())?;
        close(&chain, &xi.mul_rational(&norm), TOL, &format!("chain {k:?} {alpha:?}"))?;
        chains += 1;
    }
    let mut reports = run_grid("INT-SERIES", ev, Some(TOL))?;
    reports.extend(run_grid("EQ-5.21-PRINTED", ev, Some(TOL))?);
    all_pass(&reports)?;
    Ok(format!("250 posets counted ({admissible} expanded), 30 chains, {} integral-series instances", reports.len()))
}

fn lemma54_round_trip() -> Outcome {
    let mut rng = rng(12);
    for i in 0..100 {
        let p = rng.gen_range(1..=8);
        let (a, c) = random_lemma54_input(p, rng.gen());
        let b = invert_lemma54(&a, &c).map_err(|e| e.to_string())?;
        let back = lemma54_forward(&a, &b).map_err(|e| e.to_string())?;
        ensure(back == c, || format!("table {i} of size {p}"))?;
    }
    Ok("100 tables".into())
}

fn main() -> ExitCode {
    let ev = Evaluator::with_prec(128);
    let criteria: [(&str, Check); 12] = [
        ("stuffle homomorphism", Box::new(stuffle_homomorphism)),
        ("star expansion", Box::new(star_expansion)),
        ("truncated circled products", Box::new(truncation)),
        ("BBB grid", Box::new(|| bbb_grid(&ev))),
        ("substring-sign relations", Box::new(|| substring_sign(&ev))),
        ("KY closed form", Box::new(|| ky_closed_form(&ev))),
        ("depth-3 integral-series relations", Box::new(|| depth3_relations(&ev))),
        ("THM-3.4 grid", Box::new(|| half_series_grid(&ev))),
        ("polylog, alternating and KY theorem grids", Box::new(|| theorem_grids(&ev))),
        ("evaluator sanity", Box::new(|| evaluator_sanity(&ev))),
        ("poset engine", Box::new(|| poset_engine(&ev))),
        ("triangular inversion round trip", Box::new(lemma54_round_trip)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{status} {:>2} {name}: {detail} [{:.1} s]", i + 1, start.elapsed().as_secs_f64());
    }
    println!("{}/12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
