mod args;

use std::error::Error as StdError;
use std::fs;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command, EvalCmd, Global, PosetCmd, Split};
use polyzeta::algebra::{circled_star, star_expand, stuffle, KyIndex};
use polyzeta::bigfloat::BigFloat;
use polyzeta::eval::{EvalConfig, Evaluator};
use polyzeta::expr::Atom;
use polyzeta::finite::{mhs_eval, mhss_eval, parametric_star_eval};
use polyzeta::identities::verify::{convention_diagnostic, run_suite_seeded, verify_params, Report, SUITES};
use polyzeta::identities::{families, Params};
use polyzeta::index::{parse_index, Sign};
use polyzeta::poset::{parse_poset_json, Poset, SplitOrder};
use polyzeta::rational::{format_rational, parse_rational};
use polyzeta::word::Word;
use polyzeta::{ArgumentedIndex, Rational, SignedIndex};

type Outcome = Result<bool, Box<dyn StdError>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Eval(cmd) => eval(g, cmd),
        Command::Finite { n, index, star, x } => finite(g, *n, index, *star, x.as_deref()),
        Command::Stuffle { u, v } => emit(g, &stuffle(&parse_index(u)?, &parse_index(v)?).to_string()),
        Command::Starexpand { k } => emit(g, &star_expand(&parse_index(k)?).to_string()),
        Command::Circledstar { k, l, star } => {
            let (k, l) = (parse_index(k)?, parse_index(l)?);
            let fs = if *star { KyIndex::new(k, l)?.expand_terms() } else { circled_star(&k, &l)? };
            emit(g, &fs.to_string())
        }
        Command::Poset(cmd) => poset(g, cmd),
        Command::Verify { target, name, params } => verify(g, target, name.as_deref(), params),
    }
}

fn evaluator(g: &Global) -> Evaluator {
    Evaluator::new(EvalConfig { prec: g.prec, max_terms: g.max_terms })
}

fn write_json(g: &Global, value: &serde_json::Value) -> Result<(), Box<dyn StdError>> {
    if let Some(path) = &g.json {
        fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    }
    Ok(())
}

fn emit(g: &Global, text: &str) -> Outcome {
    println!("{text}");
    write_json(g, &json!({ "result": text }))?;
    Ok(true)
}

fn emit_value(g: &Global, v: &BigFloat) -> Outcome {
    println!("{v}");
    println!("error bound {:.3e}", v.err());
    write_json(g, &json!({ "value": v.to_string(), "bound": v.err() }))?;
    Ok(true)
}

fn rationals(text: &str) -> polyzeta::Result<Vec<Rational>> {
    text.split(',').map(|t| parse_rational(t.trim())).collect()
}

fn exponents(text: &str) -> polyzeta::Result<Vec<u32>> {
    let k = parse_index(text)?;
    if !k.is_positive() {
        return Err(polyzeta::Error::MalformedToken(text.into()));
    }
    Ok(k.exponents())
}

fn eval(g: &Global, cmd: &EvalCmd) -> Outcome {
    let ev = evaluator(g);
    let v = match cmd {
        EvalCmd::Mzv { index } => ev.mzv(&parse_index(index)?)?,
        EvalCmd::Li { exps, args, xi } => {
            let e = exponents(exps)?;
            let a = match args {
                Some(t) => rationals(t)?,
                None => vec![Rational::from_integer(1.into()); e.len()],
            };
            let idx = ArgumentedIndex::new(e, a)?;
            if *xi {
                ev.li_xi(&idx)?
            } else {
                ev.polylog(&idx)?
            }
        }
        EvalCmd::Listar { exps, z } => ev.li_star(&exponents(exps)?, &parse_rational(z)?)?,
        EvalCmd::Ky { k, l, x, direct } => {
            let ky = ky_index(k, l)?;
            let x = parse_rational(x)?;
            if let Some(terms) = direct {
                let (s, tail) = Evaluator::ky_direct_f64(&ky, &x, *terms)?;
                println!("direct series ({terms} terms) {s:.15e}, tail bound {tail:.3e}");
            }
            ev.ky(&ky, &x)?
        }
        EvalCmd::Word { word } => ev.atom(&Atom::Word(Word::parse(word)?))?,
    };
    emit_value(g, &v)
}

/// `l` may start with 0.
fn ky_index(k: &str, l: &str) -> polyzeta::Result<KyIndex> {
    let k = parse_index(k)?;
    let (head, tail) = l.split_once(',').unwrap_or((l, ""));
    let head: i64 = head.trim().parse().map_err(|_| polyzeta::Error::MalformedToken(head.into()))?;
    Ok(KyIndex { k, l_head: head.unsigned_abs() as u32, l_head_sign: Sign::of(head < 0), l_tail: parse_index(tail)? })
}

fn finite(g: &Global, n: u64, index: &str, star: bool, x: Option<&str>) -> Outcome {
    let k: SignedIndex = parse_index(index)?;
    let q = match (star, x) {
        (_, Some(x)) => parametric_star_eval(n, &k, &parse_rational(x)?),
        (true, None) => mhss_eval(n, &k),
        (false, None) => mhs_eval(n, &k),
    };
    emit(g, &format_rational(&q))
}

fn read_poset(file: &std::path::Path) -> Result<Poset, Box<dyn StdError>> {
    Ok(parse_poset_json(&fs::read_to_string(file)?)?)
}

fn poset(g: &Global, cmd: &PosetCmd) -> Outcome {
    match cmd {
        PosetCmd::Eval { file } => {
            let p = read_poset(file)?;
            emit_value(g, &evaluator(g).poset(&p)?)
        }
        PosetCmd::Expand { file, order } => {
            let p = read_poset(file)?;
            let fs = match order {
                None => p.extensions()?,
                Some(Split::First) => p.decompose(SplitOrder::First)?,
                Some(Split::Last) => p.decompose(SplitOrder::Last)?,
            };
            println!("{} linear extensions", p.count_extensions());
            emit(g, &fs.to_string())
        }
    }
}

fn print_report(r: &Report) {
    let status = if r.pass { "PASS" } else { "FAIL" };
    let detail = match (r.residual, r.bound) {
        (Some(d), Some(b)) => format!("residual {d:.3e} bound {b:.3e}"),
        _ => "exact".to_string(),
    };
    let time = r.millis.map(|m| format!(" {m} ms")).unwrap_or_default();
    println!("{status} {} {detail}{time}", r.id());
    if !r.pass {
        println!("  lhs {}", r.lhs_value);
        println!("  rhs {}", r.rhs_value);
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
}

fn verify(g: &Global, target: &str, name: Option<&str>, params: &str) -> Outcome {
    let ev = evaluator(g);
    let mut reports = match target {
        "list" => {
            for (suite, fams) in SUITES {
                println!("suite {suite}: {}", fams.join(" "));
            }
            for f in families() {
                println!("{:<20} {}", f.id, f.about);
            }
            return Ok(true);
        }
        "suite" => {
            let name = name.ok_or("verify suite needs a suite name")?;
            run_suite_seeded(name, &ev, g.tol, g.seed.map(|s| (s, g.samples)))?
        }
        family => {
            if name.is_some() {
                return Err("unexpected extra argument".into());
            }
            let fam = polyzeta::identities::find(family)?;
            let p = Params::parse(params)?;
            polyzeta::identities::generate(fam.id, &p)?;
            vec![verify_params(fam.id, &p, &ev, g.tol)]
        }
    };
    if let Some(diag) = convention_diagnostic(&reports) {
        for r in reports.iter_mut().filter(|r| r.family == "BBB-A2" && !r.pass) {
            r.notes.push(diag.clone());
        }
        println!("diagnostic: {diag}");
    }
    if !g.timings {
        reports.iter_mut().for_each(|r| r.millis = None);
    }
    reports.iter().for_each(print_report);
    let passed = reports.iter().filter(|r| r.pass).count();
    println!("{passed}/{} passed", reports.len());
    write_json(g, &serde_json::to_value(&reports)?)?;
    Ok(passed == reports.len())
}
