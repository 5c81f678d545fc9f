//! One line per acceptance criterion, every comparison exact. Exits nonzero
//! if any criterion fails.

mod common;

use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;

use sl3_cli::expr::parse_expression;
use sl3_core::bigon_split::split_annulus;
use sl3_core::coeff::{specialize, Generic, RootOfUnity};
use sl3_core::frobenius::{
    annulus_square_residual, centrality_residual, coalgebra_residual, minor_cancellation_residual,
    trace_cancellation_residual, well_defined_residual,
};
use sl3_core::powersum::{power_sum_oracle, power_sum_poly};
use sl3_core::qmatrix::{check_local_confluence, Engine, NCElem, Rewriter, RuleSet, Strategy, WordElem};
use sl3_core::webs::corpus::{self, CorpusLimits};
use sl3_core::webs::{
    eval_threaded_unknot, evaluate_closed, evaluate_closed_tensor, AnnulusElem, Loops, VertexKind, WebDiagram,
};
use sl3_core::{CyclotomicZ, LaurentZ};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn generic() -> Engine<LaurentZ> {
    Engine::new(Generic)
}

fn cyclotomic(n: u32) -> Engine<CyclotomicZ> {
    Engine::new(RootOfUnity::new(n).expect("valid order"))
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn trace_cancellation() -> Verdict {
    for n in [5, 7] {
        let r = e(trace_cancellation_residual(&cyclotomic(n), n))?;
        ensure(r.is_zero(), format!("N={n}: {} residual terms", r.len()))?;
    }
    let control = e(trace_cancellation_residual(&generic(), 5))?;
    ensure(!control.is_zero(), "generic control vanished")?;
    Ok(format!("N=5,7 zero; generic control has {} terms", control.len()))
}

fn minor_cancellation() -> Verdict {
    for n in [5, 7] {
        let r = e(minor_cancellation_residual(&cyclotomic(n), n))?;
        ensure(r.is_zero(), format!("N={n}: {} residual terms", r.len()))?;
    }
    let control = e(minor_cancellation_residual(&generic(), 5))?;
    ensure(!control.is_zero(), "generic control vanished")?;
    Ok(format!("N=5,7 zero; generic control has {} terms", control.len()))
}

fn centrality() -> Verdict {
    let r = e(centrality_residual(&cyclotomic(5), 5))?;
    ensure(r == 0, format!("{r} residual terms over 81 commutators"))?;
    let control = e(centrality_residual(&generic(), 5))?;
    ensure(control > 0, "generic control vanished")?;
    Ok(format!("81 commutators zero; generic control has {control} terms"))
}

fn coalgebra() -> Verdict {
    let r = e(coalgebra_residual(&cyclotomic(5), 5))?;
    ensure(r == 0, format!("{r} residual terms"))?;
    Ok("nine coproducts match".into())
}

fn well_defined() -> Verdict {
    let r = e(well_defined_residual(&cyclotomic(5)))?;
    ensure(r == 0, format!("{r} residual terms"))?;
    Ok("36 commutation relations and det - 1 vanish".into())
}

fn annulus_square() -> Verdict {
    let engine = cyclotomic(5);
    for k in [1, 2] {
        let r = e(annulus_square_residual(&engine, k))?;
        ensure(r == 0, format!("k={k}: {r} residual terms"))?;
    }
    Ok("l+ and l- at k = 1, 2".into())
}

fn splitting_values() -> Verdict {
    let g = generic();
    let one_cut = |x: &AnnulusElem| -> Result<NCElem<LaurentZ>, String> {
        let t = e(split_annulus(&g, 1, x))?;
        Ok(NCElem::from_terms(t.iter().map(|(k, c)| (k[0], c.clone()))))
    };
    ensure(one_cut(&AnnulusElem::l_plus())? == e(g.sigma(1))?, "l+ is not sigma1")?;
    ensure(one_cut(&AnnulusElem::l_minus())? == e(g.sigma(2))?, "l- is not sigma2")?;
    Ok("l+ -> sigma1, l- -> sigma2".into())
}

fn power_sums() -> Verdict {
    for n in 0..=20 {
        ensure(power_sum_poly::<BigInt>(n) == e(power_sum_oracle::<BigInt>(n))?, format!("N={n} disagrees"))?;
    }
    let p2 = power_sum_poly::<BigInt>(2).to_string();
    ensure(p2 == "e1^2 - 2*e2", format!("P2 printed as {p2}"))?;
    Ok("recursion = elimination for N <= 20".into())
}

fn web_evaluator() -> Verdict {
    let three = LaurentZ::from_terms([(12, 1.into()), (0, 1.into()), (-12, 1.into())]);
    let two = LaurentZ::from_terms([(6, 1.into()), (-6, 1.into())]);
    let single = WebDiagram::loops_only(Loops { cw: 1, ccw: 0 });
    ensure(e(evaluate_closed(&single))? == three, "loop value")?;
    ensure(e(evaluate_closed(&corpus::theta()))? == -(&two * &three), "theta value")?;

    let mut rng = StdRng::seed_from_u64(7);
    let (mut agreed, mut with_vertices, mut switched) = (0, 0, 0);
    while agreed < 100 {
        let d = corpus::random_web(&mut rng, CorpusLimits::default());
        if d.trivalent_count() > 12 || d.crossing_count() > 3 {
            continue;
        }
        let face = e(evaluate_closed(&d))?;
        ensure(face == e(evaluate_closed_tensor(&d))?, format!("evaluators disagree on web {agreed}"))?;
        agreed += 1;
        with_vertices += usize::from(d.trivalent_count() > 0);
        for (i, v) in d.vertices().iter().enumerate() {
            if v.kind == VertexKind::Crossing {
                let s = e(evaluate_closed(&d.switch_crossing(i)))?;
                ensure(s.eval_at_one() == face.eval_at_one(), "crossing switch changed the q = 1 value")?;
                switched += 1;
            }
        }
    }
    for _ in 0..50 {
        let (a, b) = corpus::r2_pair(&mut rng);
        ensure(e(evaluate_closed(&a))? == e(evaluate_closed(&b))?, "R2 pair differs")?;
        let (a, b) = corpus::r3_pair(&mut rng);
        ensure(e(evaluate_closed(&a))? == e(evaluate_closed(&b))?, "R3 pair differs")?;
    }
    ensure(with_vertices >= 50, format!("only {with_vertices} webs had vertices"))?;
    Ok(format!("100 webs ({with_vertices} with vertices), {switched} switches, 50 R2 + 50 R3 pairs"))
}

fn threaded_unknot() -> Verdict {
    let v = e(specialize(&eval_threaded_unknot(&power_sum_poly(5)), 5))?;
    let three = e(specialize(&LaurentZ::constant(3.into()), 5))?;
    ensure(v == three, format!("got {v}"))?;
    Ok("value 3 at order 5".into())
}

fn rewriting_hygiene() -> Verdict {
    let g = generic();
    let report = e(check_local_confluence(&g, 5))?;
    ensure(report.is_confluent(), format!("{} divergent ambiguities", report.divergences.len()))?;
    let rewriters: Vec<_> = [Strategy::Leftmost, Strategy::Rightmost]
        .into_iter()
        .map(|s| Rewriter::<LaurentZ>::new(Generic, RuleSet::standard(&Generic), s))
        .collect::<Result<_, _>>()
        .map_err(|x| x.to_string())?;
    let mut rng = StdRng::seed_from_u64(11);
    for i in 0..1000 {
        let x = common::random_elem(&g, &mut rng);
        // scramble each normal-form word back into an unsorted product
        let w = WordElem::from_terms(x.iter().map(|(m, c)| {
            let mut word = m.word();
            word.reverse();
            (word, c.clone())
        }));
        let expected = e(g.normal_form(&w))?;
        for r in &rewriters {
            ensure(e(r.normal_form(&w))? == expected, format!("element {i} depends on {:?}", r.strategy()))?;
        }
    }
    Ok(format!(
        "{} quadratic and {} determinant ambiguities resolve; 1000 elements strategy-free",
        report.quadratic_checked, report.determinant_checked
    ))
}

fn parser_and_cli() -> Verdict {
    let g = generic();
    let mut rng = StdRng::seed_from_u64(13);
    for i in 0..1000 {
        let x = common::random_elem(&g, &mut rng);
        let text = x.to_string();
        ensure(e(parse_expression(&g, &text))? == x, format!("element {i} fails to round-trip: {text}"))?;
    }
    let bin = env!("CARGO_BIN_EXE_sl3");
    let code = |args: &[&str]| Command::new(bin).args(args).output().map(|o| o.status.code()).ok().flatten();
    let cases: [(&[&str], i32); 5] = [
        (&["verify", "--N", "5", "--suite", "a"], 0),
        (&["powersum", "--N", "3"], 0),
        (&["verify", "--N", "6"], 2),
        (&["normal-form", "X1*"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, expected) in cases {
        ensure(code(args) == Some(expected), format!("{args:?} did not exit {expected}"))?;
    }
    Ok("1000 round trips; exit codes 0/2 honored".into())
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("trace cancellation at N = 5, 7", trace_cancellation),
        ("minor cancellation at N = 5, 7", minor_cancellation),
        ("centrality of N-th powers", centrality),
        ("Frobenius coalgebra property", coalgebra),
        ("Frobenius well-definedness", well_defined),
        ("annulus square, one and two cuts", annulus_square),
        ("splitting values", splitting_values),
        ("power sums", power_sums),
        ("web evaluator", web_evaluator),
        ("threaded unknot", threaded_unknot),
        ("rewriting hygiene", rewriting_hygiene),
        ("parser and CLI contract", parser_and_cli),
    ];
    let start = Instant::now();
    let results: Vec<(Verdict, u128)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let v = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (v, t.elapsed().as_millis())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    let mut failures = 0;
    for (i, ((name, _), (verdict, ms))) in criteria.iter().zip(results).enumerate() {
        match verdict {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note} ({ms} ms)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} of 12 passed in {} ms", 12 - failures, start.elapsed().as_millis());
    if failures > 0 {
        std::process::exit(1);
    }
}
