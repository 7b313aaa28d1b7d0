//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use rdk_core::charsum::{residue_identity_holds, sums_bruteforce, sums_via_recurrence};
use rdk_core::permcheck::{is_pp_two_to_one, rdp_pp_bruteforce, verify_theorem, TheoremGrid, TheoremId};
use rdk_core::rdpoly::{
    closed_form, closed_form_pl2_in_u, closed_form_with, eval_definition, eval_functional, eval_recurrence,
    eval_recurrence_unreduced, eval_via_fnk, fnk_specialize, genfun_coeffs, RdpParams, Shape,
};
use rdk_core::{ExtField, Field, FiniteField};

type Outcome = Result<String, String>;

fn field_of_order(q: u64) -> Field {
    let (p, e) = match q {
        3 => (3, 1),
        5 => (5, 1),
        7 => (7, 1),
        9 => (3, 2),
        25 => (5, 2),
        27 => (3, 3),
        _ => unreachable!("unexpected field order {q}"),
    };
    Field::new(p, e, None).unwrap()
}

fn evaluators_agree() -> Outcome {
    let mut checked = 0usize;
    for q in [3u64, 5, 7, 9, 25, 27] {
        let f = field_of_order(q);
        let ext = ExtField::new(&f).unwrap();
        let n_max = (q * q - 1).min(200);
        let work: Vec<(u64, u64)> = (0..=n_max).flat_map(|n| (0..f.p()).map(move |k| (n, k))).collect();
        let bad = work.par_iter().find_map_first(|&(n, k)| {
            let params = RdpParams::unit(&f, n, k);
            f.elements().find_map(|x| {
                let a = eval_definition(&f, &params, x).unwrap();
                let b = eval_recurrence(&f, &params, x).unwrap();
                let c = eval_functional(&ext, &params, x).unwrap();
                let d = eval_via_fnk(&f, &params, x).unwrap();
                (a != b || a != c || a != d).then(|| format!("q={q} n={n} k={k} x={x:?}: {a:?} {b:?} {c:?} {d:?}"))
            })
        });
        if let Some(msg) = bad {
            return Err(msg);
        }
        checked += work.len() * q as usize;
    }
    Ok(format!("{checked} (n,k,x) points, 4 evaluators"))
}

fn closed_forms_agree() -> Outcome {
    let mut checked = 0usize;
    for q in [5u64, 7, 9, 27] {
        let f = field_of_order(q);
        let p = f.p();
        let mut l = 0u32;
        while p.pow(l) < q * q {
            for shape in [Shape::PrimePower, Shape::PrimePowerPlusOne, Shape::PrimePowerPlusTwo] {
                let n = p.pow(l) + shape.offset() as u64;
                for k in 0..p {
                    let params = RdpParams::unit(&f, n, k);
                    for x in f.elements() {
                        let expect = eval_recurrence(&f, &params, x).unwrap();
                        let got = closed_form_with(&f, shape, l, k, x).unwrap();
                        let dispatched = closed_form(&f, &params, x).unwrap();
                        let alt = (shape == Shape::PrimePowerPlusTwo).then(|| closed_form_pl2_in_u(&f, l, k, x).unwrap());
                        if got != expect || dispatched != expect || alt.is_some_and(|v| v != expect) {
                            return Err(format!("q={q} n={n} ({shape:?}, l={l}) k={k} x={x:?}"));
                        }
                        checked += 1;
                    }
                }
            }
            l += 1;
        }
    }
    Ok(format!("{checked} (n,k,x) points"))
}

fn theorem_suite() -> Outcome {
    let base = TheoremGrid::default();
    let mut grids: Vec<(TheoremId, TheoremGrid)> = Vec::new();
    for (p, e) in [(5, 1), (7, 1), (3, 2)] {
        let g = TheoremGrid { primes: vec![p], exponents: vec![e], ns: (0..=30).collect(), ..base.clone() };
        grids.push((TheoremId::ZeroParameter, g));
    }
    grids.push((
        TheoremId::PrimePower,
        TheoremGrid { primes: vec![3], exponents: vec![1, 2, 3], ls: vec![0, 1, 2, 3], ..base.clone() },
    ));
    grids.push((
        TheoremId::PrimePower,
        TheoremGrid { primes: vec![5, 7], exponents: vec![1, 2], ls: vec![1, 2], ..base.clone() },
    ));
    let shape_grid = TheoremGrid { primes: vec![3, 5, 7], exponents: vec![1, 2], ls: vec![0, 1, 2], ..base };
    for id in [
        TheoremId::PlusOneKindTwo,
        TheoremId::PlusOneGeneral,
        TheoremId::PlusTwoKindTwo,
        TheoremId::PlusTwoKindFour,
        TheoremId::PlusTwoGeneral,
        TheoremId::KindZeroFieldOrder,
    ] {
        grids.push((id, shape_grid.clone()));
    }
    let mut points = 0;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (id, grid) in &grids {
        let report = verify_theorem(*id, grid).map_err(|e| e.to_string())?;
        points += report.grid.len();
        for f in &report.failures {
            failures.push(format!("{id} {:?} lhs={} rhs={}", f.point, f.lhs, f.rhs));
        }
        let aux: Vec<_> = report.aux_failures().collect();
        if !aux.is_empty() {
            let at: Vec<String> = aux.iter().map(|r| format!("q={} l={:?}", r.point.q, r.point.l)).collect();
            notes.push(format!("{id}: side claim 'PP iff l = 0' fails at {}", at.join(", ")));
        }
    }
    for n in &notes {
        println!("    note: {n}");
    }
    if failures.is_empty() {
        Ok(format!("{points} grid points, 0 counterexamples"))
    } else {
        Err(format!("{} counterexamples; first: {}", failures.len(), failures[0]))
    }
}

fn two_to_one_agrees() -> Outcome {
    let mut checked = 0usize;
    for q in [3u64, 5, 7] {
        let f = field_of_order(q);
        let work: Vec<(u64, u64)> = (1..q * q).flat_map(|n| (0..f.p()).map(move |k| (n, k))).collect();
        let bad = work.par_iter().find_map_first(|&(n, k)| {
            let t = is_pp_two_to_one(&f, &BigUint::from(n), k).unwrap().verdict;
            let b = rdp_pp_bruteforce(&f, &RdpParams::unit(&f, n, k)).unwrap().verdict;
            (t != b).then(|| format!("q={q} n={n} k={k}: two_to_one={t} brute_force={b}"))
        });
        if let Some(msg) = bad {
            return Err(msg);
        }
        checked += work.len();
    }
    Ok(format!("{checked} (q,n,k) verdicts"))
}

fn sums_agree() -> Outcome {
    let mut checked = 0usize;
    for q in [5u64, 7, 9] {
        let f = field_of_order(q);
        for k in 0..f.p() {
            let table = sums_via_recurrence(&f, k).map_err(|e| format!("q={q} k={k}: {e}"))?;
            let mut brute = Vec::new();
            for n in 1..q * q {
                let s = sums_bruteforce(&f, k, &BigUint::from(n)).unwrap();
                if table.sum(n as usize) != s {
                    return Err(format!("q={q} k={k} n={n}: table {:?} brute {s:?}", table.sum(n as usize)));
                }
                brute.push(s);
                checked += 1;
            }
            if !residue_identity_holds(&f, k, &brute).unwrap() {
                return Err(format!("q={q} k={k}: residue identity fails"));
            }
        }
    }
    Ok(format!("{checked} sums, residue identity on 15 (q,k) pairs"))
}

fn integer_identities() -> Outcome {
    let mut checked = 0;
    for n in 0..=100u64 {
        for k in 0..=3u64 {
            if k == 3 && n % 2 == 1 {
                continue;
            }
            let r = fnk_specialize(n, k).map_err(|e| e.to_string())?;
            if !r.holds {
                let step = r.steps.iter().find(|s| !s.holds).unwrap();
                return Err(format!("n={n} k={k}: step {} fails", step.name));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (n,k) reports"))
}

fn generating_function() -> Outcome {
    let mut checked = 0;
    for q in [5u64, 7] {
        let f = field_of_order(q);
        for k in 0..f.p() {
            for x in f.elements() {
                let coeffs = genfun_coeffs(&f, k, x, 50).unwrap();
                for (n, &c) in coeffs.iter().enumerate() {
                    let expect = eval_recurrence(&f, &RdpParams::unit(&f, n as u64, k), x).unwrap();
                    if c != expect {
                        return Err(format!("q={q} k={k} x={x:?} n={n}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} coefficients"))
}

fn period_scaling_kind() -> Outcome {
    let f = field_of_order(5);
    let quarter = f.quarter().unwrap();
    let period = 24u64;
    let mut checked = 0;
    for k in 0..5 {
        for x in f.elements().filter(|&x| x != quarter) {
            for n in 1..=period {
                let base = eval_definition(&f, &RdpParams::unit(&f, n, k), x).unwrap();
                for t in 1..=3 {
                    let other = eval_definition(&f, &RdpParams::unit(&f, n + t * period, k), x).unwrap();
                    if other != base {
                        return Err(format!("period: n={n} t={t} k={k} x={x:?}"));
                    }
                }
                let far = BigUint::from(n) + BigUint::from(period) * BigUint::from(10u32).pow(30);
                if eval_recurrence_unreduced(&f, &far, k, x) != base {
                    return Err(format!("period (large): n={n} k={k} x={x:?}"));
                }
                checked += 1;
            }
        }
    }
    for n in 0..=48u64 {
        for k in 0..5 {
            for a in f.elements().skip(1) {
                let inv_a2 = f.inv(f.square(a)).unwrap();
                for x in f.elements() {
                    let lhs = eval_definition(&f, &RdpParams::new(&f, n, k, a), x).unwrap();
                    let unit = eval_definition(&f, &RdpParams::unit(&f, n, k), f.mul(x, inv_a2)).unwrap();
                    if lhs != f.mul(f.pow(a, n), unit) {
                        return Err(format!("scaling: n={n} k={k} a={a:?} x={x:?}"));
                    }
                    checked += 1;
                }
            }
            for a in f.elements() {
                let first = RdpParams::new(&f, n, 0, a);
                let second = RdpParams::new(&f, n, 1, a);
                let kk = f.from_u64(k);
                for x in f.elements() {
                    let d = eval_recurrence(&f, &first, x).unwrap();
                    let e = eval_recurrence(&f, &second, x).unwrap();
                    let combo = f.sub(f.mul(kk, e), f.mul(f.sub(kk, f.one()), d));
                    if eval_definition(&f, &RdpParams::new(&f, n, k, a), x).unwrap() != combo {
                        return Err(format!("kind relation: n={n} k={k} a={a:?} x={x:?}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} checks over GF(5)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("four-way evaluator equivalence", evaluators_agree),
        ("closed forms match the recurrence", closed_forms_agree),
        ("PP theorem suite", theorem_suite),
        ("2-to-1 criterion matches brute force", two_to_one_agrees),
        ("sum tables match brute force and residue identity", sums_agree),
        ("f_{n,k} integer identities", integer_identities),
        ("generating-function coefficients", generating_function),
        ("period, scaling and kind relation", period_scaling_kind),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail}; {secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
