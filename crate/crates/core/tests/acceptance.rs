//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails. All comparisons are exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use matrixavoid::exactnum::{bernoulli, factorial, stirling2, BigInt, BigRat};
use matrixavoid::formulas::{self, function_count_identity_lhs, function_count_identity_rhs};
use matrixavoid::patterns::{avoids, AvoidanceSpec, BitMatrix, Oracle};
use matrixavoid::series::{self, exp_bseries, BSeries, USeries};
use num_traits::One;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn spec(s: &str) -> AvoidanceSpec {
    s.parse().unwrap()
}

fn formula_alphas() -> Vec<AvoidanceSpec> {
    ["I", "GAMMA", "C", "T", "L", "GAMMA,C", "T,L", "J,O"].map(spec).to_vec()
}

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

fn rat(v: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(v))
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn finish(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        let shown: Vec<String> = failures.iter().take(10).cloned().collect();
        Err(format!("{} mismatches: {}", failures.len(), shown.join("; ")))
    }
}

/// 1. Closed form equals exhaustive count for every formula set and k·n ≤ 16.
fn oracle_equals_formula() -> Outcome {
    const LIMIT: Duration = Duration::from_secs(120);
    let oracle = Oracle::default().serial();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cells = 0;
    for alpha in formula_alphas() {
        for k in 1..=16usize {
            for n in 1..=16 / k {
                let o = oracle.count(k, n, alpha).map_err(|e| e.to_string())?;
                let f = formulas::phi(k, n, &alpha).map_err(|e| e.to_string())?.value;
                check(&mut failures, o == f, || format!("[{alpha}] ({k},{n}) oracle {o} formula {f}"));
                cells += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    check(&mut failures, elapsed < LIMIT, || format!("single-threaded run took {elapsed:?}"));
    finish(failures, format!("{cells} cells exact, single-threaded in {elapsed:.2?}"))
}

/// 2. Diagonal sequences for Γ and T, n = 0..9.
fn printed_sequences() -> Outcome {
    let gamma: [u64; 10] = [1, 2, 12, 128, 2100, 48032, 1444212, 54763088, 2540607060, 140893490432];
    let t: [u64; 10] = [1, 2, 14, 200, 3536, 67472, 1423168, 34048352, 927156224, 28490354432];
    let mut failures = Vec::new();
    for n in 0..10 {
        let g = formulas::phi(n, n, &spec("GAMMA")).unwrap().value;
        check(&mut failures, g == int(gamma[n]), || format!("GAMMA n={n}: {g}"));
        let v = formulas::phi(n, n, &spec("T")).unwrap().value;
        check(&mut failures, v == int(t[n]), || format!("T n={n}: {v}"));
    }
    finish(failures, "both ten-term sequences exact".into())
}

/// 3. The {J,O} table on 1 ≤ k, n ≤ 7, confirmed by the oracle where k·n ≤ 24.
fn jo_table() -> Outcome {
    #[rustfmt::skip]
    let table: [[u64; 7]; 7] = [
        [2, 4, 8, 16, 32, 64, 128],
        [4, 14, 44, 128, 352, 928, 2368],
        [8, 44, 156, 408, 720, 720, 0],
        [16, 128, 408, 840, 720, 720, 0],
        [32, 352, 720, 720, 0, 0, 0],
        [64, 928, 720, 720, 0, 0, 0],
        [128, 2368, 0, 0, 0, 0, 0],
    ];
    let jo = spec("J,O");
    let oracle = Oracle::default();
    let mut failures = Vec::new();
    let mut confirmed = 0;
    for k in 1..=7 {
        for n in 1..=7 {
            let want = int(table[k - 1][n - 1]);
            let f = formulas::phi_jo(k, n);
            check(&mut failures, f == want, || format!("formula ({k},{n}) {f} vs table {want}"));
            if k * n <= 24 {
                let o = oracle.count(k, n, jo).map_err(|e| e.to_string())?;
                check(&mut failures, o == want, || format!("oracle ({k},{n}) {o} vs table {want}"));
                confirmed += 1;
            }
        }
    }
    let o33 = oracle.count(3, 3, jo).unwrap();
    let o44 = oracle.count(4, 4, jo).unwrap();
    let verdict = if o33 == int(156) && o44 == int(840) {
        "exhaustive counts give phi(3,3)=156 and phi(4,4)=840, supporting the table"
    } else {
        "exhaustive counts disagree with the table"
    };
    finish(failures, format!("49 cells match, {confirmed} oracle-confirmed; {verdict}"))
}

/// 4. Generating-function coefficients reproduce the counts.
fn egf_consistency() -> Outcome {
    let mut failures = Vec::new();
    let mut built = Vec::new();
    for alpha in formula_alphas() {
        if let Ok(s) = series::egf_bivar(alpha, 6, 6) {
            built.push(format!("Φ(x,y;{alpha})"));
            for k in 0..=6 {
                for n in 0..=6 {
                    let want = formulas::phi(k, n, &alpha).unwrap().value;
                    let got = s.egf_count(k, n);
                    check(&mut failures, got.as_ref() == Ok(&want), || {
                        format!("[{alpha}] ({k},{n}) series {got:?} formula {want}")
                    });
                }
            }
        }
        if let Ok(s) = series::egf_diag(alpha, 8) {
            built.push(format!("Φ(z;{alpha})"));
            for n in 0..=8 {
                let want = formulas::phi(n, n, &alpha).unwrap().value;
                let got = s.egf_count(n);
                check(&mut failures, got.as_ref() == Ok(&want), || {
                    format!("[{alpha}] diag n={n} series {got:?} formula {want}")
                });
            }
        }
    }
    let jo = series::egf_diag(spec("J,O"), 12).unwrap();
    check(&mut failures, jo == USeries::polynomial(&[1, 2, 7, 26, 35], 12), || {
        "Φ(z;J,O) is not 1+2z+7z²+26z³+35z⁴".into()
    });
    for required in ["Φ(x,y;I)", "Φ(x,y;GAMMA)", "Φ(x,y;GAMMA,C)", "Φ(x,y;T)", "Φ(x,y;T,L)", "Φ(x,y;J,O)"] {
        check(&mut failures, built.iter().any(|b| b == required), || format!("{required} not built"));
    }
    for required in ["Φ(z;I)", "Φ(z;GAMMA,C)", "Φ(z;T)", "Φ(z;T,L)", "Φ(z;J,O)"] {
        check(&mut failures, built.iter().any(|b| b == required), || format!("{required} not built"));
    }
    finish(failures, format!("{} series checked", built.len()))
}

/// 5. Interior-coefficient agreement of the full and simplified forms.
fn interior_agreement() -> Outcome {
    let (k, n) = (6, 6);
    let e = |a: i64, b: i64| BSeries::exp_linear(&rat(a), &rat(b), k, n);
    let poly = |t: &[(i64, usize, usize)]| BSeries::polynomial(t, k, n);
    let half = BigRat::new(1.into(), 2.into());

    // 2e^{y(e^x+1)+x} - (y²+2y)/2 e^{2x+2y} + (y²-1) e^{x+2y}
    let inner = &(&BSeries::y(k, n) * &(&e(1, 0) + &BSeries::one(k, n))) + &BSeries::x(k, n);
    let lead = exp_bseries(&inner).unwrap().scale(&rat(2));
    let t_simple = &(&lead - &(&poly(&[(1, 0, 2), (2, 0, 1)]).scale(&half) * &e(2, 2)))
        + &(&poly(&[(1, 0, 2), (-1, 0, 0)]) * &e(1, 2));
    // 2e^{xy+x+y} - (xy)²/2
    let tl_simple = &exp_bseries(&poly(&[(1, 1, 1), (1, 1, 0), (1, 0, 1)])).unwrap().scale(&rat(2))
        - &poly(&[(1, 2, 2)]).scale(&half);

    let t_full = series::egf_bivar(spec("T"), k, n).unwrap();
    let tl_full = series::egf_bivar(spec("T,L"), k, n).unwrap();
    let mut failures = Vec::new();
    for (name, full, simple) in [("T", &t_full, &t_simple), ("T,L", &tl_full, &tl_simple)] {
        check(&mut failures, series::eq2_compare(full, simple), || format!("[{name}] differs"));
        for i in 2..=k {
            for j in 2..=n {
                check(&mut failures, full.coeff(i, j) == simple.coeff(i, j), || {
                    format!("[{name}] coefficient ({i},{j})")
                });
            }
        }
    }
    finish(failures, "T and T,L agree on all k,n >= 2 through (6,6)".into())
}

/// 6. Identity suites.
fn identity_suites() -> Outcome {
    let mut failures = Vec::new();
    for k in 0..=12 {
        for n in 0..=12 {
            let (l, r) = (function_count_identity_lhs(k, n), function_count_identity_rhs(k, n));
            check(&mut failures, l == r, || format!("function count ({k},{n}) {l} vs {r}"));
        }
    }

    let order = 10;
    let one = USeries::one(order);
    let ex = USeries::exp_linear(&rat(1), order);
    let mut power = one.clone();
    for m in 0..=5usize {
        let rhs = (&ex * &power).scale(&BigRat::new(1.into(), factorial(m)));
        for n in 0..=order {
            let want = BigRat::new(stirling2(n + 1, m + 1), factorial(n));
            check(&mut failures, rhs.coeffs()[n] == want, || format!("Stirling row m={m} n={n}"));
        }
        power = &power * &(&ex - &one);
    }

    let w = series::lambert_w(10);
    let we = &w * &series::exp_series(&w).unwrap();
    check(&mut failures, we == USeries::variable(10), || "W e^W != x".into());

    let ex = USeries::exp_linear(&rat(1), 13);
    let quotient = (&ex - &USeries::one(13)).shift_down().unwrap();
    let b = series::div_series(&ex.truncate(12), &quotient).unwrap();
    for d in 0..=12 {
        let from_series = &b.coeffs()[d] * BigRat::from_integer(factorial(d));
        check(&mut failures, from_series == bernoulli(d), || format!("B_{d}: {from_series} vs {}", bernoulli(d)));
    }
    finish(failures, "function count, Stirling EGF, Lambert W, Bernoulli all exact".into())
}

fn random_matrix(rng: &mut StdRng) -> BitMatrix {
    let k = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=4);
    let bits = rng.gen_range(0..1u64 << (k * n));
    BitMatrix::from_index(k, n, bits)
}

/// 7. Bijection invariants, monotonicity and the empty-matrix conventions.
fn symmetry_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let subsets: Vec<AvoidanceSpec> = AvoidanceSpec::all_subsets().collect();
    for _ in 0..1000 {
        let m = random_matrix(&mut rng);
        let alpha = *subsets.choose(&mut rng).unwrap();
        let a = avoids(&m, alpha);
        check(&mut failures, a == avoids(&m.complement(), alpha.complement_image()), || {
            format!("complement [{alpha}] on\n{m}")
        });
        check(&mut failures, a == avoids(&m.transpose(), alpha.transpose_image()), || {
            format!("transpose [{alpha}] on\n{m}")
        });
        let mut rp: Vec<usize> = (0..m.rows()).collect();
        let mut cp: Vec<usize> = (0..m.cols()).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        check(&mut failures, a == avoids(&m.permute_rows(&rp).permute_cols(&cp), alpha), || {
            format!("permutation [{alpha}] on\n{m}")
        });
    }

    let oracle = Oracle::default();
    for k in 1..=12usize {
        for n in 1..=12 / k {
            let counts: Vec<(AvoidanceSpec, BigInt)> =
                subsets.iter().map(|&a| (a, oracle.count(k, n, a).unwrap())).collect();
            for (a, ca) in &counts {
                for (b, cb) in &counts {
                    if a.is_subset(*b) {
                        check(&mut failures, cb <= ca, || format!("({k},{n}) [{b}]={cb} > [{a}]={ca}"));
                    }
                }
            }
        }
    }

    for alpha in &subsets {
        for (k, n, want) in [(0usize, 0usize, 1u64), (0, 1, 0), (0, 9, 0), (1, 0, 0), (9, 0, 0), (0, 50, 0), (50, 0, 0)] {
            let via_phi = formulas::phi(k, n, alpha).map(|r| r.value);
            check(&mut failures, via_phi == Ok(int(want)), || format!("phi [{alpha}] ({k},{n}) {via_phi:?}"));
            if k * n <= 24 {
                let via_oracle = oracle.count(k, n, *alpha);
                check(&mut failures, via_oracle == Ok(int(want)), || {
                    format!("oracle [{alpha}] ({k},{n}) {via_oracle:?}")
                });
            }
        }
    }
    for alpha in formula_alphas() {
        if let Ok(s) = series::egf_bivar(alpha, 6, 6) {
            check(&mut failures, s.coeff(0, 0).unwrap().is_one(), || format!("series [{alpha}] (0,0)"));
            for i in 1..=6 {
                check(&mut failures, s.egf_count(i, 0) == Ok(int(0)), || format!("series [{alpha}] ({i},0)"));
                check(&mut failures, s.egf_count(0, i) == Ok(int(0)), || format!("series [{alpha}] (0,{i})"));
            }
        }
    }
    finish(failures, "1000 random matrices, 127-set monotonicity on k*n <= 12, conventions on every path".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 oracle = formula", oracle_equals_formula),
        ("2 diagonal sequences", printed_sequences),
        ("3 J,O table", jo_table),
        ("4 EGF consistency", egf_consistency),
        ("5 interior agreement", interior_agreement),
        ("6 identity suites", identity_suites),
        ("7 symmetry/property suite", symmetry_suite),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
