//! Acceptance suite. Prints one `criterion N: PASS|FAIL` line per criterion
//! and exits non-zero if any fails.

use std::collections::HashSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use bessel_core::exact_numbers::{
    bessel_first_signless, bessel_second, binomial, check_log_concavity, delta, inverse_sum_first,
    inverse_sum_second, matching_number,
};
use bessel_core::injections::{self, ik_step, in_step, is_step, phi, IsTrace};
use bessel_core::involutions::{
    i1_apply, i1_step, i2_apply, i2_step, verify_involution, InvolutionFamily, UPair, VPair,
};
use bessel_core::matchings::enumerate_matchings;
use bessel_core::polynomials::{
    coefficient_check, default_eval_points, lemma_checks, ode_residual, wilf_round_trips,
};
use bessel_core::report::VerificationReport;
use bessel_core::Matching;
use num_bigint::BigInt;

fn verdict(criterion: u32, ok: bool, detail: impl AsRef<str>) -> bool {
    println!(
        "criterion {criterion}: {} ({})",
        if ok { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    ok
}

fn parse(text: &str, ambient: u32) -> Matching {
    Matching::parse(text, ambient).unwrap()
}

static IK_REPORT: OnceLock<(VerificationReport, Duration)> = OnceLock::new();
static IS_REPORT: OnceLock<(VerificationReport, Duration)> = OnceLock::new();

fn ik_report() -> &'static (VerificationReport, Duration) {
    IK_REPORT.get_or_init(|| {
        let t = Instant::now();
        let r = injections::verify_ik(10).unwrap();
        (r, t.elapsed())
    })
}

fn is_report() -> &'static (VerificationReport, Duration) {
    IS_REPORT.get_or_init(|| {
        let t = Instant::now();
        let r = injections::verify_is(10).unwrap();
        (r, t.elapsed())
    })
}

fn criterion_1_inverse_formulas() -> bool {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 0..=30 {
        for l in 0..=n {
            if inverse_sum_first(n, l) != delta(n, l) || inverse_sum_second(n, l) != delta(n, l) {
                bad.push((n, l));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        bad.is_empty() && elapsed < Duration::from_secs(5),
        format!("496 cells, failures {bad:?}, {elapsed:.2?} (limit 5s)"),
    )
}

fn criterion_2_involution_i1() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 0..=7 {
        for l in 0..=n {
            let r = verify_involution(InvolutionFamily::I1, n, l).unwrap();
            cases += r.cases;
            let fixed = &r.cells[0].facts["fixed_points"];
            if !r.passed || fixed != if n == l { "1" } else { "0" } {
                failures.push((n, l, r.counterexample.clone()));
            }
            if r.cells[0].facts["signed_sum"] != inverse_sum_first(n, l).to_string() {
                failures.push((n, l, None));
            }
        }
    }

    let u = UPair::new(
        7,
        2,
        parse("{{2,3},{4,7}}", 11),
        parse("{{1,10},{5,11},{8,9}}", 11),
    )
    .unwrap();
    let step = i1_step(&u).unwrap();
    let example_ok = step.edge.to_string() == "{2,3}"
        && step.output.alpha() == &parse("{{4,7}}", 11)
        && step.output.beta() == &parse("{{1,10},{2,3},{5,11},{8,9}}", 11)
        && step.output.k() == 6
        && i1_apply(&step.output).unwrap() == u;
    let elapsed = start.elapsed();
    verdict(
        2,
        failures.is_empty() && example_ok && elapsed < Duration::from_secs(60),
        format!(
            "{cases} elements over n <= 7, example {}, failures {failures:?}, {elapsed:.2?} (limit 60s)",
            if example_ok { "matches" } else { "differs" }
        ),
    )
}

fn criterion_3_involution_i2() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 0..=7 {
        for l in 0..=n {
            let r = verify_involution(InvolutionFamily::I2, n, l).unwrap();
            cases += r.cases;
            let fixed = &r.cells[0].facts["fixed_points"];
            if !r.passed || fixed != if n == l { "1" } else { "0" } {
                failures.push((n, l, r.counterexample.clone()));
            }
            if r.cells[0].facts["signed_sum"] != inverse_sum_second(n, l).to_string() {
                failures.push((n, l, None));
            }
        }
    }

    let v = VPair::new(
        10,
        5,
        8,
        parse("{{2,3},{4,11}}", 12),
        parse("{{1,7},{5,10},{8,9}}", 12),
    )
    .unwrap();
    let step = i2_step(&v).unwrap();
    let out = &step.output;
    let example_ok = step.edge.to_string() == "{4,11}"
        && out.k() == 9
        && out.ambient() == 11
        && out.alpha() == &parse("{{2,3}}", 11)
        && out.beta() == &parse("{{1,7},{4,11},{5,10},{8,9}}", 11)
        && i2_apply(out).unwrap() == v;
    let elapsed = start.elapsed();
    verdict(
        3,
        failures.is_empty() && example_ok && elapsed < Duration::from_secs(60),
        format!(
            "{cases} elements over n <= 7 with level bijections, example {}, failures {failures:?}, {elapsed:.2?}",
            if example_ok { "matches (V_9)" } else { "differs" }
        ),
    )
}

fn criterion_4_phi() -> bool {
    fn subsets(top: u32, r: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..=top {
            cur.push(v);
            subsets(top, r, v + 1, cur, out);
            cur.pop();
        }
    }
    let start = Instant::now();
    let mut cases = 0;
    let mut ok = true;
    for r in 0..=6usize {
        let top = 2 * r as u32 + 2;
        let mut all = Vec::new();
        subsets(top, r, 1, &mut Vec::new(), &mut all);
        let mut images = HashSet::new();
        for a in &all {
            let img = phi(a, r).unwrap();
            let added: Vec<u32> = img.iter().copied().filter(|x| !a.contains(x)).collect();
            ok &= added.len() == 1 && added[0] != top && images.insert(img);
        }
        cases += all.len();
    }
    let expected: BigInt = (0..=6u32).map(|r| binomial(2 * r + 2, r)).sum();
    ok &= BigInt::from(cases) == expected;
    ok &= phi(&[2], 1).unwrap() == vec![2, 3];
    let elapsed = start.elapsed();
    verdict(
        4,
        ok && elapsed < Duration::from_secs(1),
        format!("{cases} subsets, phi({{2}}) = {{2,3}}, {elapsed:.2?} (limit 1s)"),
    )
}

fn criterion_5_injection_ik() -> bool {
    let (report, elapsed) = ik_report();
    let a1 = parse(
        "{{1,2},{3,4},{6,11},{7,12},{13,14},{16,17},{19,20},{21,22},{23,24}}",
        25,
    );
    let a2 = parse("{{2,3},{6,7},{8,9},{11,12},{14,15},{16,21},{19,24}}", 25);
    let t = ik_step(&a1, &a2, 25).unwrap();
    let example_ok = t.labeled.r == 1
        && t.s == vec![2]
        && t.phi_s == vec![2, 3]
        && t.beta1
            == parse(
                "{{1,2},{3,4},{6,11},{7,12},{13,14},{16,21},{19,20},{23,24}}",
                25,
            )
        && t.beta2
            == parse(
                "{{2,3},{6,7},{8,9},{11,12},{14,15},{16,17},{19,24},{21,22}}",
                25,
            );
    verdict(
        5,
        report.passed && example_ok && *elapsed < Duration::from_secs(300),
        format!(
            "{} pairs over {} cells with ambient <= 10, K_25 example {}, {elapsed:.2?} (limit 300s), counterexample {:?}",
            report.cases,
            report.cells.len(),
            if example_ok { "matches" } else { "differs" },
            report.counterexample
        ),
    )
}

fn criterion_6_injection_is() -> bool {
    let (report, elapsed) = is_report();
    let a1 = parse(
        "{{1,2},{3,4},{5,10},{6,11},{7,12},{13,14},{18,19},{20,25},{23,24}}",
        25,
    );
    let a2 = parse("{{2,3},{6,7},{8,9},{11,12},{14,15},{17,18},{19,20}}", 23);
    let t = in_step(&a1, &a2, 17, 9).unwrap();
    let routed = matches!(is_step(&a1, &a2, 17, 9).unwrap(), IsTrace::N(_));
    let example_ok = routed
        && t.x == 20
        && t.y == 16
        && t.b1
            == parse(
                "{{1,2},{3,4},{5,10},{6,11},{7,12},{13,14},{18,19},{23,24}}",
                24,
            )
        && t.b2
            == parse(
                "{{2,3},{6,7},{8,9},{11,12},{14,15},{17,18},{19,20},{16,24}}",
                24,
            );
    let both_branches = report
        .cells
        .iter()
        .any(|c| c.facts["branch_n"] != "0" && c.facts["branch_n"] != c.facts["domain"]);
    verdict(
        6,
        report.passed && example_ok && both_branches,
        format!(
            "{} pairs over {} (n,k) cells with 2n-k <= 10, branch images disjoint, example x=20 y=16 {}, {elapsed:.2?}, counterexample {:?}",
            report.cases,
            report.cells.len(),
            if example_ok { "matches" } else { "differs" },
            report.counterexample
        ),
    )
}

fn parse_cell(label: &str) -> Vec<u32> {
    label
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect()
}

fn criterion_7_log_concavity() -> bool {
    let algebraic = check_log_concavity(30);

    let mut combinatorial_ok = true;
    let mut cells = 0;
    for cell in &ik_report().0.cells {
        let nums = parse_cell(&cell.cell);
        let (ambient, size) = (nums[0], nums[2]);
        let domain: BigInt = cell.facts["domain"].parse().unwrap();
        let image: BigInt = cell.facts["image"].parse().unwrap();
        let codomain: BigInt = cell.facts["codomain"].parse().unwrap();
        let m = matching_number(ambient, size + 1);
        combinatorial_ok &= cell.passed
            && domain == image
            && domain == matching_number(ambient, size + 2) * matching_number(ambient, size)
            && codomain == &m * &m
            && image <= codomain;
        cells += 1;
    }
    for cell in &is_report().0.cells {
        let nums = parse_cell(&cell.cell);
        let (n, k) = (nums[0], nums[1]);
        let domain: BigInt = cell.facts["domain"].parse().unwrap();
        let image: BigInt = cell.facts["image"].parse().unwrap();
        let codomain: BigInt = cell.facts["codomain"].parse().unwrap();
        let a = bessel_first_signless(n, k);
        combinatorial_ok &= cell.passed
            && domain == image
            && domain == bessel_first_signless(n, k - 1) * bessel_first_signless(n, k + 1)
            && codomain == &a * &a
            && image <= codomain;
        cells += 1;
    }
    verdict(
        7,
        algebraic.is_ok() && combinatorial_ok,
        format!(
            "{:?} inequalities for n <= 30; {cells} exhaustive cells with |domain| = |image| <= |codomain|",
            algebraic
        ),
    )
}

fn criterion_8_polynomial_layer() -> bool {
    let ode_ok = (0..=15).all(|n| ode_residual(n).is_zero());
    let coeff = coefficient_check(20);
    let points = default_eval_points();
    let lemmas = lemma_checks(12, &points);
    let wilf = wilf_round_trips(0x5eed, 100, 10);
    verdict(
        8,
        ode_ok && coeff.is_none() && points.len() == 13 && lemmas.passed && wilf.passed,
        format!(
            "ode n<=15 {ode_ok}, coefficient mismatch {coeff:?}, lemmas {} cases at {} points, wilf {} trials",
            lemmas.cases,
            points.len(),
            wilf.cases
        ),
    )
}

fn criterion_9_cross_layer() -> bool {
    let mut ok = true;
    for n in 0..=12 {
        for k in 0..=n / 2 + 1 {
            ok &= BigInt::from(enumerate_matchings(n, k).len()) == matching_number(n, k);
        }
    }
    // t(n) = t(n-1) + (n-1) t(n-2), the number of involutions of [n].
    let mut t = vec![BigInt::from(1), BigInt::from(1)];
    for n in 2..=20u32 {
        let next = &t[n as usize - 1] + BigInt::from(n - 1) * &t[n as usize - 2];
        t.push(next);
    }
    for n in 0..=20u32 {
        let total: BigInt = (0..=n).map(|k| bessel_second(n, k)).sum();
        ok &= total == t[n as usize];
    }
    verdict(
        9,
        ok,
        format!(
            "matching enumeration n <= 12, row sums n <= 20 (t(20) = {})",
            t[20]
        ),
    )
}

fn main() {
    let criteria: [fn() -> bool; 9] = [
        criterion_1_inverse_formulas,
        criterion_2_involution_i1,
        criterion_3_involution_i2,
        criterion_4_phi,
        criterion_5_injection_ik,
        criterion_6_injection_is,
        criterion_7_log_concavity,
        criterion_8_polynomial_layer,
        criterion_9_cross_layer,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
