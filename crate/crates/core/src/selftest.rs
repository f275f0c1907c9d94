//! The canned verification grid: thirteen numbered criteria covering the
//! literature cross-checks, both theorems, all corollaries and lemmas, and
//! the oracle/fast equivalence sweep. `multiharmonic selftest` runs it, and
//! the `acceptance` test target asserts it criterion by criterion.

use std::time::{Duration, Instant};

use crate::arith::{factorize, rational, Factorization};
use crate::bernoulli::bernoulli_numbers;
use crate::congruence::{
    verify_corollary, verify_lemma, verify_literature, verify_theorem1, verify_theorem2,
    CongruenceReport, Corollary, Lemma, Literature, Method, ReportValue,
};
use crate::harmonic::{
    triple_sum_fast_alternating, triple_sum_fast_uniform, triple_sum_naive, CoprimalityFilter,
    SignPattern,
};
use num::Zero;

/// Result of one acceptance criterion: its reports, every assertion that
/// failed, and the wall-clock budget it ran under.
pub struct CriterionOutcome {
    pub number: u8,
    pub summary: &'static str,
    pub reports: Vec<CongruenceReport>,
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status_line(&self) -> String {
        format!(
            "criterion {:2}: {} [{:.2}s] {}{}",
            self.number,
            if self.passed() { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.summary,
            if self.passed() {
                String::new()
            } else {
                format!(" ({} failed assertion(s))", self.failures.len())
            }
        )
    }
}

struct Checker {
    reports: Vec<CongruenceReport>,
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            reports: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn expect_pass(&mut self, report: CongruenceReport) {
        if !report.pass {
            self.failures.push(format!(
                "{} {} expected pass: lhs={} rhs={} notes=[{}]",
                report.id,
                report.params,
                render_opt(&report.lhs),
                render_opt(&report.rhs),
                report.notes
            ));
        }
        self.reports.push(report);
    }

    fn expect_value(&mut self, report: CongruenceReport, value: u64) {
        match &report.lhs {
            Some(ReportValue::Residue(r)) if r.value() == value => {}
            other => self.failures.push(format!(
                "{} {} expected anchor lhs {value}, got {}",
                report.id,
                report.params,
                other
                    .as_ref()
                    .map(|v| v.render())
                    .unwrap_or_else(|| "<none>".into())
            )),
        }
        self.expect_pass(report);
    }
}

fn render_opt(v: &Option<ReportValue>) -> String {
    v.as_ref()
        .map(|v| v.render())
        .unwrap_or_else(|| "<none>".into())
}

fn outcome(
    number: u8,
    summary: &'static str,
    budget_secs: u64,
    run: impl FnOnce(&mut Checker),
) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    run(&mut c);
    let elapsed = started.elapsed();
    let budget = Duration::from_secs(budget_secs);
    if elapsed > budget {
        c.failures.push(format!(
            "runtime {:.2}s exceeded budget {}s",
            elapsed.as_secs_f64(),
            budget_secs
        ));
    }
    CriterionOutcome {
        number,
        summary,
        reports: c.reports,
        failures: c.failures,
        elapsed,
        budget,
    }
}

fn fac(n: u64) -> Factorization {
    factorize(n).expect("criterion modulus factors")
}

/// Criterion 1: the plain triple sum at p against -2 B_{p-3} (mod p).
pub fn criterion_1() -> CriterionOutcome {
    outcome(
        1,
        "triple sum at p vs -2B_(p-3), p in {5,7,11,13}",
        1,
        |c| {
            for p in [5u64, 7, 11, 13] {
                let report = verify_literature(&Literature::Eq1_1 { p });
                if p == 5 {
                    c.expect_value(report, 3);
                } else {
                    c.expect_pass(report);
                }
            }
        },
    )
}

/// Criterion 2: alternating triple sum at p against (1/2) B_{p-3}.
pub fn criterion_2() -> CriterionOutcome {
    outcome(
        2,
        "alternating sum at p vs (1/2)B_(p-3), p in {3,5,7,11,13}",
        1,
        |c| {
            for p in [3u64, 5, 7, 11, 13] {
                let report = verify_corollary(&Corollary::C1_1 { p });
                match p {
                    3 => c.expect_value(report, 2),
                    5 => c.expect_value(report, 3),
                    _ => c.expect_pass(report),
                }
            }
        },
    )
}

/// Criterion 3: filtered alternating sum at p^r vs (p^{r-1}/2) B_{p-3}.
pub fn criterion_3() -> CriterionOutcome {
    outcome(
        3,
        "alternating sum at p^r, p^r in {25,125,49,121}",
        5,
        |c| {
            for (p, r) in [(5u64, 2u32), (5, 3), (7, 2), (11, 2)] {
                let report = verify_corollary(&Corollary::C1_2 { p, r });
                if (p, r) == (5, 2) {
                    c.expect_value(report, 15);
                } else {
                    c.expect_pass(report);
                }
                c.expect_pass(verify_literature(&Literature::Eq1_6 { p, r }));
            }
        },
    )
}

/// Criterion 4: uniform sum at p^r vs both printed forms of the same value.
pub fn criterion_4() -> CriterionOutcome {
    outcome(
        4,
        "uniform sum at p^r, both printed forms, p^r in {25,125,49}",
        5,
        |c| {
            for (p, r) in [(5u64, 2u32), (5, 3), (7, 2)] {
                let report = verify_literature(&Literature::Eq1_3 { p, r });
                c.expect_pass(report);
                let report = verify_corollary(&Corollary::C1_4 { p, r });
                c.check(
                    report.notes.contains("agree = true"),
                    format!(
                        "c1_4 p={p} r={r}: printed forms must agree: {}",
                        report.notes
                    ),
                );
                if (p, r) == (5, 2) {
                    c.expect_value(report, 15);
                } else {
                    c.expect_pass(report);
                }
            }
        },
    )
}

/// Criterion 5: the n-fold sums at p with the parity-split right side.
pub fn criterion_5() -> CriterionOutcome {
    outcome(
        5,
        "n-fold sums at p, p in {7,11,13}, n in {3,4,5}",
        10,
        |c| {
            for p in [7u64, 11, 13] {
                for n in [3u32, 4, 5] {
                    if n as u64 > p - 2 {
                        continue;
                    }
                    c.expect_pass(verify_literature(&Literature::Eq1_2 { p, n }));
                }
            }
        },
    )
}

/// Criterion 6: the five-fold sum at p^r against -(5!/6) p^{r-1} B_{p-5}.
pub fn criterion_6() -> CriterionOutcome {
    outcome(6, "five-fold sum at p, p in {7,11,13}, r=1", 30, |c| {
        for p in [7u64, 11, 13] {
            let report = verify_literature(&Literature::Eq1_4 { p, r: 1 });
            if p == 7 {
                // stated expectation: both sides 6 mod 7
                c.expect_value(report, 6);
            } else {
                c.expect_pass(report);
            }
        }
    })
}

/// Criterion 7: the alternating sum at p modulo p^2, exact-rational right side.
pub fn criterion_7() -> CriterionOutcome {
    outcome(7, "alternating sum mod p^2, p in {5,7}", 5, |c| {
        for p in [5u64, 7] {
            let report = verify_literature(&Literature::Eq1_5 { p });
            if p == 5 {
                c.expect_value(report, 18);
            } else {
                c.expect_pass(report);
            }
        }
    })
}

/// Criterion 8: the alternating theorem on composite n, naive and fast.
pub fn criterion_8() -> CriterionOutcome {
    outcome(
        8,
        "alternating theorem at n in {35,175,245,385,1225}",
        120,
        |c| {
            for n in [35u64, 175, 245, 385] {
                let report = verify_theorem1(&fac(n), 0, Method::Both);
                c.check(
                    !report.notes.contains("disagree"),
                    format!(
                        "theorem1 n={n}: naive and fast LHS must agree: {}",
                        report.notes
                    ),
                );
                c.check(
                    report.pass || report.notes.contains("terms:"),
                    format!(
                        "theorem1 n={n}: failure must localize subset terms: {}",
                        report.notes
                    ),
                );
                c.expect_pass(report);
            }
            let report = verify_theorem1(&fac(1225), 0, Method::Fast);
            c.expect_pass(report);
        },
    )
}

/// Criterion 9: the doubled-target form, factor 2^{r0} on the right side.
pub fn criterion_9() -> CriterionOutcome {
    outcome(
        9,
        "doubled targets 2^r0 n, n in {5,35}, r0 in {1,2}",
        10,
        |c| {
            for n in [5u64, 35] {
                for r0 in [1u32, 2] {
                    let report = verify_theorem1(&fac(n), r0, Method::Both);
                    if n == 5 && r0 == 1 {
                        c.expect_value(report, 1);
                    } else {
                        c.expect_pass(report);
                    }
                }
            }
        },
    )
}

/// Criterion 10: the uniform theorem, including the mod-n^2 lift assertion
/// and the exact Bernoulli table build to index 838.
pub fn criterion_10() -> CriterionOutcome {
    outcome(
        10,
        "uniform theorem at n in {25,35,175} with lift assertion",
        120,
        |c| {
            let table_started = Instant::now();
            let table = bernoulli_numbers(838);
            let build = table_started.elapsed();
            c.check(
                build < Duration::from_secs(60),
                format!(
                    "Bernoulli table to 838 took {:.2}s, budget 60s",
                    build.as_secs_f64()
                ),
            );
            // the pair term's index: phi(25 * 49) - 2
            c.check(
                !table.get(838).is_zero() && table.get(838).denom() > &num::BigInt::from(1),
                "B_838 must be a nontrivial exact rational".to_string(),
            );
            for n in [25u64, 35, 175] {
                let f = fac(n);
                c.check(
                    !matches!(
                        triple_sum_fast_uniform(&f),
                        Err(crate::Error::LiftDivisibilityFailure { .. })
                    ),
                    format!("lift divisibility must hold at n={n}"),
                );
                c.expect_pass(verify_theorem2(&f, 0, Method::Both));
            }
        },
    )
}

/// Criterion 11: the lemma suites on their stated grids.
pub fn criterion_11() -> CriterionOutcome {
    outcome(
        11,
        "lemma suites (power sums, progressions, identities, doubling)",
        120,
        |c| {
            // restricted power sums: full grid, exact equality
            let mut bad = 0usize;
            for p in 1..=30u64 {
                for m in 1..=6u64 {
                    for r in 0..m as i64 {
                        for k in 0..=8u32 {
                            let rep = verify_lemma(&Lemma::L2_1 { p, m, r, k });
                            if !rep.pass {
                                bad += 1;
                            }
                        }
                    }
                }
            }
            c.check(bad == 0, format!("power-sum grid: {bad} mismatches"));
            c.reports.push(verify_lemma(&Lemma::L2_1 {
                p: 30,
                m: 6,
                r: 5,
                k: 8,
            }));

            // progression sums: all odd prime powers and two-prime moduli to 3000
            let mut checked = 0usize;
            for n in (3..=3000u64).step_by(2) {
                let f = fac(n);
                let s = f.factors().len();
                if s > 2 || f.primes().any(|p| p == 2) {
                    continue;
                }
                checked += 1;
                let rep = verify_lemma(&Lemma::L2_2 { n });
                if !rep.pass {
                    c.failures
                        .push(format!("progression sums fail at n={n}: {}", rep.notes));
                }
            }
            c.check(
                checked > 1000,
                format!("progression grid too small: {checked}"),
            );
            c.reports.push(verify_lemma(&Lemma::L2_2 { n: 2975 }));

            // squared progression sums on the pinned moduli
            for n in [5u64, 25, 7] {
                c.expect_pass(verify_lemma(&Lemma::L2_3 { n }));
            }

            // multiplication and half-argument identities
            for m in 1..=5u64 {
                for k in 0..=10u32 {
                    for x in [
                        rational(0, 1),
                        rational(1, 2),
                        rational(1, 3),
                        rational(2, 1),
                        rational(-1, 1),
                    ] {
                        let rep = verify_lemma(&Lemma::L2_4 { m, k, x });
                        if !rep.pass {
                            c.failures
                                .push(format!("multiplication identity fails at m={m} k={k}"));
                        }
                    }
                }
            }
            c.reports.push(verify_lemma(&Lemma::L2_4 {
                m: 3,
                k: 4,
                x: rational(1, 2),
            }));
            for nn in 1..=20u32 {
                let rep = verify_lemma(&Lemma::L2_5 { nn });
                if !rep.pass {
                    c.failures
                        .push(format!("half-argument identity fails at nn={nn}"));
                }
            }

            // half-range cube sums
            for n in [5u64, 7, 35, 55, 77] {
                c.expect_pass(verify_lemma(&Lemma::L2_6 { n }));
            }

            // doubling law, both signs, odd N to 500
            for n in (3..=500u64).step_by(2) {
                for sign in [SignPattern::Uniform, SignPattern::AlternatingFirst] {
                    let rep = verify_lemma(&Lemma::L2_7 { n, sign });
                    if !rep.pass {
                        c.failures
                            .push(format!("doubling fails at N={n}: {}", rep.notes));
                    }
                }
            }
            c.reports.push(verify_lemma(&Lemma::L2_7 {
                n: 9,
                sign: SignPattern::AlternatingFirst,
            }));
        },
    )
}

/// Criterion 12: fast evaluators equal the naive oracle for every odd
/// n <= 2000 whose prime factors are all at least 5.
pub fn criterion_12() -> CriterionOutcome {
    outcome(
        12,
        "oracle/fast equivalence sweep, odd n <= 2000, factors >= 5",
        300,
        |c| {
            let mut swept = 0usize;
            for n in (5..=2000u64).step_by(2) {
                if n % 3 == 0 {
                    continue;
                }
                let f = fac(n);
                let filter = CoprimalityFilter::from_factorization(&f);
                swept += 1;

                let fast_alt = triple_sum_fast_alternating(&f);
                let naive_alt = triple_sum_naive(n, SignPattern::AlternatingFirst, &filter, n);
                if fast_alt != naive_alt {
                    c.failures.push(format!(
                        "alternating mismatch at n={n}: {fast_alt:?} vs {naive_alt:?}"
                    ));
                }

                let fast_uni = triple_sum_fast_uniform(&f);
                let naive_uni = triple_sum_naive(n, SignPattern::Uniform, &filter, n);
                if fast_uni != naive_uni {
                    c.failures.push(format!(
                        "uniform mismatch at n={n}: {fast_uni:?} vs {naive_uni:?}"
                    ));
                }
            }
            c.check(swept > 600, format!("sweep too small: {swept} moduli"));
        },
    )
}

/// Criterion 13: the two-prime alternating corollary is adjudicated against
/// both its literal reading and the theorem specialization; the report must
/// be produced and internally consistent (oracle = fast path).
pub fn criterion_13() -> CriterionOutcome {
    outcome(
        13,
        "two-prime corollary adjudication at (5,7) and (7^2,5)",
        60,
        |c| {
            for (p1, r1, p2, r2) in [(5u64, 1u32, 7u64, 1u32), (7, 2, 5, 1)] {
                let report = verify_corollary(&Corollary::C1_3 { p1, r1, p2, r2 });
                c.check(
                    report.lhs.is_some(),
                    format!("c1_3 ({p1},{r1},{p2},{r2}): oracle side must be produced"),
                );
                c.check(
                    report.notes.contains("adjudication"),
                    format!("c1_3 ({p1},{r1},{p2},{r2}): adjudication must be recorded"),
                );
                c.check(
                    report.notes.contains("matches the oracle"),
                    format!(
                        "c1_3 ({p1},{r1},{p2},{r2}): fast path must match the oracle: {}",
                        report.notes
                    ),
                );
                // consistency with the doubled-exponent case: the naive oracle value
                // is also pinned by the theorem-1 verifier's naive/fast agreement
                let n = p1.pow(r1) * p2.pow(r2);
                let both = verify_theorem1(&fac(n), 0, Method::Both);
                c.check(
                    !both.notes.contains("disagree"),
                    format!("c1_3 n={n}: naive/fast consistency: {}", both.notes),
                );
                c.reports.push(report);
            }
        },
    )
}

/// Runs all thirteen criteria in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
        criterion_12(),
        criterion_13(),
    ]
}

/// Quick anchors used by the CLI `verify all` battery.
pub fn verify_all_battery(max_n: u64) -> Vec<CongruenceReport> {
    let mut reports = Vec::new();
    for p in [5u64, 7, 11, 13] {
        reports.push(verify_literature(&Literature::Eq1_1 { p }));
    }
    for p in [3u64, 5, 7, 11, 13] {
        reports.push(verify_corollary(&Corollary::C1_1 { p }));
    }
    for (p, r) in [(5u64, 2u32), (5, 3), (7, 2), (11, 2)] {
        if p.pow(r) <= max_n {
            reports.push(verify_corollary(&Corollary::C1_2 { p, r }));
            reports.push(verify_corollary(&Corollary::C1_4 { p, r }));
        }
    }
    for p in [7u64, 11, 13] {
        for n in [3u32, 4, 5] {
            if (n as u64) <= p - 2 {
                reports.push(verify_literature(&Literature::Eq1_2 { p, n }));
            }
        }
    }
    for p in [7u64, 11, 13] {
        reports.push(verify_literature(&Literature::Eq1_4 { p, r: 1 }));
    }
    for p in [5u64, 7] {
        reports.push(verify_literature(&Literature::Eq1_5 { p }));
    }
    for n in [25u64, 35, 175, 245, 385] {
        if n <= max_n {
            reports.push(verify_theorem1(&fac(n), 0, Method::default_for(n)));
        }
    }
    // the three-prime uniform form would need a Bernoulli index near 10^5
    for n in [25u64, 35, 175, 245] {
        if n <= max_n {
            reports.push(verify_theorem2(&fac(n), 0, Method::default_for(n)));
        }
    }
    for (p1, r1, p2, r2) in [(5u64, 1u32, 7u64, 1u32), (7, 2, 5, 1)] {
        if p1.pow(r1) * p2.pow(r2) <= max_n {
            reports.push(verify_corollary(&Corollary::C1_3 { p1, r1, p2, r2 }));
            reports.push(verify_corollary(&Corollary::C1_5 { p1, r1, p2, r2 }));
        }
    }
    for n in [25u64, 35, 55, 77, 175] {
        if n <= max_n {
            reports.push(verify_lemma(&Lemma::L2_2 { n }));
        }
    }
    for n in [5u64, 25, 7] {
        reports.push(verify_lemma(&Lemma::L2_3 { n }));
    }
    reports.push(verify_lemma(&Lemma::L2_4 {
        m: 3,
        k: 4,
        x: rational(1, 2),
    }));
    reports.push(verify_lemma(&Lemma::L2_5 { nn: 3 }));
    for n in [5u64, 7, 35, 55, 77] {
        reports.push(verify_lemma(&Lemma::L2_6 { n }));
    }
    for n in [9u64, 15, 21, 25, 35] {
        if n <= max_n {
            for sign in [SignPattern::Uniform, SignPattern::AlternatingFirst] {
                reports.push(verify_lemma(&Lemma::L2_7 { n, sign }));
            }
        }
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_is_deterministic_and_nonempty() {
        let a = verify_all_battery(500);
        let b = verify_all_battery(500);
        assert!(a.len() > 30);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.params, y.params);
            assert_eq!(x.pass, y.pass);
        }
    }
}
