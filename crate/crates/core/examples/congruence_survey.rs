//! A tour of the built-in congruence catalog: the literature cross-checks,
//! the corollaries, and the two-prime adjudication report.
//!
//! Run with: cargo run --example congruence_survey

use multiharmonic::{
    verify_corollary, verify_lemma, verify_literature, Corollary, Lemma, Literature,
};

fn show(report: &multiharmonic::CongruenceReport) {
    println!(
        "  {} {:<18} {:<22} mod={:<6} lhs={:<6} rhs={}",
        if report.pass { "PASS" } else { "FAIL" },
        report.id,
        report.params,
        if report.modulus == 0 {
            "exact".into()
        } else {
            report.modulus.to_string()
        },
        report
            .lhs
            .as_ref()
            .map(|v| v.render())
            .unwrap_or_else(|| "-".into()),
        report
            .rhs
            .as_ref()
            .map(|v| v.render())
            .unwrap_or_else(|| "-".into()),
    );
}

fn main() {
    println!("literature congruences:");
    for p in [5u64, 7, 11, 13] {
        show(&verify_literature(&Literature::Eq1_1 { p }));
    }
    for (p, n) in [(7u64, 3u32), (7, 4), (11, 5)] {
        show(&verify_literature(&Literature::Eq1_2 { p, n }));
    }
    show(&verify_literature(&Literature::Eq1_3 { p: 5, r: 3 }));
    for r in [1u32, 2] {
        show(&verify_literature(&Literature::Eq1_4 { p: 7, r }));
    }
    show(&verify_literature(&Literature::Eq1_5 { p: 5 }));
    show(&verify_literature(&Literature::Eq1_6 { p: 11, r: 2 }));

    println!("\ncorollaries:");
    for p in [3u64, 5, 13] {
        show(&verify_corollary(&Corollary::C1_1 { p }));
    }
    show(&verify_corollary(&Corollary::C1_2 { p: 5, r: 2 }));
    show(&verify_corollary(&Corollary::C1_4 { p: 5, r: 2 }));
    show(&verify_corollary(&Corollary::C1_5 {
        p1: 5,
        r1: 1,
        p2: 7,
        r2: 1,
    }));

    println!("\ntwo-prime adjudication (oracle vs literal form vs theorem form):");
    let report = verify_corollary(&Corollary::C1_3 {
        p1: 5,
        r1: 1,
        p2: 7,
        r2: 1,
    });
    show(&report);
    println!("  notes: {}", report.notes);

    println!("\nlemma spot checks:");
    show(&verify_lemma(&Lemma::L2_2 { n: 175 }));
    show(&verify_lemma(&Lemma::L2_3 { n: 25 }));
    show(&verify_lemma(&Lemma::L2_6 { n: 7 }));
    show(&verify_lemma(&Lemma::L2_6 { n: 35 }));
    show(&verify_lemma(&Lemma::L2_7 {
        n: 15,
        sign: multiharmonic::SignPattern::Uniform,
    }));
}
