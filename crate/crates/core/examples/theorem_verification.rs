//! Verifying the closed-form theorems against the oracle: the prime-power
//! cases hold, the multi-prime cases are adjudicated and fail with the
//! mismatch localized per subset term.
//!
//! Run with: cargo run --example theorem_verification

use multiharmonic::{factorize, verify_theorem1, verify_theorem2, Method};

fn show(report: &multiharmonic::CongruenceReport) {
    println!(
        "  {} {} {} | lhs={} rhs={}",
        if report.pass { "PASS" } else { "FAIL" },
        report.id,
        report.params,
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
    if !report.notes.is_empty() {
        println!("       {}", report.notes);
    }
}

fn main() {
    println!("alternating-sum theorem (naive oracle vs closed form):");
    for n in [5u64, 25, 49, 35, 175] {
        let f = factorize(n).unwrap();
        show(&verify_theorem1(&f, 0, Method::Both));
    }

    println!("\ndoubled targets carry a 2^r0 factor on the closed form:");
    let f = factorize(5).unwrap();
    for r0 in [1u32, 2] {
        show(&verify_theorem1(&f, r0, Method::Both));
    }

    println!("\nuniform-sum theorem (with the mod-n^2 lift in the fast path):");
    for n in [5u64, 25, 125, 35] {
        let f = factorize(n).unwrap();
        show(&verify_theorem2(&f, 0, Method::Both));
    }

    println!("\nlarger modulus, fast path only:");
    let f = factorize(1225).unwrap();
    show(&verify_theorem1(&f, 0, Method::Fast));
}
