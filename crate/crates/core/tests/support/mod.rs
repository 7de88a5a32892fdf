#![allow(dead_code)]

pub mod cbp_tables;

use std::time::{Duration, Instant};

/// Prints the single status line of an acceptance criterion and fails the
/// test when the check (or, in optimized builds, the time budget) fails.
/// Debug builds report the time but do not enforce the budget.
pub fn report(n: u32, start: Instant, budget: Duration, ok: bool, detail: &str) {
    let took = start.elapsed();
    let enforce = !cfg!(debug_assertions);
    let in_time = took <= budget;
    let pass = ok && (in_time || !enforce);
    let timing = if enforce {
        format!("{:.2}s of {:.0}s", took.as_secs_f64(), budget.as_secs_f64())
    } else {
        format!(
            "{:.2}s, budget {:.0}s not enforced in debug builds",
            took.as_secs_f64(),
            budget.as_secs_f64()
        )
    };
    println!(
        "criterion {n}: {} ({detail}; {timing})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(
        in_time || !enforce,
        "criterion {n} exceeded its time budget: {took:?} > {budget:?}"
    );
}
