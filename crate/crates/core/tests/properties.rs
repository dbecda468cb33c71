//! Randomized property suites, fixed seed.

mod common;

use common::suites;

fn run(name: &str, r: suites::Outcome) {
    match r {
        Ok(n) => assert!(n >= suites::CASES, "{name}: only {n} cases"),
        Err(e) => panic!("{name}: {e}"),
    }
}

#[test]
fn language_monotonicity() {
    run("language monotonicity", suites::language_monotonicity());
}

#[test]
fn admissible_heredity() {
    run("admissibility heredity", suites::admissible_heredity());
}

#[test]
fn preceq_transitivity() {
    run("preceq transitivity", suites::preceq_transitivity());
}

#[test]
fn stripe_symmetry() {
    run("stripe symmetry", suites::stripe_symmetry());
}
