//! Acceptance suite: one PASS/FAIL line per criterion. Every check is exact,
//! so the tolerance printed on each line is zero.
//!
//! Criteria that cannot be met as stated print FAIL. Their assertions pin the
//! exact set of failing records instead, so any drift is still caught.

use std::collections::BTreeSet;

use num_traits::One;
use qcert_core::cyclo::{cyclotomic, divisors};
use qcert_core::kernel::{rat, Polynomial, Rational};
use qcert_core::padic::{bernoulli_poly_eval, padic_gamma};
use qcert_core::qseries::bridge::{
    check_q_to_1_bridge, q_limit_factored, q_limit_reduced, BridgeSum,
};
use qcert_core::suite::{run_suite, Record, Report, SuiteConfig};

fn config(checks: &[&str]) -> SuiteConfig {
    SuiteConfig {
        checks: checks.iter().map(|s| s.to_string()).collect(),
        ..SuiteConfig::default()
    }
}

fn run(c: SuiteConfig) -> Report {
    run_suite(&c).expect("suite runs")
}

fn with_shape(checks: &[&str], d: i64, r: i64, ns: &[i64]) -> Report {
    run(SuiteConfig {
        d,
        r,
        n_list: Some(ns.to_vec()),
        ..config(checks)
    })
}

fn label(r: &Record) -> String {
    let params = r
        .params
        .iter()
        .filter(|(k, _)| matches!(k.as_str(), "n" | "p"))
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",");
    if r.variant.is_empty() {
        format!("{} {params}", r.check)
    } else {
        format!("{} {params} {}", r.check, r.variant)
    }
}

struct Tally {
    records: Vec<Record>,
}

impl Tally {
    fn of(reports: impl IntoIterator<Item = Report>) -> Self {
        Self {
            records: reports.into_iter().flat_map(|r| r.records).collect(),
        }
    }

    fn evaluated(&self) -> usize {
        self.records.iter().filter(|r| !r.skipped).count()
    }

    fn skipped(&self) -> Vec<String> {
        self.records
            .iter()
            .filter(|r| r.skipped)
            .map(label)
            .collect()
    }

    fn failing(&self) -> BTreeSet<String> {
        self.records
            .iter()
            .filter(|r| !r.skipped && !r.pass)
            .map(label)
            .collect()
    }
}

fn line(n: u32, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n}: {tag} (tolerance 0, exact) {detail}");
}

/// All records evaluated and passing.
fn green(n: u32, t: &Tally, what: &str) {
    let fails = t.failing();
    let ok = fails.is_empty() && t.skipped().is_empty() && t.evaluated() > 0;
    line(
        n,
        ok,
        &format!(
            "{what}: {}/{} records pass",
            t.evaluated() - fails.len(),
            t.evaluated()
        ),
    );
    assert!(t.skipped().is_empty(), "skipped: {:?}", t.skipped());
    assert!(fails.is_empty(), "failing: {fails:?}");
    assert!(t.evaluated() > 0);
}

/// Known to fail as stated; asserts the failing set is exactly `expected`.
fn red(n: u32, t: &Tally, what: &str, expected: &[&str]) {
    let fails = t.failing();
    line(
        n,
        fails.is_empty(),
        &format!(
            "{what}: {}/{} records pass; failing {:?}",
            t.evaluated() - fails.len(),
            t.evaluated(),
            fails
        ),
    );
    assert!(t.skipped().is_empty(), "skipped: {:?}", t.skipped());
    let want: BTreeSet<String> = expected.iter().map(|s| s.to_string()).collect();
    assert_eq!(fails, want);
}

#[test]
fn criterion_1_general_theorem() {
    let t = Tally::of([
        with_shape(&["theorem_general"], 3, -1, &[2, 5, 8, 11, 14]),
        with_shape(&["theorem_general"], 3, 1, &[4, 7, 10]),
        with_shape(&["theorem_general"], 2, 1, &[3, 5, 7]),
    ]);
    assert_eq!(t.evaluated(), 11 * 5 * 2);
    green(
        1,
        &t,
        "[n]Phi_n(q)^3 over 11 shapes, 5 samples, both truncations",
    );
}

#[test]
fn criterion_2_watson() {
    let r = run(SuiteConfig {
        n_list: Some(vec![0, 1, 2, 3, 4]),
        ..config(&["watson"])
    });
    let t = Tally::of([r]);
    assert_eq!(t.evaluated(), 25);
    green(2, &t, "8phi7 = prefactor * 4phi3 for n_trunc 0..4");
}

fn lemma_triples(checks: &[&str]) -> Tally {
    Tally::of([
        with_shape(checks, 3, -1, &[2, 5]),
        with_shape(checks, 3, 1, &[4]),
    ])
}

#[test]
fn criterion_3_lemmas() {
    let t = lemma_triples(&["la1", "la2", "la3"]);
    let degenerate = t
        .records
        .iter()
        .filter(|r| r.check == "la3")
        .filter(|r| {
            r.params.get("a") == Some(&"1".into()) && r.params.get("b") == Some(&"1".into())
        })
        .count();
    assert_eq!(degenerate, 3, "a = b = 1 sample present at every triple");
    green(3, &t, "la1, la2 (both W), la3 incl. a = b = 1");
}

#[test]
fn criterion_4_parametric_crt_lhospital() {
    let t = lemma_triples(&["thm2", "crt", "lhospital"]);
    green(4, &t, "parametric theorem, CRT relations, L'Hospital limit");
}

#[test]
fn criterion_5_corollaries() {
    let mut reports = vec![run(SuiteConfig {
        n_list: Some(vec![2, 5, 8, 11]),
        ..config(&["c22", "c23", "c24", "c26"])
    })];
    reports.push(run(SuiteConfig {
        n_list: Some(vec![5, 8, 11, 14]),
        ..config(&["equ3"])
    }));
    let equ4 = run(SuiteConfig {
        r: 1,
        n_list: Some(vec![4, 7, 10]),
        ..config(&["equ4"])
    });
    assert!(equ4
        .records
        .iter()
        .all(|r| r.params.get("status") == Some(&"conjecture".into())));
    reports.push(equ4);
    let t = Tally::of(reports);
    red(
        5,
        &t,
        "c22, c23, c24, c26, equ3, equ4 (conjecture)",
        &[
            "c23 n=11 M=n-1, D=2",
            "c23 n=11 M=n-1, D=4",
            "equ3 n=11 M=(n+1)/3",
            "equ3 n=14 M=(n+1)/3",
            "equ3 n=5 M=(n+1)/3",
            "equ3 n=8 M=(n+1)/3",
        ],
    );
}

#[test]
fn criterion_6_classical() {
    let ids = [
        "van_hamme_d2",
        "long_ramakrishna",
        "liu_e4",
        "equ1",
        "equ2",
        "equ7",
        "equ8",
        "combined_rare",
        "lehmer",
        "equ9",
        "bridge",
    ];
    let r = run(config(&ids));
    let lehmer = r.records.iter().filter(|x| x.check == "lehmer").count();
    assert_eq!(lehmer, 13, "primes 5..=47");
    let t = Tally::of([r]);
    red(
        6,
        &t,
        "p-adic and classical checks at their stated powers",
        &[
            "equ7 p=11",
            "equ7 p=17",
            "equ7 p=23",
            "equ7 p=5",
            "equ8 p=11",
            "equ8 p=17",
            "equ8 p=23",
            "equ8 p=5",
        ],
    );
}

#[test]
fn criterion_7_negative_controls() {
    let theorem = run(SuiteConfig {
        extra_power: 1,
        n_list: Some(vec![5, 8]),
        ..config(&["theorem_general"])
    });
    let equ2 = run(SuiteConfig {
        precision: Some(5),
        ..config(&["equ2"])
    });
    let t_fail = theorem.summary.fail;
    let e_fail = equ2.summary.fail;
    let ok = t_fail > 0 && e_fail > 0;
    line(
        7,
        ok,
        &format!(
            "[n]Phi_n(q)^4 fails {t_fail}/{} theorem records; p^5 fails {e_fail}/{} equ2 records",
            theorem.records.len(),
            equ2.records.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_properties() {
    let cyclo = (1..=120u64).all(|n| {
        let prod = divisors(n)
            .into_iter()
            .fold(Polynomial::one(), |acc, d| &acc * &cyclotomic(d));
        prod == &Polynomial::monomial(Rational::one(), n as usize) - &Polynomial::one()
    });
    let reflection = [5u64, 7, 11].iter().all(|&p| {
        (1..=p as i64).all(|x| {
            let g = padic_gamma(&rat(x, 1), p, 3).unwrap();
            let h = padic_gamma(&rat(1 - x, 1), p, 3).unwrap();
            let sign = if x % 2 == 0 { 1 } else { p.pow(3) - 1 };
            g.mul(&h).residue == sign
        })
    });
    let bernoulli = (0..=10usize).all(|k| {
        (-6..=6).all(|a| {
            let x = rat(a, 5);
            let s = if k % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            bernoulli_poly_eval(k, &(Rational::one() - &x)) == bernoulli_poly_eval(k, &x) * s
        })
    });
    let bridge = BridgeSum::ALL.iter().all(|&w| {
        [2u64, 5, 11].iter().all(|&p| {
            let (v, _) = check_q_to_1_bridge(w, p).unwrap();
            v.pass && q_limit_factored(w, p).unwrap() == q_limit_reduced(w, p).unwrap()
        })
    });
    let ok = cyclo && reflection && bernoulli && bridge;
    line(
        8,
        ok,
        &format!(
            "cyclotomic product to 120 {cyclo}, Gamma_p reflection {reflection}, \
             Bernoulli symmetry {bernoulli}, q -> 1 cross-path {bridge}; \
             randomized suites in tests/properties.rs"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_9_determinism() {
    let c = SuiteConfig {
        n_list: Some(vec![2, 5]),
        p_list: Some(vec![5, 11]),
        ..config(&["theorem_general", "la3", "equ1", "c26"])
    };
    let first = run(c.clone());
    let a = first.comparable_json();
    let b = run(c.clone()).comparable_json();
    let single = run(SuiteConfig { jobs: Some(1), ..c });
    let ok = a == b && single.records == first.records && single.summary == first.summary;
    line(
        9,
        ok,
        &format!(
            "two runs byte-identical ({} bytes), single-thread records identical",
            a.len()
        ),
    );
    assert!(ok);
}
