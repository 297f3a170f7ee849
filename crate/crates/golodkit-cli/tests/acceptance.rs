//! Acceptance gate: one test per shipped guarantee. Each test prints a
//! single pass or fail line (visible under --nocapture) and panics on
//! failure, so the target doubles as a checklist.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use golodkit::ainf::Transfer;
use golodkit::complex::BasedComplex;
use golodkit::golod::{
    gcd_condition, golod_decision, product_trivial, serre_bound_series, Conclusion, GolodConfig,
};
use golodkit::morse::{minimal_reduction, splitting_homotopy, Matching, Strategy};
use golodkit::parse::parse_ideal;
use golodkit::verify::{run as run_verify, VerifyConfig};
use golodkit::{Field, MonomialIdeal, Subset};

fn s(indices: &[usize]) -> Subset {
    let mut cell = Subset::EMPTY;
    for &i in indices {
        cell = cell.insert(i);
    }
    cell
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load_ideal(name: &str) -> MonomialIdeal {
    let text = std::fs::read_to_string(fixture_dir().join(name)).expect("fixture readable");
    parse_ideal(&text).expect("fixture parses")
}

fn load_matching(name: &str) -> Matching {
    let text = std::fs::read_to_string(fixture_dir().join(name)).expect("fixture readable");
    Matching::from_json(&text).expect("fixture matching parses")
}

struct Criterion {
    n: usize,
    start: Instant,
    limit: Option<Duration>,
    failures: Vec<String>,
}

impl Criterion {
    fn new(n: usize, limit_secs: Option<u64>) -> Criterion {
        Criterion {
            n,
            start: Instant::now(),
            limit: limit_secs.map(Duration::from_secs),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: &str, ok: bool) {
        if !ok {
            self.failures.push(label.to_string());
        }
    }

    fn check_eq<T: PartialEq + Debug>(&mut self, label: &str, got: T, want: T) {
        if got != want {
            self.failures
                .push(format!("{label}: got {got:?}, want {want:?}"));
        }
    }

    fn finish(mut self) {
        let elapsed = self.start.elapsed();
        if let Some(limit) = self.limit {
            if elapsed > limit {
                self.failures
                    .push(format!("took {elapsed:?}, limit {limit:?}"));
            }
        }
        if self.failures.is_empty() {
            println!("criterion {}: PASS ({elapsed:?})", self.n);
        } else {
            println!("criterion {}: FAIL ({})", self.n, self.failures.join("; "));
            panic!("criterion {} failed: {}", self.n, self.failures.join("; "));
        }
    }
}

#[test]
fn criterion_1_worked_example_homotopy() {
    let mut c = Criterion::new(1, Some(1));
    let ideal = load_ideal("fourgen.ideal");
    let taylor = BasedComplex::taylor_full(ideal, Field::Rational, true).unwrap();
    let matching = load_matching("fourgen-reference-matching.json");
    let phi = splitting_homotopy(&taylor, &matching).unwrap();
    let ring = taylor.ideal().ring().clone();

    c.check_eq(
        "phi(u24)",
        phi.of_cell(s(&[1, 3])).render(&ring),
        "u124".to_string(),
    );
    c.check_eq(
        "phi(u13)",
        phi.of_cell(s(&[0, 2])).render(&ring),
        "u134".to_string(),
    );
    c.check_eq(
        "phi(u234)",
        phi.of_cell(s(&[1, 2, 3])).render(&ring),
        "u1234".to_string(),
    );
    let lifted = [s(&[1, 3]), s(&[0, 2]), s(&[1, 2, 3])];
    for cell in taylor.cells() {
        if !lifted.contains(cell) {
            c.check(
                &format!("phi({}) = 0", cell.label()),
                phi.of_cell(*cell).is_zero(),
            );
        }
    }

    c.check_eq(
        "p(u24)",
        phi.project(&taylor, &taylor.basis_element(s(&[1, 3])))
            .render(&ring),
        "-x4*u12 + x3*u14".to_string(),
    );
    c.check(
        "p(u1234) = 0",
        phi.project(&taylor, &taylor.basis_element(s(&[0, 1, 2, 3])))
            .is_zero(),
    );
    c.check_eq(
        "p(u123)",
        phi.project(&taylor, &taylor.basis_element(s(&[0, 1, 2])))
            .render(&ring),
        "u123 + x3*u134".to_string(),
    );
    c.finish();
}

#[test]
fn criterion_2_product_table() {
    let mut c = Criterion::new(2, Some(1));
    let ideal = load_ideal("fourgen.ideal");
    let taylor = BasedComplex::taylor_full(ideal, Field::Rational, true).unwrap();
    let matching = load_matching("fourgen-reference-matching.json");
    let transfer = Transfer::new(taylor, &matching).unwrap();
    let ring = transfer.complex().ideal().ring().clone();

    let low: Vec<Subset> = transfer
        .positive_criticals()
        .into_iter()
        .filter(|cell| cell.len() <= 2)
        .collect();
    c.check_eq("basis size", low.len(), 8);

    let expected: BTreeMap<(&str, &str), &str> = [
        (("u1", "u2"), "x2*u12"),
        (("u1", "u3"), "x2*u14 - x2*u34"),
        (("u1", "u4"), "x1*u14"),
        (("u2", "u3"), "x2*u23"),
        (("u2", "u4"), "-x4*u12 + x3*u14"),
        (("u3", "u4"), "x4*u34"),
        (("u1", "u23"), "x2*u123 + x2*x3*u134"),
        (("u2", "u34"), "x2*u123 + x2*x3*u134"),
        (("u3", "u12"), "x2*u123 + x2*x3*u134"),
        (("u4", "u23"), "x4*u123 + x3*x4*u134"),
    ]
    .into_iter()
    .collect();

    let mut pairs = 0;
    for (i, a) in low.iter().enumerate() {
        for b in &low[i + 1..] {
            pairs += 1;
            let got = transfer.mu(&[*a, *b]).render(&ring);
            let want = expected
                .get(&(a.label().as_str(), b.label().as_str()))
                .copied()
                .unwrap_or("0");
            c.check_eq(&format!("mu({}, {})", a.label(), b.label()), got, want.to_string());
        }
    }
    c.check_eq("pair count", pairs, 28);
    c.finish();
}

#[test]
fn criterion_3_char2_regression() {
    let mut c = Criterion::new(3, Some(5));
    let ideal = load_ideal("avramov.ideal");
    let f2 = Field::prime(2).unwrap();
    let taylor = BasedComplex::taylor_full(ideal.clone(), f2, true).unwrap();
    let matching = load_matching("avramov-reference-matching.json");
    let transfer = Transfer::new(taylor.clone(), &matching).unwrap();
    let ring = transfer.complex().ideal().ring().clone();

    let p1 = transfer.p_of(s(&[0])).unwrap().clone();
    let p3 = transfer.p_of(s(&[2])).unwrap().clone();
    let p5 = transfer.p_of(s(&[4])).unwrap().clone();
    c.check_eq(
        "lambda3(u1, u3, u5)",
        transfer.lambda(&[p1, p3, p5]).render(&ring),
        "u1235 + u1345".to_string(),
    );
    c.check_eq(
        "mu3(u1, u3, u5)",
        transfer.mu(&[s(&[0]), s(&[2]), s(&[4])]).render(&ring),
        "x4*u1234 + u1245 + x1*u2345".to_string(),
    );

    let structure = transfer.mu_structure(3);
    let m3 = structure.minimality(3).unwrap();
    c.check("arity 3 not minimal", !m3.minimal);
    match &m3.offender {
        Some((_, cell)) => c.check_eq("unit witness", cell.label(), "u1245".to_string()),
        None => c.check("offender recorded", false),
    }

    let reduction = minimal_reduction(&taylor, Strategy::Lex).unwrap();
    let mdeg = ideal.ring().monomial(vec![0, 1, 1, 2]);
    c.check(
        "multigraded basis at x2*x3*x4^2 empty",
        reduction.complex.multigraded_basis(&mdeg).is_empty(),
    );

    let config = GolodConfig {
        cap: 3,
        ..GolodConfig::default()
    };
    let report = golod_decision(&ideal, f2, &config).unwrap();
    c.check(
        "concludes not Golod",
        matches!(report.conclusion, Conclusion::NotGolod { .. }),
    );
    c.finish();
}

#[test]
fn criterion_4_eight_generator_guard() {
    let mut c = Criterion::new(4, Some(30));
    let ideal = load_ideal("katthan.ideal");
    c.check("gcd condition holds", gcd_condition(&ideal).holds);

    let out = Command::new(env!("CARGO_BIN_EXE_golodkit"))
        .args([
            "golod",
            "--input",
            fixture_dir().join("katthan.ideal").to_str().unwrap(),
        ])
        .output()
        .expect("binary runs");
    c.check_eq("exit code", out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    c.check(
        "verdict is inconclusive",
        stdout.contains("conclusion: inconclusive"),
    );
    c.check(
        "never claims Golod",
        !stdout.contains("conclusion: Golod"),
    );
    c.finish();
}

#[test]
fn criterion_5_rank_oracles() {
    let mut c = Criterion::new(5, None);
    let cases: [(&str, Vec<usize>); 2] = [
        ("pentagon.ideal", vec![1, 5, 5, 1]),
        ("fourgen.ideal", vec![1, 4, 4, 1]),
    ];
    let strategies = [
        Strategy::Lex,
        Strategy::RevLex,
        Strategy::Random(1),
        Strategy::Random(2),
    ];
    for (name, frozen) in cases {
        let ideal = load_ideal(name);
        let taylor = BasedComplex::taylor_full(ideal, Field::Rational, true).unwrap();
        let mut oracle = taylor.tor_ranks();
        while oracle.last() == Some(&0) {
            oracle.pop();
        }
        c.check_eq(&format!("{name} oracle"), oracle.clone(), frozen);
        for strategy in strategies {
            let reduction = minimal_reduction(&taylor, strategy).unwrap();
            c.check_eq(
                &format!("{name} counts under {strategy}"),
                reduction.critical_counts(),
                oracle.clone(),
            );
        }
    }
    c.finish();
}

#[test]
fn criterion_6_property_suite() {
    let mut c = Criterion::new(6, Some(600));
    let config = VerifyConfig::default();
    c.check("at least 200 ideals", config.ideals >= 200);
    c.check("generators capped at 6", config.max_generators <= 6);
    c.check("variables capped at 5", config.max_vars <= 5);
    c.check("exponents capped at 3", config.max_exponent <= 3);
    c.check("strand pairs at least 25", config.strand_pairs >= 25);
    match run_verify(&config) {
        Ok(report) => {
            for name in [
                "grammar-round-trip",
                "taylor-d-squared",
                "homotopy-identities",
                "morse-d-squared",
                "reduction-counts",
                "series-inverse",
                "operation-multidegrees",
                "coprime-cl-bound",
                "stasheff",
                "strand-exactness",
                "strategy-independence",
            ] {
                let cases = report
                    .checks
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, cases)| *cases)
                    .unwrap_or(0);
                c.check(&format!("{name} exercised"), cases > 0);
            }
        }
        Err(failure) => c.check(&format!("sweep clean ({failure})"), false),
    }
    c.finish();
}

#[test]
fn criterion_7_matching_independence() {
    let mut c = Criterion::new(7, None);
    let strategies = [
        Strategy::Lex,
        Strategy::RevLex,
        Strategy::Random(1),
        Strategy::Random(2),
    ];
    for name in [
        "fourgen.ideal",
        "pentagon.ideal",
        "avramov.ideal",
        "katthan.ideal",
    ] {
        let ideal = load_ideal(name);
        let taylor = BasedComplex::taylor_full(ideal, Field::Rational, false).unwrap();
        let mut counts: Vec<Vec<usize>> = Vec::new();
        let mut verdicts: Vec<bool> = Vec::new();
        for strategy in strategies {
            let reduction = minimal_reduction(&taylor, strategy).unwrap();
            counts.push(reduction.critical_counts());
            let transfer = Transfer::from_homotopy(
                taylor.clone(),
                reduction.homotopy.clone(),
                reduction.criticals().to_vec(),
            );
            verdicts.push(product_trivial(&transfer).0);
        }
        c.check(
            &format!("{name} counts agree"),
            counts.windows(2).all(|w| w[0] == w[1]),
        );
        c.check(
            &format!("{name} product verdicts agree"),
            verdicts.windows(2).all(|w| w[0] == w[1]),
        );
    }

    // 50 random ideals, same comparison, via the seeded harness.
    let config = VerifyConfig {
        ideals: 0,
        strand_pairs: 0,
        independence_ideals: 50,
        ..VerifyConfig::default()
    };
    match run_verify(&config) {
        Ok(report) => {
            // one case per strategy comparison: 50 ideals, 4 strategies
            let cases = report
                .checks
                .iter()
                .find(|(n, _)| n == "strategy-independence")
                .map(|(_, cases)| *cases)
                .unwrap_or(0);
            c.check_eq("random ideals compared", cases, 200);
        }
        Err(failure) => c.check(&format!("random sweep clean ({failure})"), false),
    }
    c.finish();
}

#[test]
fn criterion_8_series_bound() {
    let mut c = Criterion::new(8, None);
    let frozen: [(&str, &[i128]); 4] = [
        ("fourgen.ideal", &[1, 4, 10, 24, 58, 140, 338, 816, 1970]),
        ("pentagon.ideal", &[1, 5, 15, 40, 106, 281, 745, 1975, 5236]),
        ("avramov.ideal", &[1, 4, 11, 31, 88, 249, 705, 1996, 5651]),
        (
            "katthan.ideal",
            &[1, 5, 18, 64, 227, 806, 2861, 10156, 36052],
        ),
    ];
    for (name, want) in frozen {
        let ideal = load_ideal(name);
        let nvars = ideal.ring().var_names().len();
        let taylor = BasedComplex::taylor_full(ideal, Field::Rational, false).unwrap();
        let ranks = minimal_reduction(&taylor, Strategy::Lex)
            .unwrap()
            .critical_counts();
        let got = serre_bound_series(&ranks, nvars, 8);
        let oracle = long_division_oracle(&ranks, nvars, 8);
        for i in 0..=8 {
            c.check_eq(
                &format!("{name} coefficient {i} vs oracle"),
                got[i].to_string(),
                oracle[i].to_string(),
            );
            c.check_eq(
                &format!("{name} coefficient {i} vs frozen"),
                got[i].to_string(),
                want[i].to_string(),
            );
        }
    }
    c.finish();
}

/// Plain long division of (1+t)^m by 1 - b_1 t^2 - b_2 t^3 - ..., carried
/// out in machine integers: at each step the leading coefficient of the
/// remainder becomes the next quotient coefficient, then the scaled divisor
/// is subtracted.
fn long_division_oracle(ranks: &[usize], nvars: usize, order: usize) -> Vec<i128> {
    let mut divisor = vec![0i128; order + 1];
    divisor[0] = 1;
    for (j, &r) in ranks.iter().enumerate().skip(1) {
        if j + 1 <= order {
            divisor[j + 1] = -(r as i128);
        }
    }
    let mut remainder = vec![0i128; order + 1];
    let mut binom = 1i128;
    for k in 0..=order.min(nvars) {
        remainder[k] = binom;
        binom = binom * (nvars as i128 - k as i128) / (k as i128 + 1);
    }
    let mut quotient = vec![0i128; order + 1];
    for i in 0..=order {
        let lead = remainder[i];
        quotient[i] = lead;
        for (k, &d) in divisor.iter().enumerate() {
            if i + k <= order {
                remainder[i + k] -= lead * d;
            }
        }
    }
    quotient
}
