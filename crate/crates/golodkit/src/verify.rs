//! Randomized end-to-end checks, all driven by one seeded generator so a
//! failure is replayable from the report alone.
//!
//! [`run`] draws random ideals and rebuilds every structure the crate
//! exposes on each one: the full subset-labeled complex, a greedy matching
//! with its splitting homotopy, the reduction to a minimal retract, and the
//! transferred operations. Exact identities are asserted at every stage.
//! The sweep stops at the first violation and reports which check broke,
//! on which input (rendered in the ideal grammar, so it can be parsed
//! straight back), and under which seed.

use std::fmt;

use num::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ainf::{verify_stasheff, Transfer};
use crate::complex::BasedComplex;
use crate::field::Field;
use crate::golod::{product_trivial, serre_bound_series};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, PolyRing, Subset};
use crate::morse::{
    greedy_maximal_matching, minimal_reduction, morse_complex, splitting_homotopy, Homotopy,
    Strategy,
};
use crate::parse::{parse_ideal, render_ideal};
use crate::simplicial::SimplicialComplex;

/// Bounds for the randomized sweep. The defaults run the whole suite in a
/// few minutes.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Seeds the single generator behind every random draw.
    pub seed: u64,
    /// Number of random ideals for the per-ideal checks.
    pub ideals: usize,
    /// Upper bound on generators per random ideal (at least two survive
    /// minimalization).
    pub max_generators: usize,
    /// Upper bound on ring variables.
    pub max_vars: usize,
    /// Upper bound on any exponent in a random generator.
    pub max_exponent: u32,
    /// Transferred operations are checked through this arity.
    pub arity_cap: usize,
    /// Tuple budget per arity when full enumeration would be too large.
    pub tuple_samples: usize,
    /// Random (complex, ideal) pairs for the strand comparison.
    pub strand_pairs: usize,
    /// Ideals re-run under every strategy for the independence check.
    pub independence_ideals: usize,
    /// Truncation order for the series inversion check.
    pub series_order: usize,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            seed: 42,
            ideals: 200,
            max_generators: 6,
            max_vars: 5,
            max_exponent: 3,
            arity_cap: 3,
            tuple_samples: 40,
            strand_pairs: 25,
            independence_ideals: 50,
            series_order: 8,
        }
    }
}

/// The first violated check: which one, on what input, and how to replay.
#[derive(Clone, Debug)]
pub struct Failure {
    pub check: &'static str,
    pub seed: u64,
    /// The offending input, rendered so it can be parsed back directly.
    pub case: String,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} failed [seed {}] on {}: {}",
            self.check, self.seed, self.case, self.detail
        )
    }
}

impl std::error::Error for Failure {}

/// Case tallies per check after a clean sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    /// (check name, number of cases exercised), in first-seen order.
    pub checks: Vec<(String, usize)>,
}

impl VerifyReport {
    fn bump(&mut self, name: &str, cases: usize) {
        match self.checks.iter_mut().find(|(n, _)| n == name) {
            Some(row) => row.1 += cases,
            None => self.checks.push((name.to_string(), cases)),
        }
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|(_, n)| n).sum()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify: all checks passed (seed {})", self.seed)?;
        for (name, cases) in &self.checks {
            writeln!(f, "  {name}: {cases} cases")?;
        }
        Ok(())
    }
}

/// Runs the whole suite, stopping at the first violation.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport, Box<Failure>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = VerifyReport {
        seed: config.seed,
        checks: Vec::new(),
    };

    for index in 0..config.ideals {
        let ideal = random_ideal(
            &mut rng,
            config.max_generators,
            config.max_vars,
            config.max_exponent,
        );
        let case = format!("ideal #{index}: {}", render_ideal(&ideal));
        round_trip(&ideal, &case, config, &mut report)?;
        sweep_field(&ideal, Field::Rational, true, &case, config, &mut rng, &mut report)?;
        // Every third ideal re-runs the structural checks in characteristic
        // two to exercise prime-field arithmetic.
        if index % 3 == 2 {
            let f2 = Field::prime(2).expect("2 is prime");
            sweep_field(&ideal, f2, false, &case, config, &mut rng, &mut report)?;
        }
    }

    for index in 0..config.strand_pairs {
        strand_pair(index, config, &mut rng, &mut report)?;
    }

    for index in 0..config.independence_ideals {
        independence(index, config, &mut rng, &mut report)?;
    }

    Ok(report)
}

fn fail(check: &'static str, seed: u64, case: &str, detail: String) -> Box<Failure> {
    Box::new(Failure {
        check,
        seed,
        case: case.to_string(),
        detail,
    })
}

/// A random monomial of positive degree, biased toward small support so
/// coprime generator pairs stay common.
fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_exponent: u32) -> Monomial {
    loop {
        let exps: Vec<u32> = (0..nvars)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    0
                } else {
                    rng.gen_range(1..=max_exponent)
                }
            })
            .collect();
        if exps.iter().any(|&e| e > 0) {
            let ring = PolyRing::new((1..=nvars).map(|i| format!("x{i}")).collect());
            return ring.monomial(exps);
        }
    }
}

/// Builds a minimal generating set incrementally: candidates that divide or
/// are divided by a kept generator are rejected, so the target count is
/// usually reached instead of collapsing under minimalization.
fn random_ideal(
    rng: &mut ChaCha8Rng,
    max_generators: usize,
    max_vars: usize,
    max_exponent: u32,
) -> MonomialIdeal {
    loop {
        let nvars = rng.gen_range(2..=max_vars);
        let ring = PolyRing::new((1..=nvars).map(|i| format!("x{i}")).collect());
        let target = rng.gen_range(2..=max_generators);
        let mut gens: Vec<Monomial> = Vec::new();
        let mut attempts = 0;
        while gens.len() < target && attempts < 60 {
            attempts += 1;
            let m = random_monomial(rng, nvars, max_exponent);
            if gens.iter().all(|g| !g.divides(&m) && !m.divides(g)) {
                gens.push(m);
            }
        }
        if gens.len() < 2 {
            continue;
        }
        let ideal = MonomialIdeal::new(ring, gens).expect("nonempty, non-unit, under the cap");
        debug_assert!(ideal.minimalize().1);
        return ideal;
    }
}

fn round_trip(
    ideal: &MonomialIdeal,
    case: &str,
    config: &VerifyConfig,
    report: &mut VerifyReport,
) -> Result<(), Box<Failure>> {
    let text = render_ideal(ideal);
    let back = parse_ideal(&text)
        .map_err(|e| fail("grammar-round-trip", config.seed, case, e.to_string()))?;
    if back.generators() != ideal.generators()
        || back.ring().var_names() != ideal.ring().var_names()
    {
        return Err(fail(
            "grammar-round-trip",
            config.seed,
            case,
            format!("re-parse changed the ideal: {}", render_ideal(&back)),
        ));
    }
    report.bump("grammar-round-trip", 1);
    Ok(())
}

/// The differential applied twice vanishes on every cell.
fn d_squared_defect(complex: &BasedComplex) -> Option<String> {
    for cell in complex.cells() {
        let twice = complex.apply_diff(&complex.diff(*cell));
        if !twice.is_zero() {
            return Some(format!("d^2({}) != 0", cell.label()));
        }
    }
    None
}

/// Side conditions of a splitting homotopy, cell by cell.
fn homotopy_defect(complex: &BasedComplex, h: &Homotopy) -> Option<String> {
    for cell in complex.cells() {
        let e = complex.basis_element(*cell);
        let phi = h.apply(&e);
        if !h.apply(&phi).is_zero() {
            return Some(format!("phi^2({}) != 0", cell.label()));
        }
        if h.apply(&complex.apply_diff(&phi)) != phi {
            return Some(format!("phi d phi != phi at {}", cell.label()));
        }
        let p = h.project(complex, &e);
        if h.project(complex, &p) != p {
            return Some(format!("p^2 != p at {}", cell.label()));
        }
        if !h.project(complex, &phi).is_zero() {
            return Some(format!("p phi != 0 at {}", cell.label()));
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn sweep_field(
    ideal: &MonomialIdeal,
    field: Field,
    with_operations: bool,
    case: &str,
    config: &VerifyConfig,
    rng: &mut ChaCha8Rng,
    report: &mut VerifyReport,
) -> Result<(), Box<Failure>> {
    let seed = config.seed;
    let case = format!("{case} over {field}");

    let taylor = BasedComplex::taylor_full(ideal.clone(), field, false)
        .map_err(|e| fail("taylor-d-squared", seed, &case, e.to_string()))?;
    if let Some(d) = d_squared_defect(&taylor) {
        return Err(fail("taylor-d-squared", seed, &case, d));
    }
    report.bump("taylor-d-squared", taylor.cells().len());

    let matching = greedy_maximal_matching(&taylor, Strategy::Lex);
    let h = splitting_homotopy(&taylor, &matching)
        .map_err(|e| fail("homotopy-identities", seed, &case, e.to_string()))?;
    if let Some(d) = homotopy_defect(&taylor, &h) {
        return Err(fail("homotopy-identities", seed, &case, d));
    }
    report.bump("homotopy-identities", taylor.cells().len());

    let morse = morse_complex(&taylor, &matching)
        .map_err(|e| fail("morse-d-squared", seed, &case, e.to_string()))?;
    if let Some(d) = d_squared_defect(&morse) {
        return Err(fail("morse-d-squared", seed, &case, d));
    }
    report.bump("morse-d-squared", morse.cells().len());

    let reduction = minimal_reduction(&taylor, Strategy::Lex)
        .map_err(|e| fail("reduction-counts", seed, &case, e.to_string()))?;
    if let Some(d) = homotopy_defect(&taylor, &reduction.homotopy) {
        return Err(fail(
            "homotopy-identities",
            seed,
            &case,
            format!("composite homotopy: {d}"),
        ));
    }
    report.bump("homotopy-identities", taylor.cells().len());

    let (minimal, offenders) = reduction.complex.is_minimal();
    if !minimal {
        let (s, t) = offenders[0];
        return Err(fail(
            "reduction-counts",
            seed,
            &case,
            format!("reduction left a unit entry {} -> {}", s.label(), t.label()),
        ));
    }
    let counts = reduction.critical_counts();
    let ranks = taylor.tor_ranks();
    for n in 0..counts.len().max(ranks.len()) {
        let c = counts.get(n).copied().unwrap_or(0);
        let r = ranks.get(n).copied().unwrap_or(0);
        if c != r {
            return Err(fail(
                "reduction-counts",
                seed,
                &case,
                format!("degree {n}: {c} surviving cells but rank {r}"),
            ));
        }
    }
    report.bump("reduction-counts", counts.len());

    series_inverse(&counts, ideal.ring().nvars(), config, &case, report)?;

    if with_operations {
        let transfer = Transfer::from_homotopy(
            taylor.clone(),
            reduction.homotopy.clone(),
            reduction.criticals().to_vec(),
        );
        let cases = operation_tables(&transfer, &taylor, config, rng)
            .map_err(|d| fail("operation-multidegrees", seed, &case, d))?;
        report.bump("operation-multidegrees", cases);

        let cases = coprime_cl(&transfer, &taylor, config, rng)
            .map_err(|d| fail("coprime-cl-bound", seed, &case, d))?;
        report.bump("coprime-cl-bound", cases);

        let cases = stasheff(&transfer, config, rng)
            .map_err(|d| fail("stasheff", seed, &case, d))?;
        report.bump("stasheff", cases);
    }

    Ok(())
}

/// Multiplies the truncated series back by its denominator and compares
/// with the numerator, the inverse of the division that produced it.
fn series_inverse(
    ranks: &[usize],
    nvars: usize,
    config: &VerifyConfig,
    case: &str,
    report: &mut VerifyReport,
) -> Result<(), Box<Failure>> {
    let order = config.series_order;
    let series = serre_bound_series(ranks, nvars, order);
    let mut den = vec![BigInt::from(0); order + 1];
    den[0] = BigInt::from(1);
    for (j, &r) in ranks.iter().enumerate().skip(1) {
        if j + 1 <= order {
            den[j + 1] = -BigInt::from(r as u64);
        }
    }
    let mut binom = BigInt::from(1);
    for i in 0..=order {
        let product: BigInt = (0..=i).map(|k| &series[k] * &den[i - k]).sum();
        let expected = if i <= nvars { binom.clone() } else { BigInt::from(0) };
        if product != expected {
            return Err(fail(
                "series-inverse",
                config.seed,
                case,
                format!("coefficient {i}: series*den = {product}, numerator = {expected}"),
            ));
        }
        if i < nvars {
            binom = binom * BigInt::from((nvars - i) as u64) / BigInt::from((i + 1) as u64);
        }
    }
    report.bump("series-inverse", order + 1);
    Ok(())
}

fn tuple_label(tuple: &[Subset]) -> String {
    let parts: Vec<String> = tuple.iter().map(|c| c.label()).collect();
    format!("({})", parts.join(", "))
}

/// All tuples when the space is small, a random sample otherwise.
fn sample_tuples(
    basis: &[Subset],
    arity: usize,
    budget: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Subset>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let full_size = basis.len().checked_pow(arity as u32);
    if let Some(size) = full_size {
        if size <= budget.saturating_mul(4) {
            let mut tuples = vec![Vec::new()];
            for _ in 0..arity {
                let mut next = Vec::with_capacity(tuples.len() * basis.len());
                for t in &tuples {
                    for c in basis {
                        let mut t = t.clone();
                        t.push(*c);
                        next.push(t);
                    }
                }
                tuples = next;
            }
            return tuples;
        }
    }
    (0..budget)
        .map(|_| {
            (0..arity)
                .map(|_| *basis.choose(rng).expect("nonempty basis"))
                .collect()
        })
        .collect()
}

/// Every term of every transferred operation stays multigraded: the cell's
/// multidegree divides the lcm of the input multidegrees, and coefficient
/// times cell multidegree equals the product of the input multidegrees.
fn operation_tables(
    transfer: &Transfer,
    taylor: &BasedComplex,
    config: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<usize, String> {
    let ideal = taylor.ideal().clone();
    let criticals = transfer.positive_criticals();
    let taylor_cells: Vec<Subset> = taylor
        .cells()
        .iter()
        .filter(|c| !c.is_empty())
        .copied()
        .collect();
    let mut cases = 0;

    let check = |value: &crate::complex::ModuleElement,
                 tuple: &[Subset],
                 kind: &str|
     -> Result<(), String> {
        let mut bound = ideal.ring().one();
        let mut total = ideal.ring().one();
        for c in tuple {
            let m = ideal.multidegree(*c);
            bound = bound.lcm(&m);
            total = total.mul(&m);
        }
        for (cell, poly) in value.iter() {
            let m = ideal.multidegree(*cell);
            if !m.divides(&bound) {
                return Err(format!(
                    "{kind}_{} {}: cell {} exceeds the input lcm",
                    tuple.len(),
                    tuple_label(tuple),
                    cell.label()
                ));
            }
            for (mono, _) in poly.terms() {
                if mono.mul(&m) != total {
                    return Err(format!(
                        "{kind}_{} {}: term at {} is not multigraded",
                        tuple.len(),
                        tuple_label(tuple),
                        cell.label()
                    ));
                }
            }
        }
        Ok(())
    };

    for arity in 2..=config.arity_cap {
        for tuple in sample_tuples(&criticals, arity, config.tuple_samples, rng) {
            check(&transfer.mu(&tuple), &tuple, "mu")?;
            check(&transfer.nu(&tuple), &tuple, "nu")?;
            cases += 2;
        }
        for tuple in sample_tuples(&taylor_cells, arity, config.tuple_samples, rng) {
            let inputs: Vec<_> = tuple.iter().map(|c| taylor.basis_element(*c)).collect();
            check(&transfer.lambda(&inputs), &tuple, "lambda")?;
            cases += 1;
        }
    }
    Ok(cases)
}

/// On pairwise-coprime inputs, every output cell mixes at least two
/// gcd-connected blocks of generators.
fn coprime_cl(
    transfer: &Transfer,
    taylor: &BasedComplex,
    config: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<usize, String> {
    let ideal = taylor.ideal().clone();
    let cells: Vec<Subset> = taylor
        .cells()
        .iter()
        .filter(|c| !c.is_empty())
        .copied()
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            if ideal.multidegree(*a).is_coprime(&ideal.multidegree(*b)) {
                pairs.push((*a, *b));
            }
        }
    }
    pairs.shuffle(rng);
    pairs.truncate(config.tuple_samples);

    let scan = |value: &crate::complex::ModuleElement, tuple: &[Subset]| -> Result<(), String> {
        for (cell, _) in value.iter() {
            if ideal.cl(*cell) < 2 {
                return Err(format!(
                    "lambda_{} {}: output cell {} is gcd-connected",
                    tuple.len(),
                    tuple_label(tuple),
                    cell.label()
                ));
            }
        }
        Ok(())
    };

    let mut cases = 0;
    for (a, b) in &pairs {
        let inputs = [taylor.basis_element(*a), taylor.basis_element(*b)];
        scan(&transfer.lambda(&inputs), &[*a, *b])?;
        cases += 1;
        let ma = ideal.multidegree(*a);
        let mb = ideal.multidegree(*b);
        let third = cells.iter().find(|c| {
            let m = ideal.multidegree(**c);
            m.is_coprime(&ma) && m.is_coprime(&mb)
        });
        if let Some(c) = third {
            let inputs = [
                taylor.basis_element(*a),
                taylor.basis_element(*b),
                taylor.basis_element(*c),
            ];
            scan(&transfer.lambda(&inputs), &[*a, *b, *c])?;
            cases += 1;
        }
    }
    Ok(cases)
}

/// Coherence identities vanish exactly: full enumeration when the critical
/// basis is small, seeded samples otherwise.
fn stasheff(
    transfer: &Transfer,
    config: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<usize, String> {
    let basis = transfer.positive_criticals();
    if basis.is_empty() {
        return Ok(0);
    }
    let cap = config.arity_cap;
    let full_size: Option<usize> = (1..=cap)
        .map(|n| basis.len().checked_pow(n as u32))
        .try_fold(0usize, |acc, s| s.map(|s| acc + s));
    if let Some(size) = full_size {
        if size <= config.tuple_samples.saturating_mul(8) {
            let verdict = verify_stasheff(transfer, cap);
            if let Some(v) = verdict.violation {
                return Err(format!(
                    "arity {} defect at {} is nonzero",
                    v.arity,
                    tuple_label(&v.tuple)
                ));
            }
            return Ok(size);
        }
    }
    let mut cases = 0;
    for arity in 1..=cap {
        for _ in 0..config.tuple_samples {
            let tuple: Vec<Subset> = (0..arity)
                .map(|_| *basis.choose(rng).expect("nonempty basis"))
                .collect();
            if !transfer.stasheff_defect(&tuple).is_zero() {
                return Err(format!(
                    "arity {arity} defect at {} is nonzero",
                    tuple_label(&tuple)
                ));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// The degree-wise ranks of a multidegree strand of the complex built on a
/// random simplicial complex agree with the reduced homology of the
/// corresponding restriction.
fn strand_pair(
    index: usize,
    config: &VerifyConfig,
    rng: &mut ChaCha8Rng,
    report: &mut VerifyReport,
) -> Result<(), Box<Failure>> {
    let ideal = random_ideal(
        rng,
        config.max_generators.min(5),
        config.max_vars,
        config.max_exponent,
    );
    let r = ideal.num_generators();
    let facet_count = rng.gen_range(1..=3);
    let facets: Vec<Subset> = (0..facet_count)
        .map(|_| Subset::from_bits(rng.gen_range(1..(1u32 << r))))
        .collect();
    let delta = SimplicialComplex::from_facets(r, &facets);
    let case = format!(
        "pair #{index}: {} with facets {}",
        render_ideal(&ideal),
        tuple_label(&facets)
    );

    let field = Field::Rational;
    let complex = BasedComplex::from_simplicial(&delta, ideal.clone(), field, false)
        .map_err(|e| fail("strand-exactness", config.seed, &case, e.to_string()))?;
    let mut cases = 0;
    for mu in ideal.lcm_lattice() {
        let strand = complex.strand_ranks(&mu);
        let homology = delta.restrict(&ideal, &mu).reduced_homology_ranks(field);
        for n in 0..strand.len().max(homology.len()) {
            let s = strand.get(n).copied().unwrap_or(0);
            let h = homology.get(n).copied().unwrap_or(0);
            if s != h {
                return Err(fail(
                    "strand-exactness",
                    config.seed,
                    &case,
                    format!(
                        "multidegree {}: strand rank {s} vs homology rank {h} in degree {n}",
                        mu.render(ideal.ring())
                    ),
                ));
            }
        }
        cases += 1;
    }
    report.bump("strand-exactness", cases);
    Ok(())
}

/// Critical counts and the product-triviality verdict are the same under
/// every strategy.
fn independence(
    index: usize,
    config: &VerifyConfig,
    rng: &mut ChaCha8Rng,
    report: &mut VerifyReport,
) -> Result<(), Box<Failure>> {
    let strategies = [
        Strategy::Lex,
        Strategy::RevLex,
        Strategy::Random(1),
        Strategy::Random(2),
    ];
    let ideal = random_ideal(
        rng,
        config.max_generators,
        config.max_vars,
        config.max_exponent,
    );
    let case = format!("ideal #{index}: {}", render_ideal(&ideal));
    let taylor = BasedComplex::taylor_full(ideal.clone(), Field::Rational, false)
        .map_err(|e| fail("strategy-independence", config.seed, &case, e.to_string()))?;

    let mut baseline: Option<(Strategy, Vec<usize>, bool)> = None;
    for strategy in strategies {
        let reduction = minimal_reduction(&taylor, strategy)
            .map_err(|e| fail("strategy-independence", config.seed, &case, e.to_string()))?;
        let counts = reduction.critical_counts();
        let transfer = Transfer::from_homotopy(
            taylor.clone(),
            reduction.homotopy.clone(),
            reduction.criticals().to_vec(),
        );
        let trivial = product_trivial(&transfer).0;
        match &baseline {
            None => baseline = Some((strategy, counts, trivial)),
            Some((s0, c0, t0)) => {
                if counts != *c0 {
                    return Err(fail(
                        "strategy-independence",
                        config.seed,
                        &case,
                        format!("{s0} reduces to {c0:?} but {strategy} to {counts:?}"),
                    ));
                }
                if trivial != *t0 {
                    return Err(fail(
                        "strategy-independence",
                        config.seed,
                        &case,
                        format!("product verdict flips between {s0} and {strategy}"),
                    ));
                }
            }
        }
    }
    report.bump("strategy-independence", strategies.len());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(seed: u64) -> VerifyConfig {
        VerifyConfig {
            seed,
            ideals: 9,
            max_generators: 4,
            max_vars: 4,
            max_exponent: 2,
            tuple_samples: 10,
            strand_pairs: 3,
            independence_ideals: 3,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn small_sweep_passes() {
        let report = run(&small_config(7)).unwrap();
        let names: Vec<&str> = report.checks.iter().map(|(n, _)| n.as_str()).collect();
        for expected in [
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
            assert!(names.contains(&expected), "missing check {expected}");
        }
        assert!(report.total_cases() > 0);
    }

    #[test]
    fn sweeps_are_reproducible() {
        let a = run(&small_config(11)).unwrap();
        let b = run(&small_config(11)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    #[ignore = "slow; the integration suite runs the default sweep"]
    fn default_sweep_passes() {
        let report = run(&VerifyConfig::default()).unwrap();
        assert!(report.total_cases() > 0);
        println!("{report}");
    }

    #[test]
    fn failure_renders_the_replay_data() {
        let f = Failure {
            check: "taylor-d-squared",
            seed: 3,
            case: "ideal #0: ring x1; ideal x1;".to_string(),
            detail: "boom".to_string(),
        };
        let text = f.to_string();
        assert!(text.contains("taylor-d-squared"));
        assert!(text.contains("seed 3"));
        assert!(text.contains("ideal x1"));
    }

    #[test]
    fn random_ideals_are_minimal_and_in_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let ideal = random_ideal(&mut rng, 6, 5, 3);
            assert!(ideal.num_generators() >= 2);
            assert!(ideal.num_generators() <= 6);
            assert!(ideal.ring().nvars() <= 5);
            let (_, was_minimal) = ideal.minimalize();
            assert!(was_minimal);
            for g in ideal.generators() {
                assert!(g.exponents().iter().all(|&e| e <= 3));
            }
        }
    }
}
