//! Higher multiplication maps transferred across a contraction. From a
//! complex with a product and a splitting homotopy, a recursive family of
//! maps λₙ is built out of two-factor products of homotopy-corrected
//! sub-evaluations; projecting gives the operations μₙ on the retract and
//! νₙ on the critical-cell complex. The module also checks per-arity
//! minimality and the coherence identities tying the μₙ together.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{taylor_product, BasedComplex, ModuleElement};
use crate::error::Result;
use crate::monomial::Subset;
use crate::morse::{splitting_homotopy, Homotopy, Matching};

/// Context for the transferred operations: the ambient complex, the
/// homotopy φ, the projections p(c) of the critical cells, and memo tables
/// for the λ recursion.
pub struct Transfer {
    complex: BasedComplex,
    homotopy: Homotopy,
    criticals: Vec<Subset>,
    critical_set: BTreeSet<Subset>,
    p_table: BTreeMap<Subset, ModuleElement>,
    downward_closed: bool,
    phi_memo: RefCell<BTreeMap<(bool, Vec<Subset>), ModuleElement>>,
    mu_memo: RefCell<BTreeMap<Vec<Subset>, ModuleElement>>,
}

impl Transfer {
    /// Validates the matching, computes the homotopy and the projection of
    /// every critical cell, and records whether the critical cells are
    /// closed under taking subsets.
    pub fn new(complex: BasedComplex, matching: &Matching) -> Result<Transfer> {
        let homotopy = splitting_homotopy(&complex, matching)?;
        let criticals = matching.critical_cells(&complex);
        Ok(Transfer::from_homotopy(complex, homotopy, criticals))
    }

    /// Wraps an already-built contraction, typically the composite of
    /// several matching rounds. The homotopy must satisfy the splitting
    /// identities on the given complex and retract onto the span of the
    /// given cells; projections of those cells are recomputed here.
    pub fn from_homotopy(
        complex: BasedComplex,
        homotopy: Homotopy,
        criticals: Vec<Subset>,
    ) -> Transfer {
        let critical_set: BTreeSet<Subset> = criticals.iter().copied().collect();
        let p_table: BTreeMap<Subset, ModuleElement> = criticals
            .iter()
            .map(|c| (*c, homotopy.project(&complex, &complex.basis_element(*c))))
            .collect();
        let downward_closed = criticals.iter().all(|c| {
            c.iter().all(|i| critical_set.contains(&c.remove(i)))
        });
        Transfer {
            complex,
            homotopy,
            criticals,
            critical_set,
            p_table,
            downward_closed,
            phi_memo: RefCell::new(BTreeMap::new()),
            mu_memo: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn complex(&self) -> &BasedComplex {
        &self.complex
    }

    pub fn homotopy(&self) -> &Homotopy {
        &self.homotopy
    }

    pub fn criticals(&self) -> &[Subset] {
        &self.criticals
    }

    pub fn positive_criticals(&self) -> Vec<Subset> {
        self.criticals
            .iter()
            .filter(|c| !c.is_empty())
            .copied()
            .collect()
    }

    pub fn is_critical(&self, cell: Subset) -> bool {
        self.critical_set.contains(&cell)
    }

    /// Whether every subset of a critical cell is again critical.
    pub fn downward_closed(&self) -> bool {
        self.downward_closed
    }

    pub fn p_of(&self, cell: Subset) -> Option<&ModuleElement> {
        self.p_table.get(&cell)
    }

    fn p(&self, cell: Subset) -> &ModuleElement {
        self.p_table.get(&cell).expect("cell is critical")
    }

    /// Restriction of an element to its critical-cell coordinates.
    pub fn q(&self, elt: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (cell, poly) in elt.iter() {
            if self.critical_set.contains(cell) {
                out.add_cell_poly(*cell, poly);
            }
        }
        out
    }

    /// λ on arbitrary homogeneous elements of the complex; the recursion
    /// splits the inputs in two, corrects each side by the homotopy (a
    /// single input passes through unchanged), and multiplies. The split at
    /// position s carries the sign (−1)^(s+1), and passing the degree t−1
    /// right-hand operator over the left inputs contributes
    /// (−1)^((t−1)·deg(left)).
    pub fn lambda(&self, inputs: &[ModuleElement]) -> ModuleElement {
        assert!(inputs.len() >= 2, "lambda takes at least two inputs");
        self.lambda_elements(inputs)
    }

    fn phi_lambda_elements(&self, inputs: &[ModuleElement]) -> ModuleElement {
        if inputs.len() == 1 {
            inputs[0].clone()
        } else {
            self.homotopy.apply(&self.lambda_elements(inputs))
        }
    }

    fn lambda_elements(&self, inputs: &[ModuleElement]) -> ModuleElement {
        let n = inputs.len();
        let mut total = ModuleElement::zero();
        if inputs.iter().any(|x| x.is_zero()) {
            return total;
        }
        for s in 1..n {
            let t = n - s;
            let left = self.phi_lambda_elements(&inputs[..s]);
            let right = self.phi_lambda_elements(&inputs[s..]);
            if left.is_zero() || right.is_zero() {
                continue;
            }
            let prod = taylor_product(self.complex.ideal(), self.complex.field(), &left, &right);
            if prod.is_zero() {
                continue;
            }
            let left_deg: usize = inputs[..s]
                .iter()
                .map(|x| x.homogeneous_degree().expect("homogeneous input"))
                .sum();
            let parity = (s + 1 + (t - 1) * left_deg) % 2;
            total = if parity == 1 {
                total.sub(&prod)
            } else {
                total.add(&prod)
            };
        }
        total
    }

    /// Memoized λ on tuples of critical cells; `raw` feeds the cells
    /// themselves, otherwise their projections.
    fn lambda_cells(&self, tuple: &[Subset], raw: bool) -> ModuleElement {
        debug_assert!(tuple.len() >= 2);
        let n = tuple.len();
        let mut total = ModuleElement::zero();
        for s in 1..n {
            let t = n - s;
            let left = self.phi_lambda_cells(&tuple[..s], raw);
            let right = self.phi_lambda_cells(&tuple[s..], raw);
            if left.is_zero() || right.is_zero() {
                continue;
            }
            let prod = taylor_product(self.complex.ideal(), self.complex.field(), &left, &right);
            if prod.is_zero() {
                continue;
            }
            let left_deg: usize = tuple[..s].iter().map(|c| c.len()).sum();
            let parity = (s + 1 + (t - 1) * left_deg) % 2;
            total = if parity == 1 {
                total.sub(&prod)
            } else {
                total.add(&prod)
            };
        }
        total
    }

    fn phi_lambda_cells(&self, tuple: &[Subset], raw: bool) -> ModuleElement {
        if tuple.len() == 1 {
            return if raw {
                self.complex.basis_element(tuple[0])
            } else {
                self.p(tuple[0]).clone()
            };
        }
        let key = (raw, tuple.to_vec());
        if let Some(v) = self.phi_memo.borrow().get(&key) {
            return v.clone();
        }
        let value = self.homotopy.apply(&self.lambda_cells(tuple, raw));
        self.phi_memo.borrow_mut().insert(key, value.clone());
        value
    }

    /// μ on a tuple of critical cells (standing for their projections):
    /// arity 1 is the differential, arity n ≥ 2 projects λ of the
    /// projected inputs. A tuple containing the empty cell acts as the
    /// strict unit: identity at arity 2, zero above.
    pub fn mu(&self, tuple: &[Subset]) -> ModuleElement {
        assert!(!tuple.is_empty());
        if tuple.len() == 1 {
            return self.complex.apply_diff(self.p(tuple[0]));
        }
        if tuple.iter().any(|c| c.is_empty()) {
            return if tuple.len() == 2 {
                let other = if tuple[0].is_empty() { tuple[1] } else { tuple[0] };
                self.p(other).clone()
            } else {
                ModuleElement::zero()
            };
        }
        if let Some(v) = self.mu_memo.borrow().get(tuple) {
            return v.clone();
        }
        let value = self
            .homotopy
            .project(&self.complex, &self.lambda_cells(tuple, false));
        self.mu_memo.borrow_mut().insert(tuple.to_vec(), value.clone());
        value
    }

    /// ν on the critical-cell complex: the short form q∘λ on the cells
    /// themselves when the critical cells are downward closed, and the
    /// projected composite q∘μ otherwise.
    pub fn nu(&self, tuple: &[Subset]) -> ModuleElement {
        if tuple.len() >= 2 && self.downward_closed && !tuple.iter().any(|c| c.is_empty()) {
            self.nu_short(tuple)
        } else {
            self.nu_general(tuple)
        }
    }

    pub fn nu_short(&self, tuple: &[Subset]) -> ModuleElement {
        assert!(tuple.len() >= 2);
        self.q(&self.lambda_cells(tuple, true))
    }

    pub fn nu_general(&self, tuple: &[Subset]) -> ModuleElement {
        self.q(&self.mu(tuple))
    }

    /// The coherence defect Σ (−1)^(r+st) μ(1⊗…⊗μ⊗…⊗1) at one tuple; zero
    /// when the operations are compatible. Inner values are re-expanded in
    /// the critical coordinates, which on the image of p are exact.
    pub fn stasheff_defect(&self, tuple: &[Subset]) -> ModuleElement {
        let n = tuple.len();
        let mut total = ModuleElement::zero();
        for s in 1..=n {
            for r in 0..=(n - s) {
                let t = n - r - s;
                let prefix_deg: usize = tuple[..r].iter().map(|c| c.len()).sum();
                // (s−2)·prefix has the parity of s·prefix.
                let parity = (r + s * t + s * prefix_deg) % 2;
                let inner = self.mu(&tuple[r..r + s]);
                let term = if r + 1 + t == 1 {
                    self.complex.apply_diff(&inner)
                } else {
                    let mut acc = ModuleElement::zero();
                    for (cell, poly) in inner.iter() {
                        if !self.critical_set.contains(cell) {
                            continue;
                        }
                        let mut outer: Vec<Subset> = tuple[..r].to_vec();
                        outer.push(*cell);
                        outer.extend_from_slice(&tuple[r + s..]);
                        acc = acc.add(&self.mu(&outer).scale_poly(poly));
                    }
                    acc
                };
                total = if parity == 1 {
                    total.sub(&term)
                } else {
                    total.add(&term)
                };
            }
        }
        total
    }

    pub fn mu_structure(&self, cap: usize) -> AInfStructure {
        self.structure(cap, TransferKind::Mu)
    }

    pub fn nu_structure(&self, cap: usize) -> AInfStructure {
        self.structure(cap, TransferKind::Nu)
    }

    fn structure(&self, cap: usize, kind: TransferKind) -> AInfStructure {
        let basis = self.positive_criticals();
        let mut tables = BTreeMap::new();
        let mut minimality = BTreeMap::new();
        for n in 2..=cap {
            let mut table = ArityTable::new();
            for tuple in Tuples::new(&basis, n) {
                let value = match kind {
                    TransferKind::Mu => self.mu(&tuple),
                    TransferKind::Nu => self.nu(&tuple),
                };
                self.check_entry(&tuple, &value, n);
                table.insert(tuple, value);
            }
            minimality.insert(n, is_minimal_map(&table));
            tables.insert(n, table);
        }
        AInfStructure {
            kind,
            cap,
            tables,
            minimality,
        }
    }

    fn check_entry(&self, tuple: &[Subset], value: &ModuleElement, n: usize) {
        if value.is_zero() {
            return;
        }
        let expected: usize = tuple.iter().map(|c| c.len()).sum::<usize>() + n - 2;
        assert_eq!(
            value.homogeneous_degree(),
            Some(expected),
            "arity {n} entry is not homogeneous of degree n-2 above its inputs"
        );
        let ideal = self.complex.ideal();
        let mut bound = ideal.multidegree(tuple[0]);
        for c in &tuple[1..] {
            bound = bound.lcm(&ideal.multidegree(*c));
        }
        for (cell, _) in value.iter() {
            assert!(
                ideal.multidegree(*cell).divides(&bound),
                "output cell {} escapes the lcm of the inputs",
                cell.label()
            );
        }
    }
}

/// Iterator over all n-tuples (with repetition) drawn from a basis.
struct Tuples<'a> {
    basis: &'a [Subset],
    indices: Vec<usize>,
    done: bool,
}

impl<'a> Tuples<'a> {
    fn new(basis: &'a [Subset], n: usize) -> Tuples<'a> {
        Tuples {
            basis,
            indices: vec![0; n],
            done: basis.is_empty() || n == 0,
        }
    }
}

impl Iterator for Tuples<'_> {
    type Item = Vec<Subset>;

    fn next(&mut self) -> Option<Vec<Subset>> {
        if self.done {
            return None;
        }
        let tuple: Vec<Subset> = self.indices.iter().map(|&i| self.basis[i]).collect();
        let mut k = self.indices.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.indices[k] += 1;
            if self.indices[k] < self.basis.len() {
                break;
            }
            self.indices[k] = 0;
        }
        Some(tuple)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferKind {
    Mu,
    Nu,
}

pub type ArityTable = BTreeMap<Vec<Subset>, ModuleElement>;

/// Minimality of one arity table: no output carries a unit coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapMinimality {
    pub minimal: bool,
    pub offender: Option<(Vec<Subset>, Subset)>,
}

pub fn is_minimal_map(table: &ArityTable) -> MapMinimality {
    for (tuple, value) in table {
        for (cell, poly) in value.iter() {
            if poly.has_constant_term() {
                return MapMinimality {
                    minimal: false,
                    offender: Some((tuple.clone(), *cell)),
                };
            }
        }
    }
    MapMinimality {
        minimal: true,
        offender: None,
    }
}

/// The μ or ν operations materialized per arity, with minimality flags.
#[derive(Clone, Debug)]
pub struct AInfStructure {
    kind: TransferKind,
    cap: usize,
    tables: BTreeMap<usize, ArityTable>,
    minimality: BTreeMap<usize, MapMinimality>,
}

impl AInfStructure {
    pub fn kind(&self) -> TransferKind {
        self.kind
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn table(&self, arity: usize) -> Option<&ArityTable> {
        self.tables.get(&arity)
    }

    pub fn minimality(&self, arity: usize) -> Option<&MapMinimality> {
        self.minimality.get(&arity)
    }

    /// True when every materialized arity is minimal.
    pub fn minimal_through_cap(&self) -> bool {
        self.minimality.values().all(|m| m.minimal)
    }

    /// The smallest non-minimal arity with its offender, if any.
    pub fn first_non_minimal(&self) -> Option<(usize, &MapMinimality)> {
        self.minimality
            .iter()
            .find(|(_, m)| !m.minimal)
            .map(|(n, m)| (*n, m))
    }
}

/// Outcome of evaluating the coherence identities on all basis tuples of
/// each arity up to the cap.
#[derive(Clone, Debug)]
pub struct StasheffVerdict {
    pub holds: bool,
    pub violation: Option<StasheffViolation>,
}

#[derive(Clone, Debug)]
pub struct StasheffViolation {
    pub arity: usize,
    pub tuple: Vec<Subset>,
    pub defect: ModuleElement,
}

pub fn verify_stasheff(transfer: &Transfer, cap: usize) -> StasheffVerdict {
    let basis = transfer.positive_criticals();
    for n in 1..=cap {
        for tuple in Tuples::new(&basis, n) {
            let defect = transfer.stasheff_defect(&tuple);
            if !defect.is_zero() {
                return StasheffVerdict {
                    holds: false,
                    violation: Some(StasheffViolation {
                        arity: n,
                        tuple,
                        defect,
                    }),
                };
            }
        }
    }
    StasheffVerdict {
        holds: true,
        violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::morse::{greedy_maximal_matching, Strategy};
    use crate::parse::parse_ideal;

    fn s(indices: &[usize]) -> Subset {
        Subset::from_indices(indices)
    }

    fn fourgen_transfer() -> Transfer {
        let i = parse_ideal("ring x1 x2 x3 x4; ideal x1*x2, x2*x3, x2*x4, x1*x4;").unwrap();
        let t = BasedComplex::taylor_full(i, Field::Rational, true).unwrap();
        let m = Matching::from_pairs(&[
            (s(&[0, 1, 2, 3]), s(&[1, 2, 3])),
            (s(&[0, 2, 3]), s(&[0, 2])),
            (s(&[0, 1, 3]), s(&[1, 3])),
        ]);
        Transfer::new(t, &m).unwrap()
    }

    fn chain5_transfer(field: Field) -> Transfer {
        let i = parse_ideal("ring x1 x2 x3 x4; ideal x1^2, x1*x2, x2*x3, x3*x4, x4^2;").unwrap();
        let t = BasedComplex::taylor_full(i, field, true).unwrap();
        let m = Matching::from_pairs(&[
            (s(&[1, 2, 3, 4]), s(&[1, 3, 4])),
            (s(&[2, 3, 4]), s(&[2, 4])),
            (s(&[0, 1, 2, 3, 4]), s(&[0, 1, 2, 4])),
            (s(&[0, 2, 3, 4]), s(&[0, 2, 4])),
            (s(&[1, 2, 3]), s(&[1, 3])),
            (s(&[0, 1, 2, 3]), s(&[0, 1, 3])),
            (s(&[0, 1, 2]), s(&[0, 2])),
        ]);
        Transfer::new(t, &m).unwrap()
    }

    #[test]
    fn fourgen_product_table() {
        let tr = fourgen_transfer();
        let ring = tr.complex().ideal().ring().clone();
        let low: Vec<Subset> = tr
            .positive_criticals()
            .into_iter()
            .filter(|c| c.len() <= 2)
            .collect();
        assert_eq!(low.len(), 8);

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
                let value = tr.mu(&[*a, *b]).render(&ring);
                let want = expected
                    .get(&(a.label().as_str(), b.label().as_str()))
                    .copied()
                    .unwrap_or("0");
                assert_eq!(value, want, "mu({}, {})", a.label(), b.label());
            }
        }
        assert_eq!(pairs, 28);
    }

    #[test]
    fn fourgen_product_is_graded_commutative() {
        let tr = fourgen_transfer();
        for a in tr.positive_criticals() {
            for b in tr.positive_criticals() {
                let ab = tr.mu(&[a, b]);
                let ba = tr.mu(&[b, a]);
                let flipped = if (a.len() * b.len()) % 2 == 1 {
                    ba.neg()
                } else {
                    ba
                };
                assert_eq!(ab, flipped, "mu({}, {})", a.label(), b.label());
            }
        }
    }

    #[test]
    fn fourgen_structure_minimal_through_3() {
        let tr = fourgen_transfer();
        let st = tr.mu_structure(3);
        assert_eq!(st.cap(), 3);
        assert!(st.minimality(2).unwrap().minimal);
        assert!(st.minimality(3).unwrap().minimal);
        assert!(st.minimal_through_cap());
        assert!(st.first_non_minimal().is_none());
    }

    #[test]
    fn fourgen_stasheff_holds_through_3() {
        let tr = fourgen_transfer();
        let verdict = verify_stasheff(&tr, 3);
        assert!(
            verdict.holds,
            "violation at {:?}",
            verdict.violation.map(|v| (v.arity, v.tuple))
        );
    }

    #[test]
    fn chain5_transfer_values_char2() {
        let f2 = Field::prime(2).unwrap();
        let tr = chain5_transfer(f2);
        let ring = tr.complex().ideal().ring().clone();

        assert_eq!(tr.homotopy().of_cell(s(&[2, 4])).render(&ring), "u345");
        assert_eq!(tr.homotopy().of_cell(s(&[0, 2])).render(&ring), "u123");

        let p1 = tr.p_of(s(&[0])).unwrap().clone();
        let p3 = tr.p_of(s(&[2])).unwrap().clone();
        let p5 = tr.p_of(s(&[4])).unwrap().clone();
        let l3 = tr.lambda(&[p1, p3, p5]);
        assert_eq!(l3.render(&ring), "u1235 + u1345");

        let m3 = tr.mu(&[s(&[0]), s(&[2]), s(&[4])]);
        assert_eq!(m3.render(&ring), "x4*u1234 + u1245 + x1*u2345");
    }

    #[test]
    fn chain5_rational_values_match_char2_shape() {
        let tr = chain5_transfer(Field::Rational);
        let ring = tr.complex().ideal().ring().clone();
        let m3 = tr.mu(&[s(&[0]), s(&[2]), s(&[4])]);
        assert_eq!(m3.render(&ring), "x4*u1234 + u1245 + x1*u2345");
    }

    #[test]
    fn chain5_minimality_offenders() {
        let f2 = Field::prime(2).unwrap();
        let tr = chain5_transfer(f2);
        let st = tr.mu_structure(3);

        let m2 = st.minimality(2).unwrap();
        assert!(!m2.minimal);
        let (tuple, cell) = m2.offender.as_ref().unwrap();
        assert_eq!(tuple.as_slice(), &[s(&[0]), s(&[3])]);
        assert_eq!(*cell, s(&[0, 3]));

        let m3 = st.minimality(3).unwrap();
        assert!(!m3.minimal);
        let entry = st
            .table(3)
            .unwrap()
            .get(&vec![s(&[0]), s(&[2]), s(&[4])])
            .unwrap();
        assert!(entry.coeff(s(&[0, 1, 3, 4])).has_constant_term());
        assert!(!st.minimal_through_cap());
        assert_eq!(st.first_non_minimal().unwrap().0, 2);
    }

    #[test]
    fn chain5_stasheff_holds_char2() {
        let f2 = Field::prime(2).unwrap();
        let tr = chain5_transfer(f2);
        let verdict = verify_stasheff(&tr, 3);
        assert!(
            verdict.holds,
            "violation at {:?}",
            verdict.violation.map(|v| (v.arity, v.tuple))
        );
    }

    #[test]
    #[ignore = "slow; run explicitly"]
    fn stasheff_arity_4_experiment() {
        let tr = fourgen_transfer();
        let verdict = verify_stasheff(&tr, 4);
        assert!(
            verdict.holds,
            "violation at {:?}",
            verdict.violation.as_ref().map(|v| (v.arity, &v.tuple))
        );
        let f2 = Field::prime(2).unwrap();
        let tr2 = chain5_transfer(f2);
        let verdict2 = verify_stasheff(&tr2, 4);
        assert!(
            verdict2.holds,
            "violation at {:?}",
            verdict2.violation.as_ref().map(|v| (v.arity, &v.tuple))
        );
    }

    #[test]
    fn strict_unit_convention() {
        let tr = fourgen_transfer();
        let e = Subset::EMPTY;
        let c = s(&[0]);
        assert_eq!(tr.mu(&[e, c]), tr.p_of(c).unwrap().clone());
        assert_eq!(tr.mu(&[c, e]), tr.p_of(c).unwrap().clone());
        assert!(tr.mu(&[c, e, c]).is_zero());
        assert!(tr.mu(&[e, c, c, c]).is_zero());
    }

    fn subset_closed_transfer() -> Transfer {
        let i = parse_ideal("ring x1 x2 x3 x4; ideal x1*x2, x2*x3, x2*x4, x1*x4;").unwrap();
        let t = BasedComplex::taylor_full(i, Field::Rational, true).unwrap();
        // A matching whose critical cells are closed under subsets.
        let m = Matching::from_pairs(&[
            (s(&[0, 2, 3]), s(&[0, 3])),
            (s(&[0, 1, 3]), s(&[1, 3])),
            (s(&[0, 1, 2, 3]), s(&[1, 2, 3])),
        ]);
        Transfer::new(t, &m).unwrap()
    }

    #[test]
    fn nu_short_and_general_agree_inside_the_subcomplex() {
        // When the critical cells are subset-closed, p fixes every critical
        // cell, so on pairs whose union is again critical (or which overlap,
        // where the product vanishes) the short and general forms coincide.
        let tr = subset_closed_transfer();
        assert!(tr.downward_closed());
        let ring = tr.complex().ideal().ring().clone();
        assert_eq!(tr.nu(&[s(&[0]), s(&[2])]).render(&ring), "x2*u13");
        let basis = tr.positive_criticals();
        let mut covered = 0;
        for a in &basis {
            for b in &basis {
                let union = a.union(*b);
                if !a.is_disjoint(*b) || tr.is_critical(union) {
                    covered += 1;
                    assert_eq!(
                        tr.nu_short(&[*a, *b]),
                        tr.nu_general(&[*a, *b]),
                        "nu({}, {})",
                        a.label(),
                        b.label()
                    );
                }
            }
        }
        assert!(covered > basis.len());
    }

    #[test]
    fn nu_short_drops_corrections_off_the_subcomplex() {
        // The raw product u1*u4 = x1*u14 lands on a matched cell, which the
        // short form truncates to zero; the general composite keeps the
        // homotopy correction that re-expresses it on critical cells. The
        // two forms are only interchangeable when products of critical
        // cells stay critical.
        let tr = subset_closed_transfer();
        let ring = tr.complex().ideal().ring().clone();
        let pair = [s(&[0]), s(&[3])];
        assert_eq!(tr.nu_short(&pair).render(&ring), "0");
        assert_eq!(tr.nu_general(&pair).render(&ring), "x1*u13 + x1*u34");
    }

    #[test]
    fn reference_matching_is_not_downward_closed() {
        let tr = fourgen_transfer();
        assert!(!tr.downward_closed());
    }

    #[test]
    fn coprime_inputs_land_on_spread_cells() {
        let f2 = Field::prime(2).unwrap();
        let tr = chain5_transfer(f2);
        let ideal = tr.complex().ideal().clone();
        let tuple = [s(&[0]), s(&[2]), s(&[4])];
        let l3 = tr.lambda(&[
            tr.p_of(tuple[0]).unwrap().clone(),
            tr.p_of(tuple[1]).unwrap().clone(),
            tr.p_of(tuple[2]).unwrap().clone(),
        ]);
        for (cell, _) in l3.iter() {
            assert!(ideal.cl(*cell) >= 2, "cl({}) < 2", cell.label());
        }
    }

    #[test]
    fn greedy_matchings_give_same_minimality_verdict() {
        let i = parse_ideal("ring x1 x2 x3 x4; ideal x1^2, x1*x2, x2*x3, x3*x4, x4^2;").unwrap();
        let mut verdicts = Vec::new();
        for strategy in [Strategy::Lex, Strategy::RevLex, Strategy::Random(11)] {
            let t = BasedComplex::taylor_full(i.clone(), Field::Rational, true).unwrap();
            let m = greedy_maximal_matching(&t, strategy);
            let tr = Transfer::new(t, &m).unwrap();
            let st = tr.mu_structure(2);
            verdicts.push(st.minimality(2).unwrap().minimal);
        }
        assert_eq!(verdicts, vec![false, false, false]);
    }
}
