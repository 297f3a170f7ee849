//! Matchings on the differential graph of a based complex and the homotopy
//! machinery that contracts matched cells away: the splitting homotopy, the
//! projection onto the retract, and the reduced (Morse) complex. Also the
//! staged matching construction that batches arrows by connectivity class,
//! and the verifier for its five structural conditions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{BasedComplex, ModuleElement};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Subset;

/// The directed graph of a based complex: an edge source → target for every
/// nonzero differential component, flagged invertible when the component is
/// a unit scalar.
#[derive(Clone, Debug)]
pub struct MorseGraph {
    cells: Vec<Subset>,
    edges: BTreeMap<Subset, Vec<(Subset, bool)>>,
}

pub fn build_graph(complex: &BasedComplex) -> MorseGraph {
    let mut edges = BTreeMap::new();
    for cell in complex.cells() {
        let image = complex.diff(*cell);
        let out: Vec<(Subset, bool)> = image
            .iter()
            .map(|(target, poly)| (*target, poly.unit_scalar().is_some()))
            .collect();
        if !out.is_empty() {
            edges.insert(*cell, out);
        }
    }
    MorseGraph {
        cells: complex.cells().to_vec(),
        edges,
    }
}

impl MorseGraph {
    pub fn cells(&self) -> &[Subset] {
        &self.cells
    }

    /// All edges ascending by (source, target).
    pub fn edges(&self) -> impl Iterator<Item = (Subset, Subset, bool)> + '_ {
        self.edges
            .iter()
            .flat_map(|(s, outs)| outs.iter().map(move |(t, inv)| (*s, *t, *inv)))
    }

    pub fn invertible_edges(&self) -> Vec<(Subset, Subset)> {
        self.edges()
            .filter(|(_, _, inv)| *inv)
            .map(|(s, t, _)| (s, t))
            .collect()
    }

    pub fn has_invertible_edge(&self, source: Subset, target: Subset) -> bool {
        self.edges
            .get(&source)
            .map(|outs| outs.iter().any(|(t, inv)| *t == target && *inv))
            .unwrap_or(false)
    }
}

/// One matched edge. Stage and substage record when a staged construction
/// added the arrow; plain matchings leave them unset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: Subset,
    pub target: Subset,
    pub stage: Option<usize>,
    pub substage: Option<usize>,
}

impl Arrow {
    pub fn flat(source: Subset, target: Subset) -> Arrow {
        Arrow {
            source,
            target,
            stage: None,
            substage: None,
        }
    }
}

/// A set of arrows. Cells hit by an arrow are "matched": arrow targets form
/// the set lifted by the homotopy, arrow sources the set it lands in, and
/// everything untouched is critical.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    arrows: Vec<Arrow>,
}

impl Matching {
    pub fn new(arrows: Vec<Arrow>) -> Matching {
        Matching { arrows }
    }

    pub fn from_pairs(pairs: &[(Subset, Subset)]) -> Matching {
        Matching {
            arrows: pairs.iter().map(|&(s, t)| Arrow::flat(s, t)).collect(),
        }
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn sources(&self) -> BTreeSet<Subset> {
        self.arrows.iter().map(|a| a.source).collect()
    }

    pub fn targets(&self) -> BTreeSet<Subset> {
        self.arrows.iter().map(|a| a.target).collect()
    }

    pub fn matched_cells(&self) -> BTreeSet<Subset> {
        self.arrows
            .iter()
            .flat_map(|a| [a.source, a.target])
            .collect()
    }

    pub fn arrow_with_target(&self, target: Subset) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.target == target)
    }

    /// Cells of the complex not incident to any arrow, ascending.
    pub fn critical_cells(&self, complex: &BasedComplex) -> Vec<Subset> {
        let matched = self.matched_cells();
        complex
            .cells()
            .iter()
            .filter(|c| !matched.contains(c))
            .copied()
            .collect()
    }

    /// Arrows grouped by (stage, substage), ascending; unset values count
    /// as 1. A plain matching yields a single batch.
    pub fn batches(&self) -> Vec<((usize, usize), Vec<(Subset, Subset)>)> {
        let mut groups: BTreeMap<(usize, usize), Vec<(Subset, Subset)>> = BTreeMap::new();
        for a in &self.arrows {
            groups
                .entry((a.stage.unwrap_or(1), a.substage.unwrap_or(1)))
                .or_default()
                .push((a.source, a.target));
        }
        groups.into_iter().collect()
    }

    /// Arrows grouped by stage only, ascending.
    pub fn stages(&self) -> Vec<(usize, Vec<(Subset, Subset)>)> {
        let mut groups: BTreeMap<usize, Vec<(Subset, Subset)>> = BTreeMap::new();
        for a in &self.arrows {
            groups
                .entry(a.stage.unwrap_or(1))
                .or_default()
                .push((a.source, a.target));
        }
        groups.into_iter().collect()
    }

    pub fn to_json(&self) -> String {
        let doc = MatchingJson {
            schema: "matching.v1".to_string(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    source: a.source.iter().map(|i| i + 1).collect(),
                    target: a.target.iter().map(|i| i + 1).collect(),
                    stage: a.stage,
                    substage: a.substage,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("matching serializes")
    }

    pub fn from_json(text: &str) -> Result<Matching> {
        let doc: MatchingJson = serde_json::from_str(text)?;
        if doc.schema != "matching.v1" {
            return Err(Error::Invalid(format!("unknown schema {}", doc.schema)));
        }
        let cell = |indices: &[usize]| -> Result<Subset> {
            let mut s = Subset::EMPTY;
            for &i in indices {
                if i == 0 || i > 31 {
                    return Err(Error::Invalid(format!("cell index {i} out of 1..=31")));
                }
                s = s.insert(i - 1);
            }
            Ok(s)
        };
        let arrows = doc
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    source: cell(&a.source)?,
                    target: cell(&a.target)?,
                    stage: a.stage,
                    substage: a.substage,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matching { arrows })
    }
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    schema: String,
    arrows: Vec<ArrowJson>,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    source: Vec<usize>,
    target: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stage: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    substage: Option<usize>,
}

/// Why a matching is invalid; the cycle variant carries a directed cycle of
/// the arrow-reversed graph as certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingProblem {
    MissingEdge { source: Subset, target: Subset },
    NotInvertible { source: Subset, target: Subset },
    SharedCell { cell: Subset },
    Cycle { cells: Vec<Subset> },
}

impl fmt::Display for MatchingProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingProblem::MissingEdge { source, target } => write!(
                f,
                "no differential component {} -> {}",
                source.label(),
                target.label()
            ),
            MatchingProblem::NotInvertible { source, target } => write!(
                f,
                "component {} -> {} is not a unit",
                source.label(),
                target.label()
            ),
            MatchingProblem::SharedCell { cell } => {
                write!(f, "cell {} is incident to two arrows", cell.label())
            }
            MatchingProblem::Cycle { cells } => {
                let path: Vec<String> = cells.iter().map(|c| c.label()).collect();
                write!(f, "arrow-reversed graph has cycle {}", path.join(" -> "))
            }
        }
    }
}

/// Checks the three matching conditions of `pairs` against `complex`: every
/// arrow is an invertible edge, no cell is hit twice, and reversing the
/// arrows leaves the graph acyclic.
pub fn validate_pairs(
    complex: &BasedComplex,
    pairs: &[(Subset, Subset)],
) -> std::result::Result<(), MatchingProblem> {
    let mut seen: BTreeSet<Subset> = BTreeSet::new();
    for &(source, target) in pairs {
        let poly = complex.diff(source).coeff(target);
        if poly.is_zero() || !complex.contains_cell(source) {
            return Err(MatchingProblem::MissingEdge { source, target });
        }
        if poly.unit_scalar().is_none() {
            return Err(MatchingProblem::NotInvertible { source, target });
        }
        for cell in [source, target] {
            if !seen.insert(cell) {
                return Err(MatchingProblem::SharedCell { cell });
            }
        }
    }
    check_acyclic(complex, pairs)
}

/// Flat validation of all arrows of a matching at once.
pub fn validate_matching(
    complex: &BasedComplex,
    matching: &Matching,
) -> std::result::Result<(), MatchingProblem> {
    let pairs: Vec<(Subset, Subset)> = matching
        .arrows
        .iter()
        .map(|a| (a.source, a.target))
        .collect();
    validate_pairs(complex, &pairs)
}

fn check_acyclic(
    complex: &BasedComplex,
    pairs: &[(Subset, Subset)],
) -> std::result::Result<(), MatchingProblem> {
    let cells = complex.cells();
    let index: BTreeMap<Subset, usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let reversed: BTreeSet<(usize, usize)> = pairs
        .iter()
        .map(|(s, t)| (index[s], index[t]))
        .collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    let mut indegree = vec![0usize; cells.len()];
    for (s, outs) in complex.cells().iter().map(|c| (c, complex.diff(*c))) {
        let si = index[s];
        for (t, _) in outs.iter() {
            let ti = index[t];
            let (from, to) = if reversed.contains(&(si, ti)) {
                (ti, si)
            } else {
                (si, ti)
            };
            out[from].push(to);
            indegree[to] += 1;
        }
    }
    // Kahn's algorithm; whatever survives contains a cycle.
    let mut queue: Vec<usize> = (0..cells.len()).filter(|&i| indegree[i] == 0).collect();
    let mut removed = 0usize;
    while let Some(i) = queue.pop() {
        removed += 1;
        for &j in &out[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                queue.push(j);
            }
        }
    }
    if removed == cells.len() {
        return Ok(());
    }
    // The leftover set is everything reachable from a cycle. Each leftover
    // vertex keeps at least one leftover predecessor, so walking backward
    // must revisit a vertex; the revisited stretch, reversed, is a cycle.
    let alive: Vec<bool> = indegree.iter().map(|&d| d > 0).collect();
    let mut pred: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..cells.len() {
        if !alive[i] {
            continue;
        }
        for &j in &out[i] {
            if alive[j] {
                pred.entry(j).or_insert(i);
            }
        }
    }
    let start = (0..cells.len()).find(|&i| alive[i]).unwrap();
    let mut path = vec![start];
    let mut pos: BTreeMap<usize, usize> = BTreeMap::new();
    pos.insert(start, 0);
    loop {
        let next = pred[path.last().unwrap()];
        if let Some(&p) = pos.get(&next) {
            let mut cycle: Vec<Subset> = path[p..].iter().map(|&i| cells[i]).collect();
            cycle.reverse();
            return Err(MatchingProblem::Cycle { cells: cycle });
        }
        pos.insert(next, path.len());
        path.push(next);
    }
}

/// Order in which the greedy construction scans invertible edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Ascending (source, target) cell order. Default.
    Lex,
    /// Descending cell order.
    RevLex,
    /// Seeded shuffle; the same seed always yields the same matching.
    Random(u64),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Lex => write!(f, "lex"),
            Strategy::RevLex => write!(f, "revlex"),
            Strategy::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

/// Maintains a topological order of a DAG under edge insertions (with local
/// repair) and deletions; insertion that would close a cycle is refused.
struct IncrementalTopo {
    out: Vec<BTreeSet<usize>>,
    position: Vec<usize>,
    node_at: Vec<usize>,
}

impl IncrementalTopo {
    /// `n` nodes with no edges; caller inserts edges afterwards.
    fn new(n: usize) -> IncrementalTopo {
        IncrementalTopo {
            out: vec![BTreeSet::new(); n],
            position: (0..n).collect(),
            node_at: (0..n).collect(),
        }
    }

    fn remove_edge(&mut self, u: usize, v: usize) {
        self.out[u].remove(&v);
    }

    /// Inserts u → v, reordering locally if needed. Returns false (and
    /// leaves the structure untouched) when the edge would close a cycle.
    fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if self.position[u] < self.position[v] {
            self.out[u].insert(v);
            return true;
        }
        let lb = self.position[v];
        let ub = self.position[u];
        // Forward from v within the affected region; abort on reaching u.
        let mut forward = Vec::new();
        let mut seen_f = BTreeSet::new();
        let mut stack = vec![v];
        seen_f.insert(v);
        while let Some(x) = stack.pop() {
            if x == u {
                return false;
            }
            forward.push(x);
            for &y in &self.out[x] {
                if self.position[y] <= ub && seen_f.insert(y) {
                    stack.push(y);
                }
            }
        }
        // Backward from u within the region.
        let region: Vec<usize> = (lb..=ub).map(|p| self.node_at[p]).collect();
        let mut inbound: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &x in &region {
            for &y in &self.out[x] {
                if self.position[y] >= lb && self.position[y] <= ub {
                    inbound.entry(y).or_default().push(x);
                }
            }
        }
        let mut backward = Vec::new();
        let mut seen_b = BTreeSet::new();
        let mut stack = vec![u];
        seen_b.insert(u);
        while let Some(x) = stack.pop() {
            backward.push(x);
            for &y in inbound.get(&x).map(|v| v.as_slice()).unwrap_or(&[]) {
                if seen_b.insert(y) {
                    stack.push(y);
                }
            }
        }
        // Reassign the union's slots: backward set first, then forward set,
        // each in their existing relative order.
        let mut slots: Vec<usize> = forward
            .iter()
            .chain(backward.iter())
            .map(|&x| self.position[x])
            .collect();
        slots.sort_unstable();
        backward.sort_unstable_by_key(|&x| self.position[x]);
        forward.sort_unstable_by_key(|&x| self.position[x]);
        for (slot, node) in slots.into_iter().zip(backward.into_iter().chain(forward)) {
            self.position[node] = slot;
            self.node_at[slot] = node;
        }
        self.out[u].insert(v);
        true
    }
}

/// Builds a maximal matching by scanning invertible edges in strategy
/// order, keeping each candidate whose addition preserves acyclicity, and
/// repeating passes until no further arrow fits. Reversing an arrow removes
/// a forward edge, which can unblock earlier rejects, so a single pass is
/// not enough.
pub fn greedy_maximal_matching(complex: &BasedComplex, strategy: Strategy) -> Matching {
    let graph = build_graph(complex);
    let cells = complex.cells();
    let index: BTreeMap<Subset, usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let n = cells.len();

    let mut topo = IncrementalTopo::new(n);
    // Cells ascend by degree, so reversing the order makes every initial
    // (degree-dropping) edge point forward.
    for i in 0..n {
        topo.position[i] = n - 1 - i;
        topo.node_at[n - 1 - i] = i;
    }
    for (s, t, _) in graph.edges() {
        let ok = topo.add_edge(index[&s], index[&t]);
        debug_assert!(ok);
    }

    let mut candidates = graph.invertible_edges();
    match strategy {
        Strategy::Lex => {}
        Strategy::RevLex => candidates.reverse(),
        Strategy::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            candidates.shuffle(&mut rng);
        }
    }

    let mut used: BTreeSet<Subset> = BTreeSet::new();
    let mut arrows = Vec::new();
    loop {
        let mut progress = false;
        for &(s, t) in &candidates {
            if used.contains(&s) || used.contains(&t) {
                continue;
            }
            let (si, ti) = (index[&s], index[&t]);
            topo.remove_edge(si, ti);
            if topo.add_edge(ti, si) {
                used.insert(s);
                used.insert(t);
                arrows.push(Arrow::flat(s, t));
                progress = true;
            } else {
                let restored = topo.add_edge(si, ti);
                debug_assert!(restored);
            }
        }
        if !progress {
            break;
        }
    }
    Matching::new(arrows)
}

/// True when no invertible edge can be added to the matching without
/// breaking validity.
pub fn is_maximal(complex: &BasedComplex, matching: &Matching) -> bool {
    let graph = build_graph(complex);
    let matched = matching.matched_cells();
    let mut pairs: Vec<(Subset, Subset)> = matching
        .arrows()
        .iter()
        .map(|a| (a.source, a.target))
        .collect();
    for (s, t) in graph.invertible_edges() {
        if matched.contains(&s) || matched.contains(&t) {
            continue;
        }
        pairs.push((s, t));
        if validate_pairs(complex, &pairs).is_ok() {
            return false;
        }
        pairs.pop();
    }
    true
}

/// The degree +1 splitting homotopy of a matching: zero outside arrow
/// targets, and on an arrow target the rescaled source corrected by the
/// lifts of the other boundary components of that source.
#[derive(Clone, Debug)]
pub struct Homotopy {
    table: BTreeMap<Subset, ModuleElement>,
    field: crate::field::Field,
    nvars: usize,
}

impl Homotopy {
    pub fn of_cell(&self, cell: Subset) -> ModuleElement {
        self.table.get(&cell).cloned().unwrap_or_default()
    }

    /// Cells with nonzero value, ascending.
    pub fn support(&self) -> impl Iterator<Item = Subset> + '_ {
        self.table.keys().copied()
    }

    pub fn apply(&self, elt: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (cell, poly) in elt.iter() {
            if let Some(value) = self.table.get(cell) {
                out = out.add(&value.scale_poly(poly));
            }
        }
        out
    }

    /// The chain projection 1 − dφ − φd onto the retract.
    pub fn project(&self, complex: &BasedComplex, elt: &ModuleElement) -> ModuleElement {
        elt.sub(&complex.apply_diff(&self.apply(elt)))
            .sub(&self.apply(&complex.apply_diff(elt)))
    }

    pub fn field(&self) -> crate::field::Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

/// Computes the splitting homotopy of a validated flat matching.
pub fn splitting_homotopy(complex: &BasedComplex, matching: &Matching) -> Result<Homotopy> {
    validate_matching(complex, matching)
        .map_err(|p| Error::InvalidMatching(p.to_string()))?;
    Ok(homotopy_unchecked(complex, matching))
}

fn homotopy_unchecked(complex: &BasedComplex, matching: &Matching) -> Homotopy {
    let source_of: BTreeMap<Subset, Subset> = matching
        .arrows()
        .iter()
        .map(|a| (a.target, a.source))
        .collect();
    let mut table: BTreeMap<Subset, ModuleElement> = BTreeMap::new();
    for &start in source_of.keys() {
        if table.contains_key(&start) {
            continue;
        }
        let mut stack = vec![start];
        while let Some(&alpha) = stack.last() {
            if table.contains_key(&alpha) {
                stack.pop();
                continue;
            }
            let beta = source_of[&alpha];
            let d_beta = complex.diff(beta);
            let pending: Vec<Subset> = d_beta
                .cells()
                .filter(|g| *g != alpha && source_of.contains_key(g) && !table.contains_key(g))
                .collect();
            if !pending.is_empty() {
                stack.extend(pending);
                continue;
            }
            // φ(α) = c⁻¹·β − c⁻¹·Σ_{γ≠α} d(β)_γ·φ(γ), with c the unit
            // scalar of the matched component. Acyclicity makes the
            // recursion well founded.
            let c = d_beta
                .coeff(alpha)
                .unit_scalar()
                .expect("matched component is a unit");
            let mut value = complex.basis_element(beta);
            for (gamma, poly) in d_beta.iter() {
                if *gamma == alpha {
                    continue;
                }
                if let Some(lift) = table.get(gamma) {
                    value = value.sub(&lift.scale_poly(poly));
                }
            }
            table.insert(alpha, value.scale_scalar(&c.inv()));
            stack.pop();
        }
    }
    Homotopy {
        table,
        field: complex.field(),
        nvars: complex.nvars(),
    }
}

fn reduce_batch(complex: &BasedComplex, pairs: &[(Subset, Subset)]) -> Result<BasedComplex> {
    if let Err(p) = validate_pairs(complex, pairs) {
        return Err(Error::InvalidMatching(p.to_string()));
    }
    let matching = Matching::from_pairs(pairs);
    let phi = homotopy_unchecked(complex, &matching);
    let matched = matching.matched_cells();
    let criticals: Vec<Subset> = complex
        .cells()
        .iter()
        .filter(|c| !matched.contains(c))
        .copied()
        .collect();
    let critical_set: BTreeSet<Subset> = criticals.iter().copied().collect();
    let mut diff = BTreeMap::new();
    for cell in &criticals {
        let d = complex.diff(*cell);
        let reduced = d.sub(&complex.apply_diff(&phi.apply(&d)));
        let mut projected = ModuleElement::zero();
        for (target, poly) in reduced.iter() {
            if critical_set.contains(target) {
                projected.add_cell_poly(*target, poly);
            }
        }
        if !projected.is_zero() {
            diff.insert(*cell, projected);
        }
    }
    BasedComplex::new(
        complex.ideal().clone(),
        complex.field(),
        criticals,
        diff,
        true,
    )
}

/// Contracts the matched cells away, batch by batch in (stage, substage)
/// order. Cells are the critical ones; the differential is the original one
/// corrected by the homotopy and projected back onto critical cells. The
/// result is validated (the squared differential must vanish).
pub fn morse_complex(complex: &BasedComplex, matching: &Matching) -> Result<BasedComplex> {
    let mut current = complex.clone();
    for ((stage, substage), pairs) in matching.batches() {
        current = reduce_batch(&current, &pairs).map_err(|e| {
            Error::InvalidMatching(format!("batch {stage}.{substage}: {e}"))
        })?;
    }
    Ok(current)
}

/// A chain of matchings, each on the previous round's Morse complex,
/// composed into one contraction of the starting complex onto a minimal
/// retract. One round does not always suffice: a unit entry of the reduced
/// differential can connect cells that are not incident in the starting
/// complex, and then no single matching can absorb it.
#[derive(Clone, Debug)]
pub struct MinimalReduction {
    /// Round k's matching lives on the complex produced by round k-1.
    pub rounds: Vec<Matching>,
    /// The final retract; its differential has no unit entries.
    pub complex: BasedComplex,
    /// Composite splitting homotopy on the starting complex. Satisfies the
    /// same identities as a one-round homotopy: φ² = 0, φdφ = φ, and
    /// 1 − dφ − φd projects onto a copy of the final retract.
    pub homotopy: Homotopy,
}

impl MinimalReduction {
    pub fn criticals(&self) -> &[Subset] {
        self.complex.cells()
    }

    /// Surviving cells per degree.
    pub fn critical_counts(&self) -> Vec<usize> {
        let cells = self.complex.cells();
        let max = cells.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut counts = vec![0usize; max + 1];
        for c in cells {
            counts[c.len()] += 1;
        }
        counts
    }
}

/// Reduces a complex to a minimal one by repeated greedy rounds. Each round
/// matches invertible edges of the current complex and contracts them; the
/// homotopies compose by lifting the new round's correction back through
/// the earlier rounds. Terminates because every nonempty round strictly
/// shrinks the cell set.
pub fn minimal_reduction(
    complex: &BasedComplex,
    strategy: Strategy,
) -> Result<MinimalReduction> {
    let mut rounds = Vec::new();
    let mut current = complex.clone();
    // Composite state over the starting complex: homotopy value per cell,
    // coordinates of every starting cell on the current retract, and the
    // lift of every retract cell back into the starting complex.
    let mut phi: BTreeMap<Subset, ModuleElement> = BTreeMap::new();
    let mut proj: BTreeMap<Subset, ModuleElement> = complex
        .cells()
        .iter()
        .map(|c| (*c, complex.basis_element(*c)))
        .collect();
    let mut lift: BTreeMap<Subset, ModuleElement> = complex
        .cells()
        .iter()
        .map(|c| (*c, complex.basis_element(*c)))
        .collect();

    fn lift_through(
        elt: &ModuleElement,
        lift: &BTreeMap<Subset, ModuleElement>,
    ) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (cell, poly) in elt.iter() {
            out = out.add(&lift[cell].scale_poly(poly));
        }
        out
    }

    loop {
        let matching = greedy_maximal_matching(&current, strategy);
        if matching.arrows().is_empty() {
            break;
        }
        let h = splitting_homotopy(&current, &matching)?;
        let next = morse_complex(&current, &matching)?;
        let surviving: BTreeSet<Subset> = next.cells().iter().copied().collect();
        for (cell, coords) in &proj {
            let lifted = lift_through(&h.apply(coords), &lift);
            if !lifted.is_zero() {
                let prev = phi.remove(cell).unwrap_or_default();
                phi.insert(*cell, prev.add(&lifted));
            }
        }
        let new_lift: BTreeMap<Subset, ModuleElement> = next
            .cells()
            .iter()
            .map(|c| {
                let projected = h.project(&current, &current.basis_element(*c));
                (*c, lift_through(&projected, &lift))
            })
            .collect();
        for coords in proj.values_mut() {
            let projected = h.project(&current, coords);
            let mut restricted = ModuleElement::zero();
            for (cell, poly) in projected.iter() {
                if surviving.contains(cell) {
                    restricted.add_cell_poly(*cell, poly);
                }
            }
            *coords = restricted;
        }
        lift = new_lift;
        rounds.push(matching);
        current = next;
    }
    debug_assert!(current.is_minimal().0);
    Ok(MinimalReduction {
        rounds,
        complex: current,
        homotopy: Homotopy {
            table: phi,
            field: complex.field(),
            nvars: complex.nvars(),
        },
    })
}

/// Result of the staged construction: the matching, the complex it reduces
/// to, and a stall description if the construction could not finish with a
/// minimal complex.
#[derive(Clone, Debug)]
pub struct StagedOutcome {
    pub matching: Matching,
    pub complex: BasedComplex,
    pub stall: Option<String>,
}

/// Staged matching construction. Stage `i` repeatedly picks the smallest
/// admissible arrow — an invertible edge whose source has one connectivity
/// class and whose target has `i` — that is minimal (no admissible arrow
/// between subsets of its endpoints), then matches it together with all its
/// coprime extensions in one batch and contracts. Stops when no stage
/// admits arrows; reports a stall when a batch is invalid or the final
/// complex is not minimal.
pub fn staged_matching(ideal: &MonomialIdeal, field: crate::field::Field) -> Result<StagedOutcome> {
    let mut current = BasedComplex::taylor_full(ideal.clone(), field, true)?;
    let r = ideal.num_generators();
    let full = Subset::full(r);
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut stall: Option<String> = None;

    'stages: for stage in 1..=r {
        let mut substage = 0usize;
        loop {
            let admissible: Vec<(Subset, Subset)> = current
                .cells()
                .iter()
                .flat_map(|u| {
                    current
                        .diff(*u)
                        .iter()
                        .filter(|(_, poly)| poly.unit_scalar().is_some())
                        .map(|(v, _)| (*u, *v))
                        .collect::<Vec<_>>()
                })
                .filter(|(u, v)| ideal.cl(*u) == 1 && ideal.cl(*v) == stage)
                .collect();
            if admissible.is_empty() {
                break;
            }
            let (u, v) = *admissible
                .iter()
                .find(|(u, v)| {
                    !admissible.iter().any(|(u2, v2)| {
                        (u2, v2) != (u, v) && u2.is_subset_of(*u) && v2.is_subset_of(*v)
                    })
                })
                .expect("a minimal admissible arrow exists");
            substage += 1;

            let m_u = ideal.multidegree(u);
            let batch: Vec<(Subset, Subset)> = full
                .minus(u.union(v))
                .subsets()
                .into_iter()
                .filter(|w| ideal.multidegree(*w).is_coprime(&m_u))
                .map(|w| (u.union(w), v.union(w)))
                .collect();

            if let Err(p) = validate_pairs(&current, &batch) {
                stall = Some(format!(
                    "stage {stage} substage {substage}: batch around {} -> {} is invalid: {p}",
                    u.label(),
                    v.label()
                ));
                break 'stages;
            }
            for (s, t) in &batch {
                arrows.push(Arrow {
                    source: *s,
                    target: *t,
                    stage: Some(stage),
                    substage: Some(substage),
                });
            }
            current = reduce_batch(&current, &batch)?;
        }
    }

    if stall.is_none() && !current.is_minimal().0 {
        stall = Some("construction exhausted all stages without reaching a minimal complex".into());
    }
    Ok(StagedOutcome {
        matching: Matching::new(arrows),
        complex: current,
        stall,
    })
}

/// Verdict of the five-condition check on a staged matching, with the first
/// violated condition and a description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardVerdict {
    pub standard: bool,
    pub violation: Option<(u8, String)>,
}

impl StandardVerdict {
    fn ok() -> StandardVerdict {
        StandardVerdict {
            standard: true,
            violation: None,
        }
    }

    fn fail(clause: u8, msg: String) -> StandardVerdict {
        StandardVerdict {
            standard: false,
            violation: Some((clause, msg)),
        }
    }
}

/// Checks the five structural conditions of a staged matching on the full
/// subset complex: (1) every arrow joins cells of equal multidegree; (2)
/// the final contracted complex is minimal; (3) each stage is a valid
/// matching on the complex left by the previous stages; (4) within stage i
/// the target has exactly i−1 more connectivity classes than the source;
/// (5) each stage is the coprime-extension closure of its class-1-source
/// arrows. Arrows without a stage annotation count as stage 1.
pub fn is_standard_matching(complex: &BasedComplex, matching: &Matching) -> StandardVerdict {
    let ideal = complex.ideal();

    for a in matching.arrows() {
        if ideal.multidegree(a.source) != ideal.multidegree(a.target) {
            return StandardVerdict::fail(
                1,
                format!(
                    "arrow {} -> {} changes the multidegree",
                    a.source.label(),
                    a.target.label()
                ),
            );
        }
    }

    // Clause 3 first: clauses 2 and 5 need the stagewise replay to succeed.
    let mut current = complex.clone();
    let stages = matching.stages();
    for (stage, pairs) in &stages {
        if let Err(p) = validate_pairs(&current, pairs) {
            return StandardVerdict::fail(3, format!("stage {stage}: {p}"));
        }
        current = match reduce_batch(&current, pairs) {
            Ok(c) => c,
            Err(e) => return StandardVerdict::fail(3, format!("stage {stage}: {e}")),
        };
    }

    let (minimal, offenders) = current.is_minimal();
    if !minimal {
        let (s, t) = offenders[0];
        return StandardVerdict::fail(
            2,
            format!(
                "final complex keeps the unit component {} -> {}",
                s.label(),
                t.label()
            ),
        );
    }

    for a in matching.arrows() {
        let stage = a.stage.unwrap_or(1);
        let diff = ideal.cl(a.target) as isize - ideal.cl(a.source) as isize;
        if diff != stage as isize - 1 {
            return StandardVerdict::fail(
                4,
                format!(
                    "arrow {} -> {} at stage {stage} has class difference {diff}",
                    a.source.label(),
                    a.target.label()
                ),
            );
        }
    }

    let full = Subset::full(ideal.num_generators());
    for (stage, pairs) in &stages {
        let set: BTreeSet<(Subset, Subset)> = pairs.iter().copied().collect();
        let base: Vec<(Subset, Subset)> = pairs
            .iter()
            .filter(|(u, _)| ideal.cl(*u) == 1)
            .copied()
            .collect();
        let mut closure: BTreeSet<(Subset, Subset)> = BTreeSet::new();
        for (u, v) in &base {
            let m_u = ideal.multidegree(*u);
            for w in full.minus(u.union(*v)).subsets() {
                if ideal.multidegree(w).is_coprime(&m_u) {
                    closure.insert((u.union(w), v.union(w)));
                }
            }
        }
        if let Some((u, v)) = closure.difference(&set).next() {
            return StandardVerdict::fail(
                5,
                format!(
                    "stage {stage} misses the extension {} -> {}",
                    u.label(),
                    v.label()
                ),
            );
        }
        if let Some((u, v)) = set.difference(&closure).next() {
            return StandardVerdict::fail(
                5,
                format!(
                    "stage {stage} arrow {} -> {} is not an extension of a class-1 arrow",
                    u.label(),
                    v.label()
                ),
            );
        }
    }

    StandardVerdict::ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_ideal;

    fn fourgen() -> MonomialIdeal {
        parse_ideal("ring x1 x2 x3 x4; ideal x1*x2, x2*x3, x2*x4, x1*x4;").unwrap()
    }

    fn fourgen_taylor() -> BasedComplex {
        BasedComplex::taylor_full(fourgen(), Field::Rational, true).unwrap()
    }

    fn s(indices: &[usize]) -> Subset {
        Subset::from_indices(indices)
    }

    /// The worked-example matching: u1234 -> u234, u134 -> u13, u124 -> u24.
    fn reference_matching() -> Matching {
        Matching::from_pairs(&[
            (s(&[0, 1, 2, 3]), s(&[1, 2, 3])),
            (s(&[0, 2, 3]), s(&[0, 2])),
            (s(&[0, 1, 3]), s(&[1, 3])),
        ])
    }

    #[test]
    fn graph_mirrors_differential() {
        let t = fourgen_taylor();
        let g = build_graph(&t);
        let inv = g.invertible_edges();
        let expected = vec![
            (s(&[0, 1, 3]), s(&[1, 3])),
            (s(&[0, 2, 3]), s(&[0, 2])),
            (s(&[0, 2, 3]), s(&[0, 3])),
            (s(&[0, 2, 3]), s(&[2, 3])),
            (s(&[1, 2, 3]), s(&[1, 3])),
            (s(&[0, 1, 2, 3]), s(&[0, 1, 2])),
            (s(&[0, 1, 2, 3]), s(&[0, 1, 3])),
            (s(&[0, 1, 2, 3]), s(&[1, 2, 3])),
        ];
        assert_eq!(inv, expected);
        // Edge count: each cell of degree n has n boundary components.
        assert_eq!(g.edges().count(), 32);
    }

    #[test]
    fn validation_accepts_reference() {
        let t = fourgen_taylor();
        assert_eq!(validate_matching(&t, &reference_matching()), Ok(()));
    }

    #[test]
    fn validation_rejects_bad_matchings() {
        let t = fourgen_taylor();
        // Not an edge at all.
        let m = Matching::from_pairs(&[(s(&[0, 1]), s(&[2]))]);
        assert!(matches!(
            validate_matching(&t, &m),
            Err(MatchingProblem::MissingEdge { .. })
        ));
        // An edge with non-unit coefficient.
        let m = Matching::from_pairs(&[(s(&[0, 1]), s(&[0]))]);
        assert!(matches!(
            validate_matching(&t, &m),
            Err(MatchingProblem::NotInvertible { .. })
        ));
        // Two arrows out of the same source.
        let m = Matching::from_pairs(&[
            (s(&[0, 2, 3]), s(&[0, 2])),
            (s(&[0, 2, 3]), s(&[0, 3])),
        ]);
        assert!(matches!(
            validate_matching(&t, &m),
            Err(MatchingProblem::SharedCell { .. })
        ));
    }

    #[test]
    fn validation_catches_cycles() {
        // Three equal generators make every edge invertible, and matching
        // the three 2-cells cyclically to their 1-cells closes a loop.
        let i = parse_ideal("ring x; ideal x, x, x;").unwrap();
        let t = BasedComplex::taylor_full(i, Field::Rational, true).unwrap();
        let m = Matching::from_pairs(&[
            (s(&[0, 1]), s(&[0])),
            (s(&[1, 2]), s(&[1])),
            (s(&[0, 2]), s(&[2])),
        ]);
        match validate_matching(&t, &m) {
            Err(MatchingProblem::Cycle { cells }) => {
                assert!(cells.len() >= 4);
                // The cycle alternates between degree 1 and degree 2.
                for c in &cells {
                    assert!(c.len() == 1 || c.len() == 2);
                }
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn homotopy_matches_worked_example() {
        let t = fourgen_taylor();
        let m = reference_matching();
        let phi = splitting_homotopy(&t, &m).unwrap();
        let ring = t.ideal().ring().clone();

        assert_eq!(phi.of_cell(s(&[1, 3])).render(&ring), "u124");
        assert_eq!(phi.of_cell(s(&[0, 2])).render(&ring), "u134");
        assert_eq!(phi.of_cell(s(&[1, 2, 3])).render(&ring), "u1234");
        // Everything else vanishes.
        for cell in t.cells() {
            if ![s(&[1, 3]), s(&[0, 2]), s(&[1, 2, 3])].contains(cell) {
                assert!(phi.of_cell(*cell).is_zero(), "phi({}) != 0", cell.label());
            }
        }

        assert_eq!(
            phi.project(&t, &t.basis_element(s(&[1, 3]))).render(&ring),
            "-x4*u12 + x3*u14"
        );
        assert_eq!(
            phi.project(&t, &t.basis_element(s(&[0, 1, 2, 3]))).render(&ring),
            "0"
        );
        assert_eq!(
            phi.project(&t, &t.basis_element(s(&[0, 1, 2]))).render(&ring),
            "u123 + x3*u134"
        );
        assert_eq!(
            phi.project(&t, &t.basis_element(s(&[0, 2]))).render(&ring),
            "u14 - u34"
        );
    }

    #[test]
    fn homotopy_identities() {
        let t = fourgen_taylor();
        let m = reference_matching();
        let phi = splitting_homotopy(&t, &m).unwrap();
        for cell in t.cells() {
            let e = t.basis_element(*cell);
            let phi_e = phi.apply(&e);
            assert!(phi.apply(&phi_e).is_zero(), "phi^2 != 0 at {}", cell.label());
            let dphi = t.apply_diff(&phi_e);
            assert_eq!(
                phi.apply(&dphi),
                phi_e,
                "phi d phi != phi at {}",
                cell.label()
            );
            let p = phi.project(&t, &e);
            assert_eq!(phi.project(&t, &p), p, "p^2 != p at {}", cell.label());
            assert!(phi.apply(&p).is_zero(), "phi p != 0 at {}", cell.label());
        }
    }

    #[test]
    fn morse_complex_of_reference() {
        let t = fourgen_taylor();
        let m = reference_matching();
        let reduced = morse_complex(&t, &m).unwrap();
        assert_eq!(reduced.cells().len(), 10);
        assert_eq!(reduced.tor_ranks(), vec![1, 4, 4, 1]);
        assert!(reduced.is_minimal().0);
        // d̃ of the surviving 3-cell.
        let d = reduced.diff(s(&[0, 1, 2]));
        assert_eq!(
            d.render(t.ideal().ring()),
            "x4*u12 - x3*u14 + x1*u23 + x3*u34"
        );
    }

    #[test]
    fn empty_matching_returns_the_complex() {
        let t = fourgen_taylor();
        let reduced = morse_complex(&t, &Matching::default()).unwrap();
        assert_eq!(&reduced, &t);
    }

    #[test]
    fn greedy_strategies_agree_on_ranks() {
        let t = fourgen_taylor();
        for strategy in [
            Strategy::Lex,
            Strategy::RevLex,
            Strategy::Random(7),
            Strategy::Random(8),
        ] {
            let m = greedy_maximal_matching(&t, strategy);
            assert_eq!(validate_matching(&t, &m), Ok(()), "{strategy}");
            assert!(is_maximal(&t, &m), "{strategy}");
            let reduced = morse_complex(&t, &m).unwrap();
            assert!(reduced.is_minimal().0, "{strategy}");
            assert_eq!(reduced.tor_ranks(), vec![1, 4, 4, 1], "{strategy}");
            let per_degree: Vec<usize> =
                (0..=3).map(|n| reduced.cells_of_degree(n).len()).collect();
            assert_eq!(per_degree, vec![1, 4, 4, 1], "{strategy}");
        }
    }

    #[test]
    fn greedy_with_no_invertible_edges() {
        let i = parse_ideal("ring x y; ideal x^2, y^2;").unwrap();
        let t = BasedComplex::taylor_full(i, Field::Rational, true).unwrap();
        let m = greedy_maximal_matching(&t, Strategy::Lex);
        assert!(m.is_empty());
        assert!(is_maximal(&t, &m));
    }

    #[test]
    fn matching_json_round_trip() {
        let m = Matching::new(vec![
            Arrow {
                source: s(&[0, 1, 2]),
                target: s(&[0, 2]),
                stage: Some(2),
                substage: Some(1),
            },
            Arrow::flat(s(&[1, 3]), s(&[1])),
        ]);
        let text = m.to_json();
        let back = Matching::from_json(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn staged_construction_on_the_worked_example() {
        let outcome = staged_matching(&fourgen(), Field::Rational).unwrap();
        assert!(outcome.stall.is_none());
        let arrows = outcome.matching.arrows();
        assert_eq!(arrows.len(), 3);
        assert_eq!(
            (arrows[0].source, arrows[0].target, arrows[0].stage),
            (s(&[0, 2, 3]), s(&[0, 2]), Some(1))
        );
        assert_eq!(
            (arrows[1].source, arrows[1].target, arrows[1].stage),
            (s(&[0, 1, 2, 3]), s(&[0, 1, 2]), Some(1))
        );
        assert_eq!(
            (arrows[2].source, arrows[2].target, arrows[2].stage),
            (s(&[0, 1, 3]), s(&[1, 3]), Some(2))
        );
        assert!(outcome.complex.is_minimal().0);
        assert_eq!(outcome.complex.tor_ranks(), vec![1, 4, 4, 1]);

        let t = fourgen_taylor();
        let verdict = is_standard_matching(&t, &outcome.matching);
        assert!(verdict.standard, "{:?}", verdict.violation);
    }

    #[test]
    fn staged_construction_on_one_generator() {
        let i = parse_ideal("ring x; ideal x^2;").unwrap();
        let outcome = staged_matching(&i, Field::Rational).unwrap();
        assert!(outcome.matching.is_empty());
        assert!(outcome.stall.is_none());
        assert_eq!(outcome.complex.cells().len(), 2);
    }

    fn chain5() -> MonomialIdeal {
        parse_ideal("ring x1 x2 x3 x4; ideal x1^2, x1*x2, x2*x3, x3*x4, x4^2;").unwrap()
    }

    /// Solid arrows of the hand-worked five-generator example, stage 2.
    fn chain5_matching() -> Matching {
        let pairs = [
            (s(&[1, 2, 3, 4]), s(&[1, 3, 4])),
            (s(&[2, 3, 4]), s(&[2, 4])),
            (s(&[0, 1, 2, 3, 4]), s(&[0, 1, 2, 4])),
            (s(&[0, 2, 3, 4]), s(&[0, 2, 4])),
            (s(&[1, 2, 3]), s(&[1, 3])),
            (s(&[0, 1, 2, 3]), s(&[0, 1, 3])),
            (s(&[0, 1, 2]), s(&[0, 2])),
        ];
        Matching::new(
            pairs
                .iter()
                .map(|&(source, target)| Arrow {
                    source,
                    target,
                    stage: Some(2),
                    substage: None,
                })
                .collect(),
        )
    }

    #[test]
    fn chain5_graph_and_matching() {
        let t = BasedComplex::taylor_full(chain5(), Field::Rational, true).unwrap();
        let g = build_graph(&t);
        let inv = g.invertible_edges();
        assert_eq!(inv.len(), 12);
        let expected = vec![
            (s(&[0, 1, 2]), s(&[0, 2])),
            (s(&[1, 2, 3]), s(&[1, 3])),
            (s(&[2, 3, 4]), s(&[2, 4])),
            (s(&[0, 1, 2, 3]), s(&[0, 1, 3])),
            (s(&[0, 1, 2, 3]), s(&[0, 2, 3])),
            (s(&[0, 1, 2, 4]), s(&[0, 2, 4])),
            (s(&[0, 2, 3, 4]), s(&[0, 2, 4])),
            (s(&[1, 2, 3, 4]), s(&[1, 2, 4])),
            (s(&[1, 2, 3, 4]), s(&[1, 3, 4])),
            (s(&[0, 1, 2, 3, 4]), s(&[0, 1, 2, 4])),
            (s(&[0, 1, 2, 3, 4]), s(&[0, 1, 3, 4])),
            (s(&[0, 1, 2, 3, 4]), s(&[0, 2, 3, 4])),
        ];
        assert_eq!(inv, expected);

        let m = chain5_matching();
        assert_eq!(validate_matching(&t, &m), Ok(()));
        let reduced = morse_complex(&t, &m).unwrap();
        assert!(reduced.is_minimal().0);
        assert_eq!(reduced.tor_ranks(), vec![1, 5, 7, 4, 1]);
        let per_degree: Vec<usize> = (0..=4).map(|n| reduced.cells_of_degree(n).len()).collect();
        assert_eq!(per_degree, vec![1, 5, 7, 4, 1]);
        let deg3: Vec<Subset> = reduced.cells_of_degree(3);
        assert_eq!(
            deg3,
            vec![s(&[0, 1, 4]), s(&[0, 2, 3]), s(&[0, 3, 4]), s(&[1, 2, 4])]
        );
        assert_eq!(reduced.cells_of_degree(4), vec![s(&[0, 1, 3, 4])]);
    }

    #[test]
    fn chain5_matching_is_not_standard() {
        let t = BasedComplex::taylor_full(chain5(), Field::Rational, true).unwrap();
        let verdict = is_standard_matching(&t, &chain5_matching());
        assert!(!verdict.standard);
        let (clause, msg) = verdict.violation.unwrap();
        assert_eq!(clause, 5);
        assert!(msg.contains("u1235"), "{msg}");
        assert!(msg.contains("u135"), "{msg}");
    }

    #[test]
    fn standard_check_clause_order() {
        let tj = fourgen_taylor();
        // u12 -> u1 has coefficient x3, so the multidegrees differ.
        let bad = Matching::from_pairs(&[(s(&[0, 1]), s(&[0]))]);
        let verdict = is_standard_matching(&tj, &bad);
        assert_eq!(verdict.violation.as_ref().unwrap().0, 1);
        // u134 -> u14 alone is a valid stage-1 matching whose contraction
        // is not minimal.
        let m = Matching::from_pairs(&[(s(&[0, 2, 3]), s(&[0, 3]))]);
        let verdict = is_standard_matching(&tj, &m);
        assert!(!verdict.standard);
        assert_eq!(verdict.violation.as_ref().unwrap().0, 2);
    }

    #[test]
    fn projection_lands_in_critical_span_coordinates() {
        // p of a critical cell re-expands over critical cells with the
        // matched directions corrected; its d commutes with projection.
        let t = fourgen_taylor();
        let m = reference_matching();
        let phi = splitting_homotopy(&t, &m).unwrap();
        for cell in t.cells() {
            let e = t.basis_element(*cell);
            let p = phi.project(&t, &e);
            // p is a chain map: d p = p d.
            assert_eq!(
                t.apply_diff(&p),
                phi.project(&t, &t.apply_diff(&e)),
                "dp != pd at {}",
                cell.label()
            );
        }
    }
}
