//! DOT rendering of the cell graph with a matching highlighted.

use std::collections::BTreeSet;

use golodkit::complex::BasedComplex;
use golodkit::morse::{build_graph, Matching};
use golodkit::Subset;

/// Renders the cell graph as a Graphviz digraph. Cells of equal degree
/// share a rank. Matched arrows are drawn reversed in solid red with double
/// width, unmatched invertible edges in dashed red, and everything else in
/// black. Node order is the ascending cell order, so output is
/// deterministic.
pub fn render(complex: &BasedComplex, matching: &Matching) -> String {
    let mut out = String::new();
    out.push_str("digraph cell_graph {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box, fontname=\"Helvetica\"];\n");

    for n in 0..=complex.max_degree() {
        let cells = complex.cells_of_degree(n);
        if cells.is_empty() {
            continue;
        }
        out.push_str("  { rank=same;");
        for c in cells {
            out.push_str(&format!(" \"{}\";", c.label()));
        }
        out.push_str(" }\n");
    }

    let matched: BTreeSet<(Subset, Subset)> = matching
        .arrows()
        .iter()
        .map(|a| (a.source, a.target))
        .collect();
    for (source, target, invertible) in build_graph(complex).edges() {
        if matched.contains(&(source, target)) {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [color=red, penwidth=2];\n",
                target.label(),
                source.label()
            ));
        } else if invertible {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [color=red, style=dashed];\n",
                source.label(),
                target.label()
            ));
        } else {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                source.label(),
                target.label()
            ));
        }
    }
    out.push_str("}\n");
    out
}
