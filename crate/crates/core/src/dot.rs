//! Graphviz rendering of a subgroup lattice with CD members highlighted.

use std::fmt::Write as _;

use crate::cd::CdReport;
use crate::lattice::SubgroupLattice;

pub fn hasse_dot(lattice: &SubgroupLattice, report: &CdReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", report.label.replace('"', "'"));
    out.push_str("  rankdir=BT;\n  node [shape=circle];\n");
    for (i, h) in lattice.subgroups().iter().enumerate() {
        let shape = if report.in_cd[i] {
            " shape=doublecircle"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  H{i} [label=\"H{i} |H|={} m={}\"{shape}];",
            h.order(),
            report.measures[i]
        );
    }
    for &(a, b) in lattice.hasse() {
        let _ = writeln!(out, "  H{a} -> H{b};");
    }
    out.push_str("}\n");
    out
}
