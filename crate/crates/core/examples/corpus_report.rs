// SPDX-License-Identifier: Apache-2.0

//! Analyzes the bundled corpus and prints the comparison table.

use revfault::corpus::{bundled_corpus_dir, corpus_files};
use revfault::faultlab::reference::side_by_side;
use revfault::faultlab::{build_report, AnalysisOptions};

fn main() {
    let files = corpus_files(&bundled_corpus_dir()).expect("bundled corpus");
    let report = build_report(&files, &AnalysisOptions::default());
    print!("{}", side_by_side(&report));
    for r in &report.rows {
        println!("{} {}ms", r.circuit, r.wall_ms);
        for n in &r.natural {
            println!("  nat {} det={} mis={} {}", n.implication.text, n.impact.error_detected, n.impact.error_missed, n.impact.impact_text);
        }
        for a in &r.artificial {
            println!("  art [{}] {} det={} mis={} {}", a.placement.gate, a.implication.text, a.impact.error_detected, a.impact.error_missed, a.impact.impact_text);
        }
    }
}
