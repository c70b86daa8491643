//! Builds the JSON report for a run over a FIMI transaction file held in
//! memory.
//!
//! cargo run --example json_report

use std::io::Cursor;

use greedyml::ingest::parse_fimi;
use greedyml::objectives::KCover;
use greedyml::report::ReportFile;
use greedyml::{run_greedyml, ObjectiveKind, RunConfig, SubmodularOracle, TreeShape};

const TRANSACTIONS: &str = "\
10 11 12
12 13
13 14 15 16
10 16
20 21 22
22 23
11 20 23
";

fn main() -> greedyml::Result<()> {
    let (data, stats) = parse_fimi(Cursor::new(TRANSACTIONS))?;
    eprintln!("{} transactions over {} items", stats.records, data.family.universe());
    let f = KCover::new(data.family);
    let cfg = RunConfig::new(ObjectiveKind::KCover, 2, 4, TreeShape::Branching(2))?;
    let rep = run_greedyml(&cfg, &f)?;
    print!("{}", ReportFile::new(&rep, f.ground(), 0.0).to_json()?);
    Ok(())
}
