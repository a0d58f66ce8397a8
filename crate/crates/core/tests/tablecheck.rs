// temporary integration check
use uqg_core::harness::{run_table, table_qs, RowStatus};
#[test]
fn all_tables_status() {
    for q in table_qs() {
        let results = run_table(q, None).unwrap();
        let mut counts = (0, 0, 0, 0);
        for r in &results {
            match &r.status {
                RowStatus::Reproduced => counts.0 += 1,
                RowStatus::Mismatch { engine_genus, engine_order } => {
                    counts.1 += 1;
                    eprintln!("q={q} g={} |G|={} {}: MISMATCH engine g={engine_genus} |G|={engine_order}", r.g_expected, r.order_expected, r.structure);
                }
                RowStatus::Unconstructed => {
                    counts.2 += 1;
                    eprintln!("q={q} g={} |G|={} {}: unconstructed", r.g_expected, r.order_expected, r.structure);
                }
                RowStatus::ErratumSuspected { .. } => counts.3 += 1,
            }
        }
        eprintln!("q={q}: {} rows, reproduced {}, mismatch {}, unconstructed {}, errata {}", results.len(), counts.0, counts.1, counts.2, counts.3);
    }
}
