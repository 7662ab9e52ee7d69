use nilrad::catalog::{shipped, verify_all, ClassifyOptions, Verdict};

#[test]
fn every_entry_matches_its_expectations() {
    let instances = shipped();
    let reports = verify_all(&instances, &ClassifyOptions::default(), 0);
    let mut bad = Vec::new();
    for r in &reports {
        if !r.mismatches.is_empty() {
            bad.push(format!("{}: {:?}", r.id, r.mismatches));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
    assert!(reports.iter().all(|r| r.verdict != Verdict::Conflict));
    assert!(reports.len() >= 90);
}
