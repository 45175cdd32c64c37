use aluffi::reproduce::{catalogue, reproduce, RunReport};

#[test]
fn graph_items_agree_and_are_deterministic() {
    let first = reproduce(Some(3), None);
    assert!(first.all_agree(), "{first:?}");
    assert!(first.items.iter().all(|i| i.section == 3));
    let second = reproduce(Some(3), None);
    assert_eq!(first.without_timings(), second.without_timings());
}

#[test]
fn report_json_round_trip() {
    let report = reproduce(Some(3), None);
    let text = serde_json::to_string(&report).unwrap();
    let back: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}

#[test]
fn catalogue_covers_every_group() {
    let items = catalogue();
    for s in [2, 3, 4] {
        assert!(items.iter().any(|e| e.section == s));
    }
    let mut names: Vec<_> = items.iter().map(|e| e.name).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), items.len());
}
