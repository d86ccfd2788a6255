mod common;

#[test]
fn every_fixture_matches_its_sidecar() {
    let names = common::fixture_names();
    assert_eq!(names.len(), 15, "{names:?}");
    let problems: Vec<String> = names.iter().flat_map(|n| common::check_fixture(n)).collect();
    assert!(problems.is_empty(), "{problems:#?}");
}

#[test]
fn fixtures_round_trip_through_json() {
    use partisan_symmetry::io::{election_from_json, election_to_json};
    for name in common::fixture_names() {
        let e = common::load_fixture(&name);
        assert_eq!(election_from_json(&election_to_json(&e)).unwrap(), e, "{name}");
    }
}
