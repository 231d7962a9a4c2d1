//! Frozen golden values for the seeded generators. These pins make the hunter
//! reproducible across releases: any change to seed derivation, the sampling
//! order, or matrix encoding fails here first.

use iips_core::hunt::{derive_seed, gen_matrix, run_trial, SearchConfig, SearchMode, WeightKind};
use iips_core::matrix::Matrix;

#[test]
fn derive_seed_is_frozen() {
    assert_eq!(derive_seed(42, 0), 5592132763777985307);
    assert_eq!(derive_seed(42, 1), 9129838320742759465);
    // sanity: distinct indices decorrelate
    assert_ne!(derive_seed(42, 0), derive_seed(43, 0));
}

#[test]
fn gen_matrix_is_frozen() {
    let m = gen_matrix(derive_seed(42, 0), 2, 2, 2);
    let expect: Matrix = serde_json::from_str(
        r#"{"rows":2,"cols":2,"data":[[["2","-2"],["0","1"]],["2","2"]]}"#,
    )
    .unwrap();
    assert_eq!(m, expect);
    // and the JSON we emit is exactly the frozen text
    assert_eq!(
        serde_json::to_string(&m).unwrap(),
        r#"{"rows":2,"cols":2,"data":[[["2","-2"],["0","1"]],["2","2"]]}"#
    );
}

#[test]
fn trial_zero_is_frozen() {
    let config = SearchConfig {
        seed: 42,
        trials: 1,
        max_dim: 2,
        entry_bound: 1,
        weight_kind: WeightKind::Signature,
        mode: SearchMode::Random,
    };
    let rec = run_trial(&config, 0);
    assert_eq!(rec.derived_seed, derive_seed(42, 0));
    assert_eq!(rec.dims, (1, 2, 2));
    assert_eq!(
        serde_json::to_string(&rec.a).unwrap(),
        r#"{"rows":1,"cols":2,"data":[["1",["0","1"]]]}"#
    );
    assert_eq!(
        serde_json::to_string(&rec.b).unwrap(),
        r#"{"rows":2,"cols":2,"data":[["0","0"],["-1","-1"]]}"#
    );
    assert!(rec.theorem_violations.is_empty());
}
