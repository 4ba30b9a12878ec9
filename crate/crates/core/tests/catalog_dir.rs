//! The fixture directory override. Kept in its own binary because it sets a
//! process-wide environment variable.

use oqa_core::catalog::{expected_matrix, CATALOG_DIR_VAR};

#[test]
fn override_directory_replaces_bundled_files() {
    let dir = std::env::temp_dir().join(format!("oqa-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bundled = expected_matrix("expected_ex43_alpha").unwrap();
    let mut json: serde_json::Value = serde_json::from_str(include_str!("../data/expected_ex43_alpha.json")).unwrap();
    json["description"] = serde_json::Value::String("overridden".into());
    std::fs::write(dir.join("expected_ex43_alpha.json"), json.to_string()).unwrap();

    std::env::set_var(CATALOG_DIR_VAR, &dir);
    let overridden = expected_matrix("expected_ex43_alpha").unwrap();
    let missing = expected_matrix("expected_ex41_alpha");
    std::env::remove_var(CATALOG_DIR_VAR);
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(overridden.description, "overridden");
    assert_eq!(overridden.matrix().unwrap(), bundled.matrix().unwrap());
    assert!(missing.is_err());
}
