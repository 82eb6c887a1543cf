//! Golden-file tests: the canonical text form of a root system and the JSON
//! shapes of the exported objects are byte-stable.

use rootcomb::affine::AffineWeylElement;
use rootcomb::halfspace::{simplex, SimplexKind};
use rootcomb::posets::{enumerate_antichains, AntichainFilter};
use rootcomb::rootsys::{build_root_system, RootSystem, SystemId};

fn sys(label: &str) -> RootSystem {
    let id = SystemId::parse(label).unwrap();
    build_root_system(id.letter, id.rank).unwrap()
}

#[test]
fn canonical_text_matches_golden_files() {
    for label in ["C2", "G2", "B3", "F4"] {
        let got = sys(label).canonical_text();
        let path = format!(
            "{}/tests/golden/{}.txt",
            env!("CARGO_MANIFEST_DIR"),
            label.to_lowercase()
        );
        let expect = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing golden file {path}: {e}"));
        assert_eq!(got, expect, "canonical text changed for {label}");
    }
}

#[test]
fn antichain_json_export() {
    let rs = sys("C2");
    let shorts = enumerate_antichains(&rs, AntichainFilter::Short).unwrap();
    let json: Vec<serde_json::Value> = shorts.iter().map(|a| a.to_json(&rs)).collect();
    assert_eq!(
        serde_json::to_string(&json).unwrap(),
        r#"[[],[[1,0]],[[1,1]]]"#
    );
}

#[test]
fn element_json_export() {
    let rs = sys("C2");
    let s0 = AffineWeylElement::simple(&rs, 0);
    let json = s0.to_json(&rs).unwrap();
    // The finite part reflects through the highest root: alpha_1 maps to
    // alpha_1 - theta and alpha_2 (orthogonal to theta) is fixed.
    assert_eq!(
        serde_json::to_string(&json).unwrap(),
        r#"{"r":[-1,-1],"v_matrix":[[-1,0],[-1,1]],"word":[0]}"#
    );
}

#[test]
fn generating_function_json_export() {
    let rs = sys("G2");
    let f = rootcomb::posets::bivariate_generating_function(&rs).unwrap();
    assert_eq!(
        serde_json::to_string(&f.to_json()).unwrap(),
        r#"[{"count":1,"long":0,"short":0},{"count":3,"long":1,"short":0},{"count":3,"long":0,"short":1},{"count":1,"long":1,"short":1}]"#
    );
}

#[test]
fn simplex_json_export() {
    let rs = sys("C2");
    let s = simplex(&rs, SimplexKind::ShortMinimal).unwrap();
    let json = s.to_json(&rs);
    let text = serde_json::to_string(&json).unwrap();
    assert!(text.contains(r#""name":"s-minimal""#), "{text}");
    assert!(text.contains(r#""rel":">=""#), "{text}");
}
