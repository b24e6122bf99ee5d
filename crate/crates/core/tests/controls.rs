use ospq::contraction::{r2_negative_control, r2_hopf_check};
use ospq::fixtures::{fixture_check, fixtures_check, FIXTURES};
use ospq::hopf::{relations_check, HopfStructure};
use ospq::r1::{r1_generators, MapFamily};
use ospq::{HalfInt, Status};

fn hi(s: &str) -> HalfInt {
    s.parse().unwrap()
}

#[test]
fn shipped_fixtures_pass() {
    let r = fixtures_check().unwrap();
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
fn corrupted_fixture_fails_at_its_entry() {
    let f = &FIXTURES[1];
    let mut v: serde_json::Value = serde_json::from_str(f.json).unwrap();
    v["entries"][4][14] = "3*h".into();
    let r = fixture_check(f, &v.to_string()).unwrap();
    assert_eq!(r.status, Status::Fail);
    let hit = &r.failures[0];
    assert_eq!((hit.row, hit.col), (Some(4), Some(14)));
    assert_eq!(hit.residual, "-h");
}

#[test]
fn flipped_coproduct_sign_is_caught() {
    let r = r2_negative_control(hi("1/2"), hi("1/2")).unwrap();
    assert!(!r.passed());
}

#[test]
fn corrected_hy_is_the_only_r2_defect() {
    let r = r2_hopf_check([hi("1/2"); 3]).unwrap();
    let labels = r.failed_labels();
    assert_eq!(labels, vec!["homomorphy: Δ([H,Y])"]);
    assert!(r.checked.iter().any(|c| c == "homomorphy: Δ([H,Y] sign-corrected)"));
}

#[test]
fn wrong_y_sign_breaks_r1_relations() {
    let s = HopfStructure::r1();
    let mut t = r1_generators(hi("1"), MapFamily::Minimal).unwrap();
    let y = t.get("Y").unwrap().clone();
    t.insert("Y", -&y).unwrap();
    assert!(!relations_check(&s, &t, &[]).unwrap().passed());
}

#[test]
fn reports_serialize_identically() {
    let a = fixtures_check().unwrap().to_json();
    let b = fixtures_check().unwrap().to_json();
    assert_eq!(a, b);
}
