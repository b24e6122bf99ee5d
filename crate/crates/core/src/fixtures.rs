//! Golden contracted R-matrices shipped with the crate.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::contraction::{contract, Source};
use crate::error::Result;
use crate::linalg::GradedMatrix;
use crate::report::VerificationReport;
use crate::scalar::HalfInt;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub json: &'static str,
}

pub const FIXTURES: [Fixture; 2] = [
    Fixture {
        name: "rh_half_half",
        j1: HalfInt::HALF,
        j2: HalfInt::HALF,
        json: include_str!("../fixtures/rh_half_half.json"),
    },
    Fixture {
        name: "rh_half_one",
        j1: HalfInt::HALF,
        j2: HalfInt::ONE,
        json: include_str!("../fixtures/rh_half_one.json"),
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Recompute one golden matrix and compare with `json`; also compares both after `h = 1/3`.
pub fn fixture_check(f: &Fixture, json: &str) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("fixture")
        .param("name", f.name)
        .param("j", format!("{} {}", f.j1, f.j2));
    let Some(golden) = r.check_result("fixture parses", GradedMatrix::from_json(json)) else {
        return Ok(r.finish());
    };
    let ours = contract(f.j1, f.j2, Source::Universal)?.r_h;
    r.check_eq(&format!("contract({}, {}) = {}", f.j1, f.j2, f.name), &ours, &golden);
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let a = r.check_result("fixture at h=1/3", golden.substitute_h(&third));
    let b = r.check_result("contraction at h=1/3", ours.substitute_h(&third));
    if let (Some(a), Some(b)) = (a, b) {
        r.check_eq("substitution commutes with contraction at h=1/3", &b, &a);
    }
    Ok(r.finish())
}

/// Every shipped fixture.
pub fn fixtures_check() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("fixtures");
    for f in &FIXTURES {
        r.absorb(f.name, fixture_check(f, f.json)?);
    }
    Ok(r.finish())
}
