use ospq::contraction::{
    contract, contracted_ybe_check, r2_hopf_check, r2_relations_check, rll_check, tilde_t_check, Source,
};
use ospq::fixtures::{fixture_check, FIXTURES};
use ospq::linalg::SignConvention;
use ospq::r1::{
    antipode_transformer_check, cocycle_check, disentangle_check, map_ode_check, r1_hopf_check, r1_relations_check,
    r1_rmatrix_check, r1_ybe_check, series_twist, series_twist_check, twist_property_check, MapFamily,
};
use ospq::reps::identity_check;
use ospq::rmatrix::{universal_rq, ybe_check};
use ospq::{HalfInt, Result, VerificationReport};

fn hi(s: &str) -> HalfInt {
    s.parse().unwrap()
}

fn js(s: &[&str]) -> Vec<HalfInt> {
    s.iter().map(|x| hi(x)).collect()
}

/// Folds reports, prints one line, and fails the test unless everything passed.
fn criterion(n: u32, what: &str, reports: Vec<Result<VerificationReport>>) {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for r in reports {
        match r {
            Ok(r) => {
                let tag = format!("{} {:?}", r.suite, r.params.values().collect::<Vec<_>>());
                for f in &r.failures {
                    failures.push(format!("{tag}: {} at {:?},{:?}: {}", f.label, f.row, f.col, f.residual));
                }
                notes.extend(r.notes.iter().map(|x| format!("{tag}: {x}")));
            }
            Err(e) => failures.push(format!("error: {e}")),
        }
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n:>2}: {verdict}  {what}");
    for x in &notes {
        println!("    note: {x}");
    }
    for x in &failures {
        println!("    fail: {x}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {}", failures.join("; "));
}

#[test]
fn criterion_01_golden_9x9() {
    criterion(1, "contract(1/2,1/2) equals the 9x9 golden matrix", vec![fixture_check(&FIXTURES[0], FIXTURES[0].json)]);
}

#[test]
fn criterion_02_golden_15x15() {
    criterion(2, "contract(1/2,1) equals the 15x15 golden matrix", vec![fixture_check(&FIXTURES[1], FIXTURES[1].json)]);
}

#[test]
fn criterion_03_singularities_cancel() {
    let pairs = [("1/2", "1/2"), ("1/2", "1"), ("1/2", "3/2"), ("1", "1")];
    let reports = pairs
        .iter()
        .map(|(a, b)| {
            let mut r = VerificationReport::new("cancellation").param("j", format!("{a} {b}"));
            if let Some(c) = r.check_result("no pole survives at q = 1", contract(hi(a), hi(b), Source::Universal)) {
                r.note(format!("{} entries cancelled poles", c.cancellations.len()));
            }
            Ok(r)
        })
        .collect();
    criterion(3, "every contraction entry is finite at q = 1", reports);
}

#[test]
fn criterion_04_graded_ybe() {
    let t = [hi("1/2"); 3];
    criterion(
        4,
        "graded YBE for the q-deformed, contracted and r1 R-matrices on (1/2,1/2,1/2)",
        vec![
            ybe_check("universal-q", |a, b| universal_rq(a, b, SignConvention::Column), t),
            contracted_ybe_check(t),
            r1_ybe_check(t, MapFamily::Minimal),
            r1_ybe_check(t, MapFamily::Hdiag),
        ],
    );
}

#[test]
fn criterion_05_rll() {
    criterion(5, "RLL relation for j in {1/2, 1, 3/2}", js(&["1/2", "1", "3/2"]).into_iter().map(rll_check).collect());
}

#[test]
fn criterion_06_relations() {
    let mut reports: Vec<Result<VerificationReport>> = js(&["1/2", "1", "3/2"]).into_iter().map(r2_relations_check).collect();
    for f in MapFamily::ALL {
        for j in js(&["1/2", "1", "3/2"]) {
            reports.push(r1_relations_check(j, f));
        }
    }
    criterion(6, "every listed relation of both deformed algebras under their maps, j <= 3/2 (Y = -F^2)", reports);
}

fn triples() -> Vec<[HalfInt; 3]> {
    let v = js(&["1/2", "1"]);
    let mut out = Vec::new();
    for a in &v {
        for b in &v {
            for c in &v {
                out.push([*a, *b, *c]);
            }
        }
    }
    out
}

#[test]
fn criterion_07_hopf_axioms() {
    let mut reports = Vec::new();
    for t in triples() {
        reports.push(r2_hopf_check(t));
        for f in MapFamily::ALL {
            reports.push(r1_hopf_check(t, f));
        }
    }
    criterion(7, "homomorphy, coassociativity, counit and antipode on triples from {1/2, 1}", reports);
}

#[test]
fn criterion_08_triangularity() {
    let mut reports = Vec::new();
    for (a, b) in [("1/2", "1/2"), ("1/2", "1"), ("1", "1")] {
        for f in MapFamily::ALL {
            reports.push(r1_rmatrix_check(hi(a), hi(b), f));
        }
    }
    criterion(8, "R21 R = 1 and R intertwines Δ with Δop", reports);
}

#[test]
fn criterion_09_minimal_twist() {
    let h = hi("1/2");
    criterion(
        9,
        "G-conjugated coproducts are primitive, G is a cocycle, g = μ(id⊗S)G in closed form",
        vec![
            twist_property_check(h, h),
            twist_property_check(h, hi("1")),
            cocycle_check([h; 3], MapFamily::Minimal),
            antipode_transformer_check(h, MapFamily::Minimal),
            antipode_transformer_check(hi("1"), MapFamily::Minimal),
        ],
    );
}

#[test]
fn criterion_10_disentanglement() {
    criterion(10, "disentanglement for j in {1/2, 1, 3/2}", js(&["1/2", "1", "3/2"]).into_iter().map(disentangle_check).collect());
}

#[test]
fn criterion_11_series_twist() {
    let h = hi("1/2");
    criterion(
        11,
        "order-1 and order-2 twist coefficients solved on (1/2,1/2) match the displayed ones; g series",
        vec![
            series_twist(2).map(|s| s.report),
            series_twist_check(h, h),
            series_twist_check(h, hi("1")),
            antipode_transformer_check(h, MapFamily::Hdiag),
            antipode_transformer_check(hi("1"), MapFamily::Hdiag),
        ],
    );
}

#[test]
fn criterion_12_ode_oracle() {
    criterion(
        12,
        "direct and inverse mapping-function systems vanish through order 12",
        MapFamily::ALL.iter().map(|&f| map_ode_check(f, 12)).collect(),
    );
}

#[test]
fn criterion_13_operator_identities() {
    let mut reports = Vec::new();
    for j in js(&["1/2", "1", "3/2"]) {
        for n in 1..=3 {
            reports.push(identity_check(j, n));
        }
        reports.push(tilde_t_check(j));
    }
    criterion(13, "rearrangement identities, T-operator rules and the closed form of the limit", reports);
}
