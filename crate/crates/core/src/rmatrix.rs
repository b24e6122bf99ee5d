//! The universal R-matrix of the q-deformed algebra on `V_{j1} ⊗ V_{j2}`, its operator-valued
//! `1/2 ⊗ j` form, and the graded Yang-Baxter checker shared by every R-matrix family.

use crate::error::Result;
use crate::linalg::{embed_pair, graded_kron_with, rep_parity, GradedMatrix, Parity, SignConvention};
use crate::report::VerificationReport;
use crate::reps::{basis, diag_p, plus_factorial, q_cartan_power, q_rep, weights};
use crate::scalar::{HalfInt, Scalar};

/// `q^{h⊗h} sum_n q^{n(n+1)/4} (1-q^-2)^n / [n]_+! (q^{h/2} e)^n ⊗ (q^{-h/2} f)^n`.
pub fn universal_rq(j1: HalfInt, j2: HalfInt, conv: SignConvention) -> Result<GradedMatrix> {
    let (t1, t2) = (q_rep(j1)?, q_rep(j2)?);
    let a = &q_cartan_power(j1, HalfInt::HALF) * t1.get("e")?;
    let b = &q_cartan_power(j2, -HalfInt::HALF) * t2.get("f")?;
    let parity: Vec<Parity> = basis(j1)
        .iter()
        .flat_map(|x| basis(j2).into_iter().map(move |y| x.add(y)))
        .collect();
    let mut diag = Vec::with_capacity(parity.len());
    for m1 in weights(j1) {
        for m2 in weights(j2) {
            // q^{4 m1 m2} = p^{8 m1 m2} = p^{2 (2m1)(2m2)}
            diag.push(Scalar::p_pow(2 * m1.twice() * m2.twice()));
        }
    }
    let cartan = GradedMatrix::diagonal(parity.clone(), diag);
    let top = j1.rep_dim().min(j2.rep_dim()) - 1;
    let mut sum = GradedMatrix::zeros(parity);
    let mut an = GradedMatrix::identity(basis(j1));
    let mut bn = GradedMatrix::identity(basis(j2));
    let one_minus = Scalar::one() - Scalar::p_pow(-4);
    for n in 0..=top {
        let nn = n as i64;
        let c = Scalar::p_pow(nn * (nn + 1) / 2) * one_minus.pow(nn)? / plus_factorial(n)?;
        let term = graded_kron_with(&an, &bn, Parity::from_bit((n % 2) as u8), conv);
        sum = &sum + &term.scale(&c);
        an = &an * &a;
        bn = &bn * &b;
    }
    Ok(&cartan * &sum)
}

/// The `3 × 3` operator-valued matrix on `V_{1/2} ⊗ V_j`, blocks placed without signs.
pub fn rq_half_j(j: HalfInt) -> Result<GradedMatrix> {
    let t = q_rep(j)?;
    let f = t.get("f")?;
    let omega = Scalar::p_pow(2) - Scalar::p_pow(-2);
    let zero = GradedMatrix::zeros(basis(j));
    let one = GradedMatrix::identity(basis(j));
    let qh = q_cartan_power(j, HalfInt::ONE);
    let qmh = q_cartan_power(j, -HalfInt::ONE);
    let qh2 = q_cartan_power(j, HalfInt::HALF);
    let qmh1 = diag_p(j, |m| -(m.twice() + 1));
    let b01 = (&qh2 * f).scale(&-omega.clone());
    let b02 = (f * f).scale(&-(omega.clone() * (Scalar::one() + Scalar::p_pow(-2))));
    let b12 = (&qmh1 * f).scale(&omega);
    GradedMatrix::from_blocks(
        &rep_parity(3),
        &[
            vec![qh, b01, b02],
            vec![zero.clone(), one, b12],
            vec![zero.clone(), zero, qmh],
        ],
    )
}

/// Invertibility and the `p -> 1` limit of `universal_rq(j1, j2)`.
pub fn rq_properties_check(j1: HalfInt, j2: HalfInt) -> Result<VerificationReport> {
    let r = universal_rq(j1, j2, SignConvention::Column)?;
    let mut rep = VerificationReport::new("rq-properties").param("j1", j1).param("j2", j2);
    if let Some(inv) = rep.check_result("R invertible", r.inverse()) {
        rep.check("R R^-1 = 1", (&r * &inv).is_identity(), "product is not the identity");
    }
    if let Some(lim) = rep.check_result("R at p=1", r.limit_at_p1()) {
        rep.check("R at p=1 is the identity", lim.is_identity(), "limit is not the identity");
    }
    Ok(rep.finish())
}

/// Graded Yang-Baxter equation `R12 R13 R23 = R23 R13 R12` on `V1 ⊗ V2 ⊗ V3`, where
/// `r(ja, jb)` supplies the R-matrix of each pair.
pub fn ybe_check(
    name: &str,
    r: impl Fn(HalfInt, HalfInt) -> Result<GradedMatrix> + Sync,
    js: [HalfInt; 3],
) -> Result<VerificationReport> {
    let legs = [basis(js[0]), basis(js[1]), basis(js[2])];
    let conv = SignConvention::Column;
    let ((r12, r13), r23) = rayon::join(
        || rayon::join(|| r(js[0], js[1]), || r(js[0], js[2])),
        || r(js[1], js[2]),
    );
    let r12 = embed_pair(&r12?, &legs, 0, 1, conv)?;
    let r13 = embed_pair(&r13?, &legs, 0, 2, conv)?;
    let r23 = embed_pair(&r23?, &legs, 1, 2, conv)?;
    let (lhs, rhs) = rayon::join(|| &(&r12 * &r13) * &r23, || &(&r23 * &r13) * &r12);
    let mut rep = VerificationReport::new("ybe")
        .param("family", name)
        .param("j", format!("{} {} {}", js[0], js[1], js[2]));
    rep.check_eq("R12 R13 R23 = R23 R13 R12", &lhs, &rhs);
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hi(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn fundamental_corner_entry() {
        let r = universal_rq(hi("1/2"), hi("1/2"), SignConvention::Column).unwrap();
        assert_eq!(r.get(0, 0), &Scalar::p_pow(2));
    }

    #[test]
    fn half_j_matches_universal() {
        for j in ["1/2", "1"] {
            let a = rq_half_j(hi(j)).unwrap();
            let b = universal_rq(hi("1/2"), hi(j), SignConvention::Column).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ybe_identity_and_perturbed() {
        let h = hi("1/2");
        let id = |a: HalfInt, b: HalfInt| {
            Ok(GradedMatrix::identity(
                basis(a)
                    .iter()
                    .flat_map(|x| basis(b).into_iter().map(move |y| x.add(y)))
                    .collect(),
            ))
        };
        assert!(ybe_check("identity", id, [h, h, h]).unwrap().passed());
        let bad = |a, b| {
            let mut m = universal_rq(a, b, SignConvention::Column)?;
            let x = m.get(0, 1) + &Scalar::one();
            m.set(0, 1, x);
            Ok(m)
        };
        let rep = ybe_check("perturbed", bad, [h, h, h]).unwrap();
        assert!(!rep.passed());
        assert!(rep.failures[0].row.is_some());
    }
}
