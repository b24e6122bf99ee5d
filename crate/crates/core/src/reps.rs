//! Classical and q-deformed `(4j+1)`-dimensional irreps, the q-bracket family, and the
//! operator identities used by the contraction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rep_parity, GeneratorTable, GradedMatrix, Parity};
use crate::report::VerificationReport;
use crate::scalar::{HalfInt, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bracket {
    /// `[x]_q`
    Q,
    /// `[[x]]_q`
    Double,
    /// `[n]_+`
    Plus,
    /// `{x}_q`
    Curly,
}

/// `q^x = p^{2x}`.
pub fn q_pow(x: HalfInt) -> Scalar {
    Scalar::p_power(x)
}

/// `[x]_{q^b} = (q^{bx} - q^{-bx}) / (q^b - q^{-b})`.
pub fn q_number(x: HalfInt, b: i64) -> Scalar {
    let num = q_pow(x * b) - q_pow(-(x * b));
    let den = q_pow(HalfInt::from_int(b)) - q_pow(HalfInt::from_int(-b));
    num / den
}

/// `{x}_{q^b} = (1 - q^{bx}) / (1 - q^b)`.
pub fn curly(x: HalfInt, b: i64) -> Scalar {
    (Scalar::one() - q_pow(x * b)) / (Scalar::one() - q_pow(HalfInt::from_int(b)))
}

fn double(x: HalfInt) -> Scalar {
    let sign = if x.twice() % 2 == 0 { 1 } else { -1 };
    let num = q_pow(x) - q_pow(-x) * Scalar::from_int(sign);
    num / (Scalar::p() + Scalar::p().inv().expect("p is nonzero"))
}

pub fn bracket(kind: Bracket, x: HalfInt) -> Result<Scalar> {
    match kind {
        Bracket::Q => Ok(q_number(x, 1)),
        Bracket::Double => Ok(double(x)),
        Bracket::Curly => Ok(curly(x, 1)),
        Bracket::Plus => {
            let n = x.as_integer().ok_or(Error::BadBracketArg {
                kind: "plus",
                arg: x.to_string(),
            })?;
            let d = double(HalfInt::from_twice(n));
            Ok(if (n - 1).rem_euclid(2) == 0 { d } else { -d })
        }
    }
}

/// `[n]_+!`, refusing to return a vanishing factorial.
pub fn plus_factorial(n: usize) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for k in 1..=n {
        acc = acc * bracket(Bracket::Plus, HalfInt::from_int(k as i64))?;
    }
    if acc.is_zero() {
        return Err(Error::Precondition(format!("[{n}]_+! vanishes")));
    }
    Ok(acc)
}

/// `[n]_{q^b}!`
pub fn q_factorial(n: usize, b: i64) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc * q_number(HalfInt::from_int(k as i64), b))
}

/// Weights `m = j, j - 1/2, ..., -j`.
pub fn weights(j: HalfInt) -> Vec<HalfInt> {
    (0..j.rep_dim()).map(|i| j - HalfInt::from_twice(i as i64)).collect()
}

pub fn basis(j: HalfInt) -> Vec<Parity> {
    rep_parity(j.rep_dim())
}

fn check_spin(j: HalfInt) -> Result<()> {
    if j.is_negative() {
        return Err(Error::Precondition(format!("spin {j} is negative")));
    }
    Ok(())
}

/// Diagonal matrix `p^{f(m)}`.
pub fn diag_p(j: HalfInt, f: impl Fn(HalfInt) -> i64) -> GradedMatrix {
    GradedMatrix::diagonal(basis(j), weights(j).into_iter().map(|m| Scalar::p_pow(f(m))).collect())
}

/// `q^{alpha h}` in the spin-`j` irrep: entries `p^{4 alpha m}`.
pub fn q_cartan_power(j: HalfInt, alpha: HalfInt) -> GradedMatrix {
    diag_p(j, |m| alpha.twice() * m.twice())
}

/// Raising operator shared by both irreps: `e|m> = |m + 1/2>`.
fn raising(j: HalfInt) -> GradedMatrix {
    let mut e = GradedMatrix::zeros(basis(j));
    for i in 1..j.rep_dim() {
        e.set(i - 1, i, Scalar::one());
    }
    e
}

fn cartan(j: HalfInt) -> GradedMatrix {
    GradedMatrix::diagonal(
        basis(j),
        weights(j).into_iter().map(|m| Scalar::from_int(m.twice())).collect(),
    )
}

fn lowering(j: HalfInt, coeff: impl Fn(HalfInt, bool) -> Scalar) -> GradedMatrix {
    let mut f = GradedMatrix::zeros(basis(j));
    let ws = weights(j);
    for i in 0..ws.len() - 1 {
        // j - m integer on even positions
        f.set(i + 1, i, coeff(ws[i], i % 2 == 0));
    }
    f
}

/// Classical irrep with letters `h, e, f, b+, b-` (`b+ = e^2`, `b- = -f^2`).
pub fn classical_rep(j: HalfInt) -> Result<GeneratorTable> {
    check_spin(j)?;
    let half = HalfInt::HALF;
    let e = raising(j);
    let f = lowering(j, |m, integral| {
        if integral {
            Scalar::from_int(-(j + m).twice()) / Scalar::from_int(2)
        } else {
            Scalar::from_int((j - m + half).twice()) / Scalar::from_int(2)
        }
    });
    let mut t = GeneratorTable::new(basis(j));
    t.insert("b+", &e * &e)?;
    t.insert("b-", -&(&f * &f))?;
    t.insert("h", cartan(j))?;
    t.insert("e", e)?;
    t.insert("f", f)?;
    Ok(t)
}

/// q-deformed irrep with letters `h, e, f, t = q^h, tinv`.
pub fn q_rep(j: HalfInt) -> Result<GeneratorTable> {
    check_spin(j)?;
    let half = HalfInt::HALF;
    let f = lowering(j, |m, integral| {
        if integral {
            -(q_number(j + m, 1) * double(j - m + half))
        } else {
            double(j + m) * q_number(j - m + half, 1)
        }
    });
    let mut t = GeneratorTable::new(basis(j));
    t.insert("h", cartan(j))?;
    t.insert("e", raising(j))?;
    t.insert("f", f)?;
    t.insert("t", q_cartan_power(j, HalfInt::ONE))?;
    t.insert("tinv", q_cartan_power(j, -HalfInt::ONE))?;
    Ok(t)
}

/// `eta = h / (q^2 - 1)`.
pub fn eta() -> Scalar {
    Scalar::h() / (Scalar::p_pow(4) - Scalar::one())
}

/// `E_{q^2}(x) = sum_n x^n / [n]_{q^2}!` for nilpotent `x`.
pub fn e_q2(x: &GradedMatrix) -> Result<GradedMatrix> {
    crate::linalg::apply_coeffs(x, |n| q_factorial(n, 2).inv().expect("q-factorials are nonzero"))
}

/// `M = E_{q^2}(eta e^2)` in the q-irrep.
pub fn m_matrix(j: HalfInt) -> Result<GradedMatrix> {
    let e = raising(j);
    e_q2(&(&e * &e).scale(&eta()))
}

/// `T_(alpha) = M^{-1} E_{q^2}(q^{2 alpha} eta e^2)`.
pub fn t_operator(j: HalfInt, alpha: i64) -> Result<GradedMatrix> {
    let e = raising(j);
    let m = m_matrix(j)?;
    let shifted = e_q2(&(&e * &e).scale(&(eta() * Scalar::p_pow(4 * alpha))))?;
    Ok(&m.inverse()? * &shifted)
}

/// Relations of the classical algebra in `classical_rep(j)`.
pub fn classical_relations_check(j: HalfInt) -> Result<VerificationReport> {
    let t = classical_rep(j)?;
    let (h, e, f, bp, bm) = (t.get("h")?, t.get("e")?, t.get("f")?, t.get("b+")?, t.get("b-")?);
    let mut r = VerificationReport::new("classical-relations").param("j", j);
    r.check_eq("[h,e] = e", &h.commutator(e), e);
    r.check_eq("[h,f] = -f", &h.commutator(f), &-f);
    r.check_eq("{e,f} = -h", &e.anticommutator(f), &-h);
    r.check_eq("[h,b+] = 2b+", &h.commutator(bp), &bp.scale(&Scalar::from_int(2)));
    r.check_eq("[h,b-] = -2b-", &h.commutator(bm), &bm.scale(&Scalar::from_int(-2)));
    r.check_eq("[b+,b-] = h", &bp.commutator(bm), h);
    r.check_eq("[b+,f] = e", &bp.commutator(f), e);
    r.check_eq("[b-,e] = f", &bm.commutator(e), f);
    r.check_eq("b+ = e^2", bp, &(e * e));
    r.check_eq("b- = -f^2", bm, &-&(f * f));
    Ok(r.finish())
}

/// Relations of the q-algebra in `q_rep(j)`, plus its `p -> 1` limit.
pub fn q_relations_check(j: HalfInt) -> Result<VerificationReport> {
    let t = q_rep(j)?;
    let (h, e, f) = (t.get("h")?, t.get("e")?, t.get("f")?);
    let mut r = VerificationReport::new("q-relations").param("j", j);
    r.check_eq("[h,e] = e", &h.commutator(e), e);
    r.check_eq("[h,f] = -f", &h.commutator(f), &-f);
    let qh = GradedMatrix::diagonal(
        basis(j),
        weights(j).into_iter().map(|m| q_number(m * 2, 1)).collect(),
    );
    r.check_eq("{e,f} = -[h]_q", &e.anticommutator(f), &-&qh);
    r.check("t tinv = 1", t.check_inverse_pair(), "t*tinv is not the identity");
    let cl = classical_rep(j)?;
    for name in ["h", "e", "f"] {
        let label = format!("{name} at p=1 is classical");
        if let Some(lim) = r.check_result(&label, t.get(name)?.limit_at_p1()) {
            r.check_eq(&label, &lim, cl.get(name)?);
        }
    }
    Ok(r.finish())
}

/// The two rearrangement identities for `f e^{2n}`, `f^2 e^{2n}` and the `T_(alpha)` rules.
pub fn identity_check(j: HalfInt, n: u32) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let t = q_rep(j)?;
    let (e, f, tt, ti) = (t.get("e")?, t.get("f")?, t.get("t")?, t.get("tinv")?);
    let mut r = VerificationReport::new("identities").param("j", j).param("n", n);
    let q = Scalar::p_pow(2);
    let one = Scalar::one();
    let qp1 = &q + &one;
    let qm1 = &q - &one;
    let omega = &q - &q.inv()?;
    let ni = HalfInt::from_int(n as i64);
    let cur = |x: HalfInt, b: i64| curly(x, b);
    let e2n = e.pow(2 * n);
    let e2n1 = e.pow(2 * n - 1);
    let e2n2 = e.pow(2 * n - 2);

    let rhs1 = &(&(&e2n * f) - &(&e2n1 * tt).scale(&(&q / &qp1 * cur(ni, 2))))
        - &(&e2n1 * ti).scale(&(cur(ni, -2) / qp1.clone()));
    r.check_eq("f e^2n rearrangement", &(f * &e2n), &rhs1);

    let f2 = f * f;
    let c_t = &q * &qm1 / qp1.clone() * cur(ni, 2);
    let c_ti = -(&qm1 / &(&q * &qp1) * cur(ni, -2));
    let ratio = &qm1 / &qp1;
    let c_t2 = &q / &qp1
        * (cur(ni, 4) / omega.clone()
            - Scalar::p_pow(4) * ratio.clone() * cur(ni - HalfInt::ONE, 2) * cur(ni, 2)
                / cur(HalfInt::from_int(2), 2));
    let c_ti2 = -(qp1.inv()?
        * (cur(ni, -4) / omega.clone()
            - Scalar::p_pow(-4) * ratio.clone() * cur(ni - HalfInt::ONE, -2) * cur(ni, -2)
                / cur(HalfInt::from_int(2), -2)));
    let c_0 = -(&q / &(&qp1 * &qp1 * qp1.clone()) * (&q * &cur(ni, 2) + cur(ni, -2)));
    let mut rhs2 = &e2n * &f2;
    rhs2 = &rhs2 + &(&(&e2n1 * tt) * f).scale(&c_t);
    rhs2 = &rhs2 + &(&(&e2n1 * ti) * f).scale(&c_ti);
    rhs2 = &rhs2 + &(&(&e2n2 * tt) * tt).scale(&c_t2);
    rhs2 = &rhs2 + &(&(&e2n2 * ti) * ti).scale(&c_ti2);
    rhs2 = &rhs2 + &e2n2.scale(&c_0);
    r.check_eq("f^2 e^2n rearrangement", &(&f2 * &e2n), &rhs2);

    let m = m_matrix(j)?;
    let mi = m.inverse()?;
    let tops: Vec<(i64, GradedMatrix)> = [-2, -1, 0, 1, 2]
        .into_iter()
        .map(|a| Ok((a, t_operator(j, a)?)))
        .collect::<Result<_>>()?;
    let top = |a: i64| &tops.iter().find(|(b, _)| *b == a).unwrap().1;
    let qa = |a: i64| q_cartan_power(j, HalfInt::from_int(a));
    for a in [-2, -1, 1, 2] {
        r.check_eq(
            &format!("M^-1 q^({a}h) M = T({a}) q^({a}h)"),
            &(&(&mi * &qa(a)) * &m),
            &(top(a) * &qa(a)),
        );
    }
    for a in [-1i64, 1] {
        for b in [-1i64, 1] {
            r.check_eq(
                &format!("T({}) q^({}h) composition, alpha={a} beta={b}", a + b, a + b),
                &(top(a + b) * &qa(a + b)),
                &(&(&(top(a) * &qa(a)) * top(b)) * &qa(b)),
            );
        }
    }
    let diff = top(1) - top(-1);
    let e2 = e * e;
    r.check_eq(
        "T(1) - T(-1) = eta (q^2 - q^-2) e^2",
        &diff,
        &e2.scale(&(eta() * (Scalar::p_pow(4) - Scalar::p_pow(-4)))),
    );
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hi(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn bracket_values() {
        assert_eq!(bracket(Bracket::Q, hi("1")).unwrap(), Scalar::one());
        assert_eq!(bracket(Bracket::Q, hi("2")).unwrap(), "(p^4+1)/p^2".parse().unwrap());
        assert_eq!(bracket(Bracket::Double, hi("1/2")).unwrap(), Scalar::one());
        assert_eq!(bracket(Bracket::Plus, hi("1")).unwrap(), Scalar::one());
        assert_eq!(
            bracket(Bracket::Plus, hi("2")).unwrap(),
            -bracket(Bracket::Double, hi("1")).unwrap()
        );
        assert!(matches!(bracket(Bracket::Plus, hi("1/2")), Err(Error::BadBracketArg { .. })));
        assert_eq!(curly(hi("2"), 1), "p^2+1".parse().unwrap());
    }

    #[test]
    fn classical_fundamental() {
        let t = classical_rep(hi("1/2")).unwrap();
        let f = t.get("f").unwrap();
        assert_eq!(f.get(1, 0), &Scalar::from_int(-1));
        assert_eq!(f.get(2, 1), &Scalar::from_int(1));
        assert_eq!(t.get("h").unwrap().get(2, 2), &Scalar::from_int(-1));
        assert_eq!(classical_rep(hi("1")).unwrap().dim(), 5);
    }

    #[test]
    fn m_matrix_fundamental() {
        let m = m_matrix(hi("1/2")).unwrap();
        assert_eq!(m.get(0, 2), &eta());
        assert!(matches!(m.get(0, 2).limit_at_p1(), Err(Error::PoleAtUnity { .. })));
        assert!((&m * &m.inverse().unwrap()).is_identity());
    }

    #[test]
    fn relations_small_spins() {
        for j in ["1/2", "1", "3/2"] {
            assert!(classical_relations_check(hi(j)).unwrap().passed());
            let r = q_relations_check(hi(j)).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
    }
}
