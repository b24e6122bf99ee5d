//! Contraction of the q-deformed R-matrix to the Jordanian one, the limit operator `T̃`,
//! the map onto the classical algebra, and the `L` operator with its FRT checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{hopf_check, HopfStructure};
use crate::linalg::{
    embed_pair, expr, graded_kron_with, nilpotent_fun, rep_parity, GeneratorTable, GradedMatrix, NilFn, Parity,
    SignConvention,
};
use crate::report::VerificationReport;
use crate::reps::{basis, classical_rep, m_matrix, t_operator};
use crate::rmatrix::{rq_half_j, universal_rq, ybe_check};
use crate::scalar::{HalfInt, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// The universal R-matrix on `V_{j1} ⊗ V_{j2}`.
    Universal,
    /// The operator-valued `1/2 ⊗ j` matrix; needs `j1 = 1/2`.
    Formula,
}

/// An entry whose summands had poles at `p = 1` that cancelled in the sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cancellation {
    pub row: usize,
    pub col: usize,
    pub pole_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionResult {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub r_h: GradedMatrix,
    /// `(M^-1 ⊗ M^-1) R_q (M ⊗ M)` before the limit.
    pub transformed: GradedMatrix,
    pub cancellations: Vec<Cancellation>,
}

/// `lim_{p→1} (M_{j1}^-1 ⊗ M_{j2}^-1) R_q (M_{j1} ⊗ M_{j2})`.
pub fn contract(j1: HalfInt, j2: HalfInt, source: Source) -> Result<ContractionResult> {
    let conv = SignConvention::Column;
    let rq = match source {
        Source::Universal => universal_rq(j1, j2, conv)?,
        Source::Formula => {
            if j1 != HalfInt::HALF {
                return Err(Error::Precondition("the 1/2 ⊗ j formula needs j1 = 1/2".into()));
            }
            rq_half_j(j2)?
        }
    };
    let (m1, m2) = (m_matrix(j1)?, m_matrix(j2)?);
    let mm = graded_kron_with(&m1, &m2, Parity::Even, conv);
    let mmi = graded_kron_with(&m1.inverse()?, &m2.inverse()?, Parity::Even, conv);
    let left = &mmi * &rq;
    let transformed = &left * &mm;
    let n = transformed.dim();
    let mut cancellations = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let worst = (0..n)
                .filter(|&k| !left.get(r, k).is_zero() && !mm.get(k, c).is_zero())
                .map(|k| left.get(r, k).pole_order_at_p1() + mm.get(k, c).pole_order_at_p1())
                .max()
                .unwrap_or(0);
            if worst > 0 && transformed.get(r, c).pole_order_at_p1() == 0 {
                cancellations.push(Cancellation { row: r, col: c, pole_order: worst });
            }
        }
    }
    let r_h = transformed.limit_at_p1()?;
    Ok(ContractionResult {
        j1,
        j2,
        r_h,
        transformed,
        cancellations,
    })
}

/// `T̃^{±1}` and `T̃^{±1/2}` in the classical spin-`j` irrep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeT {
    pub t: GradedMatrix,
    pub tinv: GradedMatrix,
    pub thalf: GradedMatrix,
    pub tinvhalf: GradedMatrix,
}

/// Closed form `T̃^{±1} = ±h e^2 + sqrt(1 + h^2 e^4)`.
pub fn tilde_t(j: HalfInt) -> Result<TildeT> {
    let cl = classical_rep(j)?;
    let e2 = cl.get("b+")?;
    let id = cl.identity();
    let root = nilpotent_fun(&(&id + &(e2 * e2).scale(&(Scalar::h() * Scalar::h()))), &NilFn::Sqrt)?;
    let he2 = e2.scale(&Scalar::h());
    let t = &root + &he2;
    let tinv = &root - &he2;
    Ok(TildeT {
        thalf: nilpotent_fun(&t, &NilFn::Pow(1, 2))?,
        tinvhalf: nilpotent_fun(&t, &NilFn::Pow(-1, 2))?,
        t,
        tinv,
    })
}

/// `T̃` by the limit of `T_(±1)` against the closed form, plus its basic identities.
pub fn tilde_t_check(j: HalfInt) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("tilde-t").param("j", j);
    let closed = tilde_t(j)?;
    let e2 = classical_rep(j)?.get("b+")?.clone();
    for (alpha, target) in [
        (1, closed.t.clone()),
        (-1, closed.tinv.clone()),
        (2, &closed.t * &closed.t),
        (-2, &closed.tinv * &closed.tinv),
    ] {
        let label = format!("lim T({alpha}) = closed form");
        if let Some(lim) = r.check_result(&label, t_operator(j, alpha)?.limit_at_p1()) {
            r.check_eq(&label, &lim, &target);
        }
    }
    r.check_eq("T - T^-1 = 2h e^2", &(&closed.t - &closed.tinv), &e2.scale(&(Scalar::h() * Scalar::from_int(2))));
    r.check("T T^-1 = 1", (&closed.t * &closed.tinv).is_identity(), "not the identity");
    r.check_eq("(T^1/2)^2 = T", &(&closed.thalf * &closed.thalf), &closed.t);
    r.check("T^1/2 T^-1/2 = 1", (&closed.thalf * &closed.tinvhalf).is_identity(), "not the identity");
    Ok(r.finish())
}

/// Sign choice for `Y = ±F^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YSign {
    /// `Y = -F^2`, as the relation `F^2 = -Y` demands.
    Minus,
    /// `Y = F^2`, as written in the map.
    Plus,
}

/// Generators of the contracted algebra realized on the classical spin-`j` irrep.
pub fn r2_generators(j: HalfInt, ysign: YSign) -> Result<GeneratorTable> {
    let cl = classical_rep(j)?;
    let (hc, e, f) = (cl.get("h")?, cl.get("e")?, cl.get("f")?);
    let id = cl.identity();
    let tt = tilde_t(j)?;
    let e4 = cl.get("b+")?.pow(2);
    let root = nilpotent_fun(&(&id + &e4.scale(&(Scalar::h() * Scalar::h()))), &NilFn::Sqrt)?;
    let h = &root * hc;
    let q = &(&tt.t - &id) * &(&tt.t + &id).inverse()?;
    let qe = &q * e;
    let fm = &(f + &qe.scale(&(Scalar::h() / Scalar::from_int(4)))) - &(&qe * hc).scale(&(Scalar::h() / Scalar::from_int(2)));
    let f2 = &fm * &fm;
    let y = match ysign {
        YSign::Minus => -&f2,
        YSign::Plus => f2,
    };
    let x = nilpotent_fun(&tt.t, &NilFn::Ln)?.try_map(|_, _, v| v.checked_div(&Scalar::h()))?;
    let mut t = GeneratorTable::new(basis(j));
    t.insert("H", h)?;
    t.insert("E", e.clone())?;
    t.insert("F", fm)?;
    t.insert("T", tt.t)?;
    t.insert("Tinv", tt.tinv)?;
    t.insert("Thalf", tt.thalf)?;
    t.insert("Tinvhalf", tt.tinvhalf)?;
    t.insert("X", x)?;
    t.insert("Y", y)?;
    Ok(t)
}

/// Block entries of `L` and of its displayed inverse.
pub const L_BLOCKS: [[&str; 3]; 3] = [
    ["T", "h*Thalf*E", "-h*H + h/4*(T - Tinv)"],
    ["0", "1", "-h*Tinvhalf*E"],
    ["0", "0", "Tinv"],
];
pub const L_INVERSE_BLOCKS: [[&str; 3]; 3] = [
    ["Tinv", "-h*Tinvhalf*E", "h*H + h/4*(T - Tinv)"],
    ["0", "1", "h*Thalf*E"],
    ["0", "0", "T"],
];

fn assemble(blocks: &[[&str; 3]; 3], t: &GeneratorTable) -> Result<GradedMatrix> {
    let grid = blocks
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| expr(s)?.eval(&[t], SignConvention::Column))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GradedMatrix::from_blocks(&rep_parity(3), &grid)
}

pub fn l_operator(j: HalfInt) -> Result<GradedMatrix> {
    assemble(&L_BLOCKS, &r2_generators(j, YSign::Minus)?)
}

pub fn l_inverse(j: HalfInt) -> Result<GradedMatrix> {
    assemble(&L_INVERSE_BLOCKS, &r2_generators(j, YSign::Minus)?)
}

/// `L` against the contraction, `L L^-1 = 1`, and the FRT coalgebra `ε(L) = 1`,
/// `S(L) = L^-1`, `Δ(L) = L ⊗̇ L`.
pub fn l_operator_check(j: HalfInt) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("l-operator").param("j", j);
    let gens = r2_generators(j, YSign::Minus)?;
    let l = assemble(&L_BLOCKS, &gens)?;
    let li = assemble(&L_INVERSE_BLOCKS, &gens)?;
    let c = contract(HalfInt::HALF, j, Source::Universal)?;
    r.check_eq("L = contracted R(1/2, j)", &l, &c.r_h);
    r.check("L L^-1 = 1", (&l * &li).is_identity(), "product is not the identity");
    let s = HopfStructure::r2();
    for a in 0..3 {
        for b in 0..3 {
            let x = expr(L_BLOCKS[a][b])?;
            let eps = x.counit_value(&s.counit)?;
            let want = if a == b { Scalar::one() } else { Scalar::zero() };
            r.check(&format!("ε(L)[{a}][{b}]"), eps == want, format!("got {eps}"));
            let sx = x.antipode(0, &s.antipode)?.eval(&[&gens], SignConvention::Column)?;
            let inv = expr(L_INVERSE_BLOCKS[a][b])?.eval(&[&gens], SignConvention::Column)?;
            r.check_eq(&format!("S(L)[{a}][{b}] = L^-1[{a}][{b}]"), &sx, &inv);
            let dx = x.coproduct(0, &s.delta)?;
            let mut frt = crate::linalg::TensorExpression::zero(2);
            for m in 0..3 {
                frt = frt.add(&expr(L_BLOCKS[a][m])?.tensor(&expr(L_BLOCKS[m][b])?));
            }
            let tabs = [&gens, &gens];
            r.check_eq(
                &format!("Δ(L)[{a}][{b}] = (L ⊗̇ L)[{a}][{b}]"),
                &dx.eval(&tabs, SignConvention::Column)?,
                &frt.eval(&tabs, SignConvention::Column)?,
            );
        }
    }
    Ok(r.finish())
}

/// `R L1 L2 = L2 L1 R` on `V_{1/2} ⊗ V_{1/2} ⊗ V_j` with `R` the contracted fundamental R-matrix.
pub fn rll_check(j: HalfInt) -> Result<VerificationReport> {
    let conv = SignConvention::Column;
    let aux = rep_parity(3);
    let legs = [aux.clone(), aux, basis(j)];
    let rf = contract(HalfInt::HALF, HalfInt::HALF, Source::Universal)?.r_h;
    let l = l_operator(j)?;
    let r12 = embed_pair(&rf, &legs, 0, 1, conv)?;
    let l1 = embed_pair(&l, &legs, 0, 2, conv)?;
    let l2 = embed_pair(&l, &legs, 1, 2, conv)?;
    let (lhs, rhs) = rayon::join(|| &(&r12 * &l1) * &l2, || &(&l2 * &l1) * &r12);
    let mut r = VerificationReport::new("rll").param("j", j);
    r.check_eq("R L1 L2 = L2 L1 R", &lhs, &rhs);
    Ok(r.finish())
}

/// Graded YBE for the contracted R-matrix.
pub fn contracted_ybe_check(js: [HalfInt; 3]) -> Result<VerificationReport> {
    ybe_check("contracted", |a, b| Ok(contract(a, b, Source::Universal)?.r_h), js)
}

/// The five Hopf suites of the contracted algebra, with the sign-corrected `[H,Y]` run
/// alongside the printed one.
pub fn r2_hopf_check(js: [HalfInt; 3]) -> Result<VerificationReport> {
    let t: Vec<GeneratorTable> = js.iter().map(|&j| r2_generators(j, YSign::Minus)).collect::<Result<_>>()?;
    let s = HopfStructure::r2();
    let mut r = hopf_check(&s, [&t[0], &t[1], &t[2]], &[HopfStructure::r2_hy_corrected()])?;
    r.suite = "hopf-r2".into();
    r.params.insert("j".into(), format!("{} {} {}", js[0], js[1], js[2]));
    Ok(r)
}

/// Falsification run: flipping the sign of the `h E T^1/2 ⊗ E T^-1/2` term of `Δ(H)`.
pub fn r2_negative_control(j1: HalfInt, j2: HalfInt) -> Result<VerificationReport> {
    let t1 = r2_generators(j1, YSign::Minus)?;
    let t2 = r2_generators(j2, YSign::Minus)?;
    let s = HopfStructure::r2().with_delta("H", "H⊗Tinv + T⊗H - h*E*Thalf⊗E*Tinvhalf")?;
    let rel = s.relation("{E,F}").expect("listed").clone();
    let mut r = VerificationReport::new("hopf-r2-negative-control").param("j", format!("{j1} {j2}"));
    let m = rel.residual().coproduct(0, &s.delta)?.eval(&[&t1, &t2], SignConvention::Column)?;
    r.check_zero("Δ({E,F}) with flipped Δ(H)", &m);
    Ok(r.finish())
}

/// Relations under both choices of `Y`, reporting which one the list accepts.
pub fn r2_relations_check(j: HalfInt) -> Result<VerificationReport> {
    let s = HopfStructure::r2();
    let mut r = VerificationReport::new("r2-relations").param("j", j);
    let minus = crate::hopf::relations_check(&s, &r2_generators(j, YSign::Minus)?, &[HopfStructure::r2_hy_corrected()])?;
    let plus = crate::hopf::relations_check(&s, &r2_generators(j, YSign::Plus)?, &[])?;
    r.note(format!(
        "Y = +F^2 breaks: {}",
        if plus.failures.is_empty() { "nothing".to_string() } else { plus.failed_labels().join(", ") }
    ));
    r.absorb("Y = -F^2", minus);
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hi(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn fundamental_tilde_t() {
        let t = tilde_t(hi("1/2")).unwrap();
        let cl = classical_rep(hi("1/2")).unwrap();
        let expect = &cl.identity() + &cl.get("b+").unwrap().scale(&Scalar::h());
        assert_eq!(t.t, expect);
    }

    #[test]
    fn formula_and_universal_agree() {
        let a = contract(hi("1/2"), hi("1"), Source::Universal).unwrap();
        let b = contract(hi("1/2"), hi("1"), Source::Formula).unwrap();
        assert_eq!(a.r_h, b.r_h);
        assert!(!a.cancellations.is_empty());
        assert!(contract(hi("1"), hi("1"), Source::Formula).is_err());
    }

    #[test]
    fn h_zero_gives_identity() {
        let c = contract(hi("1/2"), hi("1/2"), Source::Universal).unwrap();
        let z = c.r_h.substitute_h(&num_rational::BigRational::from_integer(0.into())).unwrap();
        assert!(z.is_identity());
    }
}
