//! The algebra quantizing the `r1` classical r-matrix: two explicit maps onto the classical
//! algebra, the factorized universal R, twist and antipode transformers, and the series
//! oracles for the mapping-function ODEs and the `H`-diagonal twist.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{hopf_check, relations_check, HopfStructure, R1_F2};
use crate::linalg::{
    apply_series, expr, nilpotent_fun, permute_legs, GeneratorTable, GradedMatrix, NilFn, Parity, SignConvention,
    TensorExpression,
};
use crate::report::VerificationReport;
use crate::reps::{basis, classical_rep};
use crate::rmatrix::ybe_check;
use crate::scalar::{HalfInt, PowerSeries, Scalar};

const CONV: SignConvention = SignConvention::Column;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapFamily {
    /// `φ1 = (1 - 2h b+)^(-1/4)`, twisted by the factor `G` of the universal R.
    Minimal,
    /// `φ1 = (1 - h^2 b+^2 / 4)^(-1/2)`, keeping `H = h`.
    Hdiag,
}

impl MapFamily {
    pub const ALL: [MapFamily; 2] = [MapFamily::Minimal, MapFamily::Hdiag];

    pub fn name(self) -> &'static str {
        match self {
            MapFamily::Minimal => "minimal",
            MapFamily::Hdiag => "hdiag",
        }
    }
}

impl std::str::FromStr for MapFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimal" => Ok(MapFamily::Minimal),
            "hdiag" => Ok(MapFamily::Hdiag),
            _ => Err(Error::Parse(format!("unknown map family `{s}`"))),
        }
    }
}

fn hs(n: i64, d: i64) -> Scalar {
    Scalar::h() * Scalar::ratio(n, d)
}

/// `H, E, F, T^{±1}, T^{±1/2}, X, Y` realized on the classical spin-`j` irrep through the direct map.
pub fn r1_generators(j: HalfInt, family: MapFamily) -> Result<GeneratorTable> {
    let cl = classical_rep(j)?;
    let (hc, e, f, b) = (cl.get("h")?, cl.get("e")?, cl.get("f")?, cl.get("b+")?);
    let id = cl.identity();
    let (em, hm, fm, t, tinv) = match family {
        MapFamily::Minimal => {
            let base = &id - &b.scale(&hs(2, 1));
            let p = |n, d| nilpotent_fun(&base, &NilFn::Pow(n, d));
            let (pm14, p12, p14, pm34, pm12) = (p(-1, 4)?, p(1, 2)?, p(1, 4)?, p(-3, 4)?, p(-1, 2)?);
            let em = &pm14 * e;
            let hm = &p12 * hc;
            let fm = &(&(&p14 * f) - &(&(b * &pm34) * e).scale(&(Scalar::h() * hs(1, 4))))
                + &(&(&p14 * e) * hc).scale(&hs(1, 2));
            (em, hm, fm, pm12, p12)
        }
        MapFamily::Hdiag => {
            let base = &id - &(b * b).scale(&(Scalar::h() * hs(1, 4)));
            let root = nilpotent_fun(&base, &NilFn::Pow(1, 2))?;
            let iroot = nilpotent_fun(&base, &NilFn::Pow(-1, 2))?;
            let i32 = nilpotent_fun(&base, &NilFn::Pow(-3, 2))?;
            let hb2 = b.scale(&hs(1, 2));
            let up = &id + &hb2;
            let down = &id - &hb2;
            let t = &up * &down.inverse()?;
            let tinv = &down * &up.inverse()?;
            let hhb = b.scale(&(Scalar::h() * hs(1, 4)));
            let em = &iroot * e;
            let fm = &(&(&root * f) - &(&(&hhb * &i32) * e)) - &(&(&(&hhb * &iroot) * e) * hc);
            (em, hc.clone(), fm, t, tinv)
        }
    };
    let thalf = nilpotent_fun(&t, &NilFn::Pow(1, 2))?;
    let tinvhalf = nilpotent_fun(&t, &NilFn::Pow(-1, 2))?;
    let x = nilpotent_fun(&t, &NilFn::Ln)?.try_map(|_, _, v| v.checked_div(&Scalar::h()))?;
    let mut g = GeneratorTable::new(basis(j));
    g.insert("H", hm)?;
    g.insert("E", em)?;
    g.insert("F", fm)?;
    g.insert("T", t)?;
    g.insert("Tinv", tinv)?;
    g.insert("Thalf", thalf)?;
    g.insert("Tinvhalf", tinvhalf)?;
    g.insert("X", x)?;
    let y = expr(&R1_F2.replacen("-Y", "-F^2", 1))?.eval(&[&g], CONV)?;
    g.insert("Y", y)?;
    Ok(g)
}

/// Every listed relation, plus the `h = 0` limit of each generator.
pub fn r1_relations_check(j: HalfInt, family: MapFamily) -> Result<VerificationReport> {
    let t = r1_generators(j, family)?;
    let mut r = VerificationReport::new("r1-relations").param("j", j).param("family", family.name());
    r.absorb("relations", relations_check(&HopfStructure::r1(), &t, &[])?);
    let cl = classical_rep(j)?;
    let zero = BigRational::zero();
    for (q, c) in [("H", "h"), ("E", "e"), ("F", "f"), ("X", "b+"), ("Y", "b-")] {
        let label = format!("{q} at h=0 is classical {c}");
        if let Some(m) = r.check_result(&label, t.get(q)?.substitute_h(&zero)) {
            r.check_eq(&label, &m, cl.get(c)?);
        }
    }
    if let Some(m) = r.check_result("T at h=0", t.get("T")?.substitute_h(&zero)) {
        r.check("T at h=0 is 1", m.is_identity(), "not the identity");
    }
    Ok(r.finish())
}

/// Relations and coproducts among `H, T^{±1}, X, Y` never mention `E` or `F`.
pub fn ohn_subalgebra_check() -> VerificationReport {
    let s = HopfStructure::r1();
    let even = ["H", "T", "Tinv", "X", "Y"];
    let closed = |x: &TensorExpression| x.letters().iter().all(|l| even.contains(l));
    let mut r = VerificationReport::new("ohn-subalgebra");
    for rel in &s.relations {
        if closed(&rel.lhs) {
            r.check(&rel.label, closed(&rel.rhs), format!("right side uses {:?}", rel.rhs.letters()));
        }
    }
    for g in even {
        r.check(&format!("Δ({g})"), closed(&s.delta[g]), format!("uses {:?}", s.delta[g].letters()));
    }
    r.finish()
}

pub fn r1_hopf_check(js: [HalfInt; 3], family: MapFamily) -> Result<VerificationReport> {
    let t: Vec<GeneratorTable> = js.iter().map(|&j| r1_generators(j, family)).collect::<Result<_>>()?;
    let mut r = hopf_check(&HopfStructure::r1(), [&t[0], &t[1], &t[2]], &[])?;
    r.suite = "hopf-r1".into();
    r.params.insert("family".into(), family.name().into());
    r.params.insert("j".into(), format!("{} {} {}", js[0], js[1], js[2]));
    Ok(r)
}

fn two_leg(e: &str, t1: &GeneratorTable, t2: &GeneratorTable) -> Result<GradedMatrix> {
    expr(e)?.eval(&[t1, t2], CONV)
}

/// `G = exp(h TH ⊗ X)` on `V_{j1} ⊗ V_{j2}`.
pub fn twist_g(j1: HalfInt, j2: HalfInt, family: MapFamily) -> Result<GradedMatrix> {
    let (t1, t2) = (r1_generators(j1, family)?, r1_generators(j2, family)?);
    nilpotent_fun(&two_leg("h*T*H⊗X", &t1, &t2)?, &NilFn::Exp)
}

/// Operator on `V2 ⊗ V1` moved to `V1 ⊗ V2` by the graded flip.
fn flipped(m: &GradedMatrix, j1: HalfInt, j2: HalfInt) -> Result<GradedMatrix> {
    permute_legs(m, &[basis(j2), basis(j1)], &[1, 0])
}

/// `R = G21^-1 G`.
pub fn universal_rh_r1(j1: HalfInt, j2: HalfInt, family: MapFamily) -> Result<GradedMatrix> {
    let g = twist_g(j1, j2, family)?;
    let g21 = flipped(&twist_g(j2, j1, family)?, j1, j2)?;
    Ok(&g21.inverse()? * &g)
}

/// `R21 R = 1`, `R Δ(x) = Δop(x) R` for every generator, and `R = 1` at `h = 0`.
pub fn r1_rmatrix_check(j1: HalfInt, j2: HalfInt, family: MapFamily) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("triangularity")
        .param("j", format!("{j1} {j2}"))
        .param("family", family.name());
    let (rm, r21) = rayon::join(
        || universal_rh_r1(j1, j2, family),
        || -> Result<GradedMatrix> { flipped(&universal_rh_r1(j2, j1, family)?, j1, j2) },
    );
    let (rm, r21) = (rm?, r21?);
    r.check("R21 R = 1", (&r21 * &rm).is_identity(), "product is not the identity");
    if let Some(z) = r.check_result("R at h=0", rm.substitute_h(&BigRational::zero())) {
        r.check("R at h=0 is 1", z.is_identity(), "not the identity");
    }
    let s = HopfStructure::r1();
    let (t1, t2) = (r1_generators(j1, family)?, r1_generators(j2, family)?);
    let res: Vec<Result<(GradedMatrix, GradedMatrix)>> = s
        .generators
        .par_iter()
        .map(|g| {
            let d = expr(g)?.coproduct(0, &s.delta)?;
            let fwd = d.eval(&[&t1, &t2], CONV)?;
            let op = flipped(&d.eval(&[&t2, &t1], CONV)?, j1, j2)?;
            Ok((&rm * &fwd, &op * &rm))
        })
        .collect();
    for (g, m) in s.generators.iter().zip(res) {
        let (a, b) = m?;
        r.check_eq(&format!("R Δ({g}) = Δop({g}) R"), &a, &b);
    }
    Ok(r.finish())
}

pub fn r1_ybe_check(js: [HalfInt; 3], family: MapFamily) -> Result<VerificationReport> {
    let mut r = ybe_check(&format!("r1-{}", family.name()), |a, b| universal_rh_r1(a, b, family), js)?;
    r.params.insert("family".into(), family.name().into());
    Ok(r)
}

/// A function of `y = hX/2` times a word in the generators.
struct Term {
    fun: Option<Vec<Scalar>>,
    word: &'static str,
}

fn factorial(k: usize) -> Scalar {
    (1..=k as i64).fold(Scalar::one(), |a, i| a * Scalar::from_int(i))
}

/// `cosh y`, `sinh y` and `sinh 2y` as Taylor coefficients up to `n`.
fn cosh_c(n: usize) -> Vec<Scalar> {
    (0..n).map(|k| if k % 2 == 0 { factorial(k).inv().unwrap() } else { Scalar::zero() }).collect()
}

fn sinh_c(n: usize, scale: i64) -> Vec<Scalar> {
    (0..n)
        .map(|k| {
            if k % 2 == 1 {
                Scalar::from_int(scale).pow(k as i64).unwrap() / factorial(k)
            } else {
                Scalar::zero()
            }
        })
        .collect()
}

/// Series length ample for any nilpotent argument on spaces up to `SERIES_LEN - 1` dimensions.
const SERIES_LEN: usize = 160;

/// The classical generators `e, h, f` in terms of the deformed ones.
fn inverse_map(family: MapFamily) -> [Vec<Term>; 3] {
    match family {
        MapFamily::Minimal => [
            vec![Term { fun: None, word: "Tinvhalf*E" }],
            vec![Term { fun: None, word: "T*H" }],
            vec![Term {
                fun: None,
                word: "Thalf*F + h/8*Thalf*(T - Tinv)*E - h/2*Thalf*E*H",
            }],
        ],
        MapFamily::Hdiag => {
            let n = SERIES_LEN;
            let cosh = PowerSeries::new("y", cosh_c(n), n);
            let sech = cosh.inv().expect("head is 1").coeffs().to_vec();
            let s2c = PowerSeries::new("y", sinh_c(n, 2), n).mul(&cosh).coeffs().to_vec();
            [
                vec![Term { fun: Some(sech), word: "E" }],
                vec![Term { fun: None, word: "H" }],
                vec![
                    Term { fun: Some(cosh_c(n)), word: "F" },
                    Term { fun: Some(s2c), word: "h/4*E" },
                    Term { fun: Some(sinh_c(n, 1)), word: "h/2*E*H" },
                ],
            ]
        }
    }
}

fn fun_at(c: &Option<Vec<Scalar>>, y: &GradedMatrix) -> Result<GradedMatrix> {
    match c {
        None => Ok(GradedMatrix::identity(y.parity().to_vec())),
        Some(c) => apply_series(y, &PowerSeries::new("y", c.clone(), c.len())),
    }
}

/// `m^-1(φ)` on one representation.
fn image(terms: &[Term], t: &GeneratorTable) -> Result<GradedMatrix> {
    let y = t.get("X")?.scale(&hs(1, 2));
    let mut acc = GradedMatrix::zeros(t.basis().to_vec());
    for term in terms {
        acc = &acc + &(&fun_at(&term.fun, &y)? * &expr(term.word)?.eval(&[t], CONV)?);
    }
    Ok(acc)
}

/// `Δ(m^-1(φ))` on `V1 ⊗ V2`.
fn image_delta(terms: &[Term], t1: &GeneratorTable, t2: &GeneratorTable) -> Result<GradedMatrix> {
    let s = HopfStructure::r1();
    let y = two_leg("X⊗1 + 1⊗X", t1, t2)?.scale(&hs(1, 2));
    let mut acc = GradedMatrix::zeros(y.parity().to_vec());
    for term in terms {
        let w = expr(term.word)?.coproduct(0, &s.delta)?.eval(&[t1, t2], CONV)?;
        acc = &acc + &(&fun_at(&term.fun, &y)? * &w);
    }
    Ok(acc)
}

/// `S(m^-1(φ))`; the function of `X` is even or odd in `y`.
fn image_antipode(terms: &[Term], t: &GeneratorTable) -> Result<GradedMatrix> {
    let s = HopfStructure::r1();
    let y = t.get("X")?.scale(&hs(-1, 2));
    let mut acc = GradedMatrix::zeros(t.basis().to_vec());
    for term in terms {
        let w = expr(term.word)?.antipode(0, &s.antipode)?.eval(&[t], CONV)?;
        acc = &acc + &(&w * &fun_at(&term.fun, &y)?);
    }
    Ok(acc)
}

/// `x ⊗ 1 + 1 ⊗ x` for a classical matrix on each leg.
fn primitive(a: &GradedMatrix, b: &GradedMatrix, p: Parity) -> GradedMatrix {
    let i1 = GradedMatrix::identity(a.parity().to_vec());
    let i2 = GradedMatrix::identity(b.parity().to_vec());
    &crate::linalg::graded_kron_with(a, &i2, Parity::Even, CONV) + &crate::linalg::graded_kron_with(&i1, b, p, CONV)
}

const CLASSICAL: [(&str, Parity); 3] = [("e", Parity::Odd), ("h", Parity::Even), ("f", Parity::Odd)];

/// `G Δ(X) G^-1 = X ⊗ 1 + 1 ⊗ X` for the three operators of the minimal inverse map,
/// and those operators obey the classical relations.
pub fn twist_property_check(j1: HalfInt, j2: HalfInt) -> Result<VerificationReport> {
    let fam = MapFamily::Minimal;
    let (t1, t2) = (r1_generators(j1, fam)?, r1_generators(j2, fam)?);
    let (c1, c2) = (classical_rep(j1)?, classical_rep(j2)?);
    let g = twist_g(j1, j2, fam)?;
    let gi = g.inverse()?;
    let mut r = VerificationReport::new("twist").param("j", format!("{j1} {j2}"));
    let map = inverse_map(fam);
    for (terms, (name, p)) in map.iter().zip(CLASSICAL) {
        let d = image_delta(terms, &t1, &t2)?;
        let lhs = &(&g * &d) * &gi;
        r.check_eq(&format!("G Δ({name}) G^-1 is primitive"), &lhs, &primitive(c1.get(name)?, c2.get(name)?, p));
        r.check_eq(&format!("{name} from the inverse map"), &image(terms, &t1)?, c1.get(name)?);
    }
    let (e, h, f) = (image(&map[0], &t1)?, image(&map[1], &t1)?, image(&map[2], &t1)?);
    r.check_eq("{e,f} = -h", &e.anticommutator(&f), &-&h);
    r.check_eq("[h,e] = e", &h.commutator(&e), &e);
    r.check_eq("[h,f] = -f", &h.commutator(&f), &-&f);
    Ok(r.finish())
}

/// The displayed `H`-diagonal twist through `h^2`, `r = H⊗X - X⊗H`.
pub const HDIAG_TWIST: [&str; 3] = ["1⊗1", "1/2*(H⊗X - X⊗H)", "1/8*((H⊗X - X⊗H)^2 + H⊗X^2 + X^2⊗H)"];

fn hdiag_twist_expr() -> Result<TensorExpression> {
    let mut acc = TensorExpression::zero(2);
    for (k, s) in HDIAG_TWIST.iter().enumerate() {
        acc = acc.add(&expr(s)?.scale(&Scalar::h().pow(k as i64)?));
    }
    Ok(acc)
}

fn valuation_at_least(m: &GradedMatrix, k: i64) -> bool {
    m.h_valuation().is_none_or(|v| v >= k)
}

/// `(G⊗1)(Δ⊗id)G = (1⊗G)(id⊗Δ)G`: exact for the minimal twist, through `h^2` for the
/// displayed series of the `H`-diagonal map.
pub fn cocycle_check(js: [HalfInt; 3], family: MapFamily) -> Result<VerificationReport> {
    let t: Vec<GeneratorTable> = js.iter().map(|&j| r1_generators(j, family)).collect::<Result<_>>()?;
    let tabs = [&t[0], &t[1], &t[2]];
    let s = HopfStructure::r1();
    let one = TensorExpression::one(1);
    let mut r = VerificationReport::new("cocycle")
        .param("j", format!("{} {} {}", js[0], js[1], js[2]))
        .param("family", family.name());
    match family {
        MapFamily::Minimal => {
            let a = expr("h*T*H⊗X")?;
            let exp = |x: TensorExpression| -> Result<GradedMatrix> { nilpotent_fun(&x.eval(&tabs, CONV)?, &NilFn::Exp) };
            let (left, right) = rayon::join(
                || -> Result<GradedMatrix> { Ok(&exp(a.tensor(&one))? * &exp(a.coproduct(0, &s.delta)?)?) },
                || -> Result<GradedMatrix> { Ok(&exp(one.tensor(&a))? * &exp(a.coproduct(1, &s.delta)?)?) },
            );
            r.check_eq("(G⊗1)(Δ⊗id)G = (1⊗G)(id⊗Δ)G", &left?, &right?);
        }
        MapFamily::Hdiag => {
            let g = hdiag_twist_expr()?;
            let lhs = g.tensor(&one).mul(&g.coproduct(0, &s.delta)?).eval(&tabs, CONV)?;
            let rhs = one.tensor(&g).mul(&g.coproduct(1, &s.delta)?).eval(&tabs, CONV)?;
            let d = &lhs - &rhs;
            r.check("cocycle residual is O(h^3)", valuation_at_least(&d, 3), format!("h-valuation {:?}", d.h_valuation()));
            r.note("twist known through h^2; orders 0..2 compared");
        }
    }
    Ok(r.finish())
}

/// `g` from the twist against its displayed form, and `g S(m^-1 φ) g^-1 = -φ`.
pub fn antipode_transformer_check(j: HalfInt, family: MapFamily) -> Result<VerificationReport> {
    let t = r1_generators(j, family)?;
    let cl = classical_rep(j)?;
    let s = HopfStructure::r1();
    let mut r = VerificationReport::new("antipode-transformer")
        .param("j", j)
        .param("family", family.name());
    let exact = family == MapFamily::Minimal;
    let g = match family {
        MapFamily::Minimal => {
            // μ (id⊗S) exp(h TH⊗X) = sum_n h^n/n! (TH)^n (-X)^n
            let a = expr("h*T*H")?.eval(&[&t], CONV)?;
            let sx = expr("X")?.antipode(0, &s.antipode)?.eval(&[&t], CONV)?;
            let mut acc = GradedMatrix::identity(t.basis().to_vec());
            let (mut an, mut bn) = (acc.clone(), acc.clone());
            for n in 1..=t.dim() {
                an = &an * &a;
                bn = &bn * &sx;
                if bn.is_zero() {
                    break;
                }
                acc = &acc + &(&an * &bn).scale(&factorial(n).inv()?);
            }
            let closed = nilpotent_fun(&expr("-1/2*T*H*(1 - Tinv^2)")?.eval(&[&t], CONV)?, &NilFn::Exp)?;
            r.check_eq("μ(id⊗S)G = exp(-TH(1 - T^-2)/2)", &acc, &closed);
            acc
        }
        MapFamily::Hdiag => {
            let g = hdiag_twist_expr()?.antipode(1, &s.antipode)?.mu(0)?.eval(&[&t], CONV)?;
            let shown = expr("1 - h*X + h^2/2*X^2")?.eval(&[&t], CONV)?;
            let d = &g - &shown;
            r.check(
                "μ(id⊗S)G = 1 - hX + h^2 X^2/2 + O(h^3)",
                valuation_at_least(&d, 3),
                format!("h-valuation {:?}", d.h_valuation()),
            );
            g
        }
    };
    if let Some(z) = r.check_result("g at h=0", g.substitute_h(&BigRational::zero())) {
        r.check("g at h=0 is 1", z.is_identity(), "not the identity");
    }
    let gi = g.inverse()?;
    for (terms, (name, _)) in inverse_map(family).iter().zip(CLASSICAL) {
        let lhs = &(&g * &image_antipode(terms, &t)?) * &gi;
        let want = -cl.get(name)?;
        let label = format!("g S({name}) g^-1 = -{name}");
        if exact {
            r.check_eq(&label, &lhs, &want);
        } else {
            let d = &lhs - &want;
            r.check(&format!("{label} + O(h^3)"), valuation_at_least(&d, 3), format!("h-valuation {:?}", d.h_valuation()));
        }
    }
    Ok(r.finish())
}

/// `μ[exp(h ⊗ ln(1 - 2h b+) / 2)] = exp(-h h b+)` with the classical Cartan `h`.
pub fn disentangle_check(j: HalfInt) -> Result<VerificationReport> {
    let cl = classical_rep(j)?;
    let (hc, b) = (cl.get("h")?, cl.get("b+")?);
    let id = cl.identity();
    let l = nilpotent_fun(&(&id - &b.scale(&hs(2, 1))), &NilFn::Ln)?;
    let mut lhs = id.clone();
    let (mut hn, mut ln) = (id.clone(), id.clone());
    for n in 1..=cl.dim() {
        hn = &hn * hc;
        ln = &ln * &l;
        if ln.is_zero() {
            break;
        }
        let c = Scalar::ratio(1, 2).pow(n as i64)? / factorial(n);
        lhs = &lhs + &(&hn * &ln).scale(&c);
    }
    let rhs = nilpotent_fun(&(hc * b).scale(&-Scalar::h()), &NilFn::Exp)?;
    let mut r = VerificationReport::new("disentangle").param("j", j);
    r.check_eq("μ exp(h⊗ln(1-2h b+)/2) = exp(-h h b+)", &lhs, &rhs);
    Ok(r.finish())
}

/// The twist of the `H`-diagonal map solved order by order on `V_{1/2} ⊗ V_{1/2}`.
#[derive(Clone, Debug)]
pub struct TwistSeries {
    /// Coefficient matrices of `h^0, h^1, ...`; order `k > 0` is the solved representative.
    pub coefficients: Vec<GradedMatrix>,
    /// Dimension of the homogeneous solution space at each order, within the ansatz span.
    pub kernel_dims: Vec<usize>,
    pub report: VerificationReport,
}

fn words(max_len: usize) -> Vec<String> {
    let mut out = vec!["1".to_string()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in ["H", "X"] {
                next.push(if w.is_empty() { l.to_string() } else { format!("{w}*{l}") });
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn rationals(m: &GradedMatrix) -> Result<Vec<BigRational>> {
    m.entries()
        .iter()
        .map(|x| x.as_rational().ok_or_else(|| Error::Precondition(format!("{x} is not a number"))))
        .collect()
}

/// Row-reduce `[a | b]`; returns a particular solution and the nullity, or `None` if inconsistent.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>, cols: usize) -> Option<(Vec<BigRational>, usize)> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(row, p);
        b.swap(row, p);
        let inv = BigRational::one() / &a[row][c];
        for k in c..cols {
            a[row][k] = &a[row][k] * &inv;
        }
        b[row] = &b[row] * &inv;
        for i in 0..a.len() {
            if i != row && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..cols {
                    let v = &a[row][k] * &f;
                    a[i][k] -= v;
                }
                let v = &b[row] * &f;
                b[i] -= v;
            }
        }
        pivots.push(c);
        row += 1;
    }
    if b[row..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some((x, cols - pivots.len()))
}

/// Independent matrices spanning the evaluated ansatz.
fn span_basis(ms: Vec<GradedMatrix>) -> Result<Vec<GradedMatrix>> {
    let mut basis: Vec<GradedMatrix> = Vec::new();
    let mut reduced: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for m in ms {
        let mut v = rationals(&m)?;
        for (p, r) in &reduced {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= y * &f;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = BigRational::one() / &v[p];
            let v: Vec<BigRational> = v.iter().map(|x| x * &inv).collect();
            for (_, r) in reduced.iter_mut() {
                if !r[p].is_zero() {
                    let f = r[p].clone();
                    for (x, y) in r.iter_mut().zip(&v) {
                        *x -= y * &f;
                    }
                }
            }
            reduced.push((p, v));
            basis.push(m);
        }
    }
    Ok(basis)
}

/// Matrix `h`-series coefficients `0..n`.
fn h_coeffs(m: &GradedMatrix, n: usize) -> Result<Vec<GradedMatrix>> {
    let per: Vec<Vec<Scalar>> = m.entries().iter().map(|x| x.h_series(n)).collect::<Result<_>>()?;
    Ok((0..n)
        .map(|k| GradedMatrix::from_entries(m.parity().to_vec(), per.iter().map(|s| s[k].clone()).collect()).expect("same shape"))
        .collect())
}

/// Solve `G Δ(m^-1 φ) = (φ⊗1 + 1⊗φ) G` for `G = sum h^k G_k` with `G_k` in the span of
/// `{H, X}` words of length `≤ 2k` on each leg, using the displayed coefficient at each
/// lower order, and test the displayed coefficient against the solution set.
pub fn series_twist(order: usize) -> Result<TwistSeries> {
    if order == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    let half = HalfInt::HALF;
    let fam = MapFamily::Hdiag;
    let t = r1_generators(half, fam)?;
    let cl = classical_rep(half)?;
    let n = order + 1;
    let map = inverse_map(fam);
    let mut deltas = Vec::new();
    for (terms, (name, p)) in map.iter().zip(CLASSICAL) {
        let d = h_coeffs(&image_delta(terms, &t, &t)?, n)?;
        deltas.push((primitive(cl.get(name)?, cl.get(name)?, p), d));
    }
    let shown: Vec<GradedMatrix> = HDIAG_TWIST
        .iter()
        .map(|s| expr(s)?.eval(&[&t, &t], CONV))
        .collect::<Result<_>>()?;
    let mut rep = VerificationReport::new("series-twist").param("order", order);
    let mut coeffs = vec![GradedMatrix::identity(shown[0].parity().to_vec())];
    let mut kernel_dims = vec![0];
    // lower orders use the displayed coefficients where available, else the solved ones
    let mut gauge: Vec<GradedMatrix> = coeffs.clone();
    for k in 1..=order {
        let ws = words(2 * k);
        let ansatz: Vec<GradedMatrix> = ws
            .par_iter()
            .flat_map(|a| ws.par_iter().map(move |b| (a.clone(), b.clone())))
            .map(|(a, b)| expr(&format!("{a}⊗{b}"))?.eval(&[&t, &t], CONV))
            .collect::<Result<_>>()?;
        let basis = span_basis(ansatz)?;
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        let mut rhs: Vec<BigRational> = Vec::new();
        let mut residual_of = Vec::new();
        for (p, d) in &deltas {
            // G_k P - P G_k = -sum_{i<k} G_i D_{k-i}
            let mut acc = GradedMatrix::zeros(p.parity().to_vec());
            for i in 0..k {
                acc = &acc - &(&gauge[i] * &d[k - i]);
            }
            let cols: Vec<Vec<BigRational>> = basis
                .iter()
                .map(|b| rationals(&(&(b * p) - &(p * b))))
                .collect::<Result<_>>()?;
            for (e, v) in rationals(&acc)?.into_iter().enumerate() {
                rows.push(cols.iter().map(|c| c[e].clone()).collect());
                rhs.push(v);
            }
            residual_of.push((p.clone(), acc));
        }
        let label = format!("order {k} is solvable");
        let Some((x, nullity)) = solve(rows, rhs, basis.len()) else {
            rep.fail(&label, None, "inconsistent linear system");
            break;
        };
        rep.pass(&label);
        let mut gk = GradedMatrix::zeros(coeffs[0].parity().to_vec());
        for (c, b) in x.iter().zip(&basis) {
            gk = &gk + &b.scale_rational(c);
        }
        rep.note(format!("order {k}: ansatz span {} matrices, solution space dimension {nullity}", basis.len()));
        let id = &coeffs[0];
        let id_free = deltas.iter().all(|(p, _)| (&(id * p) - &(p * id)).is_zero());
        rep.check(
            &format!("order {k} solution is unique up to a multiple of 1⊗1"),
            nullity == 1 && id_free,
            format!("homogeneous solutions span {nullity} dimensions"),
        );
        if let Some(s) = shown.get(k) {
            let ok = residual_of.iter().all(|(p, acc)| (&(&(s * p) - &(p * s)) - acc).is_zero());
            rep.check(&format!("displayed order-{k} coefficient solves order {k}"), ok, "residual is nonzero");
            let diff = s - &gk;
            let in_kernel = deltas.iter().all(|(p, _)| (&(&diff * p) - &(p * &diff)).is_zero());
            rep.check(
                &format!("displayed order-{k} coefficient differs from the solution by a homogeneous term"),
                in_kernel,
                "difference does not commute with the classical coproduct",
            );
            gauge.push(s.clone());
        } else {
            gauge.push(gk.clone());
        }
        coeffs.push(gk);
        kernel_dims.push(nullity);
    }
    Ok(TwistSeries {
        coefficients: coeffs,
        kernel_dims,
        report: rep.finish(),
    })
}

/// The displayed series twist against the Drinfeld relation on `V_{j1} ⊗ V_{j2}`, through `h^2`,
/// and `g` from it against its displayed series.
pub fn series_twist_check(j1: HalfInt, j2: HalfInt) -> Result<VerificationReport> {
    let fam = MapFamily::Hdiag;
    let (t1, t2) = (r1_generators(j1, fam)?, r1_generators(j2, fam)?);
    let (c1, c2) = (classical_rep(j1)?, classical_rep(j2)?);
    let g = hdiag_twist_expr()?.eval(&[&t1, &t2], CONV)?;
    let mut r = VerificationReport::new("series-twist-drinfeld").param("j", format!("{j1} {j2}"));
    for (terms, (name, p)) in inverse_map(fam).iter().zip(CLASSICAL) {
        let d = image_delta(terms, &t1, &t2)?;
        let prim = primitive(c1.get(name)?, c2.get(name)?, p);
        let res = &(&g * &d) - &(&prim * &g);
        r.check(
            &format!("G Δ({name}) - ({name}⊗1 + 1⊗{name}) G = O(h^3)"),
            valuation_at_least(&res, 3),
            format!("h-valuation {:?}", res.h_valuation()),
        );
    }
    Ok(r.finish())
}

fn ser(c: Vec<Scalar>, n: usize) -> PowerSeries {
    PowerSeries::new("x", c, n)
}

fn konst(c: Scalar, n: usize) -> PowerSeries {
    PowerSeries::constant("x", c, n)
}

/// Divide by the series variable; the constant term must vanish.
fn div_var(s: &PowerSeries) -> Result<PowerSeries> {
    if !s.coeff(0).is_zero() {
        return Err(Error::Precondition(format!("constant term {} does not vanish", s.coeff(0))));
    }
    Ok(ser(s.coeffs()[1..].to_vec(), s.order() - 1))
}

fn trunc(s: &PowerSeries, n: usize) -> PowerSeries {
    ser(s.coeffs()[..n.min(s.order())].to_vec(), n.min(s.order()))
}

fn sc(s: &PowerSeries, k: Scalar) -> PowerSeries {
    s.scale(&k)
}

/// First nonzero coefficient of each residual below `upto`.
fn record(r: &mut VerificationReport, label: &str, res: &PowerSeries, upto: usize) {
    if res.order() < upto {
        r.fail(label, None, format!("only {} orders available", res.order()));
        return;
    }
    match trunc(res, upto).first_nonzero() {
        None => r.pass(label),
        Some((k, c)) => r.fail(label, None, format!("order {k}: {c}")),
    }
}

/// Direct and inverse mapping-function systems with the solved functions substituted, through
/// `order`; both readings of the third direct equation are reported.
pub fn map_ode_check(family: MapFamily, order: usize) -> Result<VerificationReport> {
    if order < 4 {
        return Err(Error::Precondition("order must be at least 4".into()));
    }
    let n = order + 4;
    let one = Scalar::one();
    let h = Scalar::h();
    let h2 = &h * &h;
    let x = PowerSeries::variable("x", n);
    let mut r = VerificationReport::new("ode").param("family", family.name()).param("order", order);

    // direct system in x = b+
    let phi1 = match family {
        MapFamily::Minimal => konst(one.clone(), n).add(&sc(&x, hs(-2, 1))).pow_ratio(-1, 4)?,
        MapFamily::Hdiag => konst(one.clone(), n).add(&sc(&x.mul(&x), h2.clone() / Scalar::from_int(4)).neg()).pow_ratio(-1, 2)?,
    };
    let d = |s: &PowerSeries| s.derivative();
    let x2 = x.mul(&x);
    let sq_of = |p: &PowerSeries| -> Result<PowerSeries> {
        konst(one.clone(), n).add(&sc(&x2.mul(&p.pow_ratio(4, 1)?), h2.clone())).sqrt()
    };
    let sq = sq_of(&phi1)?;
    let two_x = sc(&x, Scalar::from_int(2));
    let phi1_3 = phi1.mul(&phi1).mul(&phi1);
    let den = phi1.add(&two_x.mul(&d(&phi1)));
    let phi2 = sq.mul(&phi1).div(&den)?;
    let phi3 = phi1.inv()?;
    let u1 = sc(&x.mul(&phi1_3), -(h2.clone() / Scalar::from_int(4)));
    let u2 = div_var(&konst(one.clone(), n).sub(&sq.mul(&phi2)))?.div(&sc(&phi1, Scalar::from_int(2)))?;
    let direct: Vec<(&str, PowerSeries)> = vec![
        ("direct 1", den.mul(&phi2).sub(&sq.mul(&phi1))),
        ("direct 2", two_x.mul(&phi2).mul(&d(&phi3)).sub(&phi2.mul(&phi3)).add(&sq.mul(&phi3))),
        ("direct 4", {
            let a = phi2.sub(&two_x.mul(&d(&phi2))).add(&sq).mul(&u2);
            a.add(&d(&phi2).mul(&phi3))
                .add(&two_x.mul(&phi2).mul(&d(&u2)))
                .add(&sc(&x.mul(&phi1_3).mul(&phi2), h2.clone()))
        }),
        ("direct 5", phi1.mul(&two_x.mul(&u2).sub(&phi3)).add(&sq.mul(&phi2))),
        ("direct 6", {
            let a = x.mul(&phi1).mul(&sc(&u1, Scalar::from_int(2)).add(&u2));
            let b = x.mul(&d(&phi1)).mul(&phi3.sub(&two_x.mul(&u2)));
            a.sub(&b).add(&sc(&x2.mul(&phi1_3.mul(&phi1)), h2.clone()))
        }),
    ];
    for (label, res) in &direct {
        record(&mut r, label, res, order);
    }
    let third = |rad: &PowerSeries| {
        two_x
            .mul(&phi2)
            .mul(&d(&u1))
            .add(&phi2.add(rad).mul(&u1))
            .add(&sc(&x.mul(&sq).mul(&phi1_3), h2.clone()))
    };
    let phi1_reading = third(&sq);
    let printed = third(&sq_of(&phi2)?);
    record(&mut r, "direct 3 (φ1^4 radicand)", &phi1_reading, order);
    let printed_ok = trunc(&printed, order).first_nonzero().is_none();
    r.note(format!(
        "direct 3 with the printed φ2^4 radicand {}",
        match trunc(&printed, order).first_nonzero() {
            None => "also vanishes".to_string(),
            Some((k, c)) => format!("fails at order {k}: {c}"),
        }
    ));
    r.params.insert("printed_reading_holds".into(), printed_ok.to_string());
    r.check("φ1 φ3 = 1", trunc(&phi1.mul(&phi3), order) == konst(one.clone(), order), "product is not 1");

    // the solved functions against the displayed direct map
    let (phi2_s, phi3_s, u1_s, u2_s) = match family {
        MapFamily::Minimal => {
            let base = konst(one.clone(), n).add(&sc(&x, hs(-2, 1)));
            (
                base.sqrt()?,
                base.pow_ratio(1, 4)?,
                sc(&x.mul(&base.pow_ratio(-3, 4)?), -(h2.clone() / Scalar::from_int(4))),
                sc(&base.pow_ratio(1, 4)?, hs(1, 2)),
            )
        }
        MapFamily::Hdiag => {
            let base = konst(one.clone(), n).sub(&sc(&x2, h2.clone() / Scalar::from_int(4)));
            (
                konst(one.clone(), n),
                base.sqrt()?,
                sc(&x.mul(&base.pow_ratio(-3, 2)?), -(h2.clone() / Scalar::from_int(4))),
                sc(&x.mul(&base.pow_ratio(-1, 2)?), -(h2.clone() / Scalar::from_int(4))),
            )
        }
    };
    for (label, a, b) in [("φ2", &phi2, &phi2_s), ("φ3", &phi3, &phi3_s), ("u1", &u1, &u1_s), ("u2", &u2, &u2_s)] {
        record(&mut r, &format!("solved {label} matches the direct map"), &a.sub(b), order);
    }

    // inverse system in s = T - 1
    let s = PowerSeries::new("x", vec![Scalar::zero(), one.clone()], n);
    let t = s.add_scalar(&one);
    let ti = t.inv()?;
    let t2m1 = t.mul(&t).add_scalar(&-one.clone());
    let tpt = t.add(&ti);
    let tmt = t.sub(&ti);
    let rt = t.sqrt()?;
    let psi1 = match family {
        MapFamily::Minimal => rt.inv()?,
        MapFamily::Hdiag => sc(&rt, Scalar::from_int(2)).div(&t.add_scalar(&one))?,
    };
    let two = |p: &PowerSeries| sc(p, Scalar::from_int(2));
    let psi2 = two(&psi1).div(&tpt.mul(&psi1).add(&two(&t2m1).mul(&d(&psi1))))?;
    let psi3 = psi1.inv()?;
    let w1 = sc(&tmt, h.clone() / Scalar::from_int(8)).div(&psi1)?;
    let w2 = sc(&div_var(&tpt.sub(&two(&psi2)))?, h.clone())
        .div(&two(&div_var(&tmt)?).mul(&psi1))?;
    let inverse: Vec<(&str, PowerSeries)> = vec![
        ("inverse 1", two(&t2m1).mul(&d(&psi1)).mul(&psi2).add(&tpt.mul(&psi1).mul(&psi2)).sub(&two(&psi1))),
        ("inverse 2", two(&t2m1).mul(&psi2).mul(&d(&psi3)).sub(&tpt.mul(&psi2).mul(&psi3)).add(&two(&psi3))),
        ("inverse 3", {
            let inner = two(&tpt).mul(&w1)
                .add(&sc(&t2m1, Scalar::from_int(4)).mul(&d(&w1)))
                .sub(&sc(&t.mul(&t).sub(&ti.mul(&ti)), h.clone()).mul(&psi3));
            psi2.mul(&inner).add(&sc(&w1, Scalar::from_int(4)))
        }),
        ("inverse 4", {
            let a = tmt.mul(&psi2).mul(&two(&t).mul(&d(&w2)).sub(&sc(&psi3, h.clone())));
            let b = sc(&t.mul(&t).add_scalar(&one), h.clone()).mul(&d(&psi2)).mul(&psi3);
            let c = tpt.mul(&psi2).sub(&two(&t2m1).mul(&d(&psi2))).add_scalar(&Scalar::from_int(2)).mul(&w2);
            a.add(&b).add(&c)
        }),
        ("inverse 5", two(&tmt).mul(&psi1).mul(&w2).sub(&sc(&tpt.mul(&psi1).mul(&psi3), h.clone())).add(&sc(&psi2, hs(2, 1)))),
        ("inverse 6", {
            let a = tmt.mul(&psi1).mul(
                &sc(&w1, Scalar::from_int(4)).add(&tpt.mul(&w2)).sub(&sc(&tmt.mul(&psi3), h.clone())),
            );
            let b = t.mul(&tmt).mul(&d(&psi1)).mul(&two(&tmt).mul(&w2).sub(&sc(&tpt.mul(&psi3), h.clone())));
            a.add(&b)
        }),
    ];
    for (label, res) in &inverse {
        record(&mut r, label, res, order);
    }
    let half = |p: &PowerSeries| sc(p, Scalar::ratio(1, 2));
    let (psi2_s, psi3_s, w1_s, w2_s) = match family {
        MapFamily::Minimal => (t.clone(), rt.clone(), sc(&rt.mul(&tmt), h.clone() / Scalar::from_int(8)), sc(&rt, hs(-1, 2))),
        MapFamily::Hdiag => {
            let cosh = half(&rt.add(&rt.inv()?));
            let sinh = half(&rt.sub(&rt.inv()?));
            (
                konst(one.clone(), n),
                cosh.clone(),
                sc(&half(&tmt).mul(&cosh), h.clone() / Scalar::from_int(4)),
                sc(&sinh, hs(1, 2)),
            )
        }
    };
    for (label, a, b) in [("ψ2", &psi2, &psi2_s), ("ψ3", &psi3, &psi3_s), ("w1", &w1, &w1_s), ("w2", &w2, &w2_s)] {
        record(&mut r, &format!("solved {label} matches the inverse map"), &a.sub(b), order);
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hi(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn minimal_t_closed_form() {
        let t = r1_generators(hi("1/2"), MapFamily::Minimal).unwrap();
        let cl = classical_rep(hi("1/2")).unwrap();
        let want = &cl.identity() + &cl.get("b+").unwrap().scale(&Scalar::h());
        assert_eq!(t.get("T").unwrap(), &want);
        assert_eq!(t.get("X").unwrap(), cl.get("b+").unwrap());
    }

    #[test]
    fn hdiag_keeps_cartan() {
        let t = r1_generators(hi("1"), MapFamily::Hdiag).unwrap();
        assert_eq!(t.get("H").unwrap(), classical_rep(hi("1")).unwrap().get("h").unwrap());
    }

    #[test]
    fn disentangle_fundamental() {
        assert!(disentangle_check(hi("1/2")).unwrap().passed());
    }

    #[test]
    fn solver_reports_nullity() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let (x, k) = solve(a.clone(), vec![q(3), q(6)], 2).unwrap();
        assert_eq!((x[0].clone(), k), (q(3), 1));
        assert!(solve(a, vec![q(3), q(7)], 2).is_none());
    }
}
