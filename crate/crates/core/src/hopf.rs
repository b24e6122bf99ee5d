//! Hopf structures given as relation lists plus `Δ`, `ε`, `S` tables, and the generic
//! representation-level checker for them.

use rayon::prelude::*;

use crate::error::Result;
use crate::linalg::{
    expr, AntipodeTable, CoproductTable, CounitTable, GeneratorTable, GradedMatrix, SignConvention,
    TensorExpression,
};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// `lhs = rhs` in the algebra.
#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub lhs: TensorExpression,
    pub rhs: TensorExpression,
}

impl Relation {
    pub fn new(label: &str, lhs: &str, rhs: &str) -> Result<Relation> {
        Ok(Relation {
            label: label.to_string(),
            lhs: expr(lhs)?,
            rhs: expr(rhs)?,
        })
    }

    pub fn residual(&self) -> TensorExpression {
        self.lhs.sub(&self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub name: String,
    /// Generators the coalgebra suites run over.
    pub generators: Vec<String>,
    pub delta: CoproductTable,
    pub antipode: AntipodeTable,
    pub counit: CounitTable,
    pub relations: Vec<Relation>,
}

const GROUP_LIKE: [(&str, &str); 4] = [
    ("T", "Tinv"),
    ("Tinv", "T"),
    ("Thalf", "Tinvhalf"),
    ("Tinvhalf", "Thalf"),
];

impl HopfStructure {
    /// Build from expression strings; `T^{±1}`, `T^{±1/2}` are added as group-like and `X` as primitive.
    pub fn from_strings(
        name: &str,
        delta: &[(&str, &str)],
        antipode: &[(&str, &str)],
        relations: &[(&str, &str, &str)],
    ) -> Result<HopfStructure> {
        let mut d = CoproductTable::new();
        let mut s = AntipodeTable::new();
        let mut eps = CounitTable::new();
        for (g, inv) in GROUP_LIKE {
            d.insert(g.into(), expr(&format!("{g}⊗{g}"))?);
            s.insert(g.into(), expr(inv)?);
            eps.insert(g.into(), Scalar::one());
        }
        d.insert("X".into(), expr("X⊗1 + 1⊗X")?);
        s.insert("X".into(), expr("-X")?);
        eps.insert("X".into(), Scalar::zero());
        let mut generators = vec!["X".to_string()];
        for (g, e) in delta {
            d.insert(g.to_string(), expr(e)?);
            eps.insert(g.to_string(), Scalar::zero());
            generators.push(g.to_string());
        }
        for (g, e) in antipode {
            s.insert(g.to_string(), expr(e)?);
        }
        generators.extend(GROUP_LIKE.iter().map(|(g, _)| g.to_string()));
        generators.sort();
        let relations = relations
            .iter()
            .map(|(l, a, b)| Relation::new(l, a, b))
            .collect::<Result<_>>()?;
        Ok(HopfStructure {
            name: name.to_string(),
            generators,
            delta: d,
            antipode: s,
            counit: eps,
            relations,
        })
    }

    pub fn relation(&self, label: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.label == label)
    }

    /// Replace one coproduct (used for falsification runs).
    pub fn with_delta(mut self, g: &str, e: &str) -> Result<HopfStructure> {
        self.delta.insert(g.to_string(), expr(e)?);
        Ok(self)
    }

    /// The algebra obtained from the `r2` classical r-matrix by contraction, as printed.
    pub fn r2() -> HopfStructure {
        HopfStructure::from_strings(
            "r2",
            &[
                ("H", "H⊗Tinv + T⊗H + h*E*Thalf⊗E*Tinvhalf"),
                ("E", "E⊗Tinvhalf + Thalf⊗E"),
                ("F", "F⊗Tinvhalf + Thalf⊗F"),
                ("Y", "Y⊗Tinv + T⊗Y + h/2*E*Thalf⊗Tinvhalf*F + h/2*Thalf*F⊗E*Tinvhalf"),
            ],
            &[
                ("H", "-H - h*E^2"),
                ("E", "-E"),
                ("F", "-F + h/2*E"),
                ("Y", "-Y + h/2*H + h^2/4*E^2"),
            ],
            &[
                ("[H,E]", "H*E - E*H", "(T + Tinv)*E/2"),
                ("[H,F]", "H*F - F*H", "-(T + Tinv)*F/4 - F*(T + Tinv)/4"),
                ("{E,F}", "E*F + F*E", "-H"),
                ("[H,T]", "H*T - T*H", "T^2 - 1"),
                ("[H,Tinv]", "H*Tinv - Tinv*H", "Tinv^2 - 1"),
                ("[H,Y]", "H*Y - Y*H", R2_HY_PRINTED),
                ("[T,Y]", "T*Y - Y*T", "h/2*(T*H + H*T)"),
                ("[Tinv,Y]", "Tinv*Y - Y*Tinv", "-h/2*(Tinv*H + H*Tinv)"),
                ("E^2", "E^2", "(T - Tinv)/(2*h)"),
                ("F^2", "F^2", "-Y"),
                ("[T,F]", "T*F - F*T", "h*T*E"),
                ("[Tinv,F]", "Tinv*F - F*Tinv", "-h*Tinv*E"),
                ("[Y,E]", "Y*E - E*Y", "(T + Tinv)*F/4 + F*(T + Tinv)/4"),
            ],
        )
        .expect("r2 tables parse")
    }

    /// The `[H,Y]` relation of the `r2` algebra with the sign of its last term made
    /// consistent with `[H,F]`, `[T,F]` and `F^2 = -Y`.
    pub fn r2_hy_corrected() -> Relation {
        Relation::new("[H,Y] sign-corrected", "H*Y - Y*H", R2_HY_CORRECTED).expect("parses")
    }

    /// The algebra quantizing the `r1` classical r-matrix.
    pub fn r1() -> HopfStructure {
        HopfStructure::from_strings(
            "r1",
            &[
                ("H", "H⊗T + Tinv⊗H"),
                ("E", "E⊗Tinvhalf + Thalf⊗E"),
                (
                    "F",
                    "F⊗Thalf + Tinvhalf⊗F + h/4*Tinv*E⊗(Tinvhalf*H + H*Tinvhalf) \
                     - h/4*(Thalf*H + H*Thalf)⊗T*E",
                ),
                ("Y", "Y⊗T + Tinv⊗Y"),
            ],
            &[
                ("H", "-H + 2*h*E^2"),
                ("E", "-E"),
                ("F", "-F - h/2*(T + Tinv)*E"),
                ("Y", "-Y - h*H + h^2*E^2"),
            ],
            &[
                ("[H,E]", "H*E - E*H", "(T + Tinv)*E/2"),
                (
                    "[H,F]",
                    "H*F - F*H",
                    "-(T + Tinv)*F/4 - F*(T + Tinv)/4 - h/8*((T - Tinv)*H + H*(T - Tinv))*E \
                     - h/8*E*((T - Tinv)*H + H*(T - Tinv))",
                ),
                ("{E,F}", "E*F + F*E", "-(T + Tinv)*H/4 - H*(T + Tinv)/4"),
                ("[H,T]", "H*T - T*H", "T^2 - 1"),
                ("[H,Tinv]", "H*Tinv - Tinv*H", "Tinv^2 - 1"),
                ("[H,Y]", "H*Y - Y*H", "-(T + Tinv)*Y/2 - Y*(T + Tinv)/2"),
                ("[T,Y]", "T*Y - Y*T", "h/2*(T*H + H*T)"),
                ("[Tinv,Y]", "Tinv*Y - Y*Tinv", "-h/2*(Tinv*H + H*Tinv)"),
                ("E^2", "E^2", "(T - Tinv)/(2*h)"),
                ("[Y,E]", "Y*E - E*Y", "F"),
                ("[T,F]", "T*F - F*T", "h/2*(T^2 + 1)*E"),
                ("[Tinv,F]", "Tinv*F - F*Tinv", "-h/2*(Tinv^2 + 1)*E"),
                ("F^2", "F^2", R1_F2),
                ("[F,Y]", "F*Y - Y*F", R1_FY),
            ],
        )
        .expect("r1 tables parse")
    }
}

const R2_HY_PRINTED: &str =
    "-(T + Tinv)*Y/2 - Y*(T + Tinv)/2 - h/4*E*(T - Tinv)*F - h/4*F*(T - Tinv)*E";
const R2_HY_CORRECTED: &str =
    "-(T + Tinv)*Y/2 - Y*(T + Tinv)/2 - h/4*E*(T - Tinv)*F + h/4*F*(T - Tinv)*E";

/// Right side of the `F^2` relation of the `r1` algebra.
pub const R1_F2: &str = "-Y + h/8*(T - Tinv)*H^2 + h/4*(T - Tinv)*E*F + 3*h/16*(T^2 - Tinv^2)*H \
                         + h/4*(T - Tinv) + 9*h/128*(T - Tinv)^3";
const R1_FY: &str = "h/4*(T - Tinv)*F + h/2*(T - Tinv)*E*Y - h^2/4*E*H^2 - 3*h^2/8*(T + Tinv)*E*H \
                     - h^2/2*E - 15*h^2/64*(T - Tinv)^2*E";

fn eval(x: &TensorExpression, tables: &[&GeneratorTable]) -> Result<GradedMatrix> {
    x.eval(tables, SignConvention::Column)
}

/// Every relation, evaluated in one representation.
pub fn relations_check(s: &HopfStructure, t: &GeneratorTable, extra: &[Relation]) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("relations").param("algebra", &s.name);
    let all: Vec<&Relation> = s.relations.iter().chain(extra).collect();
    let res: Vec<Result<GradedMatrix>> = all.par_iter().map(|rel| eval(&rel.residual(), &[t])).collect();
    for (rel, m) in all.iter().zip(res) {
        r.check_zero(&rel.label, &m?);
    }
    Ok(r.finish())
}

/// `Δ` applied to each relation residual vanishes on `V1 ⊗ V2`.
pub fn homomorphy_check(s: &HopfStructure, t: [&GeneratorTable; 2], extra: &[Relation]) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("homomorphy").param("algebra", &s.name);
    let all: Vec<&Relation> = s.relations.iter().chain(extra).collect();
    let res: Vec<Result<GradedMatrix>> = all
        .par_iter()
        .map(|rel| eval(&rel.residual().coproduct(0, &s.delta)?, &t))
        .collect();
    for (rel, m) in all.iter().zip(res) {
        r.check_zero(&format!("Δ({})", rel.label), &m?);
    }
    Ok(r.finish())
}

pub fn coassociativity_check(s: &HopfStructure, t: [&GeneratorTable; 3]) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("coassociativity").param("algebra", &s.name);
    let res: Vec<Result<(GradedMatrix, GradedMatrix)>> = s
        .generators
        .par_iter()
        .map(|g| {
            let d = expr(g)?.coproduct(0, &s.delta)?;
            let left = d.coproduct(0, &s.delta)?;
            let right = d.coproduct(1, &s.delta)?;
            Ok((eval(&left, &t)?, eval(&right, &t)?))
        })
        .collect();
    for (g, m) in s.generators.iter().zip(res) {
        let (a, b) = m?;
        r.check_eq(&format!("(Δ⊗id)Δ({g}) = (id⊗Δ)Δ({g})"), &a, &b);
    }
    Ok(r.finish())
}

pub fn counit_check(s: &HopfStructure, t: &GeneratorTable) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("counit").param("algebra", &s.name);
    for g in &s.generators {
        let x = expr(g)?;
        let d = x.coproduct(0, &s.delta)?;
        let target = eval(&x, &[t])?;
        r.check_eq(&format!("(ε⊗id)Δ({g}) = {g}"), &eval(&d.counit(0, &s.counit)?, &[t])?, &target);
        r.check_eq(&format!("(id⊗ε)Δ({g}) = {g}"), &eval(&d.counit(1, &s.counit)?, &[t])?, &target);
    }
    Ok(r.finish())
}

pub fn antipode_check(s: &HopfStructure, t: &GeneratorTable) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("antipode").param("algebra", &s.name);
    for g in &s.generators {
        let x = expr(g)?;
        let d = x.coproduct(0, &s.delta)?;
        let target = t.identity().scale(&x.counit_value(&s.counit)?);
        let left = d.antipode(0, &s.antipode)?.mu(0)?;
        let right = d.antipode(1, &s.antipode)?.mu(0)?;
        r.check_eq(&format!("μ(S⊗id)Δ({g}) = ε({g})"), &eval(&left, &[t])?, &target);
        r.check_eq(&format!("μ(id⊗S)Δ({g}) = ε({g})"), &eval(&right, &[t])?, &target);
    }
    Ok(r.finish())
}

/// All five suites: relations on `V1`, homomorphy on `V1⊗V2`, coassociativity on
/// `V1⊗V2⊗V3`, counit and antipode on `V1`.
pub fn hopf_check(s: &HopfStructure, t: [&GeneratorTable; 3], extra: &[Relation]) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("hopf").param("algebra", &s.name);
    r.absorb("relations", relations_check(s, t[0], extra)?);
    r.absorb("homomorphy", homomorphy_check(s, [t[0], t[1]], extra)?);
    r.absorb("coassociativity", coassociativity_check(s, t)?);
    r.absorb("counit", counit_check(s, t[0])?);
    r.absorb("antipode", antipode_check(s, t[0])?);
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_cover_generators() {
        for s in [HopfStructure::r1(), HopfStructure::r2()] {
            assert_eq!(s.generators.len(), 9);
            for g in &s.generators {
                assert!(s.delta.contains_key(g) && s.antipode.contains_key(g) && s.counit.contains_key(g));
            }
        }
    }

    #[test]
    fn coproduct_of_h_in_r2() {
        let s = HopfStructure::r2();
        let d = expr("H").unwrap().coproduct(0, &s.delta).unwrap();
        assert_eq!(d, expr("H⊗Tinv + T⊗H + h*E*Thalf⊗E*Tinvhalf").unwrap());
    }
}
