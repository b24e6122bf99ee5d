use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use super::kron::{graded_kron_with, SignConvention};
use super::matrix::{GradedMatrix, Parity};
use super::table::{letter_parity, GeneratorTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Product of generator letters on one tensor leg; empty means the unit.
pub type Word = Vec<String>;

pub fn word_parity(w: &[String]) -> Parity {
    w.iter()
        .fold(Parity::Even, |acc, l| acc.add(letter_parity(l)))
}

/// Finite sum of coefficient-weighted tensor words with a fixed number of legs.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorExpression {
    legs: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

pub type CoproductTable = BTreeMap<String, TensorExpression>;
pub type AntipodeTable = BTreeMap<String, TensorExpression>;
pub type CounitTable = BTreeMap<String, Scalar>;

impl TensorExpression {
    pub fn zero(legs: usize) -> Self {
        assert!(legs >= 1, "an expression needs at least one leg");
        TensorExpression {
            legs,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(legs: usize, c: Scalar) -> Self {
        TensorExpression::term(c, vec![Vec::new(); legs])
    }

    pub fn one(legs: usize) -> Self {
        TensorExpression::scalar(legs, Scalar::one())
    }

    pub fn letter(name: &str) -> Self {
        TensorExpression::term(Scalar::one(), vec![vec![name.to_string()]])
    }

    pub fn term(c: Scalar, legs: Vec<Word>) -> Self {
        let mut e = TensorExpression::zero(legs.len());
        e.push(legs, c);
        e
    }

    fn push(&mut self, legs: Vec<Word>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(legs) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The scalar value if every term is the unit word.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let mut acc = Scalar::zero();
        for (w, c) in &self.terms {
            if w.iter().any(|x| !x.is_empty()) {
                return None;
            }
            acc += c;
        }
        Some(acc)
    }

    /// Letters appearing anywhere.
    pub fn letters(&self) -> std::collections::BTreeSet<&str> {
        self.terms
            .keys()
            .flat_map(|legs| legs.iter().flat_map(|w| w.iter().map(String::as_str)))
            .collect()
    }

    fn check_legs(&self, o: &TensorExpression) -> Result<()> {
        if self.legs != o.legs {
            return Err(Error::Shape(format!(
                "{}-leg and {}-leg expressions combined",
                self.legs, o.legs
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &TensorExpression) -> Result<TensorExpression> {
        self.check_legs(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.push(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, o: &TensorExpression) -> TensorExpression {
        self.try_add(o).expect("leg count mismatch")
    }

    pub fn sub(&self, o: &TensorExpression) -> TensorExpression {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TensorExpression {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, k: &Scalar) -> TensorExpression {
        let mut out = TensorExpression::zero(self.legs);
        for (w, c) in &self.terms {
            out.push(w.clone(), c * k);
        }
        out
    }

    /// Graded product: `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac ⊗ bd`, extended to any number of legs.
    pub fn try_mul(&self, o: &TensorExpression) -> Result<TensorExpression> {
        self.check_legs(o)?;
        let mut out = TensorExpression::zero(self.legs);
        for (x, cx) in &self.terms {
            let px: Vec<Parity> = x.iter().map(|w| word_parity(w)).collect();
            for (y, cy) in &o.terms {
                let py: Vec<Parity> = y.iter().map(|w| word_parity(w)).collect();
                // y_i moves past x_k for every k > i
                let mut neg = false;
                for i in 0..self.legs {
                    for pk in &px[i + 1..] {
                        if pk.sign_with(py[i]) {
                            neg = !neg;
                        }
                    }
                }
                let legs: Vec<Word> = x
                    .iter()
                    .zip(y)
                    .map(|(a, b)| a.iter().chain(b).cloned().collect())
                    .collect();
                let c = cx * cy;
                out.push(legs, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &TensorExpression) -> TensorExpression {
        self.try_mul(o).expect("leg count mismatch")
    }

    pub fn pow(&self, n: u32) -> TensorExpression {
        let mut acc = TensorExpression::one(self.legs);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Juxtapose legs: `self ⊗ o`.
    pub fn tensor(&self, o: &TensorExpression) -> TensorExpression {
        let mut out = TensorExpression::zero(self.legs + o.legs);
        for (x, cx) in &self.terms {
            for (y, cy) in &o.terms {
                out.push(x.iter().chain(y).cloned().collect(), cx * cy);
            }
        }
        out
    }

    fn splice(&self, leg: usize, f: impl Fn(&Word) -> Result<TensorExpression>) -> Result<TensorExpression> {
        if leg >= self.legs {
            return Err(Error::Shape(format!("leg {leg} of a {}-leg expression", self.legs)));
        }
        let mut cache: HashMap<&Word, TensorExpression> = HashMap::new();
        let mut out: Option<TensorExpression> = None;
        for (legs, c) in &self.terms {
            let w = &legs[leg];
            if !cache.contains_key(w) {
                cache.insert(w, f(w)?);
            }
            let img = &cache[w];
            let acc = out.get_or_insert_with(|| TensorExpression::zero(self.legs - 1 + img.legs));
            for (iw, ic) in &img.terms {
                let mut nl: Vec<Word> = legs[..leg].to_vec();
                nl.extend(iw.iter().cloned());
                nl.extend(legs[leg + 1..].iter().cloned());
                acc.push(nl, c * ic);
            }
        }
        Ok(out.unwrap_or_else(|| TensorExpression::zero(self.legs)))
    }

    /// Replace leg `leg` by its coproduct; the leg count grows by one.
    pub fn coproduct(&self, leg: usize, delta: &CoproductTable) -> Result<TensorExpression> {
        let r = self.splice(leg, |w| {
            let mut acc = TensorExpression::one(2);
            for l in w {
                let d = delta
                    .get(l)
                    .ok_or_else(|| Error::UnknownGenerator(l.clone()))?;
                acc = acc.try_mul(d)?;
            }
            Ok(acc)
        })?;
        Ok(if r.is_zero() { TensorExpression::zero(self.legs + 1) } else { r })
    }

    /// Apply the antipode on one leg: `S(ab) = (-1)^{|a||b|} S(b) S(a)`.
    pub fn antipode(&self, leg: usize, s: &AntipodeTable) -> Result<TensorExpression> {
        self.splice(leg, |w| {
            let mut acc = TensorExpression::one(1);
            let mut neg = false;
            for (i, a) in w.iter().enumerate() {
                for b in &w[i + 1..] {
                    if letter_parity(a).sign_with(letter_parity(b)) {
                        neg = !neg;
                    }
                }
            }
            for l in w.iter().rev() {
                let img = s.get(l).ok_or_else(|| Error::UnknownGenerator(l.clone()))?;
                acc = acc.try_mul(img)?;
            }
            Ok(if neg { acc.neg() } else { acc })
        })
    }

    /// Apply the counit on one leg, removing it.
    pub fn counit(&self, leg: usize, eps: &CounitTable) -> Result<TensorExpression> {
        if self.legs < 2 {
            return Err(Error::Shape("counit would leave no legs".into()));
        }
        let r = self.splice(leg, |w| {
            let mut c = Scalar::one();
            for l in w {
                c *= eps.get(l).ok_or_else(|| Error::UnknownGenerator(l.clone()))?;
            }
            // a zero-leg factor, represented as a scalar we fold into the neighbours
            Ok(TensorExpression {
                legs: 0,
                terms: [(Vec::new(), c)].into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            })
        })?;
        Ok(if r.legs == 0 || r.is_zero() {
            let mut z = r;
            z.legs = self.legs - 1;
            z
        } else {
            r
        })
    }

    /// Counit of a one-leg expression, as a scalar.
    pub fn counit_value(&self, eps: &CounitTable) -> Result<Scalar> {
        if self.legs != 1 {
            return Err(Error::Shape("counit_value needs a one-leg expression".into()));
        }
        let mut acc = Scalar::zero();
        for (legs, c) in &self.terms {
            let mut v = c.clone();
            for l in &legs[0] {
                v *= eps.get(l).ok_or_else(|| Error::UnknownGenerator(l.clone()))?;
            }
            acc += &v;
        }
        Ok(acc)
    }

    /// Multiply legs `leg` and `leg + 1` together.
    pub fn mu(&self, leg: usize) -> Result<TensorExpression> {
        if leg + 1 >= self.legs {
            return Err(Error::Shape("no leg to multiply with".into()));
        }
        let mut out = TensorExpression::zero(self.legs - 1);
        for (legs, c) in &self.terms {
            let mut nl: Vec<Word> = legs[..leg].to_vec();
            nl.push(legs[leg].iter().chain(&legs[leg + 1]).cloned().collect());
            nl.extend(legs[leg + 2..].iter().cloned());
            out.push(nl, c.clone());
        }
        Ok(out)
    }

    /// Graded flip of legs `leg` and `leg + 1`.
    pub fn flip(&self, leg: usize) -> Result<TensorExpression> {
        if leg + 1 >= self.legs {
            return Err(Error::Shape("no leg to flip with".into()));
        }
        let mut out = TensorExpression::zero(self.legs);
        for (legs, c) in &self.terms {
            let mut nl = legs.clone();
            nl.swap(leg, leg + 1);
            let neg = word_parity(&legs[leg]).sign_with(word_parity(&legs[leg + 1]));
            out.push(nl, if neg { -c } else { c.clone() });
        }
        Ok(out)
    }

    /// Matrix of the expression with leg `t` acting through `tables[t]`.
    pub fn eval(&self, tables: &[&GeneratorTable], conv: SignConvention) -> Result<GradedMatrix> {
        if tables.len() != self.legs {
            return Err(Error::Shape(format!(
                "{} tables for a {}-leg expression",
                tables.len(),
                self.legs
            )));
        }
        let basis: Vec<Parity> = tables.iter().fold(vec![Parity::Even], |acc, t| {
            acc.iter()
                .flat_map(|a| t.basis().iter().map(move |b| a.add(*b)))
                .collect()
        });
        // distinct words per leg, evaluated once
        let mut words: Vec<HashMap<&Word, GradedMatrix>> = vec![HashMap::new(); self.legs];
        for legs in self.terms.keys() {
            for (t, w) in legs.iter().enumerate() {
                if !words[t].contains_key(w) {
                    let m = eval_word(w, tables[t])?;
                    words[t].insert(w, m);
                }
            }
        }
        let parts: Vec<GradedMatrix> = self
            .terms
            .par_iter()
            .filter_map(|(legs, c)| {
                let mats: Vec<&GradedMatrix> = legs.iter().enumerate().map(|(t, w)| &words[t][w]).collect();
                if mats.iter().any(|m| m.is_zero()) {
                    return None;
                }
                let mut acc = mats[0].clone();
                for (t, m) in mats.iter().enumerate().skip(1) {
                    acc = graded_kron_with(&acc, m, word_parity(&legs[t]), conv);
                }
                Some(acc.scale(c))
            })
            .collect();
        let mut sum = GradedMatrix::zeros(basis);
        for p in parts {
            sum = &sum + &p;
        }
        Ok(sum)
    }
}

fn eval_word(w: &Word, table: &GeneratorTable) -> Result<GradedMatrix> {
    let mut acc = table.identity();
    for l in w {
        acc = &acc * table.get(l)?;
    }
    Ok(acc)
}

impl fmt::Display for TensorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(legs, c)| {
                let ls: Vec<String> = legs
                    .iter()
                    .map(|w| if w.is_empty() { "1".to_string() } else { w.join("*") })
                    .collect();
                format!("({c})*{}", ls.join("⊗"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dsl::expr;

    #[test]
    fn graded_product_sign() {
        // (1⊗E)(E⊗1) = -E⊗E
        let a = expr("1⊗E").unwrap();
        let b = expr("E⊗1").unwrap();
        assert_eq!(a.mul(&b), expr("-E⊗E").unwrap());
        assert_eq!(b.mul(&a), expr("E⊗E").unwrap());
    }

    #[test]
    fn coproduct_of_group_like_and_words() {
        let mut d = CoproductTable::new();
        d.insert("T".into(), expr("T⊗T").unwrap());
        d.insert("E".into(), expr("E⊗Tinvhalf + Thalf⊗E").unwrap());
        d.insert("Thalf".into(), expr("Thalf⊗Thalf").unwrap());
        d.insert("Tinvhalf".into(), expr("Tinvhalf⊗Tinvhalf").unwrap());
        let tt = expr("T⊗T").unwrap();
        assert_eq!(tt.coproduct(0, &d).unwrap(), expr("T⊗T⊗T").unwrap());
        let ee = expr("E*E").unwrap().coproduct(0, &d).unwrap();
        let expect = expr(
            "E*E⊗Tinvhalf*Tinvhalf + E*Thalf⊗Tinvhalf*E - Thalf*E⊗E*Tinvhalf + Thalf*Thalf⊗E*E",
        )
        .unwrap();
        assert_eq!(ee, expect);
    }

    #[test]
    fn antipode_reverses_with_sign() {
        let mut s = AntipodeTable::new();
        s.insert("E".into(), expr("-E").unwrap());
        s.insert("F".into(), expr("-F + h/2*E").unwrap());
        s.insert("T".into(), expr("Tinv").unwrap());
        let ef = expr("E*F").unwrap().antipode(0, &s).unwrap();
        // S(EF) = -S(F)S(E)
        assert_eq!(ef, expr("-(-F + h/2*E)*(-E)").unwrap());
        assert_eq!(expr("T").unwrap().antipode(0, &s).unwrap(), expr("Tinv").unwrap());
    }

    #[test]
    fn counit_mu_flip() {
        let mut eps = CounitTable::new();
        eps.insert("T".into(), Scalar::one());
        eps.insert("E".into(), Scalar::zero());
        let x = expr("E⊗T + 3*T⊗E").unwrap();
        assert_eq!(x.counit(0, &eps).unwrap(), expr("3*E").unwrap());
        assert_eq!(x.mu(0).unwrap(), expr("E*T + 3*T*E").unwrap());
        let y = expr("E⊗E + T⊗E").unwrap();
        assert_eq!(y.flip(0).unwrap(), expr("-E⊗E + E⊗T").unwrap());
    }
}
