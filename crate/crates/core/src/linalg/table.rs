use std::collections::BTreeMap;

use super::matrix::{GradedMatrix, Parity};
use crate::error::{Error, Result};

/// Parity of a generator letter: `e, f, E, F` are odd, everything else even.
pub fn letter_parity(name: &str) -> Parity {
    match name {
        "e" | "f" | "E" | "F" => Parity::Odd,
        _ => Parity::Even,
    }
}

/// Named generator matrices on one representation space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    basis: Vec<Parity>,
    gens: BTreeMap<String, GradedMatrix>,
}

impl GeneratorTable {
    pub fn new(basis: Vec<Parity>) -> Self {
        GeneratorTable {
            basis,
            gens: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &[Parity] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn identity(&self) -> GradedMatrix {
        GradedMatrix::identity(self.basis.clone())
    }

    /// Add a generator; its matrix must be homogeneous of the letter's parity.
    pub fn insert(&mut self, name: &str, m: GradedMatrix) -> Result<()> {
        if m.parity() != self.basis.as_slice() {
            return Err(Error::Shape(format!("generator {name} on a different basis")));
        }
        match m.operator_parity() {
            Some(p) if p == letter_parity(name) || m.is_zero() => {}
            _ => return Err(Error::NonHomogeneous),
        }
        self.gens.insert(name.to_string(), m);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&GradedMatrix> {
        self.gens
            .get(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.gens.keys().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.gens.contains_key(name)
    }

    /// `T * Tinv = I` whenever both are present.
    pub fn check_inverse_pair(&self) -> bool {
        match (self.gens.get("T"), self.gens.get("Tinv")) {
            (Some(t), Some(ti)) => (t * ti).is_identity(),
            _ => true,
        }
    }
}
