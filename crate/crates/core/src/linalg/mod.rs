//! Graded matrices, graded tensor products, nilpotent functional calculus and tensor-word expressions.

mod dsl;
mod expr;
mod json;
mod kron;
mod matrix;
mod nilpotent;
mod table;

pub use dsl::expr;
pub use expr::{word_parity, AntipodeTable, CoproductTable, CounitTable, TensorExpression, Word};
pub use kron::{embed_pair, graded_kron, graded_kron_with, permute_legs, SignConvention};
pub use matrix::{rep_parity, GradedMatrix, Parity};
pub use nilpotent::{apply_coeffs, apply_series, binom, nilpotent_fun, NilFn};
pub use table::{letter_parity, GeneratorTable};
