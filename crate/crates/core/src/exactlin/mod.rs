//! Exact integer linear algebra: determinants, Smith normal form, kernels and
//! Kronecker products. Nothing in here touches floating point.

mod extnat;
pub mod json;
mod matrix;
mod smith;
mod tensor;

pub use extnat::{ExtNat, ParseExtNatError};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};
pub use tensor::{det_id_minus_2x2, tensor_det_identity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{rows}x{cols} matrix cannot hold {len} entries")]
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("rows have differing lengths")]
    Ragged,
    #[error("cannot {op} {left:?} and {right:?} matrices")]
    Mismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{name} must be 1 or -1, got {value}")]
    Sign { name: &'static str, value: i64 },
}
