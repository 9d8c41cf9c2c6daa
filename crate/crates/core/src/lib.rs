//! Exact symbolic computation in the diagonal reduction algebra of osp(1|2).

pub mod algebra;
pub mod distinguished;
pub mod harish_chandra;
pub mod json;
pub mod linalg;
pub mod osp;
pub mod scalar;
pub mod suite;
pub mod text;
pub mod verma;
