//! The guide chapters in `book/src`, compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/scalars.md")]
pub mod scalars {}
#[doc = include_str!("../../../book/src/algebra.md")]
pub mod algebra {}
#[doc = include_str!("../../../book/src/distinguished.md")]
pub mod distinguished {}
#[doc = include_str!("../../../book/src/harish_chandra.md")]
pub mod harish_chandra {}
#[doc = include_str!("../../../book/src/verma.md")]
pub mod verma {}
#[doc = include_str!("../../../book/src/tensor.md")]
pub mod tensor {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
