//! The guide in `book/` compiled as documentation, so that each code
//! listing runs as a doctest under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/algebra.md")]
pub mod algebra {}
#[doc = include_str!("../../../book/src/module.md")]
pub mod module {}
#[doc = include_str!("../../../book/src/frames.md")]
pub mod frames {}
#[doc = include_str!("../../../book/src/controlled.md")]
pub mod controlled {}
#[doc = include_str!("../../../book/src/multipliers.md")]
pub mod multipliers {}
#[doc = include_str!("../../../book/src/solver.md")]
pub mod solver {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
