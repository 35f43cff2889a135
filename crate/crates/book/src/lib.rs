//! Compiles every Rust snippet in the guide under `book/src` as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/ends.md")]
pub mod ends {}
#[doc = include_str!("../../../book/src/planar.md")]
pub mod planar {}
#[doc = include_str!("../../../book/src/unicorn.md")]
pub mod unicorn {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/metric.md")]
pub mod metric {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/acceptance.md")]
pub mod acceptance {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
