//! The narrative guide, mirrored from `book/src/`.
//!
//! Each chapter of the mdBook is included here verbatim so that
//! `cargo test --doc` compiles and runs every code snippet in the book;
//! the book cannot silently drift away from the API.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/eigenbasis.md")]
pub mod eigenbasis {}

#[doc = include_str!("../../../book/src/shear-flow.md")]
pub mod shear_flow {}

#[doc = include_str!("../../../book/src/periodic-flow.md")]
pub mod periodic_flow {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/galerkin.md")]
pub mod galerkin_guide {}

#[doc = include_str!("../../../book/src/oracle-and-cli.md")]
pub mod oracle_and_cli {}
