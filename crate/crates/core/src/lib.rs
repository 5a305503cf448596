//! Fundamental groups of finite stratified models.
//!
//! A specialization poset with a group attached to every chain (strata on
//! singletons, links on longer chains) and restriction maps for chain
//! containments determines a classifying space; its fundamental group is
//! the colimit of the attached groups over the subdivision poset. This crate
//! computes that colimit with certificates, together with the finite-poset
//! and finite-category predicates used to classify such models and the
//! finite-level arithmetic examples built on them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// index loops read better in the matrix and table code
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod arith;
pub mod decollage;
pub mod fincat;
pub mod fpgroup;
pub mod perm;
pub mod poset;
pub mod sample;
