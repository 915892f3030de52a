//! Exact construction and verification of quantum subgroups of O_q(SL2) at roots of unity.

pub mod cyclo;
pub mod ncalg;
pub mod rewrite;
pub mod linalg;
pub mod report;
pub mod presentations;
pub mod hopf;
pub mod subgroups;
pub mod catalog;
pub mod cli;
