//! Independent cross-checks: first-principles degree sets and replay of stored
//! reference tables.

pub mod brute;
pub mod tables;

pub use brute::{brute_degree, brute_degree_set, brute_set_of_groups};
pub use tables::{list_tables, verify_all, verify_table, Row, Status, VerificationReport};
