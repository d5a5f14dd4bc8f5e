pub mod bound;
pub mod classify;
pub mod common;
pub mod dde;
pub mod netsim;
