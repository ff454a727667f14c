#![no_std]

extern crate alloc;

pub mod assoc;
pub mod catalog;
pub mod fock;
pub mod glie;
pub mod identities;
pub mod groupmod;
pub mod lattice;
pub mod linear;
pub mod oracles;
pub mod realizations;
pub mod scalars;
pub mod vertex;
