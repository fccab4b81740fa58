//! Exact computation with commutative one-parameter formal group laws and
//! their finite truncations ("bud laws").
//!
//! Everything here is pure and allocation-only; the crate builds without
//! `std`. File formats, the command line front end and thread fan-out live in
//! the companion `budlaw` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod arith;
pub mod error;
pub mod finite_ring;
pub mod honda;
pub mod isomorphy;
pub mod mono;
pub mod budlaw;
pub mod lazard;
pub mod ring;
pub mod series;
pub mod smith;
pub mod truncpoly;

pub use arith::{is_prime, lambda_of};
pub use error::{Error, Result};
pub use mono::Mono;
pub use ring::{Elem, GaloisField, Ring, RingElement, RingHom};
pub use truncpoly::TruncPoly;
pub use budlaw::{BudLaw, Endo, HeightClass};
