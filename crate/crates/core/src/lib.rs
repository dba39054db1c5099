#![cfg_attr(not(test), no_std)]
#![doc = include_str!("../README.md")]

extern crate alloc;

pub mod bilinear;
pub mod block;
pub mod error;
pub mod exact;
pub mod identities;
pub mod limits;
pub mod num;
pub mod partitions;
pub mod qspecial;
pub mod sample;
pub mod scalar;
pub mod series;
pub mod symmetry;
pub mod tau;

pub use error::{Error, Result};
