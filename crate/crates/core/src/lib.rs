#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod linalg;
pub mod pbw;
pub mod poly;
pub mod rootdata;
pub mod scanner;
pub mod shapovalov;
pub mod text;
pub mod verma;
pub mod weylgroup;

pub use error::{Error, Result};
