#![allow(dead_code)]
pub mod laws;
pub mod reference;
