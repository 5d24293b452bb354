#![allow(dead_code)]

pub mod algf;
pub mod blocks;
pub mod sturm;
