pub mod algorithms;
pub mod classify;
pub mod cli;
pub mod defining_cuts;
pub mod expr;
pub mod interval;
pub mod json;
pub mod num;
pub mod par;
pub mod poly;
pub mod render;
