//! Configuration-driven runs and artifact emission.
pub fn placeholder() -> i32 { 0 }
