//! Holds the acceptance test target, `tests/acceptance.rs`. There is no
//! library code.
