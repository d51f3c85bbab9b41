//! Checked `i128` arithmetic for products involving divisor classes.
//!
//! Closed-form invariants are bounded by `PARAM_MAX`; classes are not, so
//! every product that mixes them goes through these helpers and panics
//! instead of wrapping.

#[inline]
pub(crate) fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .unwrap_or_else(|| panic!("exact arithmetic overflow: {a} * {b}"))
}

#[inline]
pub(crate) fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("exact arithmetic overflow: {a} + {b}"))
}

#[inline]
pub(crate) fn sub(a: i128, b: i128) -> i128 {
    a.checked_sub(b)
        .unwrap_or_else(|| panic!("exact arithmetic overflow: {a} - {b}"))
}
