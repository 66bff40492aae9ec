//! Closed-form counts: binding point law, arc index bound, construction stick
//! count and the crossing-number bound on the lattice stick number.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("counts give {value} for {what}, which must be at least {min}")]
    InvalidCounts { what: &'static str, value: i64, min: i64 },
}

/// Witness counts shared by every formula. `alpha` and `c` are the sizes of a
/// concrete presentation and diagram, so they bound the true minima from above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundInputs {
    pub alpha: i64,
    pub c: i64,
    pub e: i64,
    pub v: i64,
    pub s: i64,
    pub b: i64,
    pub k: i64,
}

/// Number of binding points of a presentation with `alpha` arcs.
pub fn lemma_binding(alpha: i64, v: i64, e: i64) -> Result<i64, BoundsError> {
    let beta = alpha + v - e;
    if beta < 1 {
        return Err(BoundsError::InvalidCounts { what: "binding points", value: beta, min: 1 });
    }
    Ok(beta)
}

pub fn arc_index_upper(c: i64, e: i64, b: i64) -> i64 {
    c + e + b
}

pub(crate) fn construction_count_raw(alpha: i64, e: i64, v: i64, s: i64, k: i64) -> i64 {
    3 * alpha + 3 * e - 4 * v - 2 * s + k
}

/// Sticks used by the construction: `3 alpha + 3e - 4v - 2s + k`.
pub fn construction_count(alpha: i64, e: i64, v: i64, s: i64, k: i64) -> Result<i64, BoundsError> {
    let n = construction_count_raw(alpha, e, v, s, k);
    if n < 3 {
        return Err(BoundsError::InvalidCounts { what: "construction count", value: n, min: 3 });
    }
    Ok(n)
}

/// `3c + 6e - 4v - 2s + 3b + k`.
pub fn main_upper(c: i64, e: i64, v: i64, s: i64, b: i64, k: i64) -> i64 {
    3 * c + 6 * e - 4 * v - 2 * s + 3 * b + k
}

/// Substituting the arc index bound into the construction count yields the main bound.
pub fn identity_check(c: i64, e: i64, v: i64, s: i64, b: i64, k: i64) -> bool {
    construction_count_raw(arc_index_upper(c, e, b), e, v, s, k) == main_upper(c, e, v, s, b, k)
}

impl BoundInputs {
    pub fn construction(&self) -> Result<i64, BoundsError> {
        construction_count(self.alpha, self.e, self.v, self.s, self.k)
    }

    pub fn main(&self) -> i64 {
        main_upper(self.c, self.e, self.v, self.s, self.b, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_binding(6, 2, 3), Ok(5));
        assert_eq!(lemma_binding(2, 1, 1), Ok(2));
        assert_eq!(lemma_binding(1, 2, 1), Ok(2));
        assert!(lemma_binding(1, 1, 3).is_err());
    }

    #[test]
    fn arc_index_examples() {
        assert_eq!(arc_index_upper(3, 1, 1), 5);
        assert_eq!(arc_index_upper(3, 3, 0), 6);
        assert_eq!(arc_index_upper(0, 3, 0), 3);
    }

    #[test]
    fn construction_examples() {
        assert_eq!(construction_count(2, 1, 1, 1, 1), Ok(4));
        assert_eq!(construction_count(5, 1, 1, 1, 1), Ok(13));
        assert_eq!(construction_count(3, 3, 2, 1, 0), Ok(8));
        assert!(construction_count(1, 1, 2, 1, 0).is_err());
    }

    #[test]
    fn main_bound_examples() {
        assert_eq!(main_upper(3, 1, 1, 1, 1, 1), 13);
        assert_eq!(main_upper(3, 1, 1, 1, 1, 1), 3 * 3 + 4);
        assert_eq!(main_upper(4, 1, 1, 1, 1, 1), 16);
        assert_eq!(main_upper(3, 3, 2, 1, 0, 0), 17);
    }

    #[test]
    fn identity_examples() {
        assert!(identity_check(3, 1, 1, 1, 1, 1));
        assert!(identity_check(0, 3, 2, 1, 0, 0));
    }
}
