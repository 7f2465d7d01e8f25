//! Symplectic basis labels and the intersection form.
//!
//! Leaves are labelled by the standard symplectic basis
//! a_1, b_1, ..., a_g, b_g of the first homology of a once-punctured
//! genus-g surface. The intersection form is fixed by
//! omega(a_i, b_j) = delta_ij, omega antisymmetric, and the two
//! Lagrangian subspaces A = span(a_i), B = span(b_i).

use crate::{Error, Result};
use std::fmt;

/// The Lagrangian a label belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    /// The a <-> b swap.
    pub fn mirror(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A basis label a_i or b_i, with 1-based index.
///
/// Ordering is (side, index), so every a-label sorts before every
/// b-label; canonical tree serialization relies on this order being total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub side: Side,
    pub index: u32,
}

pub fn a(index: u32) -> Label {
    Label { side: Side::A, index }
}

pub fn b(index: u32) -> Label {
    Label { side: Side::B, index }
}

impl Label {
    /// The a <-> b swap on labels.
    pub fn mirror(self) -> Label {
        Label { side: self.side.mirror(), index: self.index }
    }

    /// Parses `a3` or `b12`.
    pub fn parse(s: &str) -> Result<Label> {
        let (side, rest) = match s.as_bytes().first() {
            Some(b'a') => (Side::A, &s[1..]),
            Some(b'b') => (Side::B, &s[1..]),
            _ => return Err(Error::Usage(format!("label must start with 'a' or 'b': {s:?}"))),
        };
        let index: u32 = rest
            .parse()
            .map_err(|_| Error::Usage(format!("label needs a positive integer index: {s:?}")))?;
        if index == 0 {
            return Err(Error::Usage(format!("label indices are 1-based: {s:?}")));
        }
        Ok(Label { side, index })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.side {
            Side::A => 'a',
            Side::B => 'b',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// The intersection form: omega(a_i, b_i) = 1, omega(b_i, a_i) = -1,
/// zero otherwise.
pub fn omega(x: Label, y: Label) -> i64 {
    if x.index != y.index {
        return 0;
    }
    match (x.side, y.side) {
        (Side::A, Side::B) => 1,
        (Side::B, Side::A) => -1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_values() {
        assert_eq!(omega(a(1), b(1)), 1);
        assert_eq!(omega(b(1), a(1)), -1);
        assert_eq!(omega(a(1), b(2)), 0);
        assert_eq!(omega(a(1), a(1)), 0);
        assert_eq!(omega(b(3), b(3)), 0);
    }

    #[test]
    fn omega_antisymmetric() {
        for x in [a(1), b(1), a(2), b(2)] {
            for y in [a(1), b(1), a(2), b(2)] {
                assert_eq!(omega(x, y), -omega(y, x));
            }
        }
    }

    #[test]
    fn label_roundtrip() {
        for s in ["a1", "b12", "a7"] {
            assert_eq!(Label::parse(s).unwrap().to_string(), s);
        }
        assert!(Label::parse("c1").is_err());
        assert!(Label::parse("a0").is_err());
        assert!(Label::parse("a").is_err());
    }

    #[test]
    fn label_order_puts_a_first() {
        assert!(a(9) < b(1));
        assert!(a(1) < a(2));
        assert!(b(1) < b(2));
    }

    #[test]
    fn mirror_involution() {
        for l in [a(1), b(4)] {
            assert_eq!(l.mirror().mirror(), l);
        }
        assert_eq!(a(3).mirror(), b(3));
    }
}
