//! Integers extended by `-inf` and `+inf`.

use std::fmt;

use serde::{Serialize, Serializer};

/// Ordered as `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtendedInt {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedInt::Finite(_))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            ExtendedInt::Finite(v) => Some(*v),
            _ => None,
        }
    }

    /// Adds a finite amount; infinities absorb it.
    pub fn plus(&self, d: i64) -> Self {
        match self {
            ExtendedInt::Finite(v) => ExtendedInt::Finite(v + d),
            other => *other,
        }
    }
}

impl From<i64> for ExtendedInt {
    fn from(v: i64) -> Self {
        ExtendedInt::Finite(v)
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedInt::NegInf => f.write_str("-inf"),
            ExtendedInt::Finite(v) => write!(f, "{v}"),
            ExtendedInt::PosInf => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtendedInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedInt::Finite(v) => s.serialize_i64(*v),
            ExtendedInt::NegInf => s.serialize_str("-inf"),
            ExtendedInt::PosInf => s.serialize_str("inf"),
        }
    }
}

/// Formats a vector of extended integers as `(a,b,c)`.
pub fn display_vector(v: &[ExtendedInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_text() {
        use ExtendedInt::*;
        assert!(NegInf < Finite(-100) && Finite(100) < PosInf);
        assert_eq!([NegInf, Finite(3), PosInf].iter().max(), Some(&PosInf));
        assert_eq!(display_vector(&[Finite(1), PosInf, NegInf]), "(1,inf,-inf)");
        assert_eq!(PosInf.plus(3), PosInf);
    }
}
