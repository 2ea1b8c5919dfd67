use std::fmt;
use std::ops::Add;

/// A natural number or `∞`, used for monomial exponents and play counts.
///
/// Finite values are 32-bit; additions that overflow saturate to `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u32),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);
    pub const ONE: ExtNat = ExtNat::Fin(1);

    pub fn is_zero(self) -> bool {
        self == ExtNat::ZERO
    }

    pub fn is_inf(self) -> bool {
        self == ExtNat::Inf
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }

    pub fn from_u64(n: u64) -> ExtNat {
        match u32::try_from(n) {
            Ok(n) => ExtNat::Fin(n),
            Err(_) => {
                log::warn!("count {n} exceeds 32 bits, saturating to inf");
                ExtNat::Inf
            }
        }
    }

    pub fn saturating_mul(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(0), _) | (_, ExtNat::Fin(0)) => ExtNat::ZERO,
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::from_u64(a as u64 * b as u64),
            _ => ExtNat::Inf,
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::from_u64(a as u64 + b as u64),
            _ => ExtNat::Inf,
        }
    }
}

impl From<u32> for ExtNat {
    fn from(n: u32) -> Self {
        ExtNat::Fin(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}
