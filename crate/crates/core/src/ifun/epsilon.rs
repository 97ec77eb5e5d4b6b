use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::exact::{parse_rat, Rat};

/// A stability parameter: `0+`, a positive rational, or infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Epsilon {
    ZeroPlus,
    Finite(Rat),
    Infinity,
}

impl Epsilon {
    /// Whether classes of degree `d` survive truncation (`d <= 1/eps`).
    pub fn keeps(&self, d: i64) -> bool {
        match self {
            Epsilon::ZeroPlus => true,
            Epsilon::Infinity => d <= 0,
            Epsilon::Finite(e) => Rat::from_integer(d.into()) * e <= Rat::from_integer(1.into()),
        }
    }

    /// Largest degree kept, `None` when unbounded.
    pub fn cutoff(&self) -> Option<i64> {
        match self {
            Epsilon::ZeroPlus => None,
            Epsilon::Infinity => Some(0),
            Epsilon::Finite(e) => {
                let q = e.recip().floor().to_integer();
                Some(i64::try_from(q).unwrap_or(i64::MAX))
            }
        }
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "0+" => Ok(Epsilon::ZeroPlus),
            "inf" | "infinity" | "∞" => Ok(Epsilon::Infinity),
            other => {
                let e = parse_rat(other)
                    .ok_or_else(|| Error::InvalidArgument(format!("cannot parse epsilon `{other}`")))?;
                if e.is_zero() || e.is_negative() {
                    return Err(Error::InvalidArgument(format!("epsilon must be positive, got {e}")));
                }
                Ok(Epsilon::Finite(e))
            }
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Epsilon::ZeroPlus => f.write_str("0+"),
            Epsilon::Infinity => f.write_str("inf"),
            Epsilon::Finite(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn parse_and_cutoff() {
        assert_eq!("0+".parse::<Epsilon>().unwrap(), Epsilon::ZeroPlus);
        assert_eq!("inf".parse::<Epsilon>().unwrap().cutoff(), Some(0));
        let half: Epsilon = "1/2".parse().unwrap();
        assert_eq!(half, Epsilon::Finite(ratio(1, 2)));
        assert_eq!(half.cutoff(), Some(2));
        assert!(half.keeps(2) && !half.keeps(3));
        assert_eq!("2/3".parse::<Epsilon>().unwrap().cutoff(), Some(1));
        assert!("-1".parse::<Epsilon>().is_err());
        assert!("0".parse::<Epsilon>().is_err());
        assert!("x".parse::<Epsilon>().is_err());
    }
}
