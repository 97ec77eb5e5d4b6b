//! Exact arithmetic: sparse polynomials over `Q`, rational functions in the
//! equivariant parameters, 1/z-expansions and Novikov-graded series.

mod gcd;
mod linear;
mod novikov;
mod poly;
mod ratfunc;
mod zseries;

pub use crate::error::Error;
pub use gcd::{gcd, lcm_primitive};
pub use linear::{determinant, rank, solve_rational, Matrix};
pub use novikov::{Coeff, CurveClass, Grading, NovikovSeries};
pub use poly::{Monomial, MultiPoly, MAX_VARS};
pub use ratfunc::{RatFunc, Variables};
pub use zseries::{laurent_expand, ZSeries};

pub type Rat = num_rational::BigRational;

/// `n` as an exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// `n / d` as an exact rational.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Parse `"a"` or `"a/b"` as an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: num_bigint::BigInt = a.trim().parse().ok()?;
            let b: num_bigint::BigInt = b.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&b) {
                return None;
            }
            Some(Rat::new(a, b))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> Rat {
    let mut acc = num_bigint::BigInt::from(1);
    for k in 2..=n {
        acc *= k;
    }
    Rat::from_integer(acc)
}
