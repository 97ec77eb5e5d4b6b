//! Descendant integrals on `M_{0,n}` and the localized vertex integral.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, MultiPoly, Rat, RatFunc};

/// `int_{M_{0,n}} prod psi_i^{a_i}` with `n = exponents.len()`.
pub fn psi_integral(exponents: &[u32]) -> Result<Rat> {
    let n = exponents.len();
    if n < 3 {
        return Err(Error::Unstable(format!("M_(0,{n}) is unstable")));
    }
    let dim = (n - 3) as u64;
    let total: u64 = exponents.iter().map(|&a| a as u64).sum();
    if total != dim {
        return Ok(Rat::zero());
    }
    let mut v = factorial(dim as u32);
    for &a in exponents {
        v /= factorial(a);
    }
    Ok(v)
}

/// `int prod_i 1/(w_i - psi_i) prod_j psi_j^{a_j}` over the vertex moduli,
/// where the `w_i` are flag weights (edge tangents divided by the covering
/// degree, or a descendant variable) and the `a_j` belong to plain markings.
///
/// Unstable vertices follow the usual conventions: a lone flag gives `w`,
/// two flags give `1/(w_1 + w_2)`, and a flag next to a plain marking gives
/// `(-w)^a`.
pub fn vertex_integral(nvars: usize, flags: &[MultiPoly], plain: &[u32]) -> Result<RatFunc> {
    let n = flags.len() + plain.len();
    match (flags.len(), plain.len()) {
        (1, 0) => Ok(RatFunc::from_poly(flags[0].clone())),
        (2, 0) => {
            let s = flags[0].add(&flags[1]);
            RatFunc::from_product(nvars, Rat::one(), &[(s, -1)])
        }
        (1, 1) => Ok(RatFunc::from_poly(flags[0].neg().pow(plain[0]))),
        _ if n < 3 => Err(Error::Unstable(format!(
            "vertex with {} flags and {} plain markings",
            flags.len(),
            plain.len()
        ))),
        _ => {
            let a: u32 = plain.iter().sum();
            let dim = (n - 3) as u32;
            if a > dim {
                return Ok(RatFunc::zero(nvars));
            }
            let p = dim - a;
            let mut c = factorial(dim) / factorial(p);
            for &x in plain {
                c /= factorial(x);
            }
            let inv: Vec<(MultiPoly, i32)> = flags.iter().map(|f| (f.clone(), -1)).collect();
            let base = RatFunc::from_product(nvars, c, &inv)?;
            if p == 0 {
                return Ok(base);
            }
            let mut s = RatFunc::zero(nvars);
            for f in flags {
                s = s.add(&RatFunc::from_product(nvars, Rat::one(), &[(f.clone(), -1)])?);
            }
            Ok(base.mul(&s.pow(p as i32)?))
        }
    }
}
