//! Edge and vertex contributions to the localization graph sum.
//!
//! A graph contributes `prod_e edge * prod_(flags) e(T_sigma) * prod_v vertex`.
//! The node-smoothing and domain-automorphism terms live in the vertex
//! integral, so the edge term is a pure weight.

use super::psi::vertex_integral;
use crate::error::{Error, Result};
use crate::exact::{ratio, MultiPoly, Rat, RatFunc};
use crate::toric::Toric;

/// Inverse Euler class of the moving part of `H^0 - H^1` of the pulled-back
/// Euler sequence on a degree-`delta` cover of a closed orbit, times `1/delta`.
pub fn edge_factor(t: &Toric, orbit: usize, delta: u32) -> Result<RatFunc> {
    let o = t
        .closed_orbits()
        .get(orbit)
        .ok_or_else(|| Error::InvalidArgument(format!("no closed orbit with index {orbit}")))?;
    if delta == 0 {
        return Err(Error::InvalidArgument("covering degree must be positive".into()));
    }
    edge_from_end(t, o.ends.0, &o.weight, &o.pairings, delta)
}

/// The edge term computed from one end: `tangent` is the tangent weight of
/// the orbit there.
fn edge_from_end(t: &Toric, near: usize, tangent: &MultiPoly, pairings: &[i64], delta: u32) -> Result<RatFunc> {
    let omega = tangent.scale(&ratio(1, delta as i64));
    let mut factors: Vec<(MultiPoly, i32)> = Vec::new();
    let mut fixed_h0 = 0usize;
    for (rho, &d) in pairings.iter().enumerate() {
        let a = t.bundle_weight(near, rho);
        let m = delta as i64 * d;
        if m >= 0 {
            for j in 0..=m {
                let f = a.sub(&omega.scale(&Rat::from_integer(j.into())));
                if f.is_zero() {
                    fixed_h0 += 1;
                } else {
                    factors.push((f, -1));
                }
            }
        } else {
            for j in 1..-m {
                let f = a.add(&omega.scale(&Rat::from_integer(j.into())));
                if f.is_zero() {
                    return Err(Error::NonIsolatedOrbit(format!(
                        "obstruction space of a cover of a curve through {:?} has a fixed part",
                        t.sigma_label(near)
                    )));
                }
                factors.push((f, 1));
            }
        }
    }
    // r copies from the trivial summand and one from the rotation of the cover.
    if fixed_h0 != t.rank() + 1 {
        return Err(Error::Inconsistent(format!(
            "expected {} fixed sections on a cover of an orbit, found {fixed_h0}",
            t.rank() + 1
        )));
    }
    RatFunc::from_product(t.nvars(), ratio(1, delta as i64), &factors)
}

/// `(1/e(T_sigma)) * vertex integral * prod (leg classes)`.
///
/// `flags` are the flag weights (edge tangent at `sigma` over the covering
/// degree, or a descendant variable), `plain` the psi exponents of plain
/// markings and `classes` their restrictions at `sigma`.
pub fn vertex_factor(t: &Toric, sigma: usize, flags: &[MultiPoly], plain: &[u32], classes: &[RatFunc]) -> Result<RatFunc> {
    for f in flags {
        if f.is_zero() {
            return Err(Error::NonIsolatedOrbit(format!("zero flag weight at {:?}", t.sigma_label(sigma))));
        }
    }
    let mut v = vertex_integral(t.nvars(), flags, plain)?.mul(&t.euler_inv(sigma));
    for c in classes {
        v = v.mul(c);
    }
    Ok(v)
}

/// Each edge endpoint carries the Euler class of the tangent space there.
pub fn flag_factor(t: &Toric, sigma: usize) -> RatFunc {
    t.euler(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn p1_line_edge() {
        let t = Toric::preset("p1").unwrap();
        let w = t.closed_orbits()[0].weight.clone();
        let e = edge_factor(&t, 0, 1).unwrap();
        assert_eq!(e, RatFunc::from_product(t.nvars(), -Rat::one(), &[(w, -2)]).unwrap());
    }

    #[test]
    fn edge_factor_is_symmetric_under_swap() {
        let t = Toric::preset("p2").unwrap();
        for (i, o) in t.closed_orbits().iter().enumerate() {
            for delta in 1..=3 {
                let e = edge_factor(&t, i, delta).unwrap();
                let flipped = edge_from_end(&t, o.ends.1, &o.weight.neg(), &o.pairings, delta).unwrap();
                assert_eq!(e, flipped);
            }
        }
    }
}
