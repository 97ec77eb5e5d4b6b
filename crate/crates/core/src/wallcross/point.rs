use std::time::Instant;

use rayon::prelude::*;

use super::report::{Cell, Status, VerificationReport};
use crate::error::Result;
use crate::exact::{factorial, CurveClass, Rat, RatFunc};
use crate::gw::{psi_integral, shifted_descendant_series, Leg, LegKind, Series};
use crate::toric::Toric;

fn label(k: usize, a: &[u32]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("k={k} a=({})", parts.join(","))
}

/// Quasimap side for the point: `(1/d!) int_{M_{0,k|d}} prod psi_i^{a_i}`,
/// with the psi classes pulled back from `M_{0,k+d}` along the Hassett
/// contraction.
fn quasimap_side(a: &[u32], d: usize) -> Result<Rat> {
    let mut e = a.to_vec();
    e.extend(std::iter::repeat_n(0, d));
    Ok(psi_integral(&e)? / factorial(d as u32))
}

/// Stable-map side: the `q^d` coefficient of
/// `sum_m (1/m!) <tau_{a_1}, ..., tau_{a_k}, I_1, ..., I_1>` with `I_1 = q`.
fn stable_map_side(t: &Toric, a: &[u32], d: usize) -> Result<Rat> {
    let nv = t.nvars();
    let one = RatFunc::one(nv);
    let legs: Vec<Leg> = a.iter().map(|&x| Leg { kind: LegKind::Psi(x), class: vec![one.clone()] }).collect();
    let mut shift = Series::zero(t.grading(), d as i64, &one);
    shift.insert(CurveClass(vec![1]), one.clone())?;
    let bound = d as i64;
    let s = shifted_descendant_series(t, &legs, bound, Some(&[shift]))?;
    let c = s.coeff(&CurveClass(vec![d as i64]));
    Ok(c.as_constant().expect("point invariants are numbers"))
}

fn cell(t: &Toric, k: usize, a: &[u32], d: usize) -> Result<Cell> {
    let sigma = label(k, a);
    if k < 3 {
        return Ok(Cell::new(sigma, d.to_string(), Status::Unsupported, Some("fewer than three heavy markings".into())));
    }
    let lhs = quasimap_side(a, d)?;
    let rhs = stable_map_side(t, a, d)?;
    if lhs == rhs {
        Ok(Cell::new(sigma, d.to_string(), Status::Pass, Some(format!("{lhs} = {rhs}"))))
    } else {
        Ok(Cell::new(sigma, d.to_string(), Status::Fail, Some(format!("{lhs} != {rhs}"))))
    }
}

/// Both sides of the point-target wall-crossing for one exponent vector.
pub fn point_wallcross_check(k: usize, a: &[u32], d: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let t = Toric::preset("point")?;
    if a.len() != k {
        return Err(crate::error::Error::ArityMismatch { expected: k, found: a.len() });
    }
    let c = cell(&t, k, a, d)?;
    Ok(VerificationReport::new("point-wallcross", "point", d as i64, vec![c], start))
}

fn exponent_vectors(k: usize, total: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in exponent_vectors(k - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every `3 <= k <= kmax`, `0 <= d <= dmax` and exponent vector with
/// `sum a_i = k + d - 3`.
pub fn point_wallcross_range(kmax: usize, dmax: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let t = Toric::preset("point")?;
    let mut jobs = Vec::new();
    for k in 3..=kmax {
        for d in 0..=dmax {
            for a in exponent_vectors(k, (k + d - 3) as u32) {
                jobs.push((k, a, d));
            }
        }
    }
    let cells = jobs.par_iter().map(|(k, a, d)| cell(&t, *k, a, *d)).collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("point-wallcross", "point", dmax as i64, cells, start))
}
