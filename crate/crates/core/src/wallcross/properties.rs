//! Randomized checks of the string, dilaton, divisor and topological
//! recursion relations among stable-map invariants.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::identities::compare;
use super::report::{Cell, VerificationReport};
use crate::error::Result;
use crate::exact::{rat, MultiPoly, RatFunc};
use crate::gw::{class_from_poly, descendant_series, divisor_class, indicator, point_class, unit_class, Leg, LegKind, Series};
use crate::toric::Toric;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    String,
    Dilaton,
    Divisor,
    Trr,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::String => "string",
            Property::Dilaton => "dilaton",
            Property::Divisor => "divisor",
            Property::Trr => "trr",
        }
    }
}

/// A random integer polynomial in the divisors `c_1(L_rho)` of degree at most `dim X`.
fn random_class(t: &Toric, rng: &mut ChaCha8Rng) -> Result<Vec<RatFunc>> {
    let nv = t.nvars();
    loop {
        let mut p = MultiPoly::zero(nv);
        p = p.add(&MultiPoly::constant(nv, rat(rng.gen_range(-2..=2))));
        for rho in 0..t.nrays() {
            p = p.add(&MultiPoly::var(nv, rho).scale(&rat(rng.gen_range(-2..=2))));
        }
        if t.dim() >= 2 || rng.gen_bool(0.3) {
            let a = rng.gen_range(0..t.nrays());
            let b = rng.gen_range(0..t.nrays());
            let m = MultiPoly::var(nv, a).mul(&MultiPoly::var(nv, b));
            p = p.add(&m.scale(&rat(rng.gen_range(-2..=2))));
        }
        let class = class_from_poly(t, &p)?;
        if class.iter().any(|c| !c.is_zero()) {
            return Ok(class);
        }
    }
}

fn random_legs(t: &Toric, rng: &mut ChaCha8Rng, k: usize) -> Result<Vec<Leg>> {
    (0..k)
        .map(|_| Ok(Leg { kind: LegKind::Psi(rng.gen_range(0..=2)), class: random_class(t, rng)? }))
        .collect()
}

fn psi_of(l: &Leg) -> u32 {
    match l.kind {
        LegKind::Psi(a) => a,
        LegKind::Desc(_) => unreachable!("property checks use plain markings"),
    }
}

fn lowered(legs: &[Leg], i: usize, times: Option<&[RatFunc]>) -> Option<Vec<Leg>> {
    let a = psi_of(&legs[i]);
    if a == 0 {
        return None;
    }
    let mut out = legs.to_vec();
    out[i].kind = LegKind::Psi(a - 1);
    if let Some(d) = times {
        out[i].class = out[i].class.iter().zip(d).map(|(x, y)| x.mul(y)).collect();
    }
    Some(out)
}

fn with_first(first: Leg, legs: &[Leg]) -> Vec<Leg> {
    let mut v = vec![first];
    v.extend_from_slice(legs);
    v
}

/// Both sides of one relation as series in `q`, and whether `beta = 0` is in range.
fn sides(t: &Toric, p: Property, rng: &mut ChaCha8Rng, bound: i64) -> Result<(Series, Series, bool)> {
    let zero = Series::zero(t.grading(), bound, &RatFunc::one(t.nvars()));
    match p {
        Property::String | Property::Dilaton | Property::Divisor => {
            let k = rng.gen_range(1..=3);
            let legs = random_legs(t, rng, k)?;
            let bare = descendant_series(t, &legs, bound)?;
            match p {
                Property::String => {
                    let lhs = descendant_series(t, &with_first(Leg { kind: LegKind::Psi(0), class: unit_class(t) }, &legs), bound)?;
                    let mut rhs = zero;
                    for i in 0..k {
                        if let Some(l) = lowered(&legs, i, None) {
                            rhs = rhs.add(&descendant_series(t, &l, bound)?)?;
                        }
                    }
                    Ok((lhs, rhs, k >= 3))
                }
                Property::Dilaton => {
                    let lhs = descendant_series(t, &with_first(Leg { kind: LegKind::Psi(1), class: unit_class(t) }, &legs), bound)?;
                    Ok((lhs, bare.scale(&rat(k as i64 - 2)), k >= 3))
                }
                _ => {
                    let rho = rng.gen_range(0..t.nrays());
                    let d = divisor_class(t, rho);
                    let lhs = descendant_series(t, &with_first(Leg { kind: LegKind::Psi(0), class: d.clone() }, &legs), bound)?;
                    let mut rhs = zero;
                    for (beta, c) in bare.terms() {
                        if beta.is_zero() {
                            continue;
                        }
                        let db = t.pairings(beta)[rho];
                        let mut term = Series::zero(t.grading(), bound, &RatFunc::one(t.nvars()));
                        term.insert(beta.clone(), c.scale(&rat(db)))?;
                        rhs = rhs.add(&term)?;
                    }
                    for i in 0..k {
                        if let Some(l) = lowered(&legs, i, Some(&d)) {
                            rhs = rhs.add(&descendant_series(t, &l, bound)?)?;
                        }
                    }
                    Ok((lhs, rhs, k >= 3))
                }
            }
        }
        Property::Trr => {
            let legs = random_legs(t, rng, 3)?;
            let mut first = legs[0].clone();
            let a = psi_of(&first);
            first.kind = LegKind::Psi(a + 1);
            let lhs = descendant_series(t, &[first, legs[1].clone(), legs[2].clone()], bound)?;
            let mut rhs = zero;
            for s in 0..t.fixed_points().len() {
                let left = descendant_series(t, &[legs[0].clone(), Leg { kind: LegKind::Psi(0), class: point_class(t, s) }], bound)?;
                let right = descendant_series(
                    t,
                    &[Leg { kind: LegKind::Psi(0), class: indicator(t, s) }, legs[1].clone(), legs[2].clone()],
                    bound,
                )?;
                rhs = rhs.add(&left.mul(&right)?)?;
            }
            Ok((lhs, rhs, true))
        }
    }
}

/// Run `trials` random instances of a relation on `t` through degree `bound`.
pub fn verify_property(t: &Toric, p: Property, bound: i64, trials: usize, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes = t.effective_classes(bound)?;
    let mut cells: Vec<Cell> = Vec::new();
    for trial in 0..trials {
        let (lhs, rhs, degree_zero) = sides(t, p, &mut rng, bound)?;
        for beta in &classes {
            if beta.is_zero() && !degree_zero {
                continue;
            }
            let label = format!("trial {trial}");
            cells.push(compare(t, label, beta, &lhs.coeff(beta), &rhs.coeff(beta), None)?);
        }
    }
    Ok(VerificationReport::new(p.name(), t.name(), bound, cells, start))
}
