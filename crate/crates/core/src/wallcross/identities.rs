use std::time::Instant;

use rayon::prelude::*;

use super::report::{Cell, Status, VerificationReport};
use crate::error::{Error, Result};
use crate::exact::{laurent_expand, rat, CurveClass, NovikovSeries, Rat, RatFunc};
use crate::gw::{mirror_transformed_j, point_class, s_operator_column, v_operator, Series};
use crate::ifun::{extract_i0_i1, mirror_map, small_i, truncate, Epsilon, IParts, SmallIFunction};
use crate::toric::Toric;

pub(crate) fn sigma_name(t: &Toric, sigma: usize) -> String {
    let l: Vec<String> = t.sigma_label(sigma).iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", l.join(","))
}

/// Compare two exact coefficients: equal as rational functions, or at least
/// equal in their `1/z` expansions through `z_order`.
pub(crate) fn compare(t: &Toric, sigma: String, beta: &CurveClass, expected: &RatFunc, got: &RatFunc, z_order: Option<i64>) -> Result<Cell> {
    let diff = expected.sub(got);
    if diff.is_zero() {
        return Ok(Cell::new(sigma, beta.to_string(), Status::Pass, None));
    }
    if let Some(order) = z_order {
        if laurent_expand(&diff, t.zvar(), order)?.is_zero() {
            return Ok(Cell::new(sigma, beta.to_string(), Status::Pass, None));
        }
    }
    Ok(Cell::new(sigma, beta.to_string(), Status::Fail, Some(diff.to_string_with(&t.var_names()))))
}

/// The I-function data needed on the quasimap side, or the reason it is
/// outside the supported range.
pub(crate) struct Prepared {
    pub i: SmallIFunction,
    pub parts: IParts,
}

pub(crate) fn prepare(t: &Toric, bound: i64) -> Result<std::result::Result<Prepared, String>> {
    let class = match t.classify() {
        Ok(c) => c,
        Err(e) => return Ok(Err(e.to_string())),
    };
    if !class.semi_positive {
        return Ok(Err("the target is not semi-positive".into()));
    }
    if !class.ghost_rays.is_empty() && t.dim() > 0 {
        return Ok(Err(format!(
            "rays {:?} lie in no fixed point; the I-function depends on Novikov directions outside the Mori cone",
            class.ghost_rays.iter().map(|r| r + 1).collect::<Vec<_>>()
        )));
    }
    let i = match small_i(t, bound) {
        Ok(i) => i,
        Err(e @ (Error::EffectiveConeUnknown | Error::NotEffective(_))) => return Ok(Err(e.to_string())),
        Err(e) => return Err(e),
    };
    let parts = match extract_i0_i1(t, &i) {
        Ok(p) => p,
        Err(e @ (Error::NotSemiPositive(_) | Error::Inconsistent(_))) => return Ok(Err(e.to_string())),
        Err(e) => return Err(e),
    };
    if parts.i0.terms().any(|(b, c)| if b.is_zero() { !c.is_one() } else { !c.is_zero() }) {
        return Ok(Err("I_0 is not 1".into()));
    }
    Ok(Ok(Prepared { i, parts }))
}

/// `J(q, s, z)` at every fixed point for a shift `s` with zero constant term.
pub fn mirror_transform_j(t: &Toric, shift: &[Series], bound: i64) -> Result<Vec<Series>> {
    if shift.iter().any(|s| !s.constant_term().is_zero()) {
        return Err(Error::InvalidArgument("shift must have zero constant term".into()));
    }
    if shift.iter().all(|s| s.is_zero()) {
        return mirror_transformed_j(t, bound, None);
    }
    mirror_transformed_j(t, bound, Some(shift))
}

fn check_against_i(t: &Toric, i: &SmallIFunction, predicted: &[Series], keep: impl Fn(i64) -> bool + Sync, z_order: i64, bound: i64) -> Result<Vec<Cell>> {
    let classes: Vec<CurveClass> = t.effective_classes(bound)?.into_iter().filter(|b| keep(t.degree(b))).collect();
    let jobs: Vec<(usize, CurveClass)> =
        (0..predicted.len()).flat_map(|s| classes.iter().map(move |b| (s, b.clone()))).collect();
    jobs.par_iter()
        .map(|(s, b)| compare(t, sigma_name(t, *s), b, &i.per_sigma[*s].coeff(b), &predicted[*s].coeff(b), Some(z_order)))
        .collect()
}

/// `i_sigma^* I_beta = i_sigma^* [J(q, I_1, z)]_beta` for `d(beta) <= bound`.
pub fn verify_i_equals_j(t: &Toric, bound: i64, z_order: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let name = "i-equals-j";
    check_z_order(z_order)?;
    let p = match prepare(t, bound)? {
        Ok(p) => p,
        Err(reason) => return Ok(VerificationReport::unsupported(name, t.name(), bound, reason, start)),
    };
    let j = mirror_transform_j(t, &p.parts.i1, bound)?;
    let cells = check_against_i(t, &p.i, &j, |_| true, z_order, bound)?;
    Ok(VerificationReport::new(name, t.name(), bound, cells, start))
}

/// The predicted `J^eps = J_0^eps J^infty(q, J_1^eps / J_0^eps, z)` against
/// `I` in degrees `d(beta) <= min(bound, 1/eps)`.
pub fn verify_truncation_consistency(t: &Toric, eps: &Epsilon, bound: i64, z_order: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let name = "truncation";
    check_z_order(z_order)?;
    let p = match prepare(t, bound)? {
        Ok(p) => p,
        Err(reason) => return Ok(VerificationReport::unsupported(name, t.name(), bound, reason, start)),
    };
    let pair = truncate(&p.parts, eps);
    let shift = mirror_map(&pair)?;
    let j = mirror_transform_j(t, &shift, bound)?;
    let predicted: Vec<Series> = j.iter().map(|s| s.mul(&pair.j0)).collect::<Result<_>>()?;
    let cells = check_against_i(t, &p.i, &predicted, |d| eps.keeps(d), z_order, bound)?;
    Ok(VerificationReport::new(name, t.name(), bound, cells, start))
}

/// Every coefficient of `I` in non-zero degree is `O(1/z)`, so `I_0 = 1`.
pub fn verify_i0_lemma(t: &Toric, bound: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let name = "i0-lemma";
    let i = match small_i(t, bound) {
        Ok(i) => i,
        Err(e @ (Error::EffectiveConeUnknown | Error::NotEffective(_))) => {
            return Ok(VerificationReport::unsupported(name, t.name(), bound, e.to_string(), start))
        }
        Err(e) => return Err(e),
    };
    let mut cells = Vec::new();
    for (s, series) in i.per_sigma.iter().enumerate() {
        for b in t.effective_classes(bound)? {
            if b.is_zero() {
                continue;
            }
            let head = laurent_expand(&series.coeff(&b), t.zvar(), 0)?;
            let cell = if head.is_zero() {
                Cell::new(sigma_name(t, s), b.to_string(), Status::Pass, None)
            } else {
                Cell::new(sigma_name(t, s), b.to_string(), Status::Fail, Some(head.to_string_with(&t.var_names())))
            };
            cells.push(cell);
        }
    }
    Ok(VerificationReport::new(name, t.name(), bound, cells, start))
}

/// `(z + w) e_sigma e_sigma' V_{sigma sigma'} = sum_tau S_z(phi_tau)|_sigma S_w(phi_tau)|_sigma' / e_tau`.
pub fn verify_v_s(t: &Toric, bound: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let nfix = t.fixed_points().len();
    let v = v_operator(t, bound)?;
    let (zv, wv) = (t.zvar(), t.wvar());
    let s_z: Vec<Vec<Series>> =
        (0..nfix).map(|tau| s_operator_column(t, &point_class(t, tau), bound, zv)).collect::<Result<_>>()?;
    let s_w: Vec<Vec<Series>> =
        s_z.iter().map(|col| col.iter().map(|s| s.map(|c| c.swap_vars(zv, wv))).collect()).collect();
    let zw = RatFunc::from_poly(t.z().add(&t.w()));
    let classes = t.effective_classes(bound)?;
    let mut cells = Vec::new();
    for a in 0..nfix {
        for b in 0..nfix {
            let lhs = v[a][b].scale_by(&zw.mul(&t.euler(a)).mul(&t.euler(b)));
            let mut rhs = Series::zero(t.grading(), bound, &RatFunc::one(t.nvars()));
            for tau in 0..nfix {
                rhs = rhs.add(&s_z[tau][a].mul(&s_w[tau][b])?.scale_by(&t.euler_inv(tau)))?;
            }
            let label = format!("{}x{}", sigma_name(t, a), sigma_name(t, b));
            for beta in &classes {
                cells.push(compare(t, label.clone(), beta, &lhs.coeff(beta), &rhs.coeff(beta), None)?);
            }
        }
    }
    Ok(VerificationReport::new("v-s", t.name(), bound, cells, start))
}

fn check_z_order(z_order: i64) -> Result<()> {
    if z_order < 2 {
        return Err(Error::InvalidArgument(format!("z-order must be at least 2, got {z_order}")));
    }
    Ok(())
}

/// `(chi_top / 24) log J_0^eps`, a computed quantity that is not checked
/// against any genus-one computation.
#[derive(Clone, Debug)]
pub struct Genus1Shift {
    pub chi_top: usize,
    pub series: NovikovSeries<RatFunc>,
    pub verified: bool,
}

pub fn genus1_shift_from(j0: &NovikovSeries<RatFunc>, chi_top: usize) -> Result<Genus1Shift> {
    let series = j0.log()?.scale(&(Rat::from_integer((chi_top as i64).into()) / rat(24)));
    Ok(Genus1Shift { chi_top, series, verified: false })
}

pub fn genus1_shift(t: &Toric, eps: &Epsilon, bound: i64) -> Result<Genus1Shift> {
    let chi = t.classify()?.chi_top;
    let i = small_i(t, bound)?;
    let parts = extract_i0_i1(t, &i)?;
    let pair = truncate(&parts, eps);
    genus1_shift_from(&pair.j0, chi)
}
