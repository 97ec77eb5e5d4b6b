//! Generating series assembled from graph sums: the small J-function,
//! descendant invariants, and the S and V operators at `t = 0`.

use serde::Serialize;

use super::engine::{GraphSum, Leg, LegKind, Series};
use crate::error::{Error, Result};
use crate::exact::{CurveClass, MultiPoly, Rat, RatFunc};
use crate::toric::Toric;

/// The class equal to `1` at `sigma` and `0` at the other fixed points.
pub fn indicator(t: &Toric, sigma: usize) -> Vec<RatFunc> {
    let nv = t.nvars();
    (0..t.fixed_points().len()).map(|s| if s == sigma { RatFunc::one(nv) } else { RatFunc::zero(nv) }).collect()
}

/// The class `phi_sigma` restricting to `e(T_sigma)` at `sigma` only.
pub fn point_class(t: &Toric, sigma: usize) -> Vec<RatFunc> {
    let nv = t.nvars();
    (0..t.fixed_points().len()).map(|s| if s == sigma { t.euler(s) } else { RatFunc::zero(nv) }).collect()
}

/// The unit class.
pub fn unit_class(t: &Toric) -> Vec<RatFunc> {
    vec![RatFunc::one(t.nvars()); t.fixed_points().len()]
}

/// `c_1(L_rho)` as a class.
pub fn divisor_class(t: &Toric, rho: usize) -> Vec<RatFunc> {
    (0..t.fixed_points().len()).map(|s| RatFunc::from_poly(t.bundle_weight(s, rho).clone())).collect()
}

/// A polynomial in the classes `c_1(L_rho)`, restricted to every fixed point.
pub fn class_from_poly(t: &Toric, p: &MultiPoly) -> Result<Vec<RatFunc>> {
    (0..t.fixed_points().len())
        .map(|s| {
            let mut images: Vec<MultiPoly> = (0..t.nrays()).map(|rho| t.bundle_weight(s, rho).clone()).collect();
            images.push(t.z());
            images.push(t.w());
            RatFunc::from_poly(p.clone()).substitute(&images)
        })
        .collect()
}

/// Small J-function at every fixed point: `1 + (e_sigma / z) <1/(z - psi)>`.
pub fn small_j(t: &Toric, bound: i64) -> Result<Vec<Series>> {
    mirror_transformed_j(t, bound, None)
}

/// `1 + s/z + sum_m (1/m!) (e_sigma/z) <1/(z - psi), s, ..., s>` for a shift
/// `s` given by its restrictions; `None` is the small J-function.
pub fn mirror_transformed_j(t: &Toric, bound: i64, shift: Option<&[Series]>) -> Result<Vec<Series>> {
    let engine = GraphSum::new(t, bound, LegKind::Desc(t.zvar()), Vec::new(), shift)?;
    let roots = engine.root_sums()?;
    let nv = t.nvars();
    let z_inv = RatFunc::var(nv, t.zvar()).inv()?;
    let mut out = Vec::with_capacity(roots.len());
    for (sigma, r) in roots.into_iter().enumerate() {
        let mut j = r.scale_by(&t.euler(sigma).mul(&z_inv));
        j = j.add(&Series::one(t.grading(), bound, &RatFunc::one(nv)))?;
        if let Some(s) = shift {
            j = j.add(&s[sigma].truncate(bound).scale_by(&z_inv))?;
        }
        out.push(j);
    }
    Ok(out)
}

/// `i_sigma^* J_beta`.
pub fn small_j_restricted(t: &Toric, sigma: usize, beta: &CurveClass) -> Result<RatFunc> {
    if !t.is_effective(beta)? {
        return Err(Error::NotEffective(beta.to_string()));
    }
    if beta.is_zero() {
        return Ok(RatFunc::one(t.nvars()));
    }
    let bound = t.degree(beta);
    let engine = GraphSum::new(t, bound, LegKind::Desc(t.zvar()), Vec::new(), None)?;
    let r = engine.root_sum(sigma)?;
    let z_inv = RatFunc::var(t.nvars(), t.zvar()).inv()?;
    Ok(r.coeff(beta).mul(&t.euler(sigma)).mul(&z_inv))
}

/// An insertion `tau_psi(class)`.
#[derive(Clone, Debug)]
pub struct Insertion {
    pub class: Vec<RatFunc>,
    pub psi: u32,
}

impl Insertion {
    pub fn new(class: Vec<RatFunc>, psi: u32) -> Self {
        Insertion { class, psi }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GwInvariant {
    pub genus: u32,
    pub psi: Vec<u32>,
    pub beta: CurveClass,
    #[serde(skip)]
    pub value: RatFunc,
}

/// `sum_beta q^beta <legs>_{0,k,beta}` for `d(beta) <= bound`, omitting
/// unstable degree-zero terms. The first leg roots the trees.
pub fn descendant_series(t: &Toric, legs: &[Leg], bound: i64) -> Result<Series> {
    shifted_descendant_series(t, legs, bound, None)
}

/// `sum_m (1/m!) <legs, s, ..., s>` with `m` copies of a shift class `s`
/// of positive Novikov degree, given by its restrictions.
pub fn shifted_descendant_series(t: &Toric, legs: &[Leg], bound: i64, shift: Option<&[Series]>) -> Result<Series> {
    let Some((first, rest)) = legs.split_first() else {
        return Err(Error::InvalidArgument("at least one marking is required".into()));
    };
    let engine = GraphSum::new(t, bound, first.kind.clone(), rest.to_vec(), shift)?;
    let roots = engine.root_sums()?;
    let mut total = Series::zero(t.grading(), bound, &RatFunc::one(t.nvars()));
    for (sigma, r) in roots.iter().enumerate() {
        if first.class[sigma].is_zero() {
            continue;
        }
        total = total.add(&r.scale_by(&first.class[sigma]))?;
    }
    Ok(total)
}

/// `<tau_{a_1} gamma_1 ... tau_{a_k} gamma_k>_{0,k,beta}`.
pub fn descendant_invariant(t: &Toric, insertions: &[Insertion], beta: &CurveClass) -> Result<GwInvariant> {
    if beta.is_zero() && insertions.len() < 3 {
        return Err(Error::Unstable(format!("(g, k, beta) = (0, {}, 0)", insertions.len())));
    }
    if !t.is_effective(beta)? {
        return Err(Error::NotEffective(beta.to_string()));
    }
    let legs: Vec<Leg> = insertions.iter().map(|i| Leg { kind: LegKind::Psi(i.psi), class: i.class.clone() }).collect();
    let s = descendant_series(t, &legs, t.degree(beta))?;
    Ok(GwInvariant {
        genus: 0,
        psi: insertions.iter().map(|i| i.psi).collect(),
        beta: beta.clone(),
        value: s.coeff(beta),
    })
}

/// `S(gamma)|_sigma = gamma|_sigma + e_sigma <ind_sigma/(z - psi), gamma>` in
/// the variable with index `var` (normally `z`).
pub fn s_operator_column(t: &Toric, gamma: &[RatFunc], bound: i64, var: usize) -> Result<Vec<Series>> {
    let leg = Leg { kind: LegKind::Psi(0), class: gamma.to_vec() };
    let engine = GraphSum::new(t, bound, LegKind::Desc(var), vec![leg], None)?;
    let roots = engine.root_sums()?;
    let mut out = Vec::with_capacity(roots.len());
    for (sigma, r) in roots.into_iter().enumerate() {
        let base = Series::constant(t.grading(), bound, gamma[sigma].clone());
        out.push(base.add(&r.scale_by(&t.euler(sigma)))?);
    }
    Ok(out)
}

/// `V[sigma][sigma'] = <ind_sigma/(z - psi), ind_sigma'/(w - psi)>` with the
/// degree-zero term `delta_{sigma sigma'} / (e_sigma (z + w))`.
pub fn v_operator(t: &Toric, bound: i64) -> Result<Vec<Vec<Series>>> {
    let nfix = t.fixed_points().len();
    let nv = t.nvars();
    let zw = t.z().add(&t.w());
    let mut cols: Vec<Vec<Series>> = Vec::with_capacity(nfix);
    for sp in 0..nfix {
        let leg = Leg { kind: LegKind::Desc(t.wvar()), class: indicator(t, sp) };
        let engine = GraphSum::new(t, bound, LegKind::Desc(t.zvar()), vec![leg], None)?;
        cols.push(engine.root_sums()?);
    }
    let mut out = vec![Vec::with_capacity(nfix); nfix];
    for (sigma, row) in out.iter_mut().enumerate() {
        for (sp, col) in cols.iter().enumerate() {
            let mut v = col[sigma].clone();
            if sigma == sp {
                let c = RatFunc::from_product(nv, Rat::from_integer(1.into()), &[(zw.clone(), -1)])?.mul(&t.euler_inv(sigma));
                v = v.add(&Series::constant(t.grading(), bound, c))?;
            }
            row.push(v);
        }
    }
    Ok(out)
}
