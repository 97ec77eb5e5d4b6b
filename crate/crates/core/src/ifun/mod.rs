//! Closed formulas on the quasimap side: the equivariant small I-function of
//! a toric presentation, its `z^0` and `z^{-1}` parts, epsilon truncations,
//! the mirror map, and the local Grassmannian I-function.

mod epsilon;
mod local_flag;

pub use epsilon::Epsilon;
pub use local_flag::{local_flag_i, LocalFlagI};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{laurent_expand, rat, solve_rational, CurveClass, Monomial, MultiPoly, NovikovSeries, Rat, RatFunc};
use crate::toric::Toric;

/// `i_sigma^* I_beta` from the product formula.
pub fn small_i_restricted(t: &Toric, sigma: usize, beta: &CurveClass) -> Result<RatFunc> {
    if !t.is_effective(beta)? {
        return Err(Error::NotEffective(beta.to_string()));
    }
    Ok(i_factor(t, sigma, beta))
}

/// The product formula without the effectivity check.
pub(crate) fn i_factor(t: &Toric, sigma: usize, beta: &CurveClass) -> RatFunc {
    let nv = t.nvars();
    let z = t.z();
    let mut factors: Vec<(MultiPoly, i32)> = Vec::new();
    for (rho, d) in t.pairings(beta).into_iter().enumerate() {
        let w = t.bundle_weight(sigma, rho);
        if d > 0 {
            for j in 1..=d {
                factors.push((w.add(&z.scale(&rat(j))), -1));
            }
        } else if d < 0 {
            for j in d + 1..=0 {
                let f = w.add(&z.scale(&rat(j)));
                if f.is_zero() {
                    return RatFunc::zero(nv);
                }
                factors.push((f, 1));
            }
        }
    }
    RatFunc::from_product(nv, Rat::one(), &factors).expect("denominator factors have a z term")
}

/// Restrictions of the small I-function to every fixed point, through degree `bound`.
#[derive(Clone, Debug)]
pub struct SmallIFunction {
    pub bound: i64,
    pub per_sigma: Vec<NovikovSeries<RatFunc>>,
}

pub fn small_i(t: &Toric, bound: i64) -> Result<SmallIFunction> {
    let classes = t.effective_classes(bound)?;
    let nv = t.nvars();
    let per_sigma = (0..t.fixed_points().len())
        .into_par_iter()
        .map(|sigma| {
            let mut s = NovikovSeries::one(t.grading(), bound, &RatFunc::one(nv));
            for beta in classes.iter().filter(|b| !b.is_zero()) {
                s.insert(beta.clone(), i_factor(t, sigma, beta))?;
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SmallIFunction { bound, per_sigma })
}

/// The `z^0` part `I_0` (a series in `q` alone) and the per-fixed-point
/// `z^{-1}` part `I_1`.
#[derive(Clone, Debug)]
pub struct IParts {
    pub i0: NovikovSeries<RatFunc>,
    pub i1: Vec<NovikovSeries<RatFunc>>,
}

pub fn extract_i0_i1(t: &Toric, i: &SmallIFunction) -> Result<IParts> {
    let nv = t.nvars();
    let zvar = t.zvar();
    let mut i0_per: Vec<NovikovSeries<RatFunc>> = Vec::new();
    let mut i1 = Vec::new();
    for (sigma, series) in i.per_sigma.iter().enumerate() {
        let mut s0 = NovikovSeries::one(t.grading(), i.bound, &RatFunc::one(nv));
        let mut s1 = NovikovSeries::zero(t.grading(), i.bound, &RatFunc::one(nv));
        for (beta, c) in series.terms() {
            if beta.is_zero() {
                continue;
            }
            let e = laurent_expand(c, zvar, 1)?;
            if let Some(k) = e.min_key() {
                if k < 0 {
                    return Err(Error::NotSemiPositive(format!(
                        "coefficient of q^{beta} at fixed point {:?} has a z^{} term",
                        t.sigma_label(sigma),
                        -k
                    )));
                }
            }
            s0.insert(beta.clone(), e.coeff(0))?;
            s1.insert(beta.clone(), e.coeff(1))?;
        }
        i0_per.push(s0);
        i1.push(s1);
    }
    let i0 = i0_per[0].clone();
    if i0_per.iter().any(|s| *s != i0) {
        return Err(Error::Inconsistent("I_0 depends on the fixed point".into()));
    }
    for (beta, c) in i0.terms() {
        if c.involves(t.zvar()) || c.involves(t.wvar()) {
            return Err(Error::Inconsistent(format!("I_0 coefficient of q^{beta} involves z")));
        }
    }
    Ok(IParts { i0, i1 })
}

/// `(J_0^eps, J_1^eps)`: the parts of `(I_0, I_1)` in degrees `d <= 1/eps`.
#[derive(Clone, Debug)]
pub struct TruncationPair {
    pub epsilon: Epsilon,
    pub j0: NovikovSeries<RatFunc>,
    pub j1: Vec<NovikovSeries<RatFunc>>,
}

pub fn truncate(parts: &IParts, eps: &Epsilon) -> TruncationPair {
    let keep = |d: i64| eps.keeps(d);
    TruncationPair {
        epsilon: eps.clone(),
        j0: parts.i0.filter_degrees(keep),
        j1: parts.i1.iter().map(|s| s.filter_degrees(keep)).collect(),
    }
}

/// `J_1^eps / J_0^eps` at every fixed point.
pub fn mirror_map(pair: &TruncationPair) -> Result<Vec<NovikovSeries<RatFunc>>> {
    let inv = pair.j0.inv()?;
    pair.j1.iter().map(|s| s.mul(&inv)).collect()
}

/// Coefficients `(a_0, a_1, ..., a_N)` with
/// `I_1|_sigma = a_0 + sum_rho a_rho c_1(L_rho)|_sigma` for all sigma at once.
#[derive(Clone, Debug)]
pub struct I1Lift {
    pub terms: Vec<(CurveClass, Vec<Rat>)>,
}

/// Solve for a single class of degree at most 2 restricting to `I_1` at
/// every fixed point; fails if none exists.
pub fn i1_global_lift(t: &Toric, i1: &[NovikovSeries<RatFunc>]) -> Result<I1Lift> {
    let nr = t.nrays();
    let mut classes: Vec<CurveClass> = Vec::new();
    for s in i1 {
        for (b, _) in s.terms() {
            if !b.is_zero() && !classes.contains(b) {
                classes.push(b.clone());
            }
        }
    }
    classes.sort();
    let monomials: Vec<Monomial> =
        std::iter::once(Monomial::ONE).chain((0..nr).map(Monomial::var)).collect();
    let mut out = Vec::new();
    for beta in classes {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (sigma, s) in i1.iter().enumerate() {
            let c = s.coeff(&beta);
            if !c.is_polynomial() {
                return Err(Error::Unsupported(format!(
                    "I_1 coefficient of q^{beta} is not polynomial at fixed point {:?}",
                    t.sigma_label(sigma)
                )));
            }
            let p = c.numerator();
            if p.total_degree().unwrap_or(0) > 1 || p.involves(t.zvar()) || p.involves(t.wvar()) {
                return Err(Error::Unsupported(format!("I_1 coefficient of q^{beta} is not of degree <= 2")));
            }
            for m in &monomials {
                let mut row = vec![Rat::zero(); nr + 1];
                row[0] = if *m == Monomial::ONE { Rat::one() } else { Rat::zero() };
                for rho in 0..nr {
                    row[rho + 1] = t.bundle_weight(sigma, rho).coeff(m);
                }
                rows.push(row);
                rhs.push(p.coeff(m));
            }
        }
        let a = solve_rational(&rows, &rhs).ok_or_else(|| {
            Error::Unsupported(format!("no global class of degree <= 2 restricts to I_1 in degree {beta}"))
        })?;
        out.push((beta, a));
    }
    Ok(I1Lift { terms: out })
}

impl I1Lift {
    /// Restriction of the lifted class to a fixed point, as a Novikov series.
    pub fn restrict(&self, t: &Toric, sigma: usize, bound: i64) -> Result<NovikovSeries<RatFunc>> {
        let nv = t.nvars();
        let mut s = NovikovSeries::zero(t.grading(), bound, &RatFunc::one(nv));
        for (beta, a) in &self.terms {
            let mut p = MultiPoly::constant(nv, a[0].clone());
            for (rho, c) in a.iter().enumerate().skip(1) {
                p = p.add(&t.bundle_weight(sigma, rho - 1).scale(c));
            }
            s.insert(beta.clone(), RatFunc::from_poly(p))?;
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::factorial;

    #[test]
    fn p1_degree_one() {
        let t = Toric::preset("p1").unwrap();
        let s = t.fixed_point_index(&[0]).unwrap();
        let v = small_i_restricted(&t, s, &CurveClass(vec![1])).unwrap();
        let den = t.z().mul(&t.lambda(0).sub(&t.lambda(1)).add(&t.z()));
        assert_eq!(v, RatFunc::new(MultiPoly::one(t.nvars()), den).unwrap());
        assert!(small_i_restricted(&t, s, &CurveClass(vec![-1])).is_err());
    }

    #[test]
    fn point_is_exponential() {
        let t = Toric::preset("point").unwrap();
        let i = small_i(&t, 4).unwrap();
        for d in 0..=4u32 {
            let zd = RatFunc::from_poly(t.z().pow(d));
            let expect = zd.scale(&factorial(d)).inv().unwrap();
            assert_eq!(i.per_sigma[0].coeff(&CurveClass(vec![d as i64])), expect);
        }
        let parts = extract_i0_i1(&t, &i).unwrap();
        assert!(parts.i0.terms().all(|(b, c)| if b.is_zero() { c.is_one() } else { c.is_zero() }));
        assert_eq!(parts.i1[0].coeff(&CurveClass(vec![1])), RatFunc::one(t.nvars()));
        assert_eq!(parts.i1[0].terms().filter(|(_, c)| !c.is_zero()).count(), 1);
    }

    #[test]
    fn truncation_cutoffs() {
        let t = Toric::preset("point").unwrap();
        let parts = extract_i0_i1(&t, &small_i(&t, 3).unwrap()).unwrap();
        let inf = truncate(&parts, &Epsilon::Infinity);
        assert!(inf.j1[0].is_zero());
        let one = truncate(&parts, &Epsilon::Finite(rat(1)));
        assert_eq!(mirror_map(&one).unwrap()[0].coeff(&CurveClass(vec![1])), RatFunc::one(t.nvars()));
    }

    #[test]
    fn non_semi_positive_is_reported() {
        // Local P^1 with O(-3): sum of degrees on the line is -1.
        let t = Toric::from_json(r#"{"n":2,"r":1,"weights":[[1,1,-3]],"theta":[1]}"#).unwrap();
        let i = small_i(&t, 2).unwrap();
        assert!(matches!(extract_i0_i1(&t, &i), Err(Error::NotSemiPositive(_))));
    }
}
