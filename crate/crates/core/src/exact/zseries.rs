//! Truncated expansions in `1/z` with rational-function coefficients.

use std::collections::BTreeMap;

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::{Error, Rat};

/// `sum_k c_k z^{-k}` for `k <= order`; coefficients do not involve `z`.
///
/// Keys are powers of `1/z`, so a negative key is a positive power of `z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZSeries {
    nvars: usize,
    zvar: usize,
    order: i64,
    coeffs: BTreeMap<i64, RatFunc>,
}

impl ZSeries {
    pub fn zero(nvars: usize, zvar: usize, order: i64) -> Self {
        ZSeries { nvars, zvar, order, coeffs: BTreeMap::new() }
    }

    /// The constant series `c` (which must not involve `z`).
    pub fn constant(c: RatFunc, zvar: usize, order: i64) -> Self {
        let mut s = Self::zero(c.nvars(), zvar, order);
        s.set(0, c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn zvar(&self) -> usize {
        self.zvar
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^{-k}`.
    pub fn coeff(&self, k: i64) -> RatFunc {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| RatFunc::zero(self.nvars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFunc)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn set(&mut self, k: i64, c: RatFunc) {
        debug_assert!(!c.involves(self.zvar), "coefficient involves z");
        if k > self.order || c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    fn add_at(&mut self, k: i64, c: RatFunc) {
        if k > self.order || c.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&k) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(k, v);
        }
    }

    /// Smallest key present, i.e. the highest power of `z`.
    pub fn min_key(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// True when no term `z^m` with `m >= 0` is present.
    pub fn strictly_negative(&self) -> bool {
        self.min_key().is_none_or(|k| k >= 1)
    }

    pub fn truncate(&self, order: i64) -> ZSeries {
        let order = order.min(self.order);
        ZSeries {
            nvars: self.nvars,
            zvar: self.zvar,
            order,
            coeffs: self.coeffs.range(..=order).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &ZSeries) -> ZSeries {
        let mut out = self.truncate(self.order.min(other.order));
        for (k, c) in &other.coeffs {
            out.add_at(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> ZSeries {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> ZSeries {
        let mut out = ZSeries::zero(self.nvars, self.zvar, self.order);
        for (k, v) in &self.coeffs {
            out.set(*k, v.mul(c));
        }
        out
    }

    /// Product truncated at the order each factor can certify: a term of the
    /// product at key `k` needs `a` known to `k - min_key(b)` and vice versa.
    pub fn mul(&self, other: &ZSeries) -> ZSeries {
        let ma = self.min_key().unwrap_or(0);
        let mb = other.min_key().unwrap_or(0);
        let order = (self.order + mb).min(other.order + ma);
        let mut out = ZSeries::zero(self.nvars, self.zvar, order);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in other.coeffs.range(..=order - ka) {
                out.add_at(ka + kb, ca.mul(cb));
            }
        }
        out
    }

    /// The finite sum as an exact rational function of `z`.
    pub fn to_ratfunc(&self) -> RatFunc {
        let z = MultiPoly::var(self.nvars, self.zvar);
        let mut acc = RatFunc::zero(self.nvars);
        for (k, c) in &self.coeffs {
            let zp = RatFunc::from_poly(z.pow(k.unsigned_abs() as u32));
            let term = if *k <= 0 { c.mul(&zp) } else { c.div(&zp).expect("z is non-zero") };
            acc = acc.add(&term);
        }
        acc
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.coeffs.is_empty() {
            return format!("0 + O(z^-{})", self.order + 1);
        }
        let z = &names[self.zvar];
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let cs = c.to_string_with(names);
                match k {
                    0 => cs,
                    _ => format!("({cs})*{z}^{}", -k),
                }
            })
            .collect();
        format!("{} + O({z}^-{})", parts.join(" + "), self.order + 1)
    }
}

/// Expand `f` at `z = infinity` through the term `z^{-order}`.
pub fn laurent_expand(f: &RatFunc, zvar: usize, order: i64) -> Result<ZSeries, Error> {
    let nv = f.nvars();
    if zvar >= nv {
        return Err(Error::NotExpandable(format!("no indeterminate with index {zvar}")));
    }
    let num_coeffs = f.numerator().coefficients_in(zvar);
    let num_deg = num_coeffs.len() as i64 - 1;

    let mut z_free = RatFunc::one(nv);
    let mut inverse_factors: Vec<(Vec<MultiPoly>, u32)> = Vec::new();
    for (g, e) in f.denominator_factors() {
        if g.involves(zvar) {
            inverse_factors.push((g.coefficients_in(zvar), *e));
        } else {
            z_free = z_free.mul(&RatFunc::from_product(nv, Rat::from_integer(1.into()), &[(g.clone(), -(*e as i32))])?);
        }
    }
    let min_total: i64 = -num_deg
        + inverse_factors.iter().map(|(c, e)| (c.len() as i64 - 1) * *e as i64).sum::<i64>();

    // Each piece is needed only through `order - (min_total - own min key)`.
    let mut acc = ZSeries::zero(nv, zvar, order - min_total - num_deg);
    for (k, c) in num_coeffs.iter().enumerate() {
        acc.set(-(k as i64), RatFunc::from_poly(c.clone()).mul(&z_free));
    }
    for (coeffs, e) in &inverse_factors {
        let m = coeffs.len() as i64 - 1;
        for _ in 0..*e {
            let precision = order - (min_total - m);
            let inv = inverse_series(coeffs, zvar, nv, precision)?;
            acc = acc.mul(&inv);
        }
    }
    Ok(acc.truncate(order))
}

/// `1/g` for `g = sum_k g_k z^k` of z-degree `m`, through key `precision`.
fn inverse_series(coeffs: &[MultiPoly], zvar: usize, nv: usize, precision: i64) -> Result<ZSeries, Error> {
    let m = coeffs.len() as i64 - 1;
    let lead = RatFunc::from_poly(coeffs[m as usize].clone());
    let lead_inv = lead.inv().map_err(|_| Error::NotExpandable("vanishing leading coefficient in z".into()))?;
    // 1/g = z^{-m}/g_m * sum_j c_j t^j with t = 1/z, c_0 = 1 and
    // c_j = -sum_{i=1..min(j,m)} u_i c_{j-i}, u_i = g_{m-i}/g_m.
    let u: Vec<RatFunc> = (1..=m as usize)
        .map(|i| RatFunc::from_poly(coeffs[m as usize - i].clone()).mul(&lead_inv))
        .collect();
    let steps = (precision - m).max(-1);
    let mut c: Vec<RatFunc> = Vec::with_capacity((steps + 1).max(0) as usize);
    let mut out = ZSeries::zero(nv, zvar, precision);
    for j in 0..=steps {
        let cj = if j == 0 {
            RatFunc::one(nv)
        } else {
            let mut s = RatFunc::zero(nv);
            for i in 1..=(j as usize).min(m as usize) {
                if !u[i - 1].is_zero() && !c[j as usize - i].is_zero() {
                    s = s.add(&u[i - 1].mul(&c[j as usize - i]));
                }
            }
            s.neg()
        };
        out.set(m + j, cj.mul(&lead_inv));
        c.push(cj);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    // Ring (l1, psi, z).
    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn geometric_series() {
        let f = RatFunc::new(MultiPoly::one(3), v(2).sub(&v(0))).unwrap();
        let s = laurent_expand(&f, 2, 3).unwrap();
        assert_eq!(s.coeff(1), RatFunc::one(3));
        assert_eq!(s.coeff(2), RatFunc::var(3, 0));
        assert_eq!(s.coeff(3), RatFunc::from_poly(v(0).mul(&v(0))));
        assert_eq!(s.terms().count(), 3);
    }

    #[test]
    fn z_over_z_is_one() {
        let f = RatFunc::new(v(2), v(2)).unwrap();
        let s = laurent_expand(&f, 2, 5).unwrap();
        assert_eq!(s, ZSeries::constant(RatFunc::one(3), 2, 5));
    }

    #[test]
    fn double_pole_with_nilpotent_placeholder() {
        let den = v(2).mul(&v(2).sub(&v(1)));
        let f = RatFunc::new(MultiPoly::one(3), den).unwrap();
        let s = laurent_expand(&f, 2, 4).unwrap();
        assert_eq!(s.coeff(2), RatFunc::one(3));
        assert_eq!(s.coeff(3), RatFunc::var(3, 1));
        assert_eq!(s.coeff(4), RatFunc::from_poly(v(1).mul(&v(1))));
        assert!(s.coeff(1).is_zero());
    }

    #[test]
    fn positive_powers_and_lambda_denominators() {
        // (z^2 + l1) / (2 l1 (z + 1)) = z/(2 l1) - 1/(2 l1) + (l1+1)/(2 l1) z^-1 + ...
        let num = v(2).mul(&v(2)).add(&v(0));
        let den = v(0).scale(&rat(2)).mul(&v(2).add(&MultiPoly::one(3)));
        let f = RatFunc::new(num, den).unwrap();
        let s = laurent_expand(&f, 2, 2).unwrap();
        let inv2l = RatFunc::new(MultiPoly::one(3), v(0).scale(&rat(2))).unwrap();
        assert_eq!(s.coeff(-1), inv2l);
        assert_eq!(s.coeff(0), inv2l.neg());
        assert_eq!(s.coeff(1), inv2l.mul_poly(&v(0).add(&MultiPoly::one(3))));
        assert!(!s.strictly_negative());
    }

    #[test]
    fn truncation_is_compatible_with_products() {
        let a = laurent_expand(&RatFunc::new(MultiPoly::one(3), v(2).sub(&v(0))).unwrap(), 2, 6).unwrap();
        let b = laurent_expand(&RatFunc::new(v(2), v(2).add(&v(1))).unwrap(), 2, 6).unwrap();
        let full = a.mul(&b).truncate(4);
        let trunc = a.truncate(4).mul(&b.truncate(4)).truncate(4);
        assert_eq!(full, trunc);
    }
}
