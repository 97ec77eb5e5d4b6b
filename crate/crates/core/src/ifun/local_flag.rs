//! Small I-function of the total space of the canonical bundle over
//! `Grass(r, n)`, evaluated at torus-fixed points.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{rat, CurveClass, Grading, MultiPoly, NovikovSeries, Rat, RatFunc};

/// Ring layout: `l0` (fiber scaling), `l1..ln`, then `z`.
#[derive(Clone, Debug)]
pub struct LocalFlagI {
    pub r: usize,
    pub n: usize,
    /// Each fixed point is the set `{j_1 < ... < j_r}` with `H_i = -l_{j_i}`.
    pub fixed_points: Vec<Vec<usize>>,
    pub series: Vec<NovikovSeries<RatFunc>>,
}

impl LocalFlagI {
    pub fn nvars(&self) -> usize {
        self.n + 2
    }

    pub fn zvar(&self) -> usize {
        self.n + 1
    }

    pub fn var_names(&self) -> Vec<String> {
        let mut v: Vec<String> = (0..=self.n).map(|i| format!("l{i}")).collect();
        v.push("z".into());
        v
    }
}

fn compositions(d: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in compositions(d - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in k..=n {
        for mut s in subsets(last - 1, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

pub fn local_flag_i(r: usize, n: usize, d_max: i64) -> Result<LocalFlagI> {
    if r == 0 || r > n {
        return Err(Error::InvalidArgument(format!("need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    if n + 2 > crate::exact::MAX_VARS {
        return Err(Error::InvalidArgument(format!("n = {n} is too large")));
    }
    let nv = n + 2;
    let lam = |j: usize| MultiPoly::var(nv, j);
    let z = MultiPoly::var(nv, n + 1);
    let fixed_points = subsets(n, r);
    let mut series = Vec::with_capacity(fixed_points.len());
    for js in &fixed_points {
        let h: Vec<MultiPoly> = js.iter().map(|&j| lam(j).neg()).collect();
        let sum_h = h.iter().fold(MultiPoly::zero(nv), |a, b| a.add(b));
        let mut s = NovikovSeries::one(Grading::new(vec![1]), d_max, &RatFunc::one(nv));
        for d in 1..=d_max.max(0) as usize {
            let mut fiber: Vec<(MultiPoly, i32)> = Vec::new();
            for k in 0..n * d {
                let f = sum_h.scale(&rat(-(n as i64))).add(&lam(0)).sub(&z.scale(&rat(k as i64)));
                fiber.push((f, 1));
            }
            let sign = if ((r - 1) * d).is_multiple_of(2) { Rat::one() } else { -Rat::one() };
            let mut total = RatFunc::zero(nv);
            for ds in compositions(d, r) {
                let mut factors: Vec<(MultiPoly, i32)> = Vec::new();
                for i in 0..r {
                    for j in i + 1..r {
                        let dz = z.scale(&rat(ds[i] as i64 - ds[j] as i64));
                        factors.push((h[i].sub(&h[j]).add(&dz), 1));
                        factors.push((h[i].sub(&h[j]), -1));
                    }
                    for l in 1..=ds[i] {
                        for j in 1..=n {
                            factors.push((h[i].add(&lam(j)).add(&z.scale(&rat(l as i64))), -1));
                        }
                    }
                }
                total = total.add(&RatFunc::from_product(nv, sign.clone(), &factors)?);
            }
            let coeff = total.mul(&RatFunc::from_product(nv, Rat::one(), &fiber)?);
            s.insert(CurveClass(vec![d as i64]), coeff)?;
        }
        series.push(s);
    }
    Ok(LocalFlagI { r, n, fixed_points, series })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_point_closed_form() {
        let f = local_flag_i(1, 1, 3).unwrap();
        assert_eq!(f.fixed_points, vec![vec![1]]);
        let nv = f.nvars();
        let z = MultiPoly::var(nv, 2);
        let base = MultiPoly::var(nv, 0).add(&MultiPoly::var(nv, 1));
        for d in 0..=3i64 {
            let mut factors = Vec::new();
            for k in 0..d {
                factors.push((base.sub(&z.scale(&rat(k))), 1));
                factors.push((z.scale(&rat(k + 1)), -1));
            }
            let expect = RatFunc::from_product(nv, Rat::one(), &factors).unwrap();
            assert_eq!(f.series[0].coeff(&CurveClass(vec![d])), expect);
        }
    }

    #[test]
    fn rejects_bad_rank() {
        assert!(local_flag_i(4, 3, 1).is_err());
        assert!(local_flag_i(0, 3, 1).is_err());
    }

    #[test]
    fn grassmannian_fixed_points() {
        let f = local_flag_i(2, 4, 1).unwrap();
        assert_eq!(f.fixed_points.len(), 6);
        for s in &f.series {
            let c = s.coeff(&CurveClass(vec![1]));
            assert!(!c.is_zero());
            assert_eq!(c.homogeneous_degree(), Some(0));
        }
    }
}
