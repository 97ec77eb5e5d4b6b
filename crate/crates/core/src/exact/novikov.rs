//! Degree-truncated series in Novikov variables `q^beta`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ratfunc::RatFunc;
use super::zseries::ZSeries;
use super::{Error, Rat};

/// Coefficient rings usable in a [`NovikovSeries`].
pub trait Coeff: Clone + PartialEq + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
    fn inv(&self) -> Result<Self, Error>;
    fn describe(&self) -> String;

    fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }
}

impl Coeff for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rat) -> Self {
        self * c
    }
    fn inv(&self) -> Result<Self, Error> {
        if Zero::is_zero(self) {
            return Err(Error::NotInvertible("zero constant term".into()));
        }
        Ok(self.recip())
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

impl Coeff for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn scale(&self, c: &Rat) -> Self {
        RatFunc::scale(self, c)
    }
    fn inv(&self) -> Result<Self, Error> {
        RatFunc::inv(self).map_err(|_| Error::NotInvertible("zero constant term".into()))
    }
    fn describe(&self) -> String {
        self.to_string()
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
}

impl Coeff for ZSeries {
    fn zero_like(&self) -> Self {
        ZSeries::zero(self.nvars(), self.zvar(), self.order())
    }
    fn one_like(&self) -> Self {
        ZSeries::constant(RatFunc::one(self.nvars()), self.zvar(), self.order())
    }
    fn is_zero(&self) -> bool {
        ZSeries::is_zero(self)
    }
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
    fn add(&self, other: &Self) -> Self {
        ZSeries::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        ZSeries::mul(self, other)
    }
    fn scale(&self, c: &Rat) -> Self {
        ZSeries::scale(self, &RatFunc::constant(self.nvars(), c.clone()))
    }
    fn inv(&self) -> Result<Self, Error> {
        match self.terms().collect::<Vec<_>>().as_slice() {
            [(0, c)] => Ok(ZSeries::constant(c.inv()?, self.zvar(), self.order())),
            _ => Err(Error::NotInvertible("only constant 1/z-series are inverted".into())),
        }
    }
    fn describe(&self) -> String {
        self.to_string_with(&super::MultiPoly::default_names(self.nvars()))
    }
    fn neg(&self) -> Self {
        ZSeries::neg(self)
    }
}

/// A curve class as an integer vector in the chosen character basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass(pub Vec<i64>);

impl CurveClass {
    pub fn zero(r: usize) -> Self {
        CurveClass(vec![0; r])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn times(&self, k: i64) -> CurveClass {
        CurveClass(self.0.iter().map(|a| a * k).collect())
    }

    /// Pairing with a character given in the same basis.
    pub fn pair(&self, chi: &[i64]) -> i64 {
        self.0.iter().zip(chi).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The polarization `theta` giving the degree `d(beta) = beta . theta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grading {
    pub theta: Vec<i64>,
}

impl Grading {
    pub fn new(theta: Vec<i64>) -> Self {
        Grading { theta }
    }

    pub fn rank(&self) -> usize {
        self.theta.len()
    }

    pub fn degree(&self, beta: &CurveClass) -> i64 {
        beta.pair(&self.theta)
    }
}

/// `sum_beta c_beta q^beta` over classes with `d(beta) <= bound`.
///
/// The `beta = 0` entry is always stored; other zero coefficients are not.
#[derive(Clone, PartialEq)]
pub struct NovikovSeries<C: Coeff> {
    grading: Grading,
    bound: i64,
    terms: BTreeMap<CurveClass, C>,
}

impl<C: Coeff> NovikovSeries<C> {
    /// The series with constant term `c` and nothing else.
    pub fn constant(grading: Grading, bound: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(CurveClass::zero(grading.rank()), c);
        NovikovSeries { grading, bound, terms }
    }

    pub fn zero(grading: Grading, bound: i64, proto: &C) -> Self {
        Self::constant(grading, bound, proto.zero_like())
    }

    pub fn one(grading: Grading, bound: i64, proto: &C) -> Self {
        Self::constant(grading, bound, proto.one_like())
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn degree(&self, beta: &CurveClass) -> i64 {
        self.grading.degree(beta)
    }

    /// Set the coefficient of `q^beta`; classes beyond the bound are ignored.
    pub fn insert(&mut self, beta: CurveClass, c: C) -> Result<(), Error> {
        if beta.rank() != self.grading.rank() {
            return Err(Error::GradingMismatch);
        }
        let d = self.degree(&beta);
        if beta.is_zero() {
            self.terms.insert(beta, c);
            return Ok(());
        }
        if d <= 0 {
            return Err(Error::NotEffective(format!("{beta} has degree {d}")));
        }
        if d > self.bound {
            return Ok(());
        }
        if c.is_zero() {
            self.terms.remove(&beta);
        } else {
            self.terms.insert(beta, c);
        }
        Ok(())
    }

    fn accumulate(&mut self, beta: CurveClass, c: C) {
        if c.is_zero() && !beta.is_zero() {
            return;
        }
        if self.degree(&beta) > self.bound {
            return;
        }
        let v = match self.terms.remove(&beta) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() || beta.is_zero() {
            self.terms.insert(beta, v);
        }
    }

    pub fn constant_term(&self) -> &C {
        self.terms.get(&CurveClass::zero(self.grading.rank())).expect("constant term is stored")
    }

    pub fn get(&self, beta: &CurveClass) -> Option<&C> {
        self.terms.get(beta)
    }

    pub fn coeff(&self, beta: &CurveClass) -> C {
        self.terms.get(beta).cloned().unwrap_or_else(|| self.constant_term().zero_like())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurveClass, &C)> {
        self.terms.iter()
    }

    /// True when every coefficient (including the constant) vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.grading != other.grading {
            return Err(Error::GradingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = self.truncate(self.bound.min(other.bound));
        for (b, c) in &other.terms {
            out.accumulate(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = NovikovSeries { grading: self.grading.clone(), bound: self.bound, terms: BTreeMap::new() };
        for (b, c) in &self.terms {
            out.accumulate(b.clone(), f(c));
        }
        out
    }

    /// Convert coefficients into another ring.
    pub fn map_into<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NovikovSeries<D> {
        let mut out = NovikovSeries { grading: self.grading.clone(), bound: self.bound, terms: BTreeMap::new() };
        for (b, c) in &self.terms {
            out.accumulate(b.clone(), f(c));
        }
        out
    }

    /// Graded convolution, truncated at the smaller bound.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let bound = self.bound.min(other.bound);
        let zero = self.constant_term().zero_like();
        let mut out = Self::zero(self.grading.clone(), bound, &zero);
        for (ba, ca) in &self.terms {
            let da = self.degree(ba);
            if da > bound || ca.is_zero() {
                continue;
            }
            for (bb, cb) in &other.terms {
                if da + other.degree(bb) > bound || cb.is_zero() {
                    continue;
                }
                out.accumulate(ba.add(bb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Drop every class of degree above `bound`.
    pub fn truncate(&self, bound: i64) -> Self {
        let bound = bound.min(self.bound);
        NovikovSeries {
            grading: self.grading.clone(),
            bound,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.is_zero() || self.degree(b) <= bound)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keep only classes whose degree passes `keep`; the bound is unchanged.
    pub fn filter_degrees(&self, keep: impl Fn(i64) -> bool) -> Self {
        let mut out = self.clone();
        let zero = self.constant_term().zero_like();
        for (b, c) in out.terms.iter_mut() {
            if !keep(self.grading.degree(b)) {
                *c = zero.clone();
            }
        }
        out.terms.retain(|b, c| b.is_zero() || !c.is_zero());
        out
    }

    fn without_constant(&self) -> Self {
        let mut x = self.clone();
        let zero = self.constant_term().zero_like();
        x.terms.insert(CurveClass::zero(self.grading.rank()), zero);
        x
    }

    /// `sum_{k>=0} x^k c_k` for a series `x` with zero constant term.
    fn power_sum(&self, x: &Self, coeffs: impl Fn(u32) -> Rat) -> Result<Self, Error> {
        let one = self.constant_term().one_like();
        let mut acc = Self::constant(self.grading.clone(), self.bound, one.scale(&coeffs(0)));
        let mut power = Self::one(self.grading.clone(), self.bound, &one);
        for k in 1..=self.bound.max(0) as u32 {
            power = power.mul(x)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale(&coeffs(k)))?;
        }
        Ok(acc)
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self, Error> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne(self.constant_term().describe()));
        }
        let x = self.without_constant();
        self.power_sum(&x, |k| {
            if k == 0 {
                Rat::zero()
            } else {
                let s = if k % 2 == 1 { 1 } else { -1 };
                Rat::new(s.into(), k.into())
            }
        })
    }

    /// Formal exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.constant_term().is_zero() {
            return Err(Error::InvalidArgument("exp needs a zero constant term".into()));
        }
        self.power_sum(self, |k| super::factorial(k).recip())
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inv(&self) -> Result<Self, Error> {
        let c0 = self.constant_term().clone();
        let c0_inv = c0.inv()?;
        // 1/(c0 (1 + y)) with y = x / c0.
        let y = self.without_constant().scale_by(&c0_inv);
        let geo = self.power_sum(&y, |k| if k % 2 == 0 { Rat::one() } else { -Rat::one() })?;
        Ok(geo.scale_by(&c0_inv))
    }
}

impl<C: Coeff> fmt::Debug for NovikovSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().map(|(b, c)| format!("q^{b}: {}", c.describe())).collect();
        write!(f, "[{}] + O(d > {})", parts.join(", "), self.bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, rat, ratio};

    fn q(d: i64) -> CurveClass {
        CurveClass(vec![d])
    }

    fn series(bound: i64, coeffs: &[Rat]) -> NovikovSeries<Rat> {
        let mut s = NovikovSeries::constant(Grading::new(vec![1]), bound, coeffs[0].clone());
        for (d, c) in coeffs.iter().enumerate().skip(1) {
            s.insert(q(d as i64), c.clone()).unwrap();
        }
        s
    }

    #[test]
    fn one_plus_q_times_one_minus_q() {
        let a = series(2, &[rat(1), rat(1)]);
        let b = series(2, &[rat(1), rat(-1)]);
        assert_eq!(a.mul(&b).unwrap(), series(2, &[rat(1), rat(0), rat(-1)]));
    }

    #[test]
    fn exp_squared_is_exp_of_double() {
        let e: Vec<Rat> = (0..=3).map(|d| factorial(d).recip()).collect();
        let a = series(3, &e);
        let e2: Vec<Rat> = (0..=3).map(|d| rat(1 << d) / factorial(d)).collect();
        assert_eq!(a.mul(&a).unwrap(), series(3, &e2));
    }

    #[test]
    fn log_of_one_plus_q() {
        let a = series(3, &[rat(1), rat(1)]);
        let expect = series(3, &[rat(0), rat(1), ratio(-1, 2), ratio(1, 3)]);
        assert_eq!(a.log().unwrap(), expect);
        assert!(series(3, &[rat(1)]).log().unwrap().is_zero());
        assert!(series(3, &[rat(2), rat(1)]).log().is_err());
    }

    #[test]
    fn exp_inverts_log_and_inv_inverts() {
        let a = series(4, &[rat(1), ratio(3, 2), rat(-2), rat(0), ratio(1, 7)]);
        assert_eq!(a.log().unwrap().exp().unwrap(), a);
        let b = series(4, &[rat(3), rat(1), rat(5)]);
        let prod = b.mul(&b.inv().unwrap()).unwrap();
        assert_eq!(prod, series(4, &[rat(1)]));
    }

    #[test]
    fn mismatched_gradings_are_rejected() {
        let a = series(2, &[rat(1)]);
        let b = NovikovSeries::constant(Grading::new(vec![2]), 2, rat(1));
        assert_eq!(a.mul(&b).unwrap_err(), Error::GradingMismatch);
    }

    #[test]
    fn two_variable_grading() {
        let g = Grading::new(vec![1, 1]);
        let mut a = NovikovSeries::constant(g.clone(), 2, rat(1));
        a.insert(CurveClass(vec![1, 0]), rat(1)).unwrap();
        a.insert(CurveClass(vec![0, 1]), rat(1)).unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.coeff(&CurveClass(vec![1, 1])), rat(2));
        assert_eq!(sq.coeff(&CurveClass(vec![2, 0])), rat(1));
        assert_eq!(sq.terms().count(), 6);
    }
}
