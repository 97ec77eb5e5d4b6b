//! Rational functions over `Q` with a factored, pairwise-coprime denominator.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gcd::gcd;
use super::poly::{invmod, mulmod, MultiPoly};
use super::{Error, Rat};

const MOD_P: u64 = (1 << 61) - 1;

/// Display names for the indeterminates of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variables {
    names: Vec<String>,
}

impl Variables {
    pub fn new(names: Vec<String>) -> Self {
        Variables { names }
    }

    pub fn generic(n: usize) -> Self {
        Variables { names: MultiPoly::default_names(n) }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// An element of `Q(x_0, ..., x_{n-1})`.
///
/// The value is `num / prod(f_i^e_i)` where each `f_i` is a non-constant
/// primitive integer polynomial with positive leading coefficient, the `f_i`
/// are pairwise coprime and sorted, and `num` shares no factor with any `f_i`.
/// When every `f_i` is linear this representation is unique.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: Vec<(MultiPoly, u32)>,
}

fn poly_cmp(a: &MultiPoly, b: &MultiPoly) -> Ordering {
    let mut ia = a.terms().rev();
    let mut ib = b.terms().rev();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ma, ca)), Some((mb, cb))) => {
                let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
}

fn is_linear(p: &MultiPoly) -> bool {
    p.total_degree() == Some(1)
}

/// Deterministic residues used as the free coordinates of test points.
fn probe_point(nvars: usize) -> Vec<u64> {
    (0..nvars as u64)
        .map(|i| (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i + 1) >> 4) % MOD_P)
        .collect()
}

/// `false` only if the linear form `f` certainly does not divide `num`.
///
/// Evaluates `num` at a point of the hyperplane `f = 0` modulo a prime; a
/// non-zero value rules out divisibility.
fn may_divide(num: &MultiPoly, f: &MultiPoly) -> bool {
    let nv = f.nvars();
    let mut point = probe_point(nv);
    let coeff_mod = |c: &Rat| -> Option<u64> {
        let p = num_bigint::BigInt::from(MOD_P);
        let n = u64::try_from((c.numer() % &p + &p) % &p).ok()?;
        let d = u64::try_from((c.denom() % &p + &p) % &p).ok()?;
        (d != 0).then(|| mulmod(n, invmod(d, MOD_P), MOD_P))
    };
    let Some(pivot) = (0..nv).find(|&i| {
        let c = f.coeff(&super::Monomial::var(i));
        !c.is_zero() && coeff_mod(&c).is_some_and(|v| v != 0)
    }) else {
        return true;
    };
    let mut rest = 0u64;
    for (m, c) in f.terms() {
        let Some(cv) = coeff_mod(c) else { return true };
        if m.degree() == 0 {
            rest = (rest + cv) % MOD_P;
        } else {
            let var = (0..nv).find(|&i| m.exp(i) == 1).unwrap();
            if var != pivot {
                rest = (rest + mulmod(cv, point[var], MOD_P)) % MOD_P;
            }
        }
    }
    let cp = coeff_mod(&f.coeff(&super::Monomial::var(pivot))).unwrap();
    point[pivot] = mulmod(MOD_P - rest % MOD_P, invmod(cp, MOD_P), MOD_P) % MOD_P;
    match num.eval_mod(&point, MOD_P) {
        Some(v) => v == 0,
        None => true,
    }
}

/// Insert `f^e` into a pairwise-coprime base of primitive factors.
fn insert_factor(base: &mut Vec<(MultiPoly, u32)>, f: MultiPoly, e: u32) {
    if e == 0 || f.is_constant() {
        return;
    }
    for i in 0..base.len() {
        if base[i].0 == f {
            base[i].1 += e;
            return;
        }
        if is_linear(&f) && is_linear(&base[i].0) {
            continue;
        }
        let g = gcd(&base[i].0, &f);
        if g.is_one() {
            continue;
        }
        let (h, k) = base.swap_remove(i);
        let f1 = f.div_exact(&g).expect("gcd divides").primitive();
        let h1 = h.div_exact(&g).expect("gcd divides").primitive();
        insert_factor(base, g, e + k);
        insert_factor(base, f1, e);
        insert_factor(base, h1, k);
        return;
    }
    base.push((f, e));
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc { num: MultiPoly::zero(nvars), den: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc { num: MultiPoly::one(nvars), den: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        RatFunc { num: MultiPoly::constant(nvars, c), den: Vec::new() }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, super::rat(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, i))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: Vec::new() }
    }

    /// `num / den`; fails if `den` is the zero polynomial.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::from_parts(num, vec![(den, 1)]))
    }

    /// `c * prod(f_i^{e_i})` for non-zero polynomials `f_i` and signed exponents.
    pub fn from_product(nvars: usize, c: Rat, factors: &[(MultiPoly, i32)]) -> Result<Self, Error> {
        let mut num = MultiPoly::constant(nvars, c);
        let mut den = Vec::new();
        for (f, e) in factors {
            if f.is_zero() {
                if *e < 0 {
                    return Err(Error::ZeroDenominator);
                }
                if *e > 0 {
                    return Ok(Self::zero(nvars));
                }
                continue;
            }
            match e.cmp(&0) {
                Ordering::Greater => num = num.mul(&f.pow(*e as u32)),
                Ordering::Less => den.push((f.clone(), e.unsigned_abs())),
                Ordering::Equal => {}
            }
        }
        Ok(Self::from_parts(num, den))
    }

    /// Normalize an arbitrary factored fraction.
    fn from_parts(mut num: MultiPoly, factors: Vec<(MultiPoly, u32)>) -> Self {
        let nv = num.nvars();
        if num.is_zero() {
            return Self::zero(nv);
        }
        let mut base: Vec<(MultiPoly, u32)> = Vec::with_capacity(factors.len());
        for (f, e) in factors {
            assert!(!f.is_zero(), "zero factor in denominator");
            let (c, p) = f.primitive_split();
            if e > 0 {
                let s = c.recip();
                let mut sc = Rat::one();
                for _ in 0..e {
                    sc *= &s;
                }
                num = num.scale(&sc);
            }
            insert_factor(&mut base, p, e);
        }
        let mut out = RatFunc { num, den: base };
        out.cancel_all();
        out.sort_den();
        out
    }

    fn sort_den(&mut self) {
        self.den.sort_by(|a, b| poly_cmp(&a.0, &b.0));
    }

    /// Remove every factor of the denominator that divides the numerator.
    fn cancel_all(&mut self) {
        let idx: Vec<usize> = (0..self.den.len()).collect();
        self.cancel_some(&idx);
    }

    fn cancel_some(&mut self, which: &[usize]) {
        let mut split = None;
        for &i in which {
            let (f, e) = &mut self.den[i];
            if is_linear(f) {
                while *e > 0 && may_divide(&self.num, f) {
                    match self.num.div_exact(f) {
                        Some(q) => {
                            self.num = q;
                            *e -= 1;
                        }
                        None => break,
                    }
                }
                continue;
            }
            while *e > 0 {
                let g = gcd(&self.num, f);
                if g.is_one() {
                    break;
                }
                self.num = self.num.div_exact(&g).expect("gcd divides");
                if g == *f {
                    *e -= 1;
                } else {
                    split = Some((i, g));
                    break;
                }
            }
            if split.is_some() {
                break;
            }
        }
        if let Some((i, g)) = split {
            // f^e with only g | num: one copy of g is gone, leaving
            // g^(e-1) * (f/g)^e, which is refined and cancelled again.
            let (f, e) = self.den.swap_remove(i);
            let rest = f.div_exact(&g).expect("gcd divides").primitive();
            let mut base = std::mem::take(&mut self.den);
            insert_factor(&mut base, g, e - 1);
            insert_factor(&mut base, rest, e);
            self.den = base;
            self.cancel_all();
            return;
        }
        self.den.retain(|(_, e)| *e > 0);
        if self.num.is_zero() {
            self.den.clear();
        }
    }
}

impl RatFunc {
    #[inline]
    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    /// The coprime primitive factors of the denominator with multiplicities.
    pub fn denominator_factors(&self) -> &[(MultiPoly, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> MultiPoly {
        let mut d = MultiPoly::one(self.nvars());
        for (f, e) in &self.den {
            d = d.mul(&f.pow(*e));
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_empty() && self.num.is_constant()
    }

    /// The value as a rational number if it is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.constant_term())
    }

    fn all_linear(&self) -> bool {
        self.den.iter().all(|(f, _)| is_linear(f))
    }

    pub fn involves(&self, var: usize) -> bool {
        self.num.involves(var) || self.den.iter().any(|(f, _)| f.involves(var))
    }

    /// Coprime integer pair `(n, d)` with `self = n / d` and `LC(d) > 0`.
    pub fn canonical(&self) -> (MultiPoly, MultiPoly) {
        let d = self.denominator();
        if self.num.is_zero() {
            return (self.num.clone(), MultiPoly::one(self.nvars()));
        }
        let (c, p) = self.num.primitive_split();
        let cn = Rat::from_integer(c.numer().clone());
        let cd = Rat::from_integer(c.denom().clone());
        (p.scale(&cn), d.scale(&cd))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        assert_eq!(self.nvars(), other.nvars(), "rational functions in different rings");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_empty() && other.den.is_empty() {
            return RatFunc { num: self.num.add(&other.num), den: Vec::new() };
        }
        if self.all_linear() && other.all_linear() {
            return self.add_linear(other);
        }
        let num = self.num.mul(&other.denominator()).add(&other.num.mul(&self.denominator()));
        let mut factors = self.den.clone();
        factors.extend(other.den.iter().cloned());
        Self::from_parts(num, factors)
    }

    /// Sum of two fractions whose denominators are products of linear forms:
    /// the common denominator is the factorwise maximum, and only factors with
    /// equal multiplicity on both sides can cancel afterwards.
    fn add_linear(&self, other: &RatFunc) -> RatFunc {
        let nv = self.nvars();
        let mut den: Vec<(MultiPoly, u32)> = Vec::with_capacity(self.den.len() + other.den.len());
        let mut mult_a = MultiPoly::one(nv);
        let mut mult_b = MultiPoly::one(nv);
        let mut tied = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.den.len() || j < other.den.len() {
            let ord = match (self.den.get(i), other.den.get(j)) {
                (Some(a), Some(b)) => poly_cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    let (f, e) = &self.den[i];
                    mult_b = mult_b.mul(&f.pow(*e));
                    den.push((f.clone(), *e));
                    i += 1;
                }
                Ordering::Greater => {
                    let (f, e) = &other.den[j];
                    mult_a = mult_a.mul(&f.pow(*e));
                    den.push((f.clone(), *e));
                    j += 1;
                }
                Ordering::Equal => {
                    let (f, ea) = &self.den[i];
                    let eb = other.den[j].1;
                    match ea.cmp(&eb) {
                        Ordering::Less => mult_a = mult_a.mul(&f.pow(eb - ea)),
                        Ordering::Greater => mult_b = mult_b.mul(&f.pow(ea - eb)),
                        Ordering::Equal => tied.push(den.len()),
                    }
                    den.push((f.clone(), (*ea).max(eb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        let num = self.num.mul(&mult_a).add(&other.num.mul(&mult_b));
        let mut out = RatFunc { num, den };
        if out.num.is_zero() {
            return Self::zero(nv);
        }
        out.cancel_some(&tied);
        out
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        assert_eq!(self.nvars(), other.nvars(), "rational functions in different rings");
        let nv = self.nvars();
        if self.is_zero() || other.is_zero() {
            return Self::zero(nv);
        }
        if self.den.is_empty() && other.den.is_empty() {
            return RatFunc { num: self.num.mul(&other.num), den: Vec::new() };
        }
        if self.all_linear() && other.all_linear() {
            // Cross-cancel each numerator against the other denominator; with
            // irreducible factors the product is then already reduced.
            let mut a = RatFunc { num: self.num.clone(), den: other.den.clone() };
            a.cancel_all();
            let mut b = RatFunc { num: other.num.clone(), den: self.den.clone() };
            b.cancel_all();
            let mut den = Vec::with_capacity(a.den.len() + b.den.len());
            let (mut i, mut j) = (0, 0);
            while i < a.den.len() || j < b.den.len() {
                let ord = match (a.den.get(i), b.den.get(j)) {
                    (Some(x), Some(y)) => poly_cmp(&x.0, &y.0),
                    (Some(_), None) => Ordering::Less,
                    (None, Some(_)) => Ordering::Greater,
                    (None, None) => unreachable!(),
                };
                match ord {
                    Ordering::Less => {
                        den.push(a.den[i].clone());
                        i += 1;
                    }
                    Ordering::Greater => {
                        den.push(b.den[j].clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        den.push((a.den[i].0.clone(), a.den[i].1 + b.den[j].1));
                        i += 1;
                        j += 1;
                    }
                }
            }
            return RatFunc { num: a.num.mul(&b.num), den };
        }
        let mut factors = self.den.clone();
        factors.extend(other.den.iter().cloned());
        Self::from_parts(self.num.mul(&other.num), factors)
    }

    pub fn inv(&self) -> Result<RatFunc, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::from_parts(self.denominator(), vec![(self.num.clone(), 1)]))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, Error> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if other.den.is_empty() && other.num.is_constant() {
            return Ok(self.scale(&other.num.constant_term().recip()));
        }
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.iter().map(|(f, k)| (f.clone(), k * e)).collect(),
        })
    }

    /// Substitute `x_i -> images[i]` (polynomials in a common target ring).
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<RatFunc, Error> {
        let num = self.num.substitute(images);
        let mut factors = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let g = f.substitute(images);
            if g.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            factors.push((g, *e));
        }
        Ok(Self::from_parts(num, factors))
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> RatFunc {
        let factors = self.den.iter().map(|(f, e)| (f.swap_vars(i, j), *e)).collect();
        Self::from_parts(self.num.swap_vars(i, j), factors)
    }

    /// Total degree if numerator and every denominator factor are homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut d = self.num.homogeneous_degree()? as i64;
        for (f, e) in &self.den {
            d -= f.homogeneous_degree()? as i64 * *e as i64;
        }
        Some(d)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let (n, d) = self.canonical();
        let ns = n.to_string_with(names);
        if d.is_one() {
            return ns;
        }
        let wrap_n = if n.len() > 1 { format!("({ns})") } else { ns };
        let ds = d.to_string_with(names);
        let bare = |s: &str| s.chars().all(|c| c.is_alphanumeric() || c == '^');
        let wrap_d = if bare(&ds) { ds } else { format!("({ds})") };
        format!("{wrap_n}/{wrap_d}")
    }

    /// Like `to_string_with`, but the denominator is printed as a product of
    /// its (primitive, sorted) factors.
    pub fn to_factored_string_with(&self, names: &[String]) -> String {
        let ns = self.num.to_string_with(names);
        if self.den.is_empty() {
            return ns;
        }
        let mut parts: Vec<String> = Vec::new();
        let wrap_n = if self.num.is_constant() && !self.num.constant_term().denom().is_one() {
            // Keep a rational constant as one fraction: 1/(2*z^2), not 1/2/(z^2).
            let c = self.num.constant_term();
            parts.push(c.denom().to_string());
            c.numer().to_string()
        } else if self.num.len() > 1 {
            format!("({ns})")
        } else {
            ns
        };
        parts.extend(self.den.iter()
            .map(|(f, e)| {
                let fs = f.to_string_with(names);
                let fs = if f.len() > 1 { format!("({fs})") } else { fs };
                if *e == 1 {
                    fs
                } else {
                    format!("{fs}^{e}")
                }
            }));
        if parts.len() == 1 && !parts[0].contains('*') && !parts[0].contains('^') {
            format!("{wrap_n}/{}", parts[0])
        } else {
            format!("{wrap_n}/({})", parts.join("*"))
        }
    }

    /// Exact serialization: coefficient strings `"a/b"` with exponent vectors.
    pub fn to_json(&self) -> serde_json::Value {
        let (n, d) = self.canonical();
        serde_json::json!({ "num": poly_json(&n), "den": poly_json(&d) })
    }

    pub fn from_json(v: &serde_json::Value, nvars: usize) -> Result<RatFunc, Error> {
        let bad = |m: &str| Error::InvalidArgument(format!("rational function JSON: {m}"));
        let num = poly_from_json(v.get("num").ok_or_else(|| bad("missing num"))?, nvars)?;
        let den = poly_from_json(v.get("den").ok_or_else(|| bad("missing den"))?, nvars)?;
        RatFunc::new(num, den)
    }
}

fn poly_json(p: &MultiPoly) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .terms()
        .rev()
        .map(|(m, c)| serde_json::json!({ "exp": m.exps(p.nvars()), "coeff": c.to_string() }))
        .collect();
    serde_json::Value::Array(terms)
}

fn poly_from_json(v: &serde_json::Value, nvars: usize) -> Result<MultiPoly, Error> {
    let bad = |m: &str| Error::InvalidArgument(format!("polynomial JSON: {m}"));
    let arr = v.as_array().ok_or_else(|| bad("expected an array of terms"))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let exps: Vec<u32> = serde_json::from_value(t.get("exp").cloned().unwrap_or_default())
            .map_err(|_| bad("bad exponent vector"))?;
        let c = t
            .get("coeff")
            .and_then(|c| c.as_str())
            .and_then(super::parse_rat)
            .ok_or_else(|| bad("bad coefficient"))?;
        terms.push((exps, c));
    }
    MultiPoly::from_terms(nvars, terms)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        if self.all_linear() && other.all_linear() {
            return self.num == other.num && self.den == other.den;
        }
        self.num.mul(&other.denominator()) == other.num.mul(&self.denominator())
    }
}

impl Eq for RatFunc {}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&MultiPoly::default_names(self.nvars())))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&MultiPoly::default_names(self.nvars())))
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn l(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    #[test]
    fn content_is_removed() {
        let f = RatFunc::new(l(0).scale(&rat(2)), l(1).scale(&rat(2))).unwrap();
        let (n, d) = f.canonical();
        assert_eq!(n, l(0));
        assert_eq!(d, l(1));
    }

    #[test]
    fn common_factor_cancels() {
        let num = l(0).mul(&l(0)).sub(&l(1).mul(&l(1)));
        let f = RatFunc::new(num, l(0).sub(&l(1))).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.numerator(), &l(0).add(&l(1)));
    }

    #[test]
    fn sign_is_normalized() {
        let f = RatFunc::new(l(0).sub(&l(1)), l(1).sub(&l(0))).unwrap();
        assert_eq!(f, RatFunc::from_int(2, -1));
        let (n, d) = f.canonical();
        assert_eq!(n, MultiPoly::from_int(2, -1));
        assert!(d.is_one());
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(RatFunc::new(l(0), MultiPoly::zero(2)).unwrap_err(), Error::ZeroDenominator);
        assert!(RatFunc::zero(2).inv().is_err());
    }

    #[test]
    fn partial_fractions_recombine() {
        // 1/(x(x+y)) = (1/y)(1/x - 1/(x+y))
        let x = RatFunc::from_poly(l(0));
        let s = RatFunc::from_poly(l(0).add(&l(1)));
        let y = RatFunc::from_poly(l(1));
        let lhs = x.mul(&s).inv().unwrap();
        let rhs = x.inv().unwrap().sub(&s.inv().unwrap()).div(&y).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs.denominator_factors().len(), 2);
    }

    #[test]
    fn nonlinear_denominators_cancel() {
        let q = l(0).mul(&l(0)).add(&l(1).mul(&l(1)));
        let a = RatFunc::new(l(0), q.clone()).unwrap();
        let b = RatFunc::new(q.clone(), l(1)).unwrap();
        assert_eq!(a.mul(&b), RatFunc::new(l(0), l(1)).unwrap());
        let c = RatFunc::new(q.mul(&l(0)), q.mul(&q)).unwrap();
        assert_eq!(c, RatFunc::new(l(0), q).unwrap());
    }

    #[test]
    fn composite_factor_partially_cancels() {
        let f = l(0).add(&MultiPoly::one(2));
        let g = l(1).sub(&MultiPoly::one(2));
        let fg = f.mul(&g);
        let fg2 = l(0).mul(&l(0)).add(&l(1).mul(&l(1))).add(&MultiPoly::one(2));
        let h = fg.mul(&fg2);
        let x = RatFunc::new(MultiPoly::one(2), h.clone()).unwrap();
        let y = x.mul_poly(&f);
        assert_eq!(y, RatFunc::new(MultiPoly::one(2), g.mul(&fg2)).unwrap());
        assert_eq!(y.mul_poly(&g.mul(&fg2)), RatFunc::one(2));
    }

    #[test]
    fn substitution_and_homogeneity() {
        let f = RatFunc::new(l(0), l(0).sub(&l(1))).unwrap();
        assert_eq!(f.homogeneous_degree(), Some(0));
        let shifted = f.substitute(&[l(0).add(&MultiPoly::one(2)), l(1).add(&MultiPoly::one(2))]).unwrap();
        assert_eq!(shifted, RatFunc::new(l(0).add(&MultiPoly::one(2)), l(0).sub(&l(1))).unwrap());
        assert!(f.substitute(&[l(1), l(1)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = RatFunc::new(l(0).scale(&rat(3)), l(0).sub(&l(1)).scale(&rat(7))).unwrap();
        let back = RatFunc::from_json(&f.to_json(), 2).unwrap();
        assert_eq!(f, back);
    }
}
