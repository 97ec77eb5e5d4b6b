//! Sparse multivariate polynomials over `Q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Error, Rat};

/// Upper bound on the number of indeterminates a polynomial may carry.
pub const MAX_VARS: usize = 12;

/// Exponent vector, ordered graded-lexicographically with `x0 > x1 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many indeterminates");
        let mut m = Self::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::ONE;
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        Some(out)
    }

    fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut out = *self;
        out.exps[i] = u16::try_from(e).expect("exponent overflow");
        out
    }

    fn highest_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.highest_var().map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..n])
    }
}

/// A polynomial with rational coefficients in `nvars` indeterminates.
///
/// No stored coefficient is zero; the map is ordered by [`Monomial`]'s
/// graded-lex order so the leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many indeterminates");
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rat::from_integer(c.into()))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(i), Rat::one());
        p
    }

    /// Build from `(exponents, coefficient)` pairs; zero coefficients are dropped
    /// and repeated exponents are summed.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: exps.len() });
            }
            p.add_term(Monomial::from_exps(&exps), c);
        }
        Ok(p)
    }

    /// Homogeneous or affine linear form `c0 + sum c_i x_i`.
    pub fn linear(nvars: usize, coeffs: &[Rat], constant: Rat) -> Self {
        let mut p = Self::constant(nvars, constant);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i), c.clone());
        }
        p
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::ONE))
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// True when every term has total degree exactly `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_arity(other);
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &MultiPoly) {
        self.check_arity(other);
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_arity(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.len() == 1 {
            let (m, c) = other.terms.iter().next().unwrap();
            return self.mul_monomial(m, c);
        }
        if self.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return other.mul_monomial(m, c);
        }
        let mut acc: std::collections::HashMap<Monomial, Rat> =
            std::collections::HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.check_arity(divisor);
        let (lm, lc) = divisor.leading_term().expect("division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if divisor.len() == 1 {
            let mut out = Self::zero(self.nvars);
            let inv = lc.recip();
            for (m, c) in &self.terms {
                out.terms.insert(m.div(lm)?, c * &inv);
            }
            return Some(out);
        }
        let inv_lc = lc.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(lm)?;
            let qc = rc * &inv_lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients of `self` viewed as a polynomial in `var`; entry `k` is the
    /// coefficient of `var^k` (which does not involve `var`).
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            out[k].terms.insert(m.with_exp(var, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = Self::zero(nvars);
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                out.add_term(m.with_exp(var, m.exp(var) + k as u32), c.clone());
            }
        }
        out
    }

    /// Substitute `x_i -> images[i]` for every indeterminate.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars, "one image per indeterminate");
        let target = images.first().map_or(self.nvars, |p| p.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(p.nvars)]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, img_powers) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while img_powers.len() <= e {
                    let next = img_powers.last().unwrap().mul(&images[i]);
                    img_powers.push(next);
                }
                term = term.mul(&img_powers[e]);
            }
            out.add_assign(&term);
        }
        out
    }

    /// Exchange the roles of two indeterminates.
    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = *m;
            e.exps.swap(i, j);
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// Re-embed into a ring with a different number of indeterminates; all
    /// variables with index `>= nvars` must be absent.
    pub fn with_nvars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars <= MAX_VARS);
        for m in self.terms.keys() {
            assert!(m.highest_var().is_none_or(|h| h < nvars), "variable out of range");
        }
        MultiPoly { nvars, terms: self.terms.clone() }
    }

    /// Split off the rational content: `self = c * p` with `p` having coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_split(&self) -> (Rat, MultiPoly) {
        if self.is_zero() {
            return (Rat::zero(), self.clone());
        }
        let mut lcm_den = BigInt::one();
        for c in self.terms.values() {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let v = c.numer() * (&lcm_den / c.denom());
            g = g.gcd(&v);
        }
        let mut content = Rat::new(g, lcm_den);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    pub fn primitive(&self) -> MultiPoly {
        self.primitive_split().1
    }

    /// Evaluate modulo the prime `p` at `point` (one residue per variable);
    /// `None` when a coefficient denominator vanishes mod `p`.
    pub(crate) fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let mut acc: u64 = 0;
        for (m, c) in &self.terms {
            let num = (c.numer() % &pb + &pb) % &pb;
            let den = (c.denom() % &pb + &pb) % &pb;
            let num = u64::try_from(num).unwrap();
            let den = u64::try_from(den).unwrap();
            if den == 0 {
                return None;
            }
            let mut t = mulmod(num, invmod(den, p), p);
            for (i, &x) in point.iter().enumerate().take(self.nvars) {
                let e = m.exp(i);
                if e > 0 {
                    t = mulmod(t, powmod(x, e as u64, p), p);
                }
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }

    /// Render with the given variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut mono = Vec::new();
            for (v, name) in names.iter().enumerate().take(self.nvars) {
                match m.exp(v) {
                    0 => {}
                    1 => mono.push(name.clone()),
                    e => mono.push(format!("{name}^{e}")),
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Self::default_names(self.nvars)))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Self::default_names(self.nvars)))
    }
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let x = Monomial::from_exps(&[1, 0]);
        let y = Monomial::from_exps(&[0, 1]);
        let y2 = Monomial::from_exps(&[0, 2]);
        assert!(x > y);
        assert!(y2 > x);
        assert!(Monomial::ONE < y);
    }

    #[test]
    fn arithmetic_basics() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let sum = x.add(&y);
        let diff = x.sub(&y);
        let prod = sum.mul(&diff);
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(prod, expect);
        assert_eq!(prod.div_exact(&sum).unwrap(), diff);
        assert!(prod.div_exact(&x).is_none());
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn primitive_split_normalizes_sign_and_content() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = x.scale(&Rat::new((-4).into(), 3.into())).add(&y.scale(&r(2)));
        let (c, q) = p.primitive_split();
        assert_eq!(c, Rat::new((-2).into(), 3.into()));
        assert_eq!(q, x.scale(&r(2)).sub(&y.scale(&r(3))));
        assert_eq!(q.scale(&c), p);
    }

    #[test]
    fn substitution_and_swap() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = x.mul(&x).add(&y);
        let q = p.substitute(&[x.add(&MultiPoly::one(2)), y.clone()]);
        let expect = x.mul(&x).add(&x.scale(&r(2))).add(&MultiPoly::one(2)).add(&y);
        assert_eq!(q, expect);
        assert_eq!(p.swap_vars(0, 1), y.mul(&y).add(&x));
    }

    #[test]
    fn coefficient_views_round_trip() {
        let x = MultiPoly::var(3, 0);
        let z = MultiPoly::var(3, 2);
        let p = x.mul(&z).mul(&z).add(&z).add(&x);
        let cs = p.coefficients_in(2);
        assert_eq!(cs.len(), 3);
        assert_eq!(MultiPoly::from_coefficients_in(3, 2, &cs), p);
    }
}
