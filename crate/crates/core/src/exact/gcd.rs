//! Multivariate GCD by recursive primitive polynomial remainder sequences.

use super::poly::{Monomial, MultiPoly};

/// Greatest common divisor, normalized to a primitive integer polynomial with
/// positive leading coefficient (so `gcd(a, b) == 1` for coprime inputs).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.nvars(), b.nvars());
    let nv = a.nvars();
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(nv);
    }
    let (a, b) = (a.primitive(), b.primitive());
    if a == b {
        return a;
    }
    if a.len() == 1 && b.len() == 1 {
        return monomial_gcd(&a, &b);
    }
    let var = match main_variable(&a, &b) {
        Some(v) => v,
        // Disjoint variables: any common divisor is a constant.
        None => return MultiPoly::one(nv),
    };
    let ca = content_in(&a, var);
    let cb = content_in(&b, var);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs_gcd(pa, pb, var);
    c.mul(&g).primitive()
}

/// `lcm(a, b)` of primitive polynomials, primitive.
pub fn lcm_primitive(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let g = gcd(a, b);
    a.mul(&b.div_exact(&g).expect("gcd divides")).primitive()
}

fn monomial_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (ma, _) = a.leading_term().unwrap();
    let (mb, _) = b.leading_term().unwrap();
    let nv = a.nvars();
    let exps: Vec<u32> = (0..nv).map(|i| ma.exp(i).min(mb.exp(i))).collect();
    let mut out = MultiPoly::zero(nv);
    out.add_term(Monomial::from_exps(&exps), super::rat(1));
    out
}

/// A variable occurring in both polynomials, preferring the lowest combined
/// degree to keep the remainder sequence short.
fn main_variable(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars())
        .filter(|&v| a.involves(v) && b.involves(v))
        .min_by_key(|&v| (a.degree_in(v) + b.degree_in(v), v))
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(p.nvars());
    for c in p.coefficients_in(var).into_iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").primitive()
}

fn leading_in(p: &MultiPoly, var: usize) -> MultiPoly {
    p.coefficients_in(var).pop().unwrap_or_else(|| MultiPoly::zero(p.nvars()))
}

fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let lb = leading_in(b, var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = leading_in(&r, var);
        let mut shift = vec![0u32; r.nvars()];
        shift[var] = dr - db;
        let t = b.mul_monomial(&Monomial::from_exps(&shift), &super::rat(1)).mul(&lr);
        r = r.mul(&lb).sub(&t);
    }
    r
}

/// GCD of two polynomials that are primitive with respect to `var`.
fn prs_gcd(mut a: MultiPoly, mut b: MultiPoly, var: usize) -> MultiPoly {
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree_in(var) == 0 {
        // b is primitive in var and free of it, hence a unit.
        return MultiPoly::one(a.nvars());
    }
    loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return primitive_in(&b, var);
        }
        if r.degree_in(var) == 0 {
            return MultiPoly::one(a.nvars());
        }
        a = b;
        b = primitive_in(&r, var);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn vars(n: usize) -> Vec<MultiPoly> {
        (0..n).map(|i| MultiPoly::var(n, i)).collect()
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let v = vars(3);
        let f = v[0].add(&v[1]).add(&MultiPoly::one(3));
        let g = v[0].mul(&v[2]).sub(&v[1]);
        let h = v[2].mul(&v[2]).add(&v[0]);
        let a = f.mul(&g).scale(&rat(6));
        let b = f.mul(&h).scale(&rat(-4));
        assert_eq!(gcd(&a, &b), f);
        assert!(gcd(&g, &h).is_one());
    }

    #[test]
    fn gcd_with_constant_and_monomials() {
        let v = vars(2);
        let x2y = v[0].mul(&v[0]).mul(&v[1]);
        let xy3 = v[0].mul(&v[1].pow(3));
        assert_eq!(gcd(&x2y, &xy3), v[0].mul(&v[1]));
        assert!(gcd(&x2y, &MultiPoly::from_int(2, 5)).is_one());
        assert_eq!(gcd(&MultiPoly::zero(2), &v[1].scale(&rat(-3))), v[1]);
    }

    #[test]
    fn gcd_is_symmetric_and_handles_powers() {
        let v = vars(2);
        let f = v[0].sub(&v[1]);
        let a = f.pow(3).mul(&v[0]);
        let b = f.pow(2).mul(&v[1].add(&MultiPoly::one(2)));
        assert_eq!(gcd(&a, &b), f.pow(2).primitive());
        assert_eq!(gcd(&b, &a), f.pow(2).primitive());
    }

    #[test]
    fn lcm_of_coprime_is_product() {
        let v = vars(2);
        let l = lcm_primitive(&v[0], &v[1]);
        assert_eq!(l, v[0].mul(&v[1]));
    }
}
