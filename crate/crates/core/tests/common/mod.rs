//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::{One, Zero};
use qwc::exact::{Rat, RatFunc};
use qwc::toric::Toric;

/// `<tau_{a_1} ... tau_{a_n}>_0` from the string equation alone: remove a
/// `tau_0` and lower each other exponent in turn, down to `<tau_0^3> = 1`.
pub fn psi_by_string(a: &[u32]) -> Rat {
    fn go(a: Vec<u32>, memo: &mut HashMap<Vec<u32>, Rat>) -> Rat {
        let n = a.len();
        if n < 3 || a.iter().sum::<u32>() as usize != n - 3 {
            return Rat::zero();
        }
        if n == 3 {
            return Rat::one();
        }
        if let Some(v) = memo.get(&a) {
            return v.clone();
        }
        let zero = a.iter().position(|&x| x == 0).expect("dimension forces a tau_0");
        let mut rest = a.clone();
        rest.remove(zero);
        let mut total = Rat::zero();
        for j in 0..rest.len() {
            if rest[j] > 0 {
                let mut b = rest.clone();
                b[j] -= 1;
                b.sort_unstable();
                total += go(b, memo);
            }
        }
        memo.insert(a, total.clone());
        total
    }
    let mut a = a.to_vec();
    a.sort_unstable();
    go(a, &mut HashMap::new())
}

/// All exponent vectors of length `n` with entries summing to `n - 3`.
pub fn stable_exponents(n: usize) -> Vec<Vec<u32>> {
    fn fill(left: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left {
            cur.push(x);
            fill(left - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 3 {
        fill((n - 3) as u32, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `int_X prod gamma_i` by localization: `sum_sigma prod gamma_i|_sigma / e_sigma`.
pub fn integrate(t: &Toric, classes: &[Vec<RatFunc>]) -> RatFunc {
    let mut total = RatFunc::zero(t.nvars());
    for s in 0..t.fixed_points().len() {
        let mut term = t.euler_inv(s);
        for c in classes {
            term = term.mul(&c[s]);
        }
        total = total.add(&term);
    }
    total
}
