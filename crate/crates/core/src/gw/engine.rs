//! Memoized graph sums over localization trees.
//!
//! Trees are rooted at the vertex carrying the distinguished leg. A branch is
//! an edge choice `(orbit, direction, delta)` together with the set of labelled
//! legs in the subtree beyond it; branch sums are cached per `(choice, legs)`.
//! Children of a vertex are summed as multisets with weight `1/prod m!`,
//! which accounts for the automorphisms permuting identical subtrees.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::One;
use rayon::prelude::*;

use super::factors::edge_factor;
use super::psi::vertex_integral;
use crate::error::{Error, Result};
use crate::exact::{factorial, ratio, MultiPoly, NovikovSeries, Rat, RatFunc};
use crate::toric::Toric;

pub type Series = NovikovSeries<RatFunc>;

/// How a marking enters the integrand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LegKind {
    /// `psi^a`.
    Psi(u32),
    /// `1/(x - psi)` for the indeterminate with index `x`.
    Desc(usize),
}

/// A labelled marking with its class given by restrictions to fixed points.
#[derive(Clone, Debug)]
pub struct Leg {
    pub kind: LegKind,
    pub class: Vec<RatFunc>,
}

struct Choice {
    far: usize,
    degree: i64,
    omega_near: MultiPoly,
    omega_far: MultiPoly,
    /// `q^{delta beta} * edge term`.
    factor: Series,
}

pub(crate) struct GraphSum<'a> {
    t: &'a Toric,
    bound: i64,
    root: LegKind,
    legs: Vec<Leg>,
    /// `s|_sigma^j / j!` for the shift legs, indexed `[sigma][j]`.
    shift_powers: Option<Vec<Vec<Series>>>,
    choices: Vec<Choice>,
    choices_at: Vec<Vec<usize>>,
    euler: Vec<RatFunc>,
    euler_inv: Vec<RatFunc>,
    memo: Mutex<HashMap<(usize, u32, i64), Arc<Series>>>,
}

/// One multiset of children: `(choice, legs)` pairs and `1/prod m!`.
type Config = (Vec<(usize, u32)>, Rat);

impl<'a> GraphSum<'a> {
    pub fn new(t: &'a Toric, bound: i64, root: LegKind, legs: Vec<Leg>, shift: Option<&[Series]>) -> Result<Self> {
        let nfix = t.fixed_points().len();
        if legs.len() > 16 {
            return Err(Error::InvalidArgument("at most 17 markings are supported".into()));
        }
        for l in &legs {
            if l.class.len() != nfix {
                return Err(Error::ArityMismatch { expected: nfix, found: l.class.len() });
            }
        }
        let nv = t.nvars();
        let one = RatFunc::one(nv);
        let mut choices = Vec::new();
        let mut choices_at = vec![Vec::new(); nfix];
        for (i, o) in t.closed_orbits().iter().enumerate() {
            let d = t.degree(&o.class);
            let mut delta = 1i64;
            while delta * d <= bound {
                let e = edge_factor(t, i, delta as u32)?;
                let mut factor = Series::zero(t.grading(), bound, &one);
                factor.insert(o.class.times(delta), e)?;
                let omega = o.weight.scale(&ratio(1, delta));
                for (near, far, w) in [(o.ends.0, o.ends.1, omega.clone()), (o.ends.1, o.ends.0, omega.neg())] {
                    choices_at[near].push(choices.len());
                    choices.push(Choice {
                        far,
                        degree: delta * d,
                        omega_far: w.neg(),
                        omega_near: w,
                        factor: factor.clone(),
                    });
                }
                delta += 1;
            }
        }
        let shift_powers = match shift {
            None => None,
            Some(s) => {
                if s.len() != nfix {
                    return Err(Error::ArityMismatch { expected: nfix, found: s.len() });
                }
                let mut all = Vec::with_capacity(nfix);
                for series in s {
                    if !series.constant_term().is_zero() {
                        return Err(Error::InvalidArgument("shift must have zero constant term".into()));
                    }
                    let series = series.truncate(bound);
                    let mut pw = vec![Series::one(t.grading(), bound, &one)];
                    for j in 1..=bound.max(0) {
                        let next = pw.last().unwrap().mul(&series)?.scale(&ratio(1, j));
                        if next.is_zero() {
                            break;
                        }
                        pw.push(next);
                    }
                    all.push(pw);
                }
                Some(all)
            }
        };
        let euler = (0..nfix).map(|s| t.euler(s)).collect();
        let euler_inv = (0..nfix).map(|s| t.euler_inv(s)).collect();
        Ok(GraphSum {
            t,
            bound,
            root,
            legs,
            shift_powers,
            choices,
            choices_at,
            euler,
            euler_inv,
            memo: Mutex::new(HashMap::new()),
        })
    }

    fn zero(&self) -> Series {
        Series::zero(self.t.grading(), self.bound, &RatFunc::one(self.t.nvars()))
    }

    fn one(&self) -> Series {
        Series::one(self.t.grading(), self.bound, &RatFunc::one(self.t.nvars()))
    }

    fn all_legs(&self) -> u32 {
        if self.legs.is_empty() {
            0
        } else {
            (1u32 << self.legs.len()) - 1
        }
    }

    /// Sum over trees whose root vertex sits at `sigma` and carries the root
    /// leg with class `1`. Degree-zero configurations with fewer than three
    /// special points are left out; callers add their conventions.
    pub fn root_sum(&self, sigma: usize) -> Result<Series> {
        self.vertex_sum(sigma, None, true, self.all_legs(), self.bound)
    }

    /// `root_sum` for every fixed point, in parallel.
    pub fn root_sums(&self) -> Result<Vec<Series>> {
        (0..self.t.fixed_points().len()).into_par_iter().map(|s| self.root_sum(s)).collect()
    }

    fn euler_power(&self, sigma: usize, k: i64) -> RatFunc {
        match k {
            -1 => self.euler_inv[sigma].clone(),
            0 => RatFunc::one(self.t.nvars()),
            k => self.euler[sigma].pow(k as i32).expect("positive power"),
        }
    }

    /// Subtrees beyond an edge choice, exact in degrees `<= budget`.
    fn branch(&self, choice: usize, mask: u32, budget: i64) -> Result<Arc<Series>> {
        let key = (choice, mask, budget);
        if let Some(v) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let c = &self.choices[choice];
        let below = self.vertex_sum(c.far, Some(&c.omega_far), false, mask, budget - c.degree)?;
        let value = Arc::new(c.factor.mul(&below)?);
        let mut memo = self.memo.lock().expect("memo lock");
        Ok(memo.entry(key).or_insert(value).clone())
    }

    fn configs(&self, sigma: usize, rest: u32, budget: i64) -> Vec<Config> {
        let mut options: Vec<(usize, u32)> = Vec::new();
        for &c in &self.choices_at[sigma] {
            if self.choices[c].degree > budget {
                continue;
            }
            let mut sub = rest;
            loop {
                options.push((c, sub));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_configs(&options, 0, rest, budget, &mut cur, &mut out);
        out
    }

    fn extend_configs(
        &self,
        options: &[(usize, u32)],
        start: usize,
        rest: u32,
        budget: i64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Config>,
    ) {
        if rest == 0 {
            let mut weight = Rat::one();
            let mut i = 0;
            while i < cur.len() {
                let mut j = i;
                while j < cur.len() && cur[j] == cur[i] {
                    j += 1;
                }
                weight /= factorial((j - i) as u32);
                i = j;
            }
            out.push((cur.iter().map(|&k| options[k]).collect(), weight));
        }
        for k in start..options.len() {
            let (c, m) = options[k];
            if m & !rest != 0 || self.choices[c].degree > budget {
                continue;
            }
            // Identical children can only be leg-free ones.
            if m != 0 && cur.last() == Some(&k) {
                continue;
            }
            cur.push(k);
            self.extend_configs(options, k, rest & !m, budget - self.choices[c].degree, cur, out);
            cur.pop();
        }
    }

    fn vertex_sum(&self, sigma: usize, parent: Option<&MultiPoly>, root: bool, mask: u32, budget: i64) -> Result<Series> {
        let nv = self.t.nvars();
        let mut total = self.zero();
        let mut sub = mask;
        loop {
            let here = sub;
            let rest = mask & !here;
            let mut class = RatFunc::one(nv);
            let mut flags: Vec<MultiPoly> = parent.cloned().into_iter().collect();
            let mut plain: Vec<u32> = Vec::new();
            let mut kinds: Vec<&LegKind> = Vec::new();
            if root {
                kinds.push(&self.root);
            }
            for (l, leg) in self.legs.iter().enumerate() {
                if here & (1 << l) != 0 {
                    class = class.mul(&leg.class[sigma]);
                    kinds.push(&leg.kind);
                }
            }
            for k in kinds {
                match k {
                    LegKind::Psi(a) => plain.push(*a),
                    LegKind::Desc(x) => flags.push(MultiPoly::var(nv, *x)),
                }
            }
            if !class.is_zero() {
                for (children, weight) in self.configs(sigma, rest, budget) {
                    let mut product = self.one();
                    let mut used = 0;
                    let mut fl = flags.clone();
                    for &(c, m) in &children {
                        product = product.mul(&*self.branch(c, m, budget)?)?;
                        used += self.choices[c].degree;
                        fl.push(self.choices[c].omega_near.clone());
                    }
                    if product.is_zero() {
                        continue;
                    }
                    let valence = children.len() as i64 + parent.is_some() as i64;
                    let euler = self.euler_power(sigma, valence - 1);
                    let max_j = match &self.shift_powers {
                        Some(p) => (p[sigma].len() - 1).min((budget - used).max(0) as usize),
                        None => 0,
                    };
                    for j in 0..=max_j {
                        let n = fl.len() + plain.len() + j;
                        if valence == 0 && n < 3 {
                            continue;
                        }
                        let mut ps = plain.clone();
                        ps.extend(std::iter::repeat_n(0, j));
                        let vi = vertex_integral(nv, &fl, &ps)?;
                        if vi.is_zero() {
                            continue;
                        }
                        let coeff = vi.mul(&euler).mul(&class).scale(&weight);
                        let term = if j == 0 {
                            product.scale_by(&coeff)
                        } else {
                            let sp = &self.shift_powers.as_ref().expect("shift present")[sigma][j];
                            product.mul(sp)?.scale_by(&coeff)
                        };
                        total = total.add(&term)?;
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        Ok(total.filter_degrees(|d| d <= budget))
    }
}
