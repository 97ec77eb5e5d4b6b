//! Toric GIT quotients `C^{n+r} // (C*)^r`: fixed points, restrictions of the
//! line bundles `L_rho`, invariant curves and effective classes.
//!
//! The ring of every restriction has `n + r + 2` indeterminates: the
//! equivariant parameters `l1..lN` (one per ray), then `z`, then `w`.

mod presentation;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use presentation::{preset_names, GitPresentation};

use crate::error::{Error, Result};
use crate::exact::{determinant, rat, solve_rational, CurveClass, Grading, MultiPoly, Rat, RatFunc};

/// A torus-fixed point `p_sigma`; `sigma` lists the rays whose coordinate
/// vanishes there.
#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub sigma: Vec<usize>,
    pub complement: Vec<usize>,
    /// `c_1(L_rho)|_sigma` for every ray, zero off `sigma`.
    pub bundle_weights: Vec<MultiPoly>,
    /// Coefficients of `theta` in the basis `{xi_rho : rho not in sigma}`.
    pub theta_coeffs: Vec<i64>,
}

impl FixedPoint {
    pub fn tangent_weights(&self) -> Vec<MultiPoly> {
        self.sigma.iter().map(|&r| self.bundle_weights[r].clone()).collect()
    }

    pub fn contains(&self, rho: usize) -> bool {
        self.sigma.contains(&rho)
    }
}

/// A closed invariant curve joining two fixed points.
#[derive(Clone, Debug)]
pub struct TOrbit {
    /// Indices into the fixed-point list.
    pub ends: (usize, usize),
    pub class: CurveClass,
    /// `d_rho` of the class for every ray.
    pub pairings: Vec<i64>,
    /// Tangent weight of the curve at `ends.0`; at `ends.1` it is the negative.
    pub weight: MultiPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub dim: usize,
    pub semi_positive: bool,
    pub fano: bool,
    /// `c_1 . beta >= 2` on every generator, which forces `I_1 = 0`.
    pub i1_vanishes: bool,
    pub chi_top: usize,
    /// `(generator, sum_rho d_rho)` for each effective generator.
    pub c1_on_generators: Vec<(CurveClass, i64)>,
    /// Rays lying in no fixed point: their divisors are empty.
    pub ghost_rays: Vec<usize>,
    pub picard_rank_note: String,
}

/// A validated presentation together with all derived fixed-point data.
#[derive(Clone, Debug)]
pub struct Toric {
    name: String,
    pres: GitPresentation,
    fixed: Vec<FixedPoint>,
    orbits: Vec<TOrbit>,
    generators: Vec<CurveClass>,
    generators_overridden: bool,
    gauge: Vec<Rat>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn to_int(x: &Rat, what: &str) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::NonUnimodular(format!("{what} = {x} is not integral")));
    }
    i64::try_from(x.to_integer()).map_err(|_| Error::InvalidPresentation(format!("{what} overflows")))
}

impl Toric {
    pub fn load(pres: GitPresentation) -> Result<Self> {
        Self::load_named(pres, "custom")
    }

    pub fn preset(name: &str) -> Result<Self> {
        Self::load_named(GitPresentation::preset(name)?, name)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::load(GitPresentation::from_json(text)?)
    }

    pub fn load_named(pres: GitPresentation, name: &str) -> Result<Self> {
        pres.validate_shape()?;
        let fixed = compute_fixed_points(&pres)?;
        if fixed.is_empty() {
            return Err(Error::NoStableFixedPoint);
        }
        let mut toric = Toric {
            name: name.to_string(),
            gauge: vec![Rat::zero(); pres.nrays()],
            pres,
            fixed,
            orbits: Vec::new(),
            generators: Vec::new(),
            generators_overridden: false,
        };
        toric.orbits = toric.compute_orbits()?;
        toric.generators = toric.compute_generators()?;
        Ok(toric)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation(&self) -> &GitPresentation {
        &self.pres
    }

    pub fn dim(&self) -> usize {
        self.pres.n
    }

    pub fn rank(&self) -> usize {
        self.pres.r
    }

    pub fn nrays(&self) -> usize {
        self.pres.nrays()
    }

    /// Number of indeterminates: `l1..lN, z, w`.
    pub fn nvars(&self) -> usize {
        self.nrays() + 2
    }

    pub fn zvar(&self) -> usize {
        self.nrays()
    }

    pub fn wvar(&self) -> usize {
        self.nrays() + 1
    }

    pub fn var_names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.nrays()).map(|i| format!("l{i}")).collect();
        v.push("z".into());
        v.push("w".into());
        v
    }

    pub fn lambda(&self, rho: usize) -> MultiPoly {
        MultiPoly::var(self.nvars(), rho)
    }

    pub fn z(&self) -> MultiPoly {
        MultiPoly::var(self.nvars(), self.zvar())
    }

    pub fn w(&self) -> MultiPoly {
        MultiPoly::var(self.nvars(), self.wvar())
    }

    pub fn grading(&self) -> Grading {
        Grading::new(self.pres.theta.clone())
    }

    pub fn gauge(&self) -> &[Rat] {
        &self.gauge
    }

    pub fn fixed_points(&self) -> &[FixedPoint] {
        &self.fixed
    }

    pub fn fixed_point(&self, i: usize) -> &FixedPoint {
        &self.fixed[i]
    }

    pub fn fixed_point_index(&self, sigma: &[usize]) -> Option<usize> {
        let mut s = sigma.to_vec();
        s.sort_unstable();
        self.fixed.iter().position(|f| f.sigma == s)
    }

    pub fn bundle_weight(&self, sigma: usize, rho: usize) -> &MultiPoly {
        &self.fixed[sigma].bundle_weights[rho]
    }

    /// Equivariant Euler class of the tangent space at `p_sigma`.
    pub fn euler(&self, sigma: usize) -> RatFunc {
        let factors: Vec<(MultiPoly, i32)> =
            self.fixed[sigma].tangent_weights().into_iter().map(|w| (w, 1)).collect();
        RatFunc::from_product(self.nvars(), Rat::one(), &factors).expect("tangent weights are non-zero")
    }

    pub fn euler_inv(&self, sigma: usize) -> RatFunc {
        let factors: Vec<(MultiPoly, i32)> =
            self.fixed[sigma].tangent_weights().into_iter().map(|w| (w, -1)).collect();
        RatFunc::from_product(self.nvars(), Rat::one(), &factors).expect("tangent weights are non-zero")
    }

    pub fn closed_orbits(&self) -> &[TOrbit] {
        &self.orbits
    }

    /// `d_rho(beta) = beta(xi_rho)` for every ray.
    pub fn pairings(&self, beta: &CurveClass) -> Vec<i64> {
        (0..self.nrays()).map(|rho| beta.pair(&self.pres.xi(rho))).collect()
    }

    /// `d(beta) = beta(L_theta)`.
    pub fn degree(&self, beta: &CurveClass) -> i64 {
        beta.pair(&self.pres.theta)
    }

    /// `c_1(T_X) . beta = sum_rho d_rho`.
    pub fn c1(&self, beta: &CurveClass) -> i64 {
        self.pairings(beta).iter().sum()
    }

    pub fn generators(&self) -> &[CurveClass] {
        &self.generators
    }

    pub fn generators_overridden(&self) -> bool {
        self.generators_overridden
    }

    fn compute_orbits(&self) -> Result<Vec<TOrbit>> {
        let n = self.dim();
        let mut out = Vec::new();
        for a in 0..self.fixed.len() {
            for b in a + 1..self.fixed.len() {
                let (sa, sb) = (&self.fixed[a], &self.fixed[b]);
                let shared = sa.sigma.iter().filter(|r| sb.contains(**r)).count();
                if n == 0 || shared != n - 1 {
                    continue;
                }
                let rho0 = *sa.sigma.iter().find(|r| !sb.contains(**r)).unwrap();
                let rho1 = *sb.sigma.iter().find(|r| !sa.contains(**r)).unwrap();
                let w = sa.bundle_weights[rho0].clone();
                if w.is_zero() {
                    return Err(Error::NonIsolatedOrbit(format!("zero tangent weight at {:?}", sa.sigma)));
                }
                if sb.bundle_weights[rho1] != w.neg() {
                    return Err(Error::Inconsistent(format!(
                        "tangent weights of the curve {:?}-{:?} are not opposite",
                        sa.sigma, sb.sigma
                    )));
                }
                let wr = RatFunc::from_poly(w.clone());
                let mut pairings = Vec::with_capacity(self.nrays());
                for rho in 0..self.nrays() {
                    let diff = RatFunc::from_poly(sa.bundle_weights[rho].sub(&sb.bundle_weights[rho]));
                    let q = diff.div(&wr)?;
                    let c = q.as_constant().ok_or_else(|| {
                        Error::Inconsistent(format!("degree of L_{} on a T-curve is not constant", rho + 1))
                    })?;
                    pairings.push(to_int(&c, "curve degree")?);
                }
                let class = self.class_from_pairings(&pairings, a)?;
                out.push(TOrbit { ends: (a, b), class, pairings, weight: w });
            }
        }
        Ok(out)
    }

    /// Solve `beta(xi_rho) = d_rho` using the complementary basis at `sigma`.
    fn class_from_pairings(&self, d: &[i64], sigma: usize) -> Result<CurveClass> {
        let comp = &self.fixed[sigma].complement;
        let r = self.rank();
        // beta^T B = d_comp with B the columns xi_rho', rho' in the complement.
        let bt: Vec<Vec<Rat>> =
            comp.iter().map(|&rho| (0..r).map(|i| rat(self.pres.weights[i][rho])).collect()).collect();
        let rhs: Vec<Rat> = comp.iter().map(|&rho| rat(d[rho])).collect();
        let beta = solve_rational(&bt, &rhs)
            .ok_or_else(|| Error::Inconsistent("curve class has no solution".into()))?;
        let beta: Vec<i64> = beta.iter().map(|x| to_int(x, "curve class entry")).collect::<Result<_>>()?;
        let class = CurveClass(beta);
        if self.pairings(&class) != d {
            return Err(Error::Inconsistent("curve degrees are not the pairings of a class".into()));
        }
        Ok(class)
    }

    fn compute_generators(&mut self) -> Result<Vec<CurveClass>> {
        let mut gens: Vec<CurveClass> = Vec::new();
        if let Some(user) = &self.pres.effective_generators {
            self.generators_overridden = true;
            for g in user {
                gens.push(CurveClass(g.clone()));
            }
        } else {
            for o in &self.orbits {
                gens.push(o.class.clone());
            }
        }
        let mut seen = BTreeSet::new();
        gens.retain(|g| seen.insert(g.clone()));
        for g in &gens {
            if self.degree(g) <= 0 {
                return Err(Error::InvalidPresentation(format!(
                    "effective generator {g} has non-positive degree {} against theta",
                    self.degree(g)
                )));
            }
        }
        Ok(gens)
    }

    /// All non-negative combinations of the generators of degree `<= d_max`,
    /// including `0`, sorted by degree then lexicographically.
    pub fn effective_classes(&self, d_max: i64) -> Result<Vec<CurveClass>> {
        let zero = CurveClass::zero(self.rank());
        if d_max <= 0 {
            return Ok(vec![zero]);
        }
        if self.generators.is_empty() {
            return Err(Error::EffectiveConeUnknown);
        }
        let mut found = BTreeSet::new();
        let mut stack = vec![zero];
        while let Some(b) = stack.pop() {
            if !found.insert(b.clone()) {
                continue;
            }
            for g in &self.generators {
                let nb = b.add(g);
                if self.degree(&nb) <= d_max && !found.contains(&nb) {
                    stack.push(nb);
                }
            }
        }
        let mut v: Vec<CurveClass> = found.into_iter().collect();
        v.sort_by_key(|b| (self.degree(b), b.clone()));
        Ok(v)
    }

    pub fn is_effective(&self, beta: &CurveClass) -> Result<bool> {
        if beta.rank() != self.rank() {
            return Ok(false);
        }
        let d = self.degree(beta);
        if d < 0 {
            return Ok(false);
        }
        Ok(self.effective_classes(d)?.contains(beta))
    }

    pub fn ghost_rays(&self) -> Vec<usize> {
        (0..self.nrays()).filter(|&rho| self.fixed.iter().all(|f| !f.contains(rho))).collect()
    }

    pub fn classify(&self) -> Result<Classification> {
        if self.generators.is_empty() && self.dim() > 0 {
            return Err(Error::EffectiveConeUnknown);
        }
        let c1: Vec<(CurveClass, i64)> = self.generators.iter().map(|g| (g.clone(), self.c1(g))).collect();
        let semi_positive = c1.iter().all(|(_, c)| *c >= 0);
        let fano = c1.iter().all(|(_, c)| *c > 0);
        let i1_vanishes = c1.iter().all(|(_, c)| *c >= 2);
        let ghost = self.ghost_rays();
        let mut note = format!("Picard rank of the presentation r = {}", self.rank());
        if !ghost.is_empty() {
            let names: Vec<String> = ghost.iter().map(|&g| self.pres.label(g)).collect();
            note.push_str(&format!(
                "; rays {} lie in no fixed point, so their divisors are empty and the \
                 Novikov ring has directions outside the Mori cone",
                names.join(", ")
            ));
        }
        if self.generators_overridden {
            note.push_str("; effective generators supplied by the document");
        }
        Ok(Classification {
            dim: self.dim(),
            semi_positive,
            fano,
            i1_vanishes,
            chi_top: self.fixed.len(),
            c1_on_generators: c1,
            ghost_rays: ghost,
            picard_rank_note: note,
        })
    }

    /// The same target with every restriction transformed by
    /// `l_rho -> l_rho + c_rho` (a change of equivariant lift).
    pub fn with_gauge_shift(&self, c: &[Rat]) -> Toric {
        assert_eq!(c.len(), self.nrays());
        let nv = self.nvars();
        let images: Vec<MultiPoly> = (0..nv)
            .map(|i| {
                let v = MultiPoly::var(nv, i);
                if i < self.nrays() {
                    v.add(&MultiPoly::constant(nv, c[i].clone()))
                } else {
                    v
                }
            })
            .collect();
        let mut out = self.clone();
        for f in &mut out.fixed {
            for bw in &mut f.bundle_weights {
                *bw = bw.substitute(&images);
            }
        }
        for o in &mut out.orbits {
            o.weight = o.weight.substitute(&images);
        }
        for (g, ci) in out.gauge.iter_mut().zip(c) {
            *g += ci;
        }
        out
    }

    pub fn sigma_label(&self, sigma: usize) -> Vec<usize> {
        self.fixed[sigma].sigma.iter().map(|r| r + 1).collect()
    }
}

fn compute_fixed_points(pres: &GitPresentation) -> Result<Vec<FixedPoint>> {
    let nr = pres.nrays();
    let r = pres.r;
    let nv = nr + 2;
    let mut out = Vec::new();
    for sigma in subsets(nr, pres.n) {
        let complement: Vec<usize> = (0..nr).filter(|x| !sigma.contains(x)).collect();
        let b: Vec<Vec<Rat>> =
            (0..r).map(|i| complement.iter().map(|&rho| rat(pres.weights[i][rho])).collect()).collect();
        let det = determinant(&b);
        if det.is_zero() {
            continue;
        }
        let theta: Vec<Rat> = pres.theta.iter().map(|&t| rat(t)).collect();
        let coords = solve_rational(&b, &theta).expect("invertible basis");
        if !coords.iter().all(|c| c.is_positive()) {
            continue;
        }
        if det.abs() != Rat::one() {
            let labels: Vec<usize> = sigma.iter().map(|s| s + 1).collect();
            return Err(Error::NonUnimodular(format!(
                "fixed point {labels:?}: complementary characters have determinant {det}"
            )));
        }
        let theta_coeffs = coords.iter().map(|c| to_int(c, "theta coordinate")).collect::<Result<Vec<_>>>()?;
        let mut bundle_weights = Vec::with_capacity(nr);
        for rho in 0..nr {
            let xi: Vec<Rat> = (0..r).map(|i| rat(pres.weights[i][rho])).collect();
            let c = solve_rational(&b, &xi).expect("invertible basis");
            let mut wgt = MultiPoly::var(nv, rho);
            for (k, &rp) in complement.iter().enumerate() {
                wgt = wgt.sub(&MultiPoly::var(nv, rp).scale(&c[k]));
            }
            bundle_weights.push(wgt);
        }
        out.push(FixedPoint { sigma, complement, bundle_weights, theta_coeffs });
    }
    Ok(out)
}
