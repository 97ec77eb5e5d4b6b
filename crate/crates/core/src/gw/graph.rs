//! Explicit enumeration of localization graphs.
//!
//! Graphs are produced with labelled vertices (trees from Pruefer sequences),
//! each carrying weight `1/V!`; by orbit counting this equals the sum over
//! isomorphism classes weighted by `1/|Aut|`. This is slow and is meant as an
//! independent check of the memoized sums.

use super::engine::{Leg, LegKind};
use super::factors::{edge_factor, flag_factor, vertex_factor};
use crate::error::Result;
use crate::exact::{factorial, ratio, CurveClass, MultiPoly, Rat, RatFunc};
use crate::toric::Toric;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocEdge {
    pub ends: (usize, usize),
    pub orbit: usize,
    pub delta: u32,
}

#[derive(Clone, Debug)]
pub struct LocGraph {
    /// Fixed point of each vertex.
    pub sigma: Vec<usize>,
    pub edges: Vec<LocEdge>,
    /// Vertex carrying each marking.
    pub legs: Vec<usize>,
    pub class: CurveClass,
    pub weight: Rat,
}

fn pruefer_trees(v: usize) -> Vec<Vec<(usize, usize)>> {
    if v == 1 {
        return vec![vec![]];
    }
    if v == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = v.pow((v - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(v - 2);
        let mut c = code;
        for _ in 0..v - 2 {
            seq.push(c % v);
            c /= v;
        }
        let mut degree = vec![1usize; v];
        for &x in &seq {
            degree[x] += 1;
        }
        let mut edges = Vec::with_capacity(v - 1);
        for &x in &seq {
            let leaf = (0..v).find(|&i| degree[i] == 1).expect("a leaf exists");
            edges.push((leaf, x));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..v).filter(|&i| degree[i] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

fn orbit_between(t: &Toric, a: usize, b: usize) -> Option<usize> {
    t.closed_orbits().iter().position(|o| o.ends == (a, b) || o.ends == (b, a))
}

/// All labelled localization graphs with `nlegs` markings and `d(beta) <= bound`,
/// excluding the unstable single-vertex ones.
pub fn enumerate_loc_graphs(t: &Toric, bound: i64, nlegs: usize) -> Vec<LocGraph> {
    let nfix = t.fixed_points().len();
    let mut out = Vec::new();
    for v in 1..=(bound.max(0) as usize + 1) {
        if v == 1 && nlegs < 3 {
            continue;
        }
        let weight = factorial(v as u32).recip();
        for tree in pruefer_trees(v) {
            let mut labels = vec![0usize; v];
            loop {
                let orbits: Option<Vec<usize>> =
                    tree.iter().map(|&(a, b)| orbit_between(t, labels[a], labels[b])).collect();
                if let Some(orbits) = orbits {
                    let degs: Vec<i64> = orbits.iter().map(|&o| t.degree(&t.closed_orbits()[o].class)).collect();
                    let mut deltas = vec![1u32; tree.len()];
                    loop {
                        let total: i64 = deltas.iter().zip(&degs).map(|(&d, &g)| d as i64 * g).sum();
                        if total <= bound {
                            let mut class = CurveClass::zero(t.rank());
                            for (&o, &d) in orbits.iter().zip(&deltas) {
                                class = class.add(&t.closed_orbits()[o].class.times(d as i64));
                            }
                            let edges: Vec<LocEdge> = tree
                                .iter()
                                .zip(&orbits)
                                .zip(&deltas)
                                .map(|((&ends, &orbit), &delta)| LocEdge { ends, orbit, delta })
                                .collect();
                            let nplace = v.pow(nlegs as u32);
                            for code in 0..nplace {
                                let mut c = code;
                                let legs: Vec<usize> = (0..nlegs)
                                    .map(|_| {
                                        let x = c % v;
                                        c /= v;
                                        x
                                    })
                                    .collect();
                                out.push(LocGraph {
                                    sigma: labels.clone(),
                                    edges: edges.clone(),
                                    legs,
                                    class: class.clone(),
                                    weight: weight.clone(),
                                });
                            }
                        }
                        // Next covering degrees.
                        let mut i = 0;
                        while i < deltas.len() {
                            deltas[i] += 1;
                            let total: i64 = deltas.iter().zip(&degs).map(|(&d, &g)| d as i64 * g).sum();
                            if total <= bound {
                                break;
                            }
                            deltas[i] = 1;
                            i += 1;
                        }
                        if i == deltas.len() {
                            break;
                        }
                    }
                }
                // Next labelling.
                let mut i = 0;
                while i < v {
                    labels[i] += 1;
                    if labels[i] < nfix {
                        break;
                    }
                    labels[i] = 0;
                    i += 1;
                }
                if i == v {
                    break;
                }
            }
        }
    }
    out
}

impl LocGraph {
    /// Weighted contribution of this graph to `<legs>_{0,k,class}`.
    pub fn contribution(&self, t: &Toric, legs: &[Leg]) -> Result<RatFunc> {
        let nv = t.nvars();
        let mut value = RatFunc::from_product(nv, self.weight.clone(), &[])?;
        let mut flags: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.sigma.len()];
        for e in &self.edges {
            let o = &t.closed_orbits()[e.orbit];
            value = value.mul(&edge_factor(t, e.orbit, e.delta)?);
            let omega = o.weight.scale(&ratio(1, e.delta as i64));
            for v in [e.ends.0, e.ends.1] {
                let s = self.sigma[v];
                value = value.mul(&flag_factor(t, s));
                flags[v].push(if s == o.ends.0 { omega.clone() } else { omega.neg() });
            }
        }
        for (v, &s) in self.sigma.iter().enumerate() {
            let mut fl = flags[v].clone();
            let mut plain = Vec::new();
            let mut classes = Vec::new();
            for (leg, &at) in legs.iter().zip(&self.legs) {
                if at != v {
                    continue;
                }
                classes.push(leg.class[s].clone());
                match leg.kind {
                    LegKind::Psi(a) => plain.push(a),
                    LegKind::Desc(x) => fl.push(MultiPoly::var(nv, x)),
                }
            }
            if classes.iter().any(|c| c.is_zero()) {
                return Ok(RatFunc::zero(nv));
            }
            value = value.mul(&vertex_factor(t, s, &fl, &plain, &classes)?);
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        for v in 1..=5usize {
            let expect = if v == 1 { 1 } else { v.pow((v - 2) as u32) };
            assert_eq!(pruefer_trees(v).len(), expect);
        }
    }
}
