//! Fans, the anticanonical polytope and reflexivity, Picard/class ranks via
//! conewise-linear functions, singular-cone diagnostics, and smooth toric
//! triple intersection numbers.
//!
//! Fans are small data: a list of primitive integer rays and the maximal
//! cones as ray-index sets. The shipped fans cover the nodal threefold and
//! its small resolutions together with the ambient products used in the
//! cross-module checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp::{origin_position, simplex_max, LpOutcome, OriginPosition};
use crate::rat::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToricError {
    #[error("fan is not complete: the anticanonical polytope is unbounded")]
    Unbounded,
    #[error("origin is not interior to the polytope")]
    OriginNotInterior,
    #[error("rays do not span the ambient lattice")]
    RaysDoNotSpan,
    #[error("fan is not smooth: {0}")]
    NotSmooth(String),
    #[error("malformed fan: {0}")]
    Malformed(String),
}

/// Rays and maximal cones of a (complete) fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Self {
        let fan = Fan { rays, cones };
        fan.validate().expect("well-formed fan");
        fan
    }

    pub fn validate(&self) -> Result<(), ToricError> {
        let dim = self.dim();
        for r in &self.rays {
            if r.len() != dim {
                return Err(ToricError::Malformed("ray dimension mismatch".into()));
            }
            let g = r.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
            if g != 1 {
                return Err(ToricError::Malformed(format!("ray {r:?} is not primitive")));
            }
        }
        for cone in &self.cones {
            for &i in cone {
                if i >= self.rays.len() {
                    return Err(ToricError::Malformed("cone ray index out of range".into()));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Fan, ToricError> {
        let fan: Fan = serde_json::from_value(v.clone())
            .map_err(|e| ToricError::Malformed(e.to_string()))?;
        fan.validate()?;
        Ok(fan)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialize fan")
    }

    /// True when the positive hull of the rays is all of R^dim.
    pub fn is_complete_support(&self) -> bool {
        let pts: Vec<Vec<Rat>> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        matches!(origin_position(&pts), OriginPosition::Interior)
    }
}

/// A lattice (or rational, before the reflexivity check) polytope by its
/// vertex list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticePolytope {
    pub vertices: Vec<Vec<Rat>>,
}

/// The polytope { m : <m, r> >= -1 for every ray r }, as a vertex list.
pub fn anticanonical_polytope(fan: &Fan) -> Result<LatticePolytope, ToricError> {
    if !fan.is_complete_support() {
        return Err(ToricError::Unbounded);
    }
    let d = fan.dim();
    let rays = &fan.rays;
    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    // vertices are the feasible solutions of d active constraints
    let idxs: Vec<usize> = (0..rays.len()).collect();
    for combo in combinations(&idxs, d) {
        let mut mat: Vec<Vec<Rat>> = combo
            .iter()
            .map(|&i| {
                let mut row: Vec<Rat> = rays[i].iter().map(|&x| rat(x)).collect();
                row.push(rat(-1));
                row
            })
            .collect();
        let Some(sol) = solve_augmented(&mut mat, d) else {
            continue;
        };
        let feasible = rays.iter().all(|r| {
            let dot: Rat = r.iter().zip(&sol).map(|(&a, b)| rat(a) * b).sum();
            dot >= rat(-1)
        });
        if feasible && !vertices.contains(&sol) {
            vertices.push(sol);
        }
    }
    vertices.sort();
    Ok(LatticePolytope { vertices })
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn solve_augmented(mat: &mut Vec<Vec<Rat>>, d: usize) -> Option<Vec<Rat>> {
    for col in 0..d {
        let p = (col..d).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(p, col);
        let inv = rat(1) / mat[col][col].clone();
        for c in col..=d {
            mat[col][c] = mat[col][c].clone() * inv.clone();
        }
        for r in 0..d {
            if r != col && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..=d {
                    let delta = f.clone() * mat[col][c].clone();
                    mat[r][c] -= delta;
                }
            }
        }
    }
    Some((0..d).map(|r| mat[r][d].clone()).collect())
}

/// Supporting facet functionals of a full-dimensional polytope with the
/// origin interior, normalized to <x, a> = -1 on the facet. These are the
/// vertices of the polar dual.
pub fn polar_dual(p: &LatticePolytope) -> Result<LatticePolytope, ToricError> {
    let d = p.vertices.first().map(|v| v.len()).unwrap_or(0);
    if p.vertices.len() <= d {
        return Err(ToricError::OriginNotInterior);
    }
    let idxs: Vec<usize> = (0..p.vertices.len()).collect();
    let mut duals: Vec<Vec<Rat>> = Vec::new();
    for combo in combinations(&idxs, d) {
        // functional a with <v_i, a> = -1 on the combo
        let mut mat: Vec<Vec<Rat>> = combo
            .iter()
            .map(|&i| {
                let mut row = p.vertices[i].clone();
                row.push(rat(-1));
                row
            })
            .collect();
        let Some(a) = solve_augmented(&mut mat, d) else {
            continue;
        };
        // supporting: every vertex on the >= -1 side
        let supporting = p.vertices.iter().all(|v| {
            let dot: Rat = v.iter().zip(&a).map(|(x, y)| x * y).sum();
            dot >= rat(-1)
        });
        // and tight on at least d affinely independent vertices by construction
        if supporting && !duals.contains(&a) {
            duals.push(a);
        }
    }
    if duals.is_empty() {
        return Err(ToricError::OriginNotInterior);
    }
    duals.sort();
    Ok(LatticePolytope { vertices: duals })
}

fn is_integral(p: &LatticePolytope) -> bool {
    p.vertices
        .iter()
        .all(|v| v.iter().all(|x| x.denom().is_one()))
}

/// Reflexive: integral vertices and integral polar dual (origin interior).
pub fn is_reflexive(p: &LatticePolytope) -> Result<bool, ToricError> {
    let dual = polar_dual(p)?;
    Ok(is_integral(p) && is_integral(&dual))
}

/// Rank of the group of conewise-linear functions modulo globally linear
/// ones: the Picard rank of the complete toric variety.
pub fn picard_rank(fan: &Fan) -> Result<usize, ToricError> {
    if !fan.is_complete_support() {
        return Err(ToricError::Unbounded);
    }
    let d = fan.dim();
    let ncones = fan.cones.len();
    // variables: one linear functional per maximal cone.
    // constraints: functionals agree on shared rays.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (ri, ray) in fan.rays.iter().enumerate() {
        let containing: Vec<usize> = fan
            .cones
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&ri))
            .map(|(i, _)| i)
            .collect();
        for w in containing.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mut row = vec![rat(0); d * ncones];
            for k in 0..d {
                row[a * d + k] = rat(ray[k]);
                row[b * d + k] = -rat(ray[k]);
            }
            rows.push(row);
        }
    }
    let rank = rational_rank(&mut rows, d * ncones);
    let solution_dim = d * ncones - rank;
    Ok(solution_dim - d)
}

fn rational_rank(rows: &mut Vec<Vec<Rat>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rat(1) / rows[rank][col].clone();
        for c in 0..ncols {
            rows[rank][c] = rows[rank][c].clone() * inv.clone();
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = f.clone() * rows[rank][c].clone();
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Weil class rank: number of rays minus the lattice dimension.
pub fn class_rank(fan: &Fan) -> Result<usize, ToricError> {
    let d = fan.dim();
    let mut rows: Vec<Vec<Rat>> = fan
        .rays
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    if rational_rank(&mut rows, d) != d {
        return Err(ToricError::RaysDoNotSpan);
    }
    Ok(fan.rays.len() - d)
}

/// Per-cone diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub rays: Vec<usize>,
    pub simplicial: bool,
    pub smooth: bool,
    /// "smooth", "simplicial-singular", "odp" (with certificate), or
    /// "non-simplicial".
    pub singularity_label: String,
    /// A unimodular matrix carrying the cone onto the cone over the unit
    /// square, when the ODP certificate succeeds.
    pub odp_certificate: Option<Vec<Vec<i64>>>,
}

pub fn cone_diagnostics(fan: &Fan) -> Vec<ConeReport> {
    let d = fan.dim();
    fan.cones
        .iter()
        .map(|cone| {
            let rays: Vec<Vec<i64>> = cone.iter().map(|&i| fan.rays[i].clone()).collect();
            let mut rows: Vec<Vec<Rat>> = rays
                .iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect();
            let rank = rational_rank(&mut rows, d);
            let simplicial = cone.len() == rank;
            let (smooth, mut label, mut cert) = if simplicial {
                let idx = lattice_index(&rays);
                if idx == 1 {
                    (true, "smooth".to_string(), None)
                } else {
                    (false, "simplicial-singular".to_string(), None)
                }
            } else {
                (false, "non-simplicial".to_string(), None)
            };
            if !simplicial && cone.len() == 4 && d == 3 {
                if let Some(m) = odp_certificate(&rays) {
                    label = "odp".into();
                    cert = Some(m);
                }
            }
            ConeReport {
                rays: cone.clone(),
                simplicial,
                smooth,
                singularity_label: label,
                odp_certificate: cert,
            }
        })
        .collect()
}

/// gcd of the maximal minors of the ray matrix: 1 exactly for smooth cones.
fn lattice_index(rays: &[Vec<i64>]) -> i64 {
    let k = rays.len();
    let d = rays[0].len();
    let cols: Vec<usize> = (0..d).collect();
    let mut g: i64 = 0;
    for combo in combinations(&cols, k) {
        let mut m: Vec<Vec<Rat>> = rays
            .iter()
            .map(|r| combo.iter().map(|&c| rat(r[c])).collect())
            .collect();
        let det = det_rat(&mut m);
        let int = det.numer().to_i64().unwrap_or(0).abs();
        g = num_integer::gcd(g, int);
    }
    g
}

fn det_rat(m: &mut Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = rat(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return rat(0);
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = rat(1) / m[col][col].clone();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = m[r][col].clone() * inv.clone();
                for c in col..n {
                    let delta = f.clone() * m[col][c].clone();
                    m[r][c] -= delta;
                }
            }
        }
    }
    det
}

/// Search for a unimodular change of lattice carrying the 4-ray cone onto the
/// cone over the unit square {(0,0,1),(1,0,1),(0,1,1),(1,1,1)}. The search
/// runs over the 24 assignments of rays to targets; each assignment pins the
/// matrix by exact linear algebra and is then checked for integrality,
/// determinant +-1, and the entry bound 3.
fn odp_certificate(rays: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let targets: [[i64; 3]; 4] = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]];
    let perms = permutations(4);
    for perm in perms {
        // M . ray[i] = target[perm[i]]; solve from the first three rays
        // row-wise: for each output coordinate k, M_k . ray[i] = target[perm[i]][k]
        let mut m_rows: Vec<Vec<Rat>> = Vec::new();
        let mut ok = true;
        for k in 0..3 {
            let mut sys: Vec<Vec<Rat>> = (0..3)
                .map(|i| {
                    let mut row: Vec<Rat> = rays[i].iter().map(|&x| rat(x)).collect();
                    row.push(rat(targets[perm[i]][k]));
                    row
                })
                .collect();
            match solve_augmented(&mut sys, 3) {
                Some(sol) => m_rows.push(sol),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        // check the fourth ray, integrality, entries, determinant
        let apply = |v: &Vec<i64>| -> Vec<Rat> {
            m_rows
                .iter()
                .map(|row| row.iter().zip(v).map(|(a, &b)| a * rat(b)).sum())
                .collect()
        };
        let fourth = apply(&rays[3]);
        let want: Vec<Rat> = targets[perm[3]].iter().map(|&x| rat(x)).collect();
        if fourth != want {
            continue;
        }
        if !m_rows
            .iter()
            .all(|r| r.iter().all(|x| x.denom().is_one() && x.numer().abs() <= BigInt::from(3)))
        {
            continue;
        }
        let mut m2 = m_rows.clone();
        let det = det_rat(&mut m2);
        if det != rat(1) && det != rat(-1) {
            continue;
        }
        let out: Vec<Vec<i64>> = m_rows
            .iter()
            .map(|r| r.iter().map(|x| x.numer().to_i64().unwrap()).collect())
            .collect();
        return Some(out);
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let smaller = permutations(n - 1);
    let mut out = Vec::new();
    for p in smaller {
        for slot in 0..=p.len() {
            let mut q: Vec<usize> = p.iter().map(|&x| x + 1).collect();
            q.insert(slot, 0);
            out.push(q);
        }
    }
    // normalize: permutations of 0..n
    out.iter()
        .map(|p| {
            let mut q = vec![0; n];
            for (i, &v) in p.iter().enumerate() {
                q[i] = v;
            }
            q
        })
        .collect()
}

/// Membership of an integer vector in the cone spanned by `gens`
/// (LP feasibility for nonnegative combinations).
pub fn cone_contains(gens: &[Vec<i64>], point: &[i64]) -> bool {
    let d = point.len();
    let k = gens.len();
    // feasibility: sum λ_i g_i = p, λ >= 0. maximize 0 subject to equality
    // rows expressed as two inequalities each.
    let mut a = Vec::new();
    let mut b = Vec::new();
    for coord in 0..d {
        let row: Vec<Rat> = (0..k).map(|i| rat(gens[i][coord])).collect();
        a.push(row.clone());
        b.push(rat(point[coord]));
        a.push(row.iter().map(|x| -x.clone()).collect());
        b.push(rat(-point[coord]));
    }
    let c = vec![rat(0); k];
    matches!(simplex_max(&c, &a, &b), LpOutcome::Optimal { .. })
}

/// Every maximal cone of `fine` lies in some maximal cone of `coarse`.
pub fn fan_refines(fine: &Fan, coarse: &Fan) -> bool {
    fine.cones.iter().all(|fc| {
        let gens: Vec<Vec<i64>> = fc.iter().map(|&i| fine.rays[i].clone()).collect();
        coarse.cones.iter().any(|cc| {
            let cgens: Vec<Vec<i64>> = cc.iter().map(|&i| coarse.rays[i].clone()).collect();
            gens.iter().all(|g| cone_contains(&cgens, g))
        })
    })
}

// ---------------------------------------------------------------------------
// Triple intersection numbers on smooth complete threefolds
// ---------------------------------------------------------------------------

/// All D_i D_j D_k on a smooth complete 3-dimensional fan: distinct spanning
/// triples give 1, other distinct triples 0, repeated indices resolve through
/// the ray linear relations.
pub struct TripleIntersections {
    fan: Fan,
    cache: std::cell::RefCell<BTreeMap<[usize; 3], Rat>>,
}

pub fn toric_triple_intersections(fan: &Fan) -> Result<TripleIntersections, ToricError> {
    if fan.dim() != 3 {
        return Err(ToricError::Malformed("triple products need a threefold".into()));
    }
    if !fan.is_complete_support() {
        return Err(ToricError::Unbounded);
    }
    for rep in cone_diagnostics(fan) {
        if !rep.smooth {
            return Err(ToricError::NotSmooth(format!("cone {:?}", rep.rays)));
        }
    }
    Ok(TripleIntersections {
        fan: fan.clone(),
        cache: std::cell::RefCell::new(BTreeMap::new()),
    })
}

impl TripleIntersections {
    fn spans_cone(&self, set: &[usize]) -> bool {
        self.fan
            .cones
            .iter()
            .any(|c| set.iter().all(|i| c.contains(i)))
    }

    /// A rational functional with <m, ray_i> = 1 and (when j differs from i)
    /// <m, ray_j> = 0.
    fn functional(&self, i: usize, j: Option<usize>) -> Vec<Rat> {
        let d = 3;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        rows.push(self.fan.rays[i].iter().map(|&x| rat(x)).collect());
        rhs.push(rat(1));
        if let Some(j) = j {
            rows.push(self.fan.rays[j].iter().map(|&x| rat(x)).collect());
            rhs.push(rat(0));
        }
        // complete to a solvable square system with unit rows
        for k in 0..d {
            if rows.len() == d {
                break;
            }
            let mut candidate = vec![rat(0); d];
            candidate[k] = rat(1);
            let mut test: Vec<Vec<Rat>> = rows.clone();
            test.push(candidate.clone());
            let mut m = test.clone();
            if rational_rank(&mut m, d) == rows.len() + 1 {
                rows.push(candidate);
                rhs.push(rat(0));
            }
        }
        let mut aug: Vec<Vec<Rat>> = rows
            .into_iter()
            .zip(rhs)
            .map(|(mut r, v)| {
                r.push(v);
                r
            })
            .collect();
        solve_augmented(&mut aug, d).expect("independent rows")
    }

    pub fn triple(&self, mut i: usize, mut j: usize, mut k: usize) -> Rat {
        // sort for the cache
        if i > j {
            std::mem::swap(&mut i, &mut j);
        }
        if j > k {
            std::mem::swap(&mut j, &mut k);
        }
        if i > j {
            std::mem::swap(&mut i, &mut j);
        }
        let key = [i, j, k];
        if let Some(v) = self.cache.borrow().get(&key) {
            return v.clone();
        }
        let value = self.compute(i, j, k);
        self.cache.borrow_mut().insert(key, value.clone());
        value
    }

    fn compute(&self, i: usize, j: usize, k: usize) -> Rat {
        if i != j && j != k && i != k {
            return if self.spans_cone(&[i, j, k]) {
                rat(1)
            } else {
                rat(0)
            };
        }
        if i == j && j == k {
            // reduce one copy of D_i by a functional with <m, r_i> = 1
            let m = self.functional(i, None);
            let mut acc = rat(0);
            for (l, ray) in self.fan.rays.iter().enumerate() {
                if l == i {
                    continue;
                }
                let coef: Rat = m.iter().zip(ray).map(|(a, &b)| a * rat(b)).sum();
                if coef.is_zero() {
                    continue;
                }
                acc -= coef * self.triple(l, i, i);
            }
            return acc;
        }
        // exactly two equal: normalize to (i, i, j)
        let (rep, other) = if i == j { (i, k) } else if j == k { (j, i) } else { (i, j) };
        if !self.spans_cone(&[rep, other]) {
            return rat(0);
        }
        let m = self.functional(rep, Some(other));
        let mut acc = rat(0);
        for (l, ray) in self.fan.rays.iter().enumerate() {
            if l == rep {
                continue;
            }
            let coef: Rat = m.iter().zip(ray).map(|(a, &b)| a * rat(b)).sum();
            if coef.is_zero() {
                continue;
            }
            acc -= coef * self.triple(l, rep, other);
        }
        acc
    }

    /// Expand a cubic form in boundary divisor classes: the value of
    /// (sum_i a_i D_i)(sum_i b_i D_i)(sum_i c_i D_i).
    pub fn cubic(&self, a: &[Rat], b: &[Rat], c: &[Rat]) -> Rat {
        let n = self.fan.rays.len();
        let mut acc = rat(0);
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    if c[k].is_zero() {
                        continue;
                    }
                    acc += a[i].clone() * b[j].clone() * c[k].clone() * self.triple(i, j, k);
                }
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Shipped fans
// ---------------------------------------------------------------------------

pub mod fans {
    use super::Fan;

    /// The nodal toric Fano threefold: six rays, one non-simplicial cone over
    /// a square (the ordinary double point).
    pub fn xn() -> Fan {
        Fan::new(
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-1, -1, 0],
                vec![0, -1, 0],
                vec![-1, -2, -1],
            ],
            vec![
                vec![0, 1, 2],
                vec![0, 2, 4],
                vec![1, 2, 3],
                vec![0, 1, 5],
                vec![1, 5, 3],
                vec![2, 3, 4, 5],
                vec![0, 4, 5],
            ],
        )
    }

    /// Small resolution with the del Pezzo fibration: the square cone is split
    /// along the diagonal {(-1,-1,0), (0,-1,0)}.
    pub fn w() -> Fan {
        Fan::new(
            xn().rays,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 4],
                vec![1, 2, 3],
                vec![0, 1, 5],
                vec![1, 5, 3],
                vec![0, 4, 5],
                vec![2, 3, 4],
                vec![3, 4, 5],
            ],
        )
    }

    /// Small resolution mapping to P(1,1,1,2): split along {(0,0,1), (-1,-2,-1)}.
    pub fn w_plus() -> Fan {
        Fan::new(
            xn().rays,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 4],
                vec![1, 2, 3],
                vec![0, 1, 5],
                vec![1, 5, 3],
                vec![0, 4, 5],
                vec![2, 5, 3],
                vec![2, 5, 4],
            ],
        )
    }

    /// Blow-up of the node: common refinement of the two small resolutions.
    pub fn w_hat() -> Fan {
        let mut rays = xn().rays;
        rays.push(vec![-1, -2, 0]);
        Fan::new(
            rays,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 4],
                vec![1, 2, 3],
                vec![0, 1, 5],
                vec![1, 5, 3],
                vec![0, 4, 5],
                vec![2, 3, 6],
                vec![3, 5, 6],
                vec![5, 4, 6],
                vec![4, 2, 6],
            ],
        )
    }

    /// P(1,1,1,2) with the half-point at the cone over {r0, r2, r5}.
    pub fn p1112() -> Fan {
        Fan::new(
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-1, -2, -1],
            ],
            vec![vec![0, 2, 3], vec![0, 1, 2], vec![0, 1, 3], vec![1, 2, 3]],
        )
    }

    pub fn p1xp2() -> Fan {
        Fan::new(
            vec![
                vec![1, 0, 0],
                vec![-1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![0, -1, -1],
            ],
            vec![
                vec![0, 2, 3],
                vec![0, 2, 4],
                vec![0, 3, 4],
                vec![1, 2, 3],
                vec![1, 2, 4],
                vec![1, 3, 4],
            ],
        )
    }

    pub fn p3() -> Fan {
        Fan::new(
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-1, -1, -1],
            ],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
    }

    pub fn p2() -> Fan {
        Fan::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
    }

    pub fn p1() -> Fan {
        Fan::new(vec![vec![1], vec![-1]], vec![vec![0], vec![1]])
    }

    pub fn f2() -> Fan {
        Fan::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_anticanonical_triangle() {
        let p = anticanonical_polytope(&fans::p2()).unwrap();
        let want: Vec<Vec<Rat>> = vec![
            vec![rat(-1), rat(-1)],
            vec![rat(-1), rat(2)],
            vec![rat(2), rat(-1)],
        ];
        assert_eq!(p.vertices, want);
        assert!(is_reflexive(&p).unwrap());
    }

    #[test]
    fn p1_segment() {
        let p = anticanonical_polytope(&fans::p1()).unwrap();
        assert_eq!(p.vertices, vec![vec![rat(-1)], vec![rat(1)]]);
    }

    #[test]
    fn incomplete_fan_rejected() {
        let half = Fan::new(vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]);
        assert_eq!(anticanonical_polytope(&half), Err(ToricError::Unbounded));
    }

    #[test]
    fn xn_polytope_reflexive() {
        let p = anticanonical_polytope(&fans::xn()).unwrap();
        assert!(is_reflexive(&p).unwrap());
    }

    #[test]
    fn cube_reflexive_and_duality() {
        let cube = LatticePolytope {
            vertices: (0..8)
                .map(|k| {
                    vec![
                        rat(if k & 1 == 0 { -1 } else { 1 }),
                        rat(if k & 2 == 0 { -1 } else { 1 }),
                        rat(if k & 4 == 0 { -1 } else { 1 }),
                    ]
                })
                .collect(),
        };
        assert!(is_reflexive(&cube).unwrap());
        let dual = polar_dual(&cube).unwrap();
        assert!(is_reflexive(&dual).unwrap());
        // scaled simplex is not reflexive
        let p2 = anticanonical_polytope(&fans::p2()).unwrap();
        let scaled = LatticePolytope {
            vertices: p2
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x * rat(2)).collect())
                .collect(),
        };
        assert!(!is_reflexive(&scaled).unwrap());
    }

    #[test]
    fn reflexivity_duality_on_shipped_polytopes() {
        for fan in [fans::xn(), fans::p3(), fans::p1xp2()] {
            let p = anticanonical_polytope(&fan).unwrap();
            let d = polar_dual(&p).unwrap();
            assert_eq!(is_reflexive(&p).unwrap(), is_reflexive(&d).unwrap());
        }
    }

    #[test]
    fn picard_ranks() {
        assert_eq!(picard_rank(&fans::xn()).unwrap(), 2);
        assert_eq!(picard_rank(&fans::p1xp2()).unwrap(), 2);
        assert_eq!(picard_rank(&fans::p3()).unwrap(), 1);
        assert_eq!(picard_rank(&fans::p2()).unwrap(), 1);
        assert_eq!(picard_rank(&fans::w_plus()).unwrap(), 3);
        assert_eq!(picard_rank(&fans::w()).unwrap(), 3);
    }

    #[test]
    fn class_ranks() {
        assert_eq!(class_rank(&fans::xn()).unwrap(), 3);
        assert_eq!(class_rank(&fans::p2()).unwrap(), 1);
        assert_eq!(class_rank(&fans::w_plus()).unwrap(), 3);
        assert_eq!(class_rank(&fans::w_hat()).unwrap(), 4);
        assert_eq!(class_rank(&fans::p1112()).unwrap(), 1);
    }

    #[test]
    fn picard_at_most_class_with_equality_iff_simplicial() {
        for fan in [
            fans::xn(),
            fans::w(),
            fans::w_plus(),
            fans::w_hat(),
            fans::p1xp2(),
            fans::p3(),
            fans::p1112(),
        ] {
            let p = picard_rank(&fan).unwrap();
            let c = class_rank(&fan).unwrap();
            assert!(p <= c);
            let all_simplicial = cone_diagnostics(&fan).iter().all(|r| r.simplicial);
            assert_eq!(p == c, all_simplicial, "{fan:?}");
        }
    }

    #[test]
    fn xn_cone_diagnostics() {
        let reports = cone_diagnostics(&fans::xn());
        let nonsimp: Vec<&ConeReport> = reports.iter().filter(|r| !r.simplicial).collect();
        assert_eq!(nonsimp.len(), 1);
        let odp = nonsimp[0];
        assert_eq!(odp.singularity_label, "odp");
        let m = odp.odp_certificate.as_ref().unwrap();
        // re-verify the certificate maps the cone rays onto the unit square cone
        let apply = |v: &Vec<i64>| -> Vec<i64> {
            m.iter()
                .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect()
        };
        let mut images: Vec<Vec<i64>> = odp
            .rays
            .iter()
            .map(|&i| apply(&fans::xn().rays[i]))
            .collect();
        images.sort();
        let mut want = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
        want.sort();
        assert_eq!(images, want);
    }

    #[test]
    fn p1xp2_all_smooth() {
        assert!(cone_diagnostics(&fans::p1xp2()).iter().all(|r| r.smooth));
        assert!(cone_diagnostics(&fans::f2()).iter().all(|r| r.smooth));
        assert!(cone_diagnostics(&fans::w_plus()).iter().all(|r| r.smooth));
        // the cone point of P(1,1,1,2) is simplicial-singular
        let reports = cone_diagnostics(&fans::p1112());
        assert!(reports.iter().any(|r| r.singularity_label == "simplicial-singular"));
    }

    #[test]
    fn subdivision_relations() {
        let xn = fans::xn();
        assert!(fan_refines(&fans::w(), &xn));
        assert!(fan_refines(&fans::w_plus(), &xn));
        assert!(fan_refines(&fans::w_hat(), &fans::w()));
        assert!(fan_refines(&fans::w_hat(), &fans::w_plus()));
        assert!(fan_refines(&fans::w_plus(), &fans::p1112()));
        assert!(!fan_refines(&fans::w(), &fans::p1112()));
    }

    #[test]
    fn p3_hyperplane_cube() {
        let t = toric_triple_intersections(&fans::p3()).unwrap();
        assert_eq!(t.triple(0, 0, 0), rat(1));
        assert_eq!(t.triple(0, 1, 2), rat(1));
    }

    #[test]
    fn p1xp2_hyperplane_classes() {
        let t = toric_triple_intersections(&fans::p1xp2()).unwrap();
        // H1 = class of ray 0 (pulled back point); H2 = class of ray 2
        assert_eq!(t.triple(0, 0, 2), rat(0));
        assert_eq!(t.triple(0, 2, 2), rat(1));
        assert_eq!(t.triple(2, 2, 2), rat(0));
        // cross-check with the product formula at degrees (2, 3):
        // (2 H1 + 3 H2)^3 = 54
        let n = 5;
        let mut d = vec![rat(0); n];
        d[0] = rat(2);
        d[2] = rat(3);
        assert_eq!(t.cubic(&d, &d, &d), rat(54));
    }

    #[test]
    fn w_plus_intersection_table() {
        let t = toric_triple_intersections(&fans::w_plus()).unwrap();
        // D1 = ray (0,1,0) = index 1, D2 = ray (1,0,0) = index 0,
        // D3 = ray (0,0,1) = index 2
        assert_eq!(t.triple(1, 1, 1), rat(3));
        assert_eq!(t.triple(0, 0, 0), rat(0));
        assert_eq!(t.triple(1, 1, 0), rat(2));
        assert_eq!(t.triple(0, 0, 1), rat(1));
        assert_eq!(t.triple(2, 2, 0), rat(0));
        assert_eq!(t.triple(2, 2, 1), rat(0));
        // the triple self-intersection follows the blow-up geometry:
        // 1/2 on the weighted projective space, then -4/8 and -1 through the
        // two point blow-ups
        assert_eq!(t.triple(2, 2, 2), rat(-1));
        assert_eq!(t.triple(2, 0, 0), rat(0));
        assert_eq!(t.triple(1, 1, 2), rat(1));
        assert_eq!(t.triple(0, 1, 2), rat(1));
    }

    #[test]
    fn fan_json_round_trip() {
        let fan = fans::xn();
        let j = fan.to_json();
        assert_eq!(Fan::from_json(&j).unwrap(), fan);
    }
}
