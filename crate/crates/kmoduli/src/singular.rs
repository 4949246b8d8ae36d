//! Discriminant quartics, local singularity analysis, and the fiber
//! conditions for (2,2)-surfaces.
//!
//! The two-variable germ engine is the workhorse: Milnor numbers are local
//! algebra dimensions computed by linear algebra on truncated monomials with
//! a stabilization check, and ADE types follow from the Hessian corank plus
//! the cubic jet. Surface points over finite second-projection fibers are
//! typed through the plane germ of the discriminant (the branch-cover germ is
//! its suspension); points on non-finite fibers go through the
//! three-variable germ directly.
//!
//! Point coordinates live in Q or a declared quadratic extension Q(sqrt(d)).

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{BidegreeForm, QuadricTriple, PLANE_VARS};
use crate::poly::MPoly;
use crate::quad::{quad_roots, Field, QuadExt};
use crate::rat::{rat, Rat};
use crate::roots::{rational_roots, resultant, uni_trim, UniPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SingError {
    #[error("point does not lie on the locus")]
    PointNotOnLocus,
    #[error("germ is smooth at the origin")]
    SmoothPoint,
    #[error("origin is not a critical point")]
    NotCritical,
    #[error("projective point is zero")]
    ZeroPoint,
    #[error("elimination degenerated: {0}")]
    Degenerate(String),
}

// ---------------------------------------------------------------------------
// Ternary quartics
// ---------------------------------------------------------------------------

/// A ternary form in y0, y1, y2 (discriminant curves live here).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryQuartic(pub MPoly);

impl TernaryQuartic {
    pub fn new(p: MPoly) -> Self {
        TernaryQuartic(p.with_vars(&PLANE_VARS))
    }

    pub fn parse(src: &str) -> Self {
        TernaryQuartic(crate::poly::parse_mpoly(src, &PLANE_VARS).expect("parse quartic"))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn proportional_to(&self, other: &TernaryQuartic) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() == other.is_zero();
        }
        self.0.monic_lex() == other.0.monic_lex()
    }
}

impl std::fmt::Display for TernaryQuartic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Debug for TernaryQuartic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Q1 Q3 - Q2^2, expanded exactly. The identically-zero case comes back as a
/// zero quartic; callers branch on `is_zero`.
pub fn discriminant(f: &BidegreeForm) -> TernaryQuartic {
    let QuadricTriple { q1, q2, q3 } = f.split_quadrics();
    TernaryQuartic(q1.mul(&q3).sub(&q2.mul(&q2)))
}

// ---------------------------------------------------------------------------
// Multivariate gcd (primitive PRS) for radical extraction
// ---------------------------------------------------------------------------

fn try_div(num: &MPoly, den: &MPoly) -> Option<MPoly> {
    if den.is_zero() {
        return None;
    }
    if let Some(c) = den.constant_value() {
        return Some(num.scale(&(Rat::one() / c)));
    }
    let var = den
        .vars()
        .iter()
        .find(|v| den.degree_in(v) > 0)
        .cloned()
        .unwrap();
    let vars: Vec<&str> = num.vars().iter().map(|s| s.as_str()).collect();
    let mut rem = num.clone();
    let mut quo = MPoly::zero(&vars);
    let dd = den.degree_in(&var);
    let den_lead = den.coeffs_in(&var)[dd as usize].clone();
    while !rem.is_zero() && rem.degree_in(&var) >= dd {
        let dr = rem.degree_in(&var);
        let rem_lead = rem.coeffs_in(&var)[dr as usize].clone();
        let c = try_div(&rem_lead, &den_lead)?;
        if c.is_zero() {
            return None;
        }
        let shift = MPoly::var(&vars, &var).pow((dr - dd) as i64).unwrap();
        let t = c.mul(&shift);
        quo = quo.add(&t);
        rem = rem.sub(&t.mul(den));
    }
    if rem.is_zero() {
        Some(quo)
    } else {
        None
    }
}

/// gcd up to a nonzero rational factor.
pub fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let vars: Vec<String> = a.vars().to_vec();
    let main = vars
        .iter()
        .rev()
        .find(|v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .cloned();
    let Some(main) = main else {
        return MPoly::constant_like(a, rat(1));
    };
    let content = |p: &MPoly| -> MPoly {
        let coeffs = p.coeffs_in(&main);
        let mut g = MPoly::zero_like(p);
        for c in coeffs {
            if !c.is_zero() {
                g = mpoly_gcd(&g, &c);
            }
        }
        g
    };
    let ca = content(a);
    let cb = content(b);
    let cg = mpoly_gcd(&ca, &cb);
    let pa = try_div(a, &ca).expect("content divides");
    let pb = try_div(b, &cb).expect("content divides");
    let (mut f, mut g) = if pa.degree_in(&main) >= pb.degree_in(&main) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if g.is_zero() {
            break;
        }
        if g.degree_in(&main) == 0 {
            f = MPoly::constant_like(&f, rat(1));
            break;
        }
        let r = pseudo_rem(&f, &g, &main);
        if r.is_zero() {
            f = g;
            break;
        }
        let rc = content(&r);
        let rp = try_div(&r, &rc).expect("content divides");
        f = g;
        g = rp;
    }
    let fp = if f.degree_in(&main) > 0 {
        let fc = content(&f);
        try_div(&f, &fc).expect("content divides")
    } else {
        MPoly::constant_like(&f, rat(1))
    };
    cg.mul(&fp)
}

fn pseudo_rem(a: &MPoly, b: &MPoly, var: &str) -> MPoly {
    let da = a.degree_in(var);
    let db = b.degree_in(var);
    if da < db {
        return a.clone();
    }
    let lead_b = b.coeffs_in(var)[db as usize].clone();
    let mut rem = a.clone();
    let vars: Vec<&str> = a.vars().iter().map(|s| s.as_str()).collect();
    loop {
        if rem.is_zero() || rem.degree_in(var) < db {
            break;
        }
        let dr = rem.degree_in(var);
        let lead_r = rem.coeffs_in(var)[dr as usize].clone();
        let shift = MPoly::var(&vars, var).pow((dr - db) as i64).unwrap();
        rem = rem.mul(&lead_b).sub(&b.mul(&lead_r).mul(&shift));
    }
    rem
}

/// Squarefree part p / gcd(p, partials).
pub fn mpoly_radical(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut g = MPoly::zero_like(p);
    for v in p.vars().to_vec() {
        let d = p.derivative(&v).unwrap();
        if !d.is_zero() {
            g = mpoly_gcd(&g, &d);
        }
    }
    let g = mpoly_gcd(p, &g);
    if g.constant_value().is_some() {
        return p.clone();
    }
    try_div(p, &g).expect("gcd divides")
}

// ---------------------------------------------------------------------------
// Germs over Q(sqrt d): sparse polynomials with QuadExt coefficients
// ---------------------------------------------------------------------------

/// Sparse germ over the declared field; Q embeds with vanishing sqrt part.
#[derive(Clone, Debug)]
pub struct Germ {
    pub nvars: usize,
    pub d: i64,
    pub terms: BTreeMap<Vec<u32>, QuadExt>,
}

impl Germ {
    pub fn zero(nvars: usize, d: i64) -> Self {
        Germ {
            nvars,
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_mpoly(p: &MPoly, d: i64) -> Self {
        let mut g = Germ::zero(p.vars().len(), d);
        for (e, c) in p.terms() {
            g.terms.insert(e.clone(), QuadExt::rational(c.clone(), d));
        }
        g
    }

    fn add_term(&mut self, e: Vec<u32>, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> QuadExt {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| QuadExt::rational(rat(0), self.d))
    }

    pub fn derivative(&self, i: usize) -> Germ {
        let mut out = Germ::zero(self.nvars, self.d);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.mul(&QuadExt::rational(rat(e[i] as i64), self.d)));
        }
        out
    }

    pub fn eval(&self, p: &[QuadExt]) -> QuadExt {
        let mut acc = QuadExt::rational(rat(0), self.d);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&p[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Translate by the point p: result(x) = self(p + x).
    pub fn shift(&self, p: &[QuadExt]) -> Germ {
        let mut out = Germ::zero(self.nvars, self.d);
        for (e, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, QuadExt)> = vec![(vec![0; self.nvars], c.clone())];
            for (i, &k) in e.iter().enumerate() {
                let mut next = Vec::new();
                // binomial expansion of (p_i + x_i)^k
                let mut binoms: Vec<QuadExt> = Vec::with_capacity(k as usize + 1);
                for j in 0..=k {
                    let mut b = rat(1);
                    for t in 0..j {
                        b = b * rat((k - t) as i64) / rat((t + 1) as i64);
                    }
                    let mut ppow = QuadExt::rational(rat(1), self.d);
                    for _ in 0..(k - j) {
                        ppow = ppow.mul(&p[i]);
                    }
                    binoms.push(ppow.mul(&QuadExt::rational(b, self.d)));
                }
                for (mono, coef) in &partial {
                    for (j, bc) in binoms.iter().enumerate() {
                        if bc.is_zero() {
                            continue;
                        }
                        let mut m = mono.clone();
                        m[i] += j as u32;
                        next.push((m, coef.mul(bc)));
                    }
                }
                partial = next;
            }
            for (m, c2) in partial {
                out.add_term(m, c2);
            }
        }
        out
    }

    /// Drop all terms of total degree >= cutoff.
    pub fn truncated(&self, cutoff: u32) -> Germ {
        let mut out = Germ::zero(self.nvars, self.d);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() < cutoff {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &[u32]) -> Germ {
        let mut out = Germ::zero(self.nvars, self.d);
        for (e, c) in &self.terms {
            let e2: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// Lowest total degree appearing.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }
}

fn monomials_below(nvars: usize, cutoff: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, cutoff: u32, cur: &mut Vec<u32>, left: u32, out: &mut Vec<Vec<u32>>) {
        if cur.len() == nvars {
            out.push(cur.clone());
            return;
        }
        for k in 0..left {
            cur.push(k);
            rec(nvars, cutoff, cur, left - k, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, cutoff, &mut Vec::new(), cutoff, &mut out);
    out
}

/// dim_k of k[x]/(generators + m^cutoff) by row reduction over k.
fn truncated_algebra_dim(gens: &[Germ], nvars: usize, d: i64, cutoff: u32) -> usize {
    let basis = monomials_below(nvars, cutoff);
    let index: BTreeMap<Vec<u32>, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows: Vec<Vec<QuadExt>> = Vec::new();
    for g in gens {
        let ord = g.order().unwrap_or(cutoff);
        for m in &basis {
            if m.iter().sum::<u32>() + ord >= cutoff {
                continue;
            }
            let prod = g.mul_monomial(m).truncated(cutoff);
            if prod.is_zero() {
                continue;
            }
            let mut row = vec![QuadExt::rational(rat(0), d); basis.len()];
            for (e, c) in &prod.terms {
                row[index[e]] = c.clone();
            }
            rows.push(row);
        }
    }
    let rank = quad_rank(&mut rows);
    basis.len() - rank
}

fn quad_rank(rows: &mut Vec<Vec<QuadExt>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for x in rows[rank].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(p));
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

/// Result of the stabilized Milnor computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MilnorResult {
    Finite(usize),
    NonIsolated,
}

/// Milnor number of a germ with a critical point at the origin: the dimension
/// of k[[x]]/(partials), truncated at degree D with a D -> D+1 stabilization
/// check, D doubling from 8 up to the cap; failure to stabilize reports a
/// non-isolated singularity.
pub fn milnor_of_germ(f: &Germ) -> Result<MilnorResult, SingError> {
    if !f.coeff(&vec![0; f.nvars]).is_zero() {
        return Err(SingError::PointNotOnLocus);
    }
    let gens: Vec<Germ> = (0..f.nvars).map(|i| f.derivative(i)).collect();
    for g in &gens {
        if let Some(0) = g.order() {
            return Err(SingError::NotCritical);
        }
    }
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(MilnorResult::NonIsolated);
    }
    let caps: &[u32] = if f.nvars <= 2 { &[8, 16, 32] } else { &[8, 12] };
    for &dcap in caps {
        let a = truncated_algebra_dim(&gens, f.nvars, f.d, dcap);
        let b = truncated_algebra_dim(&gens, f.nvars, f.d, dcap + 1);
        if a == b {
            return Ok(MilnorResult::Finite(a));
        }
    }
    Ok(MilnorResult::NonIsolated)
}

/// Milnor number of a plane-curve germ over Q.
pub fn milnor_number(germ: &MPoly) -> Result<MilnorResult, SingError> {
    assert!(germ.vars().len() == 2, "plane germs have two local variables");
    milnor_of_germ(&Germ::from_mpoly(germ, 0))
}

// ---------------------------------------------------------------------------
// ADE classification
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdeType {
    A(usize),
    D(usize),
    E(usize),
    /// Corank 2 with triple or vanishing cubic jet and Milnor data outside
    /// the E range.
    EOrWorse(usize),
    NonIsolated,
    Smooth,
}

impl std::fmt::Display for AdeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdeType::A(n) => write!(f, "A{n}"),
            AdeType::D(n) => write!(f, "D{n}"),
            AdeType::E(n) => write!(f, "E{n}"),
            AdeType::EOrWorse(n) => write!(f, "E-or-worse(mu={n})"),
            AdeType::NonIsolated => write!(f, "non_isolated"),
            AdeType::Smooth => write!(f, "smooth"),
        }
    }
}

impl AdeType {
    pub fn label(&self) -> String {
        self.to_string()
    }
}

fn hessian2(f: &Germ) -> [[QuadExt; 2]; 2] {
    let at = |a: usize, b: usize| f.derivative(a).derivative(b).coeff(&[0, 0]);
    [[at(0, 0), at(0, 1)], [at(1, 0), at(1, 1)]]
}

fn rank2(m: &[[QuadExt; 2]; 2]) -> usize {
    let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
    if !det.is_zero() {
        2
    } else if m.iter().flatten().any(|x| !x.is_zero()) {
        1
    } else {
        0
    }
}

/// Classify a plane-curve germ singular at the origin: corank 0 -> A1,
/// corank 1 -> A_mu, corank 2 -> read the cubic jet (three distinct roots D4,
/// exactly one repeated root D_mu, triple or zero cubic E_mu for mu in 6..8
/// and `EOrWorse` beyond).
pub fn classify_ade_germ(f: &Germ) -> Result<AdeType, SingError> {
    if !f.coeff(&vec![0, 0]).is_zero() {
        return Err(SingError::PointNotOnLocus);
    }
    let gx = f.derivative(0).coeff(&[0, 0]);
    let gy = f.derivative(1).coeff(&[0, 0]);
    if !gx.is_zero() || !gy.is_zero() {
        return Err(SingError::SmoothPoint);
    }
    let h = hessian2(f);
    let corank = 2 - rank2(&h);
    let mu = match milnor_of_germ(f)? {
        MilnorResult::NonIsolated => return Ok(AdeType::NonIsolated),
        MilnorResult::Finite(m) => m,
    };
    match corank {
        0 => Ok(AdeType::A(1)),
        1 => Ok(AdeType::A(mu)),
        _ => {
            // cubic jet a x^3 + b x^2 y + c x y^2 + e y^3
            let (a, b, c, e) = (
                f.coeff(&[3, 0]),
                f.coeff(&[2, 1]),
                f.coeff(&[1, 2]),
                f.coeff(&[0, 3]),
            );
            if a.is_zero() && b.is_zero() && c.is_zero() && e.is_zero() {
                return Ok(AdeType::EOrWorse(mu));
            }
            let q = |v: i64| QuadExt::rational(rat(v), f.d);
            let disc = q(18)
                .mul(&a)
                .mul(&b)
                .mul(&c)
                .mul(&e)
                .add(&q(-4).mul(&b).mul(&b).mul(&b).mul(&e))
                .add(&b.mul(&b).mul(&c).mul(&c))
                .add(&q(-4).mul(&a).mul(&c).mul(&c).mul(&c))
                .add(&q(-27).mul(&a).mul(&a).mul(&e).mul(&e));
            if !disc.is_zero() {
                return Ok(AdeType::D(4));
            }
            // triple linear factor iff the degree-2 covariants vanish:
            // b^2 = 3ac, c^2 = 3be, bc = 9ae
            let h1 = b.mul(&b).sub(&q(3).mul(&a).mul(&c));
            let h2 = c.mul(&c).sub(&q(3).mul(&b).mul(&e));
            let h3 = b.mul(&c).sub(&q(9).mul(&a).mul(&e));
            if h1.is_zero() && h2.is_zero() && h3.is_zero() {
                Ok(match mu {
                    6 | 7 | 8 => AdeType::E(mu),
                    _ => AdeType::EOrWorse(mu),
                })
            } else {
                Ok(AdeType::D(mu))
            }
        }
    }
}

/// Classification of a rational plane germ (two local variables).
pub fn classify_ade(germ: &MPoly) -> Result<AdeType, SingError> {
    assert!(germ.vars().len() == 2, "plane germs have two local variables");
    classify_ade_germ(&Germ::from_mpoly(germ, 0))
}

// ---------------------------------------------------------------------------
// Charts, local data
// ---------------------------------------------------------------------------

/// Normalize projective coordinates so the first nonzero entry is 1.
pub fn normalize_point(p: &[QuadExt]) -> Result<Vec<QuadExt>, SingError> {
    let pivot = p
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(SingError::ZeroPoint)?;
    let inv = p[pivot].inv().expect("nonzero");
    Ok(p.iter().map(|x| x.mul(&inv)).collect())
}

/// Germ of a plane curve at a projective point: affinize at the first nonzero
/// coordinate and shift the point to the origin. Local variables are the two
/// remaining coordinates in order.
pub fn curve_germ(q: &TernaryQuartic, point: &[QuadExt; 3], d: i64) -> Result<Germ, SingError> {
    let p = normalize_point(point)?;
    let pivot = p.iter().position(|x| !x.is_zero()).unwrap();
    let f = Germ::from_mpoly(&q.0, d);
    let shifted = f.shift(&p);
    let mut out = Germ::zero(2, d);
    for (e, c) in &shifted.terms {
        if e[pivot] != 0 {
            continue;
        }
        let rest: Vec<u32> = (0..3).filter(|&i| i != pivot).map(|i| e[i]).collect();
        out.add_term(rest, c.clone());
    }
    if !out.coeff(&[0, 0]).is_zero() {
        return Err(SingError::PointNotOnLocus);
    }
    Ok(out)
}

/// Report of the jacobian/hessian stage at a point of a curve or surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalGermReport {
    pub jacobian_rank: usize,
    pub hessian_corank: usize,
    pub milnor: Option<usize>,
    pub ade_type: AdeType,
}

/// Exact ranks and type data for a plane-curve germ at a projective point in
/// the declared field; the point must lie on the curve.
pub fn local_data_curve(
    q: &TernaryQuartic,
    point: &[QuadExt; 3],
    field: Field,
) -> Result<LocalGermReport, SingError> {
    let d = field.discriminant();
    let germ = curve_germ(q, point, d)?;
    let gx = germ.derivative(0).coeff(&[0, 0]);
    let gy = germ.derivative(1).coeff(&[0, 0]);
    if !gx.is_zero() || !gy.is_zero() {
        return Ok(LocalGermReport {
            jacobian_rank: 1,
            hessian_corank: 0,
            milnor: None,
            ade_type: AdeType::Smooth,
        });
    }
    let corank = 2 - rank2(&hessian2(&germ));
    let milnor = milnor_of_germ(&germ)?;
    let ade = classify_ade_germ(&germ)?;
    Ok(LocalGermReport {
        jacobian_rank: 0,
        hessian_corank: corank,
        milnor: match milnor {
            MilnorResult::Finite(m) => Some(m),
            MilnorResult::NonIsolated => None,
        },
        ade_type: ade,
    })
}

/// A point of P^1 x P^2 over the declared field.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfacePoint {
    pub t: [QuadExt; 2],
    pub y: [QuadExt; 3],
}

impl SurfacePoint {
    pub fn rational(t: [i64; 2], y: [i64; 3]) -> Self {
        SurfacePoint {
            t: [QuadExt::rational(rat(t[0]), 0), QuadExt::rational(rat(t[1]), 0)],
            y: [
                QuadExt::rational(rat(y[0]), 0),
                QuadExt::rational(rat(y[1]), 0),
                QuadExt::rational(rat(y[2]), 0),
            ],
        }
    }
}

/// Three-variable germ of the (2,2)-surface at a point (affinized at the
/// first nonzero t- and y-coordinates). Local variables: the remaining
/// t-coordinate, then the two remaining y-coordinates.
pub fn surface_germ(f: &BidegreeForm, p: &SurfacePoint, d: i64) -> Result<Germ, SingError> {
    let t = normalize_point(&p.t)?;
    let y = normalize_point(&p.y)?;
    let tp = t.iter().position(|x| !x.is_zero()).unwrap();
    let yp = y.iter().position(|x| !x.is_zero()).unwrap();
    let all = [
        t[0].clone(),
        t[1].clone(),
        y[0].clone(),
        y[1].clone(),
        y[2].clone(),
    ];
    let g = Germ::from_mpoly(&f.to_mpoly(), d);
    let shifted = g.shift(&all);
    let keep: Vec<usize> = (0..5).filter(|&i| i != tp && i != 2 + yp).collect();
    let mut out = Germ::zero(3, d);
    for (e, c) in &shifted.terms {
        if e[tp] != 0 || e[2 + yp] != 0 {
            continue;
        }
        let rest: Vec<u32> = keep.iter().map(|&i| e[i]).collect();
        out.add_term(rest, c.clone());
    }
    if !out.coeff(&[0, 0, 0]).is_zero() {
        return Err(SingError::PointNotOnLocus);
    }
    Ok(out)
}

/// Jacobian/Hessian data at a point of R via the three-variable germ.
pub fn local_data_surface(
    f: &BidegreeForm,
    p: &SurfacePoint,
    field: Field,
) -> Result<LocalGermReport, SingError> {
    let d = field.discriminant();
    let germ = surface_germ(f, p, d)?;
    let grads: Vec<QuadExt> = (0..3).map(|i| germ.derivative(i).coeff(&[0, 0, 0])).collect();
    let jrank = if grads.iter().all(|x| x.is_zero()) { 0 } else { 1 };
    let mut h = vec![vec![QuadExt::rational(rat(0), d); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            h[i][j] = germ.derivative(i).derivative(j).coeff(&[0, 0, 0]);
        }
    }
    let hrank = quad_rank(&mut h);
    let corank = 3 - hrank;
    if jrank == 1 {
        return Ok(LocalGermReport {
            jacobian_rank: 1,
            hessian_corank: corank,
            milnor: None,
            ade_type: AdeType::Smooth,
        });
    }
    let (mu, ade) = match milnor_of_germ(&germ)? {
        MilnorResult::NonIsolated => (None, AdeType::NonIsolated),
        MilnorResult::Finite(m) => {
            let ade = match corank {
                0 => AdeType::A(1),
                1 => AdeType::A(m),
                // D/E splitting is routed through the discriminant germ in
                // surface_singularities; here only Milnor data is reported
                _ => AdeType::EOrWorse(m),
            };
            (Some(m), ade)
        }
    };
    Ok(LocalGermReport {
        jacobian_rank: 0,
        hessian_corank: corank,
        milnor: mu,
        ade_type: ade,
    })
}

// ---------------------------------------------------------------------------
// Fiber conditions
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub pi2_fiber_finite: bool,
    pub pi1_fiber_reduced: bool,
}

/// Fiber conditions at a point of R: the second-projection fiber is finite
/// iff not all of Q1, Q2, Q3 vanish at the plane point; the first-projection
/// fiber is reduced iff the restricted ternary quadratic has rank >= 2
/// (rank 0 means the fiber is the whole plane).
pub fn fiber_conditions(
    f: &BidegreeForm,
    p: &SurfacePoint,
    field: Field,
) -> Result<FiberReport, SingError> {
    let d = field.discriminant();
    let t = normalize_point(&p.t)?;
    let y = normalize_point(&p.y)?;
    let all = [
        t[0].clone(),
        t[1].clone(),
        y[0].clone(),
        y[1].clone(),
        y[2].clone(),
    ];
    let g = Germ::from_mpoly(&f.to_mpoly(), d);
    if !g.eval(&all).is_zero() {
        return Err(SingError::PointNotOnLocus);
    }
    let QuadricTriple { q1, q2, q3 } = f.split_quadrics();
    let ev = |q: &MPoly| Germ::from_mpoly(q, d).eval(&y);
    let (v1, v2, v3) = (ev(&q1), ev(&q2), ev(&q3));
    let pi2_fiber_finite = !(v1.is_zero() && v2.is_zero() && v3.is_zero());

    // fiber of pi1 at t: the ternary quadratic t0^2 Q1 + 2 t0 t1 Q2 + t1^2 Q3
    let t0 = &t[0];
    let t1 = &t[1];
    let two = QuadExt::rational(rat(2), d);
    let coef_at = |e: [u32; 3]| -> QuadExt {
        let pick = |q: &MPoly| QuadExt::rational(q.coeff(&e), d);
        t0.mul(t0)
            .mul(&pick(&q1))
            .add(&two.mul(t0).mul(t1).mul(&pick(&q2)))
            .add(&t1.mul(t1).mul(&pick(&q3)))
    };
    let half = QuadExt::rational(crate::rat::ratq(1, 2), d);
    let m00 = coef_at([2, 0, 0]);
    let m11 = coef_at([0, 2, 0]);
    let m22 = coef_at([0, 0, 2]);
    let m01 = coef_at([1, 1, 0]).mul(&half);
    let m02 = coef_at([1, 0, 1]).mul(&half);
    let m12 = coef_at([0, 1, 1]).mul(&half);
    let mut mat = vec![
        vec![m00, m01.clone(), m02.clone()],
        vec![m01, m11, m12.clone()],
        vec![m02, m12, m22],
    ];
    let rank = quad_rank(&mut mat);
    Ok(FiberReport {
        pi2_fiber_finite,
        pi1_fiber_reduced: rank >= 2,
    })
}

// ---------------------------------------------------------------------------
// Singular points of a plane quartic over a declared field
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct QuarticSingularity {
    pub point: [QuadExt; 3],
    pub report: LocalGermReport,
}

#[derive(Clone, Debug)]
pub enum QuarticSingReport {
    /// Non-reduced curve: the radical is returned instead of a point list.
    NonReduced { radical: MPoly },
    Points(Vec<QuarticSingularity>),
}

/// Complete list of singular points of a reduced quartic with coordinates in
/// the declared field, by resultant elimination chart by chart.
pub fn rational_singular_points(
    q: &TernaryQuartic,
    field: Field,
) -> Result<QuarticSingReport, SingError> {
    if q.is_zero() {
        return Err(SingError::Degenerate("zero quartic".into()));
    }
    let radical = mpoly_radical(&q.0);
    if radical.total_degree() < q.0.total_degree() {
        return Ok(QuarticSingReport::NonReduced { radical });
    }
    let d = field.discriminant();
    let mut points: Vec<[QuadExt; 3]> = Vec::new();

    // chart y0 = 1 catches every point with y0 != 0; chart y1 = 1 restricted
    // to y0 = 0 catches the rest except [0:0:1], checked directly
    chart_solutions(&q.0, 0, field, &mut points)?;
    let mut line_pts = Vec::new();
    chart_solutions(&q.0, 1, field, &mut line_pts)?;
    for p in line_pts {
        if p[0].is_zero() {
            points.push(p);
        }
    }
    {
        let p = [
            QuadExt::rational(rat(0), d),
            QuadExt::rational(rat(0), d),
            QuadExt::rational(rat(1), d),
        ];
        if is_singular_at(&q.0, &p) {
            points.push(p);
        }
    }
    let mut out = Vec::new();
    for point in points {
        let report = local_data_curve(q, &point, field)?;
        out.push(QuarticSingularity { point, report });
    }
    Ok(QuarticSingReport::Points(out))
}

fn is_singular_at(f: &MPoly, p: &[QuadExt; 3]) -> bool {
    let d = p[0].d;
    let g = Germ::from_mpoly(f, d);
    (0..3).all(|i| g.derivative(i).eval(p).is_zero()) && g.eval(p).is_zero()
}

/// Solve f = f_a = f_b = 0 in the affine chart where coordinate `pivot` is 1.
fn chart_solutions(
    f: &MPoly,
    pivot: usize,
    field: Field,
    points: &mut Vec<[QuadExt; 3]>,
) -> Result<(), SingError> {
    let d = field.discriminant();
    let other: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let (a, b) = (other[0], other[1]);
    let names = ["y0", "y1", "y2"];
    let chart_vars = [names[a], names[b]];
    let mut fa = MPoly::zero(&chart_vars);
    for (e, c) in f.terms() {
        fa = fa.add(&MPoly::from_terms(
            &chart_vars,
            [(vec![e[a], e[b]], c.clone())],
        ));
    }
    let f1 = fa.derivative(names[a]).unwrap();
    let f2 = fa.derivative(names[b]).unwrap();
    let res_pairs = [(&f1, &f2), (&fa, &f1), (&fa, &f2)];
    let mut res: Option<MPoly> = None;
    for (p, q) in res_pairs {
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let r = resultant(p, q, names[b]);
        if !r.is_zero() {
            res = Some(r);
            break;
        }
    }
    let Some(res) = res else {
        return Err(SingError::Degenerate(
            "all elimination resultants vanish".into(),
        ));
    };
    if res.constant_value().is_some() {
        return Ok(());
    }
    let rc = res
        .univariate_coeffs(names[a])
        .map_err(|e| SingError::Degenerate(format!("resultant not univariate: {e}")))?;
    let candidates: Vec<QuadExt> = match field {
        Field::Q => rational_roots(&rc)
            .into_iter()
            .map(|r| QuadExt::rational(r, d))
            .collect(),
        Field::QSqrt(dd) => {
            let coeffs: Vec<QuadExt> =
                rc.iter().map(|c| QuadExt::rational(c.clone(), dd)).collect();
            quad_roots(&coeffs, dd)
        }
    };
    for alpha in candidates {
        let polys: Vec<Vec<QuadExt>> = [&fa, &f1, &f2]
            .iter()
            .map(|p| specialize(p, names[a], &alpha, names[b], d))
            .collect();
        let mut common: Option<Vec<QuadExt>> = None;
        let mut all_zero = true;
        for pc in &polys {
            if pc.iter().all(|c| c.is_zero()) {
                continue;
            }
            all_zero = false;
            common = Some(match common {
                None => pc.clone(),
                Some(g) => quad_gcd(&g, pc),
            });
        }
        if all_zero {
            return Err(SingError::Degenerate(
                "positive-dimensional chart solution".into(),
            ));
        }
        let Some(common) = common else { continue };
        if common.len() <= 1 {
            continue;
        }
        let roots = quad_univariate_roots(&common, field);
        for beta in roots {
            let mut p = [
                QuadExt::rational(rat(0), d),
                QuadExt::rational(rat(0), d),
                QuadExt::rational(rat(0), d),
            ];
            p[pivot] = QuadExt::rational(rat(1), d);
            p[a] = alpha.clone();
            p[b] = beta;
            if is_singular_at(f, &p) {
                points.push(p);
            }
        }
    }
    Ok(())
}

/// Roots in the declared field of a dense univariate polynomial over it.
fn quad_univariate_roots(coeffs: &[QuadExt], field: Field) -> Vec<QuadExt> {
    match field {
        Field::Q => {
            let rats: Vec<Rat> = coeffs.iter().map(|c| c.a.clone()).collect();
            let mut trimmed: UniPoly = rats;
            uni_trim(&mut trimmed);
            if trimmed.len() <= 1 {
                return vec![];
            }
            rational_roots(&trimmed)
                .into_iter()
                .map(|r| QuadExt::rational(r, 0))
                .collect()
        }
        Field::QSqrt(dd) => {
            let mut c = coeffs.to_vec();
            while c.last().map(|x| x.is_zero()).unwrap_or(false) {
                c.pop();
            }
            if c.len() <= 1 {
                return vec![];
            }
            quad_roots(&c, dd)
        }
    }
}

fn specialize(p: &MPoly, var_a: &str, alpha: &QuadExt, var_b: &str, d: i64) -> Vec<QuadExt> {
    let ia = p.var_index(var_a).unwrap();
    let ib = p.var_index(var_b).unwrap();
    let deg = p.degree_in(var_b) as usize;
    let mut out = vec![QuadExt::rational(rat(0), d); deg + 1];
    for (e, c) in p.terms() {
        let mut term = QuadExt::rational(c.clone(), d);
        for _ in 0..e[ia] {
            term = term.mul(alpha);
        }
        out[e[ib] as usize] = out[e[ib] as usize].add(&term);
    }
    out
}

fn quad_gcd(a: &[QuadExt], b: &[QuadExt]) -> Vec<QuadExt> {
    let trim = |v: &[QuadExt]| -> Vec<QuadExt> {
        let mut v = v.to_vec();
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        v
    };
    let mut a = trim(a);
    let mut b = trim(b);
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![b[0].clone()];
        }
        let lead = b.last().unwrap().inv().expect("nonzero lead");
        let db = b.len() - 1;
        while !a.is_empty() && a.len() - 1 >= db {
            let da = a.len() - 1;
            let q = a.last().unwrap().mul(&lead);
            let shift = da - db;
            for (i, bc) in b.iter().enumerate() {
                let delta = q.mul(bc);
                a[i + shift] = a[i + shift].sub(&delta);
            }
            a = trim(&a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

// ---------------------------------------------------------------------------
// Sing(R) for catalog surfaces (rational coordinates)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SurfaceSingularity {
    pub point: SurfacePoint,
    pub report: LocalGermReport,
    pub fiber: FiberReport,
}

#[derive(Clone, Debug)]
pub enum SurfaceSingReport {
    /// Non-reduced or zero discriminant: non-isolated singularities.
    NonIsolated { delta_radical: Option<MPoly> },
    Points(Vec<SurfaceSingularity>),
}

/// All singular points of the surface over Q. Every singular point of R lies
/// over a singular point of the discriminant; over a finite fiber the unique
/// candidate is the ramification point, and over a non-finite fiber the
/// candidates are the common roots of the restricted partials.
pub fn surface_singularities(f: &BidegreeForm) -> Result<SurfaceSingReport, SingError> {
    let field = Field::Q;
    let d = field.discriminant();
    let delta = discriminant(f);
    if delta.is_zero() {
        return Ok(SurfaceSingReport::NonIsolated { delta_radical: None });
    }
    let sing = rational_singular_points(&delta, field)?;
    let plane_points: Vec<[QuadExt; 3]> = match sing {
        QuarticSingReport::NonReduced { radical } => {
            return Ok(SurfaceSingReport::NonIsolated {
                delta_radical: Some(radical),
            })
        }
        QuarticSingReport::Points(pts) => pts.into_iter().map(|p| p.point).collect(),
    };
    let QuadricTriple { q1, q2, q3 } = f.split_quadrics();
    let mut out = Vec::new();
    for q in plane_points {
        let ev = |p: &MPoly| Germ::from_mpoly(p, d).eval(&q);
        let (v1, v2, _v3) = (ev(&q1), ev(&q2), ev(&q3));
        let non_finite = v1.is_zero() && v2.is_zero() && _v3.is_zero();
        if non_finite {
            // restrict all five partials to the fiber {q} x P^1
            let fm = f.to_mpoly();
            let mut restricted: Vec<Vec<QuadExt>> = Vec::new();
            for v in ["t0", "t1", "y0", "y1", "y2"] {
                let pd = fm.derivative(v).unwrap();
                let mut coeffs = vec![QuadExt::rational(rat(0), d); 3];
                for (e, c) in pd.terms() {
                    let mut term = QuadExt::rational(c.clone(), d);
                    for (yi, k) in [e[2], e[3], e[4]].iter().enumerate() {
                        for _ in 0..*k {
                            term = term.mul(&q[yi]);
                        }
                    }
                    coeffs[e[1] as usize] = coeffs[e[1] as usize].add(&term);
                }
                restricted.push(coeffs);
            }
            let mut common: Option<Vec<QuadExt>> = None;
            let mut all_zero = true;
            let mut full_deg = usize::MAX;
            for r in &restricted {
                let mut dense = r.clone();
                while dense.last().map(|c| c.is_zero()).unwrap_or(false) {
                    dense.pop();
                }
                if dense.is_empty() {
                    continue;
                }
                all_zero = false;
                full_deg = full_deg.min(degree_as_binary(r));
                common = Some(match common {
                    None => dense,
                    Some(g) => quad_gcd(&g, &dense),
                });
            }
            if all_zero {
                return Ok(SurfaceSingReport::NonIsolated { delta_radical: None });
            }
            let common = common.unwrap();
            let mut troots: Vec<[QuadExt; 2]> = Vec::new();
            // the restricted partials are binary quadratics in (t0, t1),
            // stored densely by t1-degree; the dehomogenization t0 = 1 misses
            // exactly the root [0:1], present iff every top (t0-free)
            // coefficient vanishes
            if restricted
                .iter()
                .filter(|r| r.iter().any(|c| !c.is_zero()))
                .all(|r| r.last().map(|c| c.is_zero()).unwrap_or(true))
            {
                troots.push([
                    QuadExt::rational(rat(0), d),
                    QuadExt::rational(rat(1), d),
                ]);
            }
            let _ = full_deg;
            if common.len() > 1 {
                for r in quad_univariate_roots(&common, field) {
                    troots.push([QuadExt::rational(rat(1), d), r]);
                }
            }
            for t in troots {
                let sp = SurfacePoint {
                    t,
                    y: [q[0].clone(), q[1].clone(), q[2].clone()],
                };
                let report = local_data_surface(f, &sp, field)?;
                if report.ade_type == AdeType::Smooth {
                    continue;
                }
                let fiber = fiber_conditions(f, &sp, field)?;
                out.push(SurfaceSingularity {
                    point: sp,
                    report,
                    fiber,
                });
            }
        } else {
            // finite fiber: the quadric t0^2 v1 + 2 t0 t1 v2 + t1^2 v3 has a
            // double root since q lies on the branch curve
            let t: [QuadExt; 2] = if !v1.is_zero() {
                // root (t0 : t1) = (-v2/v1 : 1)
                [
                    v1.inv().unwrap().mul(&v2).neg(),
                    QuadExt::rational(rat(1), d),
                ]
            } else {
                // v1 = 0 forces v2 = 0 on the branch curve: double root (1:0)
                [QuadExt::rational(rat(1), d), QuadExt::rational(rat(0), d)]
            };
            let sp = SurfacePoint {
                t,
                y: [q[0].clone(), q[1].clone(), q[2].clone()],
            };
            let report = local_data_surface(f, &sp, field)?;
            if report.ade_type == AdeType::Smooth {
                continue;
            }
            // over a finite fiber the branch-cover germ is the suspension of
            // the plane germ of the discriminant: the plane type is the type
            let fiber = fiber_conditions(f, &sp, field)?;
            let plane = local_data_curve(&delta, &q, field)?;
            debug_assert_eq!(plane.milnor, report.milnor);
            let mut merged = report;
            merged.ade_type = plane.ade_type;
            out.push(SurfaceSingularity {
                point: sp,
                report: merged,
                fiber,
            });
        }
    }
    Ok(SurfaceSingReport::Points(out))
}

fn degree_as_binary(r: &[QuadExt]) -> usize {
    let mut deg = 0;
    for (i, c) in r.iter().enumerate() {
        if !c.is_zero() {
            deg = i;
        }
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::lookup;
    use crate::poly::parse_mpoly;
    use num_traits::Zero;

    fn rq(v: i64) -> QuadExt {
        QuadExt::rational(rat(v), 0)
    }

    #[test]
    fn discriminants_of_named_surfaces() {
        let d_r0 = discriminant(&lookup("R0", &[]).unwrap());
        assert!(d_r0.proportional_to(&TernaryQuartic::parse("(y0*y2 + y1^2)^2")));

        let d_r2 = discriminant(&lookup("R2", &[]).unwrap());
        assert!(d_r2.proportional_to(&TernaryQuartic::parse("(y0*y2 - y1^2)^2")));

        let d_r3 = discriminant(&lookup("R3", &[]).unwrap());
        assert!(d_r3.proportional_to(&TernaryQuartic::parse("y1^2*(y1^2 + 4*y0*y2)")));

        let d_r1 = discriminant(&lookup("R1", &[]).unwrap());
        assert!(d_r1.proportional_to(&TernaryQuartic::parse("y0*y2*(4*y1^2 + y0*y2)")));
    }

    #[test]
    fn milnor_of_a_n_normal_forms() {
        // oracle: the partials generate the monomial ideal (x, y^n), whose
        // standard monomials are 1, y, ..., y^(n-1)
        for n in 1..=7usize {
            let f = parse_mpoly(&format!("x^2 + y^{}", n + 1), &["x", "y"]).unwrap();
            assert_eq!(milnor_number(&f).unwrap(), MilnorResult::Finite(n), "A{n}");
        }
    }

    #[test]
    fn milnor_node_and_nonisolated() {
        let f = parse_mpoly("x^2 + y^2", &["x", "y"]).unwrap();
        assert_eq!(milnor_number(&f).unwrap(), MilnorResult::Finite(1));
        let g = parse_mpoly("x^2", &["x", "y"]).unwrap();
        assert_eq!(milnor_number(&g).unwrap(), MilnorResult::NonIsolated);
    }

    #[test]
    fn milnor_rejects_noncritical() {
        let f = parse_mpoly("x + y^2", &["x", "y"]).unwrap();
        assert_eq!(milnor_number(&f), Err(SingError::NotCritical));
    }

    #[test]
    fn classify_normal_forms() {
        let vars = ["x", "y"];
        let cases: Vec<(&str, AdeType)> = vec![
            ("x^2 - y^2", AdeType::A(1)),
            ("x^2 + y^4", AdeType::A(3)),
            ("x^2*y + y^3", AdeType::D(4)),
            ("x^2*y + y^4", AdeType::D(5)),
            ("x^2*y + y^5", AdeType::D(6)),
            ("x^3 + y^4", AdeType::E(6)),
            ("x^3 + x*y^3", AdeType::E(7)),
            ("x^3 + y^5", AdeType::E(8)),
        ];
        for (src, expect) in cases {
            let f = parse_mpoly(src, &vars).unwrap();
            assert_eq!(classify_ade(&f).unwrap(), expect, "{src}");
        }
    }

    #[test]
    fn classify_perturbed_a_n() {
        // deformations x^2 + y^(n+1) + higher order terms keep type A_n
        let vars = ["x", "y"];
        for n in 2..=5usize {
            let src = format!("x^2 + y^{} + 3*x*y^{} + 5*y^{}", n + 1, n + 1, n + 3);
            let f = parse_mpoly(&src, &vars).unwrap();
            assert_eq!(classify_ade(&f).unwrap(), AdeType::A(n), "{src}");
            let MilnorResult::Finite(mu) = milnor_number(&f).unwrap() else {
                panic!()
            };
            assert_eq!(mu, n);
        }
    }

    #[test]
    fn classify_d4_from_branch_quartic() {
        // y(xz^2 + y^2(y-x)) localized at [1:0:0]
        let q = TernaryQuartic::parse("y1*(y0*y2^2 + y1^2*(y1 - y0))");
        let p = [rq(1), rq(0), rq(0)];
        let rep = local_data_curve(&q, &p, Field::Q).unwrap();
        assert_eq!(rep.ade_type, AdeType::D(4));
    }

    #[test]
    fn classify_a5_oscnode() {
        // (xz - y^2)^2 - x^2 y^2 at [0:0:1]
        let q = TernaryQuartic::parse("(y0*y2 - y1^2)^2 - y0^2*y1^2");
        let p = [rq(0), rq(0), rq(1)];
        let rep = local_data_curve(&q, &p, Field::Q).unwrap();
        assert_eq!(rep.ade_type, AdeType::A(5));
    }

    #[test]
    fn wall_delta_1111_a3_at_vertex() {
        let q =
            TernaryQuartic::parse("(y0*y2 - y1^2)^2 - y1*(y1 - y0)*(y1 - 2*y0)*(y1 - 3*y0)");
        let p = [rq(0), rq(0), rq(1)];
        let rep = local_data_curve(&q, &p, Field::Q).unwrap();
        assert_eq!(rep.milnor, Some(3));
        assert_eq!(rep.ade_type, AdeType::A(3));
    }

    #[test]
    fn smooth_conic_point() {
        let q = TernaryQuartic::new(parse_mpoly("y0*y2 - y1^2", &PLANE_VARS).unwrap());
        let p = [rq(1), rq(0), rq(0)];
        let rep = local_data_curve(&q, &p, Field::Q).unwrap();
        assert_eq!(rep.jacobian_rank, 1);
        assert_eq!(rep.ade_type, AdeType::Smooth);
    }

    #[test]
    fn nodal_family_has_a1_at_unit_point() {
        // x^2 z^2 - 2s xz y^2 + r y^4 + t x y^3 - x^2 y^2 at [1:0:0]
        let q = TernaryQuartic::parse(
            "y0^2*y2^2 - 4*y0*y2*y1^2 + 3*y1^4 + 5*y0*y1^3 - y0^2*y1^2",
        );
        let p = [rq(1), rq(0), rq(0)];
        let rep = local_data_curve(&q, &p, Field::Q).unwrap();
        assert_eq!(rep.ade_type, AdeType::A(1));
        assert!(rep.hessian_corank == 0);
    }

    #[test]
    fn hessian_template_corank() {
        // a11 = b01 = b02 = c00 = 0 template: Hessian determinant
        // -2 a11 b02^2 = 0, so corank >= 1 at ([1:0],[1:0:0])
        let f = BidegreeForm::parse(
            "t0^2*(y1*y2 + y2^2) + t0*t1*(y1^2 + y1*y2 + y2^2) \
             + t1^2*(y0*y1 + y1^2 + y1*y2 + y2^2 + y0*y2)",
        )
        .unwrap();
        let p = SurfacePoint::rational([1, 0], [1, 0, 0]);
        let rep = local_data_surface(&f, &p, Field::Q).unwrap();
        assert!(rep.hessian_corank >= 1, "report {rep:?}");
    }

    #[test]
    fn point_off_locus_rejected() {
        let f = lookup("R1", &[]).unwrap();
        let p = SurfacePoint::rational([1, 1], [1, 1, 1]);
        assert_eq!(
            local_data_surface(&f, &p, Field::Q),
            Err(SingError::PointNotOnLocus)
        );
    }

    #[test]
    fn fiber_conditions_examples() {
        let f = lookup("Cnonred", &[]).unwrap();
        let p = SurfacePoint::rational([1, 0], [1, 0, 0]);
        let rep = fiber_conditions(&f, &p, Field::Q).unwrap();
        assert!(!rep.pi1_fiber_reduced);
        assert!(rep.pi2_fiber_finite);

        let r1 = lookup("R1", &[]).unwrap();
        let p = SurfacePoint::rational([-1, 1], [0, 1, 0]);
        let rep = fiber_conditions(&r1, &p, Field::Q).unwrap();
        assert!(rep.pi2_fiber_finite);
        assert!(rep.pi1_fiber_reduced);

        let g = BidegreeForm::parse("t0^2*y0^2 + t0*t1*y1^2 + t1^2*(y2^2 + y0*y1)").unwrap();
        let p = SurfacePoint::rational([0, 1], [1, 0, 0]);
        let rep = fiber_conditions(&g, &p, Field::Q).unwrap();
        assert!(rep.pi2_fiber_finite);
        assert!(rep.pi1_fiber_reduced);
    }

    #[test]
    fn ox_singular_points() {
        let d_r1 = discriminant(&lookup("R1", &[]).unwrap());
        let rep = rational_singular_points(&d_r1, Field::Q).unwrap();
        let QuarticSingReport::Points(pts) = rep else {
            panic!("ox is reduced")
        };
        assert_eq!(pts.len(), 3);
        let mut kinds: Vec<String> = pts.iter().map(|p| p.report.ade_type.label()).collect();
        kinds.sort();
        assert_eq!(kinds, vec!["A1", "A3", "A3"]);
        // the three corner points of the ox
        for expect in [[rq(1), rq(0), rq(0)], [rq(0), rq(0), rq(1)], [rq(0), rq(1), rq(0)]] {
            assert!(
                pts.iter()
                    .any(|p| normalize_point(&p.point).unwrap() == expect.to_vec()),
                "missing expected corner"
            );
        }
    }

    #[test]
    fn wall_delta_22_full_point_list() {
        // (xz - y^2)^2 - y^2 (y-x)^2: A3 at [0:0:1], A1 at [0:1:1], [1:1:1], [1:0:0]
        let q = TernaryQuartic::parse("(y0*y2 - y1^2)^2 - y1^2*(y1 - y0)^2");
        let rep = rational_singular_points(&q, Field::Q).unwrap();
        let QuarticSingReport::Points(pts) = rep else { panic!() };
        assert_eq!(pts.len(), 4);
        let find = |p: [QuadExt; 3]| -> String {
            pts.iter()
                .find(|s| normalize_point(&s.point).unwrap() == p.to_vec())
                .map(|s| s.report.ade_type.label())
                .unwrap_or_else(|| "missing".into())
        };
        assert_eq!(find([rq(0), rq(0), rq(1)]), "A3");
        assert_eq!(find([rq(0), rq(1), rq(1)]), "A1");
        assert_eq!(find([rq(1), rq(1), rq(1)]), "A1");
        assert_eq!(find([rq(1), rq(0), rq(0)]), "A1");
    }

    #[test]
    fn smooth_fermat_quartic_no_singularities() {
        let q = TernaryQuartic::parse("y0^4 + y1^4 + y2^4");
        let rep = rational_singular_points(&q, Field::Q).unwrap();
        let QuarticSingReport::Points(pts) = rep else { panic!() };
        assert!(pts.is_empty());
    }

    #[test]
    fn quadratic_extension_points_found() {
        // y2^2 y0^2 - (y1^2 - 2 y0^2)^2 has singular points with y1 = ±sqrt(2) y0
        let q = TernaryQuartic::parse("y2^2*y0^2 - (y1^2 - 2*y0^2)^2");
        match rational_singular_points(&q, Field::QSqrt(2)).unwrap() {
            QuarticSingReport::Points(pts) => {
                let with_sqrt = pts
                    .iter()
                    .filter(|p| p.point.iter().any(|c| !c.b.is_zero()))
                    .count();
                assert!(with_sqrt >= 2, "{pts:?}");
            }
            other => panic!("{other:?}"),
        }
        // the same curve over Q misses them
        match rational_singular_points(&q, Field::Q).unwrap() {
            QuarticSingReport::Points(pts) => {
                assert!(pts.iter().all(|p| p.point.iter().all(|c| c.b.is_zero())));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_reduced_discriminant_reported() {
        let d_r0 = discriminant(&lookup("R0", &[]).unwrap());
        match rational_singular_points(&d_r0, Field::Q).unwrap() {
            QuarticSingReport::NonReduced { radical } => {
                let conic = parse_mpoly("y0*y2 + y1^2", &PLANE_VARS).unwrap();
                assert_eq!(radical.monic_lex(), conic.monic_lex());
            }
            other => panic!("{other:?}"),
        }
    }

    fn parse_surface_point(src: &str) -> SurfacePoint {
        // "([a:b],[x:y:z])" with integer coordinates
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = cleaned
            .trim_start_matches('(')
            .trim_end_matches(')');
        let (t_part, y_part) = inner.split_once("],[").expect("two brackets");
        let nums = |s: &str| -> Vec<QuadExt> {
            s.trim_start_matches('[')
                .trim_end_matches(']')
                .split(':')
                .map(|x| QuadExt::rational(rat(x.parse::<i64>().unwrap()), 0))
                .collect()
        };
        let t = nums(t_part);
        let y = nums(y_part);
        SurfacePoint {
            t: [t[0].clone(), t[1].clone()],
            y: [y[0].clone(), y[1].clone(), y[2].clone()],
        }
    }

    #[test]
    fn catalog_surface_singularities_match_expected_facts() {
        for entry in crate::forms::catalog() {
            let expect_nonisolated = entry
                .expected_facts
                .surface_singularities
                .iter()
                .any(|s| s.kind == "non_isolated");
            match surface_singularities(&entry.form).unwrap() {
                SurfaceSingReport::NonIsolated { .. } => {
                    assert!(expect_nonisolated, "{} unexpectedly non-isolated", entry.name);
                }
                SurfaceSingReport::Points(pts) => {
                    assert!(!expect_nonisolated, "{} should be non-isolated", entry.name);
                    let mut got: Vec<String> =
                        pts.iter().map(|p| p.report.ade_type.label()).collect();
                    got.sort();
                    let mut want: Vec<String> = entry
                        .expected_facts
                        .surface_singularities
                        .iter()
                        .map(|s| s.kind.clone())
                        .collect();
                    want.sort();
                    assert_eq!(got, want, "{}", entry.name);
                    // locations match exactly when stated as points
                    for fact in &entry.expected_facts.surface_singularities {
                        if !fact.location.starts_with("([") {
                            continue;
                        }
                        let want_pt = parse_surface_point(&fact.location);
                        let want_t = normalize_point(&want_pt.t).unwrap();
                        let want_y = normalize_point(&want_pt.y).unwrap();
                        let hit = pts.iter().find(|p| {
                            normalize_point(&p.point.t).unwrap() == want_t
                                && normalize_point(&p.point.y).unwrap() == want_y
                        });
                        let hit = hit.unwrap_or_else(|| {
                            panic!("{}: missing point {}", entry.name, fact.location)
                        });
                        assert_eq!(
                            hit.report.ade_type.label(),
                            fact.kind,
                            "{} at {}",
                            entry.name,
                            fact.location
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sing_r_maps_into_sing_delta() {
        for entry in crate::forms::catalog() {
            let delta = discriminant(&entry.form);
            if delta.is_zero() {
                continue;
            }
            if let SurfaceSingReport::Points(pts) = surface_singularities(&entry.form).unwrap() {
                let dsing = rational_singular_points(&delta, Field::Q).unwrap();
                let QuarticSingReport::Points(dpts) = dsing else { continue };
                for p in pts {
                    let n2 = normalize_point(&p.point.y).unwrap();
                    assert!(
                        dpts.iter()
                            .any(|dp| normalize_point(&dp.point).unwrap() == n2),
                        "{}: image of singular point not in Sing(discriminant)",
                        entry.name
                    );
                }
            }
        }
    }

    #[test]
    fn git_stable_discriminant_implies_frame_not_unstable() {
        // branch quartics that split as two smooth conics through four
        // distinct rational points are four-nodal, hence GIT stable; the
        // surfaces above them cannot be torus-unstable in their frame.
        // completeness over the complex numbers is certified by the split:
        // the singular locus of a transverse union of smooth conics is
        // exactly the intersection, and four distinct points exhaust the
        // intersection number
        use crate::git::{torus_frame_test, GitStatus};
        let pairs = [
            ("3*y0*y1 + 2*y0*y2 - 2*y1*y2", "3*y0*y1 - 4*y0*y2 + y1*y2"),
            ("3*y0*y1 + 4*y0*y2 - 3*y1*y2", "9*y0*y1 - 2*y0*y2 - 2*y1*y2"),
        ];
        for (q1_src, q3_src) in pairs {
            let q1 = parse_mpoly(q1_src, &PLANE_VARS).unwrap();
            let q3 = parse_mpoly(q3_src, &PLANE_VARS).unwrap();
            // both conics smooth: 3x3 symmetric determinant nonzero
            for q in [&q1, &q3] {
                let m = |a: [u32; 3]| q.coeff(&a);
                let half = crate::rat::ratq(1, 2);
                let (d01, d02, d12) = (
                    m([1, 1, 0]) * half.clone(),
                    m([1, 0, 1]) * half.clone(),
                    m([0, 1, 1]) * half.clone(),
                );
                let (d00, d11, d22) = (m([2, 0, 0]), m([0, 2, 0]), m([0, 0, 2]));
                let det = d00.clone() * (d11.clone() * d22.clone() - d12.clone() * d12.clone())
                    - d01.clone() * (d01.clone() * d22 - d12.clone() * d02.clone())
                    + d02.clone() * (d01 * d12 - d11 * d02);
                assert!(!det.is_zero(), "conic must be smooth");
            }
            let triple = QuadricTriple {
                q1: q1.clone(),
                q2: MPoly::zero(&PLANE_VARS),
                q3: q3.clone(),
            };
            let f = triple.reassemble().unwrap();
            let delta = discriminant(&f);
            let QuarticSingReport::Points(pts) =
                rational_singular_points(&delta, Field::Q).unwrap()
            else {
                panic!("reduced discriminant expected");
            };
            assert_eq!(pts.len(), 4, "four rational intersection points");
            assert!(pts
                .iter()
                .all(|p| matches!(p.report.ade_type, AdeType::A(1))));
            let verdict = torus_frame_test(&f).unwrap();
            assert_ne!(verdict.status, GitStatus::Unstable);
        }
    }

    #[test]
    fn radical_of_powers() {
        let p = parse_mpoly("(y0 + y1)^2 * (y0 - y2)", &PLANE_VARS).unwrap();
        let rad = mpoly_radical(&p);
        let expect = parse_mpoly("(y0 + y1)*(y0 - y2)", &PLANE_VARS).unwrap();
        assert_eq!(rad.monic_lex(), expect.monic_lex());
    }
}
