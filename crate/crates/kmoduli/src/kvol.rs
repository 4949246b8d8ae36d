//! Intersection numbers on products of projective spaces, volume rules for
//! the birational transformations used in the stability computations,
//! piecewise-volume integration into S-invariants, and wall-root extraction.
//!
//! S-invariant tables arrive as contiguous u-regions with polynomial
//! integrands; two-step (u, v) tables flatten by integrating v out exactly
//! first, with order-correction terms carried as extra integrands merged into
//! their u-region.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{integrate_piece, MPoly, PolyError};
use crate::rat::{rat, rat_to_string, ratq, Rat};
use crate::ratfn::RatFn;
use crate::roots::{isolate_real_roots, sturm_count, uni_squarefree, IsolatingInterval};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KvolError {
    #[error("degree vector length does not match factor count")]
    LengthMismatch,
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("pieces leave a gap: {0} != {1}")]
    PieceGap(String, String),
    #[error("volume of L vanishes at c = {0} inside the window")]
    VolVanishes(String),
    #[error("denominator of S vanishes at c in ({0}, {1}] inside the window")]
    DenominatorRoot(String, String),
    #[error("polynomial error: {0}")]
    Poly(#[from] PolyError),
}

pub const UC: [&str; 2] = ["u", "c"];
pub const UVC: [&str; 3] = ["u", "v", "c"];

// ---------------------------------------------------------------------------
// Products of projective spaces
// ---------------------------------------------------------------------------

/// P^{n_1} x ... x P^{n_k}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpace {
    pub dims: Vec<u32>,
}

impl ProductSpace {
    pub fn new(dims: &[u32]) -> Self {
        assert!(dims.iter().all(|&n| n >= 1));
        ProductSpace {
            dims: dims.to_vec(),
        }
    }

    pub fn dim(&self) -> u32 {
        self.dims.iter().sum()
    }

    /// n! / prod n_i!.
    pub fn multinomial(&self) -> Rat {
        let mut num = rat(1);
        for k in 2..=self.dim() as i64 {
            num *= rat(k);
        }
        for &ni in &self.dims {
            for k in 2..=ni as i64 {
                num /= rat(k);
            }
        }
        num
    }
}

/// D^n = multinomial(n; n_1..n_k) prod d_i^{n_i} for a divisor of type
/// (d_1, ..., d_k); degrees may be polynomials in c.
pub fn product_self_intersection(
    space: &ProductSpace,
    degrees: &[MPoly],
) -> Result<MPoly, KvolError> {
    if degrees.len() != space.dims.len() {
        return Err(KvolError::LengthMismatch);
    }
    let mut out = MPoly::constant_like(&degrees[0], space.multinomial());
    for (d, &ni) in degrees.iter().zip(&space.dims) {
        out = out.mul(&d.pow(ni as i64)?);
    }
    Ok(out)
}

/// The ample coefficient of the functorial line bundle on the parameter space:
/// (n+1) multinomial prod (n_i + 1 - c d_i)^{n_i} c, as a polynomial in c.
pub fn cm_degree(space: &ProductSpace, degrees: &[i64]) -> Result<MPoly, KvolError> {
    if degrees.len() != space.dims.len() {
        return Err(KvolError::LengthMismatch);
    }
    let cvar = ["c"];
    let c = MPoly::var(&cvar, "c");
    let mut out = MPoly::constant(&cvar, space.multinomial() * rat(space.dim() as i64 + 1));
    for (&d, &ni) in degrees.iter().zip(&space.dims) {
        let factor = MPoly::constant(&cvar, rat(ni as i64 + 1)).sub(&c.scale(&rat(d)));
        out = out.mul(&factor.pow(ni as i64)?);
    }
    Ok(out.mul(&c))
}

/// Anticanonical self-intersection against the degeneration bound
/// 2 (1 + 1/n)^n (n-1)^n.
pub fn gap_bound_check(space: &ProductSpace) -> (Rat, Rat, bool) {
    let degrees: Vec<MPoly> = space
        .dims
        .iter()
        .map(|&ni| MPoly::constant(&["c"], rat(ni as i64 + 1)))
        .collect();
    let lhs = product_self_intersection(space, &degrees)
        .expect("lengths match")
        .constant_value()
        .expect("constant");
    let n = space.dim() as i64;
    let mut rhs = rat(2);
    for _ in 0..n {
        rhs *= ratq(n + 1, n) * rat(n - 1);
    }
    let holds = lhs > rhs;
    (lhs, rhs, holds)
}

// ---------------------------------------------------------------------------
// Volume rules under birational transformations
// ---------------------------------------------------------------------------

/// The five volume-transformation rules, applied symbolically in (u, c).
#[derive(Clone, Debug, PartialEq)]
pub enum VolumeLemma {
    /// Contract P(1,1,n) with P1.z = p, Z.z = -q: vol = P1^3 + n p^3 / q.
    ContractWps { n: u32, p: MPoly, q: Rat },
    /// Contract F_n onto its negative section, P1.f = p, Y.f = -q,
    /// P1.sigma = a, Y.sigma = b: vol = P1^3 + (p/q)^2 (3 a q + b p + n p q).
    ContractHirzebruch {
        n: u32,
        p: MPoly,
        q: Rat,
        a: MPoly,
        b: Rat,
    },
    /// Flop a (-1,-1)-curve with P.C = p: vol = P^3 - p^3.
    AtiyahFlop { p: MPoly },
    /// Flip a curve through a half-point singularity, P.C = p: vol = P^3 - 4 p^3.
    HalfPointFlip { p: MPoly },
    /// Flop a curve through a half-curve singularity, P.C = p: vol = P^3 - 2 p^3.
    HalfCurveFlop { p: MPoly },
}

/// Apply the volume rule to the incoming volume polynomial.
pub fn volume_lemma(kind: &VolumeLemma, incoming: &MPoly) -> Result<MPoly, KvolError> {
    let out = match kind {
        VolumeLemma::ContractWps { n, p, q } => {
            if q.is_zero() {
                return Err(KvolError::ZeroQ);
            }
            let cube = p.pow(3)?;
            incoming.add(&cube.scale(&(rat(*n as i64) / q.clone())))
        }
        VolumeLemma::ContractHirzebruch { n, p, q, a, b } => {
            if q.is_zero() {
                return Err(KvolError::ZeroQ);
            }
            let p2 = p.mul(p);
            let inner = a
                .scale(&(rat(3) * q.clone()))
                .add(&p.scale(b))
                .add(&p.scale(&(rat(*n as i64) * q.clone())));
            incoming.add(&p2.mul(&inner).scale(&(Rat::one() / (q.clone() * q.clone()))))
        }
        VolumeLemma::AtiyahFlop { p } => incoming.sub(&p.pow(3)?),
        VolumeLemma::HalfPointFlip { p } => incoming.sub(&p.pow(3)?.scale(&rat(4))),
        VolumeLemma::HalfCurveFlop { p } => incoming.sub(&p.pow(3)?.scale(&rat(2))),
    };
    Ok(out)
}

/// Brute-force expansion of (P + x E + y Y)^3 against a table of the ten
/// triple products, each a polynomial in (u, c).
pub struct TripleTable {
    pub p3: MPoly,
    pub p2e: MPoly,
    pub p2y: MPoly,
    pub pe2: MPoly,
    pub pey: MPoly,
    pub py2: MPoly,
    pub e3: MPoly,
    pub e2y: MPoly,
    pub ey2: MPoly,
    pub y3: MPoly,
}

pub fn expand_triple(table: &TripleTable, x: &MPoly, y: &MPoly) -> MPoly {
    let three = rat(3);
    let six = rat(6);
    let mut acc = table.p3.clone();
    acc = acc.add(&table.p2e.mul(x).scale(&three));
    acc = acc.add(&table.p2y.mul(y).scale(&three));
    acc = acc.add(&table.pe2.mul(&x.mul(x)).scale(&three));
    acc = acc.add(&table.pey.mul(&x.mul(y)).scale(&six));
    acc = acc.add(&table.py2.mul(&y.mul(y)).scale(&three));
    acc = acc.add(&table.e3.mul(&x.pow(3).unwrap()));
    acc = acc.add(&table.e2y.mul(&x.mul(x).mul(y)).scale(&three));
    acc = acc.add(&table.ey2.mul(&x.mul(&y.mul(y))).scale(&three));
    acc = acc.add(&table.y3.mul(&y.pow(3).unwrap()));
    acc
}

/// Expansion of (P1 + t Y)^3 on a Hirzebruch contraction from the surface
/// Gram data: P1|_Y = p sigma + (a + p n) f and Y|_Y = -q sigma + (b - q n) f
/// with sigma^2 = -n, f^2 = 0, sigma.f = 1.
pub fn hirzebruch_expand(
    incoming: &MPoly,
    n: u32,
    p: &MPoly,
    q: &Rat,
    a: &MPoly,
    b: &Rat,
) -> MPoly {
    let nn = rat(n as i64);
    let pair = |s1: &MPoly, f1: &MPoly, s2: &MPoly, f2: &MPoly| -> MPoly {
        // (s1 sigma + f1 f).(s2 sigma + f2 f) = -n s1 s2 + s1 f2 + s2 f1
        s1.mul(s2)
            .scale(&-nn.clone())
            .add(&s1.mul(f2))
            .add(&s2.mul(f1))
    };
    let p_s = p.clone();
    let p_f = a.add(&p.scale(&nn));
    let y_s = MPoly::constant_like(p, -q.clone());
    let y_f = MPoly::constant_like(p, b - q.clone() * nn.clone());
    let t = Rat::one() / q.clone();
    // (P1 + tY)^3 = P1^3 + 3t (P1|Y)^2 + 3t^2 (P1|Y).(Y|Y) + t^3 (Y|Y)^2,
    // with t = p/q realized by scaling the Y-restriction contributions by p
    let p1y2 = pair(&p_s, &p_f, &p_s, &p_f);
    let p1yy = pair(&p_s, &p_f, &y_s, &y_f);
    let yyy = pair(&y_s, &y_f, &y_s, &y_f);
    let tpoly = p.scale(&t);
    incoming
        .add(&p1y2.mul(&tpoly).scale(&rat(3)))
        .add(&p1yy.mul(&tpoly.mul(&tpoly)).scale(&rat(3)))
        .add(&yyy.mul(&tpoly.pow(3).unwrap()))
}

// ---------------------------------------------------------------------------
// Piecewise volumes and S-invariants
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VolumePiece {
    pub lower: MPoly,
    pub upper: MPoly,
    /// Polynomial in (u, c).
    pub integrand: MPoly,
}

/// A list of u-regions with c-dependent endpoints and polynomial integrands.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PiecewiseVolume {
    /// Citation label into the bundled sources registry.
    pub paper_label: String,
    /// Validity window for c.
    pub window: (Rat, Rat),
    pub pieces: Vec<VolumePiece>,
    pub vol_l: MPoly,
}

fn check_contiguous(pv: &PiecewiseVolume) -> Result<(), KvolError> {
    for w in pv.pieces.windows(2) {
        let up = w[0].upper.with_vars(&UC);
        let lo = w[1].lower.with_vars(&UC);
        if up != lo {
            // symbolic mismatch: also reject numerically distinct chains at 50
            // sampled c (piece order may legitimately permute equal bounds)
            let mut equal_on_window = true;
            for k in 1..=50 {
                let c = pv.window.0.clone()
                    + (pv.window.1.clone() - pv.window.0.clone()) * ratq(k, 51);
                if up.eval_var("c", &c) != lo.eval_var("c", &c) {
                    equal_on_window = false;
                    break;
                }
            }
            if !equal_on_window {
                return Err(KvolError::PieceGap(up.to_string(), lo.to_string()));
            }
        }
    }
    Ok(())
}

/// (1 / vol L) sum of the piece integrals, as an exact rational function of c.
pub fn s_invariant(pv: &PiecewiseVolume) -> Result<RatFn, KvolError> {
    check_contiguous(pv)?;
    // vol L must not vanish on the window
    let vol = pv.vol_l.with_vars(&["c"]);
    let coeffs = vol.univariate_coeffs("c")?;
    let sf = uni_squarefree(&coeffs);
    if sturm_count(&sf, &pv.window.0, &pv.window.1) > 0 {
        return Err(KvolError::VolVanishes(format!(
            "somewhere in ({}, {}]",
            rat_to_string(&pv.window.0),
            rat_to_string(&pv.window.1)
        )));
    }
    let mut total = MPoly::zero(&UC);
    for piece in &pv.pieces {
        let integrand = piece.integrand.with_vars(&UC);
        let part = integrate_piece(&integrand, "u", &piece.lower.with_vars(&UC), &piece.upper.with_vars(&UC))?;
        total = total.add(&part);
    }
    let num = total.with_vars(&["c"]);
    Ok(RatFn::new(&num, &vol)?)
}

// ---------------------------------------------------------------------------
// Two-level tables: integrate v out, then hand to s_invariant
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct VPiece {
    /// Bounds in (u, c).
    pub v_lower: MPoly,
    pub v_upper: MPoly,
    /// Integrand in (u, v, c).
    pub integrand: MPoly,
}

#[derive(Clone, Debug)]
pub struct URegion {
    pub u_lower: MPoly,
    pub u_upper: MPoly,
    pub v_pieces: Vec<VPiece>,
    /// Order-correction integrand in (u, c), added to the inner integral.
    pub extra: Option<MPoly>,
}

#[derive(Clone, Debug)]
pub struct NestedSTable {
    pub paper_label: String,
    pub window: (Rat, Rat),
    /// Overall factor (3 for curve refinements, 6 for the point corrections).
    pub factor: Rat,
    pub regions: Vec<URegion>,
    pub vol_l: MPoly,
}

/// Integrate the v-level out exactly; the result is an ordinary piecewise
/// volume over u.
pub fn flatten(table: &NestedSTable) -> Result<PiecewiseVolume, KvolError> {
    let mut pieces = Vec::new();
    for region in &table.regions {
        let mut inner = MPoly::zero(&UVC);
        for vp in &region.v_pieces {
            let part = integrate_piece(
                &vp.integrand.with_vars(&UVC),
                "v",
                &vp.v_lower.with_vars(&UVC),
                &vp.v_upper.with_vars(&UVC),
            )?;
            inner = inner.add(&part);
        }
        let mut integrand = inner.with_vars(&UC);
        if let Some(extra) = &region.extra {
            integrand = integrand.add(&extra.with_vars(&UC));
        }
        pieces.push(VolumePiece {
            lower: region.u_lower.clone(),
            upper: region.u_upper.clone(),
            integrand: integrand.scale(&table.factor),
        });
    }
    Ok(PiecewiseVolume {
        paper_label: table.paper_label.clone(),
        window: table.window.clone(),
        pieces,
        vol_l: table.vol_l.clone(),
    })
}

// ---------------------------------------------------------------------------
// Walls
// ---------------------------------------------------------------------------

/// A log-discrepancy-against-S certificate on a window.
#[derive(Clone, Debug)]
pub struct WallProblem {
    /// A as a polynomial in c.
    pub log_discrepancy: MPoly,
    pub s: RatFn,
    pub window: (Rat, Rat),
}

/// Isolating intervals for the roots of numerator(A - S) inside the window,
/// after checking that the denominator has no root there.
pub fn wall_solve(problem: &WallProblem) -> Result<Vec<IsolatingInterval>, KvolError> {
    let a = RatFn::from_poly(&problem.log_discrepancy.with_vars(&["c"]));
    let diff = a.sub(&problem.s).reduced();
    let den = diff.denominator();
    let den_coeffs = den.univariate_coeffs("c")?;
    let sf = uni_squarefree(&den_coeffs);
    if sturm_count(&sf, &problem.window.0, &problem.window.1) > 0 {
        return Err(KvolError::DenominatorRoot(
            rat_to_string(&problem.window.0),
            rat_to_string(&problem.window.1),
        ));
    }
    let num = diff.numerator();
    if num.is_zero() {
        return Ok(vec![]);
    }
    let roots = isolate_real_roots(&num, (&problem.window.0, &problem.window.1))
        .map_err(|e| KvolError::Poly(PolyError::Parse(e.to_string())))?;
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_mpoly;
    use crate::rat::to_f64;

    fn uc(src: &str) -> MPoly {
        parse_mpoly(src, &UC).unwrap()
    }

    fn cpoly(src: &str) -> MPoly {
        parse_mpoly(src, &["c"]).unwrap()
    }

    #[test]
    fn self_intersection_p1xp2() {
        let space = ProductSpace::new(&[1, 2]);
        let degrees = vec![uc("2 - 2*c"), uc("3 - 2*c")];
        let got = product_self_intersection(&space, &degrees).unwrap();
        assert_eq!(got, uc("3*(2 - 2*c)*(3 - 2*c)^2"));
        let at_const = product_self_intersection(
            &space,
            &[uc("2"), uc("3")],
        )
        .unwrap();
        assert_eq!(at_const.constant_value().unwrap(), rat(54));
    }

    #[test]
    fn self_intersection_p1xp1() {
        let space = ProductSpace::new(&[1, 1]);
        let got = product_self_intersection(&space, &[uc("1"), uc("1")]).unwrap();
        assert_eq!(got.constant_value().unwrap(), rat(2));
    }

    #[test]
    fn cm_degree_p1xp2() {
        let space = ProductSpace::new(&[1, 2]);
        let got = cm_degree(&space, &[2, 2]).unwrap();
        assert_eq!(got, cpoly("12*c*(2 - 2*c)*(3 - 2*c)^2"));
        assert!(cm_degree(&space, &[2, 2])
            .unwrap()
            .eval_var("c", &rat(0))
            .is_zero());
        assert_eq!(
            got.eval_var("c", &ratq(1, 2)).constant_value().unwrap(),
            rat(24)
        );
    }

    #[test]
    fn gap_bounds() {
        let (lhs, rhs, holds) = gap_bound_check(&ProductSpace::new(&[1, 2]));
        assert_eq!(lhs, rat(54));
        assert_eq!(rhs, ratq(1024, 27));
        assert!(holds);
        let (lhs, _, holds) = gap_bound_check(&ProductSpace::new(&[1, 1, 1]));
        assert_eq!(lhs, rat(48));
        assert!(holds);
        let (lhs, _, holds) = gap_bound_check(&ProductSpace::new(&[3]));
        assert_eq!(lhs, rat(64));
        assert!(holds);
    }

    #[test]
    fn atiyah_flop_region_b() {
        // region B volume: P^3 - (2 - 2c - u)^3 = base + (u + 2c - 2)^3
        let base = uc("3*(2 - 2*c)*(3 - 2*c)^2 - u^3");
        let out = volume_lemma(
            &VolumeLemma::AtiyahFlop { p: uc("2 - 2*c - u") },
            &base,
        )
        .unwrap();
        assert_eq!(out, uc("3*(2 - 2*c)*(3 - 2*c)^2 - u^3 + (u + 2*c - 2)^3"));
    }

    #[test]
    fn atiyah_flop_involution() {
        let base = uc("3*(2 - 2*c)*(3 - 2*c)^2 - u^3 + c*u^2");
        let p = uc("u + 2*c - 2");
        let once = volume_lemma(&VolumeLemma::AtiyahFlop { p: p.clone() }, &base).unwrap();
        let back = volume_lemma(&VolumeLemma::AtiyahFlop { p: p.neg() }, &once).unwrap();
        assert_eq!(back, base);
    }

    #[test]
    fn contract_wps_identity() {
        let base = uc("u^3 + c");
        let out = volume_lemma(
            &VolumeLemma::ContractWps {
                n: 1,
                p: MPoly::zero(&UC),
                q: rat(1),
            },
            &base,
        )
        .unwrap();
        assert_eq!(out, base);
        assert_eq!(
            volume_lemma(
                &VolumeLemma::ContractWps {
                    n: 1,
                    p: uc("u"),
                    q: rat(0)
                },
                &base
            ),
            Err(KvolError::ZeroQ)
        );
    }

    #[test]
    fn hirzebruch_rule_matches_gram_expansion() {
        // region C of the finite-fiber table: F1 contraction with
        // p = 3 - 2c - u, q = 1, a = u, b = 1, n = 1
        let base = uc("3*(2 - 2*c)*(3 - 2*c)^2 - u^3 + (u + 2*c - 2)^3");
        let p = uc("3 - 2*c - u");
        let a = uc("u");
        let rule = volume_lemma(
            &VolumeLemma::ContractHirzebruch {
                n: 1,
                p: p.clone(),
                q: rat(1),
                a: a.clone(),
                b: rat(1),
            },
            &base,
        )
        .unwrap();
        let direct = hirzebruch_expand(&base, 1, &p, &rat(1), &a, &rat(1));
        assert_eq!(rule, direct);
        let display =
            uc("3*(2 - 2*c)*(3 - 2*c)^2 - u^3 + (u + 2*c - 2)^3 + (3 - 2*c - u)^2*(3*u + 2*(3 - 2*c - u))");
        assert_eq!(rule, display);
    }

    #[test]
    fn half_point_flip_matches_intersection_table() {
        // vol(P+) = (g*P + p E + 2p Y)^3 with the exceptional table
        // E^3 = 4, E^2 Y = 0, E Y^2 = -1, Y^3 = 2, P Y^2 = -p, others zero
        let p = uc("u - 4 + 4*c");
        let base = uc("3*(2 - 2*c)*(3 - 2*c)^2 - u^3");
        let table = TripleTable {
            p3: base.clone(),
            p2e: MPoly::zero(&UC),
            p2y: MPoly::zero(&UC),
            pe2: MPoly::zero(&UC),
            pey: MPoly::zero(&UC),
            py2: p.neg(),
            e3: uc("4"),
            e2y: MPoly::zero(&UC),
            ey2: uc("-1"),
            y3: uc("2"),
        };
        let brute = expand_triple(&table, &p, &p.scale(&rat(2)));
        let rule = volume_lemma(&VolumeLemma::HalfPointFlip { p: p.clone() }, &base).unwrap();
        assert_eq!(brute, rule);
    }

    #[test]
    fn half_curve_flop_is_two_atiyah_flops() {
        let base = uc("3*(2 - 2*c)*(3 - 2*c)^2 - 1/4*u^3");
        let p = uc("2 - 2*c - 1/2*u");
        let two_flops = volume_lemma(
            &VolumeLemma::AtiyahFlop { p: p.clone() },
            &volume_lemma(&VolumeLemma::AtiyahFlop { p: p.clone() }, &base).unwrap(),
        )
        .unwrap();
        let rule = volume_lemma(&VolumeLemma::HalfCurveFlop { p }, &base).unwrap();
        assert_eq!(two_flops, rule);
    }

    fn finite_fiber_table() -> PiecewiseVolume {
        // three regions, volumes rebuilt by the lemmas
        let region_a = uc("3*(2 - 2*c)*(3 - 2*c)^2 - u^3");
        let region_b =
            volume_lemma(&VolumeLemma::AtiyahFlop { p: uc("2 - 2*c - u") }, &region_a).unwrap();
        let region_c = volume_lemma(
            &VolumeLemma::ContractHirzebruch {
                n: 1,
                p: uc("3 - 2*c - u"),
                q: rat(1),
                a: uc("u"),
                b: rat(1),
            },
            &region_b,
        )
        .unwrap();
        PiecewiseVolume {
            paper_label: "s-table-a1-finite".into(),
            window: (rat(0), ratq(1, 2)),
            pieces: vec![
                VolumePiece {
                    lower: MPoly::zero(&UC),
                    upper: uc("2 - 2*c"),
                    integrand: region_a,
                },
                VolumePiece {
                    lower: uc("2 - 2*c"),
                    upper: uc("3 - 2*c"),
                    integrand: region_b,
                },
                VolumePiece {
                    lower: uc("3 - 2*c"),
                    upper: uc("5 - 4*c"),
                    integrand: region_c,
                },
            ],
            vol_l: uc("3*(2 - 2*c)*(3 - 2*c)^2"),
        }
    }

    #[test]
    fn s_invariant_of_finite_fiber_blowup() {
        let s = s_invariant(&finite_fiber_table()).unwrap();
        let expect = RatFn::parse("9 - 7*c", "3", "c").unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn s_invariant_constant_normalization() {
        // constant volume K on [0, T]: S = T
        let pv = PiecewiseVolume {
            paper_label: "test-constant".into(),
            window: (rat(0), rat(1)),
            pieces: vec![VolumePiece {
                lower: MPoly::zero(&UC),
                upper: uc("7"),
                integrand: uc("5"),
            }],
            vol_l: uc("5"),
        };
        let s = s_invariant(&pv).unwrap();
        assert_eq!(s, RatFn::parse("7", "1", "c").unwrap());
    }

    #[test]
    fn s_invariant_rejects_vanishing_volume() {
        // vol L = 1 - 4c vanishes at c = 1/4 inside (0, 1/2]
        let pv = PiecewiseVolume {
            paper_label: "test-vanishing".into(),
            window: (rat(0), ratq(1, 2)),
            pieces: vec![VolumePiece {
                lower: MPoly::zero(&UC),
                upper: uc("1"),
                integrand: uc("1"),
            }],
            vol_l: uc("1 - 4*c"),
        };
        assert!(matches!(s_invariant(&pv), Err(KvolError::VolVanishes(_))));
    }

    #[test]
    fn s_invariant_rejects_gaps() {
        let mut pv = finite_fiber_table();
        pv.pieces[1].lower = uc("2 - c");
        assert!(matches!(s_invariant(&pv), Err(KvolError::PieceGap(_, _))));
    }

    #[test]
    fn s_invariant_monotone_in_integrand() {
        // enlarging an integrand pointwise does not decrease S at sampled c
        let base = finite_fiber_table();
        let mut bigger = base.clone();
        bigger.pieces[0].integrand = bigger.pieces[0].integrand.add(&uc("u^2"));
        let s0 = s_invariant(&base).unwrap();
        let s1 = s_invariant(&bigger).unwrap();
        for k in 1..=10 {
            let c = ratq(k, 25);
            let v0 = s0.eval(&c).unwrap();
            let v1 = s1.eval(&c).unwrap();
            assert!(v1 >= v0);
        }
        // and linearity: s(a + b) = s(a) + s(b) with shared vol_l
        let mut sum = base.clone();
        for (pa, pb) in sum.pieces.iter_mut().zip(&base.pieces) {
            pa.integrand = pa.integrand.add(&pb.integrand);
        }
        let s2 = s_invariant(&sum).unwrap();
        assert_eq!(s2, s0.add(&s0));
    }

    #[test]
    fn wall_solve_finds_the_wall() {
        let s = RatFn::parse("-14*c^3 + 62*c^2 - 91*c + 44", "3*(3 - 2*c)^2", "c").unwrap();
        let problem = WallProblem {
            log_discrepancy: cpoly("2 - 2*c"),
            s,
            window: (rat(0), ratq(1, 2)),
        };
        let roots = wall_solve(&problem).unwrap();
        assert_eq!(roots.len(), 1);
        let mut iv = roots[0].clone();
        iv.refine(&ratq(1, 10_000_000));
        assert!((to_f64(&iv.midpoint()) - 0.47233).abs() < 1e-5);
        // defining polynomial is an associate of the wall cubic
        let wall = cpoly("10*c^3 - 34*c^2 + 35*c - 10");
        assert_eq!(iv.polynomial.monic_lex(), wall.monic_lex());
    }

    #[test]
    fn wall_solve_ratio_above_one() {
        // A = 3 - 2c vs S = (9 - 7c)/3: A - S = c/3, no root in (0, 1)
        let s = RatFn::parse("9 - 7*c", "3", "c").unwrap();
        let problem = WallProblem {
            log_discrepancy: cpoly("3 - 2*c"),
            s,
            window: (rat(0), rat(1)),
        };
        let roots = wall_solve(&problem).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn wall_solve_identical_ratio() {
        let s = RatFn::parse("1", "1", "c").unwrap();
        let problem = WallProblem {
            log_discrepancy: cpoly("1"),
            s,
            window: (rat(0), rat(1)),
        };
        assert!(wall_solve(&problem).unwrap().is_empty());
    }

    #[test]
    fn wall_solve_rejects_denominator_roots() {
        // S with a pole at c = 1/4 inside the window
        let s = RatFn::parse("1", "1 - 4*c", "c").unwrap();
        let problem = WallProblem {
            log_discrepancy: cpoly("2 - 2*c"),
            s,
            window: (rat(0), ratq(1, 2)),
        };
        assert!(matches!(
            wall_solve(&problem),
            Err(KvolError::DenominatorRoot(_, _))
        ));
    }

    #[test]
    fn nested_table_flattens_to_sigma_s() {
        // the wall lemma's sigma-curve table on F1: S = (3 - 2c)/3
        let uvc = |s: &str| parse_mpoly(s, &UVC).unwrap();
        let table = NestedSTable {
            paper_label: "s-table-wall-sigma".into(),
            window: (rat(0), ratq(1, 2)),
            factor: rat(3),
            vol_l: uc("3*(2 - 2*c)*(3 - 2*c)^2"),
            regions: vec![
                URegion {
                    u_lower: MPoly::zero(&UC),
                    u_upper: uc("2 - 2*c"),
                    v_pieces: vec![VPiece {
                        v_lower: MPoly::zero(&UVC),
                        v_upper: uvc("u"),
                        integrand: uvc("2*(5 - 4*c - u)*(u - v) - (u - v)^2"),
                    }],
                    extra: None,
                },
                URegion {
                    u_lower: uc("2 - 2*c"),
                    u_upper: uc("3 - 2*c"),
                    v_pieces: vec![VPiece {
                        v_lower: MPoly::zero(&UVC),
                        v_upper: uvc("2 - 2*c"),
                        integrand: uvc("2*(5 - 4*c - u)*(2 - 2*c - v) - (2 - 2*c - v)^2"),
                    }],
                    // ord_sigma(N(u)) = u + 2c - 2 against P(u)^2 on the region
                    extra: Some(
                        uc("(u + 2*c - 2)*(2*(5 - 4*c - u)*(2 - 2*c) - (2 - 2*c)^2)"),
                    ),
                },
            ],
        };
        let s = s_invariant(&flatten(&table).unwrap()).unwrap();
        assert_eq!(s, RatFn::parse("3 - 2*c", "3", "c").unwrap());
    }
}
