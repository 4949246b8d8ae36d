//! Exact Zariski decomposition on surfaces with declared negative curves, and
//! sampling validation of piecewise P(u,v)/N(u,v) tables.
//!
//! A `SurfaceModel` records a curve basis with its rational intersection
//! matrix and the finite set of declared extremal curves; nefness is checked
//! only against the declared set. The decomposition grows the negative
//! support by curves the candidate positive part still meets negatively,
//! solves the linear system on the support, and repeats to a fixpoint, which
//! makes it insertion-order independent.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::MPoly;
use crate::rat::{rat, rat_to_string, ratq, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZariskiError {
    #[error("divisor is not pseudoeffective against the declared curves")]
    NotPseudoeffective,
    #[error("Gram matrix on the support is not negative definite (model misdeclared)")]
    IndefiniteGram,
    #[error("declared negative curve {0} has nonnegative self-intersection")]
    NotNegativeCurve(String),
    #[error("table pieces do not partition the v-range at c={0}, u={1}")]
    BadPartition(String, String),
    #[error("dimension mismatch")]
    Dimension,
}

/// A surface presented by a curve basis, its symmetric intersection matrix,
/// and the declared extremal curves.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub name: String,
    pub curves: Vec<String>,
    /// Symmetric Gram matrix over Q (half-integer entries welcome).
    pub gram: Vec<Vec<Rat>>,
    /// Indices of the declared extremal curves tested for nefness; those with
    /// negative self-intersection are the candidates for the negative part.
    pub declared: Vec<usize>,
}

impl SurfaceModel {
    pub fn new(name: &str, curves: &[&str], gram: Vec<Vec<Rat>>, declared: &[usize]) -> Self {
        assert_eq!(gram.len(), curves.len());
        for (i, row) in gram.iter().enumerate() {
            assert_eq!(row.len(), curves.len());
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, gram[j][i], "Gram must be symmetric");
            }
        }
        SurfaceModel {
            name: name.to_string(),
            curves: curves.iter().map(|s| s.to_string()).collect(),
            gram,
            declared: declared.to_vec(),
        }
    }

    pub fn dot(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut acc = rat(0);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                acc += ai * bj * &self.gram[i][j];
            }
        }
        acc
    }

    #[cfg(test)]
    pub(crate) fn basis_vec_test(&self, i: usize) -> Vec<Rat> {
        self.basis_vec(i)
    }

    fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![rat(0); self.curves.len()];
        v[i] = rat(1);
        v
    }
}

/// D = P + N with P nef against the declared curves, P orthogonal to the
/// support of N, and N supported on a negative-definite configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ZDecomposition {
    pub p: Vec<Rat>,
    pub n: Vec<Rat>,
    pub support: Vec<usize>,
}

/// Iterative decomposition: add every declared curve the positive part still
/// meets negatively, solve N . C_i = D . C_i on the support, repeat.
pub fn zariski_decompose(model: &SurfaceModel, d: &[Rat]) -> Result<ZDecomposition, ZariskiError> {
    if d.len() != model.curves.len() {
        return Err(ZariskiError::Dimension);
    }
    for &i in &model.declared {
        let c = model.basis_vec(i);
        if !model.dot(&c, &c).is_negative() {
            // nef-boundary generators are legitimate declared curves; only
            // support members need negativity, checked below
        }
    }
    let mut support: Vec<usize> = Vec::new();
    loop {
        // solve sum_j x_j C_j . C_i = D . C_i for i in support
        let k = support.len();
        let mut coeffs = vec![rat(0); model.curves.len()];
        if k > 0 {
            let mut mat: Vec<Vec<Rat>> = vec![vec![rat(0); k + 1]; k];
            for (row, &i) in support.iter().enumerate() {
                for (col, &j) in support.iter().enumerate() {
                    mat[row][col] = model.gram[i][j].clone();
                }
                let ci = model.basis_vec(i);
                mat[row][k] = model.dot(d, &ci);
            }
            check_negative_definite(model, &support)?;
            let sol = solve_square(&mut mat, k).ok_or(ZariskiError::IndefiniteGram)?;
            for (idx, &i) in support.iter().enumerate() {
                if sol[idx].is_negative() {
                    return Err(ZariskiError::NotPseudoeffective);
                }
                coeffs[i] = sol[idx].clone();
            }
        }
        let p: Vec<Rat> = d.iter().zip(&coeffs).map(|(a, b)| a - b).collect();
        let mut grew = false;
        for &i in &model.declared {
            if support.contains(&i) {
                continue;
            }
            let ci = model.basis_vec(i);
            if model.dot(&p, &ci).is_negative() {
                if !model.dot(&ci, &ci).is_negative() {
                    return Err(ZariskiError::NotNegativeCurve(model.curves[i].clone()));
                }
                support.push(i);
                grew = true;
            }
        }
        if !grew {
            support.sort();
            return Ok(ZDecomposition {
                p,
                n: coeffs,
                support,
            });
        }
    }
}

fn check_negative_definite(model: &SurfaceModel, support: &[usize]) -> Result<(), ZariskiError> {
    // Sylvester on -G: all leading principal minors of -G positive
    for k in 1..=support.len() {
        let mut m: Vec<Vec<Rat>> = (0..k)
            .map(|r| (0..k).map(|c| -model.gram[support[r]][support[c]].clone()).collect())
            .collect();
        let det = determinant(&mut m);
        if !det.is_positive() {
            return Err(ZariskiError::IndefiniteGram);
        }
    }
    Ok(())
}

fn determinant(m: &mut Vec<Vec<Rat>>) -> Rat {
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
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() * inv.clone();
            for c in col..n {
                let delta = f.clone() * m[col][c].clone();
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Solve an augmented k x (k+1) system; None when singular.
fn solve_square(mat: &mut [Vec<Rat>], k: usize) -> Option<Vec<Rat>> {
    for col in 0..k {
        let p = (col..k).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(p, col);
        let inv = rat(1) / mat[col][col].clone();
        for c in col..=k {
            mat[col][c] = mat[col][c].clone() * inv.clone();
        }
        for r in 0..k {
            if r != col && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..=k {
                    let delta = f.clone() * mat[col][c].clone();
                    mat[r][c] -= delta;
                }
            }
        }
    }
    Some((0..k).map(|r| mat[r][k].clone()).collect())
}

// ---------------------------------------------------------------------------
// Table validation
// ---------------------------------------------------------------------------

pub const UVC: [&str; 3] = ["u", "v", "c"];

/// One v-piece of a table: class vectors for P(u,v) and N(u,v), entries
/// polynomial in (u, v, c).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZTablePiece {
    pub v_lower: MPoly,
    pub v_upper: MPoly,
    pub p: Vec<MPoly>,
    pub n: Vec<MPoly>,
}

/// An encoded piecewise decomposition of P(u)| - v C on one u-region.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZariskiTable {
    pub paper_label: String,
    pub model: SurfaceModel,
    pub c_window: (Rat, Rat),
    /// u-range, polynomials in c.
    pub u_lower: MPoly,
    pub u_upper: MPoly,
    /// Class of P(u)| in the curve basis, entries polynomial in (u, c).
    pub d_of_u: Vec<MPoly>,
    /// Class of the subtracted curve C.
    pub minus_curve: Vec<Rat>,
    pub pieces: Vec<ZTablePiece>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Mismatch {
    pub c: String,
    pub u: String,
    pub v: String,
    pub expected_p: Vec<String>,
    pub got_p: Vec<String>,
    pub expected_n: Vec<String>,
    pub got_n: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableReport {
    pub label: String,
    pub samples_run: usize,
    pub boundary_checks: usize,
    pub mismatches: Vec<Mismatch>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn eval_uvc(p: &MPoly, u: &Rat, v: &Rat, c: &Rat) -> Rat {
    p.with_vars(&UVC).eval(&[u.clone(), v.clone(), c.clone()])
}

/// Check the encoded decomposition against `zariski_decompose` at seeded
/// rational samples; boundary points of adjacent pieces are compared
/// separately. A sampling margin of 1/1000 of each range keeps samples away
/// from region boundaries.
pub fn validate_table(table: &ZariskiTable, samples: usize, seed: u64) -> Result<TableReport, ZariskiError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TableReport {
        label: table.paper_label.clone(),
        samples_run: 0,
        boundary_checks: 0,
        mismatches: Vec::new(),
    };
    let frac = |rng: &mut ChaCha8Rng| -> Rat {
        // uniform rational in (1/1000, 999/1000)
        ratq(rng.gen_range(2i64..999), 1000)
    };
    let per_piece = samples / table.pieces.len().max(1) + 1;
    for (pi, piece) in table.pieces.iter().enumerate() {
        for _ in 0..per_piece {
            let fc = frac(&mut rng);
            let c = table.c_window.0.clone()
                + (table.c_window.1.clone() - table.c_window.0.clone()) * fc;
            let ulo = eval_uvc(&table.u_lower, &rat(0), &rat(0), &c);
            let uhi = eval_uvc(&table.u_upper, &rat(0), &rat(0), &c);
            if uhi <= ulo {
                continue;
            }
            let u = ulo.clone() + (uhi - ulo) * frac(&mut rng);
            let vlo = eval_uvc(&piece.v_lower, &u, &rat(0), &c);
            let vhi = eval_uvc(&piece.v_upper, &u, &rat(0), &c);
            if vhi <= vlo {
                continue;
            }
            let v = vlo.clone() + (vhi - vlo) * frac(&mut rng);
            let d: Vec<Rat> = table
                .d_of_u
                .iter()
                .zip(&table.minus_curve)
                .map(|(poly, mc)| eval_uvc(poly, &u, &v, &c) - mc * v.clone())
                .collect();
            let dec = zariski_decompose(&table.model, &d)?;
            let want_p: Vec<Rat> = piece.p.iter().map(|q| eval_uvc(q, &u, &v, &c)).collect();
            let want_n: Vec<Rat> = piece.n.iter().map(|q| eval_uvc(q, &u, &v, &c)).collect();
            report.samples_run += 1;
            // the encoded positive and negative parts must themselves be
            // orthogonal at every sample
            let orthogonal = table.model.dot(&want_p, &want_n).is_zero();
            if !orthogonal || dec.p != want_p || dec.n != want_n {
                report.mismatches.push(Mismatch {
                    c: rat_to_string(&c),
                    u: rat_to_string(&u),
                    v: rat_to_string(&v),
                    expected_p: want_p.iter().map(rat_to_string).collect(),
                    got_p: dec.p.iter().map(rat_to_string).collect(),
                    expected_n: want_n.iter().map(rat_to_string).collect(),
                    got_n: dec.n.iter().map(rat_to_string).collect(),
                });
                if report.mismatches.len() > 4 {
                    return Ok(report);
                }
            }
        }
        // partition and boundary agreement with the next piece
        if pi + 1 < table.pieces.len() {
            let next = &table.pieces[pi + 1];
            for _ in 0..3 {
                let fc = frac(&mut rng);
                let c = table.c_window.0.clone()
                    + (table.c_window.1.clone() - table.c_window.0.clone()) * fc;
                let ulo = eval_uvc(&table.u_lower, &rat(0), &rat(0), &c);
                let uhi = eval_uvc(&table.u_upper, &rat(0), &rat(0), &c);
                if uhi <= ulo {
                    continue;
                }
                let u = ulo.clone() + (uhi - ulo) * frac(&mut rng);
                let up = eval_uvc(&piece.v_upper, &u, &rat(0), &c);
                let lo = eval_uvc(&next.v_lower, &u, &rat(0), &c);
                if up != lo {
                    return Err(ZariskiError::BadPartition(
                        rat_to_string(&c),
                        rat_to_string(&u),
                    ));
                }
                let v = up;
                let a_p: Vec<Rat> = piece.p.iter().map(|q| eval_uvc(q, &u, &v, &c)).collect();
                let b_p: Vec<Rat> = next.p.iter().map(|q| eval_uvc(q, &u, &v, &c)).collect();
                let a_n: Vec<Rat> = piece.n.iter().map(|q| eval_uvc(q, &u, &v, &c)).collect();
                let b_n: Vec<Rat> = next.n.iter().map(|q| eval_uvc(q, &u, &v, &c)).collect();
                report.boundary_checks += 1;
                if a_p != b_p || a_n != b_n {
                    report.mismatches.push(Mismatch {
                        c: rat_to_string(&c),
                        u: rat_to_string(&u),
                        v: rat_to_string(&v),
                        expected_p: a_p.iter().map(rat_to_string).collect(),
                        got_p: b_p.iter().map(rat_to_string).collect(),
                        expected_n: a_n.iter().map(rat_to_string).collect(),
                        got_n: b_n.iter().map(rat_to_string).collect(),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_mpoly;

    fn f1_model() -> SurfaceModel {
        // blow-up of the plane: e exceptional, f the strict transform of a
        // line through the point
        SurfaceModel::new(
            "f1",
            &["e", "f"],
            vec![vec![rat(-1), rat(1)], vec![rat(1), rat(0)]],
            &[0, 1],
        )
    }

    #[test]
    fn spec_example_on_the_declared_matrix() {
        // model with e^2 = f^2 = -1, e.f = 1: D = u e + (u - v) f at
        // u = 1, v = 1/2 decomposes as P = (e + f)/2, N = e/2
        let model = SurfaceModel::new(
            "pair-of-minus-ones",
            &["e", "f"],
            vec![vec![rat(-1), rat(1)], vec![rat(1), rat(-1)]],
            &[0, 1],
        );
        let d = vec![rat(1), ratq(1, 2)];
        let z = zariski_decompose(&model, &d).unwrap();
        assert_eq!(z.p, vec![ratq(1, 2), ratq(1, 2)]);
        assert_eq!(z.n, vec![ratq(1, 2), rat(0)]);
    }

    #[test]
    fn nef_divisor_has_zero_negative_part() {
        let model = f1_model();
        // e + f is nef: (e+f).e = 0, (e+f).f = 1
        let d = vec![rat(3), rat(3)];
        let z = zariski_decompose(&model, &d).unwrap();
        assert!(z.n.iter().all(|x| x.is_zero()));
        assert_eq!(z.p, d);
    }

    #[test]
    fn f2_example() {
        // sigma^2 = -2, f^2 = 0: D = sigma + f gives N = sigma/2
        let model = SurfaceModel::new(
            "f2",
            &["sigma", "f"],
            vec![vec![rat(-2), rat(1)], vec![rat(1), rat(0)]],
            &[0, 1],
        );
        let d = vec![rat(1), rat(1)];
        let z = zariski_decompose(&model, &d).unwrap();
        assert_eq!(z.n, vec![ratq(1, 2), rat(0)]);
        assert_eq!(z.p, vec![ratq(1, 2), rat(1)]);
        // orthogonality
        assert!(model.dot(&z.p, &z.n).is_zero());
    }

    #[test]
    fn f1_blowdown_series() {
        // D = u e + (u - v) f on the blown-up plane: N = v e for 0 <= v <= u
        let model = f1_model();
        let (u, v) = (rat(1), ratq(1, 2));
        let d = vec![u.clone(), u.clone() - v.clone()];
        let z = zariski_decompose(&model, &d).unwrap();
        assert_eq!(z.n, vec![v.clone(), rat(0)]);
        assert_eq!(z.p, vec![u.clone() - v.clone(), u - v]);
    }

    #[test]
    fn order_independence() {
        // shuffled declared order gives the same fixpoint
        let gram = vec![
            vec![rat(-2), rat(1), rat(0)],
            vec![rat(1), rat(-2), rat(1)],
            vec![rat(0), rat(1), rat(0)],
        ];
        // both negative curves enter the support, in an order that depends on
        // the declared ordering
        let d = vec![rat(2), rat(2), rat(1)];
        let mut answers = Vec::new();
        for declared in [vec![0, 1, 2], vec![2, 1, 0], vec![1, 2, 0]] {
            let model = SurfaceModel::new("chain", &["a", "b", "f"], gram.clone(), &declared);
            answers.push(zariski_decompose(&model, &d).unwrap());
        }
        assert_eq!(answers[0], answers[1]);
        assert_eq!(answers[1], answers[2]);
    }

    #[test]
    fn indefinite_support_detected() {
        // a declared "negative" curve with square 0 forced into the support
        let model = SurfaceModel::new(
            "bad",
            &["a", "f"],
            vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]],
            &[0, 1],
        );
        let d = vec![rat(-1), rat(0)];
        assert!(matches!(
            zariski_decompose(&model, &d),
            Err(ZariskiError::NotNegativeCurve(_)) | Err(ZariskiError::IndefiniteGram)
        ));
    }

    #[test]
    fn non_pseudoeffective_detected() {
        let model = f1_model();
        // -(e + f) is not pseudoeffective
        let d = vec![rat(-2), rat(-2)];
        assert!(zariski_decompose(&model, &d).is_err());
    }

    fn uvc_poly(src: &str) -> MPoly {
        parse_mpoly(src, &UVC).unwrap()
    }

    fn region_a_table() -> ZariskiTable {
        // first region of the finite-fiber flag: D = u e + (u - v) f,
        // P = (u - v)(e + f), N = v e for 0 <= v <= u
        ZariskiTable {
            paper_label: "ztable-test-region-a".into(),
            model: f1_model(),
            c_window: (rat(0), ratq(1, 2)),
            u_lower: uvc_poly("0"),
            u_upper: uvc_poly("2 - 2*c"),
            d_of_u: vec![uvc_poly("u"), uvc_poly("u")],
            minus_curve: vec![rat(0), rat(1)],
            pieces: vec![ZTablePiece {
                v_lower: uvc_poly("0"),
                v_upper: uvc_poly("u"),
                p: vec![uvc_poly("u - v"), uvc_poly("u - v")],
                n: vec![uvc_poly("v"), uvc_poly("0")],
            }],
        }
    }

    #[test]
    fn table_validation_passes() {
        let report = validate_table(&region_a_table(), 200, 7).unwrap();
        assert!(report.samples_run >= 200);
        assert!(report.passed(), "{:?}", report.mismatches.first());
    }

    #[test]
    fn corrupted_table_fails_with_witness() {
        let mut table = region_a_table();
        table.pieces[0].n[0] = uvc_poly("-v");
        let report = validate_table(&table, 50, 7).unwrap();
        assert!(!report.passed());
        let w = &report.mismatches[0];
        assert!(!w.c.is_empty() && !w.u.is_empty() && !w.v.is_empty());
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn decomposition_identities_on_random_divisors(
            a in -6i64..7, b in -6i64..7, c in 0i64..7,
        ) {
            // chain model: two negative curves and a fiber class
            let gram = vec![
                vec![rat(-2), rat(1), rat(0)],
                vec![rat(1), rat(-2), rat(1)],
                vec![rat(0), rat(1), rat(0)],
            ];
            let model = SurfaceModel::new("chain", &["a", "b", "f"], gram, &[0, 1, 2]);
            let d = vec![rat(a), rat(b), rat(c)];
            if let Ok(z) = zariski_decompose(&model, &d) {
                // D = P + N
                for i in 0..3 {
                    prop_assert_eq!(z.p[i].clone() + z.n[i].clone(), d[i].clone());
                }
                // P nef against the declared curves, orthogonal to the support
                for i in 0..3 {
                    let ci = model.basis_vec_test(i);
                    let dot = model.dot(&z.p, &ci);
                    prop_assert!(!dot.is_negative());
                    if z.support.contains(&i) {
                        prop_assert!(dot.is_zero());
                    }
                }
                // P . N = 0 and N coefficients nonnegative
                prop_assert!(model.dot(&z.p, &z.n).is_zero());
                prop_assert!(z.n.iter().all(|x| !x.is_negative()));
            }
        }
    }

    #[test]
    fn determinism_under_seed() {
        let a = validate_table(&region_a_table(), 100, 11).unwrap();
        let b = validate_table(&region_a_table(), 100, 11).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
