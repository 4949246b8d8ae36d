//! Bidegree-(2,2) forms on P^1 x P^2, the SL2 x SL3 coordinate action, and the
//! catalog of named surfaces.
//!
//! A form is stored by its coefficient on the monomial
//! `t0^(2-i) t1^i y0^(2-j-k) y1^j y2^k`, indexed by `(i, j, k)`. Forms are
//! projective objects: `proportional_to` is semantic equality, and
//! `normalize` rescales so the first nonzero coefficient in canonical order
//! is 1.
//!
//! The middle quadric carries the factor-2 convention used for the
//! discriminant: the t0*t1 coefficients are halved in `split_quadrics`, so
//! reassembling `t0^2 Q1 + 2 t0 t1 Q2 + t1^2 Q3` reproduces the form. Sign or
//! scalar slips here propagate straight into the discriminant, hence the
//! round-trip is asserted on the whole catalog rather than assumed.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{parse_mpoly, MPoly};
use crate::rat::{parse_rat, rat, ratq, Rat};

pub const FORM_VARS: [&str; 5] = ["t0", "t1", "y0", "y1", "y2"];
pub const PLANE_VARS: [&str; 3] = ["y0", "y1", "y2"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("the zero form is not a (2,2)-divisor")]
    ZeroForm,
    #[error("not a bidegree (2,2) form: {0}")]
    NotBidegree22(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// A nonzero bidegree-(2,2) form.
#[derive(Clone, PartialEq, Eq)]
pub struct BidegreeForm {
    /// (i, j, k) -> coefficient of t0^(2-i) t1^i y0^(2-j-k) y1^j y2^k.
    coeffs: BTreeMap<(u8, u8, u8), Rat>,
}

#[derive(Serialize, Deserialize)]
struct JsonFormTerm {
    ijk: [u8; 3],
    coef: String,
}

impl Serialize for BidegreeForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<JsonFormTerm> = self
            .coeffs
            .iter()
            .map(|(&(i, j, k), c)| JsonFormTerm {
                ijk: [i, j, k],
                coef: crate::rat::rat_to_string(c),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BidegreeForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms: Vec<JsonFormTerm> = Vec::deserialize(deserializer)?;
        let entries: Result<Vec<((u8, u8, u8), Rat)>, D::Error> = terms
            .into_iter()
            .map(|t| {
                let c = parse_rat(&t.coef).map_err(serde::de::Error::custom)?;
                Ok(((t.ijk[0], t.ijk[1], t.ijk[2]), c))
            })
            .collect();
        BidegreeForm::from_coeffs(entries?).map_err(serde::de::Error::custom)
    }
}

impl BidegreeForm {
    pub fn from_coeffs(
        entries: impl IntoIterator<Item = ((u8, u8, u8), Rat)>,
    ) -> Result<Self, FormError> {
        let mut coeffs = BTreeMap::new();
        for ((i, j, k), c) in entries {
            assert!(i <= 2 && j + k <= 2, "exponent out of range");
            if !c.is_zero() {
                let slot = coeffs.entry((i, j, k)).or_insert_with(|| rat(0));
                *slot += c;
                if slot.is_zero() {
                    coeffs.remove(&(i, j, k));
                }
            }
        }
        if coeffs.is_empty() {
            return Err(FormError::ZeroForm);
        }
        Ok(BidegreeForm { coeffs })
    }

    pub fn from_mpoly(p: &MPoly) -> Result<Self, FormError> {
        let p = p.with_vars(&FORM_VARS);
        let mut entries = Vec::new();
        for (e, c) in p.terms() {
            let (a, b, u, v, w) = (e[0], e[1], e[2], e[3], e[4]);
            if a + b != 2 || u + v + w != 2 {
                return Err(FormError::NotBidegree22(p.to_string()));
            }
            entries.push(((b as u8, v as u8, w as u8), c.clone()));
        }
        Self::from_coeffs(entries)
    }

    pub fn parse(src: &str) -> Result<Self, FormError> {
        let p = parse_mpoly(src, &FORM_VARS)
            .map_err(|e| FormError::NotBidegree22(format!("{src}: {e}")))?;
        Self::from_mpoly(&p)
    }

    pub fn to_mpoly(&self) -> MPoly {
        MPoly::from_terms(
            &FORM_VARS,
            self.coeffs.iter().map(|(&(i, j, k), c)| {
                (
                    vec![
                        2 - i as u32,
                        i as u32,
                        2 - (j + k) as u32,
                        j as u32,
                        k as u32,
                    ],
                    c.clone(),
                )
            }),
        )
    }

    pub fn coeff(&self, i: u8, j: u8, k: u8) -> Rat {
        self.coeffs
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(|| rat(0))
    }

    pub fn support(&self) -> impl Iterator<Item = (u8, u8, u8)> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, c: &Rat) -> Result<Self, FormError> {
        if c.is_zero() {
            return Err(FormError::ZeroForm);
        }
        Ok(BidegreeForm {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        })
    }

    /// First nonzero coefficient scaled to 1 (canonical projective representative).
    pub fn normalize(&self) -> Self {
        let first = self.coeffs.values().next().expect("nonzero form").clone();
        self.scale(&(Rat::one() / first)).expect("nonzero scale")
    }

    /// Equality up to a nonzero scalar.
    pub fn proportional_to(&self, other: &BidegreeForm) -> bool {
        self.normalize() == other.normalize()
    }

    /// Split as t0^2 Q1 + 2 t0 t1 Q2 + t1^2 Q3; the t0 t1 coefficients are
    /// divided by 2 to form Q2.
    pub fn split_quadrics(&self) -> QuadricTriple {
        let mut q = [
            MPoly::zero(&PLANE_VARS),
            MPoly::zero(&PLANE_VARS),
            MPoly::zero(&PLANE_VARS),
        ];
        for (&(i, j, k), c) in &self.coeffs {
            let exp = vec![2 - (j + k) as u32, j as u32, k as u32];
            let coef = if i == 1 { c / rat(2) } else { c.clone() };
            let term = MPoly::from_terms(&PLANE_VARS, [(exp, coef)]);
            q[i as usize] = q[i as usize].add(&term);
        }
        let [q1, q2, q3] = q;
        QuadricTriple { q1, q2, q3 }
    }
}

impl fmt::Display for BidegreeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly())
    }
}

impl fmt::Debug for BidegreeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly())
    }
}

/// The quadrics of t0^2 Q1 + 2 t0 t1 Q2 + t1^2 Q3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricTriple {
    pub q1: MPoly,
    pub q2: MPoly,
    pub q3: MPoly,
}

impl QuadricTriple {
    /// Rebuild the (2,2)-form; exact inverse of `split_quadrics`.
    pub fn reassemble(&self) -> Result<BidegreeForm, FormError> {
        let t0 = MPoly::var(&FORM_VARS, "t0");
        let t1 = MPoly::var(&FORM_VARS, "t1");
        let lift = |q: &MPoly| q.with_vars(&FORM_VARS);
        let f = t0
            .mul(&t0)
            .mul(&lift(&self.q1))
            .add(&t0.mul(&t1).mul(&lift(&self.q2)).scale(&rat(2)))
            .add(&t1.mul(&t1).mul(&lift(&self.q3)));
        BidegreeForm::from_mpoly(&f)
    }
}

/// 2x2 and 3x3 rational matrices for the coordinate action.
pub type Mat2 = [[Rat; 2]; 2];
pub type Mat3 = [[Rat; 3]; 3];

pub fn det2(m: &Mat2) -> Rat {
    m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone()
}

pub fn det3(m: &Mat3) -> Rat {
    let a =
        m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone());
    let b =
        m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone());
    let c =
        m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone());
    a - b + c
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..2).map(|k| a[i][k].clone() * b[k][j].clone()).sum::<Rat>())
    })
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).map(|k| a[i][k].clone() * b[k][j].clone()).sum::<Rat>())
    })
}

/// Right coordinate action: substitute t_i -> sum_j g2[i][j] t_j and
/// y_i -> sum_j g3[i][j] y_j, then expand. Satisfies
/// `act(act(f, g), h) == act(f, g.h)`.
pub fn act(f: &BidegreeForm, g2: &Mat2, g3: &Mat3) -> Result<BidegreeForm, FormError> {
    if det2(g2).is_zero() || det3(g3).is_zero() {
        return Err(FormError::SingularMatrix);
    }
    let p = f.to_mpoly();
    let lin2 = |row: &[Rat; 2]| {
        MPoly::var(&FORM_VARS, "t0")
            .scale(&row[0])
            .add(&MPoly::var(&FORM_VARS, "t1").scale(&row[1]))
    };
    let lin3 = |row: &[Rat; 3]| {
        MPoly::var(&FORM_VARS, "y0")
            .scale(&row[0])
            .add(&MPoly::var(&FORM_VARS, "y1").scale(&row[1]))
            .add(&MPoly::var(&FORM_VARS, "y2").scale(&row[2]))
    };
    let images = vec![
        lin2(&g2[0]),
        lin2(&g2[1]),
        lin3(&g3[0]),
        lin3(&g3[1]),
        lin3(&g3[2]),
    ];
    BidegreeForm::from_mpoly(&p.substitute(&images))
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// A singularity record in the expected facts of a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityFact {
    /// Point as "([a:b],[x:y:z])" for the surface, or a locus description.
    pub location: String,
    /// "A1", "A2", ..., "non_isolated".
    pub kind: String,
}

/// Structured expectations used by the regression tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct ExpectedFacts {
    /// Torus verdict in the shipped frame: "stable", "strictly_semistable", "unstable".
    pub frame_git: Option<String>,
    pub surface_singularities: Vec<SingularityFact>,
    /// Discriminant shape: "double_smooth_conic", "ox", "cat_eye",
    /// "conic_plus_double_line", ...
    pub discriminant_type: Option<String>,
    /// Label into the bundled sources registry.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCatalogEntry {
    pub name: String,
    /// Parameter values the shipped instance was built with.
    pub parameters: BTreeMap<String, String>,
    pub form: BidegreeForm,
    pub expected_facts: ExpectedFacts,
}

/// Catalog version tag exported with the JSON resource.
pub const CATALOG_VERSION: &str = "1";

fn pf(src: &str) -> BidegreeForm {
    BidegreeForm::parse(src).expect("catalog form parses")
}

fn params(kv: &[(&str, &str)]) -> BTreeMap<String, String> {
    kv.iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

/// t0^2 y1^2 + t0 t1 (b11 y1^2 + y0 y2) + t1^2 y1^2.
pub fn c_two_a1(b11: &Rat) -> BidegreeForm {
    BidegreeForm::from_coeffs([
        ((0, 2, 0), rat(1)),
        ((1, 2, 0), b11.clone()),
        ((1, 0, 1), rat(1)),
        ((2, 2, 0), rat(1)),
    ])
    .expect("nonzero")
}

/// t0^2 y1 y2 + t0 t1 (b11 y1^2 + y0 y2) + t1^2 y0 y1.
pub fn c_non_fin(b11: &Rat) -> BidegreeForm {
    BidegreeForm::from_coeffs([
        ((0, 1, 1), rat(1)),
        ((1, 2, 0), b11.clone()),
        ((1, 0, 1), rat(1)),
        ((2, 1, 0), rat(1)),
    ])
    .expect("nonzero")
}

/// t0^2 y2^2 + t0 t1 (y1^2 + b02 y0 y2) + t1^2 y0^2.
pub fn c_non_red(b02: &Rat) -> BidegreeForm {
    BidegreeForm::from_coeffs([
        ((0, 0, 2), rat(1)),
        ((1, 2, 0), rat(1)),
        ((1, 0, 1), b02.clone()),
        ((2, 0, 0), rat(1)),
    ])
    .expect("nonzero")
}

/// The (2,2)-lift of the smooth-cubic-plus-inflectional-line quartic, with
/// parameters (t, b), t != 0, 1. The plane coordinates (x, y, z) of the
/// quartic correspond to (y0, y1, y2).
pub fn eps1111_lift(t: &Rat, b: &Rat) -> Result<BidegreeForm, FormError> {
    if t.is_zero() || t.is_one() {
        return Err(FormError::BadParameter("t must avoid 0 and 1".into()));
    }
    let d = b.clone() + rat(2) * t.clone() / (t.clone() - rat(1));
    let u = -(rat(1) + rat(1) / t.clone()) / rat(2);
    let v = rat(1) / t.clone();
    Ok(wall_lift(&u, &v, b, &d))
}

/// The (2,2)-lift of the nodal-cubic-plus-inflectional-line quartic, parameter b.
pub fn eps121_lift(b: &Rat) -> BidegreeForm {
    let d = b.clone() + rat(2);
    wall_lift(&ratq(1, 2), &rat(0), b, &d)
}

/// Lift of z(y^2 z - x^3 - 2u x^2 z - v x z^2) with consistent parameters
/// (u, v, b, d): the two-line family of quadrics whose pencil recovers the
/// quartic as Q1 Q3 - Q2^2.
fn wall_lift(u: &Rat, v: &Rat, b: &Rat, d: &Rat) -> BidegreeForm {
    let quad = |s: &Rat, t: &Rat| -> MPoly {
        // a = c = u case of the general family:
        //   -v s t z^2 + (-4u^2 + 2u(2u - st) - u^2 + v) x z - y^2
        //   + (2u(s+t) - u t - u s) y z + (-s t) x^2 + (s + t) x y
        let x2 = -(s.clone() * t.clone());
        let xy = s.clone() + t.clone();
        let xz = -rat(4) * u.clone() * u.clone()
            + rat(2) * u.clone() * (rat(2) * u.clone() - s.clone() * t.clone())
            - u.clone() * u.clone()
            + v.clone();
        let yz = u.clone() * (s.clone() + t.clone());
        let z2 = -v.clone() * s.clone() * t.clone();
        MPoly::from_terms(
            &PLANE_VARS,
            [
                (vec![2, 0, 0], x2),
                (vec![1, 1, 0], xy),
                (vec![1, 0, 1], xz),
                (vec![0, 2, 0], rat(-1)),
                (vec![0, 1, 1], yz),
                (vec![0, 0, 2], z2),
            ],
        )
    };
    let triple = QuadricTriple {
        q1: quad(b, b),
        q2: quad(b, d),
        q3: quad(d, d),
    };
    triple.reassemble().expect("nonzero lift")
}

static CATALOG: Lazy<Vec<SurfaceCatalogEntry>> = Lazy::new(build_catalog);

fn build_catalog() -> Vec<SurfaceCatalogEntry> {
    vec![
        SurfaceCatalogEntry {
            name: "R0".into(),
            parameters: params(&[]),
            form: pf("t0*t1*(y0*y2 + y1^2)"),
            expected_facts: ExpectedFacts {
                frame_git: Some("strictly_semistable".into()),
                surface_singularities: vec![SingularityFact {
                    location: "component intersections".into(),
                    kind: "non_isolated".into(),
                }],
                discriminant_type: Some("double_smooth_conic".into()),
                source: "polystable-locus-r0".into(),
            },
        },
        SurfaceCatalogEntry {
            name: "R1".into(),
            parameters: params(&[]),
            form: pf("(t0+t1)^2*y1^2 + t0*t1*y0*y2"),
            expected_facts: ExpectedFacts {
                frame_git: Some("strictly_semistable".into()),
                surface_singularities: vec![
                    SingularityFact { location: "([1:0],[1:0:0])".into(), kind: "A1".into() },
                    SingularityFact { location: "([0:1],[1:0:0])".into(), kind: "A1".into() },
                    SingularityFact { location: "([1:0],[0:0:1])".into(), kind: "A1".into() },
                    SingularityFact { location: "([0:1],[0:0:1])".into(), kind: "A1".into() },
                    SingularityFact { location: "([1:-1],[0:1:0])".into(), kind: "A1".into() },
                ],
                discriminant_type: Some("ox".into()),
                source: "polystable-locus-r1".into(),
            },
        },
        SurfaceCatalogEntry {
            name: "R2".into(),
            parameters: params(&[]),
            form: pf("(t0*y2 + t1*y1)*(t0*y1 + t1*y0)"),
            expected_facts: ExpectedFacts {
                frame_git: Some("strictly_semistable".into()),
                surface_singularities: vec![SingularityFact {
                    location: "component intersections".into(),
                    kind: "non_isolated".into(),
                }],
                discriminant_type: Some("double_smooth_conic".into()),
                source: "polystable-locus-r2".into(),
            },
        },
        SurfaceCatalogEntry {
            name: "R3".into(),
            parameters: params(&[]),
            form: pf("t0*t1*y1^2 + (t0*y2 + t1*y0)^2"),
            expected_facts: ExpectedFacts {
                frame_git: Some("strictly_semistable".into()),
                surface_singularities: vec![SingularityFact {
                    location: "(y1 = t0 y2 + t1 y0 = 0)".into(),
                    kind: "non_isolated".into(),
                }],
                discriminant_type: Some("conic_plus_double_line".into()),
                source: "wall-surface-r3".into(),
            },
        },
        SurfaceCatalogEntry {
            name: "C2xA1".into(),
            parameters: params(&[("b11", "3")]),
            form: c_two_a1(&rat(3)),
            expected_facts: ExpectedFacts {
                frame_git: Some("strictly_semistable".into()),
                surface_singularities: vec![
                    SingularityFact { location: "([1:0],[1:0:0])".into(), kind: "A1".into() },
                    SingularityFact { location: "([0:1],[1:0:0])".into(), kind: "A1".into() },
                    SingularityFact { location: "([1:0],[0:0:1])".into(), kind: "A1".into() },
                    SingularityFact { location: "([0:1],[0:0:1])".into(), kind: "A1".into() },
                ],
                discriminant_type: Some("cat_eye".into()),
                source: "polystable-locus-two-a1".into(),
            },
        },
        SurfaceCatalogEntry {
            name: "Cnonfin".into(),
            parameters: params(&[("b11", "3")]),
            form: c_non_fin(&rat(3)),
            expected_facts: ExpectedFacts {
                frame_git: Some("strictly_semistable".into()),
                surface_singularities: vec![
                    SingularityFact { location: "([1:0],[1:0:0])".into(), kind: "A2".into() },
                    SingularityFact { location: "([0:1],[0:0:1])".into(), kind: "A2".into() },
                ],
                discriminant_type: Some("cat_eye".into()),
                source: "polystable-locus-non-fin".into(),
            },
        },
        SurfaceCatalogEntry {
            name: "Cnonred".into(),
            parameters: params(&[("b02", "3")]),
            form: c_non_red(&rat(3)),
            expected_facts: ExpectedFacts {
                frame_git: Some("strictly_semistable".into()),
                surface_singularities: vec![
                    SingularityFact { location: "([1:0],[1:0:0])".into(), kind: "A3".into() },
                    SingularityFact { location: "([0:1],[0:0:1])".into(), kind: "A3".into() },
                ],
                discriminant_type: Some("cat_eye".into()),
                source: "polystable-locus-non-red".into(),
            },
        },
        SurfaceCatalogEntry {
            name: "Eps1111Lift".into(),
            parameters: params(&[("t", "2"), ("b", "1")]),
            form: eps1111_lift(&rat(2), &rat(1)).expect("valid parameters"),
            expected_facts: ExpectedFacts {
                frame_git: Some("stable".into()),
                surface_singularities: vec![SingularityFact {
                    location: "([-1:1],[0:1:0])".into(),
                    kind: "A5".into(),
                }],
                discriminant_type: Some("cubic_plus_inflectional_line".into()),
                source: "stable-lift-smooth-cubic-line".into(),
            },
        },
        SurfaceCatalogEntry {
            name: "Eps121Lift".into(),
            parameters: params(&[("b", "1")]),
            form: eps121_lift(&rat(1)),
            expected_facts: ExpectedFacts {
                frame_git: Some("stable".into()),
                surface_singularities: vec![SingularityFact {
                    location: "([-1:1],[0:1:0])".into(),
                    kind: "A5".into(),
                }],
                discriminant_type: Some("nodal_cubic_plus_inflectional_line".into()),
                source: "stable-lift-nodal-cubic-line".into(),
            },
        },
    ]
}

/// The shipped catalog of named surfaces.
pub fn catalog() -> &'static [SurfaceCatalogEntry] {
    &CATALOG
}

/// Look up a catalog entry by name, optionally overriding its parameters.
pub fn lookup(name: &str, parameters: &[(&str, &str)]) -> Result<BidegreeForm, FormError> {
    if parameters.is_empty() {
        if let Some(e) = CATALOG.iter().find(|e| e.name == name) {
            return Ok(e.form.clone());
        }
    }
    let get = |key: &str, default: &str| -> Result<Rat, FormError> {
        let raw = parameters
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .unwrap_or(default);
        parse_rat(raw).map_err(FormError::BadParameter)
    };
    match name {
        "C2xA1" => Ok(c_two_a1(&get("b11", "3")?)),
        "Cnonfin" => Ok(c_non_fin(&get("b11", "3")?)),
        "Cnonred" => Ok(c_non_red(&get("b02", "3")?)),
        "Eps1111Lift" => eps1111_lift(&get("t", "2")?, &get("b", "1")?),
        "Eps121Lift" => Ok(eps121_lift(&get("b", "1")?)),
        _ => CATALOG
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.form.clone())
            .ok_or_else(|| FormError::UnknownEntry(name.to_string())),
    }
}

/// The versioned catalog JSON document.
pub fn catalog_json() -> serde_json::Value {
    serde_json::json!({
        "version": CATALOG_VERSION,
        "entries": catalog(),
    })
}

/// The catalog resource embedded in the binary; pinned against the built
/// catalog by a golden test.
pub fn embedded_catalog_json() -> serde_json::Value {
    serde_json::from_str(include_str!("../resources/catalog.json"))
        .expect("embedded catalog parses")
}
