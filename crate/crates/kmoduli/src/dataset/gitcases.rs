//! The destabilizing 1-parameter subgroups with their target forms, the
//! weight-zero certificates with their degeneration limits, and the pointed
//! nodal quartic cases.

use crate::forms::BidegreeForm;
use crate::git::{GitStatus, NodalQuarticPoint, OnePS};
use crate::rat::{rat, ratq, Rat};

pub struct WitnessCase {
    pub id: String,
    pub source: String,
    pub form: BidegreeForm,
    pub lambda: OnePS,
}

fn form(src: &str) -> BidegreeForm {
    BidegreeForm::parse(src).expect("witness form")
}

/// Destabilizing certificates: hm_weight(form, lambda) must be positive.
pub fn destabilizing_witnesses() -> Vec<WitnessCase> {
    let mk = |id: &str, source: &str, f: &str, l: (i64, i64, i64, i64, i64)| WitnessCase {
        id: id.into(),
        source: source.into(),
        form: form(f),
        lambda: OnePS::diag(l.0, l.1, l.2, l.3, l.4),
    };
    vec![
        mk(
            "w-nonreduced-square",
            "unstable-nonreduced",
            "(t0*y0 + t1*y1)^2",
            (1, -1, 0, 2, -2),
        ),
        mk(
            "w-fiber-of-second-projection",
            "unstable-singular-fiber",
            "t0^2*y1^2 + t0*t1*(y1*y2 + y2^2) + t1^2*(y1^2 + y1*y2)",
            (1, -1, -4, 2, 2),
        ),
        mk(
            "w-double-line-section",
            "unstable-horizontal-double-line",
            "t0^2*y0^2 + 2*t0*t1*y0*y1 + t1^2*(y1^2 + y2^2 + y0*y2)",
            (-3, 3, 4, -2, -2),
        ),
        mk(
            "w-square-plus-square",
            "unstable-two-squares",
            "t1^2*y1^2 + (t0*y2 + t1*y0)^2",
            (-4, 4, -3, -3, 6),
        ),
        mk(
            "w-hessian-rank-zero",
            "unstable-hessian-rank-zero",
            "t0*t1*(y1^2 + y1*y2 + y2^2) + t1^2*(y0*y1 + y1^2 + y2^2 + y1*y2 + y0*y2)",
            (-5, 5, -2, 1, 1),
        ),
        mk(
            "w-worse-than-an-b02",
            "unstable-deep-singularity-b02",
            "t0^2*y2^2 + t0*t1*(y1^2 + y1*y2 + y2^2) \
             + t1^2*(y0*y1 + y1^2 + y1*y2 + y2^2 + y0*y2)",
            (-2, 2, -6, 3, 3),
        ),
        mk(
            "w-worse-than-an-b11",
            "unstable-deep-singularity-b11",
            "t0^2*y2^2 + t0*t1*(y1*y2 + y2^2 + y0*y2) \
             + t1^2*(y0^2 + y0*y1 + y1^2 + y1*y2 + y2^2 + y0*y2)",
            (-3, 3, -2, -2, 4),
        ),
        mk(
            "w-reducible-degenerate-quadric",
            "unstable-reducible-quadric",
            "t0*t1*(y0*y2 + y1*y2)",
            (0, 0, -2, -2, 4),
        ),
        mk(
            "w-reducible-line-plus-quadric",
            "unstable-line-plus-quadric",
            "t0*t1*y2^2 + t1^2*(y0^2 + y1^2 + y2^2 + y0*y1 + y0*y2 + y1*y2)",
            (-3, 3, -2, -2, 4),
        ),
        mk(
            "w-reducible-common-vanishing",
            "unstable-reducible-pair",
            "2*t0^2*y2^2 + t0*t1*(y0*y2 + 2*y1*y2) + t1^2*y0*y1",
            (-2, 2, -2, -1, 3),
        ),
        mk(
            "w-gamma2-a12-b11",
            "unstable-nonfin-degeneration-a",
            "t0^2*y2^2 + t0*t1*(y2^2 + y0*y2 + y1*y2) \
             + t1^2*(y1^2 + y2^2 + y0*y1 + y0*y2 + y1*y2)",
            (-2, 2, -2, -1, 3),
        ),
        mk(
            "w-gamma2-b11-c01",
            "unstable-nonfin-degeneration-b",
            "t0^2*(y2^2 + y1*y2) + t0*t1*(y2^2 + y0*y2 + y1*y2) \
             + t1^2*(y1^2 + y2^2 + y0*y2 + y1*y2)",
            (-2, 2, -5, -1, 6),
        ),
        mk(
            "w-gamma3-b11",
            "unstable-nonred-degeneration-a",
            "t0^2*y2^2 + t0*t1*(y2^2 + y0*y2 + y1*y2) \
             + t1^2*(y0^2 + y1^2 + y2^2 + y0*y1 + y0*y2 + y1*y2)",
            (-5, 5, -4, -3, 7),
        ),
        mk(
            "w-gamma3-a22-b02",
            "unstable-nonred-degeneration-b",
            "t0*t1*(y1^2 + y2^2 + y1*y2) \
             + t1^2*(y0^2 + y1^2 + y2^2 + y0*y1 + y0*y2 + y1*y2)",
            (-3, 3, -2, 1, 1),
        ),
        mk(
            "w-gamma4-triple-zero",
            "unstable-two-a1-degeneration-a",
            "t0^2*(y2^2 + y1*y2 + y0*y2) + t0*t1*(y2^2 + y1*y2 + y0*y2) \
             + t1^2*(y2^2 + y1*y2 + y0*y2)",
            (-1, 1, -3, -3, 6),
        ),
        mk(
            "w-gamma4-a02-zero",
            "unstable-two-a1-degeneration-b",
            "t0^2*(y2^2 + y1*y2) + t0*t1*(y2^2 + y0*y2 + y1*y2) \
             + t1^2*(y1^2 + y2^2 + y0*y2 + y1*y2)",
            (-2, 2, -5, -1, 6),
        ),
        mk(
            "w-nonfin-b01-b02",
            "unstable-nonfin-contact",
            "t0^2*(y1^2 + y1*y2 + y2^2) + t0*t1*(y1^2 + y1*y2 + y2^2) \
             + t1^2*(y0*y1 + y1^2 + y2^2 + y1*y2 + y0*y2)",
            (-3, 3, -10, 5, 5),
        ),
        mk(
            "w-two-squares-mixed",
            "unstable-mixed-squares",
            "t0^2*y1^2 + t1^2*(y1^2 + y0*y2)",
            (-2, 2, -6, 3, 3),
        ),
    ]
}

pub struct MuZeroCase {
    pub id: String,
    pub source: String,
    pub form: BidegreeForm,
    pub lambda: OnePS,
    /// Support pattern the limit must land in (the S-equivalence family).
    pub family_support: Vec<(u8, u8, u8)>,
    pub family: &'static str,
}

/// Weight-zero certificates with the degeneration families their limits land in.
pub fn mu_zero_cases() -> Vec<MuZeroCase> {
    vec![
        MuZeroCase {
            id: "z-nonfin-family".into(),
            source: "semistable-nonfin-limit".into(),
            form: form(
                "t0^2*(5*y2^2 + 7*y1*y2) + t0*t1*(2*y1^2 + 3*y2^2 + 11*y0*y2 + y1*y2) \
                 + t1^2*(y1^2 + y2^2 + 13*y0*y1 + y0*y2 + y1*y2)",
            ),
            lambda: OnePS::diag(-1, 1, -2, 0, 2),
            family_support: vec![(0, 1, 1), (1, 2, 0), (1, 0, 1), (2, 1, 0)],
            family: "non-finite fibers",
        },
        MuZeroCase {
            id: "z-nonred-family".into(),
            source: "semistable-nonred-limit".into(),
            form: form(
                "t0^2*5*y2^2 + t0*t1*(2*y1^2 + 3*y2^2 + 7*y0*y2 + y1*y2) \
                 + t1^2*(11*y0^2 + y1^2 + y2^2 + y0*y1 + y0*y2 + y1*y2)",
            ),
            lambda: OnePS::diag(-1, 1, -1, 0, 1),
            family_support: vec![(0, 0, 2), (1, 2, 0), (1, 0, 1), (2, 0, 0)],
            family: "non-reduced fibers",
        },
        MuZeroCase {
            id: "z-two-a1-family".into(),
            source: "semistable-two-a1-limit".into(),
            form: form(
                "t0^2*(2*y1^2 + 3*y2^2 + y1*y2 + 5*y0*y2) \
                 + t0*t1*(7*y1^2 + y2^2 + 11*y0*y2 + y1*y2) \
                 + t1^2*(13*y1^2 + y2^2 + 17*y0*y2 + y1*y2)",
            ),
            lambda: OnePS::diag(0, 0, -1, 0, 1),
            family_support: vec![
                (0, 2, 0),
                (0, 0, 1),
                (1, 2, 0),
                (1, 0, 1),
                (2, 2, 0),
                (2, 0, 1),
            ],
            family: "two nodes on a fiber",
        },
        MuZeroCase {
            id: "z-r3-weight-zero".into(),
            source: "semistable-r3-certificate".into(),
            form: crate::forms::lookup("R3", &[]).expect("catalog"),
            lambda: OnePS::diag(-1, 1, -1, 0, 1),
            family_support: vec![(0, 0, 2), (1, 2, 0), (1, 0, 1), (2, 0, 0)],
            family: "non-reduced fibers",
        },
    ]
}

pub struct NodalCase {
    pub id: String,
    pub source: String,
    pub point: NodalQuarticPoint,
    pub expected: GitStatus,
}

/// The pointed-quartic torus cases: the polystable ox, the stable
/// cubic-plus-inflectional-line, and the four triple-point families.
pub fn nodal_cases() -> Vec<NodalCase> {
    let z = || rat(0);
    let f4 = |c: [Rat; 5]| c;
    vec![
        NodalCase {
            id: "nodal-ox".into(),
            source: "nodal-polystable-ox".into(),
            point: NodalQuarticPoint::new(z(), z(), f4([z(), z(), rat(1), z(), z()])),
            expected: GitStatus::StrictlySemistable,
        },
        NodalCase {
            id: "nodal-cubic-plus-line".into(),
            source: "nodal-stable-cubic-line".into(),
            // exact normal form of the nodal-cubic-plus-inflectional-line
            // quartic, derived in the quartics module tests
            point: NodalQuarticPoint::new(
                ratq(1, 8),
                ratq(-1, 8),
                nodal_cubic_f4(),
            ),
            expected: GitStatus::Stable,
        },
        NodalCase {
            id: "nodal-triple-cubic-node-line".into(),
            source: "nodal-unstable-triple-a".into(),
            // x(yz^2 - x^2(x - a y)), a = 1: f4 = -x^4 + x^3 y
            point: NodalQuarticPoint::new(z(), z(), f4([z(), z(), z(), rat(1), rat(-1)])),
            expected: GitStatus::Unstable,
        },
        NodalCase {
            id: "nodal-triple-conic-two-lines".into(),
            source: "nodal-unstable-triple-b".into(),
            // xyz^2 - zx^3 - (a/2)x^4 - (a^2/4)x^3 y, a = 2
            point: NodalQuarticPoint::new(
                rat(-1),
                z(),
                f4([z(), z(), z(), rat(-1), rat(-1)]),
            ),
            expected: GitStatus::Unstable,
        },
        NodalCase {
            id: "nodal-triple-conic-tangent".into(),
            source: "nodal-unstable-triple-c".into(),
            // xz(yz - x^2) = xyz^2 - x^3 z
            point: NodalQuarticPoint::new(rat(-1), z(), f4([z(), z(), z(), z(), z()])),
            expected: GitStatus::Unstable,
        },
        NodalCase {
            id: "nodal-triple-four-lines".into(),
            source: "nodal-unstable-triple-d".into(),
            // xyz^2 - (1/4) x^3 y
            point: NodalQuarticPoint::new(z(), z(), f4([z(), z(), z(), ratq(-1, 4), z()])),
            expected: GitStatus::Unstable,
        },
    ]
}

/// f4 of the normalized nodal-cubic-plus-inflectional-line quartic:
/// -3/128 (y - x)(x^3 - y^3) - 9/256 x y (y - x)^2, listed by x^i y^(4-i).
pub fn nodal_cubic_f4() -> [Rat; 5] {
    // expand -3/128 (y-x)(x^3-y^3) - 9/256 x y (y-x)^2
    // (y-x)(x^3-y^3) = x^3 y - y^4 - x^4 + x y^3
    // x y (y-x)^2 = x y^3 - 2 x^2 y^2 + x^3 y
    let a = ratq(-3, 128);
    let b = ratq(-9, 256);
    // coefficients of x^0 y^4, x^1 y^3, x^2 y^2, x^3 y^1, x^4 y^0
    [
        -a.clone(),                    // y^4
        a.clone() + b.clone(),         // x y^3
        rat(-2) * b.clone(),           // x^2 y^2
        a.clone() + b,                 // x^3 y
        -a,                            // x^4
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::git::{hm_weight, limit_along, nodal_git_status, torus_frame_test, Limit};

    #[test]
    fn all_witnesses_certify_positive_weight() {
        let cases = destabilizing_witnesses();
        assert!(cases.len() >= 12);
        for case in &cases {
            let mu = hm_weight(&case.form, &case.lambda).unwrap();
            assert!(mu > 0, "{}: mu = {mu}", case.id);
            // frame test agrees that the form is torus-unstable, and its own
            // witness re-certifies
            let verdict = torus_frame_test(&case.form).unwrap();
            assert_eq!(verdict.status, GitStatus::Unstable, "{}", case.id);
            let w = verdict.witness.unwrap();
            assert!(hm_weight(&case.form, &w).unwrap() > 0, "{}", case.id);
        }
    }

    #[test]
    fn mu_zero_cases_certify_and_land_in_families() {
        for case in mu_zero_cases() {
            let mu = hm_weight(&case.form, &case.lambda).unwrap();
            assert_eq!(mu, 0, "{}", case.id);
            match limit_along(&case.form, &case.lambda).unwrap() {
                Limit::Form(limit) => {
                    for (i, j, k) in limit.support() {
                        assert!(
                            case.family_support.contains(&(i, j, k)),
                            "{}: monomial ({i},{j},{k}) outside the {} family",
                            case.id,
                            case.family
                        );
                    }
                }
                other => panic!("{}: {other:?}", case.id),
            }
        }
    }

    #[test]
    fn nodal_verdicts() {
        for case in nodal_cases() {
            assert_eq!(
                nodal_git_status(&case.point).unwrap(),
                case.expected,
                "{}",
                case.id
            );
        }
    }
}
