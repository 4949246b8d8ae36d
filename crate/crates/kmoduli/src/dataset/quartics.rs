//! The classified quartics with a higher A_n singularity: the twelve rows of
//! the A_n + A_1 list and the three cubic-plus-inflectional-line cases,
//! with their full singular-point inventories.
//!
//! Free parameters are pinned to small rationals satisfying the stated
//! genericity; the plane coordinates (x, y, z) are stored as (y0, y1, y2).

use crate::quad::QuadExt;
use crate::rat::rat;
use crate::singular::TernaryQuartic;

pub struct WallRow {
    pub id: String,
    pub source: String,
    pub curve: TernaryQuartic,
    /// Full singular inventory: (point, type label).
    pub expected: Vec<([i64; 3], &'static str)>,
}

fn row(id: &str, source: &str, curve: &str, expected: Vec<([i64; 3], &'static str)>) -> WallRow {
    WallRow {
        id: id.into(),
        source: source.into(),
        curve: TernaryQuartic::parse(curve),
        expected,
    }
}

pub fn point(coords: [i64; 3]) -> [QuadExt; 3] {
    [
        QuadExt::rational(rat(coords[0]), 0),
        QuadExt::rational(rat(coords[1]), 0),
        QuadExt::rational(rat(coords[2]), 0),
    ]
}

/// The twelve rows with an A_1 next to a higher A_n, then the three
/// line-plus-cubic cases.
pub fn wall_rows() -> Vec<WallRow> {
    vec![
        row(
            "wall-alpha-211",
            "wall-row-alpha-211",
            "(y0*y2 - 2*y1^2)^2 - y1^2*(y1 - y0)*(y1 + y0)",
            vec![([0, 0, 1], "A3"), ([1, 0, 0], "A1")],
        ),
        row(
            "wall-alpha-22",
            "wall-row-alpha-22",
            "(y0*y2 - 2*y1^2)^2 - y1^2*(y1 - y0)^2",
            vec![([0, 0, 1], "A3"), ([1, 1, 2], "A1"), ([1, 0, 0], "A1")],
        ),
        row(
            "wall-beta-211",
            "wall-row-beta-211",
            "y0^2*y2^2 - y1^2*(y1 - y0)*(y1 + y0)",
            vec![([0, 0, 1], "A3"), ([1, 0, 0], "A1")],
        ),
        row(
            "wall-beta-22",
            "wall-row-beta-22",
            "y0^2*y2^2 - y1^2*(y1 - y0)^2",
            vec![([0, 0, 1], "A3"), ([1, 1, 0], "A1"), ([1, 0, 0], "A1")],
        ),
        row(
            "wall-gamma-211",
            "wall-row-gamma-211",
            "(y0*y2 - y1^2)^2 - y0*y1^2*(y0 - y1)",
            vec![([0, 0, 1], "A4"), ([1, 0, 0], "A1")],
        ),
        row(
            "wall-gamma-22",
            "wall-row-gamma-22",
            "(y0*y2 - y1^2)^2 - y0^2*y1^2",
            vec![([0, 0, 1], "A5"), ([1, 0, 0], "A1")],
        ),
        row(
            "wall-delta-1111",
            "wall-row-delta-1111",
            "(y0*y2 - y1^2)^2 - y1*(y1 - y0)*(y1 - 2*y0)*(y1 - 3*y0)",
            vec![([0, 0, 1], "A3"), ([0, 1, 3], "A1")],
        ),
        row(
            "wall-delta-211",
            "wall-row-delta-211",
            "(y0*y2 - y1^2)^2 - y1^2*(y1 - y0)*(y1 - 2*y0)",
            vec![([0, 0, 1], "A3"), ([0, 2, 3], "A1"), ([1, 0, 0], "A1")],
        ),
        row(
            "wall-delta-31",
            "wall-row-delta-31",
            "(y0*y2 - y1^2)^2 - y1^3*(y1 - y0)",
            vec![([0, 0, 1], "A3"), ([1, 0, 0], "A2"), ([0, 2, 1], "A1")],
        ),
        row(
            "wall-delta-22",
            "wall-row-delta-22",
            "(y0*y2 - y1^2)^2 - y1^2*(y1 - y0)^2",
            vec![
                ([0, 0, 1], "A3"),
                ([0, 1, 1], "A1"),
                ([1, 1, 1], "A1"),
                ([1, 0, 0], "A1"),
            ],
        ),
        row(
            "wall-delta-4",
            "wall-row-delta-4",
            "(y0*y2 - y1^2)^2 - y1^4",
            vec![([0, 0, 1], "A3"), ([1, 0, 0], "A3"), ([0, 1, 0], "A1")],
        ),
        row(
            "wall-epsilon-121-lines",
            "wall-row-epsilon-121",
            "y0*(y0*y2^2 - y0*y1^2 + y1^3)",
            vec![([0, 0, 1], "A5"), ([1, 0, 0], "A1")],
        ),
        // the three line-plus-cubic cases in the inflectional coordinates
        row(
            "eps-1111-curve",
            "epsilon-smooth-cubic-line",
            "y2*(y1^2*y2 - y0*(y2 - y0)*(1/2*y2 - y0))",
            vec![([0, 1, 0], "A5")],
        ),
        row(
            "eps-121-curve",
            "epsilon-nodal-cubic-line",
            "y2*(y1^2*y2 - y0^3 - y0^2*y2)",
            vec![([0, 1, 0], "A5"), ([0, 0, 1], "A1")],
        ),
        row(
            "eps-13-curve",
            "epsilon-cuspidal-cubic-line",
            "y2*(y1^2*y2 - y0^3)",
            vec![([0, 1, 0], "A5"), ([0, 0, 1], "A2")],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::PLANE_VARS;
    use crate::poly::{parse_mpoly, MPoly};
    use crate::quad::Field;
    use crate::rat::ratq;
    use crate::singular::{
        normalize_point, rational_singular_points, QuarticSingReport,
    };

    #[test]
    fn every_row_reproduces_types_and_points() {
        for row in wall_rows() {
            let report = rational_singular_points(&row.curve, Field::Q)
                .unwrap_or_else(|e| panic!("{}: {e}", row.id));
            let QuarticSingReport::Points(pts) = report else {
                panic!("{}: unexpectedly non-reduced", row.id);
            };
            assert_eq!(
                pts.len(),
                row.expected.len(),
                "{}: found {:?}",
                row.id,
                pts.iter()
                    .map(|p| (
                        format!("{:?}", p.point),
                        p.report.ade_type.label()
                    ))
                    .collect::<Vec<_>>()
            );
            for (coords, kind) in &row.expected {
                let want = normalize_point(&point(*coords)).unwrap();
                let found = pts
                    .iter()
                    .find(|p| normalize_point(&p.point).unwrap() == want)
                    .unwrap_or_else(|| panic!("{}: missing point {coords:?}", row.id));
                assert_eq!(
                    found.report.ade_type.label(),
                    *kind,
                    "{} at {coords:?}",
                    row.id
                );
            }
        }
    }

    #[test]
    fn nodal_normal_form_matches_inflectional_curve() {
        // the stable pointed-quartic normal form (a, b, f4) =
        // (1/8, -1/8, dataset value) is the inflectional-line curve
        // y2(y1^2 y2 - y0^3 - y0^2 y2) after the explicit coordinate change
        // x -> (Y - X)/2, y -> (X + Y)/2, z -> w - (3/16)(Y - X)
        let vars = ["X", "Y", "w"];
        let curve = parse_mpoly(
            "y2*(y1^2*y2 - y0^3 - y0^2*y2)",
            &PLANE_VARS,
        )
        .unwrap();
        let img_x = parse_mpoly("1/2*(Y - X)", &vars).unwrap();
        let img_y = parse_mpoly("1/2*(X + Y)", &vars).unwrap();
        let img_z = parse_mpoly("w - 3/16*(Y - X)", &vars).unwrap();
        let moved = curve.substitute(&[img_x, img_y, img_z]);

        let f4 = super::super::gitcases::nodal_cubic_f4();
        let mut normal = parse_mpoly("X*Y*w^2 + w*(1/8*X^3 - 1/8*Y^3)", &vars).unwrap();
        for (i, c) in f4.iter().enumerate() {
            // coefficient of X^i Y^(4-i)
            let mono = MPoly::from_terms(&vars, [(vec![i as u32, 4 - i as u32, 0], c.clone())]);
            normal = normal.add(&mono);
        }
        assert_eq!(moved, normal);
        let _ = ratq(1, 1);
    }
}
