//! Encoded piecewise Zariski decompositions P(u,v)/N(u,v) on the flag
//! surfaces, validated by sampling against the decomposition engine.
//!
//! One entry per u-region; together the entries cover every flag surface used
//! by the S-tables: the blown-up plane, the Hirzebruch models F1/F2/F3, the
//! quadric, and the three weighted (half-integer) lattices.

use crate::poly::{parse_mpoly, MPoly};
use crate::rat::{rat, ratq, Rat};
use crate::zariski::{SurfaceModel, ZTablePiece, ZariskiTable, UVC};

fn p(src: &str) -> MPoly {
    parse_mpoly(src, &UVC).expect("u,v,c polynomial")
}

fn gram(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect()
}

fn window() -> (Rat, Rat) {
    (rat(0), ratq(1, 2))
}

pub fn model_blown_plane() -> SurfaceModel {
    SurfaceModel::new(
        "blown-plane",
        &["e", "f"],
        gram(&[&[-1, 1], &[1, 0]]),
        &[0, 1],
    )
}

pub fn model_f1() -> SurfaceModel {
    SurfaceModel::new("f1", &["sigma", "f"], gram(&[&[-1, 1], &[1, 0]]), &[0, 1])
}

pub fn model_f2() -> SurfaceModel {
    SurfaceModel::new("f2", &["sigma", "f"], gram(&[&[-2, 1], &[1, 0]]), &[0, 1])
}

pub fn model_f3() -> SurfaceModel {
    SurfaceModel::new("f3", &["sigma", "f"], gram(&[&[-3, 1], &[1, 0]]), &[0, 1])
}

pub fn model_quadric() -> SurfaceModel {
    SurfaceModel::new("quadric", &["f", "s"], gram(&[&[0, 1], &[1, 0]]), &[0, 1])
}

pub fn model_two_blowups() -> SurfaceModel {
    // e, f, w: second blow-up on the ruled surface
    SurfaceModel::new(
        "two-point-blowup",
        &["e", "f", "w"],
        gram(&[&[-1, 1, 0], &[1, -1, 1], &[0, 1, -1]]),
        &[0, 1, 2],
    )
}

pub fn model_node_blowup() -> SurfaceModel {
    // e, f, cb: blow-up at the node of the branch conic
    SurfaceModel::new(
        "node-blowup",
        &["e", "f", "cb"],
        gram(&[&[-1, 1, 0], &[1, -1, 1], &[0, 1, -1]]),
        &[0, 1, 2],
    )
}

pub fn model_weighted_21() -> SurfaceModel {
    // e, f, l, x: (2,1)-weighted blow-up separating the branch conic from the
    // fiber; half-integer self-intersections
    let g = vec![
        vec![rat(-1), rat(1), rat(0), rat(0)],
        vec![rat(1), ratq(-1, 2), rat(0), ratq(1, 2)],
        vec![rat(0), rat(0), rat(-1), rat(1)],
        vec![rat(0), ratq(1, 2), rat(1), ratq(-1, 2)],
    ];
    SurfaceModel::new("weighted-21", &["e", "f", "l", "x"], g, &[0, 1, 2, 3])
}

pub fn model_weighted_tangent() -> SurfaceModel {
    // e, f, z: weighted blow-up separating the conic from its tangent line
    let g = vec![
        vec![rat(-1), rat(1), rat(0)],
        vec![rat(1), rat(-2), rat(1)],
        vec![rat(0), rat(1), ratq(-1, 2)],
    ];
    SurfaceModel::new("weighted-tangent", &["e", "f", "z"], g, &[0, 1, 2])
}

pub fn model_weighted_xn() -> SurfaceModel {
    // f, sigma, e on the weighted blow-up of the F2 flag
    let g = vec![
        vec![rat(-2), rat(1), rat(1)],
        vec![rat(1), rat(-2), rat(0)],
        vec![rat(1), rat(0), ratq(-1, 2)],
    ];
    SurfaceModel::new("weighted-xn", &["f", "sigma", "e"], g, &[0, 1, 2])
}

struct T<'a> {
    label: &'a str,
    model: SurfaceModel,
    u: (&'a str, &'a str),
    d: Vec<&'a str>,
    minus: Vec<Rat>,
    pieces: Vec<(&'a str, &'a str, Vec<&'a str>, Vec<&'a str>)>,
}

fn table(t: T<'_>) -> ZariskiTable {
    ZariskiTable {
        paper_label: t.label.into(),
        model: t.model,
        c_window: window(),
        u_lower: p(t.u.0),
        u_upper: p(t.u.1),
        d_of_u: t.d.iter().map(|s| p(s)).collect(),
        minus_curve: t.minus,
        pieces: t
            .pieces
            .into_iter()
            .map(|(lo, hi, pp, nn)| ZTablePiece {
                v_lower: p(lo),
                v_upper: p(hi),
                p: pp.iter().map(|s| p(s)).collect(),
                n: nn.iter().map(|s| p(s)).collect(),
            })
            .collect(),
    }
}

/// All encoded tables, one per u-region.
pub fn zariski_tables() -> Vec<ZariskiTable> {
    let one = |k: usize, pos: usize| -> Vec<Rat> {
        let mut v = vec![rat(0); k];
        v[pos] = rat(1);
        v
    };
    vec![
        // finite-fiber flag on the blown-up plane, C = ruling class
        table(T {
            label: "ztable-a1-finite-line-a",
            model: model_blown_plane(),
            u: ("0", "2 - 2*c"),
            d: vec!["u", "u"],
            minus: one(2, 1),
            pieces: vec![("0", "u", vec!["u - v", "u - v"], vec!["v", "0"])],
        }),
        table(T {
            label: "ztable-a1-finite-line-b",
            model: model_blown_plane(),
            u: ("2 - 2*c", "3 - 2*c"),
            d: vec!["2 - 2*c", "u"],
            minus: one(2, 1),
            pieces: vec![
                (
                    "0",
                    "u - 2 + 2*c",
                    vec!["2 - 2*c", "u - v"],
                    vec!["0", "0"],
                ),
                (
                    "u - 2 + 2*c",
                    "u",
                    vec!["u - v", "u - v"],
                    vec!["v - u + 2 - 2*c", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-a1-finite-line-c",
            model: model_blown_plane(),
            u: ("3 - 2*c", "5 - 4*c"),
            d: vec!["5 - 4*c - u", "3 - 2*c"],
            minus: one(2, 1),
            pieces: vec![
                (
                    "0",
                    "u - 2 + 2*c",
                    vec!["5 - 4*c - u", "3 - 2*c - v"],
                    vec!["0", "0"],
                ),
                (
                    "u - 2 + 2*c",
                    "3 - 2*c",
                    vec!["3 - 2*c - v", "3 - 2*c - v"],
                    vec!["v - u + 2 - 2*c", "0"],
                ),
            ],
        }),
        // wall flag on F1: the negative section
        table(T {
            label: "ztable-wall-sigma-a",
            model: model_f1(),
            u: ("0", "2 - 2*c"),
            d: vec!["u", "5 - 4*c - u"],
            minus: one(2, 0),
            pieces: vec![("0", "u", vec!["u - v", "5 - 4*c - u"], vec!["0", "0"])],
        }),
        table(T {
            label: "ztable-wall-sigma-b",
            model: model_f1(),
            u: ("2 - 2*c", "3 - 2*c"),
            d: vec!["2 - 2*c", "5 - 4*c - u"],
            minus: one(2, 0),
            pieces: vec![(
                "0",
                "2 - 2*c",
                vec!["2 - 2*c - v", "5 - 4*c - u"],
                vec!["0", "0"],
            )],
        }),
        // wall flag: the invariant (1,1)-curves
        table(T {
            label: "ztable-wall-c2-a",
            model: model_f1(),
            u: ("0", "2 - 2*c"),
            d: vec!["u", "5 - 4*c - u"],
            minus: vec![rat(1), rat(1)],
            pieces: vec![(
                "0",
                "u",
                vec!["u - v", "5 - 4*c - u - v"],
                vec!["0", "0"],
            )],
        }),
        table(T {
            label: "ztable-wall-c2-b",
            model: model_f1(),
            u: ("2 - 2*c", "3 - 2*c"),
            d: vec!["2 - 2*c", "5 - 4*c - u"],
            minus: vec![rat(1), rat(1)],
            pieces: vec![(
                "0",
                "2 - 2*c",
                vec!["2 - 2*c - v", "5 - 4*c - u - v"],
                vec!["0", "0"],
            )],
        }),
        table(T {
            label: "ztable-wall-c3-a",
            model: model_f1(),
            u: ("0", "2 - 2*c"),
            d: vec!["u", "5 - 4*c - u"],
            minus: vec![rat(2), rat(2)],
            pieces: vec![(
                "0",
                "1/2*u",
                vec!["u - 2*v", "5 - 4*c - u - 2*v"],
                vec!["0", "0"],
            )],
        }),
        table(T {
            label: "ztable-wall-c3-b",
            model: model_f1(),
            u: ("2 - 2*c", "3 - 2*c"),
            d: vec!["2 - 2*c", "5 - 4*c - u"],
            minus: vec![rat(2), rat(2)],
            pieces: vec![(
                "0",
                "1 - c",
                vec!["2 - 2*c - 2*v", "5 - 4*c - u - 2*v"],
                vec!["0", "0"],
            )],
        }),
        // second point blow-up (e, f, w)
        table(T {
            label: "ztable-a1-finite-blowup-a",
            model: model_two_blowups(),
            u: ("0", "2 - 2*c"),
            d: vec!["u", "u", "u"],
            minus: one(3, 2),
            pieces: vec![(
                "0",
                "u",
                vec!["u", "u", "u - v"],
                vec!["0", "0", "0"],
            )],
        }),
        table(T {
            label: "ztable-a1-finite-blowup-b",
            model: model_two_blowups(),
            u: ("2 - 2*c", "3 - 2*c"),
            d: vec!["2 - 2*c", "u", "u"],
            minus: one(3, 2),
            pieces: vec![
                (
                    "0",
                    "2 - 2*c",
                    vec!["2 - 2*c", "u", "u - v"],
                    vec!["0", "0", "0"],
                ),
                (
                    "2 - 2*c",
                    "u",
                    vec!["2 - 2*c", "2 - 2*c + u - v", "u - v"],
                    vec!["0", "v - 2 + 2*c", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-a1-finite-blowup-c",
            model: model_two_blowups(),
            u: ("3 - 2*c", "5 - 4*c"),
            d: vec!["5 - 4*c - u", "3 - 2*c", "3 - 2*c"],
            minus: one(3, 2),
            pieces: vec![
                (
                    "0",
                    "5 - 4*c - u",
                    vec!["5 - 4*c - u", "3 - 2*c", "3 - 2*c - v"],
                    vec!["0", "0", "0"],
                ),
                (
                    "5 - 4*c - u",
                    "3 - 2*c",
                    vec!["5 - 4*c - u", "8 - 6*c - u - v", "3 - 2*c - v"],
                    vec!["0", "v - 5 + 4*c + u", "0"],
                ),
            ],
        }),
        // weighted (2,1) blow-up (e, f, l, x): half-integer lattice
        table(T {
            label: "ztable-a1-finite-weighted-a",
            model: model_weighted_21(),
            u: ("0", "2 - 2*c"),
            d: vec!["0", "0", "u", "2*u"],
            minus: one(4, 3),
            pieces: vec![
                (
                    "0",
                    "u",
                    vec!["0", "0", "u", "2*u - v"],
                    vec!["0", "0", "0", "0"],
                ),
                (
                    "u",
                    "2*u",
                    vec!["0", "0", "2*u - v", "2*u - v"],
                    vec!["0", "0", "v - u", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-a1-finite-weighted-b",
            model: model_weighted_21(),
            u: ("2 - 2*c", "3 - 2*c"),
            d: vec!["0", "u - 2 + 2*c", "2 - 2*c", "u + 2 - 2*c"],
            minus: one(4, 3),
            pieces: vec![
                (
                    "0",
                    "u",
                    vec!["0", "u - 2 + 2*c", "2 - 2*c", "u + 2 - 2*c - v"],
                    vec!["0", "0", "0", "0"],
                ),
                (
                    "u",
                    "4 - 4*c",
                    vec![
                        "0",
                        "u - 2 + 2*c",
                        "u + 2 - 2*c - v",
                        "u + 2 - 2*c - v",
                    ],
                    vec!["0", "0", "v - u", "0"],
                ),
                (
                    "4 - 4*c",
                    "u + 2 - 2*c",
                    vec![
                        "0",
                        "u + 2 - 2*c - v",
                        "u + 2 - 2*c - v",
                        "u + 2 - 2*c - v",
                    ],
                    vec!["0", "v - 4 + 4*c", "v - u", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-a1-finite-weighted-c1",
            model: model_weighted_21(),
            u: ("3 - 2*c", "7/2 - 3*c"),
            d: vec!["0", "2*c - 2 + u", "5 - 4*c - u", "8 - 6*c - u"],
            minus: one(4, 3),
            pieces: vec![
                (
                    "0",
                    "3 - 2*c",
                    vec!["0", "2*c - 2 + u", "5 - 4*c - u", "8 - 6*c - u - v"],
                    vec!["0", "0", "0", "0"],
                ),
                (
                    "3 - 2*c",
                    "10 - 8*c - 2*u",
                    vec![
                        "0",
                        "2*c - 2 + u",
                        "8 - 6*c - u - v",
                        "8 - 6*c - u - v",
                    ],
                    vec!["0", "0", "v - 3 + 2*c", "0"],
                ),
                (
                    "10 - 8*c - 2*u",
                    "8 - 6*c - u",
                    vec![
                        "0",
                        "8 - 6*c - u - v",
                        "8 - 6*c - u - v",
                        "8 - 6*c - u - v",
                    ],
                    vec!["0", "v - 10 + 8*c + 2*u", "v - 3 + 2*c", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-a1-finite-weighted-c2",
            model: model_weighted_21(),
            u: ("7/2 - 3*c", "5 - 4*c"),
            d: vec!["0", "2*c - 2 + u", "5 - 4*c - u", "8 - 6*c - u"],
            minus: one(4, 3),
            pieces: vec![
                (
                    "0",
                    "10 - 8*c - 2*u",
                    vec!["0", "2*c - 2 + u", "5 - 4*c - u", "8 - 6*c - u - v"],
                    vec!["0", "0", "0", "0"],
                ),
                (
                    "10 - 8*c - 2*u",
                    "3 - 2*c",
                    vec![
                        "0",
                        "8 - 6*c - u - v",
                        "5 - 4*c - u",
                        "8 - 6*c - u - v",
                    ],
                    vec!["0", "v - 10 + 8*c + 2*u", "0", "0"],
                ),
                (
                    "3 - 2*c",
                    "8 - 6*c - u",
                    vec![
                        "0",
                        "8 - 6*c - u - v",
                        "8 - 6*c - u - v",
                        "8 - 6*c - u - v",
                    ],
                    vec!["0", "v - 10 + 8*c + 2*u", "v - 3 + 2*c", "0"],
                ),
            ],
        }),
        // weighted tangent-separating blow-up (e, f, z)
        table(T {
            label: "ztable-a1-finite-tangent-a",
            model: model_weighted_tangent(),
            u: ("0", "2 - 2*c"),
            d: vec!["u", "u", "2*u"],
            minus: one(3, 2),
            pieces: vec![
                (
                    "0",
                    "u",
                    vec!["u", "u", "2*u - v"],
                    vec!["0", "0", "0"],
                ),
                (
                    "u",
                    "2*u",
                    vec!["2*u - v", "2*u - v", "2*u - v"],
                    vec!["v - u", "v - u", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-a1-finite-tangent-b",
            model: model_weighted_tangent(),
            u: ("2 - 2*c", "3 - 2*c"),
            d: vec!["2 - 2*c", "u", "2*u"],
            minus: one(3, 2),
            pieces: vec![
                (
                    "0",
                    "2 - 2*c",
                    vec!["2 - 2*c", "u", "2*u - v"],
                    vec!["0", "0", "0"],
                ),
                (
                    "2 - 2*c",
                    "2*u - 2 + 2*c",
                    vec!["2 - 2*c", "1/2*(2*u - v + 2 - 2*c)", "2*u - v"],
                    vec!["0", "1/2*(v - 2 + 2*c)", "0"],
                ),
                (
                    "2*u - 2 + 2*c",
                    "2*u",
                    vec!["2*u - v", "2*u - v", "2*u - v"],
                    vec!["v - 2*u + 2 - 2*c", "v - u", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-a1-finite-tangent-c",
            model: model_weighted_tangent(),
            u: ("3 - 2*c", "5 - 4*c"),
            d: vec!["5 - 4*c - u", "3 - 2*c", "6 - 4*c"],
            minus: one(3, 2),
            pieces: vec![
                (
                    "0",
                    "5 - 4*c - u",
                    vec!["5 - 4*c - u", "3 - 2*c", "6 - 4*c - v"],
                    vec!["0", "0", "0"],
                ),
                (
                    "5 - 4*c - u",
                    "u + 1",
                    vec!["5 - 4*c - u", "1/2*(11 - 8*c - u - v)", "6 - 4*c - v"],
                    vec!["0", "1/2*(v - 5 + 4*c + u)", "0"],
                ),
                (
                    "u + 1",
                    "6 - 4*c",
                    vec!["6 - 4*c - v", "6 - 4*c - v", "6 - 4*c - v"],
                    vec!["v - u - 1", "v - 3 + 2*c", "0"],
                ),
            ],
        }),
        // node blow-up (e, f, cb) for the higher singularities
        table(T {
            label: "ztable-higher-an-node-a",
            model: model_node_blowup(),
            u: ("0", "2 - 2*c"),
            d: vec!["u", "u", "u"],
            minus: one(3, 2),
            pieces: vec![(
                "0",
                "u",
                vec!["u", "u", "u - v"],
                vec!["0", "0", "0"],
            )],
        }),
        table(T {
            label: "ztable-higher-an-node-b",
            model: model_node_blowup(),
            u: ("2 - 2*c", "3 - 2*c"),
            d: vec!["2 - 2*c", "u", "u"],
            minus: one(3, 2),
            pieces: vec![
                (
                    "0",
                    "2 - 2*c",
                    vec!["2 - 2*c", "u", "u - v"],
                    vec!["0", "0", "0"],
                ),
                (
                    "2 - 2*c",
                    "u",
                    vec!["2 - 2*c", "2 - 2*c + u - v", "u - v"],
                    vec!["0", "v - 2 + 2*c", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-higher-an-node-c",
            model: model_node_blowup(),
            u: ("3 - 2*c", "5 - 4*c"),
            d: vec!["5 - 4*c - u", "3 - 2*c", "3 - 2*c"],
            minus: one(3, 2),
            pieces: vec![
                (
                    "0",
                    "5 - 4*c - u",
                    vec!["5 - 4*c - u", "3 - 2*c", "3 - 2*c - v"],
                    vec!["0", "0", "0"],
                ),
                (
                    "5 - 4*c - u",
                    "3 - 2*c",
                    vec!["5 - 4*c - u", "8 - 6*c - u - v", "3 - 2*c - v"],
                    vec!["0", "v - 5 + 4*c + u", "0"],
                ),
            ],
        }),
        // F3 fibration flag
        table(T {
            label: "ztable-a1-nonfin-fiber-a",
            model: model_f3(),
            u: ("0", "3 - 2*c"),
            d: vec!["1/2*u", "2 - 2*c + u"],
            minus: one(2, 1),
            pieces: vec![
                (
                    "0",
                    "2 - 2*c - 1/2*u",
                    vec!["1/2*u", "2 - 2*c + u - v"],
                    vec!["0", "0"],
                ),
                (
                    "2 - 2*c - 1/2*u",
                    "2 - 2*c + u",
                    vec!["1/3*(2 - 2*c + u - v)", "2 - 2*c + u - v"],
                    vec!["1/3*(1/2*u + v - 2 + 2*c)", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-a1-nonfin-fiber-b",
            model: model_f3(),
            u: ("3 - 2*c", "4 - 4*c"),
            d: vec!["3 - 2*c - 1/2*u", "11 - 8*c - 2*u"],
            minus: one(2, 1),
            pieces: vec![
                (
                    "0",
                    "2 - 2*c - 1/2*u",
                    vec!["3 - 2*c - 1/2*u", "11 - 8*c - 2*u - v"],
                    vec!["0", "0"],
                ),
                (
                    "2 - 2*c - 1/2*u",
                    "11 - 8*c - 2*u",
                    vec!["1/3*(11 - 8*c - 2*u - v)", "11 - 8*c - 2*u - v"],
                    vec!["1/3*(1/2*u + v - 2 + 2*c)", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-a1-nonfin-fiber-c",
            model: model_f3(),
            u: ("4 - 4*c", "5 - 4*c"),
            d: vec!["5 - 4*c - u", "11 - 8*c - 2*u"],
            minus: one(2, 1),
            pieces: vec![
                (
                    "0",
                    "u - 4 + 4*c",
                    vec!["5 - 4*c - u", "11 - 8*c - 2*u - v"],
                    vec!["0", "0"],
                ),
                (
                    "u - 4 + 4*c",
                    "11 - 8*c - 2*u",
                    vec!["1/3*(11 - 8*c - 2*u - v)", "11 - 8*c - 2*u - v"],
                    vec!["1/3*(v + 4 - 4*c - u)", "0"],
                ),
            ],
        }),
        // quadric flag with identically vanishing negative part
        table(T {
            label: "ztable-two-a1-fiber-a",
            model: model_quadric(),
            u: ("0", "3 - 2*c"),
            d: vec!["2 - 2*c", "1/2*u"],
            minus: one(2, 0),
            pieces: vec![(
                "0",
                "2 - 2*c",
                vec!["2 - 2*c - v", "1/2*u"],
                vec!["0", "0"],
            )],
        }),
        table(T {
            label: "ztable-two-a1-fiber-b",
            model: model_quadric(),
            u: ("3 - 2*c", "6 - 4*c"),
            d: vec!["2 - 2*c", "3 - 2*c - 1/2*u"],
            minus: one(2, 0),
            pieces: vec![(
                "0",
                "2 - 2*c",
                vec!["2 - 2*c - v", "3 - 2*c - 1/2*u"],
                vec!["0", "0"],
            )],
        }),
        table(T {
            label: "ztable-two-a1-section-a",
            model: model_quadric(),
            u: ("0", "3 - 2*c"),
            d: vec!["2 - 2*c", "1/2*u"],
            minus: one(2, 1),
            pieces: vec![(
                "0",
                "1/2*u",
                vec!["2 - 2*c", "1/2*u - v"],
                vec!["0", "0"],
            )],
        }),
        table(T {
            label: "ztable-two-a1-section-b",
            model: model_quadric(),
            u: ("3 - 2*c", "6 - 4*c"),
            d: vec!["2 - 2*c", "3 - 2*c - 1/2*u"],
            minus: one(2, 1),
            pieces: vec![(
                "0",
                "3 - 2*c - 1/2*u",
                vec!["2 - 2*c", "3 - 2*c - 1/2*u - v"],
                vec!["0", "0"],
            )],
        }),
        // node flag on the threefold: the exceptional quadric of the vertex
        table(T {
            label: "ztable-xn-node-a",
            model: model_quadric(),
            u: ("0", "1"),
            d: vec!["u", "u"],
            minus: one(2, 0),
            pieces: vec![("0", "u", vec!["u - v", "u"], vec!["0", "0"])],
        }),
        table(T {
            label: "ztable-xn-node-b",
            model: model_quadric(),
            u: ("1", "2 - 2*c"),
            d: vec!["u", "1/2*(u + 1)"],
            minus: one(2, 0),
            pieces: vec![(
                "0",
                "u",
                vec!["u - v", "1/2*(u + 1)"],
                vec!["0", "0"],
            )],
        }),
        table(T {
            label: "ztable-xn-node-c",
            model: model_quadric(),
            u: ("2 - 2*c", "5 - 4*c"),
            d: vec!["u", "1/2*(5 - 4*c - u)"],
            minus: one(2, 0),
            pieces: vec![(
                "0",
                "u",
                vec!["u - v", "1/2*(5 - 4*c - u)"],
                vec!["0", "0"],
            )],
        }),
        // F2 flag on the nodal threefold
        table(T {
            label: "ztable-xn-smooth-fiber-a",
            model: model_f2(),
            u: ("0", "1"),
            d: vec!["2 - 2*c", "5 - 4*c - u"],
            minus: one(2, 1),
            pieces: vec![
                (
                    "0",
                    "1 - u",
                    vec!["2 - 2*c", "5 - 4*c - u - v"],
                    vec!["0", "0"],
                ),
                (
                    "1 - u",
                    "5 - 4*c - u",
                    vec!["1/2*(5 - 4*c - u - v)", "5 - 4*c - u - v"],
                    vec!["1/2*(u + v - 1)", "0"],
                ),
            ],
        }),
        table(T {
            label: "ztable-xn-smooth-fiber-b",
            model: model_f2(),
            u: ("1", "3 - 2*c"),
            d: vec!["3 - 2*c - u", "5 - 4*c - u"],
            minus: one(2, 1),
            pieces: vec![
                (
                    "0",
                    "u - 1",
                    vec!["3 - 2*c - u", "5 - 4*c - u - v"],
                    vec!["0", "0"],
                ),
                (
                    "u - 1",
                    "5 - 4*c - u",
                    vec!["1/2*(5 - 4*c - u - v)", "5 - 4*c - u - v"],
                    vec!["1/2*(v - u + 1)", "0"],
                ),
            ],
        }),
        // weighted flag on the nodal threefold (f, sigma, e)
        table(T {
            label: "ztable-xn-smooth-weighted-a",
            model: model_weighted_xn(),
            u: ("0", "1"),
            d: vec!["5 - 4*c - u", "2 - 2*c", "10 - 8*c - 2*u"],
            minus: one(3, 2),
            pieces: vec![
                (
                    "0",
                    "2 - 2*c",
                    vec!["5 - 4*c - u", "2 - 2*c", "10 - 8*c - 2*u - v"],
                    vec!["0", "0", "0"],
                ),
                (
                    "2 - 2*c",
                    "4 - 2*c - 2*u",
                    vec![
                        "1/2*(12 - 10*c - 2*u - v)",
                        "2 - 2*c",
                        "10 - 8*c - 2*u - v",
                    ],
                    vec!["1/2*(v - 2 + 2*c)", "0", "0"],
                ),
                (
                    "4 - 2*c - 2*u",
                    "10 - 8*c - 2*u",
                    vec![
                        "2/3*(10 - 8*c - 2*u - v)",
                        "1/3*(10 - 8*c - 2*u - v)",
                        "10 - 8*c - 2*u - v",
                    ],
                    vec![
                        "1/3*(4*c + u + 2*v - 5)",
                        "1/3*(2*c + 2*u + v - 4)",
                        "0",
                    ],
                ),
            ],
        }),
        table(T {
            label: "ztable-xn-smooth-weighted-b",
            model: model_weighted_xn(),
            u: ("1", "3 - 2*c"),
            d: vec!["5 - 4*c - u", "3 - 2*c - u", "10 - 8*c - 2*u"],
            minus: one(3, 2),
            pieces: vec![
                (
                    "0",
                    "3 - 2*c - u",
                    vec!["5 - 4*c - u", "3 - 2*c - u", "10 - 8*c - 2*u - v"],
                    vec!["0", "0", "0"],
                ),
                (
                    "3 - 2*c - u",
                    "1 - 2*c + u",
                    vec![
                        "1/2*(13 - 10*c - 3*u - v)",
                        "3 - 2*c - u",
                        "10 - 8*c - 2*u - v",
                    ],
                    vec!["1/2*(u + v - 3 + 2*c)", "0", "0"],
                ),
                (
                    "1 - 2*c + u",
                    "10 - 8*c - 2*u",
                    vec![
                        "2/3*(10 - 8*c - 2*u - v)",
                        "1/3*(10 - 8*c - 2*u - v)",
                        "10 - 8*c - 2*u - v",
                    ],
                    vec![
                        "1/3*(4*c + u + 2*v - 5)",
                        "1/3*(2*c - u + v - 1)",
                        "0",
                    ],
                ),
            ],
        }),
    ]
}

/// A deliberately corrupted copy of the first table: one sign flip in the
/// negative part. Validation must fail with a witness sample.
pub fn corrupted_table() -> ZariskiTable {
    let mut t = zariski_tables().remove(0);
    t.paper_label = "ztable-negative-control".into();
    t.pieces[0].n[0] = p("-v");
    t
}
