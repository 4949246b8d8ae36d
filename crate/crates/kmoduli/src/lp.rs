//! Exact rational linear programming (dense two-phase simplex, Bland's rule).
//!
//! Small and exact: every pivot is carried out over Q, so optimal solutions
//! and certificates are rational numbers suitable for primitive-integer
//! witness extraction. Bland's rule guarantees termination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{rat, Rat};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, x: Vec<Rat> },
    Unbounded,
    Infeasible,
}

/// Maximize `c . x` subject to `a x <= b`, `x >= 0`.
pub fn simplex_max(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // columns: n original, m slack, up to m artificial, then rhs
    let mut art_cols: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let total_guess = n + m + m + 1;
    for i in 0..m {
        let mut row = vec![rat(0); total_guess];
        let flip = b[i].is_negative();
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = if flip { rat(-1) } else { rat(1) };
        *row.last_mut().unwrap() = if flip { -b[i].clone() } else { b[i].clone() };
        if flip {
            let art = n + m + art_cols.len();
            row[art] = rat(1);
            art_cols.push(art);
            basis.push(art);
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }
    let ncols = n + m + art_cols.len() + 1;
    for row in rows.iter_mut() {
        row.truncate(n + m + m + 1);
        let rhs = row.pop().unwrap();
        row.truncate(ncols - 1);
        row.push(rhs);
    }

    // phase 1: maximize -(sum of artificials)
    if !art_cols.is_empty() {
        let mut obj = vec![rat(0); ncols];
        for (i, &bv) in basis.iter().enumerate() {
            if bv >= n + m {
                for j in 0..ncols {
                    obj[j] += rows[i][j].clone();
                }
            }
        }
        for &ac in &art_cols {
            obj[ac] = rat(0);
        }
        // maximize -(sum art) == drive obj (cost of artificial basis) to zero
        if !pivot_loop(&mut rows, &mut basis, &mut obj, ncols) {
            return LpOutcome::Unbounded; // cannot happen: phase 1 is bounded
        }
        if !obj[ncols - 1].is_zero() {
            return LpOutcome::Infeasible;
        }
        // pivot remaining artificials out of the basis
        for i in 0..m {
            if basis[i] >= n + m {
                let piv = (0..n + m).find(|&j| !rows[i][j].is_zero());
                if let Some(j) = piv {
                    do_pivot(&mut rows, &mut basis, i, j, ncols, &mut obj);
                }
            }
        }
        // wipe artificial columns so phase 2 never re-enters them
        for row in rows.iter_mut() {
            for &ac in &art_cols {
                row[ac] = rat(0);
            }
        }
    }

    // phase 2
    let mut obj = vec![rat(0); ncols];
    for (j, cj) in c.iter().enumerate() {
        obj[j] = cj.clone();
    }
    // price out basic variables
    for i in 0..m {
        if basis[i] < n && !obj[basis[i]].is_zero() {
            let k = obj[basis[i]].clone();
            for j in 0..ncols {
                let delta = k.clone() * rows[i][j].clone();
                obj[j] -= delta;
            }
        }
    }
    if !pivot_loop(&mut rows, &mut basis, &mut obj, ncols) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![rat(0); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = rows[i][ncols - 1].clone();
        }
    }
    LpOutcome::Optimal {
        value: -obj[ncols - 1].clone(),
        x,
    }
}

/// Bland pivoting until no positive reduced cost remains.
/// Returns false when the entering column has no positive pivot (unbounded).
fn pivot_loop(
    rows: &mut [Vec<Rat>],
    basis: &mut [usize],
    obj: &mut Vec<Rat>,
    ncols: usize,
) -> bool {
    loop {
        let enter = (0..ncols - 1).find(|&j| obj[j].is_positive());
        let Some(col) = enter else { return true };
        let mut best: Option<(usize, Rat)> = None;
        for i in 0..rows.len() {
            if rows[i][col].is_positive() {
                let ratio = rows[i][ncols - 1].clone() / rows[i][col].clone();
                match &best {
                    None => best = Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < *br || (ratio == *br && basis[i] < basis[*bi]) {
                            best = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((row, _)) = best else { return false };
        do_pivot_raw(rows, basis, row, col, ncols, obj);
    }
}

fn do_pivot(
    rows: &mut [Vec<Rat>],
    basis: &mut [usize],
    row: usize,
    col: usize,
    ncols: usize,
    obj: &mut Vec<Rat>,
) {
    do_pivot_raw(rows, basis, row, col, ncols, obj);
}

fn do_pivot_raw(
    rows: &mut [Vec<Rat>],
    basis: &mut [usize],
    row: usize,
    col: usize,
    ncols: usize,
    obj: &mut Vec<Rat>,
) {
    let piv = rows[row][col].clone();
    for j in 0..ncols {
        rows[row][j] /= piv.clone();
    }
    for i in 0..rows.len() {
        if i != row && !rows[i][col].is_zero() {
            let k = rows[i][col].clone();
            for j in 0..ncols {
                let delta = k.clone() * rows[row][j].clone();
                rows[i][j] -= delta;
            }
        }
    }
    if !obj[col].is_zero() {
        let k = obj[col].clone();
        for j in 0..ncols {
            let delta = k.clone() * rows[row][j].clone();
            obj[j] -= delta;
        }
    }
    basis[row] = col;
}

/// Where the origin sits relative to the convex hull of `points`.
#[derive(Debug, Clone, PartialEq)]
pub enum OriginPosition {
    /// Strictly separated: `sep . p > 0` for every point.
    Outside { sep: Vec<Rat> },
    /// On the boundary: `sep . p >= 0` for every point, not all products zero,
    /// or the points span a proper subspace (sep orthogonal to all of them).
    Boundary { sep: Vec<Rat> },
    Interior,
}

/// Exact position of the origin relative to conv(points) in R^k.
pub fn origin_position(points: &[Vec<Rat>]) -> OriginPosition {
    assert!(!points.is_empty());
    let k = points[0].len();
    // LP1: maximize t st <p,a> - t >= 0 for all p, -1 <= a_i <= 1.
    // free vars a -> a+ - a-, t -> t+ - t-.
    let nv = 2 * k + 2;
    let mut a_rows: Vec<Vec<Rat>> = Vec::new();
    let mut b = Vec::new();
    for p in points {
        // -<p,a> + t <= 0
        let mut row = vec![rat(0); nv];
        for (i, pi) in p.iter().enumerate() {
            row[2 * i] = -pi.clone();
            row[2 * i + 1] = pi.clone();
        }
        row[2 * k] = rat(1);
        row[2 * k + 1] = rat(-1);
        a_rows.push(row);
        b.push(rat(0));
    }
    for i in 0..k {
        let mut row = vec![rat(0); nv];
        row[2 * i] = rat(1);
        row[2 * i + 1] = rat(-1);
        a_rows.push(row.clone());
        b.push(rat(1));
        let mut row2 = vec![rat(0); nv];
        row2[2 * i] = rat(-1);
        row2[2 * i + 1] = rat(1);
        a_rows.push(row2);
        b.push(rat(1));
    }
    let mut c = vec![rat(0); nv];
    c[2 * k] = rat(1);
    c[2 * k + 1] = rat(-1);
    let out = simplex_max(&c, &a_rows, &b);
    let LpOutcome::Optimal { value, x } = out else {
        unreachable!("LP1 is feasible (a=0) and bounded by the box");
    };
    if value.is_positive() {
        let sep: Vec<Rat> = (0..k).map(|i| x[2 * i].clone() - x[2 * i + 1].clone()).collect();
        return OriginPosition::Outside { sep };
    }

    // LP2: maximize sum_p <p,a> st <p,a> >= 0, box
    let mut a2: Vec<Vec<Rat>> = Vec::new();
    let mut b2 = Vec::new();
    for p in points {
        let mut row = vec![rat(0); 2 * k];
        for (i, pi) in p.iter().enumerate() {
            row[2 * i] = -pi.clone();
            row[2 * i + 1] = pi.clone();
        }
        a2.push(row);
        b2.push(rat(0));
    }
    for i in 0..k {
        let mut row = vec![rat(0); 2 * k];
        row[2 * i] = rat(1);
        row[2 * i + 1] = rat(-1);
        a2.push(row.clone());
        b2.push(rat(1));
        let mut row2 = vec![rat(0); 2 * k];
        row2[2 * i] = rat(-1);
        row2[2 * i + 1] = rat(1);
        a2.push(row2);
        b2.push(rat(1));
    }
    let mut c2 = vec![rat(0); 2 * k];
    for p in points {
        for (i, pi) in p.iter().enumerate() {
            c2[2 * i] += pi.clone();
            c2[2 * i + 1] -= pi.clone();
        }
    }
    let out2 = simplex_max(&c2, &a2, &b2);
    let LpOutcome::Optimal { value: v2, x: x2 } = out2 else {
        unreachable!("LP2 is feasible and bounded");
    };
    if v2.is_positive() {
        let sep: Vec<Rat> = (0..k).map(|i| x2[2 * i].clone() - x2[2 * i + 1].clone()).collect();
        return OriginPosition::Boundary { sep };
    }
    // all feasible a have <p,a> = 0 for every p; nontrivial a exists iff the
    // points do not span R^k
    if let Some(kernel) = kernel_vector(points, k) {
        return OriginPosition::Boundary { sep: kernel };
    }
    OriginPosition::Interior
}

/// A nonzero rational vector orthogonal to all rows, if one exists.
pub fn kernel_vector(rows: &[Vec<Rat>], k: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let hit = (r..m.len()).find(|&i| !m[i][col].is_zero());
        let Some(i) = hit else { continue };
        m.swap(r, i);
        let inv = Rat::one() / m[r][col].clone();
        for x in m[r].iter_mut() {
            *x *= inv.clone();
        }
        for i2 in 0..m.len() {
            if i2 != r && !m[i2][col].is_zero() {
                let f = m[i2][col].clone();
                for j in 0..k {
                    let delta = f.clone() * m[r][j].clone();
                    m[i2][j] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    if pivots.len() == k {
        return None;
    }
    let free = (0..k).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![rat(0); k];
    v[free] = rat(1);
    for (row_idx, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row_idx][free].clone();
    }
    Some(v)
}

/// Clear denominators and divide by the content: a primitive integer vector
/// in the same direction.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        let g = lcm.gcd(x.denom());
        lcm = &lcm / g * x.denom();
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratq;

    #[test]
    fn tiny_lp() {
        // max x + y st x + 2y <= 4, 3x + y <= 6 => (8/5, 6/5), value 14/5
        let c = vec![rat(1), rat(1)];
        let a = vec![vec![rat(1), rat(2)], vec![rat(3), rat(1)]];
        let b = vec![rat(4), rat(6)];
        match simplex_max(&c, &a, &b) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, ratq(14, 5));
                assert_eq!(x, vec![ratq(8, 5), ratq(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_feasible() {
        // max x st -x <= -2, x <= 5 => 5
        let c = vec![rat(1)];
        let a = vec![vec![rat(-1)], vec![rat(1)]];
        let b = vec![rat(-2), rat(5)];
        match simplex_max(&c, &a, &b) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        // x <= 1, -x <= -3
        let c = vec![rat(1)];
        let a = vec![vec![rat(1)], vec![rat(-1)]];
        let b = vec![rat(1), rat(-3)];
        assert_eq!(simplex_max(&c, &a, &b), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let c = vec![rat(1)];
        let a = vec![vec![rat(-1)]];
        let b = vec![rat(0)];
        assert_eq!(simplex_max(&c, &a, &b), LpOutcome::Unbounded);
    }

    #[test]
    fn origin_positions() {
        // outside: all points have positive first coordinate
        let pts = vec![vec![rat(1), rat(0)], vec![rat(2), rat(1)], vec![rat(1), rat(-1)]];
        match origin_position(&pts) {
            OriginPosition::Outside { sep } => {
                for p in &pts {
                    let dot: Rat = sep.iter().zip(p).map(|(a, b)| a * b).sum();
                    assert!(dot.is_positive());
                }
            }
            other => panic!("{other:?}"),
        }
        // interior: +-e1, +-e2
        let pts = vec![
            vec![rat(1), rat(0)],
            vec![rat(-1), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(0), rat(-1)],
        ];
        assert_eq!(origin_position(&pts), OriginPosition::Interior);
        // boundary: 0 in hull but not interior
        let pts = vec![vec![rat(1), rat(0)], vec![rat(-1), rat(0)], vec![rat(0), rat(1)]];
        match origin_position(&pts) {
            OriginPosition::Boundary { sep } => {
                for p in &pts {
                    let dot: Rat = sep.iter().zip(p).map(|(a, b)| a * b).sum();
                    assert!(!dot.is_negative());
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn primitive_vector() {
        let v = vec![ratq(2, 3), ratq(-4, 3), rat(2)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(3)]);
    }
}
