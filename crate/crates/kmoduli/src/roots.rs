//! Exact real-root isolation for univariate rational polynomials.
//!
//! Sturm sequences drive both isolation and the count certificates; intervals
//! refine by bisection to any requested width. Rational roots are recovered
//! without integer factorization: a rational root of the primitive integer
//! polynomial has denominator dividing the leading coefficient, so once an
//! isolating interval is narrower than 1/(2L^2) it contains at most one
//! rational of denominator <= L, and that candidate is found by the
//! Stern-Brocot walk and verified exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::MPoly;
use crate::rat::{rat, sign, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("not univariate: {0}")]
    NotUnivariate(String),
}

/// Dense univariate polynomial over Q, constant coefficient first.
pub type UniPoly = Vec<Rat>;

pub fn uni_trim(p: &mut UniPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

pub fn uni_is_zero(p: &UniPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn uni_degree(p: &UniPoly) -> usize {
    let mut d = 0;
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() {
            d = i;
        }
    }
    d
}

pub fn uni_eval(p: &UniPoly, x: &Rat) -> Rat {
    let mut acc = rat(0);
    for c in p.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

pub fn uni_derivative(p: &UniPoly) -> UniPoly {
    if p.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::with_capacity(p.len() - 1);
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c.clone() * rat(i as i64));
    }
    uni_trim(&mut out);
    out
}

pub fn uni_neg(p: &UniPoly) -> UniPoly {
    p.iter().map(|c| -c.clone()).collect()
}

pub fn uni_mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if uni_is_zero(a) || uni_is_zero(b) {
        return vec![];
    }
    let mut out = vec![rat(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    uni_trim(&mut out);
    out
}

pub fn uni_sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut out = vec![rat(0); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y.clone();
    }
    uni_trim(&mut out);
    out
}

/// Euclidean remainder.
pub fn uni_rem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    assert!(!uni_is_zero(b), "remainder by zero");
    let mut r = a.clone();
    uni_trim(&mut r);
    let db = uni_degree(b);
    let lb = b[db].clone();
    while !uni_is_zero(&r) && uni_degree(&r) >= db {
        let dr = uni_degree(&r);
        let q = r[dr].clone() / lb.clone();
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            if !c.is_zero() {
                r[i + shift] -= q.clone() * c;
            }
        }
        uni_trim(&mut r);
    }
    r
}

/// Monic gcd.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    uni_trim(&mut a);
    uni_trim(&mut b);
    while !uni_is_zero(&b) {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    if uni_is_zero(&a) {
        return a;
    }
    let lead = a[uni_degree(&a)].clone();
    a.iter().map(|c| c / lead.clone()).collect()
}

/// Exact quotient; panics on nonzero remainder.
pub fn uni_div_exact(a: &UniPoly, b: &UniPoly) -> UniPoly {
    assert!(!uni_is_zero(b));
    let mut r = a.clone();
    uni_trim(&mut r);
    let db = uni_degree(b);
    let lb = b[db].clone();
    let mut q = vec![rat(0); if r.len() > db { r.len() - db } else { 1 }];
    while !uni_is_zero(&r) && uni_degree(&r) >= db {
        let dr = uni_degree(&r);
        let c = r[dr].clone() / lb.clone();
        let shift = dr - db;
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                r[i + shift] -= c.clone() * bc;
            }
        }
        uni_trim(&mut r);
    }
    assert!(uni_is_zero(&r), "inexact division");
    uni_trim(&mut q);
    q
}

/// Squarefree part p / gcd(p, p').
pub fn uni_squarefree(p: &UniPoly) -> UniPoly {
    let g = uni_gcd(p, &uni_derivative(p));
    if uni_degree(&g) == 0 {
        let mut out = p.clone();
        uni_trim(&mut out);
        return out;
    }
    uni_div_exact(p, &g)
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), uni_derivative(p)];
    loop {
        let n = chain.len();
        if uni_is_zero(&chain[n - 1]) {
            chain.pop();
            break;
        }
        let r = uni_neg(&uni_rem(&chain[n - 2], &chain[n - 1]));
        if uni_is_zero(&r) {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_variations(chain: &[UniPoly], x: &Rat) -> usize {
    let mut signs: Vec<i32> = chain
        .iter()
        .map(|p| sign(&uni_eval(p, x)))
        .filter(|&s| s != 0)
        .collect();
    signs.dedup();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a squarefree `p` in the half-open interval (lo, hi].
pub fn sturm_count(p: &UniPoly, lo: &Rat, hi: &Rat) -> usize {
    let chain = sturm_chain(p);
    sign_variations(&chain, lo) - sign_variations(&chain, hi)
}

/// An interval (lo, hi] isolating exactly one real root of `polynomial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
    /// Squarefree defining polynomial, as a univariate `MPoly`.
    pub polynomial: MPoly,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rat {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> Rat {
        (self.lo.clone() + self.hi.clone()) / rat(2)
    }

    /// Bisect until the width is at most `width`.
    pub fn refine(&mut self, width: &Rat) {
        let var = self.polynomial.vars()[0].clone();
        let coeffs = self
            .polynomial
            .univariate_coeffs(&var)
            .expect("isolating polynomial is univariate");
        while self.width() > *width {
            let mid = self.midpoint();
            if uni_eval(&coeffs, &mid).is_zero() {
                // nudged endpoints keep the root strictly inside (lo, hi]
                self.hi = mid.clone();
                let quarter = self.width() / rat(4);
                self.lo = mid - quarter;
                if self.width() <= *width {
                    break;
                }
                continue;
            }
            if sturm_count(&coeffs, &self.lo, &mid) == 1 {
                self.hi = mid;
            } else {
                self.lo = mid;
            }
        }
    }
}

/// Isolate the distinct real roots of `p` in the window `(lo, hi]`.
///
/// `p` is reduced to its squarefree part first, so multiple roots are counted
/// once. One interval per root, each refinable to any width.
pub fn isolate_real_roots(
    p: &MPoly,
    window: (&Rat, &Rat),
) -> Result<Vec<IsolatingInterval>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let var = p.vars()[0].clone();
    let coeffs = p
        .univariate_coeffs(&var)
        .map_err(|_| RootError::NotUnivariate(var.clone()))?;
    let sf = uni_squarefree(&coeffs);
    // primitive integer representative for stable display and comparison
    let sf = {
        let mut lcm = BigInt::one();
        for c in &sf {
            let g = num_integer::Integer::gcd(&lcm, c.denom());
            lcm = &lcm / g * c.denom();
        }
        let mut content = BigInt::zero();
        for c in &sf {
            let int = c.numer() * &lcm / c.denom();
            content = num_integer::Integer::gcd(&content, &int);
        }
        let mut scale = Rat::new(lcm, content);
        if sf.last().map(|c| c.is_negative()).unwrap_or(false) {
            scale = -scale;
        }
        sf.iter().map(|c| c * &scale).collect::<Vec<_>>()
    };
    let sf_poly = MPoly::from_terms(
        &[var.as_str()],
        sf.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())),
    );
    let (lo, hi) = window;
    if lo >= hi {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = sturm_count(&sf, &a, &b);
        match n {
            0 => {}
            1 => out.push(IsolatingInterval {
                lo: a,
                hi: b,
                polynomial: sf_poly.clone(),
            }),
            _ => {
                let mid = (a.clone() + b.clone()) / rat(2);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// All rational roots of `p` (with the window of search unrestricted), exact.
pub fn rational_roots(coeffs: &UniPoly) -> Vec<Rat> {
    let mut p = coeffs.clone();
    uni_trim(&mut p);
    if uni_is_zero(&p) {
        panic!("rational_roots of zero polynomial");
    }
    let mut out = Vec::new();
    // strip roots at zero
    let mut shift = 0;
    while p[shift].is_zero() {
        shift += 1;
    }
    if shift > 0 {
        out.push(rat(0));
        p = p[shift..].to_vec();
    }
    if uni_degree(&p) == 0 {
        return out;
    }
    let sf = uni_squarefree(&p);
    // clear denominators to a primitive integer polynomial
    let mut denom_lcm = BigInt::one();
    for c in &sf {
        let d = c.denom();
        let g = num_integer::Integer::gcd(&denom_lcm, d);
        denom_lcm = &denom_lcm / g * d;
    }
    let ints: Vec<BigInt> = sf.iter().map(|c| c.numer() * &denom_lcm / c.denom()).collect();
    let lead = ints.last().unwrap().abs();
    // Cauchy bound on |root|
    let mut bound = rat(1);
    for c in &ints[..ints.len() - 1] {
        let q = Rat::new(c.abs(), lead.clone()) + rat(1);
        if q > bound {
            bound = q;
        }
    }
    let intervals =
        isolate_real_roots_coeffs(&sf, &(-bound.clone() - rat(1)), &(bound + rat(1)));
    // a rational with denominator <= L is unique in an interval of width < 1/(2 L^2)
    let gran = Rat::new(BigInt::one(), rat(2).numer() * &lead * &lead + BigInt::one());
    for (mut lo, mut hi) in intervals {
        loop {
            let width = hi.clone() - lo.clone();
            if width < gran {
                break;
            }
            let mid = (lo.clone() + hi.clone()) / rat(2);
            let v = uni_eval(&sf, &mid);
            if v.is_zero() {
                out.push(mid);
                lo = rat(1);
                hi = rat(0);
                break;
            }
            if sturm_count(&sf, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if lo > hi {
            continue;
        }
        if let Some(cand) = best_rational_in(&lo, &hi, &lead) {
            if uni_eval(&sf, &cand).is_zero() {
                out.push(cand);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn isolate_real_roots_coeffs(sf: &UniPoly, lo: &Rat, hi: &Rat) -> Vec<(Rat, Rat)> {
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match sturm_count(sf, &a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = (a.clone() + b.clone()) / rat(2);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out
}

/// Stern–Brocot search: the rational with the smallest denominator in [lo, hi],
/// if that denominator is at most `max_denom`.
fn best_rational_in(lo: &Rat, hi: &Rat, max_denom: &BigInt) -> Option<Rat> {
    // shift to nonneg
    if hi < lo {
        return None;
    }
    if lo.is_negative() && !hi.is_negative() {
        return Some(rat(0));
    }
    if hi.is_negative() {
        return best_rational_in(&-hi.clone(), &-lo.clone(), max_denom).map(|r| -r);
    }
    // integer part
    let fl = lo.floor();
    if &fl + rat(1) <= *hi {
        // an integer lies in range: smallest integer >= lo
        let cand = if &fl >= lo { fl } else { fl + rat(1) };
        return Some(cand);
    }
    let base = fl;
    let a = lo.clone() - base.clone();
    let b = hi.clone() - base.clone();
    // walk the Stern-Brocot tree between 0/1 and 1/1
    let (mut pl, mut ql) = (BigInt::zero(), BigInt::one());
    let (mut pr, mut qr) = (BigInt::one(), BigInt::one());
    loop {
        let pm = &pl + &pr;
        let qm = &ql + &qr;
        if qm > *max_denom {
            return None;
        }
        let med = Rat::new(pm.clone(), qm.clone());
        if med < a {
            pl = pm;
            ql = qm;
        } else if med > b {
            pr = pm;
            qr = qm;
        } else {
            return Some(med + base);
        }
    }
}

/// Resultant of two univariate polynomials via the subresultant PRS
/// (fraction-free), exact over Q.
pub fn uni_resultant(a: &UniPoly, b: &UniPoly) -> Rat {
    let mut a = a.clone();
    let mut b = b.clone();
    uni_trim(&mut a);
    uni_trim(&mut b);
    if uni_is_zero(&a) || uni_is_zero(&b) {
        return rat(0);
    }
    let mut res = rat(1);
    loop {
        let da = uni_degree(&a);
        let db = uni_degree(&b);
        if db == 0 {
            let mut acc = rat(1);
            for _ in 0..da {
                acc *= b[0].clone();
            }
            return res * acc;
        }
        let r = uni_rem(&a, &b);
        if uni_is_zero(&r) {
            return rat(0);
        }
        let dr = uni_degree(&r);
        let lb = b[db].clone();
        // res(a,b) = (-1)^(da*db) lb^(da-dr) res(b,r)
        let mut factor = rat(1);
        for _ in 0..(da - dr) {
            factor *= lb.clone();
        }
        if (da * db) % 2 == 1 {
            res = -res;
        }
        res *= factor;
        a = b;
        b = r;
    }
}

/// Resultant of two polynomials in `var`, eliminating it; the result lives in
/// the remaining variables. Computed by evaluation/interpolation on the other
/// variables would be fragile; instead we run the subresultant PRS over the
/// fraction field directly using dense coefficient vectors of `MPoly`s.
pub fn resultant(a: &MPoly, b: &MPoly, var: &str) -> MPoly {
    let da = a.degree_in(var) as i64;
    let db = b.degree_in(var) as i64;
    let zero = {
        let vars: Vec<&str> = a.vars().iter().map(|s| s.as_str()).collect();
        MPoly::zero(&vars)
    };
    if a.is_zero() || b.is_zero() {
        return zero;
    }
    if da == 0 {
        return a.pow(db).unwrap();
    }
    if db == 0 {
        return b.pow(da).unwrap();
    }
    // Sylvester matrix over the polynomial ring in the remaining variables,
    // determinant by fraction-free Bareiss elimination.
    let ac = a.coeffs_in(var);
    let bc = b.coeffs_in(var);
    let n = (da + db) as usize;
    let mut m: Vec<Vec<MPoly>> = vec![vec![zero.clone(); n]; n];
    for i in 0..db as usize {
        for (j, c) in ac.iter().enumerate() {
            m[i][i + (da as usize - j)] = c.clone();
        }
    }
    for i in 0..da as usize {
        for (j, c) in bc.iter().enumerate() {
            m[db as usize + i][i + (db as usize - j)] = c.clone();
        }
    }
    // Bareiss: stays polynomial at every step
    let one = MPoly::constant_like(&zero, rat(1));
    let mut denom = one.clone();
    let mut sign_flip = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = exact_poly_div(&num, &denom);
            }
        }
        denom = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Exact division of multivariate polynomials when the quotient is known to be
/// polynomial (Bareiss guarantees this). Division is performed as univariate
/// division in the last variable with recursive coefficient division; for the
/// common case of a constant divisor it is a plain scale.
fn exact_poly_div(num: &MPoly, den: &MPoly) -> MPoly {
    if let Some(c) = den.constant_value() {
        assert!(!c.is_zero(), "division by zero");
        return num.scale(&(Rat::one() / c));
    }
    // choose a variable where den has positive degree
    let var = den
        .vars()
        .iter()
        .find(|v| den.degree_in(v) > 0)
        .expect("nonconstant divisor")
        .clone();
    let vars: Vec<&str> = num.vars().iter().map(|s| s.as_str()).collect();
    let mut rem = num.clone();
    let mut quo = MPoly::zero(&vars);
    let dd = den.degree_in(&var);
    let den_coeffs = den.coeffs_in(&var);
    let den_lead = den_coeffs[dd as usize].clone();
    while !rem.is_zero() && rem.degree_in(&var) >= dd {
        let dr = rem.degree_in(&var);
        let rem_lead = rem.coeffs_in(&var)[dr as usize].clone();
        let c = exact_poly_div(&rem_lead, &den_lead);
        let shift = MPoly::var(&vars, &var).pow((dr - dd) as i64).unwrap();
        let t = c.mul(&shift);
        quo = quo.add(&t);
        rem = rem.sub(&t.mul(den));
    }
    assert!(rem.is_zero(), "inexact polynomial division");
    quo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_mpoly;
    use crate::rat::to_f64;

    fn up(src: &str) -> MPoly {
        parse_mpoly(src, &["c"]).unwrap()
    }

    #[test]
    fn wall_cubic_isolated_and_refined() {
        // exactly one root in (0, 1/2], near 0.47233
        let p = up("10*c^3 - 34*c^2 + 35*c - 10");
        let lo = rat(0);
        let hi = ratq(1, 2);
        let roots = isolate_real_roots(&p, (&lo, &hi)).unwrap();
        assert_eq!(roots.len(), 1);
        let mut iv = roots[0].clone();
        iv.refine(&ratq(1, 10_000_000));
        let mid = to_f64(&iv.midpoint());
        assert!((mid - 0.47233).abs() < 1e-5, "mid = {mid}");
    }

    #[test]
    fn smallest_root_of_local_delta_cubic() {
        let p = up("7*c^3 - 23*c^2 + 22*c - 5");
        let roots = isolate_real_roots(&p, (&rat(0), &rat(1))).unwrap();
        assert!(!roots.is_empty());
        let mut first = roots[0].clone();
        first.refine(&ratq(1, 10_000_000));
        let mid = to_f64(&first.midpoint());
        assert!((mid - 0.3293).abs() < 1e-4, "mid = {mid}");
    }

    #[test]
    fn sqrt_two_isolated() {
        let p = up("c^2 - 2");
        let roots = isolate_real_roots(&p, (&rat(0), &rat(2))).unwrap();
        assert_eq!(roots.len(), 1);
        let mut iv = roots[0].clone();
        iv.refine(&ratq(1, 1_000_000));
        let mid = to_f64(&iv.midpoint());
        assert!((mid - std::f64::consts::SQRT_2).abs() < 1e-5);
    }

    #[test]
    fn multiple_roots_squarefree_reduced() {
        // (c-1)^2 (c+2) has two distinct roots
        let p = up("(c-1)^2 * (c+2)");
        let roots = isolate_real_roots(&p, (&rat(-10), &rat(10))).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let z = MPoly::zero(&["c"]);
        assert_eq!(
            isolate_real_roots(&z, (&rat(0), &rat(1))),
            Err(RootError::ZeroPolynomial)
        );
    }

    #[test]
    fn count_matches_sturm_difference() {
        let p = up("(c-1)*(c-2)*(c-3)*(c^2+1)");
        let coeffs = p.univariate_coeffs("c").unwrap();
        let sf = uni_squarefree(&coeffs);
        assert_eq!(sturm_count(&sf, &rat(0), &rat(10)), 3);
        let ivs = isolate_real_roots(&p, (&rat(0), &rat(10))).unwrap();
        assert_eq!(ivs.len(), 3);
        for iv in &ivs {
            let a = uni_eval(&sf, &iv.lo);
            let b = uni_eval(&sf, &iv.hi);
            assert!(sign(&a) * sign(&b) <= 0, "sign change across interval");
        }
    }

    #[test]
    fn rational_roots_found_exactly() {
        // roots 2/3, -5, 0; and an irrational pair from c^2-2
        let p = parse_mpoly("c*(3*c-2)*(c+5)*(c^2-2)", &["c"]).unwrap();
        let roots = rational_roots(&p.univariate_coeffs("c").unwrap());
        assert_eq!(roots, vec![rat(-5), rat(0), ratq(2, 3)]);
    }

    #[test]
    fn resultant_of_univariate() {
        // res(x^2-1, x-2) = (2^2 - 1) = 3
        let a = vec![rat(-1), rat(0), rat(1)];
        let b = vec![rat(-2), rat(1)];
        assert_eq!(uni_resultant(&a, &b), rat(3));
    }

    #[test]
    fn resultant_eliminates_variable() {
        // res_y(x - y^2, y - x) = x - x^2 up to sign
        let vars = ["x", "y"];
        let a = parse_mpoly("x - y^2", &vars).unwrap();
        let b = parse_mpoly("y - x", &vars).unwrap();
        let r = resultant(&a, &b, "y");
        let expect = parse_mpoly("x - x^2", &vars).unwrap();
        assert!(r == expect || r == expect.neg(), "r = {r}");
    }

    use crate::rat::ratq;
}
