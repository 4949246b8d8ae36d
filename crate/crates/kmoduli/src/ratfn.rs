//! Univariate rational functions, kept both unreduced and reduced.
//!
//! These hold S-invariants and A/S ratios as exact functions of the
//! coefficient c. Equality is as rational functions (cross-multiplication),
//! printing uses the reduced form with a sign-normalized denominator.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{parse_mpoly, MPoly, PolyError};
use crate::rat::{rat, Rat};
use crate::roots::{uni_div_exact, uni_gcd, uni_trim, UniPoly};

#[derive(Clone, Serialize, Deserialize)]
pub struct RatFn {
    var: String,
    num: Vec<Rat>,
    den: Vec<Rat>,
}

impl RatFn {
    pub fn new(num: &MPoly, den: &MPoly) -> Result<RatFn, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let var = num
            .vars()
            .iter()
            .chain(den.vars().iter())
            .find(|v| num.degree_in(v) > 0 || den.degree_in(v) > 0)
            .cloned()
            .unwrap_or_else(|| num.vars().first().cloned().unwrap_or_else(|| "c".into()));
        let n = num.univariate_coeffs(&var)?;
        let d = den.univariate_coeffs(&var)?;
        Ok(RatFn { var, num: n, den: d })
    }

    pub fn from_poly(p: &MPoly) -> RatFn {
        let one = MPoly::constant_like(p, rat(1));
        RatFn::new(p, &one).expect("nonzero denominator")
    }

    pub fn parse(num: &str, den: &str, var: &str) -> Result<RatFn, PolyError> {
        let n = parse_mpoly(num, &[var])?;
        let d = parse_mpoly(den, &[var])?;
        RatFn::new(&n, &d)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn numerator(&self) -> MPoly {
        coeffs_to_poly(&self.num, &self.var)
    }

    pub fn denominator(&self) -> MPoly {
        coeffs_to_poly(&self.den, &self.var)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// Reduced form: gcd of numerator/denominator is a unit and the reduced
    /// denominator has a positive leading coefficient.
    pub fn reduced(&self) -> RatFn {
        let mut n = self.num.clone();
        let mut d = self.den.clone();
        uni_trim(&mut n);
        uni_trim(&mut d);
        if n.is_empty() {
            return RatFn {
                var: self.var.clone(),
                num: vec![],
                den: vec![rat(1)],
            };
        }
        let g = uni_gcd(&n, &d);
        let (mut n, mut d) = if g.len() > 1 {
            (uni_div_exact(&n, &g), uni_div_exact(&d, &g))
        } else {
            (n, d)
        };
        // normalize: the denominator becomes a primitive integer polynomial
        // with positive leading coefficient
        let scale = primitive_scale(&d);
        for c in n.iter_mut() {
            *c *= scale.clone();
        }
        for c in d.iter_mut() {
            *c *= scale.clone();
        }
        RatFn {
            var: self.var.clone(),
            num: n,
            den: d,
        }
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        assert_eq!(self.var, other.var);
        RatFn {
            var: self.var.clone(),
            num: uni_add(
                &uni_mul_local(&self.num, &other.den),
                &uni_mul_local(&other.num, &self.den),
            ),
            den: uni_mul_local(&self.den, &other.den),
        }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            var: self.var.clone(),
            num: self.num.iter().map(|c| -c.clone()).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        assert_eq!(self.var, other.var);
        RatFn {
            var: self.var.clone(),
            num: uni_mul_local(&self.num, &other.num),
            den: uni_mul_local(&self.den, &other.den),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        RatFn {
            var: self.var.clone(),
            num: self.num.iter().map(|x| x * c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFn, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(RatFn {
            var: self.var.clone(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// Evaluate at a rational point where the denominator does not vanish.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = crate::roots::uni_eval(&self.den, x);
        if d.is_zero() {
            return None;
        }
        Some(crate::roots::uni_eval(&self.num, x) / d)
    }

    /// Equality as rational functions.
    pub fn equivalent(&self, other: &RatFn) -> bool {
        if self.var != other.var {
            return false;
        }
        let lhs = uni_mul_local(&self.num, &other.den);
        let rhs = uni_mul_local(&other.num, &self.den);
        let mut l = lhs;
        let mut r = rhs;
        uni_trim(&mut l);
        uni_trim(&mut r);
        l == r
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let red = self.reduced();
        let num = coeffs_to_poly(&red.num, &red.var);
        let den = coeffs_to_poly(&red.den, &red.var);
        if den.constant_value().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / ({den})")
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The positive rational making a nonzero coefficient list a primitive
/// integer list with positive leading coefficient.
fn primitive_scale(coeffs: &UniPoly) -> Rat {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut lcm = BigInt::from(1);
    for c in coeffs {
        let g = lcm.gcd(c.denom());
        lcm = &lcm / g * c.denom();
    }
    let mut content = BigInt::from(0);
    for c in coeffs {
        let int = c.numer() * &lcm / c.denom();
        content = content.gcd(&int);
    }
    if content.is_zero() {
        return Rat::one();
    }
    let mut scale = Rat::new(lcm, content);
    if coeffs.last().map(|c| c.is_negative()).unwrap_or(false) {
        scale = -scale;
    }
    scale
}

fn coeffs_to_poly(c: &UniPoly, var: &str) -> MPoly {
    MPoly::from_terms(
        &[var],
        c.iter().enumerate().map(|(i, x)| (vec![i as u32], x.clone())),
    )
}

fn uni_add(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut out = vec![rat(0); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y.clone();
    }
    uni_trim(&mut out);
    out
}

fn uni_mul_local(a: &UniPoly, b: &UniPoly) -> UniPoly {
    crate::roots::uni_mul(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_equality() {
        // (9-7c)(3-2c) / 3(3-2c) == (9-7c)/3
        let a = RatFn::parse("(9-7*c)*(3-2*c)", "3*(3-2*c)", "c").unwrap();
        let b = RatFn::parse("9-7*c", "3", "c").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reduced().to_string(), b.reduced().to_string());
    }

    #[test]
    fn arithmetic() {
        let a = RatFn::parse("2-2*c", "1", "c").unwrap();
        let s = RatFn::parse("-14*c^3+62*c^2-91*c+44", "3*(3-2*c)^2", "c").unwrap();
        let diff = a.sub(&s);
        let wall = RatFn::parse("-(10*c^3-34*c^2+35*c-10)", "3*(3-2*c)^2", "c").unwrap();
        assert_eq!(diff, wall);
    }

    #[test]
    fn eval_and_poles() {
        let s = RatFn::parse("1", "3-2*c", "c").unwrap();
        assert_eq!(s.eval(&rat(1)), Some(rat(1)));
        assert_eq!(s.eval(&crate::rat::ratq(3, 2)), None);
    }
}
