//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are stored in a `BTreeMap` from exponent vectors to nonzero
//! coefficients; the exponent arity always matches the declared variable list.
//! Canonical printing uses lexicographic order in the declared variable order,
//! so golden outputs are deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat::{parse_rat, rat, rat_to_string, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("incompatible variable sets: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("negative exponent in power")]
    NegativePower,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero polynomial")]
    DivisionByZero,
}

/// A multivariate polynomial over Q.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        MPoly::from_json(&value).map_err(serde::de::Error::custom)
    }
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let i = p.var_index(name).expect("variable not declared");
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.terms.insert(e, rat(1));
        p
    }

    /// Build from raw term data; drops zero coefficients.
    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent arity mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(rat(0))
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn coeff(&self, exp: &[u32]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(|| rat(0))
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &MPoly) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VariableMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.check_compatible(other).expect("variable mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.check_compatible(other).expect("variable mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.check_compatible(other).expect("variable mismatch");
        let mut out = Self::zero_like(self);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return Self::zero_like(self);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    pub fn pow(&self, n: i64) -> Result<MPoly, PolyError> {
        if n < 0 {
            return Err(PolyError::NegativePower);
        }
        let mut out = Self::constant_like(self, rat(1));
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(out)
    }

    pub fn zero_like(p: &MPoly) -> MPoly {
        MPoly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_like(p: &MPoly, c: Rat) -> MPoly {
        let mut out = Self::zero_like(p);
        if !c.is_zero() {
            out.terms.insert(vec![0; out.vars.len()], c);
        }
        out
    }

    /// Partial derivative with respect to a declared variable.
    pub fn derivative(&self, var: &str) -> Result<MPoly, PolyError> {
        let i = self
            .var_index(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let mut out = Self::zero_like(self);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * rat(e[i] as i64));
        }
        Ok(out)
    }

    /// Total degree.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            None => 0,
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
        }
    }

    /// Substitute a polynomial for each variable (all over the target's variable set).
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.vars.len());
        let template = &images[0];
        let mut out = MPoly::zero_like(template);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant_like(template, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&images[i].pow(exp as i64).unwrap());
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitute a rational value for one variable, keeping the others.
    pub fn eval_var(&self, var: &str, value: &Rat) -> MPoly {
        let i = self.var_index(var).expect("unknown variable");
        let mut out = Self::zero_like(self);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let mut pw = rat(1);
            for _ in 0..k {
                pw *= value.clone();
            }
            out.add_term(e2, c * pw);
        }
        out
    }

    /// Full evaluation at a rational point (in declared variable order).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = rat(0);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= point[i].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Reinterpret over a different variable set; variables not in the target
    /// may only be dropped when they do not occur.
    pub fn with_vars(&self, vars: &[&str]) -> MPoly {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = MPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => e2[j] = k,
                    None => assert_eq!(k, 0, "variable {} occurs but is dropped", self.vars[i]),
                }
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Coefficients as univariate polynomial in `var` over the remaining variables.
    pub fn coeffs_in(&self, var: &str) -> Vec<MPoly> {
        let i = self.var_index(var).expect("unknown variable");
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero_like(self); d + 1];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e2 = e.clone();
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Dense univariate coefficient list (constant first). Errors if other variables occur.
    pub fn univariate_coeffs(&self, var: &str) -> Result<Vec<Rat>, PolyError> {
        let i = self
            .var_index(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let d = self.degree_in(var) as usize;
        let mut out = vec![rat(0); d + 1];
        for (e, c) in &self.terms {
            for (j, &k) in e.iter().enumerate() {
                if j != i && k != 0 {
                    return Err(PolyError::NotUnivariate(var.to_string()));
                }
            }
            out[e[i] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Antiderivative in `var` (power rule), for exact piece integration.
    pub fn antiderivative(&self, var: &str) -> MPoly {
        let i = self.var_index(var).expect("unknown variable");
        let mut out = Self::zero_like(self);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] += 1;
            let denom = rat(e2[i] as i64);
            out.add_term(e2, c / denom);
        }
        out
    }

    /// Leading coefficient in lexicographic order (declared variable order).
    pub fn leading_coeff_lex(&self) -> Option<&Rat> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    /// Scale so the lexicographically leading coefficient is 1.
    pub fn monic_lex(&self) -> MPoly {
        match self.leading_coeff_lex() {
            None => self.clone(),
            Some(c) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }
}

/// Exact definite integral of `integrand` in `var` between polynomial bounds.
///
/// The antiderivative is evaluated by substituting the bound polynomials
/// (which may involve the surviving variables) for `var`.
pub fn integrate_piece(
    integrand: &MPoly,
    var: &str,
    lower: &MPoly,
    upper: &MPoly,
) -> Result<MPoly, PolyError> {
    let vars: Vec<&str> = integrand.vars.iter().map(|s| s.as_str()).collect();
    let anti = integrand.antiderivative(var);
    let lower = lower.with_vars(&vars);
    let upper = upper.with_vars(&vars);
    let idx = integrand
        .var_index(var)
        .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
    let images_at = |bound: &MPoly| -> Vec<MPoly> {
        integrand
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == idx {
                    bound.clone()
                } else {
                    MPoly::var(&vars, v)
                }
            })
            .collect()
    };
    let hi = anti.substitute(&images_at(&upper));
    let lo = anti.substitute(&images_at(&lower));
    Ok(hi.sub(&lo))
}

// ---------------------------------------------------------------------------
// Printing and parsing
// ---------------------------------------------------------------------------

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending lex order for stable golden output
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&k| k == 0) {
                parts.push(rat_to_string(&mag));
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    parts.push(self.vars[i].clone());
                } else if k > 1 {
                    parts.push(format!("{}^{}", self.vars[i], k));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.vars.join(","), self)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<MPoly, PolyError> {
        self.skip_ws();
        let mut sign_neg = false;
        if let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                sign_neg = c == '-';
                self.bump();
            }
        }
        let mut acc = self.term()?;
        if sign_neg {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let fac = self.factor()?;
                    acc = acc.mul(&fac);
                }
                Some('/') => {
                    // division by a nonzero constant only
                    self.bump();
                    let fac = self.factor()?;
                    let c = fac.constant_value().ok_or_else(|| {
                        PolyError::Parse("division only by nonzero constants".into())
                    })?;
                    if c.is_zero() {
                        return Err(PolyError::Parse("division by zero".into()));
                    }
                    acc = acc.scale(&(Rat::one() / c));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, PolyError> {
        self.skip_ws();
        let base = match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.skip_ws();
                if self.bump() != Some(')') {
                    return Err(PolyError::Parse("expected ')'".into()));
                }
                inner
            }
            Some('-') => {
                self.bump();
                self.factor()?.neg()
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                MPoly::constant(self.vars, n)
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.ident();
                let idx = self.vars.iter().position(|v| *v == name);
                match idx {
                    Some(_) => MPoly::var(self.vars, &name),
                    None => return Err(PolyError::UnknownVariable(name)),
                }
            }
            other => return Err(PolyError::Parse(format!("unexpected {other:?}"))),
        };
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let mut digits = String::new();
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                digits.push(self.bump().unwrap());
            }
            if digits.is_empty() {
                return Err(PolyError::Parse("expected exponent".into()));
            }
            let e: i64 = digits
                .parse()
                .map_err(|_| PolyError::Parse("bad exponent".into()))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<Rat, PolyError> {
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        parse_rat(&digits).map_err(PolyError::Parse)
    }

    fn ident(&mut self) -> String {
        let mut name = String::new();
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            name.push(self.bump().unwrap());
        }
        name
    }
}

/// Parse polynomial text over the declared variables.
pub fn parse_mpoly(src: &str, vars: &[&str]) -> Result<MPoly, PolyError> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(PolyError::Parse(format!(
            "trailing input at offset {}",
            p.pos
        )));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON form: { "vars": [...], "terms": [{"exp": [..], "coef": "p/q"}] }
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    vars: Vec<String>,
    terms: Vec<JsonTerm>,
}

impl MPoly {
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(e, c)| JsonTerm {
                exp: e.clone(),
                coef: rat_to_string(c),
            })
            .collect();
        serde_json::to_value(JsonPoly {
            vars: self.vars.clone(),
            terms,
        })
        .expect("serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MPoly, PolyError> {
        let jp: JsonPoly =
            serde_json::from_value(v.clone()).map_err(|e| PolyError::Parse(e.to_string()))?;
        let vars: Vec<&str> = jp.vars.iter().map(|s| s.as_str()).collect();
        let mut out = MPoly::zero(&vars);
        for t in jp.terms {
            if t.exp.len() != vars.len() {
                return Err(PolyError::Parse("exponent arity mismatch".into()));
            }
            out.add_term(t.exp, parse_rat(&t.coef).map_err(PolyError::Parse)?);
        }
        Ok(out)
    }
}
