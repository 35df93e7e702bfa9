//! Exact multivariate Laurent polynomials with integer coefficients and
//! half-integer exponents.
//!
//! Exponents are stored doubled, so `x^(1/2)` has stored exponent `1` and
//! `x^-1` has stored exponent `-2`. Zero coefficients are never stored.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quad::{QuadField, QuadValue};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: &[&str]) -> Self {
        LaurentPoly { vars: vars.iter().map(|v| v.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    /// Single term with doubled exponents `doubled`.
    pub fn monomial(vars: &[&str], doubled: Vec<i64>, coef: impl Into<BigInt>) -> Self {
        assert_eq!(doubled.len(), vars.len(), "exponent arity");
        let mut p = Self::zero(vars);
        let c = coef.into();
        if !c.is_zero() {
            p.terms.insert(doubled, c);
        }
        p
    }

    /// The variable `name` to the first power.
    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let i = vars.iter().position(|v| *v == name).ok_or_else(|| Error::Input(format!("unknown variable {name}")))?;
        let mut e = vec![0; vars.len()];
        e[i] = 2;
        Ok(Self::monomial(vars, e, 1))
    }

    /// Collect `(doubled exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity");
            p.add_term(e, c.into());
        }
        p
    }

    pub(crate) fn from_counts<K: AsRef<[i64]>>(vars: &[&str], counts: HashMap<K, u64>) -> Self {
        Self::from_terms(vars, counts.into_iter().map(|(k, c)| (k.as_ref().to_vec(), BigInt::from(c))))
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(doubled exponents, coefficient)` in descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().rev().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, doubled: &[i64]) -> BigInt {
        self.terms.get(doubled).cloned().unwrap_or_default()
    }

    /// Smallest and largest doubled exponent of variable `i`.
    pub fn exponent_range(&self, i: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.vars.clone(), right: other.vars.clone() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = LaurentPoly::one(&self.vars());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, k) in &self.terms {
            out.add_term(e.clone(), k * c);
        }
        out
    }

    /// Image under the substitution `var ↦ assignment[var]`, landing in a
    /// ring with variables `target`.
    ///
    /// An image that is a monomial with coefficient 1 is applied by exponent
    /// arithmetic and may be raised to half-integer or negative powers as
    /// long as the resulting exponents stay half-integral. Any other image
    /// may only be raised to non-negative integer powers.
    pub fn substitute(&self, target: &[&str], assignment: &BTreeMap<&str, LaurentPoly>) -> Result<Self> {
        let mut images = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let img =
                assignment.get(v.as_str()).ok_or_else(|| Error::Substitution(format!("no image for variable {v}")))?;
            if img.vars() != target {
                return Err(Error::VariableMismatch {
                    left: img.vars.clone(),
                    right: target.iter().map(|s| s.to_string()).collect(),
                });
            }
            let unit = match img.terms.iter().next() {
                Some((e, c)) if img.terms.len() == 1 && c.is_one() => Some(e.clone()),
                _ => None,
            };
            images.push((img, unit));
        }

        let mut out = LaurentPoly::zero(target);
        let mut power_cache: HashMap<(usize, i64), LaurentPoly> = HashMap::new();
        for (e, c) in &self.terms {
            let mut shift = vec![0i64; target.len()];
            let mut factor = LaurentPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let (img, unit) = &images[i];
                match unit {
                    Some(u) => {
                        for (s, &ui) in shift.iter_mut().zip(u) {
                            let prod = k * ui;
                            if prod % 2 != 0 {
                                return Err(Error::Substitution(format!(
                                    "{}^({k}/2) maps to a quarter-integer exponent",
                                    self.vars[i]
                                )));
                            }
                            *s += prod / 2;
                        }
                    }
                    None => {
                        if k < 0 || k % 2 != 0 {
                            return Err(Error::Substitution(format!(
                                "non-monomial image of {} raised to power {k}/2",
                                self.vars[i]
                            )));
                        }
                        let p = power_cache.entry((i, k)).or_insert_with(|| img.pow((k / 2) as u32));
                        factor = &factor * p;
                    }
                }
            }
            for (fe, fc) in factor.terms {
                let te = fe.iter().zip(&shift).map(|(a, b)| a + b).collect();
                out.add_term(te, fc);
            }
        }
        Ok(out)
    }

    /// Exact value at `point` in the field `Q(√ρ)`. Every variable needs a
    /// value; exponents must be integral.
    pub fn eval_quad(&self, point: &BTreeMap<&str, QuadValue>, field: &QuadField) -> Result<QuadValue> {
        let mut values = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let x = point.get(v.as_str()).ok_or_else(|| Error::Evaluation(format!("no value for variable {v}")))?;
            values.push(field.normalize(x.clone()));
        }
        let mut cache: HashMap<(usize, i64), QuadValue> = HashMap::new();
        let mut total = field.zero();
        for (e, c) in &self.terms {
            let mut term = field.rational(c.clone().into());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if k % 2 != 0 {
                    return Err(Error::Evaluation(format!(
                        "half-integer power of {} cannot be evaluated",
                        self.vars[i]
                    )));
                }
                let p = match cache.get(&(i, k)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = field.pow(&values[i], k / 2)?;
                        cache.insert((i, k), p.clone());
                        p
                    }
                };
                term = field.mul(&term, &p);
            }
            total = field.add(&total, &term);
        }
        Ok(total)
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<Self> {
        Parser { src: text, bytes: text.as_bytes(), pos: 0, vars }.poly()
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, var: &str, doubled: i64) -> fmt::Result {
    if doubled == 2 {
        write!(f, "{var}")
    } else if doubled % 2 == 0 {
        write!(f, "{var}^{}", doubled / 2)
    } else {
        write!(f, "{var}^({doubled}/2)")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let constant = e.iter().all(|&k| k == 0);
            let mut first = true;
            if constant || !abs.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (v, &k) in self.vars.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                fmt_power(f, v, k)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("adding polynomials over different variables")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("subtracting polynomials over different variables")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("multiplying polynomials over different variables")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::PolySyntax { pos: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.vars);
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let (e, c) = self.term()?;
            out.add_term(e, if negative { -c } else { c });
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected '+' or '-'"),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Vec<i64>, BigInt)> {
        let mut exps = vec![0i64; self.vars.len()];
        let mut coef = BigInt::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() => coef *= self.integer()?,
                Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
                        self.pos += 1;
                    }
                    let name = &self.src[start..self.pos];
                    let Some(i) = self.vars.iter().position(|v| *v == name) else {
                        self.pos = start;
                        return self.err(format!("unknown variable '{name}'"));
                    };
                    self.skip_ws();
                    let k = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        self.exponent()?
                    } else {
                        2
                    };
                    exps[i] = exps[i]
                        .checked_add(k)
                        .ok_or_else(|| Error::PolySyntax { pos: self.pos, message: "exponent overflow".into() })?;
                }
                _ => return self.err("expected coefficient or variable"),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exps, coef));
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn small(&mut self) -> Result<i64> {
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let at = self.pos;
        let n = self.integer()?;
        let n: i64 = match i64::try_from(&n) {
            Ok(n) if n.abs() < i64::MAX / 4 => n,
            _ => {
                self.pos = at;
                return self.err("exponent too large");
            }
        };
        Ok(if negative { -n } else { n })
    }

    /// Returns the doubled exponent.
    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'(') {
            return Ok(2 * self.small()?);
        }
        self.pos += 1;
        self.skip_ws();
        let num = self.small()?;
        self.skip_ws();
        let doubled = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            match self.small()? {
                1 => 2 * num,
                2 => num,
                _ => {
                    self.pos = at;
                    return self.err("exponent denominator must be 1 or 2");
                }
            }
        } else {
            2 * num
        };
        self.skip_ws();
        if self.peek() != Some(b')') {
            return self.err("expected ')'");
        }
        self.pos += 1;
        Ok(doubled)
    }
}
