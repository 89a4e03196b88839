//! Exact values for invariants.
//!
//! Every invariant value is an affine expression in named parameters whose
//! coefficients live in the polynomial ring `Q[a+, a-]`. That ring is the
//! quotient of the monoid algebra on the front alphabet by `a+ + b+` and
//! `a- + b-`: the `b` generators are never stored, a projection `b±` maps to
//! `-a±` when it enters the ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};
use thiserror::Error;

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n`, `-n` or `p/q`; decimals are rejected.
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let t = text.trim();
    let bad = || AlgebraError::BadRational(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("no value assigned to `{0}`")]
    Unassigned(String),
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("parse error at byte {at}: {message}")]
    Parse { at: usize, message: String },
    #[error("expression is not affine in its parameters: {0}")]
    NotAffine(String),
    #[error("malformed JSON value: {0}")]
    BadJson(String),
}

/// The two ring generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingVar {
    APlus,
    AMinus,
}

impl RingVar {
    pub fn name(self) -> &'static str {
        match self {
            RingVar::APlus => "a+",
            RingVar::AMinus => "a-",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "a+" => Some(RingVar::APlus),
            "a-" => Some(RingVar::AMinus),
            _ => None,
        }
    }
}

/// `a+^a_plus * a-^a_minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub a_plus: u32,
    pub a_minus: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        a_plus: 0,
        a_minus: 0,
    };

    pub fn var(v: RingVar) -> Self {
        match v {
            RingVar::APlus => Monomial {
                a_plus: 1,
                a_minus: 0,
            },
            RingVar::AMinus => Monomial {
                a_plus: 0,
                a_minus: 1,
            },
        }
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            a_plus: self.a_plus + other.a_plus,
            a_minus: self.a_minus + other.a_minus,
        }
    }

    /// JSON key form: `1`, `a+`, `a+^2 a-`, ...
    pub fn key(&self) -> String {
        let mut parts = Vec::new();
        for (v, e) in [
            (RingVar::APlus, self.a_plus),
            (RingVar::AMinus, self.a_minus),
        ] {
            match e {
                0 => {}
                1 => parts.push(v.name().to_string()),
                _ => parts.push(format!("{}^{}", v.name(), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    pub fn from_key(key: &str) -> Result<Self, AlgebraError> {
        let bad = || AlgebraError::BadJson(format!("monomial key `{key}`"));
        let mut m = Monomial::ONE;
        if key.trim() == "1" {
            return Ok(m);
        }
        for part in key.split_whitespace() {
            let (name, exp) = match part.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad())?),
                None => (part, 1),
            };
            match RingVar::from_name(name).ok_or_else(bad)? {
                RingVar::APlus => m.a_plus += exp,
                RingVar::AMinus => m.a_minus += exp,
            }
        }
        Ok(m)
    }

    fn eval(&self, a_plus: &Rational, a_minus: &Rational) -> Rational {
        pow(a_plus, self.a_plus) * pow(a_minus, self.a_minus)
    }
}

fn pow(base: &Rational, exp: u32) -> Rational {
    (0..exp).fold(Rational::one(), |acc, _| acc * base)
}

/// An element of `Q[a+, a-]`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    terms: BTreeMap<Monomial, Rational>,
}

/// Assignment of rational values to the ring generators.
pub type RingValues = BTreeMap<RingVar, Rational>;

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RingElem::monomial(Monomial::ONE, c)
    }

    pub fn from_int(n: i64) -> Self {
        RingElem::constant(int(n))
    }

    pub fn var(v: RingVar) -> Self {
        RingElem::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RingElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The value if this element has no ring-variable part.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn pow(&self, exp: u32) -> RingElem {
        (0..exp).fold(RingElem::one(), |acc, _| &acc * self)
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> RingElem {
        if c.is_zero() {
            return RingElem::zero();
        }
        RingElem {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Evaluates at the given generator values; every generator that occurs
    /// must be assigned.
    pub fn eval(&self, values: &RingValues) -> Result<Rational, AlgebraError> {
        let zero = Rational::zero();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let get = |v: RingVar, e: u32| -> Result<&Rational, AlgebraError> {
                if e == 0 {
                    return Ok(&zero);
                }
                values
                    .get(&v)
                    .ok_or_else(|| AlgebraError::Unassigned(v.name().to_string()))
            };
            let ap = get(RingVar::APlus, m.a_plus)?;
            let am = get(RingVar::AMinus, m.a_minus)?;
            total += c * m.eval(ap, am);
        }
        Ok(total)
    }

    /// Substitutes only the generators present in `values`.
    pub fn eval_partial(&self, values: &RingValues) -> RingElem {
        let mut out = RingElem::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            if let Some(v) = values.get(&RingVar::APlus) {
                coeff *= pow(v, m.a_plus);
                rest.a_plus = 0;
            }
            if let Some(v) = values.get(&RingVar::AMinus) {
                coeff *= pow(v, m.a_minus);
                rest.a_minus = 0;
            }
            out.add_term(rest, &coeff);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        if self.terms.is_empty() {
            map.insert("1".into(), Value::String("0".into()));
        }
        for (m, c) in &self.terms {
            map.insert(m.key(), Value::String(c.to_string()));
        }
        Value::Object(map)
    }

    pub fn from_json(value: &Value) -> Result<Self, AlgebraError> {
        let obj = value
            .as_object()
            .ok_or_else(|| AlgebraError::BadJson("ring element must be an object".into()))?;
        let mut out = RingElem::zero();
        for (k, v) in obj {
            let text = v
                .as_str()
                .ok_or_else(|| AlgebraError::BadJson(format!("coefficient of `{k}`")))?;
            out.add_term(Monomial::from_key(k)?, &parse_rational(text)?);
        }
        Ok(out)
    }
}

impl From<Rational> for RingElem {
    fn from(c: Rational) -> Self {
        RingElem::constant(c)
    }
}

impl Add<&RingElem> for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(mut self, rhs: RingElem) -> RingElem {
        self += &rhs;
        self
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl Sub<&RingElem> for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self + &(-rhs)
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        &self - &rhs
    }
}

impl Mul<&RingElem> for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(*m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        &self * &rhs
    }
}

impl fmt::Display for RingElem {
    /// `-3/2*a+^2*a- + a+ + 1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let mono = monomial_text(m);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn monomial_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, e) in [(RingVar::APlus, m.a_plus), (RingVar::AMinus, m.a_minus)] {
        match e {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

/// Affine expression `constant + Σ coeff(name) * name` with ring coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamExpr {
    constant: RingElem,
    coeffs: BTreeMap<String, RingElem>,
}

/// Assignment of rational values to parameter names.
pub type ParamValues = BTreeMap<String, Rational>;

impl ParamExpr {
    pub fn zero() -> Self {
        ParamExpr::default()
    }

    pub fn constant(c: RingElem) -> Self {
        ParamExpr {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn rational(c: Rational) -> Self {
        ParamExpr::constant(RingElem::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        ParamExpr::rational(int(n))
    }

    pub fn param(name: &str) -> Self {
        ParamExpr::term(RingElem::one(), name)
    }

    pub fn term(coeff: RingElem, name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(name.to_string(), coeff);
        }
        ParamExpr {
            constant: RingElem::zero(),
            coeffs,
        }
    }

    pub fn constant_part(&self) -> &RingElem {
        &self.constant
    }

    pub fn coefficient(&self, name: &str) -> RingElem {
        self.coeffs.get(name).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&str, &RingElem)> {
        self.coeffs.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn params(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    /// `Some(c)` when the expression has neither parameters nor ring variables.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.is_empty() {
            self.constant.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &RingElem) -> ParamExpr {
        let mut out = ParamExpr::constant(&self.constant * c);
        for (k, v) in &self.coeffs {
            let prod = v * c;
            if !prod.is_zero() {
                out.coeffs.insert(k.clone(), prod);
            }
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> ParamExpr {
        self.scale(&RingElem::constant(c.clone()))
    }

    fn add_coeff(&mut self, name: &str, c: &RingElem) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(name.to_string()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(name);
        }
    }

    /// Full evaluation to a rational.
    pub fn specialize(
        &self,
        params: &ParamValues,
        ring: &RingValues,
    ) -> Result<Rational, AlgebraError> {
        let mut total = self.constant.eval(ring)?;
        for (name, c) in &self.coeffs {
            let value = params
                .get(name)
                .ok_or_else(|| AlgebraError::Unassigned(name.clone()))?;
            total += c.eval(ring)? * value;
        }
        Ok(total)
    }

    /// Substitutes the assigned parameters and ring generators, keeping the rest
    /// symbolic.
    pub fn specialize_partial(&self, params: &ParamValues, ring: &RingValues) -> ParamExpr {
        let mut out = ParamExpr::constant(self.constant.eval_partial(ring));
        for (name, c) in &self.coeffs {
            let c = c.eval_partial(ring);
            match params.get(name) {
                Some(v) => out.constant += &c.scale(v),
                None => out.add_coeff(name, &c),
            }
        }
        out
    }

    /// Replaces each parameter found in `map` by an affine expression. The
    /// result stays affine because coefficients are parameter-free.
    pub fn substitute(&self, map: &BTreeMap<String, ParamExpr>) -> ParamExpr {
        let mut out = ParamExpr::constant(self.constant.clone());
        for (name, c) in &self.coeffs {
            match map.get(name) {
                Some(e) => out = out + e.scale(c),
                None => out.add_coeff(name, c),
            }
        }
        out
    }

    pub fn rename(&self, map: &BTreeMap<&str, &str>) -> ParamExpr {
        let mut out = ParamExpr::constant(self.constant.clone());
        for (name, c) in &self.coeffs {
            let new = map.get(name.as_str()).copied().unwrap_or(name.as_str());
            out.add_coeff(new, c);
        }
        out
    }

    /// `{"const": <ring>, "coeffs": {"s": <ring>, ...}}`, keys sorted.
    pub fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        let mut obj = Map::new();
        obj.insert("coeffs".into(), Value::Object(coeffs));
        obj.insert("const".into(), self.constant.to_json());
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Self, AlgebraError> {
        let obj = value
            .as_object()
            .ok_or_else(|| AlgebraError::BadJson("expression must be an object".into()))?;
        let constant = match obj.get("const") {
            Some(c) => RingElem::from_json(c)?,
            None => RingElem::zero(),
        };
        let mut out = ParamExpr::constant(constant);
        if let Some(c) = obj.get("coeffs") {
            let map = c
                .as_object()
                .ok_or_else(|| AlgebraError::BadJson("`coeffs` must be an object".into()))?;
            for (k, v) in map {
                out.add_coeff(k, &RingElem::from_json(v)?);
            }
        }
        Ok(out)
    }
}

impl From<RingElem> for ParamExpr {
    fn from(c: RingElem) -> Self {
        ParamExpr::constant(c)
    }
}

impl From<Rational> for ParamExpr {
    fn from(c: Rational) -> Self {
        ParamExpr::rational(c)
    }
}

impl Add for ParamExpr {
    type Output = ParamExpr;
    fn add(mut self, rhs: ParamExpr) -> ParamExpr {
        self += &rhs;
        self
    }
}

impl Add<&ParamExpr> for &ParamExpr {
    type Output = ParamExpr;
    fn add(self, rhs: &ParamExpr) -> ParamExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ParamExpr> for ParamExpr {
    fn add_assign(&mut self, rhs: &ParamExpr) {
        self.constant += &rhs.constant;
        for (k, v) in &rhs.coeffs {
            self.add_coeff(k, v);
        }
    }
}

impl Neg for ParamExpr {
    type Output = ParamExpr;
    fn neg(self) -> ParamExpr {
        self.scale(&RingElem::from_int(-1))
    }
}

impl Neg for &ParamExpr {
    type Output = ParamExpr;
    fn neg(self) -> ParamExpr {
        self.scale(&RingElem::from_int(-1))
    }
}

impl Sub for ParamExpr {
    type Output = ParamExpr;
    fn sub(self, rhs: ParamExpr) -> ParamExpr {
        self + (-rhs)
    }
}

impl Sub<&ParamExpr> for &ParamExpr {
    type Output = ParamExpr;
    fn sub(self, rhs: &ParamExpr) -> ParamExpr {
        self + &(-rhs)
    }
}

impl fmt::Display for ParamExpr {
    /// Parameters in name order, then the constant: `s + 1/2*t - 1/2`.
    /// Ring-valued coefficients are parenthesised unless they are a single
    /// monomial with coefficient one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for (name, c) in &self.coeffs {
            pieces.push(coefficient_piece(c, Some(name)));
        }
        if !self.constant.is_zero() || pieces.is_empty() {
            pieces.push(coefficient_piece(&self.constant, None));
        }
        for (i, (negative, body)) in pieces.iter().enumerate() {
            match (i, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Renders `c * name` as (is_negative, magnitude text).
fn coefficient_piece(c: &RingElem, name: Option<&str>) -> (bool, String) {
    if let Some(r) = c.as_constant() {
        let negative = r.is_negative();
        let abs = r.abs();
        let text = match name {
            None => abs.to_string(),
            Some(n) if abs.is_one() => n.to_string(),
            Some(n) => format!("{abs}*{n}"),
        };
        return (negative, text);
    }
    if c.terms.len() == 1 {
        let (m, r) = c.terms.iter().next().expect("one term");
        let negative = r.is_negative();
        let abs = r.abs();
        let mono = monomial_text(m);
        let head = if abs.is_one() {
            mono
        } else {
            format!("{abs}*{mono}")
        };
        let text = match name {
            None => head,
            Some(n) => format!("{head}*{n}"),
        };
        return (negative, text);
    }
    let text = match name {
        None => format!("({c})"),
        Some(n) => format!("({c})*{n}"),
    };
    (false, text)
}

impl FromStr for ParamExpr {
    type Err = AlgebraError;

    /// Parses the `Display` form and, more generally, sums and products of
    /// rationals, `a+`/`a-` (with `^n`), parameter names and parentheses, as
    /// long as the result is affine.
    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        let mut p = ExprParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse {
            at: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<ParamExpr, AlgebraError> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.product()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<ParamExpr, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = multiply_affine(&acc, &rhs)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.factor()?;
                    match rhs.as_rational() {
                        Some(d) if !d.is_zero() => acc = acc.scale_rational(&(Rational::one() / d)),
                        _ => {
                            return Err(AlgebraError::Parse {
                                at,
                                message: "can only divide by a nonzero number".into(),
                            })
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ParamExpr, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(ParamExpr::rational(parse_rational(text)?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                // `a+` / `a-` only when the sign is glued to the `a`.
                if name == "a" {
                    if let Some(&sign @ (b'+' | b'-')) = self.src.get(self.pos) {
                        self.pos += 1;
                        let var = if sign == b'+' {
                            RingVar::APlus
                        } else {
                            RingVar::AMinus
                        };
                        let mut exp = 1;
                        if self.src.get(self.pos) == Some(&b'^') {
                            self.pos += 1;
                            let s = self.pos;
                            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                                self.pos += 1;
                            }
                            exp = std::str::from_utf8(&self.src[s..self.pos])
                                .expect("ascii")
                                .parse()
                                .map_err(|_| self.error("bad exponent"))?;
                        }
                        return Ok(ParamExpr::constant(RingElem::var(var).pow(exp)));
                    }
                }
                Ok(ParamExpr::param(name))
            }
            _ => Err(self.error("expected a number, name or `(`")),
        }
    }
}

fn multiply_affine(a: &ParamExpr, b: &ParamExpr) -> Result<ParamExpr, AlgebraError> {
    match (a.coeffs.is_empty(), b.coeffs.is_empty()) {
        (true, _) => Ok(b.scale(&a.constant)),
        (_, true) => Ok(a.scale(&b.constant)),
        _ => Err(AlgebraError::NotAffine(format!("({a})*({b})"))),
    }
}

/// Exact conversion helper used by counters.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}
