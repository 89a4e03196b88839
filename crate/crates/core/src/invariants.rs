//! Named invariants built from the pairing.
//!
//! A [`Preset`] is a list of (coefficient, pattern or class) terms plus
//! scalar terms in the crossing counts and the index. Coefficients are affine
//! expressions in the preset's parameters, so evaluation on a word yields a
//! [`ParamExpr`].

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{
    int, rat, AlgebraError, ParamExpr, ParamValues, Rational, RingValues, RingVar,
};
use crate::pairing::{cyclic_class, pair, pat, CyclicClass, Flavor, Mode, PairingError, Pattern};
use crate::word::{CurveClass, EtaleWord, LetterKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{preset} is defined for {expected} words, not {found}")]
    WrongClass {
        preset: String,
        expected: String,
        found: CurveClass,
    },
    #[error("unknown invariant `{0}`")]
    UnknownPreset(String),
    #[error("`{name}` is not a parameter of {preset} (parameters: {known})")]
    UnknownParam {
        preset: String,
        name: String,
        known: String,
    },
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSummary {
    /// Crossing letters.
    pub n: usize,
    /// Front crossings with subscript +.
    pub n_plus: usize,
    /// Front crossings with subscript −.
    pub n_minus: usize,
    /// Half the number of cusps.
    pub c: usize,
    pub i: i64,
    /// Maslov index.
    pub mu: i64,
}

pub fn counts(w: &EtaleWord) -> CountSummary {
    let mut s = CountSummary {
        n: 0,
        n_plus: 0,
        n_minus: 0,
        c: 0,
        i: w.index(),
        mu: 0,
    };
    let mut cusps = 0;
    for l in w.letters() {
        let eps = l.projection.subscript();
        match l.kind {
            LetterKind::Crossing => {
                s.n += 1;
                match eps {
                    Some(1) => s.n_plus += 1,
                    Some(_) => s.n_minus += 1,
                    None => {}
                }
            }
            LetterKind::Cusp => {
                cusps += 1;
                s.mu += eps.unwrap_or(0);
            }
        }
    }
    s.c = cusps / 2;
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scalar {
    N,
    NPlus,
    NMinus,
    C,
    I,
    ISquared,
    One,
}

impl Scalar {
    fn value(self, s: &CountSummary) -> Rational {
        int(match self {
            Scalar::N => s.n as i64,
            Scalar::NPlus => s.n_plus as i64,
            Scalar::NMinus => s.n_minus as i64,
            Scalar::C => s.c as i64,
            Scalar::I => s.i,
            Scalar::ISquared => s.i * s.i,
            Scalar::One => 1,
        })
    }

    fn symbol(self) -> &'static str {
        match self {
            Scalar::N => "n",
            Scalar::NPlus => "n+",
            Scalar::NMinus => "n-",
            Scalar::C => "c",
            Scalar::I => "i",
            Scalar::ISquared => "i^2",
            Scalar::One => "1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    /// `<v, w>`.
    Angle(Pattern),
    /// `[[v], w]`.
    Class(CyclicClass),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: ParamExpr,
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarTerm {
    pub coeff: ParamExpr,
    pub scalar: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preset {
    pub name: String,
    /// Empty means any class.
    pub classes: Vec<CurveClass>,
    pub params: Vec<String>,
    pub terms: Vec<Term>,
    pub scalars: Vec<ScalarTerm>,
    pub mode: Mode,
}

fn p(name: &str) -> ParamExpr {
    ParamExpr::param(name)
}

fn half(e: ParamExpr) -> ParamExpr {
    e.scale_rational(&rat(1, 2))
}

fn angle(coeff: ParamExpr, v: &str) -> Term {
    Term {
        coeff,
        body: Body::Angle(pat(v)),
    }
}

fn class(coeff: ParamExpr, v: &str, flavor: Flavor) -> Term {
    let c = cyclic_class(&pat(v), flavor).unwrap_or_else(|e| panic!("built-in class {v}: {e}"));
    Term {
        coeff,
        body: Body::Class(c),
    }
}

fn scalar(coeff: ParamExpr, scalar: Scalar) -> ScalarTerm {
    ScalarTerm { coeff, scalar }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn xs(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("x_{k}")).collect()
}

/// The fifteen degree-3 Gauss patterns in the order of the `x_k`.
pub const LI3_PATTERNS: [&str; 15] = [
    "XYXYZZ", "XYXZZY", "XYZZXY", "XYYZXZ", "XXYZYZ", "XYZYZX", "XYYXZZ", "XXYZZY", "XYZZYX",
    "XYZYXZ", "XYXZYZ", "XYZXZY", "XYZXYZ", "XXYYZZ", "XYYZZX",
];

/// Dotted degree-3 patterns `x_16 .. x_21`.
pub const GLI3_EXTRA: [&str; 6] = ["X.X.YY", "X.YYX.", "XXY.Y.", "XY.Y.X", "XY.XY.", "X.YX.Y"];

pub const PRESET_NAMES: [&str; 15] = [
    "CI2", "CI3", "GCI3", "LI2", "LI3", "GLI3", "FI2", "FI3", "GFI3", "FI2~", "J+", "J-", "St",
    "J+3", "St3",
];

impl Preset {
    fn new(name: &str, classes: &[CurveClass], params: Vec<String>, mode: Mode) -> Self {
        Preset {
            name: name.to_string(),
            classes: classes.to_vec(),
            params,
            terms: Vec::new(),
            scalars: Vec::new(),
            mode,
        }
    }

    /// `I_n` / `GI_n` with caller-supplied terms, on any class.
    pub fn generic(name: &str, terms: Vec<(String, Pattern)>, mode: Mode) -> Self {
        let mut preset = Preset::new(name, &[], Vec::new(), mode);
        for (param, v) in terms {
            if !preset.params.contains(&param) {
                preset.params.push(param.clone());
            }
            preset.terms.push(Term {
                coeff: ParamExpr::param(&param),
                body: Body::Angle(v),
            });
        }
        preset
    }

    pub fn ci2() -> Self {
        let mut x = Preset::new(
            "CI2",
            &[CurveClass::Closed],
            names(&["s", "t", "u"]),
            Mode::Sign,
        );
        x.terms = vec![
            angle(p("t"), "XXYY"),
            angle(-p("t"), "XYYX"),
            angle(p("u"), "XYXY"),
        ];
        x.scalars = vec![
            scalar(p("s"), Scalar::N),
            scalar(half(p("t")), Scalar::One),
            scalar(-half(p("t")), Scalar::ISquared),
        ];
        x
    }

    pub fn ci3() -> Self {
        let mut x = Preset::new("CI3", &[CurveClass::Closed], names(&["s", "t"]), Mode::Sign);
        x.terms = vec![
            class(p("s"), "XYXYZZ", Flavor::Plain),
            class(p("t"), "XXYYZZ", Flavor::Plain),
        ];
        x.scalars = vec![scalar(ParamExpr::from_int(1), Scalar::I)];
        x
    }

    pub fn gci3() -> Self {
        let mut x = Self::ci3();
        x.name = "GCI3".into();
        x.params.push("u".into());
        x.terms.push(class(p("u"), "X.X.YY", Flavor::Marked));
        x
    }

    pub fn li2() -> Self {
        let mut x = Preset::new(
            "LI2",
            &[CurveClass::Long],
            names(&["s", "t", "u", "v"]),
            Mode::Sign,
        );
        x.terms = vec![
            angle(p("t"), "XXYY"),
            angle(p("u"), "XYYX"),
            angle(p("v"), "XYXY"),
        ];
        x.scalars = vec![
            scalar(p("s"), Scalar::N),
            scalar(-half(p("t")), Scalar::ISquared),
        ];
        x
    }

    pub fn li3() -> Self {
        let mut x = Preset::new("LI3", &[CurveClass::Long], xs(15), Mode::Sign);
        x.terms = LI3_PATTERNS
            .iter()
            .enumerate()
            .map(|(k, v)| angle(p(&format!("x_{}", k + 1)), v))
            .collect();
        x.scalars = vec![scalar(ParamExpr::from_int(1), Scalar::I)];
        x
    }

    pub fn gli3() -> Self {
        let mut x = Self::li3();
        x.name = "GLI3".into();
        x.params = xs(21);
        for (k, v) in GLI3_EXTRA.iter().enumerate() {
            x.terms.push(angle(p(&format!("x_{}", k + 16)), v));
        }
        x
    }

    fn fi2_shape(name: &str, n: [&str; 7], mode: Mode) -> Self {
        let [pp, q, r, s, t, u, v] = n;
        let mut x = Preset::new(name, &[CurveClass::Front], names(&n), mode);
        x.terms = vec![
            angle(p(r), "XXYY"),
            angle(-p(r), "XYYX"),
            angle(p(s), "XYXY"),
            angle(p(t), "KXX"),
            angle(p(t), "XXK"),
            angle(-p(t), "XKX"),
            angle(p(u), "KK"),
        ];
        x.scalars = vec![
            scalar(p(pp), Scalar::NPlus),
            scalar(p(q), Scalar::NMinus),
            scalar(p(v), Scalar::C),
            scalar(half(p(r)), Scalar::One),
            scalar(-half(p(r)), Scalar::ISquared),
        ];
        x
    }

    pub fn fi2() -> Self {
        Self::fi2_shape("FI2", ["p", "q", "r", "s", "t", "u", "v"], Mode::Sign)
    }

    /// Ring-valued `FI2`; parameters `(p, q, x, z, t, v, r)` sit where `FI2`
    /// has `(p, q, r, s, t, u, v)`.
    pub fn fi2_ring() -> Self {
        Self::fi2_shape("FI2~", ["p", "q", "x", "z", "t", "v", "r"], Mode::Rho)
    }

    /// Smooth part `CI3(x, y)` plus cusp classes. The third smooth parameter
    /// `z` is accepted and unused.
    pub fn fi3() -> Self {
        let mut x = Preset::new(
            "FI3",
            &[CurveClass::Front],
            names(&["x", "y", "z", "p", "q", "r", "s", "t"]),
            Mode::Sign,
        );
        x.terms = vec![
            class(p("x"), "XYXYZZ", Flavor::Plain),
            class(p("y"), "XXYYZZ", Flavor::Plain),
            class(p("p"), "XKXYY", Flavor::Front),
            class(p("q"), "KXXYY", Flavor::Front),
            class(p("r"), "XKYXY", Flavor::Front),
            class(p("s"), "XXKK", Flavor::Front),
            class(p("t"), "KKK", Flavor::Front),
        ];
        x.scalars = vec![scalar(ParamExpr::from_int(1), Scalar::I)];
        x
    }

    pub fn gfi3() -> Self {
        let mut x = Preset::new(
            "GFI3",
            &[CurveClass::Front],
            names(&["x", "y", "z", "p", "q", "r", "s", "t", "u", "v", "h"]),
            Mode::Sign,
        );
        x.terms = vec![
            class(p("x"), "XYXYZZ", Flavor::Plain),
            class(p("y"), "XXYYZZ", Flavor::Plain),
            class(p("z"), "X.X.YY", Flavor::Marked),
            class(p("p"), "XKXYY", Flavor::Front),
            class(p("q"), "KXXYY", Flavor::Front),
            class(p("r"), "XKYXY", Flavor::Front),
            class(p("s"), "KKK", Flavor::Front),
            class(p("t"), "XXKK", Flavor::Front),
            class(p("u"), "K.XX", Flavor::Front),
            class(p("v"), "KX.X.", Flavor::Front),
            class(p("h"), "K.K", Flavor::Front),
        ];
        x.scalars = vec![scalar(ParamExpr::from_int(1), Scalar::I)];
        x
    }

    /// Looks up a preset by its command-line name. Arnold triples and the
    /// degree-3 invariants are not presets; see [`arnold`] and
    /// [`arnold_degree3`].
    pub fn by_name(name: &str) -> Result<Self, InvariantError> {
        Ok(match name {
            "CI2" => Self::ci2(),
            "CI3" => Self::ci3(),
            "GCI3" => Self::gci3(),
            "LI2" => Self::li2(),
            "LI3" => Self::li3(),
            "GLI3" => Self::gli3(),
            "FI2" => Self::fi2(),
            "FI3" => Self::fi3(),
            "GFI3" => Self::gfi3(),
            "FI2~" => Self::fi2_ring(),
            _ => return Err(InvariantError::UnknownPreset(name.to_string())),
        })
    }

    pub fn applies_to(&self, class: CurveClass) -> bool {
        self.classes.is_empty() || self.classes.contains(&class)
    }

    fn check_class(&self, w: &EtaleWord) -> Result<(), InvariantError> {
        if self.applies_to(w.class()) {
            Ok(())
        } else {
            Err(InvariantError::WrongClass {
                preset: self.name.clone(),
                expected: self
                    .classes
                    .iter()
                    .map(|c| c.name())
                    .collect::<Vec<_>>()
                    .join("/"),
                found: w.class(),
            })
        }
    }

    pub fn evaluate(&self, w: &EtaleWord) -> Result<ParamExpr, InvariantError> {
        self.check_class(w)?;
        let summary = counts(w);
        let mut out = ParamExpr::zero();
        for term in &self.terms {
            match &term.body {
                Body::Angle(v) => {
                    let x = pair(v, w, self.mode)?;
                    out += &term.coeff.scale(&x);
                }
                Body::Class(c) => {
                    for (s, v) in &c.terms {
                        let x = pair(v, w, self.mode)?.scale(&int(*s));
                        out += &term.coeff.scale(&x);
                    }
                }
            }
        }
        for st in &self.scalars {
            out += &st.coeff.scale_rational(&st.scalar.value(&summary));
        }
        Ok(out)
    }

    /// Evaluates with the named parameters fixed; unknown names are rejected.
    pub fn evaluate_with(
        &self,
        w: &EtaleWord,
        params: &ParamValues,
        ring: &RingValues,
    ) -> Result<ParamExpr, InvariantError> {
        self.check_params(params.keys().map(String::as_str))?;
        Ok(self.evaluate(w)?.specialize_partial(params, ring))
    }

    pub fn check_params<'a>(
        &self,
        given: impl Iterator<Item = &'a str>,
    ) -> Result<(), InvariantError> {
        for name in given {
            if !self.params.iter().any(|p| p == name) {
                return Err(InvariantError::UnknownParam {
                    preset: self.name.clone(),
                    name: name.to_string(),
                    known: self.params.join(","),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Preset {
    /// Human-readable definition, e.g. `s*n + <t*XXYY - t*XYYX + u*XYXY> + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for st in &self.scalars {
            parts.push(format!("({})*{}", st.coeff, st.scalar.symbol()));
        }
        for t in &self.terms {
            match &t.body {
                Body::Angle(v) => parts.push(format!("({})*<{v}>", t.coeff)),
                Body::Class(c) => {
                    let v = c.terms.first().map(|t| t.1.to_string()).unwrap_or_default();
                    parts.push(format!("({})*[{v}]", t.coeff))
                }
            }
        }
        write!(f, "{} = {}", self.name, parts.join(" + "))
    }
}

/// Arnold's `J+`, `J-` and `St`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arnold {
    pub j_plus: Rational,
    pub j_minus: Rational,
    pub st: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArnoldKind {
    JPlus,
    JMinus,
    St,
}

impl ArnoldKind {
    pub const ALL: [ArnoldKind; 3] = [ArnoldKind::JPlus, ArnoldKind::JMinus, ArnoldKind::St];

    pub fn name(self) -> &'static str {
        match self {
            ArnoldKind::JPlus => "J+",
            ArnoldKind::JMinus => "J-",
            ArnoldKind::St => "St",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "J+" => Some(ArnoldKind::JPlus),
            "J-" => Some(ArnoldKind::JMinus),
            "St" => Some(ArnoldKind::St),
            _ => None,
        }
    }
}

impl Arnold {
    pub fn get(&self, k: ArnoldKind) -> &Rational {
        match k {
            ArnoldKind::JPlus => &self.j_plus,
            ArnoldKind::JMinus => &self.j_minus,
            ArnoldKind::St => &self.st,
        }
    }
}

impl fmt::Display for Arnold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.j_plus, self.j_minus, self.st)
    }
}

fn tuple(values: &[(i64, i64)]) -> Vec<Rational> {
    values.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// Parameter tuples giving `(J+, J-, St)` for each class, in preset order.
pub fn arnold_tuples(class: CurveClass) -> [Vec<Rational>; 3] {
    match class {
        CurveClass::Closed => [
            tuple(&[(-1, 2), (1, 1), (-3, 1)]),
            tuple(&[(-3, 2), (1, 1), (-3, 1)]),
            tuple(&[(1, 4), (-1, 2), (1, 2)]),
        ],
        CurveClass::Long => [
            tuple(&[(-1, 2), (1, 1), (-1, 1), (-3, 1)]),
            tuple(&[(-3, 2), (1, 1), (-1, 1), (-3, 1)]),
            tuple(&[(1, 4), (-1, 2), (1, 2), (1, 2)]),
        ],
        CurveClass::Front => [
            tuple(&[(-1, 2), (-3, 2), (1, 1), (-3, 1), (1, 2), (1, 4), (-3, 4)]),
            tuple(&[(-3, 2), (-1, 2), (1, 1), (-3, 1), (1, 2), (1, 4), (1, 4)]),
            tuple(&[(1, 4), (1, 4), (-1, 2), (1, 2), (-1, 4), (-1, 8), (3, 8)]),
        ],
    }
}

fn degree2_preset(class: CurveClass) -> Preset {
    match class {
        CurveClass::Closed => Preset::ci2(),
        CurveClass::Long => Preset::li2(),
        CurveClass::Front => Preset::fi2(),
    }
}

fn arnold_of(w: &EtaleWord, class: CurveClass) -> Result<Arnold, InvariantError> {
    let preset = degree2_preset(class);
    let value = preset.evaluate(w)?;
    let [a, b, c] = arnold_tuples(class);
    let at = |vals: Vec<Rational>| -> Result<Rational, InvariantError> {
        let params: ParamValues = preset.params.iter().cloned().zip(vals).collect();
        Ok(value.specialize(&params, &RingValues::new())?)
    };
    Ok(Arnold {
        j_plus: at(a)?,
        j_minus: at(b)?,
        st: at(c)?,
    })
}

pub fn arnold_closed(w: &EtaleWord) -> Result<Arnold, InvariantError> {
    arnold_of(w, CurveClass::Closed)
}

pub fn arnold_long(w: &EtaleWord) -> Result<Arnold, InvariantError> {
    arnold_of(w, CurveClass::Long)
}

pub fn arnold_front(w: &EtaleWord) -> Result<Arnold, InvariantError> {
    arnold_of(w, CurveClass::Front)
}

/// Dispatches on the word's class.
pub fn arnold(w: &EtaleWord) -> Result<Arnold, InvariantError> {
    arnold_of(w, w.class())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree3 {
    /// Unchanged by II⁻ and III.
    JPlus3,
    /// Unchanged by II⁺ and II⁻.
    St3,
}

impl Degree3 {
    pub fn params(self) -> Vec<String> {
        match self {
            Degree3::JPlus3 => names(&["s", "t", "u", "v"]),
            Degree3::St3 => names(&["p", "q", "r", "s", "t", "u", "v", "x", "y", "z"]),
        }
    }
}

/// Which substitution to use for the degree-3 invariants.
///
/// `AsPrinted` is the original substitution. It is not invariant under the moves;
/// `Corrected` differs in two entries for each invariant (`x_15`/`x_17` swapped
/// for `J+3`; `x_3 = 2y`, `x_17 = y` for `St3`) and is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Degree3Form {
    #[default]
    Corrected,
    AsPrinted,
}

/// The 21 values substituted for `x_1 .. x_21` of `GLI3`.
pub fn degree3_substitution(which: Degree3, form: Degree3Form) -> Vec<ParamExpr> {
    let e = |s: &str| -> ParamExpr { s.parse().expect("built-in expression") };
    let mut x: Vec<ParamExpr> = match which {
        Degree3::JPlus3 => [
            "s + t - v",
            "s - t + u",
            "-s + t + v",
            "-s + 3*t - u",
            "s + t - v",
            "2*t - v",
            "s",
            "s",
            "t",
            "u",
            "2*t - v",
            "-2*s + 4*t - u",
            "-2*s + 2*t + v",
            "s - t + v",
            "t/2",
            "s/2",
            "v",
            "s/2",
            "t/2",
            "-s + 2*t - u/2",
            "u/2",
        ]
        .iter()
        .map(|s| e(s))
        .collect(),
        Degree3::St3 => [
            "2*u", "p", "2*s", "q", "2*x", "2*y", "2*u", "2*x", "2*y", "2*z", "r", "2*z", "2*z",
            "s", "t", "u", "v", "x", "y", "z", "z",
        ]
        .iter()
        .map(|s| e(s))
        .collect(),
    };
    if form == Degree3Form::Corrected {
        match which {
            Degree3::JPlus3 => x.swap(14, 16),
            Degree3::St3 => {
                x[2] = e("2*y");
                x[16] = e("y");
            }
        }
    }
    x
}

/// `J+3` or `St3` of a long word, free parameters symbolic.
pub fn arnold_degree3(
    w: &EtaleWord,
    which: Degree3,
    form: Degree3Form,
) -> Result<ParamExpr, InvariantError> {
    let value = Preset::gli3().evaluate(w)?;
    let map: BTreeMap<String, ParamExpr> = xs(21)
        .into_iter()
        .zip(degree3_substitution(which, form))
        .collect();
    Ok(value.substitute(&map))
}

/// Ring values `a+ = a- = v`.
pub fn ring_at(v: Rational) -> RingValues {
    let mut r = RingValues::new();
    r.insert(RingVar::APlus, v.clone());
    r.insert(RingVar::AMinus, v);
    r
}

/// `FI2~` with `a± = -1`, renamed into `FI2`'s parameters.
pub fn fi2_ring_at_minus_one(w: &EtaleWord) -> Result<ParamExpr, InvariantError> {
    let v = Preset::fi2_ring()
        .evaluate(w)?
        .specialize_partial(&ParamValues::new(), &ring_at(int(-1)));
    let rename: BTreeMap<&str, &str> = [("x", "r"), ("z", "s"), ("v", "u"), ("r", "v")]
        .into_iter()
        .collect();
    Ok(v.rename(&rename))
}
