//! Letters, alphabets and concrete words.
//!
//! An [`EtaleWord`] is always stored in canonical form: letters are numbered
//! by first occurrence, so two words are isomorphic exactly when they are
//! equal. Names are generated on output (crossings `A..Z, A1, ..`, cusps
//! `K1, K2, ..`).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::RingVar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Projection {
    MinusOne,
    PlusOne,
    APlus,
    AMinus,
    BPlus,
    BMinus,
}

impl Projection {
    pub const SMOOTH: [Projection; 2] = [Projection::PlusOne, Projection::MinusOne];
    pub const FRONT: [Projection; 4] = [
        Projection::APlus,
        Projection::AMinus,
        Projection::BPlus,
        Projection::BMinus,
    ];

    pub fn sign(self) -> i64 {
        match self {
            Projection::MinusOne | Projection::APlus | Projection::AMinus => -1,
            Projection::PlusOne | Projection::BPlus | Projection::BMinus => 1,
        }
    }

    pub fn is_smooth(self) -> bool {
        matches!(self, Projection::MinusOne | Projection::PlusOne)
    }

    /// The subscript ε of a front projection.
    pub fn subscript(self) -> Option<i64> {
        match self {
            Projection::APlus | Projection::BPlus => Some(1),
            Projection::AMinus | Projection::BMinus => Some(-1),
            _ => None,
        }
    }

    /// True for `a±`.
    pub fn is_a(self) -> bool {
        matches!(self, Projection::APlus | Projection::AMinus)
    }

    /// Image in `Q[a+, a-]` as (sign, generator): `a±` maps to `a±`, `b±` to `-a±`.
    pub fn ring_image(self) -> Option<(i64, RingVar)> {
        match self {
            Projection::APlus => Some((1, RingVar::APlus)),
            Projection::AMinus => Some((1, RingVar::AMinus)),
            Projection::BPlus => Some((-1, RingVar::APlus)),
            Projection::BMinus => Some((-1, RingVar::AMinus)),
            _ => None,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Projection::MinusOne => "-",
            Projection::PlusOne => "+",
            Projection::APlus => "a+",
            Projection::AMinus => "a-",
            Projection::BPlus => "b+",
            Projection::BMinus => "b-",
        }
    }

    pub fn from_code(code: &str) -> Option<Projection> {
        Some(match code {
            "-" => Projection::MinusOne,
            "+" => Projection::PlusOne,
            "a+" => Projection::APlus,
            "a-" => Projection::AMinus,
            "b+" => Projection::BPlus,
            "b-" => Projection::BMinus,
            _ => return None,
        })
    }

    pub fn smooth_from_sign(sign: i64) -> Projection {
        if sign < 0 {
            Projection::MinusOne
        } else {
            Projection::PlusOne
        }
    }

    /// `tau` on smooth projections, `tau1` on front ones.
    pub fn flip(self) -> Projection {
        if self.is_smooth() {
            Involution::Tau.apply(self).expect("smooth")
        } else {
            Involution::Tau1.apply(self).expect("front")
        }
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Involution {
    Tau,
    Tau1,
    Tau2,
}

impl Involution {
    /// `None` outside the involution's alphabet.
    pub fn apply(self, p: Projection) -> Option<Projection> {
        use Projection::*;
        Some(match (self, p) {
            (Involution::Tau, MinusOne) => PlusOne,
            (Involution::Tau, PlusOne) => MinusOne,
            (Involution::Tau1, APlus) => BPlus,
            (Involution::Tau1, BPlus) => APlus,
            (Involution::Tau1, AMinus) => BMinus,
            (Involution::Tau1, BMinus) => AMinus,
            (Involution::Tau2, APlus) => BMinus,
            (Involution::Tau2, BMinus) => APlus,
            (Involution::Tau2, AMinus) => BPlus,
            (Involution::Tau2, BPlus) => AMinus,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveClass {
    Closed,
    Long,
    Front,
}

impl CurveClass {
    pub fn name(self) -> &'static str {
        match self {
            CurveClass::Closed => "closed",
            CurveClass::Long => "long",
            CurveClass::Front => "front",
        }
    }

    pub fn is_smooth(self) -> bool {
        self != CurveClass::Front
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveClass {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        match s {
            "closed" => Ok(CurveClass::Closed),
            "long" => Ok(CurveClass::Long),
            "front" => Ok(CurveClass::Front),
            _ => Err(WordError::Invalid(format!("unknown curve class `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterKind {
    Crossing,
    Cusp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub kind: LetterKind,
    pub projection: Projection,
}

impl Letter {
    pub fn crossing(projection: Projection) -> Self {
        Letter {
            kind: LetterKind::Crossing,
            projection,
        }
    }

    pub fn cusp(projection: Projection) -> Self {
        Letter {
            kind: LetterKind::Cusp,
            projection,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("letter `{name}` occurs {count} times")]
    Gauss { name: String, count: usize },
    #[error("cusp `{0}` in a word that is not a front")]
    CuspInSmooth(String),
    #[error("{0} words need an `index` line")]
    MissingIndex(CurveClass),
    #[error("long words take no `index` line; their index is computed")]
    ForbiddenIndex,
    #[error("letter `{name}` has projection {first} and later {second}")]
    InconsistentCode {
        name: String,
        first: String,
        second: String,
    },
    #[error("front words need an even number of cusps, found {0}")]
    OddCusps(usize),
    #[error("{op} is not defined for {class} words")]
    Unsupported { op: &'static str, class: CurveClass },
    #[error("{0}")]
    Invalid(String),
}

/// A (fake) nanoword together with its curve class and index header.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaleWord {
    class: CurveClass,
    letters: Vec<Letter>,
    seq: Vec<usize>,
    index_meta: Option<i64>,
    /// First and (for crossings) second position of every letter.
    pos: Vec<(usize, usize)>,
}

/// Marker for "no second occurrence" in the position table.
pub const NONE: usize = usize::MAX;

pub fn crossing_name(k: usize) -> String {
    let c = (b'A' + (k % 26) as u8) as char;
    if k < 26 {
        c.to_string()
    } else {
        format!("{c}{}", k / 26)
    }
}

pub fn cusp_name(k: usize) -> String {
    format!("K{}", k + 1)
}

impl EtaleWord {
    /// Builds a word from letters and an occurrence sequence of letter ids,
    /// validating every structural condition and canonicalizing.
    pub fn new(
        class: CurveClass,
        letters: Vec<Letter>,
        seq: Vec<usize>,
        index_meta: Option<i64>,
    ) -> Result<Self, WordError> {
        match (class, index_meta) {
            (CurveClass::Long, Some(_)) => return Err(WordError::ForbiddenIndex),
            (CurveClass::Closed | CurveClass::Front, None) => {
                return Err(WordError::MissingIndex(class))
            }
            _ => {}
        }
        let mut count = vec![0usize; letters.len()];
        for &l in &seq {
            let slot = count.get_mut(l).ok_or_else(|| {
                WordError::Invalid(format!("occurrence of undeclared letter id {l}"))
            })?;
            *slot += 1;
        }
        let mut cusps = 0;
        for (id, (letter, &c)) in letters.iter().zip(&count).enumerate() {
            let name = || format!("#{id}");
            if c == 0 {
                continue;
            }
            if letter.projection.is_smooth() != class.is_smooth() {
                return Err(WordError::Invalid(format!(
                    "projection {} does not belong to the {} alphabet",
                    letter.projection, class
                )));
            }
            match letter.kind {
                LetterKind::Crossing if c != 2 => {
                    return Err(WordError::Gauss {
                        name: name(),
                        count: c,
                    })
                }
                LetterKind::Cusp => {
                    if class != CurveClass::Front {
                        return Err(WordError::CuspInSmooth(name()));
                    }
                    if c != 1 {
                        return Err(WordError::Gauss {
                            name: name(),
                            count: c,
                        });
                    }
                    cusps += 1;
                }
                _ => {}
            }
        }
        if cusps % 2 == 1 {
            return Err(WordError::OddCusps(cusps));
        }
        Ok(Self::canonical(class, &letters, &seq, index_meta))
    }

    /// Relabels letters by first occurrence, dropping unused ones.
    fn canonical(
        class: CurveClass,
        letters: &[Letter],
        seq: &[usize],
        index_meta: Option<i64>,
    ) -> Self {
        let mut map = vec![NONE; letters.len()];
        let mut new_letters = Vec::new();
        let mut new_seq = Vec::with_capacity(seq.len());
        let mut pos = Vec::new();
        for (p, &l) in seq.iter().enumerate() {
            if map[l] == NONE {
                map[l] = new_letters.len();
                new_letters.push(letters[l]);
                pos.push((p, NONE));
            } else {
                pos[map[l]].1 = p;
            }
            new_seq.push(map[l]);
        }
        EtaleWord {
            class,
            letters: new_letters,
            seq: new_seq,
            index_meta,
            pos,
        }
    }

    /// Builds a word from named letters; `occurrences` lists names.
    pub fn from_names(
        class: CurveClass,
        decls: &[(&str, Letter)],
        occurrences: &[&str],
        index_meta: Option<i64>,
    ) -> Result<Self, WordError> {
        let ids: HashMap<&str, usize> = decls.iter().enumerate().map(|(i, d)| (d.0, i)).collect();
        if ids.len() != decls.len() {
            return Err(WordError::Invalid("duplicate letter name".into()));
        }
        let seq = occurrences
            .iter()
            .map(|n| {
                ids.get(n)
                    .copied()
                    .ok_or_else(|| WordError::Invalid(format!("undeclared letter `{n}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let letters = decls.iter().map(|d| d.1).collect();
        Self::new(class, letters, seq, index_meta).map_err(|e| rename_error(e, decls))
    }

    /// Smooth word from a string of single-character names and a sign per
    /// letter in order of first occurrence, e.g. `smooth(Long, "ABAB", &[1, -1], None)`.
    pub fn smooth(
        class: CurveClass,
        word: &str,
        signs: &[i64],
        index_meta: Option<i64>,
    ) -> Result<Self, WordError> {
        let mut ids: Vec<char> = Vec::new();
        let mut seq = Vec::new();
        for ch in word.chars().filter(|c| !c.is_whitespace()) {
            let id = match ids.iter().position(|&c| c == ch) {
                Some(i) => i,
                None => {
                    ids.push(ch);
                    ids.len() - 1
                }
            };
            seq.push(id);
        }
        if signs.len() != ids.len() {
            return Err(WordError::Invalid(format!(
                "{} letters but {} signs",
                ids.len(),
                signs.len()
            )));
        }
        let letters = signs
            .iter()
            .map(|&s| Letter::crossing(Projection::smooth_from_sign(s)))
            .collect();
        Self::new(class, letters, seq, index_meta)
    }

    pub fn empty(class: CurveClass, index_meta: Option<i64>) -> Result<Self, WordError> {
        Self::new(class, Vec::new(), Vec::new(), index_meta)
    }

    pub fn class(&self) -> CurveClass {
        self.class
    }

    pub fn index_meta(&self) -> Option<i64> {
        self.index_meta
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, id: usize) -> Letter {
        self.letters[id]
    }

    /// Occurrence sequence as letter ids.
    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn first(&self, id: usize) -> usize {
        self.pos[id].0
    }

    /// Second position of a crossing, [`NONE`] for a cusp.
    pub fn second(&self, id: usize) -> usize {
        self.pos[id].1
    }

    pub fn crossing_count(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| l.kind == LetterKind::Crossing)
            .count()
    }

    pub fn cusp_count(&self) -> usize {
        self.letters.len() - self.crossing_count()
    }

    /// Index: the header for closed words and fronts, Σ sign for long words.
    pub fn index(&self) -> i64 {
        match self.index_meta {
            Some(i) => i,
            None => self
                .letters
                .iter()
                .filter(|l| l.kind == LetterKind::Crossing)
                .map(|l| l.projection.sign())
                .sum(),
        }
    }

    /// Display names indexed by letter id.
    pub fn names(&self) -> Vec<String> {
        let (mut cx, mut ck) = (0, 0);
        self.letters
            .iter()
            .map(|l| match l.kind {
                LetterKind::Crossing => {
                    cx += 1;
                    crossing_name(cx - 1)
                }
                LetterKind::Cusp => {
                    ck += 1;
                    cusp_name(ck - 1)
                }
            })
            .collect()
    }

    /// Same letters, new sequence/letters; used by rewrites that keep the
    /// class and header.
    pub fn rebuild(&self, letters: Vec<Letter>, seq: Vec<usize>) -> Result<Self, WordError> {
        Self::new(self.class, letters, seq, self.index_meta)
    }

    pub fn with_index_meta(&self, index_meta: Option<i64>) -> Result<Self, WordError> {
        Self::new(
            self.class,
            self.letters.clone(),
            self.seq.clone(),
            index_meta,
        )
    }

    /// The same occurrence sequence read as a closed word (cusps removed for
    /// fronts). Used where a closed smooth word is required.
    pub fn closure(&self) -> EtaleWord {
        let keep: Vec<usize> = self
            .seq
            .iter()
            .copied()
            .filter(|&l| self.letters[l].kind == LetterKind::Crossing)
            .collect();
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let sign = l.projection.sign();
                Letter::crossing(Projection::smooth_from_sign(sign))
            })
            .collect::<Vec<_>>();
        Self::canonical(CurveClass::Closed, &letters, &keep, Some(self.index()))
    }

    /// Moves the base point past the first letter.
    pub fn base_point_move(&self) -> Result<Self, WordError> {
        if self.class == CurveClass::Long {
            return Err(WordError::Unsupported {
                op: "base point move",
                class: self.class,
            });
        }
        if self.is_empty() {
            return Err(WordError::Invalid(
                "base point move needs a nonempty word".into(),
            ));
        }
        let head = self.seq[0];
        let mut letters = self.letters.clone();
        if letters[head].kind == LetterKind::Crossing {
            letters[head].projection = letters[head].projection.flip();
        }
        let mut seq = self.seq[1..].to_vec();
        seq.push(head);
        self.rebuild(letters, seq)
    }

    fn smooth_only(&self, op: &'static str) -> Result<(), WordError> {
        if self.class == CurveClass::Front {
            Err(WordError::Unsupported {
                op,
                class: self.class,
            })
        } else {
            Ok(())
        }
    }

    fn tau_all(&self) -> Vec<Letter> {
        self.letters
            .iter()
            .map(|l| Letter::crossing(l.projection.flip()))
            .collect()
    }

    /// Reverses the orientation: reversed sequence, τ on every letter.
    pub fn reverse_orientation(&self) -> Result<Self, WordError> {
        self.smooth_only("orientation reversal")?;
        let seq = self.seq.iter().rev().copied().collect();
        Self::new(self.class, self.tau_all(), seq, self.index_meta.map(|i| -i))
    }

    /// Mirror image: τ on every letter, order kept.
    pub fn reflect(&self) -> Result<Self, WordError> {
        self.smooth_only("reflection")?;
        Self::new(
            self.class,
            self.tau_all(),
            self.seq.clone(),
            self.index_meta.map(|i| -i),
        )
    }

    pub fn serialize(&self) -> String {
        let names = self.names();
        let mut out = format!("class {}\n", self.class);
        if let Some(i) = self.index_meta {
            out.push_str(&format!("index {i}\n"));
        }
        out.push_str("word");
        let mut seen = vec![false; self.letters.len()];
        for &l in &self.seq {
            let letter = self.letters[l];
            out.push(' ');
            match (letter.kind, seen[l]) {
                (LetterKind::Cusp, _) => {
                    out.push_str(&format!("^{}:{}", names[l], letter.projection))
                }
                (LetterKind::Crossing, false) => {
                    out.push_str(&format!("{}:{}", names[l], letter.projection))
                }
                (LetterKind::Crossing, true) => out.push_str(&names[l]),
            }
            seen[l] = true;
        }
        out
    }

    /// Compact one-line form used in reports, e.g. `ABAB(+,-)`.
    pub fn short(&self) -> String {
        let names = self.names();
        let body: String = if self.seq.is_empty() {
            "∅".into()
        } else {
            self.seq
                .iter()
                .map(|&l| match self.letters[l].kind {
                    LetterKind::Cusp => format!("^{}", names[l]),
                    LetterKind::Crossing => names[l].clone(),
                })
                .collect::<Vec<_>>()
                .join(if self.letters.len() > 26 || self.cusp_count() > 0 {
                    " "
                } else {
                    ""
                })
        };
        let projs: Vec<&str> = self.letters.iter().map(|l| l.projection.code()).collect();
        let mut s = format!("{body}({})", projs.join(","));
        if let Some(i) = self.index_meta {
            s.push_str(&format!(" i={i}"));
        }
        s
    }
}

fn rename_error(e: WordError, decls: &[(&str, Letter)]) -> WordError {
    let real = |n: &str| -> String {
        n.strip_prefix('#')
            .and_then(|k| k.parse::<usize>().ok())
            .and_then(|k| decls.get(k))
            .map(|d| d.0.to_string())
            .unwrap_or_else(|| n.to_string())
    };
    match e {
        WordError::Gauss { name, count } => WordError::Gauss {
            name: real(&name),
            count,
        },
        WordError::CuspInSmooth(name) => WordError::CuspInSmooth(real(&name)),
        other => other,
    }
}

impl fmt::Display for EtaleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for EtaleWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        parse_word(s)
    }
}

/// Parses the line-oriented Gauss-code format.
pub fn parse_word(text: &str) -> Result<EtaleWord, WordError> {
    // (line number, column of first char, content without comment)
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    });
    let syntax = |line: usize, column: usize, message: String| WordError::Syntax {
        line,
        column,
        message,
    };
    let eof_line = text.lines().count().max(1);

    let (ln, body) = lines
        .next()
        .ok_or_else(|| syntax(eof_line, 1, "expected `class` line".into()))?;
    let toks = tokens(body);
    let class = match toks.as_slice() {
        [(_, "class"), (c, name)] => name
            .parse::<CurveClass>()
            .map_err(|_| syntax(ln, *c, format!("unknown curve class `{name}`")))?,
        [(c, _), ..] => return Err(syntax(ln, *c, "expected `class closed|long|front`".into())),
        [] => unreachable!("blank lines are skipped"),
    };

    let (mut ln, mut body) = lines
        .next()
        .ok_or_else(|| syntax(eof_line, 1, "expected `word` line".into()))?;
    let mut index_meta = None;
    let toks = tokens(body);
    if toks.first().map(|t| t.1) == Some("index") {
        if class == CurveClass::Long {
            return Err(WordError::ForbiddenIndex);
        }
        index_meta = match toks.as_slice() {
            [_, (c, v)] => Some(
                v.parse::<i64>()
                    .map_err(|_| syntax(ln, *c, format!("bad index `{v}`")))?,
            ),
            _ => return Err(syntax(ln, toks[0].0, "expected `index <integer>`".into())),
        };
        (ln, body) = lines
            .next()
            .ok_or_else(|| syntax(eof_line, 1, "expected `word` line".into()))?;
    } else if class != CurveClass::Long {
        return Err(WordError::MissingIndex(class));
    }

    let toks = tokens(body);
    match toks.first() {
        Some((_, "word")) => {}
        Some((c, t)) => return Err(syntax(ln, *c, format!("expected `word`, found `{t}`"))),
        None => unreachable!("blank lines are skipped"),
    }
    if let Some((extra, b)) = lines.next() {
        return Err(syntax(
            extra,
            tokens(b)[0].0,
            "unexpected content after the `word` line".into(),
        ));
    }

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut letters: Vec<Letter> = Vec::new();
    let mut seq = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for &(col, tok) in &toks[1..] {
        let (is_cusp, rest) = match tok.strip_prefix('^') {
            Some(r) => (true, r),
            None => (false, tok),
        };
        let (name, code) = match rest.split_once(':') {
            Some((n, c)) => (n, Some(c)),
            None => (rest, None),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(syntax(ln, col, format!("bad letter name in `{tok}`")));
        }
        if is_cusp && class != CurveClass::Front {
            return Err(WordError::CuspInSmooth(name.to_string()));
        }
        let projection = match code {
            None => None,
            Some(c) => {
                let p = Projection::from_code(c)
                    .ok_or_else(|| syntax(ln, col, format!("unknown projection code `{c}`")))?;
                if p.is_smooth() != class.is_smooth() {
                    let want = if class.is_smooth() {
                        "+ or -"
                    } else {
                        "a+, a-, b+ or b-"
                    };
                    return Err(syntax(
                        ln,
                        col,
                        format!("projection `{c}` in a {class} word (expected {want})"),
                    ));
                }
                Some(p)
            }
        };
        let kind = if is_cusp {
            LetterKind::Cusp
        } else {
            LetterKind::Crossing
        };
        let id = match ids.get(name) {
            Some(&id) => {
                if letters[id].kind != kind {
                    return Err(syntax(
                        ln,
                        col,
                        format!("`{name}` is used both as a cusp and as a crossing"),
                    ));
                }
                if let Some(p) = projection {
                    if p != letters[id].projection {
                        return Err(WordError::InconsistentCode {
                            name: name.to_string(),
                            first: letters[id].projection.to_string(),
                            second: p.to_string(),
                        });
                    }
                }
                id
            }
            None => {
                let p = projection.ok_or_else(|| {
                    syntax(
                        ln,
                        col,
                        format!("first occurrence of `{name}` needs a projection code"),
                    )
                })?;
                ids.insert(name.to_string(), letters.len());
                names.push(name.to_string());
                letters.push(Letter {
                    kind,
                    projection: p,
                });
                counts.push(0);
                letters.len() - 1
            }
        };
        counts[id] += 1;
        let limit = if is_cusp { 1 } else { 2 };
        if counts[id] > limit {
            return Err(WordError::Gauss {
                name: name.to_string(),
                count: counts[id],
            });
        }
        seq.push(id);
    }
    for (id, &c) in counts.iter().enumerate() {
        if letters[id].kind == LetterKind::Crossing && c != 2 {
            return Err(WordError::Gauss {
                name: names[id].clone(),
                count: c,
            });
        }
    }
    EtaleWord::new(class, letters, seq, index_meta)
}

/// Whitespace-separated tokens with 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((c, b))) => {
                out.push((c, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &line[b..]));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Closed curves `K_i`.
    K,
    /// Long curves `L_i`.
    L,
    /// Fronts `K_{i,k}`.
    KF,
}

impl FromStr for Family {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        match s {
            "K" => Ok(Family::K),
            "L" => Ok(Family::L),
            "KF" => Ok(Family::KF),
            _ => Err(WordError::Invalid(format!(
                "unknown family `{s}` (K, L or KF)"
            ))),
        }
    }
}

impl Family {
    pub fn class(self) -> CurveClass {
        match self {
            Family::K => CurveClass::Closed,
            Family::L => CurveClass::Long,
            Family::KF => CurveClass::Front,
        }
    }
}

/// Kink pattern `A A B B ...` with `count` letters of one projection.
fn kinks(count: usize, p: Projection) -> (Vec<Letter>, Vec<usize>) {
    let letters = vec![Letter::crossing(p); count];
    let seq = (0..count).flat_map(|i| [i, i]).collect();
    (letters, seq)
}

/// Standard curves of each family. `cusps` is `k` (the front has `2k` cusps)
/// and is only meaningful for [`Family::KF`].
pub fn base_curve(family: Family, index: i64, cusps: Option<u32>) -> Result<EtaleWord, WordError> {
    let k = cusps.unwrap_or(0) as usize;
    if family != Family::KF && k != 0 {
        return Err(WordError::Invalid("only fronts carry cusps".into()));
    }
    match family {
        Family::K | Family::KF if index < 0 => Err(WordError::Invalid(format!(
            "base curves K_i need i >= 0, got {index}"
        ))),
        Family::K => {
            let count = if index == 0 { 1 } else { index as usize - 1 };
            let (letters, seq) = kinks(count, Projection::PlusOne);
            EtaleWord::new(CurveClass::Closed, letters, seq, Some(index))
        }
        Family::L => {
            let p = Projection::smooth_from_sign(index.signum());
            let (letters, seq) = kinks(index.unsigned_abs() as usize, p);
            EtaleWord::new(CurveClass::Long, letters, seq, None)
        }
        Family::KF => {
            let count = if index == 0 { 1 } else { index as usize - 1 };
            let (mut letters, mut seq) = kinks(count, Projection::BPlus);
            for j in 0..2 * k {
                let p = if j % 2 == 0 {
                    Projection::APlus
                } else {
                    Projection::BPlus
                };
                seq.push(letters.len());
                letters.push(Letter::cusp(p));
            }
            EtaleWord::new(CurveClass::Front, letters, seq, Some(index))
        }
    }
}
