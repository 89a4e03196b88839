//! Patterns and the pairing `<v, w>`.
//!
//! A pattern is a Gauss word over roles. Crossing roles occur twice, cusp
//! roles once; each role has dimension 1 or 2 (dotted). A match sends roles
//! injectively to letters of the target so that the target, restricted to
//! the chosen letters, reads as the pattern.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{int, Monomial, ParamExpr, RingElem, RingVar};
use crate::word::{EtaleWord, LetterKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("bad pattern `{text}`: {message}")]
    BadPattern { text: String, message: String },
    #[error("the ring-valued pairing needs a front word")]
    RhoOnSmooth,
    #[error("{flavor} classes cannot contain {what}")]
    Flavor { flavor: Flavor, what: &'static str },
    #[error("pattern enumeration is limited to degree 4, got {0}")]
    DegreeTooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Role {
    pub kind: LetterKind,
    pub dim: u8,
}

/// Canonical pattern: roles numbered by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    roles: Vec<Role>,
    seq: Vec<usize>,
}

const CROSSING_NAMES: &[u8] = b"XYZWVUTSRQPONMLJIHGFEDCBA";

impl Pattern {
    /// Builds and canonicalizes; checks occurrence counts.
    pub fn new(roles: Vec<Role>, seq: Vec<usize>) -> Result<Self, PairingError> {
        let bad = |m: String| PairingError::BadPattern {
            text: format!("{seq:?}"),
            message: m,
        };
        let mut count = vec![0; roles.len()];
        for &r in &seq {
            *count
                .get_mut(r)
                .ok_or_else(|| bad(format!("undeclared role {r}")))? += 1;
        }
        for (r, c) in roles.iter().zip(&count) {
            let want = match r.kind {
                LetterKind::Crossing => 2,
                LetterKind::Cusp => 1,
            };
            if *c != want && *c != 0 {
                return Err(bad(format!("role occurs {c} times")));
            }
            if !(1..=2).contains(&r.dim) {
                return Err(bad("dimension must be 1 or 2".into()));
            }
        }
        let mut map = vec![usize::MAX; roles.len()];
        let mut new_roles = Vec::new();
        let new_seq = seq
            .iter()
            .map(|&r| {
                if map[r] == usize::MAX {
                    map[r] = new_roles.len();
                    new_roles.push(roles[r]);
                }
                map[r]
            })
            .collect();
        Ok(Pattern {
            roles: new_roles,
            seq: new_seq,
        })
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn degree(&self) -> usize {
        self.roles.iter().map(|r| r.dim as usize).sum()
    }

    pub fn has_cusps(&self) -> bool {
        self.roles.iter().any(|r| r.kind == LetterKind::Cusp)
    }

    pub fn has_dots(&self) -> bool {
        self.roles.iter().any(|r| r.dim == 2)
    }

    /// Moves the first occurrence to the end. Returns the rotated pattern and
    /// the sign picked up: −1 for an undotted crossing, +1 otherwise.
    pub fn rotate(&self) -> (i64, Pattern) {
        if self.seq.is_empty() {
            return (1, self.clone());
        }
        let head = self.seq[0];
        let mut seq = self.seq[1..].to_vec();
        seq.push(head);
        let r = self.roles[head];
        let sign = if r.kind == LetterKind::Crossing && r.dim == 1 {
            -1
        } else {
            1
        };
        (
            sign,
            Pattern::new(self.roles.clone(), seq).expect("rotation keeps counts"),
        )
    }

    /// Role display names indexed by role id.
    fn names(&self) -> Vec<String> {
        let mut cx = 0;
        self.roles
            .iter()
            .map(|r| {
                let base = match r.kind {
                    LetterKind::Cusp => "K".to_string(),
                    LetterKind::Crossing => {
                        cx += 1;
                        match CROSSING_NAMES.get(cx - 1) {
                            Some(&c) => (c as char).to_string(),
                            None => format!("X{}", cx - 1),
                        }
                    }
                };
                if r.dim == 2 {
                    base + "."
                } else {
                    base
                }
            })
            .collect()
    }
}

impl fmt::Display for Pattern {
    /// Literal syntax: `XYXY`, `X.X.YY`, `KXX`, `K.K`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.seq.is_empty() {
            return f.write_str("1");
        }
        let names = self.names();
        for &r in &self.seq {
            f.write_str(&names[r])?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = PairingError;

    fn from_str(text: &str) -> Result<Self, PairingError> {
        let bad = |m: &str| PairingError::BadPattern {
            text: text.to_string(),
            message: m.to_string(),
        };
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut names: Vec<String> = Vec::new();
        let mut roles: Vec<Role> = Vec::new();
        let mut seq = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            if !c.is_ascii_uppercase() {
                return Err(bad(&format!("unexpected `{c}`")));
            }
            let mut name = c.to_string();
            let kind = if c == 'K' {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    name.push(chars[i]);
                    i += 1;
                }
                LetterKind::Cusp
            } else {
                LetterKind::Crossing
            };
            let dim = if i < chars.len() && chars[i] == '.' {
                i += 1;
                2
            } else {
                1
            };
            // A bare `K` is always a fresh cusp; numbered cusps and crossing
            // letters are looked up by name.
            let existing = if name == "K" {
                None
            } else {
                names.iter().position(|n| *n == name)
            };
            match existing {
                Some(r) => {
                    if roles[r].dim != dim {
                        return Err(bad(&format!("`{name}` is dotted only once")));
                    }
                    if kind == LetterKind::Cusp {
                        return Err(bad(&format!("cusp `{name}` occurs twice")));
                    }
                    seq.push(r);
                }
                None => {
                    names.push(name);
                    roles.push(Role { kind, dim });
                    seq.push(roles.len() - 1);
                }
            }
        }
        Pattern::new(roles, seq).map_err(|e| match e {
            PairingError::BadPattern { message, .. } => bad(&message),
            other => other,
        })
    }
}

/// Role-to-letter assignment; `assignment[role] = letter id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub assignment: Vec<usize>,
}

/// Visits every match of `v` in `w` in lexicographic order of positions.
fn for_each_match(v: &Pattern, w: &EtaleWord, visit: &mut dyn FnMut(&[usize])) {
    let mut assign = vec![usize::MAX; v.roles.len()];
    let mut used = vec![false; w.letters().len()];
    rec(v, w, 0, 0, &mut assign, &mut used, visit);

    fn rec(
        v: &Pattern,
        w: &EtaleWord,
        j: usize,
        from: usize,
        assign: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if j == v.seq.len() {
            visit(assign);
            return;
        }
        let r = v.seq[j];
        if assign[r] != usize::MAX {
            let p = w.second(assign[r]);
            if p >= from {
                rec(v, w, j + 1, p + 1, assign, used, visit);
            }
            return;
        }
        let remaining = v.seq.len() - j;
        let role = v.roles[r];
        let seq = w.seq();
        if seq.len() < from + remaining {
            return;
        }
        for p in from..=seq.len() - remaining {
            let l = seq[p];
            if used[l] || w.first(l) != p || w.letter(l).kind != role.kind {
                continue;
            }
            assign[r] = l;
            used[l] = true;
            rec(v, w, j + 1, p + 1, assign, used, visit);
            used[l] = false;
            assign[r] = usize::MAX;
        }
    }
}

pub fn find_matches(v: &Pattern, w: &EtaleWord) -> Vec<Match> {
    let mut out = Vec::new();
    for_each_match(v, w, &mut |a| {
        out.push(Match {
            assignment: a.to_vec(),
        })
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Sign,
    Rho,
}

/// `<v, w>` as a ring element (an integer in sign mode).
pub fn pair(v: &Pattern, w: &EtaleWord, mode: Mode) -> Result<RingElem, PairingError> {
    match mode {
        Mode::Sign => Ok(RingElem::from_int(pair_sign(v, w))),
        Mode::Rho => {
            if w.class().is_smooth() {
                return Err(PairingError::RhoOnSmooth);
            }
            let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
            for_each_match(v, w, &mut |a| {
                let mut sign = 1;
                let mut m = Monomial::ONE;
                for (role, &l) in v.roles.iter().zip(a) {
                    let (s, var) = w.letter(l).projection.ring_image().expect("front letter");
                    for _ in 0..role.dim {
                        sign *= s;
                        match var {
                            RingVar::APlus => m.a_plus += 1,
                            RingVar::AMinus => m.a_minus += 1,
                        }
                    }
                }
                *acc.entry(m).or_insert(0) += sign;
            });
            Ok(acc.into_iter().fold(RingElem::zero(), |e, (m, c)| {
                e + RingElem::monomial(m, int(c))
            }))
        }
    }
}

/// Sign-mode pairing as an integer.
pub fn pair_sign(v: &Pattern, w: &EtaleWord) -> i64 {
    let mut total = 0;
    for_each_match(v, w, &mut |a| {
        let mut s = 1;
        for (role, &l) in v.roles.iter().zip(a) {
            if role.dim % 2 == 1 {
                s *= w.letter(l).projection.sign();
            }
        }
        total += s;
    });
    total
}

/// `<Σ c_k v_k, w>`.
pub fn angle_bracket(
    terms: &[(ParamExpr, Pattern)],
    w: &EtaleWord,
    mode: Mode,
) -> Result<ParamExpr, PairingError> {
    let mut out = ParamExpr::zero();
    for (c, v) in terms {
        out += &c.scale(&pair(v, w, mode)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Undotted crossings only.
    Plain,
    /// Dotted crossings allowed.
    Marked,
    /// Cusps and dots allowed.
    Front,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Plain => "plain",
            Flavor::Marked => "marked",
            Flavor::Front => "front",
        })
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Flavor::Plain),
            "marked" => Ok(Flavor::Marked),
            "front" => Ok(Flavor::Front),
            _ => Err(format!("unknown flavor `{s}` (plain, marked or front)")),
        }
    }
}

/// Expansion `v_1 + ... + v_2l` of a cyclic class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicClass {
    pub flavor: Flavor,
    pub terms: Vec<(i64, Pattern)>,
}

impl CyclicClass {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, p)) in self.terms.iter().enumerate() {
            match (i, *c < 0) {
                (0, false) => write!(f, "{p}")?,
                (0, true) => write!(f, "-{p}")?,
                (_, false) => write!(f, " + {p}")?,
                (_, true) => write!(f, " - {p}")?,
            }
        }
        Ok(())
    }
}

/// Orbit of `v` under rotation with sign bookkeeping.
pub fn cyclic_class(v: &Pattern, flavor: Flavor) -> Result<CyclicClass, PairingError> {
    match flavor {
        Flavor::Plain if v.has_dots() => {
            return Err(PairingError::Flavor {
                flavor,
                what: "dotted roles",
            })
        }
        Flavor::Plain | Flavor::Marked if v.has_cusps() => {
            return Err(PairingError::Flavor {
                flavor,
                what: "cusp roles",
            })
        }
        _ => {}
    }
    let mut terms = vec![(1, v.clone())];
    let (mut sign, mut cur) = v.rotate();
    // Rotation permutes isomorphism classes, so the orbit first repeats at v.
    while cur != *v {
        terms.push((sign, cur.clone()));
        let (s, next) = cur.rotate();
        sign *= s;
        cur = next;
    }
    if sign < 0 {
        terms.clear();
    }
    Ok(CyclicClass { flavor, terms })
}

/// `[[v], w]`.
pub fn square_bracket(
    c: &CyclicClass,
    w: &EtaleWord,
    mode: Mode,
) -> Result<RingElem, PairingError> {
    let mut out = RingElem::zero();
    for (s, p) in &c.terms {
        out += &pair(p, w, mode)?.scale(&int(*s));
    }
    Ok(out)
}

/// All Gauss patterns of `n` undotted crossing roles, sorted.
pub fn enumerate_patterns(n: usize) -> Result<Vec<Pattern>, PairingError> {
    if n > 4 {
        return Err(PairingError::DegreeTooLarge(n));
    }
    let mut out = Vec::new();
    let mut seq = vec![usize::MAX; 2 * n];
    fill(&mut seq, 0, &mut out);
    let roles = vec![
        Role {
            kind: LetterKind::Crossing,
            dim: 1
        };
        n
    ];
    let mut pats: Vec<Pattern> = out
        .into_iter()
        .map(|s| Pattern::new(roles.clone(), s).expect("perfect matching"))
        .collect();
    pats.sort_by_key(|p| p.to_string());
    return Ok(pats);

    fn fill(seq: &mut [usize], next: usize, out: &mut Vec<Vec<usize>>) {
        let Some(i) = seq.iter().position(|&r| r == usize::MAX) else {
            out.push(seq.to_vec());
            return;
        };
        seq[i] = next;
        for j in i + 1..seq.len() {
            if seq[j] == usize::MAX {
                seq[j] = next;
                fill(seq, next + 1, out);
                seq[j] = usize::MAX;
            }
        }
        seq[i] = usize::MAX;
    }
}

/// Parses `XXYY` and friends, panicking on bad literals. For built-in tables.
pub fn pat(text: &str) -> Pattern {
    text.parse()
        .unwrap_or_else(|e| panic!("built-in pattern `{text}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_word, CurveClass};
    use proptest::prelude::*;

    fn sw(word: &str, signs: &[i64]) -> EtaleWord {
        EtaleWord::smooth(CurveClass::Long, word, signs, None).unwrap()
    }

    #[test]
    fn literal_round_trip() {
        for t in ["XXYY", "X.X.YY", "KXX", "K.K", "XKXYY", "KKK", "XYZXZY"] {
            assert_eq!(pat(t).to_string(), t);
        }
        assert_eq!(pat("YYXX").to_string(), "XXYY");
        assert_eq!(pat("K1XXK2").to_string(), "KXXK");
        assert!("XXY".parse::<Pattern>().is_err());
        assert!("K1K1".parse::<Pattern>().is_err());
        assert!("X.X.".parse::<Pattern>().is_ok());
        assert!("X.X. YY".parse::<Pattern>().is_ok());
        assert!("X.X".parse::<Pattern>().is_err());
        assert!("X.XYY".parse::<Pattern>().is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(pat("X.X.").degree(), 2);
        assert_eq!(pat("XKXYY").degree(), 3);
        assert_eq!(pat("K.K").degree(), 3);
    }

    #[test]
    fn match_examples() {
        let m = find_matches(&pat("XXYY"), &sw("AABB", &[1, 1]));
        assert_eq!(
            m,
            vec![Match {
                assignment: vec![0, 1]
            }]
        );
        assert!(find_matches(&pat("XXYY"), &sw("ABAB", &[1, 1])).is_empty());
        assert_eq!(find_matches(&pat("XYXY"), &sw("ABAB", &[1, 1])).len(), 1);
        // Order is lexicographic in positions.
        let m = find_matches(&pat("XX"), &sw("ABBA", &[1, 1]));
        assert_eq!(
            m.iter().map(|m| m.assignment[0]).collect::<Vec<_>>(),
            vec![0, 1]
        );
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair_sign(&pat("XXYY"), &sw("AABB", &[1, 1])), 1);
        assert_eq!(pair_sign(&pat("XXYY"), &sw("AABB", &[1, -1])), -1);
        let w = sw("ABCACB", &[-1, 1, -1]);
        assert_eq!(pair_sign(&pat("X.X."), &w), 3);
        let f = parse_word("class front\nindex 0\nword ^K1:a+ ^K2:b-").unwrap();
        let got = pair(&pat("KK"), &f, Mode::Rho).unwrap();
        let want = -(RingElem::var(RingVar::APlus) * RingElem::var(RingVar::AMinus));
        assert_eq!(got, want);
        assert_eq!(
            pair(&pat("KK"), &sw("AA", &[1]), Mode::Rho),
            Err(PairingError::RhoOnSmooth)
        );
    }

    #[test]
    fn class_examples() {
        let c = cyclic_class(&pat("XYXYZZ"), Flavor::Plain).unwrap();
        assert_eq!(
            c.to_string(),
            "XYXYZZ - XYXZZY + XYZZXY - XYYZXZ + XXYZYZ - XYZYZX"
        );
        let c = cyclic_class(&pat("XXYYZZ"), Flavor::Plain).unwrap();
        assert_eq!(c.to_string(), "XXYYZZ - XYYZZX");
        let c = cyclic_class(&pat("X.X.YY"), Flavor::Marked).unwrap();
        assert_eq!(c.to_string(), "X.X.YY + X.YYX. + XXY.Y. - XY.Y.X");
        let c = cyclic_class(&pat("KKK"), Flavor::Front).unwrap();
        assert_eq!(c.to_string(), "KKK");
        let c = cyclic_class(&pat("XKXYY"), Flavor::Front).unwrap();
        assert_eq!(c.terms.len(), 5);
        assert!(cyclic_class(&pat("KK"), Flavor::Plain).is_err());
        assert!(cyclic_class(&pat("X.X."), Flavor::Plain).is_err());
    }

    #[test]
    fn odd_orbits_vanish() {
        // XYXY -> -YXYX ~ -XYXY.
        assert!(cyclic_class(&pat("XYXY"), Flavor::Plain).unwrap().is_zero());
        assert!(cyclic_class(&pat("XX"), Flavor::Plain).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let c = cyclic_class(&pat("XXYY"), Flavor::Plain).unwrap();
        assert_eq!(
            square_bracket(&c, &sw("AABB", &[1, 1]), Mode::Sign).unwrap(),
            RingElem::one()
        );
        assert_eq!(
            square_bracket(&c, &sw("ABBA", &[1, -1]), Mode::Sign).unwrap(),
            RingElem::one()
        );
        assert!(square_bracket(&c, &sw("", &[]), Mode::Sign)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn enumeration_counts() {
        let names = |n| {
            enumerate_patterns(n)
                .unwrap()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(1), vec!["XX"]);
        assert_eq!(names(2), vec!["XXYY", "XYXY", "XYYX"]);
        assert_eq!(names(3).len(), 15);
        assert_eq!(names(4).len(), 105);
        assert!(enumerate_patterns(5).is_err());
    }

    /// Independent check: choose letter subsets and compare restricted words.
    fn brute(v: &Pattern, w: &EtaleWord) -> i64 {
        let k = v.roles().len();
        let n = w.letters().len();
        let mut total = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let sub: Vec<usize> = w
                .seq()
                .iter()
                .copied()
                .filter(|&l| mask >> l & 1 == 1)
                .collect();
            let kinds: Vec<_> = w.letters().iter().map(|l| l.kind).collect();
            let roles: Vec<Role> = {
                let mut seen = Vec::new();
                for &l in &sub {
                    if !seen.contains(&l) {
                        seen.push(l);
                    }
                }
                seen.iter()
                    .map(|&l| Role {
                        kind: kinds[l],
                        dim: 1,
                    })
                    .collect()
            };
            let mut order = Vec::new();
            for &l in &sub {
                if !order.contains(&l) {
                    order.push(l);
                }
            }
            let rel: Vec<usize> = sub
                .iter()
                .map(|l| order.iter().position(|x| x == l).unwrap())
                .collect();
            let shape = Pattern::new(roles, rel).unwrap();
            let plain = Pattern::new(
                v.roles()
                    .iter()
                    .map(|r| Role {
                        kind: r.kind,
                        dim: 1,
                    })
                    .collect(),
                v.seq().to_vec(),
            )
            .unwrap();
            if shape == plain {
                let mut s = 1;
                for (role, &l) in v.roles().iter().zip(&order) {
                    if role.dim == 1 {
                        s *= w.letter(l).projection.sign();
                    }
                }
                total += s;
            }
        }
        total
    }

    proptest! {
        #[test]
        fn pairing_agrees_with_subset_brute_force(w in crate::word::tests::smooth_word(7), k in 0usize..15) {
            let pats = ["XX", "XXYY", "XYXY", "XYYX", "X.X.YY", "XY.XY.", "XYXYZZ", "XYZXYZ",
                        "XXYYZZ", "XYYZZX", "X.YYX.", "XYZZYX", "XXYZZY", "XYZYXZ", "X.X."];
            let v = pat(pats[k]);
            prop_assert_eq!(pair_sign(&v, &w), brute(&v, &w));
        }

        #[test]
        fn square_of_index_identity(w in crate::word::tests::smooth_word(8)) {
            let sum: i64 = w.letters().iter().map(|l| l.projection.sign()).sum();
            let rhs = pair_sign(&pat("X.X."), &w)
                + 2 * (pair_sign(&pat("XXYY"), &w) + pair_sign(&pat("XYYX"), &w) + pair_sign(&pat("XYXY"), &w));
            prop_assert_eq!(sum * sum, rhs);
        }

        #[test]
        fn classes_are_rotation_closed(k in 0usize..8) {
            let lits = ["XYXYZZ", "XXYYZZ", "X.X.YY", "XKXYY", "KXXYY", "XKYXY", "XXKK", "K.XX"];
            let flavor = if k < 2 { Flavor::Plain } else if k == 2 { Flavor::Marked } else { Flavor::Front };
            let c = cyclic_class(&pat(lits[k]), flavor).unwrap();
            for (s, p) in &c.terms {
                let (r, q) = p.rotate();
                prop_assert!(c.terms.contains(&(s * r, q)));
            }
        }
    }
}
