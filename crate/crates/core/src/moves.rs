//! Elementary moves on words and seeded random walks.
//!
//! Conventions (positive direction first):
//!
//! * `II+`: create `xAByABz`, `|B| = τ|A|`. `II-`: create `xAByBAz`.
//! * `III`: `xAByACzBCt -> xBAyCAzCBt` when all three projections agree
//!   (smooth) or all are `a`-type / all `b`-type (fronts).
//! * Front self-tangencies, `|B| = τ1|A|`, ε the subscript of `|A|`:
//!   `DII+` creates `AB..AB` with ε = +, `SII+` deletes `AB..AB` with ε = −,
//!   `SII-` creates `AB..BA` with ε = +, `DII-` deletes `AB..BA` with ε = −.
//! * `PI+` creates `xAKByABz` (sign A = sign K) or `xAByAKBz`
//!   (sign A = −sign K); `PI-` creates `xAKByBAz` or `xAByBKAz`
//!   (sign A = −sign K). Always `|B| = τ2|A|`.
//! * `LAMBDA` creates `xAK1K2Ay` with `|K2| = τ1τ2|K1|`, `|A| = a+` when
//!   `|K1|` is `b`-type and `b+` otherwise.
//!
//! Sites never wrap around the base point; the index header is never
//! changed.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{int, rat, Rational};
use crate::genus::closure_genus;
use crate::invariants::ArnoldKind;
use crate::word::{CurveClass, EtaleWord, Involution, Letter, LetterKind, Projection, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("{kind} is not a move on {class} words")]
    WrongClass { kind: MoveKind, class: CurveClass },
    #[error("site does not apply to this word: {0}")]
    StaleSite(String),
    #[error("unknown move `{0}`")]
    UnknownKind(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    IIPlus,
    IIMinus,
    III,
    SIIPlus,
    SIIMinus,
    DIIPlus,
    DIIMinus,
    PiPlus,
    PiMinus,
    Lambda,
}

impl MoveKind {
    pub const SMOOTH: [MoveKind; 3] = [MoveKind::IIPlus, MoveKind::IIMinus, MoveKind::III];
    pub const FRONT: [MoveKind; 8] = [
        MoveKind::SIIPlus,
        MoveKind::SIIMinus,
        MoveKind::DIIPlus,
        MoveKind::DIIMinus,
        MoveKind::III,
        MoveKind::PiPlus,
        MoveKind::PiMinus,
        MoveKind::Lambda,
    ];

    pub fn for_class(class: CurveClass) -> &'static [MoveKind] {
        if class.is_smooth() {
            &Self::SMOOTH
        } else {
            &Self::FRONT
        }
    }

    pub fn applies_to(self, class: CurveClass) -> bool {
        Self::for_class(class).contains(&self)
    }

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::IIPlus => "II+",
            MoveKind::IIMinus => "II-",
            MoveKind::III => "III",
            MoveKind::SIIPlus => "SII+",
            MoveKind::SIIMinus => "SII-",
            MoveKind::DIIPlus => "DII+",
            MoveKind::DIIMinus => "DII-",
            MoveKind::PiPlus => "PI+",
            MoveKind::PiMinus => "PI-",
            MoveKind::Lambda => "LAMBDA",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = MoveError;
    fn from_str(s: &str) -> Result<Self, MoveError> {
        [Self::SMOOTH.as_slice(), Self::FRONT.as_slice()]
            .concat()
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| MoveError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Positive,
    Negative,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Positive => 1,
            Direction::Negative => -1,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Positive => "+",
            Direction::Negative => "-",
        })
    }
}

impl FromStr for Direction {
    type Err = MoveError;
    fn from_str(s: &str) -> Result<Self, MoveError> {
        match s {
            "+" | "positive" | "pos" => Ok(Direction::Positive),
            "-" | "negative" | "neg" => Ok(Direction::Negative),
            _ => Err(MoveError::UnknownKind(format!("direction `{s}`"))),
        }
    }
}

/// Where a move acts. Gaps are indices `0..=len` between occurrences;
/// letters are ids of the word the site was enumerated on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Site {
    /// New pair `AB` at gap `first`, second pair at gap `second >= first`.
    Create {
        first: usize,
        second: usize,
        a: Projection,
    },
    /// New pair around the cusp letter `cusp`, the other pair at `gap`.
    CreateAtCusp {
        cusp: usize,
        gap: usize,
        a: Projection,
    },
    /// New `A K1 K2 A` at `gap`.
    CreateKink { gap: usize, k1: Projection },
    /// Letters removed by a deletion (plus the cusp for `PI` moves, which stays).
    Remove { letters: Vec<usize> },
    /// Letters `A, B, C` of a triple-point move.
    Triple { a: usize, b: usize, c: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub direction: Direction,
    pub site: Site,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: ", self.kind, self.direction)?;
        match &self.site {
            Site::Create { first, second, a } => {
                write!(f, "create gaps ({first},{second}) |A|={a}")
            }
            Site::CreateAtCusp { cusp, gap, a } => {
                write!(f, "create at cusp #{cusp} gap {gap} |A|={a}")
            }
            Site::CreateKink { gap, k1 } => write!(f, "create kink gap {gap} |K1|={k1}"),
            Site::Remove { letters } => write!(f, "remove letters {letters:?}"),
            Site::Triple { a, b, c } => write!(f, "triple letters ({a},{b},{c})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// `AB..AB`
    Interleaved,
    /// `AB..BA`
    Nested,
}

/// Self-tangency moves: shape, required subscript of `|A|` (fronts), and
/// whether the positive direction creates.
fn tangency(kind: MoveKind) -> Option<(Shape, Option<i64>, bool)> {
    Some(match kind {
        MoveKind::IIPlus => (Shape::Interleaved, None, true),
        MoveKind::IIMinus => (Shape::Nested, None, true),
        MoveKind::DIIPlus => (Shape::Interleaved, Some(1), true),
        MoveKind::SIIPlus => (Shape::Interleaved, Some(-1), false),
        MoveKind::SIIMinus => (Shape::Nested, Some(1), true),
        MoveKind::DIIMinus => (Shape::Nested, Some(-1), false),
        _ => return None,
    })
}

/// True when the move adds letters.
pub fn is_creation(kind: MoveKind, dir: Direction) -> bool {
    let positive_creates = match tangency(kind) {
        Some((_, _, c)) => c,
        None => kind != MoveKind::III,
    };
    kind != MoveKind::III && positive_creates == (dir == Direction::Positive)
}

fn tangency_projections(class: CurveClass, eps: Option<i64>) -> Vec<Projection> {
    if class.is_smooth() {
        Projection::SMOOTH.to_vec()
    } else {
        Projection::FRONT
            .into_iter()
            .filter(|p| p.subscript() == eps)
            .collect()
    }
}

fn tau2(p: Projection) -> Projection {
    Involution::Tau2.apply(p).expect("front projection")
}

fn tau12(p: Projection) -> Projection {
    Involution::Tau1.apply(tau2(p)).expect("front projection")
}

fn kink_letter(k1: Projection) -> Projection {
    if k1.sign() < 0 {
        Projection::BPlus
    } else {
        Projection::APlus
    }
}

/// Sign of `|A|` required by a cusp move: form 1 has the new pair around
/// the cusp first, form 2 second.
fn pi_sign(kind: MoveKind, form_one: bool, cusp_sign: i64) -> i64 {
    match (kind, form_one) {
        (MoveKind::PiPlus, true) => cusp_sign,
        _ => -cusp_sign,
    }
}

pub fn enumerate_sites(
    w: &EtaleWord,
    kind: MoveKind,
    dir: Direction,
) -> Result<Vec<MoveSite>, MoveError> {
    if !kind.applies_to(w.class()) {
        return Err(MoveError::WrongClass {
            kind,
            class: w.class(),
        });
    }
    let site = |s: Site| MoveSite {
        kind,
        direction: dir,
        site: s,
    };
    let len = w.len();
    let mut out = Vec::new();
    if let Some((shape, eps, positive_creates)) = tangency(kind) {
        if positive_creates == (dir == Direction::Positive) {
            for first in 0..=len {
                for second in first..=len {
                    for a in tangency_projections(w.class(), eps) {
                        out.push(site(Site::Create { first, second, a }));
                    }
                }
            }
        } else {
            for (a, b) in tangency_pairs(w, shape, eps) {
                out.push(site(Site::Remove {
                    letters: vec![a, b],
                }));
            }
        }
        return Ok(out);
    }
    match (kind, dir) {
        (MoveKind::III, _) => {
            for (a, b, c) in triples(w, dir) {
                out.push(site(Site::Triple { a, b, c }));
            }
        }
        (MoveKind::PiPlus | MoveKind::PiMinus, Direction::Positive) => {
            for cusp in 0..w.letters().len() {
                let l = w.letter(cusp);
                if l.kind != LetterKind::Cusp {
                    continue;
                }
                let pk = w.first(cusp);
                for gap in 0..=len {
                    let form_one = gap > pk;
                    let want = pi_sign(kind, form_one, l.projection.sign());
                    for a in Projection::FRONT {
                        if a.sign() == want {
                            out.push(site(Site::CreateAtCusp { cusp, gap, a }));
                        }
                    }
                }
            }
        }
        (MoveKind::PiPlus | MoveKind::PiMinus, Direction::Negative) => {
            for letters in cusp_pairs(w, kind) {
                out.push(site(Site::Remove { letters }));
            }
        }
        (MoveKind::Lambda, Direction::Positive) => {
            for gap in 0..=len {
                for k1 in Projection::FRONT {
                    out.push(site(Site::CreateKink { gap, k1 }));
                }
            }
        }
        (MoveKind::Lambda, Direction::Negative) => {
            for a in 0..w.letters().len() {
                let p = w.first(a);
                if w.letter(a).kind != LetterKind::Crossing || w.second(a) != p + 3 {
                    continue;
                }
                let (k1, k2) = (w.seq()[p + 1], w.seq()[p + 2]);
                let (l1, l2) = (w.letter(k1), w.letter(k2));
                if l1.kind == LetterKind::Cusp
                    && l2.kind == LetterKind::Cusp
                    && l2.projection == tau12(l1.projection)
                    && w.letter(a).projection == kink_letter(l1.projection)
                {
                    out.push(site(Site::Remove {
                        letters: vec![a, k1, k2],
                    }));
                }
            }
        }
        _ => unreachable!("tangency kinds handled above"),
    }
    Ok(out)
}

/// Sites of every kind and direction for the word's class.
pub fn all_sites(w: &EtaleWord) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for &kind in MoveKind::for_class(w.class()) {
        for dir in [Direction::Positive, Direction::Negative] {
            out.extend(enumerate_sites(w, kind, dir).expect("kind matches class"));
        }
    }
    out
}

fn tangency_pairs(w: &EtaleWord, shape: Shape, eps: Option<i64>) -> Vec<(usize, usize)> {
    let seq = w.seq();
    let mut out = Vec::new();
    for a in 0..w.letters().len() {
        let la = w.letter(a);
        if la.kind != LetterKind::Crossing {
            continue;
        }
        let p = w.first(a);
        let Some(&b) = seq.get(p + 1) else { continue };
        let lb = w.letter(b);
        if b == a || lb.kind != LetterKind::Crossing || w.first(b) != p + 1 {
            continue;
        }
        let adjacent = match shape {
            Shape::Interleaved => w.second(b) == w.second(a) + 1,
            Shape::Nested => w.second(a) == w.second(b) + 1,
        };
        let projections = lb.projection == la.projection.flip()
            && (eps.is_none() || la.projection.subscript() == eps);
        if adjacent && projections {
            out.push((a, b));
        }
    }
    out
}

fn triple_ok(w: &EtaleWord, a: usize, b: usize, c: usize) -> bool {
    if a == b || b == c || a == c {
        return false;
    }
    let ls = [w.letter(a), w.letter(b), w.letter(c)];
    if ls.iter().any(|l| l.kind != LetterKind::Crossing) {
        return false;
    }
    if w.class().is_smooth() {
        ls.iter().all(|l| l.projection == ls[0].projection)
    } else {
        ls.iter()
            .all(|l| l.projection.is_a() == ls[0].projection.is_a())
    }
}

fn triples(w: &EtaleWord, dir: Direction) -> Vec<(usize, usize, usize)> {
    let seq = w.seq();
    let mut out = Vec::new();
    for a in 0..w.letters().len() {
        if w.letter(a).kind != LetterKind::Crossing {
            continue;
        }
        let (a1, a2) = (w.first(a), w.second(a));
        let found = match dir {
            // A B .. A C .. B C
            Direction::Positive => {
                let (Some(&b), Some(&c)) = (seq.get(a1 + 1), seq.get(a2 + 1)) else {
                    continue;
                };
                (w.first(b) == a1 + 1
                    && w.first(c) == a2 + 1
                    && w.second(c) != usize::MAX
                    && w.second(b) != usize::MAX
                    && w.second(c) == w.second(b) + 1)
                    .then_some((b, c))
            }
            // B A .. C A .. C B
            Direction::Negative => {
                if a1 == 0 {
                    continue;
                }
                let (b, c) = (seq[a1 - 1], seq[a2 - 1]);
                (w.first(b) == a1 - 1
                    && w.first(c) == a2 - 1
                    && w.second(b) != usize::MAX
                    && w.second(c) != usize::MAX
                    && w.second(b) == w.second(c) + 1)
                    .then_some((b, c))
            }
        };
        if let Some((b, c)) = found {
            if triple_ok(w, a, b, c) {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Deletable `PI` configurations as `[A, B, K]`.
fn cusp_pairs(w: &EtaleWord, kind: MoveKind) -> Vec<Vec<usize>> {
    let seq = w.seq();
    let mut out = Vec::new();
    for k in 0..w.letters().len() {
        let lk = w.letter(k);
        if lk.kind != LetterKind::Cusp {
            continue;
        }
        let pk = w.first(k);
        if pk == 0 || pk + 1 >= seq.len() {
            continue;
        }
        let (l, r) = (seq[pk - 1], seq[pk + 1]);
        if l == r
            || w.letter(l).kind != LetterKind::Crossing
            || w.letter(r).kind != LetterKind::Crossing
        {
            continue;
        }
        let first_l = w.first(l) == pk - 1;
        let first_r = w.first(r) == pk + 1;
        // (a, b, form one)
        let cand = match (kind, first_l, first_r) {
            // A K B .. A B
            (MoveKind::PiPlus, true, true) if w.second(r) == w.second(l) + 1 => Some((l, r, true)),
            // A B .. A K B
            (MoveKind::PiPlus, false, false) if w.first(r) == w.first(l) + 1 => Some((l, r, false)),
            // A K B .. B A
            (MoveKind::PiMinus, true, true) if w.second(l) == w.second(r) + 1 => Some((l, r, true)),
            // A B .. B K A
            (MoveKind::PiMinus, false, false) if w.first(l) == w.first(r) + 1 => {
                Some((r, l, false))
            }
            _ => None,
        };
        if let Some((a, b, form_one)) = cand {
            let pa = w.letter(a).projection;
            if w.letter(b).projection == tau2(pa)
                && pa.sign() == pi_sign(kind, form_one, lk.projection.sign())
            {
                out.push(vec![a, b, k]);
            }
        }
    }
    out
}

fn creation_ok(w: &EtaleWord, kind: MoveKind, dir: Direction, site: &Site) -> bool {
    let len = w.len();
    match site {
        Site::Create { first, second, a } => match tangency(kind) {
            Some((_, eps, pc)) => {
                pc == (dir == Direction::Positive)
                    && first <= second
                    && *second <= len
                    && tangency_projections(w.class(), eps).contains(a)
            }
            None => false,
        },
        Site::CreateAtCusp { cusp, gap, a } => {
            matches!(kind, MoveKind::PiPlus | MoveKind::PiMinus)
                && dir == Direction::Positive
                && *cusp < w.letters().len()
                && w.letter(*cusp).kind == LetterKind::Cusp
                && *gap <= len
                && !a.is_smooth()
                && a.sign()
                    == pi_sign(
                        kind,
                        *gap > w.first(*cusp),
                        w.letter(*cusp).projection.sign(),
                    )
        }
        Site::CreateKink { gap, k1 } => {
            kind == MoveKind::Lambda && dir == Direction::Positive && *gap <= len && !k1.is_smooth()
        }
        _ => false,
    }
}

/// Applies a site produced by [`enumerate_sites`] on the same word.
pub fn apply_move(w: &EtaleWord, ms: &MoveSite) -> Result<EtaleWord, MoveError> {
    let (kind, dir) = (ms.kind, ms.direction);
    if !kind.applies_to(w.class()) {
        return Err(MoveError::WrongClass {
            kind,
            class: w.class(),
        });
    }
    let stale = || MoveError::StaleSite(ms.to_string());
    let valid = match &ms.site {
        Site::Remove { .. } | Site::Triple { .. } => enumerate_sites(w, kind, dir)?.contains(ms),
        creation => creation_ok(w, kind, dir, creation),
    };
    if !valid {
        return Err(stale());
    }
    let seq = w.seq();
    let mut letters = w.letters().to_vec();
    let (a_id, b_id) = (letters.len(), letters.len() + 1);
    let new_seq: Vec<usize> = match &ms.site {
        Site::Create { first, second, a } => {
            let (shape, _, _) = tangency(kind).expect("checked");
            letters.push(Letter::crossing(*a));
            letters.push(Letter::crossing(a.flip()));
            let tail = match shape {
                Shape::Interleaved => [a_id, b_id],
                Shape::Nested => [b_id, a_id],
            };
            [
                &seq[..*first],
                &[a_id, b_id],
                &seq[*first..*second],
                &tail,
                &seq[*second..],
            ]
            .concat()
        }
        Site::CreateAtCusp { cusp, gap, a } => {
            letters.push(Letter::crossing(*a));
            letters.push(Letter::crossing(tau2(*a)));
            let pk = w.first(*cusp);
            let k = *cusp;
            let (around, pair) = match kind {
                MoveKind::PiPlus => ([a_id, k, b_id], [a_id, b_id]),
                _ if *gap > pk => ([a_id, k, b_id], [b_id, a_id]),
                _ => ([b_id, k, a_id], [a_id, b_id]),
            };
            if *gap > pk {
                [&seq[..pk], &around, &seq[pk + 1..*gap], &pair, &seq[*gap..]].concat()
            } else {
                [&seq[..*gap], &pair, &seq[*gap..pk], &around, &seq[pk + 1..]].concat()
            }
        }
        Site::CreateKink { gap, k1 } => {
            letters.push(Letter::crossing(kink_letter(*k1)));
            letters.push(Letter::cusp(*k1));
            letters.push(Letter::cusp(tau12(*k1)));
            let c_id = b_id + 1;
            [&seq[..*gap], &[a_id, b_id, c_id, a_id], &seq[*gap..]].concat()
        }
        Site::Remove { letters: gone } => {
            // PI deletions list the cusp last; it stays.
            let drop: &[usize] = if matches!(kind, MoveKind::PiPlus | MoveKind::PiMinus) {
                &gone[..2]
            } else {
                gone
            };
            seq.iter().copied().filter(|l| !drop.contains(l)).collect()
        }
        Site::Triple { a, b, c } => {
            let mut s = seq.to_vec();
            let pairs = match dir {
                Direction::Positive => [
                    (w.first(*a), w.first(*b)),
                    (w.second(*a), w.first(*c)),
                    (w.second(*b), w.second(*c)),
                ],
                Direction::Negative => [
                    (w.first(*b), w.first(*a)),
                    (w.first(*c), w.second(*a)),
                    (w.second(*c), w.second(*b)),
                ],
            };
            for (p, q) in pairs {
                s.swap(p, q);
            }
            s
        }
    };
    Ok(w.rebuild(letters, new_seq)?)
}

/// Jump of an Arnold invariant under a move.
pub fn expected_delta(
    kind: MoveKind,
    dir: Direction,
    inv: ArnoldKind,
    class: CurveClass,
) -> Rational {
    use ArnoldKind::*;
    use MoveKind::*;
    let base = if class.is_smooth() {
        match (kind, inv) {
            (IIPlus, JPlus) => int(2),
            (IIMinus, JMinus) => int(-2),
            (III, St) => int(1),
            _ => int(0),
        }
    } else {
        match (kind, inv) {
            (DIIPlus | DIIMinus, JPlus) => int(2),
            (SIIPlus | SIIMinus, JMinus) => int(-2),
            (III, St) => int(1),
            (PiPlus, St) => rat(1, 2),
            (PiMinus, St) => rat(-1, 2),
            _ => int(0),
        }
    };
    base * int(dir.sign())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkConfig {
    pub steps: usize,
    pub seed: u64,
    /// Relative weights of move kinds; kinds not listed are never sampled.
    pub weights: Vec<(MoveKind, u32)>,
    /// Creations are skipped once the word has this many crossings.
    pub max_crossings: usize,
    pub max_cusps: usize,
    /// Only accept moves that keep the genus of the current word.
    pub preserve_genus: bool,
    /// Sampled (kind, direction) pairs per step before giving up.
    pub attempts: usize,
}

impl WalkConfig {
    pub fn new(class: CurveClass, steps: usize, seed: u64) -> Self {
        let weights = if class.is_smooth() {
            vec![
                (MoveKind::IIPlus, 2),
                (MoveKind::IIMinus, 2),
                (MoveKind::III, 3),
            ]
        } else {
            MoveKind::FRONT
                .iter()
                .map(|&k| (k, if k == MoveKind::III { 3 } else { 2 }))
                .collect()
        };
        WalkConfig {
            steps,
            seed,
            weights,
            max_crossings: 10,
            max_cusps: 6,
            preserve_genus: true,
            attempts: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub site: MoveSite,
    pub word: EtaleWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub start: EtaleWord,
    pub seed: u64,
    pub steps: Vec<Step>,
    /// Why the walk stopped early, if it did.
    pub truncated: Option<String>,
}

impl Trajectory {
    /// `(before, site, after)` for every step.
    pub fn edges(&self) -> impl Iterator<Item = (&EtaleWord, &MoveSite, &EtaleWord)> {
        let befores = std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.word));
        befores.zip(&self.steps).map(|(b, s)| (b, &s.site, &s.word))
    }

    pub fn words(&self) -> impl Iterator<Item = &EtaleWord> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.word))
    }

    pub fn last(&self) -> &EtaleWord {
        self.steps.last().map(|s| &s.word).unwrap_or(&self.start)
    }
}

fn grows_past_caps(w: &EtaleWord, kind: MoveKind, cfg: &WalkConfig) -> bool {
    w.crossing_count() >= cfg.max_crossings
        || (kind == MoveKind::Lambda && w.cusp_count() + 2 > cfg.max_cusps)
}

/// Seeded random walk through move-reachable words.
pub fn random_walk(start: &EtaleWord, cfg: &WalkConfig) -> Result<Trajectory, MoveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let kinds: Vec<(MoveKind, u32)> = cfg
        .weights
        .iter()
        .copied()
        .filter(|(k, wt)| *wt > 0 && k.applies_to(start.class()))
        .collect();
    let mut traj = Trajectory {
        start: start.clone(),
        seed: cfg.seed,
        steps: Vec::new(),
        truncated: None,
    };
    if kinds.is_empty() {
        if cfg.steps > 0 {
            traj.truncated = Some("no move kind applies to this class".into());
        }
        return Ok(traj);
    }
    let dist = WeightedIndex::new(kinds.iter().map(|k| k.1)).expect("positive weights");
    let mut cur = start.clone();
    let mut genus = closure_genus(&cur);
    'steps: for _ in 0..cfg.steps {
        for _ in 0..cfg.attempts {
            let kind = kinds[dist.sample(&mut rng)].0;
            let mut dir = if rng.gen_bool(0.5) {
                Direction::Positive
            } else {
                Direction::Negative
            };
            if is_creation(kind, dir) && grows_past_caps(&cur, kind, cfg) {
                if kind == MoveKind::III {
                    continue;
                }
                dir = match dir {
                    Direction::Positive => Direction::Negative,
                    Direction::Negative => Direction::Positive,
                };
            }
            let mut sites = enumerate_sites(&cur, kind, dir)?;
            sites.shuffle(&mut rng);
            for site in sites.into_iter().take(32) {
                let next = apply_move(&cur, &site)?;
                if cfg.preserve_genus && closure_genus(&next) != genus {
                    continue;
                }
                genus = closure_genus(&next);
                cur = next.clone();
                traj.steps.push(Step { site, word: next });
                continue 'steps;
            }
        }
        traj.truncated = Some(format!(
            "no applicable move after {} attempts at step {}",
            cfg.attempts,
            traj.steps.len()
        ));
        break;
    }
    Ok(traj)
}
