//! Deterministic fuzzing of the invariance laws along random move walks.
//!
//! Each trial walks from a base curve with a seed derived from the run seed
//! and the trial number, then checks every edge or every visited word.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{int, ParamExpr};
use crate::invariants::{
    arnold, arnold_degree3, counts, fi2_ring_at_minus_one, ArnoldKind, Degree3, Degree3Form,
    InvariantError, Preset,
};
use crate::moves::{expected_delta, random_walk, MoveError, MoveKind, MoveSite, WalkConfig};
use crate::pairing::{pair, pat, Mode};
use crate::word::{base_curve, CurveClass, EtaleWord, Family, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("check `{check}` does not apply to {class} words")]
    NotApplicable { check: Check, class: CurveClass },
    #[error("unknown check `{0}` (deltas, symmetry, basepoint, degree3)")]
    UnknownCheck(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    /// Arnold jumps per edge, plus the count relations and the index.
    Deltas,
    /// Orientation reversal (closed) or reflection (long).
    Symmetry,
    /// Every rotation of closed words and fronts.
    BasePoint,
    /// `J+3` and `St3` on long words.
    Degree3,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Deltas => "deltas",
            Check::Symmetry => "symmetry",
            Check::BasePoint => "basepoint",
            Check::Degree3 => "degree3",
        }
    }

    pub fn applies_to(self, class: CurveClass) -> bool {
        match self {
            Check::Deltas => true,
            Check::Symmetry => class.is_smooth(),
            Check::BasePoint => class != CurveClass::Long,
            Check::Degree3 => class == CurveClass::Long,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = CertifyError;
    fn from_str(s: &str) -> Result<Self, CertifyError> {
        match s.to_ascii_lowercase().as_str() {
            "deltas" | "delta" => Ok(Check::Deltas),
            "symmetry" => Ok(Check::Symmetry),
            "basepoint" | "base-point" => Ok(Check::BasePoint),
            "degree3" => Ok(Check::Degree3),
            _ => Err(CertifyError::UnknownCheck(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    pub family: Family,
    pub index: i64,
    pub cusps: Option<u32>,
    pub steps: usize,
    pub trials: usize,
    pub seed: u64,
    pub check: Check,
    pub form: Degree3Form,
}

impl FuzzConfig {
    pub fn new(family: Family, index: i64, check: Check) -> Self {
        FuzzConfig {
            family,
            index,
            cusps: None,
            steps: 200,
            trials: 100,
            seed: 0,
            check,
            form: Degree3Form::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub trial: usize,
    /// Edge number within the trial, or the word number for word checks.
    pub step: usize,
    pub before: EtaleWord,
    pub site: Option<MoveSite>,
    pub after: Option<EtaleWord>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "violation in trial {} at step {}: {}",
            self.trial, self.step, self.detail
        )?;
        writeln!(f, "--- before")?;
        write!(f, "{}", self.before.serialize())?;
        if let Some(site) = &self.site {
            writeln!(f, "--- move {site}")?;
        }
        if let Some(after) = &self.after {
            writeln!(f, "--- after")?;
            write!(f, "{}", after.serialize())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FuzzReport {
    pub trials: usize,
    pub edges: usize,
    pub words: usize,
    pub truncated: usize,
    pub violations: Vec<Violation>,
}

impl FuzzReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "trials {} edges {} words {} truncated {} violations {}",
            self.trials,
            self.edges,
            self.words,
            self.truncated,
            self.violations.len()
        )?;
        if let Some(v) = self.violations.first() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Seed of trial `k`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng.next_u64()
}

/// Arnold jumps across one edge and the count relations at its ends.
pub fn check_edge_deltas(
    before: &EtaleWord,
    site: &MoveSite,
    after: &EtaleWord,
) -> Result<Option<String>, CertifyError> {
    let class = before.class();
    let (x, y) = (arnold(before)?, arnold(after)?);
    for inv in ArnoldKind::ALL {
        let got = y.get(inv) - x.get(inv);
        let want = expected_delta(site.kind, site.direction, inv, class);
        if got != want {
            return Ok(Some(format!(
                "{} changed by {got}, expected {want}",
                inv.name()
            )));
        }
    }
    if before.index() != after.index() {
        return Ok(Some(format!(
            "index changed from {} to {}",
            before.index(),
            after.index()
        )));
    }
    if counts(before).mu != counts(after).mu {
        return Ok(Some("Maslov index changed".into()));
    }
    if let Some(d) = check_relation(after)? {
        return Ok(Some(d));
    }
    Ok(None)
}

/// `J+ - J- = n` (smooth) or `n+ - n- - c` (fronts).
pub fn check_relation(w: &EtaleWord) -> Result<Option<String>, CertifyError> {
    let a = arnold(w)?;
    let s = counts(w);
    let want = if w.class().is_smooth() {
        int(s.n as i64)
    } else {
        int(s.n_plus as i64 - s.n_minus as i64 - s.c as i64)
    };
    let got = &a.j_plus - &a.j_minus;
    Ok(if got == want {
        None
    } else {
        Some(format!("J+ - J- = {got}, expected {want}"))
    })
}

/// Reversal laws for closed words, reflection laws for long words.
pub fn check_symmetry(w: &EtaleWord) -> Result<Option<String>, CertifyError> {
    let (image, even, odd) = match w.class() {
        CurveClass::Closed => (w.reverse_orientation()?, Preset::ci2(), Preset::ci3()),
        CurveClass::Long => (w.reflect()?, Preset::li2(), Preset::li3()),
        class => {
            return Err(CertifyError::NotApplicable {
                check: Check::Symmetry,
                class,
            })
        }
    };
    if even.evaluate(&image)? != even.evaluate(w)? {
        return Ok(Some(format!("{} not symmetric", even.name)));
    }
    if odd.evaluate(&image)? != -odd.evaluate(w)? {
        return Ok(Some(format!("{} not antisymmetric", odd.name)));
    }
    Ok(None)
}

fn base_point_values(w: &EtaleWord) -> Result<Vec<(String, ParamExpr)>, CertifyError> {
    let mut out = Vec::new();
    match w.class() {
        CurveClass::Closed => {
            for p in [Preset::ci2(), Preset::ci3(), Preset::gci3()] {
                out.push((p.name.clone(), p.evaluate(w)?));
            }
            let x = pair(&pat("XYXY"), w, Mode::Sign).map_err(InvariantError::from)?;
            out.push(("<XYXY>".into(), ParamExpr::constant(x)));
        }
        CurveClass::Front => {
            for p in [
                Preset::fi2(),
                Preset::fi3(),
                Preset::gfi3(),
                Preset::fi2_ring(),
            ] {
                out.push((p.name.clone(), p.evaluate(w)?));
            }
        }
        class => {
            return Err(CertifyError::NotApplicable {
                check: Check::BasePoint,
                class,
            })
        }
    }
    Ok(out)
}

/// Invariants that change under some base point move of `w`: name, number
/// of moves, and the difference to the value at the original base point.
pub fn base_point_drift(w: &EtaleWord) -> Result<Vec<(String, usize, ParamExpr)>, CertifyError> {
    let reference = base_point_values(w)?;
    let mut out: Vec<(String, usize, ParamExpr)> = Vec::new();
    let mut cur = w.clone();
    for k in 1..w.len() {
        cur = cur.base_point_move()?;
        for ((name, want), (_, got)) in reference.iter().zip(base_point_values(&cur)?) {
            if *want != got && !out.iter().any(|d| d.0 == *name) {
                out.push((name.clone(), k, got - want.clone()));
            }
        }
    }
    Ok(out)
}

/// Compares the base-point invariants at every rotation of `w`.
pub fn check_base_point(w: &EtaleWord) -> Result<Option<String>, CertifyError> {
    Ok(base_point_drift(w)?
        .first()
        .map(|(name, k, d)| format!("{name} changed by {d} after {k} base point moves")))
}

/// `J+3` across II⁻/III edges and `St3` across II⁺/II⁻ edges.
pub fn check_degree3_edge(
    before: &EtaleWord,
    site: &MoveSite,
    after: &EtaleWord,
    form: Degree3Form,
) -> Result<Option<String>, CertifyError> {
    let mut which = Vec::new();
    if matches!(site.kind, MoveKind::IIMinus | MoveKind::III) {
        which.push(Degree3::JPlus3);
    }
    if matches!(site.kind, MoveKind::IIPlus | MoveKind::IIMinus) {
        which.push(Degree3::St3);
    }
    for d in which {
        let x = arnold_degree3(before, d, form)?;
        let y = arnold_degree3(after, d, form)?;
        if x != y {
            let name = match d {
                Degree3::JPlus3 => "J+3",
                Degree3::St3 => "St3",
            };
            return Ok(Some(format!("{name} changed by {}", y - x)));
        }
    }
    Ok(None)
}

/// Symbolic `FI2~` at `a± = -1` against `FI2`.
pub fn check_ring_specialization(w: &EtaleWord) -> Result<Option<String>, CertifyError> {
    let x = fi2_ring_at_minus_one(w)?;
    let y = Preset::fi2().evaluate(w)?;
    Ok(if x == y {
        None
    } else {
        Some(format!("FI2~ at -1 is {x}, FI2 is {y}"))
    })
}

/// Runs the configured trials. Stops at the first violating trial.
pub fn fuzz(cfg: &FuzzConfig) -> Result<FuzzReport, CertifyError> {
    let start = base_curve(cfg.family, cfg.index, cfg.cusps)?;
    let class = start.class();
    if !cfg.check.applies_to(class) {
        return Err(CertifyError::NotApplicable {
            check: cfg.check,
            class,
        });
    }
    let mut report = FuzzReport::default();
    for trial in 0..cfg.trials {
        let walk = WalkConfig::new(class, cfg.steps, trial_seed(cfg.seed, trial));
        let traj = random_walk(&start, &walk)?;
        report.trials += 1;
        if traj.truncated.is_some() {
            report.truncated += 1;
        }
        match cfg.check {
            Check::Deltas | Check::Degree3 => {
                for (step, (before, site, after)) in traj.edges().enumerate() {
                    report.edges += 1;
                    let found = if cfg.check == Check::Deltas {
                        check_edge_deltas(before, site, after)?
                    } else {
                        check_degree3_edge(before, site, after, cfg.form)?
                    };
                    if let Some(detail) = found {
                        report.violations.push(Violation {
                            trial,
                            step,
                            before: before.clone(),
                            site: Some(site.clone()),
                            after: Some(after.clone()),
                            detail,
                        });
                        break;
                    }
                }
            }
            Check::Symmetry | Check::BasePoint => {
                for (step, w) in traj.words().enumerate() {
                    report.words += 1;
                    let found = if cfg.check == Check::Symmetry {
                        check_symmetry(w)?
                    } else {
                        check_base_point(w)?
                    };
                    if let Some(detail) = found {
                        report.violations.push(Violation {
                            trial,
                            step,
                            before: w.clone(),
                            site: None,
                            after: None,
                            detail,
                        });
                        break;
                    }
                }
            }
        }
        if !report.violations.is_empty() {
            break;
        }
    }
    Ok(report)
}
