//! Genus of the closed surface carried by a word.
//!
//! Each crossing is a 4-valent vertex with darts `in1, out1, in2, out2`
//! (first and second passage). Consecutive occurrences are joined by an edge
//! `out_k -> in_{k+1}`, cyclically. The rotation at a vertex is
//! `(in1, in2, out1, out2)` for sign +1 and the mirror order
//! `(in1, out2, out1, in2)` for sign −1. Faces are the orbits of
//! `rotation ∘ edge`.

use thiserror::Error;

use crate::word::{CurveClass, EtaleWord, LetterKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("genus needs a closed word; close long words with `closure_genus`")]
    LongWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    /// `edge[d]`: the dart joined to `d` along the curve.
    pub edge: Vec<usize>,
    /// `rotation[d]`: the next dart around the same vertex.
    pub rotation: Vec<usize>,
    pub vertices: usize,
}

impl RibbonGraph {
    /// Built from the crossing letters of `w` in occurrence order; cusps are
    /// skipped.
    pub fn from_word(w: &EtaleWord) -> RibbonGraph {
        let seq: Vec<usize> = w
            .seq()
            .iter()
            .copied()
            .filter(|&l| w.letter(l).kind == LetterKind::Crossing)
            .collect();
        let m = seq.len();
        // Occurrence k owns darts 2k (in) and 2k+1 (out).
        let mut edge = vec![0; 2 * m];
        for k in 0..m {
            let next = (k + 1) % m;
            edge[2 * k + 1] = 2 * next;
            edge[2 * next] = 2 * k + 1;
        }
        let mut rotation = vec![0; 2 * m];
        let mut firsts = vec![usize::MAX; w.letters().len()];
        let mut vertices = 0;
        for (k, &l) in seq.iter().enumerate() {
            if firsts[l] == usize::MAX {
                firsts[l] = k;
                continue;
            }
            vertices += 1;
            let (a, b) = (firsts[l], k);
            let (in1, out1, in2, out2) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
            let cycle = if w.letter(l).projection.sign() > 0 {
                [in1, in2, out1, out2]
            } else {
                [in1, out2, out1, in2]
            };
            for j in 0..4 {
                rotation[cycle[j]] = cycle[(j + 1) % 4];
            }
        }
        RibbonGraph {
            edge,
            rotation,
            vertices,
        }
    }

    pub fn edges(&self) -> usize {
        self.edge.len() / 2
    }

    pub fn faces(&self) -> usize {
        let n = self.edge.len();
        if n == 0 {
            // The embedded circle: one vertex-free loop bounding two discs.
            return 2;
        }
        let mut seen = vec![false; n];
        let mut faces = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = self.rotation[self.edge[d]];
            }
        }
        faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        if self.edge.is_empty() {
            return 2;
        }
        self.vertices as i64 - self.edges() as i64 + self.faces() as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusReport {
    pub genus: u32,
    pub faces: usize,
}

fn report(w: &EtaleWord) -> GenusReport {
    let g = RibbonGraph::from_word(w);
    let chi = g.euler_characteristic();
    debug_assert!(chi % 2 == 0 && chi <= 2);
    GenusReport {
        genus: ((2 - chi) / 2) as u32,
        faces: g.faces(),
    }
}

/// Genus of a closed word or front (cusps ignored).
pub fn genus_report(w: &EtaleWord) -> Result<GenusReport, GenusError> {
    if w.class() == CurveClass::Long {
        return Err(GenusError::LongWord);
    }
    Ok(report(w))
}

pub fn genus(w: &EtaleWord) -> Result<u32, GenusError> {
    genus_report(w).map(|r| r.genus)
}

pub fn is_planar(w: &EtaleWord) -> Result<bool, GenusError> {
    genus(w).map(|g| g == 0)
}

/// Genus of any word, long words being closed up through infinity.
pub fn closure_genus(w: &EtaleWord) -> u32 {
    report(w).genus
}
