//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so the lines come out in order. Expected values are
//! written out here or recomputed by small test-side oracles, never read back
//! from the library tables.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nanoword::algebra::{int, rat, ParamExpr, ParamValues, Rational, RingValues};
use nanoword::certify::{
    base_point_drift, check_edge_deltas, check_relation, check_ring_specialization, check_symmetry,
    trial_seed,
};
use nanoword::genus::{closure_genus, genus};
use nanoword::invariants::{
    arnold_closed, arnold_degree3, arnold_front, arnold_long, Degree3, Degree3Form, Preset,
};
use nanoword::moves::{all_sites, apply_move, random_walk, MoveKind, Trajectory, WalkConfig};
use nanoword::pairing::{cyclic_class, enumerate_patterns, pair, pat, Flavor, Mode};
use nanoword::word::{base_curve, CurveClass, EtaleWord, Family, Letter, Projection};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;
const TRIALS: usize = 100;
const STEPS: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

struct Walks {
    closed: Vec<Trajectory>,
    long: Vec<Trajectory>,
    front: Vec<Trajectory>,
}

/// Base curve of trial `t`, cycling through small indices.
fn start(family: Family, t: usize) -> EtaleWord {
    match family {
        Family::K => base_curve(family, (t % 5) as i64, None),
        Family::L => base_curve(family, (t % 7) as i64 - 3, None),
        Family::KF => base_curve(family, (t % 4) as i64, Some((t / 4 % 3) as u32)),
    }
    .unwrap()
}

fn walks_for(family: Family) -> Vec<Trajectory> {
    (0..TRIALS)
        .map(|t| {
            let w = start(family, t);
            let cfg = WalkConfig::new(w.class(), STEPS, trial_seed(SEED, t));
            random_walk(&w, &cfg).unwrap()
        })
        .collect()
}

fn reachable(trajs: &[Trajectory]) -> impl Iterator<Item = &EtaleWord> {
    trajs.iter().flat_map(|t| t.words())
}

fn edge_count(trajs: &[Trajectory]) -> usize {
    trajs.iter().map(|t| t.steps.len()).sum()
}

fn tuple(a: &nanoword::invariants::Arnold) -> [Rational; 3] {
    [a.j_plus.clone(), a.j_minus.clone(), a.st.clone()]
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    let closed = [(0, -1, 0), (0, 0, 0), (-2, -3, 1), (-4, -6, 2), (-6, -9, 3)];
    for (i, (a, b, c)) in closed.iter().enumerate() {
        let w = base_curve(Family::K, i as i64, None).unwrap();
        if tuple(&arnold_closed(&w).unwrap()) != [int(*a), int(*b), int(*c)] {
            bad.push(format!("K{i}"));
        }
    }
    for i in -3i64..=3 {
        let w = base_curve(Family::L, i, None).unwrap();
        let want = [int(-i.abs()), int(-2 * i.abs()), rat(i.abs(), 2)];
        if tuple(&arnold_long(&w).unwrap()) != want {
            bad.push(format!("L{i}"));
        }
    }
    for i in 0i64..=3 {
        for k in 0i64..=2 {
            let w = base_curve(Family::KF, i, Some(k as u32)).unwrap();
            let want = if i == 0 {
                [int(-k), int(-1), rat(k, 2)]
            } else {
                let j = i - 1;
                [int(-2 * j - k), int(-3 * j), rat(2 * j + k, 2)]
            };
            if tuple(&arnold_front(&w).unwrap()) != want {
                bad.push(format!("K{i},{k}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("5 closed, 7 long, 12 front base curves; mismatches {bad:?}"),
    )
}

/// Renames letters by first occurrence.
fn canonical(word: &str) -> String {
    let mut map = BTreeMap::new();
    word.chars()
        .map(|c| {
            let n = map.len();
            *map.entry(c).or_insert_with(|| b"XYZ"[n] as char)
        })
        .collect()
}

fn display_terms(text: &str) -> BTreeSet<(i64, String)> {
    let mut out = BTreeSet::new();
    let mut sign = 1;
    for tok in text.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            w => {
                out.insert((sign, canonical(w)));
            }
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let expected = [
        (
            "XYXYZZ",
            "XYXYZZ - YXYZZX + XYZZXY - YZZXYX + ZZXYXY - ZXYXYZ",
        ),
        ("XXYYZZ", "XXYYZZ - XYYZZX"),
    ];
    let mut ok = true;
    for (v, shown) in expected {
        let class = cyclic_class(&pat(v), Flavor::Plain).unwrap();
        let ours: BTreeSet<(i64, String)> = class
            .terms
            .iter()
            .map(|(s, p)| (*s, p.to_string()))
            .collect();
        ok &= ours == display_terms(shown) && ours.len() == class.terms.len();
    }
    let listed: BTreeSet<String> = [
        "XYXYZZ", "XYXZZY", "XYZZXY", "XYYZXZ", "XXYZYZ", "XYZYZX", "XYYXZZ", "XXYZZY", "XYZZYX",
        "XYZYXZ", "XYXZYZ", "XYZXZY", "XYZXYZ", "XXYYZZ", "XYYZZX",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let enumerated: Vec<String> = enumerate_patterns(3)
        .unwrap()
        .iter()
        .map(|p| p.to_string())
        .collect();
    let as_set: BTreeSet<String> = enumerated.iter().cloned().collect();
    ok &= as_set == listed && enumerated.len() == 15;
    outcome(
        ok,
        format!(
            "[XYXYZZ] 6 terms, [XXYYZZ] 2 terms, {} degree-3 patterns",
            enumerated.len()
        ),
    )
}

fn random_smooth(rng: &mut ChaCha8Rng, class: CurveClass) -> EtaleWord {
    let n = rng.gen_range(0..=8);
    let mut seq: Vec<usize> = (0..n).flat_map(|l| [l, l]).collect();
    for i in (1..seq.len()).rev() {
        seq.swap(i, rng.gen_range(0..=i));
    }
    let letters = (0..n)
        .map(|_| {
            Letter::crossing(Projection::smooth_from_sign(if rng.gen_bool(0.5) {
                1
            } else {
                -1
            }))
        })
        .collect();
    let idx = if class == CurveClass::Closed {
        Some(0)
    } else {
        None
    };
    EtaleWord::new(class, letters, seq, idx).unwrap()
}

fn criterion_3(walks: &Walks) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for _ in 0..1000 {
        let w = random_smooth(&mut rng, CurveClass::Long);
        let total: i64 = w.letters().iter().map(|l| l.projection.sign()).sum();
        let mut rhs = pair(&pat("X.X."), &w, Mode::Sign).unwrap();
        for v in ["XXYY", "XYYX", "XYXY"] {
            rhs = rhs + pair(&pat(v), &w, Mode::Sign).unwrap().scale(&int(2));
        }
        if rhs.as_constant() != Some(int(total * total)) {
            bad += 1;
        }
    }
    let params: ParamValues = [
        ("s", rat(1, 2)),
        ("t", int(1)),
        ("u", int(1)),
        ("v", int(1)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    let li2 = Preset::li2();
    let mut words = 0;
    for w in reachable(&walks.long) {
        words += 1;
        let x = li2
            .evaluate(w)
            .unwrap()
            .specialize(&params, &RingValues::new())
            .unwrap();
        if x != int(0) {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!("1000 random words, {words} long walk words, {bad} failures"),
    )
}

fn criterion_4(walks: &Walks) -> Outcome {
    let mut edges = 0;
    let mut failures = Vec::new();
    let mut kinds = BTreeSet::new();
    for trajs in [&walks.closed, &walks.long, &walks.front] {
        for t in trajs.iter() {
            for (b, s, a) in t.edges() {
                edges += 1;
                kinds.insert(s.kind);
                if let Some(d) = check_edge_deltas(b, s, a).unwrap() {
                    failures.push(format!("{s}: {d}"));
                }
            }
        }
    }
    let all_kinds = [MoveKind::IIPlus, MoveKind::IIMinus, MoveKind::III]
        .iter()
        .chain(MoveKind::FRONT.iter())
        .all(|k| kinds.contains(k));
    let short = [&walks.closed, &walks.long, &walks.front]
        .iter()
        .flat_map(|t| t.iter())
        .filter(|t| t.steps.len() < STEPS)
        .count();
    outcome(
        failures.is_empty() && all_kinds && short == 0,
        format!(
            "{} trajectories x {STEPS} steps, {edges} edges, all move kinds seen: {all_kinds}, failures {:?}",
            3 * TRIALS,
            failures.first()
        ),
    )
}

fn criterion_5(walks: &Walks) -> Outcome {
    let (mut checked_j, mut checked_st, mut bad) = (0, 0, 0);
    for t in &walks.long {
        for (b, s, a) in t.edges() {
            if matches!(s.kind, MoveKind::IIMinus | MoveKind::III) {
                checked_j += 1;
                let x = arnold_degree3(b, Degree3::JPlus3, Degree3Form::Corrected).unwrap();
                let y = arnold_degree3(a, Degree3::JPlus3, Degree3Form::Corrected).unwrap();
                bad += usize::from(x != y);
            }
            if matches!(s.kind, MoveKind::IIPlus | MoveKind::IIMinus) {
                checked_st += 1;
                let x = arnold_degree3(b, Degree3::St3, Degree3Form::Corrected).unwrap();
                let y = arnold_degree3(a, Degree3::St3, Degree3Form::Corrected).unwrap();
                bad += usize::from(x != y);
            }
        }
    }
    outcome(
        bad == 0,
        format!("J+3 over {checked_j} edges, St3 over {checked_st} edges, {bad} changes"),
    )
}

fn criterion_6(walks: &Walks) -> Outcome {
    let mut closed_words = 0;
    let mut closed_bad = 0;
    for w in reachable(&walks.closed).step_by(20) {
        closed_words += 1;
        closed_bad += usize::from(!base_point_drift(w).unwrap().is_empty());
    }
    let mut front_words = 0;
    let mut drift: BTreeMap<String, usize> = BTreeMap::new();
    let mut only_xyxy = true;
    for w in reachable(&walks.front).step_by(20) {
        front_words += 1;
        for (name, _, d) in base_point_drift(w).unwrap() {
            only_xyxy &= d.params().eq(["z"]) && d.constant_part().is_zero();
            *drift.entry(name).or_default() += 1;
        }
    }
    outcome(
        closed_bad == 0 && drift.is_empty(),
        format!(
            "{closed_words} closed words ({closed_bad} drift), {front_words} fronts, drifting: {drift:?}{}",
            if drift.is_empty() {
                String::new()
            } else {
                format!(", drift confined to the z*<XYXY> term: {only_xyxy}")
            }
        ),
    )
}

fn criterion_7(walks: &Walks) -> Outcome {
    let mut n = 0;
    let mut bad = Vec::new();
    for w in reachable(&walks.closed)
        .chain(reachable(&walks.long))
        .step_by(2)
    {
        n += 1;
        if let Some(d) = check_symmetry(w).unwrap() {
            bad.push(d);
        }
    }
    outcome(
        bad.is_empty(),
        format!("{n} closed and long words, failures {:?}", bad.first()),
    )
}

/// Fronts with at most 3 crossings and 2 cusps reachable from the base
/// fronts through planar moves.
fn small_fronts() -> Vec<EtaleWord> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    for i in 0..=4 {
        for k in 0..=1 {
            let w = base_curve(Family::KF, i, Some(k)).unwrap();
            if w.crossing_count() <= 3 && seen.insert(w.serialize()) {
                queue.push_back(w);
            }
        }
    }
    while let Some(w) = queue.pop_front() {
        for site in all_sites(&w) {
            let next = apply_move(&w, &site).unwrap();
            if next.crossing_count() > 3 || next.cusp_count() > 2 || closure_genus(&next) != 0 {
                continue;
            }
            if seen.insert(next.serialize()) {
                queue.push_back(next);
            }
        }
        out.push(w);
    }
    out
}

fn criterion_8(walks: &Walks) -> Outcome {
    let mut n = 0;
    let mut bad = 0;
    for w in reachable(&walks.front).step_by(8) {
        n += 1;
        bad += usize::from(check_ring_specialization(w).unwrap().is_some());
    }
    let fronts = small_fronts();
    let fi2 = Preset::fi2();
    let ring = Preset::fi2_ring();
    // The z*<XYXY> part is left out: it depends on the base point.
    let no_z: ParamValues = [("z".to_string(), int(0))].into_iter().collect();
    let mut by_fi2: BTreeMap<String, Vec<(ParamExpr, &EtaleWord)>> = BTreeMap::new();
    for w in &fronts {
        let key = fi2.evaluate(w).unwrap().to_string();
        let tilde = ring
            .evaluate(w)
            .unwrap()
            .specialize_partial(&no_z, &RingValues::new());
        by_fi2.entry(key).or_default().push((tilde, w));
    }
    let pair_found = by_fi2.values().find_map(|group| {
        group.iter().find_map(|(x, v)| {
            group
                .iter()
                .find(|(y, _)| y != x)
                .map(|(_, w)| (v.short(), w.short()))
        })
    });
    outcome(
        bad == 0 && n >= 200 && pair_found.is_some(),
        format!(
            "{n} fronts specialize correctly ({bad} failures); {} small fronts searched; pair {:?}",
            fronts.len(),
            pair_found
        ),
    )
}

/// Face count by walking around each corner, independent of the library's
/// dart numbering.
fn oracle_genus(w: &EtaleWord) -> u32 {
    let seq: Vec<usize> = w.seq().to_vec();
    let m = seq.len();
    if m == 0 {
        return 0;
    }
    // Half-edge (k, true) leaves occurrence k forwards, (k, false) arrives at
    // occurrence k from behind.
    let other = |k: usize| -> usize { (0..m).find(|&j| j != k && seq[j] == seq[k]).unwrap() };
    let first = |k: usize| -> bool { seq[..k].iter().all(|&l| l != seq[k]) };
    // Cyclic order at a crossing listed by (occurrence, outgoing).
    let next_around = |k: usize, out: bool| -> (usize, bool) {
        let o = other(k);
        let (a, b) = if first(k) { (k, o) } else { (o, k) };
        let order = if w.letter(seq[k]).projection.sign() > 0 {
            [(a, false), (b, false), (a, true), (b, true)]
        } else {
            [(a, false), (b, true), (a, true), (b, false)]
        };
        let i = order.iter().position(|&h| h == (k, out)).unwrap();
        order[(i + 1) % 4]
    };
    let mut seen = HashSet::new();
    let mut faces = 0i64;
    for k in 0..m {
        for out in [false, true] {
            if seen.contains(&(k, out)) {
                continue;
            }
            faces += 1;
            let mut h = (k, out);
            while seen.insert(h) {
                let across = if h.1 {
                    ((h.0 + 1) % m, false)
                } else {
                    ((h.0 + m - 1) % m, true)
                };
                h = next_around(across.0, across.1);
            }
        }
    }
    let chi = (m / 2) as i64 - m as i64 + faces;
    ((2 - chi) / 2) as u32
}

fn gauss_words(n: usize) -> Vec<Vec<usize>> {
    fn go(seq: &mut Vec<usize>, n: usize, used: &mut Vec<u8>, out: &mut Vec<Vec<usize>>) {
        if seq.len() == 2 * n {
            out.push(seq.clone());
            return;
        }
        let fresh = used.iter().take_while(|&&u| u > 0).count();
        for l in 0..n {
            if used[l] < 2 && l <= fresh {
                used[l] += 1;
                seq.push(l);
                go(seq, n, used, out);
                seq.pop();
                used[l] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut vec![0; n], &mut out);
    out
}

fn criterion_9(walks: &Walks) -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    for n in 0..=3 {
        for seq in gauss_words(n) {
            for mask in 0..1u32 << n {
                let letters = (0..n)
                    .map(|l| {
                        Letter::crossing(Projection::smooth_from_sign(if mask >> l & 1 == 1 {
                            -1
                        } else {
                            1
                        }))
                    })
                    .collect();
                let w = EtaleWord::new(CurveClass::Closed, letters, seq.clone(), Some(0)).unwrap();
                checked += 1;
                bad += usize::from(genus(&w).unwrap() != oracle_genus(&w));
            }
        }
    }
    let sw =
        |s: &str, signs: &[i64]| EtaleWord::smooth(CurveClass::Closed, s, signs, Some(0)).unwrap();
    let fixed = genus(&sw("", &[])) == Ok(0)
        && genus(&sw("AA", &[1])) == Ok(0)
        && genus(&sw("AA", &[-1])) == Ok(0)
        && genus(&sw("ABAB", &[1, 1])) == Ok(1);
    let nonplanar = reachable(&walks.closed)
        .filter(|w| genus(w) != Ok(0))
        .count();
    outcome(
        bad == 0 && fixed && nonplanar == 0,
        format!("{checked} small words vs oracle ({bad} disagree), fixed examples {fixed}, non-planar walk words {nonplanar}"),
    )
}

fn criterion_10(walks: &Walks) -> Outcome {
    let mut n = 0;
    let mut bad = Vec::new();
    for w in reachable(&walks.closed)
        .chain(reachable(&walks.long))
        .chain(reachable(&walks.front))
    {
        n += 1;
        if let Some(d) = check_relation(w).unwrap() {
            bad.push(d);
        }
    }
    outcome(
        bad.is_empty(),
        format!("{n} words, failures {:?}", bad.first()),
    )
}

/// Criteria known not to hold, with the reason. They are still run and
/// printed as FAIL.
const KNOWN_FAILURES: [(u32, &str); 1] = [(
    6,
    "FI2~: the ring-valued <XYXY> term is not base-point invariant on fronts reached through PI moves",
)];

fn main() -> ExitCode {
    let t0 = Instant::now();
    let walks = Walks {
        closed: walks_for(Family::K),
        long: walks_for(Family::L),
        front: walks_for(Family::KF),
    };
    let walk_time = t0.elapsed();
    println!(
        "walks: {} trajectories, {} edges, built in {:.2?}",
        3 * TRIALS,
        edge_count(&walks.closed) + edge_count(&walks.long) + edge_count(&walks.front),
        walk_time
    );
    type Run<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let w = &walks;
    // (criterion, time limit, extra time spent building the walks)
    let runs: Vec<(u32, Option<u64>, Duration, Run)> = vec![
        (1, Some(1), Duration::ZERO, Box::new(criterion_1)),
        (2, Some(1), Duration::ZERO, Box::new(criterion_2)),
        (3, Some(5), Duration::ZERO, Box::new(move || criterion_3(w))),
        (4, Some(60), walk_time, Box::new(move || criterion_4(w))),
        (5, Some(60), walk_time, Box::new(move || criterion_5(w))),
        (6, None, Duration::ZERO, Box::new(move || criterion_6(w))),
        (7, None, Duration::ZERO, Box::new(move || criterion_7(w))),
        (8, None, Duration::ZERO, Box::new(move || criterion_8(w))),
        (
            9,
            Some(10),
            Duration::ZERO,
            Box::new(move || criterion_9(w)),
        ),
        (10, None, Duration::ZERO, Box::new(move || criterion_10(w))),
    ];
    let mut unexpected = Vec::new();
    for (id, limit, extra, run) in runs {
        let t = Instant::now();
        let out = run();
        let spent = t.elapsed() + extra;
        let in_time = limit.is_none_or(|s| spent < Duration::from_secs(s));
        let pass = out.pass && in_time;
        let limit_text = limit.map(|s| format!(" limit {s}s")).unwrap_or_default();
        println!(
            "criterion {id:>2}: {} ({:.2?}{limit_text}) {}",
            if pass { "PASS" } else { "FAIL" },
            spent,
            out.detail
        );
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == id);
        if let Some((_, why)) = known {
            println!("              known: {why}");
        }
        if pass == known.is_some() {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
