//! Column-tally reachability games.
//!
//! Two games drive the specialization arguments elsewhere in this crate.
//! In the *conic game* a move places plain dots into ordered columns; in the
//! *elliptic game* the symbols carry signs and each column must end
//! unbalanced (or checked). Both games come with a memoized brute-force
//! solver; the conic game additionally has a closed-form characterization
//! that the test suite checks against the solver by exhaustion.
//!
//! Moves that touch several columns are index-ordered: in the conic game the
//! single dot of the 1+2 move goes to the strictly smaller column index, and
//! in the elliptic game the `+` of a multi-column move goes to the strictly
//! largest chosen index. A column with zero remaining demand is dropped from
//! the residual state; reachability is invariant under that relabeling
//! because moves never touch such a column.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("target sums to {actual} but the moves supply {expected} symbols")]
    SumMismatch { expected: usize, actual: usize },
}

// ---------------------------------------------------------------------------
// Conic game
// ---------------------------------------------------------------------------

/// An instance of the conic dot game: `b` single-dot moves, `c` three-dot
/// moves, and an ordered target tally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicGameInstance {
    b: usize,
    c: usize,
    target: Vec<usize>,
}

impl ConicGameInstance {
    pub fn new(b: usize, c: usize, target: Vec<usize>) -> Result<Self, GameError> {
        let sum: usize = target.iter().sum();
        if sum != b + 3 * c {
            return Err(GameError::SumMismatch {
                expected: b + 3 * c,
                actual: sum,
            });
        }
        Ok(ConicGameInstance { b, c, target })
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }
}

/// One move of the conic game, with 0-based column indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicMove {
    /// One dot in a column; used exactly `b` times.
    Single(usize),
    /// One dot in each of three distinct columns.
    Triple(usize, usize, usize),
    /// One dot in the first column, two dots in the second; requires i < j.
    OneTwo(usize, usize),
    /// Three dots in one column.
    ThreeInOne(usize),
}

/// Search for a multiset of `c` three-dot moves whose column increments stay
/// under `residual`. Single dots absorb whatever remains, so this decides
/// reachability outright (the instance's sum constraint pins their total).
fn conic_search(
    residual: &mut Vec<usize>,
    c_left: usize,
    moves: &mut Vec<ConicMove>,
    dead: &mut HashMap<(Vec<usize>, usize), ()>,
) -> bool {
    if c_left == 0 {
        return true;
    }
    let key = (residual.clone(), c_left);
    if dead.contains_key(&key) {
        return false;
    }
    let j = residual.len();
    // Three dots in one column.
    for i in 0..j {
        if residual[i] >= 3 {
            residual[i] -= 3;
            moves.push(ConicMove::ThreeInOne(i));
            if conic_search(residual, c_left - 1, moves, dead) {
                return true;
            }
            moves.pop();
            residual[i] += 3;
        }
    }
    // One dot at the smaller index, two at the larger.
    for i in 0..j {
        for k in (i + 1)..j {
            if residual[i] >= 1 && residual[k] >= 2 {
                residual[i] -= 1;
                residual[k] -= 2;
                moves.push(ConicMove::OneTwo(i, k));
                if conic_search(residual, c_left - 1, moves, dead) {
                    return true;
                }
                moves.pop();
                residual[i] += 1;
                residual[k] += 2;
            }
        }
    }
    // One dot in each of three columns.
    for i in 0..j {
        for k in (i + 1)..j {
            for l in (k + 1)..j {
                if residual[i] >= 1 && residual[k] >= 1 && residual[l] >= 1 {
                    residual[i] -= 1;
                    residual[k] -= 1;
                    residual[l] -= 1;
                    moves.push(ConicMove::Triple(i, k, l));
                    if conic_search(residual, c_left - 1, moves, dead) {
                        return true;
                    }
                    moves.pop();
                    residual[i] += 1;
                    residual[k] += 1;
                    residual[l] += 1;
                }
            }
        }
    }
    dead.insert(key, ());
    false
}

/// Memoized exhaustive solver for the conic game.
pub fn conic_reachable_bruteforce(inst: &ConicGameInstance) -> bool {
    conic_witness(inst).is_some()
}

/// Like [`conic_reachable_bruteforce`] but returns a realizing move list.
/// Singles come last, one per leftover dot, so the move count is exactly
/// `b + c`.
pub fn conic_witness(inst: &ConicGameInstance) -> Option<Vec<ConicMove>> {
    let mut residual = inst.target.clone();
    let mut moves = Vec::new();
    let mut dead = HashMap::new();
    if !conic_search(&mut residual, inst.c, &mut moves, &mut dead) {
        return None;
    }
    for (i, &left) in residual.iter().enumerate() {
        for _ in 0..left {
            moves.push(ConicMove::Single(i));
        }
    }
    Some(moves)
}

/// Closed-form reachability test: after dropping untouched (zero) columns,
/// the tally is reachable unless `b = 0` and it ends in one of the two
/// exceptional shapes `(n1, 1)` or `(n1, 2, 1)`.
pub fn conic_reachable_closed(inst: &ConicGameInstance) -> bool {
    let t: Vec<usize> = inst.target.iter().copied().filter(|&n| n != 0).collect();
    if inst.b > 0 {
        return true;
    }
    match t.len() {
        2 => t[1] != 1,
        3 => !(t[1] == 2 && t[2] == 1),
        _ => true,
    }
}

/// Direction for [`updown_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Result must be componentwise ≥ the bounds.
    Dominating,
    /// Result must be componentwise ≤ the bounds.
    Dominated,
}

fn compositions_with_floor(
    floor: &[usize],
    total: usize,
    cap: Option<&[usize]>,
) -> CompositionIter {
    CompositionIter {
        floor: floor.to_vec(),
        cap: cap.map(|c| c.to_vec()),
        total,
        stack: vec![(0, Vec::new(), total)],
    }
}

/// Lexicographic enumeration of sequences with a per-column floor (and
/// optional cap) summing to a fixed total.
struct CompositionIter {
    floor: Vec<usize>,
    cap: Option<Vec<usize>>,
    total: usize,
    stack: Vec<(usize, Vec<usize>, usize)>,
}

impl Iterator for CompositionIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let j = self.floor.len();
        while let Some((idx, prefix, left)) = self.stack.pop() {
            if idx == j {
                if left == 0 {
                    return Some(prefix);
                }
                continue;
            }
            let lo = self.floor[idx];
            let hi = match &self.cap {
                Some(cap) => cap[idx].min(left),
                None => left,
            };
            if lo > hi {
                continue;
            }
            // Push in reverse so smaller values pop first.
            for v in (lo..=hi).rev() {
                let mut next = prefix.clone();
                next.push(v);
                self.stack.push((idx + 1, next, left - v));
            }
        }
        let _ = self.total;
        None
    }
}

/// Find a `(b, c)`-reachable tally of the same length that dominates (or is
/// dominated by) `bounds`. Returns the lexicographically first match, or
/// `None` when no reachable tally fits — in particular when the bounds sum
/// to exactly `b + 3c` and are themselves unreachable.
pub fn updown_sequence(
    bounds: &[usize],
    b: usize,
    c: usize,
    direction: Direction,
) -> Option<Vec<usize>> {
    let total = b + 3 * c;
    let bound_sum: usize = bounds.iter().sum();
    let candidates: CompositionIter = match direction {
        Direction::Dominating => {
            if total < bound_sum {
                return None;
            }
            compositions_with_floor(bounds, total, None)
        }
        Direction::Dominated => {
            if total > bound_sum {
                return None;
            }
            compositions_with_floor(&vec![0; bounds.len()], total, Some(bounds))
        }
    };
    for cand in candidates {
        let inst = ConicGameInstance::new(b, c, cand.clone()).expect("sum fixed by construction");
        if conic_reachable_closed(&inst) {
            return Some(cand);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Elliptic game
// ---------------------------------------------------------------------------

/// An instance of the signed-symbol game: `a` check moves, `b` minus moves,
/// `c` three-symbol moves, and an ordered target of column sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticGameInstance {
    a: usize,
    b: usize,
    c: usize,
    target: Vec<usize>,
}

impl EllipticGameInstance {
    pub fn new(a: usize, b: usize, c: usize, target: Vec<usize>) -> Result<Self, GameError> {
        let sum: usize = target.iter().sum();
        if sum != a + b + 3 * c {
            return Err(GameError::SumMismatch {
                expected: a + b + 3 * c,
                actual: sum,
            });
        }
        Ok(EllipticGameInstance { a, b, c, target })
    }
}

/// Per-column bookkeeping: a check mark makes the column unconditionally
/// acceptable; otherwise we track (#minus − #plus), offset by −1 in the
/// first column so that the failure condition is uniformly "tracker 0 at
/// zero remaining capacity".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Tracker {
    Check,
    Bal(i32),
}

impl Tracker {
    fn plus(self) -> Tracker {
        match self {
            Tracker::Check => Tracker::Check,
            Tracker::Bal(x) => Tracker::Bal(x - 1),
        }
    }

    fn minus(self) -> Tracker {
        match self {
            Tracker::Check => Tracker::Check,
            Tracker::Bal(x) => Tracker::Bal(x + 1),
        }
    }
}

type Column = (usize, Tracker);

/// Memoized solver for the elliptic game. Reusable across instances; the
/// memo key carries the full residual state.
#[derive(Default)]
pub struct EllipticSolver {
    memo: HashMap<(usize, usize, usize, Vec<Column>), bool>,
}

impl EllipticSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reachable(&mut self, inst: &EllipticGameInstance) -> bool {
        let cols: Vec<Column> = inst
            .target
            .iter()
            .enumerate()
            .map(|(i, &n)| (n, Tracker::Bal(if i == 0 { -1 } else { 0 })))
            .collect();
        self.doable(inst.a, inst.b, inst.c, cols)
    }

    fn doable(&mut self, a: usize, b: usize, c: usize, cols: Vec<Column>) -> bool {
        // A full column with balanced tracker can never become acceptable.
        if cols.iter().any(|&(rem, t)| rem == 0 && t == Tracker::Bal(0)) {
            return false;
        }
        let cols: Vec<Column> = cols.into_iter().filter(|&(rem, _)| rem != 0).collect();
        if cols.is_empty() {
            return true;
        }
        let key = (a, b, c, cols.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let j = cols.len();
        let result = if a > 0 {
            (0..j).any(|i| {
                let mut next = cols.clone();
                next[i] = (next[i].0 - 1, Tracker::Check);
                self.doable(a - 1, b, c, next)
            })
        } else if b > 0 {
            (0..j).any(|i| {
                let mut next = cols.clone();
                next[i] = (next[i].0 - 1, next[i].1.minus());
                self.doable(a, b - 1, c, next)
            })
        } else {
            debug_assert!(c > 0, "sum invariant guarantees moves remain");
            let mut found = false;
            // All three symbols in one column.
            for i in 0..j {
                if cols[i].0 >= 3 {
                    let mut next = cols.clone();
                    next[i] = (next[i].0 - 3, next[i].1.plus().minus().minus());
                    if self.doable(a, b, c - 1, next) {
                        found = true;
                        break;
                    }
                }
            }
            // Minus at the smaller index, plus-minus pair at the larger.
            if !found {
                'two: for i in 0..j {
                    for k in (i + 1)..j {
                        if cols[k].0 >= 2 {
                            let mut next = cols.clone();
                            next[i] = (next[i].0 - 1, next[i].1.minus());
                            next[k] = (next[k].0 - 2, next[k].1.plus().minus());
                            if self.doable(a, b, c - 1, next) {
                                found = true;
                                break 'two;
                            }
                        }
                    }
                }
            }
            // Minus in the two smaller indices, plus in the largest.
            if !found {
                'three: for i in 0..j {
                    for k in (i + 1)..j {
                        for l in (k + 1)..j {
                            let mut next = cols.clone();
                            next[i] = (next[i].0 - 1, next[i].1.minus());
                            next[k] = (next[k].0 - 1, next[k].1.minus());
                            next[l] = (next[l].0 - 1, next[l].1.plus());
                            if self.doable(a, b, c - 1, next) {
                                found = true;
                                break 'three;
                            }
                        }
                    }
                }
            }
            found
        };
        self.memo.insert(key, result);
        result
    }
}

/// One-shot reachability query for the elliptic game.
pub fn elliptic_reachable(inst: &EllipticGameInstance) -> bool {
    EllipticSolver::new().reachable(inst)
}

/// One unreachable `(a, b, c, target)` combination found by the scan.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ScanException {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub target: Vec<usize>,
}

/// The three target families probed at level `m`, plus the extra leading
/// values used at m = 5 and m = 6. Ranges follow floor-division arithmetic
/// throughout, so small `m` simply produce empty or inert targets.
fn scan_targets(m: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mid: Vec<i64> = (1..(m + 1).div_euclid(2)).map(|j| 2 * m - 4 * j).collect();
    if m % 2 == 0 {
        for n1 in (2 * m - 3)..(1 + (5 * m - 8).div_euclid(2)) {
            let mut t = vec![n1];
            t.extend_from_slice(&mid);
            t.push(1);
            out.push(t);
        }
        for n1 in ((3 * m - 4).div_euclid(2))..(1 + 2 * m - 3) {
            let mut t = vec![n1];
            t.extend_from_slice(&mid);
            out.push(t);
        }
    } else {
        for n1 in ((3 * m - 5).div_euclid(2))..(1 + (5 * m - 7).div_euclid(2)) {
            let mut t = vec![n1];
            t.extend_from_slice(&mid);
            out.push(t);
        }
    }
    if m == 5 {
        for n1 in [6, 8, 10] {
            out.push(vec![n1, 6, 2]);
        }
    }
    if m == 6 {
        for n1 in [8, 10, 12] {
            out.push(vec![n1, 8, 4]);
            out.push(vec![n1, 8, 4, 1]);
        }
    }
    out
}

fn verify_target(solver: &mut EllipticSolver, target: &[i64], out: &mut Vec<ScanException>) {
    let s: i64 = target.iter().sum();
    let mut c = 0i64;
    while c < 1 + s.div_euclid(3) {
        let mut b = 0i64;
        while b < 1 + s - 3 * c {
            let a = s - b - 3 * c;
            if a == 0 || c == 0 {
                let t: Vec<usize> = target.iter().map(|&x| x as usize).collect();
                let inst = EllipticGameInstance::new(a as usize, b as usize, c as usize, t.clone())
                    .expect("a + b + 3c = sum by construction");
                if !solver.reachable(&inst) {
                    out.push(ScanException {
                        a: a as usize,
                        b: b as usize,
                        c: c as usize,
                        target: t,
                    });
                }
            }
            b += 1;
        }
        c += 1;
    }
}

/// Scan level `m`: every `(a, b, c)` split with `a = 0` or `c = 0` of every
/// family target, returning the unreachable combinations in scan order.
pub fn ellreach_scan(m: usize) -> Vec<ScanException> {
    let mut solver = EllipticSolver::new();
    ellreach_scan_with(&mut solver, m)
}

pub fn ellreach_scan_with(solver: &mut EllipticSolver, m: usize) -> Vec<ScanException> {
    let mut out = Vec::new();
    for target in scan_targets(m as i64) {
        verify_target(solver, &target, &mut out);
    }
    out
}

/// Text report for levels `0..=m_max`, one header line per level and one
/// line per exception, in the classic `a b c : [n1, n2, ...]` layout.
pub fn scan_report(m_max: usize) -> String {
    let mut solver = EllipticSolver::new();
    let mut out = String::new();
    for m in 0..=m_max {
        out.push_str(&format!("For m = {} ...\n", m));
        for exc in ellreach_scan_with(&mut solver, m) {
            let items: Vec<String> = exc.target.iter().map(|n| n.to_string()).collect();
            out.push_str(&format!(
                "{} {} {} : [{}]\n",
                exc.a,
                exc.b,
                exc.c,
                items.join(", ")
            ));
        }
    }
    out
}

/// Every (b, c) split and positive tally with `b + 3c = sum ≤ max_sum` and at
/// most `max_cols` columns. Used by the oracle-equivalence sweeps.
pub fn enumerate_conic_instances(max_sum: usize, max_cols: usize) -> Vec<ConicGameInstance> {
    let mut out = Vec::new();
    for s in 0..=max_sum {
        let mut tallies: Vec<Vec<usize>> = Vec::new();
        if s == 0 {
            tallies.push(Vec::new());
        }
        for j in 1..=max_cols.min(s) {
            tallies.extend(compositions_with_floor(&vec![1; j], s, None));
        }
        for c in 0..=(s / 3) {
            let b = s - 3 * c;
            for t in &tallies {
                out.push(ConicGameInstance::new(b, c, t.clone()).unwrap());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conic(b: usize, c: usize, t: &[usize]) -> ConicGameInstance {
        ConicGameInstance::new(b, c, t.to_vec()).unwrap()
    }

    fn ell(a: usize, b: usize, c: usize, t: &[usize]) -> EllipticGameInstance {
        EllipticGameInstance::new(a, b, c, t.to_vec()).unwrap()
    }

    #[test]
    fn sum_mismatch_rejected() {
        assert_eq!(
            ConicGameInstance::new(0, 1, vec![1, 1]),
            Err(GameError::SumMismatch {
                expected: 3,
                actual: 2
            })
        );
        assert_eq!(
            EllipticGameInstance::new(1, 0, 1, vec![1, 1]),
            Err(GameError::SumMismatch {
                expected: 4,
                actual: 2
            })
        );
    }

    #[test]
    fn conic_bruteforce_examples() {
        assert!(conic_reachable_bruteforce(&conic(1, 0, &[1])));
        assert!(!conic_reachable_bruteforce(&conic(0, 1, &[2, 1])));
        assert!(!conic_reachable_bruteforce(&conic(0, 2, &[3, 2, 1])));
        assert!(conic_reachable_bruteforce(&conic(0, 1, &[1, 2])));
        // Order matters: same multiset, opposite outcomes.
        assert!(conic_reachable_bruteforce(&conic(0, 2, &[3, 1, 2])));
        assert!(!conic_reachable_bruteforce(&conic(0, 2, &[3, 2, 1])));
    }

    #[test]
    fn conic_witness_realizes_target() {
        let inst = conic(2, 3, &[4, 3, 2, 1, 1]);
        let moves = conic_witness(&inst).expect("reachable");
        let mut tally = vec![0usize; 5];
        let mut singles = 0;
        let mut bigs = 0;
        for mv in moves {
            match mv {
                ConicMove::Single(i) => {
                    singles += 1;
                    tally[i] += 1;
                }
                ConicMove::Triple(i, j, k) => {
                    bigs += 1;
                    assert!(i < j && j < k);
                    tally[i] += 1;
                    tally[j] += 1;
                    tally[k] += 1;
                }
                ConicMove::OneTwo(i, j) => {
                    bigs += 1;
                    assert!(i < j);
                    tally[i] += 1;
                    tally[j] += 2;
                }
                ConicMove::ThreeInOne(i) => {
                    bigs += 1;
                    tally[i] += 3;
                }
            }
        }
        assert_eq!(singles, 2);
        assert_eq!(bigs, 3);
        assert_eq!(tally, vec![4, 3, 2, 1, 1]);
    }

    #[test]
    fn conic_closed_examples() {
        assert!(!conic_reachable_closed(&conic(0, 1, &[2, 1])));
        assert!(conic_reachable_closed(&conic(1, 1, &[2, 1, 1])));
        assert!(!conic_reachable_closed(&conic(0, 3, &[6, 2, 1])));
    }

    #[test]
    fn closed_matches_bruteforce_small() {
        for inst in enumerate_conic_instances(9, 4) {
            assert_eq!(
                conic_reachable_closed(&inst),
                conic_reachable_bruteforce(&inst),
                "disagreement at b={} c={} target={:?}",
                inst.b,
                inst.c,
                inst.target
            );
        }
    }

    #[test]
    fn reachability_monotone_under_extra_single() {
        for inst in enumerate_conic_instances(7, 4) {
            if !conic_reachable_bruteforce(&inst) {
                continue;
            }
            for i in 0..inst.target.len() {
                let mut t = inst.target.clone();
                t[i] += 1;
                let bumped = ConicGameInstance::new(inst.b + 1, inst.c, t).unwrap();
                assert!(conic_reachable_bruteforce(&bumped));
            }
        }
    }

    #[test]
    fn updown_examples() {
        // Slack in the dominated direction: any reachable tally under the
        // bounds works; enumeration must find one.
        let r = updown_sequence(&[4, 3], 0, 2, Direction::Dominated).unwrap();
        assert_eq!(r.iter().sum::<usize>(), 6);
        assert!(r[0] <= 4 && r[1] <= 3);
        assert!(conic_reachable_bruteforce(
            &ConicGameInstance::new(0, 2, r).unwrap()
        ));

        // Exact sum, unreachable bounds: nothing fits.
        assert_eq!(updown_sequence(&[2, 1], 0, 1, Direction::Dominated), None);

        // One extra dot of slack: [1,2] dominates [1,1] and is reachable.
        assert_eq!(
            updown_sequence(&[1, 1], 0, 1, Direction::Dominating),
            Some(vec![1, 2])
        );
    }

    #[test]
    fn updown_agrees_with_exhaustive_oracle() {
        // Oracle: enumerate every candidate and test with the brute-force
        // solver; compare emptiness with the closed-form-driven search.
        for bounds in [vec![2, 1], vec![1, 1], vec![3, 2, 1], vec![2, 2], vec![4]] {
            for c in 0..=3usize {
                for b in 0..=6usize {
                    for dir in [Direction::Dominating, Direction::Dominated] {
                        let total = b + 3 * c;
                        let got = updown_sequence(&bounds, b, c, dir);
                        let mut any = None;
                        let iter: Box<dyn Iterator<Item = Vec<usize>>> = match dir {
                            Direction::Dominating => {
                                if total < bounds.iter().sum() {
                                    Box::new(std::iter::empty())
                                } else {
                                    Box::new(compositions_with_floor(&bounds, total, None))
                                }
                            }
                            Direction::Dominated => {
                                if total > bounds.iter().sum() {
                                    Box::new(std::iter::empty())
                                } else {
                                    Box::new(compositions_with_floor(
                                        &vec![0; bounds.len()],
                                        total,
                                        Some(&bounds),
                                    ))
                                }
                            }
                        };
                        for cand in iter {
                            let inst = ConicGameInstance::new(b, c, cand.clone()).unwrap();
                            if conic_reachable_bruteforce(&inst) {
                                any = Some(cand);
                                break;
                            }
                        }
                        assert_eq!(got.is_some(), any.is_some(), "bounds={bounds:?} b={b} c={c} {dir:?}");
                        if let Some(seq) = got {
                            assert!(conic_reachable_bruteforce(
                                &ConicGameInstance::new(b, c, seq).unwrap()
                            ));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn elliptic_examples() {
        assert!(!elliptic_reachable(&ell(0, 2, 0, &[1, 1])));
        assert!(!elliptic_reachable(&ell(0, 1, 0, &[1])));
        assert!(!elliptic_reachable(&ell(0, 0, 2, &[4, 2])));
        assert!(elliptic_reachable(&ell(1, 0, 0, &[1])));
        assert!(elliptic_reachable(&ell(0, 3, 0, &[3])));
    }

    #[test]
    fn elliptic_check_upgrade_is_monotone() {
        // A check mark is strictly stronger than a minus: any realization
        // with a - in some column stays valid when that - becomes a check,
        // so (a-1, b+1, c)-reachable implies (a, b, c)-reachable. (The
        // converse fails: [1] is (1,0,0)-reachable but not (0,1,0)-reachable,
        // which is exactly one of the scan's exception lines.)
        for s in 1..=7usize {
            let mut tallies = vec![];
            for j in 1..=3.min(s) {
                tallies.extend(compositions_with_floor(&vec![1; j], s, None));
            }
            for t in tallies {
                for c in 0..=(s / 3) {
                    for b in 0..=(s - 3 * c) {
                        let a = s - b - 3 * c;
                        if a == 0 {
                            continue;
                        }
                        let weakened = ell(a - 1, b + 1, c, &t);
                        let upgraded = ell(a, b, c, &t);
                        if elliptic_reachable(&weakened) {
                            assert!(
                                elliptic_reachable(&upgraded),
                                "a={a} b={b} c={c} t={t:?}"
                            );
                        }
                    }
                }
            }
        }
        assert!(elliptic_reachable(&ell(1, 0, 0, &[1])));
        assert!(!elliptic_reachable(&ell(0, 1, 0, &[1])));
    }

    #[test]
    fn scan_exceptions_per_level() {
        assert_eq!(
            ellreach_scan(2),
            vec![
                ScanException {
                    a: 0,
                    b: 2,
                    c: 0,
                    target: vec![1, 1]
                },
                ScanException {
                    a: 0,
                    b: 1,
                    c: 0,
                    target: vec![1]
                },
            ]
        );
        assert_eq!(
            ellreach_scan(3)
                .into_iter()
                .map(|e| (e.a, e.b, e.c, e.target))
                .collect::<Vec<_>>(),
            vec![
                (0, 1, 1, vec![2, 2]),
                (0, 2, 1, vec![3, 2]),
                (0, 0, 2, vec![4, 2]),
            ]
        );
        assert_eq!(
            ellreach_scan(4)
                .into_iter()
                .map(|e| (e.a, e.b, e.c, e.target))
                .collect::<Vec<_>>(),
            vec![(0, 0, 3, vec![5, 4])]
        );
        assert!(ellreach_scan(0).is_empty());
        assert!(ellreach_scan(1).is_empty());
        assert!(ellreach_scan(5).is_empty());
    }
}
