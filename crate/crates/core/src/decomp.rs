//! Indecomposable elements and decompositions into them.
//!
//! A member is semigroup indecomposable when no two members sum to it, and
//! monoid indecomposable when no two non-identity members do. Both tests are
//! decided by an exhaustive pair search whose first coordinate is provably
//! confined to `[p.x - B, B]` with `B = c_{max(D, 2)}`, `D = p.y - p.x`: a
//! member with positive first coordinate `a` has difference at least
//! `level(a)`, differences are non-negative and add, so any summand of `p`
//! has difference at most `D` and positive first coordinate at most `c_D`.

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{self, GroundSet, Point, Window};
use crate::sequence::DoublingSequence;

/// Which indecomposability is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// Not a sum of any two members.
    Semigroup,
    /// Not a sum of two non-identity members; only applicable when `(0,0)`
    /// is a member.
    Monoid,
}

impl Sense {
    pub fn as_str(self) -> &'static str {
        match self {
            Sense::Semigroup => "semigroup",
            Sense::Monoid => "monoid",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "semigroup" => Ok(Sense::Semigroup),
            "monoid" => Ok(Sense::Monoid),
            _ => Err(Error::Parse(format!(
                "unknown sense {s:?} (expected semigroup or monoid)"
            ))),
        }
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_sense(ground: GroundSet, sense: Sense) -> Result<()> {
    if sense == Sense::Monoid && !ground.has_identity() {
        return Err(Error::SenseNotApplicable { sense, ground });
    }
    Ok(())
}

/// A multiset of indecomposable points summing to `target`, in canonical
/// form: parts sorted lexicographically, multiplicities positive. Two
/// decompositions are equal iff their canonical forms are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    target: Point,
    parts: Vec<(Point, u64)>,
}

impl Decomposition {
    pub fn new(target: Point, parts: Vec<(Point, u64)>) -> Self {
        let mut parts: Vec<(Point, u64)> = parts.into_iter().filter(|(_, m)| *m > 0).collect();
        parts.sort();
        let mut merged: Vec<(Point, u64)> = Vec::with_capacity(parts.len());
        for (p, m) in parts {
            match merged.last_mut() {
                Some((q, n)) if *q == p => *n += m,
                _ => merged.push((p, m)),
            }
        }
        Decomposition {
            target,
            parts: merged,
        }
    }

    pub fn target(&self) -> Point {
        self.target
    }

    pub fn parts(&self) -> &[(Point, u64)] {
        &self.parts
    }

    pub fn part_count(&self) -> u128 {
        self.parts.iter().map(|(_, m)| *m as u128).sum()
    }

    pub fn multiplicity_of(&self, p: Point) -> u64 {
        self.parts
            .iter()
            .find(|(q, _)| *q == p)
            .map_or(0, |(_, m)| *m)
    }

    /// Exact coordinatewise sum of the parts.
    pub fn sum(&self) -> Result<Point> {
        let mut x: i128 = 0;
        let mut y: i128 = 0;
        for (p, m) in &self.parts {
            x += (p.x as i128) * (*m as i128);
            y += (p.y as i128) * (*m as i128);
        }
        let x = i64::try_from(x).map_err(|_| Error::Overflow("decomposition sum".into()))?;
        let y = i64::try_from(y).map_err(|_| Error::Overflow("decomposition sum".into()))?;
        Ok(Point::new(x, y))
    }

    /// JSON form `{"target":[x,y],"parts":[{"p":[x,y],"m":k},...]}`.
    pub fn to_json(&self) -> String {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(p, m)| format!("{{\"p\":{},\"m\":{}}}", p.to_json(), m))
            .collect();
        format!(
            "{{\"target\":{},\"parts\":[{}]}}",
            self.target.to_json(),
            parts.join(",")
        )
    }
}

impl PartialOrd for Decomposition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decomposition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts
            .cmp(&other.parts)
            .then(self.target.cmp(&other.target))
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{} = (empty)", self.target);
        }
        let rendered: Vec<String> = self.parts.iter().map(|(p, m)| format!("{m}*{p}")).collect();
        write!(f, "{} = {}", self.target, rendered.join(" + "))
    }
}

/// Scan guard: an exhaustive confirmation that would visit more candidate
/// splits than this fails loudly instead of running for hours.
const SCAN_GUARD: u64 = 100_000_000;

/// First-coordinate scan order for pair searches: candidates interleaved
/// outward from `a = 0` and `a = px`, so near-axis witnesses (by far the
/// most common) are found immediately. Covers `[lo, hi]` exactly once.
fn pair_scan(lo: i64, hi: i64, px: i64) -> impl Iterator<Item = i64> {
    let d_max = [
        lo.checked_abs().unwrap_or(i64::MAX),
        hi.checked_abs().unwrap_or(i64::MAX),
        px.checked_sub(lo).unwrap_or(i64::MAX).abs(),
        px.checked_sub(hi).map(i64::abs).unwrap_or(i64::MAX),
    ]
    .into_iter()
    .max()
    .unwrap();
    (0..=d_max).flat_map(move |d| {
        let quad = [Some(-d), Some(d), px.checked_sub(d), px.checked_add(d)];
        let mut out = [None; 4];
        for (slot, cand) in out.iter_mut().zip(quad) {
            let Some(a) = cand else { continue };
            if a < lo || a > hi {
                continue;
            }
            // emitted at the first d where one arm reaches it
            if a.abs().min((a - px).abs()) != d {
                continue;
            }
            *slot = Some(a);
        }
        // dedup arms that coincide at this d
        for i in 1..4 {
            if out[i].is_some() && out[..i].contains(&out[i]) {
                out[i] = None;
            }
        }
        out.into_iter().flatten()
    })
}

/// Effective line bottom for a pair split: under monoid sense the identity
/// is not allowed as a part, so line 0's bottom is lifted off `(0, 0)`.
fn split_bottom(
    seq: &DoublingSequence,
    ground: GroundSet,
    sense: Sense,
    a: i64,
) -> Result<Option<i64>> {
    let Some(bottom) = lattice::line_bottom(seq, ground, a)? else {
        return Ok(None);
    };
    if sense == Sense::Monoid && a == 0 {
        return Ok(Some(bottom.max(1)));
    }
    Ok(Some(bottom))
}

fn require_member(seq: &DoublingSequence, ground: GroundSet, p: Point) -> Result<()> {
    if !lattice::contains(seq, ground, p)? {
        return Err(Error::NotAMember { ground, point: p });
    }
    Ok(())
}

/// Whether no two members (identity excluded under monoid sense) sum to `p`.
/// Decided by exhaustive pair search over first coordinates in
/// `[p.x - B, B]`, `B = c_{max(D, 2)}`; for each split the least possible
/// second coordinate is forced and checked against membership.
pub fn is_indecomposable(
    seq: &DoublingSequence,
    ground: GroundSet,
    p: Point,
    sense: Sense,
) -> Result<bool> {
    check_sense(ground, sense)?;
    require_member(seq, ground, p)?;
    let budget = p.y - p.x;
    let k_bound = u32::try_from(budget.max(2))
        .map_err(|_| Error::Overflow(format!("difference budget {budget}")))?;
    let bound = seq.term(k_bound)?.to_i64().unwrap_or(i64::MAX);
    let lo = p.x.saturating_sub(bound);
    let hi = bound;
    let mut scanned: u64 = 0;
    for a in pair_scan(lo, hi, p.x) {
        scanned += 1;
        if scanned > SCAN_GUARD {
            return Err(Error::Overflow(format!(
                "pair search for {p} exceeds {SCAN_GUARD} splits (bound c_{k_bound})"
            )));
        }
        let Some(b) = p.x.checked_sub(a) else {
            continue;
        };
        if !ground.contains_x(a) || !ground.contains_x(b) {
            continue;
        }
        let Some(bottom_a) = split_bottom(seq, ground, sense, a)? else {
            continue;
        };
        let Some(bottom_b) = split_bottom(seq, ground, sense, b)? else {
            continue;
        };
        if bottom_a as i128 + bottom_b as i128 <= p.y as i128 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exactly the members of `w` passing `is_indecomposable`, sorted.
pub fn indecomposables_in_window(
    seq: &DoublingSequence,
    ground: GroundSet,
    w: &Window,
    sense: Sense,
) -> Result<Vec<Point>> {
    check_sense(ground, sense)?;
    let mut out = Vec::new();
    for p in lattice::enumerate_window(seq, ground, w)? {
        if is_indecomposable(seq, ground, p, sense)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// The closed-form indecomposable set for each ground set (under its
/// default sense), intersected with `w` and sorted:
///
/// * `N0 x N`: `(0,1)` plus every lowest point `(i, l_i)`, `i >= 1`
/// * `N0 x N0`: the above plus the identity
/// * `Z x N`: lowest points plus `(i, 1)` for `i <= 0`
/// * `Z x N0`: lowest points plus `(0,0)`, `(0,1)`, `(-1,0)`
/// * `Z x Z`: band corners `(c_k, c_k + k)` plus `(0,0)`, `(0,1)`, `(-1,-1)`
pub fn predicted_indecomposables(
    seq: &DoublingSequence,
    ground: GroundSet,
    w: &Window,
) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    let mut push = |p: Point| {
        if w.contains(p) {
            out.push(p);
        }
    };
    match ground {
        GroundSet::ZxZ => {
            push(Point::new(-1, -1));
            push(Point::new(0, 0));
            push(Point::new(0, 1));
            for k in 2u32.. {
                let c = seq.term(k)?;
                let Some(c) = c.to_i64() else { break };
                if c > w.x_max {
                    break;
                }
                let Some(y) = c.checked_add(k as i64) else {
                    break;
                };
                push(Point::new(c, y));
            }
        }
        GroundSet::ZxN0 => {
            push(Point::new(-1, 0));
            push(Point::new(0, 0));
            push(Point::new(0, 1));
            push_lowest_points(seq, w, &mut push)?;
        }
        GroundSet::ZxN => {
            for i in w.x_min..=0.min(w.x_max) {
                push(Point::new(i, 1));
            }
            push_lowest_points(seq, w, &mut push)?;
        }
        GroundSet::N0xN0 => {
            push(Point::new(0, 0));
            push(Point::new(0, 1));
            push_lowest_points(seq, w, &mut push)?;
        }
        GroundSet::N0xN => {
            push(Point::new(0, 1));
            push_lowest_points(seq, w, &mut push)?;
        }
    }
    out.sort();
    Ok(out)
}

fn push_lowest_points(
    seq: &DoublingSequence,
    w: &Window,
    push: &mut impl FnMut(Point),
) -> Result<()> {
    for i in 1.max(w.x_min)..=w.x_max {
        let level = seq.level(i)? as i64;
        push(Point::new(i, i + level));
    }
    Ok(())
}

/// A positive-difference candidate part for the decomposition enumerator.
#[derive(Debug, Clone, Copy)]
struct Part {
    point: Point,
    diff: i64,
}

/// Candidate indecomposables with difference in `[1, budget]` that can
/// appear in a decomposition of `target`, sorted lexicographically.
///
/// Positive first coordinates are capped by the first-coordinate equation:
/// negative parts contribute at most `budget` (their differences add), so a
/// positive part's coordinate never exceeds `target.x + budget`.
fn candidate_parts(
    seq: &DoublingSequence,
    ground: GroundSet,
    target: Point,
    budget: i64,
) -> Result<Vec<Part>> {
    let mut cands = Vec::new();
    let mut add = |p: Point| {
        let diff = p.y - p.x;
        debug_assert!(diff >= 1);
        if diff <= budget {
            cands.push(Part { point: p, diff });
        }
    };
    match ground {
        GroundSet::ZxZ => {
            add(Point::new(0, 1));
            for k in 2..=budget.max(0) {
                let c = seq.term(k as u32)?;
                let c = c.to_i64().ok_or_else(|| {
                    Error::Overflow(format!("band corner c_{k} does not fit a coordinate"))
                })?;
                let y = c
                    .checked_add(k)
                    .ok_or_else(|| Error::Overflow(format!("band corner c_{k} + {k}")))?;
                add(Point::new(c, y));
            }
        }
        GroundSet::ZxN0 => {
            add(Point::new(-1, 0));
            add(Point::new(0, 1));
            add_lowest_candidates(seq, target.x.saturating_add(budget), budget, &mut add)?;
        }
        GroundSet::ZxN => {
            for i in (1 - budget).min(0)..=0 {
                add(Point::new(i, 1));
            }
            add_lowest_candidates(seq, target.x.saturating_add(budget), budget, &mut add)?;
        }
        GroundSet::N0xN0 | GroundSet::N0xN => {
            add(Point::new(0, 1));
            add_lowest_candidates(seq, target.x, budget, &mut add)?;
        }
    }
    cands.sort_by_key(|p| p.point);
    Ok(cands)
}

fn add_lowest_candidates(
    seq: &DoublingSequence,
    x_cap: i64,
    budget: i64,
    add: &mut impl FnMut(Point),
) -> Result<()> {
    for i in 1..=x_cap {
        let level = seq.level(i)? as i64;
        if level > budget {
            break;
        }
        add(Point::new(i, i + level));
    }
    Ok(())
}

/// Greatest achievable first-coordinate sum of parts totalling difference
/// `r`: since `c_a + c_b <= c_{a+b-1}`, it is at most `c_r`.
fn max_sum_table(seq: &DoublingSequence, budget: i64) -> Result<Vec<i64>> {
    let mut table = vec![0i64; budget as usize + 1];
    for (r, slot) in table.iter_mut().enumerate().skip(2) {
        *slot = seq.term(r as u32)?.to_i64().unwrap_or(i64::MAX);
    }
    Ok(table)
}

fn min_sum(ground: GroundSet, r: i64) -> i64 {
    if r == 0 {
        return 0;
    }
    match ground {
        GroundSet::ZxN => 1 - r,
        GroundSet::ZxN0 => -r,
        _ => 0,
    }
}

struct Enumerator<'a> {
    ground: GroundSet,
    target: Point,
    cands: Vec<Part>,
    max_sum: Vec<i64>,
    max_count: Option<usize>,
    stack: Vec<Point>,
    out: &'a mut Vec<Decomposition>,
}

impl Enumerator<'_> {
    fn record(&mut self, filler: u64) {
        let mut parts: Vec<(Point, u64)> = Vec::new();
        if filler > 0 {
            parts.push((Point::new(-1, -1), filler));
        }
        for p in &self.stack {
            parts.push((*p, 1));
        }
        self.out.push(Decomposition::new(self.target, parts));
    }

    fn done(&self) -> bool {
        self.max_count.is_some_and(|m| self.out.len() >= m)
    }

    /// Chooses parts by non-decreasing candidate index so every multiset is
    /// generated exactly once. `remaining` is the unspent difference budget
    /// and `sum_x` the first-coordinate total so far.
    fn dfs(&mut self, from: usize, remaining: i64, sum_x: i64) {
        if self.done() {
            return;
        }
        if remaining == 0 {
            match self.ground {
                GroundSet::ZxZ => {
                    // multiplicity of the zero-difference part (-1,-1) is
                    // solved from the first-coordinate equation
                    let filler = sum_x - self.target.x;
                    if filler >= 0 && self.stack.len() as i64 + filler >= 2 {
                        self.record(filler as u64);
                    }
                }
                _ => {
                    if sum_x == self.target.x && self.stack.len() >= 2 {
                        self.record(0);
                    }
                }
            }
            return;
        }
        for j in from..self.cands.len() {
            let part = self.cands[j];
            if part.diff > remaining {
                continue;
            }
            let rest = remaining - part.diff;
            let next_sum = sum_x.saturating_add(part.point.x);
            // feasibility of the first-coordinate equation
            let reachable_max = next_sum.saturating_add(self.max_sum[rest as usize]);
            if reachable_max < self.target.x {
                continue;
            }
            if self.ground != GroundSet::ZxZ {
                let needed = self.target.x - next_sum;
                if needed < min_sum(self.ground, rest) {
                    continue;
                }
            }
            self.stack.push(part.point);
            self.dfs(j, rest, next_sum);
            self.stack.pop();
            if self.done() {
                return;
            }
        }
    }
}

/// All distinct canonical multiset decompositions of `p` into
/// indecomposables (identity excluded), sorted by canonical form. Parts with
/// positive difference are chosen by depth-first search within the
/// difference budget; the multiplicity of the zero-difference part
/// `(-1,-1)` (present only in `Z x Z`) is forced by the first-coordinate
/// equation. With `max_count`, enumeration stops early and the collected
/// subset is returned sorted.
pub fn decompositions(
    seq: &DoublingSequence,
    ground: GroundSet,
    p: Point,
    sense: Sense,
    max_count: Option<usize>,
) -> Result<Vec<Decomposition>> {
    check_sense(ground, sense)?;
    require_member(seq, ground, p)?;
    if p == Point::new(0, 0) {
        return match sense {
            // the identity itself: no decomposition into non-identity parts
            Sense::Monoid => Ok(Vec::new()),
            Sense::Semigroup => Err(Error::NotApplicable(
                "(0, 0) under semigroup sense only decomposes trivially through itself".to_string(),
            )),
        };
    }
    if sense == Sense::Semigroup && ground.has_identity() {
        // every member absorbs the identity, so nothing is semigroup
        // indecomposable and no decomposition into indecomposables exists
        return Ok(Vec::new());
    }
    let budget = p.y - p.x;
    let cands = candidate_parts(seq, ground, p, budget)?;
    let max_sum = max_sum_table(seq, budget)?;
    let mut out = Vec::new();
    let mut enumerator = Enumerator {
        ground,
        target: p,
        cands,
        max_sum,
        max_count,
        stack: Vec::new(),
        out: &mut out,
    };
    enumerator.dfs(0, budget, 0);
    out.sort();
    Ok(out)
}

/// The decompositions of twice a lowest point, together with the two forms
/// the doubling identity `(i,l_i) + (i,l_i) = (2i,l_{2i}) + (2l_i - l_{2i})(0,1)`
/// predicts.
#[derive(Debug, Clone)]
pub struct DoubledBottom {
    pub target: Point,
    pub all: Vec<Decomposition>,
    /// `(i, l_i)` taken twice.
    pub pair_form: Decomposition,
    /// `(2i, l_{2i})` plus `(2 l_i - l_{2i})` copies of `(0, 1)`.
    pub step_form: Decomposition,
}

impl DoubledBottom {
    pub fn pair_present(&self) -> bool {
        self.all.contains(&self.pair_form)
    }

    pub fn step_present(&self) -> bool {
        self.all.contains(&self.step_form)
    }
}

pub fn doubled_bottom_decompositions(
    seq: &DoublingSequence,
    ground: GroundSet,
    i: i64,
) -> Result<DoubledBottom> {
    if i < 1 {
        return Err(Error::BadIndex(format!(
            "doubled lowest point needs i >= 1, got {i}"
        )));
    }
    let l_i = i + seq.level(i)? as i64;
    let l_2i = 2 * i + seq.level(2 * i)? as i64;
    let target = Point::new(2 * i, 2 * l_i);
    let all = decompositions(seq, ground, target, ground.default_sense(), None)?;
    let pair_form = Decomposition::new(target, vec![(Point::new(i, l_i), 2)]);
    let step_mult = (2 * l_i - l_2i) as u64;
    let step_form = Decomposition::new(
        target,
        vec![(Point::new(2 * i, l_2i), 1), (Point::new(0, 1), step_mult)],
    );
    Ok(DoubledBottom {
        target,
        all,
        pair_form,
        step_form,
    })
}

/// The explicit `Z x Z` witness that twice a band corner splits into three
/// or more non-zero indecomposables:
/// `(2c_k, 2(c_k+k)) = (c_{k+2}, c_{k+2}+k+2) + d(-1,-1) + n(0,1)` with
/// `d = c_{k+2} - 2c_k >= 2` and `n = k - 2`.
pub fn doubled_corner_decomposition(seq: &DoublingSequence, k: u32) -> Result<Decomposition> {
    if k < 2 {
        return Err(Error::BadIndex(format!("band corner index {k} < 2")));
    }
    let c_k = seq.term(k)?;
    let c_k2 = seq.term(k + 2)?;
    let filler_big: num_bigint::BigInt = &c_k2 - &c_k * 2;
    let filler = filler_big
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("filler multiplicity c_{} - 2 c_{k}", k + 2)))?;
    debug_assert!(filler >= 2);
    let c_k = c_k
        .to_i64()
        .ok_or_else(|| Error::Overflow(format!("c_{k} does not fit a coordinate")))?;
    let c_k2 = c_k2
        .to_i64()
        .ok_or_else(|| Error::Overflow(format!("c_{} does not fit a coordinate", k + 2)))?;
    let target = Point::new(2 * c_k, 2 * (c_k + k as i64));
    let corner = Point::new(c_k2, c_k2 + k as i64 + 2);
    let dec = Decomposition::new(
        target,
        vec![
            (corner, 1),
            (Point::new(-1, -1), filler),
            (Point::new(0, 1), k as u64 - 2),
        ],
    );
    debug_assert_eq!(dec.sum().unwrap(), target);
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Window;

    fn figure_sigma() -> DoublingSequence {
        DoublingSequence::parse("1,2,5,10", "double").unwrap()
    }

    fn pt(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn pts(raw: &[(i64, i64)]) -> Vec<Point> {
        raw.iter().map(|&(x, y)| pt(x, y)).collect()
    }

    fn dec(target: Point, parts: &[((i64, i64), u64)]) -> Decomposition {
        Decomposition::new(
            target,
            parts.iter().map(|&((x, y), m)| (pt(x, y), m)).collect(),
        )
    }

    #[test]
    fn scan_order_covers_range_once() {
        for (lo, hi, px) in [(-7, 9, 3), (-4, 4, 0), (0, 6, 6), (-3, 3, -2), (2, 2, 4)] {
            let mut seen: Vec<i64> = pair_scan(lo, hi, px).collect();
            seen.sort();
            let expected: Vec<i64> = (lo..=hi).collect();
            assert_eq!(seen, expected, "lo={lo} hi={hi} px={px}");
        }
    }

    #[test]
    fn scan_order_starts_at_the_axes() {
        let first: Vec<i64> = pair_scan(-10, 10, 4).take(2).collect();
        assert_eq!(first, vec![0, 4]);
    }

    #[test]
    fn scan_order_exhaustive_sweep() {
        for lo in -8..=0 {
            for width in 0..=8 {
                for px in -6..=6 {
                    let hi = lo + width;
                    let mut seen: Vec<i64> = pair_scan(lo, hi, px).collect();
                    seen.sort();
                    assert_eq!(seen, (lo..=hi).collect::<Vec<i64>>(), "lo={lo} hi={hi} px={px}");
                }
            }
        }
    }

    #[test]
    fn known_indecomposables() {
        let seq = figure_sigma();
        assert!(is_indecomposable(&seq, GroundSet::N0xN, pt(2, 5), Sense::Semigroup).unwrap());
        assert!(!is_indecomposable(&seq, GroundSet::N0xN, pt(1, 4), Sense::Semigroup).unwrap());
        assert!(is_indecomposable(&seq, GroundSet::ZxZ, pt(0, 0), Sense::Monoid).unwrap());
        assert!(is_indecomposable(&seq, GroundSet::ZxZ, pt(2, 5), Sense::Monoid).unwrap());
        assert!(!is_indecomposable(&seq, GroundSet::ZxZ, pt(4, 8), Sense::Monoid).unwrap());
    }

    #[test]
    fn semigroup_sense_in_a_monoid_decomposes_everything() {
        let seq = figure_sigma();
        assert!(!is_indecomposable(&seq, GroundSet::ZxZ, pt(0, 1), Sense::Semigroup).unwrap());
        assert!(!is_indecomposable(&seq, GroundSet::ZxZ, pt(0, 0), Sense::Semigroup).unwrap());
    }

    #[test]
    fn monoid_sense_needs_an_identity() {
        let seq = figure_sigma();
        let err = is_indecomposable(&seq, GroundSet::N0xN, pt(0, 1), Sense::Monoid).unwrap_err();
        assert!(matches!(err, Error::SenseNotApplicable { .. }));
    }

    #[test]
    fn non_members_are_rejected() {
        let seq = figure_sigma();
        let err = is_indecomposable(&seq, GroundSet::ZxZ, pt(5, 8), Sense::Monoid).unwrap_err();
        assert!(matches!(err, Error::NotAMember { .. }));
    }

    #[test]
    fn finite_horizon_is_loud() {
        let short = DoublingSequence::parse("1,2", "finite").unwrap();
        // difference budget 5 asks for c_5, beyond the stored prefix
        let err =
            is_indecomposable(&short, GroundSet::N0xN, pt(1, 6), Sense::Semigroup).unwrap_err();
        assert!(matches!(err, Error::BeyondHorizon(_)));
        let w = Window::new(0, 3, 1, 6).unwrap();
        let err = lattice::enumerate_window(&short, GroundSet::N0xN, &w).unwrap_err();
        assert!(matches!(err, Error::BeyondHorizon(_)));
    }

    #[test]
    fn infeasible_budgets_error_instead_of_running_away() {
        // band corners for a difference budget in the hundreds cannot be
        // materialized as coordinates
        let seq = figure_sigma();
        let err =
            decompositions(&seq, GroundSet::ZxZ, pt(0, 300), Sense::Monoid, None).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    #[test]
    fn window_indecomposables_match_closed_forms() {
        let seq = figure_sigma();
        let w = Window::new(0, 5, 1, 9).unwrap();
        assert_eq!(
            indecomposables_in_window(&seq, GroundSet::N0xN, &w, Sense::Semigroup).unwrap(),
            pts(&[(0, 1), (1, 3), (2, 5), (3, 7), (4, 8), (5, 9)])
        );
        // (2, 5) is the k = 3 band corner and lies inside this window
        let w = Window::new(-2, 2, -2, 5).unwrap();
        assert_eq!(
            indecomposables_in_window(&seq, GroundSet::ZxZ, &w, Sense::Monoid).unwrap(),
            pts(&[(-1, -1), (0, 0), (0, 1), (1, 3), (2, 5)])
        );
        let w = Window::new(-2, 0, 1, 1).unwrap();
        assert_eq!(
            indecomposables_in_window(&seq, GroundSet::ZxN, &w, Sense::Semigroup).unwrap(),
            pts(&[(-2, 1), (-1, 1), (0, 1)])
        );
    }

    #[test]
    fn predicted_sets_match_closed_forms() {
        let seq = figure_sigma();
        let w = Window::new(0, 11, 0, 18).unwrap();
        assert_eq!(
            predicted_indecomposables(&seq, GroundSet::ZxZ, &w).unwrap(),
            pts(&[(0, 0), (0, 1), (1, 3), (2, 5), (5, 9), (10, 15)])
        );
        let w = Window::new(0, 1, 0, 3).unwrap();
        assert_eq!(
            predicted_indecomposables(&seq, GroundSet::N0xN0, &w).unwrap(),
            pts(&[(0, 0), (0, 1), (1, 3)])
        );
        let w = Window::new(-1, 0, 0, 1).unwrap();
        assert_eq!(
            predicted_indecomposables(&seq, GroundSet::ZxN0, &w).unwrap(),
            pts(&[(-1, 0), (0, 0), (0, 1)])
        );
    }

    #[test]
    fn decomposition_multiplicity_claims() {
        let seq = figure_sigma();

        let decs = decompositions(&seq, GroundSet::ZxZ, pt(-2, -2), Sense::Monoid, None).unwrap();
        assert_eq!(decs, vec![dec(pt(-2, -2), &[((-1, -1), 2)])]);

        let decs = decompositions(&seq, GroundSet::ZxZ, pt(0, 2), Sense::Monoid, None).unwrap();
        assert_eq!(
            decs,
            vec![
                dec(pt(0, 2), &[((-1, -1), 1), ((1, 3), 1)]),
                dec(pt(0, 2), &[((0, 1), 2)]),
            ]
        );

        // brute-force over member pairs/triples with non-negative first
        // coordinates leaves only (0,1) + (0,1)
        let decs = decompositions(&seq, GroundSet::N0xN, pt(0, 2), Sense::Semigroup, None).unwrap();
        assert_eq!(decs, vec![dec(pt(0, 2), &[((0, 1), 2)])]);
    }

    #[test]
    fn zxn0_uniqueness_claims() {
        let seq = figure_sigma();
        let decs = decompositions(&seq, GroundSet::ZxN0, pt(0, 2), Sense::Monoid, None).unwrap();
        assert_eq!(decs, vec![dec(pt(0, 2), &[((0, 1), 2)])]);
        let decs = decompositions(&seq, GroundSet::ZxN0, pt(-2, 0), Sense::Monoid, None).unwrap();
        assert_eq!(decs, vec![dec(pt(-2, 0), &[((-1, 0), 2)])]);
    }

    #[test]
    fn identity_target_is_degenerate() {
        let seq = figure_sigma();
        assert!(
            decompositions(&seq, GroundSet::ZxZ, pt(0, 0), Sense::Monoid, None)
                .unwrap()
                .is_empty()
        );
        let err =
            decompositions(&seq, GroundSet::ZxZ, pt(0, 0), Sense::Semigroup, None).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
    }

    #[test]
    fn max_count_truncates() {
        let seq = figure_sigma();
        let decs = decompositions(&seq, GroundSet::ZxZ, pt(0, 2), Sense::Monoid, Some(1)).unwrap();
        assert_eq!(decs.len(), 1);
    }

    #[test]
    fn doubled_bottom_forms() {
        let seq = figure_sigma();

        let db = doubled_bottom_decompositions(&seq, GroundSet::N0xN, 1).unwrap();
        assert_eq!(db.pair_form, dec(pt(2, 6), &[((1, 3), 2)]));
        assert_eq!(db.step_form, dec(pt(2, 6), &[((2, 5), 1), ((0, 1), 1)]));
        assert!(db.pair_present() && db.step_present());

        // 2 * 7 - 11 = 3 copies of (0, 1), confirmed by the enumeration
        let db = doubled_bottom_decompositions(&seq, GroundSet::N0xN, 3).unwrap();
        assert_eq!(db.step_form, dec(pt(6, 14), &[((6, 11), 1), ((0, 1), 3)]));
        assert!(db.pair_present() && db.step_present());

        let db = doubled_bottom_decompositions(&seq, GroundSet::ZxZ, 2).unwrap();
        assert!(db.all.len() >= 2);
    }

    #[test]
    fn doubled_corner_witnesses() {
        let seq = figure_sigma();
        // d = c_4 - 2 c_2 = 3, n = 0, so the sum is (2, 6) = 2 * (1, 3)
        let w = doubled_corner_decomposition(&seq, 2).unwrap();
        assert_eq!(w, dec(pt(2, 6), &[((5, 9), 1), ((-1, -1), 3)]));
        assert_eq!(w.part_count(), 4);

        // d = c_5 - 2 c_3 = 6, n = 1, sum (4, 10) = 2 * (2, 5)
        let w = doubled_corner_decomposition(&seq, 3).unwrap();
        assert_eq!(
            w,
            dec(pt(4, 10), &[((10, 15), 1), ((-1, -1), 6), ((0, 1), 1)])
        );
        assert_eq!(w.part_count(), 8);

        let pow2 = DoublingSequence::parse("1,2,4,8,16", "double").unwrap();
        let w = doubled_corner_decomposition(&pow2, 2).unwrap();
        assert_eq!(w.multiplicity_of(pt(-1, -1)), 2);
        assert_eq!(w.part_count(), 3);
    }

    #[test]
    fn restriction_on_small_second_coordinates() {
        // members of Z x N0 with y in {0, 1, 2} all have x <= 0
        let seq = figure_sigma();
        let w = Window::new(-20, 20, 0, 2).unwrap();
        for p in lattice::enumerate_window(&seq, GroundSet::ZxN0, &w).unwrap() {
            assert!(p.x <= 0, "{p}");
        }
    }

    #[test]
    fn decomposition_canonical_form() {
        let d1 = dec(pt(0, 2), &[((0, 1), 1), ((0, 1), 1)]);
        let d2 = dec(pt(0, 2), &[((0, 1), 2)]);
        assert_eq!(d1, d2);
        assert_eq!(
            d1.to_json(),
            "{\"target\":[0,2],\"parts\":[{\"p\":[0,1],\"m\":2}]}"
        );
        assert_eq!(d1.sum().unwrap(), pt(0, 2));
    }
}
