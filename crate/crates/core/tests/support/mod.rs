//! Test-only oracles, kept independent of the library's enumeration path:
//! indecomposability is re-derived by a literal double loop over pair
//! splits, and decompositions are re-enumerated knapsack-style over
//! naively-derived candidates with per-candidate multiplicity choices.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use subdirect::lattice::{self, GroundSet, Point};
use subdirect::{DoublingSequence, Sense};

pub fn figure_sigma() -> DoublingSequence {
    DoublingSequence::parse("1,2,5,10", "double").unwrap()
}

pub fn big_vec(raw: &[i64]) -> Vec<BigInt> {
    raw.iter().map(|&v| BigInt::from(v)).collect()
}

/// Search bound for summands of `p`: `c_{max(D, 2)}` with `D = p.y - p.x`.
pub fn search_bound(seq: &DoublingSequence, p: Point) -> i64 {
    let budget = (p.y - p.x).max(2) as u32;
    seq.term(budget).unwrap().to_i64().unwrap_or(i64::MAX)
}

fn bottom(seq: &DoublingSequence, ground: GroundSet, x: i64) -> Option<i64> {
    lattice::line_bottom(seq, ground, x).unwrap()
}

fn is_member(seq: &DoublingSequence, ground: GroundSet, p: Point) -> bool {
    lattice::contains(seq, ground, p).unwrap()
}

/// Literal pair search scanning first coordinates in plain ascending order
/// and second coordinates one by one: does any sum of two members
/// (non-identity under monoid sense) equal `p`?
pub fn naive_is_indecomposable(
    seq: &DoublingSequence,
    ground: GroundSet,
    p: Point,
    sense: Sense,
) -> bool {
    assert!(is_member(seq, ground, p));
    let identity = Point::new(0, 0);
    let bound = search_bound(seq, p);
    for a in p.x.saturating_sub(bound)..=bound {
        let b = p.x - a;
        if !ground.contains_x(a) || !ground.contains_x(b) {
            continue;
        }
        let (Some(bot_a), Some(bot_b)) = (bottom(seq, ground, a), bottom(seq, ground, b)) else {
            continue;
        };
        for x in bot_a..=(p.y - bot_b) {
            let u = Point::new(a, x);
            let v = Point::new(b, p.y - x);
            if sense == Sense::Monoid && (u == identity || v == identity) {
                continue;
            }
            debug_assert!(is_member(seq, ground, u) && is_member(seq, ground, v));
            return false;
        }
    }
    true
}

/// Candidate parts shared by every target of a window sweep, derived by the
/// naive pair search alone.
pub struct Oracle<'a> {
    seq: &'a DoublingSequence,
    ground: GroundSet,
    sense: Sense,
    universe: Vec<Point>,
}

impl<'a> Oracle<'a> {
    /// `x_lo..=x_hi`, `budget`: bounds covering every target the oracle
    /// will be asked about (window x-range and maximal difference).
    pub fn new(
        seq: &'a DoublingSequence,
        ground: GroundSet,
        x_lo: i64,
        x_hi: i64,
        budget: i64,
    ) -> Self {
        let sense = ground.default_sense();
        let bound = search_bound(seq, Point::new(0, budget));
        let lo = match ground {
            GroundSet::N0xN0 | GroundSet::N0xN => 0,
            _ => x_lo.saturating_sub(bound),
        };
        let hi = match ground {
            GroundSet::ZxZ => bound,
            GroundSet::ZxN0 | GroundSet::ZxN => bound.min(x_hi + budget),
            GroundSet::N0xN0 | GroundSet::N0xN => bound.min(x_hi),
        };
        let mut universe = Vec::new();
        for a in lo..=hi {
            let Some(bot) = bottom(seq, ground, a) else {
                continue;
            };
            for y in bot..=(a.saturating_add(budget)) {
                let q = Point::new(a, y);
                if q == Point::new(0, 0) || y - a > budget {
                    continue;
                }
                if naive_is_indecomposable(seq, ground, q, sense) {
                    universe.push(q);
                }
            }
        }
        universe.sort();
        Oracle {
            seq,
            ground,
            sense,
            universe,
        }
    }

    /// All decompositions of `target` into indecomposables, as canonical
    /// sorted part lists.
    pub fn decompositions(&self, target: Point) -> BTreeSet<Vec<(Point, u64)>> {
        assert!(is_member(self.seq, self.ground, target));
        if target == Point::new(0, 0) {
            return BTreeSet::new();
        }
        let budget = target.y - target.x;
        let bound = search_bound(self.seq, target);
        let cands: Vec<Point> = self
            .universe
            .iter()
            .filter(|q| {
                q.y - q.x <= budget && q.x >= target.x.saturating_sub(bound) && q.x <= bound
            })
            .copied()
            .collect();
        let diffs: Vec<i64> = cands.iter().map(|q| q.y - q.x).collect();

        // suffix_max[j][r]: greatest first-coordinate sum achievable from
        // candidates j.. within difference budget r
        let unreachable = i64::MIN / 4;
        let mut suffix_max = vec![vec![unreachable; budget as usize + 1]; cands.len() + 1];
        suffix_max[cands.len()].fill(0);
        for j in (0..cands.len()).rev() {
            for r in 0..=budget as usize {
                let skip = suffix_max[j + 1][r];
                let take = if diffs[j] > 0 && diffs[j] as usize <= r {
                    suffix_max[j][r - diffs[j] as usize].saturating_add(cands[j].x)
                } else {
                    unreachable
                };
                suffix_max[j][r] = skip.max(take);
            }
        }

        let mut out = BTreeSet::new();
        let mut stack = Vec::new();
        knapsack(
            &cands,
            &diffs,
            &suffix_max,
            target,
            0,
            budget,
            0,
            &mut stack,
            &mut out,
        );
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn knapsack(
    cands: &[Point],
    diffs: &[i64],
    suffix_max: &[Vec<i64>],
    target: Point,
    j: usize,
    remaining: i64,
    sum_x: i64,
    stack: &mut Vec<(Point, u64)>,
    out: &mut BTreeSet<Vec<(Point, u64)>>,
) {
    if sum_x.saturating_add(suffix_max[j][remaining as usize]) < target.x {
        return;
    }
    if j == cands.len() {
        if remaining == 0 && sum_x == target.x {
            let count: u64 = stack.iter().map(|(_, m)| m).sum();
            if count >= 2 {
                out.insert(stack.clone());
            }
        }
        return;
    }
    let max_mult = if diffs[j] > 0 {
        remaining / diffs[j]
    } else {
        // zero-difference part (negative first coordinate): bounded by the
        // first-coordinate equation
        (sum_x + suffix_max[j + 1][remaining as usize]).saturating_sub(target.x) / -cands[j].x
    };
    for m in 0..=max_mult.max(0) {
        if m > 0 {
            stack.push((cands[j], m as u64));
        }
        knapsack(
            cands,
            diffs,
            suffix_max,
            target,
            j + 1,
            remaining - diffs[j] * m,
            sum_x + cands[j].x * m,
            stack,
            out,
        );
        if m > 0 {
            stack.pop();
        }
    }
}
