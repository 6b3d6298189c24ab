//! Exhaustive desk-scale checks with machine-readable reports, plus the
//! fingerprint invariant that recovers the sequence from windowed
//! indecomposables and separates non-isomorphic intersections.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::decomp::{self, Decomposition, Sense};
use crate::error::{Error, Result};
use crate::lattice::{self, GroundSet, LineBottoms, Point, Window};
use crate::sequence::DoublingSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One check outcome. `params` and `witness` hold JSON text; a failing
/// report always carries a witness that re-verifies through the lattice and
/// decomposition operations.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check: &'static str,
    pub status: Status,
    pub params: String,
    pub witness: Option<String>,
    pub detail: Option<String>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One NDJSON line. Elapsed time sits in its own clearly marked field;
    /// everything else is a pure function of the inputs.
    pub fn ndjson_line(&self) -> String {
        let mut line = format!(
            "{{\"check\":\"{}\",\"status\":\"{}\",\"params\":{}",
            self.check, self.status, self.params
        );
        if let Some(w) = &self.witness {
            line.push_str(",\"witness\":");
            line.push_str(w);
        }
        if let Some(d) = &self.detail {
            line.push_str(",\"detail\":\"");
            line.push_str(&json_escape(d));
            line.push('"');
        }
        line.push_str(&format!(",\"elapsed_ms\":{}", self.elapsed.as_millis()));
        line.push('}');
        line
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn points_json(points: &[Point]) -> String {
    let body: Vec<String> = points.iter().map(|p| p.to_json()).collect();
    format!("[{}]", body.join(","))
}

fn window_json(w: &Window) -> String {
    format!("[{},{},{},{}]", w.x_min, w.x_max, w.y_min, w.y_max)
}

fn params_json(seq: &DoublingSequence, ground: GroundSet, rest: &[(&str, String)]) -> String {
    let mut out = format!(
        "{{\"sigma\":{},\"ground\":\"{}\"",
        seq.canonical_json(),
        ground
    );
    for (key, value) in rest {
        out.push_str(&format!(",\"{key}\":{value}"));
    }
    out.push('}');
    out
}

/// Closure of the intersection: every pairwise sum of window members must
/// again be a member, checked analytically so sums leaving the window are
/// still validated.
pub fn check_closure(seq: &DoublingSequence, ground: GroundSet, w: &Window) -> Result<CheckReport> {
    check_closure_injected(seq, ground, w, &[])
}

/// Mutation-testing hook: `injected` points join the pair enumeration while
/// sums are still validated against the analytic membership, so a
/// sub-threshold injection surfaces as a closure violation.
pub fn check_closure_injected(
    seq: &DoublingSequence,
    ground: GroundSet,
    w: &Window,
    injected: &[Point],
) -> Result<CheckReport> {
    let start = Instant::now();
    let mut members = lattice::enumerate_window(seq, ground, w)?;
    members.extend_from_slice(injected);
    members.sort();
    members.dedup();
    let mut rest = vec![("window", window_json(w))];
    if !injected.is_empty() {
        rest.push(("injected", points_json(injected)));
    }
    let params = params_json(seq, ground, &rest);
    if members.is_empty() {
        return Ok(CheckReport {
            check: "closure",
            status: Status::Pass,
            params,
            witness: None,
            detail: Some("0 members, 0 pairs".to_string()),
            elapsed: start.elapsed(),
        });
    }
    let x_lo = members.iter().map(|p| p.x).min().unwrap();
    let x_hi = members.iter().map(|p| p.x).max().unwrap();
    let bottoms = LineBottoms::build(seq, ground, 2 * x_lo, 2 * x_hi)?;
    let mut pairs: u64 = 0;
    for i in 0..members.len() {
        for j in i..members.len() {
            pairs += 1;
            let sum = members[i].checked_add(members[j])?;
            if !bottoms.is_member(sum) {
                let witness = format!(
                    "{{\"pair\":[{},{}],\"sum\":{},\"line_bottom\":{}}}",
                    members[i].to_json(),
                    members[j].to_json(),
                    sum.to_json(),
                    match bottoms.bottom(sum.x) {
                        Some(b) => b.to_string(),
                        None => "null".to_string(),
                    }
                );
                return Ok(CheckReport {
                    check: "closure",
                    status: Status::Fail,
                    params,
                    witness: Some(witness),
                    detail: Some("pair sum below its line bottom".to_string()),
                    elapsed: start.elapsed(),
                });
            }
        }
    }
    Ok(CheckReport {
        check: "closure",
        status: Status::Pass,
        params,
        witness: None,
        detail: Some(format!("{} members, {} pairs", members.len(), pairs)),
        elapsed: start.elapsed(),
    })
}

/// Subdirectness: every first coordinate in `x_range` and second coordinate
/// in `y_range` must be covered by a member, constructed analytically from
/// line bottoms and re-verified through the membership predicate.
pub fn check_subdirect(
    seq: &DoublingSequence,
    ground: GroundSet,
    x_range: (i64, i64),
    y_range: (i64, i64),
) -> Result<CheckReport> {
    let start = Instant::now();
    let params = params_json(
        seq,
        ground,
        &[
            ("x_range", format!("[{},{}]", x_range.0, x_range.1)),
            ("y_range", format!("[{},{}]", y_range.0, y_range.1)),
        ],
    );
    let fail = |coord: &str, value: i64, start: Instant| CheckReport {
        check: "subdirect",
        status: Status::Fail,
        params: params.clone(),
        witness: Some(format!("{{\"coordinate\":\"{coord}\",\"value\":{value}}}")),
        detail: Some(format!("no member covers {coord} = {value}")),
        elapsed: start.elapsed(),
    };

    let mut x_witnesses = Vec::new();
    for x in x_range.0..=x_range.1 {
        if !ground.contains_x(x) {
            return Ok(fail("x", x, start));
        }
        let Some(bottom) = lattice::line_bottom(seq, ground, x)? else {
            return Ok(fail("x", x, start));
        };
        let witness = Point::new(x, bottom);
        debug_assert!(lattice::contains(seq, ground, witness)?);
        x_witnesses.push(witness);
    }
    let mut y_witnesses = Vec::new();
    for y in y_range.0..=y_range.1 {
        if !ground.contains_y(y) {
            return Ok(fail("y", y, start));
        }
        let witness = if y > 0 {
            Point::new(0, y)
        } else if y == 0 {
            Point::new(0, 0)
        } else {
            Point::new(y, y)
        };
        if !lattice::contains(seq, ground, witness)? {
            return Ok(fail("y", y, start));
        }
        y_witnesses.push(witness);
    }
    let witness = format!(
        "{{\"x_witnesses\":{},\"y_witnesses\":{}}}",
        points_json(&x_witnesses),
        points_json(&y_witnesses)
    );
    Ok(CheckReport {
        check: "subdirect",
        status: Status::Pass,
        params,
        witness: Some(witness),
        detail: Some(format!(
            "{} first coordinates, {} second coordinates covered",
            x_witnesses.len(),
            y_witnesses.len()
        )),
        elapsed: start.elapsed(),
    })
}

/// Exhaustive indecomposables versus the closed-form prediction, under the
/// ground set's default sense.
pub fn check_indec_match(
    seq: &DoublingSequence,
    ground: GroundSet,
    w: &Window,
) -> Result<CheckReport> {
    let start = Instant::now();
    let params = params_json(seq, ground, &[("window", window_json(w))]);
    let sense = ground.default_sense();
    let exhaustive = decomp::indecomposables_in_window(seq, ground, w, sense)?;
    let predicted = decomp::predicted_indecomposables(seq, ground, w)?;
    if exhaustive == predicted {
        return Ok(CheckReport {
            check: "indec",
            status: Status::Pass,
            params,
            witness: None,
            detail: Some(format!("{} indecomposables match", exhaustive.len())),
            elapsed: start.elapsed(),
        });
    }
    let only_exhaustive: Vec<Point> = exhaustive
        .iter()
        .filter(|p| !predicted.contains(p))
        .copied()
        .collect();
    let only_predicted: Vec<Point> = predicted
        .iter()
        .filter(|p| !exhaustive.contains(p))
        .copied()
        .collect();
    Ok(CheckReport {
        check: "indec",
        status: Status::Fail,
        params,
        witness: Some(format!(
            "{{\"only_exhaustive\":{},\"only_predicted\":{}}}",
            points_json(&only_exhaustive),
            points_json(&only_predicted)
        )),
        detail: Some("exhaustive and predicted sets differ".to_string()),
        elapsed: start.elapsed(),
    })
}

struct ClaimLog {
    entries: Vec<(String, bool, String)>,
}

impl ClaimLog {
    fn record(&mut self, name: impl Into<String>, ok: bool, note: impl Into<String>) {
        self.entries.push((name.into(), ok, note.into()));
    }

    fn check_exact(
        &mut self,
        name: &str,
        seq: &DoublingSequence,
        ground: GroundSet,
        target: Point,
        expected: Vec<Decomposition>,
    ) -> Result<()> {
        let got = decomp::decompositions(seq, ground, target, ground.default_sense(), None)?;
        let ok = got == expected;
        let note = if ok {
            format!("{} decomposition(s) as claimed", got.len())
        } else {
            format!(
                "expected {} decomposition(s), found {}",
                expected.len(),
                got.len()
            )
        };
        self.record(name, ok, note);
        Ok(())
    }
}

/// Per-ground-set decomposition-multiplicity claims:
///
/// * `Z x Z`: `(-2,-2)` has exactly one decomposition, `(0,2)` exactly two;
///   twice each band corner `c_k` in `k_range` splits into three or more
///   non-zero indecomposables via the explicit witness;
/// * `Z x N0`: `(0,2)` and `(-2,0)` decompose uniquely;
/// * the other ground sets: `(0,2)` decomposes uniquely as `(0,1) + (0,1)`;
/// * everywhere: the doubled-lowest-point identity over `i_range` (both
///   forms present where lowest points are indecomposable, at least two
///   decompositions in `Z x Z`).
pub fn check_claims(
    seq: &DoublingSequence,
    ground: GroundSet,
    k_range: (u32, u32),
    i_range: (i64, i64),
) -> Result<CheckReport> {
    let start = Instant::now();
    let params = params_json(
        seq,
        ground,
        &[
            ("k_range", format!("[{},{}]", k_range.0, k_range.1)),
            ("i_range", format!("[{},{}]", i_range.0, i_range.1)),
        ],
    );
    let mut log = ClaimLog {
        entries: Vec::new(),
    };
    let one = |target: Point, parts: Vec<(Point, u64)>| vec![Decomposition::new(target, parts)];

    match ground {
        GroundSet::ZxZ => {
            log.check_exact(
                "unique_decomposition_(-2,-2)",
                seq,
                ground,
                Point::new(-2, -2),
                one(Point::new(-2, -2), vec![(Point::new(-1, -1), 2)]),
            )?;
            let target = Point::new(0, 2);
            log.check_exact(
                "two_decompositions_(0,2)",
                seq,
                ground,
                target,
                vec![
                    Decomposition::new(
                        target,
                        vec![(Point::new(-1, -1), 1), (Point::new(1, 3), 1)],
                    ),
                    Decomposition::new(target, vec![(Point::new(0, 1), 2)]),
                ],
            )?;
            for k in k_range.0..=k_range.1 {
                let witness = decomp::doubled_corner_decomposition(seq, k)?;
                let sum_ok = witness.sum()? == witness.target();
                let count_ok = witness.part_count() >= 3;
                let mut parts_ok = true;
                for (part, _) in witness.parts() {
                    parts_ok &= decomp::is_indecomposable(seq, ground, *part, Sense::Monoid)?;
                }
                let listed =
                    decomp::decompositions(seq, ground, witness.target(), Sense::Monoid, None)?
                        .contains(&witness);
                log.record(
                    format!("doubled_corner_k{k}"),
                    sum_ok && count_ok && parts_ok && listed,
                    format!("{} parts", witness.part_count()),
                );
            }
        }
        GroundSet::ZxN0 => {
            log.check_exact(
                "unique_decomposition_(0,2)",
                seq,
                ground,
                Point::new(0, 2),
                one(Point::new(0, 2), vec![(Point::new(0, 1), 2)]),
            )?;
            log.check_exact(
                "unique_decomposition_(-2,0)",
                seq,
                ground,
                Point::new(-2, 0),
                one(Point::new(-2, 0), vec![(Point::new(-1, 0), 2)]),
            )?;
        }
        GroundSet::ZxN | GroundSet::N0xN | GroundSet::N0xN0 => {
            log.check_exact(
                "unique_decomposition_(0,2)",
                seq,
                ground,
                Point::new(0, 2),
                one(Point::new(0, 2), vec![(Point::new(0, 1), 2)]),
            )?;
        }
    }

    for i in i_range.0..=i_range.1 {
        let db = decomp::doubled_bottom_decompositions(seq, ground, i)?;
        let (ok, note) = match ground {
            // band corners are the only positive indecomposables here, so
            // the identity's two forms need not consist of indecomposables;
            // the claim is that the doubled point splits in several ways
            GroundSet::ZxZ => (
                db.all.len() >= 2,
                format!("{} decompositions", db.all.len()),
            ),
            _ => (
                db.pair_present() && db.step_present(),
                format!(
                    "pair form {}, step form {}",
                    db.pair_present(),
                    db.step_present()
                ),
            ),
        };
        log.record(format!("doubled_bottom_i{i}"), ok, note);
    }

    let failed: Vec<&(String, bool, String)> =
        log.entries.iter().filter(|(_, ok, _)| !ok).collect();
    if let Some((name, _, note)) = failed.first() {
        return Ok(CheckReport {
            check: "claims",
            status: Status::Fail,
            params,
            witness: Some(format!(
                "{{\"claim\":\"{}\",\"note\":\"{}\"}}",
                json_escape(name),
                json_escape(note)
            )),
            detail: Some(format!(
                "{} of {} claims failed",
                failed.len(),
                log.entries.len()
            )),
            elapsed: start.elapsed(),
        });
    }
    Ok(CheckReport {
        check: "claims",
        status: Status::Pass,
        params,
        witness: None,
        detail: Some(format!("{} claims hold", log.entries.len())),
        elapsed: start.elapsed(),
    })
}

/// The isomorphism invariant read off a window: the indecomposables found
/// exhaustively, and the sequence prefix they determine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub ground: GroundSet,
    pub recovered_prefix: Vec<BigInt>,
    pub indec_points: Vec<Point>,
}

impl Fingerprint {
    pub fn to_json(&self) -> String {
        let prefix: Vec<String> = self
            .recovered_prefix
            .iter()
            .map(|t| t.to_string())
            .collect();
        format!(
            "{{\"ground\":\"{}\",\"recovered_prefix\":[{}],\"indec_points\":{}}}",
            self.ground,
            prefix.join(","),
            points_json(&self.indec_points)
        )
    }
}

/// Recovers the sequence prefix from an indecomposable list alone.
///
/// In `Z x Z` each positive indecomposable `(c_k, c_k + k)` names its term
/// outright; the prefix is the contiguous run of indices from `k = 2`. In
/// the other ground sets the positive indecomposables are the lowest points
/// `(i, i + level)`; a term `c_k` is provably determined only when the
/// window shows the level step, i.e. consecutive lines `c_k` and `c_k + 1`
/// with levels `k` and `k + 1`. Bands cut off by the window are omitted.
fn recover_prefix(ground: GroundSet, points: &[Point]) -> Vec<BigInt> {
    let staircase: Vec<Point> = points.iter().filter(|p| p.x >= 1).copied().collect();
    let mut prefix = Vec::new();
    if ground == GroundSet::ZxZ {
        let mut by_index = std::collections::BTreeMap::new();
        for p in &staircase {
            by_index.entry(p.y - p.x).or_insert(p.x);
        }
        let mut k = 2;
        while let Some(c) = by_index.get(&k) {
            prefix.push(BigInt::from(*c));
            k += 1;
        }
        return prefix;
    }
    let mut prev_level = 2;
    for (idx, p) in staircase.iter().enumerate() {
        if p.x != idx as i64 + 1 {
            break;
        }
        let level = p.y - p.x;
        if idx == 0 {
            if level != 2 {
                break;
            }
        } else if level == prev_level + 1 {
            prefix.push(BigInt::from(p.x - 1));
        } else if level != prev_level {
            break;
        }
        prev_level = level;
    }
    prefix
}

/// Computes the fingerprint of the intersection on `w` under the ground
/// set's default sense. Fails with `WindowTooSmall` when not even the first
/// term is determined.
pub fn fingerprint(seq: &DoublingSequence, ground: GroundSet, w: &Window) -> Result<Fingerprint> {
    let indec_points = decomp::indecomposables_in_window(seq, ground, w, ground.default_sense())?;
    let recovered_prefix = recover_prefix(ground, &indec_points);
    if recovered_prefix.is_empty() {
        return Err(Error::WindowTooSmall(format!(
            "window {w} determines no sequence term under {ground}"
        )));
    }
    Ok(Fingerprint {
        ground,
        recovered_prefix,
        indec_points,
    })
}

/// Compares the fingerprints of two sequences on the same window. Pass
/// means distinguished (hence non-isomorphic); equal fingerprints only say
/// the window shows no difference, never that the structures are isomorphic.
pub fn distinguish(
    seq_a: &DoublingSequence,
    seq_b: &DoublingSequence,
    ground: GroundSet,
    w: &Window,
) -> Result<CheckReport> {
    let start = Instant::now();
    let params = format!(
        "{{\"sigma\":{},\"sigma_b\":{},\"ground\":\"{}\",\"window\":{}}}",
        seq_a.canonical_json(),
        seq_b.canonical_json(),
        ground,
        window_json(w)
    );
    let fp_a = fingerprint(seq_a, ground, w)?;
    let fp_b = fingerprint(seq_b, ground, w)?;
    let distinguished = fp_a != fp_b;
    Ok(CheckReport {
        check: "distinguish",
        status: if distinguished {
            Status::Pass
        } else {
            Status::Fail
        },
        params,
        witness: Some(format!(
            "{{\"fingerprint_a\":{},\"fingerprint_b\":{}}}",
            fp_a.to_json(),
            fp_b.to_json()
        )),
        detail: Some(if distinguished {
            "distinguished".to_string()
        } else {
            "indistinguishable at this window".to_string()
        }),
        elapsed: start.elapsed(),
    })
}

/// Which checks a `verify` invocation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Closure,
    Subdirect,
    Indec,
    Claims,
    Distinguish,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "closure" => Ok(Suite::Closure),
            "subdirect" => Ok(Suite::Subdirect),
            "indec" => Ok(Suite::Indec),
            "claims" => Ok(Suite::Claims),
            "distinguish" => Ok(Suite::Distinguish),
            _ => Err(Error::Parse(format!(
                "unknown suite {s:?} (expected all, closure, subdirect, indec, claims or distinguish)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub window: Window,
    pub k_range: (u32, u32),
    pub i_range: (i64, i64),
}

/// Runs a suite in a fixed order, independent of any scheduling: closure,
/// subdirect, indec, claims, then distinguish when a second sequence is
/// given. Subdirect ranges are the window bounds clipped to the domains.
pub fn run_suite(
    seq: &DoublingSequence,
    other: Option<&DoublingSequence>,
    ground: GroundSet,
    cfg: &SuiteConfig,
    suite: Suite,
) -> Result<Vec<CheckReport>> {
    let w = &cfg.window;
    let mut reports = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Closure) {
        reports.push(check_closure(seq, ground, w)?);
    }
    if wants(Suite::Subdirect) {
        let x_lo = if ground.contains_x(-1) {
            w.x_min
        } else {
            w.x_min.max(0)
        };
        let y_lo = match ground {
            GroundSet::ZxZ => w.y_min,
            GroundSet::ZxN0 | GroundSet::N0xN0 => w.y_min.max(0),
            GroundSet::ZxN | GroundSet::N0xN => w.y_min.max(1),
        };
        reports.push(check_subdirect(
            seq,
            ground,
            (x_lo, w.x_max),
            (y_lo, w.y_max),
        )?);
    }
    if wants(Suite::Indec) {
        reports.push(check_indec_match(seq, ground, w)?);
    }
    if wants(Suite::Claims) {
        reports.push(check_claims(seq, ground, cfg.k_range, cfg.i_range)?);
    }
    if wants(Suite::Distinguish) {
        match other {
            Some(other) => reports.push(distinguish(seq, other, ground, w)?),
            None if suite == Suite::Distinguish => {
                return Err(Error::Parse(
                    "the distinguish suite needs a second sequence".to_string(),
                ));
            }
            None => {}
        }
    }
    Ok(reports)
}
