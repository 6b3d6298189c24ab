//! Ground sets, the analytic membership predicate, line bottoms, and
//! windowed enumeration.

use std::fmt;

use crate::decomp::Sense;
use crate::error::{Error, Result};
use crate::sequence::DoublingSequence;

/// An exact lattice point. Ordering is lexicographic by `(x, y)`, which is
/// the canonical enumeration order everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn checked_add(self, other: Point) -> Result<Point> {
        let x = self
            .x
            .checked_add(other.x)
            .ok_or_else(|| Error::Overflow(format!("{self} + {other}")))?;
        let y = self
            .y
            .checked_add(other.y)
            .ok_or_else(|| Error::Overflow(format!("{self} + {other}")))?;
        Ok(Point { x, y })
    }

    /// JSON form `[x,y]`.
    pub fn to_json(self) -> String {
        format!("[{},{}]", self.x, self.y)
    }

    /// Parses the CLI form `x,y`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut it = s.split(',');
        let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse(format!("bad point {s:?} (expected x,y)")));
        };
        let x = x
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad point coordinate {x:?}")))?;
        let y = y
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad point coordinate {y:?}")))?;
        Ok(Point { x, y })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// One of the five coordinate domains whose intersection with the staircase
/// set is studied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroundSet {
    ZxZ,
    ZxN0,
    ZxN,
    N0xN0,
    N0xN,
}

impl GroundSet {
    pub const ALL: [GroundSet; 5] = [
        GroundSet::ZxZ,
        GroundSet::ZxN0,
        GroundSet::ZxN,
        GroundSet::N0xN0,
        GroundSet::N0xN,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroundSet::ZxZ => "zxz",
            GroundSet::ZxN0 => "zxn0",
            GroundSet::ZxN => "zxn",
            GroundSet::N0xN0 => "n0xn0",
            GroundSet::N0xN => "n0xn",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "zxz" => Ok(GroundSet::ZxZ),
            "zxn0" => Ok(GroundSet::ZxN0),
            "zxn" => Ok(GroundSet::ZxN),
            "n0xn0" => Ok(GroundSet::N0xN0),
            "n0xn" => Ok(GroundSet::N0xN),
            _ => Err(Error::Parse(format!(
                "unknown ground set {s:?} (expected zxz, zxn0, zxn, n0xn0 or n0xn)"
            ))),
        }
    }

    pub fn contains_x(self, x: i64) -> bool {
        match self {
            GroundSet::ZxZ | GroundSet::ZxN0 | GroundSet::ZxN => true,
            GroundSet::N0xN0 | GroundSet::N0xN => x >= 0,
        }
    }

    pub fn contains_y(self, y: i64) -> bool {
        match self {
            GroundSet::ZxZ => true,
            GroundSet::ZxN0 | GroundSet::N0xN0 => y >= 0,
            GroundSet::ZxN | GroundSet::N0xN => y >= 1,
        }
    }

    /// Whether `(0, 0)` belongs to the intersection, i.e. it is a monoid.
    pub fn has_identity(self) -> bool {
        matches!(self, GroundSet::ZxZ | GroundSet::ZxN0 | GroundSet::N0xN0)
    }

    /// The sense in which indecomposability is read by default: monoid
    /// where the identity is present, semigroup otherwise.
    pub fn default_sense(self) -> Sense {
        if self.has_identity() {
            Sense::Monoid
        } else {
            Sense::Semigroup
        }
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A closed rectangle of lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub x_min: i64,
    pub x_max: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl Window {
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Result<Self> {
        if x_min > x_max || y_min > y_max {
            return Err(Error::BadWindow(format!(
                "degenerate bounds {x_min}:{x_max}:{y_min}:{y_max}"
            )));
        }
        Ok(Window {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// Parses the CLI form `xmin:xmax:ymin:ymax`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::BadWindow(format!(
                "bad window {s:?} (expected xmin:xmax:ymin:ymax)"
            )));
        }
        let mut v = [0i64; 4];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|_| Error::BadWindow(format!("bad window bound {part:?}")))?;
        }
        Window::new(v[0], v[1], v[2], v[3])
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    pub fn width(&self) -> i64 {
        self.x_max - self.x_min + 1
    }

    pub fn height(&self) -> i64 {
        self.y_max - self.y_min + 1
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}",
            self.x_min, self.x_max, self.y_min, self.y_max
        )
    }
}

/// The least second coordinate on line `x = i`, or `None` when the line is
/// empty in this ground set (negative `x` under an `N0` first domain).
///
/// For `i >= 1` the bottom is `i + level(i)` in every ground set; flat lines
/// (`i <= 0`) depend only on the ground set.
pub fn line_bottom(seq: &DoublingSequence, ground: GroundSet, i: i64) -> Result<Option<i64>> {
    if !ground.contains_x(i) {
        return Ok(None);
    }
    if i >= 1 {
        let level = seq.level(i)? as i64;
        let bottom = i
            .checked_add(level)
            .ok_or_else(|| Error::Overflow(format!("line bottom of {i}")))?;
        return Ok(Some(bottom));
    }
    if i == 0 {
        return Ok(Some(if ground.has_identity() { 0 } else { 1 }));
    }
    Ok(Some(match ground {
        GroundSet::ZxZ => i,
        GroundSet::ZxN0 => 0,
        GroundSet::ZxN => 1,
        GroundSet::N0xN0 | GroundSet::N0xN => unreachable!("negative x filtered above"),
    }))
}

/// Analytic membership: `p` is in the intersection iff its line is
/// non-empty and `p.y` is at or above the line bottom. Runs in the time of
/// one level lookup, never by enumeration.
pub fn contains(seq: &DoublingSequence, ground: GroundSet, p: Point) -> Result<bool> {
    Ok(match line_bottom(seq, ground, p.x)? {
        Some(bottom) => p.y >= bottom,
        None => false,
    })
}

/// Exactly the members inside `w`, sorted lexicographically by `(x, y)`.
pub fn enumerate_window(
    seq: &DoublingSequence,
    ground: GroundSet,
    w: &Window,
) -> Result<Vec<Point>> {
    let mut points = Vec::new();
    for x in w.x_min..=w.x_max {
        let Some(bottom) = line_bottom(seq, ground, x)? else {
            continue;
        };
        for y in bottom.max(w.y_min)..=w.y_max {
            points.push(Point::new(x, y));
        }
    }
    Ok(points)
}

/// Precomputed line bottoms over a contiguous `x` span, for pair sweeps
/// where per-call level lookups would dominate.
#[derive(Debug)]
pub struct LineBottoms {
    x_lo: i64,
    bottoms: Vec<Option<i64>>,
}

impl LineBottoms {
    pub fn build(seq: &DoublingSequence, ground: GroundSet, x_lo: i64, x_hi: i64) -> Result<Self> {
        debug_assert!(x_lo <= x_hi);
        let mut bottoms = Vec::with_capacity((x_hi - x_lo + 1) as usize);
        for x in x_lo..=x_hi {
            bottoms.push(line_bottom(seq, ground, x)?);
        }
        Ok(LineBottoms { x_lo, bottoms })
    }

    pub fn bottom(&self, x: i64) -> Option<i64> {
        let idx = usize::try_from(x - self.x_lo).expect("x below precomputed span");
        self.bottoms[idx]
    }

    pub fn is_member(&self, p: Point) -> bool {
        match self.bottom(p.x) {
            Some(bottom) => p.y >= bottom,
            None => false,
        }
    }
}
