//! Doubling sequences `(c_k)_{k>=2}` and the derived level function.
//!
//! A valid sequence has `c_2 = 1` and `c_{k+1} >= 2 c_k`. Queries only ever
//! touch finitely many terms, so a sequence is represented as a validated
//! prefix plus an explicit tail policy saying how (or whether) terms beyond
//! the prefix are produced.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// How terms beyond the stored prefix are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailPolicy {
    /// No extension: queries past the prefix fail with `BeyondHorizon`.
    Finite,
    /// `c_{k+1} = 2 c_k`.
    Double,
    /// `c_{k+1} = 2 c_k + b_j` consuming the stored bits, then doubling
    /// (an eventually-zero bit stream).
    Bits(Vec<u8>),
}

impl TailPolicy {
    /// Parses the CLI form `finite | double | bits:0110`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "finite" => Ok(TailPolicy::Finite),
            "double" => Ok(TailPolicy::Double),
            _ => {
                if let Some(bits) = s.strip_prefix("bits:") {
                    Ok(TailPolicy::Bits(parse_bits(bits)?))
                } else {
                    Err(Error::Parse(format!(
                        "unknown tail policy {s:?} (expected finite, double or bits:BITS)"
                    )))
                }
            }
        }
    }

    fn canonical(&self) -> String {
        match self {
            TailPolicy::Finite => "finite".to_string(),
            TailPolicy::Double => "double".to_string(),
            TailPolicy::Bits(bits) => {
                let s: String = bits
                    .iter()
                    .map(|b| if *b == 0 { '0' } else { '1' })
                    .collect();
                format!("bits:{s}")
            }
        }
    }
}

fn parse_bits(s: &str) -> Result<Vec<u8>> {
    if s.is_empty() {
        return Err(Error::Parse("empty bit string".to_string()));
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("bad bit {c:?} in {s:?}"))),
        })
        .collect()
}

/// Memoized term table. `exact` holds `c_{idx+2}`; `clamped` is the same
/// value saturated into `i64` so that level lookups against lattice
/// coordinates never allocate.
#[derive(Debug)]
struct Memo {
    exact: Vec<BigInt>,
    clamped: Vec<i64>,
}

impl Memo {
    fn push(&mut self, term: BigInt) {
        self.clamped.push(term.to_i64().unwrap_or(i64::MAX));
        self.exact.push(term);
    }
}

/// Terms are memoized up to this index; larger term queries are computed
/// directly from the recurrence without being stored.
const MEMO_CAP: usize = 4096;

/// A validated doubling sequence: prefix entry `j` holds `c_{j+2}`.
pub struct DoublingSequence {
    prefix: Vec<BigInt>,
    tail: TailPolicy,
    memo: RwLock<Memo>,
}

impl DoublingSequence {
    /// Validates a raw prefix with a `Finite` tail.
    pub fn validate_prefix(raw: Vec<BigInt>) -> Result<Self> {
        Self::new(raw, TailPolicy::Finite)
    }

    /// Validates a raw prefix under the given tail policy.
    pub fn new(raw: Vec<BigInt>, tail: TailPolicy) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Parse("empty sequence prefix".to_string()));
        }
        let one = BigInt::from(1);
        if raw[0] != one {
            return Err(Error::BadFirstTerm(raw[0].clone()));
        }
        for j in 0..raw.len() - 1 {
            let doubled = &raw[j] * 2;
            if raw[j + 1] < doubled {
                return Err(Error::GrowthViolation {
                    index: j,
                    value: raw[j + 1].clone(),
                    prev: raw[j].clone(),
                });
            }
        }
        let memo = Memo {
            exact: raw.clone(),
            clamped: raw.iter().map(|t| t.to_i64().unwrap_or(i64::MAX)).collect(),
        };
        Ok(DoublingSequence {
            prefix: raw,
            tail,
            memo: RwLock::new(memo),
        })
    }

    /// Builds the sequence determined by a bit stream: `c_2 = 1` and
    /// `c_{k+1} = 2 c_k + b_j` for `length` steps (missing bits read as 0),
    /// doubling thereafter. Distinct equal-length bit strings give distinct
    /// prefixes.
    pub fn from_bits(bits: &str, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::Parse("bit length must be at least 1".to_string()));
        }
        let bits = parse_bits(bits)?;
        let mut prefix = Vec::with_capacity(length + 1);
        prefix.push(BigInt::from(1));
        for j in 0..length {
            let b = bits.get(j).copied().unwrap_or(0);
            let next = prefix.last().unwrap() * 2 + b;
            prefix.push(next);
        }
        Self::new(prefix, TailPolicy::Double)
    }

    /// Parses the textual literal used everywhere a sequence is needed:
    /// a comma-separated prefix plus a tail policy string.
    pub fn parse(prefix: &str, tail: &str) -> Result<Self> {
        let raw: Result<Vec<BigInt>> = prefix
            .split(',')
            .map(|p| {
                let p = p.trim();
                p.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad prefix entry {p:?}")))
            })
            .collect();
        Self::new(raw?, TailPolicy::parse(tail)?)
    }

    pub fn prefix(&self) -> &[BigInt] {
        &self.prefix
    }

    pub fn tail(&self) -> &TailPolicy {
        &self.tail
    }

    /// Largest term index available, or `None` when the tail extends forever.
    pub fn max_term_index(&self) -> Option<u32> {
        match self.tail {
            TailPolicy::Finite => Some(self.prefix.len() as u32 + 1),
            _ => None,
        }
    }

    /// Canonical serialized form, e.g. `{"prefix":[1,2,5,10],"tail":"double"}`.
    pub fn canonical_json(&self) -> String {
        let terms: Vec<String> = self.prefix.iter().map(|t| t.to_string()).collect();
        format!(
            "{{\"prefix\":[{}],\"tail\":\"{}\"}}",
            terms.join(","),
            self.tail.canonical()
        )
    }

    /// Next term after `last`, where `produced` counts terms already
    /// generated beyond the prefix. `None` means the horizon is exhausted.
    fn next_term(&self, produced: usize, last: &BigInt) -> Option<BigInt> {
        match &self.tail {
            TailPolicy::Finite => None,
            TailPolicy::Double => Some(last * 2),
            TailPolicy::Bits(bits) => {
                let b = bits.get(produced).copied().unwrap_or(0);
                Some(last * 2 + b)
            }
        }
    }

    /// Extends the memo by one term. `false` when the horizon is exhausted.
    fn extend_memo(&self) -> bool {
        let mut memo = self.memo.write().unwrap();
        let produced = memo.exact.len() - self.prefix.len();
        match self.next_term(produced, memo.exact.last().unwrap()) {
            Some(t) => {
                memo.push(t);
                true
            }
            None => false,
        }
    }

    /// The term `c_k`, `k >= 2`, extending via the tail policy as needed.
    pub fn term(&self, k: u32) -> Result<BigInt> {
        if k < 2 {
            return Err(Error::BadIndex(format!("term index {k} < 2")));
        }
        let idx = (k - 2) as usize;
        if idx >= MEMO_CAP {
            return self.term_direct(idx);
        }
        loop {
            {
                let memo = self.memo.read().unwrap();
                if idx < memo.exact.len() {
                    return Ok(memo.exact[idx].clone());
                }
            }
            if !self.extend_memo() {
                return Err(Error::BeyondHorizon(format!(
                    "term c_{k} requested but the finite prefix ends at c_{}",
                    self.prefix.len() + 1
                )));
            }
        }
    }

    /// Computes a large term straight from the recurrence without memoizing.
    fn term_direct(&self, idx: usize) -> Result<BigInt> {
        let last_idx = self.prefix.len() - 1;
        debug_assert!(idx > last_idx);
        let steps = idx - last_idx;
        let mut value = self.prefix[last_idx].clone();
        match &self.tail {
            TailPolicy::Finite => Err(Error::BeyondHorizon(format!(
                "term c_{} requested but the finite prefix ends at c_{}",
                idx + 2,
                self.prefix.len() + 1
            ))),
            TailPolicy::Double => Ok(value << steps),
            TailPolicy::Bits(bits) => {
                let consumed = steps.min(bits.len());
                for b in &bits[..consumed] {
                    value = value * 2 + *b;
                }
                Ok(value << (steps - consumed))
            }
        }
    }

    /// The level of `i >= 1`: the unique `k >= 2` with `c_{k-1} < i <= c_k`
    /// (reading `c_1` as 0). Computed by scanning memoized terms.
    pub fn level(&self, i: i64) -> Result<u32> {
        if i < 1 {
            return Err(Error::BadIndex(format!("level of {i} < 1")));
        }
        loop {
            {
                let memo = self.memo.read().unwrap();
                if *memo.clamped.last().unwrap() >= i {
                    let pos = memo.clamped.partition_point(|t| *t < i);
                    return Ok(pos as u32 + 2);
                }
            }
            if !self.extend_memo() {
                return Err(Error::BeyondHorizon(format!(
                    "level({i}) needs terms beyond the finite prefix (last term c_{} = {})",
                    self.prefix.len() + 1,
                    self.prefix.last().unwrap()
                )));
            }
        }
    }
}

impl Clone for DoublingSequence {
    fn clone(&self) -> Self {
        DoublingSequence::new(self.prefix.clone(), self.tail.clone()).expect("already validated")
    }
}

impl PartialEq for DoublingSequence {
    fn eq(&self, other: &Self) -> bool {
        self.prefix == other.prefix && self.tail == other.tail
    }
}

impl Eq for DoublingSequence {}

impl fmt::Debug for DoublingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DoublingSequence")
            .field("prefix", &self.prefix)
            .field("tail", &self.tail)
            .finish()
    }
}

impl fmt::Display for DoublingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.prefix.iter().map(|t| t.to_string()).collect();
        write!(f, "{}+{}", terms.join(","), self.tail.canonical())
    }
}
