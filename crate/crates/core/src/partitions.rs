//! Integer partitions in a fixed canonical order, exact partition counting,
//! and the expected ranks of the three rational bordism families.
//!
//! The canonical order on the partitions of `m` runs from the one-part
//! partition `(m)` down to the all-ones partition, comparing the
//! non-increasing part lists reverse-lexicographically. Everything downstream
//! (basis enumeration, pairing-matrix rows and columns, number tables) uses
//! this order, so it is fixed here once.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;

/// An integer partition: a non-increasing list of positive parts.
///
/// The empty partition (weight 0) is allowed and denotes the empty product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// The empty partition of weight 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// True for the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Orders by weight, then by canonical position within a weight: `(m)` first,
/// all-ones last, i.e. reverse lexicographic on the non-increasing part lists.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `"2,1"`, `"(2,1)"`, or `""`/`"()"` for the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// Lists the partitions of `n` in canonical order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(n, n, &mut stack, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    let mut part = remaining.min(max_part);
    while part >= 1 {
        stack.push(part);
        descend(remaining - part, part, stack, out);
        stack.pop();
        part -= 1;
    }
}

/// Number of partitions of `n`, exactly.
///
/// Computed by the bounded-part dynamic program; the test suite cross-checks
/// it against the pentagonal-number recurrence and against the length of
/// [`enumerate_partitions`].
pub fn partition_count(n: u32) -> BigUint {
    let n = n as usize;
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in 1..=n {
        for total in part..=n {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways[n].clone()
}

/// Sum of partition counts `P(0) + P(1) + ... + P(n)`.
pub fn cumulative_partition_count(n: u32) -> BigUint {
    (0..=n).map(partition_count).sum()
}

/// The three bordism families the certifier handles, tagged `r`, `c`, `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decoration {
    /// Plain oriented family; bases live in degrees divisible by 4.
    Real,
    /// Family decorated by a line bundle; bases live in even degrees.
    Complex,
    /// Family decorated by an SU(2) bundle; bases live in degrees divisible by 4.
    Quaternionic,
}

impl Decoration {
    /// Single-letter tag used in CLI flags and certificates.
    pub fn tag(self) -> char {
        match self {
            Decoration::Real => 'r',
            Decoration::Complex => 'c',
            Decoration::Quaternionic => 'h',
        }
    }

    /// Splits a degree into `(n, delta)` with `degree = 4n + 2*delta`, when
    /// the family has any classes there: `delta = 1` only occurs for the
    /// line-bundle family; the other two require degrees divisible by 4.
    pub fn degree_split(self, degree: u32) -> Option<(u32, u32)> {
        match (self, degree % 4) {
            (Decoration::Real, 0) | (Decoration::Quaternionic, 0) => Some((degree / 4, 0)),
            (Decoration::Complex, 0) => Some((degree / 4, 0)),
            (Decoration::Complex, 2) => Some((degree / 4, 1)),
            _ => None,
        }
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

impl FromStr for Decoration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "r" => Ok(Decoration::Real),
            "c" => Ok(Decoration::Complex),
            "h" => Ok(Decoration::Quaternionic),
            other => Err(Error::Parse(format!(
                "unknown decoration {other:?}; expected r, c, or h"
            ))),
        }
    }
}

/// Expected rank of the degree-`degree` piece of the family `decoration`.
///
/// `P(n)` for the plain family in degree `4n`; the cumulative count
/// `P(0)+...+P(n)` for the line-bundle family in degrees `4n` and `4n+2` and
/// for the SU(2) family in degree `4n`; zero in all other degrees.
pub fn bordism_rank(decoration: Decoration, degree: u32) -> BigUint {
    match decoration.degree_split(degree) {
        None => BigUint::zero(),
        Some((n, _)) => match decoration {
            Decoration::Real => partition_count(n),
            Decoration::Complex | Decoration::Quaternionic => cumulative_partition_count(n),
        },
    }
}
