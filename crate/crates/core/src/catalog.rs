//! Manifold descriptors for the basis families, ingestion of K3-Hilbert
//! Chern numbers, and exact Pontryagin-number calculus for products.
//!
//! A basis element is a torus factor (possibly trivial) times a product of
//! Hilbert schemes of points on K3, recorded as a [`ManifoldDescriptor`].
//! Chern numbers of the Hilbert schemes come from a data file; the loader
//! checks structural invariants and pins each record's top Chern number to
//! the coefficient of the generating function `prod (1-q^m)^{-24}`, an
//! independent oracle for the Euler characteristics. Odd-index Chern
//! monomials are rationally trivial on these manifolds and are dropped when
//! converting to Pontryagin numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::algebra::{binomial, rat, GeneratorKind, Rat, RingElement};
use crate::characters::{chern_ring, chern_to_pontryagin_in};
use crate::error::Error;
use crate::partitions::{enumerate_partitions, Decoration, Partition};
use crate::torus::{c1_power_integral, su2_class_power_integral};

/// A torus factor times a product of K3-Hilbert factors.
///
/// `k3_parts` lists the Hilbert factors: part `m` stands for the Hilbert
/// scheme of `m` points on K3, of real dimension `4m`. The torus carries the
/// family's bundle structure; the plain family has no torus factor at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ManifoldDescriptor {
    k3_parts: Partition,
    torus_dim: u32,
    decoration: Decoration,
}

impl ManifoldDescriptor {
    /// Validates the dimension constraints: no torus for the plain family,
    /// even torus dimension for the line-bundle family, divisible by 4 for
    /// the SU(2) family.
    pub fn new(k3_parts: Partition, torus_dim: u32, decoration: Decoration) -> Result<Self, Error> {
        let ok = match decoration {
            Decoration::Real => torus_dim == 0,
            Decoration::Complex => torus_dim.is_multiple_of(2),
            Decoration::Quaternionic => torus_dim.is_multiple_of(4),
        };
        if !ok {
            return Err(Error::InvalidQuery(format!(
                "torus dimension {torus_dim} is not allowed for decoration {decoration}"
            )));
        }
        Ok(ManifoldDescriptor {
            k3_parts,
            torus_dim,
            decoration,
        })
    }

    pub fn k3_parts(&self) -> &Partition {
        &self.k3_parts
    }

    pub fn torus_dim(&self) -> u32 {
        self.torus_dim
    }

    pub fn decoration(&self) -> Decoration {
        self.decoration
    }

    /// Total real dimension: `4 * weight + torus_dim`.
    pub fn dimension(&self) -> u32 {
        4 * self.k3_parts.weight() + self.torus_dim
    }
}

impl fmt::Display for ManifoldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = Vec::new();
        if self.torus_dim > 0 {
            pieces.push(format!("T^{}_{}", self.torus_dim, self.decoration));
        }
        for part in self.k3_parts.parts() {
            pieces.push(format!("K3^[{part}]"));
        }
        if pieces.is_empty() {
            write!(f, "pt")
        } else {
            write!(f, "{}", pieces.join(" x "))
        }
    }
}

/// The basis elements of one family in one degree, in matrix column order:
/// K3-weight ascending, canonical partition order within a weight.
///
/// Empty when the family has rank zero in that degree.
pub fn basis_elements(decoration: Decoration, degree: u32) -> Vec<ManifoldDescriptor> {
    let Some((n, delta)) = decoration.degree_split(degree) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    match decoration {
        Decoration::Real => {
            for lambda in enumerate_partitions(n) {
                out.push(
                    ManifoldDescriptor::new(lambda, 0, decoration)
                        .expect("plain descriptors have no torus factor"),
                );
            }
        }
        Decoration::Complex | Decoration::Quaternionic => {
            for m in 0..=n {
                let torus_dim = 4 * (n - m) + 2 * delta;
                for lambda in enumerate_partitions(m) {
                    out.push(
                        ManifoldDescriptor::new(lambda, torus_dim, decoration)
                            .expect("torus dimensions are even multiples by construction"),
                    );
                }
            }
        }
    }
    out
}

/// A monomial in even-index Chern classes, used as a data-file key.
///
/// Text form: factors `c<index>` with optional `^<exponent>`, joined by `*`,
/// indices ascending, exponent omitted when 1 (for example `c2^2*c6`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChernMonomial {
    factors: Vec<(u32, u32)>,
}

impl ChernMonomial {
    /// Builds from `(index, exponent)` pairs; indices must be positive and
    /// even, exponents positive.
    pub fn new(factors: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, Error> {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (index, exp) in factors {
            if index == 0 || index % 2 != 0 {
                return Err(Error::Parse(format!(
                    "Chern index {index} must be positive and even"
                )));
            }
            if exp == 0 {
                return Err(Error::Parse("Chern exponents must be positive".into()));
            }
            *map.entry(index).or_insert(0) += exp;
        }
        if map.is_empty() {
            return Err(Error::Parse("empty Chern monomial".into()));
        }
        Ok(ChernMonomial {
            factors: map.into_iter().collect(),
        })
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    /// Sum of `index * exponent`; the monomial's cohomological degree is
    /// twice this.
    pub fn index_weight(&self) -> u32 {
        self.factors.iter().map(|&(i, e)| i * e).sum()
    }
}

impl fmt::Display for ChernMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, &(index, exp)) in self.factors.iter().enumerate() {
            if pos > 0 {
                write!(f, "*")?;
            }
            write!(f, "c{index}")?;
            if exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ChernMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut factors = Vec::new();
        for token in s.split('*') {
            let token = token.trim();
            let rest = token
                .strip_prefix('c')
                .ok_or_else(|| Error::Parse(format!("bad Chern factor {token:?}")))?;
            let (index_text, exp_text) = match rest.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (rest, None),
            };
            let index: u32 = index_text
                .parse()
                .map_err(|_| Error::Parse(format!("bad Chern index in {token:?}")))?;
            let exp: u32 = match exp_text {
                Some(e) => e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?,
                None => 1,
            };
            factors.push((index, exp));
        }
        ChernMonomial::new(factors)
    }
}

/// Chern numbers of one Hilbert scheme `K3^[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernDataRecord {
    n: u32,
    chern_numbers: BTreeMap<ChernMonomial, BigInt>,
    provenance: String,
}

impl ChernDataRecord {
    /// Validates a record: `n >= 1`, every key an even-index monomial of
    /// index weight `2n`, and the top Chern number equal to the generating
    /// function coefficient for `n`.
    pub fn new(
        n: u32,
        chern_numbers: BTreeMap<ChernMonomial, BigInt>,
        provenance: String,
    ) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::ChernData {
                n,
                reason: "records start at n = 1".into(),
            });
        }
        for key in chern_numbers.keys() {
            if key.index_weight() != 2 * n {
                return Err(Error::ChernData {
                    n,
                    reason: format!(
                        "monomial {key} has index weight {}, expected {}",
                        key.index_weight(),
                        2 * n
                    ),
                });
            }
        }
        let top = ChernMonomial::new([(2 * n, 1)]).expect("top index is positive and even");
        let expected = k3_hilbert_euler_numbers(n)[n as usize].clone();
        match chern_numbers.get(&top) {
            None => {
                return Err(Error::ChernData {
                    n,
                    reason: format!("missing the top Chern number {top}"),
                })
            }
            Some(value) if *value != expected => {
                return Err(Error::ChernData {
                    n,
                    reason: format!(
                        "top Chern number {top} is {value}, expected {expected} \
                         from the generating function"
                    ),
                });
            }
            Some(_) => {}
        }
        Ok(ChernDataRecord {
            n,
            chern_numbers,
            provenance,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn chern_number(&self, key: &ChernMonomial) -> Option<&BigInt> {
        self.chern_numbers.get(key)
    }
}

/// Coefficients `0..=max_n` of `prod_{m>=1} (1 - q^m)^{-24}`: the Euler
/// characteristics of the Hilbert schemes of points on K3.
pub fn k3_hilbert_euler_numbers(max_n: u32) -> Vec<BigInt> {
    let cap = max_n as usize;
    let mut coeffs = vec![BigInt::zero(); cap + 1];
    coeffs[0] = BigInt::one();
    for m in 1..=cap.max(1) {
        if m > cap {
            break;
        }
        // Multiply by (1 - q^m)^{-24} = sum_j binom(j + 23, 23) q^{m j}.
        let mut next = vec![BigInt::zero(); cap + 1];
        for base in 0..=cap {
            if coeffs[base].is_zero() {
                continue;
            }
            let mut j = 0usize;
            while base + m * j <= cap {
                next[base + m * j] += &coeffs[base] * binomial((j + 23) as u64, 23);
                j += 1;
            }
        }
        coeffs = next;
    }
    coeffs
}

#[derive(Deserialize)]
struct RecordDoc {
    n: u32,
    chern_numbers: BTreeMap<String, i64>,
    provenance: String,
}

/// A validated store of Chern-number records, keyed by `n`.
///
/// Conversion to Pontryagin numbers is cached internally behind a mutex, so
/// lookups are observably pure and safe to share across threads.
#[derive(Debug)]
pub struct ChernDataSet {
    records: BTreeMap<u32, ChernDataRecord>,
    converted: Mutex<BTreeMap<u32, PontryaginNumbers>>,
}

impl ChernDataSet {
    /// Builds a set from validated records; duplicate `n` is rejected.
    pub fn from_records(records: impl IntoIterator<Item = ChernDataRecord>) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for record in records {
            let n = record.n();
            if map.insert(n, record).is_some() {
                return Err(Error::ChernData {
                    n,
                    reason: "duplicate record".into(),
                });
            }
        }
        Ok(ChernDataSet {
            records: map,
            converted: Mutex::new(BTreeMap::new()),
        })
    }

    /// Parses and validates the JSON document: a list of records with fields
    /// `n`, `chern_numbers`, and `provenance`.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let docs: Vec<RecordDoc> =
            serde_json::from_str(text).map_err(|e| Error::DataFile(e.to_string()))?;
        let mut records = Vec::new();
        for doc in docs {
            let mut numbers = BTreeMap::new();
            for (key, value) in doc.chern_numbers {
                let monomial: ChernMonomial = key.parse().map_err(|e| Error::ChernData {
                    n: doc.n,
                    reason: format!("bad key {key:?}: {e}"),
                })?;
                if numbers.insert(monomial, BigInt::from(value)).is_some() {
                    return Err(Error::ChernData {
                        n: doc.n,
                        reason: format!("key {key:?} repeats an earlier monomial"),
                    });
                }
            }
            records.push(ChernDataRecord::new(doc.n, numbers, doc.provenance)?);
        }
        ChernDataSet::from_records(records)
    }

    /// Reads and validates a JSON data file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)?;
        ChernDataSet::from_json(&text)
    }

    pub fn record(&self, n: u32) -> Result<&ChernDataRecord, Error> {
        self.records.get(&n).ok_or(Error::MissingRecord(n))
    }

    pub fn record_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.records.keys().copied()
    }

    /// Provenance strings of the records for the given `n` values, sorted
    /// and deduplicated.
    pub fn provenance_for(&self, ns: impl IntoIterator<Item = u32>) -> Result<Vec<String>, Error> {
        let mut out: Vec<String> = Vec::new();
        for n in ns {
            let p = self.record(n)?.provenance().to_string();
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Pontryagin numbers of `K3^[n]`, converted from the record and cached.
    pub fn pontryagin_numbers(&self, n: u32) -> Result<PontryaginNumbers, Error> {
        if let Some(hit) = self.converted.lock().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let computed = chern_numbers_to_pontryagin(self.record(n)?)?;
        self.converted.lock().unwrap().insert(n, computed.clone());
        Ok(computed)
    }
}

/// The full table of Pontryagin numbers of one closed manifold of dimension
/// `4w`: one exact value per partition of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PontryaginNumbers {
    dim: u32,
    values: BTreeMap<Partition, Rat>,
}

impl PontryaginNumbers {
    /// Validates completeness: the keys must be exactly the partitions of
    /// `dim / 4`.
    pub fn new(dim: u32, values: BTreeMap<Partition, Rat>) -> Result<Self, Error> {
        if !dim.is_multiple_of(4) {
            return Err(Error::InvalidQuery(format!(
                "Pontryagin-number tables need dimension divisible by 4, got {dim}"
            )));
        }
        let expected = enumerate_partitions(dim / 4);
        if values.len() != expected.len() || expected.iter().any(|p| !values.contains_key(p)) {
            return Err(Error::InvalidQuery(format!(
                "Pontryagin-number table for dimension {dim} must have one entry \
                 per partition of {}",
                dim / 4
            )));
        }
        Ok(PontryaginNumbers { dim, values })
    }

    /// The point: dimension 0, with the empty-partition number 1.
    pub fn point() -> Self {
        let mut values = BTreeMap::new();
        values.insert(Partition::empty(), Rat::one());
        PontryaginNumbers { dim: 0, values }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn weight(&self) -> u32 {
        self.dim / 4
    }

    /// The number for one partition of the weight.
    pub fn value(&self, partition: &Partition) -> Rat {
        assert!(
            partition.weight() == self.weight(),
            "partition weight {} does not match table weight {}",
            partition.weight(),
            self.weight()
        );
        self.values[partition].clone()
    }

    pub fn values(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.values.iter()
    }
}

/// Converts a Chern-number record for `K3^[n]` into Pontryagin numbers.
///
/// Each `p_i` is expanded in Chern classes; monomials containing an
/// odd-index Chern class are rationally trivial on these manifolds and are
/// dropped; the rest are looked up in the record. A needed monomial missing
/// from the record is an error.
pub fn chern_numbers_to_pontryagin(record: &ChernDataRecord) -> Result<PontryaginNumbers, Error> {
    let n = record.n();
    let ring = chern_ring(2 * n);
    let mut values = BTreeMap::new();
    for lambda in enumerate_partitions(n) {
        let mut expression = RingElement::one(&ring);
        for &part in lambda.parts() {
            expression = expression.mul(&chern_to_pontryagin_in(&ring, part));
        }
        let mut total = Rat::zero();
        for (monomial, coeff) in expression.terms() {
            let mut even_factors = Vec::new();
            let mut has_odd = false;
            for &(position, exp) in monomial.exponents() {
                debug_assert!(ring.specs()[position].kind == GeneratorKind::Polynomial);
                let index = position as u32 + 1;
                if index % 2 == 1 {
                    has_odd = true;
                    break;
                }
                even_factors.push((index, exp));
            }
            if has_odd {
                continue;
            }
            let key = ChernMonomial::new(even_factors)
                .expect("even factors with positive exponents form a valid monomial");
            let value = record
                .chern_number(&key)
                .ok_or_else(|| Error::MissingMonomial {
                    n,
                    monomial: key.to_string(),
                })?;
            total += coeff * Rat::from_integer(value.clone());
        }
        values.insert(lambda, total);
    }
    PontryaginNumbers::new(4 * n, values)
}

/// Pontryagin numbers of a product from the two factors' tables.
///
/// Each part of a partition of the combined weight splits additively between
/// the factors; assignments whose halves have the wrong total weight drop
/// out, and equal parts contribute once per distinct assignment. This is the
/// Whitney-sum expansion of the product's classes, evaluated by enumeration.
pub fn product_pontryagin_numbers(
    a: &PontryaginNumbers,
    b: &PontryaginNumbers,
) -> PontryaginNumbers {
    let weight_a = a.weight();
    let total_weight = weight_a + b.weight();
    let mut values = BTreeMap::new();
    for lambda in enumerate_partitions(total_weight) {
        let parts = lambda.parts();
        let mut total = Rat::zero();
        let mut picks = vec![0u32; parts.len()];
        split_assignments(parts, 0, 0, weight_a, &mut picks, &mut |picks| {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (j, &part) in parts.iter().enumerate() {
                if picks[j] > 0 {
                    left.push(picks[j]);
                }
                if part - picks[j] > 0 {
                    right.push(part - picks[j]);
                }
            }
            let mu = Partition::new(left).expect("positive parts");
            let nu = Partition::new(right).expect("positive parts");
            total += a.value(&mu) * b.value(&nu);
        });
        values.insert(lambda, total);
    }
    PontryaginNumbers {
        dim: a.dim() + b.dim(),
        values,
    }
}

/// Enumerates assignments `0 <= picks[j] <= parts[j]` with total `target`.
fn split_assignments(
    parts: &[u32],
    j: usize,
    sum: u32,
    target: u32,
    picks: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if j == parts.len() {
        if sum == target {
            emit(picks);
        }
        return;
    }
    for pick in 0..=parts[j].min(target.saturating_sub(sum)) {
        picks[j] = pick;
        split_assignments(parts, j + 1, sum + pick, target, picks, emit);
    }
    picks[j] = 0;
}

/// Pontryagin numbers of the product of Hilbert factors `K3^[m_1] x ... x
/// K3^[m_r]` named by a partition; the empty partition gives the point.
pub fn hilbert_product_numbers(
    parts: &Partition,
    data: &ChernDataSet,
) -> Result<PontryaginNumbers, Error> {
    let mut acc = PontryaginNumbers::point();
    for &part in parts.parts() {
        let factor = data.pontryagin_numbers(part)?;
        acc = product_pontryagin_numbers(&acc, &factor);
    }
    Ok(acc)
}

/// One characteristic number of a basis element: the integral of
/// (bundle class)^`aux_power` times `p_lambda` of the Hilbert part.
///
/// The integral factors: the torus factor absorbs the bundle-class power
/// (first Chern class for the line-bundle family, first Pontryagin class of
/// the SU(2) bundle for the quaternionic family) and the Hilbert product
/// absorbs `p_lambda`; the torus is parallelizable, so it contributes no
/// tangential classes. Degree mismatches make the value 0; `aux_power > 0`
/// for the plain family is an error, as is missing Chern data.
pub fn characteristic_number(
    descriptor: &ManifoldDescriptor,
    aux_power: u32,
    lambda: &Partition,
    data: &ChernDataSet,
) -> Result<Rat, Error> {
    let torus_factor = match descriptor.decoration() {
        Decoration::Real => {
            if aux_power != 0 {
                return Err(Error::InvalidQuery(
                    "the plain family has no bundle class to raise to a power".into(),
                ));
            }
            rat(1)
        }
        Decoration::Complex => c1_power_integral(descriptor.torus_dim() / 2, aux_power),
        Decoration::Quaternionic => su2_class_power_integral(descriptor.torus_dim(), aux_power)?,
    };
    let hilbert = hilbert_product_numbers(descriptor.k3_parts(), data)?;
    let hilbert_factor = if lambda.weight() == hilbert.weight() {
        hilbert.value(lambda)
    } else {
        Rat::zero()
    };
    Ok(torus_factor * hilbert_factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn record(n: u32, numbers: &[(&str, i64)]) -> ChernDataRecord {
        let map = numbers
            .iter()
            .map(|&(key, value)| (key.parse::<ChernMonomial>().unwrap(), BigInt::from(value)))
            .collect();
        ChernDataRecord::new(n, map, format!("test record for n = {n}")).unwrap()
    }

    fn test_data() -> ChernDataSet {
        ChernDataSet::from_records([
            record(1, &[("c2", 24)]),
            record(2, &[("c2^2", 828), ("c4", 324)]),
            record(3, &[("c2^3", 36800), ("c2*c4", 14720), ("c6", 3200)]),
        ])
        .unwrap()
    }

    #[test]
    fn euler_number_series_small_coefficients() {
        let euler = k3_hilbert_euler_numbers(6);
        let expected: [i64; 7] = [1, 24, 324, 3200, 25650, 176256, 1073720];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(euler[n], BigInt::from(*want), "coefficient {n}");
        }
    }

    #[test]
    fn record_validation_pins_the_top_chern_number() {
        let mut map = BTreeMap::new();
        map.insert("c2".parse::<ChernMonomial>().unwrap(), BigInt::from(25));
        assert!(matches!(
            ChernDataRecord::new(1, map, String::new()),
            Err(Error::ChernData { n: 1, .. })
        ));
        let mut missing = BTreeMap::new();
        missing.insert("c2^2".parse::<ChernMonomial>().unwrap(), BigInt::from(828));
        assert!(ChernDataRecord::new(2, missing, String::new()).is_err());
        let mut wrong_degree = BTreeMap::new();
        wrong_degree.insert("c2".parse::<ChernMonomial>().unwrap(), BigInt::from(24));
        assert!(ChernDataRecord::new(2, wrong_degree, String::new()).is_err());
    }

    #[test]
    fn chern_monomial_text_round_trips() {
        for text in ["c2", "c2^2", "c2*c4", "c2^3*c6", "c4^2"] {
            let m: ChernMonomial = text.parse().unwrap();
            assert_eq!(m.to_string(), text);
        }
        assert!("c3".parse::<ChernMonomial>().is_err());
        assert!("c0".parse::<ChernMonomial>().is_err());
        assert!("d2".parse::<ChernMonomial>().is_err());
        assert!("c2^0".parse::<ChernMonomial>().is_err());
    }

    #[test]
    fn k3_pontryagin_number_is_three_times_the_signature() {
        let data = test_data();
        let k3 = data.pontryagin_numbers(1).unwrap();
        let p1 = k3.value(&Partition::new(vec![1]).unwrap());
        assert_eq!(p1, rat(-48));
        // Signature -16 through the degree-4 L-class p1/3.
        assert_eq!(p1 / rat(3), rat(-16));
    }

    #[test]
    fn second_hilbert_scheme_pontryagin_numbers() {
        let data = test_data();
        let table = data.pontryagin_numbers(2).unwrap();
        assert_eq!(table.value(&Partition::new(vec![1, 1]).unwrap()), rat(3312));
        assert_eq!(table.value(&Partition::new(vec![2]).unwrap()), rat(1476));
    }

    #[test]
    fn genus_cross_checks_on_the_test_records() {
        // Two independent rational genera evaluated from the converted
        // Pontryagin numbers: the A-hat genus must be n + 1 and the L-genus
        // signature must match the known sequence -16, 156, -1152.
        let data = test_data();
        let p = |n: u32, parts: &[u32]| {
            data.pontryagin_numbers(n)
                .unwrap()
                .value(&Partition::new(parts.to_vec()).unwrap())
        };

        let ahat1 = -p(1, &[1]) / rat(24);
        assert_eq!(ahat1, rat(2));
        let sigma1 = p(1, &[1]) / rat(3);
        assert_eq!(sigma1, rat(-16));

        let ahat2 = (rat(7) * p(2, &[1, 1]) - rat(4) * p(2, &[2])) / rat(5760);
        assert_eq!(ahat2, rat(3));
        let sigma2 = (rat(7) * p(2, &[2]) - p(2, &[1, 1])) / rat(45);
        assert_eq!(sigma2, rat(156));

        let ahat3 = (rat(-31) * p(3, &[1, 1, 1]) + rat(44) * p(3, &[2, 1]) - rat(16) * p(3, &[3]))
            / rat(967680);
        assert_eq!(ahat3, rat(4));
        let sigma3 =
            (rat(62) * p(3, &[3]) - rat(13) * p(3, &[2, 1]) + rat(2) * p(3, &[1, 1, 1])) / rat(945);
        assert_eq!(sigma3, rat(-1152));
    }

    #[test]
    fn product_numbers_for_two_k3_factors() {
        let data = test_data();
        let k3 = data.pontryagin_numbers(1).unwrap();
        let square = product_pontryagin_numbers(&k3, &k3);
        assert_eq!(square.dim(), 8);
        assert_eq!(square.value(&Partition::new(vec![2]).unwrap()), rat(2304));
        assert_eq!(
            square.value(&Partition::new(vec![1, 1]).unwrap()),
            rat(4608)
        );
    }

    fn random_table(rng: &mut StdRng, weight: u32) -> PontryaginNumbers {
        let values = enumerate_partitions(weight)
            .into_iter()
            .map(|p| (p, rat(rng.random_range(-50..=50))))
            .collect();
        PontryaginNumbers::new(4 * weight, values).unwrap()
    }

    #[test]
    fn product_is_commutative_and_associative_on_random_tables() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let (wa, wb, wc) = (
                rng.random_range(0..=2),
                rng.random_range(0..=2),
                rng.random_range(0..=1),
            );
            let a = random_table(&mut rng, wa);
            let b = random_table(&mut rng, wb);
            let c = random_table(&mut rng, wc);
            assert_eq!(
                product_pontryagin_numbers(&a, &b),
                product_pontryagin_numbers(&b, &a)
            );
            assert_eq!(
                product_pontryagin_numbers(&product_pontryagin_numbers(&a, &b), &c),
                product_pontryagin_numbers(&a, &product_pontryagin_numbers(&b, &c))
            );
        }
    }

    #[test]
    fn point_is_the_product_unit() {
        let data = test_data();
        let table = data.pontryagin_numbers(2).unwrap();
        let unit = PontryaginNumbers::point();
        assert_eq!(product_pontryagin_numbers(&table, &unit), table);
        assert_eq!(product_pontryagin_numbers(&unit, &table), table);
    }

    #[test]
    fn basis_elements_listing_matches_ranks_and_order() {
        use crate::partitions::bordism_rank;
        for decoration in [
            Decoration::Real,
            Decoration::Complex,
            Decoration::Quaternionic,
        ] {
            for degree in 0..=24 {
                let elements = basis_elements(decoration, degree);
                assert_eq!(
                    num_bigint::BigUint::from(elements.len()),
                    bordism_rank(decoration, degree),
                    "basis size must equal the expected rank at ({decoration}, {degree})"
                );
                for e in &elements {
                    assert_eq!(e.dimension(), degree);
                }
                // K3-weight ascending, canonical partition order inside.
                let keys: Vec<(u32, Partition)> = elements
                    .iter()
                    .map(|e| (e.k3_parts().weight(), e.k3_parts().clone()))
                    .collect();
                assert!(keys.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn basis_element_labels() {
        let c6 = basis_elements(Decoration::Complex, 6);
        let labels: Vec<String> = c6.iter().map(|e| e.to_string()).collect();
        assert_eq!(labels, vec!["T^6_c", "T^2_c x K3^[1]"]);
        let r8 = basis_elements(Decoration::Real, 8);
        let labels: Vec<String> = r8.iter().map(|e| e.to_string()).collect();
        assert_eq!(labels, vec!["K3^[2]", "K3^[1] x K3^[1]"]);
        assert_eq!(basis_elements(Decoration::Complex, 0)[0].to_string(), "pt");
    }

    #[test]
    fn characteristic_numbers_factor_through_the_torus() {
        let data = test_data();
        // T^2 with the line bundle times K3, against c1 * p_(1).
        let descriptor =
            ManifoldDescriptor::new(Partition::new(vec![1]).unwrap(), 2, Decoration::Complex)
                .unwrap();
        let value = characteristic_number(&descriptor, 1, &Partition::new(vec![1]).unwrap(), &data)
            .unwrap();
        assert_eq!(value, rat(-48));
        // Same number assembled from the two factor integrals.
        let by_hand = c1_power_integral(1, 1)
            * data
                .pontryagin_numbers(1)
                .unwrap()
                .value(&Partition::new(vec![1]).unwrap());
        assert_eq!(value, by_hand);
    }

    #[test]
    fn characteristic_numbers_vanish_on_degree_mismatch() {
        let data = test_data();
        let descriptor =
            ManifoldDescriptor::new(Partition::new(vec![1]).unwrap(), 4, Decoration::Complex)
                .unwrap();
        // Functional degree 2*1 + 4*2 = 10 versus dimension 8.
        let wrong = characteristic_number(&descriptor, 1, &Partition::new(vec![2]).unwrap(), &data)
            .unwrap();
        assert!(wrong.is_zero());
        // Bare torus against a nonempty partition: the Hilbert part is a
        // point, so every positive-weight number vanishes.
        let bare = ManifoldDescriptor::new(Partition::empty(), 8, Decoration::Complex).unwrap();
        let value =
            characteristic_number(&bare, 4, &Partition::new(vec![1]).unwrap(), &data).unwrap();
        assert!(value.is_zero());
    }

    #[test]
    fn plain_family_rejects_bundle_powers() {
        let data = test_data();
        let descriptor =
            ManifoldDescriptor::new(Partition::new(vec![1]).unwrap(), 0, Decoration::Real).unwrap();
        assert!(
            characteristic_number(&descriptor, 1, &Partition::new(vec![1]).unwrap(), &data)
                .is_err()
        );
    }

    #[test]
    fn missing_records_and_monomials_are_reported() {
        let data = ChernDataSet::from_records([record(1, &[("c2", 24)])]).unwrap();
        assert!(matches!(
            data.pontryagin_numbers(2),
            Err(Error::MissingRecord(2))
        ));
        // A record that passes load validation but lacks a monomial the
        // conversion needs.
        let incomplete = ChernDataSet::from_records([record(2, &[("c4", 324)])]).unwrap();
        assert!(matches!(
            incomplete.pontryagin_numbers(2),
            Err(Error::MissingMonomial { n: 2, .. })
        ));
    }

    #[test]
    fn descriptor_invariants_are_enforced() {
        assert!(ManifoldDescriptor::new(Partition::empty(), 2, Decoration::Real).is_err());
        assert!(ManifoldDescriptor::new(Partition::empty(), 2, Decoration::Quaternionic).is_err());
        assert!(ManifoldDescriptor::new(Partition::empty(), 3, Decoration::Complex).is_err());
        let ok = ManifoldDescriptor::new(
            Partition::new(vec![2, 1]).unwrap(),
            4,
            Decoration::Quaternionic,
        )
        .unwrap();
        assert_eq!(ok.dimension(), 16);
    }
}
