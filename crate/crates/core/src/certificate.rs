//! Pairing-matrix assembly, exact determinants, and basis certification.
//!
//! For a family and degree with positive expected rank, the matrix pairs one
//! functional per basis element (a power of the family's bundle class times a
//! Pontryagin-class monomial) against the basis elements themselves. Rows and
//! columns are grouped into blocks by K3-weight; every block above the
//! diagonal vanishes for degree reasons, each diagonal block factors as a
//! torus scalar times the weight's pure Hilbert pairing block, and the basis
//! is certified by exactly nonzero block determinants. Certificates carry
//! every number as an exact fraction and are emitted on failure too, with the
//! failing check identified by its field.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{factorial, rat, Rat};
use crate::catalog::{
    basis_elements, hilbert_product_numbers, ChernDataSet, ManifoldDescriptor, PontryaginNumbers,
};
use crate::error::Error;
use crate::partitions::{bordism_rank, enumerate_partitions, Decoration, Partition};
use crate::torus::{c1_power_integral, su2_class_power_integral};

/// Renders a rational with an explicit denominator, e.g. `-96/1`.
pub fn fraction_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A pairing functional: integrate (bundle class)^`aux_power` times the
/// Pontryagin monomial `p_partition`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    aux_power: u32,
    partition: Partition,
}

impl Functional {
    pub fn aux_power(&self) -> u32 {
        self.aux_power
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Human-readable row label, e.g. `c1^3`, `p1'*p_(1)`, or `p_(2,1)`.
    pub fn label(&self, decoration: Decoration) -> String {
        let mut pieces = Vec::new();
        if self.aux_power > 0 {
            let base = match decoration {
                Decoration::Complex => "c1",
                Decoration::Quaternionic => "p1'",
                Decoration::Real => unreachable!("plain functionals carry no bundle power"),
            };
            if self.aux_power == 1 {
                pieces.push(base.to_string());
            } else {
                pieces.push(format!("{base}^{}", self.aux_power));
            }
        }
        if !self.partition.is_empty() {
            pieces.push(format!("p_{}", self.partition));
        }
        if pieces.is_empty() {
            "1".to_string()
        } else {
            pieces.join("*")
        }
    }
}

/// The functionals pairing against [`basis_elements`], in matching block
/// order: K3-weight ascending, canonical partition order within a weight.
pub fn functionals(decoration: Decoration, degree: u32) -> Vec<Functional> {
    let Some((n, delta)) = decoration.degree_split(degree) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    match decoration {
        Decoration::Real => {
            for lambda in enumerate_partitions(n) {
                out.push(Functional {
                    aux_power: 0,
                    partition: lambda,
                });
            }
        }
        Decoration::Complex | Decoration::Quaternionic => {
            for m in 0..=n {
                let aux_power = match decoration {
                    Decoration::Complex => 2 * (n - m) + delta,
                    Decoration::Quaternionic => n - m,
                    Decoration::Real => unreachable!(),
                };
                for lambda in enumerate_partitions(m) {
                    out.push(Functional {
                        aux_power,
                        partition: lambda,
                    });
                }
            }
        }
    }
    out
}

/// Integral of the bundle-class power over the torus factor alone.
fn torus_factor(decoration: Decoration, torus_dim: u32, aux_power: u32) -> Result<Rat, Error> {
    match decoration {
        Decoration::Real => {
            if aux_power != 0 {
                return Err(Error::InvalidQuery(
                    "the plain family has no bundle class to raise to a power".into(),
                ));
            }
            Ok(rat(1))
        }
        Decoration::Complex => Ok(c1_power_integral(torus_dim / 2, aux_power)),
        Decoration::Quaternionic => su2_class_power_integral(torus_dim, aux_power),
    }
}

/// The pairing matrix for one family and degree.
#[derive(Debug, Clone)]
pub struct CertMatrix {
    decoration: Decoration,
    degree: u32,
    rows: Vec<Functional>,
    cols: Vec<ManifoldDescriptor>,
    block_sizes: Vec<usize>,
    entries: Vec<Vec<Rat>>,
}

impl CertMatrix {
    pub fn decoration(&self) -> Decoration {
        self.decoration
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn side(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Functional] {
        &self.rows
    }

    pub fn cols(&self) -> &[ManifoldDescriptor] {
        &self.cols
    }

    /// Sizes of the K3-weight blocks, in row/column order.
    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    /// Block index of a row or column position.
    fn block_of(&self, index: usize) -> usize {
        let mut remaining = index;
        for (b, &size) in self.block_sizes.iter().enumerate() {
            if remaining < size {
                return b;
            }
            remaining -= size;
        }
        unreachable!("index {index} beyond the matrix side");
    }

    /// Positions of nonzero entries in blocks strictly above the diagonal.
    pub fn check_block_triangular(&self) -> Vec<(usize, usize)> {
        let mut violations = Vec::new();
        for i in 0..self.side() {
            for j in 0..self.side() {
                if self.block_of(i) < self.block_of(j) && !self.entries[i][j].is_zero() {
                    violations.push((i, j));
                }
            }
        }
        violations
    }

    /// The `b`-th diagonal block, copied out.
    pub fn diagonal_block(&self, b: usize) -> Vec<Vec<Rat>> {
        let start: usize = self.block_sizes[..b].iter().sum();
        let size = self.block_sizes[b];
        (start..start + size)
            .map(|i| self.entries[i][start..start + size].to_vec())
            .collect()
    }
}

/// Builds the pairing matrix; errors when the expected rank is zero or when
/// a needed Chern record is missing or incomplete.
///
/// Every entry is the exact characteristic number of a column element against
/// a row functional; the torus and Hilbert factors are cached per block, and
/// the test suite checks sampled entries against [`characteristic_number`]
/// computed from scratch.
pub fn build_matrix(
    decoration: Decoration,
    degree: u32,
    data: &ChernDataSet,
) -> Result<CertMatrix, Error> {
    if bordism_rank(decoration, degree).is_zero() {
        return Err(Error::RankZero {
            decoration: decoration.tag(),
            degree,
        });
    }
    let rows = functionals(decoration, degree);
    let cols = basis_elements(decoration, degree);
    debug_assert_eq!(rows.len(), cols.len());

    let block_sizes: Vec<usize> = match decoration.degree_split(degree) {
        Some((n, _)) if decoration == Decoration::Real => {
            vec![enumerate_partitions(n).len()]
        }
        Some((n, _)) => (0..=n).map(|m| enumerate_partitions(m).len()).collect(),
        None => unreachable!("rank is positive"),
    };

    let col_tables: Vec<PontryaginNumbers> = cols
        .iter()
        .map(|c| hilbert_product_numbers(c.k3_parts(), data))
        .collect::<Result<_, _>>()?;

    let mut torus_cache: std::collections::BTreeMap<(u32, u32), Rat> =
        std::collections::BTreeMap::new();
    let mut entries = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut line = Vec::with_capacity(cols.len());
        for (j, col) in cols.iter().enumerate() {
            let key = (col.torus_dim(), row.aux_power());
            if let std::collections::btree_map::Entry::Vacant(e) = torus_cache.entry(key) {
                let value = torus_factor(decoration, col.torus_dim(), row.aux_power())?;
                e.insert(value);
            }
            let torus = torus_cache[&key].clone();
            let hilbert = if row.partition().weight() == col_tables[j].weight() {
                col_tables[j].value(row.partition())
            } else {
                Rat::zero()
            };
            line.push(torus * hilbert);
        }
        entries.push(line);
    }
    Ok(CertMatrix {
        decoration,
        degree,
        rows,
        cols,
        block_sizes,
        entries,
    })
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Denominators are cleared row by row, the integer elimination divides
/// exactly at every step, and the cleared factors are restored at the end.
/// The test suite checks this against cofactor expansion on random matrices.
pub fn exact_determinant(matrix: &[Vec<Rat>]) -> Rat {
    let side = matrix.len();
    if side == 0 {
        return Rat::one();
    }
    for row in matrix {
        assert!(row.len() == side, "determinant needs a square matrix");
    }

    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(side);
    for row in matrix {
        let common: BigInt = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        scale *= &common;
        m.push(
            row.iter()
                .map(|x| x.numer() * (&common / x.denom()))
                .collect(),
        );
    }

    let mut negate = false;
    let mut previous_pivot = BigInt::one();
    for k in 0..side - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..side).find(|&r| !m[r][k].is_zero()) else {
                return Rat::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let lead = row[k].clone();
            for j in k + 1..side {
                let numerator = &pivot_row[k] * &row[j] - &lead * &pivot_row[j];
                row[j] = numerator / &previous_pivot;
            }
            row[k] = BigInt::zero();
        }
        previous_pivot = pivot_row[k].clone();
    }

    let mut det = m[side - 1][side - 1].clone();
    if negate {
        det = -det;
    }
    Rat::new(det, scale)
}

/// Determinant by cofactor expansion along the first row; the independent
/// oracle for small matrices.
pub fn cofactor_determinant(matrix: &[Vec<Rat>]) -> Rat {
    let side = matrix.len();
    if side == 0 {
        return Rat::one();
    }
    if side == 1 {
        return matrix[0][0].clone();
    }
    let mut det = Rat::zero();
    for j in 0..side {
        if matrix[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(col, _)| col != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &matrix[0][j] * &cofactor_determinant(&minor);
        det = if j % 2 == 0 { det + term } else { det - term };
    }
    det
}

/// Closed-form torus scalar of the weight-`m` diagonal block in degree
/// `4n + 2*delta`: `(2(n-m)+delta)!` for the line-bundle family,
/// `(-2)^{n-m} (2(n-m))!` for the SU(2) family, and 1 for the plain family
/// (which only has the `m = n` block).
pub fn diagonal_block_scalar(
    decoration: Decoration,
    n: u32,
    m: u32,
    delta: u32,
) -> Result<Rat, Error> {
    if m > n {
        return Err(Error::InvalidQuery(format!(
            "block weight {m} exceeds the degree parameter {n}"
        )));
    }
    if delta > 1 || (delta == 1 && decoration != Decoration::Complex) {
        return Err(Error::InvalidQuery(format!(
            "degree offset {delta} is not allowed for decoration {decoration}"
        )));
    }
    match decoration {
        Decoration::Real => {
            if m != n {
                return Err(Error::InvalidQuery(
                    "the plain family has a single block of full weight".into(),
                ));
            }
            Ok(rat(1))
        }
        Decoration::Complex => Ok(Rat::from_integer(factorial(2 * (n - m) + delta))),
        Decoration::Quaternionic => {
            let sign = BigInt::from(-2i64).pow(n - m);
            Ok(Rat::from_integer(sign * factorial(2 * (n - m))))
        }
    }
}

/// The pure Hilbert pairing block of one K3-weight: rows are the partitions
/// of `m` (as Pontryagin monomials), columns the Hilbert products of weight
/// `m`, both in canonical order.
pub fn gram_matrix(m: u32, data: &ChernDataSet) -> Result<Vec<Vec<Rat>>, Error> {
    let partitions = enumerate_partitions(m);
    let tables: Vec<PontryaginNumbers> = partitions
        .iter()
        .map(|mu| hilbert_product_numbers(mu, data))
        .collect::<Result<_, _>>()?;
    Ok(partitions
        .iter()
        .map(|lambda| tables.iter().map(|t| t.value(lambda)).collect())
        .collect())
}

/// Pass/fail outcome of a certification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// Everything a certification run established, exact throughout.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub decoration: Decoration,
    pub degree: u32,
    pub side: usize,
    pub block_sizes: Vec<usize>,
    pub block_determinants: Vec<Rat>,
    pub overall_determinant: Rat,
    pub triangular_violations: Vec<(usize, usize)>,
    pub block_triangular: bool,
    pub rank_expected: BigUint,
    pub rank_match: bool,
    pub data_provenance: Vec<String>,
    pub verdict: Verdict,
    pub matrix: CertMatrix,
}

/// Serialized form of a certificate; the matrix is elided unless requested.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateDoc {
    pub decoration: String,
    pub degree: u32,
    pub side: usize,
    pub block_sizes: Vec<usize>,
    pub block_determinants: Vec<String>,
    pub overall_determinant: String,
    pub block_triangular: bool,
    pub triangular_violations: Vec<[usize; 2]>,
    pub rank_expected: String,
    pub rank_columns: usize,
    pub rank_match: bool,
    pub data_provenance: Vec<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDoc>,
}

/// Matrix payload of a certificate document.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixDoc {
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl Certificate {
    /// Builds the serializable document.
    pub fn document(&self, include_matrix: bool) -> CertificateDoc {
        CertificateDoc {
            decoration: self.decoration.to_string(),
            degree: self.degree,
            side: self.side,
            block_sizes: self.block_sizes.clone(),
            block_determinants: self
                .block_determinants
                .iter()
                .map(fraction_string)
                .collect(),
            overall_determinant: fraction_string(&self.overall_determinant),
            block_triangular: self.block_triangular,
            triangular_violations: self
                .triangular_violations
                .iter()
                .map(|&(i, j)| [i, j])
                .collect(),
            rank_expected: self.rank_expected.to_string(),
            rank_columns: self.side,
            rank_match: self.rank_match,
            data_provenance: self.data_provenance.clone(),
            verdict: self.verdict.as_str().to_string(),
            matrix: include_matrix.then(|| MatrixDoc {
                row_labels: self
                    .matrix
                    .rows()
                    .iter()
                    .map(|f| f.label(self.decoration))
                    .collect(),
                column_labels: self.matrix.cols().iter().map(|c| c.to_string()).collect(),
                entries: self
                    .matrix
                    .entries()
                    .iter()
                    .map(|row| row.iter().map(fraction_string).collect())
                    .collect(),
            }),
        }
    }

    /// Pretty JSON with a trailing newline; byte-stable for fixed inputs.
    pub fn to_json(&self, include_matrix: bool) -> String {
        let mut text = serde_json::to_string_pretty(&self.document(include_matrix))
            .expect("certificate documents always serialize");
        text.push('\n');
        text
    }
}

/// Certifies one family and degree against loaded Chern data.
///
/// Failure of a data-level check (a triangularity violation, a zero block
/// determinant, a rank mismatch) yields a `fail` certificate; failure of an
/// internal consistency check (determinant product mismatch, diagonal blocks
/// not equal to scalar times the Hilbert pairing block) is an error, because
/// it means the two computation routes disagree.
pub fn certify_basis(
    decoration: Decoration,
    degree: u32,
    data: &ChernDataSet,
) -> Result<Certificate, Error> {
    let matrix = build_matrix(decoration, degree, data)?;
    let (n, delta) = decoration
        .degree_split(degree)
        .expect("rank is positive, so the degree splits");

    let triangular_violations = matrix.check_block_triangular();
    let block_triangular = triangular_violations.is_empty();

    let block_count = matrix.block_sizes().len();
    let mut block_determinants = Vec::with_capacity(block_count);
    for b in 0..block_count {
        block_determinants.push(exact_determinant(&matrix.diagonal_block(b)));
    }
    let overall_determinant = exact_determinant(matrix.entries());

    if block_triangular {
        let product: Rat = block_determinants
            .iter()
            .fold(Rat::one(), |acc, d| acc * d.clone());
        if product != overall_determinant {
            return Err(Error::Inconsistent(format!(
                "block determinant product {} differs from the overall determinant {}",
                fraction_string(&product),
                fraction_string(&overall_determinant)
            )));
        }
    }

    // Each diagonal block must equal its closed-form torus scalar times the
    // weight's Hilbert pairing block, computed through an independent path.
    for b in 0..block_count {
        let m = if decoration == Decoration::Real {
            n
        } else {
            b as u32
        };
        let scalar = diagonal_block_scalar(decoration, n, m, delta)?;
        let gram = gram_matrix(m, data)?;
        let block = matrix.diagonal_block(b);
        for (i, row) in block.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let expected = scalar.clone() * gram[i][j].clone();
                if *entry != expected {
                    return Err(Error::Inconsistent(format!(
                        "diagonal block {b} entry ({i}, {j}) is {} but the scalar \
                         times the Hilbert pairing gives {}",
                        fraction_string(entry),
                        fraction_string(&expected)
                    )));
                }
            }
        }
    }

    let rank_expected = bordism_rank(decoration, degree);
    let rank_match = rank_expected == BigUint::from(matrix.side());
    let all_blocks_nonzero = block_determinants.iter().all(|d| !d.is_zero());
    let verdict = if block_triangular && rank_match && all_blocks_nonzero {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    let used: std::collections::BTreeSet<u32> = matrix
        .cols()
        .iter()
        .flat_map(|c| c.k3_parts().parts().iter().copied())
        .collect();
    let data_provenance = data.provenance_for(used)?;

    Ok(Certificate {
        decoration,
        degree,
        side: matrix.side(),
        block_sizes: matrix.block_sizes().to_vec(),
        block_determinants,
        overall_determinant,
        triangular_violations,
        block_triangular,
        rank_expected,
        rank_match,
        data_provenance,
        verdict,
        matrix,
    })
}
