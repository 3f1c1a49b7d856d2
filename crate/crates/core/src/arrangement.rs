//! Partition of R^N into polyhedral cones by a central hyperplane arrangement.
//!
//! The rows of a discontinuity matrix `C` are normals of hyperplanes through
//! the origin. Every full-dimensional region of the arrangement is a pointed
//! polyhedral cone picked out by a sign pattern `s`: the solution set of
//! `diag(s) C x >= 0`. This module enumerates those cones together with their
//! skeletons of extreme rays. Extreme rays of a central arrangement always
//! span the null space of some (N-1)-row subset of `C`, so candidate rays are
//! found by subset null-space enumeration rather than an incremental double
//! description method.

use std::collections::HashSet;

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::ArrangementError;

/// Feasibility tolerance, scaled by the row norm of the constraint.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Singular values below this fraction of the largest count as zero.
pub const RANK_CUTOFF: f64 = 1e-10;
/// Two unit vectors are the same direction when |dot| exceeds 1 - this.
pub const PARALLEL_TOL: f64 = 1e-9;
/// Padding rows must keep |normalized dot| below 1 - this against all rows.
const PADDING_PARALLEL_MARGIN: f64 = 1e-6;
/// Seed for the deterministic padding-row generator.
const PADDING_SEED: u64 = 0x706c616e65; // "plane"

/// The M x N matrix whose rows are hyperplane normals of the discontinuities.
///
/// Rows appended by [`pad_matrix`] carry no sign factor in the integrand;
/// `original_rows` marks how many leading rows are real discontinuities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscontinuityMatrix {
    rows: Vec<Vec<f64>>,
    original_rows: usize,
}

impl DiscontinuityMatrix {
    /// Validates and wraps a set of hyperplane normals.
    ///
    /// Rejects zero rows and pairwise parallel rows (antiparallel rows define
    /// the same hyperplane and are treated as parallel).
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, ArrangementError> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if n < 2 {
            return Err(ArrangementError::DimensionTooSmall { n });
        }
        for (i, row) in rows.iter().enumerate() {
            let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-12 {
                return Err(ArrangementError::ZeroRow { row: i });
            }
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if rows_parallel(&rows[i], &rows[j]) {
                    return Err(ArrangementError::ParallelRows { row_a: i, row_b: j });
                }
            }
        }
        let original_rows = rows.len();
        Ok(Self { rows, original_rows })
    }

    /// Parses the plain-text format: first line `M N`, then M rows of N numbers.
    pub fn from_text(text: &str) -> Result<Self, String> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or("empty matrix file")?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| format!("bad header token '{t}'")))
            .collect::<Result<_, _>>()?;
        let [m, n] = dims[..] else {
            return Err(format!("header must be 'M N', got '{header}'"));
        };
        let mut rows = Vec::with_capacity(m);
        for (k, line) in lines.enumerate() {
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| format!("line {}: bad number '{t}'", k + 2))
                })
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(format!(
                    "line {}: expected {n} entries, got {}",
                    k + 2,
                    row.len()
                ));
            }
            rows.push(row);
        }
        if rows.len() != m {
            return Err(format!("expected {m} rows, got {}", rows.len()));
        }
        Self::new(rows).map_err(|e| e.to_string())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn dimension(&self) -> usize {
        self.rows[0].len()
    }

    /// Number of leading rows that are genuine discontinuities.
    pub fn original_row_count(&self) -> usize {
        self.original_rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Euclidean norm of row `i`; used to scale feasibility tolerances.
    pub fn row_norm(&self, i: usize) -> f64 {
        self.rows[i].iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `C x` as a dense vector.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| dot(row, x))
            .collect()
    }

    /// Rank from singular values with the crate-wide relative cutoff.
    pub fn rank(&self) -> usize {
        let m = self.row_count();
        let n = self.dimension();
        let mat = DMatrix::from_fn(m, n, |i, j| self.rows[i][j]);
        matrix_rank(&mat)
    }

    fn with_padding(mut self, extra: Vec<Vec<f64>>) -> Self {
        self.rows.extend(extra);
        self
    }
}

/// One orientation choice per hyperplane; identifies a closed region.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignPattern(pub Vec<i8>);

impl SignPattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        SignPattern(self.0.iter().map(|s| -s).collect())
    }
}

impl std::fmt::Display for SignPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.0 {
            write!(f, "{}", if *s > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// A unit direction in R^N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ray(Vec<f64>);

impl Ray {
    /// Normalizes `v` to unit length. Panics on a zero vector.
    pub fn new(v: Vec<f64>) -> Self {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(norm > 1e-12, "cannot normalize a zero vector into a ray");
        Ray(v.into_iter().map(|x| x / norm).collect())
    }

    pub fn direction(&self) -> &[f64] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        Ray(self.0.iter().map(|x| -x).collect())
    }

    /// True when the two rays point the same way within [`PARALLEL_TOL`].
    pub fn same_direction(&self, other: &Ray) -> bool {
        dot(&self.0, &other.0) > 1.0 - PARALLEL_TOL
    }
}

/// One full-dimensional region of the arrangement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cone {
    pub id: usize,
    pub pattern: SignPattern,
    pub skeleton: Vec<Ray>,
}

/// Appends deterministic rows until the matrix has at least N rows and rank N.
///
/// Appended rows are sampled from a fixed-seed generator and rejected while
/// nearly parallel to any existing row, so partitions are reproducible. The
/// original rows keep their order and only they feed the integrand.
pub fn pad_matrix(matrix: &DiscontinuityMatrix) -> Result<DiscontinuityMatrix, ArrangementError> {
    let n = matrix.dimension();
    if matrix.row_count() >= n && matrix.rank() == n {
        return Ok(matrix.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PADDING_SEED);
    let mut padded = matrix.clone();
    let mut extra = Vec::new();
    let mut attempts = 0usize;
    while padded.row_count() < n || padded.rank() < n {
        attempts += 1;
        if attempts > 10_000 {
            return Err(ArrangementError::PaddingFailed);
        }
        let candidate: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = candidate.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let unit: Vec<f64> = candidate.iter().map(|x| x / norm).collect();
        let ok = padded.rows().iter().all(|row| {
            let rn = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            (dot(row, &unit) / rn).abs() < 1.0 - PADDING_PARALLEL_MARGIN
        });
        if !ok {
            continue;
        }
        extra.push(unit.clone());
        padded = matrix.clone().with_padding(extra.clone());
    }
    Ok(padded)
}

/// Every unit direction spanning the null space of an (N-1)-row subset of `C`
/// with rank N-1, deduplicated per line, both orientations included.
pub fn candidate_rays(matrix: &DiscontinuityMatrix) -> Vec<Ray> {
    use itertools::Itertools;

    let m = matrix.row_count();
    let n = matrix.dimension();
    let mut lines: Vec<Ray> = Vec::new();
    for subset in (0..m).combinations(n - 1) {
        let Some(dir) = null_direction(matrix, &subset) else {
            continue;
        };
        let canonical = canonical_orientation(dir);
        if !lines.iter().any(|r| r.same_direction(&canonical)) {
            lines.push(canonical);
        }
    }
    let mut rays = Vec::with_capacity(2 * lines.len());
    for line in lines {
        rays.push(line.negated());
        rays.push(line);
    }
    rays
}

/// Null-space direction of the given rows, or None if their rank is not N-1.
fn null_direction(matrix: &DiscontinuityMatrix, subset: &[usize]) -> Option<Ray> {
    let n = matrix.dimension();
    // Embed the subset rows in a square matrix; the full SVD of the square
    // matrix exposes the null direction as the last right singular vector.
    let mut square = DMatrix::zeros(n, n);
    for (k, &i) in subset.iter().enumerate() {
        for j in 0..n {
            square[(k, j)] = matrix.rows[i][j] / matrix.row_norm(i);
        }
    }
    let svd = square.svd(false, true);
    let sigma = &svd.singular_values;
    let cutoff = RANK_CUTOFF * sigma[0].max(1.0);
    let rank = sigma.iter().filter(|&&s| s > cutoff).count();
    if rank != n - 1 {
        return None;
    }
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let null_row = v_t.row(n - 1);
    Some(Ray::new(null_row.iter().copied().collect()))
}

fn canonical_orientation(ray: Ray) -> Ray {
    for &x in ray.direction() {
        if x.abs() > 1e-12 {
            return if x < 0.0 { ray.negated() } else { ray };
        }
    }
    ray
}

/// Enumerates the full-dimensional cones of the arrangement.
///
/// For each of the 2^M sign patterns the candidate rays satisfying
/// `diag(s) C r >= -tol` are collected; the pattern survives when those rays
/// span R^N and their normalized sum satisfies every inequality strictly,
/// which witnesses a nonempty interior.
pub fn enumerate_cones(matrix: &DiscontinuityMatrix) -> Result<Vec<Cone>, ArrangementError> {
    let m = matrix.row_count();
    let n = matrix.dimension();
    let rays = candidate_rays(matrix);

    // dots[i][j] = (a_i . r_j) / |a_i|
    let dots: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let norm = matrix.row_norm(i);
            rays.iter()
                .map(|r| dot(matrix.row(i), r.direction()) / norm)
                .collect()
        })
        .collect();

    let mut cones = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let signs: Vec<i8> = (0..m)
            .map(|i| if mask >> i & 1 == 0 { 1 } else { -1 })
            .collect();
        let feasible: Vec<usize> = (0..rays.len())
            .filter(|&j| {
                (0..m).all(|i| f64::from(signs[i]) * dots[i][j] >= -FEASIBILITY_TOL)
            })
            .collect();
        if feasible.len() < n {
            continue;
        }
        let skeleton_mat = DMatrix::from_fn(feasible.len(), n, |k, j| {
            rays[feasible[k]].direction()[j]
        });
        if matrix_rank(&skeleton_mat) < n {
            continue;
        }
        let mut mean = vec![0.0; n];
        for &j in &feasible {
            for (c, x) in mean.iter_mut().zip(rays[j].direction()) {
                *c += x;
            }
        }
        let mean_norm = mean.iter().map(|x| x * x).sum::<f64>().sqrt();
        if mean_norm < 1e-12 {
            continue;
        }
        let strict = (0..m).all(|i| {
            let v = dot(matrix.row(i), &mean) / (matrix.row_norm(i) * mean_norm);
            f64::from(signs[i]) * v > FEASIBILITY_TOL
        });
        if !strict {
            continue;
        }
        cones.push(Cone {
            id: cones.len(),
            pattern: SignPattern(signs),
            skeleton: feasible.iter().map(|&j| rays[j].clone()).collect(),
        });
    }
    if cones.is_empty() {
        return Err(ArrangementError::DegenerateArrangement);
    }
    Ok(cones)
}

/// Counts regions empirically: distinct strict sign vectors of `C x` over
/// standard-normal samples. Certifies [`enumerate_cones`] independently.
pub fn region_count_oracle(matrix: &DiscontinuityMatrix, samples: usize, seed: u64) -> usize {
    let n = matrix.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<Vec<i8>> = HashSet::new();
    let mut accepted = 0usize;
    while accepted < samples {
        let x: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let values = matrix.apply(&x);
        if values.iter().any(|&v| v == 0.0) {
            continue; // on a hyperplane, resample
        }
        accepted += 1;
        seen.insert(values.iter().map(|&v| if v > 0.0 { 1 } else { -1 }).collect());
    }
    seen.len()
}

/// Strict sign vector of `C x`, or None if a component vanishes exactly.
pub fn strict_sign_vector(matrix: &DiscontinuityMatrix, x: &[f64]) -> Option<SignPattern> {
    let values = matrix.apply(x);
    if values.iter().any(|&v| v == 0.0) {
        return None;
    }
    Some(SignPattern(
        values.iter().map(|&v| if v > 0.0 { 1 } else { -1 }).collect(),
    ))
}

pub(crate) fn matrix_rank(mat: &DMatrix<f64>) -> usize {
    let svd = mat.clone().svd(false, false);
    let sigma = &svd.singular_values;
    if sigma.len() == 0 {
        return 0;
    }
    let cutoff = RANK_CUTOFF * sigma[0].max(1.0);
    sigma.iter().filter(|&&s| s > cutoff).count()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn rows_parallel(a: &[f64], b: &[f64]) -> bool {
    let na = dot(a, a).sqrt();
    let nb = dot(b, b).sqrt();
    (dot(a, b) / (na * nb)).abs() > 1.0 - PARALLEL_TOL
}

/// Standard-normal unit direction.
pub fn random_direction<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return x.into_iter().map(|v| v / norm).collect();
        }
    }
}
