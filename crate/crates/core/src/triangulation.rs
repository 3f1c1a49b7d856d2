//! Decomposition of polyhedral cones into simplicial cones.
//!
//! A cone with p > N skeleton rays is cut by projecting the rays onto the
//! (N-1)-dimensional base orthogonal to the cone axis, triangulating the
//! projected points, and lifting each base simplex back to the N rays that
//! produced it. Cones with p = N are already simplicial.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::arrangement::{dot, matrix_rank, Cone, Ray};
use crate::error::TriangulationError;

/// Determinant threshold below which a simplex counts as degenerate.
pub const DET_TOL: f64 = 1e-12;
/// Minimum allowed dot between the axis and every skeleton ray.
const AXIS_DOT_TOL: f64 = 1e-9;

/// One integration cell: a cone spanned by exactly N independent rays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplicialCone {
    /// Rays in ray-index order of the parent skeleton.
    pub rays: Vec<Ray>,
    /// Indices of the rays within the parent cone's skeleton.
    pub ray_indices: Vec<usize>,
    /// N x N matrix whose columns are the rays, flattened column-major.
    generator: Vec<f64>,
    pub abs_det: f64,
    pub parent_cone: usize,
}

impl SimplicialCone {
    pub fn dimension(&self) -> usize {
        self.rays.len()
    }

    /// The generator matrix W (columns are rays).
    pub fn generator_matrix(&self) -> DMatrix<f64> {
        let n = self.dimension();
        DMatrix::from_column_slice(n, n, &self.generator)
    }

    /// x = W * lambda.
    pub fn point_from_orthant(&self, lambda: &[f64]) -> Vec<f64> {
        let n = self.dimension();
        let mut x = vec![0.0; n];
        for (j, &l) in lambda.iter().enumerate() {
            for i in 0..n {
                x[i] += self.generator[j * n + i] * l;
            }
        }
        x
    }

    /// Solves W lambda = x; the point is inside iff all coordinates are >= 0.
    pub fn orthant_coordinates(&self, x: &[f64]) -> Option<Vec<f64>> {
        let w = self.generator_matrix();
        let lu = w.lu();
        lu.solve(&DVector::from_column_slice(x))
            .map(|v| v.iter().copied().collect())
    }
}

/// Projection of a skeleton onto the base hyperplane orthogonal to the axis.
#[derive(Debug, Clone)]
pub struct BaseProjection {
    pub axis: Ray,
    /// N-1 orthonormal vectors spanning the axis complement.
    pub basis: Vec<Vec<f64>>,
    /// Base coordinates, index-aligned with the skeleton rays.
    pub points: Vec<Vec<f64>>,
}

/// Axis of a cone: the normalized sum of its unit skeleton rays.
///
/// When that direction fails to have positive dot with every ray (a very
/// obtuse cone), falls back to the direction maximizing the minimum dot,
/// computed as the min-norm point of the ray hull.
pub fn cone_axis(skeleton: &[Ray]) -> Result<Ray, TriangulationError> {
    assert!(!skeleton.is_empty(), "axis of an empty skeleton");
    let n = skeleton[0].direction().len();
    let mut sum = vec![0.0; n];
    for ray in skeleton {
        for (s, x) in sum.iter_mut().zip(ray.direction()) {
            *s += x;
        }
    }
    let norm = dot(&sum, &sum).sqrt();
    if norm > 1e-12 {
        let axis = Ray::new(sum);
        if skeleton
            .iter()
            .all(|w| dot(axis.direction(), w.direction()) > AXIS_DOT_TOL)
        {
            return Ok(axis);
        }
    }
    let fallback = min_norm_hull_point(skeleton);
    let fb_norm = dot(&fallback, &fallback).sqrt();
    if fb_norm > 1e-9 {
        let axis = Ray::new(fallback);
        if skeleton
            .iter()
            .all(|w| dot(axis.direction(), w.direction()) > AXIS_DOT_TOL)
        {
            return Ok(axis);
        }
    }
    Err(TriangulationError::NoAxis { cone: usize::MAX })
}

/// Frank-Wolfe iteration for the minimum-norm point of conv(skeleton).
///
/// The unit vector toward that point maximizes the minimum dot against the
/// skeleton over the unit sphere, the Chebyshev-like direction.
fn min_norm_hull_point(skeleton: &[Ray]) -> Vec<f64> {
    let p = skeleton.len();
    let n = skeleton[0].direction().len();
    let mut weights = vec![1.0 / p as f64; p];
    let point = |w: &[f64]| -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (wk, ray) in w.iter().zip(skeleton) {
            for (xi, ri) in x.iter_mut().zip(ray.direction()) {
                *xi += wk * ri;
            }
        }
        x
    };
    for _ in 0..2000 {
        let x = point(&weights);
        // steepest vertex: the ray with the most negative gradient x.w
        let (best, _) = skeleton
            .iter()
            .enumerate()
            .map(|(k, r)| (k, dot(&x, r.direction())))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        let d: Vec<f64> = skeleton[best]
            .direction()
            .iter()
            .zip(&x)
            .map(|(v, xi)| v - xi)
            .collect();
        let dd = dot(&d, &d);
        if dd < 1e-18 {
            break;
        }
        let step = (-dot(&x, &d) / dd).clamp(0.0, 1.0);
        if step < 1e-15 {
            break;
        }
        for w in weights.iter_mut() {
            *w *= 1.0 - step;
        }
        weights[best] += step;
    }
    point(&weights)
}

/// Projects the skeleton rays onto the cone base: each ray is rescaled onto
/// the cross-section plane `axis . x = 1` and expressed in an orthonormal
/// basis of the axis complement.
///
/// The rescaling makes the projection radial, so any triangulation of the
/// base points lifts to a partition of the cone into simplicial cones with
/// linearly independent rays. Projecting without the rescaling does not
/// guarantee that: base simplices can then pick ray sets that lie in a
/// common hyperplane through the origin.
///
/// The base's orthonormal basis comes from Gram-Schmidt over the standard
/// basis vectors in index order, so it is deterministic.
pub fn project_to_base(skeleton: &[Ray], axis: &Ray) -> BaseProjection {
    let n = axis.direction().len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    for i in 0..n {
        if basis.len() == n - 1 {
            break;
        }
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        let a = dot(&v, axis.direction());
        for (vj, aj) in v.iter_mut().zip(axis.direction()) {
            *vj -= a * aj;
        }
        for b in &basis {
            let c = dot(&v, b);
            for (vj, bj) in v.iter_mut().zip(b) {
                *vj -= c * bj;
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    debug_assert_eq!(basis.len(), n - 1);
    let points = skeleton
        .iter()
        .map(|w| {
            let a = dot(w.direction(), axis.direction());
            debug_assert!(a > 0.0, "axis must see every skeleton ray");
            let residual: Vec<f64> = w
                .direction()
                .iter()
                .zip(axis.direction())
                .map(|(wi, ai)| wi / a - ai)
                .collect();
            basis.iter().map(|b| dot(&residual, b)).collect()
        })
        .collect();
    BaseProjection {
        axis: axis.clone(),
        basis,
        points,
    }
}

/// Triangulates base points into (N-1)-simplices covering their convex hull.
///
/// Uses the lifted lower hull: points are raised onto a paraboloid (with a
/// tiny deterministic per-index jog to break cospherical ties) and every
/// (d+1)-subset whose lifted hyperplane has no point below it is a cell.
/// Brute force over subsets, which is fine at the point counts that
/// arrangement cones produce.
pub fn triangulate_base(points: &[Vec<f64>]) -> Result<Vec<Vec<usize>>, TriangulationError> {
    let p = points.len();
    assert!(p > 0, "no points to triangulate");
    let d = points[0].len();
    if p == d + 1 {
        return Ok(vec![(0..p).collect()]);
    }
    if p < d + 1 || affine_rank(points) < d {
        return Err(TriangulationError::DegenerateBase { cone: usize::MAX });
    }
    let scale = points
        .iter()
        .flat_map(|q| q.iter().map(|x| x.abs()))
        .fold(1.0f64, f64::max);
    let scale2 = scale * scale;

    // Lift onto a paraboloid; the jog breaks cospherical ties consistently.
    let lifted: Vec<Vec<f64>> = points
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let mut z = q.clone();
            let h = dot(q, q) + 1e-9 * scale2 * (i + 1) as f64 / p as f64;
            z.push(h);
            z
        })
        .collect();

    let mut cells = Vec::new();
    let mut subset: Vec<usize> = (0..=d).collect();
    loop {
        if let Some(cell) = lower_hull_cell(points, &lifted, &subset, scale) {
            cells.push(cell);
        }
        if !next_combination(&mut subset, p) {
            break;
        }
    }
    if cells.is_empty() {
        return Err(TriangulationError::DegenerateBase { cone: usize::MAX });
    }
    cells.sort();
    Ok(cells)
}

/// Checks one (d+1)-subset: returns it when its lifted hyperplane is a
/// lower-hull facet with a non-degenerate base simplex.
fn lower_hull_cell(
    points: &[Vec<f64>],
    lifted: &[Vec<f64>],
    subset: &[usize],
    scale: f64,
) -> Option<Vec<usize>> {
    let d = points[0].len();
    // base simplex volume check
    let base = DMatrix::from_fn(d, d, |r, c| {
        points[subset[c + 1]][r] - points[subset[0]][r]
    });
    let vol = base.determinant().abs();
    if vol < DET_TOL * scale.powi(d as i32) {
        return None;
    }
    // hyperplane normal in lifted space: null vector of the difference rows
    let mut diff = DMatrix::zeros(d + 1, d + 1);
    for k in 0..d {
        for j in 0..=d {
            diff[(k, j)] = lifted[subset[k + 1]][j] - lifted[subset[0]][j];
        }
    }
    let svd = diff.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let mut normal: Vec<f64> = v_t.row(d).iter().copied().collect();
    if normal[d].abs() < 1e-10 {
        return None; // vertical facet, not part of the lower hull
    }
    if normal[d] > 0.0 {
        for x in normal.iter_mut() {
            *x = -*x;
        }
    }
    // with a downward normal, points below the plane have positive offset
    let tol = 1e-12 * scale * scale;
    let base_point = &lifted[subset[0]];
    for (i, z) in lifted.iter().enumerate() {
        if subset.contains(&i) {
            continue;
        }
        let offset: f64 = z
            .iter()
            .zip(base_point)
            .zip(&normal)
            .map(|((zi, bi), ni)| (zi - bi) * ni)
            .sum();
        if offset > tol {
            return None;
        }
    }
    Some(subset.to_vec())
}

fn next_combination(subset: &mut [usize], p: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < p - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn affine_rank(points: &[Vec<f64>]) -> usize {
    let d = points[0].len();
    let p = points.len();
    let centered = DMatrix::from_fn(p - 1, d, |r, c| points[r + 1][c] - points[0][c]);
    matrix_rank(&centered)
}

/// Cuts a cone into simplicial cones built from its original skeleton rays.
pub fn decompose_cone(cone: &Cone) -> Result<Vec<SimplicialCone>, TriangulationError> {
    let n = cone.skeleton[0].direction().len();
    let tuples = if cone.skeleton.len() == n {
        vec![(0..n).collect::<Vec<_>>()]
    } else {
        let axis = cone_axis(&cone.skeleton).map_err(|e| attach_cone(e, cone.id))?;
        let base = project_to_base(&cone.skeleton, &axis);
        triangulate_base(&base.points).map_err(|e| attach_cone(e, cone.id))?
    };
    tuples
        .into_iter()
        .map(|tuple| {
            let rays: Vec<Ray> = tuple.iter().map(|&i| cone.skeleton[i].clone()).collect();
            let w = DMatrix::from_fn(n, n, |r, c| rays[c].direction()[r]);
            let abs_det = w.clone().lu().determinant().abs();
            if abs_det < DET_TOL {
                return Err(TriangulationError::DegenerateSimplex {
                    cone: cone.id,
                    tuple: tuple.clone(),
                    det: abs_det,
                });
            }
            Ok(SimplicialCone {
                rays,
                ray_indices: tuple,
                generator: w.as_slice().to_vec(),
                abs_det,
                parent_cone: cone.id,
            })
        })
        .collect()
}

fn attach_cone(err: TriangulationError, id: usize) -> TriangulationError {
    match err {
        TriangulationError::NoAxis { .. } => TriangulationError::NoAxis { cone: id },
        TriangulationError::DegenerateBase { .. } => TriangulationError::DegenerateBase { cone: id },
        other => other,
    }
}

/// Plain-text dump of the full partition: per cone its rays and simplex
/// index tuples, ordered lexicographically by sign pattern then tuple.
pub fn build_partition_dump(
    matrix: &crate::arrangement::DiscontinuityMatrix,
) -> Result<String, crate::error::RunError> {
    use std::fmt::Write;

    let padded = crate::arrangement::pad_matrix(matrix)?;
    let mut cones = crate::arrangement::enumerate_cones(&padded)?;
    cones.sort_by_key(|c| c.pattern.to_string());

    let mut out = String::new();
    let mut total = 0usize;
    let mut body = String::new();
    for cone in &cones {
        let simplices = decompose_cone(cone)?;
        total += simplices.len();
        writeln!(body, "cone {} pattern {}", cone.id, cone.pattern).unwrap();
        for (i, ray) in cone.skeleton.iter().enumerate() {
            let coords: Vec<String> = ray
                .direction()
                .iter()
                .map(|x| format!("{x:+.9}"))
                .collect();
            writeln!(body, "  ray {i}: ({})", coords.join(", ")).unwrap();
        }
        for s in &simplices {
            let tuple: Vec<String> = s.ray_indices.iter().map(usize::to_string).collect();
            writeln!(body, "  simplex ({})  |det| = {:.9}", tuple.join(","), s.abs_det).unwrap();
        }
    }
    writeln!(
        out,
        "matrix {} x {} ({} original rows)",
        padded.row_count(),
        padded.dimension(),
        padded.original_row_count()
    )
    .unwrap();
    writeln!(out, "cones {}, simplices {}", cones.len(), total).unwrap();
    out.push_str(&body);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::SignPattern;
    use approx::assert_relative_eq;

    fn ray(v: &[f64]) -> Ray {
        Ray::new(v.to_vec())
    }

    #[test]
    fn axis_of_symmetric_pairs() {
        let axis = cone_axis(&[ray(&[1.0, 0.0]), ray(&[0.0, 1.0])]).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        assert_relative_eq!(axis.direction()[0], s, epsilon = 1e-12);
        assert_relative_eq!(axis.direction()[1], s, epsilon = 1e-12);

        let axis3 = cone_axis(&[
            ray(&[1.0, 0.0, 0.0]),
            ray(&[0.0, 1.0, 0.0]),
            ray(&[0.0, 0.0, 1.0]),
        ])
        .unwrap();
        let t = 1.0 / 3.0f64.sqrt();
        for c in axis3.direction() {
            assert_relative_eq!(*c, t, epsilon = 1e-12);
        }
    }

    #[test]
    fn axis_of_narrow_sector() {
        let deg80 = 80.0f64.to_radians();
        let w2 = ray(&[deg80.cos(), deg80.sin()]);
        let skeleton = [ray(&[1.0, 0.0]), w2.clone()];
        let axis = cone_axis(&skeleton).unwrap();
        let mut sum = vec![1.0 + w2.direction()[0], w2.direction()[1]];
        let norm = dot(&sum, &sum).sqrt();
        for s in sum.iter_mut() {
            *s /= norm;
        }
        assert_relative_eq!(axis.direction()[0], sum[0], epsilon = 1e-12);
        assert_relative_eq!(axis.direction()[1], sum[1], epsilon = 1e-12);
        for w in &skeleton {
            assert!(dot(axis.direction(), w.direction()) > 0.0);
        }
    }

    #[test]
    fn base_points_of_quadrant() {
        let skeleton = [ray(&[1.0, 0.0]), ray(&[0.0, 1.0])];
        let axis = cone_axis(&skeleton).unwrap();
        let base = project_to_base(&skeleton, &axis);
        assert_eq!(base.points.len(), 2);
        // each ray is 45 degrees off the diagonal axis: slice offset tan(45) = 1
        assert_relative_eq!(base.points[0][0].abs(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(base.points[1][0].abs(), 1.0, epsilon = 1e-12);
        assert!(base.points[0][0] * base.points[1][0] < 0.0);
    }

    #[test]
    fn ray_parallel_to_axis_projects_to_origin() {
        let skeleton = [ray(&[1.0, 1.0, 1.0]), ray(&[1.0, 0.0, 0.0]), ray(&[0.0, 1.0, 0.0]), ray(&[0.0, 0.0, 1.0])];
        // force the axis to be the first ray's direction
        let axis = ray(&[1.0, 1.0, 1.0]);
        let base = project_to_base(&skeleton, &axis);
        for c in &base.points[0] {
            assert!(c.abs() < 1e-12);
        }
    }

    #[test]
    fn octant_base_is_equilateral() {
        let skeleton = [
            ray(&[1.0, 0.0, 0.0]),
            ray(&[0.0, 1.0, 0.0]),
            ray(&[0.0, 0.0, 1.0]),
        ];
        let axis = cone_axis(&skeleton).unwrap();
        let base = project_to_base(&skeleton, &axis);
        let d = |a: &[f64], b: &[f64]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let d01 = d(&base.points[0], &base.points[1]);
        let d12 = d(&base.points[1], &base.points[2]);
        let d20 = d(&base.points[2], &base.points[0]);
        assert_relative_eq!(d01, d12, epsilon = 1e-12);
        assert_relative_eq!(d12, d20, epsilon = 1e-12);
    }

    #[test]
    fn single_simplex_short_circuit() {
        let points = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(triangulate_base(&points).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn collinear_points_chain() {
        let points = vec![vec![-1.0], vec![-0.25], vec![0.5], vec![2.0]];
        let cells = triangulate_base(&points).unwrap();
        assert_eq!(cells, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn square_splits_into_two_triangles() {
        let points = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ];
        let cells = triangulate_base(&points).unwrap();
        assert_eq!(cells.len(), 2);
        let area: f64 = cells
            .iter()
            .map(|c| {
                let ax = points[c[1]][0] - points[c[0]][0];
                let ay = points[c[1]][1] - points[c[0]][1];
                let bx = points[c[2]][0] - points[c[0]][0];
                let by = points[c[2]][1] - points[c[0]][1];
                (ax * by - ay * bx).abs() / 2.0
            })
            .sum();
        assert_relative_eq!(area, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn degenerate_base_is_rejected() {
        // 4 points on a line inside a 2-D base
        let points = vec![
            vec![0.0, 0.0],
            vec![1.0, 1.0],
            vec![2.0, 2.0],
            vec![3.0, 3.0],
        ];
        assert!(matches!(
            triangulate_base(&points),
            Err(TriangulationError::DegenerateBase { .. })
        ));
    }

    fn quadrant_cone() -> Cone {
        Cone {
            id: 0,
            pattern: SignPattern(vec![1, 1]),
            skeleton: vec![ray(&[1.0, 0.0]), ray(&[0.0, 1.0])],
        }
    }

    #[test]
    fn quadrant_decomposes_to_itself() {
        let simplices = decompose_cone(&quadrant_cone()).unwrap();
        assert_eq!(simplices.len(), 1);
        assert_relative_eq!(simplices[0].abs_det, 1.0, epsilon = 1e-12);
        assert_eq!(simplices[0].ray_indices, vec![0, 1]);
    }

    #[test]
    fn square_pyramid_cone_splits_in_two() {
        let cone = Cone {
            id: 3,
            pattern: SignPattern(vec![1; 4]),
            skeleton: vec![
                ray(&[1.0, 0.0, 1.0]),
                ray(&[0.0, 1.0, 1.0]),
                ray(&[-1.0, 0.0, 1.0]),
                ray(&[0.0, -1.0, 1.0]),
            ],
        };
        let simplices = decompose_cone(&cone).unwrap();
        assert_eq!(simplices.len(), 2);
        for s in &simplices {
            assert_eq!(s.parent_cone, 3);
            assert!(s.abs_det > DET_TOL);
            // ray provenance: every simplex ray is exactly a skeleton ray
            for (k, r) in s.ray_indices.iter().zip(&s.rays) {
                assert_eq!(r, &cone.skeleton[*k]);
            }
        }
    }

    #[test]
    fn c3x2_yields_six_simplices() {
        let c = crate::registry::builtin("C3x2").unwrap();
        let cones = crate::arrangement::enumerate_cones(&c).unwrap();
        let total: usize = cones
            .iter()
            .map(|k| decompose_cone(k).unwrap().len())
            .sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn conic_partition_within_each_cone() {
        use rand::SeedableRng;
        let c = crate::registry::builtin("C5x3").unwrap();
        let cones = crate::arrangement::enumerate_cones(&c).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for cone in &cones {
            let simplices = decompose_cone(cone).unwrap();
            let mut hits = 0;
            while hits < 2_000 {
                let x = crate::arrangement::random_direction(&mut rng, 3);
                let Some(pattern) = crate::arrangement::strict_sign_vector(&c, &x) else {
                    continue;
                };
                if pattern != cone.pattern {
                    continue;
                }
                hits += 1;
                let mut inside = 0;
                let mut boundary = false;
                for s in &simplices {
                    let lambda = s.orthant_coordinates(&x).unwrap();
                    let min = lambda.iter().copied().fold(f64::INFINITY, f64::min);
                    if min > 1e-9 {
                        inside += 1;
                    } else if min > -1e-9 {
                        boundary = true;
                    }
                }
                if boundary {
                    hits -= 1; // resample points on simplex boundaries
                    continue;
                }
                assert_eq!(inside, 1, "direction {x:?} in cone {}", cone.id);
            }
        }
    }

    #[test]
    fn solid_angles_are_conserved() {
        use rand::SeedableRng;
        let c = crate::registry::builtin("C6x3").unwrap();
        let cones = crate::arrangement::enumerate_cones(&c).unwrap();
        let cone = &cones[0];
        let simplices = decompose_cone(cone).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let trials = 200_000usize;
        let mut in_cone = 0usize;
        let mut in_simplices = 0usize;
        for _ in 0..trials {
            let x = crate::arrangement::random_direction(&mut rng, 3);
            if let Some(pattern) = crate::arrangement::strict_sign_vector(&c, &x) {
                if pattern == cone.pattern {
                    in_cone += 1;
                }
            }
            for s in &simplices {
                let lambda = s.orthant_coordinates(&x).unwrap();
                if lambda.iter().all(|&l| l > 1e-9) {
                    in_simplices += 1;
                    break;
                }
            }
        }
        let p = in_cone as f64 / trials as f64;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        let diff = (in_cone as f64 - in_simplices as f64).abs() / trials as f64;
        assert!(diff <= 3.0 * se.max(1e-4), "diff {diff}, se {se}");
    }
}
