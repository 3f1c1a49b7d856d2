//! Variable transformations between the unit hypercube, the positive orthant,
//! simplicial cones, and the whole space.

use crate::error::MapError;
use crate::triangulation::SimplicialCone;

/// Coordinates below this count as the (singular) hypercube boundary.
const BOUNDARY_GUARD: f64 = 1e-300;

/// Maps u in (0,1)^N onto the positive orthant via lambda_i = 1/u_i - 1.
///
/// Returns the orthant point and the Jacobian factor prod(1/u_i^2).
pub fn hypercube_to_orthant(u: &[f64]) -> Result<(Vec<f64>, f64), MapError> {
    let mut lambda = Vec::with_capacity(u.len());
    let mut jac = 1.0;
    for (i, &ui) in u.iter().enumerate() {
        if !(ui > 0.0 && ui < 1.0) || ui < BOUNDARY_GUARD {
            return Err(MapError::OutsideDomain { index: i, value: ui });
        }
        lambda.push(1.0 / ui - 1.0);
        jac /= ui * ui;
    }
    Ok((lambda, jac))
}

/// x = W lambda: carries orthant coordinates into the simplicial cone.
pub fn simplex_point(lambda: &[f64], simplex: &SimplicialCone) -> Vec<f64> {
    simplex.point_from_orthant(lambda)
}

/// Full composition used by every simplex integration:
/// f(W lambda(u)) * |det W| * prod(1/u_i^2).
pub fn mapped_eval<F>(u: &[f64], simplex: &SimplicialCone, f: F) -> Result<f64, MapError>
where
    F: Fn(&[f64]) -> f64,
{
    let (lambda, jac) = hypercube_to_orthant(u)?;
    let x = simplex.point_from_orthant(&lambda);
    let value = f(&x) * simplex.abs_det * jac;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(MapError::NonFinite)
    }
}

/// Maps t in (-1,1)^N onto R^N via x_i = t_i / (1 - t_i^2).
///
/// Returns the point and the Jacobian factor prod((1+t_i^2)/(1-t_i^2)^2).
pub fn whole_space_map(t: &[f64]) -> Result<(Vec<f64>, f64), MapError> {
    let mut x = Vec::with_capacity(t.len());
    let mut jac = 1.0;
    for (i, &ti) in t.iter().enumerate() {
        if ti.abs() >= 1.0 {
            return Err(MapError::OutsideDomain { index: i, value: ti });
        }
        let denom = 1.0 - ti * ti;
        x.push(ti / denom);
        jac *= (1.0 + ti * ti) / (denom * denom);
    }
    Ok((x, jac))
}
