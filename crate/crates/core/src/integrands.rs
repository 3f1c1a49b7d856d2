//! The benchmark integrand families with sign discontinuities.
//!
//! Both families are products of complex factors F(g_i(x)) with g = C x; the
//! sign term makes each factor discontinuous on its hyperplane. Only the real
//! part of the product is integrated.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arrangement::{dot, DiscontinuityMatrix};

/// The two factor families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// F1(u) = 1 / (u - alpha + i beta sign(u))
    F1,
    /// F2(u) = 1 / (u^2 - alpha + i beta sign(u))
    F2,
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "F1" => Ok(Family::F1),
            "F2" => Ok(Family::F2),
            other => Err(format!("unknown integrand family '{other}' (expected F1 or F2)")),
        }
    }
}

/// A fully specified integrand: family, parameters, and the (padded)
/// discontinuity matrix. Padded rows contribute no factor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegrandSpec {
    pub family: Family,
    pub alpha: f64,
    pub beta: f64,
    pub matrix: DiscontinuityMatrix,
}

/// sign(u) with the measure-zero convention sign(0) = +1.
#[inline]
fn sign_plus(u: f64) -> f64 {
    if u < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// One complex factor of the product.
#[inline]
pub fn factor(u: f64, family: Family, alpha: f64, beta: f64) -> Complex64 {
    let s = sign_plus(u);
    let denom = match family {
        Family::F1 => Complex64::new(u - alpha, beta * s),
        Family::F2 => Complex64::new(u * u - alpha, beta * s),
    };
    denom.inv()
}

impl IntegrandSpec {
    pub fn new(
        family: Family,
        alpha: f64,
        beta: f64,
        matrix: DiscontinuityMatrix,
    ) -> Result<Self, crate::error::RunError> {
        if beta == 0.0 {
            return Err(crate::error::RunError::ZeroBeta);
        }
        Ok(Self {
            family,
            alpha,
            beta,
            matrix,
        })
    }

    /// Re prod_i F(g_i(x)) over the original (non-padding) rows only.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        let mut product = Complex64::new(1.0, 0.0);
        for i in 0..self.matrix.original_row_count() {
            let u = dot(self.matrix.row(i), x);
            product *= factor(u, self.family, self.alpha, self.beta);
        }
        product.re
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const ALPHA: f64 = -0.2;
    const BETA: f64 = 0.1;

    #[test]
    fn factor_at_zero() {
        // 1/(0.2 + 0.1i) = 4 - 2i for both families at u = 0
        for family in [Family::F1, Family::F2] {
            let v = factor(0.0, family, ALPHA, BETA);
            assert_relative_eq!(v.re, 4.0, epsilon = 1e-14);
            assert_relative_eq!(v.im, -2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn factor_decays_at_infinity() {
        let v = factor(1e9, Family::F1, ALPHA, BETA);
        assert!(v.norm() < 1e-8);
        let v = factor(-1e9, Family::F2, ALPHA, BETA);
        assert!(v.norm() < 1e-16);
    }

    fn spec_c3x2() -> IntegrandSpec {
        IntegrandSpec::new(
            Family::F1,
            ALPHA,
            BETA,
            crate::registry::builtin("C3x2").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn product_at_origin() {
        // (4 - 2i)^3 = 16 - 88i, real part 16
        let spec = spec_c3x2();
        assert_relative_eq!(spec.evaluate(&[0.0, 0.0]), 16.0, epsilon = 1e-12);
    }

    #[test]
    fn deterministic_on_hyperplanes() {
        let spec = spec_c3x2();
        let a = spec.evaluate(&[0.0, 1.0]); // on the first hyperplane
        let b = spec.evaluate(&[0.0, 1.0]);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn zero_beta_is_rejected() {
        let c = crate::registry::builtin("C3x2").unwrap();
        assert!(IntegrandSpec::new(Family::F1, ALPHA, 0.0, c).is_err());
    }

    #[test]
    fn padded_rows_contribute_no_factor() {
        let single = crate::arrangement::DiscontinuityMatrix::new(vec![vec![1.0, 0.0]]).unwrap();
        let padded = crate::arrangement::pad_matrix(&single).unwrap();
        assert!(padded.row_count() >= 2);
        let spec = IntegrandSpec::new(Family::F1, ALPHA, BETA, padded).unwrap();
        for x in [[0.3, 0.7], [-1.2, 0.4], [2.0, -3.0]] {
            let expected = factor(x[0], Family::F1, ALPHA, BETA).re;
            assert_relative_eq!(spec.evaluate(&x), expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn conjugate_symmetry_under_beta_flip() {
        let c = crate::registry::builtin("C5x3").unwrap();
        let plus = IntegrandSpec::new(Family::F2, ALPHA, BETA, c.clone()).unwrap();
        let minus = IntegrandSpec::new(Family::F2, ALPHA, -BETA, c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
            assert_relative_eq!(plus.evaluate(&x), minus.evaluate(&x), max_relative = 1e-12);
        }
    }

    #[test]
    fn sign_vector_constant_inside_each_cone() {
        let c = crate::registry::builtin("C5x3").unwrap();
        let cones = crate::arrangement::enumerate_cones(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let cone = &cones[1];
        // random segments between conic combinations of the skeleton
        let sample = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            let mut x = vec![0.0; 3];
            for ray in &cone.skeleton {
                let w: f64 = rng.gen_range(0.1..2.0);
                for (xi, ri) in x.iter_mut().zip(ray.direction()) {
                    *xi += w * ri;
                }
            }
            x
        };
        for _ in 0..100 {
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let reference: Vec<f64> = c.apply(&a).iter().map(|v| v.signum()).collect();
            for k in 0..100 {
                let t = k as f64 / 99.0;
                let x: Vec<f64> = a.iter().zip(&b).map(|(ai, bi)| ai + t * (bi - ai)).collect();
                let signs: Vec<f64> = c.apply(&x).iter().map(|v| v.signum()).collect();
                assert_eq!(signs, reference);
            }
        }
    }
}
