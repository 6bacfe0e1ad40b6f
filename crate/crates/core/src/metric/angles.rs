use super::MetricError;

/// Triangles whose smallest triangle-inequality margin is at most this
/// fraction of the longest side are treated as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

pub(crate) fn is_degenerate([x, y, z]: [f64; 3]) -> bool {
    let longest = x.max(y).max(z);
    let margin = (x + y - z).min(x + z - y).min(y + z - x);
    !(margin > DEGENERACY_TOLERANCE * longest)
}

/// Angle between the sides `a` and `b` of a Euclidean triangle whose third side is `c`.
///
/// Uses the half-angle form of the law of cosines,
/// `tan(γ/2) = sqrt((b+c-a)(a+c-b) / ((a+b+c)(a+b-c)))`, which stays accurate
/// for needle-like triangles where `acos` loses digits.
pub fn corner_angle(a: f64, b: f64, c: f64) -> Result<f64, MetricError> {
    if is_degenerate([a, b, c]) {
        return Err(MetricError::Degenerate { triangle: "(anonymous)".into(), lengths: [a, b, c] });
    }
    let ratio = ((b + c - a) * (a + c - b)) / ((a + b + c) * (a + b - c));
    Ok(2.0 * ratio.sqrt().atan())
}

/// Partial derivatives of [`corner_angle`]`(a, b, c)` with respect to `(ln a, ln b, ln c)`.
pub fn corner_angle_gradient(a: f64, b: f64, c: f64) -> Result<[f64; 3], MetricError> {
    let gamma = corner_angle(a, b, c)?;
    let sin = gamma.sin();
    // dγ/da = -(a² - b² + c²) / (2a²b sinγ); dγ/dc = c / (ab sinγ)
    let da = -(a * a - b * b + c * c) / (2.0 * a * a * b * sin);
    let db = -(b * b - a * a + c * c) / (2.0 * b * b * a * sin);
    let dc = c / (a * b * sin);
    Ok([da * a, db * b, dc * c])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn valid_triangle() -> impl Strategy<Value = [f64; 3]> {
        (0.1f64..10.0, 0.1f64..10.0, 0.05f64..0.95).prop_map(|(a, b, t)| {
            // c strictly between |a-b| and a+b
            let lo = (a - b).abs();
            let hi = a + b;
            [a, b, lo + t * (hi - lo)]
        })
    }

    proptest! {
        #[test]
        fn angles_sum_to_pi([a, b, c] in valid_triangle()) {
            let sum = corner_angle(a, b, c).unwrap() + corner_angle(b, c, a).unwrap() + corner_angle(c, a, b).unwrap();
            prop_assert!((sum - PI).abs() < 1e-12, "sum {}", sum);
        }

        #[test]
        fn agrees_with_acos([a, b, c] in valid_triangle()) {
            let direct = ((a * a + b * b - c * c) / (2.0 * a * b)).clamp(-1.0, 1.0).acos();
            prop_assert!((corner_angle(a, b, c).unwrap() - direct).abs() < 1e-7);
        }

        #[test]
        fn gradient_matches_finite_differences([a, b, c] in valid_triangle()) {
            let grad = corner_angle_gradient(a, b, c).unwrap();
            let h = 1e-6;
            let f = |la: f64, lb: f64, lc: f64| corner_angle(la.exp(), lb.exp(), lc.exp()).unwrap();
            let (la, lb, lc) = (a.ln(), b.ln(), c.ln());
            let fd = [
                (f(la + h, lb, lc) - f(la - h, lb, lc)) / (2.0 * h),
                (f(la, lb + h, lc) - f(la, lb - h, lc)) / (2.0 * h),
                (f(la, lb, lc + h) - f(la, lb, lc - h)) / (2.0 * h),
            ];
            for i in 0..3 {
                prop_assert!((grad[i] - fd[i]).abs() < 1e-4 * (1.0 + fd[i].abs()), "{:?} vs {:?}", grad, fd);
            }
        }
    }

    #[test]
    fn needle_triangles_keep_precision() {
        let tiny = corner_angle(1.0, 1.0, 1e-9).unwrap();
        assert!((tiny - 1e-9).abs() < 1e-15);
        // acos of the cosine rounds to zero here
        assert_eq!((1.0f64 - 0.5e-18).acos(), 0.0);
    }

    #[test]
    fn degenerate_and_invalid() {
        assert!(corner_angle(1.0, 1.0, 2.0).is_err());
        assert!(corner_angle(1.0, 1.0, 3.0).is_err());
        assert!(corner_angle(1.0, 2.0, 1.0 + 1e-13).is_err());
    }
}
