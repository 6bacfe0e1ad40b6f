use super::{corner_angle, MetricError};

fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// Interior angles of a convex planar polygon given by its vertices in cyclic order.
///
/// The angle at `p[i]` comes from the triangle `p[i-1] p[i] p[i+1]` through the
/// same law-of-cosines routine used for metric corners.
pub fn convex_polygon_angles(points: &[[f64; 2]]) -> Result<Vec<f64>, MetricError> {
    let m = points.len();
    (0..m)
        .map(|i| {
            let (prev, here, next) = (points[(i + m - 1) % m], points[i], points[(i + 1) % m]);
            corner_angle(dist(here, prev), dist(here, next), dist(prev, next))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn square_and_hexagon() {
        let square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let sum: f64 = convex_polygon_angles(&square).unwrap().iter().sum();
        assert!((sum - 2.0 * PI).abs() < 1e-12);
        let hex: Vec<[f64; 2]> = (0..6).map(|i| [(i as f64 * PI / 3.0).cos(), (i as f64 * PI / 3.0).sin()]).collect();
        for a in convex_polygon_angles(&hex).unwrap() {
            assert!((a - 2.0 * PI / 3.0).abs() < 1e-12);
        }
    }
}
