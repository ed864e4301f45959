//! Small geometric helpers shared by the mesh and constraint modules.

use nalgebra::{Matrix3, Matrix4, Vector3};

pub type Vec3 = Vector3<f64>;

/// Rotation by `angle` about the local z axis.
pub fn rot_z(angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// Rotation by `angle` about the local x axis.
pub fn rot_x(angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

/// Derivative of [`rot_x`] with respect to the angle.
pub fn rot_x_prime(angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    Matrix3::new(0.0, 0.0, 0.0, 0.0, -s, -c, 0.0, c, -s)
}

/// Second derivative of [`rot_x`] with respect to the angle.
pub fn rot_x_second(angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    Matrix3::new(0.0, 0.0, 0.0, 0.0, -c, s, 0.0, -s, -c)
}

/// Embed a rotation block and a translation column in a homogeneous matrix.
pub fn homogeneous(rot: &Matrix3<f64>, trans: &Vec3) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(rot);
    m.fixed_view_mut::<3, 1>(0, 3).copy_from(trans);
    m
}

/// Embed a 3x3 block with zero translation and a zero (not one) corner.
/// Used for derivatives of homogeneous products.
pub fn homogeneous_derivative(rot: &Matrix3<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(rot);
    m
}

pub fn skew(v: &Vec3) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// A rigid placement `x -> rot * x + trans`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    pub rot: Matrix3<f64>,
    pub trans: Vec3,
}

impl RigidTransform {
    pub fn identity() -> Self {
        RigidTransform {
            rot: Matrix3::identity(),
            trans: Vec3::zeros(),
        }
    }

    /// Build a placement from an orthonormal frame: x axis, z axis, and origin.
    /// The y axis is `z x x`.
    pub fn from_frame(x_axis: Vec3, z_axis: Vec3, origin: Vec3) -> Self {
        let x = x_axis.normalize();
        let z = z_axis.normalize();
        let y = z.cross(&x);
        RigidTransform {
            rot: Matrix3::from_columns(&[x, y, z]),
            trans: origin,
        }
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.rot * p + self.trans
    }

    pub fn apply_vector(&self, v: &Vec3) -> Vec3 {
        self.rot * v
    }

    pub fn inverse(&self) -> Self {
        let rot = self.rot.transpose();
        RigidTransform {
            rot,
            trans: -(rot * self.trans),
        }
    }

    /// `self` after `other`: (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &RigidTransform) -> Self {
        RigidTransform {
            rot: self.rot * other.rot,
            trans: self.rot * other.trans + self.trans,
        }
    }

    pub fn to_homogeneous(&self) -> Matrix4<f64> {
        homogeneous(&self.rot, &self.trans)
    }

    /// Rotation about the line through `point` with direction `axis`.
    pub fn about_line(point: Vec3, axis: Vec3, angle: f64) -> Self {
        let rot = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle)
            .into_inner();
        RigidTransform {
            rot,
            trans: point - rot * point,
        }
    }
}

/// Area-weighted normal of a (nearly) planar polygon by Newell's formula.
/// The returned vector is not normalized; its magnitude is twice the area.
pub fn newell_normal(points: &[Vec3]) -> Vec3 {
    let mut n = Vec3::zeros();
    for i in 0..points.len() {
        let a = &points[i];
        let b = &points[(i + 1) % points.len()];
        n += a.cross(b);
    }
    n
}

/// Maximum distance of the points from their best-fit plane (through the centroid,
/// normal from Newell's formula).
pub fn planarity_deviation(points: &[Vec3]) -> f64 {
    let n = newell_normal(points);
    let norm = n.norm();
    if norm == 0.0 {
        return f64::INFINITY;
    }
    let n = n / norm;
    let centroid = points.iter().sum::<Vec3>() / points.len() as f64;
    points
        .iter()
        .map(|p| (p - centroid).dot(&n).abs())
        .fold(0.0, f64::max)
}

/// Signed angle from `from` to `to` measured about `normal` (right-handed),
/// in (-pi, pi]. The vectors are projected onto the plane first.
pub fn angle_in_plane(from: &Vec3, to: &Vec3, normal: &Vec3) -> f64 {
    let n = normal.normalize();
    let f = from - n * from.dot(&n);
    let t = to - n * to.dot(&n);
    let sin = n.dot(&f.cross(&t));
    let cos = f.dot(&t);
    sin.atan2(cos)
}

/// As [`angle_in_plane`] but normalized to [0, 2*pi), suitable for sector angles.
pub fn sector_angle(from: &Vec3, to: &Vec3, normal: &Vec3) -> f64 {
    let a = angle_in_plane(from, to, normal);
    a.rem_euclid(2.0 * std::f64::consts::PI)
}

/// Signed folding angle at a crease.
///
/// `dir` is the crease direction, `n_right` the normal of the panel containing
/// the directed edge opposite to `dir`, `n_left` the normal of the panel
/// containing the directed edge along `dir`. Positive angles fold the left
/// panel toward the orientation normal (a valley fold); the value does not
/// depend on which of the two crease directions is chosen.
pub fn fold_angle(dir: &Vec3, n_right: &Vec3, n_left: &Vec3) -> f64 {
    let d = dir.normalize();
    let nr = n_right.normalize();
    let nl = n_left.normalize();
    let sin = d.dot(&nr.cross(&nl));
    let cos = nr.dot(&nl);
    sin.atan2(cos)
}

/// Point minimizing the sum of squared distances to a set of lines, together
/// with the largest distance from that point to any of the lines.
///
/// Lines are given as (point, unit direction). Returns `None` for an empty set.
pub fn least_squares_line_intersection(lines: &[(Vec3, Vec3)]) -> Option<(Vec3, f64)> {
    if lines.is_empty() {
        return None;
    }
    let mut m = Matrix3::<f64>::zeros();
    let mut rhs = Vec3::zeros();
    for (a, d) in lines {
        let d = d.normalize();
        let proj = Matrix3::identity() - d * d.transpose();
        m += proj;
        rhs += proj * a;
    }
    // Rank-deficient systems (all lines parallel or collinear) get the
    // minimum-norm solution through the pseudoinverse.
    let svd = m.svd(true, true);
    let x = svd.solve(&rhs, 1e-12).ok()?;
    let worst = lines
        .iter()
        .map(|(a, d)| {
            let d = d.normalize();
            let r = x - a;
            (r - d * r.dot(&d)).norm()
        })
        .fold(0.0, f64::max);
    Some((x, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn rotations_match_their_derivatives() {
        let h = 1e-6;
        let a = 0.7;
        let fd = (rot_x(a + h) - rot_x(a - h)) / (2.0 * h);
        assert!((fd - rot_x_prime(a)).norm() < 1e-9);
        let fd2 = (rot_x_prime(a + h) - rot_x_prime(a - h)) / (2.0 * h);
        assert!((fd2 - rot_x_second(a)).norm() < 1e-9);
    }

    #[test]
    fn fold_angle_is_direction_independent() {
        // Book fold: right half flat, left half raised by 0.3 about the y axis.
        let theta = 0.3;
        let dir = Vec3::new(0.0, 1.0, 0.0);
        let n_right = Vec3::new(0.0, 0.0, 1.0);
        let n_left = (rot_z(0.0)
            * nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(dir), theta)
                .into_inner())
            * n_right;
        let rho = fold_angle(&dir, &n_right, &n_left);
        assert!((rho - theta).abs() < 1e-12);
        // Reversing the crease direction swaps the panel roles and keeps the sign.
        let rho_rev = fold_angle(&-dir, &n_left, &n_right);
        assert!((rho_rev - theta).abs() < 1e-12);
    }

    #[test]
    fn sector_angle_wraps_to_positive() {
        let n = Vec3::z();
        let a = sector_angle(&Vec3::x(), &Vec3::new(0.0, -1.0, 0.0), &n);
        assert!((a - 3.0 * FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn concurrent_lines_intersect_at_common_point() {
        let lines = vec![
            (Vec3::new(1.0, 1.0, 0.0), Vec3::new(1.0, 1.0, 0.0)),
            (Vec3::new(2.0, 0.0, 0.0), Vec3::new(-1.0, 1.0, 0.0)),
            (Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0)),
        ];
        let (p, worst) = least_squares_line_intersection(&lines).unwrap();
        assert!((p - Vec3::new(1.0, 1.0, 0.0)).norm() < 1e-10);
        assert!(worst < 1e-10);
    }

    #[test]
    fn skew_parallel_lines_are_not_concurrent() {
        let lines = vec![
            (Vec3::new(0.0, -1.0, 0.0), Vec3::new(1.0, 0.0, 0.0)),
            (Vec3::new(0.0, 1.0, 0.0), Vec3::new(1.0, 0.0, 0.0)),
        ];
        let (_, worst) = least_squares_line_intersection(&lines).unwrap();
        assert!(worst > 0.9);
    }

    #[test]
    fn refold_about_line_keeps_axis_fixed() {
        let t = RigidTransform::about_line(Vec3::new(1.0, 2.0, 0.0), Vec3::x(), PI / 3.0);
        let on_axis = Vec3::new(5.0, 2.0, 0.0);
        assert!((t.apply(&on_axis) - on_axis).norm() < 1e-12);
    }
}
