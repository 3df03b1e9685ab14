//! The Heisenberg group ℍⁿ with its Korányi gauge.
//!
//! Points are `(x, y, z)` with `x, y ∈ ℝⁿ`, `z ∈ ℝ` and product
//!
//! ```text
//! (x, y, z) ∗ (x', y', z') = (x + x', y + y', z + z' + 2 Σ (x'ᵢ yᵢ − xᵢ y'ᵢ))
//! ```
//!
//! The Korányi norm is `((|x|² + |y|²)² + z²)^{1/4}` and the metric is the
//! left-invariant `d(a, b) = ‖a⁻¹ ∗ b‖`.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};

/// Absolute tolerance for equality tests on unit-scale data.
pub const GEOMETRY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: f64,
}

impl HeisenbergPoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>, z: f64) -> Result<Self> {
        let p = HeisenbergPoint { x, y, z };
        p.validate()?;
        Ok(p)
    }

    /// Convenience constructor for ℍ¹.
    pub fn planar(x: f64, y: f64, z: f64) -> Self {
        HeisenbergPoint {
            x: vec![x],
            y: vec![y],
            z,
        }
    }

    pub fn origin(n: usize) -> Self {
        HeisenbergPoint {
            x: vec![0.0; n],
            y: vec![0.0; n],
            z: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.x.is_empty() {
            return usage("point dimension must be at least 1");
        }
        if self.x.len() != self.y.len() {
            return Err(Error::DimensionMismatch {
                left: self.x.len(),
                right: self.y.len(),
            });
        }
        if !self.is_finite() {
            return Err(Error::NonFinite("point"));
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.z.is_finite() && self.x.iter().chain(&self.y).all(|c| c.is_finite())
    }

    /// Group product `self ∗ other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let twist: f64 = (0..self.dim())
            .map(|i| other.x[i] * self.y[i] - self.x[i] * other.y[i])
            .sum();
        HeisenbergPoint {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
            z: self.z + other.z + 2.0 * twist,
        }
    }

    pub fn inv(&self) -> Self {
        HeisenbergPoint {
            x: self.x.iter().map(|c| -c).collect(),
            y: self.y.iter().map(|c| -c).collect(),
            z: -self.z,
        }
    }

    /// Squared Euclidean norm of the horizontal part `(x, y)`.
    pub fn horizontal_norm_sq(&self) -> f64 {
        self.x.iter().chain(&self.y).map(|c| c * c).sum()
    }

    pub fn horizontal_norm(&self) -> f64 {
        self.horizontal_norm_sq().sqrt()
    }

    pub fn koranyi_norm(&self) -> f64 {
        self.horizontal_norm_sq().hypot(self.z).sqrt()
    }

    /// Left translation `τ_self(q) = self ∗ q`.
    pub fn left_translate(&self, q: &Self) -> Result<Self> {
        self.mul(q)
    }

    /// Right translation by the horizontal element `tU`.
    pub fn right_translate_horizontal(&self, u: &HorizontalVector, t: f64) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: u.dim(),
            });
        }
        Ok(self.mul_unchecked(&u.scaled_point(t)))
    }

    /// Horizontal dilation `(x, y, z) ↦ (λx, λy, z)`.
    pub fn horizontal_dilation(&self, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return usage(format!("dilation factor must be finite and nonnegative, got {lambda}"));
        }
        Ok(HeisenbergPoint {
            x: self.x.iter().map(|c| lambda * c).collect(),
            y: self.y.iter().map(|c| lambda * c).collect(),
            z: self.z,
        })
    }

    /// Non-isotropic dilation `(x, y, z) ↦ (rx, ry, r²z)`; the gauge is 1-homogeneous under it.
    pub fn nonisotropic_dilation(&self, r: f64) -> Self {
        HeisenbergPoint {
            x: self.x.iter().map(|c| r * c).collect(),
            y: self.y.iter().map(|c| r * c).collect(),
            z: r * r * self.z,
        }
    }

    /// Metric projection onto the vertical line `L`.
    pub fn vertical_project(&self, line: &VerticalLine) -> Result<Self> {
        if line.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: line.dim(),
            });
        }
        Ok(self.project_unchecked(line))
    }

    pub(crate) fn project_unchecked(&self, line: &VerticalLine) -> Self {
        HeisenbergPoint {
            x: line.x_tilde.clone(),
            y: line.y_tilde.clone(),
            z: self.projected_height(line),
        }
    }

    /// Height `z + 2(y·x̃ − x·ỹ)` of the projection onto `L_(x̃,ỹ)`.
    pub(crate) fn projected_height(&self, line: &VerticalLine) -> f64 {
        self.z + 2.0 * (dot(&self.y, &line.x_tilde) - dot(&self.x, &line.y_tilde))
    }

    /// Whether `(x, y)` matches `other` coordinatewise within `tol`.
    pub fn same_horizontal(&self, other: &Self, tol: f64) -> bool {
        self.x
            .iter()
            .zip(&other.x)
            .chain(self.y.iter().zip(&other.y))
            .all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && self.same_horizontal(other, tol) && (self.z - other.z).abs() <= tol
    }

    /// Lexicographic order on `(x, y, z)`.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.x
            .iter()
            .chain(&self.y)
            .chain(std::iter::once(&self.z))
            .zip(other.x.iter().chain(&other.y).chain(std::iter::once(&other.z)))
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    }

    /// The horizontal part as a point of ℝ²ⁿ, `x` first.
    pub fn plane_coords(&self) -> Vec<f64> {
        self.x.iter().chain(&self.y).copied().collect()
    }
}

/// Korányi distance `‖a⁻¹ ∗ b‖`.
pub fn distance(a: &HeisenbergPoint, b: &HeisenbergPoint) -> Result<f64> {
    check_dims(a, b)?;
    Ok(distance_unchecked(a, b))
}

pub(crate) fn distance_unchecked(a: &HeisenbergPoint, b: &HeisenbergPoint) -> f64 {
    let mut h = 0.0;
    let mut twist = 0.0;
    for i in 0..a.dim() {
        let dx = b.x[i] - a.x[i];
        let dy = b.y[i] - a.y[i];
        h += dx * dx + dy * dy;
        // z-component of a⁻¹ ∗ b: z' − z + 2 Σ (x'ᵢ(−yᵢ) − (−xᵢ)y'ᵢ)
        twist += a.x[i] * b.y[i] - b.x[i] * a.y[i];
    }
    let dz = b.z - a.z + 2.0 * twist;
    h.hypot(dz).sqrt()
}

/// Euclidean distance between the horizontal parts of two points.
pub(crate) fn plane_distance_unchecked(a: &HeisenbergPoint, b: &HeisenbergPoint) -> f64 {
    let mut h = 0.0;
    for i in 0..a.dim() {
        let dx = b.x[i] - a.x[i];
        let dy = b.y[i] - a.y[i];
        h += dx * dx + dy * dy;
    }
    h.sqrt()
}

/// True iff a horizontal line passes through both points, i.e. `q2 = q ∗ (tU)`
/// for some horizontal `U`.
///
/// The z-component of `q⁻¹ ∗ q2` is compared against
/// `GEOMETRY_TOL · (1 + ‖q‖ + ‖q2‖)`.
pub fn horizontally_aligned(q: &HeisenbergPoint, q2: &HeisenbergPoint) -> Result<bool> {
    let rel = q.inv().mul(q2)?;
    let scale = 1.0 + q.koranyi_norm() + q2.koranyi_norm();
    Ok(rel.z.abs() <= GEOMETRY_TOL * scale)
}

/// The set `H_{q,q2}` of vertical lines on which `q` and `q2` project to the same point.
pub fn separating_hyperplane(q: &HeisenbergPoint, q2: &HeisenbergPoint) -> Result<SeparatingHyperplane> {
    check_dims(q, q2)?;
    if q == q2 {
        return usage("separating hyperplane needs two distinct points");
    }
    let n = q.dim();
    let mut normal = Vec::with_capacity(2 * n);
    normal.extend((0..n).map(|i| q.y[i] - q2.y[i]));
    normal.extend((0..n).map(|i| q2.x[i] - q.x[i]));
    let degenerate = normal.iter().all(|c| *c == 0.0);
    Ok(SeparatingHyperplane {
        normal,
        offset: (q2.z - q.z) / 2.0,
        degenerate,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalVector {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl HorizontalVector {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if u.is_empty() {
            return usage("horizontal vector dimension must be at least 1");
        }
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                left: u.len(),
                right: v.len(),
            });
        }
        if !u.iter().chain(&v).all(|c| c.is_finite()) {
            return Err(Error::NonFinite("horizontal vector"));
        }
        Ok(HorizontalVector { u, v })
    }

    pub fn planar(u: f64, v: f64) -> Self {
        HorizontalVector { u: vec![u], v: vec![v] }
    }

    pub fn zero(n: usize) -> Self {
        HorizontalVector {
            u: vec![0.0; n],
            v: vec![0.0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn is_zero(&self) -> bool {
        self.u.iter().chain(&self.v).all(|c| *c == 0.0)
    }

    /// Euclidean norm of `(u, v)` in ℝ²ⁿ.
    pub fn norm(&self) -> f64 {
        self.u.iter().chain(&self.v).map(|c| c * c).sum::<f64>().sqrt()
    }

    /// The group element `(tu, tv, 0)`.
    pub fn scaled_point(&self, t: f64) -> HeisenbergPoint {
        HeisenbergPoint {
            x: self.u.iter().map(|c| t * c).collect(),
            y: self.v.iter().map(|c| t * c).collect(),
            z: 0.0,
        }
    }
}

/// The vertical line `L_(x̃,ỹ) = {(x̃, ỹ, z) : z ∈ ℝ}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerticalLine {
    #[serde(rename = "xt")]
    pub x_tilde: Vec<f64>,
    #[serde(rename = "yt")]
    pub y_tilde: Vec<f64>,
}

impl VerticalLine {
    pub fn new(x_tilde: Vec<f64>, y_tilde: Vec<f64>) -> Result<Self> {
        let line = VerticalLine { x_tilde, y_tilde };
        line.validate()?;
        Ok(line)
    }

    pub fn planar(x: f64, y: f64) -> Self {
        VerticalLine {
            x_tilde: vec![x],
            y_tilde: vec![y],
        }
    }

    /// The center of the group, `L_(0,0)`.
    pub fn axis(n: usize) -> Self {
        VerticalLine {
            x_tilde: vec![0.0; n],
            y_tilde: vec![0.0; n],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.x_tilde.is_empty() {
            return usage("line dimension must be at least 1");
        }
        if self.x_tilde.len() != self.y_tilde.len() {
            return Err(Error::DimensionMismatch {
                left: self.x_tilde.len(),
                right: self.y_tilde.len(),
            });
        }
        if !self.x_tilde.iter().chain(&self.y_tilde).all(|c| c.is_finite()) {
            return Err(Error::NonFinite("vertical line"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.x_tilde.len()
    }

    pub fn contains(&self, q: &HeisenbergPoint, tol: f64) -> bool {
        q.dim() == self.dim()
            && q.x.iter().zip(&self.x_tilde).all(|(a, b)| (a - b).abs() <= tol)
            && q.y.iter().zip(&self.y_tilde).all(|(a, b)| (a - b).abs() <= tol)
    }

    /// `(x̃, ỹ)` as a point of ℝ²ⁿ.
    pub fn coords(&self) -> Vec<f64> {
        self.x_tilde.iter().chain(&self.y_tilde).copied().collect()
    }

    pub fn from_coords(coords: &[f64]) -> Self {
        let n = coords.len() / 2;
        VerticalLine {
            x_tilde: coords[..n].to_vec(),
            y_tilde: coords[n..].to_vec(),
        }
    }

    pub fn point_at(&self, z: f64) -> HeisenbergPoint {
        HeisenbergPoint {
            x: self.x_tilde.clone(),
            y: self.y_tilde.clone(),
            z,
        }
    }
}

/// Affine hyperplane `{ℓ ∈ ℝ²ⁿ : normal · ℓ = offset}` of lines identifying two points.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatingHyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
    degenerate: bool,
}

impl SeparatingHyperplane {
    /// Zero normal: the two points share `(x, y)` and no line identifies them.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `normal · ℓ − offset` for the line `ℓ`.
    pub fn residual(&self, line: &VerticalLine) -> f64 {
        dot(&self.normal, &line.coords()) - self.offset
    }

    /// Euclidean distance from `ℓ` to the hyperplane; infinite when degenerate.
    pub fn distance_to(&self, line: &VerticalLine) -> f64 {
        if self.degenerate {
            return f64::INFINITY;
        }
        let norm = self.normal.iter().map(|c| c * c).sum::<f64>().sqrt();
        self.residual(line).abs() / norm
    }

    pub fn contains(&self, line: &VerticalLine, tol: f64) -> bool {
        !self.degenerate && self.residual(line).abs() <= tol
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

pub(crate) fn check_dims(a: &HeisenbergPoint, b: &HeisenbergPoint) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> HeisenbergPoint {
        HeisenbergPoint::planar(x, y, z)
    }

    #[test]
    fn product_matches_twisted_law() {
        assert_eq!(p(1.0, 0.0, 0.0).mul(&p(0.0, 1.0, 0.0)).unwrap(), p(1.0, 1.0, -2.0));
        let q = p(0.3, -1.2, 4.0);
        assert_eq!(HeisenbergPoint::origin(1).mul(&q).unwrap(), q);
        let r = q.mul(&q.inv()).unwrap();
        assert!(r.approx_eq(&HeisenbergPoint::origin(1), 1e-15));
    }

    #[test]
    fn inverse_negates() {
        assert_eq!(p(1.0, 2.0, 3.0).inv(), p(-1.0, -2.0, -3.0));
        assert_eq!(HeisenbergPoint::origin(2).inv(), HeisenbergPoint::origin(2));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = HeisenbergPoint::origin(1);
        let b = HeisenbergPoint::origin(2);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(distance(&a, &b).is_err());
    }

    #[test]
    fn gauge_values() {
        assert_eq!(p(0.0, 0.0, 9.0).koranyi_norm(), 3.0);
        assert_eq!(p(0.0, 0.0, -4.0).koranyi_norm(), 2.0);
        assert_eq!(p(1.0, 0.0, 0.0).koranyi_norm(), 1.0);
    }

    #[test]
    fn axis_distance_is_square_root() {
        let d = distance(&p(0.0, 0.0, 1.0), &p(0.0, 0.0, 5.0)).unwrap();
        assert!((d - 2.0).abs() < 1e-15);
    }

    #[test]
    fn right_translation_moves_along_horizontal_line() {
        let u = HorizontalVector::planar(3.0, 4.0);
        let o = HeisenbergPoint::origin(1);
        assert_eq!(o.right_translate_horizontal(&u, 2.0).unwrap(), p(6.0, 8.0, 0.0));
        let q = p(0.5, -0.25, 2.0);
        assert_eq!(q.right_translate_horizontal(&u, 0.0).unwrap(), q);
        let moved = q.right_translate_horizontal(&u, -0.7).unwrap();
        let d = distance(&q, &moved).unwrap();
        assert!((d - 0.7 * 5.0).abs() < 1e-12);
    }

    #[test]
    fn dilation_rules() {
        let q = p(2.0, -1.0, 7.0);
        assert_eq!(q.horizontal_dilation(1.0).unwrap(), q);
        assert_eq!(q.horizontal_dilation(0.0).unwrap(), p(0.0, 0.0, 7.0));
        assert!(q.horizontal_dilation(-0.5).is_err());
        let composed = q
            .horizontal_dilation(0.4)
            .unwrap()
            .horizontal_dilation(3.0 / 0.4)
            .unwrap();
        assert!(composed.approx_eq(&q.horizontal_dilation(3.0).unwrap(), 1e-12));
    }

    #[test]
    fn projections_of_unit_points() {
        let line = VerticalLine::planar(1.0, 1.0);
        assert_eq!(p(1.0, 0.0, 0.0).vertical_project(&line).unwrap(), p(1.0, 1.0, -2.0));
        assert_eq!(p(0.0, 1.0, 0.0).vertical_project(&line).unwrap(), p(1.0, 1.0, 2.0));
        let on = p(1.0, 1.0, 3.5);
        assert_eq!(on.vertical_project(&line).unwrap(), on);
    }

    #[test]
    fn alignment_examples() {
        let o = HeisenbergPoint::origin(1);
        assert!(horizontally_aligned(&o, &p(2.5, 0.0, 0.0)).unwrap());
        assert!(!horizontally_aligned(&o, &p(0.0, 0.0, 1.0)).unwrap());
        assert!(!horizontally_aligned(&p(1.0, 0.0, 0.0), &p(0.0, 1.0, 0.0)).unwrap());
        let q = p(1.0, -2.0, 0.5);
        let far = q
            .right_translate_horizontal(&HorizontalVector::planar(0.3, 0.9), 11.0)
            .unwrap();
        assert!(horizontally_aligned(&q, &far).unwrap());
    }

    #[test]
    fn hyperplane_examples() {
        let h = separating_hyperplane(&HeisenbergPoint::origin(1), &p(1.0, 0.0, 1.0)).unwrap();
        assert_eq!(h.normal, vec![0.0, 1.0]);
        assert_eq!(h.offset, 0.5);
        assert!(!h.is_degenerate());
        assert!(h.contains(&VerticalLine::planar(17.0, 0.5), 1e-12));

        let v = separating_hyperplane(&p(1.0, 1.0, 0.0), &p(1.0, 1.0, 2.0)).unwrap();
        assert!(v.is_degenerate());
        assert!(v.offset != 0.0);
        assert!(!v.contains(&VerticalLine::planar(0.0, 0.0), 1e9));

        assert!(separating_hyperplane(&p(1.0, 1.0, 1.0), &p(1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn validation_rejects_bad_points() {
        assert!(HeisenbergPoint::new(vec![], vec![], 0.0).is_err());
        assert!(HeisenbergPoint::new(vec![1.0], vec![1.0, 2.0], 0.0).is_err());
        assert!(HeisenbergPoint::new(vec![f64::NAN], vec![1.0], 0.0).is_err());
        assert!(VerticalLine::new(vec![f64::INFINITY], vec![0.0]).is_err());
    }
}
