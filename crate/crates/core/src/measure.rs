//! Finitely supported nonnegative measures on ℍⁿ.
//!
//! Atoms closer than [`MERGE_TOL`] coordinatewise are merged on construction
//! and kept in lexicographic order, so equal measures have identical atom
//! lists and serialize to identical bytes.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::geometry::{distance_unchecked, HeisenbergPoint, VerticalLine};

/// Coordinatewise tolerance under which two atoms are the same point.
pub const MERGE_TOL: f64 = 1e-12;

/// Allowed deviation of the total mass from 1 for a probability measure.
pub const PROBABILITY_TOL: f64 = 1e-12;

/// Signed weights of magnitude at most this are treated as cancelled.
pub const CANCEL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub point: HeisenbergPoint,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureWire", into = "MeasureWire")]
pub struct DiscreteMeasure {
    dim: usize,
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    /// Builds a measure from `(point, weight)` pairs, merging duplicates.
    pub fn new(atoms: Vec<(HeisenbergPoint, f64)>) -> Result<Self> {
        let Some(first) = atoms.first() else {
            return usage("a measure needs at least one atom");
        };
        let dim = first.0.dim();
        for (point, weight) in &atoms {
            point.validate()?;
            if point.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: point.dim(),
                });
            }
            if !weight.is_finite() {
                return Err(Error::NonFinite("atom weight"));
            }
            if *weight <= 0.0 {
                return usage(format!("atom weights must be positive, got {weight}"));
            }
        }
        Ok(Self::merged(dim, atoms))
    }

    pub fn dirac(point: HeisenbergPoint) -> Self {
        DiscreteMeasure {
            dim: point.dim(),
            atoms: vec![Atom { point, weight: 1.0 }],
        }
    }

    /// Uniform probability measure on the given points.
    pub fn uniform(points: Vec<HeisenbergPoint>) -> Result<Self> {
        let w = 1.0 / points.len() as f64;
        Self::new(points.into_iter().map(|q| (q, w)).collect())
    }

    /// The zero measure. Only meaningful as a sentinel, e.g. an empty part of
    /// a [`SignedDecomposition`]; probability operations reject it.
    pub fn zero(dim: usize) -> Self {
        DiscreteMeasure { dim, atoms: Vec::new() }
    }

    /// Merge and sort without re-validating. Zero weights are dropped.
    pub(crate) fn merged(dim: usize, raw: Vec<(HeisenbergPoint, f64)>) -> Self {
        let mut raw = raw;
        raw.sort_by(|a, b| a.0.lex_cmp(&b.0));
        let mut atoms: Vec<Atom> = Vec::with_capacity(raw.len());
        for (point, weight) in raw {
            if weight == 0.0 {
                continue;
            }
            match atoms.iter_mut().find(|a| a.point.approx_eq(&point, MERGE_TOL)) {
                Some(a) => a.weight += weight,
                None => atoms.push(Atom { point, weight }),
            }
        }
        atoms.sort_by(|a, b| a.point.lex_cmp(&b.point));
        DiscreteMeasure { dim, atoms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &HeisenbergPoint> {
        self.atoms.iter().map(|a| &a.point)
    }

    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.atoms.iter().map(|a| a.weight)
    }

    pub fn total_mass(&self) -> f64 {
        self.weights().sum()
    }

    pub fn is_probability(&self) -> bool {
        !self.is_empty() && (self.total_mass() - 1.0).abs() <= PROBABILITY_TOL
    }

    pub(crate) fn require_probability(&self) -> Result<()> {
        if self.is_probability() {
            Ok(())
        } else {
            usage(format!(
                "expected a probability measure, total mass is {}",
                self.total_mass()
            ))
        }
    }

    /// Weight carried by atoms within [`MERGE_TOL`] of `q`.
    pub fn mass_at(&self, q: &HeisenbergPoint) -> f64 {
        self.atoms
            .iter()
            .filter(|a| a.point.approx_eq(q, MERGE_TOL))
            .map(|a| a.weight)
            .sum()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self.len() == other.len()
            && self
                .atoms
                .iter()
                .zip(&other.atoms)
                .all(|(a, b)| a.point.approx_eq(&b.point, tol) && (a.weight - b.weight).abs() <= tol)
    }

    /// Image measure under `f`, merging atoms that collide.
    pub fn push_forward<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&HeisenbergPoint) -> HeisenbergPoint,
    {
        self.try_push_forward(|q| Ok(f(q)))
    }

    pub fn try_push_forward<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&HeisenbergPoint) -> Result<HeisenbergPoint>,
    {
        let mut raw = Vec::with_capacity(self.len());
        let mut dim = None;
        for a in &self.atoms {
            let image = f(&a.point)?;
            if !image.is_finite() {
                return Err(Error::NonFinite("push-forward image"));
            }
            match dim {
                None => dim = Some(image.dim()),
                Some(d) if d != image.dim() => {
                    return Err(Error::DimensionMismatch {
                        left: d,
                        right: image.dim(),
                    })
                }
                _ => {}
            }
            raw.push((image, a.weight));
        }
        Ok(Self::merged(dim.unwrap_or(self.dim), raw))
    }

    /// `Σ wᵢ d(qᵢ, q̂)^p`, the p-th power of the Wasserstein distance to `δ_q̂`.
    pub fn p_cost_to_point(&self, qhat: &HeisenbergPoint, p: f64) -> Result<f64> {
        check_exponent(p)?;
        self.require_probability()?;
        self.check_dim(qhat.dim())?;
        Ok(self
            .atoms
            .iter()
            .map(|a| a.weight * distance_unchecked(&a.point, qhat).powf(p))
            .sum())
    }

    /// `Σ wᵢ ‖(xᵢ, yᵢ)‖^p` with the Euclidean norm on ℝ²ⁿ.
    pub fn horizontal_p_moment(&self, p: f64) -> Result<f64> {
        check_exponent(p)?;
        self.require_probability()?;
        Ok(self
            .atoms
            .iter()
            .map(|a| a.weight * a.point.horizontal_norm().powf(p))
            .sum())
    }

    /// The vertical line containing the support, if there is one.
    pub fn vertical_support_line(&self) -> Option<VerticalLine> {
        let first = self.atoms.first()?;
        if self
            .atoms
            .iter()
            .all(|a| a.point.same_horizontal(&first.point, MERGE_TOL))
        {
            Some(VerticalLine {
                x_tilde: first.point.x.clone(),
                y_tilde: first.point.y.clone(),
            })
        } else {
            None
        }
    }

    pub fn is_on_axis(&self) -> bool {
        self.atoms.iter().all(|a| a.point.horizontal_norm() <= MERGE_TOL)
    }

    /// `Σ cᵢ μᵢ` for nonnegative coefficients; atoms with zero coefficient vanish.
    pub fn combination(terms: &[(f64, &DiscreteMeasure)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return usage("empty combination");
        };
        let dim = first.dim;
        let mut raw = Vec::new();
        for (c, m) in terms {
            m.check_dim(dim)?;
            if !(*c >= 0.0) || !c.is_finite() {
                return usage(format!("combination coefficients must be nonnegative, got {c}"));
            }
            if *c == 0.0 {
                continue;
            }
            raw.extend(m.atoms.iter().map(|a| (a.point.clone(), c * a.weight)));
        }
        Ok(Self::merged(dim, raw))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::combination(&[(1.0, self), (1.0, other)])
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        Self::combination(&[(c, self)])
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: dim,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measure serialization is infallible")
    }
}

/// Positive and negative parts of `μ − ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedDecomposition {
    pub positive_part: DiscreteMeasure,
    pub negative_part: DiscreteMeasure,
}

/// Jordan decomposition of `μ − ν`; cancelled mass below [`CANCEL_TOL`] is dropped.
pub fn jordan_decomposition(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<SignedDecomposition> {
    let diff = signed_difference(mu, nu)?;
    let pos = diff
        .iter()
        .filter(|(_, w)| *w > CANCEL_TOL)
        .map(|(q, w)| (q.clone(), *w))
        .collect();
    let neg = diff
        .iter()
        .filter(|(_, w)| *w < -CANCEL_TOL)
        .map(|(q, w)| (q.clone(), -*w))
        .collect();
    Ok(SignedDecomposition {
        positive_part: DiscreteMeasure::merged(mu.dim, pos),
        negative_part: DiscreteMeasure::merged(mu.dim, neg),
    })
}

/// The common part `min(μ, ν)`, i.e. `μ − (μ − ν)₊`.
pub fn common_part(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<DiscreteMeasure> {
    mu.check_dim(nu.dim)?;
    let raw = mu
        .atoms
        .iter()
        .filter_map(|a| {
            let w = a.weight.min(nu.mass_at(&a.point));
            (w > CANCEL_TOL).then(|| (a.point.clone(), w))
        })
        .collect();
    Ok(DiscreteMeasure::merged(mu.dim, raw))
}

fn signed_difference(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<Vec<(HeisenbergPoint, f64)>> {
    mu.check_dim(nu.dim)?;
    let mut out: Vec<(HeisenbergPoint, f64)> = mu.atoms.iter().map(|a| (a.point.clone(), a.weight)).collect();
    for b in &nu.atoms {
        match out.iter_mut().find(|(q, _)| q.approx_eq(&b.point, MERGE_TOL)) {
            Some((_, w)) => *w -= b.weight,
            None => out.push((b.point.clone(), -b.weight)),
        }
    }
    Ok(out)
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        usage(format!("exponent p must satisfy p ≥ 1, got {p}"))
    }
}

#[derive(Serialize, Deserialize)]
struct MeasureWire {
    dim: usize,
    atoms: Vec<AtomWire>,
}

#[derive(Serialize, Deserialize)]
struct AtomWire {
    x: Vec<f64>,
    y: Vec<f64>,
    z: f64,
    w: f64,
}

impl TryFrom<MeasureWire> for DiscreteMeasure {
    type Error = Error;

    fn try_from(wire: MeasureWire) -> Result<Self> {
        let atoms = wire
            .atoms
            .into_iter()
            .map(|a| (HeisenbergPoint { x: a.x, y: a.y, z: a.z }, a.w))
            .collect();
        let m = DiscreteMeasure::new(atoms)?;
        m.check_dim(wire.dim)?;
        Ok(m)
    }
}

impl From<DiscreteMeasure> for MeasureWire {
    fn from(m: DiscreteMeasure) -> Self {
        MeasureWire {
            dim: m.dim,
            atoms: m
                .atoms
                .into_iter()
                .map(|a| AtomWire {
                    x: a.point.x,
                    y: a.point.y,
                    z: a.point.z,
                    w: a.weight,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::HorizontalVector;

    fn p(x: f64, y: f64, z: f64) -> HeisenbergPoint {
        HeisenbergPoint::planar(x, y, z)
    }

    #[test]
    fn construction_merges_and_orders() {
        let d = DiscreteMeasure::new(vec![(p(0.0, 0.0, 0.0), 1.0)]).unwrap();
        assert_eq!(d.total_mass(), 1.0);
        assert!(d.is_probability());

        let m = DiscreteMeasure::new(vec![(p(0.0, 0.0, 0.0), 0.5), (p(0.0, 0.0, 0.0), 0.5)]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.atoms()[0].weight, 1.0);

        let two = DiscreteMeasure::new(vec![(p(1.0, 0.0, 0.0), 0.3), (p(0.0, 1.0, 0.0), 0.7)]).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.is_probability());
        assert_eq!(two.atoms()[0].point, p(0.0, 1.0, 0.0));
    }

    #[test]
    fn construction_errors() {
        assert!(DiscreteMeasure::new(vec![]).is_err());
        assert!(DiscreteMeasure::new(vec![(p(0.0, 0.0, 0.0), 0.0)]).is_err());
        assert!(DiscreteMeasure::new(vec![(p(0.0, 0.0, 0.0), -1.0)]).is_err());
        assert!(DiscreteMeasure::new(vec![(p(0.0, 0.0, 0.0), 0.5), (HeisenbergPoint::origin(2), 0.5)]).is_err());
    }

    #[test]
    fn push_forward_examples() {
        let mu = DiscreteMeasure::new(vec![(p(1.0, 0.0, 0.0), 0.5), (p(-1.0, 0.0, 0.0), 0.5)]).unwrap();
        assert_eq!(mu.push_forward(|q| q.clone()).unwrap(), mu);
        let collapsed = mu.push_forward(|q| q.horizontal_dilation(0.0).unwrap()).unwrap();
        assert_eq!(collapsed, DiscreteMeasure::dirac(p(0.0, 0.0, 0.0)));

        let u = HorizontalVector::planar(1.0, 2.0);
        let q = p(0.5, 0.5, 1.0);
        let moved = DiscreteMeasure::dirac(q.clone())
            .push_forward(|a| a.right_translate_horizontal(&u, 0.5).unwrap())
            .unwrap();
        assert_eq!(
            moved,
            DiscreteMeasure::dirac(q.right_translate_horizontal(&u, 0.5).unwrap())
        );

        assert!(mu.push_forward(|q| p(q.x[0], f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn cost_to_point() {
        let q = p(0.3, 0.1, -2.0);
        assert_eq!(DiscreteMeasure::dirac(q.clone()).p_cost_to_point(&q, 2.0).unwrap(), 0.0);
        let mu = DiscreteMeasure::uniform(vec![p(1.0, 0.0, 0.0), p(0.0, 1.0, 0.0)]).unwrap();
        let c = mu.p_cost_to_point(&HeisenbergPoint::origin(1), 4.0).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
        let sphere = DiscreteMeasure::uniform(vec![p(1.0, 0.0, 0.0), p(0.0, -1.0, 0.0), p(0.0, 0.0, 1.0)]).unwrap();
        for pp in [1.0, 2.5, 7.0] {
            let c = sphere.p_cost_to_point(&HeisenbergPoint::origin(1), pp).unwrap();
            assert!((c - 1.0).abs() < 1e-15);
        }
        assert!(mu.p_cost_to_point(&HeisenbergPoint::origin(1), 0.5).is_err());
        let half = mu.scale(0.5).unwrap();
        assert!(half.p_cost_to_point(&HeisenbergPoint::origin(1), 1.0).is_err());
    }

    #[test]
    fn horizontal_moment() {
        let axis = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 1.0), p(0.0, 0.0, -3.0)]).unwrap();
        assert_eq!(axis.horizontal_p_moment(2.0).unwrap(), 0.0);
        assert_eq!(
            DiscreteMeasure::dirac(p(1.0, 0.0, 0.0))
                .horizontal_p_moment(3.0)
                .unwrap(),
            1.0
        );
        let m = DiscreteMeasure::uniform(vec![p(2.0, 0.0, 5.0), p(0.0, 0.0, 7.0)]).unwrap();
        assert!((m.horizontal_p_moment(2.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn jordan_examples() {
        let a = p(0.0, 0.0, 0.0);
        let b = p(1.0, 0.0, 0.0);
        let c = p(0.0, 2.0, 1.0);
        let mu = DiscreteMeasure::uniform(vec![a.clone(), b.clone()]).unwrap();
        let same = jordan_decomposition(&mu, &mu).unwrap();
        assert!(same.positive_part.is_empty() && same.negative_part.is_empty());

        let nu = DiscreteMeasure::uniform(vec![a.clone(), c.clone()]).unwrap();
        let d = jordan_decomposition(&mu, &nu).unwrap();
        assert_eq!(d.positive_part, DiscreteMeasure::new(vec![(b, 0.5)]).unwrap());
        assert_eq!(d.negative_part, DiscreteMeasure::new(vec![(c, 0.5)]).unwrap());
        assert_eq!(
            common_part(&mu, &nu).unwrap(),
            DiscreteMeasure::new(vec![(a, 0.5)]).unwrap()
        );
    }

    #[test]
    fn vertical_support() {
        assert_eq!(
            DiscreteMeasure::dirac(p(0.0, 0.0, 3.0)).vertical_support_line(),
            Some(VerticalLine::planar(0.0, 0.0))
        );
        let pair = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 1.0), p(0.0, 0.0, -1.0)]).unwrap();
        assert_eq!(pair.vertical_support_line(), Some(VerticalLine::planar(0.0, 0.0)));
        let spread = DiscreteMeasure::uniform(vec![p(1.0, 0.0, 0.0), p(0.0, 1.0, 0.0)]).unwrap();
        assert_eq!(spread.vertical_support_line(), None);
    }

    #[test]
    fn json_reader_rejects_bad_weights() {
        let ok = r#"{"dim":1,"atoms":[{"x":[1.0],"y":[0.0],"z":0.0,"w":1.0}]}"#;
        let m: DiscreteMeasure = serde_json::from_str(ok).unwrap();
        assert_eq!(m, DiscreteMeasure::dirac(p(1.0, 0.0, 0.0)));
        let zero = r#"{"dim":1,"atoms":[{"x":[1.0],"y":[0.0],"z":0.0,"w":0.0}]}"#;
        assert!(serde_json::from_str::<DiscreteMeasure>(zero).is_err());
        let wrong_dim = r#"{"dim":2,"atoms":[{"x":[1.0],"y":[0.0],"z":0.0,"w":1.0}]}"#;
        assert!(serde_json::from_str::<DiscreteMeasure>(wrong_dim).is_err());
    }
}
