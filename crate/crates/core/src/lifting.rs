//! Lifting maps of ℝ²ⁿ to maps of ℍⁿ.
//!
//! A plane map `T = (T₁, T₂)` lifts to
//! `T̂(x, y, z) = (T₁, T₂, z + 2(y·T₁ − x·T₂))`. The lift moves each point along
//! a horizontal segment, so `d_H(q, T̂q) = |πq − T(πq)|` and optimality of `T`
//! for the projected measures carries over to `T̂`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::geometry::{dot, HeisenbergPoint};
use crate::measure::{DiscreteMeasure, MERGE_TOL};
use crate::transport::{solve_wp, verify_map_optimality, verify_map_optimality_with, Coupling, GroundCost};

type PlaneFn = Arc<dyn Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync>;

/// A map of ℝ²ⁿ, with points written as `(x, y)`.
#[derive(Clone)]
pub enum PlaneMap {
    /// `(x, y) ↦ (x, y) + offset`.
    Translation(Vec<f64>),
    /// `(x, y) ↦ λ(x, y)`.
    Dilation(f64),
    /// Defined only on the listed points, matched to [`MERGE_TOL`].
    Lookup(Vec<(Vec<f64>, Vec<f64>)>),
    Custom(PlaneFn),
}

impl fmt::Debug for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneMap::Translation(v) => f.debug_tuple("Translation").field(v).finish(),
            PlaneMap::Dilation(l) => f.debug_tuple("Dilation").field(l).finish(),
            PlaneMap::Lookup(t) => f.debug_tuple("Lookup").field(t).finish(),
            PlaneMap::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LookupEntry {
    from: Vec<f64>,
    to: Vec<f64>,
}

impl PlaneMap {
    pub fn identity() -> Self {
        PlaneMap::Dilation(1.0)
    }

    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync + 'static,
    {
        PlaneMap::Custom(Arc::new(f))
    }

    pub fn apply(&self, xy: &[f64]) -> Result<Vec<f64>> {
        let out = match self {
            PlaneMap::Translation(offset) => {
                if offset.len() != xy.len() {
                    return Err(Error::DimensionMismatch {
                        left: xy.len(),
                        right: offset.len(),
                    });
                }
                xy.iter().zip(offset).map(|(a, b)| a + b).collect()
            }
            PlaneMap::Dilation(lambda) => xy.iter().map(|a| lambda * a).collect(),
            PlaneMap::Lookup(table) => table
                .iter()
                .find(|(from, _)| {
                    from.len() == xy.len() && from.iter().zip(xy).all(|(a, b)| (a - b).abs() <= MERGE_TOL)
                })
                .map(|(_, to)| to.clone())
                .ok_or_else(|| Error::Usage(format!("plane map is undefined at {xy:?}")))?,
            PlaneMap::Custom(f) => f(xy)?,
        };
        if out.len() != xy.len() {
            return Err(Error::DimensionMismatch {
                left: xy.len(),
                right: out.len(),
            });
        }
        if out.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("plane map value"));
        }
        Ok(out)
    }

    /// Lookup table JSON: `[{"from": [x…, y…], "to": [x…, y…]}, …]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<LookupEntry> = serde_json::from_str(text)?;
        let Some(first) = entries.first() else {
            return Err(Error::Parse("plane map needs at least one entry".into()));
        };
        let len = first.from.len();
        if len == 0 || len % 2 != 0 {
            return Err(Error::Parse(
                "plane points need an even, positive number of coordinates".into(),
            ));
        }
        for e in &entries {
            if e.from.len() != len || e.to.len() != len {
                return Err(Error::Parse("plane map entries disagree in length".into()));
            }
            if e.from.iter().chain(&e.to).any(|c| !c.is_finite()) {
                return Err(Error::NonFinite("plane map entry"));
            }
        }
        Ok(PlaneMap::Lookup(entries.into_iter().map(|e| (e.from, e.to)).collect()))
    }

    /// JSON for lookup tables; other kinds have no serialized form.
    pub fn to_json(&self) -> Result<String> {
        let PlaneMap::Lookup(table) = self else {
            return usage("only lookup plane maps serialize");
        };
        let entries: Vec<LookupEntry> = table
            .iter()
            .map(|(from, to)| LookupEntry {
                from: from.clone(),
                to: to.clone(),
            })
            .collect();
        Ok(serde_json::to_string(&entries)?)
    }

    /// The map as a point map on plane-tagged points `(x, y, 0)`.
    fn on_plane_point(&self, q: &HeisenbergPoint) -> Result<HeisenbergPoint> {
        let image = self.apply(&q.plane_coords())?;
        Ok(plane_point(&image))
    }
}

fn plane_point(xy: &[f64]) -> HeisenbergPoint {
    let n = xy.len() / 2;
    HeisenbergPoint {
        x: xy[..n].to_vec(),
        y: xy[n..].to_vec(),
        z: 0.0,
    }
}

/// `π_# μ` stored as points `(x, y, 0)`; use it with [`GroundCost::EuclideanPlane`].
pub fn plane_projection_measure(mu: &DiscreteMeasure) -> DiscreteMeasure {
    let dim = mu.dim();
    let raw = mu
        .atoms()
        .iter()
        .map(|a| (plane_point(&a.point.plane_coords()), a.weight))
        .collect();
    DiscreteMeasure::merged(dim, raw)
}

/// The lift `T̂` of a plane map.
#[derive(Clone, Debug)]
pub struct LiftedMap {
    plane: PlaneMap,
}

impl LiftedMap {
    pub fn plane_map(&self) -> &PlaneMap {
        &self.plane
    }

    pub fn apply(&self, q: &HeisenbergPoint) -> Result<HeisenbergPoint> {
        let n = q.dim();
        let image = self.plane.apply(&q.plane_coords())?;
        let (t1, t2) = image.split_at(n);
        Ok(HeisenbergPoint {
            x: t1.to_vec(),
            y: t2.to_vec(),
            z: q.z + 2.0 * (dot(&q.y, t1) - dot(&q.x, t2)),
        })
    }
}

pub fn lift_map(plane: PlaneMap) -> LiftedMap {
    LiftedMap { plane }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftCertificate {
    /// Optimality gap of `T` between `π_# ν` and `T_# π_# ν` for the Euclidean cost.
    pub plane_gap: f64,
    /// Optimality gap of `T̂` between `ν` and `T̂_# ν` for the Korányi cost.
    pub lifted_gap: f64,
    /// `Σ w |π qᵢ − T(π qᵢ)|^p`.
    pub plane_map_cost: f64,
    /// `Σ w d_H(qᵢ, T̂ qᵢ)^p`; equals `plane_map_cost` up to rounding.
    pub lifted_map_cost: f64,
}

/// Compares the optimality of `T` on the plane with that of its lift on ℍⁿ.
pub fn certify_lift(nu: &DiscreteMeasure, plane: &PlaneMap, p: f64) -> Result<LiftCertificate> {
    let projected = plane_projection_measure(nu);
    let plane_report =
        verify_map_optimality_with(&projected, |q| plane.on_plane_point(q), p, GroundCost::EuclideanPlane)?;
    let lifted = lift_map(plane.clone());
    let lifted_report = verify_map_optimality(nu, |q| lifted.apply(q), p)?;
    Ok(LiftCertificate {
        plane_gap: plane_report.gap,
        lifted_gap: lifted_report.gap,
        plane_map_cost: plane_report.map_cost,
        lifted_map_cost: lifted_report.map_cost,
    })
}

/// Reads a coupling with one support entry per row as a lookup plane map.
pub fn plane_vertex_map(coupling: &Coupling) -> Result<PlaneMap> {
    if !coupling.is_map_induced() {
        return Err(Error::NotInducedByMap);
    }
    let src = coupling.source().atoms();
    let dst = coupling.target().atoms();
    Ok(PlaneMap::Lookup(
        coupling
            .support()
            .into_iter()
            .map(|(i, j, _)| (src[i].point.plane_coords(), dst[j].point.plane_coords()))
            .collect(),
    ))
}

/// An optimal plane map from `π_# μ` to `π_# ν`, read off an LP vertex.
pub fn optimal_plane_map(mu: &DiscreteMeasure, nu: &DiscreteMeasure, p: f64) -> Result<PlaneMap> {
    let plan = solve_wp(
        &plane_projection_measure(mu),
        &plane_projection_measure(nu),
        p,
        GroundCost::EuclideanPlane,
    )?;
    plane_vertex_map(&plan.coupling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::HorizontalVector;

    fn p(x: f64, y: f64, z: f64) -> HeisenbergPoint {
        HeisenbergPoint::planar(x, y, z)
    }

    #[test]
    fn plane_projection_merges_vertical_atoms() {
        let mu = DiscreteMeasure::uniform(vec![p(1.0, 0.0, 3.0), p(1.0, 0.0, -3.0)]).unwrap();
        assert_eq!(plane_projection_measure(&mu), DiscreteMeasure::dirac(p(1.0, 0.0, 0.0)));
        let d = DiscreteMeasure::dirac(p(0.4, -2.0, 7.0));
        assert_eq!(plane_projection_measure(&d), DiscreteMeasure::dirac(p(0.4, -2.0, 0.0)));
    }

    #[test]
    fn lifts_of_simple_maps() {
        let q = HeisenbergPoint::new(vec![0.3, -1.0], vec![2.0, 0.5], 1.25).unwrap();
        assert_eq!(lift_map(PlaneMap::identity()).apply(&q).unwrap(), q);

        let lambda = 2.5;
        let dilated = lift_map(PlaneMap::Dilation(lambda)).apply(&q).unwrap();
        assert!(dilated.approx_eq(&q.horizontal_dilation(lambda).unwrap(), 1e-12));

        let u = HorizontalVector::new(vec![0.7, 0.1], vec![-0.2, 1.3]).unwrap();
        let offset: Vec<f64> = u.u.iter().chain(&u.v).copied().collect();
        let translated = lift_map(PlaneMap::Translation(offset)).apply(&q).unwrap();
        assert!(translated.approx_eq(&q.right_translate_horizontal(&u, 1.0).unwrap(), 1e-12));
    }

    #[test]
    fn identity_and_translation_certify() {
        let nu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 1.0), p(1.0, 2.0, -1.0), p(-0.5, 0.3, 2.0)]).unwrap();
        let id = certify_lift(&nu, &PlaneMap::identity(), 2.0).unwrap();
        assert_eq!((id.plane_gap, id.lifted_gap), (0.0, 0.0));
        let shift = certify_lift(&nu, &PlaneMap::Translation(vec![1.5, -0.5]), 3.0).unwrap();
        assert!(shift.plane_gap.abs() <= 1e-8 && shift.lifted_gap.abs() <= 1e-8);
        assert!((shift.plane_map_cost - shift.lifted_map_cost).abs() <= 1e-12 * shift.plane_map_cost);
    }

    #[test]
    fn swapped_lookup_is_not_optimal() {
        let nu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 0.0), p(1.0, 0.0, 0.0)]).unwrap();
        let swap = PlaneMap::Lookup(vec![(vec![0.0, 0.0], vec![3.0, 0.0]), (vec![1.0, 0.0], vec![2.0, 0.0])]);
        let cert = certify_lift(&nu, &swap, 2.0).unwrap();
        assert!(cert.plane_gap > 0.1);
    }

    #[test]
    fn vertex_maps() {
        let mu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 0.0), p(1.0, 1.0, 2.0)]).unwrap();
        let nu = DiscreteMeasure::uniform(vec![p(3.0, 0.0, 5.0), p(0.0, 2.0, -1.0)]).unwrap();
        let map = optimal_plane_map(&mu, &nu, 2.0).unwrap();
        let cert = certify_lift(&mu, &map, 2.0).unwrap();
        assert!(cert.plane_gap.abs() <= 1e-8 && cert.lifted_gap.abs() <= 1e-8);

        let split = Coupling::product(&DiscreteMeasure::dirac(p(0.0, 0.0, 0.0)), &nu).unwrap();
        assert!(matches!(plane_vertex_map(&split), Err(Error::NotInducedByMap)));
    }

    #[test]
    fn lookup_json_round_trip() {
        let text = r#"[{"from":[0.0,1.0],"to":[2.0,3.0]}]"#;
        let map = PlaneMap::from_json(text).unwrap();
        assert_eq!(map.to_json().unwrap(), text);
        assert_eq!(map.apply(&[0.0, 1.0]).unwrap(), vec![2.0, 3.0]);
        assert!(map.apply(&[5.0, 1.0]).is_err());
        assert!(PlaneMap::from_json(r#"[{"from":[0.0],"to":[2.0]}]"#).is_err());
        assert!(PlaneMap::from_json("[]").is_err());
    }
}
