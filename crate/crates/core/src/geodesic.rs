//! Geodesic curves in the Wasserstein space over ℍⁿ.
//!
//! Curves are pure evaluators `t ↦ γ(t)` together with a declared constant
//! speed, so [`verify_unit_speed`] can certify them against the exact LP.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::geometry::{horizontally_aligned, HeisenbergPoint, HorizontalVector};
use crate::measure::{check_exponent, common_part, jordan_decomposition, DiscreteMeasure, MERGE_TOL};
use crate::transport::{solve_wp, wasserstein, GroundCost};

/// Slack allowed when checking that a parameter lies in a curve's domain.
const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    RightTranslation,
    DilationRay,
    LinearW1,
    Branch,
    Custom,
}

/// One affine piece `fixed + (1 − s)·from + s·to`, with `s` running from 0 at `t0` to 1 at `t1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchLeg {
    pub t0: f64,
    pub t1: f64,
    pub fixed: DiscreteMeasure,
    pub from: DiscreteMeasure,
    pub to: DiscreteMeasure,
}

type Evaluator = Arc<dyn Fn(f64) -> Result<DiscreteMeasure> + Send + Sync>;

#[derive(Clone)]
enum Params {
    RightTranslation {
        base: DiscreteMeasure,
        u: HorizontalVector,
    },
    DilationRay {
        base: DiscreteMeasure,
    },
    LinearW1 {
        mu: DiscreteMeasure,
        nu: DiscreteMeasure,
        length: f64,
    },
    Branch {
        legs: Vec<BranchLeg>,
    },
    Custom(Evaluator),
}

/// A constant-speed curve of measures. Infinite domain ends are unbounded.
#[derive(Clone)]
pub struct GeodesicCurve {
    params: Params,
    domain: (f64, f64),
    speed: f64,
    p: f64,
}

impl fmt::Debug for GeodesicCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeodesicCurve")
            .field("kind", &self.kind())
            .field("domain", &self.domain)
            .field("speed", &self.speed)
            .field("p", &self.p)
            .finish()
    }
}

impl GeodesicCurve {
    /// A curve from an arbitrary evaluator, e.g. for negative controls.
    pub fn custom<F>(domain: (f64, f64), speed: f64, p: f64, evaluator: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<DiscreteMeasure> + Send + Sync + 'static,
    {
        check_exponent(p)?;
        if !(domain.0 < domain.1) || !(speed >= 0.0) {
            return usage("custom curve needs a nonempty domain and nonnegative speed");
        }
        Ok(GeodesicCurve {
            params: Params::Custom(Arc::new(evaluator)),
            domain,
            speed,
            p,
        })
    }

    pub fn kind(&self) -> CurveKind {
        match self.params {
            Params::RightTranslation { .. } => CurveKind::RightTranslation,
            Params::DilationRay { .. } => CurveKind::DilationRay,
            Params::LinearW1 { .. } => CurveKind::LinearW1,
            Params::Branch { .. } => CurveKind::Branch,
            Params::Custom(_) => CurveKind::Custom,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    /// Exponent of the Wasserstein metric the speed refers to.
    pub fn exponent(&self) -> f64 {
        self.p
    }

    /// Pieces of a branch geodesic; empty for other kinds.
    pub fn legs(&self) -> &[BranchLeg] {
        match &self.params {
            Params::Branch { legs } => legs,
            _ => &[],
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.domain.0 - DOMAIN_SLACK && t <= self.domain.1 + DOMAIN_SLACK
    }

    pub fn evaluate(&self, t: f64) -> Result<DiscreteMeasure> {
        if !t.is_finite() || !self.contains(t) {
            return Err(Error::OutOfDomain { t0: t, t1: t });
        }
        let t = t.clamp(self.domain.0, self.domain.1);
        match &self.params {
            Params::RightTranslation { base, u } => base.try_push_forward(|q| q.right_translate_horizontal(u, t)),
            Params::DilationRay { base } => base.try_push_forward(|q| q.horizontal_dilation(t)),
            Params::LinearW1 { mu, nu, length } => {
                let s = t / length;
                DiscreteMeasure::combination(&[(1.0 - s, mu), (s, nu)])
            }
            Params::Branch { legs } => {
                let leg = legs
                    .iter()
                    .find(|leg| t <= leg.t1)
                    .unwrap_or_else(|| legs.last().expect("branch curves have legs"));
                let s = ((t - leg.t0) / (leg.t1 - leg.t0)).clamp(0.0, 1.0);
                DiscreteMeasure::combination(&[(1.0, &leg.fixed), (1.0 - s, &leg.from), (s, &leg.to)])
            }
            Params::Custom(f) => f(t),
        }
    }

    /// A finite window of the domain used for sampling; unbounded ends are cut at length 4.
    pub fn sampling_window(&self) -> (f64, f64) {
        match (self.domain.0.is_finite(), self.domain.1.is_finite()) {
            (true, true) => self.domain,
            (true, false) => (self.domain.0, self.domain.0 + 4.0),
            (false, true) => (self.domain.1 - 4.0, self.domain.1),
            (false, false) => (-2.0, 2.0),
        }
    }
}

/// `t ↦ (T̂_{tU})_# μ` over ℝ, with speed `‖U‖` in every `W_p`.
pub fn right_translation_curve(mu: &DiscreteMeasure, u: &HorizontalVector, p: f64) -> Result<GeodesicCurve> {
    check_exponent(p)?;
    mu.require_probability()?;
    mu.check_dim(u.dim())?;
    if u.is_zero() {
        return usage("degenerate: constant curve");
    }
    Ok(GeodesicCurve {
        params: Params::RightTranslation {
            base: mu.clone(),
            u: u.clone(),
        },
        domain: (f64::NEG_INFINITY, f64::INFINITY),
        speed: u.norm(),
        p,
    })
}

/// `λ ↦ (D̂_λ)_# μ` over `[0, ∞)`, with speed `(∫‖(x, y)‖^p dμ)^{1/p}`.
pub fn dilation_ray(mu: &DiscreteMeasure, p: f64) -> Result<GeodesicCurve> {
    check_exponent(p)?;
    mu.require_probability()?;
    if mu.vertical_support_line().is_some() {
        return usage("vertically supported measure: the dilation ray is not a geodesic through it");
    }
    let speed = mu.horizontal_p_moment(p)?.powf(1.0 / p);
    Ok(GeodesicCurve {
        params: Params::DilationRay { base: mu.clone() },
        domain: (0.0, f64::INFINITY),
        speed,
        p,
    })
}

/// `t ↦ (1 − t/T)μ + (t/T)ν` on `[0, T]`, `T = W₁(μ, ν)`.
pub fn linear_interpolation(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<GeodesicCurve> {
    mu.require_probability()?;
    nu.require_probability()?;
    let length = wasserstein(mu, nu, 1.0)?;
    if length == 0.0 || mu.approx_eq(nu, MERGE_TOL) {
        return usage("linear interpolation needs distinct endpoints");
    }
    Ok(GeodesicCurve {
        params: Params::LinearW1 {
            mu: mu.clone(),
            nu: nu.clone(),
            length,
        },
        domain: (0.0, length),
        speed: 1.0,
        p: 1.0,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpeedReport {
    /// `max |W_p(γ(s), γ(t)) − speed·|s − t||` over sampled pairs.
    pub max_deviation: f64,
    pub pairs: usize,
    pub pass: bool,
}

/// Checks `W_p(γ(s), γ(t)) = speed·|s − t|` on all pairs of `samples`
/// equally spaced parameters in [`GeodesicCurve::sampling_window`].
pub fn verify_unit_speed(curve: &GeodesicCurve, samples: usize, tol: f64) -> Result<SpeedReport> {
    if samples < 2 {
        return usage("speed verification needs at least 2 samples");
    }
    let (a, b) = curve.sampling_window();
    let ts: Vec<f64> = (0..samples)
        .map(|k| a + (b - a) * k as f64 / (samples - 1) as f64)
        .collect();
    let slices = ts.iter().map(|t| curve.evaluate(*t)).collect::<Result<Vec<_>>>()?;
    let mut max_deviation = 0.0f64;
    let mut pairs = 0;
    for i in 0..samples {
        for j in i + 1..samples {
            let d = solve_wp(&slices[i], &slices[j], curve.p, GroundCost::Heisenberg)?.distance;
            max_deviation = max_deviation.max((d - curve.speed * (ts[j] - ts[i]).abs()).abs());
            pairs += 1;
        }
    }
    Ok(SpeedReport {
        max_deviation,
        pairs,
        pass: max_deviation <= tol,
    })
}

/// `μ = η + cδ_q`, `ν = η + cδ_{q'}` with `q, q'` not on a common horizontal line.
#[derive(Clone, Debug, PartialEq)]
pub struct W1Decomposition {
    pub eta: DiscreteMeasure,
    pub c: f64,
    pub q: HeisenbergPoint,
    pub q2: HeisenbergPoint,
}

/// Splits `μ − ν` into `cδ_q − cδ_{q'}` if it has that shape.
fn single_atom_difference(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<Option<W1Decomposition>> {
    mu.require_probability()?;
    nu.require_probability()?;
    mu.check_dim(nu.dim())?;
    let parts = jordan_decomposition(mu, nu)?;
    if parts.positive_part.is_empty() && parts.negative_part.is_empty() {
        return usage("the two measures coincide");
    }
    let (pos, neg) = (parts.positive_part.atoms(), parts.negative_part.atoms());
    if pos.len() != 1 || neg.len() != 1 {
        return Ok(None);
    }
    Ok(Some(W1Decomposition {
        eta: common_part(mu, nu)?,
        c: pos[0].weight,
        q: pos[0].point.clone(),
        q2: neg[0].point.clone(),
    }))
}

/// The decomposition witnessing that the linear interpolation is the only
/// `W₁` geodesic from `μ` to `ν`; `None` when other geodesics exist.
pub fn unique_w1_geodesic(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<Option<W1Decomposition>> {
    match single_atom_difference(mu, nu)? {
        Some(dec) if !horizontally_aligned(&dec.q, &dec.q2)? => Ok(Some(dec)),
        _ => Ok(None),
    }
}

/// Unit-speed `W₁` geodesics from `μ` to `ν` that differ from the linear interpolation.
///
/// For `μ − ν = c(δ_q − δ_{q'})` with `q, q'` horizontally aligned this is one
/// curve through `η + cδ_z`, `z` the midpoint of the horizontal segment.
/// Otherwise the positive part is split at its lexicographically first atom
/// (or the negative part, if the positive part is a single atom) and the two
/// pieces are transported in either order.
pub fn branch_geodesics(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<Vec<GeodesicCurve>> {
    if let Some(dec) = single_atom_difference(mu, nu)? {
        if !horizontally_aligned(&dec.q, &dec.q2)? {
            return usage("the pair is joined by a unique W1 geodesic");
        }
        return Ok(vec![via_point_curve(&dec)?]);
    }
    let parts = jordan_decomposition(mu, nu)?;
    let first = if parts.positive_part.len() > 1 {
        &parts.positive_part.atoms()[0].point
    } else {
        &parts.negative_part.atoms()[0].point
    };
    let split = |q: &HeisenbergPoint| q.approx_eq(first, MERGE_TOL);
    branch_geodesics_with_split(mu, nu, split)
}

fn via_point_curve(dec: &W1Decomposition) -> Result<GeodesicCurve> {
    // q2 = q ∗ U with U horizontal; the midpoint of the segment is q ∗ (U/2).
    let rel = dec.q.inv().mul(&dec.q2)?;
    let half = HorizontalVector {
        u: rel.x.clone(),
        v: rel.y.clone(),
    };
    let z = dec.q.right_translate_horizontal(&half, 0.5)?;
    let total = dec.c * crate::geometry::distance(&dec.q, &dec.q2)?;
    let first_leg = dec.c * crate::geometry::distance(&dec.q, &z)?;
    let at = |q: &HeisenbergPoint| DiscreteMeasure::dirac(q.clone()).scale(dec.c);
    let legs = vec![
        BranchLeg {
            t0: 0.0,
            t1: first_leg,
            fixed: dec.eta.clone(),
            from: at(&dec.q)?,
            to: at(&z)?,
        },
        BranchLeg {
            t0: first_leg,
            t1: total,
            fixed: dec.eta.clone(),
            from: at(&z)?,
            to: at(&dec.q2)?,
        },
    ];
    Ok(branch_curve(legs, total))
}

fn branch_curve(legs: Vec<BranchLeg>, total: f64) -> GeodesicCurve {
    GeodesicCurve {
        params: Params::Branch { legs },
        domain: (0.0, total),
        speed: 1.0,
        p: 1.0,
    }
}

/// The two-order construction with an explicit support split `S`, given as a
/// predicate on atoms of the part being split. `S` must carry a proper,
/// nonzero fraction of that part's mass.
pub fn branch_geodesics_with_split<S>(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    in_split: S,
) -> Result<Vec<GeodesicCurve>>
where
    S: Fn(&HeisenbergPoint) -> bool,
{
    mu.require_probability()?;
    nu.require_probability()?;
    let parts = jordan_decomposition(mu, nu)?;
    let eta = common_part(mu, nu)?;
    let (mu_p, nu_p) = (parts.positive_part, parts.negative_part);
    if mu_p.is_empty() {
        return usage("the two measures coincide");
    }
    // Split whichever side has more than one atom; transport runs μ′ → ν′ regardless.
    let split_target = mu_p.len() == 1;
    let (split_side, other_side) = if split_target { (&nu_p, &mu_p) } else { (&mu_p, &nu_p) };
    let inside: Vec<bool> = split_side.points().map(in_split).collect();
    let mass_in: f64 = split_side
        .weights()
        .zip(&inside)
        .filter(|(_, s)| **s)
        .map(|(w, _)| w)
        .sum();
    let total_mass = split_side.total_mass();
    if !(mass_in > MERGE_TOL && mass_in < total_mass - MERGE_TOL) {
        return usage("split set S must satisfy 0 < μ′(S) < μ′(X)");
    }

    // Optimal coupling between the split side and the other side.
    let plan = solve_wp(split_side, other_side, 1.0, GroundCost::Heisenberg)?.coupling;
    let mut side1 = Vec::new();
    let mut side2 = Vec::new();
    let mut induced1 = Vec::new();
    let mut induced2 = Vec::new();
    for (i, j, m) in plan.support() {
        let a = split_side.atoms()[i].point.clone();
        let b = other_side.atoms()[j].point.clone();
        if inside[i] {
            side1.push((a, m));
            induced1.push((b, m));
        } else {
            side2.push((a, m));
            induced2.push((b, m));
        }
    }
    let dim = mu.dim();
    let build = |raw: Vec<(HeisenbergPoint, f64)>| DiscreteMeasure::merged(dim, raw);
    let (s1, s2, o1, o2) = (build(side1), build(side2), build(induced1), build(induced2));
    let (mu1, nu1, mu2, nu2) = if split_target {
        (o1, s1, o2, s2)
    } else {
        (s1, o1, s2, o2)
    };

    let t_first = solve_wp(&mu1, &nu1, 1.0, GroundCost::Heisenberg)?.cost_p;
    let t_second = solve_wp(&mu2, &nu2, 1.0, GroundCost::Heisenberg)?.cost_p;
    let total = t_first + t_second;
    let plus = |a: &DiscreteMeasure, b: &DiscreteMeasure| DiscreteMeasure::combination(&[(1.0, a), (1.0, b)]);

    let gamma1 = vec![
        BranchLeg {
            t0: 0.0,
            t1: t_first,
            fixed: plus(&eta, &mu2)?,
            from: mu1.clone(),
            to: nu1.clone(),
        },
        BranchLeg {
            t0: t_first,
            t1: total,
            fixed: plus(&eta, &nu1)?,
            from: mu2.clone(),
            to: nu2.clone(),
        },
    ];
    let gamma2 = vec![
        BranchLeg {
            t0: 0.0,
            t1: t_second,
            fixed: plus(&eta, &mu1)?,
            from: mu2,
            to: nu2.clone(),
        },
        BranchLeg {
            t0: t_second,
            t1: total,
            fixed: plus(&eta, &nu2)?,
            from: mu1,
            to: nu1,
        },
    ];
    Ok(vec![branch_curve(gamma1, total), branch_curve(gamma2, total)])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MidpointSearchReport {
    pub trials: usize,
    /// Candidates other than the linear midpoint that reached both half distances.
    pub successes: usize,
    /// Smallest `W₁(μ, ξ) + W₁(ξ, ν) − T` plus ratio error over the candidates.
    pub min_defect: f64,
    /// Whether the linear midpoint itself satisfies both half distances.
    pub linear_midpoint_ok: bool,
}

/// Randomized attempt to find a midpoint of `μ, ν` in `W₁` other than the
/// linear one. For uniquely geodesic pairs every attempt must fail; this is
/// statistical evidence, not a proof.
pub fn adversarial_midpoint_search(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    trials: usize,
    seed: u64,
) -> Result<MidpointSearchReport> {
    const TOL: f64 = 1e-9;
    let total = wasserstein(mu, nu, 1.0)?;
    let half = 0.5 * total;
    let midpoint = DiscreteMeasure::combination(&[(0.5, mu), (0.5, nu)])?;
    let defect = |xi: &DiscreteMeasure| -> Result<(f64, f64)> {
        let a = wasserstein(mu, xi, 1.0)?;
        let b = wasserstein(xi, nu, 1.0)?;
        Ok((a + b - total, (a - half).abs().max((b - half).abs())))
    };
    let (sum0, ratio0) = defect(&midpoint)?;
    let linear_midpoint_ok = sum0.abs() <= TOL && ratio0 <= TOL;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support: Vec<HeisenbergPoint> = mu.points().chain(nu.points()).cloned().collect();
    let scale = support.iter().map(|q| q.koranyi_norm()).fold(1.0f64, f64::max);
    let decomposition = single_atom_difference(mu, nu)?;

    let mut successes = 0;
    let mut min_defect = f64::INFINITY;
    for trial in 0..trials {
        let candidate = match (trial % 3, &decomposition) {
            // Reweight the two moving atoms away from the linear ratio.
            (0, Some(dec)) => {
                let alpha = dec.c * rng.random_range(0.0..1.0);
                let moved =
                    DiscreteMeasure::merged(mu.dim(), vec![(dec.q.clone(), alpha), (dec.q2.clone(), dec.c - alpha)]);
                DiscreteMeasure::combination(&[(1.0, &dec.eta), (1.0, &moved)])?
            }
            // Send the moving mass through a random intermediate point.
            (1, Some(dec)) => {
                let z = perturbed(&dec.q, &dec.q2, scale, &mut rng);
                let moved = DiscreteMeasure::dirac(z).scale(dec.c)?;
                DiscreteMeasure::combination(&[(1.0, &dec.eta), (1.0, &moved)])?
            }
            // Mix the linear midpoint with a random measure on perturbed support points.
            _ => {
                let eps = rng.random_range(0.01..0.5);
                let k = 1 + rng.random_range(0..support.len().max(1));
                let pts: Vec<HeisenbergPoint> = (0..k)
                    .map(|_| {
                        let a = &support[rng.random_range(0..support.len())];
                        let b = &support[rng.random_range(0..support.len())];
                        perturbed(a, b, scale, &mut rng)
                    })
                    .collect();
                let noise = DiscreteMeasure::uniform(pts)?;
                DiscreteMeasure::combination(&[(1.0 - eps, &midpoint), (eps, &noise)])?
            }
        };
        if candidate.approx_eq(&midpoint, 1e-12) {
            continue;
        }
        let (sum, ratio) = defect(&candidate)?;
        min_defect = min_defect.min(sum.max(0.0) + ratio);
        if sum.abs() <= TOL && ratio <= TOL {
            successes += 1;
        }
    }
    Ok(MidpointSearchReport {
        trials,
        successes,
        min_defect,
        linear_midpoint_ok,
    })
}

/// A random point near the Euclidean segment between `a` and `b`.
fn perturbed(a: &HeisenbergPoint, b: &HeisenbergPoint, scale: f64, rng: &mut ChaCha8Rng) -> HeisenbergPoint {
    let s: f64 = rng.random_range(0.0..1.0);
    let jitter = 0.1 * scale;
    let mix = |p: f64, q: f64, rng: &mut ChaCha8Rng| (1.0 - s) * p + s * q + jitter * rng.random_range(-1.0..1.0);
    HeisenbergPoint {
        x: a.x.iter().zip(&b.x).map(|(p, q)| mix(*p, *q, rng)).collect(),
        y: a.y.iter().zip(&b.y).map(|(p, q)| mix(*p, *q, rng)).collect(),
        z: mix(a.z, b.z, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> HeisenbergPoint {
        HeisenbergPoint::planar(x, y, z)
    }

    fn half_half(a: HeisenbergPoint, b: HeisenbergPoint) -> DiscreteMeasure {
        DiscreteMeasure::new(vec![(a, 0.5), (b, 0.5)]).unwrap()
    }

    #[test]
    fn right_translation_of_dirac() {
        let mu = DiscreteMeasure::dirac(p(0.0, 0.0, 0.0));
        let g = right_translation_curve(&mu, &HorizontalVector::planar(1.0, 0.0), 2.0).unwrap();
        assert_eq!(g.evaluate(0.0).unwrap(), mu);
        assert_eq!(g.evaluate(1.5).unwrap(), DiscreteMeasure::dirac(p(1.5, 0.0, 0.0)));
        let r = verify_unit_speed(&g, 5, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(right_translation_curve(&mu, &HorizontalVector::planar(0.0, 0.0), 2.0).is_err());
    }

    #[test]
    fn dilation_ray_examples() {
        let mu = half_half(p(1.0, 0.0, 0.0), p(0.0, 1.0, 5.0));
        let g = dilation_ray(&mu, 2.0).unwrap();
        assert!((g.speed() - 1.0).abs() < 1e-15);
        assert!(g.evaluate(0.0).unwrap().is_on_axis());
        assert_eq!(g.evaluate(1.0).unwrap(), mu);
        assert!(verify_unit_speed(&g, 5, 1e-9).unwrap().pass);

        let vertical = half_half(p(0.3, 0.1, 0.0), p(0.3, 0.1, 2.0));
        assert!(dilation_ray(&vertical, 2.0).is_err());
    }

    #[test]
    fn linear_midpoint_on_vertical_pair() {
        let mu = DiscreteMeasure::dirac(p(0.0, 0.0, 0.0));
        let nu = DiscreteMeasure::dirac(p(0.0, 0.0, 4.0));
        let g = linear_interpolation(&mu, &nu).unwrap();
        assert!((g.domain().1 - 2.0).abs() < 1e-15);
        let mid = g.evaluate(1.0).unwrap();
        assert_eq!(mid, half_half(p(0.0, 0.0, 0.0), p(0.0, 0.0, 4.0)));
        assert!((wasserstein(&mu, &mid, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(linear_interpolation(&mu, &mu).is_err());
        assert!(matches!(g.evaluate(2.5), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn corrupted_evaluator_fails_speed_check() {
        let mu = DiscreteMeasure::dirac(p(0.0, 0.0, 0.0));
        let g = right_translation_curve(&mu, &HorizontalVector::planar(1.0, 0.0), 1.0).unwrap();
        let bad = GeodesicCurve::custom((0.0, 1.0), 1.0, 1.0, move |t| {
            // moves twice as fast as declared
            g.evaluate(2.0 * t)
        })
        .unwrap();
        assert!(!verify_unit_speed(&bad, 4, 1e-8).unwrap().pass);
        let still = GeodesicCurve::custom((0.0, 1.0), 0.0, 1.0, move |_| Ok(mu.clone())).unwrap();
        assert!(verify_unit_speed(&still, 4, 0.0).unwrap().pass);
    }

    #[test]
    fn uniqueness_predicate_examples() {
        let origin = p(0.0, 0.0, 0.0);
        let mu = half_half(origin.clone(), p(0.0, 0.0, 1.0));
        let nu = half_half(origin.clone(), p(0.0, 0.0, 4.0));
        let dec = unique_w1_geodesic(&mu, &nu).unwrap().unwrap();
        assert_eq!(dec.eta, DiscreteMeasure::dirac(origin.clone()).scale(0.5).unwrap());
        assert_eq!(dec.c, 0.5);
        assert_eq!(dec.q, p(0.0, 0.0, 1.0));
        assert_eq!(dec.q2, p(0.0, 0.0, 4.0));

        let a = DiscreteMeasure::dirac(origin.clone());
        assert!(unique_w1_geodesic(&a, &DiscreteMeasure::dirac(p(1.0, 0.0, 0.0)))
            .unwrap()
            .is_none());
        let four = unique_w1_geodesic(
            &half_half(p(0.0, 0.0, 1.0), p(1.0, 0.0, 0.0)),
            &half_half(p(2.0, 1.0, 0.0), p(-1.0, 3.0, 2.0)),
        )
        .unwrap();
        assert!(four.is_none());
        assert!(unique_w1_geodesic(&a, &a).is_err());
    }

    #[test]
    fn aligned_pair_branch_passes_through_midpoint() {
        let mu = DiscreteMeasure::dirac(p(0.0, 0.0, 0.0));
        let nu = DiscreteMeasure::dirac(p(2.0, 0.0, 0.0));
        let curves = branch_geodesics(&mu, &nu).unwrap();
        assert_eq!(curves.len(), 1);
        let g = &curves[0];
        assert!((g.domain().1 - 2.0).abs() < 1e-15);
        assert_eq!(g.evaluate(1.0).unwrap(), DiscreteMeasure::dirac(p(1.0, 0.0, 0.0)));
        assert!(verify_unit_speed(g, 6, 1e-10).unwrap().pass);
        let linear = linear_interpolation(&mu, &nu).unwrap();
        assert_ne!(g.evaluate(1.0).unwrap(), linear.evaluate(1.0).unwrap());
    }

    #[test]
    fn two_order_branches_differ() {
        let mu = half_half(p(0.0, 0.0, 1.0), p(1.0, 0.0, 0.0));
        let nu = half_half(p(0.0, 0.0, 3.0), p(1.0, 0.0, 5.0));
        assert!(unique_w1_geodesic(&mu, &nu).unwrap().is_none());
        let curves = branch_geodesics(&mu, &nu).unwrap();
        assert_eq!(curves.len(), 2);
        let total = wasserstein(&mu, &nu, 1.0).unwrap();
        for g in &curves {
            assert!((g.domain().1 - total).abs() < 1e-12);
            assert!(verify_unit_speed(g, 7, 1e-9).unwrap().pass);
            assert!(g.evaluate(0.0).unwrap().approx_eq(&mu, 1e-12));
            assert!(g.evaluate(total).unwrap().approx_eq(&nu, 1e-12));
        }
        let t = 0.3 * total;
        assert!(!curves[0]
            .evaluate(t)
            .unwrap()
            .approx_eq(&curves[1].evaluate(t).unwrap(), 1e-9));
    }

    #[test]
    fn split_must_be_proper() {
        let mu = half_half(p(0.0, 0.0, 1.0), p(1.0, 0.0, 0.0));
        let nu = half_half(p(0.0, 0.0, 3.0), p(1.0, 0.0, 5.0));
        assert!(branch_geodesics_with_split(&mu, &nu, |_| false).is_err());
        assert!(branch_geodesics_with_split(&mu, &nu, |_| true).is_err());
    }

    #[test]
    fn unique_pair_has_no_branch_and_no_rival_midpoint() {
        let origin = p(0.0, 0.0, 0.0);
        let mu = half_half(origin.clone(), p(0.0, 0.0, 1.0));
        let nu = half_half(origin, p(0.0, 0.0, 4.0));
        assert!(branch_geodesics(&mu, &nu).is_err());
        let report = adversarial_midpoint_search(&mu, &nu, 20, 7).unwrap();
        assert!(report.linear_midpoint_ok);
        assert_eq!(report.successes, 0);
        assert!(report.min_defect > 0.0);
    }
}
