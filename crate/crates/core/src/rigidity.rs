//! Two-point measures on vertical lines and the computations that rule out an
//! exotic isometry of `W₄(ℍⁿ)`.
//!
//! A probability measure with at most two atoms on a vertical line `L` is
//! written `μ_L(m, σ, r)`: mass `e^{−r}/(e^r + e^{−r})` at height `m − σe^r`
//! and mass `e^r/(e^r + e^{−r})` at height `m + σe^{−r}`.

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::geometry::{HeisenbergPoint, HorizontalVector, VerticalLine};
use crate::measure::DiscreteMeasure;
use crate::radon::{project_measure, reconstruct_from_samples, RadonSample};
use crate::transport::{solve_wp, wasserstein, GroundCost};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoPointParams {
    pub line: VerticalLine,
    pub m: f64,
    pub sigma: f64,
    pub r: f64,
}

pub fn two_point_measure(params: &TwoPointParams) -> Result<DiscreteMeasure> {
    let TwoPointParams { line, m, sigma, r } = params;
    line.validate()?;
    if !(m.is_finite() && sigma.is_finite() && r.is_finite()) {
        return Err(Error::NonFinite("two-point parameters"));
    }
    if *sigma < 0.0 {
        return usage(format!("sigma must be nonnegative, got {sigma}"));
    }
    if *sigma == 0.0 {
        return Ok(DiscreteMeasure::dirac(line.point_at(*m)));
    }
    // e^{∓r}/(e^r + e^{−r}) = (1 ∓ tanh r)/2
    let lower = 0.5 * (1.0 - r.tanh());
    let upper = 0.5 * (1.0 + r.tanh());
    let atoms = [
        (line.point_at(m - sigma * r.exp()), lower),
        (line.point_at(m + sigma * (-r).exp()), upper),
    ];
    DiscreteMeasure::new(atoms.into_iter().filter(|a| a.1 > 0.0).collect())
}

/// Inverse of [`two_point_measure`]; `r = 0` when the measure is a Dirac mass.
pub fn two_point_params(mu: &DiscreteMeasure) -> Result<TwoPointParams> {
    mu.require_probability()?;
    let Some(line) = mu.vertical_support_line() else {
        return usage("measure is not vertically supported");
    };
    match mu.atoms() {
        [a] => Ok(TwoPointParams {
            line,
            m: a.point.z,
            sigma: 0.0,
            r: 0.0,
        }),
        [lo, hi] => {
            let r = 0.5 * (hi.weight / lo.weight).ln();
            let sigma = (hi.point.z - lo.point.z) / (r.exp() + (-r).exp());
            Ok(TwoPointParams {
                line,
                m: lo.point.z + sigma * r.exp(),
                sigma,
                r,
            })
        }
        atoms => usage(format!("expected at most two atoms, got {}", atoms.len())),
    }
}

/// `Φ^t`: shifts the shape parameter, `r ↦ r + t`.
pub fn exotic_action(params: &TwoPointParams, t: f64) -> TwoPointParams {
    TwoPointParams {
        r: params.r + t,
        ..params.clone()
    }
}

/// `Φ*`: reflects the shape parameter, `r ↦ −r`.
pub fn shape_flip_action(params: &TwoPointParams) -> TwoPointParams {
    TwoPointParams {
        r: -params.r,
        ..params.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectedTriple {
    pub line: VerticalLine,
    /// `(p_L)_# μ`.
    pub projection: DiscreteMeasure,
    /// The projection after the shape flip.
    pub flipped: DiscreteMeasure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Step4Report {
    pub alpha: f64,
    pub mu: DiscreteMeasure,
    pub projected_triples: Vec<ProjectedTriple>,
    /// The only measure whose projections onto the four lines are the flipped ones.
    pub candidate_image: DiscreteMeasure,
    /// `W₄(μ, δ₀)⁴`.
    pub cost_mu: f64,
    /// `W₄(candidate, δ₀)⁴`.
    pub cost_image: f64,
}

/// Flips the projections of `μ = ((1+α)/2)δ_(1,0,0) + ((1−α)/2)δ_(0,1,0)` onto
/// the lines through `(1,0)`, `(0,1)`, `(1,1)`, rebuilds the measure these
/// projections force, and compares its fourth moment about the origin with
/// that of `μ`. The two differ for every `α ∈ (0, 1)`, while an isometry
/// fixing `δ₀` would have to preserve it.
pub fn step4_certificate(alpha: f64) -> Result<Step4Report> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return usage(format!("alpha must lie in (0, 1), got {alpha}"));
    }
    let mu = DiscreteMeasure::new(vec![
        (HeisenbergPoint::planar(1.0, 0.0, 0.0), (1.0 + alpha) / 2.0),
        (HeisenbergPoint::planar(0.0, 1.0, 0.0), (1.0 - alpha) / 2.0),
    ])?;
    let mut samples = vec![project_measure(&mu, &VerticalLine::axis(1))?];
    let mut triples = Vec::new();
    for (a, b) in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
        let line = VerticalLine::planar(a, b);
        let projection = project_measure(&mu, &line)?.projected;
        let flipped = two_point_measure(&shape_flip_action(&two_point_params(&projection)?))?;
        samples.push(RadonSample {
            line: line.clone(),
            projected: flipped.clone(),
        });
        triples.push(ProjectedTriple {
            line,
            projection,
            flipped,
        });
    }
    let candidate_image = reconstruct_from_samples(&samples)?;
    let origin = DiscreteMeasure::dirac(HeisenbergPoint::origin(1));
    let cost_mu = solve_wp(&mu, &origin, 4.0, GroundCost::Heisenberg)?.cost_p;
    let cost_image = solve_wp(&candidate_image, &origin, 4.0, GroundCost::Heisenberg)?.cost_p;
    Ok(Step4Report {
        alpha,
        mu,
        projected_triples: triples,
        candidate_image,
        cost_mu,
        cost_image,
    })
}

/// `W_p(μ₁, (T̂_U)_# μ₂) − W_p(μ₁, μ₂)` for measures on the `0z`-axis.
pub fn vertical_translation_gap(
    mu1: &DiscreteMeasure,
    mu2: &DiscreteMeasure,
    u: &HorizontalVector,
    p: f64,
) -> Result<f64> {
    if !mu1.is_on_axis() || !mu2.is_on_axis() {
        return usage("both measures must be supported on the 0z-axis");
    }
    let shifted = mu2.try_push_forward(|q| q.right_translate_horizontal(u, 1.0))?;
    Ok(wasserstein(mu1, &shifted, p)? - wasserstein(mu1, mu2, p)?)
}

/// The line `y₁ = x₁ + offset` in the `(x₁, y₁)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiagonalLine {
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SPlusMinus {
    pub r: f64,
    /// `{y₁ = x₁ − e^r} ∪ {y₁ = x₁ + e^{−r}}`.
    pub s_plus: [DiagonalLine; 2],
    /// `{y₁ = x₁ + e^r} ∪ {y₁ = x₁ − e^{−r}}`.
    pub s_minus: [DiagonalLine; 2],
    /// The two unions share no line, which holds exactly when `r ≠ 0`.
    pub disjoint: bool,
}

/// Constraints on the support of `Φ^r(μ)` in the plane `z = 0`, for
/// `μ = ½(δ_(1,0,0) + δ_(0,1,0))`, read off its projections onto the lines
/// through `(1,1)` (giving `S₊`) and `(−1,−1)` (giving `S₋`).
pub fn s_plus_minus_sets(r: f64) -> Result<SPlusMinus> {
    if !r.is_finite() {
        return Err(Error::NonFinite("shape parameter"));
    }
    let (e, inv) = (r.exp(), (-r).exp());
    Ok(SPlusMinus {
        r,
        s_plus: [DiagonalLine { offset: -e }, DiagonalLine { offset: inv }],
        s_minus: [DiagonalLine { offset: e }, DiagonalLine { offset: -inv }],
        disjoint: r != 0.0,
    })
}
