//! Exact p-Wasserstein distances between discrete measures of equal mass.
//!
//! The transportation LP with cost `d^p` is solved by [`crate::simplex`], which
//! returns a vertex coupling. Optimality can be certified independently by
//! cyclical monotonicity of the support or by Kantorovich–Rubinstein duality
//! (for `p = 1`).

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::geometry::{distance_unchecked, plane_distance_unchecked, HeisenbergPoint, GEOMETRY_TOL};
use crate::measure::{check_exponent, DiscreteMeasure, MERGE_TOL};
use crate::simplex;

/// Allowed deviation of coupling marginals and of total masses.
pub const MARGINAL_TOL: f64 = 1e-9;

/// Coupling entries at or below this are not part of the support.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Ground metric used by the transport cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GroundCost {
    /// Korányi distance on ℍⁿ.
    #[default]
    Heisenberg,
    /// Euclidean distance between the `(x, y)` parts, ignoring `z`.
    EuclideanPlane,
}

impl GroundCost {
    pub fn distance(self, a: &HeisenbergPoint, b: &HeisenbergPoint) -> f64 {
        match self {
            GroundCost::Heisenberg => distance_unchecked(a, b),
            GroundCost::EuclideanPlane => plane_distance_unchecked(a, b),
        }
    }

    pub fn cost(self, a: &HeisenbergPoint, b: &HeisenbergPoint, p: f64) -> f64 {
        self.distance(a, b).powf(p)
    }
}

/// Nonnegative mass matrix with prescribed marginals.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    source: DiscreteMeasure,
    target: DiscreteMeasure,
    mass: Vec<f64>,
}

impl Coupling {
    /// Validates nonnegativity and both marginals to [`MARGINAL_TOL`].
    pub fn new(source: DiscreteMeasure, target: DiscreteMeasure, mass: Vec<Vec<f64>>) -> Result<Self> {
        if mass.len() != source.len() || mass.iter().any(|row| row.len() != target.len()) {
            return usage(format!("coupling matrix must be {}×{}", source.len(), target.len()));
        }
        let c = Coupling {
            source,
            target,
            mass: mass.into_iter().flatten().collect(),
        };
        if c.mass.iter().any(|m| !m.is_finite() || *m < 0.0) {
            return usage("coupling entries must be finite and nonnegative");
        }
        let excess = c.marginal_excess();
        if excess > MARGINAL_TOL {
            return Err(Error::MarginalViolation { excess });
        }
        Ok(c)
    }

    pub(crate) fn from_flat(source: DiscreteMeasure, target: DiscreteMeasure, mass: Vec<f64>) -> Self {
        debug_assert_eq!(mass.len(), source.len() * target.len());
        Coupling { source, target, mass }
    }

    /// The independent coupling `μ ⊗ ν / |ν|`.
    pub fn product(source: &DiscreteMeasure, target: &DiscreteMeasure) -> Result<Self> {
        let total = target.total_mass();
        if total <= 0.0 {
            return usage("product coupling needs a target with positive mass");
        }
        let mass = source
            .weights()
            .flat_map(|a| target.weights().map(move |b| a * b / total))
            .collect();
        Ok(Coupling::from_flat(source.clone(), target.clone(), mass))
    }

    /// `(Id × Id)_# μ`.
    pub fn identity(mu: &DiscreteMeasure) -> Self {
        let n = mu.len();
        let mut mass = vec![0.0; n * n];
        for (i, w) in mu.weights().enumerate() {
            mass[i * n + i] = w;
        }
        Coupling::from_flat(mu.clone(), mu.clone(), mass)
    }

    pub fn source(&self) -> &DiscreteMeasure {
        &self.source
    }

    pub fn target(&self) -> &DiscreteMeasure {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.source.len()
    }

    pub fn cols(&self) -> usize {
        self.target.len()
    }

    pub fn mass(&self, i: usize, j: usize) -> f64 {
        self.mass[i * self.cols() + j]
    }

    /// Entries above [`SUPPORT_TOL`] as `(row, column, mass)`, row-major.
    pub fn support(&self) -> Vec<(usize, usize, f64)> {
        let cols = self.cols();
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > SUPPORT_TOL)
            .map(|(idx, m)| (idx / cols, idx % cols, *m))
            .collect()
    }

    /// Largest absolute deviation of a row or column sum from its marginal.
    pub fn marginal_excess(&self) -> f64 {
        let cols = self.cols();
        let rows = self.source.weights().enumerate().map(|(i, w)| {
            let s: f64 = self.mass[i * cols..(i + 1) * cols].iter().sum();
            (s - w).abs()
        });
        let columns = self.target.weights().enumerate().map(|(j, w)| {
            let s: f64 = (0..self.rows()).map(|i| self.mass[i * cols + j]).sum();
            (s - w).abs()
        });
        rows.chain(columns).fold(0.0, f64::max)
    }

    /// Whether every row has exactly one support entry, i.e. the coupling is `(Id × T)_# μ`.
    pub fn is_map_induced(&self) -> bool {
        let support = self.support();
        (0..self.rows()).all(|i| support.iter().filter(|(r, _, _)| *r == i).count() == 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransportResult {
    pub p: f64,
    /// `Σ Π_ij d(qᵢ, q'ⱼ)^p` at the optimum.
    pub cost_p: f64,
    /// `cost_p^{1/p}`.
    pub distance: f64,
    pub coupling: Coupling,
    /// Dual potentials `u, v` with `uᵢ + vⱼ ≤ d(qᵢ, q'ⱼ)^p`, tight on the support.
    pub potentials: (Vec<f64>, Vec<f64>),
}

impl TransportResult {
    /// `Σ μᵢ uᵢ + Σ νⱼ vⱼ`; equals `cost_p` at an optimum.
    pub fn dual_value(&self) -> f64 {
        let (u, v) = &self.potentials;
        let src: f64 = self.coupling.source.weights().zip(u).map(|(w, x)| w * x).sum();
        let dst: f64 = self.coupling.target.weights().zip(v).map(|(w, x)| w * x).sum();
        src + dst
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serialization is infallible")
    }
}

#[derive(Serialize)]
struct PlanEntry {
    i: usize,
    j: usize,
    m: f64,
}

impl Serialize for TransportResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let plan: Vec<PlanEntry> = self
            .coupling
            .support()
            .into_iter()
            .map(|(i, j, m)| PlanEntry { i, j, m })
            .collect();
        let mut s = serializer.serialize_struct("TransportResult", 4)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("cost_p", &self.cost_p)?;
        s.serialize_field("distance", &self.distance)?;
        s.serialize_field("plan", &plan)?;
        s.end()
    }
}

/// Exact optimal transport between two measures of equal total mass.
pub fn solve_wp(mu: &DiscreteMeasure, nu: &DiscreteMeasure, p: f64, ground: GroundCost) -> Result<TransportResult> {
    check_exponent(p)?;
    mu.check_dim(nu.dim())?;
    let (ms, mt) = (mu.total_mass(), nu.total_mass());
    if (ms - mt).abs() > MARGINAL_TOL {
        return Err(Error::MassMismatch {
            source_mass: ms,
            target_mass: mt,
        });
    }
    if mu.is_empty() || nu.is_empty() {
        return Ok(TransportResult {
            p,
            cost_p: 0.0,
            distance: 0.0,
            coupling: Coupling::from_flat(mu.clone(), nu.clone(), Vec::new()),
            potentials: (Vec::new(), Vec::new()),
        });
    }
    let cost = cost_matrix(mu, nu, p, ground);
    let supply: Vec<f64> = mu.weights().collect();
    // Rescale the demand so both sides balance in floating point.
    let demand: Vec<f64> = nu.weights().map(|w| w * ms / mt).collect();
    let solution = simplex::solve(&supply, &demand, &cost)?;
    let cost_p: f64 = solution
        .flow
        .iter()
        .zip(&cost)
        .map(|(f, c)| f * c)
        .sum::<f64>()
        .max(0.0);
    Ok(TransportResult {
        p,
        cost_p,
        distance: cost_p.powf(1.0 / p),
        coupling: Coupling::from_flat(mu.clone(), nu.clone(), solution.flow),
        potentials: (solution.row_potential, solution.col_potential),
    })
}

/// `W_p` for the Korányi ground metric.
pub fn wasserstein(mu: &DiscreteMeasure, nu: &DiscreteMeasure, p: f64) -> Result<f64> {
    Ok(solve_wp(mu, nu, p, GroundCost::Heisenberg)?.distance)
}

pub(crate) fn cost_matrix(mu: &DiscreteMeasure, nu: &DiscreteMeasure, p: f64, ground: GroundCost) -> Vec<f64> {
    mu.points()
        .flat_map(|a| nu.points().map(move |b| ground.cost(a, b, p)))
        .collect()
}

/// `Σ Π_ij d(qᵢ, q'ⱼ)^p` for a valid coupling.
pub fn coupling_cost(coupling: &Coupling, p: f64, ground: GroundCost) -> Result<f64> {
    check_exponent(p)?;
    let excess = coupling.marginal_excess();
    if excess > MARGINAL_TOL {
        return Err(Error::MarginalViolation { excess });
    }
    let cols = coupling.cols();
    Ok(coupling
        .source
        .points()
        .enumerate()
        .flat_map(|(i, a)| {
            coupling
                .target
                .points()
                .enumerate()
                .map(move |(j, b)| (i * cols + j, a, b))
        })
        .filter(|(idx, _, _)| coupling.mass[*idx] > 0.0)
        .map(|(idx, a, b)| coupling.mass[idx] * ground.cost(a, b, p))
        .sum())
}

/// Outcome of a cyclical-monotonicity check.
#[derive(Clone, Debug, PartialEq)]
pub enum CycleCertificate {
    Monotone,
    /// Support pairs `(row, column)` in cycle order; reassigning each source to
    /// the next pair's target lowers the cost by `slack`.
    Violation {
        cycle: Vec<(usize, usize)>,
        slack: f64,
    },
}

impl CycleCertificate {
    pub fn is_monotone(&self) -> bool {
        matches!(self, CycleCertificate::Monotone)
    }
}

/// Checks `Σ c(qᵢ, q'ᵢ) ≤ Σ c(qᵢ₊₁, q'ᵢ)` over all cycles of at most
/// `max_cycle` support pairs, with the Korányi cost `d^p`.
pub fn cyclically_monotone(coupling: &Coupling, p: f64, max_cycle: usize) -> CycleCertificate {
    cyclically_monotone_with(coupling, p, GroundCost::Heisenberg, max_cycle)
}

pub fn cyclically_monotone_with(coupling: &Coupling, p: f64, ground: GroundCost, max_cycle: usize) -> CycleCertificate {
    let pairs: Vec<(usize, usize)> = coupling.support().into_iter().map(|(i, j, _)| (i, j)).collect();
    let src: Vec<&HeisenbergPoint> = coupling.source.points().collect();
    let dst: Vec<&HeisenbergPoint> = coupling.target.points().collect();
    let cost = |i: usize, j: usize| ground.cost(src[i], dst[j], p);
    let longest = max_cycle.min(pairs.len());

    let mut cycle = Vec::with_capacity(longest);
    let mut used = vec![false; pairs.len()];
    for len in 2..=longest {
        // Canonical rotation: the first pair has the smallest index in the cycle.
        for start in 0..pairs.len() {
            cycle.clear();
            cycle.push(start);
            used[start] = true;
            let found = search_cycles(&pairs, &cost, len, start, &mut cycle, &mut used);
            used[start] = false;
            if let Some(cert) = found {
                return cert;
            }
        }
    }
    CycleCertificate::Monotone
}

fn search_cycles(
    pairs: &[(usize, usize)],
    cost: &dyn Fn(usize, usize) -> f64,
    len: usize,
    start: usize,
    cycle: &mut Vec<usize>,
    used: &mut [bool],
) -> Option<CycleCertificate> {
    if cycle.len() == len {
        let (mut current, mut shifted) = (0.0, 0.0);
        for (k, &idx) in cycle.iter().enumerate() {
            let (i, j) = pairs[idx];
            let (next_i, _) = pairs[cycle[(k + 1) % len]];
            current += cost(i, j);
            shifted += cost(next_i, j);
        }
        let slack = current - shifted;
        if slack > 1e-9 * current.max(1.0) {
            return Some(CycleCertificate::Violation {
                cycle: cycle.iter().map(|&idx| pairs[idx]).collect(),
                slack,
            });
        }
        return None;
    }
    for next in start + 1..pairs.len() {
        if used[next] {
            continue;
        }
        used[next] = true;
        cycle.push(next);
        let found = search_cycles(pairs, cost, len, start, cycle, used);
        cycle.pop();
        used[next] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapOptimalityReport {
    /// `Σ w d(q, f(q))^p`.
    pub map_cost: f64,
    /// Optimal cost between `μ` and `f_# μ`.
    pub lp_cost: f64,
    pub gap: f64,
}

/// Compares the cost of transporting `μ` along `f` with the LP optimum
/// between `μ` and `f_# μ`. A gap of zero certifies that `f` is an optimal map.
pub fn verify_map_optimality<F>(mu: &DiscreteMeasure, f: F, p: f64) -> Result<MapOptimalityReport>
where
    F: Fn(&HeisenbergPoint) -> Result<HeisenbergPoint>,
{
    verify_map_optimality_with(mu, f, p, GroundCost::Heisenberg)
}

pub fn verify_map_optimality_with<F>(
    mu: &DiscreteMeasure,
    f: F,
    p: f64,
    ground: GroundCost,
) -> Result<MapOptimalityReport>
where
    F: Fn(&HeisenbergPoint) -> Result<HeisenbergPoint>,
{
    check_exponent(p)?;
    mu.require_probability()?;
    let mut map_cost = 0.0;
    for a in mu.atoms() {
        let image = f(&a.point)?;
        mu.check_dim(image.dim())?;
        map_cost += a.weight * ground.cost(&a.point, &image, p);
    }
    let target = mu.try_push_forward(&f)?;
    let lp_cost = solve_wp(mu, &target, p, ground)?.cost_p;
    Ok(MapOptimalityReport {
        map_cost,
        lp_cost,
        gap: map_cost - lp_cost,
    })
}

/// `∫ f d(ν − μ)` for a test function `f` that is 1-Lipschitz on the union of supports.
pub fn kr_dual_value<F>(f: F, mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<f64>
where
    F: Fn(&HeisenbergPoint) -> f64,
{
    mu.check_dim(nu.dim())?;
    let (ms, mt) = (mu.total_mass(), nu.total_mass());
    if (ms - mt).abs() > MARGINAL_TOL {
        return Err(Error::MassMismatch {
            source_mass: ms,
            target_mass: mt,
        });
    }
    let mut union: Vec<&HeisenbergPoint> = Vec::new();
    for q in mu.points().chain(nu.points()) {
        if !union.iter().any(|u| u.approx_eq(q, MERGE_TOL)) {
            union.push(q);
        }
    }
    let values: Vec<f64> = union.iter().map(|q| f(q)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("test function value"));
    }
    for a in 0..union.len() {
        for b in a + 1..union.len() {
            let excess = (values[a] - values[b]).abs() - distance_unchecked(union[a], union[b]);
            if excess > GEOMETRY_TOL {
                return Err(Error::LipschitzViolation {
                    first: a,
                    second: b,
                    excess,
                });
            }
        }
    }
    let integrate = |m: &DiscreteMeasure| -> f64 { m.atoms().iter().map(|a| a.weight * f(&a.point)).sum() };
    Ok(integrate(nu) - integrate(mu))
}

/// Composes `Π₁ ∈ C(μ, ξ)` and `Π₂ ∈ C(ξ, ν)` into a coupling of `μ` and `ν`
/// by disintegrating along the shared marginal `ξ`.
pub fn glue(first: &Coupling, second: &Coupling) -> Result<Coupling> {
    if !first.target.approx_eq(&second.source, MERGE_TOL) {
        return usage("glued couplings must share the middle marginal");
    }
    let (rows, mid, cols) = (first.rows(), first.cols(), second.cols());
    let middle: Vec<f64> = first.target.weights().collect();
    let mut mass = vec![0.0; rows * cols];
    for i in 0..rows {
        for j in 0..mid {
            let a = first.mass(i, j);
            if a == 0.0 {
                continue;
            }
            for k in 0..cols {
                mass[i * cols + k] += a * second.mass(j, k) / middle[j];
            }
        }
    }
    Ok(Coupling::from_flat(first.source.clone(), second.target.clone(), mass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{distance, HorizontalVector};

    fn p(x: f64, y: f64, z: f64) -> HeisenbergPoint {
        HeisenbergPoint::planar(x, y, z)
    }

    #[test]
    fn diracs_give_ground_distance() {
        let a = p(0.2, -1.0, 3.0);
        let b = p(-0.5, 0.4, -1.0);
        for pp in [1.0, 2.0, 3.5] {
            let r = solve_wp(
                &DiscreteMeasure::dirac(a.clone()),
                &DiscreteMeasure::dirac(b.clone()),
                pp,
                GroundCost::Heisenberg,
            )
            .unwrap();
            assert!((r.distance - distance(&a, &b).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn solver_errors() {
        let a = DiscreteMeasure::dirac(p(0.0, 0.0, 0.0));
        let half = a.scale(0.5).unwrap();
        assert!(matches!(
            solve_wp(&a, &half, 1.0, GroundCost::Heisenberg),
            Err(Error::MassMismatch { .. })
        ));
        assert!(solve_wp(&a, &a, 0.9, GroundCost::Heisenberg).is_err());
        let b = DiscreteMeasure::dirac(HeisenbergPoint::origin(2));
        assert!(matches!(
            solve_wp(&a, &b, 1.0, GroundCost::Heisenberg),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn translation_closed_form() {
        let mu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 0.0), p(1.0, 2.0, -1.0), p(-0.5, 0.3, 2.0)]).unwrap();
        let u = HorizontalVector::planar(0.6, -0.8);
        let nu = mu
            .push_forward(|q| q.right_translate_horizontal(&u, 1.5).unwrap())
            .unwrap();
        for pp in [1.0, 2.0, 4.0] {
            let d = wasserstein(&mu, &nu, pp).unwrap();
            assert!((d - 1.5).abs() < 1e-10, "p={pp} d={d}");
        }
    }

    #[test]
    fn coupling_costs() {
        let mu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 0.0), p(1.0, 2.0, -1.0)]).unwrap();
        assert_eq!(
            coupling_cost(&Coupling::identity(&mu), 2.0, GroundCost::Heisenberg).unwrap(),
            0.0
        );
        let a = p(1.0, 0.0, 0.0);
        let b = p(0.0, 0.0, 4.0);
        let prod = Coupling::product(&DiscreteMeasure::dirac(a.clone()), &DiscreteMeasure::dirac(b.clone())).unwrap();
        let c = coupling_cost(&prod, 3.0, GroundCost::Heisenberg).unwrap();
        assert!((c - distance(&a, &b).unwrap().powi(3)).abs() < 1e-12);

        let nu = DiscreteMeasure::uniform(vec![p(3.0, 0.0, 0.0), p(0.0, 0.0, 4.0)]).unwrap();
        let opt = solve_wp(&mu, &nu, 2.0, GroundCost::Heisenberg).unwrap();
        let prod = Coupling::product(&mu, &nu).unwrap();
        assert!(coupling_cost(&prod, 2.0, GroundCost::Heisenberg).unwrap() >= opt.cost_p - 1e-12);
        assert!((coupling_cost(&opt.coupling, 2.0, GroundCost::Heisenberg).unwrap() - opt.cost_p).abs() < 1e-12);
    }

    #[test]
    fn coupling_validation() {
        let mu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 0.0), p(1.0, 0.0, 0.0)]).unwrap();
        let bad = Coupling::new(mu.clone(), mu.clone(), vec![vec![0.5, 0.1], vec![0.0, 0.5]]);
        assert!(matches!(bad, Err(Error::MarginalViolation { .. })));
        let neg = Coupling::new(mu.clone(), mu.clone(), vec![vec![0.6, -0.1], vec![-0.1, 0.6]]);
        assert!(neg.is_err());
        assert!(Coupling::new(mu.clone(), mu, vec![vec![0.5, 0.0], vec![0.0, 0.5]]).is_ok());
    }

    #[test]
    fn swapped_assignment_violates_two_cycle() {
        // points on a horizontal line: optimal is the monotone matching
        let mu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 0.0), p(1.0, 0.0, 0.0)]).unwrap();
        let nu = DiscreteMeasure::uniform(vec![p(2.0, 0.0, 0.0), p(3.0, 0.0, 0.0)]).unwrap();
        let opt = solve_wp(&mu, &nu, 2.0, GroundCost::Heisenberg).unwrap();
        assert!(cyclically_monotone(&opt.coupling, 2.0, 4).is_monotone());
        let swapped = Coupling::new(mu, nu, vec![vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        match cyclically_monotone(&swapped, 2.0, 4) {
            CycleCertificate::Violation { cycle, slack } => {
                assert_eq!(cycle.len(), 2);
                // (0→3)² + (1→2)² − (0→2)² − (1→3)² = 9 + 1 − 4 − 4 = 2, times mass per pair 1
                assert!((slack - 2.0).abs() < 1e-12);
            }
            CycleCertificate::Monotone => panic!("swap must be detected"),
        }
    }

    #[test]
    fn single_pair_is_vacuously_monotone() {
        let c = Coupling::product(
            &DiscreteMeasure::dirac(p(0.0, 0.0, 0.0)),
            &DiscreteMeasure::dirac(p(5.0, 1.0, 2.0)),
        )
        .unwrap();
        assert!(cyclically_monotone(&c, 2.0, 4).is_monotone());
    }

    #[test]
    fn dual_examples() {
        let mu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 0.0), p(1.0, 0.0, 1.0)]).unwrap();
        let nu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 0.0), p(0.0, 0.0, 9.0)]).unwrap();
        assert_eq!(kr_dual_value(|_| 3.0, &mu, &nu).unwrap(), 0.0);
        let q = p(1.0, 0.0, 1.0);
        let q2 = p(0.0, 0.0, 9.0);
        let value = kr_dual_value(|z| distance(&q, z).unwrap(), &mu, &nu).unwrap();
        let w1 = wasserstein(&mu, &nu, 1.0).unwrap();
        assert!((value - 0.5 * distance(&q, &q2).unwrap()).abs() < 1e-12);
        assert!((value - w1).abs() < 1e-12);
        let err = kr_dual_value(|z| 10.0 * z.z, &mu, &nu);
        assert!(matches!(err, Err(Error::LipschitzViolation { .. })));
    }

    #[test]
    fn strong_duality() {
        let mu = DiscreteMeasure::uniform(vec![p(0.0, 0.0, 0.0), p(1.0, 2.0, -1.0), p(-0.5, 0.3, 2.0)]).unwrap();
        let nu = DiscreteMeasure::new(vec![
            (p(1.0, 1.0, 1.0), 0.5),
            (p(-2.0, 0.0, 0.5), 0.25),
            (p(0.0, 0.0, -3.0), 0.25),
        ])
        .unwrap();
        let r = solve_wp(&mu, &nu, 2.0, GroundCost::Heisenberg).unwrap();
        assert!((r.dual_value() - r.cost_p).abs() < 1e-10);
        let (u, v) = &r.potentials;
        for (i, a) in mu.points().enumerate() {
            for (j, b) in nu.points().enumerate() {
                assert!(u[i] + v[j] <= distance(a, b).unwrap().powi(2) + 1e-10);
            }
        }
    }

    #[test]
    fn result_json_layout() {
        let a = DiscreteMeasure::dirac(p(0.0, 0.0, 0.0));
        let b = DiscreteMeasure::dirac(p(0.0, 0.0, 4.0));
        let r = solve_wp(&a, &b, 2.0, GroundCost::Heisenberg).unwrap();
        assert_eq!(
            r.to_json(),
            r#"{"p":2.0,"cost_p":4.0,"distance":2.0,"plan":[{"i":0,"j":0,"m":1.0}]}"#
        );
    }
}
