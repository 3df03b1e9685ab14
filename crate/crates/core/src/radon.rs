//! Projections of measures onto vertical lines and reconstruction from them.
//!
//! The projection onto `L_(x̃,ỹ)` sends `(x, y, z)` to height
//! `z + 2(y·x̃ − x·ỹ)`, which is linear in `(x, y, z)` for a fixed line. A
//! finitely supported measure is therefore determined by its projections onto
//! `2n + 1` lines in general position once atoms are matched across lines.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::geometry::{separating_hyperplane, HeisenbergPoint, VerticalLine};
use crate::measure::DiscreteMeasure;

/// Relative margin a generic line keeps from every identification hyperplane.
pub const GENERIC_MARGIN: f64 = 1e-6;

/// Weights closer than this are treated as tied when matching atoms.
pub const WEIGHT_TIE_TOL: f64 = 1e-10;

/// Step of the perturbed lines used to track tied atoms.
pub const PERTURBATION_STEP: f64 = 1e-3;

/// Allowed least-squares residual, relative to `1 + max |height|`.
pub const RESIDUAL_TOL: f64 = 1e-8;

const MAX_GENERIC_DRAWS: usize = 1_000_000;
const MAX_REDRAWS: usize = 64;
const MAX_ATTEMPTS: usize = 8;
const MAX_MATCHINGS: usize = 100_000;

/// A measure on a vertical line, typically the projection of some measure onto it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadonSample {
    pub line: VerticalLine,
    #[serde(rename = "projection")]
    pub projected: DiscreteMeasure,
}

impl RadonSample {
    pub(crate) fn validate(&self) -> Result<()> {
        self.line.validate()?;
        self.projected.check_dim(self.line.dim())?;
        if self.projected.is_empty() {
            return Err(Error::OracleInconsistent("empty projection".into()));
        }
        if !self.projected.points().all(|q| self.line.contains(q, 1e-9)) {
            return Err(Error::OracleInconsistent("projection leaves its line".into()));
        }
        Ok(())
    }

    fn heights(&self) -> Vec<(f64, f64)> {
        self.projected.atoms().iter().map(|a| (a.point.z, a.weight)).collect()
    }
}

/// `(p_L)_# μ` for the metric projection `p_L` onto the vertical line `L`.
pub fn project_measure(mu: &DiscreteMeasure, line: &VerticalLine) -> Result<RadonSample> {
    line.validate()?;
    mu.check_dim(line.dim())?;
    Ok(RadonSample {
        line: line.clone(),
        projected: mu.push_forward(|q| q.project_unchecked(line))?,
    })
}

fn random_line(n: usize, scale: f64, rng: &mut ChaCha8Rng) -> VerticalLine {
    let mut draw = || -> Vec<f64> {
        (0..n)
            .map(|_| scale * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng))
            .collect()
    };
    let x = draw();
    let y = draw();
    VerticalLine { x_tilde: x, y_tilde: y }
}

/// A vertical line on which the given points have pairwise distinct projections,
/// with relative margin [`GENERIC_MARGIN`] from every identification hyperplane.
pub fn generic_line(points: &[HeisenbergPoint], seed: u64) -> Result<VerticalLine> {
    let Some(first) = points.first() else {
        return usage("generic line needs at least one point");
    };
    let n = first.dim();
    let mut hyperplanes = Vec::new();
    for (i, a) in points.iter().enumerate() {
        a.validate()?;
        for b in &points[i + 1..] {
            let h = separating_hyperplane(a, b)?;
            if !h.is_degenerate() {
                hyperplanes.push(h);
            }
        }
    }
    let scale = 1.0
        + points
            .iter()
            .flat_map(|q| q.x.iter().chain(&q.y).chain(std::iter::once(&q.z)))
            .fold(0.0f64, |m, c| m.max(c.abs()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_GENERIC_DRAWS {
        let line = random_line(n, scale, &mut rng);
        if hyperplanes
            .iter()
            .all(|h| h.distance_to(&line) >= GENERIC_MARGIN * scale)
        {
            return Ok(line);
        }
    }
    Err(Error::Solver("no generic line found".into()))
}

/// Least-squares solve of `z + 2(y·x̃ − x·ỹ) = height` over the given lines.
fn solve_point(n: usize, rows: &[(&VerticalLine, f64)]) -> Result<(HeisenbergPoint, f64)> {
    let cols = 2 * n + 1;
    if rows.len() < cols {
        return Err(Error::AmbiguousMatching);
    }
    let a = DMatrix::from_fn(rows.len(), cols, |r, c| {
        let line = rows[r].0;
        if c < n {
            -2.0 * line.y_tilde[c]
        } else if c < 2 * n {
            2.0 * line.x_tilde[c - n]
        } else {
            1.0
        }
    });
    let b = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let largest = sv.max();
    if sv.min() <= 1e-10 * largest.max(1.0) {
        return Err(Error::AmbiguousMatching);
    }
    let sol = svd.solve(&b, 0.0).map_err(|e| Error::Solver(e.to_string()))?;
    let residual = (&a * &sol - &b).amax();
    let point = HeisenbergPoint {
        x: sol.rows(0, n).iter().copied().collect(),
        y: sol.rows(n, n).iter().copied().collect(),
        z: sol[2 * n],
    };
    Ok((point, residual))
}

fn residual_ok(residual: f64, rows: &[(&VerticalLine, f64)]) -> bool {
    let scale = 1.0 + rows.iter().fold(0.0f64, |m, r| m.max(r.1.abs()));
    residual <= RESIDUAL_TOL * scale
}

/// Sorted weights, checked for equality between two samples.
fn same_weights(a: &[(f64, f64)], b: &[(f64, f64)]) -> bool {
    let sorted = |s: &[(f64, f64)]| {
        let mut w: Vec<f64> = s.iter().map(|h| h.1).collect();
        w.sort_by(f64::total_cmp);
        w
    };
    let (wa, wb) = (sorted(a), sorted(b));
    wa.len() == wb.len() && wa.iter().zip(&wb).all(|(x, y)| (x - y).abs() <= WEIGHT_TIE_TOL)
}

/// Indices of `base` atoms grouped by tied weight.
fn weight_groups(base: &[(f64, f64)]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..base.len()).collect();
    order.sort_by(|&i, &j| base[i].1.total_cmp(&base[j].1));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if (base[g[0]].1 - base[i].1).abs() <= WEIGHT_TIE_TOL => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

/// Atoms of `sample` whose weight ties with `w`.
fn atoms_with_weight(sample: &[(f64, f64)], w: f64) -> Vec<usize> {
    (0..sample.len())
        .filter(|&k| (sample[k].1 - w).abs() <= WEIGHT_TIE_TOL)
        .collect()
}

/// Recovers a finitely supported measure from its projection oracle.
///
/// Lines are drawn at random and redrawn when projections collide. Atoms with
/// distinct weights are matched by weight. Tied atoms are tracked through
/// `2n` perturbed copies of a base line, which determines their horizontal
/// coordinates by finite differences; far lines then confirm the match.
pub fn reconstruct<F>(oracle: F, n: usize, max_atoms: usize, seed: u64) -> Result<DiscreteMeasure>
where
    F: Fn(&VerticalLine) -> Result<DiscreteMeasure> + Sync,
{
    if n == 0 || max_atoms == 0 {
        return usage("reconstruction needs n ≥ 1 and max_atoms ≥ 1");
    }
    let query = |line: &VerticalLine| -> Result<RadonSample> {
        let sample = RadonSample {
            line: line.clone(),
            projected: oracle(line)?,
        };
        sample.validate()?;
        Ok(sample)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        match reconstruct_attempt(&query, n, max_atoms, &mut rng) {
            Err(Error::AmbiguousMatching) => continue,
            other => return other,
        }
    }
    Err(Error::AmbiguousMatching)
}

fn reconstruct_attempt<Q>(query: &Q, n: usize, max_atoms: usize, rng: &mut ChaCha8Rng) -> Result<DiscreteMeasure>
where
    Q: Fn(&VerticalLine) -> Result<RadonSample> + Sync,
{
    let lines: Vec<VerticalLine> = (0..2 * n + 2).map(|_| random_line(n, 1.0, rng)).collect();
    let mut samples = lines.par_iter().map(query).collect::<Result<Vec<_>>>()?;

    // A line on which fewer atoms show up has merged projections; redraw it.
    let mut redraws = 0;
    loop {
        let k = samples.iter().map(|s| s.projected.len()).max().unwrap_or(0);
        if k > max_atoms {
            return Err(Error::OracleInconsistent(format!(
                "projection has {k} atoms, more than {max_atoms}"
            )));
        }
        let short: Vec<usize> = (0..samples.len()).filter(|&i| samples[i].projected.len() < k).collect();
        if short.is_empty() {
            break;
        }
        redraws += 1;
        if redraws > MAX_REDRAWS {
            return Err(Error::AmbiguousMatching);
        }
        for i in short {
            samples[i] = query(&random_line(n, 1.0, rng))?;
        }
    }

    let heights: Vec<Vec<(f64, f64)>> = samples.iter().map(RadonSample::heights).collect();
    let base = &heights[0];
    if heights.iter().any(|h| !same_weights(base, h)) {
        return Err(Error::OracleInconsistent("weights differ between lines".into()));
    }
    let groups = weight_groups(base);
    let has_ties = groups.iter().any(|g| g.len() > 1);

    // assignment[s][a] = index in sample s of base atom a
    let mut assignment: Vec<Vec<usize>> = vec![vec![usize::MAX; base.len()]; samples.len()];
    assignment[0] = (0..base.len()).collect();
    for (s, h) in heights.iter().enumerate().skip(1) {
        for g in groups.iter().filter(|g| g.len() == 1) {
            assignment[s][g[0]] = atoms_with_weight(h, base[g[0]].1)[0];
        }
    }

    let mut extra: Vec<(RadonSample, Vec<usize>)> = Vec::new();
    if has_ties {
        let near = track_tied_atoms(query, &samples[0], &groups)?;
        let predicted = &near.predicted;
        for (s, h) in heights.iter().enumerate().skip(1) {
            for g in groups.iter().filter(|g| g.len() > 1) {
                let candidates = atoms_with_weight(h, base[g[0]].1);
                let mut taken = vec![false; h.len()];
                for &a in g {
                    let target = predicted[a].projected_height(&samples[s].line);
                    let best = candidates
                        .iter()
                        .copied()
                        .min_by(|&i, &j| (h[i].0 - target).abs().total_cmp(&(h[j].0 - target).abs()))
                        .expect("tied group present on every line");
                    if taken[best] || (h[best].0 - target).abs() > 1e-6 * (1.0 + target.abs()) {
                        return Err(Error::AmbiguousMatching);
                    }
                    taken[best] = true;
                    assignment[s][a] = best;
                }
            }
        }
        extra = near.samples;
    }

    let mut atoms = Vec::with_capacity(base.len());
    for a in 0..base.len() {
        let mut rows: Vec<(&VerticalLine, f64)> = samples
            .iter()
            .enumerate()
            .map(|(s, sample)| (&sample.line, heights[s][assignment[s][a]].0))
            .collect();
        for (sample, map) in &extra {
            rows.push((&sample.line, sample.projected.atoms()[map[a]].point.z));
        }
        let (point, residual) = solve_point(n, &rows)?;
        if !residual_ok(residual, &rows) {
            return Err(if has_ties {
                Error::AmbiguousMatching
            } else {
                Error::OracleInconsistent(format!(
                    "projections are not consistent with one point (residual {residual:e})"
                ))
            });
        }
        atoms.push((point, base[a].1));
    }
    DiscreteMeasure::new(atoms)
}

struct NearLines {
    /// Perturbed samples with the index of each base atom in them.
    samples: Vec<(RadonSample, Vec<usize>)>,
    /// Points recovered by finite differences, indexed like the base atoms.
    predicted: Vec<HeisenbergPoint>,
}

/// Follows every atom of `base` to `2n` lines moved by [`PERTURBATION_STEP`]
/// along each coordinate. Tied atoms are matched in height order.
fn track_tied_atoms<Q>(query: &Q, base: &RadonSample, groups: &[Vec<usize>]) -> Result<NearLines>
where
    Q: Fn(&VerticalLine) -> Result<RadonSample> + Sync,
{
    let n = base.line.dim();
    let base_h = base.heights();
    let shifted: Vec<VerticalLine> = (0..2 * n)
        .map(|k| {
            let mut coords = base.line.coords();
            coords[k] += PERTURBATION_STEP;
            VerticalLine::from_coords(&coords)
        })
        .collect();
    let near = shifted.par_iter().map(query).collect::<Result<Vec<_>>>()?;

    let mut samples = Vec::with_capacity(near.len());
    for sample in near {
        let h = sample.heights();
        if h.len() != base_h.len() || !same_weights(&base_h, &h) {
            return Err(Error::AmbiguousMatching);
        }
        let mut map = vec![usize::MAX; base_h.len()];
        for g in groups {
            let mut from = g.clone();
            from.sort_by(|&i, &j| base_h[i].0.total_cmp(&base_h[j].0));
            let mut to = atoms_with_weight(&h, base_h[g[0]].1);
            to.sort_by(|&i, &j| h[i].0.total_cmp(&h[j].0));
            if to.len() != from.len() {
                return Err(Error::AmbiguousMatching);
            }
            for (a, b) in from.into_iter().zip(to) {
                map[a] = b;
            }
        }
        samples.push((sample, map));
    }

    // ∂height/∂x̃ₖ = 2yₖ and ∂height/∂ỹₖ = −2xₖ.
    let predicted = (0..base_h.len())
        .map(|a| {
            let slope = |k: usize| {
                let (sample, map) = &samples[k];
                (sample.projected.atoms()[map[a]].point.z - base_h[a].0) / PERTURBATION_STEP
            };
            let y: Vec<f64> = (0..n).map(|k| slope(k) / 2.0).collect();
            let x: Vec<f64> = (0..n).map(|k| -slope(n + k) / 2.0).collect();
            let mut q = HeisenbergPoint { x, y, z: 0.0 };
            q.z = base_h[a].0 - q.projected_height(&base.line);
            q
        })
        .collect();
    Ok(NearLines { samples, predicted })
}

/// Reconstruction from a fixed set of samples, as read from disk.
///
/// Samples where every atom collapses to one height constrain all atoms;
/// other samples with fewer atoms than the maximum are skipped. Tied weights
/// are resolved by trying every matching and keeping the consistent one.
pub fn reconstruct_from_samples(samples: &[RadonSample]) -> Result<DiscreteMeasure> {
    let Some(first) = samples.first() else {
        return usage("reconstruction needs at least one sample");
    };
    let n = first.line.dim();
    for s in samples {
        s.validate()?;
        s.projected.check_dim(n)?;
    }
    let k = samples.iter().map(|s| s.projected.len()).max().unwrap_or(0);
    let full: Vec<&RadonSample> = samples.iter().filter(|s| s.projected.len() == k).collect();
    let collapsed: Vec<&RadonSample> = samples.iter().filter(|s| k > 1 && s.projected.len() == 1).collect();

    let heights: Vec<Vec<(f64, f64)>> = full.iter().map(|s| s.heights()).collect();
    let base = &heights[0];
    if heights.iter().any(|h| !same_weights(base, h)) {
        return Err(Error::OracleInconsistent("weights differ between lines".into()));
    }
    let total: f64 = base.iter().map(|h| h.1).sum();
    if collapsed
        .iter()
        .any(|s| (s.projected.total_mass() - total).abs() > WEIGHT_TIE_TOL)
    {
        return Err(Error::OracleInconsistent(
            "collapsed sample carries a different mass".into(),
        ));
    }
    let shared: Vec<(&VerticalLine, f64)> = collapsed
        .iter()
        .map(|s| (&s.line, s.projected.atoms()[0].point.z))
        .collect();

    let mut atoms = vec![None; base.len()];
    for group in weight_groups(base) {
        let options: Vec<Vec<usize>> = heights.iter().map(|h| atoms_with_weight(h, base[group[0]].1)).collect();
        let solved = solve_group(n, &group, &full, &heights, &options, &shared)?;
        for (a, q) in group.iter().zip(solved) {
            atoms[*a] = Some((q, base[*a].1));
        }
    }
    DiscreteMeasure::new(atoms.into_iter().map(|a| a.expect("every group solved")).collect())
}

/// Finds the unique consistent matching of one tied group across samples.
fn solve_group(
    n: usize,
    group: &[usize],
    full: &[&RadonSample],
    heights: &[Vec<(f64, f64)>],
    options: &[Vec<usize>],
    shared: &[(&VerticalLine, f64)],
) -> Result<Vec<HeisenbergPoint>> {
    let g = group.len();
    let perms = permutations(g);
    let combos = (perms.len() as f64).powi(full.len() as i32 - 1);
    if combos > MAX_MATCHINGS as f64 {
        return Err(Error::AmbiguousMatching);
    }
    // The base sample keeps the identity order; every other sample picks a permutation.
    let mut choice = vec![0usize; full.len()];
    let mut found: Option<Vec<HeisenbergPoint>> = None;
    loop {
        let mut points = Vec::with_capacity(g);
        let mut consistent = true;
        for slot in 0..g {
            let mut rows: Vec<(&VerticalLine, f64)> = shared.to_vec();
            for (s, sample) in full.iter().enumerate() {
                let idx = if s == 0 {
                    options[0][slot]
                } else {
                    options[s][perms[choice[s]][slot]]
                };
                rows.push((&sample.line, heights[s][idx].0));
            }
            let (q, residual) = solve_point(n, &rows)?;
            if !residual_ok(residual, &rows) {
                consistent = false;
                break;
            }
            points.push(q);
        }
        if consistent {
            match &found {
                None => found = Some(points),
                Some(prev) => {
                    let same = prev.iter().all(|a| points.iter().any(|b| a.approx_eq(b, 1e-9)));
                    if !same {
                        return Err(Error::AmbiguousMatching);
                    }
                }
            }
        }
        // Advance the mixed-radix counter over samples 1..
        let mut s = 1;
        while s < full.len() {
            choice[s] += 1;
            if choice[s] < perms.len() {
                break;
            }
            choice[s] = 0;
            s += 1;
        }
        if s >= full.len() {
            break;
        }
    }
    found.ok_or_else(|| Error::OracleInconsistent("no matching of tied atoms is consistent".into()))
}

fn permutations(g: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                extend(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(g), &mut vec![false; g], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transport::wasserstein;

    fn p(x: f64, y: f64, z: f64) -> HeisenbergPoint {
        HeisenbergPoint::planar(x, y, z)
    }

    fn two_diagonal() -> DiscreteMeasure {
        DiscreteMeasure::uniform(vec![p(1.0, 0.0, 0.0), p(0.0, 1.0, 0.0)]).unwrap()
    }

    #[test]
    fn projection_onto_diagonal_line() {
        let s = project_measure(&two_diagonal(), &VerticalLine::planar(1.0, 1.0)).unwrap();
        let expected = DiscreteMeasure::uniform(vec![p(1.0, 1.0, -2.0), p(1.0, 1.0, 2.0)]).unwrap();
        assert_eq!(s.projected, expected);
    }

    #[test]
    fn projection_onto_axis_collapses() {
        let s = project_measure(&two_diagonal(), &VerticalLine::axis(1)).unwrap();
        assert_eq!(s.projected, DiscreteMeasure::dirac(p(0.0, 0.0, 0.0)));
        let on_line = DiscreteMeasure::uniform(vec![p(0.5, 2.0, 1.0), p(0.5, 2.0, -3.0)]).unwrap();
        let s = project_measure(&on_line, &VerticalLine::planar(0.5, 2.0)).unwrap();
        assert_eq!(s.projected, on_line);
    }

    #[test]
    fn generic_line_avoids_hyperplane() {
        let q = p(0.0, 0.0, 0.0);
        let q2 = p(1.0, 0.0, 1.0);
        for seed in 0..20 {
            let line = generic_line(&[q.clone(), q2.clone()], seed).unwrap();
            assert!((line.y_tilde[0] - 0.5).abs() > 1e-6);
        }
        let vertical = generic_line(&[p(0.0, 0.0, 0.0), p(0.0, 0.0, 1.0)], 3).unwrap();
        assert_eq!(vertical.dim(), 1);
        assert_eq!(
            generic_line(&[q.clone(), q2.clone()], 9).unwrap(),
            generic_line(&[q, q2], 9).unwrap()
        );
    }

    #[test]
    fn dirac_is_recovered() {
        let q = HeisenbergPoint::new(vec![0.3, -1.2], vec![2.0, 0.1], -0.7).unwrap();
        let mu = DiscreteMeasure::dirac(q.clone());
        let out = reconstruct(|l| Ok(project_measure(&mu, l)?.projected), 2, 1, 5).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out.atoms()[0].point.approx_eq(&q, 1e-9));
    }

    #[test]
    fn tied_weights_are_tracked() {
        let mu = DiscreteMeasure::uniform(vec![p(0.1, 0.2, 0.3), p(-1.0, 0.5, 2.0), p(0.7, -0.4, -1.5)]).unwrap();
        let out = reconstruct(|l| Ok(project_measure(&mu, l)?.projected), 1, 3, 11).unwrap();
        // d_H grows like √|Δz|, so coordinate errors near 1e-15 show up as ~3e-8 here.
        assert!(wasserstein(&mu, &out, 1.0).unwrap() < 1e-6);
        assert!(mu.approx_eq(&out, 1e-9));
    }

    #[test]
    fn too_many_atoms_is_inconsistent() {
        let mu = DiscreteMeasure::uniform(vec![p(0.1, 0.2, 0.3), p(-1.0, 0.5, 2.0)]).unwrap();
        let err = reconstruct(|l| Ok(project_measure(&mu, l)?.projected), 1, 1, 0);
        assert!(matches!(err, Err(Error::OracleInconsistent(_))));
    }

    #[test]
    fn lying_oracle_is_detected() {
        // Heights that no single point can produce on every line.
        let err = reconstruct(
            |l| Ok(DiscreteMeasure::dirac(l.point_at(l.x_tilde[0] * l.x_tilde[0]))),
            1,
            1,
            2,
        );
        assert!(matches!(err, Err(Error::OracleInconsistent(_))));
    }

    #[test]
    fn samples_with_collapsed_line() {
        let mu = DiscreteMeasure::new(vec![(p(1.0, 0.0, 0.0), 0.75), (p(0.0, 1.0, 0.0), 0.25)]).unwrap();
        let lines = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
        let samples: Vec<RadonSample> = lines
            .iter()
            .map(|(a, b)| project_measure(&mu, &VerticalLine::planar(*a, *b)).unwrap())
            .collect();
        let out = reconstruct_from_samples(&samples).unwrap();
        assert!(out.approx_eq(&mu, 1e-12));
    }

    #[test]
    fn too_few_samples_is_ambiguous() {
        let mu = DiscreteMeasure::uniform(vec![p(1.0, 0.0, 0.0), p(0.0, 1.0, 0.0)]).unwrap();
        let samples = vec![project_measure(&mu, &VerticalLine::planar(1.0, 1.0)).unwrap()];
        assert!(matches!(
            reconstruct_from_samples(&samples),
            Err(Error::AmbiguousMatching)
        ));
    }

    #[test]
    fn sample_json_layout() {
        let s = project_measure(&DiscreteMeasure::dirac(p(0.0, 0.0, 1.0)), &VerticalLine::axis(1)).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"line":{"xt":[0.0],"yt":[0.0]},"projection":{"dim":1,"atoms":[{"x":[0.0],"y":[0.0],"z":1.0,"w":1.0}]}}"#
        );
        let back: RadonSample = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
