//! Seeded property suites over every module.
//!
//! Each property draws its inputs from its own generator, seeded by the suite
//! seed combined with a hash of the property name, so reports do not depend
//! on scheduling and are byte-identical for a fixed configuration.

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geodesic::{
    adversarial_midpoint_search, branch_geodesics, dilation_ray, linear_interpolation, unique_w1_geodesic,
    verify_unit_speed,
};
use crate::geometry::{
    distance, horizontally_aligned, separating_hyperplane, HeisenbergPoint, HorizontalVector, VerticalLine,
};
use crate::lifting::{certify_lift, lift_map, optimal_plane_map, PlaneMap};
use crate::measure::{jordan_decomposition, DiscreteMeasure};
use crate::radon::{generic_line, project_measure, reconstruct};
use crate::rigidity::{
    exotic_action, step4_certificate, two_point_measure, two_point_params, vertical_translation_gap, TwoPointParams,
};
use crate::transport::{
    coupling_cost, cyclically_monotone, glue, solve_wp, verify_map_optimality, wasserstein, Coupling, GroundCost,
};

/// Settings for [`run_suite`], read from flat `key=value` text.
///
/// Recognized keys: `seed`, `trials`, `p_values` and `dims` (comma
/// separated), and `tol.<name>` for the entries of [`SuiteConfig::tolerances`].
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub tolerances: BTreeMap<String, f64>,
    pub p_values: Vec<f64>,
    pub dims: Vec<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let tolerances = [
            ("geometry", 1e-9),
            ("inequality", 1e-12),
            ("lp", 1e-10),
            ("gap", 1e-8),
            ("speed", 1e-8),
            ("radon", 1e-6),
            ("lift", 1e-12),
            ("gap_floor", 1e-6),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        SuiteConfig {
            seed: 0,
            trials: 100,
            tolerances,
            p_values: vec![1.0, 1.5, 2.0, 4.0],
            dims: vec![1, 2],
        }
    }
}

impl SuiteConfig {
    /// Defaults overridden by the `key=value` lines of `text`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = SuiteConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse(format!("line {}: expected key=value", lineno + 1)));
            };
            config.set(key.trim(), value.trim())?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Parse(format!("invalid {what} `{value}`"));
        match key {
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "trials" => self.trials = value.parse().map_err(|_| bad("trials"))?,
            "p_values" => {
                self.p_values = value
                    .split(',')
                    .map(|s| s.trim().parse::<f64>().map_err(|_| bad("p_values")))
                    .collect::<Result<_>>()?
            }
            "dims" => {
                self.dims = value
                    .split(',')
                    .map(|s| s.trim().parse::<usize>().map_err(|_| bad("dims")))
                    .collect::<Result<_>>()?
            }
            _ => {
                let Some(name) = key.strip_prefix("tol.") else {
                    return Err(Error::Parse(format!("unknown key `{key}`")));
                };
                if !self.tolerances.contains_key(name) {
                    return Err(Error::Parse(format!("unknown tolerance `{name}`")));
                }
                let v: f64 = value.parse().map_err(|_| bad("tolerance"))?;
                self.tolerances.insert(name.to_string(), v);
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Usage("trials must be at least 1".into()));
        }
        if let Some((k, v)) = self.tolerances.iter().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::Usage(format!("tolerance {k} must be positive, got {v}")));
        }
        if self.p_values.is_empty() || self.p_values.iter().any(|p| !(1.0..=8.0).contains(p)) {
            return Err(Error::Usage("p_values must be a nonempty subset of [1, 8]".into()));
        }
        if self.dims.is_empty() || self.dims.iter().any(|d| !(1..=4).contains(d)) {
            return Err(Error::Usage("dims must be a nonempty subset of 1..=4".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances[name]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub pass: bool,
    pub checks: usize,
    pub failures: usize,
    /// Largest observed violation, in the units of the property's tolerance.
    pub max_deviation: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub pass: bool,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

type Property = fn(&mut Ctx) -> Result<()>;

const PROPERTIES: &[(&str, Property)] = &[
    ("core.left_invariance", core_left_invariance),
    ("core.projection_optimality", core_projection_optimality),
    ("core.alignment_additivity", core_alignment_additivity),
    ("core.elementary_inequality", core_elementary_inequality),
    ("core.norm_homogeneity", core_norm_homogeneity),
    ("measures.push_forward_mass", measures_push_forward_mass),
    ("measures.jordan_disjoint", measures_jordan_disjoint),
    ("measures.canonical_roundtrip", measures_canonical_roundtrip),
    ("transport.dirac_metric", transport_dirac_metric),
    ("transport.triangle_inequality", transport_triangle_inequality),
    ("transport.translation_invariance", transport_translation_invariance),
    ("transport.permutation_oracle", transport_permutation_oracle),
    ("transport.gluing_consistency", transport_gluing_consistency),
    ("transport.cyclic_monotonicity", transport_cyclic_monotonicity),
    (
        "geodesics.right_translation_optimality",
        geodesics_right_translation_optimality,
    ),
    ("geodesics.dilation_ray_speed", geodesics_dilation_ray_speed),
    ("geodesics.dilation_inequality", geodesics_dilation_inequality),
    ("geodesics.jensen_inequality", geodesics_jensen_inequality),
    ("geodesics.vertical_support_rays", geodesics_vertical_support_rays),
    ("geodesics.uniqueness_witness", geodesics_uniqueness_witness),
    ("radon.projection_identification", radon_projection_identification),
    ("radon.weight_preservation", radon_weight_preservation),
    ("radon.hyperplane_correctness", radon_hyperplane_correctness),
    ("lifting.cost_equality", lifting_cost_equality),
    ("lifting.projection_contraction", lifting_projection_contraction),
    ("lifting.lift_end_to_end", lifting_lift_end_to_end),
    (
        "rigidity.projection_parametrization",
        rigidity_projection_parametrization,
    ),
    ("rigidity.step4", rigidity_step4),
    ("rigidity.vertical_translation_gap", rigidity_vertical_translation_gap),
    ("rigidity.line_metric", rigidity_line_metric),
];

/// Names of all properties, in report order.
pub fn selectors() -> Vec<&'static str> {
    PROPERTIES.iter().map(|(name, _)| *name).collect()
}

/// Runs `all`, one module (`transport`), or one property (`transport.dirac_metric`).
pub fn run_suite(config: &SuiteConfig, selector: &str) -> Result<SuiteReport> {
    config.validate()?;
    let chosen: Vec<&(&str, Property)> = PROPERTIES
        .iter()
        .filter(|(name, _)| selector == "all" || *name == selector || name.split('.').next() == Some(selector))
        .collect();
    if chosen.is_empty() {
        return Err(Error::UnknownSuite(selector.to_string()));
    }
    let properties = chosen
        .par_iter()
        .map(|(name, property)| run_property(config, name, *property))
        .collect::<Vec<_>>();
    Ok(SuiteReport {
        seed: config.seed,
        trials: config.trials,
        pass: properties.iter().all(|p| p.pass),
        properties,
    })
}

fn run_property(config: &SuiteConfig, name: &str, property: Property) -> PropertyReport {
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(config.seed ^ fnv1a(name)),
        config,
        checks: 0,
        failures: 0,
        max_deviation: 0.0,
        details: BTreeMap::new(),
        counterexample: None,
    };
    let outcome = property(&mut ctx);
    let mut report = PropertyReport {
        name: name.to_string(),
        pass: ctx.failures == 0,
        checks: ctx.checks,
        failures: ctx.failures,
        max_deviation: ctx.max_deviation,
        details: ctx.details,
        counterexample: ctx.counterexample,
    };
    if let Err(e) = outcome {
        report.pass = false;
        report.failures += 1;
        report
            .counterexample
            .get_or_insert_with(|| json!({ "error": e.to_string() }));
    }
    report
}

fn fnv1a(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

struct Ctx<'a> {
    rng: ChaCha8Rng,
    config: &'a SuiteConfig,
    checks: usize,
    failures: usize,
    max_deviation: f64,
    details: BTreeMap<String, f64>,
    counterexample: Option<Value>,
}

impl Ctx<'_> {
    fn trials(&self) -> usize {
        self.config.trials
    }

    fn tol(&self, name: &str) -> f64 {
        self.config.tolerance(name)
    }

    /// Records one check; it fails when `deviation` exceeds `limit` or is NaN.
    fn check(&mut self, deviation: f64, limit: f64, witness: impl FnOnce() -> Value) {
        self.checks += 1;
        if deviation.is_nan() || deviation > self.max_deviation {
            self.max_deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
        }
        if deviation.is_nan() || deviation > limit {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }

    fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.check(if ok { 0.0 } else { f64::INFINITY }, 0.0, witness);
    }

    fn dim(&mut self) -> usize {
        *self.config.dims.choose(&mut self.rng).expect("validated nonempty")
    }

    fn exponent(&mut self) -> f64 {
        *self.config.p_values.choose(&mut self.rng).expect("validated nonempty")
    }

    /// An exponent above 1, as strictly convex costs need; 2 if none is configured.
    fn strict_exponent(&mut self) -> f64 {
        let strict: Vec<f64> = self.config.p_values.iter().copied().filter(|p| *p > 1.0).collect();
        strict.choose(&mut self.rng).copied().unwrap_or(2.0)
    }

    fn coords(&mut self, n: usize, scale: f64) -> Vec<f64> {
        (0..n).map(|_| self.rng.random_range(-scale..scale)).collect()
    }

    fn point(&mut self, n: usize, scale: f64) -> HeisenbergPoint {
        HeisenbergPoint {
            x: self.coords(n, scale),
            y: self.coords(n, scale),
            z: self.rng.random_range(-scale..scale),
        }
    }

    fn horizontal(&mut self, n: usize, scale: f64) -> HorizontalVector {
        HorizontalVector {
            u: self.coords(n, scale),
            v: self.coords(n, scale),
        }
    }

    fn line(&mut self, n: usize, scale: f64) -> VerticalLine {
        VerticalLine {
            x_tilde: self.coords(n, scale),
            y_tilde: self.coords(n, scale),
        }
    }

    /// Positive weights summing to 1, pairwise at least `1e-3` apart relative to their scale.
    fn weights(&mut self, k: usize) -> Vec<f64> {
        loop {
            let raw: Vec<f64> = (0..k).map(|_| self.rng.random_range(1.0..2.0)).collect();
            let mut sorted = raw.clone();
            sorted.sort_by(f64::total_cmp);
            if sorted.windows(2).all(|w| w[1] - w[0] > 1e-3) {
                let total: f64 = raw.iter().sum();
                return raw.iter().map(|w| w / total).collect();
            }
        }
    }

    fn measure(&mut self, n: usize, max_atoms: usize, scale: f64) -> DiscreteMeasure {
        let k = self.rng.random_range(1..=max_atoms);
        let weights = self.weights(k);
        let atoms = weights.into_iter().map(|w| (self.point(n, scale), w)).collect();
        DiscreteMeasure::new(atoms).expect("generated atoms are valid")
    }

    fn uniform(&mut self, n: usize, k: usize, scale: f64) -> DiscreteMeasure {
        let pts = (0..k).map(|_| self.point(n, scale)).collect();
        DiscreteMeasure::uniform(pts).expect("generated atoms are valid")
    }

    fn axis_measure(&mut self, n: usize, max_atoms: usize) -> DiscreteMeasure {
        let k = self.rng.random_range(1..=max_atoms);
        let weights = self.weights(k);
        let axis = VerticalLine::axis(n);
        let atoms = weights
            .into_iter()
            .map(|w| (axis.point_at(self.rng.random_range(-1.0..1.0)), w))
            .collect();
        DiscreteMeasure::new(atoms).expect("generated atoms are valid")
    }
}

fn measure_json(m: &DiscreteMeasure) -> Value {
    serde_json::to_value(m).expect("measure serialization is infallible")
}

fn points_json(points: &[&HeisenbergPoint]) -> Value {
    let pts: Vec<HeisenbergPoint> = points.iter().map(|q| (*q).clone()).collect();
    match DiscreteMeasure::uniform(pts) {
        Ok(m) => measure_json(&m),
        Err(_) => serde_json::to_value(points).unwrap_or(Value::Null),
    }
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

fn core_left_invariance(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("geometry");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let (a, b, g) = (ctx.point(n, 3.0), ctx.point(n, 3.0), ctx.point(n, 3.0));
        let d = distance(&a, &b)?;
        let moved = distance(&g.mul(&a)?, &g.mul(&b)?)?;
        ctx.check(relative(d, moved), tol, || points_json(&[&a, &b, &g]));
    }
    Ok(())
}

fn core_projection_optimality(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("geometry");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let q = ctx.point(n, 3.0);
        let line = ctx.line(n, 3.0);
        let foot = q.vertical_project(&line)?;
        let best = distance(&q, &foot)?;
        for scale in [1e-4, 1e-1, 1.0, 10.0] {
            let other = line.point_at(foot.z + ctx.rng.random_range(-scale..scale));
            let d = distance(&q, &other)?;
            ctx.check((best - d).max(0.0) / (1.0 + d), tol, || {
                points_json(&[&q, &foot, &other])
            });
        }
    }
    Ok(())
}

fn core_alignment_additivity(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("geometry");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let q = ctx.point(n, 3.0);
        let u = ctx.horizontal(n, 1.0);
        let t = ctx.rng.random_range(0.1..3.0);
        let s = ctx.rng.random_range(0.0..t);
        let end = q.right_translate_horizontal(&u, t)?;
        let mid = q.right_translate_horizontal(&u, s)?;
        let total = distance(&q, &end)?;
        let split = distance(&q, &mid)? + distance(&mid, &end)?;
        ctx.check(relative(total, split), tol, || points_json(&[&q, &mid, &end]));
        ctx.expect(horizontally_aligned(&q, &end)?, || points_json(&[&q, &end]));

        // Lifting the endpoint off the horizontal line breaks alignment and additivity.
        let lifted = HeisenbergPoint {
            z: end.z + ctx.rng.random_range(0.1..1.0),
            ..end.clone()
        };
        let strict = distance(&q, &mid)? + distance(&mid, &lifted)? - distance(&q, &lifted)?;
        ctx.expect(!horizontally_aligned(&q, &lifted)? && strict > 0.0, || {
            points_json(&[&q, &mid, &lifted])
        });
    }
    Ok(())
}

fn core_elementary_inequality(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("inequality");
    for _ in 0..100 * ctx.trials() {
        let a = if ctx.rng.random_bool(0.05) {
            1.0
        } else {
            ctx.rng.random_range(-4.0f64..4.0).exp()
        };
        let p = ctx.rng.random_range(1.0..8.0);
        let lhs = a.powf(p - 1.0) + a;
        let rhs = 1.0 + a.powf(p);
        ctx.check((lhs - rhs).max(0.0) / rhs, tol, || json!({ "norm": a, "p": p }));
    }
    Ok(())
}

fn core_norm_homogeneity(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("geometry");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let q = ctx.point(n, 3.0);
        let r = ctx.rng.random_range(0.01..10.0);
        let scaled = q.nonisotropic_dilation(r).koranyi_norm();
        ctx.check(relative(scaled, r * q.koranyi_norm()), tol, || points_json(&[&q]));
    }
    Ok(())
}

fn measures_push_forward_mass(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let mu = ctx.measure(n, 6, 3.0);
        let u = ctx.horizontal(n, 2.0);
        let lambda = ctx.rng.random_range(0.0..3.0);
        let images = [
            mu.try_push_forward(|q| q.right_translate_horizontal(&u, 1.0))?,
            mu.try_push_forward(|q| q.horizontal_dilation(lambda))?,
            mu.push_forward(|_| HeisenbergPoint::origin(n))?,
        ];
        for image in &images {
            let dev = (image.total_mass() - mu.total_mass()).abs();
            ctx.check(dev, 1e-12, || measure_json(&mu));
            ctx.expect(image.len() <= mu.len(), || measure_json(&mu));
        }
    }
    Ok(())
}

fn measures_jordan_disjoint(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let mu = ctx.measure(n, 5, 2.0);
        // ν keeps some atoms of μ with new weights and adds fresh ones.
        let mut atoms = Vec::new();
        for a in mu.atoms() {
            if ctx.rng.random_bool(0.6) {
                atoms.push((a.point.clone(), ctx.rng.random_range(0.1..1.0)));
            }
        }
        atoms.push((ctx.point(n, 2.0), 0.5));
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        let nu = DiscreteMeasure::new(atoms.into_iter().map(|(q, w)| (q, w / total)).collect())?;
        let parts = jordan_decomposition(&mu, &nu)?;
        let overlap = parts
            .positive_part
            .points()
            .any(|q| parts.negative_part.mass_at(q) > 0.0);
        ctx.expect(!overlap, || json!({ "mu": measure_json(&mu), "nu": measure_json(&nu) }));
        for q in mu.points().chain(nu.points()) {
            let signed = mu.mass_at(q) - nu.mass_at(q);
            let split = parts.positive_part.mass_at(q) - parts.negative_part.mass_at(q);
            let dev = if signed.abs() <= 1e-12 {
                split.abs()
            } else {
                (signed - split).abs()
            };
            ctx.check(
                dev,
                1e-12,
                || json!({ "mu": measure_json(&mu), "nu": measure_json(&nu) }),
            );
        }
    }
    Ok(())
}

fn measures_canonical_roundtrip(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let mu = ctx.measure(n, 6, 5.0);
        let text = mu.to_json();
        let back: DiscreteMeasure = serde_json::from_str(&text)?;
        ctx.expect(back == mu && back.to_json() == text, || measure_json(&mu));
        let mut shuffled: Vec<(HeisenbergPoint, f64)> =
            mu.atoms().iter().map(|a| (a.point.clone(), a.weight)).collect();
        shuffled.shuffle(&mut ctx.rng);
        ctx.expect(DiscreteMeasure::new(shuffled)?.to_json() == text, || measure_json(&mu));
    }
    Ok(())
}

fn transport_dirac_metric(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("lp");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.exponent();
        let (a, b) = (ctx.point(n, 3.0), ctx.point(n, 3.0));
        let w = wasserstein(
            &DiscreteMeasure::dirac(a.clone()),
            &DiscreteMeasure::dirac(b.clone()),
            p,
        )?;
        ctx.check(relative(w, distance(&a, &b)?), tol, || points_json(&[&a, &b]));
    }
    Ok(())
}

fn transport_triangle_inequality(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("lp");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.exponent();
        let (a, b, c) = (ctx.measure(n, 5, 2.0), ctx.measure(n, 5, 2.0), ctx.measure(n, 5, 2.0));
        let slack = wasserstein(&a, &c, p)? - wasserstein(&a, &b, p)? - wasserstein(&b, &c, p)?;
        ctx.check(slack.max(0.0), tol, || {
            json!([measure_json(&a), measure_json(&b), measure_json(&c)])
        });
    }
    Ok(())
}

fn transport_translation_invariance(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("geometry");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.exponent();
        let (mu, nu) = (ctx.measure(n, 5, 2.0), ctx.measure(n, 5, 2.0));
        let g = ctx.point(n, 3.0);
        let shift = |m: &DiscreteMeasure| m.try_push_forward(|q| g.left_translate(q));
        let moved = wasserstein(&shift(&mu)?, &shift(&nu)?, p)?;
        let base = wasserstein(&mu, &nu, p)?;
        ctx.check(relative(base, moved), tol, || {
            json!([measure_json(&mu), measure_json(&nu)])
        });
    }
    Ok(())
}

/// Minimum of `(1/k) Σ d(aᵢ, b_σ(i))^p` over all permutations `σ`.
fn brute_force_assignment(a: &[&HeisenbergPoint], b: &[&HeisenbergPoint], p: f64) -> Result<f64> {
    let k = a.len();
    let mut order: Vec<usize> = (0..k).collect();
    let mut best = f64::INFINITY;
    // Heap's algorithm over all k! orders.
    let mut c = vec![0usize; k];
    let cost = |order: &[usize]| -> Result<f64> {
        let mut s = 0.0;
        for (i, &j) in order.iter().enumerate() {
            s += distance(a[i], b[j])?.powf(p);
        }
        Ok(s / k as f64)
    };
    best = best.min(cost(&order)?);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            best = best.min(cost(&order)?);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

fn transport_permutation_oracle(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("lp");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.exponent();
        let k = ctx.rng.random_range(1..=5);
        let (mu, nu) = (ctx.uniform(n, k, 2.0), ctx.uniform(n, k, 2.0));
        let lp = solve_wp(&mu, &nu, p, GroundCost::Heisenberg)?.cost_p;
        let a: Vec<&HeisenbergPoint> = mu.points().collect();
        let b: Vec<&HeisenbergPoint> = nu.points().collect();
        let brute = brute_force_assignment(&a, &b, p)?;
        ctx.check((lp - brute).abs() / (1.0 + brute), tol, || {
            json!([measure_json(&mu), measure_json(&nu)])
        });
    }
    Ok(())
}

fn transport_gluing_consistency(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("lp");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.exponent();
        let (a, b, c) = (ctx.measure(n, 4, 2.0), ctx.measure(n, 4, 2.0), ctx.measure(n, 4, 2.0));
        let first = solve_wp(&a, &b, p, GroundCost::Heisenberg)?;
        let second = solve_wp(&b, &c, p, GroundCost::Heisenberg)?;
        let glued = glue(&first.coupling, &second.coupling)?;
        let witness = || json!([measure_json(&a), measure_json(&b), measure_json(&c)]);
        ctx.check(glued.marginal_excess(), 1e-9, witness);
        let cost = coupling_cost(&glued, p, GroundCost::Heisenberg)?;
        let direct = solve_wp(&a, &c, p, GroundCost::Heisenberg)?.cost_p;
        ctx.check((direct - cost).max(0.0), tol, witness);
        // The glued plan moves mass along two legs, so its cost^{1/p} obeys the triangle bound.
        let bound = first.distance + second.distance;
        ctx.check((cost.powf(1.0 / p) - bound).max(0.0), tol, witness);
    }
    Ok(())
}

fn transport_cyclic_monotonicity(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.exponent();
        let (mu, nu) = (ctx.measure(n, 5, 2.0), ctx.measure(n, 5, 2.0));
        let plan = solve_wp(&mu, &nu, p, GroundCost::Heisenberg)?;
        let ok = cyclically_monotone(&plan.coupling, p, 4).is_monotone();
        ctx.expect(ok, || json!([measure_json(&mu), measure_json(&nu)]));
    }
    // Crossing a monotone matching on a horizontal line must be caught.
    let mu = DiscreteMeasure::uniform(vec![
        HeisenbergPoint::planar(0.0, 0.0, 0.0),
        HeisenbergPoint::planar(1.0, 0.0, 0.0),
    ])?;
    let nu = DiscreteMeasure::uniform(vec![
        HeisenbergPoint::planar(2.0, 0.0, 0.0),
        HeisenbergPoint::planar(3.0, 0.0, 0.0),
    ])?;
    let swapped = Coupling::new(mu.clone(), nu.clone(), vec![vec![0.0, 0.5], vec![0.5, 0.0]])?;
    let caught = !cyclically_monotone(&swapped, 2.0, 4).is_monotone();
    ctx.expect(caught, || json!([measure_json(&mu), measure_json(&nu)]));
    Ok(())
}

fn geodesics_right_translation_optimality(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("gap");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.strict_exponent();
        let mu = ctx.measure(n, 6, 2.0);
        let u = ctx.horizontal(n, 1.0);
        let t = ctx.rng.random_range(-5.0..5.0);
        let report = verify_map_optimality(&mu, |q| q.right_translate_horizontal(&u, t), p)?;
        ctx.check(report.gap.abs(), tol, || measure_json(&mu));
    }
    Ok(())
}

fn geodesics_dilation_ray_speed(ctx: &mut Ctx) -> Result<()> {
    let (gap_tol, speed_tol) = (ctx.tol("gap"), ctx.tol("speed"));
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.strict_exponent();
        let mu = ctx.measure(n, 5, 2.0);
        if mu.vertical_support_line().is_some() {
            continue;
        }
        let lambda = ctx.rng.random_range(0.0..3.0);
        let gap = verify_map_optimality(&mu, |q| q.horizontal_dilation(lambda), p)?.gap;
        ctx.check(gap.abs(), gap_tol, || measure_json(&mu));
        let ray = dilation_ray(&mu, p)?;
        for _ in 0..5 {
            let (s, t) = (ctx.rng.random_range(0.0..3.0), ctx.rng.random_range(0.0..3.0));
            let w = wasserstein(&ray.evaluate(s)?, &ray.evaluate(t)?, p)?;
            ctx.check((w - ray.speed() * (s - t).abs()).abs(), speed_tol, || measure_json(&mu));
        }
    }
    Ok(())
}

fn geodesics_dilation_inequality(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("inequality");
    for _ in 0..100 * ctx.trials() {
        let k = ctx.rng.random_range(2..=8);
        let lambda: f64 = match ctx.rng.random_range(0..10) {
            0 => 0.0,
            1 => 1.0,
            _ => ctx.rng.random_range(0.0..3.0),
        };
        let p = ctx.rng.random_range(1.0..6.0);
        let a: Vec<f64> = (0..k).map(|_| ctx.rng.random_range(1e-3..5.0)).collect();
        let lhs: f64 = a.iter().map(|x| (1.0 - lambda).abs().powf(p) * x.powf(p)).sum();
        let rhs: f64 = (0..k).map(|i| (a[(i + 1) % k] - lambda * a[i]).abs().powf(p)).sum();
        ctx.check(
            (lhs - rhs).max(0.0) / (1.0 + rhs),
            tol,
            || json!({ "a": a, "lambda": lambda, "p": p }),
        );
    }
    Ok(())
}

fn geodesics_jensen_inequality(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("inequality");
    for _ in 0..10 * ctx.trials() {
        let n = ctx.dim();
        let k = ctx.rng.random_range(2..=8);
        let p = ctx.rng.random_range(1.0..6.0);
        let t = ctx.rng.random_range(-3.0..3.0);
        let u = ctx.coords(2 * n, 1.0);
        let pts: Vec<Vec<f64>> = (0..k).map(|_| ctx.coords(2 * n, 3.0)).collect();
        let norm = |v: &[f64]| v.iter().map(|c| c * c).sum::<f64>().sqrt();
        let lhs = norm(&u.iter().map(|c| t * c).collect::<Vec<_>>()).powf(p);
        let rhs = (0..k)
            .map(|i| {
                let step: Vec<f64> = (0..2 * n).map(|c| pts[(i + 1) % k][c] - pts[i][c] - t * u[c]).collect();
                norm(&step).powf(p)
            })
            .sum::<f64>()
            / k as f64;
        ctx.check(
            (lhs - rhs).max(0.0) / (1.0 + rhs),
            tol,
            || json!({ "points": pts, "u": u, "t": t, "p": p }),
        );
    }
    Ok(())
}

fn geodesics_vertical_support_rays(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("speed");
    for trial in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.strict_exponent();
        if trial % 2 == 0 {
            let line = ctx.line(n, 2.0);
            let k = ctx.rng.random_range(1..=4);
            let weights = ctx.weights(k);
            let atoms = weights
                .into_iter()
                .map(|w| (line.point_at(ctx.rng.random_range(-2.0..2.0)), w))
                .collect();
            let mu = DiscreteMeasure::new(atoms)?;
            ctx.expect(dilation_ray(&mu, p).is_err(), || measure_json(&mu));
        } else {
            let mu = ctx.measure(n, 5, 2.0);
            if mu.vertical_support_line().is_some() {
                continue;
            }
            let ray = dilation_ray(&mu, p)?;
            let end = ray.evaluate(0.0)?;
            ctx.expect(end.is_on_axis(), || measure_json(&mu));
            let w = wasserstein(&end, &mu, p)?;
            ctx.check((w - ray.speed()).abs(), tol, || measure_json(&mu));
        }
    }
    Ok(())
}

fn geodesics_uniqueness_witness(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("speed");
    for _ in 0..ctx.trials().min(10) {
        let n = ctx.dim();
        let c = ctx.rng.random_range(0.1..1.0);
        let q = ctx.point(n, 2.0);
        let q2 = HeisenbergPoint {
            z: q.z + ctx.rng.random_range(0.5..2.0),
            ..ctx.point(n, 2.0)
        };
        if horizontally_aligned(&q, &q2)? {
            continue;
        }
        let k = ctx.rng.random_range(0..=2);
        let rest: Vec<(HeisenbergPoint, f64)> = (0..k).map(|_| (ctx.point(n, 2.0), (1.0 - c) / k as f64)).collect();
        let build = |end: &HeisenbergPoint| {
            let mut atoms = rest.clone();
            atoms.push((end.clone(), if k == 0 { 1.0 } else { c }));
            DiscreteMeasure::new(atoms)
        };
        let (mu, nu) = (build(&q)?, build(&q2)?);
        let witness = || json!([measure_json(&mu), measure_json(&nu)]);
        ctx.expect(unique_w1_geodesic(&mu, &nu)?.is_some(), witness);
        let speed = verify_unit_speed(&linear_interpolation(&mu, &nu)?, 5, tol)?;
        ctx.check(speed.max_deviation, tol, witness);
        let search = adversarial_midpoint_search(&mu, &nu, 20, ctx.rng.random())?;
        ctx.expect(search.successes == 0 && search.linear_midpoint_ok, witness);

        // Four distinct atoms: several geodesics, at least one differing from the linear one.
        let (a, b) = (ctx.uniform(n, 2, 2.0), ctx.uniform(n, 2, 2.0));
        let linear = linear_interpolation(&a, &b)?;
        let total = linear.domain().1;
        let mut differs = false;
        for curve in branch_geodesics(&a, &b)? {
            let report = verify_unit_speed(&curve, 5, tol)?;
            ctx.check(report.max_deviation, tol, || {
                json!([measure_json(&a), measure_json(&b)])
            });
            for s in [0.25, 0.5, 0.75] {
                differs |= !curve.evaluate(s * total)?.approx_eq(&linear.evaluate(s * total)?, 1e-9);
            }
        }
        ctx.expect(differs, || json!([measure_json(&a), measure_json(&b)]));
    }
    Ok(())
}

/// Atoms in `[-2, 2]^{2n+1}` with pairwise Euclidean separation at least 0.1 and distinct weights.
fn separated_measure(ctx: &mut Ctx, n: usize, max_atoms: usize) -> DiscreteMeasure {
    let k = ctx.rng.random_range(1..=max_atoms);
    let mut pts: Vec<HeisenbergPoint> = Vec::with_capacity(k);
    while pts.len() < k {
        let q = ctx.point(n, 2.0);
        let far = pts.iter().all(|r| {
            let d2: f64 =
                q.x.iter()
                    .zip(&r.x)
                    .chain(q.y.iter().zip(&r.y))
                    .chain(std::iter::once((&q.z, &r.z)))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
            d2 >= 0.01
        });
        if far {
            pts.push(q);
        }
    }
    let weights = ctx.weights(k);
    DiscreteMeasure::new(pts.into_iter().zip(weights).collect()).expect("generated atoms are valid")
}

fn radon_projection_identification(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("radon");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let mu = separated_measure(ctx, n, 8);
        let seed = ctx.rng.random();
        let out = reconstruct(|l| Ok(project_measure(&mu, l)?.projected), n, 8, seed)?;
        ctx.check(wasserstein(&mu, &out, 1.0)?, tol, || measure_json(&mu));

        // A different source must not reconstruct to μ.
        let moved = mu.try_push_forward(|q| {
            Ok(HeisenbergPoint {
                z: q.z + 0.05,
                ..q.clone()
            })
        })?;
        let other = reconstruct(|l| Ok(project_measure(&moved, l)?.projected), n, 8, seed)?;
        ctx.expect(wasserstein(&mu, &other, 1.0)? > tol, || measure_json(&mu));
    }
    Ok(())
}

fn radon_weight_preservation(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let mu = ctx.measure(n, 8, 2.0);
        let pts: Vec<HeisenbergPoint> = mu.points().cloned().collect();
        let line = generic_line(&pts, ctx.rng.random())?;
        let projected = project_measure(&mu, &line)?.projected;
        let sorted = |m: &DiscreteMeasure| {
            let mut w: Vec<f64> = m.weights().collect();
            w.sort_by(f64::total_cmp);
            w
        };
        let ok = projected.len() == mu.len() && sorted(&projected) == sorted(&mu);
        ctx.expect(ok, || measure_json(&mu));
    }
    Ok(())
}

fn radon_hyperplane_correctness(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("geometry");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let (q, q2) = (ctx.point(n, 2.0), ctx.point(n, 2.0));
        let h = separating_hyperplane(&q, &q2)?;
        if h.is_degenerate() {
            continue;
        }
        let norm2: f64 = h.normal.iter().map(|c| c * c).sum();
        let start = ctx.line(n, 2.0);
        let shift = h.residual(&start) / norm2;
        let coords: Vec<f64> = start
            .coords()
            .iter()
            .zip(&h.normal)
            .map(|(c, a)| c - shift * a)
            .collect();
        let on = VerticalLine::from_coords(&coords);
        let step = ctx.rng.random_range(0.01..1.0) / norm2.sqrt();
        let off = VerticalLine::from_coords(
            &coords
                .iter()
                .zip(&h.normal)
                .map(|(c, a)| c + step * a)
                .collect::<Vec<_>>(),
        );
        for line in [&on, &off] {
            let dz = q2.vertical_project(line)?.z - q.vertical_project(line)?.z;
            let same = dz.abs() <= tol * (1.0 + q.koranyi_norm() + q2.koranyi_norm()).powi(2);
            ctx.expect(same == h.contains(line, 1e-9), || points_json(&[&q, &q2]));
            ctx.check((dz + 2.0 * h.residual(line)).abs() / (1.0 + dz.abs()), tol, || {
                points_json(&[&q, &q2])
            });
        }
    }
    Ok(())
}

fn lifting_cost_equality(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("lift");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.exponent();
        let nu = ctx.measure(n, 6, 2.0);
        let matrix: Vec<f64> = ctx.coords(4 * n * n, 1.0);
        let offset = ctx.coords(2 * n, 1.0);
        let affine = PlaneMap::custom(move |xy| {
            let m = xy.len();
            Ok((0..m)
                .map(|r| offset[r] + (0..m).map(|c| matrix[r * m + c] * xy[c]).sum::<f64>())
                .collect())
        });
        let lifted = lift_map(affine.clone());
        let (mut plane, mut heis) = (0.0, 0.0);
        for a in nu.atoms() {
            let xy = a.point.plane_coords();
            let image = affine.apply(&xy)?;
            let d: f64 = xy
                .iter()
                .zip(&image)
                .map(|(s, t)| (s - t) * (s - t))
                .sum::<f64>()
                .sqrt();
            plane += a.weight * d.powf(p);
            heis += a.weight * distance(&a.point, &lifted.apply(&a.point)?)?.powf(p);
        }
        ctx.check((plane - heis).abs() / plane.max(f64::MIN_POSITIVE), tol, || {
            measure_json(&nu)
        });
    }
    Ok(())
}

fn lifting_projection_contraction(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let (q, q2) = (ctx.point(n, 3.0), ctx.point(n, 3.0));
        let plane: f64 = q
            .plane_coords()
            .iter()
            .zip(q2.plane_coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let d = distance(&q, &q2)?;
        ctx.check((plane - d).max(0.0), 1e-12, || points_json(&[&q, &q2]));
    }
    Ok(())
}

fn lifting_lift_end_to_end(ctx: &mut Ctx) -> Result<()> {
    let (gap_tol, lift_tol) = (ctx.tol("gap"), ctx.tol("lift"));
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.exponent();
        let (nu, map) = match ctx.rng.random_range(0..3) {
            0 => (ctx.measure(n, 6, 2.0), PlaneMap::Translation(ctx.coords(2 * n, 2.0))),
            1 => (
                ctx.measure(n, 6, 2.0),
                PlaneMap::Dilation(ctx.rng.random_range(0.0..3.0)),
            ),
            _ => {
                // Equal uniform masses make the plane optimum a permutation.
                let k = ctx.rng.random_range(1..=5);
                let (nu, target) = (ctx.uniform(n, k, 2.0), ctx.uniform(n, k, 2.0));
                let map = optimal_plane_map(&nu, &target, p)?;
                (nu, map)
            }
        };
        let cert = certify_lift(&nu, &map, p)?;
        let implied = cert.plane_gap.abs() > gap_tol || cert.lifted_gap.abs() <= gap_tol;
        ctx.check(if implied { 0.0 } else { cert.lifted_gap.abs() }, gap_tol, || {
            measure_json(&nu)
        });
        ctx.check(cert.plane_gap.abs(), gap_tol, || measure_json(&nu));
        let scale = cert.plane_map_cost.max(f64::MIN_POSITIVE);
        ctx.check(
            (cert.plane_map_cost - cert.lifted_map_cost).abs() / scale,
            lift_tol,
            || measure_json(&nu),
        );
    }
    Ok(())
}

fn rigidity_projection_parametrization(ctx: &mut Ctx) -> Result<()> {
    let u = 1.0;
    let mu = DiscreteMeasure::uniform(vec![
        HeisenbergPoint::planar(u, 0.0, 0.0),
        HeisenbergPoint::planar(0.0, u, 0.0),
    ])?;
    let diag = VerticalLine::planar(u, u);
    let expected = two_point_measure(&TwoPointParams {
        line: diag.clone(),
        m: 0.0,
        sigma: 2.0,
        r: 0.0,
    })?;
    let projected = project_measure(&mu, &diag)?.projected;
    ctx.expect(projected == expected, || measure_json(&projected));

    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let params = TwoPointParams {
            line: ctx.line(n, 2.0),
            m: ctx.rng.random_range(-5.0..5.0),
            sigma: ctx.rng.random_range(0.01..5.0),
            r: ctx.rng.random_range(-3.0..3.0),
        };
        let m = two_point_measure(&params)?;
        let back = two_point_params(&m)?;
        let dev = relative(back.m, params.m)
            .max(relative(back.sigma, params.sigma))
            .max(relative(back.r, params.r));
        ctx.check(dev, 1e-10, || measure_json(&m));
        let (s, t) = (ctx.rng.random_range(-2.0..2.0), ctx.rng.random_range(-2.0..2.0));
        let composed = exotic_action(&exotic_action(&params, s), t);
        ctx.check(relative(composed.r, exotic_action(&params, s + t).r), 1e-12, || {
            measure_json(&m)
        });
    }
    Ok(())
}

fn rigidity_step4(ctx: &mut Ctx) -> Result<()> {
    for k in 1..100 {
        let alpha = k as f64 / 100.0;
        let report = step4_certificate(alpha)?;
        ctx.expect(report.cost_image > report.cost_mu, || json!({ "alpha": alpha }));
        if k == 50 {
            ctx.check((report.cost_mu - 1.0).abs(), 1e-12, || json!({ "alpha": alpha }));
            ctx.check((report.cost_image - 1.75).abs(), 1e-12, || json!({ "alpha": alpha }));
            ctx.details.insert("cost_mu_at_half".into(), report.cost_mu);
            ctx.details.insert("cost_image_at_half".into(), report.cost_image);
        }
    }
    Ok(())
}

fn rigidity_vertical_translation_gap(ctx: &mut Ctx) -> Result<()> {
    let floor = ctx.tol("gap_floor");
    for trial in 0..ctx.trials() {
        let n = ctx.dim();
        let p = ctx.exponent();
        let (mu1, mu2) = (ctx.axis_measure(n, 4), ctx.axis_measure(n, 4));
        let u = if trial % 2 == 0 {
            HorizontalVector::zero(n)
        } else {
            let dir = ctx.horizontal(n, 1.0);
            let len = ctx.rng.random_range(0.1..2.0) / dir.norm().max(1e-300);
            HorizontalVector {
                u: dir.u.iter().map(|c| c * len).collect(),
                v: dir.v.iter().map(|c| c * len).collect(),
            }
        };
        let gap = vertical_translation_gap(&mu1, &mu2, &u, p)?;
        let witness = || json!([measure_json(&mu1), measure_json(&mu2)]);
        ctx.check((-gap).max(0.0), 1e-9, witness);
        if u.is_zero() {
            ctx.check(gap.abs(), 1e-9, witness);
        } else {
            ctx.expect(gap > floor, witness);
        }
    }
    Ok(())
}

/// `W_q^q` between measures on ℝ by matching quantiles.
fn quantile_cost(a: &[(f64, f64)], b: &[(f64, f64)], q: f64) -> f64 {
    let sort = |s: &[(f64, f64)]| {
        let mut v = s.to_vec();
        v.sort_by(|x, y| x.0.total_cmp(&y.0));
        v
    };
    let (a, b) = (sort(a), sort(b));
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (a[0].1, b[0].1);
    let mut cost = 0.0;
    while i < a.len() && j < b.len() {
        let m = ra.min(rb);
        cost += m * (a[i].0 - b[j].0).abs().powf(q);
        ra -= m;
        rb -= m;
        if ra <= 1e-15 {
            i += 1;
            ra = a.get(i).map_or(0.0, |x| x.1);
        }
        if rb <= 1e-15 {
            j += 1;
            rb = b.get(j).map_or(0.0, |x| x.1);
        }
    }
    cost
}

fn rigidity_line_metric(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol("geometry");
    for _ in 0..ctx.trials() {
        let n = ctx.dim();
        let p = {
            let wide: Vec<f64> = ctx.config.p_values.iter().copied().filter(|p| *p >= 2.0).collect();
            wide.choose(&mut ctx.rng).copied().unwrap_or(4.0)
        };
        let line = ctx.line(n, 2.0);
        let on_line = |ctx: &mut Ctx| -> Result<DiscreteMeasure> {
            let k = ctx.rng.random_range(1..=5);
            let weights = ctx.weights(k);
            let atoms = weights
                .into_iter()
                .map(|w| (line.point_at(ctx.rng.random_range(-3.0..3.0)), w))
                .collect();
            DiscreteMeasure::new(atoms)
        };
        let (mu, nu) = (on_line(ctx)?, on_line(ctx)?);
        let heights = |m: &DiscreteMeasure| m.atoms().iter().map(|a| (a.point.z, a.weight)).collect::<Vec<_>>();
        let lp = solve_wp(&mu, &nu, p, GroundCost::Heisenberg)?.cost_p;
        let oracle = quantile_cost(&heights(&mu), &heights(&nu), p / 2.0);
        ctx.check((lp - oracle).abs() / (1.0 + oracle), tol, || {
            json!([measure_json(&mu), measure_json(&nu)])
        });

        let params = TwoPointParams {
            line: line.clone(),
            m: ctx.rng.random_range(-2.0..2.0),
            sigma: ctx.rng.random_range(0.1..2.0),
            r: ctx.rng.random_range(-1.0..1.0),
        };
        let t = ctx.rng.random_range(0.1..1.0);
        let before = two_point_measure(&params)?;
        let after = two_point_measure(&exotic_action(&params, t))?;
        ctx.expect(wasserstein(&before, &after, p)? > 0.0, || measure_json(&before));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let c = SuiteConfig::parse("# comment\nseed = 7\ntrials=3\np_values=1,2\ndims=1\ntol.gap=1e-7\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.trials, 3);
        assert_eq!(c.p_values, vec![1.0, 2.0]);
        assert_eq!(c.dims, vec![1]);
        assert_eq!(c.tolerance("gap"), 1e-7);
        assert!(SuiteConfig::parse("trials=0").is_err());
        assert!(SuiteConfig::parse("p_values=0.5").is_err());
        assert!(SuiteConfig::parse("bogus=1").is_err());
        assert!(SuiteConfig::parse("tol.unknown=1").is_err());
        assert!(SuiteConfig::parse("tol.gap=-1").is_err());
        assert!(SuiteConfig::parse("no equals sign").is_err());
    }

    #[test]
    fn unknown_selector() {
        assert!(matches!(
            run_suite(&SuiteConfig::default(), "nope"),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn selectors_are_unique() {
        let mut names = selectors();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), PROPERTIES.len());
    }

    #[test]
    fn quantile_oracle_on_shifted_diracs() {
        assert_eq!(quantile_cost(&[(0.0, 1.0)], &[(3.0, 1.0)], 2.0), 9.0);
        assert_eq!(
            quantile_cost(&[(0.0, 0.5), (1.0, 0.5)], &[(1.0, 0.5), (2.0, 0.5)], 1.0),
            1.0
        );
    }
}
