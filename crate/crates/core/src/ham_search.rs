//! Numerical search for coupling constants of conventional spin-interaction
//! templates that make the three-spin evolution act as XOR into C.
//!
//! Parameter vectors have a fixed layout: pair couplings first, pairs in the
//! order (A,B), (A,C), (B,C); for [`ModelKind::GeneralTwoSpin`] each pair
//! holds nine entries `J_{xx}, J_{xy}, J_{xz}, J_{yx}, …, J_{zz}` (first axis on
//! the earlier spin). With fields enabled, nine single-spin coefficients
//! follow, spin-major (A, B, C) and axis order (x, y, z).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gate_verify::{fidelity_unchecked, functional_fidelity};
use crate::linalg::{evolution_operator, format::fmt_f64, ComplexMatrix, EvolutionConfig};
use crate::pauli::{reconstruct, PauliAxis, PauliDecomposition, PauliString};

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
const AXES: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// z⊗z per pair.
    Ising,
    /// Equal x⊗x + y⊗y per pair.
    Xy,
    /// Equal x⊗x + y⊗y + z⊗z per pair.
    Heisenberg,
    /// All nine tensor components per pair.
    GeneralTwoSpin,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Ising,
        ModelKind::Xy,
        ModelKind::Heisenberg,
        ModelKind::GeneralTwoSpin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Ising => "ising",
            ModelKind::Xy => "xy",
            ModelKind::Heisenberg => "heisenberg",
            ModelKind::GeneralTwoSpin => "general",
        }
    }

    fn params_per_pair(self) -> usize {
        match self {
            ModelKind::GeneralTwoSpin => 9,
            _ => 1,
        }
    }

    /// Axis pairs sharing the single coefficient of a restricted model.
    fn shared_axes(self) -> &'static [PauliAxis] {
        match self {
            ModelKind::Ising => &[PauliAxis::Z],
            ModelKind::Xy => &[PauliAxis::X, PauliAxis::Y],
            ModelKind::Heisenberg => &[PauliAxis::X, PauliAxis::Y, PauliAxis::Z],
            ModelKind::GeneralTwoSpin => &[],
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ising" => Ok(ModelKind::Ising),
            "xy" => Ok(ModelKind::Xy),
            "heisenberg" => Ok(ModelKind::Heisenberg),
            "general" | "generaltwospin" | "general-two-spin" => Ok(ModelKind::GeneralTwoSpin),
            other => Err(format!("unknown coupling model {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CouplingModel {
    pub kind: ModelKind,
    /// Allow single-spin σ terms on each spin.
    pub include_fields: bool,
}

impl CouplingModel {
    pub fn new(kind: ModelKind, include_fields: bool) -> Self {
        CouplingModel {
            kind,
            include_fields,
        }
    }

    pub fn param_count(&self) -> usize {
        3 * self.kind.params_per_pair() + if self.include_fields { 9 } else { 0 }
    }

    /// Strings that may carry a nonzero coefficient.
    pub fn allowed(&self, s: &PauliString) -> bool {
        let axes = s.axes();
        match s.weight() {
            1 => self.include_fields,
            2 => {
                let active: Vec<PauliAxis> = axes
                    .iter()
                    .copied()
                    .filter(|&a| a != PauliAxis::I)
                    .collect();
                match self.kind {
                    ModelKind::GeneralTwoSpin => true,
                    kind => active[0] == active[1] && kind.shared_axes().contains(&active[0]),
                }
            }
            _ => false,
        }
    }
}

/// Coupling coefficients in units of ħ/Δt, laid out as described in the module docs.
#[derive(Debug, Clone, PartialEq)]
pub struct TemplateParams(pub Vec<f64>);

impl TemplateParams {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Reads the parameters of `model` off a decomposition; fails if the
    /// decomposition holds a string the model cannot represent, or if a
    /// restricted model's shared coefficient differs between its axes.
    pub fn from_decomposition(model: &CouplingModel, d: &PauliDecomposition) -> Result<Self> {
        for (s, c) in d.iter() {
            if !model.allowed(s) || c.im.abs() > crate::pauli::WEIGHT_CLAIM_TOL {
                return Err(Error::StringNotInModel(s.to_string()));
            }
        }
        let mut values = Vec::with_capacity(model.param_count());
        for &(i, j) in &PAIRS {
            match model.kind {
                ModelKind::GeneralTwoSpin => {
                    for &ai in &AXES {
                        for &aj in &AXES {
                            values.push(d.real_coeff(&pair_string(i, ai, j, aj)));
                        }
                    }
                }
                kind => {
                    let shared = kind.shared_axes();
                    let first = d.real_coeff(&pair_string(i, shared[0], j, shared[0]));
                    for &a in &shared[1..] {
                        let other = d.real_coeff(&pair_string(i, a, j, a));
                        if (other - first).abs() > crate::pauli::WEIGHT_CLAIM_TOL {
                            return Err(Error::StringNotInModel(
                                pair_string(i, a, j, a).to_string(),
                            ));
                        }
                    }
                    values.push(first);
                }
            }
        }
        if model.include_fields {
            for site in 0..3 {
                for &a in &AXES {
                    values.push(d.real_coeff(&site_string(site, a)));
                }
            }
        }
        Ok(TemplateParams(values))
    }
}

fn pair_string(i: usize, ai: PauliAxis, j: usize, aj: PauliAxis) -> PauliString {
    let mut axes = [PauliAxis::I; 3];
    axes[i] = ai;
    axes[j] = aj;
    PauliString(axes)
}

fn site_string(site: usize, a: PauliAxis) -> PauliString {
    let mut axes = [PauliAxis::I; 3];
    axes[site] = a;
    PauliString(axes)
}

pub fn to_decomposition(
    model: &CouplingModel,
    params: &TemplateParams,
) -> Result<PauliDecomposition> {
    let v = params.values();
    if v.len() != model.param_count() {
        return Err(Error::LengthMismatch {
            expected: model.param_count(),
            found: v.len(),
        });
    }
    let mut terms = Vec::new();
    let mut k = 0;
    for &(i, j) in &PAIRS {
        match model.kind {
            ModelKind::GeneralTwoSpin => {
                for &ai in &AXES {
                    for &aj in &AXES {
                        terms.push((pair_string(i, ai, j, aj), v[k]));
                        k += 1;
                    }
                }
            }
            kind => {
                for &a in kind.shared_axes() {
                    terms.push((pair_string(i, a, j, a), v[k]));
                }
                k += 1;
            }
        }
    }
    if model.include_fields {
        for site in 0..3 {
            for &a in &AXES {
                terms.push((site_string(site, a), v[k]));
                k += 1;
            }
        }
    }
    Ok(PauliDecomposition::from_real_terms(terms))
}

fn evolve(
    model: &CouplingModel,
    params: &TemplateParams,
    cfg: &EvolutionConfig,
) -> Result<ComplexMatrix> {
    let d = to_decomposition(model, params)?;
    evolution_operator(&reconstruct(&d), cfg)
}

/// `1 − functional_fidelity` of the evolution generated by the template.
pub fn objective(
    model: &CouplingModel,
    params: &TemplateParams,
    cfg: &EvolutionConfig,
) -> Result<f64> {
    let u = evolve(model, params, cfg)?;
    Ok(1.0 - functional_fidelity(&u)?)
}

/// Objective without input validation, for the inner optimization loop.
fn objective_fast(model: &CouplingModel, values: &[f64], cfg: &EvolutionConfig) -> f64 {
    let params = TemplateParams(values.to_vec());
    match evolve(model, &params, cfg) {
        Ok(u) => 1.0 - fidelity_unchecked(&u),
        Err(_) => 1.0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadOptions {
    /// Total objective evaluations allowed across all simplex cycles.
    pub max_evals: usize,
    /// A cycle ends when every vertex lies within this max-norm distance of the best one.
    pub simplex_tol: f64,
    /// A cycle ends when the objective values on the simplex differ by less than this.
    pub function_tol: f64,
    /// Per-coordinate offset of the initial simplex vertices.
    pub initial_step: f64,
    /// Evaluations after which the simplex is rebuilt around its best vertex.
    /// `None` runs a single cycle (plain Nelder–Mead).
    pub restart_interval: Option<usize>,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            max_evals: 20_000,
            simplex_tol: 1e-10,
            function_tol: 1e-12,
            initial_step: 0.25,
            restart_interval: None,
        }
    }
}

impl NelderMeadOptions {
    /// Settings used by the coupling search: the simplex is rebuilt every
    /// 1000 evaluations, so it cannot stay collapsed on a kink of the
    /// worst-case fidelity.
    pub fn for_search() -> Self {
        NelderMeadOptions {
            max_evals: 20_000,
            restart_interval: Some(1_000),
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_evals == 0 {
            return Err(Error::InvalidOptions("max_evals must be positive".into()));
        }
        if self.restart_interval == Some(0) {
            return Err(Error::InvalidOptions(
                "restart_interval must be positive".into(),
            ));
        }
        for (name, v) in [
            ("simplex_tol", self.simplex_tol),
            ("function_tol", self.function_tol),
            ("initial_step", self.initial_step),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidOptions(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    /// False when the run stopped on the evaluation budget.
    pub converged: bool,
}

const REFLECTION: f64 = 1.0;
const EXPANSION: f64 = 2.0;
const CONTRACTION: f64 = 0.5;
const SHRINK: f64 = 0.5;

enum CycleEnd {
    Converged,
    Budget,
}

/// Nelder–Mead with reflection 1, expansion 2, contraction 0.5 and shrink 0.5.
///
/// With `restart_interval` set, the simplex is rebuilt around the best point
/// whenever a cycle uses up its interval or converges; the run converges once
/// a cycle converges without improving on the previous best by more than
/// `function_tol`.
pub fn nelder_mead<F>(mut f: F, start: &[f64], opts: &NelderMeadOptions) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> f64,
{
    opts.validate()?;
    if start.is_empty() {
        return Err(Error::InvalidOptions(
            "start point must be non-empty".into(),
        ));
    }
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut point = start.to_vec();
    let mut value = f64::INFINITY;
    loop {
        let budget = match opts.restart_interval {
            Some(k) => (evals + k).min(opts.max_evals),
            None => opts.max_evals,
        };
        let (p, v, end) = simplex_cycle(&mut eval, &mut evals, &point, opts, budget);
        let improved = value - v;
        let finished_budget = evals >= opts.max_evals;
        if v <= value {
            point = p;
            value = v;
        }
        match end {
            CycleEnd::Converged
                if opts.restart_interval.is_none() || improved <= opts.function_tol =>
            {
                return Ok(Minimum {
                    point,
                    value,
                    evaluations: evals,
                    converged: true,
                });
            }
            _ if finished_budget || opts.restart_interval.is_none() => {
                return Ok(Minimum {
                    point,
                    value,
                    evaluations: evals,
                    converged: false,
                });
            }
            _ => {}
        }
    }
}

fn simplex_cycle<E>(
    eval: &mut E,
    evals: &mut usize,
    start: &[f64],
    opts: &NelderMeadOptions,
    budget: usize,
) -> (Vec<f64>, f64, CycleEnd)
where
    E: FnMut(&[f64], &mut usize) -> f64,
{
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for k in 0..n {
        let mut v = start.to_vec();
        v[k] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, evals)).collect();

    let end = loop {
        // stable sort keeps ties in insertion order, so runs are reproducible
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let best = &simplex[0];
        let diameter = simplex[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(best)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        let spread = values[n] - values[0];
        if diameter < opts.simplex_tol || spread < opts.function_tol {
            break CycleEnd::Converged;
        }
        if *evals >= budget {
            break CycleEnd::Budget;
        }

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= n as f64);

        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(REFLECTION);
        let f_r = eval(&reflected, evals);
        if f_r < values[0] {
            let expanded = along(REFLECTION * EXPANSION);
            let f_e = eval(&expanded, evals);
            if f_e < f_r {
                simplex[n] = expanded;
                values[n] = f_e;
            } else {
                simplex[n] = reflected;
                values[n] = f_r;
            }
            continue;
        }
        if f_r < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_r;
            continue;
        }

        let (contracted, f_c, accept) = if f_r < values[n] {
            let x = along(REFLECTION * CONTRACTION);
            let fx = eval(&x, evals);
            let ok = fx <= f_r;
            (x, fx, ok)
        } else {
            let x = along(-CONTRACTION);
            let fx = eval(&x, evals);
            let ok = fx < values[n];
            (x, fx, ok)
        };
        if accept {
            simplex[n] = contracted;
            values[n] = f_c;
            continue;
        }

        let best = simplex[0].clone();
        for k in 1..=n {
            let v: Vec<f64> = simplex[k]
                .iter()
                .zip(&best)
                .map(|(x, b)| b + SHRINK * (x - b))
                .collect();
            values[k] = eval(&v, evals);
            simplex[k] = v;
        }
    };

    let value = values[0];
    (simplex.swap_remove(0), value, end)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub model: CouplingModel,
    pub best_params: TemplateParams,
    pub best_fidelity: f64,
    pub objective_evaluations: usize,
    pub restarts_used: usize,
    pub converged: bool,
    pub seed: u64,
}

impl SearchResult {
    pub fn best_hamiltonian(&self) -> PauliDecomposition {
        to_decomposition(&self.model, &self.best_params)
            .expect("search keeps params consistent with the model")
    }

    /// Line-oriented text form.
    pub fn to_text(&self) -> String {
        let params: Vec<String> = self
            .best_params
            .values()
            .iter()
            .map(|&x| fmt_f64(x))
            .collect();
        format!(
            "# search-result v1\nmodel={}\ninclude_fields={}\nseed={}\nrestarts={}\nevaluations={}\nconverged={}\nbest_fidelity={}\nparams={}\n",
            self.model.kind,
            self.model.include_fields,
            self.seed,
            self.restarts_used,
            self.objective_evaluations,
            self.converged,
            fmt_f64(self.best_fidelity),
            params.join(" "),
        )
    }
}

/// Uniform starting points in `[−π, π]^n`, drawn in order from one seeded stream.
pub fn starting_points(dim: usize, n_restarts: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_restarts)
        .map(|_| {
            (0..dim)
                .map(|_| rng.gen_range(-std::f64::consts::PI..=std::f64::consts::PI))
                .collect()
        })
        .collect()
}

/// Minimizes the objective of `model` from a given start.
pub fn minimize_from(
    model: &CouplingModel,
    cfg: &EvolutionConfig,
    start: &[f64],
    opts: &NelderMeadOptions,
) -> Result<Minimum> {
    if start.len() != model.param_count() {
        return Err(Error::LengthMismatch {
            expected: model.param_count(),
            found: start.len(),
        });
    }
    nelder_mead(|x| objective_fast(model, x, cfg), start, opts)
}

/// Runs Nelder–Mead from `n_restarts` seeded random starts (in parallel) and
/// keeps the best; ties go to the lowest restart index.
pub fn multi_start_search(
    model: &CouplingModel,
    cfg: &EvolutionConfig,
    n_restarts: usize,
    seed: u64,
    opts: &NelderMeadOptions,
) -> Result<SearchResult> {
    if n_restarts == 0 {
        return Err(Error::InvalidOptions(
            "n_restarts must be at least 1".into(),
        ));
    }
    opts.validate()?;
    let starts = starting_points(model.param_count(), n_restarts, seed);
    let runs: Vec<Minimum> = starts
        .par_iter()
        .map(|s| minimize_from(model, cfg, s, opts))
        .collect::<Result<_>>()?;

    let total_evals = runs.iter().map(|r| r.evaluations).sum();
    let best = runs
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .map(|(_, r)| r)
        .expect("n_restarts >= 1");

    let best_params = TemplateParams(best.point.clone());
    // Recompute from scratch through the validated path.
    let best_fidelity = functional_fidelity(&evolve(model, &best_params, cfg)?)?;
    Ok(SearchResult {
        model: *model,
        best_params,
        best_fidelity,
        objective_evaluations: total_evals,
        restarts_used: n_restarts,
        converged: best.converged,
        seed,
    })
}
