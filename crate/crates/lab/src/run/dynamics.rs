use floquet_core::dynamics::{cesaro_diagnostics, classify_growth, evolve_trace, transition_series};
use floquet_core::kicked::{build_floquet, KickedSystemSpec};
use floquet_core::op::eigenphases;
use floquet_core::{CVector, Complex64, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::system::{read_gamma, read_spec, vectors, System};
use super::{Ctx, Job};
use crate::config::Params;
use crate::error::{LabError, LabResult};
use crate::table::{jnum, jopt, Artifact, Cell, Table};

const MAX_DIM: usize = 4096;
const MAX_STORED: usize = 100_000_000;

pub struct DynamicsJob {
    base: KickedSystemSpec,
    gamma: f64,
    dim: usize,
    rank: usize,
    kicks: usize,
    initial: usize,
    pairs: Vec<(usize, usize)>,
    random_phases: bool,
}

impl DynamicsJob {
    pub fn prepare(p: &mut Params) -> LabResult<Self> {
        let sys = System::read(p)?;
        let gamma = read_gamma(p, 1.5)?;
        let dim = p.usize_or("dim", 256)?;
        let rank = p.usize_or("rank", 1)?;
        if dim > MAX_DIM {
            return Err(LabError::Resource(format!("dim {dim} exceeds {MAX_DIM}")));
        }
        let kicks = p.usize_or("kicks", 1000)?;
        if kicks == 0 {
            return Err(LabError::Config("kicks must be at least 1".into()));
        }
        if kicks.saturating_mul(dim) > MAX_STORED {
            return Err(LabError::Resource("kicks times dim exceeds 10^8 stored populations".into()));
        }
        let initial = p.usize_or("initial", 1)?;
        let pairs = p.pairs_or("pairs", &[(1, 1), (2, 1)])?;
        if pairs.is_empty() {
            return Err(LabError::Config("need at least one (k, l) pair".into()));
        }
        if let Some(&(k, l)) = pairs.iter().find(|&&(k, l)| k >= dim || l >= dim) {
            return Err(LabError::Config(format!("pair ({k}, {l}) out of range for dim {dim}")));
        }
        if initial >= dim {
            return Err(LabError::Config(format!("initial level {initial} out of range for dim {dim}")));
        }
        let random_phases = p.bool_or("random_phases", false)?;
        let base = read_spec(p, &sys, vectors(gamma, dim, rank)?)?;
        let job = Self {
            base,
            gamma,
            dim,
            rank,
            kicks,
            initial,
            pairs,
            random_phases,
        };
        Ok(job)
    }

    fn spec(&self, seed: u64) -> LabResult<KickedSystemSpec> {
        if !self.random_phases {
            return Ok(self.base.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs = self
            .base
            .vectors()
            .iter()
            .map(|v| {
                let ph: Vec<f64> = (0..self.dim).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
                v.with_phases(&ph)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(LabError::numeric)?;
        let b = &self.base;
        Ok(KickedSystemSpec::new(b.poly().clone(), b.period(), b.hbar(), b.strengths().to_vec(), vs)
            .map_err(LabError::numeric)?
            .with_ordering(b.ordering())
            .with_sign(b.sign()))
    }
}

/// Energy at kick `n` rebuilt from the eigen-decomposition of `V`.
fn spectral_energy(coeffs: &[Complex64], e: &floquet_core::EigenphaseDecomposition, alphas: &[f64], n: usize) -> f64 {
    let mut amp = CVector::zeros(alphas.len());
    for (s, c) in coeffs.iter().enumerate() {
        amp += e.vector(s) * (c * Complex64::from_polar(1.0, e.phases()[s] * n as f64));
    }
    alphas.iter().zip(amp.iter()).map(|(a, z)| a * z.norm_sqr()).sum()
}

impl Job for DynamicsJob {
    fn compute(&self, ctx: &Ctx) -> LabResult<Vec<Artifact>> {
        let spec = self.spec(ctx.seed)?;
        let v = build_floquet(&spec).map_err(LabError::numeric)?;
        let alphas = spec.eigenvalues();
        let psi0 = StateVector::basis(self.dim, self.initial).map_err(LabError::config)?;
        let trace = evolve_trace(&v, &psi0, &alphas, self.kicks).map_err(LabError::numeric)?;
        let series = transition_series(&v, &self.pairs, self.kicks).map_err(LabError::numeric)?;
        let cesaro = cesaro_diagnostics(&series[0]).map_err(LabError::numeric)?;
        let classification = classify_growth(&trace);

        let e = eigenphases(&v).map_err(LabError::numeric)?;
        let coeffs: Vec<Complex64> = (0..self.dim).map(|s| e.vectors()[(self.initial, s)].conj()).collect();
        let spectral_diff = [1, self.kicks / 2, self.kicks]
            .iter()
            .map(|&n| {
                let en = trace.energies()[n];
                (spectral_energy(&coeffs, &e, &alphas, n) - en).abs() / en.abs().max(1.0)
            })
            .fold(0.0, f64::max);

        let mut columns = vec!["n".to_string(), "energy".to_string()];
        columns.extend(self.pairs.iter().map(|(k, l)| format!("p_{k}_{l}")));
        columns.extend(["cesaro_avg".to_string(), "norm_drift".to_string()]);
        let mut t = Table::with_columns("dynamics", columns);
        for n in 0..=self.kicks {
            let mut row: Vec<Cell> = vec![n.into(), trace.energies()[n].into()];
            row.extend(series.iter().map(|s| Cell::F(s[n])));
            row.push(cesaro.averages[n].into());
            row.push((trace.norms()[n] - 1.0).abs().into());
            t.push(row);
        }
        let class = match &classification {
            Ok(c) => json!({
                "label": c.label.as_str(),
                "slope": jnum(c.slope),
                "bounded": c.bounded,
                "heisenberg_time": c.heisenberg_time,
                "fit_window": [c.fit_window.0, c.fit_window.1],
            }),
            Err(err) => json!({ "error": err.to_string() }),
        };
        let summary = json!({
            "dim": self.dim,
            "rank": self.rank,
            "gamma": self.gamma,
            "lambda": self.base.strengths(),
            "kicks": self.kicks,
            "initial": self.initial,
            "cesaro_pair": [self.pairs[0].0, self.pairs[0].1],
            "classification": class,
            "max_energy": jnum(trace.energies().iter().cloned().fold(f64::MIN, f64::max)),
            "max_population_sum_deviation": jnum(trace.max_population_sum_deviation()),
            "max_norm_drift": jnum(trace.max_norm_drift()),
            "spectral_path_max_rel_diff": jnum(spectral_diff),
            "cesaro_sum_slope": jopt(cesaro.sum_slope),
            "cesaro_average_slope": jopt(cesaro.average_slope),
        });
        Ok(vec![t.encode_with_sidecar(ctx.format)?, Artifact::json("dynamics.json", &summary)?])
    }
}
