use floquet_core::kicked::eigenphase_sequence;
use floquet_core::spectra::{BScanConfig, BScanContext, BScanResult, Variant};
use rayon::prelude::*;
use serde_json::json;

use super::system::{read_gamma, vectors, System};
use super::{Ctx, Job, MAX_CELLS};
use crate::config::Params;
use crate::error::{LabError, LabResult};
use crate::table::{jnum, jopt, Artifact, Cell, Table};

const MAX_DIM: usize = 1 << 22;

pub struct BScanJob {
    sys: System,
    cfg: BScanConfig,
    dim: usize,
}

impl BScanJob {
    pub fn prepare(p: &mut Params) -> LabResult<Self> {
        let sys = System::read(p)?;
        let gamma = read_gamma(p, 0.75)?;
        let ladder = p.usize_list_or("ladder", &[1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14, 1 << 15, 1 << 16])?;
        if ladder.is_empty() {
            return Err(LabError::Config("N ladder is empty".into()));
        }
        let x_grid = match p.raw("x_grid") {
            Some(_) => p.f64_list_or("x_grid", &[])?,
            None => BScanConfig::midpoint_grid(p.usize_or("x_points", 64)?),
        };
        let variant_name = p.str_or("variant", "combescure")?;
        let variant =
            Variant::parse(&variant_name).ok_or_else(|| LabError::Config(format!("unknown variant `{variant_name}`")))?;
        let mut cfg = BScanConfig::new(x_grid, ladder, gamma, variant).map_err(LabError::config)?;
        cfg.growth_slope = p.f64_or("growth_slope", cfg.growth_slope)?;
        cfg.saturation_tol = p.f64_or("saturation_tol", cfg.saturation_tol)?;
        let dim = p.usize_or("dim", cfg.max_truncation() + 1)?;
        if dim > MAX_DIM {
            return Err(LabError::Resource(format!("dim {dim} exceeds {MAX_DIM}")));
        }
        if dim < cfg.max_truncation() {
            return Err(LabError::Config(format!("dim {dim} is below the largest truncation {}", cfg.max_truncation())));
        }
        if cfg.x_grid.len().saturating_mul(cfg.ladder.len()) > MAX_CELLS {
            return Err(LabError::Resource("x grid times ladder exceeds 10^7 rows".into()));
        }
        Ok(Self { sys, cfg, dim })
    }
}

impl Job for BScanJob {
    fn compute(&self, ctx: &Ctx) -> LabResult<Vec<Artifact>> {
        let alphas = self.sys.alphas(self.dim)?;
        let thetas = eigenphase_sequence(&alphas, self.sys.period, self.sys.hbar).map_err(LabError::numeric)?;
        let psi = vectors(self.cfg.gamma, self.dim, 1)?.remove(0);
        let scan = BScanContext::new(self.cfg.clone(), &psi, &thetas).map_err(LabError::numeric)?;
        let parts: Vec<_> = ctx.pool.install(|| self.cfg.x_grid.par_iter().map(|&x| scan.scan_x(x)).collect());
        let mut result = BScanResult {
            rows: Vec::new(),
            summaries: Vec::new(),
        };
        for (rows, summary) in parts {
            result.rows.extend(rows);
            result.summaries.push(summary);
        }

        let mut t = Table::new(
            "bscan",
            &["x", "N", "b_inverse", "count_S", "A", "two_N_pow", "N_times_DN", "variant", "reason"],
        );
        let variant = self.cfg.variant.as_str();
        for r in &result.rows {
            t.push(vec![
                r.x.into(),
                r.n.into(),
                Cell::opt_f(r.b_inverse),
                r.count_s.into(),
                r.a.map_or(Cell::Empty, Cell::from),
                r.two_n_pow.into(),
                r.n_times_dn.into(),
                variant.into(),
                r.reason.clone().map_or(Cell::Empty, Cell::S),
            ]);
        }
        let target = 1.0 - self.cfg.gamma;
        let per_x: Vec<_> = result
            .summaries
            .iter()
            .map(|s| {
                json!({
                    "x": jnum(s.x),
                    "b_slope": jopt(s.b_slope),
                    "relative_change": jopt(s.relative_change),
                    "ladder_change": jopt(s.ladder_change),
                    "monotone": s.monotone,
                    "growth": s.growth,
                    "saturation": s.saturation,
                    "a_slope": jopt(s.a_slope),
                    "a_slope_half_width": jopt(s.a_slope_half_width),
                    "skipped": s.skipped,
                })
            })
            .collect();
        let summary = json!({
            "gamma": self.cfg.gamma,
            "variant": variant,
            "dim": self.dim,
            "ladder": self.cfg.ladder,
            "growth_slope": self.cfg.growth_slope,
            "saturation_tol": self.cfg.saturation_tol,
            "growth_fraction": result.growth_fraction(),
            "saturation_fraction": result.saturation_fraction(),
            "a_slope_target": target,
            "growth_with_a_slope_fraction": result.growth_with_a_slope_fraction(target, 0.1),
            "per_x": per_x,
        });
        Ok(vec![t.encode_with_sidecar(ctx.format)?, Artifact::json("bscan.json", &summary)?])
    }
}
