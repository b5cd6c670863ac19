use std::f64::consts::PI;

use floquet_core::cantor::{cantor_value, in_cantor_set};
use floquet_core::kicked::build_kicked_top_spin1;
use floquet_core::spectra::{delta_eps, delta_eps_series, phi_tilde, phi_tilde_parts, DeltaKernel};
use floquet_core::StateVector;
use rayon::prelude::*;

use super::{Ctx, Job, MAX_CELLS};
use crate::config::Params;
use crate::error::{LabError, LabResult};
use crate::table::{Artifact, Cell, Table};

fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

fn check_cells(cells: usize) -> LabResult<()> {
    if cells > MAX_CELLS {
        return Err(LabError::Resource(format!("grid of {cells} cells exceeds 10^7")));
    }
    Ok(())
}

pub struct CantorJob {
    points: usize,
    depth: usize,
}

impl CantorJob {
    pub fn prepare(p: &mut Params) -> LabResult<Self> {
        let points = p.usize_or("points", 2048)?;
        let depth = p.usize_or("depth", floquet_core::cantor::DEFAULT_DEPTH)?;
        if points < 2 || depth == 0 {
            return Err(LabError::Config("need points >= 2 and depth >= 1".into()));
        }
        check_cells(points)?;
        Ok(Self { points, depth })
    }
}

impl Job for CantorJob {
    fn compute(&self, ctx: &Ctx) -> LabResult<Vec<Artifact>> {
        let xs = grid(0.0, 1.0, self.points);
        let rows = ctx
            .pool
            .install(|| {
                xs.par_iter()
                    .map(|&x| Ok::<_, floquet_core::Error>((x, cantor_value(x, self.depth)?, in_cantor_set(x, self.depth)?)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .map_err(LabError::numeric)?;
        let mut t = Table::new("cantor", &["x", "alpha", "in_set"]);
        for (x, a, m) in rows {
            t.push(vec![x.into(), a.into(), m.into()]);
        }
        Ok(vec![t.encode(ctx.format)?])
    }
}

pub struct PhiTildeJob {
    omegas: Vec<f64>,
    kappas: Vec<f64>,
}

impl PhiTildeJob {
    pub fn prepare(p: &mut Params) -> LabResult<Self> {
        let (w0, w1) = (p.f64_or("omega_min", -10.0)?, p.f64_or("omega_max", 10.0)?);
        let (k0, k1) = (p.f64_or("kappa_min", 0.0)?, p.f64_or("kappa_max", 1.0)?);
        let nw = p.usize_or("omega_points", 2001)?;
        let nk = p.usize_or("kappa_points", 101)?;
        if nw == 0 || nk == 0 || !(w0.is_finite() && w1.is_finite() && w0 <= w1) {
            return Err(LabError::Config("omega grid must be nonempty and ordered".into()));
        }
        if !(0.0 <= k0 && k0 <= k1 && k1 <= 1.0) {
            return Err(LabError::Config(format!("kappa range [{k0}, {k1}] must lie within [0, 1]")));
        }
        check_cells(nw.saturating_mul(nk))?;
        Ok(Self {
            omegas: grid(w0, w1, nw),
            kappas: grid(k0, k1, nk),
        })
    }
}

impl Job for PhiTildeJob {
    fn compute(&self, ctx: &Ctx) -> LabResult<Vec<Artifact>> {
        let blocks = ctx
            .pool
            .install(|| {
                self.omegas
                    .par_iter()
                    .map(|&w| {
                        self.kappas
                            .iter()
                            .map(|&k| {
                                let (n, d) = phi_tilde_parts(w, k)?;
                                Ok((w, k, n, d, phi_tilde(w, k)?))
                            })
                            .collect::<Result<Vec<_>, floquet_core::Error>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .map_err(LabError::numeric)?;
        let mut t = Table::new("phitilde", &["omega", "kappa", "numerator", "denominator", "phi"]);
        for (w, k, n, d, phi) in blocks.into_iter().flatten() {
            t.push(vec![w.into(), k.into(), n.into(), d.into(), phi.into()]);
        }
        Ok(vec![t.encode(ctx.format)?])
    }
}

pub struct DeltaEpsJob {
    epsilons: Vec<f64>,
    ts: Vec<f64>,
    terms: usize,
}

impl DeltaEpsJob {
    pub fn prepare(p: &mut Params) -> LabResult<Self> {
        let epsilons = p.f64_list_or("epsilons", &[1.0, 0.1, 0.01])?;
        if epsilons.is_empty() || epsilons.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(LabError::Config("epsilons must be a nonempty list of positive numbers".into()));
        }
        let t_points = p.usize_or("t_points", 201)?;
        // 0 picks enough Fourier terms for e^{-eps M} below 1e-16.
        let terms = p.usize_or("series_terms", 0)?;
        if t_points < 2 {
            return Err(LabError::Config("t_points must be at least 2".into()));
        }
        check_cells(t_points.saturating_mul(epsilons.len()))?;
        Ok(Self {
            epsilons,
            ts: grid(-PI, PI, t_points),
            terms,
        })
    }
}

impl Job for DeltaEpsJob {
    fn compute(&self, ctx: &Ctx) -> LabResult<Vec<Artifact>> {
        let mut t = Table::new("deltaeps", &["kind", "epsilon", "t", "value", "reference", "abs_error"]);
        let per_eps = ctx
            .pool
            .install(|| {
                self.epsilons
                    .par_iter()
                    .map(|&eps| {
                        let terms = if self.terms == 0 { (37.0 / eps).ceil() as usize } else { self.terms };
                        let kernel = self
                            .ts
                            .iter()
                            .map(|&x| Ok((x, delta_eps(x, eps)?, delta_eps_series(x, eps, terms)?)))
                            .collect::<Result<Vec<_>, floquet_core::Error>>()?;
                        let k = DeltaKernel::new(eps)?;
                        Ok((eps, kernel, k.mass()?.value, k.cos_moment()?.value))
                    })
                    .collect::<Result<Vec<_>, floquet_core::Error>>()
            })
            .map_err(LabError::numeric)?;
        for (eps, kernel, mass, cos_moment) in per_eps {
            for (x, v, r) in kernel {
                t.push(vec!["kernel".into(), eps.into(), x.into(), v.into(), r.into(), (v - r).abs().into()]);
            }
            let decay = (-eps).exp();
            t.push(vec!["mass".into(), eps.into(), Cell::Empty, mass.into(), 1.0.into(), (mass - 1.0).abs().into()]);
            t.push(vec![
                "cos_moment".into(),
                eps.into(),
                Cell::Empty,
                cos_moment.into(),
                decay.into(),
                (cos_moment - decay).abs().into(),
            ]);
        }
        Ok(vec![t.encode(ctx.format)?])
    }
}

pub struct TopDemoJob {
    c1: f64,
    c4: f64,
    period: f64,
    kicks: usize,
    initial: usize,
}

impl TopDemoJob {
    pub fn prepare(p: &mut Params) -> LabResult<Self> {
        let job = Self {
            c1: p.f64_or("c1", 1.0)?,
            c4: p.f64_or("c4", 0.5)?,
            period: p.f64_or("period", 1.0)?,
            kicks: p.usize_or("kicks", 100)?,
            initial: p.usize_or("initial", 1)?,
        };
        if job.initial > 2 {
            return Err(LabError::Config("initial must be 0, 1 or 2".into()));
        }
        check_cells(job.kicks)?;
        build_kicked_top_spin1(job.c1, job.c4, job.period).map_err(LabError::config)?;
        Ok(job)
    }
}

impl Job for TopDemoJob {
    fn compute(&self, ctx: &Ctx) -> LabResult<Vec<Artifact>> {
        let v = build_kicked_top_spin1(self.c1, self.c4, self.period).map_err(LabError::numeric)?;
        let mut psi = StateVector::basis(3, self.initial).map_err(LabError::numeric)?;
        let mut t = Table::new("topdemo", &["n", "p0", "p1", "p2"]);
        for n in 0..=self.kicks {
            if n > 0 {
                psi = v.apply(&psi).map_err(LabError::numeric)?;
            }
            let p = psi.populations();
            t.push(vec![n.into(), p[0].into(), p[1].into(), p[2].into()]);
        }
        Ok(vec![t.encode(ctx.format)?])
    }
}
