mod aux;
mod bscan;
mod dynamics;
mod numtheory;
mod system;

use rayon::ThreadPool;

use crate::config::{Command, Format, Params};
use crate::error::LabResult;
use crate::table::Artifact;

/// Largest grid any table may have.
pub const MAX_CELLS: usize = 10_000_000;

pub struct Ctx {
    pub pool: ThreadPool,
    pub format: Format,
    pub seed: u64,
}

/// A validated run. Building one reads every parameter; `compute` does the
/// work.
pub trait Job: Sync {
    fn compute(&self, ctx: &Ctx) -> LabResult<Vec<Artifact>>;
}

pub fn prepare(command: Command, p: &mut Params) -> LabResult<Box<dyn Job>> {
    Ok(match command {
        Command::Bscan => Box::new(bscan::BScanJob::prepare(p)?),
        Command::Discrepancy => Box::new(numtheory::DiscrepancyJob::prepare(p)?),
        Command::Weyl => Box::new(numtheory::WeylJob::prepare(p)?),
        Command::Dynamics => Box::new(dynamics::DynamicsJob::prepare(p)?),
        Command::Cantor => Box::new(aux::CantorJob::prepare(p)?),
        Command::Phitilde => Box::new(aux::PhiTildeJob::prepare(p)?),
        Command::Deltaeps => Box::new(aux::DeltaEpsJob::prepare(p)?),
        Command::Topdemo => Box::new(aux::TopDemoJob::prepare(p)?),
    })
}

/// `points` values from `lo` to `hi` inclusive, log-spaced and rounded,
/// duplicates removed.
pub fn log_ladder(lo: f64, hi: f64, points: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0..points)
        .map(|i| {
            let t = if points == 1 { 0.0 } else { i as f64 / (points - 1) as f64 };
            (lo.ln() + t * (hi.ln() - lo.ln())).exp().round() as u64
        })
        .collect();
    out.dedup();
    out
}
