use floquet_core::numtheory::{
    continued_fraction, discrepancy_report, exponent_fit, sequence_mod1, type_estimate, weyl_sum, IrrationalSpec,
};
use rayon::prelude::*;
use serde_json::json;
use toml::Value;

use super::{log_ladder, Ctx, Job};
use crate::config::Params;
use crate::error::{LabError, LabResult};
use crate::table::{jnum, Artifact, Cell, Table};

const MIN_DIGITS: f64 = 9.0;
const TYPE_Q_MAX: u64 = 1_000_000;

/// `beta`: "golden", "sqrt2", "p/q", a decimal string or number, or a list
/// of partial quotients `[a_1, a_2, …]`. `beta_label` renames it.
fn read_beta(p: &mut Params, default: &str) -> LabResult<IrrationalSpec> {
    let raw = p.raw("beta").unwrap_or_else(|| Value::String(default.into()));
    let given = p.raw("beta_label").and_then(|v| v.as_str().map(str::to_string));
    let spec = match &raw {
        Value::String(s) => {
            let label = given.clone().unwrap_or_else(|| s.clone());
            match s.as_str() {
                "golden" => Ok(IrrationalSpec::golden()),
                "sqrt2" => Ok(IrrationalSpec::sqrt2()),
                _ => match s.split_once('/') {
                    Some((a, b)) => {
                        let a = a.trim().parse::<i64>().map_err(|_| LabError::Config(format!("bad ratio `{s}`")))?;
                        let b = b.trim().parse::<u64>().map_err(|_| LabError::Config(format!("bad ratio `{s}`")))?;
                        IrrationalSpec::ratio(a, b, &label)
                    }
                    None => {
                        let x = s.parse::<f64>().map_err(|_| LabError::Config(format!("unknown beta `{s}`")))?;
                        Ok(IrrationalSpec::from_f64(x, &label))
                    }
                },
            }
        }
        Value::Float(_) | Value::Integer(_) => {
            let x = raw.as_float().unwrap_or_else(|| raw.as_integer().unwrap_or(0) as f64);
            Ok(IrrationalSpec::from_f64(x, &given.clone().unwrap_or_else(|| format!("{x:?}"))))
        }
        Value::Array(a) => {
            let q: Option<Vec<u64>> = a.iter().map(|v| v.as_integer().and_then(|i| u64::try_from(i).ok())).collect();
            let q = q.ok_or_else(|| LabError::Config("beta quotients must be positive integers".into()))?;
            IrrationalSpec::from_quotients(q, &given.clone().unwrap_or_else(|| "quotients".into()))
        }
        _ => return Err(LabError::Config("unsupported beta value".into())),
    }
    .map_err(LabError::config)?;
    // Named constants keep their short labels unless renamed.
    Ok(match given {
        Some(l) if l != spec.label() => relabel(spec, &l),
        _ => spec,
    })
}

fn relabel(spec: IrrationalSpec, label: &str) -> IrrationalSpec {
    match spec.repr() {
        floquet_core::numtheory::IrrationalRepr::Quotients(q) => {
            IrrationalSpec::from_quotients(q.clone(), label).expect("already validated")
        }
        _ => IrrationalSpec::from_dd(spec.value(), spec.precision(), label),
    }
}

fn read_j(p: &mut Params, default: usize) -> LabResult<u32> {
    let j = p.usize_or("j", default)?;
    if !(1..=16).contains(&j) {
        return Err(LabError::Config(format!("j must lie in 1..=16, got {j}")));
    }
    Ok(j as u32)
}

fn check_ladder(ladder: &[u64], j: u32, h: u64) -> LabResult<()> {
    if ladder.is_empty() {
        return Err(LabError::Config("N ladder is empty".into()));
    }
    for &n in ladder {
        if n == 0 {
            return Err(LabError::Config("N must be at least 1".into()));
        }
        let big = (n as u128).checked_pow(j).and_then(|v| v.checked_mul(h as u128));
        if big.is_none_or(|v| v > 1u128 << 100) {
            return Err(LabError::Config(format!("h N^j exceeds 2^100 at N = {n}")));
        }
        if n > 100_000_000 {
            return Err(LabError::Resource(format!("N = {n} exceeds 10^8")));
        }
    }
    Ok(())
}

pub struct DiscrepancyJob {
    j: u32,
    beta: IrrationalSpec,
    ladder: Vec<u64>,
    m: u64,
}

impl DiscrepancyJob {
    pub fn prepare(p: &mut Params) -> LabResult<Self> {
        let j = read_j(p, 1)?;
        let beta = read_beta(p, "golden")?;
        let ladder: Vec<u64> = p
            .usize_list_or("ladder", &(10..=16).map(|k| 1usize << k).collect::<Vec<_>>())?
            .into_iter()
            .map(|n| n as u64)
            .collect();
        check_ladder(&ladder, j, 1)?;
        let m = p.usize_or("et_m", 64)? as u64;
        if m == 0 {
            return Err(LabError::Config("et_m must be at least 1".into()));
        }
        Ok(Self { j, beta, ladder, m })
    }
}

impl Job for DiscrepancyJob {
    fn compute(&self, ctx: &Ctx) -> LabResult<Vec<Artifact>> {
        let value = self.beta.value();
        let reports = ctx.pool.install(|| {
            self.ladder
                .par_iter()
                .map(|&n| discrepancy_report(&sequence_mod1(self.j, value, n)?, self.m))
                .collect::<Result<Vec<_>, _>>()
        });
        let reports = reports.map_err(LabError::numeric)?;
        let series: Vec<(f64, f64)> = reports.iter().map(|r| (r.n as f64, r.d_n)).collect();
        let fit = exponent_fit(&series);
        let rational = continued_fraction(&self.beta, 64).map_err(LabError::numeric)?.rational;
        let eta = type_estimate(&self.beta, TYPE_Q_MAX).map_err(LabError::numeric)?;

        let mut t = Table::new(
            "discrepancy",
            &["j", "beta_label", "N", "D_N", "ET_bound", "fitted_slope", "rational", "digits_ok"],
        );
        let slope = fit.as_ref().ok().map(|f| f.slope);
        for r in &reports {
            let digits = self.beta.mod1_digits(self.j, r.n as u64);
            t.push(vec![
                self.j.into(),
                self.beta.label().into(),
                r.n.into(),
                r.d_n.into(),
                r.et_bound.into(),
                Cell::opt_f(slope),
                rational.into(),
                (digits >= MIN_DIGITS).into(),
            ]);
        }
        let reference = if eta.eta_hat.is_finite() && eta.eta_hat > 0.0 {
            Some(-1.0 / (eta.eta_hat * self.j as f64))
        } else {
            None
        };
        let summary = json!({
            "j": self.j,
            "beta_label": self.beta.label(),
            "et_m": self.m,
            "fitted_slope": slope.map_or(serde_json::Value::Null, jnum),
            "half_width": fit.as_ref().ok().map(|f| jnum(f.half_width)),
            "fit_error": fit.as_ref().err().map(|e| e.to_string()),
            "eta_hat": jnum(eta.eta_hat),
            "eta_q_max": TYPE_Q_MAX,
            "reference_slope": reference.map(jnum),
            "rational": rational,
        });
        Ok(vec![t.encode_with_sidecar(ctx.format)?, Artifact::json("discrepancy.json", &summary)?])
    }
}

pub struct WeylJob {
    j: u32,
    beta: IrrationalSpec,
    h: u64,
    ladder: Vec<u64>,
}

impl WeylJob {
    pub fn prepare(p: &mut Params) -> LabResult<Self> {
        let j = read_j(p, 2)?;
        let beta = read_beta(p, "sqrt2")?;
        let h = p.usize_or("h", 1)? as u64;
        if h == 0 {
            return Err(LabError::Config("h must be at least 1".into()));
        }
        let ladder: Vec<u64> = match p.raw("ladder") {
            Some(_) => p.usize_list_or("ladder", &[])?.into_iter().map(|n| n as u64).collect(),
            None => log_ladder(100.0, 1e5, 13),
        };
        check_ladder(&ladder, j, h)?;
        Ok(Self { j, beta, h, ladder })
    }
}

impl Job for WeylJob {
    fn compute(&self, ctx: &Ctx) -> LabResult<Vec<Artifact>> {
        let value = self.beta.value();
        let sums = ctx
            .pool
            .install(|| {
                self.ladder
                    .par_iter()
                    .map(|&n| weyl_sum(self.j, value, self.h, n))
                    .collect::<Result<Vec<_>, _>>()
            })
            .map_err(LabError::numeric)?;
        let series: Vec<(f64, f64)> = self
            .ladder
            .iter()
            .zip(&sums)
            .map(|(&n, s)| (n as f64, s.modulus))
            .collect();
        let slope = exponent_fit(&series).ok().map(|f| f.slope);
        let mut t = Table::new(
            "weyl",
            &["j", "beta_label", "h", "N", "S_re", "S_im", "modulus", "fitted_exponent"],
        );
        for (&n, s) in self.ladder.iter().zip(&sums) {
            t.push(vec![
                self.j.into(),
                self.beta.label().into(),
                self.h.into(),
                n.into(),
                s.s.re.into(),
                s.s.im.into(),
                s.modulus.into(),
                Cell::opt_f(slope),
            ]);
        }
        Ok(vec![t.encode(ctx.format)?])
    }
}
