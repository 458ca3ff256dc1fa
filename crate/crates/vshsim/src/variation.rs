//! Misalignment / coupling-degradation maps and Monte-Carlo yield.

use crate::magnetics::{integrate, CoupledStack, DriveSpec, MagError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Shared fraction of two equal disks whose centers are offset by
/// `misalignment_pct` percent of their diameter.
pub fn overlap_fraction(misalignment_pct: f64) -> f64 {
    let d = (misalignment_pct / 100.0).clamp(0.0, 1.0);
    (2.0 / PI) * (d.acos() - d * (1.0 - d * d).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VariationPoint {
    pub misalignment_pct: f64,
    pub j_scale: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub misalignments: Vec<f64>,
    pub j_scales: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            misalignments: vec![0.0, 10.0, 20.0, 30.0, 40.0, 50.0],
            j_scales: vec![0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VariationRow {
    pub misalignment_pct: f64,
    pub j_scale: f64,
    pub switched: bool,
    pub t_switch_ns: Option<f64>,
    pub t_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariationResult {
    pub rows: Vec<VariationRow>,
    /// Switching time at (0 %, 1.0), ns.
    pub nominal_ns: Option<f64>,
}

impl VariationResult {
    pub fn at(&self, misalignment_pct: f64, j_scale: f64) -> Option<&VariationRow> {
        self.rows
            .iter()
            .find(|r| (r.misalignment_pct - misalignment_pct).abs() < 1e-9 && (r.j_scale - j_scale).abs() < 1e-9)
    }

    /// Smallest j_scale at which FL_R switches for this misalignment, if
    /// every larger grid value switches too.
    pub fn boundary(&self, misalignment_pct: f64) -> Option<f64> {
        let mut col: Vec<&VariationRow> =
            self.rows.iter().filter(|r| (r.misalignment_pct - misalignment_pct).abs() < 1e-9).collect();
        col.sort_by(|a, b| b.j_scale.total_cmp(&a.j_scale));
        let mut last = None;
        for r in col {
            if !r.switched {
                break;
            }
            last = Some(r.j_scale);
        }
        last
    }
}

/// Copy of `template` with its coupling rescaled and derated.
pub fn varied_stack(template: &CoupledStack, j_ex: f64, p: VariationPoint) -> Result<CoupledStack, MagError> {
    let fl_r = template.fl_r.ok_or_else(|| MagError::Invalid("variation map needs a coupled stack".into()))?;
    let area = template.fl_w.geometry.area_m2().min(fl_r.geometry.area_m2());
    let mut s = template.clone();
    s.j_eff = p.j_scale * j_ex;
    s.overlap_area = overlap_fraction(p.misalignment_pct) * area;
    s.check()?;
    Ok(s)
}

/// Run every grid point with `drive` (thermal off). `j_ex` is the nominal
/// coupling in J/m².
pub fn run_variation_map(
    template: &CoupledStack,
    j_ex: f64,
    drive: &DriveSpec,
    tilt_deg: f64,
    grid: &GridSpec,
) -> Result<VariationResult, MagError> {
    let points: Vec<VariationPoint> = grid
        .misalignments
        .iter()
        .flat_map(|&m| grid.j_scales.iter().map(move |&j| VariationPoint { misalignment_pct: m, j_scale: j }))
        .collect();
    let nominal = VariationPoint { misalignment_pct: 0.0, j_scale: 1.0 };
    let run = |p: VariationPoint| -> Result<Option<f64>, MagError> {
        let s = varied_stack(template, j_ex, p)?.prepared(drive.target_sign(), tilt_deg);
        Ok(integrate(&s, drive)?.t_switch_ns())
    };
    let nominal_ns = run(nominal)?;
    let times = points.par_iter().map(|&p| run(p)).collect::<Result<Vec<_>, _>>()?;
    let rows = points
        .iter()
        .zip(times)
        .map(|(p, t)| VariationRow {
            misalignment_pct: p.misalignment_pct,
            j_scale: p.j_scale,
            switched: t.is_some(),
            t_switch_ns: t,
            t_ratio: t.zip(nominal_ns).map(|(a, b)| a / b),
        })
        .collect();
    Ok(VariationResult { rows, nominal_ns })
}

/// Relative one-sigma spreads.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Sigmas {
    pub ku: f64,
    pub ms: f64,
    pub thickness: f64,
}

/// Percentage of samples in which the sensed layer switches. Each sample
/// draws film-level Ku and Ms and an independent thickness per layer; the
/// draws do not depend on the sigmas, so runs with different spreads see
/// the same underlying sequence.
pub fn monte_carlo(
    template: &CoupledStack,
    drive: &DriveSpec,
    tilt_deg: f64,
    sigmas: Sigmas,
    n_samples: usize,
    seed: u64,
) -> Result<f64, MagError> {
    if n_samples == 0 {
        return Err(MagError::Invalid("n_samples must be at least 1".into()));
    }
    if sigmas.ku < 0.0 || sigmas.ms < 0.0 || sigmas.thickness < 0.0 {
        return Err(MagError::Invalid("sigmas must be non-negative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<[f64; 4]> =
        (0..n_samples).map(|_| std::array::from_fn(|_| StandardNormal.sample(&mut rng))).collect();
    let factor = |s: f64, z: f64| (1.0 + s * z).max(0.05);
    let ok = draws
        .par_iter()
        .map(|z| {
            let mut s = template.clone();
            s.material.ku *= factor(sigmas.ku, z[0]);
            s.material.ms *= factor(sigmas.ms, z[1]);
            s.fl_w.geometry.thickness *= factor(sigmas.thickness, z[2]);
            if let Some(r) = &mut s.fl_r {
                r.geometry.thickness *= factor(sigmas.thickness, z[3]);
            }
            let s = s.prepared(drive.target_sign(), tilt_deg);
            Ok(integrate(&s, drive)?.switched)
        })
        .collect::<Result<Vec<bool>, MagError>>()?;
    Ok(ok.iter().filter(|b| **b).count() as f64 / n_samples as f64 * 100.0)
}
