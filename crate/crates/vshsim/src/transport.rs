//! Compact electrical models: WSe₂ write FET, spin-Hall conversion, MTJ,
//! FinFET access transistor and read-path series resistance.
//!
//! Currents are in µA, resistances in kΩ, voltages in V.

use crate::units::TechnologyParams;
use std::f64::consts::LN_10;

/// Subthreshold swing of the access FinFET, V/decade.
pub const FINFET_SS: f64 = 0.070;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Single free layer; read current crosses the WSe₂ channel.
    Vsh,
    /// Exchange-coupled FL_W/FL_R; read path through Ta legs.
    Eirw,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Vsh => "vsh",
            Flavor::Eirw => "eirw",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtjState {
    P,
    AP,
}

/// p-type back-gated WSe₂ FET.
#[derive(Clone, Debug, PartialEq)]
pub struct WriteFetParams {
    /// Threshold magnitude, V.
    pub vth: f64,
    pub ss_mv_dec: f64,
    /// µA/V²
    pub k_drive: f64,
    /// Total Schottky contact resistance, kΩ, split evenly between the contacts.
    pub r_contact: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MtjParams {
    /// Ω·µm²
    pub ra0: f64,
    /// nm
    pub lambda_t: f64,
    pub tmr: f64,
    /// nm
    pub t_ref: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReadPathParams {
    /// nm
    pub ta_leg_length: f64,
    /// nm
    pub ta_width: f64,
    /// nm
    pub ta_thickness: f64,
    /// kΩ
    pub channel_r_on: f64,
}

/// Softplus-smoothed gate overdrive. Exact square-law behavior well above
/// threshold, and `k/2·vov²` falls one decade per `ss` volts below it.
pub fn effective_overdrive(v_ov: f64, ss: f64) -> f64 {
    let nphi = 2.0 * ss / LN_10;
    let x = v_ov / nphi;
    if x > 0.0 {
        nphi * (x + (-x).exp().ln_1p())
    } else {
        nphi * x.exp().ln_1p()
    }
}

/// Square law with velocity-free saturation at `vd = vov`.
fn square_law(k: f64, vov: f64, vd: f64) -> f64 {
    if vd < vov {
        k * (vov * vd - 0.5 * vd * vd)
    } else {
        0.5 * k * vov * vov
    }
}

/// Intrinsic p-FET current for source-gate drive `v_sg` and `v_sd ≥ 0`.
fn wse2_intrinsic(v_sg: f64, v_sd: f64, p: &WriteFetParams) -> f64 {
    let vov = effective_overdrive(v_sg - p.vth, p.ss_mv_dec * 1e-3);
    square_law(p.k_drive, vov, v_sd)
}

/// Write FET current in µA, positive when flowing from source to drain
/// (normal p-type conduction, `v_ds < 0`). The channel is symmetric: for
/// `v_ds > 0` the drain acts as source and the sign flips.
pub fn wse2_current(v_gs: f64, v_ds: f64, p: &WriteFetParams) -> f64 {
    if v_ds == 0.0 {
        return 0.0;
    }
    // Effective source is the higher-potential terminal.
    let (v_sg, v_sd, sign) = if v_ds < 0.0 { (-v_gs, -v_ds, 1.0) } else { (v_ds - v_gs, v_ds, -1.0) };
    let i0 = wse2_intrinsic(v_sg, v_sd, p);
    if p.r_contact <= 0.0 || i0 <= 0.0 {
        return sign * i0;
    }
    // I·R_C in µA·kΩ = mV, hence the 1e-3.
    let residual = |i: f64| {
        let drop = i * p.r_contact * 1e-3;
        i - wse2_intrinsic(v_sg - 0.5 * drop, (v_sd - drop).max(0.0), p)
    };
    let (mut lo, mut hi) = (0.0, i0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if residual(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-12 * i0 {
            break;
        }
    }
    sign * 0.5 * (lo + hi)
}

/// Spin current injected per arm, µA. Odd in `i_c`.
pub fn spin_current(i_c: f64, theta_sh: f64, geometry_factor: f64) -> f64 {
    theta_sh * geometry_factor * i_c
}

/// Arms of a differential cell receive opposite polarizations.
pub fn spin_current_differential(i_c: f64, theta_sh: f64, geometry_factor: f64) -> (f64, f64) {
    let s = spin_current(i_c, theta_sh, geometry_factor);
    (s, -s)
}

/// MTJ resistance in kΩ.
pub fn mtj_resistance(state: MtjState, t_mgo: f64, d_mtj: f64, p: &MtjParams) -> f64 {
    let area_um2 = 0.25 * std::f64::consts::PI * (d_mtj * 1e-3).powi(2);
    let rp = p.ra0 * ((t_mgo - p.t_ref) / p.lambda_t).exp() / area_um2 * 1e-3;
    match state {
        MtjState::P => rp,
        MtjState::AP => rp * (1.0 + p.tmr),
    }
}

fn finfet_k(tech: &TechnologyParams) -> f64 {
    let vsat = effective_overdrive(tech.v_dd - tech.fet_vth, FINFET_SS);
    2.0 * tech.fin_drive / (vsat * vsat)
}

/// n-type FinFET access transistor, µA. Symmetric in the sign of `v_ds`.
pub fn access_fet_current(v_gs: f64, v_ds: f64, n_fin: usize, tech: &TechnologyParams) -> f64 {
    let k = finfet_k(tech);
    let (vg, vd, sign) = if v_ds >= 0.0 { (v_gs, v_ds, 1.0) } else { (v_gs - v_ds, -v_ds, -1.0) };
    let vov = effective_overdrive(vg - tech.fet_vth, FINFET_SS);
    sign * n_fin as f64 * square_law(k, vov, vd)
}

/// Small-signal drain conductance of the access FET in µA/V.
pub fn access_fet_gds(v_gs: f64, v_ds: f64, n_fin: usize, tech: &TechnologyParams) -> f64 {
    let k = finfet_k(tech);
    let vov = effective_overdrive(v_gs - tech.fet_vth, FINFET_SS);
    let vd = v_ds.abs();
    if vd < vov {
        n_fin as f64 * k * (vov - vd)
    } else {
        0.0
    }
}

/// One Ta leg, kΩ.
pub fn ta_leg_resistance(rp: &ReadPathParams, tech: &TechnologyParams) -> f64 {
    tech.ta_resistivity * rp.ta_leg_length / (rp.ta_width * rp.ta_thickness) * 1e-3
}

/// Series resistance between the MTJ and the shared read node, kΩ.
pub fn series_resistance(flavor: Flavor, rp: &ReadPathParams, tech: &TechnologyParams) -> f64 {
    match flavor {
        Flavor::Eirw => 2.0 * ta_leg_resistance(rp, tech),
        Flavor::Vsh => rp.channel_r_on,
    }
}
