//! λ-rule word area model.
//!
//! Cell width and height are linear in the feature size F, the metal pitch
//! MP and the MTJ diameter. EIRW words add one shared access-transistor
//! strip whose width grows with the fin count.

use crate::array::Mode;
use crate::transport::Flavor;

/// `f·F + mp·MP + d·D`, nm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Linear {
    pub f: f64,
    pub mp: f64,
    pub d: f64,
}

impl Linear {
    pub fn eval(&self, f: f64, mp: f64, d: f64) -> f64 {
        self.f * f + self.mp * mp + self.d * d
    }

    fn scaled(self, s: f64) -> Linear {
        Linear { f: self.f * s, mp: self.mp * s, d: self.d * s }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellCoeffs {
    pub width: Linear,
    pub height: Linear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayoutConstants {
    pub vsh_se: CellCoeffs,
    pub vsh_diff: CellCoeffs,
    pub eirw_se: CellCoeffs,
    pub eirw_diff: CellCoeffs,
    /// Strip width per `n_fin·fin_pitch`.
    pub strip_fin: f64,
    /// Strip width per F.
    pub strip_f: f64,
}

/// Physical dimensions a layout is evaluated at, nm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayoutDims {
    pub f: f64,
    pub mp: f64,
    pub fin_pitch: f64,
    pub d_vsh: f64,
    pub d_eirw: f64,
}

impl LayoutDims {
    pub fn scaled(self, s: f64) -> Self {
        LayoutDims {
            f: self.f * s,
            mp: self.mp * s,
            fin_pitch: self.fin_pitch * s,
            d_vsh: self.d_vsh * s,
            d_eirw: self.d_eirw * s,
        }
    }

    pub fn d(&self, flavor: Flavor) -> f64 {
        match flavor {
            Flavor::Vsh => self.d_vsh,
            Flavor::Eirw => self.d_eirw,
        }
    }
}

/// Area deltas (percent) a calibration must reproduce at two fin counts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AreaTargets {
    pub n_lo: usize,
    pub n_hi: usize,
    pub se: (f64, f64),
    pub diff: (f64, f64),
}

impl AreaTargets {
    pub const REFERENCE: AreaTargets = AreaTargets { n_lo: 20, n_hi: 50, se: (0.5, 12.0), diff: (-1.0, 7.0) };
}

/// Word area in several units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WordArea {
    pub nm2: f64,
    pub um2: f64,
    /// In units of F².
    pub f2: f64,
    pub cell_w: f64,
    pub cell_h: f64,
    pub strip_w: f64,
}

impl LayoutConstants {
    pub fn coeffs(&self, flavor: Flavor, mode: Mode) -> &CellCoeffs {
        match (flavor, mode) {
            (Flavor::Vsh, Mode::SingleEnded) => &self.vsh_se,
            (Flavor::Vsh, Mode::Differential) => &self.vsh_diff,
            (Flavor::Eirw, Mode::SingleEnded) => &self.eirw_se,
            (Flavor::Eirw, Mode::Differential) => &self.eirw_diff,
        }
    }

    /// Fit strip and EIRW cell coefficients so the area deltas hit
    /// `targets` at `dims`.
    ///
    /// Baseline widths are fixed drawings (3MP+2F single-ended, 4MP+5F
    /// differential); heights are `γ·MP + 2D` with γ shared by both flavors
    /// of a mode, so the height ratio comes from the MTJ diameter alone. The
    /// single-ended EIRW cell keeps the baseline width, which pins the strip
    /// coefficient; the differential EIRW width is then solved for.
    pub fn calibrate(dims: &LayoutDims, targets: &AreaTargets, word_bits: usize) -> Result<Self, String> {
        let bits = word_bits as f64;
        let span = (targets.n_hi - targets.n_lo) as f64;
        let w_se = Linear { f: 2.0, mp: 3.0, d: 0.0 };
        let w_diff = Linear { f: 5.0, mp: 4.0, d: 0.0 };
        let k = 2.0;

        // delta(n)/100 = r·u − 1 + r·s·n·p/(bits·w_v)
        let fit = |lo: f64, hi: f64| {
            let slope = (hi - lo) / 100.0 / span;
            let ru = 1.0 + lo / 100.0 - slope * targets.n_lo as f64;
            (slope, ru)
        };
        let (slope_se, ru_se) = fit(targets.se.0, targets.se.1);
        let (slope_d, ru_d) = fit(targets.diff.0, targets.diff.1);
        let wv_se = w_se.eval(dims.f, dims.mp, 0.0);
        let wv_d = w_diff.eval(dims.f, dims.mp, 0.0);

        let r_se = ru_se;
        let strip = slope_se * bits * wv_se / r_se;
        let r_d = slope_d * bits * wv_d / strip;
        let u_d = ru_d / r_d;

        // (γ·MP + k·D_e)/(γ·MP + k·D_v) = r
        let gamma = |r: f64| k * (dims.d_eirw - r * dims.d_vsh) / ((r - 1.0) * dims.mp);
        let (g_se, g_d) = (gamma(r_se), gamma(r_d));
        if !(strip > 0.0 && u_d > 0.0 && g_se > 0.0 && g_d > 0.0) {
            return Err(format!(
                "targets not reachable with non-negative coefficients (strip {strip}, u {u_d}, γ {g_se}/{g_d})"
            ));
        }
        let h = |g: f64| Linear { f: 0.0, mp: g, d: k };
        Ok(LayoutConstants {
            vsh_se: CellCoeffs { width: w_se, height: h(g_se) },
            vsh_diff: CellCoeffs { width: w_diff, height: h(g_d) },
            eirw_se: CellCoeffs { width: w_se, height: h(g_se) },
            eirw_diff: CellCoeffs { width: w_diff.scaled(u_d), height: h(g_d) },
            strip_fin: strip / dims.fin_pitch,
            strip_f: 0.0,
        })
    }

    /// Constants fitted at the reference 7 nm-class dimensions.
    pub fn reference() -> Self {
        LayoutConstants::calibrate(&LayoutDims::REFERENCE, &AreaTargets::REFERENCE, 64)
            .expect("reference targets are reachable")
    }
}

impl LayoutDims {
    pub const REFERENCE: LayoutDims = LayoutDims { f: 7.0, mp: 40.0, fin_pitch: 30.0, d_vsh: 30.0, d_eirw: 21.0 };
}

/// Bit-cell width and height, nm.
pub fn cell_dims(flavor: Flavor, mode: Mode, dims: &LayoutDims, consts: &LayoutConstants) -> (f64, f64) {
    let c = consts.coeffs(flavor, mode);
    let d = dims.d(flavor);
    (c.width.eval(dims.f, dims.mp, d), c.height.eval(dims.f, dims.mp, d))
}

/// Width of the shared access-transistor strip, nm. Zero for VSH words,
/// which have no shared transistor.
pub fn strip_width(flavor: Flavor, n_fin_shared: usize, dims: &LayoutDims, consts: &LayoutConstants) -> f64 {
    match flavor {
        Flavor::Vsh => 0.0,
        Flavor::Eirw => consts.strip_fin * n_fin_shared as f64 * dims.fin_pitch + consts.strip_f * dims.f,
    }
}

pub fn word_area(
    flavor: Flavor,
    mode: Mode,
    n_fin_shared: usize,
    word_bits: usize,
    dims: &LayoutDims,
    consts: &LayoutConstants,
) -> WordArea {
    let (w, h) = cell_dims(flavor, mode, dims, consts);
    let strip_w = strip_width(flavor, n_fin_shared, dims, consts);
    let nm2 = (word_bits as f64 * w + strip_w) * h;
    WordArea { nm2, um2: nm2 * 1e-6, f2: nm2 / (dims.f * dims.f), cell_w: w, cell_h: h, strip_w }
}

/// Percent area change of an EIRW word relative to the matching VSH word.
pub fn area_delta(
    mode: Mode,
    n_fin_shared: usize,
    word_bits: usize,
    dims: &LayoutDims,
    consts: &LayoutConstants,
) -> f64 {
    let base = word_area(Flavor::Vsh, mode, n_fin_shared, word_bits, dims, consts).nm2;
    let eirw = word_area(Flavor::Eirw, mode, n_fin_shared, word_bits, dims, consts).nm2;
    (eirw - base) / base * 100.0
}
