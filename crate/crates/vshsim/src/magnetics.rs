//! Two-macrospin Landau–Lifshitz–Gilbert engine.
//!
//! FL_W (write side, driven by the spin-Hall current) and FL_R (read side,
//! part of the MTJ) are single coherent moments linked by an interlayer
//! exchange field. The uncoupled baseline is the same engine with FL_R
//! absent. Integration is classical RK4 with a fixed step and a
//! renormalization of each moment after every step.

use crate::units::{MagnetGeometry, SiMaterial, HBAR, K_B, MU0, Q_E};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const Z: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 1.0 };
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    #[inline]
    pub fn normalized(self) -> Vec3 {
        self * (1.0 / self.norm())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagnetState {
    pub m: Vec3,
}

impl MagnetState {
    pub fn new(m: Vec3) -> Self {
        MagnetState { m: m.normalized() }
    }

    /// Moment pointing along `sign·ẑ`, tilted by `tilt_deg` toward +x.
    pub fn tilted(sign: f64, tilt_deg: f64) -> Self {
        let t = tilt_deg.to_radians();
        MagnetState { m: Vec3::new(t.sin(), 0.0, sign * t.cos()) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeLayer {
    pub state: MagnetState,
    pub geometry: MagnetGeometry,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layer {
    Write,
    Read,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoupledStack {
    pub fl_w: FreeLayer,
    /// Absent for the single-layer baseline device.
    pub fl_r: Option<FreeLayer>,
    pub material: SiMaterial,
    /// J/m²
    pub j_eff: f64,
    /// m²
    pub overlap_area: f64,
}

impl CoupledStack {
    pub fn single(material: SiMaterial, geometry: MagnetGeometry) -> Self {
        CoupledStack {
            fl_w: FreeLayer { state: MagnetState::new(Vec3::Z), geometry },
            fl_r: None,
            material,
            j_eff: 0.0,
            overlap_area: 0.0,
        }
    }

    /// Coupled pair; `overlap` is the fraction of the smaller disk sharing
    /// the coupling interface.
    pub fn coupled(
        material: SiMaterial,
        fl_w: MagnetGeometry,
        fl_r: MagnetGeometry,
        j_eff: f64,
        overlap: f64,
    ) -> Result<Self, MagError> {
        let overlap_area = overlap * fl_w.area_m2().min(fl_r.area_m2());
        let s = CoupledStack {
            fl_w: FreeLayer { state: MagnetState::new(Vec3::Z), geometry: fl_w },
            fl_r: Some(FreeLayer { state: MagnetState::new(Vec3::Z), geometry: fl_r }),
            material,
            j_eff,
            overlap_area,
        };
        s.check()?;
        Ok(s)
    }

    pub fn is_coupled(&self) -> bool {
        self.fl_r.is_some()
    }

    pub fn check(&self) -> Result<(), MagError> {
        if !(self.j_eff >= 0.0) {
            return Err(MagError::Invalid(format!("j_eff must be non-negative, got {}", self.j_eff)));
        }
        if let Some(r) = &self.fl_r {
            let limit = self.fl_w.geometry.area_m2().min(r.geometry.area_m2());
            if !(self.overlap_area >= 0.0) || self.overlap_area > limit * (1.0 + 1e-12) {
                return Err(MagError::Invalid(format!("overlap area {} m² outside [0, {limit}]", self.overlap_area)));
            }
        }
        Ok(())
    }

    /// Place every layer antiparallel to `target_sign·ẑ`, tilted.
    pub fn prepared(&self, target_sign: f64, tilt_deg: f64) -> Self {
        let mut s = self.clone();
        s.fl_w.state = MagnetState::tilted(-target_sign, tilt_deg);
        if let Some(r) = &mut s.fl_r {
            r.state = MagnetState::tilted(-target_sign, tilt_deg);
        }
        s
    }

    /// Layer whose state the MTJ reads.
    pub fn sensed_layer(&self) -> Layer {
        if self.is_coupled() {
            Layer::Read
        } else {
            Layer::Write
        }
    }

    fn layer(&self, which: Layer) -> &FreeLayer {
        match which {
            Layer::Write => &self.fl_w,
            Layer::Read => self.fl_r.as_ref().unwrap_or(&self.fl_w),
        }
    }

    /// Anisotropy field magnitude, A/m.
    pub fn h_k(&self) -> f64 {
        2.0 * self.material.ku / (MU0 * self.material.ms)
    }

    /// Exchange field amplitude acting on `which`, A/m, already derated by
    /// the fraction of that layer's area taking part in the coupling.
    pub fn h_ex(&self, which: Layer) -> f64 {
        if !self.is_coupled() {
            return 0.0;
        }
        let g = self.layer(which).geometry;
        self.j_eff / (MU0 * self.material.ms * g.thickness_m()) * (self.overlap_area / g.area_m2())
    }

    /// Magnetic energy in J: uniaxial anisotropy plus interlayer exchange.
    pub fn energy(&self) -> f64 {
        let ku = self.material.ku;
        let w = &self.fl_w;
        let mut e = -ku * w.geometry.volume_m3() * w.state.m.z * w.state.m.z;
        if let Some(r) = &self.fl_r {
            e -= ku * r.geometry.volume_m3() * r.state.m.z * r.state.m.z;
            e -= self.j_eff * self.overlap_area * w.state.m.dot(r.state.m);
        }
        e
    }
}

/// Deterministic field on one layer (anisotropy + exchange), A/m.
pub fn effective_field(stack: &CoupledStack, which: Layer) -> Vec3 {
    let own = stack.layer(which).state.m;
    let mut h = Vec3::new(0.0, 0.0, stack.h_k() * own.z);
    if let Some(r) = &stack.fl_r {
        let other = match which {
            Layer::Write => r.state.m,
            Layer::Read => stack.fl_w.state.m,
        };
        h = h + other * stack.h_ex(which);
    }
    h
}

/// Spin-torque prefactor in s⁻¹ for `i_spin_ua` into a layer of volume
/// `volume_m3`: γħηI/(2e·Ms·V).
pub fn torque_coefficient(material: &SiMaterial, eta: f64, i_spin_ua: f64, volume_m3: f64) -> f64 {
    material.gamma * HBAR * eta * (i_spin_ua * 1e-6) / (2.0 * Q_E * material.ms * volume_m3)
}

/// Standard deviation of each Cartesian component of the thermal field,
/// A/m, for a step of `dt` seconds.
pub fn thermal_sigma(material: &SiMaterial, volume_m3: f64, dt: f64) -> f64 {
    (2.0 * material.alpha * K_B * material.temperature / (material.gamma * MU0 * MU0 * material.ms * volume_m3 * dt))
        .sqrt()
}

/// LLG right-hand side with a damping-like torque of strength `a_j` (s⁻¹)
/// pulling `m` toward `p`.
#[inline]
pub fn llg_rhs(m: Vec3, h: Vec3, a_j: f64, p: Vec3, material: &SiMaterial) -> Vec3 {
    let alpha = material.alpha;
    let gp = material.gamma / (1.0 + alpha * alpha) * MU0;
    let mxh = m.cross(h);
    let mxmxh = m.cross(mxh);
    let mut d = (mxh + mxmxh * alpha) * (-gp);
    if a_j != 0.0 {
        d = d - m.cross(m.cross(p)) * a_j;
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarization {
    Up,
    Down,
}

impl Polarization {
    pub fn sign(self) -> f64 {
        match self {
            Polarization::Up => 1.0,
            Polarization::Down => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Thermal {
    Off,
    /// Brown thermal field at the material temperature, seeded.
    Stochastic {
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DriveSpec {
    /// µA; the sign flips the effective polarization.
    pub i_spin: f64,
    pub sigma: Polarization,
    pub eta: f64,
    pub pulse_ns: f64,
    pub sim_ns: f64,
    pub dt_ps: f64,
    pub thermal: Thermal,
    /// Layer receiving the torque. Write current drives FL_W; read disturb
    /// acts on the MTJ layer.
    pub torque_on: Layer,
    /// |m_z| level that counts as switched.
    pub threshold: f64,
    /// Record every n-th step; 0 disables the trajectory.
    pub sample_every: usize,
}

impl DriveSpec {
    pub fn new(i_spin: f64, eta: f64, pulse_ns: f64, sim_ns: f64) -> Self {
        DriveSpec {
            i_spin,
            sigma: Polarization::Up,
            eta,
            pulse_ns,
            sim_ns,
            dt_ps: 1.0,
            thermal: Thermal::Off,
            torque_on: Layer::Write,
            threshold: 0.9,
            sample_every: 0,
        }
    }

    /// Direction the torque pushes toward, ±1.
    pub fn target_sign(&self) -> f64 {
        if self.i_spin < 0.0 {
            -self.sigma.sign()
        } else {
            self.sigma.sign()
        }
    }

    pub fn check(&self) -> Result<(), MagError> {
        if !(self.dt_ps > 0.0) {
            return Err(MagError::Invalid("dt_ps must be positive".into()));
        }
        if !(self.pulse_ns >= 0.0 && self.pulse_ns <= self.sim_ns) {
            return Err(MagError::Invalid(format!(
                "pulse {} ns must lie within the {} ns window",
                self.pulse_ns, self.sim_ns
            )));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(MagError::Invalid(format!("eta must lie in (0, 1], got {}", self.eta)));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(MagError::Invalid("threshold must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRow {
    pub t_ns: f64,
    pub m_w: Vec3,
    pub m_r: Vec3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwitchResult {
    /// The sensed layer ended in the target state.
    pub switched: bool,
    pub t_switch_w: Option<f64>,
    pub t_switch_r: Option<f64>,
    pub final_w: Vec3,
    pub final_r: Option<Vec3>,
    pub trajectory: Vec<TrajectoryRow>,
}

impl SwitchResult {
    /// Switching time of the sensed layer, ns.
    pub fn t_switch_ns(&self) -> Option<f64> {
        if self.final_r.is_some() {
            self.t_switch_r
        } else {
            self.t_switch_w
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum MagError {
    #[error("invalid magnetic input: {0}")]
    Invalid(String),
    #[error("non-finite magnetization at step {step}: m = ({}, {}, {})", m.x, m.y, m.z)]
    NonFinite { step: usize, m: Vec3 },
}

/// Precomputed per-run constants.
struct Rhs<'a> {
    mat: &'a SiMaterial,
    hk: f64,
    hex_w: f64,
    hex_r: f64,
    aj_w: f64,
    aj_r: f64,
    p: Vec3,
    coupled: bool,
}

impl Rhs<'_> {
    #[inline]
    fn eval(&self, mw: Vec3, mr: Vec3, on: bool, hth_w: Vec3, hth_r: Vec3) -> (Vec3, Vec3) {
        let mut hw = Vec3::new(0.0, 0.0, self.hk * mw.z) + hth_w;
        if self.coupled {
            hw = hw + mr * self.hex_w;
        }
        let aw = if on { self.aj_w } else { 0.0 };
        let dw = llg_rhs(mw, hw, aw, self.p, self.mat);
        if !self.coupled {
            return (dw, Vec3::ZERO);
        }
        let hr = Vec3::new(0.0, 0.0, self.hk * mr.z) + mw * self.hex_r + hth_r;
        let ar = if on { self.aj_r } else { 0.0 };
        (dw, llg_rhs(mr, hr, ar, self.p, self.mat))
    }
}

/// Tracks the start of the latest uninterrupted stretch at the target.
#[derive(Default)]
struct Crossing {
    since: Option<f64>,
}

impl Crossing {
    fn update(&mut self, mz: f64, target: f64, threshold: f64, t_ns: f64) {
        if mz * target >= threshold {
            if self.since.is_none() {
                self.since = Some(t_ns);
            }
        } else {
            self.since = None;
        }
    }
}

/// Integrate the stack under `drive` starting from the stack's current
/// states. Deterministic for a given seed.
pub fn integrate(stack: &CoupledStack, drive: &DriveSpec) -> Result<SwitchResult, MagError> {
    stack.check()?;
    drive.check()?;
    let mat = &stack.material;
    let coupled = stack.is_coupled();
    let target = drive.target_sign();
    let p = Vec3::new(0.0, 0.0, drive.sigma.sign());
    let vw = stack.fl_w.geometry.volume_m3();
    let vr = stack.fl_r.map(|r| r.geometry.volume_m3()).unwrap_or(vw);
    let aj = |v: f64| torque_coefficient(mat, drive.eta, drive.i_spin, v);
    let (aj_w, aj_r) = match (drive.torque_on, coupled) {
        (Layer::Write, _) | (Layer::Read, false) => (aj(vw), 0.0),
        (Layer::Read, true) => (0.0, aj(vr)),
    };
    let rhs = Rhs {
        mat,
        hk: stack.h_k(),
        hex_w: stack.h_ex(Layer::Write),
        hex_r: stack.h_ex(Layer::Read),
        aj_w,
        aj_r,
        p,
        coupled,
    };

    let dt = drive.dt_ps * 1e-12;
    let dt_ns = drive.dt_ps * 1e-3;
    let n_steps = (drive.sim_ns / dt_ns).round() as usize;
    let pulse_end = drive.pulse_ns;

    let mut rng = match drive.thermal {
        Thermal::Off => None,
        Thermal::Stochastic { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let sig_w = thermal_sigma(mat, vw, dt);
    let sig_r = thermal_sigma(mat, vr, dt);
    let gauss3 = |rng: &mut ChaCha8Rng, s: f64| {
        let mut g = || -> f64 { StandardNormal.sample(rng) };
        Vec3::new(g() * s, g() * s, g() * s)
    };

    let mut mw = stack.fl_w.state.m;
    let mut mr = stack.fl_r.map(|r| r.state.m).unwrap_or(Vec3::ZERO);
    let mut cw = Crossing::default();
    let mut cr = Crossing::default();
    let mut trajectory = Vec::new();
    let record = |t: f64, mw: Vec3, mr: Vec3, traj: &mut Vec<TrajectoryRow>| {
        traj.push(TrajectoryRow { t_ns: t, m_w: mw, m_r: mr });
    };
    if drive.sample_every > 0 {
        record(0.0, mw, mr, &mut trajectory);
    }
    cw.update(mw.z, target, drive.threshold, 0.0);
    cr.update(mr.z, target, drive.threshold, 0.0);

    for step in 0..n_steps {
        let t0 = step as f64 * dt_ns;
        let (hth_w, hth_r) = match rng.as_mut() {
            None => (Vec3::ZERO, Vec3::ZERO),
            Some(r) => {
                let a = gauss3(r, sig_w);
                let b = if coupled { gauss3(r, sig_r) } else { Vec3::ZERO };
                (a, b)
            }
        };
        let on0 = t0 < pulse_end;
        let onh = t0 + 0.5 * dt_ns < pulse_end;
        let on1 = t0 + dt_ns < pulse_end;
        let (k1w, k1r) = rhs.eval(mw, mr, on0, hth_w, hth_r);
        let (k2w, k2r) = rhs.eval(mw + k1w * (0.5 * dt), mr + k1r * (0.5 * dt), onh, hth_w, hth_r);
        let (k3w, k3r) = rhs.eval(mw + k2w * (0.5 * dt), mr + k2r * (0.5 * dt), onh, hth_w, hth_r);
        let (k4w, k4r) = rhs.eval(mw + k3w * dt, mr + k3r * dt, on1, hth_w, hth_r);
        let s6 = dt / 6.0;
        mw = mw + (k1w + (k2w + k3w) * 2.0 + k4w) * s6;
        if !mw.is_finite() {
            return Err(MagError::NonFinite { step, m: mw });
        }
        mw = mw.normalized();
        if coupled {
            mr = mr + (k1r + (k2r + k3r) * 2.0 + k4r) * s6;
            if !mr.is_finite() {
                return Err(MagError::NonFinite { step, m: mr });
            }
            mr = mr.normalized();
        }
        let t1 = (step + 1) as f64 * dt_ns;
        cw.update(mw.z, target, drive.threshold, t1);
        if coupled {
            cr.update(mr.z, target, drive.threshold, t1);
        }
        if drive.sample_every > 0 && (step + 1) % drive.sample_every == 0 {
            record(t1, mw, mr, &mut trajectory);
        }
    }

    let t_switch_w = cw.since;
    let t_switch_r = if coupled { cr.since } else { None };
    let switched = if coupled { t_switch_r.is_some() } else { t_switch_w.is_some() };
    Ok(SwitchResult { switched, t_switch_w, t_switch_r, final_w: mw, final_r: coupled.then_some(mr), trajectory })
}

/// Single RK4 step without renormalization; exposed for integrator checks.
pub fn rk4_step_raw(stack: &CoupledStack, drive: &DriveSpec, on: bool) -> (Vec3, Option<Vec3>) {
    let mat = &stack.material;
    let coupled = stack.is_coupled();
    let vw = stack.fl_w.geometry.volume_m3();
    let vr = stack.fl_r.map(|r| r.geometry.volume_m3()).unwrap_or(vw);
    let aj = |v: f64| torque_coefficient(mat, drive.eta, drive.i_spin, v);
    let (aj_w, aj_r) = match (drive.torque_on, coupled) {
        (Layer::Write, _) | (Layer::Read, false) => (aj(vw), 0.0),
        (Layer::Read, true) => (0.0, aj(vr)),
    };
    let rhs = Rhs {
        mat,
        hk: stack.h_k(),
        hex_w: stack.h_ex(Layer::Write),
        hex_r: stack.h_ex(Layer::Read),
        aj_w,
        aj_r,
        p: Vec3::new(0.0, 0.0, drive.sigma.sign()),
        coupled,
    };
    let dt = drive.dt_ps * 1e-12;
    let mw = stack.fl_w.state.m;
    let mr = stack.fl_r.map(|r| r.state.m).unwrap_or(Vec3::ZERO);
    let z = Vec3::ZERO;
    let (k1w, k1r) = rhs.eval(mw, mr, on, z, z);
    let (k2w, k2r) = rhs.eval(mw + k1w * (0.5 * dt), mr + k1r * (0.5 * dt), on, z, z);
    let (k3w, k3r) = rhs.eval(mw + k2w * (0.5 * dt), mr + k2r * (0.5 * dt), on, z, z);
    let (k4w, k4r) = rhs.eval(mw + k3w * dt, mr + k3r * dt, on, z, z);
    let s6 = dt / 6.0;
    let nw = mw + (k1w + (k2w + k3w) * 2.0 + k4w) * s6;
    let nr = mr + (k1r + (k2r + k3r) * 2.0 + k4r) * s6;
    (nw, coupled.then_some(nr))
}

/// Thermal stability factor Δ = Ku·V/(k_B·T), summed over both layers of
/// a rigidly coupled pair of identical disks.
pub fn energy_barrier(geometry: &MagnetGeometry, material: &SiMaterial, coupled_pair: bool) -> f64 {
    let single = material.ku * geometry.volume_m3() / (K_B * material.temperature);
    if coupled_pair {
        2.0 * single
    } else {
        single
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    /// Torque on FL_W, success when the sensed layer follows.
    Write,
    /// Read current through the MTJ pushing the AP layer toward P.
    ReadDisturb,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SearchOutcome {
    /// Smallest switching current found, µA.
    Found(f64),
    /// Even the configured maximum current does not switch.
    NoSwitch { max_ua: f64 },
}

impl SearchOutcome {
    pub fn current(self) -> Option<f64> {
        match self {
            SearchOutcome::Found(i) => Some(i),
            SearchOutcome::NoSwitch { .. } => None,
        }
    }
}

/// Bracket width at which [`critical_current_search`] stops, µA.
pub const SEARCH_TOLERANCE_UA: f64 = 0.05;

fn switches(
    stack: &CoupledStack,
    drive: &DriveSpec,
    target: SearchTarget,
    i: f64,
    tilt_deg: f64,
) -> Result<bool, MagError> {
    let mut d = drive.clone();
    d.i_spin = i;
    d.sigma = Polarization::Up;
    d.thermal = Thermal::Off;
    d.sample_every = 0;
    d.torque_on = match target {
        SearchTarget::Write => Layer::Write,
        SearchTarget::ReadDisturb => stack.sensed_layer(),
    };
    let s = stack.prepared(1.0, tilt_deg);
    Ok(integrate(&s, &d)?.switched)
}

/// Bisection on current magnitude down to `tolerance` µA. The pulse length
/// and window come from `drive`; its current and polarization are ignored.
pub fn threshold_current(
    stack: &CoupledStack,
    drive: &DriveSpec,
    target: SearchTarget,
    tilt_deg: f64,
    max_ua: f64,
    tolerance: f64,
) -> Result<SearchOutcome, MagError> {
    if !(drive.pulse_ns > 0.0) {
        return Err(MagError::Invalid("pulse_ns must be positive".into()));
    }
    if !switches(stack, drive, target, max_ua, tilt_deg)? {
        return Ok(SearchOutcome::NoSwitch { max_ua });
    }
    let (mut lo, mut hi) = (0.0, max_ua);
    while hi - lo >= tolerance {
        let mid = 0.5 * (lo + hi);
        if switches(stack, drive, target, mid, tilt_deg)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(SearchOutcome::Found(hi))
}

/// Critical current to [`SEARCH_TOLERANCE_UA`].
pub fn critical_current_search(
    stack: &CoupledStack,
    drive: &DriveSpec,
    target: SearchTarget,
    tilt_deg: f64,
    max_ua: f64,
) -> Result<SearchOutcome, MagError> {
    threshold_current(stack, drive, target, tilt_deg, max_ua, SEARCH_TOLERANCE_UA)
}

/// Efficiency η that puts the critical current of `stack` at `target_ua`.
/// Torque depends on η·I only, so one fine search at η = 1 suffices.
pub fn fit_eta(
    stack: &CoupledStack,
    drive: &DriveSpec,
    target: SearchTarget,
    tilt_deg: f64,
    target_ua: f64,
) -> Result<f64, MagError> {
    let mut d = drive.clone();
    d.eta = 1.0;
    let cap = 20.0 * target_ua;
    match threshold_current(stack, &d, target, tilt_deg, cap, 1e-6 * target_ua)? {
        SearchOutcome::Found(i1) => {
            let eta = i1 / target_ua;
            if eta > 1.0 {
                Err(MagError::Invalid(format!("target {target_ua} µA needs eta = {eta} > 1")))
            } else {
                Ok(eta)
            }
        }
        SearchOutcome::NoSwitch { .. } => Err(MagError::Invalid(format!("no switching below {cap} µA at eta = 1"))),
    }
}
