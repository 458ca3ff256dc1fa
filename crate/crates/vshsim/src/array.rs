//! Word-level read network, margins, and write/read event metrics.
//!
//! In EIRW arrays all MTJs of a word (plus the two reference MTJs in
//! single-ended mode) return through one shared FinFET whose drain is the
//! node x. Baseline VSH cells each read through their own WSe₂ channel, so
//! their branches are independent.

use crate::config::{DynamicsParams, PeripheryParams, SpinParams};
use crate::layout::{self, LayoutConstants, LayoutDims};
use crate::magnetics::{self, CoupledStack, DriveSpec, MagError, Thermal};
use crate::transport::{
    self, access_fet_current, access_fet_gds, mtj_resistance, series_resistance, wse2_current, Flavor, MtjParams,
    MtjState, ReadPathParams, WriteFetParams,
};
use crate::units::TechnologyParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    SingleEnded,
    Differential,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "single_ended" | "se" => Some(Mode::SingleEnded),
            "differential" | "diff" => Some(Mode::Differential),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::SingleEnded => "single_ended",
            Mode::Differential => "differential",
        }
    }
}

/// Display name of a flavor/mode combination.
pub fn design_name(flavor: Flavor, mode: Mode) -> &'static str {
    match (flavor, mode) {
        (Flavor::Vsh, Mode::SingleEnded) => "VSH",
        (Flavor::Vsh, Mode::Differential) => "DVSH",
        (Flavor::Eirw, Mode::SingleEnded) => "EIRW",
        (Flavor::Eirw, Mode::Differential) => "DEIRW",
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeviceConfig {
    pub flavor: Flavor,
    pub mode: Mode,
    pub mtj: MtjParams,
    pub read_path: ReadPathParams,
    pub write_fet: WriteFetParams,
    pub spin: SpinParams,
    /// nm
    pub d_mtj: f64,
    /// nm
    pub t_mgo: f64,
}

impl DeviceConfig {
    pub fn r_mtj(&self, state: MtjState) -> f64 {
        mtj_resistance(state, self.t_mgo, self.d_mtj, &self.mtj)
    }

    pub fn r_s(&self, tech: &TechnologyParams) -> f64 {
        series_resistance(self.flavor, &self.read_path, tech)
    }

    /// MTJ plus series resistance, kΩ.
    pub fn r_branch(&self, state: MtjState, tech: &TechnologyParams) -> f64 {
        self.r_mtj(state) + self.r_s(tech)
    }
}

/// Stand-alone cell read currents `(I_P, I_AP)` at `v_read`, µA.
pub fn device_read_currents(dev: &DeviceConfig, tech: &TechnologyParams, v_read: f64) -> (f64, f64) {
    (v_read / dev.r_branch(MtjState::P, tech) * 1e3, v_read / dev.r_branch(MtjState::AP, tech) * 1e3)
}

/// Read voltage at which a stand-alone AP cell sits at `rdm_pct`.
pub fn iso_rdm_vread(dev: &DeviceConfig, tech: &TechnologyParams, i_cr: f64, rdm_pct: f64) -> f64 {
    (1.0 - rdm_pct / 100.0) * i_cr * dev.r_branch(MtjState::AP, tech) * 1e-3
}

pub fn sm_single_ended(i_p: f64, i_ap: f64) -> f64 {
    0.5 * (i_p - i_ap)
}

pub fn sm_differential(i_p: f64, i_ap: f64) -> f64 {
    i_p - i_ap
}

/// Read-disturb margin in percent.
pub fn rdm(i_cr: f64, i_ap: f64) -> f64 {
    (i_cr - i_ap) / i_cr * 100.0
}

/// Everything needed to evaluate one array design.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrayConfig {
    pub rows: usize,
    pub cols: usize,
    pub word_bits: usize,
    pub n_fin_shared: usize,
    pub flavor: Flavor,
    pub mode: Mode,
    pub tech: TechnologyParams,
    pub device: DeviceConfig,
    pub periphery: PeripheryParams,
    pub layout: LayoutConstants,
    /// Read-disturb critical current of the sensed layer, µA.
    pub i_cr: f64,
    /// Stack and integrator settings used for write switching.
    pub stack: CoupledStack,
    pub dynamics: DynamicsParams,
}

#[derive(Debug, thiserror::Error)]
pub enum ArrayError {
    #[error("pattern has {got} bits, word has {expected}")]
    PatternLength { got: usize, expected: usize },
    #[error("read node did not converge; residual keeps sign on [{lo}, {hi}] V")]
    NonConvergence { lo: f64, hi: f64 },
    #[error("reference current is undefined in differential mode")]
    ModeError,
    #[error("critical current must be positive, got {0}")]
    BadCriticalCurrent(f64),
    #[error("address row {row}, word {word} outside {rows} rows × {words} words")]
    Address { row: usize, word: usize, rows: usize, words: usize },
    #[error("write of {i_spin:.3} µA spin current did not switch the cell")]
    WriteFailed { i_spin: f64 },
    #[error("sense margin {sm:.4} µA does not exceed the sense threshold {threshold:.4} µA")]
    SenseFailed { sm: f64, threshold: f64 },
    #[error(transparent)]
    Magnetics(#[from] MagError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Address {
    pub row: usize,
    pub word: usize,
}

impl ArrayConfig {
    pub fn words_per_row(&self) -> usize {
        self.cols / self.word_bits
    }

    /// Layout dimensions of this design. Both diameter slots hold its own
    /// MTJ diameter, so cross-flavor deltas need the pair-level dimensions.
    pub fn layout_dims(&self) -> LayoutDims {
        LayoutDims {
            f: self.tech.f,
            mp: self.tech.mp,
            fin_pitch: self.periphery.fin_pitch,
            d_vsh: self.device.d_mtj,
            d_eirw: self.device.d_mtj,
        }
    }

    /// Cell width, cell height and word width, nm.
    pub fn geometry(&self) -> (f64, f64, f64) {
        let dims = self.layout_dims();
        let (w, h) = layout::cell_dims(self.flavor, self.mode, &dims, &self.layout);
        let strip = layout::strip_width(self.flavor, self.n_fin_shared, &dims, &self.layout);
        (w, h, self.word_bits as f64 * w + strip)
    }

    fn check_address(&self, a: Address) -> Result<(), ArrayError> {
        if a.row >= self.rows || a.word >= self.words_per_row() {
            return Err(ArrayError::Address { row: a.row, word: a.word, rows: self.rows, words: self.words_per_row() });
        }
        Ok(())
    }

    fn shares_fet(&self) -> bool {
        self.flavor == Flavor::Eirw
    }
}

/// Solve the star network: branches of resistance `r` (kΩ) from lines at
/// `v_sl` into node x, which returns to ground through `n_fin` fins gated
/// at `v_gate`. Without a shared transistor x is grounded. Returns
/// `(v_x, branch currents in µA)`.
pub fn solve_star(
    r: &[f64],
    v_sl: f64,
    v_gate: f64,
    shared: Option<usize>,
    tech: &TechnologyParams,
) -> Result<(f64, Vec<f64>), ArrayError> {
    let currents = |vx: f64| r.iter().map(|rk| (v_sl - vx) / rk * 1e3).collect::<Vec<_>>();
    let Some(n_fin) = shared else {
        return Ok((0.0, currents(0.0)));
    };
    if v_sl == 0.0 {
        return Ok((0.0, vec![0.0; r.len()]));
    }
    let g: f64 = r.iter().map(|rk| 1e3 / rk).sum();
    let residual = |vx: f64| access_fet_current(v_gate, vx, n_fin, tech) - (v_sl - vx) * g;
    let (mut lo, mut hi) = if v_sl > 0.0 { (0.0, v_sl) } else { (v_sl, 0.0) };
    let rising = residual(hi) > residual(lo);
    if !rising || residual(lo) > 0.0 || residual(hi) < 0.0 {
        return Err(ArrayError::NonConvergence { lo, hi });
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let vx = if residual(hi).abs() < residual(lo).abs() { hi } else { lo };
    Ok((vx, currents(vx)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReadSolution {
    pub mode: Mode,
    pub v_x: f64,
    /// Stored data, one entry per bit.
    pub pattern: Vec<bool>,
    /// Current of each bit's (true-side) MTJ, µA.
    pub i_bit: Vec<f64>,
    /// Complementary MTJ currents in differential mode.
    pub i_comp: Option<Vec<f64>>,
    /// Midpoint of the two reference MTJs, single-ended only.
    pub i_ref: Option<f64>,
    /// Branch currents of a P and an AP MTJ at the solved node voltage.
    pub i_p: f64,
    pub i_ap: f64,
    /// Total current drawn from the source lines, µA.
    pub i_total: f64,
    pub sm_per_bit: Vec<f64>,
    /// Margin of the AP MTJ in each cell; `None` when the cell holds no AP
    /// junction (single-ended '1').
    pub rdm_per_bit: Vec<Option<f64>>,
    pub n_ones: usize,
    /// |I_fet − ΣI| at node x, µA.
    pub kcl_residual: f64,
}

impl ReadSolution {
    pub fn min_sm(&self) -> f64 {
        self.sm_per_bit.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn min_rdm(&self) -> Option<f64> {
        self.rdm_per_bit.iter().flatten().copied().reduce(f64::min)
    }

    /// Bits whose read-disturb margin is negative.
    pub fn disturbed_bits(&self) -> Vec<usize> {
        self.rdm_per_bit.iter().enumerate().filter_map(|(i, r)| r.filter(|v| *v < 0.0).map(|_| i)).collect()
    }
}

fn state_of(bit: bool) -> MtjState {
    if bit {
        MtjState::P
    } else {
        MtjState::AP
    }
}

/// Branch states of a word in network order: data bits, then references
/// (single-ended) or complements (differential).
pub fn branch_states(mode: Mode, pattern: &[bool]) -> Vec<MtjState> {
    let mut s: Vec<MtjState> = pattern.iter().map(|&b| state_of(b)).collect();
    match mode {
        Mode::SingleEnded => s.extend([MtjState::P, MtjState::AP]),
        Mode::Differential => s.extend(pattern.iter().map(|&b| state_of(!b))),
    }
    s
}

/// Solve the accessed word under read bias with the given stored data.
pub fn solve_read_word(cfg: &ArrayConfig, pattern: &[bool]) -> Result<ReadSolution, ArrayError> {
    solve_read_word_at(cfg, pattern, cfg.tech.v_read)
}

pub fn solve_read_word_at(cfg: &ArrayConfig, pattern: &[bool], v_read: f64) -> Result<ReadSolution, ArrayError> {
    let nb = cfg.word_bits;
    if pattern.len() != nb {
        return Err(ArrayError::PatternLength { got: pattern.len(), expected: nb });
    }
    let states = branch_states(cfg.mode, pattern);
    let rp = cfg.device.r_branch(MtjState::P, &cfg.tech);
    let rap = cfg.device.r_branch(MtjState::AP, &cfg.tech);
    let r: Vec<f64> = states.iter().map(|s| if *s == MtjState::P { rp } else { rap }).collect();
    let shared = cfg.shares_fet().then_some(cfg.n_fin_shared);
    let (v_x, i) = solve_star(&r, v_read, cfg.tech.v_dd, shared, &cfg.tech)?;
    let i_total: f64 = i.iter().sum();
    let kcl_residual = match shared {
        Some(n) => (access_fet_current(cfg.tech.v_dd, v_x, n, &cfg.tech) - i_total).abs(),
        None => 0.0,
    };
    let i_p = (v_read - v_x) / rp * 1e3;
    let i_ap = (v_read - v_x) / rap * 1e3;
    let i_bit = i[..nb].to_vec();
    let n_ones = pattern.iter().filter(|b| **b).count();

    let (i_comp, i_ref, sm_per_bit, rdm_per_bit) = match cfg.mode {
        Mode::SingleEnded => {
            let i_ref = 0.5 * (i[nb] + i[nb + 1]);
            let sm = pattern.iter().zip(&i_bit).map(|(&b, &ib)| if b { ib - i_ref } else { i_ref - ib }).collect();
            let rd = pattern.iter().zip(&i_bit).map(|(&b, &ib)| (!b).then(|| rdm(cfg.i_cr, ib))).collect();
            (None, Some(i_ref), sm, rd)
        }
        Mode::Differential => {
            let comp = i[nb..].to_vec();
            let sm = pattern
                .iter()
                .zip(i_bit.iter().zip(&comp))
                .map(|(&b, (&t, &c))| if b { t - c } else { c - t })
                .collect();
            let rd = pattern
                .iter()
                .zip(i_bit.iter().zip(&comp))
                .map(|(&b, (&t, &c))| Some(rdm(cfg.i_cr, if b { c } else { t })))
                .collect();
            (Some(comp), None, sm, rd)
        }
    };
    Ok(ReadSolution {
        mode: cfg.mode,
        v_x,
        pattern: pattern.to_vec(),
        i_bit,
        i_comp,
        i_ref,
        i_p,
        i_ap,
        i_total,
        sm_per_bit,
        rdm_per_bit,
        n_ones,
        kcl_residual,
    })
}

/// Word whose first `n_ones` bits store '1'.
pub fn pattern_with_ones(word_bits: usize, n_ones: usize) -> Vec<bool> {
    (0..word_bits).map(|i| i < n_ones).collect()
}

/// Reference current for a word holding `n_ones` ones.
pub fn reference_current(cfg: &ArrayConfig, n_ones: usize) -> Result<f64, ArrayError> {
    if cfg.mode == Mode::Differential {
        return Err(ArrayError::ModeError);
    }
    let s = solve_read_word(cfg, &pattern_with_ones(cfg.word_bits, n_ones.min(cfg.word_bits)))?;
    Ok(s.i_ref.expect("single-ended solution carries a reference"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SenseMargin {
    pub per_bit: Vec<f64>,
    pub word_min: f64,
}

pub fn sense_margin(solution: &ReadSolution) -> SenseMargin {
    SenseMargin { per_bit: solution.sm_per_bit.clone(), word_min: solution.min_sm() }
}

/// Per-bit read-disturb margin against `i_cr`.
pub fn read_disturb_margin(solution: &ReadSolution, i_cr: f64) -> Result<Vec<Option<f64>>, ArrayError> {
    if !(i_cr > 0.0) {
        return Err(ArrayError::BadCriticalCurrent(i_cr));
    }
    Ok(match solution.mode {
        Mode::SingleEnded => {
            solution.pattern.iter().zip(&solution.i_bit).map(|(&b, &i)| (!b).then(|| rdm(i_cr, i))).collect()
        }
        Mode::Differential => {
            let comp = solution.i_comp.as_ref().expect("differential solution carries complements");
            solution
                .pattern
                .iter()
                .zip(solution.i_bit.iter().zip(comp))
                .map(|(&b, (&t, &c))| Some(rdm(i_cr, if b { c } else { t })))
                .collect()
        }
    })
}

/// Worst-case word margins over `n_ones ∈ 0..=word_bits`.
#[derive(Clone, Debug, PartialEq)]
pub struct WordMargins {
    pub sm: f64,
    pub sm_n_ones: usize,
    pub rdm: f64,
    pub rdm_n_ones: usize,
    pub solutions: Vec<ReadSolution>,
}

pub fn word_margins(cfg: &ArrayConfig) -> Result<WordMargins, ArrayError> {
    word_margins_at(cfg, cfg.tech.v_read)
}

pub fn word_margins_at(cfg: &ArrayConfig, v_read: f64) -> Result<WordMargins, ArrayError> {
    let solutions = (0..=cfg.word_bits)
        .map(|n| solve_read_word_at(cfg, &pattern_with_ones(cfg.word_bits, n), v_read))
        .collect::<Result<Vec<_>, _>>()?;
    let (mut sm, mut sm_n, mut rd, mut rd_n) = (f64::INFINITY, 0, f64::INFINITY, 0);
    for s in &solutions {
        if s.min_sm() < sm {
            sm = s.min_sm();
            sm_n = s.n_ones;
        }
        if let Some(r) = s.min_rdm() {
            if r < rd {
                rd = r;
                rd_n = s.n_ones;
            }
        }
    }
    Ok(WordMargins { sm, sm_n_ones: sm_n, rdm: rd, rdm_n_ones: rd_n, solutions })
}

/// Time and energy of one access, split into interconnect and device parts.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct EventMetrics {
    pub wt_ns: f64,
    pub we_fj: f64,
    pub rt_ns: f64,
    pub re_fj: f64,
    pub wt_line_ns: f64,
    pub wt_switch_ns: f64,
    pub we_line_fj: f64,
    pub we_device_fj: f64,
    pub rt_line_ns: f64,
    pub rt_sense_ns: f64,
    pub re_line_fj: f64,
    pub re_device_fj: f64,
    pub re_sense_fj: f64,
}

/// A driven line: wire plus the loads it taps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    /// nm
    pub length: f64,
    /// Lumped load capacitance, F.
    pub load_c: f64,
}

impl Line {
    pub fn wire_r(&self, tech: &TechnologyParams) -> f64 {
        tech.wire_r_per_len * self.length
    }

    pub fn total_c(&self, tech: &TechnologyParams) -> f64 {
        tech.wire_c_per_len * self.length + self.load_c
    }

    /// Elmore delay with a driver of `driver_r` kΩ, ns. Loads are spread
    /// along the line like the wire capacitance.
    pub fn delay_ns(&self, tech: &TechnologyParams, driver_r: f64) -> f64 {
        let c = self.total_c(tech);
        (0.69 * driver_r * 1e3 * c + 0.38 * self.wire_r(tech) * c) * 1e9
    }

    /// CV², fJ.
    pub fn energy_fj(&self, tech: &TechnologyParams, v: f64) -> f64 {
        self.total_c(tech) * v * v * 1e15
    }
}

/// Lines of the array, nm and F.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArrayLines {
    pub wwl: Line,
    pub rwl: Line,
    pub bl: Line,
    pub sl: Line,
}

pub fn array_lines(cfg: &ArrayConfig) -> ArrayLines {
    let (_, h, word_w) = cfg.geometry();
    let row_len = cfg.words_per_row() as f64 * word_w;
    let col_len = cfg.rows as f64 * h;
    let cc = cfg.periphery.cell_cap;
    let cells_per_row = cfg.cols as f64;
    let rwl_load = match cfg.flavor {
        // The read select of a VSH cell is its own WSe₂ back gate.
        Flavor::Vsh => cells_per_row * cc,
        Flavor::Eirw => cfg.words_per_row() as f64 * cfg.n_fin_shared as f64 * cfg.periphery.fin_gate_cap,
    };
    ArrayLines {
        wwl: Line { length: row_len, load_c: cells_per_row * cc },
        rwl: Line { length: row_len, load_c: rwl_load },
        bl: Line { length: col_len, load_c: cfg.rows as f64 * cc },
        sl: Line { length: col_len, load_c: cfg.rows as f64 * cc },
    }
}

/// Write current through the accessed cell's WSe₂ channel, µA.
pub fn write_current(cfg: &ArrayConfig, data: bool) -> f64 {
    // Gate at 0, driven terminal at V_DD, far terminal at 0.
    let v = cfg.tech.v_dd;
    let i = wse2_current(-v, -v, &cfg.device.write_fet);
    if data {
        i
    } else {
        -i
    }
}

/// Drive used for a write of `data` with spin current `i_spin`.
pub fn write_drive(cfg: &ArrayConfig, i_spin: f64) -> DriveSpec {
    let d = &cfg.dynamics;
    let mut drive = DriveSpec::new(i_spin, d.eta, d.write_pulse_ns, d.write_pulse_ns + d.settle_ns);
    drive.dt_ps = d.dt_ps;
    drive.threshold = d.switch_threshold;
    drive.thermal = Thermal::Off;
    drive
}

/// Switching time of the sensed layer for a spin current, ns.
pub fn switching_time(cfg: &ArrayConfig, i_spin: f64) -> Result<f64, ArrayError> {
    let drive = write_drive(cfg, i_spin);
    let stack = cfg.stack.prepared(drive.target_sign(), cfg.dynamics.tilt_deg);
    magnetics::integrate(&stack, &drive)?.t_switch_ns().ok_or(ArrayError::WriteFailed { i_spin })
}

pub fn write_event(cfg: &ArrayConfig, address: Address, data: bool) -> Result<EventMetrics, ArrayError> {
    cfg.check_address(address)?;
    let i_c = write_current(cfg, data);
    let i_spin = transport::spin_current(i_c, cfg.device.spin.theta_sh, cfg.device.spin.geometry_factor);
    let t_sw = switching_time(cfg, i_spin)?;
    write_metrics(cfg, i_c, t_sw)
}

/// Write metrics for a known cell current and switching time.
pub fn write_metrics(cfg: &ArrayConfig, i_c: f64, t_sw: f64) -> Result<EventMetrics, ArrayError> {
    let lines = array_lines(cfg);
    let tech = &cfg.tech;
    let rd = cfg.periphery.driver_r;
    let t_line = lines.wwl.delay_ns(tech, rd).max(lines.bl.delay_ns(tech, rd));
    let bits = cfg.word_bits as f64;
    // µA·V·ns = fJ
    let we_device = bits * i_c.abs() * tech.v_dd * t_sw;
    let we_line = lines.wwl.energy_fj(tech, tech.v_dd) + bits * lines.bl.energy_fj(tech, tech.v_dd);
    Ok(EventMetrics {
        wt_ns: t_line + t_sw,
        we_fj: we_line + we_device,
        wt_line_ns: t_line,
        wt_switch_ns: t_sw,
        we_line_fj: we_line,
        we_device_fj: we_device,
        ..EventMetrics::default()
    })
}

/// Thevenin resistance seen from the source line of the weakest AP branch
/// of `sol`, kΩ.
pub fn sense_resistance(cfg: &ArrayConfig, sol: &ReadSolution) -> f64 {
    let rp = cfg.device.r_branch(MtjState::P, &cfg.tech);
    let rap = cfg.device.r_branch(MtjState::AP, &cfg.tech);
    if !cfg.shares_fet() {
        return rap;
    }
    let states = branch_states(cfg.mode, &sol.pattern);
    // Every other branch ties x to a source line held at V_READ.
    let mut g_other: f64 = states.iter().map(|s| if *s == MtjState::P { 1.0 / rp } else { 1.0 / rap }).sum();
    g_other -= 1.0 / rap;
    let g_fet = access_fet_gds(cfg.tech.v_dd, sol.v_x, cfg.n_fin_shared, &cfg.tech) * 1e-3;
    rap + 1.0 / (g_other + g_fet)
}

pub fn read_event(cfg: &ArrayConfig, address: Address) -> Result<EventMetrics, ArrayError> {
    cfg.check_address(address)?;
    let margins = word_margins(cfg)?;
    let worst = &margins.solutions[margins.sm_n_ones];
    read_metrics(cfg, worst, margins.sm)
}

/// Read metrics for a solved word whose limiting margin is `sm` µA.
pub fn read_metrics(cfg: &ArrayConfig, sol: &ReadSolution, sm: f64) -> Result<EventMetrics, ArrayError> {
    let tech = &cfg.tech;
    let p = &cfg.periphery;
    if !(sm > p.csa_threshold) {
        return Err(ArrayError::SenseFailed { sm, threshold: p.csa_threshold });
    }
    let lines = array_lines(cfg);
    let r_th = sense_resistance(cfg, sol) * 1e3 + 0.5 * lines.sl.wire_r(tech);
    let tau_ns = r_th * lines.sl.total_c(tech) * 1e9;
    let t_dev = tau_ns * (sm / (sm - p.csa_threshold)).ln();
    let n_sl = match cfg.mode {
        Mode::SingleEnded => cfg.word_bits + 2,
        Mode::Differential => 2 * cfg.word_bits,
    } as f64;
    let rt = p.csa_latency + t_dev;
    let re_device = tech.v_read * sol.i_total * rt;
    let re_line = n_sl * lines.sl.energy_fj(tech, tech.v_read) + lines.rwl.energy_fj(tech, tech.v_dd);
    let re_sense = n_sl * p.csa_energy;
    Ok(EventMetrics {
        rt_ns: rt,
        re_fj: re_line + re_device + re_sense,
        rt_line_ns: t_dev,
        rt_sense_ns: p.csa_latency,
        re_line_fj: re_line,
        re_device_fj: re_device,
        re_sense_fj: re_sense,
        ..EventMetrics::default()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Read,
    Write,
}

/// Line levels for the accessed word and for everything else, V.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineBias {
    pub wwl: f64,
    pub bl: f64,
    pub blb: f64,
    pub rwl: f64,
    pub sl: f64,
    pub slb: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiasScheme {
    pub op: Operation,
    /// Row lines (WWL, RWL) of the accessed row, column lines of the
    /// accessed word.
    pub accessed: LineBias,
    /// Row lines of other rows, column lines of other words.
    pub unaccessed: LineBias,
}

impl BiasScheme {
    /// Standard biasing when word 0 of row 0 is accessed. A write stores
    /// '1' (BL high).
    pub fn standard(op: Operation, flavor: Flavor, tech: &TechnologyParams) -> Self {
        let (vdd, vr) = (tech.v_dd, tech.v_read);
        match op {
            Operation::Write => {
                // A baseline cell's MTJ hangs off its write channel, so the
                // unselected source lines track BL to keep it unbiased.
                let sl_idle = match flavor {
                    Flavor::Vsh => vdd,
                    Flavor::Eirw => 0.0,
                };
                BiasScheme {
                    op,
                    accessed: LineBias { wwl: 0.0, bl: vdd, blb: 0.0, rwl: 0.0, sl: 0.0, slb: 0.0 },
                    unaccessed: LineBias { wwl: vdd, bl: vdd, blb: vdd, rwl: 0.0, sl: sl_idle, slb: sl_idle },
                }
            }
            Operation::Read => match flavor {
                Flavor::Eirw => BiasScheme {
                    op,
                    accessed: LineBias { wwl: vdd, bl: 0.0, blb: 0.0, rwl: vdd, sl: vr, slb: vr },
                    unaccessed: LineBias { wwl: vdd, bl: 0.0, blb: 0.0, rwl: 0.0, sl: 0.0, slb: 0.0 },
                },
                // Baseline cells read through the write channel, so WWL
                // doubles as the read select.
                Flavor::Vsh => BiasScheme {
                    op,
                    accessed: LineBias { wwl: 0.0, bl: 0.0, blb: 0.0, rwl: 0.0, sl: vr, slb: vr },
                    unaccessed: LineBias { wwl: vdd, bl: 0.0, blb: 0.0, rwl: 0.0, sl: 0.0, slb: 0.0 },
                },
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellClass {
    Accessed,
    SameRowOtherWord,
    OtherRowSameWord,
    OtherRowOtherWord,
}

impl CellClass {
    pub const ALL: [CellClass; 4] =
        [CellClass::Accessed, CellClass::SameRowOtherWord, CellClass::OtherRowSameWord, CellClass::OtherRowOtherWord];
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellBias {
    pub class: CellClass,
    /// Write-channel current, µA.
    pub write_current: f64,
    /// Largest MTJ read-branch current in the word, µA.
    pub read_current: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BiasReport {
    pub op: Operation,
    pub cells: Vec<CellBias>,
    pub violations: Vec<String>,
}

impl BiasReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Current allowed in any unaccessed cell, µA.
pub const SNEAK_LIMIT_UA: f64 = 1e-3;

pub fn validate_bias(cfg: &ArrayConfig, op: Operation) -> Result<BiasReport, ArrayError> {
    validate_scheme(cfg, &BiasScheme::standard(op, cfg.flavor, &cfg.tech))
}

/// Evaluate write and read currents in every cell class under `scheme`.
pub fn validate_scheme(cfg: &ArrayConfig, scheme: &BiasScheme) -> Result<BiasReport, ArrayError> {
    let mut cells = Vec::new();
    let mut violations = Vec::new();
    let rap = cfg.device.r_branch(MtjState::AP, &cfg.tech);
    for class in CellClass::ALL {
        let (row, col) = match class {
            CellClass::Accessed => (&scheme.accessed, &scheme.accessed),
            CellClass::SameRowOtherWord => (&scheme.accessed, &scheme.unaccessed),
            CellClass::OtherRowSameWord => (&scheme.unaccessed, &scheme.accessed),
            CellClass::OtherRowOtherWord => (&scheme.unaccessed, &scheme.unaccessed),
        };
        // The channel runs BL → BLB with the back gate on WWL.
        let write_current = wse2_current(row.wwl - col.bl, col.blb - col.bl, &cfg.device.write_fet);
        let read_current = match cfg.flavor {
            Flavor::Eirw => {
                let n = match cfg.mode {
                    Mode::SingleEnded => cfg.word_bits + 2,
                    Mode::Differential => 2 * cfg.word_bits,
                };
                let (_, i) = solve_star(&vec![rap; n], col.sl, row.rwl, Some(cfg.n_fin_shared), &cfg.tech)?;
                i.into_iter().fold(0.0, |a: f64, b| a.max(b.abs()))
            }
            Flavor::Vsh => vsh_read_branch(cfg, col.sl, row.wwl, col.bl),
        };
        if class != CellClass::Accessed {
            if write_current.abs() >= SNEAK_LIMIT_UA {
                violations.push(format!("{class:?}: write current {write_current:.3e} µA"));
            }
            if read_current.abs() >= SNEAK_LIMIT_UA {
                violations.push(format!("{class:?}: read-branch current {read_current:.3e} µA"));
            }
        }
        cells.push(CellBias { class, write_current, read_current });
    }
    Ok(BiasReport { op: scheme.op, cells, violations })
}

/// Current through an AP MTJ in series with the baseline WSe₂ channel.
fn vsh_read_branch(cfg: &ArrayConfig, v_sl: f64, v_wwl: f64, v_bl: f64) -> f64 {
    if v_sl == v_bl {
        return 0.0;
    }
    let r = cfg.device.r_mtj(MtjState::AP);
    let fet = &cfg.device.write_fet;
    // Node n between MTJ and channel; channel from n to BL. The KCL
    // residual falls monotonically with v_n.
    let f = |vn: f64| (v_sl - vn) / r * 1e3 - wse2_current(v_wwl - vn, v_bl - vn, fet);
    let (mut lo, mut hi) = (v_sl.min(v_bl), v_sl.max(v_bl));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let vn = 0.5 * (lo + hi);
    (v_sl - vn) / r * 1e3
}
