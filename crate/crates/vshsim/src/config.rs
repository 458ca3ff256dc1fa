//! Key–value configuration files and design presets.
//!
//! Grammar, one entry per line:
//!
//! ```text
//! # comment
//! preset = eirw
//! Ms = 1257.3 [emu/cm3]
//! eirw.V_READ = 0.07 [V]
//! ```
//!
//! A `vsh.` or `eirw.` prefix restricts an entry to that design, which lets
//! one file describe a baseline/proposed pair. Values are layered: built-in
//! preset, then the shipped defaults, then the user file, then command-line
//! overrides.

use crate::array::Mode;
use crate::transport::{Flavor, MtjParams, ReadPathParams, WriteFetParams};
use crate::units::{positive, InvalidField, MagnetGeometry, MaterialParams, TechnologyParams};
use std::path::Path;

/// Shipped technology and calibration defaults.
pub const DEFAULT_CONFIG: &str = include_str!("../../../configs/default.cfg");

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{source_name}:{line}: {msg}")]
    Parse { source_name: String, line: usize, msg: String },
    #[error("{0}")]
    Invalid(#[from] InvalidField),
    #[error("cannot read {path}: {err}")]
    Io { path: String, err: std::io::Error },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub unit: Option<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Source {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Source {
    pub fn parse(name: &str, text: &str) -> Result<Source, ConfigError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| ConfigError::Parse { source_name: name.to_string(), line, msg };
            let (key, rest) =
                content.split_once('=').ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
            let key = key.trim();
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(err(format!("malformed key `{key}`")));
            }
            let rest = rest.trim();
            let (value, unit) = match rest.find('[') {
                Some(open) => {
                    let close = rest
                        .rfind(']')
                        .filter(|&c| c > open && rest[c + 1..].trim().is_empty())
                        .ok_or_else(|| err("unterminated unit bracket".to_string()))?;
                    (rest[..open].trim(), Some(rest[open + 1..close].trim().to_string()))
                }
                None => (rest, None),
            };
            if value.is_empty() {
                return Err(err(format!("missing value for `{key}`")));
            }
            entries.push(Entry { key: key.to_string(), value: value.to_string(), unit, line });
        }
        Ok(Source { name: name.to_string(), entries })
    }

    pub fn read(path: &Path) -> Result<Source, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|err| ConfigError::Io { path: path.display().to_string(), err })?;
        Source::parse(&path.display().to_string(), &text)
    }

    /// Command-line `key=value` overrides, numbered by position.
    pub fn from_overrides(pairs: &[(String, String)]) -> Result<Source, ConfigError> {
        let text: String = pairs.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        Source::parse("--set", &text)
    }

    pub fn preset(&self) -> Option<&str> {
        self.entries.iter().rev().find(|e| e.key == "preset").map(|e| e.value.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinParams {
    pub theta_sh: f64,
    pub geometry_factor: f64,
}

/// Integrator and search settings.
#[derive(Clone, Debug, PartialEq)]
pub struct DynamicsParams {
    pub eta: f64,
    pub tilt_deg: f64,
    pub switch_threshold: f64,
    pub dt_ps: f64,
    pub read_pulse_ns: f64,
    pub write_pulse_ns: f64,
    /// Extra simulated time after the pulse, ns.
    pub settle_ns: f64,
    /// Upper bracket for critical-current searches, µA.
    pub max_current: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArrayParams {
    pub rows: usize,
    pub cols: usize,
    pub n_fin_shared: usize,
    pub mode: Mode,
}

/// Drivers, sense amplifier and lumped loads.
#[derive(Clone, Debug, PartialEq)]
pub struct PeripheryParams {
    /// Line driver output resistance, kΩ.
    pub driver_r: f64,
    /// Fixed sense-amplifier latency, ns.
    pub csa_latency: f64,
    /// Current difference the sense amplifier must see, µA.
    pub csa_threshold: f64,
    /// Energy of one sense-amplifier evaluation, fJ.
    pub csa_energy: f64,
    /// Load each cell adds to a line it taps, F.
    pub cell_cap: f64,
    /// Gate capacitance per access-transistor fin, F.
    pub fin_gate_cap: f64,
    /// nm
    pub fin_pitch: f64,
}

/// Optional misalignment and coupling degradation of the stack.
#[derive(Clone, Debug, PartialEq)]
pub struct VariationParams {
    pub misalignment_pct: f64,
    pub j_scale: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DesignConfig {
    pub flavor: Flavor,
    pub material: MaterialParams,
    pub fl_w: MagnetGeometry,
    pub fl_r: MagnetGeometry,
    pub tech: TechnologyParams,
    pub write_fet: WriteFetParams,
    pub mtj: MtjParams,
    pub read_path: ReadPathParams,
    pub spin: SpinParams,
    pub dynamics: DynamicsParams,
    pub array: ArrayParams,
    pub periphery: PeripheryParams,
    pub variation: VariationParams,
}

enum Slot<'a> {
    F(&'a mut f64),
    U(&'a mut usize),
    Mode(&'a mut Mode),
    Geom(&'a mut MagnetGeometry, &'a mut MagnetGeometry, bool),
}

/// Canonical unit for every key; empty for dimensionless or counts.
pub const KEYS: &[(&str, &str)] = &[
    ("Ms", "emu/cm3"),
    ("Ku", "erg/cm3"),
    ("alpha", ""),
    ("gamma", "MHz/Oe"),
    ("A_ex", "pJ/m"),
    ("J_ex", "mJ/m2"),
    ("temperature", "K"),
    ("diameter", "nm"),
    ("thickness", "nm"),
    ("F", "nm"),
    ("MP", "nm"),
    ("V_DD", "V"),
    ("V_READ", "V"),
    ("wire_r_per_len", "ohm/nm"),
    ("wire_c_per_len", "F/nm"),
    ("fin_drive", "uA"),
    ("fet_vth", "V"),
    ("ta_resistivity", "ohm*nm"),
    ("t_MgO", "nm"),
    ("word_bits", ""),
    ("vth", "V"),
    ("ss_mv_dec", "mV/dec"),
    ("k_drive", "uA/V2"),
    ("r_contact", "kohm"),
    ("ra0", "ohm*um2"),
    ("lambda_t", "nm"),
    ("tmr", ""),
    ("t_ref", "nm"),
    ("ta_leg_length", "nm"),
    ("ta_width", "nm"),
    ("ta_thickness", "nm"),
    ("channel_r_on", "kohm"),
    ("theta_sh", ""),
    ("geometry_factor", ""),
    ("eta", ""),
    ("tilt_deg", "deg"),
    ("switch_threshold", ""),
    ("dt_ps", "ps"),
    ("read_pulse_ns", "ns"),
    ("write_pulse_ns", "ns"),
    ("settle_ns", "ns"),
    ("max_current", "uA"),
    ("rows", ""),
    ("cols", ""),
    ("n_fin_shared", ""),
    ("mode", ""),
    ("driver_r", "kohm"),
    ("csa_latency", "ns"),
    ("csa_threshold", "uA"),
    ("csa_energy", "fJ"),
    ("cell_cap", "F"),
    ("fin_gate_cap", "F"),
    ("fin_pitch", "nm"),
    ("misalignment_pct", "%"),
    ("j_scale", ""),
];

fn normalize_unit(u: &str) -> String {
    u.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '³' => '3',
            '²' => '2',
            '·' | '.' => '*',
            'µ' | 'μ' => 'u',
            _ => c,
        })
        .collect::<String>()
        .replace('Ω', "ohm")
}

fn strip_prefix(key: &str) -> (Option<Flavor>, &str) {
    if let Some(k) = key.strip_prefix("vsh.") {
        (Some(Flavor::Vsh), k)
    } else if let Some(k) = key.strip_prefix("eirw.") {
        (Some(Flavor::Eirw), k)
    } else {
        (None, key)
    }
}

pub fn parse_flavor(s: &str) -> Option<Flavor> {
    match s {
        "vsh" => Some(Flavor::Vsh),
        "eirw" => Some(Flavor::Eirw),
        _ => None,
    }
}

impl DesignConfig {
    /// Built-in magnetic and geometric constants of one design, with every
    /// other field zeroed until the shipped defaults are layered on top.
    pub fn preset(flavor: Flavor) -> Self {
        let (d, t_mgo) = match flavor {
            Flavor::Vsh => (30.0, 1.2),
            Flavor::Eirw => (21.0, 1.1),
        };
        let geom = MagnetGeometry::new(d, 1.3);
        DesignConfig {
            flavor,
            material: MaterialParams {
                ms: 1257.3,
                ku: 2.3e6,
                alpha: 0.008,
                gamma: 17.6,
                a_ex: 13.0,
                j_ex: 0.35,
                temperature: 300.0,
            },
            fl_w: geom,
            fl_r: geom,
            tech: TechnologyParams {
                f: 0.0,
                mp: 0.0,
                v_dd: 0.0,
                v_read: 0.0,
                wire_r_per_len: 0.0,
                wire_c_per_len: 0.0,
                fin_drive: 0.0,
                fet_vth: 0.0,
                ta_resistivity: 2000.0,
                t_mgo,
                word_bits: 64,
            },
            write_fet: WriteFetParams { vth: 0.0, ss_mv_dec: 0.0, k_drive: 0.0, r_contact: 0.0 },
            mtj: MtjParams { ra0: 0.0, lambda_t: 0.0, tmr: 0.0, t_ref: 0.0 },
            read_path: ReadPathParams { ta_leg_length: 0.0, ta_width: 0.0, ta_thickness: 0.0, channel_r_on: 0.0 },
            spin: SpinParams { theta_sh: 1.0, geometry_factor: 1.0 },
            dynamics: DynamicsParams {
                eta: 0.0,
                tilt_deg: 1.0,
                switch_threshold: 0.9,
                dt_ps: 1.0,
                read_pulse_ns: 0.0,
                write_pulse_ns: 0.0,
                settle_ns: 0.0,
                max_current: 0.0,
            },
            array: ArrayParams { rows: 256, cols: 256, n_fin_shared: 20, mode: Mode::SingleEnded },
            periphery: PeripheryParams {
                driver_r: 0.0,
                csa_latency: 0.0,
                csa_threshold: 0.0,
                csa_energy: 0.0,
                cell_cap: 0.0,
                fin_gate_cap: 0.0,
                fin_pitch: 0.0,
            },
            variation: VariationParams { misalignment_pct: 0.0, j_scale: 1.0 },
        }
    }

    /// Preset plus shipped defaults, validated.
    pub fn defaults(flavor: Flavor) -> Self {
        DesignConfig::build(flavor, &[]).expect("shipped defaults are valid")
    }

    /// Layer `sources` over the preset and the shipped defaults.
    pub fn build(flavor: Flavor, sources: &[Source]) -> Result<Self, ConfigError> {
        let mut cfg = DesignConfig::preset(flavor);
        let shipped = Source::parse("default.cfg", DEFAULT_CONFIG)?;
        cfg.apply(&shipped)?;
        for s in sources {
            cfg.apply(s)?;
        }
        cfg.check()?;
        Ok(cfg)
    }

    /// Apply every entry addressed to this design. Entries for the other
    /// design are still checked for validity.
    pub fn apply(&mut self, src: &Source) -> Result<(), ConfigError> {
        for e in &src.entries {
            let err = |msg: String| ConfigError::Parse { source_name: src.name.clone(), line: e.line, msg };
            if e.key == "preset" {
                parse_flavor(&e.value).ok_or_else(|| err(format!("unknown preset `{}`", e.value)))?;
                continue;
            }
            let (target, key) = strip_prefix(&e.key);
            let unit = KEYS
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, u)| *u)
                .ok_or_else(|| err(format!("unknown key `{}`", e.key)))?;
            if let Some(u) = &e.unit {
                if normalize_unit(u) != normalize_unit(unit) {
                    return Err(err(format!("`{key}` expects unit [{unit}], got [{u}]")));
                }
            }
            if target.is_none() || target == Some(self.flavor) {
                self.set(key, &e.value).map_err(err)?;
            } else {
                DesignConfig::preset(self.flavor).set(key, &e.value).map_err(err)?;
            }
        }
        Ok(())
    }

    fn slot(&mut self, key: &str) -> Option<Slot<'_>> {
        Some(match key {
            "Ms" => Slot::F(&mut self.material.ms),
            "Ku" => Slot::F(&mut self.material.ku),
            "alpha" => Slot::F(&mut self.material.alpha),
            "gamma" => Slot::F(&mut self.material.gamma),
            "A_ex" => Slot::F(&mut self.material.a_ex),
            "J_ex" => Slot::F(&mut self.material.j_ex),
            "temperature" => Slot::F(&mut self.material.temperature),
            "diameter" => Slot::Geom(&mut self.fl_w, &mut self.fl_r, true),
            "thickness" => Slot::Geom(&mut self.fl_w, &mut self.fl_r, false),
            "F" => Slot::F(&mut self.tech.f),
            "MP" => Slot::F(&mut self.tech.mp),
            "V_DD" => Slot::F(&mut self.tech.v_dd),
            "V_READ" => Slot::F(&mut self.tech.v_read),
            "wire_r_per_len" => Slot::F(&mut self.tech.wire_r_per_len),
            "wire_c_per_len" => Slot::F(&mut self.tech.wire_c_per_len),
            "fin_drive" => Slot::F(&mut self.tech.fin_drive),
            "fet_vth" => Slot::F(&mut self.tech.fet_vth),
            "ta_resistivity" => Slot::F(&mut self.tech.ta_resistivity),
            "t_MgO" => Slot::F(&mut self.tech.t_mgo),
            "word_bits" => Slot::U(&mut self.tech.word_bits),
            "vth" => Slot::F(&mut self.write_fet.vth),
            "ss_mv_dec" => Slot::F(&mut self.write_fet.ss_mv_dec),
            "k_drive" => Slot::F(&mut self.write_fet.k_drive),
            "r_contact" => Slot::F(&mut self.write_fet.r_contact),
            "ra0" => Slot::F(&mut self.mtj.ra0),
            "lambda_t" => Slot::F(&mut self.mtj.lambda_t),
            "tmr" => Slot::F(&mut self.mtj.tmr),
            "t_ref" => Slot::F(&mut self.mtj.t_ref),
            "ta_leg_length" => Slot::F(&mut self.read_path.ta_leg_length),
            "ta_width" => Slot::F(&mut self.read_path.ta_width),
            "ta_thickness" => Slot::F(&mut self.read_path.ta_thickness),
            "channel_r_on" => Slot::F(&mut self.read_path.channel_r_on),
            "theta_sh" => Slot::F(&mut self.spin.theta_sh),
            "geometry_factor" => Slot::F(&mut self.spin.geometry_factor),
            "eta" => Slot::F(&mut self.dynamics.eta),
            "tilt_deg" => Slot::F(&mut self.dynamics.tilt_deg),
            "switch_threshold" => Slot::F(&mut self.dynamics.switch_threshold),
            "dt_ps" => Slot::F(&mut self.dynamics.dt_ps),
            "read_pulse_ns" => Slot::F(&mut self.dynamics.read_pulse_ns),
            "write_pulse_ns" => Slot::F(&mut self.dynamics.write_pulse_ns),
            "settle_ns" => Slot::F(&mut self.dynamics.settle_ns),
            "max_current" => Slot::F(&mut self.dynamics.max_current),
            "rows" => Slot::U(&mut self.array.rows),
            "cols" => Slot::U(&mut self.array.cols),
            "n_fin_shared" => Slot::U(&mut self.array.n_fin_shared),
            "mode" => Slot::Mode(&mut self.array.mode),
            "driver_r" => Slot::F(&mut self.periphery.driver_r),
            "csa_latency" => Slot::F(&mut self.periphery.csa_latency),
            "csa_threshold" => Slot::F(&mut self.periphery.csa_threshold),
            "csa_energy" => Slot::F(&mut self.periphery.csa_energy),
            "cell_cap" => Slot::F(&mut self.periphery.cell_cap),
            "fin_gate_cap" => Slot::F(&mut self.periphery.fin_gate_cap),
            "fin_pitch" => Slot::F(&mut self.periphery.fin_pitch),
            "misalignment_pct" => Slot::F(&mut self.variation.misalignment_pct),
            "j_scale" => Slot::F(&mut self.variation.j_scale),
            _ => return None,
        })
    }

    /// Set one unprefixed key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let slot = self.slot(key).ok_or_else(|| format!("unknown key `{key}`"))?;
        let float = || value.parse::<f64>().map_err(|_| format!("`{key}` expects a number, got `{value}`"));
        match slot {
            Slot::F(f) => *f = float()?,
            Slot::U(u) => *u = value.parse::<usize>().map_err(|_| format!("`{key}` expects a count, got `{value}`"))?,
            Slot::Mode(m) => {
                *m = Mode::parse(value).ok_or_else(|| format!("unknown mode `{value}`"))?;
            }
            Slot::Geom(w, r, is_d) => {
                let v = float()?;
                if is_d {
                    w.diameter = v;
                    r.diameter = v;
                } else {
                    w.thickness = v;
                    r.thickness = v;
                }
            }
        }
        Ok(())
    }

    pub fn check(&self) -> Result<(), InvalidField> {
        self.material.check()?;
        self.fl_w.check()?;
        self.fl_r.check()?;
        self.tech.check()?;
        positive("vth", self.write_fet.vth)?;
        positive("ss_mv_dec", self.write_fet.ss_mv_dec)?;
        positive("k_drive", self.write_fet.k_drive)?;
        crate::units::non_negative("r_contact", self.write_fet.r_contact)?;
        positive("ra0", self.mtj.ra0)?;
        positive("lambda_t", self.mtj.lambda_t)?;
        positive("tmr", self.mtj.tmr)?;
        positive("t_ref", self.mtj.t_ref)?;
        positive("ta_leg_length", self.read_path.ta_leg_length)?;
        positive("ta_width", self.read_path.ta_width)?;
        positive("ta_thickness", self.read_path.ta_thickness)?;
        positive("channel_r_on", self.read_path.channel_r_on)?;
        if !(self.spin.theta_sh > 0.0 && self.spin.theta_sh <= 1.0) {
            return Err(InvalidField::new("theta_sh", "must lie in (0, 1]"));
        }
        positive("geometry_factor", self.spin.geometry_factor)?;
        if !(self.dynamics.eta > 0.0 && self.dynamics.eta <= 1.0) {
            return Err(InvalidField::new("eta", "must lie in (0, 1]"));
        }
        crate::units::non_negative("tilt_deg", self.dynamics.tilt_deg)?;
        if !(self.dynamics.switch_threshold > 0.0 && self.dynamics.switch_threshold < 1.0) {
            return Err(InvalidField::new("switch_threshold", "must lie in (0, 1)"));
        }
        positive("dt_ps", self.dynamics.dt_ps)?;
        positive("read_pulse_ns", self.dynamics.read_pulse_ns)?;
        positive("write_pulse_ns", self.dynamics.write_pulse_ns)?;
        crate::units::non_negative("settle_ns", self.dynamics.settle_ns)?;
        positive("max_current", self.dynamics.max_current)?;
        if self.array.rows == 0 {
            return Err(InvalidField::new("rows", "must be at least 1"));
        }
        if self.array.cols == 0 || !self.array.cols.is_multiple_of(self.tech.word_bits) {
            return Err(InvalidField::new("cols", "must be a positive multiple of word_bits"));
        }
        if self.array.n_fin_shared == 0 {
            return Err(InvalidField::new("n_fin_shared", "must be at least 1"));
        }
        crate::units::non_negative("driver_r", self.periphery.driver_r)?;
        crate::units::non_negative("csa_latency", self.periphery.csa_latency)?;
        crate::units::non_negative("csa_threshold", self.periphery.csa_threshold)?;
        crate::units::non_negative("csa_energy", self.periphery.csa_energy)?;
        crate::units::non_negative("cell_cap", self.periphery.cell_cap)?;
        crate::units::non_negative("fin_gate_cap", self.periphery.fin_gate_cap)?;
        positive("fin_pitch", self.periphery.fin_pitch)?;
        if !(0.0..=100.0).contains(&self.variation.misalignment_pct) {
            return Err(InvalidField::new("misalignment_pct", "must lie in [0, 100]"));
        }
        if !(self.variation.j_scale >= 0.0 && self.variation.j_scale.is_finite()) {
            return Err(InvalidField::new("j_scale", "must be non-negative"));
        }
        Ok(())
    }
}

/// Load one design. The file's `preset` line picks the design (default
/// `eirw`); entries prefixed for the other design are validated but unused.
pub fn load_config(path: &Path) -> Result<DesignConfig, ConfigError> {
    let src = Source::read(path)?;
    let flavor = match src.preset() {
        None => Flavor::Eirw,
        Some(p) => parse_flavor(p).ok_or_else(|| ConfigError::Parse {
            source_name: src.name.clone(),
            line: src.entries.iter().rev().find(|e| e.key == "preset").map_or(0, |e| e.line),
            msg: format!("unknown preset `{p}`"),
        })?,
    };
    DesignConfig::build(flavor, &[src])
}

/// Baseline and proposed designs built from the same sources.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignPair {
    pub vsh: DesignConfig,
    pub eirw: DesignConfig,
}

impl DesignPair {
    pub fn build(sources: &[Source]) -> Result<Self, ConfigError> {
        Ok(DesignPair {
            vsh: DesignConfig::build(Flavor::Vsh, sources)?,
            eirw: DesignConfig::build(Flavor::Eirw, sources)?,
        })
    }

    pub fn get(&self, flavor: Flavor) -> &DesignConfig {
        match flavor {
            Flavor::Vsh => &self.vsh,
            Flavor::Eirw => &self.eirw,
        }
    }
}
