//! Parameter bundles and the unit bridge.
//!
//! Configuration files use the CGS-flavored units common in magnetics
//! literature (emu/cm³, erg/cm³, MHz/Oe, mJ/m²). Everything downstream of
//! [`MaterialParams::to_internal`] is SI.

use std::f64::consts::PI;

pub const MU0: f64 = 4.0e-7 * PI;
pub const K_B: f64 = 1.380_649e-23;
pub const HBAR: f64 = 1.054_571_817e-34;
pub const Q_E: f64 = 1.602_176_634e-19;

/// A/m per emu/cm³.
pub const EMU_CC_TO_A_M: f64 = 1.0e3;
/// J/m³ per erg/cm³.
pub const ERG_CC_TO_J_M3: f64 = 0.1;
/// rad·s⁻¹·T⁻¹ per MHz/Oe.
pub const MHZ_OE_TO_RAD_S_T: f64 = 1.0e6 * 1.0e4;
/// J/m² per mJ/m².
pub const MJ_M2_TO_J_M2: f64 = 1.0e-3;
/// J/m per pJ/m.
pub const PJ_M_TO_J_M: f64 = 1.0e-12;

/// Magnetic material constants in ingestion units.
#[derive(Clone, Debug, PartialEq)]
pub struct MaterialParams {
    /// emu/cm³
    pub ms: f64,
    /// erg/cm³
    pub ku: f64,
    pub alpha: f64,
    /// MHz/Oe
    pub gamma: f64,
    /// pJ/m, carried for completeness; a macrospin has no exchange stiffness.
    pub a_ex: f64,
    /// mJ/m²
    pub j_ex: f64,
    /// K
    pub temperature: f64,
}

/// The same constants in SI.
#[derive(Clone, Debug, PartialEq)]
pub struct SiMaterial {
    /// A/m
    pub ms: f64,
    /// J/m³
    pub ku: f64,
    pub alpha: f64,
    /// rad·s⁻¹·T⁻¹
    pub gamma: f64,
    /// J/m
    pub a_ex: f64,
    /// J/m²
    pub j_ex: f64,
    /// K
    pub temperature: f64,
}

impl MaterialParams {
    pub fn to_internal(&self) -> SiMaterial {
        SiMaterial {
            ms: self.ms * EMU_CC_TO_A_M,
            ku: self.ku * ERG_CC_TO_J_M3,
            alpha: self.alpha,
            gamma: self.gamma * MHZ_OE_TO_RAD_S_T,
            a_ex: self.a_ex * PJ_M_TO_J_M,
            j_ex: self.j_ex * MJ_M2_TO_J_M2,
            temperature: self.temperature,
        }
    }

    pub fn from_internal(si: &SiMaterial) -> Self {
        MaterialParams {
            ms: si.ms / EMU_CC_TO_A_M,
            ku: si.ku / ERG_CC_TO_J_M3,
            alpha: si.alpha,
            gamma: si.gamma / MHZ_OE_TO_RAD_S_T,
            a_ex: si.a_ex / PJ_M_TO_J_M,
            j_ex: si.j_ex / MJ_M2_TO_J_M2,
            temperature: si.temperature,
        }
    }

    /// Returns the name of the first field violating its invariant.
    pub fn check(&self) -> Result<(), InvalidField> {
        positive("Ms", self.ms)?;
        positive("Ku", self.ku)?;
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(InvalidField::new("alpha", "must lie in (0, 1)"));
        }
        positive("gamma", self.gamma)?;
        non_negative("A_ex", self.a_ex)?;
        non_negative("J_ex", self.j_ex)?;
        positive("temperature", self.temperature)
    }
}

/// Free-layer disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagnetGeometry {
    /// nm
    pub diameter: f64,
    /// nm
    pub thickness: f64,
}

impl MagnetGeometry {
    pub fn new(diameter: f64, thickness: f64) -> Self {
        MagnetGeometry { diameter, thickness }
    }

    /// nm²
    pub fn area_nm2(&self) -> f64 {
        0.25 * PI * self.diameter * self.diameter
    }

    /// nm³
    pub fn volume_nm3(&self) -> f64 {
        self.area_nm2() * self.thickness
    }

    pub fn area_m2(&self) -> f64 {
        self.area_nm2() * 1e-18
    }

    pub fn volume_m3(&self) -> f64 {
        self.volume_nm3() * 1e-27
    }

    pub fn thickness_m(&self) -> f64 {
        self.thickness * 1e-9
    }

    pub fn check(&self) -> Result<(), InvalidField> {
        positive("diameter", self.diameter)?;
        positive("thickness", self.thickness)
    }
}

/// Process and interconnect parameters shared by every cell in an array.
#[derive(Clone, Debug, PartialEq)]
pub struct TechnologyParams {
    /// Minimum feature size, nm.
    pub f: f64,
    /// Metal pitch, nm.
    pub mp: f64,
    pub v_dd: f64,
    pub v_read: f64,
    /// Ω/nm
    pub wire_r_per_len: f64,
    /// F/nm
    pub wire_c_per_len: f64,
    /// Saturation current per fin at full gate drive, µA.
    pub fin_drive: f64,
    pub fet_vth: f64,
    /// Ω·nm
    pub ta_resistivity: f64,
    /// nm
    pub t_mgo: f64,
    pub word_bits: usize,
}

impl TechnologyParams {
    pub fn check(&self) -> Result<(), InvalidField> {
        positive("F", self.f)?;
        positive("MP", self.mp)?;
        positive("V_DD", self.v_dd)?;
        positive("V_READ", self.v_read)?;
        positive("wire_r_per_len", self.wire_r_per_len)?;
        positive("wire_c_per_len", self.wire_c_per_len)?;
        positive("fin_drive", self.fin_drive)?;
        positive("fet_vth", self.fet_vth)?;
        positive("ta_resistivity", self.ta_resistivity)?;
        positive("t_MgO", self.t_mgo)?;
        if self.word_bits == 0 {
            return Err(InvalidField::new("word_bits", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("invalid value for {field}: {reason}")]
pub struct InvalidField {
    pub field: String,
    pub reason: String,
}

impl InvalidField {
    pub fn new(field: &str, reason: &str) -> Self {
        InvalidField { field: field.to_string(), reason: reason.to_string() }
    }
}

pub(crate) fn positive(field: &str, v: f64) -> Result<(), InvalidField> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(InvalidField::new(field, &format!("must be positive and finite, got {v}")))
    }
}

pub(crate) fn non_negative(field: &str, v: f64) -> Result<(), InvalidField> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(InvalidField::new(field, &format!("must be non-negative and finite, got {v}")))
    }
}
