//! Glue from a loaded [`DesignConfig`] to the physics engines.

use crate::array::{ArrayConfig, ArrayError, DeviceConfig, Mode};
use crate::config::DesignConfig;
use crate::layout::LayoutConstants;
use crate::magnetics::{self, CoupledStack, DriveSpec, MagError, SearchOutcome, SearchTarget};
use crate::transport::{self, Flavor};
use crate::units::SiMaterial;
use crate::variation::overlap_fraction;

impl DesignConfig {
    pub fn si_material(&self) -> SiMaterial {
        self.material.to_internal()
    }

    /// Coupled pair for EIRW, single layer for VSH. Misalignment and
    /// coupling degradation from the `variation` block are applied.
    pub fn stack(&self) -> Result<CoupledStack, MagError> {
        let m = self.si_material();
        match self.flavor {
            Flavor::Vsh => Ok(CoupledStack::single(m, self.fl_w)),
            Flavor::Eirw => {
                let j = m.j_ex * self.variation.j_scale;
                CoupledStack::coupled(m, self.fl_w, self.fl_r, j, overlap_fraction(self.variation.misalignment_pct))
            }
        }
    }

    fn drive(&self, i_spin: f64, pulse_ns: f64) -> DriveSpec {
        let d = &self.dynamics;
        let mut drive = DriveSpec::new(i_spin, d.eta, pulse_ns, pulse_ns + d.settle_ns);
        drive.dt_ps = d.dt_ps;
        drive.threshold = d.switch_threshold;
        drive
    }

    pub fn read_drive(&self) -> DriveSpec {
        self.drive(0.0, self.dynamics.read_pulse_ns)
    }

    pub fn write_drive(&self, i_spin: f64) -> DriveSpec {
        self.drive(i_spin, self.dynamics.write_pulse_ns)
    }

    /// Read-disturb critical current of the MTJ layer.
    pub fn read_critical_current(&self) -> Result<SearchOutcome, MagError> {
        magnetics::critical_current_search(
            &self.stack()?,
            &self.read_drive(),
            SearchTarget::ReadDisturb,
            self.dynamics.tilt_deg,
            self.dynamics.max_current,
        )
    }

    /// Switching result for a spin current into FL_W.
    pub fn switch(&self, i_spin: f64) -> Result<magnetics::SwitchResult, MagError> {
        let drive = self.write_drive(i_spin);
        let stack = self.stack()?.prepared(drive.target_sign(), self.dynamics.tilt_deg);
        magnetics::integrate(&stack, &drive)
    }

    /// Spin current per arm produced by a charge current `i_c`.
    pub fn spin_from_charge(&self, i_c: f64) -> f64 {
        transport::spin_current(i_c, self.spin.theta_sh, self.spin.geometry_factor)
    }

    pub fn device(&self, mode: Mode) -> DeviceConfig {
        DeviceConfig {
            flavor: self.flavor,
            mode,
            mtj: self.mtj.clone(),
            read_path: self.read_path.clone(),
            write_fet: self.write_fet.clone(),
            spin: self.spin.clone(),
            d_mtj: self.fl_r.diameter,
            t_mgo: self.tech.t_mgo,
        }
    }

    /// Array view of this design with a known read-disturb current.
    pub fn array_with(&self, mode: Mode, i_cr: f64) -> Result<ArrayConfig, ArrayError> {
        if !(i_cr > 0.0) {
            return Err(ArrayError::BadCriticalCurrent(i_cr));
        }
        Ok(ArrayConfig {
            rows: self.array.rows,
            cols: self.array.cols,
            word_bits: self.tech.word_bits,
            n_fin_shared: self.array.n_fin_shared,
            flavor: self.flavor,
            mode,
            tech: self.tech.clone(),
            device: self.device(mode),
            periphery: self.periphery.clone(),
            layout: LayoutConstants::reference(),
            i_cr,
            stack: self.stack()?,
            dynamics: self.dynamics.clone(),
        })
    }

    /// Array view, running the critical-current search first.
    pub fn array(&self, mode: Mode) -> Result<ArrayConfig, ArrayError> {
        let i_cr = self.read_critical_current()?.current().ok_or(ArrayError::BadCriticalCurrent(0.0))?;
        self.array_with(mode, i_cr)
    }
}
