//! Device–array co-simulation of valley-spin-Hall MRAM.
//!
//! The baseline VSH cell writes a single perpendicular free layer with the
//! spin current of a WSe₂ channel and reads it through the same channel.
//! The EIRW cell splits the free layer into an exchange-coupled write layer
//! and read layer, so reads go through low-resistance Ta legs and a FinFET
//! shared by the whole word.
//!
//! Modules, bottom-up: [`units`] and [`config`] hold parameters,
//! [`magnetics`] integrates the macrospin dynamics, [`transport`] has the
//! compact electrical models, [`array`] solves word-level read networks and
//! access metrics, [`layout`] estimates area, [`variation`] runs
//! misalignment maps and Monte-Carlo, and [`experiments`] produces the CSV
//! tables.

pub mod array;
pub mod config;
pub mod design;
pub mod experiments;
pub mod layout;
pub mod magnetics;
pub mod transport;
pub mod units;
pub mod variation;
