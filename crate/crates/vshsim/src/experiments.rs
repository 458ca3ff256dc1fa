//! Figure experiments: sweeps, CSV tables and headline summaries.

use crate::array::{
    design_name, device_read_currents, iso_rdm_vread, pattern_with_ones, rdm, read_event, sm_differential,
    sm_single_ended, solve_read_word, word_margins, write_current, write_metrics, Address, ArrayError, Mode,
};
use crate::config::{ConfigError, DesignConfig, DesignPair, Source};
use crate::layout::{area_delta, word_area, LayoutConstants, LayoutDims};
use crate::magnetics::{MagError, SearchOutcome};
use crate::transport::{access_fet_current, wse2_current, Flavor};
use crate::variation::{run_variation_map, GridSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Fig4Sm,
    Fig4Rdm,
    Fig4Wt,
    Fig5Map,
    Fig7Pattern,
    Fig8Area,
    Fig9Margins,
    Fig10Scaling,
    Compare,
    DumpIv,
}

impl Experiment {
    pub const ALL: [Experiment; 10] = [
        Experiment::Fig4Sm,
        Experiment::Fig4Rdm,
        Experiment::Fig4Wt,
        Experiment::Fig5Map,
        Experiment::Fig7Pattern,
        Experiment::Fig8Area,
        Experiment::Fig9Margins,
        Experiment::Fig10Scaling,
        Experiment::Compare,
        Experiment::DumpIv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Fig4Sm => "fig4_sm",
            Experiment::Fig4Rdm => "fig4_rdm",
            Experiment::Fig4Wt => "fig4_wt",
            Experiment::Fig5Map => "fig5_map",
            Experiment::Fig7Pattern => "fig7_pattern",
            Experiment::Fig8Area => "fig8_area",
            Experiment::Fig9Margins => "fig9_margins",
            Experiment::Fig10Scaling => "fig10_scaling",
            Experiment::Compare => "compare",
            Experiment::DumpIv => "dump-iv",
        }
    }

    pub fn parse(s: &str) -> Option<Experiment> {
        Experiment::ALL.into_iter().find(|e| e.name() == s || (s == "dump_iv" && *e == Experiment::DumpIv))
    }
}

/// Overrides consumed by the `compare` experiment instead of the design
/// configuration.
pub const COMPARE_KEYS: [&str; 3] = ["metrics", "baseline", "sm_baseline"];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub config: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub overrides: Vec<(String, String)>,
    pub seed: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Input(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("cannot write {path}: {err}")]
    Io { path: String, err: std::io::Error },
}

impl ExperimentError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Solver(_) => 2,
            _ => 1,
        }
    }
}

impl From<ArrayError> for ExperimentError {
    fn from(e: ArrayError) -> Self {
        ExperimentError::Solver(e.to_string())
    }
}

impl From<MagError> for ExperimentError {
    fn from(e: MagError) -> Self {
        ExperimentError::Solver(e.to_string())
    }
}

/// A CSV table with a fixed header.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

/// Shortest round-trip decimal form, so output is exact and stable.
pub fn num(x: f64) -> String {
    format!("{x}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn flag(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

/// Files written and the human-readable summary of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

/// Tables and summary before they touch the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub tables: Vec<(String, Table)>,
    pub summary: String,
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let out = compute(spec)?;
    std::fs::create_dir_all(&spec.out_dir)
        .map_err(|err| ExperimentError::Io { path: spec.out_dir.display().to_string(), err })?;
    let mut files = Vec::new();
    for (name, table) in &out.tables {
        let path = spec.out_dir.join(name);
        write_file(&path, &table.to_csv())?;
        files.push(path);
    }
    let path = spec.out_dir.join(format!("{}_summary.txt", spec.experiment.name()));
    write_file(&path, &out.summary)?;
    files.push(path);
    Ok(Report { files, summary: out.summary })
}

fn write_file(path: &Path, text: &str) -> Result<(), ExperimentError> {
    std::fs::write(path, text).map_err(|err| ExperimentError::Io { path: path.display().to_string(), err })
}

/// Run an experiment without writing anything.
pub fn compute(spec: &ExperimentSpec) -> Result<Output, ExperimentError> {
    let (design_overrides, extra): (Vec<_>, Vec<_>) =
        spec.overrides.iter().cloned().partition(|(k, _)| !COMPARE_KEYS.contains(&k.as_str()));
    if spec.experiment != Experiment::Compare {
        if let Some((k, _)) = extra.first() {
            return Err(ExperimentError::Input(format!("`{k}` only applies to the compare experiment")));
        }
    }
    let mut sources = Vec::new();
    if let Some(path) = &spec.config {
        sources.push(Source::read(path)?);
    }
    if !design_overrides.is_empty() {
        sources.push(Source::from_overrides(&design_overrides)?);
    }
    let pair = DesignPair::build(&sources)?;
    match spec.experiment {
        Experiment::Fig4Sm => fig4_sm(&pair),
        Experiment::Fig4Rdm => fig4_rdm(&pair),
        Experiment::Fig4Wt => fig4_wt(&pair),
        Experiment::Fig5Map => fig5_map(&pair),
        Experiment::Fig7Pattern => fig7_pattern(&pair, spec.seed),
        Experiment::Fig8Area => fig8_area(&pair),
        Experiment::Fig9Margins => fig9_margins(&pair),
        Experiment::Fig10Scaling => fig10_scaling(&pair),
        Experiment::Compare => compare(&pair, &extra),
        Experiment::DumpIv => dump_iv(&pair),
    }
}

/// Read-disturb critical currents `(VSH, EIRW)`, µA.
pub fn critical_currents(pair: &DesignPair) -> Result<(f64, f64), ExperimentError> {
    let icr = |c: &DesignConfig| -> Result<f64, ExperimentError> {
        match c.read_critical_current()? {
            SearchOutcome::Found(i) => Ok(i),
            SearchOutcome::NoSwitch { max_ua } => Err(ExperimentError::Solver(format!(
                "{} read layer does not switch below {max_ua} µA",
                c.flavor.name()
            ))),
        }
    };
    let (v, e) = rayon::join(|| icr(&pair.vsh), || icr(&pair.eirw));
    Ok((v?, e?))
}

/// Read voltages swept in the device-level tables, V.
pub fn vread_sweep() -> Vec<f64> {
    (1..=25).map(|k| k as f64 * 0.02).collect()
}

fn fig4_sm(pair: &DesignPair) -> Result<Output, ExperimentError> {
    let mut t = Table::new(&["v_read", "sm_vsh", "sm_dvsh", "sm_eirw", "sm_deirw"]);
    let dv = pair.vsh.device(Mode::SingleEnded);
    let de = pair.eirw.device(Mode::SingleEnded);
    for v in vread_sweep() {
        let (pv, av) = device_read_currents(&dv, &pair.vsh.tech, v);
        let (pe, ae) = device_read_currents(&de, &pair.eirw.tech, v);
        t.push(vec![
            num(v),
            num(sm_single_ended(pv, av)),
            num(sm_differential(pv, av)),
            num(sm_single_ended(pe, ae)),
            num(sm_differential(pe, ae)),
        ]);
    }
    let (icr_v, icr_e) = critical_currents(pair)?;
    let vv = iso_rdm_vread(&dv, &pair.vsh.tech, icr_v, 80.0);
    let ve = iso_rdm_vread(&de, &pair.eirw.tech, icr_e, 80.0);
    let (pv, av) = device_read_currents(&dv, &pair.vsh.tech, vv);
    let (pe, ae) = device_read_currents(&de, &pair.eirw.tech, ve);
    let mut s = String::new();
    writeln!(s, "fig4_sm: device sense margin versus read voltage").unwrap();
    writeln!(s, "  iso-RDM 80 % read voltage: VSH {vv:.4} V, EIRW {ve:.4} V").unwrap();
    writeln!(s, "  SM ratio EIRW/VSH at iso-RDM 80 %: {:.3} (target 1.9)", (pe - ae) / (pv - av)).unwrap();
    Ok(Output { tables: vec![("fig4_sm.csv".into(), t)], summary: s })
}

fn fig4_rdm(pair: &DesignPair) -> Result<Output, ExperimentError> {
    let (icr_v, icr_e) = critical_currents(pair)?;
    let mut t = Table::new(&["v_read", "i_ap_vsh", "i_ap_eirw", "rdm_vsh", "rdm_eirw"]);
    let dv = pair.vsh.device(Mode::SingleEnded);
    let de = pair.eirw.device(Mode::SingleEnded);
    for v in vread_sweep() {
        let (_, av) = device_read_currents(&dv, &pair.vsh.tech, v);
        let (_, ae) = device_read_currents(&de, &pair.eirw.tech, v);
        t.push(vec![num(v), num(av), num(ae), num(rdm(icr_v, av)), num(rdm(icr_e, ae))]);
    }
    let mut s = String::new();
    writeln!(s, "fig4_rdm: device read-disturb margin versus read voltage").unwrap();
    writeln!(s, "  I_CR VSH  {icr_v:.3} µA (target 15.5)").unwrap();
    writeln!(s, "  I_CR EIRW {icr_e:.3} µA (target 20.3)").unwrap();
    Ok(Output { tables: vec![("fig4_rdm.csv".into(), t)], summary: s })
}

/// Write currents swept for the latency curves, µA.
pub fn write_current_sweep() -> Vec<f64> {
    (5..=30).map(|k| k as f64 * 10.0).collect()
}

fn fig4_wt(pair: &DesignPair) -> Result<Output, ExperimentError> {
    let currents = write_current_sweep();
    let times = currents
        .par_iter()
        .map(|&i| -> Result<(Option<f64>, Option<f64>), MagError> {
            let tv = pair.vsh.switch(pair.vsh.spin_from_charge(i))?.t_switch_ns();
            let te = pair.eirw.switch(pair.eirw.spin_from_charge(i))?.t_switch_ns();
            Ok((tv, te))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["i_write_ua", "t_vsh_ns", "t_eirw_ns", "ratio"]);
    let mut ratios = Vec::new();
    for (&i, &(tv, te)) in currents.iter().zip(&times) {
        let r = tv.zip(te).map(|(a, b)| b / a);
        ratios.extend(r);
        t.push(vec![num(i), opt(tv), opt(te), opt(r)]);
    }

    // Trajectory of the coupled stack at the array's own write current.
    let i_w = pair.eirw.write_fet_current();
    let mut drive = pair.eirw.write_drive(pair.eirw.spin_from_charge(i_w));
    drive.sample_every = 10;
    let stack = pair.eirw.stack()?.prepared(drive.target_sign(), pair.eirw.dynamics.tilt_deg);
    let res = crate::magnetics::integrate(&stack, &drive)?;
    let mut traj = Table::new(&["t_ns", "mw_x", "mw_y", "mw_z", "mr_x", "mr_y", "mr_z"]);
    for r in &res.trajectory {
        let (mw, mr) = (r.m_w, r.m_r);
        traj.push(vec![num(r.t_ns), num(mw.x), num(mw.y), num(mw.z), num(mr.x), num(mr.y), num(mr.z)]);
    }

    let mut s = String::new();
    writeln!(s, "fig4_wt: write latency versus write current").unwrap();
    if let (Some(lo), Some(hi)) = (ratios.iter().copied().reduce(f64::min), ratios.iter().copied().reduce(f64::max)) {
        writeln!(s, "  latency ratio EIRW/VSH over the sweep: {lo:.3} to {hi:.3} (target above 1.7)").unwrap();
    }
    writeln!(s, "  trajectory at I_WRITE = {i_w:.2} µA: t_switch {}", opt(res.t_switch_ns())).unwrap();
    Ok(Output { tables: vec![("fig4_wt.csv".into(), t), ("trajectory.csv".into(), traj)], summary: s })
}

fn fig5_map(pair: &DesignPair) -> Result<Output, ExperimentError> {
    let c = &pair.eirw;
    let i_w = c.write_fet_current();
    let drive = c.write_drive(c.spin_from_charge(i_w));
    let template = c.stack()?;
    let grid = GridSpec::default();
    let res = run_variation_map(&template, c.si_material().j_ex, &drive, c.dynamics.tilt_deg, &grid)?;
    let mut t = Table::new(&["misalign_pct", "j_scale", "switched", "t_switch_ns", "t_ratio"]);
    for r in &res.rows {
        t.push(vec![num(r.misalignment_pct), num(r.j_scale), flag(r.switched), opt(r.t_switch_ns), opt(r.t_ratio)]);
    }
    let mut s = String::new();
    writeln!(s, "fig5_map: misalignment and coupling degradation at I_WRITE = {i_w:.2} µA").unwrap();
    writeln!(s, "  nominal switching time: {} ns", opt(res.nominal_ns)).unwrap();
    for (m, j, target) in [(20.0, 0.6, "similar"), (20.0, 0.5, "about +1.5 %")] {
        let r = res.at(m, j).and_then(|r| r.t_ratio);
        writeln!(s, "  t/t0 at ({m} %, {j}): {} (target {target})", opt(r)).unwrap();
    }
    for &m in &grid.misalignments {
        writeln!(s, "  lowest switching j_scale at {m} %: {}", opt(res.boundary(m))).unwrap();
    }
    Ok(Output { tables: vec![("fig5.csv".into(), t)], summary: s })
}

/// Number of random words sampled for the differential spread.
pub const DIFF_SAMPLES: usize = 32;

fn fig7_pattern(pair: &DesignPair, seed: u64) -> Result<Output, ExperimentError> {
    let (_, icr_e) = critical_currents(pair)?;
    let se = pair.eirw.array_with(Mode::SingleEnded, icr_e)?;
    let mut t = Table::new(&["n_ones", "i_p", "i_ap", "i_ref"]);
    for n in 0..=se.word_bits {
        let sol = solve_read_word(&se, &pattern_with_ones(se.word_bits, n))?;
        t.push(vec![n.to_string(), num(sol.i_p), num(sol.i_ap), opt(sol.i_ref)]);
    }

    let diff = pair.eirw.array_with(Mode::Differential, icr_e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = Table::new(&["sample", "n_ones", "i_p", "i_ap"]);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..DIFF_SAMPLES {
        let pattern: Vec<bool> = (0..diff.word_bits).map(|_| rng.random()).collect();
        let sol = solve_read_word(&diff, &pattern)?;
        lo = lo.min(sol.i_p);
        hi = hi.max(sol.i_p);
        d.push(vec![k.to_string(), sol.n_ones.to_string(), num(sol.i_p), num(sol.i_ap)]);
    }
    let mut s = String::new();
    writeln!(s, "fig7_pattern: single-ended read currents versus stored ones").unwrap();
    writeln!(s, "  differential I_P spread over {DIFF_SAMPLES} random words: {:.4} %", (hi - lo) / lo * 100.0).unwrap();
    Ok(Output { tables: vec![("fig7.csv".into(), t), ("fig7_diff.csv".into(), d)], summary: s })
}

/// Layout dimensions of a design pair.
pub fn layout_dims(pair: &DesignPair) -> LayoutDims {
    LayoutDims {
        f: pair.eirw.tech.f,
        mp: pair.eirw.tech.mp,
        fin_pitch: pair.eirw.periphery.fin_pitch,
        d_vsh: pair.vsh.fl_r.diameter,
        d_eirw: pair.eirw.fl_r.diameter,
    }
}

fn fig8_area(pair: &DesignPair) -> Result<Output, ExperimentError> {
    let dims = layout_dims(pair);
    let consts = LayoutConstants::reference();
    let bits = pair.eirw.tech.word_bits;
    let mut t = Table::new(&["n_fin", "delta_se_pct", "delta_diff_pct"]);
    for n in 1..=50 {
        t.push(vec![
            n.to_string(),
            num(area_delta(Mode::SingleEnded, n, bits, &dims, &consts)),
            num(area_delta(Mode::Differential, n, bits, &dims, &consts)),
        ]);
    }
    let mut s = String::new();
    writeln!(s, "fig8_area: word area change of EIRW over VSH").unwrap();
    for (n, se, diff) in [(20, "below +1", "-1"), (50, "12", "7")] {
        writeln!(
            s,
            "  {n} fins: SE {:+.2} % (target {se}), diff {:+.2} % (target {diff})",
            area_delta(Mode::SingleEnded, n, bits, &dims, &consts),
            area_delta(Mode::Differential, n, bits, &dims, &consts)
        )
        .unwrap();
    }
    Ok(Output { tables: vec![("fig8.csv".into(), t)], summary: s })
}

/// Shared-fin counts of the margin sweep.
pub const FIG9_FINS: [usize; 5] = [10, 20, 30, 40, 50];

fn fig9_margins(pair: &DesignPair) -> Result<Output, ExperimentError> {
    let (icr_v, icr_e) = critical_currents(pair)?;
    let margins = |c: &DesignConfig, icr: f64, mode: Mode, n: usize| -> Result<(f64, f64), ArrayError> {
        let mut c = c.clone();
        c.array.n_fin_shared = n;
        let m = word_margins(&c.array_with(mode, icr)?)?;
        Ok((m.sm, m.rdm))
    };
    let mut t = Table::new(&["n_fin", "sm_se", "sm_diff", "rdm_se", "rdm_diff"]);
    for n in FIG9_FINS {
        let (sm_se, rdm_se) = margins(&pair.eirw, icr_e, Mode::SingleEnded, n)?;
        let (sm_d, rdm_d) = margins(&pair.eirw, icr_e, Mode::Differential, n)?;
        t.push(vec![n.to_string(), num(sm_se), num(sm_d), num(rdm_se), num(rdm_d)]);
    }
    let n0 = pair.eirw.array.n_fin_shared;
    let (vs, vr) = margins(&pair.vsh, icr_v, Mode::SingleEnded, n0)?;
    let (vds, vdr) = margins(&pair.vsh, icr_v, Mode::Differential, n0)?;
    let (es, er) = margins(&pair.eirw, icr_e, Mode::SingleEnded, n0)?;
    let (eds, edr) = margins(&pair.eirw, icr_e, Mode::Differential, n0)?;
    let mut s = String::new();
    writeln!(s, "fig9_margins: word-level margins of EIRW arrays versus shared fins").unwrap();
    writeln!(s, "  at {n0} fins, SM ratio SE {:.3} (target 1.3), diff {:.3} (target 1.1)", es / vs, eds / vds).unwrap();
    writeln!(s, "  at {n0} fins, RDM ratio SE {:.3}, diff {:.3} (target 1.2 to 1.3)", er / vr, edr / vdr).unwrap();
    Ok(Output { tables: vec![("fig9.csv".into(), t)], summary: s })
}

/// Array sizes of the scaling sweep.
pub const FIG10_SIZES: [usize; 3] = [256, 512, 1024];

/// Access metrics of one design.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DesignMetrics {
    pub flavor: Flavor,
    pub mode: Mode,
    pub rows: usize,
    pub cols: usize,
    pub wt: f64,
    pub we: f64,
    pub rt: f64,
    pub re: f64,
    /// Word area per bit, µm².
    pub area: f64,
    /// Worst-case word sense margin, µA.
    pub sm: f64,
    /// Worst-case word read-disturb margin, %.
    pub rdm: f64,
}

/// Write switching times `(VSH, EIRW)` at each design's FET write current, ns.
pub fn write_times(pair: &DesignPair) -> Result<(f64, f64), ExperimentError> {
    let t = |c: &DesignConfig| -> Result<f64, ExperimentError> {
        let i = c.spin_from_charge(c.write_fet_current());
        c.switch(i)?
            .t_switch_ns()
            .ok_or_else(|| ExperimentError::Solver(format!("{} write of {i:.3} µA does not switch", c.flavor.name())))
    };
    let (v, e) = rayon::join(|| t(&pair.vsh), || t(&pair.eirw));
    Ok((v?, e?))
}

/// Metrics of `flavor`/`mode` at `n × n`, given its critical current and
/// write switching time.
pub fn design_metrics(
    c: &DesignConfig,
    mode: Mode,
    n: usize,
    i_cr: f64,
    t_sw: f64,
) -> Result<DesignMetrics, ExperimentError> {
    let mut c = c.clone();
    c.array.rows = n;
    c.array.cols = n;
    c.check().map_err(ConfigError::from)?;
    let a = c.array_with(mode, i_cr)?;
    let w = write_metrics(&a, write_current(&a, true), t_sw)?;
    let r = read_event(&a, Address { row: 0, word: 0 })?;
    let m = word_margins(&a)?;
    let area = word_area(c.flavor, mode, a.n_fin_shared, a.word_bits, &a.layout_dims(), &a.layout);
    Ok(DesignMetrics {
        flavor: c.flavor,
        mode,
        rows: n,
        cols: n,
        wt: w.wt_ns,
        we: w.we_fj,
        rt: r.rt_ns,
        re: r.re_fj,
        area: area.um2 / a.word_bits as f64,
        sm: m.sm,
        rdm: m.rdm,
    })
}

/// All four designs at each size in `sizes`, ordered by size, then VSH,
/// DVSH, EIRW, DEIRW.
pub fn scaling_metrics(pair: &DesignPair, sizes: &[usize]) -> Result<Vec<DesignMetrics>, ExperimentError> {
    let ((icr_v, icr_e), (tv, te)) = {
        let (a, b) = rayon::join(|| critical_currents(pair), || write_times(pair));
        (a?, b?)
    };
    let jobs: Vec<(usize, Flavor, Mode)> = sizes
        .iter()
        .flat_map(|&n| {
            [Flavor::Vsh, Flavor::Eirw]
                .into_iter()
                .flat_map(move |f| [Mode::SingleEnded, Mode::Differential].map(|m| (n, f, m)))
        })
        .collect();
    jobs.par_iter()
        .map(|&(n, f, m)| match f {
            Flavor::Vsh => design_metrics(&pair.vsh, m, n, icr_v, tv),
            Flavor::Eirw => design_metrics(&pair.eirw, m, n, icr_e, te),
        })
        .collect()
}

fn fig10_scaling(pair: &DesignPair) -> Result<Output, ExperimentError> {
    let ms = scaling_metrics(pair, &FIG10_SIZES)?;
    let mut t = Table::new(&["rows", "cols", "wt", "we", "rt", "re", "flavor", "mode"]);
    for m in &ms {
        t.push(vec![
            m.rows.to_string(),
            m.cols.to_string(),
            num(m.wt),
            num(m.we),
            num(m.rt),
            num(m.re),
            m.flavor.name().to_string(),
            m.mode.name().to_string(),
        ]);
    }
    let mut s = String::new();
    writeln!(s, "fig10_scaling: EIRW relative to VSH (write increase, read reduction)").unwrap();
    for n in FIG10_SIZES {
        for mode in [Mode::SingleEnded, Mode::Differential] {
            let find = |f: Flavor| ms.iter().find(|m| m.rows == n && m.flavor == f && m.mode == mode).unwrap();
            let (v, e) = (find(Flavor::Vsh), find(Flavor::Eirw));
            writeln!(
                s,
                "  {n}x{n} {:5}: WT {:+.1} %, WE {:+.1} %, RT {:+.1} %, RE {:+.1} %",
                design_name(Flavor::Eirw, mode),
                (e.wt / v.wt - 1.0) * 100.0,
                (e.we / v.we - 1.0) * 100.0,
                (e.rt / v.rt - 1.0) * 100.0,
                (e.re / v.re - 1.0) * 100.0
            )
            .unwrap();
        }
    }
    writeln!(s, "  targets at 256x256: WT +67 %, WE +95 %, RT -39 to -42 %, RE -36 to -46 %").unwrap();
    writeln!(s, "  targets at 1024x1024: RT -47 to -50 %, RE -46 to -50 %").unwrap();
    Ok(Output { tables: vec![("fig10.csv".into(), t)], summary: s })
}

/// Absolute metrics of one named design.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRow {
    pub design: String,
    /// wt, we, rt, re, area, sm
    pub values: [f64; 6],
}

/// A design's metrics normalized to the baselines.
#[derive(Clone, Debug, PartialEq)]
pub struct CompareRow {
    pub design: String,
    pub wt: f64,
    pub we: f64,
    pub rt: f64,
    pub re: f64,
    pub area: f64,
    pub sm: f64,
}

pub const METRICS_HEADER: [&str; 7] = ["design", "wt", "we", "rt", "re", "area", "sm"];

/// Parse a metrics CSV with the [`METRICS_HEADER`] columns.
pub fn parse_metrics(name: &str, text: &str) -> Result<Vec<MetricsRow>, ExperimentError> {
    let bad = |line: usize, msg: String| ExperimentError::Input(format!("{name}:{line}: {msg}"));
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty metrics file".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols != METRICS_HEADER {
        return Err(bad(1, format!("expected header `{}`", METRICS_HEADER.join(","))));
    }
    lines
        .map(|(i, l)| {
            let f: Vec<&str> = l.split(',').map(str::trim).collect();
            if f.len() != METRICS_HEADER.len() {
                return Err(bad(i + 1, format!("expected {} fields, got {}", METRICS_HEADER.len(), f.len())));
            }
            let mut values = [0.0; 6];
            for (v, s) in values.iter_mut().zip(&f[1..]) {
                *v = s
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite() && *x != 0.0)
                    .ok_or_else(|| bad(i + 1, format!("`{s}` is not a finite non-zero number")))?;
            }
            Ok(MetricsRow { design: f[0].to_string(), values })
        })
        .collect()
}

/// Normalize every row to `baseline`, except sense margin, which is
/// normalized to `sm_baseline`.
pub fn compare_designs(
    rows: &[MetricsRow],
    baseline: &str,
    sm_baseline: &str,
) -> Result<Vec<CompareRow>, ExperimentError> {
    let find = |name: &str| {
        rows.iter()
            .find(|r| r.design == name)
            .ok_or_else(|| ExperimentError::Input(format!("baseline `{name}` is missing from the metrics")))
    };
    let b = find(baseline)?;
    let sb = find(sm_baseline)?;
    Ok(rows
        .iter()
        .map(|r| CompareRow {
            design: r.design.clone(),
            wt: r.values[0] / b.values[0],
            we: r.values[1] / b.values[1],
            rt: r.values[2] / b.values[2],
            re: r.values[3] / b.values[3],
            area: r.values[4] / b.values[4],
            sm: r.values[5] / sb.values[5],
        })
        .collect())
}

fn metrics_table(rows: &[MetricsRow]) -> Table {
    let mut t = Table::new(&METRICS_HEADER);
    for r in rows {
        let mut row = vec![r.design.clone()];
        row.extend(r.values.iter().map(|v| num(*v)));
        t.push(row);
    }
    t
}

fn compare(pair: &DesignPair, extra: &[(String, String)]) -> Result<Output, ExperimentError> {
    let get = |k: &str| extra.iter().rev().find(|(key, _)| key == k).map(|(_, v)| v.clone());
    let baseline = get("baseline").unwrap_or_else(|| "VSH".to_string());
    let sm_baseline = get("sm_baseline").unwrap_or_else(|| baseline.clone());
    let mut tables = Vec::new();
    let rows = match get("metrics") {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|err| ExperimentError::Input(format!("cannot read {path}: {err}")))?;
            parse_metrics(&path, &text)?
        }
        None => {
            let n = pair.eirw.array.rows;
            if pair.eirw.array.cols != n {
                return Err(ExperimentError::Input("compare simulates square arrays; set rows = cols".into()));
            }
            let rows: Vec<MetricsRow> = scaling_metrics(pair, &[n])?
                .iter()
                .map(|m| MetricsRow {
                    design: design_name(m.flavor, m.mode).to_string(),
                    values: [m.wt, m.we, m.rt, m.re, m.area, m.sm],
                })
                .collect();
            tables.push(("metrics.csv".to_string(), metrics_table(&rows)));
            rows
        }
    };
    let cmp = compare_designs(&rows, &baseline, &sm_baseline)?;
    let mut t = Table::new(&METRICS_HEADER);
    for r in &cmp {
        t.push(vec![r.design.clone(), num(r.wt), num(r.we), num(r.rt), num(r.re), num(r.area), num(r.sm)]);
    }
    let mut s = String::new();
    writeln!(s, "compare: metrics normalized to {baseline} (sense margin to {sm_baseline})").unwrap();
    writeln!(s, "  {:8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}", "design", "wt", "we", "rt", "re", "area", "sm").unwrap();
    for r in &cmp {
        writeln!(s, "  {:8} {:8.3} {:8.3} {:8.3} {:8.3} {:8.3} {:8.3}", r.design, r.wt, r.we, r.rt, r.re, r.area, r.sm)
            .unwrap();
    }
    tables.push(("compare.csv".to_string(), t));
    Ok(Output { tables, summary: s })
}

fn dump_iv(pair: &DesignPair) -> Result<Output, ExperimentError> {
    let c = &pair.eirw;
    let vdd = c.tech.v_dd;
    let steps = 16;
    let mut t = Table::new(&["device", "v_gs", "v_ds", "i_ua"]);
    for g in 0..=4 {
        let vg = vdd * g as f64 / 4.0;
        for k in 0..=steps {
            let vd = vdd * k as f64 / steps as f64;
            // The write FET is p-type: gate and drain swing below the source.
            t.push(vec!["wse2".into(), num(-vg), num(-vd), num(wse2_current(-vg, -vd, &c.write_fet))]);
        }
    }
    for g in 0..=4 {
        let vg = vdd * g as f64 / 4.0;
        for k in 0..=steps {
            let vd = vdd * k as f64 / steps as f64;
            t.push(vec!["finfet".into(), num(vg), num(vd), num(access_fet_current(vg, vd, 1, &c.tech))]);
        }
    }
    let mut s = String::new();
    writeln!(s, "dump-iv: WSe2 write transistor and single-fin access transistor").unwrap();
    writeln!(s, "  WSe2 on current at |V_GS| = |V_DS| = {vdd} V: {:.3} µA", wse2_current(-vdd, -vdd, &c.write_fet))
        .unwrap();
    writeln!(s, "  FinFET on current per fin: {:.3} µA", access_fet_current(vdd, vdd, 1, &c.tech)).unwrap();
    Ok(Output { tables: vec![("iv.csv".into(), t)], summary: s })
}

impl DesignConfig {
    /// Cell write current delivered by the WSe₂ transistor, µA.
    pub fn write_fet_current(&self) -> f64 {
        wse2_current(-self.tech.v_dd, -self.tech.v_dd, &self.write_fet)
    }
}
