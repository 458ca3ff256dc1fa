//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use vshsim::array::*;
use vshsim::config::{DesignConfig, DesignPair};
use vshsim::experiments::*;
use vshsim::layout::*;
use vshsim::magnetics::*;
use vshsim::transport::{access_fet_current, effective_overdrive, Flavor, FINFET_SS};
use vshsim::units::TechnologyParams;
use vshsim::variation::{run_variation_map, GridSpec};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn within(x: f64, lo: f64, hi: f64) -> bool {
    x >= lo && x <= hi
}

fn pair() -> DesignPair {
    DesignPair::build(&[]).unwrap()
}

fn icr(c: &DesignConfig) -> f64 {
    c.read_critical_current().unwrap().current().expect("read layer switches")
}

fn c1_thermal_stability() -> Verdict {
    let p = pair();
    let m = p.vsh.si_material();
    let d30 = energy_barrier(&p.vsh.fl_w, &m, false);
    let d21 = energy_barrier(&p.eirw.fl_w, &p.eirw.si_material(), true);
    verdict(
        (d30 - 51.0).abs() <= 0.5 && (d21 - 50.0).abs() <= 0.5,
        format!("Δ(30 nm) = {d30:.2} (51.0 ± 0.5), Δ(21 nm pair) = {d21:.2} (50.0 ± 0.5)"),
    )
}

fn with_states(stack: &CoupledStack, w: Vec3, r: Vec3) -> CoupledStack {
    let mut s = stack.clone();
    s.fl_w.state = MagnetState::new(w);
    if let Some(l) = &mut s.fl_r {
        l.state = MagnetState::new(r);
    }
    s
}

fn c2_llg_integrity() -> Verdict {
    let c = pair().eirw;
    let stack = c.stack().unwrap();

    // Norm after renormalization over a full switching run.
    let mut d = c.write_drive(c.spin_from_charge(c.write_fet_current()));
    d.sample_every = 1;
    let res = integrate(&stack.prepared(1.0, c.dynamics.tilt_deg), &d).unwrap();
    let drift =
        res.trajectory.iter().map(|r| (r.m_w.norm() - 1.0).abs().max((r.m_r.norm() - 1.0).abs())).fold(0.0, f64::max);

    // Poles stay put with and without drive.
    let mut stationary = true;
    for (w, r) in [(Vec3::Z, Vec3::Z), (-Vec3::Z, -Vec3::Z), (Vec3::Z, -Vec3::Z)] {
        for on in [false, true] {
            let (nw, nr) = rk4_step_raw(&with_states(&stack, w, r), &DriveSpec::new(80.0, 0.9, 1.0, 1.0), on);
            stationary &= nw == w && nr == Some(r);
        }
    }

    // Reversed current mirrors every z component.
    let mut up = c.write_drive(90.0);
    up.sample_every = 5;
    let mut down = up.clone();
    down.i_spin = -up.i_spin;
    let a = integrate(&stack.prepared(up.target_sign(), 1.0), &up).unwrap();
    let b = integrate(&stack.prepared(down.target_sign(), 1.0), &down).unwrap();
    let mirror = a
        .trajectory
        .iter()
        .zip(&b.trajectory)
        .map(|(p, q)| (p.m_w.z + q.m_w.z).abs().max((p.m_r.z + q.m_r.z).abs()))
        .fold(0.0, f64::max);

    // Energy never rises with the drive off.
    let mut relax = DriveSpec::new(0.0, 0.9, 0.0, 3.0);
    relax.sample_every = 1;
    let s0 = with_states(&stack, Vec3::new(0.6, 0.0, 0.8), Vec3::new(-0.3, 0.5, -0.81));
    let e: Vec<f64> =
        integrate(&s0, &relax).unwrap().trajectory.iter().map(|r| with_states(&s0, r.m_w, r.m_r).energy()).collect();
    let descent = e.windows(2).all(|w| w[1] <= w[0] + 1e-12 * e[0].abs());

    // Global error falls by ≥ 8 when dt halves.
    let final_r = |dt: f64| {
        let mut d = DriveSpec::new(70.0, 0.9, 0.4, 0.4);
        d.dt_ps = dt;
        integrate(&stack.prepared(1.0, 20.0), &d).unwrap().final_r.unwrap()
    };
    let reference = final_r(0.0625);
    let ratio = (final_r(2.0) - reference).norm() / (final_r(1.0) - reference).norm();

    verdict(
        drift < 1e-6 && stationary && mirror <= 1e-9 && descent && ratio >= 8.0,
        format!(
            "norm drift {drift:.1e} (<1e-6), poles stationary {stationary}, mirror error {mirror:.1e} (≤1e-9), \
             energy descent {descent}, RK4 halving ratio {ratio:.2} (≥8)"
        ),
    )
}

fn c3_critical_current() -> Verdict {
    let mut p = pair();
    let eta =
        fit_eta(&p.vsh.stack().unwrap(), &p.vsh.read_drive(), SearchTarget::ReadDisturb, p.vsh.dynamics.tilt_deg, 15.5)
            .unwrap();
    p.vsh.dynamics.eta = eta;
    p.eirw.dynamics.eta = eta;
    let (u, k) = (icr(&p.vsh), icr(&p.eirw));
    let pass = (u - 15.5).abs() <= 0.05 && within(k, 0.75 * 20.3, 1.25 * 20.3) && k > u;
    verdict(
        pass,
        format!(
            "η = {eta:.6}; uncoupled I_CR = {u:.3} µA (15.5 ± 0.05); coupled I_CR = {k:.3} µA \
             ([{:.3}, {:.3}] and above uncoupled)",
            0.75 * 20.3,
            1.25 * 20.3
        ),
    )
}

fn c4_write_latency() -> Verdict {
    let p = pair();
    let sweep = write_current_sweep();
    let t = |c: &DesignConfig, i: f64| c.switch(c.spin_from_charge(i)).unwrap().t_switch_ns();
    let tv: Vec<Option<f64>> = sweep.iter().map(|&i| t(&p.vsh, i)).collect();
    let te: Vec<Option<f64>> = sweep.iter().map(|&i| t(&p.eirw, i)).collect();
    let all_switch = tv.iter().chain(&te).all(Option::is_some);
    if !all_switch {
        return verdict(false, "sweep is not super-critical for both designs".into());
    }
    let tv: Vec<f64> = tv.into_iter().flatten().collect();
    let te: Vec<f64> = te.into_iter().flatten().collect();
    let mono = |v: &[f64]| v.windows(2).all(|w| w[1] <= w[0]);
    let ratios: Vec<f64> = tv.iter().zip(&te).map(|(a, b)| b / a).collect();
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pass = mono(&tv) && mono(&te) && lo >= 1.3 && hi <= 2.5;
    verdict(
        pass,
        format!(
            "sweep {}..{} µA: t_switch non-increasing VSH {} EIRW {}; latency ratio {lo:.3}..{hi:.3} \
             ([1.3, 2.5]); at least 1.7 everywhere: {}",
            sweep[0],
            sweep[sweep.len() - 1],
            mono(&tv),
            mono(&te),
            lo >= 1.7
        ),
    )
}

fn c5_variation_map() -> Verdict {
    let c = pair().eirw;
    let drive = c.write_drive(c.spin_from_charge(c.write_fet_current()));
    let grid = GridSpec::default();
    let res = run_variation_map(&c.stack().unwrap(), c.si_material().j_ex, &drive, c.dynamics.tilt_deg, &grid).unwrap();
    let nominal = res.at(0.0, 1.0).is_some_and(|r| r.switched);
    let low_fails = res.rows.iter().filter(|r| r.j_scale == 0.3).all(|r| !r.switched);

    // Lowest switching j_scale per misalignment; a column that never
    // switches has its boundary above the grid.
    let bounds: Vec<f64> = grid.misalignments.iter().map(|&m| res.boundary(m).unwrap_or(f64::INFINITY)).collect();
    let mut order: Vec<(f64, f64)> = grid.misalignments.iter().copied().zip(bounds.iter().copied()).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = order.windows(2).all(|w| w[0].1 <= w[1].1);
    // Every switching column must be contiguous from the top of the grid.
    let contiguous = grid.misalignments.iter().all(|&m| {
        let b = res.boundary(m).unwrap_or(f64::INFINITY);
        res.rows.iter().filter(|r| r.misalignment_pct == m).all(|r| r.switched == (r.j_scale >= b))
    });
    let boundary_exists = monotone && contiguous && low_fails;

    let point = |m: f64, j: f64| res.at(m, j).and_then(|r| r.t_ratio);
    let p06 = point(20.0, 0.6);
    let p05 = point(20.0, 0.5);
    let p06_ok = p06.is_some_and(|r| within(r, 0.85, 1.15));
    let p05_ok = p05.is_some_and(|r| r <= 1.10);
    let boundary_20 = res.boundary(20.0).unwrap_or(f64::INFINITY);
    // Above j_scale 0.4 the point checks are reported but do not gate.
    let points_gate = boundary_20 <= 0.4;
    let pass = nominal && low_fails && boundary_exists && (!points_gate || (p06_ok && p05_ok));
    let fmt = |x: Option<f64>| x.map_or("no switch".to_string(), |v| format!("{v:.3}"));
    let bstr: Vec<String> =
        order.iter().map(|(m, b)| if b.is_finite() { format!("{m}%→{b}") } else { format!("{m}%→none") }).collect();
    verdict(
        pass,
        format!(
            "nominal switches {nominal} ({} ns); all j=0.3 fail {low_fails}; monotone boundary {boundary_exists} [{}]; \
             t/t0 at (20%, 0.6) {} (±15%), at (20%, 0.5) {} (≤ +10%){}",
            fmt(res.nominal_ns),
            bstr.join(", "),
            fmt(p06),
            fmt(p05),
            if points_gate { "" } else { "; boundary above 0.4 so point checks are informational" }
        ),
    )
}

/// Newton on the full nodal system (node x plus each branch's inner node).
fn nodal_reference(r_mtj: &[f64], r_s: f64, v_sl: f64, v_gate: f64, n_fin: usize, tech: &TechnologyParams) -> Vec<f64> {
    let n = r_mtj.len();
    let fet = |vx: f64| access_fet_current(v_gate, vx, n_fin, tech) * 1e-6;
    let mut v = DVector::from_element(n + 1, 0.5 * v_sl);
    for _ in 0..100 {
        let x = v[n];
        let mut f = DVector::zeros(n + 1);
        let mut j = DMatrix::zeros(n + 1, n + 1);
        let gs = 1.0 / (r_s * 1e3);
        for k in 0..n {
            let gm = 1.0 / (r_mtj[k] * 1e3);
            f[k] = (v_sl - v[k]) * gm - (v[k] - x) * gs;
            j[(k, k)] = -gm - gs;
            j[(k, n)] = gs;
            f[n] += (v[k] - x) * gs;
            j[(n, k)] += gs;
            j[(n, n)] -= gs;
        }
        let h = 1e-9;
        f[n] -= fet(x);
        j[(n, n)] -= (fet(x + h) - fet(x - h)) / (2.0 * h);
        let dv = j.lu().solve(&(-&f)).expect("nonsingular Jacobian");
        v += &dv;
        if dv.norm() < 1e-15 {
            break;
        }
    }
    (0..n).map(|k| (v_sl - v[k]) / (r_mtj[k] * 1e3) * 1e6).collect()
}

fn c6_network_oracle() -> Verdict {
    let tech = pair().eirw.tech;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let n = rng.random_range(1..=8);
        let r: Vec<f64> = (0..n).map(|_| rng.random_range(2.0..40.0)).collect();
        let r_s = rng.random_range(0.5..80.0);
        let v_sl = rng.random_range(0.02..0.4);
        let fins = rng.random_range(1..30);
        let total: Vec<f64> = r.iter().map(|x| x + r_s).collect();
        let (_, got) = solve_star(&total, v_sl, tech.v_dd, Some(fins), &tech).unwrap();
        let want = nodal_reference(&r, r_s, v_sl, tech.v_dd, fins, &tech);
        for (g, w) in got.iter().zip(&want) {
            worst = worst.max((g - w).abs() / w.abs());
        }
    }

    // Ohm's law without a shared transistor; the linear-region quadratic
    // with one.
    let (_, i) = solve_star(&[50.0], 0.2, tech.v_dd, None, &tech).unwrap();
    let ohm = (i[0] - 4.0).abs();
    let n = 4;
    let vov = effective_overdrive(tech.v_dd - tech.fet_vth, FINFET_SS);
    let k = 2.0 * tech.fin_drive / (vov * vov) * n as f64;
    let (r, v) = (10.0, 0.15);
    let g = 1e3 / r;
    let b = k * vov + g;
    let x = (b - (b * b - 2.0 * k * g * v).sqrt()) / k;
    let (vx, i) = solve_star(&[r], v, tech.v_dd, Some(n), &tech).unwrap();
    let quad = (vx - x).abs().max((i[0] - (v - x) * g).abs() / i[0]);
    verdict(
        worst <= 1e-3 && ohm < 1e-12 && quad < 1e-9,
        format!(
            "worst relative deviation over 500 random ≤8-branch networks {worst:.1e} (≤1e-3); \
             single-branch closed forms: Ohm {ohm:.1e}, linear-region {quad:.1e}"
        ),
    )
}

fn c7_pattern(icr_e: f64) -> Verdict {
    let c = pair().eirw;
    let se = c.array_with(Mode::SingleEnded, icr_e).unwrap();
    let sols: Vec<ReadSolution> = (0..=64).map(|n| solve_read_word(&se, &pattern_with_ones(64, n)).unwrap()).collect();
    let dec = |f: &dyn Fn(&ReadSolution) -> f64| sols.windows(2).all(|w| f(&w[1]) < f(&w[0]));
    let (p, ap, rf) = (dec(&|s| s.i_p), dec(&|s| s.i_ap), dec(&|s| s.i_ref.unwrap()));
    let order = sols.iter().all(|s| s.i_ap < s.i_ref.unwrap() && s.i_ref.unwrap() < s.i_p);

    let diff = c.array_with(Mode::Differential, icr_e).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ip = Vec::new();
    let mut iap = Vec::new();
    for _ in 0..64 {
        let pat: Vec<bool> = (0..64).map(|_| rng.random()).collect();
        let s = solve_read_word(&diff, &pat).unwrap();
        ip.push(s.i_p);
        iap.push(s.i_ap);
    }
    let spread = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (hi - lo) / lo * 100.0
    };
    let sp = spread(&ip).max(spread(&iap));
    verdict(
        p && ap && rf && order && sp < 0.5,
        format!(
            "SE strictly decreasing I_P {p}, I_AP {ap}, I_REF {rf}; I_AP < I_REF < I_P {order}; \
             differential spread {sp:.2e} % (<0.5 %)"
        ),
    )
}

fn c8_margins(icr_e: f64) -> Verdict {
    let c = pair().eirw;
    let mut worst: f64 = 0.0;
    for mode in [Mode::SingleEnded, Mode::Differential] {
        let a = c.array_with(mode, icr_e).unwrap();
        for n in 0..=64 {
            let pat = pattern_with_ones(64, n);
            let s = solve_read_word(&a, &pat).unwrap();
            for (b, bit) in pat.iter().enumerate() {
                let sm_want = match mode {
                    Mode::SingleEnded => (s.i_p - s.i_ap) / 2.0,
                    Mode::Differential => s.i_p - s.i_ap,
                };
                worst = worst.max((s.sm_per_bit[b] - sm_want).abs());
                let stores_ap = mode == Mode::Differential || !bit;
                if stores_ap {
                    let rdm_want = (icr_e - s.i_ap) / icr_e * 100.0;
                    worst = worst.max((s.rdm_per_bit[b].unwrap() - rdm_want).abs());
                }
            }
        }
    }
    let r80 = (rdm(icr_e, 0.2 * icr_e) - 80.0).abs();
    verdict(
        worst < 1e-12 && r80 < 1e-12,
        format!("largest identity residual {worst:.1e}; RDM at I_AP = 0.2·I_CR differs from 80 % by {r80:.1e}"),
    )
}

fn c9_device_sm(icr_v: f64, icr_e: f64) -> Verdict {
    let p = pair();
    let dv = p.vsh.device(Mode::SingleEnded);
    let de = p.eirw.device(Mode::SingleEnded);
    let vv = iso_rdm_vread(&dv, &p.vsh.tech, icr_v, 80.0);
    let ve = iso_rdm_vread(&de, &p.eirw.tech, icr_e, 80.0);
    let (pv, av) = device_read_currents(&dv, &p.vsh.tech, vv);
    let (pe, ae) = device_read_currents(&de, &p.eirw.tech, ve);
    let ratio = sm_single_ended(pe, ae) / sm_single_ended(pv, av);
    verdict(
        within(ratio, 1.5, 2.3),
        format!("SM(EIRW)/SM(VSH) at RDM 80 % = {ratio:.3} ([1.5, 2.3]; read at {ve:.4} V vs {vv:.4} V)"),
    )
}

fn c10_array_bands() -> Verdict {
    let m = scaling_metrics(&pair(), &FIG10_SIZES).unwrap();
    let find =
        |n: usize, f: Flavor, mode: Mode| m.iter().find(|d| d.rows == n && d.flavor == f && d.mode == mode).unwrap();
    let pct = |e: f64, v: f64| (e / v - 1.0) * 100.0;
    let mut pass = true;
    let mut parts = Vec::new();
    for mode in [Mode::SingleEnded, Mode::Differential] {
        let tag = if mode == Mode::SingleEnded { "SE" } else { "diff" };
        let rel = |n: usize| {
            let (v, e) = (find(n, Flavor::Vsh, mode), find(n, Flavor::Eirw, mode));
            [pct(e.wt, v.wt), pct(e.we, v.we), -pct(e.rt, v.rt), -pct(e.re, v.re), e.sm / v.sm, e.rdm / v.rdm]
        };
        let r: Vec<[f64; 6]> = FIG10_SIZES.iter().map(|&n| rel(n)).collect();
        let [wt, we, rt, re, sm, rd] = r[0];
        let sm_min = if mode == Mode::SingleEnded { 1.2 } else { 1.05 };
        let bands = within(rt, 30.0, 55.0)
            && within(re, 25.0, 55.0)
            && within(wt, 50.0, 90.0)
            && within(we, 75.0, 115.0)
            && sm >= sm_min
            && rd >= 1.1;
        let deepen = |k: usize| r.windows(2).all(|w| w[1][k] > w[0][k]);
        let shrink = |k: usize| r.windows(2).all(|w| w[1][k] < w[0][k]);
        let trends = deepen(2) && deepen(3) && shrink(0) && shrink(1);
        pass &= bands && trends;
        let series = |k: usize| r.iter().map(|x| format!("{:.1}", x[k])).collect::<Vec<_>>().join("/");
        parts.push(format!(
            "{tag} 256²: RT −{rt:.1} % [30, 55], RE −{re:.1} % [25, 55], WT +{wt:.1} % [50, 90], WE +{we:.1} % [75, 115], \
             SM ×{sm:.3} (≥{sm_min}), RDM ×{rd:.3} (≥1.1); 256²/512²/1024² RT −{} RE −{} WT +{} WE +{}; trends {trends}",
            series(2),
            series(3),
            series(0),
            series(1),
        ));
    }
    verdict(pass, parts.join(" | "))
}

fn c11_area() -> Verdict {
    let consts = LayoutConstants::reference();
    let dims = layout_dims(&pair());
    let d = |mode: Mode, n: usize| area_delta(mode, n, 64, &dims, &consts);
    let (s20, d20, s50, d50) =
        (d(Mode::SingleEnded, 20), d(Mode::Differential, 20), d(Mode::SingleEnded, 50), d(Mode::Differential, 50));
    let mut s2: f64 = 0.0;
    for s in [0.5, 2.0, 3.0] {
        for f in [Flavor::Vsh, Flavor::Eirw] {
            for mode in [Mode::SingleEnded, Mode::Differential] {
                let a = word_area(f, mode, 20, 64, &dims, &consts).nm2;
                let b = word_area(f, mode, 20, 64, &dims.scaled(s), &consts).nm2;
                s2 = s2.max((b / a - s * s).abs());
            }
        }
    }
    let pass =
        s20 < 1.0 && (d20 + 1.0).abs() <= 0.5 && (s50 - 12.0).abs() <= 2.0 && (d50 - 7.0).abs() <= 2.0 && s2 < 1e-12;
    verdict(
        pass,
        format!(
            "ΔA(20) SE {s20:+.2} % (<+1), diff {d20:+.2} % (−1 ± 0.5); ΔA(50) SE {s50:+.2} % (12 ± 2), \
             diff {d50:+.2} % (7 ± 2); s² scaling error {s2:.1e}"
        ),
    )
}

fn c12_bias(icr_e: f64) -> Verdict {
    let c = pair().eirw;
    let (mut w, mut r): (f64, f64) = (0.0, 0.0);
    let mut accessed_ok = true;
    for mode in [Mode::SingleEnded, Mode::Differential] {
        let a = c.array_with(mode, icr_e).unwrap();
        for op in [Operation::Write, Operation::Read] {
            let rep = validate_bias(&a, op).unwrap();
            for cell in &rep.cells {
                if cell.class == CellClass::Accessed {
                    accessed_ok &= match op {
                        Operation::Write => cell.write_current.abs() > 1.0,
                        Operation::Read => cell.read_current.abs() > 0.1,
                    };
                } else {
                    w = w.max(cell.write_current.abs());
                    r = r.max(cell.read_current.abs());
                }
            }
        }
    }
    verdict(
        w < SNEAK_LIMIT_UA && r < SNEAK_LIMIT_UA && accessed_ok,
        format!(
            "largest unaccessed write current {w:.2e} µA, read-branch current {r:.2e} µA \
             (both <{SNEAK_LIMIT_UA:e} µA); accessed cell driven {accessed_ok}"
        ),
    )
}

fn csv_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    v.sort();
    v
}

fn c13_determinism() -> Verdict {
    let root = tempfile::tempdir().unwrap();
    let mut differ = Vec::new();
    let mut files = 0;
    for e in Experiment::ALL {
        let run = |tag: &str| {
            let out = root.path().join(format!("{}-{tag}", e.name()));
            let spec =
                ExperimentSpec { experiment: e, config: None, out_dir: out.clone(), overrides: vec![], seed: 42 };
            run_experiment(&spec).unwrap();
            csv_bytes(&out)
        };
        let (a, b) = (run("a"), run("b"));
        files += a.len();
        if a != b || a.is_empty() {
            differ.push(e.name());
        }
    }
    verdict(
        differ.is_empty(),
        format!(
            "{files} CSV files from {} experiments rerun byte-identical; differing: {differ:?}",
            Experiment::ALL.len()
        ),
    )
}

type Check = Box<dyn Fn() -> Verdict>;

fn main() {
    // Only run when selected (cargo passes test-name filters through).
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if args.iter().any(|a| !"acceptance".contains(a.as_str())) {
        return;
    }
    let p = pair();
    let (icr_v, icr_e) = rayon::join(|| icr(&p.vsh), || icr(&p.eirw));
    let checks: Vec<(&str, Check)> = vec![
        ("thermal stability", Box::new(c1_thermal_stability)),
        ("LLG integrity", Box::new(c2_llg_integrity)),
        ("critical-current calibration", Box::new(c3_critical_current)),
        ("write-latency trends", Box::new(c4_write_latency)),
        ("variation map", Box::new(c5_variation_map)),
        ("read-network oracle", Box::new(c6_network_oracle)),
        ("pattern behavior", Box::new(move || c7_pattern(icr_e))),
        ("margin formulas", Box::new(move || c8_margins(icr_e))),
        ("device SM ratio", Box::new(move || c9_device_sm(icr_v, icr_e))),
        ("array-level bands", Box::new(c10_array_bands)),
        ("area model", Box::new(c11_area)),
        ("bias validation", Box::new(move || c12_bias(icr_e))),
        ("determinism", Box::new(c13_determinism)),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in checks.iter().enumerate() {
        let v = check();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {}", k + 1, v.detail);
        if !v.pass {
            failed.push(k + 1);
        }
    }
    println!("acceptance: {} of {} criteria pass", checks.len() - failed.len(), checks.len());
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
