use proptest::prelude::*;
use vshsim::config::DesignConfig;
use vshsim::transport::*;

fn cfg() -> DesignConfig {
    DesignConfig::defaults(Flavor::Eirw)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

#[test]
fn wse2_is_continuous_across_threshold_and_saturation() {
    let p = cfg().write_fet;
    let eps = 1e-12;
    for vsd in [0.05, 0.3, 0.8] {
        let a = wse2_current(-(p.vth - eps), -vsd, &p);
        let b = wse2_current(-(p.vth + eps), -vsd, &p);
        assert!(rel(a, b) < 1e-9, "vth straddle at vsd {vsd}: {a} vs {b}");
    }
    // Saturation edge of the intrinsic square law, contact resistance off.
    let mut q = p.clone();
    q.r_contact = 0.0;
    let vsg = 0.8;
    let vov = effective_overdrive(vsg - q.vth, q.ss_mv_dec * 1e-3);
    let a = wse2_current(-vsg, -(vov - eps), &q);
    let b = wse2_current(-vsg, -(vov + eps), &q);
    assert!(rel(a, b) < 1e-9);
}

#[test]
fn wse2_square_law_well_above_threshold() {
    let mut p = cfg().write_fet;
    p.r_contact = 0.0;
    p.ss_mv_dec = 1.0;
    let vov: f64 = 0.8 - p.vth;
    let i = wse2_current(-0.8, -0.8, &p);
    assert!(rel(i, 0.5 * p.k_drive * vov * vov) < 1e-9);
    let vd = 0.1;
    let i = wse2_current(-0.8, -vd, &p);
    assert!(rel(i, p.k_drive * (vov * vd - 0.5 * vd * vd)) < 1e-9);
}

#[test]
fn subthreshold_falls_a_decade_per_swing() {
    let mut p = cfg().write_fet;
    p.r_contact = 0.0;
    let ss = p.ss_mv_dec * 1e-3;
    let v0 = p.vth - 0.6;
    let r = wse2_current(-v0, -0.8, &p) / wse2_current(-(v0 - ss), -0.8, &p);
    assert!((r - 10.0).abs() < 1e-2, "{r}");
}

#[test]
fn contact_resistance_only_reduces_current() {
    let p = cfg().write_fet;
    let mut q = p.clone();
    q.r_contact = 0.0;
    let with = wse2_current(-0.8, -0.8, &p);
    let without = wse2_current(-0.8, -0.8, &q);
    assert!(with < without && with > 0.0);
    // The solved current is self-consistent with the contact drops.
    let drop = with * p.r_contact * 1e-3;
    let inner = wse2_current(-(0.8 - 0.5 * drop), -(0.8 - drop), &q);
    assert!(rel(with, inner) < 1e-8);
}

proptest! {
    #[test]
    fn wse2_terminal_swap_flips_sign(vg in -0.8f64..0.8, vd in -0.8f64..0.8) {
        let p = cfg().write_fet;
        let i = wse2_current(vg, vd, &p);
        let swapped = wse2_current(vg - vd, -vd, &p);
        prop_assert!((i + swapped).abs() <= 1e-9 * i.abs().max(1e-9));
    }

    #[test]
    fn finfet_is_odd_in_vds(vg in 0.0f64..0.8, vd in 0.0f64..0.8) {
        let t = cfg().tech;
        let a = access_fet_current(vg, vd, 3, &t);
        let b = access_fet_current(vg - vd, -vd, 3, &t);
        prop_assert!((a + b).abs() <= 1e-9 * a.abs().max(1e-9));
    }

    #[test]
    fn spin_current_is_linear_and_odd(i in -500.0f64..500.0) {
        prop_assert_eq!(spin_current(-i, 0.7, 0.49), -spin_current(i, 0.7, 0.49));
        prop_assert!((spin_current(i, 0.7, 0.49) - 0.343 * i).abs() < 1e-9);
        let (a, b) = spin_current_differential(i, 1.0, 1.0);
        prop_assert_eq!(a, -b);
    }
}

#[test]
fn finfet_delivers_fin_drive_when_fully_on() {
    let t = cfg().tech;
    for n in [1, 5, 20] {
        let i = access_fet_current(t.v_dd, t.v_dd, n, &t);
        assert!(rel(i, n as f64 * t.fin_drive) < 1e-12);
    }
}

#[test]
fn finfet_gds_matches_finite_difference() {
    let t = cfg().tech;
    for vd in [0.01, 0.05, 0.1] {
        let h = 1e-6;
        let fd = (access_fet_current(t.v_dd, vd + h, 20, &t) - access_fet_current(t.v_dd, vd - h, 20, &t)) / (2.0 * h);
        assert!(rel(access_fet_gds(t.v_dd, vd, 20, &t), fd) < 1e-6);
    }
}

#[test]
fn mtj_resistance_closed_form() {
    let c = cfg();
    let p = &c.mtj;
    let area_um2 = std::f64::consts::PI * 0.0105 * 0.0105;
    let rp = p.ra0 * ((1.1 - p.t_ref) / p.lambda_t).exp() / area_um2 / 1e3;
    assert!(rel(mtj_resistance(MtjState::P, 1.1, 21.0, p), rp) < 1e-12);
    let rap = mtj_resistance(MtjState::AP, 1.1, 21.0, p);
    assert!(rel(rap / rp, 1.0 + p.tmr) < 1e-12);
}

#[test]
fn ta_leg_is_rho_l_over_wt() {
    let c = cfg();
    let rp = &c.read_path;
    let ohms = c.tech.ta_resistivity * rp.ta_leg_length / (rp.ta_width * rp.ta_thickness);
    assert!(rel(ta_leg_resistance(rp, &c.tech), ohms / 1e3) < 1e-12);
    assert!(rel(series_resistance(Flavor::Eirw, rp, &c.tech), 2.0 * ohms / 1e3) < 1e-12);
    assert_eq!(series_resistance(Flavor::Vsh, rp, &c.tech), rp.channel_r_on);
}

#[test]
fn effective_overdrive_limits() {
    let ss = 0.07;
    assert!((effective_overdrive(0.5, ss) - 0.5).abs() < 1e-4);
    assert!((effective_overdrive(2.0, ss) - 2.0).abs() < 1e-12);
    assert!(effective_overdrive(-1.0, ss) > 0.0);
    let a = effective_overdrive(1e-13, ss);
    let b = effective_overdrive(-1e-13, ss);
    assert!(rel(a, b) < 1e-9);
}
