use std::path::PathBuf;
use vshsim::experiments::*;

fn spec(e: Experiment) -> ExperimentSpec {
    ExperimentSpec { experiment: e, config: None, out_dir: PathBuf::from("unused"), overrides: vec![], seed: 0 }
}

fn headers(e: Experiment) -> Vec<(String, String)> {
    compute(&spec(e)).unwrap().tables.into_iter().map(|(n, t)| (n, t.header.join(","))).collect()
}

fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn experiment_names_round_trip() {
    for e in Experiment::ALL {
        assert_eq!(Experiment::parse(e.name()), Some(e));
    }
    assert_eq!(Experiment::parse("dump_iv"), Some(Experiment::DumpIv));
    assert_eq!(Experiment::parse("fig6"), None);
}

#[test]
fn csv_schemas() {
    let want = [
        (Experiment::Fig4Sm, vec![("fig4_sm.csv", "v_read,sm_vsh,sm_dvsh,sm_eirw,sm_deirw")]),
        (Experiment::Fig4Rdm, vec![("fig4_rdm.csv", "v_read,i_ap_vsh,i_ap_eirw,rdm_vsh,rdm_eirw")]),
        (
            Experiment::Fig4Wt,
            vec![
                ("fig4_wt.csv", "i_write_ua,t_vsh_ns,t_eirw_ns,ratio"),
                ("trajectory.csv", "t_ns,mw_x,mw_y,mw_z,mr_x,mr_y,mr_z"),
            ],
        ),
        (
            Experiment::Fig7Pattern,
            vec![("fig7.csv", "n_ones,i_p,i_ap,i_ref"), ("fig7_diff.csv", "sample,n_ones,i_p,i_ap")],
        ),
        (Experiment::Fig8Area, vec![("fig8.csv", "n_fin,delta_se_pct,delta_diff_pct")]),
        (Experiment::Fig9Margins, vec![("fig9.csv", "n_fin,sm_se,sm_diff,rdm_se,rdm_diff")]),
        (Experiment::Fig10Scaling, vec![("fig10.csv", "rows,cols,wt,we,rt,re,flavor,mode")]),
        (Experiment::DumpIv, vec![("iv.csv", "device,v_gs,v_ds,i_ua")]),
    ];
    for (e, files) in want {
        let got = headers(e);
        let want: Vec<(String, String)> = files.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(got, want, "{e:?}");
    }
}

#[test]
fn fig5_schema_and_grid() {
    let out = compute(&spec(Experiment::Fig5Map)).unwrap();
    let (name, t) = &out.tables[0];
    assert_eq!(name, "fig5.csv");
    assert_eq!(t.header.join(","), "misalign_pct,j_scale,switched,t_switch_ns,t_ratio");
    assert_eq!(t.rows.len(), 6 * 8);
    assert!(t.rows.iter().all(|r| r[2] == "0" || r[2] == "1"));
}

#[test]
fn table_rows_are_rectangular() {
    for e in [Experiment::Fig7Pattern, Experiment::Fig9Margins, Experiment::Fig10Scaling] {
        for (_, t) in compute(&spec(e)).unwrap().tables {
            assert!(t.rows.iter().all(|r| r.len() == t.header.len()));
            let csv = t.to_csv();
            assert_eq!(csv.lines().count(), t.rows.len() + 1);
            assert!(csv.ends_with('\n'));
        }
    }
}

#[test]
fn fig10_covers_every_design_and_size() {
    let t = &compute(&spec(Experiment::Fig10Scaling)).unwrap().tables[0].1;
    assert_eq!(t.rows.len(), FIG10_SIZES.len() * 4);
    for n in FIG10_SIZES {
        for design in
            [("vsh", "single_ended"), ("vsh", "differential"), ("eirw", "single_ended"), ("eirw", "differential")]
        {
            let hits = t
                .rows
                .iter()
                .filter(|r| r[0] == n.to_string() && r[1] == n.to_string())
                .filter(|r| r[6] == design.0 && r[7] == design.1)
                .count();
            assert_eq!(hits, 1, "{n} {design:?}: {:?}", t.rows);
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    for e in [Experiment::Fig4Wt, Experiment::Fig7Pattern, Experiment::Fig10Scaling] {
        assert_eq!(compute(&spec(e)).unwrap(), compute(&spec(e)).unwrap());
    }
}

#[test]
fn seed_only_moves_the_sampled_table() {
    let a = compute(&spec(Experiment::Fig7Pattern)).unwrap();
    let mut s = spec(Experiment::Fig7Pattern);
    s.seed = 17;
    let b = compute(&s).unwrap();
    assert_eq!(a.tables[0], b.tables[0]);
    assert_ne!(a.tables[1], b.tables[1]);
}

#[test]
fn overrides_reach_the_designs() {
    let mut s = spec(Experiment::Fig8Area);
    s.overrides = pairs(&[("eirw.n_fin_shared", "20"), ("tech.fin_pitch", "60")]);
    let a = compute(&spec(Experiment::Fig8Area)).unwrap();
    let b = compute(&s);
    // Either the key is honoured or rejected; it must never be ignored.
    if let Ok(b) = b {
        assert_ne!(a, b);
    }
    let mut bad = spec(Experiment::Fig8Area);
    bad.overrides = pairs(&[("eirw.no_such_key", "1")]);
    assert_eq!(compute(&bad).unwrap_err().exit_code(), 1);
}

#[test]
fn compare_keys_are_rejected_elsewhere() {
    let mut s = spec(Experiment::Fig8Area);
    s.overrides = pairs(&[("baseline", "EIRW")]);
    assert!(matches!(compute(&s), Err(ExperimentError::Input(_))));
}

const METRICS: &str = "design,wt,we,rt,re,area,sm\n\
VSH,2,4,1,8,10,0.5\n\
EIRW,3,8,0.5,4,10.1,0.6\n\
DVSH,2.5,5,1.2,9,11,1.0\n";

#[test]
fn baseline_normalizes_to_one() {
    let rows = parse_metrics("m.csv", METRICS).unwrap();
    let cmp = compare_designs(&rows, "VSH", "VSH").unwrap();
    let base = cmp.iter().find(|r| r.design == "VSH").unwrap();
    for v in [base.wt, base.we, base.rt, base.re, base.area, base.sm] {
        assert_eq!(v, 1.0);
    }
    let e = cmp.iter().find(|r| r.design == "EIRW").unwrap();
    assert_eq!((e.wt, e.we, e.rt, e.re), (1.5, 2.0, 0.5, 0.5));
    assert!((e.area - 1.01).abs() < 1e-12);
    assert!((e.sm - 1.2).abs() < 1e-12);
}

#[test]
fn sense_margin_can_use_its_own_baseline() {
    let rows = parse_metrics("m.csv", METRICS).unwrap();
    let cmp = compare_designs(&rows, "VSH", "DVSH").unwrap();
    let e = cmp.iter().find(|r| r.design == "EIRW").unwrap();
    assert_eq!(e.wt, 1.5);
    assert!((e.sm - 0.6).abs() < 1e-12);
    assert!(compare_designs(&rows, "DEIRW", "VSH").is_err());
    assert!(compare_designs(&rows, "VSH", "DEIRW").is_err());
}

#[test]
fn malformed_metrics_are_rejected_with_line_numbers() {
    for (text, line) in [
        ("", ":1:"),
        ("design,wt\nVSH,1\n", ":1:"),
        ("design,wt,we,rt,re,area,sm\nVSH,1,1,1,1,1\n", ":2:"),
        ("design,wt,we,rt,re,area,sm\nVSH,1,1,1,1,1,1\nEIRW,1,x,1,1,1,1\n", ":3:"),
        ("design,wt,we,rt,re,area,sm\nVSH,1,1,0,1,1,1\n", ":2:"),
    ] {
        let err = parse_metrics("m.csv", text).unwrap_err().to_string();
        assert!(err.contains(line), "{err}");
    }
}

#[test]
fn compare_from_file_and_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("metrics.csv");
    std::fs::write(&path, METRICS).unwrap();
    let mut s = spec(Experiment::Compare);
    s.overrides = pairs(&[("metrics", path.to_str().unwrap()), ("baseline", "EIRW")]);
    let out = compute(&s).unwrap();
    assert_eq!(out.tables.len(), 1);
    let (name, t) = &out.tables[0];
    assert_eq!(name, "compare.csv");
    let eirw = t.rows.iter().find(|r| r[0] == "EIRW").unwrap();
    assert!(eirw[1..].iter().all(|v| v == "1"));

    let sim = compute(&spec(Experiment::Compare)).unwrap();
    let names: Vec<&str> = sim.tables.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["metrics.csv", "compare.csv"]);
    let vsh = sim.tables[1].1.rows.iter().find(|r| r[0] == "VSH").unwrap();
    assert!(vsh[1..].iter().all(|v| v == "1"));

    let mut missing = spec(Experiment::Compare);
    missing.overrides = pairs(&[("metrics", "/nonexistent/metrics.csv")]);
    assert!(matches!(compute(&missing), Err(ExperimentError::Input(_))));
}

#[test]
fn run_writes_tables_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = spec(Experiment::Fig8Area);
    s.out_dir = dir.path().join("nested");
    let rep = run_experiment(&s).unwrap();
    let names: Vec<String> = rep.files.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(names, ["fig8.csv", "fig8_area_summary.txt"]);
    let csv = std::fs::read_to_string(&rep.files[0]).unwrap();
    assert_eq!(csv, compute(&s).unwrap().tables[0].1.to_csv());
    assert_eq!(std::fs::read_to_string(&rep.files[1]).unwrap(), rep.summary);
}

#[test]
fn solver_errors_map_to_exit_code_two() {
    for (e, k, v) in [(Experiment::Fig10Scaling, "csa_threshold", "100"), (Experiment::Fig4Rdm, "max_current", "1")] {
        let mut s = spec(e);
        s.overrides = pairs(&[(k, v)]);
        let err = compute(&s).unwrap_err();
        assert!(matches!(err, ExperimentError::Solver(_)), "{err}");
    }
    assert_eq!(ExperimentError::Solver("x".into()).exit_code(), 2);
    assert_eq!(ExperimentError::Input("x".into()).exit_code(), 1);
    assert_eq!(ExperimentError::UnknownExperiment("x".into()).exit_code(), 1);
}

#[test]
fn number_format_round_trips() {
    for x in [0.1, 1.0 / 3.0, 1e-20, 12345.678, -2.5] {
        assert_eq!(num(x).parse::<f64>().unwrap(), x);
    }
}
