use pbgsim::fock::{EngineConfig, PumpKind};
use pbgsim::harness::{
    read_record, run_figure, run_sweep, shape_check, write_csv, write_record, Engine, FigureName,
    FigureOverrides, Flag, Quantity, SweepSpec,
};

#[test]
fn written_records_read_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    for (i, spec) in [
        SweepSpec {
            tau_grid: vec![0.0, 0.1, 2.5],
            k_ratio_grid: vec![0.5, 1.0, 1.25],
            ..SweepSpec::default()
        },
        SweepSpec {
            engine: Engine::Bilinear,
            tau_grid: vec![0.0, 0.5],
            k_ratio_grid: vec![1.0, 1.1],
            ..SweepSpec::default()
        },
        SweepSpec {
            engine: Engine::Trilinear,
            pump: PumpKind::Fock { n: 9 },
            tau_grid: vec![0.0, 0.3],
            k_ratio_grid: vec![1.0],
            outputs: vec![Quantity::NR, Quantity::Ec, Quantity::Mandel],
            engine_config: EngineConfig::default(),
        },
    ]
    .into_iter()
    .enumerate()
    {
        let rec = run_sweep(&spec).unwrap();
        let path = dir.path().join(format!("r{i}.csv"));
        write_record(&rec, &path).unwrap();
        assert_eq!(read_record(&path).unwrap(), rec);
    }
}

#[test]
fn identical_specs_give_identical_bytes() {
    let spec = SweepSpec {
        engine: Engine::Trilinear,
        pump: PumpKind::Coherent { gamma: 3.0 },
        tau_grid: vec![0.0, 0.2, 0.4, 0.6],
        k_ratio_grid: vec![0.9, 1.0, 1.1],
        ..SweepSpec::default()
    };
    let bytes = |s: &SweepSpec| {
        let mut buf = Vec::new();
        write_csv(&run_sweep(s).unwrap(), &mut buf).unwrap();
        buf
    };
    assert_eq!(bytes(&spec), bytes(&spec));
}

#[test]
fn fock_pump_rows_flag_the_ratio() {
    let spec = SweepSpec {
        engine: Engine::Trilinear,
        pump: PumpKind::Fock { n: 25 },
        tau_grid: vec![0.2, 0.6],
        k_ratio_grid: vec![0.95, 1.0],
        outputs: vec![Quantity::Ec, Quantity::Duan],
        ..SweepSpec::default()
    };
    let rec = run_sweep(&spec).unwrap();
    let cols = rec.columns();
    for row in &rec.rows {
        assert!(row.flags.contains(&Flag::EcInapplicable));
        assert!(row.get(&cols, Quantity::Ec).unwrap().value().is_none());
        assert!(row.get(&cols, Quantity::Duan).unwrap().value().unwrap() > 1.0);
    }
}

#[test]
fn edge_figures_peak_and_dip_at_the_edge() {
    let over = FigureOverrides {
        engine: Some(Engine::Bilinear),
        tau_grid: Some(vec![0.5, 1.0]),
        k_ratio_grid: Some(vec![0.8, 0.9, 1.0, 1.1, 1.2]),
        ..FigureOverrides::default()
    };
    for name in [FigureName::Fig3, FigureName::Fig6, FigureName::Fig7] {
        let rec = run_figure(name, &over).unwrap();
        shape_check(name, &rec).unwrap();
    }
    let rec = run_figure(FigureName::Fig6, &over).unwrap();
    let dv: Vec<f64> = (0..5)
        .map(|k| rec.value(1, k, Quantity::Duan).unwrap())
        .collect();
    assert!(dv[2] < dv[1] && dv[2] < dv[3]);
    assert!((dv[2] - (-2.0f64).exp()).abs() < 1e-6);
}
