use bellqec::experiment::{
    collect_traces, run_experiment, sweep, ExperimentConfig, Method, OutputFormat, Scenario, CSV_HEADER,
};
use bellqec::repetition::ChannelKind;
use bellqec::{Error, ExecPolicy};

fn config(scenarios: &[Scenario], ks: &[usize], ps: &[f64]) -> ExperimentConfig {
    ExperimentConfig {
        scenarios: scenarios.to_vec(),
        ks: ks.to_vec(),
        ps: ps.to_vec(),
        record_wall_time: false,
        ..Default::default()
    }
}

#[test]
fn sweep_writes_rows_and_gnuplot() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, dat) = (dir.path().join("out.csv"), dir.path().join("out.dat"));
    let cfg = config(&[Scenario::Unencoded, Scenario::QrcSingle], &[1, 2, 3], &[0.0, 0.25, 0.5]);
    let rows = sweep(&cfg, &csv, OutputFormat::Csv, Some(&dat)).unwrap();
    // unencoded once, single for each k
    assert_eq!(rows.len(), 3 + 3 * 3);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(text.lines().count(), 1 + rows.len());
    assert_eq!(std::fs::read_to_string(&dat).unwrap().trim_end().split("\n\n\n").count(), 4);
    for r in rows.iter().filter(|r| r.p == 0.0) {
        assert!((r.fidelity - 1.0).abs() < 1e-12, "{r:?}");
    }
    for r in rows.iter().filter(|r| r.p == 0.5 && r.scenario == Scenario::QrcSingle) {
        assert!((r.fidelity - 0.5f64.sqrt()).abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn exact_and_monte_carlo_rows_line_up() {
    let cfg = config(&[Scenario::StabilizerShort, Scenario::LongdistanceNocc], &[1], &[0.2]);
    let exact = run_experiment(&cfg).unwrap();
    let mc = run_experiment(&ExperimentConfig { method: Method::MonteCarlo, samples: 20_000, ..cfg }).unwrap();
    assert_eq!(exact.len(), mc.len());
    for (e, m) in exact.iter().zip(&mc) {
        assert_eq!((e.scenario, e.k, e.p), (m.scenario, m.k, m.p));
        assert_eq!(e.samples, 64);
        assert_eq!(m.samples, 20_000);
        assert!((e.fidelity - m.fidelity).abs() <= 4.0 * m.stderr + 1e-12);
    }
}

#[test]
fn phase_flip_rows_match_bit_flip_rows() {
    let cfg = config(&Scenario::ALL, &[1], &[0.05, 0.35]);
    let bf = run_experiment(&cfg).unwrap();
    let pf = run_experiment(&ExperimentConfig { channel: ChannelKind::PhaseFlip, ..cfg }).unwrap();
    for (b, p) in bf.iter().zip(&pf) {
        assert!((b.fidelity - p.fidelity).abs() < 1e-12, "{b:?} vs {p:?}");
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let too_big = config(&[Scenario::QrcSingle], &[7], &[0.1]);
    assert!(matches!(run_experiment(&too_big), Err(Error::TooManyQubits { .. })));
    let bad_p = config(&[Scenario::QrcSingle], &[1], &[1.2]);
    assert!(matches!(run_experiment(&bad_p), Err(Error::InvalidProbability(_))));
    let no_k = config(&[Scenario::QrcSingle], &[], &[0.1]);
    assert!(matches!(run_experiment(&no_k), Err(Error::Config(_))));
    let zero =
        ExperimentConfig { method: Method::MonteCarlo, samples: 0, ..config(&[Scenario::QrcSingle], &[1], &[0.1]) };
    assert!(matches!(run_experiment(&zero), Err(Error::Config(_))));
    // Monte Carlo is not bound by the enumeration cap
    let mc = ExperimentConfig { method: Method::MonteCarlo, samples: 2000, ..too_big };
    assert_eq!(run_experiment(&mc).unwrap().len(), 1);
}

#[test]
fn traces_number_rounds_across_runs() {
    let cfg = ExperimentConfig {
        policy: ExecPolicy::Sequential,
        ..config(&[Scenario::QrcSingle, Scenario::LongdistanceCc, Scenario::LongdistanceNocc], &[1], &[0.1])
    };
    let msgs = collect_traces(&cfg).unwrap();
    assert_eq!(msgs.len(), 2 * 64);
    assert_eq!(msgs.first().unwrap().round, 0);
    assert_eq!(msgs.last().unwrap().round, 63);
    assert!(msgs.iter().all(|m| m.bits.len() == 3));
}
