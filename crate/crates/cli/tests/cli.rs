use std::path::Path;
use std::process::{Command, Output};

use twopulse_cli::scenarios::{
    CALIBRATE_COLUMNS, DICKE_COLUMNS, EFFICIENCY_COLUMNS, PENETRATION_COLUMNS, SUMMARY_COLUMNS, WAVEFORM_COLUMNS,
};
use twopulse_cli::summary_path;
use twopulse_cli::table::{Format, Table};

fn twopulse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twopulse"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_table(args: &[&str], schema: &[&str]) -> Table {
    let out = twopulse(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    Table::parse_with_schema(&String::from_utf8(out.stdout).unwrap(), Format::Csv, schema).unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn read_table(path: &Path, format: Format, schema: &[&str]) -> Table {
    Table::parse_with_schema(&std::fs::read_to_string(path).unwrap(), format, schema).unwrap()
}

fn single_value(t: &Table, column: &str) -> f64 {
    t.column(column).unwrap()[0]
}

#[test]
fn efficiency_curve_preset() {
    let t = stdout_table(&["efficiency-curve", "--preset", "paper-fig2"], &EFFICIENCY_COLUMNS);
    let pi_row = t.rows().iter().find(|r| r[0] == 5.0 && r[2] == 1.0).unwrap();
    assert!((pi_row[3] - 146.41).abs() < 0.01);
    assert!(t.rows().iter().filter(|r| r[2] == 0.0).all(|r| r[3] == 0.0));
}

#[test]
fn output_is_byte_identical_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for (path, jobs) in [(&a, "1"), (&b, "2")] {
            let out = twopulse(&[
                "penetration",
                "--format",
                format,
                "--jobs",
                jobs,
                "--out",
                path.to_str().unwrap(),
            ]);
            assert!(out.status.success());
        }
        let (ba, bb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert_eq!(ba, bb);
        assert!(!ba.contains(&b'\r'));
        let f = if format == "csv" { Format::Csv } else { Format::Json };
        let t = read_table(&a, f, &PENETRATION_COLUMNS);
        assert_eq!(t.encode(f).as_bytes(), &ba[..]);
    }
}

#[test]
fn dicke_table_columns() {
    let t = stdout_table(&["dicke"], &DICKE_COLUMNS);
    assert_eq!(t.rows()[0], vec![2.0, 2.0, 2.0, 1.0, 0.0, 2.0, 2.0]);
    let twelve = t.rows().iter().find(|r| r[0] == 12.0).unwrap();
    assert_eq!((twelve[1], twelve[2]), (twelve[5], twelve[6]));
    let ratio = t.column("ratio").unwrap();
    assert!(ratio.windows(2).all(|w| w[1] > w[0]));
    assert!(*ratio.last().unwrap() > 1.999 && *ratio.last().unwrap() < 2.0);
}

#[test]
fn calibrate_is_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "cal.toml",
        "[calibrate]\noptical_thickness = [0.0, 1.0, 2.0]\nn_detuning = 801\nn_z = 32\n",
    );
    let one = twopulse(&["calibrate", "--config", &cfg, "--jobs", "1"]);
    let three = twopulse(&["calibrate", "--config", &cfg, "--jobs", "3"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, three.stdout);
    let t = Table::parse_with_schema(&String::from_utf8(one.stdout).unwrap(), Format::Csv, &CALIBRATE_COLUMNS).unwrap();
    let err = t.column("relative_error").unwrap();
    assert_eq!(err[0], 0.0);
    assert!(err.iter().all(|e| *e < 0.01));
}

#[test]
fn fig4_preset_echo_is_delayed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig4.csv");
    let run = twopulse(&["simulate", "--preset", "paper-fig4", "--out", out.to_str().unwrap()]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let summary = read_table(&summary_path(&out), Format::Csv, &SUMMARY_COLUMNS);
    assert!(single_value(&summary, "echo_peak_time_us") > 50.0);
    assert!(single_value(&summary, "efficiency_peak") > 0.0);
    assert!(single_value(&summary, "rephasing_out_rms_us") > single_value(&summary, "rephasing_in_rms_us"));
    let waves = read_table(&out, Format::Csv, &WAVEFORM_COLUMNS);
    let t = waves.column("t_us").unwrap();
    assert!(t[0] < 0.0 && *t.last().unwrap() >= single_value(&summary, "echo_window_end_us"));
}

#[test]
fn zero_area_rephasing_gives_no_echo() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "zero.json",
        r#"{"simulate": {
            "sequence": {"signal": {"rms_us": 2.1, "area_pi": 0.09},
                         "rephasing": {"rms_us": 0.8, "area_pi": 0.0}, "t12_us": 25.0},
            "medium": {"optical_thickness": 5.0, "n_detuning": 801},
            "solver": {"mode": "full", "n_z": 32}}}"#,
    );
    let run = twopulse(&["simulate", "--config", &cfg, "--format", "json"]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let summary =
        Table::parse_with_schema(&String::from_utf8(run.stderr).unwrap(), Format::Json, &SUMMARY_COLUMNS).unwrap();
    assert!(single_value(&summary, "efficiency_peak") < 1e-6);
}

#[test]
fn decay_factor_on_preset_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let base = "[simulate.sequence]\nt12_us = 25.0\n[simulate.sequence.signal]\nrms_us = 2.1\narea_pi = 0.09\n\
                [simulate.sequence.rephasing]\nrms_us = 0.8\narea_pi = 1.0\n\
                [simulate.solver]\nmode = \"instantaneous_rephasing\"\n";
    let eta = |t2: &str, name: &str| {
        let cfg = write_config(
            dir.path(),
            name,
            &format!("{base}[simulate.medium]\noptical_thickness = 5.0\n{t2}"),
        );
        let out = dir.path().join(format!("{name}.csv"));
        assert!(
            twopulse(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()])
                .status
                .success()
        );
        single_value(
            &read_table(&summary_path(&out), Format::Csv, &SUMMARY_COLUMNS),
            "efficiency_peak",
        )
    };
    let ratio = eta("", "off.toml") / eta("t2_us = 50.0\n", "on.toml");
    assert!((ratio / 7.389 - 1.0).abs() < 0.05, "{ratio}");
}

#[test]
fn physical_units_convert() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "units.toml",
        "[simulate.medium]\nalpha_per_mm = 0.5\nlength_mm = 2.0\nn_detuning = 401\n\
         [simulate.solver]\nmode = \"instantaneous_rephasing\"\nn_z = 16\n",
    );
    let run = twopulse(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        dir.path().join("u.csv").to_str().unwrap(),
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let summary = read_table(&dir.path().join("u.summary.csv"), Format::Csv, &SUMMARY_COLUMNS);
    assert_eq!(single_value(&summary, "optical_thickness"), 1.0);
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let typo = write_config(dir.path(), "typo.toml", "[simulate.medium]\noptical_thicknes = 5.0\n");
    let overlap = write_config(
        dir.path(),
        "overlap.toml",
        "[simulate.sequence]\nt12_us = 5.0\n[simulate.sequence.signal]\nrms_us = 2.1\narea_pi = 0.09\n\
         [simulate.sequence.rephasing]\nrms_us = 0.8\narea_pi = 1.0\n[simulate.medium]\noptical_thickness = 1.0\n",
    );
    let missing = dir.path().join("absent.toml");
    for args in [
        vec!["simulate", "--config", &typo],
        vec!["simulate", "--config", &overlap],
        vec!["simulate", "--config", missing.to_str().unwrap()],
        vec!["dicke", "--preset", "paper-fig4"],
        vec!["dicke", "--jobs", "0"],
        vec!["bogus"],
    ] {
        let out = twopulse(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn blow_up_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "blow.toml",
        "[simulate.medium]\noptical_thickness = 1e40\nn_detuning = 101\n\
         [simulate.solver]\nmode = \"instantaneous_rephasing\"\nn_z = 8\n",
    );
    let out = twopulse(&["simulate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("slice"));
}
