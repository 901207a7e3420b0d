use std::path::{Path, PathBuf};

use serde::Serialize;

use rabi_spectra::confluence::{confluence_study, ConfluenceOptions, ConfluenceTable};
use rabi_spectra::degeneracy::{
    scan_crossings, CrossingKind, CrossingRecord, ScanOptions, SweepSpec, SweptParameter,
};
use rabi_spectra::equivalence::{
    basis_correspondence_check, verify_2qrm_to_ncho, verify_ncho_to_2qrm,
    verify_parity_disk_identity, EquivalenceReport, VerifyOptions,
};
use rabi_spectra::spectrum::SpectrumResult;
use rabi_spectra::{
    build, converged_spectrum, eigenvalues, NchoParams, OneQrmParams, Parallelism, ParitySector,
    TwoQrmParams,
};

use crate::config::{resolve, resolve_owned, FileConfig};
use crate::output::{
    ensure_dir, fmt_f64, out_path, write_gnuplot_loglog, write_json, write_matrix_dump,
    write_run_meta, Csv, JsonReport,
};
use crate::{parse_sector, Cli, CliError, Command};

pub fn run(cli: Cli, argv: Vec<String>) -> Result<i32, CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let out_dir = PathBuf::from(resolve_owned(
        cli.out_dir
            .as_ref()
            .map(|p| p.to_string_lossy().into_owned()),
        file.out_dir.clone(),
        ".".to_string(),
    ));
    ensure_dir(&out_dir)?;

    let jobs = resolve(cli.jobs, file.jobs, 0);
    let parallelism = setup_parallelism(jobs);

    match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args, &file, &out_dir, &argv),
        Command::Verify(args) => cmd_verify(args, &file, &out_dir, parallelism, &argv),
        Command::Confluence(args) => cmd_confluence(args, &file, &out_dir, parallelism, &argv),
        Command::Degeneracy(args) => cmd_degeneracy(args, &file, &out_dir, parallelism, &argv),
        Command::DumpMatrix(args) => cmd_dump(args, &out_dir, &argv),
    }
}

fn setup_parallelism(jobs: usize) -> Parallelism {
    if jobs == 1 {
        return Parallelism::Sequential;
    }
    #[cfg(feature = "parallel")]
    {
        if jobs > 1 {
            // best effort; a pool may exist already in tests
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global();
        }
        Parallelism::Rayon
    }
    #[cfg(not(feature = "parallel"))]
    Parallelism::Sequential
}

// ── spectrum ────────────────────────────────────────────────────────

fn cmd_spectrum(
    args: &crate::SpectrumArgs,
    file: &FileConfig,
    out_dir: &Path,
    argv: &[String],
) -> Result<i32, CliError> {
    let spec = args.model.to_spec()?;
    let sector = parse_sector(&args.sector)?;
    let truncation = resolve(args.truncation, file.truncation, 400);
    let tol = resolve(args.tol, file.certificate_tol, 1e-9);

    let result: SpectrumResult = if args.certify {
        converged_spectrum(&spec, sector, truncation, tol)?
    } else {
        eigenvalues(&build(&spec, truncation, sector)?)?
    };

    let mut csv = Csv::new(&["index", "eigenvalue", "certified"]);
    for (i, ev) in result.eigenvalues.iter().enumerate() {
        csv.row(&[
            i.to_string(),
            fmt_f64(*ev),
            (i < result.converged_count).to_string(),
        ]);
    }
    csv.write(&out_path(out_dir, "spectrum.csv"))?;

    #[derive(Serialize)]
    struct Config {
        model: rabi_spectra::ModelSpec,
        sector: ParitySector,
        truncation: usize,
        certify: bool,
        certificate_tol: f64,
    }
    #[derive(Serialize)]
    struct Certificates {
        truncation_n: usize,
        converged_count: usize,
        certificate_tol: Option<f64>,
        unreliable: bool,
    }
    write_json(
        &out_path(out_dir, "spectrum.json"),
        &JsonReport {
            command: "spectrum",
            config: Config {
                model: spec,
                sector,
                truncation,
                certify: args.certify,
                certificate_tol: tol,
            },
            results: &result.eigenvalues,
            certificates: Certificates {
                truncation_n: result.truncation_n,
                converged_count: result.converged_count,
                certificate_tol: result.certificate_tol,
                unreliable: result.unreliable,
            },
        },
    )?;
    write_run_meta(out_dir, "spectrum", argv)?;
    Ok(0)
}

// ── verify ──────────────────────────────────────────────────────────

fn verify_sectors(s: &str) -> Result<Vec<ParitySector>, CliError> {
    match s {
        "both" => Ok(vec![ParitySector::Even, ParitySector::Odd]),
        other => Ok(vec![parse_sector(other)?]),
    }
}

fn cmd_verify(
    args: &crate::VerifyArgs,
    file: &FileConfig,
    out_dir: &Path,
    parallelism: Parallelism,
    argv: &[String],
) -> Result<i32, CliError> {
    let sectors = verify_sectors(&args.sector)?;
    let opts = VerifyOptions {
        n_levels: resolve(args.levels, file.levels, 8),
        truncation: resolve(args.truncation, file.truncation, 400),
        certificate_tol: resolve(args.tol, file.certificate_tol, 1e-9),
        match_tol: resolve(args.match_tol, file.match_tol, 1e-7),
        parallelism,
    };
    let need = |name: &str, v: Option<f64>| {
        v.ok_or_else(|| {
            CliError::Config(format!("--{name} is required for --check {}", args.check))
        })
    };

    match args.check.as_str() {
        "ncho-to-2qrm" => {
            let p = NchoParams::new(
                need("alpha", args.alpha)?,
                need("beta", args.beta)?,
                args.eta.unwrap_or(0.0),
            )?;
            let reports: Vec<EquivalenceReport> = sectors
                .iter()
                .map(|&s| verify_ncho_to_2qrm(&p, s, &opts))
                .collect::<Result<_, _>>()?;
            write_direction_outputs(out_dir, &rabi_spectra::ModelSpec::Ncho(p), &opts, &reports, argv)?;
            Ok(exit_for_reports(&reports))
        }
        "2qrm-to-ncho" => {
            let q = TwoQrmParams::new(
                need("g", args.g)?,
                args.delta.unwrap_or(0.0),
                args.epsilon.unwrap_or(0.0),
            )?;
            let reports: Vec<EquivalenceReport> = sectors
                .iter()
                .map(|&s| verify_2qrm_to_ncho(&q, s, &opts))
                .collect::<Result<_, _>>()?;
            write_direction_outputs(out_dir, &rabi_spectra::ModelSpec::TwoQrm(q), &opts, &reports, argv)?;
            Ok(exit_for_reports(&reports))
        }
        "parity-disk" => {
            let q = TwoQrmParams::new(
                args.g.unwrap_or(0.0),
                args.delta.unwrap_or(0.0),
                args.epsilon.unwrap_or(0.0),
            )?;
            let m = resolve(args.truncation, file.truncation, 500);
            let dev = verify_parity_disk_identity(&q, m)?;
            let mut csv = Csv::new(&["sector", "max_deviation"]);
            csv.row(&["even".into(), fmt_f64(dev.even)]);
            csv.row(&["odd".into(), fmt_f64(dev.odd)]);
            csv.write(&out_path(out_dir, "verify.csv"))?;
            #[derive(Serialize)]
            struct Config {
                q: TwoQrmParams,
                truncation: usize,
                dev_tol: f64,
            }
            write_json(
                &out_path(out_dir, "verify.json"),
                &JsonReport {
                    command: "verify",
                    config: Config { q, truncation: m, dev_tol: args.dev_tol },
                    results: dev,
                    certificates: (),
                },
            )?;
            write_run_meta(out_dir, "verify", argv)?;
            Ok(if dev.even <= args.dev_tol && dev.odd <= args.dev_tol { 0 } else { 1 })
        }
        "basis-dictionary" => {
            let m = resolve(args.truncation, file.truncation, 2000);
            let mut csv = Csv::new(&["sector", "operator", "max_deviation"]);
            let mut worst = 0.0f64;
            let mut results = Vec::new();
            for &sector in &sectors {
                let dev = basis_correspondence_check(m, sector)?;
                for (op, v) in
                    [("number", dev.number), ("lowering", dev.lowering), ("raising", dev.raising)]
                {
                    csv.row(&[sector.to_string(), op.into(), fmt_f64(v)]);
                }
                worst = worst.max(dev.max());
                results.push((sector.to_string(), dev));
            }
            csv.write(&out_path(out_dir, "verify.csv"))?;
            #[derive(Serialize)]
            struct Config {
                truncation: usize,
                dev_tol: f64,
            }
            write_json(
                &out_path(out_dir, "verify.json"),
                &JsonReport {
                    command: "verify",
                    config: Config { truncation: m, dev_tol: args.dev_tol },
                    results,
                    certificates: (),
                },
            )?;
            write_run_meta(out_dir, "verify", argv)?;
            Ok(if worst <= args.dev_tol { 0 } else { 1 })
        }
        other => Err(CliError::Config(format!(
            "unknown check '{other}' (expected ncho-to-2qrm | 2qrm-to-ncho | parity-disk | basis-dictionary)"
        ))),
    }
}

fn exit_for_reports(reports: &[EquivalenceReport]) -> i32 {
    // a collapse-regime run certifies nothing: refuse to assert a pass
    if reports.iter().all(|r| r.all_matched && !r.unreliable) {
        0
    } else {
        1
    }
}

fn write_direction_outputs(
    out_dir: &Path,
    source: &rabi_spectra::ModelSpec,
    opts: &VerifyOptions,
    reports: &[EquivalenceReport],
    argv: &[String],
) -> Result<(), CliError> {
    let stem = "verify";
    let mut csv = Csv::new(&[
        "sector", "level", "lambda", "mu", "alpha", "beta", "eta", "g", "delta", "epsilon",
        "residual", "status",
    ]);
    for report in reports {
        for (k, r) in report.records.iter().enumerate() {
            let status = if r.residual <= report.tol {
                "matched"
            } else {
                "unmatched"
            };
            csv.row(&[
                report.sector.to_string(),
                k.to_string(),
                fmt_f64(r.lambda),
                fmt_f64(r.mu),
                fmt_f64(r.ncho.alpha),
                fmt_f64(r.ncho.beta),
                fmt_f64(r.ncho.eta),
                fmt_f64(r.qrm.g),
                fmt_f64(r.qrm.delta),
                fmt_f64(r.qrm.epsilon),
                fmt_f64(r.residual),
                status.into(),
            ]);
        }
        for o in &report.obstructed {
            csv.row(&[
                report.sector.to_string(),
                o.level.to_string(),
                String::new(),
                fmt_f64(o.mu),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                "obstructed".into(),
            ]);
        }
    }
    csv.write(&out_path(out_dir, &format!("{stem}.csv")))?;
    #[derive(Serialize)]
    struct Config<'a> {
        source: &'a rabi_spectra::ModelSpec,
        options: &'a VerifyOptions,
    }
    #[derive(Serialize)]
    struct Certificates {
        all_matched: bool,
        unreliable: bool,
    }
    write_json(
        &out_path(out_dir, &format!("{stem}.json")),
        &JsonReport {
            command: "verify",
            config: Config {
                source,
                options: opts,
            },
            results: reports,
            certificates: Certificates {
                all_matched: reports.iter().all(|r| r.all_matched),
                unreliable: reports.iter().any(|r| r.unreliable),
            },
        },
    )?;
    write_run_meta(out_dir, "verify", argv)
}

// ── confluence ──────────────────────────────────────────────────────

fn cmd_confluence(
    args: &crate::ConfluenceArgs,
    file: &FileConfig,
    out_dir: &Path,
    parallelism: Parallelism,
    argv: &[String],
) -> Result<i32, CliError> {
    let target = OneQrmParams::new(args.gp, args.dp, args.ep)?;
    let opts = ConfluenceOptions {
        n_levels: resolve(args.levels, file.levels, 5),
        truncation: resolve(args.truncation, file.truncation, 80),
        certificate_tol: resolve(args.tol, file.certificate_tol, 1e-9),
        reference_truncation: args.ref_n.unwrap_or(800),
        parallelism,
        ..ConfluenceOptions::default()
    };
    let table: ConfluenceTable = confluence_study(&target, &args.nu, &opts)?;

    let mut csv = Csv::new(&["level", "nu", "mu_prime", "reference", "abs_error"]);
    for k in 0..table.levels {
        for (j, &nu) in table.nu_values.iter().enumerate() {
            csv.row(&[
                k.to_string(),
                fmt_f64(nu),
                fmt_f64(table.mu_prime[k][j]),
                fmt_f64(table.reference[k]),
                fmt_f64(table.errors[k][j]),
            ]);
        }
    }
    csv.write(&out_path(out_dir, "confluence.csv"))?;
    write_gnuplot_loglog(
        &out_path(out_dir, "confluence_loglog.dat"),
        &table.nu_values,
        &table.errors,
    )?;

    if args.order_band.len() != 2 || args.order_band[0] > args.order_band[1] {
        return Err(CliError::Config(
            "--order-band wants lo,hi with lo <= hi".into(),
        ));
    }
    let band = (args.order_band[0], args.order_band[1]);
    #[derive(Serialize)]
    struct Config {
        target: OneQrmParams,
        nu_values: Vec<f64>,
        levels: usize,
        truncation: usize,
        reference_truncation: usize,
        certificate_tol: f64,
        order_band: (f64, f64),
    }
    write_json(
        &out_path(out_dir, "confluence.json"),
        &JsonReport {
            command: "confluence",
            config: Config {
                target,
                nu_values: table.nu_values.clone(),
                levels: table.levels,
                truncation: opts.truncation,
                reference_truncation: opts.reference_truncation,
                certificate_tol: opts.certificate_tol,
                order_band: band,
            },
            results: &table,
            certificates: (),
        },
    )?;
    write_run_meta(out_dir, "confluence", argv)?;

    let in_band = table
        .fitted_order
        .iter()
        .zip(&table.saturated)
        .all(|(p, &sat)| sat || p.is_some_and(|p| p >= band.0 && p <= band.1));
    Ok(if in_band { 0 } else { 1 })
}

// ── degeneracy ──────────────────────────────────────────────────────

fn parse_swept(s: &str) -> Result<SweptParameter, CliError> {
    Ok(match s {
        "g" => SweptParameter::G,
        "delta" => SweptParameter::Delta,
        "epsilon" => SweptParameter::Epsilon,
        "alpha" => SweptParameter::Alpha,
        "beta" => SweptParameter::Beta,
        "eta" => SweptParameter::Eta,
        other => {
            return Err(CliError::Config(format!(
            "unknown sweep parameter '{other}' (expected g | delta | epsilon | alpha | beta | eta)"
        )))
        }
    })
}

fn cmd_degeneracy(
    args: &crate::DegeneracyArgs,
    file: &FileConfig,
    out_dir: &Path,
    parallelism: Parallelism,
    argv: &[String],
) -> Result<i32, CliError> {
    let base = args.model.to_spec()?;
    let sector = parse_sector(&args.sector)?;
    let sweep = SweepSpec {
        base,
        parameter: parse_swept(&args.sweep)?,
        start: args.from,
        end: args.to,
        grid: args.grid,
    };
    let opts = ScanOptions {
        n_levels: resolve(args.levels, file.levels, 8),
        truncation: resolve(args.truncation, file.truncation, 400),
        certificate_tol: resolve(None, file.certificate_tol, 1e-9),
        gap_threshold: resolve(args.gap_threshold, file.gap_threshold, 1e-8),
        tol_int: resolve(args.tol_int, file.tol_int, 1e-5),
        candidate_gap: args.candidate_gap,
        parallelism,
        ..ScanOptions::default()
    };
    let records: Vec<CrossingRecord> = scan_crossings(&sweep, sector, &opts)?;

    let mut csv = Csv::new(&[
        "param",
        "value",
        "mu",
        "gap",
        "level",
        "kind",
        "cond_first",
        "cond_second_minus",
        "cond_second_plus",
        "satisfied",
    ]);
    for r in &records {
        csv.row(&[
            r.swept_parameter_name.clone(),
            fmt_f64(r.swept_value),
            fmt_f64(r.eigen_value),
            fmt_f64(r.min_gap),
            r.level.to_string(),
            match r.kind {
                CrossingKind::Crossing => "crossing".into(),
                CrossingKind::Avoided => "avoided".into(),
            },
            fmt_f64(r.diagnostics.raw_values[0]),
            fmt_f64(r.diagnostics.raw_values[1]),
            fmt_f64(r.diagnostics.raw_values[2]),
            r.diagnostics.satisfied.to_string(),
        ]);
    }
    csv.write(&out_path(out_dir, "crossings.csv"))?;

    #[derive(Serialize)]
    struct Config {
        sweep: SweepSpec,
        sector: ParitySector,
        opts: ScanOptions,
    }
    write_json(
        &out_path(out_dir, "crossings.json"),
        &JsonReport {
            command: "degeneracy",
            config: Config {
                sweep: sweep.clone(),
                sector,
                opts,
            },
            results: &records,
            certificates: (),
        },
    )?;
    write_run_meta(out_dir, "degeneracy", argv)?;

    let ok = records
        .iter()
        .filter(|r| r.kind == CrossingKind::Crossing)
        .all(|r| r.diagnostics.satisfied);
    Ok(if ok { 0 } else { 1 })
}

// ── dump-matrix ─────────────────────────────────────────────────────

fn cmd_dump(args: &crate::DumpArgs, out_dir: &Path, argv: &[String]) -> Result<i32, CliError> {
    let spec = args.model.to_spec()?;
    let sector = parse_sector(&args.sector)?;
    let h = build(&spec, args.truncation, sector)?;
    let path = args
        .output
        .clone()
        .unwrap_or_else(|| out_path(out_dir, "matrix.txt"));
    write_matrix_dump(&path, &h)?;
    write_run_meta(out_dir, "dump-matrix", argv)?;
    Ok(0)
}
