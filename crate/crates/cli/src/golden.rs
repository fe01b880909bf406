//! Runs `jobs/*.json` and compares each report with `golden/<job>.<ext>`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use crate::config::{Format, JobConfig};
use crate::error::CliError;
use crate::{render, report};

fn job_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let jobs = dir.join("jobs");
    let mut files: Vec<PathBuf> = fs::read_dir(&jobs)
        .map_err(|e| CliError::Parse(format!("cannot list {}: {e}", jobs.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// The report a job file produces, or its error object.
pub fn produce(path: &Path) -> Result<(String, Format), CliError> {
    let config = JobConfig::load(path)?;
    let format = config.format.unwrap_or_default();
    // job files are self-contained: the environment does not leak in
    let job = config.resolve(None)?;
    let text = match report::run(&job) {
        Ok(r) => render::render(&r, format),
        Err(e) => render::render(&e.to_json(), Format::Json),
    };
    Ok((text, format))
}

pub fn golden_path(dir: &Path, job: &Path, format: Format) -> PathBuf {
    let stem = job.file_stem().expect("job files have names");
    let ext = match format {
        Format::Json => "json",
        Format::Text => "txt",
    };
    dir.join("golden").join(stem).with_extension(ext)
}

pub fn run(dir: &Path, bless: bool) -> ExitCode {
    let files = match job_files(dir) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.exit_code());
        }
    };
    let mut failed = 0;
    for job in &files {
        let name = job.file_stem().unwrap_or_default().to_string_lossy();
        let (text, format) = match produce(job) {
            Ok(v) => v,
            Err(e) => {
                println!("FAIL {name}: {}", e.message());
                failed += 1;
                continue;
            }
        };
        let target = golden_path(dir, job, format);
        if bless {
            if let Err(e) = fs::create_dir_all(target.parent().expect("has parent")).and_then(|_| fs::write(&target, &text)) {
                println!("FAIL {name}: cannot write {}: {e}", target.display());
                failed += 1;
            } else {
                println!("blessed {name}");
            }
            continue;
        }
        match fs::read_to_string(&target) {
            Ok(expected) if expected == text => println!("ok   {name}"),
            Ok(expected) => {
                failed += 1;
                println!("DIFF {name}");
                print_diff(&expected, &text);
            }
            Err(_) => {
                failed += 1;
                println!("MISSING {name}: {}", target.display());
            }
        }
    }
    println!("golden: {}/{} jobs match", files.len() - failed, files.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_diff(expected: &str, actual: &str) {
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i), a.get(i));
        if x != y {
            println!("  line {}: expected {:?}", i + 1, x.unwrap_or(&""));
            println!("  line {}:   actual {:?}", i + 1, y.unwrap_or(&""));
        }
    }
}
