//! The `tribrot` command line: renders escape-time sets, classifies real
//! roots, and runs the verification suites.
//!
//! Exit codes: `0` on success, `1` on flag or I/O errors, `2` when a
//! verification suite has a failing row.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use tribrot::io::{roots_csv, write_octahedron_obj, write_ppm, write_text, write_vox};
use tribrot::raster::{scan2d_with_workers, scan3d_with_workers};
use tribrot::realroots::classify;
use tribrot::verify::{all_pass, report_csv, run_suite, Suite};
use tribrot::{OctahedronSpec, Plane, SliceSpec, Window2D, Window3D};

#[derive(Parser, Debug)]
#[command(name = "tribrot", version, about = "Tricomplex Multibrot renderer and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Complex Multibrot in the (1, i1) plane, written as PPM.
    Multibrot(PlaneArgs),
    /// Hyperbrot in the (1, j1) plane, written as PPM.
    Hyperbrot(PlaneArgs),
    /// The (1, j1, j2) slice as a voxel file, optionally with its analytic octahedron.
    Perplexbrot {
        #[command(flatten)]
        vol: VolumeArgs,
        /// Also write the analytic octahedron as OBJ (odd powers only).
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Any principal 3D slice as a voxel file.
    Slice {
        /// Three distinct units from 1,i1,i2,i3,i4,j1,j2,j3.
        #[arg(long)]
        axes: SliceSpec,
        #[command(flatten)]
        vol: VolumeArgs,
    },
    /// Real roots of x^p - x + c as CSV.
    Roots {
        #[arg(long)]
        power: u32,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
    },
    /// Run a verification suite and write its CSV report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PlaneArgs {
    #[arg(long, default_value_t = 3)]
    power: u32,
    /// XLO,XHI,YLO,YHI
    #[arg(long, default_value = "-1.5,1.5,-1.5,1.5", allow_hyphen_values = true)]
    window: String,
    #[arg(long, default_value_t = 1024)]
    res: usize,
    #[arg(long, default_value_t = 1000)]
    max_iter: u32,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; output does not depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct VolumeArgs {
    #[arg(long, default_value_t = 3)]
    power: u32,
    /// XLO,XHI,YLO,YHI,ZLO,ZHI
    #[arg(long, default_value = "-1,1,-1,1,-1,1", allow_hyphen_values = true)]
    window: String,
    #[arg(long, default_value_t = 128)]
    res: usize,
    #[arg(long, default_value_t = 1000)]
    max_iter: u32,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
}

enum Failure {
    Usage(String),
    Runtime(String),
    Verify,
}

impl From<tribrot::Error> for Failure {
    fn from(e: tribrot::Error) -> Self {
        match e {
            tribrot::Error::Io { .. } | tribrot::Error::ThreadPool(_) => Failure::Runtime(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn parse_bounds(s: &str, n: usize) -> Result<Vec<f64>, Failure> {
    let vals: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match vals {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(Failure::Usage(format!(
            "malformed window `{s}`: expected {n} comma-separated numbers"
        ))),
    }
}

fn workers(threads: Option<usize>) -> Result<usize, Failure> {
    match threads {
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn render_plane(plane: Plane, a: &PlaneArgs) -> Result<(), Failure> {
    let b = parse_bounds(&a.window, 4)?;
    let w = Window2D::new((b[0], b[1]), (b[2], b[3]), a.res, a.res)?;
    let n = workers(a.threads)?;
    let r = scan2d_with_workers(plane, a.power, &w, a.max_iter, n)?;
    write_ppm(&r, &a.out)?;
    Ok(())
}

fn render_volume(slice: &SliceSpec, a: &VolumeArgs) -> Result<(), Failure> {
    let b = parse_bounds(&a.window, 6)?;
    let w = Window3D::new((b[0], b[1]), (b[2], b[3]), (b[4], b[5]), a.res, a.res, a.res)?;
    let n = workers(a.threads)?;
    let r = scan3d_with_workers(slice, a.power, &w, a.max_iter, n)?;
    write_vox(&r, &a.out)?;
    Ok(())
}

fn execute(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let io_err = |e: std::io::Error| Failure::Runtime(e.to_string());
    match cmd {
        Command::Multibrot(a) => render_plane(Plane::MultibrotComplex, &a),
        Command::Hyperbrot(a) => render_plane(Plane::Hyperbrot, &a),
        Command::Perplexbrot { vol, obj } => {
            // Check the OBJ request before spending time on the scan.
            let spec = obj
                .as_ref()
                .map(|_| OctahedronSpec::for_power(vol.power))
                .transpose()?;
            render_volume(&SliceSpec::PERPLEX, &vol)?;
            if let (Some(path), Some(spec)) = (obj, spec) {
                write_octahedron_obj(&spec, path)?;
            }
            Ok(())
        }
        Command::Slice { axes, vol } => render_volume(&axes, &vol),
        Command::Roots { power, c } => {
            let report = classify(power, c)?;
            writeln!(stderr, "regime: {}", report.regime).map_err(io_err)?;
            stdout.write_all(roots_csv(&report).as_bytes()).map_err(io_err)?;
            Ok(())
        }
        Command::Verify { suite, out } => {
            let rows = run_suite(suite)?;
            let csv = report_csv(&rows);
            match out {
                Some(path) => write_text(&csv, path)?,
                None => stdout.write_all(csv.as_bytes()).map_err(io_err)?,
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            writeln!(stderr, "{}: {} checks, {} failed", suite, rows.len(), failed).map_err(io_err)?;
            if all_pass(&rows) {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    finish(execute(cli.command, stdout, stderr), stderr)
}

fn finish(result: Result<(), Failure>, stderr: &mut dyn Write) -> i32 {
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) | Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Verify) => 2,
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}
