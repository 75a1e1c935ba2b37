use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use hermite_kernels::derivatives::{derivative_stack, fir_kernels, fir_taps, DerivativeMode};
use hermite_kernels::eval::{run_eval, EvalConfig, DEFAULT_REPETITIONS};
use hermite_kernels::hermite::{reverse_lex_enumerate, Multiplicity};
use hermite_kernels::imaging::{decimate2x, load_image, save_image, ImagePlane, LowPass, DEFAULT_LOWPASS_TAPS};
use hermite_kernels::kernel::{build_kernel, fuse_kernel, FractionalOffset, StencilSpec};
use hermite_kernels::methods::{Interpolator, Method, DEFAULT_NU, DEFAULT_STENCIL};

const THREADS_ENV: &str = "HZ_THREADS";

#[derive(Parser)]
#[command(name = "hzoom", version, about = "Hermite interpolation kernels and x2 image zoom")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the Hermite kernel for one fractional offset (HKT text format).
    Kernel {
        /// Fractional offset per axis, comma separated, each in [0, 1).
        #[arg(long, value_parser = parse_offset, allow_hyphen_values = true)]
        offset: FractionalOffset,
        /// Stencil points per axis.
        #[arg(long, default_value_t = DEFAULT_STENCIL, value_parser = parse_stencil)]
        size: usize,
        /// Conditions per node and axis (derivative orders 0..nu-1).
        #[arg(long, default_value_t = DEFAULT_NU, value_parser = parse_nu)]
        nu: usize,
        /// Fuse with FIR derivative filters (fir3, fir5, ...); 2D only.
        #[arg(long, value_parser = parse_mode)]
        fuse: Option<DerivativeMode>,
        /// Store in convolution (flipped) orientation.
        #[arg(long)]
        flipped: bool,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write derivative filter taps and derivative planes of an image.
    Derivs {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NU, value_parser = parse_nu)]
        nu: usize,
        #[arg(long, default_value = "fir5", value_parser = parse_mode)]
        mode: DerivativeMode,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Zoom an image by 2.
    Zoom {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "hermite-fir7", value_parser = parse_method)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_STENCIL, value_parser = parse_stencil)]
        stencil: usize,
        #[arg(long, default_value_t = DEFAULT_NU, value_parser = parse_nu)]
        nu: usize,
    },
    /// Low-pass filter and decimate an image by 2.
    Decimate {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Low-pass length (odd).
        #[arg(long, default_value_t = DEFAULT_LOWPASS_TAPS)]
        lp_taps: usize,
    },
    /// Cascaded decimate/zoom evaluation; writes a CSV report.
    Eval {
        /// Input images (PGM or PNG).
        #[arg(required = true)]
        images: Vec<PathBuf>,
        /// Comma-separated methods; all when omitted.
        #[arg(long, value_delimiter = ',', value_parser = parse_method)]
        methods: Vec<Method>,
        #[arg(long, default_value_t = DEFAULT_REPETITIONS, value_parser = parse_positive)]
        reps: usize,
        #[arg(long, default_value_t = DEFAULT_STENCIL, value_parser = parse_stencil)]
        stencil: usize,
        #[arg(long, default_value_t = DEFAULT_NU, value_parser = parse_nu)]
        nu: usize,
        #[arg(long, default_value_t = DEFAULT_LOWPASS_TAPS)]
        lp_taps: usize,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Directory for every repetition's zoomed image.
        #[arg(long)]
        save_images: Option<PathBuf>,
    },
}

fn parse_offset(s: &str) -> std::result::Result<FractionalOffset, String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    FractionalOffset::new(parts).map_err(|e| e.to_string())
}

fn parse_positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn parse_nu(s: &str) -> std::result::Result<usize, String> {
    parse_positive(s)
}

fn parse_stencil(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 2 => Ok(v),
        _ => Err(format!("stencil size must be at least 2, got `{s}`")),
    }
}

fn parse_mode(s: &str) -> std::result::Result<DerivativeMode, String> {
    s.parse().map_err(|e: hermite_kernels::Error| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: hermite_kernels::Error| e.to_string())
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `P2`, `width height`, `255`, then one line of samples per row with 17
/// significant digits.
fn plane_text(plane: &ImagePlane) -> String {
    let mut out = format!("P2\n{} {}\n255\n", plane.width(), plane.height());
    for r in 0..plane.height() {
        let cells: Vec<String> = plane.row(r).iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn cmd_kernel(
    offset: FractionalOffset,
    size: usize,
    nu: usize,
    fuse: Option<DerivativeMode>,
    flipped: bool,
    output: Option<PathBuf>,
) -> Result<()> {
    let n = offset.dim();
    let tensor = build_kernel(&offset, &StencilSpec::uniform(n, size)?, &Multiplicity::uniform(n, nu)?)?;
    let text = match fuse {
        None => tensor.oriented(flipped).to_hkt(),
        Some(DerivativeMode::Fir(len)) => {
            let fused = fuse_kernel(&tensor, &fir_kernels(tensor.indices(), len)?)?;
            if flipped {
                let k = fused.kernel().flipped();
                hermite_kernels::kernel::write_hkt(&[k.rows(), k.cols()], true, offset.components(), &[k.weights().to_vec()])
            } else {
                fused.to_hkt()
            }
        }
        Some(DerivativeMode::Iir) => anyhow::bail!(UsageError("recursive derivatives cannot be fused".into())),
    };
    write_output(output.as_deref(), &text)
}

fn cmd_derivs(input: PathBuf, nu: usize, mode: DerivativeMode, out_dir: PathBuf) -> Result<()> {
    let image = load_image(&input)?;
    let nu = Multiplicity::uniform(2, nu)?;
    fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let mut taps = String::new();
    match mode {
        DerivativeMode::Fir(len) => {
            for d in 1..nu[0] {
                let f = fir_taps(d, len)?;
                let cells: Vec<String> = f.taps().iter().map(|t| format!("{t:.16e}")).collect();
                let _ = writeln!(taps, "fir{len} d={d}: {}", cells.join(" "));
            }
        }
        DerivativeMode::Iir => {
            let s = hermite_kernels::derivatives::derive_compact_scheme()?;
            for (name, v) in [("q1", s.q1()), ("r1", s.r1()), ("q2", s.q2()), ("r2", s.r2())] {
                let cells: Vec<String> = v.iter().map(|t| format!("{t:.16e}")).collect();
                let _ = writeln!(taps, "{name}: {}", cells.join(" "));
            }
        }
    }
    fs::write(out_dir.join("taps.txt"), taps).context("writing taps")?;
    let stack = derivative_stack(&image, &nu, mode)?;
    for (k, plane) in reverse_lex_enumerate(&nu).iter().zip(stack.planes()) {
        let path = out_dir.join(format!("d{}_{}.pgm", k[0], k[1]));
        fs::write(&path, plane_text(plane)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_eval(
    images: Vec<PathBuf>,
    methods: Vec<Method>,
    config: EvalConfig,
    csv: Option<PathBuf>,
    save_images: Option<PathBuf>,
) -> Result<()> {
    let config = EvalConfig { methods: if methods.is_empty() { Method::standard() } else { methods }, ..config };
    if let Some(dir) = &save_images {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let report = run_eval(&images, &config, save_images.as_deref())?;
    for (name, msg) in &report.failures {
        log::error!("{name} skipped: {msg}");
    }
    write_output(csv.as_deref(), &report.to_csv())
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Kernel { offset, size, nu, fuse, flipped, output } => {
            cmd_kernel(offset, size, nu, fuse, flipped, output)
        }
        Command::Derivs { input, nu, mode, out_dir } => cmd_derivs(input, nu, mode, out_dir),
        Command::Zoom { input, output, method, stencil, nu } => {
            let interp = Interpolator::new(method, stencil, nu)?;
            let image = load_image(&input)?;
            save_image(&interp.zoom(&image)?, &output)?;
            Ok(())
        }
        Command::Decimate { input, output, lp_taps } => {
            let lp = LowPass::for_factor_two(lp_taps).map_err(|e| UsageError(e.to_string()))?;
            save_image(&decimate2x(&load_image(&input)?, &lp)?, &output)?;
            Ok(())
        }
        Command::Eval { images, methods, reps, stencil, nu, lp_taps, csv, save_images } => {
            let config = EvalConfig { methods: Vec::new(), repetitions: reps, stencil, nu, lowpass_taps: lp_taps };
            cmd_eval(images, methods, config, csv, save_images)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.parse::<usize>() {
            Ok(n) if n >= 1 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    log::warn!("could not size the worker pool: {e}");
                }
            }
            _ => {
                eprintln!("error: {THREADS_ENV} must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
