//! Cascaded evaluation: low-pass, decimate by 2, zoom by 2, compare with the
//! original, and feed the zoomed image into the next repetition.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::imaging::{decimate2x, load_image, save_image, ImagePlane, LowPass, DEFAULT_LOWPASS_TAPS};
use crate::methods::{Interpolator, Method, DEFAULT_NU, DEFAULT_STENCIL};
use crate::metrics::{quality, QualityScore};

pub const DEFAULT_REPETITIONS: usize = 20;
pub const MEAN_ROW: &str = "__mean__";
pub const CSV_HEADER: &str = "image,method,rep,psnr,ssim";

#[derive(Clone, Debug, PartialEq)]
pub struct EvalConfig {
    pub methods: Vec<Method>,
    pub repetitions: usize,
    pub stencil: usize,
    pub nu: usize,
    pub lowpass_taps: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            methods: Method::standard(),
            repetitions: DEFAULT_REPETITIONS,
            stencil: DEFAULT_STENCIL,
            nu: DEFAULT_NU,
            lowpass_taps: DEFAULT_LOWPASS_TAPS,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Config("no methods selected".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        if self.stencil < 2 {
            return Err(Error::Config(format!("stencil size {} < 2", self.stencil)));
        }
        if self.nu == 0 {
            return Err(Error::Config("nu must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalRow {
    pub image: String,
    pub method: Method,
    pub rep: usize,
    pub score: QualityScore,
}

#[derive(Clone, Debug, Default)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
    /// (image, message) for inputs that could not be evaluated.
    pub failures: Vec<(String, String)>,
    /// Wall time per method summed over images.
    pub timings: Vec<(Method, Duration)>,
}

/// One image through the cascade for one method; `save` receives each
/// repetition's zoomed image.
pub fn cascade(
    original: &ImagePlane,
    interp: &Interpolator,
    lowpass: &LowPass,
    repetitions: usize,
    mut save: impl FnMut(usize, &ImagePlane) -> Result<()>,
) -> Result<Vec<QualityScore>> {
    let (h, w) = original.dims();
    let mut current = original.clone();
    let mut scores = Vec::with_capacity(repetitions);
    for rep in 1..=repetitions {
        let small = decimate2x(&current, lowpass)?;
        let zoomed = interp.zoom(&small)?.crop(h, w)?;
        scores.push(quality(original, &zoomed)?);
        save(rep, &zoomed)?;
        current = zoomed;
    }
    Ok(scores)
}

fn image_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

/// Runs every (image, method) pair in parallel. Images that fail to load or
/// process are reported in `failures` and leave no partial rows.
pub fn run_eval(paths: &[PathBuf], config: &EvalConfig, out_dir: Option<&Path>) -> Result<EvalReport> {
    config.validate()?;
    let lowpass = LowPass::for_factor_two(config.lowpass_taps)?;
    let interps: Vec<Interpolator> =
        config.methods.iter().map(|&m| Interpolator::new(m, config.stencil, config.nu)).collect::<Result<_>>()?;

    let loaded: Vec<(String, Result<ImagePlane>)> =
        paths.iter().map(|p| (image_name(p), load_image(p))).collect();
    let jobs: Vec<(usize, usize)> =
        (0..loaded.len()).flat_map(|i| (0..interps.len()).map(move |m| (i, m))).collect();

    let results: Vec<(usize, usize, Result<Vec<QualityScore>>, Duration)> = jobs
        .par_iter()
        .map(|&(i, m)| {
            let (name, image) = &loaded[i];
            let start = Instant::now();
            let scores = match image {
                Ok(img) => cascade(img, &interps[m], &lowpass, config.repetitions, |rep, z| match out_dir {
                    Some(dir) => save_image(z, dir.join(format!("{name}_{}_rep{rep:02}.png", interps[m].method()))),
                    None => Ok(()),
                }),
                Err(e) => Err(Error::Config(e.to_string())),
            };
            (i, m, scores, start.elapsed())
        })
        .collect();

    let mut report = EvalReport::default();
    let mut timings = vec![Duration::ZERO; interps.len()];
    let mut failed = vec![None; loaded.len()];
    for (i, m, scores, elapsed) in &results {
        timings[*m] += *elapsed;
        if let Err(e) = scores {
            failed[*i].get_or_insert_with(|| e.to_string());
        }
    }
    for (i, (name, _)) in loaded.iter().enumerate() {
        if let Some(msg) = &failed[i] {
            log::warn!("{name}: {msg}");
            report.failures.push((name.clone(), msg.clone()));
        }
    }
    for (i, m, scores, _) in results {
        if failed[i].is_some() {
            continue;
        }
        for (rep, score) in scores.expect("failures filtered above").into_iter().enumerate() {
            report.rows.push(EvalRow { image: loaded[i].0.clone(), method: config.methods[m], rep: rep + 1, score });
        }
    }
    report.timings = config.methods.iter().copied().zip(timings).collect();
    for (m, t) in &report.timings {
        log::info!("{m}: {:.3} s", t.as_secs_f64());
    }
    Ok(report)
}

fn fmt_psnr(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v:.6}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl EvalReport {
    pub fn scores(&self, image: &str, method: Method) -> Vec<QualityScore> {
        self.rows.iter().filter(|r| r.image == image && r.method == method).map(|r| r.score).collect()
    }

    /// Per-method, per-repetition means over the successfully evaluated
    /// images, in the order the methods first appear.
    pub fn means(&self) -> Vec<EvalRow> {
        let mut methods: Vec<Method> = Vec::new();
        for r in &self.rows {
            if !methods.contains(&r.method) {
                methods.push(r.method);
            }
        }
        let mut out = Vec::new();
        for m in methods {
            let reps = self.rows.iter().filter(|r| r.method == m).map(|r| r.rep).max().unwrap_or(0);
            for rep in 1..=reps {
                let sel: Vec<&QualityScore> =
                    self.rows.iter().filter(|r| r.method == m && r.rep == rep).map(|r| &r.score).collect();
                let n = sel.len() as f64;
                out.push(EvalRow {
                    image: MEAN_ROW.into(),
                    method: m,
                    rep,
                    score: QualityScore {
                        psnr: sel.iter().map(|s| s.psnr).sum::<f64>() / n,
                        ssim: sel.iter().map(|s| s.ssim).sum::<f64>() / n,
                    },
                });
            }
        }
        out
    }

    /// RFC 4180 CSV: per-image rows, then mean rows, then one `error` row
    /// per failed image.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push_str("\r\n");
        for r in self.rows.iter().chain(self.means().iter()) {
            let _ = write!(
                out,
                "{},{},{},{},{:.8}\r\n",
                csv_field(&r.image),
                r.method,
                r.rep,
                fmt_psnr(r.score.psnr),
                r.score.ssim
            );
        }
        for (image, _) in &self.failures {
            let _ = write!(out, "{},error,,,\r\n", csv_field(image));
        }
        out
    }
}
