//! C ABI over `spectrum-scope`.
//!
//! Every function returns an [`SsStatus`]; on failure the message is kept per
//! thread and can be copied out with [`ss_last_error_message`]. Arrays are
//! passed as pointer plus length `d`. Handles are opaque and must be released
//! with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use spectrum_scope::cli::resolve_spectrum;
use spectrum_scope::ldp::{cgf, inf_rate_over_region, legendre_of_cgf, rate};
use spectrum_scope::measure::{distribution_mode, exact_distribution, region_probability, Region};
use spectrum_scope::rsk::{sample_frames, SamplerConfig};
use spectrum_scope::schur::schur_log;
use spectrum_scope::{Error, SchurWeylDistribution, Spectrum, YoungFrame};

/// Status codes; the non-zero input, cap and convergence codes match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    InvalidInput = 2,
    ResourceLimit = 3,
    NonConvergence = 4,
    NullPointer = 5,
    IndexOutOfRange = 6,
    Panic = 7,
}

/// Exact outcome law of the frame measurement.
pub struct SsDistribution {
    inner: SchurWeylDistribution,
}

/// Sampled outcome counts, frames in canonical order.
pub struct SsHistogram {
    d: usize,
    entries: Vec<(YoungFrame, u64)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Core(Error),
    Null(&'static str),
    Index(usize, usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn status_of(f: Failure) -> SsStatus {
    match f {
        Failure::Core(e) => {
            set_last_error(e.to_string());
            match e.exit_code() {
                3 => SsStatus::ResourceLimit,
                4 => SsStatus::NonConvergence,
                _ => SsStatus::InvalidInput,
            }
        }
        Failure::Null(what) => {
            set_last_error(format!("{what} is null"));
            SsStatus::NullPointer
        }
        Failure::Index(i, len) => {
            set_last_error(format!("index {i} out of range for length {len}"));
            SsStatus::IndexOutOfRange
        }
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> SsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SsStatus::Ok,
        Ok(Err(e)) => status_of(e),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            SsStatus::Panic
        }
    }
}

unsafe fn input<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a, T>(p: *mut T, len: usize, what: &'static str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

/// Same acceptance rules as the CLI without `--allow-unsorted`.
unsafe fn spectrum_arg(p: *const f64, d: usize, what: &'static str) -> Result<Spectrum, Failure> {
    if d == 0 {
        return Err(Error::Domain(format!("{what}: d must be at least 1")).into());
    }
    Ok(resolve_spectrum(input(p, d, what)?, d, false, false)?)
}

fn write_rows(y: &YoungFrame, out: &mut [u32]) {
    out.copy_from_slice(y.rows());
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the buffer size needed for the full message,
/// or 0 when there is no error.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null with `len == 0`.
#[no_mangle]
pub unsafe extern "C" fn ss_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n - 1) = 0;
            }
            bytes.len()
        }
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ss_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Relative entropy `I(s) = Σ s_j ln(s_j / r_j)`; `+inf` off the support of `r`.
///
/// # Safety
/// `s` and `r` must point to `d` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_rate(s: *const f64, r: *const f64, d: usize, out: *mut f64) -> SsStatus {
    guard(|| {
        let s = spectrum_arg(s, d, "s")?;
        let r = spectrum_arg(r, d, "r")?;
        *out_ref(out, "out")? = rate(&s, &r)?;
        Ok(())
    })
}

/// Cumulant generating function `ln Σ r_j e^{η_j}`.
///
/// # Safety
/// `eta` and `r` must point to `d` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cgf(eta: *const f64, r: *const f64, d: usize, out: *mut f64) -> SsStatus {
    guard(|| {
        let r = spectrum_arg(r, d, "r")?;
        let eta = input(eta, d, "eta")?;
        *out_ref(out, "out")? = cgf(eta, &r)?;
        Ok(())
    })
}

/// `sup_η (η·s − c(η))`. `eta_out` may be null; otherwise it receives the `d`
/// maximizing coordinates. `iterations_out` may be null.
///
/// # Safety
/// `s` and `r` must point to `d` doubles; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_legendre(
    s: *const f64,
    r: *const f64,
    d: usize,
    value_out: *mut f64,
    eta_out: *mut f64,
    iterations_out: *mut u64,
) -> SsStatus {
    guard(|| {
        let s = spectrum_arg(s, d, "s")?;
        let r = spectrum_arg(r, d, "r")?;
        let value = out_ref(value_out, "value_out")?;
        let res = legendre_of_cgf(&s, &r)?;
        *value = res.value;
        if !eta_out.is_null() {
            output(eta_out, d, "eta_out")?.copy_from_slice(&res.eta);
        }
        if let Some(it) = iterations_out.as_mut() {
            *it = res.iterations as u64;
        }
        Ok(())
    })
}

/// `ln s_Y(r)` for a frame given by `d` non-increasing rows (`-inf` when zero).
///
/// # Safety
/// `rows` and `r` must point to `d` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_schur_log(rows: *const u32, r: *const f64, d: usize, out: *mut f64) -> SsStatus {
    guard(|| {
        let r = spectrum_arg(r, d, "r")?;
        let y = YoungFrame::with_rows(input(rows, d, "rows")?, d)?;
        *out_ref(out, "out")? = schur_log(&y, &r)?.ln();
        Ok(())
    })
}

/// `inf I` over the complement of the closed sup-norm ball of radius `epsilon`
/// around `r`. `minimizer_out` may be null; otherwise receives `d` doubles.
/// An empty region yields `+inf` and leaves `minimizer_out` untouched.
///
/// # Safety
/// `r` must point to `d` doubles; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_inf_rate_ball_complement(
    r: *const f64,
    d: usize,
    epsilon: f64,
    value_out: *mut f64,
    minimizer_out: *mut f64,
) -> SsStatus {
    guard(|| {
        let r = spectrum_arg(r, d, "r")?;
        let value = out_ref(value_out, "value_out")?;
        let region = Region::ball_complement(&r, epsilon)?;
        match inf_rate_over_region(&region, &r) {
            Ok(inf) => {
                *value = inf.value;
                if !minimizer_out.is_null() {
                    output(minimizer_out, d, "minimizer_out")?.copy_from_slice(inf.minimizer.values());
                }
                Ok(())
            }
            Err(Error::EmptyRegion) => {
                *value = f64::INFINITY;
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    })
}

/// Builds the exact law on `n` copies. Release with [`ss_distribution_free`].
///
/// # Safety
/// `r` must point to `d` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_distribution_new(
    d: usize,
    n: u32,
    r: *const f64,
    out: *mut *mut SsDistribution,
) -> SsStatus {
    guard(|| {
        let slot = out_ref(out, "out")?;
        *slot = ptr::null_mut();
        let r = spectrum_arg(r, d, "r")?;
        let inner = exact_distribution(d, n, &r)?;
        *slot = Box::into_raw(Box::new(SsDistribution { inner }));
        Ok(())
    })
}

/// # Safety
/// `dist` must come from [`ss_distribution_new`] and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ss_distribution_free(dist: *mut SsDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// Number of frames (0 for a null handle).
///
/// # Safety
/// `dist` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ss_distribution_len(dist: *const SsDistribution) -> usize {
    dist.as_ref().map_or(0, |h| h.inner.len())
}

/// Frame `index` in canonical order: `d` rows, probability and log-probability.
/// Any output pointer may be null.
///
/// # Safety
/// `dist` must be a live handle; `rows_out` must hold `d` values when non-null.
#[no_mangle]
pub unsafe extern "C" fn ss_distribution_entry(
    dist: *const SsDistribution,
    index: usize,
    rows_out: *mut u32,
    prob_out: *mut f64,
    log_prob_out: *mut f64,
) -> SsStatus {
    guard(|| {
        let h = dist.as_ref().ok_or(Failure::Null("dist"))?;
        let len = h.inner.len();
        if index >= len {
            return Err(Failure::Index(index, len));
        }
        let y = &h.inner.frames()[index];
        let lp = h.inner.log_probs()[index];
        if !rows_out.is_null() {
            write_rows(y, output(rows_out, h.inner.d(), "rows_out")?);
        }
        if let Some(p) = prob_out.as_mut() {
            *p = lp.exp();
        }
        if let Some(p) = log_prob_out.as_mut() {
            *p = lp;
        }
        Ok(())
    })
}

/// Most probable frame.
///
/// # Safety
/// `dist` must be a live handle; `rows_out` must hold `d` values.
#[no_mangle]
pub unsafe extern "C" fn ss_distribution_mode(dist: *const SsDistribution, rows_out: *mut u32) -> SsStatus {
    guard(|| {
        let h = dist.as_ref().ok_or(Failure::Null("dist"))?;
        let out = output(rows_out, h.inner.d(), "rows_out")?;
        write_rows(distribution_mode(&h.inner)?, out);
        Ok(())
    })
}

/// Probability that `Y/N` lies outside the closed sup-norm ball of radius `epsilon`
/// around the distribution's own spectrum.
///
/// # Safety
/// `dist` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_distribution_ball_complement_probability(
    dist: *const SsDistribution,
    epsilon: f64,
    out: *mut f64,
) -> SsStatus {
    guard(|| {
        let h = dist.as_ref().ok_or(Failure::Null("dist"))?;
        let out = out_ref(out, "out")?;
        let region = Region::ball_complement(h.inner.spectrum(), epsilon)?;
        *out = region_probability(&h.inner, &region);
        Ok(())
    })
}

/// Draws `samples` frames by RSK insertion over `chains` seeded streams.
/// Release with [`ss_histogram_free`].
///
/// # Safety
/// `r` must point to `d` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_sample_new(
    d: usize,
    n: u32,
    r: *const f64,
    samples: u64,
    seed: u64,
    chains: u32,
    out: *mut *mut SsHistogram,
) -> SsStatus {
    guard(|| {
        let slot = out_ref(out, "out")?;
        *slot = ptr::null_mut();
        let r = spectrum_arg(r, d, "r")?;
        let cfg = SamplerConfig::new(r, n, seed, chains)?;
        let counts = sample_frames(&cfg, samples)?;
        let entries = counts.into_iter().rev().collect();
        *slot = Box::into_raw(Box::new(SsHistogram { d, entries }));
        Ok(())
    })
}

/// # Safety
/// `hist` must come from [`ss_sample_new`] and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ss_histogram_free(hist: *mut SsHistogram) {
    if !hist.is_null() {
        drop(Box::from_raw(hist));
    }
}

/// Number of distinct frames observed (0 for a null handle).
///
/// # Safety
/// `hist` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ss_histogram_len(hist: *const SsHistogram) -> usize {
    hist.as_ref().map_or(0, |h| h.entries.len())
}

/// Observed frame `index` in canonical order and its count.
///
/// # Safety
/// `hist` must be a live handle; `rows_out` must hold `d` values when non-null.
#[no_mangle]
pub unsafe extern "C" fn ss_histogram_entry(
    hist: *const SsHistogram,
    index: usize,
    rows_out: *mut u32,
    count_out: *mut u64,
) -> SsStatus {
    guard(|| {
        let h = hist.as_ref().ok_or(Failure::Null("hist"))?;
        let (y, k) = h.entries.get(index).ok_or(Failure::Index(index, h.entries.len()))?;
        if !rows_out.is_null() {
            write_rows(y, output(rows_out, h.d, "rows_out")?);
        }
        if let Some(c) = count_out.as_mut() {
            *c = *k;
        }
        Ok(())
    })
}
