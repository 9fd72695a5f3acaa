//! C ABI for `qptlab`.
//!
//! Functions and random streams are opaque handles created by `qpt_*_new`
//! style constructors and released with the matching `*_free`. Every
//! fallible call returns a [`QptStatus`]; on failure the message is kept per
//! thread and can be copied out with [`qpt_last_error`]. Panics never cross
//! the boundary: they are caught and reported as [`QptStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qptlab::boolfn::{
    builtin, exact_distance_to_monotone, exact_distance_to_symmetric, from_hex, monotone_violation_probability,
    symmetry_violation_probability, to_hex, triangle_density,
};
use qptlab::experiment::{parse_function_spec, run, ExperimentConfig};
use qptlab::spectra::{helstrom_from_trace_norm, trace_norm, trace_norm_closed_form, ClosedFormParams, DensityMatrix};
use qptlab::testers::{
    estimate_intersection2, test_mm, test_monotonicity, test_symmetry, test_triangle_freeness, TesterVerdict,
    TriangleParams,
};
use qptlab::{BooleanFunction, Error, RngStream};

/// Status codes. `Ok` is zero; everything else is an error whose message is
/// available from [`qpt_last_error`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QptStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidParameter = 3,
    Arity = 4,
    Capability = 5,
    BudgetExhausted = 6,
    Contract = 7,
    InternalConsistency = 8,
    TheoremViolation = 9,
    Parse = 10,
    UnknownBuiltin = 11,
    Io = 12,
    Panic = 13,
}

impl From<&Error> for QptStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Arity(_) => QptStatus::Arity,
            Error::Capability(_) => QptStatus::Capability,
            Error::BudgetExhausted { .. } => QptStatus::BudgetExhausted,
            Error::InvalidParameter(_) => QptStatus::InvalidParameter,
            Error::Contract(_) => QptStatus::Contract,
            Error::InternalConsistency(_) => QptStatus::InternalConsistency,
            Error::TheoremViolation(_) => QptStatus::TheoremViolation,
            Error::Parse(_) => QptStatus::Parse,
            Error::UnknownBuiltin(_) => QptStatus::UnknownBuiltin,
            Error::Io(_) => QptStatus::Io,
        }
    }
}

/// Opaque Boolean function.
pub struct QptFunction(BooleanFunction);

/// Opaque random stream.
pub struct QptRng(RngStream);

/// Outcome of one tester run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QptVerdict {
    pub accept: bool,
    pub statistic: f64,
    pub copies_used: u64,
    pub aborted_iterations: u64,
}

impl From<&TesterVerdict> for QptVerdict {
    fn from(v: &TesterVerdict) -> Self {
        Self {
            accept: v.decision.is_accept(),
            statistic: v.statistic,
            copies_used: v.copies_used,
            aborted_iterations: v.aborted_iterations,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(QptStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(QptStatus::from(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(body: impl FnOnce() -> FfiResult<()>) -> QptStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(String::new());
            QptStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            QptStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(QptStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(QptStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(QptStatus::InternalConsistency, "string contains NUL".into()))
}

fn boxed_function(f: BooleanFunction) -> *mut QptFunction {
    Box::into_raw(Box::new(QptFunction(f)))
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len − 1` bytes) and returns the full message
/// length in bytes. Pass `len = 0` to query the length.
///
/// # Safety
/// `buf` must point to `len` writable bytes, or be null with `len = 0`.
#[no_mangle]
pub unsafe extern "C" fn qpt_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qpt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qpt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// --- functions ------------------------------------------------------------

/// Parameter-free builtin (`majority`, `parity`, `dictator`, ...) on `n` bits.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_function_builtin(name: *const c_char, n: usize, out: *mut *mut QptFunction) -> QptStatus {
    guard(|| {
        let f = builtin(text(name, "name")?, n)?;
        put(out, boxed_function(f), "out")
    })
}

/// Function from a lowercase hex truth table.
///
/// # Safety
/// `hex` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_function_from_hex(hex: *const c_char, out: *mut *mut QptFunction) -> QptStatus {
    guard(|| {
        let f = from_hex(text(hex, "hex")?)?;
        put(out, boxed_function(f), "out")
    })
}

/// Function from a CLI-style spec (`mm:<hex>`, `@path`, builtin name, ...).
/// `n = 0` leaves the arity to the spec.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_function_from_spec(spec: *const c_char, n: usize, out: *mut *mut QptFunction) -> QptStatus {
    guard(|| {
        let f = parse_function_spec(text(spec, "spec")?, (n > 0).then_some(n))?;
        put(out, boxed_function(f), "out")
    })
}

/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qpt_function_free(f: *mut QptFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Arity, or 0 for a null handle.
///
/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qpt_function_arity(f: *const QptFunction) -> usize {
    f.as_ref().map_or(0, |f| f.0.arity())
}

/// `f(x)` with `x` an index, most significant bit first.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_function_get(f: *const QptFunction, x: u32, out: *mut bool) -> QptStatus {
    guard(|| {
        let f = &deref(f, "f")?.0;
        if x as usize >= f.len() {
            return Err(Failure(QptStatus::InvalidParameter, format!("index {x} out of range for arity {}", f.arity())));
        }
        put(out, f.get(x), "out")
    })
}

/// Hex truth table as a new string; release with [`qpt_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_function_to_hex(f: *const QptFunction, out: *mut *mut c_char) -> QptStatus {
    guard(|| {
        let f = &deref(f, "f")?.0;
        if f.arity() < 2 {
            return Err(Failure(QptStatus::Capability, "the hex format needs arity ≥ 2".into()));
        }
        put(out, c_string(to_hex(f))?, "out")
    })
}

// --- random streams -------------------------------------------------------

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_rng_new(seed: u64, stream: u64, out: *mut *mut QptRng) -> QptStatus {
    guard(|| put(out, Box::into_raw(Box::new(QptRng(RngStream::new(seed, stream)))), "out"))
}

/// The stream the CLI uses for trial `trial` of the primitive named `tag`.
///
/// # Safety
/// `tag` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_rng_for_trial(seed: u64, trial: u64, tag: *const c_char, out: *mut *mut QptRng) -> QptStatus {
    guard(|| {
        let rng = RngStream::for_trial(seed, trial, text(tag, "tag")?);
        put(out, Box::into_raw(Box::new(QptRng(rng))), "out")
    })
}

/// # Safety
/// `rng` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qpt_rng_free(rng: *mut QptRng) {
    if !rng.is_null() {
        drop(Box::from_raw(rng));
    }
}

// --- oracles --------------------------------------------------------------

unsafe fn oracle(f: *const QptFunction, out: *mut f64, compute: fn(&BooleanFunction) -> qptlab::Result<f64>) -> QptStatus {
    guard(|| {
        let f = &deref(f, "f")?.0;
        put(out, compute(f)?, "out")
    })
}

/// Probability that a random edge endpoint witnesses a monotonicity violation.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_monotone_violation_probability(f: *const QptFunction, out: *mut f64) -> QptStatus {
    oracle(f, out, |f| Ok(monotone_violation_probability(f)))
}

/// `Pr_{x,π}[f(x) ≠ f(πx)]`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_symmetry_violation_probability(f: *const QptFunction, out: *mut f64) -> QptStatus {
    oracle(f, out, |f| Ok(symmetry_violation_probability(f)))
}

/// `Pr_{x,y}[f(x) = f(y) = f(x⊕y) = 1]`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_triangle_density(f: *const QptFunction, out: *mut f64) -> QptStatus {
    oracle(f, out, |f| Ok(triangle_density(f)))
}

/// Exact normalised distance to the monotone functions (arity ≤ 5).
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_distance_to_monotone(f: *const QptFunction, out: *mut f64) -> QptStatus {
    oracle(f, out, |f| Ok(exact_distance_to_monotone(f)?.epsilon))
}

/// Exact normalised distance to the symmetric functions.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_distance_to_symmetric(f: *const QptFunction, out: *mut f64) -> QptStatus {
    oracle(f, out, |f| Ok(exact_distance_to_symmetric(f)?.epsilon))
}

// --- testers --------------------------------------------------------------

unsafe fn run_tester(
    f: *const QptFunction,
    rng: *mut QptRng,
    out: *mut QptVerdict,
    tester: impl FnOnce(&BooleanFunction, &mut RngStream) -> qptlab::Result<TesterVerdict>,
) -> QptStatus {
    guard(|| {
        let f = &deref(f, "f")?.0;
        let rng = &mut deref_mut(rng, "rng")?.0;
        let v = tester(f, rng)?;
        put(out, QptVerdict::from(&v), "out")
    })
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_test_monotonicity(
    f: *const QptFunction,
    epsilon: f64,
    delta: f64,
    rng: *mut QptRng,
    out: *mut QptVerdict,
) -> QptStatus {
    run_tester(f, rng, out, |f, r| test_monotonicity(f, epsilon, delta, r))
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_test_symmetry(
    f: *const QptFunction,
    epsilon: f64,
    delta: f64,
    rng: *mut QptRng,
    out: *mut QptVerdict,
) -> QptStatus {
    run_tester(f, rng, out, |f, r| test_symmetry(f, epsilon, delta, r))
}

/// `eta ≤ 0` uses the default, `eta = epsilon_tilde`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_test_triangle_freeness(
    f: *const QptFunction,
    epsilon_tilde: f64,
    delta: f64,
    eta: f64,
    rng: *mut QptRng,
    out: *mut QptVerdict,
) -> QptStatus {
    run_tester(f, rng, out, |f, r| {
        let eta = if eta > 0.0 { eta } else { epsilon_tilde };
        test_triangle_freeness(f, &TriangleParams::with_eta(epsilon_tilde, delta, eta)?, r)
    })
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_test_mm(f: *const QptFunction, delta: f64, rng: *mut QptRng, out: *mut QptVerdict) -> QptStatus {
    run_tester(f, rng, out, |f, r| test_mm(f, delta, r))
}

/// Estimate of `|A ∩ B|/2^n` for the pair encoding `f`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_estimate_intersection2(
    f: *const QptFunction,
    epsilon: f64,
    delta: f64,
    rng: *mut QptRng,
    out: *mut f64,
) -> QptStatus {
    guard(|| {
        let f = &deref(f, "f")?.0;
        let rng = &mut deref_mut(rng, "rng")?.0;
        put(out, estimate_intersection2(f, epsilon, delta, rng)?.estimate, "out")
    })
}

// --- spectra --------------------------------------------------------------

/// Closed-form trace norm of the twin-ensemble difference matrix for `m`
/// matched pairs on `n` bits at `t` copies. `star_out` may be null.
///
/// # Safety
/// `total_out` must be writable; `star_out` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn qpt_trace_norm_closed_form(
    n: usize,
    t: usize,
    m: usize,
    total_out: *mut f64,
    star_out: *mut f64,
) -> QptStatus {
    guard(|| {
        let cf = trace_norm_closed_form(&ClosedFormParams::new(n, t, m)?)?;
        put(total_out, cf.total, "total_out")?;
        if !star_out.is_null() {
            star_out.write(cf.star_term);
        }
        Ok(())
    })
}

/// `Σ|λᵢ|` of a symmetric `dim × dim` row-major matrix.
///
/// # Safety
/// `data` must point to `dim²` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_trace_norm(data: *const f64, dim: usize, out: *mut f64) -> QptStatus {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        let len = dim
            .checked_mul(dim)
            .ok_or_else(|| Failure(QptStatus::Capability, "dimension overflows".into()))?;
        let m = DensityMatrix::from_rows(dim, std::slice::from_raw_parts(data, len).to_vec())?;
        put(out, trace_norm(&m)?, "out")
    })
}

/// `1/2 + ‖ρ₀ − ρ₁‖₁/4`, clamped to `[1/2, 1]`.
#[no_mangle]
pub extern "C" fn qpt_helstrom_from_trace_norm(norm: f64) -> f64 {
    helstrom_from_trace_norm(norm)
}

// --- experiments ----------------------------------------------------------

/// Runs an experiment from its JSON config (the `config` object of a result
/// file) and returns the full JSON result; release it with
/// [`qpt_string_free`]. Output and CSV paths in the config are ignored.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpt_run_experiment(config_json: *const c_char, out: *mut *mut c_char) -> QptStatus {
    guard(|| {
        let mut config: ExperimentConfig = serde_json::from_str(text(config_json, "config_json")?)
            .map_err(|e| Failure(QptStatus::Parse, format!("config: {e}")))?;
        config.output = None;
        config.csv = None;
        let json = run(&config)?.to_json()?;
        put(out, c_string(json)?, "out")
    })
}
