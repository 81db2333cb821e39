//! C ABI over the `pathdensity` library.
//!
//! Objects are opaque handles created by `*_new`/`*_read` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PdStatus`]; on failure [`pd_last_error`] describes the cause for the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pathdensity::coloring::{density_profile, GeometricColoring, GrowthRate, Reordering};
use pathdensity::extract::{extract_forest, simple_forest_pipeline, write_certificate, ForestCertificate};
use pathdensity::graphmodel::io::{read_coloring, write_coloring};
use pathdensity::graphmodel::{complete_random_coloring, Color, TotalColoredGraph};
use pathdensity::oracle::{gg_verify, GgMode, DEFAULT_PATH_CAP};
use pathdensity::sequences::choose_n;
use pathdensity::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    /// A hypothesis of an extraction step does not hold for the input.
    Hypothesis = 5,
    /// The computation contradicted the theory it implements.
    Invariant = 6,
    Overflow = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdColor {
    Red = 0,
    Blue = 1,
}

impl From<Color> for PdColor {
    fn from(c: Color) -> Self {
        match c {
            Color::Red => PdColor::Red,
            Color::Blue => PdColor::Blue,
        }
    }
}

/// A totally coloured graph.
pub struct PdGraph(TotalColoredGraph);

/// A geometric colouring prefix.
pub struct PdColoring(GeometricColoring);

/// A simple forest together with the horizon its density refers to.
pub struct PdForest(ForestCertificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> PdStatus {
    match e {
        Error::Precondition(_) => PdStatus::InvalidArgument,
        Error::Hypothesis { .. } => PdStatus::Hypothesis,
        Error::InvariantViolation(_) => PdStatus::Invariant,
        Error::Overflow(_) => PdStatus::Overflow,
        Error::Parse { .. } => PdStatus::Parse,
        Error::Stage { source, .. } => status_of(source),
        Error::Io(_) => PdStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Lib(Error::Io(e))
    }
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> PdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PdStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            PdStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            PdStatus::Panic
        }
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail::Lib(Error::Precondition(msg.into()))
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn path_arg(p: *const c_char) -> Result<String, Fail> {
    if p.is_null() {
        return Err(Fail::Null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| invalid("path is not valid UTF-8"))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    *out = value;
    Ok(())
}

/// Message of the last failed call on this thread, or null. The string stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Reads a colouring file.
///
/// # Safety
/// `path` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_graph_read(path: *const c_char, out: *mut *mut PdGraph) -> PdStatus {
    guard(|| {
        let path = path_arg(path)?;
        let g = read_coloring(BufReader::new(File::open(path)?))?;
        store(out, PdGraph(g))
    })
}

/// Writes a colouring file.
///
/// # Safety
/// `g` must come from this library and `path` must be nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn pd_graph_write(g: *const PdGraph, path: *const c_char) -> PdStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        let path = path_arg(path)?;
        let mut w = BufWriter::new(File::create(path)?);
        write_coloring(&g.0, &mut w)?;
        w.flush()?;
        Ok(())
    })
}

/// Complete graph on `n` vertices with uniform random colours.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_graph_random(n: usize, seed: u64, out: *mut *mut PdGraph) -> PdStatus {
    guard(|| store(out, PdGraph(complete_random_coloring(n, seed)?)))
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn pd_graph_n(g: *const PdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pd_graph_free(g: *mut PdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Geometric colouring with `q = num/den`, the shortest whole-block prefix
/// with at least `n_min` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_coloring_new_rational(
    num: u64,
    den: u64,
    n_min: usize,
    out: *mut *mut PdColoring,
) -> PdStatus {
    guard(|| {
        let q = GrowthRate::ratio(num, den)?;
        store(out, PdColoring(GeometricColoring::build(q, n_min)?))
    })
}

/// Geometric colouring with `q = 1 + √2`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_coloring_new_silver(n_min: usize, out: *mut *mut PdColoring) -> PdStatus {
    guard(|| {
        store(
            out,
            PdColoring(GeometricColoring::build(GrowthRate::SILVER, n_min)?),
        )
    })
}

/// # Safety
/// `c` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn pd_coloring_n(c: *const PdColoring) -> usize {
    c.as_ref().map_or(0, |c| c.0.n())
}

/// # Safety
/// `c` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn pd_coloring_num_blocks(c: *const PdColoring) -> usize {
    c.as_ref().map_or(0, |c| c.0.num_levels())
}

/// The `k`-th vertex (1-based) of the reordering.
///
/// # Safety
/// `c` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_coloring_reorder(c: *const PdColoring, k: usize, out: *mut usize) -> PdStatus {
    guard(|| {
        let c = deref(c, "coloring")?;
        if k == 0 || k > c.0.n() {
            return Err(invalid(format!("k = {k} outside 1..={}", c.0.n())));
        }
        let f = Reordering::new(&c.0)?;
        write_out(out, f.f(k), "output pointer")
    })
}

/// Largest breakpoint of the red matching's density profile, as a fraction.
///
/// # Safety
/// `c` must come from this library; `num` and `den` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pd_coloring_max_breakpoint(
    c: *const PdColoring,
    num: *mut u64,
    den: *mut u64,
) -> PdStatus {
    guard(|| {
        let c = deref(c, "coloring")?;
        let (mr, mb) = c.0.matchings()?;
        let f = Reordering::from_matchings(&c.0, &mr, &mb);
        let p = density_profile(&c.0, &mr, &f)?;
        let best = p
            .max_breakpoint()
            .ok_or_else(|| invalid("the prefix has no breakpoint"))?;
        write_out(num, *best.value.numer(), "numerator pointer")?;
        write_out(den, *best.value.denom(), "denominator pointer")
    })
}

/// The colouring as a complete graph.
///
/// # Safety
/// `c` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_coloring_to_graph(c: *const PdColoring, out: *mut *mut PdGraph) -> PdStatus {
    guard(|| {
        let c = deref(c, "coloring")?;
        store(out, PdGraph(c.0.to_total_graph()?))
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pd_coloring_free(c: *mut PdColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Forest extracted from the degree sequence at threshold `t`.
///
/// # Safety
/// `g` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_extract_forest(g: *const PdGraph, t: usize, out: *mut *mut PdForest) -> PdStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        let e = extract_forest(&g.0, t)?;
        store(out, PdForest(ForestCertificate::new(e.forest, e.horizon)?))
    })
}

/// Full pipeline with `n = kN`. `preconditions_met` is set to 1 when every
/// hypothesis holds, so that the density bound is guaranteed.
///
/// # Safety
/// `g` must come from this library; `out` and `preconditions_met` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pd_simple_forest_pipeline(
    g: *const PdGraph,
    k: usize,
    gamma: f64,
    out: *mut *mut PdForest,
    preconditions_met: *mut i32,
) -> PdStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        if preconditions_met.is_null() {
            return Err(Fail::Null("preconditions_met"));
        }
        let r = simple_forest_pipeline(&g.0, k, gamma)?;
        let met = r.preconditions_met() as i32;
        store(out, PdForest(ForestCertificate::new(r.forest, r.horizon)?))?;
        *preconditions_met = met;
        Ok(())
    })
}

/// # Safety
/// `f` must come from this library; `num` and `den` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pd_forest_density(f: *const PdForest, num: *mut u64, den: *mut u64) -> PdStatus {
    guard(|| {
        let f = deref(f, "forest")?;
        write_out(num, *f.0.density.numer(), "numerator pointer")?;
        write_out(den, *f.0.density.denom(), "denominator pointer")
    })
}

/// # Safety
/// `f` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn pd_forest_horizon(f: *const PdForest) -> usize {
    f.as_ref().map_or(0, |f| f.0.horizon)
}

/// # Safety
/// `f` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_forest_color(f: *const PdForest, out: *mut PdColor) -> PdStatus {
    guard(|| {
        let f = deref(f, "forest")?;
        write_out(out, f.0.forest.color.into(), "output pointer")
    })
}

/// Re-validates the forest and its density against `g`.
///
/// # Safety
/// `f` and `g` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn pd_forest_check(f: *const PdForest, g: *const PdGraph) -> PdStatus {
    guard(|| {
        let f = deref(f, "forest")?;
        let g = deref(g, "graph")?;
        f.0.check(&g.0)?;
        Ok(())
    })
}

/// Writes the forest certificate.
///
/// # Safety
/// `f` must come from this library and `path` must be nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn pd_forest_write(f: *const PdForest, path: *const c_char) -> PdStatus {
    guard(|| {
        let f = deref(f, "forest")?;
        let path = path_arg(path)?;
        let mut w = BufWriter::new(File::create(path)?);
        write_certificate(&f.0, &mut w)?;
        w.flush()?;
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pd_forest_free(f: *mut PdForest) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Smallest longest-monochromatic-path length over all 2-edge-colourings of
/// `K_n`, for `n ≤ 7`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_gg_min_max(n: usize, out: *mut usize) -> PdStatus {
    guard(|| {
        let r = gg_verify(n, GgMode::Exhaustive, DEFAULT_PATH_CAP)?;
        write_out(out, r.min_max, "output pointer")
    })
}

/// Exponent `m` of `N = 6 · 4^m` for slack `gamma`.
///
/// # Safety
/// `m` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_choose_n_exponent(gamma: f64, m: *mut usize) -> PdStatus {
    guard(|| {
        let c = choose_n(gamma)?;
        write_out(m, c.m, "output pointer")
    })
}
