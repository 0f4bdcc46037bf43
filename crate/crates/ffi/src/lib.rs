//! C ABI over the graph motif model.
//!
//! Graphs cross the boundary as opaque `GmmGraph` handles. Every fallible
//! call returns a `GmmStatus`. On failure `gmm_last_error_message` returns a
//! description that stays valid until the next failing call on the same
//! thread. Strings handed out by this library must be released with
//! `gmm_string_free` and graphs with `gmm_graph_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gmm::generators::GraphSpec;
use gmm::graph::{
    characteristic_path_length, mean_clustering, parse_edge_list, serialize_edge_list,
};
use gmm::{census, enumerate_motifs, run, GmmConfig, GmmError, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    EmptyGraph = 4,
    Disconnected = 5,
    Io = 6,
    Config = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque graph handle.
pub struct GmmGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let mut bytes = message.into();
    bytes.retain(|&b| b != 0);
    let text = CString::new(bytes).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(err: &GmmError) -> GmmStatus {
    match err {
        GmmError::EmptyGraph | GmmError::NoObservableStructure => GmmStatus::EmptyGraph,
        GmmError::Disconnected { .. } => GmmStatus::Disconnected,
        GmmError::Parse { .. } | GmmError::Json(_) | GmmError::Csv(_) => GmmStatus::Parse,
        GmmError::Io(_) => GmmStatus::Io,
        GmmError::Config(_) | GmmError::TraceMismatch(_) => GmmStatus::Config,
        _ => GmmStatus::InvalidArgument,
    }
}

fn fail(status: GmmStatus, message: impl Into<Vec<u8>>) -> GmmStatus {
    set_error(message);
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (GmmStatus, String)>) -> GmmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GmmStatus::Ok,
        Ok(Err((status, message))) => fail(status, message),
        Err(_) => fail(GmmStatus::Panic, "internal panic"),
    }
}

fn lift(err: GmmError) -> (GmmStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (GmmStatus, String) {
    (GmmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const GmmGraph) -> Result<&'a Graph, (GmmStatus, String)> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, (GmmStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (GmmStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn boxed(g: Graph) -> *mut GmmGraph {
    Box::into_raw(Box::new(GmmGraph { inner: g }))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("library strings contain no nul bytes")
        .into_raw()
}

/// Message for the most recent failure on this thread, or null. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn gmm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gmm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gmm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// New empty graph. Never null.
#[no_mangle]
pub extern "C" fn gmm_graph_new() -> *mut GmmGraph {
    boxed(Graph::new())
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_free(g: *mut GmmGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Copies a graph into a new handle.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_clone(g: *const GmmGraph, out: *mut *mut GmmGraph) -> GmmStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = boxed(g.clone());
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_add_node(g: *mut GmmGraph, v: u32) -> GmmStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("graph"))?;
        g.inner.add_node(v);
        Ok(())
    })
}

/// Adds an undirected edge. An existing edge is left as is and `added`, when
/// non-null, receives 0.
///
/// # Safety
/// `g` must be a live handle; `added` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_add_edge(
    g: *mut GmmGraph,
    u: u32,
    v: u32,
    added: *mut bool,
) -> GmmStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("graph"))?;
        let fresh = g.inner.add_edge(u, v).map_err(lift)?;
        if let Some(a) = added.as_mut() {
            *a = fresh;
        }
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_has_edge(g: *const GmmGraph, u: u32, v: u32) -> bool {
    g.as_ref().is_some_and(|h| h.inner.has_edge(u, v))
}

/// Node count, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_node_count(g: *const GmmGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.node_count())
}

/// Edge count, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_edge_count(g: *const GmmGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.edge_count())
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_degree(g: *const GmmGraph, v: u32) -> usize {
    g.as_ref().map_or(0, |h| h.inner.degree(v))
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_is_connected(g: *const GmmGraph) -> bool {
    g.as_ref().is_some_and(|h| h.inner.is_connected())
}

/// Parses edge-list text ("u v" per line, `#` comments, lone IDs for
/// isolated nodes).
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_parse(
    text: *const c_char,
    out: *mut *mut GmmGraph,
) -> GmmStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = boxed(parse_edge_list(text).map_err(lift)?);
        Ok(())
    })
}

/// Edge-list text of `g`. Free the result with `gmm_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_serialize(
    g: *const GmmGraph,
    out: *mut *mut c_char,
) -> GmmStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = c_string(serialize_edge_list(g));
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_mean_clustering(g: *const GmmGraph, out: *mut f64) -> GmmStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = mean_clustering(g).map_err(lift)?;
        Ok(())
    })
}

/// Mean shortest-path length over all node pairs. Fails on disconnected
/// graphs.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_graph_path_length(g: *const GmmGraph, out: *mut f64) -> GmmStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = characteristic_path_length(g).map_err(lift)?;
        Ok(())
    })
}

/// Builds a graph from a JSON spec such as `{"kind":"er","n":50,"p":0.5}`.
///
/// # Safety
/// `spec_json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_generate(
    spec_json: *const c_char,
    seed: u64,
    out: *mut *mut GmmGraph,
) -> GmmStatus {
    guard(|| {
        let spec: GraphSpec = serde_json::from_str(str_arg(spec_json, "spec")?)
            .map_err(|e| lift(GmmError::Json(e)))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let g = spec
            .build(&mut ChaCha8Rng::seed_from_u64(seed))
            .map_err(lift)?;
        *out = boxed(g);
        Ok(())
    })
}

/// Number of motifs in the catalog for `tau`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_motif_count(tau: usize, out: *mut usize) -> GmmStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = enumerate_motifs(tau).map_err(lift)?.len();
        Ok(())
    })
}

/// Writes induced occurrence counts, in catalog order, into `counts`.
///
/// `needed` always receives the catalog length. When `capacity` is smaller
/// nothing is written and `BufferTooSmall` is returned.
///
/// # Safety
/// `g` must be a live handle; `counts` must hold `capacity` elements;
/// `needed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_census(
    g: *const GmmGraph,
    tau: usize,
    counts: *mut u64,
    capacity: usize,
    needed: *mut usize,
) -> GmmStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let needed = needed.as_mut().ok_or_else(|| null("needed"))?;
        let set = enumerate_motifs(tau).map_err(lift)?;
        *needed = set.len();
        if capacity < set.len() {
            return Err((
                GmmStatus::BufferTooSmall,
                format!("census needs {} slots, got {capacity}", set.len()),
            ));
        }
        if counts.is_null() {
            return Err(null("counts"));
        }
        let c = census(&set, g);
        let dst = std::slice::from_raw_parts_mut(counts, set.len());
        for (d, &n) in dst.iter_mut().zip(&c.counts) {
            *d = n;
        }
        Ok(())
    })
}

/// Runs a simulation from a JSON config. `trace_json` may be null; otherwise
/// it receives the trace, to be freed with `gmm_string_free`.
///
/// # Safety
/// `config_json` must be a nul-terminated string; `out` must be writable;
/// `trace_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gmm_simulate(
    config_json: *const c_char,
    out: *mut *mut GmmGraph,
    trace_json: *mut *mut c_char,
) -> GmmStatus {
    guard(|| {
        let config = GmmConfig::from_json(str_arg(config_json, "config")?).map_err(lift)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let sim = run(&config).map_err(lift)?;
        if let Some(t) = trace_json.as_mut() {
            *t = c_string(sim.trace.to_json().map_err(lift)?);
        }
        *out = boxed(sim.graph);
        Ok(())
    })
}
