//! C ABI over the domgame solvers.
//!
//! Graphs and parsed instances are opaque handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`DgStatus`]; on failure [`dg_last_error`] describes the problem for the
//! calling thread. Strings handed out by the library are released with
//! [`dg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use domgame::closed_form::{cycle_outcome, path_outcome};
use domgame::engine::EngineError;
use domgame::forest::{explain, ForestError};
use domgame::graph::Graph;
use domgame::instance::{parse_instance, InstanceFile};
use domgame::position::{GameValue, Outcome, PointedPosition};
use domgame::solve::{run_oracle, run_solve, SolveError, SolveOptions};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Instance text or edge list is malformed.
    Parse = 2,
    /// The forest solver was given a graph with a cycle.
    NotForest = 3,
    /// The position exceeds the search limit.
    Guard = 4,
    /// The position is not a legal game state.
    IllegalState = 5,
    InvalidArgument = 6,
    /// A panic was caught at the boundary.
    Panic = 7,
}

/// Two-valued outcome: whether Alice can force domination first.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgOutcome {
    Draw = 0,
    AliceWin = 1,
}

/// Exact search value from Alice's side.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgValue {
    BobWin = -1,
    Draw = 0,
    AliceWin = 1,
}

/// Opaque graph handle.
pub struct DgGraph(Graph);

/// Opaque parsed instance: graph, optional claims and side to move.
pub struct DgInstance(InstanceFile);

impl From<Outcome> for DgOutcome {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::A => DgOutcome::AliceWin,
            Outcome::D => DgOutcome::Draw,
        }
    }
}

impl From<GameValue> for DgValue {
    fn from(v: GameValue) -> Self {
        match v {
            GameValue::BobWin => DgValue::BobWin,
            GameValue::Draw => DgValue::Draw,
            GameValue::AliceWin => DgValue::AliceWin,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(DgStatus, String);

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let status = if e.is_resource_limit() {
            DgStatus::Guard
        } else {
            match &e {
                SolveError::Forest(ForestError::NotAForest) => DgStatus::NotForest,
                SolveError::Engine(EngineError::TooManyVertices(_)) => DgStatus::Guard,
                SolveError::Position(_) | SolveError::Engine(_) => DgStatus::IllegalState,
                _ => DgStatus::InvalidArgument,
            }
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guarded(body: impl FnOnce() -> Result<(), Failure>) -> DgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            DgStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {message}"));
            DgStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(DgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn options(max_unclaimed: usize) -> SolveOptions {
    SolveOptions {
        max_unclaimed,
        ..Default::default()
    }
}

/// Message for the last failed call on this thread, or null after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (it may be null
/// when `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_from_edges(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut DgGraph,
) -> DgStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs = flat.chunks_exact(2).map(|e| (e[0] as usize, e[1] as usize));
        let g = Graph::from_edges(n, pairs).map_err(|e| Failure(DgStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(DgGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle from [`dg_graph_from_edges`] or
/// [`dg_instance_graph`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_free(graph: *mut DgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_vertex_count(graph: *const DgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Parses instance text (`p n m`, `e u v`, optional `a`, `b` and `t` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dg_instance_parse(
    text: *const c_char,
    out: *mut *mut DgInstance,
) -> DgStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(DgStatus::Parse, format!("text is not UTF-8: {e}")))?;
        let inst = parse_instance(text).map_err(|e| Failure(DgStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(DgInstance(inst)));
        Ok(())
    })
}

/// # Safety
/// `instance` must be null or a live handle from [`dg_instance_parse`].
#[no_mangle]
pub unsafe extern "C" fn dg_instance_free(instance: *mut DgInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Copies the instance's graph into a new handle.
///
/// # Safety
/// `instance` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dg_instance_graph(
    instance: *const DgInstance,
    out: *mut *mut DgGraph,
) -> DgStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let inst = instance.as_ref().ok_or_else(|| null("instance"))?;
        *out = Box::into_raw(Box::new(DgGraph(inst.0.graph.clone())));
        Ok(())
    })
}

/// Outcome of the fresh game on a forest, Alice first.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dg_forest_outcome(graph: *const DgGraph, out: *mut DgOutcome) -> DgStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let g = graph.as_ref().ok_or_else(|| null("graph"))?;
        let trace = explain(&g.0).map_err(|e| Failure::from(SolveError::Forest(e)))?;
        *out = trace.outcome.into();
        Ok(())
    })
}

/// Decision trace of the forest procedure as a JSON document, released with
/// [`dg_string_free`].
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dg_forest_explain_json(
    graph: *const DgGraph,
    out: *mut *mut c_char,
) -> DgStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let g = graph.as_ref().ok_or_else(|| null("graph"))?;
        let trace = explain(&g.0).map_err(|e| Failure::from(SolveError::Forest(e)))?;
        let json = serde_json::to_string(&trace).expect("traces serialize");
        *out = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// Outcome on the path with `n >= 1` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dg_path_outcome(n: usize, out: *mut DgOutcome) -> DgStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let answer =
            path_outcome(n).map_err(|e| Failure(DgStatus::InvalidArgument, e.to_string()))?;
        *out = answer.outcome.into();
        Ok(())
    })
}

/// Outcome on the cycle with `n >= 3` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dg_cycle_outcome(n: usize, out: *mut DgOutcome) -> DgStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let answer =
            cycle_outcome(n).map_err(|e| Failure(DgStatus::InvalidArgument, e.to_string()))?;
        *out = answer.outcome.into();
        Ok(())
    })
}

/// Outcome of an instance by the cheapest exact method: closed forms and the
/// forest procedure for fresh positions with Alice first, search otherwise.
///
/// # Safety
/// `instance` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dg_instance_solve(
    instance: *const DgInstance,
    max_unclaimed: usize,
    out: *mut DgOutcome,
) -> DgStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let inst = instance.as_ref().ok_or_else(|| null("instance"))?;
        *out = run_solve(&inst.0, &options(max_unclaimed))?.outcome.into();
        Ok(())
    })
}

/// Exact value of the instance's position by exhaustive search. Fails with
/// [`DgStatus::Guard`] when more than `max_unclaimed` vertices are free.
///
/// # Safety
/// `instance` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dg_instance_oracle(
    instance: *const DgInstance,
    max_unclaimed: usize,
    out: *mut DgValue,
) -> DgStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let inst = instance.as_ref().ok_or_else(|| null("instance"))?;
        let pp: PointedPosition = inst
            .0
            .pointed()
            .map_err(|e| Failure::from(SolveError::Position(e)))?;
        *out = run_oracle(&pp, &options(max_unclaimed))?.value.into();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
