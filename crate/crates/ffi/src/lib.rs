//! C ABI over `dynamo-core`.
//!
//! Graphs live behind an opaque `DmGraph` handle. Every fallible call returns
//! a `DmStatus`; on failure a message is kept per thread and can be read with
//! `dm_last_error`. Strings handed out by the library are freed with
//! `dm_string_free`. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dynamo_core::bounds::{self, GraphParams};
use dynamo_core::certify::{Certifier, Property, Verdict};
use dynamo_core::corpus;
use dynamo_core::dynamics;
use dynamo_core::search::{self, SearchOptions};
use dynamo_core::{Alpha, Error, Graph, ThresholdModel};

/// Opaque graph handle.
pub struct DmGraph(Graph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DmStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Structure = 4,
    Model = 5,
    NodeOutOfRange = 6,
    Precondition = 7,
    CapExceeded = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DmModelKind {
    R = 0,
    TwoWayR = 1,
    Alpha = 2,
    TwoWayAlpha = 3,
}

/// A threshold model. `r` is read by the r kinds, `alpha_num / alpha_den` by
/// the alpha kinds.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct DmModel {
    pub kind: DmModelKind,
    pub r: usize,
    pub alpha_num: u64,
    pub alpha_den: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DmProperty {
    Dynamo = 0,
    Monotone = 1,
    Stable = 2,
    Immortal = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DmVerdict {
    Fails = 0,
    Holds = 1,
    /// The run overran the round budget.
    Indeterminate = 2,
}

/// Tri-state flag for optional graph facts.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DmFlag {
    Unknown = -1,
    No = 0,
    Yes = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(DmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => DmStatus::Parse,
            Error::Structure(_) => DmStatus::Structure,
            Error::Model(_) => DmStatus::Model,
            Error::NodeOutOfRange { .. } => DmStatus::NodeOutOfRange,
            Error::CapExceeded { .. } => DmStatus::CapExceeded,
            Error::Precondition(_) | Error::RoundOutOfRange { .. } => DmStatus::Precondition,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(DmStatus::NullArgument, format!("{what} is null"))
}

/// Runs `f`, recording failures and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DmStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DmStatus::Internal
        }
    }
}

unsafe fn graph<'a>(g: *const DmGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(DmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    match (p.is_null(), len) {
        (_, 0) => Ok(&[]),
        (true, _) => Err(null(what)),
        (false, _) => Ok(std::slice::from_raw_parts(p, len)),
    }
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut DmGraph, g: Graph) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(DmGraph(g))), "out")
}

fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(DmStatus::Internal, "nul byte in output".into()))?;
    unsafe { put(out, c.into_raw(), "out") }
}

impl DmModel {
    fn to_model(self) -> Result<ThresholdModel, Fail> {
        let alpha = || Alpha::new(self.alpha_num, self.alpha_den);
        let m = match self.kind {
            DmModelKind::R => ThresholdModel::r(self.r),
            DmModelKind::TwoWayR => ThresholdModel::two_way_r(self.r),
            DmModelKind::Alpha => ThresholdModel::alpha(alpha()?),
            DmModelKind::TwoWayAlpha => ThresholdModel::two_way_alpha(alpha()?),
        };
        if matches!(m, ThresholdModel::R { r: 0 } | ThresholdModel::TwoWayR { r: 0 }) {
            return Err(Error::Model("r must be at least 1".into()).into());
        }
        Ok(m)
    }
}

impl From<DmProperty> for Property {
    fn from(p: DmProperty) -> Self {
        match p {
            DmProperty::Dynamo => Property::Dynamo,
            DmProperty::Monotone => Property::MonotoneDynamo,
            DmProperty::Stable => Property::Stable,
            DmProperty::Immortal => Property::Immortal,
        }
    }
}

impl DmFlag {
    fn get(self) -> Option<bool> {
        match self {
            DmFlag::Unknown => None,
            DmFlag::No => Some(false),
            DmFlag::Yes => Some(true),
        }
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
///
/// # Safety
/// `edge_list` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dm_graph_parse(edge_list: *const c_char, out: *mut *mut DmGraph) -> DmStatus {
    guard(|| {
        let g = Graph::parse(text(edge_list, "edge_list")?)?;
        put_graph(out, g)
    })
}

/// Builds a graph from `m` edges stored as `2m` node ids.
///
/// # Safety
/// `edges` must point to `2 * m` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dm_graph_new(n: usize, edges: *const usize, m: usize, out: *mut *mut DmGraph) -> DmStatus {
    guard(|| {
        let flat = slice(edges, 2 * m, "edges")?;
        let g = Graph::new(n, flat.chunks_exact(2).map(|e| (e[0], e[1])))?;
        put_graph(out, g)
    })
}

/// Builds a member of a named family, e.g. `"cycle"` with params `{8}`.
///
/// # Safety
/// `family` must be a nul-terminated string, `params` must point to `len`
/// values, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dm_graph_generate(
    family: *const c_char,
    params: *const usize,
    len: usize,
    out: *mut *mut DmGraph,
) -> DmStatus {
    guard(|| {
        let g = corpus::build(text(family, "family")?, slice(params, len, "params")?)?;
        put_graph(out, g)
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dm_graph_free(g: *mut DmGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Node count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dm_graph_n(g: *const DmGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dm_graph_m(g: *const DmGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// The graph in edge-list format, to be freed with `dm_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dm_graph_to_edge_list(g: *const DmGraph, out: *mut *mut c_char) -> DmStatus {
    guard(|| put_string(out, graph(g)?.to_edge_list()))
}

/// One synchronous round. `black` and `next` hold one byte per node,
/// nonzero meaning black; they may alias.
///
/// # Safety
/// `black` and `next` must each hold `dm_graph_n(g)` bytes.
#[no_mangle]
pub unsafe extern "C" fn dm_step(g: *const DmGraph, model: DmModel, black: *const u8, next: *mut u8) -> DmStatus {
    guard(|| {
        let g = graph(g)?;
        let n = g.n();
        let bytes = slice(black, n, "black")?;
        let c = g.node_set((0..n).filter(|&v| bytes[v] != 0))?;
        let stepped = dynamics::step(g, model.to_model()?, &c)?;
        if next.is_null() {
            return Err(null("next"));
        }
        for v in 0..n {
            next.add(v).write(stepped.contains(v) as u8);
        }
        Ok(())
    })
}

/// Decides `property` for the set of `len` node ids. A `limit` of 0 uses the
/// default round budget.
///
/// # Safety
/// `ids` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dm_certify(
    g: *const DmGraph,
    model: DmModel,
    property: DmProperty,
    ids: *const usize,
    len: usize,
    limit: usize,
    out: *mut DmVerdict,
) -> DmStatus {
    guard(|| {
        let g = graph(g)?;
        let set = g.node_set(slice(ids, len, "ids")?.iter().copied())?;
        let mut cert = Certifier::new(g, model.to_model()?)?;
        if limit > 0 {
            cert = cert.with_limit(limit);
        }
        let verdict = match cert.certificate(property.into(), &set)?.verdict {
            Verdict::Holds => DmVerdict::Holds,
            Verdict::Fails => DmVerdict::Fails,
            Verdict::Indeterminate => DmVerdict::Indeterminate,
        };
        put(out, verdict, "out")
    })
}

/// Exact minimum set. Writes its size to `min_size` (0 when none exists) and
/// the lexicographically least witness to `witness`, which must hold at least
/// `dm_graph_n(g)` ids. A `cap` of 0 uses the default node cap.
///
/// # Safety
/// `witness` must hold `capacity` values; `min_size` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dm_search_min(
    g: *const DmGraph,
    model: DmModel,
    property: DmProperty,
    cap: usize,
    min_size: *mut usize,
    witness: *mut usize,
    capacity: usize,
) -> DmStatus {
    guard(|| {
        let g = graph(g)?;
        let opts = SearchOptions {
            cap: (cap > 0).then_some(cap),
            ..Default::default()
        };
        let res = search::min_set(g, model.to_model()?, property.into(), &opts)?;
        let ids = res.witness.map(|w| w.to_vec()).unwrap_or_default();
        if capacity < ids.len() {
            return Err(Fail(
                DmStatus::BufferTooSmall,
                format!("witness needs {} slots, got {capacity}", ids.len()),
            ));
        }
        if !ids.is_empty() && witness.is_null() {
            return Err(null("witness"));
        }
        for (i, &v) in ids.iter().enumerate() {
            witness.add(i).write(v);
        }
        put(min_size, res.min_size.unwrap_or(0), "min_size")
    })
}

/// All closed-form bounds for `n` nodes as a JSON document, to be freed with
/// `dm_string_free`. `delta` is the minimum degree; pass `SIZE_MAX` when
/// unknown.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dm_bounds_json(
    model: DmModel,
    n: usize,
    delta: usize,
    bipartite: DmFlag,
    tree: DmFlag,
    out: *mut *mut c_char,
) -> DmStatus {
    guard(|| {
        let mut p = GraphParams::new(n);
        p.delta = (delta != usize::MAX).then_some(delta);
        p.bipartite = bipartite.get();
        p.tree = tree.get();
        let report = bounds::report(model.to_model()?, &p)?;
        put_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Bounds for a concrete graph, as in `dm_bounds_json`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dm_graph_bounds_json(g: *const DmGraph, model: DmModel, out: *mut *mut c_char) -> DmStatus {
    guard(|| {
        let report = bounds::report(model.to_model()?, &GraphParams::of(graph(g)?))?;
        put_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}
