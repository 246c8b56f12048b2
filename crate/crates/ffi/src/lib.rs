//! C ABI over `steiner-kit`.
//!
//! Trees and graphs cross the boundary as opaque heap handles that the caller
//! releases with the matching `*_free`. Every fallible call returns an
//! [`SkStatus`] and writes results through out-pointers only on success; the
//! message for the most recent failure on the calling thread is available from
//! [`sk_last_error`]. Panics never unwind into the caller.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use steiner_kit::closed_forms::{bound_value, BoundName, FamilySpec};
use steiner_kit::corpus::{graph6_decode, tree_from_graph6, tree_to_graph6};
use steiner_kit::graph::{dw_steiner, Graph};
use steiner_kit::params::{a_set, param_record, sd_k, sr_k};
use steiner_kit::{Error, Tree, VertexSet};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    MalformedGraph6 = 3,
    NotATree = 4,
    InvalidGraph = 5,
    BadVertex = 6,
    EmptySet = 7,
    BadK = 8,
    Precondition = 9,
    TooLarge = 10,
    BadSpec = 11,
    UnsupportedKind = 12,
    BufferTooSmall = 13,
    Panic = 14,
    Internal = 15,
}

impl From<&Error> for SkStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotATree(_) => SkStatus::NotATree,
            Error::InvalidGraph(_) => SkStatus::InvalidGraph,
            Error::BadVertex { .. } => SkStatus::BadVertex,
            Error::EmptySet => SkStatus::EmptySet,
            Error::BadK(_) => SkStatus::BadK,
            Error::Precondition(_) => SkStatus::Precondition,
            Error::TooLarge(_) => SkStatus::TooLarge,
            Error::MalformedGraph6 { .. } => SkStatus::MalformedGraph6,
            Error::BadSpec(_) => SkStatus::BadSpec,
            Error::UnsupportedKind(_) => SkStatus::UnsupportedKind,
            Error::UnknownSuite(_) | Error::Io(_) | Error::Serialization(_) => SkStatus::Internal,
        }
    }
}

/// Opaque tree handle.
pub struct SkTree(Tree);

/// Opaque handle to a simple connected graph.
pub struct SkGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(SkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(SkStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SkStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, mapping errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SkStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SkStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(SkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn tree_ref<'a>(t: *const SkTree) -> Result<&'a Tree, Failure> {
    t.as_ref().map(|t| &t.0).ok_or_else(|| null("tree"))
}

unsafe fn graph_ref<'a>(g: *const SkGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn vertex_set(set: *const usize, len: usize) -> Result<VertexSet, Failure> {
    if len == 0 {
        return Ok(VertexSet::default());
    }
    if set.is_null() {
        return Err(null("vertex set"));
    }
    Ok(VertexSet::new(std::slice::from_raw_parts(set, len).iter().copied()))
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses one graph6 line that must describe a tree.
///
/// # Safety
/// `line` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_from_graph6(line: *const c_char, out: *mut *mut SkTree) -> SkStatus {
    guard(|| {
        let tree = tree_from_graph6(text(line, "graph6 line")?)?;
        write(out, Box::into_raw(Box::new(SkTree(tree))))
    })
}

/// Generates a tree family member from a spec such as `starlike:m=3,l=2`.
///
/// # Safety
/// `spec` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_from_family(spec: *const c_char, out: *mut *mut SkTree) -> SkStatus {
    guard(|| {
        let spec: FamilySpec = text(spec, "family spec")?.parse()?;
        write(out, Box::into_raw(Box::new(SkTree(spec.generate_tree()?))))
    })
}

/// Releases a tree; NULL is ignored.
///
/// # Safety
/// `tree` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_free(tree: *mut SkTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_order(tree: *const SkTree, out: *mut usize) -> SkStatus {
    guard(|| write(out, tree_ref(tree)?.order()))
}

/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_diameter(tree: *const SkTree, out: *mut usize) -> SkStatus {
    guard(|| write(out, tree_ref(tree)?.center_profile().diameter))
}

/// Size of the minimal subtree spanning `set[0..len]`.
///
/// # Safety
/// `tree` must be a live handle; `set` must hold `len` readable ids; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_steiner_distance(
    tree: *const SkTree,
    set: *const usize,
    len: usize,
    out: *mut usize,
) -> SkStatus {
    guard(|| {
        let value = tree_ref(tree)?.steiner_distance(&vertex_set(set, len)?)?.value;
        write(out, value)
    })
}

/// Steiner k-diameter.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_sd_k(tree: *const SkTree, k: usize, out: *mut usize) -> SkStatus {
    guard(|| write(out, sd_k(tree_ref(tree)?, k)?.0))
}

/// Steiner k-radius.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_sr_k(tree: *const SkTree, k: usize, out: *mut usize) -> SkStatus {
    guard(|| write(out, sr_k(tree_ref(tree)?, k)?.0))
}

/// Steiner (k,k')-radius.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_sr_kk(
    tree: *const SkTree,
    k: usize,
    kprime: usize,
    out: *mut usize,
) -> SkStatus {
    guard(|| write(out, param_record(tree_ref(tree)?, k, kprime)?.sr_kk))
}

/// `|A(T,P)|` for the tree's canonical diametrical path.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_a_set_size(tree: *const SkTree, out: *mut usize) -> SkStatus {
    guard(|| {
        let tree = tree_ref(tree)?;
        write(out, a_set(tree, &tree.center_profile())?.len())
    })
}

/// Writes the tree's graph6 line (NUL-terminated) into `buf`. `needed`
/// receives the required capacity including the NUL, also on
/// `SK_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `tree` must be a live handle; `buf` must have `cap` writable bytes (may be
/// NULL when `cap` is 0); `needed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_tree_to_graph6(
    tree: *const SkTree,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SkStatus {
    guard(|| {
        let line = tree_to_graph6(tree_ref(tree)?);
        write(needed, line.len() + 1)?;
        if cap < line.len() + 1 || buf.is_null() {
            return Err(Failure(SkStatus::BufferTooSmall, format!("need {} bytes", line.len() + 1)));
        }
        ptr::copy_nonoverlapping(line.as_ptr(), buf.cast::<u8>(), line.len());
        *buf.add(line.len()) = 0;
        Ok(())
    })
}

/// Parses one graph6 line describing a simple connected graph.
///
/// # Safety
/// `line` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_graph_from_graph6(line: *const c_char, out: *mut *mut SkGraph) -> SkStatus {
    guard(|| {
        let graph = graph6_decode(text(line, "graph6 line")?)?;
        write(out, Box::into_raw(Box::new(SkGraph(graph))))
    })
}

/// Releases a graph; NULL is ignored.
///
/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sk_graph_free(graph: *mut SkGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_graph_order(graph: *const SkGraph, out: *mut usize) -> SkStatus {
    guard(|| write(out, graph_ref(graph)?.order()))
}

/// Exact Steiner distance of `set[0..len]` in a general graph.
///
/// # Safety
/// `graph` must be a live handle; `set` must hold `len` readable ids; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_graph_steiner_distance(
    graph: *const SkGraph,
    set: *const usize,
    len: usize,
    out: *mut usize,
) -> SkStatus {
    guard(|| write(out, dw_steiner(graph_ref(graph)?, &vertex_set(set, len)?)?))
}

/// Exact right-hand side of a named bound, as a reduced fraction.
///
/// # Safety
/// `name` must be NUL-terminated; `numer` and `denom` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_bound_value(
    name: *const c_char,
    k: usize,
    kprime: usize,
    sr: i64,
    numer: *mut i64,
    denom: *mut i64,
) -> SkStatus {
    guard(|| {
        let name: BoundName = text(name, "bound name")?.parse()?;
        let value = bound_value(name, k, kprime, sr)?;
        if denom.is_null() {
            return Err(null("denominator output"));
        }
        write(numer, value.numer())?;
        write(denom, value.denom())
    })
}
