//! C ABI over `ddk-core`.
//!
//! Groups and structures are opaque handles created by `ddk_*_new`/`ddk_group_from_*`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`DdkStatus`]; on failure the message is available from
//! [`ddk_last_error_message`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use ddk_core::automorphisms::automorphism_group;
use ddk_core::catalog::lookup;
use ddk_core::homology::h1_of_surface;
use ddk_core::invariants::fibration_data;
use ddk_core::search::{count_structures, has_prestructure, ZMode};
use ddk_core::structures::{example_structure_file, DDKStructure, StructureError, StructureType};
use ddk_core::symplectic::symplectic_structures;
use ddk_core::{coset_cap_from_env, parse_presentation, realize, FiniteGroup, GroupError, Presentation};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DdkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownLabel = 3,
    ParseError = 4,
    GroupError = 5,
    NotAStructure = 6,
    CapExceeded = 7,
    ComputationFailed = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// A realized finite group with its presentation.
pub struct DdkGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    label: String,
    group: FiniteGroup,
    presentation: Presentation,
}

/// A verified structure on a group.
pub struct DdkStructure {
    group: Arc<GroupData>,
    elements: Vec<usize>,
    stype: StructureType,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(DdkStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn fail<E: std::fmt::Display>(status: DdkStatus) -> impl Fn(E) -> Failure {
    move |e| Failure(status, e.to_string())
}

fn structure_failure(e: StructureError) -> Failure {
    let status = match &e {
        StructureError::CapExceeded { .. } => DdkStatus::CapExceeded,
        StructureError::NotAStructure(_) => DdkStatus::NotAStructure,
        StructureError::Group(_) => DdkStatus::GroupError,
        StructureError::Word(_) | StructureError::Malformed(_) => DdkStatus::ParseError,
        _ => DdkStatus::InvalidArgument,
    };
    Failure(status, e.to_string())
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn run(f: impl FnOnce() -> FfiResult<()>) -> DdkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DdkStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            DdkStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Failure(DdkStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(fail(DdkStatus::InvalidArgument))
}

unsafe fn deref<'a, T>(p: *const T) -> FfiResult<&'a T> {
    p.as_ref()
        .ok_or_else(|| Failure(DdkStatus::NullPointer, "null handle".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure(DdkStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn group_error(e: GroupError) -> Failure {
    Failure(DdkStatus::GroupError, e.to_string())
}

/// The message of the last failing call on this thread, or null.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn ddk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ddk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Realizes a catalog entry by label or alias.
///
/// # Safety
/// `label` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_from_label(label: *const c_char, out: *mut *mut DdkGroup) -> DdkStatus {
    run(|| {
        let key = read_str(label)?;
        let e = lookup(key).ok_or_else(|| Failure(DdkStatus::UnknownLabel, format!("unknown label {key}")))?;
        let group = e.realize().map_err(group_error)?;
        let data = GroupData {
            label: e.display_name().to_string(),
            group,
            presentation: e.presentation(),
        };
        write(out, Box::into_raw(Box::new(DdkGroup { inner: Arc::new(data) })))
    })
}

/// Realizes a presentation in the text format (`gens:` and `rel:` lines),
/// with the coset cap taken from `DDK_COSETS`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_from_presentation(text: *const c_char, out: *mut *mut DdkGroup) -> DdkStatus {
    run(|| {
        let text = read_str(text)?;
        let presentation = parse_presentation(text).map_err(fail(DdkStatus::ParseError))?;
        let group = realize(&presentation, coset_cap_from_env()).map_err(group_error)?;
        let data = GroupData {
            label: String::from("presentation"),
            group,
            presentation,
        };
        write(out, Box::into_raw(Box::new(DdkGroup { inner: Arc::new(data) })))
    })
}

/// Releases a group handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_free(g: *mut DdkGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_order(g: *const DdkGroup, out: *mut usize) -> DdkStatus {
    run(|| write(out, deref(g)?.inner.group.order()))
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_center_order(g: *const DdkGroup, out: *mut usize) -> DdkStatus {
    run(|| write(out, deref(g)?.inner.group.center().len()))
}

/// Whether a non-abelian group is CCT; abelian groups are rejected.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_is_cct(g: *const DdkGroup, out: *mut bool) -> DdkStatus {
    run(|| {
        let cct = deref(g)?
            .inner
            .group
            .is_cct()
            .map_err(fail(DdkStatus::InvalidArgument))?;
        write(out, cct)
    })
}

/// Exhaustive prestructure search; `full` searches every non-identity `z`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_has_prestructure(g: *const DdkGroup, full: bool, out: *mut bool) -> DdkStatus {
    run(|| {
        let mode = if full { ZMode::Full } else { ZMode::Auto };
        let found = has_prestructure(&deref(g)?.inner.group, mode).map_err(structure_failure)?;
        write(out, found)
    })
}

/// Number of structures of type (2, n), by backtracking.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_count_structures(g: *const DdkGroup, n: usize, out: *mut u64) -> DdkStatus {
    run(|| {
        let t = StructureType::new(2, n).map_err(structure_failure)?;
        let c = count_structures(&deref(g)?.inner.group, t, ZMode::Auto).map_err(structure_failure)?;
        write(out, c)
    })
}

/// Number of structures of type (2, 2) on an extra-special group of
/// order 32, by the symplectic construction.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_symplectic_count(g: *const DdkGroup, out: *mut u64) -> DdkStatus {
    run(|| {
        let set = symplectic_structures(&deref(g)?.inner.group).map_err(fail(DdkStatus::ComputationFailed))?;
        write(out, set.len() as u64)
    })
}

/// Order of the automorphism group.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_group_aut_order(g: *const DdkGroup, out: *mut usize) -> DdkStatus {
    run(|| {
        let d = &deref(g)?.inner;
        let auts = automorphism_group(&d.group, &d.presentation).map_err(fail(DdkStatus::ComputationFailed))?;
        write(out, auts.len())
    })
}

fn new_structure(g: &DdkGroup, elements: Vec<usize>, stype: StructureType) -> FfiResult<*mut DdkStructure> {
    DDKStructure::new(&g.inner.group, elements.clone(), stype).map_err(structure_failure)?;
    Ok(Box::into_raw(Box::new(DdkStructure {
        group: Arc::clone(&g.inner),
        elements,
        stype,
    })))
}

/// Verifies a `(4b + 1)`-tuple of element indices as a structure of type (b, n).
///
/// # Safety
/// `g` must be a live handle, `elements` must point to `len` values and
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_structure_new(
    g: *const DdkGroup,
    elements: *const usize,
    len: usize,
    b: usize,
    n: usize,
    out: *mut *mut DdkStructure,
) -> DdkStatus {
    run(|| {
        let g = deref(g)?;
        if elements.is_null() {
            return Err(Failure(DdkStatus::NullPointer, "null element array".into()));
        }
        let elems = std::slice::from_raw_parts(elements, len).to_vec();
        let t = StructureType::new(b, n).map_err(structure_failure)?;
        write(out, new_structure(g, elems, t)?)
    })
}

/// The explicit example structure, resolved from words in `r1 t1 r2 t2 z`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_structure_example(g: *const DdkGroup, out: *mut *mut DdkStructure) -> DdkStatus {
    run(|| {
        let g = deref(g)?;
        let file = example_structure_file(&g.inner.label);
        let elems = file.resolve(&g.inner.group).map_err(structure_failure)?;
        write(out, new_structure(g, elems, StructureType { b: 2, n: 2 })?)
    })
}

/// Releases a structure handle. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ddk_structure_free(s: *mut DdkStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

fn with_structure<T>(s: &DdkStructure, f: impl FnOnce(&DDKStructure<'_>) -> FfiResult<T>) -> FfiResult<T> {
    let st = DDKStructure::new(&s.group.group, s.elements.clone(), s.stype).map_err(structure_failure)?;
    f(&st)
}

/// Signature of the associated surface.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_structure_signature(s: *const DdkStructure, out: *mut i64) -> DdkStatus {
    run(|| {
        let sigma = with_structure(deref(s)?, |st| {
            fibration_data(st)
                .map(|r| r.sigma)
                .map_err(fail(DdkStatus::ComputationFailed))
        })?;
        write(out, sigma)
    })
}

/// First homology of the surface: free rank and torsion coefficients.
/// `torsion` receives up to `capacity` values; `torsion_len` receives the
/// full count, and `DDK_STATUS_BUFFER_TOO_SMALL` is returned if it exceeds
/// `capacity`.
///
/// # Safety
/// `s` must be a live handle; `free_rank` and `torsion_len` must be valid
/// pointers; `torsion` must hold `capacity` values or be null when
/// `capacity` is zero.
#[no_mangle]
pub unsafe extern "C" fn ddk_structure_homology(
    s: *const DdkStructure,
    free_rank: *mut usize,
    torsion: *mut u64,
    capacity: usize,
    torsion_len: *mut usize,
) -> DdkStatus {
    run(|| {
        let h = with_structure(deref(s)?, |st| {
            h1_of_surface(st).map_err(fail(DdkStatus::ComputationFailed))
        })?;
        write(free_rank, h.invariants.free_rank)?;
        write(torsion_len, h.invariants.torsion.len())?;
        if h.invariants.torsion.len() > capacity {
            return Err(Failure(
                DdkStatus::BufferTooSmall,
                format!("{} torsion coefficients, capacity {capacity}", h.invariants.torsion.len()),
            ));
        }
        if !h.invariants.torsion.is_empty() {
            if torsion.is_null() {
                return Err(Failure(DdkStatus::NullPointer, "null torsion buffer".into()));
            }
            ptr::copy_nonoverlapping(h.invariants.torsion.as_ptr(), torsion, h.invariants.torsion.len());
        }
        Ok(())
    })
}

/// The invariant report of a structure as JSON. Free with [`ddk_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ddk_structure_report_json(s: *const DdkStructure, out: *mut *mut c_char) -> DdkStatus {
    run(|| {
        let json = with_structure(deref(s)?, |st| {
            let mut r = fibration_data(st).map_err(fail(DdkStatus::ComputationFailed))?;
            if let Ok(h) = h1_of_surface(st) {
                r = r
                    .with_first_betti(h.invariants.free_rank as u64)
                    .map_err(fail(DdkStatus::ComputationFailed))?;
            }
            serde_json::to_string(&r).map_err(fail(DdkStatus::ComputationFailed))
        })?;
        let c = CString::new(json).map_err(fail(DdkStatus::ComputationFailed))?;
        write(out, c.into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ddk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
