//! C ABI over the sfc-loops curve mappings and kernels.
//!
//! Conventions: every constructor returns a status code and writes an
//! opaque handle through an out-pointer; handles are freed with their
//! `_free` function (null is a no-op); buffers are caller-allocated and
//! sized by the matching `_len`/count accessor. All entry points catch
//! panics and report `SFC_STATUS_PANIC` instead of unwinding across the
//! boundary.

use std::panic::{catch_unwind, AssertUnwindSafe};

use sfc_loops::curve::{CurveFamily, CurveSpec, GridPoint};
use sfc_loops::error::Error;
use sfc_loops::kernels::{
    epsilon_join, kmeans, matmul, JoinParams, JoinResult, KMeansModel, KMeansParams, Matrix,
    MatmulParams, PointSet,
};

/// Result of every FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SfcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    ContractViolation = 4,
    IoError = 5,
    VerificationFailed = 6,
    Panic = 7,
}

/// Curve family selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SfcCurveFamily {
    Hilbert = 0,
    ZOrder = 1,
    Peano = 2,
}

impl From<SfcCurveFamily> for CurveFamily {
    fn from(f: SfcCurveFamily) -> CurveFamily {
        match f {
            SfcCurveFamily::Hilbert => CurveFamily::Hilbert,
            SfcCurveFamily::ZOrder => CurveFamily::ZOrder,
            SfcCurveFamily::Peano => CurveFamily::Peano,
        }
    }
}

fn status_of(e: &Error) -> SfcStatus {
    match e {
        Error::Spec(_) => SfcStatus::InvalidArgument,
        Error::IndexRange { .. } | Error::CoordRange { .. } => SfcStatus::OutOfRange,
        Error::Contract(_) | Error::DimMismatch { .. } | Error::Visitor { .. } => {
            SfcStatus::ContractViolation
        }
        Error::Parse { .. } => SfcStatus::InvalidArgument,
        Error::VerifyFailed(_) => SfcStatus::VerificationFailed,
        Error::Io { .. } => SfcStatus::IoError,
    }
}

fn guarded(f: impl FnOnce() -> SfcStatus) -> SfcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => SfcStatus::Panic,
    }
}

/// Opaque curve specification.
pub struct SfcCurve(CurveSpec);

/// Opaque point set (row-major copies of the caller's data).
pub struct SfcPoints(PointSet);

/// Opaque join result.
pub struct SfcJoin(JoinResult);

/// Opaque k-means model.
pub struct SfcKmeans(KMeansModel);

/// Create a curve spec. `order` is the recursion depth (side 2^order, or
/// 3^order for Peano).
///
/// # Safety
/// `out` must be a valid pointer to an `SfcCurve*` slot.
#[no_mangle]
pub unsafe extern "C" fn sfc_curve_new(
    family: SfcCurveFamily,
    dimension: usize,
    order: u32,
    out: *mut *mut SfcCurve,
) -> SfcStatus {
    guarded(|| {
        if out.is_null() {
            return SfcStatus::NullPointer;
        }
        match CurveSpec::new(family.into(), dimension, order) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(SfcCurve(spec)));
                SfcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Free a curve handle; null is a no-op.
///
/// # Safety
/// `curve` must be null or a handle from [`sfc_curve_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sfc_curve_free(curve: *mut SfcCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Total number of grid cells (side^dimension).
///
/// # Safety
/// `curve` must be a live handle and `out` a valid `uint64_t` slot.
#[no_mangle]
pub unsafe extern "C" fn sfc_curve_cells(curve: *const SfcCurve, out: *mut u64) -> SfcStatus {
    guarded(|| {
        if curve.is_null() || out.is_null() {
            return SfcStatus::NullPointer;
        }
        *out = (*curve).0.cells();
        SfcStatus::Ok
    })
}

/// Decode a curve index into `dimension` coordinates.
///
/// # Safety
/// `curve` must be a live handle; `coords` must point to at least
/// `coords_len` writable `uint64_t`s.
#[no_mangle]
pub unsafe extern "C" fn sfc_curve_index_to_point(
    curve: *const SfcCurve,
    index: u64,
    coords: *mut u64,
    coords_len: usize,
) -> SfcStatus {
    guarded(|| {
        if curve.is_null() || coords.is_null() {
            return SfcStatus::NullPointer;
        }
        let spec = &(*curve).0;
        if coords_len < spec.dim() {
            return SfcStatus::InvalidArgument;
        }
        match spec.index_to_point(index) {
            Ok(p) => {
                std::ptr::copy_nonoverlapping(p.coords().as_ptr(), coords, spec.dim());
                SfcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Encode `dimension` coordinates into a curve index.
///
/// # Safety
/// `curve` must be a live handle; `coords` must point to `coords_len`
/// readable `uint64_t`s and `out` to a writable one.
#[no_mangle]
pub unsafe extern "C" fn sfc_curve_point_to_index(
    curve: *const SfcCurve,
    coords: *const u64,
    coords_len: usize,
    out: *mut u64,
) -> SfcStatus {
    guarded(|| {
        if curve.is_null() || coords.is_null() || out.is_null() {
            return SfcStatus::NullPointer;
        }
        let spec = &(*curve).0;
        if coords_len != spec.dim() {
            return SfcStatus::InvalidArgument;
        }
        let slice = std::slice::from_raw_parts(coords, coords_len);
        match spec.point_to_index(&GridPoint::new(slice)) {
            Ok(idx) => {
                *out = idx;
                SfcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Copy `n` x `dimension` row-major doubles into a new point set.
///
/// # Safety
/// `values` must point to `n * dimension` readable doubles; `out` must
/// be a valid pointer to an `SfcPoints*` slot.
#[no_mangle]
pub unsafe extern "C" fn sfc_points_new(
    values: *const f64,
    n: usize,
    dimension: usize,
    out: *mut *mut SfcPoints,
) -> SfcStatus {
    guarded(|| {
        if values.is_null() || out.is_null() {
            return SfcStatus::NullPointer;
        }
        let data = std::slice::from_raw_parts(values, n * dimension).to_vec();
        match PointSet::new(n, dimension, data) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(SfcPoints(p)));
                SfcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Free a point set; null is a no-op.
///
/// # Safety
/// `points` must be null or a handle from [`sfc_points_new`], not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn sfc_points_free(points: *mut SfcPoints) {
    if !points.is_null() {
        drop(Box::from_raw(points));
    }
}

/// ε-similarity join; pairs are normalized to i < j.
///
/// # Safety
/// `points` must be a live handle and `out` a valid pointer to an
/// `SfcJoin*` slot.
#[no_mangle]
pub unsafe extern "C" fn sfc_join_run(
    points: *const SfcPoints,
    eps: f64,
    family: SfcCurveFamily,
    workers: u32,
    block_bits: u32,
    out: *mut *mut SfcJoin,
) -> SfcStatus {
    guarded(|| {
        if points.is_null() || out.is_null() {
            return SfcStatus::NullPointer;
        }
        let spec = match CurveSpec::new(family.into(), 2, 1) {
            Ok(s) => s,
            Err(e) => return status_of(&e),
        };
        let params = JoinParams {
            workers: workers.max(1) as usize,
            block_bits,
            reorder_dims: false,
        };
        match epsilon_join(&(*points).0, eps, &spec, &params) {
            Ok(mut res) => {
                res.sort();
                *out = Box::into_raw(Box::new(SfcJoin(res)));
                SfcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Free a join result; null is a no-op.
///
/// # Safety
/// `join` must be null or a handle from [`sfc_join_run`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sfc_join_free(join: *mut SfcJoin) {
    if !join.is_null() {
        drop(Box::from_raw(join));
    }
}

/// Number of qualifying pairs.
///
/// # Safety
/// `join` must be null or a live handle (null reads as empty).
#[no_mangle]
pub unsafe extern "C" fn sfc_join_len(join: *const SfcJoin) -> u64 {
    if join.is_null() {
        return 0;
    }
    (*join).0.len() as u64
}

/// Fetch pair `index` (sorted by (i, j)) and its distance.
///
/// # Safety
/// `join` must be a live handle; `i`, `j` and `dist` must be valid
/// writable slots.
#[no_mangle]
pub unsafe extern "C" fn sfc_join_pair(
    join: *const SfcJoin,
    index: u64,
    i: *mut u32,
    j: *mut u32,
    dist: *mut f64,
) -> SfcStatus {
    guarded(|| {
        if join.is_null() || i.is_null() || j.is_null() || dist.is_null() {
            return SfcStatus::NullPointer;
        }
        let res = &(*join).0;
        let Some(&(pi, pj)) = res.pairs.get(index as usize) else {
            return SfcStatus::OutOfRange;
        };
        *i = pi;
        *j = pj;
        *dist = res
            .distances
            .as_ref()
            .map_or(f64::NAN, |d| d[index as usize]);
        SfcStatus::Ok
    })
}

/// Lloyd k-means with the seeded distinct-point initialization.
///
/// # Safety
/// `points` must be a live handle and `out` a valid pointer to an
/// `SfcKmeans*` slot.
#[no_mangle]
pub unsafe extern "C" fn sfc_kmeans_run(
    points: *const SfcPoints,
    k: u32,
    max_iters: u32,
    tol: f64,
    seed: u64,
    family: SfcCurveFamily,
    workers: u32,
    out: *mut *mut SfcKmeans,
) -> SfcStatus {
    guarded(|| {
        if points.is_null() || out.is_null() {
            return SfcStatus::NullPointer;
        }
        let spec = match CurveSpec::new(family.into(), 2, 1) {
            Ok(s) => s,
            Err(e) => return status_of(&e),
        };
        let params = KMeansParams {
            k: k as usize,
            max_iters,
            tol,
            seed,
            workers: workers.max(1) as usize,
            block_bits: 10,
        };
        match kmeans(&(*points).0, &spec, &params) {
            Ok(model) => {
                *out = Box::into_raw(Box::new(SfcKmeans(model)));
                SfcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Free a k-means model; null is a no-op.
///
/// # Safety
/// `model` must be null or a handle from [`sfc_kmeans_run`], not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn sfc_kmeans_free(model: *mut SfcKmeans) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Iterations executed (0 for null).
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sfc_kmeans_iterations(model: *const SfcKmeans) -> u32 {
    if model.is_null() {
        return 0;
    }
    (*model).0.iterations
}

/// Final inertia (NaN for null).
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sfc_kmeans_inertia(model: *const SfcKmeans) -> f64 {
    if model.is_null() {
        return f64::NAN;
    }
    (*model).0.inertia
}

/// Copy the k x dimension centroid matrix into `out` (length `out_len`).
///
/// # Safety
/// `model` must be a live handle; `out` must point to `out_len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sfc_kmeans_centroids(
    model: *const SfcKmeans,
    out: *mut f64,
    out_len: usize,
) -> SfcStatus {
    guarded(|| {
        if model.is_null() || out.is_null() {
            return SfcStatus::NullPointer;
        }
        let m = &(*model).0;
        if out_len < m.centroids.len() {
            return SfcStatus::InvalidArgument;
        }
        std::ptr::copy_nonoverlapping(m.centroids.as_ptr(), out, m.centroids.len());
        SfcStatus::Ok
    })
}

/// Copy the per-point centroid assignments into `out` (length `out_len`).
///
/// # Safety
/// `model` must be a live handle; `out` must point to `out_len`
/// writable `uint32_t`s.
#[no_mangle]
pub unsafe extern "C" fn sfc_kmeans_assignments(
    model: *const SfcKmeans,
    out: *mut u32,
    out_len: usize,
) -> SfcStatus {
    guarded(|| {
        if model.is_null() || out.is_null() {
            return SfcStatus::NullPointer;
        }
        let m = &(*model).0;
        if out_len < m.assignments.len() {
            return SfcStatus::InvalidArgument;
        }
        std::ptr::copy_nonoverlapping(m.assignments.as_ptr(), out, m.assignments.len());
        SfcStatus::Ok
    })
}

/// C = A (m x k) times B (k x n), row-major, written to caller-allocated
/// `out_c` of length m*n. Bit-identical for every worker count and family.
///
/// # Safety
/// `a`, `b` and `out_c` must point to `m*k`, `k*n` and `m*n` doubles
/// respectively (readable for inputs, writable for `out_c`).
#[no_mangle]
pub unsafe extern "C" fn sfc_matmul_run(
    a: *const f64,
    m: usize,
    k: usize,
    b: *const f64,
    n: usize,
    family: SfcCurveFamily,
    workers: u32,
    out_c: *mut f64,
) -> SfcStatus {
    guarded(|| {
        if a.is_null() || b.is_null() || out_c.is_null() {
            return SfcStatus::NullPointer;
        }
        let ma = match Matrix::new(m, k, std::slice::from_raw_parts(a, m * k).to_vec()) {
            Ok(x) => x,
            Err(e) => return status_of(&e),
        };
        let mb = match Matrix::new(k, n, std::slice::from_raw_parts(b, k * n).to_vec()) {
            Ok(x) => x,
            Err(e) => return status_of(&e),
        };
        let spec = match CurveSpec::new(family.into(), 2, 1) {
            Ok(s) => s,
            Err(e) => return status_of(&e),
        };
        let params = MatmulParams {
            workers: workers.max(1) as usize,
            tile_bits: 5,
        };
        match matmul(&ma, &mb, &spec, &params) {
            Ok(c) => {
                std::ptr::copy_nonoverlapping(c.data().as_ptr(), out_c, m * n);
                SfcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
