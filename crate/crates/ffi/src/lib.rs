//! C ABI over the `prational` crate.
//!
//! Every function returns a [`PrStatus`]; results go through out-pointers.
//! Handles are opaque and must be released with their `_free` function.
//! Panics never cross the boundary: they surface as `PR_STATUS_INTERNAL`.

use prational::certify::{
    certify_triquadratic, verify_certificate, CertifyError, Conclusion, TriquadraticCertificate,
};
use prational::quad::{
    class_number_imaginary, descriptor, p_rationality, QuadError, VerdictStatus,
};
use prational::search::{direct_scan, SquareFlankedPrime};
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedPrime = 3,
    OutOfRange = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrVerdict {
    Proved = 0,
    Refuted = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrConclusion {
    Certified = 0,
    Failed = 1,
    Undecided = 2,
}

/// One search record: `m² | p + 2`, `n² | p - 2`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrFlankedPrime {
    pub p: u64,
    pub m: u64,
    pub n: u64,
}

/// Opaque certificate handle.
pub struct PrCertificate {
    inner: TriquadraticCertificate,
}

/// Opaque list of search results.
pub struct PrPrimeList {
    items: Vec<SquareFlankedPrime>,
}

fn guard(f: impl FnOnce() -> PrStatus) -> PrStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PrStatus::Internal)
}

fn verdict(s: VerdictStatus) -> PrVerdict {
    match s {
        VerdictStatus::Proved => PrVerdict::Proved,
        VerdictStatus::Refuted => PrVerdict::Refuted,
        VerdictStatus::Inconclusive => PrVerdict::Inconclusive,
    }
}

fn quad_status(e: QuadError) -> PrStatus {
    match e {
        QuadError::EvenOrSmallPrime(_) | QuadError::UnsupportedPrime(_) => {
            PrStatus::UnsupportedPrime
        }
        QuadError::Overflow(_) => PrStatus::OutOfRange,
        QuadError::PrecisionFailure { .. } => PrStatus::Internal,
        _ => PrStatus::InvalidArgument,
    }
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn pr_status_message(status: PrStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        PrStatus::Ok => b"ok\0",
        PrStatus::NullPointer => b"null pointer argument\0",
        PrStatus::InvalidArgument => b"invalid argument\0",
        PrStatus::UnsupportedPrime => b"unsupported prime\0",
        PrStatus::OutOfRange => b"index or value out of range\0",
        PrStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Certifies `p` and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_certify(p: u64, out: *mut *mut PrCertificate) -> PrStatus {
    guard(|| {
        if out.is_null() {
            return PrStatus::NullPointer;
        }
        match certify_triquadratic(p) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(PrCertificate { inner }));
                PrStatus::Ok
            }
            Err(CertifyError::UnsupportedPrime(_)) => PrStatus::UnsupportedPrime,
            Err(CertifyError::Quad(e)) => quad_status(e),
            Err(_) => PrStatus::Internal,
        }
    })
}

/// # Safety
/// `cert` must come from [`pr_certify`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_certificate_conclusion(
    cert: *const PrCertificate,
    out: *mut PrConclusion,
) -> PrStatus {
    guard(|| {
        if cert.is_null() || out.is_null() {
            return PrStatus::NullPointer;
        }
        *out = match (*cert).inner.conclusion {
            Conclusion::Certified => PrConclusion::Certified,
            Conclusion::Failed => PrConclusion::Failed,
            Conclusion::Inconclusive => PrConclusion::Undecided,
        };
        PrStatus::Ok
    })
}

/// Verdict of subfield `index` (0 for K1, ..., 6 for K7).
///
/// # Safety
/// `cert` must come from [`pr_certify`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_certificate_subfield(
    cert: *const PrCertificate,
    index: usize,
    kernel: *mut i64,
    out: *mut PrVerdict,
) -> PrStatus {
    guard(|| {
        if cert.is_null() || out.is_null() || kernel.is_null() {
            return PrStatus::NullPointer;
        }
        let cert = &*cert;
        match cert.inner.subfields.get(index) {
            Some(v) => {
                *kernel = v.field.kernel;
                *out = verdict(v.status);
                PrStatus::Ok
            }
            None => PrStatus::OutOfRange,
        }
    })
}

/// Independently re-checks the certificate.
///
/// # Safety
/// `cert` must come from [`pr_certify`]; `valid` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_certificate_verify(
    cert: *const PrCertificate,
    valid: *mut bool,
) -> PrStatus {
    guard(|| {
        if cert.is_null() || valid.is_null() {
            return PrStatus::NullPointer;
        }
        *valid = verify_certificate(&(*cert).inner);
        PrStatus::Ok
    })
}

/// The `cert-v1` text; release it with [`pr_string_free`].
///
/// # Safety
/// `cert` must come from [`pr_certify`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_certificate_text(
    cert: *const PrCertificate,
    out: *mut *mut c_char,
) -> PrStatus {
    guard(|| {
        if cert.is_null() || out.is_null() {
            return PrStatus::NullPointer;
        }
        match CString::new((*cert).inner.to_text()) {
            Ok(s) => {
                *out = s.into_raw();
                PrStatus::Ok
            }
            Err(_) => PrStatus::Internal,
        }
    })
}

/// # Safety
/// `cert` must be null or come from [`pr_certify`], and not be used again.
#[no_mangle]
pub unsafe extern "C" fn pr_certificate_free(cert: *mut PrCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `s` must be null or come from this library, and not be used again.
#[no_mangle]
pub unsafe extern "C" fn pr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Primes `3 <= p <= limit` whose `p ± 2` have square parts above `(ln p)^a`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_direct_scan(
    limit: u64,
    a: f64,
    out: *mut *mut PrPrimeList,
) -> PrStatus {
    guard(|| {
        if out.is_null() {
            return PrStatus::NullPointer;
        }
        if !(a > 0.0) || !a.is_finite() {
            return PrStatus::InvalidArgument;
        }
        if limit > 1 << 32 {
            return PrStatus::OutOfRange;
        }
        *out = Box::into_raw(Box::new(PrPrimeList {
            items: direct_scan(limit, a),
        }));
        PrStatus::Ok
    })
}

/// # Safety
/// `list` must come from [`pr_direct_scan`]; `len` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_prime_list_len(list: *const PrPrimeList, len: *mut usize) -> PrStatus {
    guard(|| {
        if list.is_null() || len.is_null() {
            return PrStatus::NullPointer;
        }
        *len = (*list).items.len();
        PrStatus::Ok
    })
}

/// # Safety
/// `list` must come from [`pr_direct_scan`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_prime_list_get(
    list: *const PrPrimeList,
    index: usize,
    out: *mut PrFlankedPrime,
) -> PrStatus {
    guard(|| {
        if list.is_null() || out.is_null() {
            return PrStatus::NullPointer;
        }
        let list = &*list;
        match list.items.get(index) {
            Some(r) => {
                *out = PrFlankedPrime {
                    p: r.p,
                    m: r.m_witness,
                    n: r.n_witness,
                };
                PrStatus::Ok
            }
            None => PrStatus::OutOfRange,
        }
    })
}

/// # Safety
/// `list` must be null or come from [`pr_direct_scan`], and not be used again.
#[no_mangle]
pub unsafe extern "C" fn pr_prime_list_free(list: *mut PrPrimeList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Class number of the imaginary field with fundamental discriminant `disc < 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_class_number_imaginary(disc: i64, out: *mut u64) -> PrStatus {
    guard(|| {
        if out.is_null() {
            return PrStatus::NullPointer;
        }
        match class_number_imaginary(disc) {
            Ok(h) => {
                *out = h;
                PrStatus::Ok
            }
            Err(e) => quad_status(e),
        }
    })
}

/// p-rationality of `Q(sqrt(d))`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_p_rationality(d: i64, p: u64, out: *mut PrVerdict) -> PrStatus {
    guard(|| {
        if out.is_null() {
            return PrStatus::NullPointer;
        }
        match descriptor(d).and_then(|f| p_rationality(&f, p)) {
            Ok(v) => {
                *out = verdict(v.status);
                PrStatus::Ok
            }
            Err(e) => quad_status(e),
        }
    })
}
