//! C ABI for the signed-difference-set library.
//!
//! Conventions:
//!
//! * Objects are opaque handles (`SdsGroup`, `SdsSet`) created and destroyed
//!   by paired `_new`/`_from_*` and `_free` functions. Handles are immutable
//!   after creation and safe to share across threads for reads.
//! * Functions return an [`SdsStatus`] code; `SDS_STATUS_OK` is 0. On any
//!   failure a thread-local message is set, readable through
//!   [`sds_last_error_message`].
//! * Strings returned by the library are NUL-terminated, heap allocated, and
//!   must be released with [`sds_string_free`].
//!
//! The generated header lives at `include/sdscapi.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use sds_core::constructions;
use sds_core::format::SetFile;
use sds_core::group::AbelianGroup;
use sds_core::sds::{derive_params, Feasibility};
use sds_core::search::{orbit_search, SearchOptions, SearchStatus};
use sds_core::SignedDiffSet;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdsStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// Arguments fail a precondition; details via sds_last_error_message.
    InvalidArgument = 2,
    /// Input text could not be parsed as a set.
    ParseError = 3,
    /// The set does not satisfy the defining equation.
    VerificationFailed = 4,
    /// A search completed without finding a set.
    NotFound = 5,
    /// A search hit its node or time budget before completing.
    Partial = 6,
    /// An output buffer is too small; nothing was written.
    BufferTooSmall = 7,
}

/// Opaque group handle.
pub struct SdsGroup(AbelianGroup);

/// Opaque set handle.
pub struct SdsSet(SignedDiffSet);

/// Result of the feasibility derivation.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SdsFeasibility {
    pub feasible: bool,
    /// n = k - lambda; meaningful only when feasible.
    pub n: i64,
    /// s = |P| - |N|; meaningful only when feasible.
    pub s: i64,
    pub p_size: i64,
    pub n_size: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(msg).ok();
    });
}

fn alloc_string(s: &str) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Returns a copy of the last error message on this thread, or NULL when no
/// error has occurred. Free with `sds_string_free`.
#[no_mangle]
pub extern "C" fn sds_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map_or(std::ptr::null_mut(), |s| {
            alloc_string(s.to_str().unwrap_or(""))
        })
    })
}

/// Frees a string allocated by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by this library's string-
/// producing functions, not yet freed; NULL is accepted.
#[no_mangle]
pub unsafe extern "C" fn sds_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a finite abelian group `Z_orders[0] x ... x Z_orders[len-1]`.
///
/// # Safety
/// `orders` must point to `len` readable u64 values and `out` must be a
/// valid location to store the handle.
#[no_mangle]
pub unsafe extern "C" fn sds_group_new(
    orders: *const u64,
    len: usize,
    out: *mut *mut SdsGroup,
) -> SdsStatus {
    if orders.is_null() || out.is_null() {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    }
    let orders = std::slice::from_raw_parts(orders, len);
    match AbelianGroup::new(orders) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(SdsGroup(g)));
            SdsStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            SdsStatus::InvalidArgument
        }
    }
}

/// # Safety
/// `group` must be a live handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn sds_group_free(group: *mut SdsGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Group order v, or 0 for NULL.
///
/// # Safety
/// `group` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sds_group_order(group: *const SdsGroup) -> u64 {
    group.as_ref().map_or(0, |g| g.0.order())
}

/// Group exponent (lcm of the factor orders), or 0 for NULL.
///
/// # Safety
/// `group` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sds_group_exponent(group: *const SdsGroup) -> u64 {
    group.as_ref().map_or(0, |g| g.0.exponent())
}

/// Parses a set from its JSON wire form:
/// `{"group":[19],"lambda":2,"P":[[1],...],"N":[[3],...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_set_from_json(
    json: *const c_char,
    out: *mut *mut SdsSet,
) -> SdsStatus {
    if json.is_null() || out.is_null() {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("input is not UTF-8");
            return SdsStatus::ParseError;
        }
    };
    let parsed = SetFile::from_json(text.trim()).and_then(|f| f.to_set());
    match parsed {
        Ok(set) => {
            *out = Box::into_raw(Box::new(SdsSet(set)));
            SdsStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            SdsStatus::ParseError
        }
    }
}

/// Serializes a set to its JSON wire form. Returns NULL on NULL input.
///
/// # Safety
/// `set` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sds_set_to_json(set: *const SdsSet) -> *mut c_char {
    set.as_ref().map_or(std::ptr::null_mut(), |s| {
        alloc_string(&SetFile::from_set(&s.0).to_json())
    })
}

/// # Safety
/// `set` must be a live handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn sds_set_free(set: *mut SdsSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Group order of the set's group, or 0 for NULL.
///
/// # Safety
/// `set` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sds_set_v(set: *const SdsSet) -> u64 {
    set.as_ref().map_or(0, |s| s.0.group().order())
}

/// k = |P| + |N|, or -1 for NULL.
///
/// # Safety
/// `set` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sds_set_k(set: *const SdsSet) -> i64 {
    set.as_ref().map_or(-1, |s| s.0.k())
}

/// The claimed lambda, or 0 for NULL.
///
/// # Safety
/// `set` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sds_set_lambda(set: *const SdsSet) -> i64 {
    set.as_ref().map_or(0, |s| s.0.lambda())
}

/// Runs the exact group-ring verification.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sds_set_verify(set: *const SdsSet) -> SdsStatus {
    let Some(s) = set.as_ref() else {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    };
    match s.0.verify() {
        Ok(report) if report.ok => SdsStatus::Ok,
        Ok(report) => {
            set_error(format!(
                "equation fails at {} element(s)",
                report.equation.violations.len()
            ));
            SdsStatus::VerificationFailed
        }
        Err(e) => {
            set_error(e.to_string());
            SdsStatus::InvalidArgument
        }
    }
}

/// Hex canonical key; equal keys mean the sets are equivalent under
/// translation, unit multipliers, and (for s = 0) negation.
///
/// # Safety
/// `set` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sds_set_canonical_key_hex(set: *const SdsSet) -> *mut c_char {
    set.as_ref().map_or(std::ptr::null_mut(), |s| {
        let key = s.0.canonical_form();
        let mut hex = String::with_capacity(key.len() * 2);
        for b in key {
            hex.push_str(&format!("{b:02x}"));
        }
        alloc_string(&hex)
    })
}

/// Writes the periodic autocorrelation into `out[0..v]`. Requires a cyclic
/// group and `len >= v`.
///
/// # Safety
/// `set` must be a live handle; `out` must point to `len` writable i64.
#[no_mangle]
pub unsafe extern "C" fn sds_set_autocorrelation(
    set: *const SdsSet,
    out: *mut i64,
    len: usize,
) -> SdsStatus {
    let Some(s) = set.as_ref() else {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    };
    if out.is_null() {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    }
    let theta = match s.0.autocorrelation() {
        Ok(t) => t,
        Err(e) => {
            set_error(e.to_string());
            return SdsStatus::InvalidArgument;
        }
    };
    if len < theta.len() {
        set_error(format!("need room for {} values, got {len}", theta.len()));
        return SdsStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(theta.as_ptr(), out, theta.len());
    SdsStatus::Ok
}

/// Derives (n, s, |P|, |N|) from (v, k, lambda); `out->feasible` is false
/// when the counting identity has no solution. Returns InvalidArgument for
/// v < 1 or k outside [0, v].
///
/// # Safety
/// `out` must be a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_feasible(
    v: i64,
    k: i64,
    lambda: i64,
    out: *mut SdsFeasibility,
) -> SdsStatus {
    if out.is_null() {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    }
    match derive_params(v, k, lambda) {
        Ok(Feasibility::Feasible(p)) => {
            *out = SdsFeasibility {
                feasible: true,
                n: p.n,
                s: p.s,
                p_size: p.p_size,
                n_size: p.n_size,
            };
            SdsStatus::Ok
        }
        Ok(Feasibility::Infeasible(reason)) => {
            set_error(reason.to_string());
            *out = SdsFeasibility {
                feasible: false,
                n: 0,
                s: 0,
                p_size: 0,
                n_size: 0,
            };
            SdsStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            SdsStatus::InvalidArgument
        }
    }
}

unsafe fn construct_into(
    out: *mut *mut SdsSet,
    build: impl FnOnce() -> sds_core::Result<SignedDiffSet>,
) -> SdsStatus {
    if out.is_null() {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    }
    match build() {
        Ok(set) => {
            *out = Box::into_raw(Box::new(SdsSet(set)));
            SdsStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            SdsStatus::InvalidArgument
        }
    }
}

/// Squares vs nonsquares mod an odd prime v: a (v, v-1, -1) set.
///
/// # Safety
/// `out` must be a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_construct_qr(v: u64, out: *mut *mut SdsSet) -> SdsStatus {
    construct_into(out, || constructions::quadratic_residue_sds(v))
}

/// Paley difference set over GF(q), q = 3 (mod 4): a (q, (q-1)/2, (q-3)/4)
/// difference set with N empty.
///
/// # Safety
/// `out` must be a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_construct_paley_ds(q: u64, out: *mut *mut SdsSet) -> SdsStatus {
    construct_into(out, || constructions::paley_difference_set(q))
}

/// Paley set with N = {0}: a (4n-1, 2n, n-2) set for q = 4n-1 a prime power.
///
/// # Safety
/// `out` must be a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_construct_paley_signed(q: u64, out: *mut *mut SdsSet) -> SdsStatus {
    construct_into(out, || constructions::paley_signed_sds(q))
}

/// Fourth-power residues with N = {0} for primes v = 25 + 4y^2, v = 13
/// (mod 16): a (v, (v+3)/4, (v-13)/16) set.
///
/// # Safety
/// `out` must be a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_construct_quartic(v: u64, out: *mut *mut SdsSet) -> SdsStatus {
    construct_into(out, || constructions::quartic_residue_sds(v).map(|q| q.set))
}

/// The prime-pair family member for m (q = 2m-3, r = 2m+3 prime powers).
///
/// # Safety
/// `out` must be a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_construct_prime_pair(m: u64, out: *mut *mut SdsSet) -> SdsStatus {
    construct_into(out, || constructions::prime_pair_sds(m))
}

/// The sporadic (18, 13, 4) set in Z_2 x Z_3 x Z_3.
///
/// # Safety
/// `out` must be a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_construct_noncyclic_18_13_4(out: *mut *mut SdsSet) -> SdsStatus {
    construct_into(out, || Ok(constructions::noncyclic_18_13_4()))
}

/// Complement construction from a plain difference set (N empty): a
/// (v, v, v-4n) set.
///
/// # Safety
/// `ds` must be a live handle; `out` must be a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_construct_complement(
    ds: *const SdsSet,
    out: *mut *mut SdsSet,
) -> SdsStatus {
    let Some(input) = ds.as_ref() else {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    };
    construct_into(out, || constructions::complement_signed(&input.0))
}

/// Runs the orbit search for (group, k, lambda) and returns the full report
/// as JSON (status, nodes, multiplier, scope, sets). `max_nodes` 0 means
/// unlimited; `threads` 0 means 1.
///
/// Returns Ok when at least one set was found, NotFound for an exhaustive
/// empty search or infeasible parameters, Partial when a budget ran out.
///
/// # Safety
/// `group` must be a live handle; `out_json` must be a valid store location.
#[no_mangle]
pub unsafe extern "C" fn sds_search_json(
    group: *const SdsGroup,
    k: i64,
    lambda: i64,
    max_nodes: u64,
    threads: u32,
    out_json: *mut *mut c_char,
) -> SdsStatus {
    let Some(g) = group.as_ref() else {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    };
    if out_json.is_null() {
        set_error("NULL argument");
        return SdsStatus::NullArgument;
    }
    let options = SearchOptions {
        max_nodes: (max_nodes > 0).then_some(max_nodes),
        threads: threads.max(1) as usize,
        ..SearchOptions::default()
    };
    let report = match orbit_search(&g.0, k, lambda, &options) {
        Ok(r) => r,
        Err(e) => {
            set_error(e.to_string());
            return SdsStatus::InvalidArgument;
        }
    };
    let sets: Vec<serde_json::Value> = report
        .sets_found
        .iter()
        .map(|s| serde_json::to_value(SetFile::from_set(s)).expect("serializable"))
        .collect();
    let json = serde_json::json!({
        "group": report.group.orders(),
        "status": report.status.to_string(),
        "nodes": report.nodes_explored,
        "multiplier": report.multiplier_used,
        "scope": report.scope_note,
        "infeasible_reason": report.infeasible_reason,
        "sets": sets,
    })
    .to_string();
    *out_json = alloc_string(&json);
    match report.status {
        SearchStatus::Partial => SdsStatus::Partial,
        _ if report.found_any() => SdsStatus::Ok,
        _ => SdsStatus::NotFound,
    }
}
