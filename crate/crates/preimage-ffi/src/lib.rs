//! C ABI over the circuit builders and the cost estimator: opaque circuit
//! handles, a flat resource-count struct, status codes, and JSON report
//! strings. The committed header `include/preimage.h` is regenerated by the
//! build script whenever this file changes.
//!
//! Conventions: every fallible call returns a [`PreimageStatus`]; out
//! parameters are written only on `Ok`; strings returned through out
//! parameters are owned by the caller and released with
//! [`preimage_string_free`]; handles are released with
//! [`preimage_circuit_free`]. All calls catch panics and turn them into
//! `InternalError`.

use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufWriter;
use std::panic::{catch_unwind, AssertUnwindSafe};

use preimage::counts::{count_resources, CountAccumulator, ResourceCounts};
use preimage::ftcost::{
    estimate_attack, sha256_reference_counts, sha3_256_reference_counts, PhysicalParams,
};
use preimage::{keccak, sha256, textio, Circuit};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreimageStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Unsupported = 3,
    VerificationFailed = 4,
    InternalError = 5,
}

/// Gate tallies and depth figures of one circuit; all counters are 64-bit.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreimageCounts {
    pub x: u64,
    pub cnot: u64,
    pub toffoli: u64,
    pub h: u64,
    pub t: u64,
    pub tdg: u64,
    pub p: u64,
    pub pdg: u64,
    pub z: u64,
    /// T plus T-dagger.
    pub t_count: u64,
    pub total_gates: u64,
    /// Layers containing a T or T-dagger under as-soon-as-possible layering.
    pub t_depth: u64,
    pub total_depth: u64,
    /// Layers containing a Toffoli.
    pub toffoli_stages: u64,
    /// Wires in the circuit.
    pub width: u64,
}

impl From<ResourceCounts> for PreimageCounts {
    fn from(c: ResourceCounts) -> Self {
        PreimageCounts {
            x: c.x,
            cnot: c.cnot,
            toffoli: c.toffoli,
            h: c.h,
            t: c.t,
            tdg: c.tdg,
            p: c.p,
            pdg: c.pdg,
            z: c.z,
            t_count: c.t_count,
            total_gates: c.total_gates,
            t_depth: c.t_depth,
            total_depth: c.total_depth,
            toffoli_stages: c.toffoli_stages,
            width: c.width as u64,
        }
    }
}

/// Opaque reversible-circuit handle.
pub struct PreimageCircuit {
    circuit: Circuit,
}

fn guard(body: impl FnOnce() -> PreimageStatus) -> PreimageStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(PreimageStatus::InternalError)
}

/// Library version as a static NUL-terminated string; never freed.
#[no_mangle]
pub extern "C" fn preimage_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static human-readable message for a status code; never freed.
#[no_mangle]
pub extern "C" fn preimage_status_message(status: PreimageStatus) -> *const c_char {
    let msg: &'static str = match status {
        PreimageStatus::Ok => "ok\0",
        PreimageStatus::NullPointer => "null pointer argument\0",
        PreimageStatus::InvalidArgument => "invalid argument\0",
        PreimageStatus::Unsupported => "unsupported selector\0",
        PreimageStatus::VerificationFailed => "circuit output disagrees with the reference\0",
        PreimageStatus::InternalError => "internal error\0",
    };
    msg.as_ptr() as *const c_char
}

/// Build the reversible SHA-256 compression circuit and hand back an owned
/// handle through `out`.
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn preimage_sha256_circuit_new(
    out: *mut *mut PreimageCircuit,
) -> PreimageStatus {
    if out.is_null() {
        return PreimageStatus::NullPointer;
    }
    guard(|| {
        let (circuit, _) = sha256::build_sha256();
        let handle = Box::new(PreimageCircuit { circuit });
        unsafe { out.write(Box::into_raw(handle)) };
        PreimageStatus::Ok
    })
}

/// Resource counts of a circuit handle.
///
/// # Safety
/// `circuit` must be a live handle from this library; `out` must point to
/// writable memory for one `PreimageCounts`.
#[no_mangle]
pub unsafe extern "C" fn preimage_circuit_counts(
    circuit: *const PreimageCircuit,
    out: *mut PreimageCounts,
) -> PreimageStatus {
    if circuit.is_null() || out.is_null() {
        return PreimageStatus::NullPointer;
    }
    guard(|| {
        let handle = unsafe { &*circuit };
        match count_resources(&handle.circuit) {
            Ok(counts) => {
                unsafe { out.write(counts.into()) };
                PreimageStatus::Ok
            }
            Err(_) => PreimageStatus::InternalError,
        }
    })
}

/// Write a circuit handle to `path` in the plain-text netlist format.
///
/// # Safety
/// `circuit` must be a live handle; `path` must be a NUL-terminated UTF-8
/// string.
#[no_mangle]
pub unsafe extern "C" fn preimage_circuit_write_text(
    circuit: *const PreimageCircuit,
    path: *const c_char,
) -> PreimageStatus {
    if circuit.is_null() || path.is_null() {
        return PreimageStatus::NullPointer;
    }
    guard(|| {
        let handle = unsafe { &*circuit };
        let Ok(path) = unsafe { CStr::from_ptr(path) }.to_str() else {
            return PreimageStatus::InvalidArgument;
        };
        let Ok(file) = File::create(path) else {
            return PreimageStatus::InvalidArgument;
        };
        let mut w = BufWriter::new(file);
        if textio::write_circuit(&mut w, &handle.circuit).is_err() {
            return PreimageStatus::InternalError;
        }
        PreimageStatus::Ok
    })
}

/// Release a circuit handle; a null pointer is a no-op.
///
/// # Safety
/// `circuit` must be null or a live handle from this library, and must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn preimage_circuit_free(circuit: *mut PreimageCircuit) {
    if !circuit.is_null() {
        drop(unsafe { Box::from_raw(circuit) });
    }
}

/// Resource counts of the full 24-round reversible permutation circuit
/// (1600-bit state plus temporary register). Walks all ~33M gates; takes a
/// few seconds.
///
/// # Safety
/// `out` must point to writable memory for one `PreimageCounts`.
#[no_mangle]
pub unsafe extern "C" fn preimage_keccak_counts(out: *mut PreimageCounts) -> PreimageStatus {
    if out.is_null() {
        return PreimageStatus::NullPointer;
    }
    guard(|| {
        let circuit = keccak::build_components();
        let mut acc = CountAccumulator::new(circuit.layout().width());
        let mut failed = false;
        circuit.for_each_gate(|g| {
            if !failed && acc.push(g).is_err() {
                failed = true;
            }
        });
        if failed {
            return PreimageStatus::InternalError;
        }
        unsafe { out.write(acc.finish().into()) };
        PreimageStatus::Ok
    })
}

/// SHA-256 digest of a message of at most 55 bytes (one padded block),
/// through the software reference oracle. `digest` receives 32 bytes.
///
/// # Safety
/// `msg` must point to `len` readable bytes (may be null when `len` is 0);
/// `digest` must point to 32 writable bytes.
#[no_mangle]
pub unsafe extern "C" fn preimage_sha256_digest(
    msg: *const u8,
    len: usize,
    digest: *mut u8,
) -> PreimageStatus {
    if digest.is_null() || (msg.is_null() && len > 0) {
        return PreimageStatus::NullPointer;
    }
    if len > 55 {
        return PreimageStatus::InvalidArgument;
    }
    guard(|| {
        let bytes: &[u8] = if len == 0 {
            &[]
        } else {
            unsafe { std::slice::from_raw_parts(msg, len) }
        };
        let out = sha256::reference::digest_single_block(bytes);
        unsafe { std::ptr::copy_nonoverlapping(out.as_ptr(), digest, 32) };
        PreimageStatus::Ok
    })
}

/// Run the reversible SHA-256 circuit on a fixed message and compare with
/// the software reference; `VerificationFailed` on any mismatch.
#[no_mangle]
pub extern "C" fn preimage_sha256_self_check() -> PreimageStatus {
    guard(|| {
        let results = sha256::verify_sha256(&[b"abc".as_slice()]);
        if results.iter().all(|r| r.pass) {
            PreimageStatus::Ok
        } else {
            PreimageStatus::VerificationFailed
        }
    })
}

/// Estimate the fault-tolerant attack cost for `hash` ("sha256" or
/// "sha3-256") at key size `k`, using the published optimized circuit
/// counts and default physical parameters. On `Ok`, `out` receives a
/// NUL-terminated JSON report owned by the caller (release with
/// [`preimage_string_free`]).
///
/// # Safety
/// `hash` must be a NUL-terminated string; `out` must point to writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn preimage_estimate_json(
    hash: *const c_char,
    k: u32,
    out: *mut *mut c_char,
) -> PreimageStatus {
    if hash.is_null() || out.is_null() {
        return PreimageStatus::NullPointer;
    }
    guard(|| {
        let Ok(name) = unsafe { CStr::from_ptr(hash) }.to_str() else {
            return PreimageStatus::InvalidArgument;
        };
        let mut gp = match name {
            "sha256" => sha256_reference_counts(),
            "sha3-256" => sha3_256_reference_counts(),
            _ => return PreimageStatus::Unsupported,
        };
        gp.k = k;
        let report = match estimate_attack(&gp, &PhysicalParams::default()) {
            Ok(r) => r,
            Err(_) => return PreimageStatus::InvalidArgument,
        };
        let json = match serde_json::to_string_pretty(&report) {
            Ok(s) => s,
            Err(_) => return PreimageStatus::InternalError,
        };
        let Ok(cstr) = CString::new(json) else {
            return PreimageStatus::InternalError;
        };
        unsafe { out.write(cstr.into_raw()) };
        PreimageStatus::Ok
    })
}

/// Release a string returned by this library; a null pointer is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn preimage_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn version_and_messages_are_non_null() {
        let v = preimage_version();
        assert!(!v.is_null());
        let s = unsafe { CStr::from_ptr(v) }.to_str().unwrap();
        assert!(!s.is_empty());
        for status in [
            PreimageStatus::Ok,
            PreimageStatus::NullPointer,
            PreimageStatus::InvalidArgument,
            PreimageStatus::Unsupported,
            PreimageStatus::VerificationFailed,
            PreimageStatus::InternalError,
        ] {
            let m = preimage_status_message(status);
            assert!(!unsafe { CStr::from_ptr(m) }.to_str().unwrap().is_empty());
        }
    }

    #[test]
    fn circuit_handle_lifecycle_and_counts() {
        let mut handle: *mut PreimageCircuit = ptr::null_mut();
        assert_eq!(
            unsafe { preimage_sha256_circuit_new(&mut handle) },
            PreimageStatus::Ok
        );
        assert!(!handle.is_null());

        let mut counts = PreimageCounts::from(ResourceCounts::default());
        assert_eq!(
            unsafe { preimage_circuit_counts(handle, &mut counts) },
            PreimageStatus::Ok
        );
        assert_eq!(counts.toffoli, 56_928);
        assert_eq!(counts.width, 2433);
        assert_eq!(counts.t_count, 0);

        unsafe { preimage_circuit_free(handle) };
        unsafe { preimage_circuit_free(ptr::null_mut()) };
    }

    #[test]
    fn write_text_round_trips_through_parser() {
        let mut handle: *mut PreimageCircuit = ptr::null_mut();
        assert_eq!(
            unsafe { preimage_sha256_circuit_new(&mut handle) },
            PreimageStatus::Ok
        );
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sha256.qc");
        let cpath = CString::new(path.to_str().unwrap()).unwrap();
        assert_eq!(
            unsafe { preimage_circuit_write_text(handle, cpath.as_ptr()) },
            PreimageStatus::Ok
        );
        let parsed =
            textio::parse_circuit(std::io::BufReader::new(File::open(&path).unwrap())).unwrap();
        let original = unsafe { &(*handle).circuit };
        assert_eq!(parsed.gates(), original.gates());
        unsafe { preimage_circuit_free(handle) };
    }

    #[test]
    fn digest_matches_known_value() {
        let mut digest = [0u8; 32];
        let msg = b"abc";
        assert_eq!(
            unsafe { preimage_sha256_digest(msg.as_ptr(), msg.len(), digest.as_mut_ptr()) },
            PreimageStatus::Ok
        );
        assert_eq!(
            hex::encode(digest),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(
            unsafe { preimage_sha256_digest(msg.as_ptr(), 56, digest.as_mut_ptr()) },
            PreimageStatus::InvalidArgument
        );
    }

    #[test]
    fn self_check_passes() {
        assert_eq!(preimage_sha256_self_check(), PreimageStatus::Ok);
    }

    #[test]
    fn keccak_counts_match_build() {
        let mut counts = PreimageCounts::from(ResourceCounts::default());
        assert_eq!(
            unsafe { preimage_keccak_counts(&mut counts) },
            PreimageStatus::Ok
        );
        assert_eq!(counts.toffoli, 84_480);
        assert_eq!(counts.cnot, 33_308_160);
        assert_eq!(counts.x, 86);
        assert_eq!(counts.width, 3200);
    }

    #[test]
    fn estimate_json_reports_headline_figures() {
        let mut s: *mut c_char = ptr::null_mut();
        let hash = CString::new("sha256").unwrap();
        assert_eq!(
            unsafe { preimage_estimate_json(hash.as_ptr(), 256, &mut s) },
            PreimageStatus::Ok
        );
        let json = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        unsafe { preimage_string_free(s) };
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["code_distance"], 43);
        assert_eq!(value["distilleries"], 1);
        assert_eq!(value["distillation"]["distances"][0], 33);

        let bad = CString::new("md5").unwrap();
        assert_eq!(
            unsafe { preimage_estimate_json(bad.as_ptr(), 256, &mut s) },
            PreimageStatus::Unsupported
        );
        // k below the formula's domain surfaces as InvalidArgument.
        assert_eq!(
            unsafe { preimage_estimate_json(hash.as_ptr(), 3, &mut s) },
            PreimageStatus::InvalidArgument
        );
    }

    #[test]
    fn null_arguments_are_rejected() {
        assert_eq!(
            unsafe { preimage_sha256_circuit_new(ptr::null_mut()) },
            PreimageStatus::NullPointer
        );
        let mut counts = PreimageCounts::from(ResourceCounts::default());
        assert_eq!(
            unsafe { preimage_circuit_counts(ptr::null(), &mut counts) },
            PreimageStatus::NullPointer
        );
        assert_eq!(
            unsafe { preimage_keccak_counts(ptr::null_mut()) },
            PreimageStatus::NullPointer
        );
        assert_eq!(
            unsafe { preimage_sha256_digest(ptr::null(), 3, ptr::null_mut()) },
            PreimageStatus::NullPointer
        );
        unsafe { preimage_string_free(ptr::null_mut()) };
    }
}
