//! C ABI over `numsg`.
//!
//! Semigroups and genus aggregates are passed as opaque handles created by
//! `numsg_*_new`/`numsg_aggregate_genus` and released with the matching
//! `_free`. Every function returns a [`NumsgStatus`]; outputs go through
//! pointer arguments. Panics never cross the boundary.
//!
//! Variable-length outputs follow one convention: the caller passes a buffer
//! and its capacity, the required length is always written to `len`, and
//! `NUMSG_BUFFER_TOO_SMALL` is returned when the buffer cannot hold it.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use numsg::enumerate::{count_with_plan, enumerate_with_plan, EnumerationPlan};
use numsg::stats::{AggregateConfig, GenusAggregate};
use numsg::{kunz_of, Error, SemigroupSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumsgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotASemigroup = 3,
    OutOfRange = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Opaque semigroup handle.
pub struct NumsgSemigroup(SemigroupSet);

/// Opaque handle on the statistics of one genus.
pub struct NumsgAggregate(GenusAggregate);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NumsgInvariants {
    pub genus: u32,
    pub multiplicity: u32,
    /// -1 for the nonnegative integers.
    pub frobenius: i32,
    pub embedding_dim: u32,
    pub e1: u32,
    pub e2: u32,
    pub type_t: u32,
    pub t1: u32,
    pub t2: u32,
    pub weight: u64,
    pub gap_sum: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> NumsgStatus {
    match e {
        Error::NotASemigroup { .. } | Error::InfiniteGenus(_) => NumsgStatus::NotASemigroup,
        Error::OutOfRange { .. } | Error::GenusTooLarge { .. } => NumsgStatus::OutOfRange,
        _ => NumsgStatus::InvalidArgument,
    }
}

type Step = Result<(), NumsgStatus>;

trait OrStatus<T> {
    fn or_status(self) -> Result<T, NumsgStatus>;
}

impl<T> OrStatus<T> for numsg::Result<T> {
    fn or_status(self) -> Result<T, NumsgStatus> {
        self.map_err(|e| {
            set_last_error(&e.to_string());
            status_of(&e)
        })
    }
}

fn guard<F: FnOnce() -> Step>(f: F) -> NumsgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            NumsgStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic");
            NumsgStatus::Panic
        }
    }
}

fn null() -> NumsgStatus {
    set_last_error("null pointer argument");
    NumsgStatus::NullPointer
}

unsafe fn slice<'a>(data: *const u32, len: usize) -> Result<&'a [u32], NumsgStatus> {
    if len == 0 {
        Ok(&[])
    } else if data.is_null() {
        Err(null())
    } else {
        Ok(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Step {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, cap: usize, len: *mut usize) -> Step {
    write_out(len, src.len())?;
    if src.len() > cap {
        set_last_error("buffer too small");
        return Err(NumsgStatus::BufferTooSmall);
    }
    if !src.is_empty() {
        if buf.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    Ok(())
}

unsafe fn semigroup<'a>(s: *const NumsgSemigroup) -> Result<&'a SemigroupSet, NumsgStatus> {
    s.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn aggregate<'a>(a: *const NumsgAggregate) -> Result<&'a GenusAggregate, NumsgStatus> {
    a.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn hand_out<T>(value: T, out: *mut *mut T) -> Step {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn numsg_status_message(status: NumsgStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        NumsgStatus::Ok => b"ok\0",
        NumsgStatus::NullPointer => b"null pointer argument\0",
        NumsgStatus::InvalidArgument => b"invalid argument\0",
        NumsgStatus::NotASemigroup => b"not a numerical semigroup\0",
        NumsgStatus::OutOfRange => b"value out of range\0",
        NumsgStatus::BufferTooSmall => b"buffer too small\0",
        NumsgStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Detail of the last failure on this thread; empty after a success. Valid
/// until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn numsg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The semigroup with the given gaps (any order).
///
/// # Safety
/// `gaps` must point to `len` readable values (or be null with `len == 0`);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numsg_semigroup_from_gaps(
    gaps: *const u32,
    len: usize,
    out: *mut *mut NumsgSemigroup,
) -> NumsgStatus {
    guard(|| {
        let s = SemigroupSet::from_gaps(slice(gaps, len)?.iter().copied()).or_status()?;
        hand_out(NumsgSemigroup(s), out)
    })
}

/// The semigroup generated by `gens`, which must have gcd 1.
///
/// # Safety
/// As for [`numsg_semigroup_from_gaps`].
#[no_mangle]
pub unsafe extern "C" fn numsg_semigroup_from_generators(
    gens: *const u32,
    len: usize,
    out: *mut *mut NumsgSemigroup,
) -> NumsgStatus {
    guard(|| {
        let s = SemigroupSet::from_generators(slice(gens, len)?.iter().copied()).or_status()?;
        hand_out(NumsgSemigroup(s), out)
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn numsg_semigroup_free(s: *mut NumsgSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn numsg_semigroup_invariants(
    s: *const NumsgSemigroup,
    out: *mut NumsgInvariants,
) -> NumsgStatus {
    guard(|| {
        let r = semigroup(s)?.invariants();
        write_out(
            out,
            NumsgInvariants {
                genus: r.genus,
                multiplicity: r.multiplicity,
                frobenius: r.frobenius,
                embedding_dim: r.embedding_dim,
                e1: r.e1,
                e2: r.e2,
                type_t: r.type_t,
                t1: r.t1,
                t2: r.t2,
                weight: r.weight,
                gap_sum: r.gap_sum,
            },
        )
    })
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn numsg_semigroup_contains(
    s: *const NumsgSemigroup,
    n: u32,
    out: *mut bool,
) -> NumsgStatus {
    guard(|| write_out(out, semigroup(s)?.contains(n)))
}

/// Sorted gaps.
///
/// # Safety
/// `s` must be a live handle, `buf` writable for `cap` values, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn numsg_semigroup_gaps(
    s: *const NumsgSemigroup,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> NumsgStatus {
    guard(|| copy_out(&semigroup(s)?.gaps(), buf, cap, len))
}

/// Sorted minimal generators.
///
/// # Safety
/// As for [`numsg_semigroup_gaps`].
#[no_mangle]
pub unsafe extern "C" fn numsg_semigroup_generators(
    s: *const NumsgSemigroup,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> NumsgStatus {
    guard(|| copy_out(&semigroup(s)?.minimal_generators(), buf, cap, len))
}

/// Sorted pseudo-Frobenius numbers.
///
/// # Safety
/// As for [`numsg_semigroup_gaps`].
#[no_mangle]
pub unsafe extern "C" fn numsg_semigroup_pseudo_frobenius(
    s: *const NumsgSemigroup,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> NumsgStatus {
    guard(|| copy_out(&semigroup(s)?.pseudo_frobenius(), buf, cap, len))
}

/// Kunz coordinates `x_1 .. x_{m-1}` (empty for the nonnegative integers).
///
/// # Safety
/// As for [`numsg_semigroup_gaps`].
#[no_mangle]
pub unsafe extern "C" fn numsg_semigroup_kunz(
    s: *const NumsgSemigroup,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> NumsgStatus {
    guard(|| copy_out(&kunz_of(semigroup(s)?).coords, buf, cap, len))
}

fn plan(genus: u32, threads: u32) -> EnumerationPlan {
    let threads = match threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        t => t as usize,
    };
    EnumerationPlan::new(genus).with_workers(threads)
}

/// Number of semigroups of genus `genus`. `threads == 0` uses every core.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numsg_count_genus(genus: u32, threads: u32, out: *mut u64) -> NumsgStatus {
    guard(|| write_out(out, count_with_plan(&plan(genus, threads)).or_status()?))
}

/// Enumerates genus `genus` into a new aggregate handle.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numsg_aggregate_genus(
    genus: u32,
    threads: u32,
    out: *mut *mut NumsgAggregate,
) -> NumsgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let config = AggregateConfig::for_genus(genus);
        let agg = enumerate_with_plan(&plan(genus, threads), &config, |_, _| {}).or_status()?;
        hand_out(NumsgAggregate(agg), out)
    })
}

/// # Safety
/// `a` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn numsg_aggregate_free(a: *mut NumsgAggregate) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn numsg_aggregate_count(a: *const NumsgAggregate, out: *mut u64) -> NumsgStatus {
    guard(|| write_out(out, aggregate(a)?.count()))
}

/// Number of semigroups of the genus containing `n`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn numsg_aggregate_membership_count(
    a: *const NumsgAggregate,
    n: u32,
    out: *mut u64,
) -> NumsgStatus {
    guard(|| write_out(out, aggregate(a)?.membership_count(n)))
}

/// Canonical JSON of the aggregate, NUL-terminated. `len` receives the
/// length without the terminator; `cap` must exceed it.
///
/// # Safety
/// `a` must be a live handle, `buf` writable for `cap` bytes, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn numsg_aggregate_json(
    a: *const NumsgAggregate,
    buf: *mut c_char,
    cap: usize,
    len: *mut usize,
) -> NumsgStatus {
    guard(|| {
        let text = aggregate(a)?.to_json().to_string();
        write_out(len, text.len())?;
        if text.len() >= cap {
            set_last_error("buffer too small");
            return Err(NumsgStatus::BufferTooSmall);
        }
        if buf.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(text.as_ptr().cast(), buf, text.len());
        buf.add(text.len()).write(0);
        Ok(())
    })
}
