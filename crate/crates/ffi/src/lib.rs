//! C ABI for the `zhat` library.
//!
//! Contexts, elements and ideals are opaque heap handles released with
//! their `_free` function. Every fallible call returns a [`ZhatStatus`];
//! on failure [`zhat_last_error_message`] describes the error on the
//! calling thread. Strings returned through `char **` outputs are owned by
//! the caller and released with [`zhat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use zhat::error::Error;
use zhat::json::ElementJson;
use zhat::padic::{hensel_lift, Polynomial, Zp};
use zhat::product::{division_witness, truth_set, Predicate, ProductElement, RingContext};
use zhat::spectrum::{is_prime, FinGenIdeal, Level};
use zhat::verify::{self, VerifyConfig};

/// Result codes. `ZHAT_STATUS_OK` is zero; everything else is an error.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZhatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidContext = 3,
    MixedContext = 4,
    NotAUnit = 5,
    DivisionByZero = 6,
    PrecisionExhausted = 7,
    NotApproximateRoot = 8,
    SingularRoot = 9,
    ImproperIdeal = 10,
    UnknownPrime = 11,
    BufferTooSmall = 12,
    VerificationFailed = 13,
    Internal = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZhatPredicate {
    IsZero = 0,
    InMaximal = 1,
    IsUnit = 2,
}

/// Classification of an ideal by [`zhat_ideal_classify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZhatPrimeKind {
    NotPrime = 0,
    Minimal = 1,
    Maximal = 2,
}

/// Opaque ring context `prod_{p in S} Z_p` at precision `N`.
pub struct ZhatContext(RingContext);

/// Opaque element of a context.
pub struct ZhatElement(ProductElement);

/// Opaque finitely generated ideal.
pub struct ZhatIdeal(FinGenIdeal);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(error: &Error) -> ZhatStatus {
    match error {
        Error::NonPrimeModulus(_) | Error::ZeroPrecision | Error::InvalidContext(_) => ZhatStatus::InvalidContext,
        Error::MixedContext(_) => ZhatStatus::MixedContext,
        Error::NotAUnit(..) => ZhatStatus::NotAUnit,
        Error::DivisionByZero => ZhatStatus::DivisionByZero,
        Error::PrecisionExhausted(_) => ZhatStatus::PrecisionExhausted,
        Error::NotApproximateRoot => ZhatStatus::NotApproximateRoot,
        Error::SingularRoot => ZhatStatus::SingularRoot,
        Error::ImproperIdeal => ZhatStatus::ImproperIdeal,
        Error::UnknownPrime(_) => ZhatStatus::UnknownPrime,
        _ => ZhatStatus::InvalidArgument,
    }
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), (ZhatStatus, String)>) -> ZhatStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ZhatStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            ZhatStatus::Internal
        }
    }
}

fn fail(error: Error) -> (ZhatStatus, String) {
    (status_of(&error), error.to_string())
}

fn null(what: &str) -> (ZhatStatus, String) {
    (ZhatStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, (ZhatStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (ZhatStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn input_slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], (ZhatStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Writes `values` into a caller buffer, reporting the needed length.
unsafe fn write_buffer(
    values: &[u64],
    buffer: *mut u64,
    capacity: usize,
    len_out: *mut usize,
) -> Result<(), (ZhatStatus, String)> {
    *out(len_out, "len_out")? = values.len();
    if values.len() > capacity {
        return Err((
            ZhatStatus::BufferTooSmall,
            format!("need {} entries, capacity is {capacity}", values.len()),
        ));
    }
    if !values.is_empty() {
        if buffer.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buffer, values.len());
    }
    Ok(())
}

/// The last error message on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn zhat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `primes` must point to `len` readable values and `out_context` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zhat_context_new(
    primes: *const u64,
    len: usize,
    precision: u32,
    out_context: *mut *mut ZhatContext,
) -> ZhatStatus {
    guard(|| {
        let primes = input_slice(primes, len, "primes")?;
        let slot = out(out_context, "out_context")?;
        let ctx = RingContext::new(primes, precision).map_err(fail)?;
        *slot = Box::into_raw(Box::new(ZhatContext(ctx)));
        Ok(())
    })
}

/// # Safety
/// `context` must come from [`zhat_context_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zhat_context_free(context: *mut ZhatContext) {
    if !context.is_null() {
        drop(Box::from_raw(context));
    }
}

/// One signed integer per prime of the context, in order.
///
/// # Safety
/// Pointers must be valid; `values` must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn zhat_element_from_i64(
    context: *const ZhatContext,
    values: *const i64,
    len: usize,
    out_element: *mut *mut ZhatElement,
) -> ZhatStatus {
    guard(|| {
        let ctx = &borrow(context, "context")?.0;
        let values = input_slice(values, len, "values")?;
        let slot = out(out_element, "out_element")?;
        let f = ctx.element(values.iter().copied()).map_err(fail)?;
        *slot = Box::into_raw(Box::new(ZhatElement(f)));
        Ok(())
    })
}

/// # Safety
/// `element` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zhat_element_free(element: *mut ZhatElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

/// The element as JSON: `{"context":{"primes":[..],"N":..},"components":[..]}`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zhat_element_to_string(
    element: *const ZhatElement,
    out_string: *mut *mut c_char,
) -> ZhatStatus {
    guard(|| {
        let f = &borrow(element, "element")?.0;
        let slot = out(out_string, "out_string")?;
        let text = serde_json::to_string(&ElementJson::from(f)).expect("elements serialize");
        *slot = to_c_string(text);
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zhat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn binary(
    a: *const ZhatElement,
    b: *const ZhatElement,
    out_element: *mut *mut ZhatElement,
    op: fn(&ProductElement, &ProductElement) -> zhat::Result<ProductElement>,
) -> ZhatStatus {
    guard(|| {
        let (a, b) = (&borrow(a, "a")?.0, &borrow(b, "b")?.0);
        let slot = out(out_element, "out_element")?;
        *slot = Box::into_raw(Box::new(ZhatElement(op(a, b).map_err(fail)?)));
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zhat_element_add(
    a: *const ZhatElement,
    b: *const ZhatElement,
    out_element: *mut *mut ZhatElement,
) -> ZhatStatus {
    binary(a, b, out_element, ProductElement::add)
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zhat_element_mul(
    a: *const ZhatElement,
    b: *const ZhatElement,
    out_element: *mut *mut ZhatElement,
) -> ZhatStatus {
    binary(a, b, out_element, ProductElement::mul)
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zhat_element_neg(a: *const ZhatElement, out_element: *mut *mut ZhatElement) -> ZhatStatus {
    guard(|| {
        let a = &borrow(a, "a")?.0;
        let slot = out(out_element, "out_element")?;
        let neg = a.context().zero().sub(a).map_err(fail)?;
        *slot = Box::into_raw(Box::new(ZhatElement(neg)));
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zhat_element_is_unit(a: *const ZhatElement, out_unit: *mut bool) -> ZhatStatus {
    guard(|| {
        let a = &borrow(a, "a")?.0;
        *out(out_unit, "out_unit")? = a.is_unit();
        Ok(())
    })
}

/// Writes the primes where the predicate holds into `buffer`. On
/// `BufferTooSmall`, `len_out` still holds the required length.
///
/// # Safety
/// `buffer` must hold `capacity` writable entries; other pointers valid.
#[no_mangle]
pub unsafe extern "C" fn zhat_truth_set(
    a: *const ZhatElement,
    predicate: ZhatPredicate,
    buffer: *mut u64,
    capacity: usize,
    len_out: *mut usize,
    certain_out: *mut bool,
) -> ZhatStatus {
    guard(|| {
        let a = &borrow(a, "a")?.0;
        let predicate = match predicate {
            ZhatPredicate::IsZero => Predicate::IsZero,
            ZhatPredicate::InMaximal => Predicate::InMaximal,
            ZhatPredicate::IsUnit => Predicate::IsUnit,
        };
        let t = truth_set(a, predicate);
        *out(certain_out, "certain_out")? = t.certain;
        let members: Vec<u64> = t.members.into_iter().collect();
        write_buffer(&members, buffer, capacity, len_out)
    })
}

/// The multiplier `g` with `f*g = 1 - e_X`, and the locus `X`.
///
/// # Safety
/// `buffer` must hold `capacity` writable entries; other pointers valid.
#[no_mangle]
pub unsafe extern "C" fn zhat_division_witness(
    a: *const ZhatElement,
    out_multiplier: *mut *mut ZhatElement,
    buffer: *mut u64,
    capacity: usize,
    len_out: *mut usize,
) -> ZhatStatus {
    guard(|| {
        let a = &borrow(a, "a")?.0;
        let slot = out(out_multiplier, "out_multiplier")?;
        let w = division_witness(a);
        let locus: Vec<u64> = w.locus.iter().copied().collect();
        write_buffer(&locus, buffer, capacity, len_out)?;
        *slot = Box::into_raw(Box::new(ZhatElement(w.multiplier)));
        Ok(())
    })
}

/// The ideal generated by `count` elements of `context`.
///
/// # Safety
/// `generators` must hold `count` valid element pointers.
#[no_mangle]
pub unsafe extern "C" fn zhat_ideal_new(
    context: *const ZhatContext,
    generators: *const *const ZhatElement,
    count: usize,
    out_ideal: *mut *mut ZhatIdeal,
) -> ZhatStatus {
    guard(|| {
        let ctx = &borrow(context, "context")?.0;
        let handles = input_slice(generators, count, "generators")?;
        let slot = out(out_ideal, "out_ideal")?;
        let gens = handles
            .iter()
            .map(|&g| borrow(g, "generator").map(|g| g.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let ideal = FinGenIdeal::generated_by(ctx, &gens).map_err(fail)?;
        *slot = Box::into_raw(Box::new(ZhatIdeal(ideal)));
        Ok(())
    })
}

/// # Safety
/// `ideal` must come from [`zhat_ideal_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zhat_ideal_free(ideal: *mut ZhatIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Membership with a certainty flag; uncertain answers depend on digits
/// beyond the precision.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zhat_ideal_contains(
    ideal: *const ZhatIdeal,
    element: *const ZhatElement,
    member_out: *mut bool,
    certain_out: *mut bool,
) -> ZhatStatus {
    guard(|| {
        let ideal = &borrow(ideal, "ideal")?.0;
        let f = &borrow(element, "element")?.0;
        let verdict = ideal.membership(f).map_err(fail)?;
        *out(member_out, "member_out")? = verdict.member;
        *out(certain_out, "certain_out")? = verdict.certain;
        Ok(())
    })
}

/// Whether the ideal is a point of Spec R, and which.
///
/// # Safety
/// Pointers must be valid; `prime_out` is written only for primes.
#[no_mangle]
pub unsafe extern "C" fn zhat_ideal_classify(
    ideal: *const ZhatIdeal,
    kind_out: *mut ZhatPrimeKind,
    prime_out: *mut u64,
) -> ZhatStatus {
    guard(|| {
        let ideal = &borrow(ideal, "ideal")?.0;
        let kind = out(kind_out, "kind_out")?;
        *kind = match is_prime(ideal) {
            None => ZhatPrimeKind::NotPrime,
            Some(x) => {
                *out(prime_out, "prime_out")? = x.prime;
                match x.level {
                    Level::Minimal => ZhatPrimeKind::Minimal,
                    Level::Maximal => ZhatPrimeKind::Maximal,
                }
            }
        };
        Ok(())
    })
}

/// Hensel-lifts a simple root of `sum coeffs[i] x^i` from `a0` in `Z_p`
/// at precision `N`; the root is returned as a decimal residue string.
///
/// # Safety
/// `coeffs` must hold `len` entries; `out_residue` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zhat_hensel_lift(
    prime: u64,
    precision: u32,
    coeffs: *const i64,
    len: usize,
    a0: i64,
    out_residue: *mut *mut c_char,
) -> ZhatStatus {
    guard(|| {
        let coeffs = input_slice(coeffs, len, "coeffs")?;
        let slot = out(out_residue, "out_residue")?;
        let zp = Zp::new(prime, precision).map_err(fail)?;
        let root = hensel_lift(&Polynomial::from_i64s(coeffs), &zp.element(a0)).map_err(fail)?;
        *slot = to_c_string(root.residue().to_string());
        Ok(())
    })
}

/// Runs one suite (or all when `suite` is null) and returns the text
/// report. A failed verification returns `VerificationFailed` and still
/// writes the report.
///
/// # Safety
/// `suite` must be null or a valid C string; other pointers valid.
#[no_mangle]
pub unsafe extern "C" fn zhat_verify(
    context: *const ZhatContext,
    seed: u64,
    suite: *const c_char,
    out_report: *mut *mut c_char,
) -> ZhatStatus {
    guard(|| {
        let ctx = &borrow(context, "context")?.0;
        let slot = out(out_report, "out_report")?;
        let selection = if suite.is_null() {
            Vec::new()
        } else {
            let name = CStr::from_ptr(suite)
                .to_str()
                .map_err(|_| (ZhatStatus::InvalidArgument, "`suite` is not UTF-8".to_string()))?;
            vec![name.to_string()]
        };
        let report = verify::run(&VerifyConfig::new(ctx.clone(), seed), &selection).map_err(fail)?;
        *slot = to_c_string(report.to_text());
        if report.passed() {
            Ok(())
        } else {
            Err((ZhatStatus::VerificationFailed, "verification failed".to_string()))
        }
    })
}
