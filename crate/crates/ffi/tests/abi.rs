//! Drives the C ABI through its Rust signatures, as a C caller would.

use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use zhat_ffi::*;

fn context(primes: &[u64], n: u32) -> *mut ZhatContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(
        unsafe { zhat_context_new(primes.as_ptr(), primes.len(), n, &mut ctx) },
        ZhatStatus::Ok
    );
    ctx
}

fn element(ctx: *const ZhatContext, values: &[i64]) -> *mut ZhatElement {
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { zhat_element_from_i64(ctx, values.as_ptr(), values.len(), &mut f) },
        ZhatStatus::Ok
    );
    f
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { zhat_string_free(s) };
    text
}

fn last_error() -> String {
    let p = zhat_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn arithmetic_round_trip() {
    let ctx = context(&[2, 3, 5], 8);
    let (a, b) = (element(ctx, &[1, 2, 3]), element(ctx, &[4, 5, -1]));
    let (mut sum, mut prod, mut neg) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(zhat_element_add(a, b, &mut sum), ZhatStatus::Ok);
        assert_eq!(zhat_element_mul(a, b, &mut prod), ZhatStatus::Ok);
        assert_eq!(zhat_element_neg(a, &mut neg), ZhatStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(zhat_element_to_string(sum, &mut s), ZhatStatus::Ok);
        assert_eq!(
            take_string(s),
            r#"{"context":{"primes":[2,3,5],"N":8},"components":["5","7","2"]}"#
        );
        assert_eq!(zhat_element_to_string(prod, &mut s), ZhatStatus::Ok);
        assert!(take_string(s).ends_with(r#""components":["4","10","390622"]}"#));
        assert_eq!(zhat_element_to_string(neg, &mut s), ZhatStatus::Ok);
        assert!(take_string(s).ends_with(r#""components":["255","6559","390622"]}"#));
        for f in [a, b, sum, prod, neg] {
            zhat_element_free(f);
        }
        zhat_context_free(ctx);
    }
}

#[test]
fn truth_sets_and_witness() {
    let ctx = context(&[2, 3, 5], 12);
    let f = element(ctx, &[2, 3, 1]);
    let mut buf = [0u64; 3];
    let (mut len, mut certain, mut unit) = (0usize, false, true);
    unsafe {
        assert_eq!(
            zhat_truth_set(f, ZhatPredicate::InMaximal, buf.as_mut_ptr(), 3, &mut len, &mut certain),
            ZhatStatus::Ok
        );
        assert_eq!((&buf[..len], certain), (&[2, 3][..], true));
        assert_eq!(
            zhat_truth_set(f, ZhatPredicate::InMaximal, buf.as_mut_ptr(), 1, &mut len, &mut certain),
            ZhatStatus::BufferTooSmall
        );
        assert_eq!(len, 2);
        assert_eq!(zhat_element_is_unit(f, &mut unit), ZhatStatus::Ok);
        assert!(!unit);

        let mut g = ptr::null_mut();
        assert_eq!(
            zhat_division_witness(f, &mut g, buf.as_mut_ptr(), 3, &mut len),
            ZhatStatus::Ok
        );
        assert_eq!(&buf[..len], &[2, 3]);
        let mut fg = ptr::null_mut();
        assert_eq!(zhat_element_mul(f, g, &mut fg), ZhatStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(zhat_element_to_string(fg, &mut s), ZhatStatus::Ok);
        assert!(take_string(s).ends_with(r#""components":["0","0","1"]}"#));
        for e in [f, g, fg] {
            zhat_element_free(e);
        }
        zhat_context_free(ctx);
    }
}

#[test]
fn ideals_classify_and_contain() {
    let ctx = context(&[2, 3, 5], 12);
    unsafe {
        // 1 - e_3 generates the minimal prime over 3.
        let g = element(ctx, &[1, 0, 1]);
        let mut ideal = ptr::null_mut();
        let gens = [g as *const ZhatElement];
        assert_eq!(zhat_ideal_new(ctx, gens.as_ptr(), 1, &mut ideal), ZhatStatus::Ok);
        let (mut kind, mut prime) = (ZhatPrimeKind::NotPrime, 0u64);
        assert_eq!(zhat_ideal_classify(ideal, &mut kind, &mut prime), ZhatStatus::Ok);
        assert_eq!((kind, prime), (ZhatPrimeKind::Minimal, 3));

        let (inside, outside) = (element(ctx, &[7, 0, 2]), element(ctx, &[1, 9, 1]));
        let (mut member, mut certain) = (false, false);
        assert_eq!(
            zhat_ideal_contains(ideal, inside, &mut member, &mut certain),
            ZhatStatus::Ok
        );
        // Vanishing at 3 is only known to precision N, so the verdict is
        // flagged as precision-limited.
        assert!(member && !certain);
        assert_eq!(
            zhat_ideal_contains(ideal, outside, &mut member, &mut certain),
            ZhatStatus::Ok
        );
        assert!(!member);

        let mut not_prime = ptr::null_mut();
        let w = element(ctx, &[1, 9, 1]);
        let gens = [w as *const ZhatElement];
        assert_eq!(zhat_ideal_new(ctx, gens.as_ptr(), 1, &mut not_prime), ZhatStatus::Ok);
        assert_eq!(zhat_ideal_classify(not_prime, &mut kind, &mut prime), ZhatStatus::Ok);
        assert_eq!(kind, ZhatPrimeKind::NotPrime);

        for e in [g, inside, outside, w] {
            zhat_element_free(e);
        }
        zhat_ideal_free(ideal);
        zhat_ideal_free(not_prime);
        zhat_context_free(ctx);
    }
}

#[test]
fn hensel_and_errors() {
    let mut s = ptr::null_mut();
    let coeffs = [-2i64, 0, 1];
    unsafe {
        assert_eq!(zhat_hensel_lift(7, 3, coeffs.as_ptr(), 3, 3, &mut s), ZhatStatus::Ok);
        assert_eq!(take_string(s), "108");
        assert_eq!(
            zhat_hensel_lift(5, 8, coeffs.as_ptr(), 3, 1, &mut s),
            ZhatStatus::NotApproximateRoot
        );
        assert!(last_error().contains("does not vanish"));

        let mut ctx = ptr::null_mut();
        assert_eq!(
            zhat_context_new([2u64, 4].as_ptr(), 2, 8, &mut ctx),
            ZhatStatus::InvalidContext
        );
        assert!(last_error().contains('4'));
        assert_eq!(zhat_context_new(ptr::null(), 2, 8, &mut ctx), ZhatStatus::NullPointer);

        let (c1, c2) = (context(&[2, 3], 8), context(&[2, 5], 8));
        let (a, b) = (element(c1, &[1, 1]), element(c2, &[1, 1]));
        let mut sum = ptr::null_mut();
        assert_eq!(zhat_element_add(a, b, &mut sum), ZhatStatus::MixedContext);
        assert!(sum.is_null());
        let mut f = ptr::null_mut();
        assert_eq!(
            zhat_element_from_i64(c1, [1i64].as_ptr(), 1, &mut f),
            ZhatStatus::InvalidArgument
        );
        zhat_element_free(a);
        zhat_element_free(b);
        zhat_context_free(c1);
        zhat_context_free(c2);
    }
}

#[test]
fn verify_through_the_abi() {
    let ctx = context(&[2, 3, 5, 7], 24);
    let suite = CString::new("pm-ring").unwrap();
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(zhat_verify(ctx, 0, suite.as_ptr(), &mut report), ZhatStatus::Ok);
        assert!(take_string(report).contains("PASS pm-ring"));
        let bogus = CString::new("bogus").unwrap();
        assert_eq!(
            zhat_verify(ctx, 0, bogus.as_ptr(), &mut report),
            ZhatStatus::InvalidArgument
        );
        assert!(last_error().contains("suite"));
        zhat_context_free(ctx);
    }
}

#[test]
fn header_is_valid_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = format!("{dir}/include/zhat.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "zhat_context_new",
        "zhat_verify",
        "ZHAT_STATUS_OK",
        "typedef struct ZhatElement ZhatElement",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let src = std::env::temp_dir().join(format!("zhat-header-{}.c", std::process::id()));
    std::fs::write(
        &src,
        format!("#include \"{header}\"\nint main(void) {{ return ZHAT_STATUS_OK; }}\n"),
    )
    .unwrap();
    match Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .status()
    {
        Ok(status) => assert!(status.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler found; skipping compile check"),
    }
    let _ = std::fs::remove_file(&src);
}
