//! C interface to `realrank`.
//!
//! Objects are opaque handles created and destroyed through this API.
//! Every fallible call returns a [`RealrankStatus`]; on failure a message is
//! kept per thread and can be read with [`realrank_last_error`]. Strings
//! handed out by the library are released with [`realrank_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use realrank::apolarity::ApolarProfile;
use realrank::json::{self, DecompositionJson, RankJson};
use realrank::real_rank::{
    admissible_label, rank_report, witness_for, Label, RankOptions, RankReport, SearchBudget,
};
use realrank::witness::{decompose, verify_decomposition};
use realrank::{BinaryForm, Error, HomForm};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealrankStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ZeroForm = 4,
    InvalidArgument = 5,
    LabelNotAchievable = 6,
    /// The answer could not be decided within the search budget.
    Inconclusive = 7,
    CertificationFailed = 8,
    OutOfRange = 9,
    Internal = 99,
}

/// A real binary form, kept at the scale it was given.
pub struct RealrankForm {
    input: HomForm,
    canonical: BinaryForm,
}

/// Ranks, witnesses and labels of one form.
pub struct RealrankReport {
    input: HomForm,
    report: RankReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> RealrankStatus {
    match e {
        Error::Parse(_) => RealrankStatus::ParseError,
        Error::ZeroForm | Error::ZeroPolynomial => RealrankStatus::ZeroForm,
        Error::LabelNotAchievable { .. } => RealrankStatus::LabelNotAchievable,
        Error::CertificationFailed { .. } => RealrankStatus::CertificationFailed,
        Error::DegreeOutOfRange { .. }
        | Error::TrivialKernel(_)
        | Error::WitnessTooLarge { .. } => RealrankStatus::OutOfRange,
        _ => RealrankStatus::InvalidArgument,
    }
}

struct Failure(RealrankStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RealrankStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> RealrankStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RealrankStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error (panic)");
            RealrankStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure(
            RealrankStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| {
        Failure(
            RealrankStatus::Internal,
            "string contains a NUL byte".into(),
        )
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn realrank_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static name of a status code, for example `"LABEL_NOT_ACHIEVABLE"`.
#[no_mangle]
pub extern "C" fn realrank_status_name(status: RealrankStatus) -> *const c_char {
    let name: &'static str = match status {
        RealrankStatus::Ok => "OK\0",
        RealrankStatus::NullPointer => "NULL_POINTER\0",
        RealrankStatus::InvalidUtf8 => "INVALID_UTF8\0",
        RealrankStatus::ParseError => "PARSE_ERROR\0",
        RealrankStatus::ZeroForm => "ZERO_FORM\0",
        RealrankStatus::InvalidArgument => "INVALID_ARGUMENT\0",
        RealrankStatus::LabelNotAchievable => "LABEL_NOT_ACHIEVABLE\0",
        RealrankStatus::Inconclusive => "INCONCLUSIVE\0",
        RealrankStatus::CertificationFailed => "CERTIFICATION_FAILED\0",
        RealrankStatus::OutOfRange => "OUT_OF_RANGE\0",
        RealrankStatus::Internal => "INTERNAL\0",
    };
    name.as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn realrank_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses comma-separated coefficients `c_0,...,c_d` ("p" or "p/q"), where
/// `c_i` multiplies `x^(d-i) y^i`.
///
/// # Safety
/// `coeffs` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn realrank_form_parse(
    coeffs: *const c_char,
    out: *mut *mut RealrankForm,
) -> RealrankStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let text = read_str(coeffs, "coeffs")?;
        let input = HomForm::parse(text)?;
        let canonical = input.canonical()?;
        write_out(
            out,
            Box::into_raw(Box::new(RealrankForm { input, canonical })),
        )
    })
}

/// # Safety
/// `form` must come from [`realrank_form_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn realrank_form_free(form: *mut RealrankForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Degree of the form, or 0 for a null handle.
///
/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn realrank_form_degree(form: *const RealrankForm) -> usize {
    form.as_ref().map_or(0, |f| f.canonical.degree())
}

/// Computes complex, admissible and real ranks and the labels at the
/// admissible rank.
///
/// # Safety
/// `form` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn realrank_rank(
    form: *const RealrankForm,
    out: *mut *mut RealrankReport,
) -> RealrankStatus {
    guard(|| {
        let form = form.as_ref().ok_or_else(|| null("form"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let report = rank_report(&form.canonical, &RankOptions::default())?;
        write_out(
            out,
            Box::into_raw(Box::new(RealrankReport {
                input: form.input.clone(),
                report,
            })),
        )
    })
}

/// # Safety
/// `report` must come from [`realrank_rank`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn realrank_report_free(report: *mut RealrankReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn realrank_report_complex_rank(
    report: *const RealrankReport,
    out: *mut usize,
) -> RealrankStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        write_out(out, r.report.complex_rank)
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn realrank_report_admissible_rank(
    report: *const RealrankReport,
    out: *mut usize,
) -> RealrankStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        write_out(out, r.report.admissible_rank)
    })
}

/// Bounds on the real rank; `lo == hi` when it is decided.
///
/// # Safety
/// `report` must be a live handle; `lo` and `hi` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn realrank_report_real_rank(
    report: *const RealrankReport,
    lo: *mut usize,
    hi: *mut usize,
) -> RealrankStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if lo.is_null() || hi.is_null() {
            return Err(null("output pointer"));
        }
        write_out(lo, r.report.real_rank.lower())?;
        write_out(hi, r.report.real_rank.upper())
    })
}

/// The real rank, or `INCONCLUSIVE` when it is only bracketed.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn realrank_report_real_rank_exact(
    report: *const RealrankReport,
    out: *mut usize,
) -> RealrankStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        match r.report.real_rank.exact() {
            Some(v) => write_out(out, v),
            None => Err(Failure(
                RealrankStatus::Inconclusive,
                format!("real rank bracket {}", r.report.real_rank),
            )),
        }
    })
}

/// Number of labels at the admissible rank.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn realrank_report_label_count(
    report: *const RealrankReport,
    out: *mut usize,
) -> RealrankStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        write_out(out, r.report.labels.labels.len())
    })
}

/// Label `index` (in increasing order of `a`) at the admissible rank.
///
/// # Safety
/// `report` must be a live handle; `s` and `a` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn realrank_report_label(
    report: *const RealrankReport,
    index: usize,
    s: *mut usize,
    a: *mut usize,
) -> RealrankStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if s.is_null() || a.is_null() {
            return Err(null("output pointer"));
        }
        let l = r.report.labels.labels().nth(index).ok_or_else(|| {
            Failure(
                RealrankStatus::OutOfRange,
                format!("no label at index {index}"),
            )
        })?;
        write_out(s, l.s)?;
        write_out(a, l.a)
    })
}

/// Whether the label list is known to be complete (1) or only sound (0).
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn realrank_report_labels_complete(
    report: *const RealrankReport,
    out: *mut bool,
) -> RealrankStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        write_out(out, r.report.labels.is_complete())
    })
}

/// The full report as JSON, in the same format as `realrank rank`.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer. Free the
/// string with [`realrank_string_free`].
#[no_mangle]
pub unsafe extern "C" fn realrank_report_to_json(
    report: *const RealrankReport,
    out: *mut *mut c_char,
) -> RealrankStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let text = json::to_string(&RankJson::new(&r.input, &r.report));
        write_out(out, to_c_string(text)?)
    })
}

/// Decomposes the form with the requested label and writes the certified
/// decomposition as JSON, in the same format as `realrank decompose`.
/// `s = 0` selects the admissible witness.
///
/// # Safety
/// `form` must be a live handle and `out` a valid pointer. Free the string
/// with [`realrank_string_free`].
#[no_mangle]
pub unsafe extern "C" fn realrank_decompose_json(
    form: *const RealrankForm,
    s: usize,
    a: usize,
    tol: f64,
    out: *mut *mut c_char,
) -> RealrankStatus {
    guard(|| {
        let form = form.as_ref().ok_or_else(|| null("form"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure(
                RealrankStatus::InvalidArgument,
                format!("tolerance must be positive, got {tol}"),
            ));
        }
        let profile = ApolarProfile::new(&form.canonical)?;
        let (label, witness) = if s == 0 {
            admissible_label(&profile)?
        } else {
            if 2 * a > s {
                return Err(Failure(
                    RealrankStatus::InvalidArgument,
                    format!("label ({s},{a}) needs 2a <= s"),
                ));
            }
            let label = Label::new(s, a);
            match witness_for(&profile, label, &SearchBudget::default())? {
                Some(g) => (label, g),
                None => {
                    return Err(Failure(
                        RealrankStatus::Inconclusive,
                        format!("label {label} not found; the search is incomplete"),
                    ))
                }
            }
        };
        let dec = decompose(&form.input, &witness, tol)?;
        let verification = verify_decomposition(&form.input, &dec, tol, Some(label));
        if !verification.passed {
            return Err(Failure(
                RealrankStatus::CertificationFailed,
                "decomposition did not verify".into(),
            ));
        }
        let text = json::to_string(&DecompositionJson::new(
            &form.input,
            label,
            &dec,
            verification,
        ));
        write_out(out, to_c_string(text)?)
    })
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn realrank_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
