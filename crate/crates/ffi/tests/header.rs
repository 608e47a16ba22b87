use std::path::Path;
use std::process::Command;

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/realrank.h"))
            .unwrap();
    for name in [
        "realrank_form_parse",
        "realrank_form_free",
        "realrank_rank",
        "realrank_report_free",
        "realrank_report_to_json",
        "realrank_decompose_json",
        "realrank_string_free",
        "realrank_last_error",
        "REALRANK_STATUS_CERTIFICATION_FAILED",
        "typedef struct RealrankForm RealrankForm",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/smoke.c"))
        .status()
    else {
        eprintln!("no C compiler available; skipped");
        return;
    };
    assert!(status.success());
}
