use std::path::PathBuf;
use std::process::Command;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/ncpos.h")).unwrap();
    for name in [
        "NCPOS_STATUS_OK = 0",
        "typedef struct NcposElement NcposElement;",
        "ncpos_presentation_new(",
        "ncpos_element_parse(",
        "ncpos_sohs_search(",
        "ncpos_last_error(void)",
        "ncpos_string_free(",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libncpos_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe = dir.join("ncpos_c_smoke");
    let status = Command::new("cc")
        .arg(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/smoke.c"))
        .arg("-I")
        .arg(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("qp = (0+1*i)*p^0*q^0 + (1+0*i)*p^1*q^1"), "{stdout}");
    assert!(stdout.contains("sohs: 0"), "{stdout}");
    assert!(stdout.contains("parse error: 3"), "{stdout}");
}
