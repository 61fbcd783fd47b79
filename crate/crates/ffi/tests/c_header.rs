//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/tnla.h")).unwrap();
    for name in [
        "typedef struct TnlaBd TnlaBd",
        "TNLA_STATUS_OK = 0",
        "tnla_bd_new(",
        "tnla_bd_free(",
        "tnla_solve(",
        "tnla_singular_values(",
        "tnla_last_error(",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    assert!(have_cc(), "a C compiler is required for this test");
    let lib = target_dir().join("libtnla_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("tnla_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
