use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use domgame_ffi::*;

fn last_error() -> String {
    let p = dg_last_error();
    assert!(!p.is_null(), "a failed call leaves a message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn graph(n: usize, edges: &[(u32, u32)]) -> *mut DgGraph {
    let flat: Vec<u32> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut g = ptr::null_mut();
    let status = unsafe { dg_graph_from_edges(n, flat.as_ptr(), edges.len(), &mut g) };
    assert_eq!(status, DgStatus::Ok);
    g
}

fn instance(text: &str) -> Result<*mut DgInstance, DgStatus> {
    let text = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    match unsafe { dg_instance_parse(text.as_ptr(), &mut inst) } {
        DgStatus::Ok => Ok(inst),
        s => Err(s),
    }
}

#[test]
fn closed_forms() {
    let mut out = DgOutcome::AliceWin;
    unsafe {
        assert_eq!(dg_cycle_outcome(10, &mut out), DgStatus::Ok);
        assert_eq!(out, DgOutcome::Draw);
        assert_eq!(dg_cycle_outcome(12, &mut out), DgStatus::Ok);
        assert_eq!(out, DgOutcome::AliceWin);
        assert_eq!(dg_path_outcome(9, &mut out), DgStatus::Ok);
        assert_eq!(out, DgOutcome::AliceWin);
        assert_eq!(dg_cycle_outcome(2, &mut out), DgStatus::InvalidArgument);
        assert!(last_error().contains('2'));
        assert_eq!(dg_path_outcome(0, &mut out), DgStatus::InvalidArgument);
        assert_eq!(dg_path_outcome(5, ptr::null_mut()), DgStatus::NullPointer);
    }
}

#[test]
fn success_clears_the_last_error() {
    let mut out = DgOutcome::Draw;
    unsafe {
        assert_eq!(dg_cycle_outcome(1, &mut out), DgStatus::InvalidArgument);
        assert!(!dg_last_error().is_null());
        assert_eq!(dg_cycle_outcome(5, &mut out), DgStatus::Ok);
        assert!(dg_last_error().is_null());
    }
}

#[test]
fn forest_outcome_and_trace() {
    // two centres joined, each with two legs of length two
    let spiders = graph(
        10,
        &[
            (0, 1),
            (0, 2),
            (2, 3),
            (0, 4),
            (4, 5),
            (1, 6),
            (6, 7),
            (1, 8),
            (8, 9),
        ],
    );
    let mut out = DgOutcome::AliceWin;
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(dg_graph_vertex_count(spiders), 10);
        assert_eq!(dg_forest_outcome(spiders, &mut out), DgStatus::Ok);
        assert_eq!(out, DgOutcome::Draw);
        assert_eq!(dg_forest_explain_json(spiders, &mut json), DgStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        dg_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["outcome"], "D");
        dg_graph_free(spiders);
    }

    let triangle = graph(3, &[(0, 1), (1, 2), (2, 0)]);
    unsafe {
        assert_eq!(dg_forest_outcome(triangle, &mut out), DgStatus::NotForest);
        assert!(last_error().contains("forest"));
        dg_graph_free(triangle);
    }
}

#[test]
fn bad_edge_lists() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            dg_graph_from_edges(2, [0u32, 5].as_ptr(), 1, &mut g),
            DgStatus::Parse
        );
        assert_eq!(
            dg_graph_from_edges(2, [1u32, 1].as_ptr(), 1, &mut g),
            DgStatus::Parse
        );
        assert_eq!(
            dg_graph_from_edges(2, ptr::null(), 1, &mut g),
            DgStatus::NullPointer
        );
        assert_eq!(dg_graph_from_edges(2, ptr::null(), 0, &mut g), DgStatus::Ok);
        assert_eq!(dg_graph_vertex_count(g), 2);
        dg_graph_free(g);
        dg_graph_free(ptr::null_mut());
    }
}

#[test]
fn instances_through_solver_and_oracle() {
    let c10 = {
        let mut s = String::from("p 10 10\n");
        for i in 0..10 {
            s.push_str(&format!("e {} {}\n", i, (i + 1) % 10));
        }
        s
    };
    let inst = instance(&c10).unwrap();
    let mut outcome = DgOutcome::AliceWin;
    let mut value = DgValue::AliceWin;
    unsafe {
        assert_eq!(dg_instance_solve(inst, 14, &mut outcome), DgStatus::Ok);
        assert_eq!(outcome, DgOutcome::Draw);
        assert_eq!(dg_instance_oracle(inst, 14, &mut value), DgStatus::Ok);
        assert_eq!(value, DgValue::Draw);
        assert_eq!(dg_instance_oracle(inst, 5, &mut value), DgStatus::Guard);
        assert!(last_error().contains("limit"));
        let mut g = ptr::null_mut();
        assert_eq!(dg_instance_graph(inst, &mut g), DgStatus::Ok);
        assert_eq!(dg_graph_vertex_count(g), 10);
        dg_graph_free(g);
        dg_instance_free(inst);
    }

    // Bob to move on a three-vertex path takes the middle and dominates at once
    let inst = instance("p 3 2\ne 0 1\ne 1 2\na 0\nt B\n").unwrap();
    unsafe {
        assert_eq!(dg_instance_oracle(inst, 14, &mut value), DgStatus::Ok);
        assert_eq!(value, DgValue::BobWin);
        assert_eq!(dg_instance_solve(inst, 14, &mut outcome), DgStatus::Ok);
        assert_eq!(outcome, DgOutcome::Draw);
        dg_instance_free(inst);
    }

    assert_eq!(instance("p 3 2\ne 0 1\n").unwrap_err(), DgStatus::Parse);
    assert!(last_error().starts_with("line"));
    let mut inst = ptr::null_mut();
    unsafe {
        assert_eq!(
            dg_instance_parse(ptr::null(), &mut inst),
            DgStatus::NullPointer
        );
        assert_eq!(
            dg_instance_solve(ptr::null(), 14, &mut outcome),
            DgStatus::NullPointer
        );
    }
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/domgame.h")).unwrap();
    for name in [
        "dg_last_error",
        "dg_graph_from_edges",
        "dg_graph_free",
        "dg_graph_vertex_count",
        "dg_instance_parse",
        "dg_instance_free",
        "dg_instance_graph",
        "dg_forest_outcome",
        "dg_forest_explain_json",
        "dg_path_outcome",
        "dg_cycle_outcome",
        "dg_instance_solve",
        "dg_instance_oracle",
        "dg_string_free",
        "typedef struct DgGraph DgGraph",
        "DG_STATUS_GUARD = 4",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles a small C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libdomgame_ffi.a");
    assert!(lib.exists(), "static library at {}", lib.display());
    let out_dir = std::env::temp_dir().join(format!("domgame-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let src = out_dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "domgame.h"

int main(void) {
    uint32_t edges[] = {0, 1, 1, 2, 2, 3};
    DgGraph *g = NULL;
    DgOutcome o;
    if (dg_graph_from_edges(4, edges, 3, &g) != DG_STATUS_OK) return 1;
    if (dg_forest_outcome(g, &o) != DG_STATUS_OK) return 2;
    dg_graph_free(g);
    if (dg_cycle_outcome(13, &o) != DG_STATUS_OK || o != DG_OUTCOME_DRAW) return 3;
    if (dg_cycle_outcome(2, &o) != DG_STATUS_INVALID_ARGUMENT) return 4;
    printf("%s\n", dg_last_error());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = out_dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is installed");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert!(!String::from_utf8_lossy(&run.stdout).trim().is_empty());
}
