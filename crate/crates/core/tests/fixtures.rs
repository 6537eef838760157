//! Golden classifications stored in the `[expected]` block of every fixture.

use std::path::PathBuf;

use finspace::classify::{is_affine_certified, is_quasicoherent_space, is_schematic, is_semiseparated};
use finspace::cohomology::cohomology_report;
use finspace::format::load;
use finspace::homotopy::core;
use finspace::sheafmod::SheafModule;
use finspace::Verdict;

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    out.sort();
    out
}

#[test]
fn expected_blocks_match() {
    let mut checked = 0;
    for path in fixtures() {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let l = load(&path).unwrap();
        let Some(exp) = l.doc.expected.clone() else { continue };
        let x = l.doc.space().unwrap();
        let w = l.doc.window();
        let w = w.as_ref();
        let mut verdicts: Vec<Verdict> = Vec::new();
        let mut compare = |what: &str, want: Option<finspace::Value>, got: Verdict| {
            if let Some(v) = want {
                assert_eq!(got.value, v, "{}: {} ({:?})", name, what, got);
            }
            verdicts.push(got);
        };
        let fs = x.as_finite_space();
        compare("quasicoherent space", exp.quasicoherent_space, is_quasicoherent_space(fs.as_ref().unwrap(), w).unwrap());
        compare("schematic", exp.schematic, is_schematic(fs.as_ref().unwrap(), w).unwrap());
        compare("semiseparated", exp.semiseparated, is_semiseparated(fs.as_ref().unwrap(), w).unwrap());
        compare("affine", exp.affine, is_affine_certified(&x, w).unwrap());
        if let Some(h) = &exp.cohomology {
            let r = cohomology_report(&SheafModule::structure(&x), &(0..x.len()).collect::<Vec<_>>(), w).unwrap();
            let got: Vec<String> = r.degrees.iter().map(|d| d.to_string()).collect();
            // degrees past the listed ones must vanish
            let mut want = h.clone();
            want.resize(got.len().max(h.len()), "0".to_string());
            assert_eq!(got, want, "{}: cohomology", name);
        }
        if let Some(n) = exp.core_points {
            assert_eq!(core(&x).unwrap().core.len(), n, "{}: core", name);
        }
        if let Some(pts) = &exp.witness {
            let found = verdicts.iter().filter_map(|v| v.witness.as_ref()).any(|wit| &wit.points == pts);
            assert!(found, "{}: no verdict carries the witness {:?}", name, pts);
        }
        checked += 1;
    }
    assert!(checked >= 10, "only {} fixtures carry expectations", checked);
}
