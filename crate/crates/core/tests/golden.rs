//! Byte-for-byte comparison of rendered files against committed goldens.
//!
//! Regenerate with `cargo test -p tribrot --test golden -- --ignored`, then
//! inspect the images before committing.

use std::path::PathBuf;

use sha2::{Digest, Sha256};
use tribrot::io::{octahedron_obj_string, ppm_bytes, vox_bytes};
use tribrot::raster::{scan2d, scan3d, Plane};
use tribrot::{OctahedronSpec, SliceSpec, Window2D, Window3D};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn small_goldens() -> Vec<(&'static str, Vec<u8>)> {
    let m3 = scan2d(Plane::MultibrotComplex, 3, &Window2D::square(-1.5, 1.5, 64).unwrap(), 1000).unwrap();
    let h3 = scan2d(Plane::Hyperbrot, 3, &Window2D::square(-1.0, 1.0, 64).unwrap(), 1000).unwrap();
    let p3 = scan3d(&SliceSpec::PERPLEX, 3, &Window3D::cube(-1.0, 1.0, 24).unwrap(), 1000).unwrap();
    vec![
        ("m3_64.ppm", ppm_bytes(&m3)),
        ("h3_64.ppm", ppm_bytes(&h3)),
        ("p3_24.vox", vox_bytes(&p3)),
        (
            "octahedron_p3.obj",
            octahedron_obj_string(&OctahedronSpec::for_power(3).unwrap()).into_bytes(),
        ),
    ]
}

fn h3_512_digest() -> String {
    let r = scan2d(Plane::Hyperbrot, 3, &Window2D::square(-1.0, 1.0, 512).unwrap(), 1000).unwrap();
    Sha256::digest(ppm_bytes(&r)).iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn small_files_match() {
    for (name, bytes) in small_goldens() {
        let want = std::fs::read(golden_dir().join(name)).unwrap();
        assert!(want == bytes, "{name} differs from golden");
    }
}

#[test]
fn h3_512_digest_matches() {
    let want = std::fs::read_to_string(golden_dir().join("h3_512.ppm.sha256")).unwrap();
    assert_eq!(want.split_whitespace().next(), Some(h3_512_digest().as_str()));
}

#[test]
fn renders_are_stable_across_runs() {
    assert_eq!(small_goldens(), small_goldens());
}

#[test]
#[ignore]
fn regenerate() {
    for (name, bytes) in small_goldens() {
        std::fs::write(golden_dir().join(name), bytes).unwrap();
    }
    std::fs::write(golden_dir().join("h3_512.ppm.sha256"), format!("{}  h3_512.ppm\n", h3_512_digest())).unwrap();
}
