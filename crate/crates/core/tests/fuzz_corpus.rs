//! Replays the checked-in fuzz seeds through the fuzz targets' oracles.

use std::fs;
use std::path::PathBuf;

use ribbon_core::{
    from_arrow_presentation, parse_ap, parse_rg, parse_rg_many, serialize_ap, serialize_rg, LaurentPoly, BR_VARS,
};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            let text = fs::read_to_string(&path).unwrap();
            (path, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn rg_seeds() {
    for (path, text) in seeds("parse_rg") {
        let graphs = parse_rg_many(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        for g in graphs {
            let canonical = serialize_rg(&g);
            assert_eq!(serialize_rg(&parse_rg(&canonical).unwrap()), canonical);
        }
    }
}

#[test]
fn ap_seeds() {
    for (path, text) in seeds("parse_ap") {
        let ap = parse_ap(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(parse_ap(&serialize_ap(&ap)).unwrap(), ap);
        from_arrow_presentation(&ap).unwrap();
    }
}

#[test]
fn poly_seeds() {
    for (path, text) in seeds("parse_poly") {
        let p = LaurentPoly::parse(&text, &BR_VARS).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(LaurentPoly::parse(&p.to_string(), &BR_VARS).unwrap(), p);
    }
}
