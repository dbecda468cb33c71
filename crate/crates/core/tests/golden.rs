//! Files shipped in `golden/` must match what the library produces. Run
//! with `UPDATE_GOLDEN=1` to rewrite them.

use sft_core::gallery::{self, parabola};
use sft_core::render::{render, Format, Palette, RenderSpec};
use sft_core::schema::{parse_schemas, serialize_schemas};
use sft_core::sft::{parse_sft, parse_wang, serialize_sft, serialize_wang};
use sft_core::{Coord, Rect};
use std::path::PathBuf;

fn check(name: &str, bytes: &[u8]) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, bytes).unwrap();
    }
    let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(want == bytes, "{name} differs from the golden file");
}

#[test]
fn sft_files() {
    let p = parabola::parabola_sft();
    check("parabola.sft", serialize_sft(&p).as_bytes());
    assert_eq!(parse_sft(&serialize_sft(&p)).unwrap(), p);
    let tiles = gallery::abc_tiles();
    check("abc.wang", serialize_wang(&tiles).as_bytes());
    assert_eq!(parse_wang(&serialize_wang(&tiles)).unwrap(), tiles);
    check("abc.sft", serialize_sft(&sft_core::sft::wang_to_sft(&tiles)).as_bytes());
    check("checkerboard.sft", serialize_sft(&gallery::checkerboard_sft()).as_bytes());
}

#[test]
fn schema_files() {
    for item in gallery::all() {
        let text = serialize_schemas(&item.presentation);
        check(&format!("{}.schemas", item.name), text.as_bytes());
        assert_eq!(parse_schemas(&text).unwrap(), item.presentation, "{}", item.name);
    }
}

#[test]
fn one_green_cell() {
    let item = gallery::by_name("one_orange").unwrap();
    let p = &item.presentation;
    let green = p.get(p.index_of("all_green").unwrap());
    let spec = RenderSpec {
        rect: Rect::new(Coord::ZERO, Coord::ZERO),
        palette: Palette::default_for(&p.alphabet),
        scale: 1,
        format: Format::Ppm,
    };
    let img = render(&p.alphabet, |c| green.eval(c), &spec).unwrap();
    assert_eq!(img, b"P6\n1 1\n255\n\x00\x80\x00");
    check("green_1x1.ppm", &img);
}
