//! Browser demo: a torus explorer, the parabola's choice picture, and the
//! pre-order report of a schema file. Every export is a thin wrapper over a
//! plain function that the native tests call directly.

use sft_core::gallery::{self, parabola};
use sft_core::literal::format_cells;
use sft_core::order::{cb_rank, hasse};
use sft_core::render::{rgba, Palette};
use sft_core::schema::{parse_schemas, serialize_schemas};
use sft_core::sft::{parse_sft, serialize_sft};
use sft_core::solver::torus_solutions_capped;
use sft_core::{Cells, Coord, Lattice};
use std::fmt::Write;
use wasm_bindgen::prelude::*;

/// Solutions listed at most.
const SHOWN: usize = 16;
const CAP: u64 = 100_000;

pub fn torus_text(sft: &str, p1: (i64, i64), p2: (i64, i64)) -> Result<String, String> {
    let s = parse_sft(sft).map_err(|e| e.to_string())?;
    let (p1, p2) = (Coord::new(p1.0, p1.1), Coord::new(p2.0, p2.1));
    let l = Lattice::from_periods(p1, p2).map_err(|e| e.to_string())?;
    let t = torus_solutions_capped(&s, p1, p2, CAP).map_err(|e| e.to_string())?;
    let (u, v) = l.basis();
    let e = l.extent();
    let mut out = format!("lattice: {u} {v}\nsolutions: {}\n", t.len());
    for k in 0..t.len().min(SHOWN) {
        let cells: Cells = l.cells().map(|c| (c, t.eval(k, c))).collect();
        let _ = writeln!(out, "\n{}", format_cells(s.alphabet(), &cells, Coord::ZERO, Coord::new(e.w - 1, e.h - 1)));
    }
    if t.len() > SHOWN {
        let _ = writeln!(out, "\n({} more)", t.len() - SHOWN);
    }
    Ok(out)
}

/// `a`/`b` per hit, in order.
pub fn parabola_pixels(word: &str) -> Result<Vec<u8>, String> {
    let w = word
        .chars()
        .map(|c| match c {
            'a' => Ok(true),
            'b' => Ok(false),
            _ => Err(format!("`{c}` is not a choice; use a or b")),
        })
        .collect::<Result<Vec<bool>, String>>()?;
    let f = parabola::solve_word(&w).map_err(|e| e.to_string())?;
    let a = parabola::parabola_sft().alphabet().clone();
    rgba(&a, |c| f.get(c).expect("inside"), f.rect, &Palette::default_for(&a)).map_err(|e| e.to_string())
}

pub fn order_text(schemas: &str) -> Result<String, String> {
    let p = parse_schemas(schemas).map_err(|e| e.to_string())?;
    let mut out = String::from("hasse diagram\n");
    match hasse(&p, 2, 8) {
        Ok(h) => out.push_str(&h.render(&p)),
        Err(e) => {
            let _ = writeln!(out, "{e}");
        }
    }
    out.push_str("\ncantor-bendixson\n");
    match cb_rank(&p, 8, 8) {
        Ok(r) => out.push_str(&r.render(&p)),
        Err(e) => {
            let _ = writeln!(out, "{e}");
        }
    }
    Ok(out)
}

/// Schema file of a gallery item, and its SFT file when it has one.
pub fn gallery_files(name: &str) -> Result<(String, String), String> {
    let item = gallery::by_name(name).map_err(|e| e.to_string())?;
    let sft = item.subshift.as_ref().and_then(|x| x.as_sft()).map(serialize_sft).unwrap_or_default();
    Ok((serialize_schemas(&item.presentation), sft))
}

#[wasm_bindgen]
pub fn torus(sft: &str, p1x: i32, p1y: i32, p2x: i32, p2y: i32) -> Result<String, JsValue> {
    torus_text(sft, (p1x.into(), p1y.into()), (p2x.into(), p2y.into())).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn parabola_image(word: &str) -> Result<Vec<u8>, JsValue> {
    parabola_pixels(word).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn parabola_side() -> u32 {
    parabola::SIZE as u32
}

#[wasm_bindgen]
pub fn order_report(schemas: &str) -> Result<String, JsValue> {
    order_text(schemas).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn gallery_schemas(name: &str) -> Result<String, JsValue> {
    gallery_files(name).map(|f| f.0).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn gallery_sft(name: &str) -> Result<String, JsValue> {
    gallery_files(name).map(|f| f.1).map_err(|e| JsValue::from_str(&e))
}
