use std::fs;
use std::io::{self, Write};
use std::path::Path;

use jcx_core::measures::{Extended, MeasureSet};

/// Shortest representation that parses back to the same double; very
/// small or large magnitudes use exponent notation.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        "nan".to_owned()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else if v != 0.0 && !(1e-5..1e16).contains(&v.abs()) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

pub fn ext(v: Extended) -> String {
    match v {
        Extended::Finite(x) => num(x),
        Extended::Infinite => "inf".to_owned(),
    }
}

/// Writes `content` to `path`, or to standard output.
pub fn emit(path: Option<&Path>, content: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, content),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()
        }
    }
}

pub fn measure_csv(m: &MeasureSet) -> String {
    let mut header = vec![
        "n",
        "alpha",
        "beta",
        "variance",
        "fisher",
        "shannon_E",
        "shannon_I",
        "shannon_S",
        "spreading_length",
        "w2",
        "c_cr",
        "c_fs",
        "c_lmc",
    ]
    .into_iter()
    .map(str::to_owned)
    .collect::<Vec<_>>();
    let mut row = vec![
        m.params.n().to_string(),
        num(m.params.alpha()),
        num(m.params.beta()),
        num(m.variance),
        ext(m.fisher),
        num(m.shannon_e),
        num(m.shannon_i),
        num(m.shannon_s),
        num(m.spreading_length),
        ext(m.w2),
        ext(m.c_cr),
        ext(m.c_fs),
        ext(m.c_lmc),
    ];
    for (p, v) in &m.lq_norms {
        header.push(format!("lq_norm_{p}"));
        row.push(num(*v));
    }
    for (key, v) in &m.errors {
        header.push(format!("error_{key}"));
        row.push(num(*v));
    }
    format!("{}\n{}\n", header.join(","), row.join(","))
}
