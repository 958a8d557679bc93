//! File formats.
//!
//! `GRD1` grid files: the ASCII line `GRD1`, a one-line JSON header
//! `{"dims":[...],"origin":[...],"spacing":h}`, then `prod(dims)` little-endian
//! IEEE-754 doubles in row-major order. Sets use the same layout with values
//! in {0.0, 1.0}. Polygons and contractions are plain JSON documents.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::grid::{Grid, GridFunction, GridSet};
use crate::error::{Result, SymmError};

pub const GRD1_MAGIC: &str = "GRD1";

#[derive(Serialize, Deserialize)]
struct Header {
    dims: Vec<usize>,
    origin: Vec<f64>,
    spacing: f64,
}

pub fn write_grd1<W: Write>(mut w: W, f: &GridFunction) -> Result<()> {
    let g = f.grid();
    let header = Header { dims: g.dims().to_vec(), origin: g.origin().to_vec(), spacing: g.spacing() };
    writeln!(w, "{GRD1_MAGIC}")?;
    serde_json::to_writer(&mut w, &header)?;
    writeln!(w)?;
    let mut buf = Vec::with_capacity(8 * f.values().len());
    for v in f.values() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_grd1<R: Read>(r: R) -> Result<GridFunction> {
    let mut r = BufReader::new(r);
    let mut line = String::new();
    r.read_line(&mut line)?;
    if line.trim_end_matches(['\n', '\r']) != GRD1_MAGIC {
        return Err(SymmError::Format(format!("expected magic {GRD1_MAGIC}, got {:?}", line.trim_end())));
    }
    line.clear();
    r.read_line(&mut line)?;
    let header: Header =
        serde_json::from_str(line.trim_end()).map_err(|e| SymmError::Format(format!("bad GRD1 header: {e}")))?;
    let grid = Grid::new(header.dims, header.origin, header.spacing)?;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() != 8 * grid.len() {
        return Err(SymmError::Format(format!("expected {} payload bytes, found {}", 8 * grid.len(), bytes.len())));
    }
    let values = bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8"))).collect();
    GridFunction::new(grid, values)
}

pub fn save_function(path: impl AsRef<Path>, f: &GridFunction) -> Result<()> {
    let mut buf = Vec::new();
    write_grd1(&mut buf, f)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn load_function(path: impl AsRef<Path>) -> Result<GridFunction> {
    read_grd1(fs::File::open(path)?)
}

pub fn save_set(path: impl AsRef<Path>, a: &GridSet) -> Result<()> {
    save_function(path, &a.indicator())
}

pub fn load_set(path: impl AsRef<Path>) -> Result<GridSet> {
    GridSet::from_indicator(&load_function(path)?)
}

pub fn load_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn save_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConvexPolygon, PLContraction};
    use proptest::prelude::*;

    #[test]
    fn header_layout() {
        let g = Grid::new(vec![2, 1], vec![-1.0, 0.5], 0.25).unwrap();
        let f = GridFunction::new(g, vec![1.5, -2.0]).unwrap();
        let mut buf = Vec::new();
        write_grd1(&mut buf, &f).unwrap();
        let text_end = buf.len() - 16;
        assert_eq!(
            std::str::from_utf8(&buf[..text_end]).unwrap(),
            "GRD1\n{\"dims\":[2,1],\"origin\":[-1.0,0.5],\"spacing\":0.25}\n"
        );
        assert_eq!(&buf[text_end..text_end + 8], &1.5f64.to_le_bytes());
    }

    #[test]
    fn rejects_truncated_payload_and_bad_magic() {
        let g = Grid::new(vec![3], vec![0.0], 1.0).unwrap();
        let f = GridFunction::new(g, vec![1.0, 2.0, 3.0]).unwrap();
        let mut buf = Vec::new();
        write_grd1(&mut buf, &f).unwrap();
        buf.pop();
        assert!(matches!(read_grd1(&buf[..]), Err(SymmError::Format(_))));
        assert!(matches!(read_grd1(&b"GRD2\n{}\n"[..]), Err(SymmError::Format(_))));
    }

    #[test]
    fn set_files_hold_zero_one() {
        let g = Grid::new(vec![2], vec![0.0], 1.0).unwrap();
        let f = GridFunction::new(g, vec![0.0, 0.5]).unwrap();
        assert!(GridSet::from_indicator(&f).is_err());
    }

    #[test]
    fn polygon_and_contraction_json() {
        let p: ConvexPolygon = serde_json::from_str(r#"{"vertices":[[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(p.area(), 0.5);
        assert!(serde_json::from_str::<ConvexPolygon>(r#"{"vertices":[[0,0],[0,1],[1,0]]}"#).is_err());
        let c: PLContraction = serde_json::from_str(r#"{"breakpoints":[[-1,1],[0,0],[1,1]]}"#).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"breakpoints":[[-1.0,1.0],[0.0,0.0],[1.0,1.0]]}"#);
    }

    proptest! {
        #[test]
        fn grd1_round_trip_is_bit_exact(
            dims in prop::collection::vec(1usize..5, 1..4),
            seed in prop::collection::vec(-1e6f64..1e6, 64),
            spacing in 0.01f64..10.0,
        ) {
            let origin = dims.iter().map(|&d| -(d as f64)).collect();
            let g = Grid::new(dims, origin, spacing).unwrap();
            let values: Vec<f64> = (0..g.len()).map(|i| seed[i % seed.len()]).collect();
            let f = GridFunction::new(g, values).unwrap();
            let mut buf = Vec::new();
            write_grd1(&mut buf, &f).unwrap();
            let back = read_grd1(&buf[..]).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
