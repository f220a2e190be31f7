//! Versioned JSON format for tensor trains.

use super::core::{Core, DenseCore, Matrix, Orientation, SparseCore};
use super::tensor::TtTensor;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "ctt";
pub const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TtFile {
    format: String,
    version: u32,
    d: usize,
    mode_sizes: Vec<usize>,
    ranks: Vec<usize>,
    middle_index: usize,
    cores: Vec<CoreFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<Option<MatrixFile>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum CoreFile {
    Sparse {
        orientation: Orientation,
        shape: [usize; 3],
        /// `(row, slice, col)` triples.
        entries: Vec<[u32; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        values: Option<Vec<f64>>,
    },
    Dense {
        shape: [usize; 3],
        data: Vec<f64>,
    },
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

pub fn to_json(t: &TtTensor) -> Result<String> {
    let cores = t
        .cores()
        .iter()
        .map(|c| match c {
            Core::Dense(d) => CoreFile::Dense { shape: d.shape(), data: d.data().to_vec() },
            Core::Sparse(s) => {
                let mut entries = Vec::with_capacity(s.nnz());
                let mut values = Vec::new();
                for i in 0..s.shape()[1] {
                    for (x, y, v) in s.entries(i) {
                        entries.push([x as u32, i as u32, y as u32]);
                        values.push(v);
                    }
                }
                CoreFile::Sparse {
                    orientation: s.orientation(),
                    shape: s.shape(),
                    entries,
                    values: if s.is_unit() { None } else { Some(values) },
                }
            }
        })
        .collect();
    let factors = t.has_factors().then(|| {
        t.factors()
            .iter()
            .map(|f| f.as_ref().map(|a| MatrixFile { rows: a.rows(), cols: a.cols(), data: a.data().to_vec() }))
            .collect()
    });
    let file = TtFile {
        format: FORMAT.into(),
        version: VERSION,
        d: t.dim(),
        mode_sizes: t.mode_sizes(),
        ranks: t.ranks().to_vec(),
        middle_index: t.middle(),
        cores,
        factors,
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn from_json(s: &str) -> Result<TtTensor> {
    let f: TtFile = serde_json::from_str(s)?;
    if f.format != FORMAT || f.version != VERSION {
        return Err(Error::Parse(format!("unsupported format {} version {}", f.format, f.version)));
    }
    let cores = f
        .cores
        .into_iter()
        .map(|c| match c {
            CoreFile::Dense { shape, data } => Ok(Core::Dense(DenseCore::new(shape, data)?)),
            CoreFile::Sparse { orientation, shape, entries, values } => {
                if values.as_ref().is_some_and(|v| v.len() != entries.len()) {
                    return Err(Error::Parse("sparse core values and entries differ in length".into()));
                }
                let mut slices: Vec<Vec<(u32, u32, f64)>> = vec![Vec::new(); shape[1]];
                for (p, [x, i, y]) in entries.into_iter().enumerate() {
                    let sl = slices
                        .get_mut(i as usize)
                        .ok_or_else(|| Error::Parse(format!("slice {i} outside core of shape {shape:?}")))?;
                    sl.push((x, y, values.as_ref().map_or(1.0, |v| v[p])));
                }
                Ok(Core::Sparse(SparseCore::with_values(shape, orientation, slices)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = TtTensor::new(cores, f.middle_index)?;
    if let Some(fs) = f.factors {
        let fs = fs
            .into_iter()
            .map(|m| m.map(|m| Matrix::new(m.rows, m.cols, m.data)).transpose())
            .collect::<Result<Vec<_>>>()?;
        t = t.with_factors(fs)?;
    }
    if t.dim() != f.d || t.ranks() != f.ranks.as_slice() || t.mode_sizes() != f.mode_sizes {
        return Err(Error::Parse("header disagrees with the stored cores".into()));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c0 = Core::Sparse(SparseCore::new([1, 2, 2], Orientation::Left, vec![vec![(0, 0)], vec![(0, 1)]]).unwrap());
        let c1 = Core::Dense(DenseCore::from_fn([2, 3, 1], |x, i, _| 0.1 * (x + i) as f64));
        let t = TtTensor::new(vec![c0, c1], 1)
            .unwrap()
            .with_factors(vec![None, Some(Matrix::new(3, 1, vec![1.0, -1.0, 0.5]).unwrap())])
            .unwrap();
        let s = to_json(&t).unwrap();
        assert_eq!(from_json(&s).unwrap(), t);
        assert_eq!(to_json(&from_json(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn bad_header_rejected() {
        let t = TtTensor::constant(&[2], 1.0).unwrap();
        let s = to_json(&t).unwrap().replace("\"d\":1", "\"d\":2");
        assert!(from_json(&s).is_err());
        assert!(from_json("{\"format\":\"other\"}").is_err());
    }
}
