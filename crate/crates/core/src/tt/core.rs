use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which side of the middle core a sparse core came from.
///
/// `Left` cores carry at most one unit per row of each slice, `Right` cores at
/// most one unit per column. `General` makes no structural promise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Left,
    Right,
    General,
}

/// Sparse core stored slice by slice as `(row, col)` coordinate lists.
///
/// Without `values` every stored entry equals 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseCore {
    shape: [usize; 3],
    orientation: Orientation,
    slices: Vec<Vec<(u32, u32)>>,
    values: Option<Vec<Vec<f64>>>,
}

impl SparseCore {
    /// Unit-valued core. Entries in each slice are sorted and deduplicated.
    pub fn new(shape: [usize; 3], orientation: Orientation, mut slices: Vec<Vec<(u32, u32)>>) -> Result<Self> {
        if slices.len() != shape[1] {
            return Err(Error::ShapeMismatch(format!(
                "{} slices for a core of shape {:?}",
                slices.len(),
                shape
            )));
        }
        for s in &mut slices {
            s.sort_unstable();
            s.dedup();
            for &(x, y) in s.iter() {
                if x as usize >= shape[0] || y as usize >= shape[2] {
                    return Err(Error::ShapeMismatch(format!("entry ({x}, {y}) outside core of shape {shape:?}")));
                }
            }
        }
        Ok(SparseCore { shape, orientation, slices, values: None })
    }

    /// Core with explicit values; zero entries are dropped and duplicate
    /// coordinates summed.
    pub fn with_values(shape: [usize; 3], orientation: Orientation, slices: Vec<Vec<(u32, u32, f64)>>) -> Result<Self> {
        if slices.len() != shape[1] {
            return Err(Error::ShapeMismatch(format!(
                "{} slices for a core of shape {:?}",
                slices.len(),
                shape
            )));
        }
        let mut coords = Vec::with_capacity(slices.len());
        let mut vals = Vec::with_capacity(slices.len());
        let mut all_unit = true;
        for mut s in slices {
            s.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
            let mut c: Vec<(u32, u32)> = Vec::with_capacity(s.len());
            let mut v: Vec<f64> = Vec::with_capacity(s.len());
            for (x, y, val) in s {
                if x as usize >= shape[0] || y as usize >= shape[2] {
                    return Err(Error::ShapeMismatch(format!("entry ({x}, {y}) outside core of shape {shape:?}")));
                }
                if c.last() == Some(&(x, y)) {
                    *v.last_mut().unwrap() += val;
                } else {
                    c.push((x, y));
                    v.push(val);
                }
            }
            let mut cc = Vec::with_capacity(c.len());
            let mut vv = Vec::with_capacity(v.len());
            for (p, val) in c.into_iter().zip(v) {
                if val != 0.0 {
                    all_unit &= val == 1.0;
                    cc.push(p);
                    vv.push(val);
                }
            }
            coords.push(cc);
            vals.push(vv);
        }
        Ok(SparseCore {
            shape,
            orientation,
            slices: coords,
            values: if all_unit { None } else { Some(vals) },
        })
    }

    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Whether every stored value is 1.
    pub fn is_unit(&self) -> bool {
        self.values.is_none()
    }

    pub fn coords(&self, slice: usize) -> &[(u32, u32)] {
        &self.slices[slice]
    }

    pub fn values(&self, slice: usize) -> Option<&[f64]> {
        self.values.as_ref().map(|v| v[slice].as_slice())
    }

    /// `(row, col, value)` triples of one slice.
    pub fn entries(&self, slice: usize) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let vals = self.values(slice);
        self.slices[slice]
            .iter()
            .enumerate()
            .map(move |(p, &(x, y))| (x as usize, y as usize, vals.map_or(1.0, |v| v[p])))
    }

    pub fn nnz(&self) -> usize {
        self.slices.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> DenseCore {
        let mut d = DenseCore::zeros(self.shape);
        for i in 0..self.shape[1] {
            for (x, y, v) in self.entries(i) {
                *d.get_mut(x, i, y) += v;
            }
        }
        d
    }

    /// Checks the one-unit-per-row (left) or per-column (right) property.
    pub fn has_selection_structure(&self) -> bool {
        if !self.is_unit() {
            return false;
        }
        match self.orientation {
            Orientation::General => false,
            Orientation::Left => self.slices.iter().all(|s| s.windows(2).all(|w| w[0].0 != w[1].0)),
            Orientation::Right => self.slices.iter().all(|s| {
                let mut cols: Vec<u32> = s.iter().map(|p| p.1).collect();
                cols.sort_unstable();
                cols.windows(2).all(|w| w[0] != w[1])
            }),
        }
    }
}

/// Dense core with row-major `(row, slice, col)` storage.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseCore {
    shape: [usize; 3],
    data: Vec<f64>,
}

impl DenseCore {
    pub fn new(shape: [usize; 3], data: Vec<f64>) -> Result<Self> {
        if data.len() != shape[0] * shape[1] * shape[2] {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a core of shape {:?}",
                data.len(),
                shape
            )));
        }
        Ok(DenseCore { shape, data })
    }

    pub fn zeros(shape: [usize; 3]) -> Self {
        DenseCore { shape, data: vec![0.0; shape[0] * shape[1] * shape[2]] }
    }

    /// Builds a core from `f(row, slice, col)`.
    pub fn from_fn(shape: [usize; 3], f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(shape[0] * shape[1] * shape[2]);
        for x in 0..shape[0] {
            for i in 0..shape[1] {
                for y in 0..shape[2] {
                    data.push(f(x, i, y));
                }
            }
        }
        DenseCore { shape, data }
    }

    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, i: usize, y: usize) -> f64 {
        self.data[(x * self.shape[1] + i) * self.shape[2] + y]
    }

    #[inline]
    pub fn get_mut(&mut self, x: usize, i: usize, y: usize) -> &mut f64 {
        let [_, n, c] = self.shape;
        &mut self.data[(x * n + i) * c + y]
    }

    /// Nonzero `(row, col, value)` triples of one slice.
    pub fn entries(&self, slice: usize) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let [r, _, c] = self.shape;
        (0..r).flat_map(move |x| (0..c).map(move |y| (x, y, self.get(x, slice, y)))).filter(|e| e.2 != 0.0)
    }
}

/// One TT core.
#[derive(Clone, Debug, PartialEq)]
pub enum Core {
    Sparse(SparseCore),
    Dense(DenseCore),
}

impl Core {
    pub fn shape(&self) -> [usize; 3] {
        match self {
            Core::Sparse(s) => s.shape(),
            Core::Dense(d) => d.shape(),
        }
    }

    pub fn to_dense(&self) -> DenseCore {
        match self {
            Core::Sparse(s) => s.to_dense(),
            Core::Dense(d) => d.clone(),
        }
    }

    /// Nonzero `(row, col, value)` triples of one slice.
    pub fn entries(&self, slice: usize) -> Vec<(usize, usize, f64)> {
        match self {
            Core::Sparse(s) => s.entries(slice).collect(),
            Core::Dense(d) => d.entries(slice).collect(),
        }
    }

    pub fn as_sparse(&self) -> Option<&SparseCore> {
        match self {
            Core::Sparse(s) => Some(s),
            Core::Dense(_) => None,
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, Core::Dense(_))
    }
}

/// Row-major real matrix, used for TT-Tucker factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} values for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Matrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_to_dense_round_trip() {
        let c = SparseCore::new([2, 2, 3], Orientation::Left, vec![vec![(0, 2), (1, 0)], vec![(1, 1)]]).unwrap();
        let d = c.to_dense();
        assert_eq!(d.get(0, 0, 2), 1.0);
        assert_eq!(d.get(1, 1, 1), 1.0);
        assert_eq!(d.data().iter().sum::<f64>(), 3.0);
        assert!(c.has_selection_structure());
    }

    #[test]
    fn left_structure_detects_two_units_in_a_row() {
        let c = SparseCore::new([1, 1, 2], Orientation::Left, vec![vec![(0, 0), (0, 1)]]).unwrap();
        assert!(!c.has_selection_structure());
        let r = SparseCore::new([1, 1, 2], Orientation::Right, vec![vec![(0, 0), (0, 1)]]).unwrap();
        assert!(r.has_selection_structure());
    }

    #[test]
    fn values_drop_zeros_and_detect_units() {
        let c = SparseCore::with_values([1, 1, 2], Orientation::General, vec![vec![(0, 0, 1.0), (0, 1, 0.0)]]).unwrap();
        assert!(c.is_unit());
        assert_eq!(c.nnz(), 1);
        let c = SparseCore::with_values([1, 1, 2], Orientation::General, vec![vec![(0, 0, 2.0), (0, 0, 1.0)]]).unwrap();
        assert_eq!(c.entries(0).collect::<Vec<_>>(), vec![(0, 0, 3.0)]);
    }

    #[test]
    fn out_of_bounds_entry_rejected() {
        assert!(SparseCore::new([1, 1, 1], Orientation::Left, vec![vec![(0, 1)]]).is_err());
        assert!(DenseCore::new([1, 2, 1], vec![1.0]).is_err());
    }
}
