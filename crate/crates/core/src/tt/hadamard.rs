use super::core::{Core, DenseCore, Orientation, SparseCore};
use super::tensor::TtTensor;
use crate::error::{Error, Result};

/// Entrywise product. Result ranks are the products of the operand ranks;
/// slices are Kronecker products of the operand slices. Factors are applied
/// first.
pub fn hadamard(a: &TtTensor, b: &TtTensor) -> Result<TtTensor> {
    if a.mode_sizes() != b.mode_sizes() {
        return Err(Error::ShapeMismatch(format!(
            "mode sizes {:?} and {:?} differ",
            a.mode_sizes(),
            b.mode_sizes()
        )));
    }
    let a = a.apply_factors()?;
    let b = b.apply_factors()?;
    let cores = a
        .cores()
        .iter()
        .zip(b.cores())
        .map(|(x, y)| kron_core(x, y))
        .collect::<Result<Vec<_>>>()?;
    TtTensor::new(cores, a.middle())
}

fn kron_core(a: &Core, b: &Core) -> Result<Core> {
    let [ra, n, ca] = a.shape();
    let [rb, _, cb] = b.shape();
    let shape = [ra * rb, n, ca * cb];
    match (a, b) {
        (Core::Dense(da), Core::Dense(db)) => Ok(Core::Dense(DenseCore::from_fn(shape, |x, i, y| {
            da.get(x / rb, i, y / cb) * db.get(x % rb, i, y % cb)
        }))),
        (Core::Sparse(sa), Core::Sparse(sb)) if sa.is_unit() && sb.is_unit() => {
            let o = if sa.orientation() == sb.orientation() { sa.orientation() } else { Orientation::General };
            let slices = (0..n)
                .map(|i| {
                    let mut v = Vec::with_capacity(sa.coords(i).len() * sb.coords(i).len());
                    for &(xa, ya) in sa.coords(i) {
                        for &(xb, yb) in sb.coords(i) {
                            v.push((xa * rb as u32 + xb, ya * cb as u32 + yb));
                        }
                    }
                    v
                })
                .collect();
            Ok(Core::Sparse(SparseCore::new(shape, o, slices)?))
        }
        _ => {
            let mut nnz = 0usize;
            let slices: Vec<Vec<(u32, u32, f64)>> = (0..n)
                .map(|i| {
                    let ea = a.entries(i);
                    let eb = b.entries(i);
                    let mut v = Vec::with_capacity(ea.len() * eb.len());
                    for &(xa, ya, va) in &ea {
                        for &(xb, yb, vb) in &eb {
                            v.push(((xa * rb + xb) as u32, (ya * cb + yb) as u32, va * vb));
                        }
                    }
                    nnz += v.len();
                    v
                })
                .collect();
            let dense_size = shape[0] * shape[1] * shape[2];
            if nnz * 3 > dense_size {
                let mut d = DenseCore::zeros(shape);
                for (i, s) in slices.into_iter().enumerate() {
                    for (x, y, v) in s {
                        *d.get_mut(x as usize, i, y as usize) += v;
                    }
                }
                Ok(Core::Dense(d))
            } else {
                Ok(Core::Sparse(SparseCore::with_values(shape, Orientation::General, slices)?))
            }
        }
    }
}
