use super::spec::State;
use super::table::StateTable;
use crate::error::{Error, Result};
use ordered_float::OrderedFloat;

/// States that live on the real line, so nearby values can be merged.
pub trait RealState: State {
    fn to_f64(&self) -> f64;
    fn from_f64(v: f64) -> Self;
}

impl RealState for OrderedFloat<f64> {
    fn to_f64(&self) -> f64 {
        self.0
    }
    fn from_f64(v: f64) -> Self {
        OrderedFloat(v)
    }
}

/// How a cluster is replaced by a single representative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Average {
    /// Midpoint of the smallest and largest member.
    #[default]
    Midpoint,
    /// Arithmetic mean of the members.
    Mean,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ClusterOptions {
    /// Window width: a cluster starting at `v` takes every value below `v + eps`.
    pub eps: f64,
    /// If set, adjacent clusters are merged until at most this many remain.
    pub max_rank: Option<usize>,
    pub average: Average,
}

fn window_clusters<S: RealState>(values: &[S], eps: f64) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = Vec::new();
    let mut start = f64::NEG_INFINITY;
    for v in values {
        let x = v.to_f64();
        match out.last_mut() {
            Some(c) if x - start < eps => c.push(v.clone()),
            _ => {
                start = x;
                out.push(vec![v.clone()]);
            }
        }
    }
    out
}

fn cap_clusters<S: Clone>(clusters: Vec<Vec<S>>, max_rank: usize) -> Vec<Vec<S>> {
    let m = clusters.len();
    if m <= max_rank {
        return clusters;
    }
    let mut out = vec![Vec::new(); max_rank];
    for (j, c) in clusters.into_iter().enumerate() {
        out[j * max_rank / m].extend(c);
    }
    out
}

/// Groups close real states at every inner bond. The outer bonds hold the
/// seeds and are left alone.
pub fn cluster_states<S: RealState>(table: &StateTable<S>, opts: &ClusterOptions) -> Result<StateTable<S>> {
    if !(opts.eps >= 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be nonnegative, got {}", opts.eps)));
    }
    if opts.max_rank == Some(0) {
        return Err(Error::InvalidArgument("max_rank must be positive".into()));
    }
    let bonds = table.bonds();
    let mut reps = Vec::with_capacity(bonds);
    let mut sets = Vec::with_capacity(bonds);
    let mut exact = Vec::with_capacity(bonds);
    for j in 0..bonds {
        let im = table.image(j);
        if j == 0 || j + 1 == bonds {
            reps.push(im.to_vec());
            sets.push(im.iter().map(|s| vec![s.clone()]).collect());
            exact.push(true);
            continue;
        }
        let mut cl = window_clusters(im, opts.eps);
        if let Some(r) = opts.max_rank {
            cl = cap_clusters(cl, r);
        }
        let r: Vec<S> = cl
            .iter()
            .map(|c| {
                let v = match opts.average {
                    Average::Midpoint => 0.5 * (c[0].to_f64() + c[c.len() - 1].to_f64()),
                    Average::Mean => c.iter().map(RealState::to_f64).sum::<f64>() / c.len() as f64,
                };
                S::from_f64(v)
            })
            .collect();
        reps.push(r);
        sets.push(cl);
        exact.push(false);
    }
    Ok(StateTable::from_clusters(reps, sets, &exact))
}
