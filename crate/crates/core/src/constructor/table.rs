use super::spec::State;
use std::collections::HashMap;

#[derive(Clone, Debug)]
enum Lookup<S> {
    Exact(HashMap<S, usize>),
    /// Sorted lower bounds of consecutive clusters; a state belongs to the
    /// last cluster whose lower bound does not exceed it.
    Intervals(Vec<S>),
}

/// Reachable states per bond. Bond `j` sits between modes `j-1` and `j`, so
/// there are `d + 1` bonds and the outer two hold only the seeds.
#[derive(Clone, Debug)]
pub struct StateTable<S> {
    images: Vec<Vec<S>>,
    lookups: Vec<Lookup<S>>,
    clusters: Option<Vec<Vec<Vec<S>>>>,
}

impl<S: State> StateTable<S> {
    pub(crate) fn from_images(images: Vec<Vec<S>>) -> Self {
        let lookups = images
            .iter()
            .map(|im| Lookup::Exact(im.iter().enumerate().map(|(j, s)| (s.clone(), j)).collect()))
            .collect();
        StateTable { images, lookups, clusters: None }
    }

    /// Table whose bond `j` states are the representatives of `clusters[j]`.
    /// Clusters must be sorted and non-overlapping.
    pub(crate) fn from_clusters(reps: Vec<Vec<S>>, clusters: Vec<Vec<Vec<S>>>, exact_bonds: &[bool]) -> Self {
        let lookups = reps
            .iter()
            .zip(&clusters)
            .zip(exact_bonds)
            .map(|((r, cl), &exact)| {
                if exact {
                    Lookup::Exact(r.iter().enumerate().map(|(j, s)| (s.clone(), j)).collect())
                } else {
                    Lookup::Intervals(cl.iter().map(|c| c[0].clone()).collect())
                }
            })
            .collect();
        StateTable { images: reps, lookups, clusters: Some(clusters) }
    }

    /// Table with explicit set membership (used by preimage merging).
    pub(crate) fn from_sets(reps: Vec<Vec<S>>, sets: Vec<Vec<Vec<S>>>) -> Self {
        let lookups = sets
            .iter()
            .map(|cl| {
                let mut m = HashMap::new();
                for (j, c) in cl.iter().enumerate() {
                    for s in c {
                        m.insert(s.clone(), j);
                    }
                }
                Lookup::Exact(m)
            })
            .collect();
        StateTable { images: reps, lookups, clusters: Some(sets) }
    }

    /// Number of bonds, `d + 1`.
    pub fn bonds(&self) -> usize {
        self.images.len()
    }

    /// States (or cluster representatives) at bond `j`, in index order.
    pub fn image(&self, j: usize) -> &[S] {
        &self.images[j]
    }

    pub fn images(&self) -> &[Vec<S>] {
        &self.images
    }

    /// Cluster sets per bond, when the table was reduced.
    pub fn clusters(&self) -> Option<&[Vec<Vec<S>>]> {
        self.clusters.as_deref()
    }

    /// Sizes of every bond, i.e. the ranks a built tensor will have.
    pub fn ranks(&self) -> Vec<usize> {
        self.images.iter().map(Vec::len).collect()
    }

    /// Index of the state (or of its cluster) at bond `j`.
    pub fn index_of(&self, j: usize, s: &S) -> Option<usize> {
        match &self.lookups[j] {
            Lookup::Exact(m) => m.get(s).copied(),
            Lookup::Intervals(bounds) => {
                let p = bounds.partition_point(|b| b <= s);
                Some(p.saturating_sub(1))
            }
        }
    }
}
