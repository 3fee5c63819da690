use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Digraph, Graph};
use crate::error::{Error, Result};

/// Random digraph where each ordered pair `(u, v)`, `u != v`, is an arc
/// independently with probability `p`. Pairs are drawn in row-major order
/// from a ChaCha8 stream seeded with `seed`, so the result depends only on
/// `(n, p, seed)`.
pub fn sample_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_digraph_with(n, p, &mut rng)
}

pub(crate) fn sample_digraph_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Digraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("probability must lie in [0,1], got {p}")));
    }
    let mut d = Digraph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random::<f64>() < p {
                d.add_arc(u, v);
            }
        }
    }
    Ok(d)
}

/// Keep `{u, v}` iff both orientations are arcs; each undirected edge then
/// appears with probability `p^2`.
pub fn underlying_graph(d: &Digraph) -> Graph {
    d.strong_graph()
}
