//! The two worked example families and the random graph corpus used by the
//! verification suites.

use crate::graph::{Graph, Multiplicity};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The four-vertex family with adjacency matrix
/// `[[0,0,0,0],[x,1,1,0],[y,1,1,1],[z,0,1,1]]`: a sink `v1` fed by a strongly
/// connected regular part. Its only nontrivial saturated hereditary subset is
/// `{v1}`.
pub fn family_e(x: u64, y: u64, z: u64) -> Graph {
    let names = (1..=4).map(|i| format!("v{i}")).collect();
    let rows = [[0, 0, 0, 0], [x, 1, 1, 0], [y, 1, 1, 1], [z, 0, 1, 1]];
    let adjacency = rows
        .iter()
        .map(|row| row.iter().map(|&m| Multiplicity::Finite(m)).collect())
        .collect();
    Graph::from_adjacency(names, adjacency).expect("family E is well formed")
}

/// The three-vertex family with adjacency matrix
/// `[[0,0,0],[y,3,1],[∞,z,3]]`: a sink `v1`, a regular vertex `v2`, and an
/// infinite emitter `v3` which is a breaking vertex for `H = {v1}`.
pub fn family_f(y: u64, z: u64) -> Graph {
    let names = (1..=3).map(|i| format!("v{i}")).collect();
    let mut adjacency: Vec<Vec<Multiplicity>> = [[0, 0, 0], [y, 3, 1], [0, z, 3]]
        .iter()
        .map(|row| row.iter().map(|&m| Multiplicity::Finite(m)).collect())
        .collect();
    adjacency[2][0] = Multiplicity::Infinite;
    Graph::from_adjacency(names, adjacency).expect("family F is well formed")
}

/// Entry distribution for the random corpus: multiplicities in {0, 1, 2, ∞},
/// weighted toward sparse graphs but with enough parallel edges and infinite
/// emitters to exercise every vertex class.
fn random_multiplicity(rng: &mut impl Rng) -> Multiplicity {
    match rng.gen_range(0u32..20) {
        0..=8 => Multiplicity::Finite(0),
        9..=14 => Multiplicity::Finite(1),
        15..=17 => Multiplicity::Finite(2),
        _ => Multiplicity::Infinite,
    }
}

/// One random graph with up to `max_vertices` vertices.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let names = (1..=n).map(|i| format!("v{i}")).collect();
    let adjacency = (0..n)
        .map(|_| (0..n).map(|_| random_multiplicity(rng)).collect())
        .collect();
    Graph::from_adjacency(names, adjacency).expect("generated adjacency is square")
}

/// A reproducible corpus of `count` random graphs with at most
/// `max_vertices` vertices each.
pub fn sample_graphs(seed: u64, count: usize, max_vertices: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, max_vertices)).collect()
}

/// A modest spread of parameters for both example families, used to pin
/// the corpus suites to known values.
pub fn example_family_instances() -> Vec<Graph> {
    let mut graphs = Vec::new();
    for (x, y, z) in [(1, 1, 1), (3, 2, 1), (0, 2, 3), (2, 0, 2), (4, 1, 0)] {
        graphs.push(family_e(x, y, z));
    }
    for (y, z) in [(1, 1), (2, 4), (1, 6), (3, 8), (2, 0)] {
        graphs.push(family_f(y, z));
    }
    graphs
}

/// Random permutation helper for re-pairing tests.
pub fn shuffled_indices(rng: &mut impl Rng, len: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..len).collect();
    idx.shuffle(rng);
    idx
}
