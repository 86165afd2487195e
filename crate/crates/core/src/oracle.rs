//! Ground-truth brute force and reproducible instance generators.
//!
//! Everything here exists to check the real solver: the brute force is the
//! reference answer on small graphs, and the generators produce seeded,
//! byte-reproducible instances for property and acceptance tests.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, UndoJournal, VertexId};

/// Hard cap for [`brute_force_min_fvs`]; beyond it subset enumeration is
/// hopeless and the caller gets an error instead of a hung process.
pub const BRUTE_FORCE_VERTEX_LIMIT: usize = 25;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices; brute force is capped at {BRUTE_FORCE_VERTEX_LIMIT}")]
    TooManyVertices { n: usize },
    #[error("requested {m} edges but only {max} distinct pairs exist on {n} vertices")]
    TooManyEdges { n: u32, m: usize, max: usize },
    #[error("planted shape needs k < n and n - k >= 3 when k > 0; got n={n}, k={k}")]
    BadPlantedShape { n: u32, k: u32 },
}

/// Smallest feedback vertex set avoiding `forbidden`, by trying all vertex
/// subsets in increasing size, lexicographic within a size. `None` means no
/// such set exists (the forbidden vertices themselves contain a cycle).
pub fn brute_force_min_fvs(
    g: &Graph,
    forbidden: &BTreeSet<VertexId>,
) -> Result<Option<Vec<VertexId>>, OracleError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_VERTEX_LIMIT {
        return Err(OracleError::TooManyVertices { n });
    }
    let allowed: Vec<VertexId> = g.vertices().filter(|v| !forbidden.contains(v)).collect();
    let mut scratch = g.clone();
    let mut journal = UndoJournal::new();
    for size in 0..=allowed.len() {
        for subset in allowed.iter().copied().combinations(size) {
            for &v in &subset {
                scratch.delete_vertex(v, &mut journal);
            }
            let solved = scratch.is_forest();
            for _ in 0..subset.len() {
                scratch.restore_last(&mut journal);
            }
            if solved {
                return Ok(Some(subset));
            }
        }
    }
    Ok(None)
}

/// Uniform random graph: `m` distinct edges on vertices `1..=n`, sampled
/// without replacement. Same seed, same graph, always.
pub fn gen_random_graph(n: u32, m: usize, seed: u64) -> Result<Graph, OracleError> {
    let max = n as usize * (n.saturating_sub(1)) as usize / 2;
    if m > max {
        return Err(OracleError::TooManyEdges { n, m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // sample whichever of the edge set or its complement is smaller, so
    // rejection stays fast on dense requests
    let complement = m > max / 2;
    let want = if complement { max - m } else { m };
    let mut chosen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    while chosen.len() < want {
        let u = rng.random_range(1..=n);
        let v = rng.random_range(1..=n);
        if u != v {
            chosen.insert((u.min(v), u.max(v)));
        }
    }
    let edges: Vec<(VertexId, VertexId)> = if complement {
        (1..=n)
            .flat_map(|u| ((u + 1)..=n).map(move |v| (u, v)))
            .filter(|pair| !chosen.contains(pair))
            .collect()
    } else {
        chosen.into_iter().collect()
    };
    Ok(Graph::build(n, &edges).expect("sampled pairs are distinct, loop-free and in range"))
}

/// A generated instance with a known-sufficient deletion set.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: Graph,
    /// Deleting these k vertices provably leaves a tree.
    pub planted: Vec<VertexId>,
}

/// Random tree on `n - k` vertices plus `k` planted vertices, each wired to
/// at least three distinct tree vertices. Deleting the planted vertices
/// restores the tree, so the instance is always solvable with budget `k`.
///
/// Planted vertices take labels `1..=k`, the tree takes `k+1..=n`. With
/// `k = 0` the output is simply a uniform random tree (handy on its own).
pub fn gen_planted(n: u32, k: u32, seed: u64) -> Result<PlantedInstance, OracleError> {
    if k >= n || (k > 0 && n - k < 3) {
        return Err(OracleError::BadPlantedShape { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree_ids: Vec<VertexId> = (k + 1..=n).collect();
    let mut edges = random_tree_edges(&tree_ids, &mut rng);
    for p in 1..=k {
        // the k > 0 guard above ensures at least three attachment targets
        let fanout = rng.random_range(3..=tree_ids.len().min(8));
        let mut targets: BTreeSet<VertexId> = BTreeSet::new();
        while targets.len() < fanout {
            targets.insert(tree_ids[rng.random_range(0..tree_ids.len())]);
        }
        edges.extend(targets.into_iter().map(|t| (p, t)));
    }
    let graph = Graph::build(n, &edges).expect("tree edges and fresh attachments never collide");
    Ok(PlantedInstance {
        graph,
        planted: (1..=k).collect(),
    })
}

/// Uniform random labeled tree over the given vertices, decoded from a
/// random parent code.
fn random_tree_edges(ids: &[VertexId], rng: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    let len = ids.len();
    match len {
        0 | 1 => Vec::new(),
        2 => vec![(ids[0], ids[1])],
        _ => {
            let code: Vec<usize> = (0..len - 2).map(|_| rng.random_range(0..len)).collect();
            let mut degree = vec![1usize; len];
            for &c in &code {
                degree[c] += 1;
            }
            let mut leaves: BTreeSet<usize> = (0..len).filter(|&i| degree[i] == 1).collect();
            let mut edges = Vec::with_capacity(len - 1);
            for &c in &code {
                let &leaf = leaves.iter().next().expect("a tree code always has a leaf");
                leaves.remove(&leaf);
                edges.push((ids[leaf], ids[c]));
                degree[leaf] -= 1;
                degree[c] -= 1;
                if degree[c] == 1 {
                    leaves.insert(c);
                }
            }
            let rest: Vec<usize> = leaves.into_iter().collect();
            assert_eq!(rest.len(), 2, "decoding must end with exactly two leaves");
            edges.push((ids[rest[0]], ids[rest[1]]));
            edges
        }
    }
}

/// Small random graph plus a (possibly empty) forest-inducing vertex set,
/// for solver-versus-oracle property runs: 3..=12 vertices, up to 30 edges.
pub fn gen_small_random(seed: u64) -> (Graph, BTreeSet<VertexId>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1));
    let n = rng.random_range(3..=12u32);
    let max = n as usize * (n as usize - 1) / 2;
    let m = rng.random_range(0..=max.min(30));
    let graph = gen_random_graph(n, m, rng.random())
        .expect("edge count is clamped to the possible range");
    let target = rng.random_range(0..=n as usize / 2);
    let set = grow_forest_inducing_set(&graph, target, &mut rng);
    (graph, set)
}

/// Greedily grows a vertex set that keeps inducing a forest, visiting
/// vertices in seeded random order until `target` members are collected or
/// candidates run out.
pub fn grow_forest_inducing_set(
    g: &Graph,
    target: usize,
    rng: &mut ChaCha8Rng,
) -> BTreeSet<VertexId> {
    let mut order: Vec<VertexId> = g.vertices().collect();
    // Fisher-Yates, driven by the caller's rng
    for i in (1..order.len()).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let mut set = BTreeSet::new();
    for v in order {
        if set.len() >= target {
            break;
        }
        set.insert(v);
        if !g.induced_is_forest(&set) {
            set.remove(&v);
        }
    }
    set
}

/// Random instance for the degree-two solver: undeletable trees joined by
/// undecided threads of degree-2 vertices, plus free-standing cycles. The
/// result always satisfies the solver's precondition: minimum degree ≥ 2,
/// no forced vertex, every undecided vertex of degree exactly 2.
pub fn gen_degree_two(seed: u64) -> (Graph, BTreeSet<VertexId>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x2545f4914f6cdd1d).wrapping_add(3));
    let mut next_id: VertexId = 1;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut undeletable: BTreeSet<VertexId> = BTreeSet::new();

    // undeletable skeleton: up to two small trees
    let tree_count = rng.random_range(0..=2usize);
    let mut trees: Vec<Vec<VertexId>> = Vec::new();
    for _ in 0..tree_count {
        let ids = take_ids(&mut next_id, rng.random_range(1..=3));
        for i in 1..ids.len() {
            edges.push((ids[rng.random_range(0..i)], ids[i]));
        }
        undeletable.extend(ids.iter().copied());
        trees.push(ids);
    }

    // free-standing undecided cycles; mandatory when there are no trees
    let min_cycles = usize::from(tree_count == 0);
    for _ in 0..rng.random_range(min_cycles..=2usize) {
        let ids = take_ids(&mut next_id, rng.random_range(3..=5));
        for i in 0..ids.len() {
            edges.push((ids[i], ids[(i + 1) % ids.len()]));
        }
    }

    // undecided threads between undeletable vertices
    if !trees.is_empty() {
        let tree_of = |v: VertexId, trees: &[Vec<VertexId>]| {
            trees
                .iter()
                .position(|t| t.contains(&v))
                .expect("thread ends at a tree vertex")
        };
        for _ in 0..rng.random_range(1..=3usize) {
            let pick = |rng: &mut ChaCha8Rng, trees: &[Vec<VertexId>]| {
                let t = &trees[rng.random_range(0..trees.len())];
                t[rng.random_range(0..t.len())]
            };
            let a = pick(&mut rng, &trees);
            let b = pick(&mut rng, &trees);
            // a single connecting vertex with both ends in one undeletable
            // component would be forced; those threads need length ≥ 2
            let min_len = if tree_of(a, &trees) == tree_of(b, &trees) { 2 } else { 1 };
            let len = rng.random_range(min_len..=3usize);
            let xs = take_ids(&mut next_id, len);
            edges.push((a, xs[0]));
            for w in xs.windows(2) {
                edges.push((w[0], w[1]));
            }
            edges.push((xs[len - 1], b));
        }
        // patch undeletable vertices still below degree 2 with a self-thread
        let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &(u, v) in &edges {
            *degree.entry(u).or_insert(0) += 1;
            *degree.entry(v).or_insert(0) += 1;
        }
        for &v in &undeletable {
            if degree.get(&v).copied().unwrap_or(0) < 2 {
                let xs = take_ids(&mut next_id, 2);
                edges.push((v, xs[0]));
                edges.push((xs[0], xs[1]));
                edges.push((xs[1], v));
            }
        }
    }

    let graph = Graph::build(next_id - 1, &edges).expect("generated labels are sequential");
    (graph, undeletable)
}

/// Hands out `count` consecutive fresh labels.
fn take_ids(next_id: &mut VertexId, count: usize) -> Vec<VertexId> {
    let ids: Vec<VertexId> = (*next_id..*next_id + count as u32).collect();
    *next_id += count as u32;
    ids
}
