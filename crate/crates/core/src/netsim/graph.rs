use std::fmt;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::model::NeumaierSum;

/// Random graph family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    /// Poisson degrees, uniform stub pairing, self-loops and multi-edges erased.
    ConfigurationPoisson,
    /// Preferential attachment with `m = round(mu / 2)` edges per new node.
    BarabasiAlbert,
    /// Ring lattice of even degree `k` with each edge rewired with probability `rewire`.
    WattsStrogatz { rewire: f64 },
}

impl GraphKind {
    pub const DEFAULT_REWIRE: f64 = 0.1;

    pub fn tag(&self) -> &'static str {
        match self {
            GraphKind::ConfigurationPoisson => "configuration_poisson",
            GraphKind::BarabasiAlbert => "barabasi_albert",
            GraphKind::WattsStrogatz { .. } => "watts_strogatz",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::WattsStrogatz { rewire } => write!(f, "{}(rewire={rewire})", self.tag()),
            _ => f.write_str(self.tag()),
        }
    }
}

/// What to generate: family, size and requested mean degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub node_count: usize,
    pub mean_degree: f64,
}

impl GraphSpec {
    pub fn new(kind: GraphKind, node_count: usize, mean_degree: f64) -> Result<Self> {
        let spec = Self {
            kind,
            node_count,
            mean_degree,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.node_count < 100 {
            return Err(Error::domain(format!(
                "node_count must be at least 100, got {}",
                self.node_count
            )));
        }
        if self.node_count > u32::MAX as usize {
            return Err(Error::domain("node_count exceeds u32 range"));
        }
        if !(self.mean_degree >= 1.0 && self.mean_degree.is_finite()) {
            return Err(Error::domain(format!(
                "mean degree must be at least 1, got {}",
                self.mean_degree
            )));
        }
        match self.kind {
            GraphKind::ConfigurationPoisson => Ok(()),
            GraphKind::BarabasiAlbert => {
                let m = self.attachment_count();
                check_structural_mean(2.0 * m as f64, self.mean_degree)?;
                if m + 1 >= self.node_count {
                    return Err(Error::domain("attachment count too large for node_count"));
                }
                Ok(())
            }
            GraphKind::WattsStrogatz { rewire } => {
                if !(0.0..=1.0).contains(&rewire) {
                    return Err(Error::domain(format!(
                        "rewire must lie in [0, 1], got {rewire}"
                    )));
                }
                let k = self.ring_degree();
                if k < 2 || k >= self.node_count {
                    return Err(Error::domain(format!(
                        "ring degree {k} gives a disconnected or degenerate lattice on {} nodes",
                        self.node_count
                    )));
                }
                check_structural_mean(k as f64, self.mean_degree)
            }
        }
    }

    /// Edges added per node in the preferential attachment model.
    pub fn attachment_count(&self) -> usize {
        (self.mean_degree / 2.0).round() as usize
    }

    /// Even ring degree of the small-world lattice.
    pub fn ring_degree(&self) -> usize {
        2 * (self.mean_degree / 2.0).round() as usize
    }
}

fn check_structural_mean(achieved: f64, requested: f64) -> Result<()> {
    if (achieved - requested).abs() > 0.02 * requested {
        return Err(Error::domain(format!(
            "generator can only realise mean degree {achieved}, not {requested}"
        )));
    }
    Ok(())
}

/// Undirected simple graph in compressed adjacency form.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactGraph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    kind: GraphKind,
    seed: u64,
}

impl ContactGraph {
    /// Builds a graph from undirected edges. Self-loops and duplicates are dropped.
    pub fn from_edges(
        node_count: usize,
        edges: &[(u32, u32)],
        kind: GraphKind,
        seed: u64,
    ) -> Result<Self> {
        let mut canon: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u as usize >= node_count || v as usize >= node_count {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) outside 0..{node_count}"
                )));
            }
            if u != v {
                canon.push((u.min(v), u.max(v)));
            }
        }
        canon.sort_unstable();
        canon.dedup();

        let mut offsets = vec![0usize; node_count + 1];
        for &(u, v) in &canon {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![0u32; offsets[node_count]];
        for &(u, v) in &canon {
            neighbors[fill[u as usize]] = v;
            fill[u as usize] += 1;
            neighbors[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for i in 0..node_count {
            neighbors[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Ok(Self {
            offsets,
            neighbors,
            kind,
            seed,
        })
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.neighbors[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Mean and population variance of the degree census.
    pub fn degree_moments(&self) -> DegreeMoments {
        let n = self.node_count() as f64;
        let mean = 2.0 * self.edge_count() as f64 / n;
        let mut ss = NeumaierSum::default();
        for d in self.degrees() {
            let dev = d as f64 - mean;
            ss.add(dev * dev);
        }
        DegreeMoments {
            mean,
            variance: ss.value() / n,
        }
    }

    /// Writes one `u v` line per edge with `u < v`.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        for u in 0..self.node_count() {
            for &v in self.neighbors(u) {
                if (u as u32) < v {
                    writeln!(w, "{u} {v}")?;
                }
            }
        }
        Ok(())
    }
}

/// Empirical degree moments of a generated graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeMoments {
    pub mean: f64,
    pub variance: f64,
}

impl DegreeMoments {
    /// `mu + sigma^2 / mu`, the mean degree of a degree-biased node.
    pub fn effective_contacts(&self) -> f64 {
        self.mean + self.variance / self.mean
    }

    pub fn cv(&self) -> f64 {
        self.variance.sqrt() / self.mean
    }
}

/// Generates a graph reproducibly from `seed`.
pub fn generate_graph(spec: &GraphSpec, seed: u64) -> Result<ContactGraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.node_count;
    let edges = match spec.kind {
        GraphKind::ConfigurationPoisson => configuration_poisson(n, spec.mean_degree, &mut rng)?,
        GraphKind::BarabasiAlbert => barabasi_albert(n, spec.attachment_count(), &mut rng),
        GraphKind::WattsStrogatz { rewire } => {
            watts_strogatz(n, spec.ring_degree(), rewire, &mut rng)
        }
    };
    ContactGraph::from_edges(n, &edges, spec.kind, seed)
}

fn configuration_poisson<R: Rng>(n: usize, mu: f64, rng: &mut R) -> Result<Vec<(u32, u32)>> {
    let poisson = Poisson::new(mu).map_err(|e| Error::domain(format!("poisson({mu}): {e}")))?;
    let mut degrees: Vec<u32> = (0..n).map(|_| poisson.sample(rng) as u32).collect();
    let mut total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        let i = rng.random_range(0..n);
        loop {
            let d = poisson.sample(rng) as u32;
            if (d + degrees[i]) % 2 == 1 {
                total = total - degrees[i] as u64 + d as u64;
                degrees[i] = d;
                break;
            }
        }
    }
    debug_assert_eq!(total % 2, 0);
    let mut stubs: Vec<u32> = Vec::with_capacity(total as usize);
    for (node, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(node as u32, d as usize));
    }
    stubs.shuffle(rng);
    Ok(stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect())
}

fn barabasi_albert<R: Rng>(n: usize, m: usize, rng: &mut R) -> Vec<(u32, u32)> {
    let mut edges = Vec::with_capacity(m * n);
    // every edge endpoint once, so uniform draws are degree-proportional
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * m * n);
    for u in 0..=m {
        for v in (u + 1)..=m {
            edges.push((u as u32, v as u32));
            endpoints.push(u as u32);
            endpoints.push(v as u32);
        }
    }
    let mut targets: Vec<u32> = Vec::with_capacity(m);
    for v in (m + 1)..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((v as u32, t));
            endpoints.push(t);
            endpoints.push(v as u32);
        }
    }
    edges
}

fn watts_strogatz<R: Rng>(n: usize, k: usize, rewire: f64, rng: &mut R) -> Vec<(u32, u32)> {
    let half = k / 2;
    let mut adj: Vec<Vec<u32>> = vec![Vec::with_capacity(k + 2); n];
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
    }
    if rewire > 0.0 {
        for j in 1..=half {
            for u in 0..n {
                let v = ((u + j) % n) as u32;
                if !adj[u].contains(&v) || !rng.random_bool(rewire) {
                    continue;
                }
                if adj[u].len() >= n - 1 {
                    continue;
                }
                let w = loop {
                    let w = rng.random_range(0..n) as u32;
                    if w as usize != u && !adj[u].contains(&w) {
                        break w;
                    }
                };
                adj[u].retain(|&x| x != v);
                adj[v as usize].retain(|&x| x as usize != u);
                adj[u].push(w);
                adj[w as usize].push(u as u32);
            }
        }
    }
    let mut edges = Vec::with_capacity(n * half);
    for (u, list) in adj.iter().enumerate() {
        for &v in list {
            if (u as u32) < v {
                edges.push((u as u32, v));
            }
        }
    }
    edges
}
