//! Dual unit gain graphs: adjacency/Laplacian construction, balance
//! verification through the Laplacian spectrum, reasonableness of
//! relative-configuration schemes, and balanced cycle generators.
//!
//! An undirected edge `{i, j}` carries a unit dual element as its gain in the
//! `i -> j` orientation; the reverse orientation carries the inverse, which
//! for unit elements is the conjugate. A graph is balanced when every cycle
//! multiplies to one. Balance makes the gain Laplacian switching-equivalent
//! to the Laplacian of the underlying graph, which is what the spectral
//! checks below exploit. The same cycle condition decides whether a set of
//! desired relative configurations of rigid bodies can be realized by an
//! actual formation.

use std::io::{BufRead, Write};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dmat::{self, DualMatrix, DualVector, GroundMatrix};
use crate::ring::{DualNumber, DualScalar, GroundScalar, Quaternion, Ring};
use crate::smm;
use crate::{Error, Result};

/// How far a gain magnitude may deviate from `1 + 0 eps`.
const UNIT_GAIN_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct GainEdge {
    pub i: usize,
    pub j: usize,
    pub gain: DualScalar,
}

/// An undirected graph on vertices `0..n` whose edges carry unit dual gains,
/// stored for the `i < j` orientation.
#[derive(Clone, Debug)]
pub struct UnitGainGraph {
    ring: Ring,
    n: usize,
    edges: Vec<GainEdge>,
}

impl UnitGainGraph {
    /// Validates vertex bounds, absence of self-loops and duplicates, ring
    /// agreement, and unit gains.
    pub fn new(ring: Ring, n: usize, edges: Vec<(usize, usize, DualScalar)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (i, j, gain) in edges {
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) outside vertex range 0..{n}"
                )));
            }
            let (i, j, gain) = if i < j { (i, j, gain) } else { (j, i, gain.conj()) };
            if !seen.insert((i, j)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
            if gain.ring() != ring {
                return Err(Error::RingMismatch(ring, gain.ring()));
            }
            let deviation = gain.magnitude().dist(&DualNumber::ONE);
            if deviation > UNIT_GAIN_TOL {
                return Err(Error::NonUnitGain { i, j, deviation });
            }
            out.push(GainEdge { i, j, gain });
        }
        Ok(UnitGainGraph {
            ring,
            n,
            edges: out,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[GainEdge] {
        &self.edges
    }

    /// Gain of the oriented edge `from -> to`, if present.
    pub fn gain(&self, from: usize, to: usize) -> Option<DualScalar> {
        self.edges.iter().find_map(|e| {
            if (e.i, e.j) == (from, to) {
                Some(e.gain)
            } else if (e.i, e.j) == (to, from) {
                Some(e.gain.conj())
            } else {
                None
            }
        })
    }

    fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Connected components, each a sorted vertex list, ordered by smallest
    /// vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut queue = std::collections::VecDeque::from([start]);
            seen[start] = true;
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// The induced subgraph on `vertices` (which must be closed under
    /// adjacency, e.g. a connected component), relabelled to `0..k`.
    fn induced(&self, vertices: &[usize]) -> UnitGainGraph {
        let mut local = vec![usize::MAX; self.n];
        for (idx, &v) in vertices.iter().enumerate() {
            local[v] = idx;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| local[e.i] != usize::MAX && local[e.j] != usize::MAX)
            .map(|e| GainEdge {
                i: local[e.i],
                j: local[e.j],
                gain: e.gain,
            })
            .collect();
        UnitGainGraph {
            ring: self.ring,
            n: vertices.len(),
            edges,
        }
    }

    /// Laplacian of the underlying (gain-free) graph, in this graph's ring.
    pub fn underlying_laplacian(&self) -> GroundMatrix {
        let mut l = GroundMatrix::zeros(self.ring, self.n, self.n);
        let one = GroundScalar::one(self.ring);
        for e in &self.edges {
            l.set(e.i, e.j, -one);
            l.set(e.j, e.i, -one);
            l.set(e.i, e.i, l.get(e.i, e.i) + one);
            l.set(e.j, e.j, l.get(e.j, e.j) + one);
        }
        l
    }

    pub fn underlying_adjacency(&self) -> GroundMatrix {
        let mut a = GroundMatrix::zeros(self.ring, self.n, self.n);
        let one = GroundScalar::one(self.ring);
        for e in &self.edges {
            a.set(e.i, e.j, one);
            a.set(e.j, e.i, one);
        }
        a
    }
}

/// Gain adjacency matrix `a_ij = phi(e_ij)` (conjugate across the diagonal)
/// and gain Laplacian `L = D - A` with the integer degree matrix `D`. Both
/// are dual Hermitian.
pub fn adjacency_laplacian(g: &UnitGainGraph) -> (DualMatrix, DualMatrix) {
    let n = g.vertex_count();
    let mut a = DualMatrix::zeros(g.ring(), n, n);
    let mut degree = vec![0usize; n];
    for e in g.edges() {
        a.set(e.i, e.j, e.gain);
        a.set(e.j, e.i, e.gain.conj());
        degree[e.i] += 1;
        degree[e.j] += 1;
    }
    let mut l = DualMatrix::zeros(g.ring(), n, n);
    for (i, deg) in degree.iter().enumerate() {
        for j in 0..n {
            if i == j {
                l.set(i, i, DualScalar::one(g.ring()).scale(*deg as f64) - a.get(i, i));
            } else {
                l.set(i, j, -a.get(i, j));
            }
        }
    }
    (a, l)
}

/// Outcome of the three-condition spectral balance test on the Laplacian.
#[derive(Clone, Debug)]
pub struct BalanceReport {
    pub balanced: bool,
    /// Number of connected components `t` of the underlying graph.
    pub components: usize,
    /// Eigenvalues with flat magnitude at most the threshold.
    pub zero_eigenvalue_count: usize,
    /// Condition (i): exactly `t` zero eigenvalues and no negative ones.
    pub condition1_ok: bool,
    /// Condition (ii): zero eigenvectors have entry magnitude `1/sqrt(n_i)`
    /// on their component.
    pub condition2_ok: bool,
    /// Condition (iii) residue `||Y^* L Y - L_G||` in the flat F-norm.
    pub err: f64,
    /// The switching candidate `y` built from the zero eigenvectors.
    pub switching: DualVector,
    /// Full Laplacian spectrum, descending in the dual order.
    pub spectrum: Vec<DualNumber>,
}

/// Verifies balance of a unit gain graph by eigendecomposing its Laplacian.
///
/// Checks, with the given threshold: (i) the Laplacian has one zero
/// eigenvalue per connected component and nothing below zero, (ii) the zero
/// eigenvectors are flat in magnitude over their component, and (iii) the
/// diagonal switching built from their phases conjugates the gain Laplacian
/// into the underlying graph's Laplacian. The report carries partial
/// diagnostics even when a condition fails.
pub fn check_balance(g: &UnitGainGraph, threshold: f64) -> Result<BalanceReport> {
    let n = g.vertex_count();
    let ring = g.ring();
    let (_, l) = adjacency_laplacian(g);
    let dec = smm::smm_eig(&l)?;
    let spectrum = dec.values();

    let comps = g.components();
    let t = comps.len();
    let zero_eigenvalue_count = spectrum.iter().filter(|v| v.two_r() <= threshold).count();
    let condition1_ok =
        zero_eigenvalue_count == t && spectrum.iter().all(|v| v.standard >= -threshold);

    // Work per component: each contributes one zero eigenvector, flat in
    // magnitude when balanced, whose phases form the switching.
    let mut condition2_ok = true;
    let mut switching = DualVector::zeros(ring, n);
    for i in 0..n {
        switching.set(i, DualScalar::one(ring));
    }
    for comp in &comps {
        // A single component means the induced problem is the one already
        // solved above.
        let sub_dec_owned;
        let sub_dec = if t == 1 {
            &dec
        } else {
            let sub = g.induced(comp);
            let (_, l_c) = adjacency_laplacian(&sub);
            sub_dec_owned = smm::smm_eig(&l_c)?;
            &sub_dec_owned
        };
        let Some(zero_pair) = sub_dec
            .pairs
            .iter()
            .min_by(|a, b| a.value.two_r().total_cmp(&b.value.two_r()))
        else {
            continue;
        };
        if zero_pair.value.two_r() > threshold {
            condition2_ok = false;
        }
        let target = DualNumber::new(1.0 / (comp.len() as f64).sqrt(), 0.0);
        for (local, &vertex) in comp.iter().enumerate() {
            let entry = zero_pair.vector.get(local);
            let mag = entry.magnitude();
            if mag.dist(&target) > 1e-6 {
                condition2_ok = false;
            }
            match mag.inverse() {
                Ok(inv) => switching.set(vertex, entry * inv),
                Err(_) => condition2_ok = false,
            }
        }
    }

    // err = ||Y^* L Y - L_G|| in the flat Frobenius norm.
    let l_g = g.underlying_laplacian();
    let mut diff = DualMatrix::zeros(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let conjugated = switching.get(i).conj() * l.get(i, j) * switching.get(j);
            let target = DualScalar::new(l_g.get(i, j), GroundScalar::zero(ring))?;
            diff.set(i, j, conjugated - target);
        }
    }
    let err = diff.fro_norm_r();

    Ok(BalanceReport {
        balanced: condition1_ok && condition2_ok && err <= threshold,
        components: t,
        zero_eigenvalue_count,
        condition1_ok,
        condition2_ok,
        err,
        switching,
        spectrum,
    })
}

/// Compares the dual spectrum of the gain adjacency with the (real) spectrum
/// of the underlying adjacency; equality within `tol` certifies balance.
pub fn spectral_compare(g: &UnitGainGraph, tol: f64) -> Result<bool> {
    let (a_phi, _) = adjacency_laplacian(g);
    let dec = smm::smm_eig(&a_phi)?;
    let ground = crate::heig::eig_hermitian(&g.underlying_adjacency())?;

    let mut dual_values = dec.values();
    dual_values.sort_by(|a, b| a.total_cmp(b));
    Ok(dual_values
        .iter()
        .zip(&ground.values)
        .all(|(lam, mu)| (lam.standard - mu).abs() <= tol && lam.dual.abs() <= tol))
}

/// A relative-configuration scheme: the gain of edge `(i, j)` prescribes the
/// configuration of rigid body `j` as seen from rigid body `i`. Reverse
/// orientations are the conjugates, which is exactly the gain graph pairing.
#[derive(Clone, Debug)]
pub struct ConfigScheme(pub UnitGainGraph);

/// A global configuration assignment realizing a scheme.
#[derive(Clone, Debug)]
pub struct Formation {
    configurations: Vec<DualScalar>,
}

impl Formation {
    pub fn configurations(&self) -> &[DualScalar] {
        &self.configurations
    }

    pub fn get(&self, i: usize) -> DualScalar {
        self.configurations[i]
    }

    pub fn len(&self) -> usize {
        self.configurations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configurations.is_empty()
    }
}

/// The edge on which a scheme fails, with the flat magnitude of
/// `q_i^* q_j - phi(e_ij)`.
#[derive(Clone, Copy, Debug)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub mismatch: f64,
}

#[derive(Clone, Debug)]
pub enum Reasonableness {
    Reasonable(Formation),
    Unreasonable(Violation),
}

/// Decides whether a scheme admits a formation `q` with
/// `phi(e_ij) = q_i^* q_j` on every edge.
///
/// Builds a breadth-first spanning tree from vertex 0 (children in ascending
/// order), roots `q_0 = 1`, propagates `q_child = q_parent * phi(parent ->
/// child)` down the tree, and then checks every edge; a non-tree edge failing
/// the check is exactly a cycle whose gain product is not one. On success the
/// recovered formation is one representative; the full solution set is its
/// left coset under unit dual elements.
pub fn verify_reasonable(scheme: &ConfigScheme, tol: f64) -> Result<Reasonableness> {
    let g = &scheme.0;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Reasonableness::Reasonable(Formation {
            configurations: Vec::new(),
        }));
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    for e in g.edges() {
        let deviation = e.gain.magnitude().dist(&DualNumber::ONE);
        if deviation > UNIT_GAIN_TOL {
            return Err(Error::NonUnitGain {
                i: e.i,
                j: e.j,
                deviation,
            });
        }
    }

    let adj = g.neighbors();
    let mut q = vec![DualScalar::one(g.ring()); n];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                q[w] = q[v] * g.gain(v, w).expect("adjacency lists a stored edge");
                queue.push_back(w);
            }
        }
    }

    for e in g.edges() {
        let predicted = q[e.i].conj() * q[e.j];
        let mismatch = (predicted - e.gain).two_r();
        if mismatch > tol {
            return Ok(Reasonableness::Unreasonable(Violation {
                i: e.i,
                j: e.j,
                mismatch,
            }));
        }
    }
    Ok(Reasonableness::Reasonable(Formation { configurations: q }))
}

/// Closed-form Laplacian spectrum of a gain cycle whose total gain has angle
/// `theta`: `{2 - 2 cos((theta + 2 pi j)/n)}`, sorted ascending. Balanced
/// cycles have `theta = 0`.
pub fn cycle_laplacian_spectrum(n: usize, theta: f64) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut values: Vec<f64> = (0..n)
        .map(|j| 2.0 - 2.0 * ((theta + 2.0 * std::f64::consts::PI * j as f64) / n as f64).cos())
        .collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Draws a uniformly random unit dual element of the ring: a random phase
/// (sign, unit complex number, or unit quaternion) plus a tangential dual
/// part built rigid-motion style, so the magnitude is exactly one.
pub fn random_unit_dual(ring: Ring, rng: &mut impl Rng) -> DualScalar {
    let mut normal = || -> f64 { rng.sample(StandardNormal) };
    match ring {
        Ring::Real => {
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            DualScalar::real(sign, 0.0)
        }
        Ring::Complex => {
            let (a, b) = (normal(), normal());
            let norm = a.hypot(b);
            let s = Quaternion::complex(a / norm, b / norm);
            // d = s * (i t / 2) keeps s d^* + d s^* = 0.
            let t = normal();
            let d = s * Quaternion::complex(0.0, t / 2.0);
            DualScalar::new(
                GroundScalar::from_components(Ring::Complex, &[s.w, s.x]).unwrap(),
                GroundScalar::from_components(Ring::Complex, &[d.w, d.x]).unwrap(),
            )
            .unwrap()
        }
        Ring::Quaternion => {
            let mut s = Quaternion::new(normal(), normal(), normal(), normal());
            s = s.scale(1.0 / s.abs());
            let p = Quaternion::new(0.0, normal(), normal(), normal());
            DualScalar::rigid_motion(s, p).expect("unit rotation and imaginary translation")
        }
    }
}

/// Seeded draw of a random unit dual quaternion (rigid-body configuration).
pub fn random_unit_dual_quaternion(seed: u64) -> DualScalar {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unit_dual(Ring::Quaternion, &mut rng)
}

/// Generates a balanced gain cycle on `n` vertices: draws random unit dual
/// elements `q_i` and sets the gain of each cycle edge `i -> i+1` to
/// `q_i^* q_{i+1}`, so every cycle product telescopes to one. Deterministic
/// per seed.
pub fn balanced_cycle(n: usize, ring: Ring, seed: u64) -> Result<UnitGainGraph> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q: Vec<DualScalar> = (0..n).map(|_| random_unit_dual(ring, &mut rng)).collect();
    let mut edges = Vec::with_capacity(n);
    for i in 0..n - 1 {
        edges.push((i, i + 1, q[i].conj() * q[i + 1]));
    }
    edges.push((0, n - 1, q[0].conj() * q[n - 1]));
    UnitGainGraph::new(ring, n, edges)
}

/// Reads a gain graph in the text format: header `ring n m`, then `m` lines
/// `i j <scalar>` giving the gain of edge `i -> j` for `i < j`, 1-based.
/// Blank lines and `#` comments are skipped.
pub fn read_graph<R: BufRead>(reader: R) -> Result<UnitGainGraph> {
    let mut header: Option<(Ring, usize, usize)> = None;
    let mut edges: Vec<(usize, usize, DualScalar)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        match header {
            None => {
                let mut toks = text.split_whitespace();
                let at = |msg: &str| Error::Parse {
                    line: line_no,
                    msg: msg.to_string(),
                };
                let ring = Ring::from_tag(toks.next().ok_or_else(|| at("missing ring tag"))?)
                    .map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                let n: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| at("bad vertex count"))?;
                let m: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| at("bad edge count"))?;
                if toks.next().is_some() {
                    return Err(at("trailing tokens in header"));
                }
                header = Some((ring, n, m));
            }
            Some((ring, n, _)) => {
                let (i, j, gain) = dmat::parse_indexed_scalar(ring, text, line_no)?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("edge ({i}, {j}) outside vertex range 1..={n}"),
                    });
                }
                if i >= j {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("edge ({i}, {j}) must satisfy i < j"),
                    });
                }
                edges.push((i - 1, j - 1, gain));
            }
        }
    }

    let Some((ring, n, m)) = header else {
        return Err(Error::Parse {
            line: 0,
            msg: "empty graph file".to_string(),
        });
    };
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header announced {m} edges, found {}", edges.len()),
        });
    }
    UnitGainGraph::new(ring, n, edges)
}

pub fn write_graph<W: Write>(mut w: W, g: &UnitGainGraph) -> Result<()> {
    writeln!(
        w,
        "{} {} {}",
        g.ring().tag(),
        g.vertex_count(),
        g.edges().len()
    )?;
    for e in g.edges() {
        writeln!(w, "{} {} {}", e.i + 1, e.j + 1, e.gain.to_text())?;
    }
    Ok(())
}
