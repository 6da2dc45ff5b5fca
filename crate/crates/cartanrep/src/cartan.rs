//! Symmetrizable Cartan matrices, symmetrizers, orientations, and the
//! integers derived from them.
//!
//! A Cartan matrix here has 2 on the diagonal, non-positive integers off the
//! diagonal, and a symmetric zero pattern. A symmetrizer is a positive
//! integer diagonal matrix D with DC symmetric; the minimal one is computed
//! per connected component. Each edge carries the derived constants
//! `g`, `f`, `k` that control loop nilpotency and bimodule sizes downstream.
//! Orientations pick one direction per edge and must be acyclic.

use num_integer::Integer;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CartanError {
    #[error("diagonal entry at vertex {0} is {1}, expected 2")]
    DiagonalNotTwo(usize, i64),
    #[error("off-diagonal entry ({0},{1}) is {2}, expected <= 0")]
    PositiveOffDiagonal(usize, usize, i64),
    #[error("zero pattern is not symmetric at ({0},{1})")]
    AsymmetricZero(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("bad symmetrizer: {0}")]
    BadSymmetrizer(String),
    #[error("bad orientation: {0}")]
    BadOrientation(String),
}

/// Symmetrizable generalized Cartan matrix with integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    /// Validates the defining conditions and symmetrizability.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CartanError::NotSquare);
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let m = CartanMatrix { n, entries };
        for i in 0..n {
            if m.c(i, i) != 2 {
                return Err(CartanError::DiagonalNotTwo(i, m.c(i, i)));
            }
            for j in 0..n {
                if i != j {
                    if m.c(i, j) > 0 {
                        return Err(CartanError::PositiveOffDiagonal(i, j, m.c(i, j)));
                    }
                    if (m.c(i, j) == 0) != (m.c(j, i) == 0) {
                        return Err(CartanError::AsymmetricZero(i, j));
                    }
                }
            }
        }
        m.minimal_symmetrizer()?;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `c_{ij}` (0-based).
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Undirected edges `{i, j}` with `i < j` and `c_{ij} < 0`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.c(i, j) != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| j != i && self.c(i, j) != 0)
            .collect()
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for w in self.neighbors(v) {
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
        self.components().len() <= 1
    }

    /// Restriction to a vertex subset (order of `verts` becomes the new order).
    pub fn restrict(&self, verts: &[usize]) -> CartanMatrix {
        let k = verts.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in verts {
            for &j in verts {
                entries.push(self.c(i, j));
            }
        }
        CartanMatrix { n: k, entries }
    }

    /// Componentwise-minimal positive integer symmetrizer.
    ///
    /// Weights are propagated along a spanning tree by the rule
    /// `d_j = d_i * c_ij / c_ji` and checked on the remaining edges; each
    /// component is then cleared to coprime positive integers.
    pub fn minimal_symmetrizer(&self) -> Result<Symmetrizer, CartanError> {
        use num_bigint::BigInt;
        use num_traits::{One, Signed, Zero};
        type Ratio = num_rational::BigRational;

        let mut weight: Vec<Option<Ratio>> = vec![None; self.n];
        for comp in self.components() {
            let root = comp[0];
            weight[root] = Some(Ratio::one());
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let wv = weight[v].clone().unwrap();
                for u in self.neighbors(v) {
                    let ratio = Ratio::new(BigInt::from(self.c(v, u)), BigInt::from(self.c(u, v)));
                    let wu = wv.clone() * ratio;
                    match &weight[u] {
                        None => {
                            weight[u] = Some(wu);
                            queue.push_back(u);
                        }
                        Some(existing) => {
                            if *existing != wu {
                                return Err(CartanError::NotSymmetrizable(format!(
                                    "inconsistent weight ratios on a cycle through vertices {} and {}",
                                    v + 1,
                                    u + 1
                                )));
                            }
                        }
                    }
                }
            }
            // Clear denominators and common factors within the component.
            let mut lcm_den = BigInt::one();
            for &v in &comp {
                lcm_den = lcm_den.lcm(weight[v].as_ref().unwrap().denom());
            }
            let mut gcd_num = BigInt::zero();
            let scaled: Vec<BigInt> = comp
                .iter()
                .map(|&v| {
                    let w = weight[v].clone().unwrap() * Ratio::from_integer(lcm_den.clone());
                    debug_assert!(w.is_integer());
                    w.to_integer()
                })
                .collect();
            for s in &scaled {
                gcd_num = gcd_num.gcd(s);
            }
            for (&v, s) in comp.iter().zip(&scaled) {
                let d = s / &gcd_num;
                debug_assert!(d.is_positive());
                weight[v] = Some(Ratio::from_integer(d));
            }
        }
        let d: Vec<i64> = weight
            .into_iter()
            .map(|w| {
                let int = w.unwrap().to_integer();
                i64::try_from(&int).map_err(|_| {
                    CartanError::NotSymmetrizable(format!("symmetrizer entry {int} overflows"))
                })
            })
            .collect::<Result<_, _>>()?;
        Symmetrizer::new(d, self)
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.c(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Positive integer diagonal making `DC` symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrizer {
    d: Vec<i64>,
}

impl Symmetrizer {
    pub fn new(d: Vec<i64>, cartan: &CartanMatrix) -> Result<Self, CartanError> {
        if d.len() != cartan.n() {
            return Err(CartanError::BadSymmetrizer(format!(
                "length {} does not match rank {}",
                d.len(),
                cartan.n()
            )));
        }
        for (i, &ci) in d.iter().enumerate() {
            if ci < 1 {
                return Err(CartanError::BadSymmetrizer(format!(
                    "entry {} at vertex {} is not a positive integer",
                    ci,
                    i + 1
                )));
            }
        }
        for i in 0..cartan.n() {
            for j in (i + 1)..cartan.n() {
                if d[i] * cartan.c(i, j) != d[j] * cartan.c(j, i) {
                    return Err(CartanError::BadSymmetrizer(format!(
                        "DC is not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Symmetrizer { d })
    }

    /// Weight `c_i` of vertex `i`.
    pub fn c(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.d
    }
}

/// Simply laced or valued Dynkin diagram families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::B(n) | DynkinType::C(n) | DynkinType::D(n) => n,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
            DynkinType::F4 => 4,
            DynkinType::G2 => 2,
        }
    }

    pub fn positive_root_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::B(n) | DynkinType::C(n) => n * n,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E6 => 36,
            DynkinType::E7 => 63,
            DynkinType::E8 => 120,
            DynkinType::F4 => 24,
            DynkinType::G2 => 6,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
            DynkinType::F4 => write!(f, "F4"),
            DynkinType::G2 => write!(f, "G2"),
        }
    }
}

/// Validated pair (C, D) with the derived per-edge constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    cartan: CartanMatrix,
    symmetrizer: Symmetrizer,
}

impl CartanData {
    pub fn new(cartan: CartanMatrix, symmetrizer: Symmetrizer) -> Result<Self, CartanError> {
        // Re-validate so the pair is consistent regardless of construction path.
        let symmetrizer = Symmetrizer::new(symmetrizer.d, &cartan)?;
        let data = CartanData {
            cartan,
            symmetrizer,
        };
        for (i, j) in data.cartan.edges() {
            debug_assert_eq!(data.c(i), data.k(i, j) * data.f(j, i));
            debug_assert_eq!(data.c(j), data.k(i, j) * data.f(i, j));
            debug_assert_eq!(data.c(i) * data.f(i, j), data.c(j) * data.f(j, i));
            debug_assert_eq!(data.g(i, j), data.g(j, i));
        }
        Ok(data)
    }

    pub fn with_minimal_symmetrizer(cartan: CartanMatrix) -> Result<Self, CartanError> {
        let d = cartan.minimal_symmetrizer()?;
        CartanData::new(cartan, d)
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &Symmetrizer {
        &self.symmetrizer
    }

    pub fn n(&self) -> usize {
        self.cartan.n()
    }

    /// Vertex weight `c_i` (nilpotency degree of the loop at `i`).
    pub fn c(&self, i: usize) -> i64 {
        self.symmetrizer.c(i)
    }

    /// Number of parallel arrows on the edge `{i, j}`.
    pub fn g(&self, i: usize, j: usize) -> i64 {
        debug_assert!(self.cartan.c(i, j) < 0, "no edge between {i} and {j}");
        self.cartan.c(i, j).gcd(&self.cartan.c(j, i))
    }

    /// Loop exponent `f_{ij} = |c_{ij}| / g_{ij}`.
    pub fn f(&self, i: usize, j: usize) -> i64 {
        self.cartan.c(i, j).abs() / self.g(i, j)
    }

    /// Weight gcd `k_{ij} = gcd(c_i, c_j)`.
    pub fn k(&self, i: usize, j: usize) -> i64 {
        debug_assert!(self.cartan.c(i, j) < 0, "no edge between {i} and {j}");
        self.c(i).gcd(&self.c(j))
    }

    /// Quadratic form `q(x) = sum_i c_i x_i^2 - sum_{i<j} c_i |c_ij| x_i x_j`.
    pub fn quadratic_form(&self, x: &[i64]) -> i64 {
        assert_eq!(x.len(), self.n());
        let mut q = 0;
        for i in 0..self.n() {
            q += self.c(i) * x[i] * x[i];
            for j in (i + 1)..self.n() {
                q -= self.c(i) * self.cartan.c(i, j).abs() * x[i] * x[j];
            }
        }
        q
    }

    /// Symmetric bilinear form `(x, y) = sum_{i,j} c_i c_ij x_i y_j`.
    pub fn bilinear_form(&self, x: &[i64], y: &[i64]) -> i64 {
        assert_eq!(x.len(), self.n());
        assert_eq!(y.len(), self.n());
        let mut b = 0;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                b += self.c(i) * self.cartan.c(i, j) * xi * yj;
            }
        }
        b
    }

    /// Whether the symmetrized matrix `DC` is positive definite.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.n();
        let dc: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (self.c(i) * self.cartan.c(i, j)) as i128)
                    .collect()
            })
            .collect();
        (1..=n).all(|k| bareiss_det(&dc, k) > 0)
    }

    /// Dynkin family of a connected diagram; `None` for disconnected or
    /// non-Dynkin input. Shape matching is cross-checked against positive
    /// definiteness of `DC`.
    pub fn dynkin_type(&self) -> Option<DynkinType> {
        if !self.cartan.is_connected() {
            return None;
        }
        let shape = self.match_shape();
        debug_assert_eq!(
            shape.is_some(),
            self.is_positive_definite(),
            "shape classification disagrees with positive definiteness"
        );
        shape
    }

    /// Dynkin family per connected component.
    pub fn component_types(&self) -> Vec<(Vec<usize>, Option<DynkinType>)> {
        self.cartan
            .components()
            .into_iter()
            .map(|comp| {
                let sub_c = self.cartan.restrict(&comp);
                let sub_d: Vec<i64> = comp.iter().map(|&v| self.c(v)).collect();
                let sub = CartanData::new(
                    sub_c.clone(),
                    Symmetrizer::new(sub_d, &sub_c).expect("restriction stays symmetric"),
                )
                .expect("restriction of valid data is valid");
                let t = sub.dynkin_type();
                (comp, t)
            })
            .collect()
    }

    fn match_shape(&self) -> Option<DynkinType> {
        let n = self.n();
        let c = &self.cartan;
        if n == 1 {
            return Some(DynkinType::A(1));
        }
        if c.edges().len() != n - 1 {
            return None; // A tree is required; anything else has a cycle.
        }
        let degrees: Vec<usize> = (0..n).map(|i| c.neighbors(i).len()).collect();
        if degrees.iter().any(|&d| d > 3) {
            return None;
        }
        let branch_vertices: Vec<usize> = (0..n).filter(|&i| degrees[i] == 3).collect();
        let valued_edges: Vec<(usize, usize)> = c
            .edges()
            .into_iter()
            .filter(|&(i, j)| (c.c(i, j), c.c(j, i)) != (-1, -1))
            .collect();
        match (branch_vertices.len(), valued_edges.len()) {
            (0, 0) => Some(DynkinType::A(n)),
            (0, 1) => {
                let path = self.path_order()?;
                let (i, j) = valued_edges[0];
                let values = (c.c(i, j).abs(), c.c(j, i).abs());
                match values {
                    (1, 2) | (2, 1) => {
                        if n == 2 {
                            return Some(DynkinType::B(2));
                        }
                        // Position of the valued edge along the path.
                        let pos = (0..n - 1).find(|&k| {
                            let (a, b) = (path[k], path[k + 1]);
                            (a, b) == (i, j) || (a, b) == (j, i)
                        })?;
                        if n == 4 && pos == 1 {
                            return Some(DynkinType::F4);
                        }
                        if pos != 0 && pos != n - 2 {
                            return None;
                        }
                        let end = if pos == 0 { path[0] } else { path[n - 1] };
                        let other = if pos == 0 { path[1] } else { path[n - 2] };
                        // Short endpoint (weight below its neighbor) means B.
                        if c.c(end, other).abs() == 2 {
                            Some(DynkinType::B(n))
                        } else {
                            Some(DynkinType::C(n))
                        }
                    }
                    (1, 3) | (3, 1) if n == 2 => Some(DynkinType::G2),
                    _ => None,
                }
            }
            (1, 0) => {
                let center = branch_vertices[0];
                let mut lengths: Vec<usize> = c
                    .neighbors(center)
                    .into_iter()
                    .map(|start| {
                        let mut len = 1;
                        let mut prev = center;
                        let mut cur = start;
                        loop {
                            let next: Vec<usize> = c
                                .neighbors(cur)
                                .into_iter()
                                .filter(|&v| v != prev)
                                .collect();
                            match next.as_slice() {
                                [] => break len,
                                [v] => {
                                    prev = cur;
                                    cur = *v;
                                    len += 1;
                                }
                                _ => break usize::MAX, // nested branch vertex
                            }
                        }
                    })
                    .collect();
                lengths.sort_unstable();
                match lengths.as_slice() {
                    [1, 1, k] if *k != usize::MAX => Some(DynkinType::D(k + 3)),
                    [1, 2, 2] => Some(DynkinType::E6),
                    [1, 2, 3] => Some(DynkinType::E7),
                    [1, 2, 4] => Some(DynkinType::E8),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// Vertices of a path graph ordered end to end; `None` if not a path.
    fn path_order(&self) -> Option<Vec<usize>> {
        let c = &self.cartan;
        let n = self.n();
        let start = (0..n).find(|&i| c.neighbors(i).len() == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < n {
            let next: Vec<usize> = c
                .neighbors(cur)
                .into_iter()
                .filter(|&v| v != prev)
                .collect();
            match next.as_slice() {
                [v] => {
                    prev = cur;
                    cur = *v;
                    order.push(cur);
                }
                _ => return None,
            }
        }
        Some(order)
    }
}

/// Leading `k x k` principal minor via fraction-free elimination.
fn bareiss_det(m: &[Vec<i128>], k: usize) -> i128 {
    let mut a: Vec<Vec<i128>> = m.iter().take(k).map(|r| r[..k].to_vec()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for col in 0..k {
        let pivot_row = (col..k).find(|&r| a[r][col] != 0);
        let Some(p) = pivot_row else { return 0 };
        if p != col {
            a.swap(p, col);
            sign = -sign;
        }
        for r in (col + 1)..k {
            for c in (col + 1)..k {
                a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[col][col];
    }
    sign * a[k - 1][k - 1]
}

/// Acyclic choice of one direction per edge.
///
/// A pair `(i, j)` puts the arrows of the edge `{i, j}` with target `i` and
/// source `j`; a vertex is a sink when every incident edge is directed
/// toward it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pairs: BTreeSet<(usize, usize)>,
}

impl Orientation {
    pub fn new(pairs: Vec<(usize, usize)>, cartan: &CartanMatrix) -> Result<Self, CartanError> {
        let edges = cartan.edges();
        let mut set = BTreeSet::new();
        for &(i, j) in &pairs {
            if i >= cartan.n() || j >= cartan.n() {
                return Err(CartanError::BadOrientation(format!(
                    "vertex out of range in ({},{})",
                    i + 1,
                    j + 1
                )));
            }
            if cartan.c(i, j) >= 0 {
                return Err(CartanError::BadOrientation(format!(
                    "({},{}) is not an edge",
                    i + 1,
                    j + 1
                )));
            }
            if set.contains(&(j, i)) || !set.insert((i, j)) {
                return Err(CartanError::BadOrientation(format!(
                    "edge {{{},{}}} oriented more than once",
                    i + 1,
                    j + 1
                )));
            }
        }
        for &(i, j) in &edges {
            if !set.contains(&(i, j)) && !set.contains(&(j, i)) {
                return Err(CartanError::BadOrientation(format!(
                    "edge {{{},{}}} has no orientation",
                    i + 1,
                    j + 1
                )));
            }
        }
        let o = Orientation { pairs: set };
        if o.has_cycle(cartan.n()) {
            return Err(CartanError::BadOrientation("directed cycle".into()));
        }
        Ok(o)
    }

    /// Edges oriented from the larger to the smaller vertex index.
    pub fn default_for(cartan: &CartanMatrix) -> Orientation {
        Orientation {
            pairs: cartan.edges().into_iter().collect(),
        }
    }

    fn has_cycle(&self, n: usize) -> bool {
        // Kahn's algorithm over arrows j -> i for each pair (i, j).
        let mut indegree = vec![0usize; n];
        for &(i, _) in &self.pairs {
            indegree[i] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut visited = 0;
        while let Some(v) = queue.pop_front() {
            visited += 1;
            for &(i, j) in &self.pairs {
                if j == v {
                    indegree[i] -= 1;
                    if indegree[i] == 0 {
                        queue.push_back(i);
                    }
                }
            }
        }
        visited < n
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    /// +1 if `(i, j)` is in the orientation, -1 if `(j, i)` is.
    pub fn sgn(&self, i: usize, j: usize) -> i64 {
        if self.contains(i, j) {
            1
        } else if self.contains(j, i) {
            -1
        } else {
            panic!("{{{i},{j}}} is not an oriented edge");
        }
    }

    /// Vertices `j` with `(i, j)` oriented (arrows pointing into `i`).
    pub fn into_vertex(&self, i: usize) -> Vec<usize> {
        self.pairs
            .iter()
            .filter(|&&(a, _)| a == i)
            .map(|&(_, j)| j)
            .collect()
    }

    /// Vertices `j` with `(j, i)` oriented (arrows leaving `i`).
    pub fn out_of_vertex(&self, i: usize) -> Vec<usize> {
        self.pairs
            .iter()
            .filter(|&&(_, b)| b == i)
            .map(|&(j, _)| j)
            .collect()
    }

    /// All arrows point into `i`.
    pub fn is_sink(&self, i: usize, cartan: &CartanMatrix) -> bool {
        cartan.neighbors(i).iter().all(|&j| self.contains(i, j))
    }

    /// All arrows point out of `i`.
    pub fn is_source(&self, i: usize, cartan: &CartanMatrix) -> bool {
        cartan.neighbors(i).iter().all(|&j| self.contains(j, i))
    }

    /// Reverses every edge incident to `i`; must remain acyclic.
    pub fn flip(&self, v: usize, cartan: &CartanMatrix) -> Result<Orientation, CartanError> {
        let pairs = self
            .pairs
            .iter()
            .map(|&(i, j)| if i == v || j == v { (j, i) } else { (i, j) })
            .collect();
        Orientation::new(pairs, cartan)
    }

    /// The opposite orientation (every edge reversed).
    pub fn reversed(&self, cartan: &CartanMatrix) -> Orientation {
        let pairs = self.pairs.iter().map(|&(i, j)| (j, i)).collect();
        Orientation::new(pairs, cartan).expect("reversal of acyclic is acyclic")
    }
}
