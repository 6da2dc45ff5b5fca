//! Quivers and relations for the loop algebras and their doubles, the
//! vertex bimodules with left/right bases, the adjunction between Hom spaces
//! across an edge, and the trace pairing at a vertex.
//!
//! For an edge `{i, j}` the bimodule spanned by paths `eps_i^x alpha_ij^(g)
//! eps_j^y` is free on either side: the right basis elements
//! `eps_i^x alpha_ij^(g)` with `x < f_ji` index the tensor space over a
//! module at `j`, ordered copy-major then power, then module basis. All maps
//! are matrices against these canonical orderings.

use crate::cartan::{CartanData, Orientation};
use crate::linalg::{Mat, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("map is not linear over the vertex algebra: {0}")]
    NotLinear(String),
    #[error("module at vertex {0} is not free over its vertex algebra")]
    NotFree(usize),
    #[error("no edge between vertices {0} and {1}")]
    NoEdge(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Which relation package the algebra carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    /// Loop nilpotency and loop/arrow commutation over the orientation.
    H,
    /// Double quiver with the same relations over both directions plus the
    /// mesh relation at every vertex.
    Pi,
}

/// One arrow `alpha_{target,source}^{(copy)}: source -> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub target: usize,
    pub source: usize,
    /// 1-based copy index among the parallel arrows of the edge.
    pub copy: usize,
}

impl Arrow {
    /// External name, 1-based vertices.
    pub fn name(&self) -> String {
        format!(
            "alpha:{}:{}:{}",
            self.target + 1,
            self.source + 1,
            self.copy
        )
    }
}

/// A quiver-with-relations presentation attached to Cartan data and an
/// orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    kind: AlgebraKind,
    data: CartanData,
    omega: Orientation,
}

impl AlgebraSpec {
    pub fn new(kind: AlgebraKind, data: CartanData, omega: Orientation) -> Self {
        AlgebraSpec { kind, data, omega }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn data(&self) -> &CartanData {
        &self.data
    }

    pub fn omega(&self) -> &Orientation {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.data.n()
    }

    /// Ordered pairs carrying arrows: the orientation for kind H, both
    /// directions of every edge for kind Pi.
    pub fn arrow_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self.omega.pairs().collect();
        if self.kind == AlgebraKind::Pi {
            let reversed: Vec<(usize, usize)> = pairs.iter().map(|&(i, j)| (j, i)).collect();
            pairs.extend(reversed);
        }
        pairs.sort_unstable();
        pairs
    }

    /// Pairs `(i, j)` of the double quiver with arrows into `i`, restricted
    /// to the neighbors of `i`.
    pub fn pairs_at(&self, i: usize) -> Vec<(usize, usize)> {
        self.arrow_pairs()
            .into_iter()
            .filter(|&(a, _)| a == i)
            .collect()
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for (i, j) in self.arrow_pairs() {
            for g in 1..=self.data.g(i, j) {
                out.push(Arrow {
                    target: i,
                    source: j,
                    copy: g as usize,
                });
            }
        }
        out
    }

    /// Human-readable relation list using the external arrow/loop names.
    pub fn relation_strings(&self) -> Vec<String> {
        let d = &self.data;
        let mut out = Vec::new();
        for i in 0..self.n() {
            out.push(format!("{} = 0", eps_pow(i, d.c(i))));
        }
        for (i, j) in self.arrow_pairs() {
            for g in 1..=self.data.g(i, j) {
                let a = Arrow {
                    target: i,
                    source: j,
                    copy: g as usize,
                }
                .name();
                out.push(format!(
                    "{} {} = {} {}",
                    eps_pow(i, d.f(j, i)),
                    a,
                    a,
                    eps_pow(j, d.f(i, j))
                ));
            }
        }
        if self.kind == AlgebraKind::Pi {
            for i in 0..self.n() {
                if let Some(mesh) = self.mesh_string(i) {
                    out.push(mesh);
                }
            }
        }
        out
    }

    /// The mesh relation at vertex `i`, `None` for an isolated vertex.
    fn mesh_string(&self, i: usize) -> Option<String> {
        let d = &self.data;
        let mut terms = Vec::new();
        for (_, j) in self.pairs_at(i) {
            let sign = self.omega.sgn(i, j);
            for g in 1..=d.g(i, j) {
                let into = Arrow {
                    target: i,
                    source: j,
                    copy: g as usize,
                }
                .name();
                let outof = Arrow {
                    target: j,
                    source: i,
                    copy: g as usize,
                }
                .name();
                for f in 0..d.f(j, i) {
                    let mut factors = Vec::new();
                    if f > 0 {
                        factors.push(eps_pow(i, f));
                    }
                    factors.push(into.clone());
                    factors.push(outof.clone());
                    if d.f(j, i) - 1 - f > 0 {
                        factors.push(eps_pow(i, d.f(j, i) - 1 - f));
                    }
                    let word = factors.join(" ");
                    terms.push(if sign > 0 {
                        format!("+ {word}")
                    } else {
                        format!("- {word}")
                    });
                }
            }
        }
        if terms.is_empty() {
            return None;
        }
        let mut joined = terms.join(" ");
        if let Some(rest) = joined.strip_prefix("+ ") {
            joined = rest.to_string();
        }
        Some(format!("{joined} = 0"))
    }
}

fn eps_pow(i: usize, e: i64) -> String {
    if e == 1 {
        format!("eps:{}", i + 1)
    } else {
        format!("eps:{}^{}", i + 1, e)
    }
}

/// Which basis element of the tensor space a coordinate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorLabel {
    /// 1-based arrow copy.
    pub copy: usize,
    /// Loop power `x` of the right-basis element `eps_i^x alpha^(g)`.
    pub power: usize,
    /// Basis index inside the module at the source vertex.
    pub index: usize,
}

/// The tensor space of an edge bimodule with a module over the source
/// vertex, together with the loop action at the target vertex.
#[derive(Debug, Clone)]
pub struct TensorSpace<S: Scalar> {
    pub dim: usize,
    pub eps: Mat<S>,
    pub labels: Vec<TensorLabel>,
}

/// Number of right-basis blocks of the edge bimodule for target `i`,
/// source `j`: copies times loop powers, totalling `|c_ji|`.
pub fn tensor_blocks(data: &CartanData, i: usize, j: usize) -> usize {
    (data.g(i, j) * data.f(j, i)) as usize
}

/// Realizes the tensor of the `(i, j)` bimodule with a module at `j` given
/// by its loop action `eps_j`. Basis: right-basis element (copy, power)
/// paired with the module basis; the loop at `i` shifts the power and wraps
/// the top power to `eps_j^{f_ij}` on the module side.
pub fn tensor_space<S: Scalar>(
    data: &CartanData,
    i: usize,
    j: usize,
    eps_j: &Mat<S>,
) -> TensorSpace<S> {
    assert!(data.cartan().c(i, j) < 0, "no edge between {i} and {j}");
    let copies = data.g(i, j) as usize;
    let powers = data.f(j, i) as usize;
    let wrap_exp = data.f(i, j) as usize;
    let d = eps_j.rows();
    let field = eps_j.field();
    let dim = copies * powers * d;
    let wrap = eps_j.pow(wrap_exp);
    let mut eps = Mat::zero(dim, dim, field);
    let mut labels = Vec::with_capacity(dim);
    for g in 0..copies {
        for x in 0..powers {
            let src = (g * powers + x) * d;
            if x + 1 < powers {
                let dst = (g * powers + x + 1) * d;
                eps.paste(dst, src, &Mat::identity(d, field));
            } else {
                let dst = g * powers * d;
                eps.paste(dst, src, &wrap);
            }
            for k in 0..d {
                labels.push(TensorLabel {
                    copy: g + 1,
                    power: x,
                    index: k,
                });
            }
        }
    }
    TensorSpace { dim, eps, labels }
}

/// The map `id (x) phi` on tensor spaces over the same edge, block-diagonal
/// over the right basis. `phi` maps the module at `j` used on the left to
/// the one used on the right.
pub fn tensor_lift<S: Scalar>(data: &CartanData, i: usize, j: usize, phi: &Mat<S>) -> Mat<S> {
    let blocks = tensor_blocks(data, i, j);
    let field = phi.field();
    let mut out = Mat::zero(blocks * phi.rows(), blocks * phi.cols(), field);
    for b in 0..blocks {
        out.paste(b * phi.rows(), b * phi.cols(), phi);
    }
    out
}

/// Assembles the module structure map of an edge from the arrow matrices:
/// column block `(g, x)` is `eps_i^x * arrows[g]`.
pub fn structure_map<S: Scalar>(
    data: &CartanData,
    i: usize,
    j: usize,
    eps_i: &Mat<S>,
    arrows: &[Mat<S>],
) -> Mat<S> {
    let copies = data.g(i, j) as usize;
    let powers = data.f(j, i) as usize;
    assert_eq!(arrows.len(), copies, "one matrix per parallel arrow");
    let d_i = eps_i.rows();
    let d_j = arrows.first().map_or(0, Mat::cols);
    let field = eps_i.field();
    let mut out = Mat::zero(d_i, copies * powers * d_j, field);
    for (g, a) in arrows.iter().enumerate() {
        let mut shifted = a.clone();
        for x in 0..powers {
            out.paste(0, (g * powers + x) * d_j, &shifted);
            shifted = eps_i.mul(&shifted);
        }
    }
    out
}

/// Extracts the arrow matrices back out of a structure map (the power-zero
/// column blocks).
pub fn structure_map_arrows<S: Scalar>(
    data: &CartanData,
    i: usize,
    j: usize,
    map: &Mat<S>,
    d_j: usize,
) -> Vec<Mat<S>> {
    let copies = data.g(i, j) as usize;
    let powers = data.f(j, i) as usize;
    assert_eq!(map.cols(), copies * powers * d_j, "structure map shape");
    (0..copies)
        .map(|g| map.submatrix(0, g * powers * d_j, map.rows(), d_j))
        .collect()
}

fn column_block<S: Scalar>(m: &Mat<S>, block: usize, width: usize) -> Mat<S> {
    m.submatrix(0, block * width, m.rows(), width)
}

fn check_linear<S: Scalar>(
    name: &str,
    map: &Mat<S>,
    eps_domain: &Mat<S>,
    eps_codomain: &Mat<S>,
) -> Result<(), AlgebraError> {
    if map.cols() != eps_domain.rows() || map.rows() != eps_codomain.rows() {
        return Err(AlgebraError::ShapeMismatch(format!(
            "{name}: {}x{} against domain {} and codomain {}",
            map.rows(),
            map.cols(),
            eps_domain.rows(),
            eps_codomain.rows()
        )));
    }
    if map.mul(eps_domain) != eps_codomain.mul(map) {
        return Err(AlgebraError::NotLinear(name.into()));
    }
    Ok(())
}

/// Adjunction across the edge `{i, j}`: sends an `H_j`-linear map
/// `F: (j-i bimodule) (x) M_i -> N_j` to the `H_i`-linear map
/// `G: M_i -> (i-j bimodule) (x) N_j`. Row block `(g, x)` of the result is
/// the power-zero column block of `F` times `eps_{M}^{f_ji - 1 - x}`.
pub fn adjunction<S: Scalar>(
    data: &CartanData,
    j: usize,
    i: usize,
    f: &Mat<S>,
    eps_m: &Mat<S>,
    eps_n: &Mat<S>,
) -> Result<Mat<S>, AlgebraError> {
    if data.cartan().c(i, j) >= 0 {
        return Err(AlgebraError::NoEdge(i, j));
    }
    let domain = tensor_space(data, j, i, eps_m);
    check_linear("adjunction input", f, &domain.eps, eps_n)?;
    let copies = data.g(i, j) as usize;
    let in_powers = data.f(i, j) as usize;
    let out_powers = data.f(j, i) as usize;
    let d_m = eps_m.rows();
    let d_n = eps_n.rows();
    let field = f.field();
    let mut g_map = Mat::zero(copies * out_powers * d_n, d_m, field);
    for g in 0..copies {
        let base = column_block(f, g * in_powers, d_m);
        for x in 0..out_powers {
            let block = base.mul(&eps_m.pow(out_powers - 1 - x));
            g_map.paste((g * out_powers + x) * d_n, 0, &block);
        }
    }
    debug_assert!(check_linear(
        "adjunction output",
        &g_map,
        eps_m,
        &tensor_space(data, i, j, eps_n).eps
    )
    .is_ok());
    Ok(g_map)
}

/// Inverse adjunction: sends an `H_i`-linear map `G: M_i -> (i-j) (x) N_j`
/// back to `F`. Column block `(g, y)` of the result is `eps_N^y` times the
/// top-power row block of `G`.
pub fn adjunction_inverse<S: Scalar>(
    data: &CartanData,
    j: usize,
    i: usize,
    g_map: &Mat<S>,
    eps_m: &Mat<S>,
    eps_n: &Mat<S>,
) -> Result<Mat<S>, AlgebraError> {
    if data.cartan().c(i, j) >= 0 {
        return Err(AlgebraError::NoEdge(i, j));
    }
    let codomain = tensor_space(data, i, j, eps_n);
    check_linear("inverse adjunction input", g_map, eps_m, &codomain.eps)?;
    let copies = data.g(i, j) as usize;
    let in_powers = data.f(i, j) as usize;
    let out_powers = data.f(j, i) as usize;
    let d_m = eps_m.rows();
    let d_n = eps_n.rows();
    let field = g_map.field();
    let mut f = Mat::zero(d_n, copies * in_powers * d_m, field);
    for g in 0..copies {
        let top = g_map.submatrix((g * out_powers + out_powers - 1) * d_n, 0, d_n, d_m);
        for y in 0..in_powers {
            let block = eps_n.pow(y).mul(&top);
            f.paste(0, (g * in_powers + y) * d_m, &block);
        }
    }
    debug_assert!(check_linear(
        "inverse adjunction output",
        &f,
        &tensor_space(data, j, i, eps_m).eps,
        eps_n
    )
    .is_ok());
    Ok(f)
}

/// Canonical loop action of a free module: block-diagonal lower shifts of
/// size `c`, one per rank unit.
pub fn canonical_eps<S: Scalar>(
    c: usize,
    rank: usize,
    field: crate::linalg::FieldDescriptor,
) -> Mat<S> {
    let d = c * rank;
    Mat::from_fn(d, d, field, |r, col| {
        if r == col + 1 && r % c != 0 {
            S::from_int(1, field)
        } else {
            S::zero()
        }
    })
}

/// Change of basis taking a free module at a vertex of weight `c` to the
/// canonical block form: columns are `v, eps v, ..., eps^{c-1} v` for
/// generators `v` lifting a basis of the cokernel of `eps`. Fails on
/// non-free input.
pub fn free_basis<S: Scalar>(c: i64, eps: &Mat<S>, vertex: usize) -> Result<Mat<S>, AlgebraError> {
    let c = c as usize;
    let d = eps.rows();
    let field = eps.field();
    if d == 0 {
        return Ok(Mat::identity(0, field));
    }
    if !d.is_multiple_of(c) {
        return Err(AlgebraError::NotFree(vertex));
    }
    let rank = d / c;
    // Lift a basis of the cokernel: extend the column space of eps by
    // standard vectors, greedily.
    let mut span = eps.clone();
    let mut generators = Vec::new();
    let mut current_rank = span.rank();
    for k in 0..d {
        if generators.len() == rank {
            break;
        }
        let mut e = Mat::zero(d, 1, field);
        e.set(k, 0, S::from_int(1, field));
        let extended = span.hstack(&e);
        if extended.rank() > current_rank {
            current_rank += 1;
            span = extended;
            generators.push(e);
        }
    }
    if generators.len() != rank {
        return Err(AlgebraError::NotFree(vertex));
    }
    let mut t = Mat::zero(d, d, field);
    for (u, v) in generators.iter().enumerate() {
        let mut w = v.clone();
        for p in 0..c {
            t.paste(0, u * c + p, &w);
            w = eps.mul(&w);
        }
    }
    if !t.is_invertible() {
        return Err(AlgebraError::NotFree(vertex));
    }
    Ok(t)
}

/// Trace pairing at a vertex of weight `c`: the top loop-power coefficient
/// of the module-algebra trace of `f` composed with `g`, for maps between
/// free modules `f: U -> V`, `g: V -> U`.
pub fn trace_pairing<S: Scalar>(
    c: i64,
    eps_u: &Mat<S>,
    eps_v: &Mat<S>,
    f: &Mat<S>,
    g: &Mat<S>,
    vertex: usize,
) -> Result<S, AlgebraError> {
    check_linear("trace pairing first argument", f, eps_u, eps_v)?;
    check_linear("trace pairing second argument", g, eps_v, eps_u)?;
    let t = free_basis(c, eps_v, vertex)?;
    free_basis(c, eps_u, vertex)?;
    let h = t
        .inverse()
        .expect("free basis is invertible")
        .mul(&f.mul(g))
        .mul(&t);
    let c = c as usize;
    let rank = eps_v.rows() / c;
    let mut acc = S::zero();
    for k in 0..rank {
        acc = acc + h.get(k * c + c - 1, k * c).clone();
    }
    Ok(acc)
}
