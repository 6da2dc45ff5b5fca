//! Canonical-basis construction of the distinguished modules: generalized
//! simples, one-dimensional simples, indecomposable projectives, and
//! indecomposable injectives.
//!
//! Projectives are realized on a tensor-algebra normal form: basis labels
//! are paths through the quiver starting at the defining vertex, decorated
//! with one bimodule letter per step and a loop power at the final vertex.
//! Loop and arrow actions on labels follow from the commutation relation by
//! a single rewriting rule, so every matrix is 0/1 and deterministic.
//! Injectives are transposed projectives over the reversed orientation.

use crate::algebra::{canonical_eps, AlgebraKind, AlgebraSpec};
use crate::linalg::{FieldDescriptor, Mat, Scalar};
use crate::rep::Representation;
use std::collections::BTreeMap;
use std::sync::Arc;

/// One letter along a path: the arrow copy taken and the loop power
/// consumed at the step's source vertex. The power is reduced below the
/// edge commutation exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathLetter {
    pub copy: usize,
    pub power: i64,
}

/// Normal-form basis label of a projective: the visited vertices (defining
/// vertex first), one letter per step, and a loop power at the last vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathBasisLabel {
    pub vertices: Vec<usize>,
    pub letters: Vec<PathLetter>,
    pub eps_power: i64,
}

impl PathBasisLabel {
    pub fn end_vertex(&self) -> usize {
        *self.vertices.last().expect("label has at least one vertex")
    }
}

impl Ord for PathBasisLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (
            self.letters.len(),
            &self.vertices,
            &self.letters,
            self.eps_power,
        )
            .cmp(&(
                other.letters.len(),
                &other.vertices,
                &other.letters,
                other.eps_power,
            ))
    }
}

impl PartialOrd for PathBasisLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Free rank-one module over the vertex algebra at `i`, all arrows zero.
pub fn generalized_simple<S: Scalar>(
    spec: &Arc<AlgebraSpec>,
    i: usize,
    field: FieldDescriptor,
) -> Representation<S> {
    let data = spec.data();
    let n = spec.n();
    let c = data.c(i) as usize;
    let dims: Vec<usize> = (0..n).map(|k| if k == i { c } else { 0 }).collect();
    let eps: Vec<Mat<S>> = (0..n)
        .map(|k| {
            if k == i {
                canonical_eps(c, 1, field)
            } else {
                Mat::zero(0, 0, field)
            }
        })
        .collect();
    Representation::new(spec.clone(), dims, eps, BTreeMap::new(), field)
        .expect("generalized simple is well formed")
}

/// One-dimensional module at `i`, every matrix zero.
pub fn simple<S: Scalar>(
    spec: &Arc<AlgebraSpec>,
    i: usize,
    field: FieldDescriptor,
) -> Representation<S> {
    let n = spec.n();
    let dims: Vec<usize> = (0..n).map(|k| usize::from(k == i)).collect();
    let eps: Vec<Mat<S>> = dims.iter().map(|&d| Mat::zero(d, d, field)).collect();
    Representation::new(spec.clone(), dims, eps, BTreeMap::new(), field)
        .expect("simple is well formed")
}

/// All normal-form labels of the projective at `i`, grouped by end vertex
/// and sorted by (path length, vertex sequence, letters, loop power).
pub fn projective_labels(spec: &AlgebraSpec, i: usize) -> Vec<Vec<PathBasisLabel>> {
    let data = spec.data();
    let omega = spec.omega();
    // Paths are directed away from i; the orientation is acyclic, so the
    // enumeration is finite.
    let mut paths: Vec<(Vec<usize>, Vec<PathLetter>)> = vec![(vec![i], Vec::new())];
    let mut at = 0;
    while at < paths.len() {
        let (verts, letters) = paths[at].clone();
        let v = *verts.last().unwrap();
        for u in omega.out_of_vertex(v) {
            for g in 1..=data.g(u, v) as usize {
                for f in 0..data.f(u, v) {
                    let mut nv = verts.clone();
                    nv.push(u);
                    let mut nl = letters.clone();
                    nl.push(PathLetter { copy: g, power: f });
                    paths.push((nv, nl));
                }
            }
        }
        at += 1;
    }
    let mut by_vertex: Vec<Vec<PathBasisLabel>> = vec![Vec::new(); spec.n()];
    for (vertices, letters) in paths {
        let end = *vertices.last().unwrap();
        for a in 0..data.c(end) {
            by_vertex[end].push(PathBasisLabel {
                vertices: vertices.clone(),
                letters: letters.clone(),
                eps_power: a,
            });
        }
    }
    for list in &mut by_vertex {
        list.sort();
    }
    by_vertex
}

/// Indecomposable projective at `i` on the normal-form basis.
pub fn projective<S: Scalar>(
    spec: &Arc<AlgebraSpec>,
    i: usize,
    field: FieldDescriptor,
) -> Representation<S> {
    assert_eq!(
        spec.kind(),
        AlgebraKind::H,
        "projectives are built over the plain algebra"
    );
    let data = spec.data();
    let n = spec.n();
    let by_vertex = projective_labels(spec, i);
    let dims: Vec<usize> = by_vertex.iter().map(Vec::len).collect();
    let index: Vec<BTreeMap<&PathBasisLabel, usize>> = by_vertex
        .iter()
        .map(|list| list.iter().enumerate().map(|(k, l)| (l, k)).collect())
        .collect();

    let mut eps = Vec::with_capacity(n);
    for v in 0..n {
        let mut m = Mat::zero(dims[v], dims[v], field);
        for (col, lab) in by_vertex[v].iter().enumerate() {
            if lab.eps_power + 1 < data.c(v) {
                let mut img = lab.clone();
                img.eps_power += 1;
                m.set(index[v][&img], col, S::from_int(1, field));
            }
        }
        eps.push(m);
    }

    let mut arrows = BTreeMap::new();
    for arrow in spec.arrows() {
        let (u, v) = (arrow.target, arrow.source);
        let mut m = Mat::zero(dims[u], dims[v], field);
        for (col, lab) in by_vertex[v].iter().enumerate() {
            // Rewriting: pull the loop power through the arrow, letter keeps
            // the remainder, the quotient converts at the target exponent.
            let q = lab.eps_power / data.f(u, v);
            let r = lab.eps_power % data.f(u, v);
            let lifted = q * data.f(v, u);
            if lifted < data.c(u) {
                let mut img = lab.clone();
                img.vertices.push(u);
                img.letters.push(PathLetter {
                    copy: arrow.copy,
                    power: r,
                });
                img.eps_power = lifted;
                m.set(index[u][&img], col, S::from_int(1, field));
            }
        }
        arrows.insert((u, v, arrow.copy), m);
    }
    Representation::new(spec.clone(), dims, eps, arrows, field).expect("projective is well formed")
}

/// Indecomposable injective at `i`: the transposed projective over the
/// reversed orientation, with every arrow matrix transposed back onto the
/// original arrows.
pub fn injective<S: Scalar>(
    spec: &Arc<AlgebraSpec>,
    i: usize,
    field: FieldDescriptor,
) -> Representation<S> {
    assert_eq!(
        spec.kind(),
        AlgebraKind::H,
        "injectives are built over the plain algebra"
    );
    let reversed = Arc::new(AlgebraSpec::new(
        AlgebraKind::H,
        spec.data().clone(),
        spec.omega().reversed(spec.data().cartan()),
    ));
    let p = projective::<S>(&reversed, i, field);
    let n = spec.n();
    let dims = p.dims().to_vec();
    let eps: Vec<Mat<S>> = (0..n).map(|v| p.eps(v).transpose()).collect();
    let mut arrows = BTreeMap::new();
    for arrow in spec.arrows() {
        arrows.insert(
            (arrow.target, arrow.source, arrow.copy),
            p.arrow(arrow.source, arrow.target, arrow.copy).transpose(),
        );
    }
    Representation::new(spec.clone(), dims, eps, arrows, field).expect("injective is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanData, CartanMatrix, Orientation};
    use crate::linalg::{FieldDescriptor, Q};
    use crate::rep::{
        self, hom_dim, injective_dim_vectors, is_isomorphic, projective_dim_vectors, IsoOutcome,
    };
    use crate::roots::{beta_vectors, gamma_vectors, plus_admissible_sequence};

    const QQ: FieldDescriptor = FieldDescriptor::Rationals;

    fn spec_from(rows: Vec<Vec<i64>>, pairs: Vec<(usize, usize)>) -> Arc<AlgebraSpec> {
        let c = CartanMatrix::new(rows).unwrap();
        let o = Orientation::new(pairs, &c).unwrap();
        Arc::new(AlgebraSpec::new(
            AlgebraKind::H,
            CartanData::with_minimal_symmetrizer(c).unwrap(),
            o,
        ))
    }

    fn b2() -> Arc<AlgebraSpec> {
        spec_from(vec![vec![2, -1], vec![-2, 2]], vec![(0, 1)])
    }

    fn a2_22() -> Arc<AlgebraSpec> {
        // Symmetric rank 2 with weights (2,2).
        let c = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let o = Orientation::new(vec![(0, 1)], &c).unwrap();
        let s = crate::cartan::Symmetrizer::new(vec![2, 2], &c).unwrap();
        let d = CartanData::new(c, s).unwrap();
        Arc::new(AlgebraSpec::new(AlgebraKind::H, d, o))
    }

    fn running() -> Arc<AlgebraSpec> {
        spec_from(
            vec![vec![2, -4, 0], vec![-6, 2, -3], vec![0, -9, 2]],
            vec![(0, 1), (1, 2)],
        )
    }

    fn fixtures() -> Vec<Arc<AlgebraSpec>> {
        vec![
            a2_22(),
            b2(),
            spec_from(
                vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
                vec![(0, 1), (1, 2)],
            ),
            spec_from(
                vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
                vec![(0, 1), (1, 2)],
            ),
            spec_from(vec![vec![2, -3], vec![-1, 2]], vec![(0, 1)]),
        ]
    }

    #[test]
    fn generalized_simple_shapes() {
        let spec = b2();
        let e1 = generalized_simple::<Q>(&spec, 0, QQ);
        assert_eq!(e1.dims(), &[2, 0]);
        assert!(e1.validate().is_empty());
        assert_eq!(e1.rank_vector(), Some(vec![1, 0]));
    }

    #[test]
    fn simple_is_generalized_simple_iff_weight_one() {
        let spec = b2();
        let s2 = simple::<Q>(&spec, 1, QQ);
        let e2 = generalized_simple::<Q>(&spec, 1, QQ);
        assert_eq!(s2.dims(), e2.dims());
        assert!(!simple::<Q>(&spec, 0, QQ).is_locally_free());
        assert!(e2.is_locally_free());
    }

    #[test]
    fn projective_dims_match_recursion_on_fixtures() {
        for spec in fixtures() {
            let expected = projective_dim_vectors(&spec);
            for (i, exp) in expected.iter().enumerate() {
                let p = projective::<Q>(&spec, i, QQ);
                assert_eq!(&p.dim_vector(), exp);
                assert!(p.validate().is_empty());
                assert!(p.is_locally_free());
            }
        }
    }

    #[test]
    fn injective_dims_match_recursion_on_fixtures() {
        for spec in fixtures() {
            let expected = injective_dim_vectors(&spec);
            for (i, exp) in expected.iter().enumerate() {
                let m = injective::<Q>(&spec, i, QQ);
                assert_eq!(&m.dim_vector(), exp);
                assert!(m.validate().is_empty());
                assert!(m.is_locally_free());
            }
        }
    }

    #[test]
    fn small_projective_and_injective_dimensions() {
        let spec = b2();
        assert_eq!(projective::<Q>(&spec, 0, QQ).total_dim(), 2);
        assert_eq!(projective::<Q>(&spec, 1, QQ).total_dim(), 3);
        assert_eq!(injective::<Q>(&spec, 0, QQ).total_dim(), 4);
        assert_eq!(injective::<Q>(&spec, 1, QQ).total_dim(), 1);
        assert_eq!(projective::<Q>(&a2_22(), 1, QQ).total_dim(), 4);
    }

    #[test]
    fn wild_example_projective_dimensions() {
        let spec = running();
        let dims: Vec<usize> = (0..3)
            .map(|i| projective::<Q>(&spec, i, QQ).total_dim())
            .collect();
        assert_eq!(dims, vec![9, 42, 128]);
    }

    #[test]
    fn projective_ranks_are_beta_vectors() {
        for spec in fixtures().into_iter().chain([running()]) {
            let seq = plus_admissible_sequence(spec.data().cartan(), spec.omega());
            let betas = beta_vectors(spec.data().cartan(), &seq);
            for (k, &i) in seq.iter().enumerate() {
                let p = projective::<Q>(&spec, i, QQ);
                assert_eq!(p.rank_vector(), Some(betas[k].clone()));
            }
        }
    }

    #[test]
    fn injective_ranks_are_gamma_vectors() {
        for spec in fixtures().into_iter().chain([running()]) {
            let seq = plus_admissible_sequence(spec.data().cartan(), spec.omega());
            let gammas = gamma_vectors(spec.data().cartan(), &seq);
            for (k, &i) in seq.iter().enumerate() {
                let m = injective::<Q>(&spec, i, QQ);
                assert_eq!(m.rank_vector(), Some(gammas[k].clone()));
            }
        }
    }

    #[test]
    fn sink_projective_and_source_injective_are_generalized_simples() {
        let spec = b2();
        // Vertex 0 is the sink, vertex 1 the source of the single edge.
        let p1 = projective::<Q>(&spec, 0, QQ);
        let e1 = generalized_simple::<Q>(&spec, 0, QQ);
        assert_eq!(p1.dims(), e1.dims());
        assert_eq!(p1.eps(0), e1.eps(0));
        let i2 = injective::<Q>(&spec, 1, QQ);
        let e2 = generalized_simple::<Q>(&spec, 1, QQ);
        assert_eq!(i2.dims(), e2.dims());
    }

    /// Restriction of a representation to a coordinate subspace selected
    /// per vertex; the selection must be action-stable.
    fn restrict_to(m: &Representation<Q>, keep: &[Vec<usize>]) -> Representation<Q> {
        let spec = m.spec().clone();
        let n = spec.n();
        let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
        let pick = |mat: &Mat<Q>, rows: &[usize], cols: &[usize]| {
            Mat::from_fn(rows.len(), cols.len(), QQ, |r, c| {
                mat.get(rows[r], cols[c]).clone()
            })
        };
        let eps: Vec<Mat<Q>> = (0..n).map(|v| pick(m.eps(v), &keep[v], &keep[v])).collect();
        let mut arrows = BTreeMap::new();
        for arrow in spec.arrows() {
            let (t, s) = (arrow.target, arrow.source);
            arrows.insert(
                (t, s, arrow.copy),
                pick(m.arrow(t, s, arrow.copy), &keep[t], &keep[s]),
            );
        }
        Representation::new(spec, dims, eps, arrows, QQ).unwrap()
    }

    #[test]
    fn resolution_kernel_is_sum_of_smaller_projectives() {
        for spec in fixtures() {
            for i in 0..spec.n() {
                let labels = projective_labels(&spec, i);
                let p = projective::<Q>(&spec, i, QQ);
                // Kernel of the surjection onto the generalized simple:
                // all labels with a nonempty path.
                let keep: Vec<Vec<usize>> = labels
                    .iter()
                    .map(|list| {
                        list.iter()
                            .enumerate()
                            .filter(|(_, l)| !l.letters.is_empty())
                            .map(|(k, _)| k)
                            .collect()
                    })
                    .collect();
                let kernel = restrict_to(&p, &keep);
                assert!(kernel.validate().is_empty());
                let mut expected = Representation::zero(spec.clone(), QQ);
                for j in spec.omega().out_of_vertex(i) {
                    let pj = projective::<Q>(&spec, j, QQ);
                    let mult = spec.data().cartan().c(j, i).unsigned_abs() as usize;
                    for _ in 0..mult {
                        expected = expected.direct_sum(&pj).unwrap();
                    }
                }
                assert_eq!(kernel.dim_vector(), expected.dim_vector());
                match is_isomorphic(&kernel, &expected, 11, 20).unwrap() {
                    IsoOutcome::Isomorphic(_) => {}
                    other => panic!(
                        "kernel of projective {} not isomorphic to glued sum: {other:?}",
                        i + 1
                    ),
                }
            }
        }
    }

    #[test]
    fn yoneda_dimension_of_hom_from_projective() {
        use rand::SeedableRng;
        let spec = b2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let m: Representation<Q> =
                rep::random_locally_free(spec.clone(), &[2, 1], QQ, &mut rng);
            for i in 0..spec.n() {
                let p = projective::<Q>(&spec, i, QQ);
                assert_eq!(hom_dim(&p, &m).unwrap(), m.dims()[i]);
            }
        }
    }

    #[test]
    fn projectives_have_no_self_extensions() {
        let spec = b2();
        for i in 0..spec.n() {
            let p = projective::<Q>(&spec, i, QQ);
            assert!(rep::is_rigid(&p).unwrap());
            let m = injective::<Q>(&spec, i, QQ);
            assert!(rep::is_rigid(&m).unwrap());
        }
        // dim Hom(P2, P2) = 1.
        let p2 = projective::<Q>(&spec, 1, QQ);
        assert_eq!(hom_dim(&p2, &p2).unwrap(), 1);
    }
}
