//! Weyl group reflections, admissible vertex sequences, Coxeter
//! transformations, and positive roots.
//!
//! Roots live in `Z^n` over the simple basis. The positive roots of a
//! Dynkin diagram are produced by sweeping the beta vectors of an admissible
//! sequence with the inverse Coxeter transformation; a breadth-first
//! reflection closure serves as an independent oracle.

use crate::cartan::{CartanData, CartanMatrix, Orientation};
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootsError {
    #[error("diagram is not of Dynkin type")]
    NotDynkin,
}

/// Simple reflection `s_i` acting on the root lattice.
pub fn reflect(cartan: &CartanMatrix, i: usize, x: &[i64]) -> Vec<i64> {
    assert_eq!(x.len(), cartan.n());
    let mut y = x.to_vec();
    let mut acc = -x[i];
    for (j, xj) in x.iter().enumerate() {
        if j != i {
            acc -= cartan.c(i, j) * xj;
        }
    }
    y[i] = acc;
    y
}

pub fn simple_root(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Orders all vertices by repeatedly taking the smallest unused sink and
/// flipping it. Every acyclic orientation admits such a sequence.
pub fn plus_admissible_sequence(cartan: &CartanMatrix, omega: &Orientation) -> Vec<usize> {
    let mut current = omega.clone();
    let mut used = vec![false; cartan.n()];
    let mut seq = Vec::with_capacity(cartan.n());
    for _ in 0..cartan.n() {
        let k = (0..cartan.n())
            .find(|&v| !used[v] && current.is_sink(v, cartan))
            .expect("acyclic orientation always has an unused sink");
        used[k] = true;
        seq.push(k);
        current = current
            .flip(k, cartan)
            .expect("flip at a sink stays acyclic");
    }
    debug_assert_eq!(&current, omega, "full sweep must restore the orientation");
    seq
}

/// Source-first analogue: the sink sequence of the reversed orientation.
pub fn minus_admissible_sequence(cartan: &CartanMatrix, omega: &Orientation) -> Vec<usize> {
    plus_admissible_sequence(cartan, &omega.reversed(cartan))
}

/// `beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})` for the given sequence.
pub fn beta_vectors(cartan: &CartanMatrix, seq: &[usize]) -> Vec<Vec<i64>> {
    (0..seq.len())
        .map(|k| {
            let mut x = simple_root(cartan.n(), seq[k]);
            for &i in seq[..k].iter().rev() {
                x = reflect(cartan, i, &x);
            }
            x
        })
        .collect()
}

/// `gamma_k = s_{i_n} ... s_{i_{k+1}} (alpha_{i_k})` for the given sequence.
pub fn gamma_vectors(cartan: &CartanMatrix, seq: &[usize]) -> Vec<Vec<i64>> {
    (0..seq.len())
        .map(|k| {
            let mut x = simple_root(cartan.n(), seq[k]);
            for &i in &seq[k + 1..] {
                x = reflect(cartan, i, &x);
            }
            x
        })
        .collect()
}

/// Applies the Coxeter transformation `k` times; negative `k` applies the
/// inverse. The transformation is `s_{i_n} ... s_{i_1}` along the canonical
/// sink sequence of the orientation (first vertex acts first).
pub fn coxeter_apply(cartan: &CartanMatrix, omega: &Orientation, x: &[i64], k: i64) -> Vec<i64> {
    let seq = plus_admissible_sequence(cartan, omega);
    let mut y = x.to_vec();
    if k >= 0 {
        for _ in 0..k {
            for &i in &seq {
                y = reflect(cartan, i, &y);
            }
        }
    } else {
        for _ in 0..(-k) {
            for &i in seq.iter().rev() {
                y = reflect(cartan, i, &y);
            }
        }
    }
    y
}

fn is_positive(x: &[i64]) -> bool {
    x.iter().all(|&v| v >= 0) && x.iter().any(|&v| v > 0)
}

/// All positive roots of a Dynkin diagram, sorted lexicographically.
///
/// Each orbit of the inverse Coxeter transformation through a beta vector
/// stays inside the positive cone until it leaves for good; the union of
/// these orbit prefixes over all beta vectors is the full set.
pub fn positive_roots(data: &CartanData, omega: &Orientation) -> Result<Vec<Vec<i64>>, RootsError> {
    let Some(ty) = data.dynkin_type() else {
        return Err(RootsError::NotDynkin);
    };
    let cartan = data.cartan();
    let seq = plus_admissible_sequence(cartan, omega);
    let mut roots = BTreeSet::new();
    for beta in beta_vectors(cartan, &seq) {
        let mut x = beta;
        while is_positive(&x) {
            roots.insert(x.clone());
            x = coxeter_apply(cartan, omega, &x, -1);
        }
    }
    debug_assert_eq!(roots.len(), ty.positive_root_count());
    Ok(roots.into_iter().collect())
}

/// Positive roots with the default orientation (edges directed from the
/// larger to the smaller vertex).
pub fn positive_roots_default(data: &CartanData) -> Result<Vec<Vec<i64>>, RootsError> {
    positive_roots(data, &Orientation::default_for(data.cartan()))
}

/// Result of the breadth-first reflection closure: the vectors collected
/// and whether the cap cut the search short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionClosure {
    pub roots: BTreeSet<Vec<i64>>,
    pub cap_exceeded: bool,
}

/// Closure of the simple roots under all reflections, restricted to the
/// positive cone. Stops and reports once `cap` vectors have been collected,
/// so it terminates on non-Dynkin input too. For a Dynkin diagram with
/// `cap > |positive roots|` the result is complete and exactly the set of
/// positive roots.
pub fn reflection_closure(cartan: &CartanMatrix, cap: usize) -> ReflectionClosure {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..cartan.n() {
        let e = simple_root(cartan.n(), i);
        seen.insert(e.clone());
        queue.push_back(e);
    }
    let mut cap_exceeded = false;
    while let Some(x) = queue.pop_front() {
        if seen.len() >= cap {
            cap_exceeded = true;
            break;
        }
        for i in 0..cartan.n() {
            let y = reflect(cartan, i, &x);
            if is_positive(&y) && !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    ReflectionClosure {
        roots: seen,
        cap_exceeded,
    }
}

/// Membership in the fundamental region: nonnegative, nonzero, connected
/// support, and `(Cx)_i <= 0` everywhere.
pub fn in_fundamental_region(data: &CartanData, x: &[i64]) -> bool {
    let cartan = data.cartan();
    let n = cartan.n();
    assert_eq!(x.len(), n);
    if !is_positive(x) {
        return false;
    }
    for i in 0..n {
        let cx: i64 = (0..n).map(|j| cartan.c(i, j) * x[j]).sum();
        if cx > 0 {
            return false;
        }
    }
    // Connected support.
    let support: Vec<usize> = (0..n).filter(|&i| x[i] != 0).collect();
    cartan.restrict(&support).is_connected()
}
