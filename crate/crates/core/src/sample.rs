//! Seeded random generation of vectors, matrices, subspaces, and
//! multivectors. Everything is driven by a caller-supplied ChaCha8
//! stream so that property checks are reproducible from a single seed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exterior::{subsets, Multivector};
use crate::gf::{Elt, FieldSpec, MatGF, Subspace};
use crate::schubert::DimSeq;

pub fn random_vector(rng: &mut ChaCha8Rng, spec: &FieldSpec, m: usize) -> Vec<Elt> {
    (0..m)
        .map(|_| spec.elt(rng.gen_range(0..spec.q())))
        .collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, spec: &FieldSpec, rows: usize, cols: usize) -> MatGF {
    let rows: Vec<Vec<Elt>> = (0..rows).map(|_| random_vector(rng, spec, cols)).collect();
    MatGF::from_rows(&rows).expect("uniform row lengths")
}

/// A uniformly chosen k-dimensional subspace of F_q^m, by rejection on
/// random spanning sets.
pub fn random_subspace(rng: &mut ChaCha8Rng, spec: &FieldSpec, m: usize, k: usize) -> Subspace {
    assert!(k <= m, "subspace dimension exceeds ambient");
    loop {
        let s = Subspace::from_rows(spec, &random_matrix(rng, spec, k, m));
        if s.dim() == k {
            return s;
        }
    }
}

/// A full-rank k x m matrix (row space of dimension k).
pub fn random_full_rank_matrix(
    rng: &mut ChaCha8Rng,
    spec: &FieldSpec,
    k: usize,
    m: usize,
) -> MatGF {
    assert!(k <= m, "rank bound exceeds ambient");
    loop {
        let mat = random_matrix(rng, spec, k, m);
        if mat.rank(spec) == k {
            return mat;
        }
    }
}

/// A uniformly random multivector of the given degree, not necessarily
/// decomposable and possibly zero.
pub fn random_multivector(
    rng: &mut ChaCha8Rng,
    spec: &FieldSpec,
    m: usize,
    d: usize,
) -> Multivector {
    let pairs = subsets(m, d)
        .into_iter()
        .map(|s| (s, spec.elt(rng.gen_range(0..spec.q()))));
    Multivector::from_coeffs(m, d, pairs).expect("generated subsets are valid")
}

pub fn random_nonzero_multivector(
    rng: &mut ChaCha8Rng,
    spec: &FieldSpec,
    m: usize,
    d: usize,
) -> Multivector {
    loop {
        let f = random_multivector(rng, spec, m, d);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random legal dimension sequence of length ell inside F^m: a sorted
/// ell-subset of 1..=m.
pub fn random_dimseq(rng: &mut ChaCha8Rng, ell: usize, m: usize) -> DimSeq {
    assert!(ell < m, "need ell < m");
    let mut picks: Vec<usize> = (1..=m).collect();
    for i in 0..ell {
        let j = rng.gen_range(i..picks.len());
        picks.swap(i, j);
    }
    let mut alpha: Vec<usize> = picks[..ell].to_vec();
    alpha.sort_unstable();
    DimSeq::new(m, &alpha).expect("sorted subset of 1..=m is legal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn seeded_generation_is_deterministic() {
        let spec = FieldSpec::from_order(3).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(
            random_vector(&mut a, &spec, 6),
            random_vector(&mut b, &spec, 6)
        );
        assert_eq!(
            random_subspace(&mut a, &spec, 5, 2),
            random_subspace(&mut b, &spec, 5, 2)
        );
        assert_eq!(
            random_multivector(&mut a, &spec, 4, 2),
            random_multivector(&mut b, &spec, 4, 2)
        );
        assert_eq!(random_dimseq(&mut a, 2, 5), random_dimseq(&mut b, 2, 5));
    }

    #[test]
    fn generated_objects_have_requested_shape() {
        let spec = FieldSpec::from_order(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..=4 {
            assert_eq!(random_subspace(&mut rng, &spec, 4, k).dim(), k);
        }
        assert_eq!(
            random_full_rank_matrix(&mut rng, &spec, 3, 5).rank(&spec),
            3
        );
        let f = random_nonzero_multivector(&mut rng, &spec, 4, 2);
        assert!(!f.is_zero());
        for _ in 0..20 {
            let ds = random_dimseq(&mut rng, 3, 6);
            assert_eq!(ds.ell(), 3);
            assert!(ds.alpha().windows(2).all(|w| w[0] < w[1]));
        }
    }
}
