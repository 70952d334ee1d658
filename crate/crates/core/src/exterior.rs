//! Exterior algebra over GF(q)^m: sparse multivectors indexed by
//! ascending basis subsets, wedge products with merge-counted signs,
//! annihilator subspaces, the decomposability test, and the
//! maximal-minor coordinates of a subspace.
//!
//! Basis convention: e_S for a subset S = {s1 < ... < sd} of {1..m}
//! means e_{s1} ^ ... ^ e_{sd} with the factors ascending. Wedges of
//! degree-1 vectors are likewise taken in ascending row order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf::{kernel_basis, Elt, FieldSpec, MatGF, Subspace};

/// A strictly increasing subset of {1..m}, 1-based. The derived ordering
/// is lexicographic on the element tuple.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubsetIdx(Vec<u8>);

impl SubsetIdx {
    pub fn new(elems: Vec<u8>) -> Result<SubsetIdx> {
        if elems.windows(2).any(|w| w[0] >= w[1]) || elems.first() == Some(&0) {
            return Err(Error::OutOfRange(format!(
                "subset {elems:?} is not strictly increasing over 1-based positions"
            )));
        }
        Ok(SubsetIdx(elems))
    }

    pub fn empty() -> SubsetIdx {
        SubsetIdx(Vec::new())
    }

    pub fn elems(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u8) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// {1..m} minus this subset.
    pub fn complement(&self, m: usize) -> SubsetIdx {
        SubsetIdx((1..=m as u8).filter(|x| !self.contains(*x)).collect())
    }
}

/// All d-subsets of {1..m} in lexicographic order.
pub fn subsets(m: usize, d: usize) -> Vec<SubsetIdx> {
    if d > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=d as u8).collect();
    loop {
        out.push(SubsetIdx(cur.clone()));
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) < m - (d - 1 - i) {
                cur[i] += 1;
                for j in i + 1..d {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Number of pairs (a, b) with a in `left`, b in `right`, a > b. This is
/// the number of transpositions needed to merge the concatenation
/// left++right into ascending order, so it decides the wedge sign.
fn inversions(left: &[u8], right: &[u8]) -> usize {
    let mut count = 0;
    for &a in left {
        for &b in right {
            if a > b {
                count += 1;
            }
        }
    }
    count
}

fn merge_disjoint(left: &[u8], right: &[u8]) -> Option<Vec<u8>> {
    let mut out = Vec::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        match left[i].cmp(&right[j]) {
            std::cmp::Ordering::Less => {
                out.push(left[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(right[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&left[i..]);
    out.extend_from_slice(&right[j..]);
    Some(out)
}

/// A homogeneous element of the d-th exterior power of GF(q)^m, stored
/// sparsely; subsets with zero coefficient are never kept.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multivector {
    m: usize,
    d: usize,
    coeffs: BTreeMap<SubsetIdx, Elt>,
}

impl Multivector {
    pub fn zero(m: usize, d: usize) -> Multivector {
        assert!(d <= m, "degree {d} exceeds ambient {m}");
        Multivector {
            m,
            d,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis multivector e_S.
    pub fn basis_elem(m: usize, s: SubsetIdx) -> Result<Multivector> {
        if s.elems().last().is_some_and(|&x| x as usize > m) {
            return Err(Error::OutOfRange(format!(
                "subset {:?} does not fit in ambient {m}",
                s.elems()
            )));
        }
        let d = s.len();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(s, Elt::ONE);
        Ok(Multivector { m, d, coeffs })
    }

    pub fn from_coeffs(
        m: usize,
        d: usize,
        pairs: impl IntoIterator<Item = (SubsetIdx, Elt)>,
    ) -> Result<Multivector> {
        let mut mv = Multivector::zero(m, d);
        for (s, c) in pairs {
            if s.len() != d {
                return Err(Error::DegreeMismatch {
                    expected: d,
                    got: s.len(),
                });
            }
            if s.elems().last().is_some_and(|&x| x as usize > m) {
                return Err(Error::OutOfRange(format!(
                    "subset {:?} does not fit in ambient {m}",
                    s.elems()
                )));
            }
            if !c.is_zero() {
                mv.coeffs.insert(s, c);
            }
        }
        Ok(mv)
    }

    /// Degree-1 multivector with the given coordinate vector.
    pub fn from_vector(v: &[Elt]) -> Multivector {
        let mut coeffs = BTreeMap::new();
        for (j, &c) in v.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(SubsetIdx(vec![(j + 1) as u8]), c);
            }
        }
        Multivector {
            m: v.len(),
            d: 1,
            coeffs,
        }
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, s: &SubsetIdx) -> Elt {
        self.coeffs.get(s).copied().unwrap_or(Elt::ZERO)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&SubsetIdx, Elt)> {
        self.coeffs.iter().map(|(s, &c)| (s, c))
    }

    pub fn add(&self, spec: &FieldSpec, other: &Multivector) -> Result<Multivector> {
        if self.m != other.m {
            return Err(Error::AmbientMismatch(self.m, other.m));
        }
        if self.d != other.d {
            return Err(Error::DegreeMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            let acc = spec.add(out.coeff(s), *c);
            if acc.is_zero() {
                out.coeffs.remove(s);
            } else {
                out.coeffs.insert(s.clone(), acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, spec: &FieldSpec, by: Elt) -> Multivector {
        if by.is_zero() {
            return Multivector::zero(self.m, self.d);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(s, &c)| (s.clone(), spec.mul(c, by)))
            .collect();
        Multivector {
            m: self.m,
            d: self.d,
            coeffs,
        }
    }

    /// Wedge product by bilinear expansion; the sign on each basis pair
    /// is (-1)^inversions from merging the two ascending subsets.
    pub fn wedge(&self, spec: &FieldSpec, other: &Multivector) -> Result<Multivector> {
        if self.m != other.m {
            return Err(Error::AmbientMismatch(self.m, other.m));
        }
        if self.d + other.d > self.m {
            return Err(Error::DegreeOverflow(self.d, other.d, self.m));
        }
        let neg_one = spec.neg(Elt::ONE);
        let mut out = Multivector::zero(self.m, self.d + other.d);
        for (s, &a) in &self.coeffs {
            for (t, &b) in &other.coeffs {
                let Some(merged) = merge_disjoint(s.elems(), t.elems()) else {
                    continue;
                };
                let mut term = spec.mul(a, b);
                if inversions(s.elems(), t.elems()) % 2 == 1 {
                    term = spec.mul(term, neg_one);
                }
                let key = SubsetIdx(merged);
                let acc = spec.add(out.coeff(&key), term);
                if acc.is_zero() {
                    out.coeffs.remove(&key);
                } else {
                    out.coeffs.insert(key, acc);
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of e_{1..m}; only defined for top-degree elements.
    pub fn top_scalar(&self) -> Result<Elt> {
        if self.d != self.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                got: self.d,
            });
        }
        Ok(self.coeff(&SubsetIdx((1..=self.m as u8).collect())))
    }

    /// The subspace {x : self ^ x = 0}. A nonzero multivector of degree
    /// d is a wedge of d independent vectors exactly when this space has
    /// dimension d, and then it recovers their span.
    pub fn annihilator(&self, spec: &FieldSpec) -> Subspace {
        if self.is_zero() || self.d == self.m {
            // wedging into degree m+1 is the zero map, and 0 ^ x = 0
            return Subspace::full(self.m);
        }
        let index: BTreeMap<SubsetIdx, usize> = subsets(self.m, self.d + 1)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut map = MatGF::zeros(index.len(), self.m);
        for (s, &c) in &self.coeffs {
            for i in 1..=self.m as u8 {
                if s.contains(i) {
                    continue;
                }
                let merged = merge_disjoint(s.elems(), &[i]).expect("i is not in s");
                let row = index[&SubsetIdx(merged)];
                let mut term = c;
                if inversions(s.elems(), &[i]) % 2 == 1 {
                    term = spec.neg(term);
                }
                let col = (i - 1) as usize;
                map[(row, col)] = spec.add(map[(row, col)], term);
            }
        }
        kernel_basis(spec, &map)
    }

    /// Whether this is a wedge of d independent vectors, decided by the
    /// annihilator dimension. Zero input and top degree are rejected
    /// because the dimension criterion is vacuous there.
    pub fn is_decomposable(&self, spec: &FieldSpec) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.d == self.m {
            return Err(Error::DegreeEqualsAmbient);
        }
        Ok(self.annihilator(spec).dim() == self.d)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.m, self.d);
        for (s, c) in &self.coeffs {
            for x in s.elems() {
                let _ = write!(out, "{x} ");
            }
            let _ = writeln!(out, "{c}");
        }
        out
    }

    /// Parse the [`to_text`](Self::to_text) format: a "m d" header, then
    /// one "s1 .. sd coeff" line per nonzero coefficient.
    pub fn from_text(spec: &FieldSpec, s: &str) -> Result<Multivector> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty multivector text".into()))?;
        let head: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad header {header:?}")))
            })
            .collect::<Result<_>>()?;
        let [m, d] = head[..] else {
            return Err(Error::Parse(format!(
                "header must be 'm d', got {header:?}"
            )));
        };
        if d > m {
            return Err(Error::Parse(format!("degree {d} exceeds ambient {m}")));
        }
        let mut pairs = Vec::new();
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != d + 1 {
                return Err(Error::Parse(format!(
                    "expected {d} subset entries plus a coefficient, got {line:?}"
                )));
            }
            let elems: Vec<u8> = toks[..d]
                .iter()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad index {t:?}")))
                })
                .collect::<Result<_>>()?;
            let c: usize = toks[d]
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", toks[d])))?;
            if c >= spec.q() {
                return Err(Error::Parse(format!(
                    "coefficient {c} not below field order {}",
                    spec.q()
                )));
            }
            pairs.push((SubsetIdx::new(elems)?, spec.elt(c)));
        }
        Multivector::from_coeffs(m, d, pairs)
    }
}

/// Wedge of the rows of a matrix, first row leftmost. The result is zero
/// exactly when the rows are dependent.
pub fn rows_wedge(spec: &FieldSpec, mat: &MatGF) -> Result<Multivector> {
    if mat.rows() == 0 {
        return Err(Error::ZeroDimension);
    }
    if mat.rows() > mat.cols() {
        return Err(Error::DegreeOverflow(mat.rows() - 1, 1, mat.cols()));
    }
    let mut acc = Multivector::from_vector(mat.row(0));
    for i in 1..mat.rows() {
        acc = acc.wedge(spec, &Multivector::from_vector(mat.row(i)))?;
    }
    Ok(acc)
}

/// Wedge of the canonical basis of a subspace, in stored row order.
pub fn basis_multivector(spec: &FieldSpec, w: &Subspace) -> Result<Multivector> {
    if w.dim() == 0 {
        return Err(Error::ZeroDimension);
    }
    rows_wedge(spec, w.basis())
}

/// Coordinates of a full-rank matrix's row space as maximal minors: the
/// coefficient at subset S is the determinant of the columns S. Computed
/// from determinants on purpose, so it cross-checks the wedge route.
pub fn pluecker(spec: &FieldSpec, mat: &MatGF) -> Result<Multivector> {
    let l = mat.rows();
    if l == 0 {
        return Err(Error::ZeroDimension);
    }
    if mat.rank(spec) != l {
        return Err(Error::RankDeficient);
    }
    let mut pairs = Vec::new();
    for s in subsets(mat.cols(), l) {
        let mut minor = MatGF::zeros(l, l);
        for (jj, &col) in s.elems().iter().enumerate() {
            for i in 0..l {
                minor[(i, jj)] = mat[(i, (col - 1) as usize)];
            }
        }
        let det = minor.det(spec);
        if !det.is_zero() {
            pairs.push((s, det));
        }
    }
    Multivector::from_coeffs(mat.cols(), l, pairs)
}

/// The coefficient of e_{1..m} in f ^ g, for degrees summing to m.
/// Exploits sparsity: only complementary subset pairs contribute.
pub fn top_pairing(spec: &FieldSpec, f: &Multivector, g: &Multivector) -> Result<Elt> {
    if f.m() != g.m() {
        return Err(Error::AmbientMismatch(f.m(), g.m()));
    }
    if f.d() + g.d() != f.m() {
        return Err(Error::DegreeMismatch {
            expected: f.m() - f.d(),
            got: g.d(),
        });
    }
    let mut acc = Elt::ZERO;
    for (s, c) in g.coeffs() {
        let comp = s.complement(f.m());
        let fc = f.coeff(&comp);
        if fc.is_zero() {
            continue;
        }
        let mut term = spec.mul(fc, c);
        if inversions(comp.elems(), s.elems()) % 2 == 1 {
            term = spec.neg(term);
        }
        acc = spec.add(acc, term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::enumerate_subspaces;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    fn s(elems: &[u8]) -> SubsetIdx {
        SubsetIdx::new(elems.to_vec()).unwrap()
    }

    fn e(m: usize, elems: &[u8]) -> Multivector {
        Multivector::basis_elem(m, s(elems)).unwrap()
    }

    fn random_mv(rng: &mut ChaCha8Rng, spec: &FieldSpec, m: usize, d: usize) -> Multivector {
        let pairs: Vec<(SubsetIdx, Elt)> = subsets(m, d)
            .into_iter()
            .map(|s| (s, spec.elt(rng.gen_range(0..spec.q()))))
            .collect();
        Multivector::from_coeffs(m, d, pairs).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, spec: &FieldSpec, rows: usize, cols: usize) -> MatGF {
        let entries: Vec<Elt> = (0..rows * cols)
            .map(|_| spec.elt(rng.gen_range(0..spec.q())))
            .collect();
        MatGF::from_entries(rows, cols, entries).unwrap()
    }

    #[test]
    fn subsets_are_lexicographic_and_sorted() {
        let got = subsets(4, 2);
        let want = vec![
            s(&[1, 2]),
            s(&[1, 3]),
            s(&[1, 4]),
            s(&[2, 3]),
            s(&[2, 4]),
            s(&[3, 4]),
        ];
        assert_eq!(got, want);
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(sorted, got, "generation order agrees with the derived Ord");
        assert_eq!(subsets(3, 0), vec![SubsetIdx::empty()]);
        assert_eq!(subsets(2, 3), Vec::<SubsetIdx>::new());
    }

    #[test]
    fn subset_validation_and_complement() {
        assert!(SubsetIdx::new(vec![1, 1]).is_err());
        assert!(SubsetIdx::new(vec![2, 1]).is_err());
        assert!(SubsetIdx::new(vec![0, 1]).is_err());
        assert_eq!(s(&[2, 4]).complement(5), s(&[1, 3, 5]));
        assert_eq!(SubsetIdx::empty().complement(3), s(&[1, 2, 3]));
    }

    #[test]
    fn wedge_basic_identities() {
        let f2 = gf(2);
        let f3 = gf(3);

        let sq = e(3, &[1]).wedge(&f2, &e(3, &[1])).unwrap();
        assert!(sq.is_zero(), "e1 ^ e1 = 0");

        // e2 ^ e1 = -e_{12}: coefficient 1 over GF(2), 2 over GF(3)
        let w2 = e(3, &[2]).wedge(&f2, &e(3, &[1])).unwrap();
        assert_eq!(w2.coeff(&s(&[1, 2])), Elt(1));
        let w3 = e(3, &[2]).wedge(&f3, &e(3, &[1])).unwrap();
        assert_eq!(w3.coeff(&s(&[1, 2])), Elt(2));

        // (e1 + e2) ^ e3 over GF(2)
        let v = Multivector::from_vector(&[Elt(1), Elt(1), Elt(0)]);
        let w = v.wedge(&f2, &e(3, &[3])).unwrap();
        assert_eq!(w, e(3, &[1, 3]).add(&f2, &e(3, &[2, 3])).unwrap());

        assert!(matches!(
            e(3, &[1, 2]).wedge(&f2, &e(3, &[2, 3])).unwrap_err(),
            Error::DegreeOverflow(2, 2, 3)
        ));
    }

    #[test]
    fn wedge_is_graded_anticommutative_and_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for q in [2u64, 3, 4] {
            let f = gf(q);
            for _ in 0..60 {
                let m = rng.gen_range(2..=5);
                let a = rng.gen_range(0..=m);
                let b = rng.gen_range(0..=m - a);
                let u = random_mv(&mut rng, &f, m, a);
                let v = random_mv(&mut rng, &f, m, b);
                let uv = u.wedge(&f, &v).unwrap();
                let mut vu = v.wedge(&f, &u).unwrap();
                if (a * b) % 2 == 1 {
                    vu = vu.scale(&f, f.neg(Elt::ONE));
                }
                assert_eq!(uv, vu, "u^v = (-1)^(ab) v^u");

                let c = rng.gen_range(0..=m - a - b);
                let w = random_mv(&mut rng, &f, m, c);
                let left = uv.wedge(&f, &w).unwrap();
                let right = u.wedge(&f, &v.wedge(&f, &w).unwrap()).unwrap();
                assert_eq!(left, right, "associativity");
            }
        }
    }

    #[test]
    fn top_scalar_picks_the_full_subset_coefficient() {
        let f3 = gf(3);
        let w = e(3, &[1, 2]).wedge(&f3, &e(3, &[3])).unwrap();
        assert_eq!(w.top_scalar().unwrap(), Elt(1));
        let w = e(3, &[2, 3]).wedge(&f3, &e(3, &[1])).unwrap();
        assert_eq!(w.top_scalar().unwrap(), Elt(1), "even permutation 231");
        let w = e(3, &[1, 3]).wedge(&f3, &e(3, &[2])).unwrap();
        assert_eq!(w.top_scalar().unwrap(), Elt(2), "odd permutation 132");
        assert!(matches!(
            e(3, &[1]).top_scalar().unwrap_err(),
            Error::DegreeMismatch {
                expected: 3,
                got: 1
            }
        ));
    }

    /// Brute-force annihilator: filter every vector of F^m.
    fn annihilator_brute(spec: &FieldSpec, f: &Multivector) -> Vec<Vec<Elt>> {
        Subspace::full(f.m())
            .vectors(spec)
            .into_iter()
            .filter(|v| {
                f.wedge(spec, &Multivector::from_vector(v))
                    .map(|w| w.is_zero())
                    .unwrap_or(true)
            })
            .collect()
    }

    #[test]
    fn annihilator_known_cases_and_brute_oracle() {
        let f2 = gf(2);
        let ann = e(4, &[1, 2]).annihilator(&f2);
        assert_eq!(ann, Subspace::coordinate_prefix(4, 2));

        assert_eq!(Multivector::zero(4, 2).annihilator(&f2), Subspace::full(4));

        // e12 + e34 kills no nonzero vector
        let f = e(4, &[1, 2]).add(&f2, &e(4, &[3, 4])).unwrap();
        assert_eq!(f.annihilator(&f2).dim(), 0);

        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for q in [2u64, 3] {
            let fq = gf(q);
            for _ in 0..40 {
                let m = rng.gen_range(2..=4);
                let d = rng.gen_range(1..m);
                let f = random_mv(&mut rng, &fq, m, d);
                let ann = f.annihilator(&fq);
                let brute = annihilator_brute(&fq, &f);
                assert_eq!(
                    (fq.q() as u64).pow(ann.dim() as u32),
                    brute.len() as u64,
                    "annihilator size"
                );
                for v in &brute {
                    assert!(ann.contains_vector(&fq, v));
                }
            }
        }
    }

    #[test]
    fn decomposability_criterion() {
        let f2 = gf(2);
        assert!(e(4, &[1, 2]).is_decomposable(&f2).unwrap());
        let sum = e(4, &[1, 2]).add(&f2, &e(4, &[3, 4])).unwrap();
        assert!(!sum.is_decomposable(&f2).unwrap());
        // e13 + e23 = (e1 + e2) ^ e3
        let dec = e(4, &[1, 3]).add(&f2, &e(4, &[2, 3])).unwrap();
        assert!(dec.is_decomposable(&f2).unwrap());

        assert_eq!(
            Multivector::zero(4, 2).is_decomposable(&f2).unwrap_err(),
            Error::ZeroInput
        );
        assert_eq!(
            e(2, &[1, 2]).is_decomposable(&f2).unwrap_err(),
            Error::DegreeEqualsAmbient
        );
    }

    #[test]
    fn basis_multivector_round_trips_through_annihilator() {
        let f2 = gf(2);
        let w = Subspace::coordinate_prefix(4, 2);
        assert_eq!(basis_multivector(&f2, &w).unwrap(), e(4, &[1, 2]));
        assert!(matches!(
            basis_multivector(&f2, &Subspace::zero(3)).unwrap_err(),
            Error::ZeroDimension
        ));

        for q in [2u64, 3] {
            let f = gf(q);
            for m in 2..=4 {
                for k in 1..m {
                    for w in enumerate_subspaces(&f, m, k, 100_000).unwrap() {
                        let mv = basis_multivector(&f, &w).unwrap();
                        assert!(mv.is_decomposable(&f).unwrap());
                        assert_eq!(mv.annihilator(&f), w, "span is recovered");
                    }
                }
            }
        }
    }

    #[test]
    fn row_operations_scale_the_wedge_by_the_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for q in [2u64, 3, 5] {
            let f = gf(q);
            for _ in 0..40 {
                let m = rng.gen_range(2..=5);
                let k = rng.gen_range(1..=m);
                let b = random_matrix(&mut rng, &f, k, m);
                let u = loop {
                    let cand = random_matrix(&mut rng, &f, k, k);
                    if cand.rank(&f) == k {
                        break cand;
                    }
                };
                let left = rows_wedge(&f, &u.mat_mul(&f, &b)).unwrap();
                let right = rows_wedge(&f, &b).unwrap().scale(&f, u.det(&f));
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn pluecker_known_case_and_wedge_agreement() {
        // rows {e1 + e3, e2}: minors give e12 + e23 over GF(2),
        // and e12 + 2*e23 over GF(3) from the column swap sign
        for (q, c23) in [(2u64, Elt(1)), (3u64, Elt(2))] {
            let f = gf(q);
            let m = MatGF::from_rows(&[vec![Elt(1), Elt(0), Elt(1)], vec![Elt(0), Elt(1), Elt(0)]])
                .unwrap();
            let p = pluecker(&f, &m).unwrap();
            assert_eq!(p.coeff(&s(&[1, 2])), Elt(1));
            assert_eq!(p.coeff(&s(&[1, 3])), Elt(0));
            assert_eq!(p.coeff(&s(&[2, 3])), c23);
            assert_eq!(p, rows_wedge(&f, &m).unwrap());
        }

        let f2 = gf(2);
        let dep = MatGF::from_rows(&[vec![Elt(1), Elt(1)], vec![Elt(1), Elt(1)]]).unwrap();
        assert!(matches!(
            pluecker(&f2, &dep).unwrap_err(),
            Error::RankDeficient
        ));

        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for q in [2u64, 3, 4] {
            let f = gf(q);
            for _ in 0..50 {
                let m = rng.gen_range(2..=5);
                let l = rng.gen_range(1..=m);
                let mat = loop {
                    let cand = random_matrix(&mut rng, &f, l, m);
                    if cand.rank(&f) == l {
                        break cand;
                    }
                };
                assert_eq!(
                    pluecker(&f, &mat).unwrap(),
                    rows_wedge(&f, &mat).unwrap(),
                    "minors agree with the wedge of rows"
                );
            }
        }
    }

    #[test]
    fn top_pairing_matches_full_wedge() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for q in [2u64, 3] {
            let f = gf(q);
            for _ in 0..60 {
                let m = rng.gen_range(2..=5);
                let d = rng.gen_range(0..=m);
                let a = random_mv(&mut rng, &f, m, d);
                let b = random_mv(&mut rng, &f, m, m - d);
                let fast = top_pairing(&f, &a, &b).unwrap();
                let slow = a.wedge(&f, &b).unwrap().top_scalar().unwrap();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn multivector_text_round_trip() {
        let f3 = gf(3);
        let mv =
            Multivector::from_coeffs(4, 2, [(s(&[1, 3]), Elt(2)), (s(&[2, 4]), Elt(1))]).unwrap();
        let back = Multivector::from_text(&f3, &mv.to_text()).unwrap();
        assert_eq!(back, mv);

        let zero = Multivector::zero(4, 2);
        assert_eq!(Multivector::from_text(&f3, &zero.to_text()).unwrap(), zero);

        assert!(Multivector::from_text(&f3, "4 2\n1 2\n").is_err());
        assert!(Multivector::from_text(&f3, "4 2\n1 2 7\n").is_err());
        assert!(Multivector::from_text(&f3, "").is_err());
    }
}
