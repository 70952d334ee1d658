//! The evaluation code attached to a Schubert variety: generator matrix
//! construction, exhaustive weight spectrum and minimum-weight census,
//! the decomposable-codeword subset, and the two-space analysis that the
//! structural results about minimum-weight words are phrased in.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exterior::{basis_multivector, subsets, top_pairing, Multivector};
use crate::gf::{enumerate_subspaces, kernel_basis, solve, Elt, FieldSpec, MatGF, Subspace};
use crate::schubert::{
    enumerate_lambda, enumerate_points, is_schubert_decomposable, k_alpha, DimSeq, SchubertPoint,
};
use crate::Budget;

/// One codeword: the evaluations at every point, in point order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Codeword {
    pub values: Vec<Elt>,
}

impl Codeword {
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Scalar-multiple representative with leading coefficient 1.
    pub fn projective_rep(&self, spec: &FieldSpec) -> Codeword {
        match self.values.iter().find(|v| !v.is_zero()) {
            None => self.clone(),
            Some(&lead) => {
                let inv = spec.inv(lead).expect("nonzero");
                Codeword {
                    values: self.values.iter().map(|&v| spec.mul(inv, v)).collect(),
                }
            }
        }
    }
}

/// A Schubert code, fully materialized: the point list fixes the column
/// order, the evaluation matrix has one row per basis functional (the
/// (m-ell)-subsets in lexicographic order), and the generator matrix is
/// the row-reduced basis of its row space.
#[derive(Clone, Debug)]
pub struct SchubertCode {
    ds: DimSeq,
    spec: FieldSpec,
    points: Vec<SchubertPoint>,
    eval_matrix: MatGF,
    gen_matrix: MatGF,
}

impl SchubertCode {
    pub fn build(ds: &DimSeq, spec: &FieldSpec, budget: &Budget) -> Result<SchubertCode> {
        let points = enumerate_points(ds, spec, budget.subspaces)?;
        let n = points.len();
        let dual = subsets(ds.m(), ds.m() - ds.ell());
        let mut eval = MatGF::zeros(dual.len(), n);
        for (r, s) in dual.iter().enumerate() {
            let f = Multivector::basis_elem(ds.m(), s.clone())?;
            for (c, p) in points.iter().enumerate() {
                eval[(r, c)] = top_pairing(spec, &f, &p.pluck)?;
            }
        }
        for c in 0..n {
            if (0..dual.len()).all(|r| eval[(r, c)].is_zero()) {
                return Err(Error::DegenerateColumn(c));
            }
        }
        let expected_k = k_alpha(ds);
        let (rref, rank, _) = eval.rref(spec);
        if BigUint::from(rank as u64) != expected_k {
            return Err(Error::RankMismatch {
                expected: expected_k.to_string(),
                got: rank,
            });
        }
        let gen_rows: Vec<Vec<Elt>> = (0..rank).map(|i| rref.row(i).to_vec()).collect();
        Ok(SchubertCode {
            ds: ds.clone(),
            spec: spec.clone(),
            points,
            eval_matrix: eval,
            gen_matrix: MatGF::from_rows(&gen_rows)?,
        })
    }

    pub fn ds(&self) -> &DimSeq {
        &self.ds
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn points(&self) -> &[SchubertPoint] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.gen_matrix.rows()
    }

    pub fn eval_matrix(&self) -> &MatGF {
        &self.eval_matrix
    }

    pub fn gen_matrix(&self) -> &MatGF {
        &self.gen_matrix
    }

    /// The closed-form minimum distance q^delta.
    pub fn min_distance_formula(&self) -> usize {
        BigUint::from(self.spec.q() as u64)
            .pow(self.ds.delta() as u32)
            .to_usize()
            .expect("bounded by the code length")
    }

    pub fn encode(&self, message: &[Elt]) -> Result<Codeword> {
        if message.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                got: message.len(),
            });
        }
        let mut values = vec![Elt::ZERO; self.n()];
        for (i, &a) in message.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, v) in values.iter_mut().enumerate() {
                *v = self.spec.add(*v, self.spec.mul(a, self.gen_matrix[(i, c)]));
            }
        }
        Ok(Codeword { values })
    }

    /// Evaluate a functional directly at every point. This bypasses the
    /// generator matrix entirely, so it doubles as an independent route
    /// to codewords.
    pub fn encode_multivector(&self, f: &Multivector) -> Result<Codeword> {
        if f.m() != self.ds.m() {
            return Err(Error::AmbientMismatch(f.m(), self.ds.m()));
        }
        let want = self.ds.m() - self.ds.ell();
        if f.d() != want {
            return Err(Error::DegreeMismatch {
                expected: want,
                got: f.d(),
            });
        }
        let values = self
            .points
            .iter()
            .map(|p| top_pairing(&self.spec, f, &p.pluck))
            .collect::<Result<Vec<Elt>>>()?;
        Ok(Codeword { values })
    }

    /// Some functional that evaluates to the given word, if one exists.
    pub fn preimage(&self, word: &Codeword) -> Option<Multivector> {
        let coeffs = solve(&self.spec, &self.eval_matrix.transpose(), &word.values)?;
        let d = self.ds.m() - self.ds.ell();
        let pairs = subsets(self.ds.m(), d)
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero());
        Some(Multivector::from_coeffs(self.ds.m(), d, pairs).expect("subsets are valid"))
    }

    /// Walk every message in lexicographic digit order (last coordinate
    /// fastest), handing each resulting word to the visitor. Prefix
    /// sums are reused across steps, so the cost per word is roughly
    /// one row addition rather than a full matrix-vector product.
    fn walk_words(&self, budget: &Budget, mut visit: impl FnMut(&[usize], &[Elt])) -> Result<()> {
        let q = self.spec.q();
        let k = self.k();
        let n = self.n();
        let total = BigUint::from(q as u64).pow(k as u32);
        if total > BigUint::from(budget.messages) {
            return Err(Error::BudgetExceeded {
                what: "message enumeration",
                needed: total.to_string(),
                budget: budget.messages,
            });
        }
        // scaled[i][a] = a * row_i
        let scaled: Vec<Vec<Vec<Elt>>> = (0..k)
            .map(|i| {
                (0..q)
                    .map(|a| {
                        let a = self.spec.elt(a);
                        (0..n)
                            .map(|c| self.spec.mul(a, self.gen_matrix[(i, c)]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut digits = vec![0usize; k];
        // sums[i] = sum of the first i scaled rows for the current digits
        let mut sums: Vec<Vec<Elt>> = vec![vec![Elt::ZERO; n]; k + 1];
        loop {
            visit(&digits, &sums[k]);
            let mut pos = k;
            loop {
                if pos == 0 {
                    return Ok(());
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
            }
            for i in pos..k {
                let (lo, hi) = sums.split_at_mut(i + 1);
                let prev = &lo[i];
                let row = &scaled[i][digits[i]];
                for c in 0..n {
                    hi[0][c] = self.spec.add(prev[c], row[c]);
                }
            }
        }
    }

    /// Exhaustive weight enumerator, including the zero word at weight 0.
    pub fn weight_distribution(&self, budget: &Budget) -> Result<BTreeMap<usize, u64>> {
        let mut dist = BTreeMap::new();
        self.walk_words(budget, |_, word| {
            let w = word.iter().filter(|v| !v.is_zero()).count();
            *dist.entry(w).or_insert(0u64) += 1;
        })?;
        Ok(dist)
    }

    /// Exhaustive minimum distance, with one witness word.
    pub fn min_distance(&self, budget: &Budget) -> Result<(usize, Codeword)> {
        let mut best: Option<(usize, Vec<Elt>)> = None;
        self.walk_words(budget, |_, word| {
            let w = word.iter().filter(|v| !v.is_zero()).count();
            if w == 0 {
                return;
            }
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, word.to_vec()));
            }
        })?;
        let (d, values) = best.expect("a nonzero code has a nonzero word");
        Ok((d, Codeword { values }))
    }

    /// Every nonzero word of minimum weight, in message order.
    pub fn min_weight_census(&self, budget: &Budget) -> Result<MinWeightCensus> {
        let mut d = usize::MAX;
        let mut words: Vec<Codeword> = Vec::new();
        self.walk_words(budget, |_, word| {
            let w = word.iter().filter(|v| !v.is_zero()).count();
            if w == 0 {
                return;
            }
            if w < d {
                d = w;
                words.clear();
            }
            if w == d {
                words.push(Codeword {
                    values: word.to_vec(),
                });
            }
        })?;
        assert!(d < usize::MAX, "a nonzero code has a nonzero word");
        Ok(MinWeightCensus { d, words })
    }

    /// The words cut out by the pinned-flag functionals: evaluate the
    /// basis wedge of every member of the pinned family and all its
    /// nonzero scalar multiples, deduplicating exactly.
    pub fn schubert_decomposable_codewords(&self, budget: &Budget) -> Result<SdWords> {
        let lambda = enumerate_lambda(&self.ds, &self.spec, budget.subspaces)?;
        let lambda_count = lambda.len();
        let mut words = BTreeSet::new();
        for w in &lambda {
            let f = basis_multivector(&self.spec, w)?;
            let base = self.encode_multivector(&f)?;
            for a in self.spec.nonzero_elements() {
                let values: Vec<Elt> = base.values.iter().map(|&v| self.spec.mul(a, v)).collect();
                words.insert(Codeword { values });
            }
        }
        Ok(SdWords {
            lambda_count,
            words,
        })
    }

    /// For each census word: is it one of the pinned-flag words, and if
    /// not, does any functional with a Schubert decomposable
    /// representative still evaluate to it (searched exhaustively over
    /// the relevant Grassmannian)?
    pub fn classify_min_words(
        &self,
        census: &MinWeightCensus,
        sd: &SdWords,
        budget: &Budget,
    ) -> Result<MinWordClassification> {
        let mut in_family = 0usize;
        let mut missing: Vec<Codeword> = Vec::new();
        for w in &census.words {
            if sd.words.contains(w) {
                in_family += 1;
            } else {
                missing.push(w.clone());
            }
        }
        // second chance for the stragglers: any Schubert decomposable
        // preimage at all, pinned at the last flag member or not
        let mut recovered = 0usize;
        let mut unexplained = Vec::new();
        if !missing.is_empty() {
            let dim = self.ds.m() - self.ds.ell();
            let mut sd_words = BTreeSet::new();
            for w in enumerate_subspaces(&self.spec, self.ds.m(), dim, budget.subspaces)? {
                let f = basis_multivector(&self.spec, &w)?;
                if !is_schubert_decomposable(&self.spec, &f, &self.ds)? {
                    continue;
                }
                let base = self.encode_multivector(&f)?;
                for a in self.spec.nonzero_elements() {
                    let values: Vec<Elt> =
                        base.values.iter().map(|&v| self.spec.mul(a, v)).collect();
                    sd_words.insert(Codeword { values });
                }
            }
            for w in missing {
                if sd_words.contains(&w) {
                    recovered += 1;
                } else {
                    unexplained.push(w);
                }
            }
        }
        Ok(MinWordClassification {
            census_size: census.words.len(),
            in_family,
            recovered,
            unexplained,
        })
    }

    /// Rank of the span of a set of words.
    pub fn span_rank(&self, words: &[Codeword]) -> usize {
        if words.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<Elt>> = words.iter().map(|w| w.values.clone()).collect();
        MatGF::from_rows(&rows)
            .expect("equal-length codewords")
            .rank(&self.spec)
    }

    /// The code one step down the induction: same ambient space, last
    /// entry of the dimension sequence dropped.
    pub fn child_code(&self, budget: &Budget) -> Result<SchubertCode> {
        SchubertCode::build(&self.ds.child()?, &self.spec, budget)
    }

    /// Structure of a minimum-weight word along the final flag member:
    /// split A_ell into the vectors that kill the word under wedging
    /// (the subspace E) and the rest (the set F), and record the two
    /// codimensions the dichotomy is about.
    pub fn ef_analysis(&self, child: &SchubertCode, word: &Codeword) -> Result<EfAnalysis> {
        if self.ds.ell() < 2 {
            return Err(Error::EllTooSmall);
        }
        if child.ds() != &self.ds.child()? {
            return Err(Error::DimensionMismatch {
                expected: self.ds.ell() - 1,
                got: child.ds().ell(),
            });
        }
        let f = self.preimage(word).ok_or(Error::RankDeficient)?;
        let m = self.ds.m();
        let a_ell = self.ds.alpha_at(self.ds.ell());
        let a_prev = self.ds.alpha_at(self.ds.ell() - 1);

        // phi(x) = the child word of f^x, linear in x; E = ker(phi | A_ell)
        let mut rows: Vec<Vec<Elt>> = Vec::with_capacity(a_ell);
        for i in 0..a_ell {
            let x = Multivector::from_vector(&unit_vector(m, i));
            let fx = f.wedge(&self.spec, &x)?;
            rows.push(child.encode_multivector(&fx)?.values);
        }
        let phi = MatGF::from_rows(&rows)?;
        let ker = kernel_basis(&self.spec, &phi.transpose());
        // lift E from A_ell coordinates to the ambient space
        let lifted: Vec<Vec<Elt>> = (0..ker.dim())
            .map(|i| {
                let mut v = ker.basis().row(i).to_vec();
                v.resize(m, Elt::ZERO);
                v
            })
            .collect();
        let e_space = if lifted.is_empty() {
            Subspace::zero(m)
        } else {
            Subspace::from_rows(&self.spec, &MatGF::from_rows(&lifted)?)
        };

        let t = a_ell - e_space.dim();
        let t_prime = a_prev - e_space.dim_intersect_prefix(&self.spec, a_prev);
        let q = self.spec.q() as u64;
        let f_size =
            BigUint::from(q).pow(a_ell as u32) - BigUint::from(q).pow(e_space.dim() as u32);
        let dichotomy_holds =
            (t == 1 && t_prime == 0) || (t >= 2 && t_prime == t && a_ell == a_prev + 1);

        // every vector outside E must wedge to a child word of exactly
        // the child's minimum weight
        let dchild = child.min_distance_formula();
        let mut f_words_min_in_child = true;
        for coeffs in all_vectors(&self.spec, a_ell) {
            if e_space.contains_vector(&self.spec, &pad(&coeffs, m)) {
                continue;
            }
            let x = Multivector::from_vector(&pad(&coeffs, m));
            let fx = f.wedge(&self.spec, &x)?;
            if child.encode_multivector(&fx)?.weight() != dchild {
                f_words_min_in_child = false;
                break;
            }
        }

        Ok(EfAnalysis {
            e_space,
            t,
            t_prime,
            f_size,
            dichotomy_holds,
            f_words_min_in_child,
        })
    }
}

fn unit_vector(m: usize, i: usize) -> Vec<Elt> {
    let mut v = vec![Elt::ZERO; m];
    v[i] = Elt::ONE;
    v
}

fn pad(v: &[Elt], m: usize) -> Vec<Elt> {
    let mut out = v.to_vec();
    out.resize(m, Elt::ZERO);
    out
}

fn all_vectors(spec: &FieldSpec, len: usize) -> Vec<Vec<Elt>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * spec.q());
        for v in &out {
            for a in spec.elements() {
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// All nonzero minimum-weight words.
#[derive(Clone, Debug)]
pub struct MinWeightCensus {
    pub d: usize,
    pub words: Vec<Codeword>,
}

impl MinWeightCensus {
    pub fn count(&self) -> u64 {
        self.words.len() as u64
    }

    /// Number of words up to nonzero scalar.
    pub fn projective_class_count(&self, spec: &FieldSpec) -> usize {
        self.words
            .iter()
            .map(|w| w.projective_rep(spec))
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// Words obtained from the pinned-flag family, with the family size.
#[derive(Clone, Debug)]
pub struct SdWords {
    pub lambda_count: usize,
    pub words: BTreeSet<Codeword>,
}

/// Census classification tallies; `unexplained` words have no Schubert
/// decomposable preimage at all.
#[derive(Clone, Debug)]
pub struct MinWordClassification {
    pub census_size: usize,
    pub in_family: usize,
    pub recovered: usize,
    pub unexplained: Vec<Codeword>,
}

impl MinWordClassification {
    pub fn all_explained(&self) -> bool {
        self.unexplained.is_empty()
    }
}

/// The E/F split of the last flag member relative to one word.
#[derive(Clone, Debug)]
pub struct EfAnalysis {
    pub e_space: Subspace,
    pub t: usize,
    pub t_prime: usize,
    pub f_size: BigUint,
    pub dichotomy_holds: bool,
    pub f_words_min_in_child: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schubert::m_alpha_formula;

    fn build(q: u64, m: usize, alpha: &[usize]) -> SchubertCode {
        let spec = FieldSpec::from_order(q).unwrap();
        let ds = DimSeq::new(m, alpha).unwrap();
        SchubertCode::build(&ds, &spec, &Budget::default()).unwrap()
    }

    #[test]
    fn parameters_of_known_codes() {
        let c = build(2, 4, &[2, 4]);
        assert_eq!((c.n(), c.k()), (19, 5));
        assert_eq!(c.min_distance_formula(), 8);

        let g = build(2, 4, &[3, 4]);
        assert_eq!((g.n(), g.k()), (35, 6));
        assert_eq!(g.min_distance_formula(), 16);

        let c3 = build(3, 4, &[2, 4]);
        assert_eq!((c3.n(), c3.k()), (49, 5));
        assert_eq!(c3.min_distance_formula(), 27);

        let c5 = build(2, 5, &[2, 3, 5]);
        assert_eq!((c5.n(), c5.k()), (43, 7));
        assert_eq!(c5.min_distance_formula(), 16);
    }

    #[test]
    fn encode_routes_agree() {
        // generator-matrix encoding and direct evaluation span the same
        // code: every preimage of a generator row re-encodes to it
        let c = build(2, 4, &[2, 4]);
        for i in 0..c.k() {
            let row = Codeword {
                values: c.gen_matrix().row(i).to_vec(),
            };
            let f = c.preimage(&row).expect("row is in the code");
            assert_eq!(c.encode_multivector(&f).unwrap(), row);
        }
        // and a word outside the code has no preimage
        let mut bad = vec![Elt::ZERO; c.n()];
        bad[0] = Elt::ONE;
        let bad = Codeword { values: bad };
        let dist = c.weight_distribution(&Budget::default()).unwrap();
        if !dist.contains_key(&1) {
            assert!(c.preimage(&bad).is_none());
        }
    }

    #[test]
    fn exhaustive_minimum_distance_matches_formula() {
        for (q, m, alpha) in [
            (2u64, 4usize, vec![2usize, 4]),
            (2, 4, vec![3, 4]),
            (2, 5, vec![1, 3, 5]),
            (2, 5, vec![2, 3, 5]),
            (3, 4, vec![2, 4]),
        ] {
            let c = build(q, m, &alpha);
            let (d, witness) = c.min_distance(&Budget::default()).unwrap();
            assert_eq!(d, c.min_distance_formula(), "q={q} alpha={alpha:?}");
            assert_eq!(witness.weight(), d);
        }
    }

    #[test]
    fn census_and_distribution_are_consistent() {
        let c = build(2, 4, &[2, 4]);
        let dist = c.weight_distribution(&Budget::default()).unwrap();
        assert_eq!(dist[&0], 1);
        assert_eq!(dist.values().sum::<u64>(), 32); // 2^5 messages
                                                    // full spectrum, exhaustively: 9 tangent-type words at the
                                                    // minimum, 16 at weight 10, 6 at weight 12
        let expected: BTreeMap<usize, u64> = [(0, 1), (8, 9), (10, 16), (12, 6)].into();
        assert_eq!(dist, expected);
        let census = c.min_weight_census(&Budget::default()).unwrap();
        assert_eq!(census.d, 8);
        assert_eq!(census.count(), 9);
        // q = 2: scalars do nothing, classes == words
        assert_eq!(census.projective_class_count(c.spec()), 9);
        // the closed-form count tallies functionals, not codewords: the
        // evaluation kernel folds pairs of them onto each word here
        assert_eq!(m_alpha_formula(c.ds(), 2), BigUint::from(18u32));

        // distribution of the two [19,5,8] codes coincide
        let c135 = build(2, 5, &[1, 3, 5]);
        let dist135 = c135.weight_distribution(&Budget::default()).unwrap();
        assert_eq!(dist, dist135);
    }

    #[test]
    fn census_scalar_closure_at_q3() {
        let c = build(3, 4, &[2, 4]);
        let census = c.min_weight_census(&Budget::default()).unwrap();
        assert_eq!(census.d, 27);
        assert_eq!(census.count(), 32);
        assert_eq!(census.projective_class_count(c.spec()), 16);
        let dist = c.weight_distribution(&Budget::default()).unwrap();
        let expected: BTreeMap<usize, u64> = [(0, 1), (27, 32), (33, 162), (36, 48)].into();
        assert_eq!(dist, expected);
        // closed form again exceeds the codeword count (three functionals
        // per word through the kernel)
        assert_eq!(m_alpha_formula(c.ds(), 3), BigUint::from(96u32));
    }

    #[test]
    fn decomposable_words_for_proven_cases() {
        let c = build(2, 4, &[2, 4]);
        let sd = c
            .schubert_decomposable_codewords(&Budget::default())
            .unwrap();
        assert_eq!(sd.lambda_count, 18);
        // the 18 family members fold in pairs onto 9 codewords: wedges
        // differing by the kernel element e1^e2 evaluate identically
        assert_eq!(sd.words.len(), 9);
        for w in &sd.words {
            assert_eq!(w.weight(), 8);
        }
        let census = c.min_weight_census(&Budget::default()).unwrap();
        let census_set: BTreeSet<Codeword> = census.words.iter().cloned().collect();
        assert_eq!(census_set, sd.words);

        let cls = c
            .classify_min_words(&census, &sd, &Budget::default())
            .unwrap();
        assert_eq!(cls.in_family, 9);
        assert!(cls.all_explained());

        // Grassmannian: every minimum word comes from a decomposable
        // functional, 35 of them
        let g = build(2, 4, &[3, 4]);
        let sd = g
            .schubert_decomposable_codewords(&Budget::default())
            .unwrap();
        assert_eq!(sd.lambda_count, 35);
        assert_eq!(sd.words.len(), 35);
        let census = g.min_weight_census(&Budget::default()).unwrap();
        assert_eq!(census.count(), 35);
        let census_set: BTreeSet<Codeword> = census.words.iter().cloned().collect();
        assert_eq!(census_set, sd.words);
    }

    #[test]
    fn collapsing_family_still_lands_exactly_on_census() {
        // the first flag member sits inside every point here, so the
        // family collapses hard: 72 members, 9 distinct codewords, and
        // those 9 are exactly the census
        let c = build(2, 5, &[1, 3, 5]);
        let sd = c
            .schubert_decomposable_codewords(&Budget::default())
            .unwrap();
        assert_eq!(sd.lambda_count, 72);
        assert_eq!(sd.words.len(), 9);
        let census = c.min_weight_census(&Budget::default()).unwrap();
        assert_eq!(census.d, 8);
        assert_eq!(census.count(), 9);
        let census_set: BTreeSet<Codeword> = census.words.iter().cloned().collect();
        assert_eq!(sd.words, census_set);
        for w in &sd.words {
            assert_eq!(w.weight(), 8);
        }

        // open-conjecture shape: one jump spot strictly above its
        // position; the family still folds onto exactly the census
        let c5 = build(2, 5, &[2, 3, 5]);
        let sd5 = c5
            .schubert_decomposable_codewords(&Budget::default())
            .unwrap();
        assert_eq!(sd5.lambda_count, 84);
        assert_eq!(sd5.words.len(), 21);
        let census5 = c5.min_weight_census(&Budget::default()).unwrap();
        assert_eq!(census5.d, 16);
        assert_eq!(census5.count(), 21);
        let census5_set: BTreeSet<Codeword> = census5.words.iter().cloned().collect();
        assert_eq!(sd5.words, census5_set);
    }

    #[test]
    fn span_rank_of_census() {
        // no jump spots: minimum words span the whole code
        let g = build(2, 4, &[3, 4]);
        let census = g.min_weight_census(&Budget::default()).unwrap();
        assert_eq!(g.span_rank(&census.words), g.k());

        // proper variety with a jump spot above its position: strictly less
        let c = build(2, 4, &[2, 4]);
        let census = c.min_weight_census(&Budget::default()).unwrap();
        assert!(c.span_rank(&census.words) < c.k());
        assert_eq!(c.span_rank(&[]), 0);
    }

    #[test]
    fn ef_analysis_dichotomy_on_census_words() {
        let c = build(2, 4, &[2, 4]);
        let child = c.child_code(&Budget::default()).unwrap();
        assert_eq!(child.ds().alpha(), &[2]);
        let census = c.min_weight_census(&Budget::default()).unwrap();
        for w in &census.words {
            let ef = c.ef_analysis(&child, w).unwrap();
            assert!(ef.dichotomy_holds, "t={} t'={}", ef.t, ef.t_prime);
            assert!(ef.f_words_min_in_child);
            assert_eq!(
                ef.f_size,
                BigUint::from(16u32) - BigUint::from(2u32).pow(ef.e_space.dim() as u32)
            );
        }

        // a gap of size one between the last two entries allows t >= 2
        let c5 = build(2, 5, &[2, 3, 5]);
        let child5 = c5.child_code(&Budget::default()).unwrap();
        let census5 = c5.min_weight_census(&Budget::default()).unwrap();
        let mut seen_t = BTreeSet::new();
        for w in census5.words.iter().take(30) {
            let ef = c5.ef_analysis(&child5, w).unwrap();
            assert!(ef.dichotomy_holds, "t={} t'={}", ef.t, ef.t_prime);
            assert!(ef.f_words_min_in_child);
            seen_t.insert(ef.t);
        }
        assert!(!seen_t.is_empty());

        let single = build(2, 4, &[2]);
        let census1 = single.min_weight_census(&Budget::default()).unwrap();
        assert!(matches!(
            single.ef_analysis(&single, &census1.words[0]),
            Err(Error::EllTooSmall)
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let spec = FieldSpec::from_order(2).unwrap();
        let ds = DimSeq::new(4, &[2, 4]).unwrap();
        let tiny = Budget {
            messages: 10,
            subspaces: 10_000,
        };
        let c = SchubertCode::build(&ds, &spec, &tiny).unwrap();
        assert!(matches!(
            c.weight_distribution(&tiny),
            Err(Error::BudgetExceeded {
                what: "message enumeration",
                ..
            })
        ));
        let no_points = Budget {
            messages: 1 << 20,
            subspaces: 3,
        };
        assert!(matches!(
            SchubertCode::build(&ds, &spec, &no_points),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
