//! Schubert varieties inside a Grassmannian, combinatorially: dimension
//! sequences with their jump spots, cell-by-cell point enumeration,
//! membership against the standard coordinate flag, Schubert
//! decomposability of multivectors, and the exact counting formulas for
//! the number of points, the code dimension, and the predicted number
//! of minimum-weight words.
//!
//! The fixed flag is always the coordinate one: A_i is the span of the
//! first alpha_i coordinate vectors.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exterior::{rows_wedge, Multivector};
use crate::gf::{enumerate_subspaces, subspace_count, Elt, FieldSpec, MatGF, Subspace};

/// A strictly increasing dimension sequence alpha = (alpha_1..alpha_ell)
/// with 1 <= alpha_1 < ... < alpha_ell <= m and ell < m, together with
/// its derived combinatorics.
///
/// Jump spots are the positions p where a consecutive run of the
/// sequence ends with a gap of at least 2 (alpha_{p+1} - alpha_p >= 2).
/// They are stored padded as p_0 = 0 < p_1 < ... < p_u < p_{u+1} = ell;
/// membership in the variety only needs checking at jump spots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimSeq {
    m: usize,
    alpha: Vec<usize>,
    jumps: Vec<usize>,
    delta: usize,
}

impl DimSeq {
    pub fn new(m: usize, alpha: &[usize]) -> Result<DimSeq> {
        let ell = alpha.len();
        if ell == 0 || ell >= m {
            return Err(Error::BadGrassmannian(ell, m));
        }
        if alpha.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing);
        }
        if alpha[0] < 1 || alpha[ell - 1] > m {
            return Err(Error::OutOfRange(format!(
                "dimension sequence {alpha:?} must stay within 1..={m}"
            )));
        }
        let mut jumps = vec![0];
        for j in 1..ell {
            if alpha[j] - alpha[j - 1] >= 2 {
                jumps.push(j);
            }
        }
        jumps.push(ell);
        let delta = alpha.iter().enumerate().map(|(i, &a)| a - (i + 1)).sum();
        Ok(DimSeq {
            m,
            alpha: alpha.to_vec(),
            jumps,
            delta,
        })
    }

    /// The sequence (m-ell+1, ..., m) whose variety is the whole
    /// Grassmannian of ell-subspaces of F^m.
    pub fn grassmann(ell: usize, m: usize) -> Result<DimSeq> {
        if ell == 0 || ell >= m {
            return Err(Error::BadGrassmannian(ell, m));
        }
        let alpha: Vec<usize> = (1..=ell).map(|i| m - ell + i).collect();
        DimSeq::new(m, &alpha)
    }

    #[inline]
    pub fn ell(&self) -> usize {
        self.alpha.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    /// Sum of (alpha_i - i): the variety's dimension, and the exponent
    /// in the minimum distance q^delta.
    #[inline]
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Number of jump spots.
    #[inline]
    pub fn u(&self) -> usize {
        self.jumps.len() - 2
    }

    /// The interior jump spots p_1..p_u (possibly empty).
    pub fn jump_spots(&self) -> &[usize] {
        &self.jumps[1..self.jumps.len() - 1]
    }

    /// The padded jump sequence p_0 = 0, p_1, ..., p_u, p_{u+1} = ell.
    pub fn jumps_padded(&self) -> &[usize] {
        &self.jumps
    }

    /// alpha_i for 1-based i, with alpha_0 = 0.
    pub fn alpha_at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.alpha[i - 1]
        }
    }

    /// No gaps at all: the variety is a full Grassmannian over A_ell.
    pub fn is_completely_consecutive(&self) -> bool {
        self.u() == 0
    }

    /// Gaps everywhere: every position is a jump spot.
    pub fn is_completely_non_consecutive(&self) -> bool {
        self.u() == self.ell() - 1
    }

    /// The sequence with the last entry dropped, over the same ambient
    /// space; used for the induction from ell to ell - 1.
    pub fn child(&self) -> Result<DimSeq> {
        if self.ell() <= 1 {
            return Err(Error::EllTooSmall);
        }
        DimSeq::new(self.m, &self.alpha[..self.ell() - 1])
    }
}

/// Gaussian binomial: the number of k-subspaces of F_q^n, exactly.
pub fn gauss_binom(n: usize, k: usize, q: u64) -> BigUint {
    subspace_count(n, k, q)
}

fn binom(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = k as usize;
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Fraction-free determinant (Bareiss): every division is exact, so the
/// result is the exact integer determinant.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut positive = true;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, sw);
            positive = !positive;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if positive {
        det
    } else {
        -det
    }
}

/// Dimension of the evaluation code: the determinant of the ell x ell
/// matrix of binomial coefficients C(alpha_j - j + 1, i - j + 1).
pub fn k_alpha(ds: &DimSeq) -> BigUint {
    let ell = ds.ell();
    let mat: Vec<Vec<BigInt>> = (0..ell)
        .map(|i| {
            (0..ell)
                .map(|j| binom(ds.alpha[j] - j, i as i64 - j as i64 + 1))
                .collect()
        })
        .collect();
    let det = bareiss_det(mat);
    assert!(
        !det.is_negative() && !det.is_zero(),
        "dimension determinant must be positive, got {det}"
    );
    det.to_biguint().expect("checked nonnegative")
}

/// Visit every dimension sequence beta <= alpha (componentwise, strictly
/// increasing) in lexicographic order.
fn for_each_beta(alpha: &[usize], f: &mut impl FnMut(&[usize])) {
    fn rec(
        alpha: &[usize],
        i: usize,
        prev: usize,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if i == alpha.len() {
            f(cur);
            return;
        }
        for b in prev + 1..=alpha[i] {
            cur.push(b);
            rec(alpha, i + 1, b, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(alpha.len());
    rec(alpha, 0, 0, &mut cur, f);
}

pub fn delta_of(beta: &[usize]) -> usize {
    beta.iter().enumerate().map(|(i, &b)| b - (i + 1)).sum()
}

/// Number of points of the variety: the sum of q^delta(beta) over all
/// cells beta <= alpha.
pub fn n_alpha(ds: &DimSeq, q: u64) -> BigUint {
    let mut total = BigUint::zero();
    for_each_beta(&ds.alpha, &mut |beta| {
        total += BigUint::from(q).pow(delta_of(beta) as u32);
    });
    total
}

/// One point of the variety: its cell, the canonical representative
/// matrix, and the cached wedge of the matrix rows (degree ell).
///
/// Representative form: row i (1-based) has its last nonzero entry,
/// equal to 1, at column beta_i; entries at the earlier pivot columns
/// beta_j (j < i) are 0; the remaining entries left of the pivot are
/// free. A cell thus contributes exactly q^delta(beta) points, and
/// distinct parameters give distinct subspaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchubertPoint {
    pub beta: Vec<usize>,
    pub matrix: MatGF,
    pub pluck: Multivector,
}

impl SchubertPoint {
    pub fn subspace(&self, spec: &FieldSpec) -> Subspace {
        Subspace::from_rows(spec, &self.matrix)
    }
}

/// All points of the variety, cells in lexicographic order of beta and
/// the free entries of each cell run through a row-major odometer (last
/// position fastest). The order is part of the code's definition: the
/// generator matrix columns are indexed by it.
pub fn enumerate_points(ds: &DimSeq, spec: &FieldSpec, budget: u64) -> Result<Vec<SchubertPoint>> {
    let count = n_alpha(ds, spec.q() as u64);
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            what: "point enumeration",
            needed: count.to_string(),
            budget,
        });
    }
    let ell = ds.ell();
    let m = ds.m();
    let mut points = Vec::with_capacity(count.to_usize().expect("within budget"));
    let mut betas = Vec::new();
    for_each_beta(&ds.alpha, &mut |beta| betas.push(beta.to_vec()));
    for beta in betas {
        // free slots: in row i, the columns left of the pivot that are
        // not pivot columns of earlier rows
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &b) in beta.iter().enumerate() {
            for c in 0..b - 1 {
                if !beta[..i].contains(&(c + 1)) {
                    free.push((i, c));
                }
            }
        }
        debug_assert_eq!(free.len(), delta_of(&beta));
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut mat = MatGF::zeros(ell, m);
            for (i, &b) in beta.iter().enumerate() {
                mat[(i, b - 1)] = Elt::ONE;
            }
            for (d, &(i, c)) in free.iter().enumerate() {
                mat[(i, c)] = spec.elt(digits[d]);
            }
            let pluck = rows_wedge(spec, &mat).expect("representative rows are independent");
            points.push(SchubertPoint {
                beta: beta.clone(),
                matrix: mat,
                pluck,
            });
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < spec.q() {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    debug_assert_eq!(BigUint::from(points.len() as u64), count);
    Ok(points)
}

/// Membership via the incidence conditions at the jump spots only: the
/// subspace must lie inside A_ell and meet A_{p_i} in dimension >= p_i
/// for each interior jump spot. Equivalent to checking every position
/// (see [`is_member_full`]), but cheaper.
pub fn is_member(spec: &FieldSpec, l: &Subspace, ds: &DimSeq) -> Result<bool> {
    check_point_shape(l, ds)?;
    if l.dim_intersect_prefix(spec, ds.alpha_at(ds.ell())) != ds.ell() {
        return Ok(false);
    }
    Ok(ds
        .jump_spots()
        .iter()
        .all(|&p| l.dim_intersect_prefix(spec, ds.alpha_at(p)) >= p))
}

/// Membership via all ell incidence conditions dim(L cap A_i) >= i.
/// Kept as an independent route for cross-checking [`is_member`].
pub fn is_member_full(spec: &FieldSpec, l: &Subspace, ds: &DimSeq) -> Result<bool> {
    check_point_shape(l, ds)?;
    Ok((1..=ds.ell()).all(|i| l.dim_intersect_prefix(spec, ds.alpha_at(i)) >= i))
}

fn check_point_shape(l: &Subspace, ds: &DimSeq) -> Result<()> {
    if l.ambient() != ds.m() {
        return Err(Error::AmbientMismatch(l.ambient(), ds.m()));
    }
    if l.dim() != ds.ell() {
        return Err(Error::DimensionMismatch {
            expected: ds.ell(),
            got: l.dim(),
        });
    }
    Ok(())
}

/// Schubert decomposability: a wedge of m-ell independent vectors whose
/// span meets each interior jump-spot flag member A_{p_i} in dimension
/// exactly alpha_{p_i} - p_i. With no jump spots (u = 0) the flag
/// condition is vacuous and the notion coincides with decomposability.
pub fn is_schubert_decomposable(spec: &FieldSpec, f: &Multivector, ds: &DimSeq) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.m() != ds.m() {
        return Err(Error::AmbientMismatch(f.m(), ds.m()));
    }
    let want = ds.m() - ds.ell();
    if f.d() != want {
        return Err(Error::DegreeMismatch {
            expected: want,
            got: f.d(),
        });
    }
    if !f.is_decomposable(spec)? {
        return Ok(false);
    }
    let v = f.annihilator(spec);
    Ok(ds
        .jump_spots()
        .iter()
        .all(|&p| v.dim_intersect_prefix(spec, ds.alpha_at(p)) == ds.alpha_at(p) - p))
}

/// The (m-ell)-subspaces whose flag intersections are pinned at every
/// padded jump spot including the last: dim(W cap A_{p_i}) =
/// alpha_{p_i} - p_i for i = 1..u+1. Spans of this family are exactly
/// the annihilators of the multivectors that index minimum-weight
/// codewords in the proven cases.
pub fn enumerate_lambda(ds: &DimSeq, spec: &FieldSpec, budget: u64) -> Result<Vec<Subspace>> {
    let q = spec.q() as u64;
    let mut out = Vec::new();
    for w in enumerate_subspaces(spec, ds.m(), ds.m() - ds.ell(), budget)? {
        let ok = (1..=ds.u() + 1).all(|i| {
            let p = ds.jumps_padded()[i];
            w.dim_intersect_prefix(spec, ds.alpha_at(p)) == ds.alpha_at(p) - p
        });
        if ok {
            out.push(w);
        }
    }
    // two independent routes to the same count: the filter above and the
    // fibered product formula below
    assert_eq!(
        BigUint::from(out.len() as u64),
        lambda_count_formula(ds, q),
        "filtered count disagrees with the fibration formula"
    );
    Ok(out)
}

/// Closed-form size of [`enumerate_lambda`]'s result, by climbing the
/// flag one padded jump spot at a time and counting the subspaces with a
/// fixed intersection at each stage.
pub fn lambda_count_formula(ds: &DimSeq, q: u64) -> BigUint {
    let u = ds.u();
    // stage data a_i = dim A_{p_i}, r_i = pinned intersection dimension,
    // extended by the ambient stage a = m, r = m - ell
    let mut a = Vec::with_capacity(u + 2);
    let mut r = Vec::with_capacity(u + 2);
    for i in 1..=u + 1 {
        let p = ds.jumps_padded()[i];
        a.push(ds.alpha_at(p));
        r.push(ds.alpha_at(p) - p);
    }
    a.push(ds.m());
    r.push(ds.m() - ds.ell());
    let mut total = gauss_binom(a[0], r[0], q);
    for j in 0..=u {
        total *= gauss_binom(a[j + 1] - a[j], r[j + 1] - r[j], q);
        total *= BigUint::from(q).pow(((a[j] - r[j]) * (r[j + 1] - r[j])) as u32);
    }
    total
}

/// Predicted number of minimum-weight codewords:
/// (q-1) q^P prod_{j=0}^{u} [alpha_{p_{j+1}} - alpha_{p_j} over
/// p_{j+1} - p_j]_q with P = sum_{j=1}^{u} p_j (alpha_{p_{j+1}} -
/// alpha_{p_j} - p_{j+1} + p_j). Exact in the proven cases; elsewhere
/// it is reported side by side with the census (see the code module).
pub fn m_alpha_formula(ds: &DimSeq, q: u64) -> BigUint {
    let u = ds.u();
    let p = ds.jumps_padded();
    let mut exponent: i64 = 0;
    for j in 1..=u {
        let gap =
            ds.alpha_at(p[j + 1]) as i64 - ds.alpha_at(p[j]) as i64 - p[j + 1] as i64 + p[j] as i64;
        assert!(gap >= 0, "block structure keeps the exponent nonnegative");
        exponent += p[j] as i64 * gap;
    }
    let mut total = BigUint::from(q - 1) * BigUint::from(q).pow(exponent as u32);
    for j in 0..=u {
        total *= gauss_binom(
            ds.alpha_at(p[j + 1]) - ds.alpha_at(p[j]),
            p[j + 1] - p[j],
            q,
        );
    }
    total
}

/// Number of u-dimensional subspaces U of F_q^b with U cap A = R, for
/// nested coordinate subspaces R (dim r) inside A (dim a):
/// [b-a over u-r]_q * q^((a-r)(u-r)).
pub fn count_subspaces_formula(
    b: usize,
    a: usize,
    r: usize,
    udim: usize,
    q: u64,
) -> Result<BigUint> {
    if !(r <= a && a <= b && r <= udim && udim <= b) {
        return Err(Error::OutOfRange(format!(
            "need r <= a <= b and r <= u <= b, got b={b} a={a} r={r} u={udim}"
        )));
    }
    Ok(gauss_binom(b - a, udim - r, q) * BigUint::from(q).pow(((a - r) * (udim - r)) as u32))
}

/// The same count by exhaustive filter over all u-subspaces of F_q^b.
pub fn count_subspaces_bruteforce(
    spec: &FieldSpec,
    b: usize,
    a: usize,
    r: usize,
    udim: usize,
    budget: u64,
) -> Result<u64> {
    if !(r <= a && a <= b && r <= udim && udim <= b) {
        return Err(Error::OutOfRange(format!(
            "need r <= a <= b and r <= u <= b, got b={b} a={a} r={r} u={udim}"
        )));
    }
    let want = Subspace::coordinate_prefix(b, r);
    let mut count = 0u64;
    for u in enumerate_subspaces(spec, b, udim, budget)? {
        if u.intersect_prefix(spec, a) == want {
            count += 1;
        }
    }
    Ok(count)
}
