//! Refinement-lattice machinery on partition bases: Möbius functions, Gram
//! matrices of the canonical bilinear form, exact determinant computation by
//! two independent routes, the factorized determinant product, inclusion
//! weights, and classification of determinant roots against the closed root
//! families (nonnegative integers, 2cos(jπ/l), 4cos²(jπ/l)).

use num::bigint::Sign;
use num::complex::Complex64;
use num::{BigInt, BigRational};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::LaurentPoly;
use crate::categories::{all_partitions, Category};
use crate::diagram::Partition;
use crate::Error;

/// Absolute tolerance for matching a determinant root against a closed
/// trigonometric value. Roots come from exact integer factors, so agreement
/// is limited only by f64 cosine evaluation; 1e-9 leaves three orders of
/// headroom over the c·eps·|value| rounding of cos on this range.
pub const ROOT_MATCH_TOL: f64 = 1e-9;

/// Convergence tolerance for the approximate root finder used only on
/// residual factors that resist exact classification.
pub const APPROX_ROOT_TOL: f64 = 1e-12;

/// Matrix size above which determinants switch from exact evaluation and
/// rational interpolation to modular evaluation with CRT reconstruction
/// (verified afterwards against exact evaluations at two points).
const MODULAR_DET_THRESHOLD: usize = 64;

// ---------- dense integer polynomials ----------

/// Dense polynomial over the integers, coefficients ascending, normalized to
/// have no trailing zero coefficients (zero is the empty vector).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly { coeffs: vec![c] }.normalized()
    }

    /// The variable t.
    pub fn t() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    /// t - a.
    pub fn t_minus(a: i64) -> Self {
        IntPoly {
            coeffs: vec![BigInt::from(-a), BigInt::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        IntPoly { coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(Zero::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + o.coeff(i));
        }
        IntPoly { coeffs: c }.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) - o.coeff(i));
        }
        IntPoly { coeffs: c }.normalized()
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly { coeffs: c }.normalized()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .normalized()
    }

    /// Multiplication by t^n.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); n];
        c.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: c }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        }
        .normalized()
    }

    /// Exact division; returns None if `d` does not divide self over ℤ[t].
    pub fn divide_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        let lead = d.leading();
        let qlen = rem.len() - dn + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + dn - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (quot, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &quot * dc;
            }
            q[i] = quot;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly { coeffs: q }.normalized())
    }

    /// Content (gcd of coefficients), zero polynomial has content 0.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Number of roots at t = 0, i.e. leading power of t dividing self.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p = &p + &LaurentPoly::monomial(i as i64, BigRational::from_integer(c.clone()));
            }
        }
        p
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

/// Falling product ∏_{i=from}^{to-1} (t - i); the inclusion weight of the
/// standard injection of a `from`-set into a `to`-set.
pub fn falling_range(from: usize, to: usize) -> IntPoly {
    let mut p = IntPoly::one();
    for i in from..to {
        p = p.mul(&IntPoly::t_minus(i as i64));
    }
    p
}

/// t(t-1)...(t-m+1), the weight of attaching m new blocks.
pub fn falling_factorial(m: usize) -> IntPoly {
    falling_range(0, m)
}

// ---------- Möbius functions of refinement posets ----------

/// Möbius matrix of a list of same-shape partitions under refinement order
/// (row ≤ column iff row is a coarsening of column), by the standard interval
/// recursion. Values on these posets are small, so i64 suffices.
pub fn mobius_matrix(elems: &[Partition]) -> Result<Vec<Vec<i64>>, Error> {
    let n = elems.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            le[i][j] = elems[i].refinement_leq(&elems[j])?;
        }
    }
    let mut mu = vec![vec![0i64; n]; n];
    // fill by increasing number of strictly-between elements: topological by
    // recursion with memo table instead
    fn get(i: usize, j: usize, le: &[Vec<bool>], memo: &mut BTreeMap<(usize, usize), i64>) -> i64 {
        if let Some(&v) = memo.get(&(i, j)) {
            return v;
        }
        let v = if i == j {
            1
        } else if !le[i][j] {
            0
        } else {
            let mut s = 0i64;
            for z in 0..le.len() {
                if z != j && le[i][z] && le[z][j] {
                    s += get(i, z, le, memo);
                }
            }
            -s
        };
        memo.insert((i, j), v);
        v
    }
    let mut memo = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            mu[i][j] = get(i, j, &le, &mut memo);
        }
    }
    Ok(mu)
}

/// Möbius value μ(p, q) inside the poset spanned by `elems`.
pub fn mobius(elems: &[Partition], p: &Partition, q: &Partition) -> Result<i64, Error> {
    let find = |x: &Partition| {
        elems
            .iter()
            .position(|e| e == x)
            .ok_or_else(|| Error::UnknownCategory(format!("mobius: {x} not in the given poset")))
    };
    let (i, j) = (find(p)?, find(q)?);
    Ok(mobius_matrix(elems)?[i][j])
}

/// μ(q, top) in the full partition lattice of q's points, where the top is
/// the all-singletons partition: ∏ over blocks of (-1)^(s-1) (s-1)!.
pub fn mobius_partition_to_top(q: &Partition) -> BigInt {
    let mut r = BigInt::one();
    for b in q.blocks() {
        let s = b.len();
        let mut f = BigInt::one();
        for i in 1..s {
            f *= BigInt::from(i);
        }
        if s % 2 == 0 {
            f = -f;
        }
        r *= f;
    }
    r
}

/// Inclusion weight of an injection with the given image inside {1..l}: the
/// Möbius-weighted sum over partitions of l points whose restriction to the
/// image consists of singletons, Σ μ(q, top) t^(#q - k).
pub fn inclusion_weight(image: &[usize], l: usize) -> Result<IntPoly, Error> {
    let k = image.len();
    let mut sorted = image.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k || sorted.iter().any(|&s| s == 0 || s > l) {
        return Err(Error::BadParameter(format!(
            "inclusion image must be {k} distinct points within 1..={l}"
        )));
    }
    let mut acc = IntPoly::zero();
    for q in all_partitions(0, l) {
        // the pushforward along the inclusion is the singleton partition iff
        // no block of q holds two or more image points
        let separated = q.blocks().iter().all(|b| {
            b.iter()
                .filter(|&&x| sorted.binary_search(&((-x) as usize)).is_ok())
                .count()
                <= 1
        });
        if !separated {
            continue;
        }
        let mu = mobius_partition_to_top(&q);
        let e = q.block_count() - k;
        acc = acc.add(&IntPoly::constant(mu).shift(e));
    }
    Ok(acc)
}

// ---------- Gram matrices ----------

/// Gram matrix of a partition basis: entry (i,j) is t^e with e the number of
/// closed components when p_i* is composed with p_j.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    basis: Vec<Partition>,
    exps: Vec<Vec<usize>>,
}

impl GramMatrix {
    pub fn new(basis: Vec<Partition>) -> Result<Self, Error> {
        let n = basis.len();
        let stars: Vec<Partition> = basis.iter().map(|p| p.involution()).collect();
        let mut exps = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                exps[i][j] = Partition::compose(&stars[i], &basis[j])?.loops;
            }
        }
        Ok(GramMatrix { basis, exps })
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn exponent(&self, i: usize, j: usize) -> usize {
        self.exps[i][j]
    }

    pub fn entry(&self, i: usize, j: usize) -> LaurentPoly {
        LaurentPoly::monomial(self.exps[i][j] as i64, BigRational::one())
    }

    /// Degree bound for the determinant: sum over rows of the row maximum.
    fn degree_bound(&self) -> usize {
        self.exps
            .iter()
            .map(|row| row.iter().copied().max().unwrap_or(0))
            .sum()
    }

    /// Exact determinant polynomial. Moderate sizes evaluate the matrix at
    /// D+1 integer points with fraction-free elimination and interpolate over
    /// the rationals; larger sizes evaluate modulo word-size primes, CRT the
    /// interpolated coefficients until they stabilize, and verify the result
    /// against exact evaluations at two spot points.
    pub fn det(&self) -> IntPoly {
        let n = self.size();
        if n == 0 {
            return IntPoly::one();
        }
        let d = self.degree_bound();
        let points: Vec<i64> = (0..=d as i64).map(|j| j - (d as i64) / 2).collect();
        if n <= MODULAR_DET_THRESHOLD {
            let values: Vec<BigInt> = points
                .par_iter()
                .map(|&x| bareiss_det(self.eval_matrix(x)))
                .collect();
            interpolate_exact(&points, &values)
        } else {
            let det = self.det_modular(&points);
            for &spot in &[2i64, -3] {
                let exact = bareiss_det(self.eval_matrix(spot));
                assert_eq!(
                    det.eval(&BigInt::from(spot)),
                    exact,
                    "modular determinant failed spot verification at t={spot}"
                );
            }
            det
        }
    }

    fn eval_matrix(&self, x: i64) -> Vec<Vec<BigInt>> {
        let max_e = self.exps.iter().flatten().copied().max().unwrap_or(0);
        let mut pows = Vec::with_capacity(max_e + 1);
        pows.push(BigInt::one());
        let xb = BigInt::from(x);
        for _ in 0..max_e {
            pows.push(pows.last().unwrap() * &xb);
        }
        self.exps
            .iter()
            .map(|row| row.iter().map(|&e| pows[e].clone()).collect())
            .collect()
    }

    fn det_modular(&self, points: &[i64]) -> IntPoly {
        let primes = det_primes();
        let mut modulus = BigInt::one();
        let mut combined: Vec<BigInt> = Vec::new();
        let mut stable = 0usize;
        for (used, &p) in primes.iter().enumerate() {
            let coeffs_p = self.det_interpolated_mod(points, p);
            let next = crt_extend(&combined, &modulus, &coeffs_p, p);
            let next_modulus = &modulus * BigInt::from(p);
            let balanced = balance(&next, &next_modulus);
            if !combined.is_empty() && balanced == balance(&combined, &modulus) {
                stable += 1;
            } else {
                stable = 0;
            }
            combined = next;
            modulus = next_modulus;
            if stable >= 2 {
                return IntPoly::from_coeffs(balance(&combined, &modulus));
            }
            assert!(used < primes.len() - 1, "modular determinant did not stabilize");
        }
        unreachable!()
    }

    /// Coefficients of det mod p, via evaluation at all points and Newton
    /// interpolation in the prime field.
    fn det_interpolated_mod(&self, points: &[i64], p: u64) -> Vec<u64> {
        let n = self.size();
        let max_e = self.exps.iter().flatten().copied().max().unwrap_or(0);
        let values: Vec<u64> = points
            .par_iter()
            .map(|&x| {
                let xm = modnorm(x, p);
                let mut pows = Vec::with_capacity(max_e + 1);
                pows.push(1u64);
                for _ in 0..max_e {
                    pows.push(mulmod(*pows.last().unwrap(), xm, p));
                }
                let m: Vec<Vec<u64>> = self
                    .exps
                    .iter()
                    .map(|row| row.iter().map(|&e| pows[e]).collect())
                    .collect();
                det_mod(m, p)
            })
            .collect();
        let xs: Vec<u64> = points.iter().map(|&x| modnorm(x, p)).collect();
        newton_interpolate_mod(&xs, &values, p, n)
    }

    /// Independent determinant route: fraction-free elimination directly over
    /// ℤ[t]. Cubic in size with polynomial entries, intended for small
    /// matrices as a cross-check; never used by `det`.
    pub fn det_via_elimination(&self) -> IntPoly {
        let n = self.size();
        if n == 0 {
            return IntPoly::one();
        }
        let mut a: Vec<Vec<IntPoly>> = self
            .exps
            .iter()
            .map(|row| row.iter().map(|&e| IntPoly::one().shift(e)).collect())
            .collect();
        let mut sign = 1i64;
        let mut denom = IntPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return IntPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num
                        .divide_exact(&denom)
                        .expect("fraction-free elimination divides exactly");
                }
                a[i][k] = IntPoly::zero();
            }
            denom = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            d.neg()
        } else {
            d
        }
    }
}

/// Gram matrix of the members of C with k upper and l lower points.
pub fn gram(cat: &Category, k: usize, l: usize) -> Result<GramMatrix, Error> {
    GramMatrix::new(cat.partitions(k, l).as_ref().clone())
}

/// Gram matrix on the flat basis C(0,k), the one whose determinant governs
/// semisimplicity degree by degree.
pub fn gram_flat(cat: &Category, k: usize) -> Result<GramMatrix, Error> {
    gram(cat, 0, k)
}

// ---------- factorized determinant product ----------

/// The factorized Gram determinant Ω_k = ∏_p Σ_{q ≤ p} μ(q,p) t^(#q), over
/// the members p of C(0,k), with q running over coarsenings of p inside C.
/// Requires the basis to be closed under meets; the error carries a witness
/// pair otherwise.
pub fn omega(cat: &Category, k: usize) -> Result<IntPoly, Error> {
    let basis = cat.flat(k);
    let n = basis.len();
    for i in 0..n {
        for j in i + 1..n {
            let m = basis[i].meet(&basis[j])?;
            if !cat.contains(&m) {
                return Err(Error::NotMeetClosed(format!(
                    "meet of {} and {} leaves {}",
                    basis[i],
                    basis[j],
                    cat.name()
                )));
            }
        }
    }
    let mu = mobius_matrix(&basis)?;
    let mut omega = IntPoly::one();
    for (j, p) in basis.iter().enumerate() {
        let mut factor = IntPoly::zero();
        for (i, q) in basis.iter().enumerate() {
            if q.refinement_leq(p)? {
                factor = factor.add(&IntPoly::constant(BigInt::from(mu[i][j])).shift(q.block_count()));
            }
        }
        omega = omega.mul(&factor);
    }
    Ok(omega)
}

// ---------- determinant engines ----------

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i64;
    let mut denom = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &denom;
            }
            a[i][k] = BigInt::zero();
        }
        denom = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn modnorm(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Determinant mod a prime, by Gaussian elimination.
fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for k in 0..n {
        let pivot = match (k..n).find(|&r| a[r][k] % p != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot != k {
            a.swap(k, pivot);
            det = p - det;
        }
        det = mulmod(det, a[k][k], p);
        let inv = invmod(a[k][k], p);
        for i in k + 1..n {
            if a[i][k] == 0 {
                continue;
            }
            let f = mulmod(a[i][k], inv, p);
            for j in k..n {
                let sub = mulmod(f, a[k][j], p);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
    }
    det % p
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Fixed pool of 62-bit primes for CRT reconstruction.
fn det_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut v = Vec::with_capacity(400);
        let mut n = (1u64 << 62) - 1;
        while v.len() < 400 {
            if is_prime_u64(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    })
}

/// Extends CRT residue vectors: given coefficients mod `modulus` and mod `p`,
/// returns coefficients mod modulus*p (non-negative representatives).
fn crt_extend(old: &[BigInt], modulus: &BigInt, fresh: &[u64], p: u64) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    let m_mod_p = (modulus % &pb).to_u64().unwrap();
    let m_inv = invmod(m_mod_p % p, p);
    let n = old.len().max(fresh.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let r_old = old.get(i).cloned().unwrap_or_else(Zero::zero);
        let r_new = fresh.get(i).copied().unwrap_or(0);
        let r_old_mod_p = (&r_old % &pb).to_u64().unwrap();
        let delta = (r_new + p - r_old_mod_p % p) % p;
        let k = mulmod(delta, m_inv, p);
        out.push(&r_old + modulus * BigInt::from(k));
    }
    out
}

/// Symmetric (balanced) representatives mod `modulus`, then trimmed.
fn balance(coeffs: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let half = modulus / 2;
    let mut v: Vec<BigInt> = coeffs
        .iter()
        .map(|c| {
            let mut c = c % modulus;
            if c.sign() == Sign::Minus {
                c += modulus;
            }
            if c > half {
                c -= modulus;
            }
            c
        })
        .collect();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Exact polynomial through (points[i], values[i]) by Newton divided
/// differences over the rationals; panics if the result is not integral.
fn interpolate_exact(points: &[i64], values: &[BigInt]) -> IntPoly {
    let n = points.len();
    let xs: Vec<BigRational> = points
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    let mut dd: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    // dd[i] becomes the divided difference f[x_0..x_i]
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num / den;
        }
    }
    // expand the Newton form
    let mut acc = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::zero(); n];
    basis[0] = BigRational::one();
    let mut basis_len = 1usize;
    for (i, d) in dd.iter().enumerate() {
        for j in 0..basis_len {
            acc[j] += d * &basis[j];
        }
        if i + 1 < n {
            // basis *= (x - x_i)
            for j in (0..basis_len).rev() {
                let b = basis[j].clone();
                basis[j + 1] += &b;
                basis[j] = -&xs[i] * b;
            }
            basis_len += 1;
        }
    }
    let coeffs: Vec<BigInt> = acc
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated determinant must be integral");
            c.to_integer()
        })
        .collect();
    IntPoly::from_coeffs(coeffs)
}

/// Newton interpolation in F_p; returns at most `guard`-checked dense
/// coefficients (low to high). `n` is only used in debug assertions.
fn newton_interpolate_mod(xs: &[u64], values: &[u64], p: u64, _n: usize) -> Vec<u64> {
    let m = xs.len();
    let mut dd = values.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            let den = (xs[i] + p - xs[i - level]) % p;
            dd[i] = mulmod(num, invmod(den, p), p);
        }
    }
    let mut acc = vec![0u64; m];
    let mut basis = vec![0u64; m];
    basis[0] = 1;
    let mut basis_len = 1usize;
    for (i, &d) in dd.iter().enumerate() {
        for j in 0..basis_len {
            acc[j] = (acc[j] + mulmod(d, basis[j], p)) % p;
        }
        if i + 1 < m {
            for j in (0..basis_len).rev() {
                let b = basis[j];
                basis[j + 1] = (basis[j + 1] + b) % p;
                basis[j] = mulmod(p - xs[i] % p, b, p);
            }
            basis_len += 1;
        }
    }
    acc
}

// ---------- cyclotomic machinery ----------

/// Cyclotomic polynomial Φ_n, by dividing x^n - 1 by all lower Φ_d, d | n.
pub fn cyclotomic(n: u32) -> IntPoly {
    fn compute(n: u32, memo: &mut BTreeMap<u32, IntPoly>) -> IntPoly {
        if let Some(hit) = memo.get(&n) {
            return hit.clone();
        }
        // x^n - 1
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n as usize] = BigInt::one();
        let mut num = IntPoly::from_coeffs(coeffs);
        for d in 1..n {
            if n % d == 0 {
                let phi_d = compute(d, memo);
                num = num.divide_exact(&phi_d).expect("cyclotomic division is exact");
            }
        }
        memo.insert(n, num.clone());
        num
    }
    static MEMO: OnceLock<std::sync::Mutex<BTreeMap<u32, IntPoly>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| std::sync::Mutex::new(BTreeMap::new()));
    let mut memo = memo.lock().unwrap();
    compute(n, &mut memo)
}

/// Minimal polynomial over ℚ of 2cos(2π/n), monic with integer coefficients,
/// obtained by folding the palindromic Φ_n with x^j + x^(-j) = T̃_j(y).
pub fn cos_minimal_poly(n: u32) -> IntPoly {
    assert!(n >= 1);
    if n == 1 {
        return IntPoly::t_minus(2); // 2cos(2π) = 2
    }
    if n == 2 {
        return IntPoly::t_minus(-2); // 2cos(π) = -2
    }
    let phi = cyclotomic(n);
    let deg = phi.degree();
    debug_assert_eq!(deg % 2, 0);
    let half = deg / 2;
    // T̃_j(y) = y T̃_{j-1} - T̃_{j-2}, T̃_0 = 2, T̃_1 = y
    let mut tj: Vec<IntPoly> = vec![IntPoly::constant(BigInt::from(2)), IntPoly::t()];
    for j in 2..=half {
        let next = IntPoly::t().mul(&tj[j - 1]).sub(&tj[j - 2]);
        tj.push(next);
    }
    let mut psi = IntPoly::constant(phi.coeff(half));
    for j in 1..=half {
        psi = psi.add(&tj[j].scale(&phi.coeff(half + j)));
    }
    psi
}

/// Minimal polynomial of 4cos²(π/n) = 2 + 2cos(2π/n): the cosine minimal
/// polynomial shifted by replacing t with t - 2.
pub fn cos_sq_minimal_poly(n: u32) -> IntPoly {
    compose_t_minus(&cos_minimal_poly(n), 2)
}

/// p(t - a).
fn compose_t_minus(p: &IntPoly, a: i64) -> IntPoly {
    let shift = IntPoly::t_minus(a);
    let mut acc = IntPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&shift).add(&IntPoly::constant(c.clone()));
    }
    acc
}

// ---------- Sturm chains ----------

/// Number of distinct real roots of a nonzero polynomial, over all of ℝ, by a
/// primitive-PRS Sturm chain (valid without squarefree reduction).
pub fn sturm_distinct_real_roots(f: &IntPoly) -> usize {
    assert!(!f.is_zero());
    if f.degree() == 0 {
        return 0;
    }
    let mut chain: Vec<IntPoly> = vec![f.primitive_part(), f.derivative().primitive_part()];
    while !chain.last().unwrap().is_zero() && chain.last().unwrap().degree() > 0 {
        let a = &chain[chain.len() - 2];
        let b = &chain[chain.len() - 1];
        let r = pseudo_rem_positive(a, b);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg().primitive_part());
    }
    let sign_at = |inf_positive: bool| -> Vec<i8> {
        chain
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                let lead = p.leading();
                let mut s = if lead.is_positive() { 1i8 } else { -1i8 };
                if !inf_positive && p.degree() % 2 == 1 {
                    s = -s;
                }
                s
            })
            .collect()
    };
    let variations = |signs: &[i8]| signs.windows(2).filter(|w| w[0] != w[1]).count();
    variations(&sign_at(false)) - variations(&sign_at(true))
}

/// Pseudo-remainder of a by b after scaling a with an even power of lc(b), so
/// the sign of the remainder is preserved for Sturm purposes.
fn pseudo_rem_positive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.degree() < b.degree() {
        return a.clone();
    }
    let delta = a.degree() - b.degree() + 1;
    let e = if delta % 2 == 0 { delta } else { delta + 1 };
    let mut lc_pow = BigInt::one();
    for _ in 0..e {
        lc_pow *= b.leading();
    }
    let mut rem = a.scale(&lc_pow).coeffs().to_vec();
    let bn = b.coeffs().len();
    while rem.len() >= bn && rem.iter().any(|c| !c.is_zero()) {
        let top = rem.last().unwrap().clone();
        if top.is_zero() {
            rem.pop();
            continue;
        }
        let (q, r) = top.div_rem(&b.leading());
        debug_assert!(r.is_zero(), "even-power scaling makes division exact");
        let off = rem.len() - bn;
        for (j, bc) in b.coeffs().iter().enumerate() {
            let idx = off + j;
            let sub = &q * bc;
            rem[idx] -= sub;
        }
        rem.pop();
    }
    IntPoly::from_coeffs(rem)
}

// ---------- root classification ----------

/// Exact provenance of a determinant root.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootClass {
    /// Root of t - r.
    Integer { r: i64 },
    /// Root of the minimal polynomial of 2cos(2π/n).
    CosFactor { n: u32 },
    /// Root of the minimal polynomial of 4cos²(π/n).
    CosSqFactor { n: u32 },
}

/// One distinct root value with its multiplicity, exact provenance, and the
/// closed-family matches within ROOT_MATCH_TOL.
#[derive(Clone, Debug, Serialize)]
pub struct RootInfo {
    pub value: f64,
    pub multiplicity: usize,
    pub class: RootClass,
    /// Minimal (j, l) with value = 2cos(jπ/l), 1 ≤ j ≤ l-1, l ≤ l_max.
    pub cos_match: Option<(u32, u32)>,
    /// Minimal (j, l) with value = 4cos²(jπ/l), 1 ≤ j ≤ l-1, l ≤ l_max.
    pub cos_sq_match: Option<(u32, u32)>,
}

/// Which closed family contains every root.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Verdict {
    #[serde(rename = "N0")]
    NonnegativeIntegers,
    #[serde(rename = "2cos")]
    TwoCos,
    #[serde(rename = "4cos2")]
    FourCosSq,
    #[serde(rename = "mixed")]
    Mixed,
}

/// Full root analysis of a determinant polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub degree: usize,
    /// Distinct roots, ascending by value; t = 0 appears as Integer(0).
    pub roots: Vec<RootInfo>,
    /// True when the polynomial factored completely into the recognized
    /// classes and an independent Sturm count confirms the distinct real
    /// root count.
    pub certified: bool,
    pub residual_degree: usize,
    /// Real parts of approximate residual roots (empty when certified).
    pub approx_residual_roots: Vec<f64>,
    #[serde(rename = "all_roots_in")]
    pub verdict: Verdict,
}

/// Factors `f` into integer roots over [int_lo, int_hi], cosine minimal
/// polynomials with index up to 2*l_max, and their 4cos² shifts; classifies
/// every root against the closed families with l ≤ l_max.
pub fn classify_roots(f: &IntPoly, int_lo: i64, int_hi: i64, l_max: u32) -> RootReport {
    assert!(!f.is_zero(), "zero polynomial has no root classification");
    let degree = f.degree();
    let mut rest = f.clone();
    let mut factors: Vec<(RootClass, usize)> = Vec::new();

    let zero_mult = rest.zero_root_multiplicity();
    if zero_mult > 0 {
        rest = IntPoly::from_coeffs(rest.coeffs()[zero_mult..].to_vec());
        factors.push((RootClass::Integer { r: 0 }, zero_mult));
    }
    for r in int_lo..=int_hi {
        if r == 0 {
            continue;
        }
        let lin = IntPoly::t_minus(r);
        let mut mult = 0usize;
        while let Some(q) = rest.divide_exact(&lin) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((RootClass::Integer { r }, mult));
        }
    }
    // nontrivial cosine factors: n ≥ 5 and n = 8, 10, 12, ... (n in 1..=4 and
    // n = 6 give integer values, already extracted)
    for n in 5..=(2 * l_max) {
        if n == 6 {
            continue;
        }
        if rest.degree() == 0 {
            break;
        }
        let psi = cos_minimal_poly(n);
        let mut mult = 0usize;
        while let Some(q) = rest.divide_exact(&psi) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((RootClass::CosFactor { n }, mult));
        }
        let psi2 = cos_sq_minimal_poly(n);
        let mut mult2 = 0usize;
        while let Some(q) = rest.divide_exact(&psi2) {
            rest = q;
            mult2 += 1;
        }
        if mult2 > 0 {
            factors.push((RootClass::CosSqFactor { n }, mult2));
        }
    }

    let mut roots: Vec<RootInfo> = Vec::new();
    for (class, mult) in &factors {
        match *class {
            RootClass::Integer { r } => {
                roots.push(make_root(r as f64, *mult, *class, l_max));
            }
            RootClass::CosFactor { n } => {
                for m in coprime_half(n) {
                    let v = 2.0 * (2.0 * std::f64::consts::PI * m as f64 / n as f64).cos();
                    roots.push(make_root(v, *mult, *class, l_max));
                }
            }
            RootClass::CosSqFactor { n } => {
                for m in coprime_half(n) {
                    let v = 2.0 + 2.0 * (2.0 * std::f64::consts::PI * m as f64 / n as f64).cos();
                    roots.push(make_root(v, *mult, *class, l_max));
                }
            }
        }
    }
    roots.sort_by(|a, b| a.value.total_cmp(&b.value));

    let residual_degree = rest.degree();
    let mut certified = residual_degree == 0;
    if certified && degree > 0 {
        // independent confirmation: a Sturm chain must count exactly the
        // distinct real roots we factored out
        certified = sturm_distinct_real_roots(f) == roots.len();
    }
    let approx_residual_roots = if residual_degree > 0 {
        aberth_real_roots(&rest)
    } else {
        vec![]
    };

    let verdict = decide_verdict(&roots, certified);
    RootReport {
        degree,
        roots,
        certified,
        residual_degree,
        approx_residual_roots,
        verdict,
    }
}

fn make_root(value: f64, multiplicity: usize, class: RootClass, l_max: u32) -> RootInfo {
    RootInfo {
        value,
        multiplicity,
        class,
        cos_match: match_cos(value, l_max),
        cos_sq_match: match_cos_sq(value, l_max),
    }
}

/// m in 1..n/2 with gcd(m,n) = 1: one representative per root of the cosine
/// minimal polynomial.
fn coprime_half(n: u32) -> Vec<u32> {
    (1..n)
        .filter(|&m| 2 * m < n && num_integer::gcd(m, n) == 1)
        .collect()
}

fn match_cos(value: f64, l_max: u32) -> Option<(u32, u32)> {
    for l in 1..=l_max {
        for j in 1..l {
            if (value - 2.0 * (j as f64 * std::f64::consts::PI / l as f64).cos()).abs()
                < ROOT_MATCH_TOL
            {
                return Some((j, l));
            }
        }
    }
    None
}

fn match_cos_sq(value: f64, l_max: u32) -> Option<(u32, u32)> {
    for l in 1..=l_max {
        for j in 1..l {
            let c = (j as f64 * std::f64::consts::PI / l as f64).cos();
            if (value - 4.0 * c * c).abs() < ROOT_MATCH_TOL {
                return Some((j, l));
            }
        }
    }
    None
}

fn decide_verdict(roots: &[RootInfo], certified: bool) -> Verdict {
    if !certified {
        return Verdict::Mixed;
    }
    let all_n0 = roots
        .iter()
        .all(|r| matches!(r.class, RootClass::Integer { r } if r >= 0));
    if all_n0 {
        return Verdict::NonnegativeIntegers;
    }
    if roots.iter().all(|r| r.cos_match.is_some()) {
        return Verdict::TwoCos;
    }
    if roots
        .iter()
        .all(|r| r.cos_sq_match.is_some() || r.value == 0.0)
    {
        return Verdict::FourCosSq;
    }
    Verdict::Mixed
}

/// Aberth-Ehrlich iteration on f64 coefficients; returns the real parts of
/// roots whose imaginary part is below the tolerance. A diagnostic fallback
/// only, for residual factors that resisted exact classification.
fn aberth_real_roots(f: &IntPoly) -> Vec<f64> {
    let deg = f.degree();
    if deg == 0 {
        return vec![];
    }
    let lead = f.leading().to_f64().unwrap_or(1.0);
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(0.0) / lead)
        .collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + Complex64::new(*c, 0.0);
        }
        (v, d)
    };
    let radius = 1.0
        + coeffs[..deg]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
    let mut zs: Vec<Complex64> = (0..deg)
        .map(|i| {
            let th = 2.0 * std::f64::consts::PI * (i as f64 + 0.35) / deg as f64;
            Complex64::new(radius * th.cos() * 0.7, radius * th.sin() * 0.7)
        })
        .collect();
    for _ in 0..300 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (v, d) = eval(zs[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let newton = v / d;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, z) in zs.iter().enumerate() {
                if j != i {
                    s += 1.0 / (zs[i] - z);
                }
            }
            let delta = newton / (1.0 - newton * s);
            zs[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < APPROX_ROOT_TOL {
            break;
        }
    }
    let mut reals: Vec<f64> = zs
        .iter()
        .filter(|z| z.im.abs() < 1e-8)
        .map(|z| z.re)
        .collect();
    reals.sort_by(f64::total_cmp);
    reals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::Family;

    fn poly(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn intpoly_arithmetic() {
        let f = poly(&[-1, 0, 1]); // t^2 - 1
        let g = poly(&[1, 1]); // t + 1
        assert_eq!(f.divide_exact(&g).unwrap(), poly(&[-1, 1]));
        assert_eq!(g.mul(&poly(&[-1, 1])), f);
        assert!(f.divide_exact(&poly(&[2, 1])).is_none());
        assert_eq!(f.eval(&BigInt::from(3)), BigInt::from(8));
        assert_eq!(f.derivative(), poly(&[0, 2]));
        assert_eq!(poly(&[0, 0, 2, 4]).zero_root_multiplicity(), 2);
        assert_eq!(poly(&[2, 4]).content(), BigInt::from(2));
        assert_eq!(falling_factorial(3), poly(&[0, 2, -3, 1])); // t(t-1)(t-2)
        assert_eq!(falling_range(2, 4).to_string(), "t^2 - 5*t + 6");
    }

    #[test]
    fn mobius_values_on_small_lattices() {
        // interval from the one-block partition to all singletons on 3 points
        let top: Partition = "1' | 2' | 3'".parse().unwrap();
        let bottom: Partition = "1' 2' 3'".parse().unwrap();
        let elems = all_partitions(0, 3);
        assert_eq!(mobius(&elems, &bottom, &top).unwrap(), 2);
        assert_eq!(mobius(&elems, &bottom, &bottom).unwrap(), 1);
        assert_eq!(mobius_partition_to_top(&bottom), BigInt::from(2));
        let pair_single: Partition = "1' 2' | 3'".parse().unwrap();
        assert_eq!(mobius(&elems, &pair_single, &top).unwrap(), -1);
        // zeta * mu = identity on the full lattice of 4 points
        let elems4 = all_partitions(0, 4);
        let mu = mobius_matrix(&elems4).unwrap();
        let n = elems4.len();
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                for z in 0..n {
                    if elems4[i].refinement_leq(&elems4[z]).unwrap() {
                        s += mu[z][j];
                    }
                }
                assert_eq!(s, i64::from(i == j), "zeta*mu at ({i},{j})");
            }
        }
    }

    #[test]
    fn gram_of_pairings_on_four_points() {
        let cat = Category::named(Family::NC2);
        let g = gram_flat(&cat, 4).unwrap();
        assert_eq!(g.size(), 2);
        assert_eq!(g.exponent(0, 0), 2);
        assert_eq!(g.exponent(0, 1), 1);
        assert_eq!(g.exponent(1, 1), 2);
        // det = t^4 - t^2 = t^2 (t-1)(t+1)
        let det = g.det();
        assert_eq!(det, poly(&[0, 0, -1, 0, 1]));
        assert_eq!(det, g.det_via_elimination());
    }

    #[test]
    fn smallest_full_gram_determinants() {
        let cat = Category::named(Family::P);
        let d2 = gram_flat(&cat, 2).unwrap().det();
        // t^2 (t - 1)
        assert_eq!(d2, poly(&[0, 0, -1, 1]));
        let d3 = gram_flat(&cat, 3).unwrap().det();
        // t^5 (t-2)(t-1)^4
        let expect = falling_factorial(1)
            .mul(&falling_factorial(2))
            .mul(&falling_factorial(2))
            .mul(&falling_factorial(2))
            .mul(&falling_factorial(3));
        assert_eq!(d3, expect);
        assert_eq!(d3, gram_flat(&cat, 3).unwrap().det_via_elimination());
    }

    #[test]
    fn omega_matches_determinant_when_meet_closed() {
        let cat = Category::named(Family::P);
        for k in 0..=3 {
            let om = omega(&cat, k).unwrap();
            let det = gram_flat(&cat, k).unwrap().det();
            assert_eq!(om, det, "k={k}");
        }
        // the pairings of 4 points are not meet-closed: two pairings meet in
        // a four-block
        let err = omega(&Category::named(Family::NC2), 4).unwrap_err();
        assert!(matches!(err, Error::NotMeetClosed(_)));
    }

    #[test]
    fn inclusion_weights_are_falling_ranges() {
        // empty into one point: t
        assert_eq!(inclusion_weight(&[], 1).unwrap(), poly(&[0, 1]));
        // bijections weigh 1
        assert_eq!(inclusion_weight(&[2, 1], 2).unwrap(), IntPoly::one());
        // one point into two: t - 1, independent of the chosen image
        assert_eq!(inclusion_weight(&[1], 2).unwrap(), poly(&[-1, 1]));
        assert_eq!(inclusion_weight(&[2], 2).unwrap(), poly(&[-1, 1]));
        // two points into four: (t-2)(t-3)
        assert_eq!(inclusion_weight(&[1, 3], 4).unwrap(), falling_range(2, 4));
        assert!(inclusion_weight(&[1, 1], 2).is_err());
        assert!(inclusion_weight(&[3], 2).is_err());
    }

    #[test]
    fn cyclotomic_and_cosine_minimal_polys() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(2), poly(&[1, 1]));
        assert_eq!(cyclotomic(6), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
        // 2cos(72°) satisfies t^2 + t - 1
        assert_eq!(cos_minimal_poly(5), poly(&[-1, 1, 1]));
        assert_eq!(cos_minimal_poly(8), poly(&[-2, 0, 1])); // 2cos(45°) = √2
        assert_eq!(cos_minimal_poly(12), poly(&[-3, 0, 1])); // 2cos(30°) = √3
        assert_eq!(cos_minimal_poly(1), poly(&[-2, 1]));
        assert_eq!(cos_minimal_poly(4), poly(&[0, 1])); // 2cos(90°) = 0
        // every root of the claimed minimal polynomial vanishes numerically
        for n in [5u32, 7, 9, 11, 16, 30, 40] {
            let psi = cos_minimal_poly(n);
            for m in coprime_half(n) {
                let x = 2.0 * (2.0 * std::f64::consts::PI * m as f64 / n as f64).cos();
                assert!(psi.eval_f64(x).abs() < 1e-6, "psi_{n} at m={m}");
            }
            let shifted = cos_sq_minimal_poly(n);
            for m in coprime_half(n) {
                let c = (std::f64::consts::PI * m as f64 / n as f64).cos();
                assert!(shifted.eval_f64(4.0 * c * c).abs() < 1e-6, "shift {n} {m}");
            }
        }
    }

    #[test]
    fn sturm_counts_distinct_real_roots() {
        // (t-1)(t-2)(t+3)
        let f = poly(&[-1, 1]).mul(&poly(&[-2, 1])).mul(&poly(&[3, 1]));
        assert_eq!(sturm_distinct_real_roots(&f), 3);
        // (t-1)^2 has one distinct root
        assert_eq!(sturm_distinct_real_roots(&poly(&[1, -2, 1])), 1);
        // t^2 + 1 has none
        assert_eq!(sturm_distinct_real_roots(&poly(&[1, 0, 1])), 0);
        // t^2 - 2 has two
        assert_eq!(sturm_distinct_real_roots(&poly(&[-2, 0, 1])), 2);
        // and a mixed product, with multiplicities
        let g = poly(&[0, 1]).mul(&poly(&[0, 1])).mul(&poly(&[-2, 0, 1]));
        assert_eq!(sturm_distinct_real_roots(&g), 3);
    }

    #[test]
    fn root_classification_verdicts() {
        // t^2 (t-1)^3 (t-4): all roots nonnegative integers
        let f = poly(&[0, 0, 1])
            .mul(&poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[-1, 1])))
            .mul(&poly(&[-4, 1]));
        let rep = classify_roots(&f, -8, 8, 20);
        assert!(rep.certified);
        assert_eq!(rep.verdict, Verdict::NonnegativeIntegers);
        assert_eq!(rep.roots.len(), 3);
        assert_eq!(rep.roots[1].multiplicity, 3);

        // (t^2 - 2)(t^2 - t - 1)-style: roots 2cos(jπ/l)
        let g = cos_minimal_poly(8).mul(&cos_minimal_poly(5));
        let rep = classify_roots(&g, -8, 8, 20);
        assert!(rep.certified);
        assert_eq!(rep.verdict, Verdict::TwoCos);
        for r in &rep.roots {
            assert!(r.cos_match.is_some(), "{}", r.value);
        }
        // √2 = 2cos(π/4)
        let sqrt2 = rep.roots.iter().find(|r| (r.value - 1.414).abs() < 0.01);
        assert_eq!(sqrt2.unwrap().cos_match, Some((1, 4)));

        // t (t-1) (t-3) ψ-shift factors: verdict 4cos²
        let h = poly(&[0, 1])
            .mul(&poly(&[-1, 1]))
            .mul(&poly(&[-3, 1]))
            .mul(&cos_sq_minimal_poly(5));
        let rep = classify_roots(&h, -8, 8, 20);
        assert!(rep.certified);
        assert_eq!(rep.verdict, Verdict::FourCosSq);

        // a negative root forces a mixed verdict
        let m = poly(&[5, 1]).mul(&poly(&[-1, 1]));
        let rep = classify_roots(&m, -8, 8, 20);
        assert!(rep.certified);
        assert_eq!(rep.verdict, Verdict::Mixed);
    }

    #[test]
    fn unclassifiable_residual_is_reported_honestly() {
        // t^3 - t - 5 has one real irrational root near 1.904 and is not a
        // product of the recognized factor classes
        let f = poly(&[-5, -1, 0, 1]);
        let rep = classify_roots(&f, -8, 8, 20);
        assert!(!rep.certified);
        assert_eq!(rep.residual_degree, 3);
        assert_eq!(rep.verdict, Verdict::Mixed);
        assert_eq!(rep.approx_residual_roots.len(), 1);
        assert!((rep.approx_residual_roots[0] - 1.9042).abs() < 1e-3);
    }

    #[test]
    fn modular_determinant_agrees_with_exact_on_forced_path() {
        // drive the modular path on a small matrix by calling it directly
        let cat = Category::named(Family::P);
        let g = gram_flat(&cat, 3).unwrap();
        let d = g.degree_bound();
        let points: Vec<i64> = (0..=d as i64).map(|j| j - (d as i64) / 2).collect();
        let modular = g.det_modular(&points);
        assert_eq!(modular, g.det());
    }

    #[test]
    fn prime_pool_is_prime() {
        let ps = det_primes();
        assert!(ps.len() >= 400);
        for &p in &ps[..4] {
            assert!(is_prime_u64(p));
            assert!(p > (1 << 61));
        }
        assert!(is_prime_u64(2) && is_prime_u64(3) && !is_prime_u64(1));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to first bases
    }
}
