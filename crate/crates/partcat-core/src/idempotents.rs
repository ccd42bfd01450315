//! Jones-Wenzl idempotents over the rational function field, the fattening
//! functor between pair diagrams and general noncrossing diagrams, and
//! negligibility of morphisms with rational-function coefficients.

use num_bigint::BigInt;
use num::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{rat_one, rat_zero, LaurentPoly, Morphism};
use crate::categories::Category;
use crate::diagram::Partition;
use crate::lattice::IntPoly;
use crate::Error;

/// Dense polynomial over the rationals, ascending coefficients, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
struct QPoly {
    c: Vec<BigRational>,
}

impl QPoly {
    fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    fn one() -> Self {
        QPoly::constant(rat_one())
    }

    fn constant(r: BigRational) -> Self {
        let mut p = QPoly { c: vec![r] };
        p.trim();
        p
    }

    fn t() -> Self {
        QPoly {
            c: vec![rat_zero(), rat_one()],
        }
    }

    fn from_coeffs(c: Vec<BigRational>) -> Self {
        let mut p = QPoly { c };
        p.trim();
        p
    }

    fn from_int_poly(p: &IntPoly) -> Self {
        QPoly::from_coeffs(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn leading(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![rat_zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            c[i] += x;
        }
        QPoly::from_coeffs(c)
    }

    fn neg(&self) -> QPoly {
        QPoly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![rat_zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        QPoly::from_coeffs(c)
    }

    fn scale(&self, r: &BigRational) -> QPoly {
        QPoly::from_coeffs(self.c.iter().map(|x| x * r).collect())
    }

    /// Euclidean division; the divisor must be nonzero.
    fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        if rem.is_zero() || rem.degree() < d.degree() {
            return (QPoly::zero(), rem);
        }
        let mut quo = vec![rat_zero(); rem.degree() - d.degree() + 1];
        let dl = d.leading();
        while !rem.is_zero() && rem.degree() >= d.degree() {
            let shift = rem.degree() - d.degree();
            let f = rem.leading() / &dl;
            for (i, x) in d.c.iter().enumerate() {
                let v = &rem.c[shift + i] - x * &f;
                rem.c[shift + i] = v;
            }
            rem.trim();
            quo[shift] = f;
        }
        (QPoly::from_coeffs(quo), rem)
    }

    fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lc = a.leading();
            a.scale(&lc.recip())
        }
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = rat_zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitute t -> t^2 (exponents double).
    fn substitute_square(&self) -> QPoly {
        let mut c = vec![rat_zero(); 2 * self.c.len()];
        for (i, x) in self.c.iter().enumerate() {
            c[2 * i] = x.clone();
        }
        QPoly::from_coeffs(c)
    }

    /// Multiply by t^n.
    fn shift_up(&self, n: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![rat_zero(); n];
        c.extend(self.c.iter().cloned());
        QPoly { c }
    }

    /// Is this a single term c * t^k?
    fn monomial_exponent(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..self.c.len()).filter(|&i| !self.c[i].is_zero()).collect();
        if nonzero.len() == 1 {
            Some(nonzero[0])
        } else {
            None
        }
    }

    fn to_laurent(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                p = &p + &LaurentPoly::monomial(i as i64, x.clone());
            }
        }
        p
    }
}

/// A rational function in one variable over the rationals, kept reduced with
/// a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    fn reduced(num: QPoly, den: QPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: QPoly::one(),
            };
        }
        let g = QPoly::gcd(&num, &den);
        let (mut num, r1) = num.divrem(&g);
        let (mut den, r2) = den.divrem(&g);
        debug_assert!(r1.is_zero() && r2.is_zero());
        let lc = den.leading();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn zero() -> RatFunc {
        RatFunc {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    /// The variable itself.
    pub fn t() -> RatFunc {
        RatFunc {
            num: QPoly::t(),
            den: QPoly::one(),
        }
    }

    pub fn from_integer(n: i64) -> RatFunc {
        RatFunc::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> RatFunc {
        RatFunc {
            num: QPoly::constant(r),
            den: QPoly::one(),
        }
    }

    pub fn from_int_poly(p: &IntPoly) -> RatFunc {
        RatFunc {
            num: QPoly::from_int_poly(p),
            den: QPoly::one(),
        }
    }

    /// A Laurent polynomial c_m t^m + ... with possibly negative exponents.
    pub fn from_laurent(p: &LaurentPoly) -> RatFunc {
        let m = p.min_exp().unwrap_or(0);
        let shift = if m < 0 { (-m) as usize } else { 0 };
        let mut c = Vec::new();
        for (e, v) in p.terms() {
            let idx = (e + shift as i64) as usize;
            if c.len() <= idx {
                c.resize(idx + 1, rat_zero());
            }
            c[idx] = v.clone();
        }
        RatFunc::reduced(QPoly::from_coeffs(c), QPoly::one().shift_up(shift))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::reduced(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::reduced(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<RatFunc, Error> {
        if self.is_zero() {
            return Err(Error::BadParameter(
                "inverse of the zero rational function".into(),
            ));
        }
        Ok(RatFunc::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc, Error> {
        Ok(self.mul(&o.inv()?))
    }

    /// Evaluate at a rational point; errors on a pole.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, Error> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::BadParameter(format!("pole at t = {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Substitute t -> t^2; used when passing to the square-root variable.
    pub fn substitute_square(&self) -> RatFunc {
        RatFunc::reduced(self.num.substitute_square(), self.den.substitute_square())
    }

    /// Multiply by t^e (e may be negative).
    pub fn scale_power(&self, e: i64) -> RatFunc {
        if e >= 0 {
            RatFunc::reduced(self.num.shift_up(e as usize), self.den.clone())
        } else {
            RatFunc::reduced(self.num.clone(), self.den.shift_up((-e) as usize))
        }
    }

    /// Does the modulus divide the numerator exactly?
    pub fn numerator_divisible_by(&self, m: &IntPoly) -> bool {
        self.num.divrem(&QPoly::from_int_poly(m)).1.is_zero()
    }

    /// Is the denominator coprime to the modulus (no pole at its roots)?
    pub fn denominator_coprime_to(&self, m: &IntPoly) -> bool {
        QPoly::gcd(&self.den, &QPoly::from_int_poly(m)).degree() == 0
    }

    pub fn numerator(&self) -> LaurentPoly {
        self.num.to_laurent()
    }

    pub fn denominator(&self) -> LaurentPoly {
        self.den.to_laurent()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num.to_laurent());
        }
        // a monomial denominator folds into a Laurent polynomial
        if let Some(e) = self.den.monomial_exponent() {
            let mut p = LaurentPoly::zero();
            for (i, x) in self.num.c.iter().enumerate() {
                if !x.is_zero() {
                    p = &p + &LaurentPoly::monomial(i as i64 - e as i64, x.clone());
                }
            }
            return write!(f, "{p}");
        }
        write!(f, "({})/({})", self.num.to_laurent(), self.den.to_laurent())
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

mod coeff_impl {
    // separate scope: the trait's method names shadow the numeric traits
    use super::RatFunc;
    use crate::algebra::Coeff;

    impl Coeff for RatFunc {
        fn zero() -> Self {
            RatFunc::zero()
        }
        fn one() -> Self {
            RatFunc::one()
        }
        fn add(&self, other: &Self) -> Self {
            RatFunc::add(self, other)
        }
        fn neg(&self) -> Self {
            RatFunc::neg(self)
        }
        fn mul(&self, other: &Self) -> Self {
            RatFunc::mul(self, other)
        }
        fn is_zero(&self) -> bool {
            RatFunc::is_zero(self)
        }
    }
}

/// Chebyshev-type polynomials P_0 = 1, P_1 = t, P_k = t P_{k-1} - P_{k-2};
/// P_k is the categorical trace of the k-th Jones-Wenzl idempotent.
pub fn chebyshev_polys(n: usize) -> Vec<IntPoly> {
    let mut p = vec![IntPoly::one(), IntPoly::t()];
    for k in 2..=n.max(1) {
        let next = IntPoly::t().mul(&p[k - 1]).sub(&p[k - 2]);
        p.push(next);
    }
    p.truncate(n + 1);
    p
}

/// The tower of Jones-Wenzl idempotents e_0, ..., e_n in the span of
/// noncrossing pair diagrams, with rational-function coefficients in the
/// loop parameter. e_k = ext - a_k ext E_{k-1} ext where ext = e_{k-1} (x) id,
/// E_{k-1} places a cup-cap on the last two strands, a_1 = 0 and
/// a_k = 1/(t - a_{k-1}) = P_{k-2}/P_{k-1}.
pub struct JonesWenzl {
    idempotents: Vec<Morphism<RatFunc>>,
    coefficients: Vec<RatFunc>,
    chebyshev: Vec<IntPoly>,
}

impl JonesWenzl {
    pub fn up_to(n: usize) -> Result<JonesWenzl, Error> {
        let w = RatFunc::t();
        let mut e: Vec<Morphism<RatFunc>> = vec![Morphism::identity(0)];
        let mut a: Vec<RatFunc> = vec![RatFunc::zero()];
        if n >= 1 {
            e.push(Morphism::identity(1));
            a.push(RatFunc::zero());
        }
        let cheb = chebyshev_polys(n.max(1));
        for k in 2..=n {
            let ak = RatFunc::t().sub(&a[k - 1]).inv()?;
            debug_assert_eq!(
                ak,
                RatFunc::from_int_poly(&cheb[k - 2]).div(&RatFunc::from_int_poly(&cheb[k - 1]))?
            );
            let ext = e[k - 1].tensor(&Morphism::identity(1));
            let mid = Morphism::from_partition(
                Partition::identity(k - 2).tensor(&Partition::pair_pair()),
            );
            let trip = Morphism::compose(&ext, &Morphism::compose(&mid, &ext, &w)?, &w)?;
            e.push(ext.sub(&trip.scale(&ak))?);
            a.push(ak);
        }
        Ok(JonesWenzl {
            idempotents: e,
            coefficients: a,
            chebyshev: cheb,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.idempotents.len() - 1
    }

    pub fn idempotent(&self, k: usize) -> &Morphism<RatFunc> {
        &self.idempotents[k]
    }

    /// a_k for k >= 1.
    pub fn coefficient(&self, k: usize) -> &RatFunc {
        &self.coefficients[k]
    }

    /// P_k = tr(e_k).
    pub fn chebyshev(&self, k: usize) -> &IntPoly {
        &self.chebyshev[k]
    }
}

// ---------- the fattening functor ----------

/// Circle coordinates doubled to stay integral: upper i at 2i, lower j' at
/// 2(k + l - j + 1), going clockwise around the boundary.
fn circle_coord(p: &Partition, x: i32) -> i64 {
    let (k, l) = (p.upper() as i64, p.lower() as i64);
    if x > 0 {
        2 * x as i64
    } else {
        2 * (k + l - (-x) as i64 + 1)
    }
}

/// The image of a noncrossing pair diagram p with 2k upper and 2l lower
/// points under the fattening functor: a noncrossing diagram on k upper and
/// l lower points. A new point is placed right of every odd original point;
/// two new points share a block exactly when they lie on the same side of
/// every chord of p.
pub fn fatten_partition(p: &Partition) -> Result<Partition, Error> {
    let (k2, l2) = (p.upper(), p.lower());
    if k2 % 2 != 0 || l2 % 2 != 0 {
        return Err(Error::BadParameter(format!(
            "fattening needs evenly many points on each side, got ({k2},{l2})"
        )));
    }
    if !p.blocks().iter().all(|b| b.len() == 2) || !p.is_noncrossing() {
        return Err(Error::BadParameter(
            "fattening is defined on noncrossing pair diagrams".into(),
        ));
    }
    let mut newpts: Vec<(i32, i64)> = Vec::new();
    for m in (1..=k2 as i32).step_by(2) {
        newpts.push(((m + 1) / 2, circle_coord(p, m) + 1));
    }
    for m in (1..=l2 as i32).step_by(2) {
        newpts.push((-((m + 1) / 2), circle_coord(p, -m) - 1));
    }
    let chords: Vec<(i64, i64)> = p
        .blocks()
        .iter()
        .map(|b| {
            let mut cs: Vec<i64> = b.iter().map(|&x| circle_coord(p, x)).collect();
            cs.sort();
            (cs[0], cs[1])
        })
        .collect();
    let mut groups: BTreeMap<Vec<bool>, Vec<i32>> = BTreeMap::new();
    for (lab, x) in newpts {
        let sig: Vec<bool> = chords.iter().map(|&(a, c)| a < x && x < c).collect();
        groups.entry(sig).or_default().push(lab);
    }
    Partition::new(k2 / 2, l2 / 2, groups.into_values().collect())
}

/// The inverse of the fattening map, by face tracing: each original point m
/// doubles into an entry and an exit (upper m: entry 2m-1, exit 2m; lower m':
/// entry 2m', exit (2m-1)'), and each block, read in circular order, joins
/// the exit of one point to the entry of the next, cyclically.
pub fn unfatten_partition(q: &Partition) -> Result<Partition, Error> {
    if !q.is_noncrossing() {
        return Err(Error::BadParameter(
            "the fattening inverse is defined on noncrossing diagrams".into(),
        ));
    }
    let entry = |x: i32| if x > 0 { 2 * x - 1 } else { 2 * x };
    let exit = |x: i32| if x > 0 { 2 * x } else { 2 * x + 1 };
    let mut blocks = Vec::new();
    for b in q.blocks() {
        let mut cyc = b.clone();
        cyc.sort_by_key(|&x| circle_coord(q, x));
        for i in 0..cyc.len() {
            let nxt = cyc[(i + 1) % cyc.len()];
            blocks.push(vec![exit(cyc[i]), entry(nxt)]);
        }
    }
    Partition::new(2 * q.upper(), 2 * q.lower(), blocks)
}

/// Pad a pair diagram to a square one with upper caps (when l >= k) or lower
/// cups (when k >= l); the difference is even for pair diagrams.
fn pad_square(p: &Partition) -> Partition {
    let mut q = p.clone();
    if p.lower() >= p.upper() {
        for _ in 0..(p.lower() - p.upper()) / 2 {
            q = q.tensor(&Partition::cap());
        }
    } else {
        for _ in 0..(p.upper() - p.lower()) / 2 {
            q = q.tensor(&Partition::cup());
        }
    }
    q
}

/// The scalar a(p) accompanying the fattening of p is an exact monomial s^e
/// in the square root s of the loop parameter; this returns e. With p' the
/// square padding of p, e = |k - l|/2 + 2 c(p') - 4 c(p'-hat), where c counts
/// the components of the trace closure.
pub fn fattening_exponent(p: &Partition) -> Result<i64, Error> {
    let pp = pad_square(p);
    let c_thin = pp.close_trace()? as i64;
    let c_fat = fatten_partition(&pp)?.close_trace()? as i64;
    Ok((p.upper() as i64 - p.lower() as i64).abs() / 2 + 2 * c_thin - 4 * c_fat)
}

/// Apply the fattening functor to a morphism in the span of noncrossing pair
/// diagrams: each diagram p maps to s^{e(p)} p-hat, and coefficients move to
/// the square-root variable via t -> s^2. Loops in the image category carry
/// weight s^4.
pub fn fatten_morphism(m: &Morphism<RatFunc>) -> Result<Morphism<RatFunc>, Error> {
    if m.source() % 2 != 0 || m.target() % 2 != 0 {
        return Err(Error::BadParameter(
            "fattening a morphism needs even source and target".into(),
        ));
    }
    let mut out = Morphism::zero(m.source() / 2, m.target() / 2);
    for (p, c) in m.terms() {
        let image = fatten_partition(p)?;
        let scalar = c.substitute_square().scale_power(fattening_exponent(p)?);
        out.insert(image, scalar);
    }
    Ok(out)
}

// ---------- negligibility over the function field ----------

/// Evaluate every coefficient at a rational point; errors if any coefficient
/// has a pole there.
pub fn evaluate_morphism(
    m: &Morphism<RatFunc>,
    t0: &BigRational,
) -> Result<Morphism<BigRational>, Error> {
    let mut out = Morphism::zero(m.source(), m.target());
    for (p, c) in m.terms() {
        out.insert(p.clone(), c.eval(t0)?);
    }
    Ok(out)
}

/// Negligibility of f at every root of the given modulus: tr(f g) must be
/// divisible by the modulus for every diagram g of the category with the
/// opposite shape. This makes sense at irrational algebraic parameters
/// (e.g. modulus t^2 - 2), where direct evaluation is unavailable.
pub fn is_negligible_modulo(
    cat: &Category,
    f: &Morphism<RatFunc>,
    modulus: &IntPoly,
) -> Result<bool, Error> {
    if modulus.is_zero() || modulus.degree() == 0 {
        return Err(Error::BadParameter(
            "the negligibility modulus must be nonconstant".into(),
        ));
    }
    let w = RatFunc::t();
    for g in cat.partitions(f.target(), f.source()).iter() {
        let h = Morphism::compose(f, &Morphism::from_partition(g.clone()), &w)?;
        let tr = h.trace(&w)?;
        if !tr.denominator_coprime_to(modulus) {
            return Err(Error::BadParameter(format!(
                "trace against {g} has a pole at a root of the modulus"
            )));
        }
        if !tr.numerator_divisible_by(modulus) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::{all_partitions, Family};
    use num_traits::ToPrimitive;

    fn rf(s: &str) -> RatFunc {
        // tiny helper: parse "p/q" of integers for tests
        if let Some((a, b)) = s.split_once('/') {
            RatFunc::from_integer(a.parse().unwrap())
                .div(&RatFunc::from_integer(b.parse().unwrap()))
                .unwrap()
        } else {
            RatFunc::from_integer(s.parse().unwrap())
        }
    }

    #[test]
    fn rational_function_arithmetic() {
        let t = RatFunc::t();
        let one = RatFunc::one();
        // 1/(t-1) + 1/(t+1) = 2t/(t^2-1)
        let a = one.div(&t.sub(&one)).unwrap();
        let b = one.div(&t.add(&one)).unwrap();
        let s = a.add(&b);
        let expect = rf("2").mul(&t).div(&t.mul(&t).sub(&one)).unwrap();
        assert_eq!(s, expect);
        // reduction: (t^2-1)/(t-1) = t+1
        let red = t.mul(&t).sub(&one).div(&t.sub(&one)).unwrap();
        assert_eq!(red, t.add(&one));
        assert_eq!(red.to_string(), "t + 1");
        // monomial denominator display
        assert_eq!(one.div(&t).unwrap().neg().to_string(), "-t^-1");
        assert!(RatFunc::zero().inv().is_err());
        // evaluation and poles
        let f = one.div(&t.sub(&rf("2"))).unwrap();
        let two = BigRational::from_integer(2.into());
        assert!(f.eval(&two).is_err());
        let three = BigRational::from_integer(3.into());
        assert_eq!(f.eval(&three).unwrap().to_f64().unwrap(), 1.0);
    }

    #[test]
    fn chebyshev_and_coefficients() {
        let jw = JonesWenzl::up_to(4).unwrap();
        assert_eq!(jw.chebyshev(2).coeffs(), &[(-1).into(), 0.into(), 1.into()]);
        assert_eq!(
            jw.chebyshev(3).coeffs(),
            &[0.into(), (-2).into(), 0.into(), 1.into()]
        );
        assert_eq!(
            jw.chebyshev(4).coeffs(),
            &[1.into(), 0.into(), (-3).into(), 0.into(), 1.into()]
        );
        // a_2 = 1/t, a_3 = t/(t^2-1), a_4 = (t^2-1)/(t^3-2t)
        let t = RatFunc::t();
        let one = RatFunc::one();
        assert_eq!(*jw.coefficient(2), one.div(&t).unwrap());
        assert_eq!(
            *jw.coefficient(3),
            t.div(&t.mul(&t).sub(&one)).unwrap()
        );
        assert_eq!(jw.coefficient(3).to_string(), "(t)/(t^2 - 1)");
    }

    #[test]
    fn jones_wenzl_tower_properties() {
        let n = 4;
        let jw = JonesWenzl::up_to(n).unwrap();
        let w = RatFunc::t();
        // e_2 = id_2 - (1/t) cupcap, exactly
        let e2 = jw.idempotent(2);
        assert_eq!(e2.len(), 2);
        assert_eq!(e2.coeff(&Partition::identity(2)), RatFunc::one());
        assert_eq!(
            e2.coeff(&Partition::pair_pair()),
            RatFunc::one().div(&RatFunc::t()).unwrap().neg()
        );
        for k in 0..=n {
            let ek = jw.idempotent(k);
            // unit coefficient on the identity
            assert_eq!(ek.coeff(&Partition::identity(k)), RatFunc::one(), "k={k}");
            // idempotent and self-adjoint
            assert_eq!(Morphism::compose(ek, ek, &w).unwrap(), *ek, "k={k}");
            assert_eq!(ek.involution(), *ek, "k={k}");
            // killed by every cap from above and cup from below
            for i in 1..k {
                let cap = Morphism::<RatFunc>::from_partition(
                    Partition::identity(i - 1)
                        .tensor(&Partition::cap())
                        .tensor(&Partition::identity(k - i - 1)),
                );
                let cup = Morphism::<RatFunc>::from_partition(
                    Partition::identity(i - 1)
                        .tensor(&Partition::cup())
                        .tensor(&Partition::identity(k - i - 1)),
                );
                assert!(Morphism::compose(&cap, ek, &w).unwrap().is_zero(), "k={k} i={i}");
                assert!(Morphism::compose(ek, &cup, &w).unwrap().is_zero(), "k={k} i={i}");
            }
            // categorical trace is the Chebyshev polynomial
            let tr = ek.trace(&w).unwrap();
            assert_eq!(tr, RatFunc::from_int_poly(jw.chebyshev(k)), "k={k}");
        }
    }

    #[test]
    fn jones_wenzl_negligibility() {
        let nc2 = Category::named(Family::NC2);
        let jw = JonesWenzl::up_to(3).unwrap();
        // e_2 is negligible exactly at the roots of P_2 = t^2 - 1
        let e2 = jw.idempotent(2);
        assert!(is_negligible_modulo(&nc2, e2, &IntPoly::t_minus(1)).unwrap());
        assert!(is_negligible_modulo(&nc2, e2, &IntPoly::t_minus(-1)).unwrap());
        assert!(!is_negligible_modulo(&nc2, e2, &IntPoly::t_minus(2)).unwrap());
        // e_3 is negligible at t = sqrt(2), a root of P_3 = t^3 - 2t
        let t2m2 = IntPoly::from_coeffs(vec![(-2).into(), 0.into(), 1.into()]);
        assert!(is_negligible_modulo(&nc2, jw.idempotent(3), &t2m2).unwrap());
        assert!(!is_negligible_modulo(&nc2, jw.idempotent(3), &IntPoly::t_minus(3)).unwrap());
        // evaluation route agrees with the exact route at rational points
        let at1 = evaluate_morphism(e2, &BigRational::from_integer(1.into())).unwrap();
        assert!(crate::algebra::is_negligible(&nc2, &at1, &BigRational::from_integer(1.into())).unwrap());
        // constant modulus is rejected
        assert!(is_negligible_modulo(&nc2, e2, &IntPoly::one()).is_err());
    }

    #[test]
    fn fattening_diagram_map() {
        // worked square example
        let p = Partition::new(
            4,
            4,
            vec![vec![1, -1], vec![2, 3], vec![4, -2], vec![-3, -4]],
        )
        .unwrap();
        let expect = Partition::new(2, 2, vec![vec![1, 2, -1], vec![-2]]).unwrap();
        assert_eq!(fatten_partition(&p).unwrap(), expect);
        // identities fatten to identities
        for k in 1..4 {
            assert_eq!(
                fatten_partition(&Partition::identity(2 * k)).unwrap(),
                Partition::identity(k)
            );
        }
        // nested cups become a cup, adjacent cups become two singletons
        let nested = Partition::new(0, 4, vec![vec![-1, -4], vec![-2, -3]]).unwrap();
        assert_eq!(fatten_partition(&nested).unwrap(), Partition::cup());
        let adjacent = Partition::new(0, 4, vec![vec![-1, -2], vec![-3, -4]]).unwrap();
        assert_eq!(
            fatten_partition(&adjacent).unwrap(),
            Partition::new(0, 2, vec![vec![-1], vec![-2]]).unwrap()
        );
        // a bare cap fattens to the one-point singleton
        assert_eq!(
            fatten_partition(&Partition::cap()).unwrap(),
            Partition::new(1, 0, vec![vec![1]]).unwrap()
        );
        // crossings and odd point counts are rejected
        assert!(fatten_partition(&Partition::crossing()).is_err());
        assert!(fatten_partition(&Partition::singleton()).is_err());
    }

    #[test]
    fn fattening_is_a_bijection_on_small_shapes() {
        for kk in 0..3usize {
            for ll in 0..(3 - kk) {
                let thin: Vec<Partition> = all_partitions(2 * kk, 2 * ll)
                    .into_iter()
                    .filter(|p| {
                        p.blocks().iter().all(|b| b.len() == 2) && p.is_noncrossing()
                    })
                    .collect();
                let fat: Vec<Partition> = all_partitions(kk, ll)
                    .into_iter()
                    .filter(|p| p.is_noncrossing())
                    .collect();
                let images: std::collections::BTreeSet<Partition> = thin
                    .iter()
                    .map(|p| fatten_partition(p).unwrap())
                    .collect();
                assert_eq!(images.len(), thin.len(), "injective at ({kk},{ll})");
                assert_eq!(images.len(), fat.len(), "surjective at ({kk},{ll})");
                // face tracing inverts the map
                for q in &fat {
                    let lift = unfatten_partition(q).unwrap();
                    assert!(lift.is_noncrossing());
                    assert_eq!(fatten_partition(&lift).unwrap(), *q, "{q}");
                }
                for p in &thin {
                    assert_eq!(
                        unfatten_partition(&fatten_partition(p).unwrap()).unwrap(),
                        *p,
                        "{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn fattening_scalar_exponents() {
        assert_eq!(fattening_exponent(&Partition::identity(2)).unwrap(), 0);
        assert_eq!(fattening_exponent(&Partition::identity(4)).unwrap(), 0);
        assert_eq!(fattening_exponent(&Partition::pair_pair()).unwrap(), -2);
        assert_eq!(fattening_exponent(&Partition::cap()).unwrap(), -1);
        assert_eq!(fattening_exponent(&Partition::cup()).unwrap(), -1);
        // tensoring with id_2 preserves the exponent; with a cup-cap drops it by 2
        for p in [Partition::identity(2), Partition::pair_pair(), Partition::cup()] {
            let e = fattening_exponent(&p).unwrap();
            assert_eq!(
                fattening_exponent(&p.tensor(&Partition::identity(2))).unwrap(),
                e
            );
            if p.upper() == p.lower() {
                assert_eq!(
                    fattening_exponent(&p.tensor(&Partition::pair_pair())).unwrap(),
                    e - 2
                );
            }
        }
    }

    #[test]
    fn fattening_functoriality_exponent_identity() {
        // 2 loops(q,p) + e(qp) = 4 loops(qhat,phat) + e(q) + e(p)
        let pair_diagrams = |k: usize, l: usize| -> Vec<Partition> {
            all_partitions(k, l)
                .into_iter()
                .filter(|p| p.blocks().iter().all(|b| b.len() == 2) && p.is_noncrossing())
                .collect()
        };
        let shapes = [
            (0usize, 0usize),
            (0, 2),
            (2, 0),
            (2, 2),
            (0, 4),
            (4, 0),
            (2, 4),
            (4, 2),
            (4, 4),
        ];
        let mut checked = 0;
        for &(kk, mm) in &shapes {
            for &(mm2, ll) in &shapes {
                if mm2 != mm {
                    continue;
                }
                for p in pair_diagrams(kk, mm) {
                    for q in pair_diagrams(mm, ll) {
                        let c = Partition::compose(&q, &p).unwrap();
                        let ch = fatten_partition(&c.partition).unwrap();
                        let fc = Partition::compose(
                            &fatten_partition(&q).unwrap(),
                            &fatten_partition(&p).unwrap(),
                        )
                        .unwrap();
                        assert_eq!(ch, fc.partition, "{q} . {p}");
                        let lhs = 2 * c.loops as i64 + fattening_exponent(&c.partition).unwrap();
                        let rhs = 4 * fc.loops as i64
                            + fattening_exponent(&q).unwrap()
                            + fattening_exponent(&p).unwrap();
                        assert_eq!(lhs, rhs, "{q} . {p}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn fattened_jones_wenzl_idempotent() {
        // G(e_2) = id_1 - s^{-4} singleton-pair, idempotent for loop weight s^4
        let jw = JonesWenzl::up_to(2).unwrap();
        let g = fatten_morphism(jw.idempotent(2)).unwrap();
        assert_eq!(g.source(), 1);
        assert_eq!(g.coeff(&Partition::identity(1)), RatFunc::one());
        let pab = Partition::new(1, 1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(g.coeff(&pab), RatFunc::one().scale_power(-4).neg());
        let s4 = RatFunc::t().mul(&RatFunc::t()).mul(&RatFunc::t()).mul(&RatFunc::t());
        assert_eq!(Morphism::compose(&g, &g, &s4).unwrap(), g);
    }
}
