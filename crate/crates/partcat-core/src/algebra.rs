//! Morphism spaces: formal linear combinations of partitions with exact
//! coefficients, composed with loop weights, plus the triangular x-basis and
//! negligibility of morphisms at a rational parameter.

use num::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::categories::Category;
use crate::diagram::Partition;
use crate::Error;

/// Rational 0 and 1 without the method-name clash between the numeric traits
/// and [`Coeff`].
pub(crate) fn rat_zero() -> BigRational {
    Zero::zero()
}

pub(crate) fn rat_one() -> BigRational {
    One::one()
}

/// Coefficient ring for morphism spaces. Loop weights are powers of a caller
/// supplied ring element, so the same machinery serves polynomial parameters
/// (weight t), fattened diagrams (weight t²) and rational evaluations.
pub trait Coeff: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn pow(&self, n: usize) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Laurent polynomial in t over the rationals, sparse by exponent.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, rat_one())
    }

    /// The variable t itself.
    pub fn t() -> Self {
        LaurentPoly::monomial(1, rat_one())
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&coeff) {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn from_integer(n: i64) -> Self {
        LaurentPoly::monomial(0, BigRational::from_integer(n.into()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert(&mut self, exp: i64, coeff: BigRational) {
        if Zero::is_zero(&coeff) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &coeff;
                if Zero::is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Exact evaluation; negative exponents at x = 0 are a pole.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, Error> {
        let mut acc: BigRational = Zero::zero();
        for (&e, c) in &self.terms {
            if e >= 0 {
                acc += c * pow_rational(x, e as u32);
            } else {
                if Zero::is_zero(x) {
                    return Err(Error::BadParameter(
                        "evaluation at 0 hits a negative power of t".into(),
                    ));
                }
                acc += c / pow_rational(x, (-e) as u32);
            }
        }
        Ok(acc)
    }
}

fn pow_rational(x: &BigRational, n: u32) -> BigRational {
    let mut r = rat_one();
    for _ in 0..n {
        r *= x;
    }
    r
}

impl Coeff for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&e, c) in &o.terms {
            r.insert(e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&e, c) in &o.terms {
            r.insert(e, -c);
        }
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &o.terms {
                r.insert(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Expanded form with descending exponents, e.g. "t^3 - t^2 + 1/2*t - 4".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one();
            if !unit || e == 0 {
                write!(f, "{mag}")?;
            }
            if e != 0 {
                if !unit {
                    f.write_str("*")?;
                }
                if e == 1 {
                    f.write_str("t")?;
                } else {
                    write!(f, "t^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    /// JSON object mapping exponent to coefficient, both as strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw {
            let exp: i64 = e.parse().map_err(D::Error::custom)?;
            let coeff: BigRational = c.parse().map_err(D::Error::custom)?;
            p.insert(exp, coeff);
        }
        Ok(p)
    }
}

/// A formal linear combination of partitions of one shape, acting as a
/// morphism from `source` upper points to `target` lower points.
#[derive(Clone, PartialEq, Debug)]
pub struct Morphism<C: Coeff> {
    source: usize,
    target: usize,
    terms: BTreeMap<Partition, C>,
}

impl<C: Coeff> Morphism<C> {
    pub fn zero(source: usize, target: usize) -> Self {
        Morphism {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_partition(p: Partition) -> Self {
        let mut m = Morphism::zero(p.upper(), p.lower());
        m.insert(p, C::one());
        m
    }

    pub fn identity(k: usize) -> Self {
        Morphism::from_partition(Partition::identity(k))
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> C {
        self.terms.get(p).cloned().unwrap_or_else(C::zero)
    }

    pub fn insert(&mut self, p: Partition, c: C) {
        assert_eq!((p.upper(), p.lower()), (self.source, self.target));
        let cur = self.coeff(&p);
        let sum = cur.add(&c);
        if sum.is_zero() {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, Error> {
        if (self.source, self.target) != (o.source, o.target) {
            return Err(Error::ShapeMismatch(format!(
                "morphism add: ({},{}) vs ({},{})",
                self.source, self.target, o.source, o.target
            )));
        }
        let mut r = self.clone();
        for (p, c) in &o.terms {
            r.insert(p.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, Error> {
        self.add(&o.scale(&C::one().neg()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut r = Morphism::zero(self.source, self.target);
        if c.is_zero() {
            return r;
        }
        for (p, cp) in &self.terms {
            r.insert(p.clone(), cp.mul(c));
        }
        r
    }

    /// Linear extension of diagram composition; every removed loop multiplies
    /// the coefficient by `weight`.
    pub fn compose(q: &Self, p: &Self, weight: &C) -> Result<Self, Error> {
        if q.source != p.target {
            return Err(Error::ShapeMismatch(format!(
                "morphism compose: q source {} vs p target {}",
                q.source, p.target
            )));
        }
        let mut r = Morphism::zero(p.source, q.target);
        for (dp, cp) in &p.terms {
            for (dq, cq) in &q.terms {
                let comp = Partition::compose(dq, dp)?;
                let c = cp.mul(cq).mul(&weight.pow(comp.loops));
                r.insert(comp.partition, c);
            }
        }
        Ok(r)
    }

    pub fn tensor(&self, o: &Self) -> Self {
        let mut r = Morphism::zero(self.source + o.source, self.target + o.target);
        for (dp, cp) in &self.terms {
            for (dq, cq) in &o.terms {
                r.insert(dp.tensor(dq), cp.mul(cq));
            }
        }
        r
    }

    /// Coefficient-wise involution of the underlying diagrams.
    pub fn involution(&self) -> Self {
        let mut r = Morphism::zero(self.target, self.source);
        for (p, c) in &self.terms {
            r.insert(p.involution(), c.clone());
        }
        r
    }

    /// Categorical trace: close each diagram and weight by the component
    /// count, tr(p) = weight^components.
    pub fn trace(&self, weight: &C) -> Result<C, Error> {
        if self.source != self.target {
            return Err(Error::ShapeMismatch(format!(
                "trace of a ({},{}) morphism",
                self.source, self.target
            )));
        }
        let mut acc = C::zero();
        for (p, c) in &self.terms {
            acc = acc.add(&c.mul(&weight.pow(p.close_trace()?)));
        }
        Ok(acc)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Morphism<D> {
        let mut r = Morphism::zero(self.source, self.target);
        for (p, c) in &self.terms {
            r.insert(p.clone(), f(c));
        }
        r
    }
}

#[derive(Serialize, Deserialize)]
struct MorphismTermRepr<C> {
    partition: Partition,
    coeff: C,
}

#[derive(Serialize, Deserialize)]
struct MorphismRepr<C> {
    source: usize,
    target: usize,
    terms: Vec<MorphismTermRepr<C>>,
}

impl<C: Coeff + Serialize> Serialize for Morphism<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = MorphismRepr {
            source: self.source,
            target: self.target,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| MorphismTermRepr {
                    partition: p.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de, C: Coeff + Deserialize<'de>> Deserialize<'de> for Morphism<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MorphismRepr::<C>::deserialize(d)?;
        let mut m = Morphism::zero(repr.source, repr.target);
        for term in repr.terms {
            if (term.partition.upper(), term.partition.lower()) != (repr.source, repr.target) {
                return Err(D::Error::custom(format!(
                    "term shape ({},{}) does not match morphism shape ({},{})",
                    term.partition.upper(),
                    term.partition.lower(),
                    repr.source,
                    repr.target
                )));
            }
            m.insert(term.partition, term.coeff);
        }
        Ok(m)
    }
}

/// The triangular basis element x_p = p − Σ x_q over members q of the
/// category strictly coarser than p. Its coefficients are integers.
pub fn x_basis(cat: &Category, p: &Partition) -> Result<Morphism<BigRational>, Error> {
    if !cat.contains(p) {
        return Err(Error::UnknownCategory(format!(
            "x_basis: partition {p} not in {}",
            cat.name()
        )));
    }
    let mut cache: BTreeMap<Partition, Morphism<BigRational>> = BTreeMap::new();
    x_basis_memo(cat, p, &mut cache)
}

fn x_basis_memo(
    cat: &Category,
    p: &Partition,
    cache: &mut BTreeMap<Partition, Morphism<BigRational>>,
) -> Result<Morphism<BigRational>, Error> {
    if let Some(hit) = cache.get(p) {
        return Ok(hit.clone());
    }
    let mut m = Morphism::from_partition(p.clone());
    for q in cat.partitions(p.upper(), p.lower()).iter() {
        if q != p && q.refinement_leq(p)? {
            let xq = x_basis_memo(cat, q, cache)?;
            m = m.sub(&xq)?;
        }
    }
    cache.insert(p.clone(), m.clone());
    Ok(m)
}

/// True iff tr(f∘g) vanishes at t = t0 for every diagram g of the category
/// with the transposed shape, i.e. f lies in the radical of the trace form.
pub fn is_negligible(
    cat: &Category,
    f: &Morphism<BigRational>,
    t0: &BigRational,
) -> Result<bool, Error> {
    for g in cat.partitions(f.target(), f.source()).iter() {
        let fg = Morphism::compose(f, &Morphism::from_partition(g.clone()), t0)?;
        if !Zero::is_zero(&fg.trace(t0)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::Family;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn laurent_arithmetic_and_display() {
        let t = LaurentPoly::t();
        let p = &(&t * &t) - &t; // t^2 - t
        assert_eq!(p.to_string(), "t^2 - t");
        let q = &p * &LaurentPoly::monomial(-1, rat(1)); // t - 1
        assert_eq!(q.to_string(), "t - 1");
        assert_eq!(q.eval(&rat(5)).unwrap(), rat(4));
        assert_eq!(
            LaurentPoly::monomial(2, BigRational::new(3.into(), 2.into())).to_string(),
            "3/2*t^2"
        );
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!(LaurentPoly::monomial(-1, rat(2)).eval(&rat(0)).is_err());
        assert_eq!(
            LaurentPoly::monomial(-2, rat(8)).eval(&rat(2)).unwrap(),
            rat(2)
        );
    }

    #[test]
    fn laurent_json_round_trip() {
        let p = &LaurentPoly::t() - &LaurentPoly::monomial(-2, BigRational::new(1.into(), 3.into()));
        let js = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn composition_weights_loops() {
        // cap ∘ cup = t · (empty diagram)
        let cap = Morphism::<LaurentPoly>::from_partition(Partition::cap());
        let cup = Morphism::<LaurentPoly>::from_partition(Partition::cup());
        let m = Morphism::compose(&cap, &cup, &LaurentPoly::t()).unwrap();
        assert_eq!(m.coeff(&Partition::empty()), LaurentPoly::t());
        // trace of id_k is t^k
        let id3 = Morphism::<LaurentPoly>::identity(3);
        let tr = id3.trace(&LaurentPoly::t()).unwrap();
        assert_eq!(tr, LaurentPoly::monomial(3, rat(1)));
    }

    #[test]
    fn morphism_linear_structure() {
        let id = Morphism::<BigRational>::identity(2);
        let cross = Morphism::from_partition(Partition::crossing());
        let s = id.add(&cross).unwrap();
        let d = s.sub(&cross).unwrap();
        assert_eq!(d, id);
        assert!(id.sub(&id).unwrap().is_zero());
        let twice = id.scale(&rat(2));
        assert_eq!(twice.coeff(&Partition::identity(2)), rat(2));
        assert!(id.add(&Morphism::identity(3)).is_err());
    }

    #[test]
    fn involution_reverses_composition() {
        let p = Morphism::<LaurentPoly>::from_partition("1 1' 2' | 2".parse().unwrap());
        let q = Morphism::<LaurentPoly>::from_partition("1 2 1'".parse().unwrap());
        let t = LaurentPoly::t();
        let a = Morphism::compose(&q, &p, &t).unwrap().involution();
        let b = Morphism::compose(&p.involution(), &q.involution(), &t).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn x_basis_small_cases() {
        // x of the two-singletons diagram is itself minus the identity block
        let cat = Category::named(Family::P);
        let x = x_basis(&cat, &Partition::broken_string()).unwrap();
        assert_eq!(x.coeff(&Partition::broken_string()), rat(1));
        // the only strictly coarser element of P(1,1) is the joined string
        assert_eq!(x.coeff(&"1 1'".parse().unwrap()), rat(-1));
        assert_eq!(x.len(), 2);
        // x of the identity on 2 points subtracts only the four-block
        let x2 = x_basis(&cat, &Partition::identity(2)).unwrap();
        assert_eq!(x2.coeff(&Partition::identity(2)), rat(1));
        assert_eq!(x2.coeff(&Partition::four_block()), rat(-1));
        assert_eq!(x2.len(), 2);
    }

    #[test]
    fn x_basis_requires_membership() {
        let cat = Category::named(Family::NC2);
        assert!(x_basis(&cat, &Partition::singleton()).is_err());
    }

    #[test]
    fn negligibility_of_x_identity() {
        // x_{id_2} = id_2 − four-block is negligible at t = 1 but not at 2
        let cat = Category::named(Family::P);
        let x2 = x_basis(&cat, &Partition::identity(2)).unwrap();
        assert!(is_negligible(&cat, &x2, &rat(1)).unwrap());
        assert!(!is_negligible(&cat, &x2, &rat(2)).unwrap());
    }
}
