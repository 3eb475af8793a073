use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::var::{DegreeTable, Var};

/// Exact coefficient ring.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn from_bigint(v: BigInt) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / o` when the quotient lies in the ring.
    fn div_exact(&self, o: &Self) -> Option<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn from_bigint(v: BigInt) -> Self {
        v
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn from_bigint(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
}

/// Sparse exponent vector, sorted by variable, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut m = BTreeMap::new();
        for (v, e) in pairs {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Number of variable factors counted with multiplicity.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree(&self, table: &DegreeTable) -> u32 {
        self.0.iter().map(|&(v, e)| table.degree(v) * e).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| o.exp(v) >= e)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(
            o.0.iter()
                .filter_map(|&(v, e)| {
                    let r = e - self.exp(v);
                    (r > 0).then_some((v, r))
                })
                .collect(),
        )
    }

    /// Splits into the coefficient-side part and the rest.
    pub fn split_inner(&self) -> (Monomial, Monomial) {
        let (inner, outer): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| v.is_inner());
        (Monomial(inner), Monomial(outer))
    }

    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    /// Graded lexicographic comparison; the smallest variable in `Var` order
    /// is the most significant. This is a monomial order.
    pub fn grlex_cmp(&self, o: &Monomial) -> Ordering {
        self.total_degree().cmp(&o.total_degree()).then_with(|| {
            let (a, b) = (&self.0, &o.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(&eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }

    /// Graded reverse lexicographic comparison of outer monomials with
    /// q < X₁ < X₂ < … and every variable of degree one.
    pub fn grevlex_cmp(&self, o: &Monomial) -> Ordering {
        self.total_degree().cmp(&o.total_degree()).then_with(|| {
            let mut a: Vec<_> = self.0.iter().map(|&(v, e)| (v.outer_rank(), e)).collect();
            let mut b: Vec<_> = o.0.iter().map(|&(v, e)| (v.outer_rank(), e)).collect();
            a.sort_unstable();
            b.sort_unstable();
            let (mut i, mut j) = (0, 0);
            loop {
                let ra = a.get(i).map(|x| x.0).unwrap_or(u64::MAX);
                let rb = b.get(j).map(|x| x.0).unwrap_or(u64::MAX);
                if ra == u64::MAX && rb == u64::MAX {
                    return Ordering::Equal;
                }
                let r = ra.min(rb);
                let ea = if ra == r { a[i].1 } else { 0 };
                let eb = if rb == r { b[j].1 } else { 0 };
                if ea != eb {
                    return eb.cmp(&ea);
                }
                if ra == r {
                    i += 1;
                }
                if rb == r {
                    j += 1;
                }
            }
        })
    }
}

/// Sparse multivariate polynomial with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R: Coeff> {
    terms: BTreeMap<Monomial, R>,
}

pub type SPoly = Poly<BigInt>;
pub type QPoly = Poly<BigRational>;

impl<R: Coeff> Default for Poly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coeff> Poly<R> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(R::from_i64(c))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), R::one())
    }

    pub fn term(m: Monomial, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, R)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, R)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&Monomial::one())
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(R::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.mul_ref(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<S: Coeff, F: Fn(&R) -> S>(&self, f: F) -> Poly<S> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<S: Coeff, F: Fn(&R) -> Option<S>>(&self, f: F) -> Option<Poly<S>> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Some(out)
    }

    /// Highest degree of any term, `None` for zero.
    pub fn degree(&self, table: &DegreeTable) -> Option<u32> {
        self.terms.keys().map(|m| m.degree(table)).max()
    }

    pub fn is_homogeneous(&self, table: &DegreeTable) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree(table));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn max_exponent(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Image under the homomorphism fixing unbound variables.
    pub fn substitute<F: Fn(Var) -> Option<Poly<R>>>(&self, bind: F) -> Self {
        let mut cache: BTreeMap<(Var, u32), Poly<R>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Self::constant(c.clone());
            for &(v, e) in m.pairs() {
                match bind(v) {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pe = cache.entry((v, e)).or_insert_with(|| p.pow(e));
                        factor = &factor * &*pe;
                    }
                }
            }
            if factor.is_zero() {
                continue;
            }
            let km = Monomial(kept);
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&km), fc);
            }
        }
        out
    }

    pub fn substitute_map(&self, map: &BTreeMap<Var, Poly<R>>) -> Self {
        self.substitute(|v| map.get(&v).cloned())
    }

    /// Groups terms by their non-coefficient part; values are polynomials in
    /// coefficient-side variables only.
    pub fn split_outer(&self) -> BTreeMap<Monomial, Poly<R>> {
        let mut out: BTreeMap<Monomial, Poly<R>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inner, outer) = m.split_inner();
            out.entry(outer).or_default().add_term(inner, c.clone());
        }
        out
    }

    /// Groups terms by the exponent of `v`.
    pub fn by_power(&self, v: Var) -> BTreeMap<u32, Poly<R>> {
        let mut out: BTreeMap<u32, Poly<R>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(v)).or_default().add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn leading_grlex(&self) -> Option<(&Monomial, &R)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(b.0))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Poly<R>) -> Option<Self> {
        let (lm, lc) = d.leading_grlex()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((rm, rc)) = rem.leading_grlex() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = lm.quotient_of(rm);
            let qc = rc.div_exact(&lc)?;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }
}

impl<'a, R: Coeff> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<R: Coeff> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(mut self, o: Poly<R>) -> Poly<R> {
        self += &o;
        self
    }
}

impl<'a, R: Coeff> AddAssign<&'a Poly<R>> for Poly<R> {
    fn add_assign(&mut self, o: &Poly<R>) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<R: Coeff> AddAssign for Poly<R> {
    fn add_assign(&mut self, o: Poly<R>) {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a, R: Coeff> SubAssign<&'a Poly<R>> for Poly<R> {
    fn sub_assign(&mut self, o: &Poly<R>) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.neg_ref());
        }
    }
}

impl<'a, R: Coeff> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<R: Coeff> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(mut self, o: Poly<R>) -> Poly<R> {
        self -= &o;
        self
    }
}

impl<R: Coeff> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }
}

impl<R: Coeff> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl<'a, R: Coeff> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<R: Coeff> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: Poly<R>) -> Poly<R> {
        &self * &o
    }
}

impl<R: Coeff> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::render(self))
    }
}

impl<R: Coeff> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::render(self))
    }
}

pub fn to_rational(p: &SPoly) -> QPoly {
    p.map_coeffs(|c| BigRational::from_integer(c.clone()))
}

/// Integral image of a rational polynomial, `None` if a coefficient is not an integer.
pub fn to_integral(p: &QPoly) -> Option<SPoly> {
    p.try_map_coeffs(|c| c.is_integer().then(|| c.to_integer()))
}

/// Integral polynomial divided by an integer, `None` if not exact.
pub fn div_exact_int(p: &SPoly, d: &BigInt) -> Option<SPoly> {
    p.try_map_coeffs(|c| Coeff::div_exact(c, d))
}
