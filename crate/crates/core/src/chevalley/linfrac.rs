//! Rational functions in t whose denominators are products of linear forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{to_integral, to_rational, QPoly, SPoly};

/// numerator / ∏ den, each denominator a primitive integral linear form
/// whose leading coefficient is positive. `den` is sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct LinFrac {
    num: QPoly,
    den: Vec<SPoly>,
}

/// Splits a nonzero linear form L = c·ℓ with ℓ primitive and positively led.
fn normalize_linear(l: &QPoly) -> (BigRational, SPoly) {
    assert!(!l.is_zero(), "division by the zero linear form");
    assert!(l.terms().all(|(m, _)| m.total_degree() == 1), "denominator {l} is not a linear form");
    let lcm = l.terms().fold(BigInt::one(), |a, (_, c)| a.lcm(c.denom()));
    let scaled = l.scale(&BigRational::from_integer(lcm.clone()));
    let ints = to_integral(&scaled).expect("cleared denominators");
    let mut g = ints.terms().fold(BigInt::zero(), |a, (_, c)| a.gcd(c));
    let (_, lead) = ints.leading_grlex().expect("nonzero");
    if lead.is_negative() {
        g = -g;
    }
    let prim = crate::exactalg::div_exact_int(&ints, &g).expect("content divides");
    (BigRational::new(g, lcm), prim)
}

fn form_cmp(a: &SPoly, b: &SPoly) -> std::cmp::Ordering {
    a.terms().cmp(b.terms())
}

fn sort_forms(v: &mut [SPoly]) {
    v.sort_by(form_cmp);
}

impl LinFrac {
    pub fn zero() -> Self {
        LinFrac { num: QPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn from_poly(num: QPoly) -> Self {
        LinFrac { num, den: Vec::new() }
    }

    pub fn from_spoly(p: &SPoly) -> Self {
        Self::from_poly(to_rational(p))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominators(&self) -> &[SPoly] {
        &self.den
    }

    /// The polynomial value if no denominator is left.
    pub fn as_poly(&self) -> Option<&QPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    fn simplify(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        for l in std::mem::take(&mut self.den) {
            match self.num.div_exact(&to_rational(&l)) {
                Some(q) => self.num = q,
                None => kept.push(l),
            }
        }
        self.den = kept;
        self
    }

    pub fn mul(&self, o: &LinFrac) -> LinFrac {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        den.extend(o.den.iter().cloned());
        sort_forms(&mut den);
        LinFrac { num: &self.num * &o.num, den }.simplify()
    }

    fn with_denominator(&self, target: &[SPoly]) -> QPoly {
        let mut missing = target.to_vec();
        for l in &self.den {
            let i = missing.iter().position(|m| m == l).expect("target contains own denominators");
            missing.remove(i);
        }
        missing.iter().fold(self.num.clone(), |acc, l| &acc * &to_rational(l))
    }

    pub fn add(&self, o: &LinFrac) -> LinFrac {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return LinFrac { num: &self.num + &o.num, den: self.den.clone() }.simplify();
        }
        let mut union = self.den.clone();
        let mut rest = o.den.clone();
        for l in &self.den {
            if let Some(i) = rest.iter().position(|m| m == l) {
                rest.remove(i);
            }
        }
        union.extend(rest);
        sort_forms(&mut union);
        let num = &self.with_denominator(&union) + &o.with_denominator(&union);
        LinFrac { num, den: union }.simplify()
    }

    pub fn neg(&self) -> LinFrac {
        LinFrac { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &LinFrac) -> LinFrac {
        self.add(&o.neg())
    }

    /// self / L for a nonzero linear form L.
    pub fn div_linear(&self, l: &QPoly) -> LinFrac {
        let (c, prim) = normalize_linear(l);
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        den.push(prim);
        sort_forms(&mut den);
        LinFrac { num: self.num.scale(&(BigRational::one() / c)), den }.simplify()
    }

    /// Inverse; only defined when the numerator is a nonzero constant.
    pub fn inv(&self) -> Option<LinFrac> {
        let c = self.num.as_constant()?;
        if c.is_zero() {
            return None;
        }
        let num = self.den.iter().fold(QPoly::constant(BigRational::one() / c), |acc, l| &acc * &to_rational(l));
        Some(LinFrac::from_poly(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_qpoly;

    fn p(s: &str) -> QPoly {
        parse_qpoly(s).unwrap()
    }

    #[test]
    fn cancels_common_factors() {
        let a = LinFrac::from_poly(p("t1^2 - t2^2")).div_linear(&p("2*t2 - 2*t1"));
        assert_eq!(a.as_poly(), Some(&p("-1/2*t1 - 1/2*t2")));
    }

    #[test]
    fn sums_over_common_denominators() {
        let a = LinFrac::one().div_linear(&p("t1 - t2"));
        let b = LinFrac::one().div_linear(&p("t2 - t1"));
        assert!(a.add(&b).is_zero());
        let c = LinFrac::from_poly(p("t1")).div_linear(&p("t1 - t2"));
        let d = LinFrac::from_poly(p("t2")).div_linear(&p("t2 - t1"));
        assert_eq!(c.add(&d).as_poly(), Some(&p("1")));
    }

    #[test]
    fn inverse_of_constant_over_forms() {
        let u = LinFrac::from_poly(p("3")).div_linear(&p("t1 + t2")).div_linear(&p("t1 - t3"));
        let v = u.inv().unwrap();
        assert_eq!(v.as_poly(), Some(&p("1/3*(t1 + t2)*(t1 - t3)")));
        assert!(LinFrac::from_poly(p("t1")).div_linear(&p("t2")).inv().is_none());
    }
}
