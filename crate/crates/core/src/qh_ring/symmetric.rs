//! q = 0 structure constants computed in Z[t] ⊗ Γ' itself.
//!
//! Products of factorial P- (type D) or Q-functions (type C) are expanded
//! in the factorial basis {P_ν(x|t)} over all strict ν, working in the
//! coordinates of odd power sums where Γ' ⊗ Q is a polynomial ring. The
//! ideal generated by the one-row functions of index n+1..2n is spanned by
//! the basis elements with ν₁ > n, so dropping those leaves the constants of
//! the q = 0 ring.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{to_integral, to_rational, Monomial, QPoly, SPoly, Var};
use crate::factorial_basis::{tworow, Family};
use crate::partitions::{LieType, StrictPartition};
use crate::pfaffian::class_polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetricError {
    #[error("coefficient of {nu} is not integral: {value}")]
    NotIntegral { nu: String, value: String },
    #[error("expansion left a nonzero remainder of degree {0}")]
    Residual(u32),
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn strict_partitions_of(d: u32) -> Vec<StrictPartition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
        if rem == 0 {
            out.push(StrictPartition::new(cur.clone()).expect("strict by construction"));
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Weighted degree Σ k·e over the power sums p_k.
fn x_degree(m: &Monomial) -> u32 {
    m.pairs().iter().map(|&(v, e)| if let Var::Pow(k) = v { k * e } else { 0 }).sum()
}

struct PowerSumBasis {
    family: Family,
    truncation: u32,
    /// P̄ᵢ in power sums, from iQ̄ᵢ = 2Σ_{k odd} p_k Q̄_{i−k}.
    onerows: Vec<QPoly>,
    classes: HashMap<StrictPartition, QPoly>,
}

impl PowerSumBasis {
    fn new(family: Family, truncation: u32, max_degree: u32) -> Self {
        let mut qbar = vec![QPoly::one()];
        for i in 1..=max_degree {
            let mut acc = QPoly::zero();
            for k in (1..=i).step_by(2) {
                acc += &(&QPoly::var(Var::Pow(k)) * &qbar[(i - k) as usize]);
            }
            qbar.push(acc.scale(&rat(2, i as i64)));
        }
        let onerows = qbar.iter().enumerate().map(|(i, p)| if i == 0 { p.clone() } else { p.scale(&rat(1, 2)) }).collect();
        PowerSumBasis { family, truncation, onerows, classes: HashMap::new() }
    }

    fn to_power_sums(&self, expr: &SPoly) -> QPoly {
        to_rational(expr).substitute(|v| match v {
            Var::Gen(i) => Some(self.onerows[i as usize].clone()),
            _ => None,
        })
    }

    fn class(&mut self, nu: &StrictPartition) -> QPoly {
        if let Some(c) = self.classes.get(nu) {
            return c.clone();
        }
        let (fam, tr) = (self.family, Some(self.truncation));
        let expr = class_polynomial(nu, |k, l| tworow(k, l, fam, tr).expr);
        let p = self.to_power_sums(&expr);
        self.classes.insert(nu.clone(), p.clone());
        p
    }

    /// Splits the x-degree-d part of f into t-coefficients of p-monomials.
    fn graded_part(f: &QPoly, d: u32) -> BTreeMap<Monomial, QPoly> {
        let mut out: BTreeMap<Monomial, QPoly> = BTreeMap::new();
        for (m, c) in f.terms() {
            if x_degree(m) != d {
                continue;
            }
            let (pw, tp): (Vec<_>, Vec<_>) = m.pairs().iter().partition(|(v, _)| matches!(v, Var::Pow(_)));
            out.entry(Monomial::from_pairs(pw)).or_default().add_term(Monomial::from_pairs(tp), c.clone());
        }
        out
    }

    /// Expands f in the factorial basis.
    fn expand(&mut self, mut f: QPoly, top: u32) -> Result<BTreeMap<StrictPartition, QPoly>, SymmetricError> {
        let mut out = BTreeMap::new();
        for d in (0..=top).rev() {
            let g = Self::graded_part(&f, d);
            if g.is_empty() {
                continue;
            }
            let nus = strict_partitions_of(d);
            let tops: Vec<BTreeMap<Monomial, QPoly>> = nus.iter().map(|nu| Self::graded_part(&self.class(nu), d)).collect();
            let mut monos: Vec<Monomial> = tops.iter().flat_map(|t| t.keys().cloned()).collect();
            monos.sort();
            monos.dedup();
            assert_eq!(monos.len(), nus.len(), "top parts span the degree-{d} power sums");
            let size = nus.len();
            // rows: monomials, columns: ν; entries are t-free.
            let mut a: Vec<Vec<BigRational>> = monos
                .iter()
                .map(|m| {
                    tops.iter()
                        .map(|t| t.get(m).map(|c| c.as_constant().expect("Schur P top part is t-free")).unwrap_or_else(BigRational::zero))
                        .collect()
                })
                .collect();
            let mut rhs: Vec<QPoly> = monos.iter().map(|m| g.get(m).cloned().unwrap_or_default()).collect();
            for key in g.keys() {
                if !monos.contains(key) {
                    return Err(SymmetricError::Residual(d));
                }
            }
            for col in 0..size {
                let piv = (col..size).find(|&r| !a[r][col].is_zero()).expect("invertible");
                a.swap(col, piv);
                rhs.swap(col, piv);
                let inv = BigRational::one() / &a[col][col];
                for j in 0..size {
                    a[col][j] = &a[col][j] * &inv;
                }
                rhs[col] = rhs[col].scale(&inv);
                for r in 0..size {
                    if r != col && !a[r][col].is_zero() {
                        let fct = a[r][col].clone();
                        for j in 0..size {
                            let v = &a[col][j] * &fct;
                            a[r][j] -= v;
                        }
                        let sub = rhs[col].scale(&fct);
                        rhs[r] -= &sub;
                    }
                }
            }
            for (nu, c) in nus.into_iter().zip(rhs) {
                if c.is_zero() {
                    continue;
                }
                f -= &(&c * &self.class(&nu));
                out.insert(nu, c);
            }
        }
        if !f.is_zero() {
            return Err(SymmetricError::Residual(f.terms().map(|(m, _)| x_degree(m)).max().unwrap_or(0)));
        }
        Ok(out)
    }
}

/// Products σ_λ * σ_μ at q = 0 for all pairs of `pairs`, computed in Γ'.
pub fn q0_constants_via_symmetric_functions(
    lie: LieType,
    n: u32,
    pairs: &[(StrictPartition, StrictPartition)],
) -> Result<Vec<BTreeMap<StrictPartition, SPoly>>, SymmetricError> {
    let (family, truncation) = match lie {
        LieType::C => (Family::Q, n),
        LieType::D => (Family::P, n + 1),
    };
    let top = pairs.iter().map(|(l, m)| l.weight() + m.weight()).max().unwrap_or(0);
    let mut basis = PowerSumBasis::new(family, truncation, top.max(1));
    let mut out = Vec::new();
    for (l, m) in pairs {
        let f = &basis.class(l) * &basis.class(m);
        let exp = basis.expand(f, l.weight() + m.weight())?;
        let mut res = BTreeMap::new();
        for (nu, c) in exp {
            if !nu.fits(n) {
                continue;
            }
            let c = to_integral(&c).ok_or_else(|| SymmetricError::NotIntegral { nu: nu.to_string(), value: c.to_string() })?;
            res.insert(nu, c);
        }
        out.push(res);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_spoly;

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    #[test]
    fn counts_match_odd_partitions() {
        assert_eq!(strict_partitions_of(6).len(), 4);
        assert_eq!(strict_partitions_of(0), vec![StrictPartition::empty()]);
    }

    #[test]
    fn rank_two_products() {
        let r = q0_constants_via_symmetric_functions(LieType::C, 2, &[(sp("1"), sp("1"))]).unwrap();
        assert_eq!(r[0][&sp("2")], SPoly::from_i64(2));
        assert_eq!(r[0][&sp("1")], parse_spoly("2*t1").unwrap());
        let r = q0_constants_via_symmetric_functions(LieType::D, 2, &[(sp("1"), sp("2,1"))]).unwrap();
        assert_eq!(r[0].len(), 1);
        assert_eq!(r[0][&sp("2,1")], parse_spoly("t2+t3").unwrap());
    }
}
