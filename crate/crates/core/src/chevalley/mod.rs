//! Chevalley rules: Ivanov's rule for factorial P/Q-functions and the
//! equivariant quantum Chevalley formulas in types C and D.

mod linfrac;
mod operator;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactalg::{q, t, to_rational, QPoly, SPoly};
use crate::factorial_basis::Family;
use crate::partitions::{add_box_successors, LieType, StrictPartition};
use crate::schur_oracle::{eval_p_direct, eval_q_direct, identity_check, Certificate, EvalPoint, OracleError};

pub use linfrac::LinFrac;
pub use operator::{ChevalleyError, ChevalleyOperator, StructureTable};

/// Expansion of σ₁ * σ_λ.
#[derive(Clone, Debug, PartialEq)]
pub struct ChevalleyExpansion {
    pub lambda: StrictPartition,
    pub boxes: Vec<(StrictPartition, u32)>,
    pub diagonal: SPoly,
    pub quantum: Option<StrictPartition>,
}

impl ChevalleyExpansion {
    /// Coefficients in S[q] keyed by the class.
    pub fn terms(&self) -> BTreeMap<StrictPartition, SPoly> {
        let mut out: BTreeMap<StrictPartition, SPoly> = BTreeMap::new();
        for (mu, m) in &self.boxes {
            *out.entry(mu.clone()).or_default() += SPoly::from_i64(*m as i64);
        }
        if !self.diagonal.is_zero() {
            *out.entry(self.lambda.clone()).or_default() += self.diagonal.clone();
        }
        if let Some(l) = &self.quantum {
            *out.entry(l.clone()).or_default() += q();
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Σ_{i≤r} t_{λᵢ+1} over the padded partition.
pub fn diagonal_d(lambda: &StrictPartition) -> SPoly {
    lambda.padded().parts().iter().fold(SPoly::zero(), |a, &p| a + t(p + 1))
}

/// 2Σ t_{λᵢ}.
pub fn diagonal_c(lambda: &StrictPartition) -> SPoly {
    lambda.parts().iter().fold(SPoly::zero(), |a, &p| a + t(p)).scale(&BigInt::from(2))
}

pub fn chevalley_d(lambda: &StrictPartition, n: u32) -> ChevalleyExpansion {
    let boxes = add_box_successors(lambda, n).into_iter().map(|m| (m, 1)).collect();
    let pad = lambda.padded();
    let p = pad.parts();
    let quantum = (p.len() >= 2 && p[0] == n && p[1] + 1 == n).then(|| lambda.drop_front(2));
    ChevalleyExpansion { lambda: lambda.clone(), boxes, diagonal: diagonal_d(lambda), quantum }
}

pub fn chevalley_c(lambda: &StrictPartition, n: u32) -> ChevalleyExpansion {
    let l = lambda.len() as i64;
    let boxes = add_box_successors(lambda, n)
        .into_iter()
        .map(|m| {
            let e = l - m.len() as i64 + 1;
            (m, 1u32 << e)
        })
        .collect();
    let quantum = (!lambda.is_empty() && lambda.first() == n).then(|| lambda.drop_front(1));
    ChevalleyExpansion { lambda: lambda.clone(), boxes, diagonal: diagonal_c(lambda), quantum }
}

pub fn chevalley(lie: LieType, lambda: &StrictPartition, n: u32) -> ChevalleyExpansion {
    match lie {
        LieType::C => chevalley_c(lambda, n),
        LieType::D => chevalley_d(lambda, n),
    }
}

/// P₁·P_λ = Σ_{μ→λ} P_μ + (Σ t_{λᵢ+1}) P_λ, or its Q-analogue, with μ
/// ranging over all strict partitions.
#[derive(Clone, Debug, PartialEq)]
pub struct IvanovIdentity {
    pub family: Family,
    pub lambda: StrictPartition,
    pub boxes: Vec<(StrictPartition, u32)>,
    pub diagonal: SPoly,
}

pub fn ivanov_chevalley(lambda: &StrictPartition, family: Family) -> IvanovIdentity {
    let unbounded = lambda.first() + 1;
    let l = lambda.len() as i64;
    let boxes = add_box_successors(lambda, unbounded)
        .into_iter()
        .map(|m| {
            let mult = match family {
                Family::P => 1,
                Family::Q => 1u32 << (l - m.len() as i64 + 1),
            };
            (m, mult)
        })
        .collect();
    let diagonal = match family {
        Family::P => diagonal_d(lambda),
        Family::Q => diagonal_c(lambda),
    };
    IvanovIdentity { family, lambda: lambda.clone(), boxes, diagonal }
}

impl IvanovIdentity {
    fn eval(&self, mu: &StrictPartition, pt: &EvalPoint) -> Result<QPoly, OracleError> {
        match self.family {
            Family::P => eval_p_direct(mu, pt),
            Family::Q => eval_q_direct(mu, pt),
        }
    }

    fn eval_t(c: &SPoly, pt: &EvalPoint) -> QPoly {
        to_rational(c).substitute(|v| match v {
            crate::exactalg::Var::T(j) => Some(pt.t_value(j as usize)),
            _ => None,
        })
    }

    pub fn lhs(&self, pt: &EvalPoint) -> Result<QPoly, OracleError> {
        Ok(&self.eval(&StrictPartition::row(1), pt)? * &self.eval(&self.lambda, pt)?)
    }

    pub fn rhs(&self, pt: &EvalPoint) -> Result<QPoly, OracleError> {
        let mut acc = &Self::eval_t(&self.diagonal, pt) * &self.eval(&self.lambda, pt)?;
        for (mu, m) in &self.boxes {
            acc += self.eval(mu, pt)?.scale(&BigRational::from_integer(BigInt::from(*m)));
        }
        Ok(acc)
    }

    /// Oracle certificate with every t that can occur kept symbolic.
    pub fn certify(&self) -> Result<Certificate, OracleError> {
        let name = format!("ivanov-{:?}-[{}]", self.family, self.lambda);
        let m = self.lambda.first() + 1;
        identity_check(&name, |pt| self.lhs(pt), |pt| self.rhs(pt), self.lambda.weight() + 1, m)
    }
}
