//! Structure constants from the quantum Chevalley rule alone.
//!
//! Let A = A₀ + qA₁ be the matrix of σ₁* on the Schubert basis, with A₀
//! lower triangular in the canonical order and diagonal c. Rows of Ψ are the
//! left eigenvectors of A₀ normalized by Ψ_aa = 1. The operator M of
//! multiplication by σ_λ commutes with A and sends σ_∅ to σ_λ; in the
//! eigenframe M' = ΨMΨ⁻¹ this reads, q-degree by q-degree,
//!
//! M'_d[a,b] (c_a − c_b) = [M'_{d−1}, B][a,b],   Σ_b M'_d[a,b] u_b = δ_{d0} w_a,
//!
//! with B = ΨA₁Ψ⁻¹, u = Ψe_∅ and w = Ψe_λ. Nothing beyond the Chevalley
//! expansions enters.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::linfrac::LinFrac;
use super::{chevalley, ChevalleyExpansion};
use crate::exactalg::{q, to_integral, to_rational, QPoly, SPoly};
use crate::partitions::{enumerate_sp, LieType, StrictPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error("diagonal Chevalley coefficients of {0} and {1} coincide")]
    DegenerateSpectrum(String, String),
    #[error("eigenframe weight for {0} is not a unit over the linear forms")]
    SingularWeight(String),
    #[error("coefficient of q^{d} {nu} in {lambda}*{mu} is not an integral polynomial: {value}")]
    NotIntegral { lambda: String, mu: String, nu: String, d: u32, value: String },
    #[error("{0} is not in SP({1})")]
    OutOfRange(String, u32),
}

type Mat = Vec<Vec<LinFrac>>;

fn zeros(n: usize) -> Mat {
    vec![vec![LinFrac::zero(); n]; n]
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
                }
            }
        }
    }
    out
}

/// Precomputed eigenframe of σ₁* for one (type, n).
#[derive(Clone, Debug)]
pub struct ChevalleyOperator {
    pub lie: LieType,
    pub n: u32,
    pub deg_q: u32,
    basis: Vec<StrictPartition>,
    index: HashMap<StrictPartition, usize>,
    diag: Vec<QPoly>,
    psi: Mat,
    psi_inv: Mat,
    b: Mat,
    u: Vec<LinFrac>,
}

/// All products σ_λ * σ_μ for one λ, indexed by μ.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTable {
    pub lambda: StrictPartition,
    pub products: BTreeMap<StrictPartition, BTreeMap<StrictPartition, SPoly>>,
}

impl ChevalleyOperator {
    pub fn new(lie: LieType, n: u32) -> Result<Self, ChevalleyError> {
        let basis = enumerate_sp(n);
        let size = basis.len();
        let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let exps: Vec<ChevalleyExpansion> = basis.iter().map(|l| chevalley(lie, l, n)).collect();
        let diag: Vec<QPoly> = exps.iter().map(|e| to_rational(&e.diagonal)).collect();
        for a in 0..size {
            for b in 0..a {
                if diag[a] == diag[b] {
                    return Err(ChevalleyError::DegenerateSpectrum(basis[a].to_string(), basis[b].to_string()));
                }
            }
        }
        // a0[k][r]: coefficient of σ_k in σ₁*σ_r from added boxes.
        let mut a0 = vec![vec![0u32; size]; size];
        let mut a1 = zeros(size);
        for (r, e) in exps.iter().enumerate() {
            for (mu, m) in &e.boxes {
                a0[index[mu]][r] = *m;
            }
            if let Some(l) = &e.quantum {
                a1[index[l]][r] = LinFrac::one();
            }
        }
        let mut psi = zeros(size);
        for a in 0..size {
            psi[a][a] = LinFrac::one();
            for r in (0..a).rev() {
                let mut s = LinFrac::zero();
                for k in r + 1..=a {
                    if a0[k][r] != 0 && !psi[a][k].is_zero() {
                        s = s.add(&psi[a][k].mul(&LinFrac::from_poly(QPoly::from_i64(a0[k][r] as i64))));
                    }
                }
                psi[a][r] = s.div_linear(&(&diag[a] - &diag[r]));
            }
        }
        let mut psi_inv = zeros(size);
        for b in 0..size {
            psi_inv[b][b] = LinFrac::one();
            for a in b + 1..size {
                let mut s = LinFrac::zero();
                for k in b..a {
                    if !psi[a][k].is_zero() && !psi_inv[k][b].is_zero() {
                        s = s.add(&psi[a][k].mul(&psi_inv[k][b]));
                    }
                }
                psi_inv[a][b] = s.neg();
            }
        }
        let b = matmul(&matmul(&psi, &a1), &psi_inv);
        let u: Vec<LinFrac> = (0..size).map(|a| psi[a][0].clone()).collect();
        for (a, ua) in u.iter().enumerate() {
            if ua.inv().is_none() {
                return Err(ChevalleyError::SingularWeight(basis[a].to_string()));
            }
        }
        let deg_q = match lie {
            LieType::C => n + 1,
            LieType::D => 2 * n,
        };
        Ok(ChevalleyOperator { lie, n, deg_q, basis, index, diag, psi, psi_inv, b, u })
    }

    pub fn basis(&self) -> &[StrictPartition] {
        &self.basis
    }

    /// Products σ_λ * σ_μ for every μ ∈ SP(n).
    pub fn multiplication_by(&self, lambda: &StrictPartition) -> Result<StructureTable, ChevalleyError> {
        let &li = self.index.get(lambda).ok_or_else(|| ChevalleyError::OutOfRange(lambda.to_string(), self.n))?;
        let size = self.basis.len();
        let w: Vec<LinFrac> = (0..size).map(|a| self.psi[a][li].clone()).collect();
        let u_inv: Vec<LinFrac> = self.u.iter().map(|v| v.inv().expect("checked at construction")).collect();
        let top = self.basis.last().map_or(0, |l| l.weight());
        let dmax = (lambda.weight() + top) / self.deg_q;
        let mut acc: Vec<Vec<SPoly>> = vec![vec![SPoly::zero(); size]; size];
        let mut prev = zeros(size);
        for d in 0..=dmax {
            let comm = if d == 0 {
                zeros(size)
            } else {
                let mut lhs = matmul(&prev, &self.b);
                let rhs = matmul(&self.b, &prev);
                for i in 0..size {
                    for j in 0..size {
                        lhs[i][j] = lhs[i][j].sub(&rhs[i][j]);
                    }
                }
                lhs
            };
            let mut cur = zeros(size);
            for a in 0..size {
                for b in 0..size {
                    if a != b && !comm[a][b].is_zero() {
                        cur[a][b] = comm[a][b].div_linear(&(&self.diag[a] - &self.diag[b]));
                    }
                }
            }
            for a in 0..size {
                let mut s = if d == 0 { w[a].clone() } else { LinFrac::zero() };
                for b in 0..size {
                    if b != a && !cur[a][b].is_zero() {
                        s = s.sub(&cur[a][b].mul(&self.u[b]));
                    }
                }
                cur[a][a] = s.mul(&u_inv[a]);
            }
            let md = matmul(&matmul(&self.psi_inv, &cur), &self.psi);
            let qd = q().pow(d);
            for nu in 0..size {
                for mu in 0..size {
                    let v = &md[nu][mu];
                    if v.is_zero() {
                        continue;
                    }
                    let poly = v.as_poly().and_then(to_integral).ok_or_else(|| ChevalleyError::NotIntegral {
                        lambda: lambda.to_string(),
                        mu: self.basis[mu].to_string(),
                        nu: self.basis[nu].to_string(),
                        d,
                        value: format!("{v:?}"),
                    })?;
                    acc[nu][mu] += &qd * &poly;
                }
            }
            prev = cur;
        }
        let mut products = BTreeMap::new();
        for (mu, m) in self.basis.iter().enumerate() {
            let col: BTreeMap<StrictPartition, SPoly> = (0..size)
                .filter(|&nu| !acc[nu][mu].is_zero())
                .map(|nu| (self.basis[nu].clone(), acc[nu][mu].clone()))
                .collect();
            products.insert(m.clone(), col);
        }
        Ok(StructureTable { lambda: lambda.clone(), products })
    }

    /// Eigenvalue c_a of the diagonal part, for inspection.
    pub fn diagonal(&self, lambda: &StrictPartition) -> Option<&QPoly> {
        self.index.get(lambda).map(|&i| &self.diag[i])
    }

    /// Number of entries of Ψ that are not polynomials.
    pub fn frame_denominators(&self) -> usize {
        self.psi.iter().flatten().filter(|v| !v.denominators().is_empty()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_spoly;

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    #[test]
    fn type_c_rank_two_squares() {
        let op = ChevalleyOperator::new(LieType::C, 2).unwrap();
        let tab = op.multiplication_by(&sp("1")).unwrap();
        let p = &tab.products[&sp("1")];
        assert_eq!(p.len(), 2);
        assert_eq!(p[&sp("2")], SPoly::from_i64(2));
        assert_eq!(p[&sp("1")], parse_spoly("2*t1").unwrap());
    }

    #[test]
    fn type_d_quantum_term() {
        let op = ChevalleyOperator::new(LieType::D, 2).unwrap();
        let tab = op.multiplication_by(&sp("1")).unwrap();
        let p = &tab.products[&sp("2,1")];
        assert_eq!(p[&sp("2,1")], parse_spoly("t2+t3").unwrap());
        assert_eq!(p[&StrictPartition::empty()], parse_spoly("q").unwrap());
    }

    #[test]
    fn identity_column() {
        for lie in [LieType::C, LieType::D] {
            let op = ChevalleyOperator::new(lie, 2).unwrap();
            for l in op.basis().to_vec() {
                let tab = op.multiplication_by(&l).unwrap();
                let col = &tab.products[&StrictPartition::empty()];
                assert_eq!(col.len(), 1);
                assert_eq!(col[&l], SPoly::one());
            }
        }
    }
}
