//! Elementary, complete and supersymmetric complete polynomials over
//! explicit variable lists (empty lists allowed).

use num_bigint::BigInt;

use super::poly::{Monomial, SPoly};
use super::var::Var;

/// eⱼ(vars); e₀ = 1.
pub fn elementary_symmetric(j: usize, vars: &[Var]) -> SPoly {
    // Row-by-row recurrence e_j(v₁..v_m) = e_j(v₁..v_{m-1}) + v_m e_{j-1}(…).
    let mut e: Vec<SPoly> = vec![SPoly::zero(); j + 1];
    e[0] = SPoly::one();
    for &v in vars {
        let x = Monomial::var(v);
        for k in (1..=j).rev() {
            let add = e[k - 1].mul_monomial(&x, &BigInt::from(1));
            e[k] += &add;
        }
    }
    e.swap_remove(j)
}

/// hᵢ(vars); h₀ = 1.
pub fn complete_homogeneous(i: usize, vars: &[Var]) -> SPoly {
    let mut h: Vec<SPoly> = vec![SPoly::zero(); i + 1];
    h[0] = SPoly::one();
    for &v in vars {
        let x = Monomial::var(v);
        for k in 1..=i {
            let add = h[k - 1].mul_monomial(&x, &BigInt::from(1));
            h[k] += &add;
        }
    }
    h.swap_remove(i)
}

/// h_k(x|y) = Σ_{i+j=k} hᵢ(x) eⱼ(y).
pub fn h_super(k: usize, xs: &[Var], ys: &[Var]) -> SPoly {
    let mut acc = SPoly::zero();
    for i in 0..=k {
        let e = elementary_symmetric(k - i, ys);
        if e.is_zero() {
            continue;
        }
        acc += &complete_homogeneous(i, xs) * &e;
    }
    acc
}

/// tₐ..t_b as a variable list; empty when a > b.
pub fn t_range(a: i64, b: i64) -> Vec<Var> {
    (a.max(1)..=b).map(|i| Var::T(i as u32)).collect()
}
