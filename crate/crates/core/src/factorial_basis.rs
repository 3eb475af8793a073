//! Factorial P/Q one-row and two-row functions as polynomials in the
//! ordinary generators P̄ᵢ = Pᵢ(x) (variables `Gen(i)`) over Z[t].
//!
//! Q-family expressions are written in the same generators using Q̄ᵢ = 2P̄ᵢ.
//! Shifted one-rows carry half-integer constants, so they are returned
//! doubled: Dᵢ⁽ᵏ⁾ = 2Pᵢ⁽ᵏ⁾.

use num_bigint::BigInt;

use crate::exactalg::{
    complete_homogeneous, div_exact_int, elementary_symmetric, h_super, int, t_range, Monomial, SPoly, Var,
};

/// P- or Q-functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    P,
    Q,
}

/// Element of Z[t] ⊗ Γ' in the generators P̄ᵢ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaExpr {
    pub family: Family,
    pub expr: SPoly,
}

pub fn gen(i: u32) -> SPoly {
    if i == 0 {
        SPoly::one()
    } else {
        SPoly::var(Var::Gen(i))
    }
}

fn sign(e: i64) -> BigInt {
    BigInt::from(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Sets tᵢ = 0 for i > m.
pub fn truncate(p: &SPoly, m: Option<u32>) -> SPoly {
    match m {
        None => p.clone(),
        Some(m) => p.substitute(|v| match v {
            Var::T(i) if i > m => Some(SPoly::zero()),
            _ => None,
        }),
    }
}

/// (r, s) with k ≤ r ≤ k+l, 0 ≤ s ≤ l, r+s ≤ k+l and (r, s) ≠ (k, l).
pub fn index_set(k: u32, l: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for r in k..=k + l {
        for s in 0..=l {
            if r + s <= k + l && (r, s) != (k, l) {
                out.push((r, s));
            }
        }
    }
    out
}

/// Coefficient g_{k,l}^{r,s}(t) of the P two-row recurrence.
pub fn coeff_g(k: u32, l: u32, r: u32, s: u32, truncation: Option<u32>) -> SPoly {
    let (k, l, r, s) = (k as i64, l as i64, r as i64, s as i64);
    let xs = t_range(k + 1, r + 1);
    let p = if s >= 1 {
        let ys = t_range(s + 2, l);
        h_super((k + l - r - s) as usize, &xs, &ys).scale(&(sign(l - s) * 2))
    } else {
        let ys = t_range(1, l);
        h_super((k + l - r) as usize, &xs, &ys).scale(&sign(l))
    };
    truncate(&p, truncation)
}

/// Coefficient f_{k,l}^{r,s}(t) of the Q two-row recurrence.
pub fn coeff_f(k: u32, l: u32, r: u32, s: u32, truncation: Option<u32>) -> SPoly {
    let (k, l, r, s) = (k as i64, l as i64, r as i64, s as i64);
    let xs = t_range(k, r);
    let ys = t_range(s + 1, l - 1);
    let p = h_super((k + l - r - s) as usize, &xs, &ys).scale(&(sign(l - s) * 2));
    truncate(&p, truncation)
}

/// Pᵢ(x|t) or Qᵢ(x|t) in ordinary generators; index 0 gives 1.
pub fn onerow(i: u32, family: Family, truncation: Option<u32>) -> GammaExpr {
    let mut acc = SPoly::zero();
    if i == 0 {
        acc = SPoly::one();
    }
    for j in 0..i {
        let tv = match family {
            Family::P => t_range(1, i as i64),
            Family::Q => t_range(1, i as i64 - 1),
        };
        let e = elementary_symmetric(j as usize, &tv);
        if e.is_zero() {
            continue;
        }
        let g = match family {
            Family::P => gen(i - j),
            Family::Q => gen(i - j).scale(&BigInt::from(2)),
        };
        acc += &e.scale(&sign(j as i64)) * &g;
    }
    GammaExpr { family, expr: truncate(&acc, truncation) }
}

/// P_{k,l}(x|t) or Q_{k,l}(x|t) via the quadratic recurrence, with
/// P_{k,0} = P_k, antisymmetry for k < l and P₀ = Q₀ = 1.
pub fn tworow(k: u32, l: u32, family: Family, truncation: Option<u32>) -> GammaExpr {
    if k < l {
        let g = tworow(l, k, family, truncation);
        return GammaExpr { family, expr: -g.expr };
    }
    if l == 0 {
        return onerow(k, family, truncation);
    }
    let one = |i| onerow(i, family, truncation).expr;
    let mut acc = &one(k) * &one(l);
    for (r, s) in index_set(k, l) {
        let c = match family {
            Family::P => coeff_g(k, l, r, s, truncation),
            Family::Q => coeff_f(k, l, r, s, truncation),
        };
        if c.is_zero() {
            continue;
        }
        acc += &c * &(&one(r) * &one(s));
    }
    GammaExpr { family, expr: acc }
}

/// Dᵢ⁽ᵏ⁾ = 2Pᵢ⁽ᵏ⁾(x|t) read off the generating series
/// ∏(1+xⱼu)/(1−xⱼu) · ∏_{j≤k}(1 − tⱼu); D₀⁽ᵏ⁾ = 1.
pub fn doubled_shifted_onerow_series(i: u32, k: u32) -> SPoly {
    let tk = t_range(1, k as i64);
    let mut acc = SPoly::zero();
    for j in 0..=i {
        let e = elementary_symmetric(j as usize, &tk);
        if e.is_zero() {
            continue;
        }
        let g = if i == j { SPoly::one() } else { gen(i - j).scale(&BigInt::from(2)) };
        acc += &e.scale(&sign(j as i64)) * &g;
    }
    acc
}

/// Dᵢ⁽ᵏ⁾ from the closed forms in factorial one-rows: for i ≥ k,
/// 2Σ_a h_a(t_{k+1}..t_{i−a+1}) P_{i−a}(x|t); for i < k,
/// 2Σ_{a<i} (−1)^a e_a(t_{i−a+2}..t_k) P_{i−a}(x|t) + (−1)^i e_i(t₁..t_k).
pub fn shifted_onerow(i: u32, k: u32) -> SPoly {
    let p = |m: u32| onerow(m, Family::P, None).expr;
    let two = BigInt::from(2);
    if i == 0 {
        return SPoly::one();
    }
    if k == 0 {
        return gen(i).scale(&two);
    }
    if i > k {
        let j = (i - k) as i64;
        let mut acc = SPoly::zero();
        for a in 0..=j {
            let h = complete_homogeneous(a as usize, &t_range(k as i64 + 1, k as i64 + j - a + 1));
            acc += &h * &p(i - a as u32);
        }
        acc.scale(&two)
    } else {
        let (i, k) = (i as i64, k as i64);
        let mut acc = SPoly::zero();
        for a in 0..i {
            let e = elementary_symmetric(a as usize, &t_range(i - a + 2, k));
            acc += &e.scale(&sign(a)) * &p((i - a) as u32);
        }
        acc = acc.scale(&two);
        acc += &elementary_symmetric(i as usize, &t_range(1, k)).scale(&sign(i));
        acc
    }
}

/// Doubled left-hand side of the quadratic relation for P_k(x|t):
/// 2P_k² + 2(−1)^k e_k P_k + Σ_{0<i<k} (−1)^i D_{k−i}⁽ᵏ⁾D_{k+i}⁽ᵏ⁾ + (−1)^k D_{2k}⁽ᵏ⁾.
/// Vanishes in Z[t] ⊗ Γ'.
pub fn doubled_quadratic_relation(k: u32) -> SPoly {
    let pk = onerow(k, Family::P, None).expr;
    let ek = elementary_symmetric(k as usize, &t_range(1, k as i64));
    let mut acc = (&pk * &pk).scale(&BigInt::from(2));
    acc += &(&ek * &pk).scale(&(sign(k as i64) * 2));
    for i in 1..k {
        acc += &(&shifted_onerow(k - i, k) * &shifted_onerow(k + i, k)).scale(&sign(i as i64));
    }
    acc += &shifted_onerow(2 * k, k).scale(&sign(k as i64));
    acc
}

/// Doubled two-row expression in shifted one-rows, equal to 2P_{k,l}(x|t):
/// ½(D_k⁽ᵏ⁾ − (−1)^k e_k)(D_l⁽ˡ⁾ + (−1)^l e_l) + Σ_{0<j<l} (−1)^j D_{k+j}⁽ᵏ⁾D_{l−j}⁽ˡ⁾ + (−1)^l D_{k+l}⁽ᵏ⁾.
pub fn doubled_tworow_from_shifted(k: u32, l: u32) -> SPoly {
    let ek = elementary_symmetric(k as usize, &t_range(1, k as i64));
    let el = elementary_symmetric(l as usize, &t_range(1, l as i64));
    let first = &shifted_onerow(k, k) - &ek.scale(&sign(k as i64));
    let half = div_exact_int(&first, &BigInt::from(2)).expect("D_k^(k) - (-1)^k e_k is even");
    let second = &shifted_onerow(l, l) + &el.scale(&sign(l as i64));
    let mut acc = &half * &second;
    for j in 1..l {
        acc += &(&shifted_onerow(k + j, k) * &shifted_onerow(l - j, l)).scale(&sign(j as i64));
    }
    acc += &shifted_onerow(k + l, k).scale(&sign(l as i64));
    acc
}

/// t ↦ (0, t₁, t₂, …) on an expression.
pub fn shift_t(p: &SPoly) -> SPoly {
    p.substitute(|v| match v {
        Var::T(1) => Some(SPoly::zero()),
        Var::T(i) => Some(SPoly::var(Var::T(i - 1))),
        _ => None,
    })
}

/// A single generator monomial, used when building expressions by hand.
pub fn gen_monomial(i: u32, e: u32) -> Monomial {
    Monomial::var_pow(Var::Gen(i), e)
}

/// The constant 2 as an expression.
pub fn two() -> SPoly {
    int(2)
}
