//! The series `F(t,u) = (1+u)^z prod_r (1 + u/(1+u) * t x_r/(1 - t x_r))`
//! and its three coefficient expansions.

use std::fmt;
use std::str::FromStr;

use crate::arith::{binom_z, sign, BiSeries, MultiPoly, Rational, ZPoly};
use crate::error::{Error, Result};
use crate::partitions::{lassalle_binom, partitions_of, Partition};
use crate::symfunc::{inverse_z, monomial_poly, Basis, Oracle, SymExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FVariant {
    /// `sum_{l(mu) <= i, |mu| = j} binom(z - l(mu), i - l(mu)) m_mu`
    Monome,
    /// `sum_k binom(z - j, i - k) sum_{mu |- j} <mu/k>/z_mu p_mu`
    Puissance1,
    /// `sum_k binom(z - k, i - k) sum_{mu |- j} (-1)^{k - l(mu)} <mu/k>/z_mu p_mu`
    Puissance2,
}

impl FVariant {
    pub const ALL: [FVariant; 3] = [FVariant::Monome, FVariant::Puissance1, FVariant::Puissance2];

    pub fn as_str(self) -> &'static str {
        match self {
            FVariant::Monome => "monome",
            FVariant::Puissance1 => "puissance1",
            FVariant::Puissance2 => "puissance2",
        }
    }
}

impl fmt::Display for FVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FVariant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown expansion `{s}`")))
    }
}

/// `(1+u)^z` as `sum_k binom(z, k) u^k`.
pub fn one_plus_u_to_z(nvars: usize, t_order: usize, u_order: usize) -> BiSeries {
    let mut out = BiSeries::zero(nvars, t_order, u_order);
    for k in 0..=u_order {
        out.set_coeff(0, k, MultiPoly::constant(nvars, binom_z(0, k as i64)));
    }
    out
}

/// `F(t,u)` built directly from its product form in `N` variables.
pub fn f_direct(nvars: usize, t_order: usize, u_order: usize) -> BiSeries {
    let one = BiSeries::one(nvars, t_order, u_order);
    let u = BiSeries::monomial(MultiPoly::one(nvars), 0, 1, t_order, u_order);
    let u_ratio = u
        .mul(&one.add(&u).unwrap().geom_inverse().unwrap())
        .unwrap();
    let mut acc = one_plus_u_to_z(nvars, t_order, u_order);
    for r in 0..nvars {
        let tx = BiSeries::monomial(MultiPoly::var(nvars, r, 1), 1, 0, t_order, u_order);
        let letter = tx.mul(&one.sub(&tx).unwrap().geom_inverse().unwrap()).unwrap();
        let factor = one.add(&u_ratio.mul(&letter).unwrap()).unwrap();
        acc = acc.mul(&factor).unwrap();
    }
    acc
}

/// The `u^i t^j` coefficient of `F(t,u)` in the chosen expansion. `Monome`
/// is in the `m` basis, the other two in the `p` basis.
pub fn f_expansion(variant: FVariant, i: usize, j: usize) -> SymExpr {
    let (i_, j_) = (i as i64, j as i64);
    match variant {
        FVariant::Monome => {
            let mut out = SymExpr::zero(Basis::Monomial);
            for mu in partitions_of(j).into_iter().filter(|mu| mu.len() <= i) {
                let l = mu.len() as i64;
                out.add_term(mu, binom_z(-l, i_ - l));
            }
            out
        }
        FVariant::Puissance1 | FVariant::Puissance2 => {
            let mut out = SymExpr::zero(Basis::Power);
            let k_max = match variant {
                FVariant::Puissance1 => i.min(j),
                _ => j,
            };
            for k in 0..=k_max {
                let k_ = k as i64;
                let zc = match variant {
                    FVariant::Puissance1 => binom_z(-j_, i_ - k_),
                    _ => binom_z(-k_, i_ - k_),
                };
                if zc.is_zero() {
                    continue;
                }
                for mu in partitions_of(j) {
                    let b = lassalle_binom(&mu, k);
                    if b == 0.into() {
                        continue;
                    }
                    let mut c = inverse_z(&mu) * Rational::from_integer(b);
                    if variant == FVariant::Puissance2 {
                        c *= sign(k_ - mu.len() as i64);
                    }
                    out.add_term(mu, zc.scale(&c));
                }
            }
            out
        }
    }
}

/// The two sides of the per-partition identity in `Q[z]`:
/// `sum_k binom(z-j, i-k) <mu/k>` and `sum_k (-1)^{k-l} binom(z-k, i-k) <mu/k>`.
pub fn cor4_sides(i: usize, j: usize, mu: &Partition) -> Result<(ZPoly, ZPoly)> {
    if mu.weight() != j {
        return Err(Error::WeightMismatch {
            partition: mu.to_string(),
            expected: j,
        });
    }
    let (i_, j_) = (i as i64, j as i64);
    let mut left = ZPoly::zero();
    let mut right = ZPoly::zero();
    for k in 0..=i.min(j) {
        let k_ = k as i64;
        let b = Rational::from_integer(lassalle_binom(mu, k));
        left = &left + &binom_z(-j_, i_ - k_).scale(&b);
        right = &right + &binom_z(-k_, i_ - k_).scale(&(b * sign(k_ - mu.len() as i64)));
    }
    Ok((left, right))
}

/// `sum_{l(mu)=k, |mu|=j} m_mu` against
/// `sum_{mu |- j} (-1)^{k-l(mu)} <mu/k>/z_mu p_mu`, both in `N` variables.
pub fn cor5_sides(k: usize, j: usize, nvars: usize) -> Result<(MultiPoly, MultiPoly)> {
    if nvars < j {
        return Err(Error::InsufficientVariables { needed: j, got: nvars });
    }
    let mut left = MultiPoly::zero(nvars);
    for mu in partitions_of(j).into_iter().filter(|mu| mu.len() == k) {
        left.add_assign_ref(&monomial_poly(&mu, nvars)?);
    }
    let mut expr = SymExpr::zero(Basis::Power);
    for mu in partitions_of(j) {
        let b = lassalle_binom(&mu, k);
        let c = inverse_z(&mu) * Rational::from_integer(b) * sign(k as i64 - mu.len() as i64);
        expr.add_rational(mu, c);
    }
    let right = Oracle::new(nvars).specialize(&expr);
    Ok((left, right))
}
