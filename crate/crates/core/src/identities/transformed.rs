//! Expansions of `p_k`, `h_k`, `e_k` on the alphabet `X/(1-tX)` in the
//! classical bases over `X`.

use num::BigInt;

use crate::arith::{binom_int, factorial, sign, Rational, ZPoly};
use crate::error::{Error, Result};
use crate::partitions::{lassalle_binom, partitions_of};
use crate::symfunc::{inverse_z, Basis, SymExpr, SymSeries};

/// `p_k(X/(1-tX))` in the `e` basis (`variant = Elementary`) or the `h`
/// basis (`variant = Complete`). The `t^d` slice collects `|mu| = k + d`
/// with coefficient `C(|mu|, k) * sgn * k (l-1)! / prod m_i!`, where
/// `sgn = (-1)^{|mu| - l}` for `e` and `(-1)^{l - 1}` for `h`.
pub fn thm1_rhs(variant: Basis, k: usize, t_order: usize) -> Result<SymSeries> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    let mut slices = Vec::with_capacity(t_order + 1);
    for d in 0..=t_order {
        let weight = k + d;
        let mut slice = SymExpr::zero(variant);
        for mu in partitions_of(weight) {
            let l = mu.len() as i64;
            let s = match variant {
                Basis::Elementary => sign(weight as i64 - l),
                Basis::Complete => sign(l - 1),
                other => return Err(Error::UnsupportedBasis(other.letter())),
            };
            let c = binom_int(weight as i64, k as i64)
                * s
                * Rational::new(BigInt::from(k) * factorial(mu.len() - 1), mu.multiplicity_factorials());
            slice.add_rational(mu, c);
        }
        slices.push(slice);
    }
    Ok(SymSeries { slices })
}

/// `h_k(X/(1-tX))` (`variant = Complete`) or `e_k(X/(1-tX))`
/// (`variant = Elementary`) in the power-sum basis:
/// `sum_{|mu| >= k} t^{|mu|-k} <mu/k>/z_mu p_mu`, with the extra sign
/// `(-1)^{k - l(mu)}` for `e`.
pub fn thm2_rhs(variant: Basis, k: usize, t_order: usize) -> Result<SymSeries> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    let mut slices = Vec::with_capacity(t_order + 1);
    for d in 0..=t_order {
        let mut slice = SymExpr::zero(Basis::Power);
        for mu in partitions_of(k + d) {
            let b = lassalle_binom(&mu, k);
            if b == 0.into() {
                continue;
            }
            let s = match variant {
                Basis::Complete => sign(0),
                Basis::Elementary => sign(k as i64 - mu.len() as i64),
                other => return Err(Error::UnsupportedBasis(other.letter())),
            };
            let c = inverse_z(&mu) * Rational::from_integer(b) * s;
            slice.add_term(mu, ZPoly::constant(c));
        }
        slices.push(slice);
    }
    Ok(SymSeries { slices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};
    use crate::partitions::Partition;
    use crate::symfunc::{complete_in_power, power_in_elementary};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn thm1_low_slices() {
        let s = thm1_rhs(Basis::Elementary, 1, 1).unwrap();
        assert_eq!(s.slice(0).to_string(), "e[1]");
        assert_eq!(s.slice(1).coeff(&p(&[1, 1])), ZPoly::constant(rat(1)));
        assert_eq!(s.slice(1).coeff(&p(&[2])), ZPoly::constant(rat(-2)));
        assert_eq!(s.slice(1), &power_in_elementary(2));
        let h = thm1_rhs(Basis::Complete, 1, 0).unwrap();
        assert_eq!(h.slice(0).to_string(), "h[1]");
        assert!(thm1_rhs(Basis::Power, 1, 0).is_err());
        assert!(thm1_rhs(Basis::Elementary, 0, 0).is_err());
    }

    #[test]
    fn thm2_low_slices() {
        let h = thm2_rhs(Basis::Complete, 1, 3).unwrap();
        for d in 0..=3 {
            let slice = h.slice(d);
            assert_eq!(slice.len(), 1);
            assert_eq!(slice.coeff(&Partition::row(d + 1)), ZPoly::one());
        }
        assert_eq!(thm2_rhs(Basis::Elementary, 1, 3).unwrap(), h);
        let h2 = thm2_rhs(Basis::Complete, 2, 0).unwrap();
        assert_eq!(h2.slice(0), &complete_in_power(2));
        assert_eq!(h2.slice(0).coeff(&p(&[2])), ZPoly::constant(frac(1, 2)));
    }
}
