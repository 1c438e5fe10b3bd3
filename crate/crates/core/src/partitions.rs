//! Integer partitions and the statistics attached to them.
//!
//! - [`partitions_of`]: all partitions of `n` in reverse-lexicographic order
//! - [`z_of`]: `z_mu = prod_i i^{m_i} m_i!`
//! - [`lassalle_binom`]: number of ways to choose `k` cells of the Ferrers
//!   diagram of `mu` with at least one cell in every row
//! - [`ferrers_alphabet`] and [`pochhammer_lambda`]: the cell contents
//!   `j - 1 - (i - 1)/alpha` and the generalized rising factorial built on them

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{binom_int, factorial, Rational, ZPoly};
use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts; the empty sequence is the
/// empty partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`, or the empty partition when `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m_i`: number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// `(i, m_i)` for every part size present, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `prod_i m_i!`
    pub fn multiplicity_factorials(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .map(|&(_, m)| factorial(m))
            .product()
    }
}

impl fmt::Display for Partition {
    /// Bracketed and comma-joined, e.g. `[2,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1,1`, optionally bracketed; the empty string is the empty
    /// partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .unwrap_or(s)
            .trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part `{}`", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// All partitions of `n`, in reverse-lexicographic order of their parts.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions with weight in `lo..=hi`, grouped by weight.
pub fn partitions_in_range(lo: usize, hi: usize) -> impl Iterator<Item = Partition> {
    (lo..=hi).flat_map(partitions_of)
}

/// `z_mu = prod_i i^{m_i} m_i!`
pub fn z_of(mu: &Partition) -> BigInt {
    mu.multiplicities()
        .iter()
        .map(|&(i, m)| BigInt::from(i).pow(m as u32) * factorial(m))
        .product()
}

const COMPOSITION_LIMIT: usize = 12;

/// `<mu / k>`: ways of picking `k` cells of the diagram of `mu` with at least
/// one cell in every row.
pub fn lassalle_binom(mu: &Partition, k: usize) -> BigInt {
    if k <= COMPOSITION_LIMIT {
        lassalle_binom_by_compositions(mu, k)
    } else {
        lassalle_binom_genfun(mu, k)
            .into_iter()
            .nth(k)
            .unwrap_or_else(BigInt::zero)
    }
}

/// Sum over compositions `k_1 + ... + k_l = k`, `k_r >= 1`, of
/// `prod_r C(mu_r, k_r)`.
pub fn lassalle_binom_by_compositions(mu: &Partition, k: usize) -> BigInt {
    fn go(parts: &[usize], k: usize) -> BigInt {
        let Some((&first, rest)) = parts.split_first() else {
            return if k == 0 { BigInt::one() } else { BigInt::zero() };
        };
        // every remaining row needs a cell
        let min_rest = rest.len();
        let max_rest: usize = rest.iter().sum();
        let mut total = BigInt::zero();
        for kr in 1..=first.min(k) {
            let left = k - kr;
            if left < min_rest || left > max_rest {
                continue;
            }
            let c = binom_int(first as i64, kr as i64).to_integer();
            total += c * go(rest, left);
        }
        total
    }
    if k < mu.len() || k > mu.weight() {
        return BigInt::zero();
    }
    go(mu.parts(), k)
}

/// Coefficients `[q^0, ..., q^q_order]` of `prod_i ((1+q)^i - 1)^{m_i}`.
pub fn lassalle_binom_genfun(mu: &Partition, q_order: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); q_order + 1];
    acc[0] = BigInt::one();
    for &part in mu.parts() {
        // (1+q)^part - 1
        let factor: Vec<BigInt> = (0..=part)
            .map(|r| {
                if r == 0 {
                    BigInt::zero()
                } else {
                    binom_int(part as i64, r as i64).to_integer()
                }
            })
            .collect();
        let mut next = vec![BigInt::zero(); q_order + 1];
        for (a, ca) in acc.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in factor.iter().enumerate() {
                if a + b > q_order {
                    break;
                }
                next[a + b] += ca * cb;
            }
        }
        acc = next;
    }
    acc
}

/// Cell contents of a Ferrers diagram: `j - 1 - (i - 1)/alpha` for every
/// cell `(i, j)`, as a multiset in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FerrersAlphabet {
    values: Vec<Rational>,
    alpha: Rational,
}

impl FerrersAlphabet {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `p_n(Z)`, counting repeated values with multiplicity.
    pub fn power_sum(&self, n: usize) -> Rational {
        self.values
            .iter()
            .map(|c| num::pow(c.clone(), n))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `p_mu(Z) = prod_r p_{mu_r}(Z)`; 1 for the empty partition.
    pub fn power_sum_partition(&self, mu: &Partition) -> Rational {
        mu.parts()
            .iter()
            .map(|&n| self.power_sum(n))
            .fold(Rational::one(), |a, b| a * b)
    }
}

pub fn ferrers_alphabet(lambda: &Partition, alpha: &Rational) -> Result<FerrersAlphabet> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let mut values = Vec::with_capacity(lambda.weight());
    for (i, &row) in lambda.parts().iter().enumerate() {
        let start = -Rational::from_integer(BigInt::from(i)) / alpha;
        for j in 0..row {
            values.push(&start + Rational::from_integer(BigInt::from(j)));
        }
    }
    Ok(FerrersAlphabet {
        values,
        alpha: alpha.clone(),
    })
}

/// Values that `(x)_lambda` can be taken over.
pub trait PochhammerArg: Sized {
    fn unit() -> Self;
    fn shift_mul(&self, acc: Self, c: &Rational) -> Self;
}

impl PochhammerArg for Rational {
    fn unit() -> Self {
        Rational::one()
    }

    fn shift_mul(&self, acc: Self, c: &Rational) -> Self {
        acc * (self + c)
    }
}

impl PochhammerArg for ZPoly {
    fn unit() -> Self {
        ZPoly::one()
    }

    fn shift_mul(&self, acc: Self, c: &Rational) -> Self {
        &acc * &(self + &ZPoly::constant(c.clone()))
    }
}

/// `(x)_lambda = prod_{(i,j) in lambda} (x + j - 1 - (i - 1)/alpha)`.
pub fn pochhammer_lambda<T: PochhammerArg>(x: &T, lambda: &Partition, alpha: &Rational) -> Result<T> {
    let cells = ferrers_alphabet(lambda, alpha)?;
    Ok(cells
        .values()
        .iter()
        .fold(T::unit(), |acc, c| x.shift_mul(acc, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat, rising_factorial};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Euler's pentagonal recurrence, independent of the enumerator.
    fn partition_count(n: usize) -> u64 {
        let mut table = vec![0i64; n + 1];
        table[0] = 1;
        for i in 1..=n {
            let mut sum = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum += sign * table[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    sum += sign * table[i - g2];
                }
                k += 1;
            }
            table[i] = sum;
        }
        table[n] as u64
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let four: Vec<String> = partitions_of(4).iter().map(ToString::to_string).collect();
        assert_eq!(four, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn enumeration_counts_and_uniqueness() {
        for n in 0..=30 {
            let ps = partitions_of(n);
            assert_eq!(ps.len() as u64, partition_count(n), "n={n}");
            assert!(ps.iter().all(|m| m.weight() == n));
            assert!(ps.windows(2).all(|w| w[0] > w[1]), "strictly decreasing order");
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!("3,x".parse::<Partition>().is_err());
        assert_eq!("[2,1,1]".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn multiplicities_sum_to_weight() {
        for mu in partitions_in_range(0, 10) {
            let s: usize = mu.multiplicities().iter().map(|&(i, m)| i * m).sum();
            assert_eq!(s, mu.weight());
            assert_eq!(mu.multiplicity(1), mu.parts().iter().filter(|&&x| x == 1).count());
        }
    }

    #[test]
    fn z_values() {
        assert_eq!(z_of(&p(&[1, 1, 1])), BigInt::from(6));
        assert_eq!(z_of(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(z_of(&p(&[3, 3, 1])), BigInt::from(18));
        assert_eq!(z_of(&Partition::empty()), BigInt::one());
    }

    #[test]
    fn lassalle_values() {
        let mu = p(&[2, 1]);
        assert_eq!(lassalle_binom(&mu, 2), BigInt::from(2));
        assert_eq!(lassalle_binom(&mu, 3), BigInt::from(1));
        assert_eq!(lassalle_binom(&mu, 1), BigInt::zero());
        for n in 1..=7 {
            for k in 1..=n {
                assert_eq!(
                    lassalle_binom(&p(&[n]), k),
                    binom_int(n as i64, k as i64).to_integer()
                );
            }
        }
        assert_eq!(lassalle_binom(&Partition::empty(), 0), BigInt::one());
        assert_eq!(lassalle_binom(&Partition::empty(), 1), BigInt::zero());
        assert_eq!(lassalle_binom(&p(&[1]), 0), BigInt::zero());
    }

    #[test]
    fn lassalle_beyond_composition_limit() {
        // <(7,7) / 13> = 2 * C(7,6) * C(7,7) = 14
        assert_eq!(lassalle_binom(&p(&[7, 7]), 13), BigInt::from(14));
        assert_eq!(lassalle_binom(&p(&[7, 7]), 14), BigInt::one());
    }

    /// Brute force over all cell subsets, independent of both formulas.
    fn lassalle_by_subsets(mu: &Partition, k: usize) -> u64 {
        let cells: Vec<usize> = mu
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| std::iter::repeat_n(row, len))
            .collect();
        let mut count = 0;
        for mask in 0u32..(1 << cells.len()) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut hit = vec![false; mu.len()];
            for (c, &row) in cells.iter().enumerate() {
                if mask & (1 << c) != 0 {
                    hit[row] = true;
                }
            }
            if hit.iter().all(|&h| h) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn dual_algorithms_agree_with_subset_count() {
        for mu in partitions_in_range(0, 10) {
            let gf = lassalle_binom_genfun(&mu, mu.weight());
            for (k, c) in gf.iter().enumerate() {
                let by_comp = lassalle_binom_by_compositions(&mu, k);
                assert_eq!(&by_comp, c, "mu={mu} k={k}");
                if mu.weight() <= 8 {
                    assert_eq!(by_comp, BigInt::from(lassalle_by_subsets(&mu, k)));
                }
            }
        }
    }

    #[test]
    fn genfun_examples() {
        let to_i = |v: Vec<BigInt>| v.into_iter().map(|b| b.try_into().unwrap()).collect::<Vec<i64>>();
        assert_eq!(to_i(lassalle_binom_genfun(&p(&[2, 1]), 3)), vec![0, 0, 2, 1]);
        assert_eq!(to_i(lassalle_binom_genfun(&p(&[1, 1]), 2)), vec![0, 0, 1]);
        assert_eq!(to_i(lassalle_binom_genfun(&Partition::empty(), 0)), vec![1]);
    }

    #[test]
    fn row_sums_and_extremes() {
        for mu in partitions_in_range(1, 10) {
            let total: BigInt = (0..=mu.weight()).map(|k| lassalle_binom(&mu, k)).sum();
            let expected: BigInt = mu
                .parts()
                .iter()
                .map(|&i| BigInt::from(2).pow(i as u32) - 1)
                .product();
            assert_eq!(total, expected);
            assert_eq!(lassalle_binom(&mu, mu.weight()), BigInt::one());
            let prod: BigInt = mu.parts().iter().map(|&i| BigInt::from(i)).product();
            assert_eq!(lassalle_binom(&mu, mu.len()), prod);
        }
    }

    fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn signed_specialization() {
        // prod_i ((1-q)^i - 1)^{m_i} = sum_r (-1)^r <mu/r> q^r, and with the
        // factors negated, prod_i (1 - (1-q)^i)^{m_i} = sum_r (-1)^{r-l} <mu/r> q^r
        for mu in partitions_in_range(0, 8) {
            let mut plain = vec![BigInt::one()];
            let mut negated = vec![BigInt::one()];
            for &i in mu.parts() {
                let factor: Vec<BigInt> = (0..=i)
                    .map(|r| {
                        let c = binom_int(i as i64, r as i64).to_integer();
                        let c = if r % 2 == 1 { -c } else { c };
                        if r == 0 { c - 1 } else { c }
                    })
                    .collect();
                let neg: Vec<BigInt> = factor.iter().map(|c| -c).collect();
                plain = poly_mul(&plain, &factor);
                negated = poly_mul(&negated, &neg);
            }
            for r in 0..=mu.weight() {
                let b = lassalle_binom(&mu, r);
                let by_r = if r % 2 == 0 { b.clone() } else { -b.clone() };
                let by_r_l = if (mu.len() + r) % 2 == 0 { b } else { -b };
                assert_eq!(plain[r], by_r, "mu={mu} r={r}");
                assert_eq!(negated[r], by_r_l, "mu={mu} r={r}");
            }
        }
    }

    #[test]
    fn ferrers_values() {
        let one = ferrers_alphabet(&p(&[1]), &frac(5, 3)).unwrap();
        assert_eq!(one.values(), &[rat(0)]);
        let a = ferrers_alphabet(&p(&[2, 1]), &rat(1)).unwrap();
        assert_eq!(a.values(), &[rat(0), rat(1), rat(-1)]);
        let b = ferrers_alphabet(&p(&[2, 2]), &rat(2)).unwrap();
        assert_eq!(b.values(), &[rat(0), rat(1), frac(-1, 2), frac(1, 2)]);
        let c = ferrers_alphabet(&p(&[2, 2]), &rat(1)).unwrap();
        assert_eq!(c.power_sum(0), rat(4));
        assert_eq!(c.power_sum(2), rat(2));
        assert_eq!(ferrers_alphabet(&p(&[1]), &rat(0)), Err(Error::ZeroAlpha));
    }

    #[test]
    fn pochhammer_values() {
        for n in 0..=5 {
            for x in [rat(1), frac(-3, 2), rat(4)] {
                let lam = Partition::row(n);
                assert_eq!(
                    pochhammer_lambda(&x, &lam, &frac(2, 7)).unwrap(),
                    rising_factorial(&x, n)
                );
            }
        }
        let col = pochhammer_lambda(&ZPoly::z(), &p(&[1, 1]), &rat(1)).unwrap();
        assert_eq!(col, ZPoly::from_coeffs(vec![rat(0), rat(-1), rat(1)]));
        let empty = pochhammer_lambda(&ZPoly::z(), &Partition::empty(), &rat(3)).unwrap();
        assert_eq!(empty, ZPoly::one());
        assert!(pochhammer_lambda(&rat(1), &p(&[1]), &rat(0)).is_err());
    }
}
