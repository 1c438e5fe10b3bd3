//! Symmetric functions in the `m`, `e`, `h`, `p` bases and their
//! specialization to `N` concrete variables.
//!
//! Identities are checked by reducing both sides to [`MultiPoly`] in
//! `x_1..x_N`. An identity of degree `d` is faithful once `N >= d`; [`expand`]
//! enforces that, [`Oracle::specialize`] does not.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num::{BigInt, One};

use crate::arith::{binom_int, factorial, sign, BiSeries, Monomial, MultiPoly, Rational, ZPoly};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, z_of, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Monomial,
    Elementary,
    Complete,
    Power,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::Monomial => 'm',
            Basis::Elementary => 'e',
            Basis::Complete => 'h',
            Basis::Power => 'p',
        }
    }

    pub fn from_letter(c: char) -> Option<Basis> {
        match c {
            'm' => Some(Basis::Monomial),
            'e' => Some(Basis::Elementary),
            'h' => Some(Basis::Complete),
            'p' => Some(Basis::Power),
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Basis::from_letter(c).ok_or(Error::UnsupportedBasis(c)),
            _ => Err(Error::InvalidParameters(format!("unknown basis `{s}`"))),
        }
    }
}

/// Linear combination of basis elements `b_mu` with `Q[z]` coefficients.
/// `b_{[]}` is the constant 1 in every basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymExpr {
    basis: Basis,
    terms: BTreeMap<Partition, ZPoly>,
}

impl SymExpr {
    pub fn zero(basis: Basis) -> Self {
        SymExpr {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
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

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &ZPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Partition) -> ZPoly {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mu: Partition, c: ZPoly) {
        if c.is_zero() {
            return;
        }
        let sum = &self.coeff(&mu) + &c;
        if sum.is_zero() {
            self.terms.remove(&mu);
        } else {
            self.terms.insert(mu, sum);
        }
    }

    pub fn add_rational(&mut self, mu: Partition, c: Rational) {
        self.add_term(mu, ZPoly::constant(c));
    }

    /// Largest `|mu|` carrying a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Partition::weight).max().unwrap_or(0)
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (mu, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}{}", self.basis, mu)?;
            } else {
                write!(f, "({c})*{}{}", self.basis, mu)?;
            }
        }
        Ok(())
    }
}

/// A power series in `t` whose coefficients are symmetric-function
/// expressions, `slices[d]` being the `t^d` coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymSeries {
    pub slices: Vec<SymExpr>,
}

impl SymSeries {
    pub fn t_order(&self) -> usize {
        self.slices.len().saturating_sub(1)
    }

    pub fn slice(&self, d: usize) -> &SymExpr {
        &self.slices[d]
    }

    /// Specializes every slice to `nvars` variables; `u`-free result.
    pub fn specialize(&self, nvars: usize) -> BiSeries {
        let mut oracle = Oracle::new(nvars);
        let mut out = BiSeries::zero(nvars, self.t_order(), 0);
        for (d, expr) in self.slices.iter().enumerate() {
            out.set_coeff(d, 0, oracle.specialize(expr));
        }
        out
    }
}

pub fn power_poly(n: usize, nvars: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    for r in 0..nvars {
        out.add_term(Monomial::var(nvars, r, n as u32), ZPoly::one());
    }
    out
}

/// `e_n(x_1..x_N)`, zero once `n > N`.
pub fn elementary_poly(n: usize, nvars: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    for subset in (0..nvars).combinations(n) {
        let mut e = vec![0; nvars];
        for r in subset {
            e[r] = 1;
        }
        out.add_term(Monomial::new(e), ZPoly::one());
    }
    out
}

pub fn complete_poly(n: usize, nvars: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    if nvars == 0 {
        return if n == 0 { MultiPoly::one(0) } else { out };
    }
    for multiset in (0..nvars).combinations_with_replacement(n) {
        let mut e = vec![0; nvars];
        for r in multiset {
            e[r] += 1;
        }
        out.add_term(Monomial::new(e), ZPoly::one());
    }
    out
}

/// Distinct rearrangements of the parts of `mu` padded with zeros to length
/// `nvars`; empty when `l(mu) > nvars`.
pub(crate) fn exponent_orbit(mu: &Partition, nvars: usize) -> Vec<Vec<u32>> {
    if mu.len() > nvars {
        return Vec::new();
    }
    let mut v: Vec<u32> = mu.parts().iter().map(|&p| p as u32).collect();
    v.resize(nvars, 0);
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // lexicographic next-permutation over a multiset
    while let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

pub fn monomial_poly(mu: &Partition, nvars: usize) -> Result<MultiPoly> {
    if mu.len() > nvars {
        return Err(Error::InsufficientVariables {
            needed: mu.len(),
            got: nvars,
        });
    }
    let mut out = MultiPoly::zero(nvars);
    for e in exponent_orbit(mu, nvars) {
        out.add_term(Monomial::new(e), ZPoly::one());
    }
    Ok(out)
}

/// Specializes symmetric functions to `x_1..x_N`, caching basis elements.
#[derive(Debug, Clone)]
pub struct Oracle {
    nvars: usize,
    cache: HashMap<(Basis, Partition), MultiPoly>,
}

impl Oracle {
    pub fn new(nvars: usize) -> Self {
        Oracle {
            nvars,
            cache: HashMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn single(&self, basis: Basis, n: usize) -> MultiPoly {
        match basis {
            Basis::Power => power_poly(n, self.nvars),
            Basis::Elementary => elementary_poly(n, self.nvars),
            Basis::Complete => complete_poly(n, self.nvars),
            Basis::Monomial => unreachable!("monomials are not multiplicative"),
        }
    }

    /// `b_mu(x_1..x_N)`; `m_mu` with more parts than variables is 0.
    pub fn basis_element(&mut self, basis: Basis, mu: &Partition) -> MultiPoly {
        let key = (basis, mu.clone());
        if let Some(p) = self.cache.get(&key) {
            return p.clone();
        }
        let poly = match basis {
            Basis::Monomial => {
                monomial_poly(mu, self.nvars).unwrap_or_else(|_| MultiPoly::zero(self.nvars))
            }
            _ => match mu.parts().split_last() {
                None => MultiPoly::one(self.nvars),
                Some((&last, rest)) => {
                    let head = Partition::new(rest.to_vec()).expect("prefix of a partition");
                    let head = self.basis_element(basis, &head);
                    &head * &self.single(basis, last)
                }
            },
        };
        self.cache.insert(key, poly.clone());
        poly
    }

    pub fn specialize(&mut self, expr: &SymExpr) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (mu, c) in expr.terms() {
            let b = self.basis_element(expr.basis(), mu);
            out.add_assign_ref(&b.scale(c));
        }
        out
    }
}

/// Faithful expansion: rejects `N` below the degree of `expr`.
pub fn expand(expr: &SymExpr, nvars: usize) -> Result<MultiPoly> {
    let needed = expr.degree();
    if nvars < needed {
        return Err(Error::InsufficientVariables { needed, got: nvars });
    }
    Ok(Oracle::new(nvars).specialize(expr))
}

/// `n (l-1)! / prod_i m_i!` for `lambda` of weight `n`.
pub fn waring_coefficient(lambda: &Partition) -> Rational {
    let l = lambda.len();
    let num = BigInt::from(lambda.weight()) * factorial(l.saturating_sub(1));
    Rational::new(num, lambda.multiplicity_factorials())
}

pub fn inverse_z(mu: &Partition) -> Rational {
    Rational::new(BigInt::one(), z_of(mu))
}

/// `h_n = sum_{mu |- n} p_mu / z_mu`
pub fn complete_in_power(n: usize) -> SymExpr {
    let mut out = SymExpr::zero(Basis::Power);
    for mu in partitions_of(n) {
        let c = inverse_z(&mu);
        out.add_rational(mu, c);
    }
    out
}

/// `e_n = sum_{mu |- n} (-1)^{n - l(mu)} p_mu / z_mu`
pub fn elementary_in_power(n: usize) -> SymExpr {
    let mut out = SymExpr::zero(Basis::Power);
    for mu in partitions_of(n) {
        let c = sign((n - mu.len()) as i64) * inverse_z(&mu);
        out.add_rational(mu, c);
    }
    out
}

/// Waring's formula: `p_n` in the elementary basis.
pub fn power_in_elementary(n: usize) -> SymExpr {
    let mut out = SymExpr::zero(Basis::Elementary);
    for lambda in partitions_of(n) {
        let c = sign((n - lambda.len()) as i64) * waring_coefficient(&lambda);
        out.add_rational(lambda, c);
    }
    out
}

/// `p_n` in the complete homogeneous basis.
pub fn power_in_homogeneous(n: usize) -> SymExpr {
    let mut out = SymExpr::zero(Basis::Complete);
    for lambda in partitions_of(n) {
        let c = sign(lambda.len() as i64 - 1) * waring_coefficient(&lambda);
        out.add_rational(lambda, c);
    }
    out
}

/// The letters `x_r / (1 - t x_r) = sum_{m>=1} t^{m-1} x_r^m`, truncated.
pub fn transformed_letters(nvars: usize, t_order: usize) -> Vec<BiSeries> {
    (0..nvars)
        .map(|r| {
            let mut s = BiSeries::zero(nvars, t_order, 0);
            for d in 0..=t_order {
                s.set_coeff(d, 0, MultiPoly::var(nvars, r, d as u32 + 1));
            }
            s
        })
        .collect()
}

/// `b_k` evaluated on the letters `x_r / (1 - t x_r)`, straight from the
/// definition of the basis function: power sum, sum over `k`-multisets,
/// sum over `k`-subsets of letters. `m` takes a partition, see
/// [`transformed_monomial_series`].
pub fn transformed_basis_series(basis: Basis, k: usize, nvars: usize, t_order: usize) -> Result<BiSeries> {
    let letters = transformed_letters(nvars, t_order);
    let one = BiSeries::one(nvars, t_order, 0);
    match basis {
        Basis::Power => {
            let mut out = BiSeries::zero(nvars, t_order, 0);
            for l in &letters {
                out = out.add(&l.pow(k as u32))?;
            }
            Ok(out)
        }
        Basis::Elementary => {
            // table[j] = e_j(letters seen so far); subsets either skip or take the new letter
            let mut table = vec![BiSeries::zero(nvars, t_order, 0); k + 1];
            table[0] = one;
            for l in &letters {
                for j in (1..=k).rev() {
                    table[j] = table[j].add(&table[j - 1].mul(l)?)?;
                }
            }
            Ok(table.swap_remove(k))
        }
        Basis::Complete => {
            // multisets grouped by how often the new letter is taken
            let mut table = vec![BiSeries::zero(nvars, t_order, 0); k + 1];
            table[0] = one;
            for l in &letters {
                let powers: Vec<BiSeries> = (0..=k).map(|a| l.pow(a as u32)).collect();
                let mut next = vec![BiSeries::zero(nvars, t_order, 0); k + 1];
                for (j, slot) in next.iter_mut().enumerate() {
                    for a in 0..=j {
                        *slot = slot.add(&powers[a].mul(&table[j - a])?)?;
                    }
                }
                table = next;
            }
            Ok(table.swap_remove(k))
        }
        Basis::Monomial => Err(Error::UnsupportedBasis('m')),
    }
}

/// `m_mu` on the letters `x_r / (1 - t x_r)`: sum over distinct exponent
/// rearrangements of products of letter powers.
pub fn transformed_monomial_series(mu: &Partition, nvars: usize, t_order: usize) -> Result<BiSeries> {
    let letters = transformed_letters(nvars, t_order);
    let mut out = BiSeries::zero(nvars, t_order, 0);
    for e in exponent_orbit(mu, nvars) {
        let mut term = BiSeries::one(nvars, t_order, 0);
        for (l, &a) in letters.iter().zip(&e) {
            if a > 0 {
                term = term.mul(&l.pow(a))?;
            }
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `sum_{j=k}^{k+t_order} t^{j-k} C(j-1, k-1) p_j(X)`
pub fn shifted_power_series(k: usize, nvars: usize, t_order: usize) -> BiSeries {
    assert!(k >= 1, "k must be positive");
    let mut out = BiSeries::zero(nvars, t_order, 0);
    for j in k..=k + t_order {
        let c = binom_int(j as i64 - 1, k as i64 - 1);
        out.set_coeff(j - k, 0, power_poly(j, nvars).scale_rational(&c));
    }
    out
}
