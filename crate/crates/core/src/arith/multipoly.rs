use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Rational, ZPoly};

/// Exponent vector of a monomial in `x_1..x_N`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x_1`, then `x_2`, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn var(nvars: usize, index: usize, exponent: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exponent;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Renders with the given variable names, `1` for the empty monomial.
    pub fn format_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial in `nvars` variables with coefficients in `Q[z]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, ZPoly>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, ZPoly::one())
    }

    pub fn constant(nvars: usize, c: ZPoly) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn rational(nvars: usize, c: Rational) -> Self {
        Self::constant(nvars, ZPoly::constant(c))
    }

    /// `x_{index+1}^exponent`
    pub fn var(nvars: usize, index: usize, exponent: u32) -> Self {
        Self::term(Monomial::var(nvars, index, exponent), ZPoly::one())
    }

    pub fn term(monomial: Monomial, c: ZPoly) -> Self {
        let nvars = monomial.0.len();
        let mut p = Self::zero(nvars);
        p.add_term(monomial, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ZPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ZPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> ZPoly {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn add_term(&mut self, monomial: Monomial, c: ZPoly) {
        assert_eq!(monomial.0.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &MultiPoly) {
        self.check_vars(other);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &ZPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> MultiPoly {
        self.scale(&ZPoly::constant(c.clone()))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        (0..e).fold(MultiPoly::one(self.nvars), |acc, _| &acc * self)
    }

    /// Drops every term whose exponent in variable `index` exceeds `max`.
    pub fn truncate_var(&self, index: usize, max: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[index] <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Embeds into `nvars + 1` variables, the new variable placed first
    /// with the given exponent on every term.
    pub fn prepend_var(&self, exponent: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = Vec::with_capacity(self.nvars + 1);
                    e.push(exponent);
                    e.extend_from_slice(&m.0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Descending graded-lex order, e.g. `x1^2 + x1*x2 + (z - 1)*x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if !c.is_compound() => (true, rest.to_string()),
                _ => (false, text),
            };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_unit = body == "1";
            if m.degree() == 0 {
                if c.is_compound() {
                    write!(f, "({body})")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if is_unit {
                write!(f, "{m}")?;
            } else if c.is_compound() {
                write!(f, "({body})*{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(2, i, 1)
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1, 1]);
        let c = Monomial::new(vec![3, 0]);
        assert!(a < b && b < c);
        assert!(Monomial::new(vec![1, 0]) > Monomial::new(vec![0, 1]));
    }

    #[test]
    fn square_of_sum() {
        let s = &x(0) + &x(1);
        let sq = &s * &s;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&Monomial::new(vec![1, 1])), ZPoly::constant(rat(2)));
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn cancellation_removes_terms() {
        let s = &x(0) + &x(1);
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn display_with_z_coefficients() {
        let mut p = MultiPoly::zero(2);
        p.add_term(Monomial::new(vec![0, 1]), ZPoly::linear(rat(-1), rat(1)));
        p.add_term(Monomial::new(vec![1, 0]), ZPoly::constant(frac(-1, 2)));
        p.add_term(Monomial::one(2), ZPoly::constant(rat(3)));
        assert_eq!(p.to_string(), "-1/2*x1 + (z - 1)*x2 + 3");
    }

    #[test]
    fn prepend_and_truncate() {
        let p = &x(0) + &x(1);
        let q = p.prepend_var(2);
        assert_eq!(q.nvars(), 3);
        assert_eq!(q.truncate_var(0, 1), MultiPoly::zero(3));
        assert_eq!(q.truncate_var(0, 2), q);
    }
}
