use std::fmt;

use super::{MultiPoly, Rational, ZPoly};
use crate::error::{Error, Result};

/// Power series in `t` and `u` with [`MultiPoly`] coefficients, truncated at
/// inclusive orders: the `t^a u^b` coefficient is stored iff
/// `a <= t_order` and `b <= u_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    nvars: usize,
    t_order: usize,
    u_order: usize,
    coeffs: Vec<MultiPoly>,
}

impl BiSeries {
    pub fn zero(nvars: usize, t_order: usize, u_order: usize) -> Self {
        BiSeries {
            nvars,
            t_order,
            u_order,
            coeffs: vec![MultiPoly::zero(nvars); (t_order + 1) * (u_order + 1)],
        }
    }

    pub fn one(nvars: usize, t_order: usize, u_order: usize) -> Self {
        Self::constant(MultiPoly::one(nvars), t_order, u_order)
    }

    pub fn constant(c: MultiPoly, t_order: usize, u_order: usize) -> Self {
        Self::monomial(c, 0, 0, t_order, u_order)
    }

    /// `c t^t_deg u^u_deg`, silently zero when the degree is past the order.
    pub fn monomial(c: MultiPoly, t_deg: usize, u_deg: usize, t_order: usize, u_order: usize) -> Self {
        let mut s = Self::zero(c.nvars(), t_order, u_order);
        if t_deg <= t_order && u_deg <= u_order {
            s.coeffs[t_deg * (u_order + 1) + u_deg] = c;
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn t_order(&self) -> usize {
        self.t_order
    }

    pub fn u_order(&self) -> usize {
        self.u_order
    }

    fn idx(&self, t: usize, u: usize) -> usize {
        t * (self.u_order + 1) + u
    }

    /// Coefficient of `t^t u^u`; panics outside the truncation window.
    pub fn coeff(&self, t: usize, u: usize) -> &MultiPoly {
        assert!(t <= self.t_order && u <= self.u_order, "coefficient outside truncation");
        &self.coeffs[self.idx(t, u)]
    }

    pub fn add_to_coeff(&mut self, t: usize, u: usize, c: &MultiPoly) {
        if t <= self.t_order && u <= self.u_order {
            let i = self.idx(t, u);
            self.coeffs[i].add_assign_ref(c);
        }
    }

    pub fn set_coeff(&mut self, t: usize, u: usize, c: MultiPoly) {
        assert_eq!(c.nvars(), self.nvars);
        assert!(t <= self.t_order && u <= self.u_order, "coefficient outside truncation");
        let i = self.idx(t, u);
        self.coeffs[i] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Nonzero coefficients in `(t, u)` lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &MultiPoly)> {
        let w = self.u_order + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i / w, i % w, c))
    }

    fn check_compatible(&self, other: &BiSeries) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        if self.t_order != other.t_order || self.u_order != other.u_order {
            return Err(Error::OrderMismatch(
                self.t_order,
                self.u_order,
                other.t_order,
                other.u_order,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BiSeries) -> Result<BiSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiSeries {
        self.map_coeffs(|c| -c)
    }

    /// Cauchy product, truncated at the common orders.
    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_compatible(other)?;
        let mut out = BiSeries::zero(self.nvars, self.t_order, self.u_order);
        for (ta, ua, ca) in self.iter() {
            for (tb, ub, cb) in other.iter() {
                let (t, u) = (ta + tb, ua + ub);
                if t <= self.t_order && u <= self.u_order {
                    let i = out.idx(t, u);
                    out.coeffs[i].add_assign_ref(&(ca * cb));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> BiSeries {
        let mut acc = BiSeries::one(self.nvars, self.t_order, self.u_order);
        for _ in 0..e {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    pub fn scale(&self, c: &ZPoly) -> BiSeries {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn scale_rational(&self, c: &Rational) -> BiSeries {
        self.map_coeffs(|p| p.scale_rational(c))
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> BiSeries {
        self.map_coeffs(|p| p * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> BiSeries {
        let coeffs: Vec<MultiPoly> = self.coeffs.iter().map(f).collect();
        let nvars = coeffs.first().map_or(self.nvars, MultiPoly::nvars);
        BiSeries {
            nvars,
            t_order: self.t_order,
            u_order: self.u_order,
            coeffs,
        }
    }

    /// Inverse of a series whose constant term is exactly 1.
    pub fn geom_inverse(&self) -> Result<BiSeries> {
        if !self.coeff(0, 0).is_one() {
            return Err(Error::NonUnitConstant);
        }
        let mut inv = BiSeries::zero(self.nvars, self.t_order, self.u_order);
        inv.coeffs[0] = MultiPoly::one(self.nvars);
        for t in 0..=self.t_order {
            for u in 0..=self.u_order {
                if t == 0 && u == 0 {
                    continue;
                }
                let mut acc = MultiPoly::zero(self.nvars);
                for (ta, ua, ca) in self.iter() {
                    if (ta, ua) == (0, 0) || ta > t || ua > u {
                        continue;
                    }
                    let prev = inv.coeff(t - ta, u - ua);
                    if !prev.is_zero() {
                        acc.add_assign_ref(&(ca * prev));
                    }
                }
                let i = inv.idx(t, u);
                inv.coeffs[i] = -&acc;
            }
        }
        Ok(inv)
    }

    /// Restricts to smaller orders. Never extends.
    pub fn truncate(&self, t_order: usize, u_order: usize) -> BiSeries {
        let t_order = t_order.min(self.t_order);
        let u_order = u_order.min(self.u_order);
        let mut out = BiSeries::zero(self.nvars, t_order, u_order);
        for (t, u, c) in self.iter() {
            if t <= t_order && u <= u_order {
                out.set_coeff(t, u, c.clone());
            }
        }
        out
    }

    /// Divides by `t`. The `t^0` row must vanish; the result has `t_order - 1`.
    pub fn div_t(&self) -> Result<BiSeries> {
        for u in 0..=self.u_order {
            let c = self.coeff(0, u);
            if !c.is_zero() {
                return Err(Error::NegativeTPower(c.to_string()));
            }
        }
        let t_order = self
            .t_order
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidParameters("cannot divide an order-0 series by t".into()))?;
        let mut out = BiSeries::zero(self.nvars, t_order, self.u_order);
        for (t, u, c) in self.iter() {
            out.set_coeff(t - 1, u, c.clone());
        }
        Ok(out)
    }

    /// Largest total degree in the `x` variables over all coefficients.
    pub fn max_poly_degree(&self) -> u32 {
        self.coeffs
            .iter()
            .filter_map(MultiPoly::total_degree)
            .max()
            .unwrap_or(0)
    }
}

pub fn series_mul(a: &BiSeries, b: &BiSeries) -> Result<BiSeries> {
    a.mul(b)
}

/// Two-sided inverse of a series with constant term 1, up to truncation.
pub fn series_geom_inverse(a: &BiSeries) -> Result<BiSeries> {
    a.geom_inverse()
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (t, u, c) in self.iter() {
            any = true;
            writeln!(f, "t^{t} u^{u}: {c}")?;
        }
        if !any {
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn x1(nvars: usize) -> MultiPoly {
        MultiPoly::var(nvars, 0, 1)
    }

    fn t_times(c: MultiPoly, t_order: usize) -> BiSeries {
        BiSeries::monomial(c, 1, 0, t_order, 0)
    }

    #[test]
    fn unit_is_neutral() {
        let mut b = BiSeries::zero(1, 3, 2);
        b.set_coeff(1, 0, x1(1));
        b.set_coeff(2, 1, MultiPoly::var(1, 0, 3));
        assert_eq!(BiSeries::one(1, 3, 2).mul(&b).unwrap(), b);
        assert_eq!(b.mul(&BiSeries::one(1, 3, 2)).unwrap(), b);
    }

    #[test]
    fn difference_of_squares() {
        let one = BiSeries::one(1, 2, 0);
        let tx = t_times(x1(1), 2);
        let a = one.add(&tx).unwrap();
        let b = one.sub(&tx).unwrap();
        let prod = a.mul(&b).unwrap();
        let expected = one
            .sub(&BiSeries::monomial(MultiPoly::var(1, 0, 2), 2, 0, 2, 0))
            .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn telescoping_geometric_sum() {
        let mut geo = BiSeries::zero(1, 4, 0);
        for m in 0..=4 {
            geo.set_coeff(m, 0, MultiPoly::var(1, 0, m as u32));
        }
        let one = BiSeries::one(1, 4, 0);
        let factor = one.sub(&t_times(x1(1), 4)).unwrap();
        assert_eq!(geo.mul(&factor).unwrap(), one);
        assert_eq!(factor.geom_inverse().unwrap(), geo);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = BiSeries::one(1, 2, 0);
        assert!(matches!(a.mul(&BiSeries::one(2, 2, 0)), Err(Error::VariableMismatch(1, 2))));
        assert!(matches!(a.mul(&BiSeries::one(1, 3, 0)), Err(Error::OrderMismatch(..))));
        let two = a.scale_rational(&rat(2));
        assert_eq!(two.geom_inverse(), Err(Error::NonUnitConstant));
    }

    #[test]
    fn div_t_rejects_constant_row() {
        let a = BiSeries::one(1, 2, 1);
        assert!(matches!(a.div_t(), Err(Error::NegativeTPower(_))));
        let b = t_times(x1(1), 2).div_t().unwrap();
        assert_eq!(b, BiSeries::constant(x1(1), 1, 0));
    }
}
