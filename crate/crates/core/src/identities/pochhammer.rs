//! Ratios of generalized rising factorials over a Ferrers alphabet, the
//! binomial sums that specialize `x_i = p_i(Y)`, and their generating
//! function.

use num::{BigInt, One, Signed, Zero};

use crate::arith::{binom_int, binom_z, factorial, rising_factorial, sign, BiSeries, MultiPoly, Rational, ZPoly};
use crate::error::{Error, Result};
use crate::partitions::{ferrers_alphabet, lassalle_binom, partitions_of, Partition};
use crate::symfunc::{inverse_z, power_poly, Basis, Oracle, SymExpr};

/// Both sides of the expansion of `(y-x)_lambda / (y)_lambda` as series in
/// `w = 1/y` (the `t` slot) with polynomial dependence on `x` (the `u` slot,
/// up to `|lambda|`). Coefficients are rational constants.
///
/// The left side is `prod_c (1 - x w / (1 + c w))` over the cell values `c`;
/// the right side truncates the sum over `j` at `i + j <= w_order`.
pub fn thm5_sides(lambda: &Partition, alpha: &Rational, w_order: usize) -> Result<(BiSeries, BiSeries)> {
    let cells = ferrers_alphabet(lambda, alpha)?;
    let size = lambda.weight();
    let constant = |c: Rational| MultiPoly::rational(0, c);

    let mut left = BiSeries::one(0, w_order, size);
    for c in cells.values() {
        // 1 - x w sum_m (-c w)^m
        let mut factor = BiSeries::one(0, w_order, size);
        let mut power = Rational::one();
        for m in 0..w_order {
            factor.set_coeff(m + 1, 1, constant(-power.clone()));
            power *= -c;
        }
        left = left.mul(&factor)?;
    }

    let mut right = BiSeries::zero(0, w_order, size);
    for i in 0..=size.min(w_order) {
        for j in 0..=(w_order - i) {
            let mut inner = Rational::zero();
            for k in 0..=i.min(j) {
                let b = binom_int(size as i64 - j as i64, (i - k) as i64);
                if b.is_zero() {
                    continue;
                }
                let mut sum = Rational::zero();
                for mu in partitions_of(j) {
                    let g = lassalle_binom(&mu, k);
                    if g.is_zero() {
                        continue;
                    }
                    sum += inverse_z(&mu) * Rational::from_integer(g) * cells.power_sum_partition(&mu);
                }
                inner += b * sum;
            }
            right.set_coeff(i + j, i, constant(sign((i + j) as i64) * inner));
        }
    }
    Ok((left, right))
}

/// `prod_c (y - x + c) / (y + c)` over the cell values.
pub fn thm5_closed_form(lambda: &Partition, alpha: &Rational, x: &Rational, y: &Rational) -> Result<Rational> {
    let cells = ferrers_alphabet(lambda, alpha)?;
    let mut acc = Rational::one();
    for c in cells.values() {
        let den = y + c;
        if den.is_zero() {
            return Err(Error::InvalidParameters(format!("(y)_lambda vanishes at y = {y}")));
        }
        acc *= (y - x + c) / den;
    }
    Ok(acc)
}

/// A truncated left side evaluated at a point, the exact value there, and a
/// rigorous bound on the truncation error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotCheck {
    pub truncated: Rational,
    pub exact: Rational,
    pub bound: Rational,
}

impl SpotCheck {
    pub fn within_bound(&self) -> bool {
        (&self.truncated - &self.exact).abs() <= self.bound
    }
}

/// Evaluates the left side of [`thm5_sides`] at `(x, w = 1/y)`. The tail is
/// bounded by the tail of the majorant `prod_c (1 + |x| w / (1 - |c| w))`,
/// which needs `max |c| < |y|`.
pub fn thm5_spot_check(
    lambda: &Partition,
    alpha: &Rational,
    x: &Rational,
    y: &Rational,
    w_order: usize,
) -> Result<SpotCheck> {
    let cells = ferrers_alphabet(lambda, alpha)?;
    let w = Rational::one() / y;
    let wa = w.abs();
    let xa = x.abs();
    if cells.values().iter().any(|c| c.abs() * &wa >= Rational::one()) {
        return Err(Error::InvalidParameters(format!(
            "series in 1/y does not converge at y = {y}"
        )));
    }
    let (left, _) = thm5_sides(lambda, alpha, w_order)?;
    let mut truncated = Rational::zero();
    for (d, e, c) in left.iter() {
        let c = c.constant_term().coeff(0);
        truncated += c * num::pow(x.clone(), e) * num::pow(w.clone(), d);
    }

    // majorant coefficients as a univariate series in w at |x|
    let mut major = vec![Rational::zero(); w_order + 1];
    major[0] = Rational::one();
    let mut major_exact = Rational::one();
    for c in cells.values() {
        let ca = c.abs();
        let mut factor = vec![Rational::zero(); w_order + 1];
        factor[0] = Rational::one();
        for m in 0..w_order {
            factor[m + 1] = &xa * num::pow(ca.clone(), m);
        }
        let mut next = vec![Rational::zero(); w_order + 1];
        for (a, ca_) in major.iter().enumerate() {
            for (b, cb) in factor.iter().enumerate().take(w_order + 1 - a) {
                next[a + b] += ca_ * cb;
            }
        }
        major = next;
        major_exact *= Rational::one() + &xa * &wa / (Rational::one() - &ca * &wa);
    }
    let major_truncated = major
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (d, c)| acc + c * num::pow(wa.clone(), d));

    Ok(SpotCheck {
        truncated,
        exact: thm5_closed_form(lambda, alpha, x, y)?,
        bound: major_exact - major_truncated,
    })
}

/// `z + sum_{k=1}^{u_order} u^k (i)_k / k! p_k(Y)` in `nvars` Y-variables.
fn thm6_factor(i: usize, nvars: usize, u_order: usize) -> BiSeries {
    let mut f = BiSeries::constant(MultiPoly::constant(nvars, ZPoly::z()), 0, u_order);
    for k in 1..=u_order {
        let c = rising_factorial(&Rational::from_integer(BigInt::from(i)), k)
            / Rational::from_integer(factorial(k));
        f.set_coeff(0, k, power_poly(k, nvars).scale_rational(&c));
    }
    f
}

/// Left side for any `n, r >= 0`; the `(0, 0)` instance is 1 and every other
/// instance with `n = 0` or `r = 0` vanishes.
pub(crate) fn thm6_left(n: usize, r: usize, nvars: usize, u_order: usize) -> BiSeries {
    let mut out = BiSeries::zero(nvars, 0, u_order);
    let factors: Vec<BiSeries> = (0..=n).map(|i| thm6_factor(i, nvars, u_order)).collect();
    for mu in partitions_of(n) {
        let g = lassalle_binom(&mu, r);
        if g.is_zero() {
            continue;
        }
        let c = sign(r as i64 - mu.len() as i64) * inverse_z(&mu) * Rational::from_integer(g);
        let mut prod = BiSeries::one(nvars, 0, u_order);
        for &part in mu.parts() {
            prod = prod.mul(&factors[part]).expect("same shape");
        }
        out = out.add(&prod.scale_rational(&c)).expect("same shape");
    }
    out
}

/// Both sides of the binomial identity with `x_i = p_i(Y)`, as series in `u`
/// with coefficients in `Q[z][y_1..y_M]`.
pub fn thm6_sides(n: usize, r: usize, nvars: usize, u_order: usize) -> Result<(BiSeries, BiSeries)> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameters("n and r must be positive".into()));
    }
    let left = thm6_left(n, r, nvars, u_order);

    let mut oracle = Oracle::new(nvars);
    let mut right = BiSeries::zero(nvars, 0, u_order);
    for j in 0..=u_order {
        let outer = binom_int((n + j) as i64 - 1, n as i64 - r as i64);
        if outer.is_zero() {
            continue;
        }
        let mut expr = SymExpr::zero(Basis::Power);
        for k in 0..=r.min(j) {
            let zc = binom_z(-(j as i64), (r - k) as i64);
            for mu in partitions_of(j) {
                let g = lassalle_binom(&mu, k);
                if g.is_zero() {
                    continue;
                }
                let c = &outer * inverse_z(&mu) * Rational::from_integer(g);
                expr.add_term(mu, zc.scale(&c));
            }
        }
        right.set_coeff(0, j, oracle.specialize(&expr));
    }
    Ok((left, right))
}

/// Both sides of the generating-function factorization, as series in `t`
/// (the `t` slot) and `q` (the `u` slot) with coefficients in
/// `Q[z][u, y_1..y_M]`, `u` being polynomial variable 0 and truncated at
/// `u_order`.
///
/// The left side is `sum_{n <= n_max, r <= r_max} t^n q^r L(n, r)`, where
/// `L` is the left side of [`thm6_sides`] and `L(0, 0) = 1`. The right side
/// is `(1+Tq)^z prod_j (1 + Tq/(1+Tq) * T u z_j / (1 - T u z_j))` with
/// `T = t/(1-t)` and `z_j = y_j / t`; the division by `t` is carried out
/// explicitly and fails if any `t^{-1}` term survives.
pub fn appendix_factorization_sides(
    n_max: usize,
    r_max: usize,
    nvars: usize,
    u_order: usize,
) -> Result<(BiSeries, BiSeries)> {
    let pvars = nvars + 1;
    let cap_u = |s: &BiSeries| s.map_coeffs(|c| c.truncate_var(0, u_order as u32));

    let mut left = BiSeries::zero(pvars, n_max, r_max);
    for n in 0..=n_max {
        for r in 0..=r_max {
            let l = thm6_left(n, r, nvars, u_order);
            let mut poly = MultiPoly::zero(pvars);
            for (_, k, c) in l.iter() {
                poly.add_assign_ref(&c.prepend_var(k as u32));
            }
            left.set_coeff(n, r, poly);
        }
    }

    let one = BiSeries::one(pvars, n_max, r_max);
    let t_series = |order: usize| {
        let mut s = BiSeries::zero(pvars, order, r_max);
        for m in 1..=order {
            s.set_coeff(m, 0, MultiPoly::one(pvars));
        }
        s
    };
    let q = BiSeries::monomial(MultiPoly::one(pvars), 0, 1, n_max, r_max);
    let tq = t_series(n_max).mul(&q)?;
    let one_tq = one.add(&tq)?;

    // (1+Tq)^z = sum_k binom(z, k) (Tq)^k
    let mut closed = BiSeries::zero(pvars, n_max, r_max);
    let mut tq_pow = one.clone();
    for k in 0..=r_max {
        closed = closed.add(&tq_pow.scale(&binom_z(0, k as i64)))?;
        tq_pow = tq_pow.mul(&tq)?;
    }

    let ratio = tq.mul(&one_tq.geom_inverse()?)?;
    for j in 0..nvars {
        // T u y_j computed one order higher, then divided by t
        let uy = &MultiPoly::var(pvars, 0, 1) * &MultiPoly::var(pvars, j + 1, 1);
        let w = t_series(n_max + 1).scale_poly(&uy).div_t()?;
        let mut geom = BiSeries::zero(pvars, n_max, r_max);
        let mut w_pow = one.clone();
        for _ in 1..=u_order {
            w_pow = cap_u(&w_pow.mul(&w)?);
            geom = geom.add(&w_pow)?;
        }
        let factor = one.add(&cap_u(&ratio.mul(&geom)?))?;
        closed = cap_u(&closed.mul(&factor)?);
    }
    Ok((left, closed))
}
