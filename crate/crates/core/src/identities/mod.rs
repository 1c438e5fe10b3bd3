//! Both sides of every identity, and exact verification reports.
//!
//! Each [`IdentityId`] names one statement. [`verify`] builds both sides for
//! a parameter instance, reduces them to concrete polynomials and compares
//! coefficient by coefficient, reporting the first mismatch in `(t, u)`
//! order and then descending graded-lex order of monomials.

mod generating;
mod pochhammer;
mod transformed;

pub use generating::{cor4_sides, cor5_sides, f_direct, f_expansion, one_plus_u_to_z, FVariant};
pub use pochhammer::{
    appendix_factorization_sides, thm5_closed_form, thm5_sides, thm5_spot_check, thm6_sides,
    SpotCheck,
};
pub use transformed::{thm1_rhs, thm2_rhs};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith::{format_rational, BiSeries, Monomial, MultiPoly, Rational, ZPoly};
use crate::error::{Error, Result};
use crate::partitions::{lassalle_binom_by_compositions, lassalle_binom_genfun, Partition};
use crate::symfunc::{transformed_basis_series, Basis, Oracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Thm1E,
    Thm1H,
    Thm2H,
    Thm2E,
    Thm3M,
    Thm3P1,
    Thm3P2,
    Cor4,
    Cor5,
    Thm5,
    Thm6,
    AppGenfun,
    AppFactorization,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::Thm1E,
        IdentityId::Thm1H,
        IdentityId::Thm2H,
        IdentityId::Thm2E,
        IdentityId::Thm3M,
        IdentityId::Thm3P1,
        IdentityId::Thm3P2,
        IdentityId::Cor4,
        IdentityId::Cor5,
        IdentityId::Thm5,
        IdentityId::Thm6,
        IdentityId::AppGenfun,
        IdentityId::AppFactorization,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Thm1E => "thm1_e",
            IdentityId::Thm1H => "thm1_h",
            IdentityId::Thm2H => "thm2_h",
            IdentityId::Thm2E => "thm2_e",
            IdentityId::Thm3M => "thm3_m",
            IdentityId::Thm3P1 => "thm3_p1",
            IdentityId::Thm3P2 => "thm3_p2",
            IdentityId::Cor4 => "cor4",
            IdentityId::Cor5 => "cor5",
            IdentityId::Thm5 => "thm5",
            IdentityId::Thm6 => "thm6",
            IdentityId::AppGenfun => "app_genfun",
            IdentityId::AppFactorization => "app_factorization",
        }
    }

    /// The statement checked, in one line.
    pub fn statement(self) -> &'static str {
        match self {
            IdentityId::Thm1E => {
                "p_k(X/(1-tX)) = sum_{|mu|>=k} t^{|mu|-k} C(|mu|,k) (-1)^{|mu|-l(mu)} k (l(mu)-1)!/prod m_i(mu)! e_mu(X)"
            }
            IdentityId::Thm1H => {
                "p_k(X/(1-tX)) = sum_{|mu|>=k} t^{|mu|-k} C(|mu|,k) (-1)^{l(mu)-1} k (l(mu)-1)!/prod m_i(mu)! h_mu(X)"
            }
            IdentityId::Thm2H => "h_k(X/(1-tX)) = sum_{|mu|>=k} t^{|mu|-k} <mu/k>/z_mu p_mu(X)",
            IdentityId::Thm2E => {
                "e_k(X/(1-tX)) = sum_{|mu|>=k} t^{|mu|-k} (-1)^{k-l(mu)} <mu/k>/z_mu p_mu(X)"
            }
            IdentityId::Thm3M => {
                "[u^i t^j] F(t,u) = sum_{l(mu)<=i, |mu|=j} C(z-l(mu), i-l(mu)) m_mu(X)"
            }
            IdentityId::Thm3P1 => {
                "[u^i t^j] F(t,u) = sum_{k<=min(i,j)} C(z-j, i-k) sum_{mu|-j} <mu/k>/z_mu p_mu(X)"
            }
            IdentityId::Thm3P2 => {
                "[u^i t^j] F(t,u) = sum_k C(z-k, i-k) sum_{mu|-j} (-1)^{k-l(mu)} <mu/k>/z_mu p_mu(X)"
            }
            IdentityId::Cor4 => {
                "sum_k C(z-j, i-k) <mu/k> = sum_k (-1)^{k-l(mu)} C(z-k, i-k) <mu/k> for mu |- j"
            }
            IdentityId::Cor5 => {
                "sum_{l(mu)=k, |mu|=j} m_mu(X) = sum_{mu|-j} (-1)^{k-l(mu)} <mu/k>/z_mu p_mu(X)"
            }
            IdentityId::Thm5 => {
                "(y-x)_lambda/(y)_lambda = sum_{i,j} (-1)^{i+j} x^i/y^{i+j} sum_k C(|lambda|-j, i-k) sum_{mu|-j} <mu/k>/z_mu p_mu(Z)"
            }
            IdentityId::Thm6 => {
                "sum_{mu|-n} (-1)^{r-l(mu)} <mu/r>/z_mu prod_i (z + sum_k u^k (i)_k/k! p_k(Y))^{m_i(mu)} = sum_j u^j C(n+j-1, n-r) sum_k C(z-j, r-k) sum_{mu|-j} <mu/k>/z_mu p_mu(Y)"
            }
            IdentityId::AppGenfun => "sum_r <mu/r> q^r = prod_i ((1+q)^i - 1)^{m_i(mu)}",
            IdentityId::AppFactorization => {
                "sum_{n,r} t^n q^r [thm6 left side] = (1+Tq)^z prod_j (1 + Tq/(1+Tq) T u z_j/(1 - T u z_j)), T = t/(1-t), z_j = y_j/t"
            }
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown identity `{s}`")))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

fn serialize_alpha<S: Serializer>(alpha: &Option<Rational>, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    match alpha {
        Some(a) => serializer.serialize_str(&format_rational(a)),
        None => serializer.serialize_none(),
    }
}

/// One identity instance. Fields an identity does not use stay `None`;
/// [`verify`] fills defaults so the report echoes what was actually checked.
/// The derived order is the parameter-tuple order used to sort batches.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_alpha")]
    pub alpha: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vars: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_order: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
}

/// First coefficient at which the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub monomial: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub params: Params,
    pub status: Status,
    pub checked_degree: usize,
    pub vars: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
}

impl IdentityReport {
    fn new(identity: IdentityId, params: Params, checked_degree: usize, vars: usize, discrepancy: Option<Discrepancy>) -> Self {
        IdentityReport {
            identity,
            params,
            status: if discrepancy.is_none() {
                Status::Verified
            } else {
                Status::Failed
            },
            checked_degree,
            vars,
            discrepancy,
        }
    }

    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Verified => "verified",
            Status::Failed => "FAILED",
        };
        let params = serde_json::to_string(&self.params).unwrap_or_default();
        writeln!(f, "{}: {status}", self.identity)?;
        writeln!(f, "  statement: {}", self.identity.statement())?;
        writeln!(f, "  params: {params}")?;
        writeln!(f, "  checked degree {} in {} variables", self.checked_degree, self.vars)?;
        if let Some(d) = &self.discrepancy {
            writeln!(f, "  first difference at {}", d.monomial)?;
            writeln!(f, "    expected: {}", d.expected)?;
            writeln!(f, "    actual:   {}", d.actual)?;
        }
        Ok(())
    }
}

/// Names for the slots of a compared series: the two series variables and
/// the polynomial variables.
#[derive(Debug, Clone)]
pub struct SeriesLabels {
    pub t: String,
    pub u: Option<String>,
    pub vars: Vec<String>,
}

impl SeriesLabels {
    pub fn standard(t: &str, u: Option<&str>, var_prefix: &str, nvars: usize) -> Self {
        SeriesLabels {
            t: t.to_string(),
            u: u.map(str::to_string),
            vars: (1..=nvars).map(|i| format!("{var_prefix}{i}")).collect(),
        }
    }
}

/// First differing polynomial coefficient, in descending graded-lex order.
pub fn first_poly_difference(expected: &MultiPoly, actual: &MultiPoly) -> Option<(Monomial, ZPoly, ZPoly)> {
    let monos: BTreeSet<&Monomial> = expected.terms().chain(actual.terms()).map(|(m, _)| m).collect();
    monos.into_iter().rev().find_map(|m| {
        let (a, b) = (expected.coeff(m), actual.coeff(m));
        (a != b).then(|| (m.clone(), a, b))
    })
}

pub fn compare_series(expected: &BiSeries, actual: &BiSeries, labels: &SeriesLabels) -> Result<Option<Discrepancy>> {
    if expected.t_order() != actual.t_order() || expected.u_order() != actual.u_order() {
        return Err(Error::OrderMismatch(
            expected.t_order(),
            expected.u_order(),
            actual.t_order(),
            actual.u_order(),
        ));
    }
    for t in 0..=expected.t_order() {
        for u in 0..=expected.u_order() {
            if let Some((m, a, b)) = first_poly_difference(expected.coeff(t, u), actual.coeff(t, u)) {
                let mut location = format!("{}^{t}", labels.t);
                if let Some(ul) = &labels.u {
                    location.push_str(&format!(" {ul}^{u}"));
                }
                location.push_str(&format!(" {}", m.format_with(&labels.vars)));
                return Ok(Some(Discrepancy {
                    monomial: location,
                    expected: a.to_string(),
                    actual: b.to_string(),
                }));
            }
        }
    }
    Ok(None)
}

pub fn compare_zpoly(expected: &ZPoly, actual: &ZPoly) -> Option<Discrepancy> {
    let top = expected.coeffs().len().max(actual.coeffs().len());
    (0..top).rev().find_map(|d| {
        let (a, b) = (expected.coeff(d), actual.coeff(d));
        (a != b).then(|| Discrepancy {
            monomial: format!("z^{d}"),
            expected: format_rational(&a),
            actual: format_rational(&b),
        })
    })
}

fn require(name: &str, v: Option<usize>) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidParameters(format!("missing --{}", name.replace('_', "-"))))
}

fn require_positive(name: &str, v: Option<usize>) -> Result<usize> {
    match require(name, v)? {
        0 => Err(Error::InvalidParameters(format!("--{name} must be positive"))),
        x => Ok(x),
    }
}

fn require_vars(needed: usize, got: usize) -> Result<()> {
    if got < needed {
        Err(Error::InsufficientVariables { needed, got })
    } else {
        Ok(())
    }
}

pub const DEFAULT_VARS: usize = 6;
pub const DEFAULT_T_ORDER: usize = 4;
pub const DEFAULT_W_ORDER: usize = 6;
pub const DEFAULT_THM6_VARS: usize = 3;
pub const DEFAULT_THM6_U_ORDER: usize = 4;

/// Builds both sides of `id` at `params` and compares them exactly.
pub fn verify(id: IdentityId, params: &Params) -> Result<IdentityReport> {
    let mut p = params.clone();
    match id {
        IdentityId::Thm1E | IdentityId::Thm1H | IdentityId::Thm2H | IdentityId::Thm2E => {
            let k = require_positive("k", p.k)?;
            let nvars = *p.vars.get_or_insert(DEFAULT_VARS);
            let t_order = *p.t_order.get_or_insert(DEFAULT_T_ORDER);
            // the t^0 slice has degree k; higher slices are exact specializations
            require_vars(k, nvars)?;
            let (lhs_basis, rhs) = match id {
                IdentityId::Thm1E => (Basis::Power, thm1_rhs(Basis::Elementary, k, t_order)?),
                IdentityId::Thm1H => (Basis::Power, thm1_rhs(Basis::Complete, k, t_order)?),
                IdentityId::Thm2H => (Basis::Complete, thm2_rhs(Basis::Complete, k, t_order)?),
                _ => (Basis::Elementary, thm2_rhs(Basis::Elementary, k, t_order)?),
            };
            let lhs = transformed_basis_series(lhs_basis, k, nvars, t_order)?;
            let rhs = rhs.specialize(nvars);
            let labels = SeriesLabels::standard("t", None, "x", nvars);
            let d = compare_series(&lhs, &rhs, &labels)?;
            Ok(IdentityReport::new(id, p, k + t_order, nvars, d))
        }
        IdentityId::Thm3M | IdentityId::Thm3P1 | IdentityId::Thm3P2 => {
            let i = require("i", p.i)?;
            let j = require("j", p.j)?;
            let nvars = *p.vars.get_or_insert(DEFAULT_VARS);
            require_vars(j, nvars)?;
            let variant = match id {
                IdentityId::Thm3M => FVariant::Monome,
                IdentityId::Thm3P1 => FVariant::Puissance1,
                _ => FVariant::Puissance2,
            };
            let direct = f_direct(nvars, j, i);
            let d = check_f_coefficient(&direct, variant, i, j)?;
            Ok(IdentityReport::new(id, p, j, nvars, d))
        }
        IdentityId::Cor4 => {
            let i = require_positive("i", p.i)?;
            let mu = p
                .mu
                .clone()
                .ok_or_else(|| Error::InvalidParameters("missing --mu".into()))?;
            let j = *p.j.get_or_insert(mu.weight());
            if j == 0 {
                return Err(Error::InvalidParameters("--j must be positive".into()));
            }
            let (left, right) = cor4_sides(i, j, &mu)?;
            Ok(IdentityReport::new(id, p, j, 0, compare_zpoly(&left, &right)))
        }
        IdentityId::Cor5 => {
            let k = require_positive("k", p.k)?;
            let j = require_positive("j", p.j)?;
            let nvars = *p.vars.get_or_insert(DEFAULT_VARS);
            let (left, right) = cor5_sides(k, j, nvars)?;
            let labels = SeriesLabels::standard("t", None, "x", nvars);
            let d = compare_series(
                &BiSeries::constant(left, 0, 0),
                &BiSeries::constant(right, 0, 0),
                &labels,
            )?;
            Ok(IdentityReport::new(id, p, j, nvars, d))
        }
        IdentityId::Thm5 => {
            let lambda = p
                .lambda
                .clone()
                .ok_or_else(|| Error::InvalidParameters("missing --lambda".into()))?;
            let alpha = p.alpha.get_or_insert_with(|| crate::arith::rat(1)).clone();
            let w_order = *p.w_order.get_or_insert(DEFAULT_W_ORDER);
            let (left, right) = thm5_sides(&lambda, &alpha, w_order)?;
            let labels = SeriesLabels::standard("w", Some("x"), "c", 0);
            let d = compare_series(&left, &right, &labels)?;
            Ok(IdentityReport::new(id, p, w_order, lambda.weight(), d))
        }
        IdentityId::Thm6 => {
            let n = require_positive("n", p.n)?;
            let r = require_positive("r", p.r)?;
            let nvars = *p.vars.get_or_insert(DEFAULT_THM6_VARS);
            let u_order = *p.u_order.get_or_insert(DEFAULT_THM6_U_ORDER);
            let (left, right) = thm6_sides(n, r, nvars, u_order)?;
            let labels = SeriesLabels::standard("t", Some("u"), "y", nvars);
            let d = compare_series(&left, &right, &labels)?;
            Ok(IdentityReport::new(id, p, u_order, nvars, d))
        }
        IdentityId::AppGenfun => {
            let mu = p
                .mu
                .clone()
                .ok_or_else(|| Error::InvalidParameters("missing --mu".into()))?;
            let gf = lassalle_binom_genfun(&mu, mu.weight());
            let d = gf.iter().enumerate().find_map(|(k, c)| {
                let direct = lassalle_binom_by_compositions(&mu, k);
                (direct != *c).then(|| Discrepancy {
                    monomial: format!("q^{k}"),
                    expected: direct.to_string(),
                    actual: c.to_string(),
                })
            });
            Ok(IdentityReport::new(id, p, mu.weight(), 0, d))
        }
        IdentityId::AppFactorization => {
            let n_max = *p.n.get_or_insert(3);
            let r_max = *p.r.get_or_insert(2);
            let nvars = *p.vars.get_or_insert(2);
            let u_order = *p.u_order.get_or_insert(2);
            appendix_factorization_check(n_max, r_max, nvars, u_order).map(|mut rep| {
                rep.params = p;
                rep
            })
        }
    }
}

/// Compares the `u^i t^j` coefficient of a precomputed `F(t,u)` with one of
/// its expansions.
pub fn check_f_coefficient(direct: &BiSeries, variant: FVariant, i: usize, j: usize) -> Result<Option<Discrepancy>> {
    let nvars = direct.nvars();
    let expansion = Oracle::new(nvars).specialize(&f_expansion(variant, i, j));
    let labels = SeriesLabels::standard("t", Some("u"), "x", nvars);
    let mut lhs = BiSeries::zero(nvars, j, i);
    lhs.set_coeff(j, i, direct.coeff(j, i).clone());
    let mut rhs = BiSeries::zero(nvars, j, i);
    rhs.set_coeff(j, i, expansion);
    compare_series(&lhs, &rhs, &labels)
}

/// Verifies the closed-product factorization of the generating function of
/// the binomial sums through `t^{n_max} q^{r_max} u^{u_order}`.
pub fn appendix_factorization_check(n_max: usize, r_max: usize, nvars: usize, u_order: usize) -> Result<IdentityReport> {
    let (left, closed) = appendix_factorization_sides(n_max, r_max, nvars, u_order)?;
    let mut labels = SeriesLabels::standard("t", Some("q"), "y", nvars);
    labels.vars.insert(0, "u".to_string());
    let d = compare_series(&left, &closed, &labels)?;
    let params = Params {
        n: Some(n_max),
        r: Some(r_max),
        vars: Some(nvars),
        u_order: Some(u_order),
        ..Params::default()
    };
    Ok(IdentityReport::new(IdentityId::AppFactorization, params, u_order, nvars, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert!("thm9".parse::<IdentityId>().is_err());
    }

    #[test]
    fn statements_are_distinct() {
        let set: BTreeSet<&str> = IdentityId::ALL.iter().map(|id| id.statement()).collect();
        assert_eq!(set.len(), IdentityId::ALL.len());
    }

    #[test]
    fn reports_first_difference() {
        let a = BiSeries::one(2, 1, 0);
        let mut b = a.clone();
        b.set_coeff(1, 0, MultiPoly::var(2, 1, 2));
        let labels = SeriesLabels::standard("t", None, "x", 2);
        let d = compare_series(&a, &b, &labels).unwrap().unwrap();
        assert_eq!(d.monomial, "t^1 x2^2");
        assert_eq!(d.expected, "0");
        assert_eq!(d.actual, "1");
        assert_eq!(compare_series(&a, &a, &labels).unwrap(), None);
        let z = compare_zpoly(&ZPoly::z(), &ZPoly::constant(rat(1))).unwrap();
        assert_eq!(z.monomial, "z^1");
    }

    #[test]
    fn verify_examples() {
        let p = Params {
            k: Some(2),
            t_order: Some(4),
            vars: Some(6),
            ..Params::default()
        };
        assert!(verify(IdentityId::Thm1E, &p).unwrap().verified());
        let p = Params {
            i: Some(3),
            j: Some(4),
            mu: Some("2,1,1".parse().unwrap()),
            ..Params::default()
        };
        assert!(verify(IdentityId::Cor4, &p).unwrap().verified());
        let p = Params {
            lambda: Some("2,1".parse().unwrap()),
            alpha: Some(rat(2)),
            w_order: Some(5),
            ..Params::default()
        };
        assert!(verify(IdentityId::Thm5, &p).unwrap().verified());
    }

    #[test]
    fn verify_rejects_bad_parameters() {
        assert!(verify(IdentityId::Thm1E, &Params::default()).is_err());
        let p = Params {
            k: Some(4),
            vars: Some(3),
            ..Params::default()
        };
        assert!(matches!(
            verify(IdentityId::Thm2H, &p),
            Err(Error::InsufficientVariables { needed: 4, got: 3 })
        ));
        let p = Params {
            i: Some(2),
            j: Some(4),
            mu: Some("2,1".parse().unwrap()),
            ..Params::default()
        };
        assert!(matches!(verify(IdentityId::Cor4, &p), Err(Error::WeightMismatch { .. })));
        let p = Params {
            lambda: Some("1".parse().unwrap()),
            alpha: Some(rat(0)),
            ..Params::default()
        };
        assert_eq!(verify(IdentityId::Thm5, &p), Err(Error::ZeroAlpha));
    }

    #[test]
    fn params_echo_defaults() {
        let p = Params {
            k: Some(1),
            ..Params::default()
        };
        let rep = verify(IdentityId::Thm2E, &p).unwrap();
        assert_eq!(rep.params.vars, Some(DEFAULT_VARS));
        assert_eq!(rep.params.t_order, Some(DEFAULT_T_ORDER));
        assert_eq!(rep.vars, DEFAULT_VARS);
    }
}
