//! Euler characteristic and middle Betti number of the base locus `Δ(d)` of
//! a pencil of degree-`d` sections, via truncated power series in `H`.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::json;

use crate::linalg::{fmt_q, q, qr, Q};
use crate::report::{Report, Witness};

/// `Σ_{k ≤ n} a_k H^k`, with products truncated above `H^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to `n + 1` terms.
    pub fn new(mut coeffs: Vec<Q>, n: usize) -> Self {
        coeffs.resize(n + 1, Q::zero());
        TruncatedSeries { coeffs }
    }

    pub fn one(n: usize) -> Self {
        Self::new(vec![q(1)], n)
    }

    /// `1 + a H`.
    pub fn linear(a: Q, n: usize) -> Self {
        Self::new(vec![q(1), a], n)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.truncation(), other.truncation());
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { coeffs: c }
    }

    pub fn scale(&self, s: &Q) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.truncation(), other.truncation());
        let n = self.truncation();
        let mut c = vec![Q::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: c }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.truncation()), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.truncation();
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return None;
        }
        let mut b = vec![Q::zero(); n + 1];
        b[0] = a0.recip();
        for k in 1..=n {
            let s: Q = (1..=k).map(|i| &self.coeffs[i] * &b[k - i]).sum();
            b[k] = -s / &a0;
        }
        Some(TruncatedSeries { coeffs: b })
    }

    /// `∫_X` under `∫ H^n = deg X`.
    pub fn integrate(&self, deg_x: &Q) -> Q {
        &self.coeffs[self.truncation()] * deg_x
    }
}

/// A polynomial in `d` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, d: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * d + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn scale(&self, s: &Q) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn constant(c: Q) -> Self {
        Polynomial::new(vec![c])
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => fmt_q(c),
                1 => format!("{}*d", fmt_q(c)),
                _ => format!("{}*d^{k}", fmt_q(c)),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `χ(Δ(d)) = ∫_X d²H² c(X) (1 + dH)^{−2}` as a polynomial in `d`.
///
/// Since `(1 + dH)^{−2} = Σ (−1)^k (k+1) d^k H^k`, the coefficient of `d^{k+2}`
/// is `deg X · (−1)^k (k+1) c_{n−2−k}`.
pub fn chi_delta(chern: &TruncatedSeries, deg_x: &Q, n: usize) -> Polynomial {
    assert_eq!(chern.truncation(), n);
    assert!(chern.coeff(0).is_one(), "total Chern class must start with 1");
    let mut coeffs = vec![Q::zero(); n + 1];
    for k in 0..(n + 1).saturating_sub(2) {
        let sign = if k % 2 == 0 { q(1) } else { q(-1) };
        coeffs[k + 2] = deg_x * sign * q(k as i64 + 1) * chern.coeff(n - 2 - k);
    }
    Polynomial::new(coeffs)
}

/// The same integral evaluated at one `d` by series arithmetic.
pub fn chi_delta_at(chern: &TruncatedSeries, deg_x: &Q, d: &Q) -> Q {
    let n = chern.truncation();
    let h2 = TruncatedSeries::new(vec![q(0), q(0), d * d], n);
    let inv = TruncatedSeries::linear(d.clone(), n).pow(2).inverse().expect("constant term 1");
    h2.mul(chern).mul(&inv).integrate(deg_x)
}

fn alternating_low_sum(betti_x: &[i64], n: usize) -> Q {
    (0..n.saturating_sub(2)).map(|k| q(if k % 2 == 0 { 1 } else { -1 }) * q(betti_x[k])).sum()
}

/// `b_{n−2}(Δ(d))` from the printed formula
/// `(−1)^{n−2} χ + 2 Σ_{i≥1} (−1)^i b_{n−2−i}(X)`.
pub fn betti_delta(chi: &Polynomial, betti_x: &[i64], n: usize) -> Polynomial {
    let sign = q(if n.is_multiple_of(2) { 1 } else { -1 });
    let mut tail = Q::zero();
    for i in 1..=n.saturating_sub(2) {
        let s = q(if i % 2 == 0 { 1 } else { -1 });
        tail += s * q(betti_x[n - 2 - i]);
    }
    chi.scale(&sign).add(&Polynomial::constant(q(2) * tail))
}

/// `b_{n−2}(Δ(d))` by Poincaré duality and weak Lefschetz on `Δ`:
/// `χ = (−1)^{n−2} b_{n−2} + 2 Σ_{k<n−2} (−1)^k b_k(X)`.
pub fn betti_delta_oracle(chi: &Polynomial, betti_x: &[i64], n: usize) -> Polynomial {
    let sign = q(if n.is_multiple_of(2) { 1 } else { -1 });
    chi.add(&Polynomial::constant(q(-2) * alternating_low_sum(betti_x, n))).scale(&sign)
}

/// Chern data of a variety: total Chern class as an `H`-series (each `c_a`
/// replaced by `(∫ c_a H^{n−a} / deg X) H^a`), `deg X` and Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    pub chern: TruncatedSeries,
    pub deg_x: Q,
    pub betti: Vec<i64>,
}

impl ChernData {
    pub fn n(&self) -> usize {
        self.chern.truncation()
    }
}

/// `P^n`: `c = (1 + H)^{n+1}`, degree 1.
pub fn projective_space_chern(n: usize) -> ChernData {
    let chern = TruncatedSeries::linear(q(1), n).pow(n + 1);
    let betti = (0..=2 * n).map(|k| if k % 2 == 0 { 1 } else { 0 }).collect();
    ChernData { chern, deg_x: q(1), betti }
}

/// `(P¹)³` polarized by `h1 + h2 + h3`: `c = 1 + 2H + 2H² + (4/3)H³`, degree 6.
pub fn p1_cubed_chern() -> ChernData {
    let chern = TruncatedSeries::new(vec![q(1), q(2), q(2), qr(4, 3)], 3);
    ChernData { chern, deg_x: q(6), betti: vec![1, 0, 3, 0, 3, 0, 1] }
}

/// Chern data of the ambient variety of a builtin pencil, with the pencil's
/// degree `d` relative to that polarization.
pub fn pencil_chern(name: &str) -> Option<(ChernData, Q)> {
    match name {
        "hyperplane-p3" => Some((projective_space_chern(3), q(1))),
        "quadric-p3" => Some((projective_space_chern(3), q(2))),
        "p1cubed" => Some((p1_cubed_chern(), q(1))),
        _ => None,
    }
}

/// χ polynomial, value table, both Betti formulas and the lead-term audit.
pub fn chern_suite(data: &ChernData, d_range: std::ops::RangeInclusive<i64>) -> Report {
    let mut r = Report::new("chern");
    let n = data.n();
    let chi = chi_delta(&data.chern, &data.deg_x, n);
    for d in d_range.clone() {
        let dq = q(d);
        let one = TruncatedSeries::linear(dq.clone(), n);
        let inv = one.inverse().expect("constant term 1");
        r.check_eq(format!("(1+dH)(1+dH)^-1 = 1 at d = {d}"), one.mul(&inv), TruncatedSeries::one(n));
        let (poly, series) = (chi.eval(&dq), chi_delta_at(&data.chern, &data.deg_x, &dq));
        r.check(format!("chi polynomial = series integral at d = {d}"), poly == series, || Witness {
            location: format!("d = {d}"),
            lhs: fmt_q(&poly),
            rhs: fmt_q(&series),
        });
    }
    let deg = chi.degree();
    r.check("deg_d chi <= n", deg.is_none_or(|k| k <= n), || Witness {
        location: "chi".into(),
        lhs: format!("{deg:?}"),
        rhs: format!("<= {n}"),
    });
    let sign_n = q(if n.is_multiple_of(2) { 1 } else { -1 });
    let betti = (data.betti.len() > n.saturating_sub(2)).then(|| {
        let oracle = betti_delta_oracle(&chi, &data.betti, n);
        let printed = betti_delta(&chi, &data.betti, n);
        (oracle, printed)
    });
    if let Some((oracle, _)) = &betti {
        let recon = oracle.scale(&sign_n).add(&Polynomial::constant(q(2) * alternating_low_sum(&data.betti, n)));
        r.check_eq("oracle Betti number reproduces chi", recon, chi.clone());
    }
    let claimed_lead = &sign_n * &data.deg_x;
    let table: Vec<serde_json::Value> = d_range
        .map(|d| {
            let dq = q(d);
            let mut row = json!({ "d": d, "chi": fmt_q(&chi.eval(&dq)) });
            if let Some((oracle, printed)) = &betti {
                row["betti_printed"] = json!(fmt_q(&printed.eval(&dq)));
                row["betti_oracle"] = json!(fmt_q(&oracle.eval(&dq)));
            }
            row
        })
        .collect();
    r.param("n", n);
    r.param("deg_x", fmt_q(&data.deg_x));
    r.param("chi", chi.to_string());
    if let Some((oracle, printed)) = &betti {
        r.param("betti_printed", printed.to_string());
        r.param("betti_oracle", oracle.to_string());
    }
    r.param("lead_computed", fmt_q(&chi.coeff(n)));
    r.param("lead_claimed", fmt_q(&claimed_lead));
    r.param("values", table);
    r
}

/// `χ` of the pencil's base-locus model against `chi_delta` at the pencil's degree.
pub fn pencil_consistency(p: &crate::section::PencilDatum) -> Option<Report> {
    let (data, d) = pencil_chern(&p.name)?;
    let mut r = chern_suite(&data, 1..=3);
    let model_chi = q(p.delta.euler_characteristic());
    let formula = chi_delta(&data.chern, &data.deg_x, data.n()).eval(&d);
    r.check("chi(Delta model) = chi_delta(d)", model_chi == formula, || Witness {
        location: format!("d = {}", fmt_q(&d)),
        lhs: fmt_q(&model_chi),
        rhs: fmt_q(&formula),
    });
    r.param("pencil_degree", fmt_q(&d));
    Some(r)
}
