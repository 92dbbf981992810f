use serde::{Deserialize, Serialize};

use super::PolyMatrix;
use crate::error::{Error, Result};
use crate::poly::{apply_diff, Polynomial};
use crate::scalar::{binomial, factorial, Field};
use crate::zoo::{det, discriminant};
use crate::{Poly, Rational};

/// Matrix of second partials.
pub fn hessian<F: Field>(p: &Polynomial<F>) -> Result<PolyMatrix<F>> {
    let d = p.homogeneous_degree()?;
    if d < 2 {
        return Err(Error::range("degree", format!("Hessian needs degree >= 2, got {d}")));
    }
    let v = p.num_vars();
    let first: Vec<Polynomial<F>> = (0..v).map(|i| p.partial(i)).collect();
    let entries = (0..v)
        .map(|i| (0..v).map(|j| first[i].partial(j)).collect())
        .collect();
    PolyMatrix::new(v, entries)
}

/// `trace(A Aᵀ) = Σ x_{ij}²` on the generic `v×v` matrix.
pub fn frobenius_quadric(v: usize) -> Poly {
    (0..v * v).fold(Poly::zero(v * v), |acc, i| &acc + &Poly::var(v * v, i).pow(2))
}

/// `trace(A²) = Σ x_{ij} x_{ji}`.
pub fn trace_square_quadric(v: usize) -> Poly {
    let nv = v * v;
    let mut acc = Poly::zero(nv);
    for i in 0..v {
        for j in 0..v {
            acc = &acc + &(&Poly::var(nv, i * v + j) * &Poly::var(nv, j * v + i));
        }
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SfturboCheck {
    /// `cp_1 = 0`.
    Cp1,
    /// `det | cp_3` with cofactor of degree `2v−6`.
    Cp3,
    /// `det | cp_5`.
    Cp5,
    /// `cp_{v²−1} = 2 det^{v(v−2)−1} trace(AAᵀ)`.
    SubTop,
    /// `cp_{v²} = (−1)^{C(v+1,2)} (v−1) det^{v(v−2)}`.
    Top,
}

impl SfturboCheck {
    /// What runs when nothing is selected: everything at `v = 3`, the two
    /// cheap checks at `v = 4`.
    pub fn defaults(v: usize) -> Vec<SfturboCheck> {
        use SfturboCheck::*;
        if v <= 3 {
            vec![Cp1, Cp3, SubTop, Top]
        } else {
            vec![Cp1, Cp3]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: SfturboCheck,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SfturboReport {
    pub v: usize,
    pub outcomes: Vec<CheckOutcome>,
}

impl SfturboReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

fn divisibility(cp: &Poly, detv: &Poly, expected_degree: Option<u32>) -> (bool, String) {
    match cp.exact_div(detv) {
        Ok(q) if q.is_zero() => (expected_degree.is_none(), "quotient is zero".into()),
        Ok(q) => match (q.homogeneous_degree(), expected_degree) {
            (Ok(deg), Some(want)) if deg != want => {
                (false, format!("cofactor has degree {deg}, expected {want}"))
            }
            (Ok(deg), _) => (true, format!("exact, cofactor of degree {deg} with {} terms", q.len())),
            (Err(e), _) => (false, format!("cofactor is {e}")),
        },
        Err(lead) => (false, format!("nonzero remainder, leading term {lead}")),
    }
}

/// `c` with `p = c·base`, if `p` is a constant multiple of `base`.
fn constant_multiple(p: &Poly, base: &Poly) -> Option<Rational> {
    let q = p.exact_div(base).ok()?;
    match q.len() {
        0 => Some(Rational::from_int(0)),
        1 => {
            let (m, c) = q.leading_term()?;
            m.is_one().then(|| c.clone())
        }
        _ => None,
    }
}

/// Checks the structure of the characteristic-polynomial coefficients of
/// the Hessian of `det_v`.
pub fn verify_sfturbo(v: usize, checks: &[SfturboCheck]) -> Result<SfturboReport> {
    if !(2..=4).contains(&v) {
        return Err(Error::Capacity(format!("v = {v}; supported range is 2..=4")));
    }
    let n = v * v;
    let heavy = checks
        .iter()
        .any(|c| matches!(c, SfturboCheck::SubTop | SfturboCheck::Top));
    if v == 4 && heavy {
        return Err(Error::Capacity(
            "cp_15 and cp_16 of the 16x16 Hessian of det_4 are beyond the budget".into(),
        ));
    }
    let detv = det(v);
    let h = hessian(&detv)?;
    let mut outcomes = Vec::new();
    for &check in checks {
        let (passed, detail) = match check {
            SfturboCheck::Cp1 => {
                let cp = h.charpoly_coeff(1)?;
                (cp.is_zero(), format!("cp_1 has {} terms", cp.len()))
            }
            SfturboCheck::Cp3 => {
                let want = (2 * v as i64 - 6).max(0) as u32;
                divisibility(&h.charpoly_coeff(3)?, &detv, Some(want))
            }
            SfturboCheck::Cp5 => {
                if n < 5 {
                    (false, "matrix smaller than 5".into())
                } else {
                    divisibility(&h.charpoly_coeff(5)?, &detv, None)
                }
            }
            SfturboCheck::SubTop => {
                let e = (v * (v - 2)) as u32;
                if e == 0 {
                    (false, "exponent v(v-2)-1 is negative".into())
                } else {
                    let cp = h.charpoly_coeff(n - 1)?;
                    let base = &detv.pow(e - 1) * &frobenius_quadric(v);
                    let want = Rational::from_int(2);
                    match constant_multiple(&cp, &base) {
                        Some(c) if c == want => (true, format!("cp_{} = 2 det^{} trace(A A^T)", n - 1, e - 1)),
                        Some(c) => (
                            false,
                            format!("cp_{} = {c} det^{} trace(A A^T), expected factor 2", n - 1, e - 1),
                        ),
                        None => (false, format!("cp_{} is not a multiple of det^{} trace(A A^T)", n - 1, e - 1)),
                    }
                }
            }
            SfturboCheck::Top => {
                let cp = h.charpoly_coeff(n)?;
                let sign = if (v + 1) * v / 2 % 2 == 0 { 1 } else { -1 };
                let want = Rational::from_int(sign * (v as i64 - 1));
                let e = (v * (v - 2)) as u32;
                match constant_multiple(&cp, &detv.pow(e)) {
                    Some(c) if c == want => (true, format!("det(H) = {c} det^{e}")),
                    Some(c) => (false, format!("det(H) = {c} det^{e}, expected {want} det^{e}")),
                    None => (false, format!("det(H) is not a multiple of det^{e}")),
                }
            }
        };
        outcomes.push(CheckOutcome { check, passed, detail });
    }
    Ok(SfturboReport { v, outcomes })
}

/// `det(H(Δ)) = 3888 Δ²` for a given quartic.
pub fn discriminant_identity_holds(delta: &Poly) -> Result<bool> {
    let h = hessian(delta)?;
    if h.size() != 4 {
        return Err(Error::Dimension(format!("expected a quartic in 4 variables, got {}", h.size())));
    }
    Ok(h.det() == delta.pow(2).scale(&Rational::from_int(3888)))
}

/// `det(H(Δ)) = 3888 Δ²` for the discriminant of the binary cubic.
pub fn verify_discriminant_identity() -> Result<bool> {
    discriminant_identity_holds(&discriminant())
}

/// `det_n(∂) det_n^{s+1} = ((s+n)!/s!) det_n^s`.
pub fn cayley_check(n: usize, s: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::range("n", "need n >= 1"));
    }
    if n > 3 || s > 2 {
        return Err(Error::Capacity(format!("(n, s) = ({n}, {s}) exceeds n <= 3, s <= 2")));
    }
    let d = det(n);
    let lhs = apply_diff(&d, &d.pow(s as u32 + 1))?;
    let c = Rational::new(factorial((s + n) as u64), factorial(s as u64));
    Ok(lhs == d.pow(s as u32).scale(&c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylvesterFrankeReport {
    pub v: usize,
    pub k: usize,
    pub p: usize,
    /// Index `C(v−1,k)+p` of the coefficient tested.
    pub coefficient: usize,
    pub divisible: bool,
    pub detail: String,
}

/// `det(A)^p` divides `cp_{C(v−1,k)+p}` of the `k`-th compound of the
/// generic `v×v` matrix.
pub fn verify_sylvester_franke(v: usize, k: usize, p: usize) -> Result<SylvesterFrankeReport> {
    if v == 0 || v > 4 {
        return Err(Error::Capacity(format!("v = {v}; supported range is 1..=4")));
    }
    if k == 0 || k > v {
        return Err(Error::range("k", format!("need 1 <= k <= {v}, got {k}")));
    }
    let a = PolyMatrix::<Rational>::generic(v);
    let c = a.compound(k)?;
    let idx: usize = binomial((v - 1) as u64, k as u64)
        .try_into()
        .expect("small binomial");
    let s = idx + p;
    if s > c.size() {
        return Err(Error::range(
            "p",
            format!("coefficient index {s} exceeds the compound size {}", c.size()),
        ));
    }
    let cp = c.charpoly_coeff(s)?;
    let divisor = a.det().pow(p as u32);
    let (divisible, detail) = match cp.exact_div(&divisor) {
        Ok(q) => (true, format!("cofactor has {} terms", q.len())),
        Err(lead) => (false, format!("nonzero remainder, leading term {lead}")),
    };
    Ok(SylvesterFrankeReport {
        v,
        k,
        p,
        coefficient: s,
        divisible,
        detail,
    })
}

/// `cp_0, …, cp_up_to` of a square polynomial matrix.
pub fn charpoly_coeffs<F: Field>(m: &PolyMatrix<F>, up_to: usize) -> Result<Vec<Polynomial<F>>> {
    m.charpoly_coeffs(up_to)
}
