//! Named polynomial families and explicit decompositions of them into
//! powers and products of linear forms.
//!
//! Matrix-shaped families use row-major variables: entry `(i, j)` of an
//! `n×n` matrix is variable `i*n + j`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{combinations, perm_sign, permutations};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{substitute, LinearSubstitution, Monomial, Polynomial};
use crate::scalar::Field;
use crate::{Poly, Rational};

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn var_poly(num_vars: usize, i: usize) -> Poly {
    Poly::var(num_vars, i)
}

fn product_monomial(num_vars: usize, vars: impl IntoIterator<Item = usize>) -> Monomial {
    let mut e = vec![0u32; num_vars];
    for v in vars {
        e[v] += 1;
    }
    Monomial::new(e)
}

pub fn det(n: usize) -> Poly {
    let nv = n * n;
    Poly::from_terms(
        nv,
        permutations(n).into_iter().map(|p| {
            let s = perm_sign(&p);
            (product_monomial(nv, (0..n).map(|i| i * n + p[i])), q(s))
        }),
    )
    .expect("consistent variable count")
}

pub fn perm(n: usize) -> Poly {
    let nv = n * n;
    Poly::from_terms(
        nv,
        permutations(n)
            .into_iter()
            .map(|p| (product_monomial(nv, (0..n).map(|i| i * n + p[i])), q(1))),
    )
    .expect("consistent variable count")
}

/// `e^k_n`, the sum of all squarefree degree-`k` monomials in `n` variables.
pub fn elementary(k: usize, n: usize) -> Poly {
    Poly::from_terms(
        n,
        combinations(n, k)
            .into_iter()
            .map(|s| (product_monomial(n, s), q(1))),
    )
    .expect("consistent variable count")
}

/// `x1⋯xn`.
pub fn chow(n: usize) -> Poly {
    Poly::monomial(n, Monomial::new(vec![1; n]), q(1))
}

/// `x1^d + ⋯ + xn^d`.
pub fn fermat(d: u32, n: usize) -> Poly {
    Poly::from_terms(
        n,
        (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = d;
            (Monomial::new(e), q(1))
        }),
    )
    .expect("consistent variable count")
}

/// `S^n_m = Σ_{i<m} ∏_{j<n} x_{ij}` on `nm` variables (`x_{ij}` at `i*n+j`).
pub fn sum_product(n: usize, m: usize) -> Poly {
    let nv = n * m;
    Poly::from_terms(
        nv,
        (0..m).map(|i| (product_monomial(nv, (0..n).map(|j| i * n + j)), q(1))),
    )
    .expect("consistent variable count")
}

/// `trace(X_1 ⋯ X_n)` for `k×k` matrices; entry `(a, b)` of `X_t` is
/// variable `t*k² + a*k + b`.
pub fn imm(k: usize, n: usize) -> Poly {
    let nv = k * k * n;
    let mut p = Poly::zero(nv);
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut idx = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            idx.push(c % k);
            c /= k;
        }
        let vars = (0..n).map(|t| t * k * k + idx[t] * k + idx[(t + 1) % n]);
        p.add_term(product_monomial(nv, vars), q(1));
    }
    p
}

/// Four-factor Pascal determinant
/// `Σ_{σ2,σ3,σ4} sgn(σ2σ3σ4) ∏_i a_{i,σ2(i),σ3(i),σ4(i)}`; `a_{ijkl}` is
/// variable `((i*m+j)*m+k)*m+l`.
pub fn pascal_det(m: usize) -> Poly {
    let nv = m.pow(4);
    let perms: Vec<(Vec<usize>, i64)> = permutations(m)
        .into_iter()
        .map(|p| {
            let s = perm_sign(&p);
            (p, s)
        })
        .collect();
    let mut p = Poly::zero(nv);
    for (s2, g2) in &perms {
        for (s3, g3) in &perms {
            for (s4, g4) in &perms {
                let vars = (0..m).map(|i| ((i * m + s2[i]) * m + s3[i]) * m + s4[i]);
                p.add_term(product_monomial(nv, vars), q(g2 * g3 * g4));
            }
        }
    }
    p
}

/// Pfaffian by first-row expansion; `Pf([[0,a],[-a,0]]) = a`.
pub fn pfaffian<F: Field>(a: &[Vec<Polynomial<F>>], num_vars: usize) -> Polynomial<F> {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(num_vars);
    }
    if n % 2 == 1 {
        return Polynomial::zero(num_vars);
    }
    let mut acc = Polynomial::zero(num_vars);
    for j in 1..n {
        if a[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&r| r != j).collect();
        let sub: Vec<Vec<Polynomial<F>>> = keep
            .iter()
            .map(|&r| keep.iter().map(|&c| a[r][c].clone()).collect())
            .collect();
        let term = &a[0][j] * &pfaffian(&sub, num_vars);
        // j is 0-based here; column 2 (1-based) carries sign +
        acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Symmetric and skew parts `(M + Mᵀ)/2`, `(M − Mᵀ)/2` of the generic matrix.
pub fn symmetric_skew_parts(n: usize) -> (Vec<Vec<Poly>>, Vec<Vec<Poly>>) {
    let nv = n * n;
    let half = Rational::from_pair(1, 2);
    let sym = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (&var_poly(nv, i * n + j) + &var_poly(nv, j * n + i)).scale(&half))
                .collect()
        })
        .collect();
    let skew = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (&var_poly(nv, i * n + j) - &var_poly(nv, j * n + i)).scale(&half))
                .collect()
        })
        .collect();
    (sym, skew)
}

/// Boundary polynomial `P_Λ(M) = Σ_{ij} (M_S)_{ij} Pf_i(M_Λ) Pf_j(M_Λ)`
/// for odd `n`, with `Pf_i` the signed Pfaffian `(-1)^i Pf(M_Λ with row and
/// column i removed)`, so that `Pf_i Pf_j` is the adjugate entry of `M_Λ`.
pub fn p_lambda(n: usize) -> Result<Poly> {
    if n % 2 == 0 || n == 0 {
        return Err(Error::Invalid(format!("P_Lambda needs odd n, got {n}")));
    }
    let nv = n * n;
    let (sym, skew) = symmetric_skew_parts(n);
    let pf: Vec<Poly> = (0..n)
        .map(|i| {
            let keep: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let sub: Vec<Vec<Poly>> = keep
                .iter()
                .map(|&r| keep.iter().map(|&c| skew[r][c].clone()).collect())
                .collect();
            let p = pfaffian(&sub, nv);
            if i % 2 == 0 {
                p
            } else {
                -p
            }
        })
        .collect();
    let mut acc = Poly::zero(nv);
    for i in 0..n {
        for j in 0..n {
            if sym[i][j].is_zero() {
                continue;
            }
            acc = &acc + &(&sym[i][j] * &(&pf[i] * &pf[j]));
        }
    }
    Ok(acc)
}

/// Discriminant of the binary cubic,
/// `27x1²x4² + 4x1x3³ + 4x2³x4 − x2²x3² − 18x1x2x3x4`.
pub fn discriminant() -> Poly {
    let m = |e: [u32; 4]| Monomial::new(e.to_vec());
    Poly::from_terms(
        4,
        [
            (m([2, 0, 0, 2]), q(27)),
            (m([1, 0, 3, 0]), q(4)),
            (m([0, 3, 0, 1]), q(4)),
            (m([0, 2, 2, 0]), q(-1)),
            (m([1, 1, 1, 1]), q(-18)),
        ],
    )
    .expect("four variables")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Det,
    Perm,
    Elementary,
    Chow,
    Fermat,
    SumProduct,
    Imm,
    PascalDet,
    PLambda,
    Discriminant,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Det,
        Family::Perm,
        Family::Elementary,
        Family::Chow,
        Family::Fermat,
        Family::SumProduct,
        Family::Imm,
        Family::PascalDet,
        Family::PLambda,
        Family::Discriminant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Det => "det",
            Family::Perm => "perm",
            Family::Elementary => "elementary",
            Family::Chow => "chow",
            Family::Fermat => "fermat",
            Family::SumProduct => "sum_product",
            Family::Imm => "imm",
            Family::PascalDet => "pascal_det",
            Family::PLambda => "p_lambda",
            Family::Discriminant => "discriminant",
        }
    }

    /// Parameter names in the order `make` expects them.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::Det | Family::Perm | Family::Chow | Family::PLambda => &["n"],
            Family::Elementary => &["k", "n"],
            Family::Fermat => &["d", "n"],
            Family::SumProduct => &["n", "m"],
            Family::Imm => &["k", "n"],
            Family::PascalDet => &["m"],
            Family::Discriminant => &[],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown polynomial family {s:?}")))
    }
}

/// Builds a named polynomial from its integer parameters.
pub fn make(family: Family, params: &[usize]) -> Result<Poly> {
    let want = family.params();
    if params.len() != want.len() {
        return Err(Error::Invalid(format!(
            "{family} takes parameters ({}), got {} values",
            want.join(", "),
            params.len()
        )));
    }
    let pos = |i: usize| -> Result<usize> {
        if params[i] == 0 {
            Err(Error::range("parameter", format!("{} must be positive", want[i])))
        } else {
            Ok(params[i])
        }
    };
    match family {
        Family::Det => Ok(det(pos(0)?)),
        Family::Perm => Ok(perm(pos(0)?)),
        Family::Elementary => {
            let (k, n) = (pos(0)?, pos(1)?);
            if k > n {
                return Err(Error::range("k", format!("need k <= n, got k={k}, n={n}")));
            }
            Ok(elementary(k, n))
        }
        Family::Chow => Ok(chow(pos(0)?)),
        Family::Fermat => Ok(fermat(pos(0)? as u32, pos(1)?)),
        Family::SumProduct => Ok(sum_product(pos(0)?, pos(1)?)),
        Family::Imm => Ok(imm(pos(0)?, pos(1)?)),
        Family::PascalDet => Ok(pascal_det(pos(0)?)),
        Family::PLambda => p_lambda(pos(0)?),
        Family::Discriminant => Ok(discriminant()),
    }
}

/// `Σ c_i (ℓ_i · x)^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaringDecomposition {
    pub degree: u32,
    pub num_vars: usize,
    pub terms: Vec<WaringTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaringTerm {
    #[serde(with = "exact")]
    pub coeff: Rational,
    #[serde(with = "exact_vec")]
    pub form: Vec<Rational>,
}

/// `Σ c_i ∏_j ℓ_{ij}`, each term a product of the same number of linear forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChowDecomposition {
    pub num_vars: usize,
    pub terms: Vec<ChowTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChowTerm {
    #[serde(with = "exact")]
    pub coeff: Rational,
    #[serde(with = "exact_mat")]
    pub forms: Vec<Vec<Rational>>,
}

/// `det_n` of an `n×n` matrix of linear forms in the target's variables
/// followed by one padding variable `ℓ` (the last variable).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetExpressionWitness {
    pub n: usize,
    #[serde(with = "exact_mat")]
    pub affine_map: Vec<Vec<Rational>>,
}

impl WaringDecomposition {
    pub fn expand(&self) -> Result<Poly> {
        let mut acc = Poly::zero(self.num_vars);
        for t in &self.terms {
            check_form(&t.form, self.num_vars)?;
            let l = Poly::linear(&t.form).pow(self.degree);
            acc = &acc + &l.scale(&t.coeff);
        }
        Ok(acc)
    }
}

impl ChowDecomposition {
    /// Common number of factors per term, if all terms agree.
    pub fn factors_per_term(&self) -> Option<usize> {
        let first = self.terms.first()?.forms.len();
        self.terms.iter().all(|t| t.forms.len() == first).then_some(first)
    }

    pub fn expand(&self) -> Result<Poly> {
        let mut acc = Poly::zero(self.num_vars);
        for t in &self.terms {
            let mut prod = Poly::constant(self.num_vars, t.coeff.clone());
            for f in &t.forms {
                check_form(f, self.num_vars)?;
                prod = &prod * &Poly::linear(f);
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }
}

fn check_form(form: &[Rational], num_vars: usize) -> Result<()> {
    if form.len() != num_vars {
        return Err(Error::Dimension(format!(
            "linear form has {} coefficients, expected {num_vars}",
            form.len()
        )));
    }
    if form.iter().all(Zero::is_zero) {
        return Err(Error::Invalid("zero linear form".into()));
    }
    Ok(())
}

fn check_target(num_vars: usize, target: &Poly) -> Result<()> {
    if num_vars != target.num_vars() {
        return Err(Error::VariableMismatch {
            left: num_vars,
            right: target.num_vars(),
        });
    }
    Ok(())
}

pub fn verify_waring(d: &WaringDecomposition, target: &Poly) -> Result<bool> {
    check_target(d.num_vars, target)?;
    Ok(&d.expand()? == target)
}

pub fn verify_chow(d: &ChowDecomposition, target: &Poly) -> Result<bool> {
    check_target(d.num_vars, target)?;
    Ok(&d.expand()? == target)
}

/// Checks `det_n(affine_map(x, ℓ)) = ℓ^{n-m} · target` with `m = deg target`.
pub fn verify_det_expression(w: &DetExpressionWitness, target: &Poly) -> Result<bool> {
    let m = target.homogeneous_degree()? as usize;
    if w.n < m {
        return Ok(false);
    }
    let src = target.num_vars() + 1;
    if w.affine_map.len() != w.n * w.n {
        return Err(Error::Dimension(format!(
            "affine map has {} entries, det_{} needs {}",
            w.affine_map.len(),
            w.n,
            w.n * w.n
        )));
    }
    if w.affine_map.iter().any(|r| r.len() != src) {
        return Err(Error::Dimension(format!(
            "each entry must be a linear form in {src} variables (target variables plus padding)"
        )));
    }
    let s = LinearSubstitution::new(w.affine_map.clone())?;
    let lhs = substitute(&det(w.n), &s)?;
    let targets: Vec<usize> = (0..target.num_vars()).collect();
    let padded = &target.embed(src, &targets)? * &Poly::var(src, src - 1).pow((w.n - m) as u32);
    Ok(lhs == padded)
}

/// Glynn–Ryser expression
/// `perm_n = 2^{1-n} Σ_{ε, ε1=1} ∏_i Σ_j ε_i ε_j x_{ij}`: `2^{n-1}` products of
/// `n` linear forms. Sign vectors `(ε2,…,εn)` run lexicographically with
/// `+1` before `-1`.
pub fn ryser_decomposition(n: usize) -> Result<ChowDecomposition> {
    if n == 0 {
        return Err(Error::range("n", "need n >= 1"));
    }
    let nv = n * n;
    let coeff = Rational::new(1.into(), num_bigint::BigInt::from(2).pow((n - 1) as u32));
    let terms = sign_vectors(n - 1)
        .into_iter()
        .map(|tail| {
            let mut eps = vec![1i64];
            eps.extend(tail);
            let forms = (0..n)
                .map(|i| {
                    let mut f = vec![q(0); nv];
                    for j in 0..n {
                        f[i * n + j] = q(eps[i] * eps[j]);
                    }
                    f
                })
                .collect();
            ChowTerm {
                coeff: coeff.clone(),
                forms,
            }
        })
        .collect();
    Ok(ChowDecomposition { num_vars: nv, terms })
}

/// `x1⋯xn = (2^{n-1} n!)^{-1} Σ_ε ε1⋯ε_{n-1} (x1 + ε1x2 + ⋯ + ε_{n-1}xn)^n`.
pub fn fischer_decomposition(n: usize) -> Result<WaringDecomposition> {
    if n == 0 {
        return Err(Error::range("n", "need n >= 1"));
    }
    let denom = num_bigint::BigInt::from(2).pow((n - 1) as u32) * crate::scalar::factorial(n as u64);
    let base = Rational::new(1.into(), denom);
    let terms = sign_vectors(n - 1)
        .into_iter()
        .map(|eps| {
            let sign: i64 = eps.iter().product();
            let mut form = vec![q(1)];
            form.extend(eps.iter().map(|&e| q(e)));
            WaringTerm {
                coeff: &base * q(sign),
                form,
            }
        })
        .collect();
    Ok(WaringDecomposition {
        degree: n as u32,
        num_vars: n,
        terms,
    })
}

fn sign_vectors(len: usize) -> Vec<Vec<i64>> {
    (0..1usize << len)
        .map(|code| {
            (0..len)
                .map(|b| if code >> (len - 1 - b) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

/// Evaluation nodes for the padded elementary symmetric expression: `1, …,
/// m-1` and a last node chosen so that `e_k(nodes) = 0`, which is exactly the
/// solvability condition of the `(m+1)×m` Vandermonde system.
pub fn benor_nodes(m: usize, k: usize) -> Vec<Rational> {
    let mut nodes: Vec<Rational> = (1..m as i64).map(q).collect();
    let ek = elementary_of(&nodes, k);
    let ek1 = elementary_of(&nodes, k - 1);
    nodes.push(-(ek / ek1));
    nodes
}

fn elementary_of(vals: &[Rational], k: usize) -> Rational {
    // coefficients of ∏ (1 + v t)
    let mut e = vec![q(0); vals.len() + 1];
    e[0] = q(1);
    for v in vals {
        for j in (1..e.len()).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * v.clone();
        }
    }
    e.get(k).cloned().unwrap_or_else(|| q(0))
}

/// `ℓ^{m-k} e^k_m = Σ_u c_u ∏_i (x_i + uℓ)` with `m` terms; variables are
/// `x1..xm` then `ℓ`.
pub fn benor_decomposition(m: usize, k: usize) -> Result<ChowDecomposition> {
    if k == 0 || k > m {
        return Err(Error::range("k", format!("need 1 <= k <= m = {m}, got {k}")));
    }
    let nodes = benor_nodes(m, k);
    // row j: Σ_u c_u u^{m-j} = [j == k], j = 0..=m
    let sys = Matrix::from_fn(m + 1, m + 1, |j, u| {
        if u < m {
            pow(&nodes[u], (m - j) as u32)
        } else if j == k {
            q(1)
        } else {
            q(0)
        }
    });
    let (r, pivots) = sys.rref();
    if pivots.contains(&m) {
        return Err(Error::Invalid("Vandermonde system is inconsistent".into()));
    }
    let mut coeffs = vec![q(0); m];
    for (row, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = r.get(row, m).clone();
    }
    let nv = m + 1;
    let terms = nodes
        .iter()
        .zip(coeffs)
        .map(|(u, c)| ChowTerm {
            coeff: c,
            forms: (0..m)
                .map(|i| {
                    let mut f = vec![q(0); nv];
                    f[i] = q(1);
                    f[m] = u.clone();
                    f
                })
                .collect(),
        })
        .collect();
    Ok(ChowDecomposition { num_vars: nv, terms })
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x.clone())
}

/// `ℓ^{m-k} e^k_m` on variables `x1..xm, ℓ`.
pub fn padded_elementary(m: usize, k: usize) -> Poly {
    let nv = m + 1;
    let targets: Vec<usize> = (0..m).collect();
    let e = elementary(k, m).embed(nv, &targets).expect("embedding fits");
    &e * &Poly::var(nv, m).pow((m - k) as u32)
}

/// Size of the homogeneous depth-three circuit for a sum of `r` products of
/// `n` linear forms in `w` variables: `r + n·r·(1+w)`.
pub fn chow_circuit_size(r: u64, n: u64, w: u64) -> u64 {
    r + n * r * (1 + w)
}

/// Sign-flip witness `[[x11, -x12], [x21, x22]]` showing `dc(perm_2) = 2`.
pub fn perm2_witness() -> DetExpressionWitness {
    let src = 5;
    let unit = |i: usize, c: i64| {
        let mut f = vec![q(0); src];
        f[i] = q(c);
        f
    };
    DetExpressionWitness {
        n: 2,
        affine_map: vec![unit(0, 1), unit(1, -1), unit(2, 1), unit(3, 1)],
    }
}

mod exact {
    use super::Rational;
    use crate::scalar::Field;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_exact_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        Rational::parse_exact(&s).map_err(serde::de::Error::custom)
    }
}

mod exact_vec {
    use super::Rational;
    use crate::scalar::Field;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(Field::to_exact_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| Rational::parse_exact(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod exact_mat {
    use super::Rational;
    use crate::scalar::Field;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(Field::to_exact_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| Rational::parse_exact(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Any of the three witness kinds, as stored in a witness file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Waring(WaringDecomposition),
    Chow(ChowDecomposition),
    DetExpression(DetExpressionWitness),
}

impl Witness {
    pub fn verify(&self, target: &Poly) -> Result<bool> {
        match self {
            Witness::Waring(d) => verify_waring(d, target),
            Witness::Chow(d) => verify_chow(d, target),
            Witness::DetExpression(w) => verify_det_expression(w, target),
        }
    }

    pub fn term_count(&self) -> usize {
        match self {
            Witness::Waring(d) => d.terms.len(),
            Witness::Chow(d) => d.terms.len(),
            Witness::DetExpression(_) => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leibniz_det(m: &[Vec<Poly>], nv: usize) -> Poly {
        let n = m.len();
        let mut acc = Poly::zero(nv);
        for p in permutations(n) {
            let mut t = Poly::constant(nv, q(perm_sign(&p)));
            for i in 0..n {
                t = &t * &m[i][p[i]];
            }
            acc = &acc + &t;
        }
        acc
    }

    #[test]
    fn det_and_perm_of_size_two() {
        assert_eq!(det(2).to_string(), "-x2*x3 + x1*x4");
        assert_eq!(perm(2).to_string(), "x2*x3 + x1*x4");
        let want = Poly::monomial(4, Monomial::new(vec![1, 0, 0, 1]), q(2));
        assert_eq!(&det(2) + &perm(2), want);
    }

    #[test]
    fn det_squared_expansion() {
        let sq = &det(2) * &det(2);
        assert_eq!(sq.to_string(), "x2^2*x3^2 - 2*x1*x2*x3*x4 + x1^2*x4^2");
    }

    #[test]
    fn perm3_on_all_ones_is_six() {
        let p = perm(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.eval(&vec![q(1); 9]).unwrap(), q(6));
    }

    #[test]
    fn discriminant_matches_printed_quartic() {
        let d = make(Family::Discriminant, &[]).unwrap();
        assert_eq!(d.len(), 5);
        assert_eq!(d.homogeneous_degree().unwrap(), 4);
        assert_eq!(d.coeff(&Monomial::new(vec![1, 1, 1, 1])), q(-18));
    }

    #[test]
    fn det_perm_chow_agree_on_diagonal() {
        for n in 1..5 {
            let diag: Vec<usize> = (0..n).map(|i| i * n + i).collect();
            let c = chow(n).embed(n * n, &diag).unwrap();
            let point: Vec<Rational> = (0..n * n)
                .map(|v| if v % (n + 1) == 0 { q(v as i64 + 2) } else { q(0) })
                .collect();
            let want = c.eval(&point).unwrap();
            assert_eq!(det(n).eval(&point).unwrap(), want);
            assert_eq!(perm(n).eval(&point).unwrap(), want);
        }
    }

    #[test]
    fn pascal_det_slice_is_det() {
        // fixing the third and fourth indices to the identity slice a_{i,j,i,i}
        for m in 2..4 {
            let p = pascal_det(m);
            let nv = m.pow(4);
            let mut point = vec![q(0); nv];
            let vals: Vec<Rational> = (0..m * m).map(|t| q((t * t) as i64 % 7 - 3)).collect();
            for i in 0..m {
                for j in 0..m {
                    point[((i * m + j) * m + i) * m + i] = vals[i * m + j].clone();
                }
            }
            let got = p.eval(&point).unwrap();
            let want = det(m).eval(&vals).unwrap();
            assert!(got == want || got == -want);
        }
    }

    #[test]
    fn p_lambda_is_first_order_term_of_det() {
        // d/dt det(M_Λ + t M_S) at t=0 = Σ (M_S)_{ij} cof_{ij}(M_Λ)
        let n = 3;
        let nv = 9;
        let (sym, skew) = symmetric_skew_parts(n);
        let mut want = Poly::zero(nv);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor: Vec<Vec<Poly>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| skew[r][c].clone()).collect())
                    .collect();
                let cof = leibniz_det(&minor, nv);
                let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                want = &want + &(&sym[i][j] * &cof);
            }
        }
        let p = p_lambda(3).unwrap();
        assert_eq!(p, want);
        assert_eq!(p.homogeneous_degree().unwrap(), 3);
        assert!(p_lambda(4).is_err());
    }

    #[test]
    fn pfaffian_conventions() {
        let nv = 6;
        let a = Poly::var(nv, 0);
        let z = Poly::zero(nv);
        let m = vec![vec![z.clone(), a.clone()], vec![-a.clone(), z.clone()]];
        assert_eq!(pfaffian(&m, nv), a);
        // Pf^2 = det for a generic 4×4 skew matrix
        let vars: Vec<Poly> = (0..6).map(|i| Poly::var(nv, i)).collect();
        let idx = [[0, 0, 1, 2], [0, 0, 3, 4], [1, 3, 0, 5], [2, 4, 5, 0]];
        let m4: Vec<Vec<Poly>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if i == j {
                            z.clone()
                        } else if i < j {
                            vars[idx[i][j]].clone()
                        } else {
                            -vars[idx[i][j]].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let pf = pfaffian(&m4, nv);
        assert_eq!(&pf * &pf, leibniz_det(&m4, nv));
    }

    #[test]
    fn ryser_small_cases() {
        let r1 = ryser_decomposition(1).unwrap();
        assert_eq!(r1.terms.len(), 1);
        assert_eq!(r1.expand().unwrap(), perm(1));
        let r2 = ryser_decomposition(2).unwrap();
        assert_eq!(r2.terms.len(), 2);
        assert!(verify_chow(&r2, &perm(2)).unwrap());
        // 1/2 [(x11+x12)(x21+x22) - (x11-x12)(x21-x22)] after pulling signs out
        let r3 = ryser_decomposition(3).unwrap();
        assert_eq!(r3.terms.len(), 4);
        assert!(r3.terms.iter().all(|t| t.forms.len() == 3));
        assert!(verify_chow(&r3, &perm(3)).unwrap());
    }

    #[test]
    fn fischer_small_cases() {
        let f1 = fischer_decomposition(1).unwrap();
        assert_eq!(f1.expand().unwrap(), chow(1));
        let f2 = fischer_decomposition(2).unwrap();
        assert_eq!(f2.terms[0].coeff, Rational::from_pair(1, 4));
        assert_eq!(f2.terms[1].coeff, Rational::from_pair(-1, 4));
        assert!(verify_waring(&f2, &chow(2)).unwrap());
        assert_eq!(fischer_decomposition(3).unwrap().terms.len(), 4);
        assert!(verify_waring(&fischer_decomposition(4).unwrap(), &chow(4)).unwrap());
    }

    #[test]
    fn benor_small_cases() {
        let b = benor_decomposition(2, 1).unwrap();
        assert_eq!(b.terms.len(), 2);
        assert_eq!(b.terms[0].coeff, Rational::from_pair(1, 2));
        assert_eq!(b.terms[1].coeff, Rational::from_pair(-1, 2));
        let target = &Poly::var(3, 2) * &(&Poly::var(3, 0) + &Poly::var(3, 1));
        assert!(verify_chow(&b, &target).unwrap());
        assert!(verify_chow(&benor_decomposition(3, 3).unwrap(), &padded_elementary(3, 3)).unwrap());
        assert!(verify_chow(&benor_decomposition(3, 2).unwrap(), &padded_elementary(3, 2)).unwrap());
        assert!(benor_decomposition(3, 0).is_err());
        assert!(benor_decomposition(3, 4).is_err());
    }

    #[test]
    fn verifiers_reject() {
        let empty = ChowDecomposition { num_vars: 4, terms: vec![] };
        assert!(!verify_chow(&empty, &perm(2)).unwrap());
        assert!(verify_chow(&empty, &Poly::zero(4)).unwrap());
        assert!(verify_chow(&empty, &perm(3)).is_err());
        assert!(verify_det_expression(&perm2_witness(), &perm(2)).unwrap());
        assert!(!verify_det_expression(&perm2_witness(), &det(2)).unwrap());
    }

    #[test]
    fn circuit_size() {
        assert_eq!(chow_circuit_size(1, 2, 2), 7);
        assert_eq!(chow_circuit_size(5, 1, 0), 10);
        assert_eq!(chow_circuit_size(2, 3, 4), 32);
    }

    #[test]
    fn family_parsing_and_params() {
        assert_eq!("pascal-det".parse::<Family>().unwrap(), Family::PascalDet);
        assert!("nope".parse::<Family>().is_err());
        assert!(make(Family::Det, &[]).is_err());
        assert!(make(Family::Elementary, &[3, 2]).is_err());
        assert_eq!(make(Family::SumProduct, &[2, 3]).unwrap().len(), 3);
        // trace(XY) for 2×2 has 4 terms
        assert_eq!(make(Family::Imm, &[2, 2]).unwrap().len(), 4);
        assert_eq!(make(Family::Fermat, &[3, 3]).unwrap().len(), 3);
    }

    #[test]
    fn witness_json_round_trip() {
        let w = Witness::Chow(ryser_decomposition(2).unwrap());
        let text = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert!(back.verify(&perm(2)).unwrap());
    }
}
