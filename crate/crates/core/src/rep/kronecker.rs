use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{character_value, Partition};
use crate::error::{Error, Result};

fn same_size(ps: &[&Partition]) -> Result<u32> {
    let n = ps[0].size();
    if ps.iter().any(|p| p.size() != n) {
        let sizes: Vec<u32> = ps.iter().map(|p| p.size()).collect();
        return Err(Error::Dimension(format!("partition sizes differ: {sizes:?}")));
    }
    Ok(n)
}

fn exact_integer(sum: BigRational, what: &str) -> Result<BigInt> {
    if !sum.is_integer() {
        return Err(Error::Invalid(format!("{what} came out non-integral: {sum}")));
    }
    Ok(sum.to_integer())
}

/// `Σ_c f(c) / z_c` over all cycle types of `S_n`, summed in class order.
fn class_average(n: u32, f: impl Fn(&Partition) -> Result<BigInt> + Sync) -> Result<BigRational> {
    let terms = Partition::all(n)
        .par_iter()
        .map(|c| Ok(BigRational::new(f(c)?, c.centralizer_size())))
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.into_iter().fold(BigRational::zero(), |a, b| a + b))
}

/// `k_{πμν}`: multiplicity of the trivial representation in `[π]⊗[μ]⊗[ν]`.
pub fn kronecker(pi: &Partition, mu: &Partition, nu: &Partition) -> Result<BigInt> {
    let n = same_size(&[pi, mu, nu])?;
    let s = class_average(n, |c| {
        Ok(BigInt::from(character_value(pi, c)?)
            * character_value(mu, c)?
            * character_value(nu, c)?)
    })?;
    exact_integer(s, "Kronecker coefficient")
}

/// `sk^π_{μμ}`: multiplicity of `[π]` in the symmetric square `S²[μ]`.
pub fn symmetric_kronecker(pi: &Partition, mu: &Partition) -> Result<BigInt> {
    let n = same_size(&[pi, mu])?;
    let s = class_average(n, |c| {
        let chi_pi = BigInt::from(character_value(pi, c)?);
        let chi_mu = BigInt::from(character_value(mu, c)?);
        let chi_mu_sq = character_value(mu, &c.square_cycle_type())?;
        Ok(chi_pi * (&chi_mu * &chi_mu + chi_mu_sq))
    })?;
    exact_integer(s / BigInt::from(2), "symmetric Kronecker coefficient")
}

/// `c^π_{μν} = ⟨χ_π, Ind(χ_μ × χ_ν)⟩`.
pub fn littlewood_richardson(pi: &Partition, mu: &Partition, nu: &Partition) -> Result<BigInt> {
    if pi.size() != mu.size() + nu.size() {
        return Err(Error::Dimension(format!(
            "|π| = {} but |μ| + |ν| = {}",
            pi.size(),
            mu.size() + nu.size()
        )));
    }
    let nu_classes = Partition::all(nu.size());
    let terms = Partition::all(mu.size())
        .par_iter()
        .map(|c1| {
            let a = character_value(mu, c1)?;
            let mut acc = BigRational::zero();
            for c2 in &nu_classes {
                let b = character_value(nu, c2)?;
                let x = character_value(pi, &c1.union(c2))?;
                acc += BigRational::new(
                    BigInt::from(a) * b * x,
                    c1.centralizer_size() * c2.centralizer_size(),
                );
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let s = terms.into_iter().fold(BigRational::zero(), |a, b| a + b);
    exact_integer(s, "Littlewood-Richardson coefficient")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_and_sign_cases() {
        for mu in Partition::all(5) {
            assert_eq!(kronecker(&p("5"), &mu, &mu).unwrap(), BigInt::from(1));
            assert_eq!(
                kronecker(&Partition::column(5), &mu, &mu.conjugate()).unwrap(),
                BigInt::from(1)
            );
        }
        assert_eq!(kronecker(&p("2"), &p("1,1"), &p("1,1")).unwrap(), BigInt::from(1));
        assert!(kronecker(&p("2"), &p("1,1"), &p("1")).is_err());
    }

    #[test]
    fn symmetric_square_of_sign() {
        let s = p("1,1");
        assert_eq!(symmetric_kronecker(&p("2"), &s).unwrap(), BigInt::from(1));
        assert_eq!(symmetric_kronecker(&p("1,1"), &s).unwrap(), BigInt::from(0));
    }

    #[test]
    fn symmetric_plus_alternating_is_kronecker() {
        // S² ⊕ Λ² = ⊗², and Λ²[(2,1)] = sign
        let mu = p("2,1");
        for pi in Partition::all(3) {
            let k = kronecker(&pi, &mu, &mu).unwrap();
            let sk = symmetric_kronecker(&pi, &mu).unwrap();
            let alt = if pi == Partition::column(3) { 1 } else { 0 };
            assert_eq!(k - sk, BigInt::from(alt));
        }
    }

    #[test]
    fn rectangle_squares() {
        // [(2,2)] ⊗ [(2,2)] = [4] + [1^4] + [2,2]; the symmetric square drops [1^4]
        let mu = p("2,2");
        assert_eq!(kronecker(&p("1,1,1,1"), &mu, &mu).unwrap(), BigInt::from(1));
        assert_eq!(symmetric_kronecker(&p("1,1,1,1"), &mu).unwrap(), BigInt::from(0));
        assert_eq!(symmetric_kronecker(&p("4"), &mu).unwrap(), BigInt::from(1));
        assert_eq!(symmetric_kronecker(&p("2,2"), &mu).unwrap(), BigInt::from(1));
    }

    #[test]
    fn pieri_rule() {
        // c^π_{μ,(k)} = 1 iff π/μ is a horizontal strip of size k
        let mu = p("2,1");
        for pi in Partition::all(5) {
            let horizontal = pi.len() <= mu.len() + 1
                && (0..pi.len().max(mu.len())).all(|i| {
                    pi.part(i) >= mu.part(i) && (i == 0 || pi.part(i) <= mu.part(i - 1))
                });
            let want = BigInt::from(u8::from(horizontal));
            assert_eq!(littlewood_richardson(&pi, &mu, &p("2")).unwrap(), want, "{pi}");
        }
    }

    #[test]
    fn lr_known_value() {
        assert_eq!(
            littlewood_richardson(&p("3,2,1"), &p("2,1"), &p("2,1")).unwrap(),
            BigInt::from(2)
        );
    }
}
