//! Casimir-type elements and the family `F_n(H, ĥ)`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use thiserror::Error;

use crate::algebra::{diamond, hat_generator, AlgebraElement, Generator, Monomial};
use crate::scalar::{DynPolynomial, DynamicalScalar, Indeterminate, RatPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FnError {
    #[error("division by hhat^2 left a remainder at n = {0}")]
    InexactDivision(u32),
    #[error("normalized product is not a left multiple of Xm1^{0}")]
    ShapeMismatch(u32),
    #[error("n must be at least 1")]
    ZeroIndex,
}

fn s(n: i64) -> DynamicalScalar {
    DynamicalScalar::from_int(n)
}

fn poly(c: &[i64]) -> DynamicalScalar {
    DynamicalScalar::from_poly(RatPolynomial::from_i64s(c))
}

/// `C1 = 2(H - 1) h`.
pub fn element_c1() -> AlgebraElement {
    AlgebraElement::term(poly(&[-2, 2]), Monomial::new(0, 0, 1, 0, 0))
}

/// `C2 = (4 + 4/(H-2)) Xm2 Xp2 - (2 - 1/(H-1)) Xm1 Xp1 + h h + (H-1)^2`.
pub fn element_c2() -> AlgebraElement {
    AlgebraElement::from_terms([
        (
            Monomial::new(1, 0, 0, 0, 1),
            &s(4) + &(s(4) * DynamicalScalar::inv_h_minus(2)),
        ),
        (
            Monomial::new(0, 1, 0, 1, 0),
            &DynamicalScalar::inv_h_minus(1) - &s(2),
        ),
        (Monomial::new(0, 0, 2, 0, 0), s(1)),
        (Monomial::ONE, poly(&[1, -2, 1])),
    ])
}

/// `Q2 = 4(H-1)/(H-2) Xm2 Xp2 - (2(H-2) + 1/(H-1)) Xm1 Xp1 - h h + (H-1)^2`.
pub fn element_q2() -> AlgebraElement {
    let inv1 = DynamicalScalar::inv_h_minus(1);
    AlgebraElement::from_terms([
        (Monomial::new(1, 0, 0, 0, 1), poly(&[-4, 4]) * DynamicalScalar::inv_h_minus(2)),
        (Monomial::new(0, 1, 0, 1, 0), -(&poly(&[-4, 2]) + &inv1)),
        (Monomial::new(0, 0, 2, 0, 0), s(-1)),
        (Monomial::ONE, poly(&[1, -2, 1])),
    ])
}

/// Looks up a distinguished element by name (`C1`, `C2`, `Q2`, `hhat`, or a
/// hatted generator such as `Xp1hat`).
pub fn element_by_name(name: &str) -> Option<AlgebraElement> {
    match name {
        "C1" => Some(element_c1()),
        "C2" => Some(element_c2()),
        "Q2" => Some(element_q2()),
        "hhat" => Some(hat_generator(Generator::Hbar)),
        _ => {
            let base = name.strip_suffix("hat")?;
            Generator::from_ascii(base).map(hat_generator)
        }
    }
}

/// `F_n(H, ĥ)`, a polynomial in `ĥ` of degree at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnFamily {
    pub n: u32,
    pub value: DynPolynomial,
}

impl FnFamily {
    /// `F̂_n = H (H-1)^2 F_n`.
    pub fn hat_normalized(&self) -> DynPolynomial {
        self.value.scale(&poly(&[0, 1, -2, 1]))
    }

    pub fn coefficient(&self, i: usize) -> DynamicalScalar {
        self.value.coeff(i)
    }
}

fn hhat_poly(coeffs: Vec<DynamicalScalar>) -> DynPolynomial {
    DynPolynomial::new(Indeterminate::HHat, coeffs)
}

/// `1 / (H (H-1)^2)`.
fn norm_inverse() -> DynamicalScalar {
    DynamicalScalar::inv_h_minus(0) * DynamicalScalar::inv_h_minus(1).pow(2)
}

/// `c_n^2(H)` in closed form.
pub fn c2_formula(n: u32) -> DynamicalScalar {
    let n = i64::from(n);
    if n % 2 == 1 {
        -norm_inverse()
    } else {
        let ratio = DynamicalScalar::h().pow(2) * DynamicalScalar::inv_h_minus(n).pow(2);
        (&ratio - &s(1)) * norm_inverse()
    }
}

/// `c_n^0(H)` in closed form.
pub fn c0_formula(n: u32) -> DynamicalScalar {
    let n = i64::from(n);
    if n % 2 == 1 {
        DynamicalScalar::h()
            * DynamicalScalar::h_minus(n).pow(2)
            * DynamicalScalar::inv_h_minus(1).pow(2)
    } else {
        DynamicalScalar::zero()
    }
}

/// The closed form of `F_n`.
pub fn f_n_closed(n: u32) -> FnFamily {
    let value = if n == 0 {
        hhat_poly(Vec::new())
    } else {
        hhat_poly(vec![c0_formula(n), DynamicalScalar::zero(), c2_formula(n)])
    };
    FnFamily { n, value }
}

fn recursion_cache() -> &'static RwLock<HashMap<u32, DynPolynomial>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, DynPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `F_n` from the difference recursion
/// `F_{n+1} = -H/(H-1) F_n(H-1) - H(H-2)(H-3)^2/(H-1) ĥ^{-2} F_n(H-1) F_{n-1}(H-2) - ĥ^2/(H(H-1)^2) + H`.
pub fn f_n_recursive(n: u32) -> Result<FnFamily, FnError> {
    if let Some(v) = recursion_cache().read().expect("cache poisoned").get(&n) {
        return Ok(FnFamily {
            n,
            value: v.clone(),
        });
    }
    let value = match n {
        0 => hhat_poly(Vec::new()),
        1 => hhat_poly(vec![DynamicalScalar::h(), DynamicalScalar::zero(), -norm_inverse()]),
        _ => {
            let prev = f_n_recursive(n - 1)?.value.shift(-1);
            let prev2 = f_n_recursive(n - 2)?.value.shift(-2);
            let inv1 = DynamicalScalar::inv_h_minus(1);
            let product = &prev * &prev2;
            let coeffs = product.coeffs();
            if coeffs.iter().take(2).any(|c| !c.is_zero()) {
                return Err(FnError::InexactDivision(n));
            }
            let quotient = hhat_poly(coeffs.iter().skip(2).cloned().collect());
            let a = -(DynamicalScalar::h() * inv1.clone());
            let b = -(poly(&[0, 1]) * poly(&[-2, 1]) * poly(&[-3, 1]).pow(2) * inv1);
            let tail = hhat_poly(vec![DynamicalScalar::h(), DynamicalScalar::zero(), -norm_inverse()]);
            &(&prev.scale(&a) + &quotient.scale(&b)) + &tail
        }
    };
    recursion_cache()
        .write()
        .expect("cache poisoned")
        .insert(n, value.clone());
    Ok(FnFamily { n, value })
}

/// Drops every term lying in `A Xp1 + A Xp2` (terms with `s > 0` or
/// `t > 0`); with `include_hhat`, also terms in `A ĥ` (`r > 0`).
pub fn reduce_mod_left_ideal(a: &AlgebraElement, include_hhat: bool) -> AlgebraElement {
    a.filter_terms(|m| m.s == 0 && m.t == 0 && !(include_hhat && m.r > 0))
}

/// `F_n` computed by normalizing `Xp1 ◇ Xm1^n` with the rewriting engine.
pub fn f_n_oracle(n: u32) -> Result<FnFamily, FnError> {
    if n == 0 {
        return Err(FnError::ZeroIndex);
    }
    let xm1 = AlgebraElement::generator(Generator::Xm1);
    let lower = xm1.pow(n - 1);
    // Xm1^{n-1} normalizes to a single term u(H) Xm2^p Xm1^q h^p
    let (base, unit) = match lower.terms().next() {
        Some((m, u)) if lower.len() == 1 => (*m, u.clone()),
        _ => return Err(FnError::ShapeMismatch(n - 1)),
    };
    let residue = reduce_mod_left_ideal(
        &diamond(&AlgebraElement::generator(Generator::Xp1), &diamond(&xm1, &lower)),
        false,
    );
    let mut coeffs = Vec::new();
    for (m, c) in residue.terms() {
        if m.r < base.r || *m != (Monomial { r: m.r, ..base }) {
            return Err(FnError::ShapeMismatch(n - 1));
        }
        let r = (m.r - base.r) as usize;
        if coeffs.len() <= r {
            coeffs.resize(r + 1, DynamicalScalar::zero());
        }
        // ĥ^r passes Xm1^{n-1} as (H - n)^r h^r
        let scale = (unit.clone() * DynamicalScalar::h_minus(i64::from(n)).pow(r as u32))
            .invert()
            .expect("unit");
        coeffs[r] = c * &scale;
    }
    Ok(FnFamily {
        n,
        value: hhat_poly(coeffs),
    })
}

/// Checks `x̂₂ ◇ x̂₋₂^n ≡ -n H^2 (H - n + 1) x̂₋₂^{n-1}` modulo
/// `A x̂₁ + A x̂₂ + A ĥ`.
pub fn check_even_congruence(n: u32) -> bool {
    let xm2 = hat_generator(Generator::Xm2);
    let lower = xm2.pow(n.saturating_sub(1));
    let lhs = reduce_mod_left_ideal(
        &diamond(&hat_generator(Generator::Xp2), &xm2.pow(n)),
        true,
    );
    let n = i64::from(n);
    let factor = -(s(n) * DynamicalScalar::h().pow(2) * DynamicalScalar::h_minus(n - 1));
    let rhs = if n == 0 {
        AlgebraElement::zero()
    } else {
        lower.scale(&factor)
    };
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_anticentral, is_central};

    #[test]
    fn casimirs_are_central() {
        assert!(is_central(&element_c1()).unwrap());
        assert!(is_central(&element_c2()).unwrap());
        assert!(!is_central(&element_q2()).unwrap());
        assert!(is_anticentral(&element_q2()).unwrap());
    }

    #[test]
    fn scasimir_square() {
        let q = element_q2();
        let c1 = element_c1();
        let c2 = element_c2();
        let lhs = diamond(&q, &q);
        let rhs = &diamond(&c2, &c2) - &diamond(&c1, &c1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn closed_form_small_cases() {
        assert!(f_n_closed(0).value.is_zero());
        let f1 = f_n_closed(1);
        assert_eq!(f1.coefficient(0), DynamicalScalar::h());
        assert_eq!(f1.coefficient(2), -norm_inverse());
    }

    #[test]
    fn recursion_matches_closed_form() {
        for n in 0..=12 {
            let rec = f_n_recursive(n).unwrap();
            assert_eq!(rec, f_n_closed(n), "n = {n}");
            assert!(rec.coefficient(1).is_zero());
        }
    }

    #[test]
    fn oracle_matches_closed_form() {
        for n in 1..=6 {
            assert_eq!(f_n_oracle(n).unwrap(), f_n_closed(n), "n = {n}");
        }
        assert_eq!(f_n_oracle(0), Err(FnError::ZeroIndex));
    }

    #[test]
    fn even_congruence() {
        for n in 0..=4 {
            assert!(check_even_congruence(n), "n = {n}");
        }
    }

    #[test]
    fn names() {
        assert_eq!(element_by_name("C1"), Some(element_c1()));
        assert_eq!(
            element_by_name("Xp1hat"),
            Some(hat_generator(Generator::Xp1))
        );
        assert_eq!(element_by_name("nope"), None);
    }
}
