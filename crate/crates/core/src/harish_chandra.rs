//! The Harish-Chandra projection `A^H -> R[h]` and the ghost-center image.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{diamond, is_anticentral, is_central, AlgebraElement, AlgebraError};
use crate::distinguished::{element_c1, element_c2, element_q2};
use crate::linalg;
use crate::scalar::{DynPolynomial, DynamicalScalar, Indeterminate, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HcError {
    #[error("element does not commute with H (a term has weight {0})")]
    NotInCentralizer(i64),
    #[error("projection has a non-polynomial coefficient")]
    NotPolynomial,
    #[error("element is not {0}")]
    NotGhost(&'static str),
    #[error("n must be a positive odd integer")]
    EvenShift,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `φ(a)`: a polynomial in `h` with coefficients in `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCImage {
    pub value: DynPolynomial,
}

impl HCImage {
    /// The same image written in `ĥ`.
    pub fn in_hhat(&self) -> DynPolynomial {
        self.value.to_hat()
    }

    /// Rewrites in `x = H - 1`, `y = h` when every coefficient is a
    /// polynomial in `H`.
    pub fn to_ghost(&self) -> Result<GhostPolynomial, HcError> {
        let mut out = GhostPolynomial::zero();
        let x_plus_one = GhostPolynomial::x() + GhostPolynomial::constant(Rational::one());
        for (j, c) in self.value.coeffs().iter().enumerate() {
            let p = c.as_polynomial().ok_or(HcError::NotPolynomial)?;
            let mut in_x = GhostPolynomial::zero();
            for coeff in p.coeffs().iter().rev() {
                in_x = &(&in_x * &x_plus_one) + &GhostPolynomial::constant(coeff.clone());
            }
            out = &out + &(&in_x * &GhostPolynomial::y().pow(j as u32));
        }
        Ok(out)
    }
}

impl fmt::Display for HCImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// Keeps the `R[h]` part of an element of the centralizer of `H`.
pub fn hc_project(a: &AlgebraElement) -> Result<HCImage, HcError> {
    let mut coeffs: Vec<DynamicalScalar> = Vec::new();
    for (m, c) in a.terms() {
        let w = m.weight();
        if w != 0 {
            return Err(HcError::NotInCentralizer(w));
        }
        if m.p == 0 && m.q == 0 && m.s == 0 && m.t == 0 {
            let r = m.r as usize;
            if coeffs.len() <= r {
                coeffs.resize(r + 1, DynamicalScalar::zero());
            }
            coeffs[r] = c.clone();
        }
    }
    Ok(HCImage {
        value: DynPolynomial::new(Indeterminate::H, coeffs),
    })
}

/// Checks `z₀(H + n, λ̂) = (-1)^parity z₀(H, λ̂)` at `λ̂ = ε (H + n - 1)(H - 1)`,
/// where `z₀` is the projection of `z` written in `ĥ`.
pub fn functional_equation_check(
    z: &AlgebraElement,
    ghost_parity: u8,
    n: i64,
    eps: i64,
) -> Result<bool, HcError> {
    if n <= 0 || n % 2 == 0 {
        return Err(HcError::EvenShift);
    }
    let ok = if ghost_parity.is_multiple_of(2) {
        is_central(z)?
    } else {
        is_anticentral(z)?
    };
    if !ok {
        return Err(HcError::NotGhost(if ghost_parity.is_multiple_of(2) {
            "central"
        } else {
            "anti-central"
        }));
    }
    let z0 = hc_project(z)?.in_hhat();
    let lambda_hat = DynamicalScalar::h_minus(1 - n)
        * DynamicalScalar::h_minus(1)
        * DynamicalScalar::from_int(eps.signum());
    let lhs = z0.shift(n).substitute(&lambda_hat);
    let rhs = z0.substitute(&lambda_hat);
    Ok(if ghost_parity.is_multiple_of(2) {
        lhs == rhs
    } else {
        lhs == -rhs
    })
}

/// A polynomial in `x = H - 1` and `y = h` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GhostPolynomial {
    /// `(i, j) -> coefficient of x^i y^j`
    terms: BTreeMap<(u32, u32), Rational>,
}

impl GhostPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn x() -> Self {
        Self::from_terms([((1, 0), Rational::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([((0, 1), Rational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (k, c) in iter {
            *terms.entry(k).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        GhostPolynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// `σ_ε: x -> ε y, y -> ε x`.
    pub fn sigma(&self, eps: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            let sign = if eps < 0 && (i + j) % 2 == 1 { -c } else { c.clone() };
            ((j, i), sign)
        }))
    }

    /// `x^2 + y^2`, `2xy` and `x^2 - y^2`.
    pub fn generators() -> [GhostPolynomial; 3] {
        let x2 = Self::x().pow(2);
        let y2 = Self::y().pow(2);
        [
            &x2 + &y2,
            (&Self::x() * &Self::y()).scale(&Rational::from_integer(2.into())),
            &x2 - &y2,
        ]
    }
}

impl std::ops::Add for &GhostPolynomial {
    type Output = GhostPolynomial;
    fn add(self, rhs: &GhostPolynomial) -> GhostPolynomial {
        GhostPolynomial::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }
}

impl std::ops::Add for GhostPolynomial {
    type Output = GhostPolynomial;
    fn add(self, rhs: GhostPolynomial) -> GhostPolynomial {
        &self + &rhs
    }
}

impl std::ops::Sub for &GhostPolynomial {
    type Output = GhostPolynomial;
    fn sub(self, rhs: &GhostPolynomial) -> GhostPolynomial {
        self + &rhs.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &GhostPolynomial {
    type Output = GhostPolynomial;
    fn mul(self, rhs: &GhostPolynomial) -> GhostPolynomial {
        let mut out = Vec::new();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.push(((i + k, j + l), a * b));
            }
        }
        GhostPolynomial::from_terms(out)
    }
}

impl fmt::Display for GhostPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                factors.push(abs.to_string());
            }
            for (v, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Where a polynomial sits relative to the ghost-center image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GhostMembership {
    Central,
    AntiCentral,
    Mixed {
        central: GhostPolynomial,
        anticentral: GhostPolynomial,
    },
    NotInGhostImage,
}

/// `(x^2+y^2)^a (2xy)^b`, optionally times `x^2 - y^2`, for `2a + 2b` (+2) = d.
fn spanning_set(d: u32) -> (Vec<GhostPolynomial>, Vec<GhostPolynomial>) {
    let [s, p, q] = GhostPolynomial::generators();
    let block = |deg: u32| -> Vec<GhostPolynomial> {
        if deg % 2 == 1 {
            return Vec::new();
        }
        let k = deg / 2;
        (0..=k).map(|a| &s.pow(a) * &p.pow(k - a)).collect()
    };
    let central = block(d);
    let anti = if d >= 2 {
        block(d - 2).iter().map(|m| m * &q).collect()
    } else {
        Vec::new()
    };
    (central, anti)
}

fn coefficient_vector(g: &GhostPolynomial, d: u32) -> Vec<Rational> {
    (0..=d).map(|i| g.coeff(i, d - i)).collect()
}

/// Decides membership in `Q[x²+y², 2xy] ⊕ Q[x²+y², 2xy](x²−y²)`.
pub fn ghost_membership(g: &GhostPolynomial) -> GhostMembership {
    let mut central = GhostPolynomial::zero();
    let mut anti = GhostPolynomial::zero();
    for d in 0..=g.total_degree().unwrap_or(0) {
        let part = g.homogeneous_part(d);
        if part.is_zero() {
            continue;
        }
        let (cs, qs) = spanning_set(d);
        let basis: Vec<GhostPolynomial> = cs.iter().chain(qs.iter()).cloned().collect();
        let columns: Vec<Vec<Rational>> = basis.iter().map(|b| coefficient_vector(b, d)).collect();
        if columns.is_empty() {
            return GhostMembership::NotInGhostImage;
        }
        let a = linalg::from_columns(&columns);
        let Some(sol) = linalg::solve(&a, &coefficient_vector(&part, d)) else {
            return GhostMembership::NotInGhostImage;
        };
        for (k, coeff) in sol.iter().enumerate() {
            let piece = basis[k].scale(coeff);
            if k < cs.len() {
                central = &central + &piece;
            } else {
                anti = &anti + &piece;
            }
        }
    }
    match (central.is_zero(), anti.is_zero()) {
        (_, true) => GhostMembership::Central,
        (true, false) => GhostMembership::AntiCentral,
        (false, false) => GhostMembership::Mixed {
            central,
            anticentral: anti,
        },
    }
}

/// Exponent triples `(a, b, c)` with `a + b + c <= d`.
fn exponent_triples(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for total in 0..=d {
        for a in 0..=total {
            for b in 0..=total - a {
                out.push((a, b, total - a - b));
            }
        }
    }
    out
}

/// Projections of all products `C1^a C2^b Q2^c` with `a + b + c <= d`,
/// computed through the diamond product.
pub fn ghost_monomial_images(d: u32) -> Result<Vec<((u32, u32, u32), GhostPolynomial)>, HcError> {
    let gens = [element_c1(), element_c2(), element_q2()];
    let mut out = Vec::new();
    for (a, b, c) in exponent_triples(d) {
        let elem = [(0, a), (1, b), (2, c)]
            .iter()
            .fold(AlgebraElement::one(), |acc, &(i, e)| diamond(&acc, &gens[i].pow(e)));
        out.push(((a, b, c), hc_project(&elem)?.to_ghost()?));
    }
    Ok(out)
}

/// Finite witness of injectivity up to degree `d`: the only linear relations
/// among the projections of `C1^a C2^b Q2^c` are multiples of
/// `Q2^2 - C2^2 + C1^2`, and those multiples vanish in the algebra.
pub fn hc_injectivity_witness(max_degree: u32) -> Result<bool, HcError> {
    let images = ghost_monomial_images(max_degree)?;
    let keys: Vec<(u32, u32)> = {
        let mut ks: Vec<(u32, u32)> = images
            .iter()
            .flat_map(|(_, g)| g.terms().map(|(k, _)| *k))
            .collect();
        ks.sort();
        ks.dedup();
        ks
    };
    let columns: Vec<Vec<Rational>> = images
        .iter()
        .map(|(_, g)| keys.iter().map(|&(i, j)| g.coeff(i, j)).collect())
        .collect();
    let rank = linalg::rank(&linalg::from_columns(&columns));
    let expected_kernel = if max_degree >= 2 {
        exponent_triples(max_degree - 2).len()
    } else {
        0
    };
    if rank != images.len() - expected_kernel {
        return Ok(false);
    }
    let [c1, c2, q2] = [element_c1(), element_c2(), element_q2()];
    let relation = &(&diamond(&q2, &q2) - &diamond(&c2, &c2)) + &diamond(&c1, &c1);
    Ok(relation.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distinguished::{element_c1, element_c2, element_q2};
    use crate::scalar::int;

    fn two_xy() -> GhostPolynomial {
        (&GhostPolynomial::x() * &GhostPolynomial::y()).scale(&int(2))
    }

    #[test]
    fn projections_of_casimirs() {
        let [s, p, q] = GhostPolynomial::generators();
        assert_eq!(hc_project(&element_c1()).unwrap().to_ghost().unwrap(), p);
        assert_eq!(hc_project(&element_c2()).unwrap().to_ghost().unwrap(), s);
        assert_eq!(hc_project(&element_q2()).unwrap().to_ghost().unwrap(), q);
        assert_eq!(p, two_xy());
    }

    #[test]
    fn projection_requires_weight_zero() {
        let x = AlgebraElement::generator(crate::algebra::Generator::Xp1);
        assert_eq!(hc_project(&x), Err(HcError::NotInCentralizer(1)));
        let f = AlgebraElement::scalar(DynamicalScalar::h());
        assert_eq!(
            hc_project(&f).unwrap().value,
            DynPolynomial::constant(Indeterminate::H, DynamicalScalar::h())
        );
    }

    #[test]
    fn functional_equation() {
        assert!(functional_equation_check(&element_c1(), 0, 1, 1).unwrap());
        assert!(functional_equation_check(&element_c2(), 0, 3, -1).unwrap());
        for n in [1, 3, 5] {
            for eps in [1, -1] {
                assert!(functional_equation_check(&element_q2(), 1, n, eps).unwrap());
            }
        }
        assert_eq!(
            functional_equation_check(&element_c1(), 0, 2, 1),
            Err(HcError::EvenShift)
        );
    }

    #[test]
    fn membership() {
        let [s, p, q] = GhostPolynomial::generators();
        assert_eq!(ghost_membership(&p), GhostMembership::Central);
        assert_eq!(ghost_membership(&q), GhostMembership::AntiCentral);
        assert_eq!(ghost_membership(&GhostPolynomial::x()), GhostMembership::NotInGhostImage);
        assert_eq!(
            ghost_membership(&GhostPolynomial::x().pow(2)),
            GhostMembership::Mixed {
                central: s.scale(&Rational::new(1.into(), 2.into())),
                anticentral: q.scale(&Rational::new(1.into(), 2.into())),
            }
        );
    }

    #[test]
    fn sigma_acts_as_expected() {
        let [s, p, q] = GhostPolynomial::generators();
        for eps in [1, -1] {
            assert_eq!(s.sigma(eps), s);
            assert_eq!(p.sigma(eps), p);
            assert_eq!(q.sigma(eps), q.scale(&int(-1)));
        }
        let x = GhostPolynomial::x();
        assert_eq!(x.sigma(1).sigma(-1), x.scale(&int(-1)));
    }

    #[test]
    fn injectivity_small_degrees() {
        assert!(hc_injectivity_witness(0).unwrap());
        assert!(hc_injectivity_witness(1).unwrap());
        assert!(hc_injectivity_witness(2).unwrap());
    }
}
