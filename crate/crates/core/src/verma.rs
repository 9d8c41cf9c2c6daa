//! Verma modules, the Shapovalov form, and the finite-dimensional
//! irreducible representations `L(λ, μ)`.
//!
//! `M(λ)` has the right `R`-basis `v_{p,q} = Xm2^p Xm1^q . v_λ`. Coefficients
//! are stored on the right; a left scalar `f(H)` passes a basis vector as
//! `f(H) v_{p,q} = v_{p,q} . f(H + 2p + q)`.

use std::collections::BTreeMap;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{
    diamond, relation_table, theta, AlgebraElement, Generator, Monomial,
};
use crate::distinguished::{element_c1, element_c2, element_q2, f_n_closed};
use crate::linalg::{self, Matrix};
use crate::scalar::{as_small_integer, DynamicalScalar, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VermaError {
    #[error("vectors belong to different highest weights")]
    WeightMismatch,
    #[error("no zero of F_n(H+n-1, lambda_hat) for n <= {0}")]
    BoundExceeded(u32),
    #[error("mu = {0} is an integer")]
    IntegerMu(Rational),
    #[error("lambda^2 = (mu + n)^2 has no positive odd solution n")]
    NotFiniteDimensional,
    #[error("relation {0} fails on the constructed matrices")]
    RelationViolated(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The `h`-eigenvalue `λ ∈ R` of the highest weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeight {
    pub lambda: DynamicalScalar,
}

impl HighestWeight {
    pub fn new(lambda: DynamicalScalar) -> Self {
        HighestWeight { lambda }
    }

    pub fn constant(lambda: Rational) -> Self {
        Self::new(DynamicalScalar::constant(lambda))
    }

    /// `λ̂ = (H - 1) λ`.
    pub fn lambda_hat(&self) -> DynamicalScalar {
        DynamicalScalar::h_minus(1) * self.lambda.clone()
    }
}

/// A vector of `M(λ)`: `(p, q) -> right coefficient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaElement {
    pub weight: HighestWeight,
    terms: BTreeMap<(u32, u8), DynamicalScalar>,
}

impl VermaElement {
    pub fn zero(weight: &HighestWeight) -> Self {
        VermaElement {
            weight: weight.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `v_{p,q}`.
    pub fn basis(weight: &HighestWeight, p: u32, q: u8) -> Self {
        Self::from_terms(weight, [((p, q), DynamicalScalar::one())])
    }

    pub fn highest(weight: &HighestWeight) -> Self {
        Self::basis(weight, 0, 0)
    }

    /// `Xm1^k . v_λ`.
    pub fn xm1_power(weight: &HighestWeight, k: u32) -> Self {
        let word = AlgebraElement::generator(Generator::Xm1).pow(k);
        verma_act(&word, &Self::highest(weight))
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u8), DynamicalScalar)>>(
        weight: &HighestWeight,
        iter: I,
    ) -> Self {
        let mut terms: BTreeMap<(u32, u8), DynamicalScalar> = BTreeMap::new();
        for (k, c) in iter {
            let slot = terms.entry(k).or_default();
            *slot = &*slot + &c;
        }
        terms.retain(|_, c| !c.is_zero());
        VermaElement {
            weight: weight.clone(),
            terms,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u8), &DynamicalScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: u32, q: u8) -> DynamicalScalar {
        self.terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Right multiplication `u . f`.
    pub fn right_scale(&self, f: &DynamicalScalar) -> Self {
        Self::from_terms(&self.weight, self.terms.iter().map(|(k, c)| (*k, c * f)))
    }

    /// Left multiplication `f(H) . u`.
    pub fn left_scale(&self, f: &DynamicalScalar) -> Self {
        Self::from_terms(
            &self.weight,
            self.terms
                .iter()
                .map(|(&(p, q), c)| ((p, q), &f.shift(2 * i64::from(p) + i64::from(q)) * c)),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(
            &self.weight,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }
}

/// `a . v` computed by normalizing `a ◇ Xm2^p Xm1^q` and letting `Xp1`,
/// `Xp2` kill and `h` act by `λ`.
pub fn verma_act(a: &AlgebraElement, v: &VermaElement) -> VermaElement {
    let lambda = &v.weight.lambda;
    let mut out = Vec::new();
    for (&(p, q), f) in v.terms() {
        let word = AlgebraElement::monomial(Monomial::new(p, q, 0, 0, 0));
        for (m, g) in diamond(a, &word).terms() {
            if m.s > 0 || m.t > 0 {
                continue;
            }
            let shift = 2 * i64::from(m.p) + i64::from(m.q);
            let coeff = g.shift(shift) * lambda.pow(m.r) * f.clone();
            out.push(((m.p, m.q), coeff));
        }
    }
    VermaElement::from_terms(&v.weight, out)
}

/// `⟨v_{p,q}, v_{p',q'}⟩`: the `v_λ`-coefficient of `Θ(x^{pq}) ◇ x^{p'q'} . v_λ`.
fn basis_pairing(weight: &HighestWeight, a: (u32, u8), b: (u32, u8)) -> DynamicalScalar {
    let left = theta(&AlgebraElement::monomial(Monomial::new(a.0, a.1, 0, 0, 0)));
    let right = VermaElement::basis(weight, b.0, b.1);
    verma_act(&left, &right).coefficient(0, 0)
}

/// The Shapovalov form, right `R`-bilinear in both arguments.
pub fn shapovalov(u1: &VermaElement, u2: &VermaElement) -> Result<DynamicalScalar, VermaError> {
    if u1.weight != u2.weight {
        return Err(VermaError::WeightMismatch);
    }
    let mut acc = DynamicalScalar::zero();
    for (&a, f) in u1.terms() {
        for (&b, g) in u2.terms() {
            let pair = basis_pairing(&u1.weight, a, b);
            acc = &acc + &(pair * f.clone() * g.clone());
        }
    }
    Ok(acc)
}

/// Gram matrix of the first `size` vectors of the `Xm1`-power basis, or of
/// the `(p, q)` basis when `λ = 0`.
pub fn gram_matrix(weight: &HighestWeight, size: usize) -> Vec<Vec<DynamicalScalar>> {
    let vectors: Vec<VermaElement> = if weight.lambda.is_zero() {
        (0..size)
            .map(|i| VermaElement::basis(weight, (i / 2) as u32, (i % 2) as u8))
            .collect()
    } else {
        (0..size)
            .map(|k| VermaElement::xm1_power(weight, k as u32))
            .collect()
    };
    vectors
        .iter()
        .map(|u| {
            vectors
                .iter()
                .map(|w| shapovalov(u, w).expect("same weight"))
                .collect()
        })
        .collect()
}

/// `F_1(H, λ̂) F_2(H+1, λ̂) ... F_n(H+n-1, λ̂)`.
pub fn shapovalov_product(weight: &HighestWeight, n: u32) -> DynamicalScalar {
    let lh = weight.lambda_hat();
    (1..=n).fold(DynamicalScalar::one(), |acc, i| {
        acc * f_n_closed(i).value.shift(i64::from(i) - 1).substitute(&lh)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalOrder {
    Nondegenerate,
    DegenerateAt(u32),
}

pub const DEFAULT_RADICAL_BOUND: u32 = 64;

/// The least `n` with `F_n(H + n - 1, λ̂) = 0`.
pub fn radical_order(weight: &HighestWeight, bound: u32) -> Result<RadicalOrder, VermaError> {
    // F_n(., 0) vanishes for even n, but then Xm1^2 v = 0 and the form is
    // read on the (p, q) basis instead
    if weight.lambda.is_zero() {
        return Ok(RadicalOrder::Nondegenerate);
    }
    let lh = weight.lambda_hat();
    for n in 1..=bound {
        if f_n_closed(n)
            .value
            .shift(i64::from(n) - 1)
            .substitute(&lh)
            .is_zero()
        {
            return Ok(RadicalOrder::DegenerateAt(n));
        }
    }
    Err(VermaError::BoundExceeded(bound))
}

/// Matrices of `L(λ, μ)` on the basis `e_k = Xm1^k . v̄`, `k < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepData {
    pub lambda: Rational,
    pub mu: Rational,
    pub n: usize,
    /// Indexed in [`Generator::ALL`] order.
    pub matrices: [Matrix; 5],
    /// Diagonal action of `H`: `μ + 1 + k` on `e_k`.
    pub h_matrix: Matrix,
}

impl IrrepData {
    pub fn generator_matrix(&self, g: Generator) -> &Matrix {
        &self.matrices[g as usize]
    }

    /// `diag(f(μ + 1 + k))`, the left action of `f(H)`.
    pub fn scalar_matrix(&self, f: &DynamicalScalar) -> Result<Matrix, ScalarError> {
        let mut m = linalg::zeros(self.n, self.n);
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = f.eval(&self.h_matrix[k][k])?;
        }
        Ok(m)
    }

    pub fn monomial_matrix(&self, m: &Monomial) -> Matrix {
        m.word()
            .into_iter()
            .fold(linalg::identity(self.n), |acc, g| {
                linalg::mat_mul(&acc, self.generator_matrix(g))
            })
    }

    pub fn element_matrix(&self, a: &AlgebraElement) -> Result<Matrix, ScalarError> {
        let mut acc = linalg::zeros(self.n, self.n);
        for (m, f) in a.terms() {
            let term = linalg::mat_mul(&self.scalar_matrix(f)?, &self.monomial_matrix(m));
            acc = linalg::mat_add(&acc, &term);
        }
        Ok(acc)
    }

    /// `diag((-1)^k)`.
    pub fn parity_matrix(&self) -> Matrix {
        let mut m = linalg::identity(self.n);
        for (k, row) in m.iter_mut().enumerate() {
            if k % 2 == 1 {
                row[k] = -Rational::one();
            }
        }
        m
    }

    /// Names of relations that fail as matrix identities.
    pub fn relation_failures(&self) -> Result<Vec<String>, ScalarError> {
        let mut failures = Vec::new();
        let h = DynamicalScalar::h();
        for g in Generator::ALL {
            // x f(H) = f(H + k) x, and h f(H) = f(H) h
            let lhs = linalg::mat_mul(self.generator_matrix(g), &self.scalar_matrix(&h)?);
            let rhs = linalg::mat_mul(
                &self.scalar_matrix(&h.shift(g.shift()))?,
                self.generator_matrix(g),
            );
            if lhs != rhs {
                failures.push(format!("{}*f", g.ascii()));
            }
        }
        for rel in relation_table() {
            let lhs = linalg::mat_mul(
                self.generator_matrix(rel.left),
                self.generator_matrix(rel.right),
            );
            if lhs != self.element_matrix(&rel.rhs)? {
                failures.push(rel.name.to_string());
            }
        }
        let top = (0..self.n).fold(linalg::identity(self.n), |acc, _| {
            linalg::mat_mul(&acc, self.generator_matrix(Generator::Xm1))
        });
        if !linalg::is_zero_matrix(&top) {
            failures.push("Xm1^n".to_string());
        }
        Ok(failures)
    }
}

/// `C1 -> 2λμ`, `C2 -> λ² + μ²`, `Q2 -> (μ² - λ²)` times the parity sign.
pub fn ghost_scalars(lambda: &Rational, mu: &Rational) -> (Rational, Rational, Rational) {
    let two = Rational::from_integer(2.into());
    (
        &two * lambda * mu,
        lambda * lambda + mu * mu,
        mu * mu - lambda * lambda,
    )
}

/// The dimension of `L(λ, μ)` when finite: the least positive odd `n` with
/// `λ² = (μ + n)²`.
pub fn irrep_dimension(lambda: &Rational, mu: &Rational) -> Result<u32, VermaError> {
    if mu.is_integer() {
        return Err(VermaError::IntegerMu(mu.clone()));
    }
    [lambda - mu, -lambda - mu]
        .iter()
        .filter_map(as_small_integer)
        .filter(|n| *n > 0 && n % 2 == 1)
        .min()
        .map(|n| n as u32)
        .ok_or(VermaError::NotFiniteDimensional)
}

/// Builds `L(λ, μ)` and checks every defining relation on the matrices.
pub fn build_irrep(lambda: &Rational, mu: &Rational) -> Result<IrrepData, VermaError> {
    let n = irrep_dimension(lambda, mu)? as usize;
    let weight = HighestWeight::constant(lambda.clone());
    let h_value = mu + Rational::one();
    // Xm1^k v = v_{p,q} . b_k with 2p + q = k
    let scales: Vec<DynamicalScalar> = (0..=n as u32 + 1)
        .map(|k| {
            VermaElement::xm1_power(&weight, k).coefficient(k / 2, (k % 2) as u8)
        })
        .collect();
    let mut matrices: [Matrix; 5] = std::array::from_fn(|_| linalg::zeros(n, n));
    for (gi, g) in Generator::ALL.into_iter().enumerate() {
        let ga = AlgebraElement::generator(g);
        for k in 0..n {
            let image = verma_act(&ga, &VermaElement::xm1_power(&weight, k as u32));
            for (&(p, q), c) in image.terms() {
                let target = (2 * p + u32::from(q)) as usize;
                if target >= n {
                    continue;
                }
                let coeff = c * &scales[target].invert()?;
                matrices[gi][target][k] = coeff.eval(&h_value)?;
            }
        }
    }
    let mut h_matrix = linalg::zeros(n, n);
    for (k, row) in h_matrix.iter_mut().enumerate() {
        row[k] = &h_value + Rational::from_integer((k as i64).into());
    }
    let data = IrrepData {
        lambda: lambda.clone(),
        mu: mu.clone(),
        n,
        matrices,
        h_matrix,
    };
    if let Some(bad) = data.relation_failures()?.into_iter().next() {
        return Err(VermaError::RelationViolated(bad));
    }
    Ok(data)
}

/// Matrices of `C1`, `C2`, `Q2` on an irrep.
pub fn ghost_matrices(data: &IrrepData) -> Result<[Matrix; 3], ScalarError> {
    Ok([
        data.element_matrix(&element_c1())?,
        data.element_matrix(&element_c2())?,
        data.element_matrix(&element_q2())?,
    ])
}

/// Whether the ghost generators act by the scalars of [`ghost_scalars`].
pub fn ghost_scalars_match(data: &IrrepData) -> Result<bool, ScalarError> {
    let [c1, c2, q2] = ghost_matrices(data)?;
    let (s1, s2, s3) = ghost_scalars(&data.lambda, &data.mu);
    let id = linalg::identity(data.n);
    Ok(c1 == linalg::mat_scale(&id, &s1)
        && c2 == linalg::mat_scale(&id, &s2)
        && q2 == linalg::mat_scale(&data.parity_matrix(), &s3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn const_weight(n: i64, d: i64) -> HighestWeight {
        HighestWeight::constant(rat(n, d))
    }

    #[test]
    fn highest_weight_vector() {
        let w = const_weight(3, 2);
        let v = VermaElement::highest(&w);
        let hv = verma_act(&AlgebraElement::generator(Generator::Hbar), &v);
        assert_eq!(hv, v.right_scale(&DynamicalScalar::constant(rat(3, 2))));
        assert!(verma_act(&AlgebraElement::generator(Generator::Xp1), &v).is_zero());
        assert_eq!(shapovalov(&v, &v).unwrap(), DynamicalScalar::one());
    }

    #[test]
    fn xp1_on_xm1_gives_f1() {
        let w = const_weight(3, 2);
        let u = VermaElement::xm1_power(&w, 1);
        let back = verma_act(&AlgebraElement::generator(Generator::Xp1), &u);
        let f1 = f_n_closed(1).value.substitute(&w.lambda_hat());
        assert_eq!(back, VermaElement::highest(&w).right_scale(&f1));
    }

    #[test]
    fn h_weight_of_lowered_vector() {
        // H . (Xm1 . v) = (Xm1 . v) . (H + 1)
        let w = const_weight(3, 2);
        let u = VermaElement::xm1_power(&w, 1);
        let hu = u.left_scale(&DynamicalScalar::h());
        assert_eq!(hu, u.right_scale(&(&DynamicalScalar::h() + &DynamicalScalar::one())));
    }

    #[test]
    fn gram_diagonal_matches_product() {
        let w = const_weight(3, 2);
        let g = gram_matrix(&w, 4);
        for (i, row) in g.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(*x, shapovalov_product(&w, i as u32));
                } else {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn radical_orders() {
        for n in [1i64, 3, 5] {
            for eps in [1i64, -1] {
                let lambda = DynamicalScalar::h_minus(1 - n) * DynamicalScalar::from_int(eps);
                let w = HighestWeight::new(lambda);
                assert_eq!(
                    radical_order(&w, DEFAULT_RADICAL_BOUND).unwrap(),
                    RadicalOrder::DegenerateAt(n as u32)
                );
            }
        }
        let zero = HighestWeight::new(DynamicalScalar::zero());
        assert_eq!(radical_order(&zero, 64).unwrap(), RadicalOrder::Nondegenerate);
        assert_eq!(
            radical_order(&const_weight(3, 2), 8),
            Err(VermaError::BoundExceeded(8))
        );
    }

    #[test]
    fn example_irreps() {
        let d = build_irrep(&rat(3, 2), &rat(-3, 2)).unwrap();
        assert_eq!(d.n, 3);
        assert_eq!(ghost_scalars(&d.lambda, &d.mu), (rat(-9, 2), rat(9, 2), rat(0, 1)));
        assert!(ghost_scalars_match(&d).unwrap());

        let one = build_irrep(&rat(1, 2), &rat(-1, 2)).unwrap();
        assert_eq!(one.n, 1);
        assert_eq!(one.generator_matrix(Generator::Hbar), &vec![vec![rat(1, 2)]]);
        assert_eq!(one.h_matrix, vec![vec![rat(1, 2)]]);

        let five = build_irrep(&rat(9, 2), &rat(-1, 2)).unwrap();
        assert_eq!(five.n, 5);
        assert!(ghost_scalars_match(&five).unwrap());
    }

    #[test]
    fn irrep_errors() {
        assert_eq!(
            build_irrep(&rat(3, 2), &rat(1, 1)),
            Err(VermaError::IntegerMu(rat(1, 1)))
        );
        assert_eq!(
            build_irrep(&rat(1, 3), &rat(1, 2)),
            Err(VermaError::NotFiniteDimensional)
        );
    }
}
