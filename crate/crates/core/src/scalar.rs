//! Exact arithmetic in `Q[H]`, in the ring of dynamical scalars
//! `R = Q[H][(H - n)^-1 | n in Z]`, and in polynomial rings over `R`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

/// Builds the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Returns `Some(n)` when `c` is an integer that fits in an `i64`.
pub fn as_small_integer(c: &Rational) -> Option<i64> {
    if c.is_integer() {
        c.to_integer().to_i64()
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    ZeroDivision,
    #[error("{0} is not a unit of the ring of dynamical scalars")]
    NotAUnit(String),
    #[error("{point} is a pole of {value}")]
    PoleAtPoint { value: String, point: String },
}

/// A polynomial in `H` with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `H`.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// The linear factor `H - n`.
    pub fn linear(n: i64) -> Self {
        Self::new(vec![-int(n), Rational::one()])
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPolynomial {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `f(H + k)`.
    pub fn shift(&self, k: &Rational) -> Self {
        if k.is_zero() || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let step = RatPolynomial::new(vec![k.clone(), Rational::one()]);
        let mut acc = RatPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &step) + &RatPolynomial::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Synthetic division by `H - n`, returning quotient and remainder.
    pub fn div_linear(&self, n: &Rational) -> (Self, Rational) {
        if self.coeffs.is_empty() {
            return (Self::zero(), Rational::zero());
        }
        let deg = self.coeffs.len() - 1;
        let mut quot = vec![Rational::zero(); deg];
        let mut carry = Rational::zero();
        for i in (0..=deg).rev() {
            let v = &self.coeffs[i] + &carry * n;
            if i == 0 {
                carry = v;
            } else {
                quot[i - 1] = v.clone();
                carry = v;
            }
        }
        (Self::new(quot), carry)
    }

    /// Scales to a primitive integer polynomial (same roots).
    fn to_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return scaled;
        }
        scaled.into_iter().map(|c| c / &g).collect()
    }

    /// Finds an integer root, if any. Only searches a bounded candidate set,
    /// which is exhaustive whenever the constant term or root bound is modest.
    fn integer_root(&self) -> Option<i64> {
        let coeffs = self.to_integer_coeffs();
        if coeffs.len() < 2 {
            return None;
        }
        if coeffs[0].is_zero() {
            return Some(0);
        }
        let lead = coeffs.last().unwrap().abs();
        let max_ratio = coeffs[..coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        let bound = (max_ratio / &lead) + 1u32;
        let a0 = coeffs[0].abs();
        let test = |r: i64| self.eval(&int(r)).is_zero();
        if let Some(b) = bound.to_i64().filter(|&b| b <= 200_000) {
            for m in 1..=b {
                if (&a0 % BigInt::from(m)).is_zero() {
                    if test(m) {
                        return Some(m);
                    }
                    if test(-m) {
                        return Some(-m);
                    }
                }
            }
            return None;
        }
        let a0 = a0.to_u64()?;
        let mut d = 1u64;
        while d.saturating_mul(d) <= a0 && d <= 10_000_000 {
            if a0 % d == 0 {
                for cand in [d, a0 / d] {
                    let c = cand as i64;
                    if test(c) {
                        return Some(c);
                    }
                    if test(-c) {
                        return Some(-c);
                    }
                }
            }
            d += 1;
        }
        None
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "H")
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;
    fn neg(self) -> RatPolynomial {
        RatPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

/// An element of `R`: a rational polynomial numerator over a product of
/// integer shifts `(H - n)^m`.
///
/// The representation is canonical: the numerator never vanishes at a
/// denominator root and zero has an empty denominator, so structural
/// equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DynamicalScalar {
    num: RatPolynomial,
    den: BTreeMap<i64, u32>,
}

impl DynamicalScalar {
    /// Builds `num / prod (H - n)^m` and reduces it.
    pub fn new(num: RatPolynomial, den: BTreeMap<i64, u32>) -> Self {
        let mut s = DynamicalScalar { num, den };
        s.reduce();
        s
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Sums over a common denominator, reducing once.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a DynamicalScalar>) -> Self {
        let items: Vec<&DynamicalScalar> = items.into_iter().filter(|s| !s.is_zero()).collect();
        match items.as_slice() {
            [] => return Self::zero(),
            [one] => return (*one).clone(),
            _ => {}
        }
        let mut den: BTreeMap<i64, u32> = BTreeMap::new();
        for s in &items {
            for (&n, &m) in &s.den {
                let e = den.entry(n).or_default();
                *e = (*e).max(m);
            }
        }
        let mut num = RatPolynomial::zero();
        for s in &items {
            let lifted = den.iter().fold(s.num.clone(), |acc, (&n, &m)| {
                let have = s.den.get(&n).copied().unwrap_or(0);
                if m == have {
                    acc
                } else {
                    &acc * &RatPolynomial::linear(n).pow(m - have)
                }
            });
            num = &num + &lifted;
        }
        Self::new(num, den)
    }

    pub fn one() -> Self {
        Self::from_poly(RatPolynomial::one())
    }

    pub fn from_poly(num: RatPolynomial) -> Self {
        DynamicalScalar {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(RatPolynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// The dynamical variable `H`.
    pub fn h() -> Self {
        Self::from_poly(RatPolynomial::var())
    }

    /// `H - n`.
    pub fn h_minus(n: i64) -> Self {
        Self::from_poly(RatPolynomial::linear(n))
    }

    /// `1 / (H - n)`.
    pub fn inv_h_minus(n: i64) -> Self {
        DynamicalScalar {
            num: RatPolynomial::one(),
            den: BTreeMap::from([(n, 1)]),
        }
    }

    pub fn numerator(&self) -> &RatPolynomial {
        &self.num
    }

    /// Denominator factors as `(n, multiplicity)` for `(H - n)^multiplicity`.
    pub fn denominator(&self) -> &BTreeMap<i64, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// `Some(c)` when the scalar is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.den.is_empty() {
            return None;
        }
        match self.num.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    /// `Some(p)` when the scalar is a polynomial in `H`.
    pub fn as_polynomial(&self) -> Option<&RatPolynomial> {
        self.den.is_empty().then_some(&self.num)
    }

    fn expanded_den(&self) -> RatPolynomial {
        self.den
            .iter()
            .fold(RatPolynomial::one(), |acc, (&n, &m)| {
                &acc * &RatPolynomial::linear(n).pow(m)
            })
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut den = std::mem::take(&mut self.den);
        for (&n, m) in den.iter_mut() {
            let root = int(n);
            while *m > 0 {
                let (q, r) = self.num.div_linear(&root);
                if !r.is_zero() {
                    break;
                }
                self.num = q;
                *m -= 1;
            }
        }
        den.retain(|_, m| *m > 0);
        self.den = den;
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DynamicalScalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `f(H + k)`. Denominator roots move from `n` to `n - k`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        DynamicalScalar {
            num: self.num.shift(&int(k)),
            den: self.den.iter().map(|(&n, &m)| (n - k, m)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The multiplicative inverse, which exists exactly when the numerator
    /// splits into a constant times integer shifts of `H`.
    pub fn invert(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroDivision);
        }
        let mut rest = self.num.clone();
        let mut roots: BTreeMap<i64, u32> = BTreeMap::new();
        while rest.degree().unwrap_or(0) > 0 {
            let r = rest
                .integer_root()
                .ok_or_else(|| ScalarError::NotAUnit(self.to_string()))?;
            rest = rest.div_linear(&int(r)).0;
            *roots.entry(r).or_default() += 1;
        }
        let c = rest.coeff(0);
        let num = self.expanded_den().scale(&(Rational::one() / c));
        Ok(DynamicalScalar::new(num, roots))
    }

    /// Evaluates at `H = at`.
    pub fn eval(&self, at: &Rational) -> Result<Rational, ScalarError> {
        if let Some(n) = as_small_integer(at) {
            if self.den.contains_key(&n) {
                return Err(ScalarError::PoleAtPoint {
                    value: self.to_string(),
                    point: at.to_string(),
                });
            }
        }
        let mut value = self.num.eval(at);
        for (&n, &m) in &self.den {
            let d = at - int(n);
            for _ in 0..m {
                value /= &d;
            }
        }
        Ok(value)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        let bare_num = self.num.term_count() <= 1 && !self.num.coeff(0).is_negative();
        if self.den.is_empty() {
            return self.num.fmt_with(f, var);
        }
        if bare_num && !self.num.coeffs().iter().any(|c| !c.is_integer()) {
            self.num.fmt_with(f, var)?;
        } else {
            write!(f, "(")?;
            self.num.fmt_with(f, var)?;
            write!(f, ")")?;
        }
        write!(f, "/")?;
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(&n, &m)| {
                let base = match n.cmp(&0) {
                    std::cmp::Ordering::Equal => var.to_string(),
                    std::cmp::Ordering::Greater => format!("({var}-{n})"),
                    std::cmp::Ordering::Less => format!("({var}+{})", -n),
                };
                if m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect();
        if factors.len() == 1 && !factors[0].contains('^') {
            write!(f, "{}", factors[0])
        } else {
            write!(f, "({})", factors.join("*"))
        }
    }
}

impl fmt::Display for DynamicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "H")
    }
}

impl From<Rational> for DynamicalScalar {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for DynamicalScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<RatPolynomial> for DynamicalScalar {
    fn from(p: RatPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &DynamicalScalar {
    type Output = DynamicalScalar;
    fn add(self, rhs: &DynamicalScalar) -> DynamicalScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return DynamicalScalar::new(&self.num + &rhs.num, self.den.clone());
        }
        let mut den = self.den.clone();
        for (&n, &m) in &rhs.den {
            let e = den.entry(n).or_default();
            *e = (*e).max(m);
        }
        let lift = |s: &DynamicalScalar| {
            den.iter().fold(s.num.clone(), |acc, (&n, &m)| {
                let have = s.den.get(&n).copied().unwrap_or(0);
                &acc * &RatPolynomial::linear(n).pow(m - have)
            })
        };
        let num = &lift(self) + &lift(rhs);
        DynamicalScalar::new(num, den)
    }
}

impl Sub for &DynamicalScalar {
    type Output = DynamicalScalar;
    fn sub(self, rhs: &DynamicalScalar) -> DynamicalScalar {
        self + &(-rhs)
    }
}

impl Neg for &DynamicalScalar {
    type Output = DynamicalScalar;
    fn neg(self) -> DynamicalScalar {
        DynamicalScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &DynamicalScalar {
    type Output = DynamicalScalar;
    fn mul(self, rhs: &DynamicalScalar) -> DynamicalScalar {
        if self.is_zero() || rhs.is_zero() {
            return DynamicalScalar::zero();
        }
        let mut den = self.den.clone();
        for (&n, &m) in &rhs.den {
            *den.entry(n).or_default() += m;
        }
        DynamicalScalar::new(&self.num * &rhs.num, den)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(DynamicalScalar, Add add, Sub sub, Mul mul);
forward_owned!(RatPolynomial, Add add, Sub sub, Mul mul);

impl Neg for DynamicalScalar {
    type Output = DynamicalScalar;
    fn neg(self) -> DynamicalScalar {
        -&self
    }
}

/// Which central indeterminate a [`DynPolynomial`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Indeterminate {
    /// The Cartan generator `h` of the reduction algebra.
    H,
    /// The normalized central element `ĥ = (H - 1) h`.
    HHat,
}

/// A polynomial in `h` or `ĥ` with coefficients in `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynPolynomial {
    var: Indeterminate,
    coeffs: Vec<DynamicalScalar>,
}

impl DynPolynomial {
    pub fn new(var: Indeterminate, mut coeffs: Vec<DynamicalScalar>) -> Self {
        while coeffs.last().is_some_and(DynamicalScalar::is_zero) {
            coeffs.pop();
        }
        DynPolynomial { var, coeffs }
    }

    pub fn zero(var: Indeterminate) -> Self {
        Self::new(var, Vec::new())
    }

    pub fn constant(var: Indeterminate, c: DynamicalScalar) -> Self {
        Self::new(var, vec![c])
    }

    /// The indeterminate itself.
    pub fn var(var: Indeterminate) -> Self {
        Self::new(var, vec![DynamicalScalar::zero(), DynamicalScalar::one()])
    }

    pub fn indeterminate(&self) -> Indeterminate {
        self.var
    }

    pub fn coeffs(&self) -> &[DynamicalScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> DynamicalScalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &DynamicalScalar) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Shifts `H -> H + k` in every coefficient; the indeterminate is untouched.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|c| c.shift(k)).collect())
    }

    /// Evaluates with the indeterminate replaced by `value`.
    pub fn substitute(&self, value: &DynamicalScalar) -> DynamicalScalar {
        let mut acc = DynamicalScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Rewrites in `ĥ` using `h = ĥ / (H - 1)`.
    pub fn to_hat(&self) -> Self {
        match self.var {
            Indeterminate::HHat => self.clone(),
            Indeterminate::H => {
                let step = DynamicalScalar::inv_h_minus(1);
                self.rescale(Indeterminate::HHat, &step)
            }
        }
    }

    /// Rewrites in `h` using `ĥ = (H - 1) h`.
    pub fn to_bar(&self) -> Self {
        match self.var {
            Indeterminate::H => self.clone(),
            Indeterminate::HHat => self.rescale(Indeterminate::H, &DynamicalScalar::h_minus(1)),
        }
    }

    fn rescale(&self, var: Indeterminate, step: &DynamicalScalar) -> Self {
        let mut factor = DynamicalScalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &factor);
            factor = &factor * step;
        }
        Self::new(var, out)
    }

    fn aligned(&self, rhs: &Self) -> Self {
        match self.var {
            Indeterminate::H => rhs.to_bar(),
            Indeterminate::HHat => rhs.to_hat(),
        }
    }
}

impl Add for &DynPolynomial {
    type Output = DynPolynomial;
    fn add(self, rhs: &DynPolynomial) -> DynPolynomial {
        let rhs = self.aligned(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DynPolynomial::new(
            self.var,
            (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect(),
        )
    }
}

impl Sub for &DynPolynomial {
    type Output = DynPolynomial;
    fn sub(self, rhs: &DynPolynomial) -> DynPolynomial {
        let rhs = self.aligned(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DynPolynomial::new(
            self.var,
            (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect(),
        )
    }
}

impl Mul for &DynPolynomial {
    type Output = DynPolynomial;
    fn mul(self, rhs: &DynPolynomial) -> DynPolynomial {
        let rhs = self.aligned(rhs);
        if self.is_zero() || rhs.is_zero() {
            return DynPolynomial::zero(self.var);
        }
        let mut out = vec![DynamicalScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        DynPolynomial::new(self.var, out)
    }
}

impl fmt::Display for DynPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.var {
            Indeterminate::H => "h",
            Indeterminate::HHat => "hhat",
        };
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "({c})*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> DynamicalScalar {
        DynamicalScalar::h()
    }

    fn c(n: i64) -> DynamicalScalar {
        DynamicalScalar::from_int(n)
    }

    fn inv(n: i64) -> DynamicalScalar {
        DynamicalScalar::inv_h_minus(n)
    }

    #[test]
    fn add_like_terms() {
        assert_eq!(&inv(1) + &inv(1), c(2) * inv(1));
        assert_eq!(&h() + &DynamicalScalar::zero(), h());
    }

    #[test]
    fn add_cross_multiplies() {
        let sum = &inv(1) + &inv(2);
        let expected = DynamicalScalar::new(
            RatPolynomial::from_i64s(&[-3, 2]),
            BTreeMap::from([(1, 1), (2, 1)]),
        );
        assert_eq!(sum, expected);
        assert_eq!(sum.to_string(), "(2*H - 3)/((H-1)*(H-2))");
    }

    #[test]
    fn mul_cancels() {
        assert!((DynamicalScalar::h_minus(1) * inv(1)).is_one());
        let f = &c(1) - &(c(2) * inv(-1));
        assert_eq!(f * DynamicalScalar::h_minus(-1), DynamicalScalar::h_minus(1));
        assert!((DynamicalScalar::zero() * inv(3)).is_zero());
    }

    #[test]
    fn shift_moves_poles() {
        assert_eq!(h().shift(2), &h() + &c(2));
        assert_eq!(inv(1).shift(1), inv(0));
        let f = &inv(1) + &h();
        assert_eq!(f.shift(0), f);
    }

    #[test]
    fn invert_units() {
        assert_eq!(DynamicalScalar::h_minus(3).invert().unwrap(), inv(3));
        assert_eq!(c(2).invert().unwrap(), DynamicalScalar::constant(rat(1, 2)));
        let q = DynamicalScalar::from_poly(RatPolynomial::from_i64s(&[2, -3, 1]));
        assert_eq!(q.invert().unwrap(), inv(1) * inv(2));
    }

    #[test]
    fn invert_rejects_non_units() {
        assert_eq!(DynamicalScalar::zero().invert(), Err(ScalarError::ZeroDivision));
        let half_root = DynamicalScalar::from_poly(RatPolynomial::from_i64s(&[-1, 2]));
        assert!(matches!(half_root.invert(), Err(ScalarError::NotAUnit(_))));
        let irreducible = DynamicalScalar::from_poly(RatPolynomial::from_i64s(&[1, 0, 1]));
        assert!(matches!(irreducible.invert(), Err(ScalarError::NotAUnit(_))));
    }

    #[test]
    fn eval_points_and_poles() {
        let f = c(2) * DynamicalScalar::h_minus(1);
        assert_eq!(f.eval(&rat(-1, 2)).unwrap(), int(-3));
        assert_eq!(inv(1).eval(&int(0)).unwrap(), int(-1));
        assert!(matches!(
            inv(1).eval(&int(1)),
            Err(ScalarError::PoleAtPoint { .. })
        ));
    }

    #[test]
    fn substitute_in_hat_polynomial() {
        let p = DynPolynomial::new(
            Indeterminate::HHat,
            vec![c(0), c(0), c(1)],
        );
        let v = DynamicalScalar::h_minus(1).scale(&rat(3, 2));
        let expected = DynamicalScalar::h_minus(1).pow(2).scale(&rat(9, 4));
        assert_eq!(p.substitute(&v), expected);
        let k = DynPolynomial::constant(Indeterminate::HHat, c(7));
        assert_eq!(k.substitute(&h()), c(7));
    }

    #[test]
    fn hat_bar_conversion_round_trips() {
        let p = DynPolynomial::new(Indeterminate::H, vec![h(), c(2), inv(3)]);
        let hat = p.to_hat();
        assert_eq!(hat.coeff(1), c(2) * inv(1));
        assert_eq!(hat.to_bar(), p);
    }

    #[test]
    fn display_matches_text_format() {
        let q = DynamicalScalar::new(
            RatPolynomial::from_i64s(&[2, -3, 1]),
            BTreeMap::from([(1, 1), (2, 1), (5, 1)]),
        );
        assert_eq!(q.to_string(), "1/(H-5)");
        assert_eq!(inv(-1).to_string(), "1/(H+1)");
        assert_eq!((inv(1) * inv(1)).to_string(), "1/((H-1)^2)");
        assert_eq!((&c(1) - &(c(2) * inv(-1))).to_string(), "(H - 1)/(H+1)");
    }
}
