//! PBW normal forms for the diagonal reduction algebra and the diamond
//! product.
//!
//! Elements are finite left `R`-linear combinations of ordered monomials
//! `Xm2^p Xm1^q h^r Xp1^s Xp2^t` with `q, s <= 1`. Products are normalized by
//! rewriting adjacent out-of-order generator pairs with the fixed relation
//! table and moving dynamical scalars to the far left with the shift rule
//! `x_k f(H) = f(H + k) x_k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::scalar::{DynamicalScalar, RatPolynomial};

/// Default bound on relation applications per product.
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element is not parity-homogeneous")]
    MixedParity,
    #[error("rewriting did not reach a normal form within {0} rule applications")]
    FuelExhausted(u64),
}

/// Generators of the reduction algebra, declared in PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Xm2,
    Xm1,
    Hbar,
    Xp1,
    Xp2,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::Xm2,
        Generator::Xm1,
        Generator::Hbar,
        Generator::Xp1,
        Generator::Xp2,
    ];

    /// The integer `k` with `x f(H) = f(H + k) x`.
    pub fn shift(self) -> i64 {
        match self {
            Generator::Xm2 => -2,
            Generator::Xm1 => -1,
            Generator::Hbar => 0,
            Generator::Xp1 => 1,
            Generator::Xp2 => 2,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Generator::Xm1 | Generator::Xp1)
    }

    pub fn parity(self) -> Parity {
        if self.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            Generator::Xm2 => "Xm2",
            Generator::Xm1 => "Xm1",
            Generator::Hbar => "h",
            Generator::Xp1 => "Xp1",
            Generator::Xp2 => "Xp2",
        }
    }

    pub fn unicode(self) -> &'static str {
        match self {
            Generator::Xm2 => "x₋₂α",
            Generator::Xm1 => "x₋α",
            Generator::Hbar => "h",
            Generator::Xp1 => "xα",
            Generator::Xp2 => "x₂α",
        }
    }

    pub fn from_ascii(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.ascii() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u32) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(u32::from(self.bit() + rhs.bit()))
    }
}

/// The ordered monomial `Xm2^p Xm1^q h^r Xp1^s Xp2^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub p: u32,
    pub q: u8,
    pub r: u32,
    pub s: u8,
    pub t: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        p: 0,
        q: 0,
        r: 0,
        s: 0,
        t: 0,
    };

    pub fn new(p: u32, q: u8, r: u32, s: u8, t: u32) -> Self {
        assert!(q <= 1 && s <= 1, "odd exponents must be 0 or 1");
        Monomial { p, q, r, s, t }
    }

    pub fn of(g: Generator) -> Self {
        Self::ONE.appended(g)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// `-2p - q + s + 2t`; also the shift picked up by a scalar moving
    /// leftward across this monomial.
    pub fn weight(&self) -> i64 {
        -2 * i64::from(self.p) - i64::from(self.q) + i64::from(self.s) + 2 * i64::from(self.t)
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(u32::from(self.q + self.s))
    }

    pub fn degree(&self) -> u32 {
        self.p + u32::from(self.q) + self.r + u32::from(self.s) + self.t
    }

    pub fn last(&self) -> Option<Generator> {
        if self.t > 0 {
            Some(Generator::Xp2)
        } else if self.s > 0 {
            Some(Generator::Xp1)
        } else if self.r > 0 {
            Some(Generator::Hbar)
        } else if self.q > 0 {
            Some(Generator::Xm1)
        } else if self.p > 0 {
            Some(Generator::Xm2)
        } else {
            None
        }
    }

    pub fn without_last(&self) -> Monomial {
        let mut m = *self;
        match self.last() {
            Some(Generator::Xp2) => m.t -= 1,
            Some(Generator::Xp1) => m.s -= 1,
            Some(Generator::Hbar) => m.r -= 1,
            Some(Generator::Xm1) => m.q -= 1,
            Some(Generator::Xm2) => m.p -= 1,
            None => {}
        }
        m
    }

    /// Appends a generator without reordering; callers guarantee the result
    /// is still ordered.
    fn appended(&self, g: Generator) -> Monomial {
        let mut m = *self;
        match g {
            Generator::Xm2 => m.p += 1,
            Generator::Xm1 => m.q += 1,
            Generator::Hbar => m.r += 1,
            Generator::Xp1 => m.s += 1,
            Generator::Xp2 => m.t += 1,
        }
        m
    }

    /// The generator word, left to right.
    pub fn word(&self) -> Vec<Generator> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        w.extend(std::iter::repeat_n(Generator::Xm2, self.p as usize));
        w.extend(std::iter::repeat_n(Generator::Xm1, usize::from(self.q)));
        w.extend(std::iter::repeat_n(Generator::Hbar, self.r as usize));
        w.extend(std::iter::repeat_n(Generator::Xp1, usize::from(self.s)));
        w.extend(std::iter::repeat_n(Generator::Xp2, self.t as usize));
        w
    }

    fn fmt_names(&self, names: fn(Generator) -> &'static str, sep: &str) -> String {
        let parts: Vec<String> = [
            (Generator::Xm2, self.p),
            (Generator::Xm1, u32::from(self.q)),
            (Generator::Hbar, self.r),
            (Generator::Xp1, u32::from(self.s)),
            (Generator::Xp2, self.t),
        ]
        .into_iter()
        .filter(|&(_, e)| e > 0)
        .map(|(g, e)| {
            if e == 1 {
                names(g).to_string()
            } else {
                format!("{}^{e}", names(g))
            }
        })
        .collect();
        parts.join(sep)
    }
}

/// A finite left `R`-linear combination of PBW monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, DynamicalScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(DynamicalScalar::one())
    }

    pub fn scalar(f: DynamicalScalar) -> Self {
        Self::term(f, Monomial::ONE)
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(Monomial::of(g))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(DynamicalScalar::one(), m)
    }

    pub fn term(coeff: DynamicalScalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        AlgebraElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, DynamicalScalar)>>(iter: I) -> Self {
        let mut acc = Accumulator::default();
        for (m, c) in iter {
            acc.add(m, &c);
        }
        acc.finish()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &DynamicalScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> DynamicalScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(f)` when the element is a pure dynamical scalar.
    pub fn as_scalar(&self) -> Option<DynamicalScalar> {
        match self.terms.len() {
            0 => Some(DynamicalScalar::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Left multiplication by a dynamical scalar.
    pub fn scale(&self, f: &DynamicalScalar) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        AlgebraElement::from_terms(self.terms.iter().map(|(m, c)| (*m, f * c)))
    }

    /// The common parity of all terms; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// The common weight of all terms; zero counts as weight 0.
    pub fn weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let first = it.next().unwrap_or(0);
        it.all(|w| w == first).then_some(first)
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = diamond(&acc, self);
        }
        acc
    }

    /// Writes the element with the given generator names.
    pub fn render(&self, unicode: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names: fn(Generator) -> &'static str = if unicode {
            Generator::unicode
        } else {
            Generator::ascii
        };
        let sep = if unicode { "·" } else { "*" };
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono = m.fmt_names(names, sep);
                let coeff = c.to_string();
                match (m.is_one(), c.is_one()) {
                    (true, _) => format!("({coeff})"),
                    (false, true) => mono,
                    (false, false) => format!("({coeff}){sep}{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

#[derive(Default)]
struct Accumulator {
    terms: BTreeMap<Monomial, Vec<DynamicalScalar>>,
}

impl Accumulator {
    fn add(&mut self, m: Monomial, c: &DynamicalScalar) {
        if !c.is_zero() {
            self.terms.entry(m).or_default().push(c.clone());
        }
    }

    fn add_scaled(&mut self, e: &AlgebraElement, f: &DynamicalScalar) {
        for (m, c) in &e.terms {
            self.add(*m, &(f * c));
        }
    }

    fn finish(self) -> AlgebraElement {
        let terms = self
            .terms
            .into_iter()
            .map(|(m, cs)| (m, DynamicalScalar::sum(&cs)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        AlgebraElement { terms }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut acc = Accumulator::default();
        for (m, c) in &self.terms {
            acc.add(*m, c);
        }
        for (m, c) in &rhs.terms {
            acc.add(*m, c);
        }
        acc.finish()
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        diamond(self, rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement { (&self).$m(&rhs) }
        }
        impl $tr<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl From<DynamicalScalar> for AlgebraElement {
    fn from(f: DynamicalScalar) -> Self {
        Self::scalar(f)
    }
}

impl From<Generator> for AlgebraElement {
    fn from(g: Generator) -> Self {
        Self::generator(g)
    }
}

fn c(n: i64) -> DynamicalScalar {
    DynamicalScalar::from_int(n)
}

fn inv(n: i64) -> DynamicalScalar {
    DynamicalScalar::inv_h_minus(n)
}

fn hvar() -> DynamicalScalar {
    DynamicalScalar::h()
}

fn mono(word: &[Generator]) -> Monomial {
    word.iter().fold(Monomial::ONE, |m, &g| m.appended(g))
}

/// Right-hand side of the rewriting rule for the adjacent pair `left right`,
/// when that pair is out of PBW order (or an odd square). Every right-hand
/// side is already a combination of ordered monomials.
pub fn relation(left: Generator, right: Generator) -> Option<Vec<(DynamicalScalar, Monomial)>> {
    use Generator::*;
    let one = DynamicalScalar::one();
    let rhs = match (left, right) {
        (Xp1, Xp1) => vec![(c(2) * inv(0), mono(&[Hbar, Xp2]))],
        (Xm1, Xm1) => vec![(c(-2) * inv(2), mono(&[Xm2, Hbar]))],
        (Xp2, Xp1) => vec![(&one - &(c(2) * inv(-1)), mono(&[Xp1, Xp2]))],
        (Xp2, Hbar) => vec![(&one - &(c(2) * inv(-1)), mono(&[Hbar, Xp2]))],
        (Xp2, Xm1) => vec![
            (&one - &(c(2) * inv(0) * inv(1)), mono(&[Xm1, Xp2])),
            (c(2) * inv(-1), mono(&[Hbar, Xp1])),
        ],
        (Xp2, Xm2) => {
            let cubic = c(2) * inv(2) * inv(-1);
            let mixed = DynamicalScalar::new(
                RatPolynomial::from_i64s(&[1, 1, -1]),
                BTreeMap::from([(-1, 1), (0, 1), (1, 1)]),
            );
            vec![
                (&one + &cubic, mono(&[Xm2, Xp2])),
                (mixed, mono(&[Xm1, Xp1])),
                (inv(-1), mono(&[Hbar, Hbar])),
                (-(hvar() * hvar() * inv(-1)), Monomial::ONE),
            ]
        }
        (Xp1, Hbar) => vec![(&one - &inv(0), mono(&[Hbar, Xp1]))],
        (Xp1, Xm1) => vec![
            (c(-1) - inv(1), mono(&[Xm1, Xp1])),
            (c(4) * hvar() * inv(1) * inv(2), mono(&[Xm2, Xp2])),
            (-inv(0), mono(&[Hbar, Hbar])),
            (hvar(), Monomial::ONE),
        ],
        (Xp1, Xm2) => vec![
            (&one - &(c(2) * inv(1) * inv(2)), mono(&[Xm2, Xp1])),
            (c(-2) * inv(0), mono(&[Xm1, Hbar])),
        ],
        (Hbar, Xm1) => vec![(&one - &inv(1), mono(&[Xm1, Hbar]))],
        (Hbar, Xm2) => vec![(&one - &(c(2) * inv(1)), mono(&[Xm2, Hbar]))],
        (Xm1, Xm2) => vec![(&one - &(c(2) * inv(2)), mono(&[Xm2, Xm1]))],
        _ => return None,
    };
    Some(rhs)
}

/// One named defining relation, as `lhs = rhs` with both sides built as
/// elements (the left side as the unnormalized word `left right`).
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub left: Generator,
    pub right: Generator,
    pub rhs: AlgebraElement,
}

/// The twelve generator-pair relations in the order they are usually listed.
pub fn relation_table() -> Vec<Relation> {
    use Generator::*;
    let pairs = [
        ("2a*a", Xp2, Xp1),
        ("a*a", Xp1, Xp1),
        ("-a*-a", Xm1, Xm1),
        ("2a*h", Xp2, Hbar),
        ("2a*-a", Xp2, Xm1),
        ("2a*-2a", Xp2, Xm2),
        ("a*h", Xp1, Hbar),
        ("a*-a", Xp1, Xm1),
        ("a*-2a", Xp1, Xm2),
        ("h*-a", Hbar, Xm1),
        ("h*-2a", Hbar, Xm2),
        ("-a*-2a", Xm1, Xm2),
    ];
    pairs
        .into_iter()
        .map(|(name, left, right)| Relation {
            name,
            left,
            right,
            rhs: AlgebraElement::from_terms(
                relation(left, right)
                    .expect("listed pairs have relations")
                    .into_iter()
                    .map(|(c, m)| (m, c)),
            ),
        })
        .collect()
}

type ProductCache = RwLock<HashMap<(Monomial, Monomial), Arc<AlgebraElement>>>;

fn cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Fuel bound from `DRA_FUEL`, falling back to [`DEFAULT_FUEL`].
pub fn configured_fuel() -> u64 {
    static FUEL: OnceLock<u64> = OnceLock::new();
    *FUEL.get_or_init(|| {
        std::env::var("DRA_FUEL")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_FUEL)
    })
}

/// Normalizing multiplier with a bound on rule applications.
///
/// Monomial products are memoized process-wide; a cached product costs no
/// fuel.
#[derive(Clone, Copy, Debug)]
pub struct Rewriter {
    fuel: u64,
}

impl Default for Rewriter {
    fn default() -> Self {
        Rewriter {
            fuel: configured_fuel(),
        }
    }
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn spend(&mut self) -> Result<(), AlgebraError> {
        self.used += 1;
        if self.used > self.limit {
            Err(AlgebraError::FuelExhausted(self.limit))
        } else {
            Ok(())
        }
    }
}

impl Rewriter {
    pub fn with_fuel(fuel: u64) -> Self {
        Rewriter { fuel }
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    /// The normal form of `a ◇ b`.
    pub fn multiply(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        let mut budget = Budget {
            limit: self.fuel,
            used: 0,
        };
        let mut acc = Accumulator::default();
        for (ma, fa) in &a.terms {
            let shift = ma.weight();
            for (mb, fb) in &b.terms {
                let coeff = fa * &fb.shift(shift);
                let prod = mono_mul(ma, mb, &mut budget)?;
                acc.add_scaled(&prod, &coeff);
            }
        }
        Ok(acc.finish())
    }

    /// Normalizes a generator word with a left coefficient.
    pub fn normalize_word(
        &self,
        coeff: &DynamicalScalar,
        word: &[Generator],
    ) -> Result<AlgebraElement, AlgebraError> {
        let mut acc = AlgebraElement::scalar(coeff.clone());
        for &g in word {
            acc = self.multiply(&acc, &AlgebraElement::generator(g))?;
        }
        Ok(acc)
    }
}

fn mono_mul(
    left: &Monomial,
    right: &Monomial,
    budget: &mut Budget,
) -> Result<Arc<AlgebraElement>, AlgebraError> {
    if right.is_one() {
        return Ok(Arc::new(AlgebraElement::monomial(*left)));
    }
    if left.is_one() {
        return Ok(Arc::new(AlgebraElement::monomial(*right)));
    }
    let key = (*left, *right);
    if let Some(hit) = cache().read().expect("cache poisoned").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let last = right.last().expect("non-unit monomial");
    let prefix = right.without_last();
    let result = if prefix.is_one() {
        mono_gen(left, last, budget)?
    } else {
        let head = mono_mul(left, &prefix, budget)?;
        let mut acc = Accumulator::default();
        for (m, f) in &head.terms {
            let tail = mono_gen(m, last, budget)?;
            acc.add_scaled(&tail, f);
        }
        acc.finish()
    };
    let result = Arc::new(result);
    cache()
        .write()
        .expect("cache poisoned")
        .insert(key, Arc::clone(&result));
    Ok(result)
}

fn mono_gen(
    left: &Monomial,
    g: Generator,
    budget: &mut Budget,
) -> Result<AlgebraElement, AlgebraError> {
    let Some(y) = left.last() else {
        return Ok(AlgebraElement::generator(g));
    };
    if y < g || (y == g && !g.is_odd()) {
        return Ok(AlgebraElement::monomial(left.appended(g)));
    }
    budget.spend()?;
    let prefix = left.without_last();
    let shift = prefix.weight();
    let mut acc = Accumulator::default();
    for (coeff, w) in relation(y, g).expect("out-of-order pair has a relation") {
        let prod = mono_mul(&prefix, &w, budget)?;
        acc.add_scaled(&prod, &coeff.shift(shift));
    }
    Ok(acc.finish())
}

/// The diamond product `a ◇ b` in normal form.
///
/// # Panics
///
/// Panics if rewriting exceeds the configured fuel bound; use
/// [`Rewriter::multiply`] to handle that case.
pub fn diamond(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    Rewriter::default()
        .multiply(a, b)
        .unwrap_or_else(|e| panic!("{e}"))
}

/// Super commutator `a ◇ b - (-1)^{|a||b|} b ◇ a`.
pub fn supercommutator(
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    let (pa, pb) = parities(a, b)?;
    let ab = diamond(a, b);
    let ba = diamond(b, a);
    Ok(if pa == Parity::Odd && pb == Parity::Odd {
        &ab + &ba
    } else {
        &ab - &ba
    })
}

/// Anticommutator `a ◇ b + b ◇ a` of homogeneous elements.
///
/// For an even `a` this agrees with `a ◇ b + (-1)^{|a||b|} b ◇ a`; for two odd
/// elements the plain sum is used.
pub fn anticommutator(
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    parities(a, b)?;
    Ok(&diamond(a, b) + &diamond(b, a))
}

fn parities(a: &AlgebraElement, b: &AlgebraElement) -> Result<(Parity, Parity), AlgebraError> {
    Ok((
        a.parity().ok_or(AlgebraError::MixedParity)?,
        b.parity().ok_or(AlgebraError::MixedParity)?,
    ))
}

/// The test set for (anti-)centrality: `H` and the five generators.
fn probes() -> Vec<AlgebraElement> {
    std::iter::once(AlgebraElement::scalar(DynamicalScalar::h()))
        .chain(Generator::ALL.into_iter().map(AlgebraElement::generator))
        .collect()
}

/// Whether `a` super-commutes with `H` and every generator.
pub fn is_central(a: &AlgebraElement) -> Result<bool, AlgebraError> {
    a.parity().ok_or(AlgebraError::MixedParity)?;
    for x in probes() {
        if !supercommutator(a, &x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `a` lies in the anti-center: an even element commuting with even
/// elements and anticommuting with odd ones, or an odd element commuting
/// with everything.
pub fn is_anticentral(a: &AlgebraElement) -> Result<bool, AlgebraError> {
    let parity = a.parity().ok_or(AlgebraError::MixedParity)?;
    for x in probes() {
        let ax = diamond(a, &x);
        let xa = diamond(&x, a);
        let flip = parity == Parity::Even && x.parity() == Some(Parity::Odd);
        let defect = if flip { &ax + &xa } else { &ax - &xa };
        if !defect.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image of a generator under the anti-automorphism `Θ`.
pub fn theta_generator(g: Generator) -> AlgebraElement {
    use Generator::*;
    match g {
        Xp1 => AlgebraElement::generator(Xm1),
        Xm1 => AlgebraElement::generator(Xp1),
        Xp2 => -AlgebraElement::generator(Xm2),
        Xm2 => -AlgebraElement::generator(Xp2),
        Hbar => AlgebraElement::generator(Hbar),
    }
}

/// `Θ(a)`: reverses every generator word, maps generators, fixes `R`.
pub fn theta(a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (m, f) in a.terms() {
        let mut image = AlgebraElement::one();
        for g in m.word().into_iter().rev() {
            image = diamond(&image, &theta_generator(g));
        }
        let image = diamond(&image, &AlgebraElement::scalar(f.clone()));
        out = &out + &image;
    }
    out
}

/// Unit `u_g(H)` with `ĝ = u_g(H) g` for the normalized generators.
pub fn hat_factor(g: Generator) -> DynamicalScalar {
    let one = DynamicalScalar::h_minus(1);
    match g {
        Generator::Xp2 => DynamicalScalar::one(),
        Generator::Xp1 | Generator::Hbar => one,
        Generator::Xm1 | Generator::Xm2 => one * DynamicalScalar::h_minus(2),
    }
}

/// The normalized generator `ĝ` written in the PBW basis.
pub fn hat_generator(g: Generator) -> AlgebraElement {
    AlgebraElement::term(hat_factor(g), Monomial::of(g))
}

/// `ĥ = (H - 1) h`.
pub fn h_hat() -> AlgebraElement {
    hat_generator(Generator::Hbar)
}

/// An element written as a left `R`-combination of ordered monomials in the
/// normalized generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HatElement {
    terms: BTreeMap<Monomial, DynamicalScalar>,
}

impl HatElement {
    pub fn from_terms<I: IntoIterator<Item = (Monomial, DynamicalScalar)>>(iter: I) -> Self {
        HatElement {
            terms: AlgebraElement::from_terms(iter).terms,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &DynamicalScalar)> {
        self.terms.iter()
    }
}

/// The ordered product of normalized generators for the exponents of `m`,
/// expanded in the PBW basis.
pub fn hat_monomial(m: &Monomial) -> AlgebraElement {
    m.word()
        .into_iter()
        .fold(AlgebraElement::one(), |acc, g| diamond(&acc, &hat_generator(g)))
}

fn hat_unit(m: &Monomial) -> DynamicalScalar {
    let expanded = hat_monomial(m);
    debug_assert_eq!(expanded.len(), 1);
    expanded.coefficient(m)
}

/// Expands normalized-generator monomials into the PBW basis.
pub fn from_hat(a: &HatElement) -> AlgebraElement {
    AlgebraElement::from_terms(a.terms.iter().map(|(m, f)| (*m, f * &hat_unit(m))))
}

/// Rewrites a PBW element over normalized-generator monomials.
pub fn to_hat(a: &AlgebraElement) -> HatElement {
    HatElement::from_terms(a.terms().map(|(m, f)| {
        let unit = hat_unit(m).invert().expect("hat factors are units");
        (*m, f * &unit)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn g(x: Generator) -> AlgebraElement {
        AlgebraElement::generator(x)
    }

    fn sc(f: DynamicalScalar) -> AlgebraElement {
        AlgebraElement::scalar(f)
    }

    #[test]
    fn ordered_words_are_already_normal() {
        let w = diamond(&diamond(&g(Xm2), &g(Xm1)), &g(Hbar));
        assert_eq!(w, AlgebraElement::monomial(Monomial::new(1, 1, 1, 0, 0)));
    }

    #[test]
    fn relation_examples() {
        let one = DynamicalScalar::one();
        assert_eq!(
            diamond(&g(Xp2), &g(Xp1)),
            AlgebraElement::term(&one - &(c(2) * inv(-1)), Monomial::new(0, 0, 0, 1, 1))
        );
        assert_eq!(
            diamond(&g(Xp1), &g(Xp1)),
            AlgebraElement::term(c(2) * inv(0), Monomial::new(0, 0, 1, 0, 1))
        );
        assert_eq!(
            diamond(&g(Hbar), &g(Xm2)),
            AlgebraElement::term(&one - &(c(2) * inv(1)), Monomial::new(1, 0, 1, 0, 0))
        );
        let a = &g(Xp1) + &sc(hvar());
        assert_eq!(diamond(&AlgebraElement::one(), &a), a);
    }

    #[test]
    fn scalars_shift_across_generators() {
        // Xp1 ◇ H = (H + 1) Xp1
        let lhs = diamond(&g(Xp1), &sc(hvar()));
        assert_eq!(lhs, AlgebraElement::term(&hvar() + &c(1), Monomial::of(Xp1)));
        // H commutes with h
        assert_eq!(diamond(&g(Hbar), &sc(hvar())), diamond(&sc(hvar()), &g(Hbar)));
    }

    #[test]
    fn small_associativity() {
        let ab_c = diamond(&diamond(&g(Xp1), &g(Xm1)), &g(Xm1));
        let a_bc = diamond(&g(Xp1), &diamond(&g(Xm1), &g(Xm1)));
        assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn supercommutator_with_h() {
        let comm = supercommutator(&sc(hvar()), &g(Xp1)).unwrap();
        assert_eq!(comm, -g(Xp1));
        let even = &g(Hbar) + &g(Xm2);
        assert!(supercommutator(&even, &even).unwrap().is_zero());
        let mixed = &g(Hbar) + &g(Xp1);
        assert_eq!(supercommutator(&mixed, &g(Xp1)), Err(AlgebraError::MixedParity));
    }

    #[test]
    fn anticommutator_of_odd_pair() {
        let anti = anticommutator(&g(Xp1), &g(Xm1)).unwrap();
        let expected = &diamond(&g(Xp1), &g(Xm1)) + &diamond(&g(Xm1), &g(Xp1));
        assert_eq!(anti, expected);
    }

    #[test]
    fn theta_on_generators() {
        assert_eq!(theta(&g(Xp1)), g(Xm1));
        for x in Generator::ALL {
            assert_eq!(theta(&theta(&g(x))), g(x));
        }
        let lhs = theta(&diamond(&g(Xp2), &g(Xm1)));
        let rhs = diamond(&g(Xp1), &(-g(Xm2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn centrality_of_h_hat() {
        assert!(is_central(&h_hat()).unwrap());
        assert!(!is_central(&sc(hvar())).unwrap());
        let mixed = &g(Hbar) + &g(Xp1);
        assert_eq!(is_central(&mixed), Err(AlgebraError::MixedParity));
    }

    #[test]
    fn hat_round_trip() {
        assert_eq!(
            hat_generator(Xp1),
            AlgebraElement::term(DynamicalScalar::h_minus(1), Monomial::of(Xp1))
        );
        let a = &diamond(&g(Xp2), &g(Xm2)) + &g(Xm1);
        assert_eq!(from_hat(&to_hat(&a)), a);
        // x̂α ◇ x̂α = 2 ĥ ◇ x̂₂α
        let lhs = diamond(&hat_generator(Xp1), &hat_generator(Xp1));
        let rhs = diamond(&h_hat(), &hat_generator(Xp2)).scale(&c(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let a = g(Xp2).pow(3);
        let b = g(Xm2).pow(3);
        // distinct monomials from other tests so the cache is cold
        let a = diamond(&a, &g(Xp1));
        let b = diamond(&g(Xm1), &b);
        let res = Rewriter::with_fuel(1).multiply(&a, &b);
        assert!(matches!(res, Err(AlgebraError::FuelExhausted(1))));
    }
}
