//! Graded-commutative algebra kernel over exact rationals.
//!
//! An ambient [`GeneratorSet`] fixes a finite ordered list of generators, each
//! either polynomial (even degree, arbitrary powers) or exterior (odd degree,
//! square zero). Elements are finite rational linear combinations of
//! monomials kept in a canonical normal form, so equality is map equality.
//!
//! Multiplication follows the Koszul rule: transposing two odd-degree
//! generators flips the sign, and an exterior generator squares to zero.
//! Monomials are ordered by the ambient declaration order of the generators;
//! the plain-text serialization lists terms in descending monomial order and
//! round-trips exactly through [`RingElement::parse`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar used for every coefficient in the crate.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact factorial.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Exact binomial coefficient `n choose k`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Whether a generator is polynomial (even degree) or exterior (odd degree).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Commutes with everything; arbitrary non-negative exponents.
    Polynomial,
    /// Anticommutes with other exterior generators; squares to zero.
    Exterior,
}

/// One named generator with its cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

impl GeneratorSpec {
    pub fn polynomial(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            kind: GeneratorKind::Polynomial,
        }
    }

    pub fn exterior(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            kind: GeneratorKind::Exterior,
        }
    }
}

/// Ordered ambient list of generators; the declaration order is the canonical
/// monomial order used for normal forms and serialization.
#[derive(Debug)]
pub struct GeneratorSet {
    gens: Vec<GeneratorSpec>,
    index: HashMap<String, usize>,
}

impl PartialEq for GeneratorSet {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GeneratorSet {}

impl GeneratorSet {
    /// Validates and freezes a generator list.
    ///
    /// Names must be ASCII, start with a letter, continue alphanumerically,
    /// and be unique. Polynomial generators must have positive even degree,
    /// exterior generators positive odd degree.
    pub fn new(gens: Vec<GeneratorSpec>) -> Result<Arc<Self>, Error> {
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            let mut chars = g.name.chars();
            let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
            let tail_ok = chars.all(|c| c.is_ascii_alphanumeric());
            if !head_ok || !tail_ok {
                return Err(Error::Parse(format!("bad generator name {:?}", g.name)));
            }
            if g.degree == 0 {
                return Err(Error::Parse(format!(
                    "generator {} must have positive degree",
                    g.name
                )));
            }
            let parity_ok = match g.kind {
                GeneratorKind::Polynomial => g.degree % 2 == 0,
                GeneratorKind::Exterior => g.degree % 2 == 1,
            };
            if !parity_ok {
                return Err(Error::Parse(format!(
                    "generator {} has degree {} inconsistent with its kind",
                    g.name, g.degree
                )));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate generator name {}", g.name)));
            }
        }
        Ok(Arc::new(GeneratorSet { gens, index }))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn specs(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn spec(&self, idx: usize) -> &GeneratorSpec {
        &self.gens[idx]
    }

    /// Builds a monomial from `(name, exponent)` factors.
    pub fn monomial(&self, factors: &[(&str, u32)]) -> Result<Monomial, Error> {
        let mut exps: BTreeMap<usize, u32> = BTreeMap::new();
        for &(name, exp) in factors {
            let idx = self
                .position(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            if exp > 0 {
                *exps.entry(idx).or_insert(0) += exp;
            }
        }
        for (&idx, &exp) in &exps {
            if self.spec(idx).kind == GeneratorKind::Exterior && exp > 1 {
                return Err(Error::Parse(format!(
                    "exterior generator {} cannot carry exponent {exp}",
                    self.spec(idx).name
                )));
            }
        }
        Ok(Monomial {
            exps: exps.into_iter().collect(),
        })
    }
}

/// Convenience constructor for a family `prefix1, ..., prefixN` of polynomial
/// generators with degrees given by `degree_of(i)`.
pub fn polynomial_family(
    prefix: &str,
    count: u32,
    degree_of: impl Fn(u32) -> u32,
) -> Arc<GeneratorSet> {
    let gens = (1..=count)
        .map(|i| GeneratorSpec::polynomial(format!("{prefix}{i}"), degree_of(i)))
        .collect();
    GeneratorSet::new(gens).expect("polynomial family specs are always valid")
}

/// A normalized monomial: sparse exponents sorted by generator position.
///
/// Equal monomials are equal maps; the ordering is lexicographic in the dense
/// exponent vector, so a monomial heavier in earlier generators is greater.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(usize, u32)>,
}

impl Monomial {
    /// The empty monomial, i.e. the constant 1.
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn is_constant(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree with respect to the ambient generator degrees.
    pub fn degree(&self, ambient: &GeneratorSet) -> u32 {
        self.exps
            .iter()
            .map(|&(idx, exp)| ambient.spec(idx).degree * exp)
            .sum()
    }

    fn display(&self, ambient: &GeneratorSet) -> String {
        let mut out = String::new();
        for (i, &(idx, exp)) in self.exps.iter().enumerate() {
            if i > 0 {
                out.push('*');
            }
            out.push_str(&ambient.spec(idx).name);
            if exp > 1 {
                out.push('^');
                out.push_str(&exp.to_string());
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let mut a = self.exps.iter();
        let mut b = other.exps.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(ia, ea)), Some(&(ib, eb))) => {
                    if ia != ib {
                        // The monomial with a nonzero exponent at the earlier
                        // generator is the greater one.
                        return if ia < ib {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the graded-commutative algebra over a fixed ambient set.
///
/// Stored as a map from normalized monomials to nonzero rational
/// coefficients; the zero element is the empty map.
#[derive(Debug, Clone)]
pub struct RingElement {
    ambient: Arc<GeneratorSet>,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.terms == other.terms
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn zero(ambient: &Arc<GeneratorSet>) -> Self {
        RingElement {
            ambient: Arc::clone(ambient),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &Arc<GeneratorSet>) -> Self {
        Self::constant(ambient, Rat::one())
    }

    pub fn constant(ambient: &Arc<GeneratorSet>, value: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::one(), value);
        }
        RingElement {
            ambient: Arc::clone(ambient),
            terms,
        }
    }

    /// The generator with the given name, as an element.
    ///
    /// Panics when the name is not in the ambient set; generator names are
    /// chosen by the caller that built the set.
    pub fn generator(ambient: &Arc<GeneratorSet>, name: &str) -> Self {
        let idx = ambient
            .position(name)
            .unwrap_or_else(|| panic!("generator {name:?} not in the ambient set"));
        let mut terms = BTreeMap::new();
        terms.insert(
            Monomial {
                exps: vec![(idx, 1)],
            },
            Rat::one(),
        );
        RingElement {
            ambient: Arc::clone(ambient),
            terms,
        }
    }

    /// Builds an element from monomial/coefficient pairs.
    pub fn from_terms(
        ambient: &Arc<GeneratorSet>,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
    ) -> Self {
        let mut out = Self::zero(ambient);
        for (mono, coeff) in terms {
            out.add_term(mono, coeff);
        }
        out
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial; zero when absent.
    pub fn coefficient(&self, mono: &Monomial) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// The constant (degree-zero) coefficient.
    pub fn constant_coefficient(&self) -> Rat {
        self.coefficient(&Monomial::one())
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn assert_same_ambient(&self, other: &Self) {
        let same = Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient;
        assert!(
            same,
            "elements from different ambient generator sets cannot be combined"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ambient(other);
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.add_term(mono.clone(), coeff.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        RingElement {
            ambient: Arc::clone(&self.ambient),
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.ambient);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * factor))
            .collect();
        RingElement {
            ambient: Arc::clone(&self.ambient),
            terms,
        }
    }

    /// Product of two monomials: `None` when an exterior generator repeats,
    /// otherwise the merged monomial and the Koszul sign.
    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let ambient = &self.ambient;
        let odd = |idx: usize| ambient.spec(idx).kind == GeneratorKind::Exterior;

        // Koszul sign: each odd generator of `b` moves left past every odd
        // generator of `a` with a strictly larger position.
        let a_odds: Vec<usize> = a
            .exps
            .iter()
            .filter(|&&(idx, _)| odd(idx))
            .map(|&(idx, _)| idx)
            .collect();
        let mut inversions = 0usize;
        for &(idx, _) in b.exps.iter().filter(|&&(idx, _)| odd(idx)) {
            inversions += a_odds.iter().filter(|&&aidx| aidx > idx).count();
        }

        let mut exps: Vec<(usize, u32)> = Vec::with_capacity(a.exps.len() + b.exps.len());
        let mut ia = a.exps.iter().peekable();
        let mut ib = b.exps.iter().peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(&&ea), None) => {
                    exps.push(ea);
                    ia.next();
                }
                (None, Some(&&eb)) => {
                    exps.push(eb);
                    ib.next();
                }
                (Some(&&(xa, pa)), Some(&&(xb, pb))) => {
                    if xa < xb {
                        exps.push((xa, pa));
                        ia.next();
                    } else if xb < xa {
                        exps.push((xb, pb));
                        ib.next();
                    } else {
                        if odd(xa) {
                            return None;
                        }
                        exps.push((xa, pa + pb));
                        ia.next();
                        ib.next();
                    }
                }
            }
        }
        Some((Monomial { exps }, inversions % 2 == 1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ambient(other);
        let mut out = Self::zero(&self.ambient);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((mono, negate)) = self.mul_monomials(ma, mb) {
                    let mut coeff = ca * cb;
                    if negate {
                        coeff = -coeff;
                    }
                    out.add_term(mono, coeff);
                }
            }
        }
        out
    }

    /// `self` raised to a non-negative power by repeated multiplication.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one(&self.ambient);
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }

    /// The part of `self` in a single degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree(&self.ambient) == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        RingElement {
            ambient: Arc::clone(&self.ambient),
            terms,
        }
    }

    /// Drops all terms of degree strictly above `degree`.
    pub fn truncate_above(&self, degree: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree(&self.ambient) <= degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        RingElement {
            ambient: Arc::clone(&self.ambient),
            terms,
        }
    }

    /// Degree of the highest-degree term, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree(&self.ambient)).max()
    }

    /// `Some(d)` when the element is nonzero and concentrated in degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.degree(&self.ambient));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Re-expresses `self` in a superset ambient, matching generators by name.
    ///
    /// Panics when a generator in the support of `self` is absent from the
    /// target or declared there with a different degree or kind.
    pub fn embed(&self, target: &Arc<GeneratorSet>) -> Self {
        let mut out = RingElement::zero(target);
        for (mono, coeff) in &self.terms {
            let mut exps: Vec<(usize, u32)> = mono
                .exps
                .iter()
                .map(|&(idx, exp)| {
                    let spec = self.ambient.spec(idx);
                    let tidx = target.position(&spec.name).unwrap_or_else(|| {
                        panic!("generator {} missing from the target set", spec.name)
                    });
                    assert!(
                        target.spec(tidx).degree == spec.degree
                            && target.spec(tidx).kind == spec.kind,
                        "generator {} declared differently in the target set",
                        spec.name
                    );
                    (tidx, exp)
                })
                .collect();
            exps.sort_unstable_by_key(|&(idx, _)| idx);
            out.add_term(Monomial { exps }, coeff.clone());
        }
        out
    }

    /// Substitutes elements for polynomial generators.
    ///
    /// Every generator in the support of `self` must have an image in
    /// `images`, and all images must live in `target`. Panics on exterior
    /// generators in the support or on a missing image; substitution is a
    /// kernel-internal operation with caller-controlled inputs.
    pub fn substitute(
        &self,
        target: &Arc<GeneratorSet>,
        images: &HashMap<String, RingElement>,
    ) -> Self {
        let mut out = RingElement::zero(target);
        for (mono, coeff) in &self.terms {
            let mut acc = RingElement::constant(target, coeff.clone());
            for &(idx, exp) in &mono.exps {
                let spec = self.ambient.spec(idx);
                assert!(
                    spec.kind == GeneratorKind::Polynomial,
                    "substitution is defined for polynomial generators only"
                );
                let image = images
                    .get(&spec.name)
                    .unwrap_or_else(|| panic!("no substitution image for generator {}", spec.name));
                acc = acc.mul(&image.pow(exp));
            }
            out = out.add(&acc);
        }
        out
    }

    /// Parses the plain-text form produced by `Display`.
    ///
    /// Grammar: terms separated by `+`/`-`, each a `*`-product of integer or
    /// fraction coefficients and `name^exp` powers. Whitespace is free.
    pub fn parse(ambient: &Arc<GeneratorSet>, text: &str) -> Result<Self, Error> {
        Parser {
            ambient,
            chars: text.chars().peekable(),
        }
        .parse_expression()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coeff.abs();
            let mono_text = mono.display(&self.ambient);
            if mono_text.is_empty() {
                write!(f, "{}", rational_text(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{mono_text}")?;
            } else {
                write!(f, "{}*{mono_text}", rational_text(&magnitude))?;
            }
        }
        Ok(())
    }
}

fn rational_text(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct Parser<'a> {
    ambient: &'a Arc<GeneratorSet>,
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn parse_expression(&mut self) -> Result<RingElement, Error> {
        let mut out = RingElement::zero(self.ambient);
        self.skip_ws();
        let mut negate = false;
        if self.chars.peek() == Some(&'-') {
            self.chars.next();
            negate = true;
        } else if self.chars.peek() == Some(&'+') {
            self.chars.next();
        }
        loop {
            let term = self.parse_term()?;
            out = if negate {
                out.sub(&term)
            } else {
                out.add(&term)
            };
            self.skip_ws();
            match self.chars.next() {
                None => return Ok(out),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(c) => return Err(Error::Parse(format!("unexpected character {c:?}"))),
            }
        }
    }

    fn parse_term(&mut self) -> Result<RingElement, Error> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            if self.chars.peek() == Some(&'*') {
                self.chars.next();
                let factor = self.parse_factor()?;
                acc = acc.mul(&factor);
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_factor(&mut self) -> Result<RingElement, Error> {
        self.skip_ws();
        match self.chars.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.parse_integer()?;
                self.skip_ws();
                if self.chars.peek() == Some(&'/') {
                    self.chars.next();
                    self.skip_ws();
                    let denom = self.parse_integer()?;
                    if denom.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(RingElement::constant(self.ambient, Rat::new(numer, denom)))
                } else {
                    Ok(RingElement::constant(
                        self.ambient,
                        Rat::from_integer(numer),
                    ))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.parse_name();
                if self.ambient.position(&name).is_none() {
                    return Err(Error::Parse(format!("unknown generator {name:?}")));
                }
                let mut exp = 1u32;
                self.skip_ws();
                if self.chars.peek() == Some(&'^') {
                    self.chars.next();
                    self.skip_ws();
                    let e = self.parse_integer()?;
                    exp = u32::try_from(e)
                        .map_err(|_| Error::Parse(format!("bad exponent on {name}")))?;
                }
                Ok(RingElement::generator(self.ambient, &name).pow(exp))
            }
            other => Err(Error::Parse(format!(
                "expected a coefficient or generator, found {other:?}"
            ))),
        }
    }

    fn parse_integer(&mut self) -> Result<BigInt, Error> {
        let mut digits = String::new();
        while self.chars.peek().is_some_and(|c| c.is_ascii_digit()) {
            digits.push(self.chars.next().unwrap());
        }
        if digits.is_empty() {
            return Err(Error::Parse("expected an integer".into()));
        }
        digits
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {digits:?}: {e}")))
    }

    fn parse_name(&mut self) -> String {
        let mut name = String::new();
        while self.chars.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            name.push(self.chars.next().unwrap());
        }
        name
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        RingElement::add(self, rhs)
    }
}

impl std::ops::Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        RingElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        RingElement::mul(self, rhs)
    }
}

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::neg(self)
    }
}
