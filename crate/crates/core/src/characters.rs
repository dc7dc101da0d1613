//! Universal characteristic-class polynomials.
//!
//! - Power-sum (Newton-Girard) polynomials `s_k` in abstract variables or
//!   evaluated on arbitrary classes, computed by expanding the logarithm
//!   generating series `log(1 + x_1 t + x_2 t^2 + ...)`.
//! - The quadratic expression of the degree-`4k` Pontryagin class in Chern
//!   classes, and the identity `s_k(p_1,...,p_k) = s_{2k}(c_1,...,c_{2k})`.
//! - Additive character components `s_k(...)/k!` for the Chern, Pontryagin,
//!   and symplectic families, plus Whitney sums of character series.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{factorial, polynomial_family, rat, GeneratorSet, Rat, RingElement};
use crate::error::Error;

/// Abstract ring `Q[x1..xk]` with `deg x_i = 2i`.
pub fn newton_ring(k: u32) -> Arc<GeneratorSet> {
    polynomial_family("x", k, |i| 2 * i)
}

/// Chern-class ring `Q[c1..cn]` with `deg c_i = 2i`.
pub fn chern_ring(n: u32) -> Arc<GeneratorSet> {
    polynomial_family("c", n, |i| 2 * i)
}

/// Pontryagin-class ring `Q[p1..pn]` with `deg p_i = 4i`.
pub fn pontryagin_ring(n: u32) -> Arc<GeneratorSet> {
    polynomial_family("p", n, |i| 4 * i)
}

/// Symplectic-class ring `Q[q1..qn]` with `deg q_i = 4i`.
pub fn symplectic_ring(n: u32) -> Arc<GeneratorSet> {
    polynomial_family("q", n, |i| 4 * i)
}

/// The `k`-th power-sum polynomial `s_k` in the abstract variables `x_i`.
///
/// Defined by `sum_k (-1)^{k-1} s_k t^k / k = log(1 + sum_i x_i t^i)` and
/// computed by expanding that series; the test suite cross-checks the result
/// against the Newton recurrence, which this implementation never uses.
pub fn newton_girard(k: u32) -> RingElement {
    let ring = newton_ring(k);
    let vars: Vec<RingElement> = (1..=k)
        .map(|i| RingElement::generator(&ring, &format!("x{i}")))
        .collect();
    power_sum_on(&ring, &vars, k)
}

/// `s_k` evaluated on arbitrary classes: `classes[i-1]` plays the role of
/// `x_i`, and indices beyond the slice are zero.
pub fn power_sum_on(ambient: &Arc<GeneratorSet>, classes: &[RingElement], k: u32) -> RingElement {
    assert!(k >= 1, "power-sum index must be at least 1");
    let cap = k as usize;
    let zero = RingElement::zero(ambient);

    let mut series = vec![zero.clone(); cap + 1];
    for (slot, class) in series[1..].iter_mut().zip(classes) {
        *slot = class.clone();
    }

    // log(1 + u) = sum_{j >= 1} (-1)^{j-1} u^j / j, truncated past t^k.
    let mut log = vec![zero.clone(); cap + 1];
    let mut power = series.clone();
    for j in 1..=cap {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let scale = Rat::new(BigInt::from(sign), BigInt::from(j));
        for m in j..=cap {
            if !power[m].is_zero() {
                log[m] = log[m].add(&power[m].scale(&scale));
            }
        }
        if j < cap {
            power = truncated_product(&power, &series, cap, ambient);
        }
    }

    let sign = if k % 2 == 1 { 1 } else { -1 };
    log[cap].scale(&rat(sign * i64::from(k)))
}

/// Product of two `t`-polynomials with ring coefficients, dropping powers of
/// `t` above `cap`.
fn truncated_product(
    a: &[RingElement],
    b: &[RingElement],
    cap: usize,
    ambient: &Arc<GeneratorSet>,
) -> Vec<RingElement> {
    let mut out = vec![RingElement::zero(ambient); cap + 1];
    for i in 0..=cap {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=cap - i {
            if b[j].is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
        }
    }
    out
}

/// `s_k` from the Newton recurrence
/// `s_k = x_1 s_{k-1} - x_2 s_{k-2} + ... + (-1)^{k-1} k x_k`.
///
/// Independent of [`newton_girard`]; kept as the cross-check oracle used by
/// the self-test command and the test suite.
pub fn newton_girard_by_recurrence(k: u32) -> RingElement {
    assert!(k >= 1, "power-sum index must be at least 1");
    let ring = newton_ring(k);
    let var = |i: u32| RingElement::generator(&ring, &format!("x{i}"));
    let mut s: Vec<RingElement> = Vec::with_capacity(k as usize + 1);
    s.push(RingElement::zero(&ring)); // unused slot for index 0
    for m in 1..=k {
        let mut acc = RingElement::zero(&ring);
        for i in 1..m {
            let term = var(i).mul(&s[(m - i) as usize]);
            acc = if i % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        let last_sign = if m % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&var(m).scale(&rat(last_sign * i64::from(m))));
        s.push(acc);
    }
    s.pop().unwrap()
}

/// The degree-`4k` Pontryagin class as a quadratic expression in Chern
/// classes: `c_k^2 + 2 * sum_{i=0}^{k-1} (-1)^{k+i} c_{2k-i} c_i`, with
/// `c_0 = 1`, inside `Q[c1..c_{2k}]`.
pub fn chern_to_pontryagin(k: u32) -> RingElement {
    let ring = chern_ring(2 * k);
    chern_to_pontryagin_in(&ring, k)
}

/// Same as [`chern_to_pontryagin`], constructed inside a caller-supplied
/// Chern ring that contains at least `c1..c_{2k}`.
pub fn chern_to_pontryagin_in(ring: &Arc<GeneratorSet>, k: u32) -> RingElement {
    assert!(k >= 1, "Pontryagin index must be at least 1");
    let c = |i: u32| -> RingElement {
        if i == 0 {
            RingElement::one(ring)
        } else {
            RingElement::generator(ring, &format!("c{i}"))
        }
    };
    let mut out = c(k).pow(2);
    for i in 0..k {
        let sign = if (k + i).is_multiple_of(2) { 2 } else { -2 };
        out = out.add(&c(2 * k - i).mul(&c(i)).scale(&rat(sign)));
    }
    out
}

/// Outcome of checking `s_k(p_1,...,p_k) = s_{2k}(c_1,...,c_{2k})`, with both
/// canonical forms kept for diagnostics.
#[derive(Debug, Clone)]
pub struct SIdentityCheck {
    pub holds: bool,
    pub via_pontryagin: RingElement,
    pub via_chern: RingElement,
}

/// Substitutes the Chern expression of each `p_i` into `s_k` and compares
/// with `s_{2k}` evaluated directly on the Chern classes.
pub fn verify_s_identity(k: u32) -> SIdentityCheck {
    let ring = chern_ring(2 * k);
    let abstract_sk = newton_girard(k);
    let mut images = HashMap::new();
    for i in 1..=k {
        images.insert(format!("x{i}"), chern_to_pontryagin_in(&ring, i));
    }
    let via_pontryagin = abstract_sk.substitute(&ring, &images);
    let chern_vars: Vec<RingElement> = (1..=2 * k)
        .map(|i| RingElement::generator(&ring, &format!("c{i}")))
        .collect();
    let via_chern = power_sum_on(&ring, &chern_vars, 2 * k);
    SIdentityCheck {
        holds: via_pontryagin == via_chern,
        via_pontryagin,
        via_chern,
    }
}

/// The three additive character families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharFamily {
    /// Components in Chern classes; component `k` has degree `2k`.
    Chern,
    /// Components in Pontryagin classes; component `k` has degree `4k`.
    Pontryagin,
    /// Components in symplectic classes; component `k` has degree `4k`.
    Symplectic,
}

impl CharFamily {
    /// Degree of the `k`-th component.
    pub fn component_degree(self, k: u32) -> u32 {
        match self {
            CharFamily::Chern => 2 * k,
            CharFamily::Pontryagin | CharFamily::Symplectic => 4 * k,
        }
    }

    fn generator_prefix(self) -> &'static str {
        match self {
            CharFamily::Chern => "c",
            CharFamily::Pontryagin => "p",
            CharFamily::Symplectic => "q",
        }
    }

    fn ring(self, n: u32) -> Arc<GeneratorSet> {
        match self {
            CharFamily::Chern => chern_ring(n),
            CharFamily::Pontryagin => pontryagin_ring(n),
            CharFamily::Symplectic => symplectic_ring(n),
        }
    }
}

/// The `k`-th universal character component `s_k(a_1,...,a_k) / k!` in the
/// family's own class ring; component 0 is 1.
pub fn character_component(family: CharFamily, k: u32) -> RingElement {
    let ring = family.ring(k);
    if k == 0 {
        return RingElement::one(&ring);
    }
    let vars: Vec<RingElement> = (1..=k)
        .map(|i| RingElement::generator(&ring, &format!("{}{i}", family.generator_prefix())))
        .collect();
    let inv_kfact = Rat::new(BigInt::one(), factorial(k));
    power_sum_on(&ring, &vars, k).scale(&inv_kfact)
}

/// A characteristic-class series: components `0..=top`, all over one ambient
/// ring, with component `k` homogeneous of the family's degree for `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSeries {
    family: CharFamily,
    components: Vec<RingElement>,
}

impl CharSeries {
    /// Validates components: index 0 must be the constant 1 and component `k`
    /// must be zero or homogeneous of degree `family.component_degree(k)`.
    pub fn new(family: CharFamily, components: Vec<RingElement>) -> Result<Self, Error> {
        if components.is_empty()
            || !components[0].constant_coefficient().is_one()
            || components[0].term_count() != 1
        {
            return Err(Error::InvalidQuery(
                "a character series must start with the constant 1".into(),
            ));
        }
        for (k, comp) in components.iter().enumerate().skip(1) {
            let expected = family.component_degree(k as u32);
            if !comp.is_zero() && comp.homogeneous_degree() != Some(expected) {
                return Err(Error::InvalidQuery(format!(
                    "series component {k} must be homogeneous of degree {expected}"
                )));
            }
        }
        Ok(CharSeries { family, components })
    }

    /// The trivial series `1, 0, 0, ...` over the given ambient ring.
    pub fn trivial(family: CharFamily, ambient: &Arc<GeneratorSet>) -> Self {
        CharSeries {
            family,
            components: vec![RingElement::one(ambient)],
        }
    }

    /// The universal series of a family, components `0..=top`, all embedded
    /// in the family ring on `top` generators.
    pub fn universal(family: CharFamily, top: u32) -> Self {
        let ring = family.ring(top);
        let components = (0..=top)
            .map(|k| character_component(family, k).embed(&ring))
            .collect();
        CharSeries { family, components }
    }

    pub fn family(&self) -> CharFamily {
        self.family
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        self.components[0].ambient()
    }

    /// Component `k`, zero beyond the stored range.
    pub fn component(&self, k: u32) -> RingElement {
        self.components
            .get(k as usize)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(self.ambient()))
    }
}

/// Degree-`n` component of the product series: `sum_{i+j=n} a_i * b_j`.
///
/// Panics when the two series belong to different families; that is a usage
/// error, like mixing ambient rings.
pub fn whitney_sum(a: &CharSeries, b: &CharSeries, n: u32) -> RingElement {
    assert!(
        a.family() == b.family(),
        "Whitney sum requires series from the same family"
    );
    let mut acc = RingElement::zero(a.ambient());
    for i in 0..=n {
        let left = a.component(i);
        if left.is_zero() {
            continue;
        }
        acc = acc.add(&left.mul(&b.component(n - i)));
    }
    acc
}
