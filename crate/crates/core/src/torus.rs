//! Exterior-algebra models of even tori and their distinguished bundles.
//!
//! The cohomology of `T^{2n}` is the exterior algebra on degree-one classes
//! `e1, f1, ..., en, fn`, declared in that interleaved order so that the
//! orientation monomial is `e1*f1*...*en*fn` with positive sign. The torus is
//! parallelizable, so its own tangential classes never appear; what a torus
//! contributes to a characteristic number is an integral of powers of the
//! first Chern class of a distinguished line bundle (structure
//! [`TorusStructure::LineBundle`]) or of the first Pontryagin class of the
//! induced SU(2) bundle (structure [`TorusStructure::Su2Bundle`]).

use std::sync::Arc;

use crate::algebra::{rat, GeneratorSet, GeneratorSpec, Monomial, Rat, RingElement};
use crate::error::Error;

/// Which distinguished bundle a torus model carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TorusStructure {
    /// Bare parallelized torus: no bundle, nothing to integrate but 1.
    Framed,
    /// Carries the line bundle whose first Chern class is `sum_l el*fl`.
    LineBundle,
    /// Carries the SU(2) bundle induced from that line bundle; the dimension
    /// must be divisible by 4.
    Su2Bundle,
}

/// Cohomology model of `T^{dim}` with a chosen bundle structure.
#[derive(Debug, Clone)]
pub struct TorusModel {
    half_dim: u32,
    structure: TorusStructure,
    ring: Arc<GeneratorSet>,
}

impl TorusModel {
    /// Builds the model for `T^{dim}`; `dim` must be even, and divisible by 4
    /// for [`TorusStructure::Su2Bundle`].
    pub fn new(dim: u32, structure: TorusStructure) -> Result<Self, Error> {
        if !dim.is_multiple_of(2) {
            return Err(Error::InvalidQuery(format!(
                "torus dimension must be even, got {dim}"
            )));
        }
        if structure == TorusStructure::Su2Bundle && !dim.is_multiple_of(4) {
            return Err(Error::InvalidQuery(format!(
                "an SU(2) bundle torus needs dimension divisible by 4, got {dim}"
            )));
        }
        let half_dim = dim / 2;
        let gens = (1..=half_dim)
            .flat_map(|l| {
                [
                    GeneratorSpec::exterior(format!("e{l}"), 1),
                    GeneratorSpec::exterior(format!("f{l}"), 1),
                ]
            })
            .collect();
        let ring = GeneratorSet::new(gens).expect("torus generator specs are always valid");
        Ok(TorusModel {
            half_dim,
            structure,
            ring,
        })
    }

    pub fn dim(&self) -> u32 {
        2 * self.half_dim
    }

    pub fn structure(&self) -> TorusStructure {
        self.structure
    }

    /// The exterior algebra the model lives in.
    pub fn ring(&self) -> &Arc<GeneratorSet> {
        &self.ring
    }

    /// The orientation monomial `e1*f1*...*en*fn`; empty for `T^0`.
    pub fn orientation(&self) -> Monomial {
        let names: Vec<String> = (1..=self.half_dim)
            .flat_map(|l| [format!("e{l}"), format!("f{l}")])
            .collect();
        let factors: Vec<(&str, u32)> = names.iter().map(|n| (n.as_str(), 1)).collect();
        self.ring
            .monomial(&factors)
            .expect("orientation factors are valid by construction")
    }

    /// First Chern class of the distinguished line bundle: `sum_l el*fl`.
    ///
    /// A framed torus carries no bundle, so this errors for it.
    pub fn c1_class(&self) -> Result<RingElement, Error> {
        if self.structure == TorusStructure::Framed {
            return Err(Error::FramedTorus);
        }
        let mut sum = RingElement::zero(&self.ring);
        for l in 1..=self.half_dim {
            let e = RingElement::generator(&self.ring, &format!("e{l}"));
            let f = RingElement::generator(&self.ring, &format!("f{l}"));
            sum = sum.add(&e.mul(&f));
        }
        Ok(sum)
    }

    /// First Pontryagin class of the induced SU(2) bundle, `-2 * c1^2`.
    pub fn su2_pontryagin_class(&self) -> Result<RingElement, Error> {
        if self.structure != TorusStructure::Su2Bundle {
            return Err(Error::InvalidQuery(
                "this torus does not carry an SU(2) bundle".into(),
            ));
        }
        p1_of_induced_su2(&self.c1_class()?)
    }

    /// Integration over the fundamental class: the coefficient of the
    /// orientation monomial. Panics when `a` lives in a different ring.
    pub fn integrate(&self, a: &RingElement) -> Rat {
        assert!(
            a.ambient() == &self.ring,
            "integrand must live in this torus model's ring"
        );
        a.coefficient(&self.orientation())
    }
}

/// First Pontryagin class of the SU(2) bundle induced by a line bundle with
/// first Chern class `c1`: exactly `-2 * c1^2`.
///
/// The input must be homogeneous of degree 2 (or zero, for a trivial bundle).
pub fn p1_of_induced_su2(c1: &RingElement) -> Result<RingElement, Error> {
    if !c1.is_zero() && c1.homogeneous_degree() != Some(2) {
        return Err(Error::NotHomogeneous { expected: 2 });
    }
    Ok(c1.pow(2).scale(&rat(-2)))
}

/// Integral of `c1(L)^power` over `T^{2n}`, by full exterior expansion.
///
/// Equal to `n!` when `power == n` and zero otherwise.
pub fn c1_power_integral(n: u32, power: u32) -> Rat {
    let torus =
        TorusModel::new(2 * n, TorusStructure::LineBundle).expect("even dimension by construction");
    let c1 = torus.c1_class().expect("line-bundle torus has a c1");
    torus.integrate(&c1.pow(power))
}

/// Integral of `p1(Q)^power` over `T^{dim}` for the induced SU(2) bundle,
/// by full expansion; `dim` must be divisible by 4.
pub fn su2_class_power_integral(dim: u32, power: u32) -> Result<Rat, Error> {
    let torus = TorusModel::new(dim, TorusStructure::Su2Bundle)?;
    let p1 = torus.su2_pontryagin_class()?;
    Ok(torus.integrate(&p1.pow(power)))
}

/// Integral of `p1(Q)^n` over `T^{4n}` for the induced SU(2) bundle `Q`,
/// computed by expansion; equal to `(-2)^n * (2n)!` in closed form.
pub fn q_bundle_integral(n: u32) -> Rat {
    let torus = TorusModel::new(4 * n, TorusStructure::Su2Bundle)
        .expect("dimension divisible by 4 by construction");
    let p1 = torus
        .su2_pontryagin_class()
        .expect("SU(2) torus has the induced bundle class");
    torus.integrate(&p1.pow(n))
}
