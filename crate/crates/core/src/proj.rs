//! Projective bundles P(E) of one-dimensional quotients.
//!
//! The ring of P(E) is modeled as the base ring with one extra degree-1
//! generator `xi` and the Grothendieck relation
//! `xi^e = c1(E) xi^(e-1) - c2(E) xi^(e-2) + ...` installed as a rewrite rule
//! on the model itself. Every class over the total model is therefore stored
//! in canonical reduced form (xi-degree below the rank), so the bundle
//! calculus runs on P(E) unchanged. Pushforward along the projection is
//! coefficient extraction at `xi^(e-1)`.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::bundle::BundleClass;
use crate::error::{Error, Result};
use crate::graded::{
    Generator, GradedClass, Integrated, Monomial, Rat, ReductionRule, VarietyModel,
};

const XI: &str = "xi";

#[derive(Debug)]
struct ProjData {
    base: VarietyModel,
    bundle: BundleClass,
    total: VarietyModel,
    xi_index: usize,
}

/// The projectivization of a bundle of positive rank over a base model.
#[derive(Debug, Clone)]
pub struct ProjBundle {
    data: Arc<ProjData>,
}

impl PartialEq for ProjBundle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.base == other.data.base && self.data.bundle == other.data.bundle)
    }
}

impl ProjBundle {
    /// Install the ring of P(E) over the bundle's model.
    pub fn new(bundle: &BundleClass) -> Result<Self> {
        let rank = bundle.rank();
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let base = bundle.model().clone();
        if base.generator_index(XI).is_some() {
            return Err(Error::DuplicateGenerator(XI.to_string()));
        }
        let xi_index = base.generators().len();
        let mut generators = base.generators().to_vec();
        generators.push(Generator::new(XI, 1));
        // xi^e = sum_{i=1..e} (-1)^(i+1) c_i(E) xi^(e-i)
        let mut replacement = Vec::new();
        for i in 1..=rank {
            let sign = if (i + 1) % 2 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
            for (mono, coeff) in bundle.total_chern().component(i).terms() {
                let shifted = Monomial::from_exponents(
                    mono.exponents()
                        .iter()
                        .copied()
                        .chain(std::iter::once((xi_index as u16, (rank - i) as u32)))
                        .collect(),
                );
                replacement.push((shifted, coeff * &sign));
            }
        }
        let rule = ReductionRule {
            gen: xi_index as u16,
            power: rank as u32,
            replacement,
            base_dimension: base.dimension(),
        };
        let total = VarietyModel::build(base.dimension() + rank - 1, generators, None, Some(rule))?;
        Ok(ProjBundle {
            data: Arc::new(ProjData {
                base,
                bundle: bundle.clone(),
                total,
                xi_index,
            }),
        })
    }

    pub fn base(&self) -> &VarietyModel {
        &self.data.base
    }

    pub fn bundle(&self) -> &BundleClass {
        &self.data.bundle
    }

    /// The ring of P(E), usable with every bundle operation.
    pub fn total_model(&self) -> &VarietyModel {
        &self.data.total
    }

    pub fn fiber_rank(&self) -> usize {
        self.data.bundle.rank()
    }

    pub fn dimension(&self) -> usize {
        self.data.total.dimension()
    }

    /// The tautological class xi = c1(O(1)).
    pub fn xi_class(&self) -> GradedClass {
        self.data.total.generator_class(self.data.xi_index)
    }

    /// Pull a base class back to the total ring.
    pub fn pullback(&self, class: &GradedClass) -> Result<GradedClass> {
        if class.model() != &self.data.base {
            return Err(Error::ModelMismatch);
        }
        Ok(GradedClass::from_terms(
            &self.data.total,
            class.terms().map(|(m, c)| (m.clone(), c.clone())),
        ))
    }

    /// Pull a bundle on the base back to the total ring.
    pub fn pullback_bundle(&self, bundle: &BundleClass) -> Result<BundleClass> {
        BundleClass::new(
            &self.data.total,
            bundle.rank(),
            self.pullback(bundle.total_chern())?,
        )
    }

    /// Canonical fibered form of a class on the total ring.
    pub fn reduce(&self, class: &GradedClass) -> Result<FiberedClass> {
        if class.model() != &self.data.total {
            return Err(Error::ModelMismatch);
        }
        let e = self.fiber_rank();
        let mut coeffs = vec![self.data.base.zero(); e];
        for (mono, coeff) in class.terms() {
            let (power, rest) = mono.split_generator(self.data.xi_index);
            debug_assert!((power as usize) < e, "model rule keeps xi-degree reduced");
            coeffs[power as usize].insert_term(rest, coeff.clone());
        }
        Ok(FiberedClass {
            ambient: self.clone(),
            coeffs,
        })
    }

    /// Reduce an explicit polynomial in xi with base coefficients.
    pub fn reduce_poly(&self, coeffs: &[GradedClass]) -> Result<FiberedClass> {
        let mut total = self.data.total.zero();
        for (j, alpha) in coeffs.iter().enumerate() {
            let lifted = self.pullback(alpha)?;
            total = total.add(&lifted.mul(&self.xi_class().pow(j as u32))?)?;
        }
        self.reduce(&total)
    }

    /// Pushforward to the base: the coefficient of xi^(e-1).
    pub fn pushforward(&self, class: &FiberedClass) -> GradedClass {
        class.coeffs[self.fiber_rank() - 1].clone()
    }

    /// Pushforward of a class on the total ring.
    pub fn pushforward_class(&self, class: &GradedClass) -> Result<GradedClass> {
        Ok(self.pushforward(&self.reduce(class)?))
    }

    /// Integrate over P(E): integrate the pushforward over the base.
    pub fn integrate_total(&self, class: &GradedClass) -> Result<Integrated> {
        self.data.base.integrate(&self.pushforward_class(class)?)
    }

    /// Relative cotangent bundle of the projection, of rank e-1: the twist by
    /// -xi of the difference of pi*E and O(1).
    pub fn relative_cotangent(&self) -> Result<BundleClass> {
        let e = self.fiber_rank();
        let pulled = self.pullback_bundle(&self.data.bundle)?;
        let taut = BundleClass::line(&self.data.total, &self.xi_class())?;
        let sub_chern = pulled.difference_class(&taut)?;
        let sub = BundleClass::new(&self.data.total, e - 1, sub_chern)?;
        sub.twist_by_line(&self.xi_class().neg())
    }

    /// Closed form of the relative canonical class for rank 2:
    /// -2 xi + pi* c1(E).
    pub fn relative_canonical_class(&self) -> Result<FiberedClass> {
        if self.fiber_rank() != 2 {
            return Err(Error::RankUnsupported(self.fiber_rank()));
        }
        let class = self
            .pullback(&self.data.bundle.total_chern().component(1))?
            .sub(&self.xi_class().scale(&crate::graded::rat_int(2)))?;
        self.reduce(&class)
    }
}

/// A class on P(E) in canonical form: base coefficients of 1, xi, ...,
/// xi^(e-1).
#[derive(Debug, Clone)]
pub struct FiberedClass {
    ambient: ProjBundle,
    coeffs: Vec<GradedClass>,
}

impl PartialEq for FiberedClass {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.coeffs == other.coeffs
    }
}

impl FiberedClass {
    pub fn ambient(&self) -> &ProjBundle {
        &self.ambient
    }

    /// Base coefficient of xi^j.
    pub fn coefficient(&self, j: usize) -> GradedClass {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| self.ambient.base().zero())
    }

    pub fn coefficients(&self) -> &[GradedClass] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GradedClass::is_zero)
    }

    /// The same class as an element of the total ring.
    pub fn to_total(&self) -> GradedClass {
        let mut out = self.ambient.total_model().zero();
        for (j, alpha) in self.coeffs.iter().enumerate() {
            let lifted = self.ambient.pullback(alpha).expect("base class");
            out = out
                .add(&lifted.mul(&self.ambient.xi_class().pow(j as u32)).unwrap())
                .unwrap();
        }
        out
    }
}

impl fmt::Display for FiberedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (j, alpha) in self.coeffs.iter().enumerate() {
            if alpha.is_zero() {
                continue;
            }
            let rendered = format!("({alpha})");
            parts.push(match j {
                0 => rendered,
                1 => format!("{rendered}*xi"),
                _ => format!("{rendered}*xi^{j}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}
