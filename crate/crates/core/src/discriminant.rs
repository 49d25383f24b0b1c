//! Virtual degrees of discriminant loci of vector bundles.
//!
//! The ramification class of the universal-zero-scheme projection is computed
//! in the extended ring A(X)[zeta] with zeta free: the ambient projective
//! space of sections never has to be materialized, because the offset
//! pushforward rule turns the degree into the finite sum
//! `sum_j integral(rho_j c_(e-1+j)(E))`. Three independent pipelines produce
//! the same number: the ramification profile, the closed forms for the three
//! special ranks, and the top Chern class of a first jet bundle (on X itself
//! for line bundles, on P(E) otherwise).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bundle::{jet1_line, BundleClass};
use crate::error::{Error, Result};
use crate::graded::{rat_int, Generator, GradedClass, Rat, VarietyModel};
use crate::proj::ProjBundle;

const ZETA: &str = "zeta";

/// The ramification class split by powers of zeta: `rho[j]` is the base
/// coefficient of `zeta^j`, homogeneous of codimension `n - e + 1 - j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RamificationProfile {
    base: VarietyModel,
    rank: usize,
    rhos: Vec<GradedClass>,
}

impl RamificationProfile {
    pub fn base(&self) -> &VarietyModel {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rhos(&self) -> &[GradedClass] {
        &self.rhos
    }

    pub fn rho(&self, j: usize) -> GradedClass {
        self.rhos
            .get(j)
            .cloned()
            .unwrap_or_else(|| self.base.zero())
    }

    /// Codimension of the ramification class, n - e + 1.
    pub fn codimension(&self) -> usize {
        self.rhos.len() - 1
    }

    /// The profile as a single class in the extended ring A(X)[zeta].
    pub fn as_extended_class(&self) -> GradedClass {
        let (model, zeta) = extended_ring(&self.base, self.codimension())
            .expect("profile construction already vetted the base");
        let mut out = model.zero();
        for (j, rho) in self.rhos.iter().enumerate() {
            let lifted =
                GradedClass::from_terms(&model, rho.terms().map(|(m, c)| (m.clone(), c.clone())));
            out = out.add(&lifted.mul(&zeta.pow(j as u32)).unwrap()).unwrap();
        }
        out
    }
}

/// Expected degree of the discriminant plus the defect flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub expected_degree: BigInt,
    pub defect_positive: bool,
    pub hypotheses_note: String,
}

const HYPOTHESES_NOTE: &str = "expected degree equals the actual discriminant degree only for a \
very ample, 1-jet spanned bundle (reduced ramification cycle, multiplicity 1); these hypotheses \
are asserted by the caller, not checked. Under the same hypotheses, positive defect is \
equivalent to expected degree 0.";

/// Extend a base model by a free degree-1 generator `zeta`, truncating at the
/// given total degree.
fn extended_ring(base: &VarietyModel, dimension: usize) -> Result<(VarietyModel, GradedClass)> {
    let mut generators = base.generators().to_vec();
    generators.push(Generator::new(ZETA, 1));
    let model = VarietyModel::new(dimension, generators, None)?;
    let zeta = model.generator_class(generators_len(&model) - 1);
    Ok((model, zeta))
}

fn generators_len(model: &VarietyModel) -> usize {
    model.generators().len()
}

fn inject(model: &VarietyModel, class: &GradedClass) -> GradedClass {
    GradedClass::from_terms(model, class.terms().map(|(m, c)| (m.clone(), c.clone())))
}

fn check_rank(bundle: &BundleClass) -> Result<usize> {
    let n = bundle.model().dimension();
    let e = bundle.rank();
    if e < 1 || e > n {
        return Err(Error::RankOutOfRange {
            rank: e,
            dimension: n,
        });
    }
    Ok(e)
}

/// The ramification class of the section-space projection, split by powers
/// of zeta: the codimension n-e+1 component of
/// `c(Omega) s(E_dual tensor O(-zeta))`.
pub fn ramification_profile(
    bundle: &BundleClass,
    cotangent: &BundleClass,
) -> Result<RamificationProfile> {
    let base = bundle.model().clone();
    if cotangent.model() != &base {
        return Err(Error::ModelMismatch);
    }
    let e = check_rank(bundle)?;
    let n = base.dimension();
    let codim = n - e + 1;
    let (ext, zeta) = extended_ring(&base, codim)?;
    let omega_total = inject(&ext, cotangent.total_chern());
    let dual_total = inject(&ext, bundle.dual().total_chern());
    // Components above the extension's truncation cannot contribute; rank
    // bookkeeping is not needed past the Segre inversion, so work directly
    // with the twisted total Chern class.
    let dual_in_ext = BundleClass::new(&ext, e, dual_total)?;
    let twisted = dual_in_ext.twist_by_line(&zeta.neg())?;
    let profile = omega_total.mul(&twisted.segre_total())?.component(codim);
    // split by zeta powers back over the base
    let zeta_index = generators_len(&ext) - 1;
    let mut rhos = vec![base.zero(); codim + 1];
    for (mono, coeff) in profile.terms() {
        let (power, rest) = mono.split_generator(zeta_index);
        rhos[power as usize].insert_term(rest, coeff.clone());
    }
    Ok(RamificationProfile {
        base,
        rank: e,
        rhos,
    })
}

/// Expected degree of the discriminant: `sum_j integral(rho_j c_(e-1+j)(E))`.
///
/// The value is returned signed; positivity is a geometric statement that
/// holds under hypotheses this engine does not check.
pub fn expected_degree(bundle: &BundleClass, cotangent: &BundleClass) -> Result<BigInt> {
    let profile = ramification_profile(bundle, cotangent)?;
    degree_from_profile(&profile, bundle)
}

pub(crate) fn degree_from_profile(
    profile: &RamificationProfile,
    bundle: &BundleClass,
) -> Result<BigInt> {
    let base = bundle.model();
    let e = bundle.rank();
    let mut total = Rat::from_integer(BigInt::from(0));
    for (j, rho) in profile.rhos().iter().enumerate() {
        let pushed = rho.mul(&bundle.chern(e - 1 + j))?;
        total += base.integrate(&pushed)?.into_number()?;
    }
    rational_to_integer(total, "expected degree")
}

fn rational_to_integer(value: Rat, what: &'static str) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegralResult(what))
    }
}

/// Rank regimes admitting a closed-form degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormMode {
    /// rank 1
    RankOne,
    /// rank = dimension
    RankEqualsDim,
    /// rank = dimension - 1
    RankDimMinusOne,
}

/// Closed-form degree for the three special rank regimes.
pub fn closed_form_degree(
    bundle: &BundleClass,
    cotangent: &BundleClass,
    mode: ClosedFormMode,
) -> Result<BigInt> {
    let base = bundle.model().clone();
    if cotangent.model() != &base {
        return Err(Error::ModelMismatch);
    }
    let e = check_rank(bundle)?;
    let n = base.dimension();
    let mode_ok = match mode {
        ClosedFormMode::RankOne => e == 1,
        ClosedFormMode::RankEqualsDim => e == n,
        ClosedFormMode::RankDimMinusOne => n >= 1 && e == n - 1,
    };
    if !mode_ok {
        return Err(Error::ModeRankMismatch {
            rank: e,
            dimension: n,
        });
    }
    let total = match mode {
        ClosedFormMode::RankOne => {
            // sum_i (i+1) integral(c_(n-i)(Omega) c1(E)^i)
            let c1 = bundle.chern(1);
            let mut total = Rat::from_integer(BigInt::from(0));
            for i in 0..=n {
                let term = cotangent.chern(n - i).mul(&c1.pow(i as u32))?;
                let value = base.integrate(&term)?.into_number()?;
                total += value * rat_int(i as i64 + 1);
            }
            total
        }
        ClosedFormMode::RankEqualsDim => {
            // integral((c1(Omega) + c1(E)) c_(n-1)(E)) + n integral(c_n(E))
            let adjoint = cotangent.chern(1).add(&bundle.chern(1))?;
            let first = base
                .integrate(&adjoint.mul(&bundle.chern(n - 1))?)?
                .into_number()?;
            let second = base.integrate(&bundle.chern(n))?.into_number()?;
            first + second * rat_int(n as i64)
        }
        ClosedFormMode::RankDimMinusOne => {
            // integral((c2(Omega) + c1(Omega) c1(E) + c1(E)^2 - c2(E)) c_(n-2)(E))
            //   + integral(((n-1) c1(Omega) + n c1(E)) c_(n-1)(E))
            let c1e = bundle.chern(1);
            let head = cotangent
                .chern(2)
                .add(&cotangent.chern(1).mul(&c1e)?)?
                .add(&c1e.pow(2))?
                .sub(&bundle.chern(2))?;
            let first = base
                .integrate(&head.mul(&bundle.chern(n - 2))?)?
                .into_number()?;
            let tail = cotangent
                .chern(1)
                .scale(&rat_int(n as i64 - 1))
                .add(&c1e.scale(&rat_int(n as i64)))?;
            let second = base
                .integrate(&tail.mul(&bundle.chern(n - 1))?)?
                .into_number()?;
            first + second
        }
    };
    rational_to_integer(total, "closed-form degree")
}

/// The jet-bundle route: the canonical integral of the top Chern class of a
/// first jet bundle, on X itself for a line bundle and on P(E) otherwise.
pub fn jet_route_degree(bundle: &BundleClass, cotangent: &BundleClass) -> Result<BigInt> {
    let base = bundle.model().clone();
    if cotangent.model() != &base {
        return Err(Error::ModelMismatch);
    }
    let e = check_rank(bundle)?;
    let n = base.dimension();
    let value = if e == 1 {
        let jet = jet1_line(bundle, cotangent)?;
        base.integrate(&jet.chern(n))?.into_number()?
    } else {
        let p = ProjBundle::new(bundle)?;
        let taut = BundleClass::line(p.total_model(), &p.xi_class())?;
        let omega_total = p
            .pullback_bundle(cotangent)?
            .direct_sum(&p.relative_cotangent()?)?;
        let jet = jet1_line(&taut, &omega_total)?;
        let top = jet.chern(p.dimension());
        p.integrate_total(&top)?.into_number()?
    };
    rational_to_integer(value, "jet-route degree")
}

/// Expected degree plus the defect classification and the hypothesis caveat.
pub fn classify(bundle: &BundleClass, cotangent: &BundleClass) -> Result<DiscriminantReport> {
    let delta = expected_degree(bundle, cotangent)?;
    Ok(DiscriminantReport {
        defect_positive: delta.is_zero(),
        expected_degree: delta,
        hypotheses_note: HYPOTHESES_NOTE.to_string(),
    })
}

/// The portion of the degree sum carried by `rho_j` for j >= 2; identically
/// zero because c_k(E) vanishes above the rank.
pub fn high_rho_contribution(profile: &RamificationProfile, bundle: &BundleClass) -> Result<Rat> {
    let base = bundle.model();
    let e = bundle.rank();
    let mut total = Rat::from_integer(BigInt::from(0));
    for (j, rho) in profile.rhos().iter().enumerate().skip(2) {
        let pushed = rho.mul(&bundle.chern(e - 1 + j))?;
        total += base.integrate(&pushed)?.into_number()?;
    }
    Ok(total)
}
