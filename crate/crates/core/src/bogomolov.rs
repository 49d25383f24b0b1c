//! Rank-2 instability machinery on a free formal surface.
//!
//! Every identity here is established symbolically: the surface carries the
//! divisor generators D (the determinant), A (a candidate destabilizer), an
//! ample H, the canonical class K, and degree-2 generators c2E and eX for the
//! second Chern classes of the bundle and of the tangent bundle. No
//! integration table is installed, so degree-2 statements are polynomial
//! identities holding on every surface at once. The numeric instability test
//! consumes plain intersection numbers instead.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bundle::{jet1_line, BundleClass};
use crate::error::{Error, Result};
use crate::graded::{rat_frac, rat_int, Generator, GradedClass, VarietyModel};
use crate::proj::{FiberedClass, ProjBundle};

/// The free surface ring used for the symbolic rank-2 computations.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSurface {
    model: VarietyModel,
    det: usize,
    destab: usize,
    ample: usize,
    c2_bundle: usize,
    canonical: Option<usize>,
    c2_tangent: Option<usize>,
}

impl FormalSurface {
    /// The standard surface with generators D, A, H, c2E, K, eX.
    pub fn standard() -> Self {
        let model = VarietyModel::new(
            2,
            vec![
                Generator::new("D", 1),
                Generator::new("A", 1),
                Generator::new("H", 1),
                Generator::new("c2E", 2),
                Generator::new("K", 1),
                Generator::new("eX", 2),
            ],
            None,
        )
        .expect("standard surface generators are valid");
        FormalSurface::from_model(model).expect("standard surface carries all generators")
    }

    /// Adopt any dimension-2 model carrying at least D, A, H, and c2E.
    /// K and eX stay optional; they are only needed for Riemann-Roch.
    pub fn from_model(model: VarietyModel) -> Result<Self> {
        let det = model
            .generator_index("D")
            .ok_or(Error::MissingGenerator("D"))?;
        let destab = model
            .generator_index("A")
            .ok_or(Error::MissingGenerator("A"))?;
        let ample = model
            .generator_index("H")
            .ok_or(Error::MissingGenerator("H"))?;
        let c2_bundle = model
            .generator_index("c2E")
            .ok_or(Error::MissingGenerator("c2E"))?;
        let canonical = model.generator_index("K");
        let c2_tangent = model.generator_index("eX");
        Ok(FormalSurface {
            model,
            det,
            destab,
            ample,
            c2_bundle,
            canonical,
            c2_tangent,
        })
    }

    pub fn model(&self) -> &VarietyModel {
        &self.model
    }

    pub fn det_class(&self) -> GradedClass {
        self.model.generator_class(self.det)
    }

    pub fn destabilizer_class(&self) -> GradedClass {
        self.model.generator_class(self.destab)
    }

    pub fn ample_class(&self) -> GradedClass {
        self.model.generator_class(self.ample)
    }

    pub fn c2_bundle_class(&self) -> GradedClass {
        self.model.generator_class(self.c2_bundle)
    }

    pub fn canonical_class(&self) -> Result<GradedClass> {
        self.canonical
            .map(|i| self.model.generator_class(i))
            .ok_or(Error::MissingGenerator("K"))
    }

    pub fn c2_tangent_class(&self) -> Result<GradedClass> {
        self.c2_tangent
            .map(|i| self.model.generator_class(i))
            .ok_or(Error::MissingGenerator("eX"))
    }
}

/// A rank-2 bundle with c1 = D and c2 = c2E over the formal surface,
/// together with its projectivization.
#[derive(Debug, Clone)]
pub struct Rank2Setup {
    surface: FormalSurface,
    bundle: BundleClass,
    proj: ProjBundle,
}

impl Rank2Setup {
    pub fn standard() -> Self {
        Rank2Setup::over(FormalSurface::standard()).expect("standard setup is valid")
    }

    pub fn over(surface: FormalSurface) -> Result<Self> {
        let chern = surface
            .model()
            .one()
            .add(&surface.det_class())?
            .add(&surface.c2_bundle_class())?;
        let bundle = BundleClass::new(surface.model(), 2, chern)?;
        let proj = ProjBundle::new(&bundle)?;
        Ok(Rank2Setup {
            surface,
            bundle,
            proj,
        })
    }

    pub fn surface(&self) -> &FormalSurface {
        &self.surface
    }

    pub fn bundle(&self) -> &BundleClass {
        &self.bundle
    }

    pub fn proj(&self) -> &ProjBundle {
        &self.proj
    }
}

fn check_multidegree(d: i64) -> Result<()> {
    if d < 1 {
        Err(Error::BadMultiDegree(d))
    } else {
        Ok(())
    }
}

/// Codimension-2 class of the non-etale locus of a degree-d multisection cut
/// out by a section of O(d) twisted by -A:
/// ((d-2) xi + pi*(D - A)) (d xi - pi*A), reduced on P(E).
pub fn branch_gamma(setup: &Rank2Setup, d: i64) -> Result<FiberedClass> {
    check_multidegree(d)?;
    let a = setup.surface().destabilizer_class();
    gamma_on(setup.proj(), d, &a)
}

/// The same class over an arbitrary projectivized rank-2 bundle; `a` is the
/// base twist divisor class.
pub(crate) fn gamma_on(proj: &ProjBundle, d: i64, a: &GradedClass) -> Result<FiberedClass> {
    let xi = proj.xi_class();
    let det = proj.pullback(&proj.bundle().total_chern().component(1))?;
    let a_up = proj.pullback(a)?;
    let first = xi.scale(&rat_int(d - 2)).add(&det.sub(&a_up)?)?;
    let second = xi.scale(&rat_int(d)).sub(&a_up)?;
    proj.reduce(&first.mul(&second)?)
}

/// Pushforward of [`branch_gamma`] to the surface; works out to the
/// degree-1 class (d-1)(dD - 2A).
pub fn branch_divisor_class(setup: &Rank2Setup, d: i64) -> Result<GradedClass> {
    Ok(setup.proj().pushforward(&branch_gamma(setup, d)?))
}

/// Note attached to branch-class reports: this engine derives the divisor
/// class with A-coefficient -2(d-1); a variant with the opposite sign on the
/// A-term circulates, and the two are surfaced rather than reconciled.
pub const BRANCH_SIGN_NOTE: &str = "class derived by pushforward of the non-etale cycle: \
(d-1)*(d*D - 2*A). A stated variant uses +2(d-1)*A; the derivation here yields the minus sign.";

/// Branch divisor class together with the sign caveat.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchReport {
    pub class: GradedClass,
    pub multidegree: i64,
    pub sign_note: &'static str,
}

pub fn branch_report(setup: &Rank2Setup, d: i64) -> Result<BranchReport> {
    Ok(BranchReport {
        class: branch_divisor_class(setup, d)?,
        multidegree: d,
        sign_note: BRANCH_SIGN_NOTE,
    })
}

/// Independent derivation of the same codimension-2 class as the second
/// Chern class of a first relative jet bundle.
pub fn gamma_via_relative_jets(setup: &Rank2Setup, d: i64) -> Result<FiberedClass> {
    check_multidegree(d)?;
    let proj = setup.proj();
    let xi = proj.xi_class();
    let a_up = proj.pullback(&setup.surface().destabilizer_class())?;
    let line = BundleClass::line(proj.total_model(), &xi.scale(&rat_int(d)).sub(&a_up)?)?;
    let omega_rel = proj.relative_cotangent()?;
    let jet = jet1_line(&line, &omega_rel)?;
    proj.reduce(&jet.chern(2))
}

/// The Euler characteristic cubic of the determinant-trivial symmetric
/// powers, as an interpolated polynomial in m with formal degree-2 class
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiCubic {
    /// Coefficients of m^0, m^1, m^2, m^3.
    pub coefficients: [GradedClass; 4],
}

impl ChiCubic {
    /// Evaluate the cubic at an integer point.
    pub fn evaluate(&self, m: i64) -> GradedClass {
        let model = self.coefficients[0].model().clone();
        let mut out = model.zero();
        for (k, coeff) in self.coefficients.iter().enumerate() {
            out = out
                .add(&coeff.scale(&rat_int(m.pow(k as u32))))
                .expect("same model");
        }
        out
    }
}

/// chi(m) = integral of ch(Sym^(2m) E tensor O(-mD)) times the Todd class,
/// computed in formal mode at m = 0..3 and interpolated.
pub fn chi_sym_cubic(setup: &Rank2Setup) -> Result<ChiCubic> {
    let surface = setup.surface();
    let model = surface.model().clone();
    let k = surface.canonical_class()?;
    let e_top = surface.c2_tangent_class()?;
    // td = 1 - K/2 + (K^2 + eX)/12
    let todd = model
        .one()
        .sub(&k.scale(&rat_frac(1, 2)))?
        .add(&k.pow(2).add(&e_top)?.scale(&rat_frac(1, 12)))?;
    let mut samples = Vec::new();
    for m in 0..=3i64 {
        samples.push(chi_value(setup, &todd, m)?);
    }
    // Newton forward differences for the interpolating cubic in m.
    let d1 = [
        samples[1].sub(&samples[0])?,
        samples[2].sub(&samples[1])?,
        samples[3].sub(&samples[2])?,
    ];
    let d2 = [d1[1].sub(&d1[0])?, d1[2].sub(&d1[1])?];
    let d3 = d2[1].sub(&d2[0])?;
    // chi(m) = s0 + d1 m + d2/2 m(m-1) + d3/6 m(m-1)(m-2)
    let c0 = samples[0].clone();
    let c1 = d1[0]
        .sub(&d2[0].scale(&rat_frac(1, 2)))?
        .add(&d3.scale(&rat_frac(1, 3)))?;
    let c2 = d2[0]
        .scale(&rat_frac(1, 2))
        .sub(&d3.scale(&rat_frac(1, 2)))?;
    let c3 = d3.scale(&rat_frac(1, 6));
    Ok(ChiCubic {
        coefficients: [c0, c1, c2, c3],
    })
}

/// One Euler characteristic in formal mode: the degree-2 component of
/// ch(Sym^(2m) E tensor O(-mD)) td.
pub(crate) fn chi_value(setup: &Rank2Setup, todd: &GradedClass, m: i64) -> Result<GradedClass> {
    let surface = setup.surface();
    let sym = setup.bundle().sym_power(2 * m as usize)?;
    let twisted = sym.twist_by_line(&surface.det_class().scale(&rat_int(-m)))?;
    let ch = twisted.chern_character();
    Ok(ch.terms().mul(todd)?.component(2))
}

/// Numeric input for the instability test: intersection numbers of the
/// candidate destabilizing sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstabilityInput {
    pub d_squared: i64,
    pub a_squared: i64,
    pub a_dot_d: i64,
    pub a_dot_h: i64,
    pub d_dot_h: i64,
    pub c2: i64,
    pub length_w: i64,
}

/// Outcome of the numeric instability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstabilityReport {
    /// D^2 - 4 c2 > 0 (strict).
    pub bogomolov_inequality: bool,
    /// (2A - D)^2 > 4 length(W) and (2A - D).H > 0.
    pub destabilizer_valid: bool,
    /// c2 = length(W) + A.(D - A).
    pub c2_consistent: bool,
    pub discriminant_number: BigInt,
    pub destabilizer_square: BigInt,
    pub destabilizer_dot_ample: BigInt,
}

/// Evaluate the instability inequalities on exact intersection numbers.
pub fn instability_check(input: &InstabilityInput) -> InstabilityReport {
    let d2 = BigInt::from(input.d_squared);
    let c2 = BigInt::from(input.c2);
    let discriminant_number = &d2 - BigInt::from(4) * &c2;
    // (2A - D)^2 = 4A^2 - 4A.D + D^2
    let destabilizer_square = BigInt::from(4) * BigInt::from(input.a_squared)
        - BigInt::from(4) * BigInt::from(input.a_dot_d)
        + &d2;
    let destabilizer_dot_ample =
        BigInt::from(2) * BigInt::from(input.a_dot_h) - BigInt::from(input.d_dot_h);
    let c2_expected =
        BigInt::from(input.length_w) + BigInt::from(input.a_dot_d) - BigInt::from(input.a_squared);
    InstabilityReport {
        bogomolov_inequality: discriminant_number > BigInt::zero(),
        destabilizer_valid: destabilizer_square > BigInt::from(4) * BigInt::from(input.length_w)
            && destabilizer_dot_ample > BigInt::zero(),
        c2_consistent: c2 == c2_expected,
        discriminant_number,
        destabilizer_square,
        destabilizer_dot_ample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn gamma_small_degrees() {
        let setup = Rank2Setup::standard();
        let surface = setup.surface().clone();
        let (d, a) = (surface.det_class(), surface.destabilizer_class());
        // d = 2: gamma = (D - A)(2 xi - A)
        let gamma2 = branch_gamma(&setup, 2).unwrap();
        let direct = setup
            .proj()
            .reduce(
                &setup
                    .proj()
                    .pullback(&d.sub(&a).unwrap())
                    .unwrap()
                    .mul(
                        &setup
                            .proj()
                            .xi_class()
                            .scale(&rat_int(2))
                            .sub(&setup.proj().pullback(&a).unwrap())
                            .unwrap(),
                    )
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(gamma2, direct);
        // generic d: d(d-2)(D xi - c2E) + (dD - (2d-2)A) xi - (D - A)A
        for d_val in 1..=6i64 {
            let gamma = branch_gamma(&setup, d_val).unwrap();
            let c2e = surface.c2_bundle_class();
            let dd = rat_int(d_val * (d_val - 2));
            let expected_xi0 = c2e
                .scale(&dd)
                .neg()
                .sub(&d.sub(&a).unwrap().mul(&a).unwrap())
                .unwrap();
            let expected_xi1 = d
                .scale(&rat_int(d_val * (d_val - 2) + d_val))
                .sub(&a.scale(&rat_int(2 * d_val - 2)))
                .unwrap();
            assert_eq!(gamma.coefficient(0), expected_xi0);
            assert_eq!(gamma.coefficient(1), expected_xi1);
        }
        assert_eq!(
            branch_gamma(&setup, 0).unwrap_err(),
            Error::BadMultiDegree(0)
        );
    }

    #[test]
    fn branch_class_identity() {
        let setup = Rank2Setup::standard();
        let surface = setup.surface().clone();
        let (d, a) = (surface.det_class(), surface.destabilizer_class());
        assert!(branch_divisor_class(&setup, 1).unwrap().is_zero());
        assert_eq!(
            branch_divisor_class(&setup, 2).unwrap(),
            d.scale(&rat_int(2)).sub(&a.scale(&rat_int(2))).unwrap()
        );
        assert_eq!(
            branch_divisor_class(&setup, 3).unwrap(),
            d.scale(&rat_int(6)).sub(&a.scale(&rat_int(4))).unwrap()
        );
        for d_val in 1..=6i64 {
            let expected = d
                .scale(&rat_int(d_val * (d_val - 1)))
                .sub(&a.scale(&rat_int(2 * (d_val - 1))))
                .unwrap();
            assert_eq!(branch_divisor_class(&setup, d_val).unwrap(), expected);
        }
    }

    #[test]
    fn jet_route_agrees_with_direct_expansion() {
        let setup = Rank2Setup::standard();
        for d in 1..=6i64 {
            assert_eq!(
                gamma_via_relative_jets(&setup, d).unwrap(),
                branch_gamma(&setup, d).unwrap()
            );
        }
    }

    #[test]
    fn trigonal_cover_ramification_count() {
        // P(O + O) over P^1 with twist class -h: a type (3,1) curve, whose
        // projection to P^1 has 4 branch points by Riemann-Hurwitz.
        let p1 = catalog::projective_space(1);
        let e = catalog::line_bundle(&p1, &[0])
            .unwrap()
            .direct_sum(&catalog::line_bundle(&p1, &[0]).unwrap())
            .unwrap();
        let proj = ProjBundle::new(&e).unwrap();
        let minus_h = p1.generator_class(0).neg();
        let gamma = gamma_on(&proj, 3, &minus_h).unwrap();
        let count = proj
            .integrate_total(&gamma.to_total())
            .unwrap()
            .into_number()
            .unwrap();
        assert_eq!(count, rat_int(4));
    }

    #[test]
    fn chi_cubic_coefficients() {
        let setup = Rank2Setup::standard();
        let surface = setup.surface().clone();
        let cubic = chi_sym_cubic(&setup).unwrap();
        // m^3 coefficient: (D^2 - 4 c2E)/3
        let expected_top = surface
            .det_class()
            .pow(2)
            .sub(&surface.c2_bundle_class().scale(&rat_int(4)))
            .unwrap()
            .scale(&rat_frac(1, 3));
        assert_eq!(cubic.coefficients[3], expected_top);
        // m^0 coefficient: (K^2 + eX)/12
        let expected_const = surface
            .canonical_class()
            .unwrap()
            .pow(2)
            .add(&surface.c2_tangent_class().unwrap())
            .unwrap()
            .scale(&rat_frac(1, 12));
        assert_eq!(cubic.coefficients[0], expected_const);
    }

    #[test]
    fn chi_is_exactly_cubic() {
        // the interpolation through m = 0..3 also predicts m = 4 and m = 5
        let setup = Rank2Setup::standard();
        let surface = setup.surface().clone();
        let k = surface.canonical_class().unwrap();
        let todd = surface
            .model()
            .one()
            .sub(&k.scale(&rat_frac(1, 2)))
            .unwrap()
            .add(
                &k.pow(2)
                    .add(&surface.c2_tangent_class().unwrap())
                    .unwrap()
                    .scale(&rat_frac(1, 12)),
            )
            .unwrap();
        let cubic = chi_sym_cubic(&setup).unwrap();
        for m in 4..=5i64 {
            assert_eq!(cubic.evaluate(m), chi_value(&setup, &todd, m).unwrap());
        }
    }

    #[test]
    fn symmetric_twists_have_trivial_determinant() {
        let setup = Rank2Setup::standard();
        let surface = setup.surface().clone();
        for m in 1..=3i64 {
            let sym = setup.bundle().sym_power(2 * m as usize).unwrap();
            let twisted = sym
                .twist_by_line(&surface.det_class().scale(&rat_int(-m)))
                .unwrap();
            assert!(twisted.chern(1).is_zero());
        }
    }

    #[test]
    fn missing_generators_are_reported() {
        let model = VarietyModel::new(
            2,
            vec![
                Generator::new("D", 1),
                Generator::new("A", 1),
                Generator::new("H", 1),
                Generator::new("c2E", 2),
            ],
            None,
        )
        .unwrap();
        let setup = Rank2Setup::over(FormalSurface::from_model(model).unwrap()).unwrap();
        assert_eq!(
            chi_sym_cubic(&setup).unwrap_err(),
            Error::MissingGenerator("K")
        );
    }

    #[test]
    fn instability_examples() {
        let report = instability_check(&InstabilityInput {
            d_squared: 0,
            a_squared: 0,
            a_dot_d: -1,
            a_dot_h: 1,
            d_dot_h: 0,
            c2: -1,
            length_w: 0,
        });
        assert!(report.bogomolov_inequality);
        assert!(report.destabilizer_valid);
        assert!(report.c2_consistent);
        assert_eq!(report.destabilizer_square, BigInt::from(4));
        assert_eq!(report.destabilizer_dot_ample, BigInt::from(2));

        // A = D with empty W forces c2 = 0
        let report = instability_check(&InstabilityInput {
            d_squared: 2,
            a_squared: 2,
            a_dot_d: 2,
            a_dot_h: 1,
            d_dot_h: 1,
            c2: 0,
            length_w: 0,
        });
        assert!(report.c2_consistent);

        // the boundary case is not unstable: the inequality is strict
        let report = instability_check(&InstabilityInput {
            d_squared: 4,
            a_squared: 0,
            a_dot_d: 0,
            a_dot_h: 1,
            d_dot_h: 0,
            c2: 1,
            length_w: 0,
        });
        assert!(!report.bogomolov_inequality);
    }

    #[test]
    fn synthesized_sequences_are_consistent() {
        // any integers with c2 = lengthW + A.D - A^2 pass the consistency bit
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 21) as i64 - 10
        };
        for _ in 0..50 {
            let a_squared = next();
            let a_dot_d = next();
            let length_w = next().abs();
            let input = InstabilityInput {
                d_squared: next(),
                a_squared,
                a_dot_d,
                a_dot_h: next(),
                d_dot_h: next(),
                c2: length_w + a_dot_d - a_squared,
                length_w,
            };
            assert!(instability_check(&input).c2_consistent);
        }
    }
}
