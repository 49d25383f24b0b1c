//! Constructors for the standard varieties and bundles used everywhere:
//! projective spaces and their products, line bundles, and the tangent and
//! cotangent bundles coming out of the Euler sequence.

use num_traits::One;

use crate::bundle::BundleClass;
use crate::error::{Error, Result};
use crate::graded::{rat_int, Generator, GradedClass, Rat, VarietyModel};

/// Projective n-space: one degree-1 generator `h` with `h^(n+1) = 0` and the
/// integral of `h^n` normalized to 1.
pub fn projective_space(n: usize) -> VarietyModel {
    VarietyModel::new(
        n,
        vec![Generator::with_cap("h", 1, n as u32 + 1)],
        Some(vec![(vec![("h", n as u32)], Rat::one())]),
    )
    .expect("projective space model is always valid")
}

/// A product of projective spaces with generators `h1, ..., hk` and the
/// integral of the top monomial normalized to 1.
pub fn multi_projective(factors: &[usize]) -> VarietyModel {
    assert!(
        factors.iter().all(|&n| n >= 1),
        "factors must have positive dimension"
    );
    if factors.len() == 1 {
        // keep the single-factor generator named `h`
        return projective_space(factors[0]);
    }
    let generators = factors
        .iter()
        .enumerate()
        .map(|(i, &n)| Generator::with_cap(&format!("h{}", i + 1), 1, n as u32 + 1))
        .collect();
    let names: Vec<String> = (0..factors.len()).map(|i| format!("h{}", i + 1)).collect();
    let top: Vec<(&str, u32)> = names
        .iter()
        .zip(factors)
        .map(|(name, &n)| (name.as_str(), n as u32))
        .collect();
    VarietyModel::new(
        factors.iter().sum(),
        generators,
        Some(vec![(top, Rat::one())]),
    )
    .expect("multi-projective model is always valid")
}

/// A line bundle with first Chern class `sum_i degrees[i] * h_i`.
pub fn line_bundle(model: &VarietyModel, degrees: &[i64]) -> Result<BundleClass> {
    if degrees.len() != model.generators().len() {
        return Err(Error::ArityMismatch {
            expected: model.generators().len(),
            got: degrees.len(),
        });
    }
    let mut c1 = model.zero();
    for (i, &d) in degrees.iter().enumerate() {
        c1 = c1.add(&model.generator_class(i).scale(&rat_int(d)))?;
    }
    BundleClass::line(model, &c1)
}

/// Dimensions of the projective factors, if the model is a product of
/// projective spaces built by this module.
fn projective_factors(model: &VarietyModel) -> Option<Vec<usize>> {
    let mut factors = Vec::new();
    for g in model.generators() {
        if g.degree != 1 {
            return None;
        }
        let cap = g.power_cap?;
        if cap < 2 {
            return None;
        }
        factors.push(cap as usize - 1);
    }
    if factors.iter().sum::<usize>() == model.dimension() && !factors.is_empty() {
        Some(factors)
    } else {
        None
    }
}

/// Tangent bundle of a (product of) projective space(s), from the Euler
/// sequence: c(T) = prod_i (1 + h_i)^(n_i + 1).
pub fn tangent(model: &VarietyModel) -> Result<BundleClass> {
    let factors = projective_factors(model).ok_or(Error::UnsupportedVariety)?;
    let mut total = model.one();
    for (i, &n) in factors.iter().enumerate() {
        let one_plus_h = model.one().add(&model.generator_class(i))?;
        total = total.mul(&one_plus_h.pow(n as u32 + 1))?;
    }
    BundleClass::new(model, model.dimension(), total)
}

/// Cotangent bundle: the dual of [`tangent`].
pub fn cotangent(model: &VarietyModel) -> Result<BundleClass> {
    Ok(tangent(model)?.dual())
}

/// Coefficient of `h^k` in a class over a single projective space; the
/// "degree" of a codimension-k class.
pub fn h_coefficient(class: &GradedClass, k: usize) -> Rat {
    let mono = if k == 0 {
        crate::graded::Monomial::one()
    } else {
        crate::graded::Monomial::from_exponents(vec![(0, k as u32)])
    };
    class.coefficient(&mono)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::{binomial, int_pow};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn point_and_small_spaces() {
        let point = projective_space(0);
        assert_eq!(point.dimension(), 0);
        assert_eq!(
            point.integrate(&point.one()).unwrap().number().unwrap(),
            &rat_int(1)
        );
        let p3 = projective_space(3);
        let h3 = p3.generator_class(0).pow(3);
        assert_eq!(p3.integrate(&h3).unwrap().number().unwrap(), &rat_int(1));
    }

    #[test]
    fn products_of_projective_spaces() {
        let m = multi_projective(&[1, 2]);
        let top = m
            .generator_class(0)
            .mul(&m.generator_class(1).pow(2))
            .unwrap();
        assert_eq!(m.integrate(&top).unwrap().number().unwrap(), &rat_int(1));
        assert_eq!(multi_projective(&[2]), projective_space(2));
    }

    #[test]
    fn line_bundles() {
        let m = multi_projective(&[1, 1]);
        let l = line_bundle(&m, &[2, -1]).unwrap();
        assert_eq!(l.total_chern().render(), "1 + 2*h1 - h2");
        assert_eq!(
            line_bundle(&m, &[1]).unwrap_err(),
            Error::ArityMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn euler_sequence_tangent_classes() {
        let p2 = projective_space(2);
        let t = tangent(&p2).unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(t.total_chern().render(), "1 + 3*h + 3*h^2");
        assert_eq!(
            cotangent(&p2).unwrap().total_chern().render(),
            "1 - 3*h + 3*h^2"
        );
        // Whitney check against the untruncated Euler sum
        let o1 = line_bundle(&p2, &[1]).unwrap();
        let euler_sum = o1.direct_sum(&o1).unwrap().direct_sum(&o1).unwrap();
        assert_eq!(euler_sum.total_chern(), t.total_chern());
        // duality pairing
        assert_eq!(
            t.total_chern()
                .mul(&t.dual().segre_total().invert_unit().unwrap())
                .unwrap(),
            t.total_chern().mul(t.dual().total_chern()).unwrap()
        );
    }

    #[test]
    fn tangent_requires_projective_product() {
        let formal = VarietyModel::new(2, vec![Generator::new("D", 1)], None).unwrap();
        assert_eq!(tangent(&formal).unwrap_err(), Error::UnsupportedVariety);
    }

    #[test]
    fn twisted_tangent_chern_integrals() {
        // coefficient of h^i in c_i(T(d)) against the Euler-sequence binomial
        // sum, here spot-checked at n = 3, d = 2.
        let p3 = projective_space(3);
        let t = tangent(&p3).unwrap();
        let h = p3.generator_class(0);
        let twisted = t.twist_by_line(&h.scale(&rat_int(2))).unwrap();
        // these feed the rank-n degree formula: (-4 + 10)*34 + 3*40 = 324
        let expected = [10i64, 34, 40];
        for (i, &value) in expected.iter().enumerate() {
            let i = i + 1;
            let mut sum = BigInt::from(0);
            for j in 0..=i {
                sum += binomial(3 - j, i - j) * int_pow(2, (i - j) as u32) * binomial(4, j);
            }
            assert_eq!(sum, BigInt::from(value));
            let coeff = h_coefficient(&twisted.chern(i), i);
            assert_eq!(coeff, BigRational::from_integer(BigInt::from(value)));
        }
    }
}
