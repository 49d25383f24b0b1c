//! Vector bundles as Chern-class data.
//!
//! A bundle here is nothing but a rank together with a total Chern class over
//! a [`VarietyModel`]; every operation acts on that shadow. Tensor products
//! and symmetric powers go through Chern characters and Newton's identities,
//! with an integrality assertion on the way back.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::comb::{binomial, factorial, int_pow};
use crate::error::{Error, Result};
use crate::graded::{GradedClass, Rat, VarietyModel};

/// A vector bundle's Chern-class shadow: rank plus total Chern class.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleClass {
    model: VarietyModel,
    rank: usize,
    total_chern: GradedClass,
}

impl BundleClass {
    /// Wrap a rank and a total Chern class. The class is truncated by the
    /// model; components above the rank must vanish and every coefficient
    /// must be an integer.
    pub fn new(model: &VarietyModel, rank: usize, total_chern: GradedClass) -> Result<Self> {
        if total_chern.model() != model {
            return Err(Error::ModelMismatch);
        }
        if total_chern.component(0) != model.one() {
            return Err(Error::NonUnitSeries);
        }
        for (mono, _) in total_chern.terms() {
            if mono.degree(model.generators()) > rank {
                return Err(Error::ChernAboveRank);
            }
        }
        if !total_chern.is_integral() {
            return Err(Error::NonIntegralResult("total Chern class"));
        }
        Ok(BundleClass {
            model: model.clone(),
            rank,
            total_chern,
        })
    }

    /// The trivial bundle of the given rank.
    pub fn trivial(model: &VarietyModel, rank: usize) -> Self {
        BundleClass {
            model: model.clone(),
            rank,
            total_chern: model.one(),
        }
    }

    /// A line bundle with the given first Chern class.
    pub fn line(model: &VarietyModel, c1: &GradedClass) -> Result<Self> {
        if !c1.is_homogeneous(1) {
            return Err(Error::NotDegreeOne);
        }
        BundleClass::new(model, 1, model.one().add(c1)?)
    }

    pub fn model(&self) -> &VarietyModel {
        &self.model
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn total_chern(&self) -> &GradedClass {
        &self.total_chern
    }

    /// The Chern class in codimension `k`.
    pub fn chern(&self, k: usize) -> GradedClass {
        self.total_chern.component(k)
    }

    fn check_model(&self, other: &BundleClass) -> Result<()> {
        if self.model == other.model {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    /// Dual bundle: c_i picks up the sign (-1)^i.
    pub fn dual(&self) -> BundleClass {
        let mut total = self.model.zero();
        for k in 0..=self.model.dimension().min(self.rank) {
            let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            total = total
                .add(&self.total_chern.component(k).scale(&sign))
                .expect("same model");
        }
        BundleClass {
            model: self.model.clone(),
            rank: self.rank,
            total_chern: total,
        }
    }

    /// Whitney sum: ranks add, total Chern classes multiply.
    pub fn direct_sum(&self, other: &BundleClass) -> Result<BundleClass> {
        self.check_model(other)?;
        Ok(BundleClass {
            model: self.model.clone(),
            rank: self.rank + other.rank,
            total_chern: self.total_chern.mul(&other.total_chern)?,
        })
    }

    /// Twist by a line-bundle class `l` (homogeneous of degree 1):
    /// c_i(E otimes L) = sum_j C(e-j, i-j) c_j(E) l^(i-j).
    pub fn twist_by_line(&self, l: &GradedClass) -> Result<BundleClass> {
        if l.model() != &self.model {
            return Err(Error::ModelMismatch);
        }
        if !l.is_homogeneous(1) {
            return Err(Error::NotDegreeOne);
        }
        let e = self.rank;
        let mut total = self.model.zero();
        for i in 0..=e.min(self.model.dimension()) {
            for j in 0..=i {
                let coeff = Rat::from_integer(binomial(e - j, i - j));
                if coeff.is_zero() {
                    continue;
                }
                let term = self
                    .total_chern
                    .component(j)
                    .mul(&l.pow((i - j) as u32))?
                    .scale(&coeff);
                total = total.add(&term)?;
            }
        }
        Ok(BundleClass {
            model: self.model.clone(),
            rank: e,
            total_chern: total,
        })
    }

    /// Total Segre class, the power-series inverse of the total Chern class.
    pub fn segre_total(&self) -> GradedClass {
        self.total_chern
            .invert_unit()
            .expect("chern class is a unit")
    }

    /// Difference class c(E)/c(F) = c(E) s(F).
    pub fn difference_class(&self, other: &BundleClass) -> Result<GradedClass> {
        self.check_model(other)?;
        self.total_chern.mul(&other.segre_total())
    }

    /// Chern character, truncated at the model dimension.
    pub fn chern_character(&self) -> CharacterClass {
        let model = &self.model;
        let dim = model.dimension();
        // Newton's identities: p_k = c_1 p_{k-1} - c_2 p_{k-2} + ...
        //                            + (-1)^k k c_k.
        let mut power_sums: Vec<GradedClass> = vec![model.zero()];
        for k in 1..=dim {
            let mut p = model.zero();
            for i in 1..k {
                let sign = if (i + 1) % 2 == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                p = p
                    .add(
                        &self
                            .total_chern
                            .component(i)
                            .mul(&power_sums[k - i])
                            .expect("same model")
                            .scale(&sign),
                    )
                    .expect("same model");
            }
            let sign = if (k + 1) % 2 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
            p = p
                .add(
                    &self
                        .total_chern
                        .component(k)
                        .scale(&(sign * Rat::from_integer(BigInt::from(k)))),
                )
                .expect("same model");
            power_sums.push(p);
        }
        let mut terms = GradedClass::constant(model, Rat::from_integer(BigInt::from(self.rank)));
        for (k, p) in power_sums.iter().enumerate().skip(1) {
            let inv_fact = Rat::new(BigInt::one(), factorial(k));
            terms = terms.add(&p.scale(&inv_fact)).expect("same model");
        }
        CharacterClass {
            model: model.clone(),
            terms,
        }
    }

    /// Tensor product via Chern characters.
    pub fn tensor(&self, other: &BundleClass) -> Result<BundleClass> {
        self.check_model(other)?;
        let product = CharacterClass {
            model: self.model.clone(),
            terms: self
                .chern_character()
                .terms
                .mul(&other.chern_character().terms)?,
        };
        product
            .to_bundle(self.rank * other.rank)
            .map_err(|e| match e {
                Error::NonIntegralResult(_) => Error::NonIntegralResult("tensor product"),
                other => other,
            })
    }

    /// Symmetric power of a bundle of rank at most 2.
    ///
    /// For rank 2 the Chern character of Sym^k is assembled from the power
    /// sums of the k+1 splitting roots i*a + (k-i)*b, rewritten in c1 and c2.
    pub fn sym_power(&self, k: usize) -> Result<BundleClass> {
        match self.rank {
            1 => {
                let c1 = self
                    .total_chern
                    .component(1)
                    .scale(&Rat::from_integer(BigInt::from(k)));
                BundleClass::line(&self.model, &c1)
            }
            2 => self.sym_power_rank2(k),
            r => Err(Error::RankUnsupported(r)),
        }
    }

    fn sym_power_rank2(&self, k: usize) -> Result<BundleClass> {
        let model = &self.model;
        let dim = model.dimension();
        let c1 = self.total_chern.component(1);
        let c2 = self.total_chern.component(2);
        // Power sums of the two roots of E.
        let mut root_sums: Vec<GradedClass> = vec![GradedClass::constant(model, rat(2))];
        for m in 1..=dim {
            let prev1 = root_sums[m - 1].clone();
            let p = if m == 1 {
                c1.clone()
            } else {
                c1.mul(&prev1)?.sub(&c2.mul(&root_sums[m - 2])?)?
            };
            root_sums.push(p);
        }
        // q_m = sum over root pairs of Sym^k, grouped into c2-powers times
        // power sums of the original roots.
        let mut character = GradedClass::constant(model, Rat::from_integer(BigInt::from(k + 1)));
        for m in 1..=dim {
            let mut q = model.zero();
            for t in 0..=m {
                if 2 * t < m {
                    continue;
                }
                let weight = binomial(m, t) * split_weight_sum(k, t as u32, (m - t) as u32);
                if weight.is_zero() {
                    continue;
                }
                let u = m - t;
                let base = c2.pow(u as u32);
                let contribution = if 2 * t == m {
                    base.scale(&Rat::from_integer(weight))
                } else {
                    base.mul(&root_sums[t - u])?
                        .scale(&Rat::from_integer(weight))
                };
                q = q.add(&contribution)?;
            }
            character = character.add(&q.scale(&Rat::new(BigInt::one(), factorial(m))))?;
        }
        let ch = CharacterClass {
            model: model.clone(),
            terms: character,
        };
        ch.to_bundle(k + 1).map_err(|e| match e {
            Error::NonIntegralResult(_) => Error::NonIntegralResult("symmetric power"),
            other => other,
        })
    }
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// S(t, u) = sum_{i=0..k} i^t (k-i)^u, the symmetrized exponent weights of
/// the Sym^k splitting roots.
fn split_weight_sum(k: usize, t: u32, u: u32) -> BigInt {
    let mut total = BigInt::zero();
    for i in 0..=k {
        total += int_pow(i as i64, t) * int_pow((k - i) as i64, u);
    }
    total
}

/// A Chern character: a graded class with rational coefficients whose
/// degree-0 part is the originating rank.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterClass {
    model: VarietyModel,
    terms: GradedClass,
}

impl CharacterClass {
    pub fn from_class(terms: GradedClass) -> CharacterClass {
        CharacterClass {
            model: terms.model().clone(),
            terms,
        }
    }

    pub fn model(&self) -> &VarietyModel {
        &self.model
    }

    pub fn terms(&self) -> &GradedClass {
        &self.terms
    }

    pub fn mul(&self, other: &CharacterClass) -> Result<CharacterClass> {
        Ok(CharacterClass {
            model: self.model.clone(),
            terms: self.terms.mul(&other.terms)?,
        })
    }

    pub fn add(&self, other: &CharacterClass) -> Result<CharacterClass> {
        Ok(CharacterClass {
            model: self.model.clone(),
            terms: self.terms.add(&other.terms)?,
        })
    }

    /// Recover the bundle with the given rank from this character by
    /// inverting Newton's identities.
    pub fn to_bundle(&self, rank: usize) -> Result<BundleClass> {
        let model = &self.model;
        let rank_term = GradedClass::constant(model, Rat::from_integer(BigInt::from(rank)));
        if self.terms.component(0) != rank_term {
            return Err(Error::RankMismatch);
        }
        let dim = model.dimension();
        // p_k = k! ch_k, then e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i.
        let mut power_sums: Vec<GradedClass> = vec![model.zero()];
        for kk in 1..=dim {
            power_sums.push(
                self.terms
                    .component(kk)
                    .scale(&Rat::from_integer(factorial(kk))),
            );
        }
        let mut elementary: Vec<GradedClass> = vec![model.one()];
        for kk in 1..=dim {
            let mut e = model.zero();
            for i in 1..=kk {
                let sign = if (i + 1) % 2 == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                e = e.add(&elementary[kk - i].mul(&power_sums[i])?.scale(&sign))?;
            }
            elementary.push(e.scale(&Rat::new(BigInt::one(), BigInt::from(kk))));
        }
        let mut total = model.zero();
        for e in &elementary {
            total = total.add(e)?;
        }
        BundleClass::new(model, rank, total)
    }
}

/// First jet bundle of a line bundle: the extension of `line` by
/// `cotangent tensor line`, with total Chern class the Whitney product.
pub fn jet1_line(line: &BundleClass, cotangent: &BundleClass) -> Result<BundleClass> {
    if line.rank() != 1 {
        return Err(Error::NotLineBundle(line.rank()));
    }
    let c1 = line.total_chern().component(1);
    let twisted = cotangent.twist_by_line(&c1)?;
    twisted.direct_sum(line)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graded::rat_int;

    fn p2() -> VarietyModel {
        catalog::projective_space(2)
    }

    fn p3() -> VarietyModel {
        catalog::projective_space(3)
    }

    fn h(model: &VarietyModel) -> GradedClass {
        model.generator_class(0)
    }

    fn o(model: &VarietyModel, d: i64) -> BundleClass {
        BundleClass::line(model, &h(model).scale(&rat_int(d))).unwrap()
    }

    #[test]
    fn dual_flips_odd_chern_classes() {
        let model = p2();
        let t = catalog::tangent(&model).unwrap();
        assert_eq!(t.total_chern().render(), "1 + 3*h + 3*h^2");
        assert_eq!(t.dual().total_chern().render(), "1 - 3*h + 3*h^2");
        assert_eq!(o(&model, 2).dual().total_chern().render(), "1 - 2*h");
        let e = o(&model, 1).direct_sum(&o(&model, -2)).unwrap();
        assert_eq!(e.dual().dual(), e);
        // E + E* kills the odd components
        let pairing = e.direct_sum(&e.dual()).unwrap();
        assert!(pairing.chern(1).is_zero());
    }

    #[test]
    fn whitney_sum() {
        let model = p2();
        let e = o(&model, 1).direct_sum(&o(&model, 2)).unwrap();
        assert_eq!(e.rank(), 2);
        assert_eq!(e.total_chern().render(), "1 + 3*h + 2*h^2");
        let t = catalog::tangent(&model).unwrap();
        let extended = t.direct_sum(&BundleClass::trivial(&model, 1)).unwrap();
        assert_eq!(extended.rank(), t.rank() + 1);
        assert_eq!(extended.total_chern(), t.total_chern());
    }

    #[test]
    fn sums_of_line_bundles_on_p3() {
        let model = p3();
        let e = o(&model, 1)
            .direct_sum(&o(&model, 1))
            .unwrap()
            .direct_sum(&o(&model, 2))
            .unwrap();
        assert_eq!(e.total_chern().render(), "1 + 4*h + 5*h^2 + 2*h^3");
    }

    #[test]
    fn twist_of_the_tangent_bundle() {
        let model = p2();
        let t = catalog::tangent(&model).unwrap();
        let twisted = t.twist_by_line(&h(&model)).unwrap();
        assert_eq!(twisted.chern(1).render(), "5*h");
        assert_eq!(twisted.chern(2).render(), "7*h^2");
    }

    #[test]
    fn twist_matches_split_oracle() {
        let model = p2();
        let e = o(&model, 1).direct_sum(&o(&model, 2)).unwrap();
        let twisted = e.twist_by_line(&h(&model)).unwrap();
        let expected = o(&model, 2).direct_sum(&o(&model, 3)).unwrap();
        assert_eq!(twisted, expected);
    }

    #[test]
    fn twist_by_zero_is_identity() {
        let model = p2();
        let t = catalog::tangent(&model).unwrap();
        assert_eq!(t.twist_by_line(&model.zero()).unwrap(), t);
    }

    #[test]
    fn twist_rejects_inhomogeneous_classes() {
        let model = p2();
        let t = catalog::tangent(&model).unwrap();
        let bad = model.one();
        assert_eq!(t.twist_by_line(&bad).unwrap_err(), Error::NotDegreeOne);
    }

    #[test]
    fn twists_invert() {
        let model = p3();
        let e = o(&model, 1).direct_sum(&o(&model, 3)).unwrap();
        let there = e.twist_by_line(&h(&model).scale(&rat_int(2))).unwrap();
        let back = there.twist_by_line(&h(&model).scale(&rat_int(-2))).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn segre_classes() {
        let p1 = catalog::projective_space(1);
        assert_eq!(o(&p1, 1).segre_total().render(), "1 - h");
        let model = p2();
        let t = catalog::tangent(&model).unwrap();
        assert_eq!(t.segre_total().render(), "1 - 3*h + 6*h^2");
        let e = o(&model, 2).direct_sum(&o(&model, -1)).unwrap();
        assert_eq!(e.segre_total().mul(e.total_chern()).unwrap(), model.one());
    }

    #[test]
    fn difference_classes() {
        let model = p2();
        let t = catalog::tangent(&model).unwrap();
        assert_eq!(t.difference_class(&t).unwrap(), model.one());
        // T - O(1) = 2 O(1) - O in K-theory, so the class is (1+h)^2
        assert_eq!(
            t.difference_class(&o(&model, 1)).unwrap().render(),
            "1 + 2*h + h^2"
        );
        let f = o(&model, 1).direct_sum(&o(&model, 2)).unwrap();
        assert_eq!(
            BundleClass::trivial(&model, 1)
                .difference_class(&f)
                .unwrap(),
            f.segre_total()
        );
    }

    #[test]
    fn chern_character_examples() {
        let model = p3();
        let ch = o(&model, 1).chern_character();
        assert_eq!(ch.terms().render(), "1 + h + 1/2*h^2 + 1/6*h^3");
        let model = p2();
        let e = o(&model, 1).direct_sum(&o(&model, -1)).unwrap();
        assert_eq!(e.chern_character().terms().render(), "2 + h^2");
    }

    #[test]
    fn character_round_trip() {
        let model = p3();
        for degrees in [vec![1, 2], vec![0, 1, 3], vec![-1, 2, 2, 1]] {
            let mut e = o(&model, degrees[0]);
            for &d in &degrees[1..] {
                e = e.direct_sum(&o(&model, d)).unwrap();
            }
            let back = e.chern_character().to_bundle(e.rank()).unwrap();
            assert_eq!(back, e);
        }
    }

    #[test]
    fn character_rank_must_match() {
        let model = p2();
        let ch = o(&model, 1).chern_character();
        assert_eq!(ch.to_bundle(2).unwrap_err(), Error::RankMismatch);
    }

    #[test]
    fn tensor_products() {
        let model = p2();
        let a = o(&model, 1).direct_sum(&o(&model, 1)).unwrap();
        let b = o(&model, 1).direct_sum(&o(&model, 2)).unwrap();
        let product = a.tensor(&b).unwrap();
        assert_eq!(product.rank(), 4);
        assert_eq!(product.chern(1).render(), "10*h");
        assert_eq!(product.chern(2).render(), "37*h^2");
        // line bundles multiply degrees
        assert_eq!(o(&model, 2).tensor(&o(&model, 3)).unwrap(), o(&model, 5));
        // the trivial line bundle is neutral
        let trivial = BundleClass::trivial(&model, 1);
        assert_eq!(a.tensor(&trivial).unwrap(), a);
    }

    #[test]
    fn symmetric_powers() {
        let model = p2();
        let e = o(&model, 1).direct_sum(&o(&model, 2)).unwrap();
        let sym2 = e.sym_power(2).unwrap();
        assert_eq!(sym2.rank(), 3);
        assert_eq!(sym2.chern(1).render(), "9*h");
        assert_eq!(sym2.chern(2).render(), "26*h^2");
        assert_eq!(e.sym_power(1).unwrap(), e);
        assert_eq!(e.sym_power(0).unwrap(), BundleClass::trivial(&model, 1));
        let rank3 = e.direct_sum(&o(&model, 1)).unwrap();
        assert_eq!(rank3.sym_power(2).unwrap_err(), Error::RankUnsupported(3));
    }

    #[test]
    fn first_jets_of_line_bundles() {
        let p1 = catalog::projective_space(1);
        let omega1 = catalog::cotangent(&p1).unwrap();
        let jet = jet1_line(&o(&p1, 2), &omega1).unwrap();
        assert_eq!(jet.rank(), 2);
        assert_eq!(jet.total_chern().render(), "1 + 2*h");
        assert_eq!(
            p1.integrate(&jet.chern(1)).unwrap().number().unwrap(),
            &rat_int(2)
        );
        // pencil of points: the degree-1 defect case
        let jet = jet1_line(&o(&p1, 1), &omega1).unwrap();
        assert_eq!(
            p1.integrate(&jet.chern(1)).unwrap().number().unwrap(),
            &rat_int(0)
        );

        let model = p2();
        let omega2 = catalog::cotangent(&model).unwrap();
        let jet = jet1_line(&o(&model, 2), &omega2).unwrap();
        assert_eq!(jet.rank(), 3);
        assert_eq!(
            model.integrate(&jet.chern(2)).unwrap().number().unwrap(),
            &rat_int(3)
        );
        let err = jet1_line(&o(&model, 1).direct_sum(&o(&model, 1)).unwrap(), &omega2).unwrap_err();
        assert_eq!(err, Error::NotLineBundle(2));
    }

    #[test]
    fn chern_classes_above_rank_are_rejected() {
        let model = p2();
        let class = model.one().add(&h(&model).pow(2)).unwrap();
        assert_eq!(
            BundleClass::new(&model, 1, class).unwrap_err(),
            Error::ChernAboveRank
        );
    }
}
