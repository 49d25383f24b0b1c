//! Brute-force splitting-principle oracle used by the test suites.
//!
//! A [`SplitBundle`] is a multiset of line-bundle degrees on a projective
//! space. Its total Chern class is expanded by direct polynomial
//! multiplication in the ring layer only, so comparisons against the bundle
//! calculus exercise two independent code paths. Shipped in the library so
//! the cross-checks stay reproducible.

use num_bigint::BigInt;

use crate::bundle::BundleClass;
use crate::error::{Error, Result};
use crate::graded::{rat_int, GradedClass, VarietyModel};

/// A direct sum of line bundles O(a_1) + ... + O(a_e) on a projective space.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitBundle {
    model: VarietyModel,
    degrees: Vec<i64>,
}

impl SplitBundle {
    pub fn new(model: &VarietyModel, degrees: Vec<i64>) -> Result<Self> {
        let single_h = model.generators().len() == 1 && model.generators()[0].degree == 1;
        if !single_h {
            return Err(Error::UnsupportedVariety);
        }
        Ok(SplitBundle {
            model: model.clone(),
            degrees,
        })
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Total Chern class prod_i (1 + a_i h), expanded term by term.
    pub fn total_chern(&self) -> GradedClass {
        let h = self.model.generator_class(0);
        let mut total = self.model.one();
        for &a in &self.degrees {
            let factor = self.model.one().add(&h.scale(&rat_int(a))).unwrap();
            total = total.mul(&factor).unwrap();
        }
        total
    }

    /// The same data as a [`BundleClass`].
    pub fn to_bundle(&self) -> BundleClass {
        BundleClass::new(&self.model, self.rank(), self.total_chern())
            .expect("split expansion is a valid Chern class")
    }

    fn check_model(&self, other: &SplitBundle) -> Result<()> {
        if self.model == other.model {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    /// Tensor product: all pairwise degree sums.
    pub fn tensor(&self, other: &SplitBundle) -> Result<SplitBundle> {
        self.check_model(other)?;
        let degrees = self
            .degrees
            .iter()
            .flat_map(|&a| other.degrees.iter().map(move |&b| a + b))
            .collect();
        Ok(SplitBundle {
            model: self.model.clone(),
            degrees,
        })
    }

    /// Symmetric power of a rank-2 split bundle {a, b}: degrees
    /// {i a + (k-i) b} for i = 0..k.
    pub fn sym(&self, k: usize) -> Result<SplitBundle> {
        if self.rank() != 2 {
            return Err(Error::RankUnsupported(self.rank()));
        }
        let (a, b) = (self.degrees[0], self.degrees[1]);
        let degrees = (0..=k as i64).map(|i| i * a + (k as i64 - i) * b).collect();
        Ok(SplitBundle {
            model: self.model.clone(),
            degrees,
        })
    }

    /// Twist every summand by b.
    pub fn twist(&self, b: i64) -> SplitBundle {
        SplitBundle {
            model: self.model.clone(),
            degrees: self.degrees.iter().map(|&a| a + b).collect(),
        }
    }

    /// Dual: negate every degree.
    pub fn dual(&self) -> SplitBundle {
        SplitBundle {
            model: self.model.clone(),
            degrees: self.degrees.iter().map(|&a| -a).collect(),
        }
    }
}

/// Classically known discriminant degrees for degree-d hypersurfaces in P^n,
/// as a hardcoded lookup table.
pub fn oracle_disc_small(n: usize, d: i64) -> Result<BigInt> {
    let value = match (n, d) {
        (1, 1) => 0,
        (1, 2) => 2,
        (1, 3) => 4,
        (1, 4) => 6,
        (2, 1) => 0,
        (2, 2) => 3,
        (2, 3) => 12,
        (2, 4) => 27,
        (3, 1) => 0,
        (3, 2) => 4,
        (3, 3) => 32,
        (3, 4) => 108,
        _ => return Err(Error::OutOfTable(n, d)),
    };
    Ok(BigInt::from(value))
}
