//! Exact arithmetic in truncated graded-commutative polynomial rings.
//!
//! A [`VarietyModel`] fixes the ambient ring: named generators with positive
//! degrees, optional per-generator power caps (`g^k = 0`), truncation of every
//! monomial whose total degree exceeds the model dimension, and an optional
//! integration table pairing top-degree monomials with exact rationals.
//! [`GradedClass`] values are sparse term maps over such a model. Coefficients
//! are arbitrary-precision rationals and every stored monomial is admissible,
//! so two classes are equal exactly when their term maps are equal.
//!
//! Models built by [`crate::proj`] additionally carry a rewrite rule for the
//! distinguished fiber generator; the rule is applied during term insertion,
//! which keeps every class over such a model in canonical reduced form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for every coefficient in the crate.
pub type Rat = BigRational;

/// Shorthand for an integer-valued scalar.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the exact fraction `n/d`.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A named ring generator with a codimension degree and an optional power cap.
///
/// A cap of `k` imposes the relation `g^k = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub power_cap: Option<u32>,
}

impl Generator {
    pub fn new(name: &str, degree: u32) -> Self {
        Generator {
            name: name.to_string(),
            degree,
            power_cap: None,
        }
    }

    pub fn with_cap(name: &str, degree: u32, cap: u32) -> Self {
        Generator {
            name: name.to_string(),
            degree,
            power_cap: Some(cap),
        }
    }
}

/// A monomial in the generators of one model, stored sparsely.
///
/// Only nonzero exponents are kept, sorted by generator index; the empty
/// list is the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: Vec<(u16, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(index: usize) -> Self {
        Monomial {
            exps: vec![(index as u16, 1)],
        }
    }

    pub fn from_exponents(mut exps: Vec<(u16, u32)>) -> Self {
        exps.retain(|&(_, e)| e > 0);
        exps.sort_by_key(|&(g, _)| g);
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps
            .iter()
            .find(|&&(g, _)| g as usize == index)
            .map_or(0, |&(_, e)| e)
    }

    pub fn exponents(&self) -> &[(u16, u32)] {
        &self.exps
    }

    /// Merge two monomials by adding exponents.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (ga, ea) = self.exps[i];
            let (gb, eb) = other.exps[j];
            match ga.cmp(&gb) {
                std::cmp::Ordering::Less => {
                    exps.push((ga, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    exps.push((gb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    exps.push((ga, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    /// Total degree with respect to the given generator list.
    pub fn degree(&self, generators: &[Generator]) -> usize {
        self.exps
            .iter()
            .map(|&(g, e)| generators[g as usize].degree as usize * e as usize)
            .sum()
    }

    /// Remove generator `index` entirely, returning its exponent and the rest.
    pub fn split_generator(&self, index: usize) -> (u32, Monomial) {
        let mut exps = self.exps.clone();
        let mut power = 0;
        exps.retain(|&(g, e)| {
            if g as usize == index {
                power = e;
                false
            } else {
                true
            }
        });
        (power, Monomial { exps })
    }

    fn with_generator_power(&self, index: usize, power: u32) -> Monomial {
        let (_, rest) = self.split_generator(index);
        if power == 0 {
            rest
        } else {
            rest.mul(&Monomial::from_exponents(vec![(index as u16, power)]))
        }
    }
}

/// Rewrite rule for a distinguished generator: `gen^power` is replaced by the
/// stored polynomial. Applied during insertion, so classes stay reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ReductionRule {
    pub gen: u16,
    pub power: u32,
    pub replacement: Vec<(Monomial, Rat)>,
    /// Truncation bound for the part of a monomial not involving `gen`.
    pub base_dimension: usize,
}

#[derive(Debug, PartialEq, Eq)]
struct ModelData {
    dimension: usize,
    generators: Vec<Generator>,
    table: Option<BTreeMap<Monomial, Rat>>,
    rule: Option<ReductionRule>,
}

/// A ring context: dimension, generators, caps, and an optional integration
/// table. Cheap to clone and safe to share between threads.
#[derive(Debug, Clone)]
pub struct VarietyModel {
    data: Arc<ModelData>,
}

impl PartialEq for VarietyModel {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for VarietyModel {}

impl VarietyModel {
    /// Build a model from generators and an optional integration table keyed
    /// by exponent lists `(generator name, exponent)`.
    pub fn new(
        dimension: usize,
        generators: Vec<Generator>,
        table: Option<Vec<(Vec<(&str, u32)>, Rat)>>,
    ) -> Result<Self> {
        Self::build(dimension, generators, table, None)
    }

    pub(crate) fn build(
        dimension: usize,
        generators: Vec<Generator>,
        table: Option<Vec<(Vec<(&str, u32)>, Rat)>>,
        rule: Option<ReductionRule>,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::BadGenerator(g.name.clone(), "degree must be >= 1"));
            }
            if g.power_cap == Some(0) {
                return Err(Error::BadGenerator(g.name.clone(), "cap must be >= 1"));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        let data = ModelData {
            dimension,
            generators,
            table: None,
            rule,
        };
        let mut model = VarietyModel {
            data: Arc::new(data),
        };
        if let Some(entries) = table {
            let mut resolved = BTreeMap::new();
            for (exps, value) in entries {
                let mut parts = Vec::new();
                for (name, e) in exps {
                    let idx = model.generator_index(name).ok_or_else(|| {
                        Error::BadTableEntry(format!("unknown generator `{name}`"))
                    })?;
                    parts.push((idx as u16, e));
                }
                let mono = Monomial::from_exponents(parts);
                if !model.admissible(&mono) {
                    return Err(Error::BadTableEntry(format!(
                        "monomial `{}` is zero in this ring",
                        model.render_monomial(&mono)
                    )));
                }
                if mono.degree(model.generators()) != dimension {
                    return Err(Error::BadTableEntry(format!(
                        "monomial `{}` does not have top degree {dimension}",
                        model.render_monomial(&mono)
                    )));
                }
                resolved.insert(mono, value);
            }
            let data = ModelData {
                dimension: model.data.dimension,
                generators: model.data.generators.clone(),
                table: Some(resolved),
                rule: model.data.rule.clone(),
            };
            model = VarietyModel {
                data: Arc::new(data),
            };
        }
        Ok(model)
    }

    pub fn dimension(&self) -> usize {
        self.data.dimension
    }

    pub fn generators(&self) -> &[Generator] {
        &self.data.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.data.generators.iter().position(|g| g.name == name)
    }

    pub fn has_table(&self) -> bool {
        self.data.table.is_some()
    }

    pub(crate) fn rule(&self) -> Option<&ReductionRule> {
        self.data.rule.as_ref()
    }

    /// The unit class.
    pub fn one(&self) -> GradedClass {
        GradedClass::constant(self, Rat::one())
    }

    /// The zero class.
    pub fn zero(&self) -> GradedClass {
        GradedClass {
            model: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The class of the generator with the given index.
    pub fn generator_class(&self, index: usize) -> GradedClass {
        let mut class = self.zero();
        class.insert_term(Monomial::generator(index), Rat::one());
        class
    }

    /// Look up a generator class by name.
    pub fn named_class(&self, name: &str) -> Result<GradedClass> {
        let idx = self
            .generator_index(name)
            .ok_or(Error::MissingGenerator("generator name unknown"))?;
        Ok(self.generator_class(idx))
    }

    /// True when the monomial survives the caps and truncation of this model.
    fn admissible(&self, mono: &Monomial) -> bool {
        for &(g, e) in mono.exponents() {
            if let Some(cap) = self.data.generators[g as usize].power_cap {
                if e >= cap {
                    return false;
                }
            }
        }
        if mono.degree(self.generators()) > self.data.dimension {
            return false;
        }
        if let Some(rule) = &self.data.rule {
            let (_, base) = mono.split_generator(rule.gen as usize);
            if base.degree(self.generators()) > rule.base_dimension {
                return false;
            }
        }
        true
    }

    /// Integrate a class over this model: with a table, the exact rational
    /// pairing against top-degree monomials; without one, the top-degree
    /// component unchanged (formal mode).
    pub fn integrate(&self, class: &GradedClass) -> Result<Integrated> {
        if &class.model != self {
            return Err(Error::ModelMismatch);
        }
        let top = class.component(self.dimension());
        match &self.data.table {
            None => Ok(Integrated::Formal(top)),
            Some(table) => {
                let mut total = Rat::zero();
                for (mono, coeff) in &top.terms {
                    let value = table
                        .get(mono)
                        .ok_or_else(|| Error::MissingTableEntry(self.render_monomial(mono)))?;
                    total += coeff * value;
                }
                Ok(Integrated::Number(total))
            }
        }
    }

    pub fn render_monomial(&self, mono: &Monomial) -> String {
        if mono.is_one() {
            return "1".to_string();
        }
        mono.exponents()
            .iter()
            .map(|&(g, e)| {
                let name = &self.data.generators[g as usize].name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Result of integration: a number over a model with a table, a top-degree
/// class over a formal model.
#[derive(Debug, Clone, PartialEq)]
pub enum Integrated {
    Number(Rat),
    Formal(GradedClass),
}

impl Integrated {
    pub fn number(&self) -> Option<&Rat> {
        match self {
            Integrated::Number(r) => Some(r),
            Integrated::Formal(_) => None,
        }
    }

    /// Numeric value, treating absence of a table as a missing entry.
    pub fn into_number(self) -> Result<Rat> {
        match self {
            Integrated::Number(r) => Ok(r),
            Integrated::Formal(_) => Err(Error::MissingTableEntry(
                "model has no integration table".to_string(),
            )),
        }
    }
}

/// An element of the truncated graded ring of a [`VarietyModel`].
///
/// Terms map admissible monomials to nonzero rationals; equality is term-map
/// equality over equal models.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedClass {
    model: VarietyModel,
    terms: BTreeMap<Monomial, Rat>,
}

impl GradedClass {
    pub fn constant(model: &VarietyModel, value: Rat) -> Self {
        let mut class = model.zero();
        class.insert_term(Monomial::one(), value);
        class
    }

    pub fn from_terms<I>(model: &VarietyModel, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut class = model.zero();
        for (mono, coeff) in terms {
            class.insert_term(mono, coeff);
        }
        class
    }

    pub fn model(&self) -> &VarietyModel {
        &self.model
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// Add one term, applying caps, truncation, and any rewrite rule.
    pub(crate) fn insert_term(&mut self, mono: Monomial, coeff: Rat) {
        let mut work = vec![(mono, coeff)];
        while let Some((mono, coeff)) = work.pop() {
            if coeff.is_zero() || !self.model.admissible(&mono) {
                continue;
            }
            if let Some(rule) = self.model.rule() {
                let power = mono.exponent(rule.gen as usize);
                if power >= rule.power {
                    let stripped = mono.with_generator_power(rule.gen as usize, power - rule.power);
                    for (rm, rc) in &rule.replacement {
                        work.push((stripped.mul(rm), &coeff * rc));
                    }
                    continue;
                }
            }
            let entry = self.terms.entry(mono.clone()).or_insert_with(Rat::zero);
            *entry += coeff;
            if entry.is_zero() {
                self.terms.remove(&mono);
            }
        }
    }

    fn check_model(&self, other: &GradedClass) -> Result<()> {
        if self.model == other.model {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    pub fn add(&self, other: &GradedClass) -> Result<GradedClass> {
        self.check_model(other)?;
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.insert_term(mono.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedClass) -> Result<GradedClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedClass {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, factor: &Rat) -> GradedClass {
        if factor.is_zero() {
            return self.model.zero();
        }
        GradedClass {
            model: self.model.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Ring product, truncated and cap-reduced.
    pub fn mul(&self, other: &GradedClass) -> Result<GradedClass> {
        self.check_model(other)?;
        let mut out = self.model.zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u32) -> GradedClass {
        let mut out = self.model.one();
        for _ in 0..exponent {
            out = out.mul(self).expect("same model");
        }
        out
    }

    /// The homogeneous part in codimension `k`.
    pub fn component(&self, k: usize) -> GradedClass {
        GradedClass {
            model: self.model.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(self.model.generators()) == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every term has codimension `k` (vacuously for zero).
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms
            .keys()
            .all(|m| m.degree(self.model.generators()) == k)
    }

    /// Multiplicative inverse of a power series with degree-0 part 1,
    /// truncated at the model dimension.
    pub fn invert_unit(&self) -> Result<GradedClass> {
        if self.component(0) != self.model.one() {
            return Err(Error::NonUnitSeries);
        }
        let positive = self.sub(&self.model.one())?;
        // inv_{t+1} = 1 - u * inv_t converges once t reaches the dimension,
        // since u has positive degree.
        let mut inverse = self.model.one();
        for _ in 0..self.model.dimension() {
            inverse = self.model.one().sub(&positive.mul(&inverse)?)?;
        }
        Ok(inverse)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Terms in canonical print order: by degree, then by descending
    /// exponents in generator declaration order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Rat)> {
        let gens = self.model.generators();
        let mut terms: Vec<(Monomial, Rat)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        terms.sort_by_key(|(m, _)| {
            let dense: Vec<u32> = (0..gens.len()).map(|i| m.exponent(i)).collect();
            (m.degree(gens), std::cmp::Reverse(dense))
        });
        terms
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, coeff)) in self.sorted_terms().iter().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let magnitude = coeff.abs();
            let mono_str = self.model.render_monomial(mono);
            if mono.is_one() {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&mono_str);
            } else {
                out.push_str(&format!("{magnitude}*{mono_str}"));
            }
        }
        out
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
