use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::rank::LaurentPolynomial;
use crate::scalar::{FieldDescriptor, Scalar};

/// A finitely supported element of `k[G]`, kept without zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    field: FieldDescriptor,
    group: GroupDescriptor,
    terms: BTreeMap<GroupElement, Scalar>,
}

impl GroupRingElement {
    pub fn zero(field: FieldDescriptor, group: GroupDescriptor) -> Self {
        GroupRingElement { field, group, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldDescriptor, group: GroupDescriptor) -> Self {
        Self::monomial(field.one(), group.identity()).expect("identity belongs to its group")
    }

    /// `c · g`.
    pub fn monomial(c: Scalar, g: GroupElement) -> Result<Self> {
        let mut out = Self::zero(c.field(), g.descriptor());
        out.add_term(g, c)?;
        Ok(out)
    }

    /// Builds `Σ c_i g_i` from integer coefficients and coordinate vectors.
    pub fn from_ints(field: FieldDescriptor, group: GroupDescriptor, terms: &[(i64, &[i64])]) -> Result<Self> {
        let mut out = Self::zero(field, group);
        for &(c, coords) in terms {
            out.add_term(group.element(coords)?, Scalar::from_i64(field, c))?;
        }
        Ok(out)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of group elements with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElement) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn support(&self) -> BTreeSet<GroupElement> {
        self.terms.keys().cloned().collect()
    }

    /// Adds `c · g` in place.
    pub fn add_term(&mut self, g: GroupElement, c: Scalar) -> Result<()> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if !self.group.contains(&g) {
            return Err(Error::GroupMismatch);
        }
        let sum = match self.terms.get(&g) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, sum);
        }
        Ok(())
    }

    fn check(&self, other: &GroupRingElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GroupRingElement) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GroupRingElement { terms: self.terms.iter().map(|(g, c)| (g.clone(), c.neg())).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Self::zero(self.field, self.group);
        for (g, v) in &self.terms {
            out.add_term(g.clone(), v.mul(c)?)?;
        }
        Ok(out)
    }

    /// The product in `k[G]`: `(ab)(g) = Σ_{uv = g} a(u) b(v)`.
    pub fn convolve(&self, other: &GroupRingElement) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.field, self.group);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.compose(v), a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    /// `g · self`.
    pub fn left_translate(&self, g: &GroupElement) -> Result<Self> {
        if g.descriptor() != self.group {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupRingElement { terms: self.terms.iter().map(|(h, c)| (g.compose(h), c.clone())).collect(), ..self.clone() })
    }

    /// `self · g`.
    pub fn right_translate(&self, g: &GroupElement) -> Result<Self> {
        if g.descriptor() != self.group {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupRingElement { terms: self.terms.iter().map(|(h, c)| (h.compose(g), c.clone())).collect(), ..self.clone() })
    }

    /// The same element over another field. Going from `Q` to `F_p` needs
    /// integer coefficients.
    pub fn change_field(&self, field: FieldDescriptor) -> Result<Self> {
        let mut out = Self::zero(field, self.group);
        for (g, c) in &self.terms {
            let mapped = if c.field() == field {
                c.clone()
            } else if let Some(n) = c.as_integer() {
                Scalar::from_bigint(field, &n)
            } else {
                return Err(Error::InvalidInput(format!(
                    "coefficient {c} has no image in {field}; only integer coefficients reduce"
                )));
            };
            out.add_term(g.clone(), mapped)?;
        }
        Ok(out)
    }

    /// The Laurent polynomial of an element of `k[Z^d]`.
    pub fn to_laurent(&self) -> Result<LaurentPolynomial> {
        match self.group {
            GroupDescriptor::Zd(_) => Ok(self.terms.iter().map(|(g, c)| (g.coordinates(), c.clone())).collect()),
            _ => Err(Error::OreUnavailable),
        }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{g}")?;
        }
        Ok(())
    }
}
