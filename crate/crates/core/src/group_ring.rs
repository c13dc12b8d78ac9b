use std::collections::BTreeMap;
use std::fmt;

use crate::group::FiniteGroup;
use crate::scalar::{FieldSpec, Scalar};

/// A sparse element of `k[G]`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    field: FieldSpec,
    coeffs: BTreeMap<usize, Scalar>,
}

impl GroupRingElement {
    pub fn zero(field: FieldSpec) -> Self {
        GroupRingElement {
            field,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis element `g`.
    pub fn basis(field: FieldSpec, g: usize) -> Self {
        let mut x = Self::zero(field);
        x.add_term(g, &field.one());
        x
    }

    /// The norm element `N`, the sum of all group elements.
    pub fn norm(group: &FiniteGroup, field: FieldSpec) -> Self {
        let mut x = Self::zero(field);
        for g in 0..group.order() {
            x.add_term(g, &field.one());
        }
        x
    }

    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut x = Self::zero(field);
        for (g, c) in terms {
            x.add_term(g, &c);
        }
        x
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn add_term(&mut self, g: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&g) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.coeffs.remove(&g);
                }
            }
            None => {
                self.coeffs.insert(g, c.clone());
            }
        }
    }

    pub fn coeff(&self, g: usize) -> Scalar {
        self.coeffs.get(&g).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.field, self.terms().map(|(g, v)| (g, v * c)))
    }

    /// Product in `k[G]`, the bilinear extension of the group law.
    pub fn mul(&self, group: &FiniteGroup, other: &Self) -> Self {
        let mut out = Self::zero(self.field);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(group.mul(a, b), &(x * y));
            }
        }
        out
    }

    /// Sum of all coefficients (the augmentation).
    pub fn augmentation(&self) -> Scalar {
        let mut acc = self.field.zero();
        for (_, c) in self.terms() {
            acc += c;
        }
        acc
    }

    /// Display using group labels, e.g. `e + 2*x`.
    pub fn display<'a>(&'a self, group: &'a FiniteGroup) -> impl fmt::Display + 'a {
        struct D<'a>(&'a GroupRingElement, &'a FiniteGroup);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_zero() {
                    return write!(f, "0");
                }
                for (i, (g, c)) in self.0.terms().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if c.is_one() {
                        write!(f, "{}", self.1.label(g))?;
                    } else {
                        write!(f, "{}*{}", c, self.1.label(g))?;
                    }
                }
                Ok(())
            }
        }
        D(self, group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_c2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let n = GroupRingElement::norm(&g, FieldSpec::Rationals);
        assert_eq!(n.display(&g).to_string(), "e + x");
    }

    #[test]
    fn norm_of_trivial_and_s3() {
        let t = FiniteGroup::cyclic(1).unwrap();
        let n = GroupRingElement::norm(&t, FieldSpec::Rationals);
        assert_eq!(n, GroupRingElement::basis(FieldSpec::Rationals, 0));
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let n = GroupRingElement::norm(&s3, FieldSpec::Rationals);
        assert_eq!(n.len(), 6);
        assert!(n.terms().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn norm_absorbs_group_elements() {
        for spec in ["C3", "S3", "D4", "C2xC2"] {
            let g = FiniteGroup::parse(spec).unwrap();
            for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
                let n = GroupRingElement::norm(&g, field);
                for h in 0..g.order() {
                    let b = GroupRingElement::basis(field, h);
                    assert_eq!(b.mul(&g, &n), n);
                    assert_eq!(n.mul(&g, &b), n);
                }
                let nu = field.from_i64(g.order() as i64);
                assert_eq!(n.mul(&g, &n), n.scale(&nu));
            }
        }
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = FieldSpec::Prime(3);
        let mut x = GroupRingElement::basis(f, 1);
        x.add_term(1, &f.from_i64(2));
        assert!(x.is_zero());
    }
}
