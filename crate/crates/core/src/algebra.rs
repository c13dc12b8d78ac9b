use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_ring::GroupRingElement;
use crate::scalar::FieldSpec;

/// Default cap on dense array lengths (`|G|^(n+1)` entries per cochain).
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// The group ring `k[G]` together with the entry budget that bounds every
/// dense array built over it. Cheap to clone.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    group: Arc<FiniteGroup>,
    field: FieldSpec,
    budget: usize,
}

impl GroupAlgebra {
    pub fn new(group: FiniteGroup, field: FieldSpec) -> Self {
        GroupAlgebra {
            group: Arc::new(group),
            field,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget.max(1);
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `|G|^slots`, or `SizeGuard` if it exceeds the budget.
    pub fn space_len(&self, slots: usize) -> Result<usize> {
        let n = self.order() as u128;
        let mut len: u128 = 1;
        for _ in 0..slots {
            len = len.saturating_mul(n);
            if len > self.budget as u128 {
                return Err(Error::size_guard(
                    format!("{} tuples of length {slots}", self.group.name()),
                    (n).saturating_pow(slots as u32),
                    self.budget as u128,
                ));
            }
        }
        Ok(len as usize)
    }

    /// Mixed-radix index `sum g_i |G|^(k-1-i)`: the first slot is most significant.
    #[inline]
    pub fn encode(&self, tuple: &[usize]) -> usize {
        let n = self.order();
        tuple.iter().fold(0, |acc, &g| acc * n + g)
    }

    #[inline]
    pub fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        let n = self.order();
        for slot in out.iter_mut().rev() {
            *slot = index % n;
            index /= n;
        }
    }

    pub fn decode(&self, index: usize, slots: usize) -> Vec<usize> {
        let mut t = vec![0; slots];
        self.decode_into(index, &mut t);
        t
    }

    pub fn norm(&self) -> GroupRingElement {
        GroupRingElement::norm(&self.group, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_roundtrip() {
        let a = GroupAlgebra::new(FiniteGroup::symmetric(3).unwrap(), FieldSpec::Rationals);
        for i in 0..216 {
            assert_eq!(a.encode(&a.decode(i, 3)), i);
        }
        assert_eq!(a.encode(&[1, 0, 2]), 36 + 2);
    }

    #[test]
    fn budget_guard() {
        let a = GroupAlgebra::new(FiniteGroup::cyclic(10).unwrap(), FieldSpec::Rationals).with_budget(1000);
        assert_eq!(a.space_len(3).unwrap(), 1000);
        assert!(matches!(a.space_len(4), Err(Error::SizeGuard { .. })));
        assert!(matches!(a.space_len(40), Err(Error::SizeGuard { .. })));
    }
}
