//! The Hochschild chain complex `C_n = k[G]^(n+1)` with its boundary, the
//! tensor square with the total boundary, and the two coproducts into it.
//!
//! Basis tuples `(g_0, ..., g_n)` are the simplices of the cyclic bar
//! construction. Face `i < n` multiplies slots `i, i+1`; the last face is
//! `(g_n g_0, g_1, ..., g_{n-1})`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::{FieldSpec, Scalar};

pub type Tuple = Vec<usize>;

/// A sparse chain in `C_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    field: FieldSpec,
    degree: usize,
    terms: BTreeMap<Tuple, Scalar>,
}

impl Chain {
    pub fn zero(field: FieldSpec, degree: usize) -> Self {
        Chain {
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The basis chain `1 * tuple`.
    pub fn basis(field: FieldSpec, tuple: Tuple) -> Self {
        assert!(!tuple.is_empty(), "basis tuples have length degree + 1");
        let mut c = Self::zero(field, tuple.len() - 1);
        c.add_term(tuple, &field.one());
        c
    }

    pub fn from_terms(
        field: FieldSpec,
        degree: usize,
        terms: impl IntoIterator<Item = (Tuple, Scalar)>,
    ) -> Result<Self> {
        let mut c = Self::zero(field, degree);
        for (t, s) in terms {
            if t.len() != degree + 1 {
                return Err(Error::ArityMismatch {
                    expected: degree + 1,
                    got: t.len(),
                });
            }
            c.add_term(t, &s);
        }
        Ok(c)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, tuple: Tuple, coeff: &Scalar) {
        debug_assert_eq!(tuple.len(), self.degree + 1);
        add_into(&mut self.terms, tuple, coeff);
    }

    pub fn coeff(&self, tuple: &[usize]) -> Scalar {
        self.terms.get(tuple).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tuple, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (t, s) in other.terms() {
            out.add_term(t.clone(), s);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Chain {
        let mut out = Chain::zero(self.field, self.degree);
        for (t, s) in self.terms() {
            out.add_term(t.clone(), &(s * c));
        }
        out
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, coeff: &Scalar) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff.clone());
        }
    }
}

/// An element of `C_* (x) C_*` of a fixed total degree; each key is a
/// `(left, right)` pair of basis tuples whose degrees sum to `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorChain {
    field: FieldSpec,
    degree: usize,
    terms: BTreeMap<(Tuple, Tuple), Scalar>,
}

impl TensorChain {
    pub fn zero(field: FieldSpec, degree: usize) -> Self {
        TensorChain {
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, left: Tuple, right: Tuple, coeff: &Scalar) {
        debug_assert_eq!(left.len() + right.len(), self.degree + 2);
        add_into(&mut self.terms, (left, right), coeff);
    }

    pub fn coeff(&self, left: &[usize], right: &[usize]) -> Scalar {
        self.terms
            .get(&(left.to_vec(), right.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tuple, &Tuple, &Scalar)> {
        self.terms.iter().map(|((l, r), s)| (l, r, s))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Bidegrees `(p, q)` present among the terms.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let set: std::collections::BTreeSet<_> = self
            .terms
            .keys()
            .map(|(l, r)| (l.len() - 1, r.len() - 1))
            .collect();
        set.into_iter().collect()
    }
}

/// The `i`-th face of a basis tuple of degree `n >= 1`.
pub fn face_map(group: &FiniteGroup, i: usize, t: &[usize]) -> Result<Tuple> {
    let n = t.len().saturating_sub(1);
    if t.len() < 2 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: t.len() });
    }
    Ok(face_unchecked(group, i, t))
}

fn face_unchecked(group: &FiniteGroup, i: usize, t: &[usize]) -> Tuple {
    let n = t.len() - 1;
    if i < n {
        let mut out = Vec::with_capacity(n);
        out.extend_from_slice(&t[..i]);
        out.push(group.mul(t[i], t[i + 1]));
        out.extend_from_slice(&t[i + 2..]);
        out
    } else {
        let mut out = Vec::with_capacity(n);
        out.push(group.mul(t[n], t[0]));
        out.extend_from_slice(&t[1..n]);
        out
    }
}

/// `b = sum (-1)^i d_i`. On `C_0` the boundary is zero; the zero chain of
/// degree 0 is returned.
pub fn boundary(group: &FiniteGroup, c: &Chain) -> Chain {
    if c.degree == 0 {
        return Chain::zero(c.field, 0);
    }
    let mut out = Chain::zero(c.field, c.degree - 1);
    for (t, s) in c.terms() {
        let neg = -s;
        for i in 0..=c.degree {
            let coeff = if i % 2 == 0 { s } else { &neg };
            out.add_term(face_unchecked(group, i, t), coeff);
        }
    }
    out
}

/// `b^Tot = b (x) 1 + (-1)^p 1 (x) b` on `C_p (x) C_q`.
pub fn boundary_tot(group: &FiniteGroup, t: &TensorChain) -> TensorChain {
    if t.degree == 0 {
        return TensorChain::zero(t.field, 0);
    }
    let mut out = TensorChain::zero(t.field, t.degree - 1);
    for (left, right, s) in t.terms() {
        let p = left.len() - 1;
        let q = right.len() - 1;
        let neg = -s;
        if p > 0 {
            for i in 0..=p {
                let coeff = if i % 2 == 0 { s } else { &neg };
                out.add_term(face_unchecked(group, i, left), right.clone(), coeff);
            }
        }
        if q > 0 {
            for j in 0..=q {
                let positive = (j + p) % 2 == 0;
                let coeff = if positive { s } else { &neg };
                out.add_term(left.clone(), face_unchecked(group, j, right), coeff);
            }
        }
    }
    out
}

/// The coproduct `T(g_0, ..., g_m) = sum_p sum_h (h, g_1..g_p) (x) (g_0 h^-1, g_{p+1}..g_m)`,
/// extended linearly.
pub fn coproduct(group: &FiniteGroup, c: &Chain) -> TensorChain {
    let m = c.degree;
    let mut out = TensorChain::zero(c.field, m);
    for (t, s) in c.terms() {
        for p in 0..=m {
            for h in 0..group.order() {
                let mut left = Vec::with_capacity(p + 1);
                left.push(h);
                left.extend_from_slice(&t[1..=p]);
                let mut right = Vec::with_capacity(m - p + 1);
                right.push(group.mul(t[0], group.inv(h)));
                right.extend_from_slice(&t[p + 1..]);
                out.add_term(left, right, s);
            }
        }
    }
    out
}

/// Face of `t` spanned by the vertex interval `[from, to]`, `0 <= from <= to <= n`:
/// `((g_{to+1}..g_n)(g_0..g_from), g_{from+1}, ..., g_to)`.
pub fn interval_face(group: &FiniteGroup, t: &[usize], from: usize, to: usize) -> Tuple {
    let n = t.len() - 1;
    assert!(from <= to && to <= n, "bad vertex interval");
    let head = group.product(&t[to + 1..]);
    let tail = group.product(&t[..=from]);
    let mut out = Vec::with_capacity(to - from + 1);
    out.push(group.mul(head, tail));
    out.extend_from_slice(&t[from + 1..=to]);
    out
}

/// Front `p`-face `((g_{p+1}..g_m) g_0, g_1, ..., g_p)`.
pub fn front_face(group: &FiniteGroup, t: &[usize], p: usize) -> Tuple {
    interval_face(group, t, 0, p)
}

/// Back `q`-face `(g_0 g_1 .. g_{m-q}, g_{m-q+1}, ..., g_m)`.
pub fn back_face(group: &FiniteGroup, t: &[usize], q: usize) -> Tuple {
    let m = t.len() - 1;
    interval_face(group, t, m - q, m)
}

/// The Alexander-Whitney coproduct `sum_p f_p(s) (x) b_{m-p}(s)`.
pub fn coproduct_aw(group: &FiniteGroup, c: &Chain) -> TensorChain {
    let m = c.degree;
    let mut out = TensorChain::zero(c.field, m);
    for (t, s) in c.terms() {
        for p in 0..=m {
            out.add_term(front_face(group, t, p), back_face(group, t, m - p), s);
        }
    }
    out
}

/// `T` composed with the projection onto `k[N^cy(G,e)] (x) k[N^cy(G,e)]`:
/// only terms whose two factors both multiply out to the identity survive.
pub fn restricted_coproduct(group: &FiniteGroup, c: &Chain) -> TensorChain {
    let full = coproduct(group, c);
    let mut out = TensorChain::zero(c.field, c.degree);
    for (l, r, s) in full.terms() {
        if is_cyclic_nerve_e(group, l) && is_cyclic_nerve_e(group, r) {
            out.add_term(l.clone(), r.clone(), s);
        }
    }
    out
}

/// The counit: the coefficient of `e` in degree 0, zero above.
pub fn counit(group: &FiniteGroup, c: &Chain) -> Scalar {
    if c.degree == 0 {
        c.coeff(&[group.identity()])
    } else {
        c.field.zero()
    }
}

/// `(tau (x) 1)` applied to a tensor chain of total degree `m`, landing in `C_m`.
pub fn counit_left(group: &FiniteGroup, t: &TensorChain) -> Chain {
    let mut out = Chain::zero(t.field, t.degree);
    for (l, r, s) in t.terms() {
        if l.len() == 1 && l[0] == group.identity() {
            out.add_term(r.clone(), s);
        }
    }
    out
}

/// Whether `g_0 g_1 ... g_n = e`.
pub fn is_cyclic_nerve_e(group: &FiniteGroup, t: &[usize]) -> bool {
    group.product(t) == group.identity()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2).unwrap()
    }

    const E: usize = 0;
    const X: usize = 1;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn tc(terms: &[(&[usize], &[usize], i64)], degree: usize) -> TensorChain {
        let mut t = TensorChain::zero(q(), degree);
        for (l, r, c) in terms {
            t.add_term(l.to_vec(), r.to_vec(), &q().from_i64(*c));
        }
        t
    }

    #[test]
    fn faces() {
        let g = c2();
        assert_eq!(face_map(&g, 0, &[E, X]).unwrap(), vec![X]);
        assert_eq!(face_map(&g, 1, &[X, X]).unwrap(), vec![E]);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let (a, b, c) = (1, 2, 5);
        assert_eq!(face_map(&s3, 1, &[a, b, c]).unwrap(), vec![a, s3.mul(b, c)]);
        assert!(matches!(face_map(&g, 2, &[E, X]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(face_map(&g, 0, &[E]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn boundary_examples() {
        let g = c2();
        assert!(boundary(&g, &Chain::basis(q(), vec![X, X])).is_zero());

        let s3 = FiniteGroup::symmetric(3).unwrap();
        // (12) and (13) in one-line notation are 213 and 321
        let (a, b) = (s3.element("213").unwrap(), s3.element("321").unwrap());
        assert_ne!(s3.mul(a, b), s3.mul(b, a));
        let db = boundary(&s3, &Chain::basis(q(), vec![a, b]));
        assert_eq!(db.len(), 2);
        assert_eq!(db.coeff(&[s3.mul(a, b)]), q().from_i64(1));
        assert_eq!(db.coeff(&[s3.mul(b, a)]), q().from_i64(-1));

        let d3 = boundary(&g, &Chain::basis(q(), vec![X, X, X]));
        let expected = Chain::from_terms(q(), 1, [(vec![E, X], q().from_i64(2)), (vec![X, E], q().from_i64(-1))]).unwrap();
        assert_eq!(d3, expected);
    }

    #[test]
    fn boundary_on_degree_zero() {
        let g = c2();
        let z = boundary(&g, &Chain::basis(q(), vec![X]));
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn total_boundary_examples() {
        let g = c2();
        assert!(boundary_tot(&g, &tc(&[(&[X], &[E], 1)], 0)).is_zero());
        assert!(boundary_tot(&g, &tc(&[(&[X], &[X, X], 1)], 1)).is_zero());
        assert!(boundary_tot(&g, &tc(&[(&[X, X], &[X], 1)], 1)).is_zero());
        // the second summand carries (-1)^p: (x,x)(x)(x,x) in S3-free form
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = {
            let mut t = TensorChain::zero(q(), 2);
            t.add_term(vec![1, 2], vec![1, 2], &q().one());
            t
        };
        let bt = boundary_tot(&s3, &t);
        let ab = s3.mul(1, 2);
        let ba = s3.mul(2, 1);
        assert_eq!(bt.coeff(&[ab], &[1, 2]), q().from_i64(1));
        assert_eq!(bt.coeff(&[ba], &[1, 2]), q().from_i64(-1));
        assert_eq!(bt.coeff(&[1, 2], &[ab]), q().from_i64(-1));
        assert_eq!(bt.coeff(&[1, 2], &[ba]), q().from_i64(1));
    }

    #[test]
    fn coproduct_examples() {
        let g = c2();
        assert_eq!(
            coproduct(&g, &Chain::basis(q(), vec![X])),
            tc(&[(&[E], &[X], 1), (&[X], &[E], 1)], 0)
        );
        assert_eq!(
            coproduct(&g, &Chain::basis(q(), vec![E])),
            tc(&[(&[E], &[E], 1), (&[X], &[X], 1)], 0)
        );
        assert_eq!(
            coproduct(&g, &Chain::basis(q(), vec![X, X])),
            tc(
                &[
                    (&[E], &[X, X], 1),
                    (&[X], &[E, X], 1),
                    (&[E, X], &[X], 1),
                    (&[X, X], &[E], 1)
                ],
                1
            )
        );
    }

    /// Front and back faces computed by iterating single faces: the last
    /// face removes the last vertex, face 0 removes the first.
    fn oracle_aw(g: &FiniteGroup, t: &[usize]) -> TensorChain {
        let m = t.len() - 1;
        let mut out = TensorChain::zero(q(), m);
        for p in 0..=m {
            let mut front = t.to_vec();
            while front.len() > p + 1 {
                let last = front.len() - 1;
                front = face_map(g, last, &front).unwrap();
            }
            let mut back = t.to_vec();
            while back.len() > m - p + 1 {
                back = face_map(g, 0, &back).unwrap();
            }
            out.add_term(front, back, &q().one());
        }
        out
    }

    #[test]
    fn aw_matches_face_oracle() {
        let g = c2();
        // frozen oracle output for (x, x)
        let frozen = tc(&[(&[E], &[X, X], 1), (&[X, X], &[E], 1)], 1);
        assert_eq!(oracle_aw(&g, &[X, X]), frozen);
        assert_eq!(coproduct_aw(&g, &Chain::basis(q(), vec![X, X])), frozen);
        assert_eq!(
            coproduct_aw(&g, &Chain::basis(q(), vec![X])),
            tc(&[(&[X], &[X], 1)], 0)
        );
        let s3 = FiniteGroup::symmetric(3).unwrap();
        for t in [[1, 2, 3, 4], [5, 5, 0, 3], [0, 1, 0, 1]] {
            assert_eq!(coproduct_aw(&s3, &Chain::basis(q(), t.to_vec())), oracle_aw(&s3, &t));
        }
    }

    #[test]
    fn restriction_agrees_on_nerve_at_e() {
        let g = c2();
        let sigma = vec![X, X, E];
        assert!(is_cyclic_nerve_e(&g, &sigma));
        let c = Chain::basis(q(), sigma);
        let delta = coproduct_aw(&g, &c);
        assert_eq!(restricted_coproduct(&g, &c), delta);
        for (l, r, _) in delta.terms() {
            assert!(is_cyclic_nerve_e(&g, l) && is_cyclic_nerve_e(&g, r));
        }
    }

    #[test]
    fn counit_examples() {
        let g = c2();
        let c = Chain::from_terms(q(), 0, [(vec![E], q().from_i64(3)), (vec![X], q().from_i64(2))]).unwrap();
        assert_eq!(counit(&g, &c), q().from_i64(3));
        assert!(counit(&g, &Chain::basis(q(), vec![X, X])).is_zero());
        assert!(counit(&g, &Chain::basis(q(), vec![X])).is_zero());
    }

    #[test]
    fn nerve_predicate() {
        let g = c2();
        assert!(is_cyclic_nerve_e(&g, &[E]));
        assert!(is_cyclic_nerve_e(&g, &[X, X]));
        assert!(!is_cyclic_nerve_e(&g, &[X, E]));
    }
}
