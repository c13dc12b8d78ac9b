//! The two cochain complexes over `k[G]`:
//!
//! * [`Cochain`]: `W_n = Hom(k[G]^(n+1), k)` with `b*`, stored densely in
//!   mixed-radix order of `G^(n+1)`.
//! * [`BarCochain`]: `Hom(k[G]^n, k[G])` with Hochschild's `delta`, stored as
//!   one coefficient vector of length `|G|` per argument tuple in `G^n`.
//!
//! `phi`/`psi` identify the two: on generators `(g_0; g_1..g_n)^# <-> (g_0^-1, g_1..g_n)^*`.

use std::collections::BTreeMap;

use crate::algebra::GroupAlgebra;
use crate::chain::Tuple;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_ring::GroupRingElement;
use crate::par;
use crate::scalar::{FieldSpec, Scalar};

/// A dense element of `W_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    field: FieldSpec,
    degree: usize,
    values: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(alg: &GroupAlgebra, degree: usize) -> Result<Self> {
        let len = alg.space_len(degree + 1)?;
        Ok(Cochain {
            field: alg.field(),
            degree,
            values: vec![alg.field().zero(); len],
        })
    }

    pub fn from_values(alg: &GroupAlgebra, degree: usize, values: Vec<Scalar>) -> Result<Self> {
        let len = alg.space_len(degree + 1)?;
        if values.len() != len {
            return Err(Error::ArityMismatch {
                expected: len,
                got: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|s| s.field() != alg.field()) {
            return Err(Error::FieldMismatch(alg.field().to_string(), bad.field().to_string()));
        }
        Ok(Cochain {
            field: alg.field(),
            degree,
            values,
        })
    }

    /// Tabulates `f` over `G^(degree+1)`.
    pub fn from_fn<F>(alg: &GroupAlgebra, degree: usize, f: F) -> Result<Self>
    where
        F: Fn(&[usize]) -> Scalar + Sync + Send,
    {
        let len = alg.space_len(degree + 1)?;
        let values = par::tabulate(len, |i| f(&alg.decode(i, degree + 1)));
        Ok(Cochain {
            field: alg.field(),
            degree,
            values,
        })
    }

    /// The dual generator `(g_0, ..., g_n)^*`.
    pub fn generator(alg: &GroupAlgebra, tuple: &[usize]) -> Result<Self> {
        check_elements(alg.group(), tuple)?;
        if tuple.is_empty() {
            return Err(Error::ArityMismatch { expected: 1, got: 0 });
        }
        let mut c = Self::zero(alg, tuple.len() - 1)?;
        c.values[alg.encode(tuple)] = alg.field().one();
        Ok(c)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }

    pub fn value(&self, alg: &GroupAlgebra, tuple: &[usize]) -> &Scalar {
        debug_assert_eq!(tuple.len(), self.degree + 1);
        &self.values[alg.encode(tuple)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Cochain> {
        if self.degree != other.degree || self.values.len() != other.values.len() {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(Cochain {
            field: self.field,
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain {
            field: self.field,
            degree: self.degree,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            field: self.field,
            degree: self.degree,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    /// Zeroes every entry whose tuple does not multiply out to `e`.
    pub fn restrict_to_e(&self, alg: &GroupAlgebra) -> Cochain {
        let g = alg.group();
        let mut out = self.clone();
        let mut t = vec![0; self.degree + 1];
        for (i, v) in out.values.iter_mut().enumerate() {
            alg.decode_into(i, &mut t);
            if g.product(&t) != g.identity() {
                *v = self.field.zero();
            }
        }
        out
    }
}

/// A dense element of `Hom(k[G]^degree, k[G])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarCochain {
    field: FieldSpec,
    degree: usize,
    order: usize,
    /// `values[args * |G| + g]` is the coefficient of `g` in `f(args)`.
    values: Vec<Scalar>,
}

impl BarCochain {
    pub fn zero(alg: &GroupAlgebra, degree: usize) -> Result<Self> {
        let len = alg.space_len(degree + 1)?;
        Ok(BarCochain {
            field: alg.field(),
            degree,
            order: alg.order(),
            values: vec![alg.field().zero(); len],
        })
    }

    /// Flat coefficients, `|G|^degree` blocks of `|G|`.
    pub fn from_coefficients(alg: &GroupAlgebra, degree: usize, values: Vec<Scalar>) -> Result<Self> {
        let len = alg.space_len(degree + 1)?;
        if values.len() != len {
            return Err(Error::ArityMismatch {
                expected: len,
                got: values.len(),
            });
        }
        Ok(BarCochain {
            field: alg.field(),
            degree,
            order: alg.order(),
            values,
        })
    }

    /// Tabulates `f` over `G^degree`.
    pub fn from_fn<F>(alg: &GroupAlgebra, degree: usize, f: F) -> Result<Self>
    where
        F: Fn(&[usize]) -> GroupRingElement + Sync + Send,
    {
        let n = alg.order();
        let args_len = alg.space_len(degree)?;
        alg.space_len(degree + 1)?;
        let blocks = par::tabulate(args_len, |i| {
            let x = f(&alg.decode(i, degree));
            (0..n).map(|g| x.coeff(g)).collect::<Vec<_>>()
        });
        Ok(BarCochain {
            field: alg.field(),
            degree,
            order: n,
            values: blocks.into_iter().flatten().collect(),
        })
    }

    /// The generator `(g_0; g_1, ..., g_n)^#`: sends `(g_1..g_n)` to `g_0`, all else to 0.
    pub fn generator(alg: &GroupAlgebra, value: usize, args: &[usize]) -> Result<Self> {
        check_elements(alg.group(), args)?;
        check_elements(alg.group(), &[value])?;
        let mut f = Self::zero(alg, args.len())?;
        f.values[alg.encode(args) * alg.order() + value] = alg.field().one();
        Ok(f)
    }

    /// The identity map of `k[G]` as a degree-1 cochain.
    pub fn identity_map(alg: &GroupAlgebra) -> Result<Self> {
        Self::from_fn(alg, 1, |a| GroupRingElement::basis(alg.field(), a[0]))
    }

    /// A degree-0 cochain, determined by its value on `1`.
    pub fn constant(alg: &GroupAlgebra, value: &GroupRingElement) -> Result<Self> {
        Self::from_fn(alg, 0, |_| value.clone())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.values
    }

    pub fn block(&self, args_index: usize) -> &[Scalar] {
        &self.values[args_index * self.order..(args_index + 1) * self.order]
    }

    pub fn value(&self, alg: &GroupAlgebra, args: &[usize]) -> GroupRingElement {
        let block = self.block(alg.encode(args));
        GroupRingElement::from_terms(self.field, block.iter().cloned().enumerate())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &BarCochain) -> Result<BarCochain> {
        if self.degree != other.degree || self.field != other.field {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(BarCochain {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> BarCochain {
        BarCochain {
            values: self.values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }
}

fn check_elements(group: &FiniteGroup, tuple: &[usize]) -> Result<()> {
    match tuple.iter().find(|&&g| g >= group.order()) {
        Some(&g) => Err(Error::IndexOutOfRange {
            index: g,
            len: group.order(),
        }),
        None => Ok(()),
    }
}

fn alternating(i: usize, s: &Scalar, acc: &mut Scalar) {
    if i % 2 == 0 {
        *acc += s;
    } else {
        *acc -= s;
    }
}

/// `(b* a)(t) = a(b t)`, raising the degree by one.
pub fn coboundary_bstar(alg: &GroupAlgebra, a: &Cochain) -> Result<Cochain> {
    let g = alg.group();
    let n = a.degree + 1;
    Cochain::from_fn(alg, n, |t| {
        let mut acc = alg.field().zero();
        let mut face = vec![0; n];
        for i in 0..=n {
            if i < n {
                face[..i].copy_from_slice(&t[..i]);
                face[i] = g.mul(t[i], t[i + 1]);
                face[i + 1..].copy_from_slice(&t[i + 2..]);
            } else {
                face[0] = g.mul(t[n], t[0]);
                face[1..].copy_from_slice(&t[1..n]);
            }
            alternating(i, a.value(alg, &face), &mut acc);
        }
        acc
    })
}

/// Hochschild's coboundary on `Hom(k[G]^n, k[G])`:
/// `a_1 f(a_2..) + sum_i (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^(n+1) f(a_1..a_n) a_{n+1}`.
pub fn coboundary_delta(alg: &GroupAlgebra, f: &BarCochain) -> Result<BarCochain> {
    let g = alg.group();
    let order = alg.order();
    let n = f.degree;
    let args_len = alg.space_len(n + 1)?;
    alg.space_len(n + 2)?;
    let zero = alg.field().zero();
    let blocks = par::tabulate(args_len, |idx| {
        let a = alg.decode(idx, n + 1);
        let mut out = vec![zero.clone(); order];
        // a_1 f(a_2, ..., a_{n+1})
        let first = f.block(alg.encode(&a[1..]));
        for (x, c) in first.iter().enumerate() {
            if !c.is_zero() {
                out[g.mul(a[0], x)] += c;
            }
        }
        let mut merged = vec![0; n];
        for i in 1..=n {
            // 1-based slots i, i+1 are a[i-1], a[i]
            merged[..i - 1].copy_from_slice(&a[..i - 1]);
            merged[i - 1] = g.mul(a[i - 1], a[i]);
            merged[i..].copy_from_slice(&a[i + 1..]);
            let block = f.block(alg.encode(&merged));
            for (x, c) in block.iter().enumerate() {
                if !c.is_zero() {
                    alternating(i, c, &mut out[x]);
                }
            }
        }
        let last = f.block(alg.encode(&a[..n]));
        for (x, c) in last.iter().enumerate() {
            if !c.is_zero() {
                alternating(n + 1, c, &mut out[g.mul(x, a[n])]);
            }
        }
        out
    });
    BarCochain::from_coefficients(alg, n + 1, blocks.into_iter().flatten().collect())
}

/// `Phi(f)(g_0, g_1..g_n) = <g_0, f(g_1..g_n)>`: the coefficient of `g_0^-1`.
pub fn phi(alg: &GroupAlgebra, f: &BarCochain) -> Result<Cochain> {
    let g = alg.group();
    let n = f.degree;
    let args_len = alg.space_len(n)?;
    Cochain::from_values(
        alg,
        n,
        par::tabulate(alg.space_len(n + 1)?, |i| {
            let (g0, args) = (i / args_len, i % args_len);
            f.values[args * alg.order() + g.inv(g0)].clone()
        }),
    )
}

/// Inverse of [`phi`]: `Psi(a)(g_1..g_n) = sum_{g_0} a(g_0, g_1..g_n) g_0^-1`.
pub fn psi(alg: &GroupAlgebra, a: &Cochain) -> Result<BarCochain> {
    let g = alg.group();
    let n = a.degree;
    let order = alg.order();
    let args_len = alg.space_len(n)?;
    let values = par::tabulate(alg.space_len(n + 1)?, |i| {
        let (args, x) = (i / order, i % order);
        a.values[g.inv(x) * args_len + args].clone()
    });
    BarCochain::from_coefficients(alg, n, values)
}

/// Multilinear extension of `a` evaluated on group-ring arguments.
pub fn eval_multilinear(alg: &GroupAlgebra, a: &Cochain, args: &[GroupRingElement]) -> Result<Scalar> {
    if args.len() != a.degree + 1 {
        return Err(Error::ArityMismatch {
            expected: a.degree + 1,
            got: args.len(),
        });
    }
    let terms: Vec<Vec<(usize, Scalar)>> = args
        .iter()
        .map(|x| x.terms().map(|(g, c)| (g, c.clone())).collect())
        .collect();
    let mut acc = alg.field().zero();
    let mut tuple = vec![0; args.len()];
    eval_rec(alg, a, &terms, 0, &alg.field().one(), &mut tuple, &mut acc);
    Ok(acc)
}

fn eval_rec(
    alg: &GroupAlgebra,
    a: &Cochain,
    terms: &[Vec<(usize, Scalar)>],
    slot: usize,
    weight: &Scalar,
    tuple: &mut Vec<usize>,
    acc: &mut Scalar,
) {
    if slot == terms.len() {
        acc.add_mul(weight, a.value(alg, tuple));
        return;
    }
    for (g, c) in &terms[slot] {
        tuple[slot] = *g;
        eval_rec(alg, a, terms, slot + 1, &(weight * c), tuple, acc);
    }
}

/// `h -> a(h, N, ..., N)`: block sums over the trailing slots.
pub fn norm_evaluation(alg: &GroupAlgebra, a: &Cochain) -> Vec<Scalar> {
    let block = a.values.len() / alg.order();
    (0..alg.order())
        .map(|h| {
            let mut acc = alg.field().zero();
            for v in &a.values[h * block..(h + 1) * block] {
                acc += v;
            }
            acc
        })
        .collect()
}

/// The unit `u = e^*` of the convolution product.
pub fn unit(alg: &GroupAlgebra) -> Cochain {
    Cochain::generator(alg, &[alg.group().identity()]).expect("W_0 always fits")
}

/// `b*(t^*) = sum_s [coefficient of t in b(s)] s^*`, by enumerating the
/// preimages of `t` under each face.
pub fn bstar_on_generator(group: &FiniteGroup, t: &[usize]) -> BTreeMap<Tuple, i64> {
    let n = t.len() - 1;
    let mut out = BTreeMap::new();
    let mut bump = |s: Tuple, c: i64| {
        let e = out.entry(s).or_insert(0);
        *e += c;
    };
    for i in 0..=n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for a in 0..group.order() {
            let mut s = Vec::with_capacity(n + 2);
            s.extend_from_slice(&t[..i]);
            s.push(a);
            s.push(group.mul(group.inv(a), t[i]));
            s.extend_from_slice(&t[i + 1..]);
            bump(s, sign);
        }
    }
    let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
    for a in 0..group.order() {
        let mut s = Vec::with_capacity(n + 2);
        s.push(group.mul(group.inv(a), t[0]));
        s.extend_from_slice(&t[1..]);
        s.push(a);
        bump(s, sign);
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `delta((g_0; g_1..g_n)^#)` as a sparse map `(args, group element) -> coefficient`.
pub fn delta_on_generator(group: &FiniteGroup, value: usize, args: &[usize]) -> BTreeMap<(Tuple, usize), i64> {
    let n = args.len();
    let mut out = BTreeMap::new();
    let mut bump = |a: Tuple, x: usize, c: i64| {
        let e = out.entry((a, x)).or_insert(0);
        *e += c;
    };
    for a1 in 0..group.order() {
        let mut a = Vec::with_capacity(n + 1);
        a.push(a1);
        a.extend_from_slice(args);
        bump(a, group.mul(a1, value), 1);
    }
    for i in 1..=n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for x in 0..group.order() {
            let mut a = Vec::with_capacity(n + 1);
            a.extend_from_slice(&args[..i - 1]);
            a.push(x);
            a.push(group.mul(group.inv(x), args[i - 1]));
            a.extend_from_slice(&args[i..]);
            bump(a, value, sign);
        }
    }
    let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
    for last in 0..group.order() {
        let mut a = Vec::with_capacity(n + 1);
        a.extend_from_slice(args);
        a.push(last);
        bump(a, group.mul(value, last), sign);
    }
    out.retain(|_, c| *c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn alg(spec: &str, field: FieldSpec) -> GroupAlgebra {
        GroupAlgebra::new(FiniteGroup::parse(spec).unwrap(), field)
    }

    #[test]
    fn bstar_of_identity_dual_vanishes_over_abelian() {
        let a = alg("C2", FieldSpec::Rationals);
        let e = unit(&a);
        assert!(coboundary_bstar(&a, &e).unwrap().is_zero());
    }

    #[test]
    fn bstar_detects_noncommuting_pair() {
        let a = alg("S3", FieldSpec::Rationals);
        let t12 = a.group().element("213").unwrap();
        let db = coboundary_bstar(&a, &Cochain::generator(&a, &[t12]).unwrap()).unwrap();
        assert!(!db.is_zero());
    }

    #[test]
    fn delta_degree_zero() {
        let a = alg("S3", FieldSpec::Rationals);
        let g = a.group();
        let e = GroupRingElement::basis(a.field(), g.identity());
        assert!(coboundary_delta(&a, &BarCochain::constant(&a, &e).unwrap()).unwrap().is_zero());

        let t12 = g.element("213").unwrap();
        let t13 = g.element("321").unwrap();
        let f = BarCochain::constant(&a, &GroupRingElement::basis(a.field(), t12)).unwrap();
        let df = coboundary_delta(&a, &f).unwrap();
        let at = df.value(&a, &[t13]);
        let mut expected = GroupRingElement::basis(a.field(), g.mul(t13, t12));
        expected.add_term(g.mul(t12, t13), &a.field().from_i64(-1));
        assert_eq!(at, expected);
        assert!(!at.is_zero());
    }

    #[test]
    fn phi_on_generators() {
        let a = alg("C3", FieldSpec::Rationals);
        let x = 1;
        let x2 = 2;
        let f = BarCochain::generator(&a, x, &[]).unwrap();
        assert_eq!(phi(&a, &f).unwrap(), Cochain::generator(&a, &[x2]).unwrap());
        let f = BarCochain::generator(&a, 0, &[]).unwrap();
        assert_eq!(phi(&a, &f).unwrap(), Cochain::generator(&a, &[0]).unwrap());
        for y in 0..3 {
            let f = BarCochain::generator(&a, x, &[y]).unwrap();
            assert_eq!(phi(&a, &f).unwrap(), Cochain::generator(&a, &[x2, y]).unwrap());
        }
        let back = psi(&a, &Cochain::generator(&a, &[x2]).unwrap()).unwrap();
        assert_eq!(back, BarCochain::generator(&a, x, &[]).unwrap());
    }

    #[test]
    fn multilinear_examples() {
        let a = alg("C2", FieldSpec::Rationals);
        let f = a.field();
        let (e, x) = (0, 1);
        let n = a.norm();
        let xs = GroupRingElement::basis(f, x);
        let alpha = Cochain::generator(&a, &[x, e]).unwrap();
        assert_eq!(eval_multilinear(&a, &alpha, &[xs.clone(), n.clone()]).unwrap(), f.one());
        let beta = alpha.sub(&Cochain::generator(&a, &[x, x]).unwrap()).unwrap();
        assert!(eval_multilinear(&a, &beta, &[xs.clone(), n]).unwrap().is_zero());
        assert!(matches!(
            eval_multilinear(&a, &alpha, &[xs]),
            Err(Error::ArityMismatch { expected: 2, got: 1 })
        ));
        let es = GroupRingElement::basis(f, e);
        let xs = GroupRingElement::basis(f, x);
        assert_eq!(eval_multilinear(&a, &alpha, &[xs, es]).unwrap(), f.one());
    }

    #[test]
    fn sparse_coboundaries_match_dense() {
        let a = alg("S3", FieldSpec::Rationals);
        let g = a.group();
        for t in [[0usize, 0], [1, 4], [5, 3]] {
            let dense = coboundary_bstar(&a, &Cochain::generator(&a, &t).unwrap()).unwrap();
            let sparse = bstar_on_generator(g, &t);
            for (i, v) in dense.values().iter().enumerate() {
                let s = a.decode(i, 3);
                let c = sparse.get(&s).copied().unwrap_or(0);
                assert_eq!(*v, a.field().from_i64(c));
            }
        }
        for (v, args) in [(1usize, vec![2usize]), (3, vec![0]), (5, vec![])] {
            let dense = coboundary_delta(&a, &BarCochain::generator(&a, v, &args).unwrap()).unwrap();
            let sparse = delta_on_generator(g, v, &args);
            for (i, c) in dense.coefficients().iter().enumerate() {
                let (ai, x) = (i / 6, i % 6);
                let key = (a.decode(ai, args.len() + 1), x);
                assert_eq!(*c, a.field().from_i64(sparse.get(&key).copied().unwrap_or(0)));
            }
        }
    }

    #[test]
    fn cochain_guard() {
        let a = alg("S3", FieldSpec::Rationals).with_budget(1000);
        assert!(Cochain::zero(&a, 2).is_ok());
        assert!(matches!(Cochain::zero(&a, 3), Err(Error::SizeGuard { .. })));
    }
}
