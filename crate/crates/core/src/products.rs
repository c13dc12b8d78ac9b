//! Products and the pairing on cochains.

use crate::algebra::GroupAlgebra;
use crate::chain::{interval_face, TensorChain};
use crate::cochain::{coboundary_bstar, norm_evaluation, phi, psi, BarCochain, Cochain};
use crate::error::{Error, Result};
use crate::par;
use crate::scalar::Scalar;

fn check(alg: &GroupAlgebra, a: &Cochain) -> Result<()> {
    if a.field() != alg.field() {
        return Err(Error::FieldMismatch(alg.field().to_string(), a.field().to_string()));
    }
    let len = alg.space_len(a.degree() + 1)?;
    if a.values().len() != len {
        return Err(Error::ArityMismatch {
            expected: len,
            got: a.values().len(),
        });
    }
    Ok(())
}

fn check_bar(alg: &GroupAlgebra, f: &BarCochain) -> Result<()> {
    if f.field() != alg.field() {
        return Err(Error::FieldMismatch(alg.field().to_string(), f.field().to_string()));
    }
    let len = alg.space_len(f.degree() + 1)?;
    if f.coefficients().len() != len {
        return Err(Error::ArityMismatch {
            expected: len,
            got: f.coefficients().len(),
        });
    }
    Ok(())
}

/// `(f g)(a_1..a_{p+q}) = f(a_1..a_p) g(a_{p+1}..a_{p+q})` in `k[G]`.
pub fn cup_bar(alg: &GroupAlgebra, f: &BarCochain, g: &BarCochain) -> Result<BarCochain> {
    check_bar(alg, f)?;
    check_bar(alg, g)?;
    let grp = alg.group();
    let order = alg.order();
    let (p, q) = (f.degree(), g.degree());
    let args_len = alg.space_len(p + q)?;
    alg.space_len(p + q + 1)?;
    let back_len = alg.space_len(q)?;
    let zero = alg.field().zero();
    let blocks = par::tabulate(args_len, |idx| {
        let (x, y) = (f.block(idx / back_len), g.block(idx % back_len));
        let mut out = vec![zero.clone(); order];
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out[grp.mul(a, b)].add_mul(ca, cb);
            }
        }
        out
    });
    BarCochain::from_coefficients(alg, p + q, blocks.into_iter().flatten().collect())
}

/// The convolution product
/// `(a . b)(g_0, g_1..g_{p+q}) = sum_h a(h, g_1..g_p) b(g_0 h^-1, g_{p+1}..g_{p+q})`.
pub fn cup_conv(alg: &GroupAlgebra, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    check(alg, a)?;
    check(alg, b)?;
    let g = alg.group();
    let (p, q) = (a.degree(), b.degree());
    let n = p + q;
    let tail_len = alg.space_len(n)?;
    let back_len = alg.space_len(q)?;
    let front_len = alg.space_len(p)?;
    let (av, bv) = (a.values(), b.values());
    let values = par::tabulate(alg.space_len(n + 1)?, |idx| {
        let (g0, rest) = (idx / tail_len, idx % tail_len);
        let (front, back) = (rest / back_len, rest % back_len);
        let mut acc = alg.field().zero();
        for h in 0..alg.order() {
            let x = &av[h * front_len + front];
            if x.is_zero() {
                continue;
            }
            acc.add_mul(x, &bv[g.mul(g0, g.inv(h)) * back_len + back]);
        }
        acc
    });
    Cochain::from_values(alg, n, values)
}

/// `Phi(Psi(a) . Psi(b))`, the convolution product by its definition.
pub fn cup_conv_via_bar(alg: &GroupAlgebra, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    phi(alg, &cup_bar(alg, &psi(alg, a)?, &psi(alg, b)?)?)
}

/// Gerstenhaber's pre-Lie product, degree `p + q - 1`:
/// `sum_{i=1}^p (-1)^((i-1)(q-1)) f(a_1..a_{i-1}, g(a_i..a_{i+q-1}), a_{i+q}..)`.
///
/// `p = 0` gives the zero cochain of degree `q - 1`; `p = q = 0` has no
/// target and is an `ArityMismatch`.
pub fn pre_lie_bar(alg: &GroupAlgebra, f: &BarCochain, g: &BarCochain) -> Result<BarCochain> {
    check_bar(alg, f)?;
    check_bar(alg, g)?;
    let (p, q) = (f.degree(), g.degree());
    if p + q == 0 {
        return Err(Error::ArityMismatch { expected: 1, got: 0 });
    }
    let n = p + q - 1;
    let order = alg.order();
    let args_len = alg.space_len(n)?;
    alg.space_len(n + 1)?;
    let zero = alg.field().zero();
    let blocks = par::tabulate(args_len, |idx| {
        let a = alg.decode(idx, n);
        let mut out = vec![zero.clone(); order];
        let mut inner = Vec::with_capacity(p);
        for i in 1..=p {
            let gv = g.block(alg.encode(&a[i - 1..i - 1 + q]));
            let negative = ((i - 1) * (q + 1)) % 2 == 1;
            for (k, ck) in gv.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                inner.clear();
                inner.extend_from_slice(&a[..i - 1]);
                inner.push(k);
                inner.extend_from_slice(&a[i - 1 + q..]);
                let fv = f.block(alg.encode(&inner));
                for (x, cx) in fv.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let term = ck * cx;
                    if negative {
                        out[x] -= &term;
                    } else {
                        out[x] += &term;
                    }
                }
            }
        }
        out
    });
    BarCochain::from_coefficients(alg, n, blocks.into_iter().flatten().collect())
}

/// `Phi(Psi(a) o Psi(b))`.
pub fn pre_lie_conv(alg: &GroupAlgebra, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    phi(alg, &pre_lie_bar(alg, &psi(alg, a)?, &psi(alg, b)?)?)
}

/// `a(front_p t) b(back_q t)` with the cyclic front and back faces.
pub fn cup_simplicial(alg: &GroupAlgebra, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    check(alg, a)?;
    check(alg, b)?;
    let g = alg.group();
    let (p, q) = (a.degree(), b.degree());
    let n = p + q;
    Cochain::from_fn(alg, n, |t| {
        let x = a.value(alg, &interval_face(g, t, 0, p));
        if x.is_zero() {
            return alg.field().zero();
        }
        x * b.value(alg, &interval_face(g, t, p, n))
    })
}

/// Steenrod's cup-one in cyclic coordinates, degree `p + q - 1`:
/// `sum_{i=0}^{p-1} (-1)^(i(q-1)) a(t with vertices i+1..i+q-1 removed) b(face [i, i+q])`.
///
/// Removing an interior vertex run merges the edges across it; for `q = 0` the
/// outer face repeats vertex `i` (an `e` is inserted).
pub fn cup_one_simplicial(alg: &GroupAlgebra, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    check(alg, a)?;
    check(alg, b)?;
    let g = alg.group();
    let (p, q) = (a.degree(), b.degree());
    if p + q == 0 {
        return Err(Error::ArityMismatch { expected: 1, got: 0 });
    }
    let n = p + q - 1;
    Cochain::from_fn(alg, n, |t| {
        let mut acc = alg.field().zero();
        let mut outer = Vec::with_capacity(p + 1);
        for i in 0..p {
            outer.clear();
            outer.extend_from_slice(&t[..=i]);
            outer.push(g.product(&t[i + 1..i + q + 1]));
            outer.extend_from_slice(&t[i + q + 1..]);
            let x = a.value(alg, &outer);
            if x.is_zero() {
                continue;
            }
            let term = x * b.value(alg, &interval_face(g, t, i, i + q));
            if (i * (q + 1)) % 2 == 1 {
                acc -= &term;
            } else {
                acc += &term;
            }
        }
        acc
    })
}

/// `<a, b> = sum_h a(h, N..N) b(h^-1, N..N)`. Degrees may differ.
pub fn pairing(alg: &GroupAlgebra, a: &Cochain, b: &Cochain) -> Result<Scalar> {
    check(alg, a)?;
    check(alg, b)?;
    let g = alg.group();
    let (x, y) = (norm_evaluation(alg, a), norm_evaluation(alg, b));
    let mut acc = alg.field().zero();
    for h in 0..alg.order() {
        acc.add_mul(&x[h], &y[g.inv(h)]);
    }
    Ok(acc)
}

/// `(a (x) b)` evaluated on the bidegree-`(p, q)` part of a tensor chain.
pub fn eval_tensor(alg: &GroupAlgebra, a: &Cochain, b: &Cochain, t: &TensorChain) -> Scalar {
    let mut acc = alg.field().zero();
    for (l, r, c) in t.terms() {
        if l.len() == a.degree() + 1 && r.len() == b.degree() + 1 {
            let x = a.value(alg, l);
            if !x.is_zero() {
                acc += &(c * &(x * b.value(alg, r)));
            }
        }
    }
    acc
}

/// Whether `a` vanishes on every tuple whose product is not `e`.
pub fn is_supported_on_e(alg: &GroupAlgebra, a: &Cochain) -> bool {
    let g = alg.group();
    let n = a.degree() + 1;
    par::find_first(a.values().len(), |i| {
        (!a.values()[i].is_zero() && g.product(&alg.decode(i, n)) != g.identity()).then_some(())
    })
    .is_none()
}

/// Whether `a(h, N, ..., N) = 0` for every `h`.
pub fn is_in_v(alg: &GroupAlgebra, a: &Cochain) -> bool {
    norm_evaluation(alg, a).iter().all(Scalar::is_zero)
}

/// Signs `(e1, e2, e3)` in
/// `a.b - (-1)^(pq) b.a = e1 b*(a o b) + e2 (b*a) o b + e3 a o (b*b)`.
///
/// With the insertion sign of [`pre_lie_bar`] no single triple works in every
/// bidegree, so the signs depend on `(p, q)`.
pub fn homotopy_signs(p: usize, q: usize) -> (i64, i64, i64) {
    let e1 = if ((p + 1) * q) % 2 == 0 { -1 } else { 1 };
    let e2 = if q % 2 == 0 { e1 } else { -e1 };
    (e1, e2, -e1)
}

/// Left side minus right side of the homotopy-commutativity relation; zero
/// when the relation holds.
pub fn homotopy_defect(alg: &GroupAlgebra, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    let (p, q) = (a.degree(), b.degree());
    let (e1, e2, e3) = homotopy_signs(p, q);
    let f = alg.field();
    let ab = cup_conv(alg, a, b)?;
    let ba = cup_conv(alg, b, a)?;
    let lhs = if (p * q) % 2 == 0 { ab.sub(&ba)? } else { ab.add(&ba)? };
    let da = coboundary_bstar(alg, a)?;
    let db = coboundary_bstar(alg, b)?;
    let mut rhs = pre_lie_conv(alg, &da, b)?.scale(&f.from_i64(e2));
    rhs = rhs.add(&pre_lie_conv(alg, a, &db)?.scale(&f.from_i64(e3)))?;
    if p + q > 0 {
        let h = coboundary_bstar(alg, &pre_lie_conv(alg, a, b)?)?;
        rhs = rhs.add(&h.scale(&f.from_i64(e1)))?;
    }
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::unit;
    use crate::group::FiniteGroup;
    use crate::group_ring::GroupRingElement;
    use crate::scalar::FieldSpec;

    fn alg(spec: &str) -> GroupAlgebra {
        GroupAlgebra::new(FiniteGroup::parse(spec).unwrap(), FieldSpec::Rationals)
    }

    fn gen(a: &GroupAlgebra, t: &[usize]) -> Cochain {
        Cochain::generator(a, t).unwrap()
    }

    #[test]
    fn conv_on_generators() {
        let a = alg("S3");
        let g = a.group();
        for (x, y) in [([1usize, 2], [3usize, 4]), ([5, 0], [2, 5])] {
            let prod = cup_conv(&a, &gen(&a, &x), &gen(&a, &y)).unwrap();
            assert_eq!(prod, gen(&a, &[g.mul(y[0], x[0]), x[1], y[1]]));
        }
        let c3 = alg("C3");
        assert_eq!(cup_conv(&c3, &gen(&c3, &[1]), &gen(&c3, &[1])).unwrap(), gen(&c3, &[2]));
        let u = unit(&c3);
        assert_eq!(cup_conv(&c3, &u, &u).unwrap(), u);
    }

    #[test]
    fn conv_matches_definition() {
        let a = alg("S3");
        let x = gen(&a, &[1, 4]).add(&gen(&a, &[3, 3]).scale(&a.field().from_i64(-2))).unwrap();
        let y = gen(&a, &[2]).add(&gen(&a, &[5])).unwrap();
        assert_eq!(cup_conv(&a, &x, &y).unwrap(), cup_conv_via_bar(&a, &x, &y).unwrap());
        assert_eq!(cup_conv(&a, &y, &x).unwrap(), cup_conv_via_bar(&a, &y, &x).unwrap());
    }

    #[test]
    fn bar_cup_examples() {
        let a = alg("S3");
        let g = a.group();
        let f = a.field();
        let (s, t) = (g.element("213").unwrap(), g.element("321").unwrap());
        let x = BarCochain::constant(&a, &GroupRingElement::basis(f, s)).unwrap();
        let y = BarCochain::constant(&a, &GroupRingElement::basis(f, t)).unwrap();
        let xy = cup_bar(&a, &x, &y).unwrap();
        assert_eq!(xy.value(&a, &[]), GroupRingElement::basis(f, g.mul(s, t)));

        let id = BarCochain::identity_map(&a).unwrap();
        let sq = cup_bar(&a, &id, &id).unwrap();
        assert_eq!(sq.value(&a, &[s, t]), GroupRingElement::basis(f, g.mul(s, t)));

        let one = BarCochain::constant(&a, &GroupRingElement::basis(f, g.identity())).unwrap();
        assert_eq!(cup_bar(&a, &one, &id).unwrap(), id);
        assert_eq!(cup_bar(&a, &id, &one).unwrap(), id);
    }

    #[test]
    fn pre_lie_examples() {
        let a = alg("C2");
        let id = BarCochain::identity_map(&a).unwrap();
        assert_eq!(pre_lie_bar(&a, &id, &id).unwrap(), id);

        let c = BarCochain::constant(&a, &a.norm()).unwrap();
        let z = pre_lie_bar(&a, &c, &id).unwrap();
        assert_eq!(z.degree(), 0);
        assert!(z.is_zero());
        assert!(matches!(pre_lie_bar(&a, &c, &c), Err(Error::ArityMismatch { .. })));

        // q = 1 makes every insertion sign +1, so f o id = p f.
        let f = BarCochain::generator(&a, 0, &[1, 1]).unwrap();
        let fg = pre_lie_bar(&a, &f, &id).unwrap();
        assert_eq!(fg, f.scale(&a.field().from_i64(2)));
        // g2(e) = x, g2(x) = 0: (f o g2)(a1, a2) = f(g2(a1), a2) + f(a1, g2(a2)).
        let g2 = BarCochain::generator(&a, 1, &[0]).unwrap();
        let fg2 = pre_lie_bar(&a, &f, &g2).unwrap();
        let e = GroupRingElement::basis(a.field(), 0);
        assert_eq!(fg2.value(&a, &[0, 1]), e);
        assert_eq!(fg2.value(&a, &[1, 0]), e);
        assert!(fg2.value(&a, &[0, 0]).is_zero());
        assert!(fg2.value(&a, &[1, 1]).is_zero());
    }

    #[test]
    fn simplicial_cup_examples() {
        let a = alg("C2");
        let e = gen(&a, &[0]);
        assert_eq!(cup_simplicial(&a, &e, &e).unwrap(), e);
        let x = gen(&a, &[1]);
        assert!(cup_simplicial(&a, &e, &x).unwrap().is_zero());
        let s = cup_one_simplicial(&a, &e, &e);
        assert!(matches!(s, Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn cup_agreements_on_generators_supported_on_e() {
        let a = alg("S3");
        let g = a.group();
        let on_e = |t: &[usize]| {
            let mut v = vec![g.inv(g.product(t))];
            v.extend_from_slice(t);
            gen(&a, &v)
        };
        let pairs = [(on_e(&[1]), on_e(&[2])), (on_e(&[3, 4]), on_e(&[5])), (on_e(&[]), on_e(&[1, 3]))];
        for (x, y) in &pairs {
            assert_eq!(cup_conv(&a, x, y).unwrap(), cup_simplicial(&a, x, y).unwrap());
            if x.degree() + y.degree() > 0 {
                assert_eq!(pre_lie_conv(&a, x, y).unwrap(), cup_one_simplicial(&a, x, y).unwrap());
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let c2 = alg("C2");
        assert!(pairing(&c2, &gen(&c2, &[1]), &gen(&c2, &[1])).unwrap().is_one());
        assert!(pairing(&c2, &gen(&c2, &[1, 0]), &gen(&c2, &[1, 1])).unwrap().is_one());
        let c3 = alg("C3");
        assert!(pairing(&c3, &gen(&c3, &[1]), &gen(&c3, &[1])).unwrap().is_zero());
        assert!(pairing(&c3, &gen(&c3, &[1]), &gen(&c3, &[2])).unwrap().is_one());
        let x = gen(&c3, &[1]).add(&gen(&c3, &[0]).scale(&c3.field().from_i64(3))).unwrap();
        assert_eq!(pairing(&c3, &x, &unit(&c3)).unwrap(), c3.field().from_i64(3));
    }

    #[test]
    fn predicates() {
        let a = alg("C2");
        assert!(is_supported_on_e(&a, &gen(&a, &[1, 1])));
        assert!(!is_supported_on_e(&a, &gen(&a, &[1, 0])));
        let v = gen(&a, &[1, 0]).sub(&gen(&a, &[1, 1])).unwrap();
        assert!(is_in_v(&a, &v));
        assert!(is_supported_on_e(&a, &unit(&a)));
        assert!(!is_in_v(&a, &unit(&a)));
    }

    #[test]
    fn homotopy_signs_by_bidegree() {
        assert_eq!(homotopy_signs(1, 1), (-1, 1, 1));
        assert_eq!(homotopy_signs(1, 2), (-1, -1, 1));
        assert_eq!(homotopy_signs(2, 2), (-1, -1, 1));
    }

    #[test]
    fn homotopy_on_generators() {
        let a = alg("S3");
        for (x, y) in [(vec![1usize, 2], vec![3usize, 4]), (vec![1, 5], vec![2, 0, 3]), (vec![3, 4, 5], vec![0, 1, 2])] {
            let d = homotopy_defect(&a, &gen(&a, &x), &gen(&a, &y)).unwrap();
            assert!(d.is_zero(), "{x:?} {y:?}");
        }
    }
}
