//! The degree-0 TQFT: class functions `H = ker(b*: W_0 -> W_1)` under
//! convolution, with trace `eps(a) = a(e)` and the pairing restricted to `H`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::GroupAlgebra;
use crate::cochain::{unit, Cochain};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::par;
use crate::products::{cup_conv, pairing};
use crate::scalar::{FieldSpec, Scalar};

/// Structure constants of `H` in the basis of class indicators.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    group: String,
    field: FieldSpec,
    classes: Vec<Vec<usize>>,
    basis: Vec<Cochain>,
    /// `mul[i][j][k]`: coefficient of basis `k` in `basis_i * basis_j`.
    mul: Vec<Vec<Vec<Scalar>>>,
    pairing: Matrix,
    pairing_inv: Matrix,
    unit: Vec<Scalar>,
    trace: Vec<Scalar>,
}

/// Coordinates of a class function in the class-indicator basis; errors if
/// `a` is not constant on classes.
fn class_coordinates(classes: &[Vec<usize>], a: &Cochain) -> Result<Vec<Scalar>> {
    classes
        .iter()
        .map(|class| {
            let v = &a.values()[class[0]];
            if class.iter().any(|&g| &a.values()[g] != v) {
                return Err(Error::ArityMismatch {
                    expected: class.len(),
                    got: class.iter().filter(|&&g| &a.values()[g] == v).count(),
                });
            }
            Ok(v.clone())
        })
        .collect()
}

impl FrobeniusData {
    /// Builds `H` over `alg`. Fails with `DegeneratePairing` when the pairing
    /// matrix is singular, e.g. for `S3` over `F_3`.
    pub fn new(alg: &GroupAlgebra) -> Result<Self> {
        let g = alg.group();
        let f = alg.field();
        let classes = g.conjugacy_classes();
        let basis: Vec<Cochain> = classes
            .iter()
            .map(|class| {
                let mut values = vec![f.zero(); g.order()];
                for &x in class {
                    values[x] = f.one();
                }
                Cochain::from_values(alg, 0, values)
            })
            .collect::<Result<_>>()?;
        let n = basis.len();
        let mut mul = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                mul[i][j] = class_coordinates(&classes, &cup_conv(alg, &basis[i], &basis[j])?)?;
            }
        }
        let mut p = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                p.set(i, j, pairing(alg, &basis[i], &basis[j])?);
            }
        }
        let pairing_inv = p.inverse().ok_or_else(|| {
            Error::DegeneratePairing(format!(
                "pairing on class functions of {} over {} is singular (class sizes {:?})",
                g.name(),
                f,
                classes.iter().map(Vec::len).collect::<Vec<_>>()
            ))
        })?;
        let unit = class_coordinates(&classes, &unit(alg))?;
        let trace = classes
            .iter()
            .map(|c| if c.contains(&g.identity()) { f.one() } else { f.zero() })
            .collect();
        Ok(FrobeniusData {
            group: g.name().to_string(),
            field: f,
            classes,
            basis,
            mul,
            pairing: p,
            pairing_inv,
            unit,
            trace,
        })
    }

    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn basis(&self) -> &[Cochain] {
        &self.basis
    }

    pub fn pairing_matrix(&self) -> &Matrix {
        &self.pairing
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim())
            .map(|k| if k == i { self.field.one() } else { self.field.zero() })
            .collect()
    }

    pub fn coordinates(&self, a: &Cochain) -> Result<Vec<Scalar>> {
        if a.degree() != 0 {
            return Err(Error::ArityMismatch {
                expected: 0,
                got: a.degree(),
            });
        }
        class_coordinates(&self.classes, a)
    }

    pub fn to_cochain(&self, alg: &GroupAlgebra, x: &[Scalar]) -> Result<Cochain> {
        let mut values = vec![self.field.zero(); alg.order()];
        for (c, class) in x.iter().zip(&self.classes) {
            for &g in class {
                values[g] = c.clone();
            }
        }
        Cochain::from_values(alg, 0, values)
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.mul[i][j].iter().enumerate() {
                    out[k].add_mul(&ab, c);
                }
            }
        }
        out
    }

    pub fn trace(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (a, t) in x.iter().zip(&self.trace) {
            acc.add_mul(a, t);
        }
        acc
    }

    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                acc.add_mul(&(a * b), self.pairing.get(i, j));
            }
        }
        acc
    }

    /// Coefficient of `basis_k (x) basis_l` in `comul(basis_i)`:
    /// `sum_j mul[i][j][k] (P^-1)[l][j]`, the pairing dual of the product.
    fn comul_coeff(&self, i: usize, k: usize, l: usize) -> Scalar {
        let mut acc = self.field.zero();
        for j in 0..self.dim() {
            acc.add_mul(&self.mul[i][j][k], self.pairing_inv.get(l, j));
        }
        acc
    }

    /// `sum_i basis_i * basis^i` with `basis^i` the pairing-dual basis.
    pub fn handle_element(&self) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for i in 0..n {
            let mut dual = vec![self.field.zero(); n];
            for (l, d) in dual.iter_mut().enumerate() {
                *d = self.pairing_inv.get(l, i).clone();
            }
            let term = self.multiply(&self.basis_vector(i), &dual);
            for (o, t) in out.iter_mut().zip(term) {
                *o += &t;
            }
        }
        out
    }

    /// `eps(handle^g)`; the sphere (`g = 0`) gives `eps(u) = 1`.
    pub fn surface_invariant(&self, genus: usize) -> Scalar {
        let h = self.handle_element();
        let mut x = self.unit.clone();
        for _ in 0..genus {
            x = self.multiply(&x, &h);
        }
        self.trace(&x)
    }

    /// Whether the Frobenius axioms hold on all basis triples: associativity,
    /// commutativity, unit, `<ab, c> = <a, bc>` and `eps(ab) = <a, b>`.
    pub fn axioms_hold(&self) -> bool {
        let n = self.dim();
        let e: Vec<Vec<Scalar>> = (0..n).map(|i| self.basis_vector(i)).collect();
        for a in &e {
            if &self.multiply(&self.unit, a) != a {
                return false;
            }
            for b in &e {
                let ab = self.multiply(a, b);
                if ab != self.multiply(b, a) || self.trace(&ab) != self.pair(a, b) {
                    return false;
                }
                for c in &e {
                    let bc = self.multiply(b, c);
                    if self.multiply(&ab, c) != self.multiply(a, &bc) || self.pair(&ab, c) != self.pair(a, &bc) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Evaluates a cobordism word on a state of `H^(x k)`.
    pub fn evaluate(&self, word: &CobordismWord, input: &State) -> Result<State> {
        word.output_arity(input.circles)?;
        let n = self.dim();
        let f = self.field;
        let mut state = input.clone();
        for m in &word.moves {
            state = match *m {
                Move::Id => state,
                Move::Unit(i) => state.apply(n, i, 0, 1, |_| {
                    self.unit.iter().enumerate().map(|(k, c)| (vec![k], c.clone())).collect()
                }),
                Move::Counit(i) => state.apply(n, i, 1, 0, |x| vec![(vec![], self.trace[x[0]].clone())]),
                Move::Mul(i) => state.apply(n, i, 2, 1, |x| {
                    self.mul[x[0]][x[1]].iter().enumerate().map(|(k, c)| (vec![k], c.clone())).collect()
                }),
                Move::Comul(i) => state.apply(n, i, 1, 2, |x| {
                    let mut out = Vec::new();
                    for k in 0..n {
                        for l in 0..n {
                            out.push((vec![k, l], self.comul_coeff(x[0], k, l)));
                        }
                    }
                    out
                }),
                Move::Swap(i) => state.apply(n, i, 2, 2, |x| vec![(vec![x[1], x[0]], f.one())]),
            };
        }
        Ok(state)
    }
}

/// A vector in `H^(x circles)`, indexed in mixed radix with the first circle
/// most significant. Zero circles hold a single scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    circles: usize,
    values: Vec<Scalar>,
}

impl State {
    pub fn scalar(value: Scalar) -> Self {
        State {
            circles: 0,
            values: vec![value],
        }
    }

    /// `x_1 (x) ... (x) x_k` for coordinate vectors of equal length.
    pub fn product(field: FieldSpec, dim: usize, factors: &[Vec<Scalar>]) -> Result<Self> {
        let mut values = vec![field.one()];
        for x in factors {
            if x.len() != dim {
                return Err(Error::ArityMismatch {
                    expected: dim,
                    got: x.len(),
                });
            }
            values = values.iter().flat_map(|a| x.iter().map(move |b| a * b)).collect();
        }
        Ok(State {
            circles: factors.len(),
            values,
        })
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// The value of a closed state.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        (self.circles == 0).then(|| &self.values[0])
    }

    /// Applies a map `H^(x a) -> H^(x b)` at circle `pos`, given on basis
    /// tensors as a list of `(output digits, coefficient)`.
    fn apply<F>(&self, dim: usize, pos: usize, a: usize, b: usize, map: F) -> State
    where
        F: Fn(&[usize]) -> Vec<(Vec<usize>, Scalar)>,
    {
        let field = self.values[0].field();
        let k = self.circles;
        let suffix_len = dim.pow((k - pos - a) as u32);
        let mid_in = dim.pow(a as u32);
        let mid_out = dim.pow(b as u32);
        let prefix_len = dim.pow(pos as u32);
        let mut out = vec![field.zero(); prefix_len * mid_out * suffix_len];
        let digits = |mut x: usize, len: usize| {
            let mut d = vec![0; len];
            for slot in d.iter_mut().rev() {
                *slot = x % dim;
                x /= dim;
            }
            d
        };
        for mi in 0..mid_in {
            let image = map(&digits(mi, a));
            for (od, c) in image {
                if c.is_zero() {
                    continue;
                }
                let mo = od.iter().fold(0, |acc, &x| acc * dim + x);
                for p in 0..prefix_len {
                    for s in 0..suffix_len {
                        let v = &self.values[(p * mid_in + mi) * suffix_len + s];
                        if !v.is_zero() {
                            out[(p * mid_out + mo) * suffix_len + s].add_mul(v, &c);
                        }
                    }
                }
            }
        }
        State {
            circles: k - a + b,
            values: out,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Unit(usize),
    Counit(usize),
    Mul(usize),
    Comul(usize),
    Swap(usize),
    Id,
}

impl Move {
    fn arity(self) -> (usize, usize, usize) {
        match self {
            Move::Unit(i) => (i, 0, 1),
            Move::Counit(i) => (i, 1, 0),
            Move::Mul(i) => (i, 2, 1),
            Move::Comul(i) => (i, 1, 2),
            Move::Swap(i) => (i, 2, 2),
            Move::Id => (0, 0, 0),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Unit(i) => write!(f, "unit {i}"),
            Move::Counit(i) => write!(f, "counit {i}"),
            Move::Mul(i) => write!(f, "mul {i}"),
            Move::Comul(i) => write!(f, "comul {i}"),
            Move::Swap(i) => write!(f, "swap {i}"),
            Move::Id => write!(f, "id"),
        }
    }
}

/// A composite of elementary cobordisms, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CobordismWord {
    moves: Vec<Move>,
}

impl CobordismWord {
    pub fn new(moves: Vec<Move>) -> Self {
        CobordismWord { moves }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// The closed surface of the given genus: `unit, (comul, mul)^g, counit`.
    pub fn closed_surface(genus: usize) -> Self {
        let mut moves = vec![Move::Unit(0)];
        for _ in 0..genus {
            moves.push(Move::Comul(0));
            moves.push(Move::Mul(0));
        }
        moves.push(Move::Counit(0));
        CobordismWord { moves }
    }

    /// Output circle count for `inputs` input circles; errors on a move
    /// that reaches past the circles present.
    pub fn output_arity(&self, inputs: usize) -> Result<usize> {
        let mut k = inputs;
        for m in &self.moves {
            let (pos, a, b) = m.arity();
            if pos + a > k {
                return Err(Error::ArityMismatch {
                    expected: pos + a,
                    got: k,
                });
            }
            k = k - a + b;
        }
        Ok(k)
    }
}

impl fmt::Display for CobordismWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for CobordismWord {
    type Err = Error;

    /// Whitespace-separated tokens `unit | counit | mul i | comul i | swap i | id`.
    /// A missing position means circle 0; commas and enclosing brackets are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned = s.trim().trim_start_matches('[').trim_end_matches(']').replace(',', " ");
        let mut tokens = cleaned.split_whitespace().peekable();
        let mut moves = Vec::new();
        while let Some(t) = tokens.next() {
            let make: fn(usize) -> Move = match t {
                "unit" => Move::Unit,
                "counit" => Move::Counit,
                "mul" => Move::Mul,
                "comul" => Move::Comul,
                "swap" => Move::Swap,
                "id" => {
                    moves.push(Move::Id);
                    continue;
                }
                other => return Err(Error::parse(format!("unknown cobordism move {other:?}"))),
            };
            let pos = match tokens.peek().and_then(|p| p.parse::<usize>().ok()) {
                Some(i) => {
                    tokens.next();
                    i
                }
                None => 0,
            };
            moves.push(make(pos));
        }
        Ok(CobordismWord { moves })
    }
}

/// `|Hom(pi_1(S_g), G)|`: tuples `(a_1, b_1, ..., a_g, b_g)` with
/// `prod [a_i, b_i] = e`, by brute force.
pub fn hom_count_oracle(alg: &GroupAlgebra, genus: usize) -> Result<u64> {
    let g = alg.group();
    let len = alg.space_len(2 * genus)?;
    Ok(par::count(len, |i| {
        let t = alg.decode(i, 2 * genus);
        let mut acc = g.identity();
        for pair in t.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            let comm = g.product(&[a, b, g.inv(a), g.inv(b)]);
            acc = g.mul(acc, comm);
        }
        acc == g.identity()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn data(spec: &str, field: FieldSpec) -> Result<(GroupAlgebra, FrobeniusData)> {
        let alg = GroupAlgebra::new(FiniteGroup::parse(spec).unwrap(), field);
        let f = FrobeniusData::new(&alg)?;
        Ok((alg, f))
    }

    fn q(v: i64) -> Scalar {
        FieldSpec::Rationals.from_i64(v)
    }

    #[test]
    fn c2_structure() {
        let (_, f) = data("C2", FieldSpec::Rationals).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.pairing_matrix(), &Matrix::identity(FieldSpec::Rationals, 2));
        assert_eq!(f.handle_element(), vec![q(2), q(0)]);
        assert!(f.axioms_hold());
    }

    #[test]
    fn s3_dims_and_degeneracy() {
        let (_, f) = data("S3", FieldSpec::Rationals).unwrap();
        assert_eq!(f.dim(), 3);
        assert!(f.axioms_hold());
        assert!(matches!(data("S3", FieldSpec::Prime(3)), Err(Error::DegeneratePairing(_))));
        let (_, f) = data("S3", FieldSpec::Prime(5)).unwrap();
        assert!(f.axioms_hold());
    }

    #[test]
    fn words() {
        let (_, f) = data("C2", FieldSpec::Rationals).unwrap();
        let empty = State::scalar(q(1));
        let w: CobordismWord = "unit".parse().unwrap();
        let out = f.evaluate(&w, &empty).unwrap();
        assert_eq!(out.values(), f.unit());

        let torus: CobordismWord = "[unit, comul, mul, counit]".parse().unwrap();
        assert_eq!(f.evaluate(&torus, &empty).unwrap().as_scalar(), Some(&q(2)));
        let other: CobordismWord = "unit comul 0 swap 0 mul 0 counit".parse().unwrap();
        assert_eq!(f.evaluate(&other, &empty).unwrap().as_scalar(), Some(&q(2)));

        let x = f.basis_vector(1);
        let input = State::product(FieldSpec::Rationals, 2, &[x.clone(), x]).unwrap();
        let out = f.evaluate(&"mul 0".parse().unwrap(), &input).unwrap();
        assert_eq!(out.values(), &f.basis_vector(0)[..]);

        assert!(matches!(f.evaluate(&"mul 1".parse().unwrap(), &input), Err(Error::ArityMismatch { .. })));
        assert!("glue 1".parse::<CobordismWord>().is_err());
    }

    #[test]
    fn word_text_round_trip() {
        let w: CobordismWord = "unit comul 0 swap 0 mul id counit 0".parse().unwrap();
        assert_eq!(w.to_string(), "unit 0 comul 0 swap 0 mul 0 id counit 0");
        assert_eq!(w.to_string().parse::<CobordismWord>().unwrap(), w);
        assert_eq!(w.output_arity(0).unwrap(), 0);
    }

    #[test]
    fn counit_after_comul_is_identity() {
        let (_, f) = data("D4", FieldSpec::Rationals).unwrap();
        let w: CobordismWord = "comul 0 counit 0".parse().unwrap();
        for i in 0..f.dim() {
            let x = State::product(FieldSpec::Rationals, f.dim(), &[f.basis_vector(i)]).unwrap();
            assert_eq!(f.evaluate(&w, &x).unwrap(), x);
        }
    }

    #[test]
    fn surfaces_against_hom_counts() {
        for spec in ["C1", "C2", "C3", "S3", "D4"] {
            let (alg, f) = data(spec, FieldSpec::Rationals).unwrap();
            let order = alg.order() as i64;
            assert!(f.surface_invariant(0).is_one());
            assert_eq!(
                f.surface_invariant(1).scale_i64(order),
                q(hom_count_oracle(&alg, 1).unwrap() as i64)
            );
            // Z(S_g) |G|^g = |Hom(pi_1 S_g, G)|
            for genus in 1..=2u32 {
                assert_eq!(
                    f.surface_invariant(genus as usize).scale_i64(order.pow(genus)),
                    q(hom_count_oracle(&alg, genus as usize).unwrap() as i64)
                );
                let w = CobordismWord::closed_surface(genus as usize);
                assert_eq!(
                    f.evaluate(&w, &State::scalar(q(1))).unwrap().as_scalar(),
                    Some(&f.surface_invariant(genus as usize))
                );
            }
        }
    }

    #[test]
    fn hom_counts() {
        let c2 = GroupAlgebra::new(FiniteGroup::cyclic(2).unwrap(), FieldSpec::Rationals);
        assert_eq!(hom_count_oracle(&c2, 1).unwrap(), 4);
        assert_eq!(hom_count_oracle(&c2, 2).unwrap(), 16);
        let s3 = GroupAlgebra::new(FiniteGroup::symmetric(3).unwrap(), FieldSpec::Rationals);
        assert_eq!(hom_count_oracle(&s3, 1).unwrap(), 18);
        assert!(hom_count_oracle(&s3.with_budget(1000), 2).is_err());
    }
}
