//! Randomized verification of the algebraic identities, with replayable
//! counterexamples.
//!
//! Each property draws its inputs from a per-trial seed
//! `derive_seed(seed, name, trial)`, so a report depends only on the config.
//! Input degrees stay within `max_degree`; intermediate results may sit one
//! degree higher.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use serde_json::Value;

use crate::algebra::GroupAlgebra;
use crate::chain::{
    boundary, boundary_tot, coproduct, coproduct_aw, counit_left, restricted_coproduct, Chain, Tuple,
};
use crate::cochain::{coboundary_bstar, coboundary_delta, phi, psi, unit, BarCochain, Cochain};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homology::{boundary_matrix, class_function_dim, radical_basis, ComplexSelector};
use crate::io::{cochain_from_json, cochain_to_json};
use crate::par;
use crate::products::{
    cup_conv, cup_conv_via_bar, cup_one_simplicial, cup_simplicial, eval_tensor, homotopy_defect, is_in_v,
    is_supported_on_e, pairing, pre_lie_conv,
};
use crate::random::{derive_seed, random_cochain, random_e_supported, random_v_element, SplitMix64};
use crate::scalar::FieldSpec;

/// Cocycle spaces are only sampled in degrees whose `b*` matrix has at most
/// this many entries; larger degrees are skipped by the parity properties.
const COCYCLE_MATRIX_LIMIT: usize = 1 << 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub group: String,
    pub field: FieldSpec,
    pub max_degree: usize,
    pub budget: usize,
    pub seed: u64,
    pub trials: usize,
}

impl RunConfig {
    pub fn algebra(&self) -> Result<GroupAlgebra> {
        if self.trials == 0 {
            return Err(Error::parse("trial count must be at least 1"));
        }
        Ok(GroupAlgebra::new(FiniteGroup::parse(&self.group)?, self.field).with_budget(self.budget))
    }
}

/// The explicit inputs of one trial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Inputs {
    pub cochains: Vec<Cochain>,
    pub tuples: Vec<Tuple>,
    pub degrees: Vec<usize>,
}

impl Inputs {
    fn cochains(cochains: Vec<Cochain>) -> Self {
        Inputs {
            cochains,
            ..Default::default()
        }
    }

    fn tuple(t: Tuple) -> Self {
        Inputs {
            tuples: vec![t],
            ..Default::default()
        }
    }

    pub fn to_json(&self, alg: &GroupAlgebra) -> Value {
        serde_json::json!({
            "cochains": self.cochains.iter().map(|c| cochain_to_json(alg, c)).collect::<Vec<_>>(),
            "tuples": self.tuples,
            "degrees": self.degrees,
        })
    }

    pub fn from_json(alg: &GroupAlgebra, v: &Value) -> Result<Self> {
        let list = |key: &str| -> Result<Vec<Value>> {
            match v.get(key) {
                None => Ok(Vec::new()),
                Some(Value::Array(xs)) => Ok(xs.clone()),
                Some(_) => Err(Error::parse(format!("\"{key}\" must be an array"))),
            }
        };
        Ok(Inputs {
            cochains: list("cochains")?
                .iter()
                .map(|c| cochain_from_json(alg, c))
                .collect::<Result<_>>()?,
            tuples: serde_json::from_value(Value::Array(list("tuples")?))?,
            degrees: serde_json::from_value(Value::Array(list("degrees")?))?,
        })
    }
}

/// Shared state for drawing inputs.
pub struct Ctx<'a> {
    pub alg: &'a GroupAlgebra,
    pub max_degree: usize,
    cocycles: Mutex<BTreeMap<usize, Arc<Vec<Cochain>>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(alg: &'a GroupAlgebra, max_degree: usize) -> Self {
        Ctx {
            alg,
            max_degree,
            cocycles: Mutex::new(BTreeMap::new()),
        }
    }

    fn cochain(&self, degree: usize, rng: &mut SplitMix64) -> Result<Cochain> {
        random_cochain(self.alg, degree, rng.next_u64())
    }

    fn e_cochain(&self, degree: usize, rng: &mut SplitMix64) -> Result<Cochain> {
        random_e_supported(self.alg, degree, rng.next_u64())
    }

    fn tuple(&self, len: usize, rng: &mut SplitMix64) -> Tuple {
        rng.tuple(self.alg.order(), len)
    }

    /// A random tuple with product `e`.
    fn e_tuple(&self, len: usize, rng: &mut SplitMix64) -> Tuple {
        let g = self.alg.group();
        let tail = rng.tuple(g.order(), len - 1);
        let mut t = vec![g.inv(g.product(&tail))];
        t.extend(tail);
        t
    }

    /// Whether a cocycle basis in degree `q` is cheap enough to compute.
    fn cocycles_feasible(&self, q: usize) -> bool {
        let n = self.alg.order() as u128;
        n.pow(q as u32 + 1) * n.pow(q as u32 + 2) <= COCYCLE_MATRIX_LIMIT as u128
    }

    /// A basis of `ker(b*: W_q -> W_{q+1})`, computed once.
    fn cocycle_basis(&self, q: usize) -> Result<Arc<Vec<Cochain>>> {
        if let Some(b) = self.cocycles.lock().expect("no poisoning").get(&q) {
            return Ok(b.clone());
        }
        let kernel = boundary_matrix(self.alg, q, ComplexSelector::CochainBStar)?.kernel_basis();
        let basis = Arc::new(
            kernel
                .into_iter()
                .map(|v| Cochain::from_values(self.alg, q, v))
                .collect::<Result<Vec<_>>>()?,
        );
        self.cocycles.lock().expect("no poisoning").insert(q, basis.clone());
        Ok(basis)
    }

    fn cocycle(&self, q: usize, rng: &mut SplitMix64) -> Result<Cochain> {
        let basis = self.cocycle_basis(q)?;
        let mut acc = Cochain::zero(self.alg, q)?;
        for b in basis.iter() {
            let c = crate::random::scalar_from_bits(self.alg.field(), rng.next_u64());
            if !c.is_zero() {
                acc = acc.add(&b.scale(&c))?;
            }
        }
        Ok(acc)
    }

    /// `(p, q)` with `p + q <= max_degree` and both at least `min`.
    fn pair(&self, min: usize, rng: &mut SplitMix64) -> Option<(usize, usize)> {
        let d = self.max_degree;
        if 2 * min > d {
            return None;
        }
        let p = min + rng.below(d - 2 * min + 1);
        let q = min + rng.below(d - p - min + 1);
        Some((p, q))
    }
}

type Draw = fn(&Ctx, &mut SplitMix64) -> Result<Option<Inputs>>;
type Cases = fn(&Ctx) -> Result<Vec<Inputs>>;
type Check = fn(&GroupAlgebra, &Inputs) -> Result<bool>;

#[derive(Clone, Copy)]
enum Source {
    Random(Draw),
    /// Deterministic: the same cases whatever the seed and trial count.
    Cases(Cases),
}

#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub statement: &'static str,
    source: Source,
    check: Check,
}

fn bar_from(alg: &GroupAlgebra, a: &Cochain) -> Result<BarCochain> {
    BarCochain::from_coefficients(alg, a.degree(), a.values().to_vec())
}

fn sign(p: usize) -> i64 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

fn basis_chain(alg: &GroupAlgebra, t: &[usize]) -> Chain {
    Chain::basis(alg.field(), t.to_vec())
}

const SUITE: &[Property] = &[
    Property {
        name: "boundary-squared",
        statement: "b(b(s)) = 0 on basis tuples of C_n",
        source: Source::Random(|c, r| {
            let n = 1 + r.below(c.max_degree + 1);
            Ok(Some(Inputs::tuple(c.tuple(n + 1, r))))
        }),
        check: |a, i| {
            let g = a.group();
            Ok(boundary(g, &boundary(g, &basis_chain(a, &i.tuples[0]))).is_zero())
        },
    },
    Property {
        name: "bstar-squared",
        statement: "b*(b*(a)) = 0",
        source: Source::Random(|c, r| {
            if c.max_degree == 0 {
                return Ok(None);
            }
            let n = r.below(c.max_degree);
            Ok(Some(Inputs::cochains(vec![c.cochain(n, r)?])))
        }),
        check: |a, i| Ok(coboundary_bstar(a, &coboundary_bstar(a, &i.cochains[0])?)?.is_zero()),
    },
    Property {
        name: "delta-squared",
        statement: "delta(delta(f)) = 0 on Hom(k[G]^n, k[G])",
        source: Source::Random(|c, r| {
            if c.max_degree == 0 {
                return Ok(None);
            }
            let n = r.below(c.max_degree);
            Ok(Some(Inputs::cochains(vec![c.cochain(n, r)?])))
        }),
        check: |a, i| {
            let f = bar_from(a, &i.cochains[0])?;
            Ok(coboundary_delta(a, &coboundary_delta(a, &f)?)?.is_zero())
        },
    },
    Property {
        name: "total-boundary-squared",
        statement: "b^Tot(b^Tot(T(s))) = 0",
        source: Source::Random(|c, r| {
            let n = r.below(c.max_degree + 1);
            Ok(Some(Inputs::tuple(c.tuple(n + 1, r))))
        }),
        check: |a, i| {
            let g = a.group();
            let t = coproduct(g, &basis_chain(a, &i.tuples[0]));
            Ok(boundary_tot(g, &boundary_tot(g, &t)).is_zero())
        },
    },
    Property {
        name: "coproduct-chain-map",
        statement: "T(b(s)) = b^Tot(T(s))",
        source: Source::Random(|c, r| {
            let n = r.below(c.max_degree + 1);
            Ok(Some(Inputs::tuple(c.tuple(n + 1, r))))
        }),
        check: |a, i| {
            let g = a.group();
            let s = basis_chain(a, &i.tuples[0]);
            Ok(coproduct(g, &boundary(g, &s)) == boundary_tot(g, &coproduct(g, &s)))
        },
    },
    Property {
        name: "coproduct-counit",
        statement: "(counit (x) 1)(T(s)) = s",
        source: Source::Random(|c, r| {
            let n = r.below(c.max_degree + 1);
            Ok(Some(Inputs::tuple(c.tuple(n + 1, r))))
        }),
        check: |a, i| {
            let s = basis_chain(a, &i.tuples[0]);
            Ok(counit_left(a.group(), &coproduct(a.group(), &s)) == s)
        },
    },
    Property {
        name: "phi-psi-inverse",
        statement: "Psi(Phi(f)) = f and Phi(Psi(a)) = a",
        source: Source::Random(|c, r| {
            let n = r.below(c.max_degree + 1);
            Ok(Some(Inputs::cochains(vec![c.cochain(n, r)?, c.cochain(n, r)?])))
        }),
        check: |a, i| {
            let f = bar_from(a, &i.cochains[1])?;
            Ok(phi(a, &psi(a, &i.cochains[0])?)? == i.cochains[0] && psi(a, &phi(a, &f)?)? == f)
        },
    },
    Property {
        name: "phi-psi-cochain-maps",
        statement: "b* Phi = Phi delta and delta Psi = Psi b*",
        source: Source::Random(|c, r| {
            let n = r.below(c.max_degree + 1);
            Ok(Some(Inputs::cochains(vec![c.cochain(n, r)?, c.cochain(n, r)?])))
        }),
        check: |a, i| {
            let f = bar_from(a, &i.cochains[0])?;
            let x = &i.cochains[1];
            Ok(coboundary_bstar(a, &phi(a, &f)?)? == phi(a, &coboundary_delta(a, &f)?)?
                && coboundary_delta(a, &psi(a, x)?)? == psi(a, &coboundary_bstar(a, x)?)?)
        },
    },
    Property {
        name: "product-definition",
        statement: "the convolution sum equals Phi(Psi(a) . Psi(b))",
        source: Source::Random(|c, r| {
            let (p, q) = c.pair(0, r).expect("min 0 always fits");
            Ok(Some(Inputs::cochains(vec![c.cochain(p, r)?, c.cochain(q, r)?])))
        }),
        check: |a, i| {
            let (x, y) = (&i.cochains[0], &i.cochains[1]);
            Ok(cup_conv(a, x, y)? == cup_conv_via_bar(a, x, y)?)
        },
    },
    Property {
        name: "product-unit",
        statement: "u . a = a . u = a",
        source: Source::Random(|c, r| {
            let n = r.below(c.max_degree + 1);
            Ok(Some(Inputs::cochains(vec![c.cochain(n, r)?])))
        }),
        check: |a, i| {
            let u = unit(a);
            let x = &i.cochains[0];
            Ok(&cup_conv(a, &u, x)? == x && &cup_conv(a, x, &u)? == x)
        },
    },
    Property {
        name: "leibniz",
        statement: "b*(a . b) = b*a . b + (-1)^p a . b*b",
        source: Source::Random(|c, r| {
            let (p, q) = c.pair(0, r).expect("min 0 always fits");
            Ok(Some(Inputs::cochains(vec![c.cochain(p, r)?, c.cochain(q, r)?])))
        }),
        check: |a, i| {
            let (x, y) = (&i.cochains[0], &i.cochains[1]);
            let lhs = coboundary_bstar(a, &cup_conv(a, x, y)?)?;
            let first = cup_conv(a, &coboundary_bstar(a, x)?, y)?;
            let second = cup_conv(a, x, &coboundary_bstar(a, y)?)?.scale(&a.field().from_i64(sign(x.degree())));
            Ok(lhs == first.add(&second)?)
        },
    },
    Property {
        name: "coproduct-duality",
        statement: "(a . b)(s) = (a (x) b)(T(s))",
        source: Source::Random(|c, r| {
            let (p, q) = c.pair(0, r).expect("min 0 always fits");
            Ok(Some(Inputs {
                cochains: vec![c.cochain(p, r)?, c.cochain(q, r)?],
                tuples: vec![c.tuple(p + q + 1, r)],
                degrees: Vec::new(),
            }))
        }),
        check: |a, i| {
            let (x, y) = (&i.cochains[0], &i.cochains[1]);
            let s = &i.tuples[0];
            let t = coproduct(a.group(), &basis_chain(a, s));
            Ok(cup_conv(a, x, y)?.value(a, s) == &eval_tensor(a, x, y, &t))
        },
    },
    Property {
        name: "frobenius",
        statement: "<a . b, c> = <a, b . c>",
        source: Source::Random(|c, r| {
            let (p, q) = c.pair(0, r).expect("min 0 always fits");
            let s = r.below(c.max_degree - q + 1);
            Ok(Some(Inputs::cochains(vec![c.cochain(p, r)?, c.cochain(q, r)?, c.cochain(s, r)?])))
        }),
        check: |a, i| {
            let (x, y, z) = (&i.cochains[0], &i.cochains[1], &i.cochains[2]);
            Ok(pairing(a, &cup_conv(a, x, y)?, z)? == pairing(a, x, &cup_conv(a, y, z)?)?)
        },
    },
    Property {
        name: "pairing-symmetry",
        statement: "<a, b> = <b, a>",
        source: Source::Random(|c, r| {
            let p = r.below(c.max_degree + 1);
            let q = r.below(c.max_degree + 1);
            Ok(Some(Inputs::cochains(vec![c.cochain(p, r)?, c.cochain(q, r)?])))
        }),
        check: |a, i| {
            let (x, y) = (&i.cochains[0], &i.cochains[1]);
            Ok(pairing(a, x, y)? == pairing(a, y, x)?)
        },
    },
    Property {
        name: "parity-descent-odd-odd",
        statement: "<a + b*g, b + b*t> = <a, b> for cocycles a, b of odd degrees p, q",
        source: Source::Random(|c, r| draw_parity(c, r, Parity::Odd, Parity::Odd)),
        check: check_parity,
    },
    Property {
        name: "parity-descent-even-odd",
        statement: "<a + b*g, b + b*t> = <a, b> for cocycles a, b of degrees p even positive, q odd",
        source: Source::Random(|c, r| draw_parity(c, r, Parity::Even, Parity::Odd)),
        check: check_parity,
    },
    Property {
        name: "parity-descent-odd-even",
        statement: "<a + b*g, b + b*t> = <a, b> for cocycles a, b of degrees p odd, q even positive",
        source: Source::Random(|c, r| draw_parity(c, r, Parity::Odd, Parity::Even)),
        check: check_parity,
    },
    Property {
        name: "parity-descent-zero-zero",
        statement: "<a, b> is defined on degree-0 cocycles (class functions)",
        source: Source::Random(|c, r| draw_parity(c, r, Parity::Zero, Parity::Zero)),
        check: check_parity,
    },
    Property {
        name: "v-closure",
        statement: "a in V_p implies b*a in V_(p+1)",
        source: Source::Random(|c, r| {
            let n = r.below(c.max_degree + 1);
            Ok(Some(Inputs::cochains(vec![random_v_element(c.alg, n, r.next_u64())?])))
        }),
        check: |a, i| Ok(is_in_v(a, &i.cochains[0]) && is_in_v(a, &coboundary_bstar(a, &i.cochains[0])?)),
    },
    Property {
        name: "we-closure",
        statement: "a in W_p(e) implies b*a in W_(p+1)(e)",
        source: Source::Random(|c, r| {
            let n = r.below(c.max_degree + 1);
            Ok(Some(Inputs::cochains(vec![c.e_cochain(n, r)?])))
        }),
        check: |a, i| Ok(is_supported_on_e(a, &coboundary_bstar(a, &i.cochains[0])?)),
    },
    Property {
        name: "we-subalgebra",
        statement: "a, b in W(e) implies a . b in W(e)",
        source: Source::Random(|c, r| {
            let (p, q) = c.pair(0, r).expect("min 0 always fits");
            Ok(Some(Inputs::cochains(vec![c.e_cochain(p, r)?, c.e_cochain(q, r)?])))
        }),
        check: |a, i| Ok(is_supported_on_e(a, &cup_conv(a, &i.cochains[0], &i.cochains[1])?)),
    },
    Property {
        name: "v-degenerate",
        statement: "a in V_p implies <a, b> = 0 for every b",
        source: Source::Random(|c, r| {
            let p = r.below(c.max_degree + 1);
            let q = r.below(c.max_degree + 1);
            Ok(Some(Inputs::cochains(vec![random_v_element(c.alg, p, r.next_u64())?, c.cochain(q, r)?])))
        }),
        check: |a, i| Ok(is_in_v(a, &i.cochains[0]) && pairing(a, &i.cochains[0], &i.cochains[1])?.is_zero()),
    },
    Property {
        name: "cup-agreement",
        statement: "convolution and simplicial cup agree on W(e)",
        source: Source::Random(|c, r| {
            let (p, q) = c.pair(0, r).expect("min 0 always fits");
            Ok(Some(Inputs::cochains(vec![c.e_cochain(p, r)?, c.e_cochain(q, r)?])))
        }),
        check: |a, i| {
            let (x, y) = (&i.cochains[0], &i.cochains[1]);
            Ok(cup_conv(a, x, y)? == cup_simplicial(a, x, y)?)
        },
    },
    Property {
        name: "cup-one-agreement",
        statement: "the pre-Lie product and cup-one agree on W(e)",
        source: Source::Random(|c, r| {
            if c.max_degree == 0 {
                return Ok(None);
            }
            let (p, q) = loop {
                let pq = c.pair(0, r).expect("min 0 always fits");
                if pq.0 + pq.1 > 0 {
                    break pq;
                }
            };
            Ok(Some(Inputs::cochains(vec![c.e_cochain(p, r)?, c.e_cochain(q, r)?])))
        }),
        check: |a, i| {
            let (x, y) = (&i.cochains[0], &i.cochains[1]);
            Ok(pre_lie_conv(a, x, y)? == cup_one_simplicial(a, x, y)?)
        },
    },
    Property {
        name: "restricted-coproduct",
        statement: "T projected to W(e) (x) W(e) equals Alexander-Whitney on tuples with product e",
        source: Source::Random(|c, r| {
            let n = r.below(c.max_degree + 1);
            Ok(Some(Inputs::tuple(c.e_tuple(n + 1, r))))
        }),
        check: |a, i| {
            let g = a.group();
            let s = basis_chain(a, &i.tuples[0]);
            Ok(restricted_coproduct(g, &s) == coproduct_aw(g, &s))
        },
    },
    Property {
        name: "homotopy-commutativity",
        statement: "a . b - (-1)^pq b . a = e1 b*(a o b) + e2 (b*a) o b + e3 a o (b*b), signs by bidegree",
        source: Source::Random(|c, r| {
            let Some((p, q)) = c.pair(1, r) else {
                return Ok(None);
            };
            Ok(Some(Inputs::cochains(vec![c.cochain(p, r)?, c.cochain(q, r)?])))
        }),
        check: |a, i| Ok(homotopy_defect(a, &i.cochains[0], &i.cochains[1])?.is_zero()),
    },
    Property {
        name: "radical-equals-v",
        statement: "the radical of the pairing against W_0 is V_p",
        source: Source::Cases(|c| {
            Ok((0..=c.max_degree.min(2))
                .map(|p| Inputs {
                    degrees: vec![p],
                    ..Default::default()
                })
                .collect())
        }),
        check: |a, i| Ok(radical_basis(a, i.degrees[0])?.equals_v),
    },
    Property {
        name: "class-functions",
        statement: "dim ker(b*: W_0 -> W_1) is the number of conjugacy classes",
        source: Source::Cases(|_| Ok(vec![Inputs::default()])),
        check: |a, _| Ok(class_function_dim(a)? == a.group().conjugacy_classes().len()),
    },
];

/// Not part of the suite: fails on every non-abelian group. Used to exercise
/// counterexample reporting and replay.
const CONTROLS: &[Property] = &[Property {
    name: "strict-commutativity",
    statement: "a . b = (-1)^pq b . a (false in general)",
    source: Source::Random(|c, r| {
        let (p, q) = c.pair(0, r).expect("min 0 always fits");
        Ok(Some(Inputs::cochains(vec![c.cochain(p, r)?, c.cochain(q, r)?])))
    }),
    check: |a, i| {
        let (x, y) = (&i.cochains[0], &i.cochains[1]);
        let yx = cup_conv(a, y, x)?.scale(&a.field().from_i64(sign(x.degree() * y.degree())));
        Ok(cup_conv(a, x, y)? == yx)
    },
}];

#[derive(Clone, Copy)]
enum Parity {
    Odd,
    /// Even and positive.
    Even,
    Zero,
}

impl Parity {
    fn admits(self, n: usize) -> bool {
        match self {
            Parity::Odd => n % 2 == 1,
            Parity::Even => n > 0 && n % 2 == 0,
            Parity::Zero => n == 0,
        }
    }
}

/// Cocycles `a`, `b` of the given parities, then `g`, `t` one degree lower
/// for each positive degree. Degrees whose cocycle space is too large to
/// compute are not drawn.
fn draw_parity(c: &Ctx, r: &mut SplitMix64, pp: Parity, qp: Parity) -> Result<Option<Inputs>> {
    let choose = |parity: Parity, r: &mut SplitMix64| {
        let ds: Vec<usize> = (0..=c.max_degree)
            .filter(|&n| parity.admits(n) && c.cocycles_feasible(n))
            .collect();
        (!ds.is_empty()).then(|| ds[r.below(ds.len())])
    };
    let (Some(p), Some(q)) = (choose(pp, r), choose(qp, r)) else {
        return Ok(None);
    };
    let mut cochains = vec![c.cocycle(p, r)?, c.cocycle(q, r)?];
    for n in [p, q] {
        if n > 0 {
            cochains.push(c.cochain(n - 1, r)?);
        }
    }
    Ok(Some(Inputs::cochains(cochains)))
}

fn check_parity(a: &GroupAlgebra, i: &Inputs) -> Result<bool> {
    let (x, y) = (&i.cochains[0], &i.cochains[1]);
    if !coboundary_bstar(a, x)?.is_zero() || !coboundary_bstar(a, y)?.is_zero() {
        return Ok(false);
    }
    let mut rest = i.cochains[2..].iter();
    let mut shift = |c: &Cochain| -> Result<Cochain> {
        if c.degree() == 0 {
            return Ok(c.clone());
        }
        let g = rest.next().ok_or(Error::ArityMismatch {
            expected: c.degree() - 1,
            got: 0,
        })?;
        c.add(&coboundary_bstar(a, g)?)
    };
    let (xs, ys) = (shift(x)?, shift(y)?);
    Ok(pairing(a, &xs, &ys)? == pairing(a, x, y)?)
}

impl Property {
    /// The verification suite, in report order.
    pub fn suite() -> &'static [Property] {
        SUITE
    }

    pub fn by_name(name: &str) -> Option<&'static Property> {
        SUITE.iter().chain(CONTROLS).find(|p| p.name == name)
    }

    pub fn names() -> Vec<&'static str> {
        SUITE.iter().chain(CONTROLS).map(|p| p.name).collect()
    }

    pub fn check(&self, alg: &GroupAlgebra, inputs: &Inputs) -> Result<bool> {
        (self.check)(alg, inputs)
    }

    /// Runs the property: `trials` random draws, or all fixed cases.
    pub fn run(&self, ctx: &Ctx, seed: u64, trials: usize) -> Result<PropertyRecord> {
        let alg = ctx.alg;
        let draws: Vec<(u64, Option<Inputs>)> = match self.source {
            Source::Random(draw) => {
                let seeds: Vec<u64> = (0..trials as u64).map(|t| derive_seed(seed, self.name, t)).collect();
                par::map_slice(&seeds, |&s| -> Result<(u64, Option<Inputs>)> {
                    Ok((s, draw(ctx, &mut SplitMix64::new(s))?))
                })
                .into_iter()
                .collect::<Result<_>>()?
            }
            Source::Cases(cases) => cases(ctx)?.into_iter().map(|i| (0, Some(i))).collect(),
        };
        let outcomes: Vec<Option<(u64, Inputs, bool)>> = par::map_slice(&draws, |(s, inputs)| {
            inputs
                .as_ref()
                .map(|i| self.check(alg, i).map(|ok| (*s, i.clone(), ok)))
                .transpose()
        })
        .into_iter()
        .collect::<Result<_>>()?;
        let mut record = PropertyRecord {
            name: self.name.to_string(),
            statement: self.statement.to_string(),
            trials: 0,
            passes: 0,
            counterexample: None,
        };
        for (trial, o) in outcomes.into_iter().enumerate() {
            let Some((s, inputs, ok)) = o else { continue };
            record.trials += 1;
            if ok {
                record.passes += 1;
            } else if record.counterexample.is_none() {
                record.counterexample = Some(Counterexample {
                    trial: trial as u64,
                    seed: s,
                    inputs: inputs.to_json(alg),
                });
            }
        }
        Ok(record)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub seed: u64,
    pub inputs: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyRecord {
    pub name: String,
    pub statement: String,
    pub trials: u64,
    pub passes: u64,
    pub counterexample: Option<Counterexample>,
}

impl PropertyRecord {
    pub fn passed(&self) -> bool {
        self.passes == self.trials
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub group: String,
    pub field: String,
    pub max_degree: usize,
    pub budget: usize,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: ConfigEcho,
    pub properties: Vec<PropertyRecord>,
    pub pass: bool,
}

/// Runs the named properties (the full suite when `only` is empty).
pub fn run_verification(config: &RunConfig, only: &[String]) -> Result<VerificationReport> {
    let alg = config.algebra()?;
    let selected: Vec<&Property> = if only.is_empty() {
        SUITE.iter().collect()
    } else {
        only.iter()
            .map(|n| Property::by_name(n).ok_or_else(|| Error::parse(format!("unknown property {n:?}"))))
            .collect::<Result<_>>()?
    };
    let ctx = Ctx::new(&alg, config.max_degree);
    let properties = selected
        .into_iter()
        .map(|p| p.run(&ctx, config.seed, config.trials))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: ConfigEcho {
            group: alg.group().name().to_string(),
            field: config.field.to_string(),
            max_degree: config.max_degree,
            budget: config.budget,
            seed: config.seed,
            trials: config.trials,
        },
        pass: properties.iter().all(PropertyRecord::passed),
        properties,
    })
}

/// Re-runs a property on serialized inputs; `Ok(false)` reproduces a failure.
pub fn replay(alg: &GroupAlgebra, property: &str, inputs: &Value) -> Result<bool> {
    let p = Property::by_name(property).ok_or_else(|| Error::parse(format!("unknown property {property:?}")))?;
    p.check(alg, &Inputs::from_json(alg, inputs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(group: &str, field: FieldSpec, max_degree: usize, trials: usize) -> RunConfig {
        RunConfig {
            group: group.to_string(),
            field,
            max_degree,
            budget: crate::algebra::DEFAULT_BUDGET,
            seed: 7,
            trials,
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names = Property::names();
        let n = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn suite_passes_small() {
        let r = run_verification(&config("C2", FieldSpec::Prime(2), 3, 10), &[]).unwrap();
        for p in &r.properties {
            assert!(p.passed(), "{} failed: {:?}", p.name, p.counterexample);
            assert!(p.trials > 0, "{} ran no trials", p.name);
        }
        assert!(r.pass);
        let r = run_verification(&config("S3", FieldSpec::Rationals, 2, 5), &[]).unwrap();
        assert!(r.pass, "{:?}", r.properties.iter().filter(|p| !p.passed()).collect::<Vec<_>>());
    }

    #[test]
    fn control_fails_and_replays() {
        let cfg = config("S3", FieldSpec::Rationals, 2, 20);
        let r = run_verification(&cfg, &["strict-commutativity".to_string()]).unwrap();
        assert!(!r.pass);
        let ce = r.properties[0].counterexample.as_ref().unwrap();
        let alg = cfg.algebra().unwrap();
        assert!(!replay(&alg, "strict-commutativity", &ce.inputs).unwrap());
        // the same inputs satisfy a true property
        assert!(replay(&alg, "frobenius", &{
            let mut v = ce.inputs.clone();
            let c = v["cochains"][0].clone();
            v["cochains"].as_array_mut().unwrap().push(c);
            v
        })
        .unwrap());
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = config("C3", FieldSpec::Prime(3), 2, 8);
        let a = serde_json::to_string(&run_verification(&cfg, &[]).unwrap()).unwrap();
        let b = serde_json::to_string(&run_verification(&cfg, &[]).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_config() {
        assert!(config("C2", FieldSpec::Rationals, 2, 0).algebra().is_err());
        assert!(run_verification(&config("C2", FieldSpec::Rationals, 2, 1), &["nope".into()]).is_err());
    }
}
