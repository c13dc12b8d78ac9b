//! Differential matrices and exact (co)homology dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::GroupAlgebra;
use crate::chain::{face_map, Chain};
use crate::cochain::{bstar_on_generator, delta_on_generator, phi, psi, BarCochain, Cochain};
use crate::error::{Error, Result};
use crate::matrix::{EchelonBasis, Matrix};
use crate::par;
use crate::products::pairing;
use crate::random::{derive_seed, random_cochain};
use crate::scalar::Scalar;
use crate::sparse::SparseMatrix;

/// Differential matrices may hold at most this many times the entry budget.
pub const MATRIX_ENTRY_FACTOR: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexSelector {
    /// `(C_*, b)`, homological.
    ChainB,
    /// `(W_*, b*)`.
    CochainBStar,
    /// `(Hom(k[G]^*, k[G]), delta)`.
    CochainDelta,
    /// `(W_*(e), b*)`, basis: tuples with product `e`, indexed by `g_1..g_n`.
    WeSub,
    /// `(V_*, b*)`, basis: kernel of the norm evaluation.
    VSub,
}

impl ComplexSelector {
    pub const ALL: [ComplexSelector; 5] = [
        ComplexSelector::ChainB,
        ComplexSelector::CochainBStar,
        ComplexSelector::CochainDelta,
        ComplexSelector::WeSub,
        ComplexSelector::VSub,
    ];

    pub fn is_homological(self) -> bool {
        self == ComplexSelector::ChainB
    }
}

impl fmt::Display for ComplexSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexSelector::ChainB => "chain",
            ComplexSelector::CochainBStar => "bstar",
            ComplexSelector::CochainDelta => "delta",
            ComplexSelector::WeSub => "we",
            ComplexSelector::VSub => "v",
        })
    }
}

impl FromStr for ComplexSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chain" | "chainb" | "b" => Ok(ComplexSelector::ChainB),
            "bstar" | "cochainbstar" | "b*" => Ok(ComplexSelector::CochainBStar),
            "delta" | "cochaindelta" => Ok(ComplexSelector::CochainDelta),
            "we" | "wesub" | "w(e)" => Ok(ComplexSelector::WeSub),
            "v" | "vsub" => Ok(ComplexSelector::VSub),
            _ => Err(Error::parse(format!(
                "unknown complex {s:?} (expected chain, bstar, delta, we or v)"
            ))),
        }
    }
}

/// Basis of `V_n` in the shape of [`Matrix::kernel_basis`] of the norm
/// evaluation, kept sparse: vector `i` has a 1 at `free[i]`, zeros at the
/// other free columns, so the free columns are coordinates.
struct VBasis {
    vectors: Vec<Vec<(usize, Scalar)>>,
    free: Vec<usize>,
}

fn norm_evaluation_matrix(alg: &GroupAlgebra, n: usize) -> Result<Matrix> {
    let len = alg.space_len(n + 1)?;
    let block = len / alg.order();
    let f = alg.field();
    let mut m = Matrix::zeros(f, alg.order(), len);
    for j in 0..len {
        m.set(j / block, j, f.one());
    }
    Ok(m)
}

fn v_basis(alg: &GroupAlgebra, n: usize) -> Result<VBasis> {
    let m = norm_evaluation_matrix(alg, n)?;
    let (reduced, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    let vectors = free
        .iter()
        .map(|&f| {
            let mut v = vec![(f, alg.field().one())];
            for (r, &pc) in pivots.iter().enumerate() {
                let x = reduced.get(r, f);
                if !x.is_zero() {
                    v.push((pc, -x));
                }
            }
            v
        })
        .collect();
    Ok(VBasis { vectors, free })
}

/// Dimension of degree `n` of the selected complex.
pub fn space_dim(alg: &GroupAlgebra, n: usize, sel: ComplexSelector) -> Result<usize> {
    match sel {
        ComplexSelector::ChainB | ComplexSelector::CochainBStar | ComplexSelector::CochainDelta => {
            alg.space_len(n + 1)
        }
        ComplexSelector::WeSub => alg.space_len(n),
        ComplexSelector::VSub => Ok(alg.space_len(n + 1)? - alg.order()),
    }
}

fn target_degree(n: usize, sel: ComplexSelector) -> Option<usize> {
    if sel.is_homological() {
        n.checked_sub(1)
    } else {
        Some(n + 1)
    }
}

fn guard_matrix(alg: &GroupAlgebra, rows: usize, cols: usize) -> Result<()> {
    let size = rows as u128 * cols as u128;
    let limit = (alg.budget() as u128) * MATRIX_ENTRY_FACTOR as u128;
    if size > limit {
        return Err(Error::size_guard("differential matrix entries", size, limit));
    }
    Ok(())
}

fn we_tuple(alg: &GroupAlgebra, index: usize, n: usize) -> Vec<usize> {
    let g = alg.group();
    let tail = alg.decode(index, n);
    let mut t = Vec::with_capacity(n + 1);
    t.push(g.inv(g.product(&tail)));
    t.extend_from_slice(&tail);
    t
}

/// `b*` of a sparse vector on `W_n`.
fn bstar_sparse(alg: &GroupAlgebra, n: usize, v: &[(usize, Scalar)]) -> BTreeMap<Vec<usize>, Scalar> {
    let mut out = BTreeMap::new();
    for (j, c) in v {
        for (s, k) in bstar_on_generator(alg.group(), &alg.decode(*j, n + 1)) {
            let e = out.entry(s).or_insert_with(|| alg.field().zero());
            *e += &c.scale_i64(k);
        }
    }
    out
}

/// Matrix of the differential out of degree `n` (columns: source basis,
/// rows: target basis). Out of `C_0` it has zero rows.
pub fn boundary_matrix(alg: &GroupAlgebra, n: usize, sel: ComplexSelector) -> Result<Matrix> {
    let (rows, cols) = matrix_shape(alg, n, sel)?;
    guard_matrix(alg, rows, cols)?;
    Ok(boundary_sparse(alg, n, sel)?.to_dense())
}

fn matrix_shape(alg: &GroupAlgebra, n: usize, sel: ComplexSelector) -> Result<(usize, usize)> {
    let cols = space_dim(alg, n, sel)?;
    let rows = match target_degree(n, sel) {
        Some(m) => space_dim(alg, m, sel)?,
        None => 0,
    };
    Ok((rows, cols))
}

/// The same differential stored sparsely. Only the source and target
/// spaces are bounded by the budget, not their product.
pub fn boundary_sparse(alg: &GroupAlgebra, n: usize, sel: ComplexSelector) -> Result<SparseMatrix> {
    let f = alg.field();
    let (rows, cols) = matrix_shape(alg, n, sel)?;
    let g = alg.group();
    let order = alg.order();
    let vb_next = match sel {
        ComplexSelector::VSub => Some((v_basis(alg, n)?, v_basis(alg, n + 1)?)),
        _ => None,
    };
    let columns: Vec<Vec<(usize, Scalar)>> = par::tabulate(cols, |j| {
        let int = |entries: Vec<(usize, i64)>| entries.into_iter().map(|(r, c)| (r, f.from_i64(c))).collect();
        match sel {
            ComplexSelector::ChainB => {
                if rows == 0 {
                    return Vec::new();
                }
                let t = alg.decode(j, n + 1);
                int((0..=n)
                    .map(|i| {
                        let face = face_map(g, i, &t).expect("face index in range");
                        (alg.encode(&face), if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect())
            }
            ComplexSelector::CochainBStar => int(bstar_on_generator(g, &alg.decode(j, n + 1))
                .into_iter()
                .map(|(s, c)| (alg.encode(&s), c))
                .collect()),
            ComplexSelector::CochainDelta => {
                let (args, value) = (alg.decode(j / order, n), j % order);
                int(delta_on_generator(g, value, &args)
                    .into_iter()
                    .map(|((a, x), c)| (alg.encode(&a) * order + x, c))
                    .collect())
            }
            ComplexSelector::WeSub => int(bstar_on_generator(g, &we_tuple(alg, j, n))
                .into_iter()
                .map(|(s, c)| (alg.encode(&s[1..]), c))
                .collect()),
            ComplexSelector::VSub => {
                let (src, dst) = vb_next.as_ref().expect("computed above");
                let image = bstar_sparse(alg, n, &src.vectors[j]);
                dst.free
                    .iter()
                    .enumerate()
                    .filter_map(|(r, &col)| {
                        image
                            .get(&alg.decode(col, n + 2))
                            .filter(|c| !c.is_zero())
                            .map(|c| (r, c.clone()))
                    })
                    .collect()
            }
        }
    });
    Ok(SparseMatrix::from_columns(f, rows, columns))
}

/// `dim ker(d_out) - rank(d_in)` in degree `n`.
pub fn betti(alg: &GroupAlgebra, n: usize, sel: ComplexSelector) -> Result<usize> {
    let dim = space_dim(alg, n, sel)?;
    let out = boundary_sparse(alg, n, sel)?.rank();
    let inc = match (sel.is_homological(), n) {
        (true, _) => boundary_sparse(alg, n + 1, sel)?.rank(),
        (false, 0) => 0,
        (false, _) => boundary_sparse(alg, n - 1, sel)?.rank(),
    };
    Ok(dim - out - inc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub degree: usize,
    pub dim: usize,
}

/// Dimensions for degrees `0..=max_degree`, with the size of every
/// differential matrix used and the milliseconds spent on it.
#[derive(Clone, Debug, Serialize)]
pub struct BettiReport {
    pub group: String,
    pub field: String,
    pub selector: String,
    pub betti: Vec<BettiEntry>,
    /// `[rows, cols]` per differential, ordered by source degree.
    pub matrix_dims: Vec<[usize; 2]>,
    pub ms: Vec<u64>,
}

pub fn betti_report(alg: &GroupAlgebra, sel: ComplexSelector, max_degree: usize) -> Result<BettiReport> {
    let sources: Vec<usize> = if sel.is_homological() {
        (0..=max_degree + 1).collect()
    } else {
        (0..=max_degree).collect()
    };
    let mut ranks = Vec::new();
    let mut dims = Vec::new();
    let mut ms = Vec::new();
    for &n in &sources {
        let start = Instant::now();
        let m = boundary_sparse(alg, n, sel)?;
        ranks.push(m.rank());
        dims.push([m.rows(), m.cols()]);
        ms.push(start.elapsed().as_millis() as u64);
    }
    let betti = (0..=max_degree)
        .map(|n| {
            let inc = if sel.is_homological() {
                ranks[n + 1]
            } else if n == 0 {
                0
            } else {
                ranks[n - 1]
            };
            Ok(BettiEntry {
                degree: n,
                dim: space_dim(alg, n, sel)? - ranks[n] - inc,
            })
        })
        .collect::<Result<_>>()?;
    Ok(BettiReport {
        group: alg.group().name().to_string(),
        field: alg.field().to_string(),
        selector: sel.to_string(),
        betti,
        matrix_dims: dims,
        ms,
    })
}

/// A (co)cycle in the ambient complex of its selector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representative {
    Chain(Chain),
    Cochain(Cochain),
    Bar(BarCochain),
}

fn to_ambient(alg: &GroupAlgebra, n: usize, sel: ComplexSelector, v: Vec<Scalar>, vb: Option<&VBasis>) -> Result<Representative> {
    let f = alg.field();
    Ok(match sel {
        ComplexSelector::ChainB => Representative::Chain(Chain::from_terms(
            f,
            n,
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (alg.decode(j, n + 1), c)),
        )?),
        ComplexSelector::CochainBStar => Representative::Cochain(Cochain::from_values(alg, n, v)?),
        ComplexSelector::CochainDelta => Representative::Bar(BarCochain::from_coefficients(alg, n, v)?),
        ComplexSelector::WeSub => {
            let mut values = vec![f.zero(); alg.space_len(n + 1)?];
            for (j, c) in v.into_iter().enumerate() {
                values[alg.encode(&we_tuple(alg, j, n))] = c;
            }
            Representative::Cochain(Cochain::from_values(alg, n, values)?)
        }
        ComplexSelector::VSub => {
            let vb = vb.expect("V basis");
            let mut values = vec![f.zero(); alg.space_len(n + 1)?];
            for (c, basis) in v.iter().zip(&vb.vectors) {
                if c.is_zero() {
                    continue;
                }
                for (j, b) in basis {
                    values[*j].add_mul(c, b);
                }
            }
            Representative::Cochain(Cochain::from_values(alg, n, values)?)
        }
    })
}

/// Cycles whose classes form a basis of the (co)homology in degree `n`:
/// kernel vectors of `d_out` that are independent modulo the image of
/// `d_in`, each reduced against the image and the earlier picks.
pub fn cocycle_representatives(alg: &GroupAlgebra, n: usize, sel: ComplexSelector) -> Result<Vec<Representative>> {
    let kernel = boundary_matrix(alg, n, sel)?.kernel_basis();
    let incoming = match (sel.is_homological(), n) {
        (true, _) => Some(boundary_matrix(alg, n + 1, sel)?),
        (false, 0) => None,
        (false, _) => Some(boundary_matrix(alg, n - 1, sel)?),
    };
    let mut basis = EchelonBasis::new(alg.field());
    if let Some(m) = incoming {
        let t = m.transpose();
        for r in 0..t.rows() {
            basis.insert(t.row(r));
        }
    }
    let vb = match sel {
        ComplexSelector::VSub => Some(v_basis(alg, n)?),
        _ => None,
    };
    let mut reps = Vec::new();
    for k in kernel {
        if let Some(rem) = basis.insert(&k) {
            reps.push(to_ambient(alg, n, sel, rem, vb.as_ref())?);
        }
    }
    Ok(reps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiIsoRow {
    pub degree: usize,
    pub roundtrip: bool,
    pub cochain_map: bool,
    pub dim_delta: usize,
    pub dim_bstar: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiIsoReport {
    pub group: String,
    pub field: String,
    pub degrees: Vec<PhiIsoRow>,
    pub pass: bool,
}

/// Checks `Psi Phi = 1`, `Phi Psi = 1` and `b* Phi = Phi delta` on random
/// cochains, and that the two cohomologies have equal dimensions, for every
/// degree up to `max_degree`. Only the finite-group case is in reach.
pub fn verify_phi_iso(alg: &GroupAlgebra, max_degree: usize, seed: u64) -> Result<PhiIsoReport> {
    let mut rows = Vec::new();
    for n in 0..=max_degree {
        let a = random_cochain(alg, n, derive_seed(seed, "phi-iso/a", n as u64))?;
        let f = psi(alg, &random_cochain(alg, n, derive_seed(seed, "phi-iso/f", n as u64))?)?;
        let roundtrip = phi(alg, &psi(alg, &a)?)? == a && psi(alg, &phi(alg, &f)?)? == f;
        let cochain_map = crate::cochain::coboundary_bstar(alg, &phi(alg, &f)?)?
            == phi(alg, &crate::cochain::coboundary_delta(alg, &f)?)?;
        let dim_delta = betti(alg, n, ComplexSelector::CochainDelta)?;
        let dim_bstar = betti(alg, n, ComplexSelector::CochainBStar)?;
        rows.push(PhiIsoRow {
            degree: n,
            roundtrip,
            cochain_map,
            dim_delta,
            dim_bstar,
            pass: roundtrip && cochain_map && dim_delta == dim_bstar,
        });
    }
    Ok(PhiIsoReport {
        group: alg.group().name().to_string(),
        field: alg.field().to_string(),
        pass: rows.iter().all(|r| r.pass),
        degrees: rows,
    })
}

/// The pairing radical in degree `p` compared with `V_p`.
#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub degree: usize,
    pub basis: Vec<Cochain>,
    pub radical_dim: usize,
    pub v_dim: usize,
    pub equals_v: bool,
}

/// `{a in W_p : <a, b> = 0 for all b in W_0}`, computed from the pairing
/// itself on generators, then compared with `V_p` as subspaces.
pub fn radical_basis(alg: &GroupAlgebra, p: usize) -> Result<RadicalReport> {
    let f = alg.field();
    let len = alg.space_len(p + 1)?;
    guard_matrix(alg, alg.order(), len)?;
    let duals: Vec<Cochain> = (0..alg.order())
        .map(|g| Cochain::generator(alg, &[g]))
        .collect::<Result<_>>()?;
    let columns = par::tabulate(len, |j| {
        let t = Cochain::generator(alg, &alg.decode(j, p + 1)).expect("tuple in range");
        duals
            .iter()
            .map(|d| pairing(alg, &t, d).expect("same algebra"))
            .collect::<Vec<_>>()
    });
    let m = Matrix::from_columns(f, alg.order(), &columns);
    let radical = m.kernel_basis();
    let v = norm_evaluation_matrix(alg, p)?.kernel_basis();
    let as_matrix = |rows: &[Vec<Scalar>]| Matrix::from_rows(f, rows.to_vec());
    let rad_rank = if radical.is_empty() { 0 } else { as_matrix(&radical)?.rank() };
    let v_rank = if v.is_empty() { 0 } else { as_matrix(&v)?.rank() };
    let joint: Vec<Vec<Scalar>> = radical.iter().chain(&v).cloned().collect();
    let joint_rank = if joint.is_empty() { 0 } else { as_matrix(&joint)?.rank() };
    let basis = radical
        .into_iter()
        .map(|values| Cochain::from_values(alg, p, values))
        .collect::<Result<Vec<_>>>()?;
    Ok(RadicalReport {
        degree: p,
        radical_dim: rad_rank,
        v_dim: v_rank,
        equals_v: rad_rank == v_rank && joint_rank == rad_rank,
        basis,
    })
}

/// `dim ker(b*: W_0 -> W_1)`; equals the number of conjugacy classes.
pub fn class_function_dim(alg: &GroupAlgebra) -> Result<usize> {
    Ok(alg.order() - boundary_sparse(alg, 0, ComplexSelector::CochainBStar)?.rank())
}

/// Tuples of length `n + 1` with product `e`, by brute force.
pub fn count_e_tuples(alg: &GroupAlgebra, n: usize) -> Result<u64> {
    let g = alg.group();
    Ok(par::count(alg.space_len(n + 1)?, |i| g.product(&alg.decode(i, n + 1)) == g.identity()))
}
