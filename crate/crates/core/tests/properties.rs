use proptest::prelude::*;

use hochschild_core::chain::{boundary, boundary_tot, coproduct, counit_left};
use hochschild_core::cochain::{coboundary_bstar, coboundary_delta, phi, psi, unit};
use hochschild_core::homology::{betti, boundary_matrix, boundary_sparse, ComplexSelector};
use hochschild_core::io::{cochain_from_json, cochain_to_json};
use hochschild_core::products::{cup_conv, homotopy_defect, pairing};
use hochschild_core::random::random_cochain;
use hochschild_core::sparse::SparseMatrix;
use hochschild_core::tqft::{hom_count_oracle, CobordismWord, FrobeniusData, Move, State};
use hochschild_core::{BarCochain, Chain, FieldSpec, FiniteGroup, GroupAlgebra, Matrix};

const GROUPS: [&str; 6] = ["C2", "C3", "C4", "C2xC2", "S3", "D4"];

fn algebra() -> impl Strategy<Value = GroupAlgebra> {
    (0..GROUPS.len(), 0..3usize)
        .prop_map(|(g, f)| GroupAlgebra::new(FiniteGroup::parse(GROUPS[g]).unwrap(), FieldSpec::SUITE[f]))
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::Prime(2)), Just(FieldSpec::Prime(3)), Just(FieldSpec::Prime(7))]
}

fn sign(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(f in field(), a in any::<i64>(), b in any::<i64>(), c in -1000i64..1000) {
        let (x, y, z) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !z.is_zero() {
            prop_assert_eq!(&(&x * &z) * &z.try_inv().unwrap(), x.clone());
        }
        let mut acc = x.clone();
        acc.add_mul(&y, &z);
        prop_assert_eq!(acc, &x + &(&y * &z));
    }

    #[test]
    fn rational_literals_round_trip(n in any::<i64>(), d in 1i64..1_000_000) {
        let q = FieldSpec::Rationals;
        let s = q.parse_scalar(&format!("{n}/{d}")).unwrap();
        prop_assert_eq!(q.parse_scalar(&s.to_string()).unwrap(), s.clone());
        prop_assert_eq!(&s * &q.from_i64(d), q.from_i64(n));
    }

    #[test]
    fn group_laws(a in algebra(), x in 0usize..8, y in 0usize..8) {
        let g = a.group();
        let (x, y) = (x % g.order(), y % g.order());
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
        prop_assert_eq!(g.inv(g.mul(x, y)), g.mul(g.inv(y), g.inv(x)));
    }

    #[test]
    fn mixed_radix_round_trip(a in algebra(), i in any::<usize>(), slots in 0usize..5) {
        let len = a.space_len(slots).unwrap();
        let i = i % len;
        prop_assert_eq!(a.encode(&a.decode(i, slots)), i);
    }

    #[test]
    fn boundary_squared(a in algebra(), seed in any::<u64>(), n in 2usize..5) {
        let mut rng = hochschild_core::random::SplitMix64::new(seed);
        let s = Chain::basis(a.field(), rng.tuple(a.order(), n + 1));
        prop_assert!(boundary(a.group(), &boundary(a.group(), &s)).is_zero());
    }

    #[test]
    fn coproduct_is_chain_map(a in algebra(), seed in any::<u64>(), n in 0usize..4) {
        let mut rng = hochschild_core::random::SplitMix64::new(seed);
        let g = a.group();
        let s = Chain::basis(a.field(), rng.tuple(a.order(), n + 1));
        let t = coproduct(g, &s);
        prop_assert_eq!(coproduct(g, &boundary(g, &s)), boundary_tot(g, &t));
        prop_assert_eq!(counit_left(g, &t), s);
    }

    #[test]
    fn coboundaries_square_to_zero(a in algebra(), seed in any::<u64>(), n in 0usize..3) {
        let x = random_cochain(&a, n, seed).unwrap();
        prop_assert!(coboundary_bstar(&a, &coboundary_bstar(&a, &x).unwrap()).unwrap().is_zero());
        let f = BarCochain::from_coefficients(&a, n, x.values().to_vec()).unwrap();
        prop_assert!(coboundary_delta(&a, &coboundary_delta(&a, &f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn phi_psi_inverse_chain_maps(a in algebra(), seed in any::<u64>(), n in 0usize..3) {
        let x = random_cochain(&a, n, seed).unwrap();
        let f = psi(&a, &x).unwrap();
        prop_assert_eq!(phi(&a, &f).unwrap(), x.clone());
        prop_assert_eq!(
            coboundary_delta(&a, &f).unwrap(),
            psi(&a, &coboundary_bstar(&a, &x).unwrap()).unwrap()
        );
    }

    #[test]
    fn product_laws(a in algebra(), seed in any::<u64>(), p in 0usize..3, q in 0usize..2, r in 0usize..2) {
        let x = random_cochain(&a, p, seed).unwrap();
        let y = random_cochain(&a, q, seed ^ 1).unwrap();
        let z = random_cochain(&a, r, seed ^ 2).unwrap();
        let u = unit(&a);
        prop_assert_eq!(cup_conv(&a, &u, &x).unwrap(), x.clone());
        // associativity
        let xy_z = cup_conv(&a, &cup_conv(&a, &x, &y).unwrap(), &z).unwrap();
        prop_assert_eq!(xy_z, cup_conv(&a, &x, &cup_conv(&a, &y, &z).unwrap()).unwrap());
        // Leibniz
        let lhs = coboundary_bstar(&a, &cup_conv(&a, &x, &y).unwrap()).unwrap();
        let first = cup_conv(&a, &coboundary_bstar(&a, &x).unwrap(), &y).unwrap();
        let second = cup_conv(&a, &x, &coboundary_bstar(&a, &y).unwrap()).unwrap().scale(&a.field().from_i64(sign(p)));
        prop_assert_eq!(lhs, first.add(&second).unwrap());
        // Frobenius and symmetry
        prop_assert_eq!(
            pairing(&a, &cup_conv(&a, &x, &y).unwrap(), &z).unwrap(),
            pairing(&a, &x, &cup_conv(&a, &y, &z).unwrap()).unwrap()
        );
        prop_assert_eq!(pairing(&a, &x, &y).unwrap(), pairing(&a, &y, &x).unwrap());
    }

    #[test]
    fn homotopy_commutativity(a in algebra(), seed in any::<u64>(), p in 1usize..3, q in 1usize..3) {
        let x = random_cochain(&a, p, seed).unwrap();
        let y = random_cochain(&a, q, seed.wrapping_add(1)).unwrap();
        prop_assert!(homotopy_defect(&a, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn cochain_json_round_trip(a in algebra(), seed in any::<u64>(), n in 0usize..3) {
        let x = random_cochain(&a, n, seed).unwrap();
        prop_assert_eq!(cochain_from_json(&a, &cochain_to_json(&a, &x)).unwrap(), x);
    }

    #[test]
    fn sparse_rank_matches_dense(f in field(), rows in 1usize..7, cols in 1usize..7, entries in prop::collection::vec(-2i64..3, 49)) {
        let grid: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| entries[r * 7 + c]).collect()).collect();
        let dense = Matrix::from_i64_rows(f, &grid);
        let columns = (0..cols).map(|c| (0..rows).map(|r| (r, dense.get(r, c).clone())).collect()).collect();
        let sparse = SparseMatrix::from_columns(f, rows, columns);
        prop_assert_eq!(sparse.rank(), dense.rank());
        prop_assert_eq!(sparse.to_dense(), dense);
    }

    #[test]
    fn cobordism_words_round_trip(moves in prop::collection::vec((0usize..6, 0usize..4), 0..12)) {
        let moves: Vec<Move> = moves
            .into_iter()
            .map(|(k, i)| match k {
                0 => Move::Unit(i),
                1 => Move::Counit(i),
                2 => Move::Mul(i),
                3 => Move::Comul(i),
                4 => Move::Swap(i),
                _ => Move::Id,
            })
            .collect();
        let w = CobordismWord::new(moves);
        prop_assert_eq!(w.to_string().parse::<CobordismWord>().unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chain_and_dual_dims_agree(g in 0usize..4, f in 0usize..3, n in 0usize..3) {
        let a = GroupAlgebra::new(FiniteGroup::parse(GROUPS[g]).unwrap(), FieldSpec::SUITE[f]);
        prop_assert_eq!(
            betti(&a, n, ComplexSelector::ChainB).unwrap(),
            betti(&a, n, ComplexSelector::CochainBStar).unwrap()
        );
        prop_assert_eq!(
            betti(&a, n, ComplexSelector::CochainDelta).unwrap(),
            betti(&a, n, ComplexSelector::CochainBStar).unwrap()
        );
    }

    #[test]
    fn sparse_and_dense_differentials_agree(g in 0usize..5, f in 0usize..3, n in 0usize..2, s in 0usize..5) {
        let a = GroupAlgebra::new(FiniteGroup::parse(GROUPS[g]).unwrap(), FieldSpec::SUITE[f]);
        let sel = ComplexSelector::ALL[s];
        let dense = boundary_matrix(&a, n, sel).unwrap();
        let sparse = boundary_sparse(&a, n, sel).unwrap();
        prop_assert_eq!(sparse.to_dense(), dense.clone());
        prop_assert_eq!(sparse.rank(), dense.rank());
    }

    /// Any connected word with g comultiplications and g multiplications is a
    /// genus-g surface, whatever the order and positions.
    #[test]
    fn surface_value_independent_of_word(g in 0usize..5, genus in 0usize..4, choices in prop::collection::vec(any::<u32>(), 32)) {
        let a = GroupAlgebra::new(FiniteGroup::parse(GROUPS[g]).unwrap(), FieldSpec::Rationals);
        let data = FrobeniusData::new(&a).unwrap();
        let mut moves = vec![Move::Unit(0)];
        let (mut k, mut comuls, mut muls) = (1usize, 0, 0);
        let mut next = choices.into_iter().cycle();
        while muls < genus {
            let c = next.next().unwrap() as usize;
            if k >= 2 && c % 5 == 0 {
                moves.push(Move::Swap(c / 5 % (k - 1)));
            } else if comuls < genus && (k == 1 || c % 2 == 0) {
                moves.push(Move::Comul(c / 2 % k));
                comuls += 1;
                k += 1;
            } else {
                moves.push(Move::Mul(c / 2 % (k - 1)));
                muls += 1;
                k -= 1;
            }
        }
        moves.push(Move::Counit(0));
        let word = CobordismWord::new(moves);
        let out = data.evaluate(&word, &State::scalar(a.field().one())).unwrap();
        prop_assert_eq!(out.as_scalar().unwrap(), &data.surface_invariant(genus));
        // |Hom(pi_1 S_g, G)| = Z(S_g) |G|^g
        let homs = hom_count_oracle(&a, genus.min(2)).unwrap() as i64;
        let z = data.surface_invariant(genus.min(2)).scale_i64((a.order() as i64).pow(genus.min(2) as u32));
        prop_assert_eq!(z, a.field().from_i64(homs));
    }
}
