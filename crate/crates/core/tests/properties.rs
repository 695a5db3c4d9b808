//! Property tests over randomly drawn field elements, matrices, and
//! polynomials. Fields are constructed once; cases draw canonical values.

use std::sync::LazyLock;

use proptest::prelude::*;

use fscode_core::algebra::{
    kernel_basis, mat_times_col, rank, rref, ExtField, Fe, FiniteField, Mat,
};
use fscode_core::bounds::gaussian_binom;
use fscode_core::decoder::degree_bound;
use fscode_core::linpoly::LinPoly;
use fscode_core::subspace::SubspaceBasis;

static FIELDS: LazyLock<Vec<ExtField>> = LazyLock::new(|| {
    vec![
        ExtField::new(2, 1).unwrap(),
        ExtField::new(2, 9).unwrap(),
        ExtField::new(3, 4).unwrap(),
        ExtField::new(5, 3).unwrap(),
        // beyond the table limit: generic multiplication path
        ExtField::new(2, 21).unwrap(),
    ]
});

fn elem(field: &ExtField, raw: u64) -> Fe {
    field.elem(raw % field.order())
}

proptest! {
    #[test]
    fn field_axioms(fi in 0usize..5, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = &FIELDS[fi];
        let (a, b, c) = (elem(f, a), elem(f, b), elem(f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), f.one());
        }
    }

    #[test]
    fn frobenius_is_homomorphism(fi in 0usize..5, a in any::<u64>(), b in any::<u64>(), i in -30i64..30) {
        let f = &FIELDS[fi];
        let (a, b) = (elem(f, a), elem(f, b));
        prop_assert_eq!(f.frobenius(f.mul(a, b), i), f.mul(f.frobenius(a, i), f.frobenius(b, i)));
        prop_assert_eq!(f.frobenius(f.add(a, b), i), f.add(f.frobenius(a, i), f.frobenius(b, i)));
        prop_assert_eq!(f.frobenius(a, f.m() as i64), a);
        prop_assert_eq!(f.frobenius(f.frobenius(a, i), -i), a);
    }

    #[test]
    fn expansion_is_linear_and_injective(fi in 0usize..5, a in any::<u64>(), b in any::<u64>()) {
        let f = &FIELDS[fi];
        let (a, b) = (elem(f, a), elem(f, b));
        let base = f.base_field();
        let ea = f.expand_to_base(&[a]);
        let eb = f.expand_to_base(&[b]);
        let esum = f.expand_to_base(&[f.add(a, b)]);
        for i in 0..f.m() {
            prop_assert_eq!(esum[i], base.add(ea[i], eb[i]));
        }
        if a != b {
            prop_assert_ne!(ea, eb);
        }
    }

    #[test]
    fn rref_rank_kernel_relations(
        fi in 0usize..4,
        rows in 1usize..6,
        cols in 1usize..6,
        seed in any::<u64>(),
    ) {
        let f = &FIELDS[fi];
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state
        };
        let mut m = Mat::zeros(f, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, elem(f, next()));
            }
        }
        let out = rref(f, &m);
        prop_assert_eq!(out.rank, rank(f, &m.transpose(f)));
        // idempotence: RREF of an RREF is itself
        let again = rref(f, &out.mat);
        prop_assert_eq!(&again.mat, &out.mat);
        let k = kernel_basis(f, &m);
        prop_assert_eq!(out.rank + k.rows(), cols);
        for i in 0..k.rows() {
            let v = k.row(i).to_vec();
            prop_assert!(mat_times_col(f, &m, &v).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn composition_associates_and_matches_eval(
        seed in any::<u64>(),
        da in 0usize..4,
        db in 0usize..4,
        x in any::<u64>(),
    ) {
        let f = &FIELDS[1]; // F_512
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state
        };
        let mk = |next: &mut dyn FnMut() -> u64, d: usize| {
            LinPoly::new(f, (0..=d).map(|_| elem(f, next())).collect())
        };
        let a = mk(&mut next, da);
        let b = mk(&mut next, db);
        let c = mk(&mut next, 2);
        prop_assert_eq!(
            a.compose(f, &b).compose(f, &c),
            a.compose(f, &b.compose(f, &c))
        );
        let x = elem(f, x);
        prop_assert_eq!(a.compose(f, &b).eval(f, x), a.eval(f, b.eval(f, x)));
    }

    #[test]
    fn subspace_metric_axioms(
        seeds in prop::array::uniform3(any::<u64>()),
        dims in prop::array::uniform3(0usize..4),
    ) {
        // random subspaces of F_2^6
        let f = &FIELDS[0];
        let mk = |seed: u64, nrows: usize| {
            let mut state = seed;
            let rows: Vec<Vec<Fe>> = (0..nrows)
                .map(|_| {
                    (0..6)
                        .map(|_| {
                            state = state
                                .wrapping_mul(6364136223846793005)
                                .wrapping_add(1442695040888963407);
                            f.elem(state >> 63)
                        })
                        .collect()
                })
                .collect();
            SubspaceBasis::canonicalize(f, &rows, 6)
        };
        let u = mk(seeds[0], dims[0]);
        let v = mk(seeds[1], dims[1]);
        let w = mk(seeds[2], dims[2]);
        let duv = u.distance(&v).unwrap();
        prop_assert_eq!(duv, v.distance(&u).unwrap());
        prop_assert_eq!(duv == 0, u == v);
        prop_assert!(duv <= u.distance(&w).unwrap() + w.distance(&v).unwrap());
        // modular law through the sum-dimension identity
        let inter = u.intersection_dim(&v).unwrap();
        prop_assert_eq!(u.sum_dim(&v).unwrap() + inter, u.dim() + v.dim());
    }

    #[test]
    fn gaussian_binom_identities(n in 1u64..10, l in 0u64..10, qi in 0usize..3) {
        let q = [2u64, 3, 7][qi];
        prop_assume!(l <= n);
        let b = gaussian_binom(n, l, q).unwrap();
        prop_assert_eq!(&b, &gaussian_binom(n, n - l, q).unwrap());
        if l >= 1 && l < n {
            let pascal = gaussian_binom(n - 1, l - 1, q).unwrap()
                + num_bigint::BigUint::from(q).pow(l as u32) * gaussian_binom(n - 1, l, q).unwrap();
            prop_assert_eq!(b, pascal);
        }
    }

    #[test]
    fn degree_bound_leaves_surplus(
        n_r in 0usize..12,
        h in 1usize..6,
        s_off in 0usize..6,
        k in 1usize..8,
        mu in 1usize..4,
    ) {
        let s = 1 + s_off.min(h - 1);
        let d = degree_bound(n_r, h, s, k, mu);
        // unknowns - equations >= mu whenever the layout is realizable
        if d >= k {
            let unknowns = d * (s + 1) - s * (k - 1);
            prop_assert!(unknowns >= n_r * (h - s + 1) + mu);
        }
    }
}
