use gf2bell::levin::{
    apply_g, hardcore_bit, is_involution, permutation_matrix, sibling_stats, truth_table, BitString,
    LengthPreservingF,
};
use gf2bell::Caps;
use proptest::prelude::*;

const MAPS: [LengthPreservingF; 2] = [LengthPreservingF::Identity, LengthPreservingF::BitwiseNot];

#[test]
fn g_is_an_involution_up_to_width_6() {
    for f in &MAPS {
        for n in 1..=6u32 {
            for a in 0..1u64 << n {
                for x in 0..1u64 << n {
                    let (a, x) = (BitString::new(a, n).unwrap(), BitString::new(x, n).unwrap());
                    let (a1, x1) = apply_g(a, x, f).unwrap();
                    assert_eq!(apply_g(a1, x1, f).unwrap(), (a, x), "{f:?} n={n}");
                }
            }
        }
    }
}

#[test]
fn g_tables_are_bijections_with_one_sibling() {
    let caps = Caps::default();
    for f in &MAPS {
        for n in 1..=6 {
            let t = truth_table(f, n, &caps).unwrap();
            assert!(t.is_bijective() && t.preserves_first());
            let s = sibling_stats(&t);
            assert_eq!((s.mean_ratio(), s.max_preimage_count), ((1, 1), 1));
        }
    }
}

#[test]
fn permutation_matrices_are_orthogonal_involutions() {
    let caps = Caps::default();
    for f in &MAPS {
        for n in 1..=3 {
            let m = permutation_matrix(&truth_table(f, n, &caps).unwrap()).unwrap();
            assert!(m.is_permutation() && m.is_orthogonal() && is_involution(&m));
        }
    }
}

#[test]
fn hardcore_bit_is_balanced_for_nonzero_a() {
    for n in 1..=6u32 {
        for a in 1..1u64 << n {
            let a = BitString::new(a, n).unwrap();
            let ones = (0..1u64 << n)
                .filter(|&x| hardcore_bit(a, BitString::new(x, n).unwrap()).unwrap())
                .count();
            assert_eq!(ones, 1 << (n - 1));
        }
    }
}

proptest! {
    #[test]
    fn g_preserves_lengths(n in 1u32..=16, a in any::<u64>(), x in any::<u64>()) {
        let mask = (1u64 << n) - 1;
        let (a, x) = (BitString::new(a & mask, n).unwrap(), BitString::new(x & mask, n).unwrap());
        let (a1, x1) = apply_g(a, x, &LengthPreservingF::BitwiseNot).unwrap();
        prop_assert_eq!(a1, a);
        prop_assert_eq!(x1.len(), n);
    }
}
