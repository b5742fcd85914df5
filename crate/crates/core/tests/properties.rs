use finfish_core::grammar::{build, decompose, FishTerm};
use finfish_core::series::{rat, MSeries, Mono, Poly};
use finfish_core::surface::{FishComplex, Letter, SideRef};
use finfish_core::trees::TernaryTree;
use proptest::prelude::*;

/// Decodes a choice stream into a valid term. `C2`/`C3` positions are drawn
/// among the fin edges of the right kind; without any, the node falls back
/// to `C1`.
fn decode(choices: &mut std::slice::Iter<'_, u32>, depth: u32) -> FishTerm {
    let c = choices.next().copied().unwrap_or(0);
    if depth == 0 {
        return FishTerm::A;
    }
    match c % 6 {
        0 => FishTerm::A,
        1 => FishTerm::b1(decode(choices, depth - 1)),
        2 => FishTerm::b2(decode(choices, depth - 1)),
        3 => FishTerm::c1(decode(choices, depth - 1), decode(choices, depth - 1)),
        k => {
            let t1 = decode(choices, depth - 1);
            let t2 = decode(choices, depth - 1);
            let want = if k == 4 { Letter::R } else { Letter::L };
            let fin = t1.info().expect("valid").fin_word;
            let letters = fin.letters();
            let spots: Vec<usize> = (1..letters.len()).filter(|&p| letters[p - 1] == want).collect();
            if spots.is_empty() {
                return FishTerm::c1(t1, t2);
            }
            let p = spots[choices.next().copied().unwrap_or(0) as usize % spots.len()];
            if k == 4 {
                FishTerm::c2(t1, p, t2)
            } else {
                FishTerm::c3(t1, p, t2)
            }
        }
    }
}

fn term() -> impl Strategy<Value = FishTerm> {
    (prop::collection::vec(any::<u32>(), 1..48), 1u32..6).prop_map(|(v, d)| decode(&mut v.iter(), d))
}

fn relabel(c: &FishComplex, perm: &[usize]) -> FishComplex {
    let g: Vec<_> = c
        .gluings()
        .into_iter()
        .map(|(x, y)| (SideRef::new(perm[x.cell], x.side), SideRef::new(perm[y.cell], y.side)))
        .collect();
    FishComplex::from_gluings(c.cell_count(), &g).expect("relabeling keeps validity")
}

fn small_tree() -> impl Strategy<Value = TernaryTree> {
    let leaf = Just(TernaryTree::Empty);
    leaf.prop_recursive(5, 24, 3, |inner| {
        (inner.clone(), inner.clone(), inner).prop_map(|(l, m, r)| TernaryTree::node(l, m, r))
    })
}

fn small_series() -> impl Strategy<Value = MSeries> {
    prop::collection::vec((0usize..4, 0u16..2, 0u16..2, -3i64..4), 0..6).prop_map(|terms| {
        let mut coeffs = vec![Poly::zero(); 4];
        for (k, y, u, c) in terms {
            coeffs[k].add_term(Mono::new(y, 0, 0, u), rat(c));
        }
        MSeries::from_coeffs(coeffs, 3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn term_text_round_trip(t in term()) {
        prop_assert_eq!(FishTerm::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn decompose_inverts_build(t in term()) {
        let c = build(&t).unwrap();
        prop_assert_eq!(decompose(&c).unwrap(), t);
    }

    #[test]
    fn predicted_stats_are_realized(t in term()) {
        let info = t.info().unwrap();
        let s = build(&t).unwrap().stats().unwrap();
        prop_assert_eq!(
            (s.size, s.tails, s.lsize, s.rsize, s.fin, s.area),
            (info.stats.size, info.stats.tails, info.stats.lsize, info.stats.rsize, info.stats.fin, info.area)
        );
        prop_assert_eq!(s.branch_points + 1, s.tails);
    }

    #[test]
    fn canonical_code_ignores_labels(t in term(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let c = build(&t).unwrap();
        let mut perm: Vec<usize> = (0..c.cell_count()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let code = c.canonical_code();
        prop_assert_eq!(relabel(&c, &perm).canonical_code(), code.clone());
        let parsed = FishComplex::from_canonical_code(&code).unwrap();
        prop_assert_eq!(parsed.canonical_code(), code);
    }

    #[test]
    fn tree_text_round_trip(t in small_tree()) {
        prop_assert_eq!(TernaryTree::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn positivity_is_monotone_in_root(t in small_tree(), j in -1i64..4) {
        if t.is_j_positive(j) {
            prop_assert!(t.is_j_positive(j + 1));
        }
    }

    #[test]
    fn series_ring_laws(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn division_inverts_multiplication(a in small_series(), b in small_series(), k in 1i64..5) {
        let unit = &b.shift_t(1) + &MSeries::int(k, 3);
        prop_assert_eq!((&a * &unit).div(&unit).unwrap(), a);
    }
}
