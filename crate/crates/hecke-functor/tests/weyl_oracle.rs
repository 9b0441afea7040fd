use hecke_functor::rootdata::{build_classical, Family, Isogeny};
use hecke_functor::weyl::oracle::bfs_lengths;
use hecke_functor::weyl::WeylGroup;

fn group(f: Family, n: usize, iso: Isogeny) -> WeylGroup {
    WeylGroup::new(&build_classical(f, n, iso).unwrap()).unwrap()
}

#[test]
fn affine_length_matches_breadth_first_search() {
    for (f, n) in [(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::C, 2)] {
        for iso in [Isogeny::Sc, Isogeny::Ad] {
            let g = group(f, n, iso);
            let found = bfs_lengths(&g, 2, 40).unwrap_or_else(|| panic!("{f:?}{n} {iso:?}: search did not cover the box"));
            for (e, d) in &found {
                assert_eq!(g.ext_length(e), *d, "{f:?}{n} {iso:?}: {e:?}");
            }
        }
    }
}

#[test]
fn finite_orders_and_longest_elements() {
    let cases = [
        (Family::A, 1, 2, 1),
        (Family::A, 2, 6, 3),
        (Family::A, 3, 24, 6),
        (Family::B, 2, 8, 4),
        (Family::C, 3, 48, 9),
        (Family::D, 4, 192, 12),
    ];
    for (f, n, order, npos) in cases {
        let g = group(f, n, Isogeny::Sc);
        assert_eq!(g.order(), order, "{f:?}{n}");
        assert_eq!(g.length(g.longest()), npos, "{f:?}{n}");
        for w in 0..g.order() as u32 {
            assert_eq!(g.length(g.inv(w)), g.length(w));
            assert_eq!(g.from_matrix(g.matrix(w)), Some(w));
            let mut word: Vec<usize> = g.word(w).iter().map(|&i| i as usize).collect();
            assert_eq!(g.from_word(&word).unwrap(), w);
            word.reverse();
            assert_eq!(g.from_word(&word).unwrap(), g.inv(w));
        }
    }
}

#[test]
fn simple_reflections_change_length_by_one() {
    let g = group(Family::C, 3, Isogeny::Ad);
    for w in 0..g.order() as u32 {
        for i in 0..3 {
            let l = g.length(w) as i64;
            let r = g.length(g.mul_simple_right(w, i)) as i64;
            let s = g.length(g.mul_simple_left(i, w)) as i64;
            assert_eq!((l - r).abs(), 1);
            assert_eq!((l - s).abs(), 1);
        }
    }
}
