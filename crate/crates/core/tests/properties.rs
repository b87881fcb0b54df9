use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::select;

use sl3webs::coloring::{boundary_tally, count_colorings};
use sl3webs::enumeration::enumerate_ne;
use sl3webs::foam::{parse_foam, random_balanced_prefoam, random_prefoam, render_foam};
use sl3webs::reptheory::{parse_script, random_closed_script, render_script, script_to_web};
use sl3webs::skein::{bracket, bracket_randomized};
use sl3webs::web::io::{parse_web, render_web};
use sl3webs::{trace_close, SignSequence, Web};

fn boundaries() -> impl Strategy<Value = SignSequence> {
    select(SignSequence::admissible_up_to(6))
}

/// An admissible boundary with two indices into its basis.
fn basis_pair() -> impl Strategy<Value = (SignSequence, usize, usize)> {
    (boundaries(), any::<usize>(), any::<usize>())
}

fn pick(eps: &SignSequence, i: usize) -> Web {
    let b = enumerate_ne(eps).unwrap();
    b.webs[i % b.len()].clone()
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut x = seed | 1;
    for i in (1..n).rev() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        p.swap(i, (x % (i as u64 + 1)) as usize);
    }
    p
}

fn relabel(w: &Web, seed: u64) -> Web {
    let rot: Vec<usize> = (0..w.vertex_count())
        .map(|v| (seed as usize + v) % 3)
        .collect();
    w.relabeled(
        &shuffled(w.vertex_count(), seed),
        &shuffled(w.edge_count(), seed.rotate_left(7)),
        &rot,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_euler_characteristic((eps, i, j) in basis_pair()) {
        let (w1, w2) = (pick(&eps, i), pick(&eps, j));
        let c = trace_close(&w1, &w2).unwrap();
        prop_assert_eq!(
            c.euler_characteristic(),
            w1.euler_characteristic() + w2.euler_characteristic() - eps.len() as i64
        );
    }

    #[test]
    fn conjugation_is_an_involution((eps, i, _j) in basis_pair()) {
        let w = pick(&eps, i);
        prop_assert!(w.conjugate().conjugate().is_isomorphic(&w));
    }

    #[test]
    fn isomorphism_is_an_equivalence(seed in 0u64..500, a in any::<u64>(), b in any::<u64>()) {
        let w = script_to_web(&random_closed_script(seed, 8)).unwrap();
        let (x, y) = (relabel(&w, a), relabel(&w, b));
        prop_assert!(w.is_isomorphic(&w));
        prop_assert!(x.is_isomorphic(&w) && w.is_isomorphic(&x));
        prop_assert!(x.is_isomorphic(&y) && y.is_isomorphic(&w));
        prop_assert_eq!(bracket(&x).unwrap(), bracket(&w).unwrap());
    }

    #[test]
    fn bracket_is_symmetric_and_positive(seed in 0u64..1000) {
        let w = script_to_web(&random_closed_script(seed, 10)).unwrap();
        let v = bracket(&w).unwrap();
        prop_assert!(v.is_bar_invariant());
        prop_assert!(v.has_nonnegative_coefficients());
        prop_assert_eq!(v.eval_at_one(), count_colorings(&w).into());
    }

    #[test]
    fn bracket_confluence((eps, i, j) in basis_pair(), seed in any::<u64>()) {
        let w = trace_close(&pick(&eps, i), &pick(&eps, j)).unwrap();
        let v = bracket(&w).unwrap();
        for k in 0..5 {
            prop_assert_eq!(&bracket_randomized(&w, seed.wrapping_add(k)).unwrap(), &v);
        }
    }

    #[test]
    fn bracket_multiplicative(s1 in 0u64..400, s2 in 0u64..400) {
        let a = script_to_web(&random_closed_script(s1, 6)).unwrap();
        let b = script_to_web(&random_closed_script(s2, 6)).unwrap();
        prop_assert_eq!(bracket(&a.disjoint_union(&b)).unwrap(), bracket(&a).unwrap() * bracket(&b).unwrap());
    }

    #[test]
    fn closure_colorings_factor_through_boundary((eps, i, j) in basis_pair()) {
        let (w1, w2) = (pick(&eps, i), pick(&eps, j));
        let (t1, t2) = (boundary_tally(&w1).unwrap(), boundary_tally(&w2).unwrap());
        let through: u128 = t1.iter().filter_map(|(c, n)| t2.get(c).map(|m| n * m)).sum();
        prop_assert_eq!(count_colorings(&trace_close(&w1, &w2).unwrap()), through);
    }

    #[test]
    fn file_formats_round_trip(seed in 0u64..1000) {
        let s = random_closed_script(seed, 8);
        prop_assert_eq!(&parse_script(&render_script(&s)).unwrap(), &s);
        let w = script_to_web(&s).unwrap();
        prop_assert_eq!(&parse_web(&render_web(&w)).unwrap(), &w);
        let f = random_prefoam(seed, 2, 2);
        prop_assert_eq!(parse_foam(&render_foam(&f)).unwrap(), f);
    }

    #[test]
    fn foam_degree_and_confluence(seed in any::<u64>(), circles in 0usize..4) {
        for f in [random_prefoam(seed, circles, 2), random_balanced_prefoam(seed, circles, 1)] {
            let v = f.evaluate().unwrap();
            if f.degree() != 0 {
                prop_assert!(v.is_zero());
            }
            for k in 0..5 {
                prop_assert_eq!(&f.evaluate_randomized(seed.wrapping_add(k)).unwrap(), &v);
            }
        }
    }
}
