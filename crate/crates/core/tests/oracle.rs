use sl3webs::reptheory::{evaluate_script, random_closed_script, render_script, script_to_web};
use sl3webs::skein::{bracket, bracket_randomized};

#[test]
fn tensor_contraction_matches_skein_reduction() {
    for seed in 0..120 {
        let s = random_closed_script(seed, 8);
        let expected = evaluate_script(&s).unwrap().scalar().unwrap();
        let w = script_to_web(&s).unwrap();
        assert_eq!(w.vertex_count(), s.vertex_count());
        assert_eq!(
            bracket(&w).unwrap(),
            expected,
            "seed {seed}\n{}",
            render_script(&s)
        );
        assert_eq!(bracket_randomized(&w, seed).unwrap(), expected);
    }
}

#[test]
fn corpus_reaches_eight_vertices() {
    let mut h = [0usize; 9];
    for seed in 0..120 {
        h[random_closed_script(seed, 8).vertex_count()] += 1;
    }
    assert!(h[8] >= 10 && h[6] >= 10, "{h:?}");
}
