mod common;

use lincomp::mvpoly::{self, Verdict};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// On tiny binary networks, an `F_2` solution found by exhaustive search
    /// implies a solvable verdict, and an unsolvable verdict means the search
    /// finds nothing.
    #[test]
    fn verdict_agrees_with_binary_search(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let s = r.gen_range(1..=3);
        let relays = r.gen_range(0..=(5 - s) / 2);
        let net = random_network(&mut r, 2, s, relays, 5);
        let l = r.gen_range(1..=s.min(2));
        let t = random_target(&mut r, 2, l, s);
        prop_assume!(code_slots(&net, l).len() <= 16);
        let verdict = mvpoly::solvable(&net, &t).unwrap();
        let (_, found) = search_prime_field_codes(&net, &t, &[]);
        if found {
            prop_assert_eq!(verdict, Verdict::Solvable);
        }
        if verdict == Verdict::Unsolvable {
            prop_assert!(!found);
        }
    }
}

#[test]
fn n1_verdicts_over_f2_and_f3() {
    for q in [2, 3] {
        let net = lincomp::Network::parse(&fixture("n1.json").replace("\"q\": 2", &format!("\"q\": {q}"))).unwrap();
        assert_eq!(mvpoly::solvable(&net, &t1(q as u64)).unwrap(), Verdict::Unsolvable);
    }
}
