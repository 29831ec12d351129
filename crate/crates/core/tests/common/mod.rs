#![allow(dead_code)]

use eschenburg::action::is_almost_free;
use eschenburg::space::is_orbifold;
use eschenburg::{ActionSpec, Int, WeightPair};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Trace-balanced pair with entries in `[-r, r]`.
pub fn balanced(rng: &mut ChaCha8Rng, r: Int) -> ([Int; 3], [Int; 3]) {
    loop {
        let p = [0; 3].map(|_| rng.gen_range(-r..=r));
        let q1 = rng.gen_range(-r..=r);
        let q2 = rng.gen_range(-r..=r);
        let q3 = p.iter().sum::<Int>() - q1 - q2;
        if q3.abs() <= r {
            return (p, [q1, q2, q3]);
        }
    }
}

pub fn orbifold(rng: &mut ChaCha8Rng, r: Int) -> WeightPair {
    loop {
        let (p, q) = balanced(rng, r);
        let wp = WeightPair::new(p, q).unwrap();
        if is_orbifold(&wp) {
            return wp;
        }
    }
}

/// An orbifold with an almost free action, entries in `[-r, r]`.
pub fn space_and_action(rng: &mut ChaCha8Rng, r: Int) -> (WeightPair, ActionSpec) {
    loop {
        let wp = orbifold(rng, r);
        let (a, b) = balanced(rng, r);
        let act = ActionSpec::new(a, b).unwrap();
        if is_almost_free(&wp, &act) {
            return (wp, act);
        }
    }
}

pub fn wp(p: [Int; 3], q: [Int; 3]) -> WeightPair {
    WeightPair::new(p, q).unwrap()
}

pub fn act(a: [Int; 3], b: [Int; 3]) -> ActionSpec {
    ActionSpec::new(a, b).unwrap()
}
