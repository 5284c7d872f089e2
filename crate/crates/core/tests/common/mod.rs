#![allow(dead_code)]

use contest_core::{ChoiceSet, ContestSpec, ImpactFunction, Segment, Valuation};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(x: f64) -> Valuation {
    Valuation::new(x).unwrap()
}

/// 1–4 disjoint segments (some degenerate to points) inside `[0, 0.6 v]`.
pub fn random_choice_set<R: Rng>(rng: &mut R, v: f64) -> ChoiceSet {
    loop {
        let k = rng.gen_range(1..=4);
        let mut cuts: Vec<f64> = (0..2 * k).map(|_| rng.gen_range(0.0..0.6 * v)).collect();
        cuts.sort_by(f64::total_cmp);
        let segments: Vec<Segment> = cuts
            .chunks(2)
            .map(|c| {
                if rng.gen_bool(0.3) {
                    Segment::point(c[0]).unwrap()
                } else {
                    Segment::new(c[0], c[1]).unwrap()
                }
            })
            .collect();
        if let Ok(set) = ChoiceSet::new(segments) {
            return set;
        }
    }
}

pub fn random_symmetric_spec<R: Rng>(rng: &mut R) -> ContestSpec {
    let val = rng.gen_range(0.5..=5.0);
    let r = 1.0 - rng.gen_range(0.0..1.0f64);
    let a = rng.gen_range(0.5..5.0);
    let f = ImpactFunction::scaled_power(r, a).unwrap();
    ContestSpec::symmetric(v(val), f, random_choice_set(rng, val))
}
