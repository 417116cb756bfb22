//! Built-in links as DSL text, and a seeded generator of random link words.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::tangle::{Generator, TangleWord};

pub const UNKNOT: &str = "cup ; cap";
pub const HOPF: &str =
    "cup ; (id(1) * cup * id(1)) ; (id(2) * x+) ; (id(2) * x+) ; (id(1) * cap * id(1)) ; cap";
pub const TREFOIL: &str = "cup ; (id(1) * cup * id(1)) ; (id(2) * x+) ; (id(2) * x+) ; \
                           (id(2) * x+) ; (id(1) * cap * id(1)) ; cap";
pub const TURNBACK: &str = "cap ; cup";

/// Looks up a built-in by its `@` name (without the `@`).
pub fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "unknot" => Some(UNKNOT),
        "hopf" => Some(HOPF),
        "trefoil" => Some(TREFOIL),
        "e" => Some(TURNBACK),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 4] = ["unknot", "hopf", "trefoil", "e"];

/// A random `0 -> 0` word with at most `max_crossings` crossings whose
/// frames never exceed `max_width` strands (`max_width >= 2`).
pub fn random_link<G: Rng>(rng: &mut G, max_crossings: usize, max_width: usize) -> TangleWord {
    assert!(max_width >= 2, "need room for one cup");
    let steps = rng.gen_range(1..=3 * max_crossings.max(1) + 2);
    let mut word = TangleWord::identity(0);
    let mut crossings = 0;
    let place = |word: &TangleWord, g: Generator, at: usize| {
        let width = word.target();
        let step = TangleWord::generator(g)
            .padded(at, width - at - g.domain())
            .expect("within bounds");
        word.compose(&step).expect("arity follows the frame")
    };
    for _ in 0..steps {
        let width = word.target();
        let choice = rng.gen_range(0..3);
        let g = match choice {
            0 if width + 2 <= max_width => Generator::Cup,
            1 if width >= 2 => Generator::Cap,
            _ if width >= 2 && crossings < max_crossings => {
                crossings += 1;
                if rng.gen_bool(0.5) {
                    Generator::Xp
                } else {
                    Generator::Xm
                }
            }
            _ if width == 0 => Generator::Cup,
            _ => continue,
        };
        let at = rng.gen_range(0..=width - g.domain());
        word = place(&word, g, at);
    }
    while word.target() > 0 {
        let at = rng.gen_range(0..=word.target() - 2);
        word = place(&word, Generator::Cap, at);
    }
    word
}

/// `count` random links from a fixed seed.
pub fn link_corpus(
    seed: u64,
    count: usize,
    max_crossings: usize,
    max_width: usize,
) -> Vec<TangleWord> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_link(&mut rng, max_crossings, max_width))
        .collect()
}

#[cfg(test)]
pub(crate) fn arb_link(
    max_crossings: usize,
    max_width: usize,
) -> impl proptest::strategy::Strategy<Value = TangleWord> {
    use proptest::prelude::*;
    any::<u64>().prop_map(move |seed| {
        random_link(&mut StdRng::seed_from_u64(seed), max_crossings, max_width)
    })
}
