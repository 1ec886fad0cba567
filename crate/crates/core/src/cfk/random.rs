use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{corpus, staircase, Arrow, BifilteredComplex, Generator};

/// A random symmetric model with at most `max_generators` generators,
/// deterministic in `seed`.
///
/// Generators come as fixed points in grading 0 or as swapped pairs in
/// gradings `±a` with `a` in `[-3, 3]`; arrows get drops in `[0, 3]` and are
/// added together with their mirror under the symmetry. Draws that fail
/// validation are discarded.
pub fn random_complex(seed: u64, max_generators: usize) -> BifilteredComplex {
    assert!(max_generators >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(c) = draw(&mut rng, max_generators) {
            return c.with_name(format!("random:{seed}:{max_generators}"));
        }
    }
}

fn draw(rng: &mut ChaCha8Rng, max_generators: usize) -> Option<BifilteredComplex> {
    let mut generators = Vec::new();
    let mut sigma = Vec::new();
    while generators.len() < max_generators {
        let n = generators.len();
        if rng.gen_bool(0.3) || n + 1 == max_generators {
            generators.push(Generator {
                id: format!("g{n}"),
                alexander: 0,
            });
            sigma.push(n);
        } else {
            let a = rng.gen_range(-3..=3);
            generators.push(Generator {
                id: format!("g{n}"),
                alexander: a,
            });
            generators.push(Generator {
                id: format!("g{}", n + 1),
                alexander: -a,
            });
            sigma.push(n + 1);
            sigma.push(n);
        }
        if rng.gen_bool(0.3) {
            break;
        }
    }
    let n = generators.len();
    let mut arrows = std::collections::BTreeSet::new();
    for _ in 0..rng.gen_range(0..=n + 1) {
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        let diff = generators[x].alexander - generators[y].alexander;
        let candidates: Vec<(u32, u32)> = (0..=3i32)
            .filter_map(|di| {
                let dj = di - diff;
                ((0..=3).contains(&dj) && (di, dj) != (0, 0)).then_some((di as u32, dj as u32))
            })
            .collect();
        if x == y || candidates.is_empty() {
            continue;
        }
        let &(drop_i, drop_j) = candidates.choose(rng).expect("nonempty");
        arrows.insert(Arrow {
            from: x,
            to: y,
            drop_i,
            drop_j,
        });
        arrows.insert(Arrow {
            from: sigma[x],
            to: sigma[y],
            drop_i: drop_j,
            drop_j: drop_i,
        });
    }
    if arrows.is_empty() {
        return None;
    }
    let c =
        BifilteredComplex::from_parts("random", generators, arrows.into_iter().collect()).with_symmetry(Some(sigma));
    c.validate().is_valid().then_some(c)
}

/// A random connected sum of one or two small staircases or figure-eight
/// boxes, each mirrored with probability one half. These are models of
/// actual knots, unlike [`random_complex`].
pub fn random_geometric(seed: u64) -> BifilteredComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=2);
    let mut pieces = Vec::with_capacity(count);
    for _ in 0..count {
        let piece = if rng.gen_range(0..3) < 2 {
            let half: Vec<u32> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(1..=2)).collect();
            let mut steps = half.clone();
            steps.extend(half.iter().rev());
            staircase(&steps).expect("palindromic")
        } else {
            corpus("fig8_box").expect("catalog")
        };
        pieces.push(if rng.gen_bool(0.5) { piece.mirror() } else { piece });
    }
    let mut out = pieces[0].clone();
    for p in &pieces[1..] {
        out = out.tensor(p);
    }
    out
}
