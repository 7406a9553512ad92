use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExtNat, Measure, MeasuresModel, ModelKind, Natural};
use crate::algebra::AtomSpace;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomBounds {
    pub max_measures: usize,
    pub max_value: u64,
    /// Chance that an atom value is infinite; ignored for finitary models.
    pub infinity_probability: f64,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds {
            max_measures: 3,
            max_value: 3,
            infinity_probability: 0.2,
        }
    }
}

/// A canonical-carrier model drawn from `seed`. Draws are repeated until
/// the model is admissible; a zero `max_measures` or `max_value` is treated
/// as one.
pub fn random_model<N: Natural>(
    space: &AtomSpace,
    kind: ModelKind,
    seed: u64,
    bounds: &RandomBounds,
) -> MeasuresModel<N> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_measures = bounds.max_measures.max(1);
    let max_value = bounds.max_value.max(1);
    let p_inf = match kind {
        ModelKind::Finitary => 0.0,
        ModelKind::Infinitary => bounds.infinity_probability.clamp(0.0, 1.0),
    };
    loop {
        let count = rng.gen_range(1..=max_measures);
        let measures = (0..count)
            .map(|_| {
                Measure::new(
                    space
                        .atoms()
                        .map(|_| {
                            if rng.gen_bool(p_inf) {
                                ExtNat::Inf
                            } else {
                                ExtNat::Fin(N::from(rng.gen_range(0..=max_value)))
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        if let Ok(m) = MeasuresModel::canonical(kind, space, measures) {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Labels;

    #[test]
    fn deterministic_and_kind_respecting() {
        let sp = AtomSpace::new(Labels::new(["a", "b"]).unwrap()).unwrap();
        let b = RandomBounds::default();
        let m1: MeasuresModel<u64> = random_model(&sp, ModelKind::Infinitary, 0, &b);
        let m2: MeasuresModel<u64> = random_model(&sp, ModelKind::Infinitary, 0, &b);
        assert_eq!(m1, m2);
        for seed in 0..50 {
            let m: MeasuresModel<u64> = random_model(&sp, ModelKind::Finitary, seed, &b);
            assert!(m.measures().iter().all(Measure::is_finitary));
            let no_inf = RandomBounds {
                infinity_probability: 0.0,
                ..b
            };
            let m: MeasuresModel<u64> = random_model(&sp, ModelKind::Infinitary, seed, &no_inf);
            assert!(m.measures().iter().all(Measure::is_finitary));
        }
    }
}
