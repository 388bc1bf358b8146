use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::fading::KappaMuParams;
use crate::scalar::Real;

/// A finite, seeded stream of κ-μ powers. See [`sample_kappa_mu`].
#[derive(Debug, Clone)]
pub struct KappaMuSamples<T> {
    rng: ChaCha8Rng,
    components: usize,
    mean_shift: f64,
    scale: f64,
    remaining: usize,
    _marker: std::marker::PhantomData<T>,
}

impl<T: Real> Iterator for KappaMuSamples<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let mut acc = 0.0;
        for _ in 0..self.components {
            let g: f64 = StandardNormal.sample(&mut self.rng);
            let x = g + self.mean_shift;
            acc += x * x;
        }
        Some(T::lit(self.scale * acc))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl<T: Real> ExactSizeIterator for KappaMuSamples<T> {}

/// `n_samples` κ-μ powers for integer μ, reproducible from `seed`.
///
/// Each variate is Ω/(2μ(1+κ)) Σ_{i=1}^{2μ} (g_i + √κ)² with standard
/// normal g_i, so the noncentrality Σ m_i² is 2κμ and the mean is Ω.
pub fn sample_kappa_mu<T: Real>(params: &KappaMuParams<T>, n_samples: usize, seed: u64) -> Result<KappaMuSamples<T>> {
    params.validate()?;
    if !params.mu.is_integer() {
        return Err(Error::domain(
            "sample_kappa_mu",
            format!("mu must be a positive integer, got {}", params.mu),
        ));
    }
    let mu = params.mu.as_f64();
    let kappa = params.kappa.as_f64();
    Ok(KappaMuSamples {
        rng: ChaCha8Rng::seed_from_u64(seed),
        components: 2 * mu as usize,
        mean_shift: kappa.sqrt(),
        scale: params.omega.as_f64() / (2.0 * mu * (1.0 + kappa)),
        remaining: n_samples,
        _marker: std::marker::PhantomData,
    })
}
