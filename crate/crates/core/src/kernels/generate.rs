use num_complex::Complex64;
use rand::Rng;

use super::{Scalar, StepKernel};

/// Shapes of random nonnegative kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Uniform,
    /// Most entries zero.
    Sparse,
    /// A few large entries over a small floor.
    Skewed,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::Uniform, Profile::Sparse, Profile::Skewed];

    fn sample<R: Rng>(self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        match self {
            Profile::Uniform => u,
            Profile::Sparse => {
                if rng.random_bool(0.35) {
                    u
                } else {
                    0.0
                }
            }
            Profile::Skewed => u.powi(6),
        }
    }
}

fn fill<T: Scalar, R: Rng>(rng: &mut R, arity: usize, n: usize, symmetric: bool, mut sample: impl FnMut(&mut R) -> T) -> StepKernel<T> {
    let len = n.pow(arity as u32);
    if symmetric && arity == 2 {
        let mut values = vec![T::zero(); len];
        for i in 0..n {
            for j in 0..=i {
                let v = sample(rng);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        StepKernel::symmetric(n, values).expect("symmetric by construction")
    } else {
        StepKernel::new(arity, n, (0..len).map(|_| sample(rng)).collect()).expect("finite entries")
    }
}

/// Nonnegative kernel with a randomly chosen [`Profile`]. 2-ary kernels are symmetric.
pub fn random_nonnegative<R: Rng>(rng: &mut R, arity: usize, n: usize) -> StepKernel<f64> {
    let profile = Profile::ALL[rng.random_range(0..Profile::ALL.len())];
    random_with_profile(rng, arity, n, profile)
}

pub fn random_with_profile<R: Rng>(rng: &mut R, arity: usize, n: usize, profile: Profile) -> StepKernel<f64> {
    let k = fill(rng, arity, n, true, |r| profile.sample(r));
    if k.values().iter().all(|&v| v == 0.0) {
        // keep norms positive so normalisation is defined
        return StepKernel::constant(arity, n, 1.0);
    }
    k
}

/// Entries uniform in `[−1, 1]`; 2-ary kernels are symmetric when asked.
pub fn random_signed<R: Rng>(rng: &mut R, arity: usize, n: usize, symmetric: bool) -> StepKernel<f64> {
    fill(rng, arity, n, symmetric, |r| r.random_range(-1.0..=1.0))
}

/// Entries with real and imaginary parts uniform in `[−1, 1]`.
pub fn random_complex<R: Rng>(rng: &mut R, arity: usize, n: usize) -> StepKernel<Complex64> {
    fill(rng, arity, n, false, |r| Complex64::new(r.random_range(-1.0..=1.0), r.random_range(-1.0..=1.0)))
}
