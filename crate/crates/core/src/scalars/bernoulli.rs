use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::real::{PrecisionCtx, Real};

static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();

/// Tangent numbers T_1..T_n (T_k = tan^{(2k-1)}(0)), integer recurrence.
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

fn compute(n: usize) -> Vec<BigRational> {
    let t = tangent_numbers(n);
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigRational::one());
    for (k, tk) in t.iter().enumerate().skip(1) {
        let p2 = BigInt::one() << (2 * k);
        let den = &p2 * (&p2 - BigInt::one());
        let mut b = BigRational::new(tk * BigInt::from(2 * k), den);
        if k % 2 == 0 {
            b = -b;
        }
        out.push(b);
    }
    out
}

/// B_{2j} as an exact rational (B_0 = 1, B_2 = 1/6, B_4 = -1/30, ...).
pub fn bernoulli_even(j: usize) -> BigRational {
    let lock = CACHE.get_or_init(|| Mutex::new(compute(64)));
    let mut v = lock.lock().unwrap_or_else(|e| e.into_inner());
    if j >= v.len() {
        let n = (j + 1).max(2 * v.len());
        *v = compute(n);
    }
    v[j].clone()
}

pub fn bernoulli_even_real<T: Real>(j: usize, ctx: &PrecisionCtx) -> T {
    T::from_rational(&bernoulli_even(j), ctx)
}
