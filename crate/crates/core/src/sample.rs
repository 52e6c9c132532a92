//! Seeded sampling of admissible parameter values.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Assignment;
use crate::arith::gauss::{rat, GaussRational};
use crate::arith::poly::Symbol;
use crate::arith::ratfunc::RatFunc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational `n/d` with `|n| ≤ 9`, `1 ≤ d ≤ 5`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> GaussRational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=5);
        if n != 0 {
            return GaussRational::real(rat(n, d));
        }
    }
}

/// Random values for `symbols` keeping every `nonzero` expression nonzero.
pub fn admissible(symbols: &[Symbol], nonzero: &[RatFunc], rng: &mut ChaCha8Rng) -> Assignment {
    loop {
        let at: Assignment = symbols.iter().map(|s| (s.clone(), random_rational(rng))).collect();
        if nonzero.iter().all(|c| c.eval_partial(&at).is_ok_and(|v| !v.is_zero())) {
            return at;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::expr::ScalarExpr;

    #[test]
    fn respects_constraints_and_seed() {
        let s = [Symbol::new("alpha")];
        let c = [ScalarExpr::parse("alpha - 1").unwrap().to_ratfunc().unwrap()];
        let a: Vec<_> = (0..50).map(|_| admissible(&s, &c, &mut rng(7))).collect();
        assert!(a.iter().all(|x| x[&s[0]] != GaussRational::from_int(1)));
        assert_eq!(a[0], admissible(&s, &c, &mut rng(7)));
    }
}
