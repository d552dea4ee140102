use num_bigint::BigInt;
use num_traits::Zero;

use crate::kernel::rational::{binomial, ratio, Rational};

/// Bernoulli numbers `B_0..=B_n` with the generating-function convention
/// `t/(e^t − 1) = Σ B_j t^j / j!`, so `B_1 = −1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Computes `B_0..=B_n` from `Σ_{j=0}^{k} C(k+1, j) B_j = 0`.
    pub fn up_to(n: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(n + 1);
        values.push(ratio(1, 1));
        for k in 1..=n {
            if k > 1 && k % 2 == 1 {
                values.push(Rational::zero());
                continue;
            }
            let kp1 = k as u32 + 1;
            let s: Rational = values
                .iter()
                .enumerate()
                .map(|(j, b)| b * Rational::from_integer(binomial(kp1, j as u32)))
                .sum();
            values.push(-s / Rational::from_integer(BigInt::from(kp1)));
        }
        Self { values }
    }

    pub fn get(&self, j: usize) -> &Rational {
        &self.values[j]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// The Bernoulli number `B_n`.
pub fn bernoulli(n: usize) -> Rational {
    BernoulliTable::up_to(n).get(n).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::factorial;

    /// `B_j = j! · [t^j] (t/(e^t − 1))`, inverting the power series of
    /// `(e^t − 1)/t = Σ t^k/(k+1)!` directly.
    fn generating_function_oracle(n: usize) -> Vec<Rational> {
        let f: Vec<Rational> = (0..=n)
            .map(|k| Rational::new(1.into(), factorial(k as u32 + 1)))
            .collect();
        let mut inv = vec![Rational::zero(); n + 1];
        inv[0] = ratio(1, 1);
        for k in 1..=n {
            let s: Rational = (1..=k).map(|i| &f[i] * &inv[k - i]).sum();
            inv[k] = -s;
        }
        inv.iter()
            .enumerate()
            .map(|(j, c)| c * Rational::from_integer(factorial(j as u32)))
            .collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), ratio(1, 1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(3), ratio(0, 1));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(10), ratio(5, 66));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
    }

    #[test]
    fn agrees_with_generating_function() {
        let table = BernoulliTable::up_to(30);
        assert_eq!(table.values(), generating_function_oracle(30).as_slice());
    }

    #[test]
    fn recurrence_holds_through_forty() {
        let table = BernoulliTable::up_to(40);
        for k in 1..=40u32 {
            let s: Rational = (0..=k)
                .map(|j| table.get(j as usize) * Rational::from_integer(binomial(k + 1, j)))
                .sum();
            assert!(s.is_zero(), "k = {k}");
        }
        for j in (3..=40).step_by(2) {
            assert!(table.get(j).is_zero());
        }
    }
}
