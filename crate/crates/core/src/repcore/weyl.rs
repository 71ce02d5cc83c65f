use num_traits::ToPrimitive;

use crate::ring::Rational;

use super::RepError;

/// Dimension of the irreducible sl(n)-module with highest weight
/// `lambda` (coordinates in fundamental weights), by the Weyl formula
/// `∏_{i<j} (λ+ρ, ε_i-ε_j) / (ρ, ε_i-ε_j)`.
pub fn weyl_dim(n: usize, lambda: &[i64]) -> Result<u64, RepError> {
    if n < 2 || lambda.len() != n - 1 || lambda.iter().any(|&x| x < 0) {
        return Err(RepError::NonDominant);
    }
    let mut acc = Rational::from_integer(1.into());
    for i in 0..n {
        for j in i + 1..n {
            let num: i64 = (i..j).map(|k| lambda[k] + 1).sum();
            acc *= Rational::new(num.into(), ((j - i) as i64).into());
        }
    }
    debug_assert!(acc.is_integer());
    Ok(acc.to_integer().to_u64().expect("dimension fits in u64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn familiar_dimensions() {
        for n in 2..=6 {
            let mut w1 = vec![0; n - 1];
            w1[0] = 1;
            assert_eq!(weyl_dim(n, &w1).unwrap(), n as u64);
            let mut adj = vec![0; n - 1];
            adj[0] += 1;
            adj[n - 2] += 1;
            assert_eq!(weyl_dim(n, &adj).unwrap(), (n * n - 1) as u64);
        }
        let total: u64 = (0..=2).map(|k| weyl_dim(2, &[2 * k]).unwrap()).sum();
        assert_eq!(total, 9);
        assert!(weyl_dim(3, &[-1, 0]).is_err());
    }
}
