//! Deterministic primality for desk-scale integers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sieve of Eratosthenes, primes `<= limit` in increasing order.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        for j in (i * i..=limit).step_by(i) {
            composite[j] = true;
        }
    }
    primes
}

pub fn next_prime_after(n: u64) -> u64 {
    (n + 1..).find(|&c| is_prime(c)).expect("primes are unbounded")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_agrees_with_trial_division() {
        let sieved = primes_up_to(500);
        let trial: Vec<u64> = (0..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, trial);
        assert_eq!(&sieved[..6], &[2, 3, 5, 7, 11, 13]);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn next_prime() {
        assert_eq!(next_prime_after(1), 2);
        assert_eq!(next_prime_after(6), 7);
        assert_eq!(next_prime_after(7), 11);
    }
}
