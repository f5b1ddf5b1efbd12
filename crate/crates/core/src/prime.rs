//! Prime moduli and the small modular arithmetic used everywhere else:
//! inverses, binomial coefficients via Lucas' theorem, p-adic valuations.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PrimeError {
    #[error("{0} is not a prime number")]
    NotPrime(u32),
}

/// A checked prime modulus.
///
/// Construction verifies primality, so downstream code can rely on `F_p`
/// actually being a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, PrimeError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(PrimeError::NotPrime(p))
        }
    }

    /// The even prime, used as a default all over the Steenrod algebra code.
    pub const TWO: Prime = Prime(2);

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    /// Reduces an unsigned value.
    pub fn reduce(self, x: u64) -> u32 {
        (x % u64::from(self.0)) as u32
    }

    /// Reduces a signed value into `0..p`.
    pub fn reduce_signed(self, x: i64) -> u32 {
        let p = i64::from(self.0);
        (((x % p) + p) % p) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.0 && b < self.0);
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.0 && b < self.0);
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    pub fn neg(self, a: u32) -> u32 {
        debug_assert!(a < self.0);
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.0 && b < self.0);
        ((u64::from(a) * u64::from(b)) % u64::from(self.0)) as u32
    }

    /// Multiplicative inverse by Fermat's little theorem; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.0 != 0, "zero has no inverse mod {}", self.0);
        self.pow(a % self.0, self.0 - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc: u32 = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `(-1)^e` as an element of `F_p`.
    pub fn sign(self, e: u64) -> u32 {
        if e % 2 == 0 {
            1 % self.0
        } else {
            self.neg(1 % self.0)
        }
    }

    /// Binomial coefficient `C(m, n) mod p` by Lucas' theorem: the product of
    /// the digitwise binomials in base p.
    pub fn binomial(self, m: u64, n: u64) -> u32 {
        if n > m {
            return 0;
        }
        let p = u64::from(self.0);
        let mut m = m;
        let mut n = n;
        let mut acc = 1 % self.0;
        while n > 0 || m > 0 {
            let (md, nd) = ((m % p) as u32, (n % p) as u32);
            if nd > md {
                return 0;
            }
            acc = self.mul(acc, small_binomial(self, md, nd));
            m /= p;
            n /= p;
        }
        acc
    }

    /// Binomial coefficient of possibly negative arguments, zero whenever
    /// `n < 0` or `n > m`. Convenient for Adem relation coefficients.
    pub fn binomial_signed(self, m: i64, n: i64) -> u32 {
        if n < 0 || m < 0 || n > m {
            0
        } else {
            self.binomial(m as u64, n as u64)
        }
    }

    /// The exponent of `self` in `x`; `x` must be positive.
    pub fn valuation(self, mut x: u64) -> u32 {
        assert!(x > 0, "valuation of zero is undefined");
        let p = u64::from(self.0);
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Digitwise binomial for arguments below p, via the multiplicative formula.
fn small_binomial(p: Prime, m: u32, n: u32) -> u32 {
    debug_assert!(m < p.get() && n <= m);
    let mut num = 1 % p.get();
    let mut den = 1 % p.get();
    for i in 0..n {
        num = p.mul(num, (m - i) % p.get());
        den = p.mul(den, (i + 1) % p.get());
    }
    if num == 0 {
        0
    } else {
        p.mul(num, p.inv(den))
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u32) -> Vec<Prime> {
    (2..=limit).filter_map(|n| Prime::new(n).ok()).collect()
}
