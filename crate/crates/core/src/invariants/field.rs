//! Prime fields carrying a primitive root of unity of prescribed order.
//!
//! All invariant-ring computations run over two distinct such fields and the
//! results must agree; the pair guards against artifacts of a single prime.

use crate::groups::GroupSpec;
use crate::{Error, Result};

/// `F_p` with a fixed primitive `m`-th root of unity `zeta`; requires
/// `p = 1 (mod m)` and `p` coprime to the group order in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u64,
    pub zeta: u64,
}

impl FieldSpec {
    pub fn new(p: u64, m: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidSpec(format!("{p} is not prime")));
        }
        if m == 0 || (p - 1) % m != 0 {
            return Err(Error::Field(format!(
                "no primitive root of order {m} in F_{p}"
            )));
        }
        let zeta = find_root_of_exact_order(p, m)
            .ok_or_else(|| Error::Field(format!("no element of exact order {m} in F_{p}")))?;
        Ok(FieldSpec { p, m, zeta })
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn zeta_pow(&self, e: u64) -> u64 {
        self.pow(self.zeta, e % self.m)
    }
}

/// The two fields every computation runs over.
#[derive(Debug, Clone, Copy)]
pub struct FieldPair {
    pub a: FieldSpec,
    pub b: FieldSpec,
}

impl FieldPair {
    pub fn primes(&self) -> [u64; 2] {
        [self.a.p, self.b.p]
    }
}

/// The two smallest primes `p = 1 (mod m)` with `p` coprime to
/// `group_order`.
pub fn default_field_pair(m: u64, group_order: u64) -> Result<FieldPair> {
    let mut found = vec![];
    let mut p = m + 1;
    while found.len() < 2 {
        if is_prime(p) && group_order % p != 0 {
            found.push(FieldSpec::new(p, m)?);
        }
        p += m;
        if p > 1 << 40 {
            return Err(Error::Field(format!("no suitable primes for m = {m}")));
        }
    }
    Ok(FieldPair {
        a: found[0],
        b: found[1],
    })
}

/// Field pair for a catalog group: root order `lcm(exp A, 4)`.
pub fn field_pair_for(g: &GroupSpec) -> Result<FieldPair> {
    let data = g.index_two()?;
    default_field_pair(data.root_order, g.order())
}

/// Validates an explicit prime pair against the root order and group order.
pub fn field_pair_from_primes(m: u64, group_order: u64, p1: u64, p2: u64) -> Result<FieldPair> {
    if p1 == p2 {
        return Err(Error::InvalidSpec("the two primes must differ".into()));
    }
    for p in [p1, p2] {
        if group_order % p == 0 {
            return Err(Error::InvalidSpec(format!(
                "prime {p} divides the group order {group_order}"
            )));
        }
    }
    Ok(FieldPair {
        a: FieldSpec::new(p1, m)?,
        b: FieldSpec::new(p2, m)?,
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn find_root_of_exact_order(p: u64, m: u64) -> Option<u64> {
    'outer: for g in 2..p {
        let z = {
            // candidate of order dividing m
            let mut acc = 1u64;
            let mut base = g;
            let mut e = (p - 1) / m;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            acc
        };
        // exact order check: z^(m/q) != 1 for every prime q | m
        let mut rest = m;
        let mut q = 2;
        let mut acc_ok = true;
        while q * q <= rest {
            if rest % q == 0 {
                let mut e = m / q;
                let mut pw = 1u64;
                let mut base = z;
                while e > 0 {
                    if e & 1 == 1 {
                        pw = pw * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                if pw == 1 {
                    continue 'outer;
                }
                while rest % q == 0 {
                    rest /= q;
                }
            }
            q += 1;
        }
        if rest > 1 {
            let mut e = m / rest;
            let mut pw = 1u64;
            let mut base = z;
            while e > 0 {
                if e & 1 == 1 {
                    pw = pw * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            if pw == 1 {
                acc_ok = false;
            }
        }
        if acc_ok {
            return Some(z);
        }
    }
    None
}
