//! Supernatural numbers `∏ p^{n(p)}` with exponents in `ℕ ∪ {∞}`.
//!
//! Only values that differ from a uniform default (all zero, or all
//! infinite) at finitely many primes are representable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u64),
    Inf,
}

impl Exponent {
    fn add(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Inf,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(n) => write!(f, "{n}"),
            Exponent::Inf => f.write_str("inf"),
        }
    }
}

/// Exponent carried by every prime not listed explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rest {
    Zero,
    Infinity,
}

impl Rest {
    fn exponent(self) -> Exponent {
        match self {
            Rest::Zero => Exponent::Finite(0),
            Rest::Infinity => Exponent::Inf,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Supernatural {
    explicit: BTreeMap<u64, Exponent>,
    default: Rest,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn factor(mut n: u64) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

impl Supernatural {
    pub fn one() -> Self {
        Supernatural { explicit: BTreeMap::new(), default: Rest::Zero }
    }

    /// `∏_p p^∞`
    pub fn full() -> Self {
        Supernatural { explicit: BTreeMap::new(), default: Rest::Infinity }
    }

    pub fn from_nat(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("supernatural numbers start at 1".into()));
        }
        let explicit = factor(n).into_iter().map(|(p, e)| (p, Exponent::Finite(e))).collect();
        Ok(Supernatural { explicit, default: Rest::Zero })
    }

    /// `p^∞`
    pub fn prime_power_inf(p: u64) -> Result<Self> {
        Self::from_parts([(p, Exponent::Inf)], Rest::Zero)
    }

    pub fn from_parts<I: IntoIterator<Item = (u64, Exponent)>>(parts: I, default: Rest) -> Result<Self> {
        let mut explicit = BTreeMap::new();
        for (p, e) in parts {
            if !is_prime(p) {
                return Err(Error::Precondition(format!("{p} is not prime")));
            }
            explicit.insert(p, e);
        }
        Ok(Supernatural { explicit, default }.normalized())
    }

    fn normalized(mut self) -> Self {
        let d = self.default.exponent();
        self.explicit.retain(|_, e| *e != d);
        self
    }

    pub fn default_rule(&self) -> Rest {
        self.default
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        self.explicit.get(&p).copied().unwrap_or(self.default.exponent())
    }

    /// Primes carrying a non-default exponent, with those exponents.
    pub fn explicit(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.explicit.iter().map(|(&p, &e)| (p, e))
    }

    fn combine(&self, other: &Self, default: Rest, f: impl Fn(Exponent, Exponent) -> Exponent) -> Self {
        let mut explicit = BTreeMap::new();
        for &p in self.explicit.keys().chain(other.explicit.keys()) {
            explicit.insert(p, f(self.exponent(p), other.exponent(p)));
        }
        Supernatural { explicit, default }.normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let default = if self.default == Rest::Infinity || other.default == Rest::Infinity {
            Rest::Infinity
        } else {
            Rest::Zero
        };
        self.combine(other, default, Exponent::add)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.mul_default_max(other, std::cmp::max)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let default = if self.default == Rest::Zero || other.default == Rest::Zero {
            Rest::Zero
        } else {
            Rest::Infinity
        };
        self.combine(other, default, std::cmp::min)
    }

    fn mul_default_max(&self, other: &Self, f: fn(Exponent, Exponent) -> Exponent) -> Self {
        let default = if self.default == Rest::Infinity || other.default == Rest::Infinity {
            Rest::Infinity
        } else {
            Rest::Zero
        };
        self.combine(other, default, f)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.default == Rest::Infinity && other.default == Rest::Zero {
            return false;
        }
        self.explicit.keys().chain(other.explicit.keys()).all(|&p| self.exponent(p) <= other.exponent(p))
    }

    pub fn equals_full(&self) -> bool {
        self.default == Rest::Infinity && self.explicit.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.default == Rest::Zero && self.explicit.values().all(|e| matches!(e, Exponent::Finite(_)))
    }

    /// The ordinary integer, if finite and small enough.
    pub fn to_nat(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.explicit.iter().try_fold(1u64, |acc, (&p, e)| match e {
            Exponent::Finite(k) => acc.checked_mul(p.checked_pow(u32::try_from(*k).ok()?)?),
            Exponent::Inf => None,
        })
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, e) in &self.explicit {
            write!(f, "{p}^{e} * ")?;
        }
        match self.default {
            Rest::Zero => f.write_str("rest^0"),
            Rest::Infinity => f.write_str("rest^inf"),
        }
    }
}

impl FromStr for Supernatural {
    type Err = Error;

    /// Accepts the display form, and also bare factors such as `12` or `2^inf * 3`
    /// (default zero when `rest^…` is omitted).
    fn from_str(s: &str) -> Result<Self> {
        let mut default = Rest::Zero;
        let mut parts: BTreeMap<u64, Exponent> = BTreeMap::new();
        let mut offset = 0;
        for raw in s.split('*') {
            let pos = offset + raw.len() - raw.trim_start().len();
            offset += raw.len() + 1;
            let tok = raw.trim();
            let err = |msg: &str| Error::Parse { pos, msg: msg.to_string() };
            if tok.is_empty() {
                return Err(err("empty factor"));
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.trim(), Some(e.trim())),
                None => (tok, None),
            };
            let exp = match exp {
                None => Exponent::Finite(1),
                Some("inf") => Exponent::Inf,
                Some(e) => Exponent::Finite(e.parse().map_err(|_| err("bad exponent"))?),
            };
            if base == "rest" {
                default = match exp {
                    Exponent::Finite(0) => Rest::Zero,
                    Exponent::Inf => Rest::Infinity,
                    _ => return Err(err("rest takes exponent 0 or inf")),
                };
                continue;
            }
            let n: u64 = base.parse().map_err(|_| err("bad base"))?;
            if n == 0 {
                return Err(err("zero factor"));
            }
            if is_prime(n) {
                let e = parts.entry(n).or_insert(Exponent::Finite(0));
                *e = e.add(exp);
            } else if let Exponent::Finite(k) = exp {
                for (p, m) in factor(n) {
                    let e = parts.entry(p).or_insert(Exponent::Finite(0));
                    *e = e.add(Exponent::Finite(m * k));
                }
            } else if n != 1 {
                for p in factor(n).into_keys() {
                    parts.insert(p, Exponent::Inf);
                }
            }
        }
        Supernatural::from_parts(parts, default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(n: u64) -> Supernatural {
        Supernatural::from_nat(n).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(nat(12).mul(&nat(18)), nat(216));
        let two_inf = Supernatural::prime_power_inf(2).unwrap();
        assert_eq!(two_inf.mul(&nat(8)), two_inf);
        assert!(Supernatural::full().mul(&Supernatural::full()).equals_full());
        assert!(nat(12).divides(&Supernatural::full()));
        assert_eq!(nat(12).lcm(&nat(18)), nat(36));
        let p = two_inf.mul(&Supernatural::prime_power_inf(3).unwrap());
        assert!(!p.equals_full());
        assert_eq!(Supernatural::from_nat(0).unwrap_err(), Error::Precondition("supernatural numbers start at 1".into()));
    }

    #[test]
    fn text_form() {
        let s = Supernatural::from_parts([(2, Exponent::Inf), (3, Exponent::Finite(2))], Rest::Zero).unwrap();
        assert_eq!(s.to_string(), "2^inf * 3^2 * rest^0");
        assert_eq!("2^inf * 3^2 * rest^0".parse::<Supernatural>().unwrap(), s);
        assert_eq!("rest^inf".parse::<Supernatural>().unwrap(), Supernatural::full());
        assert_eq!("12".parse::<Supernatural>().unwrap(), nat(12));
        assert_eq!(nat(1).to_string(), "rest^0");
        assert!(matches!("2^x".parse::<Supernatural>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("2 * rest^3".parse::<Supernatural>(), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn canonical_form_drops_default_entries() {
        let s = Supernatural::from_parts([(5, Exponent::Inf)], Rest::Infinity).unwrap();
        assert!(s.equals_full());
        assert!(Supernatural::from_parts([(4, Exponent::Inf)], Rest::Zero).is_err());
        let co = Supernatural::from_parts([(5, Exponent::Finite(1))], Rest::Infinity).unwrap();
        assert!(!co.equals_full());
        assert!(!Supernatural::full().divides(&co));
        assert!(co.divides(&Supernatural::full()));
    }

    fn arb() -> impl Strategy<Value = Supernatural> {
        let exp = prop_oneof![(0u64..4).prop_map(Exponent::Finite), Just(Exponent::Inf)];
        let primes = prop::sample::select(vec![2u64, 3, 5, 7]);
        (prop::collection::vec((primes, exp), 0..4), prop::bool::ANY).prop_map(|(parts, inf)| {
            let d = if inf { Rest::Infinity } else { Rest::Zero };
            Supernatural::from_parts(parts, d).unwrap()
        })
    }

    proptest! {
        #[test]
        fn mul_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.divides(&a.mul(&b)));
        }

        #[test]
        fn lcm_is_join(a in arb(), b in arb(), c in arb()) {
            let l = a.lcm(&b);
            prop_assert!(a.divides(&l) && b.divides(&l));
            if a.divides(&c) && b.divides(&c) {
                prop_assert!(l.divides(&c));
            }
            if a.divides(&b) && b.divides(&a) {
                prop_assert_eq!(&a, &b);
            }
            if a.divides(&b) && b.divides(&c) {
                prop_assert!(a.divides(&c));
            }
        }

        #[test]
        fn from_nat_is_multiplicative_on_coprimes(m in 1u64..500, n in 1u64..500) {
            if num_integer_gcd(m, n) == 1 {
                prop_assert_eq!(nat(m * n), nat(m).mul(&nat(n)));
            }
            prop_assert_eq!(nat(m).to_nat(), Some(m));
        }

        #[test]
        fn display_roundtrip(a in arb()) {
            prop_assert_eq!(a.to_string().parse::<Supernatural>().unwrap(), a);
        }
    }

    fn num_integer_gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { num_integer_gcd(b, a % b) }
    }
}
