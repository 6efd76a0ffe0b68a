use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::LinalgError;

/// The ground field. `BigRational` keeps itself in lowest terms with a
/// positive denominator, which is exactly the invariant we want.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `"p/q"`, or just `"p"` for integers.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q, LinalgError> {
    let s = s.trim();
    let bad = || LinalgError::Parse(s.to_string());
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Q::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
    }
}

pub fn is_unit(x: &Q) -> bool {
    x.abs().is_one()
}

pub fn sign_q(s: i32) -> Q {
    if s < 0 {
        -Q::one()
    } else {
        Q::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for s in ["0", "-3", "7/2", "-1/6"] {
            assert_eq!(q_to_string(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("4/6").unwrap(), qf(2, 3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
