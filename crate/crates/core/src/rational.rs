use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rational = Ratio<i128>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n as i128, d as i128)
}

pub fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}

/// The value as an `i64`, or `None` when it is fractional or out of range.
pub fn to_integer(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if q.is_zero() {
        "0".to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) mod serde_rational {
    use super::{fmt_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse(&raw).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{raw}`")))
    }

    pub fn parse(raw: &str) -> Option<Rational> {
        let raw = raw.trim();
        match raw.split_once('/') {
            Some((n, d)) => {
                let n: i128 = n.trim().parse().ok()?;
                let d: i128 = d.trim().parse().ok()?;
                (d != 0).then(|| Rational::new(n, d))
            }
            None => raw.parse::<i128>().ok().map(Rational::from_integer),
        }
    }
}

pub(crate) mod serde_rational_array {
    use super::{fmt_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(qs: &[Rational; 4], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        for q in qs {
            seq.serialize_element(&fmt_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rational; 4], D::Error> {
        let raw = <[String; 4]>::deserialize(d)?;
        let mut out = [Rational::from_integer(0); 4];
        for (slot, text) in out.iter_mut().zip(raw.iter()) {
            *slot = super::serde_rational::parse(text)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{text}`")))?;
        }
        Ok(out)
    }
}
