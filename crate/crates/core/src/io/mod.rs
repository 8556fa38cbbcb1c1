//! File formats and serialization.

mod expr;
mod schema;

pub use expr::{parse_scalar, scalar_string};
pub use schema::*;

pub mod q_string {
    use crate::algebra::{fmt_q, parse_q, Q};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))
    }
}
