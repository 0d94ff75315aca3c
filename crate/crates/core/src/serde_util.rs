//! Serde adapters writing numbers through `Display`/`FromStr`, so big
//! integers and rationals appear in JSON as decimal strings.

pub mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub mod as_strings {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<T: Display, C, S>(v: C, s: S) -> Result<S::Ok, S::Error>
    where
        C: IntoIterator<Item = T>,
        S: Serializer,
    {
        v.into_iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, T, C, D>(d: D) -> Result<C, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        C: TryFrom<Vec<T>>,
        D: Deserializer<'de>,
    {
        let raw = Vec::<String>::deserialize(d)?;
        let parsed = raw.iter().map(|c| c.parse::<T>()).collect::<Result<Vec<T>, _>>().map_err(serde::de::Error::custom)?;
        C::try_from(parsed).map_err(|_| serde::de::Error::custom("wrong number of entries"))
    }
}
