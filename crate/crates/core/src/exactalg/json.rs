//! Polynomial JSON: `{"nvars":N,"terms":[{"x":[..],"q":{"0":"1","2":"-1"}}]}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::{LaurentQ, MultiLaurent};

impl Serialize for LaurentQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.len()))?;
        for (e, c) in self.terms() {
            m.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for LaurentQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentQ;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                write!(f, "a map from q-exponent strings to integer strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<LaurentQ, A::Error> {
                let mut out = LaurentQ::zero();
                let mut seen = BTreeMap::new();
                while let Some((k, v)) = a.next_entry::<String, String>()? {
                    let e: i32 = k.parse().map_err(|_| de::Error::custom(format!("bad q-exponent {k:?}")))?;
                    let c: BigInt = v.parse().map_err(|_| de::Error::custom(format!("bad coefficient {v:?}")))?;
                    if seen.insert(e, ()).is_some() {
                        return Err(de::Error::custom(format!("q-exponent {e} repeated")));
                    }
                    out.add_term(e, c);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermWire {
    x: Vec<i32>,
    q: LaurentQ,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyWire {
    nvars: usize,
    terms: Vec<TermWire>,
}

impl Serialize for MultiLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyWire {
            nvars: self.nvars(),
            terms: self
                .terms()
                .map(|(e, c)| TermWire { x: e.clone(), q: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = PolyWire::deserialize(d)?;
        MultiLaurent::from_terms(w.nvars, w.terms.into_iter().map(|t| (t.x, t.q)))
            .map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let n = 2;
        let p = &MultiLaurent::var(n, 0).shift_q(2) - &MultiLaurent::var_pow(n, 1, -1);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"nvars":2,"terms":[{"x":[0,-1],"q":{"0":"-1"}},{"x":[1,0],"q":{"2":"1"}}]}"#);
        let back: MultiLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<MultiLaurent>(r#"{"nvars":2,"terms":[{"x":[1],"q":{"0":"1"}}]}"#).is_err());
        assert!(serde_json::from_str::<MultiLaurent>(r#"{"nvars":1,"terms":[{"x":[1],"q":{"a":"1"}}]}"#).is_err());
        assert!(serde_json::from_str::<MultiLaurent>(r#"{"nvars":1,"terms":[{"x":[1],"q":{"0":"1.5"}}]}"#).is_err());
    }
}
