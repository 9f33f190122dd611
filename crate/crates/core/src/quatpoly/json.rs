use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Coeff, Poly, QuatPolyError};

/// Wire form of a polynomial. Degrees of the zero polynomial are written as -1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub degu: i64,
    pub degv: i64,
    pub coeffs: Vec<TermJson>,
}

/// Coefficient of `u^i v^j` as the text of its `1, i, j, k` components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub i: u32,
    pub j: u32,
    pub q: [String; 4],
}

fn degree(d: Option<u32>) -> i64 {
    d.map_or(-1, i64::from)
}

impl<C: Coeff> From<&Poly<C>> for PolyJson {
    fn from(p: &Poly<C>) -> Self {
        let coeffs = p
            .terms()
            .map(|(&(i, j), c)| TermJson {
                i,
                j,
                q: c.to_parts().map(|s| s.to_string()),
            })
            .collect();
        PolyJson {
            degu: degree(p.degu()),
            degv: degree(p.degv()),
            coeffs,
        }
    }
}

impl<C: Coeff> TryFrom<&PolyJson> for Poly<C> {
    type Error = QuatPolyError;

    fn try_from(json: &PolyJson) -> Result<Self, QuatPolyError> {
        let mut p = Poly::zero();
        for t in &json.coeffs {
            let parse = |s: &String| {
                <C::Base as FromStr>::from_str(s).map_err(|e| QuatPolyError::Malformed(e.to_string()))
            };
            let parts = [parse(&t.q[0])?, parse(&t.q[1])?, parse(&t.q[2])?, parse(&t.q[3])?];
            let c = C::from_parts(parts)
                .ok_or_else(|| QuatPolyError::Malformed(format!("non-real coefficient at ({}, {})", t.i, t.j)))?;
            p.add_term((t.i, t.j), c);
        }
        if degree(p.degu()) != json.degu || degree(p.degv()) != json.degv {
            return Err(QuatPolyError::Malformed(format!(
                "declared degrees ({}, {}) do not match coefficients",
                json.degu, json.degv
            )));
        }
        Ok(p)
    }
}

impl<C: Coeff> Serialize for Poly<C> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        PolyJson::from(self).serialize(serializer)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Poly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = PolyJson::deserialize(deserializer)?;
        Poly::try_from(&json).map_err(serde::de::Error::custom)
    }
}
