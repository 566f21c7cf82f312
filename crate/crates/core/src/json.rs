//! Text forms shared by the CLI and the demo: elements are lowercase hex
//! with the constant coefficient in the lowest bit.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::FieldSpec;
use crate::linpoly::LinPoly;
use crate::special::{build_special, SpecialPP};

/// `{"n": 3, "modulus": "0xb"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub n: usize,
    pub modulus: String,
}

/// `{"n": 3, "modulus": "0xb", "coeffs": ["0x0", "0x1", "0x0"]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinPolyJson {
    pub n: usize,
    pub modulus: String,
    pub coeffs: Vec<String>,
}

/// `{"n": 3, "modulus": "0xb", "a": "0x6"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialJson {
    pub n: usize,
    pub modulus: String,
    pub a: String,
}

impl From<&FieldSpec> for FieldJson {
    fn from(f: &FieldSpec) -> Self {
        Self { n: f.n(), modulus: f.modulus_hex() }
    }
}

impl FieldJson {
    pub fn to_field(&self) -> Result<FieldSpec> {
        FieldSpec::with_modulus_hex(self.n, &self.modulus)
    }
}

impl From<&LinPoly> for LinPolyJson {
    fn from(l: &LinPoly) -> Self {
        Self { n: l.n(), modulus: l.field().modulus_hex(), coeffs: l.to_hex() }
    }
}

impl LinPolyJson {
    pub fn to_poly(&self) -> Result<LinPoly> {
        let f = FieldSpec::with_modulus_hex(self.n, &self.modulus)?;
        LinPoly::from_hex(&f, &self.coeffs)
    }
}

impl From<&SpecialPP> for SpecialJson {
    fn from(p: &SpecialPP) -> Self {
        Self { n: p.n(), modulus: p.field().modulus_hex(), a: p.a().to_hex() }
    }
}

impl SpecialJson {
    pub fn to_special(&self) -> Result<SpecialPP> {
        let f = FieldSpec::with_modulus_hex(self.n, &self.modulus)?;
        build_special(&f, &f.parse_element(&self.a)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_form() {
        let f = FieldSpec::new(3).unwrap();
        let j = FieldJson::from(&f);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"n":3,"modulus":"0xb"}"#);
        assert_eq!(j.to_field().unwrap(), f);
    }

    #[test]
    fn poly_and_special_forms() {
        let text = r#"{"n":3,"modulus":"0xb","coeffs":["0x6","0x3","0x4"]}"#;
        let j: LinPolyJson = serde_json::from_str(text).unwrap();
        let l = j.to_poly().unwrap();
        assert_eq!(serde_json::to_string(&LinPolyJson::from(&l)).unwrap(), text);

        let s: SpecialJson = serde_json::from_str(r#"{"n":3,"modulus":"0xb","a":"0x6"}"#).unwrap();
        let p = s.to_special().unwrap();
        assert_eq!(p.closed_inverse_b(), l);
        assert_eq!(SpecialJson::from(&p), s);
        let bad = SpecialJson { a: "0x3".into(), ..s };
        assert!(bad.to_special().is_err());
    }
}
