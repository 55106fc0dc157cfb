//! Re-verifiable collision certificates and their JSON form.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::{DensePoly, FieldElement, FieldSpec};
use crate::msg::{emit_rle, parse_rle, Message};
use crate::sl2::Mat2;
use crate::tz::{tz_hash, TzParams};
use crate::zemor::{hash as zemor_hash, ZemorParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    /// Two words with the same diagonal Zémor hash.
    DiagonalPair,
    /// A Zémor word hashing to the identity, paired with the empty word.
    IdentityWord,
    /// Two Tillich-Zémor words related through generator powers.
    PowerRelation,
}

impl CertKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertKind::DiagonalPair => "diagonal-pair",
            CertKind::IdentityWord => "identity-word",
            CertKind::PowerRelation => "power-relation",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "diagonal-pair" => Ok(CertKind::DiagonalPair),
            "identity-word" => Ok(CertKind::IdentityWord),
            "power-relation" => Ok(CertKind::PowerRelation),
            other => Err(Error::CertificateInvalid(format!("unknown kind {other:?}"))),
        }
    }

    /// Zémor kinds hash with `(1 α; 0 1), (1 0; β 1)`, the power relation
    /// with `(α 1; 1 0), (β 1; 1 0)`.
    pub fn is_zemor(self) -> bool {
        self != CertKind::PowerRelation
    }
}

/// Two distinct messages with one hash value. Construction and parsing both
/// recompute the hashes, so a value of this type is always a real collision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionCertificate {
    kind: CertKind,
    alpha: FieldElement,
    beta: FieldElement,
    z1: Message,
    z2: Message,
    hash: Mat2,
}

impl CollisionCertificate {
    pub fn new(kind: CertKind, alpha: FieldElement, beta: FieldElement, z1: Message, z2: Message) -> Result<Self> {
        if !FieldSpec::same(alpha.spec(), beta.spec()) {
            return Err(Error::SpecMismatch);
        }
        let h1 = hash_for(kind, &alpha, &beta, &z1)?;
        let cert = Self { kind, alpha, beta, z1, z2, hash: h1 };
        cert.verify()?;
        Ok(cert)
    }

    pub fn kind(&self) -> CertKind {
        self.kind
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.alpha.spec()
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn z1(&self) -> &Message {
        &self.z1
    }

    pub fn z2(&self) -> &Message {
        &self.z2
    }

    pub fn hash(&self) -> &Mat2 {
        &self.hash
    }

    /// Recomputes both hashes and compares them with the stored value.
    pub fn verify(&self) -> Result<()> {
        if self.z1 == self.z2 {
            return Err(Error::DegenerateEqualMessages);
        }
        let h1 = hash_for(self.kind, &self.alpha, &self.beta, &self.z1)?;
        let h2 = hash_for(self.kind, &self.alpha, &self.beta, &self.z2)?;
        if h1 != self.hash {
            return Err(Error::CertificateInvalid("H(z1) differs from the recorded hash".into()));
        }
        if h2 != self.hash {
            return Err(Error::CertificateInvalid("H(z2) differs from the recorded hash".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let spec = self.spec();
        json!({
            "kind": self.kind.as_str(),
            "field": {
                "p": spec.p(),
                "k": spec.k(),
                "mod": spec.modulus().coeffs(),
            },
            "alpha": self.alpha.coeffs(),
            "beta": self.beta.coeffs(),
            "z1_rle": emit_rle(&self.z1),
            "z2_rle": emit_rle(&self.z2),
            "hash": self.hash.to_json(),
            "verified": true,
        })
    }

    /// Parses and re-verifies a certificate.
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::CertificateInvalid(msg.to_string());
        let kind = CertKind::parse(value["kind"].as_str().ok_or_else(|| bad("missing kind"))?)?;
        let field = &value["field"];
        let p = field["p"].as_u64().ok_or_else(|| bad("missing field.p"))?;
        let k = field["k"].as_u64().ok_or_else(|| bad("missing field.k"))? as usize;
        let modulus = coeff_array(&field["mod"]).ok_or_else(|| bad("missing field.mod"))?;
        let spec = if modulus == [0, 1] {
            FieldSpec::prime(p)?
        } else {
            FieldSpec::new(p, DensePoly::new(p, modulus))?
        };
        if spec.k() != k {
            return Err(bad("field.k disagrees with the modulus degree"));
        }
        let element = |key: &str| -> Result<FieldElement> {
            let coeffs = coeff_array(&value[key]).ok_or_else(|| bad(&format!("missing {key}")))?;
            if coeffs.len() > k || coeffs.iter().any(|&c| c >= p) {
                return Err(bad(&format!("{key} is not a reduced field element")));
            }
            Ok(spec.from_coeffs(&coeffs))
        };
        let alpha = element("alpha")?;
        let beta = element("beta")?;
        let z1 = parse_rle(value["z1_rle"].as_str().ok_or_else(|| bad("missing z1_rle"))?)?;
        let z2 = parse_rle(value["z2_rle"].as_str().ok_or_else(|| bad("missing z2_rle"))?)?;
        let hash = Mat2::from_json(&spec, &value["hash"])?;
        let cert = Self { kind, alpha, beta, z1, z2, hash };
        cert.verify()?;
        Ok(cert)
    }
}

/// Parses a certificate from JSON text and re-verifies it.
pub fn verify_json(text: &str) -> Result<CollisionCertificate> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::CertificateInvalid(format!("malformed JSON: {e}")))?;
    CollisionCertificate::from_json(&value)
}

fn coeff_array(v: &Value) -> Option<Vec<u64>> {
    v.as_array()?.iter().map(Value::as_u64).collect()
}

fn hash_for(kind: CertKind, alpha: &FieldElement, beta: &FieldElement, m: &Message) -> Result<Mat2> {
    if kind.is_zemor() {
        let zp = ZemorParams::new(alpha.clone(), beta.clone())?;
        Ok(zemor_hash(&zp, m))
    } else {
        let tp = TzParams::new(alpha.clone(), beta.clone())?;
        Ok(tz_hash(&tp, m))
    }
}
