//! JSON interchange formats.
//!
//! Integers are JSON numbers when they fit in 64 bits and decimal strings
//! otherwise; both spellings are accepted on input. Indices are 1-based.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{AbelianGroup, ElementCollection, GroupElement, Link};
use crate::classify::{ClassificationReport, GSet, RankOneType, SemisimpleShape};
use crate::error::{Error, Result};
use crate::fans::{DemazureRoot, SimplicialFan, VectorConfiguration};
use crate::gale::LinearGale;
use crate::index_set::{IndexSet, MAX_INDEX};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
        v.trim()
            .parse::<BigInt>()
            .map(JsonInt)
            .map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

fn bigs(v: Vec<JsonInt>) -> Vec<BigInt> {
    v.into_iter().map(|x| x.0).collect()
}

/// An integer when the denominator is one, otherwise `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub BigRational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            JsonInt(self.0.numer().clone()).serialize(s)
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<JsonInt>,
}

/// Either `{free, torsion}` or the flat coordinate list, free part first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Parts {
        #[serde(default)]
        free: Vec<JsonInt>,
        #[serde(default)]
        torsion: Vec<JsonInt>,
    },
    Flat(Vec<JsonInt>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub group: GroupJson,
    pub collection: Vec<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub rank: usize,
    pub vectors: Vec<Vec<JsonInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub config: ConfigJson,
    pub cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetJson {
    pub group: GroupJson,
    pub collection: Vec<ElementJson>,
    pub members: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootJson {
    pub covector: Vec<JsonInt>,
    pub distinguished_ray: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkJson {
    pub target: usize,
    pub support: Vec<usize>,
    pub coefficients: Vec<JsonInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearGaleJson {
    pub dim: usize,
    pub vectors: Vec<Vec<JsonRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeJson {
    pub is_shape: bool,
    pub groups: Vec<Vec<usize>>,
    pub coincides_with_maximal: bool,
    pub gset: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    pub affine: bool,
    pub complete: bool,
    pub quasiaffine: bool,
    pub product_decomposition: Vec<Vec<usize>>,
    pub rank_one_type: Option<u8>,
    pub weighted_projective_regular: Option<bool>,
    pub semisimple_shape: ShapeJson,
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn encode_group(g: &AbelianGroup) -> GroupJson {
    GroupJson {
        free_rank: g.free_rank(),
        torsion: ints(g.torsion()),
    }
}

pub fn decode_group(g: GroupJson) -> Result<AbelianGroup> {
    AbelianGroup::new(g.free_rank, bigs(g.torsion))
}

pub fn encode_element(e: &GroupElement) -> ElementJson {
    ElementJson::Parts {
        free: ints(e.free()),
        torsion: ints(e.torsion()),
    }
}

pub fn decode_element(group: &Arc<AbelianGroup>, e: ElementJson) -> Result<GroupElement> {
    match e {
        ElementJson::Parts { free, torsion } => GroupElement::new(group, bigs(free), bigs(torsion)),
        ElementJson::Flat(coords) => GroupElement::from_coords(group, &bigs(coords)),
    }
}

pub fn encode_pair(coll: &ElementCollection) -> PairJson {
    PairJson {
        group: encode_group(coll.group()),
        collection: coll.elements().iter().map(encode_element).collect(),
    }
}

fn decode_collection(group: GroupJson, elements: Vec<ElementJson>) -> Result<ElementCollection> {
    let group = Arc::new(decode_group(group)?);
    let elements = elements
        .into_iter()
        .map(|e| decode_element(&group, e))
        .collect::<Result<Vec<_>>>()?;
    ElementCollection::new(group, elements)
}

pub fn decode_pair(p: PairJson) -> Result<ElementCollection> {
    decode_collection(p.group, p.collection)
}

pub fn encode_config(c: &VectorConfiguration) -> ConfigJson {
    ConfigJson {
        rank: c.rank(),
        vectors: c.vectors().iter().map(|v| ints(v)).collect(),
    }
}

pub fn decode_config(c: ConfigJson) -> Result<VectorConfiguration> {
    VectorConfiguration::new(c.rank, c.vectors.into_iter().map(bigs).collect())
}

/// 1-based indices.
pub fn encode_index_set(s: IndexSet) -> Vec<usize> {
    s.to_one_based()
}

/// Reads 1-based indices, each at most `size`.
pub fn decode_index_set(v: &[usize], size: usize) -> Result<IndexSet> {
    let mut s = IndexSet::EMPTY;
    for &i in v {
        if i == 0 || i > size || i > MAX_INDEX {
            return Err(Error::IndexOutOfRange { index: i, size });
        }
        s = s.with(i - 1);
    }
    Ok(s)
}

pub fn encode_fan(f: &SimplicialFan) -> FanJson {
    FanJson {
        config: encode_config(f.config()),
        cones: f.cones().iter().map(|c| encode_index_set(*c)).collect(),
    }
}

pub fn decode_fan(f: FanJson) -> Result<SimplicialFan> {
    let config = decode_config(f.config)?;
    let r = config.len();
    let cones = f
        .cones
        .iter()
        .map(|c| decode_index_set(c, r))
        .collect::<Result<Vec<_>>>()?;
    SimplicialFan::new(config, cones)
}

pub fn encode_gset(g: &GSet) -> GSetJson {
    let pair = encode_pair(g.collection());
    GSetJson {
        group: pair.group,
        collection: pair.collection,
        members: g.members().iter().map(|m| encode_index_set(*m)).collect(),
    }
}

pub fn decode_gset(g: GSetJson) -> Result<GSet> {
    let coll = decode_collection(g.group, g.collection)?;
    let r = coll.len();
    let members = g
        .members
        .iter()
        .map(|m| decode_index_set(m, r))
        .collect::<Result<Vec<_>>>()?;
    GSet::new(coll, members)
}

pub fn encode_root(root: &DemazureRoot) -> RootJson {
    RootJson {
        covector: ints(&root.covector),
        distinguished_ray: root.distinguished_ray + 1,
    }
}

pub fn decode_root(root: RootJson) -> Result<DemazureRoot> {
    if root.distinguished_ray == 0 {
        return Err(Error::Parse("distinguished_ray is 1-based".into()));
    }
    Ok(DemazureRoot {
        covector: bigs(root.covector),
        distinguished_ray: root.distinguished_ray - 1,
    })
}

pub fn encode_link(link: &Link) -> LinkJson {
    LinkJson {
        target: link.target + 1,
        support: encode_index_set(link.support),
        coefficients: ints(&link.coefficients),
    }
}

pub fn encode_linear_gale(g: &LinearGale) -> LinearGaleJson {
    LinearGaleJson {
        dim: g.dim,
        vectors: g
            .vectors
            .iter()
            .map(|v| v.iter().cloned().map(JsonRational).collect())
            .collect(),
    }
}

pub fn encode_shape(s: &SemisimpleShape) -> ShapeJson {
    ShapeJson {
        is_shape: s.is_shape,
        groups: s.groups.iter().map(|g| encode_index_set(*g)).collect(),
        coincides_with_maximal: s.coincides_with_maximal,
        gset: s
            .gset
            .as_ref()
            .map(|g| g.members().iter().map(|m| encode_index_set(*m)).collect()),
    }
}

pub fn encode_report(r: &ClassificationReport) -> ReportJson {
    ReportJson {
        affine: r.affine,
        complete: r.complete,
        quasiaffine: r.quasiaffine,
        product_decomposition: r
            .product_decomposition
            .iter()
            .map(|p| encode_index_set(*p))
            .collect(),
        rank_one_type: r.rank_one_type.map(RankOneType::number),
        weighted_projective_regular: match r.rank_one_type {
            Some(RankOneType::Positive { z_reg }) => Some(z_reg),
            _ => None,
        },
        semisimple_shape: encode_shape(&r.semisimple_shape),
    }
}
