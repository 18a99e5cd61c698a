//! JSON instance documents.
//!
//! ```json
//! {
//!   "kind": "family",
//!   "dim": 1,
//!   "boxes": [[["0/1", "1/1"]], [["5/4", "3/1"]]],
//!   "meta": {}
//! }
//! ```
//!
//! Colour systems carry `"classes"` (a list of box lists) instead of
//! `"boxes"`; cluster instances carry `"points"`, `"extents"`, `"n"`,
//! `"epsilon"`, `"delta"` and optionally `"gamma"`. Rationals are strings in
//! `p/q` or finite decimal form; output always uses `p/q`. Interval checks
//! run while parsing, so errors carry the line and column.

use std::collections::BTreeMap;
use std::fmt;

use helly_core::clustering::{BaseBox, ClusterInstance};
use helly_core::{AxisBox, ColorSystem, Family, Interval, Point, Rational};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl fmt::Display) -> DocumentError {
    DocumentError::Invalid { field: field.into(), message: message.to_string() }
}

/// A rational on the wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireRational(pub Rational);

impl Serialize for WireRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for WireRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = WireRational;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string such as \"5/4\" or \"1.25\", or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<WireRational, E> {
                v.parse().map(WireRational).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<WireRational, E> {
                Ok(WireRational(Rational::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<WireRational, E> {
                i64::try_from(v).map(|v| WireRational(Rational::from(v))).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<WireRational, E> {
                Err(E::custom(format!("bare number {v} would be read through floating point; quote it")))
            }
        }
        d.deserialize_any(V)
    }
}

/// `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireInterval(pub Interval);

impl Serialize for WireInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (WireRational(self.0.lo().clone()), WireRational(self.0.hi().clone())).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WireInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = WireInterval;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an interval [lo, hi]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<WireInterval, A::Error> {
                let lo: WireRational = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let hi: WireRational = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::custom("an interval has exactly two endpoints"));
                }
                Interval::new(lo.0, hi.0).map(WireInterval).map_err(de::Error::custom)
            }
        }
        d.deserialize_seq(V)
    }
}

type WireBox = Vec<WireInterval>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Family,
    ColorSystem,
    ClusterInstance,
}

/// Flat wire form shared by every kind; unused fields are omitted.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    kind: Kind,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boxes: Option<Vec<WireBox>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<Vec<WireBox>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<Vec<WireRational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    extents: Option<Vec<WireRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epsilon: Option<WireRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<WireRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<WireRational>,
    #[serde(default)]
    meta: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    /// The dimension is kept separately because a family may be empty.
    Family {
        dim: usize,
        family: Family,
    },
    ColorSystem(ColorSystem),
    ClusterInstance(ClusterInstance),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub payload: Payload,
    pub meta: BTreeMap<String, serde_json::Value>,
}

fn to_box(dim: usize, field: &str, b: WireBox) -> Result<AxisBox, DocumentError> {
    if b.len() != dim {
        return Err(invalid(field, format!("box has {} sides, expected dim = {dim}", b.len())));
    }
    AxisBox::new(b.into_iter().map(|i| i.0).collect()).map_err(|e| invalid(field, e))
}

fn to_boxes(dim: usize, field: &str, boxes: Vec<WireBox>) -> Result<Vec<AxisBox>, DocumentError> {
    boxes.into_iter().enumerate().map(|(i, b)| to_box(dim, &format!("{field}[{i}]"), b)).collect()
}

fn from_box(b: &AxisBox) -> WireBox {
    b.sides().iter().cloned().map(WireInterval).collect()
}

fn required<T>(value: Option<T>, field: &str) -> Result<T, DocumentError> {
    value.ok_or_else(|| invalid(field, "missing"))
}

fn reject_present<T>(value: &Option<T>, field: &str, kind: &str) -> Result<(), DocumentError> {
    match value {
        Some(_) => Err(invalid(field, format!("not allowed in a {kind} document"))),
        None => Ok(()),
    }
}

impl Document {
    pub fn family(family: Family, dim: usize) -> Self {
        Document { payload: Payload::Family { dim, family }, meta: BTreeMap::new() }
    }

    pub fn color_system(c: ColorSystem) -> Self {
        Document { payload: Payload::ColorSystem(c), meta: BTreeMap::new() }
    }

    pub fn cluster_instance(inst: ClusterInstance) -> Self {
        Document { payload: Payload::ClusterInstance(inst), meta: BTreeMap::new() }
    }

    pub fn with_meta(mut self, key: &str, value: serde_json::Value) -> Self {
        self.meta.insert(key.to_owned(), value);
        self
    }

    pub fn dim(&self) -> usize {
        match &self.payload {
            Payload::Family { dim, .. } => *dim,
            Payload::ColorSystem(c) => c.dim(),
            Payload::ClusterInstance(inst) => inst.dim(),
        }
    }

    pub fn kind(&self) -> Kind {
        match &self.payload {
            Payload::Family { .. } => Kind::Family,
            Payload::ColorSystem(_) => Kind::ColorSystem,
            Payload::ClusterInstance(_) => Kind::ClusterInstance,
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let w: Wire = serde_json::from_str(text)?;
        if w.dim == 0 {
            return Err(invalid("dim", "must be at least 1"));
        }
        let dim = w.dim;
        let payload = match w.kind {
            Kind::Family => {
                reject_present(&w.classes, "classes", "family")?;
                reject_present(&w.points, "points", "family")?;
                let boxes = to_boxes(dim, "boxes", required(w.boxes, "boxes")?)?;
                let mut family = Family::new(boxes).map_err(|e| invalid("boxes", e))?;
                if let Some(labels) = w.labels {
                    family = family.with_labels(labels).map_err(|e| invalid("labels", e))?;
                }
                Payload::Family { dim, family }
            }
            Kind::ColorSystem => {
                reject_present(&w.boxes, "boxes", "color-system")?;
                reject_present(&w.labels, "labels", "color-system")?;
                reject_present(&w.points, "points", "color-system")?;
                let classes = required(w.classes, "classes")?
                    .into_iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let boxes = to_boxes(dim, &format!("classes[{k}]"), c)?;
                        Family::new(boxes).map_err(|e| invalid(format!("classes[{k}]"), e))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Payload::ColorSystem(ColorSystem::new(classes).map_err(|e| invalid("classes", e))?)
            }
            Kind::ClusterInstance => {
                reject_present(&w.boxes, "boxes", "cluster-instance")?;
                reject_present(&w.classes, "classes", "cluster-instance")?;
                let extents: Vec<Rational> = required(w.extents, "extents")?.into_iter().map(|r| r.0).collect();
                if extents.len() != dim {
                    return Err(invalid("extents", format!("{} extents for dim = {dim}", extents.len())));
                }
                let base = BaseBox::new(extents).map_err(|e| invalid("extents", e))?;
                let points = required(w.points, "points")?
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| {
                        if p.len() != dim {
                            return Err(invalid(
                                format!("points[{i}]"),
                                format!("{} coordinates for dim = {dim}", p.len()),
                            ));
                        }
                        Ok(Point(p.into_iter().map(|r| r.0).collect()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let inst = ClusterInstance::new(
                    points,
                    base,
                    required(w.n, "n")?,
                    required(w.epsilon, "epsilon")?.0,
                    required(w.delta, "delta")?.0,
                    w.gamma.map(|g| g.0),
                )
                .map_err(|e| invalid("cluster-instance", e))?;
                Payload::ClusterInstance(inst)
            }
        };
        Ok(Document { payload, meta: w.meta })
    }

    fn to_wire(&self) -> Wire {
        let mut w = Wire {
            kind: self.kind(),
            dim: self.dim(),
            labels: None,
            boxes: None,
            classes: None,
            points: None,
            extents: None,
            n: None,
            epsilon: None,
            delta: None,
            gamma: None,
            meta: self.meta.clone(),
        };
        match &self.payload {
            Payload::Family { family, .. } => {
                w.labels = family.labels().map(<[String]>::to_vec);
                w.boxes = Some(family.boxes().iter().map(from_box).collect());
            }
            Payload::ColorSystem(c) => {
                w.classes = Some(c.classes().iter().map(|f| f.boxes().iter().map(from_box).collect()).collect());
            }
            Payload::ClusterInstance(inst) => {
                w.points =
                    Some(inst.points.iter().map(|p| p.coords().iter().cloned().map(WireRational).collect()).collect());
                w.extents = Some(inst.base.extents().iter().cloned().map(WireRational).collect());
                w.n = Some(inst.n);
                w.epsilon = Some(WireRational(inst.epsilon.clone()));
                w.delta = Some(WireRational(inst.delta.clone()));
                w.gamma = inst.gamma.clone().map(WireRational);
            }
        }
        w
    }

    /// Canonical text: pretty JSON, fixed key order, `p/q` rationals,
    /// trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_wire()).expect("documents always serialize");
        s.push('\n');
        s
    }
}
