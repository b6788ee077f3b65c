//! JSON file formats for groups, racks, G-families, MGRs, cocycles and
//! fixtures.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, MoveSpec};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::mgr::{CocycleData, MultipleGroupRack};
use crate::rack::{GFamily, Rack};

/// Version of every file format read or written here.
pub const SCHEMA_VERSION: u32 = 1;

pub fn schema_versions() -> BTreeMap<&'static str, u32> {
    [
        "group", "rack", "gfamily", "mgr", "cocycle", "diagram", "move", "move_fixture",
        "sum_fixture",
    ]
    .into_iter()
    .map(|k| (k, SCHEMA_VERSION))
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> GroupFile {
        GroupFile {
            order: g.order(),
            table: g.table_rows(),
            identity: g.identity(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }

    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.order != self.table.len() {
            return Err(Error::Format(format!(
                "order {} but table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        FiniteGroup::from_table(self.table, self.identity, self.labels)
    }
}

/// A group given inline or by name: `"S3"`, `"Z<n>"` or `"trivial"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Builtin { builtin: String },
    Inline(GroupFile),
}

impl GroupRef {
    pub fn resolve(self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Inline(g) => g.into_group(),
            GroupRef::Builtin { builtin } => builtin_group(&builtin),
        }
    }
}

pub fn builtin_group(name: &str) -> Result<FiniteGroup> {
    match name {
        "S3" => Ok(FiniteGroup::s3_presented()),
        "trivial" => Ok(FiniteGroup::trivial()),
        _ => match name.strip_prefix('Z').map(str::parse::<usize>) {
            Some(Ok(n)) if n > 0 => Ok(FiniteGroup::cyclic(n)),
            _ => Err(Error::Format(format!("unknown builtin group {name:?}"))),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RackFile {
    pub size: usize,
    pub op: Vec<Vec<usize>>,
}

impl RackFile {
    pub fn from_rack(r: &Rack) -> RackFile {
        RackFile {
            size: r.size(),
            op: r.table_rows(),
        }
    }

    pub fn into_rack(self) -> Result<Rack> {
        if self.size != self.op.len() {
            return Err(Error::Format(format!(
                "size {} but table has {} rows",
                self.size,
                self.op.len()
            )));
        }
        Rack::from_table(&self.op)
    }
}

/// Operation tables keyed by group element, as a decimal index or a label.
/// Elements without an entry use `default`, which is then required.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GFamilyFile {
    pub carrier: usize,
    pub group: GroupRef,
    #[serde(default)]
    pub ops: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<Vec<Vec<usize>>>,
}

impl GFamilyFile {
    pub fn from_family(f: &GFamily) -> GFamilyFile {
        GFamilyFile {
            carrier: f.carrier(),
            group: GroupRef::Inline(GroupFile::from_group(f.group())),
            ops: f
                .tables()
                .into_iter()
                .enumerate()
                .map(|(g, t)| (g.to_string(), t))
                .collect(),
            default: None,
        }
    }

    pub fn into_family(self) -> Result<GFamily> {
        let group = self.group.resolve()?;
        let mut tables: Vec<Option<Vec<Vec<usize>>>> = vec![None; group.order()];
        for (key, t) in self.ops {
            let g = match key.parse::<usize>() {
                Ok(g) if g < group.order() => g,
                _ => group
                    .find(&key)
                    .ok_or_else(|| Error::Format(format!("unknown group element {key:?}")))?,
            };
            if tables[g].replace(t).is_some() {
                return Err(Error::Format(format!("two tables for group element {g}")));
            }
        }
        let tables = tables
            .into_iter()
            .enumerate()
            .map(|(g, t)| {
                t.or_else(|| self.default.clone()).ok_or_else(|| {
                    Error::Format(format!("no table for group element {g} and no default"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GFamily::new(self.carrier, group, &tables)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MgrFile {
    pub components: Vec<GroupFile>,
    pub star: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl MgrFile {
    pub fn from_mgr(m: &MultipleGroupRack) -> MgrFile {
        MgrFile {
            components: m.components().iter().map(GroupFile::from_group).collect(),
            star: m.star_rows(),
            labels: m.labels().map(|l| l.to_vec()),
        }
    }

    /// Builds the MGR after shape checks; the axioms are not checked here.
    pub fn into_mgr(self) -> Result<MultipleGroupRack> {
        let comps = self
            .components
            .into_iter()
            .map(GroupFile::into_group)
            .collect::<Result<Vec<_>>>()?;
        MultipleGroupRack::from_parts(comps, &self.star, self.labels)
    }
}

/// `rack[x][y] = f⟨x⟩⟨y⟩` over all elements, `group[λ][i][j] = f⟨i, j⟩`
/// over local indices of component `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleFile {
    pub target: GroupRef,
    pub rack: Vec<Vec<usize>>,
    pub group: Vec<Vec<Vec<usize>>>,
}

fn flatten_square(t: Vec<Vec<usize>>, what: &str) -> Result<Vec<usize>> {
    let n = t.len();
    if t.iter().any(|r| r.len() != n) {
        return Err(Error::Format(format!("{what} table is not square")));
    }
    Ok(t.into_iter().flatten().collect())
}

impl CocycleFile {
    pub fn into_cocycle(self) -> Result<CocycleData> {
        let target = self.target.resolve()?;
        let rack = flatten_square(self.rack, "cocycle rack")?;
        let group = self
            .group
            .into_iter()
            .map(|t| flatten_square(t, "cocycle group"))
            .collect::<Result<Vec<_>>>()?;
        CocycleData::new(target, rack, group)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveFixture {
    pub before: Diagram,
    #[serde(rename = "move")]
    pub mv: MoveSpec,
    pub after: Diagram,
}

/// A diagram with a marked arc; `semidirect_star` is the expected outcome
/// of the marked-arc check for the 108-element semidirect MGR, when known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumFixture {
    pub diagram: Diagram,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semidirect_star: Option<bool>,
}

#[derive(Debug, Clone)]
pub enum Structure {
    Group(FiniteGroup),
    Rack(Rack),
    GFamily(GFamily),
    Mgr(MultipleGroupRack),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Group(_) => "group",
            Structure::Rack(_) => "rack",
            Structure::GFamily(_) => "gfamily",
            Structure::Mgr(_) => "mgr",
        }
    }
}

/// Reads any structure file, telling the kinds apart by their keys.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    let has = |k: &str| v.get(k).is_some();
    if has("components") {
        Ok(Structure::Mgr(serde_json::from_value::<MgrFile>(v)?.into_mgr()?))
    } else if has("carrier") {
        Ok(Structure::GFamily(serde_json::from_value::<GFamilyFile>(v)?.into_family()?))
    } else if has("size") {
        Ok(Structure::Rack(serde_json::from_value::<RackFile>(v)?.into_rack()?))
    } else if has("order") {
        Ok(Structure::Group(serde_json::from_value::<GroupFile>(v)?.into_group()?))
    } else {
        Err(Error::Format(
            "unrecognised structure: expected a group, rack, G-family or MGR file".into(),
        ))
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
