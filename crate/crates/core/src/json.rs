//! JSON input and output schemas shared by the command-line front end.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::burnside::{BurnsideElementJson, BurnsideRing};
use crate::error::{Error, Result};
use crate::f1::{FiniteModule, MonoidRef, PointedMonoid};
use crate::group::{named_group, parse_cycles, FiniteGroup};
use crate::gtheory::AbelianGroupReport;
use crate::mackey::MackeyReport;

/// A group given by library name, by Cayley table (0-based, the identity
/// found automatically) or by permutation generators in cycle notation on
/// the 1-based points `1..=degree`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

impl GroupJson {
    pub fn named(name: &str) -> Self {
        Self {
            name: Some(name.to_string()),
            ..Self::default()
        }
    }

    /// The table form of `g`, which rebuilds to an equal group.
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self {
            name: g.name().map(str::to_string),
            order: Some(g.order()),
            cayley: Some(g.cayley().to_vec()),
            labels: g.labels().map(<[String]>::to_vec),
            generators: None,
            degree: None,
        }
    }

    pub fn build(&self, order_cap: usize) -> Result<FiniteGroup> {
        let g = match (&self.cayley, &self.generators) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidInput(
                    "give either \"cayley\" or \"generators\", not both".into(),
                ))
            }
            (Some(table), None) => {
                if table.len() > order_cap {
                    return Err(Error::CapExceeded {
                        what: format!("group order {}", table.len()),
                        cap: order_cap,
                    });
                }
                if let Some(n) = self.order {
                    if n != table.len() {
                        return Err(Error::InvalidInput(format!(
                            "order {n} does not match a {}-row table",
                            table.len()
                        )));
                    }
                }
                FiniteGroup::from_table(table.clone(), self.labels.clone())?
            }
            (None, Some(gens)) => {
                let degree = self
                    .degree
                    .ok_or_else(|| Error::InvalidInput("\"generators\" needs \"degree\"".into()))?;
                let perms = gens
                    .iter()
                    .map(|c| parse_cycles(c, degree))
                    .collect::<Result<Vec<_>>>()?;
                let g = FiniteGroup::from_permutations(degree, &perms, order_cap)?;
                if let Some(n) = self.order {
                    if n != g.order() {
                        return Err(Error::InvalidInput(format!(
                            "generators give order {}, not {n}",
                            g.order()
                        )));
                    }
                }
                g
            }
            (None, None) => {
                let name = self.name.as_deref().ok_or_else(|| {
                    Error::InvalidInput("group needs \"name\", \"cayley\" or \"generators\"".into())
                })?;
                let g = named_group(name)?;
                if let Some(n) = self.order {
                    if n != g.order() {
                        return Err(Error::InvalidInput(format!(
                            "{name} has order {}, not {n}",
                            g.order()
                        )));
                    }
                }
                if g.order() > order_cap {
                    return Err(Error::CapExceeded {
                        what: format!("group order {}", g.order()),
                        cap: order_cap,
                    });
                }
                return Ok(g);
            }
        };
        Ok(match &self.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }
}

/// `{"size", "mul", "labels"?}`; index 0 is the zero and 1 the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub size: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl MonoidJson {
    pub fn from_monoid(m: &PointedMonoid) -> Self {
        Self {
            size: m.size(),
            mul: m.table().to_vec(),
            labels: m.labels().map(<[String]>::to_vec),
        }
    }

    pub fn build(&self) -> Result<MonoidRef> {
        if self.mul.len() != self.size {
            return Err(Error::InvalidInput(format!(
                "size {} does not match a {}-row table",
                self.size,
                self.mul.len()
            )));
        }
        PointedMonoid::new(self.mul.clone(), self.labels.clone())
    }
}

/// A monoid inline, or `{"group": ...}` for the group monoid `G_+`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidSource {
    Group { group: GroupJson },
    Table(MonoidJson),
}

impl MonoidSource {
    pub fn build(&self, order_cap: usize) -> Result<MonoidRef> {
        match self {
            MonoidSource::Group { group } => Ok(PointedMonoid::group_monoid(&Arc::new(
                group.build(order_cap)?,
            ))),
            MonoidSource::Table(t) => t.build(),
        }
    }
}

/// `{"monoid"?, "size", "action"}` with `action[s][m] = s * m`. Without a
/// monoid the caller supplies the group monoid of the command's group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<MonoidSource>,
    pub size: usize,
    pub action: Vec<Vec<usize>>,
}

impl ModuleJson {
    pub fn from_module(s: &FiniteModule) -> Self {
        Self {
            monoid: Some(MonoidSource::Table(MonoidJson::from_monoid(s.monoid()))),
            size: s.size(),
            action: s.action().to_vec(),
        }
    }

    pub fn build(
        &self,
        default_monoid: Option<&MonoidRef>,
        order_cap: usize,
    ) -> Result<FiniteModule> {
        let monoid = match (&self.monoid, default_monoid) {
            (Some(src), _) => src.build(order_cap)?,
            (None, Some(m)) => m.clone(),
            (None, None) => return Err(Error::InvalidInput("module needs \"monoid\"".into())),
        };
        if self.action.len() != self.size {
            return Err(Error::InvalidInput(format!(
                "size {} does not match {} action rows",
                self.size,
                self.action.len()
            )));
        }
        FiniteModule::new(monoid, self.action.clone())
    }
}

/// `{"group", "element", "k"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaRequest {
    pub group: GroupJson,
    pub element: BurnsideElementJson,
    pub k: usize,
}

/// `{"group"?, "labels", "marks"}`, rows and columns in canonical class
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarksJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub labels: Vec<String>,
    pub marks: Vec<Vec<i64>>,
}

impl MarksJson {
    pub fn from_ring(ring: &BurnsideRing) -> Self {
        Self {
            group: ring.group().name().map(str::to_string),
            labels: ring.labels(),
            marks: ring.marks().entries.clone(),
        }
    }
}

/// One row of the `subgroups` listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupClassJson {
    pub label: String,
    pub order: usize,
    pub class_size: usize,
    pub representative: Vec<usize>,
    pub weyl_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub order: usize,
    pub classes: Vec<SubgroupClassJson>,
}

impl SubgroupsJson {
    pub fn from_ring(ring: &BurnsideRing) -> Self {
        let labels = ring.labels();
        let diag = ring.marks().diagonal();
        let classes = ring
            .classes()
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| SubgroupClassJson {
                label: labels[i].clone(),
                order: c.order(),
                class_size: c.len(),
                representative: c.representative().elements().to_vec(),
                weyl_order: diag[i] as usize,
            })
            .collect();
        Self {
            group: ring.group().name().map(str::to_string),
            order: ring.group().order(),
            classes,
        }
    }
}

/// Output of `burnside-mul`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    pub x: BurnsideElementJson,
    pub y: BurnsideElementJson,
    pub product: BurnsideElementJson,
}

/// Output of `decompose`: the class of a pointed G-set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub size: usize,
    pub element: BurnsideElementJson,
}

/// Output of `lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaResultJson {
    pub k: usize,
    pub element: BurnsideElementJson,
    pub result: BurnsideElementJson,
}

/// Output of `diamond`: the pointed G-set of ordered `k`-tuples with
/// distinct entries, plus its class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondJson {
    pub k: usize,
    pub input_size: usize,
    pub size: usize,
    pub decomposition: BurnsideElementJson,
}

/// Output of `g0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G0Json {
    pub size_bound: usize,
    pub generators: Vec<String>,
    pub relations: usize,
    pub report: AbelianGroupReport,
}

/// Output of `wh0`: the image of the free orbit and the cokernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wh0Json {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub provenance: String,
    pub cartan_image: BurnsideElementJson,
}

/// Output of `simple-factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleFactorsJson {
    pub q: u64,
    pub count: usize,
    pub conjugacy_classes: usize,
}

/// Output of `mackey-check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MackeyCheckJson {
    pub group: String,
    pub seed: u64,
    pub reports: Vec<MackeyReport>,
}
