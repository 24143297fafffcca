//! File formats: group and automorphism input, JSON report payloads.

use crate::actions::ActionSpec;
use crate::blocks::BlockSet;
use crate::chartable::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Group input: 1-based cycle strings over a fixed degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

impl GroupFile {
    pub fn to_group(&self) -> Result<PermGroup> {
        let gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|s| Perm::parse_cycles(s, self.degree))
            .collect::<Result<_>>()?;
        match self.order {
            Some(o) => PermGroup::from_generators_with_order(self.degree, gens, o as u128),
            None => PermGroup::from_generators(self.degree, gens),
        }
    }

    pub fn from_group(g: &PermGroup) -> GroupFile {
        GroupFile {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.cycle_string()).collect(),
            order: Some(g.order_u64()),
        }
    }
}

pub fn read_group(path: &Path) -> Result<PermGroup> {
    let text = std::fs::read_to_string(path)?;
    let gf: GroupFile = serde_json::from_str(&text)
        .map_err(|e| Error::ConfigParse(format!("{}: {e}", path.display())))?;
    gf.to_group()
}

/// Automorphism input: per automorphism, one cycle string per group
/// generator (in the group file's generator order).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutomorphismFile {
    pub images: Vec<Vec<String>>,
}

impl AutomorphismFile {
    pub fn to_action(&self, g: &PermGroup) -> Result<ActionSpec> {
        let mut maps = Vec::with_capacity(self.images.len());
        for images in &self.images {
            if images.len() != g.generators().len() {
                return Err(Error::NotAnAutomorphism(format!(
                    "expected {} generator images, file provides {}",
                    g.generators().len(),
                    images.len()
                )));
            }
            maps.push(
                images
                    .iter()
                    .map(|s| Perm::parse_cycles(s, g.degree()))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        ActionSpec::new(g, maps)
    }
}

pub fn read_action(path: &Path, g: &PermGroup) -> Result<ActionSpec> {
    let text = std::fs::read_to_string(path)?;
    let af: AutomorphismFile = serde_json::from_str(&text)
        .map_err(|e| Error::ConfigParse(format!("{}: {e}", path.display())))?;
    af.to_action(g)
}

/// Conductor-n integer-vector encoding of a cyclotomic value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CycExport {
    pub conductor: u64,
    pub coeffs: Vec<String>,
    pub den: String,
}

impl CycExport {
    pub fn from_value(v: &Cyclotomic) -> CycExport {
        let c = v.canonical();
        CycExport {
            conductor: c.conductor(),
            coeffs: c.numerators().iter().map(|x| x.to_string()).collect(),
            den: c.denominator().to_string(),
        }
    }
}

/// Character table export with stable ordering.
#[derive(Debug, Clone, Serialize)]
pub struct TableExport {
    pub order: u64,
    pub num_classes: usize,
    pub class_sizes: Vec<u64>,
    pub class_rep_orders: Vec<u64>,
    pub class_reps: Vec<String>,
    pub degrees: Vec<u64>,
    pub characters: Vec<Vec<CycExport>>,
}

pub fn export_table(table: &CharacterTable) -> Result<TableExport> {
    let g = table.group();
    let cls = g.conjugacy_classes()?;
    Ok(TableExport {
        order: g.order_u64(),
        num_classes: cls.count(),
        class_sizes: cls.sizes().to_vec(),
        class_rep_orders: cls.rep_orders().to_vec(),
        class_reps: (0..cls.count()).map(|c| cls.rep(c).cycle_string()).collect(),
        degrees: table.degrees().to_vec(),
        characters: table
            .characters()
            .iter()
            .map(|chi| chi.values().iter().map(CycExport::from_value).collect())
            .collect(),
    })
}

/// Block report: members, defect data and the reduced central character.
#[derive(Debug, Clone, Serialize)]
pub struct BlockExport {
    pub members: Vec<usize>,
    pub member_degrees: Vec<u64>,
    pub defect: u32,
    pub defect_group_orders: Vec<u64>,
    pub defect_group_generators: Vec<Vec<String>>,
    pub lambda_star: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockSetExport {
    pub p: u64,
    pub field: String,
    pub blocks: Vec<BlockExport>,
}

pub fn export_blocks(blocks: &BlockSet) -> BlockSetExport {
    let field = blocks.reduction().field();
    BlockSetExport {
        p: blocks.p(),
        field: format!("GF({}^{})", field.p(), field.degree()),
        blocks: blocks
            .blocks()
            .iter()
            .map(|b| BlockExport {
                members: b.members().to_vec(),
                member_degrees: b
                    .members()
                    .iter()
                    .map(|&c| blocks.table().degree(c))
                    .collect(),
                defect: b.defect(),
                defect_group_orders: b
                    .defect_groups()
                    .iter()
                    .map(|d| d.order() as u64)
                    .collect(),
                defect_group_generators: b
                    .defect_groups()
                    .iter()
                    .map(|d| d.generators().iter().map(|p| p.cycle_string()).collect())
                    .collect(),
                lambda_star: b.lambda_star().iter().map(|e| field.render(*e)).collect(),
            })
            .collect(),
    }
}
