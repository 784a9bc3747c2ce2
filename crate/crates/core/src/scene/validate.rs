use serde::{Deserialize, Serialize};

use super::raster::RasterScene;
use super::spec::CurveRole;
use crate::grid::Element;
use crate::permgroup::Permutation;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Trivial,
    FrameWettingOptional,
    FrameWettingForced,
    Wire,
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ElementRecord {
    pub element: Element,
    pub monodromy: Permutation,
    pub class: Classification,
    /// Set on wire elements whose monodromy moves the Dirichlet sheet.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub warning: bool,
}

/// Monodromy records for every marked element and every inconsistent one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub scene: String,
    pub status: Status,
    pub records: Vec<ElementRecord>,
}

impl ValidationReport {
    pub fn count(&self, class: Classification) -> usize {
        self.records.iter().filter(|r| r.class == class).count()
    }

    pub fn record(&self, e: Element) -> Option<&ElementRecord> {
        self.records
            .binary_search_by(|r| r.element.cmp(&e))
            .ok()
            .map(|i| &self.records[i])
    }

    pub fn inconsistent(&self) -> impl Iterator<Item = &ElementRecord> {
        self.records
            .iter()
            .filter(|r| r.class == Classification::Inconsistent)
    }
}

fn classify(mark: Option<CurveRole>, p: &Permutation, dirichlet: usize) -> (Classification, bool) {
    match mark {
        None if p.is_identity() => (Classification::Trivial, false),
        None => (Classification::Inconsistent, false),
        Some(CurveRole::InvisibleWire) => (Classification::Wire, !p.fixes(dirichlet)),
        Some(CurveRole::Boundary) if p.is_identity() => (Classification::Trivial, false),
        Some(CurveRole::Boundary) if !p.has_fixed_point() => {
            (Classification::FrameWettingForced, false)
        }
        Some(CurveRole::Boundary) => (Classification::FrameWettingOptional, false),
    }
}

/// Computes the elementary monodromy around every codimension-2 element.
pub fn validate(raster: &RasterScene) -> ValidationReport {
    let mut records = Vec::new();
    let mut status = Status::Pass;
    for e in raster.grid.elements() {
        let mark = raster.mark(e);
        let p = raster.element_monodromy(e).expect("interior element");
        if mark.is_none() && p.is_identity() {
            continue;
        }
        let (class, warning) = classify(mark, &p, raster.dirichlet_sheet);
        if class == Classification::Inconsistent {
            status = Status::Fail;
        } else if warning && status == Status::Pass {
            status = Status::Warn;
        }
        records.push(ElementRecord {
            element: e,
            monodromy: p,
            class,
            warning,
        });
    }
    records.sort_by_key(|r| r.element);
    ValidationReport {
        scene: raster.name.clone(),
        status,
        records,
    }
}
