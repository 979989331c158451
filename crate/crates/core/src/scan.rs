//! Runs the classification and structural checks over a group collection.

use std::sync::Arc;

use serde::Serialize;

use crate::catalog::Catalog;
use crate::cd::{cd_report, property_checks, Check};
use crate::classify::{check_delta, check_v, recognize, StructureKind};
use crate::group::Group;
use crate::lattice::{SubgroupLattice, DEFAULT_SUBGROUP_BUDGET};
use crate::par::{map_ordered, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CheckSet {
    Delta,
    V,
    Props,
    All,
}

impl CheckSet {
    fn delta(self) -> bool {
        matches!(self, CheckSet::Delta | CheckSet::All)
    }
    fn v(self) -> bool {
        matches!(self, CheckSet::V | CheckSet::All)
    }
    fn props(self) -> bool {
        matches!(self, CheckSet::Props | CheckSet::All)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupResult {
    pub label: String,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tag: Option<StructureKind>,
    pub nilpotent: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl GroupResult {
    pub fn counterexamples(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub label: String,
    pub check: String,
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub groups_scanned: usize,
    pub counterexamples: usize,
    pub budget_exhausted: usize,
    pub orders_exhaustive: Vec<usize>,
    pub orders_partial: Vec<usize>,
    pub nilpotent_v3: Vec<String>,
    pub failures: Vec<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub max_order: usize,
    pub check: CheckSet,
    pub groups: Vec<GroupResult>,
    pub summary: Summary,
}

/// Full per-group pipeline: lattice, CD report, recognition, checks.
pub fn scan_group(g: &Arc<Group>, checks: CheckSet) -> GroupResult {
    let nilpotent = g.is_nilpotent();
    let mut result = GroupResult {
        label: g.label().to_string(),
        order: g.order(),
        delta: None,
        v: None,
        tag: None,
        nilpotent,
        checks: Vec::new(),
        error: None,
    };
    let lattice = match SubgroupLattice::build(g.clone(), DEFAULT_SUBGROUP_BUDGET) {
        Ok(l) => l,
        Err(e) => {
            result.error = Some(e.to_string());
            return result;
        }
    };
    let report = cd_report(&lattice);
    result.delta = Some(report.delta);
    result.v = Some(report.v);
    if checks.delta() || checks.v() {
        let tag = recognize(g);
        if checks.delta() {
            result.checks.push(check_delta(&tag.kind, report.delta));
        }
        if checks.v() {
            result.checks.push(check_v(&tag.kind, report.v, nilpotent));
        }
        result.tag = Some(tag.kind);
    }
    if checks.props() {
        result.checks.extend(property_checks(&lattice, &report));
    }
    result
}

pub fn scan_groups(groups: &[Arc<Group>], checks: CheckSet, exec: Execution) -> Vec<GroupResult> {
    map_ordered(exec, groups, |g| scan_group(g, checks))
}

pub fn scan_catalog(catalog: &Catalog, checks: CheckSet, exec: Execution) -> ScanReport {
    let groups: Vec<Arc<Group>> = catalog.entries.iter().map(|e| e.group.clone()).collect();
    let results = scan_groups(&groups, checks, exec);
    let failures: Vec<Counterexample> = results
        .iter()
        .flat_map(|r| {
            r.counterexamples().map(move |c| Counterexample {
                label: r.label.clone(),
                check: c.name.clone(),
                witness: c.witness.clone(),
                detail: c.detail.clone(),
            })
        })
        .collect();
    let nilpotent_v3 = if checks.v() {
        results
            .iter()
            .filter(|r| r.nilpotent && r.v == Some(3))
            .map(|r| r.label.clone())
            .collect()
    } else {
        Vec::new()
    };
    let summary = Summary {
        groups_scanned: results.len(),
        counterexamples: failures.len(),
        budget_exhausted: results.iter().filter(|r| r.error.is_some()).count(),
        orders_exhaustive: catalog.exhaustive_orders(),
        orders_partial: catalog
            .coverage
            .iter()
            .filter(|(_, &ex)| !ex)
            .map(|(&n, _)| n)
            .collect(),
        nilpotent_v3,
        failures,
    };
    ScanReport {
        max_order: catalog.max_order,
        check: checks,
        groups: results,
        summary,
    }
}
