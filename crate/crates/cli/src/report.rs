//! Machine- and human-readable reports.

use serde::{Deserialize, Serialize};
use ugrid_core::homology::{Frac2, GradedModule};

/// Where a signature value came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SigmaProvenance {
    Computed,
    External,
}

/// Module decomposition in report form: doubled free gradings and
/// torsion pairs `(doubled grading, exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct ModuleReport {
    pub free: Vec<i64>,
    pub torsion: Vec<(i64, u32)>,
}

impl ModuleReport {
    pub fn of(module: &GradedModule) -> ModuleReport {
        let mut free = Vec::new();
        for (&g, &m) in &module.free {
            free.extend(std::iter::repeat(g).take(m as usize));
        }
        let mut torsion = Vec::new();
        for (&(g, k), &m) in &module.torsion {
            torsion.extend(std::iter::repeat((g, k)).take(m as usize));
        }
        ModuleReport { free, torsion }
    }
}

/// One verification line: a named check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Full result of a command run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Report {
    pub input: String,
    pub grid_index: Option<usize>,
    pub components: Option<usize>,
    /// V-divided module of the link.
    pub module: Option<ModuleReport>,
    pub upsilon: Option<i64>,
    pub upsilon_set: Option<Vec<i64>>,
    /// Renormalized upsilon-set, doubled entries.
    pub renormalized_upsilon_set2: Option<Vec<i64>>,
    pub sigma: Option<i64>,
    pub sigma_provenance: Option<SigmaProvenance>,
    pub gamma4_lower_bound: Option<i64>,
    pub euler_number: Option<i64>,
    pub elapsed_ms: u128,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable table.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("input:      {}\n", self.input));
        if let Some(n) = self.grid_index {
            out.push_str(&format!("grid index: {n}\n"));
        }
        if let Some(l) = self.components {
            out.push_str(&format!("components: {l}\n"));
        }
        if let Some(m) = &self.module {
            let free: Vec<String> = m.free.iter().map(|&g| Frac2(g).to_string()).collect();
            out.push_str(&format!("free:       [{}]\n", free.join(", ")));
            let tor: Vec<String> =
                m.torsion.iter().map(|&(g, k)| format!("[{}, {k}]", Frac2(g))).collect();
            out.push_str(&format!("torsion:    [{}]\n", tor.join(", ")));
        }
        if let Some(u) = self.upsilon {
            out.push_str(&format!("upsilon:    {u}\n"));
        }
        if let Some(set) = &self.upsilon_set {
            out.push_str(&format!("upsilon set: {set:?}\n"));
        }
        if let Some(set) = &self.renormalized_upsilon_set2 {
            let v: Vec<String> = set.iter().map(|&g| Frac2(g).to_string()).collect();
            out.push_str(&format!("renormalized upsilon set: [{}]\n", v.join(", ")));
        }
        if let Some(s) = self.sigma {
            let provenance = match self.sigma_provenance {
                Some(SigmaProvenance::External) => " (external)",
                Some(SigmaProvenance::Computed) => " (computed)",
                None => "",
            };
            out.push_str(&format!("sigma:      {s}{provenance}\n"));
        }
        if let Some(g) = self.gamma4_lower_bound {
            out.push_str(&format!("gamma4 >=   {g}\n"));
        }
        if let Some(e) = self.euler_number {
            out.push_str(&format!("euler number: {e}\n"));
        }
        for check in &self.checks {
            out.push_str(&format!(
                "[{}] {}{}\n",
                if check.pass { "pass" } else { "FAIL" },
                check.name,
                if check.detail.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", check.detail)
                }
            ));
        }
        out.push_str(&format!("elapsed:    {} ms\n", self.elapsed_ms));
        out
    }
}
