//! Problem files: a plant set plus the optional controller, template, box
//! and search settings a command needs.

use serde::{Deserialize, Serialize};

use crate::algebra::{Domain, TransferFunction};
use crate::error::{Error, Result};
use crate::feedback::{domain_mismatch, PlantSet};
use crate::synthesis::{ControllerTemplate, ParamBox, SearchConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub domain: Domain,
    pub plants: Vec<TransferFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub controller: Option<TransferFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub template: Option<ControllerTemplate>,
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub param_box: Option<ParamBox>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchConfig>,
}

impl ProblemFile {
    /// The plants, checked against the declared domain.
    pub fn plant_set(&self) -> Result<PlantSet> {
        let set = PlantSet::new(self.plants.clone())?;
        if set.domain() != self.domain {
            return Err(domain_mismatch(self.domain, set.domain()));
        }
        Ok(set)
    }

    pub fn require_controller(&self) -> Result<&TransferFunction> {
        let c = self
            .controller
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("problem file has no controller".into()))?;
        if c.domain() != self.domain {
            return Err(domain_mismatch(self.domain, c.domain()));
        }
        Ok(c)
    }
}
