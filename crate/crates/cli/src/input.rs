use std::fs;
use std::path::Path;

use fusion_core::catalog;
use fusion_core::fusion::{close_fusion, inner_fusion, parse_generators, FusionSystem};
use fusion_core::group::FiniteGroup;

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Loads the group only; `subgroups` does not need a fusion system.
pub fn load_group(group: Option<&Path>, entry: Option<&str>) -> Result<(String, FiniteGroup), CliError> {
    match (group, entry) {
        (Some(path), None) => {
            let g = FiniteGroup::parse(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok((path.display().to_string(), g))
        }
        (None, Some(name)) => {
            let e = catalog::lookup(name).map_err(|e| CliError::Input(e.to_string()))?;
            Ok((name.to_string(), (*e.group).clone()))
        }
        _ => Err(CliError::Input("give exactly one of --group or --catalog".into())),
    }
}

/// Loads a group and its fusion system. A group file without a fusion file
/// means the inner fusion system.
pub fn load(group: Option<&Path>, fusion: Option<&Path>, entry: Option<&str>) -> Result<(String, FusionSystem), CliError> {
    if let Some(name) = entry {
        if group.is_some() || fusion.is_some() {
            return Err(CliError::Input("--catalog cannot be combined with --group or --fusion".into()));
        }
        let e = catalog::lookup(name).map_err(|e| CliError::Input(e.to_string()))?;
        let fusion = e.fusion_system().map_err(|e| CliError::Input(e.to_string()))?;
        return Ok((name.to_string(), fusion));
    }
    let Some(path) = group else {
        return Err(CliError::Input("give --group or --catalog".into()));
    };
    let (label, g) = load_group(Some(path), None)?;
    let base = std::sync::Arc::new(g.clone());
    let fusion = match fusion {
        None => inner_fusion(base),
        Some(fpath) => {
            let gens = parse_generators(&read(fpath)?, &g)
                .map_err(|e| CliError::Input(format!("{}: {e}", fpath.display())))?;
            close_fusion(base, &gens)
        }
    }
    .map_err(|e| CliError::Input(e.to_string()))?;
    Ok((label, fusion))
}
