//! Fixed-point data files for the equivariant bound.
//!
//! Hand-editable structured text: `#` starts a comment, the first significant
//! line names the group, and every following line is one subgroup record
//! `label weyl_order fixed_dim`:
//!
//! ```text
//! # conjugacy classes of subgroups
//! group Sigma_3
//! e 6 0
//! C2 1 0
//! C3 2 0
//! Sigma_3 1 0
//! ```

use exponent_core::{BoundsError, GroupFixedPointData, SubgroupRecord};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupFileError {
    #[error("expected a leading `group <label>` line")]
    MissingGroupLabel,
    #[error("line {line}: malformed record `{content}`, expected `label weyl_order fixed_dim`")]
    MalformedRecord { line: usize, content: String },
    #[error(transparent)]
    Invalid(#[from] BoundsError),
}

/// Parse group fixed-point data from the structured text format.
pub fn parse_group_file(text: &str) -> Result<GroupFixedPointData, GroupFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let label = match lines.next() {
        Some((_, l)) => match l.strip_prefix("group ") {
            Some(rest) if !rest.trim().is_empty() => rest.trim().to_string(),
            _ => return Err(GroupFileError::MissingGroupLabel),
        },
        None => return Err(GroupFileError::MissingGroupLabel),
    };

    let mut records = Vec::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let malformed = || GroupFileError::MalformedRecord { line, content: content.to_string() };
        let [name, weyl, fixed] = fields.as_slice() else {
            return Err(malformed());
        };
        let weyl_order: u64 = weyl.parse().map_err(|_| malformed())?;
        let fixed_dim: u32 = fixed.parse().map_err(|_| malformed())?;
        records.push(SubgroupRecord {
            label: name.to_string(),
            weyl_order,
            fixed_dim,
        });
    }
    Ok(GroupFixedPointData::new(label, records)?)
}

/// Serialize group data back to the text format.
pub fn render_group_file(group: &GroupFixedPointData) -> String {
    let mut out = format!("group {}\n", group.label);
    for r in &group.records {
        out.push_str(&format!("{} {} {}\n", r.label, r.weyl_order, r.fixed_dim));
    }
    out
}
