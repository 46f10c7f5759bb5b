use serde::{Deserialize, Serialize};

use super::{GroupError, GroupMap, GroupTable, Result};

/// On-disk group: `table[i][j]` is the index of i·j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(g: &GroupTable) -> Self {
        let default_labels = (0..g.order()).all(|i| g.label(i) == i.to_string());
        GroupFile {
            name: g.name().to_string(),
            order: g.order(),
            table: g.rows(),
            identity: g.identity(),
            labels: (!default_labels).then(|| g.labels().to_vec()),
        }
    }

    pub fn to_group(&self) -> Result<GroupTable> {
        if self.table.len() != self.order {
            return Err(GroupError::Malformed(format!(
                "order is {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        let mut g = GroupTable::from_table(&self.name, &self.table)?;
        if g.identity() != self.identity {
            return Err(GroupError::Malformed(format!(
                "declared identity {} but the table's identity is {}",
                self.identity,
                g.identity()
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.order {
                return Err(GroupError::Malformed("wrong number of labels".into()));
            }
            g.labels = labels.clone();
        }
        Ok(g)
    }
}

/// On-disk operator on a named group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub group: String,
    pub weight: i64,
    pub map: GroupMap,
}
