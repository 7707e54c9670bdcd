use serde::{Deserialize, Serialize};

use super::{CoxeterError, CoxeterGroup, CoxeterSpec};

pub const GROUP_SCHEMA: &str = "coxnorm.group/v1";

/// Versioned JSON form of an enumerated group. Element ids are positions in
/// `elements`, which follows the deterministic enumeration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub schema: String,
    pub spec: String,
    pub order_cap: u64,
    /// Simple roots with coordinates as round-trippable decimal strings.
    pub simple_roots: Vec<Vec<String>>,
    pub elements: Vec<Vec<usize>>,
}

impl GroupDocument {
    pub fn from_group(group: &CoxeterGroup) -> Self {
        GroupDocument {
            schema: GROUP_SCHEMA.to_string(),
            spec: group.spec().to_string(),
            order_cap: group.spec().order_cap,
            simple_roots: group
                .roots()
                .simple_roots()
                .iter()
                .map(|r| r.iter().map(|x| format!("{x:?}")).collect())
                .collect(),
            elements: group.elements().map(|w| group.word(w)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CoxeterError> {
        serde_json::from_str(text).map_err(|e| CoxeterError::Document(e.to_string()))
    }

    /// Rebuilds the group and checks that the recorded roots and element
    /// words agree with a fresh enumeration.
    pub fn rebuild(&self) -> Result<CoxeterGroup, CoxeterError> {
        if self.schema != GROUP_SCHEMA {
            return Err(CoxeterError::Document(format!("unsupported schema {:?}", self.schema)));
        }
        let spec: CoxeterSpec = self.spec.parse::<CoxeterSpec>()?.with_order_cap(self.order_cap);
        let group = CoxeterGroup::build(&spec)?;
        let tol = group.roots().tolerance();
        if self.simple_roots.len() != group.rank() {
            return Err(CoxeterError::Document("wrong number of simple roots".into()));
        }
        for (i, (row, root)) in self.simple_roots.iter().zip(group.roots().simple_roots()).enumerate() {
            if row.len() != root.len() {
                return Err(CoxeterError::Document(format!("simple root {i} has wrong dimension")));
            }
            for (s, x) in row.iter().zip(root) {
                let v: f64 = s
                    .parse()
                    .map_err(|_| CoxeterError::Document(format!("bad decimal {s:?}")))?;
                if (v - x).abs() > tol {
                    return Err(CoxeterError::Document(format!("simple root {i} does not match")));
                }
            }
        }
        if self.elements.len() != group.order() {
            return Err(CoxeterError::Document(format!(
                "document lists {} elements but the group has {}",
                self.elements.len(),
                group.order()
            )));
        }
        for (i, word) in self.elements.iter().enumerate() {
            if group.element_from_word(word)?.index() != i {
                return Err(CoxeterError::Document(format!("element {i} word does not match enumeration")));
            }
        }
        Ok(group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = CoxeterGroup::build(&"B3xA1".parse().unwrap()).unwrap();
        let doc = GroupDocument::from_group(&g);
        let back = GroupDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let h = back.rebuild().unwrap();
        assert_eq!(h.order(), 96);
        assert_eq!(GroupDocument::from_group(&h), doc);
    }

    #[test]
    fn tampered_word_is_rejected() {
        let g = CoxeterGroup::build(&"A2".parse().unwrap()).unwrap();
        let mut doc = GroupDocument::from_group(&g);
        doc.elements.swap(1, 2);
        assert!(matches!(doc.rebuild(), Err(CoxeterError::Document(_))));
        doc.schema = "other".into();
        assert!(doc.rebuild().is_err());
    }
}
