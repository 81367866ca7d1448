use std::fmt;

use serde::{Deserialize, Serialize};

/// Semantic name of a vertex, carried alongside its dense index.
///
/// JSON form: an integer for `Index`, a two-element array for `Pair`,
/// `{"f":[...]}` for a function table and `{"set":[...]}` for a subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexLabel {
    Index(usize),
    Pair(Box<VertexLabel>, Box<VertexLabel>),
    FunctionTable {
        #[serde(rename = "f")]
        values: Vec<u32>,
    },
    Subset {
        #[serde(rename = "set")]
        elements: Vec<u32>,
    },
}

impl VertexLabel {
    pub fn pair(left: VertexLabel, right: VertexLabel) -> Self {
        VertexLabel::Pair(Box::new(left), Box::new(right))
    }

    /// Set of values taken by a function-table label, or the elements of a
    /// subset label (also looked up through the left side of a pair).
    pub fn image(&self) -> Option<Vec<u32>> {
        match self {
            VertexLabel::FunctionTable { values } => {
                let mut v = values.clone();
                v.sort_unstable();
                v.dedup();
                Some(v)
            }
            VertexLabel::Subset { elements } => Some(elements.clone()),
            VertexLabel::Pair(left, _) => left.image(),
            VertexLabel::Index(_) => None,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        }
        match self {
            VertexLabel::Index(i) => write!(f, "{i}"),
            VertexLabel::Pair(a, b) => write!(f, "({a},{b})"),
            VertexLabel::FunctionTable { values } => {
                f.write_str("f[")?;
                list(f, values)?;
                f.write_str("]")
            }
            VertexLabel::Subset { elements } => {
                f.write_str("{")?;
                list(f, elements)?;
                f.write_str("}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        let l = VertexLabel::pair(
            VertexLabel::Index(2),
            VertexLabel::FunctionTable { values: vec![1, 2] },
        );
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"[2,{"f":[1,2]}]"#);
        let back: VertexLabel = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        let s = serde_json::to_string(&VertexLabel::Subset { elements: vec![1, 3] }).unwrap();
        assert_eq!(s, r#"{"set":[1,3]}"#);
    }

    #[test]
    fn display() {
        let l = VertexLabel::pair(
            VertexLabel::Subset { elements: vec![1, 4] },
            VertexLabel::Index(0),
        );
        assert_eq!(l.to_string(), "({1,4},0)");
        assert_eq!(l.image(), Some(vec![1, 4]));
    }
}
