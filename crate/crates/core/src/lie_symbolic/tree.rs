use std::fmt;
use std::sync::Arc;

use serde_json::Value;

const LABELS: &[u8] = b"XYZWUVABCDEFGHIJKLMNOPQRST";

/// A free generator. The alphabet order is the order of the index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator(pub u8);

impl Generator {
    pub const X: Generator = Generator(0);
    pub const Y: Generator = Generator(1);

    pub fn label(self) -> char {
        LABELS.get(self.0 as usize).map_or('?', |&b| b as char)
    }

    pub fn from_label(c: char) -> Option<Generator> {
        LABELS
            .iter()
            .position(|&b| b as char == c)
            .map(|i| Generator(i as u8))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Binary commutator tree over generators.
///
/// Ordering and equality are structural; brackets compare by degree first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CommTree {
    Leaf(Generator),
    Bracket {
        degree: usize,
        children: Arc<(CommTree, CommTree)>,
    },
}

impl CommTree {
    pub fn leaf(g: Generator) -> Self {
        CommTree::Leaf(g)
    }

    pub fn bracket(left: CommTree, right: CommTree) -> Self {
        CommTree::Bracket {
            degree: left.degree() + right.degree(),
            children: Arc::new((left, right)),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            CommTree::Leaf(_) => 1,
            CommTree::Bracket { degree, .. } => *degree,
        }
    }

    pub fn children(&self) -> Option<(&CommTree, &CommTree)> {
        match self {
            CommTree::Leaf(_) => None,
            CommTree::Bracket { children, .. } => Some((&children.0, &children.1)),
        }
    }

    /// Replaces every leaf through `f`.
    pub fn map_leaves(&self, f: &impl Fn(Generator) -> Generator) -> CommTree {
        match self {
            CommTree::Leaf(g) => CommTree::Leaf(f(*g)),
            CommTree::Bracket { children, .. } => {
                CommTree::bracket(children.0.map_leaves(f), children.1.map_leaves(f))
            }
        }
    }

    /// Nested-array JSON form: `"X"` or `[left, right]`.
    pub fn to_json(&self) -> Value {
        match self {
            CommTree::Leaf(g) => Value::String(g.label().to_string()),
            CommTree::Bracket { children, .. } => {
                Value::Array(vec![children.0.to_json(), children.1.to_json()])
            }
        }
    }

    pub fn from_json(v: &Value) -> Option<CommTree> {
        match v {
            Value::String(s) => {
                let mut chars = s.chars();
                let c = chars.next()?;
                if chars.next().is_some() {
                    return None;
                }
                Generator::from_label(c).map(CommTree::Leaf)
            }
            Value::Array(items) if items.len() == 2 => Some(CommTree::bracket(
                CommTree::from_json(&items[0])?,
                CommTree::from_json(&items[1])?,
            )),
            _ => None,
        }
    }
}

impl fmt::Display for CommTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommTree::Leaf(g) => write!(f, "{g}"),
            CommTree::Bracket { children, .. } => write!(f, "[{},{}]", children.0, children.1),
        }
    }
}

impl fmt::Debug for CommTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_display() {
        let x = CommTree::leaf(Generator::X);
        let y = CommTree::leaf(Generator::Y);
        let t = CommTree::bracket(x.clone(), CommTree::bracket(x, y));
        assert_eq!(t.degree(), 3);
        assert_eq!(t.to_string(), "[X,[X,Y]]");
        assert_eq!(t.to_json().to_string(), r#"["X",["X","Y"]]"#);
        assert_eq!(CommTree::from_json(&t.to_json()), Some(t));
    }
}
