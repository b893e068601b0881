use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of distinct variable names shared by every polynomial built
/// over it.
#[derive(Clone)]
pub struct VarContext {
    names: Arc<Vec<String>>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<VarContext> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::InvalidParameters(format!("bad variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidParameters(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarContext { names: Arc::new(names) })
    }

    /// `[X1, .., Xm, Y, Z, T]`.
    pub fn presentation(m: usize) -> VarContext {
        let mut names: Vec<String> = (1..=m).map(|i| format!("X{i}")).collect();
        names.extend(["Y", "Z", "T"].map(String::from));
        VarContext { names: Arc::new(names) }
    }

    /// `[Z, T]`.
    pub fn plane() -> VarContext {
        VarContext { names: Arc::new(vec!["Z".into(), "T".into()]) }
    }

    /// Fresh symbols `[S1, .., Sn]`.
    pub fn symbols(n: usize) -> VarContext {
        VarContext { names: Arc::new((1..=n).map(|i| format!("S{i}")).collect()) }
    }

    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<VarContext> {
        let mut names: Vec<String> = self.names.to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        VarContext::new(&names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Looks a name up; a bare `X` resolves to `X1` when the context has
    /// exactly one `X` variable.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Some(i);
        }
        if name == "X" && self.index_of("X1").is_some() && self.index_of("X2").is_none() {
            return self.index_of("X1");
        }
        None
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarContext {}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}
