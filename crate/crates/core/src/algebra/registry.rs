use std::fmt;

use crate::algebra::AlgebraError;

/// Maximum number of generators a single registry may hold.
pub const MAX_VARS: usize = 12;

/// Index of a named generator inside a [`Registry`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u8);

impl VarId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Append-only table of generator names. Registration order is the
/// variable order used for canonical printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Registry {
    names: Vec<String>,
}

impl Registry {
    pub fn new() -> Self {
        Self { names: Vec::new() }
    }

    /// Builds a registry holding `names` in order.
    pub fn with_names<S: AsRef<str>>(names: &[S]) -> Result<Self, AlgebraError> {
        let mut reg = Self::new();
        for n in names {
            reg.register(n.as_ref())?;
        }
        Ok(reg)
    }

    /// The generator set for the holonomic-system certificates:
    /// `v1 < v2 < v3 < V1 < a1 < a2 < a3 < c < ct`.
    pub fn standard() -> Self {
        Self::with_names(&["v1", "v2", "v3", "V1", "a1", "a2", "a3", "c", "ct"])
            .expect("static generator names are unique")
    }

    pub fn register(&mut self, name: &str) -> Result<VarId, AlgebraError> {
        if self.names.iter().any(|n| n == name) {
            return Err(AlgebraError::DuplicateVariable(name.to_string()));
        }
        if self.names.len() >= MAX_VARS {
            return Err(AlgebraError::RegistryFull(MAX_VARS));
        }
        if name.is_empty() || !name.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_') {
            return Err(AlgebraError::BadVariableName(name.to_string()));
        }
        self.names.push(name.to_string());
        Ok(VarId((self.names.len() - 1) as u8))
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name).map(|i| VarId(i as u8))
    }

    /// Like [`Registry::lookup`] but panics on unknown names; meant for
    /// static generator names baked into the certificate code.
    pub fn var(&self, name: &str) -> VarId {
        self.lookup(name).unwrap_or_else(|| panic!("generator `{name}` is not registered"))
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len()).map(|i| VarId(i as u8))
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" < "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_order() {
        let reg = Registry::standard();
        assert_eq!(reg.len(), 9);
        assert_eq!(reg.var("v1"), VarId(0));
        assert_eq!(reg.var("ct"), VarId(8));
        assert_eq!(reg.name(VarId(3)), "V1");
    }

    #[test]
    fn duplicates_rejected() {
        let mut reg = Registry::standard();
        assert!(matches!(reg.register("v2"), Err(AlgebraError::DuplicateVariable(_))));
        let id = reg.register("lam").unwrap();
        assert_eq!(id, VarId(9));
    }

    #[test]
    fn capacity_enforced() {
        let names: Vec<String> = (0..MAX_VARS).map(|i| format!("x{i}")).collect();
        let mut reg = Registry::with_names(&names).unwrap();
        assert!(matches!(reg.register("y"), Err(AlgebraError::RegistryFull(_))));
    }
}
