//! The named certificates. Every entry is built lazily from a shared
//! [`Context`], so a filter that selects a handful of names never pays for
//! the rest.

mod cases;
mod compat;
mod lemma;
mod structure;

use super::context::Context;
use super::engine::Claim;

/// Which variety a certificate is checked on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Space {
    /// The holonomic-system generators with the unit and `V1^2` relations.
    Holonomic,
    /// The principal-curvature generators, no relations.
    Curvatures,
}

type Builder = Box<dyn Fn(&Context, &str) -> Claim + Send + Sync>;

pub struct Entry {
    pub name: String,
    pub space: Space,
    build: Builder,
}

impl Entry {
    pub fn build(&self, ctx: &Context) -> Claim {
        (self.build)(ctx, &self.name)
    }
}

pub(crate) fn entry(
    name: impl Into<String>,
    space: Space,
    f: impl Fn(&Context, &str) -> Claim + Send + Sync + 'static,
) -> Entry {
    Entry { name: name.into(), space, build: Box::new(f) }
}

/// Every certificate, sorted by name.
pub fn catalog() -> Vec<Entry> {
    let mut out = Vec::new();
    structure::register(&mut out);
    compat::register(&mut out);
    cases::register(&mut out);
    lemma::register(&mut out);
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
