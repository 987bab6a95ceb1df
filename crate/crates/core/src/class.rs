use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId};

/// A named set of morphisms of one category.
#[derive(Clone, PartialEq, Eq)]
pub struct MorClass {
    name: String,
    members: FixedBitSet,
}

impl MorClass {
    pub fn empty(name: impl Into<String>, cat: &FinCategory) -> Self {
        MorClass {
            name: name.into(),
            members: FixedBitSet::with_capacity(cat.num_morphisms()),
        }
    }

    pub fn all(name: impl Into<String>, cat: &FinCategory) -> Self {
        let mut class = Self::empty(name, cat);
        class.members.insert_range(..);
        class
    }

    /// Builds a class from member ids, rejecting ids the category does not have.
    pub fn from_members(
        name: impl Into<String>,
        cat: &FinCategory,
        members: impl IntoIterator<Item = MorId>,
    ) -> Result<Self> {
        let mut class = Self::empty(name, cat);
        for m in members {
            if m.index() >= cat.num_morphisms() {
                return Err(Error::InvalidMorphism(m.0));
            }
            class.members.insert(m.index());
        }
        Ok(class)
    }

    /// Builds a class from a predicate over all morphisms.
    pub fn filter(name: impl Into<String>, cat: &FinCategory, pred: impl Fn(MorId) -> bool) -> Self {
        let mut class = Self::empty(name, cat);
        for m in cat.morphisms() {
            if pred(m) {
                class.members.insert(m.index());
            }
        }
        class
    }

    /// The identities of `cat`.
    pub fn identities(name: impl Into<String>, cat: &FinCategory) -> Self {
        Self::filter(name, cat, |m| cat.is_identity(m))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.members.contains(m.index())
    }

    pub fn insert(&mut self, m: MorId) {
        self.members.insert(m.index());
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    /// Members in increasing id order.
    pub fn iter(&self) -> impl Iterator<Item = MorId> + '_ {
        self.members.ones().map(|i| MorId(i as u32))
    }

    pub fn is_subset(&self, other: &MorClass) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Members of `self` missing from `other`, in id order.
    pub fn difference(&self, other: &MorClass) -> Vec<MorId> {
        self.members
            .difference(&other.members)
            .map(|i| MorId(i as u32))
            .collect()
    }

    pub fn intersection(&self, other: &MorClass, name: impl Into<String>) -> MorClass {
        MorClass {
            name: name.into(),
            members: self.members.intersection(&other.members).collect(),
        }
        .sized_like(self)
    }

    pub fn union(&self, other: &MorClass, name: impl Into<String>) -> MorClass {
        MorClass {
            name: name.into(),
            members: self.members.union(&other.members).collect(),
        }
        .sized_like(self)
    }

    /// Same members as `other`, regardless of names.
    pub fn same_members(&self, other: &MorClass) -> bool {
        self.members.ones().eq(other.members.ones())
    }

    fn sized_like(mut self, like: &MorClass) -> MorClass {
        self.members.grow(like.members.len());
        self
    }
}

impl fmt::Debug for MorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MorClass")
            .field("name", &self.name)
            .field("members", &self.members.ones().collect::<Vec<_>>())
            .finish()
    }
}
