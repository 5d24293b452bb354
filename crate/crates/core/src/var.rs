//! Interned variable symbols shared by algebra and real formulas.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use once_cell::sync::Lazy;

struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

static INTERNER: Lazy<RwLock<Interner>> = Lazy::new(|| {
    RwLock::new(Interner {
        names: Vec::new(),
        ids: HashMap::new(),
    })
});

/// A variable name. Cheap to copy and compare; the name lives for the
/// whole process.
///
/// `Ord` follows interning order, which is only stable within a process.
/// Anything user-visible that needs a deterministic order sorts by
/// [`Var::name`] instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    pub fn new(name: &str) -> Var {
        if let Some(&id) = INTERNER.read().unwrap().ids.get(name) {
            return Var(id);
        }
        let mut w = INTERNER.write().unwrap();
        if let Some(&id) = w.ids.get(name) {
            return Var(id);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = w.names.len() as u32;
        w.names.push(leaked);
        w.ids.insert(leaked, id);
        Var(id)
    }

    /// Interning index; stable within a process only.
    pub(crate) fn index(self) -> u32 {
        self.0
    }

    pub fn name(self) -> &'static str {
        INTERNER.read().unwrap().names[self.0 as usize]
    }

    /// Coordinate variable `name_index` of a realified algebra variable.
    pub fn coord(self, index: usize) -> Var {
        Var::new(&format!("{}_{}", self.name(), index))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Var {
        Var::new(s)
    }
}

impl serde::Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Returns a variable named `base`, `base1`, `base2`, ... that is not in `taken`.
pub fn fresh_var(base: &str, taken: impl Fn(Var) -> bool) -> Var {
    let v = Var::new(base);
    if !taken(v) {
        return v;
    }
    (1..)
        .map(|n| Var::new(&format!("{base}{n}")))
        .find(|&v| !taken(v))
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_idempotent() {
        let a = Var::new("alpha_test");
        let b = Var::new("alpha_test");
        assert_eq!(a, b);
        assert_eq!(a.name(), "alpha_test");
        assert_eq!(a.coord(3).name(), "alpha_test_3");
    }

    #[test]
    fn fresh_names() {
        let x = Var::new("fx");
        let v = fresh_var("fx", |v| v == x);
        assert_eq!(v.name(), "fx1");
    }
}
