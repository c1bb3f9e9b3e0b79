use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::MAX_UNIVERSE;

/// A finite, ordered set of object identifiers.
///
/// The order is fixed at construction: object `i` is bit `i` of every
/// [`ObjectSet`] over this universe, so ascending mask order is the canonical
/// subset order used for reports.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    ids: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(ids: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        if ids.is_empty() {
            return Err(Error::input("a universe needs at least one object"));
        }
        if ids.len() > MAX_UNIVERSE {
            return Err(Error::CapExceeded {
                what: "universe".into(),
                size: ids.len(),
                cap: MAX_UNIVERSE,
            });
        }
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if id.trim().is_empty() {
                return Err(Error::input("object identifiers must be nonempty"));
            }
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate object identifier `{id}`")));
            }
        }
        Ok(Arc::new(Universe { ids, index }))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    /// Mask with one bit per object.
    pub fn full_mask(&self) -> u64 {
        mask_for(self.ids.len())
    }

    /// Parses `x1,x2`, `{x1, x2}`, `x1|x2`, `{}`, `∅` or the empty string.
    pub fn parse_subset(&self, text: &str) -> Result<u64> {
        let t = text.trim();
        let t = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() || t == "∅" {
            return Ok(0);
        }
        let mut bits = 0u64;
        for tok in t.split([',', '|']) {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(Error::input(format!("empty identifier in subset `{text}`")));
            }
            bits |= 1u64 << self.index_of(tok)?;
        }
        Ok(bits)
    }

    /// Renders a mask as `{x1,x2}` in universe order.
    pub fn render(&self, bits: u64) -> String {
        let mut s = String::from("{");
        for (n, i) in iter_bits(bits).enumerate() {
            if n > 0 {
                s.push(',');
            }
            s.push_str(&self.ids[i]);
        }
        s.push('}');
        s
    }

    pub fn same(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
        Arc::ptr_eq(a, b) || a.ids == b.ids
    }
}

pub(crate) fn mask_for(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices of the set bits, ascending.
pub fn iter_bits(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

pub(crate) fn ensure_same(a: &Arc<Universe>, b: &Arc<Universe>, ctx: &str) -> Result<()> {
    if Universe::same(a, b) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch(format!(
            "{ctx}: {:?} vs {:?}",
            a.ids(),
            b.ids()
        )))
    }
}

/// A subset of a [`Universe`].
#[derive(Clone)]
pub struct ObjectSet {
    universe: Arc<Universe>,
    bits: u64,
}

impl ObjectSet {
    pub fn empty(universe: &Arc<Universe>) -> Self {
        ObjectSet { universe: universe.clone(), bits: 0 }
    }

    pub fn full(universe: &Arc<Universe>) -> Self {
        ObjectSet { universe: universe.clone(), bits: universe.full_mask() }
    }

    pub fn from_bits(universe: &Arc<Universe>, bits: u64) -> Result<Self> {
        if bits & !universe.full_mask() != 0 {
            return Err(Error::input(format!(
                "mask {bits:#x} has members outside a universe of {} objects",
                universe.len()
            )));
        }
        Ok(ObjectSet { universe: universe.clone(), bits })
    }

    pub(crate) fn from_bits_unchecked(universe: &Arc<Universe>, bits: u64) -> Self {
        debug_assert_eq!(bits & !universe.full_mask(), 0);
        ObjectSet { universe: universe.clone(), bits }
    }

    pub fn from_ids<I, S>(universe: &Arc<Universe>, ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u64;
        for id in ids {
            bits |= 1u64 << universe.index_of(id.as_ref())?;
        }
        Ok(ObjectSet { universe: universe.clone(), bits })
    }

    pub fn parse(universe: &Arc<Universe>, text: &str) -> Result<Self> {
        Ok(ObjectSet { universe: universe.clone(), bits: universe.parse_subset(text)? })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 64 && self.bits & (1u64 << index) != 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        iter_bits(self.bits)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.indices().map(|i| self.universe.id(i)).collect()
    }

    fn with_bits(&self, bits: u64) -> Self {
        ObjectSet { universe: self.universe.clone(), bits }
    }

    pub fn complement(&self) -> Self {
        self.with_bits(!self.bits & self.universe.full_mask())
    }

    pub fn union(&self, other: &ObjectSet) -> Result<Self> {
        ensure_same(&self.universe, &other.universe, "union")?;
        Ok(self.with_bits(self.bits | other.bits))
    }

    pub fn intersection(&self, other: &ObjectSet) -> Result<Self> {
        ensure_same(&self.universe, &other.universe, "intersection")?;
        Ok(self.with_bits(self.bits & other.bits))
    }

    pub fn difference(&self, other: &ObjectSet) -> Result<Self> {
        ensure_same(&self.universe, &other.universe, "difference")?;
        Ok(self.with_bits(self.bits & !other.bits))
    }

    pub fn is_subset(&self, other: &ObjectSet) -> Result<bool> {
        ensure_same(&self.universe, &other.universe, "inclusion")?;
        Ok(self.bits & !other.bits == 0)
    }
}

impl PartialEq for ObjectSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && Universe::same(&self.universe, &other.universe)
    }
}

impl Eq for ObjectSet {}

impl Hash for ObjectSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl PartialOrd for ObjectSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ObjectSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits
            .cmp(&other.bits)
            .then_with(|| self.universe.ids.cmp(&other.universe.ids))
    }
}

impl fmt::Display for ObjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.universe.render(self.bits))
    }
}

impl fmt::Debug for ObjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ObjectSet{}", self.universe.render(self.bits))
    }
}

/// Every subset of `universe`, in ascending mask order.
pub fn all_subsets(universe: &Arc<Universe>, cap: usize) -> Result<Vec<ObjectSet>> {
    let n = universe.len();
    if n > cap {
        return Err(Error::CapExceeded { what: "universe (powerset sweep)".into(), size: n, cap });
    }
    Ok((0..=universe.full_mask())
        .map(|bits| ObjectSet::from_bits_unchecked(universe, bits))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Universe::new(["a", "a"]).is_err());
        assert!(Universe::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn parse_and_render() {
        let u = Universe::new(["x1", "x2", "x3"]).unwrap();
        assert_eq!(u.parse_subset("{x3, x1}").unwrap(), 0b101);
        assert_eq!(u.parse_subset("∅").unwrap(), 0);
        assert_eq!(u.parse_subset("x2|x3").unwrap(), 0b110);
        assert!(u.parse_subset("x9").is_err());
        assert_eq!(u.render(0b101), "{x1,x3}");
        assert_eq!(u.render(0), "{}");
    }

    #[test]
    fn set_ops_check_universe() {
        let u = Universe::new(["a", "b"]).unwrap();
        let v = Universe::new(["a", "c"]).unwrap();
        let x = ObjectSet::from_ids(&u, ["a"]).unwrap();
        let y = ObjectSet::from_ids(&v, ["a"]).unwrap();
        assert!(matches!(x.union(&y), Err(Error::UniverseMismatch(_))));
        assert_eq!(x.complement().ids(), vec!["b"]);
    }

    #[test]
    fn powerset_cap_enforced() {
        let u = Universe::new((0..5).map(|i| format!("o{i}"))).unwrap();
        assert_eq!(all_subsets(&u, 5).unwrap().len(), 32);
        assert!(matches!(all_subsets(&u, 4), Err(Error::CapExceeded { .. })));
    }
}
