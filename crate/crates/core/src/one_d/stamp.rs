use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// A finite set of nonnegative integers with minimum 0 and gcd 1.
///
/// `translation` and `scale` record how the set was obtained from the raw
/// input: `raw = scale * elements + translation`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StampSet1D {
    elements: Vec<u64>,
    translation: i64,
    scale: u64,
}

/// Translates the minimum to 0 and divides out the gcd.
pub fn normalize(raw: &[i64]) -> Result<StampSet1D> {
    if raw.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut v = raw.to_vec();
    v.sort_unstable();
    v.dedup();
    let translation = v[0];
    let shifted: Vec<u64> = v.iter().map(|&x| (x - translation) as u64).collect();
    let g = shifted.iter().fold(0u64, |g, &x| g.gcd(&x));
    let scale = if g == 0 { 1 } else { g };
    Ok(StampSet1D {
        elements: shifted.iter().map(|&x| x / scale).collect(),
        translation,
        scale,
    })
}

impl StampSet1D {
    /// Accepts a set that is already normalized, rejecting anything else.
    pub fn from_normalized(elements: &[u64]) -> Result<Self> {
        let raw: Vec<i64> = elements.iter().map(|&x| x as i64).collect();
        let s = normalize(&raw)?;
        if s.translation != 0 || s.scale != 1 {
            return Err(Error::InvalidInput(format!(
                "{elements:?} is not normalized (min 0, gcd 1)"
            )));
        }
        Ok(s)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The largest element.
    pub fn b(&self) -> u64 {
        *self.elements.last().expect("nonempty by construction")
    }

    pub fn translation(&self) -> i64 {
        self.translation
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `b - A`. The raw set is reflected about its own midpoint, so the
    /// recorded translation and scale carry over unchanged.
    pub fn reflect(&self) -> StampSet1D {
        let b = self.b();
        let mut elements: Vec<u64> = self.elements.iter().map(|&a| b - a).collect();
        elements.reverse();
        StampSet1D {
            elements,
            translation: self.translation,
            scale: self.scale,
        }
    }

    /// Maps a value `x` of `N * self` back to the corresponding value of `N * raw`.
    pub fn to_raw(&self, x: u64, n: u64) -> i64 {
        (x * self.scale) as i64 + self.translation * n as i64
    }

    /// Nonzero elements strictly below `b`.
    pub(crate) fn interior(&self) -> impl Iterator<Item = u64> + '_ {
        let b = self.b();
        self.elements
            .iter()
            .copied()
            .filter(move |&c| c != 0 && c != b)
    }
}

impl std::fmt::Display for StampSet1D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
