//! Small permutations of `{0, .., N-1}` used for face and side gluings.

use std::fmt;

/// A permutation of `{0, .., N-1}`, stored as the image of each symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm<const N: usize>([u8; N]);

/// Vertex maps between tetrahedra.
pub type Perm4 = Perm<4>;
/// Vertex maps between triangles.
pub type Perm3 = Perm<3>;

impl<const N: usize> Perm<N> {
    pub fn identity() -> Self {
        let mut images = [0u8; N];
        for (i, slot) in images.iter_mut().enumerate() {
            *slot = i as u8;
        }
        Perm(images)
    }

    /// Builds a permutation from its images, or `None` if they are not a bijection.
    pub fn new(images: [u8; N]) -> Option<Self> {
        let mut seen = [false; N];
        for &x in &images {
            let x = x as usize;
            if x >= N || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(images))
    }

    pub fn images(&self) -> [u8; N] {
        self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0u8; N];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `self.then(other)` maps `i` to `other(self(i))`.
    pub fn then(&self, other: &Self) -> Self {
        let mut out = [0u8; N];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = other.0[self.0[i] as usize];
        }
        Perm(out)
    }

    /// `true` for odd permutations.
    pub fn is_odd(&self) -> bool {
        let mut inversions = 0;
        for i in 0..N {
            for j in i + 1..N {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }

    /// All permutations in lexicographic order of their image strings.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(N);
        let mut used = [false; N];
        fn rec<const N: usize>(
            current: &mut Vec<u8>,
            used: &mut [bool; N],
            out: &mut Vec<Perm<N>>,
        ) {
            if current.len() == N {
                let mut images = [0u8; N];
                images.copy_from_slice(current);
                out.push(Perm(images));
                return;
            }
            for x in 0..N {
                if !used[x] {
                    used[x] = true;
                    current.push(x as u8);
                    rec(current, used, out);
                    current.pop();
                    used[x] = false;
                }
            }
        }
        rec(&mut current, &mut used, &mut out);
        out
    }

    /// Parses the image string, e.g. `"0132"`.
    pub fn parse(token: &str) -> Option<Self> {
        let bytes = token.as_bytes();
        if bytes.len() != N {
            return None;
        }
        let mut images = [0u8; N];
        for (slot, &b) in images.iter_mut().zip(bytes) {
            if !b.is_ascii_digit() {
                return None;
            }
            *slot = b - b'0';
        }
        Self::new(images)
    }
}

impl<const N: usize> fmt::Display for Perm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl<const N: usize> serde::Serialize for Perm<N> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de, const N: usize> serde::Deserialize<'de> for Perm<N> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Perm::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("not a permutation: {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm4::parse("0122").is_none());
        assert!(Perm4::parse("0124").is_none());
        assert!(Perm4::parse("012").is_none());
        assert_eq!(Perm4::parse("1032").unwrap().images(), [1, 0, 3, 2]);
    }

    #[test]
    fn composition_and_inverse() {
        for p in Perm4::all() {
            assert_eq!(p.then(&p.inverse()), Perm4::identity());
            for q in Perm4::all() {
                assert_eq!(p.then(&q).is_odd(), p.is_odd() ^ q.is_odd());
            }
        }
        assert_eq!(Perm4::all().len(), 24);
        assert_eq!(Perm3::all().len(), 6);
        assert_eq!(Perm3::all().iter().filter(|p| p.is_odd()).count(), 3);
    }
}
