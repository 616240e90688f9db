//! Linear algebra over F₂.
//!
//! [`Gf2Vector`] is an element of the space of binary sequences with finite
//! support. Coordinates are 1-based: coordinate `j` is the atom `e_j`, stored
//! as bit `j - 1` of the little-endian word array. Trailing zero words are
//! never stored, so two vectors are equal iff their supports are equal.
//!
//! [`Gf2Basis`] keeps a subspace in reduced row-echelon form, where the leading
//! coordinate of a row is its lowest set coordinate and is cleared from every
//! other row. With that convention [`Gf2Basis::reduce`] is a linear projection
//! whose output is the same for every member of a coset.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("invalid hex vector {0:?}")]
    InvalidHex(String),
    #[error("sumset search needs 2^{dim} >= {needed} elements")]
    InfeasibleDimension { dim: usize, needed: usize },
    #[error("sumset search space of {pairs} pairs exceeds the cap of {cap}")]
    BudgetExceeded { pairs: u128, cap: u128 },
    #[error("set sizes must be at least 1")]
    EmptySet,
}

/// A vector of F₂ with finite support.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    words: SmallVec<[u64; 2]>,
}

impl Gf2Vector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The atom `e_coord`. Coordinates start at 1.
    pub fn atom(coord: usize) -> Self {
        assert!(coord >= 1, "coordinates are 1-based");
        let mut v = Self::zero();
        v.flip(coord);
        v
    }

    /// Builds a vector from a bitmask where bit 0 is coordinate 1.
    pub fn from_bits(bits: u64) -> Self {
        let mut v = Self::zero();
        if bits != 0 {
            v.words.push(bits);
        }
        v
    }

    pub fn from_coords<I: IntoIterator<Item = usize>>(coords: I) -> Self {
        let mut v = Self::zero();
        for c in coords {
            v.flip(c);
        }
        v
    }

    /// The low 64 coordinates as a bitmask, or `None` if the support reaches
    /// beyond coordinate 64.
    pub fn to_bits(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, coord: usize) -> bool {
        assert!(coord >= 1, "coordinates are 1-based");
        let (w, b) = ((coord - 1) / WORD_BITS, (coord - 1) % WORD_BITS);
        self.words.get(w).is_some_and(|word| (word >> b) & 1 == 1)
    }

    pub fn flip(&mut self, coord: usize) {
        assert!(coord >= 1, "coordinates are 1-based");
        let (w, b) = ((coord - 1) / WORD_BITS, (coord - 1) % WORD_BITS);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1u64 << b;
        self.trim();
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_atom(&self) -> bool {
        self.weight() == 1
    }

    /// Lowest coordinate in the support.
    pub fn lowest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize + 1)
    }

    /// Highest coordinate in the support.
    pub fn highest(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + (WORD_BITS - last.leading_zeros() as usize))
    }

    /// Support in increasing coordinate order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD_BITS + b + 1)
            })
        })
    }

    /// Lowercase hex of the support bitmask, coordinate 1 in the least
    /// significant bit. The zero vector is `"0"`.
    pub fn to_hex(&self) -> String {
        let Some((last, rest)) = self.words.split_last() else {
            return "0".to_string();
        };
        let mut out = format!("{last:x}");
        for w in rest.iter().rev() {
            out.push_str(&format!("{w:016x}"));
        }
        out
    }

    pub fn from_hex(s: &str) -> Result<Self, Gf2Error> {
        let digits = s.trim().trim_start_matches("0x");
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Gf2Error::InvalidHex(s.to_string()));
        }
        let mut words: SmallVec<[u64; 2]> = SmallVec::new();
        let bytes = digits.as_bytes();
        let mut end = bytes.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            let chunk = std::str::from_utf8(&bytes[start..end]).expect("ascii hex");
            words.push(u64::from_str_radix(chunk, 16).map_err(|_| Gf2Error::InvalidHex(s.to_string()))?);
            end = start;
        }
        let mut v = Self { words };
        v.trim();
        Ok(v)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

/// Coordinatewise XOR.
pub fn vec_add(a: &Gf2Vector, b: &Gf2Vector) -> Gf2Vector {
    let mut out = a.clone();
    out += b;
    out
}

impl AddAssign<&Gf2Vector> for Gf2Vector {
    fn add_assign(&mut self, rhs: &Gf2Vector) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
            *a ^= *b;
        }
        self.trim();
    }
}

impl Add<&Gf2Vector> for &Gf2Vector {
    type Output = Gf2Vector;
    fn add(self, rhs: &Gf2Vector) -> Gf2Vector {
        vec_add(self, rhs)
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({{")?;
        for (i, c) in self.support().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}})")
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for Gf2Vector {
    type Err = Gf2Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_hex(s)
    }
}

impl Serialize for Gf2Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Gf2Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Self::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Reduced row-echelon basis of a subspace.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Gf2Basis {
    rows: Vec<Gf2Vector>,
}

impl Gf2Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted by leading coordinate.
    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn leading_coordinates(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.lowest().expect("basis rows are nonzero"))
    }

    /// Canonical representative of `v + span(self)`: every leading coordinate
    /// of the basis is zero in the result.
    pub fn reduce(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut out = v.clone();
        for row in &self.rows {
            let lead = row.lowest().expect("basis rows are nonzero");
            if out.get(lead) {
                out += row;
            }
        }
        out
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanning set. Returns `true` iff `v` was independent of
    /// the current span, in which case the dimension grew by one.
    pub fn insert(&mut self, v: &Gf2Vector) -> bool {
        let r = self.reduce(v);
        let Some(lead) = r.lowest() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(lead) {
                *row += &r;
            }
        }
        let at = self
            .rows
            .partition_point(|row| row.lowest().expect("basis rows are nonzero") < lead);
        self.rows.insert(at, r);
        true
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a Gf2Vector>>(vectors: I) -> Self {
        let mut b = Self::new();
        for v in vectors {
            b.insert(v);
        }
        b
    }
}

/// Result of a minimum-sumset search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumsetWitness {
    pub size: usize,
    pub a: Vec<Gf2Vector>,
    pub b: Vec<Gf2Vector>,
}

/// Default cap on the number of (A, B) pairs examined by [`min_sumset`].
pub const DEFAULT_SUMSET_PAIR_CAP: u128 = 50_000_000;

/// Minimum of `|A + B|` over `A, B ⊆ F₂^dim` with `|A| = s`, `|B| = t`.
pub fn min_sumset(s: usize, t: usize, dim: usize) -> Result<SumsetWitness, Gf2Error> {
    min_sumset_with_cap(s, t, dim, DEFAULT_SUMSET_PAIR_CAP)
}

/// Exhaustive search with both sets translated to contain 0 (sumset size is
/// translation invariant). Candidate sets are enumerated in colex order, and
/// the search stops early once `max(s, t)` is reached.
pub fn min_sumset_with_cap(
    s: usize,
    t: usize,
    dim: usize,
    cap: u128,
) -> Result<SumsetWitness, Gf2Error> {
    if s == 0 || t == 0 {
        return Err(Gf2Error::EmptySet);
    }
    let needed = s.max(t);
    if dim >= WORD_BITS || (1usize << dim) < needed {
        return Err(Gf2Error::InfeasibleDimension { dim, needed });
    }
    let space = 1usize << dim;
    let pairs = binomial(space as u128 - 1, s as u128 - 1) * binomial(space as u128 - 1, t as u128 - 1);
    if pairs > cap {
        return Err(Gf2Error::BudgetExceeded { pairs, cap });
    }

    let a_sets: Vec<Vec<u64>> = colex_subsets_with_zero(space, s);
    let b_sets: Vec<Vec<u64>> = colex_subsets_with_zero(space, t);
    let words = space.div_ceil(WORD_BITS);
    let mut seen = vec![0u64; words];
    let mut best: Option<(usize, usize, usize)> = None;

    'outer: for (ia, a) in a_sets.iter().enumerate() {
        for (ib, b) in b_sets.iter().enumerate() {
            seen.iter_mut().for_each(|w| *w = 0);
            let mut count = 0usize;
            let limit = best.map_or(usize::MAX, |(c, _, _)| c);
            'sum: for &x in a {
                for &y in b {
                    let z = (x ^ y) as usize;
                    let (w, bit) = (z / WORD_BITS, z % WORD_BITS);
                    if seen[w] >> bit & 1 == 0 {
                        seen[w] |= 1 << bit;
                        count += 1;
                        if count >= limit {
                            break 'sum;
                        }
                    }
                }
            }
            if count < limit {
                best = Some((count, ia, ib));
                if count == needed {
                    break 'outer;
                }
            }
        }
    }
    let (size, ia, ib) = best.expect("at least one pair of subsets exists");
    Ok(SumsetWitness {
        size,
        a: a_sets[ia].iter().map(|&x| Gf2Vector::from_bits(x)).collect(),
        b: b_sets[ib].iter().map(|&x| Gf2Vector::from_bits(x)).collect(),
    })
}

/// All `size`-subsets of `0..space` containing 0, in colex order of the
/// nonzero part.
fn colex_subsets_with_zero(space: usize, size: usize) -> Vec<Vec<u64>> {
    let k = size - 1;
    let pool = space - 1;
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut set = Vec::with_capacity(size);
        set.push(0u64);
        set.extend(idx.iter().map(|&i| i as u64 + 1));
        out.push(set);
        // colex successor: bump the lowest position that can move
        let mut i = 0;
        while i < k && (if i + 1 < k { idx[i] + 1 == idx[i + 1] } else { idx[i] + 1 == pool }) {
            i += 1;
        }
        if i == k {
            break;
        }
        idx[i] += 1;
        for (j, slot) in idx.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
    out
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(coords: &[usize]) -> Gf2Vector {
        Gf2Vector::from_coords(coords.iter().copied())
    }

    #[test]
    fn add_examples() {
        let x = v(&[2, 5, 70]);
        assert_eq!(vec_add(&Gf2Vector::zero(), &x), x);
        assert_eq!(vec_add(&Gf2Vector::atom(1), &Gf2Vector::atom(2)), v(&[1, 2]));
        assert!(vec_add(&x, &x).is_zero());
        assert_eq!(vec_add(&x, &x), Gf2Vector::zero());
    }

    #[test]
    fn weight_and_atoms() {
        assert_eq!(Gf2Vector::zero().weight(), 0);
        assert!(Gf2Vector::atom(65).is_atom());
        assert!(!v(&[1, 2]).is_atom());
        assert_eq!(v(&[3, 9, 130]).highest(), Some(130));
        assert_eq!(v(&[3, 9, 130]).lowest(), Some(3));
        assert_eq!(v(&[3, 9, 130]).support().collect::<Vec<_>>(), vec![3, 9, 130]);
    }

    #[test]
    fn hex_format() {
        assert_eq!(Gf2Vector::zero().to_hex(), "0");
        assert_eq!(v(&[1]).to_hex(), "1");
        assert_eq!(v(&[1, 3]).to_hex(), "5");
        assert_eq!(v(&[65]).to_hex(), "10000000000000000");
        assert_eq!(Gf2Vector::from_hex("10000000000000000").unwrap(), v(&[65]));
        assert_eq!(Gf2Vector::from_hex("000a").unwrap(), v(&[2, 4]));
        assert!(Gf2Vector::from_hex("xyz").is_err());
        assert!(Gf2Vector::from_hex("").is_err());
    }

    #[test]
    fn insert_examples() {
        let mut b = Gf2Basis::new();
        assert!(!b.insert(&Gf2Vector::zero()));
        assert_eq!(b.dim(), 0);

        assert!(b.insert(&Gf2Vector::atom(3)));
        assert_eq!(b.rows(), &[Gf2Vector::atom(3)]);

        let mut b = Gf2Basis::from_vectors(&[Gf2Vector::atom(1), Gf2Vector::atom(2)]);
        assert!(!b.insert(&v(&[1, 2])));
        assert_eq!(b.rows(), &[Gf2Vector::atom(1), Gf2Vector::atom(2)]);
    }

    #[test]
    fn reduce_examples() {
        let b = Gf2Basis::from_vectors(&[v(&[1, 3])]);
        assert!(b.reduce(&Gf2Vector::zero()).is_zero());

        let b = Gf2Basis::from_vectors(&[Gf2Vector::atom(1)]);
        assert_eq!(b.reduce(&v(&[1, 2])), Gf2Vector::atom(2));

        // lowest-index leading coordinate: e1 is eliminated, so both members
        // of the coset {e1, e2} reduce to e2
        let b = Gf2Basis::from_vectors(&[v(&[1, 2])]);
        assert_eq!(b.reduce(&Gf2Vector::atom(2)), Gf2Vector::atom(2));
        assert_eq!(b.reduce(&Gf2Vector::atom(1)), Gf2Vector::atom(2));
    }

    #[test]
    fn rows_are_reduced() {
        let b = Gf2Basis::from_vectors(&[v(&[2, 3]), v(&[1, 2]), v(&[3, 4])]);
        let leads: Vec<_> = b.leading_coordinates().collect();
        assert_eq!(leads, vec![1, 2, 3]);
        for (i, row) in b.rows().iter().enumerate() {
            for (j, lead) in leads.iter().enumerate() {
                assert_eq!(row.get(*lead), i == j);
            }
        }
    }

    /// Independent oracle: the smallest |A+B| over all pairs of subsets.
    fn brute_min_sumset(s: usize, t: usize, d: usize) -> usize {
        let space = 1u32 << d;
        let mut best = usize::MAX;
        for am in 0u64..(1 << space) {
            if am.count_ones() as usize != s {
                continue;
            }
            for bm in 0u64..(1 << space) {
                if bm.count_ones() as usize != t {
                    continue;
                }
                let mut sums = 0u64;
                for x in 0..space {
                    for y in 0..space {
                        if am >> x & 1 == 1 && bm >> y & 1 == 1 {
                            sums |= 1 << (x ^ y);
                        }
                    }
                }
                best = best.min(sums.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn sumset_examples() {
        let w = min_sumset(1, 1, 2).unwrap();
        assert_eq!(w.size, 1);
        assert_eq!(w.a, vec![Gf2Vector::zero()]);
        assert_eq!(w.b, vec![Gf2Vector::zero()]);

        // frozen from the unpruned brute force over all subset pairs
        assert_eq!(brute_min_sumset(2, 2, 2), 2);
        assert_eq!(brute_min_sumset(3, 3, 3), 4);
        assert_eq!(min_sumset(2, 2, 2).unwrap().size, 2);
        assert_eq!(min_sumset(3, 3, 3).unwrap().size, 4);
    }

    #[test]
    fn sumset_matches_brute_force_in_dim_3() {
        for s in 1..=8 {
            for t in 1..=8 {
                let w = min_sumset(s, t, 3).unwrap();
                assert_eq!(w.size, brute_min_sumset(s, t, 3), "s={s} t={t}");
                let mut sums: Vec<_> = w
                    .a
                    .iter()
                    .flat_map(|x| w.b.iter().map(move |y| x + y))
                    .collect();
                sums.sort();
                sums.dedup();
                assert_eq!(sums.len(), w.size);
                assert_eq!(w.a.len(), s);
                assert_eq!(w.b.len(), t);
            }
        }
    }

    #[test]
    fn sumset_errors() {
        assert_eq!(
            min_sumset(5, 1, 2),
            Err(Gf2Error::InfeasibleDimension { dim: 2, needed: 5 })
        );
        assert!(matches!(min_sumset(0, 1, 2), Err(Gf2Error::EmptySet)));
        assert!(matches!(
            min_sumset_with_cap(8, 8, 6, 1000),
            Err(Gf2Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn colex_enumeration_is_complete() {
        let sets = colex_subsets_with_zero(8, 4);
        assert_eq!(sets.len(), 35);
        let mut uniq = sets.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 35);
        assert_eq!(sets[0], vec![0, 1, 2, 3]);
        assert_eq!(sets[1], vec![0, 1, 2, 4]);
    }

    fn arb_vec() -> impl Strategy<Value = Gf2Vector> {
        proptest::collection::vec(1usize..140, 0..8).prop_map(Gf2Vector::from_coords)
    }

    proptest! {
        #[test]
        fn addition_laws(a in arb_vec(), b in arb_vec(), c in arb_vec()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a + &a).is_zero());
        }

        #[test]
        fn reduce_is_a_coset_invariant(rows in proptest::collection::vec(arb_vec(), 0..6),
                                       x in arb_vec(),
                                       mix in proptest::collection::vec(any::<bool>(), 6)) {
            let b = Gf2Basis::from_vectors(&rows);
            let r = b.reduce(&x);
            prop_assert!(b.contains(&(&x + &r)));
            prop_assert_eq!(b.reduce(&r), r.clone());
            let mut y = x.clone();
            for (row, take) in rows.iter().zip(mix) {
                if take {
                    y += row;
                }
            }
            prop_assert_eq!(b.reduce(&y), r.clone());
            for lead in b.leading_coordinates() {
                prop_assert!(!r.get(lead));
            }
        }

        #[test]
        fn insert_tracks_dimension(rows in proptest::collection::vec(arb_vec(), 0..8), x in arb_vec()) {
            let mut b = Gf2Basis::from_vectors(&rows);
            let before = b.dim();
            let was_in = b.contains(&x);
            let grew = b.insert(&x);
            prop_assert_eq!(grew, !was_in);
            prop_assert_eq!(b.dim(), before + usize::from(grew));
            prop_assert!(b.contains(&x));
        }

        #[test]
        fn hex_round_trip(x in arb_vec()) {
            prop_assert_eq!(Gf2Vector::from_hex(&x.to_hex()).unwrap(), x);
        }
    }
}
