//! Words in a finitely generated free group.
//!
//! Letters are generators and their inverses, ordered a < A < b < B < ...
//! (text encoding: lowercase is a generator, uppercase its inverse, so "aB"
//! is the word a b⁻¹). Words are kept freely reduced; cyclic words are kept
//! in a canonical form that is invariant under rotation and inversion.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("word reduces to the identity")]
    EmptyWord,
    #[error("letter {0:?} is outside the basis of rank {1}")]
    LetterOutOfRange(Letter, usize),
    #[error("cannot parse {0:?} as a letter (expected ascii alphabetic)")]
    BadChar(char),
    #[error("invalid multiplier set: need x in Z and inverse(x) not in Z")]
    InvalidAutomorphism,
}

/// A generator or its inverse. Internally `2 * index + (1 if inverse)`,
/// which makes the derived order exactly a < A < b < B < ...
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Letter {
        Letter((index as u32) << 1 | inverse as u32)
    }

    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    /// Position in the a < A < b < B < ... order; useful as a bitset slot.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// All 2*rank letters in order.
    pub fn alphabet(rank: usize) -> impl Iterator<Item = Letter> {
        (0..2 * rank as u32).map(Letter)
    }

    pub fn parse(c: char) -> Result<Letter, WordError> {
        if c.is_ascii_lowercase() {
            Ok(Letter::new(c as usize - 'a' as usize, false))
        } else if c.is_ascii_uppercase() {
            Ok(Letter::new(c as usize - 'A' as usize, true))
        } else {
            Err(WordError::BadChar(c))
        }
    }

    pub fn render(self) -> char {
        let i = self.index();
        if i < 26 {
            let base = if self.is_inverse() { b'A' } else { b'a' };
            (base + i as u8) as char
        } else {
            '?'
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A freely reduced word. The identity is the empty word.
///
/// Ordering is shortlex: shorter words first, ties by letter order. That is
/// the tie-break used everywhere a canonical representative is picked.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn single(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    /// Free reduction: cancel adjacent inverse pairs.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Reduced product self * other.
    pub fn mul(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn mul_letter(&self, l: Letter) -> Word {
        Word::reduce(self.letters.iter().copied().chain([l]))
    }

    /// Longest common prefix length with another reduced word. In the tree
    /// picture this locates the meeting point of the two geodesics from the
    /// identity vertex.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.letters
            .iter()
            .zip(other.letters.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.index()).max()
    }

    pub fn parse(text: &str, rank: usize) -> Result<Word, WordError> {
        let mut letters = Vec::with_capacity(text.len());
        for c in text.trim().chars() {
            let l = Letter::parse(c)?;
            if l.index() >= rank {
                return Err(WordError::LetterOutOfRange(l, rank));
            }
            letters.push(l);
        }
        Ok(Word::reduce(letters))
    }

    /// Text form, "1" for the identity.
    pub fn text(&self) -> String {
        if self.letters.is_empty() {
            "1".to_string()
        } else {
            self.letters.iter().map(|l| l.render()).collect()
        }
    }

    /// Splits off the cyclically reduced core and canonicalizes it.
    pub fn cyclic_reduce(&self) -> Result<CyclicReduction, WordError> {
        let w = &self.letters;
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        if lo == hi {
            return Err(WordError::EmptyWord);
        }
        let stripped = Word {
            letters: w[..lo].to_vec(),
        };
        let core_raw = w[lo..hi].to_vec();
        let canonical = canonical_cyclic(&core_raw);
        // Find the rotation of the raw core that matches the canonical
        // letters directly, or their inverse when canonicalization flipped.
        let (split, inverted) = match find_rotation(&core_raw, &canonical) {
            Some(k) => (k, false),
            None => {
                let inv: Vec<Letter> = canonical.iter().rev().map(|l| l.inverse()).collect();
                let k = find_rotation(&core_raw, &inv)
                    .expect("canonical form is a rotation of the core or of its inverse");
                (k, true)
            }
        };
        let conjugator = Word::reduce(
            stripped
                .letters
                .iter()
                .copied()
                .chain(core_raw[..split].iter().copied()),
        );
        Ok(CyclicReduction {
            core: CyclicWord { letters: canonical },
            conjugator,
            inverted,
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

fn rotation_of(v: &[Letter], k: usize) -> Vec<Letter> {
    let mut r = v[k..].to_vec();
    r.extend_from_slice(&v[..k]);
    r
}

fn find_rotation(v: &[Letter], target: &[Letter]) -> Option<usize> {
    (0..v.len()).find(|&k| rotation_of(v, k) == target)
}

/// Lexicographic minimum over all rotations of v and of its inverse.
fn canonical_cyclic(v: &[Letter]) -> Vec<Letter> {
    let inv: Vec<Letter> = v.iter().rev().map(|l| l.inverse()).collect();
    let mut best = rotation_of(v, 0);
    for k in 1..v.len() {
        let c = rotation_of(v, k);
        if c < best {
            best = c;
        }
    }
    for k in 0..inv.len() {
        let c = rotation_of(&inv, k);
        if c < best {
            best = c;
        }
    }
    best
}

/// Result of cyclic reduction. The group identity that holds is
/// `original = conjugator * r * conjugator⁻¹` where r is the core's letters
/// when `inverted` is false and their inverse otherwise. (The canonical form
/// minimizes over inversion too, and a nontrivial word is never conjugate to
/// its own inverse, hence the flag.)
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReduction {
    pub core: CyclicWord,
    pub conjugator: Word,
    pub inverted: bool,
}

impl CyclicReduction {
    /// Reassembles the group element this reduction came from.
    pub fn reassemble(&self) -> Word {
        let mid = if self.inverted {
            self.core.as_word().inverse()
        } else {
            self.core.as_word()
        };
        self.conjugator.mul(&mid).mul(&self.conjugator.inverse())
    }
}

/// A nonempty cyclically reduced word stored in canonical form: the
/// lexicographic minimum over all rotations of the word and of its inverse.
/// Two generators of the same unoriented periodic line compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn parse(text: &str, rank: usize) -> Result<CyclicWord, WordError> {
        Ok(Word::parse(text, rank)?.cyclic_reduce()?.core)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_word(&self) -> Word {
        Word {
            letters: self.letters.clone(),
        }
    }

    pub fn text(&self) -> String {
        self.as_word().text()
    }

    /// Letter at a cyclic position (any integer).
    pub fn letter_at(&self, pos: i64) -> Letter {
        let n = self.letters.len() as i64;
        self.letters[pos.rem_euclid(n) as usize]
    }

    /// Smallest period and exponent: `self = root^exponent` letter for
    /// letter. The root of a canonical word is itself canonical.
    pub fn primitive_root(&self) -> (CyclicWord, usize) {
        let n = self.letters.len();
        for p in 1..=n {
            if n % p != 0 {
                continue;
            }
            if (p..n).all(|i| self.letters[i] == self.letters[i - p]) {
                let root = CyclicWord {
                    letters: self.letters[..p].to_vec(),
                };
                debug_assert_eq!(canonical_cyclic(&root.letters), root.letters);
                return (root, n / p);
            }
        }
        unreachable!("period n always works")
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().1 == 1
    }

    /// Reduced prefix of the bi-infinite power word: positions k >= 0 read
    /// letters of self^inf, positions k < 0 read letters of (self⁻¹)^inf.
    /// `|ray_prefix(k)| == |k|` always; this parameterizes the axis of the
    /// element through a basepoint.
    pub fn ray_prefix(&self, k: i64) -> Word {
        let n = self.letters.len() as i64;
        let mut letters = Vec::with_capacity(k.unsigned_abs() as usize);
        if k >= 0 {
            for i in 0..k {
                letters.push(self.letters[(i % n) as usize]);
            }
        } else {
            // Prefix of the inverse word repeated.
            let inv: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
            for i in 0..(-k) {
                letters.push(inv[(i % n) as usize]);
            }
        }
        // Cyclically reduced input makes this already reduced.
        Word { letters }
    }

    /// Longest prefix of `u` that matches self^inf (forward direction).
    pub fn match_forward(&self, u: &[Letter]) -> usize {
        let n = self.letters.len();
        u.iter()
            .enumerate()
            .take_while(|(i, l)| **l == self.letters[i % n])
            .count()
    }

    /// Longest prefix of `u` matching (self⁻¹)^inf.
    pub fn match_backward(&self, u: &[Letter]) -> usize {
        let inv: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        let n = inv.len();
        u.iter()
            .enumerate()
            .take_while(|(i, l)| **l == inv[i % n])
            .count()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.index()).max()
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.text())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// The automorphism that pushes the multiplier through the subset Z of
/// letters: the multiplier x is fixed, and a generator y picks up x on the
/// left when y is in Z, x⁻¹ on the right when y⁻¹ is in Z, and both when
/// both are (so y with y, y⁻¹ in Z is conjugated).
#[derive(Clone, PartialEq, Eq)]
pub struct WhiteheadAut {
    rank: usize,
    multiplier: Letter,
    z: BTreeSet<Letter>,
}

impl WhiteheadAut {
    pub fn new(rank: usize, multiplier: Letter, z: BTreeSet<Letter>) -> Result<Self, WordError> {
        if multiplier.index() >= rank {
            return Err(WordError::LetterOutOfRange(multiplier, rank));
        }
        for l in &z {
            if l.index() >= rank {
                return Err(WordError::LetterOutOfRange(*l, rank));
            }
        }
        if !z.contains(&multiplier) || z.contains(&multiplier.inverse()) {
            return Err(WordError::InvalidAutomorphism);
        }
        Ok(WhiteheadAut { rank, multiplier, z })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn multiplier(&self) -> Letter {
        self.multiplier
    }

    pub fn z(&self) -> &BTreeSet<Letter> {
        &self.z
    }

    /// Image of a single letter as a short word (1 to 3 letters).
    pub fn image(&self, l: Letter) -> Vec<Letter> {
        let x = self.multiplier;
        if l == x || l == x.inverse() {
            return vec![l];
        }
        let (y, inv) = if l.is_inverse() {
            (l.inverse(), true)
        } else {
            (l, false)
        };
        let mut img = Vec::with_capacity(3);
        if self.z.contains(&y) {
            img.push(x);
        }
        img.push(y);
        if self.z.contains(&y.inverse()) {
            img.push(x.inverse());
        }
        if inv {
            img.reverse();
            for l in &mut img {
                *l = l.inverse();
            }
        }
        img
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word::reduce(w.letters().iter().flat_map(|l| self.image(*l)))
    }

    /// Applies letterwise and re-canonicalizes. An automorphism never kills
    /// a nontrivial element, so the result is total.
    pub fn apply_cyclic(&self, w: &CyclicWord) -> CyclicWord {
        self.apply(&w.as_word())
            .cyclic_reduce()
            .expect("automorphism image of a nontrivial word is nontrivial")
            .core
    }

    /// The inverse pushes (Z minus x) plus x⁻¹ through x⁻¹.
    pub fn inverse(&self) -> WhiteheadAut {
        let x = self.multiplier;
        let mut z: BTreeSet<Letter> = self.z.iter().copied().filter(|l| *l != x).collect();
        z.insert(x.inverse());
        WhiteheadAut {
            rank: self.rank,
            multiplier: x.inverse(),
            z,
        }
    }
}

impl fmt::Debug for WhiteheadAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zs: String = self.z.iter().map(|l| l.render()).collect();
        write!(f, "push({}; {{{}}})", self.multiplier.render(), zs)
    }
}
