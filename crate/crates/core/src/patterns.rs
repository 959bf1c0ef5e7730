//! The seven 2×2 pattern classes and the exhaustive counting oracle.
//!
//! Row and column exchanges act on the sixteen 2×2 (0,1)-matrices with
//! seven orbits:
//!
//! | symbol | orbit                                   | size |
//! |--------|-----------------------------------------|------|
//! | `I`    | diagonal and anti-diagonal              | 2    |
//! | `Γ`    | exactly one zero entry                  | 4    |
//! | `C`    | exactly one one entry                   | 4    |
//! | `T`    | both ones in one row                    | 2    |
//! | `L`    | both ones in one column                 | 2    |
//! | `J`    | all ones                                | 1    |
//! | `O`    | all zeros                               | 1    |
//!
//! A matrix avoids a class when none of its 2×2 submatrices (any two rows,
//! any two columns) lies in the orbit.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default bound on `k·n` for exhaustive counting.
pub const DEFAULT_MAX_CELLS: usize = 24;
/// No oracle configuration may exceed this many cells.
pub const HARD_MAX_CELLS: usize = 30;

/// A 2×2 (0,1)-matrix `(a, b; c, d)` packed as `a b c d` from bit 3 down to bit 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern2x2(u8);

impl Pattern2x2 {
    pub const fn new(a: bool, b: bool, c: bool, d: bool) -> Self {
        Pattern2x2(((a as u8) << 3) | ((b as u8) << 2) | ((c as u8) << 1) | d as u8)
    }

    /// Builds a pattern from its rows, e.g. `[[1, 0], [0, 1]]`.
    pub fn from_rows(rows: [[u8; 2]; 2]) -> Self {
        Self::new(rows[0][0] != 0, rows[0][1] != 0, rows[1][0] != 0, rows[1][1] != 0)
    }

    pub fn from_bits(bits: u8) -> Self {
        Pattern2x2(bits & 0xf)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Entries in reading order `[a, b, c, d]`.
    pub fn entries(self) -> [bool; 4] {
        [self.0 & 8 != 0, self.0 & 4 != 0, self.0 & 2 != 0, self.0 & 1 != 0]
    }

    pub fn ones(self) -> u32 {
        self.0.count_ones()
    }

    pub fn swap_rows(self) -> Self {
        let [a, b, c, d] = self.entries();
        Self::new(c, d, a, b)
    }

    pub fn swap_cols(self) -> Self {
        let [a, b, c, d] = self.entries();
        Self::new(b, a, d, c)
    }

    pub fn complement(self) -> Self {
        Pattern2x2(!self.0 & 0xf)
    }

    pub fn transpose(self) -> Self {
        let [a, b, c, d] = self.entries();
        Self::new(a, c, b, d)
    }

    /// All sixteen 2×2 patterns.
    pub fn all() -> impl Iterator<Item = Pattern2x2> {
        (0u8..16).map(Pattern2x2)
    }

    /// Column types `(top << 1) | bottom` of the left and right column.
    fn column_types(self) -> (usize, usize) {
        let [a, b, c, d] = self.entries();
        (((a as usize) << 1) | c as usize, ((b as usize) << 1) | d as usize)
    }
}

impl fmt::Display for Pattern2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.entries().map(u8::from);
        write!(f, "({},{};{},{})", e[0], e[1], e[2], e[3])
    }
}

/// One of the seven orbit symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    I,
    Gamma,
    C,
    T,
    L,
    J,
    O,
}

impl Symbol {
    pub const ALL: [Symbol; 7] = [
        Symbol::I,
        Symbol::Gamma,
        Symbol::C,
        Symbol::T,
        Symbol::L,
        Symbol::J,
        Symbol::O,
    ];

    fn index(self) -> usize {
        self as usize
    }

    /// Canonical ASCII name.
    pub fn name(self) -> &'static str {
        match self {
            Symbol::I => "I",
            Symbol::Gamma => "GAMMA",
            Symbol::C => "C",
            Symbol::T => "T",
            Symbol::L => "L",
            Symbol::J => "J",
            Symbol::O => "O",
        }
    }

    /// Whether `p` belongs to this symbol's orbit.
    pub fn matches(self, p: Pattern2x2) -> bool {
        let [a, b, c, d] = p.entries();
        match self {
            Symbol::J => p.ones() == 4,
            Symbol::O => p.ones() == 0,
            Symbol::Gamma => p.ones() == 3,
            Symbol::C => p.ones() == 1,
            Symbol::I => p.ones() == 2 && a == d && b == c,
            Symbol::T => p.ones() == 2 && a == b && c == d,
            Symbol::L => p.ones() == 2 && a == c && b == d,
        }
    }

    /// Image under swapping zeros and ones.
    pub fn complement(self) -> Symbol {
        match self {
            Symbol::Gamma => Symbol::C,
            Symbol::C => Symbol::Gamma,
            Symbol::J => Symbol::O,
            Symbol::O => Symbol::J,
            s => s,
        }
    }

    /// Image under transposition.
    pub fn transpose(self) -> Symbol {
        match self {
            Symbol::T => Symbol::L,
            Symbol::L => Symbol::T,
            s => s,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let sym = match t.to_lowercase().as_str() {
            "i" => Symbol::I,
            "gamma" | "γ" | "g" => Symbol::Gamma,
            "c" => Symbol::C,
            "t" => Symbol::T,
            "l" => Symbol::L,
            "j" => Symbol::J,
            "o" => Symbol::O,
            _ => return Err(Error::UnknownSymbol(t.to_string())),
        };
        Ok(sym)
    }
}

/// A symbol together with its full orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternClass {
    pub symbol: Symbol,
    pub orbit: Vec<Pattern2x2>,
}

impl PatternClass {
    pub fn new(symbol: Symbol) -> Self {
        PatternClass {
            symbol,
            orbit: class_orbit(symbol),
        }
    }

    pub fn contains(&self, p: Pattern2x2) -> bool {
        self.orbit.contains(&p)
    }
}

/// The orbit of `symbol` under row and column exchange, sorted by bit value.
pub fn class_orbit(symbol: Symbol) -> Vec<Pattern2x2> {
    Pattern2x2::all().filter(|&p| symbol.matches(p)).collect()
}

/// A nonempty set of symbols, stored as a 7-bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AvoidanceSpec(u8);

impl AvoidanceSpec {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let mask = symbols.into_iter().fold(0u8, |m, s| m | 1 << s.index());
        if mask == 0 {
            return Err(Error::EmptyAlpha);
        }
        Ok(AvoidanceSpec(mask))
    }

    pub fn single(symbol: Symbol) -> Self {
        AvoidanceSpec(1 << symbol.index())
    }

    /// Every nonempty subset of the seven symbols.
    pub fn all_subsets() -> impl Iterator<Item = AvoidanceSpec> {
        (1u8..128).map(AvoidanceSpec)
    }

    pub fn symbols(self) -> impl Iterator<Item = Symbol> {
        Symbol::ALL
            .into_iter()
            .filter(move |s| self.0 & (1 << s.index()) != 0)
    }

    pub fn contains(self, s: Symbol) -> bool {
        self.0 & (1 << s.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn is_subset(self, other: AvoidanceSpec) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement_image(self) -> AvoidanceSpec {
        AvoidanceSpec::new(self.symbols().map(Symbol::complement)).unwrap()
    }

    pub fn transpose_image(self) -> AvoidanceSpec {
        AvoidanceSpec::new(self.symbols().map(Symbol::transpose)).unwrap()
    }

    /// `φ(k, n; α) = φ(n, k; α)` holds for every `k, n`.
    pub fn is_transpose_symmetric(self) -> bool {
        self.transpose_image() == self
    }

    pub fn classes(self) -> Vec<PatternClass> {
        self.symbols().map(PatternClass::new).collect()
    }

    /// All patterns forbidden by the set.
    pub fn forbidden_patterns(self) -> Vec<Pattern2x2> {
        Pattern2x2::all()
            .filter(|&p| self.symbols().any(|s| s.matches(p)))
            .collect()
    }
}

impl fmt::Display for AvoidanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.symbols().map(Symbol::name).collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for AvoidanceSpec {
    type Err = Error;

    /// Comma separated symbols, optionally in braces: `"gamma,C"`, `"{T, L}"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let symbols = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Symbol>>>()?;
        AvoidanceSpec::new(symbols)
    }
}

impl From<Symbol> for AvoidanceSpec {
    fn from(s: Symbol) -> Self {
        AvoidanceSpec::single(s)
    }
}

/// A k×n (0,1)-matrix stored as one bitmask per row; column `j` is bit `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= 64, "at most 64 columns are supported");
        BitMatrix {
            rows,
            cols,
            data: vec![0; rows],
        }
    }

    /// Builds a matrix from explicit 0/1 rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        m
    }

    /// The matrix whose entry `(i, j)` is bit `i·n + j` of `index`.
    pub fn from_index(rows: usize, cols: usize, index: u64) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        let w = m.width_mask();
        for (i, r) in m.data.iter_mut().enumerate() {
            *r = (index >> (i * cols)) & w;
        }
        m
    }

    pub fn from_row_masks(cols: usize, masks: Vec<u64>) -> Self {
        let mut m = BitMatrix {
            rows: masks.len(),
            cols,
            data: masks,
        };
        let w = m.width_mask();
        m.data.iter_mut().for_each(|r| *r &= w);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_mask(&self, i: usize) -> u64 {
        self.data[i]
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.data
    }

    fn width_mask(&self) -> u64 {
        width_mask(self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.data[i] >> j & 1 != 0
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(i < self.rows && j < self.cols);
        if v {
            self.data[i] |= 1 << j;
        } else {
            self.data[i] &= !(1 << j);
        }
    }

    /// The 2×2 submatrix on rows `i, j` and columns `p, q`, in that order.
    pub fn submatrix(&self, i: usize, j: usize, p: usize, q: usize) -> Pattern2x2 {
        Pattern2x2::new(self.get(i, p), self.get(i, q), self.get(j, p), self.get(j, q))
    }

    pub fn complement(&self) -> BitMatrix {
        let w = self.width_mask();
        BitMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| !r & w).collect(),
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.rows);
        BitMatrix {
            rows: self.rows,
            cols: self.cols,
            data: perm.iter().map(|&p| self.data[p]).collect(),
        }
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut m = BitMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, &p) in perm.iter().enumerate() {
                m.set(i, j, self.get(i, p));
            }
        }
        m
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn width_mask(cols: usize) -> u64 {
    if cols >= 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

/// Lookup table answering "does this pair of rows contain a forbidden 2×2?".
///
/// For a pair of rows every column has a type `(top, bottom) ∈ {0,1}²`. A
/// 2×2 submatrix is an unordered pair of columns, so whether a forbidden
/// pattern occurs only depends on how many columns of each type are present,
/// clipped at two. That gives `3^4 = 81` signatures.
#[derive(Clone, Debug)]
pub struct ForbiddenTable {
    hits: [bool; 81],
}

impl ForbiddenTable {
    pub fn from_patterns(patterns: impl IntoIterator<Item = Pattern2x2>) -> Self {
        let mut hits = [false; 81];
        let pairs: Vec<(usize, usize)> = patterns.into_iter().map(Pattern2x2::column_types).collect();
        for (sig, hit) in hits.iter_mut().enumerate() {
            let counts = [sig % 3, sig / 3 % 3, sig / 9 % 3, sig / 27 % 3];
            *hit = pairs.iter().any(|&(s, t)| {
                if s == t {
                    counts[s] >= 2
                } else {
                    counts[s] >= 1 && counts[t] >= 1
                }
            });
        }
        ForbiddenTable { hits }
    }

    pub fn from_spec(spec: AvoidanceSpec) -> Self {
        Self::from_patterns(spec.forbidden_patterns())
    }

    /// Whether rows `top` and `bottom` (restricted to `width`) contain a forbidden pattern.
    #[inline]
    pub fn row_pair_hits(&self, top: u64, bottom: u64, width: u64) -> bool {
        #[inline]
        fn clip(x: u64) -> usize {
            (x.count_ones() as usize).min(2)
        }
        let t11 = top & bottom;
        let t10 = top & !bottom;
        let t01 = !top & bottom & width;
        let t00 = !(top | bottom) & width;
        let sig = clip(t00) + 3 * clip(t01) + 9 * clip(t10) + 27 * clip(t11);
        self.hits[sig]
    }

    #[inline]
    fn rows_hit(&self, rows: &[u64], width: u64) -> bool {
        for (i, &a) in rows.iter().enumerate() {
            for &b in &rows[i + 1..] {
                if self.row_pair_hits(a, b, width) {
                    return true;
                }
            }
        }
        false
    }

    pub fn matrix_hits(&self, m: &BitMatrix) -> bool {
        self.rows_hit(&m.data, m.width_mask())
    }
}

/// Whether some 2×2 submatrix of `m` lies in the orbit of `class`.
pub fn contains_class(m: &BitMatrix, class: &PatternClass) -> bool {
    ForbiddenTable::from_patterns(class.orbit.iter().copied()).matrix_hits(m)
}

/// Whether `m` contains `p` itself as a submatrix with rows and columns kept in order.
///
/// This is the single-pattern notion; avoidance counting always uses whole
/// classes via [`contains_class`].
pub fn contains_pattern(m: &BitMatrix, p: Pattern2x2) -> bool {
    for i in 0..m.rows() {
        for j in i + 1..m.rows() {
            for a in 0..m.cols() {
                for b in a + 1..m.cols() {
                    if m.submatrix(i, j, a, b) == p {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn avoids(m: &BitMatrix, spec: AvoidanceSpec) -> bool {
    !ForbiddenTable::from_spec(spec).matrix_hits(m)
}

/// Exhaustive counter over all `2^(k·n)` matrices.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    max_cells: usize,
    parallel: bool,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_cells: DEFAULT_MAX_CELLS,
            parallel: true,
        }
    }
}

impl Oracle {
    /// An oracle with a custom guard, clamped to [`HARD_MAX_CELLS`].
    pub fn with_max_cells(max_cells: usize) -> Self {
        Oracle {
            max_cells: max_cells.min(HARD_MAX_CELLS),
            ..Oracle::default()
        }
    }

    pub fn serial(self) -> Self {
        Oracle {
            parallel: false,
            ..self
        }
    }

    pub fn max_cells(&self) -> usize {
        self.max_cells
    }

    pub fn check_size(&self, k: usize, n: usize) -> Result<()> {
        let cells = k.saturating_mul(n);
        if cells > self.max_cells {
            return Err(Error::SizeLimitExceeded {
                k,
                n,
                cells,
                limit: self.max_cells,
            });
        }
        Ok(())
    }

    /// Number of k×n matrices avoiding every class in `spec`.
    ///
    /// Follows the empty-matrix conventions: one 0×0 matrix, no k×0 or 0×n
    /// matrices for positive `k` or `n`.
    pub fn count(&self, k: usize, n: usize, spec: AvoidanceSpec) -> Result<BigInt> {
        self.check_size(k, n)?;
        if k == 0 || n == 0 {
            return Ok(BigInt::from((k == 0 && n == 0) as u8));
        }
        let table = ForbiddenTable::from_spec(spec);
        let total = 1u64 << (k * n);
        let width = width_mask(n);
        let count_range = |lo: u64, hi: u64| -> u64 {
            let mut rows = [0u64; HARD_MAX_CELLS];
            let rows = &mut rows[..k];
            let mut hits = 0u64;
            for idx in lo..hi {
                for (i, r) in rows.iter_mut().enumerate() {
                    *r = (idx >> (i * n)) & width;
                }
                if !table.rows_hit(rows, width) {
                    hits += 1;
                }
            }
            hits
        };
        const CHUNK: u64 = 1 << 14;
        let count = if self.parallel && total > CHUNK {
            (0..total.div_ceil(CHUNK))
                .into_par_iter()
                .map(|c| count_range(c * CHUNK, ((c + 1) * CHUNK).min(total)))
                .sum()
        } else {
            count_range(0, total)
        };
        Ok(BigInt::from(count))
    }
}

/// [`Oracle::count`] with the default guard of [`DEFAULT_MAX_CELLS`].
pub fn count_avoiders(k: usize, n: usize, spec: AvoidanceSpec) -> Result<BigInt> {
    Oracle::default().count(k, n, spec)
}
