//! Symbol words, symbol streams, and the coding of points by composed
//! map enclosures.
//!
//! A word `w0 w1 … wn` codes the composition `f_{w0} ∘ … ∘ f_{wn}`
//! applied to the whole domain — the LAST symbol acts FIRST, so
//! appending a symbol refines the enclosure from the inside.  When the
//! enclosure of a growing prefix shrinks below a requested diameter the
//! prefix certifies a contraction along that symbol sequence, and its
//! center is a point of the target set with the diameter as a rigorous
//! radius bound.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::maps::IFSystem;
use crate::rng;
use crate::sets::{GridSet, IntervalBox, Point};

/// A finite sequence of 1-based map indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, symbol: u8) {
        self.0.push(symbol);
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// Parses a compact digit string such as "112" (symbols 1–9).
    pub fn parse(text: &str) -> Result<Word> {
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            match ch.to_digit(10) {
                Some(d) if d >= 1 => symbols.push(d as u8),
                _ => {
                    return Err(Error::InvalidMap(format!(
                        "word must be digits 1-9, got {text:?}"
                    )))
                }
            }
        }
        Ok(Word(symbols))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s <= 9) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

/// An infinite (or explicitly finite) source of symbols, addressable by
/// position so that every consumer sees the same deterministic sequence.
#[derive(Debug, Clone)]
pub enum SymbolStream {
    /// Repeats a fixed non-empty word forever.
    Periodic(Word),
    /// Enumerates every word over `1..=k` in order of length, then
    /// lexicographically, and concatenates them — so every finite word
    /// occurs as a factor.
    Disjunctive { k: usize },
    /// Independent draws from the weight distribution, keyed by a seed.
    Random { seed: u64, weights: Vec<f64> },
    /// A finite recorded sequence; reading past the end is an error.
    Explicit(Vec<u8>),
}

impl SymbolStream {
    pub fn periodic(word: Word) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidMap("periodic stream needs a non-empty word".into()));
        }
        Ok(SymbolStream::Periodic(word))
    }

    pub fn disjunctive(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidMap("stream needs at least one symbol".into()));
        }
        Ok(SymbolStream::Disjunctive { k })
    }

    pub fn random(seed: u64, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights".into()));
        }
        if weights.iter().any(|p| !(p > &0.0) || !p.is_finite()) {
            return Err(Error::InvalidWeights("weights must be strictly positive".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!("weights sum {sum}")));
        }
        Ok(SymbolStream::Random { seed, weights })
    }

    pub fn explicit(symbols: Vec<u8>) -> Self {
        SymbolStream::Explicit(symbols)
    }

    /// The symbol at position `n` (0-based).  Stateless: any position can
    /// be queried in any order with identical results.
    pub fn symbol(&self, n: usize) -> Result<u8> {
        match self {
            SymbolStream::Periodic(w) => Ok(w.symbols()[n % w.len()]),
            SymbolStream::Disjunctive { k } => Ok(disjunctive_symbol(*k, n)),
            SymbolStream::Random { seed, weights } => {
                let u = rng::unit_f64(*seed, n as u64);
                let mut acc = 0.0;
                for (i, p) in weights.iter().enumerate() {
                    acc += p;
                    if u < acc {
                        return Ok((i + 1) as u8);
                    }
                }
                Ok(weights.len() as u8)
            }
            SymbolStream::Explicit(v) => {
                v.get(n).copied().ok_or(Error::StreamExhausted { index: n })
            }
        }
    }
}

/// Position `n` of the canonical enumerate-all-words sequence over
/// `1..=k`: words ordered by length then lexicographically, concatenated.
fn disjunctive_symbol(k: usize, n: usize) -> u8 {
    if k == 1 {
        return 1;
    }
    let k = k as u128;
    let mut rem = n as u128;
    let mut len = 1u128;
    // The block of all length-`len` words contributes `len * k^len` symbols.
    let mut pow = k;
    while rem >= len * pow {
        rem -= len * pow;
        len += 1;
        pow *= k;
    }
    let word_index = rem / len;
    let offset = (rem % len) as u32;
    // Digit `offset` (most significant first) of `word_index` in base k,
    // padded to `len` digits.
    let shift = (len as u32 - 1) - offset;
    let digit = (word_index / k.pow(shift)) % k;
    (digit + 1) as u8
}

/// The first `n` symbols of the canonical all-words sequence.
pub fn disjunctive_prefix(k: usize, n: usize) -> Result<Word> {
    let stream = SymbolStream::disjunctive(k)?;
    let mut w = Word::empty();
    for i in 0..n {
        w.push(stream.symbol(i)?);
    }
    Ok(w)
}

/// Box enclosure of the composed image `f_{w0} ∘ … ∘ f_{wn}(X)` over the
/// whole domain `X`.  The empty word gives the domain box itself.
pub fn coding_composition_image(system: &IFSystem, word: &Word) -> Result<IntervalBox> {
    let bounds = system.domain().bounds();
    let mut acc = bounds;
    for &sym in word.symbols().iter().rev() {
        acc = system.map(sym)?.interval_image(&acc)?;
        // Strip any rounding fuzz so the chain stays inside the domain.
        acc = bounds.intersect(&acc).unwrap_or(acc);
    }
    Ok(acc)
}

/// Outcome of trying to certify contraction along a symbol stream.
#[derive(Debug, Clone)]
pub enum Certification {
    /// The composed enclosure of the first `prefix_len` symbols has
    /// diameter at most the requested bound.
    Certified { prefix_len: usize, image: IntervalBox },
    /// The budget ran out with the enclosure still too large.
    Undetermined { last_diameter: f64 },
}

/// Extends a prefix of the stream until the composed enclosure has
/// diameter at most `eps`, up to `budget` symbols.
pub fn certify_weak_hyperbolic(
    system: &IFSystem,
    stream: &SymbolStream,
    eps: f64,
    budget: usize,
) -> Result<Certification> {
    assert!(eps > 0.0, "certification diameter must be positive");
    let bounds = system.domain().bounds();
    let mut image = bounds;
    let mut prefix: Vec<u8> = Vec::new();
    loop {
        if image.diameter() <= eps {
            return Ok(Certification::Certified { prefix_len: prefix.len(), image });
        }
        if prefix.len() >= budget {
            return Ok(Certification::Undetermined { last_diameter: image.diameter() });
        }
        let sym = stream.symbol(prefix.len())?;
        // Appending acts innermost.  If the new map covers the whole
        // domain the chained enclosure cannot change; otherwise the
        // chain is recomputed right to left.
        let inner = system.map(sym)?.interval_image(&bounds)?;
        prefix.push(sym);
        if inner != bounds {
            let mut acc = bounds;
            for &s in prefix.iter().rev() {
                acc = system.map(s)?.interval_image(&acc)?;
                acc = bounds.intersect(&acc).unwrap_or(acc);
            }
            image = acc;
        }
    }
}

/// A point of the target set with a certified enclosure radius.
#[derive(Debug, Clone)]
pub struct CertifiedTargetPoint {
    pub point: Point,
    pub word: Word,
    /// Diameter of the certifying enclosure; the true coded point is
    /// within this distance of `point`.
    pub radius: f64,
}

/// Certifies a contraction along the stream and returns the coded point.
pub fn coding_point(
    system: &IFSystem,
    stream: &SymbolStream,
    eps: f64,
    budget: usize,
) -> Result<CertifiedTargetPoint> {
    match certify_weak_hyperbolic(system, stream, eps, budget)? {
        Certification::Certified { prefix_len, image } => {
            let mut word = Word::empty();
            for i in 0..prefix_len {
                word.push(stream.symbol(i)?);
            }
            Ok(CertifiedTargetPoint { point: image.center(), word, radius: image.diameter() })
        }
        Certification::Undetermined { .. } => Err(Error::NoCertificate),
    }
}

/// Depth-first enumeration of words in lexicographic order, emitting a
/// certified point whenever the composed enclosure shrinks to `eps` and
/// abandoning the branch there.  Points are deduplicated by the grid
/// cell of their center at resolution `res`; the result can be empty
/// when no word of length at most `max_len` certifies.
pub fn target_sample(
    system: &IFSystem,
    max_len: usize,
    eps: f64,
    res: [usize; 2],
) -> Result<Vec<CertifiedTargetPoint>> {
    let extensions: Vec<Vec<u8>> = (1..=system.k() as u8).map(|s| vec![s]).collect();
    sample_words(system, max_len, eps, res, &extensions)
}

/// Like [`target_sample`] but words are concatenations of the given
/// blocks, capped at `max_len` total symbols.
pub fn target_sample_blocks(
    system: &IFSystem,
    blocks: &[Word],
    max_len: usize,
    eps: f64,
    res: [usize; 2],
) -> Result<Vec<CertifiedTargetPoint>> {
    if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::InvalidMap("block sampling needs non-empty blocks".into()));
    }
    let extensions: Vec<Vec<u8>> = blocks.iter().map(|b| b.symbols().to_vec()).collect();
    sample_words(system, max_len, eps, res, &extensions)
}

fn sample_words(
    system: &IFSystem,
    max_len: usize,
    eps: f64,
    res: [usize; 2],
    extensions: &[Vec<u8>],
) -> Result<Vec<CertifiedTargetPoint>> {
    assert!(eps > 0.0, "certification diameter must be positive");
    let bounds = system.domain().bounds();
    let grid = GridSet::empty(system.domain(), res);
    let mut seen: HashSet<usize> = HashSet::new();
    let mut out = Vec::new();

    // Depth-first over words; each stack frame carries the word and its
    // composed enclosure.  Extensions are pushed in reverse so the
    // lexicographically first continuation is explored first.
    let mut stack: Vec<(Vec<u8>, IntervalBox)> = vec![(Vec::new(), bounds)];
    while let Some((word, image)) = stack.pop() {
        if image.diameter() <= eps {
            if !word.is_empty() {
                let center = image.center();
                let cell = grid.cell_of(center)?;
                if seen.insert(cell) {
                    out.push(CertifiedTargetPoint {
                        point: center,
                        word: Word::new(word),
                        radius: image.diameter(),
                    });
                }
            }
            continue;
        }
        if word.len() >= max_len {
            continue;
        }
        let mut children = Vec::new();
        for ext in extensions {
            let mut child = word.clone();
            child.extend_from_slice(ext);
            if child.len() > max_len {
                continue;
            }
            // Appending acts innermost: when the appended suffix maps the
            // domain onto itself the enclosure is unchanged, otherwise
            // the chain is recomputed right to left.
            let mut inner = bounds;
            for &s in ext.iter().rev() {
                inner = system.map(s)?.interval_image(&inner)?;
                inner = bounds.intersect(&inner).unwrap_or(inner);
            }
            let child_image = if inner == bounds {
                image
            } else {
                let mut acc = bounds;
                for &s in child.iter().rev() {
                    acc = system.map(s)?.interval_image(&acc)?;
                    acc = bounds.intersect(&acc).unwrap_or(acc);
                }
                acc
            };
            children.push((child, child_image));
        }
        for child in children.into_iter().rev() {
            stack.push(child);
        }
    }
    Ok(out)
}

/// Iterates the set operator from a single certified target point; the
/// limit approximates the closure of the target set from below.
pub fn semifractal_approx(
    system: &IFSystem,
    seed: &CertifiedTargetPoint,
    res: [usize; 2],
    n: usize,
    tol: f64,
) -> Result<crate::sets::ConvergenceReport> {
    let start = GridSet::singleton(system.domain(), res, seed.point)?;
    crate::hutchinson::bh_iterate(system, &start, n, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::MapDescriptor;
    use crate::sets::BoxDomain;
    use proptest::prelude::*;

    fn unit() -> BoxDomain {
        BoxDomain::new_1d(0.0, 1.0).unwrap()
    }

    fn cantor_system() -> IFSystem {
        let maps = vec![
            MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 0.0).unwrap(),
            MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 2.0 / 3.0).unwrap(),
        ];
        IFSystem::new(unit(), maps, None).unwrap()
    }

    fn involution_system() -> IFSystem {
        let maps = vec![
            MapDescriptor::affine_1d(unit(), 1.0, 0.0).unwrap(),
            MapDescriptor::affine_1d(unit(), -1.0, 1.0).unwrap(),
        ];
        IFSystem::new(unit(), maps, None).unwrap()
    }

    #[test]
    fn all_words_sequence_matches_known_prefixes() {
        let p2 = disjunctive_prefix(2, 8).unwrap();
        assert_eq!(p2.symbols(), &[1, 2, 1, 1, 1, 2, 2, 1]);
        let p3 = disjunctive_prefix(3, 6).unwrap();
        assert_eq!(p3.symbols(), &[1, 2, 3, 1, 1, 1]);
    }

    #[test]
    fn all_words_sequence_contains_every_short_factor() {
        // Every word of length <= 4 over {1,2} appears inside the prefix
        // that ends with the length-4 block (2 + 8 + 24 + 64 symbols).
        let prefix = disjunctive_prefix(2, 98).unwrap();
        let text = prefix.symbols();
        for len in 1..=4usize {
            for idx in 0..(1usize << len) {
                let word: Vec<u8> =
                    (0..len).rev().map(|b| ((idx >> b) & 1) as u8 + 1).collect();
                assert!(
                    text.windows(len).any(|w| w == &word[..]),
                    "missing factor {word:?}"
                );
            }
        }
    }

    #[test]
    fn composition_enclosures_on_thirds_maps() {
        let s = cantor_system();
        let w = Word::parse("11111").unwrap();
        let b = coding_composition_image(&s, &w).unwrap();
        assert!(b.lo[0].abs() < 1e-15);
        assert!((b.hi[0] - 3f64.powi(-5)).abs() < 1e-15);

        // Word "21": last symbol acts first, so the image is
        // f_2 applied after f_1... read as f_{w0} ∘ f_{w1}: f_2(f_1(X)).
        let w = Word::parse("21").unwrap();
        let b = coding_composition_image(&s, &w).unwrap();
        assert!((b.lo[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((b.hi[0] - 7.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn empty_word_encloses_whole_domain() {
        let s = cantor_system();
        let b = coding_composition_image(&s, &Word::empty()).unwrap();
        assert_eq!((b.lo[0], b.hi[0]), (0.0, 1.0));
    }

    #[test]
    fn certification_finds_shortest_contracting_prefix() {
        let s = cantor_system();
        let stream = SymbolStream::periodic(Word::parse("1").unwrap()).unwrap();
        match certify_weak_hyperbolic(&s, &stream, 1e-3, 100).unwrap() {
            Certification::Certified { prefix_len, image } => {
                // 3^-7 is the first power of 1/3 below 1e-3.
                assert_eq!(prefix_len, 7);
                assert!(image.diameter() <= 1e-3);
            }
            other => panic!("expected certification, got {other:?}"),
        }
    }

    #[test]
    fn isometries_never_certify() {
        let s = involution_system();
        let stream = SymbolStream::periodic(Word::parse("2").unwrap()).unwrap();
        match certify_weak_hyperbolic(&s, &stream, 0.1, 500).unwrap() {
            Certification::Undetermined { last_diameter } => {
                assert!((last_diameter - 1.0).abs() < 1e-15);
            }
            other => panic!("expected no certificate, got {other:?}"),
        }
    }

    #[test]
    fn coded_points_of_constant_streams_are_the_map_fixed_points() {
        let s = cantor_system();
        let ones = SymbolStream::periodic(Word::parse("1").unwrap()).unwrap();
        let p = coding_point(&s, &ones, 1e-9, 100).unwrap();
        assert!(p.point[0].abs() <= p.radius);
        assert!(p.radius <= 1e-9);

        let twos = SymbolStream::periodic(Word::parse("2").unwrap()).unwrap();
        let q = coding_point(&s, &twos, 1e-9, 100).unwrap();
        assert!((q.point[0] - 1.0).abs() <= q.radius);
    }

    #[test]
    fn coding_point_without_certificate_is_an_error() {
        let s = involution_system();
        let stream = SymbolStream::periodic(Word::parse("12").unwrap()).unwrap();
        assert!(matches!(
            coding_point(&s, &stream, 0.5, 50),
            Err(Error::NoCertificate)
        ));
    }

    #[test]
    fn stream_positions_are_stateless() {
        let stream = SymbolStream::random(
            7,
            vec![0.3, 0.7],
        )
        .unwrap();
        let forward: Vec<u8> = (0..64).map(|i| stream.symbol(i).unwrap()).collect();
        let backward: Vec<u8> = (0..64).rev().map(|i| stream.symbol(i).unwrap()).collect();
        let reversed: Vec<u8> = backward.into_iter().rev().collect();
        assert_eq!(forward, reversed);
        assert!(forward.iter().all(|&s| s == 1 || s == 2));
        assert!(forward.iter().any(|&s| s == 1));
        assert!(forward.iter().any(|&s| s == 2));
    }

    #[test]
    fn explicit_stream_ends() {
        let stream = SymbolStream::explicit(vec![1, 2]);
        assert_eq!(stream.symbol(1).unwrap(), 2);
        assert!(matches!(stream.symbol(2), Err(Error::StreamExhausted { index: 2 })));
    }

    #[test]
    fn sample_enumerates_the_level_five_cylinders() {
        let s = cantor_system();
        // Lengths 1-4 have enclosure diameter 3^-len > 0.01; length 5
        // certifies at 3^-5 ≈ 0.0041, so the sample is exactly the 32
        // length-5 cylinder centers.
        let sample = target_sample(&s, 8, 0.01, [1 << 10, 1]).unwrap();
        assert_eq!(sample.len(), 32);
        assert!(sample.iter().all(|p| p.word.len() == 5 && p.radius <= 0.01));
        // Lexicographic order of words means increasing centers here.
        let xs: Vec<f64> = sample.iter().map(|p| p.point[0]).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!((xs[0] - 3f64.powi(-5) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn sample_is_empty_when_nothing_contracts() {
        let s = involution_system();
        let sample = target_sample(&s, 12, 0.25, [1 << 10, 1]).unwrap();
        assert!(sample.is_empty());
    }

    #[test]
    fn block_sampling_respects_the_block_alphabet() {
        let s = cantor_system();
        let blocks = vec![Word::parse("11").unwrap(), Word::parse("22").unwrap()];
        let sample = target_sample_blocks(&s, &blocks, 8, 0.02, [1 << 10, 1]).unwrap();
        // Words are concatenations of "11" and "22": length 4 has
        // diameter 3^-4 ≈ 0.012 <= 0.02, so 4 two-block words certify.
        assert_eq!(sample.len(), 4);
        for p in &sample {
            let w = p.word.symbols();
            assert_eq!(w.len(), 4);
            assert!(w.chunks(2).all(|c| c == [1, 1] || c == [2, 2]));
        }
    }

    #[test]
    fn semifractal_seed_iteration_reaches_the_attractor() {
        let s = cantor_system();
        let stream = SymbolStream::periodic(Word::parse("1").unwrap()).unwrap();
        let seed = coding_point(&s, &stream, 1e-6, 100).unwrap();
        let rep = semifractal_approx(&s, &seed, [729, 1], 80, 1e-9).unwrap();
        // The limit contains both extreme fixed points.
        let cells: Vec<usize> = rep.final_set.iter_cells().collect();
        assert!(cells.contains(&0));
        assert!(cells.contains(&728));
    }

    proptest! {
        #[test]
        fn appending_symbols_shrinks_enclosures(
            syms in prop::collection::vec(1u8..=2, 1..12),
        ) {
            let s = cantor_system();
            let mut prev = coding_composition_image(&s, &Word::empty()).unwrap();
            let mut word = Word::empty();
            for sym in syms {
                word.push(sym);
                let next = coding_composition_image(&s, &word).unwrap();
                // Appending a contraction innermost can only shrink the
                // outer image.
                prop_assert!(next.lo[0] >= prev.lo[0] - 1e-15);
                prop_assert!(next.hi[0] <= prev.hi[0] + 1e-15);
                prop_assert!(next.diameter() <= prev.diameter() + 1e-15);
                prev = next;
            }
        }

        #[test]
        fn composition_box_contains_composed_evaluations(
            syms in prop::collection::vec(1u8..=2, 0..10),
            x in 0.0f64..=1.0,
        ) {
            let s = cantor_system();
            let word = Word::new(syms);
            let b = coding_composition_image(&s, &word).unwrap();
            // Evaluate the composition: last symbol first.
            let mut p = [x, 0.0];
            for &sym in word.symbols().iter().rev() {
                p = s.map(sym).unwrap().eval(p).unwrap();
            }
            prop_assert!(b.contains(p));
        }
    }
}
