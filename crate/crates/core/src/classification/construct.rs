//! Realizing Nikulin triples as explicit orthogonal sums.

use crate::lattice::{IntegralLattice, LatticeError, NikulinTriple};

use super::standard::StandardLattice;

/// Summands available to the search, in tie-breaking order.
///
/// `E7(−1)` comes last: it is needed for triples such as `(8, 2, 1)` that no
/// sum of the other summands reaches.
pub const GENERATORS: [StandardLattice; 8] = [
    StandardLattice::U,
    StandardLattice::U2,
    StandardLattice::Plus2,
    StandardLattice::Minus2,
    StandardLattice::E8Minus1,
    StandardLattice::E8Minus2,
    StandardLattice::D4Minus1,
    StandardLattice::E7Minus1,
];

#[derive(Clone, Copy, Debug)]
struct Shape {
    rank: u32,
    a: u32,
    delta: u8,
    pos: u32,
}

fn shape(g: StandardLattice) -> Shape {
    let (rank, a, delta, pos) = match g {
        StandardLattice::U => (2, 0, 0, 1),
        StandardLattice::U2 => (2, 2, 0, 1),
        StandardLattice::Plus2 => (1, 1, 1, 1),
        StandardLattice::Minus2 => (1, 1, 1, 0),
        StandardLattice::E8Minus1 => (8, 0, 0, 0),
        StandardLattice::E8Minus2 => (8, 8, 0, 0),
        StandardLattice::D4Minus1 => (4, 2, 0, 0),
        StandardLattice::E7Minus1 => (7, 1, 1, 0),
        _ => unreachable!("not a generator"),
    };
    Shape { rank, a, delta, pos }
}

/// A decomposition as generator multiplicities, aligned with [`GENERATORS`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub counts: [u32; 8],
}

impl Decomposition {
    pub fn summands(&self) -> Vec<StandardLattice> {
        GENERATORS.iter().zip(self.counts).flat_map(|(&g, c)| std::iter::repeat_n(g, c as usize)).collect()
    }

    pub fn lattice(&self) -> IntegralLattice {
        let parts: Vec<IntegralLattice> = self.summands().into_iter().map(StandardLattice::lattice).collect();
        let name = self.to_string();
        IntegralLattice::direct_sum_all(&parts).with_name(name)
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = GENERATORS
            .iter()
            .zip(self.counts)
            .filter(|(_, c)| *c > 0)
            .map(|(g, c)| if c == 1 { g.label().to_string() } else { format!("{}^{c}", g.label()) })
            .collect();
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join("+"))
    }
}

fn search(
    idx: usize,
    counts: &mut [u32; 8],
    acc: Shape,
    target: Shape,
    best: &mut Option<(u32, Vec<StandardLattice>, [u32; 8])>,
) {
    if idx == GENERATORS.len() {
        if acc.rank == target.rank && acc.a == target.a && acc.delta == target.delta && acc.pos == target.pos {
            let total: u32 = counts.iter().sum();
            let seq = Decomposition { counts: *counts }.summands();
            let better = match best {
                None => true,
                Some((t, s, _)) => (total, &seq) < (*t, s),
            };
            if better {
                *best = Some((total, seq, *counts));
            }
        }
        return;
    }
    let g = shape(GENERATORS[idx]);
    let mut c = 0;
    loop {
        let next = Shape {
            rank: acc.rank + c * g.rank,
            a: acc.a + c * g.a,
            delta: if c > 0 { acc.delta.max(g.delta) } else { acc.delta },
            pos: acc.pos + c * g.pos,
        };
        if next.rank > target.rank || next.a > target.a || next.pos > target.pos {
            break;
        }
        counts[idx] = c;
        search(idx + 1, counts, next, target, best);
        c += 1;
    }
    counts[idx] = 0;
}

/// Minimal orthogonal sum of generators with invariants `t` and `pos` positive squares.
///
/// Among decompositions with the fewest summands the one whose sorted summand
/// list is lexicographically smallest in generator order wins. The result is
/// verified by recomputing its invariants.
pub fn decompose(t: NikulinTriple, pos: u32) -> Option<Decomposition> {
    let mut best = None;
    let mut counts = [0u32; 8];
    let zero = Shape { rank: 0, a: 0, delta: 0, pos: 0 };
    search(0, &mut counts, zero, Shape { rank: t.r, a: t.a, delta: t.delta, pos }, &mut best);
    best.map(|(_, _, counts)| Decomposition { counts })
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("no orthogonal sum of the generators has invariants {0} and signature ({1},{2})")]
    NoRepresentation(NikulinTriple, u32, u32),
    #[error("constructed lattice {name} has invariants {found}, expected {expected}")]
    RoundTrip { name: String, found: NikulinTriple, expected: NikulinTriple },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A lattice with invariants `t` and signature `(pos, r − pos)`.
pub fn construct_with_signature(t: NikulinTriple, pos: u32) -> Result<IntegralLattice, ConstructError> {
    let d = decompose(t, pos).ok_or(ConstructError::NoRepresentation(t, pos, t.r.saturating_sub(pos)))?;
    let lattice = d.lattice();
    let found = lattice.two_elementary_invariants()?;
    if found != t || lattice.signature() != (pos as usize, (t.r - pos) as usize) {
        return Err(ConstructError::RoundTrip { name: d.to_string(), found, expected: t });
    }
    Ok(lattice)
}

/// The Lorentzian lattice (signature `(1, r − 1)`) with invariants `t`.
pub fn construct_from_triple(t: NikulinTriple) -> Result<IntegralLattice, ConstructError> {
    construct_with_signature(t, 1)
}
