//! Transcribed classification figures.
//!
//! Coordinates are `(r, a)` on the lattice grid of the figures; an open
//! marker means `δ = 0` and a filled marker `δ = 1`. The K3^[2] figures are
//! stored as records pairing the invariant sublattice `T` with its
//! complement `S` in the rank-23 lattice.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::lattice::NikulinTriple;

const K3_OPEN: [(u32, u32); 16] = [
    (2, 0),
    (2, 2),
    (6, 2),
    (6, 4),
    (10, 0),
    (10, 2),
    (10, 4),
    (10, 6),
    (10, 8),
    (10, 10),
    (14, 2),
    (14, 4),
    (14, 6),
    (18, 0),
    (18, 2),
    (18, 4),
];

const K3_FILLED: [(u32, u32); 59] = [
    (1, 1),
    (2, 2),
    (3, 1),
    (3, 3),
    (4, 2),
    (4, 4),
    (5, 3),
    (5, 5),
    (6, 4),
    (6, 6),
    (7, 3),
    (7, 5),
    (7, 7),
    (8, 2),
    (8, 4),
    (8, 6),
    (8, 8),
    (9, 1),
    (9, 3),
    (9, 5),
    (9, 7),
    (9, 9),
    (10, 2),
    (10, 4),
    (10, 6),
    (10, 8),
    (10, 10),
    (11, 1),
    (11, 3),
    (11, 5),
    (11, 7),
    (11, 9),
    (11, 11),
    (12, 2),
    (12, 4),
    (12, 6),
    (12, 8),
    (12, 10),
    (13, 3),
    (13, 5),
    (13, 7),
    (13, 9),
    (14, 4),
    (14, 6),
    (14, 8),
    (15, 3),
    (15, 5),
    (15, 7),
    (16, 2),
    (16, 4),
    (16, 6),
    (17, 1),
    (17, 3),
    (17, 5),
    (18, 2),
    (18, 4),
    (19, 1),
    (19, 3),
    (20, 2),
];

/// Rank of the second cohomology lattice of a K3^[2]-type manifold.
pub const K3_HILB2_RANK: u32 = 23;

/// The 75 invariant triples of holomorphic antisymplectic involutions on K3 surfaces.
pub fn k3_triples() -> Vec<NikulinTriple> {
    let mut out: Vec<NikulinTriple> = K3_OPEN
        .iter()
        .map(|&(r, a)| NikulinTriple::new(r, a, 0))
        .chain(K3_FILLED.iter().map(|&(r, a)| NikulinTriple::new(r, a, 1)))
        .collect();
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Hilb2Figure {
    /// Embeddings with `a(S) = a(T) + 1`.
    Plus,
    /// Embeddings with `a(S) = a(T) − 1`.
    Minus,
}

/// One marker of a K3^[2] figure: the invariant lattice `T` and its complement `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EmbeddingRecord {
    pub t: NikulinTriple,
    pub s: NikulinTriple,
}

/// All markers of a K3^[2] figure, sorted by `(T, S)`.
///
/// Both figures share the grid of the K3 figure. In the plus figure a marker
/// at `(r, a)` is `T = (r, a, δ)` with `δ` given by the marker and
/// `S = (23 − r, a + 1, 1)`. The minus figure is drawn on axes shifted by one
/// unit, so a marker at grid point `(r, a)` is `T = (r + 1, a + 1, 1)` with
/// `S = (22 − r, a, δ)`.
pub fn k3sq_records(which: Hilb2Figure) -> Vec<EmbeddingRecord> {
    let marks = K3_OPEN.iter().map(|&(r, a)| (r, a, 0u8)).chain(K3_FILLED.iter().map(|&(r, a)| (r, a, 1u8)));
    let mut out: Vec<EmbeddingRecord> = marks
        .map(|(r, a, d)| match which {
            Hilb2Figure::Plus => {
                EmbeddingRecord { t: NikulinTriple::new(r, a, d), s: NikulinTriple::new(K3_HILB2_RANK - r, a + 1, 1) }
            }
            Hilb2Figure::Minus => EmbeddingRecord {
                t: NikulinTriple::new(r + 1, a + 1, 1),
                s: NikulinTriple::new(K3_HILB2_RANK - r - 1, a, d),
            },
        })
        .collect();
    out.sort();
    out
}

/// Distinct `T` triples of a K3^[2] figure.
pub fn k3sq_figure(which: Hilb2Figure) -> BTreeSet<NikulinTriple> {
    k3sq_records(which).into_iter().map(|rec| rec.t).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_has_75_triples_within_bounds() {
        let t = k3_triples();
        assert_eq!(t.len(), 75);
        assert_eq!(t.iter().collect::<BTreeSet<_>>().len(), 75);
        assert!(t.contains(&NikulinTriple::new(10, 10, 0)));
        assert!(t.contains(&NikulinTriple::new(10, 8, 0)));
        for x in &t {
            assert!(x.a <= x.r && x.a <= 22 - x.r, "{x}");
            assert_eq!((x.r - x.a) % 2, 0, "{x}");
        }
    }

    #[test]
    fn minus_figure_has_odd_delta_t() {
        let recs = k3sq_records(Hilb2Figure::Minus);
        assert_eq!(recs.len(), 75);
        assert!(recs.iter().all(|r| r.t.delta == 1 && r.s.a + 1 == r.t.a));
        assert!(!k3sq_figure(Hilb2Figure::Minus).iter().any(|t| t.a == 0 && t.delta == 0));
    }

    #[test]
    fn plus_figure_matches_k3_grid() {
        let plus = k3sq_figure(Hilb2Figure::Plus);
        assert_eq!(plus, k3_triples().into_iter().collect());
        let rec = k3sq_records(Hilb2Figure::Plus).into_iter().find(|r| r.t == NikulinTriple::new(10, 10, 0)).unwrap();
        assert_eq!(rec.s.delta, 1);
        assert!(k3sq_records(Hilb2Figure::Plus).iter().all(|r| r.t.r + r.s.r == K3_HILB2_RANK && r.s.a == r.t.a + 1));
    }
}
