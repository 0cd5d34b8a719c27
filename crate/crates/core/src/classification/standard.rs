//! Named lattices used throughout the classification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lattice::{IntegralLattice, LatticeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StandardLattice {
    U,
    U2,
    Plus2,
    Minus2,
    E8Minus1,
    E8Minus2,
    D4Minus1,
    D4,
    E7Minus1,
    K3,
    K3Hilb2,
}

const E8_CARTAN: [[i64; 8]; 8] = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, -1],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 0, 2],
];

const E7_CARTAN: [[i64; 7]; 7] = [
    [2, -1, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 2],
];

const D4_CARTAN: [[i64; 4]; 4] = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]];

fn scaled<const N: usize>(m: &[[i64; N]; N], k: i64) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(|&x| k * x).collect()).collect()
}

impl StandardLattice {
    pub const ALL: [StandardLattice; 11] = [
        StandardLattice::U,
        StandardLattice::U2,
        StandardLattice::Plus2,
        StandardLattice::Minus2,
        StandardLattice::E8Minus1,
        StandardLattice::E8Minus2,
        StandardLattice::D4Minus1,
        StandardLattice::D4,
        StandardLattice::E7Minus1,
        StandardLattice::K3,
        StandardLattice::K3Hilb2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            StandardLattice::U => "U",
            StandardLattice::U2 => "U(2)",
            StandardLattice::Plus2 => "<2>",
            StandardLattice::Minus2 => "<-2>",
            StandardLattice::E8Minus1 => "E8(-1)",
            StandardLattice::E8Minus2 => "E8(-2)",
            StandardLattice::D4Minus1 => "D4(-1)",
            StandardLattice::D4 => "D4",
            StandardLattice::E7Minus1 => "E7(-1)",
            StandardLattice::K3 => "K3",
            StandardLattice::K3Hilb2 => "K3Hilb2",
        }
    }

    pub fn gram(self) -> Vec<Vec<i64>> {
        match self {
            StandardLattice::U => vec![vec![0, 1], vec![1, 0]],
            StandardLattice::U2 => vec![vec![0, 2], vec![2, 0]],
            StandardLattice::Plus2 => vec![vec![2]],
            StandardLattice::Minus2 => vec![vec![-2]],
            StandardLattice::E8Minus1 => scaled(&E8_CARTAN, -1),
            StandardLattice::E8Minus2 => scaled(&E8_CARTAN, -2),
            StandardLattice::D4Minus1 => scaled(&D4_CARTAN, -1),
            StandardLattice::D4 => scaled(&D4_CARTAN, 1),
            StandardLattice::E7Minus1 => scaled(&E7_CARTAN, -1),
            StandardLattice::K3 => k3_parts().gram().to_vec(),
            StandardLattice::K3Hilb2 => k3_parts().direct_sum(&StandardLattice::Minus2.lattice()).gram().to_vec(),
        }
    }

    pub fn lattice(self) -> IntegralLattice {
        IntegralLattice::named(self.gram(), self.label()).expect("standard lattices are valid")
    }
}

fn k3_parts() -> IntegralLattice {
    let u = StandardLattice::U.lattice();
    let e8 = StandardLattice::E8Minus1.lattice();
    IntegralLattice::direct_sum_all([&u, &u, &u, &e8, &e8])
}

impl fmt::Display for StandardLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for StandardLattice {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StandardLattice::ALL
            .into_iter()
            .find(|l| l.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| LatticeError::Parse(format!("unknown lattice `{s}`")))
    }
}

pub fn standard_lattice(name: &str) -> Result<IntegralLattice, LatticeError> {
    Ok(name.parse::<StandardLattice>()?.lattice())
}
