//! The published families: for each, its group, a pair of spherical systems
//! and the expected invariants of the surface. Used as golden data.

use std::sync::Arc;

use serde::Serialize;

use crate::catalog::classification_groups;
use crate::enumerate::{EnumerateError, SphericalSystem};
use crate::fp::AbelianInvariants;
use crate::geometry::Signature;
use crate::perm::PermGroup;

/// A spherical system as printed: permutations, or coordinate vectors over
/// the generators of an abelian group.
#[derive(Clone, Copy, Debug)]
pub enum SystemData {
    Cycles(&'static [&'static str]),
    Vectors(&'static [&'static [u32]]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pi1Expectation {
    Finite(u64),
    /// Some normal subgroup with quotient `quotient` has free abelianization of rank `rank`.
    Infinite { quotient: &'static str, index: usize, rank: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct ReferenceFamily {
    /// Row of the table of surfaces, from 1.
    pub row: usize,
    pub k_squared: u32,
    pub group: &'static str,
    pub t1: &'static str,
    pub t2: &'static str,
    pub genera: (u64, u64),
    pub sys1: SystemData,
    pub sys2: SystemData,
    pub h1: &'static str,
    pub pi1: Pi1Expectation,
}

impl ReferenceFamily {
    pub fn signatures(&self) -> (Signature, Signature) {
        (self.t1.parse().expect("valid signature"), self.t2.parse().expect("valid signature"))
    }

    pub fn build_group(&self) -> Arc<PermGroup> {
        classification_groups()
            .into_iter()
            .find(|e| e.label == self.group)
            .expect("every reference group is bundled")
            .build()
            .expect("bundled generators are valid")
    }

    pub fn systems(&self) -> Result<(SphericalSystem, SphericalSystem), EnumerateError> {
        self.systems_in(&self.build_group())
    }

    pub fn systems_in(&self, group: &Arc<PermGroup>) -> Result<(SphericalSystem, SphericalSystem), EnumerateError> {
        Ok((realize(group, self.sys1)?, realize(group, self.sys2)?))
    }

    pub fn expected_h1(&self) -> AbelianInvariants {
        self.h1.parse().expect("valid abelian group")
    }

    /// The text a report prints for this family's fundamental group.
    pub fn pi1_summary(&self) -> String {
        match self.pi1 {
            Pi1Expectation::Finite(n) if self.expected_h1().order().is_some_and(|o| o == n.into()) => {
                self.h1.to_string()
            }
            Pi1Expectation::Finite(n) => format!("finite({n})"),
            Pi1Expectation::Infinite { quotient, rank, .. } => format!("Z^{rank} <| pi1 ->> {quotient}"),
        }
    }
}

fn realize(group: &Arc<PermGroup>, data: SystemData) -> Result<SphericalSystem, EnumerateError> {
    match data {
        SystemData::Cycles(cycles) => SphericalSystem::from_cycles(group.clone(), cycles),
        SystemData::Vectors(vectors) => {
            let gens = group.generator_ids();
            let elements = vectors
                .iter()
                .map(|v| group.product(v.iter().zip(&gens).map(|(&k, &g)| group.pow(g, k as i64))))
                .collect();
            SphericalSystem::new(group.clone(), elements)
        }
    }
}

/// Number of families in the given table row.
pub fn families_in_row(row: usize) -> usize {
    REFERENCE_FAMILIES.iter().filter(|f| f.row == row).count()
}

pub const REFERENCE_FAMILIES: &[ReferenceFamily] = &[
    ReferenceFamily {
        row: 1,
        k_squared: 2,
        group: "PSL(2,7)",
        t1: "2,3,7",
        t2: "4,4,4",
        genera: (3, 22),
        sys1: SystemData::Cycles(&["(1,3)(2,6)", "(1,2,7)(3,4,5)", "(1,7,6,2,3,5,4)"]),
        sys2: SystemData::Cycles(&["(1,6,3,2)(4,7)", "(1,5,2,4)(3,6)", "(1,7,4,3)(2,5)"]),
        h1: "Z2^2",
        pi1: Pi1Expectation::Finite(4),
    },
    ReferenceFamily {
        row: 1,
        k_squared: 2,
        group: "PSL(2,7)",
        t1: "2,3,7",
        t2: "4,4,4",
        genera: (3, 22),
        sys1: SystemData::Cycles(&["(1,3)(2,6)", "(1,2,7)(3,4,5)", "(1,7,6,2,3,5,4)"]),
        sys2: SystemData::Cycles(&["(1,6)(2,5,3,7)", "(1,7,3,4)(2,6)", "(1,4,5,2)(6,7)"]),
        h1: "Z2^2",
        pi1: Pi1Expectation::Finite(4),
    },
    ReferenceFamily {
        row: 2,
        k_squared: 2,
        group: "S5",
        t1: "2,4,5",
        t2: "2,6,6",
        genera: (4, 11),
        sys1: SystemData::Cycles(&["(2,5)", "(1,4,3,5)", "(1,2,5,3,4)"]),
        sys2: SystemData::Cycles(&["(1,3)(2,5)", "(1,4,2)(3,5)", "(1,5)(2,4,3)"]),
        h1: "Z3",
        pi1: Pi1Expectation::Finite(3),
    },
    ReferenceFamily {
        row: 3,
        k_squared: 2,
        group: "A5",
        t1: "2,5,5",
        t2: "2,2,2,3",
        genera: (4, 6),
        sys1: SystemData::Cycles(&["(2,3)(4,5)", "(1,5,3,4,2)", "(1,3,4,2,5)"]),
        sys2: SystemData::Cycles(&["(1,4)(3,5)", "(1,5)(2,4)", "(1,3)(2,4)", "(1,5,4)"]),
        h1: "Z5",
        pi1: Pi1Expectation::Finite(5),
    },
    ReferenceFamily {
        row: 4,
        k_squared: 2,
        group: "S4xZ2",
        t1: "2,4,6",
        t2: "2,2,2,4",
        genera: (3, 7),
        sys1: SystemData::Cycles(&["(1,3)(5,6)", "(1,3,4,2)", "(1,2,4)(5,6)"]),
        sys2: SystemData::Cycles(&["(1,2)(5,6)", "(3,4)", "(1,4)", "(1,3,4,2)(5,6)"]),
        h1: "Z2^2",
        pi1: Pi1Expectation::Finite(4),
    },
    ReferenceFamily {
        row: 5,
        k_squared: 2,
        group: "S3xS3",
        t1: "2,6,6",
        t2: "2,2,2,3",
        genera: (4, 4),
        sys1: SystemData::Cycles(&["(2,3)(4,6)", "(1,2,3)(4,5)", "(1,2)(4,5,6)"]),
        sys2: SystemData::Cycles(&["(1,3)", "(4,6)", "(2,3)(5,6)", "(1,3,2)(4,6,5)"]),
        h1: "Z3",
        pi1: Pi1Expectation::Finite(3),
    },
    ReferenceFamily {
        row: 6,
        k_squared: 2,
        group: "Z4^2",
        t1: "4,4,4",
        t2: "4,4,4",
        genera: (3, 3),
        sys1: SystemData::Vectors(&[&[1,3], &[1,0], &[2,1]]),
        sys2: SystemData::Vectors(&[&[3,2], &[0,1], &[1,1]]),
        h1: "Z2^3",
        pi1: Pi1Expectation::Finite(8),
    },
    ReferenceFamily {
        row: 7,
        k_squared: 2,
        group: "D4xZ2",
        t1: "2,2,2,4",
        t2: "2,2,2,4",
        genera: (3, 3),
        sys1: SystemData::Cycles(&["(2,4)", "(5,6)", "(1,2)(3,4)", "(1,4,3,2)(5,6)"]),
        sys2: SystemData::Cycles(&["(1,2)(3,4)", "(1,3)(5,6)", "(1,3)(2,4)(5,6)", "(1,2,3,4)"]),
        h1: "Z2xZ4",
        pi1: Pi1Expectation::Finite(8),
    },
    ReferenceFamily {
        row: 8,
        k_squared: 4,
        group: "S5",
        t1: "2,4,5",
        t2: "3,6,6",
        genera: (4, 21),
        sys1: SystemData::Cycles(&["(2,5)", "(1,4,3,5)", "(1,2,5,3,4)"]),
        sys2: SystemData::Cycles(&["(1,3,2)", "(1,3,5)(2,4)", "(1,5)(2,4,3)"]),
        h1: "Z3^2",
        pi1: Pi1Expectation::Infinite { quotient: "Z3", index: 3, rank: 2 },
    },
    ReferenceFamily {
        row: 9,
        k_squared: 4,
        group: "A5",
        t1: "2,5,5",
        t2: "2,2,3,3",
        genera: (4, 11),
        sys1: SystemData::Cycles(&["(2,3)(4,5)", "(1,5,3,4,2)", "(1,3,4,2,5)"]),
        sys2: SystemData::Cycles(&["(1,5)(3,4)", "(1,2)(3,5)", "(3,5,4)", "(1,2,5)"]),
        h1: "Z15",
        pi1: Pi1Expectation::Finite(15),
    },
    ReferenceFamily {
        row: 10,
        k_squared: 4,
        group: "S4xZ2",
        t1: "2,4,6",
        t2: "2,2,4,4",
        genera: (3, 13),
        sys1: SystemData::Cycles(&["(1,3)(5,6)", "(1,3,4,2)", "(1,2,4)(5,6)"]),
        sys2: SystemData::Cycles(&["(2,4)", "(2,4)", "(1,3,2,4)(5,6)", "(1,4,2,3)(5,6)"]),
        h1: "Z2^2xZ4",
        pi1: Pi1Expectation::Infinite { quotient: "Z4", index: 4, rank: 2 },
    },
    ReferenceFamily {
        row: 11,
        k_squared: 4,
        group: "S4xZ2",
        t1: "2,4,6",
        t2: "2,2,2,2,2",
        genera: (3, 13),
        sys1: SystemData::Cycles(&["(1,3)(5,6)", "(1,3,4,2)", "(1,2,4)(5,6)"]),
        sys2: SystemData::Cycles(&["(1,2)(3,4)(5,6)", "(3,4)(5,6)", "(1,3)", "(2,3)", "(1,3)"]),
        h1: "Z2^3",
        pi1: Pi1Expectation::Infinite { quotient: "Z2", index: 2, rank: 2 },
    },
    ReferenceFamily {
        row: 12,
        k_squared: 4,
        group: "Z2^4:Z2",
        t1: "2,2,2,4",
        t2: "2,2,2,4",
        genera: (5, 5),
        sys1: SystemData::Cycles(&["(2,4)(6,8)", "(1,2)(3,4)(5,6)(7,8)", "(1,2)(3,4)", "(2,4)(5,8,7,6)"]),
        sys2: SystemData::Cycles(&["(1,2)(3,4)(5,7)(6,8)", "(5,6)(7,8)", "(2,4)(6,8)", "(1,2,3,4)(5,8,7,6)"]),
        h1: "Z4^2",
        pi1: Pi1Expectation::Finite(32),
    },
    ReferenceFamily {
        row: 13,
        k_squared: 4,
        group: "S4",
        t1: "3,4,4",
        t2: "2,2,2,2,2",
        genera: (3, 7),
        sys1: SystemData::Cycles(&["(1,3,2)", "(1,4,3,2)", "(1,3,4,2)"]),
        sys2: SystemData::Cycles(&["(1,3)", "(1,4)", "(1,2)(3,4)", "(1,2)", "(1,4)"]),
        h1: "Z2^2xZ4",
        pi1: Pi1Expectation::Infinite { quotient: "Z4", index: 4, rank: 2 },
    },
    ReferenceFamily {
        row: 14,
        k_squared: 4,
        group: "S3xZ3",
        t1: "3,6,6",
        t2: "2,2,3,3",
        genera: (4, 4),
        sys1: SystemData::Cycles(&["(1,3,2)", "(2,3)(4,6,5)", "(1,2)(4,5,6)"]),
        sys2: SystemData::Cycles(&["(1,3)", "(1,3)", "(1,2,3)(4,5,6)", "(1,3,2)(4,6,5)"]),
        h1: "Z3^2",
        pi1: Pi1Expectation::Infinite { quotient: "Z3", index: 3, rank: 2 },
    },
    ReferenceFamily {
        row: 15,
        k_squared: 4,
        group: "Z3^2:Z2",
        t1: "2,2,3,3",
        t2: "2,2,3,3",
        genera: (4, 4),
        sys1: SystemData::Cycles(&["(2,3)(5,6)", "(2,3)(4,5)", "(1,2,3)(4,6,5)", "(1,3,2)"]),
        sys2: SystemData::Cycles(&["(2,3)(5,6)", "(1,2)(4,6)", "(1,3,2)(4,6,5)", "(4,6,5)"]),
        h1: "Z3^3",
        pi1: Pi1Expectation::Finite(27),
    },
    ReferenceFamily {
        row: 16,
        k_squared: 4,
        group: "D4xZ2",
        t1: "2,2,2,4",
        t2: "2,2,2,2,2",
        genera: (3, 5),
        sys1: SystemData::Cycles(&["(1,3)(5,6)", "(1,4)(2,3)(5,6)", "(1,3)(2,4)(5,6)", "(1,2,3,4)(5,6)"]),
        sys2: SystemData::Cycles(&["(5,6)", "(2,4)", "(1,2)(3,4)", "(1,2)(3,4)(5,6)", "(2,4)"]),
        h1: "Z2^2xZ4",
        pi1: Pi1Expectation::Infinite { quotient: "D4", index: 8, rank: 2 },
    },
    ReferenceFamily {
        row: 17,
        k_squared: 4,
        group: "Z4xZ2",
        t1: "2,2,4,4",
        t2: "2,2,4,4",
        genera: (3, 3),
        sys1: SystemData::Vectors(&[&[2,1], &[2,1], &[3,1], &[1,1]]),
        sys2: SystemData::Vectors(&[&[0,1], &[0,1], &[3,0], &[1,0]]),
        h1: "Z2^3xZ4",
        pi1: Pi1Expectation::Infinite { quotient: "Z2^2", index: 4, rank: 4 },
    },
    ReferenceFamily {
        row: 18,
        k_squared: 4,
        group: "Z2^3",
        t1: "2,2,2,2,2",
        t2: "2,2,2,2,2",
        genera: (3, 3),
        sys1: SystemData::Vectors(&[&[0,0,1], &[0,1,1], &[0,0,1], &[1,1,1], &[1,0,0]]),
        sys2: SystemData::Vectors(&[&[1,0,0], &[1,0,1], &[0,1,0], &[1,1,0], &[1,0,1]]),
        h1: "Z2^3xZ4",
        pi1: Pi1Expectation::Infinite { quotient: "Z2^2", index: 4, rank: 4 },
    },
    ReferenceFamily {
        row: 19,
        k_squared: 6,
        group: "A6",
        t1: "2,5,5",
        t2: "3,3,4",
        genera: (19, 16),
        sys1: SystemData::Cycles(&["(1,6)(3,4)", "(2,5,4,3,6)", "(1,6,4,5,2)"]),
        sys2: SystemData::Cycles(&["(1,5,6)", "(1,4,6)(2,3,5)", "(1,5,3,2)(4,6)"]),
        h1: "Z15",
        pi1: Pi1Expectation::Finite(60),
    },
    ReferenceFamily {
        row: 19,
        k_squared: 6,
        group: "A6",
        t1: "2,5,5",
        t2: "3,3,4",
        genera: (19, 16),
        sys1: SystemData::Cycles(&["(1,6)(3,4)", "(2,5,4,3,6)", "(1,6,4,5,2)"]),
        sys2: SystemData::Cycles(&["(1,2,3)(4,5,6)", "(1,2,5)", "(1,4,6,5)(2,3)"]),
        h1: "Z15",
        pi1: Pi1Expectation::Finite(60),
    },
    ReferenceFamily {
        row: 20,
        k_squared: 6,
        group: "S5xZ2",
        t1: "2,4,6",
        t2: "2,4,10",
        genera: (11, 19),
        sys1: SystemData::Cycles(&["(1,3)(4,5)(6,7)", "(1,5,2,4)(6,7)", "(1,5,3)(2,4)"]),
        sys2: SystemData::Cycles(&["(2,5)(6,7)", "(1,4,3,2)", "(1,5,2,3,4)(6,7)"]),
        h1: "Z2xZ4",
        pi1: Pi1Expectation::Finite(120),
    },
    ReferenceFamily {
        row: 21,
        k_squared: 6,
        group: "PSL(2,7)",
        t1: "2,7,7",
        t2: "3,3,4",
        genera: (19, 8),
        sys1: SystemData::Cycles(&["(2,7)(4,6)", "(1,2,3,5,6,7,4)", "(1,6,5,3,7,4,2)"]),
        sys2: SystemData::Cycles(&["(1,5,7)(2,3,4)", "(1,4,5)(3,6,7)", "(2,4,7,6)(3,5)"]),
        h1: "Z21",
        pi1: Pi1Expectation::Finite(84),
    },
    ReferenceFamily {
        row: 21,
        k_squared: 6,
        group: "PSL(2,7)",
        t1: "2,7,7",
        t2: "3,3,4",
        genera: (19, 8),
        sys1: SystemData::Cycles(&["(2,7)(4,6)", "(1,2,3,5,6,7,4)", "(1,6,5,3,7,4,2)"]),
        sys2: SystemData::Cycles(&["(1,2,7)(3,6,4)", "(1,5,7)(2,3,4)", "(1,2,6,3)(5,7)"]),
        h1: "Z21",
        pi1: Pi1Expectation::Finite(84),
    },
    ReferenceFamily {
        row: 22,
        k_squared: 6,
        group: "A5",
        t1: "2,5,5",
        t2: "2,3,3,3",
        genera: (4, 16),
        sys1: SystemData::Cycles(&["(2,3)(4,5)", "(1,5,3,4,2)", "(1,3,4,2,5)"]),
        sys2: SystemData::Cycles(&["(1,3)(2,4)", "(1,2,3)", "(2,3,5)", "(2,5,4)"]),
        h1: "Z3xZ15",
        pi1: Pi1Expectation::Infinite { quotient: "Z15", index: 15, rank: 2 },
    },
    ReferenceFamily {
        row: 23,
        k_squared: 6,
        group: "S4xZ2",
        t1: "2,4,6",
        t2: "2,2,2,2,4",
        genera: (3, 19),
        sys1: SystemData::Cycles(&["(1,3)", "(1,3,2,4)(5,6)", "(1,4,2)(5,6)"]),
        sys2: SystemData::Cycles(&["(2,3)(5,6)", "(1,2)(3,4)(5,6)", "(1,3)(5,6)", "(1,3)(5,6)", "(1,3,4,2)"]),
        h1: "Z2^3xZ4",
        pi1: Pi1Expectation::Infinite { quotient: "Z4xZ2", index: 8, rank: 4 },
    },
    ReferenceFamily {
        row: 24,
        k_squared: 6,
        group: "D4xZ2",
        t1: "2,2,2,4",
        t2: "2,2,2,2,4",
        genera: (3, 7),
        sys1: SystemData::Cycles(&["(2,4)", "(1,4)(2,3)", "(1,3)(2,4)(5,6)", "(1,4,3,2)(5,6)"]),
        sys2: SystemData::Cycles(&["(5,6)", "(5,6)", "(1,2)(3,4)(5,6)", "(1,3)(5,6)", "(1,4,3,2)"]),
        h1: "Z2^2xZ4^2",
        pi1: Pi1Expectation::Infinite { quotient: "Z2^2", index: 4, rank: 6 },
    },
];
