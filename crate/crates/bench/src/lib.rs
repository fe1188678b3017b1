//! Inputs shared by the benchmarks in `benches/`.

use okounkov_core::{fixtures, DivisorClass, Flag, SurfaceModel};

/// A fixture together with a big class and an admissible big-and-nef flag.
pub struct Workload {
    pub model: SurfaceModel,
    pub class: DivisorClass,
    pub flag: Flag,
}

pub fn workloads() -> Vec<Workload> {
    vec![
        Workload {
            model: fixtures::quartic(),
            class: DivisorClass::from_ints(&[3, 2, 5]),
            flag: Flag::very_general(DivisorClass::from_ints(&[2, 2, 1])),
        },
        Workload {
            model: fixtures::del_pezzo_6(),
            class: DivisorClass::from_ints(&[5, -1, -2, -3]),
            flag: Flag::very_general(DivisorClass::from_ints(&[3, 0, -1, -1])),
        },
    ]
}
