//! Small reference instances used by tests, the CLI `selftest` and benches.

use crate::format::parse_vass;
use crate::model::Vass;

/// Fourteen-state running example with twelve guarded states.
pub const RUNNING_EXAMPLE: &str = "\
# running example: three positive cycles at s1, s4, s10
state s0
state s1 60
state s2
state s3 30
state s4 90
state s5 41
state s6 96
state s7 70
state s8 80
state s9 80
state s10 120
state s11 43
state s12 130
state s13 130
edge s0 s1 12
edge s1 s2 -12
edge s2 s1 18
edge s1 s3 12
edge s3 s4 30
edge s4 s5 -52
edge s5 s6 52
edge s6 s4 9
edge s4 s7 4
edge s7 s8 4
edge s8 s9 -3
edge s9 s10 17
edge s10 s11 -80
edge s11 s12 81
edge s12 s13 3
edge s13 s10 6
init s0
target s13
";

/// Five-state domination example: three s0-s4 paths.
pub const DOMINATION_EXAMPLE: &str = "\
state s0
state s1
state s2
state s3
state s4
edge s0 s1 -2
edge s0 s2 -3
edge s0 s3 -4
edge s1 s4 3
edge s2 s4 3
edge s3 s4 6
init s0
target s4
";

pub fn running_example() -> Vass {
    parse_vass(RUNNING_EXAMPLE).expect("running example fixture parses")
}

pub fn domination_example() -> Vass {
    parse_vass(DOMINATION_EXAMPLE).expect("domination example fixture parses")
}
