use super::{LaplaceClass, Manifold};

pub struct Raw {
    pub name: &'static str,
    pub manifold: Manifold,
    pub class: Option<LaplaceClass>,
    pub free: Option<&'static str>,
    pub has_b: bool,
}

const fn sys(name: &'static str, manifold: Manifold, class: LaplaceClass, free: &'static str, has_b: bool) -> Raw {
    Raw { name, manifold, class: Some(class), free: Some(free), has_b }
}

const fn koenigs(name: &'static str, class: LaplaceClass) -> Raw {
    Raw { name, manifold: Manifold::Koenigs, class: Some(class), free: None, has_b: false }
}

use LaplaceClass::*;
use Manifold::*;

// L1 = X1, L2 = X2, H = X3.
pub const SYSTEMS: &[Raw] = &[
    sys("E1", Flat, C211, "X1*X2*(X3+X2)", false),
    sys("E2", Flat, C31, "X1^2*(X3+X1)", false),
    sys("E3'", Flat, C0, "0", false),
    sys("E7", Flat, C22, "X1*X2^2 + b*X2*X3^2", true),
    sys("E8", Flat, C22, "X1*X2^2", false),
    sys("E9", Flat, C4, "X1*(X1+X3)^2", false),
    sys("E10", Flat, C4, "X1^3", false),
    sys("E11", Flat, C0, "X1*X3^2", false),
    Raw { name: "E15", manifold: Flat, class: None, free: Some("X1^3"), has_b: false },
    sys("E16", Flat, C211, "X1*(X1*X3 + X2^2)", false),
    sys("E17", Flat, C22, "X1*X2^2", false),
    sys("E19", Flat, C22, "X1*(X2^2 + X3^2)", false),
    sys("E20", Flat, C0, "X3*(X1^2 + X2^2)", false),
    sys("S1", Sphere, C31, "X1^3", false),
    sys("S2", Sphere, C211, "X1*X2^2", false),
    sys("S4", Sphere, C211, "X1*X2^2", false),
    sys("S7", Sphere, C1111, "X1^2*X2 + X2^2*X1 - 1/16*X1^2*X3", false),
    sys("S8", Sphere, C1111, "X1^2*X2 + X1*X2^2 - 1/4*X1*X2*X3", false),
    sys("S9", Sphere, C1111, "X1^2*X2 + X1*X2^2 + 1/16*X1*X2*X3", false),
    sys("D1A", Darboux1, C4, "X1^3 + X2*X1*X3 - b*X1^2*X3 - 2*i*b*X3^2*X2", true),
    sys("D1B", Darboux1, C31, "X1^3 + X2*X1*X3", false),
    sys("D1C", Darboux1, C0, "X2*X3^2", false),
    sys("D2A", Darboux2, C31, "X1^3 + X1^2*X3 + 1/4*X1*X3^2", false),
    sys("D2B", Darboux2, C211, "X1*X2^2 + X1*X2*X3 - 1/16*X2*X3^2", false),
    sys("D2C", Darboux2, C211, "X1*X2^2 + X1^2*X3 - 1/4*X1*X3^2", false),
    sys("D3A", Darboux3, C0, "X3*(X1^2 + X2^2 - X3^2)", false),
    sys("D3B", Darboux3, C211, "X1*X2^2 + X3*X1^2 - 1/4*X3^2*X1", false),
    sys("D3C", Darboux3, C22, "X1*X2^2 + X1^2*X3 - 1/8*X1*X3^2", false),
    sys("D3D", Darboux3, C22, "X1*X2^2 + X1*X2*X3 + X2*X3^2 - X3^3", false),
    sys("D4A", Darboux4, C211, "X1*X2^2", true),
    sys("D4B", Darboux4, C1111, "X1*X2^2 + X1^2*X2 + b*X3*X2^2 - 4*X3^2*X2", true),
    sys(
        "D4C",
        Darboux4,
        C1111,
        "-b/4096*X3^3 + X1^2*X2 + X1*X2^2 - b/16*X1*X2*X3 - b/16*X2^2*X3 + 1/256*X1*X3^2",
        true,
    ),
    koenigs("K[1,1,1,1]", C1111),
    koenigs("K[2,1,1]", C211),
    koenigs("K[2,2]", C22),
    koenigs("K[3,1]", C31),
    koenigs("K[4]", C4),
    koenigs("K[0]", C0),
];

/// Class lists in printed order.
pub fn class_members(c: LaplaceClass) -> &'static [&'static str] {
    match c {
        C1111 => &["S9", "S8", "S7", "D4B", "D4C", "K[1,1,1,1]"],
        C211 => &["S4", "S2", "E1", "E16", "D4A", "D3B", "D2B", "D2C", "K[2,1,1]"],
        C22 => &["E8", "E17", "E7", "E19", "D3C", "D3D", "K[2,2]"],
        C31 => &["S1", "E2", "D1B", "D2A", "K[3,1]"],
        C4 => &["E10", "E9", "D1A", "K[4]"],
        C0 => &["E20", "E11", "E3'", "D1C", "D3A", "K[0]"],
    }
}

/// Casimirs with potential parameters a1..a4, where printed.
pub fn parameterized(name: &str) -> Option<&'static str> {
    Some(match name {
        "S9" => {
            "X1^2*X2 + X1*X2^2 + X1*X2*(X3-a4) - a2*(X3-a4)^2 - 2*a2*X1*(X3-a4) - 2*a2*X2*(X3-a4) \
             - (a3+a2)*X1^2 - (a3+3*a2+a1)*X1*X2 - (a2+a1)*X2^2 + (2*a2*a3+2*a2^2+2*a1*a2)*(X3-a4) \
             + 2*(a2^2+a2*a3+a1*a2)*X1 + 2*(a2^2+a2*a3+a1*a2)*X2 + 2*a1*a2*a3 - 2*a1*a2^2 - 2*a2^2*a3 \
             - a2*a3^2 - a2*a1^2 - a2^3"
        }
        "E1" => {
            "X1*X2*(X3-a4) + X2^2*X1 - a3*(X3-a4)^2 - 2*a3*X2*(X3-a4) - (a3+a2)*X2^2 - a1*X1^2 + 4*a1*a2*a3"
        }
        "E8" => "X2^2*X1 - a2*(X3-a4)*X2 + 4*a1*a3*X1 + a1*(X3-a4)^2 - a3*a2^2",
        "E2" => {
            "X1^3 + X1*X3^2 - 2*X1^2*X3 + (-2*a4*X1 - a2*X2)*X3 + 2*a4*X1^2 + (a2*X2 + 4*a1*a3 + a4^2)*X1 \
             + 4*a1*X2^2 + a2*a4*X2 - 1/4*a2^2*a3"
        }
        "E10" => {
            "X1^3 + 2*a1*X1^2 - a3*X1*X2 + a3*(X3-a4)^2 + 2*a2*X1*(X3-a4) + 2*a1*a2*(X3-a4) + a1^2*X1 + a2^2*X2"
        }
        "E3'" => "-4*a1*(X1^2+X2^2-X2*X3) - 2*a2*a3*X1 + (a2^2 - a3^2 - 4*a1*a4)*X2 - a3^2*a4 + a3^2*X3",
        _ => return None,
    })
}

/// Potentials in tetraspherical coordinates: terms (numerator, denominator).
pub fn potential_terms(c: LaplaceClass) -> &'static [(&'static str, &'static str)] {
    match c {
        C1111 => &[("a1", "x1^2"), ("a2", "x2^2"), ("a3", "x3^2"), ("a4", "x4^2")],
        C211 => &[("a1", "x1^2"), ("a2", "x2^2"), ("a3*(x3-i*x4)", "(x3+i*x4)^3"), ("a4", "(x3+i*x4)^2")],
        C22 => &[
            ("a1", "(x1+i*x2)^2"),
            ("a2*(x1-i*x2)", "(x1+i*x2)^3"),
            ("a3", "(x3+i*x4)^2"),
            ("a4*(x3-i*x4)", "(x3+i*x4)^3"),
        ],
        C31 => &[
            ("a1", "(x3+i*x4)^2"),
            ("a2*x1", "(x3+i*x4)^3"),
            ("a3*(4*x1^2+x2^2)", "(x3+i*x4)^4"),
            ("a4", "x2^2"),
        ],
        C4 => &[
            ("a1", "(x3+i*x4)^2"),
            ("a2*(x1+i*x2)", "(x3+i*x4)^3"),
            ("a3*(3*(x1+i*x2)^2 - 2*(x3+i*x4)*(x1-i*x2))", "(x3+i*x4)^4"),
            ("a4*(4*(x3+i*x4)*(x3^2+x4^2) + 2*(x1+i*x2)^3)", "(x3+i*x4)^5"),
        ],
        C0 => &[
            ("a1", "(x3+i*x4)^2"),
            ("a2*x1+a3*x2", "(x3+i*x4)^3"),
            ("a4*(x1^2+x2^2)", "(x3+i*x4)^4"),
        ],
    }
}

/// Common denominators for `potential_terms`.
pub fn potential_denominator(c: LaplaceClass) -> &'static str {
    match c {
        C1111 => "x1^2*x2^2*x3^2*x4^2",
        C211 => "x1^2*x2^2*(x3+i*x4)^3",
        C22 => "(x1+i*x2)^3*(x3+i*x4)^3",
        C31 => "x2^2*(x3+i*x4)^4",
        C4 => "(x3+i*x4)^5",
        C0 => "(x3+i*x4)^4",
    }
}

/// Reference arrows between the representative algebras, transcribed by hand.
pub const DIAGRAM_EDGES: &[(&str, &str)] = &[
    ("S9", "E11"),
    ("S9", "E1"),
    ("S9", "E17"),
    ("S9", "E2"),
    ("S9", "E10"),
    ("S9", "E20"),
    ("D4C(b!=0)", "E11"),
    ("D4C(b!=0)", "E17"),
    ("D4C(b!=0)", "E10"),
    ("D4C(b!=0)", "E20"),
    ("D4C(b=0)", "E17"),
    ("D4C(b=0)", "E10"),
    ("D4C(b=0)", "E11"),
    ("S7", "E16"),
    ("S7", "E17"),
    ("S7", "E2"),
    ("S7", "E10"),
    ("S7", "E11"),
    ("D3D", "E10"),
    ("D3D", "E17"),
    ("D3D", "E11"),
    ("D2C", "E17"),
    ("D2C", "E16"),
    ("D2C", "E10"),
    ("D2C", "E2"),
    ("D2C", "E11"),
    ("E16", "E17"),
    ("E16", "E10"),
    ("E16", "E2"),
    ("E16", "E20"),
    ("E16", "E11"),
    ("D2B", "E10"),
    ("D2B", "E17"),
    ("D2B", "E2"),
    ("D2B", "E11"),
    ("E1", "E17"),
    ("E1", "E10"),
    ("E1", "E2"),
    ("E1", "E20"),
    ("E1", "E11"),
    ("E17", "E10"),
    ("E17", "E2"),
    ("E17", "E11"),
    ("D1A(b!=0)", "E11"),
    ("D1A(b!=0)", "E10"),
    ("D1A(b!=0)", "E2"),
    ("D1A(b!=0)", "E20"),
    ("D1A(b!=0)", "D3A"),
    ("D1A(b=0)", "E10"),
    ("D1A(b=0)", "E20"),
    ("D1A(b=0)", "E11"),
    ("E2", "E10"),
    ("E2", "E11"),
    ("D3A", "E20"),
    ("D3A", "E11"),
    ("E20", "E11"),
];
