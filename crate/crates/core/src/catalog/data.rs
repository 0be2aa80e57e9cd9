//! Static description of the classified systems.

use serde::Serialize;

/// Uninterpreted function with the concrete body used for probing.
#[derive(Debug, Serialize)]
pub struct FunctionSpec {
    pub name: &'static str,
    pub arity: usize,
    pub param: &'static str,
    pub instance: &'static str,
}

#[derive(Debug, Serialize)]
pub struct GeneratorSpec {
    pub name: &'static str,
    /// Operator text in the form accepted by `parse_operator`.
    pub text: &'static str,
    /// The generator as printed in the source, kept for auditing.
    pub printed: &'static str,
    /// Operator text of the printed form when it differs from `text`.
    pub as_printed: Option<&'static str>,
}

/// Expected commutator `[lhs.0, lhs.1] = rhs`.
#[derive(Debug, Serialize)]
pub struct RelationSpec {
    pub lhs: (&'static str, &'static str),
    pub rhs: &'static str,
    /// Right-hand side as printed in the source when it differs from `rhs`.
    pub printed: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct EntrySpec {
    pub id: &'static str,
    pub summary: &'static str,
    pub functions: &'static [FunctionSpec],
    /// Parameters with their probing values as `(name, value)`.
    pub params: &'static [(&'static str, &'static str)],
    pub mass: &'static str,
    pub potential: &'static str,
    pub generators: &'static [GeneratorSpec],
    pub relations: &'static [RelationSpec],
    /// Whether the probing instance is conformally flat.
    pub flat: bool,
}

const F_R: FunctionSpec = FunctionSpec {
    name: "f",
    arity: 1,
    param: "s",
    instance: "s^4 + 1",
};
const V_R: FunctionSpec = FunctionSpec {
    name: "V",
    arity: 1,
    param: "s",
    instance: "s^2",
};
const F_PHI: FunctionSpec = FunctionSpec {
    name: "F",
    arity: 1,
    param: "s",
    instance: "2 + sin(s)",
};
const U_PHI: FunctionSpec = FunctionSpec {
    name: "U",
    arity: 1,
    param: "s",
    instance: "cos(s)",
};

const P0: GeneratorSpec = GeneratorSpec {
    name: "P0",
    text: "P0",
    printed: r"P_0=\ri\frac{\p}{\p t}",
    as_printed: None,
};
const J: GeneratorSpec = GeneratorSpec {
    name: "Q1",
    text: "x1*p2 - x2*p1",
    printed: r"Q_1=J=x_1p_2-x_2p_1",
    as_printed: None,
};

const fn rel(a: &'static str, b: &'static str, rhs: &'static str) -> RelationSpec {
    RelationSpec {
        lhs: (a, b),
        rhs,
        printed: None,
    }
}

const fn erratum(a: &'static str, b: &'static str, rhs: &'static str, printed: &'static str) -> RelationSpec {
    RelationSpec {
        lhs: (a, b),
        rhs,
        printed: Some(printed),
    }
}

pub const ENTRIES: &[EntrySpec] = &[
    EntrySpec {
        id: "so3",
        summary: "radial mass and potential; rotations",
        functions: &[F_R, V_R],
        params: &[],
        mass: "f(r)",
        potential: "V(r)",
        generators: &[J, P0],
        relations: &[rel("Q1", "H", "0"), rel("P0", "P0", "0")],
        flat: false,
    },
    EntrySpec {
        id: "so4",
        summary: "maximally superintegrable, so(3) integrals",
        functions: &[],
        params: &[],
        mass: "(r^2 + 1)^2",
        potential: "-4*r^2",
        generators: &[
            J,
            GeneratorSpec {
                name: "Q2",
                text: "(x2^2 - x1^2 - 1)*p1 - 2*x1*x2*p2 + 2*i*x1",
                printed: r"Q_2=(x_2^2-x_1^2-1)p_1-2x_1x_2p_2+2\ri x_1",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q3",
                text: "(x1^2 - x2^2 - 1)*p2 - 2*x1*x2*p1 + 2*i*x2",
                printed: r"Q_3=(x_1^2-x_2^2-1)p_2-2x_1x_2p_1+2\ri x_2",
                as_printed: None,
            },
            P0,
        ],
        relations: &[
            rel("Q1", "Q2", "i*Q3"),
            rel("Q1", "Q3", "-i*Q2"),
            erratum("Q2", "Q3", "4*i*Q1", "i*Q1"),
            rel("Q1", "H", "0"),
            rel("Q2", "H", "0"),
            rel("Q3", "H", "0"),
        ],
        flat: false,
    },
    EntrySpec {
        id: "so5",
        summary: "superintegrable, so(1,2) integrals",
        functions: &[],
        params: &[],
        mass: "(r^2 - 1)^2",
        potential: "-4*r^2",
        generators: &[
            J,
            GeneratorSpec {
                name: "Q4",
                text: "(x2^2 - x1^2 + 1)*p1 - 2*x1*x2*p2 + 2*i*x1",
                printed: r"Q_4=(x_2^2-x_1^2+1)p_1-2x_1x_2p_2+2\ri x_1",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q5",
                text: "(x1^2 - x2^2 + 1)*p2 - 2*x1*x2*p1 + 2*i*x2",
                printed: r"Q_5=(x_1^2-x_2^2+1)p_2-2x_1x_2p_1+2\ri x_2",
                as_printed: None,
            },
            P0,
        ],
        relations: &[
            rel("Q1", "Q4", "i*Q5"),
            rel("Q1", "Q5", "-i*Q4"),
            erratum("Q4", "Q5", "-4*i*Q1", "-i*Q1"),
            rel("Q1", "H", "0"),
            rel("Q4", "H", "0"),
            rel("Q5", "H", "0"),
        ],
        flat: false,
    },
    EntrySpec {
        id: "t11",
        summary: "homogeneous mass and potential; dilations",
        functions: &[F_PHI, U_PHI],
        params: &[("alpha", "1")],
        mass: "r^(alpha + 2)*F(phi)",
        potential: "r^alpha*U(phi)",
        generators: &[
            GeneratorSpec {
                name: "Q6",
                text: "i*alpha*t*dt + x1*p1 + x2*p2",
                printed: r"Q_6=D=\ri\alpha t{\p_t}+x_1p_1+x_2p_2",
                as_printed: None,
            },
            P0,
        ],
        relations: &[erratum("Q6", "H", "-i*alpha*H", "2*i*H")],
        flat: false,
    },
    EntrySpec {
        id: "t14",
        summary: "radial mass, angle-linear potential; rotation with time shift",
        functions: &[F_R, V_R],
        params: &[("nu", "1")],
        mass: "f(r)",
        potential: "nu*phi + V(r)",
        generators: &[
            GeneratorSpec {
                name: "Q7",
                text: "J + nu*t",
                printed: r"Q_7=J+\nu t",
                as_printed: None,
            },
            P0,
        ],
        relations: &[
            erratum("Q7", "H", "-i*nu*I", "-nu*I"),
            rel("Q7", "I", "0"),
            rel("H", "I", "0"),
        ],
        flat: false,
    },
    EntrySpec {
        id: "t12",
        summary: "power of x1; translations in x2 and dilations",
        functions: &[],
        params: &[("alpha", "3"), ("nu", "1")],
        mass: "x1^(alpha + 2)",
        potential: "nu*x1^alpha",
        generators: &[
            GeneratorSpec {
                name: "Q8",
                text: "p2",
                printed: r"Q_8=p_2",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q9",
                text: "i*alpha*t*dt + x1*p1 + x2*p2",
                printed: r"Q_9=D",
                as_printed: None,
            },
            P0,
        ],
        relations: &[
            rel("Q8", "H", "0"),
            erratum("Q9", "H", "-i*alpha*H", "i*alpha*H"),
            rel("Q9", "Q8", "i*Q8"),
        ],
        flat: false,
    },
    EntrySpec {
        id: "t13",
        summary: "cubic mass, linear potential; Galilei-type algebra",
        functions: &[],
        params: &[("mu", "1"), ("nu", "1")],
        mass: "x1^3",
        potential: "mu*x1 + nu*x2",
        generators: &[
            GeneratorSpec {
                name: "Q10",
                text: "p2 + nu*t",
                printed: r"Q_{10}=p_2+\nu t",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q11",
                text: "i*t*dt + x1*p1 + x2*p2",
                printed: r"Q_{11}=\ri t{\p_t}+x_1p_1+x_2p_2",
                as_printed: None,
            },
            P0,
        ],
        relations: &[
            rel("Q10", "H", "-i*nu*I"),
            erratum("Q11", "H", "-i*H", "i*H"),
            erratum("Q10", "Q11", "-i*Q10", "i*nu*Q10"),
            rel("Q10", "I", "0"),
            rel("Q11", "I", "0"),
            rel("H", "I", "0"),
        ],
        flat: false,
    },
    EntrySpec {
        id: "new",
        summary: "constant mass, angle-linear potential",
        functions: &[V_R],
        params: &[("nu", "1")],
        mass: "1",
        potential: "nu*phi + V(r)",
        generators: &[
            GeneratorSpec {
                name: "Q",
                text: "J + nu*t",
                printed: r"Q=x_1p_2-x_2p_1-\nu t",
                as_printed: Some("x1*p2 - x2*p1 - nu*t"),
            },
            P0,
        ],
        relations: &[rel("Q", "H", "-i*nu*I")],
        flat: true,
    },
    EntrySpec {
        id: "t11-special",
        summary: "exponential angular factor; extra rotation-dilation symmetry",
        functions: &[],
        params: &[("alpha", "1"), ("nu", "1"), ("mu", "1")],
        mass: "r^(alpha + 2)*exp(nu*phi)",
        potential: "mu*r^alpha*exp(nu*phi)",
        generators: &[
            GeneratorSpec {
                name: "Q6",
                text: "i*alpha*t*dt + x1*p1 + x2*p2",
                printed: r"Q_6=D=\ri\alpha t{\p_t}+x_1p_1+x_2p_2",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q",
                text: "J + nu*t*P0",
                printed: r"Q=J+2\nu tP_0",
                as_printed: Some("J + 2*nu*t*P0"),
            },
            P0,
        ],
        relations: &[rel("Q", "H", "-i*nu*H")],
        flat: true,
    },
    EntrySpec {
        id: "t14-special",
        summary: "mass proportional to r^2; extra dilation integral",
        functions: &[],
        params: &[("nu", "1"), ("mu", "1")],
        mass: "r^2",
        potential: "nu*phi + mu",
        generators: &[
            GeneratorSpec {
                name: "Q7",
                text: "J + nu*t",
                printed: r"Q_7=J+\nu t",
                as_printed: None,
            },
            GeneratorSpec {
                name: "D0",
                text: "x1*p1 + x2*p2 - i",
                printed: r"D_0=x_1p_1+x_2p_2-\ri",
                as_printed: None,
            },
            P0,
        ],
        relations: &[rel("D0", "H", "0"), rel("Q7", "D0", "0")],
        flat: true,
    },
    EntrySpec {
        id: "A2-Q0",
        summary: "inverse mass sin^2, three integrals",
        functions: &[],
        params: &[],
        mass: "sin(x1)^2",
        potential: "sin(x1)^2",
        generators: &[
            GeneratorSpec {
                name: "Q1",
                text: "d2",
                printed: r"Q_1=\frac{\p}{\p z_2}",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q2",
                text: "sin(x1)*cosh(x2)*d1 + cos(x1)*sinh(x2)*d2 + cos(x1)*cosh(x2)",
                printed: r"Q_2=\sin(z_1)\cosh(z_2)\frac{\p}{\p z_1}+\cos(z_1)\sinh(z_2)\frac{\p}{\p z_2}+\cos(z_1)\cosh(z_2)",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q3",
                text: "sin(x1)*sinh(x2)*d1 + cos(x1)*cosh(x2)*d2 + cos(x1)*sinh(x2)",
                printed: r"Q_3=\sin(z_1)\sinh(z_2)\frac{\p}{\p z_1}+\cos(z_1)\cosh(z_2)\frac{\p}{\p z_2}+\cos(z_1)\cosh(z_2)",
                as_printed: Some("sin(x1)*sinh(x2)*d1 + cos(x1)*cosh(x2)*d2 + cos(x1)*cosh(x2)"),
            },
            P0,
        ],
        relations: &[rel("Q1", "H", "0"), rel("Q2", "H", "0"), rel("Q3", "H", "0")],
        flat: false,
    },
    EntrySpec {
        id: "A2-Q4",
        summary: "inverse mass cosh^2, three integrals",
        functions: &[],
        params: &[],
        mass: "cosh(x1)^2",
        potential: "-cosh(x1)^2",
        generators: &[
            GeneratorSpec {
                name: "Q1",
                text: "d2",
                printed: r"\frac{\p}{\p z_2}",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q2",
                text: "cosh(x1)*cos(x2)*d1 + sinh(x1)*sin(x2)*d2 + sinh(x1)*cos(x2)",
                printed: r"g=\cosh(z_1), \quad h=a\cos(z_2)+b\sin(z_2)",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q3",
                text: "cosh(x1)*sin(x2)*d1 - sinh(x1)*cos(x2)*d2 + sinh(x1)*sin(x2)",
                printed: r"g=\cosh(z_1), \quad h=a\cos(z_2)+b\sin(z_2)",
                as_printed: None,
            },
            P0,
        ],
        relations: &[rel("Q1", "H", "0"), rel("Q2", "H", "0"), rel("Q3", "H", "0")],
        flat: false,
    },
    EntrySpec {
        id: "A2-Q5",
        summary: "inverse mass sinh^2, three integrals",
        functions: &[],
        params: &[],
        mass: "sinh(x1)^2",
        potential: "-sinh(x1)^2",
        generators: &[
            GeneratorSpec {
                name: "Q1",
                text: "d2",
                printed: r"\frac{\p}{\p z_2}",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q2",
                text: "sinh(x1)*cos(x2)*d1 + cosh(x1)*sin(x2)*d2 + cosh(x1)*cos(x2)",
                printed: r"g=\sinh(z_1), \quad h=a\cos(z_2)+b\sin(z_2)",
                as_printed: None,
            },
            GeneratorSpec {
                name: "Q3",
                text: "sinh(x1)*sin(x2)*d1 - cosh(x1)*cos(x2)*d2 + cosh(x1)*sin(x2)",
                printed: r"g=\sinh(z_1), \quad h=a\cos(z_2)+b\sin(z_2)",
                as_printed: None,
            },
            P0,
        ],
        relations: &[rel("Q1", "H", "0"), rel("Q2", "H", "0"), rel("Q3", "H", "0")],
        flat: false,
    },
];
