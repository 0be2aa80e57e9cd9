//! Registry of the classified Hamiltonians with their symmetry generators
//! and commutation relations, plus machine checks of all of them.

mod data;
mod verify;

use std::collections::BTreeMap;

use serde::Serialize;

pub use data::{EntrySpec, FunctionSpec, GeneratorSpec, RelationSpec, ENTRIES};
pub use verify::{
    verify_a2_equivalences, verify_algebra, verify_entry, verify_finite_transform, AlgebraReport, EntryReport,
    EquivalenceReport, FiniteTransformReport, GeneratorReport, RelationReport,
};

use crate::expr::{parse_with, simplify, CExpr, Declarations, Expr};
use crate::ops::optext::parse_operator;
use crate::ops::{Hamiltonian, LinOp};
use crate::Error;

/// Version of the serialized catalog layout.
pub const CATALOG_VERSION: u32 = 1;

/// An entry with its Hamiltonian and generators built, both with the
/// arbitrary functions left uninterpreted and for the probing instance.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub spec: &'static EntrySpec,
    pub decl: Declarations,
    pub hamiltonian: Hamiltonian,
    pub generators: Vec<(String, LinOp)>,
}

pub fn ids() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.id).collect()
}

pub fn spec(id: &str) -> Result<&'static EntrySpec, Error> {
    ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

impl CatalogEntry {
    pub fn get(id: &str) -> Result<CatalogEntry, Error> {
        CatalogEntry::build(spec(id)?)
    }

    fn build(spec: &'static EntrySpec) -> Result<CatalogEntry, Error> {
        let mut decl = Declarations::default();
        for f in spec.functions {
            decl.declare(f.name, f.arity);
        }
        let f = parse_with(spec.mass, &decl)?;
        let v = parse_with(spec.potential, &decl)?;
        let hamiltonian = Hamiltonian::divergence(f, v);
        let mut generators = Vec::new();
        for g in spec.generators {
            generators.push((g.name.to_string(), parse_operator(g.text, &decl, &BTreeMap::new())?));
        }
        Ok(CatalogEntry {
            spec,
            decl,
            hamiltonian,
            generators,
        })
    }

    /// Replace arbitrary functions and parameters by the probing values.
    pub fn instantiate(&self, e: &Expr) -> Expr {
        let mut out = e.clone();
        for f in self.spec.functions {
            let body = crate::expr::parse(f.instance).expect("instance bodies parse");
            out = out.subs_function(f.name, &[f.param], &body);
        }
        for (name, value) in self.spec.params {
            let value = crate::expr::parse(value).expect("parameter values parse");
            out = out.subs1(name, &value);
        }
        simplify(&out)
    }

    pub fn instantiate_op(&self, op: &LinOp) -> LinOp {
        op.map_coeffs(|c| CExpr::new(self.instantiate(&c.re), self.instantiate(&c.im)))
    }

    pub fn instance_hamiltonian(&self) -> Hamiltonian {
        Hamiltonian::divergence(
            self.instantiate(&self.hamiltonian.f),
            self.instantiate(&self.hamiltonian.potential),
        )
    }

    /// Operators available by name in relation texts: the generators, `H`
    /// and the unit operator.
    pub fn named_operators(&self) -> BTreeMap<String, LinOp> {
        let mut named: BTreeMap<String, LinOp> = self.generators.iter().cloned().collect();
        named.insert("H".into(), self.hamiltonian.operator());
        named
    }
}

#[derive(Serialize)]
struct CatalogDocument {
    version: u32,
    entries: &'static [EntrySpec],
}

/// The whole registry as a versioned JSON document.
pub fn catalog_json() -> serde_json::Value {
    serde_json::to_value(CatalogDocument {
        version: CATALOG_VERSION,
        entries: ENTRIES,
    })
    .expect("catalog serializes")
}

/// One line per entry: id, inverse mass, potential, generator names.
pub fn list_table() -> String {
    let mut out = format!("{:<12} {:<28} {:<26} {}\n", "id", "inverse mass", "potential", "generators");
    for e in ENTRIES {
        let gens: Vec<&str> = e.generators.iter().map(|g| g.name).collect();
        out.push_str(&format!("{:<12} {:<28} {:<26} {}\n", e.id, e.mass, e.potential, gens.join(", ")));
    }
    out
}
