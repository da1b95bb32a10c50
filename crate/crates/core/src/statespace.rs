//! Enumeration of the boundary-twisted chain Hilbert spaces.
//!
//! A basis state assigns a module simple to every vertex `m[0..=L]`, an
//! input-category simple to every edge `d[j]` between `m[j]` and `m[j+1]`
//! together with an action hom index, and closes the chain through the
//! boundary object: a formal direct sum of module-endofunctor simples, with
//! a hom index in `Hom(F_A(m[L]), m[0])`. The boundary condition is a
//! genuine degree of freedom, not an identification imposed by hand.

use crate::catdata::{load_bundle, CategoryBundle};
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Shared, cached builtin bundles (expensive to derive, immutable after).
pub fn bundle(name: &str) -> Result<Arc<CategoryBundle>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<CategoryBundle>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(b) = guard.get(name) {
        return Ok(b.clone());
    }
    let b = Arc::new(load_bundle(name)?);
    guard.insert(name.to_string(), b.clone());
    Ok(b)
}

/// A boundary object: formal direct sum of simples of the Morita dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryObject {
    /// (dual-category simple, multiplicity)
    pub constituents: Vec<(usize, usize)>,
}

impl BoundaryObject {
    pub fn simple(a: usize) -> Self {
        BoundaryObject {
            constituents: vec![(a, 1)],
        }
    }
}

/// Kinematic data of one chain.
#[derive(Clone)]
pub struct ChainConfig {
    pub bundle: Arc<CategoryBundle>,
    pub module: usize,
    /// number of edges; the chain has `length + 1` vertices
    pub length: usize,
    pub allowed_d: Vec<usize>,
    pub boundary: BoundaryObject,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub m: Vec<usize>,
    pub d: Vec<usize>,
    pub homs: Vec<usize>,
    /// index into the boundary constituent list
    pub bnd_constituent: usize,
    /// multiplicity copy of that constituent
    pub bnd_copy: usize,
    /// hom index in Hom(F_A(m[L]), m[0])
    pub bnd_hom: usize,
}

/// An enumerated space with its reverse index.
pub struct StateSpace {
    pub config: ChainConfig,
    pub basis: Vec<BasisState>,
    index: HashMap<BasisState, usize>,
}

impl StateSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, s: &BasisState) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn world(&self) -> &crate::catdata::engine::World {
        &self.config.bundle.world
    }
}

/// Enumerate the complete, duplicate-free, lexicographically ordered basis.
pub fn enumerate(config: ChainConfig) -> Result<StateSpace> {
    let world = &config.bundle.world;
    let md = &world.modules[config.module];
    let cat = world.endo(config.module);
    let l = config.length;
    if l < 2 {
        return Err(Error::Usage("chain length must be at least 2".into()));
    }
    if config.allowed_d.is_empty() {
        return Err(Error::Usage("allowed_d must be non-empty".into()));
    }
    let nm = md.simples.len();
    let mut basis: Vec<BasisState> = Vec::new();
    // depth-first over vertices in lexicographic order
    let mut stack: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = (0..nm)
        .rev()
        .map(|m0| (vec![m0], Vec::new(), Vec::new()))
        .collect();
    while let Some((m, d, homs)) = stack.pop() {
        let v = m.len() - 1;
        if v == l {
            // close through the boundary
            for (ci, &(a, mult)) in config.boundary.constituents.iter().enumerate() {
                let nb = cat.uhom(a, m[l], m[0]).len();
                for copy in 0..mult {
                    for bh in 0..nb {
                        basis.push(BasisState {
                            m: m.clone(),
                            d: d.clone(),
                            homs: homs.clone(),
                            bnd_constituent: ci,
                            bnd_copy: copy,
                            bnd_hom: bh,
                        });
                    }
                }
            }
            continue;
        }
        // extend by one edge, pushed in reverse so the pop order is
        // ascending lexicographic
        let mut exts: Vec<(usize, usize, usize)> = Vec::new();
        for &y in &config.allowed_d {
            for m2 in 0..nm {
                for h in 0..md.action_mult(m[v], y, m2) {
                    exts.push((y, m2, h));
                }
            }
        }
        for &(y, m2, h) in exts.iter().rev() {
            let mut m = m.clone();
            let mut d = d.clone();
            let mut homs = homs.clone();
            m.push(m2);
            d.push(y);
            homs.push(h);
            stack.push((m, d, homs));
        }
    }
    if basis.is_empty() {
        return Err(Error::EmptySpace(format!(
            "module {} with boundary {:?}",
            md.name, config.boundary
        )));
    }
    let index = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    Ok(StateSpace {
        config,
        basis,
        index,
    })
}

/// Site-local encoding of a state space, when one exists.
#[derive(Debug, Clone, serde::Serialize)]
pub enum Encoding {
    /// tensor-product form: per-site dimension, value names, and the
    /// half-integer/integer site coordinate used in the literature
    Sites {
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        coords: Vec<String>,
    },
    /// constrained space with no tensor-product form
    Opaque { dim: usize },
}

/// Describe the effective encoding of a built-in model's space.
pub fn effective_encoding(space: &StateSpace) -> Encoding {
    let world = space.world();
    let md = &world.modules[space.config.module];
    let l = space.config.length;
    let vertex_labels: Vec<String> = md.simples.iter().map(|s| s.name.clone()).collect();
    match (world.name, md.name) {
        ("vec_z2", "vect_z2") => Encoding::Sites {
            dims: vec![2; l],
            labels: vec![vertex_labels; l],
            coords: (1..=l).map(|i| i.to_string()).collect(),
        },
        ("vec_z2", "vect") => Encoding::Sites {
            dims: vec![2; l],
            labels: vec![world.dirreps.iter().map(|d| d.name.to_string()).collect(); l],
            coords: (1..=l).map(|i| format!("{i}+1/2")).collect(),
        },
        ("rep_s3", "vect") => Encoding::Sites {
            dims: vec![2; l],
            labels: vec![vec!["|1>".into(), "|2>".into()]; l],
            coords: (1..=l).map(|i| format!("{i}+1/2")).collect(),
        },
        ("rep_s3", "rep_z2") => {
            // boundary 2 doubles the effective chain
            let doubled = space
                .config
                .boundary
                .constituents
                .iter()
                .any(|&(a, _)| world.endo(space.config.module).simples[a].name == "2");
            let n = if doubled { l + 1 } else { l };
            Encoding::Sites {
                dims: vec![2; n],
                labels: vec![vertex_labels; n],
                coords: (1..=n).map(|i| i.to_string()).collect(),
            }
        }
        _ => Encoding::Opaque { dim: space.dim() },
    }
}

/// Map a basis state to its effective site values where the encoding is a
/// tensor product; used by the closed-form Hamiltonian cross-checks.
pub fn encode_state(space: &StateSpace, s: &BasisState) -> Option<Vec<usize>> {
    let world = space.world();
    let md = &world.modules[space.config.module];
    let l = space.config.length;
    match (world.name, md.name) {
        ("vec_z2", "vect_z2") => Some(s.m[..l].to_vec()),
        ("vec_z2", "vect") => Some(s.d.clone()),
        ("rep_s3", "vect") => Some(s.homs.clone()),
        ("rep_s3", "rep_z2") => {
            let doubled = space
                .config
                .boundary
                .constituents
                .iter()
                .any(|&(a, _)| world.endo(space.config.module).simples[a].name == "2");
            if doubled {
                Some(s.m.clone())
            } else {
                Some(s.m[..l].to_vec())
            }
        }
        _ => None,
    }
}

/// The cyclic shift by one site on the effective chain for unit boundary;
/// used by the translation-covariance checks.
pub fn translation_operator(space: &StateSpace) -> Option<crate::sparse::SparseOperator> {
    let world = space.world();
    let cat = world.endo(space.config.module);
    let unit_only = space
        .config
        .boundary
        .constituents
        .iter()
        .all(|&(a, _)| crate::tubealg::is_unit_functor(world, cat, a));
    if !unit_only {
        return None;
    }
    let l = space.config.length;
    let mut op = crate::sparse::SparseOperator::new(space.dim(), space.dim());
    for (i, s) in space.basis.iter().enumerate() {
        // rotate vertices, edges and homs by one step
        let mut m: Vec<usize> = Vec::with_capacity(l + 1);
        m.extend_from_slice(&s.m[1..=l]);
        m.push(s.m[1]);
        let mut d: Vec<usize> = s.d[1..].to_vec();
        d.push(s.d[0]);
        let mut homs: Vec<usize> = s.homs[1..].to_vec();
        homs.push(s.homs[0]);
        let t = BasisState {
            m,
            d,
            homs,
            bnd_constituent: s.bnd_constituent,
            bnd_copy: s.bnd_copy,
            bnd_hom: s.bnd_hom,
        };
        if let Some(j) = space.index_of(&t) {
            op.push(j, i, crate::linalg::cone());
        }
    }
    op.normalize();
    Some(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(world: &str, module: &str, l: usize, bc: &str) -> StateSpace {
        let b = bundle(world).unwrap();
        let m = b.world.module_index(module).unwrap();
        let a = b.world.endo(m).simple_index(bc).unwrap();
        let allowed = crate::hamiltonian::default_allowed_d(&b.world, m);
        enumerate(ChainConfig {
            bundle: b,
            module: m,
            length: l,
            allowed_d: allowed,
            boundary: BoundaryObject::simple(a),
        })
        .unwrap()
    }

    #[test]
    fn ising_dimension() {
        assert_eq!(space("vec_z2", "vect_z2", 4, "1").dim(), 16);
        assert_eq!(space("vec_z2", "vect_z2", 4, "m").dim(), 16);
        assert_eq!(space("vec_z2", "vect", 4, "1").dim(), 16);
    }

    #[test]
    fn xxz_dimension() {
        assert_eq!(space("rep_s3", "vect", 4, "1").dim(), 16);
        assert_eq!(space("rep_s3", "vect", 4, "r").dim(), 16);
        assert_eq!(space("rep_s3", "vect", 4, "s").dim(), 16);
    }

    #[test]
    fn clock_dimension_is_cyclic_adjacent_distinct_count() {
        // brute-force oracle: length-4 cyclic adjacent-distinct strings
        // over three symbols
        let mut count = 0usize;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let s = [a, b, c, d, a];
                        if s.windows(2).all(|w| w[0] != w[1]) {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 18);
        assert_eq!(space("rep_s3", "rep_z3", 4, "1").dim(), count);
    }

    #[test]
    fn rep_z2_boundary_doubling() {
        for l in 3..=6 {
            assert_eq!(space("rep_s3", "rep_z2", l, "0").dim(), 1 << l);
            assert_eq!(space("rep_s3", "rep_z2", l, "1").dim(), 1 << l);
            assert_eq!(space("rep_s3", "rep_z2", l, "2").dim(), 1 << (l + 1));
        }
    }

    #[test]
    fn enumeration_is_pure_and_bijective() {
        let s1 = space("rep_s3", "rep_z3", 4, "s");
        let s2 = space("rep_s3", "rep_z3", 4, "s");
        assert_eq!(s1.basis, s2.basis);
        for (i, st) in s1.basis.iter().enumerate() {
            assert_eq!(s1.index_of(st), Some(i));
        }
    }
}
