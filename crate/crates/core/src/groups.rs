//! Finite group data for the built-in categories: multiplication tables,
//! conjugacy classes with fixed transversals, centralizers and subgroups.

use std::sync::OnceLock;

/// A finite group presented by its full multiplication table.
///
/// Element 0 is always the identity. The product convention is
/// `mul[a][b] = a∘b` where `b` acts first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: &'static str,
    pub order: usize,
    pub elem_names: Vec<&'static str>,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub classes: Vec<ConjClass>,
}

/// One conjugacy class with the transversal convention
/// `q_i^{-1} · members[i] · q_i = members[0]` and `q_0 = e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub name: &'static str,
    pub members: Vec<usize>,
    pub transversal: Vec<usize>,
    pub centralizer: Vec<usize>,
}

impl FiniteGroup {
    pub fn id(&self) -> usize {
        0
    }

    pub fn prod(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn conj(&self, a: usize, g: usize) -> usize {
        // a g a^{-1}
        self.prod(self.prod(a, g), self.inv[a])
    }

    pub fn elem_index(&self, name: &str) -> Option<usize> {
        self.elem_names.iter().position(|n| *n == name)
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.members.contains(&g))
            .expect("element in some class")
    }

    /// Install explicit conjugacy-class data `(name, members, transversal)`,
    /// checking the defining property `q_i^{-1} members[i] q_i = members[0]`.
    fn set_classes(&mut self, data: Vec<(&'static str, Vec<usize>, Vec<usize>)>) {
        self.classes = data
            .into_iter()
            .map(|(name, members, transversal)| {
                let rep = members[0];
                assert_eq!(transversal[0], 0);
                for (i, &m) in members.iter().enumerate() {
                    let q = transversal[i];
                    assert_eq!(self.prod(self.prod(self.inv[q], m), q), rep);
                }
                let centralizer: Vec<usize> = (0..self.order)
                    .filter(|&x| self.prod(x, rep) == self.prod(rep, x))
                    .collect();
                ConjClass {
                    name,
                    members,
                    transversal,
                    centralizer,
                }
            })
            .collect();
    }

    fn finish(mut self) -> Self {
        let n = self.order;
        self.inv = (0..n)
            .map(|a| (0..n).find(|&b| self.mul[a][b] == 0).unwrap())
            .collect();
        self.classes = self.build_classes();
        self
    }

    fn build_classes(&self) -> Vec<ConjClass> {
        // Enumeration order of representatives is ascending element id,
        // which puts the identity class first.
        let n = self.order;
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for rep in 0..n {
            if seen[rep] {
                continue;
            }
            let mut members = vec![rep];
            let mut transversal = vec![0usize];
            seen[rep] = true;
            for q in 1..n {
                let c = self.prod(self.prod(q, rep), self.inv[q]);
                if !seen[c] {
                    seen[c] = true;
                    members.push(c);
                    transversal.push(q);
                }
            }
            let centralizer: Vec<usize> = (0..n)
                .filter(|&x| self.prod(x, rep) == self.prod(rep, x))
                .collect();
            classes.push(ConjClass {
                name: self.elem_names[rep],
                members,
                transversal,
                centralizer,
            });
        }
        classes
    }
}

fn group_from_perms(
    name: &'static str,
    elem_names: Vec<&'static str>,
    perms: Vec<Vec<usize>>,
) -> FiniteGroup {
    let n = perms.len();
    let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        // a after b
        (0..a.len()).map(|x| a[b[x]]).collect()
    };
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let p = compose(&perms[a], &perms[b]);
                    perms.iter().position(|q| *q == p).unwrap()
                })
                .collect()
        })
        .collect();
    FiniteGroup {
        name,
        order: n,
        elem_names,
        mul,
        inv: Vec::new(),
        classes: Vec::new(),
    }
    .finish()
}

/// The trivial group.
pub fn trivial() -> &'static FiniteGroup {
    static G: OnceLock<FiniteGroup> = OnceLock::new();
    G.get_or_init(|| group_from_perms("1", vec!["1"], vec![vec![0]]))
}

/// Z2 with elements `{1, m}`.
pub fn z2() -> &'static FiniteGroup {
    static G: OnceLock<FiniteGroup> = OnceLock::new();
    G.get_or_init(|| group_from_perms("z2", vec!["1", "m"], vec![vec![0, 1], vec![1, 0]]))
}

/// Z3 with elements `{1, s, s2}`.
pub fn z3() -> &'static FiniteGroup {
    static G: OnceLock<FiniteGroup> = OnceLock::new();
    G.get_or_init(|| {
        group_from_perms(
            "z3",
            vec!["1", "s", "s2"],
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        )
    })
}

/// S3 with elements ordered `{1, r, rs, rs2, s, s2}`, realized as
/// permutations of three points with `r = (12)` and `s = (123)`.
///
/// The conjugacy-class transversals are pinned to `Q_[r] = {1, s, s2}` and
/// `Q_[s] = {1, r}`; all quantum-double data downstream depends on this
/// choice.
pub fn s3() -> &'static FiniteGroup {
    static G: OnceLock<FiniteGroup> = OnceLock::new();
    G.get_or_init(|| {
        let e = vec![0, 1, 2];
        let r = vec![1, 0, 2];
        let s = vec![1, 2, 0]; // 0→1→2→0
        let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
            (0..3).map(|x| a[b[x]]).collect()
        };
        let s2 = compose(&s, &s);
        let rs = compose(&r, &s);
        let rs2 = compose(&r, &s2);
        let mut g = group_from_perms(
            "s3",
            vec!["1", "r", "rs", "rs2", "s", "s2"],
            vec![e, r, rs, rs2, s, s2],
        );
        let idx = |n: &str| g.elem_names.iter().position(|e| *e == n).unwrap();
        g.set_classes(vec![
            ("1", vec![idx("1")], vec![idx("1")]),
            (
                "r",
                vec![idx("r"), idx("rs"), idx("rs2")],
                vec![idx("1"), idx("s"), idx("s2")],
            ),
            ("s", vec![idx("s"), idx("s2")], vec![idx("1"), idx("r")]),
        ]);
        g
    })
}

/// A subgroup given as its own group plus the embedding into a parent.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub group: &'static FiniteGroup,
    /// local element id → parent element id
    pub embed: Vec<usize>,
}

impl Subgroup {
    pub fn new(group: &'static FiniteGroup, embed: Vec<usize>) -> Self {
        Subgroup { group, embed }
    }

    pub fn parent_of(&self, local: usize) -> usize {
        self.embed[local]
    }

    pub fn local_of(&self, parent: usize) -> Option<usize> {
        self.embed.iter().position(|&p| p == parent)
    }
}

/// Named subgroups of S3 used by the built-in module categories.
pub fn s3_subgroup(name: &str) -> Option<Subgroup> {
    let g = s3();
    let idx = |n: &str| g.elem_index(n).unwrap();
    match name {
        "1" => Some(Subgroup::new(trivial(), vec![0])),
        "z2" => Some(Subgroup::new(z2(), vec![0, idx("r")])),
        "z3" => Some(Subgroup::new(z3(), vec![0, idx("s"), idx("s2")])),
        "s3" => Some(Subgroup::new(s3(), (0..6).collect())),
        _ => None,
    }
}

/// Named subgroups of Z2 used by the Ising-family module categories.
pub fn z2_subgroup(name: &str) -> Option<Subgroup> {
    match name {
        "1" => Some(Subgroup::new(trivial(), vec![0])),
        "z2" => Some(Subgroup::new(z2(), vec![0, 1])),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_relations() {
        let g = s3();
        let r = g.elem_index("r").unwrap();
        let s = g.elem_index("s").unwrap();
        let s2 = g.elem_index("s2").unwrap();
        let rs = g.elem_index("rs").unwrap();
        assert_eq!(g.prod(r, r), 0);
        assert_eq!(g.prod(s, s2), 0);
        assert_eq!(g.prod(g.prod(r, s), r), s2); // rsr = s2
        assert_eq!(g.prod(r, s), rs);
    }

    #[test]
    fn s3_classes_match_fixed_transversals() {
        let g = s3();
        let names: Vec<Vec<&str>> = g
            .classes
            .iter()
            .map(|c| c.members.iter().map(|&m| g.elem_names[m]).collect())
            .collect();
        assert_eq!(names[0], vec!["1"]);
        assert_eq!(names[1], vec!["r", "rs", "rs2"]);
        assert_eq!(names[2], vec!["s", "s2"]);
        // transversal of [r] is {1, s, s2}; of [s] is {1, r}
        let t1: Vec<&str> = g.classes[1]
            .transversal
            .iter()
            .map(|&q| g.elem_names[q])
            .collect();
        assert_eq!(t1, vec!["1", "s", "s2"]);
        let t2: Vec<&str> = g.classes[2]
            .transversal
            .iter()
            .map(|&q| g.elem_names[q])
            .collect();
        assert_eq!(t2, vec!["1", "r"]);
        // q_i^{-1} c_i q_i = c_1
        for c in &g.classes {
            for (i, &m) in c.members.iter().enumerate() {
                let q = c.transversal[i];
                assert_eq!(g.prod(g.prod(g.inverse(q), m), q), c.members[0]);
            }
        }
    }
}
