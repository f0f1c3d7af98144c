//! Finite groups as explicit multiplication tables, conjugacy data, group
//! algebras, and ordinary group (co)homology.

use crate::algebra::{basis_column, AlgModule, FinDimAlgebra, Side};
use crate::field::FieldSpec;
use crate::matrix::ExactMatrix;
use crate::resolution::{ext_dims, tor_dims};
use std::rc::Rc;

/// A finite group with elements `0..order`, identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    pub order: usize,
    table: Vec<usize>, // table[g * order + h] = g h
    inv: Vec<usize>,
    /// Display names, e.g. cycle notation for symmetric groups.
    pub names: Vec<String>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GroupError {
    #[error("identity law fails at element {0}")]
    Identity(usize),
    #[error("associativity fails at triple ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("element {0} has no inverse")]
    Inverse(usize),
    #[error("table entry out of range at ({0}, {1})")]
    Range(usize, usize),
}

impl FinGroup {
    /// Builds from a raw table and validates the group axioms, reporting the
    /// first failing witness.
    pub fn from_table(table: Vec<usize>, names: Vec<String>) -> Result<Self, GroupError> {
        let order = names.len();
        assert_eq!(table.len(), order * order);
        let mul = |g: usize, h: usize| table[g * order + h];
        for g in 0..order {
            for h in 0..order {
                if mul(g, h) >= order {
                    return Err(GroupError::Range(g, h));
                }
            }
        }
        for g in 0..order {
            if mul(0, g) != g || mul(g, 0) != g {
                return Err(GroupError::Identity(g));
            }
        }
        for g in 0..order {
            for h in 0..order {
                for k in 0..order {
                    if mul(mul(g, h), k) != mul(g, mul(h, k)) {
                        return Err(GroupError::Associativity(g, h, k));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| mul(g, h) == 0 && mul(h, g) == 0) {
                Some(h) => inv[g] = h,
                None => return Err(GroupError::Inverse(g)),
            }
        }
        Ok(FinGroup {
            order,
            table,
            inv,
            names,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut table = vec![0; n * n];
        for g in 0..n {
            for h in 0..n {
                table[g * n + h] = (g + h) % n;
            }
        }
        let names = (0..n).map(|g| format!("g{g}")).collect();
        Self::from_table(table, names).expect("cyclic table is a group")
    }

    /// Symmetric group on `n` letters; elements are permutations in
    /// lexicographic order of their one-line notation, with the identity
    /// first.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let order = perms.len();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let mut table = vec![0; order * order];
        for (gi, g) in perms.iter().enumerate() {
            for (hi, h) in perms.iter().enumerate() {
                // composition acting on points: (g h)(x) = g(h(x))
                let prod: Vec<usize> = (0..n).map(|x| g[h[x]]).collect();
                table[gi * order + hi] = index(&prod);
            }
        }
        let names = perms.iter().map(|p| perm_name(p)).collect();
        Self::from_table(table, names).expect("symmetric table is a group")
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        // g x g^{-1}
        self.mul(self.mul(g, x), self.inv[g])
    }

    /// Conjugacy classes (each sorted), class representatives (minimal
    /// element), and centralizers.
    pub fn conjugacy(&self) -> Conjugacy {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let centralizers: Vec<Vec<usize>> = reps
            .iter()
            .map(|&x| {
                (0..self.order)
                    .filter(|&g| self.conj(g, x) == x)
                    .collect()
            })
            .collect();
        for (c, z) in classes.iter().zip(&centralizers) {
            // orbit-stabilizer
            assert_eq!(c.len() * z.len(), self.order);
        }
        Conjugacy {
            classes,
            reps,
            centralizers,
        }
    }

    /// Subgroup generated by the given elements, as a sorted element list.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.order];
        in_sub[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv[g])] {
                    if !in_sub[y] {
                        in_sub[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        (0..self.order).filter(|&x| in_sub[x]).collect()
    }

    /// The subgroup on an element subset, as a group in its own right with
    /// the index map back to the ambient group.
    pub fn restrict(&self, elements: &[usize]) -> (FinGroup, Vec<usize>) {
        assert_eq!(elements[0], 0, "subgroup must list the identity first");
        let pos = |x: usize| elements.iter().position(|&y| y == x).unwrap();
        let n = elements.len();
        let mut table = vec![0; n * n];
        for (i, &g) in elements.iter().enumerate() {
            for (j, &h) in elements.iter().enumerate() {
                table[i * n + j] = pos(self.mul(g, h));
            }
        }
        let names = elements.iter().map(|&g| self.names[g].clone()).collect();
        (
            Self::from_table(table, names).expect("subset closed under product"),
            elements.to_vec(),
        )
    }

    /// A small generating set (greedy).
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![0usize];
        for x in 0..self.order {
            if sub.contains(&x) {
                continue;
            }
            gens.push(x);
            sub = self.subgroup(&gens);
            if sub.len() == self.order {
                break;
            }
        }
        gens
    }
}

#[derive(Clone, Debug)]
pub struct Conjugacy {
    pub classes: Vec<Vec<usize>>,
    pub reps: Vec<usize>,
    pub centralizers: Vec<Vec<usize>>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in out {
            for x in 0..n {
                if !p.contains(&x) {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out.sort();
    // identity first, then the rest in lexicographic order
    out
}

fn perm_name(p: &[usize]) -> String {
    // cycle notation, 1-based
    let n = p.len();
    let mut seen = vec![false; n];
    let mut s = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        s.push('(');
        s.push_str(
            &cyc.iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        s.push(')');
    }
    if s.is_empty() {
        s.push('e');
    }
    s
}

/// The group algebra `K G` with basis the group elements; its generating set
/// is a small generating set of the group.
pub fn group_algebra(field: FieldSpec, g: &FinGroup) -> Rc<FinDimAlgebra> {
    let n = g.order;
    let mut alg = FinDimAlgebra::from_products(field, n, basis_column(field, n, 0), |i, j| {
        basis_column(field, n, g.mul(i, j))
    });
    let mut gens: Vec<ExactMatrix> = g
        .generating_set()
        .into_iter()
        .map(|x| basis_column(field, n, x))
        .collect();
    if gens.is_empty() {
        gens.push(basis_column(field, n, 0));
    }
    alg.generators = gens;
    Rc::new(alg)
}

/// The trivial one-dimensional module over a group algebra.
pub fn trivial_module(alg: &Rc<FinDimAlgebra>, side: Side) -> AlgModule {
    AlgModule {
        algebra: alg.clone(),
        dim: 1,
        side,
        action: (0..alg.dim)
            .map(|_| ExactMatrix::identity(alg.field, 1))
            .collect(),
    }
}

/// A `K G`-module from a homomorphism `G -> GL(V)` given elementwise;
/// representation laws are checked.
pub fn module_from_representation(
    alg: &Rc<FinDimAlgebra>,
    g: &FinGroup,
    side: Side,
    mats: Vec<ExactMatrix>,
) -> Result<AlgModule, String> {
    assert_eq!(alg.dim, g.order);
    let m = AlgModule::new(alg.clone(), side, mats);
    m.validate().map_err(|e| e.to_string())?;
    Ok(m)
}

/// `H_p(G, M)` for a left module `M`, as `Tor_p^{KG}(K, M)` with `K` the
/// trivial right module.
pub fn group_homology(g: &FinGroup, m: &AlgModule, n_max: usize) -> Vec<usize> {
    assert_eq!(m.side, Side::Left);
    assert_eq!(m.algebra.dim, g.order);
    let kt = trivial_module(&m.algebra, Side::Right);
    tor_dims(&kt, m, n_max)
}

/// `H^p(G, M)` as `Ext^p_{KG}(K, M)`.
pub fn group_cohomology(g: &FinGroup, m: &AlgModule, n_max: usize) -> Vec<usize> {
    assert_eq!(m.side, Side::Left);
    assert_eq!(m.algebra.dim, g.order);
    let kt = trivial_module(&m.algebra, Side::Left);
    ext_dims(&kt, m, n_max)
}

/// The induced module `KG (x)_{KH} V` for `H` the subgroup on `sub_elements`
/// and `V` a left `KH`-module. Basis: (coset representative, basis of V).
pub fn induced_module(
    g: &FinGroup,
    galg: &Rc<FinDimAlgebra>,
    sub_elements: &[usize],
    v: &AlgModule,
) -> AlgModule {
    assert_eq!(v.side, Side::Left);
    let h_ord = sub_elements.len();
    assert_eq!(v.algebra.dim, h_ord);
    // left coset representatives g H, greedily
    let mut reps: Vec<usize> = Vec::new();
    let mut covered = vec![false; g.order];
    for x in 0..g.order {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &h in sub_elements {
            covered[g.mul(x, h)] = true;
        }
    }
    let ncos = reps.len();
    let field = galg.field;
    let dim = ncos * v.dim;
    let hpos = |x: usize| sub_elements.iter().position(|&y| y == x);
    let action: Vec<ExactMatrix> = (0..g.order)
        .map(|s| {
            let mut m = ExactMatrix::zeros(field, dim, dim);
            for (c, &r) in reps.iter().enumerate() {
                let sr = g.mul(s, r);
                // find coset rep and subgroup part: s r = r' h
                let (c2, h) = reps
                    .iter()
                    .enumerate()
                    .find_map(|(c2, &r2)| {
                        hpos(g.mul(g.inv(r2), sr)).map(|hi| (c2, hi))
                    })
                    .expect("cosets cover the group");
                m.set_block(c2 * v.dim, c * v.dim, v.act_basis(h));
            }
            m
        })
        .collect();
    AlgModule {
        algebra: galg.clone(),
        dim,
        side: Side::Left,
        action,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::PrimeField(p)
    }

    #[test]
    fn cyclic_and_symmetric_validate() {
        assert_eq!(FinGroup::cyclic(1).order, 1);
        assert_eq!(FinGroup::cyclic(5).order, 5);
        let s3 = FinGroup::symmetric(3);
        assert_eq!(s3.order, 6);
        assert_eq!(s3.names[0], "e");
    }

    #[test]
    fn broken_table_rejected() {
        // swap one entry of the Z/3 table: breaks the group laws
        let z3 = FinGroup::cyclic(3);
        let mut t = z3.table.clone();
        t[4] = 0; // (1,1) -> 0 instead of 2
        let err = FinGroup::from_table(t, z3.names.clone());
        assert!(err.is_err());
    }

    #[test]
    fn s3_conjugacy() {
        let s3 = FinGroup::symmetric(3);
        let c = s3.conjugacy();
        let mut sizes: Vec<usize> = c.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        // centralizer orders follow from orbit-stabilizer (asserted inside)
        assert_eq!(c.classes.len(), 3);
    }

    #[test]
    fn s3_generating_set_is_small() {
        let s3 = FinGroup::symmetric(3);
        let gens = s3.generating_set();
        assert!(gens.len() <= 2);
        assert_eq!(s3.subgroup(&gens).len(), 6);
    }

    #[test]
    fn group_homology_known_values() {
        // H_p(Z/3, Q) = Q, 0, 0, ...; over GF(3) all dims 1
        let z3 = FinGroup::cyclic(3);
        let aq = group_algebra(q(), &z3);
        let mq = trivial_module(&aq, Side::Left);
        assert_eq!(group_homology(&z3, &mq, 3), vec![1, 0, 0, 0]);
        let a3 = group_algebra(gf(3), &z3);
        let m3 = trivial_module(&a3, Side::Left);
        assert_eq!(group_homology(&z3, &m3, 3), vec![1, 1, 1, 1]);
        // H_p(S3, GF(3)): 1, 0, 0, 1 (mod-3 cohomology of S3 has period 4)
        let s3 = FinGroup::symmetric(3);
        let as3 = group_algebra(gf(3), &s3);
        let ms3 = trivial_module(&as3, Side::Left);
        assert_eq!(group_homology(&s3, &ms3, 3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn group_cohomology_known_values() {
        let z2 = FinGroup::cyclic(2);
        let a2 = group_algebra(gf(2), &z2);
        let m2 = trivial_module(&a2, Side::Left);
        assert_eq!(group_cohomology(&z2, &m2, 3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn shapiro_lemma_on_induced_modules() {
        // H_p(G, Ind_H^G V) = H_p(H, V) with G = S3, H = <(1 2 3)> = Z/3
        let s3 = FinGroup::symmetric(3);
        let three_cycle = s3
            .names
            .iter()
            .position(|n| n == "(1 2 3)")
            .unwrap();
        let sub = s3.subgroup(&[three_cycle]);
        assert_eq!(sub.len(), 3);
        let (h, elems) = s3.restrict(&sub);
        for f in [q(), gf(3)] {
            let ha = group_algebra(f, &h);
            let v = trivial_module(&ha, Side::Left);
            let ga = group_algebra(f, &s3);
            let ind = induced_module(&s3, &ga, &elems, &v);
            assert_eq!(ind.validate(), Ok(()));
            assert_eq!(
                group_homology(&s3, &ind, 2),
                group_homology(&h, &v, 2)
            );
        }
    }
}
