use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::IMatrix;

/// Default enumeration cap (covers every Weyl group through rank 6).
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// A finite group of integer matrices, fully enumerated.
///
/// Element 0 is always the identity; elements are listed in breadth-first
/// order from the generators and `words[i]` spells element `i` as a product
/// of generator indices.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    dim: usize,
    generators: Vec<IMatrix>,
    elements: Vec<IMatrix>,
    words: Vec<Vec<usize>>,
    index: HashMap<IMatrix, usize>,
}

impl MatrixGroup {
    pub fn from_generators(dim: usize, generators: Vec<IMatrix>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::InvalidInput("generator has wrong dimension".into()));
            }
            let det = crate::linalg::integer_determinant(&g.to_z());
            if det.magnitude() != &num_bigint::BigUint::from(1u32) {
                return Err(Error::InvalidInput("generators must be unimodular".into()));
            }
        }
        let id = IMatrix::identity(dim);
        let mut elements = vec![id.clone()];
        let mut words = vec![vec![]];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, g) in generators.iter().enumerate() {
                let x = elements[i].mul(g);
                if !index.contains_key(&x) {
                    if elements.len() >= cap {
                        return Err(Error::ResourceCap(format!(
                            "group enumeration exceeded {cap} elements"
                        )));
                    }
                    let mut w = words[i].clone();
                    w.push(k);
                    index.insert(x.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(x);
                    words.push(w);
                }
            }
        }
        Ok(MatrixGroup {
            dim,
            generators,
            elements,
            words,
            index,
        })
    }

    /// Group with exactly the given (closed) set of elements. A generating set
    /// is picked greedily in the given order.
    pub fn from_elements(dim: usize, mut elements: Vec<IMatrix>) -> Result<Self> {
        elements.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
        elements.dedup();
        let mut gens: Vec<IMatrix> = Vec::new();
        let mut current = MatrixGroup::from_generators(dim, vec![], DEFAULT_GROUP_CAP)?;
        for e in &elements {
            if !current.contains(e) {
                gens.push(e.clone());
                current = MatrixGroup::from_generators(dim, gens.clone(), DEFAULT_GROUP_CAP)?;
            }
        }
        if current.order() != elements.len() {
            return Err(Error::NotSubgroup("element set is not closed under multiplication".into()));
        }
        Ok(current)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[IMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[IMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &IMatrix {
        &self.elements[i]
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index_of(&self, m: &IMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &IMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        // The last power before returning to the identity.
        let mut x = 0;
        loop {
            let next = self.mul(x, a);
            if next == 0 {
                return x;
            }
            x = next;
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, i| acc.lcm(&self.element_order(i)))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn is_subgroup_of(&self, other: &MatrixGroup) -> bool {
        self.dim == other.dim && self.elements.iter().all(|e| other.contains(e))
    }

    /// Elements commuting with element `a`.
    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        let x = &self.elements[a];
        (0..self.order())
            .filter(|&i| {
                let g = &self.elements[i];
                g.mul(x) == x.mul(g)
            })
            .collect()
    }

    /// `g x g⁻¹` for a matrix `g` normalising this group.
    pub fn conjugate_by(&self, g: &IMatrix, g_inv: &IMatrix) -> Result<MatrixGroup> {
        let gens = self.generators.iter().map(|h| g.mul(h).mul(g_inv)).collect();
        MatrixGroup::from_generators(self.dim, gens, self.order().max(1))
    }
}

/// Partition into conjugacy classes, ordered by smallest element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.class_reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_reps.is_empty()
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == class)
            .map(|(i, _)| i)
    }
}

pub fn conjugacy_classes(g: &MatrixGroup) -> ConjugacyClasses {
    let n = g.order();
    let gens: Vec<(IMatrix, IMatrix)> = g
        .generators()
        .iter()
        .map(|s| {
            let si = g.element(g.inverse(g.index_of(s).expect("generator in group"))).clone();
            (s.clone(), si)
        })
        .collect();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(start);
        class_of[start] = c;
        let mut size = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for (s, si) in &gens {
                let y = g.index_of(&si.mul(g.element(i)).mul(s)).expect("closed");
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    size += 1;
                    queue.push_back(y);
                }
            }
        }
        sizes.push(size);
    }
    ConjugacyClasses {
        class_reps: reps,
        class_sizes: sizes,
        class_of,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[i64]) -> IMatrix {
        IMatrix::from_fn(d.len(), d.len(), |r, c| if r == c { d[r] } else { 0 })
    }

    #[test]
    fn klein_four_classes() {
        let g = MatrixGroup::from_generators(2, vec![diag(&[-1, 1]), diag(&[1, -1])], 100).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        let c = conjugacy_classes(&g);
        assert_eq!(c.len(), 4);
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn trivial_group() {
        let g = MatrixGroup::from_generators(3, vec![], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(conjugacy_classes(&g).len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let rot = IMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        assert!(matches!(
            MatrixGroup::from_generators(2, vec![rot], 3),
            Err(Error::ResourceCap(_))
        ));
    }

    #[test]
    fn inverses() {
        let rot = IMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        let g = MatrixGroup::from_generators(2, vec![rot], 10).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.mul(i, g.inverse(i)), 0);
        }
    }

    #[test]
    fn from_elements_rejects_non_subgroup() {
        let e = vec![IMatrix::identity(1), IMatrix::from_rows(&[vec![-1]])];
        assert_eq!(MatrixGroup::from_elements(1, e).unwrap().order(), 2);
        let bad = vec![IMatrix::identity(2), diag(&[-1, 1]), diag(&[1, -1])];
        assert!(MatrixGroup::from_elements(2, bad).is_err());
    }
}
