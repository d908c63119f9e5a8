/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// The classes as subsets, sorted by least element.
    pub fn classes(&mut self) -> Vec<crate::subset::Subset> {
        let n = self.parent.len();
        let mut by_root = vec![0u64; n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r] |= 1u64 << x;
        }
        let mut out: Vec<_> = by_root
            .into_iter()
            .filter(|&b| b != 0)
            .map(crate::subset::Subset)
            .collect();
        out.sort_by_key(|s| s.0.trailing_zeros());
        out
    }
}
