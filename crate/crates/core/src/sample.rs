//! Seeded instantiation grids: tuples of ℬ elements with bounded total vertex count.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bases::TElem;
use crate::ply::enumerate_b;
use crate::term::Alphabet;

/// All `arity`-tuples of ℬ elements whose vertex counts sum to at most `max_vertices`,
/// indexed without materializing the grid.
#[derive(Clone, Debug)]
pub struct TupleGrid {
    by_n: Vec<Vec<TElem>>,
    /// Vertex-count compositions with their cumulative tuple counts.
    comps: Vec<(Vec<usize>, usize)>,
    len: usize,
}

fn compositions(arity: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == arity {
        out.push(prefix.clone());
        return;
    }
    let used: usize = prefix.iter().sum();
    let left = arity - prefix.len() - 1;
    for n in 1..=max.saturating_sub(used + left) {
        prefix.push(n);
        compositions(arity, max, prefix, out);
        prefix.pop();
    }
}

impl TupleGrid {
    pub fn new(alphabet: &Alphabet, arity: usize, max_vertices: usize) -> Self {
        let by_n: Vec<Vec<TElem>> = (0..=max_vertices)
            .map(|n| if n == 0 { Vec::new() } else { enumerate_b(n, alphabet) })
            .collect();
        let mut raw = Vec::new();
        compositions(arity, max_vertices, &mut Vec::new(), &mut raw);
        let mut len = 0;
        let comps = raw
            .into_iter()
            .map(|c| {
                len += c.iter().map(|&n| by_n[n].len()).product::<usize>();
                (c, len)
            })
            .collect();
        TupleGrid { by_n, comps, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The `i`-th tuple; compositions in lexicographic order, then mixed radix.
    pub fn get(&self, i: usize) -> Vec<TElem> {
        assert!(i < self.len, "index {i} out of range for a grid of {}", self.len);
        let k = self.comps.partition_point(|(_, end)| *end <= i);
        let start = if k == 0 { 0 } else { self.comps[k - 1].1 };
        let mut r = i - start;
        let parts = &self.comps[k].0;
        let mut out = Vec::with_capacity(parts.len());
        for &n in parts.iter().rev() {
            let row = &self.by_n[n];
            out.push(row[r % row.len()].clone());
            r /= row.len();
        }
        out.reverse();
        out
    }

    /// Every tuple when the grid has at most `samples` entries, otherwise `samples`
    /// distinct tuples drawn with the given seed, in grid order.
    pub fn pick(&self, samples: usize, seed: u64) -> Vec<Vec<TElem>> {
        if self.len <= samples {
            return (0..self.len).map(|i| self.get(i)).collect();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx = index::sample(&mut rng, self.len, samples).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| self.get(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Graded;

    #[test]
    fn grid_counts_one_generator() {
        let g = TupleGrid::new(&Alphabet::first(1), 2, 4);
        // (1,1) (1,2) (2,1) (1,3) (2,2) (3,1) with |ℬ| = 1, 1, 3
        assert_eq!(g.len(), 1 + 1 + 1 + 3 + 1 + 3);
        for i in 0..g.len() {
            let t = g.get(i);
            assert_eq!(t.len(), 2);
            assert!(t.iter().map(|x| x.vertex_count()).sum::<usize>() <= 4);
        }
    }

    #[test]
    fn pick_is_deterministic() {
        let g = TupleGrid::new(&Alphabet::first(2), 3, 5);
        assert!(g.len() > 50);
        assert_eq!(g.pick(50, 3), g.pick(50, 3));
        assert_eq!(g.pick(usize::MAX, 0).len(), g.len());
    }
}
