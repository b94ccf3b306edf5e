//! Finite posets given by their covering relation.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Elements in the given order; covers as (lower, upper) pairs.
    pub fn new(elements: Vec<String>, covers: &[(String, String)]) -> Result<Poset> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::BadElement(e.clone()));
            }
        }
        let mut idx = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let i = *index.get(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let j = *index.get(b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
            idx.push((i, j));
        }
        Poset::from_indices(elements, idx)
    }

    pub fn from_indices(names: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Poset> {
        let n = names.len();
        let index: HashMap<String, usize> = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        if index.len() != n {
            let mut seen = BTreeSet::new();
            let dup = names.iter().find(|s| !seen.insert(*s)).unwrap();
            return Err(Error::BadElement(dup.clone()));
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        let mut cv = BTreeSet::new();
        for &(a, b) in &covers {
            if a == b {
                return Err(Error::BadElement(names[a].clone()));
            }
            if cv.insert((a, b)) {
                up[a].push(b);
                down[b].push(a);
            }
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        // topological order (Kahn); leftover elements lie on a cycle
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &j in &up[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        if order.len() < n {
            let bad = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(Error::CycleDetected(names[bad].clone()));
        }
        let mut leq = vec![vec![false; n]; n];
        for &i in order.iter().rev() {
            leq[i][i] = true;
            for &j in &up[i] {
                for k in 0..n {
                    if leq[j][k] {
                        leq[i][k] = true;
                    }
                }
            }
        }
        for &(a, b) in &cv {
            if up[a].iter().any(|&c| c != b && leq[c][b]) {
                return Err(Error::RedundantCover(names[a].clone(), names[b].clone()));
            }
        }
        Ok(Poset { names, index, covers: cv.into_iter().collect(), up, down, leq })
    }

    /// Builds the poset spanned by a list of covers; elements sorted by id.
    pub fn build(covers: &[(String, String)]) -> Result<Poset> {
        for (a, b) in covers {
            if a == b {
                return Err(Error::BadElement(a.clone()));
            }
        }
        let elems: BTreeSet<String> = covers.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        Poset::new(elems.into_iter().collect(), covers)
    }

    pub fn opposite(&self) -> Poset {
        let n = self.len();
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        Poset {
            names: self.names.clone(),
            index: self.index.clone(),
            covers,
            up: self.down.clone(),
            down: self.up.clone(),
            leq: (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.up[i].binary_search(&j).is_ok()
    }

    pub fn up_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn down_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// U_x = {y | x ≤ y}, in index order.
    pub fn open_star(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq[i][j]).collect()
    }

    /// x̄ = {y | y ≤ x}, in index order.
    pub fn closure(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq[j][i]).collect()
    }

    pub fn open_star_named(&self, x: &str) -> Result<BTreeSet<String>> {
        let i = self.index_of(x)?;
        Ok(self.open_star(i).into_iter().map(|j| self.names[j].clone()).collect())
    }

    pub fn closure_named(&self, x: &str) -> Result<BTreeSet<String>> {
        let i = self.index_of(x)?;
        Ok(self.closure(i).into_iter().map(|j| self.names[j].clone()).collect())
    }

    /// A chain of covers from `i` up to `j` (inclusive), if i ≤ j.
    pub fn chain(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        if !self.leq[i][j] {
            return None;
        }
        let mut path = vec![i];
        let mut cur = i;
        while cur != j {
            cur = *self.up[cur].iter().find(|&&c| self.leq[c][j]).unwrap();
            path.push(cur);
        }
        Some(path)
    }

    /// Covering pairs of the subposet induced on `subset` (indices into self).
    pub fn induced_covers(&self, subset: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &a in subset {
            for &b in subset {
                if self.lt(a, b) && !subset.iter().any(|&c| c != a && c != b && self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of covers in the longest chain.
    pub fn height(&self) -> usize {
        let n = self.len();
        let mut h = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse((0..n).filter(|&j| self.leq[j][i]).count()));
        for &i in order.iter().rev() {
            for &d in &self.down[i] {
                h[i] = h[i].max(h[d] + 1);
            }
        }
        h.into_iter().max().unwrap_or(0)
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    /// Connected components of the comparability graph restricted to `subset`.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut comp: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; self.len()];
        let inside: BTreeSet<usize> = subset.iter().copied().collect();
        for &s in subset {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < c.len() {
                let x = c[k];
                for &y in &inside {
                    if !seen[y] && (self.leq[x][y] || self.leq[y][x]) {
                        seen[y] = true;
                        c.push(y);
                    }
                }
                k += 1;
            }
            c.sort_unstable();
            comp.push(c);
        }
        comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn interval_face_poset() {
        let p = Poset::build(&pairs(&[("x", "a"), ("y", "a")])).unwrap();
        assert_eq!(p.len(), 3);
        let star: Vec<_> = p.open_star_named("x").unwrap().into_iter().collect();
        assert_eq!(star, vec!["a", "x"]);
        assert_eq!(p.open_star_named("a").unwrap().len(), 1);
        assert!(matches!(p.open_star_named("q"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn empty_and_errors() {
        assert!(Poset::build(&[]).unwrap().is_empty());
        assert!(matches!(Poset::build(&pairs(&[("a", "b"), ("b", "a")])), Err(Error::CycleDetected(_))));
        assert!(matches!(
            Poset::build(&pairs(&[("a", "b"), ("b", "c"), ("a", "c")])),
            Err(Error::RedundantCover(_, _))
        ));
        assert!(Poset::build(&pairs(&[("a", "a")])).is_err());
    }

    #[test]
    fn chain_closure() {
        let p = Poset::build(&pairs(&[("v", "e"), ("e", "f")])).unwrap();
        assert_eq!(p.closure_named("f").unwrap().len(), 3);
        assert_eq!(p.height(), 2);
        let v = p.index_of("v").unwrap();
        let f = p.index_of("f").unwrap();
        assert_eq!(p.chain(v, f).unwrap().len(), 3);
    }
}
