//! Bounded complexes of sheaves or cosheaves, maps between them and cones.
//! Degrees are cohomological throughout.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::ChainComplex;
use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::functors::{self, Push};
use crate::maps::PosetMap;
use crate::matrix::Matrix;
use crate::sheaf::{Cosheaf, Morphism, Rep, Sheaf, Variance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepComplex<K: Variance> {
    pub complex: Arc<CellComplex>,
    pub field: Field,
    pub lo: i64,
    pub terms: Vec<Rep<K>>,
    /// diffs[k]: terms[k] → terms[k+1].
    pub diffs: Vec<Morphism<K>>,
}

pub type SheafComplex = RepComplex<Sheaf>;
pub type CosheafComplex = RepComplex<Cosheaf>;

impl<K: Variance> RepComplex<K> {
    pub fn new(lo: i64, terms: Vec<Rep<K>>, diffs: Vec<Morphism<K>>) -> Result<RepComplex<K>> {
        let first = terms.first().ok_or_else(|| Error::NotComplex("no terms".into()))?;
        let c = RepComplex { complex: first.complex.clone(), field: first.field, lo, terms, diffs };
        c.check()?;
        Ok(c)
    }

    /// A single object placed in degree `deg`.
    pub fn single(f: &Rep<K>, deg: i64) -> RepComplex<K> {
        RepComplex { complex: f.complex.clone(), field: f.field, lo: deg, terms: vec![f.clone()], diffs: Vec::new() }
    }

    fn check(&self) -> Result<()> {
        if self.diffs.len() + 1 != self.terms.len() {
            return Err(Error::NotComplex("one differential per consecutive pair of terms".into()));
        }
        for (k, d) in self.diffs.iter().enumerate() {
            if d.source != self.terms[k] || d.target != self.terms[k + 1] || !d.is_natural() {
                return Err(Error::NotComplex(format!("differential out of degree {}", self.lo + k as i64)));
            }
        }
        for k in 1..self.diffs.len() {
            if !self.diffs[k - 1].compose(&self.diffs[k]).is_zero() {
                return Err(Error::NotComplex(format!("d∘d ≠ 0 at degree {}", self.lo + k as i64 - 1)));
            }
        }
        Ok(())
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, n: i64) -> Rep<K> {
        if n < self.lo || n > self.hi() {
            Rep::zero(&self.complex, self.field)
        } else {
            self.terms[(n - self.lo) as usize].clone()
        }
    }

    pub fn diff(&self, n: i64) -> Morphism<K> {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            Morphism::zero(&self.term(n), &self.term(n + 1))
        }
    }

    /// The complex of stalks at one cell.
    pub fn stalk_complex(&self, x: usize) -> ChainComplex {
        let dims = self.terms.iter().map(|t| t.dims[x]).collect();
        let d = self.diffs.iter().map(|m| m.comps[x].clone()).collect();
        ChainComplex { field: self.field, lo: self.lo, dims, d, homological: false }
    }

    /// Acyclic at every cell.
    pub fn is_acyclic(&self) -> bool {
        (0..self.complex.len()).all(|x| self.stalk_complex(x).is_acyclic())
    }

    /// Applies a pushforward termwise.
    pub fn push(&self, f: &PosetMap, which: Push) -> Result<RepComplex<K>> {
        let pushed: Vec<functors::Pushed<K>> = self.terms.iter().map(|t| functors::push(f, t, which)).collect::<Result<_>>()?;
        let diffs = self.diffs.iter().enumerate().map(|(k, d)| pushed[k].induced(&d.comps, &pushed[k + 1])).collect();
        Ok(RepComplex {
            complex: f.target.clone(),
            field: self.field,
            lo: self.lo,
            terms: pushed.into_iter().map(|p| p.rep).collect(),
            diffs,
        })
    }

    /// The complex of vector spaces obtained by pushing to a point.
    pub fn global(&self, which: Push) -> ChainComplex {
        let p = PosetMap::to_point(&self.complex);
        self.push(&p, which).expect("map to a point is valid").stalk_complex(0)
    }

    /// Linear dual: (VC)^n = V(C^{−n}) with transposed differentials.
    pub fn linear_dual(&self) -> RepComplex<K::Dual> {
        let terms: Vec<Rep<K::Dual>> = self.terms.iter().rev().map(Rep::linear_dual).collect();
        let diffs = self.diffs.iter().rev().map(Morphism::linear_dual).collect();
        RepComplex { complex: self.complex.clone(), field: self.field, lo: -self.hi(), terms, diffs }
    }

    /// C[k]: term n is C^{n+k}; differentials negated for odd k.
    pub fn shift(&self, k: i64) -> RepComplex<K> {
        let s = if k % 2 == 0 { self.field.one() } else { -self.field.one() };
        RepComplex { lo: self.lo - k, diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(), ..self.clone() }
    }

    /// The cohomology object ker d^n / im d^{n−1}, computed cellwise.
    pub fn homology_object(&self, n: i64) -> Rep<K> {
        let (_, inc) = self.diff(n).kernel();
        let incoming = self.diff(n - 1);
        let lift = (0..self.complex.len())
            .map(|x| inc.comps[x].left_inverse().expect("kernel basis").mul(&incoming.comps[x]))
            .collect();
        let m = Morphism { source: incoming.source.clone(), target: inc.source.clone(), comps: lift };
        m.cokernel().0
    }

    pub fn identity(&self) -> RepComplexMap<K> {
        let comps = (self.lo..=self.hi()).map(|n| (n, Morphism::identity(&self.term(n)))).collect();
        RepComplexMap { source: self.clone(), target: self.clone(), comps }
    }
}

/// A degree-preserving map of complexes; missing degrees are zero.
#[derive(Clone, Debug)]
pub struct RepComplexMap<K: Variance> {
    pub source: RepComplex<K>,
    pub target: RepComplex<K>,
    pub comps: BTreeMap<i64, Morphism<K>>,
}

impl<K: Variance> RepComplexMap<K> {
    pub fn comp(&self, n: i64) -> Morphism<K> {
        self.comps.get(&n).cloned().unwrap_or_else(|| Morphism::zero(&self.source.term(n), &self.target.term(n)))
    }

    fn range(&self) -> (i64, i64) {
        (self.source.lo.min(self.target.lo), self.source.hi().max(self.target.hi()))
    }

    pub fn commutes(&self) -> bool {
        let (lo, hi) = self.range();
        (lo - 1..=hi).all(|n| {
            let a = self.source.diff(n).compose(&self.comp(n + 1));
            let b = self.comp(n).compose(&self.target.diff(n));
            a.comps == b.comps
        })
    }

    /// cone^n = A^{n+1} ⊕ B^n, d(a, b) = (−d a, f a + d b).
    pub fn cone(&self) -> RepComplex<K> {
        let (a, b) = (&self.source, &self.target);
        let field = a.field;
        let (lo, hi) = (b.lo.min(a.lo - 1), b.hi().max(a.hi() - 1));
        let terms: Vec<Rep<K>> = (lo..=hi).map(|n| a.term(n + 1).direct_sum(&b.term(n)).expect("same complex")).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let k = (n - lo) as usize;
                let (da, f, db) = (a.diff(n + 1), self.comp(n + 1), b.diff(n));
                let comps = (0..a.complex.len())
                    .map(|x| {
                        let (a1, b0) = (a.term(n + 1).dims[x], b.term(n).dims[x]);
                        let (a2, b1) = (a.term(n + 2).dims[x], b.term(n + 1).dims[x]);
                        let mut m = Matrix::zeros(field, a2 + b1, a1 + b0);
                        m.set_block(0, 0, &da.comps[x].neg());
                        m.set_block(a2, 0, &f.comps[x]);
                        m.set_block(a2, a1, &db.comps[x]);
                        m
                    })
                    .collect();
                Morphism { source: terms[k].clone(), target: terms[k + 1].clone(), comps }
            })
            .collect();
        RepComplex { complex: a.complex.clone(), field, lo, terms, diffs }
    }

    /// Quasi-isomorphism test: the cone is acyclic at every cell.
    pub fn is_quasi_isomorphism(&self) -> bool {
        self.cone().is_acyclic()
    }
}
