use std::collections::BTreeMap;

use super::Subspace;
use crate::error::{Error, Result};
use crate::scalars::{QuadExt, Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationKind {
    /// Hodge-type F^p, shrinking as p grows.
    Decreasing,
    /// Weight-type W_k, growing with k.
    Increasing,
}

/// A filtration given by finitely many steps. Missing indices are filled in
/// from the neighbouring step: for F^p, the step at the smallest key ≥ p
/// (everything below the smallest key, zero above the largest); for W_k, the
/// step at the largest key ≤ k (zero below the smallest key, the top step
/// above the largest).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Filtration<S: Scalar> {
    kind: FiltrationKind,
    ambient: usize,
    ctx: S::Ctx,
    steps: BTreeMap<i32, Subspace<S>>,
}

impl<S: Scalar> Filtration<S> {
    pub fn new(kind: FiltrationKind, ambient: usize, ctx: S::Ctx, steps: BTreeMap<i32, Subspace<S>>) -> Result<Self> {
        for (k, s) in &steps {
            if s.ambient() != ambient {
                return Err(Error::Dimension(format!("filtration step {k} lives in dimension {}", s.ambient())));
            }
        }
        let f = Filtration { kind, ambient, ctx, steps };
        f.check_nested()?;
        Ok(f)
    }

    pub fn decreasing(ambient: usize, ctx: S::Ctx, steps: BTreeMap<i32, Subspace<S>>) -> Result<Self> {
        Self::new(FiltrationKind::Decreasing, ambient, ctx, steps)
    }

    pub fn increasing(ambient: usize, ctx: S::Ctx, steps: BTreeMap<i32, Subspace<S>>) -> Result<Self> {
        Self::new(FiltrationKind::Increasing, ambient, ctx, steps)
    }

    fn check_nested(&self) -> Result<()> {
        let v: Vec<(&i32, &Subspace<S>)> = self.steps.iter().collect();
        for w in v.windows(2) {
            let (ka, a) = w[0];
            let (kb, b) = w[1];
            let ok = match self.kind {
                FiltrationKind::Decreasing => a.contains(b),
                FiltrationKind::Increasing => b.contains(a),
            };
            if !ok {
                return Err(Error::Dimension(format!("filtration steps {ka} and {kb} are not nested")));
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn ctx(&self) -> S::Ctx {
        self.ctx
    }
    pub fn steps(&self) -> &BTreeMap<i32, Subspace<S>> {
        &self.steps
    }

    /// Smallest and largest explicit index.
    pub fn bounds(&self) -> Option<(i32, i32)> {
        Some((*self.steps.keys().next()?, *self.steps.keys().next_back()?))
    }

    pub fn get(&self, i: i32) -> Subspace<S> {
        let Some((lo, hi)) = self.bounds() else {
            return match self.kind {
                FiltrationKind::Decreasing => Subspace::full(self.ambient, self.ctx),
                FiltrationKind::Increasing => Subspace::zero(self.ambient, self.ctx),
            };
        };
        match self.kind {
            FiltrationKind::Decreasing => {
                if i < lo {
                    Subspace::full(self.ambient, self.ctx)
                } else if i > hi {
                    Subspace::zero(self.ambient, self.ctx)
                } else {
                    self.steps.range(i..).next().expect("key in range").1.clone()
                }
            }
            FiltrationKind::Increasing => {
                if i < lo {
                    Subspace::zero(self.ambient, self.ctx)
                } else if i > hi {
                    self.steps[&hi].clone()
                } else {
                    self.steps.range(..=i).next_back().expect("key in range").1.clone()
                }
            }
        }
    }

    /// The smallest and largest index at which the graded piece is nonzero.
    pub fn jump_range(&self) -> Option<(i32, i32)> {
        let (lo, hi) = self.bounds()?;
        let mut jumps = Vec::new();
        for i in lo - 1..=hi + 1 {
            if self.graded_dim(i) > 0 {
                jumps.push(i);
            }
        }
        Some((*jumps.first()?, *jumps.last()?))
    }

    /// dim F^p − dim F^{p+1}, or dim W_k − dim W_{k−1}.
    pub fn graded_dim(&self, i: i32) -> usize {
        match self.kind {
            FiltrationKind::Decreasing => self.get(i).dim() - self.get(i + 1).dim(),
            FiltrationKind::Increasing => self.get(i).dim() - self.get(i - 1).dim(),
        }
    }

    pub fn map_steps<T: Scalar>(&self, ctx: T::Ctx, f: impl Fn(&Subspace<S>) -> Subspace<T>) -> Result<Filtration<T>> {
        Filtration::new(self.kind, self.ambient, ctx, self.steps.iter().map(|(k, s)| (*k, f(s))).collect())
    }

    pub fn conj(&self) -> Self {
        Filtration {
            kind: self.kind,
            ambient: self.ambient,
            ctx: self.ctx,
            steps: self.steps.iter().map(|(k, s)| (*k, s.conj())).collect(),
        }
    }

    /// Equality as filtrations (every index), regardless of which steps were
    /// given explicitly.
    pub fn same_as(&self, o: &Self) -> bool {
        if self.kind != o.kind || self.ambient != o.ambient {
            return false;
        }
        let lo = self.bounds().map_or(0, |b| b.0).min(o.bounds().map_or(0, |b| b.0)) - 1;
        let hi = self.bounds().map_or(0, |b| b.1).max(o.bounds().map_or(0, |b| b.1)) + 1;
        (lo..=hi).all(|i| self.get(i) == o.get(i))
    }
}

impl Filtration<Rational> {
    pub fn extend_scalars(&self, disc: u64) -> Filtration<QuadExt> {
        self.map_steps(disc, |s| s.extend_scalars(disc)).expect("scalar extension preserves nesting")
    }
}
