//! The concrete complexes: coordinate layouts per degree and their
//! coboundary operators.

use super::complex::{Block, Complex};
use super::differentials::{big_d, d_ce, d_rb, delta, delta_rb, partial};
use crate::foundation::Scalar;
use crate::nrcore::{Cochain, Split};
use crate::bialgebra::{RMatrixComplex, TlbComplex, TriangularBialgebra};
use crate::structures::{LieAlgebra, Rbo, RelativeRbo, Representation};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexKind {
    /// Chevalley–Eilenberg with adjoint coefficients, `C^0 = g`.
    Ce,
    /// Chevalley–Eilenberg with `C^0 = 0`.
    CeReduced,
    LieRepPair,
    OOperator,
    RelativeRb,
    RotaBaxter,
    /// `(∧^{≥2} g, d_r)` of an r-matrix.
    RMatrix,
    Triangular,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 8] = [
        ComplexKind::Ce,
        ComplexKind::CeReduced,
        ComplexKind::LieRepPair,
        ComplexKind::OOperator,
        ComplexKind::RelativeRb,
        ComplexKind::RotaBaxter,
        ComplexKind::RMatrix,
        ComplexKind::Triangular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::Ce => "ce",
            ComplexKind::CeReduced => "ce-reduced",
            ComplexKind::LieRepPair => "lie-rep",
            ComplexKind::OOperator => "o-operator",
            ComplexKind::RelativeRb => "relative-rb",
            ComplexKind::RotaBaxter => "rota-baxter",
            ComplexKind::RMatrix => "r-matrix",
            ComplexKind::Triangular => "triangular",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

fn split_blocks(blocks: &[Block], x: &[Scalar]) -> Vec<Cochain> {
    let mut out = Vec::with_capacity(blocks.len());
    let mut at = 0;
    for b in blocks {
        out.push(b.to_cochain(&x[at..at + b.len()]));
        at += b.len();
    }
    out
}

fn join_blocks(blocks: &[Block], cs: &[&Cochain]) -> Vec<Scalar> {
    blocks.iter().zip(cs).flat_map(|(b, c)| b.coords(c)).collect()
}

fn labels_of(blocks: &[Block], tags: &[&str], names: &[String]) -> Vec<String> {
    blocks
        .iter()
        .zip(tags)
        .flat_map(|(b, t)| b.labels(names).into_iter().map(move |l| format!("{t}{l}")))
        .collect()
}

fn total(blocks: &[Block]) -> usize {
    blocks.iter().map(Block::len).sum()
}

/// `C^n = Hom(∧^n g, g)` with `d_CE`.
pub struct LieComplex {
    pub lie: LieAlgebra,
    pub reduced: bool,
}

impl LieComplex {
    pub fn blocks(&self, n: usize) -> Vec<Block> {
        if n == 0 && self.reduced {
            return vec![];
        }
        vec![Block::full(Split::pure(self.lie.dim()), n)]
    }
}

impl Complex for LieComplex {
    fn name(&self) -> String {
        if self.reduced { "ce-reduced" } else { "ce" }.into()
    }
    fn dim(&self, n: usize) -> usize {
        total(&self.blocks(n))
    }
    fn apply(&self, n: usize, x: &[Scalar]) -> Vec<Scalar> {
        let src = self.blocks(n);
        let dst = self.blocks(n + 1);
        if src.is_empty() {
            return vec![Scalar::default(); total(&dst)];
        }
        let f = &split_blocks(&src, x)[0];
        join_blocks(&dst, &[&d_ce(&self.lie, f)])
    }
    fn slot_labels(&self, n: usize) -> Vec<String> {
        labels_of(&self.blocks(n), &["f"], self.lie.labels())
    }
}

/// `𝔠^n(g,ρ) = C^{(n−1)|0}` with `∂`.
pub struct LieRepComplex {
    pub rep: Representation,
}

impl LieRepComplex {
    pub fn blocks(&self, n: usize) -> Vec<Block> {
        if n == 0 {
            return vec![];
        }
        vec![Block::bidegree(self.rep.split(), n, n as i32 - 1, 0)]
    }
}

impl Complex for LieRepComplex {
    fn name(&self) -> String {
        "lie-rep".into()
    }
    fn dim(&self, n: usize) -> usize {
        total(&self.blocks(n))
    }
    fn apply(&self, n: usize, x: &[Scalar]) -> Vec<Scalar> {
        let src = self.blocks(n);
        let dst = self.blocks(n + 1);
        if src.is_empty() {
            return vec![Scalar::default(); total(&dst)];
        }
        let f = &split_blocks(&src, x)[0];
        join_blocks(&dst, &[&partial(&self.rep, f)])
    }
    fn slot_labels(&self, n: usize) -> Vec<String> {
        labels_of(&self.blocks(n), &["f"], &self.rep.labels_w())
    }
}

/// `𝔠^n(T) = Hom(∧^{n−1} V, g)` for `n ≥ 2` with `δ`.
pub struct OperatorComplex {
    pub op: RelativeRbo,
}

impl OperatorComplex {
    pub fn blocks(&self, n: usize) -> Vec<Block> {
        if n < 2 {
            return vec![];
        }
        vec![Block::bidegree(self.op.rep().split(), n - 1, -1, n as i32 - 1)]
    }
}

impl Complex for OperatorComplex {
    fn name(&self) -> String {
        "o-operator".into()
    }
    fn dim(&self, n: usize) -> usize {
        total(&self.blocks(n))
    }
    fn apply(&self, n: usize, x: &[Scalar]) -> Vec<Scalar> {
        let src = self.blocks(n);
        let dst = self.blocks(n + 1);
        if src.is_empty() {
            return vec![Scalar::default(); total(&dst)];
        }
        let th = &split_blocks(&src, x)[0];
        join_blocks(&dst, &[&delta(&self.op, th)])
    }
    fn slot_labels(&self, n: usize) -> Vec<String> {
        labels_of(&self.blocks(n), &["theta"], &self.op.rep().labels_w())
    }
}

/// `𝔠^n(g,ρ,T) = 𝔠^n(g,ρ) ⊕ 𝔠^n(T)` with `𝒟`; `𝔠^1 = gl(g) ⊕ gl(V)`.
pub struct RelativeComplex {
    pub op: RelativeRbo,
}

impl RelativeComplex {
    pub fn blocks(&self, n: usize) -> Vec<Block> {
        let s = self.op.rep().split();
        match n {
            0 => vec![],
            1 => vec![Block::bidegree(s, 1, 0, 0)],
            _ => vec![
                Block::bidegree(s, n, n as i32 - 1, 0),
                Block::bidegree(s, n - 1, -1, n as i32 - 1),
            ],
        }
    }
}

impl Complex for RelativeComplex {
    fn name(&self) -> String {
        "relative-rb".into()
    }
    fn dim(&self, n: usize) -> usize {
        total(&self.blocks(n))
    }
    fn apply(&self, n: usize, x: &[Scalar]) -> Vec<Scalar> {
        let src = self.blocks(n);
        let dst = self.blocks(n + 1);
        if src.is_empty() {
            return vec![Scalar::default(); total(&dst)];
        }
        let parts = split_blocks(&src, x);
        let (df, dt) = big_d(&self.op, &parts[0], parts.get(1));
        join_blocks(&dst, &[&df, &dt])
    }
    fn slot_labels(&self, n: usize) -> Vec<String> {
        labels_of(&self.blocks(n), &["f", "theta"], &self.op.rep().labels_w())
    }
}

/// `Hom(∧^{n−1} g, g)` for `n ≥ 2` with `δ` of a Rota–Baxter operator.
pub struct RbOperatorComplex {
    pub rbo: Rbo,
}

impl RbOperatorComplex {
    pub fn blocks(&self, n: usize) -> Vec<Block> {
        if n < 2 {
            return vec![];
        }
        vec![Block::full(Split::pure(self.rbo.lie().dim()), n - 1)]
    }
}

impl Complex for RbOperatorComplex {
    fn name(&self) -> String {
        "rb-operator".into()
    }
    fn dim(&self, n: usize) -> usize {
        total(&self.blocks(n))
    }
    fn apply(&self, n: usize, x: &[Scalar]) -> Vec<Scalar> {
        let src = self.blocks(n);
        let dst = self.blocks(n + 1);
        if src.is_empty() {
            return vec![Scalar::default(); total(&dst)];
        }
        let th = &split_blocks(&src, x)[0];
        join_blocks(&dst, &[&delta_rb(&self.rbo, th)])
    }
    fn slot_labels(&self, n: usize) -> Vec<String> {
        labels_of(&self.blocks(n), &["theta"], self.rbo.lie().labels())
    }
}

/// `𝔠^n_RB = Hom(∧^n g, g) ⊕ Hom(∧^{n−1} g, g)` with `𝒟_RB`; `𝔠^1 = gl(g)`.
pub struct RbComplex {
    pub rbo: Rbo,
}

impl RbComplex {
    pub fn blocks(&self, n: usize) -> Vec<Block> {
        let s = Split::pure(self.rbo.lie().dim());
        match n {
            0 => vec![],
            1 => vec![Block::full(s, 1)],
            _ => vec![Block::full(s, n), Block::full(s, n - 1)],
        }
    }
}

impl Complex for RbComplex {
    fn name(&self) -> String {
        "rota-baxter".into()
    }
    fn dim(&self, n: usize) -> usize {
        total(&self.blocks(n))
    }
    fn apply(&self, n: usize, x: &[Scalar]) -> Vec<Scalar> {
        let src = self.blocks(n);
        let dst = self.blocks(n + 1);
        if src.is_empty() {
            return vec![Scalar::default(); total(&dst)];
        }
        let parts = split_blocks(&src, x);
        let (df, dt) = d_rb(&self.rbo, &parts[0], parts.get(1));
        join_blocks(&dst, &[&df, &dt])
    }
    fn slot_labels(&self, n: usize) -> Vec<String> {
        labels_of(&self.blocks(n), &["f", "theta"], self.rbo.lie().labels())
    }
}

/// The structure a complex is built from.
#[derive(Clone, Debug)]
pub enum Structure {
    Lie(LieAlgebra),
    LieRep(Representation),
    Relative(RelativeRbo),
    RotaBaxter(Rbo),
    Triangular(TriangularBialgebra),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("complex {kind} needs {needs}")]
pub struct KindMismatch {
    pub kind: &'static str,
    pub needs: &'static str,
}

/// Builds the complex of the given kind, reading the needed data off the
/// structure (a relative operator also carries its pair and Lie algebra).
pub fn build_complex(kind: ComplexKind, s: &Structure) -> Result<Box<dyn Complex>, KindMismatch> {
    let lie = match s {
        Structure::Lie(l) => l.clone(),
        Structure::LieRep(r) => r.lie().clone(),
        Structure::Relative(op) => op.lie().clone(),
        Structure::RotaBaxter(r) => r.lie().clone(),
        Structure::Triangular(t) => t.lie().clone(),
    };
    let rep = match s {
        Structure::LieRep(r) => Some(r.clone()),
        Structure::Relative(op) => Some(op.rep().clone()),
        Structure::RotaBaxter(r) => Some(r.as_relative().rep().clone()),
        Structure::Triangular(t) => Some(t.relative().rep().clone()),
        Structure::Lie(_) => None,
    };
    let op = match s {
        Structure::Relative(op) => Some(op.clone()),
        Structure::RotaBaxter(r) => Some(r.as_relative()),
        Structure::Triangular(t) => Some(t.relative().clone()),
        _ => None,
    };
    let mismatch = |needs| KindMismatch { kind: kind.name(), needs };
    Ok(match kind {
        ComplexKind::Ce => Box::new(LieComplex { lie, reduced: false }),
        ComplexKind::CeReduced => Box::new(LieComplex { lie, reduced: true }),
        ComplexKind::LieRepPair => Box::new(LieRepComplex { rep: rep.ok_or(mismatch("a representation"))? }),
        ComplexKind::OOperator => Box::new(OperatorComplex { op: op.ok_or(mismatch("an operator"))? }),
        ComplexKind::RelativeRb => Box::new(RelativeComplex { op: op.ok_or(mismatch("an operator"))? }),
        ComplexKind::RotaBaxter => match s {
            Structure::RotaBaxter(r) => Box::new(RbComplex { rbo: r.clone() }),
            _ => return Err(mismatch("a Rota-Baxter operator on g")),
        },
        ComplexKind::RMatrix | ComplexKind::Triangular => match s {
            Structure::Triangular(t) if kind == ComplexKind::RMatrix => Box::new(RMatrixComplex { tlb: t.clone() }),
            Structure::Triangular(t) => Box::new(TlbComplex { tlb: t.clone() }),
            _ => return Err(mismatch("an r-matrix")),
        },
    })
}
