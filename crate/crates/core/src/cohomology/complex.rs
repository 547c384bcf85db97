//! Cochain spaces as coordinate blocks, differential matrices and
//! cohomology with representatives.

use crate::foundation::{exterior_basis, par, Matrix, Scalar, Strategy};
use crate::nrcore::{Cochain, Split};
use num_traits::Zero;
use serde::Serialize;

/// One summand of a cochain space: the positions `(sorted inputs, output)`
/// of a fixed arity that carry coordinates.
#[derive(Clone, Debug)]
pub struct Block {
    pub split: Split,
    pub arity: usize,
    pub slots: Vec<(Vec<usize>, usize)>,
}

impl Block {
    pub fn new(split: Split, arity: usize, keep: impl Fn(&[usize], usize) -> bool) -> Self {
        let mut slots = Vec::new();
        for idx in exterior_basis(arity, split.total()) {
            for out in 0..split.total() {
                if keep(&idx, out) {
                    slots.push((idx.clone(), out));
                }
            }
        }
        Block { split, arity, slots }
    }

    /// All of `Hom(∧^arity W, W)`.
    pub fn full(split: Split, arity: usize) -> Self {
        Self::new(split, arity, |_, _| true)
    }

    /// The homogeneous component of bidegree `k|l`.
    pub fn bidegree(split: Split, arity: usize, k: i32, l: i32) -> Self {
        Self::new(split, arity, move |idx, o| split.slot_bidegree(idx, o) == (k, l))
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn to_cochain(&self, coords: &[Scalar]) -> Cochain {
        let mut c = Cochain::zero(self.split, self.arity);
        for ((idx, o), x) in self.slots.iter().zip(coords) {
            if !x.is_zero() {
                c.set(idx, *o, x.clone());
            }
        }
        c
    }

    /// Coordinates of `c`; panics if `c` has support outside the block, which
    /// would mean a differential left its complex.
    pub fn coords(&self, c: &Cochain) -> Vec<Scalar> {
        let out: Vec<Scalar> = self.slots.iter().map(|(idx, o)| c.get(idx, *o)).collect();
        debug_assert!(
            self.to_cochain(&out) == *c || c.arity() != Some(self.arity),
            "cochain has support outside its block"
        );
        out
    }

    pub fn labels(&self, names: &[String]) -> Vec<String> {
        self.slots
            .iter()
            .map(|(idx, o)| {
                let args: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
                format!("({})->{}", args.join(","), names[*o])
            })
            .collect()
    }
}

/// A cochain complex `C^0 → C^1 → …` with finite-dimensional terms.
pub trait Complex: Sync {
    fn name(&self) -> String;
    fn dim(&self, n: usize) -> usize;
    /// `d: C^n → C^{n+1}` in coordinates.
    fn apply(&self, n: usize, x: &[Scalar]) -> Vec<Scalar>;
    fn slot_labels(&self, n: usize) -> Vec<String>;
}

/// Matrix of `d^n` with columns the images of the coordinate basis, assembled
/// column by column under the given strategy.
pub fn differential_matrix(c: &dyn Complex, n: usize, strategy: Strategy) -> Matrix {
    let src = c.dim(n);
    let dst = c.dim(n + 1);
    let cols = par::map_indices(strategy, src, |j| {
        let mut e = vec![Scalar::zero(); src];
        e[j] = Scalar::from_integer(1.into());
        c.apply(n, &e)
    });
    Matrix::from_columns(dst, &cols)
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub complex: String,
    pub degree: usize,
    pub cochain_dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub betti: usize,
    /// Cocycles whose classes form a basis of `H^n`, in slot coordinates.
    #[serde(skip)]
    pub representatives: Vec<Vec<Scalar>>,
    pub slot_labels: Vec<String>,
    pub d_squared_zero: bool,
}

/// Kernel of `d^n` together with a basis of the image of `d^{n−1}`.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub d_in: Matrix,
    pub d_out: Matrix,
    pub image: Vec<Vec<Scalar>>,
    pub representatives: Vec<Vec<Scalar>>,
}

fn independent_columns(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (_, pivots) = m.rref();
    pivots.into_iter().map(|j| m.column(j)).collect()
}

/// Extends the image basis by kernel vectors; the added vectors represent
/// a basis of cohomology.
pub fn degree_data(c: &dyn Complex, n: usize, strategy: Strategy) -> DegreeData {
    let dim = c.dim(n);
    let d_in = if n == 0 {
        Matrix::zeros(dim, 0)
    } else {
        differential_matrix(c, n - 1, strategy)
    };
    let d_out = differential_matrix(c, n, strategy);
    let image = independent_columns(&d_in);
    let mut basis = image.clone();
    let mut rank = basis.len();
    let mut reps = Vec::new();
    for z in d_out.kernel_basis() {
        let mut trial = basis.clone();
        trial.push(z.clone());
        let r = Matrix::from_columns(dim, &trial).rank();
        if r > rank {
            rank = r;
            basis = trial;
            reps.push(z);
        }
    }
    DegreeData { d_in, d_out, image, representatives: reps }
}

pub fn cohomology(c: &dyn Complex, n: usize, strategy: Strategy) -> CohomologyReport {
    let data = degree_data(c, n, strategy);
    let d_squared_zero = data.d_out.mul(&data.d_in).is_zero();
    CohomologyReport {
        complex: c.name(),
        degree: n,
        cochain_dim: c.dim(n),
        rank_in: data.image.len(),
        rank_out: data.d_out.rank(),
        betti: data.representatives.len(),
        representatives: data.representatives,
        slot_labels: c.slot_labels(n),
        d_squared_zero,
    }
}

/// Coordinates of the class of a cocycle `z` in the basis given by
/// `data.representatives`.
pub fn class_coordinates(data: &DegreeData, dim: usize, z: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut cols = data.representatives.clone();
    cols.extend(data.image.iter().cloned());
    if cols.is_empty() {
        return if z.iter().all(Zero::is_zero) { Some(vec![]) } else { None };
    }
    let m = Matrix::from_columns(dim, &cols);
    let x = m.solve(z)?;
    Some(x[..data.representatives.len()].to_vec())
}
