use super::HomotopyError;
use crate::foundation::Scalar;
use crate::linfty::GradedVector;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Finite-dimensional ℤ-graded space with a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    degrees: Vec<i32>,
    labels: Vec<String>,
}

impl GradedSpace {
    pub fn new(degrees: Vec<i32>, labels: Vec<String>) -> Result<Self, HomotopyError> {
        if degrees.len() != labels.len() {
            return Err(HomotopyError::Labels { expected: degrees.len(), got: labels.len() });
        }
        Ok(GradedSpace { degrees, labels })
    }

    /// Basis ordered by ascending degree, labelled `x1, x2, …`.
    pub fn from_dims(dims: &BTreeMap<i32, usize>) -> Self {
        let degrees: Vec<i32> = dims.iter().flat_map(|(&d, &n)| std::iter::repeat_n(d, n)).collect();
        let labels = (1..=degrees.len()).map(|i| format!("x{i}")).collect();
        GradedSpace { degrees, labels }
    }

    pub fn concentrated(dim: usize, degree: i32, prefix: &str) -> Self {
        GradedSpace { degrees: vec![degree; dim], labels: (1..=dim).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }

    /// `self ⊕ other`, with the basis of `self` first.
    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        GradedSpace {
            degrees: self.degrees.iter().chain(&other.degrees).copied().collect(),
            labels: self.labels.iter().chain(&other.labels).cloned().collect(),
        }
    }

    /// `s⁻¹V` with `(s⁻¹V)^i = V^{i+1}`.
    pub fn desuspension(&self) -> GradedSpace {
        GradedSpace {
            degrees: self.degrees.iter().map(|d| d - 1).collect(),
            labels: self.labels.iter().map(|l| format!("s^-1 {l}")).collect(),
        }
    }

    pub fn suspension(&self) -> GradedSpace {
        GradedSpace {
            degrees: self.degrees.iter().map(|d| d + 1).collect(),
            labels: self.labels.iter().map(|l| l.strip_prefix("s^-1 ").unwrap_or(l).to_string()).collect(),
        }
    }

    pub fn basis_of_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn basis_vector(&self, i: usize) -> GradedVec {
        let mut coords = vec![Scalar::zero(); self.dim()];
        coords[i] = Scalar::from_integer(1.into());
        GradedVec { degree: self.degrees[i], coords }
    }
}

/// Homogeneous vector: coordinates off the given degree are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVec {
    pub degree: i32,
    pub coords: Vec<Scalar>,
}

impl GradedVector for GradedVec {
    fn degree(&self) -> i32 {
        self.degree
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}
