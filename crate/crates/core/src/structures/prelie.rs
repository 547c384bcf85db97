use super::{CheckReport, RelativeRbo, StructureError, Witness};
use crate::foundation::Scalar;
use num_traits::Zero;

/// Bilinear product on `V`: `prod[a][b]` is the vector `v_a ▹ v_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreLie {
    pub dim: usize,
    pub prod: Vec<Vec<Vec<Scalar>>>,
}

/// Product `u ▹ v = ρ(Tu)v` induced by a relative Rota–Baxter operator.
pub fn prelie_from_rbo(op: &RelativeRbo) -> Result<PreLie, StructureError> {
    op.require_verified()?;
    let dv = op.rep().dim_v();
    let rho = op.rep().rho();
    let prod = (0..dv)
        .map(|a| {
            let tu = op.t().column(a);
            (0..dv)
                .map(|b| {
                    let mut out = vec![Scalar::zero(); dv];
                    for (i, c) in tu.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (o, x) in rho[i].column(b).into_iter().enumerate() {
                            out[o] += c * x;
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    Ok(PreLie { dim: dv, prod })
}

impl PreLie {
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for a in 0..self.dim {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..self.dim {
                if y[b].is_zero() {
                    continue;
                }
                let c = &x[a] * &y[b];
                for (o, v) in self.prod[a][b].iter().enumerate() {
                    out[o] += &c * v;
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::from_integer(1.into());
        v
    }

    /// Left-symmetric identity `(x,y,z) = (y,x,z)` for the associator.
    pub fn verify(&self) -> CheckReport {
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    let (x, y, z) = (self.unit(a), self.unit(b), self.unit(c));
                    let assoc = |p: &[Scalar], q: &[Scalar]| -> Vec<Scalar> {
                        let l = self.mul(&self.mul(p, q), &z);
                        let r = self.mul(p, &self.mul(q, &z));
                        l.iter().zip(&r).map(|(u, v)| u - v).collect()
                    };
                    let d: Vec<Scalar> =
                        assoc(&x, &y).iter().zip(assoc(&y, &x)).map(|(u, v)| u - v).collect();
                    if d.iter().any(|v| !v.is_zero()) {
                        return CheckReport {
                            check: "pre-lie".into(),
                            ok: false,
                            witness: Some(Witness {
                                inputs: vec![format!("v{}", a + 1), format!("v{}", b + 1), format!("v{}", c + 1)],
                                defect: d,
                            }),
                            routes_agree: true,
                        };
                    }
                }
            }
        }
        CheckReport::pass("pre-lie")
    }

    /// Sub-adjacent bracket `[x,y] = x ▹ y − y ▹ x` on basis vectors.
    pub fn commutator(&self, a: usize, b: usize) -> Vec<Scalar> {
        self.prod[a][b].iter().zip(&self.prod[b][a]).map(|(u, v)| u - v).collect()
    }
}
