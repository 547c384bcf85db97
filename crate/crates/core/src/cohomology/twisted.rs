//! The L∞-algebra on `s⁻¹L' ⊕ h` twisted by `(s⁻¹π, T)`, through the closed
//! bracket formulas and through the generic twisting of the derived-bracket
//! algebra.

use crate::foundation::scalar::{factorial, sign_scalar};
use crate::foundation::Scalar;
use crate::linfty::{Linfty, Shifted, Twisted};
use crate::nrcore::{in_lie_rep_part, nr_bracket_unchecked as br, Cochain, Split};
use crate::structures::{mc_algebra, RelativeRbo};
use num_traits::One;

pub type Elem = Shifted<Cochain>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwistError {
    #[error("bracket arity {0} exceeds the truncation arity {1}")]
    BeyondTruncation(usize, usize),
}

/// Twisted brackets `l_k^{(s⁻¹π,T)}` for `k ≤ truncation`.
pub struct TwistedLinfty {
    split: Split,
    pi: Cochain,
    t: Cochain,
    pi_t: Cochain,
    pub truncation: usize,
}

impl TwistedLinfty {
    pub fn new(op: &RelativeRbo, truncation: usize) -> Self {
        let pi = op.rep().pi();
        let t = op.t_cochain();
        let pi_t = br(&pi, &t);
        TwistedLinfty { split: op.rep().split(), pi, t, pi_t, truncation }
    }

    pub fn split(&self) -> Split {
        self.split
    }

    /// `(s⁻¹f, θ)` of degree `n − 2`, where `f` has arity `n`.
    pub fn element(&self, f: Cochain, theta: Cochain) -> Elem {
        Shifted { degree: f.degree() - 1, x: f, a: theta }
    }

    /// `(s⁻¹f, 0)`.
    pub fn from_f(&self, f: Cochain) -> Elem {
        let a = Cochain::zero_of_degree(self.split, f.degree() - 1);
        self.element(f, a)
    }

    /// `ι(θ) = (0, θ)`.
    pub fn iota(&self, theta: Cochain) -> Elem {
        let x = Cochain::zero_of_degree(self.split, theta.degree() + 1);
        Shifted { degree: theta.degree(), x, a: theta }
    }

    /// `[..[f, T].., T]` with `k` copies of `T`.
    pub fn nest_t(&self, f: &Cochain, k: usize) -> Cochain {
        let mut cur = f.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = br(&cur, &self.t);
        }
        cur
    }

    fn n_of(e: &Elem) -> i64 {
        e.degree as i64 + 2
    }

    /// Closed formulas:
    /// * `l_1(s⁻¹f, θ) = (−s⁻¹[π,f], [[π,T],θ] + (1/n!)[..[f,T]..,T])`
    /// * `l_2 = ((−1)^{n₁−1} s⁻¹[f₁,f₂], [[π,θ₁],θ₂]
    ///   + (1/(n₁−1)!)[[f₁,T^{n₁−1}],θ₂] + (−1)^{n₁n₂}(1/(n₂−1)!)[[f₂,T^{n₂−1}],θ₁])`
    /// * `l_m = (0, Σ_i (−1)^{n_i(n_1+..+n_{i−1})} (1/(n_i+1−m)!)
    ///   [..[[f_i,T^{n_i+1−m}],θ_1]..θ̂_i..,θ_m])` for `m ≥ 3`.
    pub fn closed(&self, args: &[&Elem]) -> Result<Elem, TwistError> {
        let m = args.len();
        if m > self.truncation {
            return Err(TwistError::BeyondTruncation(m, self.truncation));
        }
        let deg: i32 = args.iter().map(|a| a.degree).sum::<i32>() + 1;
        let mut out = Shifted {
            degree: deg,
            x: Cochain::zero_of_degree(self.split, deg + 1),
            a: Cochain::zero_of_degree(self.split, deg),
        };
        match m {
            0 => {}
            1 => {
                let (f, th) = (&args[0].x, &args[0].a);
                let n = Self::n_of(args[0]);
                out.x = br(&self.pi, f).scale(&-Scalar::one());
                out.a = br(&self.pi_t, th);
                if n >= 0 {
                    let k = n as usize;
                    out.a.add_scaled(&self.nest_t(f, k), &factorial(k).recip());
                }
            }
            2 => {
                let (n1, n2) = (Self::n_of(args[0]), Self::n_of(args[1]));
                out.x = br(&args[0].x, &args[1].x).scale(&sign_scalar(n1 - 1));
                out.a = br(&br(&self.pi, &args[0].a), &args[1].a);
                if n1 >= 1 {
                    let k = (n1 - 1) as usize;
                    let v = br(&self.nest_t(&args[0].x, k), &args[1].a);
                    out.a.add_scaled(&v, &factorial(k).recip());
                }
                if n2 >= 1 {
                    let k = (n2 - 1) as usize;
                    let v = br(&self.nest_t(&args[1].x, k), &args[0].a);
                    out.a.add_scaled(&v, &(sign_scalar(n1 * n2) * factorial(k).recip()));
                }
            }
            _ => {
                let mut before = 0i64;
                for i in 0..m {
                    let ni = Self::n_of(args[i]);
                    let k = ni + 1 - m as i64;
                    if k >= 0 {
                        let mut cur = self.nest_t(&args[i].x, k as usize);
                        for (j, a) in args.iter().enumerate() {
                            if j != i {
                                cur = br(&cur, &a.a);
                            }
                        }
                        let c = sign_scalar(ni * before) * factorial(k as usize).recip();
                        out.a.add_scaled(&cur, &c);
                    }
                    before += ni;
                }
            }
        }
        Ok(out)
    }

    /// The same bracket by twisting the derived-bracket algebra with
    /// `α = (s⁻¹π, T)`, summing `(1/j!) l_{k+j}(α^j, ..)` until the nested
    /// brackets are forced to vanish.
    pub fn generic(&self, args: &[&Elem]) -> Elem {
        let base = mc_algebra(self.split);
        let max_n = args.iter().map(|a| Self::n_of(a)).max().unwrap_or(0).max(0) as usize;
        let tw = Twisted {
            base: &base,
            alpha: Shifted { degree: 0, x: self.pi.clone(), a: self.t.clone() },
            max_extra: max_n + 3,
        };
        tw.bracket(args)
    }

    /// Weak filtration guard: `T` squares to zero on `g ⊕ V`, and for
    /// `k ≥ 3` the bracket has no `s⁻¹L'` part and lies in
    /// `⊕_{l ≥ k−1} Hom(∧^l V, g)`.
    pub fn filtration_guard(&self, args: &[&Elem]) -> bool {
        let t_sq = crate::nrcore::compose(&self.t, &self.t).is_zero();
        if args.len() < 3 {
            return t_sq;
        }
        let Ok(v) = self.closed(args) else { return false };
        let in_h = v.a.bidegrees().iter().all(|&(k, l)| k == -1 && l >= args.len() as i32 - 1);
        t_sq && v.x.is_zero() && in_h
    }
}

impl Linfty for TwistedLinfty {
    type Elem = Elem;
    fn zero(&self, degree: i32) -> Elem {
        Shifted {
            degree,
            x: Cochain::zero_of_degree(self.split, degree + 1),
            a: Cochain::zero_of_degree(self.split, degree),
        }
    }
    fn bracket(&self, args: &[&Elem]) -> Elem {
        self.closed(args).unwrap_or_else(|_| self.zero(args.iter().map(|a| a.degree).sum::<i32>() + 1))
    }
}

/// `𝒟(f, θ) = (−1)^{n−2} l_1(s⁻¹f, θ)`.
pub fn big_d_via_l1(tw: &TwistedLinfty, f: &Cochain, theta: &Cochain) -> (Cochain, Cochain) {
    let e = tw.element(f.clone(), theta.clone());
    let n = e.degree as i64 + 2;
    let v = tw.closed(&[&e]).expect("l_1 is always available");
    let s = sign_scalar(n - 2);
    (v.x.scale(&s), v.a.scale(&s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictExtensionReport {
    /// `l_k(ιθ_1..ιθ_k)` lies in the image of `ι` for every sampled `k`.
    pub iota_closed: bool,
    /// On `h` the restricted brackets are `l_1 = [[π,T],·]`,
    /// `l_2(θ₁,θ₂) = [[π,θ₁],θ₂]` and `l_k = 0` for `k ≥ 3`.
    pub iota_brackets: bool,
    /// `p ∘ l_k` depends only on the `s⁻¹L'` parts and equals `−s⁻¹[π,·]`,
    /// `(−1)^{n₁−1}s⁻¹[f₁,f₂]`, `0` for `k = 1, 2, ≥ 3`.
    pub p_intertwines: bool,
    pub p_iota_zero: bool,
}

impl StrictExtensionReport {
    pub fn ok(&self) -> bool {
        self.iota_closed && self.iota_brackets && self.p_intertwines && self.p_iota_zero
    }
}

/// Checks the strict extension `0 → h → s⁻¹L' ⊕ h → s⁻¹L' → 0` on the
/// sampled elements (all brackets up to the truncation arity, taken over
/// consecutive windows of the samples).
pub fn strict_extension_check(tw: &TwistedLinfty, thetas: &[Cochain], elems: &[Elem]) -> StrictExtensionReport {
    let mut rep =
        StrictExtensionReport { iota_closed: true, iota_brackets: true, p_intertwines: true, p_iota_zero: true };
    let iotas: Vec<Elem> = thetas.iter().map(|t| tw.iota(t.clone())).collect();
    for e in &iotas {
        rep.p_iota_zero &= e.x.is_zero();
    }
    for k in 1..=tw.truncation {
        for start in 0..iotas.len() {
            if start + k > iotas.len() {
                break;
            }
            let w: Vec<&Elem> = iotas[start..start + k].iter().collect();
            let v = tw.bracket(&w);
            rep.iota_closed &= v.x.is_zero();
            let expected = match k {
                1 => br(&tw.pi_t, &w[0].a),
                2 => br(&br(&tw.pi, &w[0].a), &w[1].a),
                _ => Cochain::zero_of_degree(tw.split, v.a.degree()),
            };
            rep.iota_brackets &= v.a == expected;
        }
        for start in 0..elems.len() {
            if start + k > elems.len() {
                break;
            }
            let w: Vec<&Elem> = elems[start..start + k].iter().collect();
            let stripped: Vec<Elem> = w.iter().map(|e| tw.from_f(e.x.clone())).collect();
            let sr: Vec<&Elem> = stripped.iter().collect();
            let v = tw.bracket(&w);
            let vs = tw.bracket(&sr);
            let expected = match k {
                1 => br(&tw.pi, &w[0].x).scale(&-Scalar::one()),
                2 => br(&w[0].x, &w[1].x).scale(&sign_scalar(w[0].degree as i64 + 1)),
                _ => Cochain::zero_of_degree(tw.split, v.x.degree()),
            };
            rep.p_intertwines &= v.x == vs.x && v.x == expected && in_lie_rep_part(&v.x);
        }
    }
    rep
}
