//! JSON structure files. Indices are 1-based, scalars are `"p/q"` strings.

use rbx::bialgebra::Polyvector;
use rbx::foundation::{format_scalar, parse_scalar, Matrix, Scalar};
use rbx::homotopy::{Flavor, GradedMap, GradedSpace, HomotopyRbo, LinftyAlgebra, LinftyRep, PreLieInf};
use rbx::nrcore::Cochain;
use rbx::structures::{LieAlgebra, Rbo, RelativeRbo, Representation};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(msg.into()))
}

pub type Table = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub format: u32,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<RepBlock>,
    /// `dim g × dim V`, row-major.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<PolyTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graded: Option<GradedBlock>,
}

/// Inline table or a registry reference `"@name"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum LieField {
    Ref(String),
    Inline(LieBlock),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LieBlock {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// `{"[i,j]": {"k": "c"}}` for `[e_i, e_j] ∋ c e_k`.
    pub bracket: Table,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RepBlock {
    /// `adjoint`, `coadjoint`, `trivial` or `matrices` (the default).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// One `dim V × dim V` matrix per basis vector of `g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub indices: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SpaceBlock {
    /// Degree → dimension; the basis is ordered by increasing degree.
    pub degrees: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapTerm {
    pub inputs: Vec<usize>,
    pub output: usize,
    pub coeff: String,
}

/// `ρ_k(x_1, .., x_{k−1}, v) ∋ c w`: `inputs` index `g`, `v` and `output` index `V`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RhoTerm {
    pub inputs: Vec<usize>,
    pub v: usize,
    pub output: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GradedBlock {
    pub space: SpaceBlock,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub l: Vec<MapTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<SpaceBlock>,
    /// `"adjoint"` or explicit terms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<RhoField>,
    /// `T_k: Sym^k V → g`; inputs index `V`, output indexes `g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<MapTerm>>,
    /// `𝔯_k` on the space; the last input is the distinguished slot.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prelie: Option<Vec<MapTerm>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RhoField {
    Kind(String),
    Terms(Vec<RhoTerm>),
}

/// First-order deformation: `(ω₁, ϱ₁, 𝒯₁)` for a relative operator or
/// `(ω₁, χ₁)` for a triangular Lie bialgebra.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DeformFile {
    pub format: u32,
    pub field: String,
    #[serde(default)]
    pub omega1: Table,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub varrho1: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi1: Option<Vec<PolyTerm>>,
}

impl DeformFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let f: DeformFile = serde_json::from_str(text).map_err(|e| FormatError(format!("malformed deformation file: {e}")))?;
        if f.format != FORMAT_VERSION || f.field != "rational" {
            return err("deformation file: expected format 1 over \"rational\"");
        }
        Ok(f)
    }
}

impl StructureFile {
    pub fn empty() -> Self {
        StructureFile {
            format: FORMAT_VERSION,
            field: "rational".into(),
            name: None,
            description: None,
            lie: None,
            rep: None,
            operator: None,
            r: None,
            graded: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let f: StructureFile = serde_json::from_str(text).map_err(|e| FormatError(format!("malformed structure file: {e}")))?;
        if f.format != FORMAT_VERSION {
            return err(format!("unsupported format version {}", f.format));
        }
        if f.field != "rational" {
            return err(format!("unsupported field {:?}; only \"rational\" is available", f.field));
        }
        Ok(f)
    }

    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }
}

// ---------------------------------------------------------------- parsing

fn scalar(s: &str, at: &str) -> Result<Scalar, FormatError> {
    parse_scalar(s).map_err(|_| FormatError(format!("{at}: {s:?} is not a rational \"p/q\"")))
}

fn index(i: usize, dim: usize, at: &str) -> Result<usize, FormatError> {
    if i == 0 || i > dim {
        return err(format!("{at}: index {i} outside 1..={dim}"));
    }
    Ok(i - 1)
}

fn bracket_key(k: &str) -> Result<(usize, usize), FormatError> {
    let inner = k.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']'));
    let parts: Option<Vec<usize>> = inner.map(|s| s.split(',').map(|p| p.trim().parse().ok()).collect()).unwrap_or(None);
    match parts.as_deref() {
        Some([i, j]) => Ok((*i, *j)),
        _ => err(format!("bracket key {k:?} is not of the form \"[i,j]\"")),
    }
}

pub fn matrix(rows: &[Vec<String>], nr: usize, nc: usize, at: &str) -> Result<Matrix, FormatError> {
    if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
        return err(format!("{at}: expected a {nr}×{nc} matrix"));
    }
    let mut data = Vec::with_capacity(nr);
    for (i, r) in rows.iter().enumerate() {
        data.push(r.iter().enumerate().map(|(j, x)| scalar(x, &format!("{at}[{}][{}]", i + 1, j + 1))).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(Matrix::from_dense(nr, nc, &data))
}

pub fn lie_from_table(dim: usize, labels: Option<&Vec<String>>, bracket: &Table, at: &str) -> Result<LieAlgebra, FormatError> {
    let mut entries = Vec::new();
    for (k, out) in bracket {
        let (i, j) = bracket_key(k)?;
        let here = format!("{at}.bracket[{k}]");
        let (i, j) = (index(i, dim, &here)?, index(j, dim, &here)?);
        for (o, c) in out {
            let ko: usize = o.trim().parse().map_err(|_| FormatError(format!("{here}: output {o:?} is not an index")))?;
            entries.push((i, j, index(ko, dim, &here)?, scalar(c, &here)?));
        }
    }
    let lie = LieAlgebra::from_constants(dim, &entries).map_err(|e| FormatError(format!("{at}: {e}")))?;
    match labels {
        Some(l) => lie.with_labels(l.clone()).map_err(|e| FormatError(format!("{at}.labels: {e}"))),
        None => Ok(lie),
    }
}

/// Resolves `"@name"` references through `lookup`.
pub struct Loader<'a> {
    pub lookup: &'a dyn Fn(&str) -> Option<StructureFile>,
}

impl Loader<'_> {
    pub fn resolve(&self, name: &str) -> Result<StructureFile, FormatError> {
        let key = name.strip_prefix('@').ok_or_else(|| FormatError(format!("reference {name:?} must start with '@'")))?;
        (self.lookup)(key).ok_or_else(|| FormatError(format!("unknown registry entry {key:?}")))
    }

    pub fn lie(&self, f: &StructureFile) -> Result<LieAlgebra, FormatError> {
        match &f.lie {
            None => err("the file has no \"lie\" block"),
            Some(LieField::Inline(b)) => lie_from_table(b.dim, b.labels.as_ref(), &b.bracket, "lie"),
            Some(LieField::Ref(name)) => {
                let target = self.resolve(name)?;
                if matches!(target.lie, Some(LieField::Ref(_))) {
                    return err(format!("{name}: nested references are not followed"));
                }
                self.lie(&target)
            }
        }
    }

    pub fn rep(&self, f: &StructureFile) -> Result<Representation, FormatError> {
        let lie = self.lie(f)?;
        let Some(b) = &f.rep else { return err("the file has no \"rep\" block") };
        let rep = match b.kind.as_deref().unwrap_or("matrices") {
            "adjoint" => Representation::adjoint(lie),
            "coadjoint" => Representation::coadjoint(lie),
            "trivial" => Representation::trivial(lie, b.dim.ok_or_else(|| FormatError("rep: trivial representation needs \"dim\"".into()))?),
            "matrices" => {
                let ms = b.matrices.as_ref().ok_or_else(|| FormatError("rep: missing \"matrices\"".into()))?;
                let dv = b.dim.or_else(|| ms.first().map(Vec::len)).unwrap_or(0);
                if ms.len() != lie.dim() {
                    return err(format!("rep.matrices: expected {} matrices, one per basis vector of g", lie.dim()));
                }
                let rho = ms.iter().enumerate().map(|(i, m)| matrix(m, dv, dv, &format!("rep.matrices[{}]", i + 1))).collect::<Result<Vec<_>, _>>()?;
                Representation::new(lie, dv, rho).map_err(|e| FormatError(format!("rep: {e}")))?
            }
            other => return err(format!("rep.kind: unknown kind {other:?}")),
        };
        match &b.labels {
            Some(l) => rep.with_labels(l.clone()).map_err(|e| FormatError(format!("rep.labels: {e}"))),
            None => Ok(rep),
        }
    }

    fn operator_matrix(&self, f: &StructureFile, dg: usize, dv: usize) -> Result<Matrix, FormatError> {
        let rows = f.operator.as_ref().ok_or_else(|| FormatError("the file has no \"operator\" block".into()))?;
        matrix(rows, dg, dv, "operator")
    }

    /// Unverified relative operator; a missing `rep` block means the adjoint representation.
    pub fn relative(&self, f: &StructureFile) -> Result<RelativeRbo, FormatError> {
        let rep = if f.rep.is_some() { self.rep(f)? } else { Representation::adjoint(self.lie(f)?) };
        let t = self.operator_matrix(f, rep.lie().dim(), rep.dim_v())?;
        RelativeRbo::raw(rep, t).map_err(|e| FormatError(format!("operator: {e}")))
    }

    /// Unverified operator on `g` itself; only the adjoint representation is allowed.
    pub fn rbo(&self, f: &StructureFile) -> Result<Rbo, FormatError> {
        let lie = self.lie(f)?;
        if let Some(b) = &f.rep {
            if b.kind.as_deref() != Some("adjoint") {
                return err("rep: a Rota-Baxter operator acts through the adjoint representation");
            }
        }
        let t = self.operator_matrix(f, lie.dim(), lie.dim())?;
        Rbo::raw(lie, t).map_err(|e| FormatError(format!("operator: {e}")))
    }

    pub fn polyvector(&self, f: &StructureFile, dim: usize) -> Result<Polyvector, FormatError> {
        let terms = f.r.as_ref().ok_or_else(|| FormatError("the file has no \"r\" block".into()))?;
        polyvector(terms, dim, "r")
    }
}

pub fn polyvector(terms: &[PolyTerm], dim: usize, at: &str) -> Result<Polyvector, FormatError> {
    let degree = terms.first().map(|t| t.indices.len()).unwrap_or(2);
    let mut out = Vec::with_capacity(terms.len());
    for (n, t) in terms.iter().enumerate() {
        let here = format!("{at}[{}]", n + 1);
        if t.indices.len() != degree {
            return err(format!("{here}: all terms must have {degree} indices"));
        }
        let idx = t.indices.iter().map(|&i| index(i, dim, &here)).collect::<Result<Vec<_>, _>>()?;
        out.push((idx, scalar(&t.coeff, &here)?));
    }
    Ok(Polyvector::from_terms(dim, degree, &out))
}

pub fn space(b: &SpaceBlock, at: &str) -> Result<Arc<GradedSpace>, FormatError> {
    let mut dims = BTreeMap::new();
    for (d, n) in &b.degrees {
        let deg: i32 = d.trim().parse().map_err(|_| FormatError(format!("{at}.degrees: {d:?} is not an integer degree")))?;
        dims.insert(deg, *n);
    }
    let s = GradedSpace::from_dims(&dims);
    match &b.labels {
        Some(l) => GradedSpace::new(s.degrees().to_vec(), l.clone()).map(Arc::new).map_err(|e| FormatError(format!("{at}.labels: {e}"))),
        None => Ok(Arc::new(s)),
    }
}

fn add_terms(m: &mut GradedMap, terms: &[MapTerm], in_dim: usize, in_offset: usize, out_dim: usize, at: &str) -> Result<(), FormatError> {
    for (n, t) in terms.iter().enumerate() {
        let here = format!("{at}[{}]", n + 1);
        let idx = t.inputs.iter().map(|&i| index(i, in_dim, &here).map(|i| i + in_offset)).collect::<Result<Vec<_>, _>>()?;
        let o = index(t.output, out_dim, &here)?;
        m.add_term(&idx, o, &scalar(&t.coeff, &here)?).map_err(|e| FormatError(format!("{here}: {e}")))?;
    }
    Ok(())
}

impl GradedBlock {
    fn space(&self) -> Result<Arc<GradedSpace>, FormatError> {
        space(&self.space, "graded.space")
    }

    pub fn linfty(&self) -> Result<LinftyAlgebra, FormatError> {
        let s = self.space()?;
        let mut l = GradedMap::zero(s.clone(), Flavor::SymToSelf, 1);
        add_terms(&mut l, &self.l, s.dim(), 0, s.dim(), "graded.l")?;
        LinftyAlgebra::new(l).map_err(|e| FormatError(format!("graded.l: {e}")))
    }

    pub fn rep(&self) -> Result<LinftyRep, FormatError> {
        let alg = self.linfty()?;
        match &self.rho {
            Some(RhoField::Kind(k)) if k == "adjoint" => Ok(LinftyRep::adjoint(&alg)),
            Some(RhoField::Kind(k)) => err(format!("graded.rho: unknown kind {k:?}")),
            Some(RhoField::Terms(terms)) => {
                let v = space(self.v.as_ref().ok_or_else(|| FormatError("graded: \"rho\" needs a \"v\" space".into()))?, "graded.v")?;
                let g = alg.space().dim();
                let w = Arc::new(alg.space().direct_sum(&v));
                let mut rho = GradedMap::zero(w, Flavor::SymToSelf, 1);
                for (n, t) in terms.iter().enumerate() {
                    let here = format!("graded.rho[{}]", n + 1);
                    let mut idx = t.inputs.iter().map(|&i| index(i, g, &here)).collect::<Result<Vec<_>, _>>()?;
                    idx.push(g + index(t.v, v.dim(), &here)?);
                    let o = g + index(t.output, v.dim(), &here)?;
                    rho.add_term(&idx, o, &scalar(&t.coeff, &here)?).map_err(|e| FormatError(format!("{here}: {e}")))?;
                }
                LinftyRep::new(alg, v, rho).map_err(|e| FormatError(format!("graded.rho: {e}")))
            }
            None => err("graded: no \"rho\" block"),
        }
    }

    pub fn homotopy_rbo(&self) -> Result<HomotopyRbo, FormatError> {
        let rep = self.rep()?;
        let terms = self.t.as_ref().ok_or_else(|| FormatError("graded: no \"t\" block".into()))?;
        let g = rep.g_dim();
        let mut t = GradedMap::zero(rep.w_space().clone(), Flavor::SymToG { g_dim: g }, 0);
        add_terms(&mut t, terms, rep.v_space().dim(), g, g, "graded.t")?;
        HomotopyRbo::new(rep, t).map_err(|e| FormatError(format!("graded.t: {e}")))
    }

    pub fn prelie(&self) -> Result<PreLieInf, FormatError> {
        let s = self.space()?;
        let terms = self.prelie.as_ref().ok_or_else(|| FormatError("graded: no \"prelie\" block".into()))?;
        let mut r = GradedMap::zero(s.clone(), Flavor::SymTensorToSelf, 1);
        add_terms(&mut r, terms, s.dim(), 0, s.dim(), "graded.prelie")?;
        PreLieInf::raw(r).map_err(|e| FormatError(format!("graded.prelie: {e}")))
    }
}

// ---------------------------------------------------------------- emission

pub fn rows(m: &Matrix) -> Vec<Vec<String>> {
    m.to_dense().iter().map(|r| r.iter().map(format_scalar).collect()).collect()
}

pub fn lie_block(lie: &LieAlgebra) -> LieBlock {
    let mut bracket = Table::new();
    for (idx, o, c) in lie.mu().nonzero() {
        bracket.entry(format!("[{},{}]", idx[0] + 1, idx[1] + 1)).or_default().insert((o + 1).to_string(), format_scalar(&c));
    }
    LieBlock { dim: lie.dim(), labels: Some(lie.labels().to_vec()), bracket }
}

pub fn rep_block(rep: &Representation) -> RepBlock {
    if *rep == Representation::adjoint(rep.lie().clone()) {
        return RepBlock { kind: Some("adjoint".into()), dim: None, labels: None, matrices: None };
    }
    RepBlock {
        kind: None,
        dim: Some(rep.dim_v()),
        labels: Some(rep.labels_v().to_vec()),
        matrices: Some(rep.rho().iter().map(rows).collect()),
    }
}

pub fn poly_terms(p: &Polyvector) -> Vec<PolyTerm> {
    p.terms().into_iter().map(|t| PolyTerm { indices: t.indices.iter().map(|i| i + 1).collect(), coeff: format_scalar(&t.coeff) }).collect()
}

pub fn space_block(s: &GradedSpace) -> SpaceBlock {
    SpaceBlock { degrees: s.dims().into_iter().map(|(d, n)| (d.to_string(), n)).collect(), labels: Some(s.labels().to_vec()) }
}

/// Terms of `m` with inputs shifted down by `in_offset`.
pub fn map_terms(m: &GradedMap, in_offset: usize) -> Vec<MapTerm> {
    let mut out = Vec::new();
    for (key, val) in m.entries() {
        for (o, c) in val.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.push(MapTerm { inputs: key.iter().map(|i| i - in_offset + 1).collect(), output: o + 1, coeff: format_scalar(c) });
        }
    }
    out
}

pub fn rho_field(rep: &LinftyRep) -> RhoField {
    if *rep == LinftyRep::adjoint(rep.alg()) {
        return RhoField::Kind("adjoint".into());
    }
    let g = rep.g_dim();
    let mut out = Vec::new();
    for (key, val) in rep.rho().entries() {
        let (v, xs) = key.split_last().expect("nonempty key");
        for (o, c) in val.iter().enumerate().filter(|(o, c)| *o >= g && !c.is_zero()) {
            out.push(RhoTerm { inputs: xs.iter().map(|i| i + 1).collect(), v: v - g + 1, output: o - g + 1, coeff: format_scalar(c) });
        }
    }
    RhoField::Terms(out)
}

/// Graded block for an L∞-algebra, optionally with a representation and operator.
pub fn graded_block(alg: &LinftyAlgebra, op: Option<&HomotopyRbo>) -> GradedBlock {
    let mut b = GradedBlock { space: space_block(alg.space()), l: map_terms(alg.structure(), 0), v: None, rho: None, t: None, prelie: None };
    if let Some(op) = op {
        let rep = op.rep();
        b.rho = Some(rho_field(rep));
        if !matches!(b.rho, Some(RhoField::Kind(_))) {
            b.v = Some(space_block(rep.v_space()));
        }
        b.t = Some(map_terms(op.t(), rep.g_dim()));
    }
    b
}

pub fn prelie_block(p: &PreLieInf) -> GradedBlock {
    GradedBlock { space: space_block(p.space()), l: vec![], v: None, rho: None, t: None, prelie: Some(map_terms(p.structure(), 0)) }
}

/// Cochain of arity 2 on `g` from a bracket-style table.
pub fn cochain2(dim: usize, table: &Table, at: &str) -> Result<Cochain, FormatError> {
    let lie = lie_from_table(dim, None, table, at)?;
    Ok(lie.mu().clone())
}
