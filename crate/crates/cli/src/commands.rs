use crate::format::{cochain2, matrix, polyvector, DeformFile, FormatError, Loader, StructureFile};
use crate::registry;
use crate::report::{scalars, Cell, Check, Report, Table};
use rbx::bialgebra::{cybe_check, les_triangular, tlb_deform, tlb_equivalent, tlb_verify_equivalence, TlbDeformation, TriangularBialgebra};
use rbx::cohomology::{build_complex, cohomology, les_relative, les_rota_baxter, ComplexKind, LesReport, Structure};
use rbx::deformation::{classify, deformation_axioms, equivalent, is_two_cocycle, verify_equivalence, InfinitesimalDeformation};
use rbx::foundation::{format_scalar, Matrix, Strategy};
use rbx::homotopy::dict::{desuspend_lie, desuspend_rbo};
use rbx::homotopy::{phi, prelie::prelie_checks, strict_rbo_to_prelie, verify_homotopy_rbo, verify_linfty, GradedMap, HomotopyRbo, LinftyAlgebra};
use rbx::structures::{mc_check, prelie_from_rbo, LieAlgebra, RelativeRbo};

/// Input or usage problem (exit code 2).
#[derive(Debug)]
pub struct InputError(pub String);

impl From<FormatError> for InputError {
    fn from(e: FormatError) -> Self {
        InputError(e.0)
    }
}

type Res<T> = Result<T, InputError>;

fn input<T>(msg: impl Into<String>) -> Res<T> {
    Err(InputError(msg.into()))
}

pub fn load(path: &str) -> Res<StructureFile> {
    if path.starts_with('@') {
        return Ok(loader().resolve(path)?);
    }
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
    StructureFile::parse(&text).map_err(|e| InputError(format!("{path}: {e}")))
}

pub fn loader() -> Loader<'static> {
    Loader { lookup: &registry::lookup }
}

// ---------------------------------------------------------------- verify

pub fn verify(kind: &str, f: &StructureFile, p_max: Option<usize>, rep: &mut Report) -> Res<()> {
    let ld = loader();
    match kind {
        "lie" => rep.check((&ld.lie(f)?.verify()).into()),
        "rep" => {
            let r = ld.rep(f)?;
            rep.check((&r.lie().verify()).into());
            rep.check((&r.verify()).into());
        }
        "rbo" => {
            let op = ld.rbo(f)?;
            rep.check((&op.lie().verify()).into());
            rep.check((&op.verify()).into());
        }
        "rrb" => {
            let op = ld.relative(f)?;
            rep.check((&op.lie().verify()).into());
            rep.check((&op.rep().verify()).into());
            let direct = op.verify();
            rep.check((&direct).into());
            let mc = mc_check(&op);
            let mut c = Check::new("Maurer-Cartan condition in the controlling algebra", mc.ok());
            c.routes_agree = Some(mc.ok() == (direct.ok && op.lie().verify().ok && op.rep().verify().ok) && mc.matches_closed_form);
            c.ok &= c.routes_agree == Some(true);
            rep.check(c);
        }
        "cybe" => {
            let lie = ld.lie(f)?;
            let r = ld.polyvector(f, lie.dim())?;
            rep.check((&lie.verify()).into());
            let c = cybe_check(&lie, &r).map_err(|e| InputError(format!("r: {e}")))?;
            let mut check = Check::new("classical Yang-Baxter equation [r,r] = 0", c.ok && c.routes_agree);
            check.routes_agree = Some(c.routes_agree);
            rep.check(check);
            let mut t = Table::new("[r,r]", &["indices", "coeff"]);
            for term in c.bracket.terms() {
                t.push(vec![indices(&term.indices).into(), (&term.coeff).into()]);
            }
            rep.table(t);
        }
        "linf" => {
            let alg = linfty_of(f)?;
            rep.check((&verify_linfty(&alg)).into());
            rep.table(map_table("brackets", alg.structure(), alg.space().labels(), 0));
        }
        "hrbo" => {
            let op = homotopy_rbo_of(f)?;
            let r = verify_homotopy_rbo(&op, p_max).map_err(|e| InputError(e.to_string()))?;
            let mut c: Check = (&r.report).into();
            c.name = format!("{} (weights 1..={})", c.name, r.p_max);
            rep.check(c);
        }
        other => return input(format!("unknown verify kind {other:?}")),
    }
    Ok(())
}

fn linfty_of(f: &StructureFile) -> Res<LinftyAlgebra> {
    match &f.graded {
        Some(g) => Ok(g.linfty()?),
        None => Ok(desuspend_lie(&loader().lie(f)?)),
    }
}

fn homotopy_rbo_of(f: &StructureFile) -> Res<HomotopyRbo> {
    match &f.graded {
        Some(g) => Ok(g.homotopy_rbo()?),
        None => {
            let op = loader().relative(f)?;
            if !op.lie().verify().ok || !op.rep().verify().ok {
                return input("the classical data is not a Lie algebra with a representation");
            }
            Ok(desuspend_rbo(&op))
        }
    }
}

fn indices(v: &[usize]) -> String {
    format!("[{}]", v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
}

fn map_table(title: &str, m: &GradedMap, labels: &[String], offset: usize) -> Table {
    let mut t = Table::new(title, &["inputs", "output", "coeff"]);
    for (key, val) in m.entries() {
        for (o, c) in val.iter().enumerate().filter(|(_, c)| format_scalar(c) != "0") {
            let ins: Vec<&str> = key.iter().map(|&i| labels[i - offset].as_str()).collect();
            t.push(vec![format!("({})", ins.join(", ")).into(), labels[o].clone().into(), c.into()]);
        }
    }
    t
}

// ---------------------------------------------------------------- cohomology

fn verified_relative(op: RelativeRbo) -> Result<RelativeRbo, Check> {
    match RelativeRbo::new(op.rep().clone(), op.t().clone()) {
        Ok(v) => Ok(v),
        Err(_) => Err((&op.verify()).into()),
    }
}

fn structure_for(kind: ComplexKind, f: &StructureFile) -> Res<Result<Structure, Check>> {
    let ld = loader();
    let lie_ok = |l: &LieAlgebra| -> Result<LieAlgebra, Check> { l.clone().verified().map_err(|_| (&l.verify()).into()) };
    Ok(match kind {
        ComplexKind::Ce | ComplexKind::CeReduced => lie_ok(&ld.lie(f)?).map(Structure::Lie),
        ComplexKind::LieRepPair => {
            let r = if f.rep.is_some() { ld.rep(f)? } else { rbx::structures::Representation::adjoint(ld.lie(f)?) };
            r.clone().verified().map(Structure::LieRep).map_err(|_| (&r.verify()).into())
        }
        ComplexKind::OOperator | ComplexKind::RelativeRb => verified_relative(ld.relative(f)?).map(Structure::Relative),
        ComplexKind::RotaBaxter => {
            let r = ld.rbo(f)?;
            rbx::structures::Rbo::new(r.lie().clone(), r.t().clone()).map(Structure::RotaBaxter).map_err(|_| (&r.verify()).into())
        }
        ComplexKind::RMatrix | ComplexKind::Triangular => triangular(f)?.map(Structure::Triangular),
    })
}

fn triangular(f: &StructureFile) -> Res<Result<TriangularBialgebra, Check>> {
    let ld = loader();
    let lie = ld.lie(f)?;
    let r = ld.polyvector(f, lie.dim())?;
    if !lie.verify().ok {
        return Ok(Err((&lie.verify()).into()));
    }
    let c = cybe_check(&lie, &r).map_err(|e| InputError(format!("r: {e}")))?;
    if !c.ok {
        return Ok(Err(Check::new("classical Yang-Baxter equation [r,r] = 0", false)));
    }
    Ok(Ok(TriangularBialgebra::new(lie, r).map_err(|e| InputError(format!("r: {e}")))?))
}

pub fn complex_kind(name: &str) -> Option<ComplexKind> {
    Some(match name {
        "ce" => ComplexKind::Ce,
        "lierep" => ComplexKind::LieRepPair,
        "oop" => ComplexKind::OOperator,
        "rrb" => ComplexKind::RelativeRb,
        "rb" => ComplexKind::RotaBaxter,
        "tlb" => ComplexKind::Triangular,
        _ => return None,
    })
}

pub fn cohomology_cmd(kind: &str, f: &StructureFile, degrees: std::ops::RangeInclusive<usize>, rep: &mut Report) -> Res<()> {
    let k = complex_kind(kind).ok_or_else(|| InputError(format!("unknown complex {kind:?}")))?;
    let s = match structure_for(k, f)? {
        Ok(s) => s,
        Err(c) => {
            rep.check(c);
            return Ok(());
        }
    };
    let c = build_complex(k, &s).map_err(|e| InputError(e.to_string()))?;
    let mut t = Table::new(&format!("cohomology of the {} complex", c.name()), &["degree", "cochains", "rank in", "rank out", "betti"]);
    let mut d2 = true;
    for n in degrees {
        let r = cohomology(c.as_ref(), n, Strategy::default());
        d2 &= r.d_squared_zero;
        t.push(vec![n.into(), r.cochain_dim.into(), r.rank_in.into(), r.rank_out.into(), r.betti.into()]);
    }
    rep.check(Check::new("d^2 = 0", d2));
    rep.table(t);
    Ok(())
}

pub fn les_cmd(kind: &str, f: &StructureFile, max_degree: usize, rep: &mut Report) -> Res<()> {
    let r: LesReport = match kind {
        "rrb" => match verified_relative(loader().relative(f)?) {
            Ok(op) => les_relative(&op, max_degree, Strategy::default()),
            Err(c) => {
                rep.check(c);
                return Ok(());
            }
        },
        "rb" => {
            let r = loader().rbo(f)?;
            match rbx::structures::Rbo::new(r.lie().clone(), r.t().clone()) {
                Ok(r) => les_rota_baxter(&r, max_degree, Strategy::default()),
                Err(_) => {
                rep.check((&r.verify()).into());
                return Ok(());
            }
            }
        }
        "tlb" => match triangular(f)? {
            Ok(t) => les_triangular(&t, max_degree, Strategy::default()),
            Err(c) => {
                rep.check(c);
                return Ok(());
            }
        },
        other => return input(format!("unknown long exact sequence {other:?}")),
    };
    rep.check(Check::new("exact at every node", r.exact()));
    rep.check(Check::new("connecting map: closed formula = snake construction", r.connecting_agrees));
    rep.check(Check::new("d^2 = 0", r.d_squared_zero));
    let mut t = Table::new("long exact sequence", &["node", "dim", "rank in", "rank out", "composite zero", "exact"]);
    for n in &r.nodes {
        t.push(vec![n.node.clone().into(), n.dim.into(), n.rank_in.into(), n.rank_out.into(), n.composite_zero.into(), n.exact.into()]);
    }
    rep.table(t);
    Ok(())
}

// ---------------------------------------------------------------- deform

enum Base {
    Relative(RelativeRbo),
    Triangular(TriangularBialgebra),
}

enum Deformation {
    Relative(InfinitesimalDeformation),
    Triangular(TlbDeformation),
}

fn base_of(f: &StructureFile, rep: &mut Report) -> Res<Option<Base>> {
    if f.r.is_some() {
        return Ok(match triangular(f)? {
            Ok(t) => Some(Base::Triangular(t)),
            Err(c) => {
                rep.check(c);
                None
            }
        });
    }
    Ok(match verified_relative(loader().relative(f)?) {
        Ok(op) => Some(Base::Relative(op)),
        Err(c) => {
            rep.check(c);
            None
        }
    })
}

fn read_deformation(base: &Base, path: &str) -> Res<Deformation> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
    let d = DeformFile::parse(&text).map_err(|e| InputError(format!("{path}: {e}")))?;
    let at = |e: FormatError| InputError(format!("{path}: {e}"));
    match base {
        Base::Relative(op) => {
            let (dg, dv) = (op.lie().dim(), op.rep().dim_v());
            let omega1 = cochain2(dg, &d.omega1, "omega1").map_err(at)?;
            let varrho1 = match &d.varrho1 {
                None => vec![Matrix::zeros(dv, dv); dg],
                Some(ms) if ms.len() == dg => ms.iter().enumerate().map(|(i, m)| matrix(m, dv, dv, &format!("varrho1[{}]", i + 1))).collect::<Result<_, _>>().map_err(at)?,
                Some(_) => return input(format!("{path}: varrho1 needs {dg} matrices")),
            };
            let t1 = match &d.t1 {
                None => Matrix::zeros(dg, dv),
                Some(m) => matrix(m, dg, dv, "t1").map_err(at)?,
            };
            Ok(Deformation::Relative(InfinitesimalDeformation { omega1, varrho1, t1 }))
        }
        Base::Triangular(t) => {
            let dim = t.lie().dim();
            let omega1 = cochain2(dim, &d.omega1, "omega1").map_err(at)?;
            let chi1 = match &d.chi1 {
                None => rbx::bialgebra::Polyvector::zero(dim, 2),
                Some(terms) if terms.is_empty() => rbx::bialgebra::Polyvector::zero(dim, 2),
                Some(terms) => polyvector(terms, dim, "chi1").map_err(at)?,
            };
            if chi1.degree() != 2 {
                return input(format!("{path}: chi1 must be a bivector"));
            }
            Ok(Deformation::Triangular(TlbDeformation { omega1, chi1 }))
        }
    }
}

pub fn deform_cmd(action: &str, f: &StructureFile, paths: &[String], rep: &mut Report) -> Res<()> {
    let Some(base) = base_of(f, rep)? else { return Ok(()) };
    let ds = paths.iter().map(|p| read_deformation(&base, p)).collect::<Res<Vec<_>>>()?;
    match action {
        "check" => {
            for (p, d) in paths.iter().zip(&ds) {
                match (&base, d) {
                    (Base::Relative(op), Deformation::Relative(d)) => {
                        let co = is_two_cocycle(op, d);
                        let ax = deformation_axioms(op, d);
                        let mut c = Check::new(format!("{p}: 2-cocycle"), co.ok && co.ok == ax.ok());
                        c.routes_agree = Some(co.ok == ax.ok());
                        if let Some(w) = ax.witness {
                            c.witness = Some(crate::report::Witness { inputs: vec![w], defect: vec![] });
                        }
                        rep.check(c);
                    }
                    (Base::Triangular(t), Deformation::Triangular(d)) => {
                        let r = tlb_deform(t, d);
                        let mut c = Check::new(format!("{p}: 2-cocycle"), r.cocycle && r.agree());
                        c.routes_agree = Some(r.agree());
                        rep.check(c);
                    }
                    _ => unreachable!("deformations are read against their base"),
                }
            }
        }
        "equiv" => {
            if ds.len() < 2 {
                return input("deform equiv needs at least two deformation files");
            }
            match &base {
                Base::Relative(op) => relative_equiv(op, paths, &ds, rep),
                Base::Triangular(t) => triangular_equiv(t, paths, &ds, rep),
            }
        }
        other => return input(format!("unknown deform action {other:?}")),
    }
    Ok(())
}

fn matrix_cell(m: &Matrix) -> Cell {
    let rows: Vec<String> = m.to_dense().iter().map(|r| format!("[{}]", scalars(r).join(", "))).collect();
    Cell::Text(format!("[{}]", rows.join(", ")))
}

fn relative_equiv(op: &RelativeRbo, paths: &[String], ds: &[Deformation], rep: &mut Report) {
    let ds: Vec<&InfinitesimalDeformation> = ds.iter().map(|d| if let Deformation::Relative(d) = d { d } else { unreachable!() }).collect();
    let mut ok_inputs = true;
    for (p, d) in paths.iter().zip(&ds) {
        let co = is_two_cocycle(op, d);
        ok_inputs &= co.ok;
        rep.check(Check::new(format!("{p}: 2-cocycle"), co.ok));
    }
    if !ok_inputs {
        return;
    }
    let owned: Vec<InfinitesimalDeformation> = ds.iter().map(|d| (*d).clone()).collect();
    let cl = match classify(op, &owned) {
        Ok(c) => c,
        Err(e) => return rep.check(Check::new(format!("classification: {e}"), false)),
    };
    let mut t = Table::new("classes in H^2", &["input", "class", "coordinates"]);
    for (i, p) in paths.iter().enumerate() {
        t.push(vec![p.as_str().into(), (cl.class_of[i] + 1).into(), format!("({})", scalars(&cl.class_coordinates[cl.class_of[i]]).join(", ")).into()]);
    }
    rep.table(t);
    let mut w = Table::new("equivalences (phi = id + tN, psi = id + tS)", &["from", "to", "N", "S", "verified"]);
    let mut all = true;
    for j in 1..ds.len() {
        let found = equivalent(op, ds[0], ds[j]);
        let same = cl.class_of[0] == cl.class_of[j];
        if found.is_some() != same {
            all = false;
        }
        if let Some(e) = found {
            let v = verify_equivalence(op, ds[0], ds[j], &e);
            all &= v;
            w.push(vec![paths[0].as_str().into(), paths[j].as_str().into(), matrix_cell(&e.n), matrix_cell(&e.s), v.into()]);
        }
    }
    rep.table(w);
    rep.check(Check::new("witnesses agree with the classification and verify by substitution", all));
    if ds.len() == 2 {
        rep.check(Check::new("the two deformations are equivalent", cl.classes == 1));
    }
}

fn triangular_equiv(tb: &TriangularBialgebra, paths: &[String], ds: &[Deformation], rep: &mut Report) {
    let ds: Vec<&TlbDeformation> = ds.iter().map(|d| if let Deformation::Triangular(d) = d { d } else { unreachable!() }).collect();
    let mut w = Table::new("equivalences (phi = id + tN)", &["from", "to", "N", "verified"]);
    let mut equal = true;
    let mut all = true;
    for j in 1..ds.len() {
        match tlb_equivalent(tb, ds[0], ds[j]) {
            Some(n) => {
                let v = tlb_verify_equivalence(tb, ds[0], ds[j], &n);
                all &= v;
                w.push(vec![paths[0].as_str().into(), paths[j].as_str().into(), matrix_cell(&n), v.into()]);
            }
            None => equal = false,
        }
    }
    rep.table(w);
    rep.check(Check::new("witnesses verify by substitution", all));
    rep.check(Check::new(format!("all deformations equivalent to {}", paths[0]), equal));
}

// ---------------------------------------------------------------- pre-Lie

pub fn prelie_cmd(kind: &str, f: &StructureFile, rep: &mut Report) -> Res<()> {
    let graded_prelie = f.graded.as_ref().is_some_and(|g| g.prelie.is_some());
    match (kind, graded_prelie) {
        ("from-rbo", _) if f.graded.as_ref().is_some_and(|g| g.t.is_some()) => {
            let op = f.graded.as_ref().expect("checked").homotopy_rbo()?;
            match strict_rbo_to_prelie(&op) {
                Ok(p) => {
                    rep.check(Check::new("induced pre-Lie-infinity structure", true));
                    rep.table(map_table("products r_k", p.structure(), p.space().labels(), 0));
                }
                Err(e) => rep.check(Check::new(format!("induced pre-Lie-infinity structure: {e}"), false)),
            }
        }
        ("from-rbo" | "subadjacent", false) => {
            let op = loader().relative(f)?;
            let op = match verified_relative(op) {
                Ok(op) => op,
                Err(c) => {
                rep.check(c);
                return Ok(());
            }
            };
            let p = prelie_from_rbo(&op).map_err(|e| InputError(e.to_string()))?;
            rep.check((&p.verify()).into());
            let labels = op.rep().labels_v().to_vec();
            if kind == "from-rbo" {
                let mut t = Table::new("u > v = rho(Tu)v", &["u", "v", "u > v"]);
                for a in 0..p.dim {
                    for b in 0..p.dim {
                        t.push(vec![labels[a].as_str().into(), labels[b].as_str().into(), vector(&p.prod[a][b], &labels).into()]);
                    }
                }
                rep.table(t);
            } else {
                let mut entries = Vec::new();
                let mut t = Table::new("[u,v]_C = u > v - v > u", &["u", "v", "[u,v]_C"]);
                for a in 0..p.dim {
                    for b in a + 1..p.dim {
                        let c = p.commutator(a, b);
                        for (k, x) in c.iter().enumerate() {
                            entries.push((a, b, k, x.clone()));
                        }
                        t.push(vec![labels[a].as_str().into(), labels[b].as_str().into(), vector(&c, &labels).into()]);
                    }
                }
                let lie = LieAlgebra::from_constants(p.dim, &entries).map_err(|e| InputError(e.to_string()))?;
                let mut c: Check = (&lie.verify()).into();
                c.name = format!("sub-adjacent bracket: {}", c.name);
                rep.check(c);
                rep.table(t);
            }
        }
        ("subadjacent" | "phi", true) => {
            let p = f.graded.as_ref().expect("checked").prelie()?;
            let v = p.verify();
            rep.check((&v).into());
            let l = phi(p.structure()).map_err(|e| InputError(e.to_string()))?;
            if kind == "phi" {
                rep.table(map_table("Phi(r)", &l, p.space().labels(), 0));
            }
            if v.ok {
                let checks = prelie_checks(&p).map_err(|e| InputError(e.to_string()))?;
                rep.check((&checks.subadjacent).into());
                if kind == "subadjacent" {
                    rep.check((&checks.left_mult).into());
                    rep.check((&checks.identity).into());
                    rep.table(map_table("sub-adjacent brackets", &l, p.space().labels(), 0));
                }
            } else {
                let alg = LinftyAlgebra::new(l).map_err(|e| InputError(e.to_string()))?;
                rep.check((&verify_linfty(&alg)).into());
            }
        }
        ("phi", false) => return input("phi needs a graded \"prelie\" block"),
        ("from-rbo", true) => return input("from-rbo needs an operator"),
        (other, _) => return input(format!("unknown prelie command {other:?}")),
    }
    Ok(())
}

fn vector(v: &[rbx::foundation::Scalar], labels: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(x, _)| format_scalar(x) != "0")
        .map(|(x, l)| match format_scalar(x).as_str() {
            "1" => l.clone(),
            "-1" => format!("-{l}"),
            s => format!("{s} {l}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

// ---------------------------------------------------------------- examples

pub fn examples_list(rep: &mut Report) {
    let mut t = Table::new("built-in examples (use as @name)", &["name", "checks", "description"]);
    for e in registry::ENTRIES {
        t.push(vec![e.name.into(), e.verify.join(",").into(), e.description.into()]);
    }
    rep.table(t);
}
