use std::sync::Arc;

use serde_json::{json, Value};

use super::{
    Check, DenisScene, GammaScene, HochschildScene, HrrScene, LefschetzScene, MultiplicityScene,
    Payload, ResidueScene, RingDecl, RunOptions, TransformScene,
};
use crate::charclass::{
    compose, denis_trace, diagonal, euler_pairing, gamma_class, gamma_identity_check, grr_check,
    hrr_check, lambda_twist_vector, local_global_bridge, mukai_pairing, mukai_vector,
    td_pairing_check, CoeffKind, CohClass, CohRing, IdempotentMatrix, ProductSpace,
    SheafDescriptor, EULER_GAMMA,
};
use crate::error::{Error, Result};
use crate::hochschild::HochschildChain;
use crate::lefschetz::{Correspondence, LefschetzContext};
use crate::polycore::linalg::{self, QMatrix};
use crate::polycore::scalar::{fmt_q, parse_q, q};
use crate::polycore::{parse_poly, parse_polys, Poly, PolyRing, Q};
use crate::residue::{ade, JacobiRing};
use crate::resolutions::{Length, ModulePresentation, ResolveOptions};
use crate::serre::{admissible, chi_via_complex_with, serre_chi_with, ConjectureStatus};

pub(super) struct Outcome {
    pub result: Value,
    pub checks: Vec<Check>,
    pub flags: Vec<String>,
}

pub(super) fn dispatch(p: &Payload, opts: &RunOptions) -> Result<Outcome> {
    match p {
        Payload::Multiplicity(s) => multiplicity(s, opts),
        Payload::Hrr(s) => hrr(s, opts),
        Payload::Gamma(s) => gamma(s, opts),
        Payload::Lefschetz(s) => lefschetz(s),
        Payload::Residue(s) => residue(s),
        Payload::Transform(s) => transform(s),
        Payload::Denis(s) => denis(s),
        Payload::Hochschild(s) => hochschild(s),
    }
}

fn poly_ring(decl: &RingDecl) -> Result<Arc<PolyRing>> {
    match &decl.weights {
        Some(w) => PolyRing::weighted(&decl.vars, w),
        None => PolyRing::weighted(&decl.vars, &vec![1; decl.vars.len()]),
    }
}

fn coh_ring(dims: &[usize]) -> Result<CohRing> {
    if dims.is_empty() {
        return Err(Error::Invalid(
            "a space needs at least one projective factor".into(),
        ));
    }
    Ok(CohRing::new(dims))
}

/// Parses a class written as a polynomial in `h` (one factor) or
/// `h1, h2, …`; monomials beyond the truncation vanish.
pub fn parse_coh_class(text: &str, ring: &CohRing) -> Result<CohClass> {
    let names: Vec<String> = (0..ring.nfactors()).map(|i| ring.var_name(i)).collect();
    let p = parse_poly(text, &PolyRing::new(&names))?;
    let mut out = CohClass::zero(ring);
    for (m, c) in p.terms() {
        let exps: Vec<usize> = m.0.iter().map(|&e| e as usize).collect();
        if exps.iter().zip(ring.dims()).all(|(e, n)| e <= n) {
            out = out.add(&CohClass::monomial(ring, &exps, c.clone()));
        }
    }
    Ok(out)
}

fn multiplicity(s: &MultiplicityScene, opts: &RunOptions) -> Result<Outcome> {
    let ring = poly_ring(&s.ring)?;
    let m_gens = parse_polys(&s.m, &ring)?;
    let n_gens = parse_polys(&s.n, &ring)?;
    let m = ModulePresentation::quotient(&ring, &m_gens)?;
    let n = ModulePresentation::quotient(&ring, &n_gens)?;
    let len = opts
        .max_resolution_length
        .or(s.max_resolution_length)
        .unwrap_or(ring.nvars());
    let ro = ResolveOptions::new(len);
    let adm = admissible(&m, &n)?;
    let rep = serre_chi_with(&m, &n, &ro)?;
    let swapped = serre_chi_with(&n, &m, &ro)?;
    let (plain, dual) = chi_via_complex_with(&m, &n, &ro)?;

    let alt: i64 = rep
        .tor_lengths
        .iter()
        .enumerate()
        .map(|(i, &l)| if i % 2 == 0 { l as i64 } else { -(l as i64) })
        .sum();
    let mut checks = vec![
        Check::eq("alternating_sum", rep.chi, alt),
        Check::eq("tor_symmetry", rep.chi, swapped.chi),
        Check::eq("complex_euler_characteristic", plain, rep.chi),
        Check::eq("dual_complex_euler_characteristic", dual, rep.chi),
        Check::eq(
            "hilbert_series_tor0",
            adm.tensor_length.to_string(),
            Length::Finite(rep.tor_lengths[0]).to_string(),
        ),
        Check::new(
            "dimension_inequality",
            rep.dim_m + rep.dim_n <= rep.dim_a,
            format!("dim M + dim N = {}", rep.dim_m + rep.dim_n),
            format!("dim A = {}", rep.dim_a),
        ),
        Check::new(
            "conjecture_audit",
            rep.conjecture_status != ConjectureStatus::Violation,
            format!("{:?} chi={}", rep.classification, rep.chi),
            format!("{:?}", rep.conjecture_status),
        ),
    ];
    let mut flags = vec![
        enum_text(&rep.classification),
        enum_text(&rep.conjecture_status),
    ];
    if let Some((y, z)) = coordinate_split(&ring, &m_gens, &n_gens) {
        let b = local_global_bridge(ring.nvars(), &y, &z, &ro)?;
        checks.push(Check::eq(
            "euler_bridge",
            b.intersection_number.clone(),
            rep.chi.to_string(),
        ));
        if b.sign_convention_flag {
            flags.push("SIGN_CONVENTION".into());
        }
    }
    let result = json!({
        "tor_lengths": rep.tor_lengths,
        "chi": rep.chi,
        "dim_m": rep.dim_m,
        "dim_n": rep.dim_n,
        "dim_a": rep.dim_a,
        "classification": rep.classification,
        "conjecture_status": rep.conjecture_status,
        "chi_via_complex": [plain, dual],
        "tensor_length": adm.tensor_length,
    });
    Ok(Outcome {
        result,
        checks,
        flags,
    })
}

fn enum_text<T: serde::Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

/// When both ideals are generated by disjoint sets of variables covering
/// all of them in a standard graded ring, the pair is the affine chart of
/// two coordinate subspaces of `P^n`.
fn coordinate_split(
    ring: &Arc<PolyRing>,
    m: &[Poly],
    n: &[Poly],
) -> Option<(Vec<usize>, Vec<usize>)> {
    if !ring.is_standard_graded() {
        return None;
    }
    let var_of = |p: &Poly| -> Option<usize> {
        let (mono, c) = p.terms().next()?;
        if p.num_terms() != 1 || *c != q(1) || mono.0.iter().sum::<u32>() != 1 {
            return None;
        }
        mono.0.iter().position(|&e| e == 1)
    };
    let y: Vec<usize> = m.iter().map(var_of).collect::<Option<_>>()?;
    let z: Vec<usize> = n.iter().map(var_of).collect::<Option<_>>()?;
    let mut all: Vec<usize> = y.iter().chain(&z).copied().collect();
    all.sort_unstable();
    all.dedup();
    (all.len() == ring.nvars() && y.len() + z.len() == ring.nvars()).then_some((y, z))
}

fn hrr(s: &HrrScene, opts: &RunOptions) -> Result<Outcome> {
    let ring = coh_ring(&s.space)?;
    s.e.validate(&ring)?;
    s.f.validate(&ring)?;
    let ve = mukai_vector(&s.e, &ring)?;
    let vf = mukai_vector(&s.f, &ring)?;
    let pairing: Q = mukai_pairing(&ve, &vf)?;
    let chi = euler_pairing(&s.e, &s.f, &ring)?;
    let to_check =
        |name: &str, c: crate::charclass::ExactCheck| Check::new(name, c.passed, c.left, c.right);
    let mut checks = vec![
        to_check("mukai_vs_euler", hrr_check(&s.e, &s.f, &ring)?),
        to_check("td_pairing_vs_euler", td_pairing_check(&s.e, &s.f, &ring)?),
        to_check("grr_e", grr_check(&s.e, &ring)?),
        to_check("grr_f", grr_check(&s.f, &ring)?),
    ];
    let mut flags = Vec::new();
    let mut result = json!({
        "space": ring.to_string(),
        "mukai_vector_e": ve.to_string(),
        "mukai_vector_f": vf.to_string(),
        "mukai_pairing": fmt_q(&pairing),
        "euler_pairing": chi.to_string(),
    });
    if let (Some(lambda), Value::Object(obj)) = (&s.lambda, &mut result) {
        let l = parse_coh_class(lambda, &ring)?.to_gaussian();
        let te = lambda_twist_vector(&s.e, &l)?;
        let tf = lambda_twist_vector(&s.f, &l)?;
        let twisted = mukai_pairing(&te, &tf)?;
        let plain = mukai_pairing(&ve.to_gaussian(), &vf.to_gaussian())?;
        obj.insert("twisted_pairing".into(), Value::String(twisted.to_string()));
        checks.push(Check::eq(
            "twist_invariance",
            twisted.to_string(),
            plain.to_string(),
        ));
    }
    if let (&[n], SheafDescriptor::LinearSubvariety(a), SheafDescriptor::LinearSubvariety(b)) =
        (s.space.as_slice(), &s.e, &s.f)
    {
        let (ca, cb) = (a[0], b[0]);
        if ca + cb == n {
            let len = opts.max_resolution_length.unwrap_or(n);
            let y: Vec<usize> = (0..ca).collect();
            let z: Vec<usize> = (ca..n).collect();
            let b = local_global_bridge(n, &y, &z, &ResolveOptions::new(len))?;
            checks.push(Check::eq(
                "serre_bridge",
                b.intersection_number.clone(),
                b.serre_sum.to_string(),
            ));
            if b.sign_convention_flag {
                flags.push("SIGN_CONVENTION".into());
            }
            if let Value::Object(obj) = &mut result {
                obj.insert(
                    "intersection_number".into(),
                    Value::String(b.intersection_number),
                );
                obj.insert("serre_multiplicity".into(), json!(b.serre_sum));
            }
        }
    }
    Ok(Outcome {
        result,
        checks,
        flags,
    })
}

fn gamma(s: &GammaScene, opts: &RunOptions) -> Result<Outcome> {
    let tol = opts.tol.unwrap_or(s.tol);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let rep = gamma_identity_check(s.order, tol)?;
    let p1 = gamma_class(&CohRing::with_kind(&[1], CoeffKind::Float), 1)?;
    let linear = p1.coeff(&[1]);
    let err = (linear - 2.0 * EULER_GAMMA).abs();
    let checks = vec![
        Check::new(
            "gamma_identity",
            rep.passed,
            format!("max error {:.3e}", rep.max_error),
            format!("tol {tol:e}"),
        ),
        Check::new(
            "gamma_p1_linear",
            err < 1e-12,
            format!("{linear:.15}"),
            format!("2*gamma = {:.15}", 2.0 * EULER_GAMMA),
        ),
    ];
    let result = json!({
        "order": s.order,
        "tol": format!("{tol:e}"),
        "max_error": format!("{:.3e}", rep.max_error),
        "gamma_p1": format!("1 + {linear:.15}*h"),
    });
    Ok(Outcome {
        result,
        checks,
        flags: Vec::new(),
    })
}

fn parse_matrix(rows: &[Vec<String>], n: usize) -> Result<QMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid(format!(
            "correspondence matrix must be {n}x{n}"
        )));
    }
    rows.iter()
        .map(|r| r.iter().map(|x| parse_q(x)).collect())
        .collect()
}

fn lefschetz(s: &LefschetzScene) -> Result<Outcome> {
    let ring = coh_ring(&s.space)?;
    let ctx = LefschetzContext::new(&ring)?;
    let d = ring.dim();
    let mut checks = Vec::new();
    for r in ctx.lefschetz_ranks() {
        checks.push(Check::new(
            format!("hard_lefschetz_{}", r.degree),
            r.bijective,
            format!("rank {}", r.rank),
            format!("dim {}", r.dim),
        ));
    }
    let mut reassembled = true;
    for i in 0..ring.basis_len() {
        let e = CohClass::monomial(&ring, &ring.exps(i), q(1));
        let parts = ctx.primitive_decomposition(&e)?;
        let primitive = parts
            .iter()
            .all(|(_, p)| ctx.is_primitive(p).unwrap_or(false));
        reassembled &= primitive && ctx.reassemble(&parts) == e;
    }
    checks.push(Check::new(
        "primitive_reassembly",
        reassembled,
        "sum of L^k p_k",
        "every basis class",
    ));
    let mut forms = Vec::new();
    for j in 0..=d / 2 {
        let h = ctx.hodge_form(j)?;
        checks.push(Check::new(
            format!("hodge_form_{j}"),
            h.positive_definite,
            format!("minors [{}]", h.minors.join(", ")),
            "all positive",
        ));
        forms.push(h);
    }
    let betti: usize = ring.betti().iter().sum();
    let diag = ctx.trace_form(&Correspondence::diagonal(&ring))?;
    checks.push(Check::eq(
        "diagonal_trace",
        diag.trace.clone(),
        betti.to_string(),
    ));
    let mut kunneth = Correspondence::kunneth_projector(&ring, 0);
    for p in 1..=d {
        kunneth = kunneth.add(&Correspondence::kunneth_projector(&ring, p))?;
    }
    checks.push(Check::new(
        "kunneth_sum",
        kunneth.class() == Correspondence::diagonal(&ring).class(),
        "sum of projectors",
        "diagonal",
    ));
    let mut traces = Vec::new();
    for (k, rows) in s.correspondences.iter().enumerate() {
        let m = parse_matrix(rows, ring.basis_len())?;
        let c = Correspondence::from_matrix(&ring, &m)?;
        let t = ctx.trace_form(&c)?;
        checks.push(Check::new(
            format!("trace_form_{k}"),
            t.positive || t.acts_as_zero,
            format!("trace {}", t.trace),
            if t.acts_as_zero {
                "zero action"
            } else {
                "positive"
            },
        ));
        traces.push(t);
    }
    let primitive_dims: Vec<usize> = (0..=d / 2).map(|m| ctx.primitive_basis(m).len()).collect();
    let result = json!({
        "space": ring.to_string(),
        "betti": ring.betti(),
        "lefschetz": ctx.lefschetz_ranks(),
        "primitive_dims": primitive_dims,
        "hodge_forms": forms,
        "diagonal_trace": diag.trace,
        "traces": traces,
    });
    Ok(Outcome {
        result,
        checks,
        flags: Vec::new(),
    })
}

fn residue(s: &ResidueScene) -> Result<Outcome> {
    let (f, weights) = match (&s.ade, &s.ring, &s.f) {
        (Some(name), None, None) => ade(name)?,
        (None, Some(decl), Some(text)) => {
            let weights = decl
                .weights
                .clone()
                .ok_or_else(|| Error::Invalid("residue scenes need variable weights".into()))?;
            let ring = PolyRing::new(&decl.vars);
            (parse_poly(text, &ring)?, weights)
        }
        _ => {
            return Err(Error::Invalid(
                "give either `ade` or both `ring` and `f`".into(),
            ))
        }
    };
    let jr = JacobiRing::new(&f, &weights)?;
    let mu = jr.milnor_number();
    let gram = jr.residue_gram()?;
    let res_hess = jr.residue(jr.hessian())?;
    let mut residues = serde_json::Map::new();
    for g in &s.g {
        let gp = parse_poly(g, f.ring())?;
        residues.insert(g.clone(), Value::String(fmt_q(&jr.residue(&gp)?)));
    }
    let checks = vec![
        Check::eq(
            "milnor_formula",
            fmt_q(&jr.milnor_formula()),
            mu.to_string(),
        ),
        Check::eq("hessian_residue", fmt_q(&res_hess), mu.to_string()),
        Check::new(
            "gram_nondegenerate",
            gram.nondegenerate,
            format!("det {}", gram.det),
            "nonzero",
        ),
        Check::new("gram_symmetric", gram.symmetric, "G", "G^T"),
        Check::new(
            "gram_degree_orthogonal",
            gram.degree_orthogonal,
            "Res(a b), deg a + deg b != socle",
            "0",
        ),
    ];
    let result = json!({
        "f": f.to_string(),
        "weights": weights,
        "degree": jr.degree(),
        "milnor_number": mu,
        "basis": jr.basis_text(),
        "socle": jr.socle().to_string(),
        "residues": residues,
        "gram": gram,
    });
    Ok(Outcome {
        result,
        checks,
        flags: Vec::new(),
    })
}

fn transform(s: &TransformScene) -> Result<Outcome> {
    let x = coh_ring(&s.x)?;
    let y = coh_ring(&s.y)?;
    let xy = ProductSpace::new(&x, &y);
    let is_diagonal = s.kernel.trim() == "diagonal";
    let mu = if is_diagonal {
        if s.x != s.y {
            return Err(Error::Invalid("the diagonal kernel needs x == y".into()));
        }
        diagonal(&x)
    } else {
        parse_coh_class(&s.kernel, &xy.ring)?
    };
    let yx = ProductSpace::new(&y, &x);
    let back = xy.swap(&mu)?;
    let xx = ProductSpace::new(&x, &x);
    let composed = compose(&back, &yx, &mu, &xy)?;
    let mut checks = Vec::new();
    let mut images = Vec::new();
    let mut functorial = true;
    let mut identity = true;
    for text in &s.classes {
        let a = parse_coh_class(text, &x)?;
        let b = xy.integral_transform(&mu, &a)?;
        let round = yx.integral_transform(&back, &b)?;
        functorial &= xx.integral_transform(&composed, &a)? == round;
        identity &= b == a;
        images.push(b.to_string());
    }
    checks.push(Check::new(
        "functoriality",
        functorial,
        "phi^(mu' o mu)(a)",
        "phi^mu'(phi^mu(a))",
    ));
    if is_diagonal {
        checks.push(Check::new(
            "diagonal_identity",
            identity,
            "phi^Delta(a)",
            "a",
        ));
    }
    let result = json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "kernel": mu.to_string(),
        "images": images,
    });
    Ok(Outcome {
        result,
        checks,
        flags: Vec::new(),
    })
}

fn denis(s: &DenisScene) -> Result<Outcome> {
    let ring = poly_ring(&s.ring)?;
    let rows: Vec<Vec<Poly>> = s
        .rows
        .iter()
        .map(|r| parse_polys(r, &ring))
        .collect::<Result<_>>()?;
    let constant: QMatrix = rows
        .iter()
        .map(|r| r.iter().map(Poly::constant_term).collect())
        .collect();
    let e = IdempotentMatrix::new(&ring, rows)?;
    let max_order = s.max_order.unwrap_or(ring.nvars() / 2);
    let ch = denis_trace(&e, max_order);
    let rank = linalg::rank(&constant, e.size());
    let degree0 = ch.component(0);
    let tr = e.trace();
    let mut components = serde_json::Map::new();
    for k in 0..=ch.max_degree().unwrap_or(0) {
        components.insert(k.to_string(), Value::String(ch.component(k).to_string()));
    }
    let checks = vec![
        Check::eq("degree_zero_rank", degree0.to_string(), rank.to_string()),
        Check::eq("trace_is_rank", tr.to_string(), rank.to_string()),
        Check::new(
            "closed",
            ch.exterior_d().is_zero(),
            format!("d(Tr e^) = {}", ch.exterior_d()),
            "0",
        ),
    ];
    let result = json!({
        "size": e.size(),
        "rank": rank,
        "trace": tr.to_string(),
        "chern_character": ch.to_string(),
        "components": components,
    });
    Ok(Outcome {
        result,
        checks,
        flags: Vec::new(),
    })
}

fn hochschild(s: &HochschildScene) -> Result<Outcome> {
    let ring = poly_ring(&s.ring)?;
    let chains: Vec<HochschildChain> = s
        .chains
        .iter()
        .map(|c| HochschildChain::elementary(&parse_polys(c, &ring)?))
        .collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let mut out = Vec::new();
    for (k, c) in chains.iter().enumerate() {
        let mut entry = json!({ "chain": c.to_string(), "hkr": c.hkr().to_string() });
        if c.degree() >= 1 {
            let b = c.boundary()?;
            checks.push(Check::new(
                format!("hkr_boundary_{k}"),
                b.hkr().is_zero(),
                format!("hkr(b c) = {}", b.hkr()),
                "0",
            ));
            if c.degree() >= 2 {
                let bb = b.boundary()?;
                checks.push(Check::new(
                    format!("boundary_squared_{k}"),
                    bb.is_zero(),
                    format!("b(b c) = {bb}"),
                    "0",
                ));
            }
            if let Value::Object(m) = &mut entry {
                m.insert("boundary".into(), Value::String(b.to_string()));
            }
        }
        out.push(entry);
    }
    let mut shuffles = Vec::new();
    for (k, pair) in chains.windows(2).enumerate() {
        let sh = pair[0].shuffle(&pair[1])?;
        let lhs = sh.hkr();
        let rhs = pair[0].hkr().wedge(&pair[1].hkr());
        checks.push(Check::new(
            format!("shuffle_wedge_{k}"),
            lhs == rhs,
            lhs.to_string(),
            rhs.to_string(),
        ));
        shuffles.push(sh.to_string());
    }
    let result = json!({ "chains": out, "shuffles": shuffles });
    Ok(Outcome {
        result,
        checks,
        flags: Vec::new(),
    })
}
