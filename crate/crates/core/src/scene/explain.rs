use std::fmt::Write as _;

use super::{Payload, Scene};

/// The formulas a scene evaluates, one labelled line each.
pub fn explain(scene: &Scene) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scene {} ({})", scene.id, scene.kind());
    let lines: &[(&str, &str)] = match &scene.payload {
        Payload::Multiplicity(_) => &[
            (
                "Serre intersection multiplicity",
                "chi(M, N) = sum_i (-1)^i length Tor_i^A(M, N)",
            ),
            (
                "Tor via a minimal free resolution",
                "Tor_i(M, N) = H_i(E(M) ⊗ N)",
            ),
            (
                "admissibility",
                "length(M ⊗ N) < infinity, read off the Hilbert series of M ⊗ N",
            ),
            ("dimension inequality", "dim M + dim N <= dim A"),
            ("vanishing", "dim M + dim N < dim A  implies  chi = 0"),
            ("positivity", "dim M + dim N = dim A  implies  chi > 0"),
            (
                "complex Euler characteristics",
                "chi(E ⊗ F) = (-1)^{codim M} chi(E* ⊗ F) = chi(M, N)",
            ),
            (
                "coordinate subspaces",
                "(-1)^{codim Y} chi(O_Y, O_Z) on P^n equals the local multiplicity",
            ),
        ],
        Payload::Hrr(_) => &[
            ("Mukai vector", "v(E) = ch(E) · sqrt(td_X)"),
            ("involution", "tau(v) = sum_p (-1)^p v_p"),
            ("dual", "v^∨ = tau(v) · ch(omega_X)^{-1/2}"),
            ("Mukai pairing", "<v, w> = ∫_X v^∨ · w"),
            ("Euler pairing", "chi(E, F) = sum_i (-1)^i dim Ext^i(E, F)"),
            ("Hirzebruch-Riemann-Roch", "<v(E), v(F)> = chi(E, F)"),
            (
                "td-twisted pairing",
                "∫_X ch(E)^∨ · ch(F) · td_X = chi(E, F)",
            ),
            (
                "twisted Mukai vector",
                "mu_Lambda(E) = v(E) · exp(i Lambda), tau(Lambda) = -Lambda",
            ),
        ],
        Payload::Gamma(_) => &[
            (
                "Gamma class",
                "Gamma_X = exp(gamma ch_1(T_X) + sum_{n>=2} zeta(n)/n · ch_n(T_X))",
            ),
            (
                "Gamma identity",
                "z / (1 - e^{-z}) = e^{i pi q} Gamma(1 + q) Gamma(1 - q), z = 2 pi i q",
            ),
            ("P^1 linear term", "Gamma_{P^1} = 1 + 2 gamma h"),
        ],
        Payload::Lefschetz(_) => &[
            (
                "hard Lefschetz",
                "L^{d-2j}: H^{2j} -> H^{2d-2j} is bijective",
            ),
            ("primitive classes", "P^{2j} = ker L^{d-2j+1} on H^{2j}"),
            (
                "Lefschetz decomposition",
                "a = sum_k L^k p_k with p_k primitive",
            ),
            (
                "star operator",
                "*(L^k m) = (-1)^{i(i+1)/2} L^{d-i-k} m, m primitive of degree i",
            ),
            (
                "Hodge form",
                "(-1)^j ∫ L^{d-2j} a b is positive definite on P^{2j}",
            ),
            ("transpose", "(lambda m, *n) = (m, *lambda' n)"),
            (
                "trace form",
                "Tr(lambda' ∘ lambda) > 0 for lambda acting nontrivially",
            ),
        ],
        Payload::Residue(_) => &[
            ("Jacobi ring", "Jac(f) = k[x] / (df/dx_1, ..., df/dx_m)"),
            ("Milnor number", "mu = dim Jac(f) = prod_i (d / w_i - 1)"),
            (
                "socle",
                "hess(f) spans the top weighted degree sum_i (d - 2 w_i)",
            ),
            (
                "Grothendieck residue",
                "Res(g) = mu · [g]_top / [hess f]_top, so Res(hess f) = mu",
            ),
            ("residue pairing", "(a, b) = Res(a b), nondegenerate"),
        ],
        Payload::Transform(_) => &[
            ("integral transform", "phi^mu(a) = p_{Y*}(p_X^* a · mu)"),
            (
                "fiber integration",
                "p_* keeps the coefficient of the top class of the integrated factor",
            ),
            (
                "composition",
                "mu ∘ nu = p_{13*}(p_{12}^* nu · p_{23}^* mu), phi^{mu ∘ nu} = phi^mu ∘ phi^nu",
            ),
            (
                "diagonal",
                "Delta = sum_i h_1^i h_2^{n-i} acts as the identity",
            ),
        ],
        Payload::Denis(_) => &[
            (
                "Denis trace",
                "e^ = e + sum_{n>=1} (2n)!/(n!)^2 (e - 1/2)(de)^{2n}",
            ),
            ("Chern character", "ch([e]) = Tr(e^), a closed form"),
            ("degree zero", "Tr(e) = rank e"),
        ],
        Payload::Hochschild(_) => &[
            (
                "Hochschild boundary",
                "b(a_0 ⊗ ... ⊗ a_r) = sum_i (-1)^i ... a_i a_{i+1} ... + (-1)^r a_r a_0 ⊗ ...",
            ),
            ("HKR map", "a_0 ⊗ ... ⊗ a_r -> (1/r!) a_0 da_1 ∧ ... ∧ da_r"),
            (
                "shuffle product",
                "(a_0 ⊗ a) × (b_0 ⊗ b) = sum over (p, q)-shuffles sgn · a_0 b_0 ⊗ sh(a, b)",
            ),
            (
                "compatibility",
                "b² = 0, HKR(b c) = 0, HKR(c × c') = HKR(c) ∧ HKR(c')",
            ),
        ],
    };
    let width = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    for (label, formula) in lines {
        let _ = writeln!(s, "  {label:width$}  {formula}");
    }
    if !scene.expect.is_empty() {
        let keys: Vec<&str> = scene.expect.keys().map(String::as_str).collect();
        let _ = writeln!(s, "  expected values for: {}", keys.join(", "));
    }
    s
}
