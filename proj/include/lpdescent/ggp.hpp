#pragma once

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lpdescent/epsilon.hpp"

namespace lpdescent {

/// The distinguished-character calculus of the local Gan-Gross-Prasad
/// recipes: the twisting characters eta_a of the component group, the base
/// character pairs (chi_{phi,psi}, chi_{psi,phi}), their z-twists, and the
/// tempered multiplicity criterion.

namespace detail {

/// v^(dim/2) where the exponent may only be half-integral when v = +1.
inline int half_power(int v, int dim) {
    if (dim % 2 == 0) return sign_pow(v, dim / 2);
    if (v == 1) return 1;
    throw std::invalid_argument("half-integral exponent on a nontrivial sign");
}

inline SquareClass summand_det(const Alphabet& alph, const SummandEntry& e) {
    const auto& F = alph.ext().field();
    return F.pow(alph.member(e.member).det, e.b);
}

} // namespace detail

/// eta_a on the good-parity coordinates of phi:
///   E = F, not Mp : (det phi_i, a)_F
///   E = F, Mp     : eps(phi_i) eps(phi_i(a)) (a,-1)^{dim phi_i / 2}
///   E != F        : omega_{E/F}(a)^{dim phi_i}
inline CharacterVec eta(const Alphabet& alph, const EpsilonTable& table, Family fam,
                        const Parameter& phi, SquareClass a) {
    const auto& ext = alph.ext();
    const auto& F = ext.field();
    auto good = classify_summands(alph, phi).good;
    CharacterVec out{std::vector<int>(good.size(), 1)};
    for (std::size_t k = 0; k < good.size(); ++k) {
        const auto& e = phi.entries[static_cast<std::size_t>(good[k])];
        int dim = alph.member(e.member).dim * e.b;
        if (!ext.is_split()) {
            out.signs[k] = detail::sign_pow(ext.omega(a), dim);
        } else if (fam == Family::Mp) {
            out.signs[k] = eps_single(table, alph, e, a);
        } else {
            out.signs[k] = F.hilbert(detail::summand_det(alph, e), a);
        }
    }
    return out;
}

namespace detail {

/// One coordinate of the base distinguished character over E = F:
///   eps(phi_i (x) psi) (det phi_i)(-1)^{dim psi/2} (det psi)(-1)^{dim phi_i/2}.
/// `twist` is applied to the phi_i member in place, preserving the basis
/// alignment with the untwisted parameter.
inline int chi_factor_split(const EpsilonTable& table, const Alphabet& alph,
                            SummandEntry e, SquareClass twist, const Parameter& psi,
                            int psi_dim, SquareClass psi_det) {
    const auto& F = alph.ext().field();
    SummandEntry te{alph.twist_index(e.member, twist), e.b, e.mult};
    int dim_i = alph.member(te.member).dim * te.b;
    int v = eps_pair(table, alph, te, psi);
    v *= half_power(F.hilbert(summand_det(alph, te), F.minus_one()), psi_dim);
    v *= half_power(F.hilbert(psi_det, F.minus_one()), dim_i);
    return v;
}

} // namespace detail

/// Base character chi_{phi,psi} of the component-group coordinates of phi,
/// for phi, psi of opposite (conjugate) self-dual types; psi may be empty,
/// in which case the character is trivial.
inline CharacterVec chi(const EpsilonTable& table, const Alphabet& alph,
                        const Parameter& phi, const Parameter& psi) {
    const auto& ext = alph.ext();
    const auto& F = ext.field();
    if (!psi.empty() && duality_sign(phi.type) * duality_sign(psi.type) != -1)
        throw std::invalid_argument("distinguished characters need opposite types");
    auto good = classify_summands(alph, phi).good;
    CharacterVec out{std::vector<int>(good.size(), 1)};
    const int psi_dim = param_dim(alph, psi);
    const SquareClass psi_det = param_det(alph, psi);
    for (std::size_t k = 0; k < good.size(); ++k) {
        const auto& e = phi.entries[static_cast<std::size_t>(good[k])];
        if (!ext.is_split()) {
            out.signs[k] = eps_pair(table, alph, e, psi);
        } else {
            out.signs[k] =
                detail::chi_factor_split(table, alph, e, F.one(), psi, psi_dim, psi_det);
        }
    }
    return out;
}

/// The twisted pair (chi^z_{phi,psi}, chi^z_{psi,phi}) on the component
/// groups of phi (a parameter of G) and psi (a parameter of H), following
/// the case-by-case recipes:
///   - both even self-dual (orthogonal chain):   (chi.eta_z, chi.eta_z)
///   - symplectic-metaplectic chain: the odd-orthogonal side A is twisted,
///     paired against A(z) augmented by a trivial line on the other side:
///     (chi_{A(z),B}.eta_z, chi_{B,A(z)})
///   - unitary: (chi.eta_z, chi.eta_{(-1)^l z}) with l = dim phi - dim psi.
inline std::pair<CharacterVec, CharacterVec> chi_twisted(const EpsilonTable& table,
                                                         const Alphabet& alph,
                                                         const GroupDesc& G,
                                                         const GroupDesc& H,
                                                         const Parameter& phi,
                                                         const Parameter& psi,
                                                         SquareClass z) {
    const auto& ext = alph.ext();
    const auto& F = ext.field();

    if (!ext.is_split()) {
        CharacterVec c1 = ComponentGroup::mul(chi(table, alph, phi, psi),
                                              eta(alph, table, G.family, phi, z));
        int l = param_dim(alph, phi) - param_dim(alph, psi);
        SquareClass z2 = (l % 2 != 0) ? F.mul(z, F.minus_one()) : z;
        CharacterVec c2 = ComponentGroup::mul(chi(table, alph, psi, phi),
                                              eta(alph, table, H.family, psi, z2));
        return {c1, c2};
    }

    if (G.family == Family::SO && H.family == Family::SO) {
        CharacterVec c1 = ComponentGroup::mul(chi(table, alph, phi, psi),
                                              eta(alph, table, G.family, phi, z));
        CharacterVec c2 = ComponentGroup::mul(chi(table, alph, psi, phi),
                                              eta(alph, table, H.family, psi, z));
        return {c1, c2};
    }

    bool g_is_odd_orth = G.family == Family::Sp;
    if (!((G.family == Family::Sp && H.family == Family::Mp) ||
          (G.family == Family::Mp && H.family == Family::Sp)))
        throw std::invalid_argument("unsupported group pairing for twisted characters");

    const Parameter& A = g_is_odd_orth ? phi : psi; // odd orthogonal side
    const Parameter& B = g_is_odd_orth ? psi : phi; // symplectic side
    Family a_fam = Family::Sp;

    // chi_{A(z), B} . eta_z on the coordinates of A.
    auto a_good = classify_summands(alph, A).good;
    CharacterVec cA{std::vector<int>(a_good.size(), 1)};
    const int b_dim = param_dim(alph, B);
    const SquareClass b_det = param_det(alph, B);
    for (std::size_t k = 0; k < a_good.size(); ++k) {
        const auto& e = A.entries[static_cast<std::size_t>(a_good[k])];
        cA.signs[k] = detail::chi_factor_split(table, alph, e, z, B, b_dim, b_det);
    }
    cA = ComponentGroup::mul(cA, eta(alph, table, a_fam, A, z));

    // chi_{B, A(z) + 1}: the odd-orthogonal side is augmented by the trivial
    // character so the second argument has even dimension.
    auto triv = alph.trivial_char_index();
    if (!triv)
        throw std::invalid_argument(
            "alphabet must contain the trivial quadratic character for this chain");
    Parameter A1 = twist_param(alph, A, z);
    {
        auto entries = A1.entries;
        entries.push_back(SummandEntry{*triv, 1, 1});
        A1 = make_parameter(alph, std::move(entries), A1.type, A1.generic);
    }
    auto b_good = classify_summands(alph, B).good;
    CharacterVec cB{std::vector<int>(b_good.size(), 1)};
    const int a1_dim = param_dim(alph, A1);
    const SquareClass a1_det = param_det(alph, A1);
    for (std::size_t k = 0; k < b_good.size(); ++k) {
        const auto& e = B.entries[static_cast<std::size_t>(b_good[k])];
        cB.signs[k] = detail::chi_factor_split(table, alph, e, F.one(), A1, a1_dim, a1_det);
    }

    if (g_is_odd_orth) return {cA, cB};
    return {cB, cA};
}

struct DistinguishedPair {
    CharacterVec mu;
    CharacterVec nu;
    SquareClass z;
};

inline DistinguishedPair distinguished_pair(const EpsilonTable& table, const Alphabet& alph,
                                            const GroupDesc& G, const GroupDesc& H,
                                            const Parameter& phi, const Parameter& psi,
                                            SquareClass z) {
    auto [mu, nu] = chi_twisted(table, alph, G, H, phi, psi, z);
    return DistinguishedPair{mu, nu, z};
}

/// Tempered multiplicity: 1 exactly when (mu, nu) is the twisted
/// distinguished pair of (phi, psi) along z.
inline int multiplicity_tempered(const EpsilonTable& table, const Alphabet& alph,
                                 const GroupDesc& G, const GroupDesc& H,
                                 const EnhancedParameter& pi, const EnhancedParameter& sigma,
                                 SquareClass z) {
    if (!pi.phi.generic || !sigma.phi.generic)
        throw std::invalid_argument("multiplicity is defined for generic parameters only");
    auto [mu, nu] = chi_twisted(table, alph, G, H, pi.phi, sigma.phi, z);
    ComponentGroup cg1 = component_group(alph, pi.phi, G.family, G.space_dim);
    ComponentGroup cg2 = component_group(alph, sigma.phi, H.family, H.space_dim);
    return (cg1.char_equal(mu, pi.mu) && cg2.char_equal(nu, sigma.mu)) ? 1 : 0;
}

/// Contragredient of an enhanced parameter, case by case:
///   SO: identity;  Sp: (phi, mu.eta_{-1});  Mp: (phi(-1), mu.eta_{-1});
///   U : (phi^vee, mu.eta_{-1}^{[dim even]}).
inline EnhancedParameter contragredient_enhanced(const EpsilonTable& table,
                                                 const Alphabet& alph, Family fam,
                                                 const EnhancedParameter& ep) {
    const auto& F = alph.ext().field();
    switch (fam) {
        case Family::SO:
            return ep;
        case Family::Sp: {
            CharacterVec mu =
                ComponentGroup::mul(ep.mu, eta(alph, table, fam, ep.phi, F.minus_one()));
            return EnhancedParameter{ep.phi, mu};
        }
        case Family::Mp: {
            CharacterVec mu =
                ComponentGroup::mul(ep.mu, eta(alph, table, fam, ep.phi, F.minus_one()));
            return twist_enhanced(alph, EnhancedParameter{ep.phi, mu}, F.minus_one());
        }
        case Family::U: {
            CharacterVec mu = ep.mu;
            if (param_dim(alph, ep.phi) % 2 == 0)
                mu = ComponentGroup::mul(mu, eta(alph, table, fam, ep.phi, F.minus_one()));
            return dual_enhanced_raw(alph, EnhancedParameter{ep.phi, mu});
        }
    }
    throw std::logic_error("unknown family");
}

/// Orbit of mu under mu -> mu.eta_z, z in Z; canonical representatives.
inline std::vector<CharacterVec> z_orbit(const EpsilonTable& table, const Alphabet& alph,
                                         Family fam, int space_dim,
                                         const EnhancedParameter& ep) {
    ComponentGroup cg = component_group(alph, ep.phi, fam, space_dim);
    std::set<CharacterVec> seen;
    for (SquareClass z : alph.ext().norm_class_reps())
        seen.insert(cg.canonical(ComponentGroup::mul(ep.mu, eta(alph, table, fam, ep.phi, z))));
    return {seen.begin(), seen.end()};
}

} // namespace lpdescent
