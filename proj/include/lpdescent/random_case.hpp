#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lpdescent/json_io.hpp"
#include "lpdescent/rng.hpp"

namespace lpdescent {

/// Reproducible random instances: the same seed yields a byte-identical
/// case file (SplitMix64 is the only source of randomness).
struct CaseBounds {
    int max_group_dim = 6;
    int max_mult = 2;
    int max_summands = 8;
    bool reachable_mu = true; ///< pick mu from the image of the twisted pairs
    bool with_pads = true;
    int so_dim_parity = -1;   ///< -1 any, 0 even, 1 odd (orthogonal groups only)
};

inline const std::vector<LocalField>& desk_fields() {
    static const std::vector<LocalField> fields = {
        LocalField::p_adic(2), LocalField::p_adic(3), LocalField::p_adic(5),
        LocalField::p_adic(7), LocalField::real()};
    return fields;
}

namespace detail {

inline Alphabet random_split_alphabet(const LocalField& F, SplitMix64& rng, bool pads) {
    AlphabetBuilder b(QuadExt::trivial(F));
    b.add_quadratic_characters();
    b.add_self_dual("rho2", 2, Duality::Symplectic, F.one());
    auto classes = F.square_classes();
    b.add_self_dual("tau2", 2, Duality::Orthogonal,
                    classes[rng.below(classes.size())]);
    if (pads) b.add_nsd_line_orbit("pad");
    return b.build();
}

inline Alphabet random_conj_alphabet(const QuadExt& ext, SplitMix64& rng, bool pads) {
    AlphabetBuilder b(ext);
    b.add_conj_self_dual("xi_plus", 1, 1);
    b.add_conj_self_dual("xi_minus", 1, -1);
    b.add_conj_self_dual("sig_plus", 2, 1);
    b.add_conj_self_dual("sig_minus", 2, -1);
    if (rng.chance_half()) b.add_conj_self_dual("the3", 3, rng.pick_sign());
    if (pads) b.add_conj_nsd_pair("pad");
    return b.build();
}

inline EpsilonTable random_table(const Alphabet& alph, SplitMix64& rng) {
    EpsilonTable t;
    for (int i = 0; i < alph.size(); ++i) {
        for (int j = i; j < alph.size(); ++j)
            if (declared_pair(alph, i, j))
                t.set_pair(alph.member(i).id, alph.member(j).id, rng.pick_sign());
        if (alph.ext().is_split() && is_self_dual(alph.member(i).duality))
            t.set_single(alph.member(i).id, rng.pick_sign());
    }
    return t;
}

} // namespace detail

/// Draw a reproducible case for the family over the chosen field.
inline CaseFile generate_random_case(Family fam, const LocalField& F, std::uint64_t seed,
                                     const CaseBounds& bounds = {}) {
    SplitMix64 rng(SplitMix64::derive(seed, 0x6c7064ULL));

    QuadExt ext = QuadExt::trivial(F);
    if (fam == Family::U) {
        if (F.is_real()) {
            ext = QuadExt::quadratic(F, F.minus_one());
        } else {
            auto classes = F.square_classes();
            SquareClass d;
            do {
                d = classes[rng.below(classes.size())];
            } while (d == F.one());
            ext = QuadExt::quadratic(F, d);
        }
    }

    CaseFile c;
    c.ext = ext;
    c.seed = seed;
    c.alphabet = fam == Family::U
                     ? detail::random_conj_alphabet(ext, rng, bounds.with_pads)
                     : detail::random_split_alphabet(F, rng, bounds.with_pads);
    c.table = detail::random_table(c.alphabet, rng);
    c.whittaker = F.one();
    c.config.max_mult = bounds.max_mult;
    c.config.max_summands = bounds.max_summands;
    if (F.is_real()) c.config.max_b = 1; // archimedean parameters carry no SL2 factor

    // Group dimension, kept at desk scale.
    int max_dim = F.is_real() ? std::min(bounds.max_group_dim, 5) : bounds.max_group_dim;
    int dim = 0;
    switch (fam) {
        case Family::Sp:
        case Family::Mp:
            dim = 2 * static_cast<int>(1 + rng.below(static_cast<std::uint64_t>(max_dim / 2)));
            break;
        case Family::SO:
            dim = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_dim - 1)));
            if (bounds.so_dim_parity >= 0 && dim % 2 != bounds.so_dim_parity) {
                dim += 1;
                if (dim > max_dim) dim -= 2;
                if (dim < 2) dim = 2 + bounds.so_dim_parity;
            }
            break;
        case Family::U:
            dim = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_dim - 1)));
            break;
    }
    c.group = GroupDesc{fam, dim, ext, std::nullopt, true};

    // Draw phi among the structurally valid parameters of the group, with a
    // bias toward discrete ones.
    DescentConfig draw = c.config;
    draw.discrete_only = rng.below(10) < 7;
    Duality type;
    switch (fam) {
        case Family::SO:
            type = dim % 2 == 0 ? Duality::Orthogonal : Duality::Symplectic;
            break;
        case Family::Sp: type = Duality::Orthogonal; break;
        case Family::Mp: type = Duality::Symplectic; break;
        case Family::U:
            type = rng.chance_half() ? Duality::ConjOrthogonal : Duality::ConjSymplectic;
            break;
    }
    auto pool = candidate_parameters(c.alphabet, c.group, type, draw);
    if (pool.empty()) {
        draw.discrete_only = false;
        pool = candidate_parameters(c.alphabet, c.group, type, draw);
    }
    if (pool.empty() && fam == Family::U) {
        type = type == Duality::ConjOrthogonal ? Duality::ConjSymplectic
                                               : Duality::ConjOrthogonal;
        pool = candidate_parameters(c.alphabet, c.group, type, draw);
    }
    if (pool.empty())
        throw std::runtime_error("alphabet generates no parameter for this group");
    c.phi = pool[rng.below(pool.size())];
    c.phi.generic = true;

    ComponentGroup cg = component_group(c.alphabet, c.phi, fam, dim);
    c.mu = cg.trivial();
    bool picked = false;
    if (bounds.reachable_mu) {
        // mu in the image of psi -> chi^z_{phi,psi}: descent at that ell is
        // then nonempty by construction.
        std::vector<int> legal;
        for (int ell = 1; ell <= dim; ++ell)
            if (legal_ell(c.group, ell)) legal.push_back(ell);
        for (std::size_t tries = 0; tries < 2 * legal.size() && !picked; ++tries) {
            int ell = legal[rng.below(legal.size())];
            GroupDesc H = relevant_pair(c.group, ell);
            Duality ct = descent_candidate_type(c.group, H, c.phi);
            DescentConfig scan = c.config;
            scan.discrete_only = true;
            auto cands = candidate_parameters(c.alphabet, H, ct, scan);
            if (cands.empty()) continue;
            auto zs = ext.norm_class_reps();
            SquareClass z = zs[rng.below(zs.size())];
            const Parameter& psi = cands[rng.below(cands.size())];
            c.mu = chi_twisted(c.table, c.alphabet, c.group, H, c.phi, psi, z).first;
            picked = true;
        }
    }
    if (!picked) {
        auto chars = cg.characters();
        c.mu = chars[rng.below(chars.size())];
    }
    c.mu = cg.canonical(c.mu);
    return c;
}

inline CaseFile generate_random_case(Family fam, std::uint64_t seed,
                                     const CaseBounds& bounds = {}) {
    SplitMix64 rng(SplitMix64::derive(seed, 0xf1e1dULL));
    const auto& fields = desk_fields();
    return generate_random_case(fam, fields[rng.below(fields.size())], seed, bounds);
}

} // namespace lpdescent
