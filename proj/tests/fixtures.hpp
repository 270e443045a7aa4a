#pragma once

// Shared handmade fixtures for the unit suites.

#include "lpdescent/alphabet_builder.hpp"
#include "lpdescent/epsilon.hpp"
#include "lpdescent/rng.hpp"

namespace lpdescent::fixtures {

/// E = F alphabet over Q_p: quadratic characters, a symplectic dim-2 member,
/// an orthogonal dim-2 member, and one pad orbit of non-self-dual lines.
inline Alphabet split_alphabet(long p, bool with_pads = true) {
    auto F = LocalField::p_adic(p);
    AlphabetBuilder b(QuadExt::trivial(F));
    b.add_quadratic_characters();
    b.add_self_dual("rho2", 2, Duality::Symplectic, F.one());
    b.add_self_dual("tau2", 2, Duality::Orthogonal, F.class_of(p));
    if (with_pads) b.add_nsd_line_orbit("pad");
    return b.build();
}

inline Alphabet real_alphabet() {
    auto F = LocalField::real();
    AlphabetBuilder b(QuadExt::trivial(F));
    b.add_quadratic_characters();
    b.add_self_dual("disc2", 2, Duality::Symplectic, F.one());
    b.add_nsd_line_orbit("pad");
    return b.build();
}

/// E != F alphabet: conjugate self-dual lines of both signs, dim-2 members,
/// and a conjugate non-self-dual pad pair.
inline Alphabet conj_alphabet(long p) {
    auto F = LocalField::p_adic(p);
    auto E = QuadExt::quadratic(F, F.class_of(p == 3 ? 2 : -1));
    AlphabetBuilder b(E);
    b.add_conj_self_dual("xi_plus", 1, 1);
    b.add_conj_self_dual("xi_minus", 1, -1);
    b.add_conj_self_dual("sig_plus", 2, 1);
    b.add_conj_self_dual("sig_minus", 2, -1);
    b.add_conj_nsd_pair("pad");
    return b.build();
}

/// Uniformly random sign table covering every declared pair and single.
inline EpsilonTable random_table(const Alphabet& alph, std::uint64_t seed) {
    SplitMix64 rng(seed);
    EpsilonTable t;
    for (int i = 0; i < alph.size(); ++i) {
        for (int j = i; j < alph.size(); ++j)
            if (detail::declared_pair(alph, i, j))
                t.set_pair(alph.member(i).id, alph.member(j).id, rng.pick_sign());
        if (alph.ext().is_split() && is_self_dual(alph.member(i).duality))
            t.set_single(alph.member(i).id, rng.pick_sign());
    }
    return t;
}

inline EnhancedParameter with_trivial_char(const Alphabet& alph, const Parameter& p,
                                           Family fam, int space_dim) {
    return EnhancedParameter{p, component_group(alph, p, fam, space_dim).trivial()};
}

} // namespace lpdescent::fixtures
