#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpdescent/descent.hpp"

namespace lpdescent {

/// Representation-side bookkeeping: Vogan packets, standard modules with
/// their GL-block data, spectra along orbits, and the spectral first
/// occurrence index computed without consulting the descent scan.

struct PacketEntry {
    EnhancedParameter ep;
    SquareClass whittaker;
    std::string form_tag;
    bool quasisplit = false;
};

/// The packet attached to phi for the Whittaker datum a: one entry per
/// character of the component group; the quasi-split form carries the
/// entry with trivial character (default form-assignment rule, opaque to
/// all downstream logic).
inline std::vector<PacketEntry> vogan_packet(const EpsilonTable& table, const Alphabet& alph,
                                             const GroupDesc& G, const Parameter& phi,
                                             SquareClass a) {
    if (!phi.generic)
        throw std::invalid_argument("packets are formed for generic parameters only");
    validate_for_group(alph, phi, G);
    (void)table;
    ComponentGroup cg = component_group(alph, phi, G.family, G.space_dim);
    std::vector<PacketEntry> out;
    for (const auto& mu : cg.characters()) {
        PacketEntry e;
        e.ep = EnhancedParameter{phi, mu};
        e.whittaker = a;
        e.quasisplit = cg.char_equal(mu, cg.trivial());
        std::string bits;
        for (int s : mu.signs) bits += (s > 0 ? '+' : '-');
        e.form_tag = e.quasisplit ? "quasi-split" : "inner[" + bits + "]";
        out.push_back(std::move(e));
    }
    return out;
}

struct GLBlock {
    int dim = 1;
    std::string label;

    friend bool operator==(const GLBlock&, const GLBlock&) = default;
};

/// Langlands data I(s, tau_1..tau_t, sigma_0): positive ordered exponents
/// with tempered GL blocks, plus a tempered core.  Only the total GL
/// dimension ever enters the multiplicity; blocks and exponents are carried
/// for serialization fidelity.  The genuineness flag on metaplectic modules
/// is metadata.
struct StandardModuleData {
    std::vector<double> exponents;
    std::vector<GLBlock> blocks;
    EnhancedParameter core;
    bool genuine = false;

    int p0() const {
        int s = 0;
        for (const auto& b : blocks) s += b.dim;
        return s;
    }

    static StandardModuleData tempered(EnhancedParameter ep) {
        StandardModuleData m;
        m.core = std::move(ep);
        return m;
    }
};

inline void validate_standard_module(const StandardModuleData& m) {
    if (m.exponents.size() != m.blocks.size())
        throw std::invalid_argument("one exponent per GL block");
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        if (m.exponents[i] < 0) throw std::invalid_argument("exponents must be >= 0");
        if (i + 1 < m.exponents.size() && m.exponents[i] < m.exponents[i + 1])
            throw std::invalid_argument("exponents must be non-increasing");
        if (m.blocks[i].dim < 1) throw std::invalid_argument("GL blocks have dimension >= 1");
    }
}

/// Multiplicity of the pairing of two standard modules across the orbit
/// with line data z: both sides reduce to their tempered cores, shifting
/// the codimension by twice the stripped GL dimensions.
inline int multiplicity(const EpsilonTable& table, const Alphabet& alph, const GroupDesc& G,
                        const GroupDesc& H, const StandardModuleData& pi,
                        const StandardModuleData& sigma, SquareClass z) {
    validate_standard_module(pi);
    validate_standard_module(sigma);
    GroupDesc G0 = G;
    G0.space_dim -= 2 * pi.p0();
    G0.space = std::nullopt;
    GroupDesc H0 = H;
    H0.space_dim -= 2 * sigma.p0();
    H0.space = std::nullopt;
    if (G0.space_dim < 0 || H0.space_dim < 0 || G0.space_dim < H0.space_dim)
        throw std::invalid_argument("GL blocks exceed the group dimensions");
    int p1_eff = G0.space_dim - H0.space_dim;
    if (!legal_ell(G0, p1_eff))
        throw std::invalid_argument("reduced pair has no admissible orbit");
    return multiplicity_tempered(table, alph, G0, H0, pi.core, sigma.core, z);
}

/// Line class of the orbit corresponding to the twist z, case by case.
inline SquareClass line_class_for(const Alphabet& alph, const GroupDesc& G, int p1,
                                  SquareClass z) {
    const auto& F = alph.ext().field();
    const int m = p1 / 2;
    if (p1 % 2 == 0) return alph.ext().normalize(z);
    SquareClass sign = F.pow(F.minus_one(), G.family == Family::U ? m : m + G.space_dim);
    return alph.ext().normalize(F.mul(sign, z));
}

struct SpectrumMember {
    EnhancedParameter dual; ///< sigma^ for an occurring sigma
    SquareClass z;
    SquareClass line_class;
    std::optional<OrbitData> orbit;
};

struct SpectrumResult {
    int p1 = 0;
    std::vector<SpectrumMember> members;       ///< tempered occurrences
    long padded_occurrences = 0;               ///< standard modules with GL blocks
};

namespace detail {

inline std::optional<EpsHermSpace> quasisplit_space_or_null(const GroupDesc& G, int p1) {
    if (G.ext.field().is_real()) return std::nullopt;
    try {
        return quasisplit_space(G.ext, G.family, G.space_dim,
                                G.space ? std::optional<SquareClass>(G.space->disc)
                                        : std::nullopt,
                                G.space_eps(p1));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace detail

/// Spectrum of (phi, mu) at p1: all tempered enhanced parameters sigma of H
/// whose packet member pairs with multiplicity one against some orbit/z,
/// returned as contragredients with orbit provenance.  The candidate class
/// is all-bounded, so discreteness of the first descent is a verified
/// output, not an input assumption.
inline SpectrumResult spectrum_at(const EpsilonTable& table, const Alphabet& alph,
                                  const GroupDesc& G, const EnhancedParameter& ep, int p1,
                                  const DescentConfig& cfg) {
    if (!legal_ell(G, p1))
        throw std::invalid_argument("inadmissible orbit partition for this family");
    GroupDesc H = relevant_pair(G, p1);
    Duality type = descent_candidate_type(G, H, ep.phi);
    DescentConfig wide = cfg;
    wide.discrete_only = false;

    SpectrumResult result;
    result.p1 = p1;
    auto qspace = detail::quasisplit_space_or_null(G, p1);
    StandardModuleData pi_module = StandardModuleData::tempered(ep);

    for (const auto& psi : candidate_parameters(alph, H, type, wide)) {
        ComponentGroup cg = component_group(alph, psi, H.family, H.space_dim);
        for (const auto& nu : cg.characters()) {
            StandardModuleData sigma = StandardModuleData::tempered(EnhancedParameter{psi, nu});
            for (SquareClass z : cfg.z_list.value_or(alph.ext().norm_class_reps())) {
                if (multiplicity(table, alph, G, H, pi_module, sigma, z) != 1) continue;
                SpectrumMember m;
                m.dual = contragredient_enhanced(table, alph, H.family,
                                                 EnhancedParameter{psi, nu});
                m.dual.mu = component_group(alph, m.dual.phi, H.family, H.space_dim)
                                .canonical(m.dual.mu);
                m.z = z;
                m.line_class = line_class_for(alph, G, p1, z);
                if (qspace) {
                    try {
                        for (const auto& orb : rational_orbits(*qspace, p1))
                            if (alph.ext().normalize(orb.line_class) == m.line_class ||
                                orb.line_class == m.line_class)
                                m.orbit = orb;
                    } catch (const std::invalid_argument&) {
                    }
                }
                result.members.push_back(std::move(m));
            }
        }
    }
    std::sort(result.members.begin(), result.members.end(),
              [&](const SpectrumMember& a, const SpectrumMember& b) {
                  return member_key(alph, DescentMember{a.dual, a.z}) <
                         member_key(alph, DescentMember{b.dual, b.z});
              });
    return result;
}

struct SpectralFirstOccurrence {
    int fs = 0;
    bool found = false;
    bool bound_limited = false;
    SpectrumResult first_spectrum;
};

/// Spectral first occurrence: scan p1 downward, probing both tempered
/// modules and GL-padded standard modules; a padded module occurs exactly
/// when its tempered core occurs at the deeper orbit, so the scan records
/// padded occurrences without changing the maximum.
inline SpectralFirstOccurrence spectral_first_occurrence(const EpsilonTable& table,
                                                         const Alphabet& alph,
                                                         const GroupDesc& G,
                                                         const EnhancedParameter& ep,
                                                         const DescentConfig& cfg) {
    SpectralFirstOccurrence out;
    std::map<int, SpectrumResult> profile;
    for (int p1 = G.space_dim; p1 >= 1; --p1) {
        if (!legal_ell(G, p1)) continue;
        SpectrumResult res = spectrum_at(table, alph, G, ep, p1, cfg);
        // Probe GL-padded standard modules: their occurrences reduce to the
        // tempered spectra already computed higher up the scan.
        for (int pad = 1; p1 + 2 * pad <= G.space_dim; ++pad) {
            auto it = profile.find(p1 + 2 * pad);
            if (it == profile.end()) continue;
            GroupDesc H = relevant_pair(G, p1);
            GroupDesc Hdeep = relevant_pair(G, p1 + 2 * pad);
            for (const auto& deep : it->second.members) {
                EnhancedParameter core =
                    contragredient_enhanced(table, alph, Hdeep.family, deep.dual);
                StandardModuleData padded;
                padded.exponents = {1.0};
                padded.blocks = {GLBlock{pad, "gl-pad"}};
                padded.core = core;
                padded.genuine = H.family == Family::Mp;
                if (multiplicity(table, alph, G, H, StandardModuleData::tempered(ep), padded,
                                 deep.z) == 1)
                    ++res.padded_occurrences;
            }
        }
        profile.emplace(p1, std::move(res));
    }
    for (const auto& [p1, res] : profile) {
        bool nonempty = !res.members.empty() || res.padded_occurrences > 0;
        if (nonempty && (!out.found || p1 > out.fs)) {
            out.fs = p1;
            out.found = true;
            out.first_spectrum = res;
        }
    }
    if (!out.found) out.bound_limited = true;
    return out;
}

/// Spectrum at the spectral first occurrence index, with the structural
/// checks attached: every member must be discrete and tempered (no GL-padded
/// module can occur at the maximum).
struct FirstDescentSpectrum {
    SpectralFirstOccurrence occurrence;
    std::vector<std::string> violations;
};

inline FirstDescentSpectrum first_descent_spectrum(const EpsilonTable& table,
                                                   const Alphabet& alph, const GroupDesc& G,
                                                   const EnhancedParameter& ep,
                                                   const DescentConfig& cfg) {
    FirstDescentSpectrum out;
    out.occurrence = spectral_first_occurrence(table, alph, G, ep, cfg);
    if (!out.occurrence.found) return out;
    const SpectrumResult& res = out.occurrence.first_spectrum;
    if (res.padded_occurrences > 0)
        out.violations.push_back("a GL-padded module occurs at the first occurrence index");
    for (const auto& m : res.members)
        if (!is_discrete(alph, m.dual.phi))
            out.violations.push_back("non-discrete member at the first occurrence: " +
                                     parameter_key(alph, m.dual.phi));
    return out;
}

struct SubmoduleWitness {
    int p1 = 0;
    bool found = false;
    GroupDesc H;
    SpectrumMember member;     ///< sigma^ in the first descent spectrum
    EnhancedParameter sigma;   ///< the discrete series datum itself
};

/// Data of the induced-module embedding: the first-occurrence orbit, the
/// group H across it, and a discrete sigma whose contragredient occurs.
inline SubmoduleWitness submodule_witness(const EpsilonTable& table, const Alphabet& alph,
                                          const GroupDesc& G, const EnhancedParameter& ep,
                                          const DescentConfig& cfg) {
    SubmoduleWitness w;
    auto sfo = spectral_first_occurrence(table, alph, G, ep, cfg);
    if (!sfo.found || sfo.first_spectrum.members.empty()) return w;
    w.p1 = sfo.fs;
    w.found = true;
    w.H = relevant_pair(G, sfo.fs);
    w.member = sfo.first_spectrum.members.front();
    w.sigma = contragredient_enhanced(table, alph, w.H.family, w.member.dual);
    return w;
}

} // namespace lpdescent
