#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpdescent/alphabet_builder.hpp"
#include "lpdescent/ggp.hpp"

namespace lpdescent {

/// Descent of enhanced L-parameters: for (phi, mu) on G and a codimension
/// ell, the descent set collects the contragredients of all enhanced
/// parameters (psi, nu) of the quasi-split H across the orbit, whose twisted
/// distinguished pair matches (mu, nu).  The search space is truncated to
/// alphabet-generated parameters within declared bounds.
struct DescentConfig {
    int max_mult = 2;         ///< multiplicity cap in the all-bounded class
    int max_summands = 8;     ///< cap on distinct (member, b) slots
    int max_b = 0;            ///< cap on SL2 factors; 0 = limited by dimension only
    int max_summand_dim = 0;  ///< cap on single-summand dimensions; 0 = unbounded
    bool discrete_only = true;
    std::optional<std::vector<SquareClass>> z_list; ///< default: all of Z
};

/// Codimension parity rule: (-1)^{ell-1} = eps when E = F, no restriction
/// when E = F(delta).
inline bool legal_ell(const GroupDesc& g, int ell) {
    if (ell <= 0 || ell > g.space_dim) return false;
    if (g.family == Family::U) return true;
    int eps = g.family == Family::SO ? 1 : -1;
    return (ell % 2 == 1) == (eps == 1);
}

namespace detail {

struct CandidateOption {
    int member;   ///< first member (canonical side for dual pairs)
    int partner;  ///< dual partner, or -1 for self-dual members
    int b;
    int dim;      ///< dimension contributed per unit of multiplicity
    bool good;    ///< good parity relative to the requested type
};

inline std::vector<CandidateOption> candidate_options(const Alphabet& alph, Duality type,
                                                      int max_dim, int max_b,
                                                      int max_summand_dim) {
    if (max_summand_dim > 0) max_dim = std::min(max_dim, max_summand_dim);
    std::vector<CandidateOption> out;
    for (int i = 0; i < alph.size(); ++i) {
        const auto& m = alph.member(i);
        if (m.duality == Duality::NonSelfDual) {
            int j = alph.dual_index(i);
            if (j < i) continue; // canonical orientation
            for (int b = 1; m.dim * b * 2 <= max_dim; ++b) {
                if (max_b && b > max_b) break;
                out.push_back(CandidateOption{i, j, b, 2 * m.dim * b, false});
            }
            continue;
        }
        if (is_conjugate(m.duality) != is_conjugate(type)) continue;
        for (int b = 1; m.dim * b <= max_dim; ++b) {
            if (max_b && b > max_b) break;
            bool good = summand_duality(alph, i, b) == type;
            out.push_back(CandidateOption{i, -1, b, m.dim * b, good});
        }
    }
    return out;
}

} // namespace detail

/// All parameters of the given type and dimension generated by the alphabet
/// within the bounds; multiplicity-free good-parity multisets only when
/// `discrete_only` is set.
inline std::vector<Parameter> enumerate_parameters(const Alphabet& alph, Duality type,
                                                   int dim, const DescentConfig& cfg) {
    std::vector<Parameter> out;
    if (dim < 0) return out;
    auto options = detail::candidate_options(alph, type, dim, cfg.max_b,
                                             cfg.max_summand_dim);
    std::vector<SummandEntry> current;
    auto emit = [&]() {
        out.push_back(make_parameter(alph, current, type));
    };
    auto rec = [&](auto&& self, std::size_t at, int remaining, int slots) -> void {
        if (remaining == 0) {
            emit();
            return;
        }
        if (at == options.size() || slots == 0) return;
        // Prune: every later option costs at least the minimal later dim.
        self(self, at + 1, remaining, slots);
        const auto& opt = options[at];
        if (cfg.discrete_only && !(opt.good && opt.partner < 0)) return;
        int max_mult = cfg.discrete_only ? 1 : cfg.max_mult;
        int step = 1;
        int start = 1;
        if (opt.partner < 0 && !opt.good) {
            // wrong-parity summands occur with even multiplicity
            start = 2;
            step = 2;
        }
        for (int mult = start; mult <= max_mult; mult += step) {
            int cost = opt.dim * mult;
            if (cost > remaining) break;
            current.push_back(SummandEntry{opt.member, opt.b, mult});
            if (opt.partner >= 0) current.push_back(SummandEntry{opt.partner, opt.b, mult});
            self(self, at + 1, remaining - cost, slots - 1);
            current.pop_back();
            if (opt.partner >= 0) current.pop_back();
        }
    };
    rec(rec, 0, dim, cfg.max_summands);
    std::sort(out.begin(), out.end(), [&](const Parameter& a, const Parameter& b) {
        return a.entries < b.entries;
    });
    return out;
}

/// Candidates that are structurally valid parameters of the group H.
inline std::vector<Parameter> candidate_parameters(const Alphabet& alph, const GroupDesc& H,
                                                   Duality type, const DescentConfig& cfg) {
    std::vector<Parameter> out;
    for (auto& p : enumerate_parameters(alph, type, H.param_dim(), cfg)) {
        try {
            validate_for_group(alph, p, H);
        } catch (const std::invalid_argument&) {
            continue;
        }
        out.push_back(std::move(p));
    }
    return out;
}

/// Type of the descent candidates: opposite to phi across the orbit chain.
inline Duality descent_candidate_type(const GroupDesc& G, const GroupDesc& H,
                                      const Parameter& phi) {
    if (G.family == Family::U)
        return duality_from_sign(true, -duality_sign(phi.type));
    switch (H.family) {
        case Family::SO:
            return H.space_dim % 2 == 0 ? Duality::Orthogonal : Duality::Symplectic;
        case Family::Sp: return Duality::Orthogonal;
        case Family::Mp: return Duality::Symplectic;
        default: throw std::logic_error("bad descent chain");
    }
}

struct DescentMember {
    EnhancedParameter dual; ///< the contragredient (psi^, nu^)
    SquareClass z;
};

inline std::string parameter_key(const Alphabet& alph, const Parameter& p) {
    std::ostringstream os;
    for (const auto& e : p.entries)
        os << alph.member(e.member).id << ':' << e.b << ':' << e.mult << ';';
    return os.str();
}

inline std::string member_key(const Alphabet& alph, const DescentMember& m) {
    std::ostringstream os;
    os << int(m.z.bits) << '|' << parameter_key(alph, m.dual.phi) << '|';
    for (int s : m.dual.mu.signs) os << (s > 0 ? '+' : '-');
    return os.str();
}

struct DescentSet {
    int ell = 0;
    std::vector<DescentMember> members;

    bool empty() const { return members.empty(); }
};

/// D^z_ell(phi, mu): candidates psi of H with chi^z_{phi,psi} = mu; the
/// second character nu is determined by (psi, z), never searched.
inline std::vector<DescentMember> descend_z(const EpsilonTable& table, const Alphabet& alph,
                                            const GroupDesc& G, const EnhancedParameter& ep,
                                            int ell, SquareClass z, const DescentConfig& cfg) {
    if (!legal_ell(G, ell))
        throw std::invalid_argument("illegal descent codimension for this family");
    GroupDesc H = relevant_pair(G, ell);
    Duality type = descent_candidate_type(G, H, ep.phi);
    ComponentGroup cg = component_group(alph, ep.phi, G.family, G.space_dim);

    std::vector<DescentMember> out;
    for (const auto& psi : candidate_parameters(alph, H, type, cfg)) {
        auto [c1, c2] = chi_twisted(table, alph, G, H, ep.phi, psi, z);
        if (!cg.char_equal(c1, ep.mu)) continue;
        EnhancedParameter member =
            contragredient_enhanced(table, alph, H.family, EnhancedParameter{psi, c2});
        member.mu = component_group(alph, member.phi, H.family, H.space_dim)
                        .canonical(member.mu);
        out.push_back(DescentMember{member, z});
    }
    return out;
}

/// D_ell(phi, mu): tagged disjoint union of D^z_ell over z in Z.
inline DescentSet descend(const EpsilonTable& table, const Alphabet& alph, const GroupDesc& G,
                          const EnhancedParameter& ep, int ell, const DescentConfig& cfg) {
    DescentSet set;
    set.ell = ell;
    std::vector<SquareClass> zs = cfg.z_list.value_or(alph.ext().norm_class_reps());
    for (SquareClass z : zs) {
        auto part = descend_z(table, alph, G, ep, ell, z, cfg);
        set.members.insert(set.members.end(), part.begin(), part.end());
    }
    std::sort(set.members.begin(), set.members.end(),
              [&](const DescentMember& a, const DescentMember& b) {
                  return member_key(alph, a) < member_key(alph, b);
              });
    return set;
}

struct FirstOccurrence {
    int ell0 = 0;
    bool found = false;
    bool bound_limited = false; ///< search exhausted its bounds without a hit
    std::optional<DescentMember> witness;
};

/// Maximal legal ell with nonempty descent.  The scan restricts to
/// multiplicity-free good-parity candidates, which suffices for the maximum:
/// stripping a redundant block from any member produces a member at a
/// deeper codimension.
inline FirstOccurrence first_occurrence(const EpsilonTable& table, const Alphabet& alph,
                                        const GroupDesc& G, const EnhancedParameter& ep,
                                        const DescentConfig& cfg) {
    DescentConfig scan = cfg;
    scan.discrete_only = true;
    FirstOccurrence fo;
    for (int ell = G.space_dim; ell >= 1; --ell) {
        if (!legal_ell(G, ell)) continue;
        DescentSet set = descend(table, alph, G, ep, ell, scan);
        if (!set.empty()) {
            fo.ell0 = ell;
            fo.found = true;
            fo.witness = set.members.front();
            return fo;
        }
    }
    fo.bound_limited = true;
    return fo;
}

/// psi + k copies of (pad + pad^), the designated trivial-determinant
/// non-self-dual line pair: adds 2k dimensions and leaves the component
/// group and both distinguished characters unchanged.
inline Parameter tower_pad(const Alphabet& alph, const Parameter& psi, int k) {
    if (k < 0) throw std::invalid_argument("negative padding");
    if (k == 0) return psi;
    auto pad = pad_line_index(alph);
    if (!pad) throw std::invalid_argument("alphabet has no designated pad pair");
    auto entries = psi.entries;
    entries.push_back(SummandEntry{*pad, 1, k});
    entries.push_back(SummandEntry{alph.dual_index(*pad), 1, k});
    return make_parameter(alph, entries, psi.type, psi.generic);
}

struct VerifyReport {
    std::string suite;
    long checks = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Tower property: if D_{ell1} is nonempty then D_ell is nonempty for every
/// legal ell <= ell1 of the same parity, witnessed by padding a member of
/// D_{ell1} and independently re-found by the bounded search.
inline VerifyReport verify_tower(const EpsilonTable& table, const Alphabet& alph,
                                 const GroupDesc& G, const EnhancedParameter& ep,
                                 const DescentConfig& cfg) {
    VerifyReport report;
    report.suite = "tower";
    for (int ell1 = G.space_dim; ell1 >= 1; --ell1) {
        if (!legal_ell(G, ell1)) continue;
        DescentSet top = descend(table, alph, G, ep, ell1, cfg);
        if (top.empty()) continue;
        for (int ell = ell1 - 2; ell >= 1; ell -= 2) {
            if (!legal_ell(G, ell)) continue;
            ++report.checks;
            const DescentMember& m = top.members.front();
            // Undo the contragredient, pad, and re-apply it.
            GroupDesc H1 = relevant_pair(G, ell1);
            EnhancedParameter base =
                contragredient_enhanced(table, alph, H1.family, m.dual);
            Parameter padded = tower_pad(alph, base.phi, (ell1 - ell) / 2);
            GroupDesc H = relevant_pair(G, ell);
            // The padded candidate must satisfy the same matching condition.
            auto [c1, c2] = chi_twisted(table, alph, G, H, ep.phi, padded, m.z);
            ComponentGroup cg = component_group(alph, ep.phi, G.family, G.space_dim);
            if (!cg.char_equal(c1, ep.mu)) {
                report.violations.push_back("padding broke the matching condition at ell=" +
                                            std::to_string(ell));
                continue;
            }
            DescentMember expected{
                contragredient_enhanced(table, alph, H.family, EnhancedParameter{padded, c2}),
                m.z};
            expected.dual.mu =
                component_group(alph, expected.dual.phi, H.family, H.space_dim)
                    .canonical(expected.dual.mu);
            DescentConfig wide = cfg;
            wide.discrete_only = false;
            wide.max_mult = std::max(cfg.max_mult, (ell1 - ell) / 2);
            wide.max_summands = cfg.max_summands + 2;
            DescentSet found = descend(table, alph, G, ep, ell, wide);
            bool hit = false;
            for (const auto& member : found.members)
                if (member_key(alph, member) == member_key(alph, expected)) hit = true;
            if (!hit)
                report.violations.push_back("padded witness not re-found at ell=" +
                                            std::to_string(ell));
        }
    }
    return report;
}

/// First-descent discreteness: with the all-bounded candidate class, no
/// member appears above the first occurrence index, and every member of the
/// first descent is multiplicity-free of good parity.
inline VerifyReport verify_discreteness(const EpsilonTable& table, const Alphabet& alph,
                                        const GroupDesc& G, const EnhancedParameter& ep,
                                        const DescentConfig& cfg) {
    VerifyReport report;
    report.suite = "discreteness";
    FirstOccurrence fo = first_occurrence(table, alph, G, ep, cfg);
    DescentConfig wide = cfg;
    wide.discrete_only = false;
    for (int ell = G.space_dim; ell >= 1; --ell) {
        if (!legal_ell(G, ell)) continue;
        if (fo.found && ell < fo.ell0) break;
        ++report.checks;
        DescentSet set = descend(table, alph, G, ep, ell, wide);
        if (!fo.found || ell > fo.ell0) {
            if (!set.empty())
                report.violations.push_back(
                    "all-bounded search found members above the first occurrence at ell=" +
                    std::to_string(ell));
            continue;
        }
        for (const auto& m : set.members) {
            if (!is_discrete(alph, m.dual.phi))
                report.violations.push_back("non-discrete member in the first descent: " +
                                            parameter_key(alph, m.dual.phi));
        }
    }
    return report;
}

} // namespace lpdescent
