#pragma once

#include <chrono>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "lpdescent/random_case.hpp"

namespace lpdescent {

/// Randomized verification suites over reproducible cases.  Each case is
/// generated from a derived seed, so any violation can be replayed from the
/// (suite seed, case index) pair alone.
struct Violation {
    long index = 0;
    std::uint64_t seed = 0;
    std::string family;
    std::string message;
};

struct SuiteReport {
    std::string suite;
    long cases = 0;
    std::vector<Violation> violations;
    double wall_ms = 0;

    bool ok() const { return violations.empty(); }
};

namespace detail {

inline const std::vector<Family>& family_slots() {
    static const std::vector<Family> slots = {Family::Sp, Family::Mp, Family::SO,
                                              Family::SO, Family::U};
    return slots;
}

/// Deterministic fan-out: the outcome must not depend on the job count.
inline SuiteReport run_suite(const std::string& name, long cases, int jobs,
                             const std::function<std::vector<std::string>(
                                 long index, Family fam, std::uint64_t case_seed)>& body,
                             std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = name;
    report.cases = cases;
    if (jobs < 1) jobs = 1;

    auto run_one = [&](long i) {
        Family fam = family_slots()[static_cast<std::size_t>(i) % family_slots().size()];
        std::uint64_t cs = SplitMix64::derive(seed, static_cast<std::uint64_t>(i));
        (void)fam;
        std::vector<Violation> out;
        try {
            for (auto& msg : body(i, fam, cs))
                out.push_back(Violation{i, cs, family_name(fam), std::move(msg)});
        } catch (const std::exception& e) {
            out.push_back(Violation{i, cs, family_name(fam),
                                    std::string("exception: ") + e.what()});
        }
        return out;
    };

    if (jobs == 1) {
        for (long i = 0; i < cases; ++i) {
            auto v = run_one(i);
            report.violations.insert(report.violations.end(), v.begin(), v.end());
        }
    } else {
        std::vector<std::future<std::vector<Violation>>> futures;
        for (int w = 0; w < jobs; ++w) {
            futures.push_back(std::async(std::launch::async, [&, w]() {
                std::vector<Violation> local;
                for (long i = w; i < cases; i += jobs) {
                    auto v = run_one(i);
                    local.insert(local.end(), v.begin(), v.end());
                }
                return local;
            }));
        }
        for (auto& f : futures) {
            auto v = f.get();
            report.violations.insert(report.violations.end(), v.begin(), v.end());
        }
        std::sort(report.violations.begin(), report.violations.end(),
                  [](const Violation& a, const Violation& b) { return a.index < b.index; });
    }
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return report;
}

inline CaseBounds suite_bounds(bool reachable, int max_dim = 6) {
    CaseBounds b;
    b.reachable_mu = reachable;
    b.max_group_dim = max_dim;
    return b;
}

/// Slot-aware bounds: the two orthogonal slots carry opposite dim parities,
/// so a suite of 5k cases runs k per family with SO split odd/even.
inline CaseBounds slot_bounds(long index, bool reachable, int max_dim = 6) {
    CaseBounds b = suite_bounds(reachable, max_dim);
    long slot = index % static_cast<long>(family_slots().size());
    if (family_slots()[static_cast<std::size_t>(slot)] == Family::SO)
        b.so_dim_parity = slot == 2 ? 1 : 0;
    return b;
}

} // namespace detail

/// Component-group sizing: |S_phi| is 2^{#good} or 2^{#good - 1}, with the
/// even-weight membership rule, cross-checked by exhaustive enumeration.
inline SuiteReport suite_component(std::uint64_t seed, long cases, int jobs = 1) {
    return detail::run_suite(
        "component", cases, jobs,
        [](long i, Family fam, std::uint64_t cs) {
            std::vector<std::string> bad;
            CaseFile c = generate_random_case(fam, cs, detail::slot_bounds(i, false));
            ComponentGroup cg =
                component_group(c.alphabet, c.phi, c.group.family, c.group.space_dim);
            long expected_rank = cg.rank();
            long order = cg.order();
            if (order != (1L << expected_rank) && order != (1L << expected_rank) / 2)
                bad.push_back("order outside 2^k / 2^{k-1}");
            auto els = cg.elements();
            if (static_cast<long>(els.size()) != order)
                bad.push_back("membership enumeration disagrees with the order");
            for (const auto& e : els) {
                if (!cg.constrained()) break;
                long weighted = 0;
                for (std::size_t i = 0; i < e.size(); ++i)
                    weighted += e[i] * cg.dims()[i];
                if (weighted % 2 != 0) bad.push_back("member violates the parity rule");
            }
            bool rule = c.group.family == Family::Sp ||
                        (c.group.family == Family::SO && c.group.space_dim % 2 == 0);
            bool any_odd = false;
            for (int d : cg.dims()) any_odd = any_odd || d % 2;
            long predicted = (rule && any_odd) ? (1L << expected_rank) / 2
                                               : (1L << expected_rank);
            if (order != predicted) bad.push_back("order does not match the case rule");
            if (static_cast<long>(cg.characters().size()) != order)
                bad.push_back("character count differs from the order");
            return bad;
        },
        seed);
}

/// Contragredient involution and its eta-compatibility.
inline SuiteReport suite_contragredient(std::uint64_t seed, long cases, int jobs = 1) {
    return detail::run_suite(
        "contragredient", cases, jobs,
        [](long i, Family fam, std::uint64_t cs) {
            std::vector<std::string> bad;
            CaseFile c = generate_random_case(fam, cs, detail::slot_bounds(i, false));
            ComponentGroup cg =
                component_group(c.alphabet, c.phi, c.group.family, c.group.space_dim);
            EnhancedParameter ep{c.phi, c.mu};
            auto d1 = contragredient_enhanced(c.table, c.alphabet, fam, ep);
            auto d2 = contragredient_enhanced(c.table, c.alphabet, fam, d1);
            if (!(d2.phi == ep.phi) || !cg.char_equal(d2.mu, ep.mu))
                bad.push_back("contragredient is not an involution");
            for (SquareClass a : c.ext.norm_class_reps()) {
                EnhancedParameter tw{
                    c.phi,
                    ComponentGroup::mul(c.mu, eta(c.alphabet, c.table, fam, c.phi, a))};
                auto lhs = contragredient_enhanced(c.table, c.alphabet, fam, tw);
                auto rhs = contragredient_enhanced(c.table, c.alphabet, fam, ep);
                auto rhs_mu = ComponentGroup::mul(
                    rhs.mu, eta(c.alphabet, c.table, fam, rhs.phi, a));
                ComponentGroup cgd = component_group(c.alphabet, lhs.phi, c.group.family,
                                                     c.group.space_dim);
                if (!(lhs.phi == rhs.phi) || !cgd.char_equal(lhs.mu, rhs_mu))
                    bad.push_back("dual does not commute with the eta twist");
            }
            return bad;
        },
        seed);
}

/// Distinguished-pair uniqueness in the product of packets.
inline SuiteReport suite_distinguished_pair(std::uint64_t seed, long cases, int jobs = 1) {
    return detail::run_suite(
        "dist-pair", cases, jobs,
        [](long i, Family fam, std::uint64_t cs) {
            std::vector<std::string> bad;
            CaseFile c = generate_random_case(fam, cs, detail::slot_bounds(i, false));
            SplitMix64 rng(SplitMix64::derive(cs, 1234));
            std::vector<int> legal;
            for (int ell = 1; ell <= c.group.space_dim; ++ell)
                if (legal_ell(c.group, ell)) legal.push_back(ell);
            if (legal.empty()) return bad;
            int ell = legal[rng.below(legal.size())];
            GroupDesc H = relevant_pair(c.group, ell);
            DescentConfig scan = c.config;
            scan.discrete_only = true;
            auto cands = candidate_parameters(
                c.alphabet, H, descent_candidate_type(c.group, H, c.phi), scan);
            if (cands.empty()) return bad;
            const Parameter& psi = cands[rng.below(cands.size())];
            auto zs = c.ext.norm_class_reps();
            SquareClass z = zs[rng.below(zs.size())];
            ComponentGroup cg1 =
                component_group(c.alphabet, c.phi, c.group.family, c.group.space_dim);
            ComponentGroup cg2 =
                component_group(c.alphabet, psi, H.family, H.space_dim);
            long hits = 0;
            for (const auto& mu : cg1.characters())
                for (const auto& nu : cg2.characters())
                    hits += multiplicity_tempered(c.table, c.alphabet, c.group, H,
                                                  {c.phi, mu}, {psi, nu}, z);
            if (hits != 1) {
                std::ostringstream os;
                os << "expected exactly one distinguished pair, found " << hits;
                bad.push_back(os.str());
            }
            return bad;
        },
        seed);
}

/// Tower property with independently re-found padded witnesses.
inline SuiteReport suite_tower(std::uint64_t seed, long cases, int jobs = 1) {
    return detail::run_suite(
        "tower", cases, jobs,
        [](long i, Family fam, std::uint64_t cs) {
            CaseFile c = generate_random_case(fam, cs, detail::slot_bounds(i, true, 5));
            auto report = verify_tower(c.table, c.alphabet, c.group, {c.phi, c.mu}, c.config);
            return report.violations;
        },
        seed);
}

/// Discreteness of the first descent under the all-bounded candidate class.
inline SuiteReport suite_discreteness(std::uint64_t seed, long cases, int jobs = 1) {
    return detail::run_suite(
        "discreteness", cases, jobs,
        [](long i, Family fam, std::uint64_t cs) {
            CaseFile c = generate_random_case(fam, cs, detail::slot_bounds(i, true, 5));
            auto report =
                verify_discreteness(c.table, c.alphabet, c.group, {c.phi, c.mu}, c.config);
            return report.violations;
        },
        seed);
}

/// Spectral first occurrence equals the descent first occurrence.
inline SuiteReport suite_first_occurrence(std::uint64_t seed, long cases, int jobs = 1) {
    return detail::run_suite(
        "foi", cases, jobs,
        [](long i, Family fam, std::uint64_t cs) {
            std::vector<std::string> bad;
            CaseFile c = generate_random_case(fam, cs, detail::slot_bounds(i, true, 5));
            EnhancedParameter ep{c.phi, c.mu};
            auto fa = first_occurrence(c.table, c.alphabet, c.group, ep, c.config);
            auto fs = spectral_first_occurrence(c.table, c.alphabet, c.group, ep, c.config);
            if (fa.found != fs.found)
                bad.push_back("pipelines disagree about the existence of an occurrence");
            else if (fa.found && fa.ell0 != fs.fs) {
                std::ostringstream os;
                os << "arithmetic index " << fa.ell0 << " != spectral index " << fs.fs;
                bad.push_back(os.str());
            }
            return bad;
        },
        seed);
}

/// The first descent spectrum consists exactly of the contragredients of
/// the first arithmetic descent, all discrete.
inline SuiteReport suite_spectrum_identification(std::uint64_t seed, long cases,
                                                 int jobs = 1) {
    return detail::run_suite(
        "spectrum-id", cases, jobs,
        [](long i, Family fam, std::uint64_t cs) {
            std::vector<std::string> bad;
            CaseFile c = generate_random_case(fam, cs, detail::slot_bounds(i, true, 5));
            EnhancedParameter ep{c.phi, c.mu};
            auto fds = first_descent_spectrum(c.table, c.alphabet, c.group, ep, c.config);
            auto fa = first_occurrence(c.table, c.alphabet, c.group, ep, c.config);
            if (fds.occurrence.found != fa.found) {
                bad.push_back("pipelines disagree about the existence of an occurrence");
                return bad;
            }
            if (!fa.found) return bad;
            for (auto& v : fds.violations) bad.push_back(v);
            DescentSet desc =
                descend(c.table, c.alphabet, c.group, ep, fa.ell0, c.config);
            const auto& members = fds.occurrence.first_spectrum.members;
            if (members.size() != desc.members.size()) {
                bad.push_back("spectrum and descent have different sizes at the maximum");
                return bad;
            }
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (member_key(c.alphabet, DescentMember{members[i].dual, members[i].z}) !=
                    member_key(c.alphabet, desc.members[i]))
                    bad.push_back("spectrum member differs from the descent member");
            }
            return bad;
        },
        seed);
}

/// Multiplicity is unchanged when GL blocks are appended to sigma.
inline SuiteReport suite_gl_padding(std::uint64_t seed, long cases, int jobs = 1) {
    return detail::run_suite(
        "glpad", cases, jobs,
        [](long i, Family fam, std::uint64_t cs) {
            std::vector<std::string> bad;
            CaseFile c = generate_random_case(fam, cs, detail::slot_bounds(i, false));
            SplitMix64 rng(SplitMix64::derive(cs, 77));
            std::vector<int> legal;
            for (int ell = 1; ell <= c.group.space_dim; ++ell)
                if (legal_ell(c.group, ell)) legal.push_back(ell);
            if (legal.empty()) return bad;
            int p1 = legal[rng.below(legal.size())];
            GroupDesc H = relevant_pair(c.group, p1);
            DescentConfig scan = c.config;
            scan.discrete_only = true;
            auto cands = candidate_parameters(
                c.alphabet, H, descent_candidate_type(c.group, H, c.phi), scan);
            if (cands.empty()) return bad;
            const Parameter& psi = cands[rng.below(cands.size())];
            ComponentGroup cg2 = component_group(c.alphabet, psi, H.family, H.space_dim);
            auto nus = cg2.characters();
            const CharacterVec& nu = nus[rng.below(nus.size())];
            auto zs = c.ext.norm_class_reps();
            SquareClass z = zs[rng.below(zs.size())];

            StandardModuleData pi = StandardModuleData::tempered({c.phi, c.mu});
            StandardModuleData sigma = StandardModuleData::tempered({psi, nu});
            int base = multiplicity(c.table, c.alphabet, c.group, H, pi, sigma, z);
            int pad = 1 + static_cast<int>(rng.below(2));
            GroupDesc Hpad = H;
            Hpad.space_dim += 2 * pad;
            StandardModuleData padded = sigma;
            padded.exponents = {0.5 + static_cast<double>(rng.below(3))};
            padded.blocks = {GLBlock{pad, "tau"}};
            padded.genuine = H.family == Family::Mp;
            if (Hpad.space_dim > c.group.space_dim) return bad;
            int shifted = multiplicity(c.table, c.alphabet, c.group, Hpad, pi, padded, z);
            if (base != shifted)
                bad.push_back("appending a GL block changed the multiplicity");
            return bad;
        },
        seed);
}

inline SuiteReport run_named_suite(const std::string& name, std::uint64_t seed, long cases,
                                   int jobs) {
    if (name == "component") return suite_component(seed, cases, jobs);
    if (name == "contragredient") return suite_contragredient(seed, cases, jobs);
    if (name == "dist-pair") return suite_distinguished_pair(seed, cases, jobs);
    if (name == "tower") return suite_tower(seed, cases, jobs);
    if (name == "discreteness") return suite_discreteness(seed, cases, jobs);
    if (name == "foi") return suite_first_occurrence(seed, cases, jobs);
    if (name == "spectrum-id") return suite_spectrum_identification(seed, cases, jobs);
    if (name == "glpad") return suite_gl_padding(seed, cases, jobs);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "component", "contragredient", "dist-pair", "tower",
        "discreteness", "foi", "spectrum-id", "glpad"};
    return names;
}

namespace io {

inline json report_to_json(const SuiteReport& r) {
    json v = json::array();
    for (const auto& x : r.violations)
        v.push_back(json{{"case", x.index},
                         {"seed", x.seed},
                         {"family", x.family},
                         {"message", x.message}});
    return json{{"suite", r.suite},
                {"cases", r.cases},
                {"violations", v},
                {"ok", r.ok()},
                {"wall_ms", r.wall_ms}};
}

} // namespace io

} // namespace lpdescent
