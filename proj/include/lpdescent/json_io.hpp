#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "lpdescent/spectrum.hpp"

namespace lpdescent {

using nlohmann::json;

/// A self-contained problem instance: field data, alphabet, declared sign
/// table, group, enhanced parameter, and search configuration.  Canonical
/// JSON schema, versioned with "schema": 1.
struct CaseFile {
    QuadExt ext;
    Alphabet alphabet;
    EpsilonTable table;
    GroupDesc group;
    Parameter phi;
    CharacterVec mu;
    SquareClass whittaker;
    DescentConfig config;
    std::uint64_t seed = 0;
};

namespace io {

inline json field_to_json(const LocalField& F) {
    if (F.is_real()) return json{{"kind", "real"}};
    return json{{"kind", "p-adic"}, {"p", F.p()}};
}

inline LocalField field_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "real") return LocalField::real();
    if (kind == "p-adic") return LocalField::p_adic(j.at("p").get<long>());
    throw std::invalid_argument("unknown field kind '" + kind + "'");
}

inline json ext_to_json(const QuadExt& e) {
    json j;
    j["field"] = field_to_json(e.field());
    if (!e.is_split()) j["d"] = e.field().tag(e.d());
    return j;
}

inline QuadExt ext_from_json(const json& j) {
    LocalField F = field_from_json(j.at("field"));
    if (!j.contains("d") || j.at("d").is_null()) return QuadExt::trivial(F);
    return QuadExt::quadratic(F, F.parse_tag(j.at("d").get<std::string>()));
}

inline Duality duality_from_name(const std::string& s) {
    if (s == "orthogonal") return Duality::Orthogonal;
    if (s == "symplectic") return Duality::Symplectic;
    if (s == "conj-orthogonal") return Duality::ConjOrthogonal;
    if (s == "conj-symplectic") return Duality::ConjSymplectic;
    if (s == "non-self-dual") return Duality::NonSelfDual;
    throw std::invalid_argument("unknown duality '" + s + "'");
}

inline json alphabet_to_json(const Alphabet& alph) {
    const auto& F = alph.ext().field();
    json arr = json::array();
    for (const auto& m : alph.members()) {
        json e;
        e["id"] = m.id;
        e["dim"] = m.dim;
        e["duality"] = duality_name(m.duality);
        if (alph.ext().is_split()) e["det"] = F.tag(m.det);
        if (m.dual_id != m.id) e["dual"] = m.dual_id;
        if (!m.twists.empty()) e["twists"] = m.twists;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline Alphabet alphabet_from_json(const QuadExt& ext, const json& arr) {
    const auto& F = ext.field();
    std::vector<FormalIrr> members;
    for (const auto& e : arr) {
        FormalIrr m;
        m.id = e.at("id").get<std::string>();
        m.dim = e.at("dim").get<int>();
        m.duality = duality_from_name(e.at("duality").get<std::string>());
        m.det = e.contains("det") ? F.parse_tag(e.at("det").get<std::string>()) : F.one();
        m.dual_id = e.contains("dual") ? e.at("dual").get<std::string>() : m.id;
        if (e.contains("twists")) m.twists = e.at("twists").get<std::vector<std::string>>();
        members.push_back(std::move(m));
    }
    return Alphabet(ext, std::move(members));
}

inline json table_to_json(const EpsilonTable& t) {
    json pairs = json::array();
    for (const auto& [k, v] : t.pairs()) pairs.push_back(json::array({k.first, k.second, v}));
    json singles = json::array();
    for (const auto& [k, v] : t.singles()) singles.push_back(json::array({k, v}));
    return json{{"eps_pairs", pairs}, {"eps_singles", singles}, {"regular", t.regular}};
}

inline EpsilonTable table_from_json(const json& j) {
    EpsilonTable t;
    t.regular = j.value("regular", true);
    for (const auto& e : j.at("eps_pairs"))
        t.set_pair(e.at(0).get<std::string>(), e.at(1).get<std::string>(), e.at(2).get<int>());
    if (j.contains("eps_singles"))
        for (const auto& e : j.at("eps_singles"))
            t.set_single(e.at(0).get<std::string>(), e.at(1).get<int>());
    return t;
}

inline std::string family_tag(Family f) { return family_name(f); }

inline Family family_from_name(const std::string& s) {
    if (s == "SO") return Family::SO;
    if (s == "Sp") return Family::Sp;
    if (s == "Mp") return Family::Mp;
    if (s == "U") return Family::U;
    throw std::invalid_argument("unknown family '" + s + "'");
}

inline json space_to_json(const EpsHermSpace& s) {
    const auto& F = s.ext.field();
    json j;
    j["epsilon"] = s.eps;
    j["dim"] = s.dim;
    if (!s.is_symplectic()) j["disc"] = F.tag(s.disc);
    if (s.is_quadratic()) j["hasse"] = s.hasse;
    return j;
}

inline json space_to_json_full(const EpsHermSpace& s) {
    json j = space_to_json(s);
    j["witt"] = s.witt;
    j["anisotropic_dim"] = s.anisotropic_dim();
    if (!s.is_symplectic()) j["det"] = s.ext.field().tag(s.det());
    return j;
}

inline EpsHermSpace space_from_json(const QuadExt& ext, const json& j) {
    const auto& F = ext.field();
    std::optional<SquareClass> disc;
    std::optional<int> hasse;
    if (j.contains("disc")) disc = F.parse_tag(j.at("disc").get<std::string>());
    if (j.contains("hasse")) hasse = j.at("hasse").get<int>();
    return classify_space(ext, j.at("epsilon").get<int>(), j.at("dim").get<int>(), disc, hasse);
}

inline json group_to_json(const GroupDesc& g) {
    json j;
    j["family"] = family_tag(g.family);
    j["dim"] = g.space_dim;
    if (g.space) j["space"] = space_to_json(*g.space);
    if (!g.quasisplit) j["quasisplit"] = false;
    return j;
}

inline GroupDesc group_from_json(const QuadExt& ext, const json& j) {
    GroupDesc g;
    g.family = family_from_name(j.at("family").get<std::string>());
    g.space_dim = j.at("dim").get<int>();
    g.ext = ext;
    if (j.contains("space")) g.space = space_from_json(ext, j.at("space"));
    g.quasisplit = j.value("quasisplit", true);
    require_family_field(g);
    return g;
}

inline std::string type_name(Duality d) { return duality_name(d); }

inline json parameter_to_json(const Alphabet& alph, const Parameter& p) {
    json summands = json::array();
    for (const auto& e : p.entries)
        summands.push_back(json::array({alph.member(e.member).id, e.b, e.mult}));
    json j;
    j["type"] = type_name(p.type);
    j["summands"] = summands;
    if (!p.generic) j["generic"] = false;
    return j;
}

inline Parameter parameter_from_json(const Alphabet& alph, const json& j) {
    std::vector<SummandEntry> entries;
    for (const auto& e : j.at("summands"))
        entries.push_back(SummandEntry{alph.index_of(e.at(0).get<std::string>()),
                                       e.at(1).get<int>(), e.at(2).get<int>()});
    return make_parameter(alph, std::move(entries),
                          duality_from_name(j.at("type").get<std::string>()),
                          j.value("generic", true));
}

inline json character_to_json(const Alphabet& alph, const Parameter& p,
                              const CharacterVec& mu) {
    auto good = classify_summands(alph, p).good;
    if (good.size() != mu.signs.size())
        throw std::invalid_argument("character does not fit the parameter");
    json j = json::object();
    for (std::size_t k = 0; k < good.size(); ++k)
        j[entry_label(alph, p.entries[static_cast<std::size_t>(good[k])])] = mu.signs[k];
    return j;
}

inline CharacterVec character_from_json(const Alphabet& alph, const Parameter& p,
                                        const json& j) {
    auto good = classify_summands(alph, p).good;
    CharacterVec mu{std::vector<int>(good.size(), 1)};
    for (std::size_t k = 0; k < good.size(); ++k) {
        std::string label = entry_label(alph, p.entries[static_cast<std::size_t>(good[k])]);
        if (!j.contains(label))
            throw std::invalid_argument("character value missing for " + label);
        int v = j.at(label).get<int>();
        if (v != 1 && v != -1) throw std::invalid_argument("character values must be +-1");
        mu.signs[k] = v;
    }
    return mu;
}

inline json config_to_json(const DescentConfig& c, const QuadExt& ext) {
    json j;
    j["max_mult"] = c.max_mult;
    j["max_summands"] = c.max_summands;
    if (c.max_b) j["max_b"] = c.max_b;
    if (c.max_summand_dim) j["max_dim"] = c.max_summand_dim;
    j["candidates"] = c.discrete_only ? "discrete" : "all";
    if (c.z_list) {
        json zs = json::array();
        for (SquareClass z : *c.z_list) zs.push_back(ext.field().tag(z));
        j["z"] = zs;
    }
    return j;
}

inline DescentConfig config_from_json(const QuadExt& ext, const json& j) {
    DescentConfig c;
    if (j.is_null()) return c;
    c.max_mult = j.value("max_mult", 2);
    c.max_summands = j.value("max_summands", 8);
    c.max_b = j.value("max_b", 0);
    c.max_summand_dim = j.value("max_dim", 0);
    std::string cls = j.value("candidates", "discrete");
    if (cls != "discrete" && cls != "all")
        throw std::invalid_argument("candidate class must be 'discrete' or 'all'");
    c.discrete_only = cls == "discrete";
    if (j.contains("z")) {
        std::vector<SquareClass> zs;
        for (const auto& t : j.at("z"))
            zs.push_back(ext.normalize(ext.field().parse_tag(t.get<std::string>())));
        c.z_list = zs;
    }
    return c;
}

inline json casefile_to_json(const CaseFile& c) {
    json j;
    j["schema"] = 1;
    j["ext"] = ext_to_json(c.ext);
    j["alphabet"] = alphabet_to_json(c.alphabet);
    j["epsilon"] = table_to_json(c.table);
    j["group"] = group_to_json(c.group);
    j["parameter"] = parameter_to_json(c.alphabet, c.phi);
    j["mu"] = character_to_json(c.alphabet, c.phi, c.mu);
    j["whittaker"] = c.ext.field().tag(c.whittaker);
    j["config"] = config_to_json(c.config, c.ext);
    j["seed"] = c.seed;
    return j;
}

inline CaseFile casefile_from_json(const json& j) {
    if (j.value("schema", 0) != 1)
        throw std::invalid_argument("unsupported case schema (expected \"schema\": 1)");
    QuadExt ext = ext_from_json(j.at("ext"));
    Alphabet alph = alphabet_from_json(ext, j.at("alphabet"));
    EpsilonTable table = table_from_json(j.at("epsilon"));
    auto bad = validate_table(table, alph);
    if (!bad.empty())
        throw std::invalid_argument("root-number table incomplete: " + bad.front());
    GroupDesc g = group_from_json(ext, j.at("group"));
    Parameter phi = parameter_from_json(alph, j.at("parameter"));
    validate_for_group(alph, phi, g);
    CharacterVec mu = character_from_json(alph, phi, j.at("mu"));
    SquareClass a = j.contains("whittaker")
                        ? ext.field().parse_tag(j.at("whittaker").get<std::string>())
                        : ext.field().one();
    DescentConfig cfg = config_from_json(ext, j.contains("config") ? j.at("config") : json());
    CaseFile out{ext, std::move(alph), std::move(table), g, std::move(phi), std::move(mu), a,
                 cfg, j.value("seed", std::uint64_t{0})};
    return out;
}

inline json member_to_json(const Alphabet& alph, const DescentMember& m) {
    json j;
    j["z"] = alph.ext().field().tag(m.z);
    j["parameter"] = parameter_to_json(alph, m.dual.phi);
    j["nu"] = character_to_json(alph, m.dual.phi, m.dual.mu);
    return j;
}

inline json descent_set_to_json(const Alphabet& alph, const DescentSet& s,
                                bool bound_limited = false) {
    json members = json::array();
    for (const auto& m : s.members) members.push_back(member_to_json(alph, m));
    return json{{"ell", s.ell}, {"members", members}, {"count", s.members.size()},
                {"bound_limited", bound_limited}};
}

inline json orbit_to_json(const Alphabet& alph, const OrbitData& o) {
    json j;
    j["p1"] = o.p1;
    j["line_class"] = alph.ext().field().tag(o.line_class);
    j["descended"] = space_to_json_full(o.descended);
    return j;
}

inline json spectrum_member_to_json(const Alphabet& alph, const SpectrumMember& m) {
    json j;
    j["z"] = alph.ext().field().tag(m.z);
    j["line_class"] = alph.ext().field().tag(m.line_class);
    j["parameter"] = parameter_to_json(alph, m.dual.phi);
    j["nu"] = character_to_json(alph, m.dual.phi, m.dual.mu);
    if (m.orbit) j["orbit"] = orbit_to_json(alph, *m.orbit);
    return j;
}

inline json spectrum_to_json(const Alphabet& alph, const SpectrumResult& r) {
    json members = json::array();
    for (const auto& m : r.members) members.push_back(spectrum_member_to_json(alph, m));
    return json{{"p1", r.p1},
                {"members", members},
                {"count", r.members.size()},
                {"padded_occurrences", r.padded_occurrences}};
}

} // namespace io

} // namespace lpdescent
