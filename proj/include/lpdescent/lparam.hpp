#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpdescent/hermitian.hpp"
#include "lpdescent/local_field.hpp"

namespace lpdescent {

/// Formal Weil-Deligne parameters for classical groups: a parameter is a
/// multiset of simple summands rho (x) mu_b, where rho is an abstract
/// irreducible from a declared alphabet.  The alphabet carries exactly the
/// data the character formulas consume: dimension, (conjugate) self-duality
/// type, determinant square class, duals, and quadratic twists.

enum class Duality { Orthogonal, Symplectic, ConjOrthogonal, ConjSymplectic, NonSelfDual };

inline bool is_self_dual(Duality d) { return d != Duality::NonSelfDual; }

inline bool is_conjugate(Duality d) {
    return d == Duality::ConjOrthogonal || d == Duality::ConjSymplectic;
}

inline int duality_sign(Duality d) {
    switch (d) {
        case Duality::Orthogonal:
        case Duality::ConjOrthogonal: return 1;
        case Duality::Symplectic:
        case Duality::ConjSymplectic: return -1;
        default: throw std::invalid_argument("non-self-dual type has no sign");
    }
}

inline Duality duality_from_sign(bool conj, int sign) {
    if (conj) return sign == 1 ? Duality::ConjOrthogonal : Duality::ConjSymplectic;
    return sign == 1 ? Duality::Orthogonal : Duality::Symplectic;
}

inline std::string duality_name(Duality d) {
    switch (d) {
        case Duality::Orthogonal: return "orthogonal";
        case Duality::Symplectic: return "symplectic";
        case Duality::ConjOrthogonal: return "conj-orthogonal";
        case Duality::ConjSymplectic: return "conj-symplectic";
        case Duality::NonSelfDual: return "non-self-dual";
    }
    return "?";
}

struct FormalIrr {
    std::string id;
    int dim = 1;
    Duality duality = Duality::Orthogonal;
    SquareClass det;               ///< meaningful when E = F
    std::string dual_id;           ///< (conjugate) dual partner; self when self-dual
    std::vector<std::string> twists; ///< twist by each square class, indexed by class bits (E = F)
};

class Alphabet {
public:
    Alphabet() = default;

    Alphabet(QuadExt ext, std::vector<FormalIrr> members)
        : ext_(std::move(ext)), members_(std::move(members)) {
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (!index_.emplace(members_[i].id, static_cast<int>(i)).second)
                throw std::invalid_argument("duplicate alphabet id " + members_[i].id);
        }
        validate();
    }

    const QuadExt& ext() const { return ext_; }
    int size() const { return static_cast<int>(members_.size()); }
    const FormalIrr& member(int i) const { return members_.at(static_cast<std::size_t>(i)); }
    const std::vector<FormalIrr>& members() const { return members_; }

    int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw std::invalid_argument("unknown alphabet id " + id);
        return it->second;
    }
    bool has(const std::string& id) const { return index_.count(id) > 0; }

    int dual_index(int i) const { return index_of(member(i).dual_id); }

    int twist_index(int i, SquareClass z) const {
        const auto& F = ext_.field();
        if (!ext_.is_split()) {
            if (ext_.normalize(z) == ext_.normalize(F.one())) return i;
            throw std::invalid_argument("twists are only defined over E = F");
        }
        if (z == F.one()) return i;
        const auto& tw = member(i).twists;
        if (tw.size() != static_cast<std::size_t>(F.class_count()))
            throw std::invalid_argument("alphabet member " + member(i).id +
                                        " is not closed under twisting");
        return index_of(tw[z.bits]);
    }

    std::optional<int> trivial_char_index() const {
        const auto& F = ext_.field();
        for (int i = 0; i < size(); ++i) {
            const auto& m = member(i);
            if (m.dim == 1 && m.duality == Duality::Orthogonal && m.det == F.one())
                return i;
        }
        return std::nullopt;
    }

private:
    void validate() const {
        const auto& F = ext_.field();
        for (int i = 0; i < size(); ++i) {
            const auto& m = member(i);
            if (m.id.empty()) throw std::invalid_argument("empty alphabet id");
            if (m.dim < 1) throw std::invalid_argument("alphabet member of dimension < 1");
            if (ext_.is_split() && is_conjugate(m.duality))
                throw std::invalid_argument("conjugate duality requires E != F");
            if (!ext_.is_split() && (m.duality == Duality::Orthogonal ||
                                     m.duality == Duality::Symplectic))
                throw std::invalid_argument("plain duality requires E = F");
            if (m.duality == Duality::Symplectic) {
                if (m.dim % 2 != 0)
                    throw std::invalid_argument("symplectic irreducibles have even dimension");
                if (m.det != F.one())
                    throw std::invalid_argument("symplectic irreducibles have trivial determinant");
            }
            int d = dual_index(i);
            const auto& dm = member(d);
            if ((is_self_dual(m.duality)) != (d == i))
                throw std::invalid_argument("dual pointer inconsistent with duality for " + m.id);
            if (dm.dim != m.dim || dm.duality != m.duality || !(dm.det == m.det))
                throw std::invalid_argument("dual partner mismatch for " + m.id);
            if (dual_index(d) != i)
                throw std::invalid_argument("dual is not an involution at " + m.id);
            if (ext_.is_split() && !m.twists.empty()) {
                if (m.twists.size() != static_cast<std::size_t>(F.class_count()))
                    throw std::invalid_argument("twist table has the wrong size at " + m.id);
                for (SquareClass z : F.square_classes()) {
                    int t = index_of(m.twists[z.bits]);
                    const auto& tm = member(t);
                    if (tm.dim != m.dim || tm.duality != m.duality)
                        throw std::invalid_argument("twist changes dim/duality at " + m.id);
                    if (!(tm.det == F.mul(m.det, F.pow(z, m.dim))))
                        throw std::invalid_argument("twist determinant bookkeeping fails at " +
                                                    m.id);
                    if (twist_index(t, z) != i)
                        throw std::invalid_argument("twisting is not an involution at " + m.id);
                    if (dual_index(t) != twist_index(dual_index(i), z))
                        throw std::invalid_argument("twist does not commute with dual at " + m.id);
                }
            }
        }
    }

    QuadExt ext_;
    std::vector<FormalIrr> members_;
    std::map<std::string, int> index_;
};

/// Type of rho (x) mu_b: mu_b is orthogonal for odd b and symplectic for
/// even b, so each tensor flips the sign (-1)^{b-1}.
inline Duality summand_duality(const Alphabet& alph, int member, int b) {
    const auto& m = alph.member(member);
    if (b < 1) throw std::invalid_argument("b must be >= 1");
    if (!is_self_dual(m.duality)) return Duality::NonSelfDual;
    int sign = duality_sign(m.duality) * (b % 2 == 1 ? 1 : -1);
    return duality_from_sign(is_conjugate(m.duality), sign);
}

struct SummandEntry {
    int member = 0;
    int b = 1;
    int mult = 1;

    friend bool operator==(const SummandEntry&, const SummandEntry&) = default;
    friend auto operator<=>(const SummandEntry&, const SummandEntry&) = default;
};

struct Parameter {
    std::vector<SummandEntry> entries; ///< canonically sorted by (member, b)
    Duality type = Duality::Orthogonal;
    bool generic = true;

    bool empty() const { return entries.empty(); }
    friend bool operator==(const Parameter& a, const Parameter& b) {
        return a.entries == b.entries && a.type == b.type;
    }
};

inline Parameter make_parameter(const Alphabet& alph, std::vector<SummandEntry> entries,
                                Duality type, bool generic = true) {
    if (!is_self_dual(type)) throw std::invalid_argument("parameter type must be self-dual");
    if (alph.ext().is_split() == is_conjugate(type))
        throw std::invalid_argument("parameter type inconsistent with E");
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.member, a.b) < std::tie(b.member, b.b);
    });
    std::vector<SummandEntry> merged;
    for (const auto& e : entries) {
        if (e.mult < 1 || e.b < 1) throw std::invalid_argument("bad summand entry");
        (void)alph.member(e.member);
        if (!merged.empty() && merged.back().member == e.member && merged.back().b == e.b)
            merged.back().mult += e.mult;
        else
            merged.push_back(e);
    }
    return Parameter{std::move(merged), type, generic};
}

inline int param_dim(const Alphabet& alph, const Parameter& p) {
    int d = 0;
    for (const auto& e : p.entries) d += alph.member(e.member).dim * e.b * e.mult;
    return d;
}

inline SquareClass param_det(const Alphabet& alph, const Parameter& p) {
    const auto& F = alph.ext().field();
    SquareClass d = F.one();
    for (const auto& e : p.entries)
        d = F.mul(d, F.pow(alph.member(e.member).det, static_cast<long>(e.b) * e.mult));
    return d;
}

inline std::string entry_label(const Alphabet& alph, const SummandEntry& e) {
    return alph.member(e.member).id + "⊗μ" + std::to_string(e.b);
}

/// Partition of the summand indices by parity type.
struct SummandClasses {
    std::vector<int> good;                  ///< self-dual of the parameter's type
    std::vector<int> bad;                   ///< self-dual of the opposite type
    std::vector<std::pair<int, int>> nsd;   ///< paired non-self-dual entries
};

inline SummandClasses classify_summands(const Alphabet& alph, const Parameter& p) {
    SummandClasses out;
    std::vector<bool> used(p.entries.size(), false);
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        if (used[i]) continue;
        const auto& e = p.entries[i];
        Duality d = summand_duality(alph, e.member, e.b);
        if (is_self_dual(d)) {
            (d == p.type ? out.good : out.bad).push_back(static_cast<int>(i));
            used[i] = true;
            continue;
        }
        int partner = alph.dual_index(e.member);
        bool matched = false;
        for (std::size_t j = i + 1; j < p.entries.size(); ++j) {
            if (used[j]) continue;
            const auto& f = p.entries[j];
            if (f.member == partner && f.b == e.b && f.mult == e.mult) {
                out.nsd.emplace_back(static_cast<int>(i), static_cast<int>(j));
                used[i] = used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched)
            throw std::invalid_argument("unpaired non-self-dual summand " +
                                        entry_label(alph, e));
    }
    return out;
}

/// Characters of the component group are stored on the full coordinate
/// basis indexed by the good-parity summands; equality as characters of the
/// component group itself is tested modulo the parity constraint.
struct CharacterVec {
    std::vector<int> signs;

    friend bool operator==(const CharacterVec&, const CharacterVec&) = default;
    friend auto operator<=>(const CharacterVec&, const CharacterVec&) = default;
};

class ComponentGroup {
public:
    ComponentGroup() = default;

    ComponentGroup(std::vector<int> basis_entries, std::vector<int> dims, bool rule_active)
        : basis_(std::move(basis_entries)), dims_(std::move(dims)) {
        bool any_odd = false;
        for (int d : dims_) any_odd = any_odd || (d % 2 != 0);
        constrained_ = rule_active && any_odd;
    }

    int rank() const { return static_cast<int>(basis_.size()); }
    bool constrained() const { return constrained_; }
    const std::vector<int>& basis_entries() const { return basis_; }
    const std::vector<int>& dims() const { return dims_; }

    long order() const {
        long o = 1L << rank();
        return constrained_ ? o / 2 : o;
    }

    CharacterVec trivial() const {
        return CharacterVec{std::vector<int>(static_cast<std::size_t>(rank()), 1)};
    }

    /// The character of the full coordinate group that is trivial exactly on
    /// the parity-constraint subgroup.
    CharacterVec parity_character() const {
        CharacterVec v = trivial();
        for (int i = 0; i < rank(); ++i)
            v.signs[static_cast<std::size_t>(i)] = (dims_[static_cast<std::size_t>(i)] % 2) ? -1 : 1;
        return v;
    }

    static CharacterVec mul(const CharacterVec& a, const CharacterVec& b) {
        if (a.signs.size() != b.signs.size())
            throw std::invalid_argument("character length mismatch");
        CharacterVec c = a;
        for (std::size_t i = 0; i < c.signs.size(); ++i) c.signs[i] *= b.signs[i];
        return c;
    }

    bool char_equal(const CharacterVec& a, const CharacterVec& b) const {
        if (static_cast<int>(a.signs.size()) != rank() ||
            static_cast<int>(b.signs.size()) != rank())
            throw std::invalid_argument("character length mismatch");
        if (a == b) return true;
        return constrained_ && mul(a, parity_character()) == b;
    }

    CharacterVec canonical(const CharacterVec& a) const {
        if (!constrained_) return a;
        CharacterVec other = mul(a, parity_character());
        return std::min(a, other, [](const CharacterVec& x, const CharacterVec& y) {
            for (std::size_t i = 0; i < x.signs.size(); ++i) {
                if (x.signs[i] != y.signs[i]) return x.signs[i] > y.signs[i]; // +1 first
            }
            return false;
        });
    }

    /// Distinct characters of the component group, canonical representatives.
    std::vector<CharacterVec> characters() const {
        std::vector<CharacterVec> out;
        const int k = rank();
        for (long mask = 0; mask < (1L << k); ++mask) {
            CharacterVec v = trivial();
            for (int i = 0; i < k; ++i)
                if (mask & (1L << i)) v.signs[static_cast<std::size_t>(i)] = -1;
            v = canonical(v);
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Elements (e_i) of the component group itself (for desk-scale checks).
    std::vector<std::vector<int>> elements() const {
        std::vector<std::vector<int>> out;
        const int k = rank();
        for (long mask = 0; mask < (1L << k); ++mask) {
            std::vector<int> e(static_cast<std::size_t>(k), 0);
            long weighted = 0;
            for (int i = 0; i < k; ++i)
                if (mask & (1L << i)) {
                    e[static_cast<std::size_t>(i)] = 1;
                    weighted += dims_[static_cast<std::size_t>(i)];
                }
            if (constrained_ && weighted % 2 != 0) continue;
            out.push_back(std::move(e));
        }
        return out;
    }

private:
    std::vector<int> basis_;
    std::vector<int> dims_;
    bool constrained_ = false;
};

/// Component group of a parameter for a group of the given family; the
/// parity constraint is active for symplectic groups and for even
/// orthogonal groups having an odd-dimensional good-parity summand.
inline ComponentGroup component_group(const Alphabet& alph, const Parameter& p,
                                      Family fam, int space_dim) {
    auto cls = classify_summands(alph, p);
    std::vector<int> dims;
    for (int i : cls.good)
        dims.push_back(alph.member(p.entries[static_cast<std::size_t>(i)].member).dim *
                       p.entries[static_cast<std::size_t>(i)].b);
    bool rule = fam == Family::Sp || (fam == Family::SO && space_dim % 2 == 0);
    return ComponentGroup(cls.good, dims, rule);
}

struct EnhancedParameter {
    Parameter phi;
    CharacterVec mu;

    friend bool operator==(const EnhancedParameter&, const EnhancedParameter&) = default;
};

inline Parameter twist_param(const Alphabet& alph, const Parameter& p, SquareClass z) {
    std::vector<SummandEntry> entries;
    for (const auto& e : p.entries)
        entries.push_back(SummandEntry{alph.twist_index(e.member, z), e.b, e.mult});
    return make_parameter(alph, std::move(entries), p.type, p.generic);
}

inline Parameter dual_param(const Alphabet& alph, const Parameter& p) {
    std::vector<SummandEntry> entries;
    for (const auto& e : p.entries)
        entries.push_back(SummandEntry{alph.dual_index(e.member), e.b, e.mult});
    return make_parameter(alph, std::move(entries), p.type, p.generic);
}

/// Re-express a character on the good-parity basis of a transformed
/// parameter, given the member-wise transform f : entry -> entry.
template <typename F>
EnhancedParameter map_enhanced(const Alphabet& alph, const Parameter& phi,
                               const CharacterVec& mu, const Parameter& image, F&& f) {
    auto src = classify_summands(alph, phi).good;
    auto dst = classify_summands(alph, image).good;
    if (src.size() != dst.size() || mu.signs.size() != src.size())
        throw std::logic_error("good-parity basis mismatch under parameter transform");
    CharacterVec out{std::vector<int>(dst.size(), 1)};
    for (std::size_t k = 0; k < src.size(); ++k) {
        const auto& e = phi.entries[static_cast<std::size_t>(src[k])];
        SummandEntry target = f(e);
        bool placed = false;
        for (std::size_t j = 0; j < dst.size(); ++j) {
            const auto& g = image.entries[static_cast<std::size_t>(dst[j])];
            if (g.member == target.member && g.b == target.b) {
                out.signs[j] = mu.signs[k];
                placed = true;
                break;
            }
        }
        if (!placed) throw std::logic_error("transformed summand missing from image");
    }
    return EnhancedParameter{image, out};
}

inline EnhancedParameter twist_enhanced(const Alphabet& alph, const EnhancedParameter& ep,
                                        SquareClass z) {
    Parameter image = twist_param(alph, ep.phi, z);
    return map_enhanced(alph, ep.phi, ep.mu, image, [&](const SummandEntry& e) {
        return SummandEntry{alph.twist_index(e.member, z), e.b, e.mult};
    });
}

inline EnhancedParameter dual_enhanced_raw(const Alphabet& alph, const EnhancedParameter& ep) {
    Parameter image = dual_param(alph, ep.phi);
    return map_enhanced(alph, ep.phi, ep.mu, image, [&](const SummandEntry& e) {
        return SummandEntry{alph.dual_index(e.member), e.b, e.mult};
    });
}

inline bool is_discrete(const Alphabet& alph, const Parameter& p) {
    auto cls = classify_summands(alph, p);
    if (!cls.bad.empty() || !cls.nsd.empty()) return false;
    for (const auto& e : p.entries)
        if (e.mult != 1) return false;
    return true;
}

/// Every parameter in this formal model is tempered; standard modules carry
/// their positive exponents separately.
inline bool is_tempered(const Parameter&) { return true; }

/// Structural validity of a parameter as an L-parameter of the group:
/// dimension and type match, wrong-parity summands pair up evenly, and the
/// determinant conditions of the correspondence hold.
inline void validate_for_group(const Alphabet& alph, const Parameter& p, const GroupDesc& g) {
    const auto& F = alph.ext().field();
    if (param_dim(alph, p) != g.param_dim())
        throw std::invalid_argument("parameter dimension does not match the group");
    Duality expect;
    switch (g.family) {
        case Family::SO:
            expect = g.space_dim % 2 == 0 ? Duality::Orthogonal : Duality::Symplectic;
            break;
        case Family::Sp: expect = Duality::Orthogonal; break;
        case Family::Mp: expect = Duality::Symplectic; break;
        case Family::U:
            if (!is_conjugate(p.type))
                throw std::invalid_argument("unitary parameters must be conjugate self-dual");
            expect = p.type; // both signs admitted
            break;
    }
    if (p.type != expect) throw std::invalid_argument("parameter type does not match the group");
    auto cls = classify_summands(alph, p); // throws on unpaired non-self-dual summands
    for (int i : cls.bad)
        if (p.entries[static_cast<std::size_t>(i)].mult % 2 != 0)
            throw std::invalid_argument("wrong-parity summands need even multiplicity");
    if (g.family == Family::Sp && !(param_det(alph, p) == F.one()))
        throw std::invalid_argument("odd orthogonal parameters of Sp have trivial determinant");
    if (g.family == Family::SO && g.space_dim % 2 == 0 && g.space &&
        !(param_det(alph, p) == g.space->disc))
        throw std::invalid_argument(
            "even orthogonal parameters must match the space discriminant");
}

} // namespace lpdescent
