#pragma once

#include <string>
#include <vector>

#include "lpdescent/lparam.hpp"

namespace lpdescent {

/// Builds alphabets that are closed under duals and quadratic twists by
/// construction.  Over E = F the quadratic characters chi_c form one twist
/// orbit; higher-dimensional self-dual members are taken twist-fixed (their
/// even dimension keeps determinants consistent); non-self-dual lines come
/// with their whole twist orbit of dual pairs.
class AlphabetBuilder {
public:
    explicit AlphabetBuilder(QuadExt ext) : ext_(std::move(ext)) {}

    const QuadExt& ext() const { return ext_; }

    AlphabetBuilder& add_quadratic_characters() {
        const auto& F = ext_.field();
        if (!ext_.is_split())
            throw std::invalid_argument("quadratic characters are an E = F feature");
        for (SquareClass c : F.square_classes()) {
            FormalIrr m;
            m.id = "chi_" + F.tag(c);
            m.dim = 1;
            m.duality = Duality::Orthogonal;
            m.det = c;
            m.dual_id = m.id;
            for (SquareClass z : F.square_classes())
                m.twists.push_back("chi_" + F.tag(F.mul(c, z)));
            members_.push_back(std::move(m));
        }
        return *this;
    }

    /// Self-dual member fixed by every quadratic twist (dimension must be even).
    AlphabetBuilder& add_self_dual(const std::string& id, int dim, Duality duality,
                                   SquareClass det) {
        const auto& F = ext_.field();
        if (ext_.is_split() && dim % 2 != 0)
            throw std::invalid_argument("twist-fixed members need even dimension");
        FormalIrr m;
        m.id = id;
        m.dim = dim;
        m.duality = duality;
        m.det = duality == Duality::Symplectic ? F.one() : det;
        m.dual_id = id;
        if (ext_.is_split())
            m.twists.assign(static_cast<std::size_t>(F.class_count()), id);
        members_.push_back(std::move(m));
        return *this;
    }

    AlphabetBuilder& add_conj_self_dual(const std::string& id, int dim, int sign) {
        if (ext_.is_split())
            throw std::invalid_argument("conjugate self-dual members need E != F");
        FormalIrr m;
        m.id = id;
        m.dim = dim;
        m.duality = sign == 1 ? Duality::ConjOrthogonal : Duality::ConjSymplectic;
        m.det = ext_.field().one();
        m.dual_id = id;
        members_.push_back(std::move(m));
        return *this;
    }

    /// A non-self-dual line together with its dual and the whole quadratic
    /// twist orbit; the base line has trivial determinant class, so padding
    /// by (base, dual(base)) leaves distinguished characters unchanged.
    AlphabetBuilder& add_nsd_line_orbit(const std::string& base) {
        const auto& F = ext_.field();
        if (!ext_.is_split())
            throw std::invalid_argument("use add_conj_nsd_pair over E != F");
        for (SquareClass c : F.square_classes()) {
            for (bool dualside : {false, true}) {
                FormalIrr m;
                m.id = orbit_id(base, F.tag(c), dualside);
                m.dim = 1;
                m.duality = Duality::NonSelfDual;
                m.det = c;
                m.dual_id = orbit_id(base, F.tag(c), !dualside);
                for (SquareClass z : F.square_classes())
                    m.twists.push_back(orbit_id(base, F.tag(F.mul(c, z)), dualside));
                members_.push_back(std::move(m));
            }
        }
        return *this;
    }

    AlphabetBuilder& add_conj_nsd_pair(const std::string& base, int dim = 1) {
        if (ext_.is_split())
            throw std::invalid_argument("use add_nsd_line_orbit over E = F");
        for (bool dualside : {false, true}) {
            FormalIrr m;
            m.id = dualside ? base + "_v" : base;
            m.dim = dim;
            m.duality = Duality::NonSelfDual;
            m.det = ext_.field().one();
            m.dual_id = dualside ? base : base + "_v";
            members_.push_back(std::move(m));
        }
        return *this;
    }

    Alphabet build() const { return Alphabet(ext_, members_); }

    /// Id of the base (trivial-determinant) non-self-dual pad line.
    static std::string pad_id(const LocalField& F, const std::string& base) {
        return orbit_id(base, F.tag(F.square_classes().front()), false);
    }

private:
    static std::string orbit_id(const std::string& base, const std::string& tag,
                                bool dualside) {
        return base + "_" + tag + (dualside ? "_v" : "");
    }

    QuadExt ext_;
    std::vector<FormalIrr> members_;
};

/// First non-self-dual member with trivial determinant class and dimension
/// one: the canonical tower-padding line.
inline std::optional<int> pad_line_index(const Alphabet& alph) {
    const auto& F = alph.ext().field();
    for (int i = 0; i < alph.size(); ++i) {
        const auto& m = alph.member(i);
        if (m.duality == Duality::NonSelfDual && m.dim == 1 && m.det == F.one() &&
            m.id < alph.member(alph.dual_index(i)).id)
            return i;
    }
    return std::nullopt;
}

} // namespace lpdescent
