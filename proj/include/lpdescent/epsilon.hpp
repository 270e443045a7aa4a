#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpdescent/lparam.hpp"

namespace lpdescent {

/// Declared +-1 root-number data on alphabet pairs, plus the reduction
/// calculus that evaluates eps(phi_i (x) psi) for whole parameters.
///
/// A sign is declared per unordered pair {rho, rho'} of self-dual members of
/// opposite types; that is the regime in which the root number is a
/// normalization-independent sign.  Everything else is reduced:
///   - tensor with mu_c contributes the c-th power (regular tables carry no
///     inertia-invariant correction),
///   - a pair occurring with even total exponent reduces through
///     eps(sigma) eps(sigma^) = (det sigma)(-1),
///   - non-self-dual summands reduce jointly with their partners through the
///     same identity.
class EpsilonTable {
public:
    bool regular = true;

    void set_pair(std::string a, std::string b, int sign) {
        check_sign(sign);
        pairs_[key(std::move(a), std::move(b))] = sign;
    }

    void set_single(std::string a, int sign) {
        check_sign(sign);
        singles_[std::move(a)] = sign;
    }

    bool has_pair(const std::string& a, const std::string& b) const {
        return pairs_.count(key(a, b)) > 0;
    }

    int pair_sign(const std::string& a, const std::string& b) const {
        auto it = pairs_.find(key(a, b));
        if (it == pairs_.end())
            throw std::invalid_argument("missing root-number entry {" + a + ", " + b + "}");
        return it->second;
    }

    bool has_single(const std::string& a) const { return singles_.count(a) > 0; }

    int single_sign(const std::string& a) const {
        auto it = singles_.find(a);
        if (it == singles_.end())
            throw std::invalid_argument("missing root-number entry for " + a);
        return it->second;
    }

    const std::map<std::pair<std::string, std::string>, int>& pairs() const { return pairs_; }
    const std::map<std::string, int>& singles() const { return singles_; }

private:
    static std::pair<std::string, std::string> key(std::string a, std::string b) {
        if (b < a) std::swap(a, b);
        return {std::move(a), std::move(b)};
    }
    static void check_sign(int s) {
        if (s != 1 && s != -1) throw std::invalid_argument("signs must be +-1");
    }

    std::map<std::pair<std::string, std::string>, int> pairs_;
    std::map<std::string, int> singles_;
};

/// Clebsch-Gordan: mu_a (x) mu_b = sum of mu_c, c = a+b-1-2k.
inline std::vector<int> sl2_tensor(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("SL2 factors have dimension >= 1");
    std::vector<int> out;
    for (int k = 0; k <= std::min(a, b) - 1; ++k) out.push_back(a + b - 1 - 2 * k);
    return out;
}

namespace detail {

/// Is {i, j} a pair for which a sign is declared?
inline bool declared_pair(const Alphabet& alph, int i, int j) {
    Duality di = alph.member(i).duality, dj = alph.member(j).duality;
    if (!is_self_dual(di) || !is_self_dual(dj)) return false;
    return duality_sign(di) * duality_sign(dj) == -1;
}

inline int sign_pow(int s, long e) { return (e % 2 == 0) ? 1 : s; }

/// Value of det(rho (x) rho') at -1 via Hilbert pairings (E = F).
inline int det_tensor_at_minus_one(const Alphabet& alph, int i, int j) {
    if (!alph.ext().is_split()) return 1;
    const auto& F = alph.ext().field();
    const auto& mi = alph.member(i);
    const auto& mj = alph.member(j);
    return sign_pow(F.hilbert(mi.det, F.minus_one()), mj.dim) *
           sign_pow(F.hilbert(mj.det, F.minus_one()), mi.dim);
}

} // namespace detail

/// eps(s (x) psi) for a single good-parity summand s against the whole
/// parameter psi, multiplicative over psi's summands.
inline int eps_pair(const EpsilonTable& table, const Alphabet& alph, SummandEntry s,
                    const Parameter& psi) {
    const auto& ms = alph.member(s.member);
    if (!is_self_dual(ms.duality))
        throw std::invalid_argument("left factor of eps must be self-dual");
    if (!table.regular)
        throw std::invalid_argument("only regular tables are modeled");

    // Accumulate the total SL2 exponent per base member (the Clebsch-Gordan
    // exponents over mu_b (x) mu_b' sum to b*b').
    std::map<int, long> exponents;
    for (const auto& e : psi.entries)
        exponents[e.member] += static_cast<long>(s.b) * e.b * e.mult;

    int result = 1;
    std::map<int, bool> done;
    for (const auto& [m, T] : exponents) {
        if (done.count(m)) continue;
        const auto& mm = alph.member(m);
        if (is_self_dual(mm.duality)) {
            if (detail::declared_pair(alph, s.member, m)) {
                result *= detail::sign_pow(table.pair_sign(ms.id, mm.id), T);
            } else {
                if (T % 2 != 0)
                    throw std::invalid_argument(
                        "root number of a same-type pair {" + ms.id + ", " + mm.id +
                        "} with odd exponent is outside the declared-sign regime");
                result *= detail::sign_pow(detail::det_tensor_at_minus_one(alph, s.member, m),
                                           T / 2);
            }
            done[m] = true;
            continue;
        }
        int partner = alph.dual_index(m);
        auto it = exponents.find(partner);
        long Tp = it == exponents.end() ? 0 : it->second;
        if (Tp != T)
            throw std::invalid_argument("non-self-dual summand " + mm.id +
                                        " is not matched by its dual partner");
        result *= detail::sign_pow(detail::det_tensor_at_minus_one(alph, s.member, m), T);
        done[m] = done[partner] = true;
    }
    return result;
}

/// The triple product eps(phi_i) eps(phi_i(a)) (a,-1)^{dim phi_i / 2}
/// entering the metaplectic eta formula.
inline int eps_single(const EpsilonTable& table, const Alphabet& alph, SummandEntry s,
                      SquareClass a) {
    const auto& F = alph.ext().field();
    const auto& m = alph.member(s.member);
    int dim = m.dim * s.b;
    if (dim % 2 != 0)
        throw std::invalid_argument("metaplectic eta needs even-dimensional summands");
    int twisted = alph.twist_index(s.member, a);
    int v = detail::sign_pow(table.single_sign(m.id), s.b) *
            detail::sign_pow(table.single_sign(alph.member(twisted).id), s.b);
    return v * detail::sign_pow(F.hilbert(a, F.minus_one()), dim / 2);
}

/// Closure report: every pair and single the character formulas might need.
inline std::vector<std::string> validate_table(const EpsilonTable& table,
                                               const Alphabet& alph) {
    std::vector<std::string> violations;
    for (int i = 0; i < alph.size(); ++i) {
        for (int j = i; j < alph.size(); ++j) {
            if (!detail::declared_pair(alph, i, j)) continue;
            if (!table.has_pair(alph.member(i).id, alph.member(j).id))
                violations.push_back("missing pair {" + alph.member(i).id + ", " +
                                     alph.member(j).id + "}");
        }
        const auto& m = alph.member(i);
        if (alph.ext().is_split() && is_self_dual(m.duality) && !table.has_single(m.id))
            violations.push_back("missing single sign for " + m.id);
    }
    for (const auto& [k, v] : table.pairs()) {
        if (!alph.has(k.first) || !alph.has(k.second))
            violations.push_back("pair entry {" + k.first + ", " + k.second +
                                 "} references an unknown member");
        (void)v;
    }
    for (const auto& [k, v] : table.singles()) {
        if (!alph.has(k))
            violations.push_back("single entry for unknown member " + k);
        (void)v;
    }
    return violations;
}

} // namespace lpdescent
