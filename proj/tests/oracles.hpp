#pragma once

// Test-only brute-force oracles. Everything here decides questions about
// Q_p by exhaustive search over residues plus a Hensel-lifting certificate,
// independently of the closed-form code paths under test.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "lpdescent/local_field.hpp"

namespace lpdescent::oracle {

inline long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline int val_mod(long long x, long p, int cap) {
    // p-adic valuation of the residue x, capped at cap (x == 0 means >= cap).
    if (x == 0) return cap;
    int v = 0;
    while (x % p == 0 && v < cap) {
        x /= p;
        ++v;
    }
    return v;
}

/// Search depth at which a primitive zero mod p^k with a small-gradient
/// coordinate certifies a genuine Q_p zero of a x^2 + b y^2 - z^2 with
/// coefficients of valuation <= 1 (Newton lifting needs k > 2*grad_val).
inline int ternary_depth(long p) { return p == 2 ? 5 : 3; }

/// Brute-force solubility of a x^2 + b y^2 = z^2 over Q_p in a nontrivial
/// solution, i.e. the Hilbert symbol oracle.
inline bool ternary_soluble(long p, long long a, long long b) {
    const int k = ternary_depth(p);
    const long long M = ipow(p, k);
    auto norm = [&](long long x) { return ((x % M) + M) % M; };

    // All square residues mod p^k, with a witness root for gradient checks.
    std::vector<long long> root(M, -1);
    for (long long z = 0; z < M; ++z) {
        long long s = norm(z * z);
        if (root[s] < 0) root[s] = z;
    }

    for (long long x = 0; x < M; ++x) {
        for (long long y = 0; y < M; ++y) {
            if (x % p == 0 && y % p == 0) continue; // non-primitive once z = 0 forced
            long long t = norm(a % M * x % M * x + b % M * y % M * y);
            long long z = root[t];
            if (z < 0) continue;
            int g = std::min({val_mod(norm(2 * a * x), p, k),
                              val_mod(norm(2 * b * y), p, k),
                              val_mod(norm(2 * z), p, k)});
            if (2 * g < k) return true;
        }
    }
    return false;
}

inline int hilbert_brute(const LocalField& F, SquareClass a, SquareClass b) {
    if (F.is_real()) {
        long long ra = F.representative(a), rb = F.representative(b);
        return (ra < 0 && rb < 0) ? -1 : 1; // a x^2 + b y^2 = z^2 over R
    }
    return ternary_soluble(F.p(), F.representative(a), F.representative(b)) ? 1 : -1;
}

/// Partition of F^x / (F^x)^2 by raw enumeration: squares of units are
/// detected mod p (odd p) or mod 8 (p = 2) after stripping the uniformizer.
inline bool is_square_brute(const LocalField& F, long long v) {
    if (F.is_real()) return v > 0;
    long p = F.p();
    int parity = 0;
    while (v % p == 0) {
        v /= p;
        parity ^= 1;
    }
    if (parity) return false;
    if (p == 2) return ((v % 8) + 8) % 8 == 1;
    // Hensel: a unit lifts to a square iff it is a residue mod p.
    long long w = ((v % p) + p) % p;
    long long r = 1, base = w, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1;
}

/// Enumerate square classes of Q_p by partitioning a set of small integers
/// under "quotient is a square"; returns one representative per class.
inline std::vector<long long> square_class_reps_brute(const LocalField& F) {
    std::vector<long long> reps;
    std::vector<long long> pool;
    if (F.is_real()) {
        pool = {1, -1};
    } else {
        long p = F.p();
        for (long long u = 1; u <= 4 * p * p; ++u) {
            pool.push_back(u);
            pool.push_back(-u);
        }
    }
    for (long long v : pool) {
        bool fresh = true;
        for (long long r : reps) {
            // v ~ r  iff  v*r is a square (classes have exponent two).
            if (is_square_brute(F, v * r)) {
                fresh = false;
                break;
            }
        }
        if (fresh) reps.push_back(v);
    }
    return reps;
}

/// Isotropy of a diagonal quadratic form over Q_p by meet-in-the-middle
/// residue search with the same Hensel certificate; dims 1..4.
inline bool diagonal_isotropic_brute(long p, const std::vector<long long>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    if (n <= 1) return false;
    const int k = ternary_depth(p);
    const long long M = ipow(p, k);
    auto norm = [&](long long x) { return ((x % M) + M) % M; };

    // Enumerate vectors recursively; accept any primitive zero mod p^k that
    // has a coordinate with gradient valuation g, 2g < k.
    std::vector<long long> v(static_cast<std::size_t>(n), 0);
    bool found = false;
    auto rec = [&](auto&& self, int i) -> void {
        if (found) return;
        if (i == n) {
            long long s = 0;
            bool primitive = false;
            int g = k;
            for (int j = 0; j < n; ++j) {
                s = norm(s + coeffs[j] % M * v[j] % M * v[j]);
                if (v[j] % p != 0) primitive = true;
                g = std::min(g, val_mod(norm(2 * coeffs[j] * v[j]), p, k));
            }
            if (primitive && s == 0 && 2 * g < k) found = true;
            return;
        }
        for (long long x = 0; x < M && !found; ++x) {
            v[static_cast<std::size_t>(i)] = x;
            self(self, i + 1);
        }
    };
    // Straight nested loops are fine at these depths for n <= 3; for n == 4
    // split the form into two halves and match residues.
    if (n <= 3) {
        rec(rec, 0);
        return found;
    }
    struct Half {
        long long value;
        int grad;
        bool primitive;
    };
    std::map<long long, std::vector<Half>> left;
    for (long long x = 0; x < M; ++x) {
        for (long long y = 0; y < M; ++y) {
            long long s = norm(coeffs[0] % M * x % M * x + coeffs[1] % M * y % M * y);
            int g = std::min(val_mod(norm(2 * coeffs[0] * x), p, k),
                             val_mod(norm(2 * coeffs[1] * y), p, k));
            bool prim = (x % p != 0) || (y % p != 0);
            auto& bucket = left[s];
            bool keep = true;
            for (const Half& h : bucket)
                if (h.grad <= g && h.primitive >= prim) {
                    keep = false;
                    break;
                }
            if (keep) bucket.push_back(Half{s, g, prim});
        }
    }
    for (long long x = 0; x < M && !found; ++x) {
        for (long long y = 0; y < M && !found; ++y) {
            long long s = norm(coeffs[2] % M * x % M * x + coeffs[3] % M * y % M * y);
            int g = std::min(val_mod(norm(2 * coeffs[2] * x), p, k),
                             val_mod(norm(2 * coeffs[3] * y), p, k));
            bool prim = (x % p != 0) || (y % p != 0);
            auto it = left.find(norm(-s));
            if (it == left.end()) continue;
            for (const Half& h : it->second) {
                if (!(h.primitive || prim)) continue;
                if (2 * std::min(h.grad, g) < k) {
                    found = true;
                    break;
                }
            }
        }
    }
    return found;
}

/// Square classes arising as norms from E = F(sqrt(d)): enumerate
/// s^2 - d t^2 over residues and classify the values.  Every norm class is
/// attained at valuation <= 1, so the residue depth only has to pin classes
/// of small valuation.
inline std::set<std::uint8_t> norm_classes_brute(const LocalField& F, SquareClass d) {
    const long p = F.p();
    const int k = p == 2 ? 6 : 4;
    const long long M = ipow(p, k);
    const long long dd = F.representative(d);
    std::set<std::uint8_t> out;
    for (long long s = 0; s < M; ++s) {
        for (long long t = 0; t < M; ++t) {
            if (s % p == 0 && t % p == 0) continue;
            long long v = s * s - dd * t * t;
            if (v == 0) continue;
            // Only classify values whose valuation is visibly below the
            // modulus so the class is determined by the residue.
            int val = val_mod(v, p, k);
            if (val > k - 3) continue;
            out.insert(F.class_of(v).bits);
        }
    }
    return out;
}

} // namespace lpdescent::oracle
