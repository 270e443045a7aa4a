#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpdescent/local_field.hpp"

namespace lpdescent {

/// Invariant-level model of a non-degenerate eps-Hermitian space over a
/// p-adic field: dimension, discriminant disc = (-1)^{n(n-1)/2} det, a
/// Hasse-type invariant (product of Hilbert symbols of a diagonalization,
/// over i < j), and the Witt index.  No Gram matrices are ever stored.
///
/// Conventions:
///  - symplectic spaces carry no disc/hasse;
///  - for E != F both Hermitian and skew-Hermitian spaces store the norm
///    class of the discriminant of the associated Hermitian form (for skew
///    forms, of delta * q), and no Hasse invariant;
///  - real quadratic spaces are out of scope (signatures are not determined
///    by these invariants).
struct EpsHermSpace {
    QuadExt ext;
    int eps = 1;
    int dim = 0;
    SquareClass disc;
    int hasse = 1;
    int witt = 0;

    bool is_symplectic() const { return ext.is_split() && eps == -1; }
    bool is_quadratic() const { return ext.is_split() && eps == 1; }
    bool is_unitary() const { return !ext.is_split(); }
    int anisotropic_dim() const { return dim - 2 * witt; }

    /// det as a square class (norm class for E != F).
    SquareClass det() const {
        const auto& F = ext.field();
        long e = static_cast<long>(dim) * (dim - 1) / 2;
        return F.mul(disc, F.pow(F.minus_one(), e));
    }
};

namespace detail {

inline SquareClass det_to_disc(const LocalField& F, int n, SquareClass det) {
    long e = static_cast<long>(n) * (n - 1) / 2;
    return F.mul(det, F.pow(F.minus_one(), e));
}

/// Isotropy of a quadratic form over Q_p from (dim, det, hasse).
inline bool quad_isotropic(const LocalField& F, int n, SquareClass det, int hasse) {
    if (n <= 1) return false;
    if (n >= 5) return true;
    if (n == 2) return det == F.minus_one();
    if (n == 3) return hasse == F.hilbert(F.minus_one(), F.mul(F.minus_one(), det));
    // n == 4: anisotropic exactly when det = 1 and hasse = -(-1,-1).
    return !(det == F.one() && hasse == -F.hilbert(F.minus_one(), F.minus_one()));
}

inline bool quad_valid(const LocalField& F, int n, SquareClass det, int hasse) {
    if (n == 0) return det == F.one() && hasse == 1;
    if (n == 1) return hasse == 1;
    if (n == 2 && det == F.minus_one()) return hasse == 1;
    return true;
}

struct QuadInv {
    int n;
    SquareClass det;
    int hasse;
};

/// Invariants of an orthogonal direct sum.
inline QuadInv quad_sum(const LocalField& F, const QuadInv& a, const QuadInv& b) {
    return QuadInv{a.n + b.n, F.mul(a.det, b.det),
                   a.hasse * b.hasse * F.hilbert(a.det, b.det)};
}

/// Split off one hyperbolic plane.
inline QuadInv quad_strip_hyperbolic(const LocalField& F, const QuadInv& q) {
    SquareClass det = F.mul(q.det, F.minus_one());
    int hasse = q.hasse * F.hilbert(F.minus_one(), det);
    return QuadInv{q.n - 2, det, hasse};
}

inline int quad_witt(const LocalField& F, QuadInv q) {
    int r = 0;
    while (quad_isotropic(F, q.n, q.det, q.hasse)) {
        q = quad_strip_hyperbolic(F, q);
        ++r;
    }
    return r;
}

inline QuadInv quad_invariants(const EpsHermSpace& s) {
    return QuadInv{s.dim, s.det(), s.hasse};
}

inline QuadInv hyperbolic_invariants(const LocalField& F, int m) {
    QuadInv q{0, F.one(), 1};
    for (int i = 0; i < m; ++i)
        q = quad_sum(F, q, QuadInv{2, F.minus_one(), 1});
    return q;
}

inline QuadInv line_invariants(const LocalField& F, SquareClass c) {
    return QuadInv{1, c, 1};
}

/// Does the quadratic form with these invariants represent the class c?
inline bool quad_represents(const LocalField& F, const QuadInv& q, SquareClass c) {
    if (q.n == 0) return false;
    if (q.n >= 4) return true;
    QuadInv sum = quad_sum(F, q, line_invariants(F, F.mul(c, F.minus_one())));
    return quad_isotropic(F, sum.n, sum.det, sum.hasse);
}

} // namespace detail

/// Build a space from its invariants, computing the Witt index; throws on
/// invariant combinations that no space realizes.
inline EpsHermSpace classify_space(const QuadExt& ext, int eps, int dim,
                                   std::optional<SquareClass> disc = std::nullopt,
                                   std::optional<int> hasse = std::nullopt) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    if (dim < 0) throw std::invalid_argument("negative dimension");
    const auto& F = ext.field();

    EpsHermSpace s;
    s.ext = ext;
    s.eps = eps;
    s.dim = dim;
    s.disc = F.one();
    s.hasse = 1;

    if (ext.is_split() && eps == -1) {
        if (disc || hasse) throw std::invalid_argument("symplectic spaces carry no disc/hasse");
        if (dim % 2 != 0) throw std::invalid_argument("symplectic spaces have even dimension");
        s.witt = dim / 2;
        return s;
    }

    if (ext.is_split()) {
        if (F.is_real())
            throw std::invalid_argument("real quadratic spaces are modeled at square-class level only");
        s.disc = disc.value_or(F.one());
        s.hasse = hasse.value_or(1);
        if (s.hasse != 1 && s.hasse != -1) throw std::invalid_argument("hasse must be +-1");
        SquareClass det = s.det();
        if (!detail::quad_valid(F, dim, det, s.hasse))
            throw std::invalid_argument("no quadratic space has these invariants");
        if (dim == 0) s.disc = F.one();
        s.witt = detail::quad_witt(F, detail::QuadInv{dim, det, s.hasse});
        return s;
    }

    // Hermitian / skew-Hermitian over E = F(delta).
    if (F.is_real())
        throw std::invalid_argument("real Hermitian spaces are out of scope");
    if (hasse) throw std::invalid_argument("Hermitian spaces carry no Hasse invariant");
    s.disc = ext.normalize(disc.value_or(F.one()));
    if (dim == 0 && ext.omega(s.disc) != 1)
        throw std::invalid_argument("zero space has trivial discriminant");
    if (dim == 0) s.disc = F.one();
    if (dim % 2 == 0) {
        s.witt = ext.omega(s.disc) == 1 ? dim / 2 : dim / 2 - 1;
    } else {
        s.witt = (dim - 1) / 2;
    }
    return s;
}

/// (Witt index, anisotropic kernel).
inline std::pair<int, EpsHermSpace> witt_decompose(const EpsHermSpace& s) {
    const auto& F = s.ext.field();
    EpsHermSpace kernel;
    if (s.is_symplectic()) {
        kernel = classify_space(s.ext, -1, 0);
    } else if (s.is_quadratic()) {
        detail::QuadInv q = detail::quad_invariants(s);
        for (int i = 0; i < s.witt; ++i) q = detail::quad_strip_hyperbolic(F, q);
        kernel = classify_space(s.ext, 1, q.n, detail::det_to_disc(F, q.n, q.det), q.hasse);
    } else {
        int adim = s.dim - 2 * s.witt;
        SquareClass det = s.det();
        SquareClass kdet = F.mul(det, F.pow(F.minus_one(), s.witt));
        kernel = classify_space(s.ext, s.eps, adim, detail::det_to_disc(F, adim, kdet));
    }
    if (kernel.witt != 0) throw std::logic_error("anisotropic kernel must have Witt index 0");
    return {s.witt, kernel};
}

/// Orthogonal sum of an extra hyperbolic plane.
inline EpsHermSpace add_hyperbolic(const EpsHermSpace& s) {
    const auto& F = s.ext.field();
    if (s.is_symplectic()) return classify_space(s.ext, -1, s.dim + 2);
    SquareClass det = F.mul(s.det(), F.minus_one());
    if (s.is_quadratic()) {
        int hasse = s.hasse * F.hilbert(F.minus_one(), s.det());
        return classify_space(s.ext, 1, s.dim + 2,
                              detail::det_to_disc(F, s.dim + 2, det), hasse);
    }
    return classify_space(s.ext, s.eps, s.dim + 2,
                          detail::det_to_disc(F, s.dim + 2, det));
}

/// Classical group families in play.
enum class Family { SO, Sp, Mp, U };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::SO: return "SO";
        case Family::Sp: return "Sp";
        case Family::Mp: return "Mp";
        case Family::U: return "U";
    }
    return "?";
}

/// A classical group G = Isom(V,q)^0 (or its metaplectic cover), described
/// by its family and the dimension of the underlying space; the space itself
/// is optional (family-level descriptors are used for quasi-split groups).
struct GroupDesc {
    Family family = Family::Sp;
    int space_dim = 0;
    QuadExt ext;
    std::optional<EpsHermSpace> space;
    bool quasisplit = true;

    /// Dimension of the L-parameters of this group.
    int param_dim() const {
        switch (family) {
            case Family::SO: return space_dim % 2 == 0 ? space_dim : space_dim - 1;
            case Family::Sp: return space_dim + 1;
            case Family::Mp: return space_dim;
            case Family::U: return space_dim;
        }
        return 0;
    }

    /// +1 for symmetric/Hermitian realizations, -1 for symplectic/skew.
    /// Unitary groups switch realization with the parity of the orbit.
    int space_eps(int p1_parity_hint = -1) const {
        switch (family) {
            case Family::SO: return 1;
            case Family::Sp:
            case Family::Mp: return -1;
            case Family::U: return p1_parity_hint % 2 == 0 ? -1 : 1;
        }
        return 1;
    }
};

inline void require_family_field(const GroupDesc& g) {
    bool unitary = g.family == Family::U;
    if (unitary == g.ext.is_split())
        throw std::invalid_argument("unitary groups need E != F; E = F otherwise");
    if ((g.family == Family::Sp || g.family == Family::Mp) && g.space_dim % 2 != 0)
        throw std::invalid_argument("symplectic/metaplectic space dimension must be even");
    if (g.space_dim < 0) throw std::invalid_argument("negative space dimension");
}

/// The quasi-split space with prescribed dimension and discriminant
/// (maximal Witt index; ties broken toward hasse = +1).
inline EpsHermSpace quasisplit_space(const QuadExt& ext, Family fam, int dim,
                                     std::optional<SquareClass> disc = std::nullopt,
                                     int eps_hint = 1) {
    const auto& F = ext.field();
    if (fam == Family::Sp || fam == Family::Mp) return classify_space(ext, -1, dim);
    if (fam == Family::U) return classify_space(ext, eps_hint, dim, disc.value_or(F.one()));
    SquareClass d = disc.value_or(F.one());
    std::optional<EpsHermSpace> best;
    for (int h : {1, -1}) {
        try {
            EpsHermSpace s = classify_space(ext, 1, dim, d, h);
            if (!best || s.witt > best->witt) best = s;
        } catch (const std::invalid_argument&) {
        }
    }
    if (!best) throw std::invalid_argument("no quadratic space with this discriminant");
    return *best;
}

/// All pure inner forms of a quasi-split group: same dimension and family,
/// same discriminant for even orthogonal groups.  Exactly one member is
/// flagged quasi-split.
inline std::vector<GroupDesc> pure_inner_forms(const GroupDesc& gstar) {
    require_family_field(gstar);
    if (!gstar.quasisplit) throw std::invalid_argument("pure inner forms of a quasi-split group");
    const auto& F = gstar.ext.field();
    std::vector<GroupDesc> out;

    auto push = [&](EpsHermSpace s, bool qs) {
        GroupDesc g = gstar;
        g.space = s;
        g.quasisplit = qs;
        out.push_back(g);
    };

    switch (gstar.family) {
        case Family::Sp:
        case Family::Mp:
            push(classify_space(gstar.ext, -1, gstar.space_dim), true);
            break;
        case Family::U: {
            int eps = gstar.space ? gstar.space->eps : 1;
            EpsHermSpace qs = quasisplit_space(gstar.ext, Family::U, gstar.space_dim,
                                               std::nullopt, eps);
            for (SquareClass d : gstar.ext.norm_class_reps()) {
                EpsHermSpace s = classify_space(gstar.ext, eps, gstar.space_dim, d);
                push(s, s.disc == qs.disc);
                if (gstar.space_dim == 0) break;
            }
            break;
        }
        case Family::SO: {
            SquareClass d = gstar.space ? gstar.space->disc
                                        : quasisplit_space(gstar.ext, Family::SO,
                                                           gstar.space_dim)
                                              .disc;
            EpsHermSpace qs = quasisplit_space(gstar.ext, Family::SO, gstar.space_dim, d);
            for (int h : {1, -1}) {
                try {
                    EpsHermSpace s = classify_space(gstar.ext, 1, gstar.space_dim, d, h);
                    push(s, s.hasse == qs.hasse);
                } catch (const std::invalid_argument&) {
                }
            }
            break;
        }
    }
    (void)F;
    return out;
}

/// Admissibility of the stable orbit [p1, 1^{n-p1}] over F, in terms of the
/// Witt index r of the space.
inline bool orbit_admissible_r(Family fam, int n, int r, int p1) {
    if (p1 <= 0 || p1 > n) return false;
    switch (fam) {
        case Family::SO:
            if (p1 % 2 == 0) return false;
            return (n == 2 * r) ? p1 <= 2 * r - 1 : p1 <= 2 * r + 1;
        case Family::Sp:
        case Family::Mp:
            return p1 % 2 == 0;
        case Family::U:
            return p1 <= 2 * r + 1;
    }
    return false;
}

inline int group_witt_index(const GroupDesc& g, int p1_parity_hint = 1) {
    if (g.space) return g.space->witt;
    EpsHermSpace s = quasisplit_space(g.ext, g.family, g.space_dim, std::nullopt,
                                      g.space_eps(p1_parity_hint));
    return s.witt;
}

inline bool orbit_admissible(const GroupDesc& g, int p1) {
    require_family_field(g);
    if (p1 <= 0 || p1 > g.space_dim) return false;
    return orbit_admissible_r(g.family, g.space_dim, group_witt_index(g, p1), p1);
}

/// The quasi-split group H paired with G across the orbit [p1, 1^{n-p1}]:
/// (SO_n, SO_{n-p1}), (Sp_2n, Mp_{2n-p1}), (Mp_2n, Sp_{2n-p1}), (U_n, U_{n-p1});
/// the trivial group when p1 = n.
inline GroupDesc relevant_pair(const GroupDesc& g, int p1) {
    require_family_field(g);
    if (p1 <= 0 || p1 > g.space_dim)
        throw std::invalid_argument("p1 must satisfy 0 < p1 <= dim V");
    Family hf;
    switch (g.family) {
        case Family::SO:
            if (p1 % 2 == 0) throw std::invalid_argument("orthogonal orbits need odd p1");
            hf = Family::SO;
            break;
        case Family::Sp:
            if (p1 % 2 != 0) throw std::invalid_argument("symplectic orbits need even p1");
            hf = Family::Mp;
            break;
        case Family::Mp:
            if (p1 % 2 != 0) throw std::invalid_argument("metaplectic orbits need even p1");
            hf = Family::Sp;
            break;
        case Family::U:
            hf = Family::U;
            break;
    }
    GroupDesc h;
    h.family = hf;
    h.space_dim = g.space_dim - p1;
    h.ext = g.ext;
    h.quasisplit = true;
    return h;
}

/// One F-rational orbit inside the stable orbit [p1, 1^{n-p1}]: the class of
/// the one-dimensional (-1)^{p1-1} eps-Hermitian form on the long-root line,
/// and the invariants of the descended space V_(1).
struct OrbitData {
    int p1 = 0;
    int m = 0;
    SquareClass line_class;
    EpsHermSpace descended;
};

inline std::vector<OrbitData> rational_orbits(const EpsHermSpace& V, int p1) {
    const auto& F = V.ext.field();
    Family fam = V.is_unitary() ? Family::U : (V.eps == 1 ? Family::SO : Family::Sp);
    if (!orbit_admissible_r(fam, V.dim, V.witt, p1))
        throw std::invalid_argument("orbit [p1,1^...] is not admissible for this space");
    if ((p1 % 2 == 0) != (V.eps == -1))
        throw std::invalid_argument("orbit parity does not match the form");

    std::vector<OrbitData> out;
    const int m = p1 / 2;

    if (p1 % 2 == 0) {
        // Long-root line carries a (+1)-form of class (-1)^{m-1} sigma.
        SquareClass sign = F.pow(F.minus_one(), m - 1);
        if (V.is_symplectic()) {
            EpsHermSpace desc = classify_space(V.ext, -1, V.dim - p1);
            for (SquareClass sigma : F.square_classes())
                out.push_back(OrbitData{p1, m, F.mul(sign, sigma), desc});
        } else {
            SquareClass det_desc = F.mul(V.det(), F.pow(F.minus_one(), m));
            EpsHermSpace desc =
                classify_space(V.ext, V.eps, V.dim - p1,
                               detail::det_to_disc(F, V.dim - p1, det_desc));
            for (SquareClass sigma : V.ext.norm_class_reps())
                out.push_back(
                    OrbitData{p1, m, V.ext.normalize(F.mul(sign, sigma)), desc});
        }
        return out;
    }

    // p1 odd: the anisotropic vector e ranges over V_0 = V minus m hyperbolic
    // planes; its value class c determines the orbit.
    if (V.is_quadratic()) {
        detail::QuadInv q0 = detail::quad_invariants(V);
        for (int i = 0; i < m; ++i) q0 = detail::quad_strip_hyperbolic(F, q0);
        detail::QuadInv block0 = detail::hyperbolic_invariants(F, m);
        for (SquareClass c : F.square_classes()) {
            if (!detail::quad_represents(F, q0, c)) continue;
            detail::QuadInv block = detail::quad_sum(F, block0, detail::line_invariants(F, c));
            SquareClass det_desc = F.mul(V.det(), block.det);
            int hasse_desc = V.hasse * block.hasse * F.hilbert(block.det, det_desc);
            EpsHermSpace desc =
                classify_space(V.ext, 1, V.dim - p1,
                               detail::det_to_disc(F, V.dim - p1, det_desc), hasse_desc);
            out.push_back(OrbitData{p1, m, F.mul(F.pow(F.minus_one(), m), c), desc});
        }
        return out;
    }

    // Hermitian: V_0 of dimension >= 2 represents every class, a line only
    // its own determinant class.
    int dim0 = V.dim - 2 * m;
    SquareClass det0 = F.mul(V.det(), F.pow(F.minus_one(), m));
    std::vector<SquareClass> classes;
    if (dim0 >= 2)
        classes = V.ext.norm_class_reps();
    else
        classes = {V.ext.normalize(det0)};
    for (SquareClass c : classes) {
        SquareClass det_desc = F.mul(det0, c);
        EpsHermSpace desc = classify_space(
            V.ext, V.eps, V.dim - p1, detail::det_to_disc(F, V.dim - p1, det_desc));
        out.push_back(
            OrbitData{p1, m, V.ext.normalize(F.mul(F.pow(F.minus_one(), m), c)), desc});
    }
    return out;
}

} // namespace lpdescent
