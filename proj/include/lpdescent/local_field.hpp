#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>
#include <optional>

namespace lpdescent {

/// Exact arithmetic in F^x / (F^x)^2 for F = Q_p or R, together with the
/// Hilbert symbol and the norm-class group of a quadratic extension.
///
/// Square classes are stored as exponent vectors over a fixed generating set:
///   p odd : {u, p}            with u the smallest positive non-residue mod p
///   p = 2 : {-1, 5, 2}        representatives {±1, ±5, ±2, ±10}
///   real  : {-1}
/// Multiplication is XOR of exponent bits.
struct SquareClass {
    std::uint16_t field_code = 0;
    std::uint8_t bits = 0;

    friend bool operator==(const SquareClass&, const SquareClass&) = default;
    friend auto operator<=>(const SquareClass&, const SquareClass&) = default;
};

class LocalField {
public:
    enum class Kind { PAdic, Real };

    static LocalField p_adic(long p) {
        if (p < 2 || !is_prime(p))
            throw std::invalid_argument("residue characteristic must be prime");
        LocalField f;
        f.kind_ = Kind::PAdic;
        f.p_ = p;
        return f;
    }

    static LocalField real() {
        LocalField f;
        f.kind_ = Kind::Real;
        f.p_ = 0;
        return f;
    }

    // The complex field is intentionally not constructible.

    Kind kind() const { return kind_; }
    bool is_real() const { return kind_ == Kind::Real; }
    bool is_p_adic() const { return kind_ == Kind::PAdic; }
    long p() const { return p_; }

    std::uint16_t code() const {
        return is_real() ? 1 : static_cast<std::uint16_t>(2 + p_);
    }

    int class_count() const {
        if (is_real()) return 2;
        return p_ == 2 ? 8 : 4;
    }

    int class_bit_width() const {
        if (is_real()) return 1;
        return p_ == 2 ? 3 : 2;
    }

    /// Smallest positive quadratic non-residue mod p (p odd).
    long nonresidue_unit() const {
        require_p_adic();
        if (p_ == 2) throw std::logic_error("no canonical unit non-residue at p=2");
        for (long u = 2; u < p_; ++u)
            if (legendre(u) == -1) return u;
        throw std::logic_error("unreachable: non-residue exists for p odd");
    }

    SquareClass one() const { return make(0); }

    SquareClass minus_one() const {
        if (is_real()) return make(1);
        if (p_ == 2) return make(0b001);
        return make(legendre(-1) == -1 ? 1 : 0);
    }

    SquareClass uniformizer_class() const {
        require_p_adic();
        return make(p_ == 2 ? 0b100 : 0b10);
    }

    SquareClass mul(SquareClass a, SquareClass b) const {
        check(a);
        check(b);
        return make(a.bits ^ b.bits);
    }

    SquareClass pow(SquareClass a, long e) const {
        check(a);
        return (e % 2 == 0) ? one() : a;
    }

    /// Square class of a non-zero integer.
    SquareClass class_of(long long v) const {
        if (v == 0) throw std::invalid_argument("square class of zero");
        if (is_real()) return make(v < 0 ? 1 : 0);
        long long w = v;
        int val = 0;
        while (w % p_ == 0) {
            w /= p_;
            ++val;
        }
        if (p_ == 2) {
            long long u = ((w % 8) + 8) % 8;
            std::uint8_t s = (u % 4 == 3) ? 1 : 0;
            std::uint8_t t = (u == 3 || u == 5) ? 1 : 0;
            return make(static_cast<std::uint8_t>((s) | (t << 1) | ((val & 1) << 2)));
        }
        std::uint8_t s = (legendre(w) == -1) ? 1 : 0;
        return make(static_cast<std::uint8_t>(s | ((val & 1) << 1)));
    }

    std::vector<SquareClass> square_classes() const {
        std::vector<SquareClass> out;
        for (int b = 0; b < class_count(); ++b)
            out.push_back(make(static_cast<std::uint8_t>(b)));
        return out;
    }

    /// A canonical integer representative of the class.
    long long representative(SquareClass a) const {
        check(a);
        if (is_real()) return a.bits ? -1 : 1;
        if (p_ == 2) {
            long long r = 1;
            if (a.bits & 1) r = -r;
            if (a.bits & 2) r *= 5;
            if (a.bits & 4) r *= 2;
            return r;
        }
        long long r = 1;
        if (a.bits & 1) r *= nonresidue_unit();
        if (a.bits & 2) r *= p_;
        return r;
    }

    std::string tag(SquareClass a) const {
        check(a);
        if (is_real()) return a.bits ? "-1" : "1";
        if (p_ == 2) return std::to_string(representative(a));
        switch (a.bits) {
            case 0: return "1";
            case 1: return "u";
            case 2: return "p";
            default: return "up";
        }
    }

    SquareClass parse_tag(const std::string& s) const {
        if (is_p_adic() && p_ != 2) {
            if (s == "1") return make(0);
            if (s == "u") return make(1);
            if (s == "p") return make(2);
            if (s == "up" || s == "pu") return make(3);
        }
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos == s.size() && v != 0) return class_of(v);
        } catch (const std::exception&) {
        }
        throw std::invalid_argument("unrecognized square-class tag '" + s + "'");
    }

    /// Hilbert symbol (a, b)_F by the closed-form residue formulas.
    int hilbert(SquareClass a, SquareClass b) const {
        check(a);
        check(b);
        if (is_real()) return (a.bits & b.bits & 1) ? -1 : 1;
        if (p_ == 2) {
            // a = (-1)^{s} 5^{t} 2^{v}; epsilon(a') = s, omega(a') = t.
            int sa = a.bits & 1, ta = (a.bits >> 1) & 1, va = (a.bits >> 2) & 1;
            int sb = b.bits & 1, tb = (b.bits >> 1) & 1, vb = (b.bits >> 2) & 1;
            int e = sa * sb + va * tb + vb * ta;
            return (e % 2) ? -1 : 1;
        }
        // a = u^{s} p^{v}; (a,b) = leg(-1)^{va vb} leg(u)^{sa vb + sb va}.
        int sa = a.bits & 1, va = (a.bits >> 1) & 1;
        int sb = b.bits & 1, vb = (b.bits >> 1) & 1;
        int e = va * vb * (((p_ - 1) / 2) % 2) + sa * vb + sb * va;
        return (e % 2) ? -1 : 1;
    }

    friend bool operator==(const LocalField& x, const LocalField& y) {
        return x.kind_ == y.kind_ && x.p_ == y.p_;
    }

    static bool is_prime(long n) {
        if (n < 2) return false;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    int legendre(long long v) const {
        require_p_adic();
        long long w = ((v % p_) + p_) % p_;
        if (w == 0) throw std::invalid_argument("legendre of multiple of p");
        long long r = 1, base = w, e = (p_ - 1) / 2;
        while (e) {
            if (e & 1) r = r * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return r == 1 ? 1 : -1;
    }

private:
    SquareClass make(std::uint8_t bits) const { return SquareClass{code(), bits}; }

    void check(SquareClass a) const {
        if (a.field_code != code())
            throw std::invalid_argument("square class belongs to a different field");
        if (a.bits >= class_count())
            throw std::invalid_argument("square-class bits out of range");
    }

    void require_p_adic() const {
        if (!is_p_adic()) throw std::logic_error("operation requires a p-adic field");
    }

    Kind kind_ = Kind::Real;
    long p_ = 0;
};

/// E = F or E = F(sqrt(d)) with d a non-square class.
class QuadExt {
public:
    static QuadExt trivial(LocalField F) {
        QuadExt e;
        e.F_ = F;
        return e;
    }

    static QuadExt quadratic(LocalField F, SquareClass d) {
        if (d == F.one())
            throw std::invalid_argument("quadratic extension requires a non-square class");
        QuadExt e;
        e.F_ = F;
        e.d_ = d;
        return e;
    }

    const LocalField& field() const { return F_; }
    bool is_split() const { return !d_.has_value(); }
    SquareClass d() const {
        if (is_split()) throw std::logic_error("E = F has no discriminant");
        return *d_;
    }

    /// omega_{E/F}(a) = (a, d)_F, the quadratic character attached to E/F
    /// by local class field theory; its kernel is the norm classes.
    int omega(SquareClass a) const {
        if (is_split()) throw std::invalid_argument("omega requires E != F");
        return F_.hilbert(a, *d_);
    }

    /// Representatives of Z = F^x / N E^x.  For E = F this is all square
    /// classes; otherwise a norm class and a non-norm class.
    std::vector<SquareClass> norm_class_reps() const {
        if (is_split()) return F_.square_classes();
        std::vector<SquareClass> out{F_.one()};
        for (SquareClass c : F_.square_classes()) {
            if (omega(c) == -1) {
                out.push_back(c);
                break;
            }
        }
        return out;
    }

    std::size_t norm_class_count() const { return is_split() ? F_.class_count() : 2; }

    /// Canonical representative of the image of a in Z.
    SquareClass normalize(SquareClass a) const {
        if (is_split()) return a;
        auto reps = norm_class_reps();
        return omega(a) == 1 ? reps[0] : reps[1];
    }

    bool same_norm_class(SquareClass a, SquareClass b) const {
        if (is_split()) return a == b;
        return omega(a) == omega(b);
    }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.F_ == y.F_ && x.d_ == y.d_;
    }

private:
    LocalField F_ = LocalField::real();
    std::optional<SquareClass> d_;
};

} // namespace lpdescent
