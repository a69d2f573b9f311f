#pragma once

// Univariate polynomials over F_p, Berlekamp factorization, and minimal
// polynomials of matrices.

#include <algorithm>
#include <optional>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "syzygy/matrix.hpp"

namespace syzygy {

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::uint32_t p) : p_(p) {}
    /// Coefficients lowest degree first.
    Polynomial(std::uint32_t p, Vec coeffs) : p_(p), c_(std::move(coeffs)) { trim(); }

    static Polynomial from_ints(std::uint32_t p, const std::vector<std::int64_t>& coeffs)
    {
        Fp f{p};
        Vec c;
        for (auto x : coeffs)
            c.push_back(f.from_int(x));
        return Polynomial(p, std::move(c));
    }
    static Polynomial constant(std::uint32_t p, Scalar a) { return Polynomial(p, Vec{a}); }
    /// t^n
    static Polynomial monomial(std::uint32_t p, std::size_t n)
    {
        Vec c(n + 1, 0);
        c[n] = 1;
        return Polynomial(p, std::move(c));
    }

    std::uint32_t prime() const { return p_; }
    Fp field() const { return Fp{p_}; }
    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Vec& coefficients() const { return c_; }
    Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    Scalar leading() const { return c_.empty() ? 0 : c_.back(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    bool operator==(const Polynomial& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator<(const Polynomial& o) const
    {
        if (c_.size() != o.c_.size())
            return c_.size() < o.c_.size();
        return std::lexicographical_compare(c_.rbegin(), c_.rend(), o.c_.rbegin(), o.c_.rend());
    }

    Polynomial monic() const
    {
        if (is_zero())
            return *this;
        Fp f = field();
        Scalar inv = f.inv(leading());
        Vec c = c_;
        for (auto& x : c)
            x = f.mul(x, inv);
        return Polynomial(p_, std::move(c));
    }

    Polynomial operator+(const Polynomial& o) const
    {
        Fp f = field();
        Vec c(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = f.add(coeff(i), o.coeff(i));
        return Polynomial(p_, std::move(c));
    }
    Polynomial operator-(const Polynomial& o) const
    {
        Fp f = field();
        Vec c(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = f.sub(coeff(i), o.coeff(i));
        return Polynomial(p_, std::move(c));
    }
    Polynomial operator*(const Polynomial& o) const
    {
        if (is_zero() || o.is_zero())
            return Polynomial(p_);
        Fp f = field();
        Vec c(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i])
                continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                c[i + j] = f.add(c[i + j], f.mul(c_[i], o.c_[j]));
        }
        return Polynomial(p_, std::move(c));
    }
    Polynomial scaled(Scalar s) const
    {
        Fp f = field();
        Vec c = c_;
        for (auto& x : c)
            x = f.mul(x, s);
        return Polynomial(p_, std::move(c));
    }

    /// (quotient, remainder); divisor must be nonzero.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const
    {
        assert(!d.is_zero());
        Fp f = field();
        Vec r = c_;
        if (r.size() < d.c_.size())
            return {Polynomial(p_), *this};
        Vec q(r.size() - d.c_.size() + 1, 0);
        Scalar inv = f.inv(d.leading());
        for (std::size_t k = q.size(); k-- > 0;) {
            Scalar coef = f.mul(r[k + d.c_.size() - 1], inv);
            q[k] = coef;
            if (!coef)
                continue;
            for (std::size_t j = 0; j < d.c_.size(); ++j)
                r[k + j] = f.sub(r[k + j], f.mul(coef, d.c_[j]));
        }
        return {Polynomial(p_, std::move(q)), Polynomial(p_, std::move(r))};
    }
    Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
    Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

    Polynomial derivative() const
    {
        Fp f = field();
        Vec c;
        for (std::size_t i = 1; i < c_.size(); ++i)
            c.push_back(f.mul(static_cast<Scalar>(i % p_), c_[i]));
        return Polynomial(p_, std::move(c));
    }

    Scalar evaluate(Scalar x) const
    {
        Fp f = field();
        Scalar r = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            r = f.add(f.mul(r, x), c_[i]);
        return r;
    }

    Matrix evaluate(const Matrix& m) const
    {
        Matrix r(p_, m.rows(), m.cols());
        for (std::size_t i = c_.size(); i-- > 0;) {
            r = r * m;
            r.add_scaled(c_[i], Matrix::identity(p_, m.rows()));
        }
        return r;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::uint32_t p_ = kDefaultPrime;
    Vec c_;
};

/// Monic gcd (zero if both inputs are zero).
inline Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic.
inline std::tuple<Polynomial, Polynomial, Polynomial> extended_gcd(const Polynomial& a,
                                                                   const Polynomial& b)
{
    const auto p = a.prime();
    Polynomial r0 = a, r1 = b;
    Polynomial s0 = Polynomial::constant(p, 1), s1(p);
    Polynomial t0(p), t1 = Polynomial::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    Scalar inv = r0.field().inv(r0.leading());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// Bezout cofactors (u, v) with u*f + v*g = 1. Throws NotCoprime.
inline std::pair<Polynomial, Polynomial> coprime_split(const Polynomial& f, const Polynomial& g)
{
    auto [d, u, v] = extended_gcd(f, g);
    if (!d.is_one())
        throw Error(ErrorKind::NotCoprime, "polynomials share a nontrivial factor");
    return {u, v};
}

inline Polynomial pow_mod(Polynomial base, std::uint64_t e, const Polynomial& mod)
{
    Polynomial r = Polynomial::constant(base.prime(), 1) % mod;
    base = base % mod;
    while (e) {
        if (e & 1)
            r = (r * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return r;
}

struct Factor {
    Polynomial factor;  ///< monic irreducible
    unsigned multiplicity;
};

namespace detail {

// f(t) = g(t^p): return g (valid over F_p since a^p = a).
inline Polynomial pth_root(const Polynomial& f)
{
    const auto p = f.prime();
    Vec c;
    for (std::size_t i = 0; i < f.coefficients().size(); i += p)
        c.push_back(f.coefficients()[i]);
    return Polynomial(p, std::move(c));
}

// Squarefree decomposition of a monic polynomial: pairs (squarefree part, multiplicity).
inline void squarefree(const Polynomial& f, unsigned mult, std::vector<std::pair<Polynomial, unsigned>>& out)
{
    if (f.degree() <= 0)
        return;
    const auto p = f.prime();
    auto df = f.derivative();
    if (df.is_zero()) {
        squarefree(pth_root(f), mult * p, out);
        return;
    }
    auto c = gcd(f, df);
    auto w = f / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        auto y = gcd(w, c);
        auto z = w / y;
        if (z.degree() > 0)
            out.emplace_back(z.monic(), i * mult);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0)
        squarefree(pth_root(c.monic()), mult * p, out);
}

// Berlekamp subalgebra basis for squarefree monic f: polynomials g with g^p = g mod f.
inline std::vector<Polynomial> berlekamp_basis(const Polynomial& f)
{
    const auto p = f.prime();
    const auto n = static_cast<std::size_t>(f.degree());
    Matrix q(p, n, n);
    auto tp = pow_mod(Polynomial::monomial(p, 1), p, f);
    Polynomial cur = Polynomial::constant(p, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            q(i, j) = cur.coeff(j);
        cur = (cur * tp) % f;
    }
    // g*(Q - I) = 0 in coefficient coordinates.
    auto k = kernel_basis(q - Matrix::identity(p, n));
    std::vector<Polynomial> out;
    for (std::size_t r = 0; r < k.rows(); ++r)
        out.emplace_back(p, k.row_vec(r));
    return out;
}

inline void split_squarefree(const Polynomial& f, std::mt19937_64& rng, std::vector<Polynomial>& out)
{
    if (f.degree() <= 0)
        return;
    if (f.degree() == 1) {
        out.push_back(f.monic());
        return;
    }
    const auto p = f.prime();
    auto basis = berlekamp_basis(f);
    if (basis.size() <= 1) {
        out.push_back(f.monic());
        return;
    }
    if (p <= 257) {
        // Exhaustive Berlekamp: some basis element and shift separate a factor.
        for (const auto& g : basis) {
            if (g.degree() <= 0)
                continue;
            for (Scalar s = 0; s < p; ++s) {
                auto d = gcd(f, g - Polynomial::constant(p, s));
                if (d.degree() > 0 && d.degree() < f.degree()) {
                    split_squarefree(d, rng, out);
                    split_squarefree(f / d, rng, out);
                    return;
                }
            }
        }
    }
    // Random element of the Berlekamp subalgebra, split by g^((p-1)/2) - 1.
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial g(p);
        for (const auto& b : basis)
            g = g + b.scaled(static_cast<Scalar>(rng() % p));
        auto h = pow_mod(g, (p - 1) / 2, f) - Polynomial::constant(p, 1);
        auto d = gcd(f, h);
        if (d.degree() > 0 && d.degree() < f.degree()) {
            split_squarefree(d, rng, out);
            split_squarefree(f / d, rng, out);
            return;
        }
    }
    throw Error(ErrorKind::RandomnessExhausted, "Berlekamp splitting did not converge");
}

}  // namespace detail

/// Irreducible factors with multiplicities, sorted by (degree, coefficients).
/// The product of the returned factors equals f up to its leading coefficient.
inline std::vector<Factor> factor_polynomial(const Polynomial& f)
{
    if (f.is_zero())
        throw Error(ErrorKind::ShapeMismatch, "cannot factor the zero polynomial");
    std::vector<std::pair<Polynomial, unsigned>> parts;
    detail::squarefree(f.monic(), 1, parts);
    std::mt19937_64 rng(0x5eed);
    std::vector<Factor> out;
    for (const auto& [part, mult] : parts) {
        std::vector<Polynomial> irreducibles;
        detail::split_squarefree(part, rng, irreducibles);
        for (auto& g : irreducibles)
            out.push_back({g, mult});
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.factor == b.factor)
            return a.multiplicity < b.multiplicity;
        return a.factor < b.factor;
    });
    std::vector<Factor> merged;
    for (auto& x : out) {
        if (!merged.empty() && merged.back().factor == x.factor)
            merged.back().multiplicity += x.multiplicity;
        else
            merged.push_back(x);
    }
    return merged;
}

inline bool is_irreducible(const Polynomial& f)
{
    auto fs = factor_polynomial(f);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

/// Finds the first linear relation in a sequence of vectors v_0, v_1, ...
/// add() returns the relation coefficients (a_0..a_k with a_k = 1) once
/// v_k lies in the span of the previous vectors.
class RelationFinder {
public:
    RelationFinder(std::uint32_t p, std::size_t width) : f_{p}, width_(width) {}

    std::optional<Vec> add(Vec v)
    {
        const std::size_t k = count_;
        // Augment with the tracking vector e_k.
        Vec track(k + 1, 0);
        track[k] = 1;
        for (auto& t : tracks_)
            t.resize(k + 1, 0);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Scalar c = v[pivots_[r]];
            if (!c)
                continue;
            Scalar m = f_.neg(c);
            axpy(f_, m, rows_[r], v);
            axpy(f_, m, tracks_[r], track);
        }
        ++count_;
        if (syzygy::is_zero(v))
            return track;
        std::size_t piv = 0;
        while (v[piv] == 0)
            ++piv;
        Scalar inv = f_.inv(v[piv]);
        for (auto& x : v)
            x = f_.mul(x, inv);
        for (auto& x : track)
            x = f_.mul(x, inv);
        rows_.push_back(std::move(v));
        tracks_.push_back(std::move(track));
        pivots_.push_back(piv);
        return std::nullopt;
    }

private:
    Fp f_;
    std::size_t width_;
    std::size_t count_ = 0;
    std::vector<Vec> rows_, tracks_;
    std::vector<std::size_t> pivots_;
};

/// Monic least-degree polynomial annihilating the square matrix m.
inline Polynomial minimal_polynomial(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw Error(ErrorKind::ShapeMismatch, "minimal_polynomial needs a square matrix");
    const auto p = m.prime();
    const std::size_t n = m.rows();
    RelationFinder finder(p, n * n);
    Matrix power = Matrix::identity(p, n);
    for (std::size_t k = 0; k <= n; ++k) {
        if (auto rel = finder.add(power.data()))
            return Polynomial(p, *rel).monic();
        power = power * m;
    }
    throw Error(ErrorKind::Inconsistent, "Cayley-Hamilton bound exceeded");
}

}  // namespace syzygy
