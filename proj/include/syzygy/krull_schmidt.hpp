#pragma once

/* Endomorphism rings, idempotent decompositions and certified isomorphism and
 * direct-summand tests.
 *
 * Elements of End(x) are stored as dim x by dim x matrices (row convention).
 * The ring product is composition: (f * g)(v) = f(g(v)), whose matrix is
 * M_g * M_f. With this product End(eA) is eAe rather than its opposite.
 */

#include <cmath>
#include <random>

#include "syzygy/module.hpp"
#include "syzygy/polynomial.hpp"

namespace syzygy {

inline constexpr std::size_t kDefaultIsoTrials = 5;

class EndRing {
public:
    EndRing() = default;

    explicit EndRing(RightModule x) : module_(std::move(x))
    {
        const auto p = module_.prime();
        const std::size_t d = module_.dim();
        auto homs = hom_space(module_, module_);
        Matrix flat(p, 0, d * d);
        for (const auto& h : homs)
            flat.append_row(h.data());
        flat_ = Subspace::span(flat);
        for (std::size_t r = 0; r < flat_.dim(); ++r)
            basis_.push_back(element(unit_vector(r)));
        if (d)
            unit_ = coords(Matrix::identity(p, d));
    }

    const RightModule& module() const { return module_; }
    std::uint32_t prime() const { return module_.prime(); }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Matrix>& basis() const { return basis_; }
    const Vec& unit() const { return unit_; }

    /// Coordinates of an endomorphism in the basis.
    Vec coords(const Matrix& h) const { return flat_.coords(h.data()); }

    bool contains(const Matrix& h) const
    {
        return h.rows() == module_.dim() && h.cols() == module_.dim() && flat_.contains(h.data());
    }

    Matrix element(const Vec& c) const
    {
        const std::size_t d = module_.dim();
        Matrix m(prime(), d, d);
        Fp f{prime()};
        for (std::size_t r = 0; r < c.size(); ++r)
            if (c[r])
                axpy(f, c[r], flat_.basis.row(r), m.data());
        return m;
    }

    /// f * g = f o g.
    static Matrix product(const Matrix& f, const Matrix& g) { return g * f; }

    /// The composition table as an algebra (radical and idempotents left empty).
    StructureAlgebra structure_algebra() const
    {
        const std::size_t n = dim();
        ProductTable t(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Vec c = coords(product(basis_[i], basis_[j]));
                for (std::size_t k = 0; k < n; ++k)
                    if (c[k])
                        t[i * n + j].push_back({static_cast<std::uint32_t>(k), c[k]});
            }
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i)
            labels.push_back("h" + std::to_string(i + 1));
        return StructureAlgebra(prime(), std::move(labels), std::move(t), unit_, Matrix(prime(), 0, n), {},
                                {});
    }

private:
    Vec unit_vector(std::size_t r) const
    {
        Vec v(flat_.dim(), 0);
        v[r] = 1;
        return v;
    }

    RightModule module_;
    Subspace flat_;
    std::vector<Matrix> basis_;
    Vec unit_;
};

inline EndRing end_ring(const RightModule& x) { return EndRing(x); }

namespace detail {

inline Vec flatten(const Matrix& m) { return m.data(); }

/// rad End(x) as a subspace of flattened matrices, with its nilpotency index.
struct RadicalData {
    EchelonBasis flat;
    Matrix coords;  ///< rows in End coordinates
    std::size_t nilpotency = 0;
};

inline void require_large_characteristic(const EndRing& e)
{
    const std::size_t bound = std::max(e.dim(), e.module().dim());
    if (e.prime() <= bound)
        throw Error(ErrorKind::CharTooSmall, "characteristic " + std::to_string(e.prime()) +
                                                 " does not exceed dimension " + std::to_string(bound));
}

/// The radical of the trace form (f, g) -> tr(f g) on the module. A trace
/// form radical is a two-sided ideal; it is verified nilpotent here, and for
/// p > dim it contains the Jacobson radical, so the two coincide.
inline RadicalData radical_data(const EndRing& e)
{
    require_large_characteristic(e);
    const auto p = e.prime();
    const std::size_t n = e.dim(), d = e.module().dim();
    Matrix gram(p, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Matrix ti = e.basis()[i].transpose();
        for (std::size_t j = i; j < n; ++j) {
            // tr(A B) = sum of entrywise products of A and B^T.
            const auto& a = e.basis()[j].data();
            const auto& b = ti.data();
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < d * d; ++k)
                acc = (acc + static_cast<std::uint64_t>(a[k]) * b[k]) % p;
            gram(i, j) = gram(j, i) = static_cast<Scalar>(acc);
        }
    }
    RadicalData r{EchelonBasis(p, d * d), n ? kernel_basis(gram) : Matrix(p, 0, 0), 0};
    std::vector<Matrix> rad;
    for (std::size_t k = 0; k < r.coords.rows(); ++k) {
        rad.push_back(e.element(r.coords.row_vec(k)));
        r.flat.add(flatten(rad.back()));
    }
    // Nilpotency via the faithful action on the module: x J^k shrinks to 0.
    Matrix w = Matrix::identity(p, d);
    while (w.rows()) {
        if (r.nilpotency > d)
            throw Error(ErrorKind::InvalidAlgebra, "trace-form radical is not nilpotent");
        ++r.nilpotency;
        if (rad.empty()) {
            w = Matrix(p, 0, d);
            break;
        }
        std::vector<Matrix> imgs;
        for (const auto& m : rad)
            imgs.push_back(w * m);
        w = row_space_basis(Matrix::vstack(p, imgs, d));
    }
    if (d == 0)
        r.nilpotency = 0;
    return r;
}

/// Newton iteration z -> 3z^2 - 2z^3; exact because the radical is nilpotent.
inline Matrix lift_idempotent_matrix(const Matrix& z0, const RadicalData& rad)
{
    Matrix z = z0;
    Matrix z2 = z * z;
    if (!rad.flat.contains(flatten(z2 - z)))
        throw Error(ErrorKind::NotIdempotentInQuotient, "element is not idempotent modulo the radical");
    // The defect z^2 - z lies in J^(2^i) after i steps.
    std::size_t max_steps = 1;
    while ((std::size_t{1} << max_steps) < std::max<std::size_t>(rad.nilpotency, 2))
        ++max_steps;
    for (std::size_t step = 0; step <= max_steps; ++step) {
        if (z2 == z)
            return z;
        Matrix z3 = z2 * z;
        z = z2.scaled(3) - z3.scaled(2);
        z2 = z * z;
    }
    if (z2 == z)
        return z;
    throw Error(ErrorKind::InvalidAlgebra, "idempotent lifting did not converge");
}

}  // namespace detail

/// Basis of rad End(x), rows in the coordinates of EndRing::basis().
inline Matrix endring_radical(const EndRing& e) { return detail::radical_data(e).coords; }

/// Lifts an element that is idempotent modulo the radical to an idempotent.
inline Matrix lift_idempotent(const EndRing& e, const Matrix& ebar)
{
    return detail::lift_idempotent_matrix(ebar, detail::radical_data(e));
}

namespace detail {

inline Matrix eval_in_corner(const Polynomial& g, const Matrix& c, const Matrix& unit)
{
    const auto& co = g.coefficients();
    Matrix r(c.prime(), c.rows(), c.cols());
    for (std::size_t k = co.size(); k-- > 0;) {
        r = r * c;
        r.add_scaled(co[k], unit);
    }
    return r;
}

/// Minimal polynomial of c in the corner algebra with unit eps, modulo the radical.
inline Polynomial corner_minimal_polynomial(const Matrix& c, const Matrix& eps, const RadicalData& rad)
{
    const auto p = c.prime();
    const std::size_t w = c.rows() * c.cols();
    RelationFinder finder(p, w);
    Matrix power = eps;
    for (std::size_t k = 0; k <= w + 1; ++k) {
        Vec v = flatten(power);
        rad.flat.reduce(v);
        if (auto rel = finder.add(std::move(v)))
            return Polynomial(p, *rel).monic();
        power = power * c;
    }
    throw Error(ErrorKind::Inconsistent, "no polynomial relation found");
}

struct IdempotentSplitter {
    const EndRing& ring;
    const RadicalData& rad;
    std::mt19937_64 rng;
    std::size_t trials;
    std::vector<Matrix> primitive;

    /// Dimension of eps E eps modulo the radical, and a spanning set of the corner.
    std::pair<std::size_t, std::vector<Matrix>> corner(const Matrix& eps) const
    {
        const auto p = ring.prime();
        const std::size_t w = ring.module().dim() * ring.module().dim();
        EchelonBasis mod_rad = rad.flat;
        EchelonBasis span(p, w);
        std::vector<Matrix> gens;
        std::size_t quotient_dim = 0;
        for (const auto& b : ring.basis()) {
            Matrix m = eps * b * eps;
            if (span.add(flatten(m))) {
                if (mod_rad.add(flatten(m)))
                    ++quotient_dim;
                gens.push_back(std::move(m));
            }
        }
        return {quotient_dim, std::move(gens)};
    }

    void split(const Matrix& eps)
    {
        const auto p = ring.prime();
        auto [qdim, gens] = corner(eps);
        if (qdim <= 1) {
            primitive.push_back(eps);
            return;
        }
        std::uniform_int_distribution<Scalar> coef(0, p - 1);
        for (std::size_t t = 0; t < trials; ++t) {
            Matrix c(p, eps.rows(), eps.cols());
            for (const auto& g : gens)
                c.add_scaled(coef(rng), g);
            Polynomial mu = corner_minimal_polynomial(c, eps, rad);
            auto fs = factor_polynomial(mu);
            if (fs.size() == 1) {
                // F_p[c] is the whole corner and a field: the corner is local.
                if (fs[0].multiplicity == 1 && static_cast<std::size_t>(mu.degree()) == qdim) {
                    primitive.push_back(eps);
                    return;
                }
                continue;
            }
            Polynomial g1 = Polynomial::constant(p, 1);
            for (unsigned k = 0; k < fs[0].multiplicity; ++k)
                g1 = g1 * fs[0].factor;
            Polynomial g2 = mu / g1;
            Polynomial v = coprime_split(g1, g2).second;
            Matrix z = eval_in_corner(v * g2, c, eps);
            Matrix e1 = lift_idempotent_matrix(eps * z * eps, rad);
            split(e1);
            split(eps - e1);
            return;
        }
        throw Error(ErrorKind::RandomnessExhausted,
                    "no splitting element found in " + std::to_string(trials) + " trials");
    }
};

}  // namespace detail

/// A complete family of orthogonal primitive idempotents of End(x), as
/// matrices. Las Vegas: the family is verified exactly before returning.
inline std::vector<Matrix> primitive_idempotents(const EndRing& e, std::uint64_t seed,
                                                 std::size_t trials = 200)
{
    const auto p = e.prime();
    const std::size_t d = e.module().dim();
    if (d == 0)
        return {};
    auto rad = detail::radical_data(e);
    detail::IdempotentSplitter sp{e, rad, std::mt19937_64(seed), trials, {}};
    sp.split(Matrix::identity(p, d));
    // Exact certificate: idempotent, orthogonal, summing to the identity.
    Matrix sum(p, d, d);
    for (std::size_t i = 0; i < sp.primitive.size(); ++i) {
        const Matrix& a = sp.primitive[i];
        if (a * a != a || !e.contains(a))
            throw Error(ErrorKind::InvalidAlgebra, "idempotent certificate failed");
        for (std::size_t j = 0; j < sp.primitive.size(); ++j)
            if (i != j && !(a * sp.primitive[j]).is_zero())
                throw Error(ErrorKind::InvalidAlgebra, "orthogonality certificate failed");
        sum = sum + a;
    }
    if (sum != Matrix::identity(p, d))
        throw Error(ErrorKind::InvalidAlgebra, "idempotents do not sum to the identity");
    return std::move(sp.primitive);
}

// ---------------------------------------------------------------------------
// Isomorphism tests

enum class IsoReason { None, DimMismatch, HomObstruction, SamplingExhausted };

inline std::string to_string(IsoReason r)
{
    switch (r) {
    case IsoReason::None: return "none";
    case IsoReason::DimMismatch: return "DimMismatch";
    case IsoReason::HomObstruction: return "HomObstruction";
    case IsoReason::SamplingExhausted: return "SamplingExhausted";
    }
    return "?";
}

/// One-sided error bound (numerator / denominator)^exponent.
struct ErrorBound {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;
    std::size_t exponent = 0;

    double value() const
    {
        return std::pow(static_cast<double>(numerator) / static_cast<double>(denominator),
                        static_cast<double>(exponent));
    }
};

struct IsoVerdict {
    bool iso = false;
    IsoReason reason = IsoReason::None;
    Matrix witness;  ///< x -> y isomorphism when iso
    ErrorBound bound;
};

/// Exact pre-checks, then random sampling of Hom(x, y). A uniform element of
/// Hom(x, y) is singular with probability at most dim/p when x and y are
/// isomorphic (its determinant is a nonzero polynomial of degree dim).
inline IsoVerdict iso_test(const RightModule& x, const RightModule& y,
                           std::size_t trials = kDefaultIsoTrials, std::uint64_t seed = 0)
{
    require_same_algebra(x, y);
    const auto p = x.prime();
    IsoVerdict v;
    if (x.dim() != y.dim()) {
        v.reason = IsoReason::DimMismatch;
        return v;
    }
    const std::size_t d = x.dim();
    if (x == y) {
        v.iso = true;
        v.witness = Matrix::identity(p, d);
        return v;
    }
    if (x.dimension_vector() != y.dimension_vector()) {
        v.reason = IsoReason::DimMismatch;
        return v;
    }
    auto hxy = hom_space(x, y);
    const std::size_t n = hxy.size();
    if (n != hom_space(y, x).size() || n != hom_space(x, x).size() || n != hom_space(y, y).size() ||
        n == 0) {
        v.reason = IsoReason::HomObstruction;
        return v;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Scalar> coef(0, p - 1);
    for (std::size_t t = 0; t < trials; ++t) {
        Matrix h(p, d, d);
        for (const auto& b : hxy)
            h.add_scaled(coef(rng), b);
        if (inverse(h)) {
            v.iso = true;
            v.witness = std::move(h);
            return v;
        }
    }
    v.reason = IsoReason::SamplingExhausted;
    v.bound = ErrorBound{d, p, trials};
    return v;
}

/// Exact check of an isomorphism witness.
inline bool verify_iso_witness(const RightModule& x, const RightModule& y, const Matrix& w)
{
    return x.dim() == y.dim() && is_module_hom(x, y, w) && inverse(w).has_value();
}

/// Iso classes seen so far; lookups are prefiltered by dimension vector.
class IsoClassRegistry {
public:
    explicit IsoClassRegistry(std::uint64_t seed = 0, std::size_t trials = kDefaultIsoTrials)
        : seed_(seed), trials_(trials) {}

    struct Match {
        std::size_t id;
        bool is_new;
        Matrix witness;  ///< module -> representative
    };

    Match classify(const RightModule& m)
    {
        auto dv = m.dimension_vector();
        for (std::size_t i = 0; i < reps_.size(); ++i) {
            if (dims_[i] != dv || reps_[i].dim() != m.dim())
                continue;
            auto v = iso_test(m, reps_[i], trials_, seed_ + i);
            if (v.iso)
                return {i, false, std::move(v.witness)};
        }
        reps_.push_back(m);
        dims_.push_back(std::move(dv));
        return {reps_.size() - 1, true, Matrix::identity(m.prime(), m.dim())};
    }

    const RightModule& representative(std::size_t id) const { return reps_[id]; }
    std::size_t size() const { return reps_.size(); }

private:
    std::uint64_t seed_;
    std::size_t trials_;
    std::vector<RightModule> reps_;
    std::vector<std::vector<std::size_t>> dims_;
};

// ---------------------------------------------------------------------------
// Decomposition

struct Summand {
    RightModule module;
    Matrix inclusion;   ///< summand -> x
    Matrix projection;  ///< x -> summand
    Matrix idempotent;  ///< inclusion after projection, an idempotent of End(x)
    std::size_t iso_class = 0;
    Matrix to_representative;  ///< isomorphism onto the class representative
};

struct Decomposition {
    std::vector<Summand> summands;
    std::vector<RightModule> classes;       ///< one representative per iso class
    std::vector<std::size_t> multiplicity;  ///< per class
    bool idempotents_certified = false;
    bool reassembly_certified = false;
};

inline Decomposition decompose(const RightModule& x, std::uint64_t seed = 0)
{
    Decomposition dec;
    const auto p = x.prime();
    if (x.dim() == 0) {
        dec.idempotents_certified = dec.reassembly_certified = true;
        return dec;
    }
    EndRing e(x);
    auto idem = primitive_idempotents(e, seed);
    dec.idempotents_certified = true;  // primitive_idempotents throws otherwise
    IsoClassRegistry reg(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Matrix> incl;
    for (auto& eps : idem) {
        Subspace s = Subspace::span(eps);
        Summand sm;
        sm.projection = eps.select_cols(s.pivots);
        sm.inclusion = s.basis;
        sm.module = submodule_on(x, s).module;
        sm.idempotent = eps;
        auto m = reg.classify(sm.module);
        sm.iso_class = m.id;
        sm.to_representative = std::move(m.witness);
        if (m.is_new) {
            dec.classes.push_back(sm.module);
            dec.multiplicity.push_back(0);
        }
        ++dec.multiplicity[m.id];
        incl.push_back(sm.inclusion);
        dec.summands.push_back(std::move(sm));
    }
    // The summed inclusions form an isomorphism from the direct sum onto x.
    Matrix total = Matrix::vstack(p, incl, x.dim());
    bool ok = inverse(total).has_value();
    for (const auto& sm : dec.summands)
        ok = ok && is_module_hom(sm.module, x, sm.inclusion) && is_module_hom(x, sm.module, sm.projection) &&
             sm.inclusion * sm.projection == Matrix::identity(p, sm.module.dim());
    dec.reassembly_certified = ok;
    return dec;
}

// ---------------------------------------------------------------------------
// Direct summands

struct SummandCertificate {
    std::size_t multiplicity = 0;
    Matrix u;  ///< x -> y, split mono
    Matrix v;  ///< y -> x with u v = id_x (row convention: u then v)
    bool verified = false;
};

/// How many times x splits off y, with split maps certifying one copy.
inline SummandCertificate summand_multiplicity(const RightModule& x, const RightModule& y,
                                               std::uint64_t seed = 0)
{
    require_same_algebra(x, y);
    const auto p = x.prime();
    SummandCertificate c;
    if (x.dim() == 0) {
        c.multiplicity = 1;
        c.u = Matrix(p, 0, y.dim());
        c.v = Matrix(p, y.dim(), 0);
        c.verified = true;
        return c;
    }
    if (x.dim() > y.dim())
        return c;
    auto dx = decompose(x, seed);
    auto dy = decompose(y, seed + 1);
    // Match each class of x with a class of y.
    std::vector<long> match(dx.classes.size(), -1);
    std::vector<Matrix> link(dx.classes.size());  // rep_x -> rep_y
    std::size_t mult = SIZE_MAX;
    for (std::size_t i = 0; i < dx.classes.size(); ++i) {
        for (std::size_t j = 0; j < dy.classes.size() && match[i] < 0; ++j) {
            auto v = iso_test(dx.classes[i], dy.classes[j], kDefaultIsoTrials, seed + 7 * i + j);
            if (v.iso) {
                match[i] = static_cast<long>(j);
                link[i] = std::move(v.witness);
            }
        }
        std::size_t b = match[i] < 0 ? 0 : dy.multiplicity[match[i]];
        mult = std::min(mult, b / dx.multiplicity[i]);
    }
    c.multiplicity = mult;
    if (mult == 0)
        return c;
    // Pair every summand of x with a distinct summand of y in the matching class.
    std::vector<bool> used(dy.summands.size(), false);
    c.u = Matrix(p, x.dim(), y.dim());
    c.v = Matrix(p, y.dim(), x.dim());
    for (const auto& s : dx.summands) {
        const auto target = static_cast<std::size_t>(match[s.iso_class]);
        std::size_t t = 0;
        while (used[t] || dy.summands[t].iso_class != target)
            ++t;
        used[t] = true;
        const auto& ts = dy.summands[t];
        // s -> rep_x -> rep_y <- t
        Matrix phi = s.to_representative * link[s.iso_class] * *inverse(ts.to_representative);
        c.u = c.u + s.projection * phi * ts.inclusion;
        c.v = c.v + ts.projection * *inverse(phi) * s.inclusion;
    }
    c.verified = is_module_hom(x, y, c.u) && is_module_hom(y, x, c.v) &&
                 c.u * c.v == Matrix::identity(p, x.dim());
    return c;
}

/// Exact check of a summand certificate.
inline bool verify_summand_certificate(const RightModule& x, const RightModule& y, const Matrix& u,
                                       const Matrix& v)
{
    return u.rows() == x.dim() && u.cols() == y.dim() && v.rows() == y.dim() && v.cols() == x.dim() &&
           is_module_hom(x, y, u) && is_module_hom(y, x, v) && u * v == Matrix::identity(x.prime(), x.dim());
}

}  // namespace syzygy
