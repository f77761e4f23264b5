#include "qphase/hilbert.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <string>

#include "qphase/error.hpp"
#include "qphase/numtheory.hpp"

namespace qphase::hilbert {

namespace {

using Eigen::Index;

void check_dim(std::size_t dim, const char* what)
{
    if (dim == 0 || dim > kMaxDim) {
        throw DomainError(std::string(what) + ": dimension must lie in [1, " +
                          std::to_string(kMaxDim) + "]");
    }
}

void check_same_basis(Basis a, Basis b, const char* what)
{
    if (!(a == b)) {
        throw DomainError(std::string(what) + ": operands live on different bases");
    }
}

std::uint64_t reduce(std::int64_t p, std::uint64_t q)
{
    const auto m = static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(((p % m) + m) % m);
}

/// exp(2 pi i j / q) with j already in [0, q).
Complex root_of_unity(std::uint64_t j, std::uint64_t q)
{
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                               static_cast<double>(q));
}

void require_coprime(std::uint64_t a, std::uint64_t q, const char* what)
{
    if (q < 2) {
        throw DomainError(std::string(what) + ": modulus must be >= 2");
    }
    if (std::gcd(a % q, q) != 1) {
        throw DomainError(std::string(what) + ": gcd(" + std::to_string(a) + ", " +
                          std::to_string(q) + ") != 1, map is not invertible");
    }
}

void put_number(std::ostream& os, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

} // namespace

// --- containers ---------------------------------------------------------------

StateVector::StateVector(BasisOrigin origin, Eigen::VectorXcd amplitudes)
    : origin_(origin), amps_(std::move(amplitudes))
{
    check_dim(static_cast<std::size_t>(amps_.size()), "StateVector");
    if (!amps_.allFinite()) {
        throw DomainError("StateVector: amplitudes must be finite");
    }
}

Complex StateVector::inner(const StateVector& other) const
{
    check_same_basis(basis(), other.basis(), "inner");
    return amps_.dot(other.amps_);
}

ComplexMatrix::ComplexMatrix(BasisOrigin origin, Eigen::MatrixXcd entries)
    : origin_(origin), m_(std::move(entries))
{
    if (m_.rows() != m_.cols()) {
        throw DomainError("ComplexMatrix: must be square");
    }
    check_dim(static_cast<std::size_t>(m_.rows()), "ComplexMatrix");
    if (!m_.allFinite()) {
        throw DomainError("ComplexMatrix: entries must be finite");
    }
}

ComplexMatrix ComplexMatrix::identity(Basis basis)
{
    const auto n = static_cast<Index>(basis.dim);
    return {basis.origin, Eigen::MatrixXcd::Identity(n, n)};
}

ComplexMatrix ComplexMatrix::zero(Basis basis)
{
    const auto n = static_cast<Index>(basis.dim);
    return {basis.origin, Eigen::MatrixXcd::Zero(n, n)};
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    return {origin_, m_.adjoint()};
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b)
{
    check_same_basis(a.basis(), b.basis(), "operator*");
    return {a.origin_, a.m_ * b.m_};
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b)
{
    check_same_basis(a.basis(), b.basis(), "operator+");
    return {a.origin_, a.m_ + b.m_};
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b)
{
    check_same_basis(a.basis(), b.basis(), "operator-");
    return {a.origin_, a.m_ - b.m_};
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a)
{
    return {a.origin_, s * a.m_};
}

StateVector operator*(const ComplexMatrix& a, const StateVector& v)
{
    check_same_basis(a.basis(), v.basis(), "operator* (state)");
    return {a.origin_, a.m_ * v.amplitudes()};
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    check_same_basis(a.basis(), b.basis(), "max_abs_diff");
    return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const StateVector& a, const StateVector& b)
{
    check_same_basis(a.basis(), b.basis(), "max_abs_diff");
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol)
{
    return max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol)
{
    return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.basis())) <= tol;
}

ComplexMatrix outer(const StateVector& v, const StateVector& w)
{
    check_same_basis(v.basis(), w.basis(), "outer");
    return {v.origin(), v.amplitudes() * w.amplitudes().adjoint()};
}

StateVector basis_state(Basis basis, std::int64_t label)
{
    check_dim(basis.dim, "basis_state");
    const auto i = label - static_cast<int>(basis.origin);
    if (i < 0 || i >= static_cast<std::int64_t>(basis.dim)) {
        throw DomainError("basis_state: label " + std::to_string(label) + " outside basis");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Index>(basis.dim));
    v(static_cast<Index>(i)) = 1.0;
    return {basis.origin, std::move(v)};
}

// --- number states and ladder -------------------------------------------------

ComplexMatrix number_operator(std::size_t dim, BasisOrigin origin)
{
    check_dim(dim, "number_operator");
    const Basis b{dim, origin};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        m(static_cast<Index>(i), static_cast<Index>(i)) = static_cast<double>(b.label(i));
    }
    return {origin, std::move(m)};
}

ComplexMatrix lowering_E(std::size_t dim)
{
    if (dim < 2) {
        throw DomainError("lowering_E: dimension must be >= 2");
    }
    check_dim(dim, "lowering_E");
    const auto n = static_cast<Index>(dim);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = 1.0;
    }
    return {BasisOrigin::zero, std::move(m)};
}

StateVector susskind_glogower_state(double psi, std::size_t dim)
{
    check_dim(dim, "susskind_glogower_state");
    const auto n = static_cast<Index>(dim);
    Eigen::VectorXcd v(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (Index i = 0; i < n; ++i) {
        v(i) = std::polar(scale, psi * static_cast<double>(i));
    }
    return {BasisOrigin::zero, std::move(v)};
}

// --- Pegg-Barnett phase states -----------------------------------------------

double phase_angle(std::uint64_t q, std::uint64_t p, double theta0)
{
    return theta0 + 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
}

StateVector phase_state(std::uint64_t q, std::uint64_t p, double theta0)
{
    if (q == 0 || p >= q) {
        throw DomainError("phase_state: requires q >= 1 and 0 <= p < q");
    }
    check_dim(q, "phase_state");
    const auto n = static_cast<Index>(q);
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    Eigen::VectorXcd v(n);
    for (Index i = 0; i < n; ++i) {
        const auto j = (p * static_cast<std::uint64_t>(i)) % q;
        v(i) = scale * root_of_unity(j, q);
        if (theta0 != 0.0) {
            v(i) *= std::polar(1.0, theta0 * static_cast<double>(i));
        }
    }
    return {BasisOrigin::zero, std::move(v)};
}

ComplexMatrix phase_operator(std::uint64_t q, double theta0)
{
    if (q == 0) {
        throw DomainError("phase_operator: q must be >= 1");
    }
    check_dim(q, "phase_operator");
    auto theta = ComplexMatrix::zero({q, BasisOrigin::zero});
    for (std::uint64_t p = 0; p < q; ++p) {
        const auto s = phase_state(q, p, theta0);
        theta = theta + Complex(phase_angle(q, p, theta0), 0.0) * outer(s, s);
    }
    // symmetrize away rounding so the result is Hermitian to the last bit
    Eigen::MatrixXcd h = 0.5 * (theta.entries() + theta.entries().adjoint());
    return {BasisOrigin::zero, std::move(h)};
}

// --- Z_q clock and shift -----------------------------------------------------

ComplexMatrix shift_mu(std::uint64_t q, std::uint64_t a)
{
    require_coprime(a, q, "shift_mu");
    check_dim(q, "shift_mu");
    const auto n = static_cast<Index>(q);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::uint64_t col = 0; col < q; ++col) {
        const auto row = numtheory::mulmod(a % q, col, q);
        m(static_cast<Index>(row), static_cast<Index>(col)) = 1.0;
    }
    return {BasisOrigin::zero, std::move(m)};
}

ComplexMatrix clock_e(std::uint64_t q, std::int64_t p)
{
    if (q == 0) {
        throw DomainError("clock_e: q must be >= 1");
    }
    return clock_e(q, p, {q, BasisOrigin::zero});
}

ComplexMatrix clock_e(std::uint64_t q, std::int64_t p, Basis basis)
{
    if (q == 0) {
        throw DomainError("clock_e: q must be >= 1");
    }
    check_dim(basis.dim, "clock_e");
    const auto pr = reduce(p, q);
    const auto n = static_cast<Index>(basis.dim);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < basis.dim; ++i) {
        const auto label = reduce(basis.label(i), q);
        m(static_cast<Index>(i), static_cast<Index>(i)) = root_of_unity(numtheory::mulmod(pr, label, q), q);
    }
    return {basis.origin, std::move(m)};
}

StateVector order_eigenstate(std::uint64_t q, std::uint64_t a, std::uint64_t k)
{
    require_coprime(a, q, "order_eigenstate");
    check_dim(q, "order_eigenstate");
    const auto r = numtheory::mult_order(a, q);
    if (k >= r) {
        throw DomainError("order_eigenstate: k must be < ord_q(a) = " + std::to_string(r));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(r));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Index>(q));
    std::uint64_t power = 1;
    for (std::uint64_t j = 0; j < r; ++j) {
        const auto phase = reduce(-static_cast<std::int64_t>((k * j) % r), r);
        v(static_cast<Index>(power)) = scale * root_of_unity(phase, r);
        power = numtheory::mulmod(power, a % q, q);
    }
    return {BasisOrigin::zero, std::move(v)};
}

ComplexMatrix multiplicative_shift(std::uint64_t a, std::size_t dim)
{
    if (a == 0) {
        throw DomainError("multiplicative_shift: a must be >= 1");
    }
    check_dim(dim, "multiplicative_shift");
    const auto n = static_cast<Index>(dim);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::uint64_t label = 1; label * a <= dim; ++label) {
        m(static_cast<Index>(label * a - 1), static_cast<Index>(label - 1)) = 1.0;
    }
    return {BasisOrigin::one, std::move(m)};
}

// --- Galois twist and time evolution ----------------------------------------

ComplexMatrix galois_twist(std::uint64_t q, std::uint64_t t, std::int64_t p)
{
    if (q == 0) {
        throw DomainError("galois_twist: q must be >= 1");
    }
    return galois_twist(q, t, p, {q, BasisOrigin::zero});
}

ComplexMatrix galois_twist(std::uint64_t q, std::uint64_t t, std::int64_t p, Basis basis)
{
    if (q == 0 || std::gcd(t % q, q) != 1) {
        throw DomainError("galois_twist: t must be a unit mod q");
    }
    const auto twisted = numtheory::mulmod(t % q, reduce(p, q), q);
    return clock_e(q, static_cast<std::int64_t>(twisted), basis);
}

ComplexMatrix galois_twist_shift(std::uint64_t q, std::uint64_t t, std::uint64_t a)
{
    if (q == 0 || std::gcd(t % q, q) != 1) {
        throw DomainError("galois_twist_shift: t must be a unit mod q");
    }
    return shift_mu(q, a);
}

ComplexMatrix apply_galois(const ComplexMatrix& x, std::uint64_t q, std::uint64_t t, double tol)
{
    if (q == 0 || std::gcd(t % q, q) != 1) {
        throw DomainError("apply_galois: t must be a unit mod q");
    }
    Eigen::MatrixXcd out = x.entries();
    const double qd = static_cast<double>(q);
    for (Index c = 0; c < out.cols(); ++c) {
        for (Index r = 0; r < out.rows(); ++r) {
            const Complex z = out(r, c);
            if (std::abs(z) <= tol) {
                out(r, c) = 0.0;
                continue;
            }
            const double turns = std::arg(z) / (2.0 * std::numbers::pi) * qd;
            const auto j = reduce(static_cast<std::int64_t>(std::llround(turns)), q);
            if (std::abs(z - root_of_unity(j, q)) > tol) {
                throw DomainError("apply_galois: entry is not a q-th root of unity");
            }
            out(r, c) = root_of_unity(numtheory::mulmod(j, t % q, q), q);
        }
    }
    return {x.origin(), std::move(out)};
}

ComplexMatrix evolve_sigma_t(const ComplexMatrix& x, double t)
{
    if (x.origin() != BasisOrigin::one) {
        throw DomainError("evolve_sigma_t: H0 = ln N needs the basis |1>..|N> (ln 0 undefined)");
    }
    const auto n = static_cast<Index>(x.dim());
    Eigen::VectorXd log_n(n);
    for (Index i = 0; i < n; ++i) {
        log_n(i) = std::log(static_cast<double>(i + 1));
    }
    Eigen::MatrixXcd out = x.entries();
    for (Index c = 0; c < n; ++c) {
        for (Index r = 0; r < n; ++r) {
            // (e^{itH0} x e^{-itH0})_{rc} = r^{it} x_{rc} c^{-it}
            out(r, c) *= std::polar(1.0, t * (log_n(r) - log_n(c)));
        }
    }
    return {BasisOrigin::one, std::move(out)};
}

void write_csv(std::ostream& os, const ComplexMatrix& m)
{
    const auto b = m.basis();
    for (std::size_t r = 0; r < b.dim; ++r) {
        for (std::size_t c = 0; c < b.dim; ++c) {
            const Complex z = m(r, c);
            if (z == Complex(0.0, 0.0)) {
                continue;
            }
            os << b.label(r) << ',' << b.label(c) << ',';
            put_number(os, z.real());
            os << ',';
            put_number(os, z.imag());
            os << '\n';
        }
    }
}

void write_csv(std::ostream& os, const StateVector& v)
{
    const auto b = v.basis();
    for (std::size_t i = 0; i < b.dim; ++i) {
        const Complex z = v[i];
        if (z == Complex(0.0, 0.0)) {
            continue;
        }
        os << b.label(i) << ",0,";
        put_number(os, z.real());
        os << ',';
        put_number(os, z.imag());
        os << '\n';
    }
}

} // namespace qphase::hilbert
