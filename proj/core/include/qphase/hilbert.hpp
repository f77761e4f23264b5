#ifndef QPHASE_HILBERT_HPP
#define QPHASE_HILBERT_HPP

#include <complex>
#include <cstdint>
#include <ostream>

#include <Eigen/Dense>

namespace qphase::hilbert {

using Complex = std::complex<double>;

/// Which labels the number states carry. The Z_q basis |0>..|q-1> hosts the
/// phase, clock and modular shift operators; the positive basis |1>..|N> hosts
/// H0 = ln N. Combining objects from different bases throws.
enum class BasisOrigin : int { zero = 0, one = 1 };

inline constexpr std::size_t kMaxDim = 4096;
inline constexpr double kExactTol = 1e-12;

struct Basis {
    std::size_t dim;
    BasisOrigin origin;

    /// Label n carried by row/column i.
    std::int64_t label(std::size_t i) const noexcept
    {
        return static_cast<std::int64_t>(i) + static_cast<int>(origin);
    }
    friend bool operator==(const Basis&, const Basis&) = default;
};

class StateVector {
public:
    StateVector(BasisOrigin origin, Eigen::VectorXcd amplitudes);

    Basis basis() const noexcept { return {static_cast<std::size_t>(amps_.size()), origin_}; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    BasisOrigin origin() const noexcept { return origin_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    double norm() const { return amps_.norm(); }
    Complex inner(const StateVector& other) const;  // <this|other>

private:
    BasisOrigin origin_;
    Eigen::VectorXcd amps_;
};

class ComplexMatrix {
public:
    ComplexMatrix(BasisOrigin origin, Eigen::MatrixXcd entries);

    static ComplexMatrix identity(Basis basis);
    static ComplexMatrix zero(Basis basis);

    Basis basis() const noexcept { return {static_cast<std::size_t>(m_.rows()), origin_}; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    BasisOrigin origin() const noexcept { return origin_; }
    const Eigen::MatrixXcd& entries() const noexcept { return m_; }
    Complex operator()(std::size_t r, std::size_t c) const
    {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    ComplexMatrix adjoint() const;
    Complex trace() const { return m_.trace(); }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
    friend StateVector operator*(const ComplexMatrix& a, const StateVector& v);

private:
    BasisOrigin origin_;
    Eigen::MatrixXcd m_;
};

/// Max-norm distance; throws on basis mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const StateVector& a, const StateVector& b);

bool is_hermitian(const ComplexMatrix& m, double tol = kExactTol);
bool is_unitary(const ComplexMatrix& m, double tol = kExactTol);

/// |v><w|
ComplexMatrix outer(const StateVector& v, const StateVector& w);

StateVector basis_state(Basis basis, std::int64_t label);

// --- number states and ladder -------------------------------------------------

ComplexMatrix number_operator(std::size_t dim, BasisOrigin origin = BasisOrigin::zero);

/// Truncated exponential phase operator E = sum |n><n+1|; annihilates |0>.
ComplexMatrix lowering_E(std::size_t dim);

/// Truncation of sum_n e^{i n psi}|n>, normalized over dim terms.
StateVector susskind_glogower_state(double psi, std::size_t dim);

// --- Pegg-Barnett phase states -----------------------------------------------

/// theta_p = theta0 + 2 pi p / q
double phase_angle(std::uint64_t q, std::uint64_t p, double theta0 = 0.0);

/// amplitude at n: exp(i theta_p n) / sqrt(q), n = 0..q-1
StateVector phase_state(std::uint64_t q, std::uint64_t p, double theta0 = 0.0);

/// Theta_q = sum_p theta_p |theta_p><theta_p|
ComplexMatrix phase_operator(std::uint64_t q, double theta0 = 0.0);

// --- Z_q clock and shift -----------------------------------------------------

/// mu_a |n> = |a n mod q>; requires gcd(a, q) = 1.
ComplexMatrix shift_mu(std::uint64_t q, std::uint64_t a);

/// e_p |n> = exp(2 pi i p n / q) |n> on the Z_q basis (p reduced mod q).
ComplexMatrix clock_e(std::uint64_t q, std::int64_t p);

/// The same clock acting on an arbitrary basis, e.g. |1>..|N> for the
/// Bost-Connes representation.
ComplexMatrix clock_e(std::uint64_t q, std::int64_t p, Basis basis);

/// |u_k> = r^{-1/2} sum_j exp(-2 pi i k j / r) |a^j mod q>, r = ord_q(a).
StateVector order_eigenstate(std::uint64_t q, std::uint64_t a, std::uint64_t k);

/// Non-modular multiplicative shift |n> -> |a n> on |1>..|dim>, columns with
/// a n > dim dropped.
ComplexMatrix multiplicative_shift(std::uint64_t a, std::size_t dim);

// --- Galois twist and time evolution ----------------------------------------

/// pi_w(e_p) for the Galois element zeta -> zeta^t: equals clock_e(q, t p).
ComplexMatrix galois_twist(std::uint64_t q, std::uint64_t t, std::int64_t p);
ComplexMatrix galois_twist(std::uint64_t q, std::uint64_t t, std::int64_t p, Basis basis);

/// pi_w(mu_a) = mu_a: the Galois action leaves the shift untouched.
ComplexMatrix galois_twist_shift(std::uint64_t q, std::uint64_t t, std::uint64_t a);

/// Applies zeta -> zeta^t entrywise to a matrix whose entries are 0 or q-th
/// roots of unity (within `tol`). Other entries are outside the cyclotomic
/// field this action is defined on and raise DomainError.
ComplexMatrix apply_galois(const ComplexMatrix& x, std::uint64_t q, std::uint64_t t,
                           double tol = 1e-9);

/// sigma_t(x) = e^{i t H0} x e^{-i t H0} with H0 |n> = ln n |n>.
/// Only defined on the positive basis.
ComplexMatrix evolve_sigma_t(const ComplexMatrix& x, double t);

/// Writes "row,col,re,im" lines (labels, not indices), zero entries skipped.
void write_csv(std::ostream& os, const ComplexMatrix& m);
void write_csv(std::ostream& os, const StateVector& v);

} // namespace qphase::hilbert

#endif
