#ifndef QPHASE_ERROR_HPP
#define QPHASE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qphase {

/// Raised when an argument lies outside the mathematical domain of an
/// operation (zero modulus, non-coprime shift, divergent series, ...).
/// The CLI maps it to exit status 2.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

} // namespace qphase

#endif
