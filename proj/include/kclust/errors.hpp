#ifndef KCLUST_ERRORS_HPP
#define KCLUST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kclust {

// Raised when an iterative numerical routine fails to converge
// (quadrature panel doubling, transport pivoting, ...).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed or unreadable external inputs (datasets, result files).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised on invalid run configuration (bad keys, out-of-range values).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kclust

#endif  // KCLUST_ERRORS_HPP
