#ifndef SVOL_ERRORS_HPP
#define SVOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace svol {

// Parameter or argument outside its admissible domain.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Quadrature non-convergence, branch-tracking failure, optimizer breakdown.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or missing input data.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace svol

#endif
