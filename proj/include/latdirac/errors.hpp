#pragma once

#include <stdexcept>
#include <string>

namespace latdirac {

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidAxis : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("parse error at line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateTetrad : std::runtime_error {
    long site;
    explicit DegenerateTetrad(long site_)
        : std::runtime_error("degenerate tetrad at site " + std::to_string(site_)), site(site_) {}
};

struct CatalogMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFirstOrderLagrangian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InconsistentSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonIntegerDof : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownGenerator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TheoryMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace latdirac
