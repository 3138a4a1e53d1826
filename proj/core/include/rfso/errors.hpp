#ifndef RFSO_ERRORS_HPP
#define RFSO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rfso {

/// Invalid configuration supplied by the caller (scenario files, contour
/// settings, unsupported engine constraints). Maps to CLI exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine failed to converge to its tolerance. Maps to CLI
/// exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rfso

#endif
