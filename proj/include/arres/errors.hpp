#pragma once

#include <stdexcept>
#include <string>

namespace arres {

/// Violation of a documented precondition or input contract (bad user data,
/// invalid arrangement, out-of-domain query). The CLI maps these to exit 1.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace arres
