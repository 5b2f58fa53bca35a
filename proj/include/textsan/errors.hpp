#pragma once

#include <stdexcept>
#include <string>

namespace textsan {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (taxonomy, policy, annotations, provider config).
// Messages carry the source location where one is known.
class ParseError : public Error {
public:
    using Error::Error;
};

// Invalid configuration or a violated input invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Count provider failure. Callers must abort the run; a failed count is
// never substituted with zero.
class ProviderError : public Error {
public:
    using Error::Error;
};

}  // namespace textsan
