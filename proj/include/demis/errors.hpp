#ifndef DEMIS_ERRORS_HPP
#define DEMIS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace demis {

// Base for all errors raised by the toolkit. `module` names the subsystem
// that rejected the input so the CLI can emit a single machine-parsable line.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

// Bad user input: missing files, malformed formats, dimension mismatches.
class InputError : public Error {
public:
    using Error::Error;
};

// A broken internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace demis

#endif
