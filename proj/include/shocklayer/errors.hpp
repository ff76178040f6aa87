#pragma once

#include <stdexcept>
#include <string>

namespace shocklayer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define SHOCKLAYER_ERROR(Name)                                                 \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(what) {}                \
        const char* kind() const noexcept override { return #Name; }           \
    };

// Shock point with M sin(beta) < 1.
SHOCKLAYER_ERROR(WeakShock)
SHOCKLAYER_ERROR(OutOfDomain)
SHOCKLAYER_ERROR(InvalidShape)
SHOCKLAYER_ERROR(DegenerateInput)
SHOCKLAYER_ERROR(NegativeRadicand)
SHOCKLAYER_ERROR(NonConvergence)
SHOCKLAYER_ERROR(ValidationError)
SHOCKLAYER_ERROR(OutOfHull)
SHOCKLAYER_ERROR(NoOverlap)

#undef SHOCKLAYER_ERROR

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    const char* kind() const noexcept override { return "ParseError"; }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace shocklayer
