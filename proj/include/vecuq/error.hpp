#pragma once

#include <stdexcept>
#include <string>

namespace vecuq {

enum class ErrorKind {
    InvalidInput,  // caller supplied data or parameters that violate a precondition
    Numerical,     // a numerical routine could not produce a finite answer
    Io,
    Format,        // malformed CSV or model file
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::InvalidInput, what);
}

}  // namespace vecuq
