#pragma once

#include <stdexcept>
#include <string>

namespace bsc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// malformed token stream / unknown symbol
struct ParseError : Error {
    using Error::Error;
};

// invalid parameters or out-of-domain arguments
struct ValueError : Error {
    using Error::Error;
};

// operation used on data in the wrong state (e.g. unresolved classes)
struct StateError : Error {
    using Error::Error;
};

// a construction-time invariant failed; signals a bug, not bad input
struct InternalError : Error {
    using Error::Error;
};

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}

}  // namespace bsc
