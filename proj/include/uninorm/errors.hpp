#pragma once

#include <stdexcept>
#include <string>

namespace uninorm {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Text (DSL, element literal, JSON) could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

/// A construction term violates a well-definedness condition.
struct InvalidTerm : Error {
    enum class Code { SubgroupChain, Discreteness, Arity };
    Code code;
    InvalidTerm(Code c, const std::string& msg) : Error(msg), code(c) {}
};

/// An element does not match the carrier pattern of its term.
struct MalformedElement : Error {
    using Error::Error;
};

/// Numeric argument outside the operation's domain.
struct DomainError : Error {
    using Error::Error;
};

/// The term denotes a chain that is not order isomorphic to the reals.
struct NotRealizable : Error {
    using Error::Error;
};

/// The term is realizable but outside the rewrite system's reach.
struct NotCanonicalizable : Error {
    using Error::Error;
};

/// A rewrite rule was applied at a position that does not match its pattern.
struct PatternMismatch : Error {
    using Error::Error;
};

} // namespace uninorm
