#pragma once

#include <stdexcept>
#include <string>

namespace ibifsa {

/// Base class for every error this library raises on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed document or value string (rationals, JSON documents, specs).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A rational outside [0,1] or otherwise unusable as a truth value.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Aggregation over an empty carrier.
class EmptyCarrier : public Error {
public:
    using Error::Error;
};

// Group axiom violations. Each carries a witness of the failed axiom.

class NotClosed : public Error {
public:
    NotClosed(int row, int col, long long entry)
        : Error("table entry at (" + std::to_string(row) + "," + std::to_string(col) +
                ") = " + std::to_string(entry) + " is not an element index"),
          row(row), col(col) {}
    int row, col;
};

class NoIdentity : public Error {
public:
    NoIdentity() : Error("no two-sided identity element") {}
};

class NoInverse : public Error {
public:
    explicit NoInverse(int element)
        : Error("element " + std::to_string(element) + " has no two-sided inverse"),
          element(element) {}
    int element;
};

class NotAssociative : public Error {
public:
    NotAssociative(int a, int b, int c)
        : Error("(" + std::to_string(a) + "*" + std::to_string(b) + ")*" + std::to_string(c) +
                " != " + std::to_string(a) + "*(" + std::to_string(b) + "*" + std::to_string(c) + ")"),
          a(a), b(b), c(c) {}
    int a, b, c;
};

/// Requested standard group is beyond desk scale (symmetric(n) with n > 5).
class TooLarge : public Error {
public:
    using Error::Error;
};

/// map(x*y) != map(x)*map(y) for some pair.
class NotHomomorphism : public Error {
public:
    NotHomomorphism(int x, int y)
        : Error("map is not a homomorphism at pair (" + std::to_string(x) + "," +
                std::to_string(y) + ")"),
          x(x), y(y) {}
    int x, y;
};

/// mu(x) + nu(x) > 1 at the reported site.
class ConsistencyViolation : public Error {
public:
    explicit ConsistencyViolation(std::string site)
        : Error("mu + nu > 1 at " + site), site(std::move(site)) {}
    std::string site;
};

/// Array lengths do not match the declared carrier.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// A subset and a structure live on different carriers.
class CarrierMismatch : public Error {
public:
    using Error::Error;
};

/// Matrix dimensions disagree with the machine.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class LambdaOutOfRange : public Error {
public:
    using Error::Error;
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& symbol)
        : Error("unknown alphabet symbol '" + symbol + "'"), symbol(symbol) {}
    std::string symbol;
};

class UnknownState : public Error {
public:
    explicit UnknownState(const std::string& state)
        : Error("unknown state '" + state + "'"), state(state) {}
    std::string state;
};

/// Exhaustive enumeration refused; carries the exact instance count.
class GridTooLarge : public Error {
public:
    GridTooLarge(std::string count, unsigned long long cap)
        : Error("grid holds " + count + " instances, above the cap of " + std::to_string(cap)),
          count(std::move(count)), cap(cap) {}
    std::string count;
    unsigned long long cap;
};

} // namespace ibifsa
