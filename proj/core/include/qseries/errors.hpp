#pragma once

#include <stdexcept>
#include <string>

namespace qseries {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
	explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Requested lattice is not a refinement of the series' lattice.
class LatticeError : public Error {
public:
	using Error::Error;
};

// Division by a series that is zero up to its truncation order.
class DivisionByZeroError : public Error {
public:
	using Error::Error;
};

// A q-shifted factorial in denominator position has an identically
// vanishing factor. The message names the offending factor.
class PoleError : public Error {
public:
	using Error::Error;
};

// Infinite product whose factor exponents do not increase.
class DivergenceError : public Error {
public:
	using Error::Error;
};

// Coefficient requested beyond the truncation order.
class OutOfRangeError : public Error {
public:
	using Error::Error;
};

// Comparison requested beyond the order either operand is exact to.
// Deliberately distinct from a mismatch: the answer is unknown, not false.
class InsufficientOrderError : public Error {
public:
	using Error::Error;
};

// A runtime contract was violated (valuation bound too optimistic,
// term generator returned a series of insufficient order, index cap hit).
class ContractError : public Error {
public:
	using Error::Error;
};

// Bad arguments at an API or CLI boundary.
class UsageError : public Error {
public:
	using Error::Error;
};

} // namespace qseries
