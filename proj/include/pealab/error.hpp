#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pealab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
public:
  explicit NotPrime(long long p) : Error("NotPrime(" + std::to_string(p) + ")"), value(p) {}
  long long value;
};

class OddOrder : public Error {
public:
  explicit OddOrder(long long m) : Error("OddOrder(" + std::to_string(m) + ")"), value(m) {}
  long long value;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(std::size_t limit, const std::string& what = "budget")
      : Error("BudgetExceeded(" + what + " > " + std::to_string(limit) + ")"), limit(limit) {}
  std::size_t limit;
};

class LabelAmbiguity : public Error {
public:
  using Error::Error;
};

class UnsupportedCase : public Error {
public:
  using Error::Error;
};

class SyntaxError : public Error {
public:
  SyntaxError(std::size_t position, const std::string& msg)
      : Error("SyntaxError at " + std::to_string(position) + ": " + msg), position(position) {}
  std::size_t position;
};

class IndexError : public Error {
public:
  using Error::Error;
};

class UnboundVariable : public Error {
public:
  explicit UnboundVariable(std::size_t var) : Error("UnboundVariable(x[" + std::to_string(var) + "])"), var(var) {}
  std::size_t var;
};

class ModeInapplicable : public Error {
public:
  using Error::Error;
};

/// A stated hypothesis of a combinatorial lemma does not hold for the input.
class HypothesisFailed : public Error {
public:
  HypothesisFailed(std::string which, std::string witness)
      : Error("HypothesisFailed(" + which + "): " + witness), which(std::move(which)), witness(std::move(witness)) {}
  std::string which;
  std::string witness;
};

}  // namespace pealab
