#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ff {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct CompositeCharacteristic : Error {
  explicit CompositeCharacteristic(std::uint64_t p)
      : Error("characteristic is not prime: " + std::to_string(p)) {}
};

struct DegreeOverflow : Error {
  explicit DegreeOverflow(const std::string& what) : Error(what) {}
};

// Closure grew past the element cap; the instance is beyond desk scale.
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

struct LatticeCapExceeded : Error {
  explicit LatticeCapExceeded(const std::string& what) : Error(what) {}
};

struct NotCentral : Error {
  explicit NotCentral(const std::string& what) : Error(what) {}
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& what) : Error(what) {}
};

struct NotCoprime : Error {
  explicit NotCoprime(const std::string& what) : Error(what) {}
};

struct ZeroArgument : Error {
  explicit ZeroArgument(const std::string& what) : Error(what) {}
};

struct OddPrimeRequired : Error {
  explicit OddPrimeRequired(const std::string& what) : Error(what) {}
};

// Node budget exhausted: reported as Unknown, never as a negative verdict.
struct SearchBudgetExceeded : Error {
  explicit SearchBudgetExceeded(std::uint64_t nodes)
      : Error("search budget exceeded after " + std::to_string(nodes) + " nodes"),
        nodes_explored(nodes) {}
  std::uint64_t nodes_explored;
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace ff
