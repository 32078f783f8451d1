#pragma once

#include <stdexcept>
#include <string>

namespace lgs {

// Base class for all recoverable library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration or matrix request exceeds the caller-supplied cap.
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

// Operation requires the other utility mode (LIN vs BIN).
struct ModeMismatch : Error {
  explicit ModeMismatch(const std::string& what) : Error(what) {}
};

struct UnknownEdge : Error {
  explicit UnknownEdge(const std::string& what) : Error(what) {}
};

struct EmptySupport : Error {
  explicit EmptySupport(const std::string& what) : Error(what) {}
};

// Oracle model no longer matches the game or support it was built for.
struct StaleModel : Error {
  explicit StaleModel(const std::string& what) : Error(what) {}
};

struct NoPath : Error {
  explicit NoPath(const std::string& what) : Error(what) {}
};

// Equilibrium gap requested from best responses that are not exact.
struct InexactBr : Error {
  explicit InexactBr(const std::string& what) : Error(what) {}
};

struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& what) : Error(what) {}
};

struct NonFiniteEntry : Error {
  explicit NonFiniteEntry(const std::string& what) : Error(what) {}
};

struct EmptyFormula : Error {
  explicit EmptyFormula(const std::string& what) : Error(what) {}
};

struct NoExit : Error {
  explicit NoExit(const std::string& what) : Error(what) {}
};

struct SetupTooLong : Error {
  explicit SetupTooLong(const std::string& what) : Error(what) {}
};

struct EmptyStartSet : Error {
  explicit EmptyStartSet(const std::string& what) : Error(what) {}
};

// Branch and bound finished without any feasible point where one must exist.
struct NoIncumbent : Error {
  explicit NoIncumbent(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace lgs
