#pragma once

#include <stdexcept>
#include <string>

namespace aplab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document (rule, configuration, table, CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Expansion would exceed the configured cell cap.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t requested, std::size_t cap)
      : Error("expansion needs " + std::to_string(requested) +
              " cells, cap is " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}
  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Two series have no certified radius in common with the requested range.
class RangeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// A lookup table (block code, pointing rule, cocycle, potential) has no
/// entry for a patch that occurs in the configuration.
class IncompleteTableError : public Error {
 public:
  IncompleteTableError(const std::string& table, const std::string& patch)
      : Error(table + " has no entry for patch '" + patch + "'"),
        patch_(patch) {}
  const std::string& patch() const { return patch_; }

 private:
  std::string patch_;
};

class NotRelativelyDenseError : public Error {
 public:
  NotRelativelyDenseError(const std::string& what, long gap)
      : Error(what), gap_(gap) {}
  /// Largest measured distance to a marked cell, or -1 if nothing is marked.
  long gap() const { return gap_; }

 private:
  long gap_;
};

class InsufficientWindowError : public Error {
 public:
  using Error::Error;
};

class DegenerateSimplexError : public Error {
 public:
  using Error::Error;
};

/// Integration was requested for an edge function that failed the cocycle test.
class CocycleError : public Error {
 public:
  using Error::Error;
};

}  // namespace aplab
