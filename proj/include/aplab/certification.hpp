#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aplab/error.hpp"
#include "json.hpp"

namespace aplab {

/// A bundled fixture file is absent.
class FixtureMissingError : public Error {
 public:
  using Error::Error;
};

/// An unknown suite name.
class UnknownSuiteError : public Error {
 public:
  using Error::Error;
};

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct InputDigest {
  std::string name;  // relative to the fixture directory
  std::string sha256;
};

struct RunReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<InputDigest> inputs;
  std::vector<Assertion> assertions;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  /// Wall-clock milliseconds per stage; only serialised on request.
  std::vector<std::pair<std::string, double>> timings;

  bool pass() const;
  void check(std::string name, bool ok, std::string detail = {});
};

const std::vector<std::string>& suite_names();

/// Runs a bundled suite against the fixtures in `fixture_dir`.
RunReport run_suite(const std::string& suite, const std::string& fixture_dir, std::uint64_t seed);

/// Deterministic JSON; timings are included only when asked for.
std::string format_report_json(const RunReport& report, bool with_timings = false);

}  // namespace aplab
