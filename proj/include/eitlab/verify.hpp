#pragma once

// Formula-vs-oracle verification: vector-form RHS against the superoperator,
// tabulated blocks against the assembled model, closed-form susceptibilities
// against the steady state. Deviations listed in the errata ledger are
// reported as expected instead of failing.

#include <filesystem>
#include <string>
#include <vector>

#include "eitlab/sweep.hpp"

namespace eitlab {

/// One documented discrepancy between a tabulated expression and the oracle.
/// expected_ratio is tabulated / oracle for the affected quantity.
struct ErratumEntry {
  std::string id;
  std::string equation;
  std::string section;  // module the discrepancy belongs to
  std::string description;
  double expected_ratio = 1.0;
  double tolerance = 1e-6;
};

/// Modules whose tabulated expressions may be excused by the ledger.
inline constexpr const char* kErrataSections[] = {"master-equation", "lambda-model"};

std::vector<ErratumEntry> parse_errata(const std::string& json_text);
std::vector<ErratumEntry> load_errata(const std::filesystem::path& path);

enum class CheckStatus { Pass, KnownErratum, Fail, Info };
std::string_view to_string(CheckStatus status);

struct VerifyCheck {
  std::string name;
  double measured = 0.0;   // max error, relative error or ratio
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string erratum_id;  // set for ratio checks tied to a ledger entry
  std::string note;
};

struct VerifySection {
  std::string title;
  std::vector<VerifyCheck> checks;
};

struct VerifyReport {
  std::vector<VerifySection> sections;

  bool success() const;
  std::vector<std::string> failures() const;
  std::string text() const;
  std::string json() const;
};

VerifyReport run_verify(const ScenarioConfig& config, const std::vector<ErratumEntry>& ledger);

}  // namespace eitlab
