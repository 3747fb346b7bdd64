#pragma once

// Machine-readable record of one analysis, serialized as JSON.
//
// Schema (version "1"):
//   schema_version   "1"
//   index_convention description of the flat amplitude index (j*d + k for |j>_A |k>_B)
//   spec             {outcomes, settings}
//   terms            [{alice_setting, alice_outcome, bob_setting, bob_outcome}] in orbit step order
//   classical_bound  integer
//   quantum_bound    number
//   optimal_state    [{re, im}] in flat-index order
//   per_term_probs   [number] aligned with terms
//   witness          {alice: [outcome per setting], bob: [...]}
//   game             {questions: [{alice_setting, bob_setting, kind, winning: [[a, b], ...]}]}
//   stats            {quantum_win, classical_win, p (null unless M = 2), I_ab (null unless M = 2)}

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellorbit/game_stats.hpp"

namespace bellorbit {

inline constexpr std::string_view kCertificateSchemaVersion = "1";
inline constexpr std::string_view kIndexConvention = "flat index j*d + k for |j>_alice |k>_bob";

struct CertificateTerm {
  int alice_setting = 0;
  int alice_outcome = 0;
  int bob_setting = 0;
  int bob_outcome = 0;
  friend bool operator==(const CertificateTerm&, const CertificateTerm&) = default;
};

struct CertificateQuestion {
  int alice_setting = 0;
  int bob_setting = 0;
  std::string kind;
  std::vector<std::pair<int, int>> winning;
  friend bool operator==(const CertificateQuestion&, const CertificateQuestion&) = default;
};

struct CertificateStats {
  double quantum_win = 0.0;
  double classical_win = 0.0;
  std::optional<double> p;
  std::optional<double> mutual_info;
  friend bool operator==(const CertificateStats&, const CertificateStats&) = default;
};

struct Certificate {
  std::string schema_version{kCertificateSchemaVersion};
  int outcomes = 0;
  int settings = 0;
  std::vector<CertificateTerm> terms;
  int classical_bound = 0;
  double quantum_bound = 0.0;
  std::vector<Complex> optimal_state;
  std::vector<double> per_term_probs;
  DeterministicStrategy witness;
  std::vector<CertificateQuestion> questions;
  CertificateStats stats;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

class CertificateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Certificate make_certificate(const AnalysisReport& report);

/// Pretty-printed JSON with a trailing newline. Doubles are written with
/// round-trip precision, so parse_certificate(serialize_certificate(c)) == c.
std::string serialize_certificate(const Certificate& cert);

/// Throws CertificateFormatError on malformed input or an unknown schema version.
Certificate parse_certificate(std::string_view text);

}  // namespace bellorbit
