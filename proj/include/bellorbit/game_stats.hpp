#pragma once

// Nonlocal game induced by an orbit, winning probabilities, outcome
// statistics of the optimal state, and Alice's prediction rule.

#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "bellorbit/bounds.hpp"
#include "bellorbit/group_orbit.hpp"

namespace bellorbit {

/// Orbit terms at even steps pair identical labels; odd steps pair U-advanced
/// Alice labels with Bob's. For M >= 2 the kind is implied by the settings,
/// for M = 1 it is what distinguishes the two questions.
enum class QuestionKind { kSame, kShifted };

std::string_view to_string(QuestionKind kind);

struct Question {
  int alice_setting = 0;
  int bob_setting = 0;
  QuestionKind kind = QuestionKind::kSame;
  std::vector<std::pair<int, int>> winning;  ///< (a, b), ascending in a

  bool wins(int a, int b) const;
};

struct GameSpec {
  std::vector<Question> questions;  ///< order of first appearance in the orbit
};

GameSpec game_spec(const ProblemSpec& spec, const std::vector<OrbitEntry>& orbit);
/// Same game from the orbit's label pairs in step order.
GameSpec game_spec(const std::vector<LabelPair>& terms);

struct WinningProbabilities {
  double quantum = 0.0;    ///< Q_s / |questions|
  double classical = 0.0;  ///< C_s / |questions|
  double quantum_direct = 0.0;    ///< per-question sum over the optimal state's joint distributions
  double classical_direct = 0.0;  ///< per-question evaluation of the classical witness
};

inline constexpr double kWinAgreementTol = 1e-12;

/// Uniform distribution over questions. Throws CrossCheckError if the bound
/// route and the direct per-question route disagree beyond kWinAgreementTol.
WinningProbabilities winning_probabilities(const BellInequality& ineq, const GameSpec& game);

/// Row-major d x d grid, entry (m, n) = P(alice = m, bob = n).
class ProbabilityGrid {
 public:
  explicit ProbabilityGrid(int d) : d_(d), p_(static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {}

  int dim() const { return d_; }
  double& operator()(int m, int n) { return p_[static_cast<std::size_t>(m * d_ + n)]; }
  double operator()(int m, int n) const { return p_[static_cast<std::size_t>(m * d_ + n)]; }
  double total() const;

 private:
  int d_;
  std::vector<double> p_;
};

/// Outcome distribution when Alice measures setting s and Bob setting t.
ProbabilityGrid joint_distribution(const CVector& state, const ProblemSpec& spec, int s, int t);

/// Shannon mutual information (bits) between the row and column variables.
/// Throws std::invalid_argument on entries below -1e-12.
double mutual_information(const ProbabilityGrid& joint);

class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Success rate of Alice guessing Bob's outcome from her own outcome and his
/// announced setting, using the unique orbit term matching that context.
/// Only defined for M = 2; otherwise throws UnsupportedError.
double prediction_probability(const BellInequality& ineq);

struct SettingPairJoint {
  int alice_setting = 0;
  int bob_setting = 0;
  ProbabilityGrid grid;
};

struct AnalysisReport {
  BellInequality inequality;
  GameSpec game;
  WinningProbabilities wins;
  std::optional<double> prediction;   ///< p, M = 2 only
  std::optional<double> mutual_info;  ///< I_ab for settings (0, 0), M = 2 only
  std::optional<double> mutual_info_spread;  ///< max |I_ab(s,t) - I_ab(0,0)| over setting pairs
  std::vector<SettingPairJoint> joints;      ///< all M^2 setting pairs, row-major in (s, t)

  const ProblemSpec& spec() const { return inequality.spec; }
  double quantum_bound() const { return inequality.quantum_bound; }
  int classical_bound() const { return inequality.classical_bound; }
};

AnalysisReport analyze(const ProblemSpec& spec);
AnalysisReport analyze(const Generators& gens);

}  // namespace bellorbit
