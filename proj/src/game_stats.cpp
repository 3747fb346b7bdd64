#include "bellorbit/game_stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bellorbit {

std::string_view to_string(QuestionKind kind) {
  return kind == QuestionKind::kSame ? "same" : "shifted";
}

bool Question::wins(int a, int b) const {
  return std::find(winning.begin(), winning.end(), std::pair{a, b}) != winning.end();
}

GameSpec game_spec(const ProblemSpec& spec, const std::vector<OrbitEntry>& orbit) {
  (void)spec;
  return game_spec(orbit_terms(orbit));
}

GameSpec game_spec(const std::vector<LabelPair>& terms) {
  GameSpec game;
  for (std::size_t step = 0; step < terms.size(); ++step) {
    const auto& [alice, bob] = terms[step];
    const QuestionKind kind = step % 2 == 0 ? QuestionKind::kSame : QuestionKind::kShifted;
    auto it = std::find_if(game.questions.begin(), game.questions.end(), [&](const Question& q) {
      return q.alice_setting == alice.setting && q.bob_setting == bob.setting && q.kind == kind;
    });
    if (it == game.questions.end()) {
      game.questions.push_back({alice.setting, bob.setting, kind, {}});
      it = std::prev(game.questions.end());
    }
    it->winning.emplace_back(alice.outcome, bob.outcome);
  }
  for (auto& q : game.questions) std::sort(q.winning.begin(), q.winning.end());
  return game;
}

double ProbabilityGrid::total() const {
  double s = 0.0;
  for (double x : p_) s += x;
  return s;
}

namespace {

ProbabilityGrid joint_from_bases(const CVector& state, const CMatrix& alice_basis, const CMatrix& bob_basis) {
  const int d = static_cast<int>(alice_basis.rows());
  ProbabilityGrid grid(d);
  for (int m = 0; m < d; ++m) {
    const CVector a = alice_basis.column(static_cast<std::size_t>(m));
    for (int n = 0; n < d; ++n) {
      grid(m, n) = std::norm(inner(kron(a, bob_basis.column(static_cast<std::size_t>(n))), state));
    }
  }
  return grid;
}

}  // namespace

ProbabilityGrid joint_distribution(const CVector& state, const ProblemSpec& spec, int s, int t) {
  if (state.dim() != spec.pair_dim()) throw std::invalid_argument("joint_distribution: state has wrong dimension");
  return joint_from_bases(state, measurement_basis(spec, s), measurement_basis(spec, t));
}

double mutual_information(const ProbabilityGrid& joint) {
  const int d = joint.dim();
  std::vector<double> pa(static_cast<std::size_t>(d), 0.0);
  std::vector<double> pb(static_cast<std::size_t>(d), 0.0);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const double p = joint(m, n);
      if (p < -1e-12) {
        std::ostringstream msg;
        msg << "mutual_information: negative probability " << p << " at (" << m << ", " << n << ")";
        throw std::invalid_argument(msg.str());
      }
      pa[static_cast<std::size_t>(m)] += p;
      pb[static_cast<std::size_t>(n)] += p;
    }
  }
  double info = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const double p = joint(m, n);
      if (p <= 0.0) continue;
      info += p * std::log2(p / (pa[static_cast<std::size_t>(m)] * pb[static_cast<std::size_t>(n)]));
    }
  }
  return info;
}

WinningProbabilities winning_probabilities(const BellInequality& ineq, const GameSpec& game) {
  if (game.questions.empty()) throw std::invalid_argument("winning_probabilities: game has no questions");
  const double count = static_cast<double>(game.questions.size());
  WinningProbabilities w;
  w.quantum = ineq.quantum_bound / count;
  w.classical = ineq.classical_bound / count;

  for (const auto& q : game.questions) {
    const auto grid = joint_distribution(ineq.optimal_state, ineq.spec, q.alice_setting, q.bob_setting);
    double won = 0.0;
    for (const auto& [a, b] : q.winning) won += grid(a, b);
    w.quantum_direct += won / count;

    const int a = ineq.witness.alice_map[static_cast<std::size_t>(q.alice_setting)];
    const int b = ineq.witness.bob_map[static_cast<std::size_t>(q.bob_setting)];
    if (q.wins(a, b)) w.classical_direct += 1.0 / count;
  }

  // Direct quantum sum is accurate to rounding in the state; the bound itself
  // is agreed to kBoundAgreementTol, so compare against the summed term probs.
  double term_sum = 0.0;
  for (double p : ineq.per_term_probs) term_sum += p;
  if (std::abs(w.quantum_direct - term_sum / count) > kWinAgreementTol ||
      std::abs(w.classical_direct - w.classical) > kWinAgreementTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "winning probabilities disagree: quantum " << w.quantum_direct << " vs " << term_sum / count
        << ", classical " << w.classical_direct << " vs " << w.classical;
    throw CrossCheckError(msg.str());
  }
  return w;
}

double prediction_probability(const BellInequality& ineq) {
  const ProblemSpec& spec = ineq.spec;
  if (spec.settings() != 2) {
    throw UnsupportedError("prediction probability is only defined for two settings per party");
  }
  const int d = spec.outcomes();
  double success = 0.0;
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      const auto grid = joint_distribution(ineq.optimal_state, spec, s, t);
      for (int a = 0; a < d; ++a) {
        std::optional<int> guess;
        for (const auto& [alice, bob] : ineq.terms) {
          if (alice.setting != s || alice.outcome != a || bob.setting != t) continue;
          if (guess) throw CrossCheckError("prediction rule: more than one matching orbit term");
          guess = bob.outcome;
        }
        if (!guess) throw CrossCheckError("prediction rule: no matching orbit term");
        success += grid(a, *guess);
      }
    }
  }
  return success / 4.0;
}

AnalysisReport analyze(const ProblemSpec& spec) {
  check_classical_search(spec);
  return analyze(make_generators(spec));
}

AnalysisReport analyze(const Generators& gens) {
  const ProblemSpec& spec = gens.spec;
  auto ineq = build_inequality(gens);
  auto game = game_spec(ineq.terms);
  const auto wins = winning_probabilities(ineq, game);
  AnalysisReport report{std::move(ineq), std::move(game), wins, {}, {}, {}, {}};

  const int big_m = spec.settings();
  for (int s = 0; s < big_m; ++s) {
    for (int t = 0; t < big_m; ++t) {
      report.joints.push_back({s, t, joint_from_bases(report.inequality.optimal_state,
                                                      gens.bases[static_cast<std::size_t>(s)],
                                                      gens.bases[static_cast<std::size_t>(t)])});
    }
  }

  if (big_m == 2) {
    report.prediction = prediction_probability(report.inequality);
    const double reference = mutual_information(report.joints.front().grid);
    double spread = 0.0;
    for (const auto& j : report.joints) spread = std::max(spread, std::abs(mutual_information(j.grid) - reference));
    report.mutual_info = reference;
    report.mutual_info_spread = spread;
  }
  return report;
}

}  // namespace bellorbit
