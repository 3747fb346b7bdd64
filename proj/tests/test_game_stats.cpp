#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellorbit/game_stats.hpp"

using namespace bellorbit;
using std::numbers::pi;

namespace {

using Answers = std::vector<std::pair<int, int>>;

const Question& find_question(const GameSpec& game, int s, int t, QuestionKind kind = QuestionKind::kSame) {
  const bool single = std::count_if(game.questions.begin(), game.questions.end(), [&](const Question& q) {
                        return q.alice_setting == s && q.bob_setting == t;
                      }) == 1;
  auto it = std::find_if(game.questions.begin(), game.questions.end(), [&](const Question& q) {
    return q.alice_setting == s && q.bob_setting == t && (single || q.kind == kind);
  });
  REQUIRE(it != game.questions.end());
  return *it;
}

GameSpec game_for(int d, int m) {
  const ProblemSpec spec(d, m);
  return game_spec(spec, orbit(spec));
}

// Independent reference: entropies of the grid and its marginals.
double entropy_mi(const ProbabilityGrid& g) {
  auto h = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  const int d = g.dim();
  double joint = 0.0;
  double ha = 0.0;
  double hb = 0.0;
  for (int m = 0; m < d; ++m) {
    double row = 0.0;
    double col = 0.0;
    for (int n = 0; n < d; ++n) {
      joint += h(g(m, n));
      row += g(m, n);
      col += g(n, m);
    }
    ha += h(row);
    hb += h(col);
  }
  return ha + hb - joint;
}

}  // namespace

TEST_CASE("qubit game winning sets") {
  const auto game = game_for(2, 2);
  REQUIRE(game.questions.size() == 4);
  CHECK(find_question(game, 0, 1).winning == Answers{{0, 1}, {1, 0}});
  // not(s) and t = a + b mod 2
  for (const auto& q : game.questions) {
    const int target = (1 - q.alice_setting) & q.bob_setting;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(q.wins(a, b) == ((a + b) % 2 == target));
  }
}

TEST_CASE("qutrit game winning sets") {
  const auto game = game_for(3, 2);
  REQUIRE(game.questions.size() == 4);
  CHECK(find_question(game, 0, 1).winning == Answers{{0, 2}, {1, 0}, {2, 1}});
  // not(s) and t = a - b mod 3
  for (const auto& q : game.questions) {
    const int target = (1 - q.alice_setting) & q.bob_setting;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(q.wins(a, b) == (((a - b) % 3 + 3) % 3 == target));
  }
}

TEST_CASE("same-setting questions win on the diagonal") {
  const auto game = game_for(2, 5);
  CHECK(find_question(game, 2, 2).winning == Answers{{0, 0}, {1, 1}});
}

TEST_CASE("game shape") {
  for (int d = 2; d <= 5; ++d) {
    for (int m = 1; m <= 5; ++m) {
      const auto game = game_for(d, m);
      CAPTURE(d);
      CAPTURE(m);
      CHECK(game.questions.size() == static_cast<std::size_t>(2 * m));
      for (const auto& q : game.questions) {
        REQUIRE(q.winning.size() == static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) CHECK(q.winning[static_cast<std::size_t>(a)].first == a);
        const int diff = ((q.alice_setting - q.bob_setting) % m + m) % m;
        CHECK((diff == 0 || diff == 1 % m));
      }
    }
  }
}

TEST_CASE("single setting game has a same and a shifted question") {
  const auto game = game_for(2, 1);
  REQUIRE(game.questions.size() == 2);
  CHECK(game.questions[0].kind == QuestionKind::kSame);
  CHECK(game.questions[1].kind == QuestionKind::kShifted);
  CHECK(to_string(QuestionKind::kShifted) == "shifted");
}

TEST_CASE("winning probabilities") {
  struct Row {
    int d, m;
    double quantum, classical;
  };
  for (const Row& r : {Row{2, 2, (2.0 + std::sqrt(2.0)) / 4.0, 0.75}, Row{3, 2, 5.0 / 6.0, 0.75},
                       Row{2, 3, (2.0 + std::sqrt(3.0)) / 4.0, 5.0 / 6.0},
                       Row{2, 5, (1.0 + std::cos(pi / 10.0)) / 2.0, 0.9}, Row{2, 1, 0.5, 0.5}}) {
    const auto report = analyze(ProblemSpec(r.d, r.m));
    CAPTURE(r.d);
    CAPTURE(r.m);
    CHECK(std::abs(report.wins.quantum - r.quantum) <= 1e-9);
    CHECK(report.wins.classical == doctest::Approx(r.classical).epsilon(1e-12));
    CHECK(std::abs(report.wins.quantum - report.quantum_bound() / (2 * r.m)) <= 1e-12);
    CHECK(std::abs(report.wins.quantum_direct - report.wins.quantum) <= kWinAgreementTol);
    CHECK(std::abs(report.wins.classical_direct - report.wins.classical) <= kWinAgreementTol);
  }
}

TEST_CASE("quantum beats classical for qubits with two or more settings") {
  for (int m = 2; m <= 8; ++m) {
    const auto report = analyze(ProblemSpec(2, m));
    CAPTURE(m);
    CHECK(report.wins.quantum > report.wins.classical);
    CHECK(report.wins.classical == doctest::Approx(1.0 - 1.0 / (2.0 * m)));
  }
}

TEST_CASE("qubit joint distribution") {
  const auto ineq = build_inequality(ProblemSpec(2, 2));
  // u2 = (|+x>|-x> + e^{i pi/4}|-x>|+x>)/sqrt2 in the computational basis.
  const Complex w = std::polar(1.0, pi / 4.0);
  const CVector u2 = (1.0 / (2.0 * std::sqrt(2.0))) * CVector{1.0 + w, -1.0 + w, 1.0 - w, -1.0 - w};
  CHECK(fidelity(ineq.optimal_state, u2) >= 1.0 - 1e-12);

  const auto grid = joint_distribution(ineq.optimal_state, ineq.spec, 0, 0);
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      const double expected = std::norm(u2[static_cast<std::size_t>(2 * m + n)]);
      CHECK(std::abs(grid(m, n) - expected) <= 1e-12);
      CHECK(std::abs(grid(m, n) - (m == n ? 2.0 + std::sqrt(2.0) : 2.0 - std::sqrt(2.0)) / 8.0) <= 1e-12);
    }
  }
}

TEST_CASE("qutrit joint distribution") {
  const auto ineq = build_inequality(ProblemSpec(3, 2));
  const auto grid = joint_distribution(ineq.optimal_state, ineq.spec, 0, 0);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(grid(j, j) - 5.0 / 18.0) <= 1e-9);
}

TEST_CASE("joint distributions are normalized") {
  for (int d = 2; d <= 5; ++d) {
    for (int m = 1; m <= 3; ++m) {
      const auto report = analyze(ProblemSpec(d, m));
      REQUIRE(report.joints.size() == static_cast<std::size_t>(m * m));
      for (const auto& j : report.joints) {
        CHECK(std::abs(j.grid.total() - 1.0) <= 1e-9);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) CHECK(j.grid(a, b) >= -1e-12);
      }
    }
  }
}

TEST_CASE("mutual information") {
  ProbabilityGrid uniform(3);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) uniform(m, n) = 1.0 / 9.0;
  CHECK(std::abs(mutual_information(uniform)) <= 1e-12);

  ProbabilityGrid perfect(4);
  for (int m = 0; m < 4; ++m) perfect(m, m) = 0.25;
  CHECK(mutual_information(perfect) == doctest::Approx(2.0));

  ProbabilityGrid bad(2);
  bad(0, 0) = 1.1;
  bad(1, 1) = -0.1;
  CHECK_THROWS_AS(mutual_information(bad), std::invalid_argument);

  for (int d = 2; d <= 5; ++d) {
    const auto report = analyze(ProblemSpec(d, 2));
    for (const auto& j : report.joints) CHECK(std::abs(mutual_information(j.grid) - entropy_mi(j.grid)) <= 1e-12);
  }
}

TEST_CASE("table statistics") {
  struct Row {
    int d;
    double q, p, i;
  };
  // Reference values rounded to four decimals.
  for (const Row& r : {Row{2, 3.4142, 0.8536, 0.3991}, Row{3, 3.3333, 0.8333, 0.8146}, Row{4, 3.3066, 0.8266, 1.1482},
                       Row{5, 3.2944, 0.8236, 1.4223}}) {
    const auto report = analyze(ProblemSpec(r.d, 2));
    CAPTURE(r.d);
    CHECK(std::abs(report.quantum_bound() - r.q) <= 5e-4);
    CHECK(report.classical_bound() == 3);
    REQUIRE(report.prediction.has_value());
    REQUIRE(report.mutual_info.has_value());
    CHECK(std::abs(*report.prediction - r.p) <= 5e-4);
    CHECK(std::abs(*report.mutual_info - r.i) <= 5e-4);
    CHECK(std::abs(*report.prediction - report.quantum_bound() / 4.0) <= 1e-12);
  }
}

TEST_CASE("prediction needs exactly two settings") {
  const auto ineq = build_inequality(ProblemSpec(2, 3));
  CHECK_THROWS_AS(prediction_probability(ineq), UnsupportedError);
  const auto report = analyze(ProblemSpec(2, 3));
  CHECK_FALSE(report.prediction.has_value());
  CHECK_FALSE(report.mutual_info.has_value());
}

TEST_CASE("mutual information does not depend on the setting pair") {
  for (int d = 2; d <= 5; ++d) {
    const auto report = analyze(ProblemSpec(d, 2));
    REQUIRE(report.mutual_info_spread.has_value());
    CHECK(*report.mutual_info_spread <= 1e-9);
    for (const auto& j : report.joints) CHECK(std::abs(mutual_information(j.grid) - *report.mutual_info) <= 1e-9);
  }
}

TEST_CASE("mutual information increases with d") {
  double previous = -1.0;
  for (int d = 2; d <= 5; ++d) {
    const double i = *analyze(ProblemSpec(d, 2)).mutual_info;
    CHECK(i > previous);
    previous = i;
  }
}
