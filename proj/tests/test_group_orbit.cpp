#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "bellorbit/group_orbit.hpp"

using namespace bellorbit;
using std::numbers::pi;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const CVector kPlusX{kInvSqrt2, kInvSqrt2};
const CVector kMinusX{kInvSqrt2, -kInvSqrt2};

Complex phase(double angle) { return std::polar(1.0, angle); }

std::vector<LabelPair> labels_of(const std::vector<OrbitEntry>& entries) {
  std::vector<LabelPair> out;
  for (const auto& e : entries) out.emplace_back(e.alice, e.bob);
  return out;
}

}  // namespace

TEST_CASE("ProblemSpec validation") {
  CHECK_THROWS_AS(ProblemSpec(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec(2, 0), std::invalid_argument);
  const ProblemSpec spec(3, 2);
  CHECK(spec.orbit_length() == 12);
  CHECK(spec.pair_dim() == 9);
}

TEST_CASE("translation matrix") {
  const auto t2 = translation_matrix(2);
  CHECK(max_abs_diff(t2 * CVector::basis(2, 0), CVector::basis(2, 1)) == 0.0);
  CHECK(max_abs_diff(t2 * CVector::basis(2, 1), CVector::basis(2, 0)) == 0.0);

  CHECK(max_abs_diff(translation_matrix(3) * CVector::basis(3, 2), CVector::basis(3, 0)) == 0.0);
  CHECK(max_abs_diff(mat_power(translation_matrix(4), 4), CMatrix::identity(4)) == 0.0);
  for (int d = 2; d <= 8; ++d) CHECK(is_unitary(translation_matrix(d)));
}

TEST_CASE("fourier eigenbasis phases") {
  const auto q3 = fourier_eigenbasis(3);
  CHECK(q3[1].phase == doctest::Approx(-2.0 * pi / 3.0));
  CHECK(q3[2].phase == doctest::Approx(2.0 * pi / 3.0));

  const auto q2 = fourier_eigenbasis(2);
  CHECK(q2[0].phase == 0.0);
  // -pi is represented as +pi.
  CHECK(q2[1].phase == doctest::Approx(pi));

  for (int d = 2; d <= 8; ++d) {
    const auto t = translation_matrix(d);
    const auto modes = fourier_eigenbasis(d);
    for (int j = 0; j < d; ++j) {
      const auto& mode = modes[static_cast<std::size_t>(j)];
      CAPTURE(d);
      CAPTURE(j);
      CHECK(mode.phase > -pi);
      CHECK(mode.phase <= pi);
      CHECK(std::abs(phase(mode.phase) - phase(-2.0 * pi * j / d)) <= 1e-12);
      CHECK(max_abs_diff(t * mode.vector, phase(mode.phase) * mode.vector) <= 1e-12);
      CHECK(mode.vector.norm() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("root unitary, qubits with two settings") {
  const auto u = root_unitary(ProblemSpec(2, 2));
  // U = |+x><+x| + i |-x><-x|
  const CMatrix expected = CMatrix::outer(kPlusX, kPlusX) + Complex{0.0, 1.0} * CMatrix::outer(kMinusX, kMinusX);
  CHECK(max_abs_diff(u, expected) <= 1e-15);
  const CVector v0{kInvSqrt2 * phase(pi / 4), kInvSqrt2 * phase(-pi / 4)};
  CHECK(max_abs_diff(u * CVector::basis(2, 0), v0) <= 1e-15);
  // U|v0> = |1>
  CHECK(max_abs_diff(u * v0, CVector::basis(2, 1)) <= 1e-15);
}

TEST_CASE("root unitary, qutrits with two settings") {
  const ProblemSpec spec(3, 2);
  const auto u = root_unitary(spec);
  const auto modes = fourier_eigenbasis(3);
  const Complex expected[] = {1.0, phase(-pi / 3), phase(pi / 3)};
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(max_abs_diff(u * modes[j].vector, expected[j] * modes[j].vector) <= 1e-15);
  }
  CHECK(max_abs_diff(u * CVector::basis(3, 0), CVector{2.0 / 3, 2.0 / 3, -1.0 / 3}) <= 1e-15);
}

TEST_CASE("root unitary, qubits with M settings") {
  for (int m = 1; m <= 8; ++m) {
    const CMatrix expected = CMatrix::outer(kPlusX, kPlusX) + phase(pi / m) * CMatrix::outer(kMinusX, kMinusX);
    CHECK(max_abs_diff(root_unitary(ProblemSpec(2, m)), expected) <= 1e-15);
  }
}

TEST_CASE("U^M = T and unitarity for d, M <= 8") {
  for (int d = 2; d <= 8; ++d) {
    for (int m = 1; m <= 8; ++m) {
      const ProblemSpec spec(d, m);
      const auto u = root_unitary(spec);
      CAPTURE(d);
      CAPTURE(m);
      CHECK(max_abs_diff(mat_power(u, static_cast<unsigned>(m)), translation_matrix(d)) <= 1e-11);
      CHECK(is_unitary(u));
    }
  }
}

TEST_CASE("measurement bases") {
  CHECK(max_abs_diff(measurement_basis(ProblemSpec(4, 3), 0), CMatrix::identity(4)) == 0.0);

  const auto v = measurement_basis(ProblemSpec(2, 2), 1);
  CHECK(max_abs_diff(v.column(0), CVector{kInvSqrt2 * phase(pi / 4), kInvSqrt2 * phase(-pi / 4)}) <= 1e-15);
  CHECK(max_abs_diff(v.column(1), CVector{kInvSqrt2 * phase(-pi / 4), kInvSqrt2 * phase(pi / 4)}) <= 1e-15);

  const auto q = measurement_basis(ProblemSpec(3, 2), 1);
  CHECK(max_abs_diff(q.column(0), CVector{2.0 / 3, 2.0 / 3, -1.0 / 3}) <= 1e-15);
  CHECK(max_abs_diff(q.column(1), CVector{-1.0 / 3, 2.0 / 3, 2.0 / 3}) <= 1e-15);
  // The published third vector carries a 1/2 prefactor, which is not
  // normalized; U|2> has the same coefficients with prefactor 1/3.
  CHECK(max_abs_diff(q.column(2), CVector{2.0 / 3, -1.0 / 3, 2.0 / 3}) <= 1e-15);

  for (int d = 2; d <= 6; ++d)
    for (int m = 0; m < 4; ++m) CHECK(is_unitary(measurement_basis(ProblemSpec(d, 4), m)));

  CHECK_THROWS_AS(measurement_basis(ProblemSpec(2, 2), 2), std::out_of_range);
}

TEST_CASE("swap matrix") {
  const auto s2 = swap_matrix(2);
  CHECK(max_abs_diff(s2 * CVector::basis(4, 1), CVector::basis(4, 2)) == 0.0);
  CHECK(max_abs_diff(s2 * CVector::basis(4, 2), CVector::basis(4, 1)) == 0.0);
  for (int d = 2; d <= 5; ++d) {
    const auto s = swap_matrix(d);
    for (int j = 0; j < d; ++j) {
      const auto jj = CVector::basis(static_cast<std::size_t>(d * d), static_cast<std::size_t>(j * d + j));
      CHECK(max_abs_diff(s * jj, jj) == 0.0);
    }
  }
  CHECK(max_abs_diff(swap_matrix(3) * swap_matrix(3), CMatrix::identity(9)) == 0.0);
}

TEST_CASE("step operator") {
  CHECK(max_abs_diff(mat_power(step_operator(ProblemSpec(2, 2)), 8), CMatrix::identity(4)) <= 1e-10);
  CHECK(max_abs_diff(mat_power(step_operator(ProblemSpec(3, 2)), 12), CMatrix::identity(9)) <= 1e-10);

  for (int d = 2; d <= 5; ++d) {
    for (int m = 1; m <= 4; ++m) {
      const ProblemSpec spec(d, m);
      const auto b = step_operator(spec);
      const auto u = root_unitary(spec);
      CHECK(is_unitary(b));
      CHECK(max_abs_diff(b * b, kron(u, u)) <= 1e-11);
      CHECK(max_abs_diff(mat_power(b, static_cast<unsigned>(spec.orbit_length())), CMatrix::identity(spec.pair_dim())) <=
            1e-10);

      const auto modes = fourier_eigenbasis(d);
      for (const auto& wj : modes) {
        for (const auto& wk : modes) {
          const Complex lj = inner(wj.vector, u * wj.vector);
          const Complex lk = inner(wk.vector, u * wk.vector);
          const CVector v = kron(wj.vector, wk.vector);
          CHECK(max_abs_diff(b * (b * v), lj * lk * v) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("label_step") {
  const ProblemSpec spec(2, 2);
  auto [a1, b1] = label_step({0, 0}, {0, 0}, spec);
  CHECK(a1 == MeasLabel{1, 0});
  CHECK(b1 == MeasLabel{0, 0});

  auto [a2, b2] = label_step({1, 0}, {1, 0}, spec);
  CHECK(a2 == MeasLabel{0, 1});
  CHECK(b2 == MeasLabel{1, 0});

  for (int d = 2; d <= 5; ++d) {
    for (int m = 1; m <= 4; ++m) {
      const ProblemSpec s(d, m);
      auto [a, b] = label_step({m - 1, 1}, {m - 1, d - 1}, s);
      CHECK(a == MeasLabel{0, 0});
      CHECK(b == MeasLabel{m - 1, 1});
    }
  }
}

TEST_CASE("orbit for qubits with two settings is the eight-state cycle") {
  const std::vector<LabelPair> expected{
      {{0, 0}, {0, 0}},  // |0>|0>
      {{1, 0}, {0, 0}},  // |v0>|0>
      {{1, 0}, {1, 0}},  // |v0>|v0>
      {{0, 1}, {1, 0}},  // |1>|v0>
      {{0, 1}, {0, 1}},  // |1>|1>
      {{1, 1}, {0, 1}},  // |v1>|1>
      {{1, 1}, {1, 1}},  // |v1>|v1>
      {{0, 0}, {1, 1}},  // |0>|v1>
  };
  const auto entries = orbit(ProblemSpec(2, 2));
  CHECK(labels_of(entries) == expected);
  for (std::size_t j = 0; j < entries.size(); ++j) CHECK(entries[j].step == static_cast<int>(j));
}

TEST_CASE("orbit for qubits with three settings") {
  const std::vector<LabelPair> expected{
      {{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{2, 0}, {1, 0}},
      {{2, 0}, {2, 0}}, {{0, 1}, {2, 0}}, {{0, 1}, {0, 1}}, {{1, 1}, {0, 1}},
      {{1, 1}, {1, 1}}, {{2, 1}, {1, 1}}, {{2, 1}, {2, 1}}, {{0, 0}, {2, 1}},
  };
  CHECK(labels_of(orbit(ProblemSpec(2, 3))) == expected);
}

TEST_CASE("orbit for a single setting") {
  // Hand-iterated: (a, b) -> (U b, a) with U = T when M = 1.
  const std::vector<LabelPair> expected{
      {{0, 0}, {0, 0}}, {{0, 1}, {0, 0}}, {{0, 1}, {0, 1}}, {{0, 0}, {0, 1}}};
  const auto entries = orbit(ProblemSpec(2, 1));
  CHECK(labels_of(entries) == expected);
  CHECK(max_abs_diff(entries[1].vector, CVector::basis(4, 2)) <= 1e-15);  // |1>|0>
  CHECK(max_abs_diff(entries[3].vector, CVector::basis(4, 1)) <= 1e-15);  // |0>|1>
}

TEST_CASE("orbit properties for d, M <= 6") {
  for (int d = 2; d <= 6; ++d) {
    for (int m = 1; m <= 6; ++m) {
      const ProblemSpec spec(d, m);
      CAPTURE(d);
      CAPTURE(m);
      const auto entries = orbit(spec);
      REQUIRE(static_cast<int>(entries.size()) == spec.orbit_length());

      // Closure with no earlier repetition, from label_step alone.
      LabelPair label{{0, 0}, {0, 0}};
      for (int j = 1; j <= spec.orbit_length(); ++j) {
        label = label_step(label.first, label.second, spec);
        const bool at_start = label == LabelPair{{0, 0}, {0, 0}};
        CHECK(at_start == (j == spec.orbit_length()));
      }

      const auto labels = labels_of(entries);
      const std::set<LabelPair> unique(labels.begin(), labels.end());
      CHECK(unique.size() == labels.size());
      CHECK(unique == orbit_condition_labels(spec));

      const auto b = step_operator(spec);
      const auto seed = CVector::basis(spec.pair_dim(), 0);
      for (const auto& e : entries) {
        if (e.step % 5 != 0) continue;
        CHECK(max_abs_diff(e.vector, mat_power(b, static_cast<unsigned>(e.step)) * seed) <= 1e-10);
      }

      if (m == 2) {
        std::map<std::pair<int, int>, int> pairs;
        for (const auto& [a, bl] : labels) ++pairs[{a.setting, bl.setting}];
        CHECK(pairs.size() == 4);
        for (const auto& [key, count] : pairs) CHECK(count == d);
      }
    }
  }
}

TEST_CASE("orbit rejects a wrong swap convention") {
  const ProblemSpec spec(3, 2);
  const auto broken = make_generators_with_swap(spec, CMatrix::identity(9));
  CHECK_THROWS_AS(orbit(broken), OrbitConsistencyError);
  CHECK_THROWS_AS(make_generators_with_swap(spec, CMatrix::identity(4)), std::invalid_argument);
}
