#include "bellorbit/group_orbit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

namespace bellorbit {

ProblemSpec::ProblemSpec(int outcomes, int settings) : d_(outcomes), m_(settings) {
  if (outcomes < 2) throw std::invalid_argument("outcomes (d) must be at least 2");
  if (settings < 1) throw std::invalid_argument("settings (M) must be at least 1");
  if (static_cast<long long>(outcomes) * settings > (1LL << 24))
    throw std::invalid_argument("outcomes * settings is too large");
}

CMatrix translation_matrix(int d) {
  if (d < 2) throw std::invalid_argument("translation_matrix: d must be at least 2");
  const auto n = static_cast<std::size_t>(d);
  CMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j) t((j + 1) % n, j) = 1.0;
  return t;
}

std::vector<FourierMode> fourier_eigenbasis(int d) {
  if (d < 2) throw std::invalid_argument("fourier_eigenbasis: d must be at least 2");
  const double two_pi = 2.0 * std::numbers::pi;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<FourierMode> modes;
  modes.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    CVector w(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      // (j*k) mod d keeps the angle small and exact in the integer part.
      w[static_cast<std::size_t>(k)] = std::polar(norm, two_pi * ((j * k) % d) / d);
    }
    // Eigenvalue e^{-2 pi i j / d} = e^{2 pi i r / d} with r = -j mod d, then
    // shifted into (-d/2, d/2]; the boundary r = d/2 stays positive (+pi).
    int r = (d - j) % d;
    if (2 * r > d) r -= d;
    modes.push_back({std::move(w), two_pi * r / d, r});
  }
  return modes;
}

CMatrix root_unitary(const ProblemSpec& spec) {
  const int d = spec.outcomes();
  const auto n = static_cast<std::size_t>(d);
  CMatrix u(n, n);
  for (const auto& mode : fourier_eigenbasis(d)) {
    const Complex lambda = std::polar(1.0, mode.phase / spec.settings());
    u += lambda * CMatrix::outer(mode.vector, mode.vector);
  }
  return u;
}

CMatrix measurement_basis(const ProblemSpec& spec, int m) {
  if (m < 0 || m >= spec.settings()) {
    std::ostringstream msg;
    msg << "measurement_basis: setting " << m << " outside [0, " << spec.settings() - 1 << "]";
    throw std::out_of_range(msg.str());
  }
  return mat_power(root_unitary(spec), static_cast<unsigned>(m));
}

CMatrix swap_matrix(int d) {
  if (d < 1) throw std::invalid_argument("swap_matrix: d must be positive");
  const auto n = static_cast<std::size_t>(d);
  CMatrix s(n * n, n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) s(k * n + j, j * n + k) = 1.0;
  return s;
}

CMatrix step_operator(const ProblemSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.outcomes());
  return kron(root_unitary(spec), CMatrix::identity(n)) * swap_matrix(spec.outcomes());
}

LabelPair label_step(const MeasLabel& alice, const MeasLabel& bob, const ProblemSpec& spec) {
  MeasLabel advanced = bob;
  if (bob.setting < spec.settings() - 1) {
    advanced.setting = bob.setting + 1;
  } else {
    advanced.setting = 0;
    advanced.outcome = (bob.outcome + 1) % spec.outcomes();
  }
  return {advanced, alice};
}

Generators make_generators(const ProblemSpec& spec) {
  return make_generators_with_swap(spec, swap_matrix(spec.outcomes()));
}

Generators make_generators_with_swap(const ProblemSpec& spec, const CMatrix& swap) {
  const auto n = static_cast<std::size_t>(spec.outcomes());
  if (swap.rows() != n * n || swap.cols() != n * n)
    throw std::invalid_argument("make_generators_with_swap: swap has wrong dimension");
  Generators g{spec, translation_matrix(spec.outcomes()), root_unitary(spec), swap, {}, {}};
  g.step = kron(g.root, CMatrix::identity(n)) * g.swap;
  g.bases.reserve(static_cast<std::size_t>(spec.settings()));
  CMatrix power = CMatrix::identity(n);
  for (int m = 0; m < spec.settings(); ++m) {
    g.bases.push_back(power);
    power = g.root * power;
  }
  return g;
}

namespace {

CVector labeled_vector(const Generators& g, const MeasLabel& alice, const MeasLabel& bob) {
  const auto& a = g.bases[static_cast<std::size_t>(alice.setting)];
  const auto& b = g.bases[static_cast<std::size_t>(bob.setting)];
  return kron(a.column(static_cast<std::size_t>(alice.outcome)), b.column(static_cast<std::size_t>(bob.outcome)));
}

std::string describe(const MeasLabel& a, const MeasLabel& b) {
  std::ostringstream s;
  s << "(" << a.setting << "," << a.outcome << " | " << b.setting << "," << b.outcome << ")";
  return s.str();
}

}  // namespace

std::vector<OrbitEntry> orbit(const ProblemSpec& spec) { return orbit(make_generators(spec)); }

std::vector<OrbitEntry> orbit(const Generators& g) {
  const ProblemSpec& spec = g.spec;
  const int length = spec.orbit_length();
  std::vector<OrbitEntry> entries;
  entries.reserve(static_cast<std::size_t>(length));

  MeasLabel alice{0, 0};
  MeasLabel bob{0, 0};
  CVector vec = CVector::basis(spec.pair_dim(), 0);
  std::set<LabelPair> seen;

  for (int step = 0; step < length; ++step) {
    const double mismatch = max_abs_diff(vec, labeled_vector(g, alice, bob));
    if (mismatch > kOrbitConsistencyTol) {
      std::ostringstream msg;
      msg << "orbit step " << step << " label " << describe(alice, bob)
          << " disagrees with B^j|00> (max deviation " << mismatch << ")";
      throw OrbitConsistencyError(msg.str());
    }
    if (!seen.insert({alice, bob}).second) {
      throw OrbitConsistencyError("orbit repeats label " + describe(alice, bob) + " before closing");
    }
    entries.push_back({step, alice, bob, vec});
    std::tie(alice, bob) = label_step(alice, bob, spec);
    vec = g.step * vec;
  }

  if (alice != MeasLabel{0, 0} || bob != MeasLabel{0, 0}) {
    throw OrbitConsistencyError("orbit labels do not close after 2Md steps");
  }
  const double closure = max_abs_diff(vec, CVector::basis(spec.pair_dim(), 0));
  if (closure > kOrbitConsistencyTol) {
    std::ostringstream msg;
    msg << "B^(2Md)|00> differs from |00> by " << closure;
    throw OrbitConsistencyError(msg.str());
  }
  return entries;
}

std::set<LabelPair> orbit_condition_labels(const ProblemSpec& spec) {
  const int d = spec.outcomes();
  const int big_m = spec.settings();
  std::set<LabelPair> labels;
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < big_m; ++m) labels.insert({{m, k}, {m, k}});
    for (int m = 0; m + 1 < big_m; ++m) labels.insert({{m + 1, k}, {m, k}});
    labels.insert({{0, (k + 1) % d}, {big_m - 1, k}});
  }
  return labels;
}

}  // namespace bellorbit
