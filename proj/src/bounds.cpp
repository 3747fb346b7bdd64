#include "bellorbit/bounds.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace bellorbit {

int satisfied_terms(const DeterministicStrategy& strategy, const std::vector<LabelPair>& terms) {
  int count = 0;
  for (const auto& [alice, bob] : terms) {
    if (strategy.alice_map[static_cast<std::size_t>(alice.setting)] == alice.outcome &&
        strategy.bob_map[static_cast<std::size_t>(bob.setting)] == bob.outcome) {
      ++count;
    }
  }
  return count;
}

std::uint64_t classical_search_cost(const ProblemSpec& spec) {
  const std::uint64_t cap = kClassicalSearchLimit + 1;
  std::uint64_t cost = static_cast<std::uint64_t>(spec.orbit_length());
  for (int i = 0; i < spec.settings(); ++i) {
    cost *= static_cast<std::uint64_t>(spec.outcomes());
    if (cost > cap) return cap;
  }
  return cost;
}

void check_classical_search(const ProblemSpec& spec) {
  if (classical_search_cost(spec) > kClassicalSearchLimit) {
    std::ostringstream msg;
    msg << "instance too large: classical search for d=" << spec.outcomes() << ", M=" << spec.settings()
        << " exceeds " << kClassicalSearchLimit << " term evaluations";
    throw InstanceTooLargeError(msg.str());
  }
}

CMatrix accumulate_A(const std::vector<OrbitEntry>& orbit) {
  if (orbit.empty()) throw std::invalid_argument("accumulate_A: empty orbit");
  const std::size_t n = orbit.front().vector.dim();
  CMatrix a(n, n);
  for (const auto& entry : orbit) a += CMatrix::outer(entry.vector, entry.vector);
  return a;
}

QuantumBound quantum_bound_numeric(const CMatrix& a) {
  auto eigs = hermitian_eigs(a);
  return {eigs.front().value, CVector::normalized(eigs.front().vector)};
}

namespace {

// Principal representative of numerator / denom (in units of 2 pi) in (-1/2, 1/2].
int principal_numerator(int numerator, int denom) {
  int r = ((numerator % denom) + denom) % denom;
  if (2 * r > denom) r -= denom;
  return r;
}

int snap_root_index(Complex lambda, int order, int step) {
  const double turns = std::arg(lambda) / (2.0 * std::numbers::pi);
  const long long raw = std::llround(turns * order);
  const int index = static_cast<int>(((raw % order) + order) % order);
  const double error = std::abs(lambda - std::polar(1.0, 2.0 * std::numbers::pi * index / order));
  if (error > kRootSnapTol) {
    std::ostringstream msg;
    msg << "b_eigensystem: eigenvalue " << lambda << " of pair " << step << " is " << error
        << " away from the nearest " << order << "-th root of unity";
    throw CrossCheckError(msg.str());
  }
  return index;
}

}  // namespace

std::vector<EigenPair> b_eigensystem(const ProblemSpec& spec) { return b_eigensystem(make_generators(spec)); }

std::vector<EigenPair> b_eigensystem(const Generators& gens) {
  const ProblemSpec& spec = gens.spec;
  const int d = spec.outcomes();
  const int order = spec.orbit_length();
  // U's eigenvalue on w_j is e^{2 pi i r_j / (dM)}.
  const int phase_denom = d * spec.settings();
  const auto modes = fourier_eigenbasis(d);
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<CVector> candidates;
  candidates.reserve(spec.pair_dim());
  for (const auto& mode : modes) candidates.push_back(kron(mode.vector, mode.vector));

  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      const auto& wj = modes[static_cast<std::size_t>(j)];
      const auto& wk = modes[static_cast<std::size_t>(k)];
      // mu = principal sqrt(lambda_j lambda_k): half the principal phase of the product.
      const int product = principal_numerator(wj.phase_numerator + wk.phase_numerator, phase_denom);
      const double mu_phase = std::numbers::pi * product / phase_denom;
      const double lambda_j_phase = two_pi * wj.phase_numerator / phase_denom;
      const Complex ratio = std::polar(1.0, mu_phase - lambda_j_phase);
      const CVector jk = kron(wj.vector, wk.vector);
      const CVector kj = kron(wk.vector, wj.vector);
      candidates.push_back(inv_sqrt2 * (jk + ratio * kj));
      candidates.push_back(inv_sqrt2 * (jk - ratio * kj));
    }
  }

  std::vector<EigenPair> pairs;
  pairs.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const CVector image = gens.step * candidates[i];
    const Complex lambda = inner(candidates[i], image);
    const int index = snap_root_index(lambda, order, static_cast<int>(i));
    const double residual = max_abs_diff(image, lambda * candidates[i]);
    if (residual > kRootSnapTol) {
      std::ostringstream msg;
      msg << "b_eigensystem: candidate " << i << " is not an eigenvector of B (residual " << residual << ")";
      throw CrossCheckError(msg.str());
    }
    pairs.push_back({index, candidates[i]});
  }
  return pairs;
}

AnalyticQuantumBound quantum_bound_analytic(const ProblemSpec& spec, const std::vector<OrbitEntry>& orbit) {
  return quantum_bound_analytic(b_eigensystem(spec), orbit);
}

AnalyticQuantumBound quantum_bound_analytic(const std::vector<EigenPair>& eigenpairs,
                                            const std::vector<OrbitEntry>& orbit) {
  if (orbit.empty() || eigenpairs.empty()) throw std::invalid_argument("quantum_bound_analytic: empty input");
  const CVector& seed = orbit.front().vector;
  const double length = static_cast<double>(orbit.size());

  std::map<int, std::vector<const EigenPair*>> groups;
  for (const auto& pair : eigenpairs) groups[pair.root_index].push_back(&pair);

  constexpr double kTieTol = 1e-10;
  AnalyticQuantumBound best;
  best.value = -1.0;
  for (const auto& [index, members] : groups) {
    CVector x(seed.dim());
    double weight = 0.0;
    for (const EigenPair* u : members) {
      const Complex overlap = inner(u->vector, seed);  // <u|00>
      x += overlap * u->vector;
      weight += std::norm(overlap);
    }
    const double value = length * weight;
    best.candidates.push_back({index, static_cast<int>(members.size()), value});
    if (value > best.value + kTieTol) {
      best.value = value;
      best.root_index = index;
      best.state = std::move(x);
    }
  }
  best.state = CVector::normalized(best.state);
  return best;
}

ClassicalBound classical_bound(const std::vector<OrbitEntry>& orbit, const ProblemSpec& spec) {
  check_classical_search(spec);
  const int d = spec.outcomes();
  const int big_m = spec.settings();
  const auto terms = orbit_terms(orbit);

  std::vector<int> alice(static_cast<std::size_t>(big_m), 0);
  std::vector<int> counts(static_cast<std::size_t>(big_m * d));
  ClassicalBound best{-1, {}};

  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const auto& [a, b] : terms) {
      if (alice[static_cast<std::size_t>(a.setting)] == a.outcome) ++counts[static_cast<std::size_t>(b.setting * d + b.outcome)];
    }
    int total = 0;
    std::vector<int> bob(static_cast<std::size_t>(big_m), 0);
    for (int t = 0; t < big_m; ++t) {
      int best_outcome = 0;
      for (int b = 1; b < d; ++b) {
        if (counts[static_cast<std::size_t>(t * d + b)] > counts[static_cast<std::size_t>(t * d + best_outcome)]) best_outcome = b;
      }
      bob[static_cast<std::size_t>(t)] = best_outcome;
      total += counts[static_cast<std::size_t>(t * d + best_outcome)];
    }
    if (total > best.value) best = {total, {alice, std::move(bob)}};

    // Next Alice table in lexicographic order (last setting varies fastest).
    int pos = big_m - 1;
    while (pos >= 0 && alice[static_cast<std::size_t>(pos)] == d - 1) alice[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++alice[static_cast<std::size_t>(pos)];
  }
  return best;
}

std::vector<LabelPair> orbit_terms(const std::vector<OrbitEntry>& orbit) {
  std::vector<LabelPair> terms;
  terms.reserve(orbit.size());
  for (const auto& e : orbit) terms.emplace_back(e.alice, e.bob);
  return terms;
}

BellInequality build_inequality(const ProblemSpec& spec) {
  check_classical_search(spec);
  return build_inequality(make_generators(spec));
}

BellInequality build_inequality(const Generators& gens) {
  const ProblemSpec& spec = gens.spec;
  check_classical_search(spec);
  const auto states = orbit(gens);

  const auto numeric = quantum_bound_numeric(accumulate_A(states));
  const auto analytic = quantum_bound_analytic(b_eigensystem(gens), states);
  if (std::abs(numeric.value - analytic.value) > kBoundAgreementTol) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "quantum bound mismatch for d=" << spec.outcomes() << ", M=" << spec.settings()
        << ": numeric " << numeric.value << " vs analytic " << analytic.value;
    throw CrossCheckError(msg.str());
  }

  auto classical = classical_bound(states, spec);

  BellInequality ineq{spec, orbit_terms(states), classical.value, analytic.value, numeric.value,
                      analytic.root_index, analytic.state, {}, std::move(classical.witness)};
  ineq.per_term_probs.reserve(states.size());
  for (const auto& e : states) ineq.per_term_probs.push_back(std::norm(inner(ineq.optimal_state, e.vector)));
  return ineq;
}

}  // namespace bellorbit
