#pragma once

// Quantum and classical bounds for the Bell inequality whose terms are the
// orbit states of B acting on |0>|0>.
//
// Quantum bound: largest eigenvalue of A = sum_j |psi_j><psi_j|, computed two
// independent ways (Jacobi diagonalization of A, and the eigenstructure of B
// which commutes with A). Classical bound: the most orbit terms a single
// deterministic local strategy can satisfy.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bellorbit/group_orbit.hpp"
#include "bellorbit/linalg.hpp"

namespace bellorbit {

inline constexpr double kBoundAgreementTol = 1e-9;
inline constexpr double kRootSnapTol = 1e-9;

/// Eigenvector of B with eigenvalue e^{2 pi i root_index / 2Md}.
struct EigenPair {
  int root_index = 0;
  CVector vector;
};

/// Outcome table for each party: map[setting] = outcome.
struct DeterministicStrategy {
  std::vector<int> alice_map;
  std::vector<int> bob_map;

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

/// Number of (alice, bob) terms the strategy satisfies.
int satisfied_terms(const DeterministicStrategy& strategy, const std::vector<LabelPair>& terms);

struct QuantumBound {
  double value = 0.0;
  CVector state;
};

/// Candidate eigenvalue of A contributed by one eigenspace of B.
struct EigenspaceCandidate {
  int root_index = 0;
  int multiplicity = 0;
  double value = 0.0;
};

struct AnalyticQuantumBound {
  double value = 0.0;
  CVector state;       ///< normalized |X_k> of the winning eigenspace
  int root_index = 0;  ///< eigenspace of B containing the state
  std::vector<EigenspaceCandidate> candidates;  ///< one per eigenspace, ascending root_index
};

struct ClassicalBound {
  int value = 0;
  DeterministicStrategy witness;
};

/// Raised when the exhaustive classical search would exceed kClassicalSearchLimit.
class InstanceTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when two routes that must agree do not (a bug, not a user error).
class CrossCheckError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::uint64_t kClassicalSearchLimit = 100'000'000;

/// Work estimate of classical_bound: d^M Alice tables times 2Md terms,
/// saturated at kClassicalSearchLimit + 1.
std::uint64_t classical_search_cost(const ProblemSpec& spec);

/// Throws InstanceTooLargeError if classical_search_cost exceeds the limit.
void check_classical_search(const ProblemSpec& spec);

/// A = sum over orbit states of |psi><psi|.
CMatrix accumulate_A(const std::vector<OrbitEntry>& orbit);

/// Largest eigenvalue of A and its normalized eigenvector (Jacobi route).
QuantumBound quantum_bound_numeric(const CMatrix& a);

/// All d^2 eigenpairs of B built from the eigenvectors w_j of U: w_j w_j with
/// U's eigenvalue, and for j < k the pair
///   (w_j w_k +- (mu / lambda_j) w_k w_j) / sqrt(2),  eigenvalue +-mu,
/// where mu is the principal square root of lambda_j lambda_k.
/// Throws CrossCheckError if a measured eigenvalue is not within kRootSnapTol
/// of a 2Md-th root of unity.
std::vector<EigenPair> b_eigensystem(const ProblemSpec& spec);
std::vector<EigenPair> b_eigensystem(const Generators& gens);

/// Quantum bound from B's eigenspaces: each eigenspace k contributes the
/// candidate 2Md * sum_l |<00|u_kl>|^2 with eigenvector
/// X_k = sum_l |u_kl><u_kl|00>. Ties go to the smallest root_index.
AnalyticQuantumBound quantum_bound_analytic(const ProblemSpec& spec, const std::vector<OrbitEntry>& orbit);
AnalyticQuantumBound quantum_bound_analytic(const std::vector<EigenPair>& eigenpairs,
                                            const std::vector<OrbitEntry>& orbit);

/// Maximum number of orbit terms satisfiable by a deterministic strategy,
/// with the lexicographically smallest (alice_map, bob_map) achieving it.
/// Enumerates Alice's d^M tables; for each, Bob's best response decouples per
/// setting (smallest outcome on ties), which yields the same optimum and
/// witness as a scan over all d^(2M) joint tables.
ClassicalBound classical_bound(const std::vector<OrbitEntry>& orbit, const ProblemSpec& spec);

struct BellInequality {
  ProblemSpec spec;
  std::vector<LabelPair> terms;  ///< orbit step order
  int classical_bound = 0;
  double quantum_bound = 0.0;
  double numeric_quantum_bound = 0.0;
  int optimal_root_index = 0;
  CVector optimal_state;
  std::vector<double> per_term_probs;
  DeterministicStrategy witness;
};

std::vector<LabelPair> orbit_terms(const std::vector<OrbitEntry>& orbit);

/// Full pipeline for one spec. Uses the analytic optimal state (an eigenvector
/// of B) and requires the two quantum routes to agree within
/// kBoundAgreementTol, otherwise throws CrossCheckError.
BellInequality build_inequality(const ProblemSpec& spec);
BellInequality build_inequality(const Generators& gens);

}  // namespace bellorbit
