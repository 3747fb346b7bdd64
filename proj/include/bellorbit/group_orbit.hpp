#pragma once

// Generators of the cyclic group action on two-party product states and the
// labeled orbit of |0>|0> under the step operator B = (U (x) I) S.

#include <compare>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bellorbit/linalg.hpp"

namespace bellorbit {

/// One problem instance: d outcomes per measurement, M settings per party.
class ProblemSpec {
 public:
  /// Throws std::invalid_argument unless outcomes >= 2 and settings >= 1.
  ProblemSpec(int outcomes, int settings);

  int outcomes() const { return d_; }
  int settings() const { return m_; }
  /// R = 2 M d, the orbit length and the order of B.
  int orbit_length() const { return 2 * m_ * d_; }
  /// Dimension of the two-party space, d^2.
  std::size_t pair_dim() const { return static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_); }

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;

 private:
  int d_;
  int m_;
};

/// Basis vector U^setting |outcome>, i.e. outcome `outcome` of measurement `setting`.
struct MeasLabel {
  int setting = 0;
  int outcome = 0;

  friend auto operator<=>(const MeasLabel&, const MeasLabel&) = default;
};

struct OrbitEntry {
  int step = 0;
  MeasLabel alice;
  MeasLabel bob;
  CVector vector;
};

using LabelPair = std::pair<MeasLabel, MeasLabel>;

/// Raised when the symbolic labels and numeric vectors of an orbit disagree.
/// Indicates a convention bug, never a user error.
class OrbitConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kOrbitConsistencyTol = 1e-10;

/// Cyclic shift T|j> = |j+1 mod d>.
CMatrix translation_matrix(int d);

struct FourierMode {
  CVector vector;  ///< w_j with components e^{2 pi i j k / d} / sqrt(d)
  double phase;    ///< theta_j in (-pi, pi]; T w_j = e^{i theta_j} w_j
  int phase_numerator;  ///< theta_j = 2 pi * phase_numerator / d
};

/// Eigenbasis of the translation operator. The eigenvalue of w_j is
/// e^{-2 pi i j / d}; its phase is reduced to (-pi, pi] with -pi mapped to +pi.
std::vector<FourierMode> fourier_eigenbasis(int d);

/// U = sum_j e^{i theta_j / M} |w_j><w_j|, the principal-branch M-th root of T.
CMatrix root_unitary(const ProblemSpec& spec);

/// Column j is U^m |j>; m = 0 is the computational basis.
CMatrix measurement_basis(const ProblemSpec& spec, int m);

/// S|j>|k> = |k>|j> on C^d (x) C^d.
CMatrix swap_matrix(int d);

/// B = (U (x) I) S.
CMatrix step_operator(const ProblemSpec& spec);

/// Symbolic action of B on a label pair: (alice, bob) -> (U bob, alice), where
/// U advances the setting and, past the last setting, wraps to setting 0 with
/// the outcome shifted by one.
LabelPair label_step(const MeasLabel& alice, const MeasLabel& bob, const ProblemSpec& spec);

/// All operators needed to build an orbit. Built once per spec.
struct Generators {
  ProblemSpec spec;
  CMatrix translation;
  CMatrix root;
  CMatrix swap;
  CMatrix step;
  std::vector<CMatrix> bases;  ///< bases[m] = measurement_basis(spec, m)
};

Generators make_generators(const ProblemSpec& spec);

/// Same as make_generators but with the swap operator supplied by the caller.
/// The step operator is rebuilt from it. Used to exercise the consistency
/// checks with a deliberately wrong convention.
Generators make_generators_with_swap(const ProblemSpec& spec, const CMatrix& swap);

/// The 2Md labeled orbit states B^j |0>|0>, j = 0 .. 2Md-1.
/// Throws OrbitConsistencyError if labels and vectors disagree.
std::vector<OrbitEntry> orbit(const ProblemSpec& spec);
std::vector<OrbitEntry> orbit(const Generators& gens);

/// Label pairs prescribed by the three membership conditions:
/// (m,k | m,k), (m+1,k | m,k) for m <= M-2, and (0,k+1 | M-1,k).
std::set<LabelPair> orbit_condition_labels(const ProblemSpec& spec);

}  // namespace bellorbit
