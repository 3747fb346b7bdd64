#include "bellorbit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "bellorbit/bounds.hpp"
#include "bellorbit/game_stats.hpp"

namespace bellorbit {

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

namespace {

std::string instance_name(const ProblemSpec& spec) {
  std::ostringstream s;
  s << "d=" << spec.outcomes() << " M=" << spec.settings();
  return s.str();
}

class Tracker {
 public:
  Tracker(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}
  explicit Tracker(std::string name) : name_(std::move(name)) {}

  void residual(const ProblemSpec& spec, double value) {
    ++evaluated_;
    worst_ = std::max(worst_, value);
    if (!(value <= tol_)) {
      std::ostringstream s;
      s << instance_name(spec) << " residual " << value;
      failures_.push_back(s.str());
    }
  }

  void condition(const ProblemSpec& spec, bool ok, const std::string& why = {}) {
    ++evaluated_;
    if (!ok) failures_.push_back(instance_name(spec) + (why.empty() ? "" : ": " + why));
  }

  void note(std::string text) { note_ = std::move(text); }

  bool evaluated() const { return evaluated_ > 0; }

  CheckResult result() const {
    CheckResult r{name_, failures_.empty(), {}};
    std::ostringstream s;
    if (!failures_.empty()) {
      s << failures_.size() << " of " << evaluated_ << " instances failed; ";
      for (std::size_t i = 0; i < std::min<std::size_t>(failures_.size(), 3); ++i) s << (i ? "; " : "") << failures_[i];
      if (failures_.size() > 3) s << "; ...";
    } else if (tol_ >= 0.0) {
      s.precision(2);
      s << std::scientific << "max residual " << worst_ << " (tol " << tol_ << ") over " << evaluated_ << " instances";
    } else {
      s << evaluated_ << " instances";
    }
    if (!note_.empty()) s << "; " << note_;
    r.detail = s.str();
    return r;
  }

 private:
  std::string name_;
  double tol_ = -1.0;
  double worst_ = 0.0;
  int evaluated_ = 0;
  std::vector<std::string> failures_;
  std::string note_;
};

}  // namespace

VerificationReport run_verification(const VerifyOptions& options) {
  if (options.outcomes_max < 2 || options.settings_max < 1)
    throw std::invalid_argument("verification range needs outcomes_max >= 2 and settings_max >= 1");
  for (int d = 2; d <= options.outcomes_max; ++d)
    for (int m = 1; m <= options.settings_max; ++m) check_classical_search(ProblemSpec(d, m));

  Tracker unitary("unitarity of T, U, S, B", kUnitaryTol);
  Tracker root("U^M = T", 1e-11);
  Tracker square("B^2 = U (x) U", 1e-11);
  Tracker period("B^(2Md) = I", 1e-10);
  Tracker construct("orbit construction");
  Tracker powers("orbit vectors equal B^j|00>", kOrbitConsistencyTol);
  Tracker shape("orbit length 2Md, distinct labels, closure");
  Tracker conditions("orbit labels equal membership conditions 1-3");
  Tracker pairing("M=2: each setting pair appears d times");
  Tracker pipeline("analysis pipeline completes");
  Tracker agreement("analytic vs numeric quantum bound", kBoundAgreementTol);
  Tracker violation("Q_s >= C_s");
  Tracker eigen("optimal state is a B eigenvector", 1e-9);
  Tracker equal_terms("per-term probabilities equal Q_s/2Md", 1e-9);
  Tracker mutual("M=2: I_ab independent of setting pair", 1e-9);
  Tracker degenerate("d=2 M=1: Q_s = C_s = 1");

  VerificationReport report;
  for (int d = 2; d <= options.outcomes_max; ++d) {
    for (int big_m = 1; big_m <= options.settings_max; ++big_m) {
      const ProblemSpec spec(d, big_m);
      ++report.instances;
      const Generators g = options.generators(spec);
      const auto n = static_cast<std::size_t>(d);

      unitary.residual(spec, std::max({unitarity_residual(g.translation), unitarity_residual(g.root),
                                       unitarity_residual(g.swap), unitarity_residual(g.step)}));
      root.residual(spec, max_abs_diff(mat_power(g.root, static_cast<unsigned>(big_m)), g.translation));
      square.residual(spec, max_abs_diff(g.step * g.step, kron(g.root, g.root)));
      period.residual(spec, max_abs_diff(mat_power(g.step, static_cast<unsigned>(spec.orbit_length())),
                                         CMatrix::identity(n * n)));

      std::vector<OrbitEntry> states;
      try {
        states = orbit(g);
        construct.condition(spec, true);
      } catch (const std::exception& e) {
        construct.condition(spec, false, e.what());
        continue;
      }

      CMatrix power = CMatrix::identity(n * n);
      double worst = 0.0;
      for (const auto& e : states) {
        worst = std::max(worst, max_abs_diff(e.vector, power.column(0)));
        power = g.step * power;
      }
      powers.residual(spec, worst);

      std::set<LabelPair> labels;
      for (const auto& e : states) labels.insert({e.alice, e.bob});
      const auto [next_alice, next_bob] = label_step(states.back().alice, states.back().bob, spec);
      const bool closes = next_alice == states.front().alice && next_bob == states.front().bob;
      shape.condition(spec, static_cast<int>(states.size()) == spec.orbit_length() &&
                                static_cast<int>(labels.size()) == spec.orbit_length() && closes);
      conditions.condition(spec, labels == orbit_condition_labels(spec));

      if (big_m == 2) {
        std::map<std::pair<int, int>, int> counts;
        for (const auto& e : states) ++counts[{e.alice.setting, e.bob.setting}];
        bool ok = counts.size() == 4;
        for (const auto& [pair, count] : counts) ok = ok && count == d;
        pairing.condition(spec, ok);
      }

      try {
        const auto analysis = analyze(g);
        pipeline.condition(spec, true);
        const auto& ineq = analysis.inequality;
        agreement.residual(spec, std::abs(ineq.quantum_bound - ineq.numeric_quantum_bound));
        violation.condition(spec, ineq.quantum_bound >= ineq.classical_bound - 1e-9);

        const CVector image = g.step * ineq.optimal_state;
        const Complex lambda = inner(ineq.optimal_state, image);
        eigen.residual(spec, max_abs_diff(image, lambda * ineq.optimal_state));

        const double share = ineq.quantum_bound / spec.orbit_length();
        double spread = 0.0;
        double total = 0.0;
        for (double p : ineq.per_term_probs) {
          spread = std::max(spread, std::abs(p - share));
          total += p;
        }
        equal_terms.residual(spec, std::max(spread, std::abs(total - ineq.quantum_bound)));

        if (analysis.mutual_info_spread) mutual.residual(spec, *analysis.mutual_info_spread);

        if (d == 2 && big_m == 1) {
          std::ostringstream s;
          s.precision(4);
          s << std::fixed << "Q_s=" << ineq.quantum_bound << " C_s=" << ineq.classical_bound;
          degenerate.condition(spec, std::abs(ineq.quantum_bound - 1.0) <= 1e-9 && ineq.classical_bound == 1,
                               s.str());
          degenerate.note(s.str());
        }
      } catch (const std::exception& e) {
        pipeline.condition(spec, false, e.what());
      }
    }
  }

  for (const Tracker* t : {&unitary, &root, &square, &period, &construct, &powers, &shape, &conditions, &pairing,
                           &pipeline, &agreement, &violation, &eigen, &equal_terms, &mutual, &degenerate}) {
    if (t->evaluated()) report.checks.push_back(t->result());
  }
  return report;
}

}  // namespace bellorbit
