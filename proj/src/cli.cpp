#include "bellorbit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bellorbit/certificate.hpp"
#include "bellorbit/game_stats.hpp"
#include "bellorbit/verify.hpp"

namespace bellorbit {

namespace {

std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string term_text(const MeasLabel& a, const MeasLabel& b) {
  return "P(a" + std::to_string(a.setting) + "=" + std::to_string(a.outcome) + ", b" + std::to_string(b.setting) +
         "=" + std::to_string(b.outcome) + ")";
}

void print_analysis_text(const AnalysisReport& r, std::ostream& out) {
  const auto& ineq = r.inequality;
  out << "Bell inequality from the orbit of B = (U x I) S acting on |0>|0>\n"
      << "  outcomes d = " << ineq.spec.outcomes() << ", settings M = " << ineq.spec.settings()
      << ", terms = " << ineq.terms.size() << "\n\n"
      << "  quantum bound    Q_s = " << fixed4(ineq.quantum_bound) << "\n"
      << "  classical bound  C_s = " << ineq.classical_bound << "\n"
      << "  quantum win          = " << fixed4(r.wins.quantum) << "\n"
      << "  classical win        = " << fixed4(r.wins.classical) << "\n";
  if (r.prediction) out << "  prediction p         = " << fixed4(*r.prediction) << "\n";
  if (r.mutual_info) out << "  mutual info I_ab     = " << fixed4(*r.mutual_info) << " bits\n";
  out << "\nterms (orbit order) and their probabilities in the optimal state:\n";
  for (std::size_t i = 0; i < ineq.terms.size(); ++i) {
    char idx[16];
    std::snprintf(idx, sizeof idx, "%4zu", i);
    out << "  " << idx << "  " << term_text(ineq.terms[i].first, ineq.terms[i].second) << " = "
        << fixed4(ineq.per_term_probs[i]) << "\n";
  }
  out << "\nclassical witness: alice (";
  for (std::size_t s = 0; s < ineq.witness.alice_map.size(); ++s) out << (s ? "," : "") << ineq.witness.alice_map[s];
  out << ") bob (";
  for (std::size_t s = 0; s < ineq.witness.bob_map.size(); ++s) out << (s ? "," : "") << ineq.witness.bob_map[s];
  out << ")\n";
}

void print_game(const AnalysisReport& r, std::ostream& out) {
  out << "nonlocal game for d = " << r.spec().outcomes() << ", M = " << r.spec().settings() << " ("
      << r.game.questions.size() << " equally likely questions)\n";
  for (const auto& q : r.game.questions) {
    out << "  (s,t) = (" << q.alice_setting << "," << q.bob_setting << ") [" << to_string(q.kind) << "] wins on";
    for (const auto& [a, b] : q.winning) out << " (" << a << "," << b << ")";
    out << "\n";
  }
  out << "classical_win " << fixed4(r.wins.classical) << "\n"
      << "quantum_win   " << fixed4(r.wins.quantum) << "\n";
}

void print_table(int from, int to, std::ostream& out) {
  out << "   d     Q_s  C_s       p    I_ab\n";
  for (int d = from; d <= to; ++d) {
    const auto r = analyze(ProblemSpec(d, 2));
    char line[128];
    std::snprintf(line, sizeof line, "%4d  %6s  %3d  %6s  %6s\n", d, fixed4(r.quantum_bound()).c_str(),
                  r.classical_bound(), fixed4(*r.prediction).c_str(), fixed4(*r.mutual_info).c_str());
    out << line;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell inequalities from orbits of a single-generator group action on two-party product states",
               "bellorbit"};
  app.require_subcommand(1);

  int outcomes = 0;
  int settings = 0;
  std::string format = "text";
  std::string out_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Bounds, game values and statistics for one (d, M)");
  analyze_cmd->add_option("--outcomes", outcomes, "Outcomes per measurement d")
      ->required()
      ->check(CLI::Range(2, kMaxOutcomes));
  analyze_cmd->add_option("--settings", settings, "Measurement settings per party M")
      ->required()
      ->check(CLI::Range(1, kMaxSettings));
  analyze_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  analyze_cmd->add_option("--out", out_path, "Write the report to this file instead of standard output");

  int from = 0;
  int to = 0;
  auto* table_cmd = app.add_subcommand("table", "Q_s, C_s, p and I_ab for M = 2 over a range of d");
  table_cmd->add_option("--outcomes-from", from, "First d")->required()->check(CLI::Range(2, kMaxOutcomes));
  table_cmd->add_option("--outcomes-to", to, "Last d")->required()->check(CLI::Range(2, kMaxOutcomes));

  auto* game_cmd = app.add_subcommand("game", "Questions, winning sets and winning probabilities");
  game_cmd->add_option("--outcomes", outcomes, "Outcomes per measurement d")
      ->required()
      ->check(CLI::Range(2, kMaxOutcomes));
  game_cmd->add_option("--settings", settings, "Measurement settings per party M")
      ->required()
      ->check(CLI::Range(1, kMaxSettings));

  int outcomes_max = 6;
  int settings_max = 6;
  std::string fault;
  auto* verify_cmd = app.add_subcommand("verify", "Run the cross-check suite over d <= outcomes-max, M <= settings-max");
  verify_cmd->add_option("--outcomes-max", outcomes_max, "Largest d")->check(CLI::Range(2, kMaxOutcomes));
  verify_cmd->add_option("--settings-max", settings_max, "Largest M")->check(CLI::Range(1, kMaxSettings));
  verify_cmd->add_option("--inject-fault", fault, "Replace a convention with a broken one (self-test)")
      ->check(CLI::IsMember({"wrong-swap"}))
      ->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) {
      const auto report = analyze(ProblemSpec(outcomes, settings));
      std::string text;
      if (format == "json") {
        text = serialize_certificate(make_certificate(report));
      } else {
        std::ostringstream s;
        print_analysis_text(report, s);
        text = s.str();
      }
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
          err << "error: cannot open " << out_path << " for writing\n";
          return kExitUsage;
        }
        file << text;
      }
      return kExitOk;
    }
    if (table_cmd->parsed()) {
      if (from > to) {
        err << "error: --outcomes-from must not exceed --outcomes-to\n" << app.help();
        return kExitUsage;
      }
      print_table(from, to, out);
      return kExitOk;
    }
    if (game_cmd->parsed()) {
      print_game(analyze(ProblemSpec(outcomes, settings)), out);
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      VerifyOptions options;
      options.outcomes_max = outcomes_max;
      options.settings_max = settings_max;
      if (fault == "wrong-swap") {
        options.generators = [](const ProblemSpec& spec) {
          return make_generators_with_swap(spec, CMatrix::identity(spec.pair_dim()));
        };
      }
      const auto report = run_verification(options);
      for (const auto& c : report.checks) out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
      out << (report.all_passed() ? "all checks passed" : "verification FAILED") << " (" << report.instances
          << " instances)\n";
      return report.all_passed() ? kExitOk : kExitVerificationFailed;
    }
  } catch (const InstanceTooLargeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace bellorbit
