#include "bellorbit/certificate.hpp"

#include <json.hpp>

namespace bellorbit {

using json = nlohmann::ordered_json;

Certificate make_certificate(const AnalysisReport& report) {
  const auto& ineq = report.inequality;
  Certificate cert;
  cert.outcomes = ineq.spec.outcomes();
  cert.settings = ineq.spec.settings();
  for (const auto& [a, b] : ineq.terms) cert.terms.push_back({a.setting, a.outcome, b.setting, b.outcome});
  cert.classical_bound = ineq.classical_bound;
  cert.quantum_bound = ineq.quantum_bound;
  cert.optimal_state.assign(ineq.optimal_state.entries().begin(), ineq.optimal_state.entries().end());
  cert.per_term_probs = ineq.per_term_probs;
  cert.witness = ineq.witness;
  for (const auto& q : report.game.questions)
    cert.questions.push_back({q.alice_setting, q.bob_setting, std::string(to_string(q.kind)), q.winning});
  cert.stats = {report.wins.quantum, report.wins.classical, report.prediction, report.mutual_info};
  return cert;
}

namespace {

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_nullable(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string serialize_certificate(const Certificate& cert) {
  json j;
  j["schema_version"] = cert.schema_version;
  j["index_convention"] = kIndexConvention;
  j["spec"] = {{"outcomes", cert.outcomes}, {"settings", cert.settings}};

  json terms = json::array();
  for (const auto& t : cert.terms) {
    terms.push_back({{"alice_setting", t.alice_setting},
                     {"alice_outcome", t.alice_outcome},
                     {"bob_setting", t.bob_setting},
                     {"bob_outcome", t.bob_outcome}});
  }
  j["terms"] = std::move(terms);
  j["classical_bound"] = cert.classical_bound;
  j["quantum_bound"] = cert.quantum_bound;

  json state = json::array();
  for (const auto& z : cert.optimal_state) state.push_back({{"re", z.real()}, {"im", z.imag()}});
  j["optimal_state"] = std::move(state);
  j["per_term_probs"] = cert.per_term_probs;
  j["witness"] = {{"alice", cert.witness.alice_map}, {"bob", cert.witness.bob_map}};

  json questions = json::array();
  for (const auto& q : cert.questions) {
    json winning = json::array();
    for (const auto& [a, b] : q.winning) winning.push_back({a, b});
    questions.push_back({{"alice_setting", q.alice_setting},
                         {"bob_setting", q.bob_setting},
                         {"kind", q.kind},
                         {"winning", std::move(winning)}});
  }
  j["game"] = {{"questions", std::move(questions)}};
  j["stats"] = {{"quantum_win", cert.stats.quantum_win},
                {"classical_win", cert.stats.classical_win},
                {"p", nullable(cert.stats.p)},
                {"I_ab", nullable(cert.stats.mutual_info)}};
  return j.dump(2) + "\n";
}

Certificate parse_certificate(std::string_view text) {
  try {
    const json j = json::parse(text);
    Certificate cert;
    cert.schema_version = j.at("schema_version").get<std::string>();
    if (cert.schema_version != kCertificateSchemaVersion) {
      throw CertificateFormatError("unsupported certificate schema version '" + cert.schema_version + "'");
    }
    cert.outcomes = j.at("spec").at("outcomes").get<int>();
    cert.settings = j.at("spec").at("settings").get<int>();
    for (const auto& t : j.at("terms")) {
      cert.terms.push_back({t.at("alice_setting").get<int>(), t.at("alice_outcome").get<int>(),
                            t.at("bob_setting").get<int>(), t.at("bob_outcome").get<int>()});
    }
    cert.classical_bound = j.at("classical_bound").get<int>();
    cert.quantum_bound = j.at("quantum_bound").get<double>();
    for (const auto& z : j.at("optimal_state"))
      cert.optimal_state.emplace_back(z.at("re").get<double>(), z.at("im").get<double>());
    cert.per_term_probs = j.at("per_term_probs").get<std::vector<double>>();
    cert.witness.alice_map = j.at("witness").at("alice").get<std::vector<int>>();
    cert.witness.bob_map = j.at("witness").at("bob").get<std::vector<int>>();
    for (const auto& q : j.at("game").at("questions")) {
      CertificateQuestion question{q.at("alice_setting").get<int>(), q.at("bob_setting").get<int>(),
                                   q.at("kind").get<std::string>(), {}};
      for (const auto& w : q.at("winning")) question.winning.emplace_back(w.at(0).get<int>(), w.at(1).get<int>());
      cert.questions.push_back(std::move(question));
    }
    const auto& stats = j.at("stats");
    cert.stats = {stats.at("quantum_win").get<double>(), stats.at("classical_win").get<double>(),
                  read_nullable(stats.at("p")), read_nullable(stats.at("I_ab"))};
    if (cert.per_term_probs.size() != cert.terms.size())
      throw CertificateFormatError("per_term_probs and terms differ in length");
    if (cert.optimal_state.size() != static_cast<std::size_t>(cert.outcomes) * static_cast<std::size_t>(cert.outcomes))
      throw CertificateFormatError("optimal_state length is not d^2");
    return cert;
  } catch (const json::exception& e) {
    throw CertificateFormatError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace bellorbit
