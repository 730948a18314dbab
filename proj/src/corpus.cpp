#include "cirq/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cirq {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path corpus_dir() {
  if (const char* env = std::getenv("CIRQUENT_CORPUS_DIR")) return env;
  return "corpus";
}

static std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Cirquent load_corpus_cirquent(const fs::path& dir, const std::string& file) {
  return load_json(slurp(dir / file));
}

Interpretation load_corpus_interpretation(const fs::path& dir,
                                          const std::string& file) {
  return load_interpretation_json(slurp(dir / file));
}

Situation load_corpus_situation(const fs::path& dir, const std::string& file) {
  json j = json::parse(slurp(dir / file));
  Situation s;
  for (auto& [port, value] : j.items())
    s[std::stoi(port)] = value.get<bool>();
  return s;
}

namespace {

Player player_from(const std::string& s) {
  if (s == "T") return Player::Machine;
  if (s == "B") return Player::Environment;
  throw std::runtime_error("bad player '" + s + "'");
}

struct Runner {
  const fs::path& dir;
  CorpusReport& report;
  std::string entry_name;
  std::string file;

  void add(const std::string& kind, const std::string& provenance, bool pass,
           std::string detail) {
    report.checks.push_back(
        {entry_name, kind, provenance, pass, std::move(detail)});
  }

  void check(const json& jc) {
    std::string kind = jc.at("kind").get<std::string>();
    std::string provenance = jc.value("provenance", "");
    try {
      run_one(kind, jc, provenance);
    } catch (const std::exception& e) {
      add(kind, provenance, false, std::string("exception: ") + e.what());
    }
  }

  Cirquent cirquent() { return load_corpus_cirquent(dir, file); }

  void run_one(const std::string& kind, const json& jc,
               const std::string& provenance) {
    if (kind == "validate") {
      cirquent();
      add(kind, provenance, true, "valid");
      return;
    }
    if (kind == "roundtrip") {
      Cirquent c = cirquent();
      std::string emitted = emit_json(c);
      bool same = json::parse(emitted) == json::parse(emit_json(load_json(emitted)));
      // The source document must agree with its own reload as well.
      Cirquent again = load_json(emitted);
      same = same && structural_equal(c, again);
      add(kind, provenance, same, same ? "round trip stable" : "mismatch");
      return;
    }
    if (kind == "legal_col" || kind == "legal_ars") {
      Cirquent c = cirquent();
      Run run = parse_run(jc.at("run").get<std::string>());
      Legality legality;
      if (kind == "legal_col") {
        Interpretation interp;
        if (jc.contains("interp"))
          interp = load_corpus_interpretation(
              dir, jc.at("interp").get<std::string>());
        legality = legal_position_col(c, interp, run);
      } else {
        legality = legal_position_ars(c, run);
      }
      bool expect = jc.at("expect").get<bool>();
      bool pass = legality.legal == expect;
      std::string detail = legality.legal ? "legal" : "illegal";
      if (!legality.legal) {
        detail += " at " + std::to_string(legality.offending_index) + " by " +
                  player_letter(legality.offender);
        if (jc.contains("offender"))
          pass = pass && legality.offender ==
                             player_from(jc.at("offender").get<std::string>());
        if (jc.contains("index"))
          pass = pass &&
                 legality.offending_index == jc.at("index").get<std::size_t>();
      }
      add(kind, provenance, pass, detail);
      return;
    }
    if (kind == "true_col") {
      Cirquent c = cirquent();
      Interpretation interp =
          load_corpus_interpretation(dir, jc.at("interp").get<std::string>());
      Run run = parse_run(jc.value("run", ""));
      bool value = true_col(c, interp, run);
      bool expect = jc.at("expect").get<bool>();
      add(kind, provenance, value == expect,
          value ? "true" : "false");
      return;
    }
    if (kind == "wn_col") {
      Cirquent c = cirquent();
      Interpretation interp =
          load_corpus_interpretation(dir, jc.at("interp").get<std::string>());
      Run run = parse_run(jc.value("run", ""));
      Player w = wn(c, interp, run);
      Player expect = player_from(jc.at("winner").get<std::string>());
      add(kind, provenance, w == expect,
          std::string("winner ") + player_letter(w));
      return;
    }
    if (kind == "true_ars") {
      Cirquent c = cirquent();
      Situation s =
          load_corpus_situation(dir, jc.at("situation").get<std::string>());
      Run run = parse_run(jc.value("run", ""));
      bool value = true_ars(c, s, run);
      add(kind, provenance, value == jc.at("expect").get<bool>(),
          value ? "true" : "false");
      return;
    }
    if (kind == "consistent") {
      Situation s =
          load_corpus_situation(dir, jc.at("situation").get<std::string>());
      Run run = parse_run(jc.at("run").get<std::string>());
      bool value = consistent(s, induced_arrangement(run));
      add(kind, provenance, value == jc.at("expect").get<bool>(),
          value ? "consistent" : "inconsistent");
      return;
    }
    if (kind == "accomplished") {
      Cirquent c = cirquent();
      Run run = parse_run(jc.value("run", ""));
      Accomplishment acc = accomplished(c, run);
      bool pass = acc.accomplished == jc.at("expect").get<bool>();
      std::string detail = acc.accomplished ? "accomplished" : "witness ";
      if (acc.witness) {
        for (auto& [port, v] : *acc.witness)
          detail += std::to_string(port) + (v ? ":T " : ":F ");
        if (jc.contains("witness")) {
          Situation expect;
          for (auto& [port, v] : jc.at("witness").items())
            expect[std::stoi(port)] = v.get<bool>();
          pass = pass && *acc.witness == expect;
        }
      }
      add(kind, provenance, pass, detail);
      return;
    }
    if (kind == "solve_ars" || kind == "solve_col") {
      Cirquent c = cirquent();
      SolveResult result;
      if (kind == "solve_ars") {
        result = solve_ars(c);
      } else {
        Interpretation interp = load_corpus_interpretation(
            dir, jc.at("interp").get<std::string>());
        result = solve_col(c, interp);
      }
      Player expect = player_from(jc.at("winner").get<std::string>());
      bool pass = result.winner == expect;
      if (jc.value("status", "exact") == "exact")
        pass = pass && result.status == SolveStatus::Exact;
      add(kind, provenance, pass,
          std::string("winner ") + player_letter(result.winner) + ", " +
              std::to_string(result.explored) + " states, line: " +
              emit_run(result.principal_run));
      return;
    }
    if (kind == "weak_validity") {
      Cirquent c = cirquent();
      bool value = weak_validity(c);
      add(kind, provenance, value == jc.at("expect").get<bool>(),
          value ? "weakly valid" : "not weakly valid");
      return;
    }
    if (kind == "extensional_identity") {
      Cirquent c = cirquent();
      Cirquent other =
          load_corpus_cirquent(dir, jc.at("other").get<std::string>());
      bool value = extensional_identity(c, other);
      add(kind, provenance, value == jc.at("expect").get<bool>(),
          value ? "identical" : "different");
      return;
    }
    if (kind == "translate_match") {
      Formula f = parse_formula(jc.at("formula").get<std::string>());
      std::string mode_name = jc.at("mode").get<std::string>();
      CompileMode mode = mode_name == "col"         ? CompileMode::Col
                         : mode_name == "if-choice" ? CompileMode::IfChoice
                                                    : CompileMode::IfParallel;
      Cirquent compiled =
          compile(f, jc.at("universe").get<int>(), mode);
      bool same = structural_equal(compiled, cirquent());
      add(kind, provenance, same,
          same ? "structures match" : "structures differ");
      return;
    }
    if (kind == "transform_match") {
      Cirquent c = cirquent();
      std::string op = jc.at("op").get<std::string>();
      Cirquent transformed =
          op == "weak_neg" ? weak_neg_cirquent(c) : strong_neg_cirquent(c);
      Cirquent other =
          load_corpus_cirquent(dir, jc.at("other").get<std::string>());
      bool same = structural_equal(transformed, other);
      add(kind, provenance, same,
          same ? "structures match" : "structures differ");
      return;
    }
    if (kind == "oracle_agree") {
      Cirquent c = cirquent();
      std::string regime_name = jc.value("regime", "ars");
      Regime regime = regime_name == "ars" ? Regime::Ars : Regime::Col;
      Interpretation interp;
      if (jc.contains("interp"))
        interp = load_corpus_interpretation(
            dir, jc.at("interp").get<std::string>());
      int max_len = jc.contains("max_len")
                        ? jc.at("max_len").get<int>()
                        : oracle_sufficient_len(c, regime);
      Player oracle = brute_force_oracle(
          c, regime, regime == Regime::Col ? &interp : nullptr, max_len);
      SolveResult solved = regime == Regime::Ars ? solve_ars(c)
                                                 : solve_col(c, interp);
      bool pass = oracle == solved.winner;
      add(kind, provenance, pass,
          std::string("oracle ") + player_letter(oracle) + ", solver " +
              player_letter(solved.winner));
      return;
    }
    add(kind, provenance, false, "unknown check kind");
  }
};

}  // namespace

CorpusReport run_corpus(const fs::path& dir, const std::string& filter) {
  json manifest = json::parse(slurp(dir / "entries.json"));
  CorpusReport report;
  for (auto& je : manifest.at("entries")) {
    std::string name = je.at("name").get<std::string>();
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    Runner runner{dir, report, name, je.at("file").get<std::string>()};
    for (auto& jc : je.at("checks")) runner.check(jc);
  }
  return report;
}

std::string report_text(const CorpusReport& report) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const CheckResult& c : report.checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.entry << " " << c.kind;
    if (!c.provenance.empty()) os << " [" << c.provenance << "]";
    os << ": " << c.detail << "\n";
    if (c.pass) ++passed;
  }
  os << passed << "/" << report.checks.size() << " checks passed\n";
  return os.str();
}

std::string report_json(const CorpusReport& report) {
  json j;
  j["checks"] = json::array();
  for (const CheckResult& c : report.checks)
    j["checks"].push_back({{"entry", c.entry},
                           {"kind", c.kind},
                           {"provenance", c.provenance},
                           {"pass", c.pass},
                           {"detail", c.detail}});
  j["all_pass"] = report.all_pass();
  return j.dump(2) + "\n";
}

}  // namespace cirq
