#include "acna/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace acna {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("malformed JSON document");
  return doc;
}

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

GameTensor parse_game(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("game document must be an object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
    throw ParseError("missing or non-integer field 'format_version'");
  }
  if (doc["format_version"].get<int>() != 1) {
    throw ParseError("unsupported format_version " +
                     doc["format_version"].dump());
  }
  if (!doc.contains("players") || !doc["players"].is_number_integer()) {
    throw ParseError("missing or non-integer field 'players'");
  }
  const int players = doc["players"].get<int>();
  if (players < 1) throw ParseError("'players' must be positive");

  if (!doc.contains("strategies") || !doc["strategies"].is_array()) {
    throw ParseError("missing or non-array field 'strategies'");
  }
  std::vector<int> counts;
  for (const auto& entry : doc["strategies"]) {
    if (!entry.is_number_integer() || entry.get<int>() < 1) {
      throw ParseError("'strategies' entries must be positive integers");
    }
    counts.push_back(entry.get<int>());
  }
  if (static_cast<int>(counts.size()) != players) {
    throw ParseError("'strategies' length " + std::to_string(counts.size()) +
                     " does not match 'players' = " + std::to_string(players));
  }
  long profiles = 1;
  for (int c : counts) profiles *= c;

  if (!doc.contains("payoffs") || !doc["payoffs"].is_array()) {
    throw ParseError("missing or non-array field 'payoffs'");
  }
  if (static_cast<int>(doc["payoffs"].size()) != players) {
    throw ParseError("'payoffs' must hold one table per player");
  }
  std::vector<Vector> payoffs;
  for (int i = 0; i < players; ++i) {
    const auto& table = doc["payoffs"][i];
    if (!table.is_array()) {
      throw ParseError("payoff table for player " + std::to_string(i + 1) +
                       " is not an array");
    }
    if (static_cast<long>(table.size()) != profiles) {
      throw ParseError("payoff table for player " + std::to_string(i + 1) +
                       " has " + std::to_string(table.size()) +
                       " entries, expected " + std::to_string(profiles));
    }
    Vector values(profiles);
    for (long k = 0; k < profiles; ++k) {
      if (!table[k].is_number()) {
        throw ParseError("payoff " + std::to_string(k) + " for player " +
                         std::to_string(i + 1) + " is not a number");
      }
      const double v = table[k].get<double>();
      if (!std::isfinite(v)) {
        throw ParseError("payoff " + std::to_string(k) + " for player " +
                         std::to_string(i + 1) + " is not finite");
      }
      values[k] = v;
    }
    payoffs.push_back(std::move(values));
  }

  std::vector<std::vector<std::string>> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() ||
        static_cast<int>(doc["labels"].size()) != players) {
      throw ParseError("'labels' must hold one list per player");
    }
    for (int i = 0; i < players; ++i) {
      std::vector<std::string> row;
      for (const auto& l : doc["labels"][i]) {
        if (!l.is_string()) throw ParseError("labels must be strings");
        row.push_back(l.get<std::string>());
      }
      if (static_cast<int>(row.size()) != counts[i]) {
        throw ParseError("label count for player " + std::to_string(i + 1) +
                         " does not match its strategy count");
      }
      labels.push_back(std::move(row));
    }
  }
  return GameTensor(std::move(counts), std::move(payoffs), std::move(labels));
}

std::string serialize_game(const GameTensor& game) {
  json doc;
  doc["format_version"] = 1;
  doc["players"] = game.num_players();
  doc["strategies"] = game.strategy_counts();
  json payoffs = json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    json table = json::array();
    for (long k = 0; k < game.num_profiles(); ++k) {
      table.push_back(game.payoff(i, k));
    }
    payoffs.push_back(std::move(table));
  }
  doc["payoffs"] = std::move(payoffs);
  if (game.has_labels()) doc["labels"] = game.labels();
  return doc.dump(2) + "\n";
}

GameTensor load_game_file(const std::string& path) {
  return parse_game(read_text_file(path));
}

Vector parse_profile(const std::string& text, int expected_length) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("x") || !doc["x"].is_array()) {
    throw ParseError("profile document must be an object with array field 'x'");
  }
  if (static_cast<int>(doc["x"].size()) != expected_length) {
    throw ParseError("profile length " + std::to_string(doc["x"].size()) +
                     " does not match game (m = " +
                     std::to_string(expected_length) + ")");
  }
  Vector x(expected_length);
  for (int k = 0; k < expected_length; ++k) {
    if (!doc["x"][k].is_number()) {
      throw ParseError("profile entry " + std::to_string(k) + " is not a number");
    }
    x[k] = doc["x"][k].get<double>();
    if (!std::isfinite(x[k])) {
      throw ParseError("profile entry " + std::to_string(k) + " is not finite");
    }
  }
  return x;
}

Vector load_profile_file(const std::string& path, int expected_length) {
  return parse_profile(read_text_file(path), expected_length);
}

namespace {

json certificate_json(const GameTensor& game,
                      const EquilibriumCertificate& cert) {
  json out;
  out["objective"] = cert.objective;
  out["max_regret"] =
      std::vector<double>(cert.max_regret.data(),
                          cert.max_regret.data() + cert.max_regret.size());
  out["box_violation"] = cert.box_violation;
  out["equality_residual"] = cert.equality_norm;
  out["verdict"] = cert.verdict;
  json blocks = json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    const auto seg = cert.x.segment(game.block_offset(i), game.strategies(i));
    blocks.push_back(std::vector<double>(seg.data(), seg.data() + seg.size()));
  }
  out["strategies"] = std::move(blocks);
  return out;
}

}  // namespace

std::string certificate_to_json(const GameTensor& game,
                                const EquilibriumCertificate& cert) {
  return certificate_json(game, cert).dump(2) + "\n";
}

std::string solve_report_to_json(const GameTensor& game,
                                 const SolveReport& report) {
  json out;
  out["seed"] = report.seed;
  out["iterations"] = report.result.iterations;
  out["fault_count"] = report.result.fault_count;
  out["history"] = report.result.history;
  if (report.result.ran) {
    out["certificate"] = certificate_json(game, report.result.best);
  } else {
    out["certificate"] = nullptr;
  }
  return out.dump(2) + "\n";
}

void write_trace_csv(std::ostream& out, const AnaTrace& trace, int stride) {
  out << "# ana trace: stride=" << stride << ", floats printed with %.17g\n";
  const int m =
      trace.samples.empty() ? 0 : static_cast<int>(trace.samples.front().x.size());
  out << "time";
  for (int j = 1; j <= m; ++j) out << ",x_" << j;
  out << ",Q,G,H,zeta,dxnorm\n";
  for (const TraceSample& s : trace.samples) {
    out << format_double(s.time);
    for (int j = 0; j < m; ++j) out << ',' << format_double(s.x[j]);
    out << ',' << format_double(s.objective) << ',' << format_double(s.box_violation)
        << ',' << format_double(s.equality_norm) << ',' << format_double(s.zeta)
        << ',' << format_double(s.xdot_norm) << '\n';
  }
}

void write_trace_file(const std::string& path, const AnaTrace& trace,
                      int stride) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_trace_csv(out, trace, stride);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace acna
