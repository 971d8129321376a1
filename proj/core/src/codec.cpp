// Copyright 2026 The Revcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revcomp/codec.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace revcomp {

namespace {

constexpr const char* kCircuitMagic = "revcomp-circuit";
constexpr const char* kCircuitVersion = "v1";
constexpr const char* kTrainingFormat = "revcomp-training";
constexpr int kTrainingVersion = 1;
constexpr const char* kSummaryHeader =
    "family,n_qubits,trash_requested,success,generations,x_count,cx_count,ccx_count,seed";

using Json = nlohmann::ordered_json;

std::string gate_token(const Gate& gate) {
  std::string out = "(" + std::to_string(gate.target());
  for (int c : gate.controls()) out += ", " + std::to_string(c);
  out += ")";
  return out;
}

}  // namespace

std::vector<int> moment_schedule(const Circuit& circuit) {
  std::vector<int> last(static_cast<std::size_t>(circuit.n_qubits()), -1);
  std::vector<int> moments;
  moments.reserve(circuit.size());
  for (const Gate& g : circuit.gates()) {
    int m = last[static_cast<std::size_t>(g.target())];
    for (int c : g.controls()) m = std::max(m, last[static_cast<std::size_t>(c)]);
    ++m;
    moments.push_back(m);
    last[static_cast<std::size_t>(g.target())] = m;
    for (int c : g.controls()) last[static_cast<std::size_t>(c)] = m;
  }
  return moments;
}

std::string serialize_circuit(const Circuit& circuit) {
  std::vector<int> moments = moment_schedule(circuit);
  std::vector<std::size_t> order(circuit.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Moment-major; targets are unique within a moment, so this is total.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (moments[a] != moments[b]) return moments[a] < moments[b];
    return circuit.gates()[a].target() < circuit.gates()[b].target();
  });
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out += ' ';
    out += gate_token(circuit.gates()[order[i]]);
  }
  return out;
}

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void skip_spaces() {
    while (!done() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  int parse_index(int n_qubits) {
    skip_spaces();
    std::size_t start = pos;
    if (done() || peek() < '0' || peek() > '9') {
      throw ParseError("expected a qubit index", pos);
    }
    long value = 0;
    while (!done() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      if (value > kMaxQubits) throw ParseError("qubit index too large", start);
      ++pos;
    }
    if (value >= n_qubits) {
      throw ParseError("qubit index " + std::to_string(value) + " >= n_qubits " +
                           std::to_string(n_qubits),
                       start);
    }
    return static_cast<int>(value);
  }
};

}  // namespace

Circuit parse_circuit(const std::string& text, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw DimensionError("n_qubits must be in [1, 64], got " + std::to_string(n_qubits));
  }
  Cursor cur{text};
  std::vector<Gate> gates;
  for (;;) {
    cur.skip_spaces();
    if (cur.done()) break;
    std::size_t token_start = cur.pos;
    if (cur.peek() != '(') throw ParseError("expected '('", cur.pos);
    ++cur.pos;
    int indices[3];
    int arity = 1;
    indices[0] = cur.parse_index(n_qubits);
    for (;;) {
      cur.skip_spaces();
      if (cur.done()) throw ParseError("unterminated gate tuple", token_start);
      if (cur.peek() == ')') {
        ++cur.pos;
        break;
      }
      if (cur.peek() != ',') throw ParseError("expected ',' or ')'", cur.pos);
      ++cur.pos;
      if (arity == 3) throw ParseError("gate tuple has more than 3 entries", cur.pos);
      indices[arity++] = cur.parse_index(n_qubits);
    }
    try {
      switch (arity) {
        case 1: gates.push_back(Gate::x(indices[0])); break;
        case 2: gates.push_back(Gate::cx(indices[0], indices[1])); break;
        default: gates.push_back(Gate::ccx(indices[0], indices[1], indices[2])); break;
      }
    } catch (const InvalidGateError& e) {
      throw ParseError(e.what(), token_start);
    }
  }
  return Circuit(n_qubits, std::move(gates));
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_circuit_file(const std::string& path, const Circuit& circuit) {
  std::string content = std::string(kCircuitMagic) + " " + kCircuitVersion + "\n" +
                        "n_qubits=" + std::to_string(circuit.n_qubits()) + "\n" +
                        serialize_circuit(circuit) + "\n";
  write_text_atomic(path, content);
}

Circuit read_circuit_file(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string magic_line, width_line, body;
  if (!std::getline(in, magic_line)) throw IoError(path + ": missing header line");
  if (magic_line != std::string(kCircuitMagic) + " " + kCircuitVersion) {
    if (magic_line.rfind(kCircuitMagic, 0) == 0) {
      throw IoError(path + ": unsupported circuit file version '" + magic_line + "'");
    }
    throw IoError(path + ": not a revcomp circuit file");
  }
  if (!std::getline(in, width_line) || width_line.rfind("n_qubits=", 0) != 0) {
    throw IoError(path + ": missing n_qubits line");
  }
  int n = 0;
  try {
    n = std::stoi(width_line.substr(9));
  } catch (const std::exception&) {
    throw IoError(path + ": malformed n_qubits value");
  }
  std::getline(in, body);  // may be empty for the identity circuit
  try {
    return parse_circuit(body, n);
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_training_file(const std::string& path, const TrainingSet& training) {
  Json doc;
  doc["format"] = kTrainingFormat;
  doc["version"] = kTrainingVersion;
  doc["n_qubits"] = training.n_qubits();
  doc["weights"] = training.weights();
  Json states = Json::array();
  for (const SparseState& s : training.states()) {
    Json terms = Json::array();
    for (const SparseState::Term& t : s.terms()) {
      terms.push_back({{"ket", ket_string(t.key, s.n_qubits())},
                       {"amp", {t.amp.real(), t.amp.imag()}}});
    }
    states.push_back({{"terms", terms}});
  }
  doc["states"] = states;
  write_text_atomic(path, doc.dump(2) + "\n");
}

TrainingSet read_training_file(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": invalid JSON: " + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kTrainingFormat) {
      throw IoError(path + ": not a revcomp training file");
    }
    if (doc.at("version").get<int>() != kTrainingVersion) {
      throw IoError(path + ": unsupported training file version");
    }
    int n = doc.at("n_qubits").get<int>();
    std::vector<double> weights = doc.at("weights").get<std::vector<double>>();
    std::vector<SparseState> states;
    for (const Json& js : doc.at("states")) {
      std::vector<SparseState::Term> terms;
      for (const Json& jt : js.at("terms")) {
        std::string ket = jt.at("ket").get<std::string>();
        if (static_cast<int>(ket.size()) != n) {
          throw IoError(path + ": ket width disagrees with n_qubits");
        }
        const Json& amp = jt.at("amp");
        if (!amp.is_array() || amp.size() != 2) {
          throw IoError(path + ": amplitude must be [re, im]");
        }
        terms.push_back({parse_ket(ket), Amplitude{amp[0].get<double>(), amp[1].get<double>()}});
      }
      states.emplace_back(n, std::move(terms));
    }
    return TrainingSet(std::move(states), std::move(weights));
  } catch (const IoError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": malformed training file: " + e.what());
  } catch (const Error& e) {
    throw IoError(path + ": inconsistent training data: " + e.what());
  }
}

std::string trace_record_to_json(const TraceRecord& record) {
  Json j;
  j["generation"] = record.generation;
  j["best_fitness"] = record.best_fitness;
  j["best_gate_count"] = record.best_gate_count;
  j["population_size"] = record.population_size;
  if (record.stage >= 0) j["stage"] = record.stage;
  if (record.evaluations >= 0) j["evaluations"] = record.evaluations;
  if (record.support_snapshot) j["support_snapshot"] = *record.support_snapshot;
  return j.dump();
}

TraceRecord trace_record_from_json(const std::string& line) {
  TraceRecord r;
  try {
    Json j = Json::parse(line);
    r.generation = j.at("generation").get<int>();
    r.best_fitness = j.at("best_fitness").get<double>();
    r.best_gate_count = j.at("best_gate_count").get<int>();
    r.population_size = j.at("population_size").get<int>();
    if (j.contains("stage")) r.stage = j["stage"].get<int>();
    if (j.contains("evaluations")) r.evaluations = j["evaluations"].get<std::int64_t>();
    if (j.contains("support_snapshot")) {
      r.support_snapshot = j["support_snapshot"].get<std::vector<std::vector<std::string>>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed trace record: ") + e.what());
  }
  return r;
}

void write_trace_file(const std::string& path, const std::vector<TraceRecord>& records) {
  std::string content;
  for (const TraceRecord& r : records) {
    content += trace_record_to_json(r);
    content += '\n';
  }
  write_text_atomic(path, content);
}

std::vector<TraceRecord> read_trace_file(const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<TraceRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(trace_record_from_json(line));
  }
  return records;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out = std::string(kSummaryHeader) + "\n";
  for (const SummaryRow& r : rows) {
    out += r.family + "," + std::to_string(r.n_qubits) + ",";
    if (r.not_applicable) {
      out += "-,-,-,-,-,-,-\n";
      continue;
    }
    out += std::to_string(r.trash_requested) + ",";
    out += r.success ? "true," : "false,";
    out += std::to_string(r.generations) + ",";
    out += std::to_string(r.x_count) + "," + std::to_string(r.cx_count) + "," +
           std::to_string(r.ccx_count) + ",";
    out += std::to_string(r.seed) + "\n";
  }
  return out;
}

void write_summary_file(const std::string& path, const std::vector<SummaryRow>& rows) {
  write_text_atomic(path, summary_to_csv(rows));
}

std::vector<SummaryRow> read_summary_file(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty summary file");
  if (line != kSummaryHeader) throw IoError(path + ": unexpected summary header");
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 9) throw IoError(path + ": summary row has " +
                                          std::to_string(fields.size()) + " fields, expected 9");
    SummaryRow r;
    try {
      r.family = fields[0];
      r.n_qubits = std::stoi(fields[1]);
      if (fields[2] == "-") {
        r.not_applicable = true;
      } else {
        r.trash_requested = std::stoi(fields[2]);
        r.success = fields[3] == "true";
        r.generations = std::stoll(fields[4]);
        r.x_count = std::stoi(fields[5]);
        r.cx_count = std::stoi(fields[6]);
        r.ccx_count = std::stoi(fields[7]);
        r.seed = std::stoull(fields[8]);
      }
    } catch (const std::exception&) {
      throw IoError(path + ": malformed summary row: " + line);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace revcomp
