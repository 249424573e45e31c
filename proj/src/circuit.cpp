#include "dqc/circuit.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dqc {

using nlohmann::json;

Gate Gate::single(int q, const CMat &m) {
  Gate g;
  g.kind = GateKind::Single;
  g.qubits = {q};
  g.matrix = m;
  return g;
}

Gate Gate::cu(int control, int target, const CMat &u0, const CMat &u1) {
  Gate g;
  g.kind = GateKind::Controlled;
  g.qubits = {control, target};
  g.u0 = u0;
  g.u1 = u1;
  return g;
}

Gate Gate::cp(int q1, int q2, double theta) {
  Gate g;
  g.kind = GateKind::ControlPhase;
  g.qubits = {q1, q2};
  g.theta = theta;
  return g;
}

Gate Gate::cnot(int control, int target) {
  return cu(control, target, identity(2), gate_x());
}

CMat Gate::unitary() const {
  switch (kind) {
    case GateKind::Single: return matrix;
    case GateKind::Controlled: return controlled(u0, u1);
    case GateKind::ControlPhase: return gate_cp(theta);
  }
  return {};
}

Circuit::Circuit(std::vector<std::string> names, std::vector<Side> sides)
    : names_(std::move(names)), sides_(std::move(sides)) {
  if (names_.size() != sides_.size())
    throw DqcError(ErrorKind::InvalidPartition,
                   "qubit and side lists differ in length");
  frontier_.assign(names_.size(), 0);
}

int Circuit::index_of(const std::string &name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

void check_gate_qubits(const Circuit &c, const Gate &g) {
  for (int q : g.qubits)
    if (q < 0 || q >= c.num_qubits())
      throw DqcError(ErrorKind::UnknownQubit,
                     "qubit index " + std::to_string(q));
  if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1])
    throw DqcError(ErrorKind::OverlappingGates,
                   "two-qubit gate acts twice on " + c.name(g.qubits[0]));
}

}  // namespace

int Circuit::append(const Gate &g) {
  check_gate_qubits(*this, g);
  int t = 0;
  for (int q : g.qubits) t = std::max(t, frontier_[q]);
  place(t, g);
  return t;
}

void Circuit::place(int t, const Gate &g) {
  check_gate_qubits(*this, g);
  if (t >= depth()) columns_.resize(t + 1);
  for (const Gate &other : columns_[t])
    for (int a : other.qubits)
      for (int b : g.qubits)
        if (a == b)
          throw DqcError(ErrorKind::OverlappingGates,
                         "column " + std::to_string(t) + " already uses " +
                             name(a));
  columns_[t].push_back(g);
  for (int q : g.qubits) frontier_[q] = std::max(frontier_[q], t + 1);
}

bool Circuit::is_global(const Gate &g) const {
  return g.two_qubit() && side(g.qubits[0]) != side(g.qubits[1]);
}

int Circuit::count_two_qubit() const {
  int n = 0;
  for (const auto &col : columns_)
    for (const Gate &g : col) n += g.two_qubit() ? 1 : 0;
  return n;
}

int Circuit::count_global() const {
  int n = 0;
  for (const auto &col : columns_)
    for (const Gate &g : col) n += is_global(g) ? 1 : 0;
  return n;
}

bool is_global(const Gate &g, const Circuit &c) { return c.is_global(g); }

CMat full_unitary(const Circuit &c) {
  const int n = c.num_qubits();
  if (n > 12)
    throw DqcError(ErrorKind::TooLarge,
                   std::to_string(n) + " qubits exceed the dense limit of 12");
  CMat u = identity(1 << n);
  for (const auto &col : c.columns())
    for (const Gate &g : col) apply_gate(u, g.unitary(), g.qubits, n);
  return u;
}

namespace {

int line_of(const std::string &text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Complex parse_complex(const json &j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DqcError(ErrorKind::ParseError, "complex entry must be [re, im]");
}

CMat parse_matrix(const json &j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw DqcError(ErrorKind::ParseError,
                   "matrix must have " + std::to_string(dim) + " rows");
  CMat m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim)
      throw DqcError(ErrorKind::ParseError,
                     "matrix row must have " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

json matrix_json(const CMat &m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> string_list(const json &j, const char *what) {
  if (!j.is_array())
    throw DqcError(ErrorKind::ParseError, std::string(what) + " must be a list");
  std::vector<std::string> out;
  for (const auto &e : j) {
    if (!e.is_string())
      throw DqcError(ErrorKind::ParseError,
                     std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Circuit parse_circuit(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw DqcError(ErrorKind::ParseError,
                   "line " + std::to_string(line_of(text, e.byte)) + ": " +
                       e.what());
  }
  if (!doc.is_object() || !doc.contains("qubits") || !doc.contains("partition"))
    throw DqcError(ErrorKind::ParseError,
                   "top level needs \"qubits\" and \"partition\"");

  std::vector<std::string> names = string_list(doc["qubits"], "qubits");
  std::set<std::string> seen;
  for (const auto &n : names)
    if (!seen.insert(n).second)
      throw DqcError(ErrorKind::InvalidPartition, "duplicate qubit " + n);

  const json &part = doc["partition"];
  if (!part.is_object() || !part.contains("A") || !part.contains("B"))
    throw DqcError(ErrorKind::ParseError, "partition needs \"A\" and \"B\"");
  std::vector<int> side_of(names.size(), -1);
  for (int s = 0; s < 2; ++s) {
    auto members = string_list(part[s == 0 ? "A" : "B"], "partition side");
    if (members.empty())
      throw DqcError(ErrorKind::InvalidPartition,
                     std::string("side ") + (s == 0 ? "A" : "B") + " is empty");
    for (const auto &m : members) {
      auto it = std::find(names.begin(), names.end(), m);
      if (it == names.end()) throw DqcError(ErrorKind::UnknownQubit, m);
      int idx = static_cast<int>(it - names.begin());
      if (side_of[idx] != -1)
        throw DqcError(ErrorKind::InvalidPartition,
                       m + " is assigned more than once");
      side_of[idx] = s;
    }
  }
  std::vector<Side> sides;
  for (size_t i = 0; i < names.size(); ++i) {
    if (side_of[i] == -1)
      throw DqcError(ErrorKind::InvalidPartition, names[i] + " has no side");
    sides.push_back(side_of[i] == 0 ? Side::A : Side::B);
  }
  Circuit c(names, sides);

  const json gates = doc.value("gates", json::array());
  if (!gates.is_array())
    throw DqcError(ErrorKind::ParseError, "gates must be a list");
  for (size_t gi = 0; gi < gates.size(); ++gi) {
    const json &g = gates[gi];
    const std::string where = "gate " + std::to_string(gi);
    if (!g.is_object() || !g.contains("type") || !g.contains("qubits"))
      throw DqcError(ErrorKind::ParseError, where + " needs type and qubits");
    const std::string type = g["type"].get<std::string>();
    static const std::set<std::string> known = {"h",  "x",  "z",    "rz", "u1",
                                                "cz", "cp", "cnot", "cu", "swap"};
    if (!known.count(type))
      throw DqcError(ErrorKind::UnsupportedGate, where + " has type " + type);
    std::vector<int> qs;
    for (const auto &n : string_list(g["qubits"], "gate qubits")) {
      int idx = c.index_of(n);
      if (idx < 0) throw DqcError(ErrorKind::UnknownQubit, n + " in " + where);
      qs.push_back(idx);
    }
    const bool two = type == "cz" || type == "cnot" || type == "swap" ||
                     type == "cp" || type == "cu";
    const size_t arity = two ? 2 : 1;
    if (qs.size() != arity)
      throw DqcError(ErrorKind::ParseError,
                     where + " (" + type + ") expects " +
                         std::to_string(arity) + " qubits");
    if (two && qs[0] == qs[1])
      throw DqcError(ErrorKind::OverlappingGates,
                     where + " uses " + c.name(qs[0]) + " twice");
    auto theta = [&]() {
      if (!g.contains("theta") || !g["theta"].is_number())
        throw DqcError(ErrorKind::ParseError, where + " needs numeric theta");
      return g["theta"].get<double>();
    };
    auto unitary = [&](const char *key, int dim) {
      if (!g.contains(key))
        throw DqcError(ErrorKind::ParseError,
                       where + " needs \"" + key + "\"");
      CMat m = parse_matrix(g[key], dim);
      if (!is_unitary(m))
        throw DqcError(ErrorKind::NonUnitaryGate,
                       where + " field " + key + " is not unitary");
      return m;
    };

    if (type == "h") c.append(Gate::single(qs[0], gate_h()));
    else if (type == "x") c.append(Gate::single(qs[0], gate_x()));
    else if (type == "z") c.append(Gate::single(qs[0], gate_z()));
    else if (type == "rz") c.append(Gate::single(qs[0], gate_rz(theta())));
    else if (type == "u1") c.append(Gate::single(qs[0], unitary("matrix", 2)));
    else if (type == "cz") c.append(Gate::cz(qs[0], qs[1]));
    else if (type == "cp") c.append(Gate::cp(qs[0], qs[1], theta()));
    else if (type == "cnot") c.append(Gate::cnot(qs[0], qs[1]));
    else if (type == "cu")
      c.append(Gate::cu(qs[0], qs[1], unitary("u0", 2), unitary("u1", 2)));
    else if (type == "swap") {
      c.append(Gate::cnot(qs[0], qs[1]));
      c.append(Gate::cnot(qs[1], qs[0]));
      c.append(Gate::cnot(qs[0], qs[1]));
    } else {
      throw DqcError(ErrorKind::UnsupportedGate, where + " has type " + type);
    }
  }
  return c;
}

Circuit load_circuit(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DqcError(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_circuit(ss.str());
  } catch (const DqcError &e) {
    throw DqcError(e.kind(), path + ": " + e.what());
  }
}

std::string serialize_circuit(const Circuit &c) {
  json doc;
  doc["qubits"] = c.names();
  json a = json::array(), b = json::array();
  for (int q = 0; q < c.num_qubits(); ++q)
    (c.side(q) == Side::A ? a : b).push_back(c.name(q));
  doc["partition"] = {{"A", a}, {"B", b}};
  json gates = json::array();
  for (const auto &col : c.columns()) {
    for (const Gate &g : col) {
      json j;
      json qs = json::array();
      for (int q : g.qubits) qs.push_back(c.name(q));
      switch (g.kind) {
        case GateKind::Single:
          j["type"] = "u1";
          j["qubits"] = qs;
          j["matrix"] = matrix_json(g.matrix);
          break;
        case GateKind::Controlled:
          j["type"] = "cu";
          j["qubits"] = qs;
          j["u0"] = matrix_json(g.u0);
          j["u1"] = matrix_json(g.u1);
          break;
        case GateKind::ControlPhase:
          j["type"] = "cp";
          j["qubits"] = qs;
          j["theta"] = g.theta;
          break;
      }
      gates.push_back(j);
    }
  }
  doc["gates"] = gates;
  return doc.dump(1) + "\n";
}

}  // namespace dqc
