#pragma once

#include <string>
#include <vector>

#include "dqc/circuit.hpp"

// Hand-built circuits shared by unit tests and the acceptance run.
namespace fixtures {

using dqc::Circuit;
using dqc::Gate;
using dqc::Side;

inline Circuit make(const std::vector<std::string> &names, const std::string &sides) {
  std::vector<Side> s;
  for (char ch : sides) s.push_back(ch == 'A' ? Side::A : Side::B);
  return Circuit(names, s);
}

inline Circuit cnot() {
  Circuit c = make({"a", "b"}, "AB");
  c.append(Gate::cnot(0, 1));
  return c;
}

inline Circuit swap() {
  Circuit c = make({"a", "b"}, "AB");
  c.append(Gate::cnot(0, 1));
  c.append(Gate::cnot(1, 0));
  c.append(Gate::cnot(0, 1));
  return c;
}

// CZ(a,b1) . middle on a . CZ(a,b2)
inline Circuit cz_sandwich(const dqc::CMat &middle) {
  Circuit c = make({"a", "b1", "b2"}, "ABB");
  c.append(Gate::cz(0, 1));
  c.append(Gate::single(0, middle));
  c.append(Gate::cz(0, 2));
  return c;
}

// Root q with nodes t0,t4,t5,t6,t8 joined by a three-unit hop, two
// neighbouring links and a one-unit hop. Units all talk to u.
inline Circuit five_node_packet() {
  Circuit c = make({"q", "b1", "u", "b3"}, "ABBB");
  const int q = 0, b1 = 1, u = 2, b3 = 3;
  c.append(Gate::cz(q, b1));                // t0
  c.append(Gate::single(q, dqc::gate_h()));
  c.append(Gate::cz(q, u));                 // units
  c.append(Gate::cz(q, u));
  c.append(Gate::cz(q, u));
  c.append(Gate::single(q, dqc::gate_h()));
  c.append(Gate::cz(q, b1));                // t4
  c.append(Gate::single(q, dqc::gate_rz(0.7)));
  c.append(Gate::cz(q, b3));                // t5
  c.append(Gate::single(q, dqc::gate_x()));
  c.append(Gate::cz(q, b1));                // t6
  c.append(Gate::single(q, dqc::gate_h()));
  c.append(Gate::cz(q, u));                 // unit
  c.append(Gate::single(q, dqc::gate_h()));
  c.append(Gate::cz(q, b3));                // t8
  return c;
}

// Two hops on opposite sides sharing the unit CZ(q, p).
inline Circuit crossed_hops() {
  Circuit c = make({"q", "a1", "p", "b1"}, "AABB");
  const int q = 0, a1 = 1, p = 2, b1 = 3;
  c.append(Gate::cz(q, b1));
  c.append(Gate::cz(p, a1));
  c.append(Gate::single(q, dqc::gate_h()));
  c.append(Gate::single(p, dqc::gate_h()));
  c.append(Gate::single(a1, dqc::gate_h()));
  c.append(Gate::single(b1, dqc::gate_h()));
  c.append(Gate::cz(q, p));
  c.append(Gate::single(q, dqc::gate_h()));
  c.append(Gate::single(p, dqc::gate_h()));
  c.append(Gate::cz(q, b1));
  c.append(Gate::cz(p, a1));
  return c;
}

// H-type gap holding a non-pi control phase between two packets on q.
inline Circuit extended_gap(double theta = dqc::kPi / 2) {
  Circuit c = make({"q", "b1", "b"}, "ABB");
  const int q = 0, b1 = 1, b = 2;
  c.append(Gate::cz(q, b1));
  c.append(Gate::single(q, dqc::gate_h()));
  c.append(Gate::single(b1, dqc::gate_h()));
  c.append(Gate::cp(q, b, theta));
  c.append(Gate::single(q, dqc::gate_h()));
  c.append(Gate::cz(q, b1));
  return c;
}

}  // namespace fixtures
