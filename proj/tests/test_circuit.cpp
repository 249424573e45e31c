#include <gtest/gtest.h>

#include "dqc/bench.hpp"
#include "dqc/circuit.hpp"
#include "fixtures.hpp"

using namespace dqc;

namespace {

ErrorKind kind_of(const std::string &text) {
  try {
    parse_circuit(text);
  } catch (const DqcError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorKind::ParseError;
}

const char *kHeader = R"("qubits":["a","b"],"partition":{"A":["a"],"B":["b"]})";

std::string with_gates(const std::string &gates) {
  return std::string("{") + kHeader + R"(,"gates":[)" + gates + "]}";
}

}  // namespace

TEST(Parse, ShorthandGatesAndColumns) {
  Circuit c = parse_circuit(with_gates(
      R"({"type":"h","qubits":["a"]},{"type":"cnot","qubits":["a","b"]},)"
      R"({"type":"rz","qubits":["b"],"theta":0.5},{"type":"cp","qubits":["b","a"],"theta":1.0})"));
  EXPECT_EQ(c.num_qubits(), 2);
  EXPECT_EQ(c.side(0), Side::A);
  EXPECT_EQ(c.side(1), Side::B);
  ASSERT_EQ(c.depth(), 4);
  EXPECT_EQ(c.column(1)[0].kind, GateKind::Controlled);
  EXPECT_EQ(c.column(3)[0].kind, GateKind::ControlPhase);
  EXPECT_EQ(c.count_global(), 2);
}

TEST(Parse, SwapExpandsToThreeCnots) {
  Circuit c = parse_circuit(with_gates(R"({"type":"swap","qubits":["a","b"]})"));
  EXPECT_EQ(c.count_two_qubit(), 3);
  EXPECT_LT(max_abs(full_unitary(c) - gate_swap()), 1e-12);
}

TEST(Parse, ErrorKinds) {
  EXPECT_EQ(kind_of("{\"qubits\": [\n\"a\",\n}"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(with_gates(R"({"type":"ccx","qubits":["a","b"]})")),
            ErrorKind::UnsupportedGate);
  EXPECT_EQ(kind_of(with_gates(R"({"type":"h","qubits":["zz"]})")),
            ErrorKind::UnknownQubit);
  EXPECT_EQ(kind_of(with_gates(R"({"type":"cz","qubits":["a"]})")), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(with_gates(R"({"type":"rz","qubits":["a"]})")), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(with_gates(
                R"({"type":"u1","qubits":["a"],"matrix":[[[1,0],[1,0]],[[0,0],[1,0]]]})")),
            ErrorKind::NonUnitaryGate);
  EXPECT_EQ(kind_of(R"({"qubits":["a","b"],"partition":{"A":["a"],"B":["a","b"]}})"),
            ErrorKind::InvalidPartition);
  EXPECT_EQ(kind_of(R"({"qubits":["a","b"],"partition":{"A":["a"],"B":[]}})"),
            ErrorKind::InvalidPartition);
}

TEST(Parse, ErrorCarriesLine) {
  try {
    parse_circuit("{\n\"qubits\": [\"a\"],\n\"partition\": oops\n}");
    FAIL();
  } catch (const DqcError &e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Circuit, PlacementRules) {
  Circuit c = fixtures::make({"a", "b", "c"}, "ABB");
  EXPECT_EQ(c.append(Gate::cz(0, 1)), 0);
  EXPECT_EQ(c.append(Gate::single(2, gate_h())), 0);
  EXPECT_EQ(c.append(Gate::cz(1, 2)), 1);
  EXPECT_THROW(c.place(1, Gate::single(2, gate_x())), DqcError);
  c.place(1, Gate::single(0, gate_x()));
  EXPECT_EQ(c.column(1).size(), 2u);
  EXPECT_TRUE(c.is_global(Gate::cz(0, 1)));
  EXPECT_FALSE(c.is_global(Gate::cz(1, 2)));
}

TEST(Circuit, FullUnitaryOfCnot) {
  EXPECT_LT(max_abs(full_unitary(fixtures::cnot()) - gate_cnot()), 1e-15);
}

TEST(Circuit, TooLargeForDense) {
  std::vector<std::string> names;
  std::string sides;
  for (int q = 0; q < 13; ++q) {
    names.push_back("q" + std::to_string(q));
    sides += q < 6 ? 'A' : 'B';
  }
  Circuit c = fixtures::make(names, sides);
  try {
    full_unitary(c);
    FAIL();
  } catch (const DqcError &e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

// Property: serialisation round-trips the unitary and settles after one pass.
TEST(Circuit, SerializeRoundTrip) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    RandomSpec s;
    s.n_qubits = 2 + seed % 4;
    s.depth = 1 + seed % 9;
    s.seed = seed;
    Circuit c = gen_random(s);
    std::string text = serialize_circuit(c);
    Circuit back = parse_circuit(text);
    EXPECT_TRUE(equal_up_to_global_phase(full_unitary(back), full_unitary(c)).equal);
    std::string again = serialize_circuit(back);
    EXPECT_EQ(serialize_circuit(parse_circuit(again)), again);
  }
}
