#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dqc/bench.hpp"
#include "dqc/plan_io.hpp"
#include "json.hpp"

using namespace dqc;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DqcError(ErrorKind::ParseError, "cannot write " + path);
  out << text;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DqcError(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AuxCount parse_limits(const std::string &text) {
  AuxCount lim{0, 0};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw DqcError(ErrorKind::ParseError, "aux limit must look like A=1,B=1");
    std::string side = item.substr(0, eq);
    int v = std::stoi(item.substr(eq + 1));
    if (side == "A") lim.a = v;
    else if (side == "B") lim.b = v;
    else throw DqcError(ErrorKind::ParseError, "unknown side " + side);
  }
  if (lim.a < 1 || lim.b < 1)
    throw DqcError(ErrorKind::InfeasibleLimits, "both aux limits must be at least 1");
  return lim;
}

MvcMode parse_mvc(const std::string &s) {
  if (s == "exact") return MvcMode::Exact;
  if (s == "greedy") return MvcMode::Greedy;
  return MvcMode::Auto;
}

void write_dots(const std::string &dir, const Pipeline &p) {
  std::filesystem::create_directories(dir);
  auto path = [&](const char *f) { return (std::filesystem::path(dir) / f).string(); };
  write_file(path("packing.dot"), export_dot(p.graph.g, "packing"));
  auto intrinsic =
      build_intrinsic_conflicts(p.packets.packets, p.conv, ConflictLevel::Kernel);
  write_file(path("conflict_intrinsic.dot"), export_dot(intrinsic.g, "conflict_intrinsic"));
  for (Side s : {Side::A, Side::B}) {
    auto ex = build_extrinsic_conflicts(p.plan.roots, p.conv.source, s);
    std::string name = std::string("conflict_extrinsic_") + side_name(s);
    write_file(path((name + ".dot").c_str()), export_dot(ex.g, name));
  }
}

struct PackArgs {
  std::string input, limits, converted, packets, dot_dir, plan_path, report_path;
  std::string mvc = "auto";
  bool verify = false;
  uint64_t seed = 1;
  int threads = 0;
};

int cmd_pack(const PackArgs &a) {
  Circuit c = load_circuit(a.input);
  SolverOptions opt;
  opt.mvc = parse_mvc(a.mvc);
  opt.seed = a.seed;
  opt.threads = a.threads;
  if (opt.threads <= 0) {
    const char *env = std::getenv("DQC_PACKER_THREADS");
    opt.threads = env ? std::max(1, std::atoi(env)) : 1;
  }
  std::optional<AuxCount> limits;
  if (!a.limits.empty()) limits = parse_limits(a.limits);

  Pipeline full = run_pipeline(c, opt, limits);
  SolverOptions nb = opt;
  nb.hopping = false;
  nb.extended = false;
  Pipeline neigh = run_pipeline(c, nb, limits);

  if (!a.converted.empty()) write_file(a.converted, serialize_circuit(full.conv.as_circuit()));
  if (!a.packets.empty()) write_file(a.packets, packets_to_json(full.packets, c));
  if (!a.dot_dir.empty()) write_dots(a.dot_dir, full);

  std::optional<VerificationReport> rep;
  if (a.verify) rep = verify_plan(full.conv, full.plan);
  if (!a.plan_path.empty())
    write_file(a.plan_path, plan_to_json(full.plan, c, rep ? &*rep : nullptr));

  json report = {
      {"input", std::filesystem::path(a.input).filename().string()},
      {"baseline", full.plan.baseline},
      {"neighbouring_only", neigh.plan.ebits},
      {"ebits", full.plan.ebits},
      {"triple", {full.plan.baseline, neigh.plan.ebits, full.plan.ebits}},
      {"aux", {{"A", full.plan.aux.a}, {"B", full.plan.aux.b}}},
      {"cover_size", full.plan.cover_size},
      {"removed", full.plan.removed_embeddings.size()},
      {"extended", full.plan.extended.size()},
  };
  if (limits) report["aux_limit"] = {{"A", limits->a}, {"B", limits->b}};
  if (rep) report["verification"] = json::parse(report_to_json(*rep));
  const std::string text = report.dump(1) + "\n";
  std::cout << text;
  if (!a.report_path.empty()) write_file(a.report_path, text);
  return rep && !rep->pass() ? kExitVerify : kExitOk;
}

int cmd_verify_plan(const std::string &circuit_path, const std::string &plan_path) {
  Circuit c = load_circuit(circuit_path);
  PackingPlan plan = plan_from_json(read_file(plan_path), c);
  VerificationReport rep = verify_plan(c, plan);
  std::cout << report_to_json(rep) << "\n";
  if (!rep.pass()) std::cerr << "verification failed: " << rep.detail << "\n";
  return rep.pass() ? kExitOk : kExitVerify;
}

int cmd_graphs(const std::string &input, const std::string &dir, uint64_t seed) {
  Circuit c = load_circuit(input);
  SolverOptions opt;
  opt.seed = seed;
  write_dots(dir, run_pipeline(c, opt));
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"dqc-packer: entanglement-efficient distribution of two-qubit circuits"};
  app.require_subcommand(1);

  PackArgs pack;
  auto *p = app.add_subcommand("pack", "compute a distribution plan");
  p->add_option("circuit", pack.input, "circuit JSON file")->required();
  p->add_flag("--verify", pack.verify, "check the plan against the circuit unitary");
  p->add_option("--aux-limit", pack.limits, "per-side aux limits, e.g. A=1,B=1");
  p->add_option("--dump-converted", pack.converted, "write the control-phase form");
  p->add_option("--dump-packets", pack.packets, "write identified packets as JSON");
  p->add_option("--seed", pack.seed, "seed for randomized cover restarts");
  p->add_option("--threads", pack.threads, "worker threads (env DQC_PACKER_THREADS)");
  p->add_option("--emit-dot", pack.dot_dir, "directory for DOT graph exports");
  p->add_option("--plan", pack.plan_path, "write the plan JSON");
  p->add_option("--mvc", pack.mvc, "vertex cover mode")
      ->check(CLI::IsMember({"auto", "exact", "greedy"}));
  p->add_option("--report", pack.report_path, "also write the report here");

  std::string kind, out_path;
  int qubits = 4, depth = 8;
  double p2 = 0.5;
  uint64_t gseed = 7;
  auto *g = app.add_subcommand("gen", "generate a benchmark circuit");
  g->add_option("family", kind, "ucc or random")
      ->required()
      ->check(CLI::IsMember({"ucc", "random"}));
  g->add_option("--qubits", qubits, "number of qubits");
  g->add_option("--depth", depth, "columns (random)");
  g->add_option("--p-two", p2, "two-qubit gate probability (random)");
  g->add_option("--seed", gseed, "generator seed");
  g->add_option("-o,--out", out_path, "output file")->required();

  std::string graphs_in, graphs_dir;
  uint64_t graphs_seed = 1;
  auto *gr = app.add_subcommand("graphs", "export packing and conflict graphs");
  gr->add_option("circuit", graphs_in)->required();
  gr->add_option("--out", graphs_dir)->required();
  gr->add_option("--seed", graphs_seed);

  std::string vp_circuit, vp_plan;
  auto *vp = app.add_subcommand("verify-plan", "verify a stored plan");
  vp->add_option("circuit", vp_circuit)->required();
  vp->add_option("plan", vp_plan)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*p) return cmd_pack(pack);
    if (*g) {
      Circuit c;
      if (kind == "ucc") {
        c = gen_ucc_like(UccSpec::all(qubits, gseed));
      } else {
        RandomSpec spec;
        spec.n_qubits = qubits;
        spec.depth = depth;
        spec.p_two_qubit = p2;
        spec.seed = gseed;
        c = gen_random(spec);
      }
      write_file(out_path, serialize_circuit(c));
      return kExitOk;
    }
    if (*gr) return cmd_graphs(graphs_in, graphs_dir, graphs_seed);
    if (*vp) return cmd_verify_plan(vp_circuit, vp_plan);
  } catch (const DqcError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
