#pragma once

#include <string>
#include <vector>

#include "dqc/conversion.hpp"

namespace dqc {

enum class KernelKind { Distribute, Neighbour, Hop, Extended };

const char *kernel_kind_name(KernelKind k);

struct KernelRef {
  KernelKind kind = KernelKind::Distribute;
  int q = -1;
  int t1 = -1, t2 = -1;    // Distribute: t1 == t2
  std::vector<int> units;  // Hop: global theta=pi depths strictly inside
  int parity = 0;          // X_e dressing applied when the embedding closes
  int gap = -1;            // Extended: depth of the localized node

  bool is_embedding() const { return kind != KernelKind::Distribute; }
  bool operator==(const KernelRef &o) const {
    return kind == o.kind && q == o.q && t1 == o.t1 && t2 == o.t2 &&
           units == o.units && parity == o.parity && gap == o.gap;
  }
};

struct Packet {
  int q = -1;
  std::vector<int> T;               // sorted depths of global nodes on q
  std::vector<KernelRef> kernels;   // D, B, D, B, ..., D
  bool extended_host = false;       // single-node root lending its aux to an
                                    // extended embedding on the same qubit

  bool trivial() const { return T.size() == 1; }
  int min_t() const { return T.front(); }
  int max_t() const { return T.back(); }
  bool contains(int t) const;
  std::vector<KernelRef> embeddings() const;
};

// Kernel list for T joined by the given embeddings (one per consecutive pair).
std::vector<KernelRef> interleave_kernels(int q, const std::vector<int> &T,
                                          const std::vector<KernelRef> &embeds);

struct IdentifyOptions {
  bool neighbouring = true;
  bool hopping = true;
  int window_threshold = 256;  // unlimited candidate spans up to this many nodes
  int window = 32;
};

std::vector<Packet> identify_trivial_packets(const ConvertedCircuit &conv);
std::vector<KernelRef> neighbouring(int q, const ConvertedCircuit &conv);
std::vector<KernelRef> hopping(int q, const ConvertedCircuit &conv,
                               const IdentifyOptions &opt = {});

// Whether the words strictly between line nodes i and j on q admit a hop;
// on success fills the embedding parity. Exposed for tests.
bool hop_phase_condition(const QubitLine &line, int i, int j, int *parity);

struct PacketSet {
  std::vector<Packet> packets;            // ordered by qubit, then min depth
  std::vector<KernelRef> neighbour_rules;
  std::vector<KernelRef> hop_rules;

  // Index of the packet holding (q, t), or -1.
  int packet_of(int q, int t) const;
};

PacketSet build_packets(const ConvertedCircuit &conv,
                        const IdentifyOptions &opt = {});

}  // namespace dqc
