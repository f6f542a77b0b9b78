#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qep/channels.hpp"
#include "qep/gates.hpp"
#include "qep/qcore.hpp"
#include "qep/truthspace.hpp"

// Epistemic situations and structures: the truth-perspective, epistemic
// domain, understanding and knowledge operations of an agent at a time, the
// axioms tying them together, and the derived notions (active memory, actual
// knowledge, capacities, interacting agents).

namespace qep {

struct TimeSequence {
  std::vector<std::string> labels;

  explicit TimeSequence(std::vector<std::string> labels);

  // Position of a label; throws for unknown labels.
  int index_of(const std::string& label) const;
};

// An understanding or knowledge operation: a per-arity family of qumix maps.
// Restricted to specifiable forms (identity, the depolarizing family, a
// unitary gate, or an explicit Kraus list); the axioms are verified rather
// than assumed.
class EpistemicOp {
 public:
  static EpistemicOp identity();
  static EpistemicOp depolarizing(double p);
  static EpistemicOp from_gate(const Gate& g);
  static EpistemicOp from_channel(KrausChannel ch, std::string label = "kraus");

  bool supports(int n) const;
  Qumix apply(const Qumix& rho) const;
  const std::string& label() const { return label_; }

 private:
  EpistemicOp(std::optional<KrausChannel> ch, std::string label)
      : channel_(std::move(ch)), label_(std::move(label)) {}

  std::optional<KrausChannel> channel_;  // empty means identity on every arity
  std::string label_;
};

enum class Fallback { HalfIdentity, TFalsity };

// EpSit = (T, EpD, U, K). The domain is an explicit finite list of qumixes
// per arity; the "all" marker stands for the full qumix space and is handled
// by sampling where enumeration is needed.
struct EpistemicSituation {
  TruthPerspective perspective;
  std::map<int, std::vector<Qumix>> domain;
  bool domain_is_all = false;
  EpistemicOp understanding;
  EpistemicOp knowledge;
  Fallback fallback = Fallback::HalfIdentity;

  // Membership is Frobenius-norm distance < eps to a listed element.
  bool in_domain(const Qumix& rho, double eps = kDefaultEpsilon) const;
  std::optional<std::size_t> domain_index_of(const Qumix& rho,
                                             double eps = kDefaultEpsilon) const;

  // The fixed element everything outside the domain collapses to: the
  // maximally mixed state, or the T-falsity projection normalized to unit
  // trace so it is a qumix for every arity.
  Qumix fallback_state(int n) const;
};

// U rho for domain members, the fallback otherwise.
Qumix understand(const EpistemicSituation& sit, const Qumix& rho,
                 double eps = kDefaultEpsilon);
// K rho for domain members, the fallback otherwise.
Qumix know(const EpistemicSituation& sit, const Qumix& rho,
           double eps = kDefaultEpsilon);

struct Violation {
  std::string condition;  // "3.1", "3.2", "4.1", "4.2", "4.3", "4.4"
  int n = 0;
  // Present when the witness is a domain member.
  std::optional<std::size_t> domain_index;
  std::string detail;
};

struct SituationReport {
  bool passed = true;
  std::vector<Violation> violations;
};

// Checks 3.1/4.1 on domain members plus sample_count random qumixes, 3.2/4.2
// on random qumixes outside the domain, and 4.3/4.4 on every domain member.
// Deterministic for a fixed seed; failures are reported, never thrown.
SituationReport verify_situation(const EpistemicSituation& sit, int sample_count,
                                 std::uint64_t seed, double eps = kDefaultEpsilon);

// ActMem = members whose understood image has T-probability 1;
// ActKnowl = members whose known image has T-probability 1.
std::vector<Qumix> act_mem(const EpistemicSituation& sit, double eps = kDefaultEpsilon);
std::vector<Qumix> act_knowl(const EpistemicSituation& sit, double eps = kDefaultEpsilon);

struct EpistemicStructure {
  TimeSequence times;
  std::vector<std::string> agents;
  std::map<std::pair<std::string, std::string>, EpistemicSituation> situations;

  // Validates totality: a situation for every (agent, time) pair.
  EpistemicStructure(TimeSequence times, std::vector<std::string> agents,
                     std::map<std::pair<std::string, std::string>, EpistemicSituation> sits);

  const EpistemicSituation& situation(const std::string& agent,
                                      const std::string& time) const;
};

// Int: the agent pairs interacting at each time.
struct InteractionMap {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> pairs_by_time;
};

struct StructureClassification {
  bool harmonic = false;  // one shared truth-perspective everywhere
  bool sound = false;     // both truth-value projections in EpD and fixed by K
  bool perfect = false;   // K fixes every domain member
  bool maximal = false;   // perfect with the "all" domain marker everywhere;
                          // not decidable by enumeration, sampled approximation
};

StructureClassification classify_structure(const EpistemicStructure& s,
                                           double eps = kDefaultEpsilon,
                                           int samples = 32, std::uint64_t seed = 1);

struct InteractionCheck {
  std::string time;
  std::string agent_a;
  std::string agent_b;
  bool satisfied = false;
  // For satisfied pairs: the shared state and the later time where the second
  // agent actively remembers it.
  std::string witness_time;
  std::string witness_agent_first;  // the agent remembering at the earlier time
  std::size_t witness_index = 0;    // index into the first agent's ActMem
  std::optional<Qumix> witness_state;
};

// For each pair in Int(t), searches times t' >= t for a state actively
// remembered by one agent at t and by the other at t'.
std::vector<InteractionCheck> verify_interactions(const EpistemicStructure& s,
                                                  const InteractionMap& ints,
                                                  double eps = kDefaultEpsilon);

// The depolarizing knowledge operation: K applies the canonical depolarizing
// channel on domain members, and the domain is constrained to states with
// p_T >= 1/2, which makes condition 4.3 hold.
struct DepolarizingKnowledge {
  double p;
  TruthPerspective perspective;
  EpistemicOp op;

  bool admissible(const Qumix& rho, double eps = kDefaultEpsilon) const;
};

DepolarizingKnowledge depolarizing_knowledge_op(double p, const TruthPerspective& t);

}  // namespace qep
