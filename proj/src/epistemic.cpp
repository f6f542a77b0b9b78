#include "qep/epistemic.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qep/sampling.hpp"

namespace qep {

namespace {

std::string format_prob(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool same_qumix(const Qumix& a, const Qumix& b, double eps) {
  return a.n == b.n && frobenius_distance(a.rho, b.rho) < eps;
}

}  // namespace

TimeSequence::TimeSequence(std::vector<std::string> labels_) : labels(std::move(labels_)) {
  if (labels.empty()) throw std::invalid_argument("time sequence must be nonempty");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw std::invalid_argument("time labels must be distinct");
}

int TimeSequence::index_of(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw std::invalid_argument("unknown time label: " + label);
  return static_cast<int>(it - labels.begin());
}

EpistemicOp EpistemicOp::identity() { return EpistemicOp(std::nullopt, "identity"); }

EpistemicOp EpistemicOp::depolarizing(double p) {
  std::ostringstream label;
  label << "depolarizing(" << p << ")";
  return EpistemicOp(depolarizing_channel(p), label.str());
}

EpistemicOp EpistemicOp::from_gate(const Gate& g) {
  return EpistemicOp(KrausChannel(g.n, {g.matrix}), "gate(" + g.label + ")");
}

EpistemicOp EpistemicOp::from_channel(KrausChannel ch, std::string label) {
  return EpistemicOp(std::move(ch), std::move(label));
}

bool EpistemicOp::supports(int n) const { return !channel_ || channel_->n == n; }

Qumix EpistemicOp::apply(const Qumix& rho) const {
  if (!channel_) return rho;
  if (channel_->n != rho.n)
    throw std::invalid_argument("operation " + label_ + " is undefined on " +
                                std::to_string(rho.n) + " qubits");
  return apply_channel(*channel_, rho);
}

bool EpistemicSituation::in_domain(const Qumix& rho, double eps) const {
  if (domain_is_all) return true;
  return domain_index_of(rho, eps).has_value();
}

std::optional<std::size_t> EpistemicSituation::domain_index_of(const Qumix& rho,
                                                               double eps) const {
  const auto it = domain.find(rho.n);
  if (it == domain.end()) return std::nullopt;
  for (std::size_t i = 0; i < it->second.size(); ++i)
    if (same_qumix(it->second[i], rho, eps)) return i;
  return std::nullopt;
}

Qumix EpistemicSituation::fallback_state(int n) const {
  if (fallback == Fallback::HalfIdentity) return Qumix::maximally_mixed(n);
  const TruthProjections proj = truth_projection(perspective, n);
  const double trace = proj.falsity.trace().real();
  return Qumix(n, proj.falsity / trace);
}

Qumix understand(const EpistemicSituation& sit, const Qumix& rho, double eps) {
  if (sit.in_domain(rho, eps)) return sit.understanding.apply(rho);
  return sit.fallback_state(rho.n);
}

Qumix know(const EpistemicSituation& sit, const Qumix& rho, double eps) {
  if (sit.in_domain(rho, eps)) return sit.knowledge.apply(rho);
  return sit.fallback_state(rho.n);
}

namespace {

// Runs one map on one state and reports any failure of the qumix-to-qumix
// condition (3.1 for U, 4.1 for K).
void check_maps_to_qumix(const EpistemicOp& op, const Qumix& rho,
                         const std::string& condition,
                         std::optional<std::size_t> domain_index, double eps,
                         std::vector<Violation>& out) {
  if (!op.supports(rho.n)) {
    out.push_back({condition, rho.n, domain_index,
                   "operation " + op.label() + " is undefined on " +
                       std::to_string(rho.n) + " qubits"});
    return;
  }
  try {
    const Qumix image = op.apply(rho);
    if (!qumix_invariants_ok(image.rho, eps))
      out.push_back({condition, rho.n, domain_index,
                     "image of " + op.label() + " is not a qumix"});
  } catch (const std::exception& e) {
    out.push_back({condition, rho.n, domain_index, e.what()});
  }
}

}  // namespace

SituationReport verify_situation(const EpistemicSituation& sit, int sample_count,
                                 std::uint64_t seed, double eps) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  SituationReport report;
  Rng rng(seed);

  std::vector<int> arities;
  for (const auto& [n, members] : sit.domain)
    if (!members.empty()) arities.push_back(n);
  if (arities.empty()) arities.push_back(1);

  for (int n : arities) {
    const auto it = sit.domain.find(n);
    const std::vector<Qumix> no_members;
    const std::vector<Qumix>& members = (it != sit.domain.end()) ? it->second : no_members;

    // 3.1 / 4.1 on domain members.
    for (std::size_t i = 0; i < members.size(); ++i) {
      check_maps_to_qumix(sit.understanding, members[i], "3.1", i, eps, report.violations);
      check_maps_to_qumix(sit.knowledge, members[i], "4.1", i, eps, report.violations);
    }

    // 3.1 / 4.1 on random qumixes, routed through the situation so the
    // fallback path is exercised too.
    for (int s = 0; s < sample_count; ++s) {
      const Qumix sample = random_qumix(rng, n);
      try {
        const Qumix u = understand(sit, sample, eps);
        if (!qumix_invariants_ok(u.rho, eps))
          report.violations.push_back({"3.1", n, std::nullopt, "understood sample is not a qumix"});
      } catch (const std::exception& e) {
        report.violations.push_back({"3.1", n, std::nullopt, e.what()});
      }
      try {
        const Qumix k = know(sit, sample, eps);
        if (!qumix_invariants_ok(k.rho, eps))
          report.violations.push_back({"4.1", n, std::nullopt, "known sample is not a qumix"});
      } catch (const std::exception& e) {
        report.violations.push_back({"4.1", n, std::nullopt, e.what()});
      }
    }

    // 3.2 / 4.2: everything outside the domain collapses to the fallback.
    if (!sit.domain_is_all) {
      const Qumix expected = sit.fallback_state(n);
      int checked = 0;
      while (checked < sample_count) {
        const Qumix sample = random_qumix(rng, n);
        if (sit.in_domain(sample, eps)) continue;  // vanishingly rare
        ++checked;
        const Qumix u = understand(sit, sample, eps);
        if (!same_qumix(u, expected, eps))
          report.violations.push_back(
              {"3.2", n, std::nullopt, "understood image of an outside state is not the fallback"});
        const Qumix k = know(sit, sample, eps);
        if (!same_qumix(k, expected, eps))
          report.violations.push_back(
              {"4.2", n, std::nullopt, "known image of an outside state is not the fallback"});
      }
    }

    // 4.3: K rho is below rho in the probability preorder.
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!sit.knowledge.supports(n)) break;  // already reported under 4.1
      const double before = probability(sit.perspective, members[i]);
      const double after = probability(sit.perspective, sit.knowledge.apply(members[i]));
      if (after > before + eps)
        report.violations.push_back({"4.3", n, i,
                                     "p_T(K rho) = " + format_prob(after) + " > p_T(rho) = " +
                                         format_prob(before)});
    }

    // 4.4: knowing implies understanding.
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!sit.knowledge.supports(n) || !sit.understanding.supports(n)) break;
      const double known = probability(sit.perspective, sit.knowledge.apply(members[i]));
      const double understood =
          probability(sit.perspective, sit.understanding.apply(members[i]));
      if (known > understood + eps)
        report.violations.push_back({"4.4", n, i,
                                     "p_T(K rho) = " + format_prob(known) +
                                         " > p_T(U rho) = " + format_prob(understood)});
    }
  }

  report.passed = report.violations.empty();
  return report;
}

namespace {

std::vector<Qumix> active_filter(const EpistemicSituation& sit, const EpistemicOp& op,
                                 double eps) {
  if (sit.domain_is_all)
    throw std::domain_error("active memory/knowledge requires a finite epistemic domain");
  std::vector<Qumix> out;
  for (const auto& [n, members] : sit.domain) {
    (void)n;
    for (const Qumix& rho : members) {
      const Qumix image = op.apply(rho);
      if (probability(sit.perspective, image) >= 1.0 - eps) out.push_back(rho);
    }
  }
  return out;
}

}  // namespace

std::vector<Qumix> act_mem(const EpistemicSituation& sit, double eps) {
  return active_filter(sit, sit.understanding, eps);
}

std::vector<Qumix> act_knowl(const EpistemicSituation& sit, double eps) {
  return active_filter(sit, sit.knowledge, eps);
}

EpistemicStructure::EpistemicStructure(
    TimeSequence times_, std::vector<std::string> agents_,
    std::map<std::pair<std::string, std::string>, EpistemicSituation> sits)
    : times(std::move(times_)), agents(std::move(agents_)), situations(std::move(sits)) {
  if (agents.empty()) throw std::invalid_argument("structure needs at least one agent");
  std::set<std::string> agent_set(agents.begin(), agents.end());
  if (agent_set.size() != agents.size())
    throw std::invalid_argument("agent names must be distinct");
  for (const auto& agent : agents)
    for (const auto& time : times.labels)
      if (!situations.count({agent, time}))
        throw std::invalid_argument("missing situation for agent '" + agent + "' at time '" +
                                    time + "'");
  for (const auto& [key, sit] : situations) {
    (void)sit;
    if (!agent_set.count(key.first))
      throw std::invalid_argument("situation references undeclared agent '" + key.first + "'");
    times.index_of(key.second);
  }
}

const EpistemicSituation& EpistemicStructure::situation(const std::string& agent,
                                                        const std::string& time) const {
  const auto it = situations.find({agent, time});
  if (it == situations.end())
    throw std::invalid_argument("no situation for agent '" + agent + "' at time '" + time + "'");
  return it->second;
}

StructureClassification classify_structure(const EpistemicStructure& s, double eps,
                                           int samples, std::uint64_t seed) {
  StructureClassification out;

  // Harmonic: one shared truth-perspective across agents and times.
  out.harmonic = true;
  const TruthPerspective& first = s.situations.begin()->second.perspective;
  for (const auto& [key, sit] : s.situations) {
    (void)key;
    if (!same_perspective(first, sit.perspective, eps)) {
      out.harmonic = false;
      break;
    }
  }

  out.sound = true;
  out.perfect = true;
  out.maximal = true;
  Rng rng(seed);
  for (const auto& [key, sit] : s.situations) {
    (void)key;

    // Sound: both single-qubit truth-value projections belong to the domain
    // and are fixed points of K.
    const TruthProjections proj = truth_projection(sit.perspective, 1);
    const Qumix p1(1, proj.truth, eps);
    const Qumix p0(1, proj.falsity, eps);
    if (!sit.in_domain(p1, eps) || !sit.in_domain(p0, eps) || !sit.knowledge.supports(1) ||
        !same_qumix(know(sit, p1, eps), p1, eps) || !same_qumix(know(sit, p0, eps), p0, eps))
      out.sound = false;

    // Perfect: K fixes every domain member; the "all" marker is probed by
    // sampling since it cannot be enumerated.
    for (const auto& [n, members] : sit.domain) {
      (void)n;
      for (const Qumix& rho : members)
        if (!sit.knowledge.supports(rho.n) ||
            !same_qumix(sit.knowledge.apply(rho), rho, eps))
          out.perfect = false;
    }
    if (sit.domain_is_all) {
      for (int i = 0; i < samples; ++i) {
        const Qumix rho = random_qumix(rng, 1);
        if (!sit.knowledge.supports(1) || !same_qumix(sit.knowledge.apply(rho), rho, eps))
          out.perfect = false;
      }
    } else {
      out.maximal = false;
    }
  }
  out.maximal = out.maximal && out.perfect;
  return out;
}

std::vector<InteractionCheck> verify_interactions(const EpistemicStructure& s,
                                                  const InteractionMap& ints, double eps) {
  std::vector<InteractionCheck> checks;
  for (const auto& [time, pairs] : ints.pairs_by_time) {
    const int start = s.times.index_of(time);
    for (const auto& [agent_a, agent_b] : pairs) {
      InteractionCheck check;
      check.time = time;
      check.agent_a = agent_a;
      check.agent_b = agent_b;

      const std::vector<Qumix> mem_a = act_mem(s.situation(agent_a, time), eps);
      const std::vector<Qumix> mem_b = act_mem(s.situation(agent_b, time), eps);

      for (int later = start; later < static_cast<int>(s.times.labels.size()) && !check.satisfied;
           ++later) {
        const std::string& later_time = s.times.labels[later];
        const std::vector<Qumix> later_b = act_mem(s.situation(agent_b, later_time), eps);
        for (std::size_t i = 0; i < mem_a.size() && !check.satisfied; ++i)
          for (const Qumix& sigma : later_b)
            if (same_qumix(mem_a[i], sigma, eps)) {
              check.satisfied = true;
              check.witness_time = later_time;
              check.witness_agent_first = agent_a;
              check.witness_index = i;
              check.witness_state = mem_a[i];
              break;
            }
        if (check.satisfied) break;
        const std::vector<Qumix> later_a = act_mem(s.situation(agent_a, later_time), eps);
        for (std::size_t i = 0; i < mem_b.size() && !check.satisfied; ++i)
          for (const Qumix& sigma : later_a)
            if (same_qumix(mem_b[i], sigma, eps)) {
              check.satisfied = true;
              check.witness_time = later_time;
              check.witness_agent_first = agent_b;
              check.witness_index = i;
              check.witness_state = mem_b[i];
              break;
            }
      }
      checks.push_back(std::move(check));
    }
  }
  return checks;
}

bool DepolarizingKnowledge::admissible(const Qumix& rho, double eps) const {
  return probability(perspective, rho) >= 0.5 - eps;
}

DepolarizingKnowledge depolarizing_knowledge_op(double p, const TruthPerspective& t) {
  return DepolarizingKnowledge{p, t, EpistemicOp::depolarizing(p)};
}

}  // namespace qep
