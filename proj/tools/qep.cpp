// Command-line front end: load and verify epistemic structures, check
// channels, compute epistemic distances and run the teleportation demo,
// emitting machine-readable JSON reports.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qep/channels.hpp"
#include "qep/docio.hpp"
#include "qep/epistemic.hpp"
#include "qep/gates.hpp"
#include "qep/protocol.hpp"
#include "qep/qcore.hpp"
#include "qep/sampling.hpp"
#include "qep/truthspace.hpp"

namespace {

using qep::docio::Json;

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

struct CommonOptions {
  std::uint64_t seed = 0;
  int samples = 200;
  double epsilon = qep::kDefaultEpsilon;
  std::string output;
};

void add_common_flags(CLI::App* cmd, CommonOptions* opts, bool with_samples = true) {
  cmd->add_option("--seed", opts->seed, "Random seed (64-bit)")->capture_default_str();
  if (with_samples)
    cmd->add_option("--samples", opts->samples, "Sample count for randomized checks")
        ->capture_default_str();
  cmd->add_option("--epsilon", opts->epsilon, "Numerical tolerance")->capture_default_str();
  cmd->add_option("--output", opts->output, "Write the report to this path");
}

void emit_report(const Json& report, const CommonOptions& opts, bool to_stdout = true) {
  const std::string text = report.dump(2) + "\n";
  if (!opts.output.empty())
    qep::docio::write_text_atomic(opts.output, text);
  else if (to_stdout)
    std::cout << text;
}

Json report_header(const std::string& command, const CommonOptions& opts) {
  Json report;
  report["format_version"] = qep::docio::kFormatVersion;
  report["command"] = command;
  report["seed"] = opts.seed;
  report["epsilon"] = opts.epsilon;
  return report;
}

Json violations_to_json(const std::vector<qep::Violation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) {
    Json vj;
    vj["condition"] = v.condition;
    vj["n"] = v.n;
    if (v.domain_index)
      vj["domain_index"] = *v.domain_index;
    else
      vj["domain_index"] = nullptr;
    vj["detail"] = v.detail;
    out.push_back(std::move(vj));
  }
  return out;
}

int run_verify(const std::string& path, const CommonOptions& opts) {
  const qep::docio::StructureDocument doc = qep::docio::load_structure(path, opts.epsilon);
  const qep::EpistemicStructure& s = doc.structure;

  Json report = report_header("verify", opts);
  report["samples"] = opts.samples;
  report["input"] = path;
  report["times"] = s.times.labels;
  report["agents"] = s.agents;

  bool all_passed = true;
  Json situations = Json::array();
  for (const auto& agent : s.agents) {
    for (const auto& time : s.times.labels) {
      const qep::SituationReport sr =
          qep::verify_situation(s.situation(agent, time), opts.samples, opts.seed, opts.epsilon);
      all_passed = all_passed && sr.passed;
      Json sj;
      sj["agent"] = agent;
      sj["time"] = time;
      sj["passed"] = sr.passed;
      Json conditions;
      for (const char* c : {"3.1", "3.2", "4.1", "4.2", "4.3", "4.4"}) {
        bool violated = false;
        for (const auto& v : sr.violations) violated = violated || v.condition == c;
        conditions[c] = violated ? "fail" : "pass";
      }
      sj["conditions"] = std::move(conditions);
      sj["violations"] = violations_to_json(sr.violations);
      situations.push_back(std::move(sj));
    }
  }
  report["situations"] = std::move(situations);

  const qep::StructureClassification cls =
      qep::classify_structure(s, opts.epsilon, opts.samples, opts.seed);
  Json cj;
  cj["harmonic"] = cls.harmonic;
  cj["sound"] = cls.sound;
  cj["perfect"] = cls.perfect;
  cj["maximal"] = cls.maximal;
  cj["maximal_note"] =
      "maximality quantifies over all qumixes; verified on domain members and random samples only";
  report["classification"] = std::move(cj);

  if (doc.has_interactions) {
    const auto checks = qep::verify_interactions(s, doc.interactions, opts.epsilon);
    Json ij = Json::array();
    for (const auto& c : checks) {
      Json cjson;
      cjson["time"] = c.time;
      cjson["agents"] = Json::array({c.agent_a, c.agent_b});
      cjson["satisfied"] = c.satisfied;
      if (c.satisfied) {
        cjson["witness_time"] = c.witness_time;
        cjson["witness_first_agent"] = c.witness_agent_first;
        cjson["witness_index"] = c.witness_index;
        cjson["witness_state"] = qep::docio::matrix_to_json(c.witness_state->rho);
      }
      all_passed = all_passed && c.satisfied;
      ij.push_back(std::move(cjson));
    }
    report["interactions"] = std::move(ij);
  }

  report["passed"] = all_passed;
  emit_report(report, opts);
  return all_passed ? kExitPass : kExitVerificationFailure;
}

qep::cdouble parse_amplitude(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return qep::cdouble(std::stod(text), 0.0);
    return qep::cdouble(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  } catch (const std::exception&) {
    throw qep::docio::ParseError("amplitudes must be 're' or 're,im': " + text);
  }
}

Json memory_to_json(const qep::MemoryView& mem) {
  Json out;
  out["internal"] = qep::docio::matrix_to_json(mem.internal.rho);
  out["external_s1"] = qep::docio::matrix_to_json(mem.external_s1.rho);
  out["external_s2"] = qep::docio::matrix_to_json(mem.external_s2.rho);
  out["external_pair"] = qep::docio::matrix_to_json(mem.external_pair.rho);
  return out;
}

Json branch_to_json(const qep::ProtocolTrace& trace, int index) {
  const qep::ProtocolBranch& b = trace.branches[index];
  Json bj;
  bj["outcome"] = std::to_string(b.x) + std::to_string(b.y);
  bj["probability"] = b.probability;
  bj["state_t5"] = qep::docio::vector_to_json(b.state_t5.amps);
  bj["order"] = b.order;
  bj["state_t6"] = qep::docio::vector_to_json(b.state_t6.amps);
  bj["internal_t6"] = qep::docio::matrix_to_json(
      qep::memory_views(trace, qep::ProtocolStep::T6, index).internal.rho);
  return bj;
}

int run_teleport(const std::string& a0_text, const std::string& a1_text, bool sample_mode,
                 const CommonOptions& opts) {
  qep::cdouble a0 = parse_amplitude(a0_text);
  qep::cdouble a1 = parse_amplitude(a1_text);

  const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
  bool renormalized = false;
  if (std::abs(norm - 1.0) > opts.epsilon) {
    if (std::abs(norm - 1.0) >= 1e-6 || norm == 0.0)
      throw qep::docio::ParseError("input qubit is not normalizable within 1e-6");
    std::cerr << "warning: renormalizing input qubit (norm deviation "
              << std::abs(norm - 1.0) << ")\n";
    a0 /= norm;
    a1 /= norm;
    renormalized = true;
  }

  const qep::ProtocolTrace trace = qep::run_protocol(a0, a1, opts.epsilon);

  Json report = report_header("teleport", opts);
  report["input_qubit"] =
      Json::array({qep::docio::complex_to_json(a0), qep::docio::complex_to_json(a1)});
  report["renormalized"] = renormalized;

  Json states;
  states["t1"] = qep::docio::vector_to_json(trace.t1.amps);
  states["t2"] = qep::docio::vector_to_json(trace.t2.amps);
  states["t3"] = qep::docio::vector_to_json(trace.t3.amps);
  states["t4"] = qep::docio::vector_to_json(trace.t4.amps);
  report["states"] = std::move(states);

  Json memory;
  memory["t1"] = memory_to_json(qep::memory_views(trace, qep::ProtocolStep::T1));
  memory["t2"] = memory_to_json(qep::memory_views(trace, qep::ProtocolStep::T2));
  memory["t3"] = memory_to_json(qep::memory_views(trace, qep::ProtocolStep::T3));
  memory["t4"] = memory_to_json(qep::memory_views(trace, qep::ProtocolStep::T4));
  report["memory"] = std::move(memory);

  if (sample_mode) {
    qep::Rng rng(opts.seed);
    const double u = rng.uniform();
    double cumulative = 0.0;
    int picked = 3;
    for (int i = 0; i < 4; ++i) {
      cumulative += trace.branches[i].probability;
      if (u < cumulative) {
        picked = i;
        break;
      }
    }
    report["sampled_branch"] = branch_to_json(trace, picked);
  } else {
    Json branches = Json::array();
    for (int i = 0; i < 4; ++i) branches.push_back(branch_to_json(trace, i));
    report["branches"] = std::move(branches);
  }

  report["identity_check"] = qep::end_to_end_identity_check(trace, opts.epsilon);
  emit_report(report, opts);
  return kExitPass;
}

int run_channel_check(const std::string& path, const CommonOptions& opts) {
  const qep::docio::ChannelDocument doc = qep::docio::load_channel(path, opts.epsilon);

  Json report = report_header("channel-check", opts);
  report["input"] = path;
  report["n"] = doc.n;
  report["form"] = doc.form;
  report["description"] = doc.description;

  const Eigen::Index dim = qep::dim_for_qubits(doc.n);

  std::optional<qep::SuperOperator> superop = doc.superop;
  bool completeness = true;
  if (doc.form == "kraus") {
    qep::CMatrix sum = qep::CMatrix::Zero(dim, dim);
    for (const qep::CMatrix& e : doc.kraus_ops) sum += e.adjoint() * e;
    completeness = qep::approx_equal(sum, qep::CMatrix::Identity(dim, dim), opts.epsilon);
    report["kraus_completeness"] = completeness;
    superop = qep::SuperOperator::from_map(doc.n, [&doc](const qep::CMatrix& a) {
      qep::CMatrix out = qep::CMatrix::Zero(a.rows(), a.cols());
      for (const qep::CMatrix& e : doc.kraus_ops) out += e * a * e.adjoint();
      return out;
    });
  } else {
    report["kraus_completeness"] = nullptr;
  }

  const bool tp = qep::is_trace_preserving(*superop, opts.epsilon);
  const bool cp = qep::is_completely_positive(*superop, opts.epsilon);
  report["trace_preserving"] = tp;
  report["completely_positive"] = cp;
  report["choi_min_eigenvalue"] = qep::choi_min_eigenvalue(*superop);

  // Purity of the map's action on a few canonical probes.
  Json probes = Json::array();
  auto add_probe = [&](const std::string& name, const qep::CMatrix& rho) {
    const qep::CMatrix out = superop->apply(rho);
    Json pj;
    pj["state"] = name;
    pj["purity_in"] = (rho * rho).trace().real();
    pj["purity_out"] = (out * out).trace().real();
    probes.push_back(std::move(pj));
  };
  qep::CMatrix ground = qep::CMatrix::Zero(dim, dim);
  ground(0, 0) = 1.0;
  qep::CMatrix excited = qep::CMatrix::Zero(dim, dim);
  excited(dim - 1, dim - 1) = 1.0;
  add_probe("basis-first", ground);
  add_probe("basis-last", excited);
  add_probe("uniform-superposition",
            qep::CMatrix::Constant(dim, dim, 1.0 / static_cast<double>(dim)));
  add_probe("maximally-mixed",
            qep::CMatrix::Identity(dim, dim) / static_cast<double>(dim));
  report["purity_probes"] = std::move(probes);

  const bool passed = completeness && tp && cp;
  report["passed"] = passed;
  emit_report(report, opts);
  return passed ? kExitPass : kExitVerificationFailure;
}

int run_distance(const std::string& a_text, const std::string& b_text,
                 const CommonOptions& opts) {
  const qep::TruthPerspective a = qep::docio::parse_perspective(a_text, opts.epsilon);
  const qep::TruthPerspective b = qep::docio::parse_perspective(b_text, opts.epsilon);
  const double d = qep::epistemic_distance(a, b);

  std::printf("%.12g\n", d);

  Json report = report_header("distance", opts);
  report["a"] = a_text;
  report["b"] = b_text;
  report["distance"] = d;
  emit_report(report, opts, /*to_stdout=*/false);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epistemic quantum computational structures: verification and simulation"};
  app.require_subcommand(1);

  CommonOptions verify_opts, teleport_opts, channel_opts, distance_opts;
  std::string structure_path, channel_path;
  std::string a0_text, a1_text;
  std::string perspective_a, perspective_b;
  bool sample_mode = false;

  CLI::App* verify = app.add_subcommand("verify", "Verify an epistemic structure document");
  verify->add_option("structure", structure_path, "Structure document (JSON)")->required();
  add_common_flags(verify, &verify_opts);

  CLI::App* teleport =
      app.add_subcommand("teleport", "Run the memorize/retrieve teleportation protocol");
  teleport->add_option("--a0", a0_text, "Amplitude of |0> as 're' or 're,im'")->required();
  teleport->add_option("--a1", a1_text, "Amplitude of |1> as 're' or 're,im'")->required();
  teleport->add_flag("--sample-mode", sample_mode, "Emit one seeded branch instead of all four");
  add_common_flags(teleport, &teleport_opts, /*with_samples=*/false);

  CLI::App* channel = app.add_subcommand("channel-check", "Check a channel document");
  channel->add_option("channel", channel_path, "Channel document (JSON)")->required();
  add_common_flags(channel, &channel_opts);

  CLI::App* distance =
      app.add_subcommand("distance", "Epistemic distance between two truth-perspectives");
  distance->add_option("a", perspective_a, "Preset name or inline 2x2 JSON matrix")->required();
  distance->add_option("b", perspective_b, "Preset name or inline 2x2 JSON matrix")->required();
  add_common_flags(distance, &distance_opts, /*with_samples=*/false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(structure_path, verify_opts);
    if (teleport->parsed()) return run_teleport(a0_text, a1_text, sample_mode, teleport_opts);
    if (channel->parsed()) return run_channel_check(channel_path, channel_opts);
    if (distance->parsed()) return run_distance(perspective_a, perspective_b, distance_opts);
  } catch (const qep::docio::ParseError& e) {
    std::cerr << "error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ", column " << e.column() << ")";
    std::cerr << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
