#include "qep/docio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "qep/gates.hpp"

namespace qep::docio {

namespace {

std::pair<int, int> line_column_at(const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column_at(text, e.byte ? e.byte - 1 : 0);
    throw ParseError(e.what(), line, column);
  }
}

const Json& require(const Json& j, const std::string& key, const std::string& context) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(context + ": missing key '" + key + "'");
  return *it;
}

void check_format_version(const Json& j, const std::string& context) {
  const Json& version = require(j, "format_version", context);
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
    throw ParseError(context + ": unsupported format_version");
}

double number_at(const Json& j, const std::string& context) {
  if (!j.is_number()) throw ParseError(context + ": expected a number");
  return j.get<double>();
}

Gate gate_preset(const std::string& name) {
  if (name == "not") return not_gate(1);
  if (name == "hadamard") return hadamard_gate(1);
  if (name == "sqrt-not") return sqrt_not_gate(1);
  if (name == "x") return pauli_x();
  if (name == "y") return pauli_y();
  if (name == "z") return pauli_z();
  throw ParseError("unknown gate preset '" + name + "'");
}

EpistemicOp op_from_json(const Json& j, const std::string& context, double eps) {
  if (j.is_string()) {
    if (j.get<std::string>() == "identity") return EpistemicOp::identity();
    throw ParseError(context + ": unknown operation preset '" + j.get<std::string>() + "'");
  }
  if (!j.is_object()) throw ParseError(context + ": expected a preset name or object");
  if (j.contains("depolarizing")) {
    const double p = number_at(j.at("depolarizing"), context + ".depolarizing");
    if (p < 0.0 || p > 1.0) throw ParseError(context + ": depolarizing p must be in [0,1]");
    return EpistemicOp::depolarizing(p);
  }
  if (j.contains("gate")) {
    const Json& g = j.at("gate");
    if (g.is_string()) return EpistemicOp::from_gate(gate_preset(g.get<std::string>()));
    try {
      const CMatrix m = matrix_from_json(g);
      const int n = qubit_count_for_dim(m.rows());
      return EpistemicOp::from_gate(Gate(n, m, "explicit", eps));
    } catch (const std::invalid_argument& e) {
      throw ParseError(context + ".gate: " + e.what());
    }
  }
  if (j.contains("kraus")) {
    const Json& list = j.at("kraus");
    if (!list.is_array() || list.empty())
      throw ParseError(context + ".kraus: expected a nonempty array of matrices");
    try {
      std::vector<CMatrix> ops;
      for (const Json& entry : list) ops.push_back(matrix_from_json(entry));
      const int n = qubit_count_for_dim(ops.front().rows());
      return EpistemicOp::from_channel(KrausChannel(n, std::move(ops), eps));
    } catch (const std::invalid_argument& e) {
      throw ParseError(context + ".kraus: " + e.what());
    }
  }
  throw ParseError(context + ": expected one of depolarizing/gate/kraus");
}

Qumix state_from_json(const Json& j, const TruthPerspective& perspective,
                      const std::string& context, double eps) {
  if (!j.is_object()) throw ParseError(context + ": expected an object");
  try {
    if (j.contains("pure")) {
      const CVector amps = vector_from_json(j.at("pure"));
      const int n = qubit_count_for_dim(amps.size());
      return projector(Quregister(n, amps, eps));
    }
    if (j.contains("density")) {
      const CMatrix m = matrix_from_json(j.at("density"));
      const int n = qubit_count_for_dim(m.rows());
      return Qumix(n, m, eps);
    }
    if (j.contains("projection")) {
      const std::string which = j.at("projection").get<std::string>();
      const TruthProjections proj = truth_projection(perspective, 1);
      if (which == "truth") return Qumix(1, proj.truth, eps);
      if (which == "falsity") return Qumix(1, proj.falsity, eps);
      throw ParseError(context + ": projection must be 'truth' or 'falsity'");
    }
    if (j.contains("maximally-mixed")) {
      const int n = j.at("maximally-mixed").get<int>();
      return Qumix::maximally_mixed(n);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(context + ": " + e.what());
  }
  throw ParseError(context + ": expected one of pure/density/projection/maximally-mixed");
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(message), line_(line), column_(column) {}

Json complex_to_json(cdouble z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

cdouble complex_from_json(const Json& j) {
  if (j.is_number()) return cdouble(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex values must be [re, im] pairs");
  return cdouble(j[0].get<double>(), j[1].get<double>());
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty amplitude array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty matrix (array of rows)");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ParseError("matrix rows must be nonempty arrays");
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError("matrix rows must all have the same length");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
  }
  return m;
}

TruthPerspective perspective_from_json(const Json& j, double eps) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "identity") return TruthPerspective::identity();
    if (name == "hadamard") return TruthPerspective::hadamard();
    if (name == "sqrt-not") return TruthPerspective::sqrt_not();
    throw ParseError("unknown truth-perspective preset '" + name + "'");
  }
  try {
    return TruthPerspective(matrix_from_json(j), eps);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("truth-perspective: ") + e.what());
  }
}

TruthPerspective parse_perspective(const std::string& text, double eps) {
  if (!text.empty() && text.front() == '[') return perspective_from_json(parse_json(text), eps);
  return perspective_from_json(Json(text), eps);
}

StructureDocument parse_structure(const std::string& text, double eps) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("structure document must be a JSON object");
  check_format_version(doc, "structure");

  const Json& times_json = require(doc, "times", "structure");
  if (!times_json.is_array() || times_json.empty())
    throw ParseError("structure.times: expected a nonempty array");
  std::vector<std::string> times;
  for (const Json& t : times_json) times.push_back(t.get<std::string>());

  const Json& agents_json = require(doc, "agents", "structure");
  if (!agents_json.is_array() || agents_json.empty())
    throw ParseError("structure.agents: expected a nonempty array");
  std::vector<std::string> agents;
  for (const Json& a : agents_json) agents.push_back(a.get<std::string>());

  const Json& sits_json = require(doc, "situations", "structure");
  if (!sits_json.is_array()) throw ParseError("structure.situations: expected an array");

  std::map<std::pair<std::string, std::string>, EpistemicSituation> situations;
  std::size_t index = 0;
  for (const Json& sj : sits_json) {
    const std::string context = "situations[" + std::to_string(index++) + "]";
    if (!sj.is_object()) throw ParseError(context + ": expected an object");
    const std::string agent = require(sj, "agent", context).get<std::string>();
    const std::string time = require(sj, "time", context).get<std::string>();

    TruthPerspective perspective =
        perspective_from_json(require(sj, "truth_perspective", context), eps);

    EpistemicSituation sit{std::move(perspective),
                           {},
                           false,
                           op_from_json(require(sj, "understanding", context),
                                        context + ".understanding", eps),
                           op_from_json(require(sj, "knowledge", context),
                                        context + ".knowledge", eps),
                           Fallback::HalfIdentity};

    const Json& domain = require(sj, "domain", context);
    if (domain.is_string() && domain.get<std::string>() == "all") {
      sit.domain_is_all = true;
    } else if (domain.is_array()) {
      std::size_t si = 0;
      for (const Json& state : domain) {
        const Qumix rho = state_from_json(
            state, sit.perspective, context + ".domain[" + std::to_string(si++) + "]", eps);
        sit.domain[rho.n].push_back(rho);
      }
    } else {
      throw ParseError(context + ".domain: expected \"all\" or an array of states");
    }

    if (sj.contains("fallback")) {
      const std::string f = sj.at("fallback").get<std::string>();
      if (f == "half-identity")
        sit.fallback = Fallback::HalfIdentity;
      else if (f == "t-falsity")
        sit.fallback = Fallback::TFalsity;
      else
        throw ParseError(context + ".fallback: expected 'half-identity' or 't-falsity'");
    }

    if (!situations.emplace(std::make_pair(agent, time), std::move(sit)).second)
      throw ParseError(context + ": duplicate situation for (" + agent + ", " + time + ")");
  }

  InteractionMap interactions;
  bool has_interactions = false;
  if (doc.contains("interactions")) {
    has_interactions = true;
    const Json& ints = doc.at("interactions");
    if (!ints.is_array()) throw ParseError("structure.interactions: expected an array");
    for (const Json& entry : ints) {
      const std::string time = require(entry, "time", "interactions").get<std::string>();
      const Json& pairs = require(entry, "pairs", "interactions");
      if (!pairs.is_array()) throw ParseError("interactions.pairs: expected an array");
      for (const Json& pair : pairs) {
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError("interactions.pairs: each pair must be [agent, agent]");
        interactions.pairs_by_time[time].emplace_back(pair[0].get<std::string>(),
                                                      pair[1].get<std::string>());
      }
    }
  }

  try {
    EpistemicStructure structure(TimeSequence(std::move(times)), std::move(agents),
                                 std::move(situations));
    for (const auto& [time, pairs] : interactions.pairs_by_time) {
      structure.times.index_of(time);
      for (const auto& [a, b] : pairs) {
        structure.situation(a, time);
        structure.situation(b, time);
      }
    }
    return StructureDocument{std::move(structure), std::move(interactions), has_interactions};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("structure: ") + e.what());
  }
}

StructureDocument load_structure(const std::string& path, double eps) {
  return parse_structure(read_text(path), eps);
}

ChannelDocument parse_channel(const std::string& text, double eps) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("channel document must be a JSON object");
  check_format_version(doc, "channel");

  ChannelDocument out;
  if (doc.contains("channel")) {
    const Json& spec = doc.at("channel");
    if (!spec.is_object() || !spec.contains("depolarizing"))
      throw ParseError("channel: expected {\"depolarizing\": p}");
    const double p = number_at(spec.at("depolarizing"), "channel.depolarizing");
    TruthPerspective t = spec.contains("perspective")
                             ? perspective_from_json(spec.at("perspective"), eps)
                             : TruthPerspective::identity();
    try {
      out.kraus_ops = depolarizing_channel(p, t).kraus_ops;
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("channel: ") + e.what());
    }
    out.n = 1;
    out.form = "kraus";
    std::ostringstream desc;
    desc << "depolarizing(" << p << ")";
    out.description = desc.str();
    return out;
  }
  if (doc.contains("kraus")) {
    const Json& list = doc.at("kraus");
    if (!list.is_array() || list.empty())
      throw ParseError("channel.kraus: expected a nonempty array of matrices");
    try {
      std::vector<CMatrix> ops;
      for (const Json& entry : list) ops.push_back(matrix_from_json(entry));
      const int n = qubit_count_for_dim(ops.front().rows());
      const Eigen::Index dim = dim_for_qubits(n);
      for (const CMatrix& e : ops)
        if (e.rows() != dim || e.cols() != dim)
          throw ParseError("channel.kraus: operators must all be square with one dimension");
      out.kraus_ops = std::move(ops);
      out.n = n;
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("channel.kraus: ") + e.what());
    }
    out.form = "kraus";
    out.description = "explicit";
    return out;
  }
  if (doc.contains("superoperator")) {
    const Json& spec = doc.at("superoperator");
    if (spec.is_string()) {
      const std::string name = spec.get<std::string>();
      if (name != "transpose")
        throw ParseError("channel.superoperator: unknown preset '" + name + "'");
      const int n = doc.contains("n") ? doc.at("n").get<int>() : 1;
      out.superop = SuperOperator::from_map(n, [](const CMatrix& a) { return a.transpose().eval(); });
      out.n = n;
      out.form = "superoperator";
      out.description = "transpose";
      return out;
    }
    int n = 0;
    try {
      const CMatrix m = matrix_from_json(spec);
      const int dim_sq = static_cast<int>(m.rows());
      n = qubit_count_for_dim(static_cast<Eigen::Index>(std::lround(std::sqrt(dim_sq))));
      out.superop = SuperOperator(n, m);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("channel.superoperator: ") + e.what());
    }
    out.n = n;
    out.form = "superoperator";
    out.description = "explicit";
    return out;
  }
  throw ParseError("channel document needs one of channel/kraus/superoperator");
}

ChannelDocument load_channel(const std::string& path, double eps) {
  return parse_channel(read_text(path), eps);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move report into place: " + path);
}

}  // namespace qep::docio
