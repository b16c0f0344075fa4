#include "scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hmrac/error.hpp"

namespace hmrac::cli {

namespace {

using nlohmann::json;

class Reader {
 public:
  Reader(const json& obj, std::string prefix, std::vector<std::string>& notices)
      : obj_(obj), prefix_(std::move(prefix)), notices_(notices) {
    if (!obj_.is_object()) throw Error(ErrorCode::Config, where() + " must be an object");
  }

  void allow(std::initializer_list<const char*> keys) {
    std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& [key, _] : obj_.items()) {
      if (!known.count(key)) throw Error(ErrorCode::Config, "unknown key '" + path(key) + "'");
    }
  }

  bool has(const char* key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }

  const json& at(const char* key) const { return obj_.at(key); }

  std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  template <typename T>
  void get(const char* key, T& out, const std::string& shown_default) {
    if (!has(key)) {
      notices_.push_back("'" + path(key) + "' not set, using default " + shown_default);
      return;
    }
    try {
      out = obj_.at(key).get<T>();
    } catch (const json::exception&) {
      throw Error(ErrorCode::Config, "'" + path(key) + "' has the wrong type");
    }
  }

  void number(const char* key, double& out) {
    std::ostringstream os;
    os << out;
    if (has(key) && !obj_.at(key).is_number()) throw Error(ErrorCode::Config, "'" + path(key) + "' must be a number");
    get(key, out, os.str());
  }

  Reader child(const char* key) const { return Reader(obj_.at(key), path(key), notices_); }

  void note_default(const char* key, const std::string& shown) {
    notices_.push_back("'" + path(key) + "' not set, using default " + shown);
  }

 private:
  std::string where() const { return prefix_.empty() ? "scenario" : "'" + prefix_ + "'"; }

  const json& obj_;
  std::string prefix_;
  std::vector<std::string>& notices_;
};

Vec to_vec(const json& j, const std::string& name) {
  if (!j.is_array()) throw Error(ErrorCode::Config, "'" + name + "' must be an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::Config, "'" + name + "' must be an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Mat to_mat(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::Config, "'" + name + "' must be a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Mat M(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorCode::Config, "'" + name + "' rows must have equal length");
    M.row(static_cast<Eigen::Index>(i)) = to_vec(j[i], name).transpose();
  }
  return M;
}

std::vector<Complex> to_poles(const json& j, const std::string& name) {
  if (!j.is_array()) throw Error(ErrorCode::Config, "'" + name + "' must be an array");
  std::vector<Complex> poles;
  for (const json& p : j) {
    if (p.is_number()) {
      poles.emplace_back(p.get<double>(), 0.0);
    } else if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
      poles.emplace_back(p[0].get<double>(), p[1].get<double>());
    } else {
      throw Error(ErrorCode::Config, "'" + name + "' entries must be numbers or [re, im] pairs");
    }
  }
  return poles;
}

void read_command(Reader rd, Command& cmd) {
  rd.allow({"type", "amplitude", "period", "sines"});
  std::string type = "square";
  rd.get("type", type, "\"square\"");
  if (type == "square") {
    cmd.kind = CommandKind::Square;
  } else if (type == "step") {
    cmd.kind = CommandKind::Step;
  } else if (type == "sines") {
    cmd.kind = CommandKind::Sines;
  } else {
    throw Error(ErrorCode::Config, "'" + rd.path("type") + "' must be square, step or sines");
  }
  rd.number("amplitude", cmd.amplitude);
  if (cmd.kind == CommandKind::Square) {
    rd.number("period", cmd.period);
    if (!(cmd.period > 0.0)) throw Error(ErrorCode::Config, "'" + rd.path("period") + "' must be positive");
  }
  if (cmd.kind == CommandKind::Sines) {
    if (!rd.has("sines")) throw Error(ErrorCode::Config, "'" + rd.path("sines") + "' is required for a sines command");
    const json& arr = rd.at("sines");
    if (!arr.is_array()) throw Error(ErrorCode::Config, "'" + rd.path("sines") + "' must be an array");
    std::vector<std::string> sink;
    for (const json& term : arr) {
      Reader tr(term, rd.path("sines[]"), sink);
      tr.allow({"amplitude", "frequency_hz", "phase"});
      SineTerm s;
      tr.number("amplitude", s.amplitude);
      tr.number("frequency_hz", s.frequency_hz);
      tr.number("phase", s.phase);
      cmd.sines.push_back(s);
    }
  }
}

Scenario parse_scenario_document(const json& doc);

std::string format_poles(const std::vector<Complex>& poles) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < poles.size(); ++i) os << (i ? ", " : "") << poles[i].real();
  os << "]";
  return os.str();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_scenario_document(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("malformed scenario: ") + e.what());
  }
}

namespace {

Scenario parse_scenario_document(const json& doc) {
  Scenario sc;
  SimConfig& cfg = sc.sim;
  Reader root(doc, "", sc.notices);
  root.allow({"plant", "variant", "dt", "t_final", "seed", "x0", "switching", "sdc", "rbf", "observer", "reference",
              "output"});

  root.get("plant", cfg.plant, "\"" + cfg.plant + "\"");
  if (root.has("variant")) {
    std::string name;
    root.get("variant", name, "");
    const auto v = parse_variant(name);
    if (!v) throw Error(ErrorCode::Config, "unknown variant '" + name + "'");
    cfg.variant = *v;
  } else {
    root.note_default("variant", "\"hybrid\"");
  }
  root.number("dt", cfg.dt);
  root.number("t_final", cfg.t_final);
  if (root.has("seed")) {
    if (!root.at("seed").is_number_unsigned()) throw Error(ErrorCode::Config, "'seed' must be a non-negative integer");
    cfg.seed = root.at("seed").get<std::uint64_t>();
  } else {
    root.note_default("seed", std::to_string(cfg.seed));
  }
  if (root.has("x0")) {
    cfg.x0 = to_vec(root.at("x0"), "x0");
  } else {
    root.note_default("x0", "zeros");
  }

  if (root.has("switching")) {
    Reader rd = root.child("switching");
    rd.allow({"gamma", "hysteresis"});
    rd.number("gamma", cfg.gamma);
    rd.number("hysteresis", cfg.hysteresis);
  } else {
    root.note_default("switching", "{gamma: 0.001, hysteresis: 2}");
  }

  if (root.has("sdc")) {
    Reader rd = root.child("sdc");
    rd.allow({"epsilon", "form", "gain_cache_tol"});
    rd.number("epsilon", cfg.sdc.epsilon);
    rd.number("gain_cache_tol", cfg.gain_cache_tol);
    std::string form = "paper-transpose";
    rd.get("form", form, "\"paper-transpose\"");
    if (form == "paper-transpose") {
      cfg.sdc.form = SdcForm::PaperTranspose;
    } else if (form == "outer-reconstruction") {
      cfg.sdc.form = SdcForm::OuterReconstruction;
    } else {
      throw Error(ErrorCode::Config, "'sdc.form' must be paper-transpose or outer-reconstruction");
    }
  } else {
    root.note_default("sdc", "{epsilon: 1e-6, form: paper-transpose, gain_cache_tol: 1e-9}");
  }

  if (root.has("rbf")) {
    Reader rd = root.child("rbf");
    rd.allow({"centers", "range", "bandwidth", "gamma", "w_max"});
    if (rd.has("centers")) {
      if (!rd.at("centers").is_number_integer()) throw Error(ErrorCode::Config, "'rbf.centers' must be an integer");
      cfg.rbf.num_centers = rd.at("centers").get<int>();
    } else {
      rd.note_default("centers", std::to_string(cfg.rbf.num_centers));
    }
    if (rd.has("range")) {
      const Vec range = to_vec(rd.at("range"), "rbf.range");
      if (range.size() != 2) throw Error(ErrorCode::Config, "'rbf.range' must be [lo, hi]");
      cfg.rbf.range_lo = range(0);
      cfg.rbf.range_hi = range(1);
    } else {
      rd.note_default("range", "[-1, 1]");
    }
    rd.number("bandwidth", cfg.rbf.bandwidth);
    rd.number("gamma", cfg.rbf.gamma);
    rd.number("w_max", cfg.rbf.w_max);
  } else {
    root.note_default("rbf", "{centers: 10, range: [-1, 1], bandwidth: 0.25, gamma: 0.05, w_max: 100}");
  }

  if (root.has("observer")) {
    Reader rd = root.child("observer");
    rd.allow({"speed_margin", "gain_diag", "q", "eps_bar"});
    rd.number("speed_margin", cfg.observer.speed_margin);
    rd.number("eps_bar", cfg.observer.eps_bar);
    if (rd.has("gain_diag")) cfg.observer.gain_diag = to_vec(rd.at("gain_diag"), "observer.gain_diag");
    if (rd.has("q")) cfg.observer.q = to_mat(rd.at("q"), "observer.q");
  } else {
    root.note_default("observer", "{speed_margin: 2, q: identity, eps_bar: 0.01}");
  }

  if (root.has("reference")) {
    Reader rd = root.child("reference");
    rd.allow({"poles", "kr", "command"});
    if (rd.has("poles")) {
      cfg.reference.poles = to_poles(rd.at("poles"), "reference.poles");
    } else {
      rd.note_default("poles", format_poles(cfg.reference.poles));
    }
    rd.number("kr", cfg.reference.kr);
    if (rd.has("command")) {
      read_command(rd.child("command"), cfg.reference.command);
    } else {
      rd.note_default("command", "square wave, amplitude 1, period 40 s");
    }
  } else {
    root.note_default("reference", "{poles: [-3, -4, -5], kr: 1, square command}");
  }

  if (root.has("output")) {
    Reader rd = root.child("output");
    rd.allow({"csv", "plots"});
    if (rd.has("csv")) sc.csv_path = rd.at("csv").get<std::string>();
    if (rd.has("plots")) sc.plots_dir = rd.at("plots").get<std::string>();
  }

  validate(cfg);
  return sc;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void apply_seed_override(Scenario& sc) {
  const char* env = std::getenv("HYBRID_MRAC_SEED");
  if (!env || !*env) return;
  char* end = nullptr;
  const unsigned long long seed = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw Error(ErrorCode::Config, "HYBRID_MRAC_SEED must be a non-negative integer");
  sc.sim.seed = seed;
}

}  // namespace hmrac::cli
