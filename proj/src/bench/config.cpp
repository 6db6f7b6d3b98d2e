#include "wmlab/bench/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace wmlab {

ConfigError::ConfigError(const std::string& source, int line_no, const std::string& message)
    : InvalidArgument(source + (line_no > 0 ? ":" + std::to_string(line_no) : "") + ": " + message),
      line(line_no) {}

namespace {

constexpr std::pair<std::string_view, ScenarioKind> kScenarios[] = {
    {"bits_vs_distortion", ScenarioKind::BitsVsDistortion},
    {"asr_vs_distortion", ScenarioKind::AsrVsDistortion},
    {"defense_equalization", ScenarioKind::DefenseEqualization},
    {"ind_distinguishers", ScenarioKind::IndDistinguishers},
    {"counterexample", ScenarioKind::Counterexample},
    {"overhead_bench", ScenarioKind::OverheadBench},
    {"false_alarm_calibration", ScenarioKind::FalseAlarmCalibration},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry, std::less<>>;

const std::map<std::string, std::vector<std::string>, std::less<>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> keys{
      {"scenario", {"name"}},
      {"scheme", {"codec", "d", "t", "w", "m", "alpha", "transform", "detector", "eta"}},
      {"adversary", {"kinds", "gamma", "delta1", "agreement_threshold"}},
      {"game", {"trials", "sigma_inv", "seed", "oracle_budget", "samples"}},
      {"sweep", {"epsilon", "t_values", "alphas", "dims", "element_bytes", "repetitions"}},
      {"output", {"dir"}},
  };
  return keys;
}

class Reader {
 public:
  Reader(std::string source, std::map<std::string, Section, std::less<>> sections,
         std::map<std::string, int, std::less<>> section_lines)
      : source_(std::move(source)),
        sections_(std::move(sections)),
        section_lines_(std::move(section_lines)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(source_, line, msg);
  }

  Entry* find(std::string_view section, std::string_view key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto e = s->second.find(key);
    if (e == s->second.end()) return nullptr;
    e->second.used = true;
    return &e->second;
  }

  int section_line(std::string_view section) const {
    auto it = section_lines_.find(section);
    return it == section_lines_.end() ? 0 : it->second;
  }

  template <typename T>
  T parse_number(const Entry& e, std::string_view text, std::string_view section,
                 std::string_view key) const {
    T v{};
    const auto t = trim(text);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
      fail(e.line, "[" + std::string(section) + "] " + std::string(key) + ": '" +
                       std::string(t) + "' is not a valid number");
    }
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(v)) fail(e.line, "[" + std::string(section) + "] " + std::string(key) + ": value must be finite");
    }
    return v;
  }

  template <typename T>
  void number(std::string_view section, std::string_view key, T& out) {
    if (Entry* e = find(section, key)) out = parse_number<T>(*e, e->value, section, key);
  }

  template <typename T>
  void list(std::string_view section, std::string_view key, std::vector<T>& out) {
    Entry* e = find(section, key);
    if (!e) return;
    out.clear();
    std::string_view rest = e->value;
    while (true) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      if (item.empty()) {
        fail(e->line, "[" + std::string(section) + "] " + std::string(key) + ": empty list item");
      }
      out.push_back(parse_number<T>(*e, item, section, key));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }

  void text(std::string_view section, std::string_view key, std::string& out) {
    if (Entry* e = find(section, key)) out = e->value;
  }

  /// Runs `fn(value)`; its InvalidArgument becomes a line-anchored error.
  template <typename Fn>
  void with(std::string_view section, std::string_view key, Fn&& fn) {
    Entry* e = find(section, key);
    if (!e) return;
    try {
      fn(*e);
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidArgument& err) {
      fail(e->line, "[" + std::string(section) + "] " + std::string(key) + ": " + err.what());
    }
  }

  void reject_unused() const {
    for (const auto& [name, sec] : sections_) {
      for (const auto& [key, entry] : sec) {
        if (!entry.used) fail(entry.line, "[" + name + "] " + key + ": unused key");
      }
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, Section, std::less<>> sections_;
  std::map<std::string, int, std::less<>> section_lines_;
};

Reader tokenize(std::string_view text, const std::string& source) {
  std::map<std::string, Section, std::less<>> sections;
  std::map<std::string, int, std::less<>> section_lines;
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, line_no, "malformed section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(current)) {
        throw ConfigError(source, line_no, "unknown section [" + current + "]");
      }
      if (section_lines.contains(current)) {
        throw ConfigError(source, line_no, "duplicate section [" + current + "]");
      }
      section_lines[current] = line_no;
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source, line_no, "expected 'key = value'");
    }
    if (current.empty()) throw ConfigError(source, line_no, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const auto& allowed = known_keys().at(current);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(source, line_no, "unknown key '" + key + "' in [" + current + "]");
    }
    if (value.empty()) throw ConfigError(source, line_no, "empty value for '" + key + "'");
    auto& sec = sections[current];
    if (sec.contains(key)) {
      throw ConfigError(source, line_no, "duplicate key '" + key + "' in [" + current + "]");
    }
    sec[key] = Entry{value, line_no, false};
  }
  return Reader(source, std::move(sections), std::move(section_lines));
}

// Shortest text that parses back to the same value.
template <typename T>
std::string fmt(T v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw InternalError("number formatting failed");
  return std::string(buf, ptr);
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  for (const auto& [name, value] : kScenarios) {
    if (value == kind) return name;
  }
  throw InternalError("scenario without a name");
}

ScenarioKind parse_scenario_kind(std::string_view text) {
  for (const auto& [name, value] : kScenarios) {
    if (name == text) return value;
  }
  std::string names;
  for (const auto& [name, value] : kScenarios) names += (names.empty() ? "" : ", ") + std::string(name);
  throw InvalidArgument("unknown scenario '" + std::string(text) + "' (expected one of: " + names + ")");
}

ScenarioConfig parse_scenario_config(std::string_view text, const std::string& source) {
  Reader r = tokenize(text, source);
  ScenarioConfig c;

  if (!r.find("scenario", "name")) r.fail(r.section_line("scenario"), "[scenario] name is required");
  r.with("scenario", "name", [&](const Entry& e) { c.scenario = parse_scenario_kind(e.value); });

  auto& s = c.scheme;
  r.with("scheme", "codec", [&](const Entry& e) { s.codec = parse_codec_kind(e.value); });
  int d = s.codec == CodecKind::Prc ? s.prc.d : s.gs.d;
  double alpha = s.codec == CodecKind::Prc ? s.prc.alpha : s.gs.alpha;
  r.number("scheme", "d", d);
  r.number("scheme", "alpha", alpha);
  s.prc.d = s.gs.d = d;
  s.prc.alpha = s.gs.alpha = alpha;
  r.number("scheme", "t", s.prc.t);
  r.number("scheme", "w", s.prc.w);
  r.number("scheme", "m", s.gs.m);
  r.with("scheme", "transform", [&](const Entry& e) {
    if (e.value == "haar") {
      s.haar_transform = true;
    } else if (e.value == "none") {
      s.haar_transform = false;
    } else {
      throw InvalidArgument("expected 'none' or 'haar', got '" + e.value + "'");
    }
  });
  r.with("scheme", "detector", [&](const Entry& e) { s.detector = parse_detector_kind(e.value); });
  r.number("scheme", "eta", s.backdoor_eta);

  r.with("adversary", "kinds", [&](const Entry& e) {
    c.adversaries.clear();
    std::string_view rest = e.value;
    while (true) {
      const auto comma = rest.find(',');
      c.adversaries.push_back(parse_adversary_kind(trim(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  });
  r.number("adversary", "gamma", c.gamma);
  r.number("adversary", "delta1", c.delta1);
  r.number("adversary", "agreement_threshold", c.agreement_threshold);

  r.number("game", "trials", c.trials);
  r.number("game", "sigma_inv", c.sigma_inv);
  r.number("game", "seed", c.seed);
  r.number("game", "oracle_budget", c.oracle_budget);
  r.number("game", "samples", c.samples);

  r.list("sweep", "epsilon", c.epsilons);
  r.list("sweep", "t_values", c.t_values);
  r.list("sweep", "alphas", c.alphas);
  r.list("sweep", "dims", c.dims);
  r.number("sweep", "element_bytes", c.element_bytes);
  r.number("sweep", "repetitions", c.repetitions);

  r.text("output", "dir", c.output_dir);

  // Value checks, anchored at the offending key.
  auto check = [&](std::string_view section, std::string_view key, bool ok, const std::string& msg) {
    if (ok) return;
    Entry* e = r.find(section, key);
    r.fail(e ? e->line : r.section_line(section),
           "[" + std::string(section) + "] " + std::string(key) + ": " + msg);
  };
  check("scheme", "d", d >= 1, "must be >= 1");
  check("scheme", "alpha", alpha > 0.0 && alpha < 1.0, "must lie in (0, 1)");
  check("scheme", "t", s.prc.t >= 1 && s.prc.t <= d, "must lie in [1, d]");
  check("scheme", "w", s.prc.w >= 1 && s.prc.w <= d, "must lie in [1, d]");
  check("scheme", "m", s.gs.m >= 1 && d % s.gs.m == 0, "must be >= 1 and divide d");
  check("scheme", "eta", s.backdoor_eta > 0.0 && s.backdoor_eta < 1.0, "must lie in (0, 1)");
  check("adversary", "gamma", c.gamma > 0.0, "must be > 0");
  check("adversary", "delta1", c.delta1 >= 0.0, "must be >= 0");
  check("adversary", "agreement_threshold", c.agreement_threshold > 0.0 && c.agreement_threshold <= 1.0,
        "must lie in (0, 1]");
  check("adversary", "kinds", !c.adversaries.empty(), "must not be empty");
  check("game", "trials", c.trials >= 1, "must be >= 1");
  check("game", "sigma_inv", c.sigma_inv >= 0.0, "must be >= 0");
  check("game", "oracle_budget", c.oracle_budget >= 0, "must be >= 0");
  check("game", "samples", c.samples >= 1, "must be >= 1");
  check("sweep", "epsilon", !c.epsilons.empty(), "must not be empty");
  for (double e : c.epsilons) check("sweep", "epsilon", e >= 0.0, "values must be >= 0");
  for (int t : c.t_values) check("sweep", "t_values", t >= 1 && t <= d, "values must lie in [1, d]");
  for (double a : c.alphas) check("sweep", "alphas", a > 0.0 && a < 1.0, "values must lie in (0, 1)");
  for (int dim : c.dims) check("sweep", "dims", dim >= 1, "values must be >= 1");
  check("sweep", "element_bytes", c.element_bytes == 4 || c.element_bytes == 8, "must be 4 or 8");
  check("sweep", "repetitions", c.repetitions >= 1, "must be >= 1");

  r.reject_unused();
  return c;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_config(buf.str(), path);
}

std::string ScenarioConfig::to_text() const {
  std::ostringstream os;
  os << "[scenario]\nname = " << to_string(scenario) << "\n\n";
  os << "[scheme]\n"
     << "codec = " << to_string(scheme.codec) << "\n"
     << "d = " << scheme.dim() << "\n"
     << "t = " << scheme.prc.t << "\n"
     << "w = " << scheme.prc.w << "\n"
     << "m = " << scheme.gs.m << "\n"
     << "alpha = " << fmt(scheme.alpha()) << "\n"
     << "transform = " << (scheme.haar_transform ? "haar" : "none") << "\n"
     << "detector = " << to_string(scheme.detector) << "\n"
     << "eta = " << fmt(scheme.backdoor_eta) << "\n\n";
  os << "[adversary]\nkinds = ";
  for (std::size_t i = 0; i < adversaries.size(); ++i) {
    os << (i ? ", " : "") << to_string(adversaries[i]);
  }
  os << "\ngamma = " << fmt(gamma) << "\ndelta1 = " << fmt(delta1)
     << "\nagreement_threshold = " << fmt(agreement_threshold) << "\n\n";
  os << "[game]\ntrials = " << trials << "\nsigma_inv = " << fmt(sigma_inv) << "\nseed = " << seed
     << "\noracle_budget = " << oracle_budget << "\nsamples = " << samples << "\n\n";
  os << "[sweep]\nepsilon = " << join(epsilons) << "\n";
  if (!t_values.empty()) os << "t_values = " << join(t_values) << "\n";
  os << "alphas = " << join(alphas) << "\ndims = " << join(dims)
     << "\nelement_bytes = " << element_bytes << "\nrepetitions = " << repetitions << "\n\n";
  os << "[output]\ndir = " << output_dir << "\n";
  return os.str();
}

}  // namespace wmlab
