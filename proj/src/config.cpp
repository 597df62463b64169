// Copyright 2026 The shangpp Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shangpp/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace shangpp {
namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Document {
 public:
  explicit Document(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  const Entry* find(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  std::vector<std::string> list(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return {};
    std::string v = e->value;
    if (!v.empty() && v.front() == '[') {
      if (v.back() != ']') fail(key, *e, "unterminated list");
      v = trim(v.substr(1, v.size() - 2));
      if (v.empty()) return {};
    }
    auto items = split(v, ',');
    for (const auto& item : items) {
      if (item.empty()) fail(key, *e, "empty list element");
    }
    return items;
  }

  std::optional<double> number(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    return to_number(key, *e, e->value);
  }

  std::optional<std::int64_t> integer(const std::string& key) {
    const auto v = number(key);
    if (!v) return std::nullopt;
    if (*v != static_cast<double>(static_cast<std::int64_t>(*v))) {
      throw ConfigError(fmt::format("line {}: '{}' must be an integer", entries_.at(key).line, key));
    }
    return static_cast<std::int64_t>(*v);
  }

  std::optional<std::string> text(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  std::vector<double> numbers(const std::string& key, char sep) {
    const Entry* e = find(key);
    if (!e) return {};
    std::string v = e->value;
    if (!v.empty() && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
    std::vector<double> out;
    for (const auto& item : split(v, sep)) out.push_back(to_number(key, *e, item));
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : entries_) {
      if (!used_.count(key)) {
        throw ConfigError(fmt::format("line {}: unknown key '{}'", entry.line, key));
      }
    }
  }

  [[noreturn]] static void fail(const std::string& key, const Entry& e, const std::string& why) {
    throw ConfigError(fmt::format("line {}: '{}': {}", e.line, key, why));
  }

 private:
  static double to_number(const std::string& key, const Entry& e, const std::string& s) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, e, "'" + s + "' is not a number");
    return value;
  }

  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

Regime parse_regime(const std::string& s) {
  if (s == "convex") return Regime::Convex;
  if (s == "strongly_convex" || s == "strongly-convex") return Regime::StronglyConvex;
  throw ConfigError(fmt::format("unknown regime '{}'", s));
}

void apply_method_keys(Document& doc, MethodSpec& m) {
  std::string name = to_string(m.id);
  const std::string prefix = "method." + name + ".";
  if (auto v = doc.text(prefix + "regime"); v && *v != "auto") m.regime = parse_regime(*v);
  if (auto v = doc.number(prefix + "m")) m.m = *v;
  if (auto v = doc.number(prefix + "step")) m.step = *v;
  if (auto v = doc.number(prefix + "hyper_sigma")) m.hyper_sigma = *v;
  if (auto v = doc.number(prefix + "lr")) m.lr = *v;
  if (auto v = doc.number(prefix + "momentum")) m.momentum = *v;
  if (auto v = doc.number(prefix + "alpha")) m.dl_alpha = *v;
  if (auto v = doc.number(prefix + "gamma")) m.dl_gamma = *v;
  if (m.id == MethodId::ShangPPDl) {
    if (auto v = doc.number(prefix + "m")) m.dl_m = *v;
  }
  const bool any_snag = doc.has(prefix + "alpha_hat") || doc.has(prefix + "s") ||
                        doc.has(prefix + "beta_hat") || doc.has(prefix + "eta");
  if (any_snag) {
    SnagOriginalParams p;
    auto need = [&](const char* key) {
      auto v = doc.number(prefix + key);
      if (!v) throw ConfigError(fmt::format("snag needs '{}{}'", prefix, key));
      return *v;
    };
    p.alpha_hat_next = need("alpha_hat");
    p.s = need("s");
    p.beta_hat = need("beta_hat");
    p.eta = need("eta");
    m.snag = p;
  }
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(fmt::format("line {}: empty key or value", line_no));
    }
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key));
    }
  }

  Document doc(std::move(entries));
  RunConfig cfg;
  try {
    for (const auto& p : doc.list("experiment.problem")) cfg.problems.push_back(ProblemSpec::parse(p));
    cfg.sigmas = doc.numbers("experiment.sigma", ',');
    for (const auto& name : doc.list("experiment.methods")) {
      cfg.methods.push_back(MethodSpec::of(parse_method(name)));
    }
    for (MethodSpec& m : cfg.methods) apply_method_keys(doc, m);
    // Method sections for methods that are not listed are still legal keys.
    for (MethodId id : {MethodId::Shang, MethodId::ShangPP, MethodId::ShangPPDl, MethodId::Snag,
                        MethodId::Sgd, MethodId::Shb, MethodId::Nag}) {
      MethodSpec scratch = MethodSpec::of(id);
      apply_method_keys(doc, scratch);
    }

    if (auto v = doc.integer("experiment.n_runs")) cfg.base.n_runs = *v;
    if (auto v = doc.integer("experiment.n_iters")) cfg.base.n_iters = *v;
    if (auto v = doc.integer("experiment.record_every")) cfg.base.record_every = *v;
    if (auto v = doc.integer("experiment.averaging")) cfg.base.averaging_count = static_cast<int>(*v);
    if (auto v = doc.number("experiment.budget")) cfg.base.budget = *v;
    if (auto v = doc.integer("experiment.seed")) {
      if (*v < 0) throw ConfigError("experiment.seed must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(*v);
    }
    if (auto v = doc.text("experiment.noise_shape")) {
      if (*v == "scalar") cfg.base.shape = NoiseShape::ScalarFactor;
      else if (*v == "elementwise") cfg.base.shape = NoiseShape::Elementwise;
      else throw ConfigError(fmt::format("unknown noise shape '{}'", *v));
    }
    if (doc.has("experiment.x0")) cfg.x0 = doc.numbers("experiment.x0", ';');
    if (doc.has("sweep.sigmas")) cfg.sweep_sigmas = doc.numbers("sweep.sigmas", ',');
    if (auto v = doc.text("output.dir")) cfg.output_dir = *v;
    if (auto v = doc.integer("output.verbosity")) cfg.verbosity = static_cast<int>(*v);
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  doc.reject_unknown();

  if (cfg.methods.empty()) throw ConfigError("no methods specified");
  if (cfg.problems.empty()) throw ConfigError("no problem specified");
  if (cfg.sigmas.empty()) cfg.sigmas = {0.0};
  // Validate everything before any job starts.
  cfg.expand();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config '{}'", path.string()));
  return parse_config(in);
}

std::vector<ExperimentSpec> RunConfig::expand() const {
  std::vector<ExperimentSpec> specs;
  for (const ProblemSpec& problem : problems) {
    for (double sigma : sigmas) {
      for (const MethodSpec& method : methods) {
        ExperimentSpec spec = base;
        spec.problem = problem;
        spec.method = method;
        spec.sigma = sigma;
        if (seed) spec.base_seed = *seed;
        const std::size_t d = problem.dimension();
        if (x0.size() == 1) {
          spec.x0.assign(d, x0.front());
        } else {
          spec.x0 = x0;
        }
        try {
          spec.validate();
          // Resolve the theorem parameters up front so bad steps fail early.
          (void)rate_for(spec);
        } catch (const InvalidParameter& e) {
          throw ConfigError(fmt::format("{}: {}", spec.label(), e.what()));
        }
        specs.push_back(std::move(spec));
      }
    }
  }
  return specs;
}

}  // namespace shangpp
