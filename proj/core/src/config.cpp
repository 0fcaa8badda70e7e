// Copyright 2026 The sqrtfree Authors
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

#include "sqrtfree/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include "sqrtfree/errors.hpp"

namespace sqrtfree {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view v, int line, std::string_view key) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  if (v == "nan") return std::numeric_limits<double>::quiet_NaN();
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != end)
    throw ParseError("'" + std::string(key) + "' expects a real number, got '" + std::string(v) +
                         "'",
                     line);
  return out;
}

std::uint64_t parse_count(std::string_view v, int line, std::string_view key) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != end)
    throw ParseError("'" + std::string(key) + "' expects a non-negative integer, got '" +
                         std::string(v) + "'",
                     line);
  return out;
}

Shape parse_shape(std::string_view v, int line) {
  const auto x = v.find('x');
  if (x == std::string_view::npos)
    throw ParseError("'shape' expects PxD, got '" + std::string(v) + "'", line);
  const Shape s{parse_count(v.substr(0, x), line, "shape"), parse_count(v.substr(x + 1), line, "shape")};
  if (s.rows == 0 || s.cols == 0) throw ParseError("'shape' dimensions must be positive", line);
  return s;
}

FisherKind fisher_kind_by_name(std::string_view v) {
  if (v == "standard") return FisherKind::standard;
  if (v == "new") return FisherKind::new_;
  if (v == "scaled") return FisherKind::scaled;
  if (v == "exact") return FisherKind::full_exact;
  throw DomainError("unknown fisher kind '" + std::string(v) +
                    "' (expected standard, new, scaled or exact)");
}

std::string_view fisher_kind_name(FisherKind k) {
  return k == FisherKind::full_exact || k == FisherKind::mini_exact ? "exact" : to_string(k);
}

// Runs an enum lookup, converting its error into a ParseError on `line`.
template <class F>
auto lookup(F&& f, int line) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Hyper RunConfig::resolved_hyper(std::size_t num_samples) const {
  Hyper h = hyper;
  if (fisher_factor) {
    h.batch = *fisher_factor;
  } else if (h.reduction == Reduction::mean) {
    h.batch = batch_size == 0 || batch_size > num_samples ? num_samples : batch_size;
  } else {
    h.batch = 1;
  }
  return h;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::optional<PrecisionScope> scope;
  bool have_method = false;

  using Setter = std::function<void(std::string_view, int)>;
  auto real = [](double& dst, std::string_view key) -> Setter {
    return [&dst, key](std::string_view v, int line) { dst = parse_real(v, line, key); };
  };
  auto count = [](std::size_t& dst, std::string_view key) -> Setter {
    return [&dst, key](std::string_view v, int line) { dst = parse_count(v, line, key); };
  };
  auto seed = [](std::uint64_t& dst, std::string_view key) -> Setter {
    return [&dst, key](std::string_view v, int line) { dst = parse_count(v, line, key); };
  };
  Hyper& h = cfg.hyper;
  const std::map<std::string, Setter, std::less<>> setters{
      {"problem",
       [&](std::string_view v, int line) {
         if (v != "quadratic" && v != "logreg" && v != "matfact")
           throw ParseError("unknown problem '" + std::string(v) +
                                "' (expected quadratic, logreg or matfact)",
                            line);
         cfg.problem = v;
       }},
      {"method",
       [&](std::string_view v, int line) {
         cfg.method = lookup([&] { return method_by_name(v); }, line);
         have_method = true;
       }},
      {"lr", real(h.lr, "lr")},
      {"beta2", real(h.beta2, "beta2")},
      {"gamma", real(h.gamma, "gamma")},
      {"damping", real(h.damping, "damping")},
      {"weight_decay", real(h.weight_decay, "weight_decay")},
      {"momentum", real(h.momentum, "momentum")},
      {"if_weight_c", real(h.factor_weight_c, "if_weight_c")},
      {"if_weight_k", real(h.factor_weight_k, "if_weight_k")},
      {"fisher_factor",
       [&](std::string_view v, int line) { cfg.fisher_factor = parse_count(v, line, "fisher_factor"); }},
      {"reduction",
       [&](std::string_view v, int line) {
         h.reduction = lookup([&] { return reduction_by_name(v); }, line);
       }},
      {"exp_mode",
       [&](std::string_view v, int line) {
         h.exp_mode = lookup([&] { return exp_mode_by_name(v); }, line);
       }},
      {"precond_init",
       [&](std::string_view v, int line) { cfg.precond_init = parse_real(v, line, "precond_init"); }},
      {"steps", count(cfg.steps, "steps")},
      {"seed", seed(cfg.seed, "seed")},
      {"batch_size", count(cfg.batch_size, "batch_size")},
      {"output", [&](std::string_view v, int) { cfg.output = v; }},
      {"precision",
       [&](std::string_view v, int line) {
         cfg.precision.format = lookup([&] { return format_by_name(v); }, line);
       }},
      {"precision_scope",
       [&](std::string_view v, int line) { scope = lookup([&] { return scope_by_name(v); }, line); }},
      {"dim", count(cfg.dim, "dim")},
      {"samples", count(cfg.samples, "samples")},
      {"cond", real(cfg.cond, "cond")},
      {"data_seed", seed(cfg.data_seed, "data_seed")},
      {"csv", [&](std::string_view v, int) { cfg.csv = v; }},
      {"reg", real(cfg.reg, "reg")},
      {"shape", [&](std::string_view v, int line) { cfg.shape = parse_shape(v, line); }},
      {"noise", real(cfg.noise, "noise")},
      {"init_scale", real(cfg.init_scale, "init_scale")},
      {"fisher_kind",
       [&](std::string_view v, int line) {
         cfg.fisher_kind = lookup([&] { return fisher_kind_by_name(v); }, line);
       }},
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line_no);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    else if (value.find('"') != std::string_view::npos)
      throw ParseError("unbalanced quotes in value of '" + std::string(key) + "'", line_no);

    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second)
      throw ConfigError("duplicate config key '" + std::string(key) + "'");
    it->second(value, line_no);
  }

  if (cfg.problem.empty()) throw ConfigError("missing required key 'problem'");
  if (!have_method) throw ConfigError("missing required key 'method'");
  cfg.precision.scope =
      scope.value_or(cfg.precision.format.is_reference() ? PrecisionScope::none
                                                         : PrecisionScope::state_only);

  h.validate();
  if (cfg.fisher_factor && *cfg.fisher_factor == 0)
    throw ConfigError("invariant violated: fisher_factor >= 1");
  if (cfg.precond_init && !(*cfg.precond_init >= 0.0 && std::isfinite(*cfg.precond_init)))
    throw ConfigError("invariant violated: precond_init >= 0 and finite");
  if (cfg.dim == 0) throw ConfigError("invariant violated: dim >= 1");
  if (cfg.samples == 0) throw ConfigError("invariant violated: samples >= 1");
  if (!(cfg.cond >= 1.0)) throw ConfigError("invariant violated: cond >= 1");
  if (!(cfg.reg >= 0.0)) throw ConfigError("invariant violated: reg >= 0");
  if (!(cfg.noise >= 0.0 && cfg.noise <= 1.0) && cfg.problem == "logreg")
    throw ConfigError("invariant violated: noise in [0, 1] for logreg label flips");
  if (!(cfg.noise >= 0.0)) throw ConfigError("invariant violated: noise >= 0");
  if (!(cfg.init_scale >= 0.0)) throw ConfigError("invariant violated: init_scale >= 0");
  if (cfg.shape && cfg.problem != "matfact" && cfg.shape->size() != cfg.dim && cfg.csv.empty())
    throw ConfigError("invariant violated: shape rows x cols == dim");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto put = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
  const Hyper& h = cfg.hyper;
  put("problem", cfg.problem);
  put("method", std::string(to_string(cfg.method)));
  put("lr", format_double(h.lr));
  put("beta2", format_double(h.beta2));
  put("gamma", format_double(h.gamma));
  put("damping", format_double(h.damping));
  put("weight_decay", format_double(h.weight_decay));
  put("momentum", format_double(h.momentum));
  put("if_weight_c", format_double(h.factor_weight_c));
  put("if_weight_k", format_double(h.factor_weight_k));
  if (cfg.fisher_factor) put("fisher_factor", std::to_string(*cfg.fisher_factor));
  put("reduction", std::string(to_string(h.reduction)));
  put("exp_mode", std::string(to_string(h.exp_mode)));
  if (cfg.precond_init) put("precond_init", format_double(*cfg.precond_init));
  put("steps", std::to_string(cfg.steps));
  put("seed", std::to_string(cfg.seed));
  put("batch_size", std::to_string(cfg.batch_size));
  if (!cfg.output.empty()) put("output", quoted(cfg.output));
  put("precision", cfg.precision.format.name);
  put("precision_scope", std::string(to_string(cfg.precision.scope)));
  put("dim", std::to_string(cfg.dim));
  put("samples", std::to_string(cfg.samples));
  put("cond", format_double(cfg.cond));
  put("data_seed", std::to_string(cfg.data_seed));
  if (!cfg.csv.empty()) put("csv", quoted(cfg.csv));
  put("reg", format_double(cfg.reg));
  if (cfg.shape) put("shape", std::to_string(cfg.shape->rows) + "x" + std::to_string(cfg.shape->cols));
  put("noise", format_double(cfg.noise));
  put("init_scale", format_double(cfg.init_scale));
  put("fisher_kind", std::string(fisher_kind_name(cfg.fisher_kind)));
  return out.str();
}

}  // namespace sqrtfree
