// Copyright 2026 The lindsieve Authors
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

#include "config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace lindsieve::cli {

using nlohmann::json;

int exit_code_for(ls_status status) {
  switch (status) {
    case LS_OK: return kExitOk;
    case LS_ERR_CONDITION_VIOLATED: return kExitCondition;
    case LS_ERR_INTEGRATION_QUALITY:
    case LS_ERR_UNDER_RESOLVED: return kExitIntegration;
    case LS_ERR_IO: return kExitIo;
    default: return kExitConfig;
  }
}

void check(ls_status status, const char* context) {
  if (status == LS_OK) return;
  throw CliError(exit_code_for(status), std::string(context) + ": " + ls_last_error());
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw CliError(kExitConfig, "config: " + msg); }

void only_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) bad(std::string(where) + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) bad(std::string("unknown key '") + key + "' in " + where);
}

double number(const json& obj, const char* key, const char* where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) bad(std::string(where) + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(std::string(where) + "." + key + " must be finite");
  return d;
}

double required_number(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key)) bad(std::string(where) + "." + key + " is required");
  return number(obj, key, where, 0.0);
}

long integer(const json& obj, const char* key, const char* where, long fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) bad(std::string(where) + "." + key + " must be an integer");
  return v.get<long>();
}

void complex_pair(const json& v, const char* where, double& re, double& im) {
  if (v.is_number()) {
    re = v.get<double>();
    im = 0.0;
    return;
  }
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    bad(std::string(where) + " must be a number or a [re, im] pair");
  re = v[0].get<double>();
  im = v[1].get<double>();
}

void positive(double v, const char* name) {
  if (!(v > 0.0)) bad(std::string(name) + " must be > 0");
}

}  // namespace

std::vector<double> TimeSpec::times() const {
  if (!t_list.empty()) return t_list;
  if (samples == 1) return {t_final};
  std::vector<double> out(samples);
  for (int i = 0; i < samples; ++i) out[i] = t_final * i / (samples - 1);
  return out;
}

RunConfig RunConfig::from_json(const json& doc) {
  only_keys(doc, "config",
            {"oscillator", "model", "state", "time", "sieve", "truncation", "consistency", "kernel_table", "output"});
  RunConfig c;
  ls_sieve_grid_default(&c.sieve);

  if (doc.contains("oscillator")) {
    const json& o = doc["oscillator"];
    only_keys(o, "oscillator", {"mass", "omega", "hbar"});
    c.osc.mass = number(o, "mass", "oscillator", 1.0);
    c.osc.omega = number(o, "omega", "oscillator", 1.0);
    c.osc.hbar = number(o, "hbar", "oscillator", 1.0);
    positive(c.osc.mass, "oscillator.mass");
    positive(c.osc.omega, "oscillator.omega");
    positive(c.osc.hbar, "oscillator.hbar");
  }

  if (!doc.contains("model")) bad("a model block is required");
  const json& m = doc["model"];
  only_keys(m, "model", {"quadratic", "channels", "kernel"});
  if (m.size() != 1) bad("model must contain exactly one of quadratic, channels, kernel");
  if (m.contains("quadratic")) {
    const json& q = m["quadratic"];
    only_keys(q, "model.quadratic", {"d_qq", "d_pp", "d_pq", "lambda", "mu"});
    c.model = Model::kQuadratic;
    c.quadratic.d_qq = required_number(q, "d_qq", "model.quadratic");
    c.quadratic.d_pp = required_number(q, "d_pp", "model.quadratic");
    c.quadratic.d_pq = required_number(q, "d_pq", "model.quadratic");
    c.quadratic.lambda = required_number(q, "lambda", "model.quadratic");
    c.quadratic.mu = required_number(q, "mu", "model.quadratic");
    if (c.quadratic.d_qq < 0.0 || c.quadratic.d_pp < 0.0) bad("model.quadratic: D_qq and D_pp must be >= 0");
    if (c.quadratic.d_pq * c.quadratic.d_pq > c.quadratic.d_qq * c.quadratic.d_pp * (1.0 + 1e-12))
      bad("model.quadratic: coefficients violate D_qq D_pp >= D_pq^2");
  } else if (m.contains("channels")) {
    const json& ch = m["channels"];
    only_keys(ch, "model.channels", {"mu", "list"});
    c.model = Model::kChannels;
    c.channels_mu = required_number(ch, "mu", "model.channels");
    if (!ch.contains("list") || !ch["list"].is_array()) bad("model.channels.list must be an array");
    for (const json& e : ch["list"]) {
      only_keys(e, "model.channels.list[]", {"a", "b"});
      ChannelSpec s;
      if (!e.contains("a") || !e.contains("b")) bad("model.channels.list[] entries need both a and b");
      complex_pair(e["a"], "model.channels.list[].a", s.a_re, s.a_im);
      complex_pair(e["b"], "model.channels.list[].b", s.b_re, s.b_im);
      c.channels.push_back(s);
    }
  } else {
    const json& k = m["kernel"];
    only_keys(k, "model.kernel", {"gaussian", "spectrum"});
    c.model = Model::kKernel;
    if (k.size() != 1) bad("model.kernel must contain exactly one of gaussian, spectrum");
    if (k.contains("gaussian")) {
      const json& g = k["gaussian"];
      only_keys(g, "model.kernel.gaussian", {"c0", "sigma"});
      c.kernel.c0 = required_number(g, "c0", "model.kernel.gaussian");
      c.kernel.sigma = required_number(g, "sigma", "model.kernel.gaussian");
      positive(*c.kernel.c0, "model.kernel.gaussian.c0");
      positive(*c.kernel.sigma, "model.kernel.gaussian.sigma");
    } else {
      if (!k["spectrum"].is_string()) bad("model.kernel.spectrum must be a file path");
      c.kernel.spectrum_path = k["spectrum"].get<std::string>();
    }
  }

  if (doc.contains("state")) {
    const json& s = doc["state"];
    only_keys(s, "state", {"alpha", "s", "theta", "fock"});
    StateSpec st;
    if (s.contains("fock")) {
      if (s.contains("alpha") || s.contains("s") || s.contains("theta"))
        bad("state: fock cannot be combined with alpha, s or theta");
      st.fock_level = integer(s, "fock", "state", 0);
      if (*st.fock_level < 0) bad("state.fock must be >= 0");
    } else {
      if (!s.contains("alpha")) bad("state.alpha is required (or give state.fock)");
      complex_pair(s["alpha"], "state.alpha", st.alpha_re, st.alpha_im);
      st.s = required_number(s, "s", "state");
      st.theta = required_number(s, "theta", "state");
      if (st.s < 0.0) bad("state.s must be >= 0");
    }
    c.state = st;
  }

  if (doc.contains("time")) {
    const json& t = doc["time"];
    c.time_given = true;
    only_keys(t, "time", {"t_final", "samples", "dt", "t_list"});
    c.time.t_final = t.contains("t_list") ? number(t, "t_final", "time", 0.0) : required_number(t, "t_final", "time");
    c.time.samples = static_cast<int>(integer(t, "samples", "time", 1));
    c.time.dt = number(t, "dt", "time", 0.0);
    if (c.time.t_final < 0.0) bad("time.t_final must be >= 0");
    if (c.time.samples < 1) bad("time.samples must be >= 1");
    if (t.contains("t_list")) {
      if (!t["t_list"].is_array() || t["t_list"].empty()) bad("time.t_list must be a non-empty array");
      for (const json& v : t["t_list"]) {
        if (!v.is_number() || !(v.get<double>() >= 0.0)) bad("time.t_list entries must be numbers >= 0");
        c.time.t_list.push_back(v.get<double>());
      }
    }
  }

  if (doc.contains("sieve")) {
    const json& s = doc["sieve"];
    only_keys(s, "sieve",
              {"s_max", "n_s", "n_theta", "refinement_tol", "refinement_max_iter", "flat_abs_tol", "flat_rel_tol"});
    c.sieve.s_max = number(s, "s_max", "sieve", c.sieve.s_max);
    c.sieve.n_s = static_cast<int>(integer(s, "n_s", "sieve", c.sieve.n_s));
    c.sieve.n_theta = static_cast<int>(integer(s, "n_theta", "sieve", c.sieve.n_theta));
    c.sieve.refinement_tol = number(s, "refinement_tol", "sieve", c.sieve.refinement_tol);
    c.sieve.refinement_max_iter =
        static_cast<int>(integer(s, "refinement_max_iter", "sieve", c.sieve.refinement_max_iter));
    c.sieve.flat_abs_tol = number(s, "flat_abs_tol", "sieve", c.sieve.flat_abs_tol);
    c.sieve.flat_rel_tol = number(s, "flat_rel_tol", "sieve", c.sieve.flat_rel_tol);
    positive(c.sieve.s_max, "sieve.s_max");
    if (c.sieve.n_s < 16 || c.sieve.n_theta < 16) bad("sieve.n_s and sieve.n_theta must be >= 16");
  }

  if (doc.contains("truncation")) {
    const json& t = doc["truncation"];
    only_keys(t, "truncation", {"N", "tail_tol"});
    c.dim = integer(t, "N", "truncation", c.dim);
    c.tail_tol = number(t, "tail_tol", "truncation", c.tail_tol);
    if (c.dim < 2) bad("truncation.N must be >= 2");
    positive(c.tail_tol, "truncation.tail_tol");
  }

  if (doc.contains("consistency")) {
    const json& e = doc["consistency"];
    only_keys(e, "consistency", {"epsilon"});
    if (e.contains("epsilon")) {
      if (!e["epsilon"].is_array() || e["epsilon"].empty()) bad("consistency.epsilon must be a non-empty array");
      c.epsilon.clear();
      for (const json& v : e["epsilon"]) {
        if (!v.is_number() || !(v.get<double>() >= 0.0)) bad("consistency.epsilon entries must be numbers >= 0");
        c.epsilon.push_back(v.get<double>());
      }
    }
  }

  if (doc.contains("kernel_table")) {
    const json& k = doc["kernel_table"];
    only_keys(k, "kernel_table", {"r_max", "n_r", "k_max", "n_k", "spectrum_out"});
    if (k.contains("r_max")) c.kernel_table.r_max = number(k, "r_max", "kernel_table", 0.0);
    if (k.contains("k_max")) c.kernel_table.k_max = number(k, "k_max", "kernel_table", 0.0);
    c.kernel_table.n_r = static_cast<int>(integer(k, "n_r", "kernel_table", c.kernel_table.n_r));
    c.kernel_table.n_k = static_cast<int>(integer(k, "n_k", "kernel_table", c.kernel_table.n_k));
    if (k.contains("spectrum_out")) {
      if (!k["spectrum_out"].is_string()) bad("kernel_table.spectrum_out must be a path");
      c.kernel_table.spectrum_out = k["spectrum_out"].get<std::string>();
    }
    if (c.kernel_table.r_max) positive(*c.kernel_table.r_max, "kernel_table.r_max");
    if (c.kernel_table.k_max) positive(*c.kernel_table.k_max, "kernel_table.k_max");
    if (c.kernel_table.n_r < 2 || c.kernel_table.n_k < 3) bad("kernel_table.n_r >= 2 and n_k >= 3 required");
  }

  if (doc.contains("output")) {
    if (!doc["output"].is_string()) bad("output must be a path");
    c.output = doc["output"].get<std::string>();
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitIo, "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw CliError(kExitConfig, "config: " + std::string(e.what()));
  }
  return from_json(doc);
}

json RunConfig::to_json() const {
  json j;
  j["oscillator"] = {{"mass", osc.mass}, {"omega", osc.omega}, {"hbar", osc.hbar}};
  switch (model) {
    case Model::kQuadratic:
      j["model"]["quadratic"] = {{"d_qq", quadratic.d_qq}, {"d_pp", quadratic.d_pp}, {"d_pq", quadratic.d_pq},
                                 {"lambda", quadratic.lambda}, {"mu", quadratic.mu}};
      break;
    case Model::kChannels: {
      json list = json::array();
      for (const auto& ch : channels)
        list.push_back({{"a", {ch.a_re, ch.a_im}}, {"b", {ch.b_re, ch.b_im}}});
      j["model"]["channels"] = {{"mu", channels_mu}, {"list", list}};
      break;
    }
    case Model::kKernel:
      if (kernel.spectrum_path)
        j["model"]["kernel"]["spectrum"] = *kernel.spectrum_path;
      else
        j["model"]["kernel"]["gaussian"] = {{"c0", *kernel.c0}, {"sigma", *kernel.sigma}};
      break;
  }
  if (state && state->fock_level)
    j["state"] = {{"fock", *state->fock_level}};
  else if (state)
    j["state"] = {{"alpha", {state->alpha_re, state->alpha_im}}, {"s", state->s}, {"theta", state->theta}};
  if (time_given) j["time"] = {{"t_final", time.t_final}, {"samples", time.samples}, {"dt", time.dt}};
  if (time_given && !time.t_list.empty()) j["time"]["t_list"] = time.t_list;
  j["sieve"] = {{"s_max", sieve.s_max},
                {"n_s", sieve.n_s},
                {"n_theta", sieve.n_theta},
                {"refinement_tol", sieve.refinement_tol},
                {"refinement_max_iter", sieve.refinement_max_iter},
                {"flat_abs_tol", sieve.flat_abs_tol},
                {"flat_rel_tol", sieve.flat_rel_tol}};
  j["truncation"] = {{"N", dim}, {"tail_tol", tail_tol}};
  j["consistency"] = {{"epsilon", epsilon}};
  j["kernel_table"] = {{"n_r", kernel_table.n_r}, {"n_k", kernel_table.n_k}};
  if (kernel_table.r_max) j["kernel_table"]["r_max"] = *kernel_table.r_max;
  if (kernel_table.k_max) j["kernel_table"]["k_max"] = *kernel_table.k_max;
  if (kernel_table.spectrum_out) j["kernel_table"]["spectrum_out"] = *kernel_table.spectrum_out;
  if (output) j["output"] = *output;
  return j;
}

std::string RunConfig::hash() const {
  // FNV-1a over the canonical dump; stable across platforms and runs.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_json().dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lindsieve::cli
