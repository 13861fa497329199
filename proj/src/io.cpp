// Copyright 2026 The hardylab Authors
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

#include "hardylab/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "hardylab/error.hpp"
#include "json.hpp"

namespace hardylab {

namespace {

using nlohmann::json;

// Writes JSON with sorted keys and fixed float formatting. Non-finite
// numbers cannot occur: callers store them as strings.
void emit(const json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map: sorted
        if (!first) out += ",\n";
        first = false;
        out += inner + json(key).dump() + ": ";
        emit(value, indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      // Short arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(),
                                     [](const json& e) { return e.is_structured(); });
      if (j.empty()) {
        out += "[]";
      } else if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += ", ";
          emit(j[i], indent + 1, out);
        }
        out += "]";
      } else {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += ",\n";
          out += inner;
          emit(j[i], indent + 1, out);
        }
        out += "\n" + pad + "]";
      }
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string canonical(const json& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

json number_or_inf(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kValidation, what);
}

double as_double(const json& j, const char* key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
  }
  invalid(std::string(key) + " must be a number");
}

std::optional<double> optional_number(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return as_double(doc.at(key), key);
}

double required_number(const json& doc, const char* key) {
  const auto v = optional_number(doc, key);
  if (!v) invalid(std::string(key) + " is required");
  return *v;
}

json domain_doc(const DomainRef& d) {
  json doc = {{"kind", d.kind_name()},
              {"family", nullptr},
              {"theta", nullptr},
              {"b0", nullptr},
              {"vertex_x", nullptr},
              {"teeth", nullptr},
              {"min_gap", nullptr},
              {"extension", nullptr}};
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CombSpec>) {
          doc["min_gap"] = k.min_gap();
          std::visit(
              [&](const auto& rule) {
                using R = std::decay_t<decltype(rule)>;
                if constexpr (std::is_same_v<R, Case1Rule>) {
                  doc["family"] = "case1";
                  doc["theta"] = rule.theta;
                } else if constexpr (std::is_same_v<R, Case2Rule>) {
                  doc["family"] = "case2";
                } else if constexpr (std::is_same_v<R, Case3Rule>) {
                  doc["family"] = "case3";
                } else {
                  doc["family"] = "explicit";
                  json teeth = json::array();
                  for (const Tooth& t : rule.teeth) teeth.push_back({t.n, t.x, t.b});
                  doc["teeth"] = teeth;
                  if (rule.extension) {
                    doc["extension"] = {{"gap", rule.extension->gap}, {"b", rule.extension->b}};
                  }
                }
              },
              k.rule());
        } else if constexpr (std::is_same_v<K, SectorDomain>) {
          doc["theta"] = k.theta;
          doc["vertex_x"] = k.vertex_x;
        } else if constexpr (std::is_same_v<K, SlitPlaneDomain>) {
          doc["b0"] = k.b0;
        }
      },
      d.kind());
  return doc;
}

DomainRef domain_from_doc(const json& doc) {
  if (!doc.is_object()) invalid("domain document must be a JSON object");
  static const std::vector<std::string> kKeys = {"kind",  "family",  "theta",     "b0",
                                                 "vertex_x", "teeth", "min_gap", "extension"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      invalid("unknown key '" + key + "'");
    }
  }
  if (!doc.contains("kind") || !doc.at("kind").is_string()) invalid("kind is required");
  const auto kind = doc.at("kind").get<std::string>();
  try {
    if (kind == "sector") {
      return DomainRef::sector(required_number(doc, "theta"),
                               optional_number(doc, "vertex_x").value_or(0.0));
    }
    if (kind == "slitplane") return DomainRef::slit_plane(required_number(doc, "b0"));
    if (kind == "halfplane") return DomainRef::upper_half_plane();
    if (kind != "comb") invalid("unknown kind '" + kind + "'");

    if (!doc.contains("family") || !doc.at("family").is_string()) {
      invalid("comb family is required");
    }
    const auto family = doc.at("family").get<std::string>();
    if (family == "case1") return DomainRef::comb(CombSpec::case1(required_number(doc, "theta")));
    if (family == "case2") return DomainRef::comb(CombSpec::case2());
    if (family == "case3") return DomainRef::comb(CombSpec::case3());
    if (family != "explicit") invalid("unknown comb family '" + family + "'");

    if (!doc.contains("teeth") || !doc.at("teeth").is_array()) invalid("teeth must be a list");
    std::vector<Tooth> teeth;
    for (const auto& row : doc.at("teeth")) {
      if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
          !row[1].is_number() || !row[2].is_number()) {
        invalid("each tooth must be [n, x, b] with integer n");
      }
      teeth.push_back({row[0].get<Index>(), row[1].get<double>(), row[2].get<double>()});
    }
    std::optional<TailExtension> ext;
    if (doc.contains("extension") && !doc.at("extension").is_null()) {
      const json& e = doc.at("extension");
      if (!e.is_object()) invalid("extension must be an object {gap, b}");
      ext = TailExtension{required_number(e, "gap"), required_number(e, "b")};
    }
    return DomainRef::comb(CombSpec::from_teeth(std::move(teeth), required_number(doc, "min_gap"), ext));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kValidation) throw;
    throw Error(ErrorCode::kValidation, e.what());
  }
}

json config_doc(const SimConfig& cfg) {
  return {{"step_factor", cfg.step_factor},
          {"dt_max", number_or_inf(cfg.dt_max)},
          {"eps_absorb", cfg.eps_absorb},
          {"t_cap", number_or_inf(cfg.t_cap)},
          {"r_stop", cfg.r_stop ? json(*cfg.r_stop) : json(nullptr)},
          {"master_seed", cfg.master_seed}};
}

SimConfig config_from_doc(const json& doc) {
  if (!doc.is_object()) invalid("config must be an object");
  SimConfig cfg;
  cfg.step_factor = required_number(doc, "step_factor");
  cfg.dt_max = required_number(doc, "dt_max");
  cfg.eps_absorb = required_number(doc, "eps_absorb");
  cfg.t_cap = required_number(doc, "t_cap");
  cfg.r_stop = optional_number(doc, "r_stop");
  if (!doc.contains("master_seed") || !doc.at("master_seed").is_number_integer()) {
    invalid("master_seed must be an integer");
  }
  cfg.master_seed = doc.at("master_seed").get<std::uint64_t>();
  cfg.validate();
  return cfg;
}

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    invalid(std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string hit_kind_field(const ExitSample& s) {
  if (s.hit != HitKind::kRay) return std::string(to_string(s.hit));
  return s.hit_sign < 0 ? "ray-" : "ray+";
}

double parse_double(const std::string& field) {
  if (field == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    invalid("bad number '" + field + "' in batch file");
  }
  if (used != field.size()) invalid("bad number '" + field + "' in batch file");
  return v;
}

long long parse_integer(const std::string& field) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(field, &used);
  } catch (const std::exception&) {
    invalid("bad integer '" + field + "' in batch file");
  }
  if (used != field.size()) invalid("bad integer '" + field + "' in batch file");
  return v;
}

constexpr std::string_view kCsvHeader =
    "sample_id,tau,exit_x,exit_y,hit_kind,hit_id,n_steps,capped";

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string domain_to_json(const DomainRef& d) { return canonical(domain_doc(d)); }

DomainRef domain_from_json(std::string_view text) {
  return domain_from_doc(parse(text, "domain file"));
}

std::string domain_digest(const DomainRef& d) { return fnv1a_hex(domain_to_json(d)); }

std::string config_to_json(const SimConfig& cfg) { return canonical(config_doc(cfg)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
}

DomainRef load_domain(const std::string& path) { return domain_from_json(read_file(path)); }

void save_domain(const std::string& path, const DomainRef& d) {
  write_file(path, domain_to_json(d));
}

std::string batch_to_csv(const SampleBatch& batch) {
  std::string out(kCsvHeader);
  out += "\n";
  for (std::size_t i = 0; i < batch.samples.size(); ++i) {
    const ExitSample& s = batch.samples[i];
    out += std::to_string(i) + "," + format_double(s.tau) + "," +
           format_double(s.exit_point.real()) + "," + format_double(s.exit_point.imag()) + "," +
           hit_kind_field(s) + "," + std::to_string(s.hit_id) + "," +
           std::to_string(s.n_steps) + "," + (s.capped() ? "1" : "0") + "\n";
  }
  return out;
}

void save_batch(const std::string& path, const SampleBatch& batch) {
  const std::string csv = batch_to_csv(batch);
  const json side = {{"format", "hardylab-batch-1"},
                     {"samples", batch.samples.size()},
                     {"z0", {batch.z0.real(), batch.z0.imag()}},
                     {"config", config_doc(batch.config)},
                     {"domain", domain_doc(batch.domain)},
                     {"domain_digest", domain_digest(batch.domain)},
                     {"csv_digest", fnv1a_hex(csv)}};
  write_file(path, csv);
  write_file(path + ".json", canonical(side));
}

SampleBatch load_batch(const std::string& path) {
  const json side = parse(read_file(path + ".json"), "batch sidecar");
  const std::string csv = read_file(path);
  if (!side.is_object() || side.value("format", "") != "hardylab-batch-1") {
    invalid("unrecognized batch sidecar");
  }
  if (fnv1a_hex(csv) != side.value("csv_digest", "")) invalid("batch CSV digest mismatch");
  DomainRef domain = domain_from_doc(side.at("domain"));
  if (domain_digest(domain) != side.value("domain_digest", "")) {
    invalid("domain digest mismatch");
  }
  const json& z0 = side.at("z0");
  if (!z0.is_array() || z0.size() != 2) invalid("z0 must be [x, y]");
  SampleBatch batch{std::move(domain), Complex(as_double(z0[0], "z0"), as_double(z0[1], "z0")),
                    config_from_doc(side.at("config")), {}};

  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) invalid("batch CSV header mismatch");
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1) {
      f.push_back(line.substr(start, pos - start));
    }
    f.push_back(line.substr(start));
    if (f.size() != 8) invalid("batch CSV row has wrong field count");
    if (parse_integer(f[0]) != static_cast<long long>(batch.samples.size())) {
      invalid("batch CSV sample ids are not consecutive");
    }
    ExitSample s;
    s.tau = parse_double(f[1]);
    s.exit_point = {parse_double(f[2]), parse_double(f[3])};
    if (f[4] == "ray+" || f[4] == "ray-") {
      s.hit = HitKind::kRay;
      s.hit_sign = f[4] == "ray+" ? 1 : -1;
    } else if (f[4] == "circle") {
      s.hit = HitKind::kCircle;
    } else if (f[4] == "capped") {
      s.hit = HitKind::kCapped;
    } else {
      invalid("unknown hit kind '" + f[4] + "'");
    }
    s.hit_id = parse_integer(f[5]);
    s.n_steps = static_cast<std::uint64_t>(parse_integer(f[6]));
    if ((f[7] == "1") != s.capped() || (f[7] != "0" && f[7] != "1")) {
      invalid("capped flag disagrees with hit kind");
    }
    batch.samples.push_back(s);
  }
  if (batch.samples.size() != side.value("samples", std::size_t{0})) {
    invalid("batch row count does not match the sidecar");
  }
  return batch;
}

}  // namespace hardylab
