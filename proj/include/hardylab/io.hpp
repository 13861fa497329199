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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hardylab/domain.hpp"
#include "hardylab/stochastic.hpp"

namespace hardylab {

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Canonical domain document: sorted keys, two-space indent, floats with 17
/// significant digits, trailing newline. Equal domains give equal bytes.
std::string domain_to_json(const DomainRef& d);

/// Parses and validates a domain document. Throws Validation naming the
/// violated invariant.
DomainRef domain_from_json(std::string_view text);

std::string domain_digest(const DomainRef& d);

std::string config_to_json(const SimConfig& cfg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

DomainRef load_domain(const std::string& path);
void save_domain(const std::string& path, const DomainRef& d);

/// CSV body of a batch with header
/// sample_id,tau,exit_x,exit_y,hit_kind,hit_id,n_steps,capped.
std::string batch_to_csv(const SampleBatch& batch);

/// Writes `path` (CSV) and `path + ".json"` (config, domain, start point and
/// digests of both).
void save_batch(const std::string& path, const SampleBatch& batch);

/// Reloads a batch; throws Validation on any digest or row-count mismatch.
SampleBatch load_batch(const std::string& path);

/// printf("%.17g") with "inf" / "-inf" / "nan" spelled out.
std::string format_double(double v);

}  // namespace hardylab
