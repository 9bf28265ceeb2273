// Copyright 2026 The ERIC Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eric/seal.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "eric/error.hpp"
#include "eric/kernels.hpp"

namespace eric::seal {

namespace {

[[noreturn]] void bad_policy(const std::string& what) { throw Error(ErrorCode::BadPolicy, what); }

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    bad_policy("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

pkg::DescriptorFilter parse_filter(std::string_view name) {
  using pkg::DescriptorFilter;
  for (auto f : {DescriptorFilter::all, DescriptorFilter::loads, DescriptorFilter::stores,
                 DescriptorFilter::branches, DescriptorFilter::jumps}) {
    if (pkg::to_string(f) == name) return f;
  }
  bad_policy("unknown field filter '" + std::string(name) + "'");
}

pkg::FieldDescriptor parse_field(std::string_view filter, std::string_view range) {
  const std::size_t dots = range.find("..");
  if (dots == std::string_view::npos) bad_policy("field range must be <lo>..<hi>");
  const auto lo = parse_number<unsigned>(range.substr(0, dots), "field bit");
  const auto hi = parse_number<unsigned>(range.substr(dots + 2), "field bit");
  if (lo > 255 || hi > 255) bad_policy("field bit out of range");
  return {parse_filter(filter), static_cast<std::uint8_t>(lo), static_cast<std::uint8_t>(hi)};
}

// Uniform double in [0, 1) from the top 53 bits.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void put_mask(Bytes& mask, std::uint32_t offset, std::uint8_t length, std::uint32_t bits) {
  for (std::uint8_t b = 0; b < length; ++b) {
    mask[offset + b] = static_cast<std::uint8_t>(bits >> (8 * b));
  }
}

}  // namespace

void EncryptionPolicy::validate() const {
  switch (mode) {
    case pkg::Mode::full:
      if (!std::holds_alternative<SelectAll>(selection)) bad_policy("full mode encrypts every instruction; drop the selection");
      if (!descriptors.empty()) bad_policy("full mode takes no field descriptors");
      break;
    case pkg::Mode::per_instruction:
      if (!descriptors.empty()) bad_policy("field descriptors require mode fields");
      break;
    case pkg::Mode::field_level:
      if (descriptors.empty()) bad_policy("mode fields needs at least one field directive");
      if (descriptors.size() > 255) bad_policy("at most 255 field descriptors");
      break;
  }
  if (const auto* r = std::get_if<SelectRandom>(&selection)) {
    if (!(r->fraction >= 0.0 && r->fraction <= 1.0)) bad_policy("fraction must lie in [0, 1]");
  }
  for (const auto& d : descriptors) {
    try {
      d.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::PolicyViolation, e.what());
    }
  }
}

EncryptionPolicy parse_policy(std::string_view text) {
  EncryptionPolicy policy;
  bool have_mode = false;
  std::optional<double> fraction;
  std::optional<std::uint64_t> seed;
  std::optional<SelectClasses> classes;
  std::optional<SelectExplicit> indices;

  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto tok = tokens(raw);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    auto expect_args = [&](std::size_t n) {
      if (tok.size() != n + 1) bad_policy(where + "'" + std::string(tok[0]) + "' takes " + std::to_string(n) + " argument(s)");
    };

    const std::string_view directive = tok[0];
    if (directive == "mode") {
      expect_args(1);
      if (have_mode) bad_policy(where + "duplicate mode directive");
      have_mode = true;
      if (tok[1] == "full") policy.mode = pkg::Mode::full;
      else if (tok[1] == "partial") policy.mode = pkg::Mode::per_instruction;
      else if (tok[1] == "fields") policy.mode = pkg::Mode::field_level;
      else bad_policy(where + "unknown mode '" + std::string(tok[1]) + "'");
    } else if (directive == "fraction") {
      expect_args(1);
      fraction = parse_number<double>(tok[1], "fraction");
    } else if (directive == "seed") {
      expect_args(1);
      seed = parse_number<std::uint64_t>(tok[1], "seed");
    } else if (directive == "classes") {
      expect_args(1);
      SelectClasses sel;
      for (auto name : split(tok[1], ',')) sel.classes.insert(riscv::class_from_string(name));
      classes = std::move(sel);
    } else if (directive == "indices") {
      expect_args(1);
      SelectExplicit sel;
      for (auto n : split(tok[1], ',')) sel.indices.push_back(parse_number<std::uint32_t>(n, "index"));
      indices = std::move(sel);
    } else if (directive == "field") {
      expect_args(2);
      policy.descriptors.push_back(parse_field(tok[1], tok[2]));
    } else {
      bad_policy(where + "unknown directive '" + std::string(directive) + "'");
    }
  }

  if (!have_mode) bad_policy("missing mode directive");
  if (seed && !fraction) bad_policy("seed given without fraction");
  const int kinds = (fraction ? 1 : 0) + (classes ? 1 : 0) + (indices ? 1 : 0);
  if (kinds > 1) bad_policy("choose one of fraction, classes or indices");
  if (fraction) policy.selection = SelectRandom{*fraction, seed.value_or(0)};
  if (classes) policy.selection = std::move(*classes);
  if (indices) policy.selection = std::move(*indices);

  policy.validate();
  return policy;
}

FieldPlan::FieldPlan(std::span<const pkg::FieldDescriptor> descriptors) {
  for (const auto& d : descriptors) {
    const auto f = static_cast<std::size_t>(d.filter);
    by_filter_.at(f) |= d.mask();
  }
  unfiltered_ = by_filter_[0];
}

std::uint32_t FieldPlan::mask_for(riscv::InstrClass cls) const {
  using riscv::InstrClass;
  std::uint32_t m = unfiltered_;
  switch (cls) {
    case InstrClass::load: m |= by_filter_[1]; break;
    case InstrClass::store: m |= by_filter_[2]; break;
    case InstrClass::branch: m |= by_filter_[3]; break;
    case InstrClass::jump: m |= by_filter_[4]; break;
    default: break;
  }
  return m;
}

std::vector<bool> select_instructions(std::span<const riscv::InstrParcel> stream,
                                      const EncryptionPolicy& policy) {
  const std::size_t n = stream.size();
  std::vector<bool> selected(n, false);
  std::visit(
      [&](const auto& sel) {
        using T = std::decay_t<decltype(sel)>;
        if constexpr (std::is_same_v<T, SelectAll>) {
          selected.assign(n, true);
        } else if constexpr (std::is_same_v<T, SelectRandom>) {
          std::mt19937_64 rng(sel.seed);
          for (std::size_t k = 0; k < n; ++k) selected[k] = unit_uniform(rng) < sel.fraction;
        } else if constexpr (std::is_same_v<T, SelectClasses>) {
          for (std::size_t k = 0; k < n; ++k) selected[k] = sel.classes.contains(riscv::classify(stream[k]));
        } else {
          for (std::uint32_t idx : sel.indices) {
            if (idx >= n) {
              throw Error(ErrorCode::IndexOutOfRange,
                          "index " + std::to_string(idx) + " >= instruction count " + std::to_string(n));
            }
            selected[idx] = true;
          }
        }
      },
      policy.selection);
  return selected;
}

keys::Digest sign_program(ByteView code) { return keys::sha256(code); }

EncryptedCode encrypt_code(ByteView code, std::span<const riscv::InstrParcel> stream,
                           const std::vector<bool>& selected, const EncryptionPolicy& policy,
                           const keys::PufBasedKey& key) {
  policy.validate();
  if (selected.size() != stream.size()) throw std::invalid_argument("selection length differs from instruction count");
  std::size_t tiled = 0;
  for (const auto& p : stream) tiled += p.length;
  if (tiled != code.size()) throw std::invalid_argument("instruction stream does not tile the code image");

  EncryptedCode out;
  out.ciphertext.assign(code.begin(), code.end());
  if (policy.mode == pkg::Mode::full) {
    kernels::xor_keystream(out.ciphertext, key, keys::KeystreamDomain::code, 0);
    return out;
  }

  const FieldPlan plan(policy.descriptors);
  Bytes mask(code.size(), 0);
  for (std::size_t k = 0; k < stream.size(); ++k) {
    if (!selected[k]) continue;
    const auto& p = stream[k];
    std::uint32_t bits = 0xFFFFFFFFu;
    if (policy.mode == pkg::Mode::field_level) {
      bits = p.compressed() ? plan.compressed_mask() : plan.mask_for(riscv::classify(p));
    }
    put_mask(mask, p.offset, p.length, bits);
  }
  kernels::xor_keystream_masked(out.ciphertext, mask, key, keys::KeystreamDomain::code, 0);
  out.map = pkg::EncryptionMap::from_bits(selected);
  return out;
}

keys::Digest metadata_binding(const keys::PufBasedKey& key, ByteView metadata) {
  static constexpr std::uint8_t kTag[3] = {'H', 'D', 'R'};
  return keys::Sha256().update(key.bytes).update(kTag).update(metadata).finish();
}

keys::Digest signature_mask(const keys::PufBasedKey& key, ByteView metadata) {
  const Bytes ks = keys::keystream_bytes(key, keys::KeystreamDomain::signature, 0, pkg::kSignatureSize);
  keys::Digest mask = metadata_binding(key, metadata);
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] ^= ks[i];
  return mask;
}

pkg::SealedPackage seal(ByteView code, const keys::PufBasedKey& key,
                        const EncryptionPolicy& policy, pkg::Isa isa, std::uint64_t device_id) {
  policy.validate();
  if (code.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::InvariantViolation, "code image exceeds 4 GiB");
  }
  const auto stream = riscv::iterate_instructions(code);
  const auto selected = select_instructions(stream, policy);

  // Signature first, over the plaintext.
  const keys::Digest signature = sign_program(code);
  EncryptedCode enc = encrypt_code(code, stream, selected, policy, key);

  pkg::SealedPackage out;
  auto& h = out.header;
  h.mode = policy.mode;
  h.isa = isa;
  h.device_id = device_id;
  h.code_length = static_cast<std::uint32_t>(code.size());
  h.instruction_count = static_cast<std::uint32_t>(stream.size());
  for (const auto& p : stream) {
    if (p.compressed()) {
      h.flags |= pkg::kFlagCompressed;
      break;
    }
  }
  if (policy.mode != pkg::Mode::full) {
    out.map = std::move(enc.map);
    h.map_length = static_cast<std::uint32_t>(out.map.byte_length());
  }
  if (policy.mode == pkg::Mode::field_level) {
    out.descriptors = policy.descriptors;
    h.field_count = static_cast<std::uint8_t>(out.descriptors.size());
  }
  out.ciphertext = std::move(enc.ciphertext);

  const keys::Digest mask = signature_mask(key, pkg::serialize_metadata(out));
  for (std::size_t i = 0; i < signature.size(); ++i) {
    out.encrypted_signature[i] = signature[i] ^ mask[i];
  }
  pkg::validate(out);
  return out;
}

}  // namespace eric::seal
