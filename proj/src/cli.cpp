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

#include "eric/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <random>
#include <string>

#include "eric/analysis.hpp"
#include "eric/bytes.hpp"
#include "eric/distribution.hpp"
#include "eric/hde.hpp"
#include "eric/key_mgmt.hpp"
#include "eric/package_format.hpp"
#include "eric/puf_model.hpp"
#include "eric/seal.hpp"

namespace eric::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::string_view s = text;
  int base = 10;
  if (s.starts_with("0x") || s.starts_with("0X")) {
    s.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

std::string read_text(const std::string& path) {
  const Bytes raw = read_file(path);
  return std::string(raw.begin(), raw.end());
}

pkg::Isa parse_isa(const std::string& s) {
  if (s == "rv32") return pkg::Isa::rv32;
  if (s == "rv64") return pkg::Isa::rv64;
  throw UsageError("--isa must be rv32 or rv64");
}

pkg::Mode parse_mode(const std::string& s) {
  if (s == "full") return pkg::Mode::full;
  if (s == "partial") return pkg::Mode::per_instruction;
  if (s == "fields") return pkg::Mode::field_level;
  throw UsageError("--mode must be full, partial or fields");
}

analysis::ReferenceDevice load_device(const std::string& model, const std::string& challenges,
                                      const std::string& context) {
  analysis::ReferenceDevice dev;
  dev.model = puf::parse_device(read_file(model));
  dev.challenges = puf::parse_challenge_set(read_text(challenges));
  dev.context.assign(context.begin(), context.end());
  return dev;
}

pkg::CodeImage load_code(const std::string& path, bool elf, const std::string& isa) {
  return pkg::extract_code(read_file(path), elf ? pkg::InputKind::elf : pkg::InputKind::flat, parse_isa(isa));
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadPolicy:
    case ErrorCode::PolicyViolation:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::BadKey:
      return kUsage;
    case ErrorCode::Io:
      return kIo;
    case ErrorCode::NotFound:
    case ErrorCode::BadRequest:
    case ErrorCode::Transport:
      return kNetwork;
    default:
      return kFormat;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seal RISC-V code to a simulated PUF device and validate it on the device side", "eric"};
  app.require_subcommand(1);
  int result = kSuccess;

  // device
  auto* device = app.add_subcommand("device", "Provision simulated devices");
  device->require_subcommand(1);

  std::string seed_text, out_path;
  auto* device_new = device->add_subcommand("new", "Write a device model file");
  device_new->add_option("--seed", seed_text, "Device seed (u64)")->required();
  device_new->add_option("--out", out_path, "Output model file")->required();

  auto* device_challenges = device->add_subcommand("challenges", "Write a random 32-line challenge-set file");
  device_challenges->add_option("--seed", seed_text, "Generator seed (u64)")->required();
  device_challenges->add_option("--out", out_path, "Output challenge file")->required();

  std::string model_path, challenges_path, context;
  auto* device_key = device->add_subcommand("key", "Print the device's 256-bit PUF-based key");
  device_key->add_option("--model", model_path)->required();
  device_key->add_option("--challenges", challenges_path)->required();
  device_key->add_option("--context", context, "Key-derivation context string");

  // seal
  std::string in_path, key_hex, policy_path, device_id_text, isa_text = "rv64";
  bool elf = false;
  auto* seal_cmd = app.add_subcommand("seal", "Sign and encrypt a code image for one device");
  seal_cmd->add_option("--in", in_path, "Code image (flat binary, or ELF with --elf)")->required();
  seal_cmd->add_flag("--elf", elf, "Read the .text section of an ELF file");
  seal_cmd->add_option("--isa", isa_text, "ISA tag for flat input: rv32 or rv64");
  seal_cmd->add_option("--key", key_hex, "PUF-based key, 64 hex characters")->required();
  seal_cmd->add_option("--policy", policy_path, "Encryption policy file")->required();
  seal_cmd->add_option("--device-id", device_id_text, "Routing id stored in the header")->required();
  seal_cmd->add_option("--out", out_path, "Output .eric package")->required();

  // unseal
  auto* unseal_cmd = app.add_subcommand("unseal", "Decrypt and validate a package on a device");
  unseal_cmd->add_option("--in", in_path)->required();
  unseal_cmd->add_option("--model", model_path)->required();
  unseal_cmd->add_option("--challenges", challenges_path)->required();
  unseal_cmd->add_option("--context", context);
  unseal_cmd->add_option("--out", out_path, "Validated flat code image")->required();

  // serve / fetch
  std::string addr, store_dir, name;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a package store over TCP");
  serve_cmd->add_option("--addr", addr, "host:port")->required();
  serve_cmd->add_option("--store", store_dir, "Directory of <device_id hex>_<name>.eric files")->required();

  auto* fetch_cmd = app.add_subcommand("fetch", "Fetch a package from a store server");
  fetch_cmd->add_option("--addr", addr)->required();
  fetch_cmd->add_option("--device-id", device_id_text)->required();
  fetch_cmd->add_option("--name", name)->required();
  fetch_cmd->add_option("--out", out_path)->required();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Measurements");
  analyze->require_subcommand(1);

  auto* an_entropy = analyze->add_subcommand("entropy", "Shannon entropy of a file, bits per byte");
  an_entropy->add_option("--in", in_path)->required();

  std::string package_path;
  auto* an_overhead = analyze->add_subcommand("overhead", "Package size versus code size");
  an_overhead->add_option("--original", in_path, "Original code image")->required();
  an_overhead->add_flag("--elf", elf);
  an_overhead->add_option("--package", package_path)->required();

  std::uint64_t trials = 10000, sweep_seed = 1;
  auto* an_tamper = analyze->add_subcommand("tamper", "Single-bit-flip tamper sweep");
  an_tamper->add_option("--package", package_path)->required();
  an_tamper->add_option("--model", model_path)->required();
  an_tamper->add_option("--challenges", challenges_path)->required();
  an_tamper->add_option("--context", context);
  an_tamper->add_option("--trials", trials);
  an_tamper->add_option("--seed", sweep_seed);

  std::string mode_text = "full";
  std::uint64_t iterations = 20;
  auto* an_throughput = analyze->add_subcommand("throughput", "Seal/unseal throughput in MiB/s");
  an_throughput->add_option("--in", in_path)->required();
  an_throughput->add_flag("--elf", elf);
  an_throughput->add_option("--model", model_path)->required();
  an_throughput->add_option("--challenges", challenges_path)->required();
  an_throughput->add_option("--context", context);
  an_throughput->add_option("--mode", mode_text);
  an_throughput->add_option("--iterations", iterations);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*device_new) {
      const auto model = puf::synthesize_device(parse_u64(seed_text, "seed"));
      write_file(out_path, puf::serialize_device(model));
    } else if (*device_challenges) {
      std::mt19937_64 rng(parse_u64(seed_text, "seed"));
      const std::string text = puf::format_challenge_set(puf::random_challenge_set(rng));
      write_file(out_path, as_bytes(text));
    } else if (*device_key) {
      const auto dev = load_device(model_path, challenges_path, context);
      const auto key = keys::derive_master_key(puf::generate_puf_key(dev.model, dev.challenges), dev.context);
      out << key.to_hex() << "\n";
    } else if (*seal_cmd) {
      const auto key = keys::PufBasedKey::from_hex(key_hex);
      const auto policy = seal::parse_policy(read_text(policy_path));
      const auto device_id = parse_u64(device_id_text, "device id");
      const auto image = load_code(in_path, elf, isa_text);
      const auto sealed = seal::seal(image.code, key, policy, image.isa, device_id);
      write_file(out_path, pkg::serialize(sealed));
    } else if (*unseal_cmd) {
      const auto dev = load_device(model_path, challenges_path, context);
      const auto package = read_file(in_path);
      const auto outcome = hde::unseal(package, dev.model, dev.challenges, dev.context);
      if (!outcome.is_accepted()) {
        err << "rejected: " << hde::to_string(outcome.reason()) << "\n";
        return kIntegrity;
      }
      write_file(out_path, outcome.image().code());
    } else if (*serve_cmd) {
      dist::Server server(dist::PackageStore(store_dir), dist::parse_address(addr));
      out << "listening on port " << server.port() << std::endl;
      server.run();
    } else if (*fetch_cmd) {
      const auto bytes = dist::fetch(dist::parse_address(addr), parse_u64(device_id_text, "device id"), name);
      write_file(out_path, bytes);
    } else if (*an_entropy) {
      const auto bytes = read_file(in_path);
      out << analysis::entropy_text(analysis::entropy(bytes), bytes.size());
    } else if (*an_overhead) {
      const auto image = load_code(in_path, elf, isa_text);
      const auto sealed = pkg::parse(read_file(package_path));
      out << analysis::to_text(analysis::overhead_report(image.code.size(), sealed));
    } else if (*an_tamper) {
      const auto dev = load_device(model_path, challenges_path, context);
      const auto package = read_file(package_path);
      if (!hde::unseal(package, dev.model, dev.challenges, dev.context).is_accepted()) {
        err << "rejected: reference device does not accept the untampered package\n";
        return kIntegrity;
      }
      out << analysis::to_text(analysis::tamper_sweep(package, trials, sweep_seed, dev));
    } else if (*an_throughput) {
      const auto dev = load_device(model_path, challenges_path, context);
      const auto image = load_code(in_path, elf, isa_text);
      out << analysis::to_text(analysis::measure_throughput(image.code, dev, parse_mode(mode_text), iterations));
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
  return result;
}

}  // namespace eric::cli
