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

#pragma once

// Untrusted store-and-forward channel. The server hands out opaque package
// bytes keyed by (device_id, name); it never looks inside them.
//
// Every message is a frame: u32 LE body length, then the body (<= 64 MiB).
//   request  body: "ERQ1" | device_id u64 LE | name_len u16 LE | name
//   response body: "ERS1" | status u8 | payload_len u32 LE | payload

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "eric/bytes.hpp"

namespace eric::dist {

inline constexpr std::uint32_t kMaxFrame = std::uint32_t{1} << 26;
inline constexpr std::size_t kMinRequestBody = 14;

enum class Status : std::uint8_t { ok = 0, not_found = 1, bad_request = 2 };

struct Request {
  std::uint64_t device_id = 0;
  std::string name;
};

struct Response {
  Status status = Status::ok;
  Bytes payload;
};

Bytes encode_request(const Request& req);
// Throws Error(BadRequest) on anything malformed.
Request decode_request(ByteView body);
Bytes encode_response(const Response& resp);
// Throws Error(Transport) on a malformed response.
Response decode_response(ByteView body);

// Store file name "<16 hex digit device id>_<name>.eric".
std::string store_file_name(std::uint64_t device_id, std::string_view name);
// Names must be non-empty and free of path separators and "..".
bool valid_name(std::string_view name);

class PackageStore {
 public:
  explicit PackageStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<Bytes> lookup(std::uint64_t device_id, std::string_view name) const;
  // Provisioning helper; the wire protocol has no upload.
  void put(std::uint64_t device_id, std::string_view name, ByteView package) const;

 private:
  std::filesystem::path dir_;
};

// Answers one request body; the server's whole request logic.
Response handle_request(const PackageStore& store, ByteView body);

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
};

// "host:port"; throws Error(BadRequest) if unparsable.
Endpoint parse_address(std::string_view address);

class Server {
 public:
  Server(PackageStore store, const Endpoint& bind);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Bound port (useful when binding port 0).
  std::uint16_t port() const { return port_; }
  // Accept loop on a background thread.
  void start();
  // Accept loop on the calling thread until stop().
  void run();
  void stop();

 private:
  void serve_connection(int fd);

  PackageStore store_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex workers_mutex_;
  std::condition_variable workers_idle_;
  std::size_t active_workers_ = 0;
  std::vector<int> open_fds_;
};

// Throws Error(NotFound), Error(BadRequest) or Error(Transport).
Bytes fetch(const Endpoint& server, std::uint64_t device_id, std::string_view name);

}  // namespace eric::dist
