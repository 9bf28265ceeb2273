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

#include "eric/distribution.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "eric/error.hpp"

namespace eric::dist {

namespace {

constexpr std::uint8_t kRequestMagic[4] = {'E', 'R', 'Q', '1'};
constexpr std::uint8_t kResponseMagic[4] = {'E', 'R', 'S', '1'};

[[noreturn]] void transport(const std::string& what) {
  throw Error(ErrorCode::Transport, what + (errno ? std::string(": ") + std::strerror(errno) : ""));
}

bool read_exact(int fd, std::uint8_t* out, std::size_t n) {
  while (n > 0) {
    ssize_t got = ::recv(fd, out, n, 0);
    if (got == 0) return false;
    if (got < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    out += got;
    n -= static_cast<std::size_t>(got);
  }
  return true;
}

bool write_all(int fd, const std::uint8_t* data, std::size_t n) {
  while (n > 0) {
    ssize_t put = ::send(fd, data, n, MSG_NOSIGNAL);
    if (put < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data += put;
    n -= static_cast<std::size_t>(put);
  }
  return true;
}

bool write_frame(int fd, ByteView body) {
  Bytes prefix;
  put_le(prefix, body.size(), 4);
  return write_all(fd, prefix.data(), prefix.size()) && write_all(fd, body.data(), body.size());
}

enum class FrameRead { ok, closed, oversize };

FrameRead read_frame(int fd, Bytes& body) {
  std::uint8_t prefix[4];
  if (!read_exact(fd, prefix, 4)) return FrameRead::closed;
  const auto length = static_cast<std::uint32_t>(get_le(prefix, 0, 4));
  if (length > kMaxFrame) return FrameRead::oversize;
  body.resize(length);
  if (length > 0 && !read_exact(fd, body.data(), length)) return FrameRead::closed;
  return FrameRead::ok;
}

class Socket {
 public:
  explicit Socket(int fd = -1) : fd_(fd) {}
  ~Socket() {
    if (fd_ >= 0) ::close(fd_);
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

addrinfo* resolve(const Endpoint& ep, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* result = nullptr;
  const std::string port = std::to_string(ep.port);
  const int rc = ::getaddrinfo(ep.host.empty() ? nullptr : ep.host.c_str(), port.c_str(), &hints, &result);
  if (rc != 0) {
    errno = 0;
    transport("cannot resolve " + ep.host + ": " + ::gai_strerror(rc));
  }
  return result;
}

}  // namespace

Bytes encode_request(const Request& req) {
  Bytes out(std::begin(kRequestMagic), std::end(kRequestMagic));
  put_le(out, req.device_id, 8);
  put_le(out, req.name.size(), 2);
  out.insert(out.end(), req.name.begin(), req.name.end());
  return out;
}

Request decode_request(ByteView body) {
  if (body.size() < kMinRequestBody) throw Error(ErrorCode::BadRequest, "request body shorter than 14 bytes");
  if (!std::equal(std::begin(kRequestMagic), std::end(kRequestMagic), body.begin())) {
    throw Error(ErrorCode::BadRequest, "request magic is not ERQ1");
  }
  Request req;
  req.device_id = get_le(body, 4, 8);
  const std::size_t name_len = get_le(body, 12, 2);
  if (body.size() != kMinRequestBody + name_len) {
    throw Error(ErrorCode::BadRequest, "name length does not match body");
  }
  req.name.assign(reinterpret_cast<const char*>(body.data()) + kMinRequestBody, name_len);
  return req;
}

Bytes encode_response(const Response& resp) {
  Bytes out(std::begin(kResponseMagic), std::end(kResponseMagic));
  out.push_back(static_cast<std::uint8_t>(resp.status));
  put_le(out, resp.payload.size(), 4);
  out.insert(out.end(), resp.payload.begin(), resp.payload.end());
  return out;
}

Response decode_response(ByteView body) {
  if (body.size() < 9 || !std::equal(std::begin(kResponseMagic), std::end(kResponseMagic), body.begin())) {
    throw Error(ErrorCode::Transport, "malformed response frame");
  }
  Response resp;
  const std::uint8_t status = body[4];
  if (status > 2) throw Error(ErrorCode::Transport, "unknown response status");
  resp.status = static_cast<Status>(status);
  const std::size_t len = get_le(body, 5, 4);
  if (body.size() != 9 + len) throw Error(ErrorCode::Transport, "payload length does not match frame");
  resp.payload.assign(body.begin() + 9, body.end());
  return resp;
}

std::string store_file_name(std::uint64_t device_id, std::string_view name) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(device_id));
  return std::string(hex) + "_" + std::string(name) + ".eric";
}

bool valid_name(std::string_view name) {
  if (name.empty() || name.size() > 255) return false;
  if (name.find('/') != std::string_view::npos || name.find('\\') != std::string_view::npos) return false;
  if (name.find("..") != std::string_view::npos) return false;
  return name.find('\0') == std::string_view::npos;
}

PackageStore::PackageStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!std::filesystem::is_directory(dir_)) {
    throw Error(ErrorCode::Io, "store directory " + dir_.string() + " does not exist");
  }
}

std::optional<Bytes> PackageStore::lookup(std::uint64_t device_id, std::string_view name) const {
  if (!valid_name(name)) return std::nullopt;
  const auto path = dir_ / store_file_name(device_id, name);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  try {
    return read_file(path.string());
  } catch (const Error&) {
    return std::nullopt;
  }
}

void PackageStore::put(std::uint64_t device_id, std::string_view name, ByteView package) const {
  if (!valid_name(name)) throw Error(ErrorCode::BadRequest, "invalid package name");
  write_file((dir_ / store_file_name(device_id, name)).string(), package);
}

Response handle_request(const PackageStore& store, ByteView body) {
  Request req;
  try {
    req = decode_request(body);
  } catch (const Error&) {
    return {Status::bad_request, {}};
  }
  if (!valid_name(req.name)) return {Status::bad_request, {}};
  if (auto found = store.lookup(req.device_id, req.name)) return {Status::ok, std::move(*found)};
  return {Status::not_found, {}};
}

Endpoint parse_address(std::string_view address) {
  const std::size_t colon = address.rfind(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::BadRequest, "address must be host:port");
  Endpoint ep;
  ep.host = std::string(address.substr(0, colon));
  if (ep.host.size() >= 2 && ep.host.front() == '[' && ep.host.back() == ']') {
    ep.host = ep.host.substr(1, ep.host.size() - 2);
  }
  const std::string_view port = address.substr(colon + 1);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || ptr != port.data() + port.size() || value > 65535 || port.empty()) {
    throw Error(ErrorCode::BadRequest, "invalid port in address");
  }
  ep.port = static_cast<std::uint16_t>(value);
  return ep;
}

Server::Server(PackageStore store, const Endpoint& bind) : store_(std::move(store)) {
  addrinfo* addrs = resolve(bind, true);
  int fd = -1;
  for (addrinfo* a = addrs; a != nullptr; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, a->ai_addr, a->ai_addrlen) == 0 && ::listen(fd, 64) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(addrs);
  if (fd < 0) transport("cannot listen on " + bind.host + ":" + std::to_string(bind.port));
  listen_fd_ = fd;

  sockaddr_storage local{};
  socklen_t len = sizeof local;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&local), &len);
  if (local.ss_family == AF_INET) {
    port_ = ntohs(reinterpret_cast<sockaddr_in*>(&local)->sin_port);
  } else {
    port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&local)->sin6_port);
  }
}

Server::~Server() { stop(); }

void Server::start() {
  acceptor_ = std::thread([this] { run(); });
}

void Server::run() {
  while (!stopping_) {
    const int client = ::accept(listen_fd_, nullptr, nullptr);
    if (client < 0) {
      if (errno == EINTR) continue;
      break;
    }
    {
      std::lock_guard lock(workers_mutex_);
      if (stopping_) {
        ::close(client);
        break;
      }
      open_fds_.push_back(client);
      ++active_workers_;
    }
    std::thread([this, client] {
      serve_connection(client);
      std::lock_guard lock(workers_mutex_);
      open_fds_.erase(std::remove(open_fds_.begin(), open_fds_.end(), client), open_fds_.end());
      ::close(client);
      if (--active_workers_ == 0) workers_idle_.notify_all();
    }).detach();
  }
}

void Server::serve_connection(int fd) {
  Bytes body;
  while (!stopping_) {
    const FrameRead r = read_frame(fd, body);
    if (r != FrameRead::ok) return;  // closed, or oversize: drop the connection
    const Response resp = handle_request(store_, body);
    if (!write_frame(fd, encode_response(resp))) return;
  }
}

void Server::stop() {
  if (stopping_.exchange(true)) return;
  if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
  if (acceptor_.joinable()) acceptor_.join();
  {
    std::unique_lock lock(workers_mutex_);
    for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
    workers_idle_.wait(lock, [&] { return active_workers_ == 0; });
  }
  if (listen_fd_ >= 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
}

Bytes fetch(const Endpoint& server, std::uint64_t device_id, std::string_view name) {
  if (name.size() > 0xFFFF) throw Error(ErrorCode::BadRequest, "name longer than 65535 bytes");
  addrinfo* addrs = resolve(server, false);
  int fd = -1;
  for (addrinfo* a = addrs; a != nullptr; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(addrs);
  if (fd < 0) transport("cannot connect to " + server.host + ":" + std::to_string(server.port));
  Socket sock(fd);

  if (!write_frame(fd, encode_request({device_id, std::string(name)}))) transport("send failed");
  Bytes body;
  const FrameRead r = read_frame(fd, body);
  if (r == FrameRead::oversize) throw Error(ErrorCode::Transport, "response frame exceeds 64 MiB");
  if (r != FrameRead::ok) transport("connection closed before response");

  Response resp = decode_response(body);
  switch (resp.status) {
    case Status::ok: return std::move(resp.payload);
    case Status::not_found: throw Error(ErrorCode::NotFound, "no package " + std::string(name) + " for that device");
    case Status::bad_request: throw Error(ErrorCode::BadRequest, "server rejected the request");
  }
  throw Error(ErrorCode::Transport, "unknown response status");
}

}  // namespace eric::dist
