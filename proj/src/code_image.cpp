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

// Minimal read-only ELF reader: locate ".text" through the section header
// table and the section-name string table. Little-endian only.

#include <elf.h>

#include <cstring>
#include <string>

#include "eric/error.hpp"
#include "eric/package_format.hpp"

namespace eric::pkg {

namespace {

struct SectionHeader {
  std::uint32_t name = 0;
  std::uint64_t offset = 0;
  std::uint64_t size = 0;
  std::uint32_t type = 0;
};

class ElfView {
 public:
  explicit ElfView(ByteView data) : data_(data) {
    if (data.size() < EI_NIDENT || std::memcmp(data.data(), ELFMAG, SELFMAG) != 0) {
      throw Error(ErrorCode::NotElf, "missing ELF magic");
    }
    if (data[EI_DATA] == ELFDATA2MSB) throw Error(ErrorCode::UnsupportedElf, "big-endian ELF");
    if (data[EI_DATA] != ELFDATA2LSB) throw Error(ErrorCode::NotElf, "invalid ELF data encoding");
    if (data[EI_CLASS] == ELFCLASS32) {
      is64_ = false;
    } else if (data[EI_CLASS] == ELFCLASS64) {
      is64_ = true;
    } else {
      throw Error(ErrorCode::NotElf, "invalid ELF class");
    }
    need(0, is64_ ? sizeof(Elf64_Ehdr) : sizeof(Elf32_Ehdr));

    if (is64_) {
      shoff_ = u(offsetof(Elf64_Ehdr, e_shoff), 8);
      shentsize_ = u(offsetof(Elf64_Ehdr, e_shentsize), 2);
      shnum_ = u(offsetof(Elf64_Ehdr, e_shnum), 2);
      shstrndx_ = u(offsetof(Elf64_Ehdr, e_shstrndx), 2);
    } else {
      shoff_ = u(offsetof(Elf32_Ehdr, e_shoff), 4);
      shentsize_ = u(offsetof(Elf32_Ehdr, e_shentsize), 2);
      shnum_ = u(offsetof(Elf32_Ehdr, e_shnum), 2);
      shstrndx_ = u(offsetof(Elf32_Ehdr, e_shstrndx), 2);
    }
    if (shoff_ == 0 || shnum_ == 0) throw Error(ErrorCode::UnsupportedElf, "no section header table");
    const std::uint64_t min_entsize = is64_ ? sizeof(Elf64_Shdr) : sizeof(Elf32_Shdr);
    if (shentsize_ < min_entsize) throw Error(ErrorCode::NotElf, "section header entries too small");
    if (shnum_ > (data_.size() / shentsize_) + 1) throw Error(ErrorCode::NotElf, "section header table truncated");
    need(shoff_, shentsize_ * shnum_);
    if (shstrndx_ == SHN_UNDEF || shstrndx_ >= shnum_) {
      throw Error(ErrorCode::UnsupportedElf, "no section name string table");
    }
  }

  bool is64() const { return is64_; }

  ByteView find_section(std::string_view wanted) const {
    const SectionHeader strtab = section(shstrndx_);
    need(strtab.offset, strtab.size);
    for (std::uint64_t i = 0; i < shnum_; ++i) {
      const SectionHeader s = section(i);
      if (s.name >= strtab.size) continue;
      const char* name = reinterpret_cast<const char*>(data_.data() + strtab.offset + s.name);
      const std::size_t max_len = strtab.size - s.name;
      if (strnlen(name, max_len) == wanted.size() && std::memcmp(name, wanted.data(), wanted.size()) == 0) {
        if (s.type == SHT_NOBITS) return {};
        need(s.offset, s.size);
        return data_.subspan(s.offset, s.size);
      }
    }
    throw Error(ErrorCode::NoTextSection, "no section named " + std::string(wanted));
  }

 private:
  std::uint64_t u(std::uint64_t offset, std::size_t width) const { return get_le(data_, offset, width); }

  void need(std::uint64_t offset, std::uint64_t length) const {
    if (offset > data_.size() || length > data_.size() - offset) {
      throw Error(ErrorCode::NotElf, "ELF structure extends past end of file");
    }
  }

  SectionHeader section(std::uint64_t index) const {
    const std::uint64_t base = shoff_ + index * shentsize_;
    SectionHeader s;
    if (is64_) {
      s.name = static_cast<std::uint32_t>(u(base + offsetof(Elf64_Shdr, sh_name), 4));
      s.type = static_cast<std::uint32_t>(u(base + offsetof(Elf64_Shdr, sh_type), 4));
      s.offset = u(base + offsetof(Elf64_Shdr, sh_offset), 8);
      s.size = u(base + offsetof(Elf64_Shdr, sh_size), 8);
    } else {
      s.name = static_cast<std::uint32_t>(u(base + offsetof(Elf32_Shdr, sh_name), 4));
      s.type = static_cast<std::uint32_t>(u(base + offsetof(Elf32_Shdr, sh_type), 4));
      s.offset = u(base + offsetof(Elf32_Shdr, sh_offset), 4);
      s.size = u(base + offsetof(Elf32_Shdr, sh_size), 4);
    }
    return s;
  }

  ByteView data_;
  bool is64_ = false;
  std::uint64_t shoff_ = 0;
  std::uint64_t shentsize_ = 0;
  std::uint64_t shnum_ = 0;
  std::uint64_t shstrndx_ = 0;
};

}  // namespace

CodeImage extract_code(ByteView input, InputKind kind, Isa flat_isa) {
  if (kind == InputKind::flat) {
    return {Bytes(input.begin(), input.end()), flat_isa};
  }
  const ElfView elf(input);
  const ByteView text = elf.find_section(".text");
  return {Bytes(text.begin(), text.end()), elf.is64() ? Isa::rv64 : Isa::rv32};
}

}  // namespace eric::pkg
