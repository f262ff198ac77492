/* Copyright 2026 The SkillForge Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "skillforge/memory/blob.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "skillforge/common.hpp"

namespace skillforge::memory {
namespace {

constexpr char kMagic[4] = {'K', 'D', 'M', 'X'};

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  template <typename T>
  void le(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> bytes(std::size_t n) {
    if (in_.size() - pos_ < n) throw StorageError("truncated KDMX blob");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename T>
  T le() {
    auto s = bytes(sizeof(T));
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(static_cast<T>(s[i]) << (8 * i));
    return value;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void write_header(Writer& w, std::uint8_t width, const std::vector<std::string>& names,
                  std::size_t columns) {
  w.bytes(kMagic, sizeof kMagic);
  w.le<std::uint8_t>(kBlobVersion);
  w.le<std::uint8_t>(width);
  w.le<std::uint32_t>(static_cast<std::uint32_t>(names.size()));
  w.le<std::uint32_t>(static_cast<std::uint32_t>(columns));
  for (const auto& name : names) {
    if (name.size() > 0xFFFF) throw StorageError("row name too long for KDMX blob");
    w.le<std::uint16_t>(static_cast<std::uint16_t>(name.size()));
    w.bytes(name.data(), name.size());
  }
}

struct Header {
  std::vector<std::string> names;
  std::size_t columns = 0;
};

Header read_header(Reader& r, std::uint8_t expected_width) {
  auto magic = r.bytes(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw StorageError("bad KDMX magic");
  if (r.le<std::uint8_t>() != kBlobVersion) throw StorageError("unsupported KDMX version");
  if (r.le<std::uint8_t>() != expected_width) throw StorageError("unexpected KDMX cell width");
  Header h;
  const auto rows = r.le<std::uint32_t>();
  h.columns = r.le<std::uint32_t>();
  for (std::uint32_t i = 0; i < rows; ++i) {
    const auto len = r.le<std::uint16_t>();
    auto s = r.bytes(len);
    h.names.emplace_back(reinterpret_cast<const char*>(s.data()), s.size());
  }
  return h;
}

}  // namespace

std::vector<std::uint8_t> encode(const SensorMatrix& matrix) {
  matrix.check_shape();
  Writer w;
  write_header(w, 8, matrix.channels, matrix.ticks);
  for (double v : matrix.values) w.le<std::uint64_t>(std::bit_cast<std::uint64_t>(v));
  return w.take();
}

std::vector<std::uint8_t> encode(const CallProfileMatrix& matrix) {
  matrix.check_shape();
  Writer w;
  write_header(w, 4, matrix.functions, matrix.ticks);
  for (auto v : matrix.counts) w.le<std::uint32_t>(v);
  return w.take();
}

SensorMatrix decode_sensor(std::span<const std::uint8_t> blob) {
  Reader r(blob);
  auto h = read_header(r, 8);
  SensorMatrix m(std::move(h.names), h.columns);
  for (auto& v : m.values) v = std::bit_cast<double>(r.le<std::uint64_t>());
  if (!r.done()) throw StorageError("trailing bytes in KDMX blob");
  return m;
}

CallProfileMatrix decode_profile(std::span<const std::uint8_t> blob) {
  Reader r(blob);
  auto h = read_header(r, 4);
  CallProfileMatrix m(std::move(h.names), h.columns);
  for (auto& v : m.counts) v = r.le<std::uint32_t>();
  if (!r.done()) throw StorageError("trailing bytes in KDMX blob");
  return m;
}

}  // namespace skillforge::memory
