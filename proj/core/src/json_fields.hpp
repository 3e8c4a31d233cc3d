// Copyright 2026 The antibandit Authors.
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

#ifndef ANTIBANDIT_SRC_JSON_FIELDS_HPP_
#define ANTIBANDIT_SRC_JSON_FIELDS_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace antibandit::detail {

// Typed access to a JSON object that reports failures with the dotted path of
// the offending field. `Err` is the exception type to throw.
template <typename Err>
class Fields {
 public:
  Fields(const nlohmann::json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string child(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(std::string_view key) const { return obj_.contains(key); }

  const nlohmann::json& at(std::string_view key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) fail(child(key), "missing field");
    return *it;
  }

  Fields object(std::string_view key) const { return Fields(at(key), child(key)); }

  const nlohmann::json& array(std::string_view key) const {
    const nlohmann::json& v = at(key);
    if (!v.is_array()) fail(child(key), "expected an array");
    return v;
  }

  double number(std::string_view key) const {
    const nlohmann::json& v = at(key);
    if (!v.is_number()) fail(child(key), "expected a number");
    return v.get<double>();
  }

  double number_or(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::int64_t integer(std::string_view key) const { return as_integer(at(key), child(key)); }

  std::int64_t integer_or(std::string_view key, std::int64_t fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  std::uint64_t unsigned_integer(std::string_view key) const {
    return as_unsigned(at(key), child(key));
  }

  bool boolean(std::string_view key) const {
    const nlohmann::json& v = at(key);
    if (!v.is_boolean()) fail(child(key), "expected true or false");
    return v.get<bool>();
  }

  bool boolean_or(std::string_view key, bool fallback) const {
    return has(key) ? boolean(key) : fallback;
  }

  std::string string(std::string_view key) const {
    const nlohmann::json& v = at(key);
    if (!v.is_string()) fail(child(key), "expected a string");
    return v.get<std::string>();
  }

  // Rejects keys outside `allowed`.
  void only(std::initializer_list<std::string_view> allowed) const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == it.key();
      if (!ok) fail(child(it.key()), "unknown field");
    }
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& message) {
    throw Err("field '" + path + "': " + message);
  }

  static std::int64_t as_integer(const nlohmann::json& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d == static_cast<double>(static_cast<std::int64_t>(d))) {
        return static_cast<std::int64_t>(d);
      }
    }
    fail(path, "expected an integer");
  }

  static std::uint64_t as_unsigned(const nlohmann::json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    const std::int64_t i = as_integer(v, path);
    if (i < 0) fail(path, "expected a non-negative integer");
    return static_cast<std::uint64_t>(i);
  }

 private:
  const nlohmann::json& obj_;
  std::string path_;
};

}  // namespace antibandit::detail

#endif  // ANTIBANDIT_SRC_JSON_FIELDS_HPP_
