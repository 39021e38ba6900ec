// Copyright 2026 The ocf Authors
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

#ifndef OCF_RATIONAL_HPP
#define OCF_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "ocf/errors.hpp"

namespace ocf {

// Exact rational number. GMP keeps every value canonical (reduced, positive
// denominator) as long as results come from arithmetic; parse_rational()
// canonicalizes explicitly.
using Rational = mpq_class;

// Canonical text form: "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

// Accepts an optional '-', decimal digits, and an optional "/digits" part
// with a nonzero denominator.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&]() {
    return DataError("malformed rational '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') ++pos;
  const std::size_t num_begin = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
    ++pos;
  if (pos == num_begin) throw bad();
  if (pos < text.size()) {
    if (text[pos] != '/') throw bad();
    const std::size_t den_begin = ++pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == den_begin || pos != text.size()) throw bad();
    if (text.find_first_not_of('0', den_begin) == std::string_view::npos)
      throw DataError("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(std::string(text), 10);
  r.canonicalize();
  return r;
}

// Rational extended with -infinity; the identity for max-plus tables.
class ExtRational {
 public:
  ExtRational() = default;  // -infinity
  ExtRational(Rational v) : finite_(true), value_(std::move(v)) {}  // NOLINT

  static ExtRational neg_inf() { return {}; }

  bool finite() const { return finite_; }
  const Rational& value() const {
    if (!finite_) throw ContractError("value() of -infinity");
    return value_;
  }

  // Replaces the current value with a + b if that is larger. Returns true on
  // strict improvement. Avoids temporaries in inner DP loops.
  bool improve_with_sum(const Rational& a, const Rational& b) {
    if (!finite_) {
      value_ = a + b;
      finite_ = true;
      return true;
    }
    scratch() = a + b;
    if (scratch() > value_) {
      value_ = scratch();
      return true;
    }
    return false;
  }

  bool improve(const Rational& v) {
    if (!finite_ || v > value_) {
      value_ = v;
      finite_ = true;
      return true;
    }
    return false;
  }

  bool improve(const ExtRational& v) {
    return v.finite_ ? improve(v.value_) : false;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  friend std::string to_string(const ExtRational& e) {
    return e.finite_ ? to_string(e.value_) : std::string("-inf");
  }

 private:
  static Rational& scratch() {
    thread_local Rational s;
    return s;
  }

  bool finite_ = false;
  Rational value_;
};

}  // namespace ocf

#endif  // OCF_RATIONAL_HPP
