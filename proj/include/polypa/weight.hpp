// Copyright 2026 The PolyPA Authors
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

#include <cmath>
#include <cstdint>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polypa/errors.hpp"

namespace polypa {

// Host attachment weight f(d). Either the polynomial d^alpha or a table of
// weights for degrees 1..k with a rule for degrees beyond k.
//
// f(0) is defined as 0: a node without edges carries no weight. This is also
// the weight a node "had" before it was inserted, which the batch-parallel
// generator relies on when it accounts for weight added during a batch.
class WeightFunction {
 public:
  enum class Kind { kPolynomial, kTable };
  enum class TailRule { kExtend, kError };

  static constexpr std::uint64_t kMemoDegrees = 1024;

  static WeightFunction polynomial(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
      throw InvalidSpec("polynomial exponent must be finite and >= 0");
    }
    WeightFunction f;
    f.kind_ = Kind::kPolynomial;
    f.alpha_ = alpha;
    auto memo = std::make_shared<std::vector<double>>(kMemoDegrees);
    (*memo)[0] = 0.0;
    for (std::uint64_t d = 1; d < kMemoDegrees; ++d) {
      (*memo)[d] = std::pow(static_cast<double>(d), alpha);
    }
    f.values_ = std::move(memo);
    return f;
  }

  // `values[k]` is the weight of degree k + 1.
  static WeightFunction table(std::vector<double> values,
                              TailRule tail = TailRule::kExtend) {
    if (values.empty()) throw InvalidSpec("weight table is empty");
    for (double v : values) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidSpec("weight table entries must be finite and >= 0");
      }
    }
    WeightFunction f;
    f.kind_ = Kind::kTable;
    f.tail_ = tail;
    auto stored = std::make_shared<std::vector<double>>();
    stored->reserve(values.size() + 1);
    stored->push_back(0.0);
    stored->insert(stored->end(), values.begin(), values.end());
    f.values_ = std::move(stored);
    return f;
  }

  // Parses `degree,weight` rows with degrees 1..k in order. A leading header
  // row whose first field is not a number is skipped.
  static WeightFunction from_csv(std::istream& in,
                                 TailRule tail = TailRule::kExtend) {
    std::vector<double> values;
    std::string line;
    std::uint64_t line_no = 0;
    std::uint64_t offset = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::uint64_t line_offset = offset;
      offset += line.size() + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw ParseError("expected 'degree,weight'", line_no, line_offset);
      }
      std::uint64_t degree = 0;
      double weight = 0.0;
      std::istringstream ds(line.substr(0, comma));
      std::istringstream ws(line.substr(comma + 1));
      if (!(ds >> degree)) {
        if (line_no == 1 && values.empty()) continue;  // header
        throw ParseError("bad degree field", line_no, line_offset);
      }
      if (!(ws >> weight)) {
        throw ParseError("bad weight field", line_no, line_offset);
      }
      if (degree != values.size() + 1) {
        throw ParseError("degrees must be contiguous starting at 1", line_no,
                         line_offset);
      }
      values.push_back(weight);
    }
    if (values.empty()) throw ParseError("no weight rows", line_no, offset);
    return table(std::move(values), tail);
  }

  Kind kind() const { return kind_; }
  bool is_polynomial() const { return kind_ == Kind::kPolynomial; }
  double alpha() const { return alpha_; }
  TailRule tail_rule() const { return tail_; }

  // Number of tabulated degrees (0 for polynomials).
  std::uint64_t table_size() const {
    return kind_ == Kind::kTable ? values_->size() - 1 : 0;
  }

  double operator()(std::uint64_t degree) const {
    const auto& v = *values_;
    if (kind_ == Kind::kPolynomial) {
      if (degree < kMemoDegrees) return v[degree];
      return std::pow(static_cast<double>(degree), alpha_);
    }
    if (degree < v.size()) return v[degree];
    if (tail_ == TailRule::kError) {
      throw OutOfDomain("degree " + std::to_string(degree) +
                        " is beyond the weight table");
    }
    return v.back();
  }

  bool is_non_decreasing() const {
    if (kind_ == Kind::kPolynomial) return true;
    const auto& v = *values_;
    for (std::size_t d = 2; d < v.size(); ++d) {
      if (v[d] < v[d - 1]) return false;
    }
    return true;
  }

  std::string describe() const {
    std::ostringstream os;
    if (kind_ == Kind::kPolynomial) {
      os << "d^" << alpha_;
    } else {
      os << "table[" << table_size() << "]";
    }
    return os.str();
  }

 private:
  WeightFunction() = default;

  Kind kind_ = Kind::kPolynomial;
  double alpha_ = 0.0;
  TailRule tail_ = TailRule::kExtend;
  // Memoized d^alpha for small degrees, or the table with a 0 at index 0.
  std::shared_ptr<const std::vector<double>> values_;
};

// Convenience for call sites that mirror the model notation.
inline double weight(const WeightFunction& f, std::uint64_t degree) {
  return f(degree);
}

}  // namespace polypa
