// Copyright 2026 The privbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace privbasis::dp {

/// Budget fractions are exact rationals so that splits such as
/// 0.1 + 0.4 + 0.5 sum to exactly one.
using Fraction = boost::rational<std::int64_t>;

/// Converts a decimal such as 0.4 to the fraction it denotes, rounding to
/// nine decimal places. Throws InvalidArgument outside [0, 1e9].
Fraction fraction_from_decimal(double x);

double to_double(const Fraction& f);

struct LedgerEntry {
  std::string label;
  Fraction fraction;
};

/// Sequential-composition accounting of a total budget epsilon.
class BudgetLedger {
 public:
  explicit BudgetLedger(double total_eps);

  double total() const noexcept { return total_; }

  /// Records `fraction` of the total under `label` and returns the epsilon
  /// portion it buys. Throws BudgetError if the fraction is not positive,
  /// the ledger is sealed, or the spent total would exceed one.
  double spend(std::string label, Fraction fraction);

  /// No further spending is accepted after sealing.
  void seal() noexcept { sealed_ = true; }
  bool sealed() const noexcept { return sealed_; }

  Fraction spent() const noexcept { return spent_; }
  Fraction remaining() const noexcept { return Fraction(1) - spent_; }
  const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }

 private:
  double total_;
  Fraction spent_{0};
  bool sealed_ = false;
  std::vector<LedgerEntry> entries_;
};

}  // namespace privbasis::dp
