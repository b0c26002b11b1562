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


#include "privbasis/dp/ledger.hpp"

#include <cmath>

#include "privbasis/error.hpp"

namespace privbasis::dp {

Fraction fraction_from_decimal(double x) {
  constexpr std::int64_t kScale = 1'000'000'000;
  if (!std::isfinite(x) || x < 0 || x > 1e9) throw InvalidArgument("budget fraction out of range");
  return Fraction(std::llround(x * static_cast<double>(kScale)), kScale);
}

double to_double(const Fraction& f) { return boost::rational_cast<double>(f); }

BudgetLedger::BudgetLedger(double total_eps) : total_(total_eps) {
  if (!(total_eps > 0) || !std::isfinite(total_eps)) throw InvalidArgument("epsilon must be positive and finite");
}

double BudgetLedger::spend(std::string label, Fraction fraction) {
  if (sealed_) throw BudgetError("ledger is sealed; cannot spend for '" + label + "'");
  if (fraction <= 0) throw BudgetError("budget fraction for '" + label + "' must be positive");
  if (spent_ + fraction > 1) {
    throw BudgetError("overspend: '" + label + "' would take the ledger above the total budget");
  }
  spent_ += fraction;
  entries_.push_back({std::move(label), fraction});
  return total_ * to_double(fraction);
}

}  // namespace privbasis::dp
