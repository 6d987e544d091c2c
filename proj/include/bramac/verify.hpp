// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bramac/instruction.hpp"

namespace bramac {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;  // random MAC2s per (variant, 4/8-bit precision)
  std::optional<int> fault_bit;   // flips one adder output bit in dummy array 0
};

struct VerifyCase {
  std::string label;
  std::uint64_t mac2s = 0;
  std::uint64_t lane_checks = 0;
  std::uint64_t mismatches = 0;
  std::string first_mismatch;
};

struct VerifyReport {
  std::vector<VerifyCase> cases;
  std::uint64_t total_mismatches() const;
};

// Runs weights through the main array, instructions through the eFSM and the
// arithmetic through the dummy arrays, comparing every lane of every MAC2 and
// every accumulator readout to mac2_reference.
VerifyReport verify_full_path(const VerifyOptions& opt);

}  // namespace bramac
