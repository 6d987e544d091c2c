// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "bramac/arch_models.hpp"
#include "bramac/dla.hpp"
#include "bramac/gemv.hpp"

namespace bramac {

// Device files carry a schema tag "bramac.device.v1". An optional "archs"
// array overrides the built-in architecture table.
DeviceSpec load_device(const std::string& path);
ArchTable load_archs_or_default(const std::string& device_path);
void save_device(const std::string& path, const DeviceSpec& d, const std::string& calibration_note);

Network load_network(const std::string& path);  // "bramac.network.v1"
GridSpec load_grid(const std::string& path);    // "bramac.gemv-grid.v1"

}  // namespace bramac
