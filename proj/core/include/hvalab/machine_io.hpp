#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hvalab/diophantine.hpp"
#include "hvalab/machine.hpp"

namespace hvalab {

/// Canonical machine file: a JSON object with a fixed key order, one
/// transition per line, rationals as "p/q" strings. parse_machine() also
/// accepts plain JSON integers for scalars and any key order.
std::string write_machine(const MachineSpec& spec);
MachineSpec parse_machine(std::string_view text);

MachineSpec read_machine_file(const std::filesystem::path& path);
void write_machine_file(const std::filesystem::path& path, const MachineSpec& spec);

/// {"alphabet": ["a", "b"], "coefficients": [[1, -1]]}
std::string write_system(const DiophantineSystem& sys);
DiophantineSystem parse_system(std::string_view text);
DiophantineSystem read_system_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace hvalab
