#pragma once

#include <string>

#include "signorini/field.hpp"

namespace signorini {

/// Text field format: one header line "n m L symmetric", then one nodal
/// value per line in row-major order with x_n fastest. See docs/formats.md.
void write_field(const std::string& path, const ScalarField& u);
ScalarField read_field(const std::string& path);

}  // namespace signorini
