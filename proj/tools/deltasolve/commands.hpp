#pragma once

#include <ostream>

#include "config.hpp"

namespace deltasolve::cli {

void cmd_spectrum(const RunConfig& rc, std::ostream& out);
void cmd_evolve(const RunConfig& rc, std::ostream& out);
void cmd_decay(const RunConfig& rc, std::ostream& out);

}  // namespace deltasolve::cli
