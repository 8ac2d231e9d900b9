#pragma once

#include <ostream>

#include "critcurve/config.hpp"

namespace critcurve {

/// Executes one mode, writes its files into config.out_dir and a short
/// summary to `log`. Returns the process exit status: 0 on success, 1 when
/// some sweep cells failed. Other errors throw.
int run(const RunConfig& config, std::ostream& log);

}  // namespace critcurve
