#pragma once

#include <string>
#include <vector>

#include "paramop/config.hpp"

namespace paramop {

/// Everything a run produced: the exit code to report (0 = clean,
/// 2 = violation findings recorded), the findings, and the report text that
/// was printed. Output files (solutions.csv, continuity.csv, assumptions.txt)
/// are written into cfg.output_dir before this returns, findings or not.
struct RunOutcome {
    int exit_code = 0;
    std::vector<std::string> findings;
    std::string report;
};

/// Execute the configured tasks over the disc and write the three output
/// files. Violations of the checked assumptions (singular operators on the
/// grid, non-converged continuity sweeps, failed modulus verdicts, the
/// counterexample's designed jump) become findings and exit code 2.
/// Operational problems (unwritable output, missing capabilities) throw.
[[nodiscard]] RunOutcome run_sweep(const RunConfig& cfg);

}  // namespace paramop
