#pragma once

#include <iosfwd>

namespace qseries::cli {

/* Full command-line front end with injectable streams so tests can drive it
 * in-process. Returns the process exit code: 0 success / all pass,
 * 1 at least one mismatch, 2 usage or parse problem, 3 evaluation failure
 * (pole, insufficient order, heuristic summation where it is not allowed). */
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace qseries::cli
